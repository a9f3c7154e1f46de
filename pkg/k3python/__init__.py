############################################################################
#                                                                          #
#                               __INIT__.PY                                #
#                                                                          #
#              Copyright (C) 2026 The k3python developers                  #
#                                                                          #
# This program is free software: you can redistribute it and/or modify     #
# it under the terms of the GNU General Public License as published by     #
# the Free Software Foundation, either version 3 of the License, or        #
# (at your option) any later version.                                      #
#                                                                          #
# This program is distributed in the hope that it will be useful,          #
# but WITHOUT ANY WARRANTY; without even the implied warranty of           #
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
# GNU General Public License for more details.                             #
#                                                                          #
# You should have received a copy of the GNU General Public License        #
# along with this program.  If not, see <http://www.gnu.org/licenses/>     #
#                                                                          #
############################################################################

"""Root module of the k3python package.

k3python builds, from a genus two curve or from its Igusa-Clebsch
invariants, the elliptic K3 surface with E8 and E7 fibers together with its
Kummer quotient, and checks the identities relating them with exact
rational arithmetic.
"""

import logging

__version__ = "1.0"


class NullHandler(logging.Handler):
    """Add a handler which does nothing."""

    def emit(self, _record):
        """emit nothing."""
        pass

h = NullHandler()
logging.getLogger("k3python").addHandler(h)
