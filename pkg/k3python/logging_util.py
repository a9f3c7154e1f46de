############################################################################
#                                                                          #
#                             LOGGING_UTIL.PY                              #
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

"""Extensions to the standard python logging system."""

from logging import (addLevelName, StreamHandler, FileHandler,
                     Filter, Formatter, getLogger, DEBUG)

from colorama import Fore, Back, Style

# Define a new log level for which level number is lower then DEBUG
RAW = 5
# Register the new level name
addLevelName(RAW, 'RAW')

COLOR_UNCHANGED = None
COLOR_BLACK = 'BLACK'
COLOR_RED = 'RED'
COLOR_GREEN = 'GREEN'
COLOR_YELLOW = 'YELLOW'
COLOR_BLUE = 'BLUE'
COLOR_MAGENTA = 'MAGENTA'
COLOR_CYAN = 'CYAN'
COLOR_WHITE = 'WHITE'

# Set by k3python.main.Main when --enable-color is passed
color_enabled = False


def enable_color(value=True):
    """Switch console highlighting on or off.

    :param value: new state
    :type value: bool
    """
    global color_enabled
    color_enabled = value


def highlight(string, fg=COLOR_UNCHANGED, bg=COLOR_UNCHANGED):
    """Return a version of string with color highlighting applied to it.

    This is suitable for display on a console. Nothing is done if color
    has been disabled

    :param string: the text to highlight
    :type string: str
    :param fg: foreground color (one of the COLOR_* constants)
    :type fg: str | None
    :param bg: background color (one of the COLOR_* constants)
    :type bg: str | None
    :rtype: str
    """
    if not color_enabled:
        return string
    prefix = ''
    if fg is not COLOR_UNCHANGED:
        prefix += getattr(Fore, fg)
    if bg is not COLOR_UNCHANGED:
        prefix += getattr(Back, bg)
    return '%s%s%s' % (prefix, string, Style.RESET_ALL)


class RawFilter(Filter):
    """Filters in/out RAW level records."""

    def __init__(self, include_raw=True):
        """RawFilter constructor.

        :param include_raw: if True then keep only RAW level records. If False
            discard RAW level record
        :type include_raw: bool
        """
        Filter.__init__(self)
        self.include_raw = include_raw

    def filter(self, record):
        """Filter implementation (internal).

        :param record: a record to be filtered

        :return: True if we keep the record
        :rtype: bool
        """
        if record.levelno <= RAW:
            return self.include_raw
        else:
            return not self.include_raw


class RawStreamHandler(StreamHandler):
    """Logging system handler for 'raw' logging on streams.

    Raw records are written as is, without trailing newline, so that
    progress output of long verifications can be streamed.
    """

    def flush(self):
        """Flush the stream."""
        # The stream may be shared with a handler that was closed first
        try:
            self.stream.flush()
        except ValueError:
            return

    def emit(self, record):
        try:
            self.stream.write(self.format(record))
            self.flush()
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)


def add_handlers(level, format=None, filename=None):
    """Add handlers with support for 'RAW' logging.

    :param level: minimal level for the new handler
    :type level: int
    :param format: record format
    :type format: str | None
    :param filename: if not None log into that file instead of the console
    :type filename: str | None

    :return: the pair (handler, raw_handler), raw_handler being None unless
        level is RAW
    :rtype: (logging.Handler, logging.Handler | None)
    """
    raw_handler = None

    if filename is None:
        handler = StreamHandler()
    else:
        handler = FileHandler(filename)

    if format is not None:
        handler.setFormatter(Formatter(format))

    if level <= RAW:
        handler.setLevel(DEBUG)
        raw_handler = RawStreamHandler(handler.stream)
        raw_handler.setLevel(RAW)
        raw_handler.addFilter(RawFilter())
        getLogger('').addHandler(raw_handler)
    else:
        handler.setLevel(level)

    getLogger('').addHandler(handler)

    return (handler, raw_handler)


def remove_handlers(handlers):
    """Remove handlers returned by add_handlers."""
    if handlers[1] is not None:
        getLogger('').removeHandler(handlers[1])

    if handlers[0] is not None:
        getLogger('').removeHandler(handlers[0])
        if hasattr(handlers[0], 'close'):
            handlers[0].close()
