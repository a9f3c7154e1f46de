#!/usr/bin/env python
from k3python import __version__

from setuptools import setup, find_packages

import glob
import os

setup(name='k3python',
      version=__version__,
      author="The k3python developers",
      description="Elliptic K3 surfaces with E8 and E7 fibers and their "
      "Kummer quotients, with exact verification",
      license="GPLv3",
      packages=find_packages(exclude=['tests']),
      package_data={'k3python': ['data/*.yaml']},
      install_requires=['colorama', 'pyyaml', 'sympy>=1.12', 'mpmath'],
      extras_require={'test': ['pytest']},
      scripts=[f for f in glob.glob('scripts/*') if os.path.isfile(f)])
