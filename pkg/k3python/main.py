############################################################################
#                                                                          #
#                                 MAIN.PY                                  #
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

"""Main program initialization.

This module provides a class called Main used to initialize a python script
invoked from command line. The main goal is to ensure consistency in term of
interface, documentation and logging activities for all k3python scripts.

The script will support by default the following switches::

    -v|--verbose to enable verbose mode (a console logger is added)
    -h|--help    display the usage
    --loglevel LEVEL
                 minimal level of the console logs
    --log-file FILE
                 to redirect logs to a given file (this is independent from
                 verbose option)
    --enable-color
                 highlight the check statuses in console logs

*EXAMPLES*

If you have the following script test.py::

    import logging
    from k3python.main import Main

    m = Main(description='run a check')
    m.argument_parser.add_argument("-t", "--test", default="default")
    m.parse_args()
    logging.info('test option value: %s', m.options.test)

Here are some invocation examples::

    $ python test.py -v
    INFO     test option value: default
"""
import argparse
import logging
import os
import re
import signal
import sys

import k3python.logging_util
from k3python.logging_util import (highlight, COLOR_RED, COLOR_YELLOW,
                                   COLOR_GREEN, COLOR_CYAN)


class MainError(Exception):
    """Raised when the logging options cannot be applied."""
    pass


color_table = {
    ' (FAILED|CRASH)': COLOR_RED,
    ' (PROBLEM)': COLOR_YELLOW,
    ' (PASSED)': COLOR_GREEN,
    ' (SKIP)': COLOR_CYAN}


class ConsoleColorFormatter(logging.Formatter):
    """Formatter with color support.

    If level is ERROR or CRITICAL then the output color is set to red.
    Furthermore if some keyword such as PASSED, FAILED are detected then
    they are highlighted with an adequate color
    """

    def format(self, record):
        output = logging.Formatter.format(self, record)
        if record.levelno >= logging.ERROR:
            output = highlight(output, fg=COLOR_RED)
        else:
            for k in color_table:
                output = re.sub(
                    k, ' ' + highlight("\\1", fg=color_table[k]), output)
        return output


LEVELS = {'RAW': k3python.logging_util.RAW,
          'DEBUG': logging.DEBUG,
          'INFO': logging.INFO,
          'ERROR': logging.ERROR,
          'CRITICAL': logging.CRITICAL}


class Main(object):
    """Class that implement argument parsing.

    ATTRIBUTES
      name: name of the program (default is the script filename without
        extension)
      argument_parser: the argparse.ArgumentParser used to parse the
        command line
      options: the argparse namespace, set by parse_args
    """

    def __init__(self, name=None, description=None, formatter=None):
        """Init Main object.

        :param name: name of the program (if not specified the filename
            without extension is taken)
        :type name: str | None
        :param description: text displayed by --help
        :type description: str | None
        :param formatter: override the default format of console records
        :type formatter: str | None
        """
        if name is None:
            name = os.path.splitext(os.path.basename(sys.argv[0]))[0]
        self.name = name

        self.argument_parser = argparse.ArgumentParser(
            prog=self.name, description=description,
            formatter_class=argparse.RawDescriptionHelpFormatter)

        log_options = self.argument_parser.add_argument_group(
            "Various logging options")
        log_options.add_argument(
            "-v", "--verbose",
            dest="verbose",
            action="store_true",
            default=False,
            help="add some verbosity for debugging purposes. "
            "Overrides --loglevel")
        log_options.add_argument(
            "--log-file",
            dest="logfile",
            metavar="FILE",
            default="",
            help="add some logs into the specified file")
        log_options.add_argument(
            "--enable-color",
            dest="enable_color",
            action="store_true",
            default=False,
            help="enable colors in log outputs")
        log_options.add_argument(
            "--loglevel", default="INFO",
            choices=sorted(LEVELS),
            help="defines a loglevel (RAW,DEBUG,INFO,ERROR,CRITICAL) for"
            " stderr")

        self.options = None
        self.formatter = formatter
        self.handlers = []

        # By default do not filter anything. What is effectively logged will
        # be defined by setting/unsetting handlers
        logging.getLogger('').setLevel(k3python.logging_util.RAW)

        def sigterm_handler(signal, frame):
            """Automatically convert SIGTERM to SystemExit exception."""
            logging.critical('SIGTERM received')
            raise SystemExit('SIGTERM received')

        signal.signal(signal.SIGTERM, sigterm_handler)

    def parse_args(self, args=None):
        """Parse options and set console logger.

        :param args: the list of positional parameters. If None then
            ``sys.argv[1:]`` is used
        :type args: list[str] | None
        :raise MainError: if the log file cannot be opened
        """
        self.options = self.argument_parser.parse_args(args)

        if not self.handlers:
            if self.options.verbose:
                level = k3python.logging_util.RAW
            else:
                level = LEVELS.get(self.options.loglevel, logging.INFO)

            default_format = '%(levelname)-8s %(message)s'
            if self.formatter is not None:
                default_format = self.formatter
            handlers = k3python.logging_util.add_handlers(
                level=level, format=default_format)
            self.handlers.append(handlers)

            if self.options.enable_color:
                k3python.logging_util.enable_color(True)
                handlers[0].setFormatter(ConsoleColorFormatter(default_format))

            # Log to a file if necessary
            if self.options.logfile != "":
                try:
                    self.handlers.append(k3python.logging_util.add_handlers(
                        level=k3python.logging_util.RAW,
                        format='%(name)-24s: %(levelname)-8s %(message)s',
                        filename=self.options.logfile))
                except (IOError, OSError) as e:
                    raise MainError('cannot open log file %s: %s'
                                    % (self.options.logfile, e))
        return self.options

    def close(self):
        """Remove the handlers installed by parse_args."""
        for handlers in self.handlers:
            k3python.logging_util.remove_handlers(handlers)
        self.handlers = []
        k3python.logging_util.enable_color(False)
