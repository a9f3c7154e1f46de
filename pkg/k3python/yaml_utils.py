############################################################################
#                                                                          #
#                              YAML_UTILS.PY                               #
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

"""Configuration loading.

Configuration files are YAML documents read with an ordered loader. A key
``case_<name>`` selects, among its sub-blocks, the one whose key matches the
current value of ``<name>`` (a python regexp), so that one file can hold the
settings of every verification level::

    samples: 10
    case_level:
        full:
            samples: 100
        kummer:
            samples: 100
            kummer_digits: 80

With an initial state ``{'level': 'full'}`` the result is
``{'samples': 100, 'level': 'full'}``.
"""

from collections import OrderedDict
import logging
import os
import re

import yaml
import yaml.constructor
import yaml.parser

try:
    from yaml import CSafeLoader as Loader
except ImportError:
    from yaml import SafeLoader as Loader

logger = logging.getLogger("k3python.yaml_utils")

DEFAULT_CONFIG = os.path.join(os.path.dirname(__file__), 'data',
                              'k3python.yaml')


class YamlError(Exception):
    pass


class OrderedDictYAMLLoader(Loader):
    """A YAML loader that loads mappings into ordered dictionaries."""

    def __init__(self, stream):
        super(OrderedDictYAMLLoader, self).__init__(stream)
        self.add_constructor('tag:yaml.org,2002:map',
                             type(self).construct_yaml_map)
        self.add_constructor('tag:yaml.org,2002:omap',
                             type(self).construct_yaml_map)

    def construct_yaml_map(self, node):
        data = OrderedDict()
        yield data
        data.update(self.construct_mapping(node))

    def construct_mapping(self, node, deep=False):
        if not isinstance(node, yaml.MappingNode):
            raise yaml.constructor.ConstructorError(
                None, None, 'expected a mapping node, but found %s'
                % node.id, node.start_mark)
        self.flatten_mapping(node)

        mapping = OrderedDict()
        for key_node, value_node in node.value:
            key = self.construct_object(key_node, deep=deep)
            if key in mapping:
                raise yaml.constructor.ConstructorError(
                    'while constructing a mapping',
                    node.start_mark, 'found duplicate key (%s)' % key,
                    key_node.start_mark)
            mapping[key] = self.construct_object(value_node, deep=deep)
        return mapping


def load_ordered(filename):
    """Load a .yaml file, keep the file order.

    :type filename: str

    :rtype: OrderedDict
    """
    with open(filename) as f:
        return yaml.load(f, OrderedDictYAMLLoader)


class CaseParser(object):
    """Parse case statements in an OrderedDict.

    Each time a key starting with ``case_`` (or the prefix you choose) is
    found in a block mapping, the value of the sub block matching the key
    value is merged into the result. Nested mappings update the value
    already present instead of replacing it.
    """

    def __init__(self, initial_config, case_prefix="case_"):
        self.__state = OrderedDict(initial_config)
        self.case_prefix = case_prefix

    def __parse_case(self, case_key, data):
        """Parse a case statement.

        :param case_key: the variable on which the case is evaluated
        :type case_key: str
        :param data: the dictionary of case conditions
        :type data: dict

        :return: the value of the matched element or None
        """
        key = case_key[len(self.case_prefix):]
        if key not in self.__state:
            raise YamlError('case on unknown key %s' % key)
        key_val = str(self.__state[key])

        for k in data:
            if re.match('^%s$' % k, key_val):
                logger.debug("%s=%s match %s", key, key_val, k)
                return data[k]
        return None

    def __merge(self, cursor, data, prefix):
        for key in data:
            value = data[key]
            if key.startswith(self.case_prefix):
                selected = self.__parse_case(key, value)
                if selected is not None:
                    self.__merge(cursor, selected, prefix)
            elif isinstance(value, dict):
                sub = cursor.get(key)
                if not isinstance(sub, dict):
                    sub = OrderedDict()
                    cursor[key] = sub
                self.__merge(sub, value, prefix + (key, ))
            else:
                logger.debug('set [%s] -> %r',
                             ']['.join(prefix + (key, )), value)
                cursor[key] = value

    def parse(self, data):
        """Parse.

        :param data: a mapping as returned by load_ordered

        :return: the configuration state after expansion of case statements
        :rtype: OrderedDict
        """
        if not isinstance(data, dict):
            raise YamlError('top level object should be a mapping')
        self.__merge(self.__state, data, ())
        return self.__state


def load_with_config(filename, config):
    """Load yaml config files with case statement handling.

    :param filename: a path or list of path. When a list of path
        is given, config files are loaded in order each one
        updating the result of the previous parsing.
    :type filename: str | list[str]
    :param config: initial state
    :type config: dict

    :return: the final object
    :rtype: OrderedDict
    """
    if isinstance(filename, str):
        filename = [filename]

    result = OrderedDict(config)
    parser = CaseParser(config)

    for f in filename:
        try:
            logger.debug('load config file: %s', f)
            result = parser.parse(load_ordered(f))
        except IOError as e:
            raise YamlError("cannot read: %s (%s)" % (f, e))
        except (yaml.parser.ParserError,
                yaml.constructor.ConstructorError) as e:
            raise YamlError('%s is an invalid yaml file: %s' % (f, e))

    return result


def load_settings(level='fast', extra_files=None):
    """Load the packaged defaults followed by user configuration files.

    :param level: verification level used by ``case_level`` statements
    :type level: str
    :param extra_files: user files applied after the defaults
    :type extra_files: list[str] | None
    :rtype: OrderedDict
    """
    files = [DEFAULT_CONFIG] + list(extra_files or [])
    return load_with_config(files, {'level': level})
