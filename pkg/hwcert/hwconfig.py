#
# Copyright (c) 2024  StorPool.
# All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
""" Settings for the hwcert solvers: search bounds, field, random seed.

The values come from /etc/hwcert.conf and the *.conf files in
/etc/hwcert.conf.d/, read in order; in each file the unnamed section is
applied first, then the one named by the caller (the host name by
default).  A few of the settings may also be overridden in the
environment.  All values are kept as strings, as read from the files. """


import glob
import os
import platform

import confget
from six.moves import collections_abc


DEFAULTS = {
    # the field to compute over: "q" or "fp:<prime>"
    "HW_FIELD": "q",
    # longest path considered while completing the relations
    "HW_LENGTH_BOUND": "50",
    "HW_GLDIM_BOUND": "64",
    # initial depth for resolving the terms of a complex
    "HW_RESOLUTION_BOUND": "16",
    "HW_ISO_TRIES": "64",
    "HW_SEED": "20240101",
    "HW_WORKERS": "4",
    "HW_ORACLE_PAIRS": "200",
}

# settings that must be at least 1
POSITIVE = frozenset([
    "HW_LENGTH_BOUND",
    "HW_GLDIM_BOUND",
    "HW_RESOLUTION_BOUND",
    "HW_ISO_TRIES",
    "HW_WORKERS",
    "HW_ORACLE_PAIRS",
])

ENV_OVERRIDE = [
    "HW_FIELD",
    "HW_LENGTH_BOUND",
    "HW_GLDIM_BOUND",
    "HW_SEED",
    "HW_WORKERS",
]


class HWConfigException(Exception):
    """ An unreadable configuration file or an invalid setting. """


def get_env_overrides():
    """ The ENV_OVERRIDE variables that are set in the environment. """
    found = {}
    for name in ENV_OVERRIDE:
        value = os.environ.get(name)
        if value is not None:
            found[name] = value
    return found


class HWConfig(collections_abc.Mapping):
    """ The hwcert settings as a read-only mapping.

    The files are parsed on construction.  Passing `override_config`
    skips them altogether: its values are laid over DEFAULTS and the
    environment is not consulted either. """

    PATH_CONFIG = '/etc/hwcert.conf'
    PATH_CONFIG_DIR = '/etc/hwcert.conf.d'

    def __init__(
        self,
        section=None,
        missing_ok=True,
        use_env=True,
        override_config=None,
    ):
        self._section = section if section is not None else platform.node()
        self._dict = dict(DEFAULTS)

        if override_config is not None:
            self._dict.update(override_config)
        else:
            self.run_confget(missing_ok=missing_ok, use_env=use_env)

    @classmethod
    def get_config_files(cls, missing_ok=True):
        """ The main file and the drop-in ones, in the order they apply.

        Without `missing_ok` the main file is listed even if absent, so
        that reading it fails loudly. """
        files = [cls.PATH_CONFIG] + sorted(
            glob.glob(os.path.join(cls.PATH_CONFIG_DIR, '*.conf')))
        if missing_ok:
            files = [path for path in files if os.path.isfile(path)]
        return files

    @staticmethod
    def read_file(fname):
        """ Parse a single INI file into a section -> settings dictionary. """
        backend = confget.BACKENDS['ini']
        try:
            return backend(confget.Config([], filename=fname)).read_file()
        except Exception as exc:
            raise HWConfigException(
                'Could not read the hwcert settings from {fname}: {exc}'
                .format(fname=fname, exc=exc))

    def run_confget(self, missing_ok=True, use_env=True):
        """ Apply the configuration files and the environment. """
        for fname in self.get_config_files(missing_ok=missing_ok):
            raw = self.read_file(fname)
            self._dict.update(raw.get('', {}))
            self._dict.update(raw.get(self._section, {}))

        if use_env:
            self._dict.update(get_env_overrides())

    @property
    def section(self):
        """ The name of the section read after the common one. """
        return self._section

    def get_int(self, key):
        """ A numeric setting; the search bounds must be positive. """
        value = self._dict[key]
        try:
            res = int(value)
        except ValueError:
            raise HWConfigException(
                'The {key} setting should be an integer, got {value!r}'
                .format(key=key, value=value))
        if key in POSITIVE and res < 1:
            raise HWConfigException(
                'The {key} setting should be at least 1, got {res}'
                .format(key=key, res=res))
        return res

    def __getitem__(self, key):
        return self._dict[key]

    def __iter__(self):
        return iter(self._dict)

    def __len__(self):
        return len(self._dict)
