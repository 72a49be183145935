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
""" Tests for the hwcert.hwconfig.HWConfig class. """

import collections
import errno
import os

import mock
import pytest

from hwcert import hwconfig


ConfigData = collections.namedtuple('ConfigData', [
    'filename',
    'exists',
    'data',
])

CONFIG_DATA = (
    ConfigData(
        filename='/etc/hwcert.conf',
        exists=True,
        data={
            '': {'HW_WORKERS': '2'},
            'lab': {'HW_FIELD': 'fp:3', 'HW_ISO_TRIES': '16'},
        },
    ),
    ConfigData(
        filename='/etc/hwcert.conf.d/local.conf',
        exists=True,
        data={'': {'HW_SEED': '7'}, 'lab': {'HW_GLDIM_BOUND': '12'}},
    ),
    ConfigData(
        filename='/etc/hwcert.conf.d/missing.conf',
        exists=False,
        data={},
    ),
)

CONFIG_FILES = {
    item.filename: item for item in CONFIG_DATA
}


def fake_get_config_files(_cls, missing_ok=False):
    """ Simulate looking for the hwcert configuration files. """
    assert missing_ok is not None
    return [item.filename for item in CONFIG_DATA]


class FakeConfig(object):
    # pylint: disable=too-few-public-methods
    """ Simulate a confget.Config settings holder. """

    def __init__(self, varnames, filename='(invalid)'):
        """ Initialize a fake Config object: store the filename. """
        assert varnames == []
        assert filename in CONFIG_FILES
        self.filename = filename


class FakeINI(object):
    # pylint: disable=too-few-public-methods
    """ Simulate a confget INI backend reader. """

    def __init__(self, config):
        """ Initialize a fake INI reader: store the fake config object. """
        assert isinstance(config, FakeConfig)
        self.config = config

    def read_file(self):
        """ Simulate reading from the INI file. """
        return CONFIG_FILES[self.config.filename].data


class FakeINICheck(FakeINI):
    # pylint: disable=too-few-public-methods
    """ Simulate a confget INI backend reader that notices missing files. """

    def read_file(self):
        """ Simulate reading from the INI file. """
        res = CONFIG_FILES[self.config.filename]
        if not res.exists:
            raise IOError(
                errno.ENOENT,
                "No such file or directory",
                self.config.filename,
            )
        return res.data


@mock.patch('hwcert.hwconfig.HWConfig.get_config_files',
            new=fake_get_config_files)
@mock.patch('confget.Config', new=FakeConfig)
@mock.patch('confget.BACKENDS', new={'ini': FakeINI})
def test_success():
    """ Test that the common and the named sections are merged. """
    cfg = hwconfig.HWConfig(section='lab', missing_ok=True, use_env=False)

    assert cfg['HW_FIELD'] == 'fp:3'
    assert cfg['HW_WORKERS'] == '2'
    assert cfg['HW_SEED'] == '7'
    assert cfg.get_int('HW_GLDIM_BOUND') == 12
    assert cfg.get_int('HW_ISO_TRIES') == 16
    assert cfg['HW_LENGTH_BOUND'] == hwconfig.DEFAULTS['HW_LENGTH_BOUND']
    with pytest.raises(KeyError):
        assert cfg['HW_NOTHING'] == 'we should never get here, right?'
    assert cfg.get('HW_NOTHING', 42) == 42

    assert sorted(
        set(cfg.items()) - set(hwconfig.DEFAULTS.items())
    ) == [
        ('HW_FIELD', 'fp:3'),
        ('HW_GLDIM_BOUND', '12'),
        ('HW_ISO_TRIES', '16'),
        ('HW_SEED', '7'),
        ('HW_WORKERS', '2'),
    ]
    assert set(cfg.keys()) == set(hwconfig.DEFAULTS.keys())
    assert sorted(cfg) == sorted(hwconfig.DEFAULTS)

    cfg = hwconfig.HWConfig(section='elsewhere', use_env=False)
    assert cfg['HW_FIELD'] == 'q'
    assert cfg['HW_WORKERS'] == '2'
    assert cfg['HW_GLDIM_BOUND'] == hwconfig.DEFAULTS['HW_GLDIM_BOUND']


@mock.patch('hwcert.hwconfig.HWConfig.get_config_files',
            new=fake_get_config_files)
@mock.patch('confget.Config', new=FakeConfig)
@mock.patch('confget.BACKENDS', new={'ini': FakeINI})
def test_environment():
    """ Test that environment variables may override the config. """
    env = {'HW_FIELD': 'fp:5', 'HW_ISO_TRIES': '1000'}
    with mock.patch.object(os.environ, 'get', new=env.get):
        cfg = hwconfig.HWConfig(section='lab', missing_ok=True)

    assert cfg['HW_FIELD'] == 'fp:5'
    # not one of the overridable settings
    assert cfg['HW_ISO_TRIES'] == '16'
    assert cfg['HW_SEED'] == '7'

    with mock.patch.object(os.environ, 'get', new=env.get):
        assert hwconfig.get_env_overrides() == {'HW_FIELD': 'fp:5'}


@mock.patch('hwcert.hwconfig.HWConfig.get_config_files',
            new=fake_get_config_files)
@mock.patch('confget.Config', new=FakeConfig)
@mock.patch('confget.BACKENDS', new={'ini': FakeINICheck})
def test_file_not_found():
    """ Test that an unreadable file is reported with its name. """
    with pytest.raises(hwconfig.HWConfigException) as err:
        hwconfig.HWConfig(section='lab', missing_ok=True, use_env=False)

    assert '/etc/hwcert.conf.d/missing.conf' in str(err.value)


def test_get_config_files():
    """ Test the order of the main and the drop-in configuration files. """
    dropins = {
        '/etc/hwcert.conf.d/*.conf': [
            '/etc/hwcert.conf.d/local.conf',
            '/etc/hwcert.conf.d/gone.conf',
            '/etc/hwcert.conf.d/extra.conf',
        ],
    }
    present = set([
        '/etc/hwcert.conf.d/extra.conf',
        '/etc/hwcert.conf.d/local.conf',
    ])

    with mock.patch('glob.glob', new=dropins.__getitem__), mock.patch(
        'os.path.isfile', new=lambda path: path in present
    ):
        found = hwconfig.HWConfig.get_config_files(missing_ok=True)
        wanted = hwconfig.HWConfig.get_config_files(missing_ok=False)

    assert found == [
        '/etc/hwcert.conf.d/extra.conf',
        '/etc/hwcert.conf.d/local.conf',
    ]
    assert wanted == [
        '/etc/hwcert.conf',
        '/etc/hwcert.conf.d/extra.conf',
        '/etc/hwcert.conf.d/gone.conf',
        '/etc/hwcert.conf.d/local.conf',
    ]


@mock.patch('hwcert.hwconfig.HWConfig.get_config_files',
            new=fake_get_config_files)
@mock.patch('confget.Config', new=FakeConfig)
@mock.patch('confget.BACKENDS', new={'ini': FakeINI})
def test_host_section():
    """ Test that the host name selects the section by default. """
    with mock.patch('platform.node', new=lambda: 'lab'):
        cfg = hwconfig.HWConfig(use_env=False)

    assert cfg.section == 'lab'
    assert cfg['HW_FIELD'] == 'fp:3'
    assert len(cfg) == len(hwconfig.DEFAULTS)


def test_override_config():
    """ Test that HWConfig(override_config={...}) reads no files. """

    def do_not_invoke(*_args, **__kwargs):
        """ Make sure run_confget() is never invoked. """
        raise NotImplementedError('This function should not be invoked!')

    with mock.patch('hwcert.hwconfig.HWConfig.run_confget',
                    new=do_not_invoke):
        cfg = hwconfig.HWConfig(override_config={
            'HW_SEED': 'x',
            'HW_WORKERS': '0',
            'HW_ISO_TRIES': '-3',
        })

    assert cfg['HW_FIELD'] == 'q'
    with pytest.raises(hwconfig.HWConfigException) as err:
        cfg.get_int('HW_SEED')
    assert 'HW_SEED' in str(err.value)

    for key in ('HW_WORKERS', 'HW_ISO_TRIES'):
        with pytest.raises(hwconfig.HWConfigException) as err:
            cfg.get_int(key)
        assert 'should be at least 1' in str(err.value)

    cfg = hwconfig.HWConfig(override_config={'HW_SEED': '0'})
    assert cfg.get_int('HW_SEED') == 0
