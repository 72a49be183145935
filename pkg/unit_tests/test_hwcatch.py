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
""" Tests for the hwcert.hwcatch module. """

import pytest

from hwcert import hwcatch


def test_simple():
    """ Test the behavior of hw_catch() and hw_caught(). """

    def return_int():
        """ Return an integer value. """
        return 616

    def raise_value_error():
        """ Raise a ValueError(). """
        raise ValueError('whee')

    def return_partial_terms():
        """ Give up after computing a couple of resolution terms. """
        hwcatch.error(hwcatch.TruncationTooShallow,
                      'Out of terms at {length}', ['P1', 'P2'], length=2)

    result = []

    def append_to_result(obj):
        """ Append an item to the result array. """
        result.append(obj)

    exc = hwcatch.hw_catch(append_to_result, return_int, None)
    assert exc is None
    assert result == [616]

    old_exc = (ValueError, ValueError('foo'), None)
    exc = hwcatch.hw_catch(append_to_result, return_int, old_exc)
    assert exc is old_exc
    assert result == [616, 616]

    exc = hwcatch.hw_catch(append_to_result, raise_value_error, None)
    assert exc is not None
    assert exc[0] is ValueError
    assert exc[1].args == ('whee',)
    assert result == [616, 616]

    exc = hwcatch.hw_catch(append_to_result, return_partial_terms, exc)
    assert exc is not None
    assert exc[0] is hwcatch.TruncationTooShallow
    assert str(exc[1]) == 'Out of terms at 2'
    assert exc[1].partial == ['P1', 'P2']
    assert exc[1].length == 2
    assert result == [616, 616, ['P1', 'P2']]


def test_caught():
    """ Test that hw_caught() prefixes the name and attaches the partial
    results of the whole batch. """
    hwcatch.hw_caught(None, 'nothing', [1, 2])

    exc = hwcatch.hw_catch(
        lambda _: None,
        lambda: hwcatch.error(hwcatch.Undecided, 'No isomorphism found'),
        None)
    with pytest.raises(hwcatch.Undecided) as err:
        hwcatch.hw_caught(exc, 'hom(S1, S2)', {'S1': 3})
    assert err.value.message == 'hom(S1, S2): No isomorphism found'
    assert err.value.partial == {'S1': 3}

    exc = hwcatch.hw_catch(lambda _: None,
                           lambda: int('not a number'), None)
    with pytest.raises(hwcatch.HWError) as err:
        hwcatch.hw_caught(exc, 'parse', [])
    assert err.value.message.startswith('parse: ')
    assert err.value.partial == []


def test_to_json():
    """ Test the error document form and the parse error positions. """
    err = hwcatch.ParseError('Unknown arrow "{name}"', line=3, column=7,
                             name='x')
    assert str(err) == '3:7: Unknown arrow "x"'
    assert err.line == 3
    assert err.column == 7
    assert err.to_json() == {
        'name': 'parseError',
        'descr': '3:7: Unknown arrow "x"',
    }

    err = hwcatch.NotExceptionalPair('Hom({a}, {b}) != 0', a='E', b='F')
    assert err.to_json()['name'] == 'notExceptionalPair'
    assert err.partial is None
