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
""" Low-level helpers for the hwcert report objects. """

from __future__ import print_function

import fractions
import functools
import sys

import six


try:
    import simplejson as js
except ImportError:
    print('simplejson unavailable, fall-back to standard python json',
          file=sys.stderr)
    import json as js


from . import hwcatch


SORT_KEYS = True
INDENT = None
SEPARATORS = (',', ':')

load = js.load  # pylint: disable=invalid-name
loads = js.loads  # pylint: disable=invalid-name


def dump(obj, filep, indent=INDENT):
    """ Serialize an object with reasonable default settings. """
    return js.dump(obj, filep, cls=JsonEncoder, sort_keys=SORT_KEYS,
                   indent=indent, separators=SEPARATORS)


def dumps(obj, indent=INDENT):
    """ Serialize an object to a string with reasonable default settings. """
    return js.dumps(obj, cls=JsonEncoder, sort_keys=SORT_KEYS,
                    indent=indent, separators=SEPARATORS)


def fraction_str(value):
    """ An exact field element as an integer or a "p/q" string. """
    if isinstance(value, fractions.Fraction):
        if value.denominator == 1:
            return value.numerator
        return '{num}/{den}'.format(num=value.numerator,
                                    den=value.denominator)
    return value


class JsonEncoder(js.JSONEncoder):
    """ Help serialize a JsonObject instance. """

    def default(self, o):
        """ Invoke a suitable serialization function. """
        # pylint: disable=method-hidden
        if isinstance(o, JsonObjectImpl):
            return o.to_json()
        if isinstance(o, fractions.Fraction):
            return fraction_str(o)
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if isinstance(o, hwcatch.HWError):
            return o.to_json()
        return super(JsonEncoder, self).default(o)


def _no_such_attr(obj, attr):
    """ Complain about an attribute outside the object's definitions. """
    return AttributeError("'{cls}' has no attribute '{attr}'".format(
        cls=type(obj).__name__, attr=attr))


class JsonObjectImpl(object):
    """ Base class for a report object; see hwtype.JsonObject.

    The attribute definitions live in the class-level __jsonAttrDefs__
    dictionary; every value passes through its definition's handleVal()
    both on construction and on assignment.  Construction validates all
    the attributes before raising, so the error carries the partially
    built object. """

    def __new__(cls, json=None, **kwargs):
        if isinstance(json, cls):
            assert not kwargs, \
                'Cannot update an already constructed {cls}'.format(
                    cls=cls.__name__)
            return json

        values = dict(json or {})
        values.update(kwargs)

        self = super(JsonObjectImpl, cls).__new__(cls)
        attrs = {}
        object.__setattr__(self, '__jsonAttrs__', attrs)

        def build(attr_def, name):
            """ Validate a supplied value or produce the default one. """
            if name in values:
                return attr_def.handleVal(values[name])
            return attr_def.defaultVal()

        exc = None
        for name, attr_def in sorted(six.iteritems(cls.__jsonAttrDefs__)):
            attrs[name] = None
            exc = hwcatch.hw_catch(
                functools.partial(attrs.__setitem__, name),
                functools.partial(build, attr_def, name),
                exc)
        hwcatch.hw_caught(exc, cls.__name__, self)
        return self

    def __getattr__(self, attr):
        try:
            return self.__jsonAttrs__[attr]
        except KeyError:
            raise _no_such_attr(self, attr)

    def __setattr__(self, attr, value):
        attr_def = self.__jsonAttrDefs__.get(attr)
        if attr_def is None:
            raise _no_such_attr(self, attr)
        self.__jsonAttrs__[attr] = attr_def.handleVal(value)

    def to_json(self):
        """ The attribute values as a dictionary. """
        return dict(self.__jsonAttrs__)

    _asdict = to_json

    def __iter__(self):
        return six.iteritems(self.to_json())

    def __eq__(self, other):
        return type(self) is type(other) and \
            self.__jsonAttrs__ == other.__jsonAttrs__

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __repr__(self):
        return '{cls}({attrs})'.format(
            cls=type(self).__name__,
            attrs=', '.join('{name}={value!r}'.format(name=name, value=value)
                            for name, value in sorted(self)))

    def __str__(self):
        return dumps(self)
