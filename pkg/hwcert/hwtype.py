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
""" Typed attributes for the report objects.

hwType() turns a short description into an HwType validator:

- a class or a function, e.g. `int` or `hwtypes.status`, is called on the
  value and its result is stored;
- `[T]`, `set([T])` and `{K: V}` validate every element, collecting all
  the failures before raising, so the error carries the valid part;
- any other value is a default, typed after its own type.
"""

import collections
import functools
import inspect

import six

from . import hwcatch
from . import hwjson as js


HwType = collections.namedtuple('HwType', [
    'name',
    'handleVal',
    'defaultVal',
    'descr',
])

TYPE_DESCR = {
    bool: "true or false.",
    int: "An integer value.",
    str: "A string value.",
}


def _no_default(name):
    """ A default value factory for attributes that must be supplied. """
    return lambda: hwcatch.error(hwcatch.HWError,
                                 "No default value for {name}", name=name)


def _single(spec, what):
    """ The single element type of a container description. """
    items = list(spec)
    assert len(items) == 1, \
        "{what} type descriptions need exactly one element type".format(
            what=what)
    return hwType(items[0])


def _collect(name, validate, store, result, values):
    """ Validate each value into `store`, then raise the first failure. """
    exc = None
    for value in values:
        # pylint: disable=cell-var-from-loop
        exc = hwcatch.hw_catch(store, lambda: validate(value), exc)
    hwcatch.hw_caught(exc, name, result)
    return result


def hwList(spec):
    elem = _single(spec, 'List')
    name = "[{0}]".format(elem.name)

    def handle(values):
        res = []
        return _collect(name, elem.handleVal, res.append, res, values)

    return HwType(name, handle, list, "A list of {0}".format(elem.name))


def hwSet(spec):
    elem = _single(spec, 'Set')
    name = "{{{0}}}".format(elem.name)

    def handle(values):
        res = set()
        return _collect(name, elem.handleVal, res.add, res, values)

    return HwType(name, handle, set, "A set of {0}".format(elem.name))


def hwDict(spec):
    assert len(spec) == 1, \
        "Dict type descriptions need exactly one key: value pair"
    [(key_spec, val_spec)] = list(spec.items())
    key_type, val_type = hwType(key_spec), hwType(val_spec)
    name = "{{{0}: {1}}}".format(key_type.name, val_type.name)

    def handle(values):
        res = {}
        exc = None
        for key, val in six.iteritems(values):
            keys = []
            exc = hwcatch.hw_catch(
                keys.append, functools.partial(key_type.handleVal, key), exc)
            if not keys:
                continue
            res[keys[0]] = None
            exc = hwcatch.hw_catch(
                functools.partial(res.__setitem__, keys[0]),
                functools.partial(val_type.handleVal, val), exc)
        hwcatch.hw_caught(exc, name, res)
        return res

    return HwType(name, handle, dict, "A dict from {0} to {1}".format(
        key_type.name, val_type.name))


def maybe(spec):
    """ Allow None besides the values of the described type. """
    sub = hwType(spec)

    def handle(val):
        return None if val is None else sub.handleVal(val)

    return HwType("Optional({0})".format(sub.name), handle, lambda: None,
                  "If present must be of type {0}".format(sub.name))


def hwTypeVal(val):
    sub = hwType(type(val))
    return HwType("{0}, default={1}".format(sub.name, js.dumps(val)),
                  sub.handleVal, lambda: val,
                  "A value of type {0}. Default value = {1}.".format(
                      sub.name, val))


def hwTypeFun(argName, validator, argDoc):
    """ A named validator function with a description for the docs. """
    return HwType(argName, validator, _no_default(argName), argDoc)


CONTAINERS = (
    (list, hwList),
    (set, hwSet),
    (dict, hwDict),
)


def hwType(tp):
    """ Build an HwType out of a type description. """
    if isinstance(tp, HwType):
        return tp
    if inspect.isclass(tp) or inspect.isfunction(tp):
        descr = TYPE_DESCR.get(tp) or getattr(tp, 'descr', tp.__name__)
        return HwType(tp.__name__, tp, _no_default(tp.__name__), descr)
    for container, build in CONTAINERS:
        if isinstance(tp, container):
            return build(tp)
    return hwTypeVal(tp)


class JsonObject(object):
    """ A class decorator: declare the typed attributes of a report object.

    The decorated class is rebuilt on top of hwjson.JsonObjectImpl;
    attributes declared on a decorated base class are inherited.  The
    attribute list is appended to the class docstring. """

    def __init__(self, **kwargs):
        self.attrDefs = dict(
            (name, hwType(spec)) for name, spec in six.iteritems(kwargs))

    def __call__(self, cls):
        attrDefs = dict(getattr(cls, '__jsonAttrDefs__', {}))
        attrDefs.update(self.attrDefs)

        lines = [
            cls.__doc__ or "{0}.{1}".format(cls.__module__, cls.__name__),
            "",
            "    Report attributes:",
        ]
        lines.extend(
            "        {name}: {type}".format(name=name, type=attr.name)
            for name, attr in sorted(six.iteritems(attrDefs)))
        lines.append("")

        return type(cls.__name__, (cls, js.JsonObjectImpl), {
            '__jsonAttrDefs__': attrDefs,
            '__module__': cls.__module__,
            '__doc__': "\n".join(lines) + "\n",
            'descr': cls.__doc__ or cls.__name__,
        })
