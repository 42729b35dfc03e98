# -*- coding: utf-8 -*-
from typing import Any, Dict

PRIMITIVES = (int, float, bool, str)


def flatten(data: dict, sep=".", keep_primitive_list=False) -> Dict[str, Any]:
    """
    Flat "a.b.c" keys. Lists are indexed as "a.b[0]", unless keep_primitive_list is set and they only hold primitive
    values (codebook sizes, beam widths, K values ...).
    """
    output = {}
    _flatten(dict(data), "", sep, keep_primitive_list, output)
    return output


def _flatten(data: Any, prefix: str, sep: str, keep_primitive_list: bool, output: Dict[str, Any]):
    if isinstance(data, dict):
        for name, value in data.items():
            _flatten(value, prefix + sep + name if prefix else name, sep, keep_primitive_list, output)
    elif isinstance(data, (list, tuple)):
        if keep_primitive_list and all(isinstance(value, PRIMITIVES) for value in data):
            output[prefix] = list(data)
            return
        for index, value in enumerate(data):
            _flatten(value, "%s[%d]" % (prefix, index), sep, keep_primitive_list, output)
    else:
        output[prefix] = data


def unflatten(data: dict, sep=".") -> dict:
    """
    Expand keys holding a separator into nested dicts, so "model.d_model: 64" and "model: {d_model: 64}"
    are the same document.
    """
    if not isinstance(data, dict):
        return data
    output = {}
    for name, value in data.items():
        value = unflatten(value, sep)
        parts = str(name).split(sep)
        target = output
        for part in parts[:-1]:
            target = target.setdefault(part, {})
        last = parts[-1]
        if isinstance(value, dict) and isinstance(target.get(last), dict):
            target[last].update(value)
        else:
            target[last] = value
    return output
