"""Canonical wire encoding for communicated values.

UTF-8 JSON. Scalars map directly (``None`` is the empty option, so an
option value is ``null`` or the value itself). Lists are JSON arrays.
Everything else is a tagged record ``{"tag": name, "fields": [...]}``:
tuples use the tag ``"Tuple"``, dates ``"Date"``, and user sum types are
registered with ``@wire_type`` and encode their dataclass fields in
declaration order.

Encoding is canonical: equal values give identical bytes.
"""

from __future__ import annotations

import dataclasses
import datetime
import json
import math
from typing import Any

from .errors import CodecError

Encoded = bytes

_BUILTIN_TAGS = {"Tuple", "Date"}
_registry: dict[str, type] = {}


def wire_type(cls: type) -> type:
    """Register a dataclass as a wire-encodable constructor, tagged by its class name."""
    if not dataclasses.is_dataclass(cls):
        raise TypeError(f"{cls.__name__} must be a dataclass")
    tag = cls.__name__
    if tag in _BUILTIN_TAGS or (tag in _registry and _registry[tag] is not cls):
        raise ValueError(f"wire tag {tag!r} is already taken")
    _registry[tag] = cls
    return cls


def _to_json(x: Any) -> Any:
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise CodecError(f"cannot encode non-finite float {x!r}")
        return x
    if isinstance(x, list):
        return [_to_json(v) for v in x]
    if isinstance(x, tuple):
        return {"tag": "Tuple", "fields": [_to_json(v) for v in x]}
    if isinstance(x, datetime.date) and not isinstance(x, datetime.datetime):
        return {"tag": "Date", "fields": [x.isoformat()]}
    cls = type(x)
    if _registry.get(cls.__name__) is cls:
        return {
            "tag": cls.__name__,
            "fields": [_to_json(getattr(x, f.name)) for f in dataclasses.fields(cls)],
        }
    raise CodecError(f"no wire encoding for values of type {cls.__name__}")


def _from_json(j: Any) -> Any:
    if j is None or isinstance(j, (bool, str, int, float)):
        return j
    if isinstance(j, list):
        return [_from_json(v) for v in j]
    if isinstance(j, dict):
        if set(j) != {"tag", "fields"} or not isinstance(j["fields"], list):
            raise CodecError(f"malformed tagged value: {j!r}")
        tag, fields = j["tag"], [_from_json(v) for v in j["fields"]]
        if tag == "Tuple":
            return tuple(fields)
        if tag == "Date":
            try:
                (iso,) = fields
                return datetime.date.fromisoformat(iso)
            except (TypeError, ValueError) as exc:
                raise CodecError(f"malformed date: {fields!r}") from exc
        cls = _registry.get(tag)
        if cls is None:
            raise CodecError(f"unknown wire tag {tag!r}")
        try:
            return cls(*fields)
        except TypeError as exc:
            raise CodecError(f"bad fields for {tag}: {fields!r}") from exc
    raise CodecError(f"unexpected JSON value {j!r}")


def encode(x: Any) -> Encoded:
    return json.dumps(
        _to_json(x), ensure_ascii=False, separators=(",", ":"), allow_nan=False
    ).encode("utf-8")


def _reject_constant(name: str) -> Any:
    raise CodecError(f"non-finite number {name} on the wire")


def decode(data: Encoded) -> Any:
    try:
        text = data.decode("utf-8")
        j = json.loads(text, parse_constant=_reject_constant)
    except CodecError:
        raise
    except (UnicodeDecodeError, ValueError) as exc:
        raise CodecError(f"payload is not UTF-8 JSON: {data[:64]!r}") from exc
    return _from_json(j)

