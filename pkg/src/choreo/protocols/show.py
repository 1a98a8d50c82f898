"""Render values the way Haskell's ``show`` does, for transcript output."""

from __future__ import annotations

import datetime
from typing import Any

_ASCII_NAMES = (
    "NUL SOH STX ETX EOT ENQ ACK BEL BS HT LF VT FF CR SO SI "
    "DLE DC1 DC2 DC3 DC4 NAK SYN ETB CAN EM SUB ESC FS GS RS US"
).split()
_LETTER_ESCAPES = {"\a": "a", "\b": "b", "\f": "f", "\n": "n", "\r": "r", "\t": "t", "\v": "v"}


def show_string(s: str) -> str:
    out = ['"']
    for i, c in enumerate(s):
        nxt = s[i + 1] if i + 1 < len(s) else ""
        code = ord(c)
        if c == '"':
            out.append('\\"')
        elif c == "\\":
            out.append("\\\\")
        elif code > 127:
            out.append(f"\\{code}" + ("\\&" if nxt.isdigit() and nxt.isascii() else ""))
        elif code == 127:
            out.append("\\DEL")
        elif code >= 32:
            out.append(c)
        elif c in _LETTER_ESCAPES:
            out.append("\\" + _LETTER_ESCAPES[c])
        elif c == "\x0e":
            out.append("\\SO" + ("\\&" if nxt == "H" else ""))
        else:
            out.append("\\" + _ASCII_NAMES[code])
    out.append('"')
    return "".join(out)


def show(x: Any) -> str:
    if isinstance(x, bool):
        return "True" if x else "False"
    if isinstance(x, str):
        return show_string(x)
    if isinstance(x, datetime.date):
        return x.isoformat()
    return str(x)


def show_maybe(x: Any) -> str:
    """``None`` is ``Nothing``; anything else is ``Just``."""
    if x is None:
        return "Nothing"
    inner = show(x)
    if inner.startswith("-"):
        inner = f"({inner})"
    return f"Just {inner}"
