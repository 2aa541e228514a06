"""Goedel numbers of sentences: the canonical text, read as a big-endian integer."""

from __future__ import annotations

import sys
from functools import lru_cache

from .parser import ParseError, parse, to_text
from .syntax import Formula, is_sentence

_MARK = b"\x02"

# witnesses produce atoms A_n with n a program index thousands of digits long
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def godel(s: Formula) -> int:
    if not is_sentence(s):
        raise ValueError(f"not a sentence: {to_text(s)}")
    return int.from_bytes(_MARK + to_text(s).encode(), "big")


@lru_cache(maxsize=65536)
def ungodel(n: int) -> Formula | None:
    """Inverse of :func:`godel`; ``None`` for numbers that code no sentence."""
    if n <= 0:
        return None
    raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if not raw.startswith(_MARK):
        return None
    try:
        text = raw[1:].decode("ascii")
        f = parse(text)
    except (UnicodeDecodeError, ParseError):
        return None
    if not is_sentence(f) or to_text(f) != text:
        return None
    return f
