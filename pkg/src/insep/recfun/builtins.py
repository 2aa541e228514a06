"""The fixed table of total functions reachable through ``call``.

Each entry is a total recursive function on naturals; a call costs one
machine step. ``eval`` and ``eval2`` are handled by the interpreter because
their cost is charged to the caller. Sentence operations work on the
sentence codes of :mod:`insep.logic.godel` and map non-codes to 0, which is
never a sentence code. Entries are only ever appended, so indices stay valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Callable


@dataclass(frozen=True)
class Builtin:
    name: str
    arity: int
    fn: Callable[..., int] | None


def pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def _smn(i: int, x: int) -> int:
    from .machine import smn

    return smn(i, [x])


# -- sentences -------------------------------------------------------------

def _sentence(c: int):
    from ..logic.godel import ungodel

    return ungodel(c)


def _code(f) -> int:
    from ..logic.godel import godel

    return godel(f)


def _unary(build):
    def op(c: int) -> int:
        f = _sentence(c)
        return 0 if f is None else _code(build(f))
    return op


def _binary(build):
    def op(a: int, b: int) -> int:
        f, g = _sentence(a), _sentence(b)
        return 0 if f is None or g is None else _code(build(f, g))
    return op


def _not(f):
    from ..logic.syntax import Not

    return Not(f)


def _and(f, g):
    from ..logic.syntax import And

    return And(f, g)


def _or(f, g):
    from ..logic.syntax import Or

    return Or(f, g)


def _imp(f, g):
    from ..logic.syntax import Implies

    return Implies(f, g)


def c_unneg(c: int) -> int:
    from ..logic.syntax import Not

    f = _sentence(c)
    return _code(f.body) if isinstance(f, Not) else 0


RELS = ("E", "E'")


def size_atom_code(n: int, rel: int) -> int:
    from ..logic.syntax import SizeAtom

    return _code(SizeAtom(n, RELS[min(rel, len(RELS) - 1)]))


def atom_index(c: int, rel: int) -> int:
    """n + 1 if c codes the size atom A_n over relation ``rel``, else 0."""
    from ..logic.syntax import SizeAtom

    f = _sentence(c)
    if isinstance(f, SizeAtom) and f.rel == RELS[min(rel, len(RELS) - 1)]:
        return f.n + 1
    return 0


LANGUAGES = ((("E", 2),), (("E'", 2),), (("E", 2), ("E'", 2), ("P", 0)))


def nth_sentence(lang: int, k: int) -> int:
    from ..logic.enumerate import sentences

    return _code(sentences(LANGUAGES[min(lang, len(LANGUAGES) - 1)])[k])


def prove(base: int, ctx: int, c: int) -> int:
    """1 if theory ``base`` of the registry plus the sentence ``ctx`` proves ``c``.

    ``ctx`` = 0 means no extra axiom. Non-codes, foreign symbols and
    sentences the decision hook cannot handle all give 0.
    """
    return 1 if _prove(base, ctx, c) else 0


@lru_cache(maxsize=65536)
def _prove(base: int, ctx: int, c: int) -> bool:
    from ..logic.oplus import UndecidableByHook
    from ..logic.registry import base_theory
    from ..logic.syntax import relations

    t = base_theory(base)
    s = _sentence(c)
    if t is None or s is None:
        return False
    context = []
    if ctx:
        g = _sentence(ctx)
        if g is None:
            return False
        context.append(g)
    allowed = {n for n, _ in t.relations}
    for f in [s, *context]:
        if not {n for n, _ in relations(f)} <= allowed:
            return False
    try:
        return t.proves(s, context)
    except (UndecidableByHook, ValueError):
        return False


def stage_context(base: int, i: int, j: int, s: int) -> int:
    """Code of the conjunction of the members of W_i and negated members of W_j found at stage s.

    The dovetail runs over the first s sentences of the base theory's
    language (not over all naturals, whose initial segments contain no
    sentence codes at desk scale); members that are not sentences are
    never found, which is the intended skipping.
    """
    from ..logic.sets import sentence_stage
    from ..logic.syntax import Not, conj

    parts = [f for _, f in sentence_stage(i, s, base)]
    parts += [Not(f) for _, f in sentence_stage(j, s, base)]
    return _code(conj(parts))


BUILTINS: tuple[Builtin, ...] = (
    Builtin("add", 2, lambda x, y: x + y),
    Builtin("monus", 2, lambda x, y: max(x - y, 0)),
    Builtin("mul", 2, lambda x, y: x * y),
    Builtin("eq", 2, lambda x, y: int(x == y)),
    Builtin("lt", 2, lambda x, y: int(x < y)),
    Builtin("mod", 2, lambda x, y: x % y if y else x),
    Builtin("div", 2, lambda x, y: x // y if y else 0),
    Builtin("pair", 2, pair),
    Builtin("left", 1, lambda z: unpair(z)[0]),
    Builtin("right", 1, lambda z: unpair(z)[1]),
    Builtin("smn", 2, _smn),
    Builtin("eval", 3, None),
    Builtin("eval2", 4, None),
    Builtin("c_not", 1, _unary(_not)),
    Builtin("c_and", 2, _binary(_and)),
    Builtin("c_or", 2, _binary(_or)),
    Builtin("c_imp", 2, _binary(_imp)),
    Builtin("c_unneg", 1, c_unneg),
    Builtin("c_atom", 2, size_atom_code),
    Builtin("prove", 3, prove),
    Builtin("nth_sentence", 2, nth_sentence),
    Builtin("stage_context", 4, stage_context),
    Builtin("c_atom_index", 2, atom_index),
)

BUILTIN_IDS = {b.name: k for k, b in enumerate(BUILTINS)}
EVAL_IDS = frozenset({BUILTIN_IDS["eval"], BUILTIN_IDS["eval2"]})
