"""Canonical enumerations of formulas, sentences and translations.

Formulas are listed by :func:`~insep.logic.syntax.size`, and within a size
by a fixed constructor order. Bound variables are named ``y<depth>``, so
every formula in this namespace is produced exactly once. The tag
``ORDER_VERSION`` changes whenever this order does; certificates record it.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import count, product
from typing import Iterator

from .syntax import BOT, TOP, And, Atom, Eq, Exists, Forall, Formula, Implies, Not, Or, SizeAtom
from .translate import Clause, Translation

ORDER_VERSION = "size-lex-1"

Rels = tuple[tuple[str, int], ...]


@lru_cache(maxsize=None)
def formulas_of_size(n: int, scope: tuple[str, ...], rels: Rels, size_atoms: bool = False,
                     implies: bool = True) -> tuple[Formula, ...]:
    """All formulas of exactly ``n`` nodes with free variables inside ``scope``."""
    if n < 1:
        return ()
    out: list[Formula] = []
    if n == 1:
        out += [TOP, BOT]
        for name, arity in rels:
            out += [Atom(name, args) for args in product(scope, repeat=arity)]
        out += [Eq(a, b) for a in scope for b in scope]
    if size_atoms:
        out += [SizeAtom(n - 1, name) for name, arity in rels if arity == 2]
    out += [Not(g) for g in formulas_of_size(n - 1, scope, rels, size_atoms, implies)]
    ops = (And, Or, Implies) if implies else (And, Or)
    for op in ops:
        for k in range(1, n - 1):
            lefts = formulas_of_size(k, scope, rels, size_atoms, implies)
            rights = formulas_of_size(n - 1 - k, scope, rels, size_atoms, implies)
            out += [op(a, b) for a in lefts for b in rights]
    if n >= 2:
        var = f"y{sum(1 for v in scope if v.startswith('y'))}"
        inner = formulas_of_size(n - 1, scope + (var,), rels, size_atoms, implies)
        out += [Exists(var, g) for g in inner]
        out += [Forall(var, g) for g in inner]
    return tuple(out)


class SentenceEnumeration:
    """Indexable stream of the sentences of a relational language."""

    def __init__(self, rels: Rels, size_atoms: bool = True):
        self.rels = tuple(sorted(rels))
        self.size_atoms = size_atoms
        self._cache: list[Formula] = []
        self._next_size = 1

    def __getitem__(self, k: int) -> Formula:
        while len(self._cache) <= k:
            self._cache.extend(formulas_of_size(self._next_size, (), self.rels, self.size_atoms))
            self._next_size += 1
        return self._cache[k]

    def __iter__(self) -> Iterator[Formula]:
        for k in count():
            yield self[k]

    def prefix(self, n: int) -> list[Formula]:
        if n > 0:
            self[n - 1]
        return self._cache[:n]


@lru_cache(maxsize=None)
def sentences(rels: Rels, size_atoms: bool = True) -> SentenceEnumeration:
    return SentenceEnumeration(rels, size_atoms)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _clause_params(arity: int) -> tuple[str, ...]:
    return tuple(f"x{k}" for k in range(arity))


def iter_translations(src: Rels, dst: Rels) -> Iterator[Translation]:
    """Every translation of ``src`` into ``dst``, ordered by total formula size.

    Components are the domain formula, one clause per source relation (in
    name order) and the equality clause.
    """
    src = tuple(sorted(src))
    dst = tuple(sorted(dst))
    arities = [1] + [a for _, a in src] + [2]
    for total in count(len(arities)):
        for sizes in _compositions(total, len(arities)):
            pools = [formulas_of_size(s, _clause_params(a), dst, False, False) for s, a in zip(sizes, arities)]
            for combo in product(*pools):
                dom = Clause(("x0",), combo[0])
                rels = tuple((name, Clause(_clause_params(a), body)) for (name, a), body in zip(src, combo[1:-1]))
                yield Translation(dom, rels, Clause(("x0", "x1"), combo[-1]))


class TranslationEnumeration:
    def __init__(self, src: Rels, dst: Rels):
        self._it = iter_translations(src, dst)
        self._cache: list[Translation] = []

    def __getitem__(self, k: int) -> Translation:
        while len(self._cache) <= k:
            self._cache.append(next(self._it))
        return self._cache[k]


@lru_cache(maxsize=None)
def translations(src: Rels, dst: Rels) -> TranslationEnumeration:
    return TranslationEnumeration(tuple(sorted(src)), tuple(sorted(dst)))
