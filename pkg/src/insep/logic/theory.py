"""Signatures, theories and theorem enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Protocol, Sequence

from .enumerate import sentences
from .godel import godel
from .syntax import Formula


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    relations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.relations]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate symbols in {names}")
        if any(a < 0 for _, a in self.relations):
            raise SignatureError("negative arity")
        object.__setattr__(self, "relations", tuple(sorted(self.relations)))

    @property
    def names(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.relations)

    def disjoint(self, other: "Signature") -> bool:
        return not (self.names & other.names)

    def __add__(self, other: "Signature") -> "Signature":
        if not self.disjoint(other):
            raise SignatureError(f"signatures share {sorted(self.names & other.names)}")
        return Signature(self.relations + other.relations)

    def to_json(self) -> dict:
        return {n: a for n, a in self.relations}


class Theory(Protocol):
    """Anything with a relational signature and a (possibly staged) decision method.

    ``proves(s, context, budget)`` must be sound; theories without a decider
    interpret ``budget`` as a proof-search stage and answer False when the
    stage finds nothing.
    """

    relations: tuple[tuple[str, int], ...]

    def proves(self, s: Formula, context: Sequence[Formula] = (), budget: int | None = None) -> bool: ...

    def axioms(self, budget: int) -> list[Formula]: ...


def theorems(t: Theory, budget: int) -> list[int]:
    """Codes of the provable sentences among the first ``budget`` sentences of the language.

    Sentences the theory's decision hook cannot handle are left out, so the
    result is always sound, and it is monotone in ``budget``.
    """
    from .oplus import UndecidableByHook

    out = []
    for s in sentences(tuple(t.relations)).prefix(budget):
        try:
            if t.proves(s, (), budget):
                out.append(godel(s))
        except UndecidableByHook:
            continue
    return out


class TheoremStream:
    """phi_0, phi_1, ...: the theorems of ``t`` in enumeration order, computed lazily."""

    def __init__(self, t: Theory, scan_limit: int = 200_000):
        self.t = t
        self.scan_limit = scan_limit
        self._found: list[Formula] = []
        self._pos = 0
        self._lang = sentences(tuple(t.relations))

    def __getitem__(self, m: int) -> Formula:
        from .oplus import UndecidableByHook

        while len(self._found) <= m:
            if self._pos >= self.scan_limit:
                raise LookupError(f"theorem {m} not found among the first {self.scan_limit} sentences")
            s = self._lang[self._pos]
            self._pos += 1
            try:
                if self.t.proves(s):
                    self._found.append(s)
            except UndecidableByHook:
                pass
        return self._found[m]

    def __iter__(self) -> Iterator[Formula]:
        m = 0
        while True:
            yield self[m]
            m += 1

    @property
    def scanned(self) -> int:
        return self._pos
