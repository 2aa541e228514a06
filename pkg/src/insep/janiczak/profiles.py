"""Size profiles and boolean combinations of the size atoms A_s."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from ..logic.syntax import BOT, TOP, Formula, Not, SizeAtom, conj, disj, expand_size_atoms


class ResourceError(RuntimeError):
    pass


def depth_limit() -> int:
    return int(os.environ.get("INSEP_DEPTH_LIMIT", "20"))


@dataclass(frozen=True)
class SizeProfile:
    """Which exact class sizes 1..bound occur (at most one class per size)."""

    bound: int
    present: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(s < 1 or s > self.bound for s in self.present):
            raise ValueError(f"sizes {sorted(self.present)} outside 1..{self.bound}")

    def has(self, size: int) -> bool:
        if size > self.bound:
            raise ValueError(f"size {size} beyond profile bound {self.bound}")
        return size in self.present

    def atom(self, s: int) -> bool:
        """Truth of A_s, i.e. a class of size s+1."""
        return self.has(s + 1)

    def extend(self, bound: int, extra: Iterable[int] = ()) -> "SizeProfile":
        return SizeProfile(bound, self.present | frozenset(extra))

    def to_json(self) -> dict:
        return {"bound": self.bound, "present": sorted(self.present)}

    @classmethod
    def from_atoms(cls, bound: int, values: Mapping[int, bool]) -> "SizeProfile":
        return cls(bound, frozenset(s + 1 for s, v in values.items() if v))


def profiles(n: int) -> list[SizeProfile]:
    """C_{n,0..2^n-1}: bit s of j is the sign of A_s."""
    if n > depth_limit():
        raise ResourceError(f"profiles({n}) exceeds depth limit {depth_limit()}")
    return [SizeProfile(n, frozenset(s + 1 for s in range(n) if j >> s & 1)) for j in range(2 ** n)]


def profile_conjunction(n: int, j: int) -> "BoolComb":
    """C_{n,j} as a boolean combination."""
    return BoolComb(tuple(range(n)), frozenset({tuple(bool(j >> s & 1) for s in range(n))}))


@dataclass(frozen=True)
class BoolComb:
    """A boolean function of finitely many atoms A_s, stored as its true rows.

    ``atoms`` is sorted; each row assigns a truth value to every atom.
    The constructor does not reduce; :meth:`reduced` drops atoms the
    function does not depend on, which gives a canonical form.
    """

    atoms: tuple[int, ...]
    rows: frozenset[tuple[bool, ...]]

    @classmethod
    def atom(cls, s: int) -> "BoolComb":
        return cls((s,), frozenset({(True,)}))

    @classmethod
    def const(cls, value: bool) -> "BoolComb":
        return cls((), frozenset({()}) if value else frozenset())

    def __call__(self, values: Mapping[int, bool]) -> bool:
        return tuple(values[s] for s in self.atoms) in self.rows

    def lift(self, atoms: tuple[int, ...]) -> "BoolComb":
        """Same function over a superset of atoms."""
        pos = [atoms.index(a) for a in self.atoms]
        rows = frozenset(r for r in product((False, True), repeat=len(atoms)) if tuple(r[p] for p in pos) in self.rows)
        return BoolComb(atoms, rows)

    def _binop(self, other: "BoolComb", op) -> "BoolComb":
        atoms = tuple(sorted(set(self.atoms) | set(other.atoms)))
        a, b = self.lift(atoms), other.lift(atoms)
        rows = frozenset(r for r in product((False, True), repeat=len(atoms)) if op(r in a.rows, r in b.rows))
        return BoolComb(atoms, rows).reduced()

    def __and__(self, other):
        return self._binop(other, lambda x, y: x and y)

    def __or__(self, other):
        return self._binop(other, lambda x, y: x or y)

    def __invert__(self):
        rows = frozenset(r for r in product((False, True), repeat=len(self.atoms)) if r not in self.rows)
        return BoolComb(self.atoms, rows)

    def reduced(self) -> "BoolComb":
        out = self
        for k in reversed(range(len(self.atoms))):
            if out._independent_of(k):
                out = BoolComb(out.atoms[:k] + out.atoms[k + 1:], frozenset(r[:k] + r[k + 1:] for r in out.rows))
        return out

    def _independent_of(self, k: int) -> bool:
        for r in self.rows:
            flipped = r[:k] + (not r[k],) + r[k + 1:]
            if flipped not in self.rows:
                return False
        return True

    def is_true(self) -> bool:
        return len(self.rows) == 2 ** len(self.atoms)

    def is_false(self) -> bool:
        return not self.rows

    def clauses(self) -> list[tuple[tuple[int, bool], ...]]:
        """Full DNF clauses, sorted lexicographically."""
        return sorted(tuple(zip(self.atoms, r)) for r in self.rows)

    def max_atom(self) -> int | None:
        return max(self.atoms) if self.atoms else None

    def to_formula(self, rel: str = "E", expand: bool = False) -> Formula:
        if self.is_true():
            return TOP
        if self.is_false():
            return BOT
        terms = []
        for clause in self.clauses():
            lits = [SizeAtom(s, rel) if v else Not(SizeAtom(s, rel)) for s, v in clause]
            terms.append(conj(lits))
        f = disj(terms)
        return expand_size_atoms(f) if expand else f

    def to_json(self) -> dict:
        return {
            "atoms": list(self.atoms),
            "dnf": [[[s, v] for s, v in c] for c in self.clauses()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoolComb":
        atoms = tuple(data["atoms"])
        rows = frozenset(tuple(v for _, v in clause) for clause in data["dnf"])
        return cls(atoms, rows)
