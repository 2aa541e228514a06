"""Normal forms and provability over J + finitely many boolean combinations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from ..logic.syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    conj,
    disj,
    rename_relation,
    size_atom_definition,
)
from .evaluate import evaluate, relevant_atoms, required_bound, sentence_relation
from .profiles import BoolComb, ResourceError, SizeProfile

MAX_FREE_ATOMS = 22


def axiom_A(n: int, rel: str = "E") -> Formula:
    """A_n: some class has exactly n+1 elements."""
    return size_atom_definition(n, rel)


def axiom_J1(rel: str = "E") -> Formula:
    e = lambda a, b: Atom(rel, (a, b))  # noqa: E731
    refl = Forall("x", e("x", "x"))
    sym = Forall("x", Forall("y", Implies(e("x", "y"), e("y", "x"))))
    trans = Forall("x", Forall("y", Forall("z", Implies(And(e("x", "y"), e("y", "z")), e("x", "z")))))
    return And(And(refl, sym), trans)


def _class_has_at_least(x: str, n: int, rel: str, tag: str) -> Formula:
    """x's class has >= n elements (n >= 1)."""
    ys = [f"{tag}{k}" for k in range(n)]
    parts = [Not(Eq(ys[a], ys[b])) for a in range(n) for b in range(a + 1, n)]
    parts += [Atom(rel, (x, y)) for y in ys]
    body = conj(parts)
    for y in reversed(ys):
        body = Exists(y, body)
    return body


def _class_size_is(x: str, n: int, rel: str, tag: str) -> Formula:
    return And(_class_has_at_least(x, n, rel, tag), Not(_class_has_at_least(x, n + 1, rel, tag)))


def axiom_J2(n: int, rel: str = "E") -> Formula:
    """At most one class of size exactly n (n >= 1)."""
    return Forall("u", Forall("w", Implies(
        And(_class_size_is("u", n, rel, "p"), _class_size_is("w", n, rel, "q")), Atom(rel, ("u", "w")))))


def axiom_J3(n: int, rel: str = "E") -> Formula:
    """At least n classes with at least n elements each (n >= 1)."""
    us = [f"u{k}" for k in range(n)]
    parts = [Not(Atom(rel, (us[a], us[b]))) for a in range(n) for b in range(a + 1, n)]
    parts += [_class_has_at_least(u, n, rel, f"w{k}_") for k, u in enumerate(us)]
    body = conj(parts)
    for u in reversed(us):
        body = Exists(u, body)
    return body


@lru_cache(maxsize=4096)
def normal_form(s: Formula) -> BoolComb:
    """The boolean combination of size atoms J-equivalent to ``s``."""
    atoms = relevant_atoms(s)
    if len(atoms) > MAX_FREE_ATOMS:
        raise ResourceError(f"normal form over {len(atoms)} atoms")
    if sentence_relation(s) != "E":
        s = rename_relation(s, sentence_relation(s), "E")
    bound = max(required_bound(s), max(atoms, default=-1) + 1)
    rows = set()
    for values in product((False, True), repeat=len(atoms)):
        p = SizeProfile(bound, frozenset(a + 1 for a, v in zip(atoms, values) if v))
        if evaluate(s, p):
            rows.add(values)
    return BoolComb(atoms, frozenset(rows)).reduced()


class Verdict(enum.Enum):
    PROVABLE = "Provable"
    NOT_PROVABLE = "NotProvable"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    countermodel: SizeProfile | None = None

    @property
    def provable(self) -> bool:
        return self.verdict is Verdict.PROVABLE

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.countermodel is not None:
            out["countermodel"] = self.countermodel.to_json()
        return out


def decide_comb(context: Sequence[BoolComb], target: BoolComb, fixed: dict[int, bool] | None = None) -> Decision:
    """Does J + context prove target? ``fixed`` pins atoms (unit axioms)."""
    fixed = dict(fixed or {})
    atoms = set(target.atoms)
    for c in context:
        atoms |= set(c.atoms)
    free = sorted(atoms - set(fixed))
    if len(free) > MAX_FREE_ATOMS:
        raise ResourceError(f"decision over {len(free)} unconstrained atoms")
    bound = max(atoms, default=-1) + 1
    consistent = False
    for values in product((False, True), repeat=len(free)):
        assignment = {**{a: fixed[a] for a in atoms & set(fixed)}, **dict(zip(free, values))}
        if not all(c(assignment) for c in context):
            continue
        consistent = True
        if not target(assignment):
            return Decision(Verdict.NOT_PROVABLE, SizeProfile.from_atoms(bound, assignment))
    if not consistent:
        return Decision(Verdict.INCONSISTENT)
    return Decision(Verdict.PROVABLE)


def decide(context: Sequence[BoolComb | Formula], s: Formula) -> Decision:
    ctx = [c if isinstance(c, BoolComb) else normal_form(c) for c in context]
    return decide_comb(ctx, normal_form(s))


def iff_sentence(s: Formula, comb: BoolComb, expand: bool = True) -> Formula:
    rel = sentence_relation(s)
    other = comb.to_formula(rel, expand=expand)
    return And(Implies(s, other), Implies(other, s))


def comb_sentence(combs: Sequence[BoolComb], rel: str = "E") -> Formula:
    return conj(c.to_formula(rel) for c in combs)
