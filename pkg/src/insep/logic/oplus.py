"""The sum A (+) B and its decision procedure.

A (+) B speaks the disjoint union of the two languages plus a fresh 0-ary
P, and is axiomatised by P -> phi for theorems phi of A and not P -> psi for
theorems psi of B. Its models are the models of A (with P true and the B
symbols arbitrary) together with the models of B (P false, A symbols
arbitrary).

The decider splits on P. In the P-branch every closed subformula must be a
sentence of A's language (decided through A's normal forms) or a boolean
combination of size atoms of B's relation (unconstrained there); symmetric
for the other branch. Anything else, e.g. a quantifier over a mix of both
languages, raises :class:`UndecidableByHook`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..janiczak.decide import Verdict, decide_comb, normal_form
from ..janiczak.profiles import BoolComb, SizeProfile
from ..logic.syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Eq,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    SizeAtom,
    Top,
    free_vars,
    relations,
    rename_relation,
)
from .syntax import BINARY, QUANT
from .theory import Signature, SignatureError, TheoremStream

MARKER = "P"


class UndecidableByHook(ValueError):
    """The sentence is outside the fragment the component deciders cover."""


def set_marker(f: Formula, value: bool, marker: str = MARKER) -> Formula:
    if isinstance(f, Atom):
        if f.rel == marker and not f.args:
            return TOP if value else BOT
        return f
    if isinstance(f, Not):
        return Not(set_marker(f.body, value, marker))
    if isinstance(f, BINARY):
        return type(f)(set_marker(f.left, value, marker), set_marker(f.right, value, marker))
    if isinstance(f, QUANT):
        return type(f)(f.var, set_marker(f.body, value, marker))
    return f


@dataclass(frozen=True)
class OplusDecision:
    verdict: Verdict
    branch: bool | None = None
    countermodel: dict | None = None

    @property
    def provable(self) -> bool:
        return self.verdict is Verdict.PROVABLE

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.branch is not None:
            out["branch"] = "P" if self.branch else "not P"
            out["countermodel"] = self.countermodel
        return out


class _Branch:
    """Boolean skeleton of P-free sentences for one side of the split."""

    def __init__(self, own, other, rels: tuple[str, str]):
        self.own = own
        self.other = other
        self.rels = rels

    def code(self, rel: str, n: int) -> int:
        return 2 * n + self.rels.index(rel)

    def remap(self, comb: BoolComb, rel: str) -> BoolComb:
        if not comb.atoms:
            return comb
        return BoolComb(tuple(self.code(rel, a) for a in comb.atoms), comb.rows)

    def leaf(self, f: Formula) -> BoolComb:
        names = {r for r, _ in relations(f)}
        if names <= {self.own.rel}:
            g = rename_relation(f, self.own.rel, "E") if self.own.rel != "E" else f
            return self.remap(normal_form(g), self.own.rel)
        raise UndecidableByHook(f"quantified sentence over {sorted(names)} in the branch of {self.own.rel}")

    def skel(self, f: Formula) -> BoolComb:
        if isinstance(f, Top):
            return BoolComb.const(True)
        if isinstance(f, Bot):
            return BoolComb.const(False)
        if isinstance(f, SizeAtom):
            if f.rel not in self.rels:
                raise UndecidableByHook(f"unknown relation {f.rel}")
            return BoolComb.atom(self.code(f.rel, f.n))
        if isinstance(f, Not):
            return ~self.skel(f.body)
        if isinstance(f, (And, Or, Implies, Iff)):
            return self._binary(f)
        if isinstance(f, (Atom, Eq)):
            raise UndecidableByHook(f"open atom {f}")
        if isinstance(f, QUANT) and f.var not in free_vars(f.body):
            return self.skel(f.body)  # vacuous over a nonempty domain
        return self.leaf(f)

    def _binary(self, f) -> BoolComb:
        # short-circuit so that a decisive side hides an undecidable one
        absorbing = {And: False, Or: True}.get(type(f))
        try:
            left = self.skel(f.left)
        except UndecidableByHook:
            right = self.skel(f.right)
            if isinstance(f, Implies) and right.is_true():
                return right
            if absorbing is not None and (right.is_true() if absorbing else right.is_false()):
                return right
            raise
        if isinstance(f, Implies) and left.is_false():
            return BoolComb.const(True)
        if absorbing is not None and (left.is_true() if absorbing else left.is_false()):
            return left
        right = self.skel(f.right)
        if isinstance(f, And):
            return left & right
        if isinstance(f, Or):
            return left | right
        if isinstance(f, Implies):
            return ~left | right
        return (left & right) | (~left & ~right)

    def decide(self, context: Sequence[Formula], s: Formula, budget: int | None):
        ctx = [self.skel(c) for c in context] + [self.remap(c, self.own.rel) for c in self.own.extra]
        target = self.skel(s)
        atoms = set(target.atoms)
        for c in ctx:
            atoms |= set(c.atoms)
        k = self.rels.index(self.own.rel)
        own_atoms = [a // 2 for a in atoms if a % 2 == k]
        fixed = {self.code(self.own.rel, a): v for a, v in self.own.fixed(own_atoms, budget).items()}
        return decide_comb(ctx, target, fixed)

    def countermodel(self, decision) -> dict:
        if decision.countermodel is None:
            return {}
        out = {}
        for k, rel in enumerate(self.rels):
            sizes = [s for s in decision.countermodel.present if (s - 1) % 2 == k]
            bound = decision.countermodel.bound
            present = frozenset((s - 1) // 2 + 1 for s in sizes)
            out[rel] = SizeProfile(max(bound // 2 + 1, max(present, default=0)), present).to_json()
        return out


class OplusTheory:
    """U (+) V for two J-style components (each with ``rel``, ``fixed``, ``extra``)."""

    def __init__(self, left, right, marker: str = MARKER, name: str | None = None):
        lsig, rsig = Signature(tuple(left.relations)), Signature(tuple(right.relations))
        if not lsig.disjoint(rsig):
            raise SignatureError(f"component signatures share {sorted(lsig.names & rsig.names)}")
        if marker in lsig.names | rsig.names:
            raise SignatureError(f"marker {marker} already used by a component")
        self.left = left
        self.right = right
        self.marker = marker
        self.signature = lsig + rsig + Signature(((marker, 0),))
        self.name = name or f"({getattr(left, 'name', 'U')} (+) {getattr(right, 'name', 'V')})"

    @property
    def relations(self) -> tuple[tuple[str, int], ...]:
        return self.signature.relations

    @property
    def decidable(self) -> bool:
        return all(getattr(c, "decidable", False) for c in (self.left, self.right))

    def _branches(self):
        for comp in (self.left, self.right):
            if not all(hasattr(comp, a) for a in ("rel", "fixed", "extra")):
                raise UndecidableByHook(f"component {comp!r} has no J-style decider")
        rels = (self.left.rel, self.right.rel)
        return {True: _Branch(self.left, self.right, rels), False: _Branch(self.right, self.left, rels)}

    def decide(self, s: Formula, context: Sequence[Formula] = (), budget: int | None = None) -> OplusDecision:
        results = {}
        for value, branch in self._branches().items():
            ctx = [set_marker(c, value, self.marker) for c in context]
            results[value] = (branch, branch.decide(ctx, set_marker(s, value, self.marker), budget))
        for value, (branch, d) in results.items():
            if d.verdict is Verdict.NOT_PROVABLE:
                return OplusDecision(Verdict.NOT_PROVABLE, value, branch.countermodel(d))
        if all(d.verdict is Verdict.INCONSISTENT for _, d in results.values()):
            return OplusDecision(Verdict.INCONSISTENT)
        return OplusDecision(Verdict.PROVABLE)

    def proves(self, s: Formula, context: Sequence[Formula] = (), budget: int | None = None) -> bool:
        return self.decide(s, context, budget).verdict is not Verdict.NOT_PROVABLE

    def refutes(self, s: Formula, context: Sequence[Formula] = (), budget: int | None = None) -> bool:
        return self.proves(Not(s), context, budget)

    def axioms(self, budget: int) -> list[Formula]:
        """Interleaves P -> phi and not P -> psi over the components' theorem streams."""
        p = Atom(self.marker, ())
        us, vs = TheoremStream(self.left), TheoremStream(self.right)
        out = []
        for m in range(budget):
            out += [Implies(p, us[m]), Implies(Not(p), vs[m])]
        return out

    def to_json(self) -> dict:
        def enc(c):
            return c.to_json() if hasattr(c, "to_json") else repr(c)

        return {"kind": "oplus", "marker": self.marker, "left": enc(self.left), "right": enc(self.right),
                "signature": self.signature.to_json()}


def oplus(u, v, marker: str = MARKER) -> OplusTheory:
    return OplusTheory(u, v, marker)
