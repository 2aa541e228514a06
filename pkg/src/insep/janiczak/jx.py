"""J,X-theories: J plus boolean combinations of A_s with s in a set X."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

from ..logic.syntax import Formula, Not, SizeAtom, rename_relation
from .decide import Decision, Verdict, axiom_J1, axiom_J2, axiom_J3, decide_comb, normal_form
from .evaluate import sentence_relation
from .profiles import BoolComb


class NotDecidable(RuntimeError):
    """Membership in an atom set is only semi-decidable."""


class AtomSet(Protocol):
    def contains(self, n: int) -> bool: ...

    def stage(self, budget: int) -> set[int]: ...

    decidable: bool


@dataclass(frozen=True)
class Finite:
    members: frozenset[int] = frozenset()
    decidable = True

    def contains(self, n: int) -> bool:
        return n in self.members

    def stage(self, budget: int) -> set[int]:
        return {n for n in self.members if n <= budget}

    def to_json(self) -> dict:
        return {"finite": sorted(self.members)}


@dataclass(frozen=True)
class Progression:
    """{n : n = residue (mod mod)}"""

    mod: int
    residue: int
    decidable = True

    def __post_init__(self):
        if self.mod < 1 or not 0 <= self.residue < self.mod:
            raise ValueError(f"bad progression {self.residue} mod {self.mod}")

    def contains(self, n: int) -> bool:
        return n % self.mod == self.residue

    def stage(self, budget: int) -> set[int]:
        return set(range(self.residue, budget + 1, self.mod))

    def to_json(self) -> dict:
        return {"mod": self.mod, "residue": self.residue}


_ACTIVE: set[tuple[int, int]] = set()
MAX_NESTING = 3


@dataclass(frozen=True)
class Enumerated:
    """An RE set of atom indices, e.g. a component of an inseparable pair.

    ``fuel`` is the default step budget for membership runs when a caller
    (such as the ``prove`` builtin) supplies none.
    """

    reset: object
    fuel: int | None = None
    decidable = False

    def contains(self, n: int) -> bool:
        raise NotDecidable("membership in an enumerated atom set is semi-decidable only")

    def semi_contains(self, n: int, fuel: int) -> bool:
        # A membership run can reach this set again through the prove builtin
        # (witnesses are fixed points that ask about themselves). Such nested
        # runs get no fresh budget: a repeated query or deep nesting counts as
        # not found yet, which keeps the answer a sound staged approximation.
        key = (self.reset.index, n)
        if key in _ACTIVE or len(_ACTIVE) >= MAX_NESTING:
            return False
        _ACTIVE.add(key)
        try:
            return self.reset.semi_contains(n, fuel)
        finally:
            _ACTIVE.discard(key)

    def stage(self, budget: int) -> set[int]:
        return set(self.reset.enumerate(budget))

    def to_json(self) -> dict:
        return {"enumerated": self.reset.to_json(), "fuel": self.fuel}


EMPTY = Finite()


@dataclass(frozen=True)
class JTheory:
    """J over relation ``rel`` plus {A_n : n in pos}, {not A_n : n in neg} and ``extra``."""

    rel: str = "E"
    pos: object = EMPTY
    neg: object = EMPTY
    extra: tuple[BoolComb, ...] = ()
    name: str = "J"

    @property
    def relations(self) -> tuple[tuple[str, int], ...]:
        return ((self.rel, 2),)

    @property
    def decidable(self) -> bool:
        return self.pos.decidable and self.neg.decidable

    def fixed(self, atoms, budget: int | None = None) -> dict[int, bool]:
        """Unit values forced on ``atoms``.

        Semi-decidable atom sets need ``budget``: an atom counts as asserted
        (denied) once its membership run halts within that many steps.
        """
        out: dict[int, bool] = {}
        for a in atoms:
            if self._member(self.pos, a, budget):
                out[a] = True
            if self._member(self.neg, a, budget):
                if out.get(a):
                    raise ValueError(f"atom {a} is both asserted and denied")
                out[a] = False
        return out

    def _member(self, s, a: int, budget: int | None) -> bool:
        if s.decidable:
            return s.contains(a)
        if budget is None:
            budget = getattr(s, "fuel", None)
        if budget is None:
            raise NotDecidable(f"{self.name} has semi-decidable atom sets; pass a budget")
        return s.semi_contains(a, budget)

    def nf(self, s: Formula) -> BoolComb:
        rel = sentence_relation(s, self.rel)
        if rel != self.rel:
            raise ValueError(f"{self.name} speaks about {self.rel}, sentence uses {rel}")
        return normal_form(rename_relation(s, rel, "E") if rel != "E" else s)

    def decide(self, s: Formula, context: Sequence[Formula | BoolComb] = (), budget: int | None = None) -> Decision:
        target = self.nf(s)
        ctx = [c if isinstance(c, BoolComb) else self.nf(c) for c in context] + list(self.extra)
        atoms = set(target.atoms)
        for c in ctx:
            atoms |= set(c.atoms)
        return decide_comb(ctx, target, self.fixed(atoms, budget))

    def proves(self, s: Formula, context=(), budget: int | None = None) -> bool:
        return self.decide(s, context, budget).verdict in (Verdict.PROVABLE, Verdict.INCONSISTENT)

    def axioms(self, budget: int) -> list[Formula]:
        """Stage ``budget`` of the axiom enumeration."""
        out = [axiom_J1(self.rel)]
        for n in range(1, budget + 1):
            out += [axiom_J2(n, self.rel), axiom_J3(n, self.rel)]
        out += [SizeAtom(n, self.rel) for n in sorted(self.pos.stage(budget))]
        out += [Not(SizeAtom(n, self.rel)) for n in sorted(self.neg.stage(budget))]
        out += [c.to_formula(self.rel) for c in self.extra]
        return out

    def to_json(self) -> dict:
        def enc(a):
            return a.to_json() if hasattr(a, "to_json") else repr(a)

        return {"kind": "jx", "name": self.name, "relation": self.rel, "pos": enc(self.pos), "neg": enc(self.neg),
                "extra": [c.to_json() for c in self.extra]}


def jx_theory(x: AtomSet, extra: Sequence[BoolComb] = (), rel: str = "E", name: str = "J+X") -> JTheory:
    """J axiomatised further by boolean combinations over atoms in ``x``."""
    for c in extra:
        bad = [a for a in c.atoms if not x.contains(a)]
        if bad:
            raise ValueError(f"atoms {bad} lie outside X")
    return JTheory(rel, extra=tuple(extra), name=name)


def atom_set_from_json(data) -> Finite | Progression:
    if data is None or data == "empty":
        return EMPTY
    if "finite" in data:
        return Finite(frozenset(int(n) for n in data["finite"]))
    if "mod" in data:
        return Progression(int(data["mod"]), int(data["residue"]))
    raise ValueError(f"atom set must be finite or a progression, got {data!r}")


def jtheory_from_json(data: dict) -> JTheory:
    """Inverse of :meth:`JTheory.to_json` for decidable atom sets."""
    if data.get("kind", "jx") != "jx":
        raise ValueError(f"expected a J,X-theory, got kind {data.get('kind')!r}")
    return JTheory(data.get("relation", "E"), atom_set_from_json(data.get("pos")), atom_set_from_json(data.get("neg")),
                   tuple(BoolComb.from_json(c) for c in data.get("extra", ())), data.get("name", "U"))


def janiczak(rel: str = "E") -> JTheory:
    return JTheory(rel, name="J" if rel == "E" else f"J[{rel}]")
