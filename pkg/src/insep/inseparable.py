"""Effectively inseparable pairs, their witnesses, pushforwards and semi-reductions.

The concrete pair is K_0 = {x : phi_x(x) = 0}, K_1 = {x : phi_x(x) = 1}.
Its witness on (i, j) is a fixed point n of y -> "search W_i and W_j for y,
answer 1 if it shows up in W_i first, 0 if in W_j first" (stage s runs
both for s steps, s doubling). If K_0, K_1 sit
inside disjoint W_i, W_j then n can be in neither: n in W_i would force
phi_n(n) = 1, i.e. n in K_1, so n in W_j too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from .recfun.asm import Asm
from .recfun.core import ReSet, fixed_point, self_applies_to, unbounded_call
from .recfun.machine import OUT_OF_FUEL, Halted, OutOfFuel, run, run_index, smn


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class DisjointPair:
    left: ReSet
    right: ReSet
    witness: int | None = None
    name: str = ""

    def stages(self, budget: int) -> tuple[frozenset[int], frozenset[int]]:
        return self.left.enumerate(budget), self.right.enumerate(budget)

    def to_json(self) -> dict:
        return {"name": self.name, "left": self.left.to_json(), "right": self.right.to_json(),
                "witness": self.witness}


# -- programs ------------------------------------------------------------------


@lru_cache(maxsize=None)
def search_program() -> int:
    """(i, j, z, x) -> 1 if z turns up in W_i no later than in W_j, 0 if in W_j first."""
    a = Asm(4)
    a.set(4, 1)
    a.label("stage").call(5, "eval", 0, 2, 4).dec(5, "right").set(6, 1).halt(6)
    a.label("right").call(5, "eval", 1, 2, 4).dec(5, "next").set(6, 0).halt(6)
    a.label("next").call(4, "add", 4, 4).jmp("stage")
    return a.index()


@lru_cache(maxsize=None)
def search_transform() -> int:
    """(i, j, y) -> index of x -> search(i, j, y, x)."""
    a = Asm(3)
    a.set(3, search_program()).call(3, "smn", 3, 0).call(3, "smn", 3, 1).call(3, "smn", 3, 2).halt(3)
    return a.index()


@lru_cache(maxsize=None)
def k_witness_program() -> int:
    """(i, j) -> the fixed point of search_transform(i, j, .), computed on the machine."""
    from .recfun.core import fixed_point_helper

    a = Asm(2)
    a.set(2, search_transform()).call(2, "smn", 2, 0).call(2, "smn", 2, 1)
    a.set(3, fixed_point_helper(1)).call(3, "smn", 3, 2).call(3, "smn", 3, 3).halt(3)
    return a.index()


def k_witness(i: int, j: int) -> int:
    """Python mirror of :func:`k_witness_program`."""
    return fixed_point(smn(smn(search_transform(), [i]), [j]))


def k_pair() -> DisjointPair:
    return DisjointPair(ReSet(self_applies_to(0), name="K0"), ReSet(self_applies_to(1), name="K1"),
                        k_witness_program(), "K")


# -- witnesses -------------------------------------------------------------------


def ei_witness(pair: DisjointPair, i: int, j: int, fuel: int) -> int | OutOfFuel:
    if pair.witness is None:
        raise InputError(f"pair {pair.name} carries no witness")
    out = run(pair.witness, [i, j], fuel)
    return out.value if isinstance(out, Halted) else OUT_OF_FUEL


@dataclass
class WitnessCheck:
    """Outcome of testing a witness value against candidate supersets."""

    value: int
    verification: str
    outside: bool
    violation: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.outside or self.violation is not None

    def to_json(self) -> dict:
        out = {"witness_value": str(self.value), "verification": self.verification, "outside": self.outside}
        if self.violation:
            out["precondition_violation"] = self.violation
        return out


def check_witness(pair: DisjointPair, wi: ReSet, wj: ReSet, n: int, budget: int = 10**4) -> WitnessCheck:
    """Is n outside W_i and W_j?

    Exact when both sets are decidable; otherwise checked to ``budget``. When
    n does land in one of them, look for evidence that the supersets were not
    valid (a member of the pair's other side missing from the other set):
    that is the only way the witness may fail.
    """
    if wi.decidable and wj.decidable:
        in_i, in_j = wi.contains(n), wj.contains(n)
        verification = "exact"
    else:
        in_i, in_j = wi.semi_contains(n, budget), wj.semi_contains(n, budget)
        verification = f"to_budget({budget})"
    if not (in_i or in_j):
        return WitnessCheck(n, verification, True)
    violation = None
    if in_i and in_j:
        violation = "supersets intersect"
    elif in_i and pair.right.semi_contains(n, budget) and not _member(wj, n, budget):
        violation = f"{pair.right.name or 'right'} not inside W_j"
    elif in_j and pair.left.semi_contains(n, budget) and not _member(wi, n, budget):
        violation = f"{pair.left.name or 'left'} not inside W_i"
    return WitnessCheck(n, verification, False, violation)


def _member(w: ReSet, n: int, budget: int) -> bool:
    return w.contains(n) if w.decidable else w.semi_contains(n, budget)


# -- pushforward ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def image_program() -> int:
    """(F, L, y): halts iff y = F(x) for some x in W_L (F strictly increasing)."""
    a = Asm(3)
    a.set(3, 0)
    a.label("scan")
    unbounded_call(a, 4, 0, (3,), 5, "f")
    a.call(6, "eq", 4, 2).dec(6, "ne").copy(0, 3).exec(1, 1)
    a.label("ne").call(6, "lt", 2, 4).dec(6, "next").loop()
    a.label("next").inc(3).jmp("scan")
    return a.index()


@lru_cache(maxsize=None)
def preimage_program() -> int:
    """(G, L, y): runs W_L on G(y); with G inverting F on its range (and diverging off it) this is F[W_L]."""
    a = Asm(3)
    unbounded_call(a, 3, 0, (2,), 4, "g")
    a.copy(0, 3).exec(1, 1)
    return a.index()


@lru_cache(maxsize=None)
def pullback_program() -> int:
    """(F, i, x): phi_i(F(x)); its domain is F^{-1}[W_i]."""
    a = Asm(3)
    unbounded_call(a, 3, 0, (2,), 4, "f")
    a.copy(0, 3).exec(1, 1)
    return a.index()


@lru_cache(maxsize=None)
def transported_witness_program() -> int:
    """(F, w, i, j) -> F(w(pull_F(i), pull_F(j)))."""
    a = Asm(4)
    a.set(4, pullback_program()).call(5, "smn", 4, 0).call(6, "smn", 5, 2).call(7, "smn", 5, 3)
    unbounded_call(a, 8, 1, (6, 7), 9, "w")
    unbounded_call(a, 10, 0, (8,), 9, "f")
    a.halt(10)
    return a.index()


def pullback(F: int, i: int) -> int:
    return smn(pullback_program(), [F, i])


def check_increasing(F: int, prefix: int = 32, fuel: int = 10**5) -> list[int]:
    values = []
    for x in range(prefix):
        out = run_index(F, [x], fuel)
        if not isinstance(out, Halted):
            raise InputError(f"F did not halt on {x} within {fuel} steps")
        if values and out.value <= values[-1]:
            raise InputError(f"F is not strictly increasing: F({x - 1})={values[-1]}, F({x})={out.value}")
        values.append(out.value)
    return values


def check_inverse(F: int, G: int, values: list[int], fuel: int = 10**5) -> None:
    for x, y in enumerate(values):
        out = run_index(G, [y], fuel)
        if not (isinstance(out, Halted) and out.value == x):
            raise InputError(f"G does not invert F at F({x}) = {y}")


def pushforward(pair: DisjointPair, F: int, prefix: int = 32, inverse: int | None = None) -> DisjointPair:
    """(F[left], F[right]) with the transported witness.

    Without ``inverse`` the image sets search x = 0, 1, ... for F(x) = y,
    which is hopeless for the huge members of K-style sets; an inverse G
    gives indices of the same sets that answer at the speed of the pair.
    """
    values = check_increasing(F, prefix)
    if inverse is None:
        prog, key = image_program(), F
    else:
        check_inverse(F, inverse, values)
        prog, key = preimage_program(), inverse
    left = ReSet(smn(prog, [key, pair.left.index]), name=f"F[{pair.left.name}]")
    right = ReSet(smn(prog, [key, pair.right.index]), name=f"F[{pair.right.name}]")
    witness = None if pair.witness is None else smn(transported_witness_program(), [F, pair.witness])
    return DisjointPair(left, right, witness, f"F[{pair.name}]")


# -- semi-reductions ---------------------------------------------------------------------


@dataclass(frozen=True)
class SemiReduction:
    """fn sends source.left into the theorems and source.right into the refutables of ``theory``."""

    fn: int
    source: DisjointPair
    theory: object
    name: str = ""

    def image(self, n: int, fuel: int = 10**5) -> int:
        out = run_index(self.fn, [n], fuel)
        if not isinstance(out, Halted):
            raise RuntimeError(f"semi-reduction did not halt on {n} within {fuel} steps")
        return out.value

    def check(self, n: int, side: str, fuel: int = 10**5) -> bool:
        """Decide whether fn(n) lands where it should for n on ``side`` ('left'/'right')."""
        from .logic.godel import ungodel
        from .logic.syntax import Not

        s = ungodel(self.image(n, fuel))
        if s is None:
            return False
        return self.theory.proves(s if side == "left" else Not(s))


@lru_cache(maxsize=None)
def oplus_combinator(marker_code: int) -> int:
    """(f1, f2, n) -> code of (P -> f1(n)) & (not P -> f2(n))."""
    a = Asm(3)
    unbounded_call(a, 3, 0, (2,), 4, "a")
    unbounded_call(a, 5, 1, (2,), 4, "b")
    a.set(6, marker_code).call(7, "c_not", 6).call(8, "c_imp", 6, 3).call(9, "c_imp", 7, 5).call(0, "c_and", 8, 9)
    a.halt(0)
    return a.index()


def oplus_semi_reduction(f1: SemiReduction, f2: SemiReduction, theory=None) -> SemiReduction:
    from .logic.godel import godel
    from .logic.oplus import MARKER, oplus
    from .logic.syntax import Atom

    if f1.source != f2.source:
        raise InputError("semi-reductions start from different pairs")
    t = theory if theory is not None else oplus(f1.theory, f2.theory)
    g = smn(oplus_combinator(godel(Atom(MARKER, ()))), [f1.fn, f2.fn])
    return SemiReduction(g, f1.source, t, f"({f1.name} (+) {f2.name})")


def semi_reduction(fn: int, source: DisjointPair, theory, name: str = "") -> SemiReduction:
    return SemiReduction(fn, source, theory, name)

