"""Witnesses for the theory-level inseparability notion, and its equivalence with effective extensibility.

A tEI witness f takes indices i, j of a filter X and an ideal Y with
T_P <= X, T_R <= Y, X & Y empty, and returns a sentence outside X | Y.
For T = U (+) V the witness runs a staged race between the witnesses of U
and V on the sets Z0 = {phi : P -> phi in X}, Z1 = {phi : ~P -> phi in X},
Z2 = {phi : P & phi in Y}, Z3 = {phi : ~P & phi in Y}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from ..logic.godel import godel, ungodel
from ..logic.oplus import MARKER
from ..logic.parser import to_text
from ..logic.sets import prover_index, refutation_program, refuter_index, theorem_program, theory_index
from ..logic.syntax import BOT, TOP, And, Atom, Formula, Implies, Not, Or
from ..recfun.asm import Asm
from ..recfun.builtins import nth_sentence
from ..recfun.core import ReSet, halts_within
from ..recfun.machine import Halted, halting_time, run_index, smn

P_CODE = godel(Atom(MARKER, ()))
NOT_P_CODE = godel(Not(Atom(MARKER, ())))
RACE_LANGUAGE = 2  # E, E', P


class RaceExhausted(RuntimeError):
    def __init__(self, stage: int):
        super().__init__(f"staged race still undecided after stage {stage}")
        self.stage = stage


# -- the four Z sets --------------------------------------------------------


@lru_cache(maxsize=None)
def z_program(which: int) -> int:
    """(i, c): runs W_i on the code of P -> c, ~P -> c, P & c or ~P & c (which = 0..3)."""
    a = Asm(2)
    a.set(2, NOT_P_CODE if which % 2 else P_CODE)
    a.call(3, "c_and" if which >= 2 else "c_imp", 2, 1)
    a.copy(4, 0).copy(0, 3).exec(4, 1)
    return a.index()


def z_index(which: int, i: int) -> int:
    return smn(z_program(which), [i])


def z_indices(i: int, j: int) -> tuple[int, int, int, int]:
    return z_index(0, i), z_index(1, i), z_index(2, j), z_index(3, j)


# -- the race on the machine ------------------------------------------------------


@lru_cache(maxsize=None)
def race_program() -> int:
    """(w1, w2, i, j) -> the staged race; stage n doubles, checks in the order (a), (b), (c)."""
    a = Asm(4)
    # r4..r7 = k0..k3
    for r, which, src in ((4, 0, 2), (5, 1, 2), (6, 2, 3), (7, 3, 3)):
        a.set(r, z_program(which)).call(r, "smn", r, src)
    a.set(8, 1)  # stage n
    a.set(15, RACE_LANGUAGE)
    a.label("stage")
    # (a) both witnesses converge within n steps
    a.call(9, "eval2", 0, 4, 6, 8).dec(9, "b")
    a.call(10, "eval2", 1, 5, 7, 8).dec(10, "b")
    a.set(11, P_CODE).call(12, "c_and", 11, 9)
    a.call(11, "c_not", 11).call(13, "c_and", 11, 10)
    a.call(0, "c_or", 12, 13).halt(0)
    # (b) some sentence m < n with phi_m in Z0 and Z2
    a.label("b").set(14, 0)
    a.label("b_scan").call(9, "lt", 14, 8).dec(9, "c")
    a.call(11, "nth_sentence", 15, 14)
    a.call(9, "eval", 4, 11, 8).dec(9, "b_next")
    a.call(9, "eval", 6, 11, 8).dec(9, "b_next")
    a.copy(2, 1).copy(0, 5).copy(1, 7).exec(2, 2)
    a.label("b_next").inc(14).jmp("b_scan")
    # (c) the same for Z1 and Z3
    a.label("c").set(14, 0)
    a.label("c_scan").call(9, "lt", 14, 8).dec(9, "next")
    a.call(11, "nth_sentence", 15, 14)
    a.call(9, "eval", 5, 11, 8).dec(9, "c_next")
    a.call(9, "eval", 7, 11, 8).dec(9, "c_next")
    a.copy(3, 0).copy(0, 4).copy(1, 6).exec(3, 2)
    a.label("c_next").inc(14).jmp("c_scan")
    a.label("next").call(8, "add", 8, 8).jmp("stage")
    return a.index()


def tei_oplus_index(w1: int, w2: int) -> int:
    """Index of the tEI witness g of U (+) V built from witnesses w1 of U and w2 of V."""
    return smn(race_program(), [w1, w2])


# -- Python reference with the same stage semantics ---------------------------------


@dataclass
class RaceOutcome:
    case: str
    stage: int
    value: int | None
    k: tuple[int, int, int, int]
    meet: int | None = None  # code found in the intersection, cases b/c

    @property
    def sentence(self) -> Formula | None:
        return None if self.value is None else ungodel(self.value)

    def to_json(self) -> dict:
        s = self.sentence
        return {"case": self.case, "stage": self.stage, "sentence": None if s is None else to_text(s),
                "intersection_witness": None if self.meet is None else to_text(ungodel(self.meet))}


def _run2(w: int, a: int, b: int, fuel: int) -> int | None:
    out = run_index(w, [a, b], fuel)
    return out.value if isinstance(out, Halted) else None


def tei_witness_oplus(i: int, j: int, w1: int, w2: int, max_stage: int = 1 << 12,
                      final_fuel: int = 10**6) -> RaceOutcome:
    """Run the race for g(i, j). Raises :class:`RaceExhausted` past ``max_stage``."""
    k0, k1, k2, k3 = k = z_indices(i, j)
    n = 1
    while n <= max_stage:
        theta, tau = _run2(w1, k0, k2, n), _run2(w2, k1, k3, n)
        if theta is not None and tau is not None:
            return RaceOutcome("a", n, _combine(theta, tau), k)
        for case, (x, y, w, args) in (("b", (k0, k2, w2, (k1, k3))), ("c", (k1, k3, w1, (k0, k2)))):
            for m in range(n):
                c = nth_sentence(RACE_LANGUAGE, m)
                if halts_within(x, c, n) and halts_within(y, c, n):
                    value = _run2(w, *args, final_fuel)
                    if value is None:
                        raise RaceExhausted(n)
                    return RaceOutcome(case, n, value, k, c)
        n *= 2
    raise RaceExhausted(n // 2)


def _combine(theta: int, tau: int) -> int:
    """Code of (P & theta) | (~P & tau); 0 (a non-code) if either input is not a sentence, as on the machine."""
    f, g = ungodel(theta), ungodel(tau)
    if f is None or g is None:
        return 0
    p = Atom(MARKER, ())
    return godel(Or(And(p, f), And(Not(p), g)))


def expected_case(i: int, j: int, w1: int, w2: int, horizon: int = 1 << 12, scan: int = 1 << 12) -> tuple[str, int]:
    """Which case the race must select, from halting times rather than by staging.

    Case (a) becomes visible at the first power of two >= both witness halting
    times; (b) at the first power of two n with some m < n whose two halting
    times are <= n; likewise (c). Ties go to (a), then (b), then (c).
    """
    k0, k1, k2, k3 = z_indices(i, j)
    ta, tb = halting_time(w1, [k0, k2], horizon), halting_time(w2, [k1, k3], horizon)

    def first_stage(t):
        n = 1
        while n < t:
            n *= 2
        return n

    a = first_stage(max(ta, tb)) if ta is not None and tb is not None else None

    def meet(x, y, bound):
        # least stage n <= bound with some m < n in both sets; later stages cannot win
        best = None
        for m in range(min(scan, bound)):
            if best is not None and first_stage(m + 1) >= best:
                break
            c = nth_sentence(RACE_LANGUAGE, m)
            hx = halting_time(x, [c], bound)
            hy = None if hx is None else halting_time(y, [c], bound)
            if hy is None:
                continue
            n = first_stage(max(hx, hy, m + 1))
            if n <= bound:
                best = n if best is None else min(best, n)
        return best

    b = meet(k0, k2, a if a is not None else horizon)
    c = meet(k1, k3, (b - 1) if b is not None else (a if a is not None else horizon))
    cands = [(s, name) for s, name in ((a, "a"), (b, "b"), (c, "c")) if s is not None]
    if not cands:
        raise RaceExhausted(horizon)
    s, name = min(cands, key=lambda t: (t[0], t[1]))
    return name, s


# -- concrete witnesses -----------------------------------------------------------


@lru_cache(maxsize=None)
def fresh_atom_witness(rel: int, delay: int = 0) -> int:
    """(i, j) -> code of A_{4i+1} over E (rel 0) or E' (rel 1), after about 2*delay idle steps.

    A_{4i+1} is free in the mod-4 subject theories, and any sentence mentioning
    A_s has a code above s, so it is fresh for every context coded below i.
    """
    a = Asm(2)
    if delay:
        a.set(2, delay).label("idle").dec(2, "go").jmp("idle")
    a.label("go").set(2, 4).call(0, "mul", 0, 2).inc(0).set(3, rel).call(0, "c_atom", 0, 3).halt(0)
    return a.index()


@lru_cache(maxsize=None)
def fresh_atom_eet(rel: int = 0) -> int:
    """i -> code of A_{4i+1}: an independent-sentence producer for extensions coded below i."""
    return Asm(1).set(2, 4).call(0, "mul", 0, 2).inc(0).set(3, rel).call(0, "c_atom", 0, 3).halt(0).index()


# -- transforms between tEI and EET witnesses ------------------------------------------


@lru_cache(maxsize=None)
def eet_from_tei_program() -> int:
    """(f, i) -> f(i, h(i)) with W_{h(i)} = {phi : ~phi in W_i}."""
    a = Asm(2)
    a.set(2, refutation_program()).call(3, "smn", 2, 1)
    a.copy(4, 0).copy(0, 1).copy(1, 3).exec(4, 2)
    return a.index()


@lru_cache(maxsize=None)
def tei_from_eet_program() -> int:
    """(base, f, i, j) -> f(h(i, j)) with h(i, j) the theory index of base + W_i + not W_j."""
    a = Asm(4)
    a.set(4, theorem_program()).call(4, "smn", 4, 0).call(4, "smn", 4, 2).call(4, "smn", 4, 3)
    a.copy(0, 4).exec(1, 1)
    return a.index()


def eet_from_tei(f: int) -> int:
    return smn(eet_from_tei_program(), [f])


def tei_from_eet(f: int, base: int) -> int:
    return smn(tei_from_eet_program(), [base, f])


def eet_from_tei_mirror(f: int, i: int) -> tuple[int, int]:
    """The argument pair the transformed witness hands to f."""
    return i, smn(refutation_program(), [i])


def tei_from_eet_mirror(base: int, i: int, j: int) -> int:
    return theory_index(base, i, j)


# -- filters and ideals ---------------------------------------------------------------


@lru_cache(maxsize=None)
def prover_char_program() -> int:
    """(base, ctx, c) -> 1 if base + ctx proves c else 0."""
    return Asm(3).call(0, "prove", 0, 1, 2).halt(0).index()


@lru_cache(maxsize=None)
def refuter_char_program() -> int:
    return Asm(3).call(3, "c_not", 2).call(0, "prove", 0, 1, 3).halt(0).index()


def nucleus_sets(base: int, ctx: Formula | None = None) -> tuple[ReSet, ReSet]:
    """(S_P, S_R) of S = base + ctx as decidable RE sets of codes."""
    c = 0 if ctx is None else godel(ctx)
    x = ReSet(prover_index(base, c), smn(prover_char_program(), [base, c]), "S_P")
    y = ReSet(refuter_index(base, c), smn(refuter_char_program(), [base, c]), "S_R")
    return x, y


def _sample_codes(base: int, count: int, rng: random.Random) -> list[Formula]:
    from ..logic.enumerate import sentences
    from ..logic.registry import base_theory

    pool = sentences(tuple(base_theory(base).relations)).prefix(count * 4)
    return rng.sample(pool, min(count, len(pool)))


@dataclass(frozen=True)
class FilterSet:
    """An RE set of sentence codes meant to be a filter (closed upward and under &, no bottom)."""

    underlying: ReSet
    base: int = 0

    def check_stage(self, budget: int, samples: int = 20, seed: int = 0) -> dict[str, bool]:
        return _closure(self.underlying, self.base, budget, samples, seed, ideal=False)


@dataclass(frozen=True)
class IdealSet:
    """An RE set of sentence codes meant to be an ideal (closed downward and under |, no top)."""

    underlying: ReSet
    base: int = 0

    def check_stage(self, budget: int, samples: int = 20, seed: int = 0) -> dict[str, bool]:
        return _closure(self.underlying, self.base, budget, samples, seed, ideal=True)


def _closure(w: ReSet, base: int, budget: int, samples: int, seed: int, ideal: bool) -> dict[str, bool]:
    """Sampled closure checks on stage ``budget``; consequence is decided by the base theory."""
    from ..logic.registry import base_theory
    from ..logic.sets import sentence_stage

    from ..logic.oplus import UndecidableByHook

    rng = random.Random(seed)
    theory = base_theory(base)

    def implies(a, b) -> bool:
        # pairs outside the decided fragment are skipped, never counted as consequences
        try:
            return theory.proves(Implies(a, b))
        except UndecidableByHook:
            return False

    member = (lambda f: w.contains(godel(f))) if w.decidable else (lambda f: w.semi_contains(godel(f), budget))
    stage = [f for _, f in sentence_stage(w.index, budget, base)]
    pairs = [(rng.choice(stage), rng.choice(stage)) for _ in range(samples)] if stage else []
    others = _sample_codes(base, samples, rng)
    out = {"constant absent": not member(TOP if ideal else BOT)}
    if ideal:
        out["closed under |"] = all(member(Or(a, b)) for a, b in pairs)
        out["closed downward"] = all(member(b) for a in stage[:samples] for b in others if implies(b, a))
    else:
        out["closed under &"] = all(member(And(a, b)) for a, b in pairs)
        out["closed upward"] = all(member(b) for a in stage[:samples] for b in others if implies(a, b))
    return out
