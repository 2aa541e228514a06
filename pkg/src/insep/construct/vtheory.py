"""The theory V = J' + {A'_n : n in Y} + {~A'_n : n in Z} and the weaker theory T = U (+) V.

(Y, Z) is the K-pair pushed forward along an order embedding F onto X, so
Y, Z <= X. V's witness on (i, j) is A'_{t(g(i), g(j))}, where t is the
pushed-forward K witness and W_{g(i)} = {n : A'_n in W_i}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from ..inseparable import (DisjointPair, SemiReduction, WitnessCheck, check_witness, k_pair,
                           oplus_semi_reduction, pushforward, semi_reduction)
from ..janiczak.decide import Verdict, decide_comb
from ..janiczak.jx import Enumerated, JTheory
from ..janiczak.profiles import BoolComb
from ..logic.godel import ungodel
from ..logic.oplus import OplusTheory, oplus
from ..logic.syntax import Implies, SizeAtom
from ..recfun.asm import Asm
from ..recfun.core import ReSet, constant, decidable_set, residue_char, unbounded_call
from ..recfun.machine import Halted, run_index, smn
from .tei import fresh_atom_witness, tei_oplus_index
from .xset import XBuild, build_x, evidence_bundle

V_REL = 1  # E'


# -- F from a computed prefix ------------------------------------------------------


@lru_cache(maxsize=None)
def extended_F(prefix: tuple[int, ...]) -> int:
    """F(n) = prefix[n] on the prefix, then continuing with step 2."""
    d, last = len(prefix) - 1, prefix[-1]
    a = Asm(1)
    for k, v in enumerate(prefix):
        a.set(1, k).call(2, "eq", 0, 1).dec(2, f"n{k}").set(0, v).halt(0)
        a.label(f"n{k}")
    a.set(1, d).call(0, "monus", 0, 1).set(1, 2).call(0, "mul", 0, 1).set(1, last).call(0, "add", 0, 1).halt(0)
    return a.index()


@lru_cache(maxsize=None)
def extended_F_inverse(prefix: tuple[int, ...]) -> int:
    """G(F(n)) = n; diverges off the range of :func:`extended_F`."""
    d, last = len(prefix) - 1, prefix[-1]
    a = Asm(1)
    for k, v in enumerate(prefix):
        a.set(1, v).call(2, "eq", 0, 1).dec(2, f"n{k}").set(0, k).halt(0)
        a.label(f"n{k}")
    a.set(1, last).call(2, "lt", 1, 0).dec(2, "off")
    a.call(0, "monus", 0, 1).set(1, 2).call(2, "mod", 0, 1).dec(2, "even").jmp("off")
    a.label("even").call(0, "div", 0, 1).set(1, d).call(0, "add", 0, 1).halt(0)
    a.label("off").loop()
    return a.index()


# -- programs of the witness ---------------------------------------------------------


@lru_cache(maxsize=None)
def pre_program() -> int:
    """(i, n): runs W_i on the code of A'_n, so smn(pre, i) indexes {n : A'_n in W_i}."""
    a = Asm(2)
    a.set(2, V_REL).call(3, "c_atom", 1, 2).copy(4, 0).copy(0, 3).exec(4, 1)
    return a.index()


@lru_cache(maxsize=None)
def v_witness_program() -> int:
    """(t, i, j) -> code of A'_{t(g(i), g(j))}."""
    a = Asm(3)
    a.set(3, pre_program()).call(4, "smn", 3, 1).call(5, "smn", 3, 2)
    unbounded_call(a, 6, 0, (4, 5), 7, "t")
    a.set(8, V_REL).call(0, "c_atom", 6, 8).halt(0)
    return a.index()


@lru_cache(maxsize=None)
def atom_set_program() -> int:
    """(s, c): halts iff c codes A'_n with n in W_s."""
    a = Asm(2)
    a.set(3, V_REL).call(2, "c_atom_index", 1, 3).dec(2, "no")
    a.copy(4, 0).copy(0, 2).exec(4, 1)
    a.label("no").loop()
    return a.index()


def atom_set(w: ReSet, name: str = "") -> ReSet:
    """{A'_n : n in w} as an RE set of sentence codes."""
    return ReSet(smn(atom_set_program(), [w.index]), name=name or f"A'[{w.name}]")


# -- V ------------------------------------------------------------------------------


@dataclass
class VBuild:
    F: int
    G: int | None
    pair: DisjointPair
    theory: JTheory
    witness: int

    def members(self) -> tuple[int, int]:
        """F(c0) in Y and F(c1) in Z, for the constant programs c0 (in K0) and c1 (in K1)."""
        return self.F_of(constant(0)), self.F_of(constant(1))

    def F_of(self, x: int, fuel: int = 10**5) -> int:
        out = run_index(self.F, [x], fuel)
        if not isinstance(out, Halted):
            raise RuntimeError(f"F did not halt on {x}")
        return out.value

    def witness_value(self, i: int, j: int, fuel: int = 10**6) -> int:
        out = run_index(self.witness, [i, j], fuel)
        if not isinstance(out, Halted):
            raise RuntimeError(f"V's witness did not halt on ({i}, {j}) within {fuel} steps")
        return out.value

    def to_json(self) -> dict:
        return {"F": str(self.F), "G": None if self.G is None else str(self.G), "pair": self.pair.to_json(),
                "theory": self.theory.to_json(), "witness": str(self.witness)}


def build_V(F: int, G: int | None = None, pair: DisjointPair | None = None, fuel: int = 10**4,
            prefix: int = 16) -> VBuild:
    """V over the pushforward of ``pair`` (default the K-pair) along the strictly increasing F."""
    base = pair if pair is not None else k_pair()
    pf = pushforward(base, F, prefix, G)
    v = JTheory("E'", Enumerated(pf.left, fuel), Enumerated(pf.right, fuel), name="V")
    return VBuild(F, G, pf, v, smn(v_witness_program(), [pf.witness]))


def check_v_witness(vb: VBuild, d1: ReSet, d2: ReSet, budget: int = 10**4) -> WitnessCheck:
    """Run V's witness on W_i = {A'_n : n in d1}, W_j = {A'_n : n in d2} and test the answer.

    d1, d2 are decidable sets of atom indices, so membership of the answer is
    exact; the answer may only land inside when the candidate supersets miss
    a member of Y or Z, and that is what the violation search looks for.
    """
    value = vb.witness_value(atom_set(d1).index, atom_set(d2).index)
    s = ungodel(value)
    if not (isinstance(s, SizeAtom) and s.rel == "E'"):
        return WitnessCheck(value, "exact", False, None, {"reason": "not an E' size atom"})
    out = check_witness(vb.pair, d1, d2, s.n, budget)
    out.value = value
    out.details["atom"] = str(s.n)
    return out


def sampled_consistency(vb: VBuild, rng: random.Random, count: int = 5, extra_atoms: int = 6,
                        budget: int = 10**4) -> list[bool]:
    """Finite axiom subsets of V (known members plus small atoms found by stage) are consistent."""
    y, z = vb.members()
    out = []
    for _ in range(count):
        atoms = {y, z} | {rng.randrange(0, 64) for _ in range(extra_atoms)}
        fixed = vb.theory.fixed(atoms, budget)
        out.append(decide_comb([], BoolComb.const(False), fixed).verdict is not Verdict.INCONSISTENT)
    return out


# -- T = U (+) V ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def double_atom_program(rel: int = 0) -> int:
    """n -> code of A_{2n}: sends evens into the default subject's theorems, odds into its refutables."""
    return Asm(1).set(1, 2).call(0, "mul", 0, 1).set(1, rel).call(0, "c_atom", 0, 1).halt(0).index()


@lru_cache(maxsize=None)
def parity_member_program(even_atom: int, odd_atom: int) -> int:
    """n -> A'_{even_atom} for even n, A'_{odd_atom} for odd n."""
    a = Asm(1)
    a.set(1, 2).call(2, "mod", 0, 1).dec(2, "even").set(3, odd_atom).jmp("out")
    a.label("even").set(3, even_atom)
    a.label("out").set(4, V_REL).call(0, "c_atom", 3, 4).halt(0)
    return a.index()


def parity_pair() -> DisjointPair:
    return DisjointPair(decidable_set(residue_char(2, 0), "evens"), decidable_set(residue_char(2, 1), "odds"),
                        name="evens/odds")


@dataclass
class WeakerTheory:
    theory: OplusTheory
    subject: JTheory
    x: XBuild
    v: VBuild
    ei: SemiReduction
    tei_witness: int
    evidence: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"theory": self.theory.to_json(), "F_prefix": list(self.x.F), "v": self.v.to_json(),
                "ei_semi_reduction": {"fn": str(self.ei.fn), "source": self.ei.source.name},
                "tei_witness": str(self.tei_witness),
                "evidence_bundle": [e.to_json() for e in self.evidence]}


def weaker_theory(subject: JTheory, depth: int = 2, samples: int = 3, seed: int = 0,
                  extra_translations: tuple[int, ...] = (37, 47, 237), u_reduction: int | None = None,
                  u_witness: int | None = None) -> WeakerTheory:
    """T = U (+) V with X computed to ``depth`` and F continued past it with step 2.

    ``u_reduction`` sends evens/odds into U's theorems/refutables (default n -> A_{2n},
    right for the default subject); ``u_witness`` is U's tEI-style witness.
    """
    xb = build_x(subject, depth)
    prefix = tuple(xb.F)
    vb = build_V(extended_F(prefix), extended_F_inverse(prefix))
    t = oplus(subject, vb.theory)
    src = parity_pair()
    f1 = semi_reduction(u_reduction if u_reduction is not None else double_atom_program(0), src, subject, "U")
    f2 = semi_reduction(parity_member_program(*vb.members()), src, vb.theory, "V")
    g = oplus_semi_reduction(f1, f2, t)
    w1 = u_witness if u_witness is not None else fresh_atom_witness(0)
    evidence = evidence_bundle(xb, samples, seed, extra_translations) if samples else []
    return WeakerTheory(t, subject, xb, vb, g, tei_oplus_index(w1, vb.witness), evidence)


def sampled_u_theorems(subject, count: int, scan: int = 400, seed: int = 0):
    from ..logic.theory import TheoremStream

    stream = TheoremStream(subject)
    pool = [stream[m] for m in range(scan)]
    return random.Random(seed).sample(pool, min(count, len(pool)))


def marker_lift(t: OplusTheory, phi) -> bool:
    from ..logic.syntax import Atom

    return t.proves(Implies(Atom(t.marker, ()), phi))

