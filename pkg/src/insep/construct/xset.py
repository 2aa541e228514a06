"""The recursive set X: no consistent J,X-theory interprets the subject U.

For a profile conjunction C_{n,j} and the i-th translation tau_i, take the
least m with J + C_{n,j} not proving (phi_m)^tau_i (phi_m the m-th theorem
of U), and let t be one more than the largest atom index in the normal form
of that sentence. f(n, i) = max(n + 1, max_j t) and F(0) = 0,
F(n+1) = f(F(n) + 1, n); X is the range of F.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..janiczak.decide import Verdict, decide_comb, normal_form
from ..janiczak.jx import JTheory
from ..janiczak.profiles import BoolComb, ResourceError, depth_limit, profile_conjunction
from ..logic.enumerate import ORDER_VERSION, translations
from ..logic.parser import to_text
from ..logic.syntax import Formula, Not
from ..logic.theory import TheoremStream
from ..logic.translate import Translation, apply_translation

J_LANGUAGE = (("E", 2),)


@dataclass(frozen=True)
class TValue:
    n: int
    i: int
    j: int
    m: int
    phi: Formula
    translated: Formula
    nf: BoolComb
    t: int

    def to_json(self) -> dict:
        return {"n": self.n, "i": self.i, "j": self.j, "m": self.m, "phi": to_text(self.phi),
                "nf": self.nf.to_json(), "t": self.t}


@dataclass
class XBuild:
    """Memoised computation of t, f and F for one subject theory."""

    subject: object
    search_budget: int = 2000
    stream: TheoremStream = field(init=False)
    t_values: dict = field(default_factory=dict)
    f_values: dict = field(default_factory=dict)
    F: list = field(default_factory=lambda: [0])

    def __post_init__(self):
        self.stream = TheoremStream(self.subject)
        self._tr = translations(tuple(self.subject.relations), J_LANGUAGE)

    def translation(self, i: int) -> Translation:
        return self._tr[i]

    def translated(self, m: int, i: int) -> Formula:
        return apply_translation(self.stream[m], self.translation(i))

    def compute_t(self, n: int, i: int, j: int) -> TValue:
        key = (n, i, j)
        if key in self.t_values:
            return self.t_values[key]
        if not 0 <= j < 2 ** n:
            raise ValueError(f"profile index {j} outside 0..{2 ** n - 1}")
        c = profile_conjunction(n, j)
        for m in range(self.search_budget):
            s = self.translated(m, i)
            nf = normal_form(s)
            if decide_comb([c], nf).verdict is Verdict.NOT_PROVABLE:
                t = max(nf.atoms) + 1 if nf.atoms else 0
                out = TValue(n, i, j, m, self.stream[m], s, nf, t)
                self.t_values[key] = out
                return out
        raise ResourceError(f"no unprovable translated theorem among the first {self.search_budget} "
                            f"(n={n}, i={i}, j={j}; last phi={to_text(self.stream[self.search_budget - 1])})")

    def compute_f(self, n: int, i: int) -> int:
        if (n, i) not in self.f_values:
            if n > depth_limit():
                raise ResourceError(f"f({n}, {i}) sweeps 2^{n} profiles; limit is 2^{depth_limit()}")
            self.f_values[(n, i)] = max([n + 1] + [self.compute_t(n, i, j).t for j in range(2 ** n)])
        return self.f_values[(n, i)]

    def compute_F(self, k: int) -> int:
        while len(self.F) <= k:
            n = len(self.F) - 1
            self.F.append(self.compute_f(self.F[n] + 1, n))
        return self.F[k]

    def x_prefix(self, k: int) -> list[int]:
        self.compute_F(k)
        return self.F[: k + 1]

    def in_x(self, x: int) -> bool:
        """Membership in X, computing F as far as needed."""
        k = 0
        while self.compute_F(k) < x:
            k += 1
        return self.F[k] == x

    def to_json(self) -> dict:
        return {
            "order_version": ORDER_VERSION,
            "subject": self.subject.to_json() if hasattr(self.subject, "to_json") else repr(self.subject),
            "F_prefix": list(self.F),
            "golden_t_values": [v.to_json() for _, v in sorted(self.t_values.items())],
            "f_values": [{"n": n, "i": i, "f": v} for (n, i), v in sorted(self.f_values.items())],
        }


def build_x(subject, depth: int, search_budget: int = 2000) -> XBuild:
    b = XBuild(subject, search_budget)
    b.compute_F(depth)
    return b


# -- instance replay of the non-interpretability argument --------------------


def _consistent(theory: JTheory, extra: list[BoolComb]) -> bool:
    ctx = list(theory.extra) + extra
    atoms = set()
    for c in ctx:
        atoms |= set(c.atoms)
    return decide_comb(ctx, BoolComb.const(False), theory.fixed(atoms)).verdict is not Verdict.INCONSISTENT


def _extends(big: int, small: int, width: int) -> bool:
    # profile bit s is the s-th bit of j
    mask = (1 << width) - 1
    return big & mask == small & mask


@dataclass
class Evidence:
    i: int
    a: int
    b: int
    j_star: int
    k: int | None
    theory: JTheory
    tvalue: TValue
    claims: dict

    @property
    def ok(self) -> bool:
        return all(self.claims.values())

    def to_json(self) -> dict:
        return {"translation": self.i, "a": self.a, "b": self.b, "j_star": self.j_star, "k": self.k, "theory": self.theory.to_json(),
                "phi": to_text(self.tvalue.phi), "m": self.tvalue.m, "claims": self.claims}


def sample_jx_theory(x_atoms: list[int], rng: random.Random, name: str = "T") -> JTheory:
    """A random consistent J,X-theory whose axioms mention only atoms in ``x_atoms``."""
    atoms = tuple(sorted(rng.sample(x_atoms, rng.randint(1, len(x_atoms)))))
    while True:
        rows = frozenset(r for r in _rows(len(atoms)) if rng.random() < 0.5)
        if rows:
            return JTheory("E", extra=(BoolComb(atoms, rows).reduced(),), name=name)


def _rows(n: int):
    from itertools import product

    return product((False, True), repeat=n)


def replay_at(build: XBuild, i: int, a: int, theory: JTheory, j_star: int | None = None) -> Evidence:
    """Check the claims for translation tau_i between a and b = f(a, i).

    With i = n* and a = F(n*) + 1 this is the step showing tau_{n*} does not
    interpret U in T; any other (i, a) with T's atoms outside (a, b) works the same way.
    """
    b = build.compute_f(a, i)
    inside = sorted(x for c in theory.extra for x in c.atoms if a <= x < b)
    if j_star is None:
        j_star = next((j for j in range(2 ** a) if _consistent(theory, [profile_conjunction(a, j)])), None)
        if j_star is None:
            raise ValueError(f"{theory.name} is inconsistent with every C_{{{a},j}}")
    tv = build.compute_t(a, i, j_star)
    s = tv.translated
    claims = {
        "T mentions no atom A_s with a <= s < b": not inside,
        "T consistent with C_{a,j*}": _consistent(theory, [profile_conjunction(a, j_star)]),
        "U proves phi": build.subject.proves(tv.phi),
        "J + C_{a,j*} does not prove phi^tau": decide_comb(
            [profile_conjunction(a, j_star)], tv.nf).verdict is Verdict.NOT_PROVABLE,
        "s < b for every atom A_s of the normal form": all(x < b for x in tv.nf.atoms),
    }
    neg = normal_form(Not(s))
    k = None
    for cand in range(j_star, 2 ** b, 1 << a):
        if decide_comb([profile_conjunction(b, cand)], neg).verdict is Verdict.PROVABLE:
            k = cand
            break
    claims["some C_{b,k} extends C_{a,j*} and proves not phi^tau"] = k is not None and _extends(k, j_star, a)
    claims["C_{b,k} consistent with T"] = k is not None and _consistent(theory, [profile_conjunction(b, k)])
    claims["T does not prove phi^tau"] = not theory.proves(s)
    return Evidence(i, a, b, j_star, k, theory, tv, claims)


def replay(build: XBuild, n_star: int, theory: JTheory, j_star: int | None = None) -> Evidence:
    """The replay for tau_{n*} at a = F(n*) + 1, so that b = F(n*+1)."""
    return replay_at(build, n_star, build.compute_F(n_star) + 1, theory, j_star)


def evidence_bundle(build: XBuild, samples: int = 3, seed: int = 0, extra_translations: tuple[int, ...] = ()) -> list[Evidence]:
    """Replays on random J,X-theories: ``samples`` along F, plus one per extra translation.

    The extra ones use a fresh window (a, f(a, i)) above the computed prefix
    and a J,X-theory over atoms below a, which is what the argument needs.
    """
    rng = random.Random(seed)
    depth = len(build.F) - 1
    if depth < 1:
        raise ValueError("evidence needs F computed to depth >= 1")
    out = []
    for k in range(samples):
        theory = sample_jx_theory(build.F[: depth + 1], rng, f"T{k}")
        out.append(replay(build, k % depth, theory))
    for k, i in enumerate(extra_translations):
        a = build.F[1] + 1
        theory = sample_jx_theory([x for x in build.F if x < a], rng, f"T{samples + k}")
        out.append(replay_at(build, i, a, theory))
    return out
