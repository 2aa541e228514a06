"""Independent oracles shared by the test modules.

``brute_force`` evaluates sentences in an explicit finite structure with
numpy, with no knowledge of profiles or normal forms; ``corpus`` builds the
seeded random sentence corpus.
"""

from __future__ import annotations

import random

import numpy as np

from insep.logic.syntax import (And, Atom, Bot, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or, SizeAtom,
                                Top)

LARGE_SIZE = 8     # L: smallest size of the "large" classes
LARGE_COUNT = 8    # C: how many large classes


def class_sizes(present, bound: int) -> list[int]:
    """Exact sizes from the profile plus C large classes of distinct sizes >= max(L, bound + 1)."""
    start = max(LARGE_SIZE, bound + 1)
    return sorted(present) + list(range(start, start + LARGE_COUNT))


class Structure:
    """A finite equivalence relation given by its class sizes."""

    def __init__(self, sizes: list[int]):
        self.sizes = sizes
        labels = np.repeat(np.arange(len(sizes)), sizes)
        self.n = len(labels)
        self.same = labels[:, None] == labels[None, :]
        self.eq = np.eye(self.n, dtype=bool)

    def has_class(self, size: int) -> bool:
        return size in self.sizes

    def holds(self, s: Formula) -> bool:
        return bool(self._ev(s, ()))

    def _ev(self, f: Formula, scope: tuple[str, ...]) -> np.ndarray:
        shape = (self.n,) * len(scope)
        if isinstance(f, Top):
            return np.ones(shape, dtype=bool)
        if isinstance(f, Bot):
            return np.zeros(shape, dtype=bool)
        if isinstance(f, (Atom, Eq)):
            a, b = (f.args if isinstance(f, Atom) else (f.left, f.right))
            mat = self.same if isinstance(f, Atom) else self.eq
            idx = np.indices(shape, dtype=np.intp) if scope else None
            pa = len(scope) - 1 - scope[::-1].index(a)
            pb = len(scope) - 1 - scope[::-1].index(b)
            return mat[idx[pa], idx[pb]]
        if isinstance(f, SizeAtom):
            return np.full(shape, self.has_class(f.n + 1))
        if isinstance(f, Not):
            return ~self._ev(f.body, scope)
        if isinstance(f, And):
            return self._ev(f.left, scope) & self._ev(f.right, scope)
        if isinstance(f, Or):
            return self._ev(f.left, scope) | self._ev(f.right, scope)
        if isinstance(f, Implies):
            return ~self._ev(f.left, scope) | self._ev(f.right, scope)
        if isinstance(f, Iff):
            return self._ev(f.left, scope) == self._ev(f.right, scope)
        if isinstance(f, (Exists, Forall)):
            inner = self._ev(f.body, scope + (f.var,))
            return inner.any(axis=-1) if isinstance(f, Exists) else inner.all(axis=-1)
        raise TypeError(f)


def random_sentence(rng: random.Random, rank: int = 2, max_atom: int = 3, depth: int = 4) -> Formula:
    def go(scope, rank_left, d):
        choices = ["top", "bot", "size"]
        if scope:
            choices += ["E", "eq", "E", "eq"]
        if d > 0:
            choices += ["not", "and", "or", "imp", "iff"] * 2
        if rank_left > 0 and d > 0:
            choices += ["ex", "all"] * 3
        c = rng.choice(choices)
        if c == "top":
            return Top()
        if c == "bot":
            return Bot()
        if c == "size":
            return SizeAtom(rng.randint(0, max_atom))
        if c == "E":
            return Atom("E", (rng.choice(scope), rng.choice(scope)))
        if c == "eq":
            return Eq(rng.choice(scope), rng.choice(scope))
        if c == "not":
            return Not(go(scope, rank_left, d - 1))
        if c in ("and", "or", "imp", "iff"):
            cls = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[c]
            return cls(go(scope, rank_left, d - 1), go(scope, rank_left, d - 1))
        var = f"x{len(scope)}"
        cls = Exists if c == "ex" else Forall
        return cls(var, go(scope + [var], rank_left - 1, d - 1))

    return go([], rank, depth)


def corpus(size: int = 500, seed: int = 0, rank: int = 2) -> list[Formula]:
    rng = random.Random(seed)
    return [random_sentence(rng, rank) for _ in range(size)]


# -- random machine programs -------------------------------------------------

CHEAP_BUILTINS = ("add", "monus", "eq", "lt", "mod", "div", "pair", "left", "right")


def random_program(rng: random.Random, arity: int, length: int = 8, regs: int = 4):
    """A well-formed program over cheap builtins; it may loop."""
    from insep.recfun.builtins import BUILTIN_IDS, BUILTINS
    from insep.recfun.machine import CALL, COPY, DEC, HALT, INC, JMP, SET, Program

    nregs = max(regs, arity)
    code = []
    for _ in range(length):
        op = rng.choice(("inc", "dec", "jmp", "set", "copy", "call", "call", "halt"))
        r = rng.randrange(nregs)
        t = rng.randrange(length + 1)
        if op == "inc":
            code.append((INC, r))
        elif op == "dec":
            code.append((DEC, r, t))
        elif op == "jmp":
            code.append((JMP, max(t, len(code) + 1)))  # forward only, so loops come from dec
        elif op == "set":
            code.append((SET, r, rng.randrange(20)))
        elif op == "copy":
            code.append((COPY, r, rng.randrange(nregs)))
        elif op == "halt":
            code.append((HALT, r))
        else:
            name = rng.choice(CHEAP_BUILTINS)
            args = tuple(rng.randrange(nregs) for _ in range(BUILTINS[BUILTIN_IDS[name]].arity))
            code.append((CALL, r, BUILTIN_IDS[name]) + args)
    code = [(JMP, min(ins[1], length)) if ins[0] == JMP else ins for ins in code]
    return Program(arity, tuple(code))


# -- agreement checks used by the janiczak tests and the acceptance run ----------


def profile_disagreements(sentences, max_bound: int = 4) -> tuple[int, int]:
    """(checked, disagreements) of profile evaluation against brute force, bounds required..max_bound."""
    from insep.janiczak.evaluate import evaluate, required_bound
    from insep.janiczak.profiles import profiles

    checked = bad = 0
    for s in sentences:
        for bound in range(required_bound(s), max(max_bound, required_bound(s)) + 1):
            for p in profiles(bound):
                checked += 1
                if evaluate(s, p) != Structure(class_sizes(p.present, bound)).holds(s):
                    bad += 1
    return checked, bad


def nf_disagreements(sentences) -> list:
    """Sentences where phi <-> nf(phi) fails in some brute-force structure over its relevant atoms."""
    from itertools import product

    from insep.janiczak.decide import iff_sentence, normal_form
    from insep.janiczak.evaluate import relevant_atoms, required_bound

    bad = []
    for s in sentences:
        nf = normal_form(s)
        iff = iff_sentence(s, nf, expand=False)
        atoms = sorted(set(relevant_atoms(s)) | set(nf.atoms))
        bound = max(required_bound(s), max(atoms, default=-1) + 1)
        for values in product((False, True), repeat=len(atoms)):
            present = {a + 1 for a, v in zip(atoms, values) if v}
            if not Structure(class_sizes(present, bound)).holds(iff):
                bad.append(s)
                break
    return bad
