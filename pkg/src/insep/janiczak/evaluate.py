"""Truth of {E}-sentences in the J-models described by a size profile.

A J-model is determined, as far as a sentence of quantifier rank k can see,
by which exact class sizes <= k+1 occur: there is at most one class of each
finite size and an inexhaustible supply of classes larger than anything k
quantifiers can count. The evaluator below plays that game symbolically.
An element is a pair ``(class, serial)``; a class is ``("f", size)`` for the
unique class of that exact size or ``("L", k)`` for the k-th large class.
"""

from __future__ import annotations

from itertools import count

from ..logic.syntax import (
    And,
    Atom,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    SizeAtom,
    Top,
    free_vars,
    quantifier_rank,
    relations,
    size_atoms,
    substitute,
)
from .profiles import SizeProfile

Element = tuple[tuple[str, int], int]


class BoundError(ValueError):
    def __init__(self, required: int, given: int):
        super().__init__(f"profile bound {given} too small; sentence needs bound {required}")
        self.required = required


class SignatureError(ValueError):
    pass


def rank_bound(rank: int) -> int:
    return rank + 1


def required_bound(s: Formula) -> int:
    b = rank_bound(quantifier_rank(s))
    for a in size_atoms(s):
        b = max(b, a.n + 1)
    return b


def relevant_atoms(s: Formula) -> tuple[int, ...]:
    """Atom indices whose truth can matter: sizes up to rank+1 and explicit size atoms."""
    atoms = set(range(rank_bound(quantifier_rank(s))))
    atoms |= {a.n for a in size_atoms(s)}
    return tuple(sorted(atoms))


def sentence_relation(s: Formula, default: str = "E") -> str:
    rels = relations(s)
    names = {r for r, _ in rels}
    if len(names) > 1:
        raise SignatureError(f"sentence mixes relations {sorted(names)}")
    for name, arity in rels:
        if arity != 2:
            raise SignatureError(f"{name} has arity {arity}; only a binary relation is allowed")
    return next(iter(names), default)


def evaluate(s: Formula, p: SizeProfile) -> bool:
    if free_vars(s):
        raise ValueError("evaluate needs a sentence")
    need = required_bound(s)
    if p.bound < need:
        raise BoundError(need, p.bound)
    rel = sentence_relation(s)
    return _Evaluator(p, rel).ev(s, {})


class _Evaluator:
    def __init__(self, profile: SizeProfile, rel: str):
        self.profile = profile
        self.rel = rel
        self.sizes = sorted(profile.present)
        self.blocks: dict[int, tuple[Formula, list[str], list[tuple[Formula, bool]]]] = {}
        self.fresh = count()

    def ev(self, f: Formula, env: dict[str, Element]) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Atom):
            if f.rel != self.rel or len(f.args) != 2:
                raise SignatureError(f"unexpected atom {f.rel}/{len(f.args)}")
            return env[f.args[0]][0] == env[f.args[1]][0]
        if isinstance(f, Eq):
            return env[f.left] == env[f.right]
        if isinstance(f, SizeAtom):
            return self.profile.atom(f.n)
        if isinstance(f, Not):
            return not self.ev(f.body, env)
        if isinstance(f, And):
            return self.ev(f.left, env) and self.ev(f.right, env)
        if isinstance(f, Or):
            return self.ev(f.left, env) or self.ev(f.right, env)
        if isinstance(f, Implies):
            return (not self.ev(f.left, env)) or self.ev(f.right, env)
        if isinstance(f, Iff):
            return self.ev(f.left, env) == self.ev(f.right, env)
        if isinstance(f, Exists):
            names, schedule = self.block(f, True)
            return self.search(names, schedule, env)
        if isinstance(f, Forall):
            names, schedule = self.block(f, False)
            return not self.search(names, schedule, env)
        raise TypeError(f"not a formula: {f!r}")

    def block(self, f: Formula, pol: bool):
        """Flatten a run of same-polarity quantifiers and conjuncts.

        ``exists v. body`` (pol=True) and ``not forall v. body`` (pol=False)
        both become "some assignment of ``names`` makes every item hold".
        """
        cached = self.blocks.get(id(f))
        if cached is not None and cached[0] is f:
            return cached[1], cached[2]
        names: list[str] = []
        items: list[tuple[Formula, bool]] = []
        self._flatten(f, pol, names, items)
        order = {n: k for k, n in enumerate(names)}
        schedule: list[list[tuple[Formula, bool]]] = [[] for _ in range(len(names) + 1)]
        for item in items:
            mine = [order[v] for v in free_vars(item[0]) if v in order]
            schedule[max(mine) + 1 if mine else 0].append(item)
        self.blocks[id(f)] = (f, names, schedule)
        return names, schedule

    def _flatten(self, f: Formula, pol: bool, names: list[str], items: list[tuple[Formula, bool]]):
        if isinstance(f, Not):
            self._flatten(f.body, not pol, names, items)
        elif (pol and isinstance(f, And)) or (not pol and isinstance(f, Or)):
            self._flatten(f.left, pol, names, items)
            self._flatten(f.right, pol, names, items)
        elif not pol and isinstance(f, Implies):
            self._flatten(f.left, True, names, items)
            self._flatten(f.right, False, names, items)
        elif (pol and isinstance(f, Exists)) or (not pol and isinstance(f, Forall)):
            name = f"#{next(self.fresh)}"
            names.append(name)
            self._flatten(substitute(f.body, {f.var: name}), pol, names, items)
        else:
            items.append((f, pol))

    def choices(self, env: dict[str, Element]):
        named = set(env.values())
        yield from sorted(named)
        per_class: dict[tuple[str, int], int] = {}
        for cls, serial in named:
            per_class[cls] = max(per_class.get(cls, -1), serial)
        used = {cls: sum(1 for c, _ in named if c == cls) for cls in per_class}
        for cls in sorted(per_class):
            if cls[0] == "L" or used[cls] < cls[1]:
                yield (cls, per_class[cls] + 1)
        for s in self.sizes:
            if ("f", s) not in per_class:
                yield (("f", s), 0)
        large = [c[1] for c in per_class if c[0] == "L"]
        yield (("L", max(large, default=-1) + 1), 0)

    def search(self, names: list[str], schedule, env: dict[str, Element]) -> bool:
        for g, pol in schedule[0]:
            if self.ev(g, env) != pol:
                return False
        return self._assign(0, names, schedule, dict(env))

    def _assign(self, k: int, names, schedule, env) -> bool:
        if k == len(names):
            return True
        for e in list(self.choices(env)):
            env[names[k]] = e
            if all(self.ev(g, env) == pol for g, pol in schedule[k + 1]) and self._assign(k + 1, names, schedule, env):
                return True
        del env[names[k]]
        return False
