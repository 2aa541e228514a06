"""First-order formulas over finite relational signatures.

Formulas are immutable dataclasses. ``SizeAtom(n, rel)`` is the defined
sentence "some ``rel``-class has exactly n+1 elements"; it is kept atomic so
that huge ``n`` stay cheap, and :func:`expand_size_atoms` unfolds it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterator, Union


class Formula:
    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __str__(self) -> str:
        from .parser import to_text

        return to_text(self)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    rel: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class SizeAtom(Formula):
    n: int
    rel: str = "E"


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula


TOP = Top()
BOT = Bot()

Binary = Union[And, Or, Implies, Iff]
Quant = Union[Exists, Forall]
BINARY = (And, Or, Implies, Iff)
QUANT = (Exists, Forall)


def conj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Eq):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANT):
        return free_vars(f.body) - {f.var}
    return frozenset()


def all_vars(f: Formula) -> frozenset[str]:
    """Free and bound variable names occurring anywhere in ``f``."""
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, Eq):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, QUANT):
        return all_vars(f.body) | {f.var}
    return frozenset()


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def relations(f: Formula) -> frozenset[tuple[str, int]]:
    """Relation symbols (name, arity) used by ``f``; size atoms count as binary."""
    if isinstance(f, Atom):
        return frozenset({(f.rel, len(f.args))})
    if isinstance(f, SizeAtom):
        return frozenset({(f.rel, 2)})
    if isinstance(f, Not):
        return relations(f.body)
    if isinstance(f, BINARY):
        return relations(f.left) | relations(f.right)
    if isinstance(f, QUANT):
        return relations(f.body)
    return frozenset()


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    if isinstance(f, QUANT):
        return 1 + quantifier_rank(f.body)
    return 0


def size(f: Formula) -> int:
    """Node count; a size atom A_n weighs n+1 so each size class is finite."""
    if isinstance(f, SizeAtom):
        return f.n + 1
    if isinstance(f, Not):
        return 1 + size(f.body)
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    if isinstance(f, QUANT):
        return 1 + size(f.body)
    return 1


def size_atoms(f: Formula) -> frozenset[SizeAtom]:
    if isinstance(f, SizeAtom):
        return frozenset({f})
    if isinstance(f, Not):
        return size_atoms(f.body)
    if isinstance(f, BINARY):
        return size_atoms(f.left) | size_atoms(f.right)
    if isinstance(f, QUANT):
        return size_atoms(f.body)
    return frozenset()


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANT):
        yield from subformulas(f.body)


def fresh_name(avoid, stem: str = "v") -> str:
    for k in count():
        name = f"{stem}{k}"
        if name not in avoid:
            return name
    raise AssertionError("unreachable")


def substitute(f: Formula, mapping: dict[str, str]) -> Formula:
    """Capture-avoiding simultaneous renaming of free variables."""
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return f
    return _subst(f, mapping)


def _subst(f: Formula, m: dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(m.get(a, a) for a in f.args))
    if isinstance(f, Eq):
        return Eq(m.get(f.left, f.left), m.get(f.right, f.right))
    if isinstance(f, Not):
        return Not(_subst(f.body, m))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, m), _subst(f.right, m))
    if isinstance(f, QUANT):
        inner = {k: v for k, v in m.items() if k != f.var}
        if not inner:
            return f
        fv = free_vars(f.body)
        live = {k: v for k, v in inner.items() if k in fv}
        if not live:
            return f
        var = f.var
        if var in live.values():
            var = fresh_name(all_vars(f.body) | set(live.values()) | set(live), stem=f.var)
            live[f.var] = var
        return type(f)(var, _subst(f.body, live))
    return f


def expand_size_atoms(f: Formula) -> Formula:
    """Replace every ``SizeAtom`` by its first-order definition."""
    if isinstance(f, SizeAtom):
        return size_atom_definition(f.n, f.rel)
    if isinstance(f, Not):
        return Not(expand_size_atoms(f.body))
    if isinstance(f, BINARY):
        return type(f)(expand_size_atoms(f.left), expand_size_atoms(f.right))
    if isinstance(f, QUANT):
        return type(f)(f.var, expand_size_atoms(f.body))
    return f


def size_atom_definition(n: int, rel: str = "E") -> Formula:
    """exists x0..xn pairwise distinct in one class, and nothing else in it."""
    if n > 10_000:
        raise ValueError(f"refusing to expand A_{n}: definition has {n * n} conjuncts")
    xs = [f"x{k}" for k in range(n + 1)]
    parts: list[Formula] = []
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            parts.append(Not(Eq(xs[a], xs[b])))
    for a in range(1, n + 1):
        parts.append(Atom(rel, (xs[0], xs[a])))
    closing = Forall("y", Implies(Atom(rel, (xs[0], "y")), disj(Eq("y", x) for x in xs)))
    parts.append(closing)
    body: Formula = conj(parts)
    for x in reversed(xs):
        body = Exists(x, body)
    return body


def rename_relation(f: Formula, old: str, new: str) -> Formula:
    if isinstance(f, Atom):
        return Atom(new, f.args) if f.rel == old else f
    if isinstance(f, SizeAtom):
        return SizeAtom(f.n, new) if f.rel == old else f
    if isinstance(f, Not):
        return Not(rename_relation(f.body, old, new))
    if isinstance(f, BINARY):
        return type(f)(rename_relation(f.left, old, new), rename_relation(f.right, old, new))
    if isinstance(f, QUANT):
        return type(f)(f.var, rename_relation(f.body, old, new))
    return f


def alpha_normalize(f: Formula) -> Formula:
    """Rename bound variables to ``_b0, _b1, ...`` by binding depth."""
    return _alpha(f, {}, 0)


def _alpha(f: Formula, env: dict[str, str], depth: int) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(env.get(a, a) for a in f.args))
    if isinstance(f, Eq):
        return Eq(env.get(f.left, f.left), env.get(f.right, f.right))
    if isinstance(f, Not):
        return Not(_alpha(f.body, env, depth))
    if isinstance(f, BINARY):
        return type(f)(_alpha(f.left, env, depth), _alpha(f.right, env, depth))
    if isinstance(f, QUANT):
        name = f"_b{depth}"
        return type(f)(name, _alpha(f.body, {**env, f.var: name}, depth + 1))
    return f
