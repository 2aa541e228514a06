"""One-dimensional, parameter-free, one-piece translations between relational languages."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    BINARY,
    QUANT,
    And,
    Atom,
    Eq,
    Exists,
    Formula,
    Implies,
    Not,
    SizeAtom,
    expand_size_atoms,
    free_vars,
    substitute,
)


class TranslationError(ValueError):
    pass


@dataclass(frozen=True)
class Clause:
    """A formula with designated free variables, e.g. R_I(x0, x1)."""

    params: tuple[str, ...]
    body: Formula

    def __post_init__(self):
        extra = free_vars(self.body) - set(self.params)
        if extra:
            raise TranslationError(f"free variables {sorted(extra)} not among {self.params}")
        if len(set(self.params)) != len(self.params):
            raise TranslationError(f"repeated parameters {self.params}")

    def at(self, args) -> Formula:
        args = tuple(args)
        if len(args) != len(self.params):
            raise TranslationError(f"arity {len(self.params)} clause applied to {len(args)} arguments")
        return substitute(self.body, dict(zip(self.params, args)))


@dataclass(frozen=True)
class Translation:
    domain: Clause
    relations: tuple[tuple[str, Clause], ...]
    equality: Clause | None = None
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.domain.params) != 1:
            raise TranslationError("domain formula needs exactly one designated variable")
        if self.equality is not None and len(self.equality.params) != 2:
            raise TranslationError("equality clause needs two designated variables")
        object.__setattr__(self, "_table", dict(self.relations))

    def clause(self, rel: str) -> Clause:
        try:
            return self._table[rel]
        except KeyError:
            raise TranslationError(f"translation has no clause for {rel}") from None

    def to_json(self) -> dict:
        from .parser import to_text

        def c(cl: Clause) -> dict:
            return {"params": list(cl.params), "formula": to_text(cl.body)}

        return {
            "domain": c(self.domain),
            "relations": {name: c(cl) for name, cl in self.relations},
            "equality": None if self.equality is None else c(self.equality),
        }


def identity_translation(relations: dict[str, int]) -> Translation:
    from .syntax import TOP

    clauses = []
    for name, arity in sorted(relations.items()):
        params = tuple(f"x{k}" for k in range(arity))
        clauses.append((name, Clause(params, Atom(name, params))))
    return Translation(Clause(("x0",), TOP), tuple(clauses))


def apply_translation(f: Formula, t: Translation) -> Formula:
    if isinstance(f, SizeAtom):
        return apply_translation(expand_size_atoms(f), t)
    if isinstance(f, Atom):
        return t.clause(f.rel).at(f.args)
    if isinstance(f, Eq):
        if t.equality is None:
            return f
        return t.equality.at((f.left, f.right))
    if isinstance(f, Not):
        return Not(apply_translation(f.body, t))
    if isinstance(f, BINARY):
        return type(f)(apply_translation(f.left, t), apply_translation(f.right, t))
    if isinstance(f, QUANT):
        guard = t.domain.at((f.var,))
        body = apply_translation(f.body, t)
        if isinstance(f, Exists):
            return Exists(f.var, And(guard, body))
        return type(f)(f.var, Implies(guard, body))
    return f
