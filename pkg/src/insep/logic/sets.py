"""Theories presented by RE sets of sentence codes, and the index maps between them.

``theory_index(base, i, j)`` is an index of the theorem set of the base
theory plus {phi : phi in W_i} + {not phi : phi in W_j}; it is the h(i, j)
of the EET -> tEI direction. ``refutation_index(i)`` indexes
{phi : not phi in W_i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..recfun.asm import Asm
from ..recfun.core import halts_within
from ..recfun.machine import smn
from .enumerate import sentences
from .syntax import Formula, Not, conj


@lru_cache(maxsize=None)
def prover_program() -> int:
    """(base, ctx, c): halts iff base + ctx proves c."""
    a = Asm(3)
    a.call(3, "prove", 0, 1, 2).dec(3, "no").halt(2)
    a.label("no").loop()
    return a.index()


@lru_cache(maxsize=None)
def refuter_program() -> int:
    """(base, ctx, c): halts iff base + ctx proves not c."""
    a = Asm(3)
    a.call(4, "c_not", 2).call(3, "prove", 0, 1, 4).dec(3, "no").halt(2)
    a.label("no").loop()
    return a.index()


@lru_cache(maxsize=None)
def theorem_program() -> int:
    """(base, i, j, c): halts iff base + stage_s(W_i) + not stage_s(W_j) proves c for some s."""
    a = Asm(4)
    a.set(4, 1)
    a.label("stage").call(5, "stage_context", 0, 1, 2, 4).call(6, "prove", 0, 5, 3).dec(6, "next").halt(3)
    a.label("next").inc(4).jmp("stage")
    return a.index()


@lru_cache(maxsize=None)
def refutation_program() -> int:
    """(i, c): runs W_i on not c."""
    a = Asm(2)
    a.copy(3, 0).call(0, "c_not", 1).exec(3, 1)
    return a.index()


def sentence_stage(index: int, budget: int, base: int = 0) -> list[tuple[int, Formula]]:
    """Members of W_index among the first ``budget`` sentences of the base language, ``budget`` steps each."""
    from .godel import godel
    from .registry import base_theory

    out = []
    for f in sentences(tuple(base_theory(base).relations)).prefix(budget):
        c = godel(f)
        if halts_within(index, c, budget):
            out.append((c, f))
    return out


def prover_index(base: int, ctx: int = 0) -> int:
    """Index of the theorems of base + ctx (ctx a sentence code, 0 for none)."""
    return smn(prover_program(), [base, ctx])


def refuter_index(base: int, ctx: int = 0) -> int:
    return smn(refuter_program(), [base, ctx])


def theory_index(base: int, i: int, j: int) -> int:
    """h(i, j): the theorem set of base + W_i + not W_j, by s-m-n."""
    return smn(smn(smn(theorem_program(), [base]), [i]), [j])


def refutation_index(i: int) -> int:
    """h(i) with W_{h(i)} = {phi : not phi in W_i}."""
    return smn(refutation_program(), [i])


@dataclass(frozen=True)
class SetsTheory:
    """base + {phi : phi in W_i} + {not phi : phi in W_j}; codes that are not sentences are skipped."""

    base: int
    i: int
    j: int

    @property
    def index(self) -> int:
        return theory_index(self.base, self.i, self.j)

    @property
    def relations(self):
        from .registry import base_theory

        return base_theory(self.base).relations

    def axioms(self, budget: int) -> list[Formula]:
        out = [f for _, f in sentence_stage(self.i, budget, self.base)]
        return out + [Not(f) for _, f in sentence_stage(self.j, budget, self.base)]

    def proves(self, s: Formula, context: Sequence[Formula] = (), budget: int | None = None) -> bool:
        """Sound staged provability: uses the axioms enumerated by stage ``budget``."""
        from .registry import base_theory

        extra = self.axioms(budget if budget is not None else 64)
        return base_theory(self.base).proves(s, [conj(extra), *context] if extra else list(context))


def theory_from_sets(i: int, j: int, base: int = 0) -> SetsTheory:
    return SetsTheory(base, i, j)
