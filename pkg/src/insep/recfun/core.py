"""RE sets, dovetailed enumeration, the recursion theorem and a small program library."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .asm import Asm
from .machine import Halted, decode, execute, run_index, smn

# -- library -----------------------------------------------------------------


@lru_cache(maxsize=None)
def identity() -> int:
    return Asm(1).index()


@lru_cache(maxsize=None)
def successor() -> int:
    return Asm(1).inc(0).index()


@lru_cache(maxsize=None)
def constant(c: int, arity: int = 1) -> int:
    return Asm(arity).set(0, c).halt(0).index()


@lru_cache(maxsize=None)
def diverge(arity: int = 1) -> int:
    return Asm(arity).loop().index()


@lru_cache(maxsize=None)
def projection(k: int, arity: int) -> int:
    return Asm(arity).halt(k).index()


@lru_cache(maxsize=None)
def adder() -> int:
    return Asm(2).call(0, "add", 0, 1).index()


@lru_cache(maxsize=None)
def halt_if_even() -> int:
    """Halts (with 0) exactly on even inputs."""
    a = Asm(1)
    a.set(1, 2).call(2, "mod", 0, 1).dec(2, "yes").loop()
    a.label("yes").set(0, 0).halt(0)
    return a.index()


def unbounded_call(a: Asm, dest: int, fn: int, args: tuple[int, ...], fuel: int, tag: str) -> Asm:
    """Emit dest := phi_fn(args), retrying ``eval`` with doubled fuel until it halts."""
    op = "eval" if len(args) == 1 else "eval2"
    a.set(fuel, 1)
    a.label(f"{tag}_try").call(dest, op, fn, *args, fuel).dec(dest, f"{tag}_more").jmp(f"{tag}_done")
    a.label(f"{tag}_more").call(fuel, "add", fuel, fuel).jmp(f"{tag}_try")
    a.label(f"{tag}_done")
    return a


@lru_cache(maxsize=None)
def halt_if_one() -> int:
    """(c, x): halts iff phi_c(x) = 1. Turns a 0/1 decider into a semi-decider."""
    a = Asm(2)
    unbounded_call(a, 3, 0, (1,), 2, "c")
    a.set(4, 1).call(5, "eq", 3, 4).dec(5, "no").set(0, 0).halt(0)
    a.label("no").loop()
    return a.index()


@lru_cache(maxsize=None)
def self_applies_to(value: int) -> int:
    """x halts iff phi_x(x) = value (the K_0 / K_1 enumerators)."""
    a = Asm(1)
    unbounded_call(a, 2, 0, (0,), 1, "u")
    a.set(3, value).call(4, "eq", 2, 3).dec(4, "no").halt(0)
    a.label("no").loop()
    return a.index()


# -- RE sets -----------------------------------------------------------------

_HALT_CACHE: dict[tuple[int, int], tuple[int | None, int]] = {}


def halts_within(index: int, x: int, fuel: int) -> bool:
    """Does phi_index(x) halt within ``fuel`` steps? Memoised across budgets."""
    key = (index, x)
    hit = _HALT_CACHE.get(key)
    if hit is not None:
        steps, tried = hit
        if steps is not None:
            return steps <= fuel
        if fuel <= tried:
            return False
    value, used = execute(decode(index), [x], fuel)
    if value is not None:
        _HALT_CACHE[key] = (used, fuel)
        return True
    if len(_HALT_CACHE) > 2_000_000:
        _HALT_CACHE.clear()
    _HALT_CACHE[key] = (None, fuel)
    return False


def stage(index: int, budget: int) -> frozenset[int]:
    """Stage ``budget`` of W_index: inputs 0..budget, each run for ``budget`` steps."""
    return frozenset(x for x in range(budget + 1) if halts_within(index, x, budget))


@dataclass(frozen=True)
class ReSet:
    """W_index, optionally with a total 0/1 characteristic program ``char``."""

    index: int
    char: int | None = None
    name: str = ""

    @property
    def decidable(self) -> bool:
        return self.char is not None

    def enumerate(self, budget: int) -> frozenset[int]:
        return stage(self.index, budget)

    def semi_contains(self, n: int, fuel: int) -> bool:
        return isinstance(run_index(self.index, [n], fuel), Halted)

    def contains(self, n: int, max_fuel: int = 10**7) -> bool:
        """Exact membership through ``char``."""
        if self.char is None:
            raise ValueError(f"{self.name or 'set'} has no decidable descriptor")
        fuel = 64
        while fuel <= max_fuel:
            out = run_index(self.char, [n], fuel)
            if isinstance(out, Halted):
                return out.value == 1
            fuel *= 4
        raise RuntimeError(f"characteristic program did not halt within {max_fuel} steps")

    def to_json(self) -> dict:
        out = {"index": self.index}
        if self.name:
            out["name"] = self.name
        if self.char is not None:
            out["char"] = self.char
        return out


def decidable_set(char: int, name: str = "") -> ReSet:
    """The set decided by ``char``, with a semi-deciding index built by s-m-n."""
    return ReSet(smn(halt_if_one(), [char]), char, name)


def enumerate_set(w: ReSet | int, budget: int) -> frozenset[int]:
    return stage(w.index if isinstance(w, ReSet) else w, budget)


# -- recursion theorem -----------------------------------------------------


@lru_cache(maxsize=None)
def fixed_point_helper(arity: int) -> int:
    """A_k(t, u, x_1..x_k) = phi_{phi_t(s(u, u))}(x_1..x_k)."""
    k = arity
    d, fuel, w = k + 2, k + 3, k + 4
    a = Asm(k + 2)
    a.call(d, "smn", 1, 1)
    unbounded_call(a, w, 0, (d,), fuel, "t")
    for y in range(k):
        a.copy(y, y + 2)
    a.exec(w, k)
    return a.index()


def fixed_point(t: int, arity: int = 1) -> int:
    """n with phi_n = phi_{phi_t(n)} (as functions of ``arity`` arguments)."""
    a = smn(fixed_point_helper(arity), [t])
    return smn(a, [a])


def quine_transform() -> int:
    """t(n) = index of the 0-ary program returning n."""
    return Asm(1).set(1, identity()).call(0, "smn", 1, 0).halt(0).index()


# -- characteristic programs (total, 0/1 valued) ---------------------------


@lru_cache(maxsize=None)
def residue_char(mod: int, residue: int) -> int:
    return Asm(1).set(1, mod).call(2, "mod", 0, 1).set(3, residue).call(0, "eq", 2, 3).halt(0).index()


@lru_cache(maxsize=None)
def finite_char(values: tuple[int, ...]) -> int:
    a = Asm(1)
    a.set(1, 0)
    for v in values:
        a.set(2, v).call(3, "eq", 0, 2).call(1, "add", 1, 3)
    a.set(2, 0).call(3, "lt", 2, 1).halt(3)
    return a.index()


@lru_cache(maxsize=None)
def stage_char(value: int, fuel: int) -> int:
    """x -> 1 iff phi_x(x) halts with ``value`` within ``fuel`` steps (a finite part of K_value)."""
    a = Asm(1)
    a.set(1, fuel).call(2, "eval", 0, 0, 1).set(3, value + 1).call(0, "eq", 2, 3).halt(0)
    return a.index()


@lru_cache(maxsize=None)
def union_char(first: int, second: int) -> int:
    a = Asm(1)
    a.set(1, first).set(2, second).copy(3, 0)
    unbounded_call(a, 4, 1, (3,), 6, "a")
    unbounded_call(a, 5, 2, (3,), 6, "b")
    a.call(4, "add", 4, 5).set(5, 0).call(0, "lt", 5, 4).halt(0)
    return a.index()


@lru_cache(maxsize=None)
def difference_char(first: int, second: int) -> int:
    """first minus second."""
    a = Asm(1)
    a.set(1, first).set(2, second).copy(3, 0)
    unbounded_call(a, 4, 1, (3,), 6, "a")
    unbounded_call(a, 5, 2, (3,), 6, "b")
    a.call(0, "monus", 4, 5).halt(0)
    return a.index()
