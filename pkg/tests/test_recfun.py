import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_program
from insep.recfun.asm import Asm
from insep.recfun.builtins import pair, unpair
from insep.recfun.core import (ReSet, adder, constant, decidable_set, difference_char, diverge, finite_char,
                               fixed_point, halt_if_even, halts_within, identity, quine_transform, residue_char,
                               stage, successor, union_char)
from insep.recfun.machine import (DIVERGE, OUT_OF_FUEL, Halted, MachineError, Program, decode, encode,
                                  is_well_formed, parse_program, program_from_json, run, run_index, smn)


def test_basic_programs():
    assert run_index(identity(), [7], 10) == Halted(7)
    assert run_index(successor(), [7], 10) == Halted(8)
    assert run_index(constant(5), [0], 10) == Halted(5)
    assert run_index(adder(), [3, 4], 10) == Halted(7)
    assert run_index(diverge(), [0], 1000) is OUT_OF_FUEL
    assert run_index(halt_if_even(), [4], 100) == Halted(0)
    assert run_index(halt_if_even(), [3], 100) is OUT_OF_FUEL


def test_text_round_trip():
    p = Asm(2).call(2, "add", 0, 1).dec(2, "end").inc(0).label("x").halt(0).build()
    assert parse_program(p.to_text()) == p
    assert program_from_json(p.to_json()) == p
    assert program_from_json({"index": encode(p)}) == p


def test_parse_errors():
    with pytest.raises(MachineError):
        parse_program("inc 0")
    with pytest.raises(MachineError):
        parse_program("jmp 5")
    with pytest.raises(MachineError):
        parse_program("call r0 add r1")


def test_every_number_is_an_index():
    for n in range(300):
        p = decode(n)
        assert p is DIVERGE or encode(p) == n
    assert not is_well_formed(0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_encode_decode(seed, arity):
    p = random_program(random.Random(seed), arity)
    assert decode(encode(p)) == p


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 30), min_size=1, max_size=3), st.lists(st.integers(0, 30), max_size=2))
def test_smn_agrees(seed, fixed, rest):
    p = random_program(random.Random(seed), len(fixed) + len(rest))
    i = encode(p)
    j = smn(i, fixed)
    shift = len(fixed) + len(rest)
    assert run_index(j, rest, 500 + shift) == run(p, fixed + rest, 500)


def test_run_checks_arity():
    with pytest.raises(MachineError):
        run(decode(adder()), [1], 10)
    with pytest.raises(MachineError):
        run(decode(adder()), [1, -1], 10)


def test_eval_is_charged_to_the_caller():
    inner = diverge()
    prog = Asm(0).set(0, inner).set(1, 0).set(2, 50).call(3, "eval", 0, 1, 2).halt(3).index()
    assert run_index(prog, [], 1000) == Halted(0)
    assert run_index(prog, [], 20) is OUT_OF_FUEL


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_pairing(x, y):
    assert unpair(pair(x, y)) == (x, y)


def test_fixed_point_quine():
    n = fixed_point(quine_transform())
    assert run_index(n, [3], 10**5) == Halted(n)


def test_fixed_point_of_constant_transform():
    t = Asm(1).set(0, successor()).halt(0).index()
    n = fixed_point(t)
    assert run_index(n, [41], 10**5) == Halted(42)


def test_stage_is_monotone_and_cached():
    s1, s2 = stage(halt_if_even(), 20), stage(halt_if_even(), 40)
    assert s1 <= s2
    assert s2 == frozenset(range(0, 41, 2))
    assert halts_within(halt_if_even(), 4, 100) and not halts_within(halt_if_even(), 5, 100)


def test_decidable_sets():
    evens = decidable_set(residue_char(2, 0), "evens")
    assert evens.contains(10) and not evens.contains(7)
    assert evens.semi_contains(10, 1000) and not evens.semi_contains(7, 1000)
    fin = ReSet(0, finite_char((3, 5)))
    assert fin.contains(5) and not fin.contains(4)
    u = ReSet(0, union_char(residue_char(3, 0), finite_char((4,))))
    assert [n for n in range(10) if u.contains(n)] == [0, 3, 4, 6, 9]
    d = ReSet(0, difference_char(residue_char(2, 0), finite_char((4,))))
    assert [n for n in range(8) if d.contains(n)] == [0, 2, 6]
    with pytest.raises(ValueError):
        ReSet(halt_if_even()).contains(3)


def test_program_validation():
    with pytest.raises(MachineError):
        Program(1, ((9, 0),))
