import pytest

from insep.inseparable import (DisjointPair, InputError, check_increasing, check_witness, ei_witness, k_pair,
                               k_witness, oplus_semi_reduction, pushforward, semi_reduction)
from insep.recfun.asm import Asm
from insep.recfun.core import (ReSet, constant, decidable_set, finite_char, residue_char, stage_char,
                               union_char)
from insep.recfun.machine import Halted, run_index


def _doubling():
    return Asm(1).call(0, "add", 0, 0).index()


def _halving():
    a = Asm(1)
    a.set(1, 2).call(2, "mod", 0, 1).dec(2, "even").loop()
    a.label("even").call(0, "div", 0, 1).halt(0)
    return a.index()


def _candidates():
    return [decidable_set(stage_char(0, 300), "K0@300"), decidable_set(stage_char(1, 300), "K1@300"),
            decidable_set(residue_char(2, 0), "evens"), decidable_set(residue_char(2, 1), "odds"),
            decidable_set(finite_char((1, 2, 3)), "{1,2,3}"),
            decidable_set(union_char(stage_char(0, 200), residue_char(5, 1)), "K0@200+5N+1")]


def test_k_stages_disjoint():
    k = k_pair()
    left, right = k.stages(400)
    assert not left & right
    assert constant(0) in k.left.enumerate(50) or k.left.semi_contains(constant(0), 50)
    assert k.right.semi_contains(constant(1), 50)


def test_machine_witness_matches_python():
    k = k_pair()
    a, b = _candidates()[:2]
    assert ei_witness(k, a.index, b.index, 10**6) == k_witness(a.index, b.index)


@pytest.mark.parametrize("i", range(6))
def test_witness_on_decidable_candidates(i):
    k = k_pair()
    cands = _candidates()
    for j in range(len(cands)):
        a, b = cands[i], cands[j]
        n = ei_witness(k, a.index, b.index, 10**6)
        out = check_witness(k, a, b, n, 10**5)
        assert out.verification == "exact"
        assert out.ok, out.to_json()


def test_witness_outside_stage_supersets():
    # finite stages of K0, K1 are disjoint decidable sets: the witness must land outside both
    k = k_pair()
    a, b = decidable_set(stage_char(0, 500)), decidable_set(stage_char(1, 500))
    out = check_witness(k, a, b, ei_witness(k, a.index, b.index, 10**6))
    assert out.outside


def test_pushforward_doubling():
    k = k_pair()
    pf = pushforward(k, _doubling(), prefix=16, inverse=_halving())
    x = constant(0)
    assert pf.left.semi_contains(2 * x, 10**5)
    assert not pf.left.semi_contains(2 * x + 1, 10**4)
    assert not pf.right.semi_contains(2 * x, 10**4)
    slow = pushforward(k, _doubling(), prefix=16)
    assert slow.left.semi_contains(0, 10**4) == k.left.semi_contains(0, 10**4)
    # transported witness is F of the original witness on the pulled-back sets
    a, b = decidable_set(residue_char(4, 0)), decidable_set(residue_char(4, 2))
    w = run_index(pf.witness, [a.index, b.index], 10**6)
    assert isinstance(w, Halted) and w.value % 2 == 0


def test_pushforward_rejects_non_increasing():
    with pytest.raises(InputError):
        check_increasing(constant(3), 4)
    with pytest.raises(InputError):
        pushforward(k_pair(), _doubling(), 8, inverse=constant(0))
    with pytest.raises(InputError):
        ei_witness(DisjointPair(ReSet(constant(0)), ReSet(constant(0))), 0, 0, 10)


def test_semi_reduction_and_oplus():
    from insep.construct.vtheory import double_atom_program, parity_pair
    from insep.logic.registry import default_subject
    from insep.logic.oplus import oplus

    u, v = default_subject(), default_subject("E'", "V0")
    src = parity_pair()
    f1 = semi_reduction(double_atom_program(0), src, u, "U")
    f2 = semi_reduction(double_atom_program(1), src, v, "V0")
    g = oplus_semi_reduction(f1, f2, oplus(u, v))
    for n in range(12):
        side = "left" if n % 2 == 0 else "right"
        assert f1.check(n, side) and f2.check(n, side) and g.check(n, side)
        assert not g.check(n, "right" if side == "left" else "left")
