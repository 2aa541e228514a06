import json
import random
from pathlib import Path

import pytest

from helpers import Structure
from insep.construct.tei import (FilterSet, IdealSet, eet_from_tei, eet_from_tei_mirror, expected_case,
                                 fresh_atom_eet, fresh_atom_witness, nucleus_sets, tei_from_eet,
                                 tei_from_eet_mirror, tei_oplus_index, tei_witness_oplus, z_indices)
from insep.construct.vtheory import (build_V, extended_F, extended_F_inverse, sampled_consistency,
                                     weaker_theory)
from insep.construct.xset import build_x, evidence_bundle, replay, replay_at, sample_jx_theory
from insep.janiczak.profiles import ResourceError
from insep.logic.godel import godel, ungodel
from insep.logic.parser import parse
from insep.logic.registry import T_DEFAULT, base_theory, default_subject
from insep.logic.syntax import Not, SizeAtom
from insep.recfun.machine import Halted, run_index

GOLDEN = Path(__file__).parent / "golden" / "xbuild_depth2.json"


@pytest.fixture(scope="module")
def xb():
    return build_x(default_subject(), 2)


# -- X --------------------------------------------------------------------------


def test_golden_is_byte_identical(xb):
    text = json.dumps(xb.to_json(), sort_keys=True, indent=1) + "\n"
    assert text == GOLDEN.read_text()


def test_f_has_gaps(xb):
    f = xb.x_prefix(2)
    assert f[0] == 0
    assert all(b >= a + 2 for a, b in zip(f, f[1:]))
    assert xb.in_x(2) and not xb.in_x(3) and not xb.in_x(1)


@pytest.mark.parametrize("i", [0, 1])
def test_constant_translations_against_brute_force(xb, i):
    # tau_0, tau_1 send E and = to constants, so translated theorems have a fixed truth value;
    # the least one that is false in some (any) structure is the one compute_t must pick
    n = 1
    world = Structure([1, 2, 3])
    m_star = next(m for m in range(500) if not world.holds(xb.translated(m, i)))
    assert Structure([4]).holds(xb.translated(m_star, i)) is False
    for j in range(2 ** n):
        tv = xb.compute_t(n, i, j)
        assert tv.m == m_star and tv.t == 0


def test_hand_replay_of_first_step(xb):
    # tau_0 collapses everything to one point: the theorem picked is false there, so its
    # translation is refutable outright and no atom of X is needed (t = 0, F(1) = 2)
    tv = xb.compute_t(1, 0, 0)
    assert tv.phi == parse("~(exists y0. forall y1. E(y0,y1))")
    assert tv.nf.is_false()
    assert xb.compute_f(1, 0) == 2 == xb.F[1]


def test_depth_limit(xb, monkeypatch):
    monkeypatch.setenv("INSEP_DEPTH_LIMIT", "2")
    with pytest.raises(ResourceError):
        xb.compute_f(3, 5)


def test_replays(xb):
    rng = random.Random(1)
    for n_star in (0, 1):
        ev = replay(xb, n_star, sample_jx_theory(xb.F, rng))
        assert ev.ok, ev.claims
    ev = replay_at(xb, 37, 3, sample_jx_theory([0, 2], rng))
    assert ev.ok and ev.b == 5 and ev.tvalue.t > 0


def test_evidence_bundle_is_reproducible(xb):
    a = [e.to_json() for e in evidence_bundle(xb, 2, seed=4)]
    b = [e.to_json() for e in evidence_bundle(xb, 2, seed=4)]
    assert a == b and all(all(e["claims"].values()) for e in a)


# -- V and T ---------------------------------------------------------------------


def test_extended_F_and_inverse():
    f, g = extended_F((0, 2, 4)), extended_F_inverse((0, 2, 4))
    for n in range(12):
        y = run_index(f, [n], 10**4).value
        assert y == 2 * n
        assert run_index(g, [y], 10**4).value == n
    assert not isinstance(run_index(g, [7], 10**4), Halted)


def test_v_members_and_consistency():
    vb = build_V(extended_F((0, 2, 4)), extended_F_inverse((0, 2, 4)))
    y, z = vb.members()
    assert vb.theory.proves(SizeAtom(y, "E'"))
    assert vb.theory.proves(Not(SizeAtom(z, "E'")))
    assert all(sampled_consistency(vb, random.Random(0), count=3))


def test_weaker_theory_semi_reduction():
    wt = weaker_theory(default_subject(), samples=0)
    for n in range(8):
        assert wt.ei.check(n, "left" if n % 2 == 0 else "right")
    assert wt.theory.proves(parse("P -> A 0"))
    assert not wt.theory.proves(parse("A 0"))


# -- the race ---------------------------------------------------------------------


@pytest.mark.parametrize("ctx,d1,d2,case", [
    ("true", 0, 0, "a"), ("~P", 300, 0, "b"), ("P", 0, 300, "c"), ("P -> A 3", 0, 0, "a"),
])
def test_race(ctx, d1, d2, case):
    x, y = nucleus_sets(T_DEFAULT, parse(ctx))
    w1, w2 = fresh_atom_witness(0, d1), fresh_atom_witness(1, d2)
    out = tei_witness_oplus(x.index, y.index, w1, w2)
    assert out.case == case
    assert (out.case, out.stage) == expected_case(x.index, y.index, w1, w2)
    machine = run_index(tei_oplus_index(w1, w2), [x.index, y.index], 10**7)
    assert isinstance(machine, Halted) and machine.value == out.value
    assert not x.contains(out.value) and not y.contains(out.value)


def test_z_sets():
    x, y = nucleus_sets(T_DEFAULT)
    k0, k1, k2, k3 = z_indices(x.index, y.index)
    a0 = godel(SizeAtom(0))
    assert isinstance(run_index(k0, [a0], 10**4), Halted)  # P -> A 0 is a theorem
    assert not isinstance(run_index(k1, [a0], 10**4), Halted)


# -- tEI <-> EET -------------------------------------------------------------------


@pytest.mark.parametrize("ctx", [None, "A 1", "~A 3 & A 5"])
def test_transforms(ctx):
    base = T_DEFAULT
    t = base_theory(base)
    phi = None if ctx is None else parse(ctx)
    context = [] if phi is None else [phi]
    x, y = nucleus_sets(base, phi)
    g = eet_from_tei(fresh_atom_witness(0))
    out = run_index(g, [x.index], 10**6)
    s = ungodel(out.value)
    assert s is not None and not t.proves(s, context) and not t.proves(Not(s), context)
    assert out.value == run_index(fresh_atom_witness(0), list(eet_from_tei_mirror(0, x.index)), 10**6).value
    h = tei_from_eet(fresh_atom_eet(0), base)
    back = run_index(h, [x.index, y.index], 10**6)
    assert back.value == run_index(fresh_atom_eet(0), [tei_from_eet_mirror(base, x.index, y.index)], 10**6).value
    assert not x.contains(back.value) and not y.contains(back.value)


def test_filter_and_ideal():
    x, y = nucleus_sets(T_DEFAULT, parse("A 1"))
    assert all(FilterSet(x, T_DEFAULT).check_stage(60, samples=8).values())
    assert all(IdealSet(y, T_DEFAULT).check_stage(60, samples=8).values())
