from __future__ import annotations

import dataclasses

import pytest

from conftest import NAMED_WITH_PI, PI_CHOICES, construction, corpus
from pointlikes.blowup import (construct_blowup, construct_preblowup, extend_blowup, idempotent_blowup,
                               preblowup_violations, verify_blowup_axioms)
from pointlikes.certificate import enumerate_pi_free_flags
from pointlikes.errors import CertificateFailure
from pointlikes.green import compute_green
from pointlikes.pointlike import cp_closure, to_mask
from pointlikes.primes import PrimeSet
from pointlikes.semigroup import cyclic_group, right_zero

A, B, C, I = 0, 1, 2, 3


def build(T, pi):
    cp = cp_closure(T, pi)
    g = compute_green(cp.semigroup)
    return cp, g, construct_preblowup(cp, pi, g)


def test_z2_preblowup():
    cp, g, pre = build(cyclic_group(2), PrimeSet.none())
    assert pre.map == (C, C, C)
    assert pre.multipliers == (C, C, I)
    [choice] = pre.choices
    assert choice.lclass == (A, B) and choice.lift == B and choice.multiplier == C and choice.prime == 2
    B_op = idempotent_blowup(pre)
    assert B_op.power == 1 and B_op.map == pre.map
    assert verify_blowup_axioms(B_op).ok


def test_all_pi_free_gives_identity():
    cp, g, pre = build(right_zero(3), PrimeSet.none())
    assert pre.map == tuple(range(len(cp)))
    assert all(m == g.identity for m in pre.multipliers)
    assert idempotent_blowup(pre).map == pre.map
    assert verify_blowup_axioms(pre).ok


def test_z6_pi_2_uses_order_three_lift():
    cp, g, pre = build(cyclic_group(6), PrimeSet.of(2))
    evens, odds = cp.index[to_mask([0, 2, 4])], cp.index[to_mask([1, 3, 5])]
    assert {c.prime for c in pre.choices} == {3}
    assert {c.multiplier for c in pre.choices} == {evens}
    B_op = idempotent_blowup(pre)
    assert sorted(set(B_op.map)) == sorted({evens, odds})
    assert verify_blowup_axioms(B_op).ok


def test_corrupted_multiplier_is_reported():
    cp, g, pre = build(cyclic_group(2), PrimeSet.none())
    bad = dataclasses.replace(pre, multipliers=(C, I, I), map=(C, B, C))
    report = verify_blowup_axioms(bad)
    assert not report.ok
    assert (A, B) in report.failures["multipliers"] or (B, A) in report.failures["multipliers"]
    with pytest.raises(CertificateFailure):
        idempotent_blowup(bad)


def test_extend_blowup_examples():
    cp, g, pre = build(cyclic_group(2), PrimeSet.none())
    Bhat = extend_blowup(idempotent_blowup(pre))
    assert Bhat(()) == ()
    assert Bhat((C, A)) == (C, C)
    assert Bhat((C,)) == (C,)


@pytest.mark.parametrize("name,pname", NAMED_WITH_PI)
def test_blowup_axioms_on_named(name, pname):
    c = construction(name, pname)
    report = verify_blowup_axioms(c.blowup)
    assert report.ok, {k: v for k, v in report.failures.items() if v}
    free = c.blowup.pi_free
    assert {s for s in range(len(free)) if free[s]} == set(c.blowup.map)
    Bhat = extend_blowup(c.blowup)
    for flag in enumerate_pi_free_flags(c.green, c.pi).states:
        assert Bhat(flag) == flag


@pytest.mark.parametrize("name,S", corpus())
def test_composition_law(name, S):
    for pi in PI_CHOICES.values():
        cp = cp_closure(S, pi)
        g = compute_green(cp.semigroup)
        pre = construct_preblowup(cp, pi, g)
        two = pre.then(pre)
        M = g.monoid.table
        for s in range(len(pre.map)):
            assert two.map[s] == pre.map[pre.map[s]]
            assert M[s][two.multipliers[s]] == two.map[s]
        assert not any(preblowup_violations(two).values())
        assert verify_blowup_axioms(construct_blowup(cp, pi, g)).ok
