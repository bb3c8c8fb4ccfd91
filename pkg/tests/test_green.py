from __future__ import annotations

import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primefactors

from naive import green_partitions
from conftest import NAMED, PI_CHOICES, SMALL, corpus
from pointlikes.errors import InputError
from pointlikes.green import (compute_green, is_pi_prime_free, prime_power_lift, right_stabilizer,
                              schutzenberger_group, stab_agrees_on_L_class)
from pointlikes.pointlike import cp_closure
from pointlikes.primes import PrimeSet
from pointlikes.semigroup import FiniteSemigroup, cyclic_group, index_period

ID, SWAP, C1, C2 = range(4)
A, B, C = 0, 1, 2  # CP_none(Z2) = {0}, {1}, {0,1}


@lru_cache(maxsize=None)
def cp_z2():
    return cp_closure(cyclic_group(2), PrimeSet.none()).semigroup


def green_corpus():
    """Corpus semigroups plus the closure semigroups built over them."""
    out = corpus()
    for name in ("Z2", "Z3", "Z6", "T2"):
        for pname, pi in PI_CHOICES.items():
            out.append((f"CP_{pname}({name})", cp_closure(NAMED[name], pi).semigroup))
    return out


GREEN_CORPUS = green_corpus()


def as_sets(members):
    return {frozenset(m) for m in members}


def test_group_is_single_class():
    g = compute_green(cyclic_group(6))
    assert len(g.membersJ) == len(g.membersL) == len(g.membersR) == len(g.membersH) == 1


def test_t2_classes(t2):
    g = compute_green(t2)
    assert as_sets(g.membersJ) == {frozenset({ID, SWAP}), frozenset({C1, C2})}
    assert g.R_equiv(C1, C2) and not g.L_equiv(C1, C2)


def test_cp_z2_classes():
    g = compute_green(cp_z2())
    assert as_sets(g.membersL) == {frozenset({A, B}), frozenset({C})}
    assert g.lt_L(C, A)


def test_right_stabilizer_examples(t2):
    Z6 = cyclic_group(6)
    g = compute_green(Z6)
    assert right_stabilizer(g, range(6)) == list(range(7))
    assert right_stabilizer(compute_green(cp_z2()), [A, B]) == [A, B, 3]
    assert right_stabilizer(compute_green(t2), [C1]) == [ID, C1, 4]
    with pytest.raises(InputError):
        right_stabilizer(g, [0, 1])


def test_schutzenberger_examples(t2):
    assert schutzenberger_group(compute_green(t2), [C1]).order == 1
    G = schutzenberger_group(compute_green(cp_z2()), [A, B])
    assert G.order == 2
    swap = (1, 0)
    assert B in G.representatives[swap]
    assert min(G.representatives[swap]) == B


def test_pi_prime_free_examples(t2):
    g = compute_green(t2)
    assert is_pi_prime_free(g, C1, PrimeSet.none())
    assert not is_pi_prime_free(g, ID, PrimeSet.none())
    assert is_pi_prime_free(g, ID, PrimeSet.of(2))


def test_stab_agrees_examples():
    g = compute_green(cp_z2())
    assert stab_agrees_on_L_class(g, [A, B], [A, B])
    with pytest.raises(InputError):
        stab_agrees_on_L_class(g, [A, B], [C])


def test_prime_power_lift_examples():
    g = compute_green(cp_z2())
    lift = prime_power_lift(g, [A, B], 2)
    assert lift.element == B and lift.group_order == 2 and lift.permutation == (1, 0)
    with pytest.raises(InputError):
        prime_power_lift(g, [A, B], 3)


def test_prime_power_lift_order_twelve():
    # u of order 12, p = 2: g = u^3 has order 4 and still induces an order-2 permutation when h^2 = 1
    # Z12 on ids 0..11 sitting above a Z2 ideal on ids 12, 13 via k -> k mod 2
    def mul(a, b):
        if a < 12 and b < 12:
            return (a + b) % 12
        return 12 + (a + b) % 2
    S = FiniteSemigroup.from_table([[mul(a, b) for b in range(14)] for a in range(14)])
    g = compute_green(S)
    lift = prime_power_lift(g, (12, 13), 2)
    assert lift.source == 1
    assert lift.element == 3 and lift.group_order == 4
    assert index_period(S, lift.element) == (1, 4)
    G = schutzenberger_group(g, (12, 13))
    assert G.permutation_order(lift.permutation) == 2


@pytest.mark.parametrize("name,S", GREEN_CORPUS)
def test_partitions_match_naive(name, S):
    g = compute_green(S)
    L, R, H = green_partitions(S.table)
    assert as_sets(g.membersL) == L
    assert as_sets(g.membersR) == R
    assert as_sets(g.membersH) == H
    n = S.order
    M = S.with_identity.table
    for a, b in itertools.product(range(n), repeat=2):
        assert g.leqL[a, b] == any(M[s][b] == a for s in range(n + 1))
        assert g.leqR[a, b] == any(M[b][s] == a for s in range(n + 1))
        assert g.leqJ[a, b] == any(M[M[s][b]][u] == a for s in range(n + 1) for u in range(n + 1))
        if g.J_equiv(a, b) and g.leq_L(a, b):
            assert g.L_equiv(a, b)


@pytest.mark.parametrize("name,S", GREEN_CORPUS)
def test_schutzenberger_properties(name, S):
    g = compute_green(S)
    M = g.monoid.table
    for H in g.membersH:
        G = schutzenberger_group(g, H)
        # regular action: exactly one permutation per (h, h') pair
        assert G.order == len(H)
        for i, j in itertools.product(range(len(H)), repeat=2):
            assert sum(1 for p in G.permutations if p[i] == j) == 1
        stab = set(right_stabilizer(g, H))
        for s in range(g.identity + 1):
            assert (s in stab) == any(M[h][s] in H for h in H)
        if any(M[h][h] == h for h in H):
            # a maximal subgroup acts on itself by right translation
            assert {tuple(H.index(M[x][h]) for x in H) for h in H} == set(G.permutations)
        for H2 in g.membersH:
            if g.L_equiv(H[0], H2[0]):
                assert stab_agrees_on_L_class(g, H, H2)
                assert schutzenberger_group(g, H2).order == G.order


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL + [S for _, S in GREEN_CORPUS]))
def test_prime_lift_properties(S):
    g = compute_green(S)
    for H in g.membersH:
        G = schutzenberger_group(g, H)
        for p in (2, 3, 5):
            if G.order % p:
                continue
            lift = prime_power_lift(g, H, p)
            i, period = index_period(g.monoid, lift.element)
            assert i == 1 and period == lift.group_order
            assert primefactors(lift.group_order) == [p]
            assert G.permutation_order(lift.permutation) == p
            assert lift.element in right_stabilizer(g, H)
