"""Deliberately simple reference implementations used as test oracles.

Nothing here shares code with the package beyond the Cayley table itself.
"""

from __future__ import annotations

from itertools import product


def set_product(table, X, Y):
    return frozenset(table[x][y] for x in X for y in Y)


def powers(table, Z):
    """Distinct powers Z, Z^2, ... in order until the first repeat."""
    seen = []
    P = Z
    while P not in seen:
        seen.append(P)
        P = set_product(table, P, Z)
    return seen, seen.index(P)


def is_group_of_order_prime_to(table, Z, pi_primes, everything=False):
    seq, start = powers(table, Z)
    if start != 0:
        return False
    period = len(seq)
    if everything:
        return period == 1
    return all(period % p for p in pi_primes) if period > 1 else True


def plus_star(table, Z):
    seq, start = powers(table, Z)
    period = len(seq) - start
    # the idempotent of the cycle is the power whose exponent is a multiple of period
    k = next(i for i in range(start, len(seq)) if (i + 1) % period == 0)
    E = seq[k]
    union = frozenset().union(*seq)
    return set_product(table, E, union)


def naive_cp(table, pi_primes=(), everything=False, unconditional=False):
    """Saturate until nothing changes, recomputing everything each round."""
    n = len(table)
    members = {frozenset([t]) for t in range(n)}
    while True:
        new = set(members)
        for X, Y in product(members, repeat=2):
            new.add(set_product(table, X, Y))
        for Z in members:
            if unconditional or is_group_of_order_prime_to(table, Z, pi_primes, everything):
                new.add(plus_star(table, Z))
        if new == members:
            return members
        members = new


def left_ideal(table, a):
    n = len(table)
    return frozenset([a]) | {table[s][a] for s in range(n)}


def right_ideal(table, a):
    n = len(table)
    return frozenset([a]) | {table[a][s] for s in range(n)}


def green_partitions(table):
    """L, R, H classes as sets of frozensets, by direct ideal comparison."""
    n = len(table)
    Ls = {a: left_ideal(table, a) for a in range(n)}
    Rs = {a: right_ideal(table, a) for a in range(n)}
    L = {frozenset(b for b in range(n) if Ls[b] == Ls[a]) for a in range(n)}
    R = {frozenset(b for b in range(n) if Rs[b] == Rs[a]) for a in range(n)}
    H = {frozenset(b for b in range(n) if Ls[b] == Ls[a] and Rs[b] == Rs[a]) for a in range(n)}
    return L, R, H


def period_of(table, s):
    seq = [s]
    while True:
        nxt = table[seq[-1]][s]
        if nxt in seq:
            return len(seq) - seq.index(nxt)
        seq.append(nxt)
