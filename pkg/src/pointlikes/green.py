"""Green's relations, right stabilizers, Schützenberger groups and prime lifts.

All preorders are taken with respect to S^I, so ``a <=_L b`` iff ``a`` lies in
``S^I b``.  Elements of S^I are ids ``0..n``, where ``n`` is the adjoined
identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import primefactors

from .errors import InputError
from .primes import PrimeSet
from .semigroup import FiniteSemigroup, cycle_data, omega_from_cycle


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _classes_by_key(keys) -> tuple[list[int], list[list[int]]]:
    """Number equal keys by first occurrence; return (element -> class, members)."""
    ids: dict = {}
    cls = []
    members: list[list[int]] = []
    for a, k in enumerate(keys):
        if k not in ids:
            ids[k] = len(members)
            members.append([])
        cls.append(ids[k])
        members[ids[k]].append(a)
    return cls, members


@dataclass
class GreenData:
    semigroup: FiniteSemigroup
    left_ideal: list  # bitmask of S^I a, per element a
    right_ideal: list  # bitmask of a S^I
    two_sided_ideal: list  # bitmask of S^I a S^I
    classL: list
    classR: list
    classJ: list
    classH: list
    membersL: list
    membersR: list
    membersJ: list
    membersH: list
    _schutz_cache: dict = field(default_factory=dict, repr=False)

    @property
    def monoid(self):
        return self.semigroup.with_identity

    @property
    def identity(self) -> int:
        return self.semigroup.order

    def mul(self, a: int, b: int) -> int:
        """Product in S^I."""
        return self.monoid.table[a][b]

    def leq_L(self, a: int, b: int) -> bool:
        return (self.left_ideal[b] >> a) & 1 == 1

    def leq_R(self, a: int, b: int) -> bool:
        return (self.right_ideal[b] >> a) & 1 == 1

    def leq_J(self, a: int, b: int) -> bool:
        return (self.two_sided_ideal[b] >> a) & 1 == 1

    def leq_H(self, a: int, b: int) -> bool:
        return self.leq_L(a, b) and self.leq_R(a, b)

    def L_equiv(self, a: int, b: int) -> bool:
        return self.classL[a] == self.classL[b]

    def R_equiv(self, a: int, b: int) -> bool:
        return self.classR[a] == self.classR[b]

    def J_equiv(self, a: int, b: int) -> bool:
        return self.classJ[a] == self.classJ[b]

    def H_equiv(self, a: int, b: int) -> bool:
        return self.classH[a] == self.classH[b]

    def lt_L(self, a: int, b: int) -> bool:
        return self.leq_L(a, b) and not self.L_equiv(a, b)

    def lt_H(self, a: int, b: int) -> bool:
        return self.leq_H(a, b) and not self.H_equiv(a, b)

    def _matrix(self, ideals) -> np.ndarray:
        n = self.semigroup.order
        m = np.zeros((n, n), dtype=bool)
        for b, mask in enumerate(ideals):
            for a in _bits(mask):
                m[a, b] = True
        return m

    @cached_property
    def leqL(self) -> np.ndarray:
        """``leqL[a, b]`` iff a <=_L b."""
        return self._matrix(self.left_ideal)

    @cached_property
    def leqR(self) -> np.ndarray:
        return self._matrix(self.right_ideal)

    @cached_property
    def leqJ(self) -> np.ndarray:
        return self._matrix(self.two_sided_ideal)

    def H_class_of(self, a: int) -> tuple[int, ...]:
        return tuple(self.membersH[self.classH[a]])

    def representative_H_class(self, jclass: int) -> tuple[int, ...]:
        """The H-class of a J-class containing its smallest element id."""
        return self.H_class_of(self.membersJ[jclass][0])


def compute_green(S: FiniteSemigroup) -> GreenData:
    M = S.with_identity.table
    n = S.order
    left = [0] * n
    right = [0] * n
    for b in range(n):
        lm = 0
        rm = 0
        for x in range(n + 1):
            lm |= 1 << M[x][b]
            rm |= 1 << M[b][x]
        left[b] = lm
        right[b] = rm
    two = []
    for b in range(n):
        j = 0
        for a in _bits(left[b]):
            j |= right[a]
        two.append(j)
    classL, membersL = _classes_by_key(left)
    classR, membersR = _classes_by_key(right)
    classJ, membersJ = _classes_by_key(two)
    classH, membersH = _classes_by_key(list(zip(classL, classR)))
    return GreenData(S, left, right, two, classL, classR, classJ, classH,
                     membersL, membersR, membersJ, membersH)


def _check_H_class(green: GreenData, H) -> tuple[int, ...]:
    H = tuple(sorted(H))
    if not H or H != green.H_class_of(H[0]):
        raise InputError(f"{list(H)} is not an H-class")
    return H


def right_stabilizer(green: GreenData, H) -> list[int]:
    """Stab H = {s in S^I : Hs is contained in H}, as sorted S^I ids."""
    H = _check_H_class(green, H)
    hset = set(H)
    M = green.monoid.table
    return [s for s in range(green.identity + 1) if all(M[h][s] in hset for h in H)]


@dataclass(frozen=True)
class PermutationGroupOnH:
    """The Schützenberger group of H acting on the right of H.

    Permutations are tuples ``p`` with ``carrier[i] * s == carrier[p[i]]``.
    """

    carrier: tuple
    permutations: tuple
    representatives: dict  # permutation -> sorted tuple of S^I ids inducing it

    @property
    def order(self) -> int:
        return len(self.permutations)

    @property
    def identity(self) -> tuple:
        return tuple(range(len(self.carrier)))

    @staticmethod
    def compose(p: tuple, q: tuple) -> tuple:
        return tuple(q[i] for i in p)

    def permutation_order(self, p: tuple) -> int:
        k, q = 1, p
        while q != self.identity:
            q = self.compose(q, p)
            k += 1
        return k


def schutzenberger_group(green: GreenData, H) -> PermutationGroupOnH:
    H = _check_H_class(green, H)
    cached = green._schutz_cache.get(H)
    if cached is not None:
        return cached
    pos = {h: i for i, h in enumerate(H)}
    M = green.monoid.table
    reps: dict = {}
    for s in right_stabilizer(green, H):
        perm = tuple(pos[M[h][s]] for h in H)
        reps.setdefault(perm, []).append(s)
    perms = tuple(sorted(reps, key=lambda p: reps[p][0]))
    group = PermutationGroupOnH(H, perms, {p: tuple(v) for p, v in reps.items()})
    green._schutz_cache[H] = group
    return group


def is_pi_prime_free(green: GreenData, x: int, pi: PrimeSet) -> bool:
    """Whether x's J-class has a Schützenberger group that is a pi-group."""
    H = green.representative_H_class(green.classJ[x])
    return pi.is_pi_number(schutzenberger_group(green, H).order)


def pi_prime_free_elements(green: GreenData, pi: PrimeSet) -> list[bool]:
    free_j = [is_pi_prime_free(green, members[0], pi) for members in green.membersJ]
    return [free_j[j] for j in green.classJ]


def stab_agrees_on_L_class(green: GreenData, H, H2) -> bool:
    H = _check_H_class(green, H)
    H2 = _check_H_class(green, H2)
    if not green.L_equiv(H[0], H2[0]):
        raise InputError("the H-classes are not L-equivalent")
    return right_stabilizer(green, H) == right_stabilizer(green, H2)


def _p_part(m: int, p: int) -> int:
    q = 1
    while m % p == 0:
        m //= p
        q *= p
    return q


@dataclass(frozen=True)
class PrimeLift:
    element: int  # g, an element of S^I
    prime: int
    group_order: int  # p^a, the order of g as a group element
    permutation: tuple  # the permutation of H induced by g
    source: int  # the representative s the lift was built from


def prime_power_lift(green: GreenData, H, p: int) -> PrimeLift:
    """A group element g of S^I in Stab(H), of p-power order, inducing an
    order-p permutation of H.

    Picks the permutation of order p whose smallest representative s has the
    smallest id, forms the group element u = s^omega s of order m and returns
    u^(m / p^a) with p^a the p-part of m.
    """
    group = schutzenberger_group(green, H)
    if group.order % p:
        raise InputError(f"{p} does not divide |Gamma_R(H)| = {group.order}")
    h = next(q for q in group.permutations if group.permutation_order(q) == p)
    s = group.representatives[h][0]
    mul = green.mul
    s_omega = omega_from_cycle(*cycle_data(s, mul))
    u = mul(s_omega, s)
    _, m, _ = cycle_data(u, mul)
    e = m // _p_part(m, p)
    g = u
    for _ in range(e - 1):
        g = mul(g, u)
    H = group.carrier
    pos = {x: i for i, x in enumerate(H)}
    perm = tuple(pos[mul(x, g)] for x in H)
    return PrimeLift(g, p, _p_part(m, p), perm, s)


def smallest_prime_outside(n: int, pi: PrimeSet) -> int | None:
    for q in primefactors(n):
        if q not in pi:
            return q
    return None
