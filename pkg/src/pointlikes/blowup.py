"""Blowup operators on S = CP_pi(T).

A preblowup operator is ``s -> s m_s`` with a right multiplier ``m_s`` in S^I
that is constant on L-classes; it fixes the pi'-free elements, strictly
H-lowers the others, and only enlarges elements as subsets of T.  The
multipliers come from prime-power lifts in the Schützenberger groups of the
non pi'-free L-classes; an idempotent power of the preblowup is a blowup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .chains import Chain, DiagThenBlowup, apply_residual_family, check_in_checkS
from .errors import CertificateFailure
from .green import (GreenData, pi_prime_free_elements, prime_power_lift,
                    schutzenberger_group, smallest_prime_outside)
from .pointlike import CpResult, _omega_plus_star
from .primes import PrimeSet


@dataclass(frozen=True)
class LClassChoice:
    """The data fixed for one non pi'-free L-class."""
    lclass: tuple
    h_class: tuple
    prime: int
    lift: int  # g_L, an element of S
    multiplier: int  # m = g_L^(omega+*), an element of S


@dataclass
class BlowupOperator:
    cp: CpResult
    green: GreenData
    pi: PrimeSet
    map: tuple
    multipliers: tuple  # S^I ids; the adjoined identity is green.identity
    choices: list = field(default_factory=list)
    power: int = 1  # which functional power of the preblowup this is
    memo: dict = field(default_factory=dict, repr=False)

    @cached_property
    def pi_free(self) -> list[bool]:
        return pi_prime_free_elements(self.green, self.pi)

    def is_idempotent(self) -> bool:
        b = self.map
        return all(b[b[s]] == b[s] for s in range(len(b)))

    def then(self, other: BlowupOperator) -> BlowupOperator:
        """Apply self first, then other; multiplier m_s n_(s m_s)."""
        mul = self.green.mul
        m, n = self.multipliers, other.multipliers
        return BlowupOperator(
            self.cp, self.green, self.pi,
            tuple(other.map[self.map[s]] for s in range(len(self.map))),
            tuple(mul(m[s], n[self.map[s]]) for s in range(len(self.map))),
            self.choices, self.power + other.power)


def construct_preblowup(cp: CpResult, pi: PrimeSet, green: GreenData) -> BlowupOperator:
    S = green.semigroup
    n = S.order
    identity = green.identity
    free = pi_prime_free_elements(green, pi)
    multipliers = [identity] * n
    choices = []
    for members in green.membersL:
        if free[members[0]]:
            continue
        H = green.H_class_of(members[0])
        order = schutzenberger_group(green, H).order
        p = smallest_prime_outside(order, pi)
        lift = prime_power_lift(green, H, p)
        g_mask = cp.members[lift.element]
        m_mask = _omega_plus_star(cp.power, g_mask)
        m = cp.index.get(m_mask)
        if m is None:
            raise CertificateFailure(f"omega+* of lift {lift.element} is not in CP", lift.element)
        for s in members:
            multipliers[s] = m
        choices.append(LClassChoice(tuple(members), H, p, lift.element, m))
    M = green.monoid.table
    bmap = tuple(M[s][multipliers[s]] for s in range(n))
    return BlowupOperator(cp, green, pi, bmap, tuple(multipliers), choices)


def preblowup_violations(B: BlowupOperator) -> dict[str, list]:
    """Failures of the four preblowup axioms, keyed by axiom."""
    green = B.green
    free = B.pi_free
    M = green.monoid.table
    ms = B.cp.members
    out: dict[str, list] = {"fixes_pi_free": [], "lowers_others": [], "enlarges": [], "multipliers": []}
    for s in range(len(B.map)):
        sb = B.map[s]
        if free[s] and sb != s:
            out["fixes_pi_free"].append(s)
        if not free[s] and not green.lt_H(sb, s):
            out["lowers_others"].append(s)
        if ms[s] & ~ms[sb]:
            out["enlarges"].append(s)
        if M[s][B.multipliers[s]] != sb:
            out["multipliers"].append(s)
        for t in green.membersL[green.classL[s]]:
            if B.multipliers[t] != B.multipliers[s]:
                out["multipliers"].append((s, t))
    return out


def idempotent_blowup(pre: BlowupOperator, max_power: int | None = None) -> BlowupOperator:
    """The first functional power B^k of ``pre`` with B^k B^k = B^k."""
    if max_power is None:
        max_power = len(pre.map) + 1
    B = pre
    while True:
        bad = {k: v for k, v in preblowup_violations(B).items() if v}
        if bad:
            raise CertificateFailure(f"power {B.power} violates preblowup axioms: {bad}", bad)
        if B.is_idempotent():
            return B
        if B.power >= max_power:
            raise CertificateFailure(f"no idempotent power up to {max_power}")
        B = B.then(pre)


def construct_blowup(cp: CpResult, pi: PrimeSet, green: GreenData) -> BlowupOperator:
    return idempotent_blowup(construct_preblowup(cp, pi, green))


@dataclass
class BlowupReport:
    failures: dict

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def verify_blowup_axioms(B: BlowupOperator) -> BlowupReport:
    green = B.green
    free = B.pi_free
    M = green.monoid.table
    ms = B.cp.members
    n = len(B.map)
    failures = preblowup_violations(B)
    failures["idempotent"] = [s for s in range(n) if B.map[B.map[s]] != B.map[s]]
    in_check, _ = check_in_checkS(green, B.map)
    failures["in_checkS"] = [] if in_check else ["B is not in the monoid of admissible maps"]
    image = set(B.map)
    failures["image_is_pi_free"] = [s for s in range(n) if (s in image) != free[s]]
    lifts, fixed = [], []
    for s in range(n):
        m = B.multipliers[s]
        for y in range(n):
            if not green.leq_L(y, s):
                continue
            ym = M[y][m]
            if ms[y] & ~ms[ym]:
                lifts.append((y, s))
            if free[s] and ym != y:
                fixed.append((y, s))
    failures["below_enlarged"] = lifts
    failures["below_fixed"] = fixed
    return BlowupReport(failures)


def extend_blowup(B: BlowupOperator) -> Callable[[Chain], Chain]:
    """The string extension: empty -> empty, (b . s) -> (b Delta_(m_s)) extended . sB."""
    F = DiagThenBlowup(B.green.identity)

    def evaluate(chain):
        return apply_residual_family(F, chain, B.green, B)
    return evaluate
