"""Brute-force soundness checks at tiny scale.

Enumerates small semigroups in the target pseudovariety and relational
morphisms into them, and confirms that none of them separates a member of
the computed closure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .pointlike import CpResult, from_mask
from .primes import PrimeSet
from .semigroup import FiniteSemigroup, all_tables, cyclic_group, full_transformation_monoid_2, is_in_Gbar_pi

EXHAUSTIVE_LIMIT = 12

BUILTIN_TARGETS = {
    "Z4": lambda: cyclic_group(4),
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "T2": full_transformation_monoid_2,
}


def enumerate_small_Gbar_pi(max_order: int, pi: PrimeSet, builtins=()) -> list[FiniteSemigroup]:
    if max_order > 3 and not builtins:
        raise InputError("exhaustive enumeration is limited to order 3; name built-in targets for more")
    out = []
    seen = set()
    for n in range(1, min(max_order, 3) + 1):
        for S in all_tables(n):
            if is_in_Gbar_pi(S, pi) and S.table not in seen:
                seen.add(S.table)
                out.append(S)
    for name in builtins:
        try:
            S = BUILTIN_TARGETS[name]()
        except KeyError:
            raise InputError(f"unknown built-in target {name!r}") from None
        if is_in_Gbar_pi(S, pi) and S.table not in seen:
            seen.add(S.table)
            out.append(S)
    return out


@dataclass(frozen=True)
class RelationalMorphismWitness:
    """A product-closed relation R in T x target that projects onto T.

    ``graph`` is a bitmask over pairs, bit ``t * |target| + s`` for (t, s).
    """
    T: FiniteSemigroup
    target: FiniteSemigroup
    graph: int

    def pairs(self) -> list[tuple[int, int]]:
        m = self.target.order
        return [divmod(k, m) for k in from_mask(self.graph)]

    def fiber_masks(self) -> list[int]:
        """For each s in the target, the mask of t related to it."""
        m = self.target.order
        fib = [0] * m
        for t, s in self.pairs():
            fib[s] |= 1 << t
        return fib

    def violations(self) -> list[str]:
        out = []
        pairs = self.pairs()
        if {t for t, _ in pairs} != set(self.T.elements()):
            out.append("projection onto T is not surjective")
        m = self.target.order
        for t, s in pairs:
            for u, v in pairs:
                k = self.T.table[t][u] * m + self.target.table[s][v]
                if not (self.graph >> k) & 1:
                    out.append(f"({t},{s})({u},{v}) leaves the relation")
                    return out
        return out


class _ProductSpace:
    def __init__(self, T: FiniteSemigroup, target: FiniteSemigroup):
        self.m = target.order
        self.size = T.order * self.m
        self.full_projection = [0] * T.order
        prod = []
        for k in range(self.size):
            t, s = divmod(k, self.m)
            self.full_projection[t] |= 1 << k
            prod.append([T.table[t][u] * self.m + target.table[s][v]
                         for u in range(T.order) for v in range(self.m)])
        self.prod = prod

    def close(self, gens: int) -> int:
        members = list(from_mask(gens))
        mask = gens
        i = 0
        while i < len(members):
            a = members[i]
            pa = self.prod[a]
            for b in members[:i + 1]:
                for c in (pa[b], self.prod[b][a]):
                    if not (mask >> c) & 1:
                        mask |= 1 << c
                        members.append(c)
            i += 1
        return mask

    def projects_onto(self, mask: int) -> bool:
        return all(mask & row for row in self.full_projection)


def enumerate_relational_morphisms(T: FiniteSemigroup, target: FiniteSemigroup, budget: int = 10_000,
                                   seed: int = 0) -> tuple[list[RelationalMorphismWitness], bool]:
    """Relational morphisms T -> target, and whether the list is exhaustive.

    Exhaustive when |T| * |target| <= 12; otherwise ``budget`` random
    generator selections (a random function T -> target plus random extra
    pairs) are closed under products, and the full relation is added.
    """
    space = _ProductSpace(T, target)
    graphs = set()
    if space.size <= EXHAUSTIVE_LIMIT:
        for mask in range(1, 1 << space.size):
            if space.projects_onto(mask) and space.close(mask) == mask:
                graphs.add(mask)
        exhaustive = True
    else:
        rng = random.Random(seed)
        m = target.order
        tried = set()
        graphs.add((1 << space.size) - 1)
        for _ in range(budget):
            gens = 0
            for t in T.elements():
                gens |= 1 << (t * m + rng.randrange(m))
            density = rng.choice((0.0, 0.05, 0.15, 0.3))
            for k in range(space.size):
                if rng.random() < density:
                    gens |= 1 << k
            if gens in tried:
                continue
            tried.add(gens)
            graphs.add(space.close(gens))
        exhaustive = False
    return [RelationalMorphismWitness(T, target, g) for g in sorted(graphs)], exhaustive


def separated_member(cp: CpResult, witness: RelationalMorphismWitness) -> int | None:
    """A closure member not contained in any single fiber of the witness."""
    fibers = witness.fiber_masks()
    for Y in cp.members:
        if not any(Y & ~F == 0 for F in fibers):
            return Y
    return None


def oracle_check(cp: CpResult, witnesses) -> bool:
    return all(separated_member(cp, w) is None for w in witnesses)


@dataclass
class OracleReport:
    witnesses_tried: int
    targets: int
    exhaustive: bool
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def run_oracle(cp: CpResult, max_order: int = 3, budget: int = 10_000, builtins=(), seed: int = 0) -> OracleReport:
    targets = enumerate_small_Gbar_pi(max_order, cp.pi, builtins)
    tried = 0
    exhaustive = True
    failures = []
    for k, target in enumerate(targets):
        witnesses, exh = enumerate_relational_morphisms(cp.T, target, budget, seed + k)
        exhaustive = exhaustive and exh
        for w in witnesses:
            tried += 1
            bad = w.violations()
            if bad:
                failures.append({"target": [list(r) for r in target.table], "reason": bad[0]})
                continue
            Y = separated_member(cp, w)
            if Y is not None:
                failures.append({"target": [list(r) for r in target.table],
                                 "graph": w.pairs(), "member": list(from_mask(Y))})
    return OracleReport(tried, len(targets), exhaustive, failures)
