"""Arithmetic in the power semigroup P(T) and the saturation CP_pi(T).

Subsets of T are int bitmasks: bit t is set iff t belongs to the subset.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InputError, ResourceLimitError
from .primes import PrimeSet
from .semigroup import FiniteSemigroup, cycle_data, omega_from_cycle

DEFAULT_MAX_MEMBERS = 200_000


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for t in elements:
        m |= 1 << t
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    t = 0
    while mask:
        if mask & 1:
            out.append(t)
        mask >>= 1
        t += 1
    return tuple(out)


def canonical_key(mask: int):
    """Order subsets by size, then by their sorted element tuples."""
    return (mask.bit_count(), from_mask(mask))


class PowerSemigroup:
    """Multiplication of subsets of T, with per-element row masks precomputed."""

    def __init__(self, T: FiniteSemigroup):
        self.T = T
        n = T.order
        # row[x][Y] would be too big; keep row masks of single products
        self._single = [[1 << T.table[x][y] for y in range(n)] for x in range(n)]
        self._cache: dict = {}

    def product(self, X: int, Y: int) -> int:
        key = (X, Y)
        r = self._cache.get(key)
        if r is not None:
            return r
        ys = from_mask(Y)
        r = 0
        for x in from_mask(X):
            row = self._single[x]
            for y in ys:
                r |= row[y]
        if len(self._cache) < 1_000_000:
            self._cache[key] = r
        return r

    def cycle(self, Z: int):
        return cycle_data(Z, self.product)


def subset_product(T: FiniteSemigroup, X: int, Y: int) -> int:
    if not X or not Y:
        raise InputError("subset product needs nonempty subsets")
    if X >> T.order or Y >> T.order:
        raise InputError("subset has elements outside T")
    return _power(T).product(X, Y)


def _power(T: FiniteSemigroup) -> PowerSemigroup:
    # memoized on the (immutable) semigroup instance
    P = T.__dict__.get("_power_semigroup")
    if P is None:
        P = PowerSemigroup(T)
        T.__dict__["_power_semigroup"] = P
    return P


def _omega_plus_star(P: PowerSemigroup, Z: int) -> int:
    index, period, powers = P.cycle(Z)
    union = 0
    for W in powers:
        union |= W
    return P.product(omega_from_cycle(index, period, powers), union)


def omega_plus_star(T: FiniteSemigroup, Z: int) -> int:
    """Z^omega times the union of all positive powers of Z."""
    if not Z:
        raise InputError("omega_plus_star needs a nonempty subset")
    return _omega_plus_star(_power(T), Z)


def _cyclic_pi_prime(P: PowerSemigroup, Z: int, pi: PrimeSet) -> bool:
    index, period, _ = P.cycle(Z)
    return index == 1 and pi.is_pi_prime_number(period)


def generates_cyclic_pi_prime_group(T: FiniteSemigroup, Z: int, pi: PrimeSet) -> bool:
    """Z is a group element of P(T) whose cyclic group has order prime to pi."""
    if not Z:
        raise InputError("empty subset")
    return _cyclic_pi_prime(_power(T), Z, pi)


@dataclass
class CpResult:
    """Members of CP_pi(T) in canonical order, with one derivation each.

    Derivations are tuples ``("singleton", t)``, ``("product", i, j)`` or
    ``("omega_star", i)``, with i, j indices into ``members``.
    """

    T: FiniteSemigroup
    pi: PrimeSet
    members: list
    derivations: list

    def __post_init__(self):
        self.index = {m: k for k, m in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self.index

    def singleton(self, t: int) -> int:
        return self.index[1 << t]

    @cached_property
    def power(self) -> PowerSemigroup:
        return _power(self.T)

    @cached_property
    def semigroup(self) -> FiniteSemigroup:
        """CP_pi(T) as an abstract semigroup on member indices."""
        prod = self.power.product
        idx = self.index
        ms = self.members
        return FiniteSemigroup([[idx[prod(X, Y)] for Y in ms] for X in ms])

    def mask_of(self, s: int) -> int:
        """Subset of T for a member id; the adjoined identity maps to 0."""
        return self.members[s] if s < len(self.members) else 0

    def order_in_closure(self) -> list[int]:
        """Member indices ordered so that every derivation refers backwards.

        Raises ValueError if the derivation record is cyclic.
        """
        deps = [d[1:] if d[0] != "singleton" else () for d in self.derivations]
        placed = [False] * len(self.members)
        order: list[int] = []
        progress = True
        while progress:
            progress = False
            for k, ds in enumerate(deps):
                if not placed[k] and all(placed[d] for d in ds):
                    placed[k] = True
                    order.append(k)
                    progress = True
        if len(order) != len(self.members):
            raise ValueError("cyclic derivation")
        return order


def cp_closure(T: FiniteSemigroup, pi: PrimeSet, max_members: int = DEFAULT_MAX_MEMBERS) -> CpResult:
    """Smallest subsemigroup of P(T) containing the singletons and closed under
    Z -> Z^(omega+*) for every Z generating a cyclic pi'-group.
    """
    P = _power(T)
    found: dict = {}  # mask -> derivation in discovery numbering
    order: list = []
    queue: deque = deque()

    def add(mask, derivation):
        if mask in found:
            return
        if len(order) >= max_members:
            raise ResourceLimitError(f"CP closure exceeds {max_members} members")
        found[mask] = (len(order), derivation)
        order.append(mask)
        queue.append(mask)
        # amalgamate eagerly on insertion
        if _cyclic_pi_prime(P, mask, pi):
            add(_omega_plus_star(P, mask), ("omega_star", found[mask][0]))

    for t in range(T.order):
        add(1 << t, ("singleton", t))

    processed: list = []
    while queue:
        X = queue.popleft()
        processed.append(X)
        i = found[X][0]
        for Y in processed:
            j = found[Y][0]
            add(P.product(X, Y), ("product", i, j))
            add(P.product(Y, X), ("product", j, i))

    members = sorted(order, key=canonical_key)
    renumber = {found[m][0]: k for k, m in enumerate(members)}
    derivations = []
    for m in members:
        d = found[m][1]
        if d[0] == "singleton":
            derivations.append(d)
        else:
            derivations.append((d[0],) + tuple(renumber[x] for x in d[1:]))
    return CpResult(T, pi, members, derivations)


def is_pointlike(X: int, cp: CpResult) -> tuple[bool, int | None]:
    """Whether X lies below some member; the witness is the smallest such member."""
    if not X:
        raise InputError("empty subset")
    for Y in cp.members:
        if X & ~Y == 0:
            return True, Y
    return False, None


def maximal_pointlikes(cp: CpResult) -> list[int]:
    ms = cp.members
    return [Y for Y in ms if not any(Z != Y and Y & ~Z == 0 for Z in ms)]


def cp_invariant_violations(cp: CpResult) -> list[str]:
    """Re-check the defining closure properties and every recorded derivation."""
    P = cp.power
    problems = []
    ms = cp.members
    for t in range(cp.T.order):
        if (1 << t) not in cp:
            problems.append(f"singleton {{{t}}} missing")
    for X in ms:
        for Y in ms:
            if P.product(X, Y) not in cp:
                problems.append(f"product of {from_mask(X)} and {from_mask(Y)} missing")
                break
        if _cyclic_pi_prime(P, X, cp.pi) and _omega_plus_star(P, X) not in cp:
            problems.append(f"omega+* of {from_mask(X)} missing")
    for k, d in enumerate(cp.derivations):
        kind = d[0]
        if kind == "singleton":
            ok = ms[k] == 1 << d[1]
        elif kind == "product":
            ok = P.product(ms[d[1]], ms[d[2]]) == ms[k]
        elif kind == "omega_star":
            Z = ms[d[1]]
            ok = _cyclic_pi_prime(P, Z, cp.pi) and _omega_plus_star(P, Z) == ms[k]
        else:
            ok = False
        if not ok:
            problems.append(f"derivation {d} of member {k} is invalid")
    try:
        cp.order_in_closure()
    except ValueError:
        problems.append("derivations are cyclic")
    return problems
