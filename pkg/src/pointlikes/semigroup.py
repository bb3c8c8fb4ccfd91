"""Finite semigroups given by Cayley tables, and transformation semigroups.

Elements are integer ids ``0..n-1``; ``table[a][b]`` is the product ``ab``.
Transformations act on the right: the word ``fg`` means "apply f, then g".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from .errors import InputError, ResourceLimitError
from .primes import PrimeSet


@dataclass(frozen=True)
class FiniteSemigroup:
    table: tuple
    identity: int | None = None

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise InputError("a semigroup needs at least one element")
        for a, row in enumerate(table):
            if len(row) != n:
                raise InputError(f"row {a} has {len(row)} entries, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise InputError(f"entry {x} in row {a} is out of range 0..{n - 1}")
        if self.identity is not None:
            e = self.identity
            if not 0 <= e < n:
                raise InputError(f"identity {e} is out of range")
            for a in range(n):
                if table[e][a] != a or table[a][e] != a:
                    raise InputError(f"{e} is not a two-sided identity (fails at {a})")

    @classmethod
    def from_table(cls, table, identity=None, check=True) -> FiniteSemigroup:
        S = cls(table, identity)
        if check:
            bad = S.associativity_violation()
            if bad is not None:
                a, b, c = bad
                raise InputError(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        return S

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def associativity_violation(self):
        """First triple (a, b, c) with (ab)c != a(bc), or None."""
        t = self.table
        for a, row in enumerate(t):
            for b, ab in enumerate(row):
                tab = t[ab]
                tb = t[b]
                for c in range(len(t)):
                    if tab[c] != row[tb[c]]:
                        return (a, b, c)
        return None

    def find_identity(self) -> int | None:
        t = self.table
        for e in self.elements():
            if all(t[e][a] == a and t[a][e] == a for a in self.elements()):
                return e
        return None

    @cached_property
    def with_identity(self) -> MonoidWithAdjoinedIdentity:
        return adjoin_identity(self)


@dataclass(frozen=True)
class MonoidWithAdjoinedIdentity(FiniteSemigroup):
    """S^I: the base table plus a fresh identity with id ``len(base)``."""

    base: FiniteSemigroup | None = None

    @property
    def identity_id(self) -> int:
        return self.identity


def multiply(S: FiniteSemigroup, a: int, b: int) -> int:
    n = S.order
    if not (0 <= a < n and 0 <= b < n):
        raise InputError(f"element ids ({a}, {b}) out of range 0..{n - 1}")
    return S.table[a][b]


def cycle_data(x: Hashable, mul: Callable) -> tuple[int, int, list]:
    """Index, period and the list of powers x, x^2, ... of x under ``mul``.

    The returned list holds the ``index + period - 1`` distinct powers.
    """
    powers = [x]
    seen = {x: 1}
    y = x
    while True:
        y = mul(y, x)
        k = len(powers) + 1
        if y in seen:
            i = seen[y]
            return i, k - i, powers
        seen[y] = k
        powers.append(y)


def omega_from_cycle(index: int, period: int, powers: list):
    # the unique k in [index, index+period) divisible by period
    k = index + (-index) % period
    return powers[k - 1]


def index_period(S: FiniteSemigroup, s: int) -> tuple[int, int]:
    """Smallest (i, p) with s^(i+p) = s^i."""
    i, p, _ = cycle_data(s, lambda a, b: S.table[a][b])
    return i, p


def omega_power(S: FiniteSemigroup, s: int) -> int:
    """The unique idempotent power of s."""
    return omega_from_cycle(*cycle_data(s, lambda a, b: S.table[a][b]))


def generated_subsemigroup(S: FiniteSemigroup, gens: Iterable[int]) -> list[int]:
    gens = sorted(set(gens))
    if not gens:
        raise InputError("need at least one generator")
    t = S.table
    found = set(gens)
    queue = deque(gens)
    while queue:
        a = queue.popleft()
        for g in gens:
            for x in (t[a][g], t[g][a]):
                if x not in found:
                    found.add(x)
                    queue.append(x)
    return sorted(found)


def adjoin_identity(S: FiniteSemigroup) -> MonoidWithAdjoinedIdentity:
    """S^I, always with a fresh identity even if S is already a monoid."""
    n = S.order
    rows = [tuple(row) + (a,) for a, row in enumerate(S.table)]
    rows.append(tuple(range(n + 1)))
    return MonoidWithAdjoinedIdentity(tuple(rows), n, S)


def gbar_pi_violation(S: FiniteSemigroup, pi: PrimeSet) -> int | None:
    """An element whose period is not a pi-number, or None."""
    for s in S.elements():
        if not pi.is_pi_number(index_period(S, s)[1]):
            return s
    return None


def is_in_Gbar_pi(S: FiniteSemigroup, pi: PrimeSet) -> bool:
    """Every subgroup of S is a pi-group.

    A group of order divisible by a prime p contains an element of order p
    (Cauchy), so it is enough to look at the period of every element.
    """
    return gbar_pi_violation(S, pi) is None


@dataclass
class TransformationSemigroup:
    """A semigroup of total maps on ``range(state_count)`` with witnessing words."""

    state_count: int
    generators: dict
    elements: list = field(default_factory=list)
    words: list = field(default_factory=list)

    def __post_init__(self):
        self.index = {f: k for k, f in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    @staticmethod
    def compose(f: tuple, g: tuple) -> tuple:
        return tuple(g[x] for x in f)

    def element_of_word(self, word: Sequence) -> tuple:
        f = self.generators[word[0]]
        for name in word[1:]:
            f = self.compose(f, self.generators[name])
        return f

    def to_semigroup(self) -> FiniteSemigroup:
        idx = self.index
        els = self.elements
        table = [[idx[self.compose(f, g)] for g in els] for f in els]
        return FiniteSemigroup(table)


def close_transformations(state_count: int, generators, max_elements: int = 100_000) -> TransformationSemigroup:
    """Close named maps under composition.

    ``generators`` is a sequence of ``(name, map)`` pairs.  Elements are found
    breadth first, so each carries a shortest witnessing word, and among those
    the lexicographically least one (letters ordered as the generators are).
    """
    gens = []
    for name, f in generators:
        f = tuple(int(x) for x in f)
        if len(f) != state_count or any(not 0 <= x < state_count for x in f):
            raise InputError(f"generator {name!r} is not a total map on {state_count} states")
        gens.append((name, f))
    if not gens:
        raise InputError("need at least one generator")

    elements: list = []
    words: list = []
    index: dict = {}
    frontier = []
    for name, f in gens:
        if f in index:
            continue
        index[f] = len(elements)
        elements.append(f)
        words.append((name,))
        frontier.append(index[f])
    while frontier:
        nxt = []
        for k in frontier:
            f = elements[k]
            for name, g in gens:
                h = tuple(g[x] for x in f)
                if h in index:
                    continue
                if len(elements) >= max_elements:
                    raise ResourceLimitError(f"transformation semigroup exceeds {max_elements} elements")
                index[h] = len(elements)
                elements.append(h)
                words.append(words[k] + (name,))
                nxt.append(index[h])
        frontier = nxt
    return TransformationSemigroup(state_count, dict(gens), elements, words)


# -- small named semigroups ------------------------------------------------


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([[(a + b) % n for b in range(n)] for a in range(n)], identity=0)


def full_transformation_monoid_2() -> FiniteSemigroup:
    """T_2 with ids 0=id, 1=swap, 2=const to the first point, 3=const to the second."""
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    idx = {m: k for k, m in enumerate(maps)}
    table = [[idx[tuple(g[x] for x in f)] for g in maps] for f in maps]
    return FiniteSemigroup(table, identity=0)


def right_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([list(range(n)) for _ in range(n)])


def right_zero_with_identity(n: int = 2) -> FiniteSemigroup:
    """Right zero band on ids 0..n-1 with an identity n adjoined."""
    return FiniteSemigroup(adjoin_identity(right_zero(n)).table, identity=n)


def all_tables(order: int):
    """Every associative Cayley table of the given order (labelled, not up to isomorphism)."""
    n = order
    cells = list(product(range(n), repeat=2))
    for values in product(range(n), repeat=n * n):
        table = [values[a * n:(a + 1) * n] for a in range(n)]
        ok = True
        for a, b in cells:
            ab = table[a][b]
            tb = table[b]
            for c in range(n):
                if table[ab][c] != table[a][tb[c]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield FiniteSemigroup(table)
