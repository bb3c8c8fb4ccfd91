from __future__ import annotations

import itertools

import pytest

from pointlikes.primes import PrimeSet
from pointlikes.semigroup import (all_tables, cyclic_group, full_transformation_monoid_2,
                                  right_zero_with_identity)

PI_CHOICES = {
    "none": PrimeSet.none(),
    "2": PrimeSet.of(2),
    "3": PrimeSet.of(3),
    "all": PrimeSet.all(),
}

NAMED = {
    "Z2": cyclic_group(2),
    "Z3": cyclic_group(3),
    "Z6": cyclic_group(6),
    "T2": full_transformation_monoid_2(),
    "RZ+I": right_zero_with_identity(),
}

SMALL = [S for n in (1, 2, 3) for S in all_tables(n)]


def corpus():
    """Named semigroups followed by every associative table of order at most 3."""
    out = list(NAMED.items())
    out += [(f"order{S.order}#{k}", S) for k, S in enumerate(SMALL)]
    return out


def corpus_with_pi():
    return [(name, S, pname, pi) for (name, S), (pname, pi) in itertools.product(corpus(), PI_CHOICES.items())]


@pytest.fixture(scope="session")
def z2():
    return NAMED["Z2"]


@pytest.fixture(scope="session")
def t2():
    return NAMED["T2"]


_CONSTRUCTIONS: dict = {}


def construction(name, pname):
    """Cached flag construction for a named semigroup and prime set."""
    from pointlikes.certificate import FlagConstruction
    key = (name, pname)
    if key not in _CONSTRUCTIONS:
        S = dict(corpus())[name]
        _CONSTRUCTIONS[key] = FlagConstruction.build(S, PI_CHOICES[pname])
    return _CONSTRUCTIONS[key]


NAMED_WITH_PI = [(name, pname) for name in NAMED for pname in PI_CHOICES]
