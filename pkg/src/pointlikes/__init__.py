"""Pointlike sets of finite semigroups for the pseudovarieties of semigroups
whose subgroups are pi-groups, with a checkable certificate."""

from .certificate import Certificate, certify
from .errors import CertificateFailure, InputError, ResourceLimitError
from .formats import parse_cayley, read_cayley
from .green import compute_green
from .pointlike import cp_closure, from_mask, is_pointlike, maximal_pointlikes, to_mask
from .primes import PrimeSet
from .semigroup import FiniteSemigroup

__all__ = [
    "Certificate", "CertificateFailure", "FiniteSemigroup", "InputError", "PrimeSet",
    "ResourceLimitError", "certify", "compute_green", "cp_closure", "from_mask",
    "is_pointlike", "maximal_pointlikes", "parse_cayley", "read_cayley", "to_mask",
]
