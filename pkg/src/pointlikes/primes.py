"""Sets of primes, including the set of all primes."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime, primefactors

from .errors import InputError


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes pi.  ``everything=True`` means all primes."""

    primes: frozenset = frozenset()
    everything: bool = False

    @classmethod
    def none(cls) -> PrimeSet:
        return cls()

    @classmethod
    def all(cls) -> PrimeSet:
        return cls(everything=True)

    @classmethod
    def of(cls, *ps: int) -> PrimeSet:
        for p in ps:
            if not isprime(p):
                raise InputError(f"{p} is not a prime")
        return cls(frozenset(ps))

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        """Parse ``none``, ``all`` or a comma separated list such as ``2,3``."""
        text = text.strip().lower()
        if text in ("none", "", "empty"):
            return cls.none()
        if text == "all":
            return cls.all()
        try:
            ps = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError:
            raise InputError(f"cannot parse prime set {text!r}") from None
        return cls.of(*ps)

    def __contains__(self, p: int) -> bool:
        return self.everything or p in self.primes

    def is_pi_number(self, n: int) -> bool:
        """All prime divisors of n lie in pi."""
        return all(p in self for p in primefactors(n))

    def is_pi_prime_number(self, n: int) -> bool:
        """No prime divisor of n lies in pi."""
        return not any(p in self for p in primefactors(n))

    def to_json(self):
        return "all" if self.everything else sorted(self.primes)

    def __str__(self) -> str:
        if self.everything:
            return "all"
        if not self.primes:
            return "none"
        return ",".join(str(p) for p in sorted(self.primes))
