"""Strings over S: L-chains, flags, reduction and length-preserving sequential maps.

A chain is a tuple ``(s_n, ..., s_1)`` of element ids of S, read right to
left: ``chain[-1]`` is the first letter s_1 and ``chain[0]`` is the last
letter s_n (the "omega" of the chain).  An L-chain satisfies
``s_(i+1) <=_L s_i``; a flag is a strict L-chain.

The only sequential maps represented are the members of the self-similar
family ``Diag(u)`` and ``DiagThenBlowup(u)``; it is closed under taking
residuals at a letter.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError
from .green import GreenData

Chain = tuple


def is_lchain(green: GreenData, chain: Sequence[int]) -> bool:
    return all(green.leq_L(chain[k], chain[k + 1]) for k in range(len(chain) - 1))


def is_flag(green: GreenData, chain: Sequence[int]) -> bool:
    return all(green.lt_L(chain[k], chain[k + 1]) for k in range(len(chain) - 1))


def omega(chain: Sequence[int]) -> int:
    """The last (leftmost) letter s_n of a nonempty chain."""
    return chain[0]


def reduce(green: GreenData, chain: Sequence[int]) -> Chain:
    """Reduce an L-chain to its flag by the rules (s', s) -> s' for s' L s."""
    if not is_lchain(green, chain):
        raise InputError(f"{tuple(chain)} is not an L-chain")
    out: list[int] = []
    # walk from the first letter leftwards; a letter L-equivalent to the one
    # just kept replaces it
    for x in reversed(chain):
        if out and green.L_equiv(x, out[-1]):
            out[-1] = x
        else:
            out.append(x)
    return tuple(reversed(out))


def elementary_reduction_sites(green: GreenData, chain: Sequence[int]) -> list[int]:
    """Positions k where (chain[k], chain[k+1]) -> chain[k] applies."""
    return [k for k in range(len(chain) - 1) if green.L_equiv(chain[k], chain[k + 1])]


def apply_elementary_reduction(chain: Sequence[int], k: int) -> Chain:
    return tuple(chain[:k + 1]) + tuple(chain[k + 2:])


def reduce_randomly(green: GreenData, chain: Sequence[int], rng: random.Random) -> Chain:
    """Apply elementary reductions at random sites until none applies."""
    chain = tuple(chain)
    while True:
        sites = elementary_reduction_sites(green, chain)
        if not sites:
            return chain
        chain = apply_elementary_reduction(chain, rng.choice(sites))


def apply_diagonal(green: GreenData, chain: Sequence[int], s: int) -> Chain:
    """Entrywise right multiplication by s in S^I."""
    row = green.monoid.table
    return tuple(row[x][s] for x in chain)


def letter_generator(green: GreenData, s: int) -> Callable[[Chain], Chain]:
    """The map x -> (x Delta_s) . s."""
    def op(chain):
        return apply_diagonal(green, chain, s) + (s,)
    return op


# -- the residual family ----------------------------------------------------


@dataclass(frozen=True)
class Diag:
    """Diagonal operator Delta_u, u in S^I."""
    u: int


@dataclass(frozen=True)
class DiagThenBlowup:
    """Delta_u followed by the extended blowup operator."""
    u: int


ResidualTransformation = Diag | DiagThenBlowup


def first_letter(F, s: int, green: GreenData, blowup=None) -> int:
    """The action sigma_F on a single letter."""
    if isinstance(F, Diag):
        return green.mul(s, F.u)
    if blowup is None:
        raise InputError("DiagThenBlowup needs a blowup operator")
    return blowup.map[green.mul(s, F.u)]


def residual(F, s: int, green: GreenData, blowup=None):
    """The transformation _sF with (b . s)F = b(_sF) . sF."""
    if isinstance(F, Diag):
        return F
    if blowup is None:
        raise InputError("DiagThenBlowup needs a blowup operator")
    su = green.mul(s, F.u)
    return DiagThenBlowup(green.mul(F.u, blowup.multipliers[su]))


def residual_at_string(F, chain: Sequence[int], green: GreenData, blowup=None):
    for s in reversed(chain):
        F = residual(F, s, green, blowup)
    return F


def apply_residual_family(F, chain: Sequence[int], green: GreenData, blowup=None) -> Chain:
    memo = blowup.memo if blowup is not None else None
    key = (F, tuple(chain))
    if memo is not None:
        hit = memo.get(key)
        if hit is not None:
            return hit
    out = []
    G = F
    for s in reversed(chain):
        out.append(first_letter(G, s, green, blowup))
        G = residual(G, s, green, blowup)
    result = tuple(reversed(out))
    if memo is not None:
        memo[key] = result
    return result


def apply_sequence(parts: Sequence, chain: Sequence[int], green: GreenData, blowup=None) -> Chain:
    """Apply F_1, F_2, ... in turn."""
    for F in parts:
        chain = apply_residual_family(F, chain, green, blowup)
    return tuple(chain)


def residual_sequence(parts: Sequence, chain: Sequence[int], green: GreenData, blowup=None) -> tuple:
    """Residual of the composite F_1 F_2 ... at a string a: (_aF_1)(_(aF_1)F_2)..."""
    out = []
    chain = tuple(chain)
    for F in parts:
        out.append(residual_at_string(F, chain, green, blowup))
        chain = apply_residual_family(F, chain, green, blowup)
    return tuple(out)


# -- enumeration ------------------------------------------------------------


def enumerate_lchains(green: GreenData, max_len: int, allowed: Iterable[int] | None = None,
                      strict: bool = False) -> Iterator[Chain]:
    """All (strict) L-chains of length <= max_len over ``allowed``, depth first.

    Yields the empty chain first, then for each first letter in id order its
    extensions to the left.
    """
    elems = sorted(allowed) if allowed is not None else list(green.semigroup.elements())
    below = green.lt_L if strict else green.leq_L
    successors = {a: [b for b in elems if below(b, a)] for a in elems}

    yield ()

    def extend(chain):
        yield chain
        if len(chain) < max_len:
            for b in successors[chain[0]]:
                yield from extend((b,) + chain)

    if max_len >= 1:
        for a in elems:
            yield from extend((a,))


def random_lchain(green: GreenData, rng: random.Random, max_len: int) -> Chain:
    n = green.semigroup.order
    length = rng.randint(0, max_len)
    if length == 0:
        return ()
    chain = [rng.randrange(n)]
    while len(chain) < length:
        top = chain[0]
        choices = [b for b in range(n) if green.leq_L(b, top)]
        # favour L-equivalent letters so reductions actually happen
        same = [b for b in choices if green.L_equiv(b, top)]
        chain.insert(0, rng.choice(same if same and rng.random() < 0.5 else choices))
    return tuple(chain)


# -- membership checks ------------------------------------------------------


def check_in_checkS(green: GreenData, f: Sequence[int]) -> tuple[bool, int | None]:
    """Whether f: S -> S lies in the monoid of R-lowering, L-preserving maps
    that act on R-fixed points by one right multiplier.

    Returns the multiplier found (adjoined identity first, then ids in order).
    """
    S = green.semigroup
    n = S.order
    for s in S.elements():
        if not green.leq_R(f[s], s):
            return False, None
    for s in S.elements():
        for t in green.membersL[green.classL[s]]:
            if not green.L_equiv(f[s], f[t]):
                return False, None
    fixed = [s for s in S.elements() if green.R_equiv(f[s], s)]
    M = green.monoid.table
    for cand in [n] + list(range(n)):
        if all(M[s][cand] == f[s] for s in fixed):
            return True, cand
    return False, None


def bigwrf0_violation(F, green: GreenData, blowup=None, max_len: int = 4,
                      chains: Iterable[Chain] | None = None) -> Chain | None:
    """An L-chain on which F breaks the two-top-letters multiplier condition."""
    if max_len < 2:
        raise InputError("max_len must be at least 2")
    M = green.monoid.table
    n = green.semigroup.order
    if chains is None:
        chains = enumerate_lchains(green, max_len)
    for x in chains:
        if len(x) < 2:
            continue
        y = apply_residual_family(F, x, green, blowup)
        xn, xm = x[0], x[1]
        yn, ym = y[0], y[1]
        if green.R_equiv(xm, ym) and green.R_equiv(xn, yn):
            if not any(M[xm][s] == ym and M[xn][s] == yn for s in range(n + 1)):
                return x
    return None


def check_in_bigwrf0(F, green: GreenData, blowup=None, max_len: int = 4) -> bool:
    return bigwrf0_violation(F, green, blowup, max_len) is None


def fixed_top_violation(F, samples: Iterable[Chain], green: GreenData, blowup=None) -> Chain | None:
    """A chain whose second-to-top letter is fixed and whose top letter stays
    R-equivalent but moves, or None."""
    for x in samples:
        if len(x) < 2:
            continue
        y = apply_residual_family(F, x, green, blowup)
        if y[1] == x[1] and green.R_equiv(x[0], y[0]) and y[0] != x[0]:
            return x
    return None


def fixed_top_check(F, samples: Iterable[Chain], green: GreenData, blowup=None) -> bool:
    return fixed_top_violation(F, samples, green, blowup) is None


def reduction_commutation_violation(op: Callable[[Chain], Chain], green: GreenData,
                                    max_len: int = 4, chains: Iterable[Chain] | None = None) -> Chain | None:
    """An L-chain x with (x rho) op rho != x op rho, or None."""
    if chains is None:
        chains = enumerate_lchains(green, max_len)
    for x in chains:
        if reduce(green, op(reduce(green, x))) != reduce(green, op(x)):
            return x
    return None


def reduction_commutation_check(op: Callable[[Chain], Chain], green: GreenData, max_len: int = 4) -> bool:
    return reduction_commutation_violation(op, green, max_len) is None
