"""The flag semigroup S^pi over S = CP_pi(T) and the certificate built on it.

States are the pi'-free flags of S together with the empty flag.  Each t in T
acts by ``x -> ((x Delta_{t}) . {t})`` extended-blowup, then reduced.  The
certificate records CP_pi(T) with derivations, the blowup data, the closed
transformation semigroup, the relation phi and the outcome of every check.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property

from .blowup import BlowupOperator, construct_blowup, verify_blowup_axioms
from .chains import (Chain, Diag, DiagThenBlowup, apply_residual_family, apply_sequence,
                     bigwrf0_violation, enumerate_lchains, is_lchain, reduce,
                     reduction_commutation_violation, residual_at_string, fixed_top_violation)
from .errors import CertificateFailure, ResourceLimitError
from .green import GreenData, compute_green, pi_prime_free_elements
from .pointlike import (DEFAULT_MAX_MEMBERS, CpResult, cp_closure, cp_invariant_violations,
                        from_mask, maximal_pointlikes)
from .primes import PrimeSet
from .semigroup import (FiniteSemigroup, TransformationSemigroup, close_transformations,
                        cycle_data)

DEFAULT_MAX_FLAGS = 20_000
DEFAULT_MAX_ELEMENTS = 50_000
DEFAULT_CHAIN_LENGTH = 4


@dataclass
class FlagStateSpace:
    states: list  # states[0] is the empty flag
    index: dict = field(init=False)

    def __post_init__(self):
        self.index = {x: k for k, x in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)


def enumerate_pi_free_flags(green: GreenData, pi: PrimeSet, cap: int = DEFAULT_MAX_FLAGS) -> FlagStateSpace:
    free = pi_prime_free_elements(green, pi)
    allowed = [s for s, ok in enumerate(free) if ok]
    states = []
    longest = 0
    for x in enumerate_lchains(green, len(allowed), allowed, strict=True):
        if len(states) >= cap:
            raise ResourceLimitError(
                f"more than {cap} pi'-free flags ({len(allowed)} pi'-free elements, "
                f"longest chain seen {longest})")
        states.append(x)
        longest = max(longest, len(x))
    return FlagStateSpace(states)


@dataclass
class FlagConstruction:
    """Everything needed to act by T on the pi'-free flags of CP_pi(T)."""

    T: FiniteSemigroup
    pi: PrimeSet
    cp: CpResult
    green: GreenData
    blowup: BlowupOperator
    space: FlagStateSpace

    @classmethod
    def build(cls, T: FiniteSemigroup, pi: PrimeSet, max_cp: int = DEFAULT_MAX_MEMBERS,
              max_flags: int = DEFAULT_MAX_FLAGS, cp: CpResult | None = None) -> FlagConstruction:
        if cp is None:
            cp = cp_closure(T, pi, max_cp)
        green = compute_green(cp.semigroup)
        blowup = construct_blowup(cp, pi, green)
        space = enumerate_pi_free_flags(green, pi, max_flags)
        return cls(T, pi, cp, green, blowup, space)

    def extended_blowup(self, chain: Chain) -> Chain:
        return apply_residual_family(DiagThenBlowup(self.green.identity), chain, self.green, self.blowup)

    def generator_chain(self, t: int, chain: Chain) -> Chain:
        """(x Delta_{t} . {t}) extended-blowup, reduced."""
        st = self.cp.singleton(t)
        M = self.green.monoid.table
        x = tuple(M[s][st] for s in chain) + (st,)
        return reduce(self.green, self.extended_blowup(x))

    def generator_map(self, t: int) -> tuple:
        idx = self.space.index
        out = []
        for x in self.space.states:
            y = self.generator_chain(t, x)
            k = idx.get(y)
            if k is None or k == 0:
                raise CertificateFailure(f"generator {t} sends {x} outside the nonempty flags", (t, x, y))
            out.append(k)
        return tuple(out)

    def generator_parts(self, t: int) -> tuple[DiagThenBlowup, Chain]:
        """The pair (sequential part, output on empty input) of the generator for t."""
        st = self.cp.singleton(t)
        g = self.green
        return DiagThenBlowup(g.mul(st, self.blowup.multipliers[st])), (self.blowup.map[st],)

    def omega_mask(self, state: int) -> int:
        x = self.space.states[state]
        return self.cp.members[x[0]] if x else 0

    def S_pi(self, max_elements: int = DEFAULT_MAX_ELEMENTS) -> TransformationSemigroup:
        gens = [(t, self.generator_map(t)) for t in self.T.elements()]
        return close_transformations(len(self.space), gens, max_elements)


def generator_for(construction: FlagConstruction, t: int) -> tuple:
    return construction.generator_map(t)


def build_S_pi(T: FiniteSemigroup, pi: PrimeSet, max_flags: int = DEFAULT_MAX_FLAGS,
               max_elements: int = DEFAULT_MAX_ELEMENTS) -> TransformationSemigroup:
    return FlagConstruction.build(T, pi, max_flags=max_flags).S_pi(max_elements)


def verify_S_pi_membership(sPi: TransformationSemigroup, pi: PrimeSet) -> tuple[bool, tuple | None]:
    """Whether every element period is a pi-number; else a witnessing word."""
    for f, word in zip(sPi.elements, sPi.words):
        _, period, _ = cycle_data(f, sPi.compose)
        if not pi.is_pi_number(period):
            return False, word
    return True, None


def phi(construction: FlagConstruction, t: int) -> list[int]:
    """Nonempty states whose omega contains t."""
    bit = 1 << t
    return [k for k in range(1, len(construction.space)) if construction.omega_mask(k) & bit]


def _preimage_times(construction: FlagConstruction, state: int, t: int) -> int:
    """(x phi^-1) t as a subset of T; the empty flag stands for the identity of T^I."""
    if state == 0:
        return 1 << t
    return construction.cp.power.product(construction.omega_mask(state), 1 << t)


def verify_relational_morphism(construction: FlagConstruction, sPi: TransformationSemigroup) -> list:
    failures = []
    for t in construction.T.elements():
        if not phi(construction, t):
            failures.append({"t": t, "reason": "t phi is empty"})
        gen = sPi.generators[t]
        for x in range(len(construction.space)):
            need = _preimage_times(construction, x, t)
            if need & ~construction.omega_mask(gen[x]):
                failures.append({"t": t, "state": list(construction.space.states[x])})
    return failures


def companion_fibers(construction: FlagConstruction, sPi: TransformationSemigroup) -> list[int]:
    """For each element f, the mask of t with (x phi^-1) t inside (x f) phi^-1 for all x."""
    c = construction
    n_states = len(c.space)
    om = [c.omega_mask(k) for k in range(n_states)]
    need = [[_preimage_times(c, x, t) for t in c.T.elements()] for x in range(n_states)]
    fibers = []
    for f in sPi.elements:
        mask = 0
        for t in c.T.elements():
            if all(need[x][t] & ~om[f[x]] == 0 for x in range(n_states)):
                mask |= 1 << t
        fibers.append(mask)
    return fibers


def verify_fibers(construction: FlagConstruction, sPi: TransformationSemigroup,
                  fibers: list[int] | None = None, max_pairs: int = 250_000) -> list:
    c = construction
    if fibers is None:
        fibers = companion_fibers(c, sPi)
    failures = []
    for k, f in enumerate(sPi.elements):
        if f[0] == 0:
            failures.append({"element": list(sPi.words[k]), "reason": "empty flag is not sent to a nonempty flag"})
            continue
        top = c.omega_mask(f[0])
        if fibers[k] & ~top:
            failures.append({"element": list(sPi.words[k]), "fiber": list(from_mask(fibers[k])),
                             "bound": list(from_mask(top))})
        if top not in c.cp:
            failures.append({"element": list(sPi.words[k]), "reason": "omega of the image of the empty flag is not in CP"})
    for t in c.T.elements():
        k = sPi.index[sPi.generators[t]]
        if not (fibers[k] >> t) & 1:
            failures.append({"t": t, "reason": "generator of t is not related to t"})
    # the companion relation has a product-closed graph
    els = sPi.elements
    if len(els) ** 2 <= max_pairs:
        T = c.T.table
        for a, f in enumerate(els):
            for b, g in enumerate(els):
                fg = sPi.index[sPi.compose(f, g)]
                for t in from_mask(fibers[a]):
                    for u in from_mask(fibers[b]):
                        if not (fibers[fg] >> T[t][u]) & 1:
                            failures.append({"pair": [list(sPi.words[a]), list(sPi.words[b])], "t": [t, u]})
    return failures


def _chain_checks(c: FlagConstruction, max_len: int) -> dict:
    """Properties of the extended blowup and of the generators on all short L-chains."""
    g = c.green
    B = c.blowup
    free = B.pi_free
    ms = c.cp.members
    out: dict = {k: [] for k in ("range", "idempotent", "firstDrops", "containment",
                                 "reductionCommutes", "bigwrf0", "fixedTop", "diagonalBigwrf0",
                                 "generatorsCommute", "generatorSideCondition", "omegaDrops")}
    chains = list(enumerate_lchains(g, max_len))
    Bh = c.extended_blowup
    for x in chains:
        y = Bh(x)
        if not (is_lchain(g, y) and all(free[s] for s in y)):
            out["range"].append(x)
        if Bh(y) != y:
            out["idempotent"].append(x)
        if x and not g.leq_L(y[-1], x[-1]):
            out["firstDrops"].append(x)
        if any(ms[a] & ~ms[b] for a, b in zip(x, y)):
            out["containment"].append(x)
    bh = DiagThenBlowup(g.identity)
    v = reduction_commutation_violation(Bh, g, chains=chains)
    if v is not None:
        out["reductionCommutes"].append(v)
    v = bigwrf0_violation(bh, g, B, max_len, chains=chains)
    if v is not None:
        out["bigwrf0"].append(v)
    v = fixed_top_violation(bh, chains, g, B)
    if v is not None:
        out["fixedTop"].append(v)
    for u in range(g.identity + 1):
        v = bigwrf0_violation(Diag(u), g, None, max_len, chains=chains)
        if v is not None:
            out["diagonalBigwrf0"].append((u, v))
    short = [x for x in chains if len(x) < max_len]
    for t in c.T.elements():
        st = c.cp.singleton(t)
        M = g.monoid.table

        def op(x, st=st):
            return Bh(tuple(M[s][st] for s in x) + (st,))
        v = reduction_commutation_violation(op, g, chains=short)
        if v is not None:
            out["generatorsCommute"].append((t, v))
        hat, bar = c.generator_parts(t)
        for s in g.semigroup.elements():
            if not g.leq_L(apply_residual_family(hat, (s,), g, B)[0], bar[0]):
                out["generatorSideCondition"].append((t, s))
        for x in c.space.states[1:]:
            y = c.generator_chain(t, x)
            if not g.leq_R(y[0], x[0]):
                out["omegaDrops"].append((t, x))
    return out


def composite_parts(c: FlagConstruction, word) -> tuple[tuple, Chain]:
    """(hat, bar) of the product of generator pairs along ``word``.

    Uses hat(fg) = hat(f) . residual of hat(g) at bar(f), and
    bar(fg) = bar(f) hat(g) . bar(g).
    """
    g, B = c.green, c.blowup
    hat, bar = c.generator_parts(word[0])
    hats = (hat,)
    for t in word[1:]:
        h2, b2 = c.generator_parts(t)
        hats = hats + (residual_at_string(h2, bar, g, B),)
        bar = apply_residual_family(h2, bar, g, B) + b2
    return hats, bar


def composite_violations(c: FlagConstruction, sPi: TransformationSemigroup, max_elements: int = 2000) -> list:
    """Check every element (up to a cap) as a product in the chain semigroup:
    its reduced action agrees with the flag action, the side condition on single
    letters holds, and nothing is sent to the empty flag."""
    g, B = c.green, c.blowup
    failures = []
    for k, (f, word) in enumerate(zip(sPi.elements, sPi.words)):
        if k >= max_elements:
            break
        hats, bar = composite_parts(c, word)
        if not bar:
            failures.append({"element": list(word), "reason": "empty output on empty input"})
            continue
        for s in g.semigroup.elements():
            if not g.leq_L(apply_sequence(hats, (s,), g, B)[0], bar[0]):
                failures.append({"element": list(word), "letter": s})
                break
        for x, state in enumerate(c.space.states):
            y = reduce(g, apply_sequence(hats, state, g, B) + bar)
            if c.space.index.get(y) != f[x]:
                failures.append({"element": list(word), "state": list(state)})
                break
    return failures


def table_sha256(T: FiniteSemigroup) -> str:
    from .formats import format_cayley
    return hashlib.sha256(format_cayley(T).encode()).hexdigest()


@dataclass
class Certificate:
    T: FiniteSemigroup
    pi: PrimeSet
    cp: CpResult
    construction: FlagConstruction | None = None
    sPi: TransformationSemigroup | None = None
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    status: str = "rejected"
    note: str = ""

    @property
    def accepted(self) -> bool:
        return self.status == "accepted"

    @cached_property
    def maximal(self) -> list[int]:
        return maximal_pointlikes(self.cp)

    def fail(self, check: str, detail) -> None:
        self.counterexamples.append({"check": check, "detail": _jsonable(detail)})

    def to_json(self) -> dict:
        cp = self.cp
        maximal = set(self.maximal)
        out = {
            "input": {"n": self.T.order, "tableSha256": table_sha256(self.T)},
            "pi": self.pi.to_json(),
            "cp": {
                "members": [list(from_mask(m)) for m in cp.members],
                "derivations": [list(d) + [None] * (3 - len(d)) for d in cp.derivations],
                "maximal": [m in maximal for m in cp.members],
            },
            "checks": dict(self.checks),
            "details": _jsonable(self.details),
            "counterexamples": self.counterexamples,
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        c = self.construction
        if c is not None:
            ident = c.green.identity
            out["blowup"] = {
                "power": c.blowup.power,
                "map": list(c.blowup.map),
                "multipliers": [None if m == ident else m for m in c.blowup.multipliers],
                "lclasses": [{"lclass": list(ch.lclass), "hClass": list(ch.h_class), "prime": ch.prime,
                              "lift": ch.lift, "multiplier": ch.multiplier} for ch in c.blowup.choices],
            }
        if self.sPi is not None and c is not None:
            out["sPi"] = {
                "numStates": len(c.space),
                "numElements": len(self.sPi),
                "states": [list(x) for x in c.space.states],
                "generators": {str(t): list(self.sPi.generators[t]) for t in self.T.elements()},
            }
            out["phi"] = {str(t): phi(c, t) for t in self.T.elements()}
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


CHECK_NAMES = ("associativity", "cpClosure", "blowupAxioms", "sPiMembership", "relationalMorphism", "fibers")


def certify(T: FiniteSemigroup, pi: PrimeSet, max_flags: int = DEFAULT_MAX_FLAGS,
            max_cp: int = DEFAULT_MAX_MEMBERS, max_elements: int = DEFAULT_MAX_ELEMENTS,
            chain_length: int = DEFAULT_CHAIN_LENGTH) -> Certificate:
    """Compute CP_pi(T) and check every ingredient of its correctness witness.

    Raises ResourceLimitError only when CP itself exceeds ``max_cp``; an
    overflow of the flag space or of S^pi yields status "unverified".
    """
    cp = cp_closure(T, pi, max_cp)
    cert = Certificate(T, pi, cp)
    checks = cert.checks

    assoc = T.associativity_violation()
    s_assoc = cp.semigroup.associativity_violation()
    checks["associativity"] = assoc is None and s_assoc is None
    if assoc is not None:
        cert.fail("associativity", {"triple": assoc})
    if s_assoc is not None:
        cert.fail("associativity", {"cpTriple": s_assoc})

    problems = cp_invariant_violations(cp)
    checks["cpClosure"] = not problems
    for p in problems:
        cert.fail("cpClosure", p)

    try:
        c = FlagConstruction.build(T, pi, max_flags=max_flags, cp=cp)
    except ResourceLimitError as exc:
        cert.status = "unverified"
        cert.note = f"not independently verified: {exc}"
        return cert
    except CertificateFailure as exc:
        checks["blowupAxioms"] = False
        cert.fail("blowupAxioms", {"message": str(exc), "counterexample": exc.counterexample})
        _finish(cert)
        return cert
    cert.construction = c

    report = verify_blowup_axioms(c.blowup)
    chain_report = _chain_checks(c, chain_length)
    cert.details["blowup"] = {k: not v for k, v in report.failures.items()}
    cert.details["chains"] = {k: not v for k, v in chain_report.items()}
    checks["blowupAxioms"] = report.ok and not any(chain_report.values())
    for name, bad in list(report.failures.items()) + list(chain_report.items()):
        if bad:
            cert.fail("blowupAxioms", {name: bad[:5]})

    try:
        sPi = c.S_pi(max_elements)
    except CertificateFailure as exc:
        checks["sPiMembership"] = False
        cert.fail("sPiMembership", {"message": str(exc), "counterexample": exc.counterexample})
        _finish(cert)
        return cert
    except ResourceLimitError as exc:
        cert.status = "unverified"
        cert.note = f"not independently verified: {exc}"
        return cert
    cert.sPi = sPi

    member, word = verify_S_pi_membership(sPi, pi)
    composite = composite_violations(c, sPi)
    cert.details["sPi"] = {"periodsArePiNumbers": member, "chainSemigroupProducts": not composite}
    checks["sPiMembership"] = member and not composite
    if not member:
        cert.fail("sPiMembership", {"word": list(word)})
    for f in composite[:5]:
        cert.fail("sPiMembership", f)

    rel = verify_relational_morphism(c, sPi)
    checks["relationalMorphism"] = not rel
    for f in rel[:5]:
        cert.fail("relationalMorphism", f)

    fib = verify_fibers(c, sPi)
    checks["fibers"] = not fib
    for f in fib[:5]:
        cert.fail("fibers", f)

    _finish(cert)
    return cert


def _finish(cert: Certificate) -> None:
    for name in CHECK_NAMES:
        cert.checks.setdefault(name, False)
    cert.status = "accepted" if all(cert.checks[k] for k in CHECK_NAMES) else "rejected"
