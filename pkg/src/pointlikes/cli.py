"""Command line entry point.

Exit codes: 0 success/accepted, 1 verification failure, 2 input error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certificate import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_FLAGS, certify
from .errors import InputError, ResourceLimitError
from .formats import format_cayley, read_cayley, read_dfa, transition_semigroup
from .green import compute_green, is_pi_prime_free, schutzenberger_group
from .oracle import run_oracle
from .pointlike import DEFAULT_MAX_MEMBERS, cp_closure, from_mask, is_pointlike, maximal_pointlikes, to_mask
from .primes import PrimeSet
from .semigroup import gbar_pi_violation, index_period

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _fmt(mask: int) -> str:
    return "{" + ",".join(str(t) for t in from_mask(mask)) + "}"


def _dump(data, path: str) -> None:
    Path(path).write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")


def cmd_check(args) -> int:
    S = read_cayley(args.file)
    e = S.identity if S.identity is not None else S.find_identity()
    print(f"order {S.order}: associative")
    print(f"identity: {e if e is not None else 'none'}")
    return EXIT_OK


def cmd_green(args) -> int:
    S = read_cayley(args.file)
    pi = PrimeSet.parse(args.pi)
    g = compute_green(S)
    print(f"# J-classes of order-{S.order} semigroup, pi = {pi}")
    for j, members in enumerate(g.membersJ):
        ls = {g.classL[a] for a in members}
        rs = {g.classR[a] for a in members}
        hs = {g.classH[a] for a in members}
        gamma = schutzenberger_group(g, g.representative_H_class(j)).order
        free = is_pi_prime_free(g, members[0], pi)
        print(f"J{j}: members={members} L={len(ls)} R={len(rs)} H={len(hs)} "
              f"|Gamma_R|={gamma} pi'-free={'yes' if free else 'no'}")
    return EXIT_OK


def cmd_membership(args) -> int:
    S = read_cayley(args.file)
    pi = PrimeSet.parse(args.pi)
    bad = gbar_pi_violation(S, pi)
    if bad is None:
        print(f"member: every subgroup is a pi-group (pi = {pi})")
    else:
        print(f"not a member: element {bad} has period {index_period(S, bad)[1]} (pi = {pi})")
    return EXIT_OK


def cmd_pointlikes(args) -> int:
    T = read_cayley(args.file)
    pi = PrimeSet.parse(args.pi)
    cp = cp_closure(T, pi, args.max_cp)
    maximal = maximal_pointlikes(cp)
    print(f"CP has {len(cp)} members; maximal pointlike sets (pi = {pi}):")
    for Y in maximal:
        print("  " + _fmt(Y))
    status = EXIT_OK
    if args.query is not None:
        try:
            X = to_mask(int(tok) for tok in args.query.split(",") if tok.strip())
        except ValueError:
            raise InputError(f"bad query {args.query!r}") from None
        if X >> T.order or not X:
            raise InputError("query must be a nonempty subset of T")
        ok, Y = is_pointlike(X, cp)
        print(f"{_fmt(X)} is {'pointlike, inside ' + _fmt(Y) if ok else 'not pointlike'}")
    if args.json:
        maxset = set(maximal)
        _dump({
            "pi": pi.to_json(),
            "members": [list(from_mask(m)) for m in cp.members],
            "derivations": [list(d) + [None] * (3 - len(d)) for d in cp.derivations],
            "maximal": [m in maxset for m in cp.members],
        }, args.json)
    return status


def cmd_certify(args) -> int:
    T = read_cayley(args.file)
    pi = PrimeSet.parse(args.pi)
    cert = certify(T, pi, max_flags=args.max_flags, max_cp=args.max_cp, max_elements=args.max_elements)
    print(f"certificate: {cert.status}")
    for name, ok in sorted(cert.checks.items()):
        print(f"  {name}: {'pass' if ok else 'FAIL'}")
    if cert.note:
        print(f"  {cert.note}")
    print("maximal pointlike sets: " + " ".join(_fmt(Y) for Y in cert.maximal))
    if args.json:
        _dump(cert.to_json(), args.json)
    if cert.status == "unverified":
        return EXIT_RESOURCE
    return EXIT_OK if cert.accepted else EXIT_FAILED


def cmd_syntactic(args) -> int:
    dfa = read_dfa(args.dfa)
    S, ts = transition_semigroup(dfa)
    words = "\n".join(f"element {k}: {' '.join(map(str, w))}" for k, w in enumerate(ts.words))
    text = format_cayley(S, comment="transition semigroup\n" + words)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote order-{S.order} transition semigroup to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    T = read_cayley(args.file)
    pi = PrimeSet.parse(args.pi)
    cp = cp_closure(T, pi)
    report = run_oracle(cp, args.max_order, args.budget, tuple(args.builtin or ()))
    print(f"targets: {report.targets}, witnesses tried: {report.witnesses_tried}, "
          f"{'exhaustive' if report.exhaustive else 'sampled'}")
    print(f"failures: {len(report.failures)}")
    for f in report.failures[:10]:
        print(f"  {f}")
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pointlikes", description="Pointlike sets of finite semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a Cayley table")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("green", help="J-class report")
    c.add_argument("file")
    c.add_argument("--pi", default="none")
    c.set_defaults(func=cmd_green)

    c = sub.add_parser("membership", help="are all subgroups pi-groups?")
    c.add_argument("file")
    c.add_argument("--pi", required=True)
    c.set_defaults(func=cmd_membership)

    c = sub.add_parser("pointlikes", help="compute CP_pi(T) and its maximal members")
    c.add_argument("file")
    c.add_argument("--pi", required=True)
    c.add_argument("--json")
    c.add_argument("--query", help="comma separated subset to test")
    c.add_argument("--max-cp", type=int, default=DEFAULT_MAX_MEMBERS)
    c.set_defaults(func=cmd_pointlikes)

    c = sub.add_parser("certify", help="build and check the correctness certificate")
    c.add_argument("file")
    c.add_argument("--pi", required=True)
    c.add_argument("--max-flags", type=int, default=DEFAULT_MAX_FLAGS)
    c.add_argument("--max-cp", type=int, default=DEFAULT_MAX_MEMBERS)
    c.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    c.add_argument("--json")
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("syntactic", help="transition semigroup of a DFA")
    c.add_argument("dfa")
    c.add_argument("--out")
    c.set_defaults(func=cmd_syntactic)

    c = sub.add_parser("oracle", help="brute-force soundness check")
    c.add_argument("file")
    c.add_argument("--pi", required=True)
    c.add_argument("--max-order", type=int, default=3)
    c.add_argument("--budget", type=int, default=10_000)
    c.add_argument("--builtin", action="append", help="extra named target (Z4, Z5, Z6, T2)")
    c.set_defaults(func=cmd_oracle)
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
