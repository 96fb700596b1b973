"""Command line: replay the worked constructions and run checkers on JSON bundles.

Exit codes: 0 every check passed, 1 some check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys

from .algebra import norm_equation_search
from .brauer import deuring_criterion, exponent, sum_zero
from .certify import (
    BiquadraticObstructionCert,
    CyclicObstructionCert,
    check_biquadratic_obstruction,
    check_cyclic_obstruction,
)
from .factorset import verify_abelian_r2
from .io import (
    BundleError,
    build_algebra,
    build_automorphisms,
    build_field,
    build_invariants,
    encode_alg_elem,
    load_json,
    validate,
)
from .report import VerificationReport, digest_of
from .worked import (
    MUTATIONS_8,
    MUTATIONS_9,
    MUTATIONS_16,
    FactorSetBundle,
    run_example8,
    run_example9,
    run_example16,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
KINDS = ("factorset", "invariants", "certificate", "normsearch")


def check_factorset(data: dict) -> VerificationReport:
    rep = VerificationReport(command="check factorset", digest=digest_of(data))
    fb = FactorSetBundle(data)
    for k, st in enumerate(fb.sigma_tilde, start=1):
        bad = st.relation_failures()
        rep.add(f"automorphism: sigma{k}~ respects the defining relations", not bad, "; ".join(bad))
    rep.extend(verify_abelian_r2(fb.factor_set()), "relation: ")
    return rep


def check_invariants(data: dict) -> VerificationReport:
    validate(data, "invariants")
    rep = VerificationReport(command="check invariants", digest=digest_of(data))
    iv, places = build_invariants(data)
    ok = sum_zero(iv)
    rep.add("invariants: sum to zero", ok, f"sum = {sum(iv.entries.values()) % 1}")
    if ok:
        rep.values["exponent"] = exponent(iv)
    rep.values["local_indices"] = {p.label: iv.local_index(p) for p in iv.places}
    if "perm" in data:
        try:
            perm = {places[a]: places[b] for a, b in data["perm"].items()}
        except KeyError as exc:
            raise BundleError(f"permutation mentions undeclared place {exc}") from exc
        try:
            res = deuring_criterion(iv, perm, data.get("check_residue_size", False))
        except ValueError as exc:
            raise BundleError(str(exc)) from exc
        rep.add("deuring: permutation preserves invariants", res)
    return rep


def check_certificate(data: dict) -> VerificationReport:
    validate(data, "certificate")
    rep = VerificationReport(command="check certificate", digest=digest_of(data))
    fields = {k: v for k, v in data.items() if k not in ("type", "description")}
    try:
        if data["type"] == "cyclic":
            verdict = check_cyclic_obstruction(CyclicObstructionCert(**fields))
        else:
            verdict = check_biquadratic_obstruction(BiquadraticObstructionCert(**fields))
    except (TypeError, ValueError) as exc:
        raise BundleError(f"certificate: {exc}") from exc
    rep.extend(verdict.report)
    rep.notes.append(verdict.conclusion)
    rep.notes.extend(verdict.notes)
    return rep


def check_normsearch(data: dict, bound: int) -> VerificationReport:
    validate(data, "normsearch")
    rep = VerificationReport(command="check normsearch", digest=digest_of(data))
    K = build_field(data["field"])
    auts = build_automorphisms(K, data["automorphisms"])
    if data["sigma"] not in auts:
        raise BundleError(f"unknown automorphism {data['sigma']!r}")
    A = build_algebra(K, data["algebra"])
    try:
        lam = norm_equation_search(A, auts[data["sigma"]], bound, denominator=data.get("denominator", 4),
                                   side=data.get("side", "j"))
    except ValueError as exc:
        raise BundleError(str(exc)) from exc
    rep.values["bound"] = bound
    if lam is None:
        rep.add("normsearch: solution", False, f"none found with height bound {bound}")
    else:
        rep.add("normsearch: solution", True)
        names = list(K.tags) if hasattr(K, "tags") else []
        rep.values["lambda"] = encode_alg_elem(lam, names) if names else str(lam)
    return rep


def cmd_check(path: str, kind: str, bound: int = 2) -> VerificationReport:
    data = load_json(path)
    if kind == "factorset":
        return check_factorset(data)
    if kind == "invariants":
        return check_invariants(data)
    if kind == "certificate":
        return check_certificate(data)
    if kind == "normsearch":
        return check_normsearch(data, bound)
    raise BundleError(f"unknown kind {kind!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncprod", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--verbose", action="store_true", help="show details and notes for every check")
    for name, muts, helptext in (
        ("example8", MUTATIONS_8, "quaternion algebra over Q(sqrt3, sqrt-7): index 8, exponent 8"),
        ("example9", MUTATIONS_9, "cyclic algebra over the real cubic field: index 9, exponent 9"),
        ("example16", MUTATIONS_16, "scalar extension by sqrt37: index 16, exponent 8"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--bundle", help="replace the shipped bundle")
        p.add_argument("--mutate", choices=sorted(muts), help="apply one perturbation to the data")
    p = sub.add_parser("check", parents=[common], help="run one checker on a JSON bundle")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--bundle", required=True)
    p.add_argument("--bound", type=int, default=2, help="height bound for normsearch (default 2)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    runners = {"example8": run_example8, "example9": run_example9, "example16": run_example16}
    try:
        if args.command == "check":
            if args.bound < 0:
                raise BundleError("--bound must be non-negative")
            rep = cmd_check(args.bundle, args.kind, args.bound)
        else:
            data = load_json(args.bundle) if args.bundle else None
            rep = runners[args.command](data, args.mutate)
    except BundleError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(rep.to_json() if args.json else rep.to_text(args.verbose))
    return EXIT_PASS if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
