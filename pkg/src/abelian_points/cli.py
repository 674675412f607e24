"""Command-line interface: classify, groups, check, oracle, witness, corpus.

Exit codes: 0 success / semantic yes, 1 semantic no, 2 invalid input,
3 internal invariant violation (including oracle/theorem mismatch).
Output is deterministic byte-for-byte for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .abgroup import format_group, group_to_json, parse_group
from .classify import (
    ClassificationResult,
    decide_case1,
    decide_case2,
    decide_group,
    enumerate_groups,
)
from .errors import (
    DepthExhaustedError,
    InternalInvariantError,
    InvalidInputError,
)
from .lattice import (
    conjugate_into_lattice,
    frobenius_model,
    oracle_realized_set,
    witness_case2,
    witness_case3,
    witness_search_case1,
)
from .matrices import (
    block_diag,
    charpoly,
    cokernel_exponents,
    identity_matrix,
    mat_sub,
    scalar_matrix,
    snf,
)
from .numeric import factorize, is_prime, valuation
from .polygon import newton_polygon
from .polynomial import (
    Case1,
    Case2,
    Case3,
    Case4,
    WeilPolynomial,
    detect_shape,
    substitute_one_minus_t,
    validate_weil,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def _parse_int_list(text: str, what: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok))
        except ValueError:
            raise InvalidInputError(f"bad {what} entry {tok!r}", code="parse-error")
    return out


def _weil_from_args(args) -> WeilPolynomial:
    if args.poly is not None and (args.a1 is not None or args.a2 is not None):
        raise InvalidInputError("pass either --poly or --a1/--a2, not both")
    if args.poly is not None:
        coeffs = _parse_int_list(args.poly, "coefficient")
        if len(coeffs) != 5:
            raise InvalidInputError(
                f"--poly needs 5 descending coefficients, got {len(coeffs)}"
            )
    elif args.a1 is not None and args.a2 is not None:
        coeffs = [1, args.a1, args.a2, args.a1 * args.q, args.q * args.q]
    else:
        raise InvalidInputError("pass --poly or both --a1 and --a2")
    return validate_weil(args.q, coeffs)


def _fmt_vec(vec) -> str:
    return ",".join(str(x) for x in vec)


def _fmt_vecs(vecs) -> str:
    return "; ".join(_fmt_vec(v) for v in vecs)


def _fmt_factorization(n: int) -> str:
    if n == 1:
        return "1"
    return " * ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(n)
    )


def _poly_descending(poly) -> list[int]:
    return [poly.coefficient(i) for i in range(poly.degree, -1, -1)]


def _shape_factors_text(shape) -> str:
    if isinstance(shape, Case1):
        return "squarefree (no repeated roots)"
    if isinstance(shape, Case2):
        return f"({shape.quadratic})^2"
    sign = "+" if shape.sigma > 0 else "-"
    if isinstance(shape, Case3):
        return f"({shape.quadratic}) * (t {sign} {shape.s})^2"
    return f"(t {sign} {shape.s})^4"


def _shape_to_json(shape) -> dict:
    out: dict = {"case": shape.case}
    if isinstance(shape, Case2):
        out["quadratic"] = _poly_descending(shape.quadratic)
    elif isinstance(shape, Case3):
        out["quadratic"] = _poly_descending(shape.quadratic)
        out["sigma"] = shape.sigma
        out["s"] = shape.s
    elif isinstance(shape, Case4):
        out["sigma"] = shape.sigma
        out["s"] = shape.s
    return out


def _classify_dict(w: WeilPolynomial, shape) -> dict:
    order = w.group_order()
    return {
        "q": w.q,
        "p": w.p,
        "n": w.n,
        "poly": _poly_descending(w.polynomial()),
        "valid": True,
        "case": shape.case,
        "shape": _shape_to_json(shape),
        "f1": order,
        "f1_factorization": [[p, e] for p, e in factorize(order)],
    }


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def cmd_classify(args) -> int:
    w = _weil_from_args(args)
    shape = detect_shape(w)
    if args.json:
        _emit_json(_classify_dict(w, shape))
        return EXIT_OK
    order = w.group_order()
    print(f"polynomial: {w.polynomial()}")
    print(f"q: {w.q} = {w.p}^{w.n}")
    print("valid: yes")
    print(f"case: {shape.case}")
    print(f"factors: {_shape_factors_text(shape)}")
    print(f"f(1): {order} = {_fmt_factorization(order)}")
    return EXIT_OK


def _groups_json(w: WeilPolynomial, result: ClassificationResult) -> dict:
    payload = _classify_dict(w, result.shape)
    payload["groups"] = [group_to_json(g) for g in result.groups]
    payload["per_prime"] = {
        str(ell): [list(v) for v in vecs] for ell, vecs in result.per_prime.items()
    }
    if result.case2_splits is not None:
        payload["case2_splittings"] = {
            str(ell): {
                _fmt_vec(vec): [list(pair) for pair in split]
                for vec, split in splits.items()
            }
            for ell, splits in result.case2_splits.items()
        }
    shape = result.shape
    if isinstance(shape, (Case1, Case2)):
        base = (
            w.polynomial() if isinstance(shape, Case1) else shape.quadratic
        )
        payload["newton_polygons"] = {
            str(ell): newton_polygon(substitute_one_minus_t(base), ell).to_json()
            for ell, _ in factorize(result.order)
        }
    return payload


def cmd_groups(args) -> int:
    w = _weil_from_args(args)
    result = enumerate_groups(w)
    if args.json:
        _emit_json(_groups_json(w, result))
        return EXIT_OK
    for g in result.groups:
        print(format_group(g))
    return EXIT_OK


def cmd_check(args) -> int:
    w = _weil_from_args(args)
    group = parse_group(args.group)
    verdict = decide_group(w, group)
    if args.json:
        _emit_json(
            {
                "group": list(group.invariants),
                "verdict": "YES" if verdict.ok else "NO",
                "reason": verdict.reason,
            }
        )
        return EXIT_OK if verdict.ok else EXIT_NO
    if verdict.ok:
        print("YES")
        return EXIT_OK
    print(f"NO: {verdict.reason}")
    return EXIT_NO


def _theorem_vectors(w: WeilPolynomial, ell: int):
    result = enumerate_groups(w)
    return result.per_prime.get(ell, (((0,) * 4),))


def cmd_oracle(args) -> int:
    w = _weil_from_args(args)
    if not is_prime(args.ell):
        raise InvalidInputError(f"--ell must be prime, got {args.ell}")
    report = oracle_realized_set(w, args.ell, depth=args.depth, jobs=args.jobs)
    theorem = _theorem_vectors(w, args.ell)
    match = set(report.realized) == set(theorem)
    if args.json:
        payload = report.to_json()
        payload["theorem"] = [list(v) for v in theorem]
        payload["match"] = match
        _emit_json(payload)
    else:
        print(
            f"ell={report.ell} depth={report.depth} lattices={report.lattice_count}"
        )
        print(f"realized: {_fmt_vecs(report.realized)}")
        print(f"theorem: {_fmt_vecs(theorem)}")
        print("MATCH" if match else "MISMATCH")
    return EXIT_OK if match else EXIT_INTERNAL


def _witness_matrix(w: WeilPolynomial, ell: int, exps: tuple[int, ...], depth):
    shape = detect_shape(w)
    if isinstance(shape, Case1):
        np = newton_polygon(substitute_one_minus_t(w.polynomial()), ell)
        if not decide_case1(np, exps):
            raise InvalidInputError(f"vector {exps} is not admissible at ell={ell}")
        lat = witness_search_case1(w, ell, exps, depth=depth)
        f_mat = frobenius_model(shape, w)
        return mat_sub(
            identity_matrix(4), conjugate_into_lattice(f_mat, lat.matrix)
        )
    if isinstance(shape, Case2):
        ok, split = decide_case2(shape.quadratic, ell, exps)
        if not ok:
            raise InvalidInputError(f"vector {exps} is not admissible at ell={ell}")
        return block_diag(
            witness_case2(shape.quadratic, ell, split[0]),
            witness_case2(shape.quadratic, ell, split[1]),
        )
    if isinstance(shape, Case3):
        return witness_case3(w, ell, exps)
    # case 4: 1 - F is alpha * identity
    alpha = shape.alpha
    expected = (valuation(ell, alpha),) * 4
    if exps != expected:
        raise InvalidInputError(
            f"vector {exps} is not admissible at ell={ell}; case 4 admits only {expected}"
        )
    return scalar_matrix(alpha, 4)


def cmd_witness(args) -> int:
    w = _weil_from_args(args)
    if not is_prime(args.ell):
        raise InvalidInputError(f"--ell must be prime, got {args.ell}")
    exps = tuple(sorted(_parse_int_list(args.exponents, "exponent")))
    if len(exps) != 4 or any(m < 0 for m in exps):
        raise InvalidInputError("--exponents needs four nonnegative integers")
    try:
        matrix = _witness_matrix(w, args.ell, exps, args.depth)
    except InvalidInputError as err:
        if args.json:
            _emit_json({"admissible": False, "reason": str(err)})
        else:
            print(f"NO: {err}")
        return EXIT_NO
    char = charpoly(matrix)
    invariants = snf(matrix).invariants
    cok = cokernel_exponents(matrix, args.ell)
    if char != substitute_one_minus_t(w.polynomial()) or cok != exps:
        raise InternalInvariantError("witness failed its consistency checks")
    if args.json:
        _emit_json(
            {
                "ell": args.ell,
                "exponents": list(exps),
                "matrix": [list(row) for row in matrix],
                "char": _poly_descending(char),
                "snf": list(invariants),
            }
        )
        return EXIT_OK
    print(f"case: {detect_shape(w).case}")
    print(f"ell: {args.ell}")
    print(f"exponents: {_fmt_vec(exps)}")
    print("matrix:")
    for row in matrix:
        print(" ".join(str(x) for x in row))
    print(f"char: {_fmt_vec(_poly_descending(char))}")
    print(f"snf: {_fmt_vec(invariants)}")
    return EXIT_OK


def _default_corpus_lines() -> list[str]:
    text = (
        resources.files("abelian_points").joinpath("data/corpus.txt").read_text()
    )
    return text.splitlines()


def cmd_corpus(args) -> int:
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = _default_corpus_lines()
    total = 0
    oracle_checks = 0
    mismatches = 0
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InvalidInputError(f"bad corpus line {raw!r}", code="parse-error")
        q_text, coeff_text = line.split(":", 1)
        try:
            q = int(q_text.strip())
        except ValueError:
            raise InvalidInputError(f"bad corpus q {q_text!r}", code="parse-error")
        coeffs = _parse_int_list(coeff_text, "coefficient")
        w = validate_weil(q, coeffs)
        result = enumerate_groups(w)
        total += 1
        groups_text = " | ".join(format_group(g) for g in result.groups)
        print(
            f"q={q} poly={coeff_text.strip()} case={result.shape.case} "
            f"f1={result.order} groups={groups_text}"
        )
        eligible = [
            ell for ell, _ in factorize(result.order) if w.q % ell != 0
        ]
        if not eligible:
            print("  oracle: no prime of f(1) away from the characteristic")
            continue
        for ell in eligible:
            report = oracle_realized_set(w, ell, depth=args.depth, jobs=args.jobs)
            theorem = result.per_prime.get(ell, (((0,) * 4),))
            ok = set(report.realized) == set(theorem)
            oracle_checks += 1
            if not ok:
                mismatches += 1
            print(
                f"  ell={ell} depth={report.depth} lattices={report.lattice_count} "
                f"realized={_fmt_vecs(report.realized)} "
                f"{'MATCH' if ok else 'MISMATCH'}"
            )
    print(
        f"summary: {total} polynomials, {oracle_checks} oracle checks, "
        f"{mismatches} mismatches"
    )
    return EXIT_OK if mismatches == 0 else EXIT_INTERNAL


def _add_poly_flags(sub) -> None:
    sub.add_argument("--q", type=int, required=True, help="prime power of the base field")
    sub.add_argument("--poly", help="five descending coefficients, e.g. 1,0,3,0,4")
    sub.add_argument("--a1", type=int, help="short form: coefficient of t^3")
    sub.add_argument("--a2", type=int, help="short form: coefficient of t^2")
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelian-points",
        description=(
            "Decide and enumerate the groups of rational points on abelian "
            "surfaces over a finite field within one isogeny class."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="validate and report the factorization shape")
    _add_poly_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("groups", help="enumerate all admissible groups")
    _add_poly_flags(p)
    p.set_defaults(func=cmd_groups)

    p = sub.add_parser("check", help="decide whether one group occurs")
    _add_poly_flags(p)
    p.add_argument("--group", required=True, help="invariant factors, e.g. 2,4")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="brute-force lattice cokernels and compare")
    _add_poly_flags(p)
    p.add_argument("--ell", type=int, required=True, help="prime not dividing q")
    p.add_argument("--depth", type=int, default=None, help="lattice depth bound")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("witness", help="explicit matrix realizing one exponent vector")
    _add_poly_flags(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--exponents", required=True, help="four integers, e.g. 0,0,1,1")
    p.add_argument("--depth", type=int, default=None, help="search depth (case 1)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("corpus", help="run the bundled cross-check corpus")
    p.add_argument("--file", help="corpus file (default: bundled)")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as err:
        print(f"error[{err.code}]: {err}", file=sys.stderr)
        return EXIT_INVALID
    except DepthExhaustedError as err:
        print(f"error[{err.code}]: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except InternalInvariantError as err:
        print(f"error[{err.code}]: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
