"""Command line front end.

Subcommands: generate (curve pair), jzero (both j-invariant zero), corollary
(curve against its own quadratic twist), elementary (single curve), verify
(recheck a certificate bundle), identity-check (the symbolic suite).

Human-readable progress goes to stderr; certificate JSON goes to stdout or
the --output file.  Exit codes: 0 full success, 1 usage or validation
errors, 2 partial results (a search or iteration budget ran out while the
underlying statements guarantee more exist).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .exactnum import format_rational, parse_rational
from .polyident import (
    verify_disc_identity,
    verify_point_identity,
    verify_weierstrass_identity,
    weierstrass_identity_defect,
)
from .twistgen import (
    Config,
    ROUTE_GENERAL,
    ROUTE_JZERO,
    SearchExhausted,
    TwistCertificate,
    bundle_from_dict,
    bundle_to_dict,
    corollary_mode,
    elementary_generate,
    generate,
    jzero_generate,
    prepare_pair,
    verify_bundle,
)
from .weierstrass import Curve, format_cubic


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for partial results
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_curve(text: str) -> Curve:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"curve format is a,b with rational entries: {text!r}")
    return Curve(parse_rational(parts[0]), parse_rational(parts[1]))


def _progress(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def _emit(bundle: dict, output: Optional[str]) -> None:
    text = json.dumps(bundle, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
        _progress(f"wrote {output}")
    else:
        sys.stdout.write(text)


def _config(args: argparse.Namespace) -> Config:
    return Config(
        target_count=args.count,
        max_iterations=args.max_iterations,
        lambda_search_bound=args.lambda_bound,
        factor_effort=args.effort,
        prime_start=args.prime_start,
    )


def _report_route(pp) -> None:
    _progress(f"route: {pp.route} (lambda = {format_rational(pp.scale)})")
    if pp.route == ROUTE_JZERO:
        _progress(
            f"prime: {pp.prime}, seed value t: {pp.t_value}",
            f"plane cubic: {pp.cubic}",
            f"seed point: ({format_rational(pp.seed.x)}, {format_rational(pp.seed.y)})",
        )
    elif pp.route == ROUTE_GENERAL:
        model = pp.cubic.to_weierstrass()
        seed_x, seed_y = pp.seed.affine()
        image = pp.cubic.transform_point(pp.seed)
        _progress(
            f"working models: {pp.model1}  |  {pp.model2}",
            f"plane cubic: {pp.cubic}",
            "weierstrass model: Y^2 = "
            + format_cubic(model.a, model.b).replace("x", "X"),
            f"seed point: ({format_rational(seed_x)}, {format_rational(seed_y)})"
            f" maps to ({format_rational(image.x)}, {format_rational(image.y)})",
        )


def _finish(
    pair: Sequence[Curve],
    cfg: Config,
    certs: Sequence[TwistCertificate],
    ledger,
    report,
    output: Optional[str],
    extra_config: Optional[dict] = None,
) -> int:
    _progress(*report.lines())
    bundle = bundle_to_dict(pair, cfg, certs, ledger.recheck(), extra_config)
    _emit(bundle, output)
    if report.budget_exhausted:
        _progress(
            f"partial result: {len(certs)} of {cfg.target_count} certificates"
        )
        return 2
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    curve1 = _parse_curve(args.curve1)
    curve2 = _parse_curve(args.curve2)
    cfg = _config(args)
    pp = prepare_pair(curve1, curve2, cfg)
    _report_route(pp)
    certs, ledger, report = generate(pp, cfg)
    return _finish([curve1, curve2], cfg, certs, ledger, report, args.output)


def _cmd_jzero(args: argparse.Namespace) -> int:
    curve1 = _parse_curve(args.curve1)
    curve2 = _parse_curve(args.curve2)
    cfg = _config(args)
    scale, certs, ledger, report = jzero_generate(curve1, curve2, cfg)
    _progress(f"route: jzero (lambda = {format_rational(scale)})")
    return _finish([curve1, curve2], cfg, certs, ledger, report, args.output)


def _cmd_corollary(args: argparse.Namespace) -> int:
    curve = _parse_curve(args.curve)
    delta = parse_rational(args.delta)
    cfg = _config(args)
    pp, certs, ledger, report = corollary_mode(curve, delta, cfg)
    _report_route(pp)
    return _finish(
        [pp.curve1, pp.curve2],
        cfg,
        certs,
        ledger,
        report,
        args.output,
        extra_config={"delta": format_rational(delta)},
    )


def _cmd_elementary(args: argparse.Namespace) -> int:
    curve = _parse_curve(args.curve)
    cfg = _config(args)
    certs, ledger, report = elementary_generate(curve, cfg)
    return _finish([curve], cfg, certs, ledger, report, args.output)


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.input, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    _, _, certs, recorded_ok = bundle_from_dict(data)
    overall, results, ledger_ok = verify_bundle(certs)
    for cert, (ok, reason) in zip(certs, results):
        status = "OK" if ok else f"FAILED ({reason})"
        print(f"certificate k={cert.k} D={format_rational(cert.value)}: {status}")
    print(f"pairwise square classes: {'OK' if ledger_ok else 'FAILED'}")
    if not recorded_ok:
        _progress("note: the bundle itself recorded ledger_ok = false")
    return 0 if overall else 1


def _cmd_identity_check(args: argparse.Namespace) -> int:
    checks = (
        ("weierstrass model identity", verify_weierstrass_identity),
        ("tangent point identity", verify_point_identity),
        ("discriminant identity", verify_disc_identity),
    )
    all_ok = True
    for label, check in checks:
        ok = check()
        all_ok = all_ok and ok
        print(f"{label}: {'holds' if ok else 'FAILED'}")
        if not ok and label.startswith("weierstrass"):
            print(f"  remainder: {weierstrass_identity_defect()!r}")
    return 0 if all_ok else 1


def _add_search_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--count", type=int, default=1, help="certificates to emit")
    sub.add_argument("--max-iterations", type=int, default=64)
    sub.add_argument("--lambda-bound", type=int, default=40,
                     help="height bound for the rescaling/prime search")
    sub.add_argument("--effort", type=int, default=200_000,
                     help="factorization budget for squarefree labels")
    sub.add_argument("--prime-start", type=int, default=2)
    sub.add_argument("--output", help="write the JSON bundle here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="twistpairs",
        description=(
            "Emit and verify exact certificates of twist values that give "
            "both curves of a pair positive rank."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="run a curve pair")
    gen.add_argument("--curve1", required=True, metavar="a,b")
    gen.add_argument("--curve2", required=True, metavar="a,b")
    _add_search_flags(gen)
    gen.set_defaults(func=_cmd_generate)

    jz = subs.add_parser("jzero", help="both curves with j-invariant zero")
    jz.add_argument("--curve1", required=True, metavar="0,b")
    jz.add_argument("--curve2", required=True, metavar="0,d")
    _add_search_flags(jz)
    jz.set_defaults(func=_cmd_jzero)

    cor = subs.add_parser("corollary", help="curve against its own twist")
    cor.add_argument("--curve", required=True, metavar="a,b")
    cor.add_argument("--delta", required=True, metavar="rational")
    _add_search_flags(cor)
    cor.set_defaults(func=_cmd_corollary)

    ele = subs.add_parser("elementary", help="single-curve scan")
    ele.add_argument("--curve", required=True, metavar="a,b")
    _add_search_flags(ele)
    ele.set_defaults(func=_cmd_elementary)

    ver = subs.add_parser("verify", help="recheck a certificate bundle")
    ver.add_argument("--input", required=True)
    ver.set_defaults(func=_cmd_verify)

    idc = subs.add_parser("identity-check", help="run the symbolic suite")
    idc.set_defaults(func=_cmd_identity_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchExhausted as exc:
        _progress(f"bounded search failed: {exc}")
        for trial in exc.trials:
            _progress(f"  tried {format_rational(trial.scale)}: {trial.outcome}")
        return 2
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        _progress(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
