"""Search orchestration: routes a curve pair, generates twist values, certifies.

Given two smooth curve models, the pair is routed one of three ways:

* ``general``  - the models are glued into a plane cubic whose tangent point
  is certified non-torsion (rescaling the second model by a searched factor
  until every condition holds), and the common cubic value at each multiple
  of that point is a candidate twist value for both curves at once;
* ``isomorphic`` - the curves are the same over Q, so scanning integer
  inputs of the cubic itself already produces twist values, transported to
  the second model through the explicit isomorphism;
* ``jzero``    - both curves have j-invariant zero; a prime-driven recipe
  picks a sextic twist factor that plants a rational seed point on the
  associated cubic, and generation proceeds as in the general route for the
  sextic-twisted models.

Every emitted value D comes with a full certificate: per curve, the solution
(x, t) of D*t^2 = x^3 + a*x + b, the standard twist model, the mapped point
on it, and a non-torsion witness.  A ledger guarantees that accepted values
have pairwise distinct square classes (checked by exact perfect-square tests
on products, never by factorization).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterator, Optional, Sequence

from .exactnum import (
    format_rational,
    parse_rational,
    primes_avoiding,
    same_square_class,
    squarefree_part,
    valuation,
)
from .planecubic import PlaneCubic, ProjPoint, smoothness_quantity
from .weierstrass import (
    RATIONAL_TORSION_ORDERS,
    Curve,
    NonTorsionWitness,
    WPoint,
    are_isomorphic_over_q,
    certify_nontorsion,
    quadratic_twist,
)

ROUTE_GENERAL = "general"
ROUTE_ISOMORPHIC = "isomorphic"
ROUTE_JZERO = "jzero"

SKIP_AT_INFINITY = "at-infinity"
SKIP_ZERO_VALUE = "zero-value"
SKIP_TORSION_TWIST = "torsion-twist-point"
SKIP_CLASS_COLLISION = "class-collision"

REJECT_SINGULAR = "singular-cubic"
REJECT_EQUAL_LEADING = "a-equals-scaled-c"
REJECT_TORSION_SEED = "torsion-seed"
ACCEPTED = "accepted"

CERTIFICATE_VERSION = 1


@dataclass(frozen=True)
class Config:
    """Knobs for the search loops; every bound is finite and explicit."""

    target_count: int = 1
    max_iterations: int = 64
    lambda_search_bound: int = 40
    factor_effort: int = 200_000
    prime_start: int = 2

    def __post_init__(self) -> None:
        if self.target_count < 1:
            raise ValueError("target_count must be at least 1")
        for name in ("max_iterations", "lambda_search_bound", "factor_effort"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.prime_start < 2:
            object.__setattr__(self, "prime_start", 2)


class SearchExhausted(Exception):
    """A bounded search ran out without success; carries its trial log."""

    def __init__(self, message: str, trials: tuple = ()):
        super().__init__(message)
        self.trials = trials


@dataclass(frozen=True)
class LambdaTrial:
    scale: Fraction
    outcome: str


@dataclass(frozen=True)
class PreparedPair:
    """A routed pair, ready for generation.

    ``model2`` is Q-isomorphic to ``curve2`` (rescaled on the general route,
    sextic-twisted on the jzero route).  On cubic-backed routes the seed
    point lies on the cubic and carries a non-torsion witness.
    """

    route: str
    curve1: Curve
    curve2: Curve
    model1: Curve
    model2: Curve
    scale: Fraction
    cubic: Optional[PlaneCubic] = None
    seed: Optional[ProjPoint] = None
    seed_witness: Optional[tuple[tuple[int, ProjPoint], ...]] = None
    prime: Optional[int] = None
    t_value: Optional[int] = None
    trials: tuple[LambdaTrial, ...] = ()


@dataclass(frozen=True)
class CurveWitnessEntry:
    """Everything one curve contributes to a certificate."""

    model: Curve
    solution_x: Fraction
    solution_t: Fraction
    twist_model: Curve
    twist_point: WPoint
    witness: NonTorsionWitness


@dataclass(frozen=True)
class TwistCertificate:
    route: str
    scale: Fraction
    k: int
    value: Fraction
    squarefree_rep: Optional[tuple[int, bool]]
    entries: tuple[CurveWitnessEntry, ...]
    annotation: Optional[tuple[tuple[str, str], ...]] = None


class SquareClassLedger:
    """Accepted (k, D) pairs with pairwise distinct square classes."""

    def __init__(self) -> None:
        self.accepted: list[tuple[int, Fraction]] = []

    def admits(self, value: Fraction) -> bool:
        return all(not same_square_class(value, seen) for _, seen in self.accepted)

    def add(self, k: int, value: Fraction) -> None:
        if not self.admits(value):
            raise ValueError(f"square class of {value} already present")
        self.accepted.append((k, value))

    def recheck(self) -> bool:
        return all(
            not same_square_class(v1, v2)
            for (_, v1), (_, v2) in combinations(self.accepted, 2)
        )


@dataclass
class RunReport:
    """What happened during a generation run, k by k."""

    route: str
    accepted: list[tuple[int, Fraction]] = field(default_factory=list)
    skipped: list[tuple[int, str]] = field(default_factory=list)
    iterations_used: int = 0
    budget_exhausted: bool = False
    notes: list[str] = field(default_factory=list)
    prime: Optional[int] = None
    t_value: Optional[int] = None

    def lines(self) -> list[str]:
        out = [f"route: {self.route}"]
        if self.prime is not None:
            out.append(f"prime: {self.prime}, seed value t: {self.t_value}")
        for k, value in self.accepted:
            out.append(f"  k={k}: accepted D = {format_rational(value)}")
        for k, reason in self.skipped:
            out.append(f"  k={k}: skipped ({reason})")
        out.append(
            f"iterations used: {self.iterations_used}"
            + (", budget exhausted" if self.budget_exhausted else "")
        )
        out.extend(self.notes)
        return out


# --------------------------------------------------------------- preparation


def enumerate_scales(bound: int) -> Iterator[Fraction]:
    """Candidate scaling factors by increasing height, positives first.

    Height h contributes h/1, h/2, ..., then 1/h, 2/h, ... (reduced forms
    only), followed by their negatives: 1, -1, 2, 1/2, -2, -1/2, 3, ...
    """
    for height in range(1, bound + 1):
        positives = [
            Fraction(height, den)
            for den in range(1, height + 1)
            if gcd(height, den) == 1
        ]
        positives += [
            Fraction(num, height)
            for num in range(1, height)
            if gcd(num, height) == 1
        ]
        yield from positives
        yield from (-q for q in positives)


def lambda_search(
    curve1: Curve, curve2: Curve, bound: int
) -> tuple[Fraction, PlaneCubic, ProjPoint, tuple, tuple[LambdaTrial, ...]]:
    """First rescaling of the second model that yields a certified seed.

    A candidate scale L replaces (c, d) by (L^4*c, L^6*d); it is accepted
    when the glued cubic is smooth, its tangent point is defined (a differs
    from the rescaled c), and that point is certified non-torsion.  Raises
    SearchExhausted with the full trial log when the bound runs out.
    """
    a, b = curve1.a, curve1.b
    trials: list[LambdaTrial] = []
    for scale in enumerate_scales(bound):
        c_scaled = scale**4 * curve2.a
        d_scaled = scale**6 * curve2.b
        if smoothness_quantity(a, b, c_scaled, d_scaled) == 0:
            trials.append(LambdaTrial(scale, REJECT_SINGULAR))
            continue
        if a == c_scaled:
            trials.append(LambdaTrial(scale, REJECT_EQUAL_LEADING))
            continue
        cubic = PlaneCubic(a, b, c_scaled, d_scaled)
        seed = cubic.tangent_point()
        witness = cubic.certify_nontorsion(seed)
        if witness is None:
            trials.append(LambdaTrial(scale, REJECT_TORSION_SEED))
            continue
        trials.append(LambdaTrial(scale, ACCEPTED))
        return scale, cubic, seed, witness, tuple(trials)
    raise SearchExhausted(
        f"no usable rescaling up to height {bound} "
        f"for the pair ({curve1}) / ({curve2})",
        tuple(trials),
    )


def _prepare_jzero(curve1: Curve, curve2: Curve, cfg: Config) -> PreparedPair:
    b, d = curve1.b, curve2.b
    diff = d - b
    # p must avoid 2, 3 and the primes of d - b so that the seed value t is
    # divisible by p exactly once and fresh with respect to the pair
    exclusions = [6, diff.numerator, diff.denominator]
    attempts: list[LambdaTrial] = []
    prime_stream = primes_avoiding(exclusions, cfg.prime_start)
    for _ in range(cfg.lambda_search_bound):
        prime = next(prime_stream)
        t = (prime + 1) ** 3 - 1
        if valuation(t, prime) != 1:
            raise ArithmeticError(f"seed value {t} is not exactly divisible by {prime}")
        scale = Fraction(t) / diff
        model1 = Curve(0, scale * b)
        model2 = Curve(0, scale * d)
        cubic = PlaneCubic(0, model1.b, 0, model2.b)
        seed = ProjPoint(Fraction(prime + 1), Fraction(1), Fraction(1))
        if not cubic.contains(seed):
            raise ArithmeticError(f"recipe seed {seed} missed the cubic {cubic}")
        witness = cubic.certify_nontorsion(seed)
        if witness is None:
            attempts.append(LambdaTrial(Fraction(prime), REJECT_TORSION_SEED))
            continue
        return PreparedPair(
            route=ROUTE_JZERO,
            curve1=curve1,
            curve2=curve2,
            model1=model1,
            model2=model2,
            scale=scale,
            cubic=cubic,
            seed=seed,
            seed_witness=witness,
            prime=prime,
            t_value=t,
            trials=tuple(attempts),
        )
    raise SearchExhausted(
        f"no usable prime among the first {cfg.lambda_search_bound} candidates",
        tuple(attempts),
    )


def prepare_pair(curve1: Curve, curve2: Curve, cfg: Config) -> PreparedPair:
    """Route a pair and build everything generation needs.

    Both curves with a == 0 go the jzero way unless they are identical, in
    which case (as for any Q-isomorphic pair) the isomorphic route applies.
    Everything else gets a rescaling search and the general route.
    """
    if curve1.has_j_zero and curve2.has_j_zero:
        if curve1.b == curve2.b:
            return PreparedPair(
                route=ROUTE_ISOMORPHIC,
                curve1=curve1,
                curve2=curve2,
                model1=curve1,
                model2=curve2,
                scale=Fraction(1),
            )
        return _prepare_jzero(curve1, curve2, cfg)
    iso_scale = are_isomorphic_over_q(curve1, curve2)
    if iso_scale is not None:
        return PreparedPair(
            route=ROUTE_ISOMORPHIC,
            curve1=curve1,
            curve2=curve2,
            model1=curve1,
            model2=curve2,
            scale=iso_scale,
        )
    scale, cubic, seed, witness, trials = lambda_search(
        curve1, curve2, cfg.lambda_search_bound
    )
    model2 = Curve(scale**4 * curve2.a, scale**6 * curve2.b)
    return PreparedPair(
        route=ROUTE_GENERAL,
        curve1=curve1,
        curve2=curve2,
        model1=curve1,
        model2=model2,
        scale=scale,
        cubic=cubic,
        seed=seed,
        seed_witness=witness,
        trials=trials,
    )


# ---------------------------------------------------------------- generation


def _twist_entry(
    model: Curve, solution_x: Fraction, solution_t: Fraction, value: Fraction
) -> Optional[CurveWitnessEntry]:
    """Certificate entry for one curve, or None when the point is torsion."""
    twisted, to_twist = quadratic_twist(model, value)
    point = to_twist(solution_x, solution_t)
    witness = certify_nontorsion(twisted, point)
    if witness is None:
        return None
    return CurveWitnessEntry(
        model=model,
        solution_x=Fraction(solution_x),
        solution_t=Fraction(solution_t),
        twist_model=twisted,
        twist_point=point,
        witness=witness,
    )


def _squarefree_rep(value: Fraction, effort: int) -> tuple[int, bool]:
    # numerator*denominator is an integer in the square class of the value
    return squarefree_part(value.numerator * value.denominator, effort)


def _generate_from_cubic(
    pp: PreparedPair, cfg: Config
) -> tuple[list[TwistCertificate], SquareClassLedger, RunReport]:
    cubic, seed = pp.cubic, pp.seed
    assert cubic is not None and seed is not None
    ledger = SquareClassLedger()
    report = RunReport(route=pp.route, prime=pp.prime, t_value=pp.t_value)
    if pp.route == ROUTE_JZERO:
        report.notes.append(
            "sextic twist factor normalized as t/(d-b) so the recipe point "
            "(p+1, 1) lies on the cubic directly"
        )
    certificates: list[TwistCertificate] = []
    current = seed
    for k in range(1, cfg.max_iterations + 1):
        report.iterations_used = k
        if k > 1:
            current = cubic.add(current, seed)
        if current.is_infinite:
            report.skipped.append((k, SKIP_AT_INFINITY))
            continue
        value = cubic.common_value(current)
        if value == 0:
            report.skipped.append((k, SKIP_ZERO_VALUE))
            continue
        if not ledger.admits(value):
            report.skipped.append((k, SKIP_CLASS_COLLISION))
            continue
        x_coord, y_coord = current.affine()
        first = _twist_entry(pp.model1, x_coord, Fraction(1), value)
        second = _twist_entry(pp.model2, y_coord, Fraction(1), value)
        if first is None or second is None:
            report.skipped.append((k, SKIP_TORSION_TWIST))
            continue
        ledger.add(k, value)
        report.accepted.append((k, value))
        certificates.append(
            TwistCertificate(
                route=pp.route,
                scale=pp.scale,
                k=k,
                value=value,
                squarefree_rep=_squarefree_rep(value, cfg.factor_effort),
                entries=(first, second),
            )
        )
        if len(certificates) >= cfg.target_count:
            break
    report.budget_exhausted = len(certificates) < cfg.target_count
    return certificates, ledger, report


def _elementary_scan(
    curve: Curve,
    cfg: Config,
    transport: Optional[tuple[Fraction, Curve]] = None,
) -> tuple[list[TwistCertificate], SquareClassLedger, RunReport]:
    """Scan inputs 1, 2, 3, ... of the cubic; each non-square value twists.

    With ``transport`` set, every certificate additionally covers the given
    Q-isomorphic curve through the scaling map composed with the twist map.
    """
    ledger = SquareClassLedger()
    report = RunReport(route=ROUTE_ISOMORPHIC)
    certificates: list[TwistCertificate] = []
    scale = transport[0] if transport else Fraction(1)
    for k in range(1, cfg.max_iterations + 1):
        report.iterations_used = k
        x_input = Fraction(k)
        value = curve.rhs(x_input)
        if value == 0:
            report.skipped.append((k, SKIP_ZERO_VALUE))
            continue
        if not ledger.admits(value):
            report.skipped.append((k, SKIP_CLASS_COLLISION))
            continue
        entries = []
        first = _twist_entry(curve, x_input, Fraction(1), value)
        if first is None:
            report.skipped.append((k, SKIP_TORSION_TWIST))
            continue
        entries.append(first)
        if transport is not None:
            u, other = transport
            second = _twist_entry(other, u**2 * x_input, u**3, value)
            if second is None:
                report.skipped.append((k, SKIP_TORSION_TWIST))
                continue
            entries.append(second)
        ledger.add(k, value)
        report.accepted.append((k, value))
        certificates.append(
            TwistCertificate(
                route=ROUTE_ISOMORPHIC,
                scale=scale,
                k=k,
                value=value,
                squarefree_rep=_squarefree_rep(value, cfg.factor_effort),
                entries=tuple(entries),
            )
        )
        if len(certificates) >= cfg.target_count:
            break
    report.budget_exhausted = len(certificates) < cfg.target_count
    return certificates, ledger, report


def generate(
    pp: PreparedPair, cfg: Config
) -> tuple[list[TwistCertificate], SquareClassLedger, RunReport]:
    """Run the generation loop appropriate to the prepared route."""
    if pp.route == ROUTE_ISOMORPHIC:
        return _elementary_scan(pp.model1, cfg, transport=(pp.scale, pp.model2))
    return _generate_from_cubic(pp, cfg)


def elementary_generate(
    curve: Curve, cfg: Config
) -> tuple[list[TwistCertificate], SquareClassLedger, RunReport]:
    """Single-curve mode: certificates with one entry each."""
    return _elementary_scan(curve, cfg, transport=None)


def jzero_generate(
    curve1: Curve, curve2: Curve, cfg: Config
) -> tuple[Fraction, list[TwistCertificate], SquareClassLedger, RunReport]:
    """Direct j-invariant-zero mode; returns the sextic twist factor too."""
    if not (curve1.has_j_zero and curve2.has_j_zero):
        raise ValueError("jzero mode needs both curves with a == 0")
    if curve1.b == curve2.b:
        raise ValueError(
            "identical curves; use the elementary mode instead of jzero"
        )
    pp = _prepare_jzero(curve1, curve2, cfg)
    certificates, ledger, report = generate(pp, cfg)
    return pp.scale, certificates, ledger, report


def corollary_mode(
    curve: Curve, delta: Fraction, cfg: Config
) -> tuple[PreparedPair, list[TwistCertificate], SquareClassLedger, RunReport]:
    """Pair a curve with its own quadratic twist by delta.

    Each certificate is annotated with both D and D*delta: a positive-rank
    twist of the delta-twisted curve by D is a positive-rank twist of the
    original curve by D*delta.  A square delta makes the two curves
    Q-isomorphic, so the pair routes through the isomorphic path.
    """
    delta = Fraction(delta)
    if curve.has_j_zero:
        raise ValueError("this mode needs a curve with nonzero j-invariant")
    if delta == 0:
        raise ValueError("the twisting value must be nonzero")
    twisted, _ = quadratic_twist(curve, delta)
    pp = prepare_pair(curve, twisted, cfg)
    certificates, ledger, report = generate(pp, cfg)
    annotated = [
        replace(
            cert,
            annotation=(
                ("D", format_rational(cert.value)),
                ("D_delta", format_rational(cert.value * delta)),
            ),
        )
        for cert in certificates
    ]
    report.notes.append(
        "each certified D for the twisted partner certifies D*delta for the "
        "original curve"
    )
    return pp, annotated, ledger, report


# -------------------------------------------------------------- verification


def verify_certificate(cert: TwistCertificate) -> tuple[bool, Optional[str]]:
    """Recompute every claim in a certificate from scratch.

    Returns (True, None) or (False, reason) with a stable reason code.
    """
    value = cert.value
    if value == 0:
        return False, "zero-twist-value"
    if not cert.entries:
        return False, "no-curve-entries"
    for entry in cert.entries:
        model, x, t = entry.model, entry.solution_x, entry.solution_t
        if value * t * t != model.rhs(x):
            return False, "solution-mismatch"
        expected_model = Curve(model.a * value**2, model.b * value**3)
        if entry.twist_model != expected_model:
            return False, "twist-model-mismatch"
        expected_point = WPoint(value * x, value * value * t)
        if entry.twist_point != expected_point:
            return False, "mapped-point-mismatch"
        if not entry.twist_model.contains(entry.twist_point):
            return False, "point-not-on-curve"
        if tuple(entry.witness.checked_orders) != RATIONAL_TORSION_ORDERS:
            return False, "witness-orders-incomplete"
        recorded = dict(entry.witness.multiples)
        if set(recorded) != set(RATIONAL_TORSION_ORDERS):
            return False, "witness-orders-incomplete"
        for order in RATIONAL_TORSION_ORDERS:
            recomputed = entry.twist_model.scalar_mul(order, entry.twist_point)
            if recomputed.is_infinity or recomputed != recorded[order]:
                return False, "witness-recompute-mismatch"
    return True, None


def verify_bundle(
    certs: Sequence[TwistCertificate],
) -> tuple[bool, list[tuple[bool, Optional[str]]], bool]:
    """Per-certificate results plus a pairwise square-class recheck."""
    results = [verify_certificate(cert) for cert in certs]
    ledger_ok = all(
        not same_square_class(c1.value, c2.value)
        for c1, c2 in combinations(certs, 2)
        if c1.value != 0 and c2.value != 0
    )
    overall = all(ok for ok, _ in results) and ledger_ok
    return overall, results, ledger_ok


# ------------------------------------------------------------- serialization


def curve_to_dict(curve: Curve) -> dict:
    return {"a": format_rational(curve.a), "b": format_rational(curve.b)}


def curve_from_dict(data: dict) -> Curve:
    return Curve(parse_rational(data["a"]), parse_rational(data["b"]))


def _witness_to_dict(witness: NonTorsionWitness) -> dict:
    return {
        "orders": list(witness.checked_orders),
        "multiples": [
            [str(order), format_rational(pt.x), format_rational(pt.y)]
            for order, pt in witness.multiples
        ],
    }


def _witness_from_dict(data: dict) -> NonTorsionWitness:
    return NonTorsionWitness(
        checked_orders=tuple(int(n) for n in data["orders"]),
        multiples=tuple(
            (int(n), WPoint(parse_rational(x), parse_rational(y)))
            for n, x, y in data["multiples"]
        ),
    )


def _entry_to_dict(entry: CurveWitnessEntry) -> dict:
    return {
        "model": curve_to_dict(entry.model),
        "solution": {
            "x": format_rational(entry.solution_x),
            "t": format_rational(entry.solution_t),
        },
        "standard_point": {
            "x": format_rational(entry.twist_point.x),
            "y": format_rational(entry.twist_point.y),
        },
        "witness": _witness_to_dict(entry.witness),
    }


def _entry_from_dict(data: dict, value: Fraction) -> CurveWitnessEntry:
    # the twist model is not stored; it is derived from the model and D
    model = curve_from_dict(data["model"])
    return CurveWitnessEntry(
        model=model,
        solution_x=parse_rational(data["solution"]["x"]),
        solution_t=parse_rational(data["solution"]["t"]),
        twist_model=Curve(model.a * value**2, model.b * value**3),
        twist_point=WPoint(
            parse_rational(data["standard_point"]["x"]),
            parse_rational(data["standard_point"]["y"]),
        ),
        witness=_witness_from_dict(data["witness"]),
    )


def certificate_to_dict(cert: TwistCertificate) -> dict:
    data = {
        "version": CERTIFICATE_VERSION,
        "route": cert.route,
        "lambda": format_rational(cert.scale),
        "k": cert.k,
        "D": format_rational(cert.value),
        "squarefree_D": (
            None
            if cert.squarefree_rep is None
            else {
                "value": str(cert.squarefree_rep[0]),
                "complete": cert.squarefree_rep[1],
            }
        ),
        "curves": [_entry_to_dict(entry) for entry in cert.entries],
    }
    if cert.annotation is not None:
        data["annotation"] = {key: text for key, text in cert.annotation}
    return data


def certificate_from_dict(data: dict) -> TwistCertificate:
    if data.get("version") != CERTIFICATE_VERSION:
        raise ValueError(f"unsupported certificate version: {data.get('version')}")
    value = parse_rational(data["D"])
    entries = [_entry_from_dict(raw, value) for raw in data["curves"]]
    squarefree = data.get("squarefree_D")
    annotation = data.get("annotation")
    return TwistCertificate(
        route=data["route"],
        scale=parse_rational(data["lambda"]),
        k=int(data["k"]),
        value=value,
        squarefree_rep=(
            None
            if squarefree is None
            else (int(squarefree["value"]), bool(squarefree["complete"]))
        ),
        entries=tuple(entries),
        annotation=(
            tuple(sorted(annotation.items())) if annotation is not None else None
        ),
    )


def bundle_to_dict(
    pair: Sequence[Curve],
    cfg: Config,
    certs: Sequence[TwistCertificate],
    ledger_ok: bool,
    extra_config: Optional[dict] = None,
) -> dict:
    config = {
        "target_count": cfg.target_count,
        "max_iterations": cfg.max_iterations,
        "lambda_search_bound": cfg.lambda_search_bound,
        "factor_effort": cfg.factor_effort,
        "prime_start": cfg.prime_start,
    }
    if extra_config:
        config.update(extra_config)
    return {
        "pair": [curve_to_dict(curve) for curve in pair],
        "config": config,
        "certificates": [certificate_to_dict(cert) for cert in certs],
        "ledger_ok": ledger_ok,
    }


def bundle_from_dict(data: dict) -> tuple[list[Curve], dict, list[TwistCertificate], bool]:
    pair = [curve_from_dict(c) for c in data["pair"]]
    certs = [certificate_from_dict(c) for c in data["certificates"]]
    return pair, dict(data["config"]), certs, bool(data["ledger_ok"])
