"""Executable lower bounds for canonical heights over abelian extensions.

A certificate records, for a point P of E(L) and a prime p, every exact
congruence, valuation and height comparison in the chain of inequalities
that bounds h^(P) from below, together with the constants used and the
measured canonical height. Three routes are implemented:

* unramified: Q = Phi_p(sigma)P reduces to O modulo every prime above p, so
  log p - B <= h^(Q) <= 144 p^2 h^(P);
* ramified without CM: the points [p]tau(P) and [p]P are p-adically close
  at every prime above p, so log p - B <= 2 p^2 h^(P), or else P is fixed
  by tau and descends to a field with smaller ramification;
* ramified with CM and ordinary reduction: (tau - 1)P is p-torsion in the
  kernel of reduction; after subtracting a torsion point T with
  (tau - 1)T = (tau - 1)P the point descends to a field with smaller local
  conductor.

Every exact step is re-derived by verify_certificate from the raw inputs.

Example usage:
    curve = EllipticCurve(0, 0, 0, 0, -2)
    cert = certify(curve.point(3, 5), RunConfig(), p=5)
    print(cert.verdict, cert.lower_bound)
    result = verify_certificate(cert.to_dict())
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import sympy
from sympy.ntheory.modular import crt

from heightcert.canonical import (
    canonical_height,
    combination_height,
    height_comparison_bound,
)
from heightcert.config import RunConfig
from heightcert.ellcurve import (
    ECPoint,
    apply_poly,
    frobenius_poly,
    is_ordinary,
    p_torsion_trivial,
    reduce_point,
    reduced_frobenius_combination,
    resultant_with_cyclotomic,
    select_good_prime,
    torsion_points,
    torsion_test,
)
from heightcert.errors import (
    BadPrimeError,
    BudgetExceededError,
    HypothesisError,
    ReductionPoleError,
)
from heightcert.heights import check_local_global, finite_delta
from heightcert.intervals import format_interval, interval_context
from heightcert.numfield import (
    GaloisElement,
    extension_info,
    fixed_field,
    frobenius_element,
    inertia_tau,
    is_ramified,
    make_field,
)
from heightcert.parsing import (
    format_curve,
    format_point,
    fraction_text,
    parse_curve,
    parse_field,
    parse_point,
)
from heightcert.places import finite_places, primes_above, valuation
from heightcert.polyfield import embed_field

logger = logging.getLogger(__name__)

BRANCHES = ("unramified", "ramified-noncm", "ramified-descent", "torsion")
VERDICTS = (
    "certified",
    "torsion",
    "refuted-step",
    "descent-incomplete",
    "flagged",
)

# (2g + 1)^2 (4p)^(2g) / p^2 for g = 1
UPPER_CHAIN_FACTOR = 144


@dataclass
class StepCheck:
    """
    One verified step of a certificate.

    Attributes:
        name (str):
            What was checked.
        holds (bool):
            The outcome.
        detail (dict):
            JSON-compatible data the check was made on.
    """

    name: str
    holds: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "holds": self.holds,
                "detail": self.detail}

    @classmethod
    def from_dict(cls, data):
        return cls(data["name"], bool(data["holds"]),
                   dict(data.get("detail", {})))


@dataclass
class BoundCertificate:
    """
    A machine-checkable record of one height lower bound.

    Attributes:
        point (ECPoint):
            The point P over L (the curve and field are read from it).
        p (int):
            The prime the argument runs at.
        mode (str):
            "theorem" or "diagnostic".
        weighting (str):
            "plain" or "ramification".
        settings (dict):
            The numerical settings the certificate was produced with.
        branch (str):
            One of BRANCHES.
        galois (dict):
            The automorphism used, as {"element": str, "code": int}.
        derived (dict):
            Derived points rendered as point stanzas.
        checks (list):
            StepCheck objects, in the order they were made.
        constants (dict):
            a_p, B, C_psi, degrees and other constants used.
        lower_bound (str):
            The certified lower bound for h^(P) as an interval.
        theorem_bound (str):
            1/(12p)^2 in theorem mode.
        measured (str):
            The measured h^_psi(P) as an interval.
        descent (list):
            Certificates over fixed fields, outermost first.
        verdict (str):
            One of VERDICTS.
        notes (list):
            Free-form remarks (narrowings of hypotheses).
    """

    point: ECPoint
    p: int
    mode: str = "diagnostic"
    weighting: str = "plain"
    settings: dict = field(default_factory=dict)
    branch: str = None
    galois: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)
    lower_bound: str = None
    theorem_bound: str = None
    measured: str = None
    descent: list = field(default_factory=list)
    verdict: str = None
    notes: list = field(default_factory=list)

    @property
    def curve(self):
        return self.point.curve

    @property
    def field(self):
        return self.point.field

    def check(self, name, holds, **detail):
        """Record a step and return its outcome."""
        holds = bool(holds)
        self.checks.append(StepCheck(name, holds, detail))
        if not holds:
            logger.warning("step failed: %s (%s)", name, detail)
        return holds

    @property
    def all_hold(self):
        """True when every own and nested step holds."""
        return all(c.holds for c in self.checks) and all(
            child.all_hold for child in self.descent
        )

    def set_galois(self, sigma):
        self.galois = {"element": str(sigma), "code": sigma.c}

    def to_dict(self):
        """Return the certificate as a JSON-compatible dict."""
        return {
            "curve": format_curve(self.curve),
            "field": str(self.field),
            "point": format_point(self.point),
            "p": self.p,
            "mode": self.mode,
            "weighting": self.weighting,
            "settings": dict(self.settings),
            "branch": self.branch,
            "galois": dict(self.galois),
            "derived": dict(self.derived),
            "checks": [c.to_dict() for c in self.checks],
            "constants": dict(self.constants),
            "lower_bound": self.lower_bound,
            "theorem_bound": self.theorem_bound,
            "measured": self.measured,
            "descent": [child.to_dict() for child in self.descent],
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

    def to_json(self, indent=2):
        """Serialise deterministically (sorted keys)."""
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        """
        Rebuild a certificate from to_dict output.

        The inputs (curve, field, point) are parsed back exactly; the
        recorded results are kept as they were written.

        Raises:
            ParseError:
                If a recorded literal does not parse.
        """
        curve = parse_curve(data["curve"])
        number_field = parse_field(data["field"])
        point = parse_point(data["point"], curve, number_field)
        return cls(
            point=point,
            p=int(data["p"]),
            mode=data.get("mode", "diagnostic"),
            weighting=data.get("weighting", "plain"),
            settings=dict(data.get("settings", {})),
            branch=data.get("branch"),
            galois=dict(data.get("galois", {})),
            derived=dict(data.get("derived", {})),
            checks=[StepCheck.from_dict(c) for c in data.get("checks", [])],
            constants=dict(data.get("constants", {})),
            lower_bound=data.get("lower_bound"),
            theorem_bound=data.get("theorem_bound"),
            measured=data.get("measured"),
            descent=[cls.from_dict(c) for c in data.get("descent", [])],
            verdict=data.get("verdict"),
            notes=list(data.get("notes", [])),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _settings(config):
    return {
        "precision": config.precision,
        "precision_cap": config.precision_cap,
        "tolerance": config.tolerance,
        "max_doublings": config.max_doublings,
        "counting_budget": config.counting_budget,
        "root_budget": config.root_budget,
        "descent_bound": config.descent_bound,
        "exact_limit": config.exact_limit,
    }


def _new_certificate(point, p, config, branch):
    return BoundCertificate(
        point=point,
        p=p,
        mode=config.mode,
        weighting=config.weighting,
        settings=_settings(config),
        branch=branch,
    )


def _conclude(cert):
    """Set the verdict from the recorded steps, unless already set."""
    if cert.verdict is None:
        cert.verdict = "certified" if cert.all_hold else "refuted-step"
    logger.info("%s branch at p = %d: %s", cert.branch, cert.p, cert.verdict)
    return cert


def _record_constants(cert, bound, e=1):
    cert.constants.update(bound.to_json())
    cert.constants.update(
        {
            "g": 1,
            "degree_K": 1,
            "degree_L": cert.field.degree,
            "e_p": e,
        }
    )


def _require_theorem_prime(p, bound, e=1):
    """In theorem mode p must exceed exp(e (B + 1))."""
    ctx = bound.B.ctx
    gap = ctx.ln(p) - (bound.B + 1) * e
    if not gap.a > 0:
        raise HypothesisError(
            f"theorem mode needs p > exp({e}(B + 1)) with B = {bound.B}; "
            f"p = {p} is too small"
        )


def _finish_bound(cert, intermediate, divisor, measured, config):
    """
    Record lower = intermediate/divisor and compare it with h^(P).

    In theorem mode the literal bound 1/(12p)^2 is also asserted and
    confirmed against the measured height.
    """
    lower = intermediate / divisor
    cert.lower_bound = format_interval(lower)
    cert.measured = str(measured)
    cert.check(
        "claimed lower bound <= measured h^(P)",
        lower.a <= measured.value.b,
        lower=format_interval(lower),
        measured=format_interval(measured.value),
    )
    if config.mode == "theorem":
        p = cert.p
        theorem = Fraction(1, (12 * p) ** 2)
        cert.theorem_bound = str(theorem)
        ctx = lower.ctx
        literal = ctx.mpf(theorem.numerator) / theorem.denominator
        cert.check(
            "lower bound >= 1/(12p)^2",
            lower.a >= literal.b,
            bound=str(theorem),
        )
        cert.check(
            "measured h^(P) >= 1/(12p)^2",
            measured.value.a >= literal.b,
            bound=str(theorem),
        )


def residue_frobenius(number_field, p):
    """
    Return an automorphism inducing x -> x^p on the residue fields above p.

    This is the Frobenius element when p is unramified; at a ramified p any
    lift of the residue Frobenius through the inertia group is returned
    (the identity for quadratic fields).
    """
    if not is_ramified(number_field, p):
        return frobenius_element(number_field, p)
    if number_field.kind == "quadratic":
        return GaloisElement(number_field, 1)
    m = number_field.parameter
    p_part = p ** sympy.multiplicity(p, m)
    rest = m // p_part
    # c = p mod rest, c = 1 mod p_part
    c, _ = crt([rest, p_part], [p % rest, 1])
    return GaloisElement(number_field, int(c))


def certify_unramified(point, p, config=None):
    """
    Run the unramified argument at p.

    Q = Phi_p(sigma)P for the Frobenius sigma at p. Either Q = O and P is
    torsion, witnessed by r = Res(Phi_p, X^m - 1), or Q != O reduces to O
    modulo every prime above p, giving

        log p / e - B <= h^(Q) <= 144 p^2 h^(P)

    and h^(P) >= (log p / e - B)/(144 p^2), with e = 1 unless the
    ramification weighting is configured at a ramified p.

    Args:
        point (ECPoint):
            The point P over L.
        p (int):
            A good prime, unramified in L unless weighting is
            "ramification".
        config (RunConfig, optional):
            The run settings.

    Returns:
        BoundCertificate:
            The certificate.

    Raises:
        BadPrimeError:
            If p divides the discriminant.
        HypothesisError:
            If p ramifies in L under plain weighting, or p is too small in
            theorem mode.
    """
    config = config or RunConfig()
    curve, number_field = point.curve, point.field
    if not curve.is_good(p):
        raise BadPrimeError(f"{p} divides the discriminant of {curve}")
    info = extension_info(number_field, p)
    if info.e > 1 and config.weighting != "ramification":
        raise HypothesisError(f"{p} is ramified in {number_field}")

    bound = height_comparison_bound(curve, config.precision)
    if config.mode == "theorem":
        _require_theorem_prime(p, bound, info.e)

    cert = _new_certificate(point, p, config, "unramified")
    sigma = residue_frobenius(number_field, p)
    cert.set_galois(sigma)
    data = frobenius_poly(curve, p, config.counting_budget)
    _record_constants(cert, bound, info.e)
    cert.constants.update(a_p=data.a_p, frobenius=str(data))
    if info.e > 1:
        cert.notes.append(
            "ramification weighting: congruences hold modulo each prime, "
            "giving log p / e"
        )

    options = config.height_options()
    primes = primes_above(number_field, p)
    if p <= config.exact_limit:
        combination = apply_poly(sigma, data.coefficients, point)
        if combination.is_zero():
            r = resultant_with_cyclotomic(data, sigma.order())
            cert.branch = "torsion"
            cert.derived["Q"] = "O"
            cert.check("[r]P = O", (point * r).is_zero(), r=str(r),
                       m=sigma.order())
            cert.measured = "0"
            cert.verdict = "torsion" if cert.all_hold else "refuted-step"
            return _conclude(cert)
        cert.derived["Q"] = format_point(combination)
        for prime in primes:
            cert.check(
                "Q = O modulo P",
                reduce_point(combination, prime).is_zero(),
                prime=str(prime),
            )
        h_Q = canonical_height(
            combination, "psi", check_torsion=False, **options
        ).value
    else:
        cert.derived["Q"] = "implicit"
        for prime in primes:
            reduced = reduced_frobenius_combination(point, prime, data.a_p)
            cert.check("Q = O modulo P", reduced.is_zero(),
                       prime=str(prime))
        conjugates = [point]
        for _ in data.coefficients[1:]:
            conjugates.append(conjugates[-1].conjugate(sigma))
        h_Q = combination_height(
            conjugates, data.coefficients, normalization="psi", **options
        )
        if not h_Q.a > 0:
            cert.check("h^(Q) > 0", False, h_Q=format_interval(h_Q))
            cert.notes.append("Q != O could not be established")
            cert.verdict = "flagged"
            return _conclude(cert)
        cert.check("h^(Q) > 0", True, h_Q=format_interval(h_Q))

    measured = canonical_height(point, "psi", **options)
    ctx = interval_context(config.precision)
    intermediate = ctx.ln(p) / info.e - bound.B
    cert.check(
        "h^(Q) >= log p / e - B",
        h_Q.b >= intermediate.a,
        h_Q=format_interval(h_Q),
        rhs=format_interval(intermediate),
    )
    upper = measured.value * (UPPER_CHAIN_FACTOR * p * p)
    cert.check(
        "h^(Q) <= 144 p^2 h^(P)",
        h_Q.a <= upper.b,
        h_Q=format_interval(h_Q),
        rhs=format_interval(upper),
    )
    _finish_bound(cert, intermediate, UPPER_CHAIN_FACTOR * p * p, measured,
                  config)
    return _conclude(cert)


def ad_congruence_check(alpha, p):
    """
    Check v_P(tau(alpha)^p - alpha^p) >= v_P(p) for the inertia tau.

    Args:
        alpha (FieldElement):
            An element of L integral at the primes above p.
        p (int):
            A prime ramified in L.

    Returns:
        tuple:
            (valuation, holds) at the first prime above p; the valuation
            is math.inf when the difference vanishes.

    Raises:
        HypothesisError:
            If p is unramified in L or alpha is not integral above p.
    """
    number_field = alpha.field
    tau = inertia_tau(number_field, p)
    prime = primes_above(number_field, p)[0]
    if valuation(alpha, prime) < 0:
        raise ReductionPoleError(f"{alpha} is not integral at {prime}")
    difference = tau(alpha) ** p - alpha**p
    observed = valuation(difference, prime)
    holds = observed >= prime.e
    logger.debug("v(tau(a)^p - a^p) = %s against e = %d", observed, prime.e)
    return observed, holds


def _distance_step(cert, first, second, measured, bound, config):
    """
    Record the p-adic closeness of [p]tau(P) and [p]P and its consequence.

    At every prime above p, delta([p]tau P, [p]P) >= log p; the weighted
    sum over T = {primes above p} is then >= log p, and
    h^([p]tau P) + h^([p]P) = 2 p^2 h^(P) >= log p - B.
    """
    p = cert.p
    number_field = cert.field
    x, y = first.psi(), second.psi()
    n = number_field.degree
    weighted = Fraction(0)
    for prime in primes_above(number_field, p):
        c = finite_delta(x, y, prime)
        cert.check(
            "delta_P([p]tau P, [p]P) >= log p",
            c >= 1,
            prime=str(prime),
            coefficient=fraction_text(c),
        )
        weighted += Fraction(prime.e * prime.f, n) * c
    cert.check(
        "sum_P n_P delta_P >= log p",
        weighted >= 1,
        coefficient=fraction_text(weighted),
    )
    places = finite_places(number_field, p)
    lhs, rhs, holds = check_local_global(
        x, y, places, config.precision, config.precision_cap
    )
    cert.check(
        "h(psi Q1) + h(psi Q2) >= sum n_v delta_v - log 2",
        holds,
        lhs=format_interval(lhs),
        rhs=format_interval(rhs),
    )

    ctx = interval_context(config.precision)
    intermediate = ctx.ln(p) - bound.B
    total = measured.value * (2 * p * p)
    cert.check(
        "h^(Q1) + h^(Q2) >= log p - B",
        total.b >= intermediate.a,
        lhs=format_interval(total),
        rhs=format_interval(intermediate),
    )
    _finish_bound(cert, intermediate, 2 * p * p, measured, config)


def _restrict_point(point, embedding):
    """Pull a point of E(L) fixed by Gal(L/K) back to E(K)."""
    if point.is_zero():
        return point.curve.zero(embedding.source)
    return point.curve.point(
        embedding.restrict(point.x),
        embedding.restrict(point.y),
        embedding.source,
    )


def _descend(cert, point, tau, config, invariant):
    """
    Restrict a tau-fixed point to the fixed field and certify it there.

    Args:
        invariant (str):
            "e" (ramification index) or "k" (conductor valuation), which
            must drop strictly.
    """
    p = cert.p
    source = point.field
    target = fixed_field(source, tau)
    before = extension_info(source, p)
    after = extension_info(target, p)
    old, new = (
        (before.e, after.e) if invariant == "e" else (before.k, after.k)
    )
    cert.check(
        f"{invariant}_p drops on descent",
        new < old,
        field=str(target),
        before=old,
        after=new,
    )
    descended = _restrict_point(point, embed_field(target, source))
    cert.derived["descended"] = format_point(descended)
    logger.info("descending %s from %s to %s", point, source, target)
    child = certify(descended, config, p=p)
    cert.descent.append(child)
    cert.lower_bound = child.lower_bound
    cert.theorem_bound = child.theorem_bound
    cert.measured = child.measured
    if child.verdict in ("certified", "torsion") and cert.all_hold:
        cert.verdict = child.verdict
    elif not cert.all_hold:
        cert.verdict = "refuted-step"
    else:
        cert.verdict = child.verdict
    return _conclude(cert)


def _ramified_preconditions(point, p, config):
    curve, number_field = point.curve, point.field
    if not is_ramified(number_field, p):
        raise HypothesisError(f"{p} is unramified in {number_field}")
    if not curve.is_good(p):
        raise BadPrimeError(f"{p} divides the discriminant of {curve}")
    bound = height_comparison_bound(curve, config.precision)
    if config.mode == "theorem":
        _require_theorem_prime(p, bound)
    return bound


def certify_ramified_noncm(point, p, config=None):
    """
    Run the ramified argument at p for a curve without CM.

    With tau the inertia generator, either [p]tau(P) != [p]P and the two
    points are p-adically close at every prime above p, or tau fixes P and
    P descends to the fixed field of tau, where p has smaller
    ramification index.

    Raises:
        HypothesisError:
            If the curve has CM or p is unramified in L.
    """
    config = config or RunConfig()
    if point.curve.is_cm:
        raise HypothesisError(
            f"{point.curve} has CM; use the CM descent route"
        )
    bound = _ramified_preconditions(point, p, config)
    number_field = point.field
    cert = _new_certificate(point, p, config, "ramified-noncm")
    _record_constants(cert, bound, extension_info(number_field, p).e)
    trivial, evidence = p_torsion_trivial(
        point.curve, number_field, p, config.root_budget,
        config.counting_budget,
    )
    cert.constants["p_torsion"] = {"trivial": trivial, **evidence}
    cert.notes.append("E(L)[p] = 0 is checked over L itself")

    tau = inertia_tau(number_field, p)
    cert.set_galois(tau)
    tau_point = point.conjugate(tau)
    first, second = tau_point * p, point * p
    if first != second:
        cert.derived["Q1"] = format_point(first)
        cert.derived["Q2"] = format_point(second)
        measured = canonical_height(point, "psi", **config.height_options())
        _distance_step(cert, first, second, measured, bound, config)
        return _conclude(cert)

    difference = tau_point - point
    if difference.is_zero():
        cert.branch = "ramified-descent"
        return _descend(cert, point, tau, config, "e")

    cert.derived["(tau - 1)P"] = format_point(difference)
    if trivial:
        cert.check("(tau - 1)P = O since E(L)[p] = 0", False)
    else:
        cert.notes.append("(tau - 1)P is a non-zero p-torsion point")
        cert.verdict = "flagged"
    return _conclude(cert)


def _cyclotomic_closure(point, tau, p):
    """
    Move P and tau into a cyclotomic field containing L.

    Returns:
        tuple:
            (point over L', tau' extending tau, embedding L -> L').
    """
    number_field = point.field
    if number_field.kind == "cyclotomic":
        return point, tau, embed_field(number_field, number_field)
    closure = make_field("cyclotomic", number_field.conductor)
    embedding = embed_field(number_field, closure)
    tau_big = inertia_tau(closure, p)
    image = embedding(number_field.gen)
    if tau_big(image) != embedding(tau(number_field.gen)):
        raise HypothesisError(
            f"the inertia generator of {closure} does not extend {tau}"
        )
    return point.base_change(embedding), tau_big, embedding


def descent_torsion(curve, field, tau, difference, p, k, root_budget=None):
    """
    Search E(L)[p^j], j = 1..k, for T with tau(T) - T = Q.

    Args:
        curve (EllipticCurve):
            The curve.
        field (NumberField):
            The field L searched.
        tau (GaloisElement):
            The automorphism of L.
        difference (ECPoint):
            The target Q over L.
        p (int):
            The prime.
        k (int):
            The largest exponent searched.
        root_budget (int, optional):
            The division polynomial search budget.

    Returns:
        ECPoint:
            The first T found, None if there is none.

    Raises:
        BudgetExceededError:
            If a division polynomial search exceeds the budget.
    """
    for j in range(1, k + 1):
        for torsion in torsion_points(curve, field, p**j, root_budget):
            if torsion.conjugate(tau) - torsion == difference:
                logger.debug("T = %s found in E[%d^%d]", torsion, p, j)
                return torsion
    return None


def cm_ramified_step(point, p, config=None):
    """
    Run the CM descent step at a ramified prime of ordinary reduction.

    Q = (tau - 1)P. When [p]tau(P) != [p]P the distance argument of the
    non-CM route applies verbatim. Otherwise Q is p-torsion; it is checked
    to lie in the kernel of reduction at every prime above p, a torsion
    point T of E(L')[p^k] with (tau - 1)T = Q is searched, and P - T
    descends to the fixed field of tau, whose local conductor at p is
    strictly smaller. h^(P - T) = h^(P) since T is torsion.

    Returns:
        BoundCertificate:
            The certificate; "descent-incomplete" (not certifying) when no
            T is found within the search bounds.

    Raises:
        HypothesisError:
            If the curve has no CM, p is unramified in L, or the reduction
            at p is supersingular.
    """
    config = config or RunConfig()
    curve = point.curve
    if not curve.is_cm:
        raise HypothesisError(f"{curve} has no declared CM")
    bound = _ramified_preconditions(point, p, config)
    if not is_ordinary(curve, p, config.counting_budget):
        raise HypothesisError(f"{curve} is supersingular at {p}")

    number_field = point.field
    info = extension_info(number_field, p)
    cert = _new_certificate(point, p, config, "ramified-descent")
    _record_constants(cert, bound, info.e)
    cert.constants.update(cm_discriminant=curve.cm_discriminant, k=info.k)
    tau = inertia_tau(number_field, p)
    cert.set_galois(tau)

    tau_point = point.conjugate(tau)
    first, second = tau_point * p, point * p
    if first != second:
        cert.derived["Q1"] = format_point(first)
        cert.derived["Q2"] = format_point(second)
        measured = canonical_height(point, "psi", **config.height_options())
        _distance_step(cert, first, second, measured, bound, config)
        return _conclude(cert)

    difference = tau_point - point
    if difference.is_zero():
        cert.derived["T"] = "O"
        return _descend(cert, point, tau, config, "k")

    cert.derived["Q"] = format_point(difference)
    for prime in primes_above(number_field, p):
        cert.check(
            "Q in the kernel of reduction",
            reduce_point(difference, prime).is_zero(),
            prime=str(prime),
        )
    if p**info.k > config.descent_bound:
        cert.notes.append(
            f"p^k = {p ** info.k} exceeds the descent bound "
            f"{config.descent_bound}"
        )
        cert.verdict = "descent-incomplete"
        return _conclude(cert)

    try:
        big_point, big_tau, embedding = _cyclotomic_closure(point, tau, p)
    except HypothesisError as e:
        cert.notes.append(str(e))
        cert.verdict = "descent-incomplete"
        return _conclude(cert)
    target = big_point.field
    big_difference = difference.base_change(embedding)
    if target is not number_field:
        cert.notes.append(f"L replaced by {target}")

    try:
        found = descent_torsion(
            curve, target, big_tau, big_difference, p, info.k,
            config.root_budget,
        )
    except BudgetExceededError as e:
        cert.notes.append(str(e))
        found = None
    if found is None:
        cert.notes.append("no torsion point T with (tau - 1)T = Q found")
        cert.verdict = "descent-incomplete"
        return _conclude(cert)

    cert.derived["T"] = format_point(found)
    shifted = big_point - found
    cert.check(
        "(tau - 1)(P - T) = O",
        shifted.conjugate(big_tau) == shifted,
    )
    result = _descend(cert, shifted, big_tau, config, "k")
    child = result.descent[-1]
    if child.measured not in (None, "0"):
        measured = canonical_height(point, "psi", **config.height_options())
        ctx = interval_context(config.precision)
        shifted_value = canonical_height(
            child.point, "psi", **config.height_options()
        ).value
        gap = measured.value - shifted_value
        slack = ctx.mpf(4 * config.tolerance)
        result.check(
            "h^(P - T) = h^(P)",
            gap.a <= slack.b and gap.b >= -slack.b,
            gap=format_interval(gap),
        )
        if not result.all_hold:
            result.verdict = "refuted-step"
    return result


def certify_torsion(point, config=None, attempts=2):
    """
    Certify that P is torsion through the Frobenius test at a few primes.

    Returns:
        BoundCertificate:
            A torsion certificate, or None when no prime tried gives
            Phi_p(sigma)P = O.
    """
    config = config or RunConfig()
    if point.is_zero():
        cert = _new_certificate(point, 1, config, "torsion")
        cert.measured = "0"
        cert.verdict = "torsion"
        return cert
    tried = 0
    for p in sympy.primerange(3, config.counting_budget + 1):
        if tried >= attempts:
            break
        p = int(p)
        if not point.curve.is_good(p) or is_ramified(point.field, p):
            continue
        tried += 1
        is_torsion, witness = torsion_test(point, p, config.counting_budget)
        if is_torsion:
            cert = _new_certificate(point, p, config, "torsion")
            sigma = frobenius_element(point.field, p)
            cert.set_galois(sigma)
            cert.derived["Q"] = "O"
            cert.check("[r]P = O", True, r=str(witness), m=sigma.order())
            cert.measured = "0"
            cert.verdict = "torsion"
            logger.info("%s is torsion: [%d]P = O", point, witness)
            return cert
    return None


def certify(point, config=None, p=None):
    """
    Certify a lower bound for h^(P), choosing the route by ramification.

    Args:
        point (ECPoint):
            The point P over L.
        config (RunConfig, optional):
            The run settings; mode and weighting are read from it.
        p (int, optional):
            The prime; chosen by select_good_prime when omitted.

    Returns:
        BoundCertificate:
            The certificate, with nested certificates for descents.
    """
    config = config or RunConfig()
    curve, number_field = point.curve, point.field
    report = None
    if p is None:
        p, report = select_good_prime(
            curve,
            number_field,
            config.mode,
            config.start,
            config.counting_budget,
            config.root_budget,
            config.precision,
        )
    p = int(p)

    torsion = certify_torsion(point, config)
    if torsion is not None:
        torsion.constants["requested_p"] = p
        return torsion

    if not is_ramified(number_field, p) or config.weighting == "ramification":
        cert = certify_unramified(point, p, config)
    elif not curve.is_cm:
        cert = certify_ramified_noncm(point, p, config)
    else:
        cert = cm_ramified_step(point, p, config)
    if report is not None:
        cert.constants["prime_selection"] = report
    return cert


@dataclass
class VerificationResult:
    """
    The outcome of re-deriving a certificate.

    Attributes:
        certificate (BoundCertificate):
            The freshly derived certificate.
        failures (list):
            Messages for every disagreement found.
    """

    certificate: BoundCertificate
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, condition, message):
        if not condition:
            self.failures.append(message)
        return condition


def _compare(result, recorded, fresh, path="certificate"):
    result.check(
        recorded.verdict == fresh.verdict,
        f"{path}: verdict {recorded.verdict!r} != {fresh.verdict!r}",
    )
    result.check(
        recorded.branch == fresh.branch,
        f"{path}: branch {recorded.branch!r} != {fresh.branch!r}",
    )
    result.check(
        recorded.lower_bound == fresh.lower_bound,
        f"{path}: lower bound {recorded.lower_bound} != "
        f"{fresh.lower_bound}",
    )
    old = [(c.name, c.holds) for c in recorded.checks]
    new = [(c.name, c.holds) for c in fresh.checks]
    result.check(old == new, f"{path}: recorded steps differ from {new}")
    if recorded.verdict in ("certified", "torsion"):
        result.check(fresh.all_hold, f"{path}: a step fails on re-derivation")
    result.check(
        len(recorded.descent) == len(fresh.descent),
        f"{path}: descent chain length differs",
    )
    for i, (a, b) in enumerate(zip(recorded.descent, fresh.descent)):
        _compare(result, a, b, f"{path}.descent[{i}]")


def verify_certificate(data):
    """
    Re-derive a serialised certificate from its raw inputs.

    Args:
        data (dict/str):
            The to_dict output, or its JSON text.

    Returns:
        VerificationResult:
            The fresh certificate and every disagreement found.
    """
    if isinstance(data, str):
        data = json.loads(data)
    recorded = BoundCertificate.from_dict(data)
    settings = {
        k: v for k, v in recorded.settings.items()
        if k in _settings(RunConfig())
    }
    config = RunConfig(
        mode=recorded.mode, weighting=recorded.weighting, **settings
    )
    if recorded.branch == "torsion":
        fresh = certify_torsion(recorded.point, config)
        if fresh is None:
            fresh = _new_certificate(recorded.point, recorded.p, config,
                                     None)
            fresh.verdict = "refuted-step"
        fresh.constants["requested_p"] = recorded.constants.get(
            "requested_p"
        )
    else:
        fresh = certify(recorded.point, config, p=recorded.p)
    result = VerificationResult(fresh)
    _compare(result, recorded, fresh)
    return result
