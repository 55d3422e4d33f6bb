"""The built-in corpus of curves, points and fields.

Curves are addressed by label on the command line (``--curve 37a``). Every
corpus point is listed with its coordinates over Q and whether it is
torsion; corpus_points base-changes them to any supported field. Twist
points over Q(sqrt p) complete the corpus for the ramified route.

Example usage:
    curve = CURVES["37a"]
    for point, torsion in corpus_points("37a", make_field("cyclotomic", 5)):
        print(point, torsion)
    for curve, point in twist_corpus():
        print(curve, point)
"""

from heightcert.ellcurve import EllipticCurve, twist_points
from heightcert.numfield import RATIONALS
from heightcert.polyfield import embed_field

CURVES = {
    "x3+x+1": EllipticCurve(0, 0, 0, 1, 1, label="x3+x+1"),
    "x3-2": EllipticCurve(0, 0, 0, 0, -2, label="x3-2"),
    "37a": EllipticCurve(0, 0, 1, -1, 0, label="37a"),
    "27a": EllipticCurve(0, 0, 1, 0, 0, label="27a"),
    "11a3": EllipticCurve(0, -1, 1, 0, 0, label="11a3"),
}

# (x, y, torsion) over Q
POINTS = {
    "x3+x+1": [(0, 1, False), (72, 611, False)],
    "x3-2": [(3, 5, False), (3, -5, False)],
    "37a": [(0, 0, False), (1, 0, False), (2, 2, False)],
    "27a": [(0, 0, True), (0, -1, True)],
    "11a3": [(0, 0, True), (1, 0, True), (1, -1, True)],
}

FIELDS = ("Q", "Q(i)", "Q(sqrt 5)", "Q(sqrt -5)", "Q(zeta 5)", "Q(zeta 9)")

TWIST_PRIMES = (5, 13, 17)
TWIST_COEFFICIENTS = (1, -1, 2)


def corpus_points(label, field=RATIONALS):
    """
    Return the corpus points of a curve base-changed to a field.

    Args:
        label (str):
            The curve label.
        field (NumberField):
            The field L.

    Returns:
        list:
            (ECPoint, torsion) pairs.
    """
    curve = CURVES[label]
    embedding = embed_field(RATIONALS, field)
    return [
        (curve.point(x, y).base_change(embedding), torsion)
        for x, y, torsion in POINTS[label]
    ]


def twist_curve(a, p):
    """Return y^2 = x^3 + a*x + p, which has the point (0, sqrt p)."""
    return EllipticCurve(0, 0, 0, a, p, label=f"x3{a:+d}x+{p}")


def twist_corpus(primes=TWIST_PRIMES, coefficients=TWIST_COEFFICIENTS,
                 bound=4, multiples=3):
    """
    List twist points over Q(sqrt p) on the curves y^2 = x^3 + a*x + p.

    Every such curve has good reduction at p (for a prime to p) and the
    point (0, sqrt p); points of the quadratic twist with small
    x-coordinates are added together with their first multiples, which are
    again twist points.

    Args:
        primes (tuple):
            The primes p (each 1 mod 4 so Q(sqrt p) is real and p ramifies
            to a single prime).
        coefficients (tuple):
            The coefficients a.
        bound (int):
            The largest |x0| searched.
        multiples (int):
            The multiples [1]P, ..., [multiples]P kept per point.

    Returns:
        list:
            (EllipticCurve, ECPoint) pairs.
    """
    pairs = []
    for p in primes:
        for a in coefficients:
            curve = twist_curve(a, p)
            if not curve.is_good(p):
                continue
            for point in twist_points(curve, p, bound=bound, denominators=1):
                for k in range(1, multiples + 1):
                    pairs.append((curve, point * k))
    return pairs


def resolve_curve(text):
    """Return the corpus curve with this label, None when unknown."""
    return CURVES.get(text.strip())

