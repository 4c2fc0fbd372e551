"""Distance from a point to a one-parameter polynomial family of ellipsoids.

The distance surface F(z, t) collects, for every family member, the
point-to-member distance polynomial. Its discriminant in t (the iterated
discriminant) together with the interval-endpoint specializations yields the
candidate squared distances; candidates are validated by stationarity
residuals and by re-solving the winning member before acceptance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .discrim import bezout_matrix, discriminant_param, multiple_zero_uni
from .errors import DegeneracyError, NoPositiveRootError
from .linalg import MatrixQ, VectorQ, det_unipoly_matrix
from .metrics import (
    MU,
    ZVAR,
    DistanceReport,
    RootInfo,
    _pencil_from_affine_entry,
    normalize,
    solve_point,
    trailing_z_power,
)
from .poly import BiPoly, NewtonInterp, ParamPoly, UniPoly, rational_nodes
from .realroots import isolate_real_roots, refine
from .scalar import QQ, rational, snap, sqrt_approx, tolerance

TVAR = "t"


class QuadricFamily:
    """Family X^T A(t) X + 2 B(t)^T X + c(t) = 0 with polynomial coefficients.

    The constant term defaults to -1; a polynomial constant admits families
    whose normalized form would not depend polynomially on the parameter.
    The caller asserts that members are ellipsoids on the interval; this is
    spot-checked at sample parameter values on construction.
    """

    __slots__ = ("a", "b", "c", "dim", "interval")

    def __init__(self, a, b, c=None, interval=None):
        rows = [[_as_tpoly(e) for e in row] for row in a]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("family matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("family matrix must be symmetric")
        vec = [_as_tpoly(e) for e in b]
        if len(vec) != n:
            raise ValueError("dimension mismatch")
        if c is None:
            c = UniPoly.const(QQ(-1), TVAR)
        else:
            c = _as_tpoly(c)
        if interval is not None:
            lo, hi = rational(interval[0]), rational(interval[1])
            if hi < lo:
                lo, hi = hi, lo
            interval = (lo, hi)
        object.__setattr__(self, "a", rows)
        object.__setattr__(self, "b", vec)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "interval", interval)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("QuadricFamily is immutable")

    @property
    def param_degree(self) -> int:
        return max(
            [e.degree for row in self.a for e in row]
            + [e.degree for e in self.b]
            + [self.c.degree]
        )

    def member(self, t):
        """The family member at a rational parameter value, normalized."""
        t = rational(t)
        a = MatrixQ([[e.eval(t) for e in row] for row in self.a])
        b = VectorQ([e.eval(t) for e in self.b])
        c = self.c.eval(t)
        return normalize(a, b, c)


def _as_tpoly(e):
    if isinstance(e, UniPoly):
        return UniPoly(e.coeffs, TVAR)
    if isinstance(e, (list, tuple)):
        return UniPoly(e, TVAR)
    return UniPoly.const(e, TVAR)


def _member_pencil(fam: QuadricFamily, x0: VectorQ, t) -> ParamPoly:
    """Point-distance pencil of the member at t, from the unnormalized data."""
    n = fam.dim
    mu = UniPoly.x(MU)
    a = [[e.eval(t) for e in row] for row in fam.a]
    b = [e.eval(t) for e in fam.b]
    c = fam.c.eval(t)
    x0n2 = x0.dot(x0)
    rows = []
    for i in range(n):
        rows.append(
            [a[i][j] - (mu if i == j else 0) for j in range(n)] + [b[i] + mu * x0[i]]
        )
    rows.append([b[j] + mu * x0[j] for j in range(n)] + [UniPoly((c, -x0n2), MU)])
    d0 = det_unipoly_matrix(rows, MU)
    krows = [[a[i][j] - (mu if i == j else 0) for j in range(n)] for i in range(n)]
    kpoly = det_unipoly_matrix(krows, MU)
    return _pencil_from_affine_entry(d0, kpoly)


def family_distance_surface(fam: QuadricFamily, x0: VectorQ) -> BiPoly:
    """F(z, t): for each t the member's distance polynomial in z.

    Built by exact interpolation over parameter nodes with verification
    nodes; nodes where the pencil degenerates are skipped.
    """
    n = fam.dim
    dmax = fam.param_degree
    row_degrees = []
    for i in range(n):
        row_degrees.append(
            max([fam.a[i][j].degree for j in range(n)] + [fam.b[i].degree, 0])
        )
    row_degrees.append(max([e.degree for e in fam.b] + [fam.c.degree, 0]))
    d_phi = sum(row_degrees)
    bound = (2 * (n + 1) - 1) * max(d_phi, 1)

    def value(t):
        pencil = _member_pencil(fam, x0, t)
        if pencil.degree != n + 1:
            return None
        try:
            return discriminant_param(pencil, degree_bound=2 * (n + 1))
        except DegeneracyError:
            return None

    nodes = rational_nodes()
    points = []
    skips = 0
    while len(points) < bound + 1 + 3:
        t = next(nodes)
        v = value(t)
        if v is None:
            skips += 1
            if skips > 40:
                raise DegeneracyError(
                    "degenerate-family", "too many invalid parameter nodes"
                )
            continue
        points.append((t, v))
    max_dz = max(v.degree for _, v in points)
    interps = [NewtonInterp(TVAR) for _ in range(max_dz + 1)]
    for t, v in points[: bound + 1]:
        for j in range(max_dz + 1):
            interps[j].add_point(t, v.coeff(j))
    cols = [it.polynomial() for it in interps]
    for t, v in points[bound + 1 :]:
        for j in range(max_dz + 1):
            if cols[j].eval(t) != v.coeff(j):
                raise DegeneracyError(
                    "interpolation-verification",
                    "distance surface failed verification",
                )
    terms = {}
    for j, p in enumerate(cols):
        for i, coeff in enumerate(p.coeffs):
            if coeff:
                terms[(j, i)] = coeff
    return BiPoly.from_terms(terms, (ZVAR, TVAR))


def family_distance_poly(fam: QuadricFamily, x0: VectorQ):
    """(iterated discriminant, endpoint polynomial at a, endpoint at b).

    The iterated discriminant is None when F(z, t) does not genuinely depend
    on t (endpoint/ member evaluation is then the only branch). Unbounded
    intervals yield None endpoints.
    """
    surface = family_distance_surface(fam, x0)
    if fam.interval is not None:
        fa = surface.eval_var(1, fam.interval[0]).normalized()
        fb = surface.eval_var(1, fam.interval[1]).normalized()
    else:
        fa = fb = None
    deg_t = surface.deg2
    if deg_t < 2:
        if fam.interval is None and deg_t < 1:
            # constant family: the single member carries the answer
            fa = surface.eval_var(1, QQ(0)).normalized()
        return None, fa, fb
    pp = surface.as_parampoly(1)  # main variable t, parameter z
    deg_z = surface.deg1
    bound = (2 * deg_t - 1) * max(deg_z, 1)
    big_f = discriminant_param(pp, degree_bound=bound)
    if not big_f:
        return None, fa, fb
    return big_f.normalized(), fa, fb


@dataclass
class _Candidate:
    z: object
    source: str  # "interior", "endpoint-a", "endpoint-b"
    multiplicity: int
    t: object = None


def family_solve(fam: QuadricFamily, x0: VectorQ, bits: int = 128) -> DistanceReport:
    """Distance from the point to the nearest family member over the interval."""
    if x0.dim != fam.dim:
        raise ValueError("point dimension mismatch")
    surface = family_distance_surface(fam, x0)
    big_f, fa, fb = family_distance_poly(fam, x0)
    report = DistanceReport(
        kind="family-point",
        intersecting=False,
        certificate={},
        fz=big_f,
    )
    if big_f is None:
        report.warnings.append(
            "distance surface does not depend on the parameter; "
            "endpoint members carry the answer"
        )
    d_dt = surface.derivative(1)

    # gather candidates lazily: refine, sort ascending, validate on demand
    pending = []
    if big_f is not None:
        for iv in isolate_real_roots(big_f):
            good = (iv.exact and iv.lo > 0) or (not iv.exact and iv.lo >= 0)
            if good and iv.multiplicity == 1:
                pending.append(("interior", refine(iv, big_f, bits), None, 1))
    for poly, label, t_end in (
        (fa, "endpoint-a", fam.interval[0] if fam.interval else None),
        (fb, "endpoint-b", fam.interval[1] if fam.interval else None),
    ):
        if poly is None or not poly:
            continue
        for iv in isolate_real_roots(poly):
            good = (iv.exact and iv.lo > 0) or (not iv.exact and iv.lo >= 0)
            if good:
                z_hat = refine(iv, poly, bits)
                pending.append((label, z_hat, t_end, iv.multiplicity))
                break  # only the minimal positive zero of an endpoint matters
    if not pending:
        raise NoPositiveRootError(
            "no positive candidate zero: point appears enclosed by every member"
        )
    pending.sort(key=lambda c: c[1])
    best = None
    for label, z_hat, t_end, mult in pending:
        if label != "interior":
            best = _Candidate(z_hat, label, mult, t_end)
            break
        cand = _validate_interior(fam, x0, surface, d_dt, z_hat, bits)
        if cand is not None:
            best = cand
            break
        report.warnings.append(
            f"interior zero ~{float(z_hat):.9g} failed stationarity validation"
        )
    if best is None:
        raise NoPositiveRootError(
            "no candidate zero passed validation"
        )
    report.z_star = RootInfo(best.z, QQ(1, 1 << bits), best.multiplicity)
    d, derr = sqrt_approx(best.z, bits)
    report.d = d
    report.d_error = derr
    report.simple = best.multiplicity == 1
    report.t_star = best.t
    if best.source == "interior":
        report.certificate["branch"] = "interior-stationary"
    else:
        report.certificate["branch"] = best.source
    # nearest point on the winning member
    try:
        member = fam.member(best.t)
        sub = solve_point(member, x0, bits)
        if sub.nearest_pairs:
            report.nearest_pairs = sub.nearest_pairs
            report.multipliers = sub.multipliers
    except (DegeneracyError, ValueError, NoPositiveRootError) as exc:
        report.warnings.append(f"nearest point on winning member unavailable: {exc}")
    return report


def _validate_interior(fam, x0, surface, d_dt, z_hat, bits):
    """Check an interior candidate: recover t, test stationarity and attainment.

    Works with snapped (small-denominator) stand-ins for the refined values;
    the induced residual error stays orders of magnitude below the gate.
    """
    tol = tolerance(bits)
    z_snap = snap(z_hat, bits - 16)
    f_at_z = surface.eval_var(0, z_snap)  # polynomial in t
    if f_at_z.degree < 2:
        return None
    try:
        data = bezout_matrix(f_at_z)
        t_hat = multiple_zero_uni(data, strict=False)
    except DegeneracyError:
        return None
    t_hat = snap(t_hat, bits - 16)
    # stationarity residuals, scaled by the coefficient size
    scale = sum(
        (abs(c) * max(QQ(1), abs(t_hat)) ** i for i, c in enumerate(f_at_z.coeffs)),
        QQ(0),
    )
    if not scale:
        return None
    r0 = abs(f_at_z.eval(t_hat)) / scale
    r1 = abs(d_dt.eval(z_snap, t_hat)) / (scale * max(QQ(1), abs(t_hat)))
    if r0 > tol or r1 > tol:
        return None
    if fam.interval is not None:
        lo, hi = fam.interval
        if t_hat < lo - tol or t_hat > hi + tol:
            return None
    # attainment: the candidate must be the member's own minimal distance
    member_poly = surface.eval_var(1, t_hat)
    if not member_poly:
        return None
    try:
        intervals = isolate_real_roots(member_poly)
    except (ValueError, AssertionError):
        return None
    width = tolerance(bits // 2)
    for iv in intervals:
        good = (iv.exact and iv.lo > 0) or (not iv.exact and iv.lo >= 0)
        if not good:
            continue
        val = refine(iv, member_poly, bits // 2)
        if val < z_hat - width:
            return None  # a smaller positive zero: z_hat is a far branch
        break
    return _Candidate(z_hat, "interior", 1, t_hat)
