"""Distance, intersection and nearest-point computation for quadrics.

A quadric is X^T A X + 2 B^T X - 1 = 0 with symmetric A (an ellipsoid when A
is sign-definite). A linear variety is C^T X = H with independent columns.
Every problem is reduced to a univariate polynomial in z whose minimal
positive simple zero is the squared distance; the polynomial arises as a
discriminant of a pencil determinant, and the nearest points are recovered
rationally from the pencil's multiple zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .discrim import (
    bezout_matrix,
    bezout_matrix_biv,
    discriminant_biv_param,
    discriminant_param,
    multiple_zero_biv,
    multiple_zero_uni,
)
from .errors import DegeneracyError, NoPositiveRootError
from .linalg import (
    MatrixQ,
    NEGATIVE_DEFINITE,
    POSITIVE_DEFINITE,
    VectorQ,
    block_matrix,
    definiteness,
    det_bipoly_matrix,
    det_unipoly_matrix,
    determinant,
    inverse,
    rank,
    solve_linear,
)
from .poly import BiPoly, ParamPoly, UniPoly
from .realroots import (
    MIXED_OR_ZERO,
    NO_REAL_ROOTS,
    isolate_real_roots,
    real_root_signs,
    refine_interval,
)
from .scalar import QQ, rational, snap, sqrt_approx, tolerance

MU = "mu"
LAM = "lam"
ZVAR = "z"


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


class Quadric:
    """Surface X^T A X + 2 B^T X - 1 = 0."""

    __slots__ = ("a", "b", "dim")

    def __init__(self, a: MatrixQ, b: VectorQ):
        if not a.is_symmetric():
            raise ValueError("quadric matrix must be symmetric")
        if a.rows != b.dim:
            raise ValueError("dimension mismatch between matrix and vector")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "dim", a.rows)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Quadric is immutable")

    def __eq__(self, other):
        return isinstance(other, Quadric) and self.a == other.a and self.b == other.b

    def residual_at(self, x: VectorQ):
        """X^T A X + 2 B^T X - 1 at the given point."""
        return x.dot(self.a * x) + 2 * self.b.dot(x) - 1

    @property
    def centered(self) -> bool:
        return self.b.is_zero()


def normalize(a: MatrixQ, b: VectorQ, c) -> Quadric:
    """Scale X^T A X + 2 B^T X + c = 0 so that the constant becomes -1."""
    c = rational(c)
    if not c:
        raise ValueError("surface through the origin: constant term must be nonzero")
    s = QQ(-1) / c
    return Quadric(a.scale(s), b.scale(s))


def quadric_from_equation(coeffs: MatrixQ, linear: VectorQ, constant) -> Quadric:
    return normalize(coeffs, linear, constant)


class LinearVariety:
    """Affine subspace C^T X = H with linearly independent columns in C."""

    __slots__ = ("c", "h", "gram", "dim", "codim")

    def __init__(self, c: MatrixQ, h: VectorQ | None = None):
        k = c.cols
        if k > c.rows:
            raise ValueError("more columns than ambient dimension")
        if rank(c) != k:
            raise ValueError("columns are not linearly independent")
        if h is None:
            h = VectorQ.zero(k)
        if h.dim != k:
            raise ValueError("offset length must match the number of columns")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "gram", c.transpose() * c)
        object.__setattr__(self, "dim", c.rows)
        object.__setattr__(self, "codim", k)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("LinearVariety is immutable")

    @property
    def homogeneous(self) -> bool:
        return self.h.is_zero()

    def residual_at(self, y: VectorQ):
        r = self.c.transpose() * y - self.h
        return max((abs(e) for e in r), default=QQ(0))


@dataclass
class RootInfo:
    value: object
    error: object
    multiplicity: int


@dataclass
class NearestPair:
    x: tuple
    y: tuple
    residuals: dict


@dataclass
class DistanceReport:
    kind: str
    intersecting: bool
    certificate: dict
    fz: UniPoly | None = None
    extraneous_z_power: int = 0
    positive_zeros: list = field(default_factory=list)
    z_star: RootInfo | None = None
    d: object = None
    d_error: object = None
    simple: bool | None = None
    multipliers: dict = field(default_factory=dict)
    nearest_pairs: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    alternate_z: RootInfo | None = None
    t_star: object = None


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def ellipsoid_definiteness(q: Quadric) -> str:
    d = definiteness(q.a)
    if d not in (POSITIVE_DEFINITE, NEGATIVE_DEFINITE):
        raise DegeneracyError(
            "not-an-ellipsoid", "quadric matrix is not sign-definite"
        )
    return d


def check_real_ellipsoid(q: Quadric) -> str:
    """Definiteness of A, verifying the surface is nonempty over the reals."""
    d = ellipsoid_definiteness(q)
    if d == NEGATIVE_DEFINITE:
        radius = 1 + q.b.dot(solve_linear(q.a, q.b))
        if radius >= 0:
            raise DegeneracyError("empty-surface", "surface has no real points")
    return d


# ---------------------------------------------------------------------------
# pencils: the polynomial whose discriminant in mu gives F(z)
# ---------------------------------------------------------------------------


def _pencil_from_affine_entry(d0: UniPoly, k: UniPoly) -> ParamPoly:
    """Assemble D0(mu) + mu*z*K(mu) as a polynomial in mu with z-linear coefficients."""
    deg = max(d0.degree, k.degree + 1)
    coeffs = []
    for j in range(deg + 1):
        const = d0.coeff(j)
        zc = k.coeff(j - 1) if j >= 1 else QQ(0)
        coeffs.append(UniPoly([const, zc], ZVAR))
    return ParamPoly(coeffs, MU, ZVAR)


def variety_pencil(e: Quadric, v: LinearVariety) -> ParamPoly:
    """The bordered-determinant pencil for an ellipsoid vs linear variety.

    Rows carrying the Gram block are pre-scaled by mu so the result is a
    genuine polynomial in mu; z enters linearly through the corner entry.
    When the columns are orthonormal the smaller equivalent determinant is
    used.
    """
    n, k = e.dim, v.codim
    mu = UniPoly.x(MU)
    a, b, c, h, g = e.a, e.b, v.c, v.h, v.gram
    if g == MatrixQ.identity(k) and v.homogeneous:
        # reduced form: det([[A - mu C C^T, B], [B^T, -1 + mu z]])
        cct = c * c.transpose()
        rows = []
        for i in range(n):
            rows.append(
                [a.entry(i, j) - mu * cct.entry(i, j) for j in range(n)]
                + [UniPoly.const(b[i], MU)]
            )
        rows.append([UniPoly.const(b[j], MU) for j in range(n)] + [UniPoly.const(QQ(-1), MU)])
        d0 = det_unipoly_matrix(rows, MU)
        krows = [
            [a.entry(i, j) - mu * cct.entry(i, j) for j in range(n)] for i in range(n)
        ]
        kpoly = det_unipoly_matrix(krows, MU)
        return _pencil_from_affine_entry(d0, kpoly)
    # full bordered determinant with the Gram rows scaled by mu
    size = n + 1 + k
    rows = []
    for i in range(n):
        rows.append(
            [UniPoly.const(a.entry(i, j), MU) for j in range(n)]
            + [UniPoly.const(b[i], MU)]
            + [UniPoly.const(c.entry(i, j), MU) for j in range(k)]
        )
    rows.append(
        [UniPoly.const(b[j], MU) for j in range(n)]
        + [UniPoly.const(QQ(-1), MU)]
        + [UniPoly.const(-h[j], MU) for j in range(k)]
    )
    for i in range(k):
        rows.append(
            [mu * c.entry(j, i) for j in range(n)]
            + [mu * (-h[i])]
            + [UniPoly.const(g.entry(i, j), MU) for j in range(k)]
        )
    d0 = det_unipoly_matrix(rows, MU)
    krows = [
        [UniPoly.const(a.entry(i, j), MU) for j in range(n)]
        + [UniPoly.const(c.entry(i, j), MU) for j in range(k)]
        for i in range(n)
    ] + [
        [mu * c.entry(j, i) for j in range(n)]
        + [UniPoly.const(g.entry(i, j), MU) for j in range(k)]
        for i in range(k)
    ]
    kpoly = det_unipoly_matrix(krows, MU)
    return _pencil_from_affine_entry(d0, kpoly)


def point_pencil(e: Quadric, x0: VectorQ) -> ParamPoly:
    """Pencil for the point-to-quadric problem: the (n+1) bordered determinant."""
    n = e.dim
    mu = UniPoly.x(MU)
    a, b = e.a, e.b
    x0n2 = x0.dot(x0)
    rows = []
    for i in range(n):
        rows.append(
            [a.entry(i, j) - (mu if i == j else 0) for j in range(n)]
            + [b[i] + mu * x0[i]]
        )
    rows.append([b[j] + mu * x0[j] for j in range(n)] + [UniPoly((-1, -x0n2), MU)])
    d0 = det_unipoly_matrix(rows, MU)
    krows = [
        [a.entry(i, j) - (mu if i == j else 0) for j in range(n)] for i in range(n)
    ]
    kpoly = det_unipoly_matrix(krows, MU)
    return _pencil_from_affine_entry(d0, kpoly)


def centered_pencil(q1: Quadric, q2: Quadric) -> ParamPoly:
    """det(lam A1 + (z - lam) A2 - lam (z - lam) A1 A2) as a pencil in lam, z."""
    n = q1.dim
    lam = BiPoly.variable(0, (LAM, ZVAR))
    z = BiPoly.variable(1, (LAM, ZVAR))
    a1a2 = q1.a * q2.a
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = (
                lam * q1.a.entry(i, j)
                + (z - lam) * q2.a.entry(i, j)
                - lam * (z - lam) * a1a2.entry(i, j)
            )
            row.append(entry)
        rows.append(row)
    det = det_bipoly_matrix(rows, (LAM, ZVAR))
    return det.as_parampoly(0)


def general_sign_pencil(q1: Quadric, q2: Quadric) -> ParamPoly:
    """Pencil whose discriminant's real-root signs certify intersection."""
    n = q1.dim
    lam = UniPoly.x(LAM)
    rows = []
    for i in range(n):
        rows.append(
            [q2.a.entry(i, j) - lam * q1.a.entry(i, j) for j in range(n)]
            + [q2.b[i] - lam * q1.b[i]]
        )
    rows.append(
        [q2.b[j] - lam * q1.b[j] for j in range(n)] + [UniPoly.const(QQ(-1), LAM) + lam]
    )
    d0 = det_unipoly_matrix(rows, LAM)
    # z multiplies the corner cofactor with coefficient -1
    krows = [
        [q2.a.entry(i, j) - lam * q1.a.entry(i, j) for j in range(n)] for i in range(n)
    ]
    kpoly = det_unipoly_matrix(krows, LAM)
    deg = max(d0.degree, kpoly.degree)
    coeffs = []
    for j in range(deg + 1):
        coeffs.append(UniPoly([d0.coeff(j), -kpoly.coeff(j)], ZVAR))
    return ParamPoly(coeffs, LAM, ZVAR)


def general_bipoly_at(q1: Quadric, q2: Quadric, z):
    """The two-multiplier determinant polynomial at a fixed rational z."""
    n = q1.dim
    z = rational(z)
    m1 = BiPoly.variable(0, ("mu1", "mu2"))
    m2 = BiPoly.variable(1, ("mu1", "mu2"))
    a1, b1, a2, b2 = q1.a, q1.b, q2.a, q2.b
    a2a1 = a2 * a1
    a2b1 = a2 * b1
    b2a1 = [sum((b2[i] * a1.entry(i, j) for i in range(n)), QQ(0)) for j in range(n)]
    b2b1 = b2.dot(b1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(
                m1 * a1.entry(i, j) + m2 * a2.entry(i, j) - a2a1.entry(i, j)
            )
        row.append(m1 * b1[i] + m2 * b2[i] - a2b1[i])
        rows.append(row)
    last = []
    for j in range(n):
        last.append(m1 * b1[j] + m2 * b2[j] - b2a1[j])
    last.append(-m1 - m2 - b2b1 + m1 * m2 * z)
    rows.append(last)
    return det_bipoly_matrix(rows, ("mu1", "mu2"))


# ---------------------------------------------------------------------------
# intersection certificates
# ---------------------------------------------------------------------------


def variety_intersects(e: Quadric, v: LinearVariety):
    """(intersects, certificate) for an ellipsoid vs linear variety.

    The bordered-determinant sign rule compares the constrained critical
    value against the value at infinity along the variety, so it needs the
    variety to be at least one-dimensional; a zero-dimensional variety (full
    codimension) is a point and is tested by direct substitution.
    """
    d = ellipsoid_definiteness(e)
    n, k = e.dim, v.codim
    if k == n:
        point = solve_linear(v.c.transpose(), v.h)
        res = e.residual_at(point)
        return not res, res
    zero_kk = MatrixQ.zeros(k, k)
    bordered = block_matrix(
        [
            [e.a, MatrixQ.from_columns([list(e.b)]), v.c],
            [
                MatrixQ([list(e.b)]),
                MatrixQ([[QQ(-1)]]),
                MatrixQ([[-h for h in v.h]]),
            ],
            [v.c.transpose(), MatrixQ.from_columns([[-h for h in v.h]]), zero_kk],
        ]
    )
    cert = determinant(bordered)
    factor = (-1) ** (k - 1) if d == POSITIVE_DEFINITE else (-1) ** n
    return cert * factor >= 0, cert


def centered_intersects(q1: Quadric, q2: Quadric):
    """Centered quadrics intersect iff A1 - A2 is not sign-definite."""
    if not q1.centered or not q2.centered:
        raise ValueError("both quadrics must be centered")
    if definiteness(q1.a) != POSITIVE_DEFINITE:
        raise DegeneracyError("not-an-ellipsoid", "first matrix must be positive definite")
    cls = definiteness(q1.a - q2.a)
    return cls not in (POSITIVE_DEFINITE, NEGATIVE_DEFINITE), cls


def _critical_sign_range(q1: Quadric, q2: Quadric, bits: int = 96):
    """Signs of the second quadric's function over the first ellipsoid.

    The critical points of V(X) = X^T A2 X + 2 B2^T X - 1 on the first
    surface satisfy X(lam) = (A2 - lam A1)^(-1) (lam B1 - B2) together with
    the first surface equation; substituting the parameterization gives one
    polynomial H(lam) whose real zeros carry every critical point. V is
    continuous on a compact surface, so its range is [min, max] over those
    zeros and the intersection verdict only needs the signs, determined
    exactly by refining each root bracket until the sign polynomial has no
    zero inside it.

    Returns (has_negative_or_zero, has_positive_or_zero, has_zero).
    """
    from .poly import poly_gcd
    from .realroots import refine_interval, sturm_chain, _count_between

    n = q1.dim
    lam = UniPoly.x(LAM)
    m_rows = [
        [q2.a.entry(i, j) - lam * q1.a.entry(i, j) for j in range(n)]
        for i in range(n)
    ]
    det_m = det_unipoly_matrix(m_rows, LAM)
    # adjugate of the polynomial matrix, via cofactors of the minors
    def minor(rows, i, j):
        sub = [
            [rows[r][c] for c in range(n) if c != j]
            for r in range(n)
            if r != i
        ]
        if not sub:
            return UniPoly.const(1, LAM)
        return det_unipoly_matrix(sub, LAM)

    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            mnr = minor(m_rows, j, i)
            adj[i][j] = mnr if (i + j) % 2 == 0 else -mnr
    rhs = [lam * q1.b[i] - q2.b[i] for i in range(n)]
    w = [
        sum((adj[i][j] * rhs[j] for j in range(n)), UniPoly.zero(LAM))
        for i in range(n)
    ]

    def quad_value(a, b):
        acc = UniPoly.zero(LAM)
        for i in range(n):
            row = sum((a.entry(i, j) * w[j] for j in range(n)), UniPoly.zero(LAM))
            acc = acc + w[i] * row
        lin = sum((b[i] * w[i] for i in range(n)), UniPoly.zero(LAM))
        return acc + 2 * det_m * lin - det_m * det_m

    h = quad_value(q1.a, q1.b)
    v_num = quad_value(q2.a, q2.b)
    if not h:
        raise DegeneracyError("degenerate-critical-system", "constraint vanishes")
    # strip multiplier values where the parameterization blows up
    g = poly_gcd(h, det_m)
    while g.degree > 0:
        h = h / g
        g = poly_gcd(h, det_m)
    if h.degree < 1:
        raise DegeneracyError(
            "degenerate-critical-system", "no finite critical multipliers"
        )
    intervals = isolate_real_roots(h)
    if not intervals:
        raise DegeneracyError(
            "degenerate-critical-system", "no real critical multiplier"
        )
    shared = poly_gcd(h, v_num)
    chain = sturm_chain(v_num)
    has_neg = has_pos = has_zero = False
    for iv in intervals:
        if iv.exact:
            value = v_num.eval(iv.lo)
            if not value:
                has_zero = True
            elif value > 0:
                has_pos = True
            else:
                has_neg = True
            continue
        if shared.degree > 0 and (shared.eval(iv.lo) > 0) != (shared.eval(iv.hi) > 0):
            has_zero = True  # V vanishes exactly at this critical point
            continue
        r = refine_interval(iv, h, bits)
        width = bits
        while not r.exact and _count_between(chain, r.lo, r.hi):
            width += 64
            r = refine_interval(r, h, width)
        value = v_num.eval(r.lo if r.exact else r.midpoint)
        if not value:
            has_zero = True
        elif value > 0:
            has_pos = True
        else:
            has_neg = True
    return has_neg, has_pos, has_zero


def general_intersects(q1: Quadric, q2: Quadric):
    """(intersects, sign summary, Phi) via the real-root signs of Phi(z).

    Phi's real zeros carry the critical values of the second quadric's
    function on the first surface; the surfaces intersect exactly when those
    take both signs or vanish. Multiple real zeros of Phi are ambiguous
    (they may come from complex critical pairs, as mirror-symmetric
    configurations show), so in that case the verdict falls back to the
    direct critical-value analysis.
    """
    ellipsoid_definiteness(q1)
    pencil = general_sign_pencil(q1, q2)
    n = q1.dim
    phi = discriminant_param(pencil, degree_bound=2 * (n + 1))
    if not phi:
        raise DegeneracyError("identically-zero-pencil", "sign pencil degenerates")
    phi = phi.normalized()
    summary = real_root_signs(phi)
    ambiguous = any(iv.multiplicity > 1 for iv in isolate_real_roots(phi))
    if not ambiguous:
        return summary == MIXED_OR_ZERO, summary, phi
    has_neg, has_pos, has_zero = _critical_sign_range(q1, q2)
    return has_zero or (has_neg and has_pos), summary, phi


# ---------------------------------------------------------------------------
# distance polynomials
# ---------------------------------------------------------------------------


def _finalize_distance_poly(f: UniPoly) -> UniPoly:
    if not f:
        raise DegeneracyError(
            "identically-zero-discriminant", "distance polynomial degenerates to zero"
        )
    return f.normalized()


def variety_distance_poly(e: Quadric, v: LinearVariety) -> UniPoly:
    """F(z): squared distance to the variety is its minimal positive simple zero."""
    pencil = variety_pencil(e, v)
    k = v.codim
    return _finalize_distance_poly(
        discriminant_param(pencil, degree_bound=2 * (k + 1))
    )


def point_distance_poly(e: Quadric, x0: VectorQ) -> UniPoly:
    """F(z) for the distance from a point to the quadric."""
    if not e.residual_at(x0):
        raise ValueError("point lies on the quadric")
    pencil = point_pencil(e, x0)
    n = e.dim
    return _finalize_distance_poly(
        discriminant_param(pencil, degree_bound=2 * (n + 1))
    )


def _squarefree_in_main(pencil: ParamPoly) -> ParamPoly:
    """Divide a pencil by its repeated main-variable factors.

    Works over the rational-function field in the parameter, then clears
    denominators; used when the raw discriminant degenerates identically
    (coaxial or concentric configurations with repeated pencil factors).
    """
    from .poly import RatFunc, divrem, field_gcd

    var = pencil.param_var
    coeffs = [RatFunc(c) for c in pencil.coeffs]
    g = UniPoly(coeffs, pencil.main_var)
    dg = g.derivative()
    h = field_gcd(g, dg)
    if h.degree == 0:
        return pencil
    sf, r = divrem(g, h)
    if r:
        raise AssertionError("inexact square-free division")
    from .poly import poly_gcd

    lcm = UniPoly.const(1, var)
    for c in sf.coeffs:
        d = c.den
        lcm = (lcm * d) / poly_gcd(lcm, d)
    new_coeffs = [c.num * (lcm / c.den) for c in sf.coeffs]
    return ParamPoly(new_coeffs, pencil.main_var, var)


def centered_distance_poly(q1: Quadric, q2: Quadric) -> UniPoly:
    """F(z) for two centered quadrics (trailing z-power factor retained).

    If the pencil determinant carries repeated factors for every z (spheres
    or other coinciding-eigenvalue configurations) the discriminant vanishes
    identically; the square-free part of the pencil is used instead.
    """
    pencil = centered_pencil(q1, q2)
    n = q1.dim
    f = discriminant_param(pencil, degree_bound=4 * n * n)
    if not f:
        reduced = _squarefree_in_main(pencil)
        if reduced.degree < 2:
            raise DegeneracyError(
                "identically-zero-discriminant",
                "pencil reduces below quadratic degree",
            )
        f = discriminant_param(reduced, degree_bound=4 * n * n)
    return _finalize_distance_poly(f)


def translate_quadric(q: Quadric, tau: VectorQ) -> Quadric | None:
    """The same surface shifted by +tau, renormalized; None if that fails."""
    c = tau.dot(q.a * tau) - 2 * q.b.dot(tau) - 1
    if not c:
        return None
    b = q.b - (q.a * tau)
    return normalize(q.a, b, c)


def _translation_candidates(n: int):
    base = [
        [QQ(0)] * (n - 1) + [QQ(1)],
        [QQ(1, i + 2) for i in range(n)],
        [QQ(0)] * (n - 1) + [QQ(2)],
        [QQ(i + 1, 2) for i in range(n)],
        [QQ(-1, i + 3) for i in range(n)],
        [QQ(2 * i + 1, 3) for i in range(n)],
    ]
    return [VectorQ(v) for v in base]


def _general_raw(q1: Quadric, q2: Quadric) -> UniPoly:
    n = q1.dim
    expected = n + 2
    bound = 2 * n * (n + 1) + 2 * n * n

    def build(z):
        return general_bipoly_at(q1, q2, z)

    return discriminant_biv_param(build, expected, bound, var=ZVAR)


def general_distance_poly_full(q1: Quadric, q2: Quadric):
    """(F(z), extraneous square factor) for two quadrics in general position.

    The two-multiplier discriminant carries, on top of the critical values of
    the squared distance, an extraneous perfect-square factor E(z)^2 of total
    degree dim*(dim-1). It is recognized by exactly that signature in the
    square-free decomposition and divided out; when the signature is absent
    (coincident genuine double zeros) the raw polynomial is returned intact
    and candidate validation downstream copes with it.
    """
    from .poly import squarefree_decomposition

    raw = _finalize_distance_poly(_general_raw(q1, q2))
    n = q1.dim
    m = trailing_z_power(raw)
    body = UniPoly(raw.coeffs[m:], raw.var) if m else raw
    factors = squarefree_decomposition(body)
    if all(k in (1, 2) for _, k in factors):
        square = UniPoly.const(1, raw.var)
        for fac, k in factors:
            if k == 2:
                square = square * fac
        if square.degree * 2 == n * (n - 1):
            reduced = body / (square * square)
            if m:
                reduced = reduced.shift_up(m)
            return _finalize_distance_poly(reduced), square.normalized()
    return raw, None


def general_distance_poly(q1: Quadric, q2: Quadric) -> UniPoly:
    """F(z) for two quadrics in general position, via the bivariate discriminant."""
    f, _ = general_distance_poly_full(q1, q2)
    return f


def trailing_z_power(f: UniPoly) -> int:
    m = 0
    for c in f.coeffs:
        if c:
            break
        m += 1
    return m


# ---------------------------------------------------------------------------
# nearest-point recovery
# ---------------------------------------------------------------------------


def _scaled_pencil_residuals(g: UniPoly, mu):
    scale = sum((abs(c) * max(QQ(1), abs(mu)) ** i for i, c in enumerate(g.coeffs)), QQ(0))
    if not scale:
        return QQ(0), QQ(0)
    r0 = abs(g.eval(mu)) / scale
    r1 = abs(g.derivative().eval(mu)) / scale
    return r0, r1


def variety_nearest_points(e: Quadric, v: LinearVariety, z_hat, bits: int = 128):
    """Nearest points (X on the quadric, Y on the variety) at the refined z.

    Returns (X, Y, info) where info carries the multiplier data and residuals.
    """
    z_hat = snap(z_hat, bits - 16)
    pencil = variety_pencil(e, v)
    g = pencil.eval_param(z_hat)
    data = bezout_matrix(g)
    mu = multiple_zero_uni(data, strict=False)
    mu = snap(mu, bits - 16)
    r0, r1 = _scaled_pencil_residuals(g, mu)
    tol = tolerance(bits)
    if r0 > tol or r1 > tol:
        raise DegeneracyError(
            "multiple-zero-residual", "recovered pencil zero fails the residual gate"
        )
    a_inv = inverse(e.a)
    m = (v.c.transpose() * a_inv * v.c).scale(mu) - v.gram
    if not determinant(m):
        raise DegeneracyError(
            "singular-multiplier-system",
            "distance attained at multiple point pairs",
        )
    rhs = (v.c.transpose() * (a_inv * e.b) + v.h).scale(QQ(-2))
    nu = solve_linear(m, rhs)
    cnu = v.c * nu
    x = -(a_inv * e.b) - (a_inv * cnu).scale(mu / 2)
    y = x + cnu.scale(QQ(1, 2))
    info = {
        "mu": mu,
        "multipliers": tuple(nu),
        "pencil_residuals": (r0, r1),
    }
    return x, y, info


def centered_nearest_points(q1: Quadric, q2: Quadric, z_hat, lam_hat, bits: int = 128):
    """Nearest points on two centered quadrics from the pencil kernel.

    X spans the kernel of M = lam A1 + (z - lam) A2 - lam (z - lam) A2 A1 and
    is read off a nonzero column of the adjugate; Y comes from a nonzero row.
    Both are normalized onto their quadrics; the sign pairing is fixed by the
    distance identity.
    """
    from .linalg import adjugate

    n = q1.dim
    lam, z = lam_hat, z_hat
    coef = lam * (z - lam)
    m = q1.a.scale(lam) + q2.a.scale(z - lam) - (q2.a * q1.a).scale(coef)
    adj = adjugate(m)
    best_col, best_col_size = None, QQ(-1)
    best_row, best_row_size = None, QQ(-1)
    for j in range(n):
        size = sum((abs(adj.entry(i, j)) for i in range(n)), QQ(0))
        if size > best_col_size:
            best_col_size, best_col = size, adj.col(j)
        size = sum((abs(adj.entry(j, i)) for i in range(n)), QQ(0))
        if size > best_row_size:
            best_row_size, best_row = size, adj.row(j)
    if not best_col_size or not best_row_size:
        raise DegeneracyError("vanishing-adjugate", "kernel recovery failed")
    x_dir, y_dir = best_col, best_row
    qx = x_dir.dot(q1.a * x_dir)
    qy = y_dir.dot(q2.a * y_dir)
    if qx <= 0 or qy <= 0:
        raise DegeneracyError(
            "complex-nearest-points", "normalization radicand is not positive"
        )
    sx, _ = sqrt_approx(qx, bits)
    sy, _ = sqrt_approx(qy, bits)
    x = x_dir.scale(1 / sx)
    y = y_dir.scale(1 / sy)
    # the two sign choices differ in |X - Y|^2; pick the one matching z
    d_plus = (x - y).norm2()
    d_minus = (x + y).norm2()
    if abs(d_plus - z) > abs(d_minus - z):
        y = -y
    return x, y


def general_nearest_points(q1: Quadric, q2: Quadric, z_hat, bits: int = 128):
    """Nearest points for general quadrics via the two recovered multipliers."""
    z_hat = snap(z_hat, bits - 16)
    g = general_bipoly_at(q1, q2, z_hat)
    data = bezout_matrix_biv(g)
    mu1, mu2 = multiple_zero_biv(data, strict=False)
    mu1 = snap(mu1, bits - 16)
    mu2 = snap(mu2, bits - 16)
    # residual gate on the bivariate pencil
    tol = tolerance(bits)
    scale = sum((abs(c) for _, c in g.terms()), QQ(0)) * max(
        QQ(1), abs(mu1), abs(mu2)
    ) ** g.total_degree
    for h in (g, g.derivative(0), g.derivative(1)):
        if abs(h.eval(mu1, mu2)) / scale > tol:
            raise DegeneracyError(
                "multiple-zero-residual", "recovered pencil zero fails the residual gate"
            )
    lam1 = 1 / mu2
    lam2 = 1 / mu1
    a1_inv = inverse(q1.a)
    a2_inv = inverse(q2.a)
    m = MatrixQ.identity(q1.dim) - a1_inv.scale(1 / lam1) - a2_inv.scale(1 / lam2)
    if not determinant(m):
        raise DegeneracyError("singular-multiplier-system", "kernel matrix is singular")
    q = -(a1_inv * q1.b) + (a2_inv * q2.b)
    w = solve_linear(m, q)
    x = -(a1_inv * q1.b) + (a1_inv * w).scale(1 / lam1)
    y = -(a2_inv * q2.b) - (a2_inv * w).scale(1 / lam2)
    return x, y, {"lam1": lam1, "lam2": lam2, "mu1": mu1, "mu2": mu2}


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------


@dataclass
class PointQuadricProblem:
    quadric: Quadric
    point: VectorQ


@dataclass
class VarietyQuadricProblem:
    quadric: Quadric
    variety: LinearVariety


@dataclass
class QuadricPairProblem:
    first: Quadric
    second: Quadric
    centered: bool = False


def _positive_roots_info(f: UniPoly, bits: int):
    infos = []
    intervals = []
    for iv in isolate_real_roots(f):
        if (iv.exact and iv.lo > 0) or (not iv.exact and iv.lo >= 0):
            r = refine_interval(iv, f, bits)
            val = r.lo if r.exact else (r.lo + r.hi) / 2
            err = QQ(0) if r.exact else r.width / 2
            infos.append(RootInfo(val, err, iv.multiplicity))
            intervals.append(r)
    return infos, intervals


def _distance_fields(report: DistanceReport, z_info: RootInfo, bits: int):
    report.z_star = z_info
    d, derr = sqrt_approx(z_info.value, bits)
    report.d = d
    report.d_error = derr


def _geometric_residuals(pairs, e1, other, z_hat):
    out = []
    for x, y in pairs:
        res = {
            "on_first_surface": abs(e1.residual_at(x)),
            "distance_identity": abs((x - y).norm2() - z_hat),
        }
        if isinstance(other, Quadric):
            res["on_second_surface"] = abs(other.residual_at(y))
        else:
            res["on_variety"] = other.residual_at(y)
        out.append(res)
    return out


def _residuals_pass(residuals, bits):
    tol = tolerance(bits)
    return all(v <= tol for r in residuals for v in r.values())


def solve_variety(e: Quadric, v: LinearVariety, bits: int = 128) -> DistanceReport:
    check_real_ellipsoid(e)
    if e.dim != v.dim:
        raise ValueError("quadric and variety dimensions differ")
    inter, cert = variety_intersects(e, v)
    report = DistanceReport(
        kind="variety-quadric",
        intersecting=inter,
        certificate={"bordered_determinant": cert},
    )
    if inter:
        report.d = QQ(0)
        report.d_error = QQ(0)
        return report
    f = variety_distance_poly(e, v)
    report.fz = f
    report.extraneous_z_power = trailing_z_power(f)
    infos, _ = _positive_roots_info(f, bits)
    report.positive_zeros = infos
    if not infos:
        raise NoPositiveRootError()
    return _finish_with_recovery(
        report,
        infos,
        bits,
        recover=lambda z_hat: variety_nearest_points(e, v, z_hat, bits),
        first=e,
        other=v,
    )


def solve_point(e: Quadric, x0: VectorQ, bits: int = 128) -> DistanceReport:
    check_real_ellipsoid(e)
    if e.dim != x0.dim:
        raise ValueError("point dimension mismatch")
    side = e.residual_at(x0)
    if not side:
        report = DistanceReport(
            kind="point-quadric",
            intersecting=True,
            certificate={"point_residual": side},
        )
        report.d = QQ(0)
        report.d_error = QQ(0)
        return report
    report = DistanceReport(
        kind="point-quadric",
        intersecting=False,
        certificate={"point_residual": side},
    )
    f = point_distance_poly(e, x0)
    report.fz = f
    report.extraneous_z_power = trailing_z_power(f)
    infos, _ = _positive_roots_info(f, bits)
    report.positive_zeros = infos
    if not infos:
        raise NoPositiveRootError()
    variety = LinearVariety(MatrixQ.identity(e.dim), x0)

    return _finish_with_recovery(
        report,
        infos,
        bits,
        recover=lambda z_hat: variety_nearest_points(e, variety, z_hat, bits),
        first=e,
        other=variety,
    )


def solve_centered(q1: Quadric, q2: Quadric, bits: int = 128) -> DistanceReport:
    if q1.dim != q2.dim:
        raise ValueError("dimension mismatch")
    inter, cls = centered_intersects(q1, q2)
    report = DistanceReport(
        kind="centered-quadric-quadric",
        intersecting=inter,
        certificate={"difference_definiteness": cls},
    )
    if inter:
        report.d = QQ(0)
        report.d_error = QQ(0)
        return report
    f = centered_distance_poly(q1, q2)
    report.fz = f
    report.extraneous_z_power = trailing_z_power(f)
    infos, _ = _positive_roots_info(f, bits)
    report.positive_zeros = infos
    if not infos:
        raise NoPositiveRootError()

    def recover(z_hat):
        z_hat = snap(z_hat, bits - 16)
        pencil = centered_pencil(q1, q2)
        g = pencil.eval_param(z_hat)
        data = bezout_matrix(g)
        lam = snap(multiple_zero_uni(data, strict=False), bits - 16)
        r0, r1 = _scaled_pencil_residuals(g, lam)
        tol = tolerance(bits)
        if r0 > tol or r1 > tol:
            raise DegeneracyError(
                "multiple-zero-residual",
                "recovered pencil zero fails the residual gate",
            )
        x, y = centered_nearest_points(q1, q2, z_hat, lam, bits)
        return x, y, {"lam": lam, "pencil_residuals": (r0, r1)}

    report = _finish_with_recovery(
        report, infos, bits, recover=recover, first=q1, other=q2, symmetric_pairs=True
    )
    return report


def _is_scalar_matrix(m: MatrixQ):
    a = m.entry(0, 0)
    for i in range(m.rows):
        for j in range(m.cols):
            if m.entry(i, j) != (a if i == j else 0):
                return None
    return a


def _sphere_data(q: Quadric):
    """(center, squared radius) when the quadric is a sphere, else None."""
    alpha = _is_scalar_matrix(q.a)
    if alpha is None or not alpha:
        return None
    center = q.b.scale(QQ(-1) / alpha)
    r2 = (1 + q.b.dot(q.b) / alpha) / alpha
    return center, r2


def _solve_sphere_sphere(q1: Quadric, q2: Quadric, bits: int) -> DistanceReport:
    """Two spheres: the pencil determinant factors identically, so the
    distance polynomial comes from the one-dimensional coaxial reduction.

    Critical squared distances are (sqrt(D2) +- r1 +- r2)^2; their product
    polynomial has rational coefficients by symmetry.
    """
    (c1, r1sq) = _sphere_data(q1)
    (c2, r2sq) = _sphere_data(q2)
    if r1sq <= 0 or r2sq <= 0:
        raise DegeneracyError("empty-surface", "sphere has no real points")
    delta = c1 - c2
    d2 = delta.norm2()
    t = d2 - r1sq - r2sq
    cert = t * t - 4 * r1sq * r2sq
    report = DistanceReport(
        kind="quadric-quadric",
        intersecting=cert <= 0,
        certificate={"sphere_gap": cert},
    )
    report.warnings.append("sphere pair solved by the coaxial reduction")
    if report.intersecting:
        report.d = QQ(0)
        report.d_error = QQ(0)
        return report
    e1 = 2 * (r1sq + r2sq)
    e0 = (r1sq - r2sq) ** 2
    z = UniPoly.x(ZVAR)
    u = (z - d2) ** 2
    v = z + d2
    f = u * u + u * (e1 * e1 - 2 * e0 - 2 * e1 * v) + (
        e0 * e0 - 2 * e0 * e1 * v + 4 * e0 * v * v
    )
    f = _finalize_distance_poly(f)
    report.fz = f
    report.extraneous_z_power = trailing_z_power(f)
    infos, _ = _positive_roots_info(f, bits)
    report.positive_zeros = infos
    if not infos:
        raise NoPositiveRootError()

    def recover(z_hat):
        if not d2:
            raise DegeneracyError(
                "singular-multiplier-system", "concentric spheres: no unique pair"
            )
        inv_norm, _ = sqrt_approx(1 / d2, bits + 16)
        r1a, _ = sqrt_approx(r1sq, bits + 16)
        r2a, _ = sqrt_approx(r2sq, bits + 16)
        unit = delta.scale(inv_norm)
        best = None
        for s1 in (1, -1):
            for s2 in (1, -1):
                x = c1 + unit.scale(s1 * r1a)
                y = c2 + unit.scale(s2 * r2a)
                gap = abs((x - y).norm2() - z_hat)
                if best is None or gap < best[0]:
                    best = (gap, x, y)
        return best[1], best[2], {"direction": tuple(unit)}

    return _finish_with_recovery(
        report, infos, bits, recover=recover, first=q1, other=q2
    )


def _check_real_if_definite(q: Quadric):
    d = definiteness(q.a)
    if d == NEGATIVE_DEFINITE:
        radius = 1 + q.b.dot(solve_linear(q.a, q.b))
        if radius >= 0:
            raise DegeneracyError("empty-surface", "second surface has no real points")


def solve_general(q1: Quadric, q2: Quadric, bits: int = 128) -> DistanceReport:
    if q1.dim != q2.dim:
        raise ValueError("dimension mismatch")
    check_real_ellipsoid(q1)
    _check_real_if_definite(q2)
    if q1 == q2:
        return DistanceReport(
            kind="quadric-quadric",
            intersecting=True,
            certificate={"identical": True},
            d=QQ(0),
            d_error=QQ(0),
        )
    if _sphere_data(q1) is not None and _sphere_data(q2) is not None:
        return _solve_sphere_sphere(q1, q2, bits)
    try:
        return _solve_general_direct(q1, q2, bits)
    except DegeneracyError as first_exc:
        # symmetric configurations (coaxial, concentric) degenerate the
        # two-multiplier pencil identically; a common translation of both
        # surfaces preserves every distance and breaks the alignment
        for tau in _translation_candidates(q1.dim):
            t1 = translate_quadric(q1, tau)
            t2 = translate_quadric(q2, tau)
            if t1 is None or t2 is None:
                continue
            try:
                report = _solve_general_direct(t1, t2, bits)
            except DegeneracyError:
                continue
            report.warnings.append(
                "solved in coordinates translated by "
                + "(" + ", ".join(str(c) for c in tau) + ")"
            )
            report.nearest_pairs = [
                NearestPair(
                    tuple(a - b for a, b in zip(p.x, tau)),
                    tuple(a - b for a, b in zip(p.y, tau)),
                    p.residuals,
                )
                for p in report.nearest_pairs
            ]
            return report
        raise first_exc


def _solve_general_direct(q1: Quadric, q2: Quadric, bits: int) -> DistanceReport:
    inter, summary, phi = general_intersects(q1, q2)
    report = DistanceReport(
        kind="quadric-quadric",
        intersecting=inter,
        certificate={"root_sign_summary": summary, "phi": phi},
    )
    if summary == NO_REAL_ROOTS:
        report.warnings.append(
            "sign pencil has no real zeros; classified as non-intersecting"
        )
    if inter:
        report.d = QQ(0)
        report.d_error = QQ(0)
        return report
    f, square = general_distance_poly_full(q1, q2)
    report.fz = f
    report.extraneous_z_power = trailing_z_power(f)
    if square is not None and square.degree > 0:
        report.warnings.append(
            "extraneous square factor removed from the distance polynomial"
        )
        report.certificate["extraneous_square"] = square
    infos, _ = _positive_roots_info(f, bits)
    report.positive_zeros = infos
    if not infos:
        raise NoPositiveRootError()

    def recover(z_hat):
        x, y, info = general_nearest_points(q1, q2, z_hat, bits)
        return x, y, info

    return _finish_with_recovery(
        report, infos, bits, recover=recover, first=q1, other=q2
    )


def _finish_with_recovery(
    report, infos, bits, recover, first, other, symmetric_pairs=False
):
    """Select the squared distance among the positive zeros, ascending.

    Each candidate must support nearest-point recovery with real points whose
    surface and distance residuals pass the refinement tolerance. Simple
    zeros that fail (extraneous-factor roots, or complex critical pairs) are
    skipped with a note; a multiple minimal zero is never skipped silently:
    it stays the headline value with the first validated zero alongside.
    """
    chosen = None
    chosen_pairs = None
    chosen_info = None
    skipped = []
    for cand in infos:
        try:
            x, y, info = recover(cand.value)
            pairs = [(x, y)]
            if symmetric_pairs:
                pairs.append((-x, -y))
            residuals = _geometric_residuals(pairs, first, other, cand.value)
            if not _residuals_pass(residuals, bits):
                raise DegeneracyError(
                    "recovery-residuals", "nearest-point residuals exceed tolerance"
                )
        except DegeneracyError as exc:
            skipped.append((cand, exc.code))
            continue
        chosen = cand
        chosen_pairs = list(zip(pairs, residuals))
        chosen_info = info
        break
    if chosen is None:
        # nothing validated: report the minimal positive zero without points
        z0 = infos[0]
        _distance_fields(report, z0, bits)
        report.simple = z0.multiplicity == 1
        for cand, code in skipped:
            report.warnings.append(
                f"recovery at zero ~{float(cand.value):.9g} failed: {code}"
            )
        report.warnings.append("no positive zero supported nearest-point recovery")
        return report
    if chosen is infos[0]:
        _distance_fields(report, chosen, bits)
        report.simple = chosen.multiplicity == 1
        if not report.simple:
            report.warnings.append(
                "minimal positive zero is multiple; the distance certificate does not apply"
            )
        _attach_pairs(report, chosen_pairs, chosen_info)
        return report
    # the minimal positive zero failed validation
    z0 = infos[0]
    if z0.multiplicity > 1:
        # ambiguous multiple minimum: keep it as the headline, never
        # silently substitute; the validated candidate rides alongside
        _distance_fields(report, z0, bits)
        report.simple = False
        report.alternate_z = chosen
        report.warnings.append(
            "minimal positive zero is multiple and its recovery failed; "
            f"first validated zero ~{float(chosen.value):.9g} reported alongside"
        )
        for cand, code in skipped:
            report.warnings.append(
                f"recovery at zero ~{float(cand.value):.9g} failed: {code}"
            )
        return report
    # simple zeros below the accepted one are extraneous-factor roots
    _distance_fields(report, chosen, bits)
    report.simple = chosen.multiplicity == 1
    _attach_pairs(report, chosen_pairs, chosen_info)
    for cand, code in skipped:
        report.warnings.append(
            f"skipped positive zero ~{float(cand.value):.9g} "
            f"(failed validation: {code})"
        )
    return report


def _attach_pairs(report, chosen_pairs, info):
    report.nearest_pairs = [
        NearestPair(tuple(x), tuple(y), res) for (x, y), res in chosen_pairs
    ]
    report.multipliers = info or {}


def solve(problem, bits: int = 128) -> DistanceReport:
    """Dispatch on the problem pairing and produce a full report."""
    if isinstance(problem, PointQuadricProblem):
        return solve_point(problem.quadric, problem.point, bits)
    if isinstance(problem, VarietyQuadricProblem):
        return solve_variety(problem.quadric, problem.variety, bits)
    if isinstance(problem, QuadricPairProblem):
        if problem.centered:
            return solve_centered(problem.first, problem.second, bits)
        return solve_general(problem.first, problem.second, bits)
    raise TypeError(f"unknown problem type {type(problem)!r}")
