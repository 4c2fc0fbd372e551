"""Discriminants via matrices of division remainders.

Univariate: row l of the matrix holds the remainder coefficients of
x^l * g(x) modulo g'(x); the discriminant is N^N * lead(g)^(N-1) times the
determinant, and the cofactors of the last row locate a unique multiple
zero rationally.

Bivariate: the analogue reduces monomial multiples of g modulo the ideal
generated by both partial derivatives, expressing them over a fixed basis
of (N-1)^2 power products; the determinant of the resulting matrix equals
the product of g over its stationary points.

Parameter-dependent inputs are handled by exact evaluation / interpolation
at rational nodes with verification nodes guarding the degree bound.
"""

from __future__ import annotations

from .errors import DegeneracyError
from .linalg import MatrixQ, determinant
from .poly import (
    BiPoly,
    NewtonInterp,
    ParamPoly,
    UniPoly,
    divrem,
    rational_nodes,
)
from .scalar import QQ


class BezoutData:
    """Remainder-coefficient matrix plus the cofactor data derived from it."""

    def __init__(self, matrix: MatrixQ, size: int, monomial_basis=None, source=None):
        self.matrix = matrix
        self.size = size
        self.monomial_basis = monomial_basis
        self.source = source
        self._det = None
        self._last_row_cofactors = None

    @property
    def det(self):
        if self._det is None:
            self._det = determinant(self.matrix)
        return self._det

    def _cofactor(self, i, j):
        if self.size == 1:
            return QQ(1)
        minor = determinant(self.matrix.submatrix(i, j))
        return minor if (i + j) % 2 == 0 else -minor

    def last_row_cofactor(self, j):
        return self._cofactor(self.size - 1, j)

    @property
    def last_row_cofactors(self):
        if self._last_row_cofactors is None:
            self._last_row_cofactors = tuple(
                self.last_row_cofactor(j) for j in range(self.size)
            )
        return self._last_row_cofactors


# ---------------------------------------------------------------------------
# univariate case
# ---------------------------------------------------------------------------


def bezout_matrix(g: UniPoly) -> BezoutData:
    """Matrix of remainders of x^l * g modulo g', l = 0..deg(g)-2."""
    n = g.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    dg = g.derivative()
    rows = []
    _, r = divrem(g, dg)
    for _ in range(n - 1):
        rows.append([r.coeff(j) for j in range(n - 1)])
        if len(rows) == n - 1:
            break
        _, r = divrem(r.shift_up(1), dg)
    return BezoutData(MatrixQ(rows), n - 1, source=g)


def discriminant_uni(g: UniPoly):
    """Discriminant of g, pinned to equal resultant(g, g') exactly.

    Vanishes exactly when g has a multiple complex zero. The value is
    N^N * lead(g)^N * det of the remainder matrix: multiplication by g on
    the quotient ring modulo g' has determinant prod g(zeros of g'), and
    resultant(g', g) contributes lead(g')^deg(g) = (N*lead)^N.
    """
    n = g.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    data = bezout_matrix(g)
    return QQ(n) ** n * g.lead**n * data.det


def _cofactor_ratios(data: BezoutData, count: int):
    """Ratios cof(i,1)/cof(i,0), ... for a usable cofactor row.

    The cofactor rows of a singular matrix with one-dimensional kernel are
    all proportional to the kernel vector (1, lambda_1, ...), scaled by a
    left-kernel coordinate that may vanish for special inputs; the last row
    is tried first, then the remaining rows through the full adjugate.
    """
    c0 = data.last_row_cofactor(0)
    if c0:
        return [data.last_row_cofactor(j) / c0 for j in range(1, count + 1)]
    from .linalg import adjugate

    adj = adjugate(data.matrix)
    best = None
    best_size = None
    for i in range(data.size - 1, -1, -1):
        lead = adj.entry(0, i)
        if not lead:
            continue
        size = abs(lead)
        if best is None or size > best_size:
            best, best_size = i, size
    if best is None:
        raise DegeneracyError(
            "non-unique-multiple-zero", "all leading cofactors vanish"
        )
    lead = adj.entry(0, best)
    return [adj.entry(j, best) / lead for j in range(1, count + 1)]


def multiple_zero_uni(data: BezoutData, strict: bool = True):
    """The unique multiple zero, recovered rationally from the cofactors.

    With strict=True the determinant must vanish exactly. strict=False
    supports recovery at high-precision rational approximations of an
    algebraic parameter, where the determinant is only near zero; callers
    must then validate residuals.
    """
    if strict and data.det:
        raise DegeneracyError("no-multiple-zero", "determinant does not vanish")
    g = data.source
    if data.size == 1:
        # quadratic: the double zero is the zero of the derivative
        dg = g.derivative()
        return -dg.coeff(0) / dg.coeff(1)
    return _cofactor_ratios(data, 1)[0]


def linear_representation(g: UniPoly):
    """Polynomials (u, v) with v*g + u*g' identically det of the remainder matrix."""
    n = g.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    data = bezout_matrix(g)
    m = data.size
    B = data.matrix
    cof0 = [data._cofactor(l, 0) for l in range(m)]
    var = g.var
    v = UniPoly(cof0, var)
    # replacement column built from the last-column entries of the matrix
    last_col = [B.entry(i, m - 1) for i in range(m)]
    bhat_det = UniPoly.zero(var)
    for l in range(m):
        rho = UniPoly(list(reversed(last_col[:l])), var)
        bhat_det = bhat_det + rho * cof0[l]
    b0 = g.coeffs[n]
    b1 = g.coeffs[n - 1] if n - 1 < len(g.coeffs) else QQ(0)
    lin = UniPoly((b1 / (QQ(n) * b0), 1), var)
    u = lin * v * QQ(-1, n) - bhat_det * (QQ(1) / (QQ(n) * b0))
    return u, v


# ---------------------------------------------------------------------------
# bivariate case
# ---------------------------------------------------------------------------


def quotient_basis_monomials(total_degree: int):
    """The (N-1)^2 power products x1^j1 x2^j2 with j1 < N-1, j2 <= 2(N-j1-2).

    Reordered so that positions 0, 1, 2 hold 1, x1, x2.
    """
    n = total_degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    mons = [
        (j1, j2)
        for j1 in range(n - 1)
        for j2 in range(2 * (n - j1 - 2) + 1)
    ]
    head = [(0, 0)]
    for m in ((1, 0), (0, 1)):
        if m in mons:
            head.append(m)
    rest = sorted(m for m in mons if m not in head)
    return head + rest


def _monomials_leq(d: int):
    return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]


class GradientReducer:
    """Reduces polynomials modulo the two partial derivatives of g.

    The reduction expresses a polynomial over the fixed quotient basis plus
    a combination of shifted partials, via one echelon pass over the shifted
    partial derivative columns. Degenerate inputs (gradient ideal not
    zero-dimensional of the expected degree) surface as DegeneracyError.
    """

    def __init__(self, g: BiPoly, strict: bool = True, extra_degree: int = 0):
        n = g.total_degree
        if n < 2:
            raise ValueError("degree must be at least 2")
        self.g = g
        self.n = n
        self.strict = strict
        self.extra_degree = extra_degree
        self.basis = quotient_basis_monomials(n)
        self.size = (n - 1) ** 2
        if len(self.basis) != self.size:
            raise AssertionError("basis size mismatch")
        max_basis_deg = max(i + j for i, j in self.basis)
        self.max_degree = max_basis_deg + n + extra_degree
        mons = _monomials_leq(self.max_degree)
        basis_set = set(self.basis)
        nonbasis = [m for m in mons if m not in basis_set]
        self.order = nonbasis + self.basis
        self.index = {m: k for k, m in enumerate(self.order)}
        self.n_nonbasis = len(nonbasis)
        self.dim = len(self.order)
        self._columns = []
        shift_deg = self.max_degree - (n - 1)
        partials = (g.derivative(0), g.derivative(1))
        for which, dp in enumerate(partials):
            terms = list(dp.terms())
            for a1, a2 in _monomials_leq(shift_deg):
                vec = [QQ(0)] * self.dim
                for (i, j), c in terms:
                    vec[self.index[(i + a1, j + a2)]] = c
                self._columns.append((which, (a1, a2), vec))
        self._echelon()

    def _echelon(self):
        self.pivots = {}
        self.pivot_combos = {}
        self.basis_collision = False
        for col_id, (_, _, vec) in enumerate(self._columns):
            v = list(vec)
            combo = {col_id: QQ(1)}
            for coord in sorted(self.pivots):
                c = v[coord]
                if c:
                    pv, pcombo = self.pivots[coord], self.pivot_combos[coord]
                    for k in range(coord, self.dim):
                        if pv[k]:
                            v[k] = v[k] - c * pv[k]
                    for cid, cc in pcombo.items():
                        combo[cid] = combo.get(cid, QQ(0)) - c * cc
            lead = None
            for k in range(self.dim):
                if v[k]:
                    lead = k
                    break
            if lead is None:
                continue
            if lead >= self.n_nonbasis:
                # the gradient ideal meets the basis span: coefficients over
                # the basis are not unique. In lenient mode keep the pivot,
                # which selects the canonical fully-reduced representative.
                self.basis_collision = True
                if self.strict:
                    continue
            inv = 1 / v[lead]
            v = [c * inv for c in v]
            combo = {cid: cc * inv for cid, cc in combo.items()}
            self.pivots[lead] = v
            self.pivot_combos[lead] = combo

    def reduce(self, p: BiPoly, recover_q: bool = False):
        """Coefficients of p over the quotient basis (ascending basis order)."""
        if self.strict and self.basis_collision:
            raise DegeneracyError(
                "gradient-reduction-non-unique",
                "gradient ideal meets the quotient basis span",
            )
        if p.total_degree > self.max_degree:
            raise ValueError("degree exceeds the reducer's working degree")
        v = [QQ(0)] * self.dim
        for (i, j), c in p.terms():
            v[self.index[(i, j)]] = c
        used = {}
        for coord in sorted(self.pivots):
            c = v[coord]
            if c:
                pv = self.pivots[coord]
                for k in range(coord, self.dim):
                    if pv[k]:
                        v[k] = v[k] - c * pv[k]
                used[coord] = c
        for k in range(self.n_nonbasis):
            if v[k]:
                raise DegeneracyError(
                    "gradient-reduction-unsolvable",
                    "polynomial does not reduce to the quotient basis",
                )
        row = [v[self.n_nonbasis + k] for k in range(self.size)]
        if not recover_q:
            return row
        qs = [dict(), dict()]
        for coord, c in used.items():
            for cid, cc in self.pivot_combos[coord].items():
                which, shift, _ = self._columns[cid]
                key = shift
                qs[which][key] = qs[which].get(key, QQ(0)) + c * cc
        q1 = BiPoly.from_terms({k: v for k, v in qs[0].items() if v}, self.g.vars)
        q2 = BiPoly.from_terms({k: v for k, v in qs[1].items() if v}, self.g.vars)
        return row, q1, q2


def reduce_mod_gradient(g: BiPoly, monomial, recover_q: bool = False, strict: bool = True):
    """Reduction row of x^monomial * g modulo the gradient ideal of g.

    The shifted-partial window starts at the natural degree bound and grows
    a little when a special input needs higher-degree multipliers.
    """
    for extra in (0, 2, 4):
        reducer = GradientReducer(g, strict=strict, extra_degree=extra)
        if monomial not in reducer.basis:
            raise ValueError("monomial is not in the quotient basis")
        term = BiPoly.from_terms({monomial: QQ(1)}, g.vars)
        try:
            return reducer.reduce(term * g, recover_q=recover_q)
        except DegeneracyError as exc:
            if exc.code != "gradient-reduction-unsolvable":
                raise
            last = exc
    raise last


def bezout_matrix_biv(g: BiPoly, strict: bool = True) -> BezoutData:
    """The (N-1)^2 reduction-coefficient matrix for all basis monomials."""
    last = None
    for extra in (0, 2, 4):
        reducer = GradientReducer(g, strict=strict, extra_degree=extra)
        rows = []
        try:
            for m in reducer.basis:
                term = BiPoly.from_terms({m: QQ(1)}, g.vars)
                rows.append(reducer.reduce(term * g))
        except DegeneracyError as exc:
            if exc.code != "gradient-reduction-unsolvable":
                raise
            last = exc
            continue
        return BezoutData(
            MatrixQ(rows), reducer.size, monomial_basis=tuple(reducer.basis), source=g
        )
    raise last


def discriminant_biv(g: BiPoly, strict: bool = True):
    """(discriminant value, matrix data); the value is det of the matrix.

    Equals the product of g over the stationary points of g (generic case:
    both partials of full degree, no stationary points at infinity).
    """
    data = bezout_matrix_biv(g, strict=strict)
    return data.det, data


def multiple_zero_biv(data: BezoutData, strict: bool = True):
    """Coordinates of the unique common zero of g and both partials."""
    if data.size < 3:
        raise DegeneracyError(
            "basis-too-small", "coordinate recovery needs at least 3 basis monomials"
        )
    if strict and data.det:
        raise DegeneracyError("no-multiple-zero", "determinant does not vanish")
    r = _cofactor_ratios(data, 2)
    return r[0], r[1]


# ---------------------------------------------------------------------------
# parameter-dependent discriminants by evaluation / interpolation
# ---------------------------------------------------------------------------


class _SkipNode(Exception):
    """Raised by node evaluators on specializations that must be avoided."""


def _interpolate_function(compute, bound: int, var: str, max_skips: int = 40):
    """Exact interpolation of a polynomial-valued function of one rational.

    compute(node) returns the exact value or raises _SkipNode. The result is
    verified at 3 extra nodes; on mismatch the bound doubles once before
    giving up.
    """
    doubled = False
    while True:
        nodes = rational_nodes()
        interp = NewtonInterp(var)
        skips = 0
        try:
            while len(interp.xs) < bound + 1:
                t = next(nodes)
                try:
                    y = compute(t)
                except _SkipNode:
                    skips += 1
                    if skips > max_skips:
                        raise DegeneracyError(
                            "degenerate-specialization",
                            "too many invalid interpolation nodes",
                        )
                    continue
                interp.add_point(t, y)
            result = interp.polynomial()
            checked = 0
            while checked < 3:
                t = next(nodes)
                try:
                    y = compute(t)
                except _SkipNode:
                    skips += 1
                    if skips > max_skips:
                        raise DegeneracyError(
                            "degenerate-specialization",
                            "too many invalid interpolation nodes",
                        )
                    continue
                if result.eval(t) != y:
                    raise _VerificationFailed()
                checked += 1
            return result
        except _VerificationFailed:
            if doubled:
                raise DegeneracyError(
                    "interpolation-verification",
                    "interpolated discriminant failed verification",
                )
            doubled = True
            bound *= 2


class _VerificationFailed(Exception):
    pass


def discriminant_param(pp: ParamPoly, degree_bound=None) -> UniPoly:
    """Discriminant in the main variable of a parameter-dependent polynomial.

    Returns the exact polynomial in the parameter (unnormalized; callers
    usually take the primitive part). Nodes where the leading coefficient
    vanishes are skipped so every evaluation sees the generic degree.
    """
    n = pp.degree
    if n < 2:
        raise ValueError("main degree must be at least 2")
    lead = pp.coeffs[-1]
    dz = max(pp.param_degree, 0)
    bound = degree_bound if degree_bound is not None else 2 * n * max(dz, 1)

    def compute(t):
        if not lead.eval(t):
            raise _SkipNode()
        return discriminant_uni(pp.eval_param(t))

    return _interpolate_function(compute, bound, pp.param_var)


def discriminant_biv_param(
    build,
    expected_degree: int,
    degree_bound: int,
    var: str = "z",
    max_pole_order: int | None = None,
) -> UniPoly:
    """Interpolated bivariate discriminant of a parameter-dependent polynomial.

    build(node) must return the specialized BiPoly; nodes where the total
    degree drops or the gradient reduction degenerates are skipped.

    The discriminant is a rational function of the coefficients, and when the
    leading form of the input carries the parameter (as the two-multiplier
    distance pencils do) its specialization acquires a pole at zero and
    nowhere else. The reconstruction therefore finds the minimal k for which
    z^k times the value function is a polynomial, verified at extra nodes.
    """

    def matrix_at(t):
        g = build(t)
        if g.total_degree != expected_degree:
            raise _SkipNode()
        try:
            return bezout_matrix_biv(g)
        except DegeneracyError:
            raise _SkipNode()

    def compute_det(t):
        return matrix_at(t).det

    n = expected_degree
    if max_pole_order is None:
        max_pole_order = 2 * n * (n - 1)

    # probe: an identically vanishing determinant signals a singular branch
    # of the pencil that persists for every parameter value (symmetric
    # configurations); deflate it away by taking the product of the nonzero
    # eigenvalues of the matrix, i.e. the lowest nonvanishing coefficient of
    # its characteristic polynomial, at a fixed deflation index.
    probe_nodes = []
    stream = rational_nodes()
    next(stream)
    probe_vals = []
    while len(probe_vals) < 6:
        t = next(stream)
        try:
            probe_vals.append((t, compute_det(t)))
        except _SkipNode:
            continue
        probe_nodes.append(t)
    if any(v for _, v in probe_vals):
        return _laurent_interpolate(compute_det, degree_bound, var, max_pole_order)

    from .linalg import char_poly

    def deflation_data(t):
        chi = char_poly(matrix_at(t).matrix, "x")
        for i, c in enumerate(chi.coeffs):
            if c:
                return i, c
        raise _SkipNode()

    indices = []
    for t in probe_nodes:
        try:
            indices.append(deflation_data(t)[0])
        except _SkipNode:
            continue
    if not indices:
        raise DegeneracyError(
            "identically-zero-discriminant", "pencil matrix vanishes identically"
        )
    index = max(set(indices), key=indices.count)

    def compute_deflated(t):
        i, c = deflation_data(t)
        if i != index:
            raise _SkipNode()
        return c

    return _laurent_interpolate(compute_deflated, degree_bound, var, max_pole_order)


def _laurent_interpolate(compute, bound: int, var: str, max_pole_order: int,
                         max_skips: int = 60):
    """Reconstruct a value function with a possible pole only at zero.

    Finds the smallest k such that node^k * value(node) interpolates to a
    polynomial of degree <= bound + k that checks out on 3 extra nodes.
    Node values are computed once and cached.
    """
    cache = {}
    invalid = set()
    stream = rational_nodes()
    next(stream)  # never evaluate at zero: it may be the pole
    node_list = []

    def value_at(t):
        if t in invalid:
            raise _SkipNode()
        if t not in cache:
            try:
                cache[t] = compute(t)
            except _SkipNode:
                invalid.add(t)
                raise
        return cache[t]

    def nth_valid_node(i):
        while len(node_list) <= i:
            t = next(stream)
            try:
                value_at(t)
            except _SkipNode:
                if len(invalid) > max_skips:
                    raise DegeneracyError(
                        "degenerate-specialization",
                        "too many invalid interpolation nodes",
                    )
                continue
            node_list.append(t)
        return node_list[i]

    doubled = False
    while True:
        for k in range(max_pole_order + 1):
            m = bound + k + 1
            interp = NewtonInterp(var)
            for i in range(m):
                t = nth_valid_node(i)
                interp.add_point(t, value_at(t) * t**k)
            result = interp.polynomial()
            good = True
            for i in range(m, m + 3):
                t = nth_valid_node(i)
                if result.eval(t) != value_at(t) * t**k:
                    good = False
                    break
            if good:
                return result
        if doubled:
            raise DegeneracyError(
                "interpolation-verification",
                "interpolated discriminant failed verification",
            )
        doubled = True
        bound *= 2
