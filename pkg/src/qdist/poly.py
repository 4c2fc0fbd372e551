"""Dense exact polynomial arithmetic.

UniPoly is a univariate polynomial with ascending, trimmed coefficients.
Coefficients are exact rationals; they may also be RatFunc values (rational
functions of one symbolic parameter) so that a parameter can ride along
through division and determinant computations.

ParamPoly is a polynomial in a main variable whose coefficients are
themselves univariate polynomials in a second (parameter) variable.
BiPoly is a dense bivariate polynomial on a coefficient grid.
"""

from __future__ import annotations

from .scalar import QQ, RAT_TYPE, is_rational


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("bool coefficient")
    if isinstance(c, int):
        return QQ(c)
    return c


class UniPoly:
    """Immutable univariate polynomial, coefficients ascending by power."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("UniPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, var="x"):
        return cls((), var)

    @classmethod
    def const(cls, c, var="x"):
        return cls((c,), var)

    @classmethod
    def x(cls, var="x"):
        return cls((0, 1), var)

    @classmethod
    def monomial(cls, c, k, var="x"):
        return cls((0,) * k + (c,), var)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else QQ(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if is_rational(other) or isinstance(other, RatFunc):
            if not self.coeffs:
                return not other
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(_coerce(other), self.var)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other if isinstance(other, UniPoly) else -_coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _coerce(other)
            return UniPoly([a * c for a in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(self.var)
        out = [QQ(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UniPoly):
            q, r = divrem(self, other)
            if r:
                raise ValueError("inexact polynomial division")
            return q
        c = _coerce(other)
        return UniPoly([a / c for a in self.coeffs], self.var)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = UniPoly.const(1, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift_up(self, k: int):
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return UniPoly((QQ(0),) * k + self.coeffs, self.var)

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def eval(self, point):
        point = _coerce(point)
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * point + c
        return acc if acc is not None else QQ(0)

    def compose_linear(self, a, b):
        """Evaluate at a*var + b, returning a polynomial."""
        a, b = _coerce(a), _coerce(b)
        arg = UniPoly((b, a), self.var)
        acc = UniPoly.zero(self.var)
        for c in reversed(self.coeffs):
            acc = acc * arg + c
        return acc

    # -- rational-coefficient utilities -------------------------------------

    def content(self):
        """Positive rational c with self = c * primitive integer polynomial.

        The sign convention puts the sign on the primitive part.
        """
        if not self.coeffs:
            return QQ(0)
        import math

        gn = 0
        ld = 1
        for c in self.coeffs:
            gn = math.gcd(gn, abs(int(c.numerator)))
            ld = ld * int(c.denominator) // math.gcd(ld, int(c.denominator))
        return QQ(gn, ld)

    def primitive(self):
        """(content, primitive part); primitive has integer coefficients."""
        c = self.content()
        if not c:
            return QQ(0), self
        return c, UniPoly([a / c for a in self.coeffs], self.var)

    def normalized(self):
        """Primitive integer-coefficient polynomial with positive lead."""
        _, p = self.primitive()
        if p and p.lead < 0:
            p = -p
        return p

    def monic(self):
        if not self.coeffs:
            return self
        return self / self.lead

    def int_coeffs(self):
        """Coefficients as plain ints (requires integer polynomial)."""
        out = []
        for c in self.coeffs:
            if int(c.denominator) != 1:
                raise ValueError("not an integer polynomial")
            out.append(int(c.numerator))
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{i}")
        return " + ".join(reversed(parts)).replace("+ -", "- ")


def divrem(numer: UniPoly, denom: UniPoly):
    """Exact division with remainder: numer = q*denom + r, deg r < deg denom."""
    if not denom:
        raise ZeroDivisionError("division by zero polynomial")
    var = numer.var
    r = list(numer.coeffs)
    d = denom.coeffs
    dd = len(d) - 1
    dlead = d[-1]
    if len(r) - 1 < dd:
        return UniPoly.zero(var), numer
    q = [QQ(0)] * (len(r) - dd)
    for k in range(len(r) - 1 - dd, -1, -1):
        c = r[k + dd]
        if not c:
            continue
        f = c / dlead
        q[k] = f
        for j in range(dd + 1):
            r[k + j] = r[k + j] - f * d[j]
    return UniPoly(q, var), UniPoly(r[:dd], var)


# ---------------------------------------------------------------------------
# integer-level helpers for gcd / resultant (primitive PRS, subresultants)
# ---------------------------------------------------------------------------


def _int_clear(p: UniPoly):
    """(content, int coefficient list) with p = content * ints."""
    import math

    if not p.coeffs:
        return QQ(0), []
    ld = 1
    for c in p.coeffs:
        d = int(c.denominator)
        ld = ld * d // math.gcd(ld, d)
    ints = [int(c.numerator) * (ld // int(c.denominator)) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return QQ(g, ld), ints


def _ideg(a):
    return len(a) - 1


def _itrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _iprimitive(a):
    import math

    g = 0
    for v in a:
        g = math.gcd(g, abs(v))
    if g > 1:
        a = [v // g for v in a]
    return a


def _iprem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over the integers."""
    r = list(a)
    db = _ideg(b)
    lb = b[-1]
    e = _ideg(r) - db + 1
    while r and _ideg(r) >= db:
        top = r[-1]
        shift = _ideg(r) - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[shift + j] -= top * b[j]
        _itrim(r)
        e -= 1
    if e > 0 and r:
        scale = lb**e
        r = [c * scale for c in r]
    return r


def field_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by plain Euclid; works for any exact field coefficients."""
    a, b = p, q
    while b:
        _, r = divrem(a, b)
        a, b = b, r
    if not a:
        return a
    return a.monic()


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over the rationals, via a primitive remainder sequence."""
    if not p:
        return q.monic() if q else q
    if not q:
        return p.monic()
    _, a = _int_clear(p)
    _, b = _int_clear(q)
    if _ideg(a) < _ideg(b):
        a, b = b, a
    while b:
        r = _iprem(a, b)
        a, b = b, _iprimitive(r)
    g = UniPoly(a, p.var)
    return g.monic()


def squarefree_decomposition(p: UniPoly):
    """Yun decomposition: list of (monic factor, multiplicity).

    The product of factor^multiplicity equals p up to a nonzero constant.
    """
    if not p:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    if g.degree == 0:
        return [(p, 1)]
    out = []
    w = p / g
    y = dp / g
    i = 1
    z = y - w.derivative()
    while w.degree > 0:
        h = poly_gcd(w, z)
        if h.degree > 0:
            out.append((h, i))
        w = w / h
        y = z / h
        z = y - w.derivative()
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    """p divided by gcd(p, p'); same distinct roots, all simple."""
    g, sf = gcd_squarefree(p)
    return sf


def gcd_squarefree(p: UniPoly):
    """(monic gcd(p, p'), p / gcd)."""
    if not p:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return UniPoly.const(1, p.var), p
    g = poly_gcd(p, p.derivative())
    return g, p / g


def resultant(p: UniPoly, q: UniPoly):
    """Resultant with the convention lead(p)^deg(q) * prod q(roots of p).

    Computed by the subresultant polynomial remainder sequence.
    """
    if not p or not q:
        raise ValueError("resultant of the zero polynomial")
    dp, dq = p.degree, q.degree
    if dp == 0:
        return p.coeffs[0] ** dq
    if dq == 0:
        return q.coeffs[0] ** dp
    cp, a = _int_clear(p)
    cq, b = _int_clear(q)
    factor = cp**dq * cq**dp
    return factor * _int_resultant(a, b)


def _int_resultant(a, b):
    s = 1
    if _ideg(a) < _ideg(b):
        if (_ideg(a) % 2 == 1) and (_ideg(b) % 2 == 1):
            s = -s
        a, b = b, a
    g = 1
    h = 1
    while True:
        da, db = _ideg(a), _ideg(b)
        delta = da - db
        if (da % 2 == 1) and (db % 2 == 1):
            s = -s
        r = _iprem(a, b)
        a = b
        denom = g * h**delta
        b = [c // denom for c in r]
        if not b:
            return 0
        g = a[-1]
        h = h if delta == 0 else (g**delta // h ** (delta - 1))
        if _ideg(b) == 0:
            da = _ideg(a)
            final = b[0] ** da // h ** (da - 1) if da >= 1 else h
            return s * final


# ---------------------------------------------------------------------------
# rational functions of one parameter (coefficient field for UniPoly)
# ---------------------------------------------------------------------------


class RatFunc:
    """Quotient of two univariate rational-coefficient polynomials.

    Canonical form: gcd removed, monic denominator. Supports mixed
    arithmetic with ints and rationals so it can serve as a coefficient
    field for UniPoly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var="a"):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(_coerce(num), var)
        if den is None:
            den = UniPoly.const(1, num.var)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(_coerce(den), num.var)
        if not den:
            raise ZeroDivisionError("zero denominator in rational function")
        if num and den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num / g
                den = den / g
        lc = den.lead
        if lc != 1:
            num = num / lc
            den = den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def parameter(cls, var="a"):
        return cls(UniPoly.x(var))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if is_rational(other):
            return self.den.degree == 0 and self.num == UniPoly.const(other, self.num.var)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if is_rational(other):
            return RatFunc(UniPoly.const(other, self.num.var))
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if not self.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(o.num * self.den, o.den * self.num)

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den**(-k), self.num**(-k))
        return RatFunc(self.num**k, self.den**k)

    def derivative(self):
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def eval(self, point):
        dv = self.den.eval(point)
        if not dv:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.eval(point) / dv

    def as_rational(self):
        if self.den.degree != 0 or self.num.degree > 0:
            raise ValueError("not a constant rational function")
        return self.num.coeff(0) / self.den.coeff(0)

    def __repr__(self):
        if self.den == UniPoly.const(1, self.den.var):
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# polynomials with polynomial coefficients (one main + one parameter variable)
# ---------------------------------------------------------------------------


class ParamPoly:
    """Polynomial in a main variable with UniPoly coefficients in a parameter."""

    __slots__ = ("coeffs", "main_var", "param_var")

    def __init__(self, coeffs, main_var="x", param_var="z"):
        cs = []
        for c in coeffs:
            if not isinstance(c, UniPoly):
                c = UniPoly.const(c, param_var)
            cs.append(c)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "main_var", main_var)
        object.__setattr__(self, "param_var", param_var)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ParamPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def param_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, ParamPoly) and self.coeffs == other.coeffs

    def coeff(self, k) -> UniPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return UniPoly.zero(self.param_var)

    def eval_param(self, value) -> UniPoly:
        """Substitute the parameter; result is univariate in the main variable."""
        return UniPoly([c.eval(value) for c in self.coeffs], self.main_var)

    def eval_main(self, value) -> UniPoly:
        """Substitute the main variable; result is univariate in the parameter."""
        value = _coerce(value)
        acc = UniPoly.zero(self.param_var)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def eval_point(self, main_value, param_value):
        return self.eval_param(param_value).eval(main_value)

    def derivative_main(self) -> "ParamPoly":
        return ParamPoly(
            [i * c for i, c in enumerate(self.coeffs)][1:],
            self.main_var,
            self.param_var,
        )

    def derivative_param(self) -> "ParamPoly":
        return ParamPoly(
            [c.derivative() for c in self.coeffs], self.main_var, self.param_var
        )

    def derivative(self, which: str) -> "ParamPoly":
        if which == self.main_var:
            return self.derivative_main()
        if which == self.param_var:
            return self.derivative_param()
        raise ValueError(f"unknown variable {which!r}")

    def swap_variables(self) -> "ParamPoly":
        """Exchange the roles of main and parameter variable."""
        rows = [list(c.coeffs) for c in self.coeffs]
        depth = max((len(r) for r in rows), default=0)
        new = []
        for j in range(depth):
            new.append(UniPoly([r[j] if j < len(r) else 0 for r in rows], self.main_var))
        return ParamPoly(new, self.param_var, self.main_var)

    def as_bipoly(self) -> "BiPoly":
        rows = []
        for c in self.coeffs:
            rows.append(list(c.coeffs) if c.coeffs else [QQ(0)])
        return BiPoly(rows, (self.main_var, self.param_var))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            terms.append(f"({c!r})*{self.main_var}^{i}")
        return " + ".join(reversed(terms)) or "0"


class BiPoly:
    """Dense bivariate polynomial; coeffs[i][j] goes with v1^i * v2^j."""

    __slots__ = ("coeffs", "vars")

    def __init__(self, coeffs, vars=("x1", "x2")):
        rows = [[_coerce(c) for c in row] for row in coeffs]
        width = max((len(r) for r in rows), default=0)
        rows = [r + [QQ(0)] * (width - len(r)) for r in rows]
        while rows and all(not c for c in rows[-1]):
            rows.pop()
        if rows:
            w = len(rows[0])
            while w > 1 and all(not r[w - 1] for r in rows):
                w -= 1
            rows = [r[:w] for r in rows]
        object.__setattr__(self, "coeffs", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "vars", tuple(vars))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def zero(cls, vars=("x1", "x2")):
        return cls([], vars)

    @classmethod
    def const(cls, c, vars=("x1", "x2")):
        return cls([[c]], vars)

    @classmethod
    def variable(cls, which: int, vars=("x1", "x2")):
        if which == 0:
            return cls([[0], [1]], vars)
        return cls([[0, 1]], vars)

    @classmethod
    def from_terms(cls, terms, vars=("x1", "x2")):
        """terms: mapping (i, j) -> coefficient."""
        if not terms:
            return cls.zero(vars)
        d1 = max(i for i, _ in terms)
        d2 = max(j for _, j in terms)
        rows = [[QQ(0)] * (d2 + 1) for _ in range(d1 + 1)]
        for (i, j), c in terms.items():
            rows[i][j] = rows[i][j] + _coerce(c)
        return cls(rows, vars)

    @property
    def deg1(self) -> int:
        return len(self.coeffs) - 1

    @property
    def deg2(self) -> int:
        return len(self.coeffs[0]) - 1 if self.coeffs else -1

    @property
    def total_degree(self) -> int:
        best = -1
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c and i + j > best:
                    best = i + j
        return best

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def coeff(self, i, j):
        if 0 <= i < len(self.coeffs) and 0 <= j < len(self.coeffs[0]):
            return self.coeffs[i][j]
        return QQ(0)

    def terms(self):
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    yield (i, j), c

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other, self.vars)
        r1 = max(len(self.coeffs), len(other.coeffs))
        r2 = max(self.deg2 + 1, other.deg2 + 1, 1)
        rows = [[self.coeff(i, j) + other.coeff(i, j) for j in range(r2)] for i in range(r1)]
        return BiPoly(rows, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.coeffs], self.vars)

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other, self.vars)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = _coerce(other)
            return BiPoly([[a * c for a in row] for row in self.coeffs], self.vars)
        if not self.coeffs or not other.coeffs:
            return BiPoly.zero(self.vars)
        out = [
            [QQ(0)] * (self.deg2 + other.deg2 + 1)
            for _ in range(self.deg1 + other.deg1 + 1)
        ]
        for (i, j), a in self.terms():
            for (k, l), b in other.terms():
                out[i + k][j + l] = out[i + k][j + l] + a * b
        return BiPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self, which: int) -> "BiPoly":
        if which == 0:
            rows = [
                [i * c for c in row] for i, row in enumerate(self.coeffs)
            ][1:]
            return BiPoly(rows, self.vars)
        rows = [[j * row[j] for j in range(1, len(row))] for row in self.coeffs]
        return BiPoly(rows, self.vars)

    def eval(self, p1, p2):
        p1, p2 = _coerce(p1), _coerce(p2)
        acc = QQ(0)
        for row in reversed(self.coeffs):
            inner = QQ(0)
            for c in reversed(row):
                inner = inner * p2 + c
            acc = acc * p1 + inner
        return acc

    def eval_var(self, which: int, value) -> UniPoly:
        """Substitute one variable, producing a UniPoly in the other."""
        value = _coerce(value)
        if which == 0:
            out = [QQ(0)] * (self.deg2 + 1 if self.coeffs else 0)
            p = QQ(1)
            for row in self.coeffs:
                for j, c in enumerate(row):
                    out[j] = out[j] + c * p
                p = p * value
            return UniPoly(out, self.vars[1])
        out = []
        for row in self.coeffs:
            acc = QQ(0)
            for c in reversed(row):
                acc = acc * value + c
            out.append(acc)
        return UniPoly(out, self.vars[0])

    def as_parampoly(self, main_index: int = 0) -> ParamPoly:
        """View with vars[main_index] as the main variable."""
        if main_index == 0:
            cs = [UniPoly(row, self.vars[1]) for row in self.coeffs]
            return ParamPoly(cs, self.vars[0], self.vars[1])
        cs = []
        for j in range(self.deg2 + 1):
            cs.append(UniPoly([row[j] for row in self.coeffs], self.vars[0]))
        return ParamPoly(cs, self.vars[1], self.vars[0])

    def content(self):
        import math

        gn = 0
        ld = 1
        for _, c in self.terms():
            gn = math.gcd(gn, abs(int(c.numerator)))
            ld = ld * int(c.denominator) // math.gcd(ld, int(c.denominator))
        return QQ(gn, ld) if gn else QQ(0)

    def __repr__(self):
        parts = []
        for (i, j), c in self.terms():
            parts.append(f"{c}*{self.vars[0]}^{i}*{self.vars[1]}^{j}")
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# exact interpolation
# ---------------------------------------------------------------------------


class NewtonInterp:
    """Incremental Newton interpolation over exact rationals."""

    def __init__(self, var="x"):
        self.var = var
        self.xs = []
        self.diffs = []  # leading column of the divided-difference table
        self._table = []

    def add_point(self, x, y):
        x, y = _coerce(x), _coerce(y)
        row = [y]
        if self._table:
            last = self._table[-1]
            for k in range(len(last)):
                row.append((row[k] - last[k]) / (x - self.xs[len(self.xs) - 1 - k]))
        self.xs.append(x)
        self._table.append(row)
        self.diffs.append(row[-1])

    def tail_is_zero(self, count: int) -> bool:
        """True if the last ``count`` divided differences vanish."""
        if len(self.diffs) < count:
            return False
        return all(not d for d in self.diffs[-count:])

    def polynomial(self) -> UniPoly:
        if not self.xs:
            return UniPoly.zero(self.var)
        acc = UniPoly.const(self.diffs[-1], self.var)
        for i in range(len(self.xs) - 2, -1, -1):
            acc = acc * UniPoly((-self.xs[i], 1), self.var) + self.diffs[i]
        return acc


def interpolate(points, var="x") -> UniPoly:
    it = NewtonInterp(var)
    for x, y in points:
        it.add_point(x, y)
    return it.polynomial()


def rational_nodes():
    """Deterministic stream of small distinct rationals: 0, 1, -1, 2, -2, ..."""
    yield QQ(0)
    k = 1
    while True:
        yield QQ(k)
        yield QQ(-k)
        k += 1
