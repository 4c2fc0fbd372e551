"""Exact real-root isolation and refinement via Sturm sequences.

All computations stay over the rationals. Roots are reported as disjoint
isolating intervals (zero-width for roots that are recognized as rational),
with exact multiplicities taken from the square-free decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoPositiveRootError
from .poly import UniPoly, divrem, squarefree_decomposition
from .scalar import QQ, simplest_in_interval

ALL_POSITIVE = "all-positive"
ALL_NEGATIVE = "all-negative"
MIXED_OR_ZERO = "mixed-or-zero"
NO_REAL_ROOTS = "none"


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval (lo, hi) containing exactly one distinct real root.

    lo == hi means the root is the exact rational lo.
    """

    lo: object
    hi: object
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    @property
    def width(self):
        return self.hi - self.lo


def sturm_chain(p: UniPoly):
    """Sturm sequence of p (usually the square-free part)."""
    chain = [p, p.derivative()]
    while chain[-1]:
        _, r = divrem(chain[-2], chain[-1])
        if not r:
            break
        # scale to a primitive polynomial; positive factors keep signs valid
        _, r = (-r).primitive()
        chain.append(r)
    return chain


def _sign(v):
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def _variations(signs):
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _var_at(chain, x):
    return _variations([_sign(p.eval(x)) for p in chain])


def _var_at_neg_inf(chain):
    return _variations(
        [_sign(p.lead) * (-1 if p.degree % 2 else 1) for p in chain if p]
    )


def _var_at_pos_inf(chain):
    return _variations([_sign(p.lead) for p in chain if p])


def _count_between(chain, a, b):
    """Number of distinct roots in (a, b]; a and b must not be roots."""
    return _var_at(chain, a) - _var_at(chain, b)


def root_bound(p: UniPoly):
    """Rational B with every real root of p strictly inside (-B, B)."""
    lead = abs(p.lead)
    m = max((abs(c) for c in p.coeffs[:-1]), default=QQ(0))
    return QQ(2) + m / lead


def count_sign_ranges(p: UniPoly):
    """(#roots < 0, 1 if 0 is a root else 0, #roots > 0), distinct roots."""
    if not p:
        raise ValueError("zero polynomial")
    zero_mult = 0
    cs = list(p.coeffs)
    while cs and not cs[0]:
        cs.pop(0)
        zero_mult += 1
    q = UniPoly(cs, p.var)
    if q.degree < 1:
        return 0, (1 if zero_mult else 0), 0
    from .poly import squarefree_part

    s = squarefree_part(q)
    chain = sturm_chain(s)
    b = root_bound(s)
    neg = _var_at(chain, -b) - _var_at(chain, QQ(0))
    pos = _var_at(chain, QQ(0)) - _var_at(chain, b)
    return neg, (1 if zero_mult else 0), pos


def _isolate_squarefree(s: UniPoly, lo, hi, chain):
    """Disjoint open isolating intervals for roots of square-free s in (lo, hi).

    Requires s(lo) != 0 and s(hi) != 0.
    """
    out = []
    stack = [(lo, hi, _count_between(chain, lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if not s.eval(m):
            # exact root at the midpoint; carve out a root-free neighborhood
            delta = (b - a) / 4
            while True:
                if s.eval(m - delta) and s.eval(m + delta):
                    if _count_between(chain, m - delta, m + delta) == 1:
                        break
                delta = delta / 2
            out.append((m, m))
            stack.append((a, m - delta, _count_between(chain, a, m - delta)))
            stack.append((m + delta, b, _count_between(chain, m + delta, b)))
        else:
            stack.append((a, m, _count_between(chain, a, m)))
            stack.append((m, b, _count_between(chain, m, b)))
    return out


def isolate_real_roots(p: UniPoly):
    """Isolating intervals for all distinct real roots, sorted ascending."""
    if not p:
        raise ValueError("zero polynomial")
    if p.degree < 1:
        return []
    factors = squarefree_decomposition(p)
    s = UniPoly.const(1, p.var)
    for f, _ in factors:
        s = s * f
    intervals = []
    # treat a root at zero separately so every other interval has a fixed sign
    zero_root = not s.eval(QQ(0))
    if zero_root:
        s_rest = s / UniPoly((0, 1), p.var)
    else:
        s_rest = s
    chain = sturm_chain(s_rest)
    b = root_bound(s_rest) if s_rest.degree >= 1 else QQ(1)
    raw = []
    if s_rest.degree >= 1:
        eps = QQ(1)
        while not s_rest.eval(eps) or not s_rest.eval(-eps):
            eps = eps / 2
        raw.extend(_isolate_squarefree(s_rest, -b, -eps, chain))
        if not s_rest.eval(QQ(0)):
            raise AssertionError("zero root not factored out")
        raw.extend(_isolate_squarefree(s_rest, -eps, eps, chain))
        raw.extend(_isolate_squarefree(s_rest, eps, b, chain))
    if zero_root:
        raw.append((QQ(0), QQ(0)))
    # keep every interval on one side of zero so positivity is decidable
    sided = []
    for a, bnd in raw:
        if a < 0 < bnd:
            sa, s0 = s_rest.eval(a), s_rest.eval(QQ(0))
            if (sa > 0) != (s0 > 0):
                sided.append((a, QQ(0)))
            else:
                sided.append((QQ(0), bnd))
        else:
            sided.append((a, bnd))
    # collapse intervals whose root is a recognizable rational
    refined = []
    for a, bnd in sided:
        if a == bnd:
            refined.append((a, bnd))
            continue
        cand = simplest_in_interval(a, bnd)
        if cand != a and cand != bnd and not s_rest.eval(cand):
            refined.append((cand, cand))
        else:
            refined.append((a, bnd))
    # attach multiplicities via the square-free factors; strip factor roots
    # at zero so intervals with endpoint 0 still get a clean sign test
    def _strip_zero(f):
        cs = list(f.coeffs)
        while cs and not cs[0]:
            cs.pop(0)
        return UniPoly(cs, f.var)

    out = []
    for a, bnd in refined:
        mult = None
        for f, k in factors:
            if a == bnd:
                if not f.eval(a):
                    mult = k
                    break
            else:
                fs = _strip_zero(f)
                fa, fb = fs.eval(a), fs.eval(bnd)
                if fa and fb and (fa > 0) != (fb > 0):
                    mult = k
                    break
        if mult is None:
            raise AssertionError("could not attribute a multiplicity")
        out.append(IsolatingInterval(a, bnd, mult))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def _bisection_function(p: UniPoly) -> UniPoly:
    """Square-free part with roots at zero stripped (those are always exact)."""
    from .poly import squarefree_part

    s = squarefree_part(p)
    cs = list(s.coeffs)
    while cs and not cs[0]:
        cs.pop(0)
    return UniPoly(cs, p.var)


def _bisect(iv: IsolatingInterval, p: UniPoly, bits: int):
    """Shrink the bracket to width <= 2^-bits; returns (lo, hi), lo == hi if exact."""
    if iv.exact:
        return iv.lo, iv.lo
    s = _bisection_function(p)
    lo, hi = iv.lo, iv.hi
    flo = s.eval(lo)
    fhi = s.eval(hi)
    if not flo or not fhi:
        raise ValueError("isolating interval endpoint is a root")
    if (flo > 0) == (fhi > 0):
        raise ValueError("interval does not bracket a sign change")
    target = QQ(1, 1 << bits)
    step = 0
    while hi - lo > target:
        mid = (lo + hi) / 2
        v = s.eval(mid)
        if not v:
            return mid, mid
        if (v > 0) == (flo > 0):
            lo = mid
            flo = v
        else:
            hi = mid
        step += 1
        if step % 16 == 0:
            cand = simplest_in_interval(lo, hi)
            if cand != lo and cand != hi and not s.eval(cand):
                return cand, cand
    cand = simplest_in_interval(lo, hi)
    if cand != lo and cand != hi and not s.eval(cand):
        return cand, cand
    return lo, hi


def refine(iv: IsolatingInterval, p: UniPoly, bits: int):
    """Rational approximation within 2^-bits of the root isolated by iv."""
    lo, hi = _bisect(iv, p, bits)
    return lo if lo == hi else (lo + hi) / 2


def refine_interval(iv: IsolatingInterval, p: UniPoly, bits: int) -> IsolatingInterval:
    """Shrink the isolating interval to width at most 2^-bits."""
    lo, hi = _bisect(iv, p, bits)
    return IsolatingInterval(lo, hi, iv.multiplicity)


def min_positive_zero(p: UniPoly, bits: int = 128):
    """Smallest positive real root: (approximation, is_simple, multiplicity)."""
    roots = isolate_real_roots(p)
    for iv in roots:
        if iv.exact and iv.lo > 0:
            return iv.lo, iv.multiplicity == 1, iv.multiplicity
        if not iv.exact and iv.lo >= 0:
            val = refine(iv, p, bits)
            return val, iv.multiplicity == 1, iv.multiplicity
    raise NoPositiveRootError()


def positive_zeros(p: UniPoly, bits: int = 128):
    """All positive real roots as (approximation, multiplicity), ascending."""
    out = []
    for iv in isolate_real_roots(p):
        if iv.exact:
            if iv.lo > 0:
                out.append((iv.lo, iv.multiplicity))
        elif iv.lo >= 0:
            out.append((refine(iv, p, bits), iv.multiplicity))
    return out


def real_root_signs(p: UniPoly) -> str:
    """Classify signs of the real roots of p."""
    if not p:
        raise ValueError("zero polynomial")
    neg, zero, pos = count_sign_ranges(p)
    if zero or (neg and pos):
        return MIXED_OR_ZERO
    if pos:
        return ALL_POSITIVE
    if neg:
        return ALL_NEGATIVE
    return NO_REAL_ROOTS
