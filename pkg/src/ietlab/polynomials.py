"""Dense integer polynomials with exact arithmetic.

Coefficients are stored ascending, so ``coeffs[k]`` is the coefficient of
``x**k``; trailing zeros are stripped and the zero polynomial has an empty
coefficient tuple.  Everything here is exact: evaluation takes Fractions,
gcds run over the rationals and are returned as primitive integer
polynomials, and factorization is a deterministic search (rational roots
plus Kronecker interpolation up to factor degree 4, pruned with a Mignotte
coefficient bound).  Polynomials of degree above 8 are outside the
supported range of the factoring routines.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

FACTOR_DEGREE_LIMIT = 8


class IntPoly:
    """Immutable dense polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_string(cls, text: str) -> "IntPoly":
        return cls(int(t) for t in text.replace(",", " ").split())

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int/Fraction arguments."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def eval_interval(self, lo: Fraction, hi: Fraction):
        """Enclosure of the image of [lo, hi] under this polynomial."""
        vlo, vhi = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
            vlo, vhi = min(cands) + c, max(cands) + c
        return vlo, vhi

    def derivative(self) -> "IntPoly":
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        """Signed content: gcd of coefficients carrying the sign of the
        leading coefficient, so primitive_part always has positive lc."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        if g and self.lc < 0:
            g = -g
        return g

    def primitive_part(self) -> "IntPoly":
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly(x // c for x in self.coeffs)

    def reciprocal(self) -> "IntPoly":
        """Coefficient reversal x^deg * p(1/x)."""
        return IntPoly(reversed(self.coeffs))

    def is_self_reciprocal(self) -> bool:
        r = self.reciprocal()
        return r == self or r == -self

    def shift_scale_count(self):  # pragma: no cover - debugging helper
        return self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(f"{c:+d}")
            elif k == 1:
                terms.append(f"{c:+d}*x")
            else:
                terms.append(f"{c:+d}*x^{k}")
        return "IntPoly(" + " ".join(terms) + ")"


X = IntPoly((0, 1))
ONE = IntPoly((1,))


def _frac_coeffs(p: IntPoly):
    return [Fraction(c) for c in p.coeffs]


def _frac_divmod(a, b):
    # dense ascending Fraction lists; b must be nonzero
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        f = a[-1] / lb
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _from_fracs(coeffs) -> IntPoly:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in coeffs)


def poly_divmod_exact(a: IntPoly, b: IntPoly):
    """(q, r) with a = q*b + r over the rationals, as integer-primitive data.

    Returns the Fraction coefficient lists; callers mostly care whether r
    is empty.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    return _frac_divmod(_frac_coeffs(a), _frac_coeffs(b))


def divides(b: IntPoly, a: IntPoly) -> bool:
    if not b:
        return not a
    _, r = poly_divmod_exact(a, b)
    return not r


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    q, r = poly_divmod_exact(a, b)
    if r:
        raise ValueError("not an exact polynomial quotient")
    return _from_fracs(q).primitive_part() if q else IntPoly()


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over the rationals (positive leading coefficient)."""
    fa, fb = _frac_coeffs(a), _frac_coeffs(b)
    while any(fb):
        _, r = _frac_divmod(fa, fb)
        fa, fb = fb, r
    if not any(fa):
        return IntPoly()
    return _from_fracs(fa).primitive_part()


def squarefree_part(p: IntPoly) -> IntPoly:
    pp = p.primitive_part()
    if pp.degree <= 1:
        return pp
    g = poly_gcd(pp, pp.derivative())
    if g.degree == 0:
        return pp
    return exact_quotient(pp, g)


def _pos_primitive(p: IntPoly) -> IntPoly:
    # divide by the positive gcd of coefficients; sign pattern untouched
    c = abs(p.content())
    if c in (0, 1):
        return p
    return IntPoly(x // c for x in p.coeffs)


def sturm_chain(p: IntPoly):
    """Sturm sequence of p; members scaled by positive constants only."""
    chain = [_pos_primitive(p), _pos_primitive(p.derivative())]
    while chain[-1]:
        _, r = poly_divmod_exact(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append(_pos_primitive(_from_fracs([-c for c in r])))
    return chain


def _sign_variations(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: IntPoly, lo: Fraction, hi: Fraction, chain=None) -> int:
    """Number of distinct real roots of p in (lo, hi]; endpoints must not be roots
    of p for the open/half-open distinction to be immaterial."""
    if chain is None:
        chain = sturm_chain(squarefree_part(p))
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def root_bound(p: IntPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-bound, bound)."""
    if p.degree < 1:
        raise ValueError("constant polynomial")
    m = max(abs(c) for c in p.coeffs[:-1]) if p.degree else 0
    return 1 + Fraction(m, abs(p.lc))


def rational_roots(p: IntPoly):
    """All rational roots (with the divisor-pair search), sorted."""
    pp = p.primitive_part()
    if not pp or pp.degree == 0:
        return []
    while pp.coeffs[0] == 0:
        pp = IntPoly(pp.coeffs[1:])  # factor out x
        if pp.degree == 0:
            break
    roots = set()
    if p.coeffs and p.coeffs[0] == 0:
        roots.add(Fraction(0))
    if pp.degree >= 1 and pp.coeffs[0] != 0:
        for num in _divisors(abs(pp.coeffs[0])):
            for den in _divisors(abs(pp.lc)):
                for s in (1, -1):
                    r = Fraction(s * num, den)
                    if pp(r) == 0:
                        roots.add(r)
    return sorted(roots)


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _mignotte_bound(p: IntPoly, d: int) -> int:
    # any degree-d factor has sup-norm at most 2^d * |p|_2
    norm2 = isqrt(sum(c * c for c in p.coeffs)) + 1
    return (1 << d) * norm2


def _kronecker_factor(p: IntPoly, d: int):
    """Deterministic degree-d factor search by divisor interpolation."""
    pts = [0, 1, -1, 2, -2, 3, -3][: d + 1]
    vals = [p(x) for x in pts]
    if any(v == 0 for v in vals):
        # a rational integer root slipped through; caller handles roots first
        raise ValueError("sample point is a root")
    bound = _mignotte_bound(p, d)
    choice_lists = []
    for i, v in enumerate(vals):
        divs = _divisors(abs(v))
        opts = [x for x in divs] if i == 0 else [s * x for x in divs for s in (1, -1)]
        choice_lists.append(opts)

    idx = [0] * len(pts)
    n = len(pts)
    while True:
        ys = [Fraction(choice_lists[i][idx[i]]) for i in range(n)]
        cand = _lagrange(pts, ys)
        if cand is not None and cand.degree == d and max(abs(c) for c in cand.coeffs) <= bound:
            if divides(cand, p):
                return cand
        k = n - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < len(choice_lists[k]):
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            return None


def _lagrange(pts, ys):
    n = len(pts)
    acc = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [
                (basis[k - 1] if k else 0) - pts[j] * (basis[k] if k < len(basis) else 0)
                for k in range(len(basis) + 1)
            ]
            denom *= pts[i] - pts[j]
        w = ys[i] / denom
        for k, c in enumerate(basis):
            acc[k] += w * c
    if any(c.denominator != 1 for c in acc):
        return None
    return IntPoly(int(c) for c in acc)


def _factor_squarefree(p: IntPoly):
    """Irreducible factors of a primitive squarefree polynomial."""
    out = []
    work = p
    for r in rational_roots(work):
        lin = IntPoly((-r.numerator, r.denominator))
        while divides(lin, work):
            out.append(lin)
            work = exact_quotient(work, lin)
    d = 2
    while work.degree >= 2 * d and d <= 4:
        fac = _kronecker_factor(work, d)
        if fac is None:
            d += 1
            continue
        if fac.lc < 0:
            fac = fac * IntPoly((-1,))
        out.append(fac)
        work = exact_quotient(work, fac)
    if work.degree >= 1:
        out.append(work)
    return out


def factor(p: IntPoly):
    """Factor into content and irreducible primitive factors with multiplicity.

    Returns (content, [(factor, multiplicity), ...]) with factors sorted by
    degree then coefficients; the product reassembles p exactly.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > FACTOR_DEGREE_LIMIT:
        raise ValueError(f"factorization supported up to degree {FACTOR_DEGREE_LIMIT}")
    content = p.content()
    pp = p.primitive_part()
    if pp.degree == 0:
        return content, []
    ntz = 0
    while pp.coeffs[ntz] == 0:
        ntz += 1
    if ntz:
        pp = IntPoly(pp.coeffs[ntz:])
    pieces = {}
    if ntz:
        pieces[X] = ntz
    sf = squarefree_part(pp)
    for q in _factor_squarefree(sf):
        e = 0
        work = pp
        while divides(q, work):
            work = exact_quotient(work, q)
            e += 1
        pieces[q] = pieces.get(q, 0) + e
    factors = sorted(pieces.items(), key=lambda kv: (kv[0].degree, kv[0].coeffs))
    check = IntPoly((content,))
    for q, e in factors:
        for _ in range(e):
            check = check * q
    if check != p:
        raise AssertionError("factorization failed to reassemble input")
    return content, factors


def is_irreducible(p: IntPoly) -> bool:
    """Irreducibility over the rationals (of the primitive part)."""
    pp = p.primitive_part()
    if pp.degree < 1:
        return False
    if pp.degree == 1:
        return True
    if pp.coeffs[0] == 0:
        return False
    if pp.degree > FACTOR_DEGREE_LIMIT:
        raise ValueError(f"irreducibility supported up to degree {FACTOR_DEGREE_LIMIT}")
    if poly_gcd(pp, pp.derivative()).degree > 0:
        return False
    if rational_roots(pp):
        return False
    d = 2
    while 2 * d <= pp.degree and d <= 4:
        if _kronecker_factor(pp, d) is not None:
            return False
        d += 1
    return True


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant of two integer polynomials via the Sylvester determinant."""
    m, n = p.degree, q.degree
    if not p or not q:
        return 0
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    from .matrices import det

    size = m + n
    a = list(reversed(p.coeffs))  # descending
    b = list(reversed(q.coeffs))
    S = [[0] * size for _ in range(size)]
    for i in range(n):
        for k, c in enumerate(a):
            S[i][i + k] = c
    for i in range(m):
        for k, c in enumerate(b):
            S[n + i][i + k] = c
    return int(det(S))


def is_self_reciprocal(p: IntPoly) -> bool:
    c = p.coeffs
    return bool(c) and c == tuple(reversed(c))


def trace_polynomial(p: IntPoly) -> IntPoly:
    """For a self-reciprocal p of even degree 2g, the degree-g polynomial q
    with x^g * q(x + 1/x) = p(x)."""
    if not is_self_reciprocal(p) or p.degree % 2 != 0 or p.degree < 2:
        raise ValueError("needs a self-reciprocal polynomial of even degree")
    g = p.degree // 2
    rest = list(p.coeffs)
    out = [0] * (g + 1)
    x2p1 = IntPoly((1, 0, 1))
    for m in range(g, -1, -1):
        a = rest[g + m]
        out[m] = a
        col = IntPoly([0] * (g - m) + [1])
        for _ in range(m):
            col = col * x2p1
        for k, c in enumerate(col.coeffs):
            rest[k] -= a * c
    if any(rest):
        raise AssertionError("trace polynomial extraction left a remainder")
    return IntPoly(out)


def power_sum_poly(T: int) -> IntPoly:
    """p_T with p_T(x + 1/x) = x^T + x^(-T): p_0 = 2, p_1 = y,
    p_T = y*p_(T-1) - p_(T-2)."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    if T == 0:
        return IntPoly((2,))
    prev, cur = IntPoly((2,)), IntPoly((0, 1))
    y = IntPoly((0, 1))
    for _ in range(T - 1):
        prev, cur = cur, y * cur - prev
    return cur
