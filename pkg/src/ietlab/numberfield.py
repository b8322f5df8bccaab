"""Number fields K = Q(theta) with a designated module basis.

A NumberField wraps a real algebraic generator theta and a basis
nu_1..nu_n of K over Q; elements carry exact rational coordinates with
respect to that basis.  The default basis is the power basis
(1, theta, ..., theta^{n-1}); models that work in a scaled lattice such
as Z[lambda]/2 swap in their own basis with `with_basis`, and the two
views convert through the basis matrix.

Arithmetic happens in power coordinates (polynomial multiplication
reduced by the generator's minimal polynomial, inversion by the extended
Euclidean algorithm), so +,-,*,/ are exact and the sign of any element is
decidable: a nonzero coordinate vector means a nonzero number, and
interval evaluation with on-demand refinement of the generator's
isolating interval eventually separates it from zero.
"""
from __future__ import annotations

from fractions import Fraction

from .algebraic import RealAlgebraic, real_roots
from .matrices import charpoly, charpoly_frac, inverse, is_primitive, mat_vec, transpose
from .polynomials import IntPoly, _frac_divmod, factor


def _interval_eval(coeffs, lo: Fraction, hi: Fraction):
    """Enclosure of sum(c_k * t^k) over t in [lo, hi]; Horner on intervals."""
    vlo = vhi = Fraction(0)
    for c in reversed(coeffs):
        cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(cands) + c, max(cands) + c
    return vlo, vhi


class NumberField:
    """Q(theta) together with a module basis nu_1..nu_n."""

    def __init__(self, generator: RealAlgebraic, _basis_power=None):
        self.generator = generator
        self.minpoly = generator.poly
        self.n = self.minpoly.degree
        if self.n < 1:
            raise ValueError("generator needs a nonconstant minimal polynomial")
        if _basis_power is None:
            _basis_power = [
                tuple(Fraction(int(i == k)) for i in range(self.n)) for k in range(self.n)
            ]
        self._basis_power = [tuple(Fraction(c) for c in col) for col in _basis_power]
        # columns of V are the power coordinates of the basis
        V = [[self._basis_power[k][i] for k in range(self.n)] for i in range(self.n)]
        self._V = V
        self._Vinv = inverse(V)  # raises if the basis is dependent

    def with_basis(self, elements) -> "NumberField":
        """Same field, new module basis given as n field elements."""
        cols = [self._to_power(e).power_coords for e in elements]
        if len(cols) != self.n:
            raise ValueError("basis size must equal the field degree")
        return NumberField(self.generator, cols)

    # -- element constructors -------------------------------------------

    def element(self, coords) -> "FieldElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.n:
            raise ValueError("coordinate vector has the wrong length")
        return FieldElement(self, coords)

    def from_power_coords(self, pc) -> "FieldElement":
        pc = [Fraction(c) for c in pc]
        if len(pc) != self.n:
            raise ValueError("power coordinate vector has the wrong length")
        return self.element(mat_vec(self._Vinv, pc))

    def from_rational(self, q) -> "FieldElement":
        pc = [Fraction(q)] + [Fraction(0)] * (self.n - 1)
        return self.from_power_coords(pc)

    @property
    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def generator_element(self) -> "FieldElement":
        if self.n == 1:
            return self.from_rational(self.generator.as_fraction())
        pc = [Fraction(0)] * self.n
        pc[1] = Fraction(1)
        return self.from_power_coords(pc)

    @property
    def basis(self):
        """The module basis nu_1..nu_n as field elements."""
        return [
            self.element([Fraction(int(i == k)) for i in range(self.n)])
            for k in range(self.n)
        ]

    def _to_power(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is self:
                return x
            if x.field.generator == self.generator:
                return self.from_power_coords(x.power_coords)
            raise TypeError("elements belong to fields with different generators")
        return self.from_rational(x)

    # -- power-coordinate arithmetic ------------------------------------

    def _reduce(self, cs):
        """Reduce a Fraction coefficient list modulo the minimal polynomial."""
        cs = list(cs)
        p = self.minpoly.coeffs
        lc = Fraction(p[-1])
        for k in range(len(cs) - 1, self.n - 1, -1):
            c = cs[k]
            if c:
                f = c / lc
                for i in range(self.n):
                    cs[k - self.n + i] -= f * p[i]
            cs.pop()
        while len(cs) < self.n:
            cs.append(Fraction(0))
        return cs

    def _mul_power(self, a, b):
        out = [Fraction(0)] * (2 * self.n - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return self._reduce(out)

    def _inv_power(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("division by zero field element")
        # extended Euclid over Q[x]: s*a + t*minpoly = gcd = const
        r0 = [Fraction(c) for c in self.minpoly.coeffs]
        r1 = list(a)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _frac_divmod(r0, r1)
            if not any(r):
                break
            # s2 = s0 - q*s1
            s2 = list(s0)
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        idx = i + j
                        while len(s2) <= idx:
                            s2.append(Fraction(0))
                        s2[idx] -= qc * sc
            r0, r1 = r1, r
            s0, s1 = s1, s2
        if len(r1) != 1:
            raise ZeroDivisionError("element shares a factor with the minimal polynomial")
        g = r1[0]
        inv = [c / g for c in s1]
        return self._reduce(inv)

    def _sign_power(self, pc) -> int:
        if all(c == 0 for c in pc):
            return 0
        th = self.generator
        if th.lo == th.hi:
            v = Fraction(0)
            for c in reversed(pc):
                v = v * th.lo + c
            return 1 if v > 0 else (-1 if v < 0 else 0)
        while True:
            lo, hi = _interval_eval(pc, th.lo, th.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            th.refine()

    def __repr__(self):
        return f"NumberField(minpoly={self.minpoly!r}, n={self.n})"


class FieldElement:
    """Element of a NumberField; coords are w.r.t. the field's basis."""

    __slots__ = ("field", "coords", "_pc")

    def __init__(self, field: NumberField, coords):
        self.field = field
        self.coords = tuple(coords)
        self._pc = None

    @property
    def power_coords(self):
        if self._pc is None:
            self._pc = tuple(mat_vec(self.field._V, list(self.coords)))
        return self._pc

    # -- coercion --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            if other.field.generator == self.field.generator:
                return self.field.from_power_coords(other.power_coords)
            raise TypeError("elements belong to fields with different generators")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, (a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, (-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, (a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        pc = self.field._mul_power(list(self.power_coords), list(o.power_coords))
        return self.field.from_power_coords(pc)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return self.field.from_power_coords(self.field._inv_power(list(self.power_coords)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return FieldElement(self.field, (a / other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- order and identity -------------------------------------------------

    def sign(self) -> int:
        return self.field._sign_power(list(self.power_coords))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        # equality can hold across basis views sharing a generator value,
        # so hash on the minimal polynomial and power coordinates only
        return hash((self.field.minpoly.coeffs, self.power_coords))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return any(self.coords)

    # -- queries -------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.power_coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is irrational")
        return self.power_coords[0]

    def min_poly(self) -> IntPoly:
        """Minimal polynomial over Q (primitive, positive leading coefficient)."""
        n = self.field.n
        if n == 1 or self.is_rational:
            q = self.power_coords[0]
            return IntPoly((-q.numerator, q.denominator))
        # multiplication-by-self matrix in the power basis
        cols = []
        for k in range(n):
            ek = [Fraction(int(i == k)) for i in range(n)]
            cols.append(self.field._mul_power(list(self.power_coords), ek))
        M = [[cols[j][i] for j in range(n)] for i in range(n)]
        cp = charpoly_frac(M)
        den = 1
        for c in cp:
            den = den * c.denominator // _gcd(den, c.denominator)
        ip = IntPoly(int(c * den) for c in cp)
        _, pieces = factor(ip)
        for q, _mult in pieces:
            acc = self.field.zero
            for c in reversed(q.coeffs):
                acc = acc * self + c
            if not acc:
                return q
        raise AssertionError("no factor of the characteristic polynomial vanished")

    def __float__(self) -> float:
        pc = list(self.power_coords)
        if all(c == 0 for c in pc):
            return 0.0
        th = self.field.generator
        th.refine_to(Fraction(1, 1 << 96))
        lo, hi = _interval_eval(pc, th.lo, th.hi)
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"FieldElement({list(self.coords)!r} ~ {float(self):.12g})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def compare(a, b) -> int:
    """Exact sign of a - b for field elements / rationals."""
    if isinstance(a, FieldElement):
        return a._cmp(b)
    if isinstance(b, FieldElement):
        return -b._cmp(a)
    a, b = Fraction(a), Fraction(b)
    return (a > b) - (a < b)


def spectral_radius(M) -> RealAlgebraic:
    """Largest real root of the characteristic polynomial.

    For a nonnegative matrix this is the spectral radius (the Perron root
    dominates every complex eigenvalue in modulus).
    """
    roots = real_roots(charpoly(M))
    if not roots:
        raise ValueError("matrix has no real eigenvalue")
    return roots[-1]


def perron_pair(M):
    """Perron data of a primitive nonnegative integer matrix.

    Returns (beta, v): beta the spectral radius as a RealAlgebraic and v
    the exact eigenvector in Q(beta)^n, strictly positive, normalized to
    sum 1, with M v = beta v verified exactly.
    """
    if not is_primitive(M):
        raise ValueError("matrix is not primitive")
    n = len(M)
    beta = spectral_radius(M)
    if beta.is_rational:
        K = NumberField(beta)
        b = K.from_rational(beta.as_fraction())
    else:
        K = NumberField(beta)
        b = K.generator_element()
    rows = [
        [K.from_rational(M[i][j]) - (b if i == j else K.zero) for j in range(n)]
        for i in range(n)
    ]
    v = _kernel_vector_field(rows, K)
    total = K.zero
    for x in v:
        total = total + x
    if not total:
        raise AssertionError("eigenvector sums to zero")
    v = [x / total for x in v]
    for x in v:
        if x.sign() <= 0:
            raise AssertionError("Perron eigenvector not strictly positive")
    for i in range(n):
        lhs = K.zero
        for j in range(n):
            lhs = lhs + v[j] * M[i][j]
        if lhs != b * v[i]:
            raise AssertionError("eigenvector equation failed")
    return beta, v


def _kernel_vector_field(rows, K: NumberField):
    """One kernel vector of a singular square matrix over the field K;
    requires a one-dimensional kernel."""
    n = len(rows)
    rows = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if rows[i][c].sign() != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ValueError(f"kernel dimension {len(free)}, expected 1")
    c0 = free[0]
    v = [K.zero] * n
    v[c0] = K.one
    for rr, c in enumerate(pivots):
        v[c] = -rows[rr][c0]
    return v


def to_real_algebraic(x: FieldElement) -> RealAlgebraic:
    """The value of x as a standalone algebraic number (minpoly + interval)."""
    q = x.min_poly()
    if q.degree == 1:
        a, b = q.coeffs
        return RealAlgebraic.from_rational(Fraction(-a, b))
    from .polynomials import count_roots

    th = x.field.generator
    pc = list(x.power_coords)
    while True:
        lo, hi = _interval_eval(pc, th.lo, th.hi)
        if lo < hi and q(lo) != 0 and q(hi) != 0 and count_roots(q, lo, hi) == 1:
            return RealAlgebraic(q, lo, hi)
        th.refine()


def eigen_moduli_squared(p: IntPoly):
    """Squared moduli of the roots of p with multiplicities, sorted descending.

    Returns [(RealAlgebraic, mult), ...].  Real roots contribute their
    squares; a complex pair of an irreducible quadratic or cubic factor
    contributes the exact product identity |z|^2 = |c0/lc| / |real part of
    the spectrum|.  Irreducible quartic factors with complex roots are not
    supported (never produced by the matrices analyzed here).
    """
    _, pieces = factor(p)
    entries = []  # (RealAlgebraic usq, multiplicity)
    for q, mult in pieces:
        rroots = real_roots(q)
        for r in rroots:
            if r.is_rational:
                rv = r.as_fraction()
                entries.append((RealAlgebraic.from_rational(rv * rv), mult))
            else:
                K = NumberField(r)
                entries.append((to_real_algebraic(K.generator_element() ** 2), mult))
        n_complex = q.degree - len(rroots)
        if n_complex == 0:
            continue
        if n_complex != 2:
            raise NotImplementedError(
                "modulus of complex roots supported only for a single conjugate pair"
            )
        c_ratio = Fraction(abs(q.coeffs[0]), abs(q.lc))
        if q.degree == 2:
            entries.append((RealAlgebraic.from_rational(c_ratio), 2))
        elif q.degree == 3:
            r = rroots[0]
            K = NumberField(r)
            u = K.from_rational(c_ratio) / abs(K.generator_element())
            entries.append((to_real_algebraic(u), 2))
        else:
            raise NotImplementedError(
                "complex pair modulus for irreducible quartic factors is not supported"
            )
    # exact descending sort, merging equal moduli
    entries.sort(key=_modulus_sort_key)
    entries.reverse()
    merged = []
    for usq, mult in entries:
        if merged and merged[-1][0] == usq:
            merged[-1] = (usq, merged[-1][1] + mult)
        else:
            merged.append((usq, mult))
    return merged


class _modulus_sort_key:
    """Wrapper making RealAlgebraic usable as an exact sort key."""

    __slots__ = ("v",)

    def __init__(self, entry):
        self.v = entry[0]

    def __lt__(self, other):
        return self.v < other.v


def spectral_radius_squared(M) -> RealAlgebraic:
    """Exact square of the spectral radius (largest root modulus) of an
    integer matrix; complex pairs included via eigen_moduli_squared."""
    return eigen_moduli_squared(charpoly(M))[0][0]


def mult_matrix(zeta: FieldElement):
    """Integer matrix of multiplication by zeta on the field's module basis.

    Column k holds the coordinates of zeta*nu_k; raises if any coordinate
    is non-integral (zeta does not stabilize the module)."""
    K = zeta.field
    cols = []
    for nu in K.basis:
        prod = zeta * nu
        col = []
        for c in prod.coords:
            if c.denominator != 1:
                raise ValueError("element does not stabilize the module")
            col.append(int(c))
        cols.append(col)
    return [[cols[k][i] for k in range(K.n)] for i in range(K.n)]
