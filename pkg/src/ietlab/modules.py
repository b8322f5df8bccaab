"""Normalization of the coefficient module of a self-similar IET.

The translations of a renormalizable IET span a rank-n Z-module M inside
the field K = Q(rho), presented by the basis nu attached to the field.
This module carries the lattice model, and three integers control its
arithmetic:

  d : least positive integer with d*M contained in the multiplier ring
      O = {zeta in K : zeta*M subset of M}; then J = d*M is an ideal-like
      sublattice of O,
  j : least positive rational integer lying in J (J cap Q = j*Z),
  b : d / gcd(d, j), the modulus of the torsion coordinate.

A basis nu' of J is chosen with nu'_1 = j, so every zeta in M is
(1/d) * sum m_k nu'_k with integer m_k, and replacing m_0 by m_0 mod b
loses nothing modulo the integer translations already present.  The
reduced coordinate map phi' : M -> Z/bZ x Z^{n-1} is the bridge between
the IET and its lattice picture.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .matrices import hnf_column, inverse_int, kernel_int, solve, transpose, unimodular_completion
from .numberfield import FieldElement, NumberField


def _integer_vector(coords, what: str):
    out = []
    for c in coords:
        f = Fraction(c)
        if f.denominator != 1:
            raise ValueError(f"{what} has non-integer coordinate {f}")
        out.append(f.numerator)
    return out


def multiplier_ring_basis(K: NumberField):
    """Basis (integer nu-coordinate columns) of O = {zeta : zeta*M in M}.

    Requires 1 in M, which forces O inside M, so multipliers have integer
    nu-coordinates.  The closure condition "x_1 T_1 + ... + x_n T_n is an
    integer matrix" (T_k = multiplication by nu_k in nu-coordinates) is a
    congruence on x, solved as an integer kernel problem.
    """
    n = K.n
    one_coords = _integer_vector(K.one.coords, "1 relative to the module basis")
    basis = K.basis
    T = []
    for k in range(n):
        cols = [(basis[k] * basis[i]).coords for i in range(n)]
        T.append([[Fraction(cols[i][r]) for i in range(n)] for r in range(n)])
    D = 1
    for Tk in T:
        for row in Tk:
            for c in row:
                D = lcm(D, c.denominator)
    if D == 1:
        return [[int(i == k) for i in range(n)] for k in range(n)], one_coords
    # rows: one congruence per matrix entry; columns: x_1..x_n then slack
    rows = []
    for r in range(n):
        for c in range(n):
            row = [int(T[k][r][c] * D) for k in range(n)]
            row.extend(-D * int(r == i and c == j) for i in range(n) for j in range(n))
            rows.append(row)
    ker = kernel_int(rows)
    xs = [col[:n] for col in ker]
    if len(xs) != n:
        raise ValueError("multiplier ring does not have full rank")
    H, _ = hnf_column(transpose(xs))
    cols = [[H[i][k] for i in range(n)] for k in range(n)]
    return cols, one_coords


class ModuleData:
    """The normalized presentation of the module M attached to a field."""

    def __init__(self, K: NumberField):
        self.field = K
        n = K.n
        order_cols, one_coords = multiplier_ring_basis(K)
        self.order_basis = order_cols
        self.one_coords = one_coords
        O = transpose([list(c) for c in order_cols])  # columns = basis

        # d: least d with d*nu_k in O for every k
        d = 1
        for k in range(n):
            e = [Fraction(int(i == k)) for i in range(n)]
            sol = solve([row[:] for row in O], e)
            for c in sol:
                d = lcm(d, Fraction(c).denominator)
        self.d = d

        # J = d*M has nu-coordinate lattice d*Z^n; integers q in J need
        # q*one_coords in d*Z^n
        j = 1
        for c in one_coords:
            j = lcm(j, d // gcd(d, c))
        self.j = j
        self.b = d // gcd(d, j)

        # primitive first basis vector (j/d)*one_coords, completed
        v = []
        for c in one_coords:
            f = Fraction(j * c, d)
            if f.denominator != 1:
                raise ValueError("internal: j*1 not in J")
            v.append(f.numerator)
        self.W = unimodular_completion(v)
        self.Winv = inverse_int(self.W)
        # nu' basis as field elements: nu-coordinates are d * (columns of W)
        self.nu_prime = [
            K.element([self.d * self.W[i][k] for i in range(n)]) for k in range(n)
        ]

    def in_module(self, zeta: FieldElement) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.field._to_power(zeta).coords)

    def m_coords(self, zeta: FieldElement):
        """Integer coordinates m with zeta = (1/d) sum m_k nu'_k."""
        z = _integer_vector(
            self.field._to_power(zeta).coords, "module element"
        )
        return tuple(sum(self.Winv[r][i] * z[i] for i in range(len(z))) for r in range(len(z)))

    def from_m_coords(self, m) -> FieldElement:
        n = self.field.n
        if len(m) != n:
            raise ValueError("coordinate length mismatch")
        z = [sum(self.W[i][k] * int(m[k]) for k in range(n)) for i in range(n)]
        return self.field.element(z)

    def reduced(self, zeta: FieldElement):
        """phi'(zeta): first coordinate mod b, the rest exact."""
        m = self.m_coords(zeta)
        return (m[0] % self.b,) + m[1:]

    def in_order(self, zeta: FieldElement) -> bool:
        """Membership of zeta in the multiplier ring O."""
        z = [Fraction(c) for c in self.field._to_power(zeta).coords]
        O = transpose([list(c) for c in self.order_basis])
        sol = solve([row[:] for row in O], z)
        return all(Fraction(c).denominator == 1 for c in sol)


def module_normalize(K: NumberField) -> ModuleData:
    return ModuleData(K)
