"""Recursive-tiling codes for self-similar exchanges.

The window W = [0, rho*total) returns to itself under the map, and the
return words tile the whole interval: every point sits in a unique tile
E^t(rho * atom_j) with t below the length of the j-th return word.  The
pair (j, t) is a prefix of the substitution, and reading it off level by
level encodes the point as a path in the prefix automaton.  Eventually
periodic codes are exactly the points whose level-normalized orbit
repeats, and the periodic part is the fixed point of a contraction, so
decoding is a closed-form geometric sum in the field.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .algebraic import RealAlgebraic
from .lattice import LatticeModel
from .matrices import charpoly, det, identity, inverse, mat_pow, mat_sub, mat_vec, solve
from .numberfield import (
    FieldElement,
    NumberField,
    eigen_moduli_squared,
    to_real_algebraic,
)
from .polynomials import (
    IntPoly,
    is_self_reciprocal,
    power_sum_poly,
    resultant,
    trace_polynomial,
)
from .substitution import Prefix


class VershikCode:
    """An eventually periodic (or truncated) prefix sequence.

    transient: the first t prefixes; period: the repeating block, empty
    when the encoder hit its depth cap without finding a repeat.
    """

    __slots__ = ("transient", "period")

    def __init__(self, transient, period):
        self.transient = tuple(transient)
        self.period = tuple(period)

    @property
    def t(self) -> int:
        return len(self.transient)

    @property
    def T(self) -> int:
        return len(self.period)

    @property
    def determined(self) -> bool:
        return bool(self.period)

    def prefix(self, k: int) -> Prefix:
        """1-based k-th prefix of the infinite sequence."""
        if k <= self.t:
            return self.transient[k - 1]
        if not self.period:
            raise IndexError("code undetermined past the transient")
        return self.period[(k - self.t - 1) % self.T]

    def to_line(self) -> str:
        mus = " ".join(f"({m.rule},{m.cut})" for m in self.transient + self.period)
        return f"(t={self.t}; T={self.T}; {mus})"

    @classmethod
    def from_line(cls, line: str) -> "VershikCode":
        body = line.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError("malformed code line")
        head, _, rest = body[1:-1].partition(";")
        tpart = head.split("=")[1]
        Tpart, _, mus = rest.partition(";")
        t = int(tpart)
        T = int(Tpart.split("=")[1])
        pairs = []
        for tok in mus.split():
            a, b = tok.strip("()").split(",")
            pairs.append(Prefix(int(a), int(b)))
        if len(pairs) != t + T:
            raise ValueError("prefix count disagrees with t + T")
        return cls(pairs[:t], pairs[t:])

    def __eq__(self, other):
        return (
            isinstance(other, VershikCode)
            and self.transient == other.transient
            and self.period == other.period
        )

    def __repr__(self):
        return f"VershikCode{self.to_line()}"


def _require_self_similar(model: LatticeModel):
    if model.rho is None or model.sigma is None:
        raise ValueError("model must carry a scaling factor and substitution")


def tile_offset(model: LatticeModel, mu: Prefix) -> FieldElement:
    """c_mu: window start plus the translation accumulated along the first
    `cut` letters of the rule's word, so the tile map is y -> rho*y + c_mu."""
    word = model.sigma.rules[mu.rule]
    if not 0 <= mu.cut < len(word):
        raise ValueError("prefix cut out of range")
    c = model.window_start
    for s in range(mu.cut):
        c = c + model.E.translations[word[s] - 1]
    return c


def vershik_encode(model: LatticeModel, x, depth: int = 512) -> VershikCode:
    """Prefix code of a point, with eventual-periodicity detection.

    Levels are peeled by walking the point backward into the window and
    rescaling; a repeat of the exact level point closes the period.  If
    no repeat shows up within `depth` levels the code is returned
    undetermined (empty period).
    """
    _require_self_similar(model)
    E = model.E
    K = model.field
    if not isinstance(x, FieldElement):
        x = K.from_rational(Fraction(x))
    if x.sign() < 0 or (x - E.total).sign() >= 0:
        raise ValueError("point outside the domain")
    Einv = E.inverse()
    wlo = model.window_start
    whi = wlo + model.rho * E.total
    maxlen = max(len(w) for w in model.sigma.rules.values())
    seen = {x: 0}
    prefixes = []
    y = x
    for level in range(1, depth + 1):
        t = 0
        while (y - wlo).sign() < 0 or (y - whi).sign() >= 0:
            y = Einv.apply(y)
            t += 1
            if t >= maxlen:
                raise AssertionError("backward orbit missed the window")
        y = (y - wlo) / model.rho
        j = E.atom_of(y)
        mu = Prefix(j, t)
        if model.sigma.rules[j][t] != (prefixes[-1].rule if prefixes else E.atom_of(x)):
            raise AssertionError("tile letter disagrees with the coding")
        prefixes.append(mu)
        back = seen.get(y)
        if back is not None:
            return VershikCode(prefixes[:back], prefixes[back:])
        seen[y] = level
    return VershikCode(prefixes, ())


def _validate_consistency(model: LatticeModel, code: VershikCode):
    rules = model.sigma.rules
    seq = list(code.transient + code.period)
    for mu in seq:
        if mu.rule not in rules or not 0 <= mu.cut < len(rules[mu.rule]):
            raise ValueError("prefix outside the rule set")
    chain = seq + ([code.period[0]] if code.period else [])
    for a, b in zip(chain, chain[1:]):
        if rules[b.rule][b.cut] != a.rule:
            raise ValueError("inconsistent consecutive prefixes")


def vershik_decode(model: LatticeModel, code: VershikCode) -> FieldElement:
    """Exact point with the given eventually periodic code.

    The periodic tail is the fixed point of the composed tile maps, a
    geometric sum divided by 1 - rho^T; the transient is unwound on top.
    Raises on inconsistent codes and on codes whose tiles do not nest.
    """
    _require_self_similar(model)
    if code.T < 1:
        raise ValueError("decoding needs a periodic tail")
    _validate_consistency(model, code)
    K = model.field
    E = model.E
    rho = model.rho
    acc = K.zero
    power = K.one
    for mu in code.period:
        acc = acc + power * tile_offset(model, mu)
        power = power * rho
    # power is now rho^T
    x_per = acc / (K.one - power)
    if x_per.sign() < 0 or (x_per - E.total).sign() >= 0:
        raise ValueError("periodic point left the domain")
    # one loop around the cycle validates the tile atoms
    y = x_per
    for mu in code.period:
        y = (y - tile_offset(model, mu)) / rho
        if y.sign() < 0 or (y - E.total).sign() >= 0:
            raise ValueError("code tile leaves the domain")
        if E.atom_of(y) != mu.rule:
            raise ValueError("code tile does not contain its fixed point")
    if y != x_per:
        raise AssertionError("period failed to close")
    x = x_per
    for mu in reversed(code.transient):
        if E.atom_of(x) != mu.rule:
            raise ValueError("transient prefix disagrees with the point")
        x = rho * x + tile_offset(model, mu)
    if x.sign() < 0 or (x - E.total).sign() >= 0:
        raise ValueError("decoded point left the domain")
    xi, _ = model.layer_of(x)
    order = model.order_of(xi)
    if code.T % order != 0:
        raise AssertionError("period is not a multiple of the layer order")
    return x


def enumerate_tiles(model: LatticeModel, depth: int):
    """All depth-k tiles as (chain, left, length), exact endpoints.

    A chain (mu_1..mu_k) is admissible when consecutive prefixes satisfy
    the coding constraint; its tile is an affine image of the atom of
    the innermost rule.
    """
    _require_self_similar(model)
    K = model.field
    E = model.E
    rho = model.rho
    rules = model.sigma.rules
    prefixes = [Prefix(j, c) for j in sorted(rules) for c in range(len(rules[j]))]
    offsets = {mu: tile_offset(model, mu) for mu in prefixes}
    atoms = E.atoms()
    out = []

    def rec(chain, offset, power):
        if len(chain) == depth:
            j = chain[-1].rule
            lo, hi = atoms[j - 1]
            out.append((tuple(chain), offset + power * lo, power * (hi - lo)))
            return
        last = chain[-1]
        for mu in prefixes:
            if rules[mu.rule][mu.cut] == last.rule:
                chain.append(mu)
                rec(chain, offset + power * offsets[mu], power * rho)
                chain.pop()

    for mu in prefixes:
        rec([mu], offsets[mu], rho)
    return out


def random_consistent_code(model: LatticeModel, rng) -> VershikCode:
    """Random walk on the prefix graph until a state repeats.

    The result satisfies the chain constraint by construction but need not
    describe an actual point; callers should decode inside try/except and
    discard the geometrically invalid ones.
    """
    _require_self_similar(model)
    rules = model.sigma.rules
    prefixes = [Prefix(j, c) for j in sorted(rules) for c in range(len(rules[j]))]
    succ = {
        mu: [nxt for nxt in prefixes if rules[nxt.rule][nxt.cut] == mu.rule]
        for mu in prefixes
    }
    walk = [rng.choice(prefixes)]
    seen = {walk[0]: 0}
    while True:
        nxt = rng.choice(succ[walk[-1]])
        if nxt in seen:
            j = seen[nxt]
            return VershikCode(tuple(walk[:j]), tuple(walk[j:]))
        seen[nxt] = len(walk)
        walk.append(nxt)


def d_T(model: LatticeModel, T: int) -> int:
    """|det(I - R^T)|, the denominator bound for period-T points.

    With nonzero drift the spectrum of R splits into reciprocal pairs,
    and the determinant is cross-checked against the trace-polynomial
    resultant for the pairs.
    """
    if model.R is None:
        raise ValueError("model has no scaling matrix")
    if T < 1:
        raise ValueError("T must be positive")
    RT = mat_pow(model.R, T)
    n = model.n
    M = mat_sub(identity(n), RT)
    val = det(M)
    if val == 0:
        raise ValueError("I - R^T is singular")
    result = abs(int(val))
    chi = charpoly(model.R)
    if not model.drift.is_zero and is_self_reciprocal(chi) and chi.degree % 2 == 0:
        q = trace_polynomial(chi)
        cross = abs(resultant(q, power_sum_poly(T) - IntPoly((2,))))
        if cross != result:
            raise AssertionError("reciprocal-pair cross-check failed")
    return result


class ExponentReport:
    """Eigenvalue exponents of a self-similar model."""

    __slots__ = (
        "beta",
        "beta2",
        "beta2_multiplicity",
        "sr_R",
        "v",
        "v_enclosure",
        "eq_flag",
        "discrepancy_exponent",
    )

    def __init__(self, beta, beta2, beta2_multiplicity, sr_R, v, v_enclosure,
                 eq_flag, discrepancy_exponent):
        self.beta = beta
        self.beta2 = beta2
        self.beta2_multiplicity = beta2_multiplicity
        self.sr_R = sr_R
        self.v = v
        self.v_enclosure = v_enclosure
        self.eq_flag = eq_flag
        self.discrepancy_exponent = discrepancy_exponent

    def __repr__(self):
        return (
            f"ExponentReport(beta={self.beta:.6f}, sr_R={self.sr_R:.6f}, "
            f"v={self.v:.6f}, eq_flag={self.eq_flag})"
        )


def _alg_power_equals(a: RealAlgebraic, e: int, b: RealAlgebraic) -> bool:
    """a**e == b, decided exactly."""
    if a.is_rational:
        return b == a.as_fraction() ** e
    if e == 1:
        return a == b
    K = NumberField(a)
    w = K.generator_element()
    acc = K.one
    for _ in range(e):
        acc = acc * w
    return to_real_algebraic(acc) == b


def _log_ratio_enclosure(u_num: RealAlgebraic, u_den: RealAlgebraic):
    """Certified enclosure of log(u_num)/log(u_den) for arguments > 1."""
    width = Fraction(1, 2**60)
    u_num.refine_to(width)
    u_den.refine_to(width)
    lo = math.log(u_num.lo) / math.log(u_den.hi)
    hi = math.log(u_num.hi) / math.log(u_den.lo)
    return lo, hi


def exponent_report(model: LatticeModel) -> ExponentReport:
    """Growth exponents: beta, the second eigenvalue modulus, sr(R), and
    v = log sr(R) / log beta with a certified enclosure.

    The flag records the exact algebraic identity sr(R)^(n-1) = beta.
    All modulus comparisons run on squared moduli, which stay inside
    real fields even for complex eigenvalue pairs.
    """
    _require_self_similar(model)
    if model.R is None:
        raise ValueError("model has no scaling matrix")
    M = model.sigma.incidence()
    mods_M = eigen_moduli_squared(charpoly(M))
    u_M, top_mult = mods_M[0]
    u2, mult2 = mods_M[1]
    mods_R = eigen_moduli_squared(charpoly(model.R))
    u_R = mods_R[0][0]
    if isinstance(u_M, Fraction):
        u_M = RealAlgebraic.from_rational(u_M)
    if isinstance(u2, Fraction):
        u2 = RealAlgebraic.from_rational(u2)
    if isinstance(u_R, Fraction):
        u_R = RealAlgebraic.from_rational(u_R)
    eq_flag = _alg_power_equals(u_R, model.n - 1, u_M)
    v_lo, v_hi = _log_ratio_enclosure(u_R, u_M)
    d_lo, d_hi = _log_ratio_enclosure(u2, u_M)
    beta = math.sqrt(float(u_M))
    return ExponentReport(
        beta=beta,
        beta2=math.sqrt(float(u2)),
        beta2_multiplicity=mult2,
        sr_R=math.sqrt(float(u_R)),
        v=(v_lo + v_hi) / 2,
        v_enclosure=(v_lo, v_hi),
        eq_flag=eq_flag,
        discrepancy_exponent=(d_lo + d_hi) / 2,
    )


def escape_bound_check(model: LatticeModel, code: VershikCode, z=None):
    """Prop-9-style bound: the integer part of a point with an eventually
    periodic code satisfies ||z|| <= C * sr(R)^(t+T).

    C follows the proof's chain: a uniform power bound c1 on ||R^k||/sr^k,
    a uniform resolvent bound c2 on ||(I-R^T')^-1||, and the largest
    prefix offset W.  Returns (passed, achieved_ratio, C).
    """
    _require_self_similar(model)
    if model.R is None:
        raise ValueError("model has no scaling matrix")
    if z is None:
        x = vershik_decode(model, code)
        _, z = model.layer_of(x)
    norm = max(abs(int(c)) for c in z) if len(z) else 0
    mods_R = eigen_moduli_squared(charpoly(model.R))
    u_R = mods_R[0][0]
    if isinstance(u_R, Fraction):
        srf = math.sqrt(float(u_R))
    else:
        u_R.refine_to(Fraction(1, 2**40))
        srf = math.sqrt(float(u_R))
    if srf <= 1.0:
        raise ValueError("bound needs an expanding scaling matrix")
    n = model.n
    t, T = code.t, code.T
    c1 = 1.0
    for k in range(1, max(t + T, 2 * n) + 1):
        Rk = mat_pow(model.R, k)
        nk = max(sum(abs(e) for e in row) for row in Rk)
        c1 = max(c1, nk / srf**k)
    c2 = 0.0
    for Tp in range(1, max(T, 1) + 1):
        Minv = inverse(mat_sub(identity(n), mat_pow(model.R, Tp)))
        c2 = max(c2, max(sum(abs(float(e)) for e in row) for row in Minv))
    base = [int(c) for c in model.module.m_coords(model.window_start)]
    W = max(1, max(abs(c) for c in base))
    for j, word in model.sigma.rules.items():
        acc = base[:]
        for s in range(len(word)):
            W = max(W, max(abs(c) for c in acc))
            for r in range(n):
                acc[r] += model.projection[r][word[s] - 1]
    C = c1 * W * (1.0 + c1 * c2) / (srf - 1.0) + 2.0
    limit = C * srf ** (t + T)
    ratio = norm / srf ** (t + T)
    return norm <= limit, ratio, C


def affine_closed_form(a, b, u0, k: int):
    """k-th iterate of u -> a*u + b: u_k = a^k (u_0 - l) + l with
    l = (I - a)^-1 b, exact over Fractions."""
    n = len(a)
    l = solve(mat_sub(identity(n), a), [Fraction(c) for c in b])
    diff = [Fraction(c) - lc for c, lc in zip(u0, l)]
    ak = mat_pow([[Fraction(e) for e in row] for row in a], k)
    moved = mat_vec(ak, diff)
    return [m + lc for m, lc in zip(moved, l)]
