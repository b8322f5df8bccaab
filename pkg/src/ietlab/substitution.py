"""Substitutions on {1..N}: incidence matrices, primitivity, fixed points,
and the prefix automaton that drives the recursive-tiling coding.

A prefix is a pair (rule j, cut t) standing for the first t symbols of
the rule word for j, 0 <= t < len(word).  chi of a prefix is its rule j;
the plus-symbol is word[t], the letter the prefix stops in front of.  A
sequence of prefixes mu_1, mu_2, ... is admissible when
chi(mu_k) = plus(mu_{k+1}), so the automaton has an edge mu -> mu' exactly
when that matches.
"""
from __future__ import annotations

from fractions import Fraction

from .algebraic import RealAlgebraic
from .matrices import charpoly, is_primitive, mat_mul
from .numberfield import spectral_radius
from .polynomials import count_roots, root_bound


class Substitution:
    """Rewriting rules i -> word over the alphabet {1..N}."""

    __slots__ = ("rules",)

    def __init__(self, rules):
        rules = {int(k): tuple(int(s) for s in v) for k, v in dict(rules).items()}
        N = len(rules)
        if sorted(rules) != list(range(1, N + 1)):
            raise ValueError("rules must cover exactly the symbols 1..N")
        for i, w in rules.items():
            if not w:
                raise ValueError(f"empty rule for symbol {i}")
            if any(s < 1 or s > N for s in w):
                raise ValueError(f"rule {i} uses symbols outside 1..{N}")
        self.rules = rules

    @property
    def N(self) -> int:
        return len(self.rules)

    def __call__(self, word):
        """Apply the substitution to a symbol or a word."""
        if isinstance(word, int):
            return self.rules[word]
        out = []
        for s in word:
            out.extend(self.rules[s])
        return tuple(out)

    def incidence(self):
        """M[i][j] = number of occurrences of symbol i+1 in the rule for j+1."""
        N = self.N
        M = [[0] * N for _ in range(N)]
        for j in range(1, N + 1):
            for s in self.rules[j]:
                M[s - 1][j - 1] += 1
        return M

    def is_primitive(self) -> bool:
        return is_primitive(self.incidence())

    def fixed_point_letter(self) -> int:
        """The unique symbol j whose rule starts with j."""
        hits = [j for j, w in self.rules.items() if w[0] == j]
        if len(hits) != 1:
            raise ValueError(f"expected one self-starting rule, found {hits}")
        return hits[0]

    def fixed_point_prefixes(self):
        """Stream sigma^k(j) for the self-starting letter j; each word is a
        prefix of the next."""
        w = (self.fixed_point_letter(),)
        while True:
            w = self(w)
            yield w

    def to_lines(self):
        return [
            "%d -> %s" % (i, "".join(str(s) for s in self.rules[i]))
            if self.N < 10
            else "%d -> %s" % (i, ",".join(str(s) for s in self.rules[i]))
            for i in range(1, self.N + 1)
        ]

    @classmethod
    def from_lines(cls, lines):
        rules = {}
        for line in lines:
            line = line.strip()
            if not line:
                continue
            left, right = line.split("->")
            word = right.strip()
            syms = [int(s) for s in word.split(",")] if "," in word else [int(c) for c in word]
            rules[int(left.strip())] = syms
        return cls(rules)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.rules == other.rules

    def __repr__(self):
        return "Substitution(%s)" % {i: "".join(map(str, w)) for i, w in self.rules.items()}


def analyze_substitution(sigma: Substitution):
    """(incidence matrix, beta = its Perron root, fixed-point stream).

    Raises on non-primitive substitutions: everything downstream (unique
    positive eigenvector, tiling) needs primitivity.
    """
    M = sigma.incidence()
    if not is_primitive(M):
        raise ValueError("substitution is not primitive")
    beta = spectral_radius(M)
    return M, beta, sigma.fixed_point_prefixes()


class Prefix:
    """Proper prefix of a rule word, named (rule, cut length)."""

    __slots__ = ("rule", "cut")

    def __init__(self, rule: int, cut: int):
        self.rule = rule
        self.cut = cut

    def __eq__(self, other):
        return isinstance(other, Prefix) and (self.rule, self.cut) == (other.rule, other.cut)

    def __hash__(self):
        return hash((self.rule, self.cut))

    def __repr__(self):
        return f"({self.rule},{self.cut})"


class PrefixGraph:
    """Admissibility automaton on the prefixes of a substitution."""

    def __init__(self, sigma: Substitution):
        self.sigma = sigma
        self.states = [
            Prefix(j, t)
            for j in range(1, sigma.N + 1)
            for t in range(len(sigma.rules[j]))
        ]
        self.index = {p: k for k, p in enumerate(self.states)}
        n = len(self.states)
        A = [[0] * n for _ in range(n)]
        for a, mu in enumerate(self.states):
            for b, nu in enumerate(self.states):
                if self.chi(mu) == self.plus(nu):
                    A[a][b] = 1
        self.adjacency = A

    def chi(self, mu: Prefix) -> int:
        return mu.rule

    def plus(self, mu: Prefix) -> int:
        return self.sigma.rules[mu.rule][mu.cut]

    def size(self) -> int:
        return len(self.states)

    def successors(self, mu: Prefix):
        return [nu for nu in self.states if self.chi(mu) == self.plus(nu)]

    def count_paths(self, t: int):
        """Number of admissible prefix sequences of length t+1 (t edges)."""
        n = len(self.states)
        P = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(t):
            P = mat_mul(P, self.adjacency)
        return sum(sum(row) for row in P)

    def count_cycles(self, T: int):
        """Number of closed admissible sequences of period T (trace of A^T)."""
        P = self.adjacency
        for _ in range(T - 1):
            P = mat_mul(P, self.adjacency)
        return sum(P[i][i] for i in range(len(P)))

    def spectral_radius_matches(self, beta: RealAlgebraic) -> bool:
        """Exact check that the automaton's growth rate equals beta.

        The adjacency matrix is nonnegative and primitive, so its
        spectral radius is its largest real eigenvalue; it equals beta
        iff beta is a root of the characteristic polynomial and no real
        root lies above beta's isolating interval.
        """
        if not is_primitive(self.adjacency):
            return False
        p = charpoly(self.adjacency)
        from .numberfield import NumberField

        K = NumberField(beta)
        th = K.generator_element()
        acc = K.zero
        power = K.one
        for c in p.coeffs:
            acc = acc + c * power
            power = power * th
        if acc != K.zero:
            return False
        hi = beta.hi
        bound = root_bound(p)
        if hi < bound and count_roots(p, hi, bound) != 0:
            return False
        return True


def prefix_graph(sigma: Substitution) -> PrefixGraph:
    return PrefixGraph(sigma)
