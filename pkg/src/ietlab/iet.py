"""Interval exchange transformations with exact field-element endpoints.

Intervals are half-open [a, b), so the atom partition and its image tile
the domain exactly; every comparison routes through exact signs, and a
point on a discontinuity belongs to the atom on its right.  Symbols are
1-based throughout, matching the usual coding alphabet {1..N}.
"""
from __future__ import annotations

from fractions import Fraction

from .numberfield import FieldElement, NumberField


class Permutation:
    """A permutation of {1..N} given by its images, required irreducible.

    images[i-1] is the position the i-th atom takes in the rearranged
    order.  Irreducible means no proper prefix {1..k} is invariant;
    reducible data would split the IET into two independent ones.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        N = len(images)
        if sorted(images) != list(range(1, N + 1)):
            raise ValueError(f"not a permutation of 1..{N}: {images}")
        seen = 0
        for k in range(1, N):
            seen = max(seen, images[k - 1])
            if seen == k:
                raise ValueError(f"reducible permutation: {images}")
        self.images = images

    @property
    def N(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse_image(self, p: int) -> int:
        """The atom sent to position p."""
        return self.images.index(p) + 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%s)" % (self.images,)


def translations_from(perm: Permutation, lengths):
    """tau_i = sum of lengths placed before atom i in the image minus the
    lengths before it in the domain."""
    lengths = tuple(lengths)
    N = perm.N
    if len(lengths) != N:
        raise ValueError("length count does not match the permutation")
    for l in lengths:
        if l.sign() <= 0:
            raise ValueError("lengths must be positive")
    taus = []
    for i in range(1, N + 1):
        before_image = [lengths[j - 1] for j in range(1, N + 1) if perm(j) < perm(i)]
        before_domain = [lengths[j - 1] for j in range(1, i)]
        t = lengths[0].field.zero
        for x in before_image:
            t = t + x
        for x in before_domain:
            t = t - x
        taus.append(t)
    return tuple(taus)


class IET:
    """Exchange of N field-element intervals on [0, total)."""

    __slots__ = ("perm", "lengths", "translations", "total", "field")

    def __init__(self, perm: Permutation, lengths):
        self.perm = perm
        self.lengths = tuple(lengths)
        self.field = self.lengths[0].field
        self.translations = translations_from(perm, self.lengths)
        tot = self.field.zero
        for l in self.lengths:
            tot = tot + l
        self.total = tot

    @property
    def N(self) -> int:
        return self.perm.N

    def atoms(self):
        """[left_i, right_i) endpoints of the domain partition."""
        out = []
        left = self.field.zero
        for l in self.lengths:
            out.append((left, left + l))
            left = left + l
        return out

    def _coerce(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            return x
        return self.field.from_rational(Fraction(x))

    def atom_of(self, x) -> int:
        """1-based index of the atom containing x; raises if out of range."""
        x = self._coerce(x)
        if x.sign() < 0 or (x - self.total).sign() >= 0:
            raise ValueError("point outside the domain")
        left = self.field.zero
        for i, l in enumerate(self.lengths, start=1):
            right = left + l
            if (x - right).sign() < 0:
                return i
            left = right
        raise AssertionError("tiling violated")

    def apply(self, x) -> FieldElement:
        x = self._coerce(x)
        return x + self.translations[self.atom_of(x) - 1]

    __call__ = apply

    def orbit(self, x, k: int):
        """(coding word of length k, E^k x)."""
        x = self._coerce(x)
        word = []
        for _ in range(k):
            i = self.atom_of(x)
            word.append(i)
            x = x + self.translations[i - 1]
        return tuple(word), x

    def inverse(self) -> "IET":
        """The inverse exchange: image intervals in order, with the
        inverse rearrangement."""
        N = self.N
        order = sorted(range(1, N + 1), key=self.perm)  # atoms by image position
        inv_lengths = [self.lengths[i - 1] for i in order]
        # position of image-atom j in the inverse image = original slot of j
        inv_images = []
        for j in order:
            inv_images.append(j)
        inv_perm = Permutation(inv_images)
        return IET(inv_perm, inv_lengths)

    def to_data(self) -> dict:
        th = self.field.generator
        return {
            "permutation": list(self.perm.images),
            "minpoly": list(th.poly.coeffs),
            "interval": [str(th.lo), str(th.hi)],
            "lengths": [[str(c) for c in l.power_coords] for l in self.lengths],
        }

    @classmethod
    def from_data(cls, data: dict) -> "IET":
        from .algebraic import root_in
        from .polynomials import IntPoly

        lo, hi = (Fraction(s) for s in data["interval"])
        gen = root_in(IntPoly(data["minpoly"]), lo, hi)
        K = NumberField(gen)
        lengths = [
            K.from_power_coords([Fraction(c) for c in row]) for row in data["lengths"]
        ]
        return cls(Permutation(data["permutation"]), lengths)

    def __eq__(self, other):
        return (
            isinstance(other, IET)
            and self.perm == other.perm
            and self.lengths == other.lengths
        )

    def __hash__(self):
        return hash((self.perm.images, self.lengths))

    def __repr__(self):
        return f"IET(perm={self.perm.images}, N={self.N})"


def iet_from_translations(lengths, translations) -> IET:
    """Recover the IET whose atom i is translated by translations[i].

    The permutation is read off from the order of the image intervals;
    overlapping or gapped images are rejected.
    """
    lengths = tuple(lengths)
    translations = tuple(translations)
    if len(lengths) != len(translations):
        raise ValueError("lengths and translations must pair up")
    field = lengths[0].field
    for l in lengths:
        if l.sign() <= 0:
            raise ValueError("lengths must be positive")
    lefts = []
    left = field.zero
    for l in lengths:
        lefts.append(left)
        left = left + l
    total = left
    image_lefts = [lefts[i] + translations[i] for i in range(len(lengths))]
    order = sorted(range(len(lengths)), key=lambda i: _SortKey(image_lefts[i]))
    # exact tiling of the image
    cursor = field.zero
    for i in order:
        if image_lefts[i] != cursor:
            raise ValueError("translated intervals do not tile the domain")
        cursor = cursor + lengths[i]
    if cursor != total:
        raise ValueError("translated intervals do not tile the domain")
    images = [0] * len(lengths)
    for pos, i in enumerate(order, start=1):
        images[i] = pos
    E = IET(Permutation(images), lengths)
    if E.translations != translations:
        raise ValueError("translation data inconsistent with recovered permutation")
    return E


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v


def staircase_discrepancy(E: IET, x, k: int):
    """Cumulative symbol counts s and their deviation D = s - k*lengths."""
    word, _ = E.orbit(x, k)
    s = [0] * E.N
    for sym in word:
        s[sym - 1] += 1
    D = [E.field.from_rational(Fraction(s[i])) - k * E.lengths[i] for i in range(E.N)]
    return s, D


class InducedMap:
    """First-return data of an IET on a subinterval window."""

    __slots__ = ("base", "window", "induced", "return_words")

    def __init__(self, base, window, induced, return_words):
        self.base = base
        self.window = window
        self.induced = induced
        self.return_words = return_words

    @property
    def return_times(self):
        return tuple(len(w) for w in self.return_words)


def induce(E: IET, window=None, *, length=None, anchor: str = "left", cap: int = 10**6) -> InducedMap:
    """First-return map of E on a window, with itineraries.

    The window is either given as an exact pair (a, b) or as a length
    anchored at the left or right end of the domain.  Pieces of the
    window are pushed forward until they re-enter it, splitting at atom
    and window boundaries, so every returned piece carries a single
    itinerary word.
    """
    field = E.field
    if window is None:
        if length is None:
            raise ValueError("need a window or a length")
        length = length if isinstance(length, FieldElement) else field.from_rational(Fraction(length))
        if anchor == "left":
            window = (field.zero, length)
        elif anchor == "right":
            window = (E.total - length, E.total)
        else:
            raise ValueError("anchor must be 'left' or 'right'")
    a, b = window
    a = a if isinstance(a, FieldElement) else field.from_rational(Fraction(a))
    b = b if isinstance(b, FieldElement) else field.from_rational(Fraction(b))
    if a.sign() < 0 or (b - E.total).sign() > 0 or (b - a).sign() <= 0:
        raise ValueError("window must be a nonempty subinterval of the domain")

    atom_bounds = [r for (_, r) in E.atoms()]  # right endpoints; 0 is implicit
    done = []  # (lo, hi, shift, word) in window coordinates
    stack = [(a, b, field.zero, ())]
    while stack:
        lo, hi, shift, word = stack.pop()
        if len(word) > cap:
            raise RuntimeError("return-time cap exceeded during induction")
        cur_lo = lo + shift
        cur_hi = hi + shift
        if word and (cur_lo - a).sign() >= 0 and (cur_hi - b).sign() <= 0:
            done.append((lo, hi, shift, word))
            continue
        # split at window boundaries when part of the piece has returned
        if word:
            for c in (a, b):
                if (c - cur_lo).sign() > 0 and (cur_hi - c).sign() > 0:
                    cut = c - shift
                    stack.append((lo, cut, shift, word))
                    stack.append((cut, hi, shift, word))
                    break
            else:
                _advance(E, atom_bounds, stack, lo, hi, shift, word)
            continue
        _advance(E, atom_bounds, stack, lo, hi, shift, word)

    done.sort(key=lambda p: _SortKey(p[0]))
    cursor = a
    for lo, hi, _, _ in done:
        if lo != cursor:
            raise RuntimeError("induced pieces do not tile the window")
        cursor = hi
    if cursor != b:
        raise RuntimeError("induced pieces do not tile the window")
    lengths = [hi - lo for lo, hi, _, _ in done]
    shifts = [shift for _, _, shift, _ in done]
    induced = iet_from_translations(lengths, shifts)
    words = tuple(word for _, _, _, word in done)
    return InducedMap(E, (a, b), induced, words)


def _advance(E, atom_bounds, stack, lo, hi, shift, word):
    """Apply one step of E to the piece, splitting at atom boundaries."""
    cur_lo = lo + shift
    cur_hi = hi + shift
    for r in atom_bounds[:-1]:
        if (r - cur_lo).sign() > 0 and (cur_hi - r).sign() > 0:
            cut = r - shift
            stack.append((lo, cut, shift, word))
            stack.append((cut, hi, shift, word))
            return
    i = E.atom_of(cur_lo)
    stack.append((lo, hi, shift + E.translations[i - 1], word + (i,)))


def check_self_similar(E: IET, rho, anchor: str = "left", cap: int = 10**6):
    """Does inducing on a window of length rho*total reproduce E scaled?

    Returns (flag, substitution); the substitution collects the return
    words and is only meaningful when the flag is true.  On success the
    scale-conjugacy E^{|sigma(i)|}(rho*x + a) = rho*E(x) + a is verified
    on an interior sample point of every atom.
    """
    from .substitution import Substitution

    field = E.field
    rho = rho if isinstance(rho, FieldElement) else field.from_rational(Fraction(rho))
    ell = rho * E.total
    im = induce(E, length=ell, anchor=anchor, cap=cap)
    ind = im.induced
    if ind.N != E.N or ind.perm != E.perm:
        return False, None
    for li, l in zip(ind.lengths, E.lengths):
        if li != rho * l:
            return False, None
    offset = im.window[0]
    for i in range(1, E.N + 1):
        left = sum((E.lengths[j] for j in range(i - 1)), start=field.zero)
        x = left + E.lengths[i - 1] / 2
        y = rho * x + offset
        word = im.return_words[i - 1]
        z = y
        for _ in word:
            z = E.apply(z)
        if z != rho * E.apply(x) + offset:
            return False, None
    sigma = Substitution({i + 1: im.return_words[i] for i in range(E.N)})
    return True, sigma
