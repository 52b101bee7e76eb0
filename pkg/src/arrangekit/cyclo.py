r"""Exact arithmetic in Q(zeta_4) and Q(zeta_6).

Elements are a + b*zeta in the basis {1, zeta} with Fraction parts, where
zeta_4 = i and zeta_6 = (1 + sqrt(-3))/2.  The two rings never mix: any
binary operation on elements with different k raises RingMismatch.

Multiplication rules follow the minimal polynomials

    zeta_4^2 = -1          zeta_6^2 = zeta_6 - 1

and conjugation is conj(zeta_4) = -zeta_4, conj(zeta_6) = 1 - zeta_6.
Both rings of integers (Gaussian for k=4, Eisenstein for k=6) are
norm-Euclidean with respect to rounding in the {1, zeta} basis, which is
what the gcd helpers rely on.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import RingMismatch

RINGS = (4, 6)

_RATIONAL = (int, Fraction)


class CycRat:
    """Immutable element a + b*zeta_k of Q(zeta_k), k in {4, 6}."""

    __slots__ = ("a", "b", "k")

    def __init__(self, a, b=0, k=4):
        if k not in RINGS:
            raise ValueError("ring must be 4 or 6, got %r" % (k,))
        if isinstance(a, float) or isinstance(b, float):
            raise TypeError("CycRat parts must be exact rationals, not floats")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("CycRat is immutable")

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycRat):
            if other.k != self.k:
                raise RingMismatch(
                    "cannot combine zeta_%d and zeta_%d values" % (self.k, other.k)
                )
            return other
        if isinstance(other, _RATIONAL):
            return CycRat(other, 0, self.k)
        return None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycRat(self.a + o.a, self.b + o.b, self.k)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycRat(self.a - o.a, self.b - o.b, self.k)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycRat(o.a - self.a, o.b - self.b, self.k)

    def __neg__(self):
        return CycRat(-self.a, -self.b, self.k)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        if self.k == 4:
            return CycRat(a * c - b * d, a * d + b * c, 4)
        return CycRat(a * c - b * d, a * d + b * c + b * d, 6)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.k)
        c = self.conjugate()
        return CycRat(c.a / n, c.b / n, self.k)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CycRat(1, 0, self.k)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- involution and rational invariants --------------------------------

    def conjugate(self):
        if self.k == 4:
            return CycRat(self.a, -self.b, 4)
        return CycRat(self.a + self.b, -self.b, 6)

    def norm(self) -> Fraction:
        """x * conj(x), a nonnegative rational; zero iff x = 0."""
        a, b = self.a, self.b
        if self.k == 4:
            return a * a + b * b
        return a * a + a * b + b * b

    def trace(self) -> Fraction:
        if self.k == 4:
            return 2 * self.a
        return 2 * self.a + self.b

    def real_part(self) -> Fraction:
        return self.trace() / 2

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("%s is not rational" % (self,))
        return self.a

    # -- comparisons --------------------------------------------------------

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, CycRat):
            if self.k != other.k:
                # rational values are shared between the two fields
                return self.b == 0 == other.b and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, _RATIONAL):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.k))

    def __repr__(self):
        return "CycRat(%s, %s, k=%d)" % (self.a, self.b, self.k)

    def __str__(self):
        return format_cycrat(self)


def zeta(k: int) -> CycRat:
    return CycRat(0, 1, k)


def cyc(a, b=0, k=4) -> CycRat:
    return CycRat(a, b, k)


def units(k: int):
    """The roots of unity of O_k, in power order 1, zeta, zeta^2, ..."""
    out = []
    u = CycRat(1, 0, k)
    z = zeta(k)
    for _ in range(k):
        out.append(u)
        u = u * z
    return tuple(out)


# ---------------------------------------------------------------------------
# numeric embedding


_SQRT3_BITS = 96
_SQRT3 = Fraction(isqrt(3 << (2 * _SQRT3_BITS)), 1 << _SQRT3_BITS)


def to_complex(x: CycRat, precision_bits: int = 53):
    """Round-to-nearest embedding (zeta_4 -> i, zeta_6 -> (1+sqrt(-3))/2).

    Returns (value, error_bound) with |value - exact| <= error_bound.
    Values are IEEE doubles, so the effective precision is capped at 53
    bits; asking for more only tightens intermediate rounding.  The bound
    2^(1-53)*|value| is met because both real and imaginary parts are
    correctly rounded rationals (the sqrt(3)/2 factor for k=6 carries at
    least 96 extra bits).
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be at least 53")
    if x.k == 4:
        re = float(x.a)
        im = float(x.b)
    else:
        re = float(x.a + Fraction(x.b, 2))
        im = float(x.b * _SQRT3 / 2)
    value = complex(re, im)
    bound = 2.0 ** (1 - 53) * abs(value)
    return value, bound


def embed(x: CycRat) -> complex:
    return to_complex(x)[0]


# ---------------------------------------------------------------------------
# text and JSON forms


def format_cycrat(x: CycRat) -> str:
    if not x.b:
        return str(x.a)
    zpart = "z" if abs(x.b) == 1 else "%s*z" % abs(x.b)
    if not x.a:
        return zpart if x.b > 0 else "-" + zpart
    sign = "+" if x.b > 0 else "-"
    return "%s %s %s" % (x.a, sign, zpart)


def parse_cycrat(text: str, k: int) -> CycRat:
    """Parse 'p/q + r/s*z' (and natural degenerate forms) into a CycRat."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    # split into a rational part and a *z part
    a = Fraction(0)
    b = Fraction(0)
    # find the term containing z, if any
    if "z" in s:
        idx = s.index("z")
        # walk back over an optional '*'-joined coefficient and sign
        start = idx
        while start > 0 and (s[start - 1].isdigit() or s[start - 1] in "*/"):
            start -= 1
        coef = s[start:idx]
        if coef.endswith("*"):
            coef = coef[:-1]
        sign = 1
        if start > 0 and s[start - 1] in "+-":
            sign = -1 if s[start - 1] == "-" else 1
            start -= 1
        b = (Fraction(coef) if coef else Fraction(1)) * sign
        s = s[:start] + s[idx + 1 :]
        if s in ("+", "-"):
            raise ValueError("dangling sign in %r" % text)
    if s:
        a = Fraction(s)
    return CycRat(a, b, k)


def cyc_to_json(x: CycRat) -> dict:
    return {"a": str(x.a), "b": str(x.b)}


def cyc_from_json(obj, k: int) -> CycRat:
    if isinstance(obj, dict):
        return CycRat(Fraction(str(obj["a"])), Fraction(str(obj.get("b", 0))), k)
    if isinstance(obj, str):
        return parse_cycrat(obj, k)
    if isinstance(obj, int):
        return CycRat(obj, 0, k)
    raise ValueError("cannot read cyclotomic value from %r" % (obj,))


# ---------------------------------------------------------------------------
# integral (O_k) helpers: Euclidean gcd, primitivity, unit normalization


def _round_half(f: Fraction) -> int:
    # floor(f + 1/2); deterministic for ties
    return (2 * f.numerator + f.denominator) // (2 * f.denominator)


def nearest_integral(x: CycRat) -> CycRat:
    return CycRat(_round_half(x.a), _round_half(x.b), x.k)


def euclid_gcd(x: CycRat, y: CycRat) -> CycRat:
    """gcd in O_k via Euclidean division; defined up to a unit."""
    if not (x.is_integral() and y.is_integral()):
        raise ValueError("gcd requires integral elements")
    while y:
        q = nearest_integral(x / y)
        x, y = y, x - q * y
    return x

def vector_content(vec) -> CycRat:
    """gcd of all coordinates; zero for the zero vector."""
    g = None
    for c in vec:
        g = c if g is None else euclid_gcd(g, c)
    if g is None:
        raise ValueError("empty vector")
    return g


def is_unit(x: CycRat) -> bool:
    return x.is_integral() and x.norm() == 1


def scalar_key(x):
    """Sort key usable for both Fraction and CycRat entries."""
    if isinstance(x, CycRat):
        return (x.a, x.b)
    return (Fraction(x), Fraction(0))


def vector_key(vec):
    return tuple(scalar_key(c) for c in vec)


def unit_canonical(vec):
    """The lexicographically smallest unit multiple of an O_k vector."""
    k = vec[0].k
    best = None
    for u in units(k):
        cand = tuple(u * c for c in vec)
        key = vector_key(cand)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]
