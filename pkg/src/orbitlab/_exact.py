"""Exact scaled-rational scalars for the construction builders.

The bilateral construction's scalar choices decay doubly exponentially
(log2 magnitude roughly doubles per stage), far beyond float64 range, and the
certified residual bounds must be checked exactly. An X2 value is
num/den * 2^exp with the power-of-two part held in a machine-int exponent, so
the huge exponents never materialize as big integers during arithmetic;
mantissas stay small because every input is a float (hence dyadic) or a small
rational. Full gcd reduction is skipped on purpose (only 2-adic factors are
extracted): mantissa growth is bounded by the stage count and gcds on
multi-kilobit integers are the expensive part of Fraction arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _two_val(n: int) -> int:
    return (n & -n).bit_length() - 1


class X2:
    """Exact num/den * 2^exp with den > 0 and both mantissas odd."""

    __slots__ = ("num", "den", "exp")

    def __init__(self, num: int, den: int = 1, exp: int = 0):
        if den == 0:
            raise ZeroDivisionError("X2 denominator is zero")
        if den < 0:
            num, den = -num, -den
        if num == 0:
            self.num, self.den, self.exp = 0, 1, 0
            return
        vn = _two_val(num)
        vd = _two_val(den)
        self.num = num >> vn
        self.den = den >> vd
        self.exp = exp + vn - vd

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_int(cls, k: int) -> "X2":
        return cls(k)

    @classmethod
    def from_float(cls, x: float) -> "X2":
        fr = Fraction(x)
        return cls(fr.numerator, fr.denominator)

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "X2":
        return cls(fr.numerator, fr.denominator)

    @classmethod
    def pow2(cls, e: int) -> "X2":
        return cls(1, 1, e)

    ZERO: "X2"
    ONE: "X2"

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, other: "X2") -> "X2":
        return X2(self.num * other.num, self.den * other.den, self.exp + other.exp)

    def __truediv__(self, other: "X2") -> "X2":
        if other.num == 0:
            raise ZeroDivisionError("X2 division by zero")
        return X2(self.num * other.den, self.den * other.num, self.exp - other.exp)

    def __add__(self, other: "X2") -> "X2":
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        e0 = min(self.exp, other.exp)
        a = self.num * other.den << (self.exp - e0)
        b = other.num * self.den << (other.exp - e0)
        return X2(a + b, self.den * other.den, e0)

    def __sub__(self, other: "X2") -> "X2":
        return self + (-other)

    def __neg__(self) -> "X2":
        out = X2.__new__(X2)
        out.num, out.den, out.exp = -self.num, self.den, self.exp
        return out

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    # -- comparison -------------------------------------------------------

    def _cmp(self, other: "X2") -> int:
        sa, sb = self.sign(), other.sign()
        if sa != sb:
            return -1 if sa < sb else 1
        if sa == 0:
            return 0
        # magnitude bounds: log2 |num/den * 2^e| lies in (lo, hi)
        a_lo = self.exp + self.num.bit_length() - self.den.bit_length() - 1
        a_hi = a_lo + 2
        b_lo = other.exp + other.num.bit_length() - other.den.bit_length() - 1
        b_hi = b_lo + 2
        if a_lo >= b_hi:
            return sa
        if a_hi <= b_lo:
            return -sa
        e0 = min(self.exp, other.exp)
        lhs = self.num * other.den << (self.exp - e0)
        rhs = other.num * self.den << (other.exp - e0)
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        return isinstance(other, X2) and self._cmp(other) == 0

    def __hash__(self):
        return hash(self.to_fraction())

    # -- conversions ------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.num << self.exp, self.den)
        return Fraction(self.num, self.den << (-self.exp))

    def round_up_bits(self, bits: int = 64) -> "X2":
        """Smallest X2 >= self (nonnegative self) whose mantissa fits in ~bits
        bits: a compact certified upper bound for reporting."""
        if self.num < 0:
            raise ValueError("round_up_bits expects a nonnegative value")
        if self.num == 0:
            return self
        t = self.num.bit_length() - self.den.bit_length() - bits
        if self.den == 1 and t <= 0:
            return self
        if t >= 0:
            m = -((-self.num) // (self.den << t))
        else:
            m = -((-self.num << (-t)) // self.den)
        return X2(m, 1, self.exp + t)

    def log2(self) -> float:
        """Approximate log2 of the magnitude (-inf for zero); error < 1e-12."""
        if self.num == 0:
            return -math.inf
        n = abs(self.num)
        a, b = n.bit_length(), self.den.bit_length()
        sn = max(0, a - 53)
        sd = max(0, b - 53)
        return self.exp + sn - sd + math.log2((n >> sn) / (self.den >> sd))

    def __float__(self) -> float:
        if self.num == 0:
            return 0.0
        lg = self.log2()
        if lg > 1026:
            return math.inf if self.num > 0 else -math.inf
        if lg < -1080:
            return 0.0 if self.num > 0 else -0.0
        # scale to a ~63-bit integer, then ldexp back
        t = math.floor(lg) - 62
        p = self.exp - t
        if p >= 0:
            q = (abs(self.num) << p) // self.den
        else:
            q = abs(self.num) // (self.den << (-p))
        val = math.ldexp(float(q), t)
        return val if self.num > 0 else -val

    def __repr__(self):
        return f"X2({self.num}/{self.den} * 2^{self.exp})"


X2.ZERO = X2(0)
X2.ONE = X2(1)


class XC:
    """Exact complex number with X2 components."""

    __slots__ = ("re", "im")

    def __init__(self, re: X2, im: X2):
        self.re = re
        self.im = im

    @classmethod
    def from_complex(cls, z: complex) -> "XC":
        return cls(X2.from_float(z.real), X2.from_float(z.imag))

    @classmethod
    def from_fractions(cls, pair) -> "XC":
        re, im = pair
        return cls(X2.from_fraction(re), X2.from_fraction(im))

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def __add__(self, other: "XC") -> "XC":
        return XC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "XC") -> "XC":
        return XC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "XC") -> "XC":
        return XC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "XC") -> "XC":
        d = other.mod_sq()
        if d.is_zero:
            raise ZeroDivisionError("XC division by zero")
        re = (self.re * other.re + self.im * other.im) / d
        im = (self.im * other.re - self.re * other.im) / d
        return XC(re, im)

    def scale(self, s: X2) -> "XC":
        return XC(self.re * s, self.im * s)

    def mod_sq(self) -> X2:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_fraction_pair(self):
        return (self.re.to_fraction(), self.im.to_fraction())

    def __repr__(self):
        return f"XC({self.re!r}, {self.im!r})"


XC_ZERO = XC(X2.ZERO, X2.ZERO)
XC_ONE = XC(X2.ONE, X2.ZERO)


# ---------------------------------------------------------------------------
# exact sparse vectors (index -> XC)


def xvec_from_seq(v) -> dict[int, XC]:
    return {i: XC.from_complex(c) for i, c in v.entries}


def xvec_norm_sq(x: dict[int, XC]) -> X2:
    out = X2.ZERO
    for i in sorted(x):
        out = out + x[i].mod_sq()
    return out


def xvec_scale(x: dict[int, XC], s: XC) -> dict[int, XC]:
    return {i: c * s for i, c in x.items()}


def xvec_add_into(acc: dict[int, XC], x: dict[int, XC]) -> None:
    for i, c in x.items():
        acc[i] = acc[i] + c if i in acc else c


def xvec_sub(a: dict[int, XC], b: dict[int, XC]) -> dict[int, XC]:
    out = dict(a)
    for i, c in b.items():
        out[i] = out[i] - c if i in out else XC(X2.ZERO, X2.ZERO) - c
    return {i: c for i, c in out.items() if not c.is_zero}
