"""
Exact Arithmetic
Rationals, p-adic valuations, capped-precision p-adic numbers,
Legendre symbols and Hensel square roots.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import isprime, legendre_symbol, multiplicity
from sympy.ntheory import sqrt_mod

logger = logging.getLogger("ExactArith")

Rational = Fraction
INFINITY = math.inf


# ==================================================================
# ERRORS
# ==================================================================
class LabError(Exception):
    """Root of every mathematical precondition failure raised by the lab."""
    reason = "LabError"

    def __init__(self, detail=""):
        super().__init__(detail or self.reason)
        self.detail = detail


class PrecisionExhausted(LabError):
    reason = "PrecisionExhausted"


class DivisionByZeroToPrecision(PrecisionExhausted):
    reason = "DivisionByZeroToPrecision"


class InsufficientPrecision(LabError):
    reason = "InsufficientPrecision"


class NotASquare(LabError):
    reason = "NotASquare"


# ==================================================================
# RATIONALS
# ==================================================================
def to_fraction(x):
    """Coerce int, str ("a/b"), Fraction or a sympy Rational to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValueError(f"Not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if not text:
            raise ValueError("Empty rational")
        return Fraction(text)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise ValueError(f"Not a rational: {x!r}")


def parse_rational(text):
    return to_fraction(text)


def parse_matrix(text):
    """Parse "a,b;c,d" into an exact sympy 2x2 matrix."""
    rows = [r for r in text.split(";")]
    if len(rows) != 2:
        raise ValueError(f"Matrix needs two rows: {text!r}")
    entries = [[to_fraction(e) for e in r.split(",")] for r in rows]
    if any(len(r) != 2 for r in entries):
        raise ValueError(f"Matrix needs two columns: {text!r}")
    return sympy.Matrix([[sympy.Rational(e.numerator, e.denominator) for e in r] for r in entries])


def is_rational_square(q):
    q = to_fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _check_prime(p, odd=True):
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{p!r} is not a prime")
    if odd and p == 2:
        raise ValueError("p-adic numbers are only supported for odd primes")


def vp(q, p):
    """Exact exponent of p in q; +infinity for q = 0."""
    _check_prime(p, odd=False)
    q = to_fraction(q)
    if q == 0:
        return INFINITY
    return int(multiplicity(p, abs(q.numerator))) - int(multiplicity(p, q.denominator))


def unit_part(q, p):
    """q / p^vp(q) as a Fraction prime to p."""
    q = to_fraction(q)
    return q / Fraction(p) ** vp(q, p)


def unit_residue(q, p, k=1):
    """The p-adic unit part of q reduced mod p^k."""
    u = unit_part(q, p)
    m = p ** k
    return (u.numerator * pow(u.denominator, -1, m)) % m


# ==================================================================
# P-ADIC NUMBERS
# ==================================================================
@dataclass(frozen=True, eq=False)
class Padic:
    """
    p^val * unit known modulo p^(val + prec).
    The zero marker has unit = 0, prec = 0 and val = the absolute precision.
    There is no __eq__: compare with eq_mod / agrees.
    """
    p: int
    val: int
    unit: int
    prec: int

    @classmethod
    def zero(cls, p, absprec):
        return cls(p, absprec, 0, 0)

    @classmethod
    def _from_scaled(cls, p, n, shift, absprec):
        """The value n * p^shift, known modulo p^absprec."""
        digits = absprec - shift
        if digits <= 0:
            return cls.zero(p, absprec)
        n %= p ** digits
        if n == 0:
            return cls.zero(p, absprec)
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return cls(p, shift + v, n, digits - v)

    @property
    def is_zero(self):
        return self.unit == 0

    @property
    def absprec(self):
        return self.val + self.prec

    def valuation(self):
        if self.is_zero:
            raise PrecisionExhausted(f"valuation of a value that is 0 mod {self.p}^{self.val}")
        return self.val

    def leading_digit(self):
        if self.is_zero:
            raise PrecisionExhausted("no leading digit: value is zero to precision")
        return self.unit % self.p

    def digits(self):
        out, u = [], self.unit
        for _ in range(self.prec):
            out.append(u % self.p)
            u //= self.p
        return out

    def to_rational(self):
        """The rational whose base-p expansion is exactly the known digits."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def with_absprec(self, absprec):
        """Truncate to a lower absolute precision."""
        if absprec >= self.absprec:
            return self
        return Padic._from_scaled(self.p, self.unit, self.val, absprec)

    # --- arithmetic ---
    def _coerce(self, other):
        if isinstance(other, Padic):
            if other.p != self.p:
                raise ValueError(f"Mixing primes {self.p} and {other.p}")
            return other
        q = to_fraction(other)
        if q == 0:
            return Padic.zero(self.p, abs(self.val) + abs(self.absprec) + self.prec + 1)
        v = vp(q, self.p)
        need = max(self.absprec - v, self.prec, 1) + 1
        return embed(q, self.p, need)

    def __add__(self, other):
        y = self._coerce(other)
        absprec = min(self.absprec, y.absprec)
        if self.is_zero:
            return y.with_absprec(absprec)
        if y.is_zero:
            return self.with_absprec(absprec)
        m = min(self.val, y.val)
        p = self.p
        n = self.unit * p ** (self.val - m) + y.unit * p ** (y.val - m)
        return Padic._from_scaled(p, n, m, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return Padic(self.p, self.val, (-self.unit) % self.p ** self.prec, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        y = self._coerce(other)
        absprec = min(self.val + y.absprec, y.val + self.absprec)
        if self.is_zero or y.is_zero:
            return Padic.zero(self.p, absprec)
        prec = min(self.prec, y.prec)
        return Padic(self.p, self.val + y.val, (self.unit * y.unit) % self.p ** prec, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise DivisionByZeroToPrecision(f"inverting a value that is 0 mod {self.p}^{self.val}")
        m = self.p ** self.prec
        return Padic(self.p, -self.val, pow(self.unit, -1, m), self.prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __repr__(self):
        return f"Padic({self})"

    def __str__(self):
        if self.is_zero:
            return f"0 (mod {self.p}^{self.val})"
        body = " ".join(str(d) for d in reversed(self.digits()))
        return f"…{body} × {self.p}^{self.val} (mod {self.p}^{self.absprec})"


# Named forms of the field operations
def add(x, y):
    return x + y


def sub(x, y):
    return x - y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def inv(x):
    return x.inverse()


def embed(q, p, N):
    """Embed a rational in Q_p with N significant digits."""
    _check_prime(p)
    if N < 1:
        raise ValueError("precision must be at least 1")
    q = to_fraction(q)
    if q == 0:
        return Padic.zero(p, N)
    v = vp(q, p)
    return Padic(p, v, unit_residue(q, p, N), N)


def eq_mod(x, y, k):
    """True iff x - y = 0 mod p^k; raises when the known digits cannot decide."""
    d = x - y
    if not d.is_zero:
        return d.val >= k
    if d.val >= k:
        return True
    raise InsufficientPrecision(f"difference known only mod {d.p}^{d.val}, asked mod {d.p}^{k}")


def agrees(x, y):
    """Equality to the full shared precision."""
    if isinstance(y, Padic):
        k = min(x.absprec, y.absprec)
    else:
        k = x.absprec
    return eq_mod(x, y, k)


# ==================================================================
# SQUARES
# ==================================================================
def legendre(a, p):
    _check_prime(p)
    return int(legendre_symbol(a % p, p))


def is_square_qp(q, p):
    q = to_fraction(q)
    if q == 0:
        raise ValueError("is_square_qp needs a nonzero rational")
    _check_prime(p)
    if vp(q, p) % 2:
        return False
    return legendre(unit_residue(q, p), p) == 1


def hensel_sqrt(a, root=None):
    """
    Square root of a p-adic square.
    `root` picks the residue class mod p of the returned unit; by default the
    root with the smallest positive leading digit is returned.
    """
    p = a.p
    if a.is_zero:
        raise NotASquare("zero to precision has no determined square root")
    if a.val % 2:
        raise NotASquare(f"odd valuation {a.val}")
    u = a.unit
    if legendre(u, p) != 1:
        raise NotASquare(f"unit {u % p} is not a square mod {p}")
    roots = sorted(int(r) for r in sqrt_mod(u % p, p, all_roots=True))
    if root is None:
        r = roots[0]
    else:
        matches = [x for x in roots if (x - root) % p == 0]
        if not matches:
            raise ValueError(f"no square root of {u % p} is = {root} mod {p}")
        r = matches[0]
    # Newton step doubles the number of correct digits
    k = 1
    while k < a.prec:
        k = min(2 * k, a.prec)
        m = p ** k
        r = (r - (r * r - u) * pow(2 * r, -1, m)) % m
    logger.debug(f"sqrt lifted to {a.prec} digits (leading digit {r % p})")
    return Padic(p, a.val // 2, r % p ** a.prec, a.prec)
