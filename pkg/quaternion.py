"""
Quaternion Arithmetic
D = (alpha, beta)_Q and D_p, the norm-1 group, the splitting map D_p -> M_2(Q_p)
and the constructive density approximations of G in G_p and T in T_p.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from config import config
from exact_arith import (
    InsufficientPrecision,
    LabError,
    Padic,
    PrecisionExhausted,
    embed,
    eq_mod,
    hensel_sqrt,
    to_fraction,
    vp,
)
from quadratic_forms import lemma1_normalize, norm_form, pure_sqrt_minus_one, require_division

logger = logging.getLogger("Quaternion")


class InadmissiblePrime(LabError):
    reason = "InadmissiblePrime"


def _product(a, b, alpha, beta):
    """Coordinates of ab in the basis 1, e2, e3, e4 (works for Fraction and Padic)."""
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return (
        a1 * b1 + alpha * a2 * b2 + beta * a3 * b3 - alpha * beta * a4 * b4,
        a1 * b2 + a2 * b1 - beta * a3 * b4 + beta * a4 * b3,
        a1 * b3 + a3 * b1 + alpha * a2 * b4 - alpha * a4 * b2,
        a1 * b4 + a4 * b1 + a2 * b3 - a3 * b2,
    )


def _norm(x, alpha, beta):
    x1, x2, x3, x4 = x
    return x1 * x1 - alpha * x2 * x2 - beta * x3 * x3 + alpha * beta * x4 * x4


# ==================================================================
# ALGEBRA
# ==================================================================
@dataclass(frozen=True)
class QuaternionAlgebra:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        object.__setattr__(self, "beta", to_fraction(self.beta))
        require_division(self.alpha, self.beta)

    def element(self, x1=0, x2=0, x3=0, x4=0):
        return Quaternion(x1, x2, x3, x4, self)

    def one(self):
        return self.element(1)

    def e2(self):
        return self.element(0, 1)

    def e3(self):
        return self.element(0, 0, 1)

    def e4(self):
        return self.element(0, 0, 0, 1)

    def norm_form(self):
        return norm_form(self.alpha, self.beta)

    def sqrt_minus_one(self, height=None):
        """A pure quaternion j with j^2 = -1 from the bounded search, or None."""
        coords = pure_sqrt_minus_one(self.alpha, self.beta, height)
        if coords is None:
            return None
        return self.element(0, *coords)

    def parse(self, text):
        return Quaternion.parse(text, self)

    def __str__(self):
        return f"({self.alpha},{self.beta})_Q"


_TERM = re.compile(r"\s*([+-])?\s*([+-]?\d+(?:/\d+)?)?\s*\*?\s*(e[234])?\s*")


@dataclass(frozen=True)
class Quaternion:
    x1: Fraction
    x2: Fraction
    x3: Fraction
    x4: Fraction
    algebra: QuaternionAlgebra

    def __post_init__(self):
        for name in ("x1", "x2", "x3", "x4"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))

    @property
    def coords(self):
        return (self.x1, self.x2, self.x3, self.x4)

    def _same(self, other):
        if other.algebra != self.algebra:
            raise ValueError(f"Quaternions from {self.algebra} and {other.algebra}")
        return other

    def _make(self, coords):
        return Quaternion(*coords, self.algebra)

    def __add__(self, other):
        o = self._same(other)
        return self._make(a + b for a, b in zip(self.coords, o.coords))

    def __sub__(self, other):
        o = self._same(other)
        return self._make(a - b for a, b in zip(self.coords, o.coords))

    def __neg__(self):
        return self._make(-a for a in self.coords)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            o = self._same(other)
            return self._make(_product(self.coords, o.coords, self.algebra.alpha, self.algebra.beta))
        s = to_fraction(other)
        return self._make(a * s for a in self.coords)

    def __rmul__(self, other):
        s = to_fraction(other)
        return self._make(s * a for a in self.coords)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        s = to_fraction(other)
        if s == 0:
            raise ZeroDivisionError("division by zero")
        return self._make(a / s for a in self.coords)

    @property
    def is_zero(self):
        return not any(self.coords)

    def conj(self):
        return self._make((self.x1, -self.x2, -self.x3, -self.x4))

    def norm(self):
        return _norm(self.coords, self.algebra.alpha, self.algebra.beta)

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("division by zero quaternion")
        return self.conj() / self.norm()

    @classmethod
    def parse(cls, text, algebra):
        """Parse "x1 + x2 e2 + x3 e3 + x4 e4" (terms in any order, missing terms are 0)."""
        coords = {"1": Fraction(0), "e2": Fraction(0), "e3": Fraction(0), "e4": Fraction(0)}
        pos, text = 0, text.strip()
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"Cannot parse quaternion {text!r} at {pos}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            coords[m.group(3) or "1"] += sign * coeff
            pos = m.end()
        return cls(coords["1"], coords["e2"], coords["e3"], coords["e4"], algebra)

    def __str__(self):
        return f"{self.x1} + {self.x2} e2 + {self.x3} e3 + {self.x4} e4"


@dataclass(frozen=True, eq=False)
class PadicQuaternion:
    x1: Padic
    x2: Padic
    x3: Padic
    x4: Padic
    algebra: QuaternionAlgebra

    def __post_init__(self):
        if len({c.p for c in self.coords}) != 1:
            raise ValueError("coordinates must share one prime")

    @property
    def p(self):
        return self.x1.p

    @property
    def coords(self):
        return (self.x1, self.x2, self.x3, self.x4)

    def __mul__(self, other):
        coords = _product(self.coords, other.coords, self.algebra.alpha, self.algebra.beta)
        return PadicQuaternion(*coords, self.algebra)

    def conj(self):
        return PadicQuaternion(self.x1, -self.x2, -self.x3, -self.x4, self.algebra)

    def norm(self):
        return _norm(self.coords, self.algebra.alpha, self.algebra.beta)

    def inverse(self):
        n = self.norm().inverse()
        c = self.conj()
        return PadicQuaternion(*(x * n for x in c.coords), self.algebra)

    def to_rational(self):
        """Round every coordinate to the rational with exactly its known digits."""
        return self.algebra.element(*(c.to_rational() for c in self.coords))

    @classmethod
    def from_rational(cls, x, p, prec):
        return cls(*(embed(c, p, prec) for c in x.coords), x.algebra)

    def __str__(self):
        return " + ".join(f"[{c}]{e}" for c, e in zip(self.coords, ("", " e2", " e3", " e4")))


def normalize_to_norm1(x):
    """x^2 / N(x): an element of exact norm 1."""
    if x.is_zero:
        raise ZeroDivisionError("cannot normalize the zero quaternion")
    return (x * x) / x.norm()


# ==================================================================
# 2x2 P-ADIC MATRICES
# ==================================================================
@dataclass(frozen=True, eq=False)
class Mat2Padic:
    a: Padic
    b: Padic
    c: Padic
    d: Padic

    @property
    def p(self):
        return self.a.p

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_rational(cls, rows, p, prec):
        """rows: a sympy Matrix or nested sequence of rationals."""
        if hasattr(rows, "tolist"):
            rows = rows.tolist()
        (a, b), (c, d) = rows
        return cls(*(embed(to_fraction(e), p, prec) for e in (a, b, c, d)))

    @classmethod
    def identity(cls, p, prec):
        return cls.from_rational([[1, 0], [0, 1]], p, prec)

    @classmethod
    def diag(cls, x, y):
        zero = Padic.zero(x.p, max(x.absprec, y.absprec))
        return cls(x, zero, zero, y)

    def __matmul__(self, o):
        return Mat2Padic(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    __mul__ = __matmul__

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inverse(self):
        inv_det = self.det().inverse()
        return Mat2Padic(self.d * inv_det, -self.b * inv_det, -self.c * inv_det, self.a * inv_det)

    def min_absprec(self):
        return min(e.absprec for e in self.entries)

    def congruent(self, other, k):
        """Entrywise difference of valuation >= k."""
        return all(eq_mod(x, y, k) for x, y in zip(self.entries, other.entries))

    def agrees(self, other):
        k = min(self.min_absprec(), other.min_absprec())
        return self.congruent(other, k)

    def to_rational_rows(self):
        return [[self.a.to_rational(), self.b.to_rational()], [self.c.to_rational(), self.d.to_rational()]]

    def __str__(self):
        rows = self.to_rational_rows()
        return "; ".join(", ".join(str(e) for e in r) for r in rows) + f" (mod {self.p}^{self.min_absprec()})"


def upper(t, p, prec):
    t = t if isinstance(t, Padic) else embed(t, p, prec)
    one = embed(1, p, prec)
    return Mat2Padic(one, t, Padic.zero(p, prec), one)


def lower(t, p, prec):
    t = t if isinstance(t, Padic) else embed(t, p, prec)
    one = embed(1, p, prec)
    return Mat2Padic(one, Padic.zero(p, prec), t, one)


# ==================================================================
# SPLITTING MAP
# ==================================================================
@dataclass(frozen=True, eq=False)
class SplitContext:
    """
    A fixed isomorphism D_p -> M_2(Q_p). When alpha is not a square in Q_p the
    basis e2' = lam e2 + mu e4, e4' = e2' e3 with alpha' = e2'^2 is used.
    """
    algebra: QuaternionAlgebra
    p: int
    prec: int
    alpha_split: Fraction
    lam: Fraction
    mu: Fraction
    sqrt_alpha: Padic

    @classmethod
    def build(cls, algebra, p, prec=None):
        prec = prec or config.DEFAULT_PRECISION
        if not isinstance(p, int) or p == 2 or not isprime(p):
            raise InadmissiblePrime(f"{p} is not an odd prime")
        if vp(algebra.alpha, p) != 0 or vp(algebra.beta, p) != 0:
            raise InadmissiblePrime(f"alpha, beta are not both {p}-adic units")
        alpha_split, lam, mu = lemma1_normalize(algebra.alpha, algebra.beta, p)
        root = hensel_sqrt(embed(alpha_split, p, prec))
        return cls(algebra, p, prec, alpha_split, lam, mu, root)

    def with_precision(self, prec):
        if prec == self.prec:
            return self
        root = hensel_sqrt(embed(self.alpha_split, self.p, prec), root=self.sqrt_alpha.leading_digit())
        return SplitContext(self.algebra, self.p, prec, self.alpha_split, self.lam, self.mu, root)

    @property
    def beta(self):
        return self.algebra.beta

    @property
    def normalized(self):
        return (self.lam, self.mu) != (1, 0)

    def to_split_basis(self, coords):
        x1, x2, x3, x4 = coords
        lam, mu, beta = self.lam, self.mu, self.beta
        det = lam * lam - mu * mu * beta
        return (x1, (lam * x2 - mu * beta * x4) / det, x3, (lam * x4 - mu * x2) / det)

    def from_split_basis(self, coords):
        y1, y2, y3, y4 = coords
        return (y1, self.lam * y2 + self.mu * self.beta * y4, y3, self.mu * y2 + self.lam * y4)

    def describe(self):
        return {
            "p": self.p,
            "precision": self.prec,
            "alpha_split": str(self.alpha_split),
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "sqrt_alpha_leading_digit": self.sqrt_alpha.leading_digit(),
        }


def split(x, ctx):
    """The image [[y1 + y2 s, beta(y3 + y4 s)], [y3 - y4 s, y1 - y2 s]], s = sqrt(alpha')."""
    if isinstance(x, Quaternion):
        y = [embed(c, ctx.p, ctx.prec) for c in ctx.to_split_basis(x.coords)]
    else:
        y = ctx.to_split_basis(x.coords)
    y1, y2, y3, y4 = y
    s = ctx.sqrt_alpha
    m = Mat2Padic(y1 + y2 * s, (y3 + y4 * s) * ctx.beta, y3 - y4 * s, y1 - y2 * s)
    if any(e.is_zero and e.absprec <= 0 for e in m.entries):
        raise PrecisionExhausted("split entry carries no known digit")
    return m


def unsplit(m, ctx):
    half = Fraction(1, 2)
    s_inv = ctx.sqrt_alpha.inverse()
    b_beta = m.b / ctx.beta
    y = (
        (m.a + m.d) * half,
        (m.a - m.d) * half * s_inv,
        (b_beta + m.c) * half,
        (b_beta - m.c) * half * s_inv,
    )
    return PadicQuaternion(*ctx.from_split_basis(y), ctx.algebra)


# ==================================================================
# DENSITY APPROXIMATIONS
# ==================================================================
def _direct_factors(h):
    """h = U((a-1)/c) L(c) U((d-1)/c) when c is nonzero to precision."""
    if h.c.is_zero:
        return None
    return [("U", (h.a - 1) / h.c), ("L", h.c), ("U", (h.d - 1) / h.c)]


def _spread(factors):
    return max((abs(t.val) for _, t in factors if not t.is_zero), default=0)


def elementary_factors(h):
    """At most four strictly triangular factors whose product is h (det h = 1)."""
    prec = max(e.prec for e in h.entries if not e.is_zero)
    candidates = []
    direct = _direct_factors(h)
    if direct:
        candidates.append(direct)
    for s in (1, -1):
        inner = _direct_factors(lower(s, h.p, prec) @ h)
        if inner:
            candidates.append([("L", embed(-s, h.p, prec))] + inner)
    if not candidates:
        raise InsufficientPrecision("no elementary decomposition is decidable at this precision")
    return min(candidates, key=_spread)


def _elementary(kind, t, p, prec):
    return upper(t, p, prec) if kind == "U" else lower(t, p, prec)


def _exact_lift(h):
    """
    Rational rows with determinant exactly 1 agreeing with h to its precision,
    and the number of digits lost by solving for one entry.
    """
    a, b, c, d = (e.to_rational() for e in h.entries)
    pivots = [(e.val, name) for e, name in ((h.c, "c"), (h.a, "a")) if not e.is_zero]
    if not pivots:
        raise InsufficientPrecision("first column is zero to precision")
    v, name = min(pivots)
    if name == "c":
        b = (a * d - 1) / c
    else:
        d = (1 + b * c) / a
    return [[a, b], [c, d]], max(v, 0)


def _certify(m, target, digits):
    try:
        return m.congruent(target, digits)
    except InsufficientPrecision:
        return False


def approximate_in_G(h, ctx, digits):
    """
    A rational quaternion of norm exactly 1 whose split agrees with h mod p^digits.
    Each elementary factor E(t) is realised as the normalization of a rational
    approximation of E(t/2).
    """
    if h.min_absprec() < digits:
        raise InsufficientPrecision(f"target known only mod {ctx.p}^{h.min_absprec()}, asked {digits}")
    if not eq_mod(h.det(), 1, digits):
        raise ValueError("target must have determinant 1")
    if _certify(Mat2Padic.identity(ctx.p, digits), h, digits):
        return ctx.algebra.one()
    rows, loss = _exact_lift(h)
    if h.min_absprec() - loss < digits:
        raise InsufficientPrecision(f"lifting the target to det 1 costs {loss} digits")
    lifted = Mat2Padic.from_rational(rows, ctx.p, max(e.absprec for e in h.entries) + config.APPROX_MARGIN)
    margin = 2 * _spread(elementary_factors(lifted)) + config.APPROX_MARGIN
    for attempt in range(config.APPROX_MAX_ATTEMPTS):
        work = ctx.with_precision(max(ctx.prec, digits + margin))
        factors = elementary_factors(Mat2Padic.from_rational(rows, ctx.p, work.prec + 2 * margin))
        g = ctx.algebra.one()
        for kind, t in factors:
            if t.is_zero:
                continue
            half = _elementary(kind, t.to_rational() / 2, ctx.p, work.prec)
            g = g * normalize_to_norm1(unsplit(half, work).to_rational())
        if _certify(split(g, work), h, digits):
            logger.debug(f"approximation certified mod {ctx.p}^{digits} at margin {margin}")
            return g
        logger.info(f"certification failed at margin {margin} (attempt {attempt + 1}), doubling")
        margin *= 2
    raise InsufficientPrecision(f"could not certify agreement mod {ctx.p}^{digits}")


def approximate_torus(lam, ctx, digits):
    """A norm-1 element x1 + e2' (normalized) whose split agrees with diag(lam, 1/lam) mod p^digits."""
    d = lam - 1
    if d.is_zero or d.val >= digits:
        return ctx.algebra.one()
    target = Mat2Padic.diag(lam, lam.inverse())
    if target.min_absprec() < digits:
        raise InsufficientPrecision(f"diag(lam, 1/lam) known only mod {ctx.p}^{target.min_absprec()}")
    exact = lam.to_rational()
    margin = 2 * (abs(lam.val) + abs(d.val)) + config.APPROX_MARGIN
    for attempt in range(config.APPROX_MAX_ATTEMPTS):
        work = ctx.with_precision(max(ctx.prec, digits + margin))
        lam_w = embed(exact, ctx.p, work.prec)
        x = work.sqrt_alpha * (lam_w + 1) / (lam_w - 1)
        coords = work.from_split_basis((x.to_rational(), Fraction(1), Fraction(0), Fraction(0)))
        t = normalize_to_norm1(ctx.algebra.element(*coords))
        if _certify(split(t, work), target, digits):
            return t
        logger.info(f"torus certification failed at margin {margin} (attempt {attempt + 1}), doubling")
        margin *= 2
    raise InsufficientPrecision(f"could not certify the torus element mod {ctx.p}^{digits}")


# ==================================================================
# RANDOM SAMPLES (seeded, for property runs)
# ==================================================================
def random_rational(rng, height, nonzero=False):
    while True:
        q = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height + 1)))
        if q or not nonzero:
            return q


def random_quaternion(rng, algebra, height=9):
    while True:
        x = algebra.element(*(random_rational(rng, height) for _ in range(4)))
        if not x.is_zero:
            return x


def random_sl2(rng, p, digits):
    """A random element of SL2(Z_p) known mod p^digits."""
    m = p ** digits
    while True:
        a, b, c = (int(rng.integers(0, m)) for _ in range(3))
        if a % p:
            break
    d = ((1 + b * c) * pow(a, -1, m)) % m
    return Mat2Padic(*(embed(e, p, digits) for e in (a, b, c, d)))
