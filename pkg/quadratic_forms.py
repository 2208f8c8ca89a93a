"""
Quadratic Forms
Hilbert symbols, local/global isotropy of diagonal forms in at most four
variables, the -1 in D^2 criterion and the basis normalization making alpha a p-adic square.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint, isprime

from config import config
from exact_arith import LabError, is_square_qp, legendre, to_fraction, unit_part, vp

logger = logging.getLogger("QuadForms")


class UnsupportedDimension(LabError):
    reason = "UnsupportedDimension"


class NotDivisionAlgebra(LabError):
    reason = "NotDivisionAlgebra"


# ==================================================================
# PLACES
# ==================================================================
@dataclass(frozen=True, order=True)
class Place:
    """A prime number, or the real place when prime is None."""
    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not isprime(self.prime):
            raise ValueError(f"{self.prime} is not a prime")

    @property
    def is_real(self):
        return self.prime is None

    def __str__(self):
        return "real" if self.is_real else str(self.prime)


REAL = Place()


# ==================================================================
# FORMS
# ==================================================================
def square_free_part(q):
    """The square-free integer in the square class of q."""
    q = to_fraction(q)
    if q == 0:
        raise ValueError("zero has no square class")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    core = 1
    for prime, e in factorint(abs(n)).items():
        if e % 2:
            core *= prime
    return sign * core


@dataclass(frozen=True)
class DiagonalForm:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(to_fraction(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a form needs at least one coefficient")
        if any(c == 0 for c in coeffs):
            raise ValueError("form coefficients must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def parse(cls, text):
        return cls(tuple(to_fraction(t) for t in text.split(",")))

    @property
    def dim(self):
        return len(self.coeffs)

    def discriminant(self):
        return math.prod(self.coeffs, start=Fraction(1))

    def square_free(self):
        return DiagonalForm(tuple(Fraction(square_free_part(c)) for c in self.coeffs))

    def relevant_places(self):
        """real, 2 and the primes dividing the square-free coefficients."""
        primes = {2}
        for c in self.square_free().coeffs:
            primes.update(factorint(abs(c.numerator)).keys())
        return [REAL] + [Place(q) for q in sorted(primes)]

    def hasse_invariant(self, v):
        eps = 1
        cs = self.coeffs
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                eps *= hilbert_symbol(cs[i], cs[j], v)
        return eps

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.coeffs) + ">"


# ==================================================================
# HILBERT SYMBOL
# ==================================================================
def _two_adic_unit_mod8(u):
    u = to_fraction(u)
    return (u.numerator * u.denominator) % 8  # d^-1 = d mod 8 for odd d


def hilbert_symbol(a, b, v):
    a, b = to_fraction(a), to_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.prime
    alpha, beta = vp(a, p), vp(b, p)
    u, w = unit_part(a, p), unit_part(b, p)
    if p == 2:
        u8, w8 = _two_adic_unit_mod8(u), _two_adic_unit_mod8(w)
        eps_u, eps_w = ((u8 - 1) // 2) % 2, ((w8 - 1) // 2) % 2
        omega_u, omega_w = ((u8 * u8 - 1) // 8) % 2, ((w8 * w8 - 1) // 8) % 2
        e = eps_u * eps_w + alpha * omega_w + beta * omega_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    lu = legendre(u.numerator * u.denominator, p)
    lw = legendre(w.numerator * w.denominator, p)
    return sign * (lu ** (beta % 2)) * (lw ** (alpha % 2))


def is_local_square(q, v):
    q = to_fraction(q)
    if v.is_real:
        return q > 0
    if v.prime == 2:
        return vp(q, 2) % 2 == 0 and _two_adic_unit_mod8(unit_part(q, 2)) == 1
    return is_square_qp(q, v.prime)


# ==================================================================
# ISOTROPY
# ==================================================================
def is_isotropic_local(f, v):
    n = f.dim
    if n > 4:
        raise UnsupportedDimension(f"dimension {n} > 4")
    if n == 1:
        return False
    if v.is_real:
        return any(c > 0 for c in f.coeffs) and any(c < 0 for c in f.coeffs)
    d = f.discriminant()
    if n == 2:
        return is_local_square(-d, v)
    eps = f.hasse_invariant(v)
    if n == 3:
        return hilbert_symbol(-1, -d, v) == eps
    return (not is_local_square(d, v)) or eps == hilbert_symbol(-1, -1, v)


@dataclass
class GlobalIsotropy:
    form: DiagonalForm
    isotropic: bool
    failing_places: list = field(default_factory=list)
    checked_places: list = field(default_factory=list)

    def __bool__(self):
        return self.isotropic

    def to_dict(self):
        return {
            "form": str(self.form),
            "isotropic": self.isotropic,
            "failing_places": [str(v) for v in self.failing_places],
            "checked_places": [str(v) for v in self.checked_places],
        }


def is_isotropic_global(f):
    """Hasse-Minkowski over the relevant places; the certificate lists every anisotropic one."""
    if f.dim > 4:
        raise UnsupportedDimension(f"dimension {f.dim} > 4")
    places = f.relevant_places()
    failing = [v for v in places if not is_isotropic_local(f, v)]
    logger.debug(f"{f}: checked {[str(v) for v in places]}, anisotropic at {[str(v) for v in failing]}")
    return GlobalIsotropy(f, not failing, failing, places)


# ==================================================================
# QUATERNION CRITERIA
# ==================================================================
def norm_form(alpha, beta):
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    return DiagonalForm((1, -alpha, -beta, alpha * beta))


def is_division_algebra(alpha, beta):
    return not is_isotropic_global(norm_form(alpha, beta)).isotropic


def require_division(alpha, beta):
    if not is_division_algebra(alpha, beta):
        raise NotDivisionAlgebra(f"({alpha},{beta}) splits over Q: its norm form is isotropic")


def minus_one_form(alpha, beta):
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    return DiagonalForm((1, alpha, beta, -alpha * beta))


def minus_one_obstruction(alpha, beta):
    require_division(alpha, beta)
    return is_isotropic_global(minus_one_form(alpha, beta))


def minus_one_in_D2(alpha, beta):
    """True iff -1 has a square root in (alpha, beta)_Q."""
    return minus_one_obstruction(alpha, beta).isotropic


def pure_sqrt_minus_one(alpha, beta, height=None):
    """
    Coordinates (x2, x3, x4) of a pure quaternion q with q^2 = -1, i.e.
    alpha x2^2 + beta x3^2 - alpha beta x4^2 = -1, searched over a common
    denominator d and numerators bounded by `height`. None when exhausted.
    """
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    height = config.WITNESS_HEIGHT if height is None else height
    one = Fraction(1)
    if beta == -1:
        return (Fraction(0), one, Fraction(0))
    if alpha == -1:
        return (one, Fraction(0), Fraction(0))
    if alpha * beta == 1:
        return (Fraction(0), Fraction(0), one)
    # Work with the square-free integers sa, sb: alpha = sa ra^2, beta = sb rb^2
    sa, sb = square_free_part(alpha), square_free_part(beta)
    ra, rb = _rational_sqrt(alpha / sa), _rational_sqrt(beta / sb)
    den = -sa * sb
    for d in range(1, height + 1):
        for a in range(height + 1):
            head = -d * d - sa * a * a
            for b in range(height + 1):
                rest = head - sb * b * b
                if rest % den:
                    continue
                c2 = rest // den
                if c2 < 0:
                    continue
                c = math.isqrt(c2)
                if c * c == c2 and c <= height:
                    return (Fraction(a) / (d * ra), Fraction(b) / (d * rb), Fraction(c) / (d * ra * rb))
    return None


def _rational_sqrt(q):
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def lemma1_normalize(alpha, beta, p):
    """
    (alpha', lam, mu) with alpha' = lam^2 alpha - mu^2 alpha beta a p-adic unit
    square; the identity branch (alpha, 1, 0) when alpha already is one.
    """
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    if p == 2 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    if vp(alpha, p) != 0 or vp(beta, p) != 0:
        raise ValueError(f"alpha and beta must be {p}-adic units")
    require_division(alpha, beta)
    if is_square_qp(alpha, p):
        return alpha, Fraction(1), Fraction(0)
    # The binary form has unit coefficients, so it represents every unit
    # residue; the square class of a unit only depends on its residue.
    for h in range(1, config.NORMALIZE_MAX_HEIGHT + 1):
        for lam in range(h + 1):
            for mu in range(h + 1):
                if max(lam, mu) != h:
                    continue
                a2 = lam * lam * alpha - mu * mu * alpha * beta
                if a2 != 0 and vp(a2, p) == 0 and is_square_qp(a2, p):
                    logger.info(f"basis change at p={p}: lambda={lam}, mu={mu}, alpha'={a2}")
                    return a2, Fraction(lam), Fraction(mu)
    raise LabError(f"no square-making basis change found up to height {config.NORMALIZE_MAX_HEIGHT}")


def obstruction_family(l, count=5):
    """
    Division algebras (alpha, -l) with -1 not in D^2: l = 1 mod 4 prime and
    alpha a negative integer that is not a square mod l.
    """
    if not isprime(l) or l % 4 != 1:
        raise ValueError(f"{l} must be a prime = 1 mod 4")
    out = []
    alpha = -1
    while len(out) < count:
        if alpha % l and legendre(alpha, l) == -1:
            out.append((Fraction(alpha), Fraction(-l)))
        alpha -= 1
    return out
