"""Dense exact-coefficient polynomials and transfer functions.

Coefficients are stored in ASCENDING power order: coeffs[k] multiplies
s**k.  This mirrors how differential equations index their derivative
coefficients; the descending convention used by simulation exports is
reversed at the XML boundary, not here.

Arithmetic is exact (Fraction); only evaluation and root finding go
through binary64.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DegreeZero, NoConvergence, ZeroDenominator
from .exactnum import require_finite, to_float

CoeffLike = int | Fraction


def _normalize(coeffs: Iterable[CoeffLike]) -> tuple[Fraction, ...]:
    vals = [Fraction(c) for c in coeffs]
    if not vals:
        raise ValueError("polynomial needs at least one coefficient")
    while len(vals) > 1 and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


@dataclass(frozen=True)
class Poly:
    """Polynomial with exact rational coefficients, ascending powers."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[CoeffLike]):
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def __call__(self, s: complex) -> complex:
        """Horner evaluation after float conversion of the coefficients."""
        require_finite(complex(s), "evaluation point")
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * s + to_float(c)
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for i, c in enumerate(b):
            summed[i] += c
        return Poly(summed)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly([0])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c: CoeffLike) -> "Poly":
        return Poly([Fraction(c) * a for a in self.coeffs])

    def derivative(self) -> "Poly":
        if self.degree == 0:
            return Poly([0])
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"


def equal_up_to_scale(a: Poly, b: Poly) -> Optional[Fraction]:
    """Return c != 0 with a = c*b when one exists, else None.  Exact."""
    if a.is_zero() and b.is_zero():
        return Fraction(1)
    if a.is_zero() or b.is_zero():
        return None
    if a.degree != b.degree:
        return None
    c = a.coeffs[-1] / b.coeffs[-1]
    for x, y in zip(a.coeffs, b.coeffs):
        if x != c * y:
            return None
    return c


def first_difference(a: Poly, b: Poly) -> Optional[int]:
    """Lowest index where the coefficient lists differ (None if equal)."""
    n = max(len(a.coeffs), len(b.coeffs))
    for i in range(n):
        x = a.coeffs[i] if i < len(a.coeffs) else Fraction(0)
        y = b.coeffs[i] if i < len(b.coeffs) else Fraction(0)
        if x != y:
            return i
    return None


def roots(p: Poly, tol: float = 1e-12, max_iter: int = 200) -> list[complex]:
    """Numeric roots, sorted by (Re, Im).

    Degrees 1 and 2 use closed forms with the discriminant computed
    exactly before any float conversion.  Degree >= 3 uses Durand-Kerner
    on the monic float coefficients: initial guesses sit on a circle of
    radius 1 + max|c_k/c_n|, rotated 0.4 rad off the axes, and iteration
    stops when the largest update falls below `tol` relative.
    """
    if p.degree < 1:
        raise DegreeZero("root finding needs degree >= 1")
    if p.degree == 1:
        c0, c1 = p.coeffs
        return [complex(to_float(-c0 / c1))]
    if p.degree == 2:
        c, b, a = p.coeffs
        disc = b * b - 4 * a * c
        if disc >= 0:
            sq = math.sqrt(to_float(disc))
            bf, af = to_float(b), to_float(a)
            # pair the additions to avoid cancellation
            q = -(bf + math.copysign(sq, bf)) / 2
            if q == 0.0:
                r = [complex(0.0), complex(-bf / af)]
            else:
                r = [complex(q / af), complex(to_float(c) / q)]
        else:
            re = to_float(-b / (2 * a))
            im = math.sqrt(to_float(-disc)) / (2 * abs(to_float(a)))
            r = [complex(re, -im), complex(re, im)]
        return sorted(r, key=lambda z: (z.real, z.imag))

    n = p.degree
    monic = [to_float(c / p.coeffs[-1]) for c in p.coeffs[:-1]]

    def value(z: complex) -> complex:
        acc = complex(1.0)
        for c in reversed(monic):
            acc = acc * z + c
        return acc

    radius = 1.0 + max(abs(c) for c in monic)
    guesses = [
        radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)
    ]
    for _ in range(max_iter):
        worst = 0.0
        nxt = list(guesses)
        for k in range(n):
            zk = guesses[k]
            denom = complex(1.0)
            for j in range(n):
                if j != k:
                    denom *= zk - guesses[j]
            if denom == 0:
                denom = complex(tol)
            step = value(zk) / denom
            nxt[k] = zk - step
            worst = max(worst, abs(step) / max(1.0, abs(nxt[k])))
        guesses = nxt
        if worst <= tol:
            return sorted(guesses, key=lambda z: (z.real, z.imag))
    raise NoConvergence(f"Durand-Kerner did not converge in {max_iter} iterations")


@dataclass(frozen=True)
class TransferFunction:
    """Ratio num/den of exact polynomials in s."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDenominator("transfer function denominator is zero")

    @classmethod
    def from_coeffs(
        cls, num: Sequence[CoeffLike], den: Sequence[CoeffLike]
    ) -> "TransferFunction":
        return cls(Poly(num), Poly(den))

    @property
    def proper(self) -> bool:
        return self.num.degree <= self.den.degree

    @property
    def strictly_proper(self) -> bool:
        return self.num.is_zero() or self.num.degree < self.den.degree

    def __call__(self, s: complex) -> complex:
        return self.num(s) / self.den(s)

    def __repr__(self) -> str:
        return f"TransferFunction(num={self.num!r}, den={self.den!r})"
