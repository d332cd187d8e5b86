"""Exact rational scalars and lossless text conversions.

Every coefficient in the pipeline is carried as a `fractions.Fraction`
(aliased `ExactScalar`): always stored reduced, denominator positive,
zero is 0/1.  Decimal and scientific text is converted to rationals with
integer arithmetic only — no float ever sits between the source text and
the stored value.

Complex values for numeric work are plain `complex`; `require_finite`
rejects NaN/Inf at API boundaries.

Literal grammar used for generated prover scripts:

    integer     &<digits>             e.g.  &1
    decimal     #<terminating dec>    e.g.  #62500.0000039063
    fraction    &<p> / &<q>           e.g.  &1 / &3
    negative    --(<literal>)         e.g.  --(&5)

The fraction form is this toolchain's own convention for rationals with
no terminating decimal expansion; generated scripts carry a comment
whenever it is used.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import EmptyInput, MalformedNumber

ExactScalar = Fraction

_DECIMAL_RE = re.compile(
    r"""^(?P<sign>[+-])?
         (?P<int>[0-9]+)
         (?:\.(?P<frac>[0-9]+))?
         (?:[eE](?P<exp>[+-]?[0-9]+))?$""",
    re.VERBOSE,
)

_HOL_INT_RE = re.compile(r"^&([0-9]+)$")
_HOL_DEC_RE = re.compile(r"^#([0-9]+\.[0-9]+)$")
_HOL_FRAC_RE = re.compile(r"^&([0-9]+) / &([0-9]+)$")
_HOL_NEG_RE = re.compile(r"^--\((.+)\)$")


def parse_decimal(text: str) -> Fraction:
    """Parse decimal/scientific text to its exact rational value.

    Accepts `[+-]?digits[.digits]?([eE][+-]?digits)?`.  The value is
    assembled from integers, so e.g. "62500.0000039063" comes back as
    exactly 625000000039063/10**10.
    """
    if not isinstance(text, str):
        raise MalformedNumber(f"expected string, got {type(text).__name__}")
    if text == "":
        raise EmptyInput("empty numeric text")
    m = _DECIMAL_RE.match(text)
    if m is None:
        raise MalformedNumber(f"not a decimal or scientific numeral: {text!r}")
    frac_digits = m.group("frac") or ""
    mantissa = int(m.group("int") + frac_digits)
    if m.group("sign") == "-":
        mantissa = -mantissa
    exponent = int(m.group("exp") or 0) - len(frac_digits)
    if exponent >= 0:
        return Fraction(mantissa * 10**exponent)
    return Fraction(mantissa, 10**-exponent)


def has_terminating_decimal(x: Fraction) -> bool:
    """True when x can be written exactly as a finite decimal."""
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def format_decimal(x: Fraction) -> str:
    """Render x as its exact decimal string.

    Integers come out bare ("5", "-3"); other values keep exactly the
    digits needed, trailing fractional zeros stripped.  Raises
    ValueError when x has no terminating decimal expansion.
    """
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    two = five = 0
    while d % 2 == 0:
        d //= 2
        two += 1
    while d % 5 == 0:
        d //= 5
        five += 1
    if d != 1:
        raise ValueError(f"{x} has no terminating decimal representation")
    k = max(two, five)
    scaled = abs(x.numerator) * 10**k // x.denominator
    digits = str(scaled).rjust(k + 1, "0")
    int_part, frac_part = digits[:-k], digits[-k:]
    frac_part = frac_part.rstrip("0")
    sign = "-" if x.numerator < 0 else ""
    if not frac_part:
        # cannot happen for reduced non-integers, kept as a guard
        return sign + int_part
    return f"{sign}{int_part}.{frac_part}"


def format_hol_literal(x: Fraction) -> str:
    """Render x in the prover literal grammar (see module docstring)."""
    if x < 0:
        return f"--({format_hol_literal(-x)})"
    if x.denominator == 1:
        return f"&{x.numerator}"
    if has_terminating_decimal(x):
        return f"#{format_decimal(x)}"
    return f"&{x.numerator} / &{x.denominator}"


def parse_hol_literal(text: str) -> Fraction:
    """Inverse of format_hol_literal; used to audit generated scripts."""
    neg = _HOL_NEG_RE.match(text)
    if neg:
        return -parse_hol_literal(neg.group(1))
    m = _HOL_INT_RE.match(text)
    if m:
        return Fraction(int(m.group(1)))
    m = _HOL_DEC_RE.match(text)
    if m:
        return parse_decimal(m.group(1))
    m = _HOL_FRAC_RE.match(text)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    raise MalformedNumber(f"not a prover literal: {text!r}")


def to_float(x: Fraction) -> float:
    """Nearest binary64 (round to nearest, ties to even).

    CPython's big-int true division is correctly rounded, so this is the
    correctly rounded conversion.  Raises OverflowError past binary64
    range.
    """
    return x.numerator / x.denominator


def require_finite(z: complex, what: str = "value") -> complex:
    """Reject NaN/Inf components; returns z unchanged."""
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must have finite components, got {z!r}")
    return z


def cx(re: float, im: float = 0.0) -> complex:
    """Finite-checked complex constructor."""
    return require_finite(complex(re, im))


__all__ = [
    "ExactScalar",
    "parse_decimal",
    "has_terminating_decimal",
    "format_decimal",
    "format_hol_literal",
    "parse_hol_literal",
    "to_float",
    "require_finite",
    "cx",
]
