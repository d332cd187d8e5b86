"""Differential-equation <-> transfer-function verification core.

A constant-coefficient linear ODE

    sum_k out[k] * d^k v_o/dt^k  =  sum_k in[k] * d^k v_i/dt^k

is carried as two ascending coefficient lists.  Under zero initial
conditions its transform image is the rational function
Poly(in)/Poly(out); the conversions here are exact, and every semantic
side condition (differentiability, transform existence, nonzero input
transform, region bounds) is recorded in an ObligationReport rather than
silently assumed.

Numeric oracles: an adaptive-Simpson transform integral with an explicit
tail bound, and a grid check of the exponential-order condition.
"""

from __future__ import annotations

import math
import cmath
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .errors import DegenerateODE, QuadratureFailure, TailUnbounded
from .exactnum import require_finite
from .poly import (
    CoeffLike,
    Poly,
    TransferFunction,
    equal_up_to_scale,
    first_difference,
    roots,
)


# --------------------------------------------------------------------------
# domain types


def _trim(coeffs: Iterable[CoeffLike]) -> tuple[Fraction, ...]:
    vals = [Fraction(c) for c in coeffs]
    if not vals:
        raise ValueError("coefficient list must be non-empty")
    while len(vals) > 1 and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


@dataclass(frozen=True)
class LinearODE:
    """Two ascending coefficient lists; index k multiplies the k-th derivative."""

    out_coeffs: tuple[Fraction, ...]
    in_coeffs: tuple[Fraction, ...]

    def __init__(self, out_coeffs: Sequence[CoeffLike], in_coeffs: Sequence[CoeffLike]):
        out_t = _trim(out_coeffs)
        if out_t == (Fraction(0),):
            raise DegenerateODE("output side of the ODE is identically zero")
        object.__setattr__(self, "out_coeffs", out_t)
        object.__setattr__(self, "in_coeffs", _trim(in_coeffs))

    @property
    def order(self) -> int:
        return len(self.out_coeffs) - 1

    @property
    def input_order(self) -> int:
        return len(self.in_coeffs) - 1

    def out_poly(self) -> Poly:
        return Poly(self.out_coeffs)

    def in_poly(self) -> Poly:
        return Poly(self.in_coeffs)


def ode_equal_up_to_scale(a: LinearODE, b: LinearODE) -> Optional[Fraction]:
    """Single scale c with a = c*b applied to BOTH coefficient lists."""
    c_out = equal_up_to_scale(a.out_poly(), b.out_poly())
    c_in = equal_up_to_scale(a.in_poly(), b.in_poly())
    if c_out is None or c_in is None:
        return None
    if a.in_poly().is_zero() and b.in_poly().is_zero():
        return c_out
    return c_out if c_out == c_in else None


@dataclass(frozen=True)
class ExpOrderBound:
    """|f(t)| <= M * exp(a*t) for all t >= 0."""

    M: float
    a: float

    def __post_init__(self):
        if not self.M > 0:
            raise ValueError("exponential-order bound requires M > 0")


@dataclass(frozen=True)
class TimeSignal:
    """A time-domain signal: an evaluator for t >= 0 plus a descriptor."""

    evaluator: Callable[[float], float]
    kind: str
    exp_bound: Optional[ExpOrderBound] = None

    def __call__(self, t: float) -> float:
        return self.evaluator(t)


def step() -> TimeSignal:
    return TimeSignal(lambda t: 1.0, "step", ExpOrderBound(1.0, 0.0))


def ramp() -> TimeSignal:
    # t <= exp(t) on t >= 0
    return TimeSignal(lambda t: t, "ramp", ExpOrderBound(1.0, 1.0))


def exponential(rate: float) -> TimeSignal:
    return TimeSignal(lambda t: math.exp(rate * t), "exp", ExpOrderBound(1.0, rate))


def sine(omega: float, decay: float = 0.0) -> TimeSignal:
    return TimeSignal(
        lambda t: math.exp(-decay * t) * math.sin(omega * t),
        "sin",
        ExpOrderBound(1.0, -decay),
    )


def from_samples(dt: float, values: Sequence[float]) -> TimeSignal:
    """Uniformly sampled signal with local cubic (Catmull-Rom) interpolation.

    Cubic interpolation keeps the whole trace-driven oracle pipeline at
    fourth order, matching the integrator.  Outside the sampled range the
    signal clamps to its end values.
    """
    vals = [float(v) for v in values]
    if dt <= 0 or len(vals) < 2:
        raise ValueError("need dt > 0 and at least two samples")
    n = len(vals)
    if n >= 4:
        left_ghost = 4 * vals[0] - 6 * vals[1] + 4 * vals[2] - vals[3]
        right_ghost = 4 * vals[-1] - 6 * vals[-2] + 4 * vals[-3] - vals[-4]
    else:
        left_ghost = vals[0]
        right_ghost = vals[-1]

    def evaluate(t: float) -> float:
        x = t / dt
        if x <= 0.0:
            return vals[0]
        if x >= n - 1:
            return vals[-1]
        i = int(x)
        u = x - i
        p1 = vals[i]
        p2 = vals[i + 1]
        p0 = vals[i - 1] if i >= 1 else left_ghost
        p3 = vals[i + 2] if i + 2 < n else right_ghost
        return 0.5 * (
            2 * p1
            + (p2 - p0) * u
            + (2 * p0 - 5 * p1 + 4 * p2 - p3) * u * u
            + (3 * p1 - p0 - 3 * p2 + p3) * u * u * u
        )

    bound = ExpOrderBound(max(max(abs(v) for v in vals), 1e-300), 0.0)
    return TimeSignal(evaluate, "table", bound)


def scaled_sum(terms: Sequence[tuple[float, TimeSignal]]) -> TimeSignal:
    """a*f + b*g + ...; combines exponential bounds when all terms have one."""
    bound = None
    if all(sig.exp_bound is not None for _, sig in terms) and terms:
        bound = ExpOrderBound(
            sum(abs(c) * sig.exp_bound.M for c, sig in terms) or 1e-300,
            max(sig.exp_bound.a for _, sig in terms),
        )
    return TimeSignal(
        lambda t: sum(c * sig.evaluator(t) for c, sig in terms), "mix", bound
    )


class ObligationStatus(Enum):
    VERIFIED_EXACT = "VerifiedExact"
    CHECKED_NUMERIC = "CheckedNumeric"
    EMITTED_ASSUMPTION = "EmittedAssumption"
    FAILED = "Failed"


@dataclass(frozen=True)
class Obligation:
    id: str
    description: str
    status: ObligationStatus
    detail: str = ""


@dataclass
class ObligationReport:
    """Machine analogue of a theorem's assumption list, with statuses."""

    obligations: list[Obligation]
    sigma0: float

    def __post_init__(self):
        ids = [o.id for o in self.obligations]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate obligation ids: {ids}")

    def get(self, oid: str) -> Obligation:
        for o in self.obligations:
            if o.id == oid:
                return o
        raise KeyError(oid)

    def ids(self) -> list[str]:
        return [o.id for o in self.obligations]

    def failed(self) -> list[Obligation]:
        return [o for o in self.obligations if o.status is ObligationStatus.FAILED]

    def ok(self) -> bool:
        return not self.failed()

    def to_dict(self) -> dict:
        return {
            "sigma0": self.sigma0,
            "obligations": [
                {
                    "id": o.id,
                    "description": o.description,
                    "status": o.status.value,
                    "detail": o.detail,
                }
                for o in self.obligations
            ],
        }


# --------------------------------------------------------------------------
# exact conversions


def abscissa(tf: TransferFunction, margin: float = 1.0) -> float:
    """Real bound sigma0 with every pole strictly left of it.

    sigma0 = max(0, max Re pole) + margin.  Degree-0 denominators have no
    poles and yield plain `margin`.
    """
    if tf.den.degree == 0:
        return margin
    worst = max(p.real for p in roots(tf.den))
    return max(0.0, worst) + margin


_EMIT = ObligationStatus.EMITTED_ASSUMPTION


def _shared_assumptions(m: int, n: int) -> list[Obligation]:
    return [
        Obligation("A1", f"input differentiable up to order {m}", _EMIT),
        Obligation("A2", f"output differentiable up to order {n}", _EMIT),
        Obligation(
            "A3",
            f"zero initial conditions through derivative order {max(n - 1, 0)}",
            _EMIT,
        ),
    ]


def ode_to_tf(
    ode: LinearODE, margin: float = 1.0
) -> tuple[TransferFunction, ObligationReport]:
    """Transform image of the ODE under zero initial conditions.

    The returned report carries the eight assumption analogues of the
    forward (ODE -> transfer function) theorem template: A1-A7 are
    semantic side conditions forwarded into generated scripts, A8 is the
    algebraic correspondence, exact by construction here.
    """
    tf = TransferFunction(ode.in_poly(), ode.out_poly())
    sigma0 = abscissa(tf, margin)
    m, n = ode.input_order, ode.order
    obligations = _shared_assumptions(m, n) + [
        Obligation(
            "A4",
            "input transform nonzero",
            _EMIT,
            f"emitted as a region condition on Re s >= {sigma0:g}; the source "
            "template states it pointwise (divergence noted)",
        ),
        Obligation("A5", "denominator polynomial nonzero at s", _EMIT),
        Obligation("A6", f"input transform exists up to order {m}", _EMIT),
        Obligation("A7", f"output transform exists up to order {n}", _EMIT),
        Obligation(
            "A8",
            "differential equation corresponds to the transfer function",
            ObligationStatus.VERIFIED_EXACT,
            "cross-multiplication identity holds exactly, scale 1",
        ),
    ]
    return tf, ObligationReport(obligations, sigma0)


def tf_to_ode(
    tf: TransferFunction, margin: float = 1.0
) -> tuple[LinearODE, ObligationReport]:
    """Recover the ODE whose transform image is tf (zero initial conditions).

    The report carries the nine assumption analogues of the reverse
    theorem template.  The recovery itself (A9) is exact by
    cross-multiplication; transform uniqueness justifies reading the
    algebraic identity back in the time domain and is cited, not
    re-checked.
    """
    ode = LinearODE(out_coeffs=tf.den.coeffs, in_coeffs=tf.num.coeffs)
    sigma0 = abscissa(tf, margin)
    m, n = ode.input_order, ode.order
    if tf.den.degree >= 1:
        worst = max(p.real for p in roots(tf.den))
        a4_detail = f"max pole real part {worst:.6g} < sigma0 = {sigma0:g}"
    else:
        a4_detail = f"no poles; sigma0 = {sigma0:g}"
    obligations = _shared_assumptions(m, n) + [
        Obligation(
            "A4",
            "denominator nonzero on Re s >= sigma0",
            ObligationStatus.CHECKED_NUMERIC,
            a4_detail,
        ),
        Obligation(
            "A5", "input transform nonzero on Re s >= sigma0", _EMIT
        ),
        Obligation(
            "A6",
            "0 < sigma0",
            ObligationStatus.VERIFIED_EXACT,
            f"sigma0 = {sigma0:g}",
        ),
        Obligation(
            "A7", f"input transform exists up to order {m} on the region", _EMIT
        ),
        Obligation(
            "A8", f"output transform exists up to order {n} on the region", _EMIT
        ),
        Obligation(
            "A9",
            "transfer function corresponds to the recovered differential equation",
            ObligationStatus.VERIFIED_EXACT,
            "cross-multiplication identity holds exactly; transform uniqueness "
            "cited for the time-domain reading, not re-checked",
        ),
    ]
    return ode, ObligationReport(obligations, sigma0)


def check_equivalence(
    ode: LinearODE, tf: TransferFunction, margin: float = 1.0
) -> ObligationReport:
    """Exact algebraic equivalence of an ODE and a transfer function.

    Verified iff num(tf)*Poly(out) == den(tf)*Poly(in) coefficient for
    coefficient.  Scaling both ODE lists (or both tf polynomials) by one
    common nonzero constant leaves the check invariant, which is exactly
    the freedom a monic-normalizing exporter needs.
    """
    cross_a = tf.num * ode.out_poly()
    cross_b = tf.den * ode.in_poly()
    scale = equal_up_to_scale(cross_a, cross_b)
    sigma0 = abscissa(tf, margin)
    if scale == 1:
        rep = equal_up_to_scale(ode.in_poly(), tf.num)
        if rep is not None:
            detail = f"scale {rep}"
        else:
            detail = "cross-products identical; representations differ by a polynomial factor"
        ob = Obligation(
            "A-alg",
            "differential equation and transfer function agree",
            ObligationStatus.VERIFIED_EXACT,
            detail,
        )
    else:
        idx = first_difference(cross_a, cross_b)
        ob = Obligation(
            "A-alg",
            "differential equation and transfer function agree",
            ObligationStatus.FAILED,
            f"Failed at coefficient {idx}",
        )
    return ObligationReport([ob], sigma0)


# --------------------------------------------------------------------------
# numeric oracles


class LaplaceResult(NamedTuple):
    value: complex
    tail_bound: Optional[float]


def _adaptive_simpson(
    f: Callable[[float], complex],
    a: float,
    b: float,
    tol: float,
    max_depth: int,
) -> complex:
    fa, fm, fb = f(a), f((a + b) / 2), f(b)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    unresolved = 0.0

    def recurse(a, b, fa, fm, fb, whole, tol, depth) -> complex:
        nonlocal unresolved
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15 * tol or depth >= max_depth:
            if depth >= max_depth and abs(delta) > 15 * tol:
                unresolved += abs(delta) / 15
            return left + right + delta / 15
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2, depth + 1
        )

    result = recurse(a, b, fa, fm, fb, whole, tol, 0)
    if unresolved > max(tol, 1e-300):
        raise QuadratureFailure(
            f"unresolved quadrature error {unresolved:g} exceeds tolerance {tol:g}"
        )
    return result


def numeric_laplace(
    f: TimeSignal,
    s: complex,
    horizon: float,
    tol: float = 1e-9,
    max_depth: int = 48,
) -> LaplaceResult:
    """Transform integral of f at s over [0, horizon], adaptive Simpson.

    When the signal carries an exponential-order bound (M, a) and
    Re s > a, the neglected tail is bounded by M*exp((a-Re s)*horizon) /
    (Re s - a) and reported alongside the value; with no bound the tail
    estimate is None.  Re s <= a makes the tail unbounded and is an
    error.
    """
    require_finite(complex(s), "transform variable")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    tail: Optional[float] = None
    if f.exp_bound is not None:
        sigma, a = s.real, f.exp_bound.a
        if sigma <= a:
            raise TailUnbounded(
                f"Re s = {sigma:g} does not exceed the growth rate a = {a:g}"
            )
        tail = f.exp_bound.M * math.exp((a - sigma) * horizon) / (sigma - a)

    def integrand(t: float) -> complex:
        return f.evaluator(t) * cmath.exp(-s * t)

    value = _adaptive_simpson(integrand, 0.0, horizon, tol, max_depth)
    return LaplaceResult(value, tail)


class ExpOrderResult(NamedTuple):
    holds_on_grid: bool
    witness: Optional[float]


def exp_order_check(
    f: TimeSignal, bound: ExpOrderBound, grid_max: float, grid_n: int
) -> ExpOrderResult:
    """Sample |f(t)| <= M*exp(a*t) on a uniform grid over [0, grid_max].

    A grid check only — it can refute the bound (with a witness) but
    never proves it.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    if grid_max <= 0:
        raise ValueError("grid_max must be positive")
    for k in range(grid_n):
        t = grid_max * k / (grid_n - 1)
        if abs(f.evaluator(t)) > bound.M * math.exp(bound.a * t):
            return ExpOrderResult(False, t)
    return ExpOrderResult(True, None)
