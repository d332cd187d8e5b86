"""Frequency- and time-domain analysis plus the simulation cross-check.

Closed-form paths (frequency response, residue-based time responses) and
the independent numeric oracle (RK4 simulation + transform integrals of
the trace) are deliberately separate: the oracle never reuses the
residue machinery, so agreement between the two is evidence, not
circularity.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import (
    NotStrictlyProper,
    PoleOnAxis,
    RepeatedPole,
    StiffnessWarning,
)
from .exactnum import to_float
from .laplace import (
    LinearODE,
    TimeSignal,
    abscissa,
    exponential,
    from_samples,
    numeric_laplace,
)
from .poly import Poly, TransferFunction, roots


@dataclass(frozen=True)
class FreqPoint:
    omega: float
    magnitude: float
    magnitude_db: float
    phase: float


@dataclass(frozen=True)
class PoleResidue:
    pole: complex
    residue: complex
    multiplicity: int = 1


@dataclass(frozen=True)
class SimTrace:
    """Uniformly sampled (t, v_i, v_o) triples starting from rest at t=0."""

    dt: float
    samples: tuple[tuple[float, float, float], ...]

    def input_signal(self) -> TimeSignal:
        return from_samples(self.dt, [s[1] for s in self.samples])

    def output_signal(self) -> TimeSignal:
        return from_samples(self.dt, [s[2] for s in self.samples])


# --------------------------------------------------------------------------
# frequency domain


def freq_response(tf: TransferFunction, omega: float) -> FreqPoint:
    """Evaluate H(j*omega); error if j*omega sits on (or hugs) a pole."""
    s = complex(0.0, omega)
    den_val = tf.den(s)
    scale = sum(abs(to_float(c)) * abs(omega) ** k for k, c in enumerate(tf.den.coeffs))
    if abs(den_val) <= 1e-12 * max(scale, 1e-300):
        raise PoleOnAxis(f"denominator vanishes at omega = {omega:g}")
    h = tf.num(s) / den_val
    mag = abs(h)
    mag_db = 20.0 * math.log10(mag) if mag > 0 else float("-inf")
    return FreqPoint(omega, mag, mag_db, math.atan2(h.imag, h.real))


def bode_sweep(tf: TransferFunction, omegas: Iterable[float]) -> list[FreqPoint]:
    return [freq_response(tf, w) for w in omegas]


def write_bode_csv(points: Sequence[FreqPoint], out: IO[str]) -> None:
    """CSV export: header + one %.12g-formatted row per point."""
    out.write("omega_rad_s,magnitude,magnitude_db,phase_rad\n")
    for p in points:
        out.write(
            "%.12g,%.12g,%.12g,%.12g\n" % (p.omega, p.magnitude, p.magnitude_db, p.phase)
        )


def poles_zeros(tf: TransferFunction) -> tuple[list[complex], list[complex]]:
    poles = roots(tf.den) if tf.den.degree >= 1 else []
    zeros = roots(tf.num) if tf.num.degree >= 1 else []
    return poles, zeros


def is_stable(tf: TransferFunction) -> bool:
    poles, _ = poles_zeros(tf)
    return all(p.real < 0 for p in poles)


# --------------------------------------------------------------------------
# residue-based time domain


def partial_fractions(tf: TransferFunction) -> list[PoleResidue]:
    """Simple-pole residue expansion r_i = N(p_i)/D'(p_i).

    Requires a strictly proper tf with pairwise-separated poles
    (distance > 1e-6 relative).
    """
    if not tf.strictly_proper:
        raise NotStrictlyProper("residue expansion needs deg(num) < deg(den)")
    poles = roots(tf.den)
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            sep = abs(poles[i] - poles[j])
            if sep <= 1e-6 * max(1.0, abs(poles[i]), abs(poles[j])):
                raise RepeatedPole(
                    f"poles {poles[i]:.6g} and {poles[j]:.6g} too close for "
                    "a simple-pole expansion"
                )
    dden = tf.den.derivative()
    return [PoleResidue(p, tf.num(p) / dden(p)) for p in poles]


def time_response(tf: TransferFunction, kind: str, t: float) -> float:
    """Impulse or step response at time t >= 0, summed from residues."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if kind == "impulse":
        terms = partial_fractions(tf)
    elif kind == "step":
        stepped = TransferFunction(tf.num, tf.den * Poly([0, 1]))
        terms = partial_fractions(stepped)
    else:
        raise ValueError(f"kind must be 'impulse' or 'step', got {kind!r}")
    acc = 0j
    for term in terms:
        acc += term.residue * cmath.exp(term.pole * t)
    return acc.real


# --------------------------------------------------------------------------
# simulation oracle


def simulate_ode(
    ode: LinearODE, input_signal: TimeSignal, horizon: float, dt: float
) -> SimTrace:
    """Classic RK4 on the controllable-canonical realization, zero state.

    Ascending coefficient lists map directly onto phase variables, so
    input-derivative terms never require differentiating the input.
    Warns (StiffnessWarning) when dt >= 0.1/|fastest pole|.
    """
    if dt <= 0 or horizon <= 0:
        raise ValueError("dt and horizon must be positive")
    n = ode.order
    if ode.input_order > n:
        raise ValueError("input derivative order exceeds output order")
    lead = to_float(ode.out_coeffs[-1])
    a = [to_float(c) / lead for c in ode.out_coeffs[:-1]]
    b = [to_float(c) / lead for c in ode.in_coeffs]
    b += [0.0] * (n + 1 - len(b))
    d = b[n]
    c = [b[k] - d * a[k] for k in range(n)]

    if n >= 1:
        fastest = max(abs(p) for p in roots(ode.out_poly()))
        if fastest > 0 and dt >= 0.1 / fastest:
            warnings.warn(
                f"dt = {dt:g} is coarse for the fastest pole |p| = {fastest:g}",
                StiffnessWarning,
                stacklevel=2,
            )

    u = input_signal.evaluator
    steps = max(1, round(horizon / dt))

    def deriv(x: list[float], ut: float) -> list[float]:
        out = x[1:] + [0.0]
        out[n - 1] = ut - sum(a[k] * x[k] for k in range(n))
        return out

    x = [0.0] * n
    samples = []
    for i in range(steps + 1):
        t = i * dt
        ut = u(t)
        y = sum(c[k] * x[k] for k in range(n)) + d * ut if n else d * ut
        samples.append((t, ut, y))
        if i == steps:
            break
        if n == 0:
            continue
        um = u(t + dt / 2)
        ue = u(t + dt)
        k1 = deriv(x, ut)
        k2 = deriv([x[j] + dt / 2 * k1[j] for j in range(n)], um)
        k3 = deriv([x[j] + dt / 2 * k2[j] for j in range(n)], um)
        k4 = deriv([x[j] + dt * k3[j] for j in range(n)], ue)
        x = [
            x[j] + dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j])
            for j in range(n)
        ]
    return SimTrace(dt, tuple(samples))


def tf_numeric_check(
    tf: TransferFunction,
    ode: LinearODE,
    s_samples: Sequence[complex],
    horizon: float,
    dt: float,
    tol: float = 1e-9,
) -> float:
    """Independent numeric cross-check of tf against the ODE.

    Simulates the ODE on a decaying-exponential input, takes the
    transform integrals of the recorded input and output, and compares
    their ratio with the polynomial-evaluated tf.  Returns the worst
    relative error (relative to the simulated ratio, the oracle side).
    """
    bound = abscissa(tf, 0.0)
    for s in s_samples:
        if complex(s).real <= bound:
            raise ValueError(
                f"sample s = {s} must satisfy Re s > abscissa bound {bound:g}"
            )
    trace = simulate_ode(ode, exponential(-10.0 / horizon), horizon, dt)
    vi_sig = trace.input_signal()
    vo_sig = trace.output_signal()
    worst = 0.0
    for s in s_samples:
        s = complex(s)
        vi = numeric_laplace(vi_sig, s, horizon, tol).value
        vo = numeric_laplace(vo_sig, s, horizon, tol).value
        ratio = vo / vi
        err = abs(tf(s) - ratio) / max(abs(ratio), 1e-300)
        worst = max(worst, err)
    return worst
