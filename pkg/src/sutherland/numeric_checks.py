"""Floating-point verification of the analytic ground-state and kernel facts.

Every check here evaluates both sides of an identity in double precision
at randomly sampled angle configurations kept away from the interaction
poles, with second derivatives approximated by Richardson-extrapolated
central differences (steps h and h/2, fourth-order accurate).

Non-integer powers of the pair sine are fixed to one concrete branch:
log sin for positive sine and log|sin| + i*pi for negative sine.  Both
sides of each identity are evaluated under the same branch, and the phase
factors are locally constant away from sine zeros, so residuals do not
depend on the choice.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .planewave_alg import EigenResult
from .report import VerificationReport


@dataclass(frozen=True)
class Configuration:
    """Angle tuples with a guaranteed minimum pairwise separation."""

    x: tuple[float, ...]
    y: tuple[float, ...] | None = None
    delta: float = 0.3

    def __post_init__(self):
        xs = list(self.x)
        ys = list(self.y) if self.y is not None else []
        def circ(a, b):
            d = abs(a - b) % (2 * math.pi)
            return min(d, 2 * math.pi - d)
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                if circ(xs[i], xs[j]) <= self.delta:
                    raise ValueError("x angles closer than delta")
        for i in range(len(ys)):
            for j in range(i + 1, len(ys)):
                if circ(ys[i], ys[j]) <= self.delta:
                    raise ValueError("y angles closer than delta")
        for a in xs:
            for b in ys:
                if circ(a, b) <= self.delta:
                    raise ValueError("x-y angles closer than delta")


def sample_configuration(rng: np.random.Generator, N: int, delta: float = 0.3,
                         paired: bool = False, max_tries: int = 10000) -> Configuration:
    """Rejection-sample a Configuration with the required separations."""
    for _ in range(max_tries):
        x = tuple(rng.uniform(-math.pi, math.pi, size=N))
        y = tuple(rng.uniform(-math.pi, math.pi, size=N)) if paired else None
        try:
            return Configuration(x=x, y=y, delta=delta)
        except ValueError:
            continue
    raise RuntimeError("could not sample a separated configuration")


def pair_potential(r: float) -> float:
    """The inverse-square-sine pair potential 1/(4 sin^2(r/2))."""
    s = math.sin(r / 2.0)
    return 1.0 / (4.0 * s * s)


def _log_sin_branch(r: float) -> complex:
    s = math.sin(r / 2.0)
    if s == 0.0:
        raise ValueError("coincident points: sine factor vanishes")
    if s > 0:
        return complex(math.log(s), 0.0)
    return complex(math.log(-s), math.pi)


def eval_psi0(x: Sequence[float], lam0: float) -> complex:
    """Ground-state product of pair sines raised to the coupling."""
    x = list(x)
    N = len(x)
    acc = 0j
    for j in range(N):
        for k in range(j + 1, N):
            acc += _log_sin_branch(x[k] - x[j])
    return cmath.exp(lam0 * acc)


def eval_kernel(x: Sequence[float], y: Sequence[float], lam0: float) -> complex:
    """Two-family kernel: x-pair and y-pair sine products over the cross product."""
    x = list(x)
    y = list(y)
    N = len(x)
    acc = 0j
    for j in range(N):
        for k in range(j + 1, N):
            acc += _log_sin_branch(x[k] - x[j])
            acc += _log_sin_branch(y[j] - y[k])
    for j in range(N):
        for k in range(N):
            acc -= _log_sin_branch(x[j] - y[k])
    return cmath.exp(lam0 * acc)


class _Tracked:
    """Wrap a function, recording the largest magnitude it returned.

    Finite-difference noise scales with the largest value on the stencil,
    so residuals are normalized by this maximum rather than by the center
    value alone.
    """

    def __init__(self, fn: Callable[..., complex]):
        self.fn = fn
        self.max = 0.0

    def __call__(self, *args) -> complex:
        v = self.fn(*args)
        m = abs(v)
        if m > self.max:
            self.max = m
        return v


def second_derivative(f: Callable[[float], complex], t0: float, h: float) -> complex:
    """Richardson-extrapolated central second difference, O(h^4)."""
    def d2(step: float) -> complex:
        return (f(t0 + step) - 2.0 * f(t0) + f(t0 - step)) / (step * step)

    return (4.0 * d2(h / 2.0) - d2(h)) / 3.0


def check_ground_state(N: int, lam0: float, samples: int = 100, h: float = 1e-4,
                       delta: float = 0.3, seed: int = 0,
                       tolerance: float = 1e-6) -> VerificationReport:
    """The ground-state eigenvalue equation, by finite differences.

    Applies minus the Laplacian plus the interaction term to the ground
    state and compares with its energy; the residual is relative to the
    larger of the two sides (or the state itself when both nearly vanish,
    as for a single particle).
    """
    if lam0 <= 0:
        raise ValueError("coupling must be positive")
    rng = np.random.default_rng(seed)
    e0 = lam0 * lam0 * N * (N * N - 1) / 12.0
    gamma = 2.0 * lam0 * (lam0 - 1.0)
    worst = 0.0
    for _ in range(samples):
        cfg = sample_configuration(rng, N, delta=delta)
        x = list(cfg.x)
        tracked = _Tracked(lambda xs: eval_psi0(xs, lam0))
        psi = tracked(x)
        lap = 0j
        for j in range(N):
            def f(t, j=j):
                xs = list(x)
                xs[j] = t
                return tracked(xs)
            lap += second_derivative(f, x[j], h)
        pot = 0.0
        for j in range(N):
            for k in range(j + 1, N):
                pot += pair_potential(x[j] - x[k])
        lhs = -lap + gamma * pot * psi
        rhs = e0 * psi
        scale = max(abs(lhs), abs(rhs), max(1.0, abs(e0)) * tracked.max)
        worst = max(worst, abs(lhs - rhs) / scale)
    return VerificationReport(
        identity="ground-state-numeric",
        samples=samples,
        max_rel_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        seed=seed,
        detail="N=%d lam=%g h=%g delta=%g" % (N, lam0, h, delta),
    )


def check_kernel_identity(N: int, lam0: float, samples: int = 100, h: float = 1e-4,
                          delta: float = 0.3, seed: int = 0,
                          tolerance: float = 1e-6) -> VerificationReport:
    """The two-family kernel identity, by finite differences.

    The x-Laplacian minus the y-Laplacian of the kernel must equal the
    interaction strength times the difference of pair potentials between
    the two families, pointwise.
    """
    if lam0 <= 0:
        raise ValueError("coupling must be positive")
    rng = np.random.default_rng(seed)
    gamma = 2.0 * lam0 * (lam0 - 1.0)
    worst = 0.0
    for _ in range(samples):
        cfg = sample_configuration(rng, N, delta=delta, paired=True)
        x = list(cfg.x)
        y = list(cfg.y)
        tracked = _Tracked(lambda xs, ys: eval_kernel(xs, ys, lam0))
        fval = tracked(x, y)
        lhs = 0j
        for j in range(N):
            def fx(t, j=j):
                xs = list(x)
                xs[j] = t
                return tracked(xs, y)
            def fy(t, j=j):
                ys = list(y)
                ys[j] = t
                return tracked(x, ys)
            lhs += second_derivative(fx, x[j], h) - second_derivative(fy, y[j], h)
        pot = 0.0
        for j in range(N):
            for k in range(j + 1, N):
                pot += pair_potential(x[k] - x[j]) - pair_potential(y[j] - y[k])
        rhs = gamma * pot * fval
        scale = max(abs(lhs), abs(rhs), tracked.max)
        worst = max(worst, abs(lhs - rhs) / scale)
    return VerificationReport(
        identity="kernel-identity-numeric",
        samples=samples,
        max_rel_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        seed=seed,
        detail="N=%d lam=%g h=%g delta=%g" % (N, lam0, h, delta),
    )


def check_cot_identity(samples: int = 1000, seed: int = 0,
                       tolerance: float = 1e-12) -> VerificationReport:
    """Pairwise cotangent product sum equals one on zero-sum angle triples."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    count = 0
    while count < samples:
        x, y = rng.uniform(-math.pi, math.pi, size=2)
        z = -x - y
        if min(abs(math.sin(t)) for t in (x, y, z)) < 0.1:
            continue
        count += 1
        cx, cy, cz = (math.cos(t) / math.sin(t) for t in (x, y, z))
        worst = max(worst, abs(cx * cy + cx * cz + cy * cz - 1.0))
    return VerificationReport(
        identity="cot-identity",
        samples=samples,
        max_rel_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        seed=seed,
    )


def check_geom_expansion(eps: float, y: float, K: int) -> VerificationReport:
    """Truncated geometric-series form of the regularized inverse sine square.

    The inverse square of sin((y + i*eps)/2), times 1/4, equals minus the
    nu-weighted geometric series; the check compares against the partial
    sum through K with the analytic tail bound as tolerance.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    s = cmath.sin((y + 1j * eps) / 2.0)
    lhs = 1.0 / (4.0 * s * s)
    partial = sum(nu * cmath.exp(1j * nu * y - nu * eps) for nu in range(1, K + 1))
    resid = abs(lhs + partial)
    q = math.exp(-eps)
    tail_bound = 2.0 * math.exp(-(K + 1) * eps) * (K + 2) / (1.0 - q) ** 2
    return VerificationReport(
        identity="geometric-expansion",
        samples=1,
        max_rel_residual=resid,
        tolerance=tail_bound,
        passed=resid <= tail_bound,
        detail="eps=%g y=%g K=%d" % (eps, y, K),
    )


def check_eigenfunction_numeric(result: EigenResult, lam0: Fraction | float,
                                samples: int = 25, h: float = 1e-4,
                                delta: float = 0.3, seed: int = 0,
                                tolerance: float = 1e-5) -> VerificationReport:
    """End to end: the polynomial times the ground state solves the model.

    Evaluates f = Phi * Psi0 on random configurations, applies the full
    Hamiltonian by finite differences, and compares with the eigenvalue.
    The residual is normalized by the eigenvalue scale times the largest
    |f| over the sample's difference stencils, which is the scale the
    finite-difference noise actually lives on.
    """
    lam_exact = Fraction(lam0) if not isinstance(lam0, Fraction) else lam0
    lamf = float(lam_exact)
    if lamf <= 0:
        raise ValueError("coupling must be positive")
    N = result.N
    phi = result.phi.specialize(lam_exact)
    energy = float(result.e_total.eval_at(lam_exact))
    gamma = 2.0 * lamf * (lamf - 1.0)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        cfg = sample_configuration(rng, N, delta=delta)
        x = list(cfg.x)

        def f(xs):
            return phi.evaluate(xs) * eval_psi0(xs, lamf)

        fval = f(x)
        stencil_max = abs(fval)
        lap = 0j
        for j in range(N):
            def fj(t, j=j):
                xs = list(x)
                xs[j] = t
                return f(xs)
            for step in (h, h / 2.0):
                for sgn in (1.0, -1.0):
                    stencil_max = max(stencil_max, abs(fj(x[j] + sgn * step)))
            lap += second_derivative(fj, x[j], h)
        pot = 0.0
        for j in range(N):
            for k in range(j + 1, N):
                pot += pair_potential(x[j] - x[k])
        lhs = -lap + gamma * pot * fval
        rhs = energy * fval
        scale = max(1.0, abs(energy)) * max(stencil_max, 1e-300)
        worst = max(worst, abs(lhs - rhs) / scale)
    return VerificationReport(
        identity="eigenfunction-numeric",
        samples=samples,
        max_rel_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        seed=seed,
        detail="n=%r lam=%s algo=%s" % (tuple(result.n), lamf, result.algorithm),
    )
