"""Closed-form energies and energy gaps, symbolic in the coupling.

All functions return rational functions whose denominator is 1 (they are
polynomials in the coupling); numeric energies are obtained by evaluating
the result at a rational coupling value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactring import LAM, LambdaPoly, RatFunc
from .weights import MuVector, is_sorted_nonnegative, pair_list

Energy = RatFunc


def coupling_gamma() -> LambdaPoly:
    """The interaction strength 2*lam*(lam - 1) multiplying the pair potential."""
    return LambdaPoly([0, -2, 2])


def ground_energy(N: int) -> Energy:
    """Ground state energy lam^2 * N(N^2-1)/12."""
    if N < 1:
        raise ValueError("N must be >= 1")
    c = Fraction(N * (N * N - 1), 12)
    return RatFunc.from_poly(LambdaPoly([0, 0, c]))


def excitation_energy(n: Sequence[int]) -> Energy:
    """Energy above the ground state for a sorted non-negative weight."""
    if not is_sorted_nonnegative(n):
        raise ValueError("weight must satisfy n1 >= ... >= nN >= 0, got %r" % (n,))
    return excitation_energy_extended(n)


def excitation_energy_extended(n: Sequence[int]) -> Energy:
    """The expanded excitation form sum_j (n_j^2 + lam*(N+1-2j)*n_j).

    Applied verbatim to arbitrary (possibly unsorted) weights; this is the
    permutation-sensitive expression the recursion gaps difference.
    """
    N = len(n)
    c0 = sum(v * v for v in n)
    c1 = sum((N + 1 - 2 * j) * v for j, v in enumerate(n, start=1))
    return RatFunc.from_poly(LambdaPoly([c0, c1]))


def total_energy(n: Sequence[int]) -> Energy:
    """Full eigenvalue sum_j (n_j + lam*[(N+1)/2 - j])^2, any integer weight."""
    N = len(n)
    c0 = Fraction(0)
    c1 = Fraction(0)
    c2 = Fraction(0)
    for j, v in enumerate(n, start=1):
        s = Fraction(N + 1, 2) - j
        c0 += v * v
        c1 += 2 * v * s
        c2 += s * s
    return RatFunc.from_poly(LambdaPoly([c0, c1, c2]))


def momentum_shift(n: Sequence[int]) -> list[RatFunc]:
    """Per-mode shifted momenta P_j = n_j + lam*((N+1)/2 - j)."""
    N = len(n)
    out = []
    for j, v in enumerate(n, start=1):
        s = Fraction(N + 1, 2) - j
        out.append(RatFunc.from_poly(LambdaPoly([v, s])))
    return out


def gap_sutherland(n: Sequence[int], m: MuVector) -> Energy:
    """Gap driving the plane-wave recursion, as a sum over pairs.

    Equals excitation_energy(n) - excitation_energy_extended(n - project(m))
    identically; written in the pairwise form it is manifestly positive when
    both n and n - project(m) are weakly decreasing.
    """
    n = tuple(n)
    proj = m.project()
    shifted = tuple(a - b for a, b in zip(n, proj))
    c0 = 0
    c1 = 0
    for (j, k), v in zip(pair_list(m.N), m.vals):
        if not v:
            continue
        c0 += v * ((shifted[j - 1] - shifted[k - 1]) + (n[j - 1] - n[k - 1]))
        c1 += v * 2 * (k - j)
    return RatFunc.from_poly(LambdaPoly([c0, c1]))


def gap_novel(n: Sequence[int], m: MuVector) -> Energy:
    """Gap driving the kernel-block recursion, as a sum over pairs.

    Equals total_energy(n + project(m)) - total_energy(n) identically, and
    is manifestly positive for sorted n and nonzero m.
    """
    n = tuple(n)
    proj = m.project()
    c0 = sum(v * v for v in proj)
    c1 = 0
    for (j, k), v in zip(pair_list(m.N), m.vals):
        if not v:
            continue
        c0 += 2 * v * (n[j - 1] - n[k - 1])
        c1 += 2 * v * (k - j)
    return RatFunc.from_poly(LambdaPoly([c0, c1]))
