"""Eigenfunctions via the triangular action on symmetrized plane waves.

The conjugated Hamiltonian maps a permutation sum S_n to itself plus
dominance-lower terms along root directions, so an eigenfunction ansatz
over the same keys solves by back-substitution.  The recursion is derived
mechanically from :func:`hprime_action_on_S` by collecting, per sorted
key, everything the action pushes onto it; the energy-gap divisor is a
nonzero polynomial in the coupling, so no specialization can hit a
resonance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactring import RF_ONE, LambdaPoly, RatFunc
from .spectra import excitation_energy, ground_energy
from .sympoly import SymPoly, convert_basis, eigen_residual, leading_monic_normalize
from .weights import (
    Weight,
    dominance_leq,
    is_sorted_nonnegative,
    is_weakly_decreasing,
    pair_list,
    partitions,
    sort_descending,
)


class EigenCheckError(RuntimeError):
    """The exact eigenrelation failed for a constructed eigenfunction."""


@dataclass(frozen=True)
class EigenResult:
    """A weight, its eigenfunction (monic, M basis) and both energy forms."""

    n: Weight
    N: int
    algorithm: str
    phi: SymPoly
    e_excitation: RatFunc
    e_total: RatFunc

    def to_obj(self) -> dict:
        return {
            "n": list(self.n),
            "N": self.N,
            "algorithm": self.algorithm,
            "phi": self.phi.to_obj(),
            "e_excitation": self.e_excitation.to_obj(),
            "e_total": self.e_total.to_obj(),
        }


def hprime_action_on_S(n: Weight) -> dict[Weight, RatFunc]:
    """Action of the conjugated Hamiltonian on a permutation sum, by key.

    Returns the map from sorted keys to coefficients in the S basis:
    the diagonal excitation energy plus, for each pair (j, k), the terms
    lam * (n_j - n_k) * S at n - nu*E[j,k] for nu = 1 .. n_j - n_k - 1.
    """
    n = tuple(n)
    if not is_weakly_decreasing(n):
        raise ValueError("expected a weakly decreasing weight, got %r" % (n,))
    N = len(n)
    out: dict[Weight, RatFunc] = {n: excitation_energy_for_action(n)}
    for j, k in pair_list(N):
        d = n[j - 1] - n[k - 1]
        coeff = RatFunc.from_poly(LambdaPoly([0, d]))
        for nu in range(1, d):
            key = list(n)
            key[j - 1] -= nu
            key[k - 1] += nu
            key = sort_descending(key)
            cur = out.get(key)
            out[key] = coeff if cur is None else cur + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}


def excitation_energy_for_action(n: Weight) -> RatFunc:
    from .spectra import excitation_energy_extended

    return excitation_energy_extended(n)


def expansion_coeffs(n: Weight) -> dict[Weight, RatFunc]:
    """Permutation-sum expansion coefficients of the eigenfunction, by key.

    This is a push-style descent derived directly from the operator action:
    starting from coefficient 1 at n, every already-determined key emits
    lam * (gap in exponents) onto the re-sorted shifted keys it maps to, and
    a key's coefficient is its accumulated inflow divided by the excitation
    gap (a nonzero polynomial, so no coupling value is resonant).

    Keys are sorted partitions; a single key collects every pair-lattice
    point with the same projection, and - crucially - the re-sorted
    emissions where the action overshoots the symmetric point, which a
    literal lattice-point bookkeeping would drop.  Emissions go strictly
    down in dominance, so descending lexicographic order is a valid
    processing schedule.
    """
    n = tuple(n)
    N = len(n)
    total = sum(n)
    e_n = excitation_energy(n)
    keys = sorted((p for p in partitions(total, N)), reverse=True)
    inflow: dict[Weight, RatFunc] = {}
    table: dict[Weight, RatFunc] = {}
    for key in keys:
        if key == n:
            c = RF_ONE
        else:
            acc = inflow.get(key)
            if acc is None:
                continue
            if not dominance_leq(key, n):
                raise EigenCheckError("triangularity violated at key %r" % (key,))
            c = acc / (e_n - excitation_energy(key))
        if c.is_zero():
            continue
        table[key] = c
        for j, k in pair_list(N):
            d = key[j - 1] - key[k - 1]
            push = c * RatFunc.from_poly(LambdaPoly([0, d]))
            for nu in range(1, d):
                tgt = list(key)
                tgt[j - 1] -= nu
                tgt[k - 1] += nu
                tgt = sort_descending(tgt)
                cur = inflow.get(tgt)
                inflow[tgt] = push if cur is None else cur + push
    return table


def jack_sutherland(n: Weight) -> EigenResult:
    """Eigenfunction and eigenvalue for a sorted non-negative weight.

    The returned polynomial is monic in the leading monomial term; the
    exact eigenrelation under the independent operator is checked before
    returning and a failure raises, since it can only mean a bug.
    """
    n = tuple(int(v) for v in n)
    if not is_sorted_nonnegative(n):
        raise ValueError("weight must satisfy n1 >= ... >= nN >= 0, got %r" % (n,))
    N = len(n)
    phi_s = SymPoly(N, "S", expansion_coeffs(n))
    phi = leading_monic_normalize(convert_basis(phi_s, "M"), n)
    e_exc = excitation_energy(n)
    if not eigen_residual(phi, e_exc).is_zero():
        raise EigenCheckError("eigenrelation failed for n=%r (plane-wave path)" % (n,))
    return EigenResult(
        n=n,
        N=N,
        algorithm="sutherland",
        phi=phi,
        e_excitation=e_exc,
        e_total=e_exc + ground_energy(N),
    )
