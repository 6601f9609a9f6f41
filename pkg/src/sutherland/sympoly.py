"""Symmetric polynomials in z_j = exp(i x_j).

Storage is sparse: a map from weakly decreasing exponent tuples to
rational-function coefficients, tagged with the basis convention:

* ``M`` - monomial symmetric functions (sum over distinct permutations);
* ``S`` - full permutation sums, which differ from M by the product of
  factorials of entry multiplicities.

The module also hosts :func:`apply_hprime`, an application of the
conjugated Hamiltonian built directly from its differential-operator form
via exact Laurent-polynomial manipulation.  It shares no formulas with
either eigenfunction recursion, which makes it the referee both of them
are checked against.
"""

from __future__ import annotations

import cmath
import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .exactring import RF_ZERO, LambdaPoly, RatFunc, RF_LAM
from .weights import Weight, sort_descending

Monomial = tuple[int, ...]


class InexactDivisionError(RuntimeError):
    """Internal invariant failure: a supposedly exact division left a remainder."""


def multiplicity_factor(key: Sequence[int]) -> int:
    """Product of factorials of entry multiplicities (the S/M conversion factor)."""
    out = 1
    run = 1
    for i in range(1, len(key)):
        if key[i] == key[i - 1]:
            run += 1
            out *= run
        else:
            run = 1
    return out


class SymPoly:
    """Sparse symmetric polynomial with an explicit basis tag."""

    __slots__ = ("N", "basis", "terms")

    def __init__(self, N: int, basis: str, terms: dict[Monomial, RatFunc] | None = None):
        if basis not in ("M", "S"):
            raise ValueError("basis must be 'M' or 'S'")
        clean: dict[Monomial, RatFunc] = {}
        for key, coeff in (terms or {}).items():
            key = tuple(int(v) for v in key)
            if len(key) != N:
                raise ValueError("key %r has wrong length for N=%d" % (key, N))
            if any(key[i] < key[i + 1] for i in range(N - 1)):
                raise ValueError("key %r is not weakly decreasing" % (key,))
            if not coeff.is_zero():
                clean[key] = coeff
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("SymPoly is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(N: int, basis: str = "M") -> "SymPoly":
        return SymPoly(N, basis)

    @staticmethod
    def single(N: int, key: Sequence[int], coeff: RatFunc, basis: str = "M") -> "SymPoly":
        return SymPoly(N, basis, {tuple(key): coeff})

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def keys_sorted(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def coeff(self, key: Sequence[int]) -> RatFunc:
        return self.terms.get(tuple(key), RF_ZERO)

    def degree_sums(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymPoly) or self.N != other.N:
            return False
        return convert_basis(self, "M").terms == convert_basis(other, "M").terms

    def __hash__(self) -> int:
        m = convert_basis(self, "M")
        return hash((m.N, tuple(sorted(m.terms.items()))))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "SymPoly") -> "SymPoly":
        if self.N != other.N:
            raise ValueError("mismatched N")
        a = convert_basis(self, "M")
        b = convert_basis(other, "M")
        out = dict(a.terms)
        for key, coeff in b.terms.items():
            cur = out.get(key)
            out[key] = coeff if cur is None else cur + coeff
        return SymPoly(self.N, "M", out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + other.scaled(RatFunc.from_rat(-1))

    def scaled(self, c: RatFunc) -> "SymPoly":
        if c.is_zero():
            return SymPoly.zero(self.N, self.basis)
        return SymPoly(self.N, self.basis, {k: v * c for k, v in self.terms.items()})

    # -- evaluation ---------------------------------------------------
    def specialize(self, lam0: Fraction | int) -> "SymPoly":
        """Evaluate every coefficient at a rational coupling value."""
        out = {}
        for key, coeff in self.terms.items():
            out[key] = RatFunc.from_rat(coeff.eval_at(lam0))
        return SymPoly(self.N, self.basis, out)

    def evaluate(self, x: Sequence[float], lam0: Fraction | int | None = None) -> complex:
        """Numeric value at angles x (z_j = exp(i x_j)), double precision."""
        if len(x) != self.N:
            raise ValueError("expected %d angles" % self.N)
        z = [cmath.exp(1j * float(v)) for v in x]
        total = 0j
        for key, coeff in self.terms.items():
            if lam0 is not None:
                c = complex(coeff.eval_at(lam0))
            else:
                c = complex(coeff.eval_at(0)) if coeff.num.is_const() and coeff.den.is_one() else None
                if c is None:
                    raise ValueError("coefficients are symbolic; pass lam0")
            mono = 0j
            for perm in set(itertools.permutations(key)):
                term = 1 + 0j
                for zi, e in zip(z, perm):
                    term *= zi ** e
                mono += term
            if self.basis == "S":
                mono *= multiplicity_factor(key)
            total += c * mono
        return total

    def __repr__(self) -> str:
        inner = ", ".join("%r: %s" % (k, v) for k, v in sorted(self.terms.items(), reverse=True))
        return "SymPoly(N=%d, %s, {%s})" % (self.N, self.basis, inner)

    # -- serialization ------------------------------------------------
    def to_obj(self) -> dict:
        return {
            "N": self.N,
            "basis": self.basis,
            "terms": [
                {"key": list(k), "coeff": self.terms[k].to_obj()} for k in self.keys_sorted()
            ],
        }

    @staticmethod
    def from_obj(obj: dict) -> "SymPoly":
        terms = {tuple(t["key"]): RatFunc.from_obj(t["coeff"]) for t in obj["terms"]}
        return SymPoly(int(obj["N"]), obj["basis"], terms)


def convert_basis(p: SymPoly, target: str) -> SymPoly:
    """Convert between M and S conventions; the round trip is the identity."""
    if target not in ("M", "S"):
        raise ValueError("basis must be 'M' or 'S'")
    if p.basis == target:
        return p
    out = {}
    for key, coeff in p.terms.items():
        f = multiplicity_factor(key)
        if p.basis == "S":
            out[key] = coeff.scale_int(f)
        else:
            out[key] = coeff.scale_int(Fraction(1, f))
    return SymPoly(p.N, target, out)


def leading_monic_normalize(p: SymPoly, key: Sequence[int]) -> SymPoly:
    """Divide by the M-basis coefficient at the given key (must be nonzero)."""
    m = convert_basis(p, "M")
    lead = m.coeff(key)
    if lead.is_zero():
        raise ValueError("zero leading coefficient at %r" % (tuple(key),))
    return m.scaled(RatFunc.from_rat(1) / lead)


# ---------------------------------------------------------------------------
# dense exponent-vector helpers (internal to operator application)
# ---------------------------------------------------------------------------

def expand_monomials(p: SymPoly) -> dict[Monomial, RatFunc]:
    """Dense map from (unsorted) exponent vectors to coefficients."""
    m = convert_basis(p, "M")
    dense: dict[Monomial, RatFunc] = {}
    for key, coeff in m.terms.items():
        for perm in set(itertools.permutations(key)):
            dense[perm] = coeff
    return dense


def collect_symmetric(dense: dict[Monomial, RatFunc], N: int) -> SymPoly:
    """Group a dense map back into M-basis terms, checking symmetry."""
    groups: dict[Monomial, dict[Monomial, RatFunc]] = {}
    for mono, coeff in dense.items():
        if coeff.is_zero():
            continue
        groups.setdefault(sort_descending(mono), {})[mono] = coeff
    out = {}
    for key, members in groups.items():
        orbit = set(itertools.permutations(key))
        rep = members.get(key)
        if rep is None or len(members) != len(orbit) or any(v != rep for v in members.values()):
            raise InexactDivisionError("result is not symmetric at orbit of %r" % (key,))
        out[key] = rep
    return SymPoly(N, "M", out)


def _exact_div_by_diff(dense: dict[Monomial, RatFunc], j: int, k: int) -> dict[Monomial, RatFunc]:
    """Exact division by (z_j - z_k), 0-based indices; raises if inexact."""
    out: dict[Monomial, RatFunc] = {}
    rem = {m: c for m, c in dense.items() if not c.is_zero()}
    while rem:
        mono = max(rem, key=lambda e: e[j])
        c = rem.pop(mono)
        if mono[j] == 0:
            raise InexactDivisionError("division by z_%d - z_%d left a remainder" % (j + 1, k + 1))
        q = list(mono)
        q[j] -= 1
        qt = tuple(q)
        cur = out.get(qt)
        out[qt] = c if cur is None else cur + c
        q[k] += 1
        tt = tuple(q)
        nc = rem.get(tt)
        nc = c if nc is None else nc + c
        if nc.is_zero():
            rem.pop(tt, None)
        else:
            rem[tt] = nc
    return {m: c for m, c in out.items() if not c.is_zero()}


def apply_hprime(p: SymPoly) -> SymPoly:
    """Apply the ground-state-conjugated Hamiltonian to a symmetric polynomial.

    In the z variables the operator is

        sum_j (z_j d/dz_j)^2
          + lam * sum_{j<k} (z_j + z_k)/(z_j - z_k) * (z_j d/dz_j - z_k d/dz_k),

    applied by expanding to plain monomials, differentiating term by term,
    and dividing out (z_j - z_k) exactly; the division is exact because the
    directional derivative of a symmetric polynomial is antisymmetric in
    (j, k).  An inexact division aborts: it would mean the input was not
    symmetric or the implementation is wrong.
    """
    N = p.N
    dense = expand_monomials(p)
    diag: dict[Monomial, RatFunc] = {}
    for mono, coeff in dense.items():
        w = sum(e * e for e in mono)
        if w:
            diag[mono] = coeff.scale_int(w)
    offdiag: dict[Monomial, RatFunc] = {}
    for j in range(N):
        for k in range(j + 1, N):
            grad: dict[Monomial, RatFunc] = {}
            for mono, coeff in dense.items():
                d = mono[j] - mono[k]
                if d:
                    grad[mono] = coeff.scale_int(d)
            if not grad:
                continue
            shifted: dict[Monomial, RatFunc] = {}
            for mono, coeff in grad.items():
                for idx in (j, k):
                    q = list(mono)
                    q[idx] += 1
                    qt = tuple(q)
                    cur = shifted.get(qt)
                    shifted[qt] = coeff if cur is None else cur + coeff
            for mono, coeff in _exact_div_by_diff(shifted, j, k).items():
                cur = offdiag.get(mono)
                offdiag[mono] = coeff if cur is None else cur + coeff
    for mono, coeff in offdiag.items():
        scaled = coeff * RF_LAM
        cur = diag.get(mono)
        diag[mono] = scaled if cur is None else cur + scaled
    return collect_symmetric(diag, N)


def clear_denominators(p: SymPoly) -> SymPoly:
    """Scale by a common denominator so all coefficients are polynomials."""
    from .exactring import common_denominator

    m = convert_basis(p, "M")
    den = common_denominator(list(m.terms.values()))
    if den.is_one():
        return m
    return m.scaled(RatFunc.from_poly(den))


def eigen_residual(p: SymPoly, energy: RatFunc) -> SymPoly:
    """apply_hprime(p) - energy * p, computed with cleared denominators.

    Clearing denominators first keeps every coefficient a polynomial, which
    avoids gcd-heavy rational-function arithmetic inside the operator; the
    scaling is by a nonzero rational function, so the residual is zero iff
    the original one is.
    """
    cleared = clear_denominators(p)
    return apply_hprime(cleared) - cleared.scaled(energy)
