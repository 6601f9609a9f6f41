"""Integer weight vectors, partitions and the pair lattice.

A weight is a plain tuple of N integers.  Shift vectors live on the
lattice of non-negative integer combinations of the root directions
``E[j,k]`` (+1 at j, -1 at k, j < k); distinct lattice points may project
to the same weight (E12 + E23 = E13), so both recursions index their
coefficient tables on the lattice and group by projected weight only when
polynomials are assembled.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

Weight = tuple[int, ...]


def pair_list(N: int) -> list[tuple[int, int]]:
    """Ordered pairs (j, k), 1-based, j < k, in lexicographic order."""
    return [(j, k) for j in range(1, N + 1) for k in range(j + 1, N + 1)]


def root_vector(j: int, k: int, N: int) -> Weight:
    """The weight with +1 at position j and -1 at position k (1-based)."""
    if not (1 <= j < k <= N):
        raise IndexError("need 1 <= j < k <= N, got j=%d k=%d N=%d" % (j, k, N))
    out = [0] * N
    out[j - 1] = 1
    out[k - 1] = -1
    return tuple(out)


class MuVector:
    """Non-negative integer multiplicities on the pairs (j, k), j < k.

    Stored as a flat tuple aligned with :func:`pair_list`; hashable, so it
    can key coefficient tables directly.
    """

    __slots__ = ("N", "vals")

    def __init__(self, N: int, vals: Sequence[int] | None = None):
        npairs = N * (N - 1) // 2
        if vals is None:
            vals = (0,) * npairs
        vals = tuple(int(v) for v in vals)
        if len(vals) != npairs:
            raise ValueError("expected %d pair values for N=%d" % (npairs, N))
        if any(v < 0 for v in vals):
            raise ValueError("pair multiplicities must be non-negative")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "vals", vals)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("MuVector is immutable")

    @staticmethod
    def zero(N: int) -> "MuVector":
        return MuVector(N)

    @staticmethod
    def from_dict(N: int, d: dict[tuple[int, int], int]) -> "MuVector":
        pairs = pair_list(N)
        return MuVector(N, [d.get(p, 0) for p in pairs])

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {p: v for p, v in zip(pair_list(self.N), self.vals) if v}

    def get(self, j: int, k: int) -> int:
        return self.vals[_pair_index(self.N, j, k)]

    def bump(self, j: int, k: int, amount: int) -> "MuVector":
        """New vector with (j,k) shifted by amount (may raise if negative)."""
        i = _pair_index(self.N, j, k)
        out = list(self.vals)
        out[i] += amount
        return MuVector(self.N, out)

    def total(self) -> int:
        return sum(self.vals)

    def is_zero(self) -> bool:
        return not any(self.vals)

    def project(self) -> Weight:
        """The weight sum over pairs of mu[j,k] * E[j,k]; entries sum to 0."""
        out = [0] * self.N
        for (j, k), v in zip(pair_list(self.N), self.vals):
            if v:
                out[j - 1] += v
                out[k - 1] -= v
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MuVector) and self.N == other.N and self.vals == other.vals

    def __hash__(self) -> int:
        return hash((self.N, self.vals))

    def __repr__(self) -> str:
        return "MuVector(N=%d, %r)" % (self.N, self.as_dict())

    # -- serialization ------------------------------------------------
    def to_obj(self) -> dict[str, int]:
        return {"%d,%d" % p: v for p, v in sorted(self.as_dict().items())}

    @staticmethod
    def from_obj(N: int, obj: dict[str, int]) -> "MuVector":
        d = {}
        for key, v in obj.items():
            j, k = (int(s) for s in key.split(","))
            d[(j, k)] = v
        return MuVector.from_dict(N, d)


def _pair_index(N: int, j: int, k: int) -> int:
    if not (1 <= j < k <= N):
        raise IndexError("need 1 <= j < k <= N, got j=%d k=%d N=%d" % (j, k, N))
    # pairs (1,2)..(1,N), (2,3)..: offset of row j is sum of previous row lengths
    return (j - 1) * N - j * (j - 1) // 2 + (k - j - 1)


def project_mu(m: MuVector) -> Weight:
    return m.project()


def mu_leq(a: MuVector, b: MuVector) -> bool:
    """Componentwise <= on the pair lattice (the recursions' partial order)."""
    if a.N != b.N:
        raise ValueError("mismatched N")
    return all(x <= y for x, y in zip(a.vals, b.vals))


def sort_descending(n: Sequence[int]) -> Weight:
    return tuple(sorted(n, reverse=True))


def is_weakly_decreasing(n: Sequence[int]) -> bool:
    return all(n[i] >= n[i + 1] for i in range(len(n) - 1))


def is_sorted_nonnegative(n: Sequence[int]) -> bool:
    """The entry condition for algorithm roots: n1 >= ... >= nN >= 0."""
    return is_weakly_decreasing(n) and (len(n) == 0 or n[-1] >= 0)


def dominance_leq(m: Sequence[int], n: Sequence[int]) -> bool:
    """Dominance order on equal-degree partitions: all prefix sums of m <= those of n."""
    if len(m) != len(n):
        raise ValueError("dominance order needs equal lengths")
    if sum(m) != sum(n):
        raise ValueError("dominance order needs equal entry sums")
    pm = pn = 0
    for a, b in zip(m, n):
        pm += a
        pn += b
        if pm > pn:
            return False
    return True


def tail_sums(n: Sequence[int]) -> list[int]:
    """All tail sums n_j + ... + n_N, j = 1..N."""
    out = []
    acc = 0
    for v in reversed(n):
        acc += v
        out.append(acc)
    out.reverse()
    return out


def support_ok(n: Sequence[int]) -> bool:
    """True iff every tail sum of n is non-negative."""
    acc = 0
    for v in reversed(n):
        acc += v
        if acc < 0:
            return False
    return True


def enumerate_support_mu(n: Sequence[int]) -> list[MuVector]:
    """All pair vectors mu with support_ok(n + project(mu)), for sorted n.

    The tail sum of project(mu) at cut i is minus the sum of mu over pairs
    crossing that cut, so the support condition forces
    mu[j,k] <= min over crossed cuts i of (n_i + ... + n_N); the scan runs
    over that finite box and filters each candidate by the support test.
    """
    n = tuple(n)
    if not is_sorted_nonnegative(n):
        raise ValueError("expected a weakly decreasing non-negative weight, got %r" % (n,))
    N = len(n)
    tails = tail_sums(n)
    pairs = pair_list(N)
    bounds = []
    for j, k in pairs:
        bounds.append(min(tails[i - 1] for i in range(j + 1, k + 1)))
    out = []
    for vals in itertools.product(*[range(b + 1) for b in bounds]):
        m = MuVector(N, vals)
        shifted = tuple(a + b for a, b in zip(n, m.project()))
        if support_ok(shifted):
            out.append(m)
    return out


def partitions(total: int, parts: int) -> Iterator[Weight]:
    """All weakly decreasing non-negative tuples of the given length and sum."""
    if parts == 0:
        if total == 0:
            yield ()
        return

    def rec(remaining: int, slots: int, cap: int):
        if slots == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        lo = -(-remaining // slots)  # ceil: keep weakly decreasing feasible
        for first in range(min(cap, remaining), lo - 1, -1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(total, parts, total)


def partitions_up_to(max_total: int, parts: int) -> Iterator[Weight]:
    """All partitions of every degree 0..max_total into the given length."""
    for d in range(max_total + 1):
        yield from partitions(d, parts)
