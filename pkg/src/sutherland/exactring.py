"""Exact arithmetic in the coupling constant.

Everything symbolic in this package lives over the field of rational
functions of a single formal variable ``lam`` (the interaction coupling).
Coefficients are arbitrary-precision rationals (`fractions.Fraction`),
polynomials are dense coefficient lists with trailing zeros trimmed, and
rational functions are kept reduced with a monic denominator so that
equality of values is equality of representations.

Keeping the coupling formal means every divisor appearing in the
triangular eigenvector recursions is a nonzero polynomial; numbers enter
only when a result is specialized via :meth:`RatFunc.eval_at`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


def rat_to_str(r: Fraction) -> str:
    """Render a rational as ``p`` or ``p/q`` (q > 1)."""
    return str(r)


def rat_from_str(s: str) -> Fraction:
    """Parse ``p``, ``p/q`` or an exact decimal string like ``1.7``."""
    return Fraction(s)


class LambdaPoly:
    """Dense univariate polynomial in the formal coupling, rational coefficients.

    ``coeffs[k]`` is the coefficient of ``lam**k``; the empty tuple is the
    zero polynomial and otherwise the last stored coefficient is nonzero.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("LambdaPoly is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(c: Fraction | int) -> "LambdaPoly":
        return LambdaPoly([Fraction(c)])

    @staticmethod
    def variable() -> "LambdaPoly":
        return LambdaPoly([0, 1])

    # -- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "LambdaPoly") -> "LambdaPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    def __neg__(self) -> "LambdaPoly":
        return LambdaPoly([-c for c in self.coeffs])

    def __sub__(self, other: "LambdaPoly") -> "LambdaPoly":
        return self + (-other)

    def __mul__(self, other: "LambdaPoly") -> "LambdaPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return LambdaPoly(out)

    def scale(self, c: Fraction | int) -> "LambdaPoly":
        c = Fraction(c)
        if c == 0:
            return ZERO_POLY
        return LambdaPoly([x * c for x in self.coeffs])

    def divmod(self, other: "LambdaPoly") -> tuple["LambdaPoly", "LambdaPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return ZERO_POLY, self
        rem = list(self.coeffs)
        div = other.coeffs
        dlead = div[-1]
        q = [Fraction(0)] * (len(rem) - len(div) + 1)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(div) - 1] / dlead
            if c:
                q[i] = c
                for j, d in enumerate(div):
                    rem[i + j] -= c * d
        return LambdaPoly(q), LambdaPoly(rem)

    def monic(self) -> "LambdaPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return LambdaPoly([c / lead for c in self.coeffs])

    def eval_at(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"LambdaPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = rat_to_str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else ("(%s)*" % rat_to_str(mag) if mag.denominator != 1 else "%s*" % mag)
                term = head + ("lam" if k == 1 else "lam^%d" % k)
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


ZERO_POLY = LambdaPoly()
ONE_POLY = LambdaPoly([1])
LAM = LambdaPoly.variable()


def poly_gcd(a: LambdaPoly, b: LambdaPoly) -> LambdaPoly:
    """Monic gcd over the rationals (Euclidean remainders, made monic)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return ONE_POLY
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()


class RatFunc:
    """Reduced rational function of the coupling, with monic denominator.

    The reduced/monic normal form makes ``==`` a representational check,
    which the exact test suites rely on.  The denominator is never zero.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LambdaPoly, den: LambdaPoly = ONE_POLY, _normalized: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = ONE_POLY
            elif den.is_one():
                pass
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, _ = num.divmod(g)
                    den, _ = den.divmod(g)
                lead = den.leading()
                if lead != 1:
                    den = den.monic()
                    num = num.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RatFunc is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_rat(c: Fraction | int) -> "RatFunc":
        return RatFunc(LambdaPoly.const(c), ONE_POLY, _normalized=True)

    @staticmethod
    def from_poly(p: LambdaPoly) -> "RatFunc":
        return RatFunc(p, ONE_POLY, _normalized=True)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> LambdaPoly:
        if not self.den.is_one():
            raise ValueError("not a polynomial: %s" % self)
        return self.num

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, ONE_POLY, _normalized=True)
        # cross-cancel before multiplying to keep intermediates small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else self.num.divmod(g1)[0]
        d2 = other.den if g1.is_one() else other.den.divmod(g1)[0]
        n2 = other.num if g2.is_one() else other.num.divmod(g2)[0]
        d1 = self.den if g2.is_one() else self.den.divmod(g2)[0]
        num = n1 * n2
        den = d1 * d2
        lead = den.leading()
        if lead != 1:
            den = den.monic()
            num = num.scale(1 / lead)
        return RatFunc(num, den, _normalized=True)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFunc(other.den, other.num)

    def scale_int(self, c: Fraction | int) -> "RatFunc":
        """Multiply by an exact constant (no re-reduction needed)."""
        if c == 0:
            return RF_ZERO
        return RatFunc(self.num.scale(c), self.den, _normalized=True)

    def eval_at(self, x: Fraction | int) -> Fraction:
        d = self.den.eval_at(x)
        if d == 0:
            raise PoleError("pole at lam = %s" % Fraction(x))
        return self.num.eval_at(x) / d

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    # -- serialization ------------------------------------------------
    def to_obj(self) -> dict:
        return {
            "num": [rat_to_str(c) for c in self.num.coeffs],
            "den": [rat_to_str(c) for c in self.den.coeffs],
        }

    @staticmethod
    def from_obj(obj: dict) -> "RatFunc":
        num = LambdaPoly([rat_from_str(s) for s in obj["num"]])
        den = LambdaPoly([rat_from_str(s) for s in obj["den"]])
        return RatFunc(num, den)


RF_ZERO = RatFunc.from_rat(0)
RF_ONE = RatFunc.from_rat(1)
RF_LAM = RatFunc.from_poly(LAM)


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Dispatch helper used by the wire layer: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def binom_lambda(k: int) -> LambdaPoly:
    """Falling-factorial binomial lam*(lam-1)*...*(lam-k+1)/k! as a polynomial."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = ONE_POLY
    for i in range(k):
        out = out * LambdaPoly([-i, 1])
        out = out.scale(Fraction(1, i + 1))
    return out


def binom_neg_lambda(k: int) -> LambdaPoly:
    """Binomial of the negated coupling: (-lam)(-lam-1)...(-lam-k+1)/k!."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = ONE_POLY
    for i in range(k):
        out = out * LambdaPoly([-i, -1])
        out = out.scale(Fraction(1, i + 1))
    return out


def common_denominator(values: Sequence[RatFunc]) -> LambdaPoly:
    """A (least) common denominator of the given rational functions."""
    acc = ONE_POLY
    for v in values:
        if v.den.is_one():
            continue
        g = poly_gcd(acc, v.den)
        extra, _ = v.den.divmod(g)
        acc = acc * extra
    return acc
