"""Exact arithmetic with square roots.

Structure constants are signed square roots of nonnegative rationals,
and the quantities appearing in Jacobi sums are finite Q-linear
combinations of sqrt(s) for squarefree positive integers s.  Linear
independence of those radicals over Q makes the zero test exact: a sum
is zero exactly when its term map is empty.  No floating point is used
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, f) with n == s * f**2 and s squarefree.

    Trial division up to sqrt(n).  Every radicand arising at dimension
    <= 9 is small (well below 1e6), so this needs no factoring library.
    """
    if n < 1:
        raise ValueError("positive integer required, got %r" % (n,))
    s, f = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            f *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 1 if d == 2 else 2
    return s * n, f


class SignedSqrt:
    """A value sign * sqrt(radicand), sign in {-1, 0, +1}, radicand >= 0 rational.

    Immutable after construction; sign == 0 iff radicand == 0.
    """

    __slots__ = ("sign", "radicand")

    def __init__(self, sign: int, radicand: Fraction | int | str) -> None:
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if radicand == 0:
            sign = 0
        elif sign not in (-1, 1):
            raise ValueError("sign must be -1 or +1 when the radicand is nonzero")
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("SignedSqrt is immutable")

    def __reduce__(self):
        return (SignedSqrt, (self.sign, self.radicand))

    @classmethod
    def zero(cls) -> "SignedSqrt":
        return cls(0, 0)

    @classmethod
    def of_rational(cls, value: Fraction | int) -> "SignedSqrt":
        """Embed a rational number r as sign(r) * sqrt(r**2)."""
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls(1 if value > 0 else -1, value * value)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SignedSqrt":
        return SignedSqrt(-self.sign, self.radicand)

    def rational_value(self) -> Fraction | None:
        """The exact rational value, or None if the value is irrational."""
        if self.sign == 0:
            return Fraction(0)
        s, f = squarefree_decompose(
            self.radicand.numerator * self.radicand.denominator
        )
        if s != 1:
            return None
        return Fraction(self.sign * f, self.radicand.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedSqrt):
            return NotImplemented
        return self.sign == other.sign and self.radicand == other.radicand

    def __hash__(self) -> int:
        return hash((self.sign, self.radicand))

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        r = self.rational_value()
        if r is not None:
            return str(r)
        body = "sqrt(%s)" % (self.radicand,)
        return "-" + body if self.sign < 0 else body

    def __repr__(self) -> str:
        return "SignedSqrt(%d, %s)" % (self.sign, self.radicand)


class RadicalSum:
    """A finite sum  sum_s c_s * sqrt(s)  over squarefree positive integers s.

    Stored as a map s -> c_s with no zero coefficients, so the
    represented number is zero iff the map is empty.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None) -> None:
        clean: dict[int, Fraction] = {}
        if terms:
            for s, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                sf, f = squarefree_decompose(s)
                if f != 1:
                    raise ValueError("key %d is not squarefree" % s)
                clean[sf] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("RadicalSum is immutable")

    def __reduce__(self):
        return (RadicalSum, (self._terms,))

    @classmethod
    def zero(cls) -> "RadicalSum":
        return cls()

    @classmethod
    def from_rational(cls, value: Fraction | int) -> "RadicalSum":
        return cls({1: Fraction(value)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def rational_value(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {1}:
            return self._terms[1]
        return None

    def __add__(self, other: "RadicalSum") -> "RadicalSum":
        merged = dict(self._terms)
        for s, c in other._terms.items():
            merged[s] = merged.get(s, Fraction(0)) + c
        return RadicalSum(merged)

    def __sub__(self, other: "RadicalSum") -> "RadicalSum":
        return self + (-other)

    def __neg__(self) -> "RadicalSum":
        return RadicalSum({s: -c for s, c in self._terms.items()})

    def scale(self, factor: Fraction | int) -> "RadicalSum":
        factor = Fraction(factor)
        return RadicalSum({s: c * factor for s, c in self._terms.items()})

    def __mul__(self, other: "RadicalSum") -> "RadicalSum":
        # sqrt(s1)*sqrt(s2) = f*sqrt(s') with s1*s2 = s'*f**2
        out: dict[int, Fraction] = {}
        for s1, c1 in self._terms.items():
            for s2, c2 in other._terms.items():
                s, f = squarefree_decompose(s1 * s2)
                out[s] = out.get(s, Fraction(0)) + c1 * c2 * f
        return RadicalSum(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadicalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s in sorted(self._terms):
            c = self._terms[s]
            if s == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append("sqrt(%d)" % s)
            elif c == -1:
                parts.append("-sqrt(%d)" % s)
            else:
                parts.append("%s*sqrt(%d)" % (c, s))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self) -> str:
        return "RadicalSum(%r)" % (self._terms,)


def sqrt_to_radical(x: SignedSqrt) -> RadicalSum:
    """Rewrite sign*sqrt(p/q) as (r/q')*sqrt(s) with s squarefree."""
    if x.sign == 0:
        return RadicalSum.zero()
    p, q = x.radicand.numerator, x.radicand.denominator
    # sqrt(p/q) = sqrt(p*q)/q
    s, f = squarefree_decompose(p * q)
    return RadicalSum({s: Fraction(x.sign * f, q)})


def radical_mul(a: SignedSqrt, b: SignedSqrt) -> RadicalSum:
    """Exact product of two signed square roots as a RadicalSum."""
    if a.sign == 0 or b.sign == 0:
        return RadicalSum.zero()
    return sqrt_to_radical(SignedSqrt(a.sign * b.sign, a.radicand * b.radicand))


def radical_sum_is_zero(x: RadicalSum) -> bool:
    """True iff the represented real number is exactly zero."""
    return x.is_zero()
