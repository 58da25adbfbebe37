"""Rational functions of the spectral variable in pole-zero form.

Every diagonal eigenvalue and every multiplier attached to a matrix
coefficient in this package is a finite product of factors (1 - w/z) with
nonzero rational w.  Storing the multiset of w's with signed multiplicities
makes three things exact and cheap:

* cancellation: a numerator and denominator factor with the same w cancel
  at construction time.  At a resonance this implements the prescription
  "cancel whatever is identically equal on the resonance variety, then
  substitute": two monomial roots coincide as rationals exactly when they
  coincide identically on the variety, by the prime-power realization;
* evaluation at a delta support: a surviving denominator root at the
  support is a genuine pole and raises, rather than limping to a limit;
* comparison: equal multisets iff equal rational functions, so simple-
  spectrum checks are exact.

The two boundary expansions recover the mode sequences: around z = infinity
the coefficients of z^{-k} (plus modes), around z = 0 the coefficients of
z^{k} (minus modes).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable


class PoleError(ArithmeticError):
    """Evaluation at a point where a denominator factor survives."""

    def __init__(self, support: Fraction, context: str = ""):
        self.support = support
        self.context = context
        msg = f"pole at support {support}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


def _mul_trunc(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x == 0 or i > order:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] += x * y
    return out


class RationalFunction:
    """Product of (1 - w/z)**m over nonzero rational roots w, m in Z."""

    __slots__ = ("factors",)

    def __init__(self, factors: dict | None = None):
        clean = {}
        for w, m in (factors or {}).items():
            if m == 0:
                continue
            w = Fraction(w)
            if w == 0:
                raise ValueError("roots must be nonzero")
            clean[w] = clean.get(w, 0) + m
        self.factors = {w: m for w, m in clean.items() if m != 0}

    # -- construction ---------------------------------------------------

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction()

    @staticmethod
    def from_zeros_poles(zeros: Iterable, poles: Iterable) -> "RationalFunction":
        c: Counter = Counter()
        for w in zeros:
            c[Fraction(w)] += 1
        for w in poles:
            c[Fraction(w)] -= 1
        return RationalFunction(dict(c))

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        c = dict(self.factors)
        for w, m in other.factors.items():
            c[w] = c.get(w, 0) + m
        return RationalFunction(c)

    def reciprocal(self) -> "RationalFunction":
        return RationalFunction({w: -m for w, m in self.factors.items()})

    # -- structure ------------------------------------------------------

    def is_balanced(self) -> bool:
        """Equal numbers of zeros and poles (with multiplicity)."""
        return sum(self.factors.values()) == 0

    def fingerprint(self) -> frozenset:
        return frozenset(self.factors.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunction) and self.factors == other.factors

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        if not self.factors:
            return "RationalFunction(1)"
        bits = [f"(1-({w})/z)^{m}" for w, m in sorted(self.factors.items())]
        return "RationalFunction(" + " ".join(bits) + ")"

    # -- evaluation and expansion ----------------------------------------

    def value_at(self, z: Fraction, context: str = "") -> Fraction:
        z = Fraction(z)
        if z == 0:
            raise ValueError("evaluate expansions at 0 via minus modes")
        num = Fraction(1)
        den = Fraction(1)
        for w, m in self.factors.items():
            f = 1 - w / z
            if m > 0:
                num *= f**m
            else:
                if f == 0:
                    raise PoleError(z, context)
                den *= f ** (-m)
        return num / den

    def pole_roots(self) -> list[Fraction]:
        return [w for w, m in self.factors.items() if m < 0]

    def plus_modes(self, order: int) -> list[Fraction]:
        """Coefficients of z^{-k}, k = 0..order, in the expansion at infinity."""
        series = [Fraction(1)] + [Fraction(0)] * order
        for w, m in self.factors.items():
            if m > 0:
                for _ in range(m):
                    series = _mul_trunc(series, [Fraction(1), -w], order)
            else:
                geo = [w**k for k in range(order + 1)]
                for _ in range(-m):
                    series = _mul_trunc(series, geo, order)
        return series

    def minus_modes(self, order: int) -> list[Fraction]:
        """Coefficients of z^{k}, k = 0..order, in the expansion at zero.

        Index k holds the mode of z^k; only balanced functions expand this
        way (otherwise there is a z power out front).
        """
        if not self.is_balanced():
            raise ValueError("expansion at 0 needs a balanced function")
        const = Fraction(1)
        for w, m in self.factors.items():
            const *= w**m
        series = [Fraction(1)] + [Fraction(0)] * order
        for w, m in self.factors.items():
            inv = 1 / w
            if m > 0:
                for _ in range(m):
                    series = _mul_trunc(series, [Fraction(1), -inv], order)
            else:
                geo = [inv**k for k in range(order + 1)]
                for _ in range(-m):
                    series = _mul_trunc(series, geo, order)
        return [const * c for c in series]

    def boundary_values(self) -> tuple[Fraction, Fraction]:
        """(value at infinity, value at zero) for a balanced function."""
        if not self.is_balanced():
            raise ValueError("boundary values need a balanced function")
        const = Fraction(1)
        for w, m in self.factors.items():
            const *= w**m
        return Fraction(1), const

    def numerator_coeffs(self) -> list[Fraction]:
        """Coefficients of the numerator polynomial in 1/z."""
        out = [Fraction(1)]
        for w, m in self.factors.items():
            for _ in range(max(m, 0)):
                out = _mul_trunc(out, [Fraction(1), -w], len(out))
        return out

    def denominator_coeffs(self) -> list[Fraction]:
        out = [Fraction(1)]
        for w, m in self.factors.items():
            for _ in range(max(-m, 0)):
                out = _mul_trunc(out, [Fraction(1), -w], len(out))
        return out
