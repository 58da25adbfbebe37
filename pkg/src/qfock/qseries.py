"""Truncated power series in q with arbitrary-precision integer coefficients.

Every character in this package is either a polynomial or the truncation of
an infinite product, and all coefficients are integers (a non-integer
anywhere signals a bug upstream).  Dense storage is fine at desk scale.

Binary operations truncate to the shorter of the two cutoffs.  That silent
narrowing is occasionally exactly the bug one is hunting, so a strict mode
is available that raises on any cutoff mismatch instead.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterable, Iterator

_STRICT_CUTOFFS = False


class CutoffMismatch(ValueError):
    """Raised in strict mode when binary operands carry different cutoffs."""


@contextmanager
def strict_cutoffs() -> Iterator[None]:
    """Within this context, mixing cutoffs in binary operations raises."""
    global _STRICT_CUTOFFS
    old = _STRICT_CUTOFFS
    _STRICT_CUTOFFS = True
    try:
        yield
    finally:
        _STRICT_CUTOFFS = old


class QSeries:
    """A power series in q recorded up to and including degree ``cutoff``."""

    __slots__ = ("cutoff", "coeffs")

    def __init__(self, cutoff: int, coeffs: Iterable[int] = ()):
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        cs = list(coeffs)
        if len(cs) > cutoff + 1:
            raise ValueError("more coefficients than cutoff allows")
        cs.extend([0] * (cutoff + 1 - len(cs)))
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {c!r}")
        self.cutoff = cutoff
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(cutoff: int) -> "QSeries":
        return QSeries(cutoff)

    @staticmethod
    def one(cutoff: int) -> "QSeries":
        return QSeries.monomial(0, cutoff)

    @staticmethod
    def monomial(exponent: int, cutoff: int, coeff: int = 1) -> "QSeries":
        if exponent < 0:
            raise ValueError("negative exponents are not representable")
        cs = [0] * (cutoff + 1)
        if exponent <= cutoff:
            cs[exponent] = coeff
        return QSeries(cutoff, cs)

    # -- ring operations ----------------------------------------------

    def _common_cutoff(self, other: "QSeries") -> int:
        if _STRICT_CUTOFFS and self.cutoff != other.cutoff:
            raise CutoffMismatch(f"cutoff {self.cutoff} vs {other.cutoff}")
        return min(self.cutoff, other.cutoff)

    def __add__(self, other: "QSeries") -> "QSeries":
        d = self._common_cutoff(other)
        return QSeries(d, [a + b for a, b in zip(self.coeffs, other.coeffs)][: d + 1])

    def __sub__(self, other: "QSeries") -> "QSeries":
        d = self._common_cutoff(other)
        return QSeries(d, [a - b for a, b in zip(self.coeffs, other.coeffs)][: d + 1])

    def __neg__(self) -> "QSeries":
        return QSeries(self.cutoff, [-a for a in self.coeffs])

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, int):
            return QSeries(self.cutoff, [other * a for a in self.coeffs])
        d = self._common_cutoff(other)
        out = [0] * (d + 1)
        for i, a in enumerate(self.coeffs[: d + 1]):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs[: d + 1 - i]):
                if b:
                    out[i + j] += a * b
        return QSeries(d, out)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; requires the constant term to be +-1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("series is not invertible over the integers")
        d = self.cutoff
        inv = [0] * (d + 1)
        inv[0] = c0
        for k in range(1, d + 1):
            acc = sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -c0 * acc
        return QSeries(d, inv)

    def shift(self, exponent: int) -> "QSeries":
        """Multiply by q**exponent, keeping the cutoff."""
        if exponent < 0:
            raise ValueError("negative shift")
        cs = [0] * (self.cutoff + 1)
        for i, a in enumerate(self.coeffs):
            if i + exponent <= self.cutoff:
                cs[i + exponent] = a
        return QSeries(self.cutoff, cs)

    def truncate(self, cutoff: int) -> "QSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot extend a truncated series")
        return QSeries(cutoff, self.coeffs[: cutoff + 1])

    # -- queries --------------------------------------------------------

    def coeff(self, n: int) -> int:
        if not 0 <= n <= self.cutoff:
            raise IndexError(f"degree {n} outside recorded range 0..{self.cutoff}")
        return self.coeffs[n]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QSeries)
            and self.cutoff == other.cutoff
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.cutoff, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"q^{i}" if i > 1 else "q")
            else:
                terms.append(f"{c}*q^{i}" if i > 1 else f"{c}*q")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"QSeries({body} + O(q^{self.cutoff + 1}))"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"cutoff": self.cutoff, "coeffs": list(self.coeffs)}

    @staticmethod
    def from_json(data: dict) -> "QSeries":
        return QSeries(int(data["cutoff"]), [int(c) for c in data["coeffs"]])


def pochhammer(m: int, cutoff: int) -> QSeries:
    """The finite product over i = 1..m of (1 - q^i), truncated."""
    if m < 0:
        raise ValueError("pochhammer takes m >= 0; reciprocals of negative "
                         "index are handled by the bosonic-sum conventions")
    out = QSeries.one(cutoff)
    for i in range(1, m + 1):
        out = out * (QSeries.one(cutoff) - QSeries.monomial(i, cutoff))
        if i > cutoff and out.coeffs == tuple([out.coeffs[0]] + [0] * cutoff):
            # factors beyond the cutoff cannot change anything further
            break
    return out


def geometric(step: int, cutoff: int) -> QSeries:
    """1 / (1 - q^step) as a truncated series; step must be positive."""
    if step <= 0:
        raise ValueError("step must be positive")
    cs = [0] * (cutoff + 1)
    for k in range(0, cutoff + 1, step):
        cs[k] = 1
    return QSeries(cutoff, cs)


def euler_inverse(cutoff: int) -> QSeries:
    """1 / prod_{i>=1} (1 - q^i): the partition-counting series."""
    p = [1] + [0] * cutoff
    for i in range(1, cutoff + 1):
        for j in range(i, cutoff + 1):
            p[j] += p[j - i]
    return QSeries(cutoff, p)


def pochhammer_inverse(m: int, cutoff: int) -> QSeries:
    """1 / (q)_m as a truncated series, m >= 0."""
    if m < 0:
        raise ValueError("m must be >= 0")
    out = QSeries.one(cutoff)
    for i in range(1, m + 1):
        out = out * geometric(i, cutoff)
    return out
