"""Graded characters of the constrained sets, by three independent routes.

* direct enumeration of the member tuples (or gap-admissible labels);
* the finitized recursion in the row caps N, solved bottom-up with
  memoization and an exact series division;
* (in :mod:`qfock.calibration`) the bosonic alternating sums.

The recursion operates on the full cyclic shift vector a = (a_1..a_n) with
sum(a_i + 1) = p' held fixed; b is frozen per session since the recursion
never touches it.  Degree cutoffs are explicit everywhere: the row-capped
sets are infinite, so a character without a cutoff is not a finite object.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from qfock.partitions import (
    Parts,
    TupleConstraint,
    VacuumPattern,
    admissible_by_degree,
    enumerate_by_degree,
    enumerate_finitized,
    tuple_degree,
    vacuum_partition,
)
from qfock.qseries import QSeries, geometric


def char_direct(c: TupleConstraint, cutoff: int) -> QSeries:
    """Coefficient of q^d counts the members of degree d, for d <= cutoff."""
    counts = Counter(d for d, _ in enumerate_by_degree(c, cutoff))
    return QSeries(cutoff, [counts.get(d, 0) for d in range(cutoff + 1)])


def char_finitized(c: TupleConstraint, rows: Sequence[int], cutoff: int) -> QSeries:
    """Character of the row-capped set; zero series if any cap is negative."""
    if not c.cyclic:
        raise ValueError("row-capped characters are defined for cyclic constraints")
    counts = Counter(tuple_degree(t) for t in enumerate_finitized(c, rows, cutoff))
    return QSeries(cutoff, [counts.get(d, 0) for d in range(cutoff + 1)])


def char_kr(k: int, r: int, a: Sequence[int], cutoff: int) -> QSeries:
    """Deviation-degree character of the gap-admissible labels."""
    vac = vacuum_partition(k, r, a)
    counts = Counter(d for d, _ in admissible_by_degree(vac, cutoff))
    return QSeries(cutoff, [counts.get(d, 0) for d in range(cutoff + 1)])


# ---------------------------------------------------------------------------
# the finitized recursion


class RegionError(ValueError):
    """Inputs outside the parameter region where the recursion is a definition.

    Outside of N_{i+1} - N_i <= b_i + 1 (cyclically) with all N_i, a_i >= 0
    and p' > n the relations stop pinning the character down, so rather than
    guess we refuse.
    """


@dataclass
class RecursionSession:
    """Memoized solver for the row-capped characters at fixed (n, p', p, b).

    The two relations it implements, for the set with caps N and shift a
    (indices mod n):

    * if N_{i+1} - N_i <= b_i and a_{i-1} >= 1, splitting on whether row
      N_i of entry i is empty gives
      chi_a[N] = chi_a[N - 1_i] + q^{N_i} * chi_{a - 1_{i-1} + 1_i}[N];
    * if N_i - N_{i-1} = b_{i-1} + 1 and a_{i-1} = 0, row N_i of entry i is
      forced empty, so chi_a[N] = chi_a[N - 1_i].

    When every difference satisfies N_{i+1} - N_i <= b_i, the first relation
    unrolled around the cycle returns to the starting shift vector and
    yields (1 - q^{|N|}) * chi_a[N] = known lower terms, which is solved by
    exact series division (|N| > 0 there, so the factor is invertible in
    the truncated ring).
    """

    n: int
    p_prime: int
    p: int
    b: Parts
    cutoff: int

    def __post_init__(self):
        self.b = tuple(self.b)
        if len(self.b) != self.n:
            raise ValueError("b must have n entries")
        if sum(x + 1 for x in self.b) != self.p:
            raise ValueError("b is inconsistent with p")
        if self.p_prime <= self.n:
            raise RegionError("the recursion needs p' > n (some a_i nonzero)")
        self._memo: dict[tuple[Parts, Parts], QSeries] = {}

    # cyclic index helpers; i is 1-based
    def _b(self, i: int) -> int:
        return self.b[(i - 1) % self.n]

    def in_region(self, a: Sequence[int], rows: Sequence[int]) -> bool:
        n = self.n
        if any(x < 0 for x in a) or any(x < 0 for x in rows):
            return False
        return all(rows[i % n] - rows[i - 1] <= self.b[i - 1] + 1 for i in range(1, n + 1))

    def chi(self, a: Sequence[int], rows: Sequence[int]) -> QSeries:
        a = tuple(a)
        if len(a) != self.n or sum(x + 1 for x in a) != self.p_prime:
            raise ValueError("a must be a full cyclic vector consistent with p'")
        if not self.in_region(a, rows):
            raise RegionError(
                f"(a={a}, N={tuple(rows)}) outside the uniqueness region"
            )
        return self._chi(a, tuple(rows))

    def _chi(self, a: Parts, rows: Parts) -> QSeries:
        n = self.n
        if any(x < 0 for x in rows):
            return QSeries.zero(self.cutoff)
        if all(x == 0 for x in rows):
            return QSeries.one(self.cutoff)
        key = (a, rows)
        hit = self._memo.get(key)
        if hit is not None:
            return hit

        def dec(rs: Parts, i: int) -> Parts:
            out = list(rs)
            out[(i - 1) % n] -= 1
            return tuple(out)

        def move(av: Parts, i_from: int, i_to: int) -> Parts:
            out = list(av)
            out[(i_from - 1) % n] -= 1
            out[(i_to - 1) % n] += 1
            return tuple(out)

        def N(i: int) -> int:
            return rows[(i - 1) % n]

        if all(N(i + 1) - N(i) <= self._b(i) for i in range(1, n + 1)):
            # all-slack case: unroll around the cycle and divide
            i0 = next(i for i in range(1, n + 1) if a[(i - 2) % n] >= 1)
            total = QSeries.zero(self.cutoff)
            shift = 0
            for j in range(i0, i0 + n):
                av = move(a, i0 - 1, j - 1) if j > i0 else a
                total = total + QSeries.monomial(shift, self.cutoff) * self._chi(
                    av, dec(rows, j)
                )
                shift += N(j)
            size = sum(rows)
            result = total * geometric(size, self.cutoff)
        else:
            # some difference is at the extreme value b_i + 1
            i0 = next(
                i
                for i in range(1, n + 1)
                if N(i) - N(i - 1) == self._b(i - 1) + 1
                and N(i + 1) - N(i) <= self._b(i)
            )
            steps = a[(i0 - 2) % n]
            total = QSeries.zero(self.cutoff)
            av = a
            for j in range(steps):
                total = total + QSeries.monomial(j * N(i0), self.cutoff) * self._chi(
                    av, dec(rows, i0)
                )
                av = move(av, i0 - 1, i0)
            # after exhausting a_{i-1} the forced-empty-row relation applies
            result = total + QSeries.monomial(steps * N(i0), self.cutoff) * self._chi(
                av, dec(rows, i0)
            )

        self._memo[key] = result
        return result


def char_recursive(
    c: TupleConstraint,
    rows: Sequence[int],
    cutoff: int,
    session: RecursionSession | None = None,
) -> QSeries:
    """Row-capped character computed purely from the recursion relations."""
    if not c.cyclic:
        raise ValueError("the recursion is defined for cyclic constraints")
    if session is None:
        session = RecursionSession(c.n, c.p_prime, c.p, c.b, cutoff)
    elif (session.n, session.p_prime, session.p, session.b, session.cutoff) != (
        c.n,
        c.p_prime,
        c.p,
        c.b,
        cutoff,
    ):
        raise ValueError("session does not match the constraint")
    return session.chi(c.a, rows)


# ---------------------------------------------------------------------------
# open-chain sets and their closed form


@dataclass(frozen=True)
class EngineComparison:
    """Two series for the same set, plus whether they agree coefficientwise."""

    direct: QSeries
    closed_form: QSeries

    @property
    def agree(self) -> bool:
        return self.direct == self.closed_form

    def first_mismatch(self) -> int | None:
        for d in range(min(self.direct.cutoff, self.closed_form.cutoff) + 1):
            if self.direct.coeff(d) != self.closed_form.coeff(d):
                return d
        return None


def char_M_limit(
    a: Sequence[int],
    b: Sequence[int],
    cutoff: int,
    convention: str | None = None,
) -> EngineComparison:
    """Open-chain character two ways: enumeration vs the finite Weyl sum.

    The closed form is evaluated under the calibrated pairing convention
    (see :mod:`qfock.calibration`); the default is the frozen survivor of
    the calibration sweep.
    """
    from qfock import calibration

    n = len(a) + 1
    c = TupleConstraint(n, tuple(a), tuple(b), cyclic=False)
    key = convention if convention is not None else calibration.DEFAULT_CONVENTION
    direct = char_direct(c, cutoff)
    closed = calibration.bosonic_open_chain_char(key, n, tuple(a), tuple(b), cutoff)
    return EngineComparison(direct, closed)
