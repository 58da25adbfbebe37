"""Partitions, constrained partition tuples, and vacuum-tail partitions.

A partition is stored as a tuple of weakly decreasing positive integers with
the zero tail stripped, so equality is structural and tuples are directly
usable as dict keys.  Rows are addressed 1-based throughout; ``part(lam, s)``
returns 0 beyond the stored rows.

Three families of index sets live here:

* tuples of partitions subject to row-shifted domination conditions
  lam^(i)_s >= lam^(i+1)_{s+b_i} - a_i, either for i = 1..n-1 (open chain)
  or cyclically for i = 1..n;
* their finitized versions, where entry i is restricted to at most N_i rows;
* single partitions with a periodic "vacuum" tail and the gap condition
  L_j - L_{j+k} >= r.

Enumeration is recursive with constraint propagation: the admissible sets
are sparse inside the full product of partition sets, so each entry is
generated directly under the row caps induced by its neighbours rather than
generated freely and filtered.  All streams are emitted degree-major and
lexicographically within a degree, so runs are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterator, Sequence

Parts = tuple[int, ...]

INF = float("inf")


# ---------------------------------------------------------------------------
# plain partitions


def normalize_partition(seq: Sequence[int]) -> Parts:
    """Canonical form: validate weak decrease and strip the zero tail."""
    parts = list(seq)
    while parts and parts[-1] == 0:
        parts.pop()
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ValueError(f"not weakly decreasing: {seq!r}")
    if parts and parts[-1] < 0:
        raise ValueError(f"negative part in {seq!r}")
    return tuple(parts)


def part(lam: Parts, s: int) -> int:
    """Row s (1-based) of lam, zero beyond the stored rows."""
    if s < 1:
        raise IndexError("rows are 1-based")
    return lam[s - 1] if s <= len(lam) else 0


def degree(lam: Parts) -> int:
    return sum(lam)


def tuple_degree(t: tuple[Parts, ...]) -> int:
    return sum(sum(lam) for lam in t)


def addable_rows(lam: Parts) -> list[int]:
    """Rows where one box may be added keeping weak decrease."""
    rows = [s for s in range(2, len(lam) + 1) if lam[s - 2] > lam[s - 1]]
    return [1] + rows + [len(lam) + 1] if lam else [1]


def removable_rows(lam: Parts) -> list[int]:
    """Rows where one box may be removed keeping weak decrease."""
    return [
        s
        for s in range(1, len(lam) + 1)
        if lam[s - 1] > (lam[s] if s < len(lam) else 0)
    ]


def add_box(lam: Parts, s: int) -> Parts:
    rows = list(lam) + [0] * (s - len(lam))
    rows[s - 1] += 1
    return normalize_partition(rows)


def remove_box(lam: Parts, s: int) -> Parts:
    rows = list(lam)
    rows[s - 1] -= 1
    return normalize_partition(rows)


def partitions_of(d: int, max_part: int | None = None) -> Iterator[Parts]:
    """All partitions of d with parts bounded by max_part, largest part first."""
    if d == 0:
        yield ()
        return
    top = d if max_part is None else min(max_part, d)
    for first in range(top, 0, -1):
        for rest in partitions_of(d - first, first):
            yield (first,) + rest


def bounded_partitions(
    budget: int,
    max_rows: int | float = INF,
    upper=None,
    lower=None,
) -> Iterator[Parts]:
    """Partitions with total <= budget under row-wise bounds.

    ``upper`` and ``lower`` are callables row -> bound (1-based); ``upper``
    may return INF.  Lower bounds must be finitely supported, i.e. become 0
    from some row on, which callers guarantee.
    """

    def lo(s: int) -> int:
        return 0 if lower is None else max(0, lower(s))

    def hi(s: int):
        return INF if upper is None else upper(s)

    # total of all outstanding lower bounds from row s on; finite support
    # makes the loop below terminate
    def min_tail(s: int) -> int:
        total = 0
        for j in count(s):
            v = lo(j)
            if v == 0:
                break
            total += v
        return total

    def rec(s: int, prev: int, left: int, acc: list[int]) -> Iterator[Parts]:
        if s > max_rows or prev == 0:
            if min_tail(s) == 0:
                yield tuple(acc)
            return
        low = lo(s)
        high = min(prev, left - (min_tail(s + 1)), hi(s))
        if low > high:
            return
        if low == 0:
            yield tuple(acc)  # stop here; all later rows zero
            start = 1
        else:
            start = low
        for v in range(start, int(high) + 1):
            acc.append(v)
            yield from rec(s + 1, v, left - v, acc)
            acc.pop()

    yield from rec(1, budget, budget, [])


# ---------------------------------------------------------------------------
# constrained tuples


def satisfies_pair(lam: Parts, mu: Parts, a: int, b: int) -> bool:
    """Row-shifted domination: lam_s >= mu_{s+b} - a for every s >= 1.

    Only rows with mu_{s+b} > a can fail, so the scan is finite.
    """
    if a < 0 or b < 0:
        raise ValueError("shift parameters must be non-negative")
    for s in range(1, max(0, len(mu) - b) + 1):
        if part(lam, s) < part(mu, s + b) - a:
            return False
    return True


@dataclass(frozen=True)
class TupleConstraint:
    """Shift data (a, b) for an n-tuple of partitions.

    Cyclic constraints store full length-n vectors and close the chain with
    the condition relating entry n back to entry 1; open-chain constraints
    store length n-1 vectors and impose conditions for i = 1..n-1 only.
    """

    n: int
    a: Parts
    b: Parts
    cyclic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if self.n < 2:
            raise ValueError("need at least two tuple entries")
        want = self.n if self.cyclic else self.n - 1
        if len(self.a) != want or len(self.b) != want:
            raise ValueError(
                f"expected {want} shift entries for n={self.n} "
                f"({'cyclic' if self.cyclic else 'open'}), got {len(self.a)}/{len(self.b)}"
            )
        if any(x < 0 for x in self.a) or any(x < 0 for x in self.b):
            raise ValueError("shift entries must be non-negative")

    @property
    def p_prime(self) -> int:
        if not self.cyclic:
            raise ValueError("p' is defined for cyclic constraints only")
        return sum(x + 1 for x in self.a)

    @property
    def p(self) -> int:
        if not self.cyclic:
            raise ValueError("p is defined for cyclic constraints only")
        return sum(x + 1 for x in self.b)

    def conditions(self) -> list[tuple[int, int, int, int]]:
        """(i, j, a_i, b_i) with the condition tying entry i to entry j."""
        out = []
        for idx in range(len(self.a)):
            i = idx + 1
            j = 1 if (self.cyclic and i == self.n) else i + 1
            out.append((i, j, self.a[idx], self.b[idx]))
        return out

    def pair_shift(self, i: int, j: int) -> tuple[int, int]:
        """Composite shift (a_ij, b_ij) between entries i < j of a cyclic tuple.

        Chaining the elementary conditions i -> i+1 -> ... -> j composes as
        a_ij = sum(a_l + 1) - 1 and likewise for b.
        """
        if not self.cyclic:
            raise ValueError("pairwise shifts are for cyclic constraints")
        if not 1 <= i < j <= self.n:
            raise ValueError("need 1 <= i < j <= n")
        a_ij = sum(self.a[l] + 1 for l in range(i - 1, j - 1)) - 1
        b_ij = sum(self.b[l] + 1 for l in range(i - 1, j - 1)) - 1
        return a_ij, b_ij


def is_member(t: tuple[Parts, ...], c: TupleConstraint) -> bool:
    """Whether the tuple satisfies every shift condition of the constraint."""
    if len(t) != c.n:
        raise ValueError(f"tuple has {len(t)} entries, constraint wants {c.n}")
    return all(
        satisfies_pair(t[i - 1], t[j - 1], a, b) for i, j, a, b in c.conditions()
    )


def _caps_from(prev: Parts, a: int, b: int):
    """Row caps on the next entry induced by prev_s >= next_{s+b} - a."""

    def upper(s: int):
        if s <= b:
            return INF
        return part(prev, s - b) + a

    return upper


def _tuples_stream(
    c: TupleConstraint,
    max_degree: int,
    rows: Sequence[int] | None = None,
) -> Iterator[tuple[Parts, ...]]:
    """All members with total degree <= max_degree (and row caps, if given)."""
    n = c.n
    maxrows = [INF] * n if rows is None else [max(r, 0) if r >= 0 else -1 for r in rows]
    if rows is not None and any(r < 0 for r in rows):
        return  # a negative row cap empties the set

    conds = c.conditions()

    def entry_stream(i: int, chosen: list[Parts], left: int) -> Iterator[Parts]:
        upper = None
        lower = None
        if i > 1:
            _, _, a, b = conds[i - 2]
            upper = _caps_from(chosen[i - 2], a, b)
        if c.cyclic and i == n:
            _, _, a_n, b_n = conds[n - 1]
            first = chosen[0]

            def lower(s: int, first=first, a_n=a_n, b_n=b_n):
                return part(first, s + b_n) - a_n

        yield from bounded_partitions(left, maxrows[i - 1], upper, lower)

    def rec(i: int, chosen: list[Parts], left: int) -> Iterator[tuple[Parts, ...]]:
        if i > n:
            yield tuple(chosen)
            return
        for lam in entry_stream(i, chosen, left):
            chosen.append(lam)
            yield from rec(i + 1, chosen, left - sum(lam))
            chosen.pop()

    yield from rec(1, [], max_degree)


def enumerate_by_degree(
    c: TupleConstraint, max_degree: int
) -> Iterator[tuple[int, tuple[Parts, ...]]]:
    """Members of degree <= max_degree, degree-major then lexicographic."""
    if max_degree < 0:
        return
    buckets: list[list[tuple[Parts, ...]]] = [[] for _ in range(max_degree + 1)]
    for t in _tuples_stream(c, max_degree):
        buckets[tuple_degree(t)].append(t)
    for d, bucket in enumerate(buckets):
        for t in sorted(bucket):
            yield d, t


def enumerate_finitized(
    c: TupleConstraint, rows: Sequence[int], max_degree: int
) -> list[tuple[Parts, ...]]:
    """Members with entry i limited to rows[i-1] rows, up to max_degree.

    The row-capped sets are infinite in degree (part sizes are unbounded),
    so an explicit degree cap is always required.  Any negative row cap
    empties the set.
    """
    if len(rows) != c.n:
        raise ValueError("row-cap vector length must equal n")
    out = list(_tuples_stream(c, max_degree, rows))
    out.sort(key=lambda t: (tuple_degree(t), t))
    return out


# ---------------------------------------------------------------------------
# vacuum-tail partitions and the gap condition


@dataclass(frozen=True)
class VacuumPattern:
    """The periodic ground configuration: entry(j) drops by r every k rows.

    Within one period the drops are the partial sums of the weight vector a,
    whose entries must sum to r.
    """

    k: int
    r: int
    a: Parts

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if self.k < 1:
            raise ValueError("period k must be >= 1")
        if len(self.a) != self.k:
            raise ValueError(f"weight vector must have {self.k} entries")
        if any(x < 0 for x in self.a):
            raise ValueError("weights must be non-negative")
        if sum(self.a) != self.r:
            raise ValueError(f"weights must sum to r={self.r}, got {sum(self.a)}")

    def entry(self, j: int) -> int:
        """Row j (1-based) of the ground configuration; O(1)."""
        if j < 1:
            raise IndexError("rows are 1-based")
        nu, i = divmod(j - 1, self.k)
        return -nu * self.r - sum(self.a[:i])

    def drop(self, j: int) -> int:
        """entry(j) - entry(j+1) >= 0."""
        return self.entry(j) - self.entry(j + 1)


def vacuum_partition(k: int, r: int, a: Sequence[int]) -> VacuumPattern:
    return VacuumPattern(k, r, tuple(a))


@dataclass(frozen=True)
class TailedPartition:
    """A weakly decreasing sequence agreeing with a vacuum pattern far out.

    ``devs[j-1]`` is entry(j) minus the vacuum entry; trailing zero
    deviations are stripped so equality is structural.  Deviations may be
    negative (such labels appear as raw operator targets); the gap condition
    is a separate membership test.
    """

    vacuum: VacuumPattern
    devs: tuple[int, ...]

    def __post_init__(self):
        devs = tuple(self.devs)
        while devs and devs[-1] == 0:
            devs = devs[:-1]
        object.__setattr__(self, "devs", devs)
        for j in range(1, len(devs) + 1):
            if self.entry(j) < self.entry(j + 1):
                raise ValueError("entries must be weakly decreasing")

    def entry(self, j: int) -> int:
        base = self.vacuum.entry(j)
        return base + (self.devs[j - 1] if j <= len(self.devs) else 0)

    def deviation_degree(self) -> int:
        return sum(self.devs)

    def head(self) -> list[int]:
        return [self.entry(j) for j in range(1, len(self.devs) + 1)]

    def bump(self, j: int, delta: int) -> "TailedPartition":
        """New label with entry(j) changed by delta; may raise if not decreasing."""
        devs = list(self.devs) + [0] * max(0, j - len(self.devs))
        devs[j - 1] += delta
        return TailedPartition(self.vacuum, tuple(devs))

    def to_json(self) -> dict:
        v = self.vacuum
        return {"head": self.head(), "k": v.k, "r": v.r, "a": list(v.a)}

    @staticmethod
    def from_json(data: dict) -> "TailedPartition":
        vac = VacuumPattern(int(data["k"]), int(data["r"]), tuple(data["a"]))
        head = [int(x) for x in data["head"]]
        devs = tuple(h - vac.entry(j + 1) for j, h in enumerate(head))
        return TailedPartition(vac, devs)


def is_kr_admissible(L: TailedPartition, k: int | None = None, r: int | None = None) -> bool:
    """Gap condition entry(j) - entry(j+k) >= r for all j.

    Rows past the stored deviations sit on the vacuum, where the gap is
    exactly r, so only finitely many rows need checking.  In terms of
    deviations the condition reads devs[j] >= devs[j+k].
    """
    k = L.vacuum.k if k is None else k
    r = L.vacuum.r if r is None else r
    if (k, r) != (L.vacuum.k, L.vacuum.r):
        raise ValueError("gap parameters must match the vacuum pattern")
    for j in range(1, len(L.devs) + 1):
        if L.entry(j) - L.entry(j + k) < r:
            return False
    return True


def admissible_by_degree(
    vac: VacuumPattern, max_degree: int
) -> Iterator[tuple[int, TailedPartition]]:
    """Admissible labels of deviation degree <= max_degree.

    Direct recursion over deviation rows: d_j <= d_{j-k} keeps the gap
    condition, d_j <= d_{j-1} + drop(j-1) keeps weak decrease, and the
    remaining budget caps everything.  Once k consecutive rows carry zero
    deviation every later row is forced to zero (its ancestor k rows up is
    already zero), so the recursion terminates.  This enumerator never
    references the tuple picture, so it can serve as an independent
    cross-check for it.
    """
    k = vac.k
    found: set[tuple[int, ...]] = set()

    def rec(j: int, left: int, zrun: int, acc: list[int]):
        devs = tuple(acc)
        while devs and devs[-1] == 0:
            devs = devs[:-1]
        found.add(devs)
        if left == 0 or zrun >= k:
            return
        hi = left
        if j > k:
            hi = min(hi, acc[j - 1 - k])
        if j > 1:
            hi = min(hi, acc[j - 2] + vac.drop(j - 1))
        for v in range(1, hi + 1):
            acc.append(v)
            rec(j + 1, left - v, 0, acc)
            acc.pop()
        acc.append(0)
        rec(j + 1, left, zrun + 1, acc)
        acc.pop()

    rec(1, max_degree, 0, [])
    for deg, devs in sorted((sum(d), d) for d in found):
        yield deg, TailedPartition(vac, devs)


# ---------------------------------------------------------------------------
# interleaving bijection between cyclic tuples (b = 0) and admissible labels


def interleave(t: tuple[Parts, ...], vac: VacuumPattern) -> TailedPartition:
    """Weave an n-tuple into one vacuum-tailed partition, row s of entry i
    landing at global row n*s + i.  Defined on the cyclic b = 0 set with
    k = n; the image is gap-admissible exactly when the tuple is a member,
    and weaving preserves total degree.
    """
    n = vac.k
    if len(t) != n:
        raise ValueError(f"tuple must have {n} entries")
    depth = max((len(lam) for lam in t), default=0)
    devs = []
    for s in range(depth):
        for i in range(1, n + 1):
            devs.append(part(t[i - 1], s + 1))
    try:
        label = TailedPartition(vac, tuple(devs))
    except ValueError as exc:
        raise ValueError(f"tuple is not in the admissible set: {exc}") from exc
    if not is_kr_admissible(label):
        raise ValueError("tuple is not in the admissible set: gap condition fails")
    return label


def split_interleaved(L: TailedPartition) -> tuple[Parts, ...]:
    """Inverse of interleave: deviations along each residue class mod k."""
    n = L.vacuum.k
    cols: list[list[int]] = [[] for _ in range(n)]
    for j, d in enumerate(L.devs):
        cols[j % n].append(d)
    return tuple(normalize_partition(col) for col in cols)


def interleave_constraint(vac: VacuumPattern) -> TupleConstraint:
    """The cyclic constraint matched to a vacuum pattern with k = n.

    The first n-1 shifts have b_i = 0; closing the cycle at total level
    p = n + 1 forces b_n = 1, which is exactly the condition the wrap-around
    rows of the interleaving satisfy.
    """
    n = vac.k
    return TupleConstraint(n, vac.a, (0,) * (n - 1) + (1,), cyclic=True)
