"""Classical weight-space arithmetic for sl_n and the bosonic character sums.

Weights are stored by their coefficients on the fundamental weights
omega_1..omega_{n-1} (the affine omega_0 and omega_n project to zero), roots
by integer coefficients on the simple roots alpha_1..alpha_{n-1}.  The
bilinear form is normalized by (alpha_i, alpha_j) = Cartan matrix and
(omega_i, alpha_j) = delta_ij, hence (omega_i, omega_j) = min(i,j) - ij/n.

The two sums computed here:

* ``bosonic_sum`` -- the full alternating sum over the symmetric group and
  the classical root lattice, with a provably complete lattice truncation;
* ``finitized_terms`` -- its row-capped version, a finite sum whose w-term
  carries the Gaussian multinomial (q)_{|N|} / prod_i (q)_{N_i - d_i(w)},
  with 1/(q)_m = 0 for m < 0.

Both produce exact integer q-exponents; a non-integer pairing anywhere is
an error, not a rounding issue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as iter_permutations, product

from qfock.qseries import QSeries, pochhammer, pochhammer_inverse


class PairingIntegralityError(ValueError):
    """A pairing that must be an integer q-exponent came out fractional."""


class NegativeExponentError(ValueError):
    """A q-exponent in the full alternating sum came out negative."""


@dataclass(frozen=True)
class Weight:
    """Classical weight: coefficients on omega_1..omega_{n-1}."""

    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if len(self.coords) != self.n - 1:
            raise ValueError("weight needs n-1 coordinates")

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Weight":
        return Weight(self.n, tuple(Fraction(c) * x for x in self.coords))


@dataclass(frozen=True)
class Root:
    """Classical root-lattice element: integer coefficients on alpha_i."""

    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.n - 1:
            raise ValueError("root needs n-1 coordinates")

    def as_weight(self) -> Weight:
        """alpha_i = 2 omega_i - omega_{i-1} - omega_{i+1} (edge terms drop)."""
        n = self.n
        out = [Fraction(0)] * (n - 1)
        for i, m in enumerate(self.coords, start=1):
            if m == 0:
                continue
            out[i - 1] += 2 * m
            if i - 2 >= 0:
                out[i - 2] -= m
            if i <= n - 2:
                out[i] -= m
        return Weight(n, tuple(out))


def omega(n: int, i: int) -> Weight:
    """Fundamental weight omega_{i mod n}; indices 0 and n project to zero."""
    i %= n
    coords = [Fraction(0)] * (n - 1)
    if i != 0:
        coords[i - 1] = Fraction(1)
    return Weight(n, tuple(coords))


def rho(n: int) -> Weight:
    return Weight(n, tuple(Fraction(1) for _ in range(n - 1)))


def weight_from_shifts(n: int, shifts) -> Weight:
    """Sum of shifts[i-1] * omega_i; an index equal to n projects out."""
    coords = [Fraction(0)] * (n - 1)
    for i, c in enumerate(shifts, start=1):
        if i % n != 0:
            coords[(i % n) - 1] += c
    return Weight(n, tuple(coords))


def gram_pairing(x, y) -> Fraction:
    """Symmetric bilinear form on the span of the classical weights."""
    if isinstance(x, Root) and isinstance(y, Root):
        n = x.n
        total = Fraction(0)
        for i, a in enumerate(x.coords, start=1):
            if a == 0:
                continue
            for j, b in enumerate(y.coords, start=1):
                if b == 0:
                    continue
                if i == j:
                    total += 2 * a * b
                elif abs(i - j) == 1:
                    total -= a * b
        return total
    if isinstance(x, Root):
        x, y = y, x
    if isinstance(y, Root):
        # (omega_i, alpha_j) = delta_ij
        return sum(
            (Fraction(a) * b for a, b in zip(x.coords, y.coords)),
            Fraction(0),
        )
    n = x.n
    total = Fraction(0)
    for i, a in enumerate(x.coords, start=1):
        if a == 0:
            continue
        for j, b in enumerate(y.coords, start=1):
            if b == 0:
                continue
            total += a * b * (Fraction(min(i, j)) - Fraction(i * j, n))
    return total


def as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise PairingIntegralityError(f"{what} = {x} is not an integer")
    return int(x)


# ---------------------------------------------------------------------------
# symmetric group action


def perm_sign(sigma: tuple[int, ...]) -> int:
    sign = 1
    arr = list(sigma)
    for i in range(len(arr)):
        for j in range(i + 1, len(arr)):
            if arr[i] > arr[j]:
                sign = -sign
    return sign


def _adjacent_word(sigma: tuple[int, ...]) -> list[int]:
    """Positions m such that sigma = s_{m_k} ... s_{m_1} (apply m_1 first)."""
    arr = list(sigma)
    word = []
    changed = True
    while changed:
        changed = False
        for m in range(1, len(arr)):
            if arr[m - 1] > arr[m]:
                arr[m - 1], arr[m] = arr[m], arr[m - 1]
                word.append(m)
                changed = True
    return word


def reflect(x: Weight, i: int) -> Weight:
    """Simple reflection: x - (x, alpha_i) alpha_i."""
    alpha = Root(x.n, tuple(1 if j == i else 0 for j in range(1, x.n)))
    return x - alpha.as_weight().scale(gram_pairing(x, alpha))


def weyl_act(sigma: tuple[int, ...], x: Weight) -> Weight:
    """Action of a permutation on a classical weight.

    Generated by the simple reflections: the adjacent-transposition word of
    sigma is applied reflection by reflection.
    """
    if len(sigma) != x.n:
        raise ValueError("permutation length must equal n")
    for m in _adjacent_word(sigma):
        x = reflect(x, m)
    return x


def weyl_act_coordinates(sigma: tuple[int, ...], x: Weight) -> Weight:
    """Same action computed in permuted-coordinate form (cross-check route)."""
    n = x.n
    v = [Fraction(0)] * (n + 1)
    for j in range(n - 1, 0, -1):
        v[j] = v[j + 1] + x.coords[j - 1]
    inv = [0] * (n + 1)
    for i, s in enumerate(sigma, start=1):
        inv[s] = i
    w = [v[inv[j]] for j in range(1, n + 1)]
    return Weight(n, tuple(w[i - 1] - w[i] for i in range(1, n)))


def all_permutations(n: int):
    return iter_permutations(range(1, n + 1))


# ---------------------------------------------------------------------------
# the full alternating sum

_LEAST_EIGENVALUE = {2: Fraction(2), 3: Fraction(1)}


def _least_eigenvalue_bound(n: int) -> Fraction:
    # safe lower bound for the Cartan form's least eigenvalue
    return _LEAST_EIGENVALUE.get(n, Fraction(4, n * n))


def bosonic_sum(
    p_prime: int, p: int, eta: Weight, xi: Weight, cutoff: int
) -> QSeries:
    """Alternating sum over (permutation, root-lattice) pairs, truncated.

    Exponent of the (sigma, alpha) term:
    (p'p/2)(alpha, alpha) + (p' sigma(xi+rho) - p (eta+rho), alpha)
      + (xi+rho - sigma(xi+rho), eta+rho).
    The lattice is truncated at a radius where the positive-definite
    quadratic part provably dominates the linear part beyond the cutoff.
    """
    n = eta.n
    if xi.n != n:
        raise ValueError("weights live in different ranks")
    r = rho(n)
    eta_r = eta + r
    xi_r = xi + r
    lam_min = _least_eigenvalue_bound(n)
    coeffs = [0] * (cutoff + 1)
    for sigma in all_permutations(n):
        sign = perm_sign(sigma)
        s_xi_r = weyl_act(sigma, xi_r)
        lin_weight = s_xi_r.scale(p_prime) - eta_r.scale(p)
        ell = [
            gram_pairing(lin_weight, Root(n, tuple(1 if j == i else 0 for j in range(1, n))))
            for i in range(1, n)
        ]
        const = gram_pairing(xi_r - s_xi_r, eta_r)
        ell_sum = sum(abs(e) for e in ell)
        radius = 0
        while True:
            bound = Fraction(p_prime * p, 2) * lam_min * radius * radius - ell_sum * radius + const
            slope = Fraction(p_prime * p) * lam_min * radius - ell_sum
            if radius > 0 and bound > cutoff and slope > 0:
                break
            radius += 1
        for m in product(range(-radius, radius + 1), repeat=n - 1):
            alpha = Root(n, m)
            expo = (
                Fraction(p_prime * p, 2) * gram_pairing(alpha, alpha)
                + gram_pairing(lin_weight, alpha)
                + const
            )
            e = as_int(expo, "bosonic exponent")
            if e <= cutoff:
                if e < 0:
                    raise NegativeExponentError(
                        f"negative exponent {e} at sigma={sigma}, alpha={m}"
                    )
                coeffs[e] += sign
    return QSeries(cutoff, coeffs)


def open_chain_sum(eta: Weight, xi: Weight, cutoff: int) -> QSeries:
    """Permutation-only alternating sum (the lattice collapsed away)."""
    n = eta.n
    r = rho(n)
    eta_r = eta + r
    xi_r = xi + r
    coeffs = [0] * (cutoff + 1)
    for sigma in all_permutations(n):
        expo = gram_pairing(xi_r - weyl_act(sigma, xi_r), eta_r)
        e = as_int(expo, "open-chain exponent")
        if e < 0:
            raise NegativeExponentError(f"negative exponent {e} at sigma={sigma}")
        if e <= cutoff:
            coeffs[e] += perm_sign(sigma)
    return QSeries(cutoff, coeffs)


# ---------------------------------------------------------------------------
# the finitized sum


def gaussian_multinomial(parts: list[int]) -> QSeries:
    """(q)_{sum} / prod (q)_{m}: an exact polynomial, returned at its degree."""
    total = sum(parts)
    deg = (total * total - sum(m * m for m in parts)) // 2
    out = pochhammer(total, deg)
    for m in parts:
        out = out * pochhammer_inverse(m, deg)
    return out


def finitized_terms(
    p_prime: int, p: int, eta: Weight, xi: Weight, rows
) -> dict[int, int]:
    """Exponent -> coefficient map of the row-capped alternating sum.

    Defined by the formula for arbitrary integer caps: a cap may go
    negative during identity checking, and the term-level pochhammer
    conventions (1/(q)_m = 0 for m < 0) already do the right thing -- the
    sum need not vanish there.  Negative exponents are representable here
    too; the public series wrapper insists they have cancelled.
    """
    n = eta.n
    rows = tuple(rows)
    if len(rows) != n:
        raise ValueError("row caps must have n entries")
    if sum(rows) < 0:
        return {}  # the pochhammer arguments sum to |N|; none can be >= 0
    r = rho(n)
    eta_r = eta + r
    xi_r = xi + r
    total_rows = sum(rows)
    hi = [sum(rows[:i]) for i in range(1, n)]
    lo = [-sum(rows[i:]) for i in range(1, n)]
    out: dict[int, int] = {}
    for sigma in all_permutations(n):
        sign = perm_sign(sigma)
        s_xi_r = weyl_act(sigma, xi_r)
        base = s_xi_r - xi_r  # translation part comes on top of this
        s = [as_int(gram_pairing(base, omega(n, i)), "weight pairing") for i in range(1, n)]
        lin_weight = s_xi_r.scale(p_prime) - eta_r.scale(p)
        const = gram_pairing(xi_r - s_xi_r, eta_r)
        ranges = []
        for i in range(n - 1):
            lo_m = -(-(lo[i] - s[i]) // p)  # ceil((lo - s)/p)
            hi_m = (hi[i] - s[i]) // p
            ranges.append(range(lo_m, hi_m + 1))
        for m in product(*ranges):
            x = [0] + [s[i] + p * m[i] for i in range(n - 1)] + [0]
            args = [rows[i] - (x[i + 1] - x[i]) for i in range(n)]
            if any(a < 0 for a in args):
                continue
            alpha = Root(n, m)
            expo = (
                Fraction(p_prime * p, 2) * gram_pairing(alpha, alpha)
                + gram_pairing(lin_weight, alpha)
                + const
            )
            e = as_int(expo, "finitized exponent")
            poly = gaussian_multinomial(args)
            for d, coeff in enumerate(poly.coeffs):
                if coeff:
                    key = e + d
                    out[key] = out.get(key, 0) + sign * coeff
    return {k: v for k, v in out.items() if v != 0}


def bosonic_sum_finitized(
    p_prime: int, p: int, eta: Weight, xi: Weight, rows
) -> QSeries:
    """The row-capped alternating sum as an exact polynomial."""
    if any(N < 0 for N in rows):
        raise ValueError("row caps must be non-negative here")
    terms = finitized_terms(p_prime, p, eta, xi, rows)
    if any(k < 0 for k in terms):
        raise NegativeExponentError(f"negative exponents survive: {sorted(terms)[:3]}")
    deg = max(terms, default=0)
    coeffs = [0] * (deg + 1)
    for k, v in terms.items():
        coeffs[k] = v
    return QSeries(deg, coeffs)


# ---------------------------------------------------------------------------
# term-level identities of the finitized sum


def _shift_terms(terms: dict[int, int], by: int) -> dict[int, int]:
    return {k + by: v for k, v in terms.items()}


def _sub_terms(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
        if out[k] == 0:
            del out[k]
    return out


def _add_terms(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


@dataclass
class FinitizedIdentityReport:
    """Outcome of the three structural checks of the row-capped sum."""

    recurrence: list[bool]
    vanishing: bool | None
    normalization: bool | None
    witness: dict | None

    @property
    def passed(self) -> bool:
        fine = all(self.recurrence)
        fine &= self.vanishing in (True, None)
        fine &= self.normalization in (True, None)
        return fine


def vanishing_hypothesis_holds(eta: Weight, xi: Weight, rows) -> bool:
    """Walls condition: eta+rho orthogonal to every simple root and the row
    caps follow the xi+rho increments around the cycle."""
    n = eta.n
    r = rho(n)
    eta_r = eta + r
    xi_r = xi + r
    for i in range(1, n):
        alpha = Root(n, tuple(1 if j == i else 0 for j in range(1, n)))
        if gram_pairing(eta_r, alpha) != 0:
            return False
        if rows[i] - rows[i - 1] != gram_pairing(xi_r, alpha):
            return False
    # wrap-around increment pairs against minus the highest root
    theta = Root(n, tuple(1 for _ in range(1, n)))
    if rows[0] - rows[n - 1] != -gram_pairing(xi_r, theta):
        return False
    return True


def is_dominant_of_level(xi: Weight, level: int) -> bool:
    """All omega-coordinates >= 0 including the implied affine one."""
    cs = xi.coords
    if any(c < 0 or Fraction(c).denominator != 1 for c in cs):
        return False
    return level - sum(cs) >= 0


def verify_finitized_identities(
    p_prime: int, p: int, eta: Weight, xi: Weight, rows
) -> FinitizedIdentityReport:
    """Check the defining recurrence, the wall-vanishing and the
    normalization of the row-capped sum at one parameter point.

    * recurrence, for each position i:
      X[N] = q^{N_i} X'[N] + (1 - q^{|N|}) X[N - 1_i],
      where X' replaces eta by eta - omega_{i-1} + omega_i;
    * if the wall hypothesis holds, X[N] = 0;
    * if xi is dominant of level p - n and N = 0, X[0] = 1.
    """
    n = eta.n
    rows = tuple(rows)
    base = finitized_terms(p_prime, p, eta, xi, rows)
    size = sum(rows)
    recurrence = []
    witness = None
    for i in range(1, n + 1):
        eta_shifted = eta - omega(n, i - 1) + omega(n, i)
        rhs1 = _shift_terms(finitized_terms(p_prime, p, eta_shifted, xi, rows), rows[i - 1])
        dec = list(rows)
        dec[i - 1] -= 1
        lower = finitized_terms(p_prime, p, eta, xi, tuple(dec))
        rhs2 = _sub_terms(lower, _shift_terms(lower, size))
        ok = base == _add_terms(rhs1, rhs2)
        recurrence.append(ok)
        if not ok and witness is None:
            witness = {"check": "recurrence", "i": i, "rows": list(rows)}
    vanishing = None
    if vanishing_hypothesis_holds(eta, xi, rows):
        vanishing = base == {}
        if not vanishing and witness is None:
            witness = {"check": "vanishing", "terms": dict(list(base.items())[:4])}
    normalization = None
    if all(N == 0 for N in rows) and is_dominant_of_level(xi, p - n):
        normalization = base == {0: 1}
        if not normalization and witness is None:
            witness = {"check": "normalization", "terms": dict(list(base.items())[:4])}
    return FinitizedIdentityReport(recurrence, vanishing, normalization, witness)
