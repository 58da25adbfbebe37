"""Exact rational instantiation of the deformation parameters.

Genericity and resonance are lattice conditions on monomial exponents, and
unique factorization decides them exactly: powers of distinct primes can
only multiply to 1 trivially, and a single prime power t realizes a rank-one
resonance lattice on the nose.  No floating point, no symbolic field.

The three q's always satisfy q1*q2*q3 = 1.  Spectral parameters are chained
off the first one when a shift resonance is requested, so the chain relation
holds exactly by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from qfock.partitions import TupleConstraint

#: Two independent prime banks; every verification battery runs on both.
SEED_SETS = ((2, 3, 5, 7, 11, 13), (3, 2, 7, 5, 13, 11))
RESONANT_SEED_SETS = ((2, 5), (3, 7))


@dataclass(frozen=True)
class ParamSpec:
    """Exact values of (q1, q2, q3) and the spectral parameters."""

    kind: str
    seeds: tuple[int, ...]
    q1: Fraction
    q2: Fraction
    q3: Fraction
    us: tuple[Fraction, ...]

    def __post_init__(self):
        if self.q1 * self.q2 * self.q3 != 1:
            raise ValueError("q1*q2*q3 must equal 1 exactly")
        if any(q == 1 for q in (self.q1, self.q2, self.q3)):
            raise ValueError("no deformation parameter may equal 1")

    @property
    def u(self) -> Fraction:
        return self.us[0]

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "seeds": list(self.seeds),
            "q1": str(self.q1),
            "q2": str(self.q2),
            "q3": str(self.q3),
            "us": [str(u) for u in self.us],
        }


def _check_primes(seeds) -> None:
    for s in seeds:
        if s < 2 or any(s % d == 0 for d in range(2, int(s**0.5) + 1)):
            raise ValueError(f"seed {s} is not prime")
    if len(set(seeds)) != len(seeds):
        raise ValueError("seeds must be distinct")


def generic_params(n_spectral: int, seeds=SEED_SETS[0]) -> ParamSpec:
    """q1, q2 and the spectral parameters are distinct primes, so no
    monomial in them equals 1 except trivially."""
    need = 2 + n_spectral
    if len(seeds) < need:
        raise ValueError(f"need {need} primes")
    seeds = tuple(seeds[:need])
    _check_primes(seeds)
    q1, q2 = Fraction(seeds[0]), Fraction(seeds[1])
    us = tuple(Fraction(s) for s in seeds[2:])
    return ParamSpec("generic", seeds, q1, q2, 1 / (q1 * q2), us)


def _chain(q1: Fraction, q3: Fraction, u: Fraction, c: TupleConstraint):
    """Spectral chain u_{i+1} = u_i / (q1^{a_i+1} q3^{b_i+1})."""
    us = [u]
    pairs = list(zip(c.a, c.b))
    steps = pairs if not c.cyclic else pairs[: c.n - 1]
    for a_i, b_i in steps:
        us.append(us[-1] / (q1 ** (a_i + 1) * q3 ** (b_i + 1)))
    if c.cyclic:
        a_n, b_n = c.a[-1], c.b[-1]
        wrap = us[-1] / (q1 ** (a_n + 1) * q3 ** (b_n + 1))
        if wrap != us[0]:
            raise ValueError("resonance does not close the spectral chain")
    return tuple(us)


def shift_params(c: TupleConstraint, seeds=SEED_SETS[0]) -> ParamSpec:
    """Shift resonance only: q1, q2, u generic, the u_i chained exactly."""
    if c.cyclic:
        raise ValueError("open-chain constraint required")
    seeds = tuple(seeds[:3])
    _check_primes(seeds)
    q1, q2, u = (Fraction(s) for s in seeds)
    q3 = 1 / (q1 * q2)
    return ParamSpec("shift", seeds, q1, q2, q3, _chain(q1, q3, u, c))


def pp_params(c: TupleConstraint, seeds=RESONANT_SEED_SETS[0]) -> ParamSpec:
    """Full resonance q1^p' q3^p = 1, realized as q1 = t^p, q3 = t^-p'.

    gcd(p, p') = 1 makes the realized exponent lattice exactly the rank-one
    lattice {(p' k, p k)}; with composite gcd the realization would satisfy
    extra relations, so it is refused.
    """
    if not c.cyclic:
        raise ValueError("cyclic constraint required")
    pp, p = c.p_prime, c.p
    if pp == p:
        raise ValueError("the resonance needs p != p'")
    if gcd(pp, p) != 1:
        raise ValueError("gcd(p, p') must be 1 for the prime-power realization")
    t, uprime = seeds[0], seeds[1]
    _check_primes((t, uprime))
    q1 = Fraction(t) ** p
    q3 = Fraction(t) ** (-pp)
    q2 = 1 / (q1 * q3)
    return ParamSpec("resonance_pp", (t, uprime), q1, q2, q3,
                     _chain(q1, q3, Fraction(uprime), c))


def w_params(k: int, r: int, seeds=RESONANT_SEED_SETS[0]) -> ParamSpec:
    """Gap resonance q1^{1-r} q3^{k+1} = 1 via q1 = t^{k+1}, q3 = t^{r-1}."""
    if k < 1 or r < 2:
        raise ValueError("need k >= 1 and r >= 2")
    if gcd(k + 1, r - 1) != 1:
        raise ValueError("gcd(k+1, r-1) must be 1 for the prime-power realization")
    t, uprime = seeds[0], seeds[1]
    _check_primes((t, uprime))
    q1 = Fraction(t) ** (k + 1)
    q3 = Fraction(t) ** (r - 1)
    q2 = 1 / (q1 * q3)
    return ParamSpec("resonance_w", (t, uprime), q1, q2, q3, (Fraction(uprime),))


def g_params(k: int, r: int, seeds=RESONANT_SEED_SETS[0]) -> ParamSpec:
    """The gap resonance with the roles of q2 and q3 exchanged; equivalently
    q1^{k+r} q3^{k+1} = 1 via q1 = t^{k+1}, q3 = t^{-(k+r)}."""
    if k < 1 or r < 2:
        raise ValueError("need k >= 1 and r >= 2")
    if gcd(k + 1, r - 1) != 1:
        raise ValueError("gcd(k+1, r-1) must be 1 for the prime-power realization")
    t, uprime = seeds[0], seeds[1]
    _check_primes((t, uprime))
    q1 = Fraction(t) ** (k + 1)
    q2 = Fraction(t) ** (r - 1)
    q3 = 1 / (q1 * q2)
    return ParamSpec("resonance_g", (t, uprime), q1, q2, q3, (Fraction(uprime),))


def custom_params(q1: Fraction, q2: Fraction, us, kind="custom", seeds=()) -> ParamSpec:
    """Explicit values; used for targeted degenerations in tests."""
    q1, q2 = Fraction(q1), Fraction(q2)
    return ParamSpec(kind, tuple(seeds), q1, q2, 1 / (q1 * q2),
                     tuple(Fraction(u) for u in us))
