"""Basis-labelled module carriers and their operator matrix coefficients.

Everything acts through three data: a diagonal eigenvalue function per
label (a :class:`RationalFunction`), and for the raising/lowering series a
finite list of transitions, each a triple (target label, scalar, support).
A transition encodes the matrix coefficient C * delta(s/z); its m-th mode
is C * s**m.  The scalar C is produced by evaluating the product of all
rational multipliers at the support *after* cancellation, which is the
exact analogue of cancelling identically-equal factors on the resonance
variety before substituting values.

Carriers:

* ``VectorSlot`` / ``FockSlot`` -- single factors, also usable standalone;
* ``TensorModule`` -- tensor products of slots with the staircase
  comultiplication (lower slots contribute eigenvalue factors to raising
  moves, higher slots to lowering moves), optionally cut down to a
  membership set whose complement must receive exactly zero coefficients;
* ``AdmissibleModule`` -- the vacuum-tailed single-partition modules with
  the gap condition, in two flavours that differ by exchanging the roles
  of the second and third deformation parameters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from qfock.partitions import (
    Parts,
    TailedPartition,
    TupleConstraint,
    VacuumPattern,
    _tuples_stream,
    addable_rows,
    add_box,
    admissible_by_degree,
    is_kr_admissible,
    is_member,
    remove_box,
    removable_rows,
    tuple_degree,
    vacuum_partition,
)
from qfock.action.params import ParamSpec
from qfock.action.ratfunc import PoleError, RationalFunction
from qfock.qseries import QSeries


class Transition(NamedTuple):
    target: object
    scalar: Fraction          # coefficient in front of the delta function
    support: Fraction         # the delta sits at z = support


class RawMove(NamedTuple):
    target: object
    support: Fraction
    rational: RationalFunction
    scalar: Fraction


class ClosureViolation(AssertionError):
    """A nonzero coefficient escaped the membership set."""


def psi_vector(P: ParamSpec, m: int, v: Fraction) -> RationalFunction:
    """Eigenvalue function of the diagonal series on the vector-module
    label m at spectral parameter v: zeros at q1^m q3 v and q1^m q2 v,
    poles at q1^m v and q1^{m-1} v."""
    q1m = P.q1**m
    return RationalFunction.from_zeros_poles(
        (q1m * P.q3 * v, q1m * P.q2 * v),
        (q1m * v, q1m / P.q1 * v),
    )


def level_one_factor(mult: Fraction, base: Fraction) -> RationalFunction:
    """(1 - mult*base/z) / (1 - base/z): the vacuum eigenvalue factor."""
    return RationalFunction.from_zeros_poles((mult * base,), (base,))


# ---------------------------------------------------------------------------
# slots


class VectorSlot:
    """Integer-labelled factor; the raising series walks the label up."""

    kind = "vector"

    def __init__(self, P: ParamSpec, u: Fraction):
        self.P = P
        self.u = Fraction(u)

    def degree(self, i: int) -> int:
        return i

    def labels(self, window: int) -> list[int]:
        return list(range(-window, window + 1))

    def psi(self, i: int) -> RationalFunction:
        return psi_vector(self.P, i, self.u)

    def e_moves(self, i: int) -> list[RawMove]:
        P = self.P
        return [RawMove(i + 1, P.q1**i * self.u, RationalFunction.one(),
                        1 / (1 - P.q1))]

    def f_moves(self, i: int) -> list[RawMove]:
        P = self.P
        return [RawMove(i - 1, P.q1 ** (i - 1) * self.u, RationalFunction.one(),
                        P.q1 / (1 - P.q1))]


class FockSlot:
    """Partition-labelled factor built from vector labels row by row.

    Row j of a partition sits at vector label lam_j - j + 1 with spectral
    parameter u q2^{1-j}; supports come out as q1^{lam_j} q3^{j-1} u.
    """

    kind = "fock"

    def __init__(self, P: ParamSpec, u: Fraction):
        self.P = P
        self.u = Fraction(u)
        self._psi_cache: dict[Parts, RationalFunction] = {}

    def degree(self, lam: Parts) -> int:
        return sum(lam)

    def row_param(self, j: int) -> Fraction:
        return self.u * self.P.q2 ** (1 - j)

    def row_psi(self, lam: Parts, j: int) -> RationalFunction:
        m = (lam[j - 1] if j <= len(lam) else 0) - j + 1
        return psi_vector(self.P, m, self.row_param(j))

    def psi(self, lam: Parts) -> RationalFunction:
        hit = self._psi_cache.get(lam)
        if hit is not None:
            return hit
        out = level_one_factor(self.P.q2, self.u)
        for j in range(1, len(lam) + 1):
            out = out * self.row_psi(lam, j) * self.row_psi((), j).reciprocal()
        self._psi_cache[lam] = out
        return out

    def support(self, lam: Parts, s: int) -> Fraction:
        """Support of the move that adds the box in row s on top of lam."""
        row = lam[s - 1] if s <= len(lam) else 0
        return self.P.q1**row * self.P.q3 ** (s - 1) * self.u

    def e_moves(self, lam: Parts) -> list[RawMove]:
        P = self.P
        moves = []
        for s in addable_rows(lam):
            rat = RationalFunction.one()
            for j in range(1, s):
                rat = rat * self.row_psi(lam, j)
            moves.append(RawMove(add_box(lam, s), self.support(lam, s), rat,
                                 1 / (1 - P.q1)))
        return moves

    def f_moves(self, mu: Parts) -> list[RawMove]:
        P = self.P
        moves = []
        for s in removable_rows(mu):
            lam = remove_box(mu, s)
            rat = level_one_factor(P.q2, self.u * P.q3**s)
            for j in range(s + 1, len(mu) + 1):
                rat = rat * self.row_psi(lam, j) * self.row_psi((), j).reciprocal()
            moves.append(RawMove(lam, self.support(lam, s), rat,
                                 P.q1 / (1 - P.q1)))
        return moves


# ---------------------------------------------------------------------------
# tensor products


class TensorModule:
    """Tensor product of slots under the staircase comultiplication.

    A raising move in slot i picks up the eigenvalue functions of slots
    j < i, a lowering move those of slots j > i, all evaluated at the
    move's delta support after global cancellation.

    Membership can have two layers.  ``membership`` names the basis set.
    ``ambient`` (defaulting to membership) names the set whose complement
    must receive exactly zero coefficients: for a carved-out submodule the
    two coincide, while for a quotient the ambient set is the bigger
    submodule and coefficients landing between its members are simply
    restricted to the quotient basis -- dropping a coefficient onto an
    ambient non-basis label is the quotient map at work, not a bug.
    """

    def __init__(
        self,
        P: ParamSpec,
        slots: list,
        name: str,
        membership: Callable[[tuple], bool] | None = None,
        ambient: Callable[[tuple], bool] | None = None,
        basis_fn: Callable[[int], Iterable[tuple]] | None = None,
        highest: tuple | None = None,
        stated_weight: RationalFunction | None = None,
        extra: dict | None = None,
    ):
        self.P = P
        self.slots = slots
        self.name = name
        self.membership = membership
        self.ambient = ambient if ambient is not None else membership
        self._basis_fn = basis_fn
        self.highest = highest
        self._stated_weight = stated_weight
        self.extra = extra or {}
        self._psi_cache: dict[tuple, RationalFunction] = {}
        self._e_cache: dict[tuple, list] = {}
        self._f_cache: dict[tuple, list] = {}

    # -- descriptors -----------------------------------------------------

    def describe(self) -> dict:
        out = {"type": self.name, "params": self.P.describe(), "n": len(self.slots)}
        out.update(self.extra)
        return out

    def degree(self, label: tuple) -> int:
        return sum(slot.degree(x) for slot, x in zip(self.slots, label))

    def contains(self, label: tuple) -> bool:
        return self.membership(label) if self.membership else True

    def contains_ambient(self, label: tuple) -> bool:
        return self.ambient(label) if self.ambient else True

    def is_quotient(self) -> bool:
        return self.ambient is not self.membership

    def basis(self, max_degree: int) -> list[tuple]:
        if self._basis_fn is None:
            raise ValueError(f"{self.name} needs an explicit basis window")
        return list(self._basis_fn(max_degree))

    # -- operators --------------------------------------------------------

    def psi(self, label: tuple) -> RationalFunction:
        hit = self._psi_cache.get(label)
        if hit is None:
            out = RationalFunction.one()
            for slot, x in zip(self.slots, label):
                out = out * slot.psi(x)
            self._psi_cache[label] = hit = out
        return hit

    def _assemble(self, label, i, move: RawMove, companions) -> Transition:
        rat = move.rational
        for j in companions:
            rat = rat * self.slots[j].psi(label[j])
        value = rat.value_at(
            move.support,
            context=f"{self.name}: slot {i + 1} move onto {move.target}",
        )
        return Transition(
            label[:i] + (move.target,) + label[i + 1 :],
            move.scalar * value,
            move.support,
        )

    def e_transitions_raw(self, label: tuple) -> list[Transition]:
        hit = self._e_cache.get(label)
        if hit is None:
            hit = [
                self._assemble(label, i, mv, range(i))
                for i, slot in enumerate(self.slots)
                for mv in slot.e_moves(label[i])
            ]
            self._e_cache[label] = hit
        return hit

    def f_transitions_raw(self, label: tuple) -> list[Transition]:
        hit = self._f_cache.get(label)
        if hit is None:
            hit = [
                self._assemble(label, i, mv, range(i + 1, len(self.slots)))
                for i, slot in enumerate(self.slots)
                for mv in slot.f_moves(label[i])
            ]
            self._f_cache[label] = hit
        return hit

    def _filtered(self, trans: list[Transition]) -> list[Transition]:
        out = []
        for t in trans:
            if self.contains(t.target):
                if t.scalar != 0:
                    out.append(t)
            elif not self.contains_ambient(t.target) and t.scalar != 0:
                raise ClosureViolation(
                    f"{self.name}: nonzero coefficient onto non-member {t.target}"
                )
        return out

    def e_transitions(self, label: tuple) -> list[Transition]:
        return self._filtered(self.e_transitions_raw(label))

    def f_transitions(self, label: tuple) -> list[Transition]:
        return self._filtered(self.f_transitions_raw(label))

    def box_neighbours(self, label: tuple, direction: int) -> list[tuple]:
        """Labels one box above (direction +1) or below (-1) a given one."""
        out = []
        for i, slot in enumerate(self.slots):
            if not isinstance(slot, FockSlot):
                continue
            rows = addable_rows(label[i]) if direction > 0 else removable_rows(label[i])
            for s in rows:
                entry = (
                    add_box(label[i], s) if direction > 0 else remove_box(label[i], s)
                )
                out.append(label[:i] + (entry,) + label[i + 1 :])
        return out

    # -- stated data -------------------------------------------------------

    def stated_weight(self) -> RationalFunction | None:
        return self._stated_weight

    def stated_level(self) -> tuple[Fraction, Fraction] | None:
        if self._stated_weight is None:
            return None
        return self._stated_weight.boundary_values()


def apply_e(space, state, m: int) -> dict:
    """Apply the m-th raising mode to a label or a label->coefficient map."""
    if not isinstance(state, dict):
        state = {state: Fraction(1)}
    out: dict = {}
    for label, coeff in state.items():
        for t in space.e_transitions(label):
            val = coeff * t.scalar * t.support**m
            if val:
                out[t.target] = out.get(t.target, Fraction(0)) + val
    return {k: v for k, v in out.items() if v != 0}


def apply_f(space, state, m: int) -> dict:
    if not isinstance(state, dict):
        state = {state: Fraction(1)}
    out: dict = {}
    for label, coeff in state.items():
        for t in space.f_transitions(label):
            val = coeff * t.scalar * t.support**m
            if val:
                out[t.target] = out.get(t.target, Fraction(0)) + val
    return {k: v for k, v in out.items() if v != 0}


def psi_eigenvalue(space, label) -> RationalFunction:
    return space.psi(label)


def psi_mode(space, label, k: int, sign: int) -> Fraction:
    """Mode k of the diagonal series on a basis label.

    sign +1 asks for the expansion at infinity (k >= 0), sign -1 for the
    expansion at zero (k <= 0).
    """
    fn = space.psi(label)
    if sign > 0:
        if k < 0:
            raise ValueError("plus modes start at index 0")
        return fn.plus_modes(k)[k]
    if k > 0:
        raise ValueError("minus modes end at index 0")
    return fn.minus_modes(-k)[-k]


def graded_character(space, max_degree: int) -> QSeries:
    counts = [0] * (max_degree + 1)
    for label in space.basis(max_degree):
        d = space.degree(label)
        if 0 <= d <= max_degree:
            counts[d] += 1
    return QSeries(max_degree, counts)


# ---------------------------------------------------------------------------
# factories


def vector_module(P: ParamSpec, window: int = 6) -> TensorModule:
    slot = VectorSlot(P, P.us[0])
    return TensorModule(
        P,
        [slot],
        "vector",
        basis_fn=lambda D: [(i,) for i in range(-min(D, window), min(D, window) + 1)],
    )


def vector_tensor(P: ParamSpec, n: int, window: int = 3) -> TensorModule:
    slots = [VectorSlot(P, P.us[i]) for i in range(n)]

    def basis(D: int) -> list[tuple]:
        w = min(D, window)
        out: list[tuple] = [()]
        for _ in range(n):
            out = [t + (i,) for t in out for i in range(-w, w + 1)]
        return out

    return TensorModule(P, slots, f"vector^{n}", basis_fn=basis)


def _tuple_basis(c: TupleConstraint | None, n: int):
    def basis(D: int):
        if c is None:
            free = TupleConstraint(n, (D + 1,) * n, (0,) * n, cyclic=True)
            stream = _tuples_stream(free, D)
        else:
            stream = _tuples_stream(c, D)
        return sorted(stream, key=lambda t: (tuple_degree(t), t))

    return basis


def fock_module(P: ParamSpec) -> TensorModule:
    slot = FockSlot(P, P.us[0])
    return TensorModule(
        P,
        [slot],
        "fock",
        basis_fn=lambda D: [(lam,) for _, lam in _single_partitions(D)],
        highest=((),),
        stated_weight=level_one_factor(P.q2, P.us[0]),
    )


def _single_partitions(D: int):
    from qfock.partitions import partitions_of

    for d in range(D + 1):
        for lam in sorted(partitions_of(d)):
            yield d, lam


def fock_tensor(P: ParamSpec, n: int) -> TensorModule:
    slots = [FockSlot(P, P.us[i]) for i in range(n)]
    weight = RationalFunction.one()
    for i in range(n):
        weight = weight * level_one_factor(P.q2, P.us[i])
    return TensorModule(
        P,
        slots,
        f"fock^{n}",
        basis_fn=_tuple_basis(None, n),
        highest=((),) * n,
        stated_weight=weight,
    )


def m_space(c: TupleConstraint, P: ParamSpec) -> TensorModule:
    """Member-set submodule or subquotient of a Fock tensor product.

    The open-chain constraint carves out the shift-resonance submodule of
    the tensor product: every coefficient leaving the member set vanishes
    identically.  The cyclic constraint names a quotient of that submodule:
    its ambient set is the open-chain one, coefficients escaping the
    ambient set vanish, and coefficients onto ambient labels outside the
    cyclic set are killed by the quotient map (their counterpart condition,
    that nothing flows back from the kernel, is what ``check_closure``
    verifies).
    """
    if len(P.us) != c.n:
        raise ValueError("parameter chain length must equal n")
    slots = [FockSlot(P, P.us[i]) for i in range(c.n)]
    weight = RationalFunction.one()
    for i in range(c.n):
        weight = weight * level_one_factor(P.q2, P.us[i])
    name = "m_cyclic" if c.cyclic else "m_chain"
    ambient = None
    if c.cyclic:
        c_open = TupleConstraint(c.n, c.a[:-1], c.b[:-1], cyclic=False)
        ambient = lambda t: is_member(t, c_open)  # noqa: E731
    return TensorModule(
        P,
        slots,
        name,
        membership=lambda t: is_member(t, c),
        ambient=ambient,
        basis_fn=_tuple_basis(c, c.n),
        highest=((),) * c.n,
        stated_weight=weight,
        extra={"a": list(c.a), "b": list(c.b), "cyclic": c.cyclic},
    )


# ---------------------------------------------------------------------------
# vacuum-tailed modules


class AdmissibleModule:
    """Single-partition module with vacuum tail and gap condition.

    ``swapped=False`` shifts row parameters by the second deformation
    parameter (supports run along the third); ``swapped=True`` exchanges
    the two roles.  Raw transitions enumerate every shape-valid box move in
    a window past the deviation support; only gap-admissible targets may
    carry nonzero coefficients.
    """

    def __init__(self, P: ParamSpec, k: int, r: int, a, swapped: bool):
        self.P = P
        self.k = k
        self.r = r
        self.vac = vacuum_partition(k, r, a)
        self.swapped = swapped
        self.u = P.us[0]
        self.qa, self.qb = (P.q3, P.q2) if swapped else (P.q2, P.q3)
        self.name = "gap_swapped" if swapped else "gap"
        lattice = P.q1 ** (1 - r) * (P.q2 if swapped else P.q3) ** (k + 1)
        if lattice != 1:
            raise ValueError("parameters do not satisfy the gap resonance")
        self._psi_cache: dict = {}
        self._e_cache: dict = {}
        self._f_cache: dict = {}
        self.highest = TailedPartition(self.vac, ())

    def describe(self) -> dict:
        return {
            "type": self.name,
            "params": self.P.describe(),
            "k": self.k,
            "r": self.r,
            "a": list(self.vac.a),
        }

    def degree(self, L: TailedPartition) -> int:
        return L.deviation_degree()

    def contains(self, L: TailedPartition) -> bool:
        return is_kr_admissible(L)

    # a genuine module: everything escaping the member set must vanish
    def contains_ambient(self, L: TailedPartition) -> bool:
        return self.contains(L)

    def is_quotient(self) -> bool:
        return False

    def basis(self, max_degree: int) -> list[TailedPartition]:
        return [L for _, L in admissible_by_degree(self.vac, max_degree)]

    def row_param(self, j: int) -> Fraction:
        return self.u * self.qa ** (1 - j)

    def row_psi(self, L: TailedPartition, j: int) -> RationalFunction:
        return psi_vector(self.P, L.entry(j) - j + 1, self.row_param(j))

    def _vac_row_psi(self, j: int) -> RationalFunction:
        return psi_vector(self.P, self.vac.entry(j) - j + 1, self.row_param(j))

    def support(self, L: TailedPartition, i: int) -> Fraction:
        """Support of the move adding a box in row i on top of L."""
        return self.P.q1 ** L.entry(i) * self.qb ** (i - 1) * self.u

    def psi(self, L: TailedPartition) -> RationalFunction:
        hit = self._psi_cache.get(L)
        if hit is not None:
            return hit
        out = self.stated_weight()
        for j in range(1, len(L.devs) + 1):
            out = out * self.row_psi(L, j) * self._vac_row_psi(j).reciprocal()
        self._psi_cache[L] = out
        return out

    def stated_weight(self) -> RationalFunction:
        out = RationalFunction.one()
        c = 0
        for i in range(self.k):
            out = out * level_one_factor(
                self.qb, self.u * self.P.q1 ** (-c) * self.qb**i
            )
            c += self.vac.a[i]
        return out

    def stated_level(self) -> tuple[Fraction, Fraction]:
        return self.stated_weight().boundary_values()

    def _addable(self, L: TailedPartition, window: int) -> list[int]:
        rows = []
        for i in range(1, len(L.devs) + window + 1):
            if i == 1 or L.entry(i - 1) > L.entry(i):
                rows.append(i)
        return rows

    def _removable(self, L: TailedPartition, window: int) -> list[int]:
        rows = []
        for i in range(1, len(L.devs) + window + 1):
            if L.entry(i) - 1 >= L.entry(i + 1):
                rows.append(i)
        return rows

    def e_transitions_raw(self, L: TailedPartition) -> list[Transition]:
        hit = self._e_cache.get(L)
        if hit is None:
            hit = []
            for i in self._addable(L, 2 * self.k + 2):
                rat = RationalFunction.one()
                for j in range(1, i):
                    rat = rat * self.row_psi(L, j)
                value = rat.value_at(
                    self.support(L, i), context=f"{self.name}: raise row {i}"
                )
                hit.append(
                    Transition(L.bump(i, +1), value / (1 - self.P.q1),
                               self.support(L, i))
                )
            self._e_cache[L] = hit
        return hit

    def f_transitions_raw(self, L: TailedPartition) -> list[Transition]:
        hit = self._f_cache.get(L)
        if hit is None:
            hit = []
            for i in self._removable(L, 2 * self.k + 2):
                target = L.bump(i, -1)
                rat = RationalFunction.one()
                for j in range(i + 1, len(target.devs) + 1):
                    rat = rat * self.row_psi(target, j) * self._vac_row_psi(j).reciprocal()
                for j in range(self.k):
                    rat = rat * level_one_factor(
                        self.qb,
                        self.u
                        * self.P.q1 ** self.vac.entry(i + j + 1)
                        * self.qb ** (i + j),
                    )
                value = rat.value_at(
                    self.support(target, i), context=f"{self.name}: lower row {i}"
                )
                hit.append(
                    Transition(target, value * self.P.q1 / (1 - self.P.q1),
                               self.support(target, i))
                )
            self._f_cache[L] = hit
        return hit

    def _filtered(self, trans: list[Transition]) -> list[Transition]:
        out = []
        for t in trans:
            if self.contains(t.target):
                if t.scalar != 0:
                    out.append(t)
            elif t.scalar != 0:
                raise ClosureViolation(
                    f"{self.name}: nonzero coefficient onto non-member "
                    f"{t.target.devs}"
                )
        return out

    def e_transitions(self, L: TailedPartition) -> list[Transition]:
        return self._filtered(self.e_transitions_raw(L))

    def f_transitions(self, L: TailedPartition) -> list[Transition]:
        return self._filtered(self.f_transitions_raw(L))


def gap_module(P: ParamSpec, k: int, r: int, a) -> AdmissibleModule:
    return AdmissibleModule(P, k, r, a, swapped=False)


def gap_module_swapped(P: ParamSpec, k: int, r: int, a) -> AdmissibleModule:
    return AdmissibleModule(P, k, r, a, swapped=True)


# ---------------------------------------------------------------------------
# two-factor degeneration classifier


def classify_2point(P: ParamSpec, i: int, j: int) -> str:
    """Status of the fragile matrix coefficients in a two-factor vector
    tensor product: 'undefined', 'zero' or 'nonzero'.

    The fragile coefficients are the raise-on-second-slot and
    lower-on-first-slot ones between labels (i, j-1)/(i, j) and
    (i+1, j)/(i, j); they degenerate exactly when the parameter ratio
    meets one of four lattice points.
    """
    ratio = P.us[1] / P.us[0]
    base = P.q1 ** (i - j)
    if ratio == base or ratio == base * P.q1:
        return "undefined"
    if ratio == base / P.q2 or ratio == base / P.q3:
        return "zero"
    return "nonzero"
