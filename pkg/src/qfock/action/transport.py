"""Transport constants between modules with matched bases.

Given a degree-preserving bijection of basis labels, an isomorphism
rescaling each basis vector must satisfy, per raising transition x -> y,
c_y * A_src(x,y) = c_x * A_dst(x', y'), and the mirrored equation for
lowering.  Fixing c = 1 at the bottom label and propagating along a
spanning tree of raising transitions determines every constant; the
remaining conditions are exact and are all checked:

* matched delta supports (a mismatch means the label map is wrong);
* matched zero patterns of raising and lowering coefficients;
* equal diagonal eigenvalue functions;
* every non-tree raising edge closes (cycle consistency);
* lowering transports through the same constants (raise/lower
  compatibility).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class TransportResult:
    ok: bool
    constants: dict = field(default_factory=dict)
    witness: dict | None = None
    edges_checked: int = 0
    labels: int = 0

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "labels": self.labels,
            "edges_checked": self.edges_checked,
            "witness": self.witness,
            "constants": {repr(k): str(v) for k, v in self.constants.items()}
            if self.ok
            else None,
        }


def _transition_map(space, label, kind: str) -> dict:
    trans = space.e_transitions(label) if kind == "e" else space.f_transitions(label)
    out = {}
    for t in trans:
        out[t.target] = (t.scalar, t.support)
    return out


def solve_transport_constants(src, dst, label_map, max_degree: int) -> TransportResult:
    """Find the per-label constants or return the first inconsistency."""
    src_basis = src.basis(max_degree)
    dst_basis = dst.basis(max_degree)
    images = [label_map(x) for x in src_basis]
    if sorted(map(repr, images)) != sorted(map(repr, dst_basis)):
        return TransportResult(False, witness={"error": "label map is not a bijection"})
    for x, y in zip(src_basis, images):
        if src.degree(x) != dst.degree(y):
            return TransportResult(
                False,
                witness={"error": "degree not preserved", "src": repr(x), "dst": repr(y)},
            )
        if src.psi(x) != dst.psi(y):
            return TransportResult(
                False,
                witness={"error": "diagonal eigenvalues differ", "src": repr(x)},
            )

    # collect raising/lowering edges inside the degree window
    edges = []
    for x in src_basis:
        if src.degree(x) >= max_degree:
            continue
        fx = label_map(x)
        src_e = _transition_map(src, x, "e")
        dst_e = _transition_map(dst, fx, "e")
        src_targets = {label_map(t): t for t in src_e}
        if set(map(repr, src_targets)) != set(map(repr, dst_e)):
            return TransportResult(
                False,
                witness={"error": "raising zero patterns differ", "src": repr(x)},
            )
        for ft, t in src_targets.items():
            c_src, s_src = src_e[t]
            c_dst, s_dst = dst_e[ft]
            if s_src != s_dst:
                return TransportResult(
                    False,
                    witness={
                        "error": "delta supports differ",
                        "src": repr(x),
                        "target": repr(t),
                        "supports": [str(s_src), str(s_dst)],
                    },
                )
            # lowering back along the same edge
            src_f = _transition_map(src, t, "f")
            dst_f = _transition_map(dst, ft, "f")
            has_src = x in src_f
            has_dst = fx in dst_f
            if has_src != has_dst:
                return TransportResult(
                    False,
                    witness={"error": "lowering zero patterns differ", "src": repr(t)},
                )
            lower = None
            if has_src:
                cf_src, sf_src = src_f[x]
                cf_dst, sf_dst = dst_f[fx]
                if sf_src != sf_dst:
                    return TransportResult(
                        False,
                        witness={"error": "lowering supports differ", "src": repr(t)},
                    )
                lower = (cf_src, cf_dst)
            edges.append((x, t, c_dst / c_src, lower))

    # gauge: constant 1 at the distinguished bottom label
    root = getattr(src, "highest", None)
    if root is None:
        root = min(src_basis, key=lambda l: (src.degree(l), repr(l)))
    constants: dict = {root: Fraction(1)}
    adjacency: dict = {}
    for idx, (x, t, ratio, lower) in enumerate(edges):
        adjacency.setdefault(x, []).append(idx)
        adjacency.setdefault(t, []).append(idx)
    frontier = [root]
    used = set()
    while frontier:
        node = frontier.pop()
        for idx in adjacency.get(node, ()):
            if idx in used:
                continue
            x, t, ratio, lower = edges[idx]
            if x in constants and t in constants:
                continue
            used.add(idx)
            if x in constants:
                constants[t] = constants[x] * ratio
                frontier.append(t)
            else:
                constants[x] = constants[t] / ratio
                frontier.append(x)
    missing = [x for x in src_basis if x not in constants]
    if missing:
        return TransportResult(
            False,
            witness={"error": "transition graph is disconnected",
                     "missing": [repr(m) for m in missing[:3]]},
        )

    # verify every edge: cycle conditions and raise/lower compatibility
    checked = 0
    for x, t, ratio, lower in edges:
        checked += 1
        if constants[t] != constants[x] * ratio:
            return TransportResult(
                False,
                witness={
                    "error": "cycle condition fails",
                    "edge": [repr(x), repr(t)],
                    "got": str(constants[t]),
                    "want": str(constants[x] * ratio),
                },
                edges_checked=checked,
            )
        if lower is not None:
            cf_src, cf_dst = lower
            # c_x * F_src = c_t * F_dst
            if constants[x] * cf_src != constants[t] * cf_dst:
                return TransportResult(
                    False,
                    witness={
                        "error": "raise/lower transport incompatible",
                        "edge": [repr(x), repr(t)],
                    },
                    edges_checked=checked,
                )
    return TransportResult(
        True, constants=constants, edges_checked=checked, labels=len(src_basis)
    )
