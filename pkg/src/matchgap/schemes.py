"""Local mass-distribution schemes over a realized graph and its dual.

Starting from an optimal fractional vertex cover, the weighted scheme
lets every non-isolated vertex split its dual mass evenly over its
realized edges.  The unweighted scheme additionally moves deterministic
quadratic transfers between adjacent *potential* edges: edge ``a`` pays
``c * x_a^2 * x_b`` to every adjacent edge ``b``, which taxes
high-probability edges in favor of their low-probability neighbors.
Both schemes conserve total mass and never drive a vertex negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .matching import FractionalVertexCover
from .sampling import SampledGraph

DEFAULT_TRANSFER = 1.0 / 6.0


@dataclass(frozen=True)
class SchemeConfig:
    """Transfer constant for the quadratic edge-to-edge payments."""

    c: float = DEFAULT_TRANSFER

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("transfer constant must be nonnegative")


@dataclass(frozen=True, eq=False)
class MassVector:
    """Post-distribution mass on every vertex and every potential edge."""

    vertex_mass: np.ndarray
    edge_mass: np.ndarray

    @cached_property
    def total(self) -> float:
        return float(self.vertex_mass.sum() + self.edge_mass.sum())


@dataclass(frozen=True)
class AuditViolation:
    check: str
    location: str
    value: float


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    total_mass: float
    cover_norm: float
    matching_value: float
    edge_mass_sum: float
    violations: tuple[AuditViolation, ...] = field(default_factory=tuple)


def weighted_scheme(g: SampledGraph, cover: FractionalVertexCover) -> MassVector:
    """Each vertex spreads its dual mass evenly over its realized edges.

    Isolated vertices keep their mass (optimal covers put zero there, but
    the convention avoids dividing by a zero degree).
    """
    inst = g.instance
    deg = g.degrees
    y = cover.y
    edge_mass = np.zeros(inst.num_edges, dtype=np.float64)
    idx = g.edge_indices
    if idx.size:
        ends = inst.endpoints[idx]
        edge_mass[idx] = y[ends[:, 0]] / deg[ends[:, 0]] + y[ends[:, 1]] / deg[ends[:, 1]]
    vertex_mass = np.where(deg == 0, y, 0.0)
    return MassVector(vertex_mass, edge_mass)


def unweighted_scheme(g: SampledGraph, cover: FractionalVertexCover,
                      cfg: SchemeConfig = SchemeConfig()) -> MassVector:
    """Weighted scheme plus the deterministic quadratic transfers.

    Requires a unit-weight instance.  The transfers run over all pairs of
    adjacent potential edges whether realized or not, so the correction to
    edge e = (u, v) is
        c * sum_{f ~ e} (x_f^2 * x_e - x_e^2 * x_f)
    summed over potential edges f sharing u or v.
    """
    inst = g.instance
    if not inst.is_unweighted:
        raise ValueError("quadratic-transfer scheme requires unit weights")
    base = weighted_scheme(g, cover)
    x = inst.x
    ends = inst.endpoints
    s1 = np.zeros(inst.total_vertices)
    s2 = np.zeros(inst.total_vertices)
    np.add.at(s1, ends[:, 0], x)
    np.add.at(s1, ends[:, 1], x)
    np.add.at(s2, ends[:, 0], x ** 2)
    np.add.at(s2, ends[:, 1], x ** 2)
    # income minus outgo against the neighborhood sums, both endpoints
    a, b = ends[:, 0], ends[:, 1]
    net = (x * (s2[a] - x ** 2) - x ** 2 * (s1[a] - x)
           + x * (s2[b] - x ** 2) - x ** 2 * (s1[b] - x))
    return MassVector(base.vertex_mass, base.edge_mass + cfg.c * net)


def audit_masses(t: MassVector, cover: FractionalVertexCover, nu: float,
                 tolerance: float = 1e-9) -> AuditReport:
    """Check vertex nonnegativity, conservation, and the edge-sum bound.

    Violations are report content, not exceptions: (i) every vertex mass
    >= -tol, (ii) total mass equals both the cover norm and the matching
    value within tol, (iii) the edge masses alone sum to at most the
    matching value plus tol.
    """
    violations = []
    bad = np.nonzero(t.vertex_mass < -tolerance)[0]
    for v in bad:
        violations.append(AuditViolation("vertex_mass_nonnegative", f"vertex {int(v)}",
                                         float(t.vertex_mass[v])))
    total = t.total
    norm = cover.norm
    if abs(total - norm) > tolerance:
        violations.append(AuditViolation("mass_conservation", "total vs cover norm",
                                         total - norm))
    if abs(total - nu) > tolerance:
        violations.append(AuditViolation("mass_conservation", "total vs matching value",
                                         total - nu))
    edge_sum = float(t.edge_mass.sum())
    if edge_sum > nu + tolerance:
        violations.append(AuditViolation("edge_mass_bound", "sum of edge masses",
                                         edge_sum - nu))
    return AuditReport(ok=not violations, total_mass=total, cover_norm=norm,
                       matching_value=nu, edge_mass_sum=edge_sum,
                       violations=tuple(violations))
