"""Weighted clusters of infinitely near points and log canonical thresholds.

A divisor configuration pairs lattice classes with combinatorial local data:
at each marked point, either a named germ (node, cusp, tacnode, ...) or an
explicit weighted cluster.  Germs compile to clusters; valuations and
discrepancies follow the proximity recursions

    v(q) = mult(q) + sum of v over the points q is proximate to,
    k(q) = 1     + sum of k over the points q is proximate to,

and the threshold at a point is

    lct_p = min( 1/d_i over components through p,
                 (k(q)+1) / v_q(D) over cluster points q with v_q(D) > 0 ).

All arithmetic is exact (`int` and `Fraction`); every value is immutable
and every operation is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Union

from .lattice import DivisorClass, SurfaceModel


class ClusterError(ValueError):
    """Structurally invalid cluster or configuration data."""


class InconsistentConfigError(ClusterError):
    """Declared local intersections exceed what the lattice allows."""

    def __init__(self, comp_i: str, comp_j: str, local_total: int, lattice_total: int):
        self.comp_i = comp_i
        self.comp_j = comp_j
        self.local_total = local_total
        self.lattice_total = lattice_total
        super().__init__(
            f"components {comp_i!r} and {comp_j!r} declare local intersection "
            f"{local_total} but their classes only meet in {lattice_total} points"
        )


GERM_KINDS = (
    "smooth_transverse",
    "tacnode",
    "node",
    "cusp",
    "tacnode_curve",
    "ordinary",
)

_FIXED_ARITY = {"tacnode": 2, "node": 2, "cusp": 1, "tacnode_curve": 2}


@dataclass(frozen=True)
class Germ:
    """A catalogued curve germ; ``branches`` is the number of local branches."""

    kind: str
    branches: int = 1

    def __post_init__(self) -> None:
        if self.kind not in GERM_KINDS:
            raise ClusterError(f"unknown germ kind {self.kind!r}")
        fixed = _FIXED_ARITY.get(self.kind)
        if fixed is not None and self.branches != fixed:
            raise ClusterError(f"{self.kind} germ has exactly {fixed} branches")
        if self.branches < 1:
            raise ClusterError("a germ needs at least one branch")

    @classmethod
    def smooth(cls, k: int = 1) -> "Germ":
        return cls("smooth_transverse", k)

    @classmethod
    def node(cls) -> "Germ":
        return cls("node", 2)

    @classmethod
    def cusp(cls) -> "Germ":
        return cls("cusp", 1)

    @classmethod
    def tacnode(cls) -> "Germ":
        return cls("tacnode", 2)

    @classmethod
    def tacnode_curve(cls) -> "Germ":
        return cls("tacnode_curve", 2)

    @classmethod
    def ordinary(cls, m: int) -> "Germ":
        return cls("ordinary", m)


# Germ templates: (parent index or None, proximities as indices, branch -> mult).
# These are the minimal embedded-resolution clusters of the catalogued germs;
# the power-series resolver in `oracles` re-derives each one independently.
def _germ_template(germ: Germ) -> list[tuple[Optional[int], tuple[int, ...], dict[int, int]]]:
    k = germ.branches
    if germ.kind in ("smooth_transverse", "ordinary", "node"):
        return [(None, (), {b: 1 for b in range(k)})]
    if germ.kind in ("tacnode", "tacnode_curve"):
        return [
            (None, (), {0: 1, 1: 1}),
            (0, (0,), {0: 1, 1: 1}),
        ]
    if germ.kind == "cusp":
        return [
            (None, (), {0: 2}),
            (0, (0,), {0: 1}),
            (1, (1, 0), {0: 1}),
        ]
    raise ClusterError(f"unknown germ kind {germ.kind!r}")


@dataclass(frozen=True)
class ClusterNode:
    """One infinitely near point: parent, proximities, strict-transform mults."""

    id: str
    parent: Optional[str]
    proximate_to: tuple[str, ...]
    mults: Mapping[str, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "proximate_to", tuple(self.proximate_to))
        object.__setattr__(self, "mults", dict(self.mults))
        for comp, m in self.mults.items():
            if not isinstance(m, int) or m < 0:
                raise ClusterError(f"multiplicity of {comp!r} at {self.id!r} must be a nonnegative integer")

    def mult(self, component: str) -> int:
        return self.mults.get(component, 0)


@dataclass(frozen=True)
class WeightedCluster:
    """A rooted tree of infinitely near points with proximity relations.

    Nodes are listed in topological order (parents before children); the
    first node is the root, the proper point on the surface.
    """

    nodes: tuple[ClusterNode, ...]
    component_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "component_ids", tuple(self.component_ids))
        self._validate()

    def _validate(self) -> None:
        if not self.nodes:
            raise ClusterError("a cluster needs at least the root node")
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ClusterError("duplicate node ids")
        index = {nid: i for i, nid in enumerate(ids)}
        known = set(self.component_ids)
        roots = [n for n in self.nodes if n.parent is None]
        if len(roots) != 1 or self.nodes[0].parent is not None:
            raise ClusterError("exactly one root is allowed and it must come first")
        for i, node in enumerate(self.nodes):
            for comp in node.mults:
                if comp not in known:
                    raise ClusterError(f"node {node.id!r} mentions unknown component {comp!r}")
            if node.parent is None:
                if node.proximate_to:
                    raise ClusterError("the root is proximate to nothing")
                continue
            if node.parent not in index or index[node.parent] >= i:
                raise ClusterError(f"parent of {node.id!r} must be listed before it")
            prox = node.proximate_to
            if node.parent not in prox:
                raise ClusterError(f"{node.id!r} must be proximate to its parent")
            if len(set(prox)) != len(prox) or len(prox) > 2:
                raise ClusterError(f"{node.id!r} may be proximate to its parent and at most one more point")
            ancestors = self._ancestors(node.id, index)
            for a in prox:
                if a not in ancestors:
                    raise ClusterError(f"{node.id!r} proximate to non-ancestor {a!r}")
            extra = [a for a in prox if a != node.parent]
            if extra:
                parent_node = self.nodes[index[node.parent]]
                if extra[0] not in parent_node.proximate_to:
                    raise ClusterError(
                        f"satellite {node.id!r}: its parent is not proximate to {extra[0]!r}"
                    )
        # A satellite direction E_parent /\ E_a is a single point.
        seen_pairs = set()
        for node in self.nodes:
            extra = [a for a in node.proximate_to if a != node.parent]
            if extra:
                pair = (node.parent, extra[0])
                if pair in seen_pairs:
                    raise ClusterError(f"two satellites over the same corner {pair}")
                seen_pairs.add(pair)
        # Proximity inequality, per component.
        prox_children: dict[str, list[ClusterNode]] = {nid: [] for nid in ids}
        for node in self.nodes:
            for a in node.proximate_to:
                prox_children[a].append(node)
        for node in self.nodes:
            for comp in self.component_ids:
                total = sum(ch.mult(comp) for ch in prox_children[node.id])
                if node.mult(comp) < total:
                    raise ClusterError(
                        f"proximity inequality fails for {comp!r} at {node.id!r}: "
                        f"{node.mult(comp)} < {total}"
                    )

    def _ancestors(self, node_id: str, index: Mapping[str, int]) -> set[str]:
        out = set()
        cur = self.nodes[index[node_id]].parent
        while cur is not None:
            out.add(cur)
            cur = self.nodes[index[cur]].parent
        return out

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n.id: i for i, n in enumerate(self.nodes)}

    def node(self, node_id: str) -> ClusterNode:
        try:
            return self.nodes[self._index[node_id]]
        except KeyError:
            raise ClusterError(f"unknown cluster node {node_id!r}") from None

    @property
    def root(self) -> ClusterNode:
        return self.nodes[0]

    def children(self, node_id: str) -> tuple[ClusterNode, ...]:
        return tuple(n for n in self.nodes if n.parent == node_id)

    @cached_property
    def _valuations(self) -> dict[str, dict[str, int]]:
        """component -> node -> v, by the proximity recursion."""
        out: dict[str, dict[str, int]] = {}
        for comp in self.component_ids:
            table: dict[str, int] = {}
            for node in self.nodes:
                table[node.id] = node.mult(comp) + sum(table[a] for a in node.proximate_to)
            out[comp] = table
        return out

    @cached_property
    def _log_discrepancies(self) -> dict[str, int]:
        """node -> k, with k(root) = 1."""
        table: dict[str, int] = {}
        for node in self.nodes:
            table[node.id] = 1 + sum(table[a] for a in node.proximate_to)
        return table

    def valuation(self, node_id: str, component: str) -> int:
        self.node(node_id)
        if component not in set(self.component_ids):
            raise ClusterError(f"unknown component {component!r}")
        return self._valuations[component][node_id]

    def log_discrepancy(self, node_id: str) -> int:
        """k(node) + 1, the log discrepancy of the exceptional divisor."""
        self.node(node_id)
        return self._log_discrepancies[node_id] + 1

    def divisor_valuation(self, node_id: str, coeffs: Mapping[str, Fraction]) -> Fraction:
        self.node(node_id)
        total = Fraction(0)
        for comp, d in coeffs.items():
            if comp in self._valuations:
                total += d * self._valuations[comp][node_id]
        return total

    def local_intersection_pair(self, comp_i: str, comp_j: str) -> int:
        """Noether's formula: sum over nodes of mult_i * mult_j."""
        return sum(n.mult(comp_i) * n.mult(comp_j) for n in self.nodes)

    def root_slack(self, component: str) -> int:
        """Root multiplicity minus the proximate multiplicities.

        Each unit is a smooth branch of the component leaving the root in a
        fresh direction (it crosses the exceptional curve of the root blow-up
        transversally away from every recorded infinitely near point).
        """
        root = self.root
        used = sum(
            n.mult(component) for n in self.nodes if root.id in n.proximate_to
        )
        return root.mult(component) - used

    def relabelled(self, prefix: str) -> "WeightedCluster":
        ren = {n.id: f"{prefix}{n.id}" for n in self.nodes}
        nodes = tuple(
            ClusterNode(
                ren[n.id],
                None if n.parent is None else ren[n.parent],
                tuple(ren[a] for a in n.proximate_to),
                dict(n.mults),
            )
            for n in self.nodes
        )
        return WeightedCluster(nodes, self.component_ids)


def canonical_form(cluster: WeightedCluster):
    """An id- and sibling-order-independent encoding of a cluster.

    Extra proximities are encoded as ancestor distances (1 = parent), so two
    clusters describing the same configuration compare equal.
    """
    index = cluster._index

    def depth_delta(node_id: str, ancestor: str) -> int:
        steps = 0
        cur = node_id
        while cur != ancestor:
            cur = cluster.nodes[index[cur]].parent
            steps += 1
            if cur is None:
                raise ClusterError("proximity target is not an ancestor")
        return steps

    def form(node: ClusterNode):
        extra = tuple(
            sorted(depth_delta(node.id, a) for a in node.proximate_to if a != node.parent)
        )
        mults = tuple(sorted((c, m) for c, m in node.mults.items() if m))
        kids = tuple(sorted(form(ch) for ch in cluster.children(node.id)))
        return (mults, extra, kids)

    return form(cluster.root)


@dataclass(frozen=True)
class Component:
    """A configuration component: a lattice class with a rational coefficient."""

    id: str
    cls: DivisorClass
    coeff: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))


@dataclass(frozen=True)
class Incidence:
    component: str
    branch: int


@dataclass(frozen=True)
class ConfigPoint:
    """A marked point with its local germ and branch assignment.

    ``germ`` is either a catalogued :class:`Germ` (then ``incident`` assigns
    each branch slot to a component) or an explicit :class:`WeightedCluster`
    (then ``incident`` must be empty; the cluster's own multiplicity data is
    the declaration).
    """

    id: str
    germ: Union[Germ, WeightedCluster]
    incident: tuple[Incidence, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "incident", tuple(self.incident))


def _compile_point(point: ConfigPoint, known_components: set[str]) -> WeightedCluster:
    if isinstance(point.germ, WeightedCluster):
        if point.incident:
            raise ClusterError(
                f"point {point.id!r}: explicit clusters carry their own incidence data"
            )
        for comp in point.germ.component_ids:
            if comp not in known_components:
                raise ClusterError(f"point {point.id!r} mentions unknown component {comp!r}")
        return point.germ.relabelled(f"{point.id}.")
    germ = point.germ
    slots = sorted(inc.branch for inc in point.incident)
    if slots != list(range(germ.branches)):
        raise ClusterError(
            f"point {point.id!r}: germ {germ.kind}({germ.branches}) needs branch "
            f"slots 0..{germ.branches - 1}, got {slots}"
        )
    branch_to_comp = {}
    for inc in point.incident:
        if inc.component not in known_components:
            raise ClusterError(f"point {point.id!r} mentions unknown component {inc.component!r}")
        branch_to_comp[inc.branch] = inc.component
    template = _germ_template(germ)
    ids = [f"{point.id}.n{i}" for i in range(len(template))]
    nodes = []
    for i, (parent_idx, prox_idx, branch_mults) in enumerate(template):
        mults: dict[str, int] = {}
        for b, m in branch_mults.items():
            comp = branch_to_comp[b]
            mults[comp] = mults.get(comp, 0) + m
        nodes.append(
            ClusterNode(
                ids[i],
                None if parent_idx is None else ids[parent_idx],
                tuple(ids[t] for t in prox_idx),
                mults,
            )
        )
    comp_ids = []
    for inc in point.incident:
        if inc.component not in comp_ids:
            comp_ids.append(inc.component)
    return WeightedCluster(tuple(nodes), tuple(comp_ids))


@dataclass(frozen=True)
class DivisorConfiguration:
    """A Q-divisor given by lattice classes plus local germ data.

    The pairwise local intersections implied by the germ data are checked
    against the lattice pairing for components with distinct classes (the
    declared data is trusted beyond that; realizability over a field is the
    geometry the construction sites establish by hand).  ``allow_signed``
    admits nonpositive coefficients, which blow-up transforms produce.
    """

    surface: SurfaceModel
    components: tuple[Component, ...]
    points: tuple[ConfigPoint, ...] = ()
    allow_signed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "points", tuple(self.points))
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ClusterError("duplicate component ids")
        pids = [p.id for p in self.points]
        if len(set(pids)) != len(pids):
            raise ClusterError("duplicate point ids")
        for comp in self.components:
            if comp.cls.surface != self.surface:
                raise ClusterError(f"component {comp.id!r} lives on a different surface")
            if not self.allow_signed and comp.coeff <= 0:
                raise ClusterError(f"component {comp.id!r} needs a positive coefficient")
        self._clusters  # compile (validates germs and branch assignments)
        self._check_consistency()

    @cached_property
    def _clusters(self) -> dict[str, WeightedCluster]:
        known = {c.id for c in self.components}
        return {p.id: _compile_point(p, known) for p in self.points}

    @cached_property
    def coefficients(self) -> dict[str, Fraction]:
        return {c.id: c.coeff for c in self.components}

    def component(self, comp_id: str) -> Component:
        for c in self.components:
            if c.id == comp_id:
                return c
        raise ClusterError(f"unknown component {comp_id!r}")

    def point(self, point_id: str) -> ConfigPoint:
        for p in self.points:
            if p.id == point_id:
                return p
        raise ClusterError(f"unknown point {point_id!r}")

    def cluster_at(self, point_id: str) -> WeightedCluster:
        self.point(point_id)
        return self._clusters[point_id]

    def total_class(self) -> DivisorClass:
        """sum d_i * class_i; exact only when every d_i is an integer."""
        coeffs = [Fraction(0)] * self.surface.rank
        for comp in self.components:
            for i, c in enumerate(comp.cls.coeffs):
                coeffs[i] += comp.coeff * c
        if any(c.denominator != 1 for c in coeffs):
            raise ClusterError("total class has non-integer coefficients")
        return DivisorClass(self.surface, tuple(int(c) for c in coeffs))

    def total_class_fractions(self) -> tuple[Fraction, ...]:
        coeffs = [Fraction(0)] * self.surface.rank
        for comp in self.components:
            for i, c in enumerate(comp.cls.coeffs):
                coeffs[i] += comp.coeff * c
        return tuple(coeffs)

    def _check_consistency(self) -> None:
        totals: dict[tuple[str, str], int] = {}
        for pid, cluster in self._clusters.items():
            present = [c for c in cluster.component_ids]
            for i, j in itertools.combinations(present, 2):
                key = (i, j) if i < j else (j, i)
                totals[key] = totals.get(key, 0) + cluster.local_intersection_pair(i, j)
        for (i, j), local in totals.items():
            ci, cj = self.component(i), self.component(j)
            if ci.cls == cj.cls:
                continue  # members of one pencil; the lattice bound does not apply
            lattice = ci.cls.dot(cj.cls)
            if local > lattice:
                raise InconsistentConfigError(i, j, local, lattice)


@dataclass(frozen=True)
class CertificateRow:
    """One exceptional-divisor constraint: lambda * v <= k + 1."""

    point: str
    node: str
    k: int
    v: Fraction
    ratio: Optional[Fraction]  # (k+1)/v when v > 0, else no constraint


@dataclass(frozen=True)
class ComponentBound:
    component: str
    coeff: Fraction
    bound: Optional[Fraction]  # 1/coeff when coeff > 0


@dataclass(frozen=True)
class LctCertificate:
    """The threshold with the full constraint list proving it.

    ``lct`` is None when no constraint is active (the divisor misses the
    point entirely): the threshold is +infinity.  ``minimizer`` is
    ("component", id) or ("node", id); ties resolve to the earliest
    constraint in canonical order (component bounds first, then cluster
    rows in listed order).
    """

    lct: Optional[Fraction]
    minimizer: Optional[tuple[str, str]]
    rows: tuple[CertificateRow, ...]
    component_bounds: tuple[ComponentBound, ...]


def compile_configuration(cfg: DivisorConfiguration, point_id: str) -> WeightedCluster:
    return cfg.cluster_at(point_id)


def valuation(cluster: WeightedCluster, node_id: str, component: str) -> int:
    return cluster.valuation(node_id, component)


def log_discrepancy(cluster: WeightedCluster, node_id: str) -> int:
    return cluster.log_discrepancy(node_id)


def multiplicity_at(cfg: DivisorConfiguration, point_id: str) -> Fraction:
    """mult_p(D) = sum d_i * mult_p(C_i), read off the root node."""
    cluster = cfg.cluster_at(point_id)
    root = cluster.root
    return sum(
        (cfg.coefficients[c] * root.mult(c) for c in cluster.component_ids),
        Fraction(0),
    )


def local_intersection(cfg: DivisorConfiguration, point_id: str, comp_i: str, comp_j: str) -> int:
    cluster = cfg.cluster_at(point_id)
    for comp in (comp_i, comp_j):
        cfg.component(comp)
        if comp not in cluster.component_ids or all(
            n.mult(comp) == 0 for n in cluster.nodes
        ):
            raise ClusterError(f"component {comp!r} does not pass through {point_id!r}")
    return cluster.local_intersection_pair(comp_i, comp_j)


def _incident_components(cfg: DivisorConfiguration, point_id: str) -> list[str]:
    cluster = cfg.cluster_at(point_id)
    return [
        c.id
        for c in cfg.components
        if c.id in cluster.component_ids and any(n.mult(c.id) for n in cluster.nodes)
    ]


def certificate(cfg: DivisorConfiguration, point_id: Optional[str] = None) -> LctCertificate:
    """All threshold constraints, scoped to one point or to the whole divisor."""
    if point_id is None:
        comp_ids = [c.id for c in cfg.components]
        point_ids = [p.id for p in cfg.points]
    else:
        comp_ids = _incident_components(cfg, point_id)
        point_ids = [point_id]

    bounds = []
    for cid in comp_ids:
        d = cfg.coefficients[cid]
        bounds.append(ComponentBound(cid, d, Fraction(1) / d if d > 0 else None))
    rows = []
    for pid in point_ids:
        cluster = cfg.cluster_at(pid)
        for node in cluster.nodes:
            v = cluster.divisor_valuation(node.id, cfg.coefficients)
            k = cluster._log_discrepancies[node.id]
            ratio = Fraction(k + 1, 1) / v if v > 0 else None
            rows.append(CertificateRow(pid, node.id, k, v, ratio))

    best: Optional[Fraction] = None
    minimizer: Optional[tuple[str, str]] = None
    for b in bounds:
        if b.bound is not None and (best is None or b.bound < best):
            best, minimizer = b.bound, ("component", b.component)
    for row in rows:
        if row.ratio is not None and (best is None or row.ratio < best):
            best, minimizer = row.ratio, ("node", row.node)
    return LctCertificate(best, minimizer, tuple(rows), tuple(bounds))


def is_log_canonical(
    cfg: DivisorConfiguration, lam: Fraction, point_id: Optional[str] = None
) -> tuple[bool, LctCertificate]:
    """Whether (S, lam * D) is log canonical (at ``point_id`` if given)."""
    lam = Fraction(lam)
    if lam < 0:
        raise ClusterError("the scaling factor must be nonnegative")
    cert = certificate(cfg, point_id)
    verdict = cert.lct is None or lam <= cert.lct
    return verdict, cert


def lct_at_point(cfg: DivisorConfiguration, point_id: str) -> LctCertificate:
    return certificate(cfg, point_id)


def lct_global(cfg: DivisorConfiguration) -> LctCertificate:
    return certificate(cfg, None)


def non_klt_locus(cfg: DivisorConfiguration, lam: Fraction) -> tuple[frozenset[str], frozenset[str]]:
    """Components with lam*d >= 1 and points where some lam*v - k >= 1.

    A cluster point enters exactly when some exceptional divisor over it has
    discrepancy <= -1 for (S, lam*D), i.e. its coefficient lam*v - k in the
    log pullback reaches 1.
    """
    lam = Fraction(lam)
    comps = frozenset(c.id for c in cfg.components if lam * c.coeff >= 1)
    pts = set()
    for p in cfg.points:
        cluster = cfg.cluster_at(p.id)
        for node in cluster.nodes:
            v = cluster.divisor_valuation(node.id, cfg.coefficients)
            k = cluster._log_discrepancies[node.id]
            if lam * v - k >= 1:
                pts.add(p.id)
                break
    return comps, frozenset(pts)


def scale_configuration(cfg: DivisorConfiguration, lam: Fraction) -> DivisorConfiguration:
    lam = Fraction(lam)
    if lam <= 0:
        raise ClusterError("scaling factor must be positive")
    return DivisorConfiguration(
        cfg.surface,
        tuple(Component(c.id, c.cls, lam * c.coeff) for c in cfg.components),
        cfg.points,
        allow_signed=cfg.allow_signed,
    )


def with_coefficients(
    cfg: DivisorConfiguration, coeffs: Mapping[str, Fraction]
) -> DivisorConfiguration:
    return DivisorConfiguration(
        cfg.surface,
        tuple(
            Component(c.id, c.cls, Fraction(coeffs.get(c.id, c.coeff)))
            for c in cfg.components
        ),
        cfg.points,
        allow_signed=cfg.allow_signed,
    )


def _subtree_point(
    cluster: WeightedCluster,
    child_id: str,
    exc_id: str,
    coefficients: Mapping[str, Fraction],
) -> ConfigPoint:
    """The marked point on E under the direction ``child_id`` of the root."""
    root_id = cluster.root.id
    keep = {child_id}
    order = []
    for node in cluster.nodes:
        if node.id == child_id or (node.parent in keep):
            keep.add(node.id)
            order.append(node)
    comp_ids = [
        c for c in cluster.component_ids if any(n.mult(c) for n in order)
    ]
    nodes = []
    for node in order:
        mults = {c: node.mult(c) for c in comp_ids if node.mult(c)}
        on_e = root_id in node.proximate_to
        if on_e:
            mults[exc_id] = 1
        prox = tuple(a for a in node.proximate_to if a != root_id)
        parent = None if node.id == child_id else node.parent
        if parent is None:
            prox = ()
        nodes.append(ClusterNode(node.id, parent, prox, mults))
    return ConfigPoint(
        child_id, WeightedCluster(tuple(nodes), tuple(comp_ids) + (exc_id,)), ()
    )


def transform_by_blowup(cfg: DivisorConfiguration, point_id: str) -> DivisorConfiguration:
    """The configuration on the blow-up at ``point_id``.

    Components become strict transforms (class minus mult * E); the
    exceptional curve joins with coefficient mult_p(D) - 1, carried with its
    sign.  The points over p are the root's marked directions plus one fresh
    transverse crossing of E per unit of unconsumed root multiplicity; other
    marked points carry over unchanged.
    """
    cluster = cfg.cluster_at(point_id)
    new_surface = cfg.surface.blow_up()
    e_idx = new_surface.rank - 1
    exc_id = f"{point_id}.E"
    if any(c.id == exc_id for c in cfg.components):
        raise ClusterError(f"component id {exc_id!r} already taken")

    root = cluster.root
    mult_p = multiplicity_at(cfg, point_id)

    new_components = []
    for comp in cfg.components:
        m = root.mult(comp.id) if comp.id in cluster.component_ids else 0
        coeffs = comp.cls.coeffs + (-m,)
        new_components.append(Component(comp.id, DivisorClass(new_surface, coeffs), comp.coeff))
    e_coeffs = tuple([0] * e_idx + [1])
    new_components.append(
        Component(exc_id, DivisorClass(new_surface, e_coeffs), mult_p - 1)
    )

    new_points: list[ConfigPoint] = []
    for p in cfg.points:
        if p.id == point_id:
            continue
        # Same germ, untouched cluster: rebuild against the new classes.
        new_points.append(p)
    for child in cluster.children(root.id):
        new_points.append(_subtree_point(cluster, child.id, exc_id, cfg.coefficients))
    for comp_id in cluster.component_ids:
        for n in range(cluster.root_slack(comp_id)):
            new_points.append(
                ConfigPoint(
                    f"{point_id}.{comp_id}.dir{n}",
                    Germ.smooth(2),
                    (Incidence(comp_id, 0), Incidence(exc_id, 1)),
                )
            )
    return DivisorConfiguration(
        new_surface, tuple(new_components), tuple(new_points), allow_signed=True
    )
