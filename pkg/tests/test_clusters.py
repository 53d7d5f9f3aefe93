"""Tests for clusters, log canonicity, thresholds and blow-up transforms."""

from fractions import Fraction

import pytest

from delpezzo_lct import (
    ClusterError,
    ClusterNode,
    Component,
    ConfigPoint,
    DivisorClass,
    DivisorConfiguration,
    Germ,
    Incidence,
    InconsistentConfigError,
    WeightedCluster,
    compile_configuration,
    is_log_canonical,
    lct_at_point,
    lct_global,
    local_intersection,
    log_discrepancy,
    make_surface,
    multiplicity_at,
    non_klt_locus,
    scale_configuration,
    transform_by_blowup,
    valuation,
    with_coefficients,
)
from delpezzo_lct.glct import class_E, class_L

ONE = Fraction(1)


def plane_config(germ, assignment, coeffs=None):
    """A single-point configuration on the plane with generous classes."""
    s = make_surface(9)
    comp_ids = []
    for c in assignment.values():
        if c not in comp_ids:
            comp_ids.append(c)
    coeffs = coeffs or {c: ONE for c in comp_ids}
    comps = tuple(
        Component(c, DivisorClass(s, (30 + i,)), coeffs[c])
        for i, c in enumerate(comp_ids)
    )
    point = ConfigPoint(
        "p", germ, tuple(Incidence(assignment[b], b) for b in range(germ.branches))
    )
    return DivisorConfiguration(s, comps, (point,))


def explicit_config(nodes, comp_ids, coeffs):
    s = make_surface(9)
    cluster = WeightedCluster(nodes, comp_ids)
    comps = tuple(
        Component(c, DivisorClass(s, (30 + i,)), coeffs[c])
        for i, c in enumerate(comp_ids)
    )
    return DivisorConfiguration(s, comps, (ConfigPoint("p", cluster),))


class TestGermCompilation:
    def test_ordinary_triple_point(self):
        cfg = plane_config(Germ.ordinary(3), {0: "a", 1: "b", 2: "c"})
        cl = compile_configuration(cfg, "p")
        assert len(cl.nodes) == 1
        assert cl.root.mults == {"a": 1, "b": 1, "c": 1}

    def test_cusp_template(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        cl = compile_configuration(cfg, "p")
        assert [n.mult("c") for n in cl.nodes] == [2, 1, 1]
        sat = cl.nodes[2]
        assert set(sat.proximate_to) == {cl.nodes[0].id, cl.nodes[1].id}

    def test_tacnode_curve_template(self):
        cfg = plane_config(Germ.tacnode_curve(), {0: "c", 1: "c"})
        cl = compile_configuration(cfg, "p")
        assert [n.mult("c") for n in cl.nodes] == [2, 2]

    def test_branch_slots_must_cover_arity(self):
        s = make_surface(9)
        comp = Component("c", DivisorClass(s, (5,)), ONE)
        point = ConfigPoint("p", Germ.tacnode(), (Incidence("c", 0),))
        with pytest.raises(ClusterError, match="branch"):
            DivisorConfiguration(s, (comp,), (point,))


class TestValuations:
    def test_cusp_valuations(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        cl = compile_configuration(cfg, "p")
        assert [valuation(cl, n.id, "c") for n in cl.nodes] == [2, 3, 6]

    def test_smooth_root_valuation(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"})
        cl = compile_configuration(cfg, "p")
        assert valuation(cl, cl.root.id, "c") == 1

    def test_tacnode_curve_second_node(self):
        cfg = plane_config(Germ.tacnode_curve(), {0: "c", 1: "c"})
        cl = compile_configuration(cfg, "p")
        assert valuation(cl, cl.nodes[1].id, "c") == 4

    def test_unknown_ids_raise(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        cl = compile_configuration(cfg, "p")
        with pytest.raises(ClusterError):
            valuation(cl, "nowhere", "c")
        with pytest.raises(ClusterError):
            valuation(cl, cl.root.id, "ghost")


class TestLogDiscrepancy:
    def test_root(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"})
        cl = compile_configuration(cfg, "p")
        assert log_discrepancy(cl, cl.root.id) == 2

    def test_cusp_satellite(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        cl = compile_configuration(cfg, "p")
        assert log_discrepancy(cl, cl.nodes[2].id) == 5

    def test_chain_of_two_free_nodes(self):
        nodes = (
            ClusterNode("n0", None, (), {"c": 1}),
            ClusterNode("n1", "n0", ("n0",), {"c": 1}),
        )
        cfg = explicit_config(nodes, ("c",), {"c": ONE})
        cl = compile_configuration(cfg, "p")
        assert log_discrepancy(cl, "p.n1") == 3


class TestClusterValidation:
    def test_proximity_inequality_enforced(self):
        nodes = (
            ClusterNode("n0", None, (), {"c": 1}),
            ClusterNode("n1", "n0", ("n0",), {"c": 2}),
        )
        with pytest.raises(ClusterError, match="proximity inequality"):
            WeightedCluster(nodes, ("c",))

    def test_parent_must_precede(self):
        nodes = (
            ClusterNode("n0", None, (), {"c": 2}),
            ClusterNode("n1", "n2", ("n2",), {"c": 1}),
            ClusterNode("n2", "n0", ("n0",), {"c": 1}),
        )
        with pytest.raises(ClusterError):
            WeightedCluster(nodes, ("c",))

    def test_satellite_needs_parent_proximity(self):
        # n2 claims proximity to n0 but its parent n1 is not proximate to n0.
        nodes = (
            ClusterNode("n0", None, (), {"c": 3}),
            ClusterNode("n1", "n0", ("n0",), {"c": 2}),
            ClusterNode("n2", "n1", ("n1", "n0"), {"c": 1}),
            ClusterNode("n3", "n2", ("n2", "n1"), {"c": 1}),
            ClusterNode("n4", "n3", ("n3", "n0"), {"c": 1}),
        )
        with pytest.raises(ClusterError, match="satellite"):
            WeightedCluster(nodes, ("c",))

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(ClusterError):
            ClusterNode("n0", None, (), {"c": -1})


class TestMultiplicityAt:
    def test_single_smooth_component(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"})
        assert multiplicity_at(cfg, "p") == 1

    def test_weighted_triple_point(self):
        cfg = plane_config(
            Germ.ordinary(3),
            {0: "a", 1: "b", 2: "c"},
            coeffs={"a": Fraction(1, 2), "b": Fraction(1, 3), "c": Fraction(1, 6)},
        )
        assert multiplicity_at(cfg, "p") == 1


class TestLocalIntersection:
    def test_transverse_pair(self):
        cfg = plane_config(Germ.smooth(2), {0: "a", 1: "b"})
        assert local_intersection(cfg, "p", "a", "b") == 1

    def test_tacnode_pair(self):
        cfg = plane_config(Germ.tacnode(), {0: "a", 1: "b"})
        assert local_intersection(cfg, "p", "a", "b") == 2

    def test_cusp_with_tangent_line(self):
        nodes = (
            ClusterNode("n0", None, (), {"c": 2, "l": 1}),
            ClusterNode("n1", "n0", ("n0",), {"c": 1, "l": 1}),
            ClusterNode("n2", "n1", ("n1", "n0"), {"c": 1}),
        )
        cfg = explicit_config(nodes, ("c", "l"), {"c": ONE, "l": ONE})
        assert local_intersection(cfg, "p", "c", "l") == 3

    def test_absent_component_raises(self):
        cfg = plane_config(Germ.smooth(2), {0: "a", 1: "b"})
        with pytest.raises(ClusterError):
            local_intersection(cfg, "p", "a", "ghost")


class TestLogCanonical:
    def test_triple_point_at_two_thirds(self):
        cfg = plane_config(Germ.ordinary(3), {0: "a", 1: "b", 2: "c"})
        ok, cert = is_log_canonical(cfg, Fraction(2, 3), "p")
        assert ok
        root_row = cert.rows[0]
        assert Fraction(2, 3) * root_row.v - root_row.k == 1  # equality at the root

    def test_lambda_zero_is_always_log_canonical(self):
        cfg = plane_config(Germ.cusp(), {0: "c"}, coeffs={"c": Fraction(7)})
        ok, _ = is_log_canonical(cfg, Fraction(0))
        assert ok

    def test_negative_lambda_rejected(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"})
        with pytest.raises(ClusterError):
            is_log_canonical(cfg, Fraction(-1))

    def test_verdict_matches_threshold(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        lct = lct_at_point(cfg, "p").lct
        assert lct == Fraction(5, 6)
        assert is_log_canonical(cfg, lct, "p")[0]
        assert not is_log_canonical(cfg, lct + Fraction(1, 1000), "p")[0]


class TestLct:
    @pytest.mark.parametrize(
        "germ,assignment,expected",
        [
            (Germ.node(), {0: "c", 1: "c"}, Fraction(1)),
            (Germ.cusp(), {0: "c"}, Fraction(5, 6)),
            (Germ.tacnode_curve(), {0: "c", 1: "c"}, Fraction(3, 4)),
            (Germ.ordinary(3), {0: "a", 1: "b", 2: "c"}, Fraction(2, 3)),
        ],
    )
    def test_catalog_values(self, germ, assignment, expected):
        cfg = plane_config(germ, assignment)
        assert lct_at_point(cfg, "p").lct == expected

    def test_cusp_minimizer_is_satellite(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        cert = lct_at_point(cfg, "p")
        assert cert.minimizer == ("node", "p.n2")
        row = next(r for r in cert.rows if r.node == "p.n2")
        assert (row.k + 1, row.v) == (5, 6)

    def test_coefficient_minimizer(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"}, coeffs={"c": Fraction(3)})
        cert = lct_at_point(cfg, "p")
        assert cert.lct == Fraction(1, 3)
        assert cert.minimizer == ("component", "c")

    def test_zero_divisor_at_point_is_infinite(self):
        s = make_surface(9)
        comps = (Component("c", DivisorClass(s, (5,)), ONE),)
        cluster = WeightedCluster((ClusterNode("n0", None, (), {}),), ())
        cfg = DivisorConfiguration(s, comps, (ConfigPoint("p", cluster),))
        cert = lct_at_point(cfg, "p")
        assert cert.lct is None
        assert cert.minimizer is None

    def test_global_includes_off_point_components(self):
        s = make_surface(9)
        comps = (
            Component("c", DivisorClass(s, (5,)), ONE),
            Component("d", DivisorClass(s, (7,)), Fraction(4)),
        )
        point = ConfigPoint("p", Germ.smooth(1), (Incidence("c", 0),))
        cfg = DivisorConfiguration(s, comps, (point,))
        assert lct_at_point(cfg, "p").lct == 1
        assert lct_global(cfg).lct == Fraction(1, 4)


class TestNonKltLocus:
    def test_triple_point_boundary(self):
        cfg = plane_config(Germ.ordinary(3), {0: "a", 1: "b", 2: "c"})
        comps, points = non_klt_locus(cfg, Fraction(2, 3))
        assert comps == frozenset()
        assert points == frozenset({"p"})

    def test_below_threshold_is_empty(self):
        cfg = plane_config(Germ.ordinary(3), {0: "a", 1: "b", 2: "c"})
        comps, points = non_klt_locus(cfg, Fraction(1, 2))
        assert comps == frozenset() and points == frozenset()

    def test_component_at_coefficient_boundary(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"}, coeffs={"c": Fraction(2)})
        comps, _ = non_klt_locus(cfg, Fraction(1, 2))
        assert comps == frozenset({"c"})


class TestConsistency:
    def test_inconsistent_local_intersections_rejected(self):
        s = make_surface(4)
        comps = (
            Component("E1", class_E(s, 1), ONE),
            Component("E2", class_E(s, 2), ONE),
        )
        point = ConfigPoint(
            "p", Germ.smooth(2), (Incidence("E1", 0), Incidence("E2", 1))
        )
        with pytest.raises(InconsistentConfigError):
            DivisorConfiguration(s, comps, (point,))

    def test_equality_is_allowed(self):
        s = make_surface(4)
        comps = (
            Component("E1", class_E(s, 1), ONE),
            Component("L12", class_L(s, 1, 2), ONE),
        )
        point = ConfigPoint(
            "p", Germ.smooth(2), (Incidence("E1", 0), Incidence("L12", 1))
        )
        DivisorConfiguration(s, comps, (point,))  # must not raise

    def test_nonpositive_coefficient_rejected_by_default(self):
        s = make_surface(9)
        with pytest.raises(ClusterError, match="positive"):
            DivisorConfiguration(
                s, (Component("c", DivisorClass(s, (5,)), Fraction(0)),), ()
            )


class TestTransform:
    def test_smooth_curve_gives_zero_exceptional_coefficient(self):
        cfg = plane_config(Germ.smooth(1), {0: "c"})
        t = transform_by_blowup(cfg, "p")
        exc = next(c for c in t.components if c.id == "p.E")
        assert exc.coeff == 0
        assert t.surface.rank == cfg.surface.rank + 1

    def test_triple_point_gives_two(self):
        cfg = plane_config(Germ.ordinary(3), {0: "a", 1: "b", 2: "c"})
        t = transform_by_blowup(cfg, "p")
        exc = next(c for c in t.components if c.id == "p.E")
        assert exc.coeff == 2

    def test_strict_transform_classes(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        t = transform_by_blowup(cfg, "p")
        strict = next(c for c in t.components if c.id == "c")
        assert strict.cls.coeffs == (30, -2)

    def test_cusp_becomes_tangent_to_exceptional(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        t = transform_by_blowup(cfg, "p")
        assert len(t.points) == 1
        cl = t.cluster_at(t.points[0].id)
        # strict transform is tangent to E: both share the two-node chain
        assert [n.mult("c") for n in cl.nodes] == [1, 1]
        assert [n.mult("p.E") for n in cl.nodes] == [1, 1]

    def test_transfer_equivalence_on_cusp(self):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        for lam in (Fraction(1, 2), Fraction(5, 6), Fraction(9, 10), Fraction(1)):
            before, _ = is_log_canonical(cfg, lam, "p")
            blown = transform_by_blowup(scale_configuration(cfg, lam), "p")
            after, _ = is_log_canonical(blown, ONE)
            assert before == after, lam

    def test_degree_one_surface_can_be_blown_up(self):
        s = make_surface(1)
        cfg = DivisorConfiguration(
            s,
            (Component("C", -s.canonical, ONE),),
            (ConfigPoint("p", Germ.cusp(), (Incidence("C", 0),)),),
        )
        t = transform_by_blowup(cfg, "p")
        assert t.surface.rank == 10

    def test_quadric_cannot_be_blown_up(self):
        q = make_surface(8, "quadric")
        cfg = DivisorConfiguration(
            q,
            (
                Component("f1", DivisorClass(q, (1, 0)), Fraction(2)),
                Component("f2", DivisorClass(q, (0, 1)), Fraction(2)),
            ),
            (
                ConfigPoint(
                    "p", Germ.smooth(2), (Incidence("f1", 0), Incidence("f2", 1))
                ),
            ),
        )
        with pytest.raises(Exception):
            transform_by_blowup(cfg, "p")


class TestIteratedTransform:
    """Two blow-ups of a cusp walk through the tangency and the satellite corner."""

    def _double(self, lam):
        cfg = plane_config(Germ.cusp(), {0: "c"})
        t1 = transform_by_blowup(scale_configuration(cfg, lam), "p")
        t2 = transform_by_blowup(t1, t1.points[0].id)
        return cfg, t1, t2

    def test_equivalence_survives_two_levels(self):
        for lam in (Fraction(1, 2), Fraction(5, 6), Fraction(17, 20), Fraction(1)):
            cfg, t1, t2 = self._double(lam)
            lhs, _ = is_log_canonical(cfg, lam, "p")
            mid, _ = is_log_canonical(t1, ONE)
            rhs, _ = is_log_canonical(t2, ONE)
            assert lhs == mid == rhs

    def test_second_level_is_a_triple_corner(self):
        _, _, t2 = self._double(Fraction(5, 6))
        assert len(t2.points) == 1
        cl = t2.cluster_at(t2.points[0].id)
        assert len(cl.nodes) == 1
        assert sorted(cl.nodes[0].mults.values()) == [1, 1, 1]
        coeffs = sorted(c.coeff for c in t2.components)
        assert coeffs == [Fraction(1, 2), Fraction(2, 3), Fraction(5, 6)]


def test_scale_and_with_coefficients():
    cfg = plane_config(Germ.cusp(), {0: "c"})
    doubled = scale_configuration(cfg, Fraction(2))
    assert doubled.coefficients["c"] == 2
    reset = with_coefficients(doubled, {"c": Fraction(1, 3)})
    assert lct_at_point(reset, "p").lct == Fraction(5, 2)
