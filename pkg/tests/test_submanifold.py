"""Extrinsic package at a point: hand values, frames, two-path gates."""

import numpy as np
import pytest

from kaehlerlab import submanifold as sm
from kaehlerlab.jets import jet_values


def data_at(name, u, **kw):
    return sm.extrinsic_data(sm.get_case(name), u, **kw)


class TestCatalog:
    def test_names(self):
        assert sm.case_names() == [
            "linear_c2", "graph_z2_c2", "graph_z3_c2", "graph_c3",
            "veronese_cp2",
        ]

    def test_unknown_case(self):
        with pytest.raises(KeyError):
            sm.get_case("nope")

    def test_map_values_matches_jets(self):
        rng = np.random.default_rng(2)
        for case in sm.CATALOG:
            u = rng.uniform(-1, 1, 2 * case.m)
            jets = case.map_jets(u)
            vals = case.map_values(u)
            assert np.allclose([j.value for j in jets], vals)


class TestInducedMetric:
    def test_linear_identity(self):
        d = data_at("linear_c2", [0.8, -0.6])
        assert np.allclose(d.g, np.eye(2))

    def test_graph_at_one(self):
        # |dF|^2 = 1 + 4|z|^2 at z = 1.
        d = data_at("graph_z2_c2", [1.0, 0.0])
        assert np.allclose(d.g, 5.0 * np.eye(2), atol=1e-12)

    def test_veronese_at_origin(self):
        d = data_at("veronese_cp2", [0.0, 0.0])
        assert np.allclose(d.g, 2.0 * np.eye(2), atol=1e-12)

    def test_metric_compatibility_of_gamma(self):
        rng = np.random.default_rng(7)
        case = sm.get_case("graph_z2_c2")
        for _ in range(10):
            geo = sm.PointGeometry(case, rng.uniform(-1, 1, 2))
            nu = 2
            dg = np.empty((nu, nu, nu))
            for i in range(nu):
                for k in range(nu):
                    for ll in range(nu):
                        dg[i, k, ll] = geo.g_jet[k, ll].derivative(i).value
            gam = jet_values(geo.gamma_jet)
            g = jet_values(geo.g_jet)
            nabla_g = (
                dg
                - np.einsum("tik,tl->ikl", gam, g)
                - np.einsum("til,kt->ikl", gam, g)
            )
            assert np.abs(nabla_g).max() <= 1e-9

    def test_gamma_symmetry_exact(self):
        geo = sm.PointGeometry(sm.get_case("veronese_cp2"), [0.3, 0.2])
        for k in range(2):
            for i in range(2):
                for j in range(2):
                    assert geo.gamma_jet[k, i, j] == geo.gamma_jet[k, j, i]


class TestNormalFrame:
    def test_linear_frame_is_coordinate_pair(self):
        d = data_at("linear_c2", [0.1, 0.2])
        assert np.allclose(d.N, [[0, 0, 1, 0], [0, 0, 0, 1]])

    def test_orthonormality_and_tangency(self):
        rng = np.random.default_rng(3)
        for case in sm.CATALOG:
            d = sm.extrinsic_data(case, rng.uniform(-1, 1, 2))
            assert d.frame_residuals["normal_orthonormality"] <= 1e-10
            assert d.frame_residuals["normal_tangency"] <= 1e-10
            assert d.frame_residuals["gamma_perp_antisymmetry"] <= 1e-10

    def test_j_pairing(self):
        rng = np.random.default_rng(5)
        for case in sm.CATALOG:
            d = sm.extrinsic_data(case, rng.uniform(-1, 1, 2))
            J = d.J_amb
            for a in range(d.l):
                assert np.allclose(J @ d.N[2 * a], d.N[2 * a + 1], atol=1e-10)

    def test_frame_count_matches_codimension(self):
        d = data_at("graph_c3", [0.4, 0.3])
        assert d.N.shape == (4, 6)


class TestSecondFundamentalForm:
    def test_linear_vanishes(self):
        d = data_at("linear_c2", [0.5, -0.5])
        assert np.abs(d.b).max() == 0.0
        assert np.abs(d.nabla_b).max() == 0.0
        assert np.abs(d.r).max() == 0.0
        assert np.abs(d.r_perp).max() == 0.0

    def test_graph_hand_values_at_origin(self):
        d = data_at("graph_z2_c2", [0.0, 0.0])
        assert d.b[0, 0, 0] == pytest.approx(2.0)
        assert d.b[0, 1, 1] == pytest.approx(-2.0)
        assert d.b[1, 0, 1] == pytest.approx(2.0)
        assert np.allclose(d.A[0], [[2.0, 0.0], [0.0, -2.0]], atol=1e-12)

    def test_b_symmetry(self):
        d = data_at("graph_c3", [0.6, -0.2])
        assert np.allclose(d.b, np.swapaxes(d.b, 1, 2))

    def test_nabla_b_total_symmetry(self):
        rng = np.random.default_rng(11)
        for case in sm.CATALOG:
            d = sm.extrinsic_data(case, rng.uniform(-1, 1, 2))
            nb = d.nabla_b
            scale = 1 + np.abs(nb).max()
            assert np.abs(nb - np.einsum("iajk->jaik", nb)).max() / scale <= 1e-9
            assert np.abs(nb - np.einsum("iajk->kaji", nb)).max() / scale <= 1e-9

    def test_veronese_parallel_b(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            d = data_at("veronese_cp2", rng.uniform(-1, 1, 2))
            assert np.abs(d.nabla_b).max() <= 1e-8


class TestTwoPathGates:
    def test_all_cases_agree(self):
        rng = np.random.default_rng(17)
        for case in sm.CATALOG:
            for _ in range(3):
                d = sm.extrinsic_data(case, rng.uniform(-1, 1, 2))
                for key, val in d.two_path.items():
                    assert val <= sm.TWO_PATH_TOL[key], (case.name, key, val)


class TestFrameCovariance:
    def test_norms_invariant_under_seed_remix(self):
        rng = np.random.default_rng(19)
        for case in sm.CATALOG:
            u = rng.uniform(-0.8, 0.8, 2)
            d1 = sm.extrinsic_data(case, u)
            dim = case.ambient.real_dim
            mix, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
            d2 = sm.extrinsic_data(case, u, normal_seed_mix=mix)
            n1 = sm.tensor_norms(d1)
            n2 = sm.tensor_norms(d2)
            for key in n1:
                assert n1[key] == pytest.approx(n2[key], abs=1e-9), (
                    case.name, key
                )
            # Frame-resolved components may differ; scalar residuals may not.
            for key in d1.two_path:
                assert abs(d1.two_path[key] - d2.two_path[key]) <= 1e-9


class TestCurvature:
    def test_veronese_sectional(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            d = data_at("veronese_cp2", rng.uniform(-1, 1, 2))
            assert sm.sectional_curvature(d) == pytest.approx(2.0, abs=1e-8)

    def test_veronese_normal_curvature_nonzero(self):
        d = data_at("veronese_cp2", [0.2, -0.5])
        assert sm.tensor_norms(d)["r_perp"] >= 0.5

    def test_veronese_locally_symmetric(self):
        rng = np.random.default_rng(29)
        for _ in range(5):
            d = data_at("veronese_cp2", rng.uniform(-1, 1, 2))
            assert np.abs(d.nabla_r).max() <= 1e-7
            assert np.abs(d.nabla_r_perp).max() <= 1e-7

    def test_flat_graph_curvature_nontrivial(self):
        d = data_at("graph_z2_c2", [0.5, 0.3])
        assert sm.tensor_norms(d)["r"] > 1e-3


class TestShapeOperators:
    def test_traceless(self):
        rng = np.random.default_rng(31)
        for case in sm.CATALOG:
            d = sm.extrinsic_data(case, rng.uniform(-1, 1, 2))
            for a in range(2 * d.l):
                assert abs(np.trace(d.A[a])) <= 1e-9

    def test_duality_with_b(self):
        d = data_at("graph_c3", [0.3, 0.7])
        lowered = np.einsum("akj,kt->ajt", d.A, d.g)
        assert np.allclose(lowered, np.einsum("ajt->ajt", d.b), atol=1e-10)

    def test_nondegenerate_direction_exists(self):
        d = data_at("graph_z2_c2", [0.2, 0.1])
        assert sm.max_shape_operator_determinant(d) > 1e-3
