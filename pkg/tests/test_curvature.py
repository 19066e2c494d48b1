import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from metriclie import StructureTensor, Subspace, build_model, ric_star_identity, ricci, ricci_matrix, z_vector
from metriclie.catalog import catalog_entries, get_entry, product_model
from metriclie.curvature import RicStarSetup
from conftest import left_invariant, random_metric, so3
from oracles import connection_ricci, milnor_algebra, milnor_ricci


def semidirect(d):
    """R acting on R^k by the matrix d: [e0, ei] = sum_j d[j, i] ej."""
    k = d.shape[0]
    recs = [(0, i + 1, j + 1, d[j, i]) for i in range(k) for j in range(k) if d[j, i]]
    return StructureTensor.from_brackets(k + 1, recs)


def test_biinvariant_so3():
    m = get_entry("so3_biinvariant").model
    assert np.allclose(ricci_matrix(m), 0.5 * np.eye(3), atol=1e-12)
    res = ricci(m, [1.0, 0.0, 0.0])
    assert res.killing_term == pytest.approx(1.0)
    assert res.value == pytest.approx(sum(res.terms))


def test_catalog_ricci_matches_recorded_values():
    for e in catalog_entries():
        assert np.max(np.abs(ricci_matrix(e.model) - e.ricci_matrix)) <= 1e-9, e.name


def test_catalog_ricci_matches_connection_oracle():
    for e in catalog_entries():
        assert np.max(np.abs(ricci_matrix(e.model) - connection_ricci(e.model))) <= 1e-9, e.name


@settings(max_examples=50, deadline=None)
@given(st.tuples(*[st.floats(-3, 3, allow_subnormal=False)] * 3))
def test_milnor_frames(lams):
    m = left_invariant(milnor_algebra(lams), np.eye(3))
    assert np.max(np.abs(ricci_matrix(m) - milnor_ricci(lams))) <= 1e-9 * (1 + max(map(abs, lams))) ** 2


@pytest.mark.parametrize("seed", range(8))
def test_random_nonunimodular_groups_against_connection(seed):
    rng = np.random.default_rng(seed)
    alg = semidirect(rng.standard_normal((3, 3)))
    m = left_invariant(alg, random_metric(rng, 4))
    assert np.linalg.norm(z_vector(m)) > 0
    assert np.max(np.abs(ricci_matrix(m) - connection_ricci(m))) <= 1e-9


def test_scaled_sphere_and_flat_plane():
    for c in (0.25, 3.0):
        m = build_model(so3(), Subspace(np.eye(3)[:1]), c * np.eye(2))
        assert np.allclose(ricci_matrix(m), np.eye(2))
    assert np.allclose(ricci_matrix(get_entry("e2_plane").model), 0)


def test_ricci_rejects_wrong_length():
    with pytest.raises(ValueError):
        ricci(get_entry("sphere").model, [1.0, 0.0, 0.0])


def test_ric_star_squashed_fibre():
    e = get_entry("so3_squashed")
    k = e.ks["k_e3"]
    x = np.array([0.0, 0.0, 1.0 / np.sqrt(2.0)])
    rep = ric_star_identity(e.model, k, x)
    assert rep.ricci == pytest.approx(1.0)
    assert rep.correction == pytest.approx(1.0)
    assert rep.left == pytest.approx(0.0, abs=1e-12)
    assert rep.hypotheses_met


def test_ric_star_diagonal_in_product():
    # so(3) + so(3) bi-invariant, k = diagonal subalgebra; m1 = diagonal, m2 = antidiagonal
    g = product_model(get_entry("so3_biinvariant"), get_entry("so3_biinvariant"))
    k = Subspace(np.hstack([np.eye(3), np.eye(3)]))
    setup = RicStarSetup(g, k)
    assert (setup.m1_dim, setup.m2_dim) == (3, 3)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = setup.m1_vector(rng.standard_normal(3))
        rep = setup.identity(x)
        assert rep.difference <= 1e-10
        assert rep.correction > 0
    # g-unit diagonal vectors f_i = (e_i + e_i')/sqrt2 satisfy [f1, f2] = f3/sqrt2,
    # so Ric* is 1/2 of the bi-invariant value 1/2; Ric itself stays 1/2
    rep = setup.identity(setup.m1_vector([1.0, 0.0, 0.0]))
    assert rep.left == pytest.approx(0.25)
    assert rep.ricci == pytest.approx(0.5)
    assert rep.correction == pytest.approx(0.25)


def test_ric_star_preconditions():
    m = get_entry("sphere").model
    with pytest.raises(ValueError):
        RicStarSetup(m, Subspace(np.eye(3)[1:2]))
    with pytest.raises(ValueError):
        RicStarSetup(m, Subspace(np.eye(3)[:2]))


def test_ric_star_skew_failure_is_flagged():
    e = get_entry("so3_squashed")
    setup = RicStarSetup(e.model, e.ks["k_e1"])
    assert not setup.identity(setup.m1_vector([1.0])).hypotheses_met
