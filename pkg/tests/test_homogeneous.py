import numpy as np
import pytest

from metriclie import (ModelValidationError, StructureTensor, Subspace, build_model, make_split,
                       project_h, project_m, restricted_ad)
from metriclie.catalog import get_entry, noneffective_example
from metriclie.homogeneous import ad_on_m, m_bracket
from conftest import so3


def violations(exc):
    return {v.invariant for v in exc.value.violations}


def test_sphere_complement_from_killing_form():
    m = build_model(so3(), Subspace(np.eye(3)[:1]), np.eye(2), name="s2")
    assert m.r == 2
    assert np.allclose(np.abs(m.complement.span), np.eye(3)[1:])
    x = np.array([2.0, 3.0, -1.0])
    assert np.allclose(project_h(m, x), [2])
    assert np.allclose(m.to_algebra(project_m(m, x)), [0, 3, -1])


def test_degenerate_killing_needs_complement():
    heis = StructureTensor.from_brackets(3, [(0, 1, 2, 1.0)])
    with pytest.raises(ModelValidationError) as exc:
        build_model(heis, Subspace(np.eye(3)[2:]), np.eye(2))
    assert "complement-required" in violations(exc)


def test_jacobi_failure_is_reported_with_other_violations():
    bad = StructureTensor.from_brackets(3, [(0, 1, 0, 1.0), (0, 2, 1, 1.0)])
    with pytest.raises(ModelValidationError) as exc:
        build_model(bad, Subspace.zero(3), -np.eye(3), Subspace.full(3))
    assert {"jacobi", "metric-spd"} <= violations(exc)


def test_non_reductive_complement_rejected():
    e2 = StructureTensor.from_brackets(3, [(0, 1, 2, 1.0), (0, 2, 1, -1.0)])
    comp = Subspace(np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
    with pytest.raises(ModelValidationError) as exc:
        build_model(e2, Subspace(np.eye(3)[:1]), np.eye(2), comp)
    assert "reductive" in violations(exc)


def test_metric_invariance_checked():
    with pytest.raises(ModelValidationError) as exc:
        build_model(so3(), Subspace(np.eye(3)[:1]), np.diag([1.0, 2.0]))
    assert violations(exc) == {"metric-invariance"}
    forced = build_model(so3(), Subspace(np.eye(3)[:1]), np.diag([1.0, 2.0]), force=True)
    assert any("metric-invariance" in w for w in forced.warnings)


def test_not_a_direct_sum():
    with pytest.raises(ModelValidationError) as exc:
        build_model(so3(), Subspace(np.eye(3)[:1]), np.eye(2), Subspace(np.eye(3)[:2]))
    assert violations(exc) == {"direct-sum"}


def test_isotropy_not_subalgebra():
    with pytest.raises(ModelValidationError) as exc:
        build_model(so3(), Subspace(np.eye(3)[:2]), np.eye(1), Subspace(np.eye(3)[2:]))
    assert "subalgebra" in violations(exc)


def test_noneffective_model_warns():
    m = noneffective_example()
    assert any("non-effective" in w for w in m.warnings)


def test_onb_is_g_orthonormal(rng):
    a = rng.standard_normal((3, 3))
    g = a @ a.T + np.eye(3)
    m = build_model(so3(), Subspace.zero(3), g, Subspace.full(3))
    assert np.allclose(m.onb.T @ g @ m.onb, np.eye(3))


def test_ad_h_skew_on_sphere():
    m = get_entry("sphere").model
    a = ad_on_m(m, [1.0, 0.0, 0.0])
    assert np.allclose(m.metric @ a + a.T @ m.metric, 0)
    assert np.allclose(m_bracket(m, [0, 1, 0], [0, 0, 1]), 0)


def test_split_requires_invariance():
    m = get_entry("e2_plane").model
    with pytest.raises(ValueError):
        make_split(m, Subspace(np.array([[0.0, 1.0, 0.0]])))
    split = make_split(m, Subspace(np.eye(3)[1:]))
    assert split.m2.dim == 0


def test_split_complement_is_g_orthogonal():
    m = get_entry("heisenberg_rotation").model
    split = make_split(m, Subspace(np.array([[0.0, 0, 0, 1]])))
    assert split.m2.dim == 2
    assert np.allclose(split.m2.span[:, 3], 0)


def test_restricted_ad_squashed_not_skew():
    m = get_entry("so3_squashed").model
    a = restricted_ad(m, np.array([1.0, 0, 0]), Subspace.full(3))
    assert np.max(np.abs(a + a.T)) == pytest.approx(1 / np.sqrt(2))
    b = restricted_ad(m, np.array([0, 0, 1.0]), Subspace.full(3))
    assert np.allclose(b + b.T, 0)
