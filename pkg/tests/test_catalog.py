import numpy as np
import pytest

from metriclie import ProbePlan, go_survey, symmetric_pair_check, unimodularity_audit
from metriclie.catalog import catalog_entries, catalog_names, get_entry, product_entry, product_model
from metriclie.geodesic import go_certificate

FAST = ProbePlan(random_count=40)


@pytest.fixture(scope="module")
def entries():
    return catalog_entries()


def test_names_resolve(entries):
    assert [e.name for e in entries] == catalog_names()
    assert get_entry("heisenberg*abelian2").model.n == 5
    with pytest.raises(KeyError):
        get_entry("no_such_model")


def test_expected_go_verdicts(entries):
    for e in entries:
        assert go_survey(e.model, FAST).verdict == e.go_verdict, e.name


def test_expected_unimodular_defects(entries):
    for e in entries:
        defect = unimodularity_audit(e.model).residuals["defect"]
        assert defect == pytest.approx(e.unimodular_defect, abs=1e-12), e.name


def test_symmetric_pairs(entries):
    for e in entries:
        assert bool(symmetric_pair_check(e.model)) == e.symmetric_pair, e.name


def test_recorded_witnesses(entries):
    for e in entries:
        if e.go_witness is None:
            continue
        x, y, value = e.go_witness
        cert = go_certificate(e.model, np.array(x))
        assert not cert.feasible
        assert np.allclose(cert.witness, y, atol=1e-12), e.name
        assert cert.witness_value == pytest.approx(value, abs=1e-9)


def test_every_entry_documents_its_expectations(entries):
    for e in entries:
        assert e.provenance_notes, e.name
        assert e.model.warnings == (), e.name


def test_product_blocks():
    p = product_model(get_entry("sphere"), get_entry("e2_plane"))
    assert p.n == 6 and p.isotropy.dim == 2 and p.r == 4
    assert np.allclose(p.metric, np.eye(4))
    assert len(set(p.algebra.names)) == 6
    e = product_entry(get_entry("so3_squashed"), get_entry("heisenberg"))
    assert e.go_verdict == "fail"
    assert np.allclose(e.ricci_matrix, np.diag([0, 0, 2, -0.5, -0.5, 0.5]))
