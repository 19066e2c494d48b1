"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints a
PASS/FAIL line per criterion.  ``python tests/test_acceptance.py`` does the same.
"""
import numpy as np
import pytest

from metriclie import (OrbitPlan, ProbePlan, bracket, go_survey, killing_form, length_profile,
                       make_split, ricci_matrix, skew_symmetry_audit, symmetric_pair_check,
                       unimodularity_audit, validate_structure, verify_abelian_ideal_theorem)
from metriclie.catalog import base_entries, catalog_entries, get_entry, product_model
from metriclie.curvature import RicStarSetup
from metriclie.geodesic import certificate_check
from metriclie.homogeneous import m_bracket
from metriclie.liealg import ad_exponential
from metriclie.modelfile import emit_model, entry_subspaces, parse_model
from metriclie.report import AnalysisOptions, dumps, run_analysis

SEED = 42


@pytest.fixture(scope="module")
def catalog():
    return catalog_entries()


@pytest.fixture(scope="module")
def surveys(catalog):
    return {e.name: go_survey(e.model) for e in catalog}


def test_criterion_01_biinvariant_ricci():
    m = get_entry("so3_biinvariant").model
    # B = -2I, so the Killing term alone gives 1 and the bracket terms cancel to -1/2
    err = np.max(np.abs(ricci_matrix(m) - 0.5 * np.eye(3)))
    print(f"so3 bi-invariant: max |Ric - I/2| = {err:.3g}")
    assert err <= 1e-9


def test_criterion_02_round_sphere():
    m = get_entry("sphere").model
    err = np.max(np.abs(ricci_matrix(m) - np.eye(2)))
    survey = go_survey(m)
    check = max(certificate_check(m, c) for c in survey.certificates)
    print(f"sphere: max |Ric - I| = {err:.3g}, {len(survey.certificates)} probes, "
          f"max re-substitution residual {check:.3g}")
    assert err <= 1e-9
    assert symmetric_pair_check(m)
    assert survey.verdict == "pass"
    assert check <= 1e-9


def test_criterion_03_squashed_witness():
    m = get_entry("so3_squashed").model
    survey = go_survey(m)
    cert = survey.failure
    assert survey.verdict == "fail"
    x = np.array([1.0, 0.0, 1.0])
    assert np.array_equal(cert.direction, x)
    # derived oracle: g([X, e2], X) with [e1, e2] = e3, [e3, e2] = -e1, g = diag(1,1,2)
    direct = abs(float(m_bracket(m, x, [0.0, 1.0, 0.0]) @ m.metric @ x))
    print(f"squashed so3: witness Y = {cert.witness}, value {cert.witness_value:.12g}, "
          f"direct {direct:.12g}")
    assert abs(cert.witness_value - 1.0) <= 1e-9
    assert abs(direct - 1.0) <= 1e-9


def test_criterion_04_go_implies_unimodular(catalog, surveys):
    for e in catalog:
        defect = unimodularity_audit(e.model).residuals["defect"]
        if surveys[e.name].verdict == "pass":
            assert defect <= 1e-9, e.name
    nu = unimodularity_audit(get_entry("nonunimodular2").model).residuals["defect"]
    print(f"non-unimodular entry: defect {nu!r}, survey {surveys['nonunimodular2'].verdict}")
    assert abs(nu - 1.0) <= 1e-12
    assert surveys["nonunimodular2"].verdict == "fail"


def test_criterion_05_abelian_ideals_constant_length(catalog, surveys):
    plan = OrbitPlan(seed=SEED)
    targets = [e for e in catalog if e.name == "e2_plane" or e.name.startswith("abelian")
               and "*" not in e.name]
    assert len(targets) == 4
    for e in targets:
        for name, (ideal, _) in e.ideals.items():
            rep = verify_abelian_ideal_theorem(e.model, ideal, plan, surveys[e.name])
            print(f"{e.name}/{name}: {rep.status}, max spread {rep.max_spread:.3g}")
            assert rep.status == "pass", (e.name, name)
            assert rep.max_spread <= 1e-8
    prof = length_profile(get_entry("so3_squashed").model, [1.0, 0.0, 0.0], plan)
    print(f"squashed so3 e1: spread {prof.spread:.6f} ({prof.verdict})")
    assert prof.spread >= 0.9


def test_criterion_06_ric_star_identity(catalog):
    checked, nontrivial = 0, 0
    for e in catalog:
        for name, k in e.ks.items():
            setup = RicStarSetup(e.model, k)
            if setup.skew_residual > e.model.eps_rank or setup.m1_dim == 0:
                continue
            rng = np.random.default_rng(SEED)
            for _ in range(50):
                rep = setup.identity(setup.m1_vector(rng.standard_normal(setup.m1_dim)))
                assert rep.difference <= 1e-8, (e.name, name, rep)
                nontrivial += rep.correction > 1e-6
            checked += 1
    print(f"Ric* identity: {checked} (model, k) pairs x 50 samples, "
          f"{nontrivial} samples with a nonzero m2 correction")
    assert checked >= 10 and nontrivial > 0


def test_criterion_07_restricted_ad_skew(catalog, surveys):
    audited = 0
    for e in catalog:
        if surveys[e.name].verdict != "pass":
            continue
        for s in e.splits:
            rep = skew_symmetry_audit(e.model, make_split(e.model, s), surveys[e.name])
            assert rep.residuals["m2"] <= 1e-9, (e.name, s.label)
            if s.dim and rep.residuals["[h,m1]"] <= e.model.eps_rank:
                assert rep.residuals["m"] <= 1e-9, (e.name, s.label)
            assert rep.passed
            audited += 1
    print(f"skew-symmetry audit: {audited} splits on GO models")
    assert audited > 0


def test_criterion_08_product_law():
    rng = np.random.default_rng(SEED)
    base = base_entries()
    verdicts = {e.name: go_survey(e.model).verdict for e in base}
    mixed = 0
    for _ in range(20):
        a, b = (base[i] for i in rng.integers(0, len(base), size=2))
        p = product_model(a, b)
        assert p.n <= 8
        expected = "pass" if verdicts[a.name] == verdicts[b.name] == "pass" else "fail"
        assert go_survey(p).verdict == expected, p.name
        mixed += verdicts[a.name] != verdicts[b.name]
    print(f"product law: 20 seeded pairs, {mixed} with factors of differing verdicts")


def test_criterion_09_structural_numerics(catalog):
    rng = np.random.default_rng(SEED)
    worst_struct = worst_kill = worst_group = 0.0
    for e in catalog:
        t = e.model.algebra
        v = validate_structure(t)
        worst_struct = max(worst_struct, v.antisymmetry_residual, v.jacobi_residual)
        for _ in range(100):
            x, y, z = rng.standard_normal((3, t.dim))
            lhs = killing_form(t, bracket(t, x, y), z) + killing_form(t, y, bracket(t, x, z))
            worst_kill = max(worst_kill, abs(lhs))
        w = rng.standard_normal(t.dim)
        for s, u in rng.uniform(-1.5, 1.5, size=(5, 2)):
            diff = ad_exponential(t, w, s) @ ad_exponential(t, w, u) - ad_exponential(t, w, s + u)
            worst_group = max(worst_group, float(np.max(np.abs(diff))))
    print(f"structure residual {worst_struct:.3g}, Killing invariance {worst_kill:.3g}, "
          f"group law {worst_group:.3g}")
    assert worst_struct <= 1e-10
    assert worst_kill <= 1e-9
    assert worst_group <= 1e-10


def test_criterion_10_determinism_and_round_trip(catalog):
    opts = AnalysisOptions(seed=SEED)
    for e in catalog:
        text = emit_model(e.model, entry_subspaces(e))
        parsed = parse_model(text)
        assert emit_model(parsed, parsed.subspaces) == text, e.name
        first = dumps(run_analysis(parsed, opts))
        assert dumps(run_analysis(parse_model(text), opts)) == first, e.name
    print(f"{len(catalog)} entries: reports byte-identical, emit/parse fixed point")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
