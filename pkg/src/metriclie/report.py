"""Assembly of the JSON analysis report."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import __version__
from .catalog import symmetric_pair_check
from .curvature import RicStarSetup, ricci, ricci_matrix, z_vector
from .geodesic import (
    SCOPE_NOTE,
    ProbePlan,
    certificate_check,
    go_survey,
    naturally_reductive_check,
    skew_symmetry_audit,
    unimodularity_audit,
)
from .homogeneous import HomogeneousModel, make_split
from .killing import OrbitPlan, _AdCache, length_profile, verify_abelian_ideal_theorem
from .liealg import InvariantError, Subspace

SCHEMA_ID = "metriclie-report/1"
RIC_STAR_SAMPLES = 50


@dataclass(frozen=True)
class AnalysisOptions:
    seed: int = 42
    probes: int = 200
    eps_len: float = 1e-8
    include_samples: bool = True


def classify_subspaces(model: HomogeneousModel):
    """Split named subspaces by prefix: ``k*`` subalgebras, ``m1*`` splits, others ideals."""
    ks, splits, ideals = {}, {}, {}
    for name, s in model.subspaces.items():
        if name == "k" or name.startswith("k_"):
            ks[name] = s
        elif name == "m1" or name.startswith("m1_"):
            splits[name] = s
        else:
            ideals[name] = s
    return ks, splits, ideals


def _vec(v):
    return [float(x) for x in np.asarray(v, dtype=float).ravel()]


def _mat(a):
    return [_vec(row) for row in np.asarray(a, dtype=float)]


def certificate_json(model, cert):
    out = {"direction": _vec(cert.direction), "feasible": bool(cert.feasible),
           "residual": float(cert.residual), "threshold": float(cert.threshold),
           "h_solution": _vec(cert.h_solution)}
    if cert.feasible:
        out["check"] = certificate_check(model, cert)
    else:
        out["witness"] = _vec(cert.witness)
        out["witness_value"] = float(cert.witness_value)
    return out


def survey_json(model, survey):
    fail = survey.failure
    out = {"verdict": survey.verdict, "probe_plan": survey.probe_plan,
           "probes": len(survey.certificates),
           "feasible": sum(c.feasible for c in survey.certificates),
           "max_check": max((certificate_check(model, c) for c in survey.certificates
                             if c.feasible), default=0.0),
           "witness": certificate_json(model, fail) if fail is not None else None,
           "certificates": [dict(kind=k, **certificate_json(model, c))
                            for k, c in zip(survey.probes, survey.certificates)]}
    return out


def profile_json(profile, include_samples=True):
    sq = [s.sq_length for s in profile.samples]
    out = {"field": _vec(profile.field), "verdict": profile.verdict,
           "spread": profile.spread, "max_residual": profile.max_residual,
           "min_sq_length": float(min(sq)), "max_sq_length": float(max(sq)),
           "samples": len(profile.samples),
           "scope": "constant on the sampled orbit set"
           if profile.verdict == "constant" else None}
    if include_samples:
        out["orbit"] = [{"word": s.label, "length": s.length, "sq_length": s.sq_length,
                         "residual": s.residual} for s in profile.samples]
    return out


def audit_json(rep):
    return {"passed": bool(rep.passed), "residuals": dict(rep.residuals), "notes": list(rep.notes)}


def run_analysis(model: HomogeneousModel, options: AnalysisOptions = AnalysisOptions()) -> dict:
    """Run every applicable analysis and return the report as plain JSON data."""
    probe_plan = ProbePlan(random_count=options.probes, seed=options.seed)
    orbit_plan = OrbitPlan(seed=options.seed, eps_len=options.eps_len)
    ks, splits, ideals = classify_subspaces(model)

    survey = go_survey(model, probe_plan)
    rmat = ricci_matrix(model)
    eye = np.eye(model.r)
    terms = []
    for i in range(model.r):
        res = ricci(model, eye[i])
        if abs(res.value - sum(res.terms)) > 1e-12 * (1 + abs(res.value)):
            raise InvariantError("Ricci value differs from the sum of its terms")
        terms.append({"basis_index": i + 1, "value": res.value, "killing": res.killing_term,
                      "bracket_norm": res.bracket_norm_term, "double_sum": res.double_sum_term,
                      "z_term": res.z_term})

    nr = naturally_reductive_check(model)
    sp = symmetric_pair_check(model)
    report = {
        "schema": SCHEMA_ID,
        "tool": {"name": "metriclie", "version": __version__},
        "scope": SCOPE_NOTE,
        "model": {"name": model.name, "dimension": model.n, "basis": list(model.algebra.names),
                  "isotropy_dim": model.isotropy.dim, "complement_dim": model.r,
                  "isotropy": _mat(model.isotropy.span), "complement": _mat(model.complement.span),
                  "metric": _mat(model.metric), "warnings": list(model.warnings)},
        "tolerances": {"eps_struct": model.eps_struct, "eps_rank": model.eps_rank,
                       "eps_len": options.eps_len},
        "validation": {k: (None if v is None else float(v)) for k, v in model.residuals.items()},
        "unimodularity": audit_json(unimodularity_audit(model, survey)),
        "z_vector": _vec(z_vector(model)),
        "ricci": {"matrix": _mat(rmat), "eigenvalues": _vec(np.linalg.eigvalsh(rmat))
                  if model.r else [], "basis_terms": terms},
        "go_survey": survey_json(model, survey),
        "naturally_reductive": {"ok": bool(nr), "residual": nr.residual},
        "symmetric_pair": {"ok": bool(sp), "residual": sp.residual},
        "plans": {"probes": probe_plan.describe(), "orbits": orbit_plan.describe()},
    }

    cache = _AdCache(model)
    words = orbit_plan.words(model.n)
    report["length_profiles"] = [
        dict(basis=model.algebra.names[i],
             **profile_json(length_profile(model, np.eye(model.n)[i], orbit_plan, words, cache),
                            options.include_samples))
        for i in range(model.n)]

    if ideals:
        section = {}
        for name, s in ideals.items():
            thm = verify_abelian_ideal_theorem(model, s, orbit_plan, survey)
            section[name] = {"status": thm.status, "preconditions": thm.preconditions,
                             "max_spread": thm.max_spread, "notes": thm.notes,
                             "profiles": [profile_json(p, False) for p in thm.profiles]}
        report["abelian_ideal_theorem"] = section
    else:
        report["abelian_ideal_theorem"] = "not requested"

    if splits:
        section = {}
        for name, s in splits.items():
            try:
                section[name] = audit_json(skew_symmetry_audit(model, make_split(model, s), survey))
            except ValueError as exc:
                section[name] = {"error": str(exc)}
        report["skew_symmetry"] = section
    else:
        report["skew_symmetry"] = "not requested"

    if ks:
        section = {}
        for name, k in ks.items():
            section[name] = ric_star_json(model, k, options.seed)
        report["ric_star"] = section
    else:
        report["ric_star"] = "not requested"
    return report


def ric_star_json(model, k: Subspace, seed: int, samples: int = RIC_STAR_SAMPLES):
    try:
        setup = RicStarSetup(model, k)
    except ValueError as exc:
        return {"error": str(exc)}
    rng = np.random.default_rng(seed)
    xs = [setup.m1_vector(rng.standard_normal(setup.m1_dim)) for _ in range(samples)] \
        if setup.m1_dim else []
    reps = [setup.identity(x) for x in xs]
    worst = max(reps, key=lambda r: r.difference, default=None)
    return {"m1_dim": setup.m1_dim, "m2_dim": setup.m2_dim,
            "skew_residual": setup.skew_residual,
            "hypotheses_met": bool(setup.skew_residual <= model.eps_rank),
            "samples": len(reps), "max_difference": worst.difference if worst else 0.0,
            "worst": None if worst is None else {"left": worst.left, "right": worst.right,
                                                  "ricci": worst.ricci,
                                                  "correction": worst.correction}}


def load_schema():
    return json.loads(resources.files("metriclie").joinpath("report_schema.json").read_text())


def dumps(report) -> str:
    return json.dumps(report, indent=1, allow_nan=False) + "\n"
