"""Geodesic-orbit tests: per-direction feasibility, probe surveys and their consequences."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .homogeneous import HomogeneousModel, SplitPair, m_bracket, restricted_ad
from .liealg import Check, bracket, unimodular_kernel

SCOPE_NOTE = ("verdicts are relative to the supplied transitive algebra; "
              "a GO pass means every probe direction is geodesic")


@dataclass(frozen=True)
class GoCertificate:
    """Outcome of solving ``g([H + X, Y]_m, X) = 0`` for all ``Y`` in ``m``.

    ``h_solution`` is the minimum-norm ``H`` in h-coordinates.  When infeasible,
    ``witness`` is a unit ``Y`` (m-coordinates) with
    ``g([H + X, Y]_m, X) = witness_value > 0`` for every ``H`` in ``h``.
    """

    direction: np.ndarray
    h_solution: np.ndarray
    residual: float
    feasible: bool
    threshold: float
    witness: np.ndarray = None
    witness_value: float = 0.0


def _system(model: HomogeneousModel, x):
    xa = model.to_algebra(x)
    gx = model.metric @ x
    basis = model.onb_alg
    a = np.array([[m_bracket(model, hv, y) @ gx for hv in model.isotropy.span] for y in basis])
    b = np.array([-(m_bracket(model, xa, y) @ gx) for y in basis])
    return a.reshape(model.r, model.isotropy.dim), b


def go_certificate(model: HomogeneousModel, x) -> GoCertificate:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.r,):
        raise ValueError(f"direction must have length {model.r}")
    p = model.isotropy.dim
    thr = model.eps_rank * (1.0 + model.inner(x, x))
    if model.r == 0 or not np.any(x):
        return GoCertificate(x, np.zeros(p), 0.0, True, thr)
    a, b = _system(model, x)
    if p:
        sol, *_ = np.linalg.lstsq(a, b, rcond=model.eps_rank)
    else:
        sol = np.zeros(0)
    res_vec = a @ sol - b
    res = float(np.linalg.norm(res_vec))
    if res <= thr:
        return GoCertificate(x, sol, res, True, thr)
    # res_vec is orthogonal to range(a), so this Y defeats every H
    witness = model.onb @ (res_vec / res)
    return GoCertificate(x, sol, res, False, thr, witness, res)


def certificate_check(model: HomogeneousModel, cert: GoCertificate) -> float:
    """Re-substitute ``H_X``: max over the m rows of ``|g([H_X + X, Y]_m, X)|``."""
    if cert.direction.size == 0:
        return 0.0
    v = model.to_algebra(cert.direction) + cert.h_solution @ model.isotropy.span
    gx = model.metric @ cert.direction
    return max((abs(float(m_bracket(model, v, y) @ gx)) for y in model.complement.span),
               default=0.0)


@dataclass(frozen=True)
class ProbePlan:
    random_count: int = 200
    seed: int = 42
    pairs: bool = True

    def describe(self):
        return {"basis": True, "pairwise_sums_and_differences": self.pairs,
                "random_unit_vectors": self.random_count, "seed": self.seed}


def probe_directions(model: HomogeneousModel, plan: ProbePlan):
    r = model.r
    eye = np.eye(r)
    probes = [("basis", e) for e in eye]
    if plan.pairs:
        for i in range(r):
            for j in range(i + 1, r):
                probes.append(("sum", eye[i] + eye[j]))
                probes.append(("difference", eye[i] - eye[j]))
    if r:
        rng = np.random.default_rng(plan.seed)
        for _ in range(plan.random_count):
            v = rng.standard_normal(r)
            probes.append(("random", model.onb @ (v / np.linalg.norm(v))))
    return probes


@dataclass(frozen=True)
class GoSurvey:
    probes: list
    certificates: list
    verdict: str
    probe_plan: dict

    @property
    def failure(self):
        """First infeasible certificate in probe order, if any."""
        return next((c for c in self.certificates if not c.feasible), None)


def go_survey(model: HomogeneousModel, plan: ProbePlan = ProbePlan()) -> GoSurvey:
    probes = probe_directions(model, plan)
    certs = [go_certificate(model, v) for _, v in probes]
    verdict = "pass" if all(c.feasible for c in certs) else "fail"
    return GoSurvey([kind for kind, _ in probes], certs, verdict, plan.describe())


def naturally_reductive_check(model: HomogeneousModel):
    """Antisymmetry of ``(X_i, X_j, X_k) -> g([X_i, X_j]_m, X_k)`` in its last two slots.

    Evaluated on the m rows (not the orthonormal basis), so the residual is in
    the user's coordinates.
    """
    r = model.r
    if r == 0:
        return Check(True, 0.0)
    rows = model.complement.span
    t = np.array([[model.metric @ m_bracket(model, rows[i], rows[j]) for j in range(r)]
                  for i in range(r)])
    res = float(np.max(np.abs(t + np.transpose(t, (0, 2, 1)))))
    return Check(res <= model.eps_struct, res)


@dataclass
class AuditReport:
    name: str
    passed: bool
    residuals: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


def skew_symmetry_audit(model: HomogeneousModel, split: SplitPair, survey: GoSurvey = None,
                        tol: float = 1e-9) -> AuditReport:
    """Skewness of ``ad_U`` restricted to ``m2`` for ``U`` in ``m1``.

    When ``[h, m1] = 0`` the restriction to all of ``m`` is audited as well.
    """
    rep = AuditReport("skew-symmetry", True)
    if survey is None:
        rep.notes.append("GO hypothesis not established (no survey supplied)")
    elif survey.verdict != "pass":
        rep.notes.append(f"GO hypothesis not met (survey verdict {survey.verdict})")
    m1, m2 = split.m1, split.m2
    worst = 0.0
    for u in m1.span:
        a = restricted_ad(model, u, m2)
        if a.size:
            worst = max(worst, float(np.max(np.abs(a + a.T))))
    rep.residuals["m2"] = worst

    commute = 0.0
    for hv in model.isotropy.span:
        for u in m1.span:
            commute = max(commute, float(np.linalg.norm(bracket(model.algebra, hv, u))))
    rep.residuals["[h,m1]"] = commute
    if m1.dim and commute <= model.eps_rank:
        full = 0.0
        for u in m1.span:
            a = restricted_ad(model, u, model.complement)
            full = max(full, float(np.max(np.abs(a + a.T))))
        rep.residuals["m"] = full
        worst = max(worst, full)
    else:
        rep.notes.append("[h, m1] != 0: skewness on all of m not required" if m1.dim
                         else "m1 = 0: vacuous")
    rep.passed = worst <= tol
    return rep


def unimodularity_audit(model: HomogeneousModel, survey: GoSurvey = None,
                        tol: float = 1e-9) -> AuditReport:
    alg = model.algebra
    defect = float(np.max(np.abs(alg.trace_vector)))
    u = unimodular_kernel(alg, model.eps_rank)
    rep = AuditReport("unimodularity", defect <= tol,
                      {"defect": defect, "kernel_dim": u.dim, "dim": alg.dim})
    if survey is not None and survey.verdict == "pass" and defect > tol:
        rep.notes.append("CONTRADICTION: GO survey passed on a non-unimodular algebra")
    return rep

