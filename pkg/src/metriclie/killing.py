"""Lengths of Killing fields along Ad-orbits of the origin.

A field ``X`` in ``g`` has length ``|(Ad(a^-1) X)_m|_g`` at the point ``a.o``;
no points of the manifold are ever built.  Constancy is judged on the squared
length ``y -> g_y(X, X)``, the function whose critical points single out
geodesic orbits.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .curvature import ricci
from .geodesic import GoSurvey, ProbePlan, go_survey
from .homogeneous import HomogeneousModel, project_m
from .liealg import Subspace, ad_matrix, expm_series, is_abelian, is_ideal

EPS_LEN = 1e-8


def length_at_origin(model: HomogeneousModel, x) -> float:
    """``|X_m|_g``; zero exactly for isotropy fields."""
    return model.norm(project_m(model, x))


def critical_point_residual(model: HomogeneousModel, x) -> float:
    """``max_Y |g([Y, X]_m, X_m)|`` over the algebra basis ``Y``.

    Zero means the origin is a critical point of ``y -> g_y(X, X)``.
    """
    x = np.asarray(x, dtype=float)
    xm = project_m(model, x)
    gx = model.metric @ xm
    # column i of ad(X) is [X, e_i] = -[e_i, X]
    images = ad_matrix(model.algebra, x).T
    vals = [abs(float(project_m(model, w) @ gx)) for w in images]
    return max(vals, default=0.0)


def _word_label(model, word):
    if not word:
        return "identity"
    return "·".join(f"exp({t:+.6g} ad {model.algebra.names[i]})" for i, t in word)


@dataclass(frozen=True)
class OrbitPlan:
    times: tuple = (0.1, -0.1, 0.7, -0.7, 1.3, -1.3)
    max_word_length: int = 2
    random_words: int = 100
    random_word_length: int = 3
    random_time_scale: float = 2.0
    random_fields: int = 5
    seed: int = 42
    eps_len: float = EPS_LEN

    def words(self, n):
        """Group words as tuples of ``(generator index, time)``; the identity first."""
        letters = [(i, t) for i in range(n) for t in self.times]
        out = [()]
        for length in range(1, self.max_word_length + 1):
            out.extend(itertools.product(letters, repeat=length))
        rng = np.random.default_rng(self.seed)
        for _ in range(self.random_words):
            idx = rng.integers(0, n, size=self.random_word_length)
            ts = rng.uniform(-self.random_time_scale, self.random_time_scale,
                             size=self.random_word_length)
            out.append(tuple((int(i), float(t)) for i, t in zip(idx, ts)))
        return out

    def describe(self):
        return {"times": list(self.times), "max_word_length": self.max_word_length,
                "random_words": self.random_words, "random_word_length": self.random_word_length,
                "random_time_scale": self.random_time_scale,
                "random_fields": self.random_fields, "seed": self.seed, "eps_len": self.eps_len}


class _AdCache:
    def __init__(self, model):
        self.model = model
        self.cache = {}

    def inverse_ad(self, word):
        """``Ad(a^-1)`` for ``a = exp(t1 V1) ... exp(tk Vk)``."""
        n = self.model.n
        out = np.eye(n)
        for i, t in word:
            key = (i, t)
            if key not in self.cache:
                self.cache[key] = expm_series(-t * self.model.algebra.ad_basis[i])
            out = self.cache[key] @ out
        return out


@dataclass
class Sample:
    word: tuple
    label: str
    length: float
    sq_length: float
    residual: float


@dataclass
class LengthProfile:
    field: np.ndarray
    samples: list
    spread: float
    max_residual: float
    verdict: str
    eps_len: float

    @property
    def lengths(self):
        return np.array([s.length for s in self.samples])


def _verdict(spread, top, residual, eps):
    scale = 1.0 + top
    if spread <= eps * scale and residual <= eps:
        return "constant"
    if spread <= 100 * eps * scale and residual <= 100 * eps:
        return "indeterminate"
    return "non-constant"


def length_profile(model: HomogeneousModel, x, plan: OrbitPlan = OrbitPlan(), words=None,
                   cache=None) -> LengthProfile:
    """Sample ``g_y(X, X)`` and the critical-point residual along the plan's group words.

    ``spread`` is ``max - min`` of the squared length over the samples.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (model.n,):
        raise ValueError(f"field must have length {model.n}")
    cache = cache or _AdCache(model)
    words = plan.words(model.n) if words is None else words
    samples = []
    for word in words:
        xp = cache.inverse_ad(word) @ x
        xm = project_m(model, xp)
        sq = model.inner(xm, xm)
        samples.append(Sample(word, _word_label(model, word), float(np.sqrt(max(sq, 0.0))), sq,
                              critical_point_residual(model, xp)))
    sq = np.array([s.sq_length for s in samples])
    spread = float(sq.max() - sq.min())
    worst = max(s.residual for s in samples)
    return LengthProfile(x, samples, spread, worst,
                         _verdict(spread, float(sq.max()), worst, plan.eps_len), plan.eps_len)


@dataclass
class TheoremReport:
    """Outcome of checking that an abelian ideal consists of constant-length fields.

    ``status`` is ``pass``, ``CONTRADICTION`` (hypotheses hold, a field varies)
    or ``precondition-failed``.
    """

    status: str
    ideal: str
    preconditions: dict
    profiles: list = field(default_factory=list)
    max_spread: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status == "pass"


def _ideal_fields(a: Subspace, plan: OrbitPlan):
    fields = list(a.span)
    if a.dim:
        rng = np.random.default_rng(plan.seed)
        for _ in range(plan.random_fields):
            fields.append(rng.standard_normal(a.dim) @ a.span)
    return fields


def verify_abelian_ideal_theorem(model: HomogeneousModel, a: Subspace,
                                 plan: OrbitPlan = OrbitPlan(), survey: GoSurvey = None,
                                 probe_plan: ProbePlan = ProbePlan()) -> TheoremReport:
    ideal = is_ideal(model.algebra, a, model.eps_rank)
    abelian = is_abelian(model.algebra, a, model.eps_struct)
    survey = survey or go_survey(model, probe_plan)
    pre = {"ideal": bool(ideal), "ideal_residual": ideal.residual,
           "abelian": bool(abelian), "abelian_residual": abelian.residual,
           "go_survey": survey.verdict}
    rep = TheoremReport("pass", a.label, pre)
    if not (ideal and abelian and survey.verdict == "pass"):
        rep.status = "precondition-failed"
        rep.notes.append("hypotheses not met; constancy is not implied")
        return rep
    cache = _AdCache(model)
    words = plan.words(model.n)
    for x in _ideal_fields(a, plan):
        rep.profiles.append(length_profile(model, x, plan, words, cache))
    rep.max_spread = max((p.spread for p in rep.profiles), default=0.0)
    if any(p.verdict != "constant" for p in rep.profiles):
        rep.status = "CONTRADICTION"
        rep.notes.append("a field of a GO abelian ideal varies in length: check the model "
                         "or the GO verdict")
    rep.notes.append("constancy is established on the sampled orbit set only")
    return rep


def parallel_candidate_report(model: HomogeneousModel, a: Subspace,
                              plan: OrbitPlan = OrbitPlan(), survey: GoSurvey = None,
                              tol: float = 1e-9) -> dict:
    """Basis fields of ``a`` with constant length and vanishing Ricci curvature.

    These are candidates for parallel fields spanning a flat factor; no
    splitting is claimed.
    """
    thm = verify_abelian_ideal_theorem(model, a, plan, survey)
    out = {"ideal": a.label, "theorem_status": thm.status, "candidates": []}
    if thm.status == "precondition-failed":
        return out
    for i, x in enumerate(a.span):
        prof = thm.profiles[i]
        xm = project_m(model, x)
        if prof.verdict != "constant" or model.norm(xm) <= model.eps_rank:
            continue
        ric = ricci(model, xm).value
        if abs(ric) <= tol * (1.0 + model.inner(xm, xm)):
            out["candidates"].append({"field": [float(v) for v in x], "ricci": ric,
                                      "length": prof.samples[0].length})
    return out
