"""Ricci curvature of reductive homogeneous models and the compact-quotient identity."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .homogeneous import (
    HomogeneousModel,
    build_model,
    g_orthonormal,
    m_bracket,
    project_m,
    restricted_ad,
)
from .liealg import StructureTensor, Subspace, is_subalgebra, killing_form, trace_ad


@dataclass(frozen=True)
class RicciResult:
    value: float
    killing_term: float
    bracket_norm_term: float
    double_sum_term: float
    z_term: float

    @property
    def terms(self):
        return (self.killing_term, self.bracket_norm_term, self.double_sum_term, self.z_term)


def z_vector(model: HomogeneousModel):
    """m-coordinates of the vector ``Z`` with ``g(Z, X) = tr(ad X)`` on ``m``."""
    if model.r == 0:
        return np.zeros(0)
    t = np.array([trace_ad(model.algebra, v) for v in model.complement.span])
    return np.linalg.solve(model.metric, t)


def _check_m_vector(model, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (model.r,):
        raise ValueError(f"expected m-coordinates of length {model.r}, got shape {x.shape}")
    return x


def ricci(model: HomogeneousModel, x, z=None) -> RicciResult:
    """``Ric(X, X)`` for ``X`` given in m-coordinates, split into its four terms."""
    x = _check_m_vector(model, x)
    z = z_vector(model) if z is None else z
    alg = model.algebra
    xa = model.to_algebra(x)
    basis = model.onb_alg
    kt = -0.5 * killing_form(alg, xa, xa)
    bt = -0.5 * sum(model.inner(w, w) for w in (m_bracket(model, xa, b) for b in basis))
    gx = model.metric @ x
    ds = 0.0
    for i in range(model.r):
        for j in range(i + 1, model.r):
            ds += 2.0 * float(m_bracket(model, basis[i], basis[j]) @ gx) ** 2
    ds *= 0.25
    zt = -float(m_bracket(model, model.to_algebra(z), xa) @ gx)
    return RicciResult(kt + bt + ds + zt, kt, bt, ds, zt)


def ricci_matrix(model: HomogeneousModel):
    """Symmetric ``R`` in m-coordinates with ``x @ R @ x = Ric(x, x)``, by polarization."""
    r = model.r
    z = z_vector(model)
    eye = np.eye(r)
    out = np.zeros((r, r))
    for i in range(r):
        out[i, i] = ricci(model, eye[i], z).value
        for j in range(i + 1, r):
            plus = ricci(model, eye[i] + eye[j], z).value
            minus = ricci(model, eye[i] - eye[j], z).value
            out[i, j] = out[j, i] = 0.25 * (plus - minus)
    return out


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of ``Ric*(X,X) = Ric(X,X) - 1/2 sum_{i<j} ([Y_i,Y_j]_m1, X)^2``."""

    left: float
    right: float
    ricci: float
    correction: float
    difference: float
    m1_dim: int
    m2_dim: int
    skew_residual: float
    hypotheses_met: bool


class RicStarSetup:
    """Auxiliary compact-quotient model ``(k, h, m1)`` attached to ``model``.

    Build once per ``k`` and evaluate :meth:`identity` for many ``X``.
    """

    def __init__(self, model: HomogeneousModel, k: Subspace):
        n = model.n
        if k.ambient != n:
            raise ValueError("k has the wrong ambient dimension")
        sub = is_subalgebra(model.algebra, k, model.eps_rank)
        if not sub:
            raise ValueError(f"k is not a subalgebra (residual {sub.residual:.3g})")
        h = model.isotropy
        if h.dim and max(k.distance(v) for v in h.span) > model.eps_rank:
            raise ValueError("k does not contain the isotropy subalgebra")
        self.model = model
        self.k = k

        # m1 = k ∩ m, in m-coordinates
        mparts = np.array([project_m(model, v) for v in k.span]).reshape(-1, model.r)
        if mparts.size:
            _, s, vt = np.linalg.svd(mparts, full_matrices=False)
            rank = int(np.sum(s > model.eps_rank * max(1.0, s[0])))
            m1 = vt[:rank]
        else:
            m1 = np.zeros((0, model.r))
        self.m1_onb = g_orthonormal(model, m1)              # columns, m-coords
        self.m1_dim = self.m1_onb.shape[1]
        if self.m1_dim < model.r:
            gm1 = model.metric @ self.m1_onb
            _, s, vt = np.linalg.svd(gm1.T, full_matrices=True)
            m2 = vt[self.m1_dim:]
        else:
            m2 = np.zeros((0, model.r))
        self.m2_onb = g_orthonormal(model, m2)
        self.m2_dim = self.m2_onb.shape[1]

        # independent path: induced structure constants on k = h + m1
        kb = np.vstack([h.span, self.m1_onb.T @ model.complement.span])
        self.k_basis = kb
        p, q = h.dim, self.m1_dim
        dk = p + q
        c = np.zeros((dk, dk, dk))
        for a in range(dk):
            for b in range(dk):
                w = np.einsum("i,j,ijk->k", kb[a], kb[b], model.algebra.coeffs)
                coeff, *_ = np.linalg.lstsq(kb.T, w, rcond=None)
                c[a, b] = coeff
        self.aux_algebra = StructureTensor(c)
        iso = Subspace(np.eye(dk)[:p], "h")
        comp = Subspace(np.eye(dk)[p:], "m1")
        # ONB of m1 gives the identity metric on the auxiliary complement
        self.aux = build_model(self.aux_algebra, iso, np.eye(q), comp, name=f"{model.name}/k",
                               eps_struct=model.eps_struct, eps_rank=model.eps_rank,
                               log_warnings=False)

        skew = 0.0
        full_m = model.complement
        for col in self.m1_onb.T:
            a = restricted_ad(model, model.to_algebra(col), full_m)
            skew = max(skew, float(np.max(np.abs(a + a.T))) if a.size else 0.0)
        self.skew_residual = skew

    def m1_vector(self, y):
        """m-coordinates of the m1 vector with g-orthonormal coordinates ``y``."""
        return self.m1_onb @ np.asarray(y, dtype=float)

    def identity(self, x) -> IdentityReport:
        """Evaluate both sides for ``X`` in m-coordinates (must lie in m1)."""
        model = self.model
        x = _check_m_vector(model, x)
        y = self.m1_onb.T @ model.metric @ x
        if np.linalg.norm(self.m1_onb @ y - x) > model.eps_rank * max(1.0, np.linalg.norm(x)):
            raise ValueError("X does not lie in m1")
        left = ricci(self.aux, y).value if self.m1_dim else 0.0

        ric = ricci(model, x).value
        gx = model.metric @ x
        corr = 0.0
        ys = [model.to_algebra(col) for col in self.m2_onb.T]
        for i in range(self.m2_dim):
            for j in range(i + 1, self.m2_dim):
                # [.]_m1 pairs with X in m1 exactly as [.]_m does, since m1 ⊥ m2
                corr += float(m_bracket(model, ys[i], ys[j]) @ gx) ** 2
        right = ric - 0.5 * corr
        return IdentityReport(left, right, ric, 0.5 * corr, abs(left - right), self.m1_dim,
                              self.m2_dim, self.skew_residual,
                              self.skew_residual <= model.eps_rank)


def ric_star_identity(model: HomogeneousModel, k: Subspace, x) -> IdentityReport:
    return RicStarSetup(model, k).identity(x)
