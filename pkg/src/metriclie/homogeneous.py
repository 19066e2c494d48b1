"""Reductive homogeneous models ``g = h + m`` with an inner product on ``m``.

Three coordinate systems are in play:

* algebra coordinates (length ``n``), w.r.t. the basis of the structure tensor;
* m-coordinates (length ``r``), w.r.t. the rows of ``complement.span``; the
  metric matrix is expressed in these;
* h-coordinates, w.r.t. the rows of ``isotropy.span``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .liealg import (
    EPS_RANK,
    EPS_STRUCT,
    StructureTensor,
    Subspace,
    _frozen,
    bracket,
    is_subalgebra,
    largest_ideal_in,
    null_space_rows,
    validate_structure,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    invariant: str
    residual: float
    detail: str = ""

    def __str__(self):
        s = f"{self.invariant}: residual {self.residual:.6g}"
        return f"{s} ({self.detail})" if self.detail else s


class ModelValidationError(ValueError):
    """Raised by :func:`build_model` when the data violate a model invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True, eq=False)
class HomogeneousModel:
    algebra: StructureTensor
    isotropy: Subspace
    complement: Subspace
    metric: np.ndarray
    name: str = ""
    eps_struct: float = EPS_STRUCT
    eps_rank: float = EPS_RANK
    residuals: dict = field(default_factory=dict, repr=False)
    warnings: tuple = ()
    subspaces: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.algebra.dim

    @property
    def r(self) -> int:
        return self.complement.dim

    @cached_property
    def _stack_inv(self):
        stack = np.vstack([self.isotropy.span, self.complement.span])
        return np.linalg.inv(stack.T)

    @cached_property
    def onb(self):
        """Columns are a g-orthonormal basis of ``m`` in m-coordinates (Cholesky)."""
        if self.r == 0:
            return _frozen(np.zeros((0, 0)))
        chol = np.linalg.cholesky(self.metric)
        return _frozen(np.linalg.inv(chol).T)

    @cached_property
    def onb_alg(self):
        """Rows are the g-orthonormal basis of ``m`` in algebra coordinates."""
        return _frozen(self.onb.T @ self.complement.span)

    def to_algebra(self, x):
        """Algebra vector of the m-coordinate vector ``x``."""
        return np.asarray(x, dtype=float) @ self.complement.span

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.metric @ np.asarray(y))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x), 0.0)))


def project_h(model: HomogeneousModel, x):
    """h-coordinates of the h-part of the algebra vector ``x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.n,):
        raise ValueError(f"expected an algebra vector of length {model.n}")
    return (model._stack_inv @ x)[: model.isotropy.dim]


def project_m(model: HomogeneousModel, x):
    """m-coordinates of the m-part of the algebra vector ``x`` in ``h + m``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.n,):
        raise ValueError(f"expected an algebra vector of length {model.n}")
    return (model._stack_inv @ x)[model.isotropy.dim:]


def m_bracket(model: HomogeneousModel, x, y):
    """``[X, Y]_m`` in m-coordinates, for algebra vectors ``x`` and ``y``."""
    return project_m(model, bracket(model.algebra, x, y))


def ad_on_m(model: HomogeneousModel, u):
    """Matrix of ``X -> [U, X]_m`` on m-coordinates (columns: images of the m rows)."""
    images = np.array([m_bracket(model, u, v) for v in model.complement.span])
    return images.T if model.r else np.zeros((0, 0))


def _metric_skew_residual(g, a):
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(g @ a + a.T @ g)))


def build_model(algebra: StructureTensor, isotropy: Subspace, metric, complement: Subspace = None,
                name: str = "", eps_struct: float = EPS_STRUCT, eps_rank: float = EPS_RANK,
                force: bool = False, subspaces: dict = None,
                log_warnings: bool = True) -> HomogeneousModel:
    """Assemble and validate a reductive model.

    If ``complement`` is omitted it is taken to be the Killing-orthogonal
    complement of ``isotropy``, which requires a nondegenerate Killing form.
    Every failed invariant is collected; with ``force`` they are downgraded to
    warnings on the returned model, otherwise :class:`ModelValidationError` is
    raised listing all of them.
    """
    n = algebra.dim
    if isotropy.ambient != n:
        raise ModelValidationError([Violation("dimension", float(abs(isotropy.ambient - n)),
                                              "isotropy vectors have the wrong length")])
    violations = []
    residuals = {}

    sv = validate_structure(algebra, eps_struct)
    residuals["antisymmetry"] = sv.antisymmetry_residual
    residuals["jacobi"] = sv.jacobi_residual
    if sv.antisymmetry_residual > eps_struct:
        violations.append(Violation("antisymmetry", sv.antisymmetry_residual))
    if sv.jacobi_residual > eps_struct:
        violations.append(Violation("jacobi", sv.jacobi_residual))

    if complement is None:
        kill = algebra.killing_matrix
        ksv = np.linalg.svd(kill, compute_uv=False)
        if ksv[-1] <= eps_rank:
            violations.append(Violation("complement-required", float(ksv[-1]),
                                        "Killing form is degenerate; supply the complement"))
            raise ModelValidationError(violations)
        rows = null_space_rows(isotropy.span @ kill, eps_rank) if isotropy.dim else np.eye(n)
        complement = Subspace(rows, "m", eps_rank)
    if complement.ambient != n:
        raise ModelValidationError([Violation("dimension", float(abs(complement.ambient - n)),
                                              "complement vectors have the wrong length")])

    stack = np.vstack([isotropy.span, complement.span])
    ssv = np.linalg.svd(stack, compute_uv=False) if stack.shape[0] else np.zeros(1)
    if stack.shape[0] != n or ssv[-1] <= eps_rank:
        # nothing else can be checked without a direct sum
        violations.append(Violation("direct-sum", float(abs(stack.shape[0] - n)) or float(ssv[-1]),
                                    "isotropy and complement must together form a basis"))
        raise ModelValidationError(violations)

    g = np.array(metric, dtype=float)
    if g.size != complement.dim ** 2:
        violations.append(Violation("metric-shape", float(abs(g.size - complement.dim ** 2)),
                                    f"metric must be {complement.dim}x{complement.dim}"))
        raise ModelValidationError(violations)
    g = g.reshape(complement.dim, complement.dim)
    model = HomogeneousModel(algebra, isotropy, complement, _frozen(g), name, eps_struct, eps_rank,
                             residuals, subspaces=dict(subspaces or {}))

    sub = is_subalgebra(algebra, isotropy, eps_rank)
    residuals["subalgebra"] = sub.residual
    if not sub:
        violations.append(Violation("subalgebra", sub.residual, "[h, h] is not contained in h"))

    red = 0.0
    for hv in isotropy.span:
        for mv in complement.span:
            red = max(red, float(np.linalg.norm(project_h(model, bracket(algebra, hv, mv)))))
    residuals["reductive"] = red
    if red > eps_rank:
        violations.append(Violation("reductive", red, "[h, m] is not contained in m"))

    sym = float(np.max(np.abs(g - g.T))) if g.size else 0.0
    residuals["metric-symmetry"] = sym
    if sym > eps_struct:
        violations.append(Violation("metric-symmetry", sym))
    min_eig = float(np.linalg.eigvalsh((g + g.T) / 2)[0]) if g.size else np.inf
    residuals["metric-min-eigenvalue"] = min_eig if g.size else None
    if g.size and min_eig <= eps_rank:
        violations.append(Violation("metric-spd", min_eig, f"minimum eigenvalue {min_eig:.6g}"))

    skew = max((_metric_skew_residual(g, ad_on_m(model, hv)) for hv in isotropy.span), default=0.0)
    residuals["metric-invariance"] = skew
    if skew > eps_struct:
        violations.append(Violation("metric-invariance", skew, "ad(h) is not skew with respect to g"))

    warnings = []
    if not violations and isotropy.dim:
        ideal = largest_ideal_in(algebra, isotropy, eps_rank)
        residuals["ineffective-dimension"] = ideal.dim
        if ideal.dim:
            warnings.append(f"non-effective: h contains a nonzero ideal of g of dimension {ideal.dim}")

    if violations:
        if not force:
            raise ModelValidationError(violations)
        warnings.extend(f"forced past {v}" for v in violations)
    for w in warnings if log_warnings else ():
        log.warning("%s: %s", name or "model", w)
    object.__setattr__(model, "warnings", tuple(warnings))
    return model


def m_subspace_coords(model: HomogeneousModel, s: Subspace):
    """m-coordinates of the spanning rows of ``s``; raises if ``s`` is not inside ``m``."""
    if s.dim == 0:
        return np.zeros((0, model.r))
    hres = max(float(np.linalg.norm(project_h(model, v))) for v in s.span)
    if hres > model.eps_rank:
        raise ValueError(f"subspace {s.label!r} is not contained in m (residual {hres:.3g})")
    return np.array([project_m(model, v) for v in s.span])


def g_orthonormal(model: HomogeneousModel, coords):
    """g-orthonormal basis (columns, m-coordinates) of the span of the rows of ``coords``."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape[0] == 0:
        return np.zeros((model.r, 0))
    gram = coords @ model.metric @ coords.T
    chol = np.linalg.cholesky(gram)
    return coords.T @ np.linalg.inv(chol).T


def restricted_ad(model: HomogeneousModel, u, s: Subspace):
    """Matrix of ``X -> [U, X]_s`` in an orthonormal basis of ``s``.

    For ``s`` inside ``m`` the basis is g-orthonormal and ``[.]_s`` is the
    m-part followed by the g-orthogonal projection onto ``s``.  Otherwise
    Euclidean-orthonormal algebra coordinates are used.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (model.n,) or s.ambient != model.n:
        raise ValueError("dimension mismatch")
    if s.dim == 0:
        return np.zeros((0, 0))
    try:
        coords = m_subspace_coords(model, s)
    except ValueError:
        q = s.orthonormal
        return np.array([[q[a] @ bracket(model.algebra, u, q[b]) for b in range(s.dim)]
                         for a in range(s.dim)])
    basis = g_orthonormal(model, coords)
    images = np.array([m_bracket(model, u, model.to_algebra(basis[:, b])) for b in range(s.dim)])
    # a[a, b] = g([U, f_b]_m, f_a)
    return basis.T @ model.metric @ images.T


@dataclass(frozen=True)
class SplitPair:
    m1: Subspace
    m2: Subspace


def make_split(model: HomogeneousModel, m1: Subspace) -> SplitPair:
    """Complete ``m1`` to a g-orthogonal, ad(h)-invariant split of ``m``."""
    coords = m_subspace_coords(model, m1)
    if m1.dim:
        w = g_orthonormal(model, coords)
        gw = model.metric @ w
        for hv in model.isotropy.span:
            a = ad_on_m(model, hv)
            img = a @ w
            # residual of the image after g-orthogonal projection onto m1
            res = float(np.max(np.linalg.norm(img - w @ (gw.T @ img), axis=0)))
            if res > model.eps_rank:
                raise ValueError(f"m1 is not ad(h)-invariant (residual {res:.3g})")
        m2_coords = null_space_rows(coords @ model.metric, model.eps_rank)
    else:
        m2_coords = np.eye(model.r)
    m2 = Subspace(m2_coords @ model.complement.span, "m2", model.eps_rank) if m2_coords.shape[0] \
        else Subspace.zero(model.n, "m2")
    return SplitPair(m1, m2)
