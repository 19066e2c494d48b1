"""Finite-dimensional real Lie algebras given by structure constants.

The bracket convention is ``[e_i, e_j] = sum_k c[i, j, k] e_k`` with 0-based
indices.  Vectors are plain 1-d numpy arrays of algebra coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

EPS_STRUCT = 1e-10
EPS_RANK = 1e-9


class InvariantError(RuntimeError):
    """An internal consistency check failed (a bug, not bad input)."""


@dataclass(frozen=True)
class Check:
    """Boolean outcome of a numerical test together with its residual."""

    ok: bool
    residual: float

    def __bool__(self):
        return bool(self.ok)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _as_vector(x, n, what="vector"):
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"{what} has shape {x.shape}, expected ({n},)")
    return x


@dataclass(frozen=True, eq=False)
class StructureTensor:
    """Structure constants ``coeffs[i, j, k]`` of an ``n``-dimensional algebra."""

    coeffs: np.ndarray
    names: tuple = ()

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] == 0:
            raise ValueError(f"structure tensor must have shape (n, n, n), got {c.shape}")
        object.__setattr__(self, "coeffs", c)
        names = tuple(self.names) or tuple(f"e{i + 1}" for i in range(c.shape[0]))
        if len(names) != c.shape[0]:
            raise ValueError("number of basis names does not match the dimension")
        object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def from_brackets(cls, n, brackets, names=()):
        """Build from records ``(i, j, k, value)`` meaning ``[e_i, e_j] += value e_k``.

        Indices are 0-based and only ``i < j`` needs to be given; the
        antisymmetric partner is filled in.
        """
        c = np.zeros((n, n, n))
        for i, j, k, v in brackets:
            c[i, j, k] += v
            c[j, i, k] -= v
        return cls(c, names)

    @classmethod
    def abelian(cls, n):
        return cls(np.zeros((n, n, n)))

    def brackets(self):
        """Sparse ``(i, j, k, value)`` records with ``i < j`` and nonzero value."""
        out = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    v = self.coeffs[i, j, k]
                    if v != 0.0:
                        out.append((i, j, k, float(v)))
        return out

    @cached_property
    def ad_basis(self):
        """``ad_basis[i]`` is the matrix of ``ad(e_i)``; column ``j`` is ``[e_i, e_j]``."""
        return _frozen(np.transpose(self.coeffs, (0, 2, 1)))

    @cached_property
    def killing_matrix(self):
        """Gram matrix ``B(e_i, e_j) = tr(ad e_i ad e_j)``."""
        return _frozen(np.einsum("iab,jba->ij", self.coeffs, self.coeffs))

    @cached_property
    def trace_vector(self):
        """Coefficients of the linear functional ``X -> tr(ad X)``."""
        return _frozen(np.einsum("ijj->i", self.coeffs))


def bracket(t: StructureTensor, x, y):
    x = _as_vector(x, t.dim, "X")
    y = _as_vector(y, t.dim, "Y")
    return np.einsum("i,j,ijk->k", x, y, t.coeffs)


def ad_matrix(t: StructureTensor, u):
    u = _as_vector(u, t.dim, "U")
    return np.einsum("i,ikj->kj", u, t.ad_basis)


def killing_form(t: StructureTensor, x, y) -> float:
    x = _as_vector(x, t.dim, "X")
    y = _as_vector(y, t.dim, "Y")
    return float(x @ t.killing_matrix @ y)


def trace_ad(t: StructureTensor, x) -> float:
    x = _as_vector(x, t.dim, "X")
    return float(t.trace_vector @ x)


@dataclass(frozen=True)
class StructureVerdict:
    ok: bool
    antisymmetry_residual: float
    jacobi_residual: float
    eps_struct: float


def validate_structure(t: StructureTensor, eps_struct: float = EPS_STRUCT) -> StructureVerdict:
    """Check antisymmetry and the Jacobi identity on all basis triples."""
    c = t.coeffs
    anti = float(np.max(np.abs(c + np.transpose(c, (1, 0, 2)))))
    # [e_i, [e_j, e_l]] = sum_m c[j,l,m] c[i,m,:]
    inner = np.einsum("jlm,imk->ijlk", c, c)
    cyc = inner + np.transpose(inner, (1, 2, 0, 3)) + np.transpose(inner, (2, 0, 1, 3))
    jac = float(np.max(np.linalg.norm(cyc, axis=-1)))
    return StructureVerdict(anti <= eps_struct and jac <= eps_struct, anti, jac, eps_struct)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace spanned by the rows of ``span`` (an ``r x n`` matrix)."""

    span: np.ndarray
    label: str = ""
    eps_rank: float = field(default=EPS_RANK, repr=False)

    def __post_init__(self):
        s = np.array(self.span, dtype=float)
        if s.ndim == 1:
            s = s.reshape(1, -1) if s.size else s.reshape(0, 0)
        if s.ndim != 2:
            raise ValueError("span must be a 2-d array of row vectors")
        if s.shape[0]:
            sv = np.linalg.svd(s, compute_uv=False)
            if sv[-1] <= self.eps_rank or s.shape[0] > s.shape[1]:
                raise ValueError(
                    f"spanning rows of subspace {self.label!r} are linearly dependent "
                    f"(smallest singular value {sv[-1]:.3g})"
                )
        object.__setattr__(self, "span", _frozen(s))

    @classmethod
    def zero(cls, n, label=""):
        return cls(np.zeros((0, n)), label)

    @classmethod
    def full(cls, n, label=""):
        return cls(np.eye(n), label)

    @classmethod
    def from_vectors(cls, vectors, n, label="", eps_rank=EPS_RANK):
        """Subspace spanned by possibly dependent ``vectors``; a basis is extracted."""
        v = np.asarray(vectors, dtype=float).reshape(-1, n)
        return cls(_row_basis(v, eps_rank), label, eps_rank)

    @property
    def dim(self) -> int:
        return self.span.shape[0]

    @property
    def ambient(self) -> int:
        return self.span.shape[1]

    @cached_property
    def orthonormal(self):
        """Euclidean-orthonormal rows spanning the same subspace."""
        if self.dim == 0:
            return _frozen(np.zeros((0, self.ambient)))
        q, _ = np.linalg.qr(self.span.T)
        return _frozen(q.T)

    def project(self, v):
        q = self.orthonormal
        return q.T @ (q @ v)

    def distance(self, v) -> float:
        v = np.asarray(v, dtype=float)
        return float(np.linalg.norm(v - self.project(v)))

    def contains(self, v) -> bool:
        return self.distance(v) <= self.eps_rank * max(1.0, float(np.linalg.norm(v)))


def _row_basis(v, eps_rank=EPS_RANK):
    """Pick a deterministic basis of the row space of ``v`` (reduced echelon form)."""
    n = v.shape[1]
    if v.shape[0] == 0:
        return np.zeros((0, n))
    u, s, vt = np.linalg.svd(v, full_matrices=False)
    r = int(np.sum(s > eps_rank * max(1.0, s[0])))
    return echelon_rows(vt[:r], eps_rank)


def echelon_rows(rows, eps_rank=EPS_RANK):
    """Reduced row-echelon basis for the span of independent ``rows``.

    Pivots are the leftmost columns that increase the rank, so coordinate
    subspaces come back as unit vectors.
    """
    rows = np.asarray(rows, dtype=float)
    r, n = rows.shape
    if r == 0:
        return rows.reshape(0, n)
    pivots = []
    for j in range(n):
        cols = pivots + [j]
        if np.linalg.matrix_rank(rows[:, cols], tol=eps_rank) == len(cols):
            pivots = cols
            if len(pivots) == r:
                break
    out = np.linalg.solve(rows[:, pivots], rows)
    out[np.abs(out) < 1e-14] = 0.0
    return out


def null_space_rows(a, eps_rank=EPS_RANK):
    """Echelon basis (as rows) of ``{x : a @ x = 0}``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    scale = s[0] if s.size else 0.0
    rank = int(np.sum(s > eps_rank * max(1.0, scale)))
    ns = vt[rank:]
    return echelon_rows(ns, eps_rank) if ns.shape[0] else np.zeros((0, n))


def unimodular_kernel(t: StructureTensor, eps_rank: float = EPS_RANK) -> Subspace:
    """The ideal ``{X : tr(ad X) = 0}``; all of ``g`` exactly when unimodular."""
    tv = t.trace_vector
    if np.linalg.norm(tv) <= eps_rank:
        u = Subspace.full(t.dim, "u")
    else:
        u = Subspace(null_space_rows(tv.reshape(1, -1), eps_rank), "u", eps_rank)
    if not is_ideal(t, u, eps_rank):
        raise InvariantError("trace kernel failed the ideal test")
    return u


def is_ideal(t: StructureTensor, s: Subspace, eps_rank: float = EPS_RANK) -> Check:
    """Whether ``[g, s]`` lies in ``s``; residual is the largest distance to ``s``."""
    if s.dim == 0:
        return Check(True, 0.0)
    # images[i, a] = [e_i, v_a]
    images = np.einsum("ikj,aj->iak", t.ad_basis, s.span).reshape(-1, t.dim)
    res = max(s.distance(w) for w in images)
    return Check(res <= eps_rank, res)


def is_abelian(t: StructureTensor, s: Subspace, eps_struct: float = EPS_STRUCT) -> Check:
    if s.dim < 2:
        return Check(True, 0.0)
    br = np.einsum("ai,bj,ijk->abk", s.span, s.span, t.coeffs)
    res = float(np.max(np.linalg.norm(br, axis=-1)))
    return Check(res <= eps_struct, res)


def is_subalgebra(t: StructureTensor, s: Subspace, eps_rank: float = EPS_RANK) -> Check:
    if s.dim < 2:
        return Check(True, 0.0)
    br = np.einsum("ai,bj,ijk->abk", s.span, s.span, t.coeffs).reshape(-1, t.dim)
    res = max(s.distance(w) for w in br)
    return Check(res <= eps_rank, res)


def largest_ideal_in(t: StructureTensor, s: Subspace, eps_rank: float = EPS_RANK) -> Subspace:
    """Largest ideal of ``g`` contained in ``s`` (fixed-point iteration)."""
    cur = s
    while cur.dim:
        # coefficients a with [e_i, a @ span] in cur for all i
        q = cur.orthonormal
        perp = np.eye(t.dim) - q.T @ q
        blocks = [perp @ t.ad_basis[i] @ cur.span.T for i in range(t.dim)]
        coeffs = null_space_rows(np.vstack(blocks), eps_rank)
        if coeffs.shape[0] == cur.dim:
            return cur
        cur = Subspace.from_vectors(coeffs @ cur.span, t.dim, s.label, eps_rank)
    return cur


EXP_DEGREE = 14


def expm_series(a):
    """Matrix exponential by scaling and squaring a degree-14 Taylor polynomial.

    The matrix is scaled so that its 1-norm is at most 1/2; the truncation
    error of the series is then below 0.5**15 / 15! ~ 2e-17 relative.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    b = a / (2.0 ** squarings)
    out = np.eye(n)
    for k in range(EXP_DEGREE, 0, -1):
        out = np.eye(n) + (b @ out) / k
    for _ in range(squarings):
        out = out @ out
    return out


def ad_exponential(t: StructureTensor, v, s: float = 1.0):
    """``Ad(exp(s V)) = exp(s ad V)`` as an ``n x n`` matrix."""
    return expm_series(s * ad_matrix(t, v))


def direct_sum(a: StructureTensor, b: StructureTensor) -> StructureTensor:
    n, m = a.dim, b.dim
    c = np.zeros((n + m,) * 3)
    c[:n, :n, :n] = a.coeffs
    c[n:, n:, n:] = b.coeffs
    return StructureTensor(c, tuple(a.names) + tuple(b.names))
