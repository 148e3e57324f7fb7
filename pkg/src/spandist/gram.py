"""Gram matrices of finite vector systems and determinant-based diagnostics.

The Gram matrix G of vectors x_1..x_n has entries G[i, j] = <x_i, x_j>; it
is Hermitian positive semidefinite, and its determinant is zero exactly when
the system is linearly dependent. All determinant work goes through a
diagonally pivoted Cholesky factorization, which keeps the semidefinite
structure explicit: the determinant is the product of the pivots, rank
deficiency shows up as a pivot collapsing relative to the largest one, and a
significantly negative pivot is proof that the input was not a Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    LinearDependenceError,
    NumericalInstabilityError,
)
from .space import DEFAULT_TOL, Field, ToleranceConfig, Vector

__all__ = [
    "GramMatrix",
    "PivotedCholesky",
    "RankDiagnostics",
    "VectorSystem",
    "pivoted_cholesky",
    "gram_det_of_matrix",
    "gram_matrix",
    "gram_determinant",
    "rank_diagnostics",
    "GramHadamardVerdict",
    "GramSplitVerdict",
    "GramTriangleVerdict",
    "check_gram_hadamard",
    "check_gram_product_split",
    "check_gram_triangle",
]


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Hermitian matrix of pairwise inner products (read-only ndarray)."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def norms_sq(self) -> np.ndarray:
        """Diagonal as a real array: ||x_i||^2."""
        return np.ascontiguousarray(self.entries.diagonal().real)

    def abs_offdiag(self) -> np.ndarray:
        """|G[i, j]| with the diagonal zeroed out."""
        a = np.abs(self.entries)
        np.fill_diagonal(a, 0.0)
        return a


@dataclass(frozen=True, eq=False)
class PivotedCholesky:
    """Result of the diagonally pivoted factorization P G P^T = L L^H.

    ``pivots`` holds the squared diagonal of L in factorization order
    (nonincreasing); entries past ``rank`` are zero. ``perm`` maps
    factorization position -> original index.
    """

    lower: np.ndarray
    perm: np.ndarray
    pivots: np.ndarray
    rank: int

    @property
    def complete(self) -> bool:
        return self.rank == self.pivots.shape[0]

    def determinant(self) -> float:
        if not self.complete:
            return 0.0
        return float(np.prod(self.pivots)) if self.pivots.size else 1.0


def pivoted_cholesky(matrix: np.ndarray, rank_rel_tol: float = DEFAULT_TOL.rank_rel_tol) -> PivotedCholesky:
    """Factor a Hermitian PSD matrix with diagonal pivoting.

    At every step the largest remaining diagonal entry is chosen as pivot.
    The factorization stops early (reporting reduced rank) once the next
    pivot falls to ``rank_rel_tol`` times the largest pivot; a pivot below
    ``-rank_rel_tol`` times that scale raises
    :class:`NumericalInstabilityError`, since no Gram matrix can produce it.
    """
    src = np.asarray(matrix)
    a = np.array(src, dtype=np.complex128 if np.iscomplexobj(src) else np.float64)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    perm = np.arange(n)
    pivots = np.zeros(n)
    rank = n
    scale = float(np.max(np.abs(a.diagonal().real))) if n else 0.0
    for k in range(n):
        diag = a.diagonal().real
        j = k + int(np.argmax(diag[k:]))
        piv = float(diag[j])
        if k > 0:
            scale = pivots[0]
        if piv < -rank_rel_tol * scale:
            raise NumericalInstabilityError(
                f"pivot {piv:.3e} at step {k} is negative beyond tolerance; "
                "input is not positive semidefinite"
            )
        if piv <= rank_rel_tol * scale or piv <= 0.0:
            rank = k
            a[k:, k:] = 0.0  # drop the residual block, keep the valid trapezoid
            break
        if j != k:
            a[[k, j], :] = a[[j, k], :]
            a[:, [k, j]] = a[:, [j, k]]
            perm[[k, j]] = perm[[j, k]]
        pivots[k] = piv
        root = math.sqrt(piv)
        a[k, k] = root
        a[k + 1 :, k] /= root
        col = a[k + 1 :, k]
        a[k + 1 :, k + 1 :] -= np.outer(col, col.conj())
        a[k, k + 1 :] = 0.0
    lower = np.tril(a)
    lower.setflags(write=False)
    pivots.setflags(write=False)
    perm.setflags(write=False)
    return PivotedCholesky(lower=lower, perm=perm, pivots=pivots, rank=rank)


def gram_det_of_matrix(matrix: np.ndarray, rank_rel_tol: float = DEFAULT_TOL.rank_rel_tol) -> float:
    """Determinant of a Hermitian PSD matrix via pivoted Cholesky.

    Returns exactly 0.0 when the pivot ratio certifies rank deficiency.
    """
    return pivoted_cholesky(matrix, rank_rel_tol).determinant()


@dataclass(frozen=True)
class RankDiagnostics:
    """Numerical-rank evidence extracted from the pivot sequence."""

    gram_det: float
    min_pivot: float
    max_pivot: float
    independent: bool


class VectorSystem:
    """An ordered finite system of vectors sharing field and dimension.

    The Gram matrix and its pivoted factorization are computed eagerly at
    construction and never mutated, so instances are safe to share. Prefer
    :meth:`from_rows` on hot paths; the :class:`Vector`-based constructor
    validates each vector individually.
    """

    __slots__ = ("_rows", "_field", "_tol", "_gram", "_chol", "_vectors")

    def __init__(self, vectors: Sequence[Vector], tol: ToleranceConfig = DEFAULT_TOL) -> None:
        if len(vectors) == 0:
            raise ValueError("a vector system needs at least one vector")
        head = vectors[0]
        for v in vectors[1:]:
            if v.field is not head.field:
                raise FieldMismatchError("all system vectors must share one scalar field")
            if v.dim != head.dim:
                raise DimensionMismatchError(
                    f"system vectors must share one dimension ({head.dim} vs {v.dim})"
                )
        rows = np.stack([v.coords for v in vectors]).astype(head.field.dtype)
        self._init_from(rows, head.field, tol, tuple(vectors))

    @classmethod
    def from_rows(
        cls,
        rows: np.ndarray | Iterable[Iterable[float]],
        field: Field | None = None,
        tol: ToleranceConfig = DEFAULT_TOL,
    ) -> "VectorSystem":
        """Build a system from an (n, dim) coordinate array, one vector per row."""
        arr = np.asarray(rows)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError(f"expected a nonempty (n, dim) array, got shape {arr.shape}")
        if field is None:
            field = Field.COMPLEX if np.iscomplexobj(arr) and np.any(arr.imag != 0.0) else Field.REAL
        if field is Field.REAL and np.iscomplexobj(arr) and np.any(arr.imag != 0.0):
            raise FieldMismatchError("real-field system given complex coordinates")
        arr = (arr.real if field is Field.REAL and np.iscomplexobj(arr) else arr).astype(
            field.dtype, order="C")
        flat = arr.view(np.float64) if arr.dtype == np.complex128 else arr
        if not np.all(np.isfinite(flat)):
            raise ValueError("system coordinates must be finite")
        self = cls.__new__(cls)
        self._init_from(arr, field, tol, None)
        return self

    def _init_from(
        self,
        rows: np.ndarray,
        field: Field,
        tol: ToleranceConfig,
        vectors: tuple[Vector, ...] | None,
    ) -> None:
        rows = np.ascontiguousarray(rows)
        rows.setflags(write=False)
        self._rows = rows
        self._field = field
        self._tol = tol
        g = rows @ rows.conj().T
        g = (g + g.conj().T) / 2.0  # make conjugate symmetry exact in floats
        g.setflags(write=False)
        self._gram = GramMatrix(entries=g)
        self._chol = pivoted_cholesky(g, tol.rank_rel_tol)
        self._vectors = vectors

    # -- basic shape ---------------------------------------------------
    @property
    def n(self) -> int:
        return int(self._rows.shape[0])

    @property
    def dim(self) -> int:
        return int(self._rows.shape[1])

    @property
    def field(self) -> Field:
        return self._field

    @property
    def tol(self) -> ToleranceConfig:
        return self._tol

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def vectors(self) -> tuple[Vector, ...]:
        if self._vectors is None:
            self._vectors = tuple(Vector(row, self._field) for row in self._rows)
        return self._vectors

    # -- gram data -----------------------------------------------------
    @property
    def gram(self) -> GramMatrix:
        return self._gram

    @property
    def cholesky(self) -> PivotedCholesky:
        return self._chol

    @property
    def rank(self) -> int:
        return self._chol.rank

    @property
    def independent(self) -> bool:
        return self._chol.complete

    def gram_condition(self) -> float:
        """Eigenvalue condition number of the Gram matrix (inf if singular)."""
        eigs = np.linalg.eigvalsh(self._gram.entries)
        lo, hi = float(eigs[0]), float(eigs[-1])
        if lo <= 0.0:
            return math.inf
        return hi / lo

    # -- derived systems -----------------------------------------------
    def subsystem(self, indices: Sequence[int]) -> "VectorSystem":
        idx = list(indices)
        if not idx:
            raise ValueError("a subsystem needs at least one index")
        return VectorSystem.from_rows(self._rows[idx], self._field, self._tol)

    def augmented(self, x: Vector) -> "VectorSystem":
        """System with ``x`` appended after the existing vectors."""
        self._check_member(x)
        rows = np.vstack([self._rows, x.coords.astype(self._field.dtype)])
        return VectorSystem.from_rows(rows, self._field, self._tol)

    def _check_member(self, x: Vector) -> None:
        if x.field is not self._field:
            raise FieldMismatchError(
                f"vector field {x.field.value} does not match system field {self._field.value}"
            )
        if x.dim != self.dim:
            raise DimensionMismatchError(f"vector dimension {x.dim} != system dimension {self.dim}")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"VectorSystem(n={self.n}, dim={self.dim}, field={self._field.value})"


# -- module-level operation surface -------------------------------------


def gram_matrix(system: VectorSystem) -> GramMatrix:
    return system.gram


def gram_determinant(system: VectorSystem) -> float:
    """Gram determinant; exactly 0.0 for (numerically) dependent systems."""
    return system.cholesky.determinant()


def rank_diagnostics(system: VectorSystem, tol: ToleranceConfig | None = None) -> RankDiagnostics:
    """Pivot-based rank evidence, refactoring only if ``tol`` differs."""
    chol = system.cholesky
    if tol is not None and tol.rank_rel_tol != system.tol.rank_rel_tol:
        chol = pivoted_cholesky(system.gram.entries, tol.rank_rel_tol)
    pivots = chol.pivots
    max_pivot = float(pivots[0]) if pivots.size else 0.0
    min_pivot = float(pivots[chol.rank - 1]) if chol.complete and pivots.size else 0.0
    return RankDiagnostics(
        gram_det=chol.determinant(),
        min_pivot=min_pivot,
        max_pivot=max_pivot,
        independent=chol.complete,
    )


def require_independent(system: VectorSystem) -> None:
    if not system.independent:
        raise LinearDependenceError(
            f"system of {system.n} vectors has numerical rank {system.rank}"
        )


def _leq(lhs: float, rhs: float, rel: float) -> bool:
    """lhs <= rhs up to relative slack on the magnitude of both sides."""
    return lhs <= rhs + rel * (1.0 + abs(lhs) + abs(rhs))


@dataclass(frozen=True)
class GramHadamardVerdict:
    """Two-sided determinant bound 0 <= det <= product of squared norms."""

    gram_det: float
    norm_product: float
    lower_ok: bool
    upper_ok: bool
    dependent_equality: bool
    orthogonal_equality: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def check_gram_hadamard(system: VectorSystem, tol: ToleranceConfig | None = None) -> GramHadamardVerdict:
    """Verify 0 <= Gram det <= prod ||x_i||^2 and classify the equality cases.

    Equality on the left happens exactly for dependent systems; on the right
    exactly for pairwise-orthogonal systems.
    """
    tol = tol or system.tol
    det = gram_determinant(system)
    norms = system.gram.norms_sq()
    product = float(np.prod(norms))
    rel = tol.compare_rel_tol
    return GramHadamardVerdict(
        gram_det=det,
        norm_product=product,
        lower_ok=det >= 0.0,
        upper_ok=_leq(det, product, rel),
        dependent_equality=not system.independent,
        orthogonal_equality=abs(product - det) <= rel * (1.0 + abs(product)),
    )


@dataclass(frozen=True)
class GramSplitVerdict:
    """det(full) <= det(first block) * det(second block)."""

    gram_full: float
    gram_left: float
    gram_right: float
    ok: bool


def check_gram_product_split(
    system: VectorSystem, k: int, tol: ToleranceConfig | None = None
) -> GramSplitVerdict:
    """Verify the determinant product split at position ``k`` (1 <= k < n)."""
    tol = tol or system.tol
    if not (1 <= k < system.n):
        raise ValueError(f"split position must satisfy 1 <= k < n={system.n}, got {k}")
    full = gram_determinant(system)
    g = system.gram.entries
    left = gram_det_of_matrix(g[:k, :k], tol.rank_rel_tol)
    right = gram_det_of_matrix(g[k:, k:], tol.rank_rel_tol)
    return GramSplitVerdict(
        gram_full=full,
        gram_left=left,
        gram_right=right,
        ok=_leq(full, left * right, tol.compare_rel_tol),
    )


@dataclass(frozen=True)
class GramTriangleVerdict:
    """sqrt-determinant triangle inequality in the leading argument."""

    combined: float
    first: float
    second: float
    ok: bool


def check_gram_triangle(
    x1: Vector,
    y1: Vector,
    rest: Sequence[Vector] | VectorSystem,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> GramTriangleVerdict:
    """Verify det^(1/2)(x1+y1, rest) <= det^(1/2)(x1, rest) + det^(1/2)(y1, rest)."""
    if isinstance(rest, VectorSystem):
        rest_rows, field = rest.rows, rest.field
    else:
        rest_sys = VectorSystem(list(rest), tol)
        rest_rows, field = rest_sys.rows, rest_sys.field
    for lead in (x1, y1):
        if lead.field is not field:
            raise FieldMismatchError("leading vectors must share the system's scalar field")
        if lead.dim != rest_rows.shape[1]:
            raise DimensionMismatchError(
                f"leading vector dimension {lead.dim} != system dimension {rest_rows.shape[1]}"
            )

    def det_with(lead: np.ndarray) -> float:
        rows = np.vstack([lead[np.newaxis, :], rest_rows]).astype(field.dtype)
        return gram_determinant(VectorSystem.from_rows(rows, field, tol))

    combined = math.sqrt(max(det_with(x1.coords + y1.coords), 0.0))
    first = math.sqrt(max(det_with(x1.coords), 0.0))
    second = math.sqrt(max(det_with(y1.coords), 0.0))
    return GramTriangleVerdict(
        combined=combined,
        first=first,
        second=second,
        ok=_leq(combined, first + second, tol.compare_rel_tol),
    )
