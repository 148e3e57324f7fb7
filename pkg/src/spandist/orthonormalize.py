"""Modified Gram–Schmidt with re-orthogonalization.

Deliberately independent of the Gram/determinant machinery: it only uses
coordinate arithmetic, which makes it a useful cross-check ("compute the
distance a completely different way") as well as a library routine.
"""

from __future__ import annotations

import numpy as np

from .errors import LinearDependenceError
from .space import DEFAULT_TOL, ToleranceConfig

__all__ = ["orthonormal_rows", "residual_after_projection", "distance_sq_by_orthonormalization"]


def _project_out(basis: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Subtract from v its components along the orthonormal rows of basis.

    Two passes of modified Gram–Schmidt; the second pass mops up the
    rounding left by the first, keeping the residual orthogonal to the
    basis to near machine precision even for ill-conditioned inputs.
    """
    r = v.astype(np.result_type(basis.dtype, v.dtype), copy=True)
    for _ in range(2):
        for q in basis:
            r -= np.vdot(q, r) * q
    return r


def orthonormal_rows(rows: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as rows) of the row span of ``rows``.

    Raises LinearDependenceError if a vector's residual collapses below
    ``rank_rel_tol`` (relative to the vector's own norm), i.e. the rows are
    numerically dependent.
    """
    rows = np.asarray(rows)
    basis = np.zeros((0, rows.shape[1]), dtype=rows.dtype)
    for i, v in enumerate(rows):
        r = _project_out(basis, v)
        scale = np.linalg.norm(v)
        rnorm = np.linalg.norm(r)
        if rnorm <= np.sqrt(tol.rank_rel_tol) * scale or rnorm == 0.0:
            raise LinearDependenceError(
                f"vector {i} is numerically in the span of its predecessors"
            )
        basis = np.vstack([basis, r / rnorm])
    return basis


def residual_after_projection(rows: np.ndarray, x: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Component of x orthogonal to the row span of ``rows``."""
    return _project_out(orthonormal_rows(rows, tol), np.asarray(x))


def distance_sq_by_orthonormalization(rows: np.ndarray, x: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Squared distance from x to the row span, via an orthonormal basis."""
    r = residual_after_projection(rows, x, tol)
    return float(np.real(np.vdot(r, r)))
