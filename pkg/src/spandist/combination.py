"""Upper bounds for the norm of a linear combination ``sum_i alpha_i z_i``.

Every bound here is driven by the same raw material: the coefficient
magnitudes |alpha_i|, the squared norms ||z_i||^2 (the Gram diagonal), and
the off-diagonal inner-product magnitudes |<z_i, z_j>|. The bounds differ
in how they aggregate that material — maxima, sums, or Hölder pairings —
and several come as a tight/coarse chain whose internal ordering is itself
a theorem and is surfaced for verification.

None of these require linear independence; they hold for arbitrary finite
systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal, Sequence

import numpy as np

from .gram import VectorSystem
from .space import Scalar, ToleranceConfig, conjugate_exponent
from .space import _coeff_array as _validated_coeffs

__all__ = [
    "CombinationKind",
    "CombinationMethod",
    "CombinationBoundResult",
    "LagrangeParts",
    "combination_norm_sq",
    "lagrange_identity_parts",
    "lagrange_identity_residual",
    "cauchy_schwarz_bound",
    "diag_offdiag_bound",
    "selection_max_bound",
    "selection_frobenius_bound",
    "row_sum_bound",
    "holder_gram_bound",
    "holder_gram_p2_bound",
    "evaluate_combination",
    "DIAG_BRANCHES",
    "OFFDIAG_BRANCHES",
    "ROW_SUM_BRANCHES",
]

DiagBranch = Literal["max_coeff", "holder", "max_norm"]
OffdiagBranch = Literal["max_coeff", "holder", "max_entry"]
RowSumBranch = Literal["max_coeff", "holder", "max_row"]

DIAG_BRANCHES: tuple[DiagBranch, ...] = ("max_coeff", "holder", "max_norm")
OFFDIAG_BRANCHES: tuple[OffdiagBranch, ...] = ("max_coeff", "holder", "max_entry")
ROW_SUM_BRANCHES: tuple[RowSumBranch, ...] = ("max_coeff", "holder", "max_row")


class CombinationKind(Enum):
    CAUCHY_SCHWARZ = "cauchy_schwarz"
    DIAG_OFFDIAG = "diag_offdiag"
    SELECTION_MAX = "selection_max"
    SELECTION_FROBENIUS = "selection_frobenius"
    ROW_SUM = "row_sum"
    HOLDER_GRAM = "holder_gram"
    HOLDER_GRAM_P2 = "holder_gram_p2"


@dataclass(frozen=True)
class CombinationMethod:
    """A bound family plus whatever branch/exponent choices it takes."""

    kind: CombinationKind
    diag_branch: DiagBranch | None = None
    offdiag_branch: OffdiagBranch | None = None
    branch: RowSumBranch | None = None
    p: float | None = None
    diag_exp: float | None = None
    offdiag_exp: float | None = None

    def __post_init__(self) -> None:
        k = self.kind
        if k is CombinationKind.DIAG_OFFDIAG:
            if self.diag_branch not in DIAG_BRANCHES:
                raise ValueError(f"diag_branch must be one of {DIAG_BRANCHES}, got {self.diag_branch!r}")
            if self.offdiag_branch not in OFFDIAG_BRANCHES:
                raise ValueError(
                    f"offdiag_branch must be one of {OFFDIAG_BRANCHES}, got {self.offdiag_branch!r}"
                )
            if (self.diag_branch == "holder") != (self.diag_exp is not None):
                raise ValueError("diag_exp is required exactly when diag_branch='holder'")
            if (self.offdiag_branch == "holder") != (self.offdiag_exp is not None):
                raise ValueError("offdiag_exp is required exactly when offdiag_branch='holder'")
            for exp in (self.diag_exp, self.offdiag_exp):
                if exp is not None:
                    conjugate_exponent(exp)  # validates > 1
        elif k is CombinationKind.ROW_SUM:
            if self.branch not in ROW_SUM_BRANCHES:
                raise ValueError(f"branch must be one of {ROW_SUM_BRANCHES}, got {self.branch!r}")
            if (self.branch == "holder") != (self.p is not None):
                raise ValueError("p is required exactly when branch='holder'")
            if self.p is not None:
                conjugate_exponent(self.p)
        elif k in (CombinationKind.HOLDER_GRAM, CombinationKind.HOLDER_GRAM_P2):
            if self.p is None:
                raise ValueError("holder_gram methods require the exponent p")
            conjugate_exponent(self.p)
            if k is CombinationKind.HOLDER_GRAM_P2 and self.p != 2.0:
                raise ValueError("the p=2 specialisation fixes p at 2")

    @property
    def label(self) -> str:
        bits = [self.kind.value]
        if self.diag_branch:
            bits.append(f"diag={self.diag_branch}" + (f"({self.diag_exp:g})" if self.diag_exp else ""))
        if self.offdiag_branch:
            bits.append(
                f"offdiag={self.offdiag_branch}" + (f"({self.offdiag_exp:g})" if self.offdiag_exp else "")
            )
        if self.branch:
            bits.append(f"branch={self.branch}")
        if self.p is not None and self.kind is not CombinationKind.HOLDER_GRAM_P2:
            bits.append(f"p={self.p:g}")
        return "[" + ", ".join(bits) + "]"


@dataclass(frozen=True)
class CombinationBoundResult:
    """Outcome of one combination bound.

    ``chain`` runs tightest to coarsest; ``bound`` is always ``chain[0]``.
    ``holds`` compares lhs against the tight end; ``chain_ok`` asserts the
    internal ordering of the chain itself.
    """

    lhs: float
    bound: float
    chain: tuple[float, ...]
    method: CombinationMethod
    holds: bool
    chain_ok: bool


def _alpha_array(alphas: Sequence[Scalar] | np.ndarray, zs: VectorSystem) -> np.ndarray:
    return _validated_coeffs(alphas, zs.field, zs.n)


def combination_norm_sq(alphas: Sequence[Scalar], zs: VectorSystem) -> float:
    """||sum_i alphas[i] * z_i||^2 computed in coordinates."""
    a = _alpha_array(alphas, zs)
    combo = a @ zs.rows
    return float(np.real(np.vdot(combo, combo)))


@dataclass(frozen=True)
class LagrangeParts:
    """Terms of the norm-of-combination identity.

    (sum |a_i|^2)(sum ||z_i||^2) - ||sum a_i z_i||^2
        = 1/2 * sum_{i,j} ||conj(a_i) z_j - conj(a_j) z_i||^2

    ``residual`` is the absolute defect between the two sides; ``magnitude``
    is the natural scale to judge it against.
    """

    coeff_sum: float
    norm_sum: float
    combo_norm_sq: float
    pair_sum: float

    @property
    def residual(self) -> float:
        return abs(self.coeff_sum * self.norm_sum - self.combo_norm_sq - self.pair_sum)

    @property
    def magnitude(self) -> float:
        return abs(self.coeff_sum * self.norm_sum) + abs(self.combo_norm_sq) + abs(self.pair_sum)


def lagrange_identity_parts(alphas: Sequence[Scalar], zs: VectorSystem) -> LagrangeParts:
    a = _alpha_array(alphas, zs)
    rows = zs.rows
    ac = a.conj()
    # pairwise differences conj(a_i) z_j - conj(a_j) z_i, shape (n, n, dim)
    diff = ac[:, None, None] * rows[None, :, :] - ac[None, :, None] * rows[:, None, :]
    pair = 0.5 * float(np.sum(np.abs(diff) ** 2))
    return LagrangeParts(
        coeff_sum=float(np.real(np.vdot(a, a))),
        norm_sum=float(np.sum(zs.gram.norms_sq())),
        combo_norm_sq=combination_norm_sq(a, zs),
        pair_sum=pair,
    )


def lagrange_identity_residual(alphas: Sequence[Scalar], zs: VectorSystem) -> float:
    """Absolute defect of the identity; ~1e-16 * magnitude in practice."""
    return lagrange_identity_parts(alphas, zs).residual


def _make_result(
    lhs: float,
    chain: Sequence[float],
    method: CombinationMethod,
    tol: ToleranceConfig,
) -> CombinationBoundResult:
    rel = tol.compare_rel_tol
    chain = tuple(float(c) for c in chain)
    holds = lhs <= chain[0] * (1.0 + rel) + rel
    chain_ok = all(chain[i] <= chain[i + 1] * (1.0 + rel) + rel for i in range(len(chain) - 1))
    return CombinationBoundResult(
        lhs=lhs, bound=chain[0], chain=chain, method=method, holds=holds, chain_ok=chain_ok
    )


def cauchy_schwarz_bound(
    alphas: Sequence[Scalar], zs: VectorSystem, tol: ToleranceConfig | None = None
) -> CombinationBoundResult:
    """||sum a_i z_i||^2 <= (sum |a_i|^2)(sum ||z_i||^2)."""
    a = _alpha_array(alphas, zs)
    lhs = combination_norm_sq(a, zs)
    bound = float(np.real(np.vdot(a, a))) * float(np.sum(zs.gram.norms_sq()))
    method = CombinationMethod(kind=CombinationKind.CAUCHY_SCHWARZ)
    return _make_result(lhs, (bound,), method, tol or zs.tol)


def _abs_parts(alphas: np.ndarray, zs: VectorSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(|alpha|, squared norms, |offdiag|) with the diagonal zeroed."""
    return np.abs(alphas), zs.gram.norms_sq(), zs.gram.abs_offdiag()


def _top_pair_product(a: np.ndarray) -> float:
    """max_{i != j} |a_i||a_j| — product of the two largest magnitudes."""
    if a.shape[0] < 2:
        return 0.0
    top = np.partition(a, -2)[-2:]
    return float(top[0] * top[1])


def _diag_term(branch: DiagBranch, exp: float | None, a: np.ndarray, norms: np.ndarray) -> float:
    if branch == "max_coeff":
        return float(np.max(a) ** 2 * np.sum(norms))
    if branch == "holder":
        q = conjugate_exponent(exp)
        return float(np.sum(a ** (2 * exp)) ** (1 / exp) * np.sum(norms**q) ** (1 / q))
    return float(np.sum(a**2) * np.max(norms))


def _offdiag_term(branch: OffdiagBranch, exp: float | None, a: np.ndarray, off: np.ndarray) -> float:
    if branch == "max_coeff":
        return _top_pair_product(a) * float(np.sum(off))
    if branch == "holder":
        q = conjugate_exponent(exp)
        coeff = max(float(np.sum(a**exp) ** 2 - np.sum(a ** (2 * exp))), 0.0)
        return coeff ** (1 / exp) * float(np.sum(off**q)) ** (1 / q)
    coeff = max(float(np.sum(a) ** 2 - np.sum(a**2)), 0.0)
    return coeff * float(np.max(off, initial=0.0))


def diag_offdiag_bound(
    alphas: Sequence[Scalar],
    zs: VectorSystem,
    diag_branch: DiagBranch,
    offdiag_branch: OffdiagBranch,
    diag_exp: float | None = None,
    offdiag_exp: float | None = None,
    tol: ToleranceConfig | None = None,
) -> CombinationBoundResult:
    """Split bound: diagonal mass and off-diagonal mass estimated separately.

    Each side offers three aggregations (coefficient maximum / Hölder pair /
    entry maximum), giving nine combinations. Hölder branches take the
    coefficient-side exponent; the partner exponent is derived.
    """
    method = CombinationMethod(
        kind=CombinationKind.DIAG_OFFDIAG,
        diag_branch=diag_branch,
        offdiag_branch=offdiag_branch,
        diag_exp=diag_exp,
        offdiag_exp=offdiag_exp,
    )
    a_arr = _alpha_array(alphas, zs)
    lhs = combination_norm_sq(a_arr, zs)
    a, norms, off = _abs_parts(a_arr, zs)
    bound = _diag_term(diag_branch, diag_exp, a, norms) + _offdiag_term(
        offdiag_branch, offdiag_exp, a, off
    )
    return _make_result(lhs, (bound,), method, tol or zs.tol)


def selection_max_bound(
    alphas: Sequence[Scalar], zs: VectorSystem, tol: ToleranceConfig | None = None
) -> CombinationBoundResult:
    """Max-norm/max-entry selection with its coarser closed form.

    tight  = max||z||^2 * sum|a|^2 + max|<z_i,z_j>| * ((sum|a|)^2 - sum|a|^2)
    coarse = sum|a|^2 * (max||z||^2 + (n-1) * max|<z_i,z_j>|)
    """
    a_arr = _alpha_array(alphas, zs)
    lhs = combination_norm_sq(a_arr, zs)
    a, norms, off = _abs_parts(a_arr, zs)
    sum_sq = float(np.sum(a**2))
    max_off = float(np.max(off, initial=0.0))
    tight = float(np.max(norms)) * sum_sq + max_off * max(float(np.sum(a) ** 2) - sum_sq, 0.0)
    coarse = sum_sq * (float(np.max(norms)) + (zs.n - 1) * max_off)
    method = CombinationMethod(kind=CombinationKind.SELECTION_MAX)
    return _make_result(lhs, (tight, coarse), method, tol or zs.tol)


def selection_frobenius_bound(
    alphas: Sequence[Scalar], zs: VectorSystem, tol: ToleranceConfig | None = None
) -> CombinationBoundResult:
    """Max-norm/off-diagonal-Frobenius selection with its coarser closed form.

    tight  = max||z||^2 * sum|a|^2
             + (sum_{i!=j} |<z_i,z_j>|^2)^(1/2) * ((sum|a|^2)^2 - sum|a|^4)^(1/2)
    coarse = sum|a|^2 * (max||z||^2 + (sum_{i!=j} |<z_i,z_j>|^2)^(1/2))
    """
    a_arr = _alpha_array(alphas, zs)
    lhs = combination_norm_sq(a_arr, zs)
    a, norms, off = _abs_parts(a_arr, zs)
    sum_sq = float(np.sum(a**2))
    off_frob = math.sqrt(float(np.sum(off**2)))
    coeff = math.sqrt(max(sum_sq**2 - float(np.sum(a**4)), 0.0))
    tight = float(np.max(norms)) * sum_sq + off_frob * coeff
    coarse = sum_sq * (float(np.max(norms)) + off_frob)
    method = CombinationMethod(kind=CombinationKind.SELECTION_FROBENIUS)
    return _make_result(lhs, (tight, coarse), method, tol or zs.tol)


def row_sum_bound(
    alphas: Sequence[Scalar],
    zs: VectorSystem,
    branch: RowSumBranch,
    p: float | None = None,
    tol: ToleranceConfig | None = None,
) -> CombinationBoundResult:
    """Coupled row-sum bound sum_i |a_i|^2 r_i with a selectable relaxation.

    r_i = sum_j |<z_i, z_j>| (diagonal included). The base bound already
    dominates the lhs; the branch relaxes it further:

    * max_coeff: max|a|^2 * sum_i r_i
    * holder:    (sum |a|^(2p))^(1/p) * (sum r_i^q)^(1/q)
    * max_row:   sum|a|^2 * max_i r_i
    """
    method = CombinationMethod(kind=CombinationKind.ROW_SUM, branch=branch, p=p)
    a_arr = _alpha_array(alphas, zs)
    lhs = combination_norm_sq(a_arr, zs)
    a = np.abs(a_arr)
    r = np.sum(np.abs(zs.gram.entries), axis=1)
    base = float(np.sum(a**2 * r))
    if branch == "max_coeff":
        relaxed = float(np.max(a) ** 2 * np.sum(r))
    elif branch == "holder":
        q = conjugate_exponent(p)
        relaxed = float(np.sum(a ** (2 * p)) ** (1 / p) * np.sum(r**q) ** (1 / q))
    else:
        relaxed = float(np.sum(a**2) * np.max(r))
    return _make_result(lhs, (base, relaxed), method, tol or zs.tol)


def holder_gram_bound(
    alphas: Sequence[Scalar], zs: VectorSystem, p: float, tol: ToleranceConfig | None = None
) -> CombinationBoundResult:
    """Hölder pairing of coefficient powers against Gram-entry powers.

    bound = (sum_i |a_i|^p)^(2/p) * (sum_{i,j} |<z_i,z_j>|^q)^(1/q),
    with q conjugate to p and the double sum running over all pairs.  The
    coefficient factor is the squared p-norm because the pairing is applied
    to the double sum over |a_i| |a_j|, which factorises.
    """
    method = CombinationMethod(kind=CombinationKind.HOLDER_GRAM, p=p)
    a_arr = _alpha_array(alphas, zs)
    lhs = combination_norm_sq(a_arr, zs)
    a = np.abs(a_arr)
    q = conjugate_exponent(p)
    bound = float(np.sum(a**p) ** (2 / p) * np.sum(np.abs(zs.gram.entries) ** q) ** (1 / q))
    return _make_result(lhs, (bound,), method, tol or zs.tol)


def holder_gram_p2_bound(
    alphas: Sequence[Scalar], zs: VectorSystem, tol: ToleranceConfig | None = None
) -> CombinationBoundResult:
    """The symmetric p = q = 2 case: sum|a|^2 * (sum|G_ij|^2)^(1/2)."""
    base = holder_gram_bound(alphas, zs, 2.0, tol)
    method = CombinationMethod(kind=CombinationKind.HOLDER_GRAM_P2, p=2.0)
    return CombinationBoundResult(
        lhs=base.lhs,
        bound=base.bound,
        chain=base.chain,
        method=method,
        holds=base.holds,
        chain_ok=base.chain_ok,
    )


def evaluate_combination(
    alphas: Sequence[Scalar],
    zs: VectorSystem,
    method: CombinationMethod,
    tol: ToleranceConfig | None = None,
) -> CombinationBoundResult:
    """Dispatch a :class:`CombinationMethod` to its implementation."""
    k = method.kind
    if k is CombinationKind.CAUCHY_SCHWARZ:
        return cauchy_schwarz_bound(alphas, zs, tol)
    if k is CombinationKind.DIAG_OFFDIAG:
        return diag_offdiag_bound(
            alphas, zs, method.diag_branch, method.offdiag_branch, method.diag_exp, method.offdiag_exp, tol
        )
    if k is CombinationKind.SELECTION_MAX:
        return selection_max_bound(alphas, zs, tol)
    if k is CombinationKind.SELECTION_FROBENIUS:
        return selection_frobenius_bound(alphas, zs, tol)
    if k is CombinationKind.ROW_SUM:
        return row_sum_bound(alphas, zs, method.branch, method.p, tol)
    if k is CombinationKind.HOLDER_GRAM:
        return holder_gram_bound(alphas, zs, method.p, tol)
    return holder_gram_p2_bound(alphas, zs, tol)
