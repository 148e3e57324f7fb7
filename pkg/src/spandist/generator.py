"""Deterministic random instance generation for the verification harness.

Every trial draws from a counter-based Philox stream keyed by
(seed, trial), so trial t of a campaign is reproducible in isolation —
replay never needs to fast-forward through earlier trials, and parallel
workers produce bit-identical draws regardless of scheduling. Auxiliary
randomness inside checks uses the same key with a distinct counter block
(see :func:`child_rng`), keeping streams independent without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import IntervalData
from .distance import in_orthogonal_complement
from .errors import NumericalInstabilityError
from .gram import VectorSystem
from .space import DEFAULT_TOL, Field, ToleranceConfig, Vector

__all__ = [
    "GeneratorConfig",
    "Instance",
    "trial_rng",
    "child_rng",
    "generate_instance",
]

MAX_DIM = 512
_MAX_REDRAWS = 100


@dataclass(frozen=True)
class GeneratorConfig:
    """Shape, field, conditioning, and size of one instance stream.

    ``conditioning`` is the target condition number of the Gram matrix
    (ratio of extreme eigenvalues); the coordinate matrix is built with
    singular-value ratio sqrt(conditioning) to achieve it exactly.
    ``dependent_fraction`` makes that share of trials linearly dependent by
    replacing one vector with a combination of the others (for exercising
    bounds that do not need independence).
    """

    seed: int = 0
    trials: int = 100
    dim: int = 4
    n: int = 2
    field: Field = Field.REAL
    conditioning: float = 1.0
    orthonormal: bool = False
    intervals: bool = False
    dependent_fraction: float = 0.0

    def __post_init__(self) -> None:
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if not (1 <= self.dim <= MAX_DIM):
            raise ValueError(f"dim must be in 1..{MAX_DIM}, got {self.dim}")
        if not (1 <= self.n <= self.dim):
            raise ValueError(f"n must be in 1..dim={self.dim}, got {self.n}")
        if not (math.isfinite(self.conditioning) and self.conditioning >= 1.0):
            raise ValueError("conditioning must be finite and >= 1")
        if not (0.0 <= self.dependent_fraction <= 1.0):
            raise ValueError("dependent_fraction must lie in [0, 1]")
        if self.orthonormal and self.conditioning != 1.0:
            raise ValueError("orthonormal systems have conditioning 1; do not request both")
        if self.orthonormal and self.dependent_fraction > 0.0:
            raise ValueError("orthonormal and dependent_fraction are mutually exclusive")
        if self.dependent_fraction > 0.0 and self.n < 2:
            raise ValueError("dependent systems need n >= 2")


@dataclass(frozen=True)
class Instance:
    """One generated (or loaded) problem instance.

    ``seed``/``trial`` are retained when the instance came from the
    generator so checks can derive auxiliary deterministic randomness;
    file-loaded instances carry None.
    """

    system: VectorSystem
    x: Vector
    intervals: IntervalData | None = None
    seed: int | None = None
    trial: int | None = None


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Primary stream for one trial: Philox keyed by (seed, trial)."""
    return np.random.Generator(np.random.Philox(key=[seed, trial]))


def child_rng(instance: Instance, salt: int) -> np.random.Generator:
    """Auxiliary stream for a check, independent of the primary draws.

    Uses the same (seed, trial) key with the counter advanced into a
    disjoint block selected by ``salt``.
    """
    seed = instance.seed if instance.seed is not None else 0
    trial = instance.trial if instance.trial is not None else 0
    bg = np.random.Philox(key=[seed, trial], counter=[0, 0, int(salt), 0])
    return np.random.Generator(bg)


def _standard(rng: np.random.Generator, shape: tuple[int, ...], field: Field) -> np.ndarray:
    if field is Field.REAL:
        return rng.standard_normal(shape)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def _orthonormal_frame(rng: np.random.Generator, rows: int, dim: int, field: Field) -> np.ndarray:
    """rows x dim matrix with orthonormal rows (Haar-ish via QR)."""
    q, r = np.linalg.qr(_standard(rng, (dim, rows), field))
    # fix the QR sign/phase ambiguity so the draw is a pure function of the data
    d = r.diagonal()
    mags = np.abs(d)
    safe = np.where(mags == 0.0, 1.0, mags)
    phases = np.where(mags == 0.0, 1.0, (d / safe).conj())
    return (q * phases).T


def _conditioned_rows(rng: np.random.Generator, cfg: GeneratorConfig) -> np.ndarray:
    """Rows whose Gram matrix has condition number exactly cfg.conditioning."""
    n, dim, field = cfg.n, cfg.dim, cfg.field
    if cfg.orthonormal:
        return _orthonormal_frame(rng, n, dim, field)
    left = _orthonormal_frame(rng, n, n, field).T  # n x n unitary
    right = _orthonormal_frame(rng, n, dim, field)  # n x dim, orthonormal rows
    if n == 1:
        sigmas = np.ones(1)
    else:
        sigmas = np.geomspace(1.0, 1.0 / math.sqrt(cfg.conditioning), n)
    scale = math.exp(rng.uniform(-0.5, 0.5))
    return scale * ((left * sigmas) @ right)


def _draw_x(
    rng: np.random.Generator, system: VectorSystem, tol: ToleranceConfig
) -> Vector:
    for _ in range(_MAX_REDRAWS):
        x = Vector(_standard(rng, (system.dim,), system.field), system.field)
        if not in_orthogonal_complement(system, x, tol):
            return x
    raise NumericalInstabilityError("could not draw x outside the orthogonal complement")


def _draw_ball_instance(
    rng: np.random.Generator, system: VectorSystem, tol: ToleranceConfig
) -> tuple[Vector, IntervalData]:
    """Interval data plus an x inside the ball the condition describes.

    gamma/Gamma are midpoint +- half-width; x = (midpoint combination)
    + rho * radius * unit, rho <= 0.9, which satisfies the two-sided
    condition by construction.
    """
    field = system.field
    n = system.n
    mids = _standard(rng, (n,), field)
    mags = 0.25 + rng.uniform(0.0, 1.0, n)
    if field is Field.COMPLEX:
        phases = np.exp(2j * math.pi * rng.uniform(0.0, 1.0, n))
        widths = mags * phases
    else:
        widths = mags
    lo = mids - widths
    hi = mids + widths
    center = mids @ system.rows
    radius = float(np.linalg.norm(widths @ system.rows))
    for _ in range(_MAX_REDRAWS):
        direction = _standard(rng, (system.dim,), field)
        dn = float(np.linalg.norm(direction))
        if dn == 0.0:
            continue
        rho = rng.uniform(0.0, 0.9)
        x = Vector(center + rho * radius * direction / dn, field)
        if not in_orthogonal_complement(system, x, tol):
            if field is Field.REAL:
                iv = IntervalData(gammas=tuple(map(float, lo)), Gammas=tuple(map(float, hi)))
            else:
                iv = IntervalData(gammas=tuple(map(complex, lo)), Gammas=tuple(map(complex, hi)))
            return x, iv
    raise NumericalInstabilityError("could not draw a ball point outside the orthogonal complement")


def generate_instance(
    config: GeneratorConfig, trial: int, tol: ToleranceConfig = DEFAULT_TOL
) -> Instance:
    """Build the instance for one (config, trial) pair. Pure and replayable."""
    if not 0 <= trial < config.trials:
        raise ValueError(f"trial index {trial} outside the configured range [0, {config.trials})")
    rng = trial_rng(config.seed, trial)
    rows = _conditioned_rows(rng, config)
    make_dependent = config.dependent_fraction > 0.0 and rng.uniform() < config.dependent_fraction
    if make_dependent:
        victim = int(rng.integers(config.n))
        coeffs = _standard(rng, (config.n,), config.field)
        coeffs[victim] = 0.0
        rows = rows.copy()
        rows[victim] = coeffs @ rows
    system = VectorSystem.from_rows(rows, config.field, tol)
    if config.intervals:
        x, iv = _draw_ball_instance(rng, system, tol)
        return Instance(system=system, x=x, intervals=iv, seed=config.seed, trial=trial)
    x = _draw_x(rng, system, tol)
    return Instance(system=system, x=x, intervals=None, seed=config.seed, trial=trial)
