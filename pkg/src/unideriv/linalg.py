"""Complex dense linear algebra for Haar-random unitary matrices.

Sampling follows the standard recipe: fill a square matrix with independent
standard complex Gaussians (a Ginibre matrix), take its QR decomposition,
and right-multiply Q by diag(r_ii/|r_ii|).  Without the diagonal phase fix
the QR convention biases the distribution away from Haar measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DegenerateInputError,
    InvalidDimensionError,
    PrecisionError,
)
from .spectrum import EigenAngleSpectrum

# |r_ii| below this is treated as numerical rank deficiency.
RANK_TOL = 1e-30

# Construction-time unitarity contract: defect <= UNITARITY_TOL * n.
UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class SeedStream:
    """A (master_seed, stream_index) pair keying a counter-based generator.

    The pair fully determines the variate sequence, so independent streams
    for parallel workers are just distinct stream indices.
    """

    master_seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array(
            [self.master_seed % (1 << 64), self.stream_index % (1 << 64)],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, offset: int) -> "SeedStream":
        return SeedStream(self.master_seed, self.stream_index + offset)


@dataclass(frozen=True)
class UnitaryMatrix:
    """A square complex matrix certified unitary at construction time."""

    matrix: np.ndarray
    unitarity_defect: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def complex_gaussians(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussians (real and imaginary parts each N(0,1)).

    Uses Box-Muller on uniform variates: with R = sqrt(-2 ln u1) and
    phi = 2 pi u2, the point R e^{i phi} has independent standard normal
    real and imaginary parts.
    """
    u1 = 1.0 - rng.random(shape)  # in (0, 1], keeps log finite
    u2 = rng.random(shape)
    return np.sqrt(-2.0 * np.log(u1)) * np.exp(2j * np.pi * u2)


def sample_ginibre(n: int, seed: SeedStream) -> np.ndarray:
    """An n x n matrix of independent standard complex Gaussians."""
    if n < 1:
        raise InvalidDimensionError(f"Ginibre dimension must be >= 1, got {n}")
    rng = seed.generator()
    return complex_gaussians(rng, (n, n))


def qr_haar_fix(g: np.ndarray) -> UnitaryMatrix:
    """Householder QR of g with the diagonal phase correction.

    Returns U = Q diag(r_ii/|r_ii|), which is Haar-distributed when g is
    Ginibre.  Raises DegenerateInputError on numerical rank deficiency
    (the caller should resample).
    """
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {g.shape}")
    n = g.shape[0]
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    if np.min(np.abs(d)) <= RANK_TOL:
        raise DegenerateInputError("rank-deficient input to qr_haar_fix")
    u = q * (d / np.abs(d))
    # Frobenius norm bounds the operator norm from above, so this is a
    # conservative certificate.
    defect = float(np.linalg.norm(u.conj().T @ u - np.eye(n)))
    if defect > UNITARITY_TOL * n:
        raise PrecisionError(
            f"unitarity defect {defect:.3e} exceeds {UNITARITY_TOL * n:.3e}"
        )
    return UnitaryMatrix(matrix=u, unitarity_defect=defect)


def haar_unitary(n: int, seed: SeedStream, max_attempts: int = 4) -> UnitaryMatrix:
    """Sample a Haar-random U(n) matrix, resampling on degenerate draws."""
    last_err: Exception | None = None
    for attempt in range(max_attempts):
        try:
            return qr_haar_fix(sample_ginibre(n, seed.child(attempt << 56)))
        except DegenerateInputError as err:  # probability ~0, but contractually handled
            last_err = err
    raise DegenerateInputError(f"no full-rank Ginibre draw in {max_attempts} attempts") from last_err


def eigenvalues_unitary(u: UnitaryMatrix, tol: float = 1e-6) -> EigenAngleSpectrum:
    """Eigenangles of a unitary matrix, sorted ascending in [0, 2pi).

    Each raw eigenvalue must have modulus within `tol` of 1; eigenvalues are
    then projected onto the unit circle so downstream code may assume exact
    unit modulus.  The product of the projected eigenvalues is cross-checked
    against det(u) computed by LU factorization.
    """
    try:
        lam = np.linalg.eigvals(u.matrix)
    except np.linalg.LinAlgError as err:
        raise ConvergenceError(f"eigenvalue iteration failed: {err}") from err
    moduli = np.abs(lam)
    dev = float(np.max(np.abs(moduli - 1.0)))
    if dev > tol:
        raise PrecisionError(
            f"raw eigenvalue modulus deviates from 1 by {dev:.3e} > {tol:.3e}; "
            "insufficient working precision"
        )
    lam = lam / moduli
    angles = np.sort(np.mod(np.angle(lam), 2.0 * np.pi))

    sign, _ = np.linalg.slogdet(u.matrix)  # LU-based determinant phase
    mismatch = _angle_distance(float(np.sum(angles)), float(np.angle(sign)))
    if mismatch > 1e-8:
        raise PrecisionError(
            f"eigenangle sum disagrees with arg det(u) by {mismatch:.3e}"
        )
    return EigenAngleSpectrum(angles)


def _angle_distance(a: float, b: float) -> float:
    """Distance between angles a and b modulo 2pi."""
    return abs(float(np.angle(np.exp(1j * (a - b)))))
