"""Spectral coordinates for least-squares instances.

A design matrix X enters every closed form in this library only through the
eigenvalues s_1 <= ... <= s_p of the sample covariance X'X/n, the
eigenvector basis V, and the rotated response channel c_i = v_i' X' y / n.
This module builds those coordinates.  The factorization work is done by
LAPACK through numpy.linalg.eigh behind small validated wrappers; the
spectrum of X is always obtained from X'X/n, never from X directly, since
only the right singular subspace and the eigenvalues appear downstream.

Matrix I/O is bare CSV: comma-separated values, one row per line, no
header.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "Spectrum",
    "SpectralDesign",
    "sym_eig",
    "design_decompose",
    "attach_response",
    "read_matrix_csv",
    "read_vector_csv",
    "write_matrix_csv",
]

SYMMETRY_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10
# Roundoff negatives this far (relative to ||A||_F) below zero are clamped
# to exactly 0 so null directions are detected exactly.
_NEG_CLAMP_REL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending nonnegative covariance eigenvalues.

    mu is the smallest eigenvalue, big_l the largest, kappa = big_l/mu the
    condition number (defined only when mu > 0).
    """

    eigenvalues: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("Spectrum requires a nonempty 1-D eigenvalue array")
        if not np.isfinite(vals).all():
            raise ValueError("Spectrum eigenvalues must be finite")
        if (vals < 0).any():
            raise ValueError("Spectrum eigenvalues must be nonnegative")
        if (np.diff(vals) < 0).any():
            raise ValueError("Spectrum eigenvalues must be ascending")
        object.__setattr__(self, "eigenvalues", vals)

    @classmethod
    def from_eigenvalues(cls, values, clamp_scale: float = 0.0) -> "Spectrum":
        """Build a spectrum from raw eigenvalues, sorted ascending.

        Values within 1e-12*clamp_scale of zero (either side) are clamped to
        exactly 0, so null directions are detected exactly downstream; a
        tiny positive roundoff eigenvalue would otherwise turn a null
        coordinate into a huge spurious one.  Anything below the negative
        clamp is a genuine error.
        """
        vals = np.sort(np.asarray(values, dtype=float))
        tol = _NEG_CLAMP_REL * max(clamp_scale, 0.0)
        bad = vals < -tol
        if bad.any():
            raise ValueError(
                f"eigenvalue {vals[bad][0]:.6g} below the roundoff clamp {-tol:.6g}"
            )
        vals = np.where(np.abs(vals) <= tol, 0.0, vals)
        return cls(vals)

    @property
    def p(self) -> int:
        return self.eigenvalues.size

    @property
    def mu(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def big_l(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def kappa(self) -> float:
        if self.mu <= 0.0:
            raise ValueError("kappa undefined: smallest eigenvalue is zero")
        return self.big_l / self.mu


@dataclass(frozen=True, eq=False)
class SpectralDesign:
    """A least-squares design in spectral coordinates.

    v_basis columns are the eigenvectors of X'X/n matching the spectrum
    order.  rotated_channel, when present, holds c = V' X' y / n.
    """

    n: int
    p: int
    spectrum: Spectrum
    v_basis: np.ndarray
    rotated_channel: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise ValueError("SpectralDesign requires n >= 1 and p >= 1")
        v = np.asarray(self.v_basis, dtype=float)
        if v.shape != (self.p, self.p):
            raise ValueError(f"v_basis must be {self.p}x{self.p}, got {v.shape}")
        if self.spectrum.p != self.p:
            raise ValueError("spectrum size does not match p")
        gram_err = np.linalg.norm(v.T @ v - np.eye(self.p))
        if gram_err > ORTHOGONALITY_TOL * max(1.0, self.p):
            raise ValueError(f"v_basis is not orthogonal (Frobenius error {gram_err:.3g})")
        object.__setattr__(self, "v_basis", v)
        if self.rotated_channel is not None:
            c = np.asarray(self.rotated_channel, dtype=float)
            if c.shape != (self.p,):
                raise ValueError("rotated_channel must have length p")
            object.__setattr__(self, "rotated_channel", c)

    @property
    def has_response(self) -> bool:
        return self.rotated_channel is not None


def sym_eig(a):
    """Eigendecomposition A = Q diag(w) Q' of a symmetric matrix.

    Returns (w, q) with w ascending and q orthogonal.  Input asymmetry
    beyond 1e-10 entrywise is a contract error; within tolerance the matrix
    is symmetrized before factorization.  Deterministic for fixed input.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("sym_eig requires a square matrix")
    if not np.isfinite(a).all():
        raise ValueError("sym_eig requires finite entries")
    asym = np.abs(a - a.T).max() if a.size else 0.0
    if asym > SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    w, q = np.linalg.eigh(0.5 * (a + a.T))
    return w, q


def design_decompose(x) -> SpectralDesign:
    """Spectral coordinates of a design matrix.

    The spectrum and basis come from the eigendecomposition of X'X/n;
    roundoff-negative eigenvalues are clamped to exactly zero so rank
    deficiency is detected exactly.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("design matrix must be 2-D")
    if not np.isfinite(x).all():
        raise ValueError("design matrix has non-finite entries")
    n, p = x.shape
    if n < 1 or p < 1:
        raise ValueError("design matrix must be at least 1x1")
    sigma_hat = x.T @ x / n
    w, q = sym_eig(sigma_hat)
    scale = float(np.linalg.norm(sigma_hat))
    spectrum = Spectrum.from_eigenvalues(w, clamp_scale=scale)
    # eigh returns ascending values already; from_eigenvalues only clamps
    return SpectralDesign(n=n, p=p, spectrum=spectrum, v_basis=q)


def attach_response(design: SpectralDesign, x, y) -> SpectralDesign:
    """Attach the rotated response channel c = V' X' y / n to a design."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != (design.n, design.p):
        raise ValueError(
            f"design shape mismatch: expected {(design.n, design.p)}, got {x.shape}"
        )
    if y.shape != (design.n,):
        raise ValueError(f"response length {y.size} does not match n = {design.n}")
    channel = design.v_basis.T @ (x.T @ y) / design.n
    return replace(design, rotated_channel=channel)


def read_matrix_csv(path) -> np.ndarray:
    """Read a matrix from headerless comma-separated text, one row per line."""
    a = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    return a


def read_vector_csv(path) -> np.ndarray:
    """Read a vector (one value per line, or a single CSV row)."""
    a = np.loadtxt(path, delimiter=",", dtype=float)
    return np.atleast_1d(a).reshape(-1)


def write_matrix_csv(path, a) -> None:
    """Write a matrix or vector as headerless CSV with 17 significant digits."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    with open(path, "w") as fh:
        for row in a:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
