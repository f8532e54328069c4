"""Dense symmetric matrices and a from-scratch cyclic Jacobi eigensolver.

The Jacobi routine is the certificate path of the package: every spectral
quantity that feeds a reported bound is (re)computed here rather than by the
optimisation code that produced the candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SymmetricMatrix",
    "EigResult",
    "JacobiError",
    "eig_symmetric",
]

MAX_EIG_DIM = 4096
_SWEEP_CAP = 40
_OFF_TOL = 1e-12


class JacobiError(RuntimeError):
    """Jacobi sweeps failed to reach the off-diagonal target."""


class SymmetricMatrix:
    """Immutable dense real symmetric matrix with validated entries."""

    __slots__ = ("_a",)

    def __init__(self, array: np.ndarray | list):
        a = np.array(array, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        scale = max(1.0, float(np.abs(a).max()))
        if float(np.abs(a - a.T).max()) > 1e-9 * scale:
            raise ValueError("matrix is not symmetric")
        a = 0.5 * (a + a.T)
        a.flags.writeable = False
        self._a = a

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def to_text(self) -> str:
        """Whitespace-separated dense rows, one row per line."""
        return "\n".join(" ".join(repr(float(x)) for x in row) for row in self._a) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SymmetricMatrix":
        rows = [[float(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
        return cls(np.array(rows))

    def __repr__(self) -> str:
        return f"SymmetricMatrix(n={self.n})"


@dataclass(frozen=True)
class EigResult:
    """Spectrum sorted descending; ``off_residual`` bounds |true - computed| eigenvalues."""

    values: np.ndarray
    vectors: np.ndarray | None
    off_residual: float
    sweeps: int


def _off_norm(a: np.ndarray) -> float:
    # Summing the off-diagonal squares directly avoids the cancellation that
    # ||A||^2 - ||diag||^2 suffers once the off-diagonal part is tiny.
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return math.sqrt(float((off * off).sum()))


def jacobi_eigh(a: np.ndarray, vectors: bool = True) -> EigResult:
    """Cyclic Jacobi rotations on a copy of ``a``.

    Sweeps stop once the off-diagonal Frobenius norm drops below 1e-12 times
    the Frobenius norm of the input; each rotation is a full two-sided plane
    rotation applied to rows and columns p, q.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n > MAX_EIG_DIM:
        raise ValueError(f"dimension {n} exceeds {MAX_EIG_DIM}")
    v = np.eye(n) if vectors else None
    norm = math.sqrt(float((a * a).sum()))
    target = _OFF_TOL * norm
    if n == 1:
        return _finish(a, v, 0.0, 0)
    skip = target / max(n, 1)
    for sweep in range(1, _SWEEP_CAP + 1):
        off = _off_norm(a)
        if off <= target:
            return _finish(a, v, off, sweep - 1)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    off = _off_norm(a)
    if off <= target:
        return _finish(a, v, off, _SWEEP_CAP)
    raise JacobiError(f"no convergence after {_SWEEP_CAP} sweeps (off-norm {off:.3e})")


def _finish(a: np.ndarray, v: np.ndarray | None, off: float, sweeps: int) -> EigResult:
    diag = np.diag(a).copy()
    order = np.argsort(-diag, kind="stable")
    values = diag[order]
    vecs = v[:, order] if v is not None else None
    return EigResult(values=values, vectors=vecs, off_residual=off, sweeps=sweeps)


def eig_symmetric(matrix: SymmetricMatrix | np.ndarray, vectors: bool = True) -> EigResult:
    """Full spectrum of a symmetric matrix, eigenvalues sorted descending."""
    a = matrix.array if isinstance(matrix, SymmetricMatrix) else np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    if float(np.abs(a - a.T).max()) > 1e-9 * scale:
        raise ValueError("matrix is not symmetric")
    return jacobi_eigh(0.5 * (a + a.T), vectors=vectors)
