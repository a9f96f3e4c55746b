"""Symplectic linear algebra on the (q_1..q_N, p_1..p_N) phase space.

Conventions: the vacuum covariance matrix is the identity, and the
symplectic form is ``J = [[0, I], [-I, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PAIRING_TOL = 1e-8
CLAMP_TOL = 1e-9


class UnphysicalStateError(ValueError):
    """Raised when a covariance matrix violates the uncertainty relation."""


def symplectic_form(n: int) -> np.ndarray:
    """Return the ``2n x 2n`` symplectic form ``[[0, I], [-I, 0]]``."""
    if n < 1:
        raise ValueError(f"mode count must be positive, got {n}")
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _check_square_even(sigma: np.ndarray) -> int:
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise ValueError(f"expected a square even-dimensional matrix, got shape {sigma.shape}")
    return sigma.shape[0] // 2


def is_symmetric(sigma: np.ndarray, rtol: float = 1e-12) -> bool:
    scale = max(np.max(np.abs(sigma)), 1.0)
    return bool(np.max(np.abs(sigma - sigma.T)) <= rtol * scale)


def _noise_floor(scale: float) -> float:
    """Attainable absolute accuracy of ``nu`` for a covariance with ``max sigma_ii = scale``.

    Rounding in an orthogonal/symplectic transform is amplified by the
    largest variance, so squeezed states cannot resolve ``nu`` better than
    ``~eps * scale``.
    """
    return 100.0 * np.finfo(float).eps * max(1.0, scale)


def _pair_spectrum(evals: np.ndarray, n: int, floor: float) -> np.ndarray:
    """Group the ascending spectrum ``(-nu.., +nu..)`` into N moduli."""
    neg = -evals[:n][::-1]
    pos = evals[n:]
    allowed = PAIRING_TOL * np.maximum(1.0, np.abs(pos)) + floor
    if np.any(np.abs(pos - neg) > allowed):
        raise ValueError("eigenvalues of iJ sigma do not form +/- pairs; malformed input")
    return 0.5 * (pos + neg)


def _clamp(nu: np.ndarray, tol: float) -> np.ndarray:
    """Round values within ``tol`` below 1 up to exactly 1."""
    nu = np.sort(nu)
    near = (nu < 1.0) & (nu >= 1.0 - tol)
    nu[near] = 1.0
    return nu


def symplectic_eigenvalues_from_factor(factor: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Symplectic eigenvalues of ``sigma = F F^T`` without forming sigma.

    A QR factorization of ``F^T`` yields a triangular ``R`` with
    ``sigma = R^T R`` computed in a backward-stable way, which keeps
    strongly squeezed states (entries ~e^{2 lambda}) accurate where a
    Cholesky of the assembled sigma would already have lost the small
    directions to rounding.
    """
    rows, cols = factor.shape
    if rows % 2 or cols < rows:
        raise ValueError(f"factor must be 2N x K with K >= 2N, got shape {factor.shape}")
    n = rows // 2
    r = np.linalg.qr(factor.T, mode="r")
    evals = np.linalg.eigvalsh(1j * (r @ symplectic_form(n) @ r.T))
    floor = _noise_floor(float(np.max(np.sum(factor**2, axis=1))))
    return _clamp(_pair_spectrum(evals, n, floor), max(tol, floor))


def symplectic_eigenvalues(sigma: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Symplectic eigenvalues of ``sigma``, sorted ascending.

    These are the moduli of the eigenvalues of ``iJ sigma``.  For positive
    definite input the spectrum is obtained from the Hermitian matrix
    ``i L^T J L`` (``sigma = L L^T``), which is similar to ``iJ sigma``;
    otherwise the non-Hermitian problem is solved directly.  Values within
    ``tol`` below 1 are clamped to 1; for strongly squeezed input the
    tolerance widens to the attainable accuracy ``~eps * max(sigma_ii)``.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = _check_square_even(sigma)
    j = symplectic_form(n)
    try:
        low = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        evals = np.linalg.eigvals(1j * (j @ sigma))
        if np.max(np.abs(evals.imag)) > PAIRING_TOL * max(1.0, np.max(np.abs(evals))):
            raise ValueError("iJ sigma has a complex spectrum; sigma is not a covariance matrix")
        evals = np.sort(evals.real)
    else:
        evals = np.linalg.eigvalsh(1j * (low.T @ j @ low))
    floor = _noise_floor(float(np.max(np.diag(sigma))))
    return _clamp(_pair_spectrum(evals, n, floor), max(tol, floor))


@dataclass(frozen=True)
class WilliamsonResult:
    S: np.ndarray
    nu: np.ndarray

    def reconstruct(self) -> np.ndarray:
        d = np.concatenate([self.nu, self.nu])
        return (self.S * d) @ self.S.T


def williamson(sigma: np.ndarray) -> WilliamsonResult:
    """Williamson normal form ``sigma = S diag(nu, nu) S^T``.

    ``K = sigma^{1/2} J sigma^{1/2}`` is real antisymmetric; the Hermitian
    eigenvectors of ``iK`` with negative eigenvalue ``-nu_k`` split as
    ``(e_k + i f_k)/sqrt(2)`` into orthonormal canonical pairs, giving an
    orthogonal ``O`` with ``O^T K O = [[0, D], [-D, 0]]``.  Then
    ``S = sigma^{1/2} O diag(nu, nu)^{-1/2}``.  Degenerate ``nu`` are handled
    because ``eigh`` returns an orthonormal basis of each eigenspace.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = _check_square_even(sigma)
    if not is_symmetric(sigma, 1e-10):
        raise ValueError("covariance matrix is not symmetric")
    w, v = np.linalg.eigh(0.5 * (sigma + sigma.T))
    if w[0] <= 0:
        raise UnphysicalStateError("covariance matrix is not positive definite")
    root = (v * np.sqrt(w)) @ v.T
    k = root @ symplectic_form(n) @ root
    evals, vecs = np.linalg.eigh(1j * k)
    # ascending: the first n eigenvalues are -nu in decreasing order of nu
    nu = -evals[:n][::-1]
    w_neg = vecs[:, :n][:, ::-1]
    e = np.sqrt(2.0) * w_neg.real
    f = np.sqrt(2.0) * w_neg.imag
    ortho = np.hstack([e, f])
    scale = 1.0 / np.sqrt(np.concatenate([nu, nu]))
    s = (root @ ortho) * scale
    return WilliamsonResult(S=s, nu=nu)


def is_valid_covariance(sigma: np.ndarray, tol: float = CLAMP_TOL) -> bool:
    """True iff ``sigma`` is symmetric and ``sigma + iJ >= 0``."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        return False
    if not is_symmetric(sigma):
        return False
    if np.linalg.eigvalsh(0.5 * (sigma + sigma.T))[0] <= 0:
        return False
    try:
        nu = symplectic_eigenvalues(sigma, tol)
    except ValueError:
        return False
    return bool(nu[0] >= 1.0 - tol)


def is_classical(sigma: np.ndarray, tol: float = CLAMP_TOL) -> bool:
    """True iff ``sigma - I >= 0``, i.e. a mixture of coherent states."""
    sigma = np.asarray(sigma, dtype=float)
    shifted = 0.5 * (sigma + sigma.T) - np.eye(sigma.shape[0])
    return bool(np.linalg.eigvalsh(shifted)[0] >= -tol)


def is_symplectic(s: np.ndarray, atol: float = 1e-10) -> bool:
    n = _check_square_even(s)
    j = symplectic_form(n)
    return bool(np.max(np.abs(s @ j @ s.T - j)) <= atol)
