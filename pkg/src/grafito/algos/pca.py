from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateInputError

# Sample-count threshold above which the sketch-based path takes over from
# deflated power iteration.
RANDOMIZED_THRESHOLD = 500
_OVERSAMPLING = 10
_POWER_PASSES = 2


@dataclass
class PcaResult:
    components: np.ndarray          # d x k, orthonormal columns
    explained_variance: np.ndarray  # k eigenvalues of the covariance
    explained_variance_ratio: np.ndarray
    projected: np.ndarray           # n x k
    method: str                     # "randomized" | "power"
    iterations: int
    degenerate: bool = False


def pca(data: np.ndarray, k: int, seed: int = 0) -> PcaResult:
    """Principal components of a data matrix (rows = samples).

    Data is mean-centered internally. Above RANDOMIZED_THRESHOLD samples a
    randomized SVD runs (Gaussian sketch with oversampling, two
    orthonormalized power passes, exact factorization of the small matrix);
    otherwise deflated power iteration. The sign of each component is fixed
    so its largest-magnitude entry is positive.
    """
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2:
        raise DegenerateInputError("data must be a 2-D matrix")
    n, d = data.shape
    if n < 2:
        raise DegenerateInputError(f"need at least 2 samples, got {n}")
    if not 1 <= k <= min(n, d):
        raise ValueError(f"k must be in [1, {min(n, d)}], got {k}")

    centered = data - data.mean(axis=0)
    total_variance = float((centered ** 2).sum() / (n - 1))
    if total_variance == 0.0:
        # all rows identical: directions are arbitrary, flag it
        components = np.eye(d)[:, :k]
        zeros = np.zeros(k)
        return PcaResult(components, zeros, zeros, centered @ components,
                         method="degenerate", iterations=0, degenerate=True)

    if n > RANDOMIZED_THRESHOLD:
        components, variances, iters = _randomized(centered, k, seed)
        method = "randomized"
    else:
        components, variances, iters = _power_iteration(centered, k, seed)
        method = "power"

    components = _fix_signs(components)
    ratio = variances / total_variance
    return PcaResult(
        components=components,
        explained_variance=variances,
        explained_variance_ratio=ratio,
        projected=centered @ components,
        method=method,
        iterations=iters,
    )


def _randomized(centered: np.ndarray, k: int, seed: int) -> tuple[np.ndarray, np.ndarray, int]:
    n, d = centered.shape
    rng = np.random.default_rng(seed)
    sketch_size = min(d, k + _OVERSAMPLING)
    omega = rng.standard_normal((d, sketch_size))
    y = centered @ omega
    q, _ = np.linalg.qr(y)
    for _ in range(_POWER_PASSES):
        z, _ = np.linalg.qr(centered.T @ q)
        q, _ = np.linalg.qr(centered @ z)
    small = q.T @ centered  # sketch_size x d
    _, s, vt = np.linalg.svd(small, full_matrices=False)
    components = vt[:k].T
    variances = (s[:k] ** 2) / (n - 1)
    return components, variances, _POWER_PASSES


def _power_iteration(centered: np.ndarray, k: int, seed: int,
                     max_iter: int = 1000, tol: float = 1e-13) -> tuple[np.ndarray, np.ndarray, int]:
    """Deflated power iteration on the covariance operator."""
    n, d = centered.shape
    rng = np.random.default_rng(seed)
    components = np.zeros((d, k))
    variances = np.zeros(k)
    work = centered.copy()
    total_iters = 0
    for j in range(k):
        v = rng.standard_normal(d)
        # re-orthogonalize against found components for numerical safety
        for _ in range(max_iter):
            total_iters += 1
            w = work.T @ (work @ v)
            if j:
                w -= components[:, :j] @ (components[:, :j].T @ w)
            norm = np.linalg.norm(w)
            if norm == 0.0:
                break
            w /= norm
            if np.linalg.norm(w - v) < tol or np.linalg.norm(w + v) < tol:
                v = w
                break
            v = w
        if j:
            v -= components[:, :j] @ (components[:, :j].T @ v)
            norm = np.linalg.norm(v)
            if norm > 0:
                v /= norm
        components[:, j] = v
        score = work @ v
        variances[j] = float(score @ score) / (n - 1)
        work = work - np.outer(score, v)
    return components, variances, total_iters


def _fix_signs(components: np.ndarray) -> np.ndarray:
    out = components.copy()
    for j in range(out.shape[1]):
        idx = np.argmax(np.abs(out[:, j]))
        if out[idx, j] < 0:
            out[:, j] = -out[:, j]
    return out
