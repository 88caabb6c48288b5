"""Truncated SVD by power iteration with deflation, and the SVD embedding.

Each singular triplet is found by alternating u <- Av/|Av|, v <- A^T u/|.|
on the deflated residual, with Gram-Schmidt reorthogonalization against the
triplets already extracted; the residual is then deflated by sigma u v^T.
Convergence is judged by the backward residual |A^T u - sigma v|, which
stays sound when singular values cluster. Counts are damped with
log(1+count) before factorization, and the entity embedding is the
corresponding row of U_d sqrt(Sigma_d).
"""

import numpy as np

from .cooccur import CooccurrenceMatrix
from .table import EmbeddingTable


def _orthogonalize(vec, basis):
    # two Gram-Schmidt sweeps keep the basis orthonormal to machine precision
    for _ in range(2):
        for b in basis:
            vec = vec - (b @ vec) * b
    return vec


def _random_unit(rng, n, orthogonal_to):
    for _ in range(100):
        v = _orthogonalize(rng.standard_normal(n), orthogonal_to)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            return v / norm
    raise RuntimeError("could not draw a vector outside the extracted subspace")


def truncated_svd(matrix, d, max_iter=200000, tol=1e-12, seed=0):
    """Rank-d truncated SVD of a dense matrix.

    Returns (U, s, V) with U of shape (m, d), s nonincreasing, V of shape
    (n, d), and A ~= U @ diag(s) @ V.T. When the rank is exhausted the
    remaining singular values are zero and the vectors are padded with
    arbitrary orthonormal directions.
    """
    A = np.asarray(matrix, dtype=np.float64)
    m, n = A.shape
    if not 1 <= d <= min(m, n):
        raise ValueError(f"d={d} out of range for a {m}x{n} matrix")
    rng = np.random.Generator(np.random.PCG64(seed))
    residual = A.copy()
    floor = max(float(np.linalg.norm(A)), 1.0) * 1e-14
    us, vs, sigmas = [], [], []
    for _ in range(d):
        v = _random_unit(rng, n, vs)
        sigma, u = 0.0, None
        for _ in range(max_iter):
            av = residual @ v
            sigma = float(np.linalg.norm(av))
            if sigma <= floor:
                sigma = 0.0
                break
            u = av / sigma
            w = residual.T @ u
            err = float(np.linalg.norm(w - sigma * v))
            w = _orthogonalize(w, vs)
            norm_w = float(np.linalg.norm(w))
            if norm_w <= floor:
                break
            v = w / norm_w
            if err <= tol * sigma:
                break
        if sigma == 0.0 or u is None:
            sigmas.append(0.0)
            us.append(_random_unit(rng, m, us))
            v = _orthogonalize(v, vs)
            norm_v = float(np.linalg.norm(v))
            vs.append(v / norm_v if norm_v > 1e-8 else _random_unit(rng, n, vs))
        else:
            u = _orthogonalize(u, us)
            u = u / np.linalg.norm(u)
            sigma = float(u @ (residual @ v))
            residual = residual - sigma * np.outer(u, v)
            us.append(u)
            vs.append(v)
            sigmas.append(sigma)
    order = np.argsort(-np.asarray(sigmas), kind="stable")
    U = np.stack(us, axis=1)[:, order]
    V = np.stack(vs, axis=1)[:, order]
    s = np.asarray(sigmas)[order]
    return U, s, V


def svd_embed(matrix: CooccurrenceMatrix, d: int, seed: int = 0) -> EmbeddingTable:
    """Entity embeddings from the log-damped entity-word count matrix."""
    dense = np.log1p(matrix.to_dense())
    U, s, _V = truncated_svd(dense, d, seed=seed)
    return EmbeddingTable(matrix.row_labels, U * np.sqrt(s))
