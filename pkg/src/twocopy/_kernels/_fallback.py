"""Pure-numpy implementations of the hot per-sample kernels.

Used when the compiled extension is unavailable or when
``TWOCOPY_PURE_PYTHON=1`` is set. Same contracts as ``_core``.
"""

from __future__ import annotations

import string

import numpy as np


def _as_c128(mat: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(mat, dtype=np.complex128)


def purity(mat: np.ndarray) -> float:
    """Re Tr(mat @ mat) for a square matrix."""
    m = _as_c128(mat)
    return float(np.einsum("ij,ji->", m, m).real)


def partial_trace(mat: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Trace out every tensor factor not in ``keep`` (0-based, sorted).

    ``mat`` is a D x D matrix over the tensor product of ``dims`` with
    factor 0 most significant.
    """
    m = _as_c128(mat)
    n = len(dims)
    t = m.reshape(dims + dims)
    letters = string.ascii_lowercase
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(letters[n + i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    dk = int(np.prod([dims[i] for i in keep], dtype=np.int64))
    return np.ascontiguousarray(reduced.reshape(dk, dk))


def reduced_purity(mat: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> float:
    """Re Tr(r @ r) where r is the partial trace of ``mat`` onto ``keep``."""
    return purity(partial_trace(mat, dims, keep))


def two_copy_expect(rho: np.ndarray, obs: np.ndarray) -> float:
    """Re Tr[(rho (x) rho) @ obs] without materializing the Kronecker product."""
    r = _as_c128(rho)
    d = r.shape[0]
    o = _as_c128(obs).reshape(d, d, d, d)
    return float(np.einsum("ca,db,abcd->", r, r, o).real)
