"""Pure-numpy kernels.  Same signatures and results as ``_numba``."""

import numpy as np

_INT64_MAX = np.iinfo(np.int64).max


def _safe_matmul(A, B, p):
    inner = A.shape[-1]
    if inner * (p - 1) ** 2 < _INT64_MAX:
        return (A @ B) % p
    # accumulate one rank-1 term at a time to stay inside int64
    out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
    for k in range(inner):
        out = (out + (A[..., :, k:k + 1] * B[..., k:k + 1, :]) % p) % p
    return out


def matmul(A, B, p):
    return _safe_matmul(A, B, p)


def matvec(A, v, p):
    return _safe_matmul(A, v[:, None], p)[:, 0]


def rref(M, p):
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)``; ``pivots[:rank]`` are the pivot columns.
    """
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = np.zeros(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        f = R[:, c].copy()
        f[r] = 0
        nzr = np.nonzero(f)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - (f[nzr, None] * R[r]) % p) % p
        pivots[r] = c
        r += 1
    return R, pivots, r


def inverse(A, p):
    """Return ``(A^-1, rank)``; the first item is meaningless if rank < n."""
    n = A.shape[0]
    aug = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots, rank = rref(aug, p)
    if rank < n or pivots[n - 1] != n - 1:
        _, _, r = rref(A, p)
        return np.zeros((n, n), dtype=np.int64), r
    return R[:, n:].copy(), n


def batch_inverse(Ms, p):
    N, n, _ = Ms.shape
    out = np.zeros_like(Ms)
    ok = np.zeros(N, dtype=np.bool_)
    for i in range(N):
        inv, r = inverse(Ms[i], p)
        if r == n:
            out[i] = inv
            ok[i] = True
    return out, ok


def _reduce_against(w, rows, piv, count, p):
    for t in range(count):
        f = w[piv[t]]
        if f:
            w = (w - f * rows[t]) % p
    return w


def local_minpolys(A, p):
    """Krylov minimal polynomials of standard basis vectors.

    Basis vectors already inside the span of earlier Krylov spaces are
    skipped; their local polynomial divides the lcm of earlier ones.  Stops
    early once a local polynomial of degree n appears.  Returns
    ``(polys, degs, count)`` with ``polys[i, :degs[i] + 1]`` monic,
    constant first.
    """
    n = A.shape[0]
    polys = np.zeros((n, n + 1), dtype=np.int64)
    degs = np.zeros(n, dtype=np.int64)
    count = 0
    G = np.zeros((n, n), dtype=np.int64)
    gpiv = np.zeros(n, dtype=np.int64)
    gcount = 0
    for i in range(n):
        w = np.zeros(n, dtype=np.int64)
        w[i] = 1
        w = _reduce_against(w, G, gpiv, gcount, p)
        if not w.any():
            continue
        R = np.zeros((n + 1, n), dtype=np.int64)
        C = np.zeros((n + 1, n + 1), dtype=np.int64)
        piv = np.zeros(n + 1, dtype=np.int64)
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        for j in range(n + 1):
            r = v.copy()
            c = np.zeros(n + 1, dtype=np.int64)
            c[j] = 1
            for t in range(j):
                f = r[piv[t]]
                if f:
                    r = (r - f * R[t]) % p
                    c = (c - f * C[t]) % p
            nz = np.nonzero(r)[0]
            if nz.size == 0:
                polys[count, :j + 1] = c[:j + 1]
                degs[count] = j
                count += 1
                break
            pc = nz[0]
            inv = pow(int(r[pc]), p - 2, p)
            R[j] = (r * inv) % p
            C[j] = (c * inv) % p
            piv[j] = pc
            g = _reduce_against(v.copy(), G, gpiv, gcount, p)
            gz = np.nonzero(g)[0]
            if gz.size:
                gi = pow(int(g[gz[0]]), p - 2, p)
                G[gcount] = (g * gi) % p
                gpiv[gcount] = gz[0]
                gcount += 1
            v = matvec(A, v, p)
        if degs[count - 1] == n:
            break
    return polys, degs, count


def encode_keys(Ms, p):
    """Row-major base-p integer key per matrix; caller checks it fits."""
    N = Ms.shape[0]
    flat = Ms.reshape(N, Ms.shape[1] * Ms.shape[2])
    keys = np.zeros(N, dtype=np.int64)
    for j in range(flat.shape[1]):
        keys = keys * p + flat[:, j]
    return keys


def decode_keys(keys, p, n):
    keys = np.array(keys, dtype=np.int64)
    N = keys.shape[0]
    flat = np.zeros((N, n * n), dtype=np.int64)
    for j in range(n * n - 1, -1, -1):
        flat[:, j] = keys % p
        keys = keys // p
    return flat.reshape(N, n, n)


def quotient_keys(D, Yinv, p):
    """Keys of ``D[a] @ Yinv[b]`` for every pair, ``b`` major."""
    N, n, _ = D.shape
    K = Yinv.shape[0]
    out = np.empty(N * K, dtype=np.int64)
    for b in range(K):
        prod = _safe_matmul(D, Yinv[b], p)
        out[b * N:(b + 1) * N] = encode_keys(prod, p)
    return out
