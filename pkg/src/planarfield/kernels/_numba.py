"""numba kernels.  Entries are int64 residues; sums are reduced before they
can overflow, so any p < 2**31 is safe."""

import numpy as np
from numba import njit


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a is nonzero mod p
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def matmul(A, B, p):
    n, m = A.shape
    k = B.shape[1]
    out = np.zeros((n, k), dtype=np.int64)
    # number of raw products that fit in int64 before a reduction is due
    room = (np.iinfo(np.int64).max - p) // ((p - 1) * (p - 1) + 1)
    for i in range(n):
        pending = 0
        for t in range(m):
            a = A[i, t]
            if a == 0:
                continue
            for j in range(k):
                out[i, j] += a * B[t, j]
            pending += 1
            if pending >= room:
                for j in range(k):
                    out[i, j] %= p
                pending = 0
        for j in range(k):
            out[i, j] %= p
    return out


@njit(cache=True)
def matvec(A, v, p):
    n, m = A.shape
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        acc = 0
        for t in range(m):
            acc = (acc + A[i, t] * v[t]) % p
        out[i] = acc
    return out


@njit(cache=True)
def rref(M, p):
    R = M.copy() % p
    rows, cols = R.shape
    pivots = np.zeros(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = R[r, j]
                R[r, j] = R[k, j]
                R[k, j] = tmp
        inv = _inv_mod(R[r, c], p)
        for j in range(c, cols):
            R[r, j] = (R[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = R[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                R[i, j] = (R[i, j] - f * R[r, j]) % p
        pivots[r] = c
        r += 1
    return R, pivots, r


@njit(cache=True)
def _inverse_into(A, p, out):
    n = A.shape[0]
    W = np.zeros((n, 2 * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            W[i, j] = A[i, j] % p
        W[i, n + i] = 1
    rank = 0
    singular = False
    for c in range(n):
        k = -1
        for i in range(rank, n):
            if W[i, c] != 0:
                k = i
                break
        if k < 0:
            singular = True
            continue
        if k != rank:
            for j in range(2 * n):
                tmp = W[rank, j]
                W[rank, j] = W[k, j]
                W[k, j] = tmp
        inv = _inv_mod(W[rank, c], p)
        for j in range(2 * n):
            W[rank, j] = (W[rank, j] * inv) % p
        for i in range(n):
            if i == rank:
                continue
            f = W[i, c]
            if f == 0:
                continue
            for j in range(2 * n):
                W[i, j] = (W[i, j] - f * W[rank, j]) % p
        rank += 1
    if singular:
        return rank
    for i in range(n):
        for j in range(n):
            out[i, j] = W[i, n + j]
    return n


@njit(cache=True)
def inverse(A, p):
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    r = _inverse_into(A, p, out)
    if r < n:
        out[:, :] = 0
    return out, r


@njit(cache=True)
def batch_inverse(Ms, p):
    N, n, _ = Ms.shape
    out = np.zeros_like(Ms)
    ok = np.zeros(N, dtype=np.bool_)
    buf = np.zeros((n, n), dtype=np.int64)
    for i in range(N):
        r = _inverse_into(Ms[i], p, buf)
        if r == n:
            out[i] = buf
            ok[i] = True
    return out, ok


@njit(cache=True)
def _reduce_against(w, rows, piv, count, p):
    n = w.shape[0]
    for t in range(count):
        f = w[piv[t]]
        if f != 0:
            for j in range(n):
                w[j] = (w[j] - f * rows[t, j]) % p


@njit(cache=True)
def local_minpolys(A, p):
    n = A.shape[0]
    polys = np.zeros((n, n + 1), dtype=np.int64)
    degs = np.zeros(n, dtype=np.int64)
    count = 0
    G = np.zeros((n, n), dtype=np.int64)
    gpiv = np.zeros(n, dtype=np.int64)
    gcount = 0
    R = np.zeros((n + 1, n), dtype=np.int64)
    C = np.zeros((n + 1, n + 1), dtype=np.int64)
    piv = np.zeros(n + 1, dtype=np.int64)
    w = np.zeros(n, dtype=np.int64)
    for i in range(n):
        w[:] = 0
        w[i] = 1
        _reduce_against(w, G, gpiv, gcount, p)
        nonzero = False
        for j in range(n):
            if w[j] != 0:
                nonzero = True
                break
        if not nonzero:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        r = np.zeros(n, dtype=np.int64)
        c = np.zeros(n + 1, dtype=np.int64)
        for j in range(n + 1):
            r[:] = v
            c[:] = 0
            c[j] = 1
            for t in range(j):
                f = r[piv[t]]
                if f != 0:
                    for s in range(n):
                        r[s] = (r[s] - f * R[t, s]) % p
                    for s in range(j + 1):
                        c[s] = (c[s] - f * C[t, s]) % p
            pc = -1
            for s in range(n):
                if r[s] != 0:
                    pc = s
                    break
            if pc < 0:
                for s in range(j + 1):
                    polys[count, s] = c[s]
                degs[count] = j
                count += 1
                break
            inv = _inv_mod(r[pc], p)
            for s in range(n):
                R[j, s] = (r[s] * inv) % p
            for s in range(n + 1):
                C[j, s] = (c[s] * inv) % p
            piv[j] = pc
            w[:] = v
            _reduce_against(w, G, gpiv, gcount, p)
            gz = -1
            for s in range(n):
                if w[s] != 0:
                    gz = s
                    break
            if gz >= 0:
                gi = _inv_mod(w[gz], p)
                for s in range(n):
                    G[gcount, s] = (w[s] * gi) % p
                gpiv[gcount] = gz
                gcount += 1
            v = matvec(A, v, p)
        if degs[count - 1] == n:
            break
    return polys, degs, count


@njit(cache=True)
def encode_keys(Ms, p):
    N = Ms.shape[0]
    n = Ms.shape[1]
    keys = np.zeros(N, dtype=np.int64)
    for a in range(N):
        k = 0
        for i in range(n):
            for j in range(n):
                k = k * p + Ms[a, i, j]
        keys[a] = k
    return keys


@njit(cache=True)
def decode_keys(keys, p, n):
    N = keys.shape[0]
    out = np.zeros((N, n, n), dtype=np.int64)
    for a in range(N):
        k = keys[a]
        for idx in range(n * n - 1, -1, -1):
            out[a, idx // n, idx % n] = k % p
            k //= p
    return out


@njit(cache=True)
def quotient_keys(D, Yinv, p):
    N, n, _ = D.shape
    K = Yinv.shape[0]
    out = np.empty(N * K, dtype=np.int64)
    prod = np.zeros((n, n), dtype=np.int64)
    for b in range(K):
        Y = Yinv[b]
        for a in range(N):
            X = D[a]
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for t in range(n):
                        acc = (acc + X[i, t] * Y[t, j]) % p
                    prod[i, j] = acc
            k = 0
            for i in range(n):
                for j in range(n):
                    k = k * p + prod[i, j]
            out[b * N + a] = k
    return out
