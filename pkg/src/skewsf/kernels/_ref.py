"""Reference kernels: numpy vectorized closures plus a plain-Python GF(2) search.

Every function here has a compiled twin in `_core.pyx` with the same
signature; `skewsf.kernels` picks one at import time.
"""

from __future__ import annotations

import numpy as np

IMPL_NAME = "reference"


def digit_add_vec(a, b, p: int, m: int):
    """Carry-free base-p addition, elementwise over numpy arrays."""
    if p == 2:
        return (a ^ b).astype(np.uint16, copy=False)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    shift = 1
    for _ in range(m):
        out += ((a // shift + b // shift) % p) * shift
        shift *= p
    return out.astype(np.uint16)


def lin_closure(seed, p: int, m: int):
    """Images of all p**m encodings under the additive map with basis images `seed`.

    seed[k] is the image of the encoding p**k; the result array R satisfies
    R[x] = sum over base-p digits of x of digit_k(x) * seed[k], the sum taken
    as carry-free encoded addition.
    """
    N = p**m
    out = np.zeros(N, dtype=np.uint16)
    step = 1
    for k in range(m):
        v = out.reshape(-1, p, step)
        s = int(seed[k])
        for c in range(1, p):
            v[:, c, :] = digit_add_vec(v[:, c - 1, :], np.uint16(s), p, m)
        step *= p
    return out


def mul_table(B, p: int, m: int):
    """Full N x N multiplication table from basis products B[i][j] = e_i * e_j."""
    N = p**m
    Bar = np.asarray(B, dtype=np.uint16)
    rows = [lin_closure(Bar[k], p, m) for k in range(m)]
    T = np.zeros((N, N), dtype=np.uint16)
    step = 1
    for k in range(m):
        v = T.reshape(-1, p, step, N)
        rk = rows[k][None, None, :]
        for c in range(1, p):
            v[:, c, :, :] = digit_add_vec(v[:, c - 1, :, :], rk, p, m)
        step *= p
    return T


# -- packed GF(2) matrices -------------------------------------------------
# An nd x nd matrix over GF(2) is packed row-major into an int: bit r*nd+c is
# entry (r, c).  Used by the exhaustive spread-set search at order 16.


def gf2_mat_mul(a: int, b: int, nd: int) -> int:
    mask = (1 << nd) - 1
    out = 0
    for r in range(nd):
        arow = (a >> (r * nd)) & mask
        acc = 0
        j = 0
        while arow:
            if arow & 1:
                acc ^= (b >> (j * nd)) & mask
            arow >>= 1
            j += 1
        out |= acc << (r * nd)
    return out


def gf2_mat_inv(a: int, nd: int):
    """Inverse of a packed GF(2) matrix, or None when singular."""
    mask = (1 << nd) - 1
    rows = [(a >> (r * nd)) & mask for r in range(nd)]
    aug = [1 << r for r in range(nd)]
    for c in range(nd):
        piv = None
        for r in range(c, nd):
            if rows[r] >> c & 1:
                piv = r
                break
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        aug[c], aug[piv] = aug[piv], aug[c]
        for r in range(nd):
            if r != c and rows[r] >> c & 1:
                rows[r] ^= rows[c]
                aug[r] ^= aug[c]
    out = 0
    for r in range(nd):
        out |= aug[r] << (r * nd)
    return out


def spreadset_chunk_gf2(src, dst, nd: int, h_lo: int, h_hi: int):
    """Scan packed candidates H in [h_lo, h_hi) for a spread-set equivalence.

    src and dst list the packed nonzero left-multiplication matrices of the
    two algebras in canonical element order.  Returns the first witness
    (h, dst_index) with {H L_a H^-1 L'_b} contained in dst, else None.
    """
    dst_set = frozenset(dst)
    for h in range(h_lo, h_hi):
        hinv = gf2_mat_inv(h, nd)
        if hinv is None:
            continue
        conj = [gf2_mat_mul(gf2_mat_mul(h, la, nd), hinv, nd) for la in src]
        for b_idx, lb in enumerate(dst):
            for ca in conj:
                if gf2_mat_mul(ca, lb, nd) not in dst_set:
                    break
            else:
                return h, b_idx
    return None
