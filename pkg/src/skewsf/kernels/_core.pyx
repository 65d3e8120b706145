# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: encoded-addition closures, table construction, and the
packed GF(2) spread-set scan.  Signatures match `_ref`."""

import numpy as np

from skewsf.kernels._ref import digit_add_vec, gf2_mat_inv, gf2_mat_mul

IMPL_NAME = "compiled"


cdef inline unsigned int _add_enc(unsigned int a, unsigned int b, int p) noexcept nogil:
    cdef unsigned int out = 0
    cdef unsigned int shift = 1
    if p == 2:
        return a ^ b
    while a or b:
        out += ((a % p + b % p) % p) * shift
        a //= p
        b //= p
        shift *= p
    return out


def lin_closure(seed, int p, int m):
    """Images of all p**m encodings under the additive map with basis images seed."""
    cdef long N = p ** m
    out_arr = np.zeros(N, dtype=np.uint16)
    seeds_arr = np.ascontiguousarray(np.asarray(seed, dtype=np.uint16))
    cdef unsigned short[:] out = out_arr
    cdef unsigned short[:] s = seeds_arr
    cdef long step = 1
    cdef long k, c, base, r, idx
    with nogil:
        for k in range(m):
            base = 0
            while base < N:
                for c in range(1, p):
                    for r in range(step):
                        idx = base + c * step + r
                        out[idx] = <unsigned short> _add_enc(out[idx - step], s[k], p)
                base += step * p
            step *= p
    return out_arr


def mul_table(B, int p, int m):
    """Full N x N multiplication table from basis products B[i][j] = e_i * e_j."""
    cdef long N = p ** m
    Bar = np.asarray(B, dtype=np.uint16)
    rows_arr = np.zeros((m, N), dtype=np.uint16)
    cdef long k
    for k in range(m):
        rows_arr[k] = lin_closure(Bar[k], p, m)
    T_arr = np.zeros((N, N), dtype=np.uint16)
    cdef unsigned short[:, :] T = T_arr
    cdef unsigned short[:, :] rows = rows_arr
    cdef long step = 1
    cdef long c, base, r, idx, y
    with nogil:
        for k in range(m):
            base = 0
            while base < N:
                for c in range(1, p):
                    for r in range(step):
                        idx = base + c * step + r
                        for y in range(N):
                            T[idx, y] = <unsigned short> _add_enc(T[idx - step, y], rows[k, y], p)
                base += step * p
            step *= p
    return T_arr


cdef inline unsigned long long _mm(
    unsigned long long a, unsigned long long b, int nd, unsigned long long mask
) noexcept nogil:
    cdef unsigned long long out = 0
    cdef unsigned long long acc, arow
    cdef int r, j
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


cdef inline int _minv(
    unsigned long long a, int nd, unsigned long long mask, unsigned long long* res
) noexcept nogil:
    cdef unsigned long long rows[8]
    cdef unsigned long long aug[8]
    cdef int r, c, piv
    cdef unsigned long long tmp
    for r in range(nd):
        rows[r] = (a >> (r * nd)) & mask
        aug[r] = 1ULL << r
    for c in range(nd):
        piv = -1
        for r in range(c, nd):
            if (rows[r] >> c) & 1:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            tmp = rows[c]; rows[c] = rows[piv]; rows[piv] = tmp
            tmp = aug[c]; aug[c] = aug[piv]; aug[piv] = tmp
        for r in range(nd):
            if r != c and ((rows[r] >> c) & 1):
                rows[r] ^= rows[c]
                aug[r] ^= aug[c]
    res[0] = 0
    for r in range(nd):
        res[0] |= aug[r] << (r * nd)
    return 1


def spreadset_chunk_gf2(src, dst, int nd, long h_lo, long h_hi):
    """First witness (h, dst_index) in the packed-candidate range, or None."""
    src_arr = np.ascontiguousarray(np.asarray(src, dtype=np.uint64))
    dst_arr = np.ascontiguousarray(np.asarray(dst, dtype=np.uint64))
    cdef unsigned long long[:] sv = src_arr
    cdef unsigned long long[:] dv = dst_arr
    cdef int ns = src_arr.shape[0]
    cdef int ndst = dst_arr.shape[0]
    cdef int bits = nd * nd
    cdef unsigned char[:] member
    member_arr = None
    sorted_arr = None
    cdef unsigned long long[:] sorted_dst
    cdef bint use_table = bits <= 24
    if use_table:
        member_arr = np.zeros(1 << bits, dtype=np.uint8)
        for x in dst:
            member_arr[x] = 1
        member = member_arr
        sorted_arr = np.empty(0, dtype=np.uint64)
    else:
        sorted_arr = np.sort(dst_arr)
        member_arr = np.empty(0, dtype=np.uint8)
        member = member_arr
    sorted_dst = sorted_arr
    cdef unsigned long long mask = (1ULL << nd) - 1
    cdef unsigned long long conj[256]
    if ns > 256:
        raise ValueError("spread set too large for the compiled scan")
    cdef long h
    cdef long found_h = -1
    cdef int found_b = -1
    cdef int ai, bi, ok
    cdef unsigned long long hinv, prod
    cdef long lo, hi, mid
    with nogil:
        for h in range(h_lo, h_hi):
            if not _minv(<unsigned long long> h, nd, mask, &hinv):
                continue
            for ai in range(ns):
                conj[ai] = _mm(_mm(<unsigned long long> h, sv[ai], nd, mask), hinv, nd, mask)
            for bi in range(ndst):
                ok = 1
                for ai in range(ns):
                    prod = _mm(conj[ai], dv[bi], nd, mask)
                    if use_table:
                        if member[prod] == 0:
                            ok = 0
                            break
                    else:
                        lo = 0
                        hi = ndst
                        while lo < hi:
                            mid = (lo + hi) // 2
                            if sorted_dst[mid] < prod:
                                lo = mid + 1
                            else:
                                hi = mid
                        if lo >= ndst or sorted_dst[lo] != prod:
                            ok = 0
                            break
                if ok:
                    found_h = h
                    found_b = bi
                    break
            if found_h >= 0:
                break
    if found_h < 0:
        return None
    return int(found_h), int(found_b)
