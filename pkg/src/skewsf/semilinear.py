"""Semilinear transformations v -> A(v^sigma) and the companion correspondence.

A SemilinearMap acts on column vectors of K^d with the automorphism applied
coordinatewise before the matrix.  Irreducible maps generate semifields with
multiplication a*b = sum a_i T^i(b); for the companion map of f this agrees
elementwise with the residue construction S_f.
"""

from __future__ import annotations

import json
import random
from math import gcd

from . import linalg
from .errors import PreconditionError, StructuralError
from .fqpoly import CentralPoly
from .gf import FieldDesc
from .semifield import BilinearAlgebra
from .skewpoly import SkewPoly, SkewRing, is_irreducible


class SemilinearMap:
    """Pair (A, sigma_s) acting by v -> A(v^(q^sigma_s))."""

    __slots__ = ("desc", "sigma_s", "A")

    def __init__(self, desc: FieldDesc, sigma_s: int, A):
        self.desc = desc
        self.sigma_s = sigma_s % desc.n
        rows = tuple(tuple(int(desc.elem(x)) for x in row) for row in A)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise PreconditionError("matrix must be square")
        self.A = rows

    @property
    def d(self) -> int:
        return len(self.A)

    def apply(self, v) -> tuple[int, ...]:
        if len(v) != self.d:
            raise PreconditionError("vector dimension mismatch")
        desc = self.desc
        vs = [desc.qfrob(int(x), self.sigma_s) for x in v]
        return tuple(linalg.mat_vec(desc.K, self.A, vs))

    def is_invertible(self) -> bool:
        return linalg.inverse(self.desc.K, [list(r) for r in self.A]) is not None

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """self after other."""
        if self.desc is not other.desc or self.d != other.d:
            raise PreconditionError("incompatible maps")
        desc = self.desc
        tw = [[desc.qfrob(x, self.sigma_s) for x in row] for row in other.A]
        A = linalg.mat_mul(desc.K, [list(r) for r in self.A], tw)
        return SemilinearMap(desc, self.sigma_s + other.sigma_s, A)

    def inverse(self) -> "SemilinearMap":
        desc = self.desc
        Ainv = linalg.inverse(desc.K, [list(r) for r in self.A])
        if Ainv is None:
            raise PreconditionError("singular matrix has no inverse")
        s = (-self.sigma_s) % desc.n
        tw = [[desc.qfrob(x, -self.sigma_s) for x in row] for row in Ainv]
        return SemilinearMap(desc, s, tw)

    def __pow__(self, k: int) -> "SemilinearMap":
        if k < 0:
            return self.inverse() ** (-k)
        out = SemilinearMap(self.desc, 0, linalg.identity(self.desc.K, self.d))
        cur = self
        while k:
            if k & 1:
                out = cur.compose(out)
            cur = cur.compose(cur)
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearMap)
            and self.desc is other.desc
            and self.sigma_s == other.sigma_s
            and self.A == other.A
        )

    def __hash__(self):
        return hash((id(self.desc), self.sigma_s, self.A))

    def to_json(self) -> dict:
        return {"A": [c for row in self.A for c in row], "sigma_s": self.sigma_s}

    @staticmethod
    def from_json(desc: FieldDesc, doc) -> "SemilinearMap":
        if isinstance(doc, str):
            doc = json.loads(doc)
        flat = doc["A"]
        d = round(len(flat) ** 0.5)
        if d * d != len(flat):
            raise PreconditionError("matrix payload is not square")
        rows = [flat[i * d : (i + 1) * d] for i in range(d)]
        return SemilinearMap(desc, doc["sigma_s"], rows)

    def __repr__(self):
        return f"SemilinearMap(d={self.d}, sigma_s={self.sigma_s})"


def apply(T: SemilinearMap, v) -> tuple[int, ...]:
    return T.apply(v)


def companion_of(f: SkewPoly) -> SemilinearMap:
    """The companion map A_f of a monic f, realizing left multiplication by t.

    Writing f = t^d - sum f_i t^i, the matrix has subdiagonal ones and last
    column (f_0, ..., f_(d-1)); applying it to the coordinate vector of b
    gives t*b mod_r f.
    """
    if f.ring.has_derivation():
        raise PreconditionError("companion maps live over zero-derivation rings")
    if not f.is_monic():
        raise PreconditionError("companion form needs a monic polynomial")
    ring = f.ring
    K = ring.K
    d = f.degree
    A = [[0] * d for _ in range(d)]
    for r in range(d):
        if r >= 1:
            A[r][r - 1] = 1
        A[r][d - 1] = K.neg(f.coeffs[r])
    return SemilinearMap(ring.field, ring.sigma_s, A)


def vec_encode(desc: FieldDesc, v) -> int:
    Q = desc.order
    return sum(int(x) * Q**i for i, x in enumerate(v))


def vec_decode(desc: FieldDesc, enc: int, d: int) -> tuple[int, ...]:
    Q = desc.order
    return tuple((enc // Q**i) % Q for i in range(d))


def _krylov_span(T: SemilinearMap, v):
    """F-dimension over K of span{v, Tv, ..., T^(d-1)v} plus the vectors."""
    K = T.desc.K
    sb = linalg.SpanBuilder(K, T.d)
    vecs = [tuple(v)]
    for _ in range(T.d - 1):
        vecs.append(T.apply(vecs[-1]))
    for w in vecs:
        sb.add(list(w))
    return len(sb), vecs


def is_irreducible_semilinear(T: SemilinearMap) -> bool:
    """True when no nonzero vector generates a proper T-invariant subspace.

    Scans one representative per projective point; Krylov closures of scalar
    multiples coincide.
    """
    if not T.is_invertible():
        raise PreconditionError("irreducibility is defined for invertible maps")
    if T.d == 1:
        return True
    desc = T.desc
    Q = desc.order
    for enc in range(1, Q**T.d):
        v = vec_decode(desc, enc, T.d)
        lead = next(x for x in v if x)
        if lead != 1:
            continue
        dim, _ = _krylov_span(T, v)
        if dim < T.d:
            return False
    return True


def cyclic_mul(T: SemilinearMap, a, b, basis=None) -> tuple[int, ...]:
    """Jha-Johnson product a*b = sum a_i T^i(b), coefficients of a in `basis`.

    With the standard basis and T the companion of f this is exactly the
    S_f product on coordinate vectors.  The construction has an identity
    precisely when the basis is the T-Krylov chain of its first vector.
    """
    desc = T.desc
    K = desc.K
    d = T.d
    if basis is None:
        coords = [int(x) for x in a]
    else:
        cols = [list(w) for w in basis]
        mat = [[cols[c][r] for c in range(d)] for r in range(d)]
        coords = linalg.solve(K, mat, [int(x) for x in a])
        if coords is None:
            raise PreconditionError("basis does not span")
    acc = [0] * d
    w = tuple(int(x) for x in b)
    for i in range(d):
        c = coords[i]
        if c:
            for j in range(d):
                acc[j] = K.add(acc[j], K.mul(c, w[j]))
        if i < d - 1:
            w = T.apply(w)
    return tuple(acc)


class CyclicAlgebra(BilinearAlgebra):
    """S_T on encoded coordinate vectors, for table-level comparisons."""

    def __init__(self, T: SemilinearMap, basis=None):
        super().__init__()
        self.T = T
        self.basis = basis
        desc = T.desc
        self.p = desc.p
        self.m = desc.h * desc.n * T.d
        self.order = desc.order**T.d
        first = basis[0] if basis else (1,) + (0,) * (T.d - 1)
        self.one_enc = vec_encode(desc, first)

    def mul_enc(self, x: int, y: int) -> int:
        desc = self.T.desc
        a = vec_decode(desc, x, self.T.d)
        b = vec_decode(desc, y, self.T.d)
        return vec_encode(desc, cyclic_mul(self.T, a, b, self.basis))


def conjugate(U: SemilinearMap, phi: SemilinearMap) -> SemilinearMap:
    """phi^-1 U phi."""
    return phi.inverse().compose(U).compose(phi)


def conjugate_to_companion(T: SemilinearMap, ring: SkewRing | None = None):
    """An invertible K-linear phi and irreducible f with T phi = phi L_(t,f).

    phi sends t^i to T^i v for the first nonzero vector v in enumeration
    order; the last Krylov step determines f.
    """
    desc = T.desc
    if ring is None:
        ring = SkewRing(desc, T.sigma_s)
    elif ring.field is not desc or ring.sigma_s != T.sigma_s:
        raise PreconditionError("ring does not match the map")
    K = desc.K
    d = T.d
    v = (1,) + (0,) * (d - 1)
    dim, vecs = _krylov_span(T, v)
    if dim < d:
        raise PreconditionError("T is reducible: the first Krylov closure is proper")
    wd = T.apply(vecs[-1])
    phi = [[vecs[c][r] for c in range(d)] for r in range(d)]
    x = linalg.solve(K, phi, list(wd))
    if x is None:  # pragma: no cover
        raise StructuralError("full Krylov basis failed to solve")
    f = SkewPoly(ring, tuple(K.neg(c) for c in x) + (1,))
    if not is_irreducible(f):
        raise PreconditionError("T is reducible: recovered polynomial factors")
    # T phi = phi L_(t,f) as the matrix identity A_T phi^sigma = phi A_f
    Af = companion_of(f).A
    lhs = linalg.mat_mul(K, [list(r) for r in T.A], [[desc.qfrob(c, T.sigma_s) for c in row] for row in phi])
    rhs = linalg.mat_mul(K, phi, [list(r) for r in Af])
    if lhs != rhs:
        raise StructuralError("conjugation identity T phi = phi L_(t,f) failed")
    return tuple(tuple(r) for r in phi), f


def min_poly_T_pow_n(T: SemilinearMap) -> CentralPoly:
    """Minimal polynomial over F_q of the F_q-linear map T^n.

    Krylov chains from every F_q basis vector, combined by lcm.  For T
    conjugate to a companion L_(t,f) this equals mzlm(f) read in y.
    """
    desc = T.desc
    n = desc.n
    if gcd(T.sigma_s, n) != 1:
        raise PreconditionError("sigma must generate Gal(K/F_q)")
    U = T**n
    if U.sigma_s != 0:  # pragma: no cover
        raise StructuralError("T^n is not K-linear")
    d = T.d
    dim = n * d
    Fq = desc.Fq
    q = desc.q

    def flatten(v):
        out = []
        for x in v:
            out.extend(desc.coeffs_of(int(x)))
        return out

    # F_q matrix of U on the flattened space
    cols = []
    for b in range(dim):
        i, j = divmod(b, n)
        v = [0] * d
        v[i] = q**j
        cols.append(flatten(U.apply(v)))
    M = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    result = CentralPoly(q, (1,))
    y = CentralPoly(q, (0, 1))
    for b in range(dim):
        sb = linalg.SpanBuilder(Fq, dim)
        w = [Fq.one if r == b else 0 for r in range(dim)]
        mu = None
        for _ in range(dim + 1):
            coords = sb.coords_of(w)
            if coords is not None:
                mu = CentralPoly(q, tuple(Fq.neg(c) for c in coords) + (1,))
                break
            sb.add(w)
            w = linalg.mat_vec(Fq, M, w)
        if mu is None:  # pragma: no cover
            raise StructuralError("Krylov chain found no dependence")
        result = result.lcm(mu)
        if result.degree == dim:
            break
    return result


def conjugacy_test(T: SemilinearMap, U: SemilinearMap, group: str = "GL") -> bool:
    """Conjugacy of irreducible maps in GL(d,K) or GammaL(d,K).

    GL-conjugacy holds iff T^n and U^n share their minimal polynomial over
    F_q; GammaL allows the polynomial to move under Aut(F_q).
    """
    if T.desc is not U.desc or T.d != U.d or T.sigma_s != U.sigma_s:
        raise PreconditionError("incompatible parameters")
    if not (is_irreducible_semilinear(T) and is_irreducible_semilinear(U)):
        raise PreconditionError("conjugacy criterion needs irreducible maps")
    mt = min_poly_T_pow_n(T)
    mu = min_poly_T_pow_n(U)
    if group == "GL":
        return mt == mu
    if group == "GammaL":
        return any(mt.pfrob(j) == mu for j in range(T.desc.h))
    raise PreconditionError(f"unknown group {group!r}")


def random_invertible_matrix(desc: FieldDesc, d: int, rng: random.Random):
    while True:
        A = [[rng.randrange(desc.order) for _ in range(d)] for _ in range(d)]
        if linalg.inverse(desc.K, A) is not None:
            return A


def random_semilinear(desc: FieldDesc, sigma_s: int, d: int, rng: random.Random) -> SemilinearMap:
    return SemilinearMap(desc, sigma_s, random_invertible_matrix(desc, d, rng))


def random_irreducible_semilinear(
    desc: FieldDesc, sigma_s: int, d: int, rng: random.Random
) -> SemilinearMap:
    while True:
        T = random_semilinear(desc, sigma_s, d, rng)
        if is_irreducible_semilinear(T):
            return T
