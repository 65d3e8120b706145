"""Semifields S_f built from residues of a skew polynomial ring.

Elements of S_f are the degree-<d residues, encoded as integers whose base-p
digits are the tower coordinates (coefficient index outermost).  Products are
F_p-bilinear, so exhaustive machinery runs on a basis-product matrix expanded
through the kernel closures; nuclei scans reduce the two universally
quantified arguments of the associator to basis vectors, which is exact by
additivity, and a literal cube scan is kept for small orders.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import PreconditionError, RingMismatchError, SizeBoundError, StructuralError
from .gf import SmallField, digit_add
from .skewpoly import (
    SkewPoly,
    anti_involution,
    apply_ring_automorphism,
    eigenring,
    is_central,
    is_irreducible,
)

DEFAULT_EXHAUSTIVE_BOUND = 2**12


class BilinearAlgebra:
    """Finite F_p-bilinear algebra with identity, on integer-encoded elements.

    Subclasses provide `mul_enc` and the basic parameters; everything
    exhaustive (tables, nuclei, axioms) is derived here.
    """

    p: int
    m: int  # number of base-p digits
    order: int
    one_enc: int

    def __init__(self):
        self._bp = None
        self._rows = None
        self._cols = None
        self._table = None

    def mul_enc(self, x: int, y: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def add_enc(self, x: int, y: int) -> int:
        return digit_add(x, y, self.p)

    def basis_encs(self) -> list[int]:
        return [self.p**k for k in range(self.m)]

    def basis_products(self):
        if self._bp is None:
            if self.order > 2**16:
                raise SizeBoundError(
                    f"order {self.order} exceeds the 2^16 limit of the exhaustive kernels"
                )
            basis = self.basis_encs()
            self._bp = np.array(
                [[self.mul_enc(a, b) for b in basis] for a in basis], dtype=np.uint16
            )
        return self._bp

    def _basis_rows(self):
        if self._rows is None:
            B = self.basis_products()
            self._rows = [kernels.lin_closure(B[k], self.p, self.m) for k in range(self.m)]
        return self._rows

    def _basis_cols(self):
        if self._cols is None:
            B = self.basis_products()
            self._cols = [kernels.lin_closure(B[:, j], self.p, self.m) for j in range(self.m)]
        return self._cols

    def row_of(self, x: int):
        """x * y over all y, as an array indexed by y."""
        cols = self._basis_cols()
        return kernels.lin_closure([int(c[x]) for c in cols], self.p, self.m)

    def col_of(self, y: int):
        rows = self._basis_rows()
        return kernels.lin_closure([int(r[y]) for r in rows], self.p, self.m)

    def table(self, bound: int = DEFAULT_EXHAUSTIVE_BOUND):
        """The full multiplication table (bounded; 2^12 keeps it at 32 MiB)."""
        if self.order > bound:
            raise SizeBoundError(f"order {self.order} exceeds table bound {bound}")
        if self._table is None:
            self._table = kernels.mul_table(self.basis_products(), self.p, self.m)
        return self._table

    # -- exhaustive structure ------------------------------------------

    def nucleus_scan(self, which: str):
        """Membership mask of a nucleus over every element.

        The associator is additive in each slot, so the two quantified slots
        range over basis vectors only; the candidate slot is exhaustive.
        """
        m = self.m
        rows = self._basis_rows()
        cols = self._basis_cols()
        B = self.basis_products()
        mask = np.ones(self.order, dtype=bool)
        if which == "right":
            rowcache = {}
            for i in range(m):
                for j in range(m):
                    bij = int(B[i, j])
                    if bij not in rowcache:
                        rowcache[bij] = self.row_of(bij)
                    mask &= rowcache[bij] == rows[i][rows[j]]
        elif which == "left":
            colcache = {}
            for j in range(m):
                for k in range(m):
                    bjk = int(B[j, k])
                    if bjk not in colcache:
                        colcache[bjk] = self.col_of(bjk)
                    mask &= colcache[bjk] == cols[k][cols[j]]
        elif which == "middle":
            for i in range(m):
                for k in range(m):
                    mask &= rows[i][cols[k]] == cols[k][rows[i]]
        elif which == "centre":
            for w in ("left", "middle", "right"):
                mask &= self.nucleus_scan(w)
            for k in range(m):
                mask &= cols[k] == rows[k]
        else:
            raise PreconditionError(f"unknown nucleus {which!r}")
        return mask

    def associativity_witness(self):
        """A basis triple (i, j, k) violating associativity, or None."""
        B = self.basis_products()
        basis = self.basis_encs()
        for i in range(self.m):
            for j in range(self.m):
                for k in range(self.m):
                    lhs = self.mul_enc(int(B[i, j]), basis[k])
                    rhs = self.mul_enc(basis[i], int(B[j, k]))
                    if lhs != rhs:
                        return basis[i], basis[j], basis[k]
        return None

    def is_associative(self) -> bool:
        return self.associativity_witness() is None

    def zero_divisor_witness(self):
        T = self.table()
        sub = T[1:, 1:]
        hits = np.argwhere(sub == 0)
        if len(hits):
            x, y = hits[0]
            return int(x) + 1, int(y) + 1
        return None

    def nuclei_sizes(self) -> tuple[int, int, int, int]:
        return (
            int(self.nucleus_scan("centre").sum()),
            int(self.nucleus_scan("left").sum()),
            int(self.nucleus_scan("middle").sum()),
            int(self.nucleus_scan("right").sum()),
        )

    def opposite(self) -> "OppositeAlgebra":
        return OppositeAlgebra(self)


class OppositeAlgebra(BilinearAlgebra):
    """Same elements, reversed multiplication."""

    def __init__(self, base: BilinearAlgebra):
        super().__init__()
        self.base = base
        self.p = base.p
        self.m = base.m
        self.order = base.order
        self.one_enc = base.one_enc

    def mul_enc(self, x: int, y: int) -> int:
        return self.base.mul_enc(y, x)


class FieldAlgebra(BilinearAlgebra):
    """A finite field presented through the algebra interface."""

    def __init__(self, field: SmallField):
        super().__init__()
        self.field = field
        self.p = field.p
        self.m = field.pdigits
        self.order = field.order
        self.one_enc = 1

    def mul_enc(self, x: int, y: int) -> int:
        return self.field.mul(x, y)


class Semifield(BilinearAlgebra):
    """S_f on degree-<d residues; side selects right or left division by f."""

    def __init__(self, f: SkewPoly, side: str = "right", check: bool = True):
        super().__init__()
        if f.ring.has_derivation():
            raise PreconditionError("semifields are built over zero-derivation rings")
        if f.is_zero() or f.degree < 1:
            raise PreconditionError("f must have positive degree")
        if side not in ("right", "left"):
            raise PreconditionError(f"unknown side {side!r}")
        f = f.monic()
        if check:
            if not is_irreducible(f):
                raise PreconditionError(f"{f} is reducible; S_f would have zero divisors")
            if is_central(f):
                raise StructuralError("irreducible central f cannot exist over a finite field")
        self.f = f
        self.ring = f.ring
        self.side = side
        self.d = f.degree
        desc = f.ring.field
        self.p = desc.p
        self.m = desc.h * desc.n * self.d
        self.order = desc.order**self.d
        self.one_enc = 1

    # -- multiplication -------------------------------------------------

    def mul(self, a: SkewPoly, b: SkewPoly) -> SkewPoly:
        if a.ring != self.ring or b.ring != self.ring:
            raise RingMismatchError("elements from a different ring")
        if a.degree >= self.d or b.degree >= self.d:
            raise PreconditionError(f"operand degree out of range (< {self.d})")
        prod = a * b
        return prod.mod_r(self.f) if self.side == "right" else prod.mod_l(self.f)

    def mul_enc(self, x: int, y: int) -> int:
        return self.mul(self.decode(x), self.decode(y)).encode(self.d)

    def encode(self, a: SkewPoly) -> int:
        return a.encode(self.d)

    def decode(self, enc: int) -> SkewPoly:
        return self.ring.elem_poly(enc, self.d)

    def elements(self):
        return (self.decode(e) for e in range(self.order))

    # -- theory ----------------------------------------------------------

    def theoretical_nucleus(self, which: str) -> tuple[int, ...]:
        """Predicted nucleus for the right-division construction."""
        if self.side != "right":
            raise PreconditionError("theoretical nuclei are stated for right division")
        desc = self.ring.field
        if which == "right":
            return eigenring(self.f).element_encodings()
        if which in ("left", "middle"):
            return tuple(range(desc.order))
        if which == "centre":
            return tuple(range(desc.q))
        raise PreconditionError(f"unknown nucleus {which!r}")

    def descriptor_json(self) -> dict:
        return {
            "field": self.ring.field.to_json(),
            "sigma_s": self.ring.sigma_s,
            "f": list(self.f.coeffs),
            "side": self.side,
        }

    def __repr__(self):
        return f"Semifield(order={self.order}, f={self.f}, side={self.side})"


# -- F_q coordinates and linear triples -------------------------------------


def _fq_params(S) -> tuple[int, int, int, int]:
    """(q, h, n, d) of the distinguished F_q-structure of the algebra."""
    if isinstance(S, Semifield):
        desc = S.ring.field
        return desc.q, desc.h, desc.n, S.d
    if isinstance(S, OppositeAlgebra):
        return _fq_params(S.base)
    if isinstance(S, FieldAlgebra):
        return S.p, 1, 1, S.m
    raise PreconditionError("no F_q structure known for this algebra")


def enc_to_fqvec(S, enc: int) -> list[int]:
    """F_q coordinates in the basis eps_j t^i, ordered b = j*d + i."""
    q, _, n, d = _fq_params(S)
    digits = [(enc // q**u) % q for u in range(n * d)]
    return [digits[i * n + j] for j in range(n) for i in range(d)]


def fqvec_to_enc(S, vec) -> int:
    q, _, n, d = _fq_params(S)
    enc = 0
    for b, c in enumerate(vec):
        j, i = divmod(b, d)
        enc += c * q ** (i * n + j)
    return enc


def spread_matrix(S, a_enc: int):
    """F_q matrix of left multiplication by a, in the triple basis convention."""
    q, _, n, d = _fq_params(S)
    nd = n * d
    cols = []
    for b in range(nd):
        j, i = divmod(b, d)
        basis_enc = q ** (i * n + j)
        cols.append(enc_to_fqvec(S, S.mul_enc(a_enc, basis_enc)))
    return [[cols[b][r] for b in range(nd)] for r in range(nd)]


def fq_matrix_images(S, M) -> np.ndarray:
    """Encoding-image array of the F_q-linear map given by matrix M."""
    q, h, n, d = _fq_params(S)
    Fq = S.ring.field.Fq if isinstance(S, Semifield) else None
    seeds = []
    for k in range(S.m):
        i, r = divmod(k, n * h)
        j, l = divmod(r, h)
        scalar = S.p**l  # the F_q encoding of p^l
        vec = [0] * (n * d)
        vec[j * d + i] = scalar
        if Fq is None:
            img = [(M[row][j * d + i] * scalar) % S.p for row in range(n * d)]
        else:
            img = [Fq.mul(M[row][j * d + i], scalar) for row in range(n * d)]
        seeds.append(fqvec_to_enc(S, img))
    return kernels.lin_closure(seeds, S.p, S.m)


def images_to_fq_matrix(S, images) -> list[list[int]]:
    """Recover the F_q matrix of an image array; fails if the map is not F_q-linear."""
    q, h, n, d = _fq_params(S)
    nd = n * d
    M = []
    cols = []
    for b in range(nd):
        j, i = divmod(b, d)
        basis_enc = q ** (i * n + j)
        cols.append(enc_to_fqvec(S, int(images[basis_enc])))
    M = [[cols[b][r] for b in range(nd)] for r in range(nd)]
    if not np.array_equal(fq_matrix_images(S, M), np.asarray(images, dtype=np.uint16)):
        raise PreconditionError("map is additive but not F_q-linear")
    return M


class LinearTriple:
    """Isotopism data (F, G, H): x^F *' y^G = (x*y)^H.

    The maps are stored as encoding-image arrays (always additive bijections);
    F_q matrices are recovered on demand for serialization.
    """

    __slots__ = ("f_img", "g_img", "h_img")

    def __init__(self, f_img, g_img, h_img):
        self.f_img = np.asarray(f_img, dtype=np.uint16)
        self.g_img = np.asarray(g_img, dtype=np.uint16)
        self.h_img = np.asarray(h_img, dtype=np.uint16)
        n = len(self.f_img)
        for img in (self.f_img, self.g_img, self.h_img):
            if len(img) != n or len(np.unique(img)) != n:
                raise PreconditionError("triple maps must be bijections")

    @staticmethod
    def identity(S) -> "LinearTriple":
        e = np.arange(S.order, dtype=np.uint16)
        return LinearTriple(e, e, e)

    @staticmethod
    def from_fq_matrices(S, F, G, H) -> "LinearTriple":
        return LinearTriple(
            fq_matrix_images(S, F), fq_matrix_images(S, G), fq_matrix_images(S, H)
        )

    def compose(self, other: "LinearTriple") -> "LinearTriple":
        """Apply self first, then other."""
        return LinearTriple(
            other.f_img[self.f_img], other.g_img[self.g_img], other.h_img[self.h_img]
        )

    def inverse(self) -> "LinearTriple":
        return LinearTriple(
            np.argsort(self.f_img), np.argsort(self.g_img), np.argsort(self.h_img)
        )

    def fq_matrices(self, S):
        return (
            images_to_fq_matrix(S, self.f_img),
            images_to_fq_matrix(S, self.g_img),
            images_to_fq_matrix(S, self.h_img),
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinearTriple)
            and np.array_equal(self.f_img, other.f_img)
            and np.array_equal(self.g_img, other.g_img)
            and np.array_equal(self.h_img, other.h_img)
        )


class AdditiveMap:
    """Additive bijection between two algebras, as an encoding-image array."""

    __slots__ = ("images", "src", "dst")

    def __init__(self, images, src, dst):
        self.images = np.asarray(images, dtype=np.uint16)
        if len(np.unique(self.images)) != len(self.images):
            raise PreconditionError("map is not a bijection")
        self.src = src
        self.dst = dst

    def __call__(self, x):
        if isinstance(x, SkewPoly):
            return self.dst.decode(int(self.images[self.src.encode(x)]))
        return int(self.images[int(x)])

    def triple(self) -> LinearTriple:
        return LinearTriple(self.images, self.images, self.images)

    def inverse(self) -> "AdditiveMap":
        return AdditiveMap(np.argsort(self.images), self.dst, self.src)


# -- operation-level API ------------------------------------------------------


def multiply(S: Semifield, a: SkewPoly, b: SkewPoly) -> SkewPoly:
    return S.mul(a, b)


@dataclass
class AxiomCheck:
    ok: bool
    witness: tuple | None = None
    note: str = ""


@dataclass
class AxiomReport:
    order: int
    exhaustive: bool
    s1: AxiomCheck
    s2: AxiomCheck
    s3: AxiomCheck
    s4: AxiomCheck

    @property
    def all_ok(self) -> bool:
        return self.s1.ok and self.s2.ok and self.s3.ok and self.s4.ok

    def to_json(self) -> dict:
        def enc(c):
            return {"ok": c.ok, "witness": list(c.witness) if c.witness else None, "note": c.note}

        return {
            "order": self.order,
            "exhaustive": self.exhaustive,
            "S1": enc(self.s1),
            "S2": enc(self.s2),
            "S3": enc(self.s3),
            "S4": enc(self.s4),
        }


def check_axioms(
    S: BilinearAlgebra,
    bound: int = DEFAULT_EXHAUSTIVE_BOUND,
    samples: int = 4096,
    seed: int = 0,
) -> AxiomReport:
    """Verify the semifield axioms; exhaustive up to `bound`, sampled beyond."""
    N = S.order
    exhaustive = N <= bound
    p, m = S.p, S.m
    if exhaustive:
        T = S.table(bound)
        idx = np.arange(N, dtype=np.uint16)
        # S1: elementary abelian addition; neutral and inverses exhaustively.
        neg_ok = all(digit_add(a, _neg_enc(a, p), p) == 0 for a in range(N))
        s1 = AxiomCheck(neg_ok, note="carry-free digit addition; neutral and inverses scanned")
        # S2: both distributive laws, all pairs against every basis increment.
        s2 = AxiomCheck(True)
        for k in range(m):
            e = p**k
            perm = kernels.digit_add_vec(idx, np.uint16(e), p, m)
            lhs = T[:, perm]
            rhs = kernels.digit_add_vec(T, T[:, e][:, None], p, m)
            if not np.array_equal(lhs, rhs):
                x, y = map(int, np.argwhere(lhs != rhs)[0])
                s2 = AxiomCheck(False, (x, y, e), "x*(y+e) != x*y + x*e")
                break
            lhs = T[perm, :]
            rhs = kernels.digit_add_vec(T, T[e, :][None, :], p, m)
            if not np.array_equal(lhs, rhs):
                x, y = map(int, np.argwhere(lhs != rhs)[0])
                s2 = AxiomCheck(False, (x, y, e), "(x+e)*y != x*y + e*y")
                break
        # S3: no zero divisors.
        zd = S.zero_divisor_witness()
        s3 = AxiomCheck(zd is None, zd, "zero divisor" if zd else "")
        # S4: two-sided identity.
        one = S.one_enc
        ok4 = np.array_equal(T[one], idx) and np.array_equal(T[:, one], idx)
        wit4 = None
        if not ok4:
            bad = np.flatnonzero(T[one] != idx)
            wit4 = (one, int(bad[0]) if len(bad) else int(np.flatnonzero(T[:, one] != idx)[0]))
        s4 = AxiomCheck(bool(ok4), wit4)
        return AxiomReport(N, True, s1, s2, s3, s4)

    rng = random.Random(seed)
    s1 = AxiomCheck(True, note="sampled")
    s2 = AxiomCheck(True, note="sampled")
    s3 = AxiomCheck(True, note="sampled")
    for _ in range(samples):
        x, y, z = (rng.randrange(N) for _ in range(3))
        if digit_add(x, _neg_enc(x, p), p) != 0:
            s1 = AxiomCheck(False, (x,))
        if S.mul_enc(x, digit_add(y, z, p)) != digit_add(S.mul_enc(x, y), S.mul_enc(x, z), p):
            s2 = AxiomCheck(False, (x, y, z), "left distributivity")
        if x and y and S.mul_enc(x, y) == 0:
            s3 = AxiomCheck(False, (x, y))
    one = S.one_enc
    ok4 = all(
        S.mul_enc(one, x) == x and S.mul_enc(x, one) == x
        for x in (rng.randrange(N) for _ in range(samples))
    )
    return AxiomReport(N, False, s1, s2, s3, AxiomCheck(ok4))


def _neg_enc(a: int, p: int) -> int:
    from .gf import digit_neg

    return digit_neg(a, p)


def nucleus(S, which: str, method: str = "scan", compare_theory: bool = True):
    """Nucleus element encodings, brute force, checked against the prediction.

    `scan` reduces the quantified slots to basis vectors (exact); `cube` runs
    the literal triple loop over the full table at small orders.
    """
    if method == "cube":
        members = _nucleus_cube(S, which)
    else:
        members = tuple(int(x) for x in np.flatnonzero(S.nucleus_scan(which)))
    if (
        compare_theory
        and isinstance(S, Semifield)
        and S.side == "right"
        and S.d >= 2
        and S.ring.n >= 2
    ):
        predicted = S.theoretical_nucleus(which)
        if tuple(members) != tuple(predicted):
            raise StructuralError(
                f"brute-force {which} nucleus disagrees with the prediction"
            )
    return members


def _nucleus_cube(S, which: str, bound: int = 2**8):
    """Literal triple-loop nuclei: every candidate against every pair."""
    if S.order > bound:
        raise SizeBoundError(f"cube scan bounded to order {bound}")
    T = S.table()
    if which == "centre":
        inner = set(_nucleus_cube(S, "left", bound))
        inner &= set(_nucleus_cube(S, "middle", bound))
        inner &= set(_nucleus_cube(S, "right", bound))
        return tuple(
            c for c in sorted(inner) if bool((T[c, :] == T[:, c]).all())
        )
    out = []
    for cand in range(S.order):
        if which == "right":
            col = T[:, cand]
            ok = bool((col[T] == T[:, col]).all())  # (x*y)*c vs x*(y*c)
        elif which == "left":
            row = T[cand, :]
            ok = bool((row[T] == T[row, :]).all())  # c*(y*z) vs (c*y)*z
        elif which == "middle":
            row, col = T[cand, :], T[:, cand]
            ok = bool((T[:, row] == T[col, :]).all())  # x*(c*z) vs (x*c)*z
        else:
            raise PreconditionError(f"unknown nucleus {which!r}")
        if ok:
            out.append(cand)
    return tuple(out)


def verify_triple(
    S,
    S2,
    triple: LinearTriple,
    bound: int = DEFAULT_EXHAUSTIVE_BOUND,
    samples: int = 2000,
    seed: int = 0,
    return_witness: bool = False,
):
    """Check x^F *' y^G == (x*y)^H, exhaustively up to `bound` else sampled."""
    if S.order != S2.order or S.p != S2.p:
        raise PreconditionError("incompatible algebra dimensions")
    F, G, H = triple.f_img, triple.g_img, triple.h_img
    if len(F) != S.order:
        raise PreconditionError("triple dimension mismatch")
    if S.order <= bound:
        T = S.table(bound)
        T2 = S2.table(bound)
        lhs = T2[F[:, None], G[None, :]]
        rhs = H[T]
        if np.array_equal(lhs, rhs):
            return (True, None) if return_witness else True
        x, y = map(int, np.argwhere(lhs != rhs)[0])
        return (False, (x, y)) if return_witness else False
    rng = random.Random(seed)
    for _ in range(samples):
        x, y = rng.randrange(S.order), rng.randrange(S.order)
        if S2.mul_enc(int(F[x]), int(G[y])) != int(H[S.mul_enc(x, y)]):
            return (False, (x, y)) if return_witness else False
    return (True, None) if return_witness else True


def right_mul_images(S: Semifield, u: SkewPoly) -> np.ndarray:
    """Images of x -> x *_f u over all encodings."""
    uenc = S.encode(u)
    seeds = [S.mul_enc(e, uenc) for e in S.basis_encs()]
    return kernels.lin_closure(seeds, S.p, S.m)


def isotopism_from_similarity(f: SkewPoly, g: SkewPoly, u: SkewPoly) -> LinearTriple:
    """The triple (id, R_u, R_u) from S_g to S_f given g*u = 0 mod_r f."""
    if u.is_zero():
        raise PreconditionError("witness must be nonzero")
    if not (g * u).mod_r(f).is_zero():
        raise PreconditionError("u is not a similarity witness for (f, g)")
    Sf = Semifield(f)
    ru = right_mul_images(Sf, u)
    ident = np.arange(Sf.order, dtype=np.uint16)
    return LinearTriple(ident, ru, ru)


class SemifieldIsomorphism:
    """Multiplicative additive bijection S_f -> S_g from a ring automorphism."""

    def __init__(self, source: Semifield, alpha, rho: int):
        ring = source.ring
        a_enc = int(ring.field.elem(alpha))
        if a_enc == 0:
            raise PreconditionError("alpha must be nonzero")
        g = apply_ring_automorphism(source.f, a_enc, rho).monic()
        self.source = source
        self.target = Semifield(g)
        self.alpha = a_enc
        self.rho = rho
        images = [
            apply_ring_automorphism(source.decode(x), a_enc, rho).encode(source.d)
            for x in range(source.order)
        ]
        self.map = AdditiveMap(images, source, self.target)

    def __call__(self, x):
        return self.map(x)

    def triple(self) -> LinearTriple:
        return self.map.triple()


def isomorphism_from_ring_automorphism(f: SkewPoly, alpha, rho: int = 0) -> SemifieldIsomorphism:
    return SemifieldIsomorphism(Semifield(f), alpha, rho)


def left_division_variant(f: SkewPoly):
    """The anti-isomorphic left-division semifield on psi(f) in K[t;sigma^-1].

    Returns (S_left, psi) with psi(a *_f b) = psi(b) *' psi(a).
    """
    Sf = Semifield(f)
    pf = anti_involution(Sf.f)
    S_left = Semifield(pf, side="left")
    images = [anti_involution(Sf.decode(x)).encode(Sf.d) for x in range(Sf.order)]
    psi = AdditiveMap(images, Sf, S_left)
    return S_left, psi
