"""Exact arithmetic in the tower F_p < F_q = F_p^h < K = F_q^n.

Elements are encoded as integers: an element with F_p coordinates c_ij
(coefficient i over F_q, inner coordinate j over F_p) is the integer
sum of c_ij * p^(i*h + j).  Encodings of F_q elements are the integers
below q, and an element of K lies in F_q exactly when its encoding is
below q.  Multiplication runs through discrete log tables, addition is
carry-free base-p digit addition.
"""

from __future__ import annotations

import json
from functools import lru_cache

from . import _polys
from ._ints import is_prime, prime_divisors, prime_power_split
from .errors import PreconditionError, SizeBoundError, StructuralError

DEFAULT_FIELD_BOUND = 2**16


def digit_add(a: int, b: int, p: int) -> int:
    """Carry-free base-p addition of two encoded elements."""
    if p == 2:
        return a ^ b
    out = 0
    shift = 1
    while a or b:
        out += ((a % p + b % p) % p) * shift
        a //= p
        b //= p
        shift *= p
    return out


def digit_neg(a: int, p: int) -> int:
    if p == 2:
        return a
    out = 0
    shift = 1
    while a:
        d = a % p
        if d:
            out += (p - d) * shift
        a //= p
        shift *= p
    return out


class SmallField:
    """Log/exp table arithmetic for a finite field of order up to 2^16.

    Not meant to be constructed directly; use `prime`, `extension`, or the
    `build_tower` / `fq_field` front ends.  Elements are plain ints.
    """

    __slots__ = ("p", "pdigits", "order", "exp", "log", "generator", "zero", "one")

    def __init__(self, p, pdigits, order, exp, log, generator):
        self.p = p
        self.pdigits = pdigits
        self.order = order
        self.exp = exp
        self.log = log
        self.generator = generator
        self.zero = 0
        self.one = 1

    # -- construction -------------------------------------------------

    @staticmethod
    def prime(p: int) -> "SmallField":
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        gen = _primitive_root(p)
        exp = [0] * max(p - 1, 1)
        log = [0] * p
        cur = 1
        for k in range(p - 1):
            exp[k] = cur
            log[cur] = k
            cur = (cur * gen) % p
        return SmallField(p, 1, p, exp, log, gen)

    @staticmethod
    def extension(base: "SmallField", modulus: tuple[int, ...]) -> "SmallField":
        """Extension of `base` by a monic irreducible `modulus` (constant first)."""
        deg = len(modulus) - 1
        B = base.order
        Q = B**deg
        if deg == 1:
            # Quotient by a linear modulus is the base field itself.
            return base

        def decode(e):
            return tuple((e // B**i) % B for i in range(deg))

        def encode(coeffs):
            out = 0
            for i, c in enumerate(coeffs):
                out += c * B**i
            return out

        def raw_mul(x, y):
            prod = _polys.pmul(base, decode(x), decode(y))
            _, rem = _polys.pdivmod(base, prod, modulus)
            return encode(rem + (0,) * (deg - len(rem)))

        def raw_pow(x, k):
            acc, cur = 1, x
            while k:
                if k & 1:
                    acc = raw_mul(acc, cur)
                cur = raw_mul(cur, cur)
                k >>= 1
            return acc

        gen = None
        prims = prime_divisors(Q - 1)
        for cand in range(2, Q):
            if all(raw_pow(cand, (Q - 1) // r) != 1 for r in prims):
                gen = cand
                break
        assert gen is not None
        exp = [0] * (Q - 1)
        log = [0] * Q
        cur = 1
        for k in range(Q - 1):
            exp[k] = cur
            log[cur] = k
            cur = raw_mul(cur, gen)
        return SmallField(base.p, base.pdigits * deg, Q, exp, log, gen)

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return digit_add(a, b, self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return digit_neg(a, self.p)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return digit_add(a, digit_neg(b, self.p), self.p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def pfrob(self, a: int, j: int) -> int:
        """a ** (p**j), the j-th power of the absolute Frobenius."""
        if a == 0:
            return 0
        return self.exp[(self.log[a] * pow(self.p, j, self.order - 1)) % (self.order - 1)]

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    prims = prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in prims):
            return g
    raise RuntimeError("no primitive root found")  # unreachable for prime p


class FieldDesc:
    """Descriptor of the tower F_p < F_q < K with its moduli and tables."""

    __slots__ = ("p", "h", "n", "modulus_q", "modulus_K", "Fq", "K")

    def __init__(self, p, h, n, modulus_q, modulus_K, Fq, K):
        self.p = p
        self.h = h
        self.n = n
        self.modulus_q = modulus_q
        self.modulus_K = modulus_K
        self.Fq = Fq
        self.K = K

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def order(self) -> int:
        return self.q**self.n

    def elem(self, enc) -> "FieldElem":
        if isinstance(enc, FieldElem):
            if enc.desc is not self:
                raise PreconditionError("element belongs to a different tower")
            return enc
        enc = int(enc)
        if not 0 <= enc < self.order:
            raise PreconditionError(f"encoding {enc} out of range for field of order {self.order}")
        return FieldElem(self, enc)

    def from_coeffs(self, coeffs) -> "FieldElem":
        """Element from its length-n vector of F_q encodings (constant first)."""
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise PreconditionError("too many coordinates")
        enc = 0
        for i, c in enumerate(coeffs):
            if not 0 <= c < self.q:
                raise PreconditionError(f"coordinate {c} not an F_q encoding")
            enc += c * self.q**i
        return FieldElem(self, enc)

    def coeffs_of(self, enc: int) -> tuple[int, ...]:
        return tuple((enc // self.q**i) % self.q for i in range(self.n))

    def in_subfield(self, enc: int) -> bool:
        return 0 <= enc < self.q

    def qfrob(self, enc: int, s: int) -> int:
        """enc ** (q**s); exponent s taken mod n."""
        return self.K.pfrob(enc, (s % self.n) * self.h)

    def norm_enc(self, enc: int) -> int:
        """Norm from K down to F_q on encodings."""
        if enc == 0:
            return 0
        e = (self.order - 1) // (self.q - 1)
        return self.K.pow(enc, e)

    def elements(self):
        return (FieldElem(self, e) for e in range(self.order))

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "h": self.h,
            "n": self.n,
            "modulus_q": list(self.modulus_q),
            "modulus_K": list(self.modulus_K),
        }

    @staticmethod
    def from_json(doc) -> "FieldDesc":
        if isinstance(doc, str):
            doc = json.loads(doc)
        desc = build_tower(doc["p"], doc["h"], doc["n"])
        if list(desc.modulus_q) != list(doc["modulus_q"]) or list(desc.modulus_K) != list(doc["modulus_K"]):
            raise PreconditionError("non-canonical moduli in serialized tower")
        return desc

    def __repr__(self):
        return f"FieldDesc(p={self.p}, h={self.h}, n={self.n})"


class FieldElem:
    """Element of K in a fixed tower, wrapping the integer encoding."""

    __slots__ = ("desc", "enc")

    def __init__(self, desc: FieldDesc, enc: int):
        self.desc = desc
        self.enc = enc

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.desc.coeffs_of(self.enc)

    def in_subfield(self) -> bool:
        return self.desc.in_subfield(self.enc)

    def __int__(self):
        return self.enc

    def __index__(self):
        return self.enc

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.desc is not self.desc:
                raise PreconditionError("elements from different towers")
            return other.enc
        return self.desc.elem(other).enc

    def __add__(self, other):
        return FieldElem(self.desc, self.desc.K.add(self.enc, self._other(other)))

    def __sub__(self, other):
        return FieldElem(self.desc, self.desc.K.sub(self.enc, self._other(other)))

    def __neg__(self):
        return FieldElem(self.desc, self.desc.K.neg(self.enc))

    def __mul__(self, other):
        return FieldElem(self.desc, self.desc.K.mul(self.enc, self._other(other)))

    def __truediv__(self, other):
        return FieldElem(self.desc, self.desc.K.div(self.enc, self._other(other)))

    def __pow__(self, k: int):
        return FieldElem(self.desc, self.desc.K.pow(self.enc, k))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.desc is other.desc and self.enc == other.enc
        if isinstance(other, int):
            return self.enc == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.desc), self.enc))

    def __bool__(self):
        return self.enc != 0

    def __repr__(self):
        return f"FieldElem({self.enc})"


@lru_cache(maxsize=None)
def _prime_field(p: int) -> SmallField:
    return SmallField.prime(p)


@lru_cache(maxsize=None)
def fq_field(q: int) -> SmallField:
    """The field F_q with its canonical modulus, as a bare SmallField."""
    p, h = prime_power_split(q)
    base = _prime_field(p)
    if h == 1:
        return base
    return SmallField.extension(base, _polys.least_irreducible(base, h))


@lru_cache(maxsize=None)
def build_tower(p: int, h: int, n: int, bound: int = DEFAULT_FIELD_BOUND) -> FieldDesc:
    """Construct the tower F_p < F_p^h < F_p^(h*n) with canonical moduli."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if h < 1 or n < 1:
        raise PreconditionError("extension degrees must be at least 1")
    if p ** (h * n) > bound:
        raise SizeBoundError(f"field order {p**(h*n)} exceeds bound {bound}")
    base = _prime_field(p)
    modulus_q = _polys.least_irreducible(base, h)
    Fq = fq_field(p**h)
    modulus_K = _polys.least_irreducible(Fq, n)
    K = SmallField.extension(Fq, modulus_K) if n > 1 else Fq
    return FieldDesc(p, h, n, modulus_q, modulus_K, Fq, K)


# -- tower operations ---------------------------------------------------


def frobenius(a: FieldElem, s: int) -> FieldElem:
    """The automorphism x -> x^(q^s) of K, fixing F_q pointwise."""
    return FieldElem(a.desc, a.desc.qfrob(a.enc, s))


def norm(a: FieldElem) -> FieldElem:
    """Norm of K over F_q: the product of all q-power conjugates of a."""
    return FieldElem(a.desc, a.desc.norm_enc(a.enc))


def norm_preimage(lam: FieldElem) -> FieldElem:
    """First element of K (in encoding order) whose norm equals lam.

    lam must be a nonzero element of the subfield F_q.
    """
    desc = lam.desc
    if lam.enc == 0:
        raise PreconditionError("norm preimage of zero requested")
    if not desc.in_subfield(lam.enc):
        raise PreconditionError("norm target must lie in F_q")
    for enc in range(1, desc.order):
        if desc.norm_enc(enc) == lam.enc:
            return FieldElem(desc, enc)
    raise StructuralError("norm is surjective; no preimage found")  # pragma: no cover
