"""The skew polynomial ring R = K[t;sigma], optionally twisted by a derivation.

Multiplication obeys t*a = sigma(a)*t + delta(a), with sigma the chosen
q-power Frobenius generator of Gal(K/F_q) and delta the inner sigma-derivation
a -> x*(a - sigma(a)) when a derivation parameter x is set.  The ring is left-
and right-Euclidean; the structural operations (eigenring, minimal central
left multiple, similarity, matrix representation) all reduce to F_q-linear
algebra on residues.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from . import linalg
from .errors import (
    PreconditionError,
    RingMismatchError,
    SizeBoundError,
    StructuralError,
)
from .fqpoly import CentralPoly, parse_poly_text
from .gf import FieldDesc, FieldElem, digit_add, digit_neg


class SkewRing:
    """Descriptor of K[t;sigma] or K[t;sigma,delta_x] over a fixed tower."""

    __slots__ = ("field", "sigma_s", "deriv_x")

    def __init__(self, field: FieldDesc, sigma_s: int, deriv_x=None):
        n = field.n
        if not 0 <= sigma_s < n:
            raise PreconditionError(f"sigma exponent {sigma_s} outside [0, {n})")
        if gcd(sigma_s, n) != 1:
            raise PreconditionError(
                f"gcd({sigma_s}, {n}) != 1: sigma would not have fixed field F_q"
            )
        if deriv_x is not None:
            deriv_x = int(field.elem(deriv_x))
            if deriv_x == 0:
                deriv_x = None
        self.field = field
        self.sigma_s = sigma_s
        self.deriv_x = deriv_x

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def K(self):
        return self.field.K

    @property
    def Fq(self):
        return self.field.Fq

    def has_derivation(self) -> bool:
        return self.deriv_x is not None

    def sigma(self, enc: int, i: int = 1) -> int:
        """Apply sigma^i to an encoded element of K."""
        return self.field.qfrob(enc, self.sigma_s * i)

    def delta(self, enc: int) -> int:
        if self.deriv_x is None:
            return 0
        K = self.K
        return K.mul(self.deriv_x, K.sub(enc, self.sigma(enc)))

    # -- constructors ----------------------------------------------------

    def poly(self, coeffs) -> "SkewPoly":
        encs = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                c = int(self.field.elem(c))
            encs.append(int(c))
        for c in encs:
            if not 0 <= c < self.field.order:
                raise PreconditionError(f"coefficient {c} is not a K encoding")
        return SkewPoly(self, tuple(encs))

    def zero(self) -> "SkewPoly":
        return SkewPoly(self, ())

    def one(self) -> "SkewPoly":
        return SkewPoly(self, (1,))

    def t(self, k: int = 1) -> "SkewPoly":
        return SkewPoly(self, (0,) * k + (1,))

    def constant(self, enc) -> "SkewPoly":
        return self.poly([enc])

    def elem_poly(self, enc: int, d: int) -> "SkewPoly":
        """Decode a degree-<d residue from its integer encoding."""
        Q = self.field.order
        return SkewPoly(self, tuple((enc // Q**i) % Q for i in range(d)))

    def monic_polys(self, d: int):
        """All monic degree-d elements, in enumeration order."""
        Q = self.field.order
        for m in range(Q**d):
            yield SkewPoly(self, tuple((m // Q**i) % Q for i in range(d)) + (1,))

    def irreducible_polys(self, d: int, count=None):
        found = 0
        for f in self.monic_polys(d):
            if is_irreducible(f):
                yield f
                found += 1
                if count is not None and found >= count:
                    return

    def parse(self, text: str) -> "SkewPoly":
        return self.poly(parse_poly_text(text, "t"))

    # -- structure -------------------------------------------------------

    def anti_partner(self) -> "SkewRing":
        """The ring K[t;sigma^-1], target of the anti-involution."""
        if self.has_derivation():
            raise PreconditionError("anti-involution needs a zero derivation")
        n = self.n
        return SkewRing(self.field, (-self.sigma_s) % n if n > 1 else 0)

    def derivation_ring(self, x) -> "SkewRing":
        return SkewRing(self.field, self.sigma_s, x)

    def __eq__(self, other):
        return (
            isinstance(other, SkewRing)
            and self.field is other.field
            and self.sigma_s == other.sigma_s
            and self.deriv_x == other.deriv_x
        )

    def __hash__(self):
        return hash((id(self.field), self.sigma_s, self.deriv_x))

    def __repr__(self):
        tag = f", delta_x={self.deriv_x}" if self.deriv_x is not None else ""
        return f"SkewRing(F_{self.field.order}[t;x->x^{self.q}^{self.sigma_s}{tag}])"


class SkewPoly:
    """Element of a skew polynomial ring; coefficients constant-term first."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SkewRing, coeffs: tuple[int, ...]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "SkewPoly":
        if self.is_zero() or self.is_monic():
            return self
        inv = self.ring.K.inv(self.lead)
        return SkewPoly(self.ring, tuple(self.ring.K.mul(inv, c) for c in self.coeffs))

    def _compat(self, other) -> "SkewPoly":
        if isinstance(other, SkewPoly):
            if other.ring != self.ring:
                raise RingMismatchError("operands from different skew rings")
            return other
        if isinstance(other, (int, FieldElem)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine SkewPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._compat(other)
        K = self.ring.K
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return SkewPoly(
            self.ring,
            tuple(K.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)),
        )

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.K
        return SkewPoly(self.ring, tuple(K.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._compat(other))

    def __rsub__(self, other):
        return self._compat(other) - self

    def _t_shift(self, coeffs: list[int]) -> list[int]:
        """Left-multiply a coefficient list by t."""
        ring = self.ring
        K = ring.K
        out = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            if c:
                out[k + 1] = K.add(out[k + 1], ring.sigma(c))
                if ring.deriv_x is not None:
                    out[k] = K.add(out[k], ring.delta(c))
        return out

    def __mul__(self, other):
        other = self._compat(other)
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        K = self.ring.K
        acc = [0] * (self.degree + other.degree + 1)
        cur = list(other.coeffs)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for k, c in enumerate(cur):
                    if c:
                        acc[k] = K.add(acc[k], K.mul(ai, c))
            if i < self.degree:
                cur = self._t_shift(cur)
        return SkewPoly(self.ring, tuple(acc))

    def __rmul__(self, other):
        return self._compat(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative powers are not defined in R")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def right_divmod(self, f: "SkewPoly"):
        """a = q*f + r with deg(r) < deg(f)."""
        f = self._compat(f)
        if f.is_zero():
            raise ZeroDivisionError("right division by zero")
        ring, K = self.ring, self.ring.K
        df, lf = f.degree, f.lead
        rem = self
        quo = [0] * max(self.degree - df + 1, 0)
        while rem.degree >= df:
            k = rem.degree - df
            c = K.div(rem.lead, ring.sigma(lf, k))
            quo[k] = c
            rem = rem - SkewPoly(ring, (0,) * k + (c,)) * f
        return SkewPoly(ring, tuple(quo)), rem

    def mod_r(self, f: "SkewPoly") -> "SkewPoly":
        return self.right_divmod(f)[1]

    def left_divmod(self, f: "SkewPoly"):
        """a = f*q + r with deg(r) < deg(f)."""
        f = self._compat(f)
        if f.is_zero():
            raise ZeroDivisionError("left division by zero")
        ring, K = self.ring, self.ring.K
        df, lf = f.degree, f.lead
        ilf = K.inv(lf)
        rem = self
        quo = [0] * max(self.degree - df + 1, 0)
        while rem.degree >= df:
            k = rem.degree - df
            c = ring.sigma(K.mul(ilf, rem.lead), -df)
            quo[k] = c
            rem = rem - f * SkewPoly(ring, (0,) * k + (c,))
        return SkewPoly(ring, tuple(quo)), rem

    def mod_l(self, f: "SkewPoly") -> "SkewPoly":
        return self.left_divmod(f)[1]

    def encode(self, d: int) -> int:
        """Integer encoding of a degree-<d residue."""
        if self.degree >= d:
            raise PreconditionError(f"degree {self.degree} residue does not fit below {d}")
        Q = self.ring.field.order
        return sum(c * Q**i for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, SkewPoly) and self.ring == other.ring and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def grammar(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return " + ".join(parts)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}t" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"SkewPoly({self})"


# -- flattening between residues and F_q vectors ---------------------------


def _flatten(poly: SkewPoly, d: int) -> list[int]:
    """Degree-<d residue as an F_q vector of length n*d (coefficient-major)."""
    desc = poly.ring.field
    out = []
    for i in range(d):
        c = poly.coeffs[i] if i < len(poly.coeffs) else 0
        out.extend(desc.coeffs_of(c))
    return out


def _unflatten(ring: SkewRing, vec, d: int) -> SkewPoly:
    desc = ring.field
    n = desc.n
    coeffs = [desc.from_coeffs(vec[i * n : (i + 1) * n]).enc for i in range(d)]
    return SkewPoly(ring, tuple(coeffs))


def _require_plain(ring: SkewRing, what: str):
    if ring.has_derivation():
        raise PreconditionError(f"{what} requires a zero derivation")


# -- Euclidean structure ----------------------------------------------------


def gcrd(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Monic greatest common right divisor, by the right Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise PreconditionError("gcrd(0, 0) is undefined")
    if a.ring != b.ring:
        raise RingMismatchError("operands from different skew rings")
    while not b.is_zero():
        a, b = b, a.mod_r(b)
    return a.monic()


def central_lift(ring: SkewRing, hhat: CentralPoly) -> SkewPoly:
    """The element hhat(t^n) of R corresponding to hhat in F_q[y]."""
    if hhat.q != ring.q:
        raise PreconditionError("central polynomial over the wrong F_q")
    n = ring.n
    out = [0] * (n * hhat.degree + 1) if not hhat.is_zero() else []
    for i, c in enumerate(hhat.coeffs):
        out[n * i] = c
    return SkewPoly(ring, tuple(out))


def is_central(f: SkewPoly) -> bool:
    """Membership in the centre F_q[t^n] of K[t;sigma]."""
    _require_plain(f.ring, "centrality")
    n, q = f.ring.n, f.ring.q
    for i, c in enumerate(f.coeffs):
        if c and (c >= q or i % n != 0):
            return False
    return True


def mzlm(f: SkewPoly) -> CentralPoly:
    """Minimal central left multiple: the least-degree monic hhat in F_q[y]
    with f right-dividing hhat(t^n)."""
    _require_plain(f.ring, "mzlm")
    if f.is_zero():
        raise PreconditionError("mzlm of zero")
    f = f.monic()
    ring = f.ring
    d = f.degree
    if d == 0:
        return CentralPoly(ring.q, (1,))
    Fq = ring.Fq
    dim = ring.n * d
    sb = linalg.SpanBuilder(Fq, dim)
    tn = ring.t(ring.n)
    r = ring.one()
    for i in range(dim + 1):
        vec = _flatten(r, d)
        coords = sb.coords_of(vec)
        if coords is not None:
            coeffs = tuple(Fq.neg(c) for c in coords) + (1,)
            out = CentralPoly(ring.q, coeffs)
            if not central_lift(ring, out).mod_r(f).is_zero():
                raise StructuralError("mzlm candidate fails right divisibility")
            return out
        sb.add(vec)
        r = (tn * r).mod_r(f)
    raise StructuralError("no central dependence found")  # pragma: no cover


def is_irreducible(f: SkewPoly) -> bool:
    """Irreducibility in R: no factorization into lower-degree elements.

    Decided through the minimal central left multiple: a monic f of degree d
    with nonzero constant term is irreducible iff mzlm(f) has degree d and is
    irreducible in F_q[y].  Cross-checked against the brute-force divisor
    oracle in the test suite.
    """
    _require_plain(f.ring, "irreducibility")
    if f.degree < 1:
        raise PreconditionError("irreducibility is defined for non-constant elements")
    f = f.monic()
    if f.degree == 1:
        return True
    if f.coeffs[0] == 0:
        return False  # t is a proper right divisor
    hhat = mzlm(f)
    return hhat.degree == f.degree and hhat.is_irreducible()


def factor_witness(f: SkewPoly, bound: int = 2**16):
    """A factorization f = a*b with both degrees below deg(f), or None.

    Scans monic right divisors in enumeration order; the quotient absorbs the
    leading unit, so monic candidates suffice.
    """
    if f.degree < 1:
        raise PreconditionError("constant input")
    Q = f.ring.field.order
    total = sum(Q**e for e in range(1, f.degree))
    if total > bound:
        raise SizeBoundError(f"{total} divisor candidates exceed bound {bound}")
    for e in range(1, f.degree):
        for g in f.ring.monic_polys(e):
            quo, rem = f.right_divmod(g)
            if rem.is_zero():
                return quo, g
    return None


def is_irreducible_bruteforce(f: SkewPoly, bound: int = 2**16) -> bool:
    return factor_witness(f, bound=bound) is None


# -- eigenring and similarity ------------------------------------------------


class Eigenring:
    """E(f) = {u : deg(u) < d, f right-divides f*u}, as an F_q space."""

    __slots__ = ("f", "basis")

    def __init__(self, f: SkewPoly, basis: tuple[SkewPoly, ...]):
        self.f = f
        self.basis = basis

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element_encodings(self) -> tuple[int, ...]:
        """Encodings of the full F_q span, ascending."""
        ring = self.f.ring
        d = self.f.degree
        nonzero = _span_nonzero(ring, list(self.basis), d)
        return (0,) + tuple(u.encode(d) for u in nonzero)

    def elements(self):
        ring = self.f.ring
        d = self.f.degree
        return tuple(ring.elem_poly(e, d) for e in self.element_encodings())

    def mul(self, a: SkewPoly, b: SkewPoly) -> SkewPoly:
        return (a * b).mod_r(self.f)

    def field(self) -> "EigenringField":
        return EigenringField(self)

    def __repr__(self):
        return f"Eigenring(dim={self.dimension}, f={self.f})"


def _scale_enc(ring: SkewRing, enc: int, c: int, d: int) -> int:
    """F_q-scalar multiple of a residue encoding."""
    if c == 0:
        return 0
    if c == 1:
        return enc
    K = ring.K
    Q = ring.field.order
    out = 0
    for i in range(d):
        out += K.mul(c, (enc // Q**i) % Q) * Q**i
    return out


def _left_mul_kernel(g: SkewPoly, f: SkewPoly):
    """Kernel basis of the F_q-linear map u -> (g*u) mod_r f on degree-<d residues."""
    ring = f.ring
    d = f.degree
    n = ring.n
    dim = n * d
    cols = []
    for b in range(dim):
        i, j = divmod(b, n)
        u = SkewPoly(ring, (0,) * i + (ring.q**j,))
        cols.append(_flatten((g * u).mod_r(f), d))
    rows = [[cols[b][r] for b in range(dim)] for r in range(dim)]
    kern = linalg.kernel_basis(ring.Fq, rows)
    return [_unflatten(ring, v, d) for v in kern]


def eigenring(f: SkewPoly) -> Eigenring:
    """E(f) computed as the kernel of u -> (f*u mod_r f); dimension d over F_q."""
    _require_plain(f.ring, "eigenring")
    if f.is_zero():
        raise PreconditionError("eigenring of zero")
    f = f.monic()
    basis = _left_mul_kernel(f, f)
    if len(basis) != f.degree:
        raise StructuralError(
            f"eigenring dimension {len(basis)} != deg(f) = {f.degree}; f is likely reducible"
        )
    return Eigenring(f, tuple(basis))


def similar_witness(f: SkewPoly, g: SkewPoly):
    """Nonzero u of degree < d with g*u = 0 mod_r f, or None.

    For irreducible inputs, presence is equivalent to mzlm(f) = mzlm(g); the
    agreement is asserted.
    """
    _require_plain(f.ring, "similarity")
    if f.ring != g.ring:
        raise RingMismatchError("similarity needs a common ring")
    if f.degree != g.degree:
        raise PreconditionError("similarity is tested between equal degrees")
    f, g = f.monic(), g.monic()
    kern = _left_mul_kernel(g, f)
    witness = None
    if kern:
        d = f.degree
        enc = min(u.encode(d) for u in _span_nonzero(f.ring, kern, d))
        witness = f.ring.elem_poly(enc, d)
        if not (g * witness).mod_r(f).is_zero():
            raise StructuralError("similarity witness fails its defining relation")
    if (witness is not None) != (mzlm(f) == mzlm(g)):
        raise StructuralError("witness presence disagrees with mzlm equality")
    return witness


def _span_nonzero(ring: SkewRing, basis: list[SkewPoly], d: int):
    """Nonzero elements of the F_q span of the given residues."""
    q = ring.q
    p = ring.field.p
    encs = {0}
    for b in basis:
        benc = b.encode(d)
        encs = {digit_add(s, _scale_enc(ring, benc, c, d), p) for s in encs for c in range(q)}
    encs.discard(0)
    return [ring.elem_poly(e, d) for e in sorted(encs)]


# -- structural maps ---------------------------------------------------------


def apply_ring_automorphism(f: SkewPoly, alpha, rho: int = 0) -> SkewPoly:
    """Image of f under the ring automorphism t -> alpha*t, coefficients

    through the p-power Frobenius x -> x^(p^rho)."""
    _require_plain(f.ring, "ring automorphisms")
    ring = f.ring
    K = ring.K
    a = int(ring.field.elem(alpha))
    if a == 0:
        raise PreconditionError("alpha must be nonzero")
    out = []
    cur = 1  # (alpha t)^i = cur * t^i
    for i, fi in enumerate(f.coeffs):
        out.append(K.mul(K.pfrob(fi, rho), cur))
        cur = K.mul(a, ring.sigma(cur))
    return SkewPoly(ring, tuple(out))


def anti_involution(f: SkewPoly) -> SkewPoly:
    """The degree-preserving anti-isomorphism onto K[t;sigma^-1]:
    sum a_i t^i -> sum sigma^-i(a_i) t^i."""
    _require_plain(f.ring, "the anti-involution")
    ring = f.ring
    target = ring.anti_partner()
    return SkewPoly(target, tuple(ring.sigma(c, -i) for i, c in enumerate(f.coeffs)))


def derivation_ring_iso(a: SkewPoly, target: SkewRing) -> SkewPoly:
    """The substitution isomorphism between K[t;sigma] and K[t;sigma,delta_x].

    Forward direction maps a(t) to a(t - x) evaluated in the derivation ring;
    the reverse substitutes t + x back.
    """
    src = a.ring
    if src.field is not target.field or src.sigma_s != target.sigma_s:
        raise PreconditionError("source and target must share field and sigma")
    if src == target:
        return a  # zero shift: the substitution is the identity
    if src.has_derivation() == target.has_derivation():
        raise PreconditionError("exactly one side must carry the derivation")
    x = target.deriv_x if target.has_derivation() else src.deriv_x
    K = target.K
    shift = K.neg(x) if target.has_derivation() else x
    base = SkewPoly(target, (shift, 1))
    acc = target.zero()
    tpow = target.one()
    for c in a.coeffs:
        acc = acc + target.constant(c) * tpow
        tpow = base * tpow
    return acc


# -- the eigenring as a field and the matrix representation ------------------


class EigenringField:
    """E(f) with its residue multiplication, presented as a field of order q^d.

    Elements are residue encodings; `one` is the encoding of the constant 1.
    """

    def __init__(self, eig: Eigenring):
        self.eig = eig
        ring = eig.f.ring
        self.ring = ring
        self.d = eig.f.degree
        self.p = ring.field.p
        self.order = ring.q**self.d
        self.elements = (0,) + tuple(e.encode(self.d) for e in _span_nonzero(ring, list(eig.basis), self.d))
        self.zero = 0
        self.one = 1
        self._gen = None

    def mul(self, x: int, y: int) -> int:
        f = self.eig.f
        a = self.ring.elem_poly(x, self.d)
        b = self.ring.elem_poly(y, self.d)
        return (a * b).mod_r(f).encode(self.d)

    def add(self, x: int, y: int) -> int:
        return digit_add(x, y, self.p)

    def neg(self, x: int) -> int:
        return digit_neg(x, self.p)

    def sub(self, x: int, y: int) -> int:
        return digit_add(x, digit_neg(y, self.p), self.p)

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            return 0 if k else 1
        k %= self.order - 1
        acc, cur = 1, x
        while k:
            if k & 1:
                acc = self.mul(acc, cur)
            cur = self.mul(cur, cur)
            k >>= 1
        return acc

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("eigenring inverse of zero")
        return self.pow(x, self.order - 2)

    def generator(self) -> int:
        """Least element (in encoding order) generating the multiplicative group."""
        if self._gen is None:
            from ._ints import prime_divisors

            prims = prime_divisors(self.order - 1) if self.order > 2 else ()
            for cand in self.elements[1:]:
                if cand == 1:
                    continue
                if all(self.pow(cand, (self.order - 1) // r) != 1 for r in prims):
                    self._gen = cand
                    break
            if self._gen is None:  # order 2: the only unit is 1
                self._gen = 1
        return self._gen

    def min_poly(self, x: int) -> CentralPoly:
        """Minimal polynomial over F_q of an eigenring element."""
        ring = self.ring
        Fq = ring.Fq
        dim = ring.n * self.d
        sb = linalg.SpanBuilder(Fq, dim)
        cur = 1
        for i in range(self.d + 1):
            vec = _flatten(ring.elem_poly(cur, self.d), self.d)
            coords = sb.coords_of(vec)
            if coords is not None:
                return CentralPoly(ring.q, tuple(Fq.neg(c) for c in coords) + (1,))
            sb.add(vec)
            cur = self.mul(cur, x)
        raise StructuralError("no minimal polynomial dependence")  # pragma: no cover


class MatrixRep:
    """Image of a ring element in M_n(F_q^d) = R/R*h, h = mzlm(f)(t^n).

    Entries are eigenring elements (residue encodings); the right action of
    E(f) on degree-<d residues makes them an n-dimensional E(f) space, and
    left multiplication is E(f)-linear.
    """

    __slots__ = ("entries", "field", "vbasis", "h")

    def __init__(self, entries, field: EigenringField, vbasis, h: CentralPoly):
        self.entries = entries
        self.field = field
        self.vbasis = vbasis
        self.h = h

    @property
    def n(self) -> int:
        return len(self.entries)

    def rank(self) -> int:
        return linalg.rank(self.field, [list(r) for r in self.entries])

    def is_scalar(self) -> bool:
        e = self.entries
        return all(
            e[i][j] == (e[0][0] if i == j else 0) for i in range(self.n) for j in range(self.n)
        )

    def __matmul__(self, other: "MatrixRep") -> "MatrixRep":
        prod = linalg.mat_mul(self.field, self.entries, other.entries)
        return MatrixRep(tuple(tuple(r) for r in prod), self.field, self.vbasis, self.h)

    def __eq__(self, other):
        return isinstance(other, MatrixRep) and self.entries == other.entries

    def __repr__(self):
        return f"MatrixRep({self.entries})"


class _RepContext:
    def __init__(self, f: SkewPoly):
        f = f.monic()
        ring = f.ring
        d = f.degree
        hhat = mzlm(f)
        if hhat.degree != d or not hhat.is_irreducible():
            raise PreconditionError("matrix representation needs an irreducible f")
        if hhat.coeffs == (0, 1):
            raise PreconditionError("mzlm(f) = y: h would be a power of t")
        self.f = f
        self.hhat = hhat
        eig = eigenring(f)
        self.eigfield = EigenringField(eig)
        Fq = ring.Fq
        n = ring.n
        dim = n * d
        # Greedy E(f)-basis of the residue space: first encodings whose
        # eigenring orbit extends the F_q span.
        sb = linalg.SpanBuilder(Fq, dim)
        vbasis = []
        ebasis = [b.encode(d) for b in eig.basis]
        Q = ring.field.order
        enc = 1
        while len(vbasis) < n:
            v = ring.elem_poly(enc, d)
            if sb.coords_of(_flatten(v, d)) is None:
                vbasis.append(enc)
                for eb in ebasis:
                    prod = (v * ring.elem_poly(eb, d)).mod_r(f)
                    sb.add(_flatten(prod, d))
            enc += 1
            if enc >= Q**d:  # pragma: no cover
                raise StructuralError("failed to build an eigenring basis")
        self.vbasis = tuple(vbasis)
        # Invertible map (e_1..e_n) -> sum v_i e_i, columns over the F_q basis
        cols = []
        for venc in vbasis:
            v = ring.elem_poly(venc, d)
            for eb in ebasis:
                prod = (v * ring.elem_poly(eb, d)).mod_r(f)
                cols.append(_flatten(prod, d))
        rows = [[cols[c][r] for c in range(dim)] for r in range(dim)]
        self.minv = linalg.inverse(Fq, rows)
        if self.minv is None:  # pragma: no cover
            raise StructuralError("eigenring coordinate system is singular")
        self.ebasis = ebasis
        self.ring = ring
        self.d = d
        self.n = n

    def coords(self, w: SkewPoly):
        """Columns of eigenring coordinates expressing w over the v-basis."""
        ring = self.ring
        x = linalg.mat_vec(ring.Fq, self.minv, _flatten(w, self.d))
        out = []
        d = self.d
        for i in range(self.n):
            enc = 0
            for b in range(d):
                c = x[i * d + b]
                if c:
                    enc = digit_add(
                        enc, _scale_enc(ring, self.ebasis[b], c, d), ring.field.p
                    )
            out.append(enc)
        return out


@lru_cache(maxsize=128)
def _rep_context(f: SkewPoly) -> _RepContext:
    return _RepContext(f)


def matrix_rep(u: SkewPoly, f: SkewPoly) -> MatrixRep:
    """Matrix of left multiplication by u on degree-<d residues, over E(f).

    Multiplicative modulo h = mzlm(f)(t^n); central elements map to scalar
    matrices and A(f) itself has rank n-1.
    """
    ctx = _rep_context(f.monic())
    if u.ring != ctx.ring:
        raise RingMismatchError("u from a different ring")
    cols = []
    for venc in ctx.vbasis:
        w = (u * ctx.ring.elem_poly(venc, ctx.d)).mod_r(ctx.f)
        cols.append(ctx.coords(w))
    entries = tuple(tuple(cols[j][i] for j in range(ctx.n)) for i in range(ctx.n))
    return MatrixRep(entries, ctx.eigfield, ctx.vbasis, ctx.hhat)
