"""Commutative polynomials over F_q in the central variable y.

CentralPoly values represent elements h of F_q[y]; under the isomorphism of
the centre of K[t;sigma] with F_q[y] they correspond to h(t^n).  Irreducibility
is decided by trial division against the enumerated irreducibles of degree at
most deg/2, with a sieve-backed enumerator for larger coefficient spaces.
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from . import _polys
from ._ints import divisors, moebius, prime_divisors
from .errors import ParseError, PreconditionError
from .gf import fq_field

_TERM_RE = re.compile(r"^(?:(\d+)\s*\*?\s*)?([a-zA-Z])(?:\^(\d+))?$|^(\d+)$")


class CentralPoly:
    """Polynomial over F_q, coefficients constant-term first."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs):
        self.q = q
        cs = _polys.trim(int(c) for c in coeffs)
        if any(not 0 <= c < q for c in cs):
            raise PreconditionError("coefficients must be F_q encodings")
        self.coeffs = cs

    @property
    def field(self):
        return fq_field(self.q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "CentralPoly":
        return CentralPoly(self.q, _polys.monic(self.field, self.coeffs))

    def _wrap(self, coeffs) -> "CentralPoly":
        return CentralPoly(self.q, coeffs)

    def _c(self, other) -> tuple:
        if isinstance(other, CentralPoly):
            if other.q != self.q:
                raise PreconditionError("polynomials over different fields")
            return other.coeffs
        raise TypeError("expected CentralPoly")

    def __add__(self, other):
        return self._wrap(_polys.padd(self.field, self.coeffs, self._c(other)))

    def __sub__(self, other):
        return self._wrap(_polys.psub(self.field, self.coeffs, self._c(other)))

    def __mul__(self, other):
        return self._wrap(_polys.pmul(self.field, self.coeffs, self._c(other)))

    def __divmod__(self, other):
        q, r = _polys.pdivmod(self.field, self.coeffs, self._c(other))
        return self._wrap(q), self._wrap(r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        return isinstance(other, CentralPoly) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def gcd(self, other) -> "CentralPoly":
        return self._wrap(_polys.pgcd(self.field, self.coeffs, self._c(other)))

    def lcm(self, other) -> "CentralPoly":
        return self._wrap(_polys.plcm(self.field, self.coeffs, self._c(other)))

    def evaluate(self, x: int) -> int:
        return _polys.peval(self.field, self.coeffs, x)

    def pfrob(self, j: int) -> "CentralPoly":
        """Apply x -> x^(p^j) to every coefficient."""
        F = self.field
        return self._wrap(tuple(F.pfrob(c, j) for c in self.coeffs))

    def is_irreducible(self) -> bool:
        d = self.degree
        if d < 1:
            return False
        f = self.monic()
        for e in range(1, d // 2 + 1):
            for g in irreducibles(self.q, e):
                if (f % g).is_zero():
                    return False
        return True

    # -- text forms ------------------------------------------------------

    def grammar(self, var: str = "y") -> str:
        """Canonical ascending form `c0 + c1*y + c2*y^2 + ...`."""
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{var}")
            else:
                parts.append(f"{c}*{var}^{i}")
        return " + ".join(parts)

    def pretty(self, var: str = "y") -> str:
        """Human form, descending degree, unit coefficients omitted."""
        return _pretty(self.coeffs, var)

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"CentralPoly(q={self.q}, {self.pretty()!r})"

    @staticmethod
    def parse(q: int, text: str, var: str = "y") -> "CentralPoly":
        return CentralPoly(q, parse_poly_text(text, var))

    @staticmethod
    def from_index(q: int, d: int, m: int) -> "CentralPoly":
        """Monic degree-d polynomial number m in enumeration order."""
        coeffs = tuple((m // q**i) % q for i in range(d)) + (1,)
        return CentralPoly(q, coeffs)

    def index(self) -> int:
        """Position of this monic polynomial in the enumeration of its degree."""
        if not self.is_monic():
            raise PreconditionError("index defined for monic polynomials")
        return sum(c * self.q**i for i, c in enumerate(self.coeffs[:-1]))


def _pretty(coeffs, var: str) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    return " + ".join(parts) if parts else "0"


def parse_poly_text(text: str, var: str) -> list[int]:
    """Parse `c0 + c1*v + c2*v^2` (terms in any order, coefficient optional)."""
    text = text.strip()
    if text.startswith("["):
        import json

        coeffs = json.loads(text)
        if not isinstance(coeffs, list):
            raise ParseError("expected a JSON coefficient list")
        return [int(c) for c in coeffs]
    coeffs: dict[int, int] = {}
    if not text:
        raise ParseError("empty polynomial")
    for raw in text.split("+"):
        term = raw.strip()
        m = _TERM_RE.match(term)
        if not m:
            raise ParseError(f"cannot parse term {term!r}")
        if m.group(4) is not None:
            deg, c = 0, int(m.group(4))
        else:
            if m.group(2) != var:
                raise ParseError(f"unexpected variable {m.group(2)!r}, expected {var!r}")
            deg = int(m.group(3)) if m.group(3) else 1
            c = int(m.group(1)) if m.group(1) else 1
        if deg in coeffs:
            raise ParseError(f"degree {deg} appears twice")
        coeffs[deg] = c
    out = [0] * (max(coeffs) + 1)
    for deg, c in coeffs.items():
        out[deg] = c
    return out


# -- enumeration and counting --------------------------------------------


def count_irreducible(q: int, d: int) -> int:
    """Number of monic irreducible degree-d polynomials over F_q (Moebius sum)."""
    if d < 1:
        raise PreconditionError("degree must be positive")
    total = sum(moebius(s) * q ** (d // s) for s in divisors(d))
    assert total % d == 0
    return total // d


def subfield_element_count(q: int, d: int) -> int:
    """Elements of F_(q^d) lying in a proper subfield, by inclusion-exclusion."""
    prims = prime_divisors(d)
    total = 0
    for mask in range(1, 1 << len(prims)):
        prod = 1
        bits = 0
        for i, r in enumerate(prims):
            if mask >> i & 1:
                prod *= r
                bits += 1
        total += (-1) ** (bits + 1) * q ** (d // prod)
    return total


@lru_cache(maxsize=None)
def irreducibles(q: int, d: int) -> tuple[CentralPoly, ...]:
    """All monic irreducible degree-d polynomials over F_q, enumeration order."""
    if d == 1:
        return tuple(CentralPoly.from_index(q, 1, m) for m in range(q))
    if q**d <= 4096:
        out = tuple(
            f for m in range(q**d) if (f := CentralPoly.from_index(q, d, m)).is_irreducible()
        )
    else:
        out = _sieve_irreducibles(q, d)
    assert len(out) == count_irreducible(q, d)
    return out


def _sieve_irreducibles(q: int, d: int) -> tuple[CentralPoly, ...]:
    """Mark all products (irreducible of degree e <= d/2) * (monic of degree d-e).

    Vectorized over the cofactor space; unmarked monic indices are irreducible.
    """
    F = fq_field(q)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            mul[a, b] = F.mul(a, b)
    addt = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            addt[a, b] = F.add(a, b)
    reducible = np.zeros(q**d, dtype=bool)
    powers = q ** np.arange(d, dtype=np.int64)
    for e in range(1, d // 2 + 1):
        k = d - e
        co = np.arange(q**k, dtype=np.int64)
        codigits = np.stack([(co // q**i) % q for i in range(k)] + [np.ones_like(co)], axis=1)
        for g in irreducibles(q, e):
            gc = g.coeffs
            prod = np.zeros((q**k, d + 1), dtype=np.int64)
            for i, gi in enumerate(gc):
                if gi == 0:
                    continue
                scaled = mul[gi][codigits]
                for j in range(k + 1):
                    col = prod[:, i + j]
                    prod[:, i + j] = addt[col, scaled[:, j]]
            # products are monic of degree d; index by the low d coefficients
            idx = prod[:, :d] @ powers
            reducible[idx] = True
    return tuple(CentralPoly.from_index(q, d, int(m)) for m in np.flatnonzero(~reducible))
