"""Orbit counting on irreducible polynomials and isotopy-class machinery.

The group G = GammaL(1,q) of pairs (lambda, rho) acts on monic irreducibles
by f -> lambda^(-d) f^rho(lambda y); semifields whose minimal central left
multiples share a G-orbit are isotopic, so the orbit count M(q,d) bounds the
isotopy-class count A(q,n,d) from above.  The spread-set search provides the
matching exhaustive lower bound at order 16.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from math import log2

from . import fqpoly, kernels, semifield
from ._ints import euler_phi, prime_power_split
from .errors import PreconditionError, SizeBoundError, StructuralError
from .fqpoly import CentralPoly
from .gf import build_tower, fq_field
from .semifield import Semifield, spread_matrix
from .skewpoly import SkewPoly, SkewRing, central_lift, is_irreducible, mzlm


@dataclass(frozen=True)
class GroupElem:
    """Element (lambda, rho) of the semidirect product of F_q^x and Aut(F_q)."""

    lam: int
    rho: int  # p-power exponent in [0, h)

    def compose(self, other: "GroupElem", q: int) -> "GroupElem":
        """Group law matching right-to-left action composition."""
        F = fq_field(q)
        _, h = prime_power_split(q)
        return GroupElem(F.mul(F.pfrob(self.lam, other.rho), other.lam), (self.rho + other.rho) % h)


def group_elements(q: int) -> list[GroupElem]:
    _, h = prime_power_split(q)
    return [GroupElem(lam, rho) for rho in range(h) for lam in range(1, q)]


def g_act(f: CentralPoly, g: GroupElem) -> CentralPoly:
    """The action f -> lambda^(-d) f^rho(lambda y) on monic polynomials."""
    if g.lam == 0:
        raise PreconditionError("lambda must be nonzero")
    if not f.is_monic():
        raise PreconditionError("the action is defined on monic polynomials")
    F = f.field
    d = f.degree
    out = []
    for i, c in enumerate(f.coeffs):
        out.append(F.mul(F.pfrob(c, g.rho), F.pow(g.lam, i - d)))
    return CentralPoly(f.q, out)


def enumerate_I(q: int, d: int, bound: int = 2**20):
    """All monic irreducible degree-d polynomials over F_q, enumeration order."""
    if q**d > bound:
        raise SizeBoundError(f"{q**d} candidates exceed bound {bound}")
    return fqpoly.irreducibles(q, d)


def count_N(q: int, d: int) -> int:
    return fqpoly.count_irreducible(q, d)


def theta(q: int, d: int) -> int:
    """Subfield-element count, cross-checked against the Moebius identity."""
    via_incl = fqpoly.subfield_element_count(q, d)
    via_count = q**d - d * count_N(q, d)
    if via_incl != via_count:
        raise StructuralError("subfield counts disagree")
    return via_incl


@dataclass
class OrbitReport:
    q: int
    d: int
    n: int | None
    N: int
    theta: int
    M: int
    lower: Fraction
    upper: int
    orbits: list[tuple[CentralPoly, int, tuple[CentralPoly, ...]]]
    odoni: int | None = None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "n": self.n,
            "N": self.N,
            "theta": self.theta,
            "M": self.M,
            "bounds": {
                "lower": [self.lower.numerator, self.lower.denominator],
                "upper": self.upper,
            },
            "orbits": [
                {
                    "representative": list(rep.coeffs),
                    "representative_text": rep.pretty(),
                    "size": size,
                    "elements": [list(e.coeffs) for e in elems],
                }
                for rep, size, elems in self.orbits
            ],
            "odoni": self.odoni,
        }

    def to_csv(self) -> str:
        lines = ["representative,size,elements"]
        for rep, size, elems in self.orbits:
            elems_txt = ";".join(e.pretty() for e in elems)
            lines.append(f"\"{rep.pretty()}\",{size},\"{elems_txt}\"")
        return "\n".join(lines) + "\n"


def _action_index_arrays(q: int, d: int, polys, group):
    """For each group element, the enumeration index of every image, vectorized."""
    import numpy as np

    F = fq_field(q)
    C = np.array([f.coeffs for f in polys], dtype=np.int64)
    MUL = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    _, h = prime_power_split(q)
    PF = np.array([[F.pfrob(a, j) for a in range(q)] for j in range(h)], dtype=np.int64)
    qpow = q ** np.arange(d, dtype=np.int64)
    out = []
    for g in group:
        lam_pows = [F.pow(g.lam, i - d) for i in range(d + 1)]
        tw = PF[g.rho][C]
        img = np.empty_like(tw)
        for i in range(d + 1):
            img[:, i] = MUL[tw[:, i], lam_pows[i]]
        assert (img[:, d] == 1).all()
        out.append(img[:, :d] @ qpow)
    return out


def orbit_decomposition(
    q: int, d: int, n: int | None = None, include_elements: bool = True
) -> OrbitReport:
    """Orbits of G on I(q,d): each polynomial is joined with its full
    G-image set and labelled by the least member, with counts and bounds."""
    import numpy as np

    polys = enumerate_I(q, d)
    group = group_elements(q)
    imgs = _action_index_arrays(q, d, polys, group)
    pos = np.full(q**d, -1, dtype=np.int64)
    for i, f in enumerate(polys):
        pos[f.index()] = i
    roots = np.arange(len(polys), dtype=np.int64)
    for arr in imgs:
        roots = np.minimum(roots, pos[arr])
    if (roots < 0).any():  # pragma: no cover
        raise StructuralError("the action left the irreducible set")
    p, h = prime_power_split(q)
    N = count_N(q, d)
    th = theta(q, d)
    lower = Fraction(q**d - th, h * d * (q - 1))
    upper = (q**d - th) // d
    classes: dict[int, list[int]] = {}
    for i, r in enumerate(roots):
        classes.setdefault(int(r), []).append(i)
    orbits = []
    for root in sorted(classes):
        members = classes[root]
        elems = tuple(polys[i] for i in members) if include_elements else ()
        orbits.append((polys[root], len(members), elems))
    M = len(orbits)
    if sum(size for _, size, _ in orbits) != N:
        raise StructuralError("orbit sizes do not sum to N")
    if any(len(group) % size for _, size, _ in orbits):
        raise StructuralError("an orbit size does not divide |G|")
    if not (lower <= M <= upper):
        raise StructuralError("orbit count violates its bounds")
    if N != len(polys) or upper != N:
        raise StructuralError("count formula disagrees with enumeration")
    report = OrbitReport(q, d, n, N, th, M, lower, upper, orbits)
    if n is not None:
        report.odoni = odoni_count(q, n, d).formula
    return report


def burnside_count(q: int, d: int) -> int:
    """Orbit count by averaging fixed points over G; independent of union-find."""
    polys = enumerate_I(q, d)
    group = group_elements(q)
    fixed = sum(1 for g in group for f in polys if g_act(f, g) == f)
    assert fixed % len(group) == 0
    return fixed // len(group)


# -- construction of representatives ----------------------------------------


def irreducible_divisor(hhat: CentralPoly, ring: SkewRing, bound: int = 2**16) -> SkewPoly:
    """First monic degree-d right divisor of hhat(t^n) in enumeration order.

    All such divisors are irreducible with mzlm equal to hhat; both facts are
    asserted on the result.
    """
    if not hhat.is_monic() or not hhat.is_irreducible():
        raise PreconditionError("hhat must be monic irreducible")
    if hhat.coeffs == (0, 1):
        raise PreconditionError("hhat = y lifts to a power of t")
    if hhat.q != ring.q:
        raise PreconditionError("hhat is over the wrong F_q")
    d = hhat.degree
    if ring.field.order**d > bound:
        raise SizeBoundError("divisor search space exceeds bound")
    h = central_lift(ring, hhat)
    for f in ring.monic_polys(d):
        if h.mod_r(f).is_zero():
            if not is_irreducible(f):  # pragma: no cover
                raise StructuralError("degree-d divisor of an irreducible lift must be irreducible")
            if mzlm(f) != hhat:  # pragma: no cover
                raise StructuralError("divisor mzlm mismatch")
            return f
    raise StructuralError("no divisor found; hhat(t^n) must factor")  # pragma: no cover


def default_ring(q: int, n: int, sigma_s: int | None = None) -> SkewRing:
    p, h = prime_power_split(q)
    if sigma_s is None:
        sigma_s = 1 if n > 1 else 0
    return SkewRing(build_tower(p, h, n), sigma_s)


def class_representatives(q: int, n: int, d: int, sigma_s: int | None = None) -> list[Semifield]:
    """One semifield per G-orbit representative; length M(q,d)."""
    ring = default_ring(q, n, sigma_s)
    report = orbit_decomposition(q, d, n)
    out = []
    for rep, _, _ in report.orbits:
        f = irreducible_divisor(rep, ring)
        out.append(Semifield(f))
    return out


@dataclass
class OdoniResult:
    formula: int
    exhaustive: int | None
    verified: bool | None
    note: str = ""


def odoni_count(q: int, n: int, d: int, verify_bound: int = 2**16) -> OdoniResult:
    """N(q,d)(q^(nd)-1)/(q^d-1) monic irreducibles of degree d in the ring."""
    value = count_N(q, d) * (q ** (n * d) - 1) // (q**d - 1)
    if (q**n) ** d <= verify_bound:
        ring = default_ring(q, n)
        exhaustive = sum(1 for _ in ring.irreducible_polys(d))
        return OdoniResult(value, exhaustive, exhaustive == value)
    return OdoniResult(value, None, None, "verification skipped: candidate space over bound")


# -- spread-set equivalence ---------------------------------------------------


@dataclass
class SpreadsetResult:
    status: str  # equivalent | not_equivalent | inconclusive
    H: list[list[int]] | None = None
    G: list[list[int]] | None = None
    checked: int = 0
    elapsed_ms: float = 0.0
    note: str = ""

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"


def _pack_gf2(M) -> int:
    out = 0
    nd = len(M)
    for r in range(nd):
        for c in range(nd):
            if M[r][c]:
                out |= 1 << (r * nd + c)
    return out


def _unpack_gf2(x: int, nd: int) -> list[list[int]]:
    return [[(x >> (r * nd + c)) & 1 for c in range(nd)] for r in range(nd)]


def _budget_ms(budget_ms) -> float | None:
    if budget_ms is not None:
        return float(budget_ms)
    env = os.environ.get("SKEWSF_BUDGET_MS")
    return float(env) if env else None


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SKEWSF_THREADS", "1")))
    except ValueError:
        return 1


def spreadset_equivalence(S, S2, budget_ms=None, exhaustive_bound: int = 16) -> SpreadsetResult:
    """Search for invertible F_q-linear H, G with H L_a G^-1 running over the
    spread set of S2; existence is equivalent to isotopy.

    Both spread sets contain the identity, so G is constrained to
    (L'_b)^-1 H and the scan covers GL x S2.  Exhaustive (hence able to prove
    non-equivalence) only for q = 2 at order <= `exhaustive_bound`; larger
    instances run against a time budget and may come back inconclusive.
    """
    t0 = time.perf_counter()
    q1 = semifield._fq_params(S)[0]
    q2 = semifield._fq_params(S2)[0]
    if S.order != S2.order or S.p != S2.p or q1 != q2:
        return SpreadsetResult("not_equivalent", note="different parameters")
    # Isotopy invariants first: nuclei sizes(incl. associativity via the cube).
    if S.nuclei_sizes() != S2.nuclei_sizes():
        return SpreadsetResult("not_equivalent", note="nuclei sizes differ")
    q, h, n, d = semifield._fq_params(S)
    nd = n * d
    src = [spread_matrix(S, a) for a in range(1, S.order)]
    dst = [spread_matrix(S2, b) for b in range(1, S2.order)]
    if {tuple(map(tuple, A)) for A in src} == {tuple(map(tuple, B)) for B in dst}:
        ident = [[1 if i == j else 0 for j in range(nd)] for i in range(nd)]
        return SpreadsetResult("equivalent", ident, ident, 0, _ms(t0), "identical spread sets")
    if q == 2 and S.order <= exhaustive_bound:
        return _search_gf2(src, dst, nd, t0)
    budget = _budget_ms(budget_ms)
    if budget is None:
        raise SizeBoundError(
            "exhaustive search is limited to order 16 over F_2; pass a budget for the opt-in scan"
        )
    return _search_generic(S, src, dst, nd, q, budget, t0)


def _ms(t0) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _search_gf2(src, dst, nd, t0) -> SpreadsetResult:
    packed_src = [_pack_gf2(A) for A in src]
    packed_dst = [_pack_gf2(B) for B in dst]
    total = 1 << (nd * nd)
    chunk = 1 << 12
    threads = _threads()
    checked = 0
    witness = None
    if threads > 1 and kernels.IMPL_NAME == "compiled":
        from concurrent.futures import ThreadPoolExecutor

        ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for wave_start in range(0, len(ranges), threads):
                wave = ranges[wave_start : wave_start + threads]
                futs = [
                    pool.submit(kernels.spreadset_chunk_gf2, packed_src, packed_dst, nd, lo, hi)
                    for lo, hi in wave
                ]
                results = [f.result() for f in futs]
                checked += sum(hi - lo for lo, hi in wave)
                hits = [r for r in results if r is not None]
                if hits:
                    witness = min(hits)
                    break
    else:
        for lo in range(0, total, chunk):
            hi = min(lo + chunk, total)
            witness = kernels.spreadset_chunk_gf2(packed_src, packed_dst, nd, lo, hi)
            checked = hi
            if witness is not None:
                break
    if witness is None:
        return SpreadsetResult("not_equivalent", checked=checked, elapsed_ms=_ms(t0))
    hpack, b_idx = witness
    H = _unpack_gf2(hpack, nd)
    # G = (L'_b)^-1 H over F_2
    Fp = fq_field(2)
    from . import linalg

    lbinv = linalg.inverse(Fp, dst[b_idx])
    G = linalg.mat_mul(Fp, lbinv, H)
    return SpreadsetResult("equivalent", H, G, checked, _ms(t0))


def _gl_matrices(q: int, nd: int):
    """Invertible nd x nd matrices over F_q, row by row, lexicographic."""
    from . import linalg

    F = fq_field(q)

    def rows_from(prefix, sb):
        if len(prefix) == nd:
            yield [list(r) for r in prefix]
            return
        for enc in range(q**nd):
            row = [(enc // q**i) % q for i in range(nd)]
            sb2 = _copy_span(sb)
            if not sb2.add(row):
                continue
            yield from rows_from(prefix + [row], sb2)

    yield from rows_from([], linalg.SpanBuilder(F, nd))


def _copy_span(sb):
    from . import linalg

    out = linalg.SpanBuilder(sb.F, sb.dim)
    out.rows = [(pc, list(row), list(comb)) for pc, row, comb in sb.rows]
    out.count = sb.count
    return out


def _search_generic(S, src, dst, nd, q, budget_ms, t0) -> SpreadsetResult:
    from . import linalg

    F = fq_field(q)
    dst_set = {tuple(map(tuple, B)) for B in dst}
    dst_inv = [linalg.inverse(F, B) for B in dst]
    checked = 0
    for H in _gl_matrices(q, nd):
        checked += 1
        if checked % 64 == 0 and _ms(t0) > budget_ms:
            return SpreadsetResult(
                "inconclusive", checked=checked, elapsed_ms=_ms(t0), note="budget expired"
            )
        Hinv = linalg.inverse(F, H)
        conj = [linalg.mat_mul(F, linalg.mat_mul(F, H, A), Hinv) for A in src]
        for b_idx, lb in enumerate(dst):
            ok = True
            for C in conj:
                if tuple(map(tuple, linalg.mat_mul(F, C, lb))) not in dst_set:
                    ok = False
                    break
            if ok:
                G = linalg.mat_mul(F, dst_inv[b_idx], H)
                return SpreadsetResult("equivalent", H, G, checked, _ms(t0))
    return SpreadsetResult("not_equivalent", checked=checked, elapsed_ms=_ms(t0))


# -- bound summary ------------------------------------------------------------


@dataclass
class BoundsReport:
    q: int
    n: int
    d: int
    N: int
    theta: int
    M: int
    lower: Fraction
    kantor_liebler: int
    dempwolff: int
    jha_johnson_lower: Fraction | None
    kl_total: float
    totient_remark: Fraction | None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "N": self.N,
            "theta": self.theta,
            "M": self.M,
            "lower": [self.lower.numerator, self.lower.denominator],
            "kantor_liebler": self.kantor_liebler,
            "dempwolff": self.dempwolff,
            "jha_johnson_lower": (
                [self.jha_johnson_lower.numerator, self.jha_johnson_lower.denominator]
                if self.jha_johnson_lower is not None
                else None
            ),
            "kl_total": self.kl_total,
            "totient_remark": (
                [self.totient_remark.numerator, self.totient_remark.denominator]
                if self.totient_remark is not None
                else None
            ),
        }


def bounds_report(q: int, n: int, d: int) -> BoundsReport:
    """All published bounds on A(q,n,d), with the chain ordering asserted."""
    p, h = prime_power_split(q)
    N = count_N(q, d)
    th = theta(q, d)
    M = orbit_decomposition(q, d).M
    lower = Fraction(q**d - th, h * d * (q - 1))
    kl = q**d - 1
    jj = Fraction(q**d - th, 2 * d * h * q * (q - 1)) if n == 2 else None
    kl_total = n * d * (q ** (n * d / 2)) * log2(q)
    # The totient remark applies only for n != 2; its n = 2 form is unstated.
    tot = Fraction(euler_phi(n), 2) * M if n != 2 else None
    if not (lower <= M <= N <= kl):
        raise StructuralError("bound chain violated")
    return BoundsReport(q, n, d, N, th, M, lower, kl, N, jj, kl_total, tot)
