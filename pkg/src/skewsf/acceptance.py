"""Desk-scale acceptance battery: every reproduced value with its check.

Each suite returns a CriterionResult; the CLI `verify` command and the test
suite both run these.  Checks that cannot be reproduced at desk scale
(tightness of M(q,2) for q in {3,4,5}, the independent validation of the
Jha-Johnson and Kantor-Liebler bounds) are recorded as notes, never asserted.
"""

from __future__ import annotations

import inspect
import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import classify, fqpoly, semifield, semilinear, skewpoly
from .errors import SkewsfError
from .fqpoly import CentralPoly
from .gf import build_tower, norm_preimage
from .semifield import Semifield, nucleus, verify_triple
from .skewpoly import SkewRing, central_lift, eigenring, matrix_rep, mzlm, similar_witness

PAPER_SOURCED = (
    "tightness of M(q,2) for q in {3,4,5} is reported from the literature; "
    "the exhaustive isotopy search at orders >= 81 exceeds the desk budget, "
    "so only the q = 2 case is re-verified here"
)
NOT_VALIDATED = (
    "the Jha-Johnson lower bound and the Kantor-Liebler global bound are "
    "computed and ordered but not independently validated"
)


@dataclass
class CriterionResult:
    key: str
    criterion: int
    passed: bool
    details: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "criterion": self.criterion,
            "passed": self.passed,
            "details": self.details,
            "notes": self.notes,
        }


def _ring(q: int, n: int, s: int = 1) -> SkewRing:
    return classify.default_ring(q, n, s)


@lru_cache(maxsize=None)
def _nuclei_sample() -> tuple:
    """The (q, n, d, sigma_s, count) grid used by criteria 5, 6 and 12.

    Orders stay at or below 4096 with n, d >= 2 throughout; 66 cases total.
    """
    grid = [
        (2, 2, 2, 1, 5),
        (3, 2, 2, 1, 6),
        (2, 3, 2, 1, 6),
        (2, 3, 2, 2, 3),
        (2, 2, 3, 1, 6),
        (4, 2, 2, 1, 4),
        (2, 2, 4, 1, 3),
        (2, 4, 2, 1, 3),
        (2, 4, 2, 3, 2),
        (3, 2, 3, 1, 3),
        (3, 3, 2, 1, 3),
        (3, 3, 2, 2, 2),
        (5, 2, 2, 1, 3),
        (7, 2, 2, 1, 2),
        (2, 2, 6, 1, 2),
        (2, 6, 2, 1, 2),
        (2, 6, 2, 5, 1),
        (2, 3, 4, 1, 2),
        (2, 4, 3, 1, 2),
        (4, 2, 3, 1, 2),
        (4, 3, 2, 1, 2),
        (8, 2, 2, 1, 2),
    ]
    cases = []
    for q, n, d, s, count in grid:
        ring = _ring(q, n, s)
        for f in ring.irreducible_polys(d, count=count):
            cases.append((q, n, d, s, f))
    return tuple(cases)


def check_paper_table() -> CriterionResult:
    t0 = time.perf_counter()
    expected = {2: 1, 3: 2, 4: 1, 5: 3}
    details, ok = [], True
    for q, m_expected in expected.items():
        rep = classify.orbit_decomposition(q, 2)
        good = rep.M == m_expected
        ok &= good
        details.append(f"M({q},2) = {rep.M} (expected {m_expected})")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        ok = False
        details.append(f"runtime {elapsed:.2f}s exceeded 1s")
    return CriterionResult("paper-table", 1, ok, details, [PAPER_SOURCED], elapsed)


def check_isotopy16(budget_s: float = 60.0) -> CriterionResult:
    """All five order-16 semifields are pairwise spread-set equivalent."""
    t0 = time.perf_counter()
    ring = _ring(2, 2)
    irr = list(ring.irreducible_polys(2))
    details, ok = [f"{len(irr)} monic irreducible quadratics over F_4[t;sigma]"], True
    if len(irr) != 5:
        ok = False
    semis = [Semifield(f) for f in irr]
    classes = list(range(5))
    for i, j in itertools.combinations(range(5), 2):
        res = classify.spreadset_equivalence(semis[i], semis[j])
        if not res.equivalent:
            ok = False
            details.append(f"pair ({i},{j}): {res.status}")
        else:
            classes[j] = min(classes[j], classes[i])
    n_classes = len(set(classes))
    details.append(f"isotopy classes found: {n_classes} (expected 1 = M(2,2))")
    ok &= n_classes == 1
    elapsed = time.perf_counter() - t0
    if elapsed >= budget_s:
        ok = False
        details.append(f"runtime {elapsed:.1f}s exceeded {budget_s}s")
    return CriterionResult("isotopy16", 2, ok, details, [PAPER_SOURCED], elapsed)


_COUNT_GRID = [(q, d) for q in (2, 3, 4, 5, 7, 8, 9) for d in range(1, 7)]
_ODONI_GRID = [(2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3)]


def check_counting() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for q, d in _COUNT_GRID:
        n_formula = classify.count_N(q, d)
        n_enum = len(classify.enumerate_I(q, d))
        if n_formula != n_enum:
            ok = False
            details.append(f"N({q},{d}) formula {n_formula} != enumeration {n_enum}")
    details.insert(0, f"count_N == |enumerate_I| on {len(_COUNT_GRID)} (q,d) pairs")
    return CriterionResult(
        "counting", 3, ok, details, elapsed_s=time.perf_counter() - t0
    )


def check_odoni() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for q, n, d in _ODONI_GRID:
        res = classify.odoni_count(q, n, d)
        good = res.verified is True
        ok &= good
        details.append(
            f"odoni({q},{n},{d}) = {res.formula}, exhaustive {res.exhaustive}"
        )
    return CriterionResult("odoni", 3, ok, details, elapsed_s=time.perf_counter() - t0)


def check_bounds() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for q, d in _COUNT_GRID:
        rep = classify.orbit_decomposition(q, d, include_elements=False)
        if not (rep.lower <= rep.M <= rep.upper):
            ok = False
            details.append(f"bound chain fails at ({q},{d})")
        p, h = classify.prime_power_split(q)
        from math import gcd

        # The exactness claim needs d >= 2: at d = 1 the polynomial y is a
        # fixed point of the scaling action and N/(q-1) is not an integer.
        if h == 1 and d >= 2 and gcd(q - 1, d) == 1:
            if rep.M * (q - 1) != rep.N:
                ok = False
                details.append(f"M != N/(q-1) at prime q = {q}, d = {d}")
    details.insert(0, f"(q^d-theta)/(hd(q-1)) <= M <= (q^d-theta)/d on {len(_COUNT_GRID)} pairs")
    details.append("M = N/(q-1) exact at prime q with gcd(q-1,d) = 1, d >= 2")
    return CriterionResult(
        "bounds", 4, ok, details, [NOT_VALIDATED], time.perf_counter() - t0
    )


def check_nuclei() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    cases = _nuclei_sample()
    checked = 0
    for q, n, d, s, f in cases:
        S = Semifield(f)
        sizes = []
        for which in ("centre", "left", "middle", "right"):
            # nucleus() raises StructuralError when scan and theory disagree
            members = nucleus(S, which)
            sizes.append(len(members))
        if tuple(sizes) != (q, q**n, q**n, q**d):
            ok = False
            details.append(f"size tuple {tuple(sizes)} at (q,n,d,s)=({q},{n},{d},{s})")
        checked += 1
    details.insert(0, f"{checked} semifields at orders <= 4096: brute-force nuclei "
                      f"equal predictions, sizes (q, q^n, q^n, q^d)")
    if checked < 50:
        ok = False
        details.append(f"sample too small: {checked} < 50")
    return CriterionResult("nuclei", 5, ok, details, elapsed_s=time.perf_counter() - t0)


def check_eigenring() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for q, n, d, s, f in _nuclei_sample():
        E = eigenring(f)
        encs = E.element_encodings()
        if len(encs) != q**d:
            ok = False
            details.append(f"|E(f)| = {len(encs)} != q^d at ({q},{n},{d},{s})")
        # residues of central elements: span of t^(n*i) mod f
        ring = f.ring
        r = ring.one()
        tn = ring.t(n)
        vecs = []
        for _ in range(d):
            vecs.append(r)
            r = (tn * r).mod_r(f)
        central = {0}
        for v in skewpoly._span_nonzero(ring, vecs, d):
            central.add(v.encode(d))
        if tuple(sorted(central)) != encs:
            ok = False
            details.append(f"E(f) != central residues at ({q},{n},{d},{s})")
    details.insert(0, f"{len(_nuclei_sample())} cases: |E(f)| = q^d and "
                      "E(f) = central residues setwise")
    return CriterionResult("eigenring", 6, ok, details, elapsed_s=time.perf_counter() - t0)


def check_similarity() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for q, n, d in ((2, 2, 2), (3, 2, 2)):
        ring = _ring(q, n)
        irr = list(ring.irreducible_polys(d))
        pairs = 0
        agree = 0
        for f, g in itertools.product(irr, repeat=2):
            w = similar_witness(f, g)  # raises if presence and mzlm disagree
            pairs += 1
            agree += (w is not None) == (mzlm(f) == mzlm(g))
        if agree != pairs:
            ok = False
        details.append(f"({q},{n},{d}): {agree}/{pairs} pairs agree with mzlm equality")
    return CriterionResult("similarity", 7, ok, details, elapsed_s=time.perf_counter() - t0)


def check_isotopisms() -> CriterionResult:
    """Constructed triples verify exhaustively at orders 16 and 81."""
    t0 = time.perf_counter()
    details, ok = [], True
    for q, n, d in ((2, 2, 2), (3, 2, 2)):
        ring = _ring(q, n)
        irr = list(ring.irreducible_polys(d, count=6))
        semis = {f: Semifield(f) for f in irr}
        n_similar = 0
        for f, g in itertools.permutations(irr, 2):
            u = similar_witness(f, g)
            if u is None:
                continue
            tri = semifield.isotopism_from_similarity(f, g, u)
            if not verify_triple(semis[g], semis[f], tri):
                ok = False
                details.append(f"similar triple failed at ({q},{n},{d})")
            n_similar += 1
        n_isom = 0
        for f in irr[:3]:
            for alpha in range(1, min(q**n, 4)):
                iso = semifield.isomorphism_from_ring_automorphism(f, alpha, 0)
                if not verify_triple(iso.source, iso.target, iso.triple()):
                    ok = False
                    details.append(f"isom triple failed at ({q},{n},{d}), alpha={alpha}")
                n_isom += 1
        details.append(f"({q},{n},{d}): {n_similar} similarity triples, {n_isom} isom triples")
    # Full composition chain between different G-orbit fibers at (3,2,2).
    ring = _ring(3, 2)
    desc = ring.field
    fibers: dict[CentralPoly, list] = {}
    for f in ring.irreducible_polys(2, count=12):
        fibers.setdefault(mzlm(f), []).append(f)
    fhat = CentralPoly(3, (2, 1, 1))  # y^2 + y + 2
    lam = 2
    ghat = classify.g_act(fhat, classify.GroupElem(lam, 0))
    f = fibers[fhat][0]
    g = fibers[ghat][0]
    alpha = norm_preimage(desc.elem(lam))
    h = skewpoly.apply_ring_automorphism(f, int(alpha), 0).monic()
    if mzlm(h) != ghat:
        ok = False
        details.append("twisted image has the wrong mzlm")
    iso = semifield.isomorphism_from_ring_automorphism(f, int(alpha), 0)
    u = similar_witness(h, g)
    if u is None:
        ok = False
        details.append("no witness between the twisted pair")
    else:
        tri_sim = semifield.isotopism_from_similarity(h, g, u)  # S_g -> S_h
        chain = tri_sim.compose(iso.triple().inverse())  # then S_h -> S_f
        if not verify_triple(Semifield(g), Semifield(f), chain):
            ok = False
            details.append("composed isotopism chain failed to verify at order 81")
        else:
            details.append(
                "composed chain S_g -> S_h -> S_f verified exhaustively at order 81"
            )
    return CriterionResult("isotopisms", 8, ok, details, elapsed_s=time.perf_counter() - t0)


def check_correspondence(seed: int = 20260810) -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    table_grid = [(2, 2, 2, 2), (3, 2, 2, 1), (2, 3, 2, 1), (2, 2, 3, 1), (2, 2, 4, 1), (4, 2, 2, 1)]
    for q, n, d, count in table_grid:
        ring = _ring(q, n)
        for f in ring.irreducible_polys(d, count=count):
            S = Semifield(f)
            T = semilinear.companion_of(f)
            CA = semilinear.CyclicAlgebra(T)
            if not np.array_equal(S.table(), CA.table()):
                ok = False
                details.append(f"table mismatch at ({q},{n},{d})")
    details.append("S_f = S_(L_t,f) tables identical at orders <= 256")
    # L_a = a(L_t) as semilinear operators, sampled a
    ring = _ring(2, 2)
    f = next(ring.irreducible_polys(2))
    S = Semifield(f)
    T = semilinear.companion_of(f)
    desc = ring.field
    for a_enc in range(S.order):
        a = S.decode(a_enc)
        coeffs = list(a.coeffs) + [0] * (S.d - len(a.coeffs))
        for b_enc in range(S.order):
            vb = semilinear.vec_decode(desc, b_enc, S.d)
            acc = [0] * S.d
            w = vb
            for i in range(S.d):
                c = coeffs[i]
                if c:
                    acc = [desc.K.add(x, desc.K.mul(c, y)) for x, y in zip(acc, w)]
                w = T.apply(w)
            if semilinear.vec_encode(desc, acc) != S.encode(S.mul(a, S.decode(b_enc))):
                ok = False
                details.append(f"L_a != a(L_t) at a={a_enc}, b={b_enc}")
                break
    details.append("L_a = a(L_t) for all a at order 16")
    # conjugate_to_companion round trip on 100 random irreducible maps over F_4^2
    rng = random.Random(seed)
    desc4 = build_tower(2, 1, 2)
    count = 0
    for _ in range(100):
        T = semilinear.random_irreducible_semilinear(desc4, 1, 2, rng)
        phi, fT = semilinear.conjugate_to_companion(T)  # asserts T phi = phi L internally
        if semilinear.min_poly_T_pow_n(T) != mzlm(fT):
            ok = False
            details.append("recovered polynomial has the wrong mzlm")
        count += 1
    details.append(f"conjugate_to_companion round-trips on {count} random maps")
    return CriterionResult("correspondence", 9, ok, details, elapsed_s=time.perf_counter() - t0)


_ORACLE_CACHE: dict = {}


def _semilinear_group(desc, d: int, auts: tuple):
    key = (id(desc), d, auts)
    if key not in _ORACLE_CACHE:
        maps = []
        for rho in auts:
            for mats in itertools.product(range(desc.order), repeat=d * d):
                A = [list(mats[i * d : (i + 1) * d]) for i in range(d)]
                phi = semilinear.SemilinearMap(desc, rho, A)
                if phi.is_invertible():
                    maps.append((phi, phi.inverse()))
        _ORACLE_CACHE[key] = maps
    return _ORACLE_CACHE[key]


def _gamma_l_oracle(T, U, group: str) -> bool:
    """Exhaustive conjugacy ground truth: scan GL(d,K) (and Aut(K) twists)."""
    desc = T.desc
    auts = tuple(range(desc.n)) if group == "GammaL" else (0,)
    for phi, phi_inv in _semilinear_group(desc, T.d, auts):
        if phi_inv.compose(U).compose(phi) == T:
            return True
    return False


def check_conjugacy(seed: int = 0) -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    for q, n, d in ((2, 2, 2), (3, 2, 2)):
        desc = build_tower(*classify.prime_power_split(q), n)
        rng = random.Random(97 + q + seed)
        agree = 0
        cases = 0
        for case in range(100):
            T = semilinear.random_irreducible_semilinear(desc, 1, d, rng)
            if case % 2 == 0:
                phi = semilinear.SemilinearMap(
                    desc, 0, semilinear.random_invertible_matrix(desc, d, rng)
                )
                U = semilinear.conjugate(T, phi)
                truth = True  # GL-conjugate by construction
            else:
                U = semilinear.random_irreducible_semilinear(desc, 1, d, rng)
                truth = _gamma_l_oracle(T, U, "GL")
            got = semilinear.conjugacy_test(T, U, "GL")
            agree += got == truth
            cases += 1
            if got != truth:
                ok = False
        details.append(f"({q},{n},{d}): GL criterion agrees with ground truth on {agree}/{cases}")
        # GammaL spot checks against the exhaustive oracle
        gcases = 0
        gagree = 0
        rng2 = random.Random(7 + q + seed)
        for _ in range(6):
            T = semilinear.random_irreducible_semilinear(desc, 1, d, rng2)
            U = semilinear.random_irreducible_semilinear(desc, 1, d, rng2)
            truth = _gamma_l_oracle(T, U, "GammaL")
            got = semilinear.conjugacy_test(T, U, "GammaL")
            gagree += got == truth
            gcases += 1
            if got != truth:
                ok = False
        details.append(f"({q},{n},{d}): GammaL agrees on {gagree}/{gcases} sampled cases")
    return CriterionResult("conjugacy", 10, ok, details, elapsed_s=time.perf_counter() - t0)


def _psi_exhaustive_deg3() -> bool:
    """Vectorized anti-multiplicativity over every pair of degree-<=3 polys over F_4."""
    desc = build_tower(2, 1, 2)
    ring = SkewRing(desc, 1)
    target = ring.anti_partner()
    Q, n = 4, 2
    FR = np.array(
        [[desc.qfrob(x, e) for x in range(Q)] for e in range(n)], dtype=np.int64
    )
    MUL = np.array([[desc.K.mul(a, b) for b in range(Q)] for a in range(Q)], dtype=np.int64)
    polys = np.array([[(m >> (2 * i)) & 3 for i in range(4)] for m in range(256)], dtype=np.int64)
    ai = np.repeat(np.arange(256), 256)
    bi = np.tile(np.arange(256), 256)
    A, B = polys[ai], polys[bi]

    def skew_mul_all(X, Y, s):
        # product coefficients in K[t; x -> x^(q^s)]
        out = np.zeros((X.shape[0], 7), dtype=np.int64)
        for i in range(4):
            for j in range(4):
                term = MUL[X[:, i], FR[(s * i) % n][Y[:, j]]]
                out[:, i + j] ^= term
        return out

    def psi(X):
        out = np.zeros_like(X)
        for i in range(X.shape[1]):
            out[:, i] = FR[(-i) % n][X[:, i]]
        return out

    lhs = psi(skew_mul_all(A, B, ring.sigma_s))
    rhs = skew_mul_all(psi(B), psi(A), target.sigma_s)
    return bool(np.array_equal(lhs, rhs))


def check_structmaps(seed: int = 11) -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    if _psi_exhaustive_deg3():
        details.append("anti-involution: psi(ab) = psi(b) psi(a) on all 65536 pairs, deg <= 3 over F_4")
    else:
        ok = False
        details.append("anti-involution failed")
    # Jacobson isomorphism: 1000 random pairs for each derivation parameter
    desc = build_tower(2, 1, 2)
    ring = SkewRing(desc, 1)
    rng = random.Random(seed)
    for x in range(4):
        target = ring.derivation_ring(x) if x else ring
        good = 0
        for _ in range(1000):
            a = ring.poly([rng.randrange(4) for _ in range(4)])
            b = ring.poly([rng.randrange(4) for _ in range(4)])
            pa = skewpoly.derivation_ring_iso(a, target)
            pb = skewpoly.derivation_ring_iso(b, target)
            good += skewpoly.derivation_ring_iso(a * b, target) == pa * pb
        if good != 1000:
            ok = False
        details.append(f"derivation iso multiplicative on {good}/1000 pairs, x = {x}")
    # matrix representation at (2,2,2)
    ring4 = _ring(2, 2)
    irr = list(ring4.irreducible_polys(2))
    rng = random.Random(13)
    for f in irr:
        Af = matrix_rep(f, f)
        if Af.rank() != ring4.n - 1:
            ok = False
            details.append(f"rank(A(f)) != n-1 for f = {f}")
        h = central_lift(ring4, mzlm(f))
        for _ in range(40):
            u = ring4.poly([rng.randrange(4) for _ in range(4)])
            v = ring4.poly([rng.randrange(4) for _ in range(4)])
            if matrix_rep((u * v).mod_r(h), f) != matrix_rep(u, f) @ matrix_rep(v, f):
                ok = False
                details.append(f"A(uv) != A(u)A(v) for f = {f}")
                break
    details.append("matrix_rep multiplicative mod h; rank(A(f)) = n-1 for all 5 irreducibles")
    return CriterionResult("structmaps", 11, ok, details, elapsed_s=time.perf_counter() - t0)


def check_nonassoc() -> CriterionResult:
    t0 = time.perf_counter()
    details, ok = [], True
    witnesses = 0
    for q, n, d, s, f in _nuclei_sample():
        S = Semifield(f)
        w = S.associativity_witness()
        if w is None:
            ok = False
            details.append(f"S_f unexpectedly associative at ({q},{n},{d},{s})")
        else:
            witnesses += 1
    details.append(f"non-associativity witnesses found for all {witnesses} sampled semifields")
    # every central lift of degree <= 2 factors
    factored = 0
    for q, n in ((2, 2), (3, 2), (2, 3)):
        ring = _ring(q, n)
        for dd in (1, 2):
            for hhat in fqpoly.irreducibles(q, dd):
                h = central_lift(ring, hhat)
                if hhat.coeffs == (0, 1):
                    a, b = ring.t(n - 1), ring.t(1)
                else:
                    f = classify.irreducible_divisor(hhat, ring)
                    a, b = h.right_divmod(f)[0], f
                if (a * b) != h or a.degree < 1 or b.degree < 1:
                    ok = False
                    details.append(f"central lift of {hhat} did not factor over ({q},{n})")
                else:
                    factored += 1
    details.append(f"{factored} central lifts of degree <= 2 factored in R")
    return CriterionResult("nonassoc", 12, ok, details, elapsed_s=time.perf_counter() - t0)


SUITES = {
    "paper-table": (check_paper_table, False),
    "isotopy16": (check_isotopy16, True),
    "counting": (check_counting, False),
    "odoni": (check_odoni, False),
    "bounds": (check_bounds, False),
    "nuclei": (check_nuclei, False),
    "eigenring": (check_eigenring, False),
    "similarity": (check_similarity, False),
    "isotopisms": (check_isotopisms, False),
    "correspondence": (check_correspondence, False),
    "conjugacy": (check_conjugacy, False),
    "structmaps": (check_structmaps, False),
    "nonassoc": (check_nonassoc, False),
}


def run(keys=None, long: bool = False, seed: int | None = None) -> list[CriterionResult]:
    """Run the named suites (all non-long ones by default)."""
    if keys:
        unknown = [k for k in keys if k not in SUITES]
        if unknown:
            raise SkewsfError(f"unknown suites: {', '.join(unknown)}")
        selected = list(keys)
    else:
        selected = [k for k, (_, is_long) in SUITES.items() if long or not is_long]
    out = []
    for key in selected:
        fn, _ = SUITES[key]
        kwargs = {}
        if seed is not None and "seed" in inspect.signature(fn).parameters:
            kwargs["seed"] = seed
        out.append(fn(**kwargs))
    return out
