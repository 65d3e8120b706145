"""Orbit counting, representative construction, and spread-set equivalence."""

import itertools

import pytest

from skewsf import classify as cl, fqpoly, gf, semifield as sf, skewpoly as sp
from skewsf.errors import PreconditionError, SizeBoundError
from skewsf.fqpoly import CentralPoly


def test_enumerate_known_values():
    assert [f.coeffs for f in cl.enumerate_I(2, 2)] == [(1, 1, 1)]
    assert [f.pretty() for f in cl.enumerate_I(3, 2)] == [
        "y^2 + 1",
        "y^2 + y + 2",
        "y^2 + 2*y + 2",
    ]
    assert len(cl.enumerate_I(4, 2)) == 6
    with pytest.raises(SizeBoundError):
        cl.enumerate_I(2, 2, bound=2)


@pytest.mark.parametrize("q,d,expected", [(2, 2, 1), (3, 2, 3), (2, 1, 2), (9, 2, 36)])
def test_count_N(q, d, expected):
    assert cl.count_N(q, d) == expected


def test_theta_cross_checked():
    for q, d in itertools.product((2, 3, 4, 9), range(1, 7)):
        th = cl.theta(q, d)
        assert th == q**d - d * cl.count_N(q, d)


def test_g_act_worked_examples():
    f = CentralPoly(3, (2, 1, 1))  # y^2 + y + 2
    ident = cl.GroupElem(1, 0)
    assert cl.g_act(f, ident) == f
    g = cl.GroupElem(2, 0)
    assert cl.g_act(f, g) == CentralPoly(3, (2, 2, 1))
    fixed = CentralPoly(3, (1, 0, 1))  # y^2 + 1
    assert cl.g_act(fixed, g) == fixed
    with pytest.raises(PreconditionError):
        cl.g_act(f, cl.GroupElem(0, 0))


def test_g_act_is_group_action():
    q = 4
    group = cl.group_elements(q)
    assert len(group) == 2 * 3  # h(q-1)
    polys = cl.enumerate_I(q, 2)
    for f in polys:
        assert cl.g_act(f, cl.GroupElem(1, 0)) == f
        for g1 in group:
            img = cl.g_act(f, g1)
            assert img in polys  # closure on I(q,d)
            for g2 in group:
                assert cl.g_act(img, g2) == cl.g_act(f, g1.compose(g2, q))


def test_orbit_decomposition_paper_values():
    for q, m in ((2, 1), (3, 2), (4, 1), (5, 3)):
        rep = cl.orbit_decomposition(q, 2)
        assert rep.M == m
        assert rep.lower <= rep.M <= rep.upper
        assert sum(size for _, size, _ in rep.orbits) == rep.N


def test_orbit_against_burnside():
    for q, d in ((2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (8, 2), (9, 2)):
        assert cl.orbit_decomposition(q, d).M == cl.burnside_count(q, d)


def test_orbit_sizes_divide_group_order():
    for q, d in ((4, 2), (8, 2), (9, 2), (4, 3)):
        _, h = cl.prime_power_split(q)
        rep = cl.orbit_decomposition(q, d)
        for _, size, _ in rep.orbits:
            assert (h * (q - 1)) % size == 0


def test_orbit_representatives_are_least():
    rep = cl.orbit_decomposition(3, 2)
    for r, _, elems in rep.orbits:
        assert r == min(elems, key=lambda f: f.index())


def test_prime_q_exact_count():
    # gcd(q-1, d) = 1, d >= 2: M = N / (q-1)
    for q, d in ((3, 3), (5, 3), (2, 4), (7, 5)):
        rep = cl.orbit_decomposition(q, d, include_elements=False)
        assert rep.M * (q - 1) == rep.N


def test_m_q_1_sanity():
    """Degree 1: y is a fixed point, all other linear polynomials one orbit."""
    for q in (3, 5, 9):
        rep = cl.orbit_decomposition(q, 1)
        assert rep.M == 2
        assert rep.lower <= rep.M <= rep.upper


def test_irreducible_divisor(ring4, ring9):
    f = cl.irreducible_divisor(CentralPoly(2, (1, 1, 1)), ring4)
    assert sp.is_irreducible(f) and f.degree == 2
    assert sp.central_lift(ring4, CentralPoly(2, (1, 1, 1))).mod_r(f).is_zero()
    for hhat in fqpoly.irreducibles(3, 2):
        g = cl.irreducible_divisor(hhat, ring9)
        assert sp.mzlm(g) == hhat and g.degree == 2
    with pytest.raises(PreconditionError):
        cl.irreducible_divisor(CentralPoly(2, (0, 1)), ring4)  # y itself
    with pytest.raises(PreconditionError):
        cl.irreducible_divisor(CentralPoly(2, (1, 0, 1)), ring4)  # reducible


def test_class_representatives():
    reps = cl.class_representatives(2, 2, 2)
    assert len(reps) == 1 and reps[0].order == 16
    reps3 = cl.class_representatives(3, 2, 2)
    assert len(reps3) == 2 and all(S.order == 81 for S in reps3)
    for S in reps3:
        assert sf.check_axioms(S).all_ok
        assert tuple(len(sf.nucleus(S, w)) for w in ("centre", "left", "middle", "right")) == (
            3,
            9,
            9,
            9,
        )
    reps5 = cl.class_representatives(5, 2, 2)
    assert len(reps5) == 3 and all(S.order == 625 for S in reps5)
    # a different Frobenius generator works the same way
    reps_alt = cl.class_representatives(2, 3, 2, sigma_s=2)
    assert len(reps_alt) == 1 and reps_alt[0].ring.sigma_s == 2


def test_odoni_counts():
    assert cl.odoni_count(2, 2, 2).formula == 5
    assert cl.odoni_count(3, 2, 2).formula == 30
    assert cl.odoni_count(2, 3, 2).formula == 21
    for q, n, d in ((2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3)):
        res = cl.odoni_count(q, n, d)
        assert res.verified is True and res.exhaustive == res.formula
    big = cl.odoni_count(4, 4, 4)
    assert big.verified is None and "skipped" in big.note


def test_spreadset_reflexive_and_symmetric(ring4):
    irr = list(ring4.irreducible_polys(2))
    S0, S1 = sf.Semifield(irr[0]), sf.Semifield(irr[1])
    assert cl.spreadset_equivalence(S0, S0).equivalent
    r01 = cl.spreadset_equivalence(S0, S1)
    r10 = cl.spreadset_equivalence(S1, S0)
    assert r01.equivalent and r10.equivalent
    # witness inversion: H^-1, G^-1 witnesses the reverse direction
    from skewsf import linalg

    F2 = gf.fq_field(2)
    Hinv = linalg.inverse(F2, r01.H)
    src = {tuple(map(tuple, sf.spread_matrix(S1, b))) for b in range(1, 16)}
    dst = {tuple(map(tuple, sf.spread_matrix(S0, a))) for a in range(1, 16)}
    # (H^-1, G^-1) witnesses the reverse direction: H^-1 L'_b (G^-1)^-1 = L_a
    mapped = {
        tuple(map(tuple, linalg.mat_mul(F2, linalg.mat_mul(F2, Hinv, list(map(list, B))), r01.G)))
        for B in src
    }
    assert mapped == dst


def test_spreadset_not_equivalent_to_field(s_order16):
    FA = sf.FieldAlgebra(gf.build_tower(2, 1, 4).K)
    res = cl.spreadset_equivalence(s_order16, FA)
    assert res.status == "not_equivalent"
    assert "nuclei" in res.note


def test_spreadset_budget_path(ring9):
    irr = list(ring9.irreducible_polys(2, count=2))
    S0, S1 = sf.Semifield(irr[0]), sf.Semifield(irr[1])
    with pytest.raises(SizeBoundError):
        cl.spreadset_equivalence(S0, S1)  # order 81 needs an explicit budget
    res = cl.spreadset_equivalence(S0, S1, budget_ms=50)
    assert res.status in ("equivalent", "inconclusive")


def test_spreadset_generic_search_finds_small_witness(ring4, s_order16):
    """The budgeted generic scan agrees with the packed GF(2) kernel."""
    irr = list(ring4.irreducible_polys(2))
    S1 = sf.Semifield(irr[1])
    src = [sf.spread_matrix(s_order16, a) for a in range(1, 16)]
    dst = [sf.spread_matrix(S1, b) for b in range(1, 16)]
    import time

    res = cl._search_generic(s_order16, src, dst, 4, 2, 30000.0, time.perf_counter())
    assert res.status == "equivalent"


def test_bounds_report_values():
    br = cl.bounds_report(2, 2, 2)
    assert (br.M, br.N, br.kantor_liebler) == (1, 1, 3)
    br3 = cl.bounds_report(3, 2, 2)
    assert (br3.M, br3.N, br3.kantor_liebler) == (2, 3, 8)
    assert br3.jha_johnson_lower is not None
    br23 = cl.bounds_report(2, 2, 3)
    assert br23.N == 2 and br23.lower <= br23.M <= br23.N <= br23.kantor_liebler
    br32 = cl.bounds_report(3, 3, 2)
    assert br32.jha_johnson_lower is None and br32.totient_remark is not None
    assert cl.bounds_report(2, 2, 4).totient_remark is None  # n = 2 form unstated


def test_orbit_report_serialization():
    rep = cl.orbit_decomposition(3, 2, n=2)
    doc = rep.to_json()
    assert doc["M"] == 2 and doc["odoni"] == 30
    assert doc["bounds"]["lower"] == [3, 2]
    csv = rep.to_csv()
    assert csv.splitlines()[0] == "representative,size,elements"
    assert len(csv.splitlines()) == 3


def test_spreadset_threads_deterministic(ring4, s_order16, monkeypatch):
    irr = list(ring4.irreducible_polys(2))
    S1 = sf.Semifield(irr[1])
    base = cl.spreadset_equivalence(s_order16, S1)
    monkeypatch.setenv("SKEWSF_THREADS", "4")
    threaded = cl.spreadset_equivalence(s_order16, S1)
    assert threaded.equivalent and threaded.H == base.H and threaded.G == base.G
