"""Semifield construction, axioms, nuclei, and isotopisms."""

import numpy as np
import pytest

from skewsf import gf, semifield as sf, skewpoly as sp
from skewsf.errors import PreconditionError, SizeBoundError


def test_multiply_worked_examples(s_order16, ring4):
    S = s_order16
    t = ring4.t()
    assert S.mul(t, t) == ring4.poly([1, 2])  # t o t = wt + 1
    for enc in range(16):
        b = S.decode(enc)
        assert S.mul(ring4.one(), b) == b
        assert S.mul(b, ring4.one()) == b
    with pytest.raises(PreconditionError):
        S.mul(ring4.t(2), t)


def test_no_zero_divisors_exhaustive(s_order16):
    T = s_order16.table()
    assert (T[1:, 1:] != 0).all()


def test_reducible_f_rejected_and_s3_fails(ring4):
    f = (ring4.poly([2, 1]) * ring4.poly([3, 1])).monic()
    with pytest.raises(PreconditionError):
        sf.Semifield(f)
    S = sf.Semifield(f, check=False)
    rep = sf.check_axioms(S)
    assert not rep.s3.ok and rep.s3.witness is not None
    x, y = rep.s3.witness
    assert S.mul_enc(x, y) == 0 and x != 0 and y != 0


def test_axioms_pass_for_semifields_and_fields(s_order16):
    rep = sf.check_axioms(s_order16)
    assert rep.all_ok and rep.exhaustive
    FA = sf.FieldAlgebra(gf.build_tower(2, 1, 4).K)
    repF = sf.check_axioms(FA)
    assert repF.all_ok
    assert FA.is_associative()
    assert not s_order16.is_associative()


def test_axioms_sampled_beyond_bound(s_order16):
    rep = sf.check_axioms(s_order16, bound=8, samples=500, seed=1)
    assert rep.all_ok and not rep.exhaustive


def test_nucleus_known_values(s_order16):
    assert sf.nucleus(s_order16, "right") == (0, 1, 8, 9)
    assert sf.nucleus(s_order16, "left") == (0, 1, 2, 3)
    assert sf.nucleus(s_order16, "middle") == (0, 1, 2, 3)
    assert sf.nucleus(s_order16, "centre") == (0, 1)
    with pytest.raises(PreconditionError):
        sf.nucleus(s_order16, "sideways")


def test_nucleus_scan_matches_cube(ring9):
    f = next(ring9.irreducible_polys(2))
    S = sf.Semifield(f)
    for which in ("left", "middle", "right", "centre"):
        assert sf._nucleus_cube(S, which, bound=81) == sf.nucleus(S, which)


def test_nuclei_of_field_are_everything():
    FA = sf.FieldAlgebra(gf.build_tower(2, 1, 4).K)
    for which in ("left", "middle", "right", "centre"):
        assert len(np.flatnonzero(FA.nucleus_scan(which))) == 16


def test_scaled_f_same_semifield(ring4, f_order16, s_order16):
    for alpha in (2, 3):
        g = ring4.constant(alpha) * f_order16
        S2 = sf.Semifield(g)
        assert np.array_equal(S2.table(), s_order16.table())


def test_table_bound(ring4, f_order16):
    S = sf.Semifield(f_order16)
    with pytest.raises(SizeBoundError):
        S.table(bound=8)


def test_isotopism_from_similarity(ring4, f_order16):
    f = f_order16
    g = ring4.poly([1, 3, 1])
    u = sp.similar_witness(f, g)
    tri = sf.isotopism_from_similarity(f, g, u)
    Sf, Sg = sf.Semifield(f), sf.Semifield(g)
    assert sf.verify_triple(Sg, Sf, tri)
    # identity witness for f = g
    tri_id = sf.isotopism_from_similarity(f, f, ring4.one())
    assert sf.verify_triple(Sf, Sf, tri_id)
    with pytest.raises(PreconditionError):
        sf.isotopism_from_similarity(f, g, ring4.zero())
    assert not (g * ring4.one()).mod_r(f).is_zero()
    with pytest.raises(PreconditionError):
        sf.isotopism_from_similarity(f, g, ring4.one())  # not a witness


def test_perturbed_triple_fails(ring4, f_order16):
    f, g = f_order16, ring4.poly([1, 3, 1])
    u = sp.similar_witness(f, g)
    tri = sf.isotopism_from_similarity(f, g, u)
    Sf, Sg = sf.Semifield(f), sf.Semifield(g)
    h2 = tri.h_img.copy()
    h2[[2, 7]] = h2[[7, 2]]
    bad = sf.LinearTriple(tri.f_img, tri.g_img, h2)
    ok, witness = sf.verify_triple(Sg, Sf, bad, return_witness=True)
    assert not ok and witness is not None


def test_isomorphism_from_ring_automorphism(ring4, f_order16):
    iso = sf.isomorphism_from_ring_automorphism(f_order16, 1, 0)
    assert np.array_equal(iso.map.images, np.arange(16))
    iso2 = sf.isomorphism_from_ring_automorphism(f_order16, 2, 0)
    assert sf.verify_triple(iso2.source, iso2.target, iso2.triple())
    # exhaustive multiplicativity
    S, T = iso2.source, iso2.target
    for x in range(16):
        for y in range(16):
            assert iso2(S.mul_enc(x, y)) == T.mul_enc(iso2(x), iso2(y))


def test_triple_compose_inverse(ring4, f_order16):
    f, g = f_order16, ring4.poly([1, 3, 1])
    u = sp.similar_witness(f, g)
    tri = sf.isotopism_from_similarity(f, g, u)
    Sf, Sg = sf.Semifield(f), sf.Semifield(g)
    assert sf.verify_triple(Sf, Sg, tri.inverse())
    ident = tri.compose(tri.inverse())
    assert ident == sf.LinearTriple.identity(Sg)


def test_left_division_variant(ring4, f_order16):
    SL, psi = sf.left_division_variant(f_order16)
    Sf = sf.Semifield(f_order16)
    assert SL.side == "left"
    for x in range(16):
        for y in range(16):
            assert psi(Sf.mul_enc(x, y)) == SL.mul_enc(psi(y), psi(x))
    # the opposite algebra is isomorphic to the left-division variant via psi
    op = Sf.opposite()
    for x in range(16):
        for y in range(16):
            assert psi(op.mul_enc(x, y)) == SL.mul_enc(psi(x), psi(y))


def test_fq_matrix_roundtrip(ring4, f_order16):
    f, g = f_order16, ring4.poly([1, 3, 1])
    u = sp.similar_witness(f, g)
    Sf = sf.Semifield(f)
    tri = sf.isotopism_from_similarity(f, g, u)
    F, G, H = tri.fq_matrices(Sf)
    assert sf.LinearTriple.from_fq_matrices(Sf, F, G, H) == tri
    nd = 4
    assert len(F) == nd and all(len(r) == nd for r in F)


def test_triple_rejects_singular(s_order16):
    img = np.zeros(16, dtype=np.uint16)
    with pytest.raises(PreconditionError):
        sf.LinearTriple(img, img, img)


def test_verify_triple_sampled_beyond_bound(ring9):
    f = next(ring9.irreducible_polys(2))
    S = sf.Semifield(f)
    tri = sf.LinearTriple.identity(S)
    assert sf.verify_triple(S, S, tri, bound=16, samples=300, seed=4)


def test_spread_matrix_is_left_multiplication(s_order16):
    S = s_order16
    for a in (1, 5, 9):
        M = sf.spread_matrix(S, a)
        for x in range(16):
            vec = sf.enc_to_fqvec(S, x)
            img = [sum(M[r][c] * vec[c] for c in range(4)) % 2 for r in range(4)]
            assert sf.fqvec_to_enc(S, img) == S.mul_enc(a, x)


def test_semifield_requires_zero_derivation(f4):
    ring = sp.SkewRing(f4, 1, deriv_x=2)
    with pytest.raises(PreconditionError):
        sf.Semifield(ring.poly([1, 1]))


def test_descriptor_json(s_order16):
    doc = s_order16.descriptor_json()
    assert doc["f"] == [1, 2, 1] and doc["side"] == "right"
    assert doc["field"]["p"] == 2 and doc["sigma_s"] == 1


def test_isotopy_composition_across_three(ring9):
    """Composable triples compose: a chain across three semifields at order 81."""
    irr = list(ring9.irreducible_polys(2, count=8))
    by_mzlm = {}
    for f in irr:
        by_mzlm.setdefault(sp.mzlm(f), []).append(f)
    fiber = next(v for v in by_mzlm.values() if len(v) >= 3)
    f, g, h = fiber[:3]
    t1 = sf.isotopism_from_similarity(f, g, sp.similar_witness(f, g))  # S_g -> S_f
    t2 = sf.isotopism_from_similarity(g, h, sp.similar_witness(g, h))  # S_h -> S_g
    chain = t2.compose(t1)
    assert sf.verify_triple(sf.Semifield(h), sf.Semifield(f), chain)


def test_exhaustive_kernels_bounded(ring4):
    # construction is fine above 2^16, the exhaustive machinery refuses
    f = next(ring4.irreducible_polys(10))
    S = sf.Semifield(f)
    assert S.order == 4**10
    assert S.mul(ring4.t(), ring4.t(9)).degree < 10
    with pytest.raises(SizeBoundError):
        S.basis_products()


def test_left_division_nuclei_swap(f_order16):
    """The anti-isomorphism swaps the left and right nuclei."""
    SL, psi = sf.left_division_variant(f_order16)
    Sf = sf.Semifield(f_order16)
    right_of_f = set(sf.nucleus(Sf, "right"))
    left_of_f = set(sf.nucleus(Sf, "left"))
    assert {psi(x) for x in right_of_f} == set(sf.nucleus(SL, "left"))
    assert {psi(x) for x in left_of_f} == set(sf.nucleus(SL, "right"))
    assert set(sf.nucleus(SL, "centre")) == {psi(x) for x in sf.nucleus(Sf, "centre")}
