import pytest
from hypothesis import given, settings

from conftest import staircase_strategy
from iotak.complexes import (
    EQUIVARIANT,
    SKEW,
    BasisElement,
    FreeComplex,
    Morphism,
    _diff_slice_rows,
    compose,
    dual,
    homology_class_map,
    homology_is_r,
    homotopy_solve,
    identity_morphism,
    skew,
    tensor,
    verify_complex,
    zero_morphism,
)
from iotak.models import staircase_complex, torus_knot
from iotak.ring import ONE, monomial


def test_verify_trefoil_passes(hand_trefoil):
    report = verify_complex(hand_trefoil.complex)
    assert report.passed
    assert report.offenders == ()


def test_verify_single_generator():
    c = FreeComplex([BasisElement("e", 0, 0)], {})
    assert verify_complex(c).passed


def test_verify_empty_complex():
    assert verify_complex(FreeComplex([], {})).passed


def test_verify_grading_mismatch():
    # db = Ua with b(-1,-1), a(0,0): gr_v fails
    basis = [BasisElement("a", 0, 0), BasisElement("b", -1, -1)]
    c = FreeComplex(basis, {1: {0: monomial(1, 0)}})
    report = verify_complex(c)
    assert not report.homogeneous
    assert any("b -> a" in o for o in report.offenders)


def test_verify_catches_d_squared():
    basis = [
        BasisElement("a", 2, 2),
        BasisElement("b", 1, 1),
        BasisElement("c", 0, 0),
    ]
    c = FreeComplex(basis, {0: {1: ONE}, 1: {2: ONE}})
    report = verify_complex(c)
    assert report.homogeneous
    assert not report.d_squared_zero


def test_tensor_trefoil_square(hand_trefoil):
    c = hand_trefoil.complex
    t = tensor(c, c)
    assert len(t) == 9
    bb = 1 * 3 + 1
    row = t.diff[bb]
    assert row == {
        0 * 3 + 1: monomial(1, 0),  # Ua|b
        2 * 3 + 1: monomial(0, 1),  # Vc|b
        1 * 3 + 0: monomial(1, 0),  # b|Ua
        1 * 3 + 2: monomial(0, 1),  # b|Vc
    }
    aa = t.basis[0]
    assert (aa.gr_u, aa.gr_v) == (0, -4)
    assert verify_complex(t).passed


def test_tensor_unit(hand_trefoil):
    unit = FreeComplex([BasisElement("e", 0, 0)], {})
    t = tensor(unit, hand_trefoil.complex)
    assert [(x.gr_u, x.gr_v) for x in t.basis] == [
        (x.gr_u, x.gr_v) for x in hand_trefoil.complex.basis
    ]
    assert t.diff == hand_trefoil.complex.diff


def test_dual_trefoil(hand_trefoil):
    d = dual(hand_trefoil.complex)
    assert [(x.name, x.gr_u, x.gr_v) for x in d.basis] == [
        ("a^", 0, 2), ("b^", 1, 1), ("c^", 2, 0),
    ]
    # da^ = U b^, dc^ = V b^
    assert d.diff == {0: {1: monomial(1, 0)}, 2: {1: monomial(0, 1)}}
    assert verify_complex(d).passed


def test_dual_unknot_self():
    unit = FreeComplex([BasisElement("e", 0, 0)], {})
    assert dual(unit).diff == {}
    assert dual(unit).basis[0].gr_u == 0


def test_skew_trefoil(hand_trefoil):
    s = skew(hand_trefoil.complex)
    assert (s.basis[0].gr_u, s.basis[0].gr_v) == (-2, 0)
    assert s.diff[1] == {0: monomial(0, 1), 2: monomial(1, 0)}
    assert skew(s) == hand_trefoil.complex
    assert verify_complex(s).passed


def test_homology_is_r_examples(hand_trefoil):
    unit = FreeComplex([BasisElement("e", 0, 0)], {})
    assert homology_is_r(unit).holds
    assert homology_is_r(unit).dims == (1, 0)
    assert homology_is_r(hand_trefoil.complex).holds
    acyclic = FreeComplex(
        [BasisElement("a", 0, 0), BasisElement("b", 1, -1)],
        {0: {1: monomial(1, 0)}},
    )
    rep = homology_is_r(acyclic)
    assert not rep.holds
    assert rep.dims == (0, 0)


@given(staircase_strategy, staircase_strategy)
@settings(max_examples=25, deadline=None)
def test_constructions_stay_clean(s1, s2):
    c1 = staircase_complex(s1).complex
    c2 = staircase_complex(s2).complex
    t = tensor(c1, c2)
    assert verify_complex(t).passed
    assert verify_complex(dual(t)).passed
    assert verify_complex(skew(t)).passed
    assert homology_is_r(c1).holds
    assert homology_is_r(t).holds


@given(staircase_strategy)
@settings(max_examples=20, deadline=None)
def test_slice_translation_isomorphisms(s):
    # multiplication by V identifies the (A, m) and (A+1, m) slices,
    # multiplication by UV the (A, m) and (A, m-2) slices; in canonical
    # slice bases the matrices agree on the nose
    c = tensor(staircase_complex(s).complex, torus_knot(2, 3).complex)
    for alex, gr in [(0, 0), (0, 1), (1, -1), (-2, 4)]:
        base = _diff_slice_rows(c, alex, gr)
        assert base == _diff_slice_rows(c, alex + 1, gr)
        assert base == _diff_slice_rows(c, alex, gr - 2)


def test_homology_class_map_identity_and_zero(hand_trefoil):
    c = hand_trefoil.complex
    assert homology_class_map(identity_morphism(c))
    assert not homology_class_map(zero_morphism(c, c, EQUIVARIANT, (0, 0)))


def test_homology_class_map_rejects_non_chain_map(hand_trefoil):
    c = hand_trefoil.complex
    bad = Morphism(c, c, {0: {2: monomial(-1, 1)}}, EQUIVARIANT, (0, 0))
    with pytest.raises(ValueError):
        homology_class_map(bad)


def test_homotopy_solve_equal_maps(hand_trefoil):
    c = hand_trefoil.complex
    f = identity_morphism(c)
    h = homotopy_solve(f, f, EQUIVARIANT, filtered=True)
    assert h is not None and h.is_zero()
    assert h.bidegree == (1, 1)


def test_homotopy_solve_rejects_mismatches(hand_trefoil):
    c = hand_trefoil.complex
    f = identity_morphism(c)
    g = zero_morphism(c, c, EQUIVARIANT, (2, 0))
    with pytest.raises(ValueError):
        homotopy_solve(f, g, EQUIVARIANT, filtered=True)
    with pytest.raises(ValueError):
        homotopy_solve(f, f, SKEW, filtered=True)


def test_compose_variance_and_bidegree(hand_trefoil):
    iota = hand_trefoil.iota
    sq = compose(iota, iota)
    assert sq.variance == EQUIVARIANT
    assert sq.bidegree == (0, 0)
    assert sq.entries == identity_morphism(hand_trefoil.complex).entries
