from fractions import Fraction
from functools import lru_cache

import pytest
from sympy import Poly, QQ

from src.errors import InputError, PlaceError
from src.fibers.analysis import (NO_DISCRIMINANT, boundary_preimage, classify_family,
                                 evaluate_fiber, fiber_lct, fiber_type, level, limit_fiber,
                                 valuation_bound_holds, weierstrass_discriminant)
from src.fibers.family import X, CurveFamily, family_from_point, unipoly, unipoly_coeffs
from src.fibers.places import Place, place_basis, valuation, vbar_at
from src.polynomials.moduli_point import ModuliPoint, assemble
from src.polynomials.normalization import embed
from src.sylvester.context import enumerate_positive, make_context


@pytest.fixture
def two_place_family():
    return CurveFamily(2, {"0,1": [0, 0, -1, 1], "0,0": [0, -1, 3, -3, 1]})


@pytest.fixture
def cubic_family():
    return CurveFamily(2, {"0,1": [0, 1], "0,0": [1]})


def test_unipoly_round_trip():
    poly = unipoly([1, 0, "-1/2"])
    assert poly.degree() == 2
    assert unipoly_coeffs(poly) == [1, 0, Fraction(-1, 2)]
    assert unipoly_coeffs(unipoly([])) == []


def test_family_validation():
    with pytest.raises(InputError):
        CurveFamily(0, {})
    with pytest.raises(InputError):
        CurveFamily(2, {"0,3": [1]})
    with pytest.raises(InputError):
        CurveFamily(2, {"1,2": [1]})


def test_family_dict_round_trip(two_place_family):
    data = two_place_family.to_dict()
    assert data['coeffs']['0,1'] == ['0/1', '0/1', '-1/1', '1/1']
    again = CurveFamily.from_dict(data)
    assert again.to_poly() == two_place_family.to_poly()
    with pytest.raises(InputError):
        CurveFamily.from_dict({'n': 2})


def test_family_from_point_rebuilds_equation():
    point = ModuliPoint(1, {"0,1": 2, "0,0": -1})
    fam = family_from_point(point)
    assert fam.to_poly() == assemble(point)
    assert unipoly_coeffs(fam.coefficient((0,))) == [-1, 2, 0, 1]


def test_valuation_and_errors():
    place = Place.rational(1)
    assert valuation(unipoly([-1, 3, -3, 1]), place) == 3
    assert valuation(unipoly([5]), place) == 0
    with pytest.raises(InputError):
        valuation(unipoly([0]), place)


def test_place_basis_order(two_place_family):
    places = place_basis(two_place_family)
    assert [p.label() for p in places] == ["x - 1", "x"]
    assert [p.root for p in places] == [1, 0]


def test_place_basis_constant_gcd(cubic_family):
    assert place_basis(cubic_family) == []


def test_vbar_values(two_place_family):
    at_zero = vbar_at(two_place_family, 0)
    assert at_zero.vals == {(0, 0): 1, (0, 1): 2}
    assert at_zero.vbar == Fraction(1, 6)
    assert at_zero.ramification == 6
    assert at_zero.minimizers() == [(0, 0)]

    at_one = vbar_at(two_place_family, 1)
    assert at_one.vals == {(0, 0): 3, (0, 1): 1}
    assert at_one.vbar == Fraction(1, 4)


def test_fiber_lct(two_place_family):
    assert fiber_lct(two_place_family, 0) == Fraction(5, 6)
    assert fiber_lct(two_place_family, 1) == Fraction(3, 4)
    assert fiber_lct(two_place_family, 5) == 1


def test_fiber_lct_rejects_large_vbar():
    fam = CurveFamily(2, {"0,1": [0, 0, 0, 0, 0, 1]})
    with pytest.raises(PlaceError):
        fiber_lct(fam, 0)


def test_valuation_bound(two_place_family):
    assert valuation_bound_holds(two_place_family, vbar_at(two_place_family, 0))
    boundary = CurveFamily(2, {"0,0": [0] * 7 + [1], "0,1": [1]})
    assert valuation_bound_holds(boundary, vbar_at(boundary, 0))
    beyond = CurveFamily(2, {"0,0": [0] * 8 + [1], "0,1": [1]})
    assert not valuation_bound_holds(beyond, vbar_at(beyond, 0))


def test_limit_fiber(two_place_family):
    fiber = limit_fiber(two_place_family, 0)
    assert fiber.same_representative(ModuliPoint(1, {"0,0": -1}))
    with pytest.raises(PlaceError):
        limit_fiber(two_place_family, 5)
    with pytest.raises(InputError):
        limit_fiber(two_place_family, 0, m=4)


def test_evaluate_fiber():
    fam = CurveFamily(2, {"0,1": [1], "0,0": [0, 1]})
    fiber = evaluate_fiber(fam, 2)
    assert fiber.same_representative(ModuliPoint(1, {"0,1": 1, "0,0": 2}))


def test_weierstrass_discriminant(cubic_family):
    delta = weierstrass_discriminant(cubic_family)
    assert unipoly_coeffs(delta) == [27, 0, 0, 4]
    with pytest.raises(InputError):
        weierstrass_discriminant(CurveFamily(1, {"0": [1]}))


def test_classify_cubic_place(cubic_family):
    result = classify_family(cubic_family)
    assert len(result) == 1
    place, ftype = result[0]
    assert place.degree == 3
    assert (ftype.vbar, ftype.level, ftype.disc_val, ftype.lct) == (0, None, 1, 1)


def test_fiber_type_rational_place(cubic_family):
    ftype = fiber_type(cubic_family, 0)
    assert (ftype.vbar, ftype.level, ftype.disc_val, ftype.lct) == (0, 0, 0, 1)
    assert ftype.to_dict() == {'vbar': '0/1', 'level': 0, 'disc_val': 0, 'lct': '1/1'}


def test_fiber_type_marker_outside_n2():
    fam = CurveFamily(3, {"0,0,0": [0, 1]})
    ftype = fiber_type(fam, 1)
    assert ftype.disc_val is None
    assert ftype.to_dict()['disc_val'] == NO_DISCRIMINANT


def test_boundary_and_level_chain():
    base = ModuliPoint(0, {"0": 1})
    once = embed(base)
    assert once.same_representative(ModuliPoint(1, {"0,1": Fraction(-1, 3), "0,0": Fraction(2, 27)}))
    preimage = boundary_preimage(once)
    assert preimage is not None
    assert preimage.same_representative(base)
    assert level(once) == 1
    assert level(embed(once)) == 2


def test_interior_point_has_level_zero():
    point = ModuliPoint(1, {"0,1": 1})
    assert boundary_preimage(point) is None
    assert level(point) == 0
    with pytest.raises(InputError):
        boundary_preimage(ModuliPoint(0, {"0": 1}))


@lru_cache(maxsize=None)
def positive_keys(n):
    return tuple(t.i for t in enumerate_positive(make_context(n)))


def sparse_point(rng, rational, n):
    keys = positive_keys(n)
    chosen = rng.sample(keys, rng.randint(1, min(4, len(keys))))
    return ModuliPoint(n, {i: rational() for i in chosen})


def m1_point(rational):
    return ModuliPoint(1, {"0,1": rational(), "0,0": rational()})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_normalized_valuations_at_most_one(n, rng, rational):
    for _ in range(100):
        fam = family_from_point(sparse_point(rng, rational, n))
        for place in place_basis(fam) + [Place.rational(0), Place.rational(rational())]:
            val = vbar_at(fam, place)
            assert valuation_bound_holds(fam, val)
            assert val.vbar <= 1


def test_normalized_valuations_on_embed_images(rational):
    for _ in range(20):
        for point in (embed(ModuliPoint(0, {"0": rational()})), embed(m1_point(rational))):
            fam = family_from_point(point)
            for place in place_basis(fam):
                assert valuation_bound_holds(fam, vbar_at(fam, place))


def test_embed_images_reach_vbar_one(rational):
    for _ in range(20):
        fam = family_from_point(embed(m1_point(rational)))
        vbars = [vbar_at(fam, place).vbar for place in place_basis(fam)]
        assert 1 in vbars
        assert max(vbars) == 1


def test_generic_points_stay_below_one(rational):
    keys = positive_keys(2)
    for _ in range(20):
        point = ModuliPoint(2, {i: rational() for i in keys})
        fam = family_from_point(point)
        assert all(vbar_at(fam, place).vbar < 1 for place in place_basis(fam))
        assert boundary_preimage(point) is None


def test_fiber_lct_complements_vbar(rng, rational):
    points = [embed(m1_point(rational)) for _ in range(10)]
    points += [sparse_point(rng, rational, n) for n in (1, 2, 3) for _ in range(10)]
    for point in points:
        fam = family_from_point(point)
        for place in place_basis(fam) + [Place.rational(0)]:
            assert fiber_lct(fam, place) + vbar_at(fam, place).vbar == 1


def test_place_basis_refinement(rng):
    factors = [Poly(X - 1, X, domain=QQ), Poly(X + 2, X, domain=QQ),
               Poly(X, X, domain=QQ), Poly(X ** 2 + 1, X, domain=QQ)]
    for _ in range(20):
        coeffs = {}
        for key in ("0,0", "0,1", "1,0", "0,2"):
            poly = Poly(rng.randint(1, 5), X, domain=QQ)
            for k, q in enumerate(factors):
                poly = poly * q ** rng.randint(1 if k < 2 else 0, 3)
            coeffs[key] = poly
        fam = CurveFamily(2, coeffs)
        places = place_basis(fam)
        assert places
        for place in places:
            for _, t in fam.items():
                val = valuation(t, place)
                assert t.rem(place.poly ** val).is_zero
                assert not t.rem(place.poly ** (val + 1)).is_zero


def test_place_basis_irreducible_quadratic():
    fam = CurveFamily(2, {"0,0": [1, 0, 1]})
    places = place_basis(fam)
    assert len(places) == 1
    place = places[0]
    assert (place.degree, place.root) == (2, None)
    assert unipoly_coeffs(place.poly) == [1, 0, 1]
    assert vbar_at(fam, place).vbar == Fraction(1, 6)
    assert fiber_lct(fam, place) == Fraction(5, 6)

    shared = CurveFamily(2, {"0,0": Poly((X ** 2 + 1) ** 2 * X, X, domain=QQ), "0,1": [1, 0, 1]})
    places = place_basis(shared)
    assert [p.label() for p in places] == ["x**2 + 1"]
    val = vbar_at(shared, places[0])
    assert val.vals == {(0, 0): 2, (0, 1): 1}
    assert val.vbar == Fraction(1, 4)


def test_limit_fiber_matches_boundary_preimage(rational):
    for _ in range(10):
        source = m1_point(rational)
        image = embed(source)
        fam = family_from_point(image)
        boundary = [p for p in place_basis(fam) if vbar_at(fam, p).vbar == 1]
        assert len(boundary) == 1
        assert boundary[0].root == source[(0, 0)] / 7
        preimage = boundary_preimage(image)
        assert limit_fiber(fam, boundary[0]) == preimage
        assert preimage == source
