from fractions import Fraction

import pytest

from src.errors import InputError, NormalizationError
from src.polynomials.moduli_point import (ModuliPoint, assemble, fermat, j_invariant,
                                          point_from_equation)
from src.polynomials.multipoly import MultiPoly, variables
from src.polynomials.normalization import (complete_power, embed, leading_factor,
                                           normalize_equation)
from src.sylvester.context import make_context
from src.utils.rationals import format_fraction, to_fraction


def test_rationals_format_and_parse():
    assert format_fraction(3) == "3/1"
    assert format_fraction(Fraction(-2, 4)) == "-1/2"
    assert to_fraction(" 7/21 ") == Fraction(1, 3)
    with pytest.raises(InputError):
        to_fraction(0.5)
    with pytest.raises(InputError):
        to_fraction("1/0")


def test_multipoly_arithmetic():
    x, y = variables(2)
    p = (x + y) ** 2 - x * x
    assert p.terms() == {(0, 2): 1, (1, 1): 2}
    assert (p - p).is_zero()
    assert (p / 2).coefficient((1, 1)) == 1
    assert 3 + x == x + 3
    with pytest.raises(InputError):
        p / 0


def test_multipoly_text_format():
    text = "# comentário\n1/1 : 2 0\n\n-2/3 : 0 3\n"
    p = MultiPoly.from_text(text)
    assert p.nvars == 2
    assert p.terms() == {(0, 3): Fraction(-2, 3), (2, 0): 1}
    assert MultiPoly.from_text(p.to_text()) == p


def test_multipoly_text_errors():
    with pytest.raises(InputError):
        MultiPoly.from_text("1 2 3")
    with pytest.raises(InputError):
        MultiPoly.from_text("1 : 2 0\n1 : 1")
    with pytest.raises(InputError):
        MultiPoly.from_text("")


def test_multipoly_mixed_rings():
    with pytest.raises(InputError):
        MultiPoly.variable(2, 0) + MultiPoly.variable(3, 0)


def test_substitute_and_coefficient_in():
    x, y = variables(2)
    p = x ** 3 + y * x ** 2
    shifted = p.substitute({0: x - 1})
    assert shifted.degree_in(0) == 3
    assert p.coefficient_in(0, 2) == y
    assert p.is_quasi_homogeneous([1, 1], 3)
    assert not (p + x).is_quasi_homogeneous([1, 1])


def test_complete_power_cubic():
    x, = variables(1)
    result, shift = complete_power(x ** 3 + 3 * x ** 2, 0, 3)
    assert result == x ** 3 - 3 * x + 2
    assert shift == -1


def test_complete_power_requires_monic():
    x, = variables(1)
    with pytest.raises(NormalizationError):
        complete_power(2 * x ** 3 + x, 0, 3)


def test_point_rejects_origin_and_bad_keys():
    with pytest.raises(InputError):
        ModuliPoint(1, {"0,0": 0})
    with pytest.raises(InputError):
        ModuliPoint(1, {"0,2": 1})
    with pytest.raises(InputError):
        ModuliPoint(2, {"0,1,5": 1})


def test_point_short_keys():
    point = ModuliPoint(2, {"1,4": 3})
    assert point[(0, 1, 4)] == 3
    assert point["0,1,4"] == 3


def test_rescale_weights():
    point = ModuliPoint(1, {"0,1": 1, "0,0": 1})
    scaled = point.rescale(2)
    assert scaled["0,1"] == 16
    assert scaled["0,0"] == 64
    assert scaled == point
    assert not scaled.same_representative(point)


def test_projective_equality():
    base = ModuliPoint(1, {"0,1": 1, "0,0": 1})
    assert base == ModuliPoint(1, {"0,1": 1, "0,0": -1})
    assert base != ModuliPoint(1, {"0,1": 1, "0,0": 2})
    assert base != ModuliPoint(1, {"0,1": 1})


def test_rescale_rejects_zero():
    with pytest.raises(InputError):
        ModuliPoint(1, {"0,1": 1}).rescale(0)


def test_point_dict_round_trip():
    point = ModuliPoint(2, {"0,1,4": "1/2", "0,0,0": -3})
    data = point.to_dict()
    assert data == {'n': 2, 'coords': {'0,0,0': '-3/1', '0,1,4': '1/2'}}
    assert ModuliPoint.from_dict(data).same_representative(point)
    with pytest.raises(InputError):
        ModuliPoint.from_dict({'coords': {}})


def test_assemble_is_quasi_homogeneous(ctx2):
    point = ModuliPoint(2, {"0,1,4": 1, "0,0,3": 5})
    big = assemble(point, homogeneous=True)
    assert big.nvars == 4
    assert big.is_quasi_homogeneous(ctx2.ambient_weights, ctx2.d_n)
    assert assemble(point) == fermat(ctx2) + MultiPoly.from_terms(3, point.coords)


def test_point_from_fermat_raises(ctx2):
    with pytest.raises(NormalizationError):
        point_from_equation(fermat(ctx2), ctx2)


def test_j_invariant():
    assert j_invariant(ModuliPoint(1, {"0,1": 1})) == 1728
    assert j_invariant(ModuliPoint(1, {"0,0": 1})) == 0
    assert j_invariant(ModuliPoint(1, {"0,1": -3, "0,0": 2})) is None
    with pytest.raises(InputError):
        j_invariant(ModuliPoint(2, {"0,1,4": 1}))


def test_embed_from_m0():
    image = embed(ModuliPoint(0, {"0": 1}))
    assert image.n == 1
    assert image["0,1"] == Fraction(-1, 3)
    assert image["0,0"] == Fraction(2, 27)


def test_embed_from_m0_general(rational):
    for _ in range(5):
        t = rational()
        image = embed(ModuliPoint(0, {"0": t}))
        assert image["0,1"] == -t ** 2 / 3
        assert image["0,0"] == 2 * t ** 3 / 27


def test_embed_lands_on_discriminant():
    for t in (1, Fraction(-2, 5), 7):
        image = embed(ModuliPoint(0, {"0": t}))
        assert j_invariant(image) is None


def test_embed_m1_to_m2_is_normal():
    point = ModuliPoint(1, {"0,1": 2, "0,0": -1})
    image = embed(point)
    ctx = make_context(2)
    assert image.n == 2
    assert all(image.weight_of(i) > 0 for i, _ in image.items())
    assert all(0 <= i[k] <= ctx.s[k] - 2 for i, _ in image.items() for k in range(3))


def test_normalize_scales_and_shifts():
    x0, x1 = variables(2)
    point, scale = normalize_equation(4 * x0 ** 2 + x1 ** 3 + x1 + 1, 1)
    assert point.same_representative(ModuliPoint(1, {"0,1": 1, "0,0": 1}))
    assert scale.variable_scales == (Fraction(1, 2), 1)

    point, scale = normalize_equation(x0 ** 2 + 2 * x0 + x1 ** 3 + x1, 1)
    assert point.same_representative(ModuliPoint(1, {"0,1": 1, "0,0": -1}))
    assert scale.shifts[0] == -1


def test_normalize_homogeneous_round_trip():
    point = ModuliPoint(2, {"0,1,4": 1, "0,0,3": "2/3"})
    again, _ = normalize_equation(assemble(point, homogeneous=True) * 5, 2)
    assert again.same_representative(point)


def test_normalize_errors():
    x0, x1 = variables(2)
    with pytest.raises(NormalizationError):
        normalize_equation(x0 ** 2 + x1 ** 3, 1)
    with pytest.raises(NormalizationError):
        normalize_equation(x0 ** 2 + x1, 1)
    with pytest.raises(InputError):
        normalize_equation(x0 ** 2 + x1 ** 3 + x1, 3)


def test_normalize_non_power_leading():
    x0, x1 = variables(2)
    point, scale = normalize_equation(2 * x0 ** 2 + x1 ** 3 + x1, 1)
    assert point.same_representative(ModuliPoint(1, {"0,1": 4}))
    assert scale.factor == 8
    assert scale.variable_scales == (Fraction(1, 4), Fraction(1, 2))

    point, _ = normalize_equation(3 * x0 ** 2 + 2 * x1 ** 3 + x1 + 1, 1)
    assert point.same_representative(ModuliPoint(1, {"0,1": 18, "0,0": 108}))


def test_normalize_negative_leading():
    x0, x1 = variables(2)
    point, scale = normalize_equation(-x0 ** 2 + x1 ** 3 + x1, 1)
    assert point.same_representative(ModuliPoint(1, {"0,1": 1}))
    assert scale.factor == -1
    assert scale.variable_scales == (1, -1)


def test_normalize_kills_lower_terms_in_order():
    x0, x1 = variables(2)
    point, scale = normalize_equation(x0 ** 2 + 2 * x0 * x1 + x1 ** 3, 1)
    assert point.same_representative(ModuliPoint(1, {"0,1": Fraction(-1, 3), "0,0": Fraction(-2, 27)}))
    assert scale.shifts[0] == -x1
    assert scale.shifts[1] == Fraction(1, 3)


def test_leading_factor():
    assert leading_factor([Fraction(5)] * 3, (2, 3, 7)) == 5 ** 41
    assert leading_factor([Fraction(3), Fraction(2)], (2, 3)) == 108
    assert leading_factor([Fraction(-1), Fraction(1)], (2, 3)) == -1
    assert leading_factor([Fraction(1, 4), Fraction(1)], (2, 3)) == 1


def random_poly(rng, rational, nvars=3):
    terms = {tuple(rng.randint(0, 3) for _ in range(nvars)): rational()
             for _ in range(rng.randint(1, 4))}
    return MultiPoly.from_terms(nvars, terms)


def test_multipoly_ring_axioms(rng, rational):
    for _ in range(25):
        a, b, c = (random_poly(rng, rational) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert (a - a).is_zero()
        assert a * 1 == a


def m2_image(t1, t0):
    return {
        (0, 1, 4): t1,
        (0, 1, 3): Fraction(-4, 7) * t0 * t1,
        (0, 1, 2): Fraction(6, 49) * t0 ** 2 * t1,
        (0, 1, 1): Fraction(-4, 343) * t0 ** 3 * t1,
        (0, 1, 0): Fraction(1, 7 ** 4) * t0 ** 4 * t1,
        (0, 0, 5): Fraction(-3, 7) * t0 ** 2,
        (0, 0, 4): Fraction(10, 49) * t0 ** 3,
        (0, 0, 3): Fraction(-15, 343) * t0 ** 4,
        (0, 0, 2): Fraction(12, 7 ** 4) * t0 ** 5,
        (0, 0, 1): Fraction(-5, 7 ** 5) * t0 ** 6,
        (0, 0, 0): Fraction(6, 7 ** 6) * t0 ** 7,
    }


def test_embed_m1_coefficient_formulas(rational):
    for _ in range(20):
        t1, t0 = rational(), rational()
        image = embed(ModuliPoint(1, {"0,1": t1, "0,0": t0}))
        assert image.coords == m2_image(t1, t0)


def test_embed_is_injective(rational):
    sources = {}
    for _ in range(100):
        t1, t0 = rational(), rational()
        image = embed(ModuliPoint(1, {"0,1": t1, "0,0": t0}))
        sources.setdefault(tuple(sorted(image.items())), set()).add((t1, t0))
    assert all(len(found) == 1 for found in sources.values())


def test_rescale_commutes_with_embed(rational):
    for _ in range(10):
        point = ModuliPoint(1, {"0,1": rational(), "0,0": rational()})
        lam = rational()
        scaled, image = embed(point.rescale(lam)), embed(point)
        assert scaled == image
        assert scaled[(0, 1, 4)] / image[(0, 1, 4)] == lam ** 4
        assert scaled.same_representative(image.rescale(lam))


def test_normalize_matches_embed(rational):
    x2 = MultiPoly.variable(3, 2)
    for _ in range(10):
        point = ModuliPoint(1, {"0,1": rational(), "0,0": rational()})
        image = embed(point)
        cone = assemble(point, homogeneous=True) + x2 ** 7
        normalized, scale = normalize_equation(cone, 2)
        assert normalized.same_representative(image)
        assert scale.shifts[2] == -point[(0, 0)] / 7
        again, _ = normalize_equation(assemble(image, homogeneous=True) * 3, 2)
        assert again == image
