import mpmath
import pytest

from src.errors import CapExceededError, InputError
from src.sylvester.context import (ExponentTuple, asymptotic_constants, count_positive,
                                   enumerate_positive, make_context, milnor_box_counts,
                                   weight, weight_table)


def test_make_context_n3():
    ctx = make_context(3)
    assert ctx.s == (2, 3, 7, 43)
    assert ctx.d_n == 1806
    assert ctx.d_row == (903, 602, 258, 42)
    assert ctx.mu == 1 * 2 * 6 * 42
    assert ctx.ambient_weights == (903, 602, 258, 42, 1)


def test_make_context_base_case():
    ctx = make_context(0)
    assert ctx.s == (2,)
    assert ctx.d_n == 2
    assert ctx.d_row == (1,)
    assert ctx.mu == 1


def test_make_context_large_levels():
    assert make_context(5).s[5] == 3263443
    ctx = make_context(10)
    assert all(ctx.identities().values())
    assert len(str(ctx.s[10])) > 100


@pytest.mark.parametrize("n", range(7))
def test_identities_hold(n):
    assert make_context(n).identities() == {
        'recursion': True, 'coprime': True, 'egyptian': True,
        'd_row_mod_s': True, 'others_mod_d_row': True
    }


@pytest.mark.parametrize("bad", [-1, 1.5, True, "2"])
def test_make_context_rejects_invalid(bad):
    with pytest.raises(InputError):
        make_context(bad)


def test_weight_values(ctx2):
    assert weight(ctx2, (0, 0, 0)) == 42
    assert weight(ctx2, (0, 1, 5)) == -2
    assert weight(ctx2, (0, 1, 4)) == 4


def test_weight_length_mismatch(ctx2):
    with pytest.raises(InputError):
        weight(ctx2, (0, 1))
    with pytest.raises(InputError):
        weight(ctx2, (0, -1, 0))


def test_enumerate_small_levels():
    assert [t.weight for t in enumerate_positive(make_context(0))] == [2]
    assert [(t.i, t.weight) for t in enumerate_positive(make_context(1))] == [
        ((0, 0), 6), ((0, 1), 4)
    ]


def test_enumerate_m2_weights(ctx2):
    tuples = enumerate_positive(ctx2)
    assert len(tuples) == 11
    assert sorted(t.weight for t in tuples) == [4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42]
    assert tuples == sorted(tuples)
    assert all(t.weight % 2 == 0 for t in tuples)


def test_enumerate_respects_cap(ctx3):
    with pytest.raises(CapExceededError, match="count_positive"):
        enumerate_positive(ctx3, cap=100)


@pytest.mark.parametrize("n,dim", [(1, 1), (2, 10), (3, 251), (4, 151700)])
def test_count_positive_dimensions(n, dim):
    assert count_positive(make_context(n), show_progress=False) - 1 == dim


@pytest.mark.parametrize("n", range(4))
def test_count_matches_enumeration(n):
    ctx = make_context(n)
    assert count_positive(ctx, show_progress=False) == len(enumerate_positive(ctx))


def test_count_positive_threads_agree():
    ctx = make_context(4)
    assert count_positive(ctx, threads=2, show_progress=False) == \
        count_positive(ctx, threads=1, show_progress=False)


@pytest.mark.slow
def test_count_positive_n5():
    assert count_positive(make_context(5)) == 123769377142


def test_milnor_box_counts():
    assert milnor_box_counts(make_context(2)) == {'positive': 11, 'negative': 1, 'zero': 0, 'mu': 12}
    counts = milnor_box_counts(make_context(3))
    assert (counts['positive'], counts['negative'], counts['zero']) == (252, 252, 0)
    assert counts['positive'] + counts['negative'] == counts['mu']


def test_weight_table_rows(ctx1):
    assert weight_table(ctx1) == [
        {'tuple': '0,0', 'weight': 6},
        {'tuple': '0,1', 'weight': 4}
    ]


def test_exponent_tuple_key():
    assert ExponentTuple(i=(0, 1, 4), weight=4).key() == "0,1,4"


def test_asymptotics_requires_depth():
    with pytest.raises(InputError):
        asymptotic_constants(4)


def test_asymptotic_c_from_depth():
    estimate = asymptotic_constants(6, max_count_level=4)
    assert abs(estimate.c - mpmath.mpf('1.264')) < 0.001
    assert estimate.c_error > 0
    assert estimate.level == 4


@pytest.mark.slow
def test_asymptotic_constants_level5():
    estimate = asymptotic_constants(5)
    assert abs(estimate.c - mpmath.mpf('1.264')) < 0.001
    assert abs(estimate.a - mpmath.mpf('0.2789')) < 0.001
    assert abs(float(estimate.ratio) - 1) < 0.01
    assert estimate.level == 5
