from fractions import Fraction

import pytest

from src.errors import CapExceededError, HypothesisError, InputError
from src.hodge.orbifold import (GATES, audit_all, ej_forced_residue, h11_brute, h11_fast,
                                hodge_report, lemma_n0_count, mu_check, profile,
                                q_coefficient, scan, structure_audit, summand)
from src.sylvester.context import make_context
from src.utils.parallel import split_range


def test_profile_generic(ctx3):
    prof = profile(ctx3, 1)
    assert prof.theta == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 7),
                          Fraction(1, 43), Fraction(1, 1806))
    assert prof.T0 == ()
    assert prof.T1 == (0, 1, 2, 3, 4)


def test_profile_partition(ctx3):
    prof = profile(ctx3, 903)
    assert prof.T0 == (1, 2, 3)
    assert prof.T1 == (0, 4)
    with pytest.raises(InputError):
        profile(ctx3, 1806)


def test_summand_values(ctx3):
    zero = summand(ctx3, 0)
    assert (zero.A, zero.B, zero.S, zero.N) == (0, 0, 0, 251)
    assert summand(ctx3, 1).N == 0


def test_s_identity_on_sample(ctx3):
    for ell in (1, 2, 43, 903, 1805):
        term = summand(ctx3, ell)
        expected = Fraction(ell, ctx3.d_n) + sum(term.profile.theta[:-1])
        assert term.S == expected


def test_lemma_n0_count(ctx3):
    assert lemma_n0_count(ctx3) == 251


def test_h11_fast_n3(ctx3):
    assert h11_fast(ctx3) == 251


def test_h11_fast_requires_n3(ctx2):
    with pytest.raises(HypothesisError):
        h11_fast(ctx2)


def test_h11_brute_matches_fast(ctx3):
    assert h11_brute(ctx3, show_progress=False) == h11_fast(ctx3)


def test_scan_nonzero_only_at_zero(ctx3):
    stats = scan(ctx3, chunk_size=500, show_progress=False)
    assert stats.scanned == ctx3.d_n
    assert stats.nonzero_ell == []
    assert stats.total == 251


def test_h11_brute_cap():
    with pytest.raises(CapExceededError, match="h11_fast"):
        h11_brute(make_context(5))


@pytest.mark.slow
def test_h11_n4_brute_and_fast():
    ctx = make_context(4)
    assert h11_fast(ctx) == 151700
    assert h11_brute(ctx, threads=2) == 151700


def test_audit_all_counts(ctx3):
    counts = audit_all(ctx3)
    assert set(counts) == set(GATES)
    assert sum(counts.values()) == ctx3.d_n - 1


def test_structure_audit_bounds(ctx2, ctx3):
    with pytest.raises(HypothesisError):
        structure_audit(ctx2, 1)
    with pytest.raises(InputError):
        structure_audit(ctx3, 0)
    assert structure_audit(ctx3, 1).gate == 'm>=n-1'


def test_q_coefficient(ctx3):
    assert q_coefficient(ctx3, 1806, 0) == 251
    assert q_coefficient(ctx3, "1/2", 0) == 0
    with pytest.raises(CapExceededError):
        q_coefficient(make_context(4), 0, 0)


def test_mu_check(ctx2):
    assert mu_check(ctx2) == {'mu': 12, 'positive': 11, 'negative': 1, 'consistent': True}


def test_hodge_report(ctx2, ctx3):
    report = hodge_report(ctx3)
    assert report['method'] == 'fast'
    assert report['h11'] == 251
    assert sum(report['gates'].values()) == 1805

    small = hodge_report(ctx2)
    assert small['method'] == 'brute'
    assert 'note' in small
    with pytest.raises(InputError):
        hodge_report(ctx3, method='magic')


def test_split_range_covers_interval():
    parts = split_range(0, 10, 4)
    assert [(r.start, r.stop) for r in parts] == [(0, 4), (4, 8), (8, 10)]
    assert split_range(5, 5, 3) == []


def test_ej_residue_lands_outside_box(ctx3):
    a = ctx3.d_row + (1,)
    for j in range(4):
        T0 = [i for i in range(4) if i != j]
        for i in T0:
            assert ej_forced_residue(a, ctx3.s, T0, j, i) == ctx3.s[i] - 1


def test_ej_residue_other_weights():
    assert ej_forced_residue((3, 5), (7, 11), [0], 1, 0) == 2
    assert ej_forced_residue((3, 5), (7, 11), [0, 1], 1, 0) is None
    assert ej_forced_residue((2, 5), (4, 11), [0], 1, 0) is None
