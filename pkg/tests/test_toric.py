import pytest

from src.errors import CapExceededError, InputError
from src.sylvester.context import make_context
from src.toric.wps import (build_simplex, charts, crepant_ray, dual_vertices,
                           self_duality_witness)


def test_simplex_n1(ctx1):
    simplex = build_simplex(ctx1)
    assert simplex.dim == 2
    assert simplex.vertices == ((1, 0), (0, 1), (-3, -2))


def test_chart_n2_j0(ctx2):
    chart = charts(ctx2)[0]
    assert chart.order == 21
    assert chart.weights == (1, 14, 6)
    assert chart.reid_sum % chart.order == 0


@pytest.mark.parametrize("n", range(6))
def test_reid_congruence_all_charts(n):
    result = charts(make_context(n))
    assert len(result) == n + 1
    assert all(c.to_dict()['reid_sum_mod_order'] == 0 for c in result)


def test_crepant_ray_small_levels(ctx1, ctx2):
    assert crepant_ray(ctx2) == (-3, -2, 0)
    assert crepant_ray(ctx1) == (-1, 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_crepant_ray_relation(n):
    ray = crepant_ray(make_context(n))
    prev = make_context(n - 1)
    assert ray == tuple(-d for d in prev.d_row) + (0,)


def test_crepant_ray_needs_n1():
    with pytest.raises(InputError):
        crepant_ray(make_context(0))


def test_dual_vertices_n1(ctx1):
    assert dual_vertices(build_simplex(ctx1)) == ((1, -1), (-1, 2), (-1, -1))


@pytest.mark.parametrize("n", range(4))
def test_self_duality_witness(n):
    ctx = make_context(n)
    simplex = build_simplex(ctx)
    witness = self_duality_witness(ctx)
    assert abs(witness.determinant) == 1
    assert sorted(witness.permutation) == list(range(n + 2))
    for k, v in enumerate(simplex.vertices):
        image = tuple(sum(a * b for a, b in zip(row, v)) for row in witness.matrix)
        assert image == witness.dual_vertices[witness.permutation[k]]


@pytest.mark.slow
def test_self_duality_witness_n4():
    assert abs(self_duality_witness(make_context(4)).determinant) == 1


def test_self_duality_respects_cap():
    with pytest.raises(CapExceededError):
        self_duality_witness(make_context(5), max_dim=4)
