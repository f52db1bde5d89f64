"""
Dados tóricos do espaço projetivo com pesos P_{n+1} = P(d_{n,0},…,d_{n,n},1)
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Tuple

from sympy import Matrix

from src.errors import CapExceededError, InputError, LatticeError, VerificationError
from src.sylvester.context import SylvesterContext, make_context

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class FanoSimplex:
    """Simplexo de Fano com v_k = e_k (k ≤ n) e v_{n+1} = −Σ d_{n,k} e_k"""

    dim: int
    vertices: Tuple[Vector, ...]

    def to_dict(self) -> Dict:
        return {'dim': self.dim, 'vertices': [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class QuotientChart:
    """Carta C^{n+1}/μ_{d_{n,j}} com os resíduos dos pesos"""

    j: int
    order: int
    weights: Tuple[int, ...]

    @property
    def reid_sum(self) -> int:
        return sum(self.weights)

    def to_dict(self) -> Dict:
        return {'j': self.j, 'order': self.order, 'weights': list(self.weights),
                'reid_sum_mod_order': self.reid_sum % self.order}


@dataclass(frozen=True)
class SelfDualityWitness:
    """Matriz unimodular T e permutação σ com T v_k = u_{σ(k)}"""

    matrix: Tuple[Vector, ...]
    permutation: Tuple[int, ...]
    dual_vertices: Tuple[Vector, ...]
    determinant: int
    scanned: int

    def to_dict(self) -> Dict:
        return {
            'matrix': [list(row) for row in self.matrix],
            'permutation': list(self.permutation),
            'dual_vertices': [list(u) for u in self.dual_vertices],
            'determinant': self.determinant,
            'scanned': self.scanned
        }


def _unit(size: int, k: int) -> Vector:
    return tuple(1 if i == k else 0 for i in range(size))


def build_simplex(ctx: SylvesterContext) -> FanoSimplex:
    """
    Monta os vértices do leque de P_{n+1} no reticulado N ≅ Z^{n+1}

    Args:
        ctx: Contexto de Sylvester

    Returns:
        Simplexo com a relação Σ d_{n,k} v_k + v_{n+1} = 0 verificada
    """
    size = ctx.n + 1
    vertices = [_unit(size, k) for k in range(size)]
    vertices.append(tuple(-dk for dk in ctx.d_row))

    relation = [
        sum(w * v[c] for w, v in zip(ctx.ambient_weights, vertices))
        for c in range(size)
    ]
    if any(relation):
        raise VerificationError(f"Relação linear dos vértices falhou: {relation}",
                                {'n': ctx.n})
    return FanoSimplex(dim=size, vertices=tuple(vertices))


def charts(ctx: SylvesterContext) -> List[QuotientChart]:
    """Uma carta por j em 0..n, cada uma conferida pela soma de Reid"""
    result = []
    for j, order in enumerate(ctx.d_row):
        residues = (1 % order,) + tuple(
            dk % order for k, dk in enumerate(ctx.d_row) if k != j
        )
        chart = QuotientChart(j=j, order=order, weights=residues)
        if chart.reid_sum % order != 0:
            raise LatticeError(
                f"Carta j={j}: 1 + Σ d_(n,k) = {chart.reid_sum} não é divisível por {order}"
            )
        result.append(chart)
    return result


def crepant_ray(ctx: SylvesterContext) -> Vector:
    """
    Raio v_n' = (d_{n,n} v_n + v_{n+1})/s_n da subdivisão crepante

    Args:
        ctx: Contexto de Sylvester com n ≥ 1

    Returns:
        Vetor inteiro satisfazendo Σ_{k<n} d_{n−1,k} v_k + v_n' = 0
    """
    n = ctx.n
    if n < 1:
        raise InputError("O raio crepante exige n ≥ 1")

    simplex = build_simplex(ctx)
    s_n = ctx.s[n]
    numerator = [
        ctx.d_row[n] * a + b
        for a, b in zip(simplex.vertices[n], simplex.vertices[n + 1])
    ]
    if any(value % s_n for value in numerator):
        raise LatticeError(f"(d_(n,n) v_n + v_(n+1))/s_n não é inteiro: {numerator} / {s_n}")
    ray = tuple(value // s_n for value in numerator)

    prev = make_context(n - 1)
    expected = tuple(-dk for dk in prev.d_row) + (0,)
    if ray != expected:
        raise LatticeError(f"Relação do raio crepante falhou: {ray} != {expected}")
    if prev.d_n + 1 != s_n:
        raise LatticeError(f"d_(n-1) + 1 = {prev.d_n + 1} difere de s_n = {s_n}")

    logger.debug(f"Raio crepante para n={n}: {ray}")
    return ray


def dual_vertices(simplex: FanoSimplex) -> Tuple[Vector, ...]:
    """
    Vértices do dual polar: ⟨u_j, v_k⟩ = −1 para todo k ≠ j

    Levanta LatticeError quando algum u_j não é inteiro (não reflexivo).
    """
    duals = []
    count = len(simplex.vertices)
    for j in range(count):
        rows = [simplex.vertices[k] for k in range(count) if k != j]
        system = Matrix(rows)
        solution = system.LUsolve(Matrix([-1] * len(rows)))
        if any(not value.is_integer for value in solution):
            raise LatticeError(f"Simplexo não reflexivo: u_{j} = {list(solution)}")
        u = tuple(int(value) for value in solution)
        # Substituição de volta, exata
        for v in rows:
            if sum(a * b for a, b in zip(u, v)) != -1:
                raise VerificationError(f"⟨u_{j}, v⟩ != -1 para v={v}", {'u': u})
        duals.append(u)
    return tuple(duals)


def self_duality_witness(ctx: SylvesterContext, max_dim: int = 5) -> SelfDualityWitness:
    """
    Procura T unimodular levando o simplexo de Fano ao seu dual polar

    Args:
        ctx: Contexto de Sylvester
        max_dim: Maior n para a busca por permutações

    Returns:
        Primeira testemunha na ordem lexicográfica das permutações
    """
    if ctx.n > max_dim:
        raise CapExceededError(f"Busca por permutações limitada a n ≤ {max_dim}",
                               "um n menor")

    simplex = build_simplex(ctx)
    duals = dual_vertices(simplex)
    size = ctx.n + 1
    last = simplex.vertices[-1]

    scanned = 0
    for sigma in permutations(range(size + 1)):
        scanned += 1
        # v_k = e_k: as colunas de T são u_σ(k)
        columns = [duals[sigma[k]] for k in range(size)]
        image = tuple(
            sum(columns[k][r] * last[k] for k in range(size)) for r in range(size)
        )
        if image != duals[sigma[size]]:
            continue
        matrix = Matrix(size, size, lambda r, c: columns[c][r])
        det = int(matrix.det())
        if abs(det) != 1:
            continue

        rows = tuple(tuple(int(matrix[r, c]) for c in range(size)) for r in range(size))
        witness = SelfDualityWitness(matrix=rows, permutation=sigma,
                                     dual_vertices=duals, determinant=det,
                                     scanned=scanned)
        _check_witness(simplex, witness)
        logger.info(f"Testemunha de autodualidade para n={ctx.n} após {scanned} permutações")
        return witness

    raise LatticeError(f"Nenhuma testemunha de autodualidade para n={ctx.n} "
                       f"({scanned} permutações)")


def _check_witness(simplex: FanoSimplex, witness: SelfDualityWitness) -> None:
    """Remultiplica T v_k e compara com u_σ(k)"""
    for k, v in enumerate(simplex.vertices):
        image = tuple(sum(a * b for a, b in zip(row, v)) for row in witness.matrix)
        if image != witness.dual_vertices[witness.permutation[k]]:
            raise VerificationError(f"T v_{k} = {image} não confere",
                                    {'permutation': list(witness.permutation)})
