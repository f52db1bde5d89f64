"""
Simplex exato em duas fases sobre Fraction, com a regra de Bland
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

logger = logging.getLogger(__name__)


@dataclass
class LPResult:
    """Solução de min c·x sujeito a Ax = b, x ≥ 0"""

    status: str
    value: Fraction = Fraction(0)
    x: List[Fraction] = field(default_factory=list)
    y: List[Fraction] = field(default_factory=list)
    pivots: int = 0


class SimplexTableau:
    """
    Tableau denso para problemas na forma padrão

    Cada linha recebe uma variável artificial; as colunas artificiais
    guardam B^{-1} ao longo dos pivôs, de onde sai a solução dual.
    """

    def __init__(self, A: Sequence[Sequence], b: Sequence, c: Sequence):
        self.m = len(A)
        self.n = len(c)
        self.signs = [1] * self.m
        self.rows: List[List[Fraction]] = []
        self.rhs: List[Fraction] = []
        for i, (row, bi) in enumerate(zip(A, b)):
            if len(row) != self.n:
                raise ValueError(f"Linha {i} com {len(row)} colunas, esperado {self.n}")
            row = [Fraction(v) for v in row]
            bi = Fraction(bi)
            if bi < 0:
                row, bi = [-v for v in row], -bi
                self.signs[i] = -1
            artificial = [Fraction(1 if k == i else 0) for k in range(self.m)]
            self.rows.append(row + artificial)
            self.rhs.append(bi)
        self.cost = [Fraction(v) for v in c]
        self.basis = list(range(self.n, self.n + self.m))
        self.pivots = 0

    def pivot(self, r: int, e: int) -> None:
        """Pivô na linha r, coluna e"""
        piv = self.rows[r][e]
        self.rows[r] = [v / piv for v in self.rows[r]]
        self.rhs[r] /= piv
        for i in range(self.m):
            if i == r:
                continue
            f = self.rows[i][e]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = e
        self.pivots += 1

    def _reduced_cost(self, cost: List[Fraction], j: int) -> Fraction:
        return cost[j] - sum(cost[self.basis[i]] * self.rows[i][j] for i in range(self.m))

    def _objective(self, cost: List[Fraction]) -> Fraction:
        return sum(cost[self.basis[i]] * self.rhs[i] for i in range(self.m))

    def bland_step(self, cost: List[Fraction], allowed: int) -> str:
        """Um passo: menor índice com custo reduzido negativo entra"""
        entering = None
        for j in range(allowed):
            if j not in self.basis and self._reduced_cost(cost, j) < 0:
                entering = j
                break
        if entering is None:
            return 'optimal'
        candidates = [
            (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
            for i in range(self.m) if self.rows[i][entering] > 0
        ]
        if not candidates:
            return 'unbounded'
        _, _, r = min(candidates)
        self.pivot(r, entering)
        return 'go_on'

    def run(self, cost: List[Fraction], allowed: int) -> str:
        while True:
            status = self.bland_step(cost, allowed)
            if status != 'go_on':
                return status

    def pivot_out_artificials(self) -> None:
        """Remove artificiais da base (nível zero) quando a linha permite"""
        for i, var in enumerate(self.basis):
            if var < self.n:
                continue
            for j in range(self.n):
                if j not in self.basis and self.rows[i][j] != 0:
                    self.pivot(i, j)
                    break
            else:
                logger.debug(f"Linha {i} redundante; artificial fica na base em zero")

    def solve(self) -> LPResult:
        """
        Resolve o problema nas duas fases

        Returns:
            LPResult com status 'optimal', 'infeasible' ou 'unbounded'
        """
        total = self.n + self.m
        phase_one = [Fraction(0)] * self.n + [Fraction(1)] * self.m
        self.run(phase_one, self.n)
        if self._objective(phase_one) != 0:
            return LPResult(status='infeasible', pivots=self.pivots)
        self.pivot_out_artificials()

        phase_two = self.cost + [Fraction(0)] * self.m
        status = self.run(phase_two, self.n)
        if status == 'unbounded':
            return LPResult(status='unbounded', pivots=self.pivots)

        x = [Fraction(0)] * total
        for i, var in enumerate(self.basis):
            x[var] = self.rhs[i]
        # y = c_B B^{-1}; B^{-1} está nas colunas artificiais
        y = [
            self.signs[r] * sum(phase_two[self.basis[i]] * self.rows[i][self.n + r]
                                for i in range(self.m))
            for r in range(self.m)
        ]
        value = self._objective(phase_two)
        logger.debug(f"Simplex ótimo {value} após {self.pivots} pivôs")
        return LPResult(status='optimal', value=value, x=x[:self.n], y=y, pivots=self.pivots)


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """min c·x com Ax = b, x ≥ 0, em aritmética exata"""
    return SimplexTableau(A, b, c).solve()
