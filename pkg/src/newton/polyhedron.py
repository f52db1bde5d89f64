"""
Poliedro de Newton: saída diagonal, limiar log canônico e discrepâncias
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src.errors import CapExceededError, InputError, VerificationError
from src.newton.simplex import solve_lp
from src.polynomials.multipoly import MultiPoly
from src.sylvester.context import SylvesterContext, make_context
from src.utils.parallel import parallel_map
from src.utils.rationals import RationalLike, format_fraction, to_fraction

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


@dataclass(frozen=True)
class NewtonSupport:
    """Expoentes dos monômios de f, sem repetição e em ordem lexicográfica"""

    nvars: int
    points: Tuple[Point, ...]

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> "NewtonSupport":
        unique = sorted({tuple(int(v) for v in p) for p in points})
        if not unique:
            raise InputError("Suporte vazio")
        nvars = len(unique[0])
        if nvars == 0 or any(len(p) != nvars for p in unique):
            raise InputError("Pontos do suporte com dimensões diferentes")
        if any(v < 0 for p in unique for v in p):
            raise InputError("Pontos do suporte com coordenada negativa")
        return cls(nvars=nvars, points=tuple(unique))

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "NewtonSupport":
        if poly.is_zero():
            raise InputError("Polinômio nulo não tem poliedro de Newton")
        return cls.from_points(poly.support())


@dataclass(frozen=True)
class DiagonalExit:
    """Ponto (c,…,c) onde a diagonal sai do poliedro, com certificados primal e dual"""

    support: NewtonSupport
    c: Fraction
    lambdas: Tuple[Fraction, ...]
    omega: Tuple[Fraction, ...]
    omega_f: Fraction

    def integer_covector(self) -> Tuple[Tuple[int, ...], int]:
        """Covetor ω e ω(f) multiplicados pelo mmc dos denominadores"""
        values = list(self.omega) + [self.omega_f]
        scale = math.lcm(*(v.denominator for v in values))
        scaled = [int(v * scale) for v in values]
        common = math.gcd(*scaled) or 1
        scaled = [v // common for v in scaled]
        return tuple(scaled[:-1]), scaled[-1]

    def to_dict(self) -> Dict:
        omega, omega_f = self.integer_covector()
        return {
            'c': format_fraction(self.c),
            'lambda': {
                " ".join(map(str, p)): format_fraction(lam)
                for p, lam in zip(self.support.points, self.lambdas) if lam
            },
            'omega': list(omega),
            'omega_f': omega_f
        }


def diagonal_exit(support: NewtonSupport) -> DiagonalExit:
    """
    Resolve min c com c·(1,…,1) ∈ conv(pontos) + ortante positivo

    Variáveis: c, λ_j (um por ponto) e folgas s_k. Restrições
    c − Σ_j P_{jk} λ_j − s_k = 0 e Σ_j λ_j = 1.

    Args:
        support: Suporte não vazio

    Returns:
        Saída diagonal com λ e ω verificados por substituição
    """
    points = support.points
    dim, count = support.nvars, len(points)
    width = 1 + count + dim

    A = []
    for k in range(dim):
        row = [Fraction(0)] * width
        row[0] = Fraction(1)
        for j, p in enumerate(points):
            row[1 + j] = Fraction(-p[k])
        row[1 + count + k] = Fraction(-1)
        A.append(row)
    A.append([Fraction(0)] + [Fraction(1)] * count + [Fraction(0)] * dim)
    b = [Fraction(0)] * dim + [Fraction(1)]
    cost = [Fraction(1)] + [Fraction(0)] * (count + dim)

    result = solve_lp(A, b, cost)
    if result.status != 'optimal':
        raise VerificationError(f"Programa linear {result.status} para suporte não vazio",
                                {'points': [list(p) for p in points]})

    exit_ = DiagonalExit(
        support=support,
        c=result.value,
        lambdas=tuple(result.x[1:1 + count]),
        omega=tuple(result.y[:dim]),
        omega_f=result.y[dim]
    )
    verify_certificates(exit_)
    logger.debug(f"Saída diagonal c = {exit_.c} após {result.pivots} pivôs")
    return exit_


def verify_certificates(exit_: DiagonalExit) -> None:
    """Viabilidade primal, viabilidade dual e dualidade forte, exatas"""
    points, c = exit_.support.points, exit_.c
    lambdas, omega, omega_f = exit_.lambdas, exit_.omega, exit_.omega_f

    primal = (
        all(lam >= 0 for lam in lambdas)
        and sum(lambdas) == 1
        and all(sum(lam * p[k] for lam, p in zip(lambdas, points)) <= c
                for k in range(exit_.support.nvars))
    )
    dual = (
        all(w >= 0 for w in omega)
        and sum(omega) <= 1
        and all(sum(w * v for w, v in zip(omega, p)) >= omega_f for p in points)
    )
    if not (primal and dual and omega_f == c):
        raise VerificationError("Certificados da saída diagonal não conferem",
                                exit_.to_dict())


def lct_at_origin(support: NewtonSupport) -> Fraction:
    """min(1, 1/c); suporte com a origem (c = 0) dá 1"""
    c = diagonal_exit(support).c
    if c == 0:
        return Fraction(1)
    return min(Fraction(1), 1 / c)


@dataclass(frozen=True)
class ToricClass:
    """Classificação de c frente a 1, com o covetor da faceta de saída"""

    label: str
    verdict: str
    c: Fraction
    omega: Tuple[int, ...]
    omega_f: int

    def to_dict(self) -> Dict:
        return {'label': self.label, 'verdict': self.verdict, 'c': format_fraction(self.c),
                'omega': list(self.omega), 'omega_f': self.omega_f}


def toric_classify(support: NewtonSupport, assume_nondegenerate: bool = False) -> ToricClass:
    """
    Compara a saída diagonal com 1

    Sem a hipótese de não degenerescência os veredictos são tóricos.

    Args:
        support: Suporte de f
        assume_nondegenerate: Declara f não degenerado em relação a Newton(f)

    Returns:
        Rótulo 'strictly-below-1', 'equal-1' ou 'above-1' e veredicto
    """
    exit_ = diagonal_exit(support)
    omega, omega_f = exit_.integer_covector()
    prefix = "" if assume_nondegenerate else "torically "
    if exit_.c < 1:
        label, verdict = 'strictly-below-1', f"{prefix}canonical"
    elif exit_.c == 1:
        label, verdict = 'equal-1', f"{prefix}log canonical, not {prefix}canonical"
    else:
        label, verdict = 'above-1', f"not {prefix}log canonical"
    return ToricClass(label=label, verdict=verdict.strip(), c=exit_.c,
                      omega=omega, omega_f=omega_f)


@dataclass(frozen=True)
class Discrepancy:
    """Aritmética de uma explosão ponderada com pesos ω"""

    ratio: Fraction
    numerator: int
    sign: str


def blowup_discrepancy(weights: Sequence[int], fdeg: int) -> Discrepancy:
    """
    Razão Σω_k/ω(f) e numerador Σω_k − ω(f) da discrepância do par

    Args:
        weights: Pesos inteiros positivos ω_0..ω_m
        fdeg: ω(f), positivo

    Returns:
        Discrepancy com sinal 'positive', 'zero' ou 'negative' do numerador
    """
    if not weights or any(int(w) != w or w <= 0 for w in weights):
        raise InputError(f"Pesos devem ser inteiros positivos: {list(weights)}")
    if fdeg <= 0:
        raise InputError(f"ω(f) deve ser positivo: {fdeg}")
    total = sum(int(w) for w in weights)
    numerator = total - fdeg
    sign = 'positive' if numerator > 0 else 'zero' if numerator == 0 else 'negative'
    return Discrepancy(ratio=Fraction(total, fdeg), numerator=numerator, sign=sign)


def fiber_threshold(weights: Sequence[RationalLike], fdeg: RationalLike,
                    m: int, u_weight: RationalLike = 1) -> Fraction:
    """
    Limiar (ω(f) − Σω_k)/(m·ω(u)) da explosão ponderada da família após u = t^m

    Com ω_k = d_{n−1,k}·m·v̄ e ω(f) = d_{n−1}·m·v̄ o resultado é v̄.
    """
    if m <= 0:
        raise InputError(f"Ordem de ramificação inválida: {m}")
    weights = [to_fraction(w) for w in weights]
    u_weight = to_fraction(u_weight)
    if u_weight <= 0:
        raise InputError("ω(u) deve ser positivo")
    return (to_fraction(fdeg) - sum(weights)) / (m * u_weight)


def support_of(poly: MultiPoly, base_point: Optional[Sequence[RationalLike]] = None) -> NewtonSupport:
    """Suporte de f(x + p) no ponto base p (origem por omissão)"""
    if base_point is not None:
        if len(base_point) != poly.nvars:
            raise InputError(f"Ponto base com {len(base_point)} coordenadas, esperado {poly.nvars}")
        poly = poly.substitute({
            k: MultiPoly.variable(poly.nvars, k) + to_fraction(v)
            for k, v in enumerate(base_point) if to_fraction(v) != 0
        })
    return NewtonSupport.from_poly(poly)


@dataclass
class LemmaReport:
    """Resultado da varredura exaustiva da desigualdade Σ w_k ≥ d_n"""

    n: int
    tuples: int = 0
    cases: int = 0
    equality_cases: int = 0

    def merge(self, other: "LemmaReport") -> None:
        self.tuples += other.tuples
        self.cases += other.cases
        self.equality_cases += other.equality_cases

    def to_dict(self) -> Dict:
        return {'n': self.n, 'tuples': self.tuples, 'cases': self.cases,
                'equality_cases': self.equality_cases, 'violations': 0}


def _lemma_prefixes(ctx: SylvesterContext, depth: int) -> List[Tuple[Point, int]]:
    frontier = [((), 0)]
    for k in range(depth):
        grown = []
        for prefix, used in frontier:
            for value in range(ctx.s[k]):
                total = used + value * ctx.d_row[k]
                if total >= ctx.d_n:
                    break
                grown.append((prefix + (value,), total))
        frontier = grown
    return frontier


def _check_tuple(ctx: SylvesterContext, prev: SylvesterContext, q: Point,
                 used: int, report: LemmaReport) -> None:
    rest = ctx.d_n - used
    report.tuples += 1
    for j, i_j in enumerate(q):
        if i_j == 0:
            continue
        report.cases += 1
        # w_j = d_{n,j} + rest/i_j, logo Σ_k w_k = d_n − 1 + rest/i_j
        w_j = Fraction(ctx.d_n - (used - ctx.d_row[j] * i_j), i_j)
        total = sum(ctx.d_row) - ctx.d_row[j] + w_j
        if total < ctx.d_n:
            raise VerificationError(f"Σ w_k = {total} < d_n para Q={q}, j={j}",
                                    {'Q': list(q), 'j': j, 'sum': format_fraction(total)})
        if total == ctx.d_n:
            report.equality_cases += 1
            lhs = sum(d * i for d, i in zip(prev.d_row, q[:-1])) + q[-1]
            if lhs != prev.d_n:
                raise VerificationError(
                    f"Igualdade sem Σ d_(n-1,k) i_k + i_n = d_(n-1) para Q={q}, j={j}",
                    {'Q': list(q), 'j': j, 'lhs': lhs}
                )


def _lemma_chunk(job: Tuple[int, Point, int]) -> LemmaReport:
    """Completa um prefixo e verifica todas as tuplas resultantes"""
    n, prefix, used = job
    ctx, prev = make_context(n), make_context(n - 1)
    report = LemmaReport(n=n)

    def rec(k: int, q: Point, partial: int):
        if k > n:
            _check_tuple(ctx, prev, q, partial, report)
            return
        for value in range(ctx.s[k]):
            total = partial + value * ctx.d_row[k]
            if total >= ctx.d_n:
                break
            rec(k + 1, q + (value,), total)

    rec(len(prefix), prefix, used)
    return report


def verify_newton_lemma(ctx: SylvesterContext, threads: int = 1, max_dim: int = 4,
                        show_progress: bool = True) -> LemmaReport:
    """
    Varre Q com 0 ≤ i_k ≤ s_k − 1, Σ i_k d_{n,k} < d_n, e todo j com i_j ≠ 0

    Args:
        ctx: Contexto com 1 ≤ n ≤ max_dim
        threads: Processos
        max_dim: Limite da varredura
        show_progress: Barra tqdm para n ≥ 3

    Returns:
        Relatório com contagem de casos de igualdade; violações levantam
        VerificationError com Q e j
    """
    if ctx.n < 1:
        raise InputError("A verificação exige n ≥ 1")
    if ctx.n > max_dim:
        raise CapExceededError(f"Varredura limitada a n ≤ {max_dim}")

    depth = min(ctx.n, 3)
    jobs = [(ctx.n, prefix, used) for prefix, used in _lemma_prefixes(ctx, depth)]
    report = LemmaReport(n=ctx.n)

    if threads <= 1:
        iterator = jobs
        if show_progress and ctx.n >= 3:
            iterator = tqdm(jobs, desc=f"Lema de Newton n={ctx.n}",
                            bar_format='{l_bar}{bar:30}| {n_fmt}/{total_fmt} [{elapsed}]',
                            colour='green')
        for job in iterator:
            report.merge(_lemma_chunk(job))
    else:
        for partial in parallel_map(_lemma_chunk, jobs, threads):
            report.merge(partial)

    logger.info(f"Lema de Newton n={ctx.n}: {report.tuples} tuplas, "
                f"{report.cases} casos, {report.equality_cases} igualdades")
    return report
