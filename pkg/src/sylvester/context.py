"""
Aritmética exata da sequência de Sylvester e dos monômios de deformação
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import mpmath
from tqdm import tqdm

from src.errors import CapExceededError, InputError, VerificationError
from src.utils.parallel import parallel_sum

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 7


@dataclass(frozen=True)
class SylvesterContext:
    """Números s_k, d_n, d_{n,j} e μ para uma dimensão n fixa"""

    n: int
    s: Tuple[int, ...]
    d_n: int
    d_row: Tuple[int, ...]
    mu: int

    @property
    def nvars(self) -> int:
        """Quantidade de variáveis afins x_0..x_n"""
        return self.n + 1

    @property
    def ambient_weights(self) -> Tuple[int, ...]:
        """Pesos (d_{n,0},…,d_{n,n},1) de P_{n+1}"""
        return self.d_row + (1,)

    def identities(self) -> Dict[str, bool]:
        """
        Avalia as identidades de Sylvester sem levantar exceções

        Returns:
            Dicionário nome -> resultado exato
        """
        s, d, row = self.s, self.d_n, self.d_row
        recursion = s[0] == 2 and all(
            s[k + 1] == 1 + math.prod(s[:k + 1]) for k in range(self.n)
        )
        coprime = all(
            math.gcd(s[j], s[k]) == 1
            for j in range(len(s)) for k in range(j + 1, len(s))
        ) and math.gcd(*row) == 1
        egyptian = sum(row) + 1 == d
        row_mod_s = all(row[k] % s[k] == s[k] - 1 for k in range(len(s)))
        others_mod_row = all(
            (sum(row) - row[j]) % row[j] == (row[j] - 1) % row[j]
            for j in range(len(s))
        )
        return {
            'recursion': recursion,
            'coprime': coprime,
            'egyptian': egyptian,
            'd_row_mod_s': row_mod_s,
            'others_mod_d_row': others_mod_row
        }


@dataclass(frozen=True, order=True)
class ExponentTuple:
    """Vetor de expoentes de um monômio de deformação e seu peso"""

    i: Tuple[int, ...]
    weight: int

    def key(self) -> str:
        """Chave textual "i_0,…,i_n" usada na serialização"""
        return ",".join(str(v) for v in self.i)


@lru_cache(maxsize=None, typed=True)
def make_context(n: int) -> SylvesterContext:
    """
    Constrói o contexto de Sylvester para a dimensão n

    Args:
        n: Dimensão (inteiro não negativo)

    Returns:
        Contexto com todas as identidades verificadas
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InputError(f"Dimensão inválida: {n!r}")

    s = [2]
    for _ in range(n):
        s.append(1 + math.prod(s))
    d_n = math.prod(s)
    d_row = tuple(d_n // sk for sk in s)
    mu = math.prod(sk - 1 for sk in s)
    ctx = SylvesterContext(n=n, s=tuple(s), d_n=d_n, d_row=d_row, mu=mu)

    failed = [name for name, ok in ctx.identities().items() if not ok]
    if failed:
        raise VerificationError(f"Identidades de Sylvester falharam para n={n}: {failed}",
                                {'n': n, 'failed': failed})
    return ctx


def weight(ctx: SylvesterContext, i: Sequence[int]) -> int:
    """
    Peso w(i_0,…,i_n) = d_n − Σ i_k d_{n,k} de um monômio

    Args:
        ctx: Contexto de Sylvester
        i: Expoentes i_0..i_n (não negativos)

    Returns:
        Peso inteiro, possivelmente negativo
    """
    if len(i) != ctx.n + 1:
        raise InputError(f"Esperados {ctx.n + 1} expoentes, recebidos {len(i)}")
    if any(v < 0 for v in i):
        raise InputError(f"Expoentes negativos: {tuple(i)}")
    return ctx.d_n - sum(v * dk for v, dk in zip(i, ctx.d_row))


def _positive_tuples(ctx: SylvesterContext) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Gera (i, peso) com 0 ≤ i_k ≤ s_k − 2 e peso > 0 em ordem lexicográfica"""
    s, row, d, last = ctx.s, ctx.d_row, ctx.d_n, ctx.n

    def rec(k: int, prefix: Tuple[int, ...], used: int):
        if k > last:
            yield prefix, d - used
            return
        for value in range(s[k] - 1):
            total = used + value * row[k]
            if total >= d:
                break
            yield from rec(k + 1, prefix + (value,), total)

    yield from rec(0, (), 0)


def enumerate_positive(ctx: SylvesterContext, cap: Optional[int] = None) -> List[ExponentTuple]:
    """
    Lista as coordenadas de M_n: tuplas da caixa de Milnor com peso positivo

    Args:
        ctx: Contexto de Sylvester
        cap: Máximo de tuplas materializadas

    Returns:
        Tuplas em ordem lexicográfica; o comprimento é N_n = dim M_n + 1
    """
    cap = DEFAULT_CAP if cap is None else cap
    # μ limita o total; só conta de fato quando μ passa do limite
    if ctx.mu > cap and count_positive(ctx, show_progress=False) > cap:
        raise CapExceededError(
            f"M_{ctx.n} tem mais de {cap} coordenadas", "count_positive"
        )
    tuples = [ExponentTuple(i, w) for i, w in _positive_tuples(ctx)]
    logger.debug(f"Enumeradas {len(tuples)} coordenadas de M_{ctx.n}")
    return tuples


def _prefixes(ctx: SylvesterContext, depth: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Prefixos (i_0..i_{depth-1}) ainda admissíveis e suas somas parciais"""
    s, row, d = ctx.s, ctx.d_row, ctx.d_n
    frontier = [((), 0)]
    for k in range(depth):
        grown = []
        for prefix, used in frontier:
            for value in range(s[k] - 1):
                total = used + value * row[k]
                if total >= d:
                    break
                grown.append((prefix + (value,), total))
        frontier = grown
    return frontier


def _count_tail(ctx: SylvesterContext, k: int, used: int) -> int:
    """Conta completamentos (i_k..i_n) com forma fechada na última coordenada"""
    s, row, d, last = ctx.s, ctx.d_row, ctx.d_n, ctx.n
    if k == last:
        rest = d - used
        if rest <= 0:
            return 0
        return min(s[last] - 2, (rest - 1) // row[last]) + 1
    total = 0
    step = row[k]
    for value in range(s[k] - 1):
        partial = used + value * step
        if partial >= d:
            break
        total += _count_tail(ctx, k + 1, partial)
    return total


def _count_chunk(job: Tuple[int, int, int]) -> int:
    """Unidade de trabalho serializável: (n, profundidade, soma parcial)"""
    n, depth, used = job
    return _count_tail(make_context(n), depth, used)


def count_positive(ctx: SylvesterContext, threads: int = 1, show_progress: bool = True) -> int:
    """
    Conta N_n sem materializar as tuplas

    Args:
        ctx: Contexto de Sylvester
        threads: Processos usados na contagem por prefixos
        show_progress: Mostra barra tqdm para n ≥ 5

    Returns:
        Número de monômios de peso positivo (dim M_n + 1)
    """
    depth = min(ctx.n, 4)
    prefixes = _prefixes(ctx, depth)
    jobs = [(ctx.n, depth, used) for _, used in prefixes]

    if threads <= 1:
        iterator = jobs
        if show_progress and ctx.n >= 5:
            iterator = tqdm(jobs, desc=f"Contando N_{ctx.n}",
                            bar_format='{l_bar}{bar:30}| {n_fmt}/{total_fmt} [{elapsed}]',
                            colour='cyan')
        total = sum(_count_chunk(job) for job in iterator)
    else:
        total = parallel_sum(_count_chunk, jobs, threads)

    logger.info(f"N_{ctx.n} = {total} (dim M_{ctx.n} = {total - 1})")
    return total


def milnor_box_counts(ctx: SylvesterContext) -> Dict[str, int]:
    """
    Separa a caixa de Milnor 0 ≤ i_k ≤ s_k − 2 por sinal do peso

    Args:
        ctx: Contexto de Sylvester

    Returns:
        Dicionário com contagens 'positive', 'negative', 'zero' e 'mu'
    """
    positive = count_positive(ctx, show_progress=False)
    if ctx.mu <= DEFAULT_CAP:
        # Varredura direta: confirma a ausência de peso 0 na caixa
        counts = {'positive': 0, 'negative': 0, 'zero': 0}
        row, d = ctx.d_row, ctx.d_n
        ranges = [range(sk - 1) for sk in ctx.s]

        def rec(k: int, used: int):
            if k == len(ranges):
                w = d - used
                counts['positive' if w > 0 else 'negative' if w < 0 else 'zero'] += 1
                return
            for value in ranges[k]:
                rec(k + 1, used + value * row[k])

        rec(0, 0)
        if counts['positive'] != positive:
            raise VerificationError(
                f"Contagem por prefixos ({positive}) difere da varredura ({counts['positive']})",
                {'n': ctx.n}
            )
    else:
        counts = {'positive': positive, 'negative': ctx.mu - positive, 'zero': 0}
    counts['mu'] = ctx.mu
    return counts


def weight_table(ctx: SylvesterContext, cap: Optional[int] = None) -> List[Dict]:
    """Linhas (tupla, peso) para exportação tabular"""
    return [{'tuple': t.key(), 'weight': t.weight} for t in enumerate_positive(ctx, cap)]


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Estimativas das constantes c e a do crescimento da torre"""

    c: mpmath.mpf
    c_error: mpmath.mpf
    a: mpmath.mpf
    level: int
    ratio: Fraction


def asymptotic_constants(depth: int, max_count_level: int = 5,
                         precision: int = 30, threads: int = 1) -> AsymptoticEstimate:
    """
    Estima c e a com s_n ≈ c^{2^{n+1}} e dim M_n + 1 ≈ a·c^{2^{n+2}}/(n−1)!

    Args:
        depth: Índice m de s_m usado para c (≥ 5)
        max_count_level: Maior nível em que dim M_m é contado
        precision: Dígitos decimais de trabalho
        threads: Processos para a contagem

    Returns:
        Estimativa com cota de erro de c e a razão exata de controle
    """
    if depth < 5:
        raise InputError(f"Profundidade mínima é 5, recebida {depth}")

    ctx = make_context(depth)
    s_m = ctx.s[depth]
    with mpmath.workdps(precision):
        exponent = mpmath.mpf(1) / mpmath.mpf(2) ** (depth + 1)
        # s_m^(2^{-m-1}) decresce e (s_m − 1/2)^(2^{-m-1}) cresce para c
        c = mpmath.power(s_m, exponent)
        c_low = mpmath.power(mpmath.mpf(s_m) - mpmath.mpf(1) / 2, exponent)

        level = min(depth, max_count_level)
        count = count_positive(make_context(level), threads=threads)
        a = count * math.factorial(level - 1) / mpmath.power(c, 2 ** (level + 2))

    box = math.prod(sk - 1 for sk in make_context(level).s[1:])
    ratio = Fraction(count * math.factorial(level - 1), box)
    logger.info(f"c ≈ {mpmath.nstr(c, 8)}, a ≈ {mpmath.nstr(a, 8)} (nível {level})")
    return AsymptoticEstimate(c=c, c_error=c - c_low, a=a, level=level, ratio=ratio)
