"""
h^{1,1} orbifold pela função geradora Q(z, w)

Cada ℓ em [0, d) contribui com N(ℓ) soluções de A(ℓ) + Σ k_i a_i = d com
B(ℓ) = 0. Internamente tudo é feito com 2A e 2B inteiros.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import mod_inverse
from tqdm import tqdm

from src.errors import CapExceededError, HypothesisError, InputError, VerificationError
from src.sylvester.context import (SylvesterContext, count_positive, make_context,
                                   milnor_box_counts)
from src.utils.parallel import parallel_map, split_range

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThetaProfile:
    """Partes fracionárias θ_i(ℓ) e a partição T0 ⊔ T1 dos índices"""

    ell: int
    theta: Tuple[Fraction, ...]
    T0: Tuple[int, ...]
    T1: Tuple[int, ...]


@dataclass(frozen=True)
class HodgeSummand:
    """Dados (A, B, S, N) do ℓ-ésimo termo"""

    profile: ThetaProfile
    A: Fraction
    B: Fraction
    S: int
    N: int


def _weights(ctx: SylvesterContext) -> Tuple[int, ...]:
    """a_i = d/s_i para i ≤ n e a_{n+1} = 1"""
    return ctx.d_row + (1,)


def profile(ctx: SylvesterContext, ell: int) -> ThetaProfile:
    """
    θ_i(ℓ) = {ℓ/s_i} (i ≤ n), θ_{n+1}(ℓ) = ℓ/d

    Args:
        ctx: Contexto
        ell: 0 ≤ ℓ < d_n

    Returns:
        ThetaProfile
    """
    if not 0 <= ell < ctx.d_n:
        raise InputError(f"ℓ = {ell} fora de [0, {ctx.d_n})")
    theta = tuple(Fraction(ell % sk, sk) for sk in ctx.s) + (Fraction(ell, ctx.d_n),)
    T0 = tuple(i for i, t in enumerate(theta) if t == 0)
    T1 = tuple(i for i, t in enumerate(theta) if t != 0)
    return ThetaProfile(ell=ell, theta=theta, T0=T0, T1=T1)


def _scaled_theta(ctx: SylvesterContext, ell: int) -> List[int]:
    """d·θ_i(ℓ) como inteiros"""
    return [a * (ell % sk) for a, sk in zip(ctx.d_row, ctx.s)] + [ell]


def _ranges(ctx: SylvesterContext) -> Tuple[int, ...]:
    return tuple(sk - 2 for sk in ctx.s) + (ctx.d_n - 2,)


def _count_solutions(weights: Sequence[int], bounds: Sequence[int], target: int) -> int:
    """
    Soluções de Σ k_i w_i = target com 0 ≤ k_i ≤ bounds[i]

    Pesos em ordem decrescente; o último índice tem contagem em forma fechada.
    """
    if target < 0:
        return 0
    if not weights:
        return 1 if target == 0 else 0
    if len(weights) == 1:
        w, b = weights[0], bounds[0]
        return 1 if target % w == 0 and target // w <= b else 0
    w, b = weights[0], bounds[0]
    total = 0
    for k in range(min(b, target // w) + 1):
        total += _count_solutions(weights[1:], bounds[1:], target - k * w)
    return total


def _kernel(ctx: SylvesterContext, ell: int) -> Tuple[int, int, int, List[int], int]:
    """(2A, 2B, S, T0, N) de ℓ sem frações"""
    d = ctx.d_n
    a = _weights(ctx)
    dtheta = _scaled_theta(ctx, ell)
    T0 = [i for i, v in enumerate(dtheta) if v == 0]
    T1 = [i for i, v in enumerate(dtheta) if v != 0]
    twice_a = sum(d - 2 * a[i] for i in T1)
    twice_b = sum(2 * dtheta[i] - d for i in T1)
    S = ell - sum(ell // sk for sk in ctx.s)

    N = 0
    if twice_b == 0 and twice_a % 2 == 0:
        bounds = _ranges(ctx)
        order = sorted(T0, key=lambda i: -a[i])
        N = _count_solutions([a[i] for i in order], [bounds[i] for i in order],
                             d - twice_a // 2)
    return twice_a, twice_b, S, T0, N


def summand(ctx: SylvesterContext, ell: int) -> HodgeSummand:
    """
    A, B, S exatos e N(ℓ) por enumeração

    Args:
        ctx: Contexto
        ell: 0 ≤ ℓ < d_n

    Returns:
        HodgeSummand
    """
    prof = profile(ctx, ell)
    twice_a, twice_b, S, _, N = _kernel(ctx, ell)
    return HodgeSummand(profile=prof, A=Fraction(twice_a, 2), B=Fraction(twice_b, 2), S=S, N=N)


@dataclass
class ScanStats:
    """Agregado de uma varredura de ℓ"""

    n: int
    scanned: int = 0
    total: int = 0
    nonzero_ell: List[int] = field(default_factory=list)

    def merge(self, other: "ScanStats") -> None:
        self.scanned += other.scanned
        self.total += other.total
        self.nonzero_ell.extend(other.nonzero_ell)


def _scan_chunk(job: Tuple[int, int, int]) -> ScanStats:
    """Varre ℓ ∈ [start, stop) conferindo as identidades de S e B"""
    n, start, stop = job
    ctx = make_context(n)
    d = ctx.d_n
    stats = ScanStats(n=n)
    for ell in range(start, stop):
        twice_a, twice_b, S, T0, N = _kernel(ctx, ell)
        # S = ℓ/d + Σ{ℓ/s_i}, multiplicado por d
        if S * d != ell + sum(a * (ell % sk) for a, sk in zip(ctx.d_row, ctx.s)):
            raise VerificationError(f"Identidade de S falhou em ℓ={ell}", {'ell': ell})
        p = n + 2 - len(T0)
        if (twice_b == 0) != (2 * S == p):
            raise VerificationError(f"B = 0 ⇔ S = p/2 falhou em ℓ={ell}", {'ell': ell})
        stats.scanned += 1
        stats.total += N
        if ell > 0 and N > 0:
            stats.nonzero_ell.append(ell)
    return stats


def scan(ctx: SylvesterContext, threads: int = 1, chunk_size: int = 200_000,
         show_progress: bool = True) -> ScanStats:
    """
    Soma N(ℓ) em [0, d) por blocos

    Args:
        ctx: Contexto
        threads: Processos
        chunk_size: ℓ por bloco
        show_progress: Barra tqdm para n ≥ 4

    Returns:
        ScanStats com os ℓ > 0 de N(ℓ) não nulo
    """
    jobs = [(ctx.n, r.start, r.stop) for r in split_range(0, ctx.d_n, chunk_size)]
    stats = ScanStats(n=ctx.n)
    if threads <= 1:
        iterator = jobs
        if show_progress and ctx.n >= 4:
            iterator = tqdm(jobs, desc=f"Varredura de ℓ (n={ctx.n})",
                            bar_format='{l_bar}{bar:30}| {n_fmt}/{total_fmt} [{elapsed}]',
                            colour='magenta')
        for job in iterator:
            stats.merge(_scan_chunk(job))
    else:
        for partial in parallel_map(_scan_chunk, jobs, threads):
            stats.merge(partial)
    stats.nonzero_ell.sort()
    return stats


def h11_brute(ctx: SylvesterContext, threads: int = 1, max_dim: int = 4,
              chunk_size: int = 200_000, show_progress: bool = True) -> int:
    """Σ_{ℓ=0}^{d-1} N(ℓ) pela varredura completa"""
    if ctx.n > max_dim:
        raise CapExceededError(f"Varredura de ℓ limitada a n ≤ {max_dim}", "h11_fast")
    stats = scan(ctx, threads=threads, chunk_size=chunk_size, show_progress=show_progress)
    logger.info(f"h11 (varredura) n={ctx.n}: {stats.total}")
    return stats.total


def lemma_n0_count(ctx: SylvesterContext) -> int:
    """#{(k_1..k_n): 0 ≤ k_i ≤ s_i − 2, Σ k_i/s_i ≤ 1} − 1"""
    d, a, s = ctx.d_n, ctx.d_row, ctx.s
    last = ctx.n

    def rec(k: int, used: int) -> int:
        rest = d - used
        if k == last:
            return min(s[k] - 2, rest // a[k]) + 1
        total = 0
        for value in range(s[k] - 1):
            if used + value * a[k] > d:
                break
            total += rec(k + 1, used + value * a[k])
        return total

    return rec(1, 0) - 1


def h11_fast(ctx: SylvesterContext, threads: int = 1) -> int:
    """
    h^{1,1} = N(0), pois N(ℓ) = 0 para ℓ > 0 quando n ≥ 3

    Confere a contagem direta de N(0) com count_positive − 1.
    """
    if ctx.n < 3:
        raise HypothesisError(f"h11_fast exige n ≥ 3 (recebido n = {ctx.n})")
    direct = lemma_n0_count(ctx)
    via_moduli = count_positive(ctx, threads=threads) - 1
    if direct != via_moduli:
        raise VerificationError(f"N(0) = {direct} difere de dim M_n = {via_moduli}",
                                {'n': ctx.n})
    return direct


@dataclass(frozen=True)
class AuditResult:
    """Porta da demonstração em que ℓ foi eliminado"""

    ell: int
    gate: str
    N: int


GATES = ('m>=n-1', 'parity-B', 'T-shape', 'Ej-congruence')


def structure_audit(ctx: SylvesterContext, ell: int) -> AuditResult:
    """
    Percorre as condições necessárias para N(ℓ) > 0 e registra onde ℓ cai

    Args:
        ctx: Contexto com n ≥ 3
        ell: 0 < ℓ < d_n

    Returns:
        AuditResult; N > 0 numa porta eliminada ou um sobrevivente levantam
        VerificationError
    """
    n = ctx.n
    if n < 3:
        raise HypothesisError("A auditoria exige n ≥ 3")
    if not 0 < ell < ctx.d_n:
        raise InputError(f"ℓ = {ell} fora de (0, {ctx.d_n})")

    _, twice_b, _, T0, N = _kernel(ctx, ell)
    a = _weights(ctx)
    m = len(T0)

    if m < n - 1:
        gate = 'm>=n-1'
    elif twice_b != 0:
        gate = 'parity-B'
    elif sorted(T0) != [i for i in range(n + 1) if i != _missing(T0, n)]:
        gate = 'T-shape'
    else:
        j = _missing(T0, n)
        forced = [(i, ej_forced_residue(a, ctx.s, T0, j, i)) for i in T0]
        if any(k is not None and k > ctx.s[i] - 2 for i, k in forced):
            gate = 'Ej-congruence'
        else:
            raise VerificationError(f"ℓ={ell} sobreviveu a todas as portas", {'ell': ell})

    if N > 0:
        raise VerificationError(f"N({ell}) = {N} > 0 eliminado na porta {gate}",
                                {'ell': ell, 'gate': gate, 'N': N})
    return AuditResult(ell=ell, gate=gate, N=N)


def ej_forced_residue(a: Sequence[int], s: Sequence[int], T0: Sequence[int],
                      j: int, i: int) -> Optional[int]:
    """
    Resíduo de k_i mod s_i imposto por Σ_{r∈T0} k_r a_r = a_j + 1

    Só fica determinado quando a_r ≡ 0 (mod s_i) para r ≠ i e a_i é
    invertível mod s_i; nos demais casos devolve None.
    """
    if any(a[r] % s[i] for r in T0 if r != i):
        return None
    try:
        inverse = mod_inverse(a[i], s[i])
    except ValueError:
        return None
    return (a[j] + 1) * inverse % s[i]


def _missing(T0: Sequence[int], n: int) -> int:
    """Índice j de {0..n} ausente em T0 (−1 se não houver exatamente um)"""
    missing = [i for i in range(n + 1) if i not in T0]
    return missing[0] if len(missing) == 1 else -1


def audit_all(ctx: SylvesterContext) -> Dict[str, int]:
    """Conta por porta as eliminações de todo ℓ em (0, d)"""
    counts = Counter(structure_audit(ctx, ell).gate for ell in range(1, ctx.d_n))
    return {gate: counts.get(gate, 0) for gate in GATES}


def q_coefficient(ctx: SylvesterContext, z_exp, w_exp, max_dim: int = 3) -> int:
    """
    Coeficiente de z^{z_exp} w^{w_exp} em Q(z, w), sem verificação de significado

    Expoentes podem ser meio-inteiros (aceita "num/den").
    """
    if ctx.n > max_dim:
        raise CapExceededError(f"Extração de coeficientes limitada a n ≤ {max_dim}")
    z_exp, w_exp = Fraction(z_exp), Fraction(w_exp)
    a = _weights(ctx)
    bounds = _ranges(ctx)
    total = 0
    for ell in range(ctx.d_n):
        dtheta = _scaled_theta(ctx, ell)
        T0 = [i for i, v in enumerate(dtheta) if v == 0]
        T1 = [i for i, v in enumerate(dtheta) if v != 0]
        A = Fraction(sum(ctx.d_n - 2 * a[i] for i in T1), 2)
        B = Fraction(sum(2 * dtheta[i] - ctx.d_n for i in T1), 2)
        target = z_exp - A
        if B != w_exp or target.denominator != 1:
            continue
        order = sorted(T0, key=lambda i: -a[i])
        total += _count_solutions([a[i] for i in order], [bounds[i] for i in order],
                                  int(target))
    return total


def mu_check(ctx: SylvesterContext) -> Dict[str, object]:
    """μ = ∏(s_k − 1) frente à caixa de Milnor separada por sinal"""
    counts = milnor_box_counts(ctx)
    return {
        'mu': ctx.mu,
        'positive': counts['positive'],
        'negative': counts['negative'],
        'consistent': counts['positive'] + counts['negative'] + counts['zero'] == ctx.mu
    }


def hodge_report(ctx: SylvesterContext, method: str = "auto", threads: int = 1,
                 max_brute_dim: int = 4, chunk_size: int = 200_000) -> Dict:
    """Relatório {n, h11, method, gates} para a linha de comando"""
    if method == "auto":
        method = "fast" if ctx.n >= 3 else "brute"
    if method == "fast":
        h11 = h11_fast(ctx, threads=threads)
    elif method == "brute":
        h11 = h11_brute(ctx, threads=threads, max_dim=max_brute_dim, chunk_size=chunk_size)
    else:
        raise InputError(f"Método desconhecido: {method}")

    report = {'n': ctx.n, 'h11': h11, 'method': method}
    if ctx.n >= 3 and ctx.d_n <= 10 ** 4:
        report['gates'] = audit_all(ctx)
    if ctx.n < 3:
        report['note'] = "n < 3: valor não comparado com dim M_n"
    return report
