"""
Forma normal das equações (completar potências) e o mergulho M_{n-1} → M_n
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from sympy import factorint, integer_nthroot
from sympy.ntheory.modular import crt

from src.errors import InputError, NormalizationError
from src.polynomials.moduli_point import (ModuliPoint, assemble, dehomogenize,
                                          homogenize, point_from_equation)
from src.polynomials.multipoly import MultiPoly
from src.sylvester.context import make_context

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalizationScale:
    """Registro das operações aplicadas por normalize_equation"""

    factor: Fraction
    variable_scales: Tuple[Fraction, ...]
    shifts: Tuple[MultiPoly, ...]


def complete_power(p: MultiPoly, var: int, s: int) -> Tuple[MultiPoly, MultiPoly]:
    """
    Elimina o termo em x_var^{s−1} pela translação x_var ↦ x_var − b/s

    Args:
        p: Polinômio de grau s em x_var, com x_var^s de coeficiente 1
        var: Índice da variável
        s: Expoente do termo dominante

    Returns:
        (polinômio transformado, translação −b/s usada)
    """
    if p.degree_in(var) > s:
        raise InputError(f"Grau em x{var} maior que {s}")
    if p.coefficient_in(var, s) != 1:
        raise NormalizationError(f"Coeficiente de x{var}^{s} diferente de 1")

    b = p.coefficient_in(var, s - 1)
    if b.is_zero():
        return p, MultiPoly(p.nvars)
    shift = -b / s
    shifted = p.substitute({var: MultiPoly.variable(p.nvars, var) + shift})
    return shifted, shift


def _rational_root(value: Fraction, degree: int) -> Fraction:
    """Raiz racional exata de grau dado, ou NormalizationError"""
    if value < 0 and degree % 2 == 0:
        raise NormalizationError(f"Sem raiz real de ordem {degree} para {value}")
    sign = -1 if value < 0 else 1
    num, num_exact = integer_nthroot(abs(value.numerator), degree)
    den, den_exact = integer_nthroot(value.denominator, degree)
    if not (num_exact and den_exact):
        raise NormalizationError(f"Reescala irracional: ({value})^(1/{degree})")
    return sign * Fraction(int(num), int(den))


def _valuations(value: Fraction) -> Dict[int, int]:
    """v_p de um racional não nulo, por primo"""
    result = dict(factorint(abs(value.numerator)))
    for p, e in factorint(value.denominator).items():
        result[p] = result.get(p, 0) - e
    return result


def leading_factor(leading: Sequence[Fraction], exponents: Sequence[int]) -> Fraction:
    """
    Fator f tal que 1/(f·c_k) é potência s_k-ésima racional para todo k

    Os s_k são primos entre si dois a dois: para cada primo p o expoente
    v_p(f) é a solução em [0, d_n) de v_p(f) ≡ −v_p(c_k) (mod s_k). O sinal
    de f é o de c_0, o único expoente par.

    Args:
        leading: Coeficientes c_k de x_k^{s_k}
        exponents: s_0, …, s_n

    Returns:
        Fator f
    """
    valuations = [_valuations(c) for c in leading]
    primes = sorted(set().union(*valuations))
    factor = Fraction(1 if leading[0] > 0 else -1)
    for p in primes:
        residues = [-v.get(p, 0) % sk for v, sk in zip(valuations, exponents)]
        exponent, _ = crt(list(exponents), residues)
        factor *= Fraction(p) ** int(exponent)
    return factor


def normalize_equation(p: MultiPoly, n: int) -> Tuple[ModuliPoint, NormalizationScale]:
    """
    Leva uma equação quasi-homogênea de grau d_n à forma normal

    Aceita a forma homogênea (n+2 variáveis) ou a afim (n+1 variáveis).
    Os coeficientes de x_k^{s_k} viram 1 por reescala e os termos em
    x_k^{s_k−1} são eliminados para k = 0..n, nessa ordem.

    Args:
        p: Equação
        n: Dimensão

    Returns:
        (ponto de M_n, registro da normalização)
    """
    ctx = make_context(n)
    if p.nvars == n + 2:
        if not p.is_quasi_homogeneous(ctx.ambient_weights, ctx.d_n):
            raise InputError(f"Equação não é quasi-homogênea de grau {ctx.d_n}")
        affine = dehomogenize(p)
    elif p.nvars == n + 1:
        homogenize(p, ctx)
        affine = p
    else:
        raise InputError(f"Equação com {p.nvars} variáveis não serve para n = {n}")

    nvars = n + 1
    leading = []
    for k, sk in enumerate(ctx.s):
        pure = tuple(sk if j == k else 0 for j in range(nvars))
        c = affine.coefficient(pure)
        if c == 0:
            raise NormalizationError(f"Falta o monômio x{k}^{sk}")
        leading.append(c)

    factor = leading_factor(leading, ctx.s)
    scales = tuple(_rational_root(1 / (factor * c), sk) for c, sk in zip(leading, ctx.s))
    affine = (affine * factor).substitute({
        k: MultiPoly.variable(nvars, k) * alpha
        for k, alpha in enumerate(scales) if alpha != 1
    })

    shifts = []
    # Ordem crescente, não decrescente: a translação de x_k só envolve x_j com
    # j > k, e transladar x_{k-1} depois de x_k recriaria termos x_k^{s_k−1}
    for k, sk in enumerate(ctx.s):
        affine, shift = complete_power(affine, k, sk)
        shifts.append(shift)

    point = point_from_equation(affine, ctx)
    return point, NormalizationScale(factor=factor, variable_scales=scales, shifts=tuple(shifts))


def embed_equation(point: ModuliPoint) -> Tuple[MultiPoly, MultiPoly]:
    """
    Passos do mergulho até a equação afim de nível n

    Cone sobre f_{t}, soma de x_n^{s_n} e translação de x_n.

    Returns:
        (equação afim em x_0..x_n sem termo x_n^{s_n−1}, translação de x_n)
    """
    ctx = make_context(point.n + 1)
    n, s_n = ctx.n, ctx.s[ctx.n]
    # A variável homogeneizadora de nível n−1 vira x_n
    cone = assemble(point, homogeneous=True)
    affine = cone + MultiPoly.variable(n + 1, n) ** s_n
    completed, shift = complete_power(affine, n, s_n)
    if not completed.coefficient_in(n, s_n - 1).is_zero():
        raise NormalizationError(f"Termo x{n}^{s_n - 1} sobreviveu ao mergulho")
    return completed, shift


def embed(point: ModuliPoint) -> ModuliPoint:
    """
    Mergulho M_{n-1} → M_n

    Args:
        point: Ponto de M_{n-1}

    Returns:
        Ponto de M_n lido da equação normalizada
    """
    ctx = make_context(point.n + 1)
    completed, shift = embed_equation(point)
    image = point_from_equation(completed, ctx)
    logger.debug(f"embed: {point} -> {image} (translação {shift})")
    return image

