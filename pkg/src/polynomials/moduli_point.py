"""
Pontos de M_n e a equação quasi-homogênea associada
"""

import logging
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from sympy.core.intfunc import igcdex

from src.errors import InputError, NormalizationError
from src.polynomials.multipoly import Exponent, MultiPoly
from src.sylvester.context import SylvesterContext, make_context, weight
from src.utils.rationals import RationalLike, format_fraction, to_fraction

logger = logging.getLogger(__name__)

TupleKey = Union[str, Sequence[int]]


def parse_tuple_key(key: TupleKey, ctx: SylvesterContext) -> Exponent:
    """
    Converte "i_0,…,i_n" ou uma sequência em tupla de expoentes

    Sequências de comprimento n recebem i_0 = 0 na frente (notação t_{i_1…i_n}).
    """
    if isinstance(key, str):
        try:
            values = tuple(int(part) for part in key.replace(' ', '').split(',') if part != '')
        except ValueError as e:
            raise InputError(f"Chave de coordenada inválida: {key!r}") from e
    else:
        values = tuple(int(v) for v in key)
    if len(values) == ctx.n and ctx.n > 0:
        values = (0,) + values
    if len(values) != ctx.n + 1:
        raise InputError(f"Chave {key!r} não tem {ctx.n + 1} índices")
    return values


def check_box(i: Exponent, ctx: SylvesterContext, wide: bool = False) -> int:
    """Confere 0 ≤ i_k ≤ s_k − 2 (ou s_k − 1 se wide) e peso positivo; devolve o peso"""
    slack = 1 if wide else 2
    for k, (value, sk) in enumerate(zip(i, ctx.s)):
        if not 0 <= value <= sk - slack:
            raise InputError(f"Índice i_{k} = {value} fora da caixa [0, {sk - slack}]")
    w = weight(ctx, i)
    if w <= 0:
        raise InputError(f"Tupla {i} tem peso não positivo {w}")
    return w


class ModuliPoint:
    """
    Ponto t = (t_i) de M_n, guardando só as coordenadas não nulas

    A igualdade é projetiva: dois pontos são iguais quando um é o outro
    reescalado por λ ∈ C*, t_i ↦ λ^{w(i)} t_i.
    """

    def __init__(self, n: int, coords: Mapping[TupleKey, RationalLike]):
        ctx = make_context(n)
        stored: Dict[Exponent, Fraction] = {}
        for key, value in coords.items():
            i = parse_tuple_key(key, ctx)
            check_box(i, ctx)
            frac = to_fraction(value)
            if frac != 0:
                stored[i] = stored.get(i, Fraction(0)) + frac
        stored = {i: v for i, v in stored.items() if v != 0}
        if not stored:
            raise InputError(f"Todas as coordenadas são nulas (origem excluída de M_{n})")
        self.n = n
        self.ctx = ctx
        self._coords = dict(sorted(stored.items()))

    @property
    def coords(self) -> Dict[Exponent, Fraction]:
        return dict(self._coords)

    def __getitem__(self, key: TupleKey) -> Fraction:
        return self._coords.get(parse_tuple_key(key, self.ctx), Fraction(0))

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self._coords.items())

    def weight_of(self, i: Exponent) -> int:
        return weight(self.ctx, i)

    def rescale(self, lam: RationalLike) -> "ModuliPoint":
        """
        Ação t_i ↦ λ^{w(i)} t_i

        Args:
            lam: Escalar racional não nulo

        Returns:
            Novo ponto
        """
        lam = to_fraction(lam)
        if lam == 0:
            raise InputError("λ = 0 não age em M_n")
        return ModuliPoint(self.n, {i: t * lam ** self.weight_of(i) for i, t in self._coords.items()})

    def same_representative(self, other: "ModuliPoint") -> bool:
        """Igualdade coordenada a coordenada, sem quociente"""
        return self.n == other.n and self._coords == other._coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuliPoint):
            return NotImplemented
        if self.n != other.n or self._coords.keys() != other._coords.keys():
            return False

        keys = list(self._coords)
        ratios = [other._coords[i] / self._coords[i] for i in keys]
        weights = [self.weight_of(i) for i in keys]

        # Combinação de Bezout Σ a_i w_i = g
        g, coeffs = weights[0], [1]
        for w in weights[1:]:
            x, y, g_new = igcdex(g, w)
            coeffs = [int(c * x) for c in coeffs] + [int(y)]
            g = int(g_new)

        mu = Fraction(1)
        for r, a in zip(ratios, coeffs):
            mu *= r ** a
        # λ^g = μ; basta que cada razão seja μ^{w_i/g}
        return all(r == mu ** (w // g) for r, w in zip(ratios, weights))

    __hash__ = None

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'coords': {",".join(map(str, i)): format_fraction(t) for i, t in self._coords.items()}
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ModuliPoint":
        try:
            return cls(int(data['n']), data['coords'])
        except (KeyError, TypeError) as e:
            raise InputError(f"JSON de ponto inválido: {e}") from e

    def __repr__(self) -> str:
        inner = ", ".join(f"t_{''.join(map(str, i[1:])) or '0'}={t}" for i, t in self._coords.items())
        return f"ModuliPoint(n={self.n}, {inner})"


def fermat(ctx: SylvesterContext) -> MultiPoly:
    """x_0^{s_0} + … + x_n^{s_n} em n+1 variáveis"""
    nvars = ctx.n + 1
    return MultiPoly.from_terms(nvars, {
        tuple(sk if j == k else 0 for j in range(nvars)): 1 for k, sk in enumerate(ctx.s)
    })


def assemble(point: ModuliPoint, homogeneous: bool = False) -> MultiPoly:
    """
    Equação f_t (afim) ou F_t (homogênea com x_{n+1}^{w(i)})

    Args:
        point: Ponto de M_n
        homogeneous: Se True, devolve F_t em n+2 variáveis

    Returns:
        Polinômio; o homogêneo tem grau ponderado d_n
    """
    affine = fermat(point.ctx) + MultiPoly.from_terms(point.n + 1, point.coords)
    if not homogeneous:
        return affine
    return homogenize(affine, point.ctx)


def homogenize(p: MultiPoly, ctx: SylvesterContext) -> MultiPoly:
    """Completa cada termo com x_{n+1}^{d_n − grau} nos pesos (d_{n,0},…,d_{n,n})"""
    if p.nvars != ctx.n + 1:
        raise InputError(f"Esperadas {ctx.n + 1} variáveis afins, recebidas {p.nvars}")
    terms = {}
    for exps, coeff in p.terms().items():
        deg = sum(w * e for w, e in zip(ctx.d_row, exps))
        if deg > ctx.d_n:
            raise InputError(f"Termo {exps} tem grau ponderado {deg} > d_n = {ctx.d_n}")
        terms[exps + (ctx.d_n - deg,)] = coeff
    return MultiPoly.from_terms(ctx.n + 2, terms)


def dehomogenize(p: MultiPoly) -> MultiPoly:
    """x_{n+1} = 1"""
    return p.drop_last()


def point_from_equation(p: MultiPoly, ctx: SylvesterContext, wide: bool = False) -> ModuliPoint:
    """
    Lê as coordenadas de uma equação afim já normalizada

    Levanta NormalizationError se algum x_k^{s_k} não tem coeficiente 1 ou
    se sobra um termo fora da caixa de coordenadas.
    """
    terms = p.terms()
    nvars = ctx.n + 1
    coords = {}
    for k, sk in enumerate(ctx.s):
        pure = tuple(sk if j == k else 0 for j in range(nvars))
        if terms.pop(pure, Fraction(0)) != 1:
            raise NormalizationError(f"Coeficiente de x{k}^{sk} diferente de 1")
    for exps, coeff in terms.items():
        try:
            check_box(exps, ctx, wide=wide)
        except InputError as e:
            raise NormalizationError(f"Termo fora da forma normal: {exps} ({e})") from e
        coords[exps] = coeff
    if not coords:
        raise NormalizationError(f"Equação de Fermat: a origem não é ponto de M_{ctx.n}")
    return ModuliPoint(ctx.n, coords)


def j_invariant(point: ModuliPoint) -> Optional[Fraction]:
    """
    j(t_1, t_0) = 1728·4t_1^3/(4t_1^3 + 27t_0^2) para n = 1

    Returns:
        Fração, ou None quando o discriminante se anula
    """
    if point.n != 1:
        raise InputError(f"j-invariante só existe para n = 1 (recebido n = {point.n})")
    t1, t0 = point[(0, 1)], point[(0, 0)]
    denominator = 4 * t1 ** 3 + 27 * t0 ** 2
    if denominator == 0:
        logger.debug(f"Discriminante nulo em {point}")
        return None
    return 1728 * 4 * t1 ** 3 / denominator
