"""
Famílias a um parâmetro x_0^{s_0}+…+x_{n-1}^{s_{n-1}} + Σ t_i(x_n) x^i
"""

import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational, Symbol

from src.errors import InputError
from src.polynomials.moduli_point import ModuliPoint
from src.polynomials.multipoly import MultiPoly
from src.sylvester.context import SylvesterContext, make_context
from src.utils.rationals import RationalLike, format_fraction, to_fraction

logger = logging.getLogger(__name__)

X = Symbol('x')

Key = Tuple[int, ...]


def unipoly(coeffs: Sequence[RationalLike]) -> Poly:
    """Polinômio em x a partir dos coeficientes do menor para o maior grau"""
    values = [to_fraction(c) for c in coeffs] or [Fraction(0)]
    return Poly([Rational(v.numerator, v.denominator) for v in reversed(values)], X, domain=QQ)


def unipoly_coeffs(poly: Poly) -> List[Fraction]:
    """Coeficientes do menor para o maior grau ([] para o nulo)"""
    if poly.is_zero:
        return []
    return [to_fraction(str(c)) for c in reversed(poly.all_coeffs())]


def as_unipoly(value: Union[Poly, Sequence[RationalLike], RationalLike]) -> Poly:
    if isinstance(value, Poly):
        return Poly(value.as_expr(), X, domain=QQ)
    if isinstance(value, (list, tuple)):
        return unipoly(value)
    return unipoly([value])


class CurveFamily:
    """
    Coeficientes t_{i_0…i_{n-1}}(x_n) de uma família sobre a reta x_n

    Os índices seguem a caixa larga 0 ≤ i_k ≤ s_k − 1; coeficientes não
    nulos precisam de peso w^{(n-1)} positivo.
    """

    def __init__(self, n: int, coeffs: Mapping[Union[str, Sequence[int]], object]):
        if n < 1:
            raise InputError(f"Famílias exigem n ≥ 1 (recebido {n})")
        self.n = n
        self.ctx = make_context(n)
        self.fiber_ctx = make_context(n - 1)

        stored: Dict[Key, Poly] = {}
        for key, value in coeffs.items():
            i = self._parse_key(key)
            poly = as_unipoly(value)
            if poly.is_zero:
                continue
            if self.fiber_weight(i) <= 0:
                raise InputError(f"Coeficiente em {i} com peso w' = {self.fiber_weight(i)} ≤ 0")
            stored[i] = stored[i] + poly if i in stored else poly
        self._coeffs = dict(sorted((i, p) for i, p in stored.items() if not p.is_zero))

    def _parse_key(self, key) -> Key:
        if isinstance(key, str):
            try:
                values = tuple(int(v) for v in key.replace(' ', '').split(',') if v != '')
            except ValueError as e:
                raise InputError(f"Chave inválida: {key!r}") from e
        else:
            values = tuple(int(v) for v in key)
        if len(values) == self.n - 1 and self.n > 1:
            values = (0,) + values
        if len(values) != self.n:
            raise InputError(f"Chave {key!r} deveria ter {self.n} índices")
        for k, (value, sk) in enumerate(zip(values, self.fiber_ctx.s)):
            if not 0 <= value <= sk - 1:
                raise InputError(f"Índice i_{k} = {value} fora de [0, {sk - 1}]")
        return values

    def fiber_weight(self, i: Key) -> int:
        """w^{(n-1)}(i) = d_{n-1} − Σ i_k d_{n-1,k}"""
        return self.fiber_ctx.d_n - sum(v * d for v, d in zip(i, self.fiber_ctx.d_row))

    @property
    def coeffs(self) -> Dict[Key, Poly]:
        return dict(self._coeffs)

    def items(self) -> Iterator[Tuple[Key, Poly]]:
        return iter(self._coeffs.items())

    def coefficient(self, key) -> Poly:
        return self._coeffs.get(self._parse_key(key), unipoly([0]))

    @property
    def degenerate(self) -> bool:
        """Todos os coeficientes nulos: o cone de Fermat constante"""
        return not self._coeffs

    def to_poly(self) -> MultiPoly:
        """Reconstrói a equação afim em x_0..x_n"""
        nvars = self.n + 1
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for k, sk in enumerate(self.fiber_ctx.s):
            terms[tuple(sk if j == k else 0 for j in range(nvars))] = Fraction(1)
        for i, poly in self._coeffs.items():
            for power, c in enumerate(unipoly_coeffs(poly)):
                if c:
                    key = i + (power,)
                    terms[key] = terms.get(key, Fraction(0)) + c
        return MultiPoly.from_terms(nvars, terms)

    def scaled(self, factor: RationalLike) -> "CurveFamily":
        factor = to_fraction(factor)
        return CurveFamily(self.n, {i: p * Rational(factor.numerator, factor.denominator)
                                    for i, p in self._coeffs.items()})

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'coeffs': {
                ",".join(map(str, i)): [format_fraction(c) for c in unipoly_coeffs(p)]
                for i, p in self._coeffs.items()
            }
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CurveFamily":
        try:
            return cls(int(data['n']), {k: list(v) for k, v in data['coeffs'].items()})
        except (KeyError, TypeError, AttributeError) as e:
            raise InputError(f"JSON de família inválido: {e}") from e

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {p.as_expr()}" for i, p in self._coeffs.items())
        return f"CurveFamily(n={self.n}, {{{inner}}})"


def family_from_point(point: ModuliPoint) -> CurveFamily:
    """
    Reagrupa f_t pelas potências de x_0..x_{n-1}

    O coeficiente de (0,…,0) recebe também x_n^{s_n}.
    """
    if point.n < 1:
        raise InputError("Pontos de M_0 não formam família")
    n = point.n
    ctx: SylvesterContext = point.ctx
    grouped: Dict[Key, Dict[int, Fraction]] = {(0,) * n: {ctx.s[n]: Fraction(1)}}
    for i, t in point.items():
        grouped.setdefault(i[:n], {})[i[n]] = t
    coeffs = {
        key: [powers.get(p, Fraction(0)) for p in range(max(powers) + 1)]
        for key, powers in grouped.items()
    }
    return CurveFamily(n, coeffs)
