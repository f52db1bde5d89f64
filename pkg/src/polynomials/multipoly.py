"""
Polinômios esparsos em várias variáveis com coeficientes racionais exatos
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Set, Tuple, Union

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from src.errors import InputError
from src.utils.rationals import RationalLike, format_fraction, to_fraction

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def poly_ring(nvars: int) -> PolyRing:
    """Anel QQ[x0,…,x{nvars-1}] em ordem lexicográfica, compartilhado por nvars"""
    if nvars < 1:
        raise InputError(f"Número de variáveis inválido: {nvars}")
    names = ",".join(f"x{k}" for k in range(nvars))
    return ring(names, QQ, lex)[0]


def _qq(value: RationalLike):
    frac = to_fraction(value)
    return QQ(frac.numerator, frac.denominator)


class MultiPoly:
    """Polinômio imutável em x_0..x_{nvars-1} sobre Q"""

    __slots__ = ("nvars", "_poly")

    def __init__(self, nvars: int, poly: Optional[PolyElement] = None):
        self.nvars = nvars
        ring_ = poly_ring(nvars)
        self._poly = ring_.zero if poly is None else poly

    # Construtores

    @classmethod
    def from_terms(cls, nvars: int, terms: Mapping[Sequence[int], RationalLike]) -> "MultiPoly":
        """
        Cria o polinômio a partir do mapa expoentes -> coeficiente

        Args:
            nvars: Número de variáveis
            terms: Expoentes (comprimento nvars) e coeficientes racionais

        Returns:
            Polinômio sem coeficientes nulos armazenados
        """
        collected: Dict[Exponent, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise InputError(f"Expoentes inválidos {exps} para {nvars} variáveis")
            collected[exps] = collected.get(exps, Fraction(0)) + to_fraction(coeff)
        ring_ = poly_ring(nvars)
        data = {exps: _qq(c) for exps, c in collected.items() if c != 0}
        return cls(nvars, ring_.from_dict(data) if data else ring_.zero)

    @classmethod
    def constant(cls, nvars: int, value: RationalLike) -> "MultiPoly":
        return cls(nvars, poly_ring(nvars).ground_new(_qq(value)))

    @classmethod
    def variable(cls, nvars: int, k: int) -> "MultiPoly":
        if not 0 <= k < nvars:
            raise InputError(f"Variável x{k} fora de x0..x{nvars - 1}")
        return cls(nvars, poly_ring(nvars).gens[k])

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: RationalLike = 1) -> "MultiPoly":
        return cls.from_terms(nvars, {tuple(exps): coeff})

    # Consulta

    def terms(self) -> Dict[Exponent, Fraction]:
        """Termos em ordem lexicográfica crescente dos expoentes"""
        return {
            exps: to_fraction(coeff)
            for exps, coeff in sorted(self._poly.items())
        }

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        coeff = self._poly.get(tuple(exps))
        return Fraction(0) if coeff is None else to_fraction(coeff)

    def is_zero(self) -> bool:
        return not self._poly

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._poly.keys())

    def constant_value(self) -> Fraction:
        """Valor de um polinômio constante"""
        if not self.is_constant():
            raise InputError(f"Polinômio não constante: {self}")
        return self.coefficient((0,) * self.nvars)

    def degree_in(self, k: int) -> int:
        """Grau em x_k; −1 para o polinômio nulo"""
        return max((exps[k] for exps in self._poly.keys()), default=-1)

    def coefficient_in(self, k: int, power: int) -> "MultiPoly":
        """Coeficiente de x_k^power como polinômio nas demais variáveis (x_k = 1)"""
        picked = {}
        for exps, coeff in self._poly.items():
            if exps[k] == power:
                reduced = exps[:k] + (0,) + exps[k + 1:]
                picked[reduced] = coeff
        ring_ = poly_ring(self.nvars)
        return MultiPoly(self.nvars, ring_.from_dict(picked) if picked else ring_.zero)

    def weighted_degrees(self, weights: Sequence[int]) -> Set[int]:
        if len(weights) != self.nvars:
            raise InputError(f"Esperados {self.nvars} pesos, recebidos {len(weights)}")
        return {sum(w * e for w, e in zip(weights, exps)) for exps in self._poly.keys()}

    def is_quasi_homogeneous(self, weights: Sequence[int], degree: Optional[int] = None) -> bool:
        """Todos os termos têm o mesmo grau ponderado (e igual a degree, se dado)"""
        degrees = self.weighted_degrees(weights)
        if len(degrees) > 1:
            return False
        return degree is None or not degrees or degrees == {degree}

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self._poly.keys()))

    # Transformações

    def substitute(self, mapping: Mapping[int, Union["MultiPoly", RationalLike]]) -> "MultiPoly":
        """
        Substituição simultânea x_k ↦ mapping[k]

        Args:
            mapping: Índice da variável -> polinômio (mesmo nvars) ou racional

        Returns:
            Polinômio resultante no mesmo anel
        """
        if not mapping:
            return self
        ring_ = poly_ring(self.nvars)
        replacements = [
            (ring_.gens[k], self._coerce(value)._poly) for k, value in sorted(mapping.items())
        ]
        return MultiPoly(self.nvars, self._poly.compose(replacements))

    def extend(self, nvars: int) -> "MultiPoly":
        """Inclui novas variáveis ao final (expoente 0)"""
        if nvars < self.nvars:
            raise InputError(f"Não é possível reduzir {self.nvars} para {nvars} variáveis")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly.from_terms(nvars, {exps + pad: c for exps, c in self.terms().items()})

    def drop_last(self) -> "MultiPoly":
        """Fixa a última variável em 1 e a remove"""
        if self.nvars < 2:
            raise InputError("Não há variável para remover")
        collected: Dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms().items():
            key = exps[:-1]
            collected[key] = collected.get(key, Fraction(0)) + coeff
        return MultiPoly.from_terms(self.nvars - 1, collected)

    # Aritmética

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise InputError(f"Anéis diferentes: {self.nvars} e {other.nvars} variáveis")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        return MultiPoly(self.nvars, self._poly + self._coerce(other)._poly)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        return MultiPoly(self.nvars, self._poly - self._coerce(other)._poly)

    def __rsub__(self, other) -> "MultiPoly":
        return MultiPoly(self.nvars, self._coerce(other)._poly - self._poly)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, -self._poly)

    def __mul__(self, other) -> "MultiPoly":
        return MultiPoly(self.nvars, self._poly * self._coerce(other)._poly)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            raise InputError("Divisão só por escalares racionais")
        frac = to_fraction(other)
        if frac == 0:
            raise InputError("Divisão por zero")
        return self * (1 / frac)

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"Expoente inválido: {exponent!r}")
        return MultiPoly(self.nvars, self._poly ** exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._poly == other._poly
        try:
            return self._poly == self._coerce(other)._poly
        except InputError:
            return NotImplemented

    __hash__ = None

    # Formato texto

    def to_text(self) -> str:
        """Um termo por linha: "num/den : e_0 e_1 … e_k" """
        return "\n".join(
            f"{format_fraction(coeff)} : {' '.join(str(e) for e in exps)}"
            for exps, coeff in self.terms().items()
        )

    @classmethod
    def from_text(cls, text: str, nvars: Optional[int] = None) -> "MultiPoly":
        """
        Lê o formato texto; linhas vazias e iniciadas por # são ignoradas

        Args:
            text: Conteúdo no formato "num/den : e_0 … e_k"
            nvars: Número de variáveis (inferido da primeira linha se omitido)

        Returns:
            Polinômio lido
        """
        terms: Dict[Exponent, Fraction] = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if ':' not in line:
                raise InputError(f"Linha {number}: falta ':' em {line!r}")
            coeff_text, exps_text = line.split(':', 1)
            try:
                exps = tuple(int(e) for e in exps_text.split())
            except ValueError as e:
                raise InputError(f"Linha {number}: expoentes inválidos {exps_text!r}") from e
            if nvars is None:
                nvars = len(exps)
            if len(exps) != nvars:
                raise InputError(f"Linha {number}: esperados {nvars} expoentes")
            terms[exps] = terms.get(exps, Fraction(0)) + to_fraction(coeff_text)
        if nvars is None:
            raise InputError("Texto vazio sem número de variáveis")
        return cls.from_terms(nvars, terms)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exps, coeff in self.terms().items():
            mono = "*".join(
                f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in enumerate(exps) if e
            )
            parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
        return " + ".join(parts)


def variables(nvars: int) -> Tuple[MultiPoly, ...]:
    """Geradores x_0..x_{nvars-1}"""
    return tuple(MultiPoly.variable(nvars, k) for k in range(nvars))
