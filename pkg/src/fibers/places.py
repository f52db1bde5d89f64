"""
Lugares da reta x_n, valuações normalizadas e o mínimo v̄
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Union

from sympy import Poly, QQ, Rational

from src.errors import InputError
from src.fibers.family import X, CurveFamily, Key, unipoly_coeffs
from src.utils.rationals import RationalLike, format_fraction, to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Place:
    """Fator mônico irredutível sobre Q, ou livre de quadrados e refinado"""

    poly: Poly

    @classmethod
    def rational(cls, c: RationalLike) -> "Place":
        c = to_fraction(c)
        return cls(Poly(X - Rational(c.numerator, c.denominator), X, domain=QQ))

    @property
    def degree(self) -> int:
        return self.poly.degree()

    @property
    def root(self) -> Optional[Fraction]:
        """Raiz racional quando o lugar é linear"""
        if self.degree != 1:
            return None
        coeffs = unipoly_coeffs(self.poly)
        return -coeffs[0] / coeffs[1]

    def sort_key(self):
        return (self.degree, unipoly_coeffs(self.poly))

    def label(self) -> str:
        return str(self.poly.as_expr())

    def to_dict(self) -> Dict:
        return {'poly': [format_fraction(c) for c in unipoly_coeffs(self.poly)],
                'label': self.label()}


PlaceLike = Union[Place, RationalLike]


def as_place(place: PlaceLike) -> Place:
    return place if isinstance(place, Place) else Place.rational(place)


def valuation(poly: Poly, place: Place) -> int:
    """Maior k com place^k | poly, por divisão exata repetida"""
    if poly.is_zero:
        raise InputError("Valuação do polinômio nulo não é definida")
    count = 0
    while True:
        quotient, remainder = poly.div(place.poly)
        if not remainder.is_zero:
            return count
        poly = quotient
        count += 1


def refine(basis: Iterable[Poly], polys: Sequence[Poly]) -> List[Poly]:
    """
    Quebra cada elemento da base até a multiplicidade em cada poly ser constante

    Para q livre de quadrados e t: S_1 = gcd(q, t), t_1 = t/S_1,
    S_2 = gcd(S_1, t_1), …; as peças são q/S_1 e S_k/S_{k+1}.
    """
    current = [q.monic() for q in basis if q.degree() > 0]
    for t in polys:
        if t.is_zero:
            continue
        refined = []
        for q in current:
            pieces = []
            rest, factor = t, q.gcd(t)
            pieces.append(q.exquo(factor))
            while factor.degree() > 0:
                rest = rest.exquo(factor)
                nxt = factor.gcd(rest)
                pieces.append(factor.exquo(nxt))
                factor = nxt
            refined.extend(p.monic() for p in pieces if p.degree() > 0)
        current = refined
    return current


def place_basis(fam: CurveFamily) -> List[Place]:
    """
    Base coprima de fatores livres de quadrados do mdc dos coeficientes

    Args:
        fam: Família com ao menos um coeficiente não nulo

    Returns:
        Lugares em ordem determinística; lista vazia quando o mdc é constante
    """
    polys = [p for _, p in fam.items()]
    if not polys:
        raise InputError("Família com todos os coeficientes nulos")

    g = polys[0]
    for p in polys[1:]:
        g = g.gcd(p)
    if g.degree() <= 0:
        return []

    _, factors = g.sqf_list()
    basis = refine([f for f, _ in factors], polys)
    places = sorted((Place(q) for q in basis), key=Place.sort_key)
    logger.debug(f"Base de lugares: {[p.label() for p in places]}")
    return places


@dataclass(frozen=True)
class PlaceValuation:
    """Valuações de cada coeficiente no lugar e o mínimo normalizado"""

    place: Place
    vals: Dict[Key, int]
    normalized: Dict[Key, Fraction]
    vbar: Fraction

    @property
    def ramification(self) -> int:
        """m: menor inteiro positivo com m·v̄ inteiro"""
        return self.vbar.denominator

    def minimizers(self) -> List[Key]:
        return [i for i, v in self.normalized.items() if v == self.vbar]

    def to_dict(self) -> Dict:
        return {
            'place': self.place.to_dict(),
            'vals': {",".join(map(str, i)): v for i, v in self.vals.items()},
            'vbar': format_fraction(self.vbar)
        }


def vbar_at(fam: CurveFamily, place: PlaceLike) -> PlaceValuation:
    """
    v̄ = min val_ℓ(t_i)/w^{(n-1)}(i) sobre os coeficientes não nulos

    Args:
        fam: Família
        place: Lugar da base ou racional c (ℓ = x_n − c)

    Returns:
        PlaceValuation
    """
    place = as_place(place)
    if fam.degenerate:
        raise InputError("Família com todos os coeficientes nulos")
    vals, normalized = {}, {}
    for i, poly in fam.items():
        w = fam.fiber_weight(i)
        if w <= 0:
            raise InputError(f"Peso w' = {w} não positivo em {i}")
        vals[i] = valuation(poly, place)
        normalized[i] = Fraction(vals[i], w)
    return PlaceValuation(place=place, vals=vals, normalized=normalized,
                          vbar=min(normalized.values()))
