"""
Fibras especiais: lct, detecção de bordo, nível, fibra limite e tipo
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from sympy import Poly, QQ, Rational, Symbol, discriminant, expand

from src.errors import InputError, NormalizationError, PlaceError, VerificationError
from src.fibers.family import X, CurveFamily, family_from_point, unipoly_coeffs
from src.fibers.places import (Place, PlaceLike, PlaceValuation, as_place, place_basis,
                               refine, valuation, vbar_at)
from src.newton.polyhedron import fiber_threshold
from src.polynomials.moduli_point import ModuliPoint
from src.polynomials.multipoly import MultiPoly
from src.polynomials.normalization import normalize_equation
from src.utils.rationals import format_fraction

logger = logging.getLogger(__name__)

NO_DISCRIMINANT = "no discriminant formula at this dimension"


def fiber_lct(fam: CurveFamily, place: PlaceLike) -> Fraction:
    """
    lct(X, F) = 1 − v̄ na fibra sobre o lugar

    Args:
        fam: Família
        place: Lugar

    Returns:
        Limiar; 1 quando v̄ = 0
    """
    val = vbar_at(fam, place)
    vbar = val.vbar
    if vbar > 1:
        raise PlaceError(f"v̄ = {vbar} > 1 fora das hipóteses do teorema")
    if vbar > 0:
        # Conferência pela explosão ponderada com ω_k = d_{n-1,k}·m·v̄
        m = val.ramification
        scale = m * vbar
        fiber = fam.fiber_ctx
        threshold = fiber_threshold([d * scale for d in fiber.d_row], fiber.d_n * scale, m)
        if threshold * m != scale:
            raise VerificationError(f"Limiar da explosão {threshold * m} difere de m·v̄ = {scale}",
                                    {'vbar': format_fraction(vbar)})
    return 1 - vbar


def valuation_bound_holds(fam: CurveFamily, val: PlaceValuation) -> bool:
    """
    Confere val/w ≤ 1 em todos os coeficientes

    A exceção é o coeficiente de (0,…,0) igual a ℓ^{s_n}, que só ocorre com ℓ = x_n.
    """
    zero = (0,) * fam.n
    s_n = fam.ctx.s[fam.n]
    for i, ratio in val.normalized.items():
        if ratio <= 1:
            continue
        if i == zero and val.place.root == 0 and val.vals[i] == s_n:
            continue
        return False
    return True


def _split_boundary(fam: CurveFamily, c: Fraction) -> Optional[Dict[Tuple[int, ...], Fraction]]:
    """
    Extrai t'_i de t_i = t'_i ℓ^{w'} e t_0 = t'_0 ℓ^{d_{n-1}} + ℓ^{s_n}

    Devolve None quando o padrão não confere.
    """
    ell = Poly(X - Rational(c.numerator, c.denominator), X, domain=QQ)
    zero = (0,) * fam.n
    s_n = fam.ctx.s[fam.n]
    primes: Dict[Tuple[int, ...], Fraction] = {}
    for i, poly in fam.items():
        w = fam.fiber_weight(i)
        target = poly - ell ** s_n if i == zero else poly
        if target.is_zero:
            continue
        if target.degree() != w:
            return None
        lead = target.LC()
        if target != ell ** w * lead:
            return None
        primes[i] = Fraction(str(lead))
    if zero not in fam.coeffs:
        return None
    return primes


def boundary_preimage(point: ModuliPoint) -> Optional[ModuliPoint]:
    """
    Inverte o mergulho quando o ponto está no bordo ∂M_n = im M_{n-1}

    Args:
        point: Ponto de M_n, n ≥ 1

    Returns:
        Ponto de M_{n-1}, ou None para pontos interiores
    """
    if point.n < 1:
        raise InputError("boundary_preimage exige n ≥ 1")
    fam = family_from_point(point)
    s_n = fam.ctx.s[fam.n]
    for place in place_basis(fam):
        val = vbar_at(fam, place)
        if val.vbar != 1:
            continue
        c = place.root
        if c is None:
            raise PlaceError(f"Lugar de bordo irracional: {place.label()}")
        primes = _split_boundary(fam, c)
        if primes is None:
            logger.debug(f"v̄ = 1 em {place.label()} sem o padrão do mergulho")
            continue
        t0 = primes.get((0,) * fam.n, Fraction(0))
        if c != t0 / s_n:
            raise VerificationError(f"Lugar {c} difere de t'_0/s_n = {t0 / s_n}",
                                    {'point': point.to_dict()})
        preimage = ModuliPoint(point.n - 1, primes)
        logger.debug(f"Pré-imagem de bordo: {preimage}")
        return preimage
    return None


def level(point: ModuliPoint) -> int:
    """Número de descidas sucessivas pelo bordo"""
    count = 0
    while point.n >= 1:
        preimage = boundary_preimage(point)
        if preimage is None:
            break
        count += 1
        point = preimage
    return count


def _fiber_point(fam: CurveFamily, coords: Dict[Tuple[int, ...], Fraction]) -> ModuliPoint:
    """Normaliza x_0^{s_0}+…+x_{n-1}^{s_{n-1}} + Σ c_i x^i em M_{n-1}"""
    nvars = fam.n
    terms = {i: c for i, c in coords.items() if c}
    for k, sk in enumerate(fam.fiber_ctx.s):
        pure = tuple(sk if j == k else 0 for j in range(nvars))
        terms[pure] = terms.get(pure, Fraction(0)) + 1
    point, _ = normalize_equation(MultiPoly.from_terms(nvars, terms), fam.n - 1)
    return point


def limit_fiber(fam: CurveFamily, place: PlaceLike, m: Optional[int] = None) -> ModuliPoint:
    """
    Fibra limite após a mudança de base e a divisão por ℓ^{v̄}

    Args:
        fam: Família
        place: Racional c (ℓ = x_n − c)
        m: Denominador de v̄; calculado quando omitido

    Returns:
        Ponto de M_{n-1} normalizado
    """
    place = as_place(place)
    c = place.root
    if c is None:
        raise PlaceError(f"Fibra limite só em lugares racionais: {place.label()}")
    val = vbar_at(fam, place)
    if val.vbar == 0:
        raise PlaceError("v̄ = 0: a fibra já está em M_{n-1}; use evaluate_fiber")
    if m is not None and (m * val.vbar).denominator != 1:
        raise InputError(f"m = {m} não torna m·v̄ inteiro (v̄ = {val.vbar})")

    coords = {}
    for i, poly in fam.items():
        target = fam.fiber_weight(i) * val.vbar
        if val.vals[i] == target:
            shifted = unipoly_coeffs(poly.shift(Rational(c.numerator, c.denominator)))
            coords[i] = shifted[int(target)]
    return _fiber_point(fam, coords)


def evaluate_fiber(fam: CurveFamily, c) -> ModuliPoint:
    """Fibra sobre x_n = c quando v̄ = 0, normalizada em M_{n-1}"""
    place = as_place(c)
    if place.root is None:
        raise PlaceError(f"Avaliação só em lugares racionais: {place.label()}")
    value = Rational(place.root.numerator, place.root.denominator)
    coords = {i: Fraction(str(poly.eval(value))) for i, poly in fam.items()}
    if not any(coords.values()):
        raise PlaceError(f"Todos os coeficientes se anulam em x_n = {place.root}; v̄ > 0")
    return _fiber_point(fam, coords)


def weierstrass_discriminant(fam: CurveFamily) -> Optional[Poly]:
    """
    Δ(x_2) = 4p^3 + 27q^2 da forma de Weierstrass da família com n = 2

    Completa o quadrado em x_0 e toma −disc da cúbica em x_1. None quando Δ ≡ 0.
    """
    if fam.n != 2:
        raise InputError(NO_DISCRIMINANT)
    y = Symbol('y')
    linear = sum((poly.as_expr() * y ** i[1] for i, poly in fam.items() if i[0] == 1), 0)
    rest = sum((poly.as_expr() * y ** i[1] for i, poly in fam.items() if i[0] == 0), 0)
    cubic = expand(y ** 3 + rest - linear ** 2 / 4)
    delta = expand(-discriminant(cubic, y))
    poly = Poly(delta, X, domain=QQ)
    return None if poly.is_zero else poly


@dataclass(frozen=True)
class FiberType:
    """Tripla (v̄, nível, val Δ) e o lct da fibra"""

    vbar: Fraction
    level: Optional[int]
    disc_val: Optional[int]
    lct: Fraction
    marker: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            'vbar': format_fraction(self.vbar),
            'level': self.level,
            'disc_val': self.disc_val if self.marker is None else self.marker,
            'lct': format_fraction(self.lct)
        }


def fiber_type(fam: CurveFamily, place: PlaceLike) -> FiberType:
    """
    Tipo da fibra especial

    Args:
        fam: Família
        place: Lugar

    Returns:
        FiberType; o nível fica None em lugares irracionais e em fibras de Fermat
    """
    place = as_place(place)
    val = vbar_at(fam, place)
    lct = fiber_lct(fam, place)

    fiber_level = None
    if place.root is not None:
        try:
            fiber = limit_fiber(fam, place) if val.vbar > 0 else evaluate_fiber(fam, place)
            fiber_level = level(fiber)
        except NormalizationError as e:
            # Fibra de Fermat: a origem não é ponto de M_{n-1}
            logger.debug(f"Sem nível em {place.label()}: {e}")

    disc_val, marker = None, None
    if fam.n == 2:
        delta = weierstrass_discriminant(fam)
        if delta is None:
            marker = "discriminant vanishes identically"
        else:
            disc_val = valuation(delta, place)
    else:
        marker = NO_DISCRIMINANT
    return FiberType(vbar=val.vbar, level=fiber_level, disc_val=disc_val, lct=lct, marker=marker)


def classify_family(fam: CurveFamily) -> List[Tuple[Place, FiberType]]:
    """
    Tipos de todas as fibras especiais

    Lugares: base de place_basis e, para n = 2, os fatores de Δ.
    """
    places = place_basis(fam)
    if fam.n == 2:
        delta = weierstrass_discriminant(fam)
        if delta is not None and delta.degree() > 0:
            _, factors = delta.sqf_list()
            candidates = [p.poly for p in places] + [f for f, _ in factors]
            basis = refine(_coprime(candidates), [p for _, p in fam.items()] + [delta])
            places = sorted((Place(q) for q in basis), key=Place.sort_key)
    return [(place, fiber_type(fam, place)) for place in places]


def _coprime(polys: List[Poly]) -> List[Poly]:
    """Remove fatores comuns entre elementos da lista até a base ficar coprima"""
    basis: List[Poly] = []
    for p in polys:
        pending = [p]
        while pending:
            q = pending.pop()
            if q.degree() <= 0:
                continue
            for k, b in enumerate(basis):
                g = q.gcd(b)
                if g.degree() > 0:
                    basis.pop(k)
                    pending.extend([g, b.exquo(g), q.exquo(g)])
                    break
            else:
                basis.append(q.monic())
    return basis
