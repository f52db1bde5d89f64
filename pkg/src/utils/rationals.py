"""
Serialização exata de números racionais no formato "num/den"
"""

from fractions import Fraction
from typing import Union

from src.errors import InputError

RationalLike = Union[int, Fraction, str]


def to_fraction(value: RationalLike) -> Fraction:
    """
    Converte inteiro, Fraction ou texto "num/den" em Fraction

    Args:
        value: Valor a converter (floats são recusados)

    Returns:
        Fração exata
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"Valor não exato recusado: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Racional inválido {value!r}: {e}") from e
    # Elementos de domínio do sympy (QQ/ZZ) expõem numerator/denominator
    try:
        return Fraction(int(value.numerator), int(value.denominator))
    except AttributeError as e:
        raise InputError(f"Tipo não suportado para racional: {type(value).__name__}") from e


def format_fraction(value: RationalLike) -> str:
    """Formata sempre como "num/den", inclusive inteiros"""
    frac = to_fraction(value)
    return f"{frac.numerator}/{frac.denominator}"
