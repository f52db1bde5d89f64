"""
Exceções do sistema
"""

from typing import Any, Dict, Optional


class ModuliError(Exception):
    """Erro base de todas as operações da torre de moduli"""


class InputError(ModuliError, ValueError):
    """Entrada malformada: comprimento, intervalo ou formato inválido"""


class CapExceededError(ModuliError):
    """Limite de materialização ou de varredura excedido"""

    def __init__(self, message: str, alternative: str = ""):
        super().__init__(f"{message}; use {alternative}" if alternative else message)
        self.alternative = alternative


class HypothesisError(ModuliError):
    """Operação chamada fora das hipóteses do resultado que ela implementa"""


class LatticeError(ModuliError):
    """Falha de integralidade ou de reflexividade nos dados tóricos"""


class NormalizationError(ModuliError):
    """A equação não pode ser levada à forma normal"""


class PlaceError(ModuliError):
    """Lugar inadequado para a análise pedida"""


class VerificationError(ModuliError):
    """Uma verificação exaustiva encontrou um contraexemplo"""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.witness = witness or {}
