"""
Distribuição de varreduras inteiras entre processos
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], chunks: Sequence[T], threads: int = 1) -> List[R]:
    """
    Aplica func a cada bloco, preservando a ordem dos blocos

    Args:
        func: Função de nível de módulo (precisa ser serializável)
        chunks: Blocos de trabalho
        threads: Número de processos; 1 executa no processo atual

    Returns:
        Resultados na mesma ordem de chunks
    """
    if threads <= 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]

    logger.debug(f"Distribuindo {len(chunks)} blocos em {threads} processos")
    with ProcessPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, chunks))


def parallel_sum(func: Callable[[T], int], chunks: Sequence[T], threads: int = 1) -> int:
    """Soma inteira dos resultados; a ordem de agregação é a ordem dos blocos"""
    return sum(parallel_map(func, chunks, threads))


def split_range(start: int, stop: int, size: int) -> List[range]:
    """
    Divide [start, stop) em intervalos consecutivos

    Args:
        start: Início inclusivo
        stop: Fim exclusivo
        size: Tamanho máximo de cada intervalo

    Returns:
        Lista de ranges que cobrem o intervalo sem sobreposição
    """
    size = max(1, size)
    return [range(lo, min(lo + size, stop)) for lo in range(start, stop, size)]
