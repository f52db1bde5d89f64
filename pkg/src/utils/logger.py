import logging
import sys
from pathlib import Path
from datetime import datetime
from typing import Optional


def setup_logger(name: str = "sylvester_moduli", log_dir: str = "logs",
                 level: str = "INFO", log_to_file: bool = True,
                 fmt: Optional[str] = None, datefmt: Optional[str] = None) -> logging.Logger:
    """
    Configura e retorna o logger raiz do pacote

    O handler de console escreve em stderr: stdout fica reservado para o
    JSON emitido pela linha de comando.

    Args:
        name: Nome do logger (prefixo do arquivo de log)
        log_dir: Diretório para salvar logs
        level: Nível mínimo exibido no console
        log_to_file: Se deve gravar também o arquivo diário
        fmt: Formato das mensagens
        datefmt: Formato da data

    Returns:
        Logger configurado
    """
    # Formato das mensagens
    formatter = logging.Formatter(
        fmt or '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt=datefmt or '%Y-%m-%d %H:%M:%S'
    )

    # Os módulos usam logging.getLogger(__name__) sob o pacote "src"
    logger = logging.getLogger("src")
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    # Remove handlers existentes para evitar duplicação
    logger.handlers.clear()

    if log_to_file:
        # Cria diretório de logs se não existir
        log_path = Path(log_dir)
        log_path.mkdir(exist_ok=True)
        log_file = log_path / f"{name}_{datetime.now().strftime('%Y%m%d')}.log"

        # Handler para arquivo
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # Handler para console
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.INFO))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger
