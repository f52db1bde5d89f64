"""
Arquivo de configuração central da torre de espaços de moduli de Sylvester
"""

import json
from pathlib import Path
from typing import Dict, Optional

# Diretórios base
BASE_DIR = Path(__file__).parent
DATA_DIR = BASE_DIR / "data"
LOGS_DIR = BASE_DIR / "logs"

# Configurações da aritmética de Sylvester e das enumerações
MODULI_CONFIG = {
    'materialization_cap': 10 ** 7,  # Máximo de tuplas materializadas por enumerate_positive
    'max_count_level': 5,  # Maior n em que count_positive é tentado pelas constantes assintóticas
    'asymptotic_precision': 30,  # Dígitos decimais usados pelo mpmath
    'show_progress': True  # Barra tqdm da contagem de dim --n
}

# Configurações dos dados tóricos de P_{n+1}
TORIC_CONFIG = {
    'max_witness_dim': 5  # Limite da busca por permutações ((n+2)! candidatos)
}

# Configurações do poliedro de Newton
NEWTON_CONFIG = {
    'max_lemma_dim': 4,  # Limite da varredura exaustiva do lema das desigualdades
    'assume_nondegenerate': False  # Só promove o lct tórico a lct verdadeiro com este flag
}

# Configurações do cálculo de h^{1,1} orbifold
HODGE_CONFIG = {
    'max_brute_dim': 4,  # Maior n para a varredura completa em ℓ
    'chunk_size': 200_000  # Quantidade de valores de ℓ por unidade de trabalho
}

# Configurações da suíte de verificação
VERIFY_CONFIG = {
    'quick': ['sylvester', 'dimensions', 'weights', 'embed', 'toric', 'newton',
              'fibers', 'hodge'],
    'full': ['sylvester', 'dimensions', 'weights', 'embed', 'toric', 'newton',
             'fibers', 'hodge', 'asymptotics', 'deep'],
    'random_seed': 20240917,  # Semente das amostras aleatórias
    'samples': 50  # Pontos aleatórios por propriedade
}

# Configurações de armazenamento
STORAGE_CONFIG = {
    'csv': {
        'encoding': 'utf-8'
    },
    'parquet': {
        'compression': 'snappy'
    },
    'json': {
        'indent': 2,
        'ensure_ascii': False
    }
}

# Configurações de logging
LOGGING_CONFIG = {
    'level': 'INFO',  # DEBUG, INFO, WARNING, ERROR, CRITICAL
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'date_format': '%Y-%m-%d %H:%M:%S',
    'file_prefix': 'sylvester_moduli'
}

_SECTIONS = {
    'moduli': MODULI_CONFIG,
    'toric': TORIC_CONFIG,
    'newton': NEWTON_CONFIG,
    'hodge': HODGE_CONFIG,
    'verify': VERIFY_CONFIG,
    'storage': STORAGE_CONFIG,
    'logging': LOGGING_CONFIG
}


def load_overrides(path: Optional[str]) -> Dict:
    """
    Aplica um arquivo JSON de configuração sobre os dicionários padrão

    Args:
        path: Caminho do arquivo; None ou arquivo vazio mantém os padrões

    Returns:
        Dicionário com as seções efetivamente alteradas
    """
    if not path:
        return {}

    text = Path(path).read_text(encoding='utf-8').strip()
    if not text:
        return {}

    overrides = json.loads(text)
    applied = {}
    for section, values in overrides.items():
        if section not in _SECTIONS:
            raise KeyError(f"Seção de configuração desconhecida: {section}")
        _SECTIONS[section].update(values)
        applied[section] = values
    return applied


# Validação de diretórios
def ensure_directories():
    """Cria diretórios necessários se não existirem"""
    DATA_DIR.mkdir(exist_ok=True)
    LOGS_DIR.mkdir(exist_ok=True)
