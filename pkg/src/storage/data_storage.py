import json
import logging
from pathlib import Path
from typing import Dict, List, Union

import pandas as pd

logger = logging.getLogger(__name__)


class DataStorage:
    """Classe base para armazenamento de resultados"""

    def __init__(self, base_path: Union[str, Path] = "data"):
        """
        Inicializa o sistema de armazenamento

        Args:
            base_path: Diretório base para armazenar dados
        """
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)

    def _resolve(self, filename: Union[str, Path]) -> Path:
        path = Path(filename)
        return path if path.is_absolute() else self.base_path / path

    def save(self, data, filename: str):
        """Método abstrato para salvar dados"""
        raise NotImplementedError("Subclasses devem implementar o método save")

    def load(self, filename: str):
        """Método abstrato para carregar dados"""
        raise NotImplementedError("Subclasses devem implementar o método load")


class CSVStorage(DataStorage):
    """Armazenamento usando arquivos CSV"""

    def __init__(self, base_path: Union[str, Path] = "data", encoding: str = 'utf-8'):
        super().__init__(base_path)
        self.encoding = encoding

    def save(self, data: List[Dict], filename: str = "tabela.csv") -> Path:
        """
        Salva linhas em arquivo CSV

        Args:
            data: Lista de dicionários para salvar
            filename: Nome do arquivo CSV

        Returns:
            Caminho do arquivo escrito
        """
        filepath = self._resolve(filename)
        if not data:
            logger.warning("Nenhum dado para salvar em CSV")
            return filepath

        df = pd.DataFrame(data)
        df.to_csv(filepath, index=False, encoding=self.encoding)
        logger.info(f"Salvou {len(data)} linhas em {filepath}")
        return filepath

    def load(self, filename: str = "tabela.csv") -> List[Dict]:
        """
        Carrega dados de arquivo CSV

        Colunas são lidas como texto para preservar racionais "num/den".
        """
        filepath = self._resolve(filename)

        if not filepath.exists():
            logger.warning(f"Arquivo {filepath} não encontrado")
            return []

        df = pd.read_csv(filepath, encoding=self.encoding, dtype=str, keep_default_na=False)
        return df.to_dict('records')


class ParquetStorage(DataStorage):
    """Armazenamento usando arquivos Parquet"""

    def __init__(self, base_path: Union[str, Path] = "data", compression: str = 'snappy'):
        super().__init__(base_path)
        self.compression = compression

    def save(self, data: List[Dict], filename: str = "tabela.parquet") -> Path:
        """
        Salva linhas em arquivo Parquet

        Args:
            data: Lista de dicionários para salvar
            filename: Nome do arquivo Parquet

        Returns:
            Caminho efetivo (CSV comprimido quando o pyarrow falta)
        """
        filepath = self._resolve(filename)
        if not data:
            logger.warning("Nenhum dado para salvar em Parquet")
            return filepath

        df = pd.DataFrame(data)
        try:
            df.to_parquet(filepath, engine='pyarrow', compression=self.compression)
        except ImportError:
            # Sem pyarrow: CSV comprimido
            csv_path = filepath.with_suffix('.csv.gz')
            df.to_csv(csv_path, index=False, compression='gzip')
            logger.warning(f"Parquet não disponível, salvou como CSV comprimido em {csv_path}")
            return csv_path

        logger.info(f"Salvou {len(data)} linhas em {filepath}")
        return filepath

    def load(self, filename: str = "tabela.parquet") -> List[Dict]:
        """
        Carrega dados de arquivo Parquet

        Args:
            filename: Nome do arquivo Parquet

        Returns:
            Lista de dicionários com os dados
        """
        filepath = self._resolve(filename)

        if not filepath.exists():
            logger.warning(f"Arquivo {filepath} não encontrado")
            return []

        df = pd.read_parquet(filepath, engine='pyarrow')
        return df.to_dict('records')


class JSONStorage(DataStorage):
    """Armazenamento usando arquivos JSON"""

    def __init__(self, base_path: Union[str, Path] = "data", indent: int = 2,
                 ensure_ascii: bool = False):
        super().__init__(base_path)
        self.indent = indent
        self.ensure_ascii = ensure_ascii

    def dumps(self, data: Union[List, Dict]) -> str:
        """Serialização determinística (chaves ordenadas)"""
        return json.dumps(data, ensure_ascii=self.ensure_ascii, indent=self.indent, sort_keys=True)

    def save(self, data: Union[List, Dict], filename: str = "resultado.json") -> Path:
        """
        Salva dados em arquivo JSON

        Args:
            data: Lista de dicionários ou dicionário para salvar
            filename: Nome do arquivo JSON
        """
        filepath = self._resolve(filename)

        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self.dumps(data))
            f.write('\n')

        logger.info(f"Salvou JSON em {filepath}")
        return filepath

    def load(self, filename: str = "resultado.json") -> Union[List, Dict]:
        """
        Carrega dados de arquivo JSON

        Args:
            filename: Nome do arquivo JSON

        Returns:
            Conteúdo decodificado; FileNotFoundError se o arquivo não existe
        """
        filepath = self._resolve(filename)

        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)


def storage_for(path: Union[str, Path], settings: Dict) -> DataStorage:
    """
    Escolhe o armazenamento pela extensão do arquivo de saída

    Args:
        path: Arquivo de saída (.json, .csv ou .parquet)
        settings: Dicionário no formato de STORAGE_CONFIG
    """
    path = Path(path)
    parent = path.parent
    suffix = path.suffix.lower()
    if suffix == '.csv':
        return CSVStorage(parent, encoding=settings['csv']['encoding'])
    if suffix == '.parquet':
        return ParquetStorage(parent, compression=settings['parquet']['compression'])
    return JSONStorage(parent, indent=settings['json']['indent'],
                       ensure_ascii=settings['json']['ensure_ascii'])
