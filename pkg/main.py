import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

# Adiciona o diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent))

import config
from src.cli.commands import (as_table, cmd_classify, cmd_dim, cmd_embed, cmd_hodge,
                              cmd_lct, cmd_toric, dim_rows)
from src.cli.verify import cmd_verify
from src.errors import ModuliError, VerificationError
from src.storage.data_storage import JSONStorage, storage_for
from src.utils.logger import setup_logger
from src.utils.progress import ProgressIndicator
from rich.console import Console

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

# Console de stdout só para --format table; status e logs vão para stderr
console = Console()
logger = logging.getLogger("src.main")


class ModuliCLI:
    """Despacha os subcomandos e cuida de entrada e saída"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.indicator = ProgressIndicator()
        self.json = JSONStorage(config.DATA_DIR,
                                indent=config.STORAGE_CONFIG['json']['indent'],
                                ensure_ascii=config.STORAGE_CONFIG['json']['ensure_ascii'])

    def run(self) -> int:
        """Executa o subcomando e devolve o código de saída"""
        command = self.args.command
        handler = getattr(self, f"_run_{command}")
        result, rows, ok = handler()
        self._emit(command, result, rows)
        return EXIT_OK if ok else EXIT_FAILED

    def _read_input(self) -> str:
        """Lê --in (ou stdin com '-')"""
        source = self.args.input
        if source is None:
            raise FileNotFoundError("Informe o arquivo de entrada com --in")
        if source == '-':
            return sys.stdin.read()
        return Path(source).read_text(encoding='utf-8')

    def _read_json(self) -> Dict:
        return json.loads(self._read_input())

    def _run_dim(self):
        n = self._require_n()
        result = cmd_dim(n, cap=self.args.cap, threads=self.args.threads,
                         show_progress=config.MODULI_CONFIG['show_progress'])
        return result, lambda: dim_rows(n, self.args.cap), True

    def _run_embed(self):
        return cmd_embed(self._read_json()), None, True

    def _run_classify(self):
        return cmd_classify(self._read_json()), None, True

    def _run_lct(self):
        base_point = self.args.at.split(',') if self.args.at else None
        result = cmd_lct(self._read_input(), base_point=base_point,
                         assume_nondegenerate=config.NEWTON_CONFIG['assume_nondegenerate'])
        return result, None, True

    def _run_toric(self):
        result = cmd_toric(self._require_n(),
                           max_witness_dim=config.TORIC_CONFIG['max_witness_dim'])
        return result, None, True

    def _run_hodge(self):
        result = cmd_hodge(self._require_n(), method=self.args.method, threads=self.args.threads,
                           max_brute_dim=config.HODGE_CONFIG['max_brute_dim'],
                           chunk_size=config.HODGE_CONFIG['chunk_size'])
        return result, None, True

    def _run_verify(self):
        settings = dict(config.VERIFY_CONFIG,
                        max_count_level=config.MODULI_CONFIG['max_count_level'],
                        asymptotic_precision=config.MODULI_CONFIG['asymptotic_precision'],
                        max_lemma_dim=config.NEWTON_CONFIG['max_lemma_dim'])
        report = cmd_verify(self.args.level, settings, threads=self.args.threads)
        return report.to_dict(), report.rows, report.overall == 'pass'

    def _require_n(self) -> int:
        if self.args.n is None:
            raise ValueError("Informe a dimensão com --n")
        if self.args.n < 0:
            raise ValueError(f"Dimensão inválida: {self.args.n}")
        return self.args.n

    def _emit(self, command: str, result: Dict, rows) -> None:
        """JSON em stdout (ou tabela) e, com --out, o arquivo no formato da extensão"""
        if self.args.format == 'table' and command != 'verify':
            title, headers, table_rows = as_table(command, result)
            console.print(self.indicator.create_table(title, headers, table_rows))
        else:
            sys.stdout.write(self.json.dumps(result) + '\n')

        if self.args.out:
            out = Path(self.args.out)
            storage = storage_for(out, config.STORAGE_CONFIG)
            if isinstance(storage, JSONStorage):
                written = storage.save(result, out.name)
            elif rows is not None:
                written = storage.save(rows(), out.name)
            else:
                raise ValueError(f"Saída tabular não disponível para '{command}': use .json")
            self.indicator.show_status(f"Resultado salvo em {written}", "success")


def build_parser() -> argparse.ArgumentParser:
    """Monta o parser com os subcomandos e as opções comuns"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, help='Dimensão n da torre')
    common.add_argument('--in', dest='input', type=str, help="Arquivo de entrada ('-' para stdin)")
    common.add_argument('--out', type=str, help='Arquivo de saída (.json, .csv ou .parquet)')
    common.add_argument('--format', choices=['json', 'table'], default='json',
                        help='Formato em stdout (padrão: json)')
    common.add_argument('--threads', type=int, default=1,
                        help='Processos para as varreduras longas (padrão: 1)')
    common.add_argument('--cap', type=int, default=None,
                        help='Limite de materialização de tuplas (padrão: 10^7)')
    common.add_argument('--config', type=str, help='Arquivo JSON que sobrescreve config.py')
    common.add_argument('--verbose', action='store_true', help='Log de depuração em stderr')

    parser = argparse.ArgumentParser(
        description='Invariantes exatos da torre de espaços de moduli de Sylvester',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Exemplos de uso:
  python main.py dim --n 2                      # dim M_2 = 10 e os 11 pesos
  python main.py dim --n 5                      # só a contagem: 123769377141
  python main.py dim --n 3 --out pesos.parquet  # tabela (tupla, peso)
  python main.py embed --in ponto.json          # mergulho M_(n-1) -> M_n
  python main.py classify --in familia.json --format table
  python main.py lct --in fermat.txt            # lct pela saída diagonal
  python main.py toric --n 3                    # cartas, raio crepante, autodualidade
  python main.py hodge --n 4 --method brute --threads 8
  python main.py verify quick                   # suíte rápida
  python main.py verify full --out relatorio.csv
        '''
    )
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('dim', parents=[common], help='dim M_n, N_n e pesos')
    sub.add_parser('embed', parents=[common], help='Mergulho de um ponto um nível acima')
    sub.add_parser('classify', parents=[common], help='Tipos das fibras especiais')
    lct = sub.add_parser('lct', parents=[common], help='Limiar log canônico de um polinômio')
    lct.add_argument('--at', type=str, help="Ponto base 'a,b,…' (padrão: origem)")
    sub.add_parser('toric', parents=[common], help='Dados tóricos de P_(n+1)')
    hodge = sub.add_parser('hodge', parents=[common], help='h^(1,1) orbifold')
    hodge.add_argument('--method', choices=['auto', 'fast', 'brute'], default='auto',
                       help='Método de cálculo (padrão: auto)')
    verify = sub.add_parser('verify', parents=[common], help='Suíte de verificação')
    verify.add_argument('level', nargs='?', choices=['quick', 'full'], default='quick',
                        help='Nível da suíte (padrão: quick)')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Função principal; devolve 0 (ok), 1 (falha de checagem) ou 2 (entrada inválida)"""
    parser = build_parser()
    args = parser.parse_args(argv)
    status = ProgressIndicator()

    try:
        config.load_overrides(args.config)
        config.ensure_directories()
        if args.cap is None:
            args.cap = config.MODULI_CONFIG['materialization_cap']
        setup_logger(config.LOGGING_CONFIG['file_prefix'], log_dir=str(config.LOGS_DIR),
                     level='DEBUG' if args.verbose else config.LOGGING_CONFIG['level'],
                     fmt=config.LOGGING_CONFIG['format'],
                     datefmt=config.LOGGING_CONFIG['date_format'])
        logger.debug(f"Argumentos: {vars(args)}")
        return ModuliCLI(args).run()

    except VerificationError as e:
        status.show_status(f"Verificação falhou: {e}", "error")
        return EXIT_FAILED
    except (ModuliError, ValueError, KeyError, OSError) as e:
        # json.JSONDecodeError é ValueError
        status.show_status(f"Entrada inválida: {e}", "error")
        return EXIT_INPUT
    except KeyboardInterrupt:
        status.show_status("Execução interrompida pelo usuário", "warning")
        return EXIT_FAILED
    except Exception as e:
        logger.exception("Erro fatal")
        status.show_status(f"Erro fatal: {e}", "error")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
