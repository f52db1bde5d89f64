"""
Indicadores de status da suíte de verificação e das tabelas da CLI

Tudo é escrito em stderr: stdout fica reservado ao JSON da linha de comando.
"""

import time
from typing import Dict, List, Optional

from rich.console import Console
from rich.table import Table

STATUS_STYLES = {
    "info": ("blue", "ℹ️"),
    "success": ("green", "✅"),
    "warning": ("yellow", "⚠️"),
    "error": ("red", "❌")
}


class ProgressIndicator:
    """Mensagens, tabelas e passos da execução"""

    def __init__(self, quiet: bool = False):
        self.console = Console(stderr=True, quiet=quiet)

    def show_status(self, message: str, status: str = "info"):
        """
        Mostra uma mensagem colorida

        Args:
            message: Texto
            status: info, success, warning ou error
        """
        color, icon = STATUS_STYLES.get(status, ("white", ""))
        self.console.print(f"{icon} [{color}]{message}[/{color}]")

    def create_table(self, title: str, headers: List[str], rows: List[List]) -> Table:
        """Tabela rich com uma coluna por cabeçalho; células viram str"""
        table = Table(title=title, show_header=True, header_style="bold magenta")
        for header in headers:
            table.add_column(header, style="cyan")
        for row in rows:
            table.add_row(*[str(item) for item in row])
        return table

    def show_table(self, title: str, headers: List[str], rows: List[List]):
        self.console.print(self.create_table(title, headers, rows))

    def print_step(self, step_number: int, total_steps: int, description: str):
        """Linha 'Grupo k/N' com barra de blocos"""
        filled = int(20 * step_number / total_steps)
        bar = '█' * filled + '░' * (20 - filled)
        self.console.print(
            f"[bold cyan]Grupo {step_number}/{total_steps}[/bold cyan] "
            f"[green]{bar}[/green] {100 * step_number / total_steps:.0f}% - {description}"
        )


class TaskTracker:
    """Status e duração de cada checagem"""

    def __init__(self, quiet: bool = False):
        self.tasks: Dict[str, Dict] = {}
        self.console = Console(stderr=True, quiet=quiet)

    def add_task(self, task_id: str, description: str):
        self.tasks[task_id] = {
            'description': description,
            'status': 'pending',
            'start_time': time.perf_counter()
        }

    def start_task(self, task_id: str):
        if task_id in self.tasks:
            self.tasks[task_id]['status'] = 'in_progress'
            self.tasks[task_id]['start_time'] = time.perf_counter()

    def complete_task(self, task_id: str):
        if task_id in self.tasks:
            self.tasks[task_id]['status'] = 'completed'
            self.tasks[task_id]['end_time'] = time.perf_counter()

    def fail_task(self, task_id: str, error: Optional[str] = None):
        """
        Marca a checagem como falha

        Args:
            task_id: Nome da checagem
            error: Valor calculado ou mensagem da exceção
        """
        if task_id in self.tasks:
            self.tasks[task_id]['status'] = 'failed'
            self.tasks[task_id]['error'] = error
            self.tasks[task_id]['end_time'] = time.perf_counter()

    def elapsed_ms(self, task_id: str) -> int:
        """Duração em milissegundos (até agora, se ainda aberta)"""
        task = self.tasks[task_id]
        end = task.get('end_time', time.perf_counter())
        return int(round((end - task['start_time']) * 1000))

    def get_summary(self) -> Dict[str, int]:
        """Contagem por status, mais o total"""
        summary = {'total': len(self.tasks)}
        for status in ('completed', 'in_progress', 'failed', 'pending'):
            summary[status] = sum(1 for t in self.tasks.values() if t['status'] == status)
        return summary

    def display_summary(self):
        summary = self.get_summary()

        table = Table(title="📊 Resumo das Verificações", show_header=True, header_style="bold magenta")
        table.add_column("Status", style="cyan", width=15)
        table.add_column("Quantidade", justify="right", style="green")
        table.add_column("Porcentagem", justify="right", style="yellow")

        for label, status in [("✅ Aprovadas", 'completed'), ("🔄 Em Progresso", 'in_progress'),
                              ("❌ Falhadas", 'failed'), ("⏳ Pendentes", 'pending')]:
            count = summary[status]
            percentage = (count / summary['total'] * 100) if summary['total'] else 0
            table.add_row(label, str(count), f"{percentage:.1f}%")

        table.add_row("", "", "", style="dim")
        table.add_row("Total", str(summary['total']), "100%", style="bold")
        self.console.print(table)
