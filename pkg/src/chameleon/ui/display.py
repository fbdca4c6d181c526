"""
Terminal presentation layer, built on Rich.

Centralizes the single Console instance and every piece of styled output:
reports, scan tables, Bell results, contextual batch summaries, errors,
plus the spinner shown while a session runs. The console writes to
stderr; stdout is reserved for machine-readable results.
"""

from contextlib import contextmanager

from rich.console import Console
from rich.table import Table
from rich.status import Status
from rich.text import Text

from chameleon.utils import format_angle

console = Console(stderr=True)

_SPINNER = "dots"
_ACCENT = "#2A9D8F"


@contextmanager
def session_status(label: str = "Running session…"):
    """
    Spinner shown while trials run. Use `status.update(text)` to change
    the label.
    """
    with Status(Text(label, style=_ACCENT), console=console, spinner=_SPINNER) as status:
        yield status


def show_settings(**angles: float):
    for name, value in angles.items():
        console.print(Text(f"  {name} = {format_angle(value)}", style="dim"))


def show_report(report, exact: float):
    table = Table(show_header=False, box=None, pad_edge=False)
    table.add_column(style="bold")
    table.add_column()
    table.add_row("correlation", f"{report.correlation:+.6f} ± {report.std_error:.6f}")
    table.add_row("exact −cos(a−b)", f"{exact:+.6f}")
    table.add_row("difference", f"{report.correlation - exact:+.6f}")
    table.add_row("coincidences", f"{report.n_coincidences:,} / {report.n_trials:,} ({report.coincidence_fraction:.5f})")
    console.print(table)


def show_old_result(result, exact: float):
    table = Table(show_header=False, box=None, pad_edge=False)
    table.add_column(style="bold")
    table.add_column()
    table.add_row("raw mean", f"{result.raw_mean:+.6f}")
    table.add_row("scaled mean (×2π)", f"{result.scaled_mean:+.6f}")
    table.add_row("exact −cos(a−b)", f"{exact:+.6f}")
    console.print(table)


def show_scan(rows: list[dict]):
    table = Table(title="Correlation scan", title_style=f"bold {_ACCENT}")
    for column in ("delta", "estimate", "std_error", "exact", "coincidence_fraction"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(
            f"{row['delta']:.4f}",
            f"{row['estimate']:+.5f}",
            f"{row['std_error']:.5f}",
            f"{row['exact']:+.5f}",
            f"{row['coincidence_fraction']:.5f}",
        )
    console.print(table)


def show_bell(report):
    verdict = (
        Text("exceeds 1", style="bold red") if report.violates_bell else Text("within 1", style="bold green")
    )
    console.print(Text("Bell quantity ", style="bold"), Text(f"{report.bell_quantity:+.5f} ± {report.std_error:.5f} "), verdict)
    console.print(
        Text(f"  E(a,b)={report.e_ab:+.5f}  E(c,b)={report.e_cb:+.5f}  E(a,c)={report.e_ac:+.5f}", style="dim")
    )
    console.print(
        Text(
            f"  conditioning bound 1/P(Γc) = {report.bound:.4f}, unconditioned quantity = "
            f"{report.unconditioned_quantity:+.5f}",
            style="dim",
        )
    )


def show_contextual(batch):
    style = "bold green" if batch.all_hold else "bold red"
    console.print(Text(f"{batch.n_models} model(s), {batch.violations} Bell violation(s)", style=style))
    console.print(Text(f"  worst quantity: {batch.worst_quantity:+.9f}", style="dim"))
    console.print(Text(f"  models within 0.16 of the singlet triple: {batch.epr_matches}", style="dim"))


def show_frame_stats(summary: str):
    console.print(Text("\nFrames exchanged:", style="dim"))
    console.print(Text(summary, style="dim"))


def show_transcript_check(path, local: bool, replayed_equal: bool):
    console.print(Text(f"  transcript: {path}", style="dim"))
    console.print(Text(f"  locality audit: {'passed' if local else 'FAILED'}", style="green" if local else "red"))
    console.print(Text(f"  replay matches live report: {replayed_equal}", style="dim"))


def show_station_listening(role: str, address, setting):
    pinned = format_angle(setting) if setting is not None else "from config frame"
    console.print(Text(f"Station {role} listening on {address[0]}:{address[1]}, setting {pinned}", style=_ACCENT))


def show_error(message: str):
    console.print(f"[bold red]✗ {message}[/bold red]")
