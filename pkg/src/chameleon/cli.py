import csv
import io
import json
from contextlib import contextmanager
from typing import Optional

import click

from chameleon.analysis import estimate_correlation, run_bell_experiment
from chameleon.config import DEFAULT_K, DEFAULT_N_GRID, DEFAULT_N_TOTAL
from chameleon.contextual import run_contextual_batch
from chameleon.dynamics import exact_correlation
from chameleon.errors import ChameleonError, ConfigError
from chameleon.hooks import FrameStatsHook, HookManager, LoggingHook
from chameleon.netsim import Role, Station, replay, run_session, save_transcript, verify_locality
from chameleon.protocols import ExperimentConfig, ProtocolKind, SigmaMode, run_direct, run_old
from chameleon.protocols.streams import derive_session_seed
from chameleon.transports import StationServer, build_default_registry, parse_address
from chameleon.ui.display import (
    session_status,
    show_bell,
    show_contextual,
    show_error,
    show_frame_stats,
    show_old_result,
    show_report,
    show_scan,
    show_settings,
    show_station_listening,
    show_transcript_check,
)
from chameleon.utils import TWO_PI, parse_angle, validate_output_path

# --transport value -> registry name; "inproc" is the vectorised single-process run
NETSIM_TRANSPORTS = {"netsim": "inprocess", "tcp": "tcp"}
SCAN_COLUMNS = ("delta", "estimate", "std_error", "exact", "coincidence_fraction")


class AngleType(click.ParamType):
    name = "angle"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        try:
            return parse_angle(str(value))
        except ValueError:
            self.fail(f"{value!r} is not an angle (radians, '30deg' or '2pi/3')", param, ctx)


class AddressType(click.ParamType):
    name = "host:port"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_address(str(value))
        except ValueError as e:
            self.fail(str(e), param, ctx)


ANGLE = AngleType()
ADDRESS = AddressType()


@contextmanager
def _reporting_errors():
    """ConfigError becomes a usage error (exit 2), any other toolkit error exit 1."""
    try:
        yield
    except ConfigError as e:
        raise click.UsageError(str(e)) from e
    except ChameleonError as e:
        show_error(str(e))
        raise SystemExit(1) from e


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        validate_output_path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _to_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _to_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def _experiment_options(f):
    for option in reversed(
        [
            click.option("--mode", "sigma_mode", type=click.Choice(["D", "R"]), default="D", show_default=True,
                         help="σ-sequence: deterministic grid or random"),
            click.option("--n", "n_grid", type=int, default=DEFAULT_N_GRID, show_default=True, help="distinct σ values"),
            click.option("--n-total", type=int, default=DEFAULT_N_TOTAL, show_default=True, help="trials per session"),
            click.option("--seed", type=int, default=0, show_default=True),
            click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None),
            click.option("--output", type=click.Path(dir_okay=False), default=None, help="write results here instead of stdout"),
        ]
    ):
        f = option(f)
    return f


@click.group()
def cli():
    """Simulate and analyse the EPR-chameleon model."""


@cli.command()
@click.option("--protocol", type=click.Choice(["direct", "old"]), default="direct", show_default=True)
@click.option("--a", "a", type=ANGLE, required=True, help="station A setting")
@click.option("--b", "b", type=ANGLE, required=True, help="station B setting")
@_experiment_options
@click.option("--k1", type=int, default=DEFAULT_K, show_default=True, help="old protocol inner samples, station 1")
@click.option("--k2", type=int, default=DEFAULT_K, show_default=True, help="old protocol inner samples, station 2")
@click.option("--transport", type=click.Choice(["inproc", "netsim", "tcp"]), default="inproc", show_default=True)
@click.option("--station-a", type=ADDRESS, default=None, help="running station A server (tcp)")
@click.option("--station-b", type=ADDRESS, default=None, help="running station B server (tcp)")
@click.option("--transcript", type=click.Path(dir_okay=False), default=None, help="save the NDJSON transcript")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
def run(protocol, a, b, sigma_mode, n_grid, n_total, seed, fmt, output, k1, k2, transport, station_a, station_b,
        transcript, workers):
    """Run one direct or old protocol session."""
    with _reporting_errors():
        cfg = ExperimentConfig(
            a=a, b=b, n_grid=n_grid, n_total=n_total, sigma_mode=SigmaMode(sigma_mode),
            protocol=ProtocolKind(protocol), seed=seed, k1=k1, k2=k2,
        ).validate()
        if transport == "inproc" and (station_a or station_b or transcript):
            raise ConfigError("--station-a/--station-b/--transcript need --transport netsim or tcp")
        show_settings(a=cfg.a, b=cfg.b)
        exact = exact_correlation(cfg.a, cfg.b)
        result = {"protocol": protocol, "transport": transport, "config": cfg.to_dict(), "exact": exact}

        if cfg.protocol is ProtocolKind.OLD:
            if transport != "inproc":
                raise ConfigError("the old protocol runs in-process only")
            with session_status("Running old protocol…"):
                old = run_old(cfg)
            show_old_result(old, exact)
            result.update(raw_mean=old.raw_mean, scaled_mean=old.scaled_mean, difference=old.scaled_mean - exact)
        elif transport == "inproc":
            with session_status("Running direct protocol…"):
                report = estimate_correlation(run_direct(cfg, workers=workers))
            show_report(report, exact)
            result.update(report=report.to_dict(), difference=report.correlation - exact)
        else:
            report = _run_netsim(cfg, transport, station_a, station_b, transcript)
            show_report(report, exact)
            result.update(report=report.to_dict(), difference=report.correlation - exact)

        if fmt == "csv":
            row = {"protocol": protocol, "a": cfg.a, "b": cfg.b, "exact": exact, "difference": result["difference"]}
            row.update(result.get("report") or {"raw_mean": result.get("raw_mean"), "scaled_mean": result.get("scaled_mean")})
            _emit(_to_csv([row]), output)
        else:
            _emit(_to_json(result), output)


def _run_netsim(cfg, transport, station_a, station_b, transcript_path):
    registry = build_default_registry()
    kwargs = {}
    if transport == "tcp":
        kwargs["addresses"] = {
            role: address for role, address in ((Role.STATION_A, station_a), (Role.STATION_B, station_b)) if address
        }
    elif station_a or station_b:
        raise ConfigError("--station-a/--station-b need --transport tcp")

    stats = FrameStatsHook()
    hooks = HookManager([LoggingHook(), stats])
    try:
        with session_status(f"Running session over {transport}…"):
            report, captured = run_session(cfg, registry.create(NETSIM_TRANSPORTS[transport], **kwargs), hooks=hooks)
    except ChameleonError as e:
        partial = getattr(e, "transcript", None)
        if transcript_path and partial is not None:
            save_transcript(partial, validate_output_path(transcript_path))
        raise
    show_frame_stats(stats.summary())
    if transcript_path:
        path = save_transcript(captured, validate_output_path(transcript_path))
        show_transcript_check(path, verify_locality(captured), replay(captured) == report)
    return report


@cli.command()
@click.option("--b", "b", type=ANGLE, default=0.0, show_default=True, help="fixed station B setting")
@click.option("--steps", type=int, default=17, show_default=True, help="points of a−b over [0, 2π)")
@_experiment_options
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
def scan(b, steps, sigma_mode, n_grid, n_total, seed, fmt, output, workers):
    """Sweep a−b over a uniform grid, one direct session per point."""
    with _reporting_errors():
        if steps < 2:
            raise ConfigError(f"--steps must be at least 2, got {steps}")
        base = ExperimentConfig(b=b, n_grid=n_grid, n_total=n_total, sigma_mode=SigmaMode(sigma_mode), seed=seed).validate()

        rows = []
        with session_status("Scanning…") as status:
            for k in range(steps):
                delta = TWO_PI * k / steps
                status.update(f"Scanning… point {k + 1}/{steps}")
                cfg = base.with_settings(base.b + delta, base.b, seed=derive_session_seed(seed, "scan", k))
                report = estimate_correlation(run_direct(cfg, workers=workers))
                rows.append(
                    {
                        "delta": delta,
                        "estimate": report.correlation,
                        "std_error": report.std_error,
                        "exact": exact_correlation(cfg.a, cfg.b),
                        "coincidence_fraction": report.coincidence_fraction,
                    }
                )
        show_scan(rows)
        _emit(_to_json(rows) if fmt == "json" else _to_csv(rows), output)


@cli.command()
@click.option("--a", "a", type=ANGLE, required=True)
@click.option("--b", "b", type=ANGLE, required=True)
@click.option("--c", "c", type=ANGLE, required=True)
@_experiment_options
def bell(a, b, c, sigma_mode, n_grid, n_total, seed, fmt, output):
    """Estimate |E(a,b) − E(c,b)| − E(a,c) from three direct sessions."""
    with _reporting_errors():
        cfg = ExperimentConfig(n_grid=n_grid, n_total=n_total, sigma_mode=SigmaMode(sigma_mode), seed=seed).validate()
        show_settings(a=a, b=b, c=c)
        with session_status("Running three sessions…"):
            report = run_bell_experiment(a, b, c, cfg)
        show_bell(report)
        data = report.to_dict()
        if fmt == "csv":
            row = dict(zip(("a", "b", "c"), data.pop("settings")), **data)
            _emit(_to_csv([row]), output)
        else:
            _emit(_to_json(data), output)


@cli.command()
@click.option("--models", type=int, default=1000, show_default=True)
@click.option("--omega-min", type=int, default=2, show_default=True)
@click.option("--omega-max", type=int, default=64, show_default=True)
@click.option("--settings", "n_settings", type=int, default=6, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="write one JSON line per model here")
def contextual(models, omega_min, omega_max, n_settings, seed, output):
    """Check random normalized contextual models against the Bell inequality."""
    with _reporting_errors():
        with session_status("Checking contextual models…"):
            batch = run_contextual_batch(models, omega_min, omega_max, n_settings, seed)
        show_contextual(batch)
        if output:
            validate_output_path(output).write_text(batch.to_json_lines(), encoding="utf-8")
        click.echo(_to_json(batch.summary()), nl=False)
    if not batch.all_hold:
        raise SystemExit(1)


@cli.command("serve-station")
@click.option("--role", type=click.Choice(["a", "b"]), required=True)
@click.option("--setting", type=ANGLE, default=None, help="refuse sessions configured for any other setting")
@click.option("--listen", type=ADDRESS, default="127.0.0.1:0", show_default=True)
@click.option("--once", is_flag=True, help="exit after one session")
def serve_station(role, setting, listen, once):
    """Serve one station of a tcp session."""
    station = Station(Role(role), pinned_setting=setting)
    with _reporting_errors():
        server = StationServer(station, *listen)
    show_station_listening(role.upper(), server.address, station.pinned_setting)
    try:
        if once:
            server.serve_one()
        else:
            server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.close()


if __name__ == "__main__":
    cli()
