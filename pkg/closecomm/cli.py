"""
Command-line interface for borough and 2-club analysis.

Provides CLI commands:
- boroughs: Borough detection and outback only
- clubs: Full 2-club enumeration
- stats: Type distribution tables per scope
- query: Membership and co-membership profiles
- project: Bipartite projection to an edge list
- sweep: Projection and borough counts over a threshold range

Usage:
    python -m closecomm.cli boroughs karate.txt
    python -m closecomm.cli clubs karate.txt --format csv
    python -m closecomm.cli query karate.txt --node 1 --node 34 --within 9
    python -m closecomm.cli project pairs.txt --threshold 2 --out coauthors.txt

Exit codes: 0 success, 1 parse or argument error, 2 resource budget
exceeded, 3 internal invariant violation.
"""

import functools
import json
import sys
from typing import Any, Dict, Optional, Tuple

import click
from pydantic import ValidationError as PydanticValidationError
from tabulate import tabulate

from closecomm.analysis.interfaces import GLOBAL_SCOPE
from closecomm.analysis.reports import (
    clubs_containing,
    co_membership,
    membership,
    render_co_membership,
    render_distribution,
    render_membership,
    type_distribution,
)
from closecomm.bundle import PipelineResult, analyze
from closecomm.config import AnalysisSettings, settings as default_settings
from closecomm.error_handling import (
    ApplicationError,
    ConfigError,
    EnumerationIncompleteError,
    ValidationError,
    handle_error,
)
from closecomm.export import export, to_edge_list, write_atomic
from closecomm.ingest import parse_bipartite, parse_edge_list, project_bipartite, read_text, threshold_sweep
from closecomm.logging import configure_logging, get_run_id
from closecomm.metrics import exposition


# ============================================================================
# Helpers
# ============================================================================

def _settings(ctx: click.Context, **overrides: Any) -> AnalysisSettings:
    """Validated copy of the group settings with command overrides."""
    base: AnalysisSettings = ctx.obj["settings"]
    update = {k: v for k, v in overrides.items() if v is not None}
    try:
        return AnalysisSettings.model_validate({**base.model_dump(), **update})
    except PydanticValidationError as e:
        raise ConfigError.from_validation(e) from e


def guarded(func):
    """Map library errors onto exit codes and write metrics afterwards."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        code = 0
        try:
            func(*args, **kwargs)
        except EnumerationIncompleteError as e:
            e.log_error(get_run_id())
            click.secho(f"[FAIL] {e.message}", fg="red", bold=True, err=True)
            click.echo(
                f"       {len(e.partial)} partial 2-clubs collected; results are INCOMPLETE",
                err=True,
            )
            code = e.exit_code
        except ApplicationError as e:
            e.log_error(get_run_id())
            click.secho(f"[FAIL] {e.message}", fg="red", bold=True, err=True)
            code = e.exit_code
        except Exception as e:
            wrapped = handle_error(e, {"command": ctx.info_name})
            click.secho(f"[FAIL] Error: {wrapped.message}", fg="red", bold=True, err=True)
            code = wrapped.exit_code
        finally:
            metrics_out = (ctx.obj or {}).get("metrics_out")
            if metrics_out:
                write_atomic(metrics_out, exposition())
        if code:
            sys.exit(code)
    return wrapper


def _load_graph(path: str):
    return parse_edge_list(read_text(path))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
        click.secho(f"[OK] Written to: {out}", fg="green", bold=True, err=True)
    else:
        click.echo(text, nl=False)


def _borough_table(result: PipelineResult) -> str:
    g = result.graph
    touched = set(result.touch) | set(result.outback_touch)
    rows = []
    for b in result.boroughs:
        counts = b.cycle_counts
        rows.append([
            b.id,
            b.size,
            len(b.edge_set),
            b.diameter,
            counts[3],
            counts[4],
            counts[5],
            ",".join(g.labels(u for u in b.nodes if u in touched)),
        ])
    headers = ["id", "nodes", "edges", "diameter", "C3", "C4", "C5", "touch points"]
    return tabulate(rows, headers=headers, tablefmt="simple")


class ExitCodeGroup(click.Group):
    """Click group whose usage errors exit with 1.

    Click reports bad invocations with status 2, which this tool reserves
    for an exhausted resource budget.
    """

    USAGE_EXIT_CODE = 1

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as e:
            e.show()
            code = self.USAGE_EXIT_CODE
        except click.ClickException as e:
            e.show()
            code = e.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = self.USAGE_EXIT_CODE
        if standalone_mode:
            sys.exit(code)
        return code


# ============================================================================
# Click Groups and Commands
# ============================================================================

@click.group(cls=ExitCodeGroup)
@click.version_option(version=default_settings.app_version, prog_name=default_settings.app_name)
@click.option("--branch-budget", type=int, default=None, help="Search expansions allowed per scope")
@click.option("--cycle-cap", type=int, default=None, help="Maximum stored basic cycles")
@click.option(
    "--seed-order",
    type=click.Choice(["label", "degree"]),
    default=None,
    help="Enumeration seed order",
)
@click.option("--workers", type=int, default=None, help="Processes for per-borough enumeration")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=None,
    help="Structured log level (JSON lines on stderr)",
)
@click.option("--metrics-out", type=click.Path(dir_okay=False), default=None, help="Write Prometheus metrics here")
@click.pass_context
def cli(
    ctx: click.Context,
    branch_budget: Optional[int],
    cycle_cap: Optional[int],
    seed_order: Optional[str],
    workers: Optional[int],
    log_level: Optional[str],
    metrics_out: Optional[str],
):
    """Borough detection and maximal 2-club analysis.

    Examples:
        # Boroughs of an edge list
        closecomm boroughs karate.txt

        # All 2-clubs as CSV
        closecomm clubs karate.txt --format csv

        # Clubs shared by nodes 1 and 34
        closecomm query karate.txt --node 1 --node 34
    """
    ctx.ensure_object(dict)
    ctx.obj["metrics_out"] = metrics_out
    try:
        settings = AnalysisSettings.model_validate({
            **default_settings.model_dump(),
            **{
                k: v
                for k, v in {
                    "branch_budget": branch_budget,
                    "cycle_cap": cycle_cap,
                    "seed_order": seed_order,
                    "workers": workers,
                    "log_level": log_level,
                }.items()
                if v is not None
            },
        })
    except PydanticValidationError as e:
        error = ConfigError.from_validation(e)
        error.log_error()
        click.secho(f"[FAIL] {error.message}", fg="red", bold=True, err=True)
        sys.exit(error.exit_code)
    ctx.obj["settings"] = settings
    configure_logging(settings.log_level)


@cli.command()
@click.argument("file_path", type=click.Path())
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "dot"]),
    default="text",
    help="Output format",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Save output to file")
@click.pass_context
@guarded
def boroughs(ctx: click.Context, file_path: str, fmt: str, out: Optional[str]):
    """Detect boroughs and the outback.

    Example:
        closecomm boroughs karate.txt
        closecomm boroughs karate.txt --format dot --out karate.dot
    """
    g = _load_graph(file_path)
    result = analyze(g, _settings(ctx), enumerate_clubs=False)
    if fmt == "text":
        lines = [
            _borough_table(result),
            "",
            f"outback: {len(result.outback.non_basic_edges)} edges "
            f"({len(result.outback.bridges)} bridges, "
            f"{len(result.outback.long_cycle_edges)} on long cycles only)",
        ]
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(export(result.to_bundle(), fmt), out)
    click.secho(f"[OK] {len(result.boroughs)} borough(s)", fg="green", bold=True, err=True)


@cli.command()
@click.argument("file_path", type=click.Path())
@click.option("--scope", default="all", help="all, global, or borough=<id>[,<id>...]")
@click.option("--min-nodes", type=int, default=None, help="Minimum club size")
@click.option("--min-edges", type=int, default=None, help="Minimum induced club edges")
@click.option("--reconcile", is_flag=True, help="Also enumerate globally and reconcile")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "csv", "dot"]),
    default="text",
    help="Output format",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Save output to file")
@click.pass_context
@guarded
def clubs(
    ctx: click.Context,
    file_path: str,
    scope: str,
    min_nodes: Optional[int],
    min_edges: Optional[int],
    reconcile: bool,
    fmt: str,
    out: Optional[str],
):
    """Enumerate and classify all maximal 2-clubs.

    Example:
        closecomm clubs karate.txt
        closecomm clubs karate.txt --scope borough=0 --format json
        closecomm clubs karate.txt --scope global --min-nodes 4
    """
    settings = _settings(
        ctx,
        scope=scope,
        min_club_nodes=min_nodes,
        min_club_edges=min_edges,
        reconcile=reconcile or None,
    )
    g = _load_graph(file_path)
    result = analyze(g, settings)
    if fmt == "text":
        rows = [
            [club.host, club.club_type.value, club.size, club.separable, " ".join(g.labels(club.nodes))]
            for club in result.all_clubs()
        ]
        text = tabulate(rows, headers=["scope", "type", "size", "separable", "members"], tablefmt="simple")
        _emit(text + "\n", out)
    else:
        _emit(export(result.to_bundle(), fmt), out)
    if result.reconciliation is not None and not result.reconciliation.consistent:
        click.secho("[WARN] global and borough enumerations disagree", fg="yellow", bold=True, err=True)
    click.secho(f"[OK] {len(result.all_clubs())} 2-club(s)", fg="green", bold=True, err=True)


@cli.command()
@click.argument("file_path", type=click.Path())
@click.option("--scope", default="all", help="all, global, or borough=<id>[,<id>...]")
@click.pass_context
@guarded
def stats(ctx: click.Context, file_path: str, scope: str):
    """Type distribution tables per scope.

    Example:
        closecomm stats karate.txt
    """
    g = _load_graph(file_path)
    result = analyze(g, _settings(ctx, scope=scope))
    blocks = []
    for s in result.scopes():
        title = "whole graph" if s == GLOBAL_SCOPE else f"borough {s}"
        dist = type_distribution(result.clubs[s], result.scope_node_count(s))
        blocks.append(render_distribution(dist, title=title))
    click.echo("\n\n".join(blocks))
    click.secho("[OK] Statistics complete", fg="green", bold=True, err=True)


@cli.command()
@click.argument("file_path", type=click.Path())
@click.option("--node", "nodes", multiple=True, required=True, help="Node label (once or twice)")
@click.option("--within", default=None, help="Only clubs that also contain this node")
@click.option("--scope", default="all", help="all, global, or borough=<id>[,<id>...]")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of a table")
@click.pass_context
@guarded
def query(
    ctx: click.Context,
    file_path: str,
    nodes: Tuple[str, ...],
    within: Optional[str],
    scope: str,
    as_json: bool,
):
    """Membership of one node, or co-membership of two.

    Example:
        closecomm query karate.txt --node 9
        closecomm query karate.txt --node 1 --node 34 --within 9
    """
    if len(nodes) > 2:
        raise ValidationError("--node may be given once or twice", field="node")
    g = _load_graph(file_path)
    indices = [g.index_of(label) for label in nodes]
    result = analyze(g, _settings(ctx, scope=scope))
    pool = result.all_clubs()
    if within is not None:
        pool = clubs_containing(pool, g.index_of(within))

    if len(indices) == 1:
        profile = membership(pool, indices[0])
        payload: Dict[str, Any] = profile.to_dict(g)
        text = render_membership(profile, g)
    else:
        co = co_membership(pool, indices[0], indices[1])
        payload = co.to_dict(g)
        text = render_co_membership(co, g)
    if within is not None:
        payload["within"] = within
        text = f"clubs containing {within}: {len(pool)}\n{text}"
    click.echo(json.dumps(payload, indent=2, sort_keys=True) if as_json else text)


@cli.command()
@click.argument("file_path", type=click.Path())
@click.option("--threshold", "-t", type=int, default=None, help="Minimum shared items per edge")
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Edge-list output file")
@click.pass_context
@guarded
def project(ctx: click.Context, file_path: str, threshold: Optional[int], out: str):
    """Project actor-item pairs onto an actor graph.

    Example:
        closecomm project pairs.txt --threshold 2 --out coauthors.txt
    """
    settings = _settings(ctx, threshold=threshold)
    pairs = parse_bipartite(read_text(file_path))
    g = project_bipartite(pairs, settings.threshold)
    write_atomic(out, to_edge_list(g))
    click.secho(f"[OK] {g.n} nodes, {g.m} edges written to: {out}", fg="green", bold=True, err=True)


@cli.command()
@click.argument("file_path", type=click.Path())
@click.option("--from", "t_from", type=int, default=1, help="First threshold")
@click.option("--to", "t_to", type=int, required=True, help="Last threshold")
@click.pass_context
@guarded
def sweep(ctx: click.Context, file_path: str, t_from: int, t_to: int):
    """Projection size and boroughs for each threshold in a range.

    Example:
        closecomm sweep pairs.txt --from 1 --to 5
    """
    if t_from < 1 or t_to < t_from:
        raise ValidationError("need 1 <= --from <= --to", field="threshold")
    pairs = parse_bipartite(read_text(file_path))
    rows = threshold_sweep(pairs, range(t_from, t_to + 1), _settings(ctx))
    table = [
        [r.threshold, r.nodes, r.edges, r.density, r.boroughs, " ".join(map(str, r.largest))]
        for r in rows
    ]
    headers = ["t", "nodes", "edges", "density", "boroughs", "largest borough sizes"]
    click.echo(tabulate(table, headers=headers, tablefmt="simple"))


def main() -> None:
    """Console entry point."""
    cli(prog_name=default_settings.app_name)


if __name__ == "__main__":
    main()
