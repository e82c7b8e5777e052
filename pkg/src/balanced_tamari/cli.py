"""
balanced-tamari command line

Data (JSON lines, counts, reports) goes to stdout, logs to stderr.
Exit status: 0 on success or PASS, 1 when a verification fails, 2 on
usage errors.
"""
import csv
import functools
import io
import json
import logging
from typing import Any, Callable, Iterable, List, Optional

import click
import networkx as nx

from balanced_tamari import balance_dynamics, grammar, patterns, series, tamari
from balanced_tamari.binary_tree import (
    Tree,
    all_balanced_trees,
    deserialize,
    dumps,
    is_balanced,
    iter_trees,
    label_with_imbalance,
    labels,
    size,
    to_json,
)
from balanced_tamari.config import get_settings
from balanced_tamari.exceptions import HypercubeError, TamariError
from balanced_tamari.utils.logger import setup_logger

logger = logging.getLogger(__name__)

FAMILIES = ["balanced", "maximal", "intervals", "maximal-intervals"]


def _usage_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    """Report library errors on bad input as usage errors (exit 2)"""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except HypercubeError:
            raise
        except (TamariError, ValueError) as e:
            raise click.UsageError(str(e)) from e

    return wrapper


def _tree_option(value: str, name: str) -> Tree:
    try:
        return deserialize(value)
    except TamariError as e:
        raise click.BadParameter(str(e), param_hint=name) from e


def _echo_trees(trees: Iterable[Tree]) -> int:
    count = 0
    for t in trees:
        click.echo(dumps(t))
        count += 1
    return count


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=None,
    help="Overrides LOG_LEVEL.",
)
@click.option("--progress/--no-progress", default=False, help="Show progress bars on long sweeps.")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], progress: bool) -> None:
    """Balanced binary trees in the Tamari lattice."""
    settings = get_settings()
    setup_logger("balanced_tamari", log_file=settings.log_file, level=log_level)
    logger.debug(f"running {ctx.invoked_subcommand} with {settings}")
    ctx.ensure_object(dict)
    ctx.obj["progress"] = progress


def _check_nodes(n: int, bound: int, variable: str, force: bool) -> None:
    if n > bound and not force:
        raise click.UsageError(f"--nodes {n} exceeds {bound} ({variable}); pass --force to insist")


@cli.command("enum")
@click.option(
    "--nodes", "n", type=click.IntRange(min=0), required=True, help="Number of internal nodes."
)
@click.option("--balanced", "family", flag_value="balanced", help="Only balanced trees.")
@click.option("--maximal", "family", flag_value="maximal", help="Only maximal balanced trees.")
@click.option("--minimal", "family", flag_value="minimal", help="Only minimal balanced trees.")
@click.option("--force", is_flag=True, help="Allow sizes above the enumeration bounds.")
def enum_command(n: int, family: Optional[str], force: bool) -> None:
    """List trees as JSON lines, then their count."""
    settings = get_settings()
    if family is None:
        _check_nodes(n, settings.max_enum_nodes, "TAMARI_MAX_ENUM_NODES", force)
        trees: Iterable[Tree] = iter_trees(n)
    else:
        _check_nodes(n, settings.max_balanced_nodes, "TAMARI_MAX_BALANCED_NODES", force)
        trees = all_balanced_trees(n)
        if family == "maximal":
            trees = (t for t in trees if patterns.is_maximal_balanced(t))
        elif family == "minimal":
            trees = (t for t in trees if patterns.is_minimal_balanced(t))
    count = _echo_trees(trees)
    click.echo(f"count={count}")


@cli.command("lattice")
@click.option("--nodes", "n", type=click.IntRange(min=0), required=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--index-labels", is_flag=True, help="Label nodes by index and write a .tsv sidecar.")
@click.option("--force", is_flag=True, help="Allow sizes above TAMARI_MAX_LATTICE_NODES.")
def lattice_command(n: int, dot_path: str, index_labels: bool, force: bool) -> None:
    """Write the Hasse diagram of the Tamari lattice."""
    _check_nodes(n, get_settings().max_lattice_nodes, "TAMARI_MAX_LATTICE_NODES", force)
    poset = tamari.build_poset(n)
    poset.to_dot(dot_path, index_labels=index_labels)
    click.echo(f"n={n} elements={len(poset)} covers={poset.graph.number_of_edges()}")


@cli.command("balanced-poset")
@click.option("--nodes", "n", type=click.IntRange(min=0), required=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--index-labels", is_flag=True, help="Label nodes by index and write a .tsv sidecar.")
@click.option("--force", is_flag=True, help="Allow sizes above TAMARI_MAX_BALANCED_NODES.")
def balanced_poset_command(n: int, dot_path: str, index_labels: bool, force: bool) -> None:
    """Write the Hasse diagram of the balanced trees under conservative rotations."""
    _check_nodes(n, get_settings().max_balanced_nodes, "TAMARI_MAX_BALANCED_NODES", force)
    poset = balance_dynamics.balanced_subposet(n)
    poset.to_dot(dot_path, index_labels=index_labels)
    components = nx.number_weakly_connected_components(poset.graph) if len(poset) else 0
    covers = poset.graph.number_of_edges()
    click.echo(f"n={n} elements={len(poset)} covers={covers} components={components}")


@cli.command("interval")
@click.option("--lower", required=True, help="Lower tree as JSON.")
@click.option("--upper", required=True, help="Upper tree as JSON.")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--index-labels", is_flag=True)
@_usage_errors
def interval_command(lower: str, upper: str, dot_path: Optional[str], index_labels: bool) -> None:
    """Print the elements of an interval and its hypercube dimension."""
    t0 = _tree_option(lower, "--lower")
    t1 = _tree_option(upper, "--upper")
    iv = tamari.interval(t0, t1)
    _echo_trees(iv.elements)
    if dot_path:
        iv.to_dot(dot_path, index_labels=index_labels)
    click.echo(f"elements={len(iv)}")
    if not (is_balanced(t0) and is_balanced(t1)):
        click.echo("k=n/a hypercube=n/a")
        return
    try:
        k = balance_dynamics.hypercube_dimension(iv)
    except HypercubeError as e:
        click.echo(f"hypercube=FAIL {e}")
        click.get_current_context().exit(1)
    click.echo(f"k={k} hypercube=PASS")


def _check_max_nodes(max_nodes: int) -> None:
    bound = get_settings().max_verify_nodes
    if max_nodes > bound:
        raise click.BadParameter(
            f"must be at most {bound} (TAMARI_MAX_VERIFY_NODES)", param_hint="--max-nodes"
        )


@cli.command("verify-closure")
@click.option("--max-nodes", type=click.IntRange(min=1), required=True)
@click.pass_context
def verify_closure_command(ctx: click.Context, max_nodes: int) -> None:
    """Check that intervals between balanced trees contain only balanced trees."""
    _check_max_nodes(max_nodes)
    passed = True
    for n in range(1, max_nodes + 1):
        report = balance_dynamics.verify_closure(n, progress=ctx.obj["progress"])
        click.echo(report.to_line())
        passed = passed and report.passed
    ctx.exit(0 if passed else 1)


@cli.command("hypercube-sweep")
@click.option("--max-nodes", type=click.IntRange(min=1), required=True)
@click.pass_context
def hypercube_sweep_command(ctx: click.Context, max_nodes: int) -> None:
    """Check that every interval between balanced trees is a hypercube."""
    _check_max_nodes(max_nodes)
    passed = True
    for n in range(1, max_nodes + 1):
        report = balance_dynamics.hypercube_sweep(n, progress=ctx.obj["progress"])
        click.echo(report.to_line())
        passed = passed and report.passed
    ctx.exit(0 if passed else 1)


@cli.command("series")
@click.option("--which", type=click.Choice(FAMILIES), default="balanced", show_default=True)
@click.option(
    "--degree", type=click.IntRange(min=1), required=True, help="Largest number of leaves."
)
@click.option("--csv", "as_csv", is_flag=True, help="Write CSV with header leaves,count.")
@click.option(
    "--sub",
    "substitutions",
    multiple=True,
    help="Substitution polynomial for each variable x, y, z, t in order (replaces --which).",
)
@click.option("--seed", default="x", show_default=True, help="Seed polynomial of a --sub equation.")
@_usage_errors
def series_command(
    which: str, degree: int, as_csv: bool, substitutions: List[str], seed: str
) -> None:
    """Counting series by number of leaves."""
    if substitutions:
        equation = series.custom_equation(substitutions, seed=seed)
    else:
        equation = series.builtin_equation(which)
    counts = series.iterate_fixed_point(equation, degree)
    if as_csv:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["leaves", "count"])
        writer.writerows(enumerate(counts, start=1))
        click.echo(buffer.getvalue(), nl=False)
    else:
        for leaves, count in enumerate(counts, start=1):
            click.echo(f"leaves={leaves} count={count}")


@cli.command("generate")
@click.option(
    "--grammar", "which", type=click.Choice(FAMILIES), default="balanced", show_default=True
)
@click.option("--steps", type=click.IntRange(min=0), required=True)
@click.option(
    "--max-nodes", type=click.IntRange(min=0), default=None, help="Drop bud trees above this size."
)
@click.pass_context
@_usage_errors
def generate_command(ctx: click.Context, which: str, steps: int, max_nodes: Optional[int]) -> None:
    """Run a synchronous grammar and list its finalized trees as JSON lines."""
    g = grammar.builtin_grammar(which)
    outputs = grammar.generate_bud_trees(
        g, steps, max_nodes=max_nodes, progress=ctx.obj["progress"]
    )
    for out in outputs:
        record = {
            "tree": to_json(out.tree),
            "labels": labels(out.labeled),
            "marks": sorted(out.marks),
        }
        click.echo(json.dumps(record, separators=(",", ":")))
    click.echo(f"count={len(outputs)}")


@cli.command("patterns")
@click.option("--tree", "tree_json", required=True, help="Tree as JSON.")
@click.option(
    "--avoid",
    "spec",
    required=True,
    help=(
        "';'-separated family names (balanced, perfect, right-comb, p-max, p-min) "
        "and pattern literals such as '(-1 L:(-1))' or '(1 R:(0))'."
    ),
)
@_usage_errors
def patterns_command(tree_json: str, spec: str) -> None:
    """Test whether a tree avoids a set of tree patterns."""
    t = _tree_option(tree_json, "--tree")
    ps = patterns.parse_pattern_set(spec)
    click.echo(f"labels={labels(label_with_imbalance(t))}")
    click.echo(f"nodes={size(t)} avoids={'true' if patterns.avoids(t, ps) else 'false'}")


def main() -> None:
    cli(obj={})


if __name__ == "__main__":
    main()
