#!/usr/bin/env python3
"""
nslen - nonsoluble length of finite permutation groups
CLI with four commands: build, analyze, verify, word.
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
from click.core import ParameterSource
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .config import MODE_KINDS, OUTPUT_FORMATS, RunConfig, resolve
from .core import groupfile
from .core.constructions import build as build_group
from .core.constructions import standard_corpus
from .errors import NslenError
from .verify.checks import CHECKS
from .verify.report import GroupReport, build_document, exit_code, print_summary, to_json, to_tsv
from .verify.runner import load_inputs, run_all

logger = logging.getLogger("nslen.cli")

# CLI parameter name -> RunConfig field
_FIELDS = {
    "prime": "primes",
    "n": "n",
    "word": "word",
    "e": "e",
    "mode": "mode",
    "seed": "seed",
    "samples": "samples",
    "exact_cap": "exact_cap",
    "index_cap": "index_cap",
    "enum_cap": "enum_cap",
    "scan_cap": "scan_cap",
    "allow_p2": "allow_p2",
    "shifted": "shifted",
    "exhaustive_prop22": "exhaustive_prop22",
    "format": "format",
    "out": "out",
    "workers": "workers",
    "timings": "timings",
}


def _setup_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    root = logging.getLogger("nslen")
    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)
    root.addHandler(RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False))
    root.setLevel(level)
    root.propagate = False


def run_options(func):
    """Options shared by analyze, verify and word."""
    options = [
        click.option("--prime", "prime", type=int, multiple=True, help="Prime p (repeatable)"),
        click.option("--n", "n", type=int, default=1, show_default=True, help="Derived word index n"),
        click.option("--word", "word", default=None, help="Commutator word, e.g. '[x1,x2]', 'd2' or 'g3'"),
        click.option("--e", "e", type=int, default=None, help="Use this e instead of the measured one"),
        click.option("--mode", "mode", type=click.Choice(MODE_KINDS), default="auto", show_default=True),
        click.option("--seed", "seed", type=int, default=0, show_default=True),
        click.option("--samples", "samples", type=int, default=512, show_default=True,
                     help="Random elements per randomized scan"),
        click.option("--exact-cap", "exact_cap", type=int, default=10 ** 5, show_default=True,
                     help="Largest group scanned class by class"),
        click.option("--index-cap", "index_cap", type=int, default=10 ** 5, show_default=True,
                     help="Largest index of a coset action"),
        click.option("--enum-cap", "enum_cap", type=int, default=10 ** 6, show_default=True,
                     help="Largest group enumerated for value sets"),
        click.option("--scan-cap", "scan_cap", type=int, default=2 * 10 ** 4, show_default=True,
                     help="Largest Sylow subgroup scanned exhaustively"),
        click.option("--allow-p2", "allow_p2", is_flag=True, default=False, help="Permit exploratory p = 2 runs"),
        click.option("--shifted", "shifted", is_flag=True, default=False,
                     help="Measure e on delta_(n-1)-values instead of delta_n-values"),
        click.option("--exhaustive-prop22/--reduced-prop22", "exhaustive_prop22", default=False,
                     help="Scan every base element instead of one per class"),
        click.option("--format", "format", type=click.Choice(OUTPUT_FORMATS), default="json", show_default=True),
        click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Report path"),
        click.option("--workers", "workers", type=int, default=1, show_default=True),
        click.option("--timings", "timings", is_flag=True, default=False, help="Include runtimes in the report"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _config(ctx: click.Context, command: str, inputs: Sequence[str]) -> RunConfig:
    values: Dict[str, Any] = {"inputs": tuple(inputs)}
    explicit: Dict[str, bool] = {"inputs": True}
    for param, name in _FIELDS.items():
        value = ctx.params.get(param)
        if value is None or (param == "prime" and not value):
            continue
        values[name] = tuple(value) if param == "prime" else value
        explicit[name] = ctx.get_parameter_source(param) == ParameterSource.COMMANDLINE
    cfg = resolve(command, values, explicit, ctx.obj.get("config"))
    return cfg.with_overrides({"quiet": ctx.obj.get("quiet", False)})


def _emit(cfg: RunConfig, groups: List[GroupReport]) -> None:
    if cfg.format == "tsv":
        text = to_tsv(groups)
    else:
        text = to_json(build_document(groups, cfg.echo(), timings=cfg.timings))
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
        logger.info("report written to %s", cfg.out)
    else:
        click.echo(text, nl=False)
    if not cfg.quiet:
        print_summary(groups)


@click.group()
@click.version_option(version=__version__, prog_name="nslen")
@click.option("-v", "--verbose", count=True, help="More logging (-vv for debug)")
@click.option("--quiet", is_flag=True, default=False, help="No summary table on stderr")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="YAML file with default settings")
@click.pass_context
def cli(ctx, verbose, quiet, config_path):
    """nslen - nonsoluble length of finite permutation groups

    Commands:
      build    Write a group file from a construction expression (or the corpus)
      analyze  Orders, radicals, canonical series and lengths
      verify   Check a length bound on every input group
      word     Value sets and verbal exponents of a commutator word
    """
    _setup_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj.update({"config": config_path, "quiet": quiet})


@cli.command()
@click.argument("expression", required=False)
@click.option("--corpus", "corpus", type=click.Path(file_okay=False), default=None,
              help="Write the standard corpus into this directory")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Group file path")
def build(expression, corpus, out):
    """Write a group file for EXPRESSION, e.g. 'wreath(alternating(5),cyclic(5))'."""
    if corpus:
        target = Path(corpus)
        target.mkdir(parents=True, exist_ok=True)
        for G in standard_corpus():
            path = groupfile.save(G, target / f"{G.name}.json")
            logger.info("wrote %s", path)
        return 0
    if not expression:
        raise click.UsageError("build needs an EXPRESSION or --corpus DIR")
    G = build_group(expression)
    if out:
        groupfile.save(G, out)
    else:
        click.echo(groupfile.dumps(G), nl=False)
    return 0


@cli.command()
@click.argument("inputs", nargs=-1, required=True)
@run_options
@click.pass_context
def analyze(ctx, inputs, **_):
    """Orders, radicals, canonical series and lengths of every input group."""
    cfg = _config(ctx, "analyze", inputs)
    groups = run_all("analyze", load_inputs(cfg.inputs), cfg)
    _emit(cfg, groups)
    return 0


@cli.command()
@click.argument("check", type=click.Choice(CHECKS))
@click.argument("inputs", nargs=-1, required=True)
@run_options
@click.pass_context
def verify(ctx, check, inputs, **_):
    """Run CHECK on every input group; exit 1 if any check fails."""
    cfg = _config(ctx, f"verify {check}", inputs)
    groups = run_all("verify", load_inputs(cfg.inputs), cfg, check)
    _emit(cfg, groups)
    return exit_code(groups)


@cli.command()
@click.argument("inputs", nargs=-1, required=True)
@run_options
@click.pass_context
def word(ctx, inputs, **_):
    """Value set, verbal subgroup and verbal exponents of --word on every input group."""
    cfg = _config(ctx, "word", inputs)
    groups = run_all("word", load_inputs(cfg.inputs), cfg)
    _emit(cfg, groups)
    return 0


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="nslen", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        click.echo(click.style("Aborted.", fg="red"), err=True)
        return 2
    except NslenError as exc:
        click.echo(click.style(f"Error: {exc}", fg="red"), err=True)
        return 2
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == '__main__':
    main()
