"""
TorsionLab - Command line interface

Exit codes: 0 when everything passes, 1 when a check fails or a numerical
precondition is violated, 2 on malformed input.
"""

import json
import sys
from typing import Any, Dict, List, Optional

import click
from loguru import logger

from .executors import WorkbenchExecutor, to_plain
from .suites import suite_names

EXIT_FAILED = 1
EXIT_INPUT = 2


def parse_point(text: str) -> complex:
    """RE,IM (or a bare real part) as a complex number"""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise click.BadParameter(f"expected RE,IM, got {text!r}")


def parse_ints(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma separated list of integers, got {text!r}")


def parse_names(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [p.strip() for p in text.split(",") if p.strip()]


def _finish(result: Dict[str, Any], quiet_keys: tuple = ()) -> None:
    """Print the result and exit with the workbench exit code"""
    if not result.get("success"):
        click.echo(f"Error: {result.get('error', 'Unknown error')}", err=True)
        sys.exit(EXIT_INPUT if result.get("error_kind") == "input" else EXIT_FAILED)
    shown = {k: v for k, v in result.items() if k not in quiet_keys}
    click.echo(json.dumps(to_plain(shown), indent=2))
    if result.get("passed") is False:
        logger.error("Operation completed with failing checks")
        sys.exit(EXIT_FAILED)


@click.group()
@click.option("--config", help="Path to configuration file")
@click.pass_context
def main(ctx: click.Context, config: Optional[str] = None):
    """Spectral invariants workbench"""
    ctx.obj = WorkbenchExecutor(config)


@main.group("complex")
def complex_group():
    """Finite complexes with chirality"""


@complex_group.command("validate")
@click.argument("path", type=click.Path())
@click.pass_obj
def complex_validate(executor: WorkbenchExecutor, path: str):
    """Acyclicity, bijectivity of the odd signature operator and structural residuals"""
    _finish(executor.execute("validate", path=path))


@complex_group.command("torsion")
@click.argument("path", type=click.Path())
@click.option("--theta", type=float, help="Agmon angle for B^ev")
@click.option("--eta-tr", type=float, help="Eta invariant of the trivial connection")
@click.option("--rank", type=int, help="Rank of the representation")
@click.option("--level", type=float, default=0.0, show_default=True, help="Spectral cut level")
@click.option("--l-integral", type=float, default=0.0, show_default=True, help="L-polynomial integral")
@click.pass_obj
def complex_torsion(executor: WorkbenchExecutor, path: str, theta: Optional[float], eta_tr: Optional[float],
                    rank: Optional[int], level: float, l_integral: float):
    """Refined torsion, graded determinant and Cappell-Miller torsion"""
    kwargs = {"path": path, "theta": theta, "level": level, "L_integral": l_integral}
    if eta_tr is not None:
        kwargs["eta_tr"] = eta_tr
    if rank is not None:
        kwargs["rank"] = rank
    _finish(executor.execute("torsion", **kwargs))


@complex_group.command("identities")
@click.argument("path", type=click.Path())
@click.option("--theta", type=float, help="Agmon angle for B^ev")
@click.option("--eta-tr", type=float, help="Eta invariant of the trivial connection")
@click.option("--rank", type=int, help="Rank of the representation")
@click.pass_obj
def complex_identities(executor: WorkbenchExecutor, path: str, theta: Optional[float],
                       eta_tr: Optional[float], rank: Optional[int]):
    """Comparison identities and the chain from R(0) to the refined torsions"""
    kwargs = {"path": path, "theta": theta}
    if eta_tr is not None:
        kwargs["eta_tr"] = eta_tr
    if rank is not None:
        kwargs["rank"] = rank
    _finish(executor.execute("identities", **kwargs))


@main.group("zeta")
def zeta_group():
    """Truncated Selberg and Ruelle Euler products"""


@zeta_group.command("eval")
@click.argument("path", type=click.Path())
@click.option("--s", "points", multiple=True, required=True, help="Evaluation point RE,IM (repeatable)")
@click.option("--trunc", help="n,k[,lmax[,tol]]")
@click.option("--mode", type=click.Choice(["sym", "closed"]), default="sym", show_default=True)
@click.option("--function", type=click.Choice(["ruelle", "selberg"]), default="ruelle", show_default=True)
@click.option("--csv", "csv_path", help="Write the evaluation grid to this CSV file")
@click.pass_obj
def zeta_eval(executor: WorkbenchExecutor, path: str, points: tuple, trunc: Optional[str], mode: str,
              function: str, csv_path: Optional[str]):
    """log R(s) (or log Z(s)) with its tail bound"""
    values = [parse_point(p) for p in points]
    _finish(executor.execute("zeta-eval", path=path, points=values, trunc=trunc, mode=mode,
                             function=function, csv=csv_path))


@zeta_group.command("factorize")
@click.argument("path", type=click.Path())
@click.option("--s", "point", required=True, help="Evaluation point RE,IM")
@click.option("--trunc", help="n,k[,lmax[,tol]]")
@click.pass_obj
def zeta_factorize(executor: WorkbenchExecutor, path: str, point: str, trunc: Optional[str]):
    """Residual of the Ruelle/Selberg factorization"""
    _finish(executor.execute("zeta-factorize", path=path, s=parse_point(point), trunc=trunc))


@main.group("model")
def model_group():
    """Model-level determinant formula"""


@model_group.command("ruelle-zero")
@click.argument("path", type=click.Path())
@click.pass_obj
def model_ruelle_zero(executor: WorkbenchExecutor, path: str):
    """R(0) from model Laplacian spectra, or the singularity order when a kernel is present"""
    _finish(executor.execute("ruelle-zero", path=path))


@model_group.command("det-formula")
@click.argument("path", type=click.Path())
@click.option("--s", "point", required=True, help="Evaluation point RE,IM")
@click.option("--convention", type=click.Choice(["degree", "literal"]), default="degree", show_default=True)
@click.option("--volume", type=float, help="Volume of the manifold")
@click.pass_obj
def model_det_formula(executor: WorkbenchExecutor, path: str, point: str, convention: str,
                      volume: Optional[float]):
    """Product of shifted Laplacian determinants with the exponential volume factor"""
    _finish(executor.execute("det-formula", path=path, s=parse_point(point), convention=convention,
                             volume=volume))


@main.group("fixtures")
def fixtures_group():
    """Seeded fixtures"""


@fixtures_group.command("gen")
@click.option("--kind", required=True,
              type=click.Choice(["random-acyclic-complex", "hermitian-model-complex", "toy-d1",
                                 "synthetic-spectrum"]))
@click.option("--seed", type=int, help="Seed (defaults to the first configured seed)")
@click.option("-o", "--output", required=True, type=click.Path(), help="Output JSON file")
@click.option("--d", "d", type=int, default=3, show_default=True)
@click.option("--dims", help="Comma separated palindromic dimensions")
@click.option("--betti", help="Comma separated palindromic betti numbers")
@click.option("--classes", type=int, default=5, show_default=True)
@click.option("--epsilon", type=float, default=0.0, show_default=True)
@click.option("--l-max", type=float, help="Longest class length")
@click.pass_obj
def fixtures_gen(executor: WorkbenchExecutor, kind: str, seed: Optional[int], output: str, d: int,
                 dims: Optional[str], betti: Optional[str], classes: int, epsilon: float, l_max: Optional[float]):
    """Write a fixture document"""
    if seed is None:
        seed = executor.settings.suite.seeds[0] if executor.settings.suite.seeds else 0
    _finish(
        executor.execute("fixtures-gen", kind=kind, seed=seed, output=output, d=d, dims=parse_ints(dims),
                         betti=parse_ints(betti), classes=classes, epsilon=epsilon,
                         l_max=l_max if l_max is not None else executor.settings.fixtures.l_max),
        quiet_keys=("document",),
    )


@main.group("suite")
def suite_group():
    """Verification suites"""


@suite_group.command("run")
@click.option("--names", help=f"Comma separated suite names; known: {', '.join(suite_names())}")
@click.option("--seeds", help="Comma separated seeds")
@click.option("--csv", "csv_path", help="Write the report to this CSV file")
@click.option("--timings", is_flag=True, help="Include wall-clock runtimes")
@click.pass_obj
def suite_run(executor: WorkbenchExecutor, names: Optional[str], seeds: Optional[str],
              csv_path: Optional[str], timings: bool):
    """Run the verification suites and emit the report as CSV"""
    kwargs = {"names": parse_names(names), "seeds": parse_ints(seeds), "csv": csv_path}
    if timings:
        kwargs["timings"] = True
    result = executor.execute("suite", **kwargs)
    if result.get("success") and not csv_path:
        click.echo(result["csv"], nl=False)
        if not result["passed"]:
            sys.exit(EXIT_FAILED)
        return
    _finish(result, quiet_keys=("csv",))


if __name__ == "__main__":
    main()
