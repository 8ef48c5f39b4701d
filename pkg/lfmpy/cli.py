"""
Copyright © 2024 lfmpy contributors.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing,
software distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
KIND, either express or implied.  See the License for the
specific language governing permissions and limitations
under the License.

Command line front end::

    lfmpy classify --input map.json
    lfmpy embed --input map.json --t 0.5
    lfmpy orbit --input map.json --z0 0,0,0,0 --t-grid 0:50:0.5 --output orbit.csv
    lfmpy verify --input map.json
    lfmpy reproduce-paper --format text

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a mathematical
error (singular or degenerate map, no convergence).
"""
import argparse
import io
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, NamedTuple, Optional

import inflection
import numpy as np
import pandas as pd

from lfmpy import domains
from lfmpy._version import __version__
from lfmpy.entitybase import array_to_pairs
from lfmpy.enums import Command, ExitCode, OutputFormat
from lfmpy.lfm import (
    fixed_points,
    load_map,
    projective_distance,
    self_map_check,
)
from lfmpy.lfmexceptions import LfmError, LfmPreconditionError, LfmValueError
from lfmpy.matalg import jordan_form
from lfmpy.model import (
    EXAMPLE1_MATRIX,
    EXAMPLE2_TRANSLATION,
    classify,
    example1_map,
    example1_matrix_t,
    example2_closed_form,
    example2_map,
    example2_model_t,
    heisenberg,
)
from lfmpy.semigroup import orbit, orbit_frame, phi_t, semigroup_power_check, verify_semigroup, write_orbit_csv
from lfmpy.tolerances import Tolerances
from lfmpy.utils import parse_t_grid, parse_z0

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())

VERIFY_GRID = [0.0, 0.25, 0.5, 1.0, 2.0]
EXAMPLE1_TS = [0.0, 0.5, 1.0, 2.0, 3.7, 10.0]
EXAMPLE2_TS = [0.0, 0.5, 1.0, 2.0]
EXAMPLE2_EXIT_TS = [0.1, 0.5, 1.5, 3.0]
DUAL_PATHWAY_SAMPLES = 1000
# Example 2 model matrix with the (2, 3) entry b2 = +1/4
EXAMPLE2_MODEL_MATRIX = ((1, 0.5, 0.5), (0, 1, 0.25), (0, 0, 1))


class RunConfig(NamedTuple):
    """Parsed command line.

    t_grid holds the parsed grid; a single --t becomes a one point grid.
    """

    command: Command
    input_path: Optional[Path]
    t: Optional[float]
    t_grid: Optional[List[float]]
    z0: Optional[str]
    samples: int
    seed: int
    tol: float
    format: OutputFormat
    output_path: Optional[Path]
    verbose: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        defaults = Tolerances.from_config()
        samples = defaults.samples if args.samples is None else args.samples
        if samples <= 0:
            raise LfmPreconditionError(f"--samples must be positive, got {samples}")
        tol = defaults.check if args.tol is None else args.tol
        if tol <= 0:
            raise LfmPreconditionError(f"--tol must be positive, got {tol}")
        command = Command(args.command)
        fmt = args.format or (OutputFormat.csv if command == Command.orbit else OutputFormat.json)
        return cls(
            command=command,
            input_path=Path(args.input) if args.input else None,
            t=args.t,
            t_grid=parse_t_grid(args.t_grid) if args.t_grid is not None else None,
            z0=args.z0,
            samples=samples,
            seed=defaults.seed if args.seed is None else args.seed,
            tol=tol,
            format=OutputFormat(fmt),
            output_path=Path(args.output) if args.output else None,
            verbose=args.verbose,
        )

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances.from_config().replace(check=self.tol, samples=self.samples, seed=self.seed)

    @property
    def grid(self) -> Optional[List[float]]:
        if self.t_grid is not None:
            return self.t_grid
        return None if self.t is None else [self.t]


class Check(NamedTuple):
    name: str
    max_residual: Optional[float]
    passed: Optional[bool]
    error: Optional[str] = None

    def to_dict(self) -> dict:
        result = {"name": self.name, "max_residual": self.max_residual, "pass": self.passed}
        if self.error is not None:
            result["error"] = self.error
        return result


def run_check(name: str, compute: Callable[[], float], threshold: float) -> Check:
    """Runs one residual computation; mathematical errors are recorded, not raised"""
    try:
        residual = float(compute())
    except LfmError as e:
        _logger.warning(f"Check {name} could not run: {e}")
        return Check(name, None, None, f"{type(e).__name__}: {e}")
    return Check(name, residual, bool(residual <= threshold))


def run_count_check(name: str, compute: Callable[[], int]) -> Check:
    """A check that passes when the computed count is zero"""
    return run_check(name, compute, 0)


def report_exit(checks: List[Check]) -> ExitCode:
    if any(c.passed is False for c in checks):
        return ExitCode.CHECK_FAILED
    if any(c.error is not None for c in checks):
        return ExitCode.MATH_ERROR
    return ExitCode.OK


def _checks_frame(checks: List[Check]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "check": c.name,
                "max residual": "-" if c.max_residual is None else f"{c.max_residual:.3e}",
                "result": "ERROR" if c.passed is None else ("PASS" if c.passed else "FAIL"),
            }
            for c in checks
        ]
    )


def _emit(config: RunConfig, text: str):
    if config.output_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(config.output_path, "w") as f:
            f.write(text)
        _logger.info(f"Wrote {config.output_path}")


def _emit_checks(config: RunConfig, checks: List[Check]) -> ExitCode:
    code = report_exit(checks)
    if config.format == OutputFormat.json:
        _emit(config, json.dumps({"checks": [c.to_dict() for c in checks], "exit": int(code)}, indent=2))
    else:
        frame = _checks_frame(checks)
        if config.format == OutputFormat.csv:
            _emit(config, frame.to_csv(index=False))
        else:
            _emit(config, frame.to_string(index=False) + f"\nexit {int(code)}\n")
    return code


def _matrix_text(name: str, m) -> str:
    frame = pd.DataFrame([[f"{c.real:.6g}{c.imag:+.6g}i" for c in row] for row in np.asarray(m)])
    return f"{name}:\n{frame.to_string(index=False, header=False)}"


def _require_input(config: RunConfig):
    if config.input_path is None:
        raise LfmPreconditionError(f"{config.command} needs --input")
    return load_map(config.input_path)


def cmd_classify(config: RunConfig) -> ExitCode:
    """Prints the Denjoy-Wolff point, multiplicity, domain, eigenvalues and the model matrices"""
    phi = _require_input(config)
    result = classify(phi)
    if config.format == OutputFormat.json:
        _emit(config, json.dumps(result.to_dict(), indent=2))
        return ExitCode.OK

    table = pd.DataFrame(
        [
            {"eigenvalue": f"{b.eigenvalue:.6g}", "block size": b.size}
            for b in result.decomposition.blocks
        ]
    )
    if config.format == OutputFormat.csv:
        _emit(config, table.to_csv(index=False))
        return ExitCode.OK
    lines = [
        result.summary,
        f"domain: {result.domain.label}",
        table.to_string(index=False),
        _matrix_text("sigma", result.sigma.matrix.m),
        _matrix_text("Phi", result.Phi.matrix.m),
    ]
    _emit(config, "\n".join(lines) + "\n")
    return ExitCode.OK


def cmd_embed(config: RunConfig) -> ExitCode:
    """Writes phi_t in the map JSON format with its canonical associated matrix"""
    if config.t is None:
        raise LfmPreconditionError("embed needs --t")
    phi = _require_input(config)
    element = phi_t(jordan_form(phi.matrix.m), config.t)
    if config.format == OutputFormat.text:
        _emit(config, _matrix_text(f"phi_{config.t:g}", element.map.matrix.canonical) + "\n")
        return ExitCode.OK
    payload = {
        "t": element.t,
        "map": element.map.to_dict(),
        "matrix": array_to_pairs(element.map.matrix.canonical),
        "flags": sorted(element.flags),
        "power_rule": element.rule.variant.value,
    }
    _emit(config, json.dumps(payload, indent=2))
    return ExitCode.OK


def cmd_orbit(config: RunConfig) -> ExitCode:
    """Writes the orbit t -> phi_t(z0) over the t grid as CSV"""
    grid = config.grid
    if grid is None:
        raise LfmPreconditionError("orbit needs --t-grid or --t")
    z0 = parse_z0(config.z0)
    phi = _require_input(config)
    points = orbit(jordan_form(phi.matrix.m), z0, grid)
    if config.format == OutputFormat.json:
        _emit(config, orbit_frame(points).to_json(orient="records", double_precision=15))
    elif config.format == OutputFormat.text:
        _emit(config, orbit_frame(points).to_string(index=False))
    else:
        buffer = io.StringIO()
        write_orbit_csv(points, buffer)
        _emit(config, buffer.getvalue())
    return ExitCode.OK


def cmd_verify(config: RunConfig) -> ExitCode:
    """Self-map, fixed point, Jordan and semigroup checks of one map"""
    phi = _require_input(config)
    tol = Tolerances.current
    checks = [run_count_check("self_map", lambda: self_map_check(phi).violations)]

    try:
        decomp = jordan_form(phi.matrix.m)
    except LfmError as e:
        checks.append(Check("jordan_reconstruction", None, None, f"{type(e).__name__}: {e}"))
        return _emit_checks(config, checks)

    checks.append(run_check("jordan_reconstruction", lambda: decomp.residual, tol.check))
    checks.append(
        run_check(
            "fixed_point_residual",
            lambda: max(p.residual(phi) for p in fixed_points(phi, decomp)),
            tol.check,
        )
    )
    checks.append(
        run_check(
            "anchors",
            lambda: max(
                projective_distance(phi_t(decomp, 0).matrix.m, np.eye(3)),
                projective_distance(phi_t(decomp, 1).matrix.m, phi.matrix.m),
            ),
            tol.check,
        )
    )
    report = None

    def semigroup():
        nonlocal report
        if report is None:
            report = verify_semigroup(decomp, VERIFY_GRID, VERIFY_GRID)
        return report

    checks.append(run_check("semigroup_matrix", lambda: semigroup().matrix_residual, tol.check))
    checks.append(run_check("semigroup_pointwise", lambda: semigroup().pointwise_residual, tol.check))
    checks.append(run_count_check("ball_preservation", lambda: semigroup().ball_exits))
    checks.append(run_check("integer_powers", lambda: semigroup_power_check(decomp, 10), tol.check))
    return _emit_checks(config, checks)


def _example1_checks(tol: Tolerances) -> List[Check]:
    phi = example1_map()
    decomp = jordan_form(EXAMPLE1_MATRIX)

    def classification():
        result = classify(phi)
        if result.multiplicity != 3 or result.standardized_lambda is None:
            return np.inf
        return max(
            float(np.linalg.norm(result.dw_point.location - np.array([1, 0]))),
            abs(result.standardized_lambda - 0.5),
        )

    return [
        run_check(
            "example1_matrix_t",
            lambda: max(
                projective_distance(phi_t(decomp, t).matrix.m, example1_matrix_t(t)) for t in EXAMPLE1_TS
            ),
            tol.check,
        ),
        run_check(
            "example1_anchors",
            lambda: max(
                projective_distance(phi_t(decomp, 0).matrix.m, np.eye(3)),
                projective_distance(phi_t(decomp, 1).matrix.m, EXAMPLE1_MATRIX),
            ),
            tol.check,
        ),
        run_check(
            "example1_semigroup",
            lambda: verify_semigroup(decomp, VERIFY_GRID, VERIFY_GRID, z_samples=100).matrix_residual,
            tol.check,
        ),
        run_count_check("example1_self_map", lambda: self_map_check(phi).violations),
        run_check("example1_classification", classification, tol.dw_match),
    ]


def _example2_checks(tol: Tolerances) -> List[Check]:
    model = example2_map()
    zs = domains.sample_ball(DUAL_PATHWAY_SAMPLES, tol.seed)
    Phi = heisenberg(EXAMPLE2_TRANSLATION)
    decomp = jordan_form(Phi.matrix.m)

    def dual_pathway():
        return max(
            float(np.max(np.abs(model.at(t)(zs) - example2_closed_form(t, zs)))) for t in EXAMPLE2_TS
        )

    def anchors():
        identity = float(np.max(np.abs(model.at(0)(zs) - zs)))
        one = float(np.max(np.abs(model.at(1)(zs) - model(zs))))
        return max(identity, one)

    def unexplained_exits():
        count = 0
        for t in EXAMPLE2_EXIT_TS:
            stepped = model.at(t)
            exits = stepped.exit_mask(zs)
            margin = stepped.ball_margin(zs)
            count += int(np.sum(exits & (margin >= 0))) + int(np.sum((margin < -1e-6) & ~exits))
        return count

    return [
        run_check("example2_model_matrix", lambda: projective_distance(Phi.matrix.m, EXAMPLE2_MODEL_MATRIX), tol.check),
        run_check(
            "example2_model_t",
            lambda: max(
                projective_distance(phi_t(decomp, t).matrix.m, example2_model_t(t).matrix.m) for t in range(5)
            ),
            tol.check,
        ),
        run_check("example2_dual_pathway", dual_pathway, tol.check),
        run_check("example2_anchors", anchors, tol.check),
        run_count_check("example2_exits_explained", unexplained_exits),
    ]


def cmd_reproduce_paper(config: RunConfig) -> ExitCode:
    """Runs both worked examples end to end and reports PASS/FAIL per check"""
    tol = Tolerances.current
    checks = _example1_checks(tol) + _example2_checks(tol)
    return _emit_checks(config, checks)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfmpy",
        description="Linear fractional self-maps of the ball in C^2 and their one-parameter semigroups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--input", help="map JSON file")
    grid = parser.add_mutually_exclusive_group()
    grid.add_argument("--t", type=float, help="semigroup parameter")
    grid.add_argument("--t-grid", help="grid start:stop:step")
    parser.add_argument("--z0", help="orbit start re1,im1,re2,im2")
    parser.add_argument("--samples", type=int, help="sample count for sampling checks")
    parser.add_argument("--seed", type=int, help="random seed for sampling checks")
    parser.add_argument("--tol", type=float, help="pass/fail threshold for residual checks")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--output", help="write to this file instead of stdout")
    parser.add_argument("--verbose", action="store_true", help="log to stderr")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(stream=sys.stderr, level=logging.DEBUG)
    try:
        config = RunConfig.from_args(args)
        handler = globals()[f"cmd_{inflection.underscore(config.command.value)}"]
        _logger.info(f"Running {config.command}")
        with config.tolerances:
            code = handler(config)
    except (LfmValueError, OSError, json.JSONDecodeError) as e:
        print(f"lfmpy: input error: {e}", file=sys.stderr)
        return int(ExitCode.INPUT_ERROR)
    except LfmError as e:
        print(f"lfmpy: {type(e).__name__}: {e}", file=sys.stderr)
        return int(ExitCode.MATH_ERROR)
    _logger.info(f"{config.command} finished with exit code {int(code)}")
    return int(code)


if __name__ == "__main__":
    sys.exit(main())
