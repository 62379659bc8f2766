import argparse
import copy
from pathlib import Path

import structlog
import yaml

from .Dataset import Dataset
from .Errors import ConfigError, IoError, LSplineError
from .Experiments import DEMO_KNOTS, Experiments
from .Logging import configure_library
from .Logging import init as init_logging
from .RunConfig import BOUNDARIES, RunConfig
from .Spline import fit
from .Visualizer import Visualizer

CONFIG_PATH = "config.yml"  #: Looked up in the working directory by default.
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")  #: Accepted logging levels.

DEFAULT_CONFIG = {
    "logging": {"level": "INFO"},
    "interp": {"samples": 500},
    "demo": {
        "xi": 5.0,
        "knots": list(DEMO_KNOTS),
        "left_deriv": 25.0,
        "right_deriv": 25.0,
        "frequency": 25.0,
        "samples": 500,
        "draw_figure": False,
    },
}

configure_library()

logger = structlog.getLogger(__name__)


def cmd_interp(cfg: RunConfig, visualizer: Visualizer) -> int:
    """Fits the spline through a CSV file and writes its samples.

    Args:
        cfg: The validated run configuration.
        visualizer: The writer of the CSV and SVG outputs.

    Returns:
        int: The exit status, 0 on success.
    """
    data = Dataset.from_csv(cfg.input_path)
    spline = fit(data.grid, data.values, cfg.xi, cfg.boundary_condition())
    table = spline.sample(cfg.samples)
    visualizer.write_samples(table, cfg.output_path)
    logger.info("wrote samples", path=str(cfg.output_path), rows=len(table))
    if cfg.svg_path is not None:
        visualizer.write_svg(cfg.svg_path, table, data.knots, data.values)
        logger.info("wrote plot", path=str(cfg.svg_path))
    return 0


def cmd_demo(output_dir, config: dict, visualizer: Visualizer) -> int:
    """Reproduces the sin(25t) comparison figure in output_dir.

    Args:
        output_dir: The directory receiving the CSV, SVG and PNG files.
        config: The ``demo`` section of the configuration.
        visualizer: The writer of the outputs.

    Returns:
        int: The exit status, 0 on success.
    """
    try:
        experiment = Experiments.from_config(config)
    except (TypeError, ValueError) as error:
        raise ConfigError(f"invalid demo section: {error}") from error
    paths = experiment.run(output_dir, visualizer)
    for name, path in paths.items():
        logger.info("wrote demo output", name=name, path=str(path))
    return 0


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def get_args(args):
    """Parses the input arguments.

    Raises:
        ConfigError: If the arguments are not understood.
    """
    parser = _ArgumentParser(
        prog="lspline",
        description="Fits clamped or natural L-splines of order four.",
    )
    parser.add_argument(
        "--config",
        default=None,
        help=f"The YAML configuration file. Defaults to ./{CONFIG_PATH}.",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=LOG_LEVELS,
        type=str.upper,
        help="Overrides the logging level of the configuration file.",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    interp = commands.add_parser(
        "interp", help="Interpolates a t,z CSV file and writes the sampled spline."
    )
    interp.add_argument("--input", required=True, type=Path, help="The t,z CSV file.")
    interp.add_argument(
        "--output", required=True, type=Path, help="The sampled spline CSV to write."
    )
    interp.add_argument("--svg", type=Path, help="An optional SVG plot to write.")
    interp.add_argument("--xi", required=True, type=float, help="The tension ξ ≥ 0.")
    interp.add_argument("--boundary", required=True, choices=BOUNDARIES)
    interp.add_argument("--left-deriv", type=float, help="g'(t_1), clamped only.")
    interp.add_argument("--right-deriv", type=float, help="g'(t_n), clamped only.")
    interp.add_argument("--samples", type=int, help="Number of sample points.")

    demo = commands.add_parser("demo", help="Reproduces the sin(25t) figure.")
    demo.add_argument("--out", required=True, type=Path, help="The output directory.")

    return parser.parse_args(args=args)


def load_config(path=None) -> dict:
    """Loads the YAML configuration on top of the built-in defaults.

    A missing file is not an error when no path was given explicitly.

    Raises:
        ConfigError: If the file is not valid YAML or not a mapping of
            sections.
        IoError: If an explicitly given file cannot be read.
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    explicit = path is not None
    path = Path(path if explicit else Path.cwd() / CONFIG_PATH)
    if not explicit and not path.exists():
        logger.debug("no configuration file, using defaults", path=str(path))
        return config
    try:
        with open(path, "r", encoding="utf-8") as stream:
            loaded = yaml.safe_load(stream) or {}
    except OSError as error:
        raise IoError(f"cannot read {path}: {error.strerror}") from error
    except yaml.YAMLError as error:
        raise ConfigError(f"{path} is not valid YAML: {error}") from error
    if not isinstance(loaded, dict):
        raise ConfigError(f"{path} must contain a mapping of sections")
    for section, values in loaded.items():
        if not isinstance(values, dict):
            raise ConfigError(f"section {section!r} of {path} must be a mapping")
        config.setdefault(section, {}).update(values)
    return config


def main(args=None) -> int:
    """Runs the command line and returns its exit status.

    0 on success, 1 for configuration errors, 2 for malformed input, 3 for
    I/O failures and 4 for numerical errors.
    """
    init_logging(__name__)
    command = None
    try:
        parsed = get_args(args)
        command = parsed.command
        config = load_config(parsed.config)
        level = str(parsed.log_level or config["logging"]["level"]).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"unknown logging level {level!r}")
        init_logging(__name__, level=level)
        visualizer = Visualizer()
        if command == "interp":
            return cmd_interp(RunConfig.from_args(parsed, config["interp"]), visualizer)
        return cmd_demo(parsed.out, config["demo"], visualizer)
    except LSplineError as error:
        logger.error(
            "command failed",
            command=command,
            error=str(error),
            exit_code=error.exit_code,
        )
        return error.exit_code
