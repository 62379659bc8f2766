from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .Errors import ConfigError
from .System import BoundaryCondition, Clamped, Natural

BOUNDARIES = ("clamped", "natural")  #: Accepted values of ``--boundary``.


@dataclass(frozen=True)
class RunConfig:
    """The validated parameters of one ``interp`` run.

    Raises:
        ConfigError: If a field is out of range or the end derivatives do
            not match the boundary kind. The message names the flags
            involved.
    """

    xi: float  #: The tension ξ ≥ 0.
    boundary: str  #: Either ``clamped`` or ``natural``.
    input_path: Path  #: The knot/value CSV to read.
    output_path: Path  #: Where the sampled spline CSV is written.
    left_deriv: Optional[float] = None  #: g'(t_1), clamped only.
    right_deriv: Optional[float] = None  #: g'(t_n), clamped only.
    svg_path: Optional[Path] = None  #: Optional SVG plot of the samples.
    samples: int = 500  #: Number of equally spaced sample points.

    def __post_init__(self):
        if not (np.isfinite(self.xi) and self.xi >= 0):
            raise ConfigError(
                f"--xi must be a finite nonnegative number, got {self.xi}"
            )
        if self.boundary not in BOUNDARIES:
            raise ConfigError(
                f"--boundary must be one of {', '.join(BOUNDARIES)}, "
                f"got {self.boundary!r}"
            )
        given = [
            flag
            for flag, value in (
                ("--left-deriv", self.left_deriv),
                ("--right-deriv", self.right_deriv),
            )
            if value is not None
        ]
        if self.boundary == "natural" and given:
            raise ConfigError(
                f"--boundary natural conflicts with {' and '.join(given)}"
            )
        if self.boundary == "clamped" and len(given) < 2:
            raise ConfigError(
                "--boundary clamped needs both --left-deriv and --right-deriv"
            )
        for flag, value in (
            ("--left-deriv", self.left_deriv),
            ("--right-deriv", self.right_deriv),
        ):
            if value is not None and not np.isfinite(value):
                raise ConfigError(f"{flag} must be finite, got {value}")
        if self.samples < 2:
            raise ConfigError(f"--samples must be at least 2, got {self.samples}")
        object.__setattr__(self, "input_path", Path(self.input_path))
        object.__setattr__(self, "output_path", Path(self.output_path))
        if self.svg_path is not None:
            object.__setattr__(self, "svg_path", Path(self.svg_path))

    @classmethod
    def from_args(cls, args, defaults: dict = None):
        """Builds a RunConfig from parsed ``interp`` arguments.

        Args:
            args: The argparse namespace.
            defaults: The ``interp`` section of the configuration file,
                used for flags left unset.
        """
        defaults = defaults or {}
        samples = args.samples
        if samples is None:
            samples = defaults.get("samples", 500)
        return cls(
            xi=args.xi,
            boundary=args.boundary,
            input_path=args.input,
            output_path=args.output,
            left_deriv=args.left_deriv,
            right_deriv=args.right_deriv,
            svg_path=args.svg,
            samples=int(samples),
        )

    def boundary_condition(self) -> BoundaryCondition:
        """The boundary condition to fit with."""
        if self.boundary == "clamped":
            return Clamped(self.left_deriv, self.right_deriv)
        return Natural()
