from pathlib import Path

import numpy as np
import pandas as pd
import structlog

from .Spline import LSpline, SampleTable, fit_clamped, linear_interpolant
from .Visualizer import Visualizer

logger = structlog.getLogger(__name__)

#: Knots of the demo figure.
DEMO_KNOTS = (0.0, 0.1667, 0.3333, 0.5, 0.6667, 0.8333, 1.0)


class Experiments:
    """The demo experiment: interpolating sin(25t) on seven knots.

    A clamped L-spline with ξ = 5 and g'(t_1) = g'(t_7) = 25 is fitted to
    z_j = sin(25 t_j) and compared with the piecewise linear interpolant of
    the same data. The end derivatives are taken as stated even though
    f'(1) = 25 cos 25.
    """

    def __init__(
        self,
        xi=5.0,
        knots=DEMO_KNOTS,
        left_deriv=25.0,
        right_deriv=25.0,
        frequency=25.0,
        samples=500,
        draw_figure=False,
    ):
        """Constructs an Experiments object.

        Args:
            xi: The tension ξ.
            knots: The knots t_1 < ... < t_n.
            left_deriv: The clamped derivative at the first knot.
            right_deriv: The clamped derivative at the last knot.
            frequency: The ω of the sampled function sin(ωt).
            samples: The number of equally spaced sample points.
            draw_figure: A flag for also rendering a PNG through matplotlib.
        """
        self.xi = float(xi)  #: The tension ξ.
        self.knots = np.asarray(knots, dtype=float)  #: The knots.
        self.left_deriv = float(left_deriv)  #: g'(t_1).
        self.right_deriv = float(right_deriv)  #: g'(t_n).
        self.frequency = float(frequency)  #: The ω of sin(ωt).
        self.samples = int(samples)  #: Number of sample points.
        self.draw_figure = bool(draw_figure)  #: A flag for rendering the PNG.

    @classmethod
    def from_config(cls, config: dict):
        """Builds the experiment from the ``demo`` section of config.yml."""
        return cls(**config)

    @property
    def values(self) -> np.ndarray:
        """The data z_j = sin(ω t_j)."""
        return np.sin(self.frequency * self.knots)

    def fit(self) -> LSpline:
        """Fits the clamped L-spline of the demo."""
        return fit_clamped(
            self.knots, self.values, self.xi, self.left_deriv, self.right_deriv
        )

    def report(self, spline: LSpline) -> dict:
        """Measures how well the fitted spline meets its defining conditions.

        Returns:
            dict: The maximal interpolation residual at the knots, the end
            derivative residual, and the largest first and second derivative
            jumps at the interior knots.
        """
        ends = spline.eval_deriv(self.knots[[0, -1]], 1)
        return {
            "interpolation": float(np.max(np.abs(spline(self.knots) - self.values))),
            "end_derivative": float(
                np.max(np.abs(ends - [self.left_deriv, self.right_deriv]))
            ),
            "jump_d1": float(np.max(np.abs(spline.knot_jumps(1)), initial=0.0)),
            "jump_d2": float(np.max(np.abs(spline.knot_jumps(2)), initial=0.0)),
        }

    def run(self, output_dir, visualizer: Visualizer) -> dict:
        """Fits the demo spline and writes every artefact to output_dir.

        Files written: ``data.csv`` (t, z), ``lspline.csv`` (t, value, d1,
        d2), ``linear.csv`` (t, value of the linear interpolant at the same
        abscissae), ``figure.svg`` and, if enabled, ``figure.png``.

        Returns:
            dict: The written paths by name.
        """
        output_dir = Path(output_dir)
        spline = self.fit()
        table: SampleTable = spline.sample(self.samples)
        linear = (table.t, linear_interpolant(spline.grid, self.values, table.t))
        logger.info(
            "fitted demo spline", xi=self.xi, n=self.knots.size, **self.report(spline)
        )

        paths = {
            "data": visualizer.to_csv(
                pd.DataFrame({"t": self.knots, "z": self.values}),
                output_dir / "data.csv",
            ),
            "lspline": visualizer.write_samples(table, output_dir / "lspline.csv"),
            "linear": visualizer.to_csv(
                pd.DataFrame({"t": linear[0], "value": linear[1]}),
                output_dir / "linear.csv",
            ),
            "svg": visualizer.write_svg(
                output_dir / "figure.svg", table, self.knots, self.values, linear
            ),
        }
        if self.draw_figure:
            paths["png"] = visualizer.draw_figure(
                output_dir / "figure.png", table, self.knots, self.values, linear
            )
        return paths
