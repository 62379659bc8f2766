import xml.etree.ElementTree as ET
from dataclasses import astuple, dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import structlog  # noqa: E402

from .Errors import IoError  # noqa: E402
from .Spline import SampleTable  # noqa: E402

FLOAT_FORMAT = "%.17g"  #: Enough significant digits to round-trip a double.
SVG_NAMESPACE = "http://www.w3.org/2000/svg"

logger = structlog.getLogger(__name__)


@dataclass
class Color:
    """A color container object.

    Default color is black.
    """

    r: float = 0  #: Normalized red channel value.
    g: float = 0  #: Normalized green channel value.
    b: float = 0  #: Normalized blue channel value.
    a: float = 1  #: Normalized alpha value (influences the transparency).

    def to_svg(self) -> str:
        """The color as an SVG ``rgb(...)`` paint, alpha excluded."""
        channels = (round(255 * c) for c in (self.r, self.g, self.b))
        return "rgb({},{},{})".format(*channels)


SPLINE_COLOR = Color(0.12, 0.35, 0.75)  #: The fitted L-spline.
LINEAR_COLOR = Color(0.55, 0.55, 0.55)  #: The piecewise linear comparison curve.
KNOT_COLOR = Color(0.8, 0.1, 0.1)  #: The data points.


@dataclass
class Viewport:
    """Linear mapping of data coordinates onto an SVG canvas.

    The y axis points down in SVG, so larger values land higher on the page.
    """

    x_min: float  #: Data abscissa mapped to the left margin.
    x_max: float  #: Data abscissa mapped to the right margin.
    y_min: float  #: Data ordinate mapped to the bottom margin.
    y_max: float  #: Data ordinate mapped to the top margin.
    width: int = 800  #: Canvas width in pixels.
    height: int = 500  #: Canvas height in pixels.
    margin: float = 0.05  #: Margin as a fraction of the canvas size.

    @classmethod
    def enclosing(cls, xs, ys, **kwargs):
        """The viewport whose data box is the bounding box of xs and ys."""
        xs = np.concatenate([np.ravel(x) for x in xs])
        ys = np.concatenate([np.ravel(y) for y in ys])
        bounds = []
        for values in (xs, ys):
            low, high = float(np.min(values)), float(np.max(values))
            if high == low:
                low, high = low - 0.5, high + 0.5
            bounds += [low, high]
        return cls(*bounds, **kwargs)

    def project(self, x, y):
        """Maps data coordinates to pixel coordinates."""
        mx, my = self.margin * self.width, self.margin * self.height
        px = mx + (np.asarray(x) - self.x_min) / (self.x_max - self.x_min) * (
            self.width - 2 * mx
        )
        py = (self.height - my) - (np.asarray(y) - self.y_min) / (
            self.y_max - self.y_min
        ) * (self.height - 2 * my)
        return px, py


def _prepare(filepath) -> Path:
    path = Path(filepath)
    try:
        path.parent.mkdir(0o755, parents=True, exist_ok=True)
    except OSError as error:
        raise IoError(f"cannot create {path.parent}: {error.strerror}") from error
    return path


def _points(px, py) -> str:
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(px, py))


class Visualizer:
    """Writes sampled splines as CSV tables, SVG plots and PNG figures.

    Directories referenced by a file path are created similar to mkdir -p.
    """

    def to_csv(self, frame: pd.DataFrame, filepath) -> Path:
        """Writes a DataFrame as CSV with round-trip float precision.

        Args:
            frame (pandas.DataFrame): The table to write.
            filepath: The location for writing the csv file.

        Raises:
            IoError: If the file cannot be written.
        """
        path = _prepare(filepath)
        try:
            frame.to_csv(
                path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
            )
        except OSError as error:
            raise IoError(f"cannot write {path}: {error.strerror}") from error
        logger.debug("wrote csv", path=str(path), rows=len(frame))
        return path

    def write_samples(self, table: SampleTable, filepath) -> Path:
        """Writes a SampleTable with columns t, value, d1, d2."""
        return self.to_csv(table.to_frame(), filepath)

    def read_samples(self, filepath) -> SampleTable:
        """Reads back a table written by write_samples.

        Raises:
            IoError: If the file cannot be read.
        """
        try:
            frame = pd.read_csv(filepath, float_precision="round_trip")
        except OSError as error:
            raise IoError(f"cannot read {filepath}: {error.strerror}") from error
        return SampleTable.from_frame(frame)

    def write_svg(self, filepath, table: SampleTable, knots, values, linear=None):
        """Draws the sampled spline over its data points as a standalone SVG.

        The canvas is 800×500 pixels with 5% margins; both axes are mapped
        linearly onto the bounding box of everything drawn.

        Args:
            filepath: The location for writing the SVG file.
            table (SampleTable): The sampled spline, drawn as a polyline.
            knots: The knot abscissae, drawn as circles.
            values: The data values at the knots.
            linear: An optional ``(t, y)`` pair drawn as a dashed comparison
                polyline underneath the spline.

        Raises:
            IoError: If the file cannot be written.
        """
        path = _prepare(filepath)
        curves = [(table.t, table.value)] + ([linear] if linear is not None else [])
        view = Viewport.enclosing(
            [c[0] for c in curves] + [knots], [c[1] for c in curves] + [values]
        )

        svg = ET.Element(
            "svg",
            xmlns=SVG_NAMESPACE,
            width=str(view.width),
            height=str(view.height),
            viewBox=f"0 0 {view.width} {view.height}",
        )
        ET.SubElement(
            svg, "rect", x="0", y="0", width="100%", height="100%", fill="white"
        )
        lines = ET.SubElement(svg, "g", fill="none", attrib={"stroke-width": "1.5"})
        if linear is not None:
            ET.SubElement(
                lines,
                "polyline",
                points=_points(*view.project(*linear)),
                stroke=LINEAR_COLOR.to_svg(),
                attrib={"stroke-dasharray": "6 4"},
            )
        ET.SubElement(
            lines,
            "polyline",
            points=_points(*view.project(table.t, table.value)),
            stroke=SPLINE_COLOR.to_svg(),
        )
        markers = ET.SubElement(svg, "g", fill=KNOT_COLOR.to_svg())
        for x, y in zip(*view.project(knots, values)):
            ET.SubElement(markers, "circle", cx=f"{x:.2f}", cy=f"{y:.2f}", r="4")

        try:
            ET.ElementTree(svg).write(path, encoding="utf-8", xml_declaration=True)
        except OSError as error:
            raise IoError(f"cannot write {path}: {error.strerror}") from error
        logger.debug("wrote svg", path=str(path), points=len(table))
        return path

    def draw_figure(self, filepath, table: SampleTable, knots, values, linear=None):
        """Renders the same picture as write_svg to a PNG through matplotlib.

        Args:
            filepath: Location for writing the resulting figure.
            table (SampleTable): The sampled spline.
            knots: The knot abscissae.
            values: The data values at the knots.
            linear: An optional ``(t, y)`` comparison curve.
        """
        path = _prepare(filepath)
        fig, ax = plt.subplots(1)
        if linear is not None:
            ax.plot(
                *linear, lw=1, ls="--", color=astuple(LINEAR_COLOR), label="linear"
            )
        ax.plot(
            table.t, table.value, lw=2, color=astuple(SPLINE_COLOR), label="L-spline"
        )
        ax.scatter(knots, values, color=astuple(KNOT_COLOR), zorder=3, label="data")
        ax.legend(loc="upper right")
        ax.set_xlabel("t")
        ax.set_ylabel("g(t)")
        try:
            fig.savefig(path, dpi=200)
        except OSError as error:
            raise IoError(f"cannot write {path}: {error.strerror}") from error
        finally:
            plt.close(fig)
        logger.debug("wrote figure", path=str(path))
        return path
