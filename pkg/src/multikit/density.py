"""Gaussian KDE fields for labeled 2-D point clouds and their Jaccard comparison."""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

import numpy as np

from .errors import AlignmentError, MultikitError
from .mfunction import Field2D, Grid2D
from .similarity import jaccard, jaccard_multi

DEFAULT_CELLS = 256
MARGIN_BANDWIDTHS = 4.0


@dataclass(frozen=True, eq=False)
class LabeledPoints:
    x: np.ndarray
    y: np.ndarray
    labels: tuple[str, ...] = field(repr=False)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1 or len(self.labels) != x.size:
            raise MultikitError("x, y and labels must have equal lengths")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "labels", tuple(self.labels))

    def label_set(self) -> list[str]:
        """Distinct labels in order of first appearance."""
        return list(dict.fromkeys(self.labels))

    def select(self, label: str) -> np.ndarray:
        """``(k, 2)`` array of the points carrying ``label``."""
        mask = np.array([lab == label for lab in self.labels])
        return np.column_stack([self.x[mask], self.y[mask]])


@dataclass(frozen=True, eq=False)
class KdeField:
    field: Field2D
    label: str
    bandwidth: float


def read_points_csv(text: str) -> LabeledPoints:
    reader = csv.reader(io.StringIO(text))
    header = [h.strip() for h in next(reader, [])]
    if header != ["x", "y", "label"]:
        raise MultikitError(f"expected CSV header x,y,label, got {','.join(header)}")
    xs, ys, labels = [], [], []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise MultikitError(f"line {lineno}: expected 3 fields")
        try:
            xs.append(float(row[0]))
            ys.append(float(row[1]))
        except ValueError:
            raise MultikitError(f"line {lineno}: non-numeric coordinate") from None
        labels.append(row[2].strip())
    return LabeledPoints(np.array(xs), np.array(ys), tuple(labels))


def load_iris() -> LabeledPoints:
    """Fisher's iris data reduced to petal length (x) and petal width (y)."""
    text = resources.files("multikit").joinpath("data/iris_petal.csv").read_text()
    return read_points_csv(text)


def default_bandwidth(points: np.ndarray) -> float:
    """Scott-style rule for 2-D data: ``n**(-1/6)`` times the pooled coordinate std.

    The pooled std is the root mean of the two per-axis variances.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n == 0:
        raise MultikitError("no points")
    sd = float(np.sqrt(np.mean(np.var(pts, axis=0))))
    if sd == 0:
        raise MultikitError("points are all identical; give a bandwidth explicitly")
    return n ** (-1 / 6) * sd


def default_grid(points: np.ndarray, bandwidth: float, cells: int = DEFAULT_CELLS) -> Grid2D:
    """Bounding box of ``points`` grown by four bandwidths on every side."""
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0) - MARGIN_BANDWIDTHS * bandwidth
    hi = pts.max(axis=0) + MARGIN_BANDWIDTHS * bandwidth
    return Grid2D(float(lo[0]), float(lo[1]), float((hi[0] - lo[0]) / cells),
                  float((hi[1] - lo[1]) / cells), cells, cells)


def kde2d(points, grid: Grid2D, bandwidth: float, label: str = "") -> KdeField:
    """Sum of isotropic Gaussians of std ``bandwidth`` at each point, scaled to unit mass on ``grid``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if not bandwidth > 0:
        raise MultikitError(f"bandwidth must be positive, got {bandwidth!r}")
    if pts.shape[0] == 0:
        raise MultikitError("cannot estimate a density from zero points")
    margin = 3 * bandwidth
    if (pts[:, 0].min() - margin < grid.x0 or pts[:, 0].max() + margin > grid.x0 + grid.nx * grid.dx
            or pts[:, 1].min() - margin < grid.y0 or pts[:, 1].max() + margin > grid.y0 + grid.ny * grid.dy):
        warnings.warn("grid does not cover every point with a 3-bandwidth margin; mass is renormalized",
                      stacklevel=2)
    # separable kernel: field[j, i] = sum_p ky[p, j] * kx[p, i]
    kx = np.exp(-0.5 * ((grid.x[None, :] - pts[:, :1]) / bandwidth) ** 2)
    ky = np.exp(-0.5 * ((grid.y[None, :] - pts[:, 1:]) / bandwidth) ** 2)
    dens = ky.T @ kx
    mass = dens.sum() * grid.cell_area
    if mass == 0:
        raise MultikitError("density vanishes on the grid; enlarge the grid or the bandwidth")
    return KdeField(Field2D(grid, dens / mass), label, float(bandwidth))


def cluster_fields(points: LabeledPoints, bandwidth: float | None = None,
                   cells: int = DEFAULT_CELLS) -> list[KdeField]:
    """One KDE field per label on a shared grid.

    Without an explicit ``bandwidth`` each label gets :func:`default_bandwidth`
    and the grid margin uses the largest of them.
    """
    labels = points.label_set()
    if not labels:
        raise MultikitError("no labeled points")
    groups = {lab: points.select(lab) for lab in labels}
    bws = {lab: bandwidth if bandwidth is not None else default_bandwidth(groups[lab]) for lab in labels}
    allpts = np.column_stack([points.x, points.y])
    grid = default_grid(allpts, max(bws.values()), cells)
    return [kde2d(groups[lab], grid, bws[lab], lab) for lab in labels]


def _check_grids(fields: Sequence[KdeField]) -> None:
    g = fields[0].field.grid
    if any(f.field.grid != g for f in fields):
        raise AlignmentError("KDE fields must share one grid")


def cluster_jaccard_matrix(fields: Sequence[KdeField]) -> np.ndarray:
    _check_grids(fields)
    n = len(fields)
    out = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = jaccard(fields[i].field, fields[j].field).value
    return out


def cluster_jaccard_multi(fields: Sequence[KdeField]) -> float:
    if len(fields) < 3:
        raise MultikitError("multiway comparison needs at least three fields")
    _check_grids(fields)
    return jaccard_multi([f.field for f in fields]).value
