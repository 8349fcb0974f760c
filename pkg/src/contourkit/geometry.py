"""Polygon primitives: resampling, area, convexity, scanline fill, IOU, merging."""

from __future__ import annotations

import numpy as np
from scipy.spatial import ConvexHull, QhullError


def as_contour(points) -> np.ndarray:
    """Validate and return a contour as a float64 array of shape (M, 2), M >= 3."""
    c = np.asarray(points, dtype=np.float64)
    if c.ndim != 2 or c.shape[1] != 2:
        raise ValueError(f"contour must have shape (M, 2), got {c.shape}")
    if c.shape[0] < 3:
        raise ValueError(f"contour needs at least 3 points, got {c.shape[0]}")
    if not np.all(np.isfinite(c)):
        raise ValueError("contour contains non-finite coordinates")
    return c


def signed_area(c: np.ndarray) -> float:
    """Shoelace area; positive for counter-clockwise vertex order."""
    x, y = c[:, 0], c[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def ensure_ccw(c: np.ndarray) -> np.ndarray:
    """Return the contour in counter-clockwise order, keeping the first vertex first."""
    c = as_contour(c)
    if signed_area(c) < 0.0:
        return np.roll(c[::-1], 1, axis=0)
    return c


def polygon_area(c) -> float:
    """Absolute shoelace area of a closed polygon."""
    return abs(signed_area(as_contour(c)))


def perimeter(c) -> float:
    c = as_contour(c)
    return float(np.sum(np.linalg.norm(np.roll(c, -1, axis=0) - c, axis=1)))


def resample_contour(polygon, m: int) -> np.ndarray:
    """Resample a closed polygon to m points at uniform arc-length spacing.

    The output is counter-clockwise and starts at the arc position of the
    input's first vertex. Raises ValueError on zero-perimeter input.
    """
    c = ensure_ccw(polygon)
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    closed = np.vstack([c, c[:1]])
    seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    if total <= 0.0:
        raise ValueError("degenerate polygon: zero perimeter")
    targets = np.arange(m) * (total / m)
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, len(seg) - 1)
    t = (targets - cum[idx]) / np.where(seg[idx] > 0, seg[idx], 1.0)
    return closed[idx] + t[:, None] * (closed[idx + 1] - closed[idx])


def convex_hull(c) -> np.ndarray:
    """Convex hull vertices in counter-clockwise order."""
    c = as_contour(c)
    try:
        hull = ConvexHull(c)
    except QhullError as exc:
        raise ValueError(f"degenerate hull: {exc}") from exc
    return c[hull.vertices]


def convexity(c) -> float:
    """Ratio of polygon area to convex-hull area, in (0, 1]."""
    c = as_contour(c)
    hull_area = polygon_area(convex_hull(c))
    if hull_area <= 0.0:
        raise ValueError("degenerate hull: zero area")
    return min(1.0, polygon_area(c) / hull_area)


def fill_polygon(c, width: int, height: int) -> np.ndarray:
    """Rasterize a polygon to a boolean (height, width) mask.

    Even-odd scanline fill: a pixel is set iff its center (col+0.5, row+0.5)
    lies inside. Degenerate input yields an empty mask.
    """
    if width <= 0 or height <= 0:
        raise ValueError("mask dimensions must be positive")
    c = as_contour(c)
    mask = np.zeros((height, width), dtype=bool)
    p = c
    q = np.roll(c, -1, axis=0)
    rows = np.arange(height) + 0.5
    # half-open crossing rule: edge counts iff exactly one endpoint is above
    above_p = p[:, 1][None, :] > rows[:, None]
    above_q = q[:, 1][None, :] > rows[:, None]
    crosses = above_p != above_q
    if not crosses.any():
        return mask
    denom = q[:, 1] - p[:, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = p[:, 0][None, :] + (rows[:, None] - p[:, 1][None, :]) * (
            (q[:, 0] - p[:, 0])[None, :] / denom[None, :]
        )
    xs = np.where(crosses, xs, np.inf)
    xs.sort(axis=1)
    counts = crosses.sum(axis=1)
    # crossings come in pairs under the even-odd rule
    diff = np.zeros((height, width + 1), dtype=np.int64)
    for r in np.nonzero(counts)[0]:
        row_x = xs[r, : counts[r]]
        lo = np.ceil(row_x[0::2] - 0.5).astype(np.int64)
        hi = np.ceil(row_x[1::2] - 0.5).astype(np.int64)
        lo = np.clip(lo, 0, width)
        hi = np.clip(hi, 0, width)
        np.add.at(diff[r], lo, 1)
        np.add.at(diff[r], hi, -1)
    mask = np.cumsum(diff[:, :-1], axis=1) > 0
    return mask


def mask_iou(a: np.ndarray, b: np.ndarray) -> float:
    """Intersection-over-union of two binary masks; 1.0 when both are empty."""
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    if a.shape != b.shape:
        raise ValueError(f"mask shapes differ: {a.shape} vs {b.shape}")
    union = np.logical_or(a, b).sum()
    if union == 0:
        return 1.0
    return float(np.logical_and(a, b).sum() / union)


def merge_fragments(parts: list) -> np.ndarray:
    """Stack multiple contour fragments into a single contour.

    Fragments are concatenated in descending-area order, each individually
    counter-clockwise. The total point count is preserved.
    """
    if not parts:
        raise ValueError("no fragments to merge")
    frags = [ensure_ccw(p) for p in parts]
    if len(frags) == 1:
        return frags[0]
    areas = np.array([polygon_area(f) for f in frags])
    order = np.argsort(-areas, kind="stable")
    return np.vstack([frags[i] for i in order])


class BBox:
    """Axis-aligned box in center-size form, positive size."""

    __slots__ = ("cx", "cy", "w", "h")

    def __init__(self, cx: float, cy: float, w: float, h: float):
        if not (w > 0 and h > 0):
            raise ValueError(f"box size must be positive, got ({w}, {h})")
        if not all(np.isfinite([cx, cy, w, h])):
            raise ValueError("box fields must be finite")
        self.cx = float(cx)
        self.cy = float(cy)
        self.w = float(w)
        self.h = float(h)

    @property
    def center(self) -> np.ndarray:
        return np.array([self.cx, self.cy])

    @property
    def size(self) -> np.ndarray:
        return np.array([self.w, self.h])

    def __repr__(self) -> str:
        return f"BBox(cx={self.cx}, cy={self.cy}, w={self.w}, h={self.h})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BBox):
            return NotImplemented
        return (self.cx, self.cy, self.w, self.h) == (other.cx, other.cy, other.w, other.h)


def bbox_of(c) -> BBox:
    """Tight axis-aligned bounding box of a contour."""
    c = as_contour(c)
    lo = c.min(axis=0)
    hi = c.max(axis=0)
    size = hi - lo
    if size[0] <= 0.0 or size[1] <= 0.0:
        raise ValueError("contour has zero extent along an axis")
    center = (lo + hi) / 2.0
    return BBox(center[0], center[1], size[0], size[1])
