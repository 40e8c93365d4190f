"""Lattice partitions for d-dimensional selection, and box spectra on the d-torus.

The cycling partition splits each aligned r-cube of Z^d into r^(d-1) axis
segments of length r; the segment axis j cycles with the cube through

    j = (k_1 + ... + k_d)/r  mod d      (residue 0 means axis d),

so a one-per-segment selector stays syndetic along every one-dimensional
section, with gaps at most 2*d*r.  The plain cube partition gives selectors
with covering radius at most s*sqrt(d).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .quasicrystal import GapStats
from .torus import TWO_PI, _arc_coefficient

__all__ = [
    "LatticeWindow",
    "Segment",
    "Cube",
    "BoxSet",
    "cycling_partition",
    "cube_partition",
    "covering_radius",
    "section_gaps",
    "indicator_fourier_d",
]


@dataclass(frozen=True)
class LatticeWindow:
    """Inclusive box [lo_1, hi_1] x ... x [lo_d, hi_d] of lattice points."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        lo = tuple(int(x) for x in self.lo)
        hi = tuple(int(x) for x in self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("lo and hi must be non-empty and of equal length")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"window {lo}..{hi} is reversed")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def side_lengths(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    def require_aligned(self, r: int) -> None:
        for a, s in zip(self.lo, self.side_lengths):
            if a % r != 0 or s % r != 0:
                raise ValueError(f"window {self.lo}..{self.hi} is not aligned to step {r}")

    def contains(self, pt) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, pt, self.hi))

    def points(self):
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))


@dataclass(frozen=True)
class Segment:
    """Axis-aligned run of r lattice cells inside one cube of the partition."""

    base: tuple[int, ...]
    axis: int  # 1-based
    cells: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Cube:
    """One aligned s-cube of the plain cube partition."""

    base: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]


def cycling_partition(d: int, r: int, window: LatticeWindow) -> tuple[Segment, ...]:
    """Partition the window into axis segments of length r with cycling axes.

    The window must be aligned: every lo coordinate and every side length a
    multiple of r.  Within the cube at base k the segments run along axis
    j(k) = ((k_1+...+k_d)/r mod d, 0 -> d); the remaining coordinates take all
    r^(d-1) offset combinations in order.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if r < 1:
        raise ValueError("segment length must be >= 1")
    if window.dim != d:
        raise ValueError(f"window dimension {window.dim} != {d}")
    window.require_aligned(r)

    segments = []
    for base in itertools.product(*(range(a, b + 1, r) for a, b in zip(window.lo, window.hi))):
        residue = (sum(base) // r) % d
        axis = d if residue == 0 else residue
        before = axis - 1
        for offsets in itertools.product(range(r), repeat=d - 1):
            cells = []
            for t in range(r):
                rel = offsets[:before] + (t,) + offsets[before:]
                cells.append(tuple(k + o for k, o in zip(base, rel)))
            segments.append(Segment(base=base, axis=axis, cells=tuple(cells)))
    return tuple(segments)


def cube_partition(d: int, s: int, window: LatticeWindow) -> tuple[Cube, ...]:
    """Partition the window into aligned s-cubes (window must be aligned to s)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if s < 1:
        raise ValueError("cube side must be >= 1")
    if window.dim != d:
        raise ValueError(f"window dimension {window.dim} != {d}")
    window.require_aligned(s)
    cubes = []
    for base in itertools.product(*(range(a, b + 1, s) for a, b in zip(window.lo, window.hi))):
        cells = tuple(tuple(k + o for k, o in zip(base, rel))
                      for rel in itertools.product(range(s), repeat=d))
        cubes.append(Cube(base=base, cells=cells))
    return tuple(cubes)


def covering_radius(points, window: LatticeWindow, margin: float = 0.0) -> float:
    """Largest Euclidean distance from a window lattice point to `points`.

    margin > 0 shrinks the window on every side before taking the supremum,
    to ignore boundary effects of a finite sample of an infinite selector.
    """
    pts = np.asarray(list(points), dtype=float)
    if pts.size == 0:
        raise ValueError("empty point set")
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != window.dim:
        raise ValueError(f"points of dimension {pts.shape[1]} in a {window.dim}-D window")
    ranges = []
    for a, b in zip(window.lo, window.hi):
        lo = math.ceil(a + margin)
        hi = math.floor(b - margin)
        if lo > hi:
            raise ValueError("margin leaves no lattice points in the window")
        ranges.append(range(lo, hi + 1))
    targets = np.array(list(itertools.product(*ranges)), dtype=float)
    dist, _ = cKDTree(pts).query(targets)
    return float(dist.max())


def section_gaps(points, axis: int, fixed: tuple[int, ...],
                 window: LatticeWindow) -> GapStats:
    """Gap statistics of the 1-D section of `points` along `axis` (1-based).

    fixed supplies the d-1 frozen coordinates in order (axis coordinate
    omitted).  Points outside the window are ignored.
    """
    d = window.dim
    if not 1 <= axis <= d:
        raise ValueError(f"axis must be in 1..{d}")
    if len(fixed) != d - 1:
        raise ValueError(f"need {d - 1} fixed coordinates, got {len(fixed)}")
    coords = []
    for pt in points:
        if len(pt) != d or not window.contains(pt):
            continue
        others = tuple(x for i, x in enumerate(pt) if i != axis - 1)
        if others == tuple(fixed):
            coords.append(pt[axis - 1])
    coords.sort()
    if len(coords) < 2:
        return GapStats(gaps=(), gamma=math.inf, min_gap=math.inf)
    gaps = tuple(b - a for a, b in zip(coords, coords[1:]))
    return GapStats(gaps=gaps, gamma=max(gaps), min_gap=min(gaps))


@dataclass(frozen=True)
class BoxSet:
    """Disjoint union of axis-aligned boxes inside the d-torus [0, 2*pi)^d.

    boxes is a tuple of per-box tuples of (lo, hi) pairs, one pair per axis.
    Boxes must have positive volume and pairwise disjoint interiors; no
    wrap-around reduction is applied in higher dimension.
    """

    boxes: tuple[tuple[tuple[float, float], ...], ...]

    def __post_init__(self):
        boxes = tuple(tuple((float(lo), float(hi)) for lo, hi in box) for box in self.boxes)
        if not boxes:
            raise ValueError("empty box list")
        d = len(boxes[0])
        for box in boxes:
            if len(box) != d:
                raise ValueError("boxes must share one dimension")
            for lo, hi in box:
                if not (0.0 <= lo < hi <= TWO_PI + 1e-12):
                    raise ValueError(f"box side ({lo}, {hi}) outside [0, 2*pi]")
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if all(lo1 < hi2 - 1e-12 and lo2 < hi1 - 1e-12
                       for (lo1, hi1), (lo2, hi2) in zip(boxes[i], boxes[j])):
                    raise ValueError(f"boxes {i} and {j} overlap")
        object.__setattr__(self, "boxes", boxes)

    @property
    def dim(self) -> int:
        return len(self.boxes[0])

    @property
    def measure(self) -> float:
        return sum(math.prod(hi - lo for lo, hi in box) for box in self.boxes)

    @property
    def fraction_of_torus(self) -> float:
        return self.measure / self.total_volume

    @property
    def total_volume(self) -> float:
        return TWO_PI ** self.dim

    def fourier_coefficient(self, m) -> complex:
        return indicator_fourier_d(self, tuple(m))

    def to_json(self) -> dict:
        return {"boxes_rad": [[[lo, hi] for lo, hi in box] for box in self.boxes]}

    @classmethod
    def from_json(cls, obj: dict) -> "BoxSet":
        if "boxes_rad" in obj:
            scale, raw = 1.0, obj["boxes_rad"]
        elif "boxes_2pi" in obj:
            scale, raw = TWO_PI, obj["boxes_2pi"]
        else:
            raise ValueError(f"expected 'boxes_rad' or 'boxes_2pi' key, got {sorted(obj)}")
        return cls(boxes=tuple(tuple((lo * scale, hi * scale) for lo, hi in box)
                               for box in raw))


def _axis_coefficient(lo: float, hi: float, m: int) -> complex:
    if m == 0:
        return complex(hi - lo)
    if m < 0:
        return _arc_coefficient(lo, hi, -m).conjugate()
    return _arc_coefficient(lo, hi, m)


def indicator_fourier_d(s: BoxSet, m: tuple[int, ...]) -> complex:
    """Fourier coefficient of the box-set indicator at the integer vector m.

    Separable per box: the product of one-dimensional arc coefficients.
    Negative components go through conjugation axis by axis, which makes
    c(-m) == conj(c(m)) exact and multi-dimensional Grams Hermitian
    bit-for-bit.
    """
    if len(m) != s.dim:
        raise ValueError(f"frequency vector of length {len(m)} for a {s.dim}-D set")
    total = 0j
    for box in s.boxes:
        term = complex(1.0)
        for (lo, hi), mi in zip(box, m):
            term *= _axis_coefficient(lo, hi, int(mi))
        total += term
    return total
