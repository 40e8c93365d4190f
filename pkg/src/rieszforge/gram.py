"""Gram matrices of exponential systems and finite-section certificates.

For integer frequencies P and a spectrum S the Gram is G[j,k] = c(p_k - p_j)
with c the indicator Fourier coefficient of S.  Extreme eigenvalues of nested
centered finite sections bound the infinite system's Riesz constants from one
side only: lambda_min decreases and lambda_max increases as the section grows,
so a certificate is evidence, never a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .torus import MultibandSet

__all__ = [
    "DEFAULT_SCHEDULE",
    "DEFAULT_DROP_RATIO",
    "BoundsEstimate",
    "GramCertificate",
    "build_gram",
    "extreme_eigs",
    "certify",
    "dual_system",
]

DEFAULT_SCHEDULE = (16, 32, 64, 128, 256)
DEFAULT_DROP_RATIO = 0.05

FINITE_SECTION_NOTE = (
    "finite sections bound the infinite system's lower Riesz constant from "
    "above and its upper constant from below; 'supported' is numerical "
    "evidence, not a proof"
)


@dataclass(frozen=True)
class BoundsEstimate:
    """Extreme eigenvalues of one Hermitian section, with an accuracy estimate."""

    lambda_min: float
    lambda_max: float
    tol: float


def _coefficient_cache(spectrum):
    cache: dict = {}
    coeff = spectrum.fourier_coefficient

    def get(diff):
        v = cache.get(diff)
        if v is None:
            v = coeff(diff)
            cache[diff] = v
        return v

    return get


def build_gram(points, spectrum, normalized: bool = False) -> np.ndarray:
    """Hermitian Gram of the exponentials with frequencies `points` on `spectrum`.

    points is a sequence of ints (1-D) or of equal-length int tuples
    (multi-dim); spectrum is any object with fourier_coefficient and
    total_volume (a MultibandSet, or a BoxSet in higher dimension).  With
    normalized=True the matrix is divided by the ambient volume, so the full
    integer lattice would give the identity.
    """
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    if isinstance(pts[0], tuple):
        return _build_gram_tuples(pts, spectrum, normalized)
    arr = np.asarray(pts, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("1-D points must be plain integers")
    diff = arr[None, :] - arr[:, None]
    uniq, inverse = np.unique(diff.ravel(), return_inverse=True)
    vals = np.empty(len(uniq), dtype=complex)
    coeff = spectrum.fourier_coefficient
    pos = {int(u): i for i, u in enumerate(uniq)}
    for i, u in enumerate(uniq):
        if u >= 0:
            vals[i] = coeff(int(u))
    # mirror negatives by conjugation so G is Hermitian bit-for-bit
    for i, u in enumerate(uniq):
        if u < 0:
            j = pos.get(-int(u))
            vals[i] = np.conj(vals[j]) if j is not None else coeff(int(u))
    g = vals[inverse].reshape(diff.shape)
    if normalized:
        g = g / spectrum.total_volume
    return g


def _build_gram_tuples(pts, spectrum, normalized):
    get = _coefficient_cache(spectrum)
    n = len(pts)
    g = np.zeros((n, n), dtype=complex)
    for j in range(n):
        pj = pts[j]
        for k in range(j, n):
            pk = pts[k]
            d = tuple(b - a for a, b in zip(pj, pk))
            v = get(d)
            g[j, k] = v
            g[k, j] = v.conjugate()
    if normalized:
        g = g / spectrum.total_volume
    return g


def _check_hermitian(h: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.abs(h).max()) if h.size else 0.0)
    resid = float(np.abs(h - h.conj().T).max()) if h.size else 0.0
    if resid > tol * scale:
        raise ValueError(f"matrix is not Hermitian: residual {resid:.3e}")
    return h


def extreme_eigs(h: np.ndarray, tol: float = 1e-12) -> BoundsEstimate:
    """Smallest and largest eigenvalue of a Hermitian matrix.

    Raises if the input fails the Hermiticity residual check at `tol`
    (relative to the largest entry).  The reported tol field estimates the
    eigensolver's achieved accuracy, n*eps*max|lambda|.
    """
    h = _check_hermitian(h, tol)
    w = np.linalg.eigvalsh(h)
    achieved = len(w) * np.finfo(float).eps * max(abs(w[0]), abs(w[-1]), 1.0)
    return BoundsEstimate(lambda_min=float(w[0]), lambda_max=float(w[-1]),
                          tol=float(max(achieved, tol)))


def dual_system(h: np.ndarray) -> np.ndarray:
    """Inverse of a positive-definite Gram: the Gram of the biorthogonal system.

    Eigenvalues of the result are the reciprocals of the input's, swapped
    between min and max.  Raises on singular or indefinite input.
    """
    h = _check_hermitian(h)
    w = np.linalg.eigvalsh(h)
    floor = max(len(w) * np.finfo(float).eps * max(abs(w[-1]), 1.0), 0.0)
    if w[0] <= floor:
        raise ValueError(f"matrix is singular or indefinite: lambda_min={w[0]:.3e}")
    inv = np.linalg.inv(h)
    return (inv + inv.conj().T) / 2.0


@dataclass(frozen=True)
class GramCertificate:
    """Finite-section evidence for or against a Riesz lower bound."""

    source: str
    spectrum: MultibandSet
    normalized: bool
    schedule: tuple[int, ...]
    bounds: tuple[BoundsEstimate, ...]
    threshold: float
    drop_ratio: float
    refute_floor: float
    final_drop: float
    verdict: str
    cross_check_lambda_min: float | None = None
    note: str = field(default=FINITE_SECTION_NOTE)

    @property
    def lambda_min(self) -> tuple[float, ...]:
        return tuple(b.lambda_min for b in self.bounds)

    @property
    def lambda_max(self) -> tuple[float, ...]:
        return tuple(b.lambda_max for b in self.bounds)

    def to_json(self) -> dict:
        volume = self.spectrum.total_volume
        scale = 1.0 if self.normalized else volume
        obj = {
            "source": self.source,
            "S": self.spectrum.to_json(),
            "normalized": self.normalized,
            "schedule": list(self.schedule),
            "lambda_min": list(self.lambda_min),
            "lambda_max": list(self.lambda_max),
            "lambda_min_normalized": [v / scale for v in self.lambda_min],
            "lambda_max_normalized": [v / scale for v in self.lambda_max],
            "verdict": self.verdict,
            "threshold": self.threshold,
            "drop_ratio": self.drop_ratio,
            "refute_floor": self.refute_floor,
            "final_drop": self.final_drop,
            "eig_tol": max(b.tol for b in self.bounds),
            "note": self.note,
        }
        if self.cross_check_lambda_min is not None:
            obj["cross_check_lambda_min"] = self.cross_check_lambda_min
        return obj

    def csv_text(self) -> str:
        lines = ["window,lambda_min,lambda_max"]
        for n, b in zip(self.schedule, self.bounds):
            lines.append(f"{n},{b.lambda_min!r},{b.lambda_max!r}")
        return "\n".join(lines) + "\n"


def certify(points, spectrum, threshold: float,
            schedule=DEFAULT_SCHEDULE, drop_ratio: float = DEFAULT_DROP_RATIO,
            refute_floor: float | None = None, normalized: bool = False,
            source: str = "", random_subsets: int = 0, seed: int = 0) -> GramCertificate:
    """Certify a candidate Riesz sequence by growing centered finite sections.

    Elements are ordered by (|x|, x) so the sections are nested and the
    extreme eigenvalues move monotonically.  Verdicts:

    * refuted      final lambda_min below refute_floor (default 1e-6 of the
                   ambient volume) -- the lower bound is numerically zero;
    * supported    final lambda_min >= threshold and the last-step relative
                   drop of lambda_min is at most drop_ratio;
    * inconclusive otherwise.

    random_subsets > 0 additionally samples that many random subsets of the
    supplied elements at the final section size and reports the worst
    lambda_min seen, as a cross-check against centering artifacts.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    schedule = tuple(int(n) for n in schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise ValueError(f"schedule must be strictly increasing and positive, got {schedule}")
    if not 0.0 <= drop_ratio < 1.0:
        raise ValueError("drop_ratio must be in [0, 1)")
    base = 1.0 if normalized else spectrum.total_volume
    if refute_floor is None:
        refute_floor = 1e-6 * base

    elems = [int(x) for x in points]
    if len(set(elems)) != len(elems):
        raise ValueError("duplicate elements")
    if schedule[-1] > len(elems):
        raise ValueError(f"schedule needs {schedule[-1]} elements, have {len(elems)}")
    order = sorted(elems, key=lambda x: (abs(x), x))

    bounds = []
    for n in schedule:
        section = sorted(order[:n])
        g = build_gram(section, spectrum, normalized=normalized)
        bounds.append(extreme_eigs(g))

    if len(bounds) >= 2:
        prev, last = bounds[-2].lambda_min, bounds[-1].lambda_min
        if prev <= 0.0:
            final_drop = 0.0 if last >= prev else math.inf
        else:
            final_drop = max(0.0, (prev - last) / prev)
    else:
        final_drop = 0.0

    last = bounds[-1].lambda_min
    if last < refute_floor:
        verdict = "refuted"
    elif last >= threshold and final_drop <= drop_ratio:
        verdict = "supported"
    else:
        verdict = "inconclusive"

    cross = None
    if random_subsets > 0:
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        n = schedule[-1]
        worst = math.inf
        for _ in range(random_subsets):
            pick = sorted(rng.choice(len(elems), size=n, replace=False))
            g = build_gram([elems[i] for i in pick], spectrum, normalized=normalized)
            worst = min(worst, extreme_eigs(g).lambda_min)
        cross = worst

    return GramCertificate(
        source=source, spectrum=spectrum, normalized=normalized,
        schedule=schedule, bounds=tuple(bounds), threshold=threshold,
        drop_ratio=drop_ratio, refute_floor=refute_floor,
        final_drop=final_drop, verdict=verdict, cross_check_lambda_min=cross,
    )
