"""Fuzzy cluster validity indices.

Seven scalar quality scores of a fuzzy partition, each with a fixed
optimization direction. All of them consume the final membership matrix
and centroids of a run. Division-by-zero cases (zero within-inertia,
coincident centroids) yield an infinity sentinel plus a quality flag
rather than an exception.
"""

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .engine import FcmResult, fuzzy_within, sq_dists

INDEX_DIRECTIONS = {
    "pc": "maximize",
    "cl": "maximize",
    "fratio": "maximize",
    "fch": "maximize",
    "tsfd": "maximize",
    "fs": "minimize",
    "xb": "minimize",
}


@dataclass(frozen=True)
class ValidityScores:
    """The seven index values for one partition, plus quality flags."""

    pc: float
    cl: float
    fratio: float
    fch: float
    fs: float
    xb: float
    tsfd: float
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        def enc(v: float):
            if np.isinf(v):
                return "inf" if v > 0 else "-inf"
            return float(v)

        out = {key: enc(getattr(self, key)) for key in INDEX_DIRECTIONS}
        out["flags"] = list(self.flags)
        return out


def v_pc(u: np.ndarray) -> float:
    """Partition coefficient, (1/n) sum u_ik^2; in [1/K, 1], maximize."""
    u = np.asarray(u, dtype=float)
    return float((u**2).sum() / u.shape[0])


def v_cl(u: np.ndarray) -> float:
    """Chen-Linkens index: mean max-membership minus the normalized sum of
    pairwise mean min-memberships; in [0, 1], maximize."""
    u = np.asarray(u, dtype=float)
    n, k = u.shape
    if k < 2:
        raise ValueError("index needs at least 2 clusters")
    compactness = float(u.max(axis=1).mean())
    pairs = 0.0
    for a in range(k - 1):
        for b in range(a + 1, k):
            pairs += float(np.minimum(u[:, a], u[:, b]).mean())
    c = k * (k - 1) / 2
    return compactness - pairs / c


def v_fratio(fb: float, fw: float) -> float:
    """Between/within ratio FB/FW; maximize. FW = 0 gives +inf."""
    if fw == 0.0:
        return float("inf")
    return fb / fw


def v_fch(fb: float, fw: float, n: int, k: int) -> float:
    """Degrees-of-freedom penalized ratio ((n-k)/(k-1)) * FB/FW; maximize."""
    if k < 2:
        raise ValueError("index needs at least 2 clusters")
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    ratio = v_fratio(fb, fw)
    if np.isinf(ratio):
        return ratio
    return (n - k) / (k - 1) * ratio


def v_fs(fw: float, fb: float) -> float:
    """Within minus between, FW - FB; in [-FI, FI], minimize."""
    return fw - fb


def v_xb(d: Dataset, centroids: np.ndarray, u: np.ndarray, m: float) -> float:
    """Xie-Beni index: FW / (n * min pairwise squared centroid distance);
    minimize. Coincident centroids give +inf."""
    centroids = np.asarray(centroids, dtype=float)
    if centroids.shape[0] < 2:
        raise ValueError("index needs at least 2 centroids")
    fw = fuzzy_within(d.points, centroids, u, m)
    cd2 = sq_dists(centroids, centroids)
    np.fill_diagonal(cd2, np.inf)
    sep = float(cd2.min())
    if sep == 0.0:
        return float("inf")
    return fw / (d.n * sep)


def v_tsfd(fb: float, fi: float) -> float:
    """Between share of the total scatter, FB/FI; in [0, 1], maximize.

    Equals the affine rescaling (1 + (FB - FW)/FI) / 2 of the standardized
    difference when FI = FB + FW; both forms are computed and cross-checked
    to 1e-12.
    """
    if fi <= 0.0:
        raise ValueError(f"fuzzy inertia must be positive, got {fi}")
    if fb < -1e-9 * fi or fb > fi * (1.0 + 1e-9):
        raise ValueError(f"need 0 <= fb <= fi, got fb={fb}, fi={fi}")
    direct = fb / fi
    fw = fi - fb
    transformed = (1.0 + (fb - fw) / fi) / 2.0
    if abs(direct - transformed) > 1e-12:
        raise ArithmeticError(
            f"dual forms disagree: {direct} vs {transformed}"
        )
    return min(max(direct, 0.0), 1.0)


def score_result(d: Dataset, result: FcmResult) -> ValidityScores:
    """Evaluate all seven indices on the final state of a run."""
    flags = []
    fratio = v_fratio(result.fb, result.fw)
    fch = v_fch(result.fb, result.fw, d.n, result.k)
    if np.isinf(fratio):
        flags.append("zero_fw")
    xb = v_xb(d, result.centroids, result.membership, result.m)
    if np.isinf(xb):
        flags.append("coincident_centroids")
    return ValidityScores(
        pc=v_pc(result.membership),
        cl=v_cl(result.membership),
        fratio=fratio,
        fch=fch,
        fs=v_fs(result.fw, result.fb),
        xb=xb,
        tsfd=v_tsfd(result.fb, result.fi),
        flags=tuple(flags),
    )
