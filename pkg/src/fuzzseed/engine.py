"""Fuzzy c-means iteration and the fuzzy inertia decomposition.

The alternating updates minimize the fuzzy within-inertia

    FW = sum_i sum_k u_ik^m d2(x_i, c_k)

over membership matrices U (rows sum to 1) and centroids C. The total
scatter FI = sum u_ik^m d2(x_i, xbar) splits as FI = FW + FB whenever
the centroids are the u^m-weighted means, with the between part
FB = sum_k (sum_i u_ik^m) d2(c_k, xbar). All distances are squared
Euclidean; no other metric is supported.
"""

from dataclasses import dataclass

import numpy as np

from .data import Dataset


class EngineError(Exception):
    """Base class for iteration failures."""


class CollapsedClusterError(EngineError):
    """A cluster received zero total membership mass."""


@dataclass(frozen=True)
class FcmConfig:
    """Iteration parameters: fuzziness m > 1, relative-FW tolerance, cap."""

    m: float = 2.0
    epsilon: float = 1e-4
    max_iterations: int = 1000

    def __post_init__(self):
        if not self.m > 1.0:
            raise ValueError(f"fuzziness m must exceed 1, got {self.m}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")


@dataclass
class FcmResult:
    """Outcome of one fit: final state, trace, and inertia decomposition.

    `iterations` counts completed membership+centroid cycles. For results
    produced by multi-relaunch strategies it is the summed total over all
    relaunches (the reported cost), which may exceed len(objective_trace).
    """

    centroids: np.ndarray
    membership: np.ndarray
    iterations: int
    objective_trace: list[float]
    fw: float
    fb: float
    fi: float
    method: str | None = None
    dataset: str | None = None
    m: float = 2.0
    epsilon: float = 1e-4

    @property
    def k(self) -> int:
        return self.centroids.shape[0]

    def to_dict(self) -> dict:
        return {
            "schema": "fuzzseed/1",
            "method": self.method,
            "dataset": self.dataset,
            "n": int(self.membership.shape[0]),
            "k": int(self.k),
            "m": float(self.m),
            "epsilon": float(self.epsilon),
            "iterations": int(self.iterations),
            "fw": float(self.fw),
            "fb": float(self.fb),
            "fi": float(self.fi),
            "centroids": [[float(v) for v in row] for row in self.centroids],
            "objective_trace": [float(v) for v in self.objective_trace],
        }


def sq_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise squared Euclidean distances, shape (len(a), len(b))."""
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ikj,ikj->ik", diff, diff)


def update_membership(points: np.ndarray, centroids: np.ndarray, m: float) -> np.ndarray:
    """Membership update: u_ik = 1 / sum_j (d2_ik / d2_ij)^(1/(m-1)).

    Rows where the point coincides with one or more centroids (zero
    distance) split mass 1 equally among the coinciding centroids.
    Weights are normalized by the row-minimum distance before
    exponentiation so the computation cannot overflow.
    """
    points = np.asarray(points, dtype=float)
    centroids = np.asarray(centroids, dtype=float)
    if centroids.shape[0] < 2:
        raise ValueError("need at least 2 centroids")
    if not m > 1.0:
        raise ValueError(f"fuzziness m must exceed 1, got {m}")
    d2 = sq_dists(points, centroids)
    u = np.zeros_like(d2)
    zero = d2 == 0.0
    degenerate = zero.any(axis=1)
    if degenerate.any():
        hits = zero[degenerate]
        u[degenerate] = hits / hits.sum(axis=1, keepdims=True)
    regular = ~degenerate
    if regular.any():
        dr = d2[regular]
        w = (dr / dr.min(axis=1, keepdims=True)) ** (-1.0 / (m - 1.0))
        u[regular] = w / w.sum(axis=1, keepdims=True)
    return u


def update_centroids(points: np.ndarray, u: np.ndarray, m: float) -> np.ndarray:
    """Centroid update: c_k = sum_i u_ik^m x_i / sum_i u_ik^m."""
    points = np.asarray(points, dtype=float)
    um = np.asarray(u, dtype=float) ** m
    mass = um.sum(axis=0)
    empty = np.nonzero(mass == 0.0)[0]
    if empty.size:
        raise CollapsedClusterError(f"cluster {empty[0]} has zero membership mass")
    return (um.T @ points) / mass[:, None]


def fuzzy_within(points, centroids, u, m: float) -> float:
    """FW: membership-weighted sum of squared point-to-centroid distances."""
    um = np.asarray(u, dtype=float) ** m
    return float((um * sq_dists(np.asarray(points, float), np.asarray(centroids, float))).sum())


def fuzzy_between(points, centroids, u, m: float) -> float:
    """FB: membership-weighted sum of squared centroid-to-grand-mean distances."""
    points = np.asarray(points, dtype=float)
    centroids = np.asarray(centroids, dtype=float)
    xbar = points.mean(axis=0)
    col_mass = (np.asarray(u, dtype=float) ** m).sum(axis=0)
    d2 = ((centroids - xbar) ** 2).sum(axis=1)
    return float((col_mass * d2).sum())


def fuzzy_inertia(points, u, m: float) -> float:
    """FI: membership-weighted total scatter about the grand mean."""
    points = np.asarray(points, dtype=float)
    row_mass = (np.asarray(u, dtype=float) ** m).sum(axis=1)
    xbar = points.mean(axis=0)
    d2 = ((points - xbar) ** 2).sum(axis=1)
    return float((row_mass * d2).sum())


def run_fcm(d: Dataset, seeds, cfg: FcmConfig | None = None) -> FcmResult:
    """Alternate membership/centroid updates from the given seeds.

    Stops when the relative FW change drops below cfg.epsilon (a previous
    FW of exactly 0 counts as converged) or at cfg.max_iterations. One
    iteration is one completed membership+centroid cycle; FW is recorded
    after each cycle.

    `seeds` is a SeedSet or anything with a `.centroids` (K, p) array;
    a bare array works too.
    """
    cfg = cfg or FcmConfig()
    centroids = np.array(getattr(seeds, "centroids", seeds), dtype=float)
    method = getattr(seeds, "method", None)
    n = d.n
    k = centroids.shape[0]
    if k < 2:
        raise EngineError(f"need at least 2 seeds, got {k}")
    if k > n:
        raise EngineError(f"k={k} exceeds n={n}")
    if centroids.shape[1] != d.p:
        raise EngineError(
            f"seed dimension {centroids.shape[1]} does not match data p={d.p}"
        )

    points = d.points
    trace: list[float] = []
    prev_fw = None
    u = None
    for _ in range(cfg.max_iterations):
        u = update_membership(points, centroids, cfg.m)
        centroids = update_centroids(points, u, cfg.m)
        fw = fuzzy_within(points, centroids, u, cfg.m)
        trace.append(fw)
        if prev_fw is not None and (
            prev_fw == 0.0 or abs(fw - prev_fw) / prev_fw < cfg.epsilon
        ):
            break
        prev_fw = fw

    return FcmResult(
        centroids=centroids,
        membership=u,
        iterations=len(trace),
        objective_trace=trace,
        fw=trace[-1],
        fb=fuzzy_between(points, centroids, u, cfg.m),
        fi=fuzzy_inertia(points, u, cfg.m),
        method=method,
        dataset=d.name,
        m=cfg.m,
        epsilon=cfg.epsilon,
    )
