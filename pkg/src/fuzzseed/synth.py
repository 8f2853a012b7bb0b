"""Synthetic dataset generators.

Two constructions: equal-size Gaussian clusters whose cluster i is
centered at coordinate value i in every dimension (overlap is dialed in
by raising sigma), and a skewed-noise augmentation that plants outliers
around each label's gravity center, below it with a small probability
and above it otherwise.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import Dataset, load_csv, write_csv  # write_csv re-exported
from .rng import fresh_seed, make_rng

__all__ = [
    "GaussianSpec",
    "NoiseSpec",
    "gen_gaussian_clusters",
    "add_skewed_noise",
    "dataset_from_spec",
    "write_csv",
]


@dataclass(frozen=True)
class GaussianSpec:
    """k clusters of `size` points each; cluster i ~ Normal(i, sigma) per
    coordinate."""

    k: int
    size: int
    sigma: float
    dims: int
    rng_seed: int | None = None
    name: str | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.size < 1:
            raise ValueError(f"size must be >= 1, got {self.size}")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.dims < 1:
            raise ValueError(f"dims must be >= 1, got {self.dims}")


@dataclass(frozen=True)
class NoiseSpec:
    """Skewed-noise parameters: how many points per label, the probability
    of landing below the label center, and how many label sds out the
    noise starts."""

    points_per_label: int = 5
    left_fraction: float = 0.25
    spread_multiplier: float = 2.0
    rng_seed: int | None = None

    def __post_init__(self):
        if self.points_per_label < 1:
            raise ValueError(f"points_per_label must be >= 1, got {self.points_per_label}")
        if not 0.0 < self.left_fraction < 1.0:
            raise ValueError(f"left_fraction must be in (0, 1), got {self.left_fraction}")
        if not self.spread_multiplier > 0:
            raise ValueError(f"spread_multiplier must be positive, got {self.spread_multiplier}")


def gen_gaussian_clusters(spec: GaussianSpec) -> Dataset:
    """Generate k labeled Gaussian clusters, deterministic under rng_seed."""
    seed = fresh_seed() if spec.rng_seed is None else spec.rng_seed
    rng = make_rng(seed)
    blocks, labels = [], []
    for i in range(1, spec.k + 1):
        blocks.append(rng.normal(loc=float(i), scale=spec.sigma, size=(spec.size, spec.dims)))
        labels.extend([i] * spec.size)
    name = spec.name or f"gaussian_k{spec.k}_sd{spec.sigma:g}"
    return Dataset(points=np.vstack(blocks), labels=np.array(labels), name=name)


def add_skewed_noise(d: Dataset, spec: NoiseSpec) -> Dataset:
    """Append noisy points around each label's gravity center.

    Per label the center and per-feature sd are computed, then
    `points_per_label` points are placed beyond spread_multiplier sds of
    the center on every feature: below it when r <= left_fraction, above
    it otherwise (one r per point). Original rows are unchanged; new rows
    carry the label they noise.
    """
    if d.labels is None:
        raise ValueError("skewed noise needs a labeled dataset")
    seed = fresh_seed() if spec.rng_seed is None else spec.rng_seed
    rng = make_rng(seed)
    new_points, new_labels = [], []
    for label in np.unique(d.labels):
        group = d.points[d.labels == label]
        if group.shape[0] < 2:
            raise ValueError(f"label {label} has fewer than 2 points; sd undefined")
        center = group.mean(axis=0)
        sd = group.std(axis=0)  # population convention, as in data.standardize
        for _ in range(spec.points_per_label):
            r = rng.uniform()
            side = -1.0 if r <= spec.left_fraction else 1.0
            offset = spec.spread_multiplier * sd + np.abs(rng.normal(0.0, sd))
            new_points.append(center + side * offset)
            new_labels.append(label)
    return Dataset(
        points=np.vstack([d.points, np.array(new_points)]),
        labels=np.concatenate([d.labels, np.array(new_labels)]),
        name=f"{d.name}_noised",
    )


def dataset_from_spec(spec: dict, base_dir=".") -> Dataset:
    """Build a dataset from a JSON generator spec.

    {"kind": "gaussian_clusters", "k", "size", "sigma", "dims", "rng_seed"?, "name"?}
    {"kind": "skewed_noise", "base": <path entry or nested spec>,
     "points_per_label"?, "left_fraction"?, "spread_multiplier"?, "rng_seed"?}

    The base of a skewed_noise spec is either {"path", "label_column"?,
    "delimiter"?} (resolved against base_dir) or another generator spec.
    Invalid parameter values raise ValueError.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("generator spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "gaussian_clusters":
        fields = {k: spec[k] for k in ("k", "size", "sigma", "dims") if k in spec}
        missing = {"k", "size", "sigma", "dims"} - fields.keys()
        if missing:
            raise ValueError(f"gaussian_clusters spec missing {sorted(missing)}")
        return gen_gaussian_clusters(
            GaussianSpec(rng_seed=spec.get("rng_seed"), name=spec.get("name"), **fields)
        )
    if kind == "skewed_noise":
        base = spec.get("base")
        if not isinstance(base, dict):
            raise ValueError("skewed_noise spec needs a 'base' object")
        if "path" in base:
            csv_path = Path(base["path"])
            if not csv_path.is_absolute():
                csv_path = Path(base_dir) / csv_path
            base_ds = load_csv(
                csv_path,
                label_column=base.get("label_column"),
                delimiter=base.get("delimiter", ","),
            )
        else:
            base_ds = dataset_from_spec(base, base_dir=base_dir)
        noise = NoiseSpec(
            points_per_label=spec.get("points_per_label", 5),
            left_fraction=spec.get("left_fraction", 0.25),
            spread_multiplier=spec.get("spread_multiplier", 2.0),
            rng_seed=spec.get("rng_seed"),
        )
        return add_skewed_noise(base_ds, noise)
    raise ValueError(f"unknown generator kind {kind!r}")
