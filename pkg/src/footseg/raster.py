"""Raster primitives: binary masks, instance label maps, exact distance fields.

Masks are 2-D uint8 arrays with values in {0, 1}; label maps carry one
positive integer per building instance. Distances are exact Euclidean,
measured center-to-center in pixel units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def as_mask(arr) -> np.ndarray:
    """Validate and normalize a binary mask to a uint8 {0,1} array."""
    mask = np.asarray(arr)
    if mask.ndim != 2 or mask.shape[0] < 1 or mask.shape[1] < 1:
        raise ValueError(f"mask must be a nonempty 2-D array, got shape {mask.shape}")
    if mask.dtype == bool:
        return mask.astype(np.uint8)
    uniq = np.unique(mask)
    if not np.isin(uniq, (0, 1)).all():
        raise ValueError("mask values must all be 0 or 1")
    return mask.astype(np.uint8)


@dataclass(frozen=True)
class LabelMap:
    """Instance labeling of a binary mask: 0 = background, k >= 1 = instance k."""

    labels: np.ndarray
    component_count: int

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    def to_mask(self) -> np.ndarray:
        return (self.labels > 0).astype(np.uint8)


@dataclass(frozen=True)
class DistanceField:
    """Per-pixel distances to the nearest (d1) and second-nearest (d2) instance.

    d2 is +inf everywhere when fewer than two instances exist.
    """

    d1: np.ndarray
    d2: np.ndarray

    @property
    def height(self) -> int:
        return self.d1.shape[0]

    @property
    def width(self) -> int:
        return self.d1.shape[1]


_N4 = ((-1, 0), (0, -1))
_N8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1))


def connected_components(mask, connectivity: int = 8) -> LabelMap:
    """Label connected foreground regions of a binary mask.

    Two-pass union-find scan. Labels are assigned in raster-scan order of each
    component's first pixel, so the numbering is deterministic.
    """
    mask = as_mask(mask)
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    h, w = mask.shape
    offsets = _N8 if connectivity == 8 else _N4

    labels = np.zeros((h, w), dtype=np.int32)
    parent = [0]  # union-find forest over provisional labels; index 0 unused

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:  # path compression
            parent[a], a = root, parent[a]
        return root

    nxt = 0
    for i in range(h):
        row = mask[i]
        for j in range(w):
            if not row[j]:
                continue
            best = 0
            for di, dj in offsets:
                ni, nj = i + di, j + dj
                if 0 <= ni < h and 0 <= nj < w and labels[ni, nj]:
                    r = find(labels[ni, nj])
                    if best == 0:
                        best = r
                    elif r != best:
                        lo, hi = (best, r) if best < r else (r, best)
                        parent[hi] = lo
                        best = lo
            if best == 0:
                nxt += 1
                parent.append(nxt)
                best = nxt
            labels[i, j] = best

    # Second pass: renumber roots by first raster-scan appearance.
    remap = {}
    count = 0
    flat = labels.ravel()
    for k in range(flat.size):
        lab = flat[k]
        if lab:
            root = find(lab)
            final = remap.get(root)
            if final is None:
                count += 1
                final = count
                remap[root] = final
            flat[k] = final

    return LabelMap(labels=labels, component_count=count)


def _column_pass(feature: np.ndarray) -> np.ndarray:
    """Per-column distance (in rows) to the nearest feature pixel; inf if none."""
    h, _ = feature.shape
    g = np.where(feature, 0.0, np.inf)
    for i in range(1, h):
        np.minimum(g[i], g[i - 1] + 1.0, out=g[i])
    for i in range(h - 2, -1, -1):
        np.minimum(g[i], g[i + 1] + 1.0, out=g[i])
    return g


def _envelope_1d(f: np.ndarray) -> np.ndarray:
    """Exact 1-D squared-distance transform d[q] = min_p ((q-p)^2 + f[p]).

    Lower-envelope-of-parabolas scan; sites with f = inf never enter the hull.
    """
    n = f.size
    d = np.full(n, np.inf)
    finite = np.flatnonzero(np.isfinite(f))
    if finite.size == 0:
        return d
    v = np.zeros(n, dtype=np.intp)
    z = np.empty(n + 1)
    v[0] = finite[0]
    z[0], z[1] = -math.inf, math.inf
    k = 0
    for q in finite[1:]:
        fq = f[q] + q * q
        while True:
            p = v[k]
            s = (fq - (f[p] + p * p)) / (2.0 * (q - p))
            if s > z[k]:
                break
            k -= 1
        k += 1
        v[k] = q
        z[k] = s
        z[k + 1] = math.inf
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        p = v[k]
        d[q] = (q - p) * (q - p) + f[p]
    return d


def _edt(feature: np.ndarray) -> np.ndarray:
    """Exact Euclidean distance to the nearest True pixel (inf if none)."""
    g = _column_pass(feature)
    sq = g * g
    out = np.empty_like(sq)
    for i in range(sq.shape[0]):
        out[i] = _envelope_1d(sq[i])
    return np.sqrt(out)


def distance_transform(labels: LabelMap, component: int) -> np.ndarray:
    """Exact Euclidean distance from every pixel to one instance's pixels."""
    if not 1 <= component <= labels.component_count:
        raise ValueError(
            f"component {component} out of range 1..{labels.component_count}"
        )
    return _edt(labels.labels == component)


def two_nearest_distances(labels: LabelMap) -> DistanceField:
    """Per-pixel smallest and second-smallest distances over distinct instances."""
    h, w = labels.labels.shape
    k = labels.component_count
    if k == 0:
        inf = np.full((h, w), np.inf)
        return DistanceField(d1=inf, d2=inf.copy())
    if k == 1:
        d1 = _edt(labels.labels == 1)
        return DistanceField(d1=d1, d2=np.full((h, w), np.inf))
    stack = np.stack([_edt(labels.labels == c) for c in range(1, k + 1)])
    part = np.partition(stack, 1, axis=0)
    return DistanceField(d1=part[0], d2=part[1])
