"""Samplers for the six ensembles, passage-time recursions, and Monte Carlo.

Sampling is inverse-CDF on uniform variates (no rejection anywhere), so the
laws are exact and a fixed seed reproduces the run bit for bit.  Monte Carlo
fans out over fixed-size chunks whose generator streams derive from
(seed, chunk_index); the per-chunk counts add commutatively, so the result is
independent of worker count and scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import DistributionTable, IntMatrix, ModelSpec
from .rsk import rsk_shape

_CHUNK = 4096


# ---------------------------------------------------------------------------
# Site plans: which positions get sampled under which law, and which positions
# the symmetry then fills with the same value.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Site:
    law: str                      # geom | bernoulli | parity_geom
    params: tuple[float, ...]     # geom/bernoulli: (p,); parity_geom: (q, beta)
    positions: tuple[tuple[int, int], ...]


def _extended_q(q, n):
    """q_i for i = 1..2n with the reflection q_{2n+1-i} = q_i."""
    return list(q) + [q[2 * n - i] for i in range(n + 1, 2 * n + 1)]


def _site_plan(spec: ModelSpec) -> list[_Site]:
    v = spec.variant
    sites: list[_Site] = []
    if v == "johansson":
        n = spec.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                p = float(spec.a[i - 1] * spec.b[j - 1])
                sites.append(_Site("geom", (p,), ((i, j),)))
    elif v == "bernoulli":
        m, n = spec.matrix_shape
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                p = float(spec.a[i - 1] * spec.b[j - 1])
                sites.append(_Site("bernoulli", (p,), ((i, j),)))
    elif v == "antidiagonal":
        n = spec.n
        for i in range(1, n + 1):
            for j in range(1, n + 2 - i):
                if i + j == n + 1:
                    sites.append(_Site("parity_geom",
                                       (float(spec.q[i - 1]), float(spec.beta)),
                                       ((i, j),)))
                else:
                    p = float(spec.q[i - 1] * spec.q[n - j])
                    sites.append(_Site("geom", (p,), ((i, j), (n + 1 - j, n + 1 - i))))
    elif v == "diagonal":
        n = spec.n
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if i == j:
                    p = float(spec.alpha * spec.q[i - 1])
                    sites.append(_Site("geom", (p,), ((i, i),)))
                else:
                    p = float(spec.q[i - 1] * spec.q[j - 1])
                    sites.append(_Site("geom", (p,), ((i, j), (j, i))))
    elif v == "doublysymmetric":
        n = spec.n
        qt = _extended_q(spec.q, n)
        for i in range(1, 2 * n + 1):
            for j in range(1, 2 * n + 1):
                if i > min(j, 2 * n + 1 - j):
                    continue
                orbit = {(i, j), (j, i),
                         (2 * n + 1 - j, 2 * n + 1 - i), (2 * n + 1 - i, 2 * n + 1 - j)}
                if i == j:
                    p = float(spec.alpha * spec.q[i - 1])
                    sites.append(_Site("geom", (p,), tuple(sorted(orbit))))
                elif i + j == 2 * n + 1:
                    # parity weight 0: anti-diagonal entries are even
                    sites.append(_Site("parity_geom", (float(spec.q[i - 1]), 0.0),
                                       tuple(sorted(orbit))))
                else:
                    p = float(qt[i - 1] * qt[j - 1])
                    sites.append(_Site("geom", (p,), tuple(sorted(orbit))))
    elif v == "pointreflection":
        n = spec.n
        qt = _extended_q(spec.q, n)
        for i in range(1, 2 * n + 1):
            for j in range(1, 2 * n + 1):
                if i + j > 2 * n + 1 or (i + j == 2 * n + 1 and i > n):
                    continue
                orbit = {(i, j), (2 * n + 1 - i, 2 * n + 1 - j)}
                p = float(qt[i - 1] * qt[j - 1])
                sites.append(_Site("geom", (p,), tuple(sorted(orbit))))
    else:
        raise ValueError(f"no sampler for variant {v!r}")
    return sites


# ---------------------------------------------------------------------------
# Inverse-CDF draws (scalar and vectorised share the same closed forms)
# ---------------------------------------------------------------------------


def _geom_scalar(w: float, p: float) -> int:
    # survival Pr(X >= k) = p^k; w uniform on (0, 1]
    if p <= 0.0:
        return 0
    return int(math.floor(math.log(w) / math.log(p)))


def _parity_geom_scalar(w: float, q: float, beta: float) -> int:
    """Inverse CDF for Pr(k) proportional to beta^(k mod 2) q^k.

    [0,1) splits into consecutive survival intervals: Pr(X >= 2j) = q^(2j) and
    Pr(X >= 2j+1) = q^(2j+1) (beta+q)/(1+beta q); the draw is the largest k
    whose survival still covers w.
    """
    if q <= 0.0:
        return 0
    j = int(math.floor(math.log(w) / (2 * math.log(q))))
    if j > 0 and q ** (2 * j) < w:
        j -= 1
    if q ** (2 * j + 2) >= w:
        j += 1
    odd_survival = q ** (2 * j + 1) * (beta + q) / (1 + beta * q)
    return 2 * j + 1 if odd_survival >= w else 2 * j


def _draw_scalar(site: _Site, u: float) -> int:
    w = 1.0 - u
    if site.law == "geom":
        return _geom_scalar(w, site.params[0])
    if site.law == "bernoulli":
        p = site.params[0]
        return 1 if u < p / (1 + p) else 0
    return _parity_geom_scalar(w, *site.params)


def _draw_vector(site: _Site, u: np.ndarray) -> np.ndarray:
    w = 1.0 - u
    if site.law == "geom":
        p = site.params[0]
        if p <= 0.0:
            return np.zeros(u.shape, dtype=np.int64)
        return np.floor(np.log(w) / math.log(p)).astype(np.int64)
    if site.law == "bernoulli":
        p = site.params[0]
        return (u < p / (1 + p)).astype(np.int64)
    q, beta = site.params
    if q <= 0.0:
        return np.zeros(u.shape, dtype=np.int64)
    j = np.floor(np.log(w) / (2 * math.log(q))).astype(np.int64)
    j = np.where((j > 0) & (q ** (2 * j) < w), j - 1, j)
    j = np.where(q ** (2 * j + 2) >= w, j + 1, j)
    odd_survival = q ** (2 * j + 1) * (beta + q) / (1 + beta * q)
    return 2 * j + (odd_survival >= w)


def sample_matrix(spec: ModelSpec, rng: np.random.Generator) -> IntMatrix:
    """One matrix from the ensemble; dependent entries filled by its symmetry."""
    n_rows, n_cols = spec.matrix_shape
    grid = [[-1] * n_cols for _ in range(n_rows)]
    for site in _site_plan(spec):
        value = _draw_scalar(site, rng.random())
        for (i, j) in site.positions:
            grid[i - 1][j - 1] = value
    if any(x < 0 for row in grid for x in row):
        raise AssertionError("site plan left positions unfilled")
    return IntMatrix(tuple(tuple(row) for row in grid))


@dataclass(frozen=True)
class SampleBatch:
    spec: ModelSpec
    seed: int
    matrices: tuple[IntMatrix, ...]


def sample_batch(spec: ModelSpec, count: int, seed: int) -> SampleBatch:
    """Deterministic batch; chunked streams make it worker-count independent."""
    matrices: list[IntMatrix] = []
    for chunk in range((count + 1023) // 1024):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(chunk,)))
        for _ in range(min(1024, count - 1024 * chunk)):
            matrices.append(sample_matrix(spec, rng))
    return SampleBatch(spec, seed, tuple(matrices))


# ---------------------------------------------------------------------------
# Passage times
# ---------------------------------------------------------------------------


def last_passage(X: IntMatrix) -> int:
    """Maximum weight of an up/right path from (1,1) to the top-right corner."""
    prev: list[int] = []
    for i, row in enumerate(X.rows):
        current: list[int] = []
        for j, x in enumerate(row):
            if i > 0 and j > 0:
                base = max(prev[j], current[j - 1])
            elif i > 0:
                base = prev[j]
            elif j > 0:
                base = current[j - 1]
            else:
                base = 0
            current.append(x + base)
        prev = current
    return prev[-1]


def last_passage_bernoulli(X: IntMatrix) -> int:
    """Maximum weight over north / north-east paths from the bottom row to the top.

    One entry per row, start and end columns free; each successive entry sits
    north or north-east of the previous one, i.e. the column sequence is
    weakly increasing.  (Restricting the eastward moves to single columns
    breaks the dual-correspondence identity; this is the reading under which
    the law matches the bounded dual Cauchy sum.)
    """
    for row in X.rows:
        for x in row:
            if x not in (0, 1):
                raise ValueError(f"binary matrix required, found entry {x}")
    scores = list(X.rows[0])
    for i in range(1, X.n_rows):
        row = X.rows[i]
        best = 0
        carried = []
        for j in range(X.n_cols):
            best = max(best, scores[j])
            carried.append(row[j] + best)
        scores = carried
    return max(scores)


def greene_multi(X: IntMatrix, l: int) -> int:
    """Sum of the first l parts of the insertion shape of X."""
    if l < 1:
        raise ValueError("l must be at least 1")
    shape = rsk_shape(X)
    return sum(shape.parts[:l])


def _antichain_width(points: list[tuple[int, int]]) -> int:
    """Largest antichain of lattice sites in the product order."""
    pts = sorted(points)
    best = [0] * len(pts)
    for idx, (_, j) in enumerate(pts):
        longest = 0
        for prev in range(idx):
            if pts[prev][1] > j and best[prev] > longest:
                longest = best[prev]
        best[idx] = longest + 1
    return max(best, default=0)


@lru_cache(maxsize=8)
def _site_subset_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All 2^(n*n) site subsets of the n x n grid with their antichain widths."""
    sites = [(i, j) for i in range(n) for j in range(n)]
    count = 1 << len(sites)
    masks = np.zeros((count, len(sites)), dtype=np.int64)
    widths = np.zeros(count, dtype=np.int64)
    for mask in range(count):
        chosen = [sites[t] for t in range(len(sites)) if mask >> t & 1]
        widths[mask] = _antichain_width(chosen)
        for t in range(len(sites)):
            if mask >> t & 1:
                masks[mask, t] = 1
    return masks, widths


def greene_oracle(X: IntMatrix, l: int) -> int:
    """Brute force: best total weight of a site set whose antichains have size <= l.

    By Dilworth such sets are exactly the unions of at most l vertex-disjoint
    monotone chains.  Enumeration-guarded to square matrices with n <= 4.
    """
    if X.n_rows != X.n_cols or X.n_rows > 4:
        raise ValueError("oracle guard: square matrices with n <= 4 only")
    if l < 1:
        raise ValueError("l must be at least 1")
    masks, widths = _site_subset_tables(X.n_rows)
    flat = np.array([x for row in X.rows for x in row], dtype=np.int64)
    sums = masks @ flat
    return int(sums[widths <= l].max())


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


def _batch_entries(plan: list[_Site], shape: tuple[int, int],
                   rng: np.random.Generator, count: int) -> np.ndarray:
    rows, cols = shape
    out = np.zeros((count, rows, cols), dtype=np.int64)
    for site in plan:
        values = _draw_vector(site, rng.random(count))
        for (i, j) in site.positions:
            out[:, i - 1, j - 1] = values
    return out


def _batch_last_passage(arr: np.ndarray) -> np.ndarray:
    count, rows, cols = arr.shape
    scores = np.zeros((count, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            if i > 0 and j > 0:
                base = np.maximum(scores[:, j], scores[:, j - 1])
            elif j > 0:
                base = scores[:, j - 1]
            elif i > 0:
                base = scores[:, j]
            else:
                base = 0
            scores[:, j] = arr[:, i, j] + base
    return scores[:, -1]


def _batch_bernoulli_passage(arr: np.ndarray) -> np.ndarray:
    count, rows, cols = arr.shape
    scores = arr[:, 0, :].copy()
    for i in range(1, rows):
        scores = arr[:, i, :] + np.maximum.accumulate(scores, axis=1)
    return scores.max(axis=1)


def class_statistic(spec: ModelSpec, X: IntMatrix) -> int:
    """The last-passage statistic whose law the model's formulas describe."""
    if spec.variant == "bernoulli":
        return last_passage_bernoulli(X)
    return last_passage(X)


def _chunk_counts(spec: ModelSpec, plan, l_max: int, seed: int,
                  chunk_index: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,)))
    entries = _batch_entries(plan, spec.matrix_shape, rng, count)
    if spec.variant == "bernoulli":
        stat = _batch_bernoulli_passage(entries)
    else:
        stat = _batch_last_passage(entries)
    clipped = np.clip(stat, 0, l_max + 1)
    return np.bincount(clipped, minlength=l_max + 2)


def mc_distribution(spec: ModelSpec, l_max: int, n_samples: int, seed: int,
                    threads: int = 1) -> DistributionTable:
    """Empirical cumulative law of the class statistic with binomial standard errors."""
    if n_samples < 1:
        raise ValueError("need at least one sample")
    if l_max < 0:
        raise ValueError("l_max must be nonnegative")
    plan = _site_plan(spec)
    jobs = []
    start = 0
    index = 0
    while start < n_samples:
        size = min(_CHUNK, n_samples - start)
        jobs.append((index, size))
        start += size
        index += 1

    def run(job):
        chunk_index, count = job
        return _chunk_counts(spec, plan, l_max, seed, chunk_index, count)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run, jobs))
    else:
        partials = [run(job) for job in jobs]
    counts = np.sum(partials, axis=0)

    cumulative = np.cumsum(counts)[: l_max + 1]
    probs: dict[int, float] = {}
    stderr: dict[int, float] = {}
    for l in range(l_max + 1):
        p = cumulative[l] / n_samples
        probs[l] = float(p)
        stderr[l] = float(math.sqrt(p * (1 - p) / n_samples))
    return DistributionTable(probs, exact=False, stderr=stderr)
