"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive (high-precision arithmetic, brute
force, literal rule transcription) and shares no code with the package.
"""

from __future__ import annotations

import itertools
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def naive_mean_variance(xs):
    n = len(xs)
    mean = mp.fsum(mp.mpf(x) for x in xs) / n
    var = mp.fsum((mp.mpf(x) - mean) ** 2 for x in xs) / (n - 1)
    return float(mean), float(var)


def naive_pearson(pairs):
    n = len(pairs)
    mx = mp.fsum(mp.mpf(x) for x, _ in pairs) / n
    my = mp.fsum(mp.mpf(y) for _, y in pairs) / n
    sxx = mp.fsum((mp.mpf(x) - mx) ** 2 for x, _ in pairs)
    syy = mp.fsum((mp.mpf(y) - my) ** 2 for _, y in pairs)
    sxy = mp.fsum((mp.mpf(x) - mx) * (mp.mpf(y) - my) for x, y in pairs)
    return float(sxy / mp.sqrt(sxx * syy))


def naive_linreg(pairs):
    n = len(pairs)
    mx = mp.fsum(mp.mpf(x) for x, _ in pairs) / n
    my = mp.fsum(mp.mpf(y) for _, y in pairs) / n
    sxx = mp.fsum((mp.mpf(x) - mx) ** 2 for x, _ in pairs)
    sxy = mp.fsum((mp.mpf(x) - mx) * (mp.mpf(y) - my) for x, y in pairs)
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = mp.fsum((mp.mpf(y) - (intercept + slope * mp.mpf(x))) ** 2 for x, y in pairs)
    return float(intercept), float(slope), float(mp.sqrt(ss_res / n))


def naive_polyreg(pairs, degree):
    """Least squares by normal equations in 40-digit arithmetic."""
    m = degree + 1
    ata = mp.matrix(m, m)
    atb = mp.matrix(m, 1)
    for x, y in pairs:
        powers = [mp.mpf(x) ** j for j in range(m)]
        for r in range(m):
            atb[r] += powers[r] * mp.mpf(y)
            for c in range(m):
                ata[r, c] += powers[r] * powers[c]
    coeffs = mp.lu_solve(ata, atb)
    ss_res = mp.mpf(0)
    for x, y in pairs:
        fit = mp.fsum(coeffs[j] * mp.mpf(x) ** j for j in range(m))
        ss_res += (mp.mpf(y) - fit) ** 2
    rmse = mp.sqrt(ss_res / len(pairs))
    return [float(c) for c in coeffs], float(rmse)


def brute_dbscan(points, eps, min_pts):
    """Literal quadratic neighborhood expansion, scan in input order."""
    n = len(points)
    eps2 = eps * eps

    def neighbors(i):
        xi, yi = points[i]
        return [j for j in range(n) if (points[j][0] - xi) ** 2 + (points[j][1] - yi) ** 2 <= eps2]

    labels = [-1] * n
    visited = [False] * n
    cluster = 0
    for i in range(n):
        if visited[i]:
            continue
        visited[i] = True
        seed_set = neighbors(i)
        if len(seed_set) < min_pts:
            continue
        labels[i] = cluster
        queue = list(seed_set)
        head = 0
        while head < len(queue):
            j = queue[head]
            head += 1
            if labels[j] == -1:
                labels[j] = cluster
            if visited[j]:
                continue
            visited[j] = True
            j_neighbors = neighbors(j)
            if len(j_neighbors) >= min_pts:
                queue.extend(j_neighbors)
        cluster += 1
    return labels, cluster


def brute_kmeans_best(points, k):
    """Global optimum by enumerating every k-partition (tiny inputs only)."""
    n = len(points)
    best = (math.inf, None)
    for assignment in itertools.product(range(k), repeat=n):
        sse = 0.0
        total_dist = 0.0
        for c in range(k):
            members = [points[i] for i in range(n) if assignment[i] == c]
            if not members:
                continue
            cx = sum(p[0] for p in members) / len(members)
            cy = sum(p[1] for p in members) / len(members)
            for px, py in members:
                d2 = (px - cx) ** 2 + (py - cy) ** 2
                sse += d2
                total_dist += math.sqrt(d2)
        if sse < best[0]:
            best = (sse, (assignment, total_dist / n))
    assignment, avg_error = best[1]
    return best[0], list(assignment), avg_error


def brute_enumerate(schema, row_count):
    """Literal transcription of the task enumeration rules.

    ``schema`` is a list of (name, kind, distinct_count) with kind in
    {"numerical", "categorical", "temporal"}. Returns a sorted multiset of
    (kind, fields, params) tuples.
    """
    numerical = [s for s in schema if s[1] == "numerical"]
    cap = min(100, row_count / 2)
    freq = [s for s in schema if s[1] == "temporal" or (s[1] == "categorical" and s[2] <= cap)]
    categorical = [s for s in freq if s[1] == "categorical"]

    tasks = []
    for f in numerical:
        tasks.append(("mean_variance", (f[0],), ()))
    for f in freq:
        tasks.append(("freq_counts", (f[0],), ()))
    for a, b in itertools.combinations(categorical, 2):
        tasks.append(("freq_comb", (a[0], b[0]), ()))
    for a, b in itertools.combinations(numerical, 2):
        pair = (a[0], b[0])
        tasks.append(("correlation", pair, ()))
        for k in (3, 5, 7):
            tasks.append(("kmeans", pair, (("k", k),)))
        for min_pts, eps in ((4, 0.05), (8, 0.1)):
            tasks.append(("dbscan", pair, (("eps", eps), ("min_pts", min_pts))))
        tasks.append(("linreg", pair, ()))
        for degree in (2, 3):
            tasks.append(("polyreg", pair, (("degree", degree),)))
    return sorted(tasks)


def make_blobs(seed, per_blob=60, sigma=0.01):
    """Three tight Gaussian blobs at the corners of the unit triangle."""
    rng = np.random.default_rng(seed)
    corners = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    points, labels = [], []
    for label, (cx, cy) in enumerate(corners):
        for _ in range(per_blob):
            points.append((cx + rng.normal(0, sigma), cy + rng.normal(0, sigma)))
            labels.append(label)
    order = rng.permutation(len(points))
    return [points[i] for i in order], [labels[i] for i in order]


def partitions_match(a, b):
    """True when two label lists induce the same partition."""
    mapping: dict = {}
    reverse: dict = {}
    for la, lb in zip(a, b):
        if mapping.setdefault(la, lb) != lb:
            return False
        if reverse.setdefault(lb, la) != la:
            return False
    return True


def close(a, b, tol=1e-9):
    """Mixed absolute/relative comparison: |a-b| <= tol * max(1, |b|)."""
    return abs(a - b) <= tol * max(1.0, abs(b))
