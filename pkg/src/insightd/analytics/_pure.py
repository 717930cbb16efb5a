"""Numpy fallback for the clustering kernels.

Mirrors the compiled extension in ``_ckernels.pyx``: same conventions
(ties to the lowest centroid index, scan in input order, squared-distance
threshold inclusive), so the two backends are interchangeable.
"""

from __future__ import annotations

from collections import deque

import numpy as np

BACKEND_NAME = "pure"


def lloyd(points: np.ndarray, centers: np.ndarray, max_iter: int) -> tuple[np.ndarray, np.ndarray, list[float]]:
    """Lloyd iterations from the given initial centers.

    Returns (assignment, final centers, per-iteration objective). Stops when
    the assignment stabilizes or after ``max_iter`` iterations. An empty
    cluster keeps its previous center.
    """
    x, y = points[:, 0], points[:, 1]
    cx, cy = centers[:, 0].copy(), centers[:, 1].copy()
    k = len(cx)
    labels = np.zeros(len(x), dtype=np.int64)
    history: list[float] = []
    for _ in range(max_iter):
        d2 = (x[:, None] - cx[None, :]) ** 2 + (y[:, None] - cy[None, :]) ** 2
        new_labels = np.argmin(d2, axis=1)
        history.append(float(d2[np.arange(len(x)), new_labels].sum()))
        if np.array_equal(new_labels, labels) and len(history) > 1:
            labels = new_labels
            break
        labels = new_labels
        for j in range(k):
            members = labels == j
            if members.any():
                cx[j] = x[members].mean()
                cy[j] = y[members].mean()
    return labels, np.column_stack([cx, cy]), history


def dbscan_labels(points: np.ndarray, eps: float, min_pts: int) -> tuple[np.ndarray, int]:
    """Density clustering; returns (labels, cluster_count), noise = -1.

    A core point has >= min_pts neighbors within eps, itself included.
    Border points join the cluster of the first core point that reaches
    them; points are scanned in input order.
    """
    x, y = points[:, 0], points[:, 1]
    n = len(x)
    eps2 = eps * eps
    labels = np.full(n, -1, dtype=np.int64)
    visited = np.zeros(n, dtype=bool)

    def region(i: int) -> np.ndarray:
        return np.flatnonzero((x - x[i]) ** 2 + (y - y[i]) ** 2 <= eps2)

    cluster = 0
    for i in range(n):
        if visited[i]:
            continue
        visited[i] = True
        neighbors = region(i)
        if len(neighbors) < min_pts:
            continue  # noise unless a later core point claims it
        labels[i] = cluster
        queue = deque(int(j) for j in neighbors)
        while queue:
            j = queue.popleft()
            if labels[j] == -1:
                labels[j] = cluster
            if visited[j]:
                continue
            visited[j] = True
            j_neighbors = region(j)
            if len(j_neighbors) >= min_pts:
                queue.extend(int(m) for m in j_neighbors)
        cluster += 1
    return labels, cluster
