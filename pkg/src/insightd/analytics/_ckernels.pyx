# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled clustering kernels; behavioral twin of ``_pure``."""

import numpy as np

BACKEND_NAME = "compiled"


def lloyd(double[:, ::1] points, double[:, ::1] init_centers, int max_iter):
    """Lloyd iterations; see the pure backend for the conventions."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t k = init_centers.shape[0]
    labels_arr = np.zeros(n, dtype=np.int64)
    prev_arr = np.zeros(n, dtype=np.int64)
    centers_arr = np.array(init_centers, dtype=np.float64)
    sums_arr = np.zeros((k, 2), dtype=np.float64)
    counts_arr = np.zeros(k, dtype=np.int64)

    cdef long long[::1] labels = labels_arr
    cdef long long[::1] prev = prev_arr
    cdef double[:, ::1] centers = centers_arr
    cdef double[:, ::1] sums = sums_arr
    cdef long long[::1] counts = counts_arr

    cdef Py_ssize_t i, j, best
    cdef double dx, dy, d2, best_d2, sse
    cdef bint changed
    cdef int it
    history = []

    for it in range(max_iter):
        sse = 0.0
        changed = False
        for i in range(n):
            best = 0
            best_d2 = 0.0
            for j in range(k):
                dx = points[i, 0] - centers[j, 0]
                dy = points[i, 1] - centers[j, 1]
                d2 = dx * dx + dy * dy
                if j == 0 or d2 < best_d2:
                    best_d2 = d2
                    best = j
            if labels[i] != best:
                changed = True
            prev[i] = labels[i]
            labels[i] = best
            sse += best_d2
        history.append(sse)
        if not changed and it > 0:
            break
        for j in range(k):
            sums[j, 0] = 0.0
            sums[j, 1] = 0.0
            counts[j] = 0
        for i in range(n):
            j = labels[i]
            sums[j, 0] += points[i, 0]
            sums[j, 1] += points[i, 1]
            counts[j] += 1
        for j in range(k):
            if counts[j] > 0:
                centers[j, 0] = sums[j, 0] / counts[j]
                centers[j, 1] = sums[j, 1] / counts[j]
    return labels_arr, centers_arr, history


def dbscan_labels(double[:, ::1] points, double eps, int min_pts):
    """Density clustering; returns (labels, cluster_count), noise = -1."""
    cdef Py_ssize_t n = points.shape[0]
    cdef double eps2 = eps * eps
    labels_arr = np.full(n, -1, dtype=np.int64)
    visited_arr = np.zeros(n, dtype=np.int8)
    cdef long long[::1] labels = labels_arr
    cdef signed char[::1] visited = visited_arr

    # scratch buffers for region queries and the expansion queue
    neigh_arr = np.zeros(n, dtype=np.int64)
    queue_arr = np.zeros(n * 4, dtype=np.int64)
    cdef long long[::1] neigh = neigh_arr
    cdef long long[::1] queue = queue_arr

    cdef Py_ssize_t i, j, m, q_head, q_len, n_neigh, cap
    cdef double dx, dy
    cdef long long cluster = 0

    cap = queue_arr.shape[0]
    for i in range(n):
        if visited[i]:
            continue
        visited[i] = 1
        n_neigh = 0
        for m in range(n):
            dx = points[m, 0] - points[i, 0]
            dy = points[m, 1] - points[i, 1]
            if dx * dx + dy * dy <= eps2:
                neigh[n_neigh] = m
                n_neigh += 1
        if n_neigh < min_pts:
            continue
        labels[i] = cluster
        q_head = 0
        q_len = 0
        for m in range(n_neigh):
            queue[q_len] = neigh[m]
            q_len += 1
        while q_head < q_len:
            j = queue[q_head]
            q_head += 1
            if labels[j] == -1:
                labels[j] = cluster
            if visited[j]:
                continue
            visited[j] = 1
            n_neigh = 0
            for m in range(n):
                dx = points[m, 0] - points[j, 0]
                dy = points[m, 1] - points[j, 1]
                if dx * dx + dy * dy <= eps2:
                    neigh[n_neigh] = m
                    n_neigh += 1
            if n_neigh >= min_pts:
                if q_len + n_neigh > cap:
                    # compact: drop already-processed prefix
                    for m in range(q_len - q_head):
                        queue[m] = queue[q_head + m]
                    q_len -= q_head
                    q_head = 0
                    if q_len + n_neigh > cap:
                        cap = 2 * (q_len + n_neigh)
                        new_arr = np.zeros(cap, dtype=np.int64)
                        new_arr[:q_len] = queue_arr[:q_len]
                        queue_arr = new_arr
                        queue = queue_arr
                for m in range(n_neigh):
                    queue[q_len] = neigh[m]
                    q_len += 1
        cluster += 1
    return labels_arr, int(cluster)
