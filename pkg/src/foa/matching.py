"""Exact square assignment (Hungarian method with potentials).

The solver keeps its dual potentials so that, among all optimal
assignments, the lexicographically smallest column vector can be picked:
every perfect matching inside the zero-reduced-cost subgraph is optimal.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def _hungarian(cost: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Minimise ``sum cost[i, col[i]]``.

    Returns ``(col_of_row, u, v)`` with ``cost[i, j] - u[i] - v[j] >= 0``
    everywhere and equality on the matched entries.
    """
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=np.int64)  # owner[j]: 1-based row matched to column j
    way = np.zeros(n + 1, dtype=np.int64)
    padded = np.zeros((n + 1, n + 1))
    padded[1:, 1:] = cost
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used
            free[0] = False
            cur = padded[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            masked = np.where(free, minv, np.inf)
            j1 = int(np.argmin(masked))
            delta = masked[j1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    col_of_row = np.empty(n, dtype=np.int64)
    col_of_row[owner[1:] - 1] = np.arange(n)
    return col_of_row, u[1:], v[1:]


def _reroute(eq, col_of_row, row_of_col, start_row, goal_col, banned_rows, banned_cols):
    """Find an alternating path in the equality graph from ``start_row`` to ``goal_col``.

    On success the matching along the path is rewritten and True returned.
    """
    parent = {}
    queue = deque([start_row])
    seen_rows = {start_row}
    while queue:
        r = queue.popleft()
        for c in np.flatnonzero(eq[r]):
            c = int(c)
            if c in banned_cols or c in parent:
                continue
            parent[c] = r
            if c == goal_col:
                while True:
                    r = parent[c]
                    prev = int(col_of_row[r])
                    col_of_row[r] = c
                    row_of_col[c] = r
                    if r == start_row:
                        return True
                    c = prev
            nxt = int(row_of_col[c])
            if nxt not in banned_rows and nxt not in seen_rows:
                seen_rows.add(nxt)
                queue.append(nxt)
    return False


def solve_assignment(cost, maximize: bool = False) -> tuple[list[int], float]:
    """Optimal assignment of rows to columns for a square cost matrix.

    Ties are broken towards the lexicographically smallest column vector.
    Returns ``(col_of_row, total)``.
    """
    a = np.asarray(cost, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return [], 0.0
    work = -a if maximize else a
    col_of_row, u, v = _hungarian(work)
    scale = 1.0 + float(np.max(np.abs(work)))
    eq = (work - u[:, None] - v[None, :]) <= 1e-12 * scale
    eq[np.arange(n), col_of_row] = True
    row_of_col = np.empty(n, dtype=np.int64)
    row_of_col[col_of_row] = np.arange(n)

    fixed_rows: set[int] = set()
    fixed_cols: set[int] = set()
    for i in range(n):
        for j in np.flatnonzero(eq[i]):
            j = int(j)
            if j in fixed_cols:
                continue
            if col_of_row[i] == j:
                break
            # give column j to row i: its owner must take over i's old column
            other = int(row_of_col[j])
            freed = int(col_of_row[i])
            trial_c, trial_r = col_of_row.copy(), row_of_col.copy()
            banned_r = fixed_rows | {i}
            banned_c = fixed_cols | {j}
            if _reroute(eq, trial_c, trial_r, other, freed, banned_r, banned_c):
                trial_c[i], trial_r[j] = j, i
                col_of_row, row_of_col = trial_c, trial_r
                break
        fixed_rows.add(i)
        fixed_cols.add(int(col_of_row[i]))
    cols = [int(c) for c in col_of_row]
    total = float(sum(a[r, c] for r, c in enumerate(cols)))
    return cols, total
