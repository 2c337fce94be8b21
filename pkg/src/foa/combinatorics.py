"""Enumeration helpers for the bucket-count guesses."""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence


def bounded_matrices(row_caps: Sequence[int], col_caps: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All non-negative integer matrices with row sums <= row_caps and column sums <= col_caps.

    Cells are filled in row-major order, smallest values first.
    """
    rows, cols = len(row_caps), len(col_caps)
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    values = [0] * len(cells)
    row_left, col_left = list(row_caps), list(col_caps)

    def rec(k):
        if k == len(cells):
            yield tuple(tuple(values[r * cols + c] for c in range(cols)) for r in range(rows))
            return
        r, c = cells[k]
        for v in range(min(row_left[r], col_left[c]) + 1):
            values[k] = v
            row_left[r] -= v
            col_left[c] -= v
            yield from rec(k + 1)
            row_left[r] += v
            col_left[c] += v
        values[k] = 0

    yield from rec(0)


def vectors_by_total(caps: Sequence[int]) -> dict[int, list[tuple[int, ...]]]:
    """Group every vector v with 0 <= v[i] <= caps[i] by its sum."""
    out: dict[int, list[tuple[int, ...]]] = {}
    for vec in itertools.product(*(range(c + 1) for c in caps)):
        out.setdefault(sum(vec), []).append(vec)
    return out
