"""Containment incidence matrices between dimension layers of the subspace lattice.

W_{q;t,k} has rows indexed by the t-dimensional and columns by the
k-dimensional subspaces of GF(q)^n, both in enumeration order, with a 1
exactly where the row subspace is contained in the column subspace.  Columns
are stored as sorted tuples of row indices (each column has only
gaussian_binomial(k,t,q) ones), which is what the kernel searches want.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .fields import Field, field
from .grassmann import (
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    index_of,
    subspaces_of,
)

__all__ = [
    "IncidenceMatrix",
    "wilson_matrix",
    "apply_check",
    "write_matrix",
    "read_matrix",
]


@dataclass(frozen=True)
class IncidenceMatrix:
    q: int
    n: int
    t: int
    k: int
    rows: int
    cols: int
    col_rows: tuple[tuple[int, ...], ...]  # per column, sorted row indices of the 1s
    _col_masks: list = dc_field(default=None, repr=False, compare=False)

    def row_subspaces(self) -> list[Subspace]:
        return list(enumerate_subspaces(field(self.q), self.n, self.t))

    def col_subspaces(self) -> list[Subspace]:
        return list(enumerate_subspaces(field(self.q), self.n, self.k))

    def entry(self, i: int, j: int) -> int:
        return 1 if i in self.col_rows[j] else 0

    def dense(self) -> list[list[int]]:
        m = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.col_rows):
            for i in col:
                m[i][j] = 1
        return m

    def col_masks(self) -> list[int]:
        """Per-column bitmasks of row indices (bit i = row i), built lazily."""
        if self._col_masks is None:
            masks = [sum(1 << i for i in col) for col in self.col_rows]
            object.__setattr__(self, "_col_masks", masks)
        return self._col_masks


def wilson_matrix(q: int, n: int, t: int, k: int) -> IncidenceMatrix:
    """The 0/1 containment matrix between J_q(n,t) rows and J_q(n,k) columns."""
    if not 0 <= t <= k <= n:
        raise ValueError(f"need 0 <= t <= k <= n, got t={t}, k={k}, n={n}")
    f = field(q)
    nrows = gaussian_binomial(n, t, q)
    cols = []
    for x in enumerate_subspaces(f, n, k):
        cols.append(tuple(sorted(index_of(y) for y in subspaces_of(x, t))))
    return IncidenceMatrix(
        q=q, n=n, t=t, k=k, rows=nrows, cols=len(cols), col_rows=tuple(cols)
    )


def _is_power(r: int, p: int) -> bool:
    # positive powers only: Z_1 is the zero ring and never a useful modulus
    if r < 2:
        return False
    while r % p == 0:
        r //= p
    return r == 1


def apply_check(m: IncidenceMatrix, c: Sequence[int], r: int) -> list[int]:
    """The vector of containment sums mod r, in row order: (W c) mod r.

    r must be a power of the field characteristic with r <= q.
    """
    if len(c) != m.cols:
        raise ValueError(f"coefficient vector length {len(c)} != cols {m.cols}")
    p = field(m.q).p
    if not _is_power(r, p) or r > m.q:
        raise ValueError(f"modulus {r} is not a power of {p} with r <= {m.q}")
    out = [0] * m.rows
    for j, cj in enumerate(c):
        if cj % r:
            v = cj % r
            for i in m.col_rows[j]:
                out[i] = (out[i] + v) % r
    return out


# -- file format -----------------------------------------------------------
# header `q n t k rows cols`, then one `row col` line per nonzero, 0-based,
# sorted row-major.

def write_matrix(m: IncidenceMatrix) -> str:
    pairs = sorted(
        (i, j) for j, col in enumerate(m.col_rows) for i in col
    )
    lines = [f"{m.q} {m.n} {m.t} {m.k} {m.rows} {m.cols}"]
    lines.extend(f"{i} {j}" for i, j in pairs)
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> IncidenceMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 6:
        raise ValueError(f"bad header {lines[0]!r}, expected 'q n t k rows cols'")
    q, n, t, k, rows, cols = map(int, head)
    col_lists: list[list[int]] = [[] for _ in range(cols)]
    for ln in lines[1:]:
        si, sj = ln.split()
        i, j = int(si), int(sj)
        if not (0 <= i < rows and 0 <= j < cols):
            raise ValueError(f"entry ({i},{j}) out of bounds {rows}x{cols}")
        col_lists[j].append(i)
    return IncidenceMatrix(
        q=q,
        n=n,
        t=t,
        k=k,
        rows=rows,
        cols=cols,
        col_rows=tuple(tuple(sorted(col)) for col in col_lists),
    )
