"""Exact rank/kernel computations over GF(p) and Q, with minimum searches.

Two exhaustive minimum-weight strategies are implemented for kernels over
GF(p):

* kernel-enumeration walks every kernel vector (Gray-code order, so each step
  is one basis-vector update); it requires p^(kernel dim) to fit a budget.

* support-enumeration scans column subsets by size and reports the first
  dependent subset in lexicographic order.  The scan is implemented with
  result-identical shortcuts: at the stage for subset size w, every smaller
  dependent subset has already been excluded, so a dependent w-subset is
  exactly the support of a full-weight kernel word.  Over GF(2) that word is
  the XOR of its columns, so stage w reduces to a meet-in-the-middle
  collision search over half-subsets (complete, so the lexicographically
  least hit is the same one the literal subset scan would find), and when the
  all-ones vector lies in the row space every kernel word has even weight and
  odd stages are provably empty.  Over other primes the stages run as a
  literal lexicographic scan (grid sizes there are tiny).

Minimum rational support uses the same stage structure with a GF(2)
prefilter: a rational dependency among 0/1 columns survives reduction mod 2,
so only subsets that are GF(2)-deficient get the exact fraction-free test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "GfpMatrix",
    "SearchReport",
    "BudgetExceededError",
    "rref_gfp",
    "kernel_basis_gfp",
    "rank_rational",
    "min_weight_kernel_gfp",
    "min_support_kernel_rational",
    "default_budget",
]

MODE_KERNEL = "kernel-enumeration"
MODE_SUPPORT = "support-enumeration"

# dict-based meet-in-the-middle is used while the table side fits this many
# half-subsets; beyond it the sorted-array join takes over
_MITM_DICT_LIMIT = 1_500_000
# hard ceiling for the sorted-array join (rows in the value table)
_MITM_JOIN_LIMIT = 80_000_000


class BudgetExceededError(RuntimeError):
    """Kernel enumeration would exceed the configured vector budget."""


def default_budget(p: int) -> int:
    """Default kernel-enumeration budget: ~2^22 vectors at p=2, scaled by 1/log p."""
    return int(2**22 / math.log2(p))


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus {p} is not prime")


@dataclass(frozen=True)
class GfpMatrix:
    """A dense matrix over GF(p), entries reduced mod p."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_prime(self.p)
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]]) -> "GfpMatrix":
        return cls(p, tuple(tuple(v % p for v in row) for row in rows))

    @classmethod
    def from_incidence(cls, m, p: int) -> "GfpMatrix":
        """Reduce an IncidenceMatrix (0/1 entries) mod p."""
        return cls.from_rows(p, m.dense())

    def column_bitmasks(self) -> list[int]:
        """Per column, the bitmask of rows with a nonzero entry (p=2 use)."""
        masks = [0] * self.cols
        for i, row in enumerate(self.entries):
            bit = 1 << i
            for j, v in enumerate(row):
                if v:
                    masks[j] |= bit
        return masks


@dataclass(frozen=True)
class SearchReport:
    """Self-certified outcome of a minimum-weight or minimum-support search.

    weight is None when nothing was found up to the cap.  witness_support and
    witness_values describe one minimum vector (positions and their
    coefficients); they are verified against the matrix before the report is
    constructed.  exhaustive means every weight below the reported one (or up
    to the cap, when nothing was found) was ruled out.
    """

    weight: Optional[int]
    witness_support: Optional[tuple[int, ...]]
    witness_values: Optional[tuple[int, ...]]
    mode: str
    exhaustive: bool
    cap: int

    @property
    def found(self) -> bool:
        return self.weight is not None

    def weight_text(self) -> str:
        return str(self.weight) if self.found else "none found"


# -- RREF and kernels over GF(p) -------------------------------------------


def rref_gfp(m: GfpMatrix) -> tuple[GfpMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form over GF(p): (rref, rank, pivot columns)."""
    p = m.p
    work = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][c], p - 2, p)
        if inv != 1:
            work[r] = [v * inv % p for v in work[r]]
        for i in range(nr):
            if i != r and work[i][c]:
                f = work[i][c]
                wr = work[r]
                wi = work[i]
                for j in range(c, nc):
                    wi[j] = (wi[j] - f * wr[j]) % p
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return (
        GfpMatrix(p, tuple(tuple(row) for row in work)),
        len(pivots),
        tuple(pivots),
    )


def kernel_basis_gfp(m: GfpMatrix) -> list[tuple[int, ...]]:
    """Basis of {x : Mx = 0 mod p}, one vector per free column, ascending."""
    red, rank, pivots = rref_gfp(m)
    p = m.p
    nc = m.cols
    pivot_set = set(pivots)
    basis = []
    for f in range(nc):
        if f in pivot_set:
            continue
        v = [0] * nc
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red.entries[r][f]) % p
        basis.append(tuple(v))
    return basis


# -- exact rational rank ----------------------------------------------------


def rank_rational(entries: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on unbounded ints."""
    m = [[int(v) for v in row] for row in entries]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(nc):
        piv = None
        for i in range(row, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        pivval = m[row][col]
        for i in range(row + 1, nr):
            mi = m[i]
            mic = mi[col]
            mr = m[row]
            for j in range(col + 1, nc):
                mi[j] = (mi[j] * pivval - mic * mr[j]) // prev
            mi[col] = 0
        prev = pivval
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


# -- witness helpers --------------------------------------------------------


def _verify_kernel_vector(
    m: GfpMatrix, support: tuple[int, ...], values: tuple[int, ...]
) -> None:
    if len(support) != len(values) or any(v % m.p == 0 for v in values):
        raise RuntimeError("malformed witness")
    for row in m.entries:
        if sum(row[j] * v for j, v in zip(support, values)) % m.p:
            raise RuntimeError("witness is not in the kernel")


def _witness_on_support(m: GfpMatrix, support: tuple[int, ...]) -> tuple[int, ...]:
    """Least full-support kernel coefficient tuple on a minimal dependent set."""
    p = m.p
    sub = GfpMatrix(
        p, tuple(tuple(row[j] for j in support) for row in m.entries)
    )
    basis = kernel_basis_gfp(sub)
    if not basis:
        raise RuntimeError("support set is not dependent")
    best = None
    dims = len(basis)
    for coeffs in itertools.product(range(p), repeat=dims):
        if not any(coeffs):
            continue
        vec = [0] * len(support)
        for c, b in zip(coeffs, basis):
            if c:
                for i, bv in enumerate(b):
                    vec[i] = (vec[i] + c * bv) % p
        if all(vec):
            cand = tuple(vec)
            if best is None or cand < best:
                best = cand
    if best is None:
        raise RuntimeError("no full-support kernel vector on the set")
    return best


# -- kernel-enumeration mode ------------------------------------------------


def _kernel_enum(m: GfpMatrix, cap: int, budget: int) -> SearchReport:
    p = m.p
    basis = kernel_basis_gfp(m)
    kd = len(basis)
    if p**kd > budget:
        raise BudgetExceededError(
            f"kernel enumeration needs {p}^{kd} vectors, budget is {budget}"
        )
    best_w: Optional[int] = None
    best_key = None  # (support tuple, values tuple)
    if p == 2:
        bints = [sum(1 << j for j, v in enumerate(vec) if v) for vec in basis]
        cur = 0
        for c in range(1, 1 << kd):
            cur ^= bints[(c & -c).bit_length() - 1]
            w = cur.bit_count()
            if best_w is not None and w > best_w:
                continue
            support = tuple(j for j in range(m.cols) if (cur >> j) & 1)
            key = (support, (1,) * w)
            if best_w is None or w < best_w or key < best_key:
                best_w = w
                best_key = key
    else:
        cur = [0] * m.cols
        live = 0
        for c in range(1, p**kd):
            # modular Gray step: bump the digit at the p-adic valuation of c,
            # which adds one basis vector to the running combination
            cc = c
            i = 0
            while cc % p == 0:
                cc //= p
                i += 1
            for j, bv in enumerate(basis[i]):
                if bv:
                    old = cur[j]
                    new = (old + bv) % p
                    cur[j] = new
                    live += (1 if new else 0) - (1 if old else 0)
            if best_w is not None and live > best_w:
                continue
            support = tuple(j for j in range(m.cols) if cur[j])
            values = tuple(cur[j] for j in support)
            key = (support, values)
            if best_w is None or live < best_w or key < best_key:
                best_w = live
                best_key = key
    if best_w is None or best_w > cap:
        return SearchReport(None, None, None, MODE_KERNEL, True, cap)
    support, values = best_key
    _verify_kernel_vector(m, support, values)
    return SearchReport(best_w, support, values, MODE_KERNEL, True, cap)


# -- support-enumeration mode ------------------------------------------------


def _all_ones_in_row_space(m: GfpMatrix) -> bool:
    """p=2: is the all-ones row a GF(2) combination of the rows?"""
    basis: dict[int, int] = {}
    for row in m.entries:
        v = 0
        for j, x in enumerate(row):
            if x:
                v |= 1 << j
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    ones = (1 << m.cols) - 1
    while ones:
        h = ones.bit_length() - 1
        if h not in basis:
            return False
        ones ^= basis[h]
    return True


def _stage_zero_column(m: GfpMatrix) -> Optional[tuple[int, ...]]:
    for j in range(m.cols):
        if all(row[j] == 0 for row in m.entries):
            return (j,)
    return None


def _stage_proportional_pair(m: GfpMatrix) -> Optional[tuple[int, ...]]:
    """Lex-least pair of proportional columns (stage w=2, any p)."""
    p = m.p
    seen: dict[tuple[int, ...], int] = {}
    best = None
    for j in range(m.cols):
        col = tuple(row[j] for row in m.entries)
        lead = next((v for v in col if v), None)
        if lead is None:
            continue  # zero column, stage 1 territory
        inv = pow(lead, p - 2, p)
        norm = tuple(v * inv % p for v in col)
        if norm in seen:
            cand = (seen[norm], j)
            if best is None or cand < best:
                best = cand
        else:
            seen[norm] = j
    return best


def _stage_mitm_dict(masks: Sequence[int], w: int) -> Optional[tuple[int, ...]]:
    """All dependent w-subsets via half-subset XOR collisions; returns lex-least.

    Valid at stage w: smaller dependent subsets are already excluded, so any
    same-value pair of half-subsets is disjoint and their union is the
    support of a weight-w kernel word.
    """
    cols = len(masks)
    h = w // 2
    g = w - h
    table: dict[int, list[tuple[int, ...]]] = {}
    for combo in itertools.combinations(range(cols), h):
        v = 0
        for j in combo:
            v ^= masks[j]
        table.setdefault(v, []).append(combo)
    best: Optional[tuple[int, ...]] = None
    if g == h:
        for combos in table.values():
            if len(combos) < 2:
                continue
            for c1, c2 in itertools.combinations(combos, 2):
                if set(c1) & set(c2):
                    continue
                cand = tuple(sorted(c1 + c2))
                if best is None or cand < best:
                    best = cand
    else:
        for combo in itertools.combinations(range(cols), g):
            v = 0
            for j in combo:
                v ^= masks[j]
            for other in table.get(v, ()):
                if set(combo) & set(other):
                    continue
                cand = tuple(sorted(combo + other))
                if best is None or cand < best:
                    best = cand
    return best


def _stage_mitm_join(
    masks: Sequence[int], w: int, rows: int
) -> Optional[tuple[int, ...]]:
    """Even-w collision stage as a sorted-array join (for large half counts)."""
    cols = len(masks)
    h = w // 2
    n_half = comb(cols, h)
    lanes_n = max(1, (rows + 63) // 64)
    if n_half * lanes_n > _MITM_JOIN_LIMIT:
        raise RuntimeError(
            f"support stage w={w} needs a {n_half}-row join; too large"
        )
    lanes = np.zeros((cols, lanes_n), dtype=np.uint64)
    for j, mask in enumerate(masks):
        for l in range(lanes_n):
            lanes[j, l] = (mask >> (64 * l)) & 0xFFFFFFFFFFFFFFFF
    idx_dtype = np.uint8 if cols <= 255 else np.uint16
    base = np.array(
        list(itertools.combinations(range(cols), h - 1)), dtype=idx_dtype
    )
    base_val = lanes[base[:, 0].astype(np.intp)].copy()
    for c in range(1, h - 1):
        base_val ^= lanes[base[:, c].astype(np.intp)]
    vals = np.empty((n_half, lanes_n), dtype=np.uint64)
    ids = np.empty((n_half, h), dtype=idx_dtype)
    pos = 0
    for a in range(cols - h + 1):
        sel = base[:, 0] > a
        cnt = int(sel.sum())
        if not cnt:
            continue
        ids[pos : pos + cnt, 0] = a
        ids[pos : pos + cnt, 1:] = base[sel]
        vals[pos : pos + cnt] = base_val[sel] ^ lanes[a]
        pos += cnt
    assert pos == n_half
    order = np.lexsort(tuple(vals[:, l] for l in range(lanes_n)))
    vs = vals[order]
    eq = np.all(vs[1:] == vs[:-1], axis=1)
    best: Optional[tuple[int, ...]] = None
    run_positions = np.flatnonzero(eq)
    i = 0
    n_eq = len(run_positions)
    while i < n_eq:
        start = run_positions[i]
        end = start + 1
        while i + 1 < n_eq and run_positions[i + 1] == run_positions[i] + 1:
            i += 1
            end = run_positions[i] + 1
        group = [tuple(int(v) for v in ids[order[k]]) for k in range(start, end + 1)]
        for c1, c2 in itertools.combinations(group, 2):
            if set(c1) & set(c2):
                continue
            cand = tuple(sorted(c1 + c2))
            if best is None or cand < best:
                best = cand
        i += 1
    return best


def _stage_literal(m: GfpMatrix, w: int) -> Optional[tuple[int, ...]]:
    """Literal lexicographic subset scan with an incremental elimination state.

    Only the last column of a subset can be dependent here (all smaller
    dependent subsets were excluded by earlier stages), so each DFS node
    reduces one column against the prefix basis.
    """
    p = m.p
    cols = m.cols
    columns = [tuple(row[j] for row in m.entries) for j in range(cols)]
    nr = m.rows
    found: Optional[tuple[int, ...]] = None

    def reduce_col(col: list[int], basis: list[tuple[int, list[int]]]) -> list[int]:
        v = col
        for piv, bvec in basis:
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, bvec)]
        return v

    def rec(start: int, chosen: list[int], basis: list[tuple[int, list[int]]]):
        nonlocal found
        if found is not None:
            return
        depth = len(chosen)
        if depth == w:
            return
        for j in range(start, cols - (w - depth) + 1):
            v = reduce_col(list(columns[j]), basis)
            piv = next((i for i, x in enumerate(v) if x), None)
            if piv is None:
                if depth == w - 1:
                    found = tuple(chosen + [j])
                    return
                # a dependent prefix would have been reported at a smaller
                # stage; unreachable while stages run in increasing w
                continue
            inv = pow(v[piv], p - 2, p)
            if inv != 1:
                v = [x * inv % p for x in v]
            basis.append((piv, v))
            chosen.append(j)
            rec(j + 1, chosen, basis)
            chosen.pop()
            basis.pop()
            if found is not None:
                return

    rec(0, [], [])
    return found


def _support_enum(m: GfpMatrix, cap: int) -> SearchReport:
    p = m.p
    cols = m.cols
    masks = m.column_bitmasks() if p == 2 else None
    even_only: Optional[bool] = None
    for w in range(1, min(cap, cols) + 1):
        if w == 1:
            hit = _stage_zero_column(m)
        elif w == 2:
            hit = _stage_proportional_pair(m)
        elif p == 2:
            if w % 2 == 1:
                if even_only is None:
                    even_only = _all_ones_in_row_space(m)
                if even_only:
                    # all kernel weights are even: <all-ones, x> = weight mod 2
                    continue
                hit = _stage_mitm_dict(masks, w)
            elif comb(cols, w // 2) <= _MITM_DICT_LIMIT:
                hit = _stage_mitm_dict(masks, w)
            else:
                hit = _stage_mitm_join(masks, w, m.rows)
        else:
            hit = _stage_literal(m, w)
        if hit is not None:
            values = _witness_on_support(m, hit)
            _verify_kernel_vector(m, hit, values)
            return SearchReport(w, hit, values, MODE_SUPPORT, True, cap)
    return SearchReport(None, None, None, MODE_SUPPORT, True, cap)


def min_weight_kernel_gfp(
    m: GfpMatrix,
    cap: int,
    mode: str = MODE_KERNEL,
    budget: Optional[int] = None,
    threads: int = 1,
) -> SearchReport:
    """Minimum Hamming weight of a nonzero kernel vector, with witness.

    mode is "kernel-enumeration" (walk the whole kernel; requires
    p^(kernel dim) <= budget) or "support-enumeration" (scan column subsets
    by size).  Both are exhaustive and agree wherever both run; ties are
    broken by lexicographically least support, then least coefficient tuple.
    threads is accepted for interface stability; every search here is
    deterministic and the result never depends on it.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    mode_norm = {
        "kernel": MODE_KERNEL,
        MODE_KERNEL: MODE_KERNEL,
        "support": MODE_SUPPORT,
        MODE_SUPPORT: MODE_SUPPORT,
    }.get(mode)
    if mode_norm is None:
        raise ValueError(f"unknown mode {mode!r}")
    del threads
    if mode_norm == MODE_KERNEL:
        if budget is None:
            budget = default_budget(m.p)
        return _kernel_enum(m, cap, budget)
    return _support_enum(m, cap)


# -- rational minimum support ------------------------------------------------


def _rational_nullvector(
    entries: Sequence[Sequence[int]], support: tuple[int, ...]
) -> tuple[int, ...]:
    """Primitive integer kernel vector of the chosen columns (first nonzero > 0)."""
    nr = len(entries)
    w = len(support)
    work = [[Fraction(entries[i][j]) for j in support] for i in range(nr)]
    pivots: list[int] = []
    r = 0
    for c in range(w):
        piv = next((i for i in range(r, nr) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        work[r] = [v / lead for v in work[r]]
        for i in range(nr):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(w) if c not in pivots]
    if not free:
        raise RuntimeError("support set is not rationally dependent")
    f0 = free[0]
    vec = [Fraction(0)] * w
    vec[f0] = Fraction(1)
    for row, pc in enumerate(pivots):
        vec[pc] = -work[row][f0]
    lcm = 1
    for v in vec:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _rational_stage(
    entries: Sequence[Sequence[int]], col_bits: list[int], w: int
) -> Optional[tuple[int, ...]]:
    """First (lex) w-subset of columns that is dependent over Q.

    DFS in lexicographic order carrying a GF(2) elimination state; the exact
    Bareiss test runs only on GF(2)-deficient leaves (rational dependence of
    0/1 columns implies GF(2) dependence).
    """
    cols = len(col_bits)
    found: Optional[tuple[int, ...]] = None

    def rec(start: int, chosen: list[int], basis: dict[int, int], defic: int):
        nonlocal found
        if found is not None:
            return
        depth = len(chosen)
        if depth == w:
            if defic:
                sub = [[row[j] for j in chosen] for row in entries]
                if rank_rational(sub) < w:
                    found = tuple(chosen)
            return
        for j in range(start, cols - (w - depth) + 1):
            v = col_bits[j]
            while v:
                h = v.bit_length() - 1
                if h in basis:
                    v ^= basis[h]
                else:
                    break
            chosen.append(j)
            if v:
                h = v.bit_length() - 1
                basis[h] = v
                rec(j + 1, chosen, basis, defic)
                del basis[h]
            else:
                rec(j + 1, chosen, basis, defic + 1)
            chosen.pop()
            if found is not None:
                return

    rec(0, [], {}, 0)
    return found


def min_support_kernel_rational(
    entries: Sequence[Sequence[int]], cap: int
) -> SearchReport:
    """Smallest column subset dependent over Q, first in lexicographic order.

    entries must be a 0/1 integer matrix.  The witness is the primitive
    integer kernel vector on that subset with positive leading entry.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if any(v not in (0, 1) for row in entries for v in row):
        raise ValueError("expected a 0/1 integer matrix")
    nr = len(entries)
    nc = len(entries[0]) if nr else 0
    col_bits = [
        sum((entries[i][j] & 1) << i for i in range(nr)) for j in range(nc)
    ]
    for w in range(1, min(cap, nc) + 1):
        hit = _rational_stage(entries, col_bits, w)
        if hit is None:
            continue
        vec = _rational_nullvector(entries, hit)
        if any(v == 0 for v in vec):
            raise RuntimeError("witness support is smaller than the found set")
        for row in entries:
            if sum(row[j] * v for j, v in zip(hit, vec)):
                raise RuntimeError("witness is not in the rational kernel")
        return SearchReport(len(hit), hit, vec, MODE_SUPPORT, True, cap)
    return SearchReport(None, None, None, MODE_SUPPORT, True, cap)
