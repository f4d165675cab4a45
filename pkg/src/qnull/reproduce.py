"""The reproduction grid: every check row behind `qnull reproduce`.

The same rows back the acceptance test suite, so the CLI table and the test
results cannot drift apart.  Every row is deterministic: randomized pieces
(chains, sparse vectors) draw from fixed-seed generators, so repeated runs are
byte-identical regardless of thread count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .designs import (
    NullDesign,
    as_modulus,
    construct_lb_design,
    construct_uniform_design,
    make_random_chain,
    sum_over_superspaces,
    verify_strength,
    verify_strength_direct,
)
from .fields import Field, field
from .grassmann import (
    Subspace,
    canonicalize,
    contains,
    enumerate_subspaces,
    from_index,
    gaussian_binomial,
    subspaces_of,
)
from .incidence import IncidenceMatrix, apply_check, wilson_matrix
from .linalg import (
    GfpMatrix,
    min_support_kernel_rational,
    min_weight_kernel_gfp,
    rank_rational,
    rref_gfp,
)

__all__ = ["CheckRow", "run_grid", "format_rows", "rows_to_records"]

_CHAIN_SEED = 74520413
_VECTOR_SEED = 91530827


@dataclass(frozen=True)
class CheckRow:
    criterion: int
    label: str
    expected: str
    computed: str
    ok: bool


def _row(criterion: int, label: str, expected, computed) -> CheckRow:
    e, c = str(expected), str(computed)
    return CheckRow(criterion, label, e, c, e == c)


# -- criterion 1: Grassmannian counts ----------------------------------------


def _rows_counts(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    for q in (2, 3, 4):
        f = field(q)
        for n in range(1, 6):
            label = f"counts q{q} n{n} all-k"
            if not keep(label):
                continue
            expected = " ".join(
                str(gaussian_binomial(n, k, q)) for k in range(n + 1)
            )
            computed = " ".join(
                str(sum(1 for _ in enumerate_subspaces(f, n, k)))
                for k in range(n + 1)
            )
            yield _row(1, label, expected, computed)


# -- criterion 2: interval counts are (q^{d-t+1}-1)/(q-1) = 1 mod r ----------


def _random_subspace_of(
    parent: Subspace, d: int, rng: random.Random
) -> Subspace:
    f = parent.field
    n = parent.n
    while True:
        rows = []
        for _ in range(d):
            vec = [0] * n
            for row in parent.rows:
                c = rng.randrange(f.q)
                if c:
                    vec = [f.add(a, f.mul(c, b)) for a, b in zip(vec, row)]
            rows.append(vec)
        cand = canonicalize(f, n, rows)
        if cand.k == d:
            return cand


def _coordinate_span(f: Field, n: int, m: int) -> Subspace:
    rows = []
    for i in range(m):
        vec = [0] * n
        vec[i] = 1
        rows.append(vec)
    return canonicalize(f, n, rows)


def _count_between(y: Subspace, z: Subspace, t: int) -> int:
    return sum(1 for x in subspaces_of(z, t) if contains(x, y))


def _rows_interval_congruence(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    for q in (2, 3, 4):
        f = field(q)
        p = f.p
        for n in range(1, 5):
            label = f"interval-count q{q} n{n}"
            if not keep(label):
                continue
            # per-row seed: a row's draws never depend on which rows ran
            rng = random.Random(_VECTOR_SEED + 10_000 + q * 100 + n)
            bad = None
            for t in range(1, n + 1):
                for d in range(t, n + 1):
                    want = (q ** (d - t + 1) - 1) // (q - 1)
                    full = _coordinate_span(f, n, n)
                    pairs = [
                        (
                            _coordinate_span(f, n, t - 1),
                            _coordinate_span(f, n, d),
                        )
                    ]
                    for _ in range(3):
                        z = _random_subspace_of(full, d, rng)
                        y = _random_subspace_of(z, t - 1, rng)
                        pairs.append((y, z))
                    for y, z in pairs:
                        got = _count_between(y, z, t)
                        if got != want:
                            bad = f"t{t} d{d}: count {got} != {want}"
                            break
                        for r in {p, q}:
                            if got % r != 1:
                                bad = f"t{t} d{d}: {got} mod {r} != 1"
                                break
                        if bad:
                            break
                    if bad:
                        break
                if bad:
                    break
            yield _row(2, label, "ok", bad or "ok")


# -- criterion 3: minimum-support lower-bound construction -------------------


def _rows_lb_designs(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    for q in (2, 3, 4):
        for n in range(1, 6):
            for t in range(0, n):
                label = f"lower-bound-design q{q} n{n} t{t}"
                if not keep(label):
                    continue
                d = construct_lb_design(q, n, t)
                want_support = 1 + (q ** (t + 1) - 1) // (q - 1)
                bad = None
                if len(d.support) != want_support:
                    bad = f"support {len(d.support)} != {want_support}"
                else:
                    for tau in range(t, -1, -1):
                        if not verify_strength(d, tau).ok:
                            bad = f"fails at strength {tau}"
                            break
                yield _row(3, label, "ok", bad or "ok")


# -- criterion 4: k-uniform construction, default and random chains ----------


def _check_uniform_cell(q: int, n: int, k: int, t: int) -> Optional[str]:
    f = field(q)
    rng = random.Random(_CHAIN_SEED + q * 10000 + n * 100 + k * 10 + t)
    chains: list[Optional[tuple[Subspace, Subspace, Subspace]]] = [None]
    chains += [make_random_chain(f, n, k, t, rng) for _ in range(10)]
    for idx, chain in enumerate(chains):
        d = construct_uniform_design(q, n, k, t, chain=chain)
        name = "default" if idx == 0 else f"chain{idx}"
        if len(d.support) != q ** (t + 1):
            return f"{name}: support {len(d.support)} != {q ** (t + 1)}"
        if d.uniform_dim() != k:
            return f"{name}: not {k}-uniform"
        if not verify_strength(d, t).ok:
            return f"{name}: fails at strength {t} mod {q}"
        if f.p != q and not verify_strength(as_modulus(d, f.p), t).ok:
            return f"{name}: fails at strength {t} mod {f.p}"
    return None


def _rows_uniform_designs(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    for q in (2, 3, 4):
        for n in range(2, 6):
            for k in range(1, n):
                for t in range(0, k):
                    label = f"uniform-design q{q} n{n} t{t} k{k}"
                    if not keep(label):
                        continue
                    bad = _check_uniform_cell(q, n, k, t)
                    yield _row(4, label, "ok", bad or "ok")


# -- criterion 5: exact GF(2) minima -----------------------------------------


def _rows_gf2_minima(
    keep: Callable[[str], bool], budget: Optional[int]
) -> Iterable[CheckRow]:
    cells = [
        (1, 2, 3, 4, "kernel"),
        (1, 2, 4, 4, "support"),
        (1, 3, 4, 4, "kernel"),
        (1, 3, 5, 4, "support"),
        (2, 3, 4, 8, "kernel"),
        (2, 3, 5, 8, "support"),
    ]
    for t, k, n, want, mode in cells:
        label = f"gf2-min-weight q2 n{n} t{t} k{k} {mode}"
        if not keep(label):
            continue
        m = GfpMatrix.from_incidence(wilson_matrix(2, n, t, k), 2)
        rep = min_weight_kernel_gfp(m, cap=want, mode=mode, budget=budget)
        computed = f"{rep.weight_text()} exhaustive={rep.exhaustive}"
        yield _row(5, label, f"{want} exhaustive=True", computed)


# -- criterion 6: GF(2) ranks ------------------------------------------------


def _rows_gf2_ranks(
    keep: Callable[[str], bool], inject_corruption: bool
) -> Iterable[CheckRow]:
    cells = [(4, 1, 2, 11), (5, 1, 2, 16), (5, 1, 3, 26)]
    for n, t, k, want in cells:
        label = f"gf2-rank q2 n{n} t{t} k{k}"
        if not keep(label):
            continue
        m = GfpMatrix.from_incidence(wilson_matrix(2, n, t, k), 2)
        if inject_corruption:
            rows = [list(r) for r in m.entries]
            rows[0][0] ^= 1
            m = GfpMatrix.from_rows(2, rows)
        _, rank, _ = rref_gfp(m)
        yield _row(6, label, want, rank)


# -- criterion 7: full rational rank -----------------------------------------


def _rows_rational_rank(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    for q in (2, 3):
        for n in range(1, 5):
            label = f"rational-rank q{q} n{n}"
            if not keep(label):
                continue
            bad = None
            for t in range(0, n + 1):
                for k in range(t, n - t + 1):
                    m = wilson_matrix(q, n, t, k)
                    got = rank_rational(m.dense())
                    want = gaussian_binomial(n, t, q)
                    if got != want:
                        bad = f"t{t} k{k}: rank {got} != {want}"
                        break
                if bad:
                    break
            yield _row(7, label, "ok", bad or "ok")


# -- criterion 8: rational minimum support for k = t+1 ------------------------


def _rows_rational_support(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    cells = [(2, 4, 6, 6), (3, 3, 8, 8)]
    for q, n, cap, want in cells:
        label = f"rational-min-support q{q} n{n} t1 k2 cap{cap}"
        if not keep(label):
            continue
        m = wilson_matrix(q, n, 1, 2)
        rep = min_support_kernel_rational(m.dense(), cap=cap)
        yield _row(8, label, want, rep.weight_text())


# -- criterion 9: GF(3) minimum bracketed, both modes agree -------------------


def _rows_gf3_bracket(
    keep: Callable[[str], bool], budget: Optional[int]
) -> Iterable[CheckRow]:
    label = "gf3-min-weight q3 n3 t1 k2 both-modes"
    if not keep(label):
        return
    m = GfpMatrix.from_incidence(wilson_matrix(3, 3, 1, 2), 3)
    rep_k = min_weight_kernel_gfp(m, cap=9, mode="kernel", budget=budget)
    rep_s = min_weight_kernel_gfp(m, cap=9, mode="support")
    agree = (
        rep_k.weight == rep_s.weight
        and rep_k.witness_support == rep_s.witness_support
        and rep_k.witness_values == rep_s.witness_values
    )
    in_bracket = (
        rep_k.weight is not None
        and 5 <= rep_k.weight <= 9
        and rep_k.exhaustive
        and rep_s.exhaustive
    )
    computed = (
        f"weight={rep_k.weight_text()} "
        f"{'modes agree' if agree else 'modes disagree'}"
    )
    yield CheckRow(
        9,
        label,
        "weight in [5,9], modes agree",
        computed,
        agree and in_bracket,
    )


# -- criterion 10: dual-route oracle equivalence ------------------------------


def _random_sparse_vector(
    cols: int, p: int, rng: random.Random
) -> list[int]:
    c = [0] * cols
    for _ in range(rng.randint(1, 4)):
        c[rng.randrange(cols)] = rng.randrange(1, p)
    return c


def _rows_oracle_equivalence(keep: Callable[[str], bool]) -> Iterable[CheckRow]:
    for q in (2, 3, 4):
        f = field(q)
        p = f.p
        for n in range(2, 5):
            label = f"oracle-equivalence q{q} n{n}"
            if not keep(label):
                continue
            rng = random.Random(_VECTOR_SEED + q * 100 + n)
            bad = None
            for t in range(0, n + 1):
                for k in range(t, n + 1):
                    m = wilson_matrix(q, n, t, k)
                    col_subs = m.col_subspaces()
                    row_subs = m.row_subspaces()
                    for _ in range(100):
                        c = _random_sparse_vector(m.cols, p, rng)
                        got = apply_check(m, c, p)
                        support = {
                            col_subs[j]: v for j, v in enumerate(c) if v % p
                        }
                        design = NullDesign(f, n, p, 0, support)
                        want = [
                            sum_over_superspaces(design, y) for y in row_subs
                        ]
                        if got != want:
                            bad = f"t{t} k{k}: matrix/superspace mismatch"
                            break
                        va = verify_strength(design, t)
                        vb = verify_strength_direct(design, t)
                        if va != vb:
                            bad = f"t{t} k{k}: verifier mismatch"
                            break
                    if bad:
                        break
                if bad:
                    break
            yield _row(10, label, "ok", bad or "ok")


# -- grid driver ---------------------------------------------------------------


def run_grid(
    only: Optional[str] = None,
    inject_corruption: bool = False,
    budget: Optional[int] = None,
    threads: int = 1,
) -> list[CheckRow]:
    """All reproduction rows, optionally filtered by a label substring.

    Filtered-out rows are skipped before any computation, and every row's
    random draws are seeded per row, so a row's content never depends on
    which other rows ran.  threads is accepted for interface stability;
    every row is deterministic and the output never depends on it.
    """
    del threads

    def keep(label: str) -> bool:
        return only is None or only in label

    sources: list[Callable[[], Iterable[CheckRow]]] = [
        lambda: _rows_counts(keep),
        lambda: _rows_interval_congruence(keep),
        lambda: _rows_lb_designs(keep),
        lambda: _rows_uniform_designs(keep),
        lambda: _rows_gf2_minima(keep, budget),
        lambda: _rows_gf2_ranks(keep, inject_corruption),
        lambda: _rows_rational_rank(keep),
        lambda: _rows_rational_support(keep),
        lambda: _rows_gf3_bracket(keep, budget),
        lambda: _rows_oracle_equivalence(keep),
    ]
    return [row for source in sources for row in source()]


def format_rows(rows: list[CheckRow]) -> str:
    lines = []
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        lines.append(
            f"[{status}] c{r.criterion:>2} {r.label:<44} "
            f"expected: {r.expected}  computed: {r.computed}"
        )
    failures = sum(1 for r in rows if not r.ok)
    lines.append(f"{len(rows)} checks, {failures} failures")
    return "\n".join(lines) + "\n"


def rows_to_records(rows: list[CheckRow]) -> list[dict]:
    return [
        {
            "criterion": r.criterion,
            "label": r.label,
            "expected": r.expected,
            "computed": r.computed,
            "status": "PASS" if r.ok else "FAIL",
        }
        for r in rows
    ]
