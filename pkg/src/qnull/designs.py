"""Null designs on the subspace lattice: verification, strength, constructions.

A design is a finitely supported map from subspaces of dimension >= t to
nonzero residues mod r, where r is a power of the field characteristic.  It
has strength t when, for every t-dimensional y, the coefficients of the
support elements containing y sum to zero mod r.

Two verifiers are provided on purpose: verify_strength scatters each support
element's coefficient onto its own t-dimensional subspaces (fast, touches
only reachable y), while verify_strength_direct walks all of J_q(n,t) and
sums superspace coefficients per y.  They are independent code paths and are
held equal by tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional

from .fields import Field, field
from .grassmann import (
    Subspace,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    index_of,
    subspace_from_text,
    subspace_to_text,
    subspaces_of,
)

__all__ = [
    "NullDesign",
    "Verdict",
    "sum_over_superspaces",
    "verify_strength",
    "verify_strength_direct",
    "check_constant_sum",
    "strength_of",
    "construct_lb_design",
    "construct_uniform_design",
    "as_modulus",
    "make_random_chain",
    "write_design",
    "read_design",
]


def _is_power(r: int, p: int) -> bool:
    if r < 1:
        return False
    while r % p == 0:
        r //= p
    return r == 1


class NullDesign:
    """Immutable finitely-supported coefficient map on subspaces of dim >= t_claimed."""

    __slots__ = ("field", "n", "r", "t_claimed", "support", "_sorted")

    def __init__(
        self,
        f: Field,
        n: int,
        r: int,
        t_claimed: int,
        support: Mapping[Subspace, int],
    ):
        if not _is_power(r, f.p) or not 2 <= r <= f.q:
            raise ValueError(f"modulus {r} must be a power of {f.p} in [2, {f.q}]")
        if not 0 <= t_claimed <= n:
            raise ValueError(f"claimed strength {t_claimed} out of range for n={n}")
        cleaned: dict[Subspace, int] = {}
        for x, c in support.items():
            if x.field is not f or x.n != n:
                raise ValueError("support subspace from a different ambient space")
            if x.k < t_claimed:
                raise ValueError(
                    f"support contains a {x.k}-dimensional subspace, below "
                    f"claimed strength {t_claimed}"
                )
            c %= r
            if c:
                cleaned[x] = c
        self.field = f
        self.n = n
        self.r = r
        self.t_claimed = t_claimed
        self.support = MappingProxyType(cleaned)
        self._sorted = None

    def items_sorted(self) -> list[tuple[Subspace, int]]:
        """Support items ordered by (dimension, enumeration ordinal)."""
        if self._sorted is None:
            self._sorted = sorted(
                self.support.items(), key=lambda xc: (xc[0].k, index_of(xc[0]))
            )
        return list(self._sorted)

    def uniform_dim(self) -> Optional[int]:
        """The common support dimension if the design is uniform, else None."""
        dims = {x.k for x in self.support}
        if len(dims) == 1:
            return dims.pop()
        return None

    def is_void(self) -> bool:
        return not self.support

    def __repr__(self) -> str:
        return (
            f"NullDesign(q={self.field.q}, n={self.n}, r={self.r}, "
            f"t={self.t_claimed}, |support|={len(self.support)})"
        )


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple[tuple[Subspace, int], ...]  # (y, nonzero sum), ordinal order


def sum_over_superspaces(design: NullDesign, y: Subspace) -> int:
    """The containment sum at y: coefficients of support elements above y, mod r."""
    if y.field is not design.field or y.n != design.n:
        raise ValueError("query subspace from a different ambient space")
    total = 0
    for x, c in design.support.items():
        if contains(x, y):
            total += c
    return total % design.r


def _check_domain(design: NullDesign, t: int) -> None:
    if not 0 <= t <= design.n:
        raise ValueError(f"strength {t} out of range for n={design.n}")
    low = [x for x in design.support if x.k < t]
    if low:
        raise ValueError(
            f"support contains dimension-{min(x.k for x in low)} subspaces; "
            f"the design is not defined on strata below {t}"
        )


def verify_strength(design: NullDesign, t: int) -> Verdict:
    """Check the strength-t condition at every t-dimensional subspace.

    Scatter formulation: only y below some support element can have a nonzero
    sum, so accumulate per support element and report the nonzero cells.
    """
    _check_domain(design, t)
    acc: dict[Subspace, int] = {}
    for x, c in design.support.items():
        for y in subspaces_of(x, t):
            acc[y] = acc.get(y, 0) + c
    r = design.r
    bad = [(index_of(y), y, v % r) for y, v in acc.items() if v % r]
    bad.sort(key=lambda item: item[0])
    return Verdict(ok=not bad, violations=tuple((y, v) for _, y, v in bad))


def verify_strength_direct(design: NullDesign, t: int) -> Verdict:
    """Reference verifier: enumerate all of J_q(n,t) and sum per element."""
    _check_domain(design, t)
    bad = []
    for y in enumerate_subspaces(design.field, design.n, t):
        v = sum_over_superspaces(design, y)
        if v:
            bad.append((y, v))
    return Verdict(ok=not bad, violations=tuple(bad))


def check_constant_sum(design: NullDesign, t: int) -> Optional[int]:
    """The common value of the containment sum over all of J(t), or None.

    Uses the scatter accumulator: subspaces never touched have sum 0, so the
    sums are constant iff the touched values are all equal and either that
    value is 0 or the touched set is all of J(t).
    """
    _check_domain(design, t)
    acc: dict[Subspace, int] = {}
    for x, c in design.support.items():
        for y in subspaces_of(x, t):
            acc[y] = acc.get(y, 0) + c
    r = design.r
    values = {v % r for v in acc.values()}
    total = gaussian_binomial(design.n, t, design.field.q)
    if not acc:
        return 0
    if len(values) > 1:
        return None
    value = values.pop()
    if value == 0 or len(acc) == total:
        return value
    return None


def strength_of(design: NullDesign, t_max: int) -> Optional[int]:
    """Largest t <= t_max at which the design verifies; None if even t=0 fails.

    Valid as an upward scan because strength is downward closed.
    """
    if design.is_void():
        return t_max
    limit = min(t_max, min(x.k for x in design.support))
    best: Optional[int] = None
    for t in range(limit + 1):
        if verify_strength(design, t).ok:
            best = t
        else:
            break
    return best


def _coordinate_span(f: Field, n: int, m: int) -> Subspace:
    """span(e_1..e_m): identity-prefix basis, already canonical."""
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(n)) for i in range(m)
    )
    return Subspace(f, n, rows)


def construct_lb_design(q: int, n: int, t: int, r: Optional[int] = None) -> NullDesign:
    """Minimal-support non-void design of strength t.

    One (t+1)-dimensional subspace carries coefficient 1 and each of its
    t-dimensional subspaces carries -1; the support size is
    1 + (q^{t+1}-1)/(q-1) and cannot be beaten by any non-void design of
    strength t.
    """
    f = field(q)
    if not 0 <= t < n:
        raise ValueError(f"need 0 <= t < n, got t={t}, n={n}")
    if r is None:
        r = f.p
    v = _coordinate_span(f, n, t + 1)
    support: dict[Subspace, int] = {v: 1}
    for u in subspaces_of(v, t):
        support[u] = r - 1
    design = NullDesign(f, n, r, t, support)
    expected = 1 + gaussian_binomial(t + 1, t, q)
    if len(design.support) != expected:
        raise RuntimeError(
            f"support size {len(design.support)} != expected {expected}"
        )
    return design


def construct_uniform_design(
    q: int,
    n: int,
    k: int,
    t: int,
    chain: Optional[tuple[Subspace, Subspace, Subspace]] = None,
) -> NullDesign:
    """k-uniform strength-t design with q^{t+1} nonzeros, coefficients mod q.

    Given a chain u < v < w of dimensions k-t-1, k-t, k+1, the design is the
    0/1 indicator of the k-dimensional x with u < x < w minus those with
    v < x < w.  Any valid chain works; the default is the coordinate chain.
    """
    f = field(q)
    if not (0 <= t < k < n):
        raise ValueError(f"need 0 <= t < k < n, got t={t}, k={k}, n={n}")
    if chain is None:
        u = _coordinate_span(f, n, k - t - 1)
        v = _coordinate_span(f, n, k - t)
        w = _coordinate_span(f, n, k + 1)
    else:
        u, v, w = chain
        if (u.k, v.k, w.k) != (k - t - 1, k - t, k + 1):
            raise ValueError(
                f"chain dimensions {(u.k, v.k, w.k)} != "
                f"{(k - t - 1, k - t, k + 1)}"
            )
        if not (contains(v, u) and contains(w, v)):
            raise ValueError("chain is not nested: need u <= v <= w")
        if u.n != n or v.n != n or w.n != n:
            raise ValueError("chain lives in the wrong ambient dimension")
    upper = 0
    lower = 0
    support: dict[Subspace, int] = {}
    for x in subspaces_of(w, k):
        if contains(x, u):
            upper += 1
            if contains(x, v):
                lower += 1
            else:
                support[x] = 1
    if upper != gaussian_binomial(t + 2, t + 1, q) or lower != gaussian_binomial(
        t + 1, t, q
    ):
        raise RuntimeError(
            f"interval counts ({upper}, {lower}) do not match the chain quotients"
        )
    design = NullDesign(f, n, q, t, support)
    if len(design.support) != q ** (t + 1):
        raise RuntimeError(
            f"support size {len(design.support)} != q^(t+1) = {q ** (t + 1)}"
        )
    return design


def as_modulus(design: NullDesign, r: int) -> NullDesign:
    """Reinterpret the coefficients mod a different power of p (zeros drop)."""
    return NullDesign(
        design.field, design.n, r, design.t_claimed, dict(design.support)
    )


def make_random_chain(
    f: Field, n: int, k: int, t: int, rng: random.Random
) -> tuple[Subspace, Subspace, Subspace]:
    """A uniformly arbitrary valid chain u < v < w for construct_uniform_design."""
    from .grassmann import canonicalize

    def random_subspace_of(parent: Subspace, d: int) -> Subspace:
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

    full = _coordinate_span(f, n, n)
    w = random_subspace_of(full, k + 1)
    u = random_subspace_of(w, k - t - 1)
    while True:
        vec = [0] * n
        for row in w.rows:
            c = rng.randrange(f.q)
            if c:
                vec = [f.add(a, f.mul(c, b)) for a, b in zip(vec, row)]
        v = canonicalize(f, n, list(u.rows) + [vec])
        if v.k == k - t:
            return u, v, w


# -- file format -----------------------------------------------------------
# header `q n r t_claimed`, then one `dim|subspace-text|coeff` line per
# support element, sorted by (dim, ordinal).

def write_design(design: NullDesign) -> str:
    lines = [f"{design.field.q} {design.n} {design.r} {design.t_claimed}"]
    for x, c in design.items_sorted():
        lines.append(f"{x.k}|{subspace_to_text(x)}|{c}")
    return "\n".join(lines) + "\n"


def read_design(text: str) -> NullDesign:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty design file")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError(f"bad header {lines[0]!r}, expected 'q n r t_claimed'")
    q, n, r, t_claimed = map(int, head)
    f = field(q)
    support: dict[Subspace, int] = {}
    for ln in lines[1:]:
        parts = ln.split("|")
        if len(parts) != 3:
            raise ValueError(f"bad design line {ln!r}")
        dim, text_part, coeff = int(parts[0]), parts[1], int(parts[2])
        x = subspace_from_text(f, n, text_part)
        if x.k != dim:
            raise ValueError(f"line {ln!r}: stated dim {dim} but parsed dim {x.k}")
        if x in support:
            raise ValueError(f"duplicate support element {text_part!r}")
        support[x] = coeff
    return NullDesign(f, n, r, t_claimed, support)
