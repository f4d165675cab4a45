"""Exact arithmetic in GF(p^s) for small prime powers.

Elements are integer codes in [0, q).  The code's base-p digits c_0..c_{s-1}
are the coefficients of the polynomial sum(c_i x^i), so code 0 is the zero
element, code 1 the one element, and code p the class of x.  For s > 1 the
quotient modulus comes from a fixed table so that encodings are reproducible;
the table entry is re-verified (irreducible and primitive) at construction
instead of being trusted.

Arithmetic is table-driven: a Field instance precomputes full add/mul/inv
tables at construction, which keeps inner loops at list-indexing cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = ["Field", "GfElement", "field", "gf_add", "gf_mul", "gf_inv"]

# Modulus polynomials for the non-prime orders, low degree first:
# GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+2x+2, GF(16): x^4+x+1,
# GF(25): x^2+4x+2, GF(27): x^3+2x+1.
_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
}


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p^s and p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    s = 0
    m = q
    while m % p == 0:
        m //= p
        s += 1
    if m != 1 or not _is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return p, s


def _poly_digits(code: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        out.append(code % p)
        code //= p
    return out


def _poly_code(digits: list[int], p: int) -> int:
    c = 0
    for d in reversed(digits):
        c = c * p + d
    return c


def _poly_mul_mod(a: int, b: int, p: int, s: int, modulus: tuple[int, ...]) -> int:
    """Multiply element codes a, b as polynomials, reduce by the monic modulus."""
    da = _poly_digits(a, p, s)
    db = _poly_digits(b, p, s)
    prod = [0] * (2 * s - 1)
    for i, ai in enumerate(da):
        if ai:
            for j, bj in enumerate(db):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: x^s = -(modulus[0] + modulus[1] x + ... + modulus[s-1] x^{s-1})
    for deg in range(2 * s - 2, s - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for i in range(s):
                prod[deg - s + i] = (prod[deg - s + i] - c * modulus[i]) % p
    return _poly_code(prod[:s], p)


class Field:
    """GF(p^s) with precomputed operation tables.

    Use :func:`field` to get the cached instance for an order; instances from
    the cache are canonical, so identity comparison between them is safe.
    """

    __slots__ = ("p", "s", "q", "modulus", "_add", "_mul", "_inv", "_neg")

    #: orders that must be available; larger ones work if a modulus is listed
    REQUIRED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

    def __init__(self, q: int):
        p, s = _factor_prime_power(q)
        self.p = p
        self.s = s
        self.q = q
        if s == 1:
            self.modulus: tuple[int, ...] = ()
        else:
            if q not in _MODULI:
                raise ValueError(f"no modulus polynomial on record for GF({q})")
            self.modulus = _MODULI[q]
            self._check_modulus()
        self._build_tables()

    def _check_modulus(self) -> None:
        """Re-verify the tabled modulus: monic, irreducible, primitive."""
        p, s, mod = self.p, self.s, self.modulus
        if len(mod) != s + 1 or mod[s] != 1:
            raise ValueError(
                f"modulus for GF({self.q}) must be monic of degree {s}"
            )
        full = mod  # all s+1 coefficients, low degree first

        def poly_mod(dividend: list[int], divisor: list[int]) -> list[int]:
            rem = dividend[:]
            dd = len(divisor) - 1
            lead_inv = pow(divisor[-1], p - 2, p)
            for i in range(len(rem) - 1, dd - 1, -1):
                if rem[i]:
                    f = rem[i] * lead_inv % p
                    for j in range(dd + 1):
                        rem[i - dd + j] = (rem[i - dd + j] - f * divisor[j]) % p
            return rem[:dd]

        # irreducible: no monic divisor of degree 1..s-1 (brute force; the
        # search space is at most p^(s-1) * (s-1) polynomials for q <= 27)
        for deg in range(1, s):
            for tail in range(p**deg):
                divisor = _poly_digits(tail, p, deg) + [1]
                if not any(poly_mod(list(full), divisor)):
                    raise ValueError(
                        f"modulus for GF({self.q}) is reducible: "
                        f"divisible by degree-{deg} polynomial {divisor}"
                    )
        # primitive: the class of x (code p) has multiplicative order q-1
        order = 1
        acc = p % self.q
        while acc != 1:
            acc = _poly_mul_mod(acc, p, p, s, mod)
            order += 1
            if order > self.q:
                raise ValueError(f"modulus for GF({self.q}): x is not invertible")
        if order != self.q - 1:
            raise ValueError(
                f"modulus for GF({self.q}) is not primitive: x has order {order}"
            )

    def _build_tables(self) -> None:
        p, s, q = self.p, self.s, self.q
        if s == 1:
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self._add = [
                [
                    _poly_code(
                        [
                            (x + y) % p
                            for x, y in zip(
                                _poly_digits(a, p, s), _poly_digits(b, p, s)
                            )
                        ],
                        p,
                    )
                    for b in range(q)
                ]
                for a in range(q)
            ]
            self._mul = [
                [_poly_mul_mod(a, b, p, s, self.modulus) for b in range(q)]
                for a in range(q)
            ]
        self._neg = [0] * q
        for a in range(q):
            for b in range(q):
                if self._add[a][b] == 0:
                    self._neg[a] = b
                    break
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
            else:
                raise ValueError(f"element {a} has no inverse in GF({q})")

    # -- arithmetic on int codes ------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return self._inv[a]

    def element(self, code: int) -> "GfElement":
        return GfElement(self, code)

    def __repr__(self) -> str:
        return f"Field(GF({self.q}))"

    def describe(self) -> str:
        """Human-readable field line for report headers."""
        if self.s == 1:
            return f"GF({self.q})"
        terms = []
        for i in range(self.s, -1, -1):
            c = 1 if i == self.s else self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        return f"GF({self.q}) = GF({self.p})[x]/({' + '.join(terms)})"


@lru_cache(maxsize=None)
def field(q: int) -> Field:
    """The canonical Field instance of order q (cached, safe to compare by id)."""
    return Field(q)


@dataclass(frozen=True, slots=True)
class GfElement:
    """A field element: a code in [0, q) tied to its field."""

    field: Field
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.q:
            raise ValueError(f"code {self.code} out of range for GF({self.field.q})")


def _same_field(a: GfElement, b: GfElement) -> Field:
    if a.field is not b.field:
        raise ValueError(f"mismatched fields: {a.field!r} vs {b.field!r}")
    return a.field


def gf_add(a: GfElement, b: GfElement) -> GfElement:
    f = _same_field(a, b)
    return GfElement(f, f.add(a.code, b.code))


def gf_mul(a: GfElement, b: GfElement) -> GfElement:
    f = _same_field(a, b)
    return GfElement(f, f.mul(a.code, b.code))


def gf_inv(a: GfElement) -> GfElement:
    return GfElement(a.field, a.field.inv(a.code))
