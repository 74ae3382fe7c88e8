"""Exact arithmetic over F_3: vectors, subspaces, GF(3^k) and Eisenstein integers.

All vectors use little-endian base-3 ranks: coordinate 0 is the least
significant digit, so ``rank(v) = sum(v[i] * 3**i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

MAX_N = 16
MAX_M = 8


def check_dims(n: int, m: int = 1) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n={n} outside supported range 1..{MAX_N}")
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m={m} outside supported range 1..{MAX_M}")


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TernaryVector:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c not in (0, 1, 2) for c in self.coords):
            raise ValueError(f"coordinates must lie in {{0,1,2}}: {self.coords}")

    @classmethod
    def of(cls, *coords: int) -> TernaryVector:
        return cls(tuple(int(c) % 3 for c in coords))

    @classmethod
    def zero(cls, n: int) -> TernaryVector:
        return cls((0,) * n)

    @classmethod
    def unit(cls, i: int, n: int) -> TernaryVector:
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.coords)

    @cached_property
    def rank(self) -> int:
        return vec_to_rank(self)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def _same_dim(self, other: TernaryVector) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: TernaryVector) -> TernaryVector:
        self._same_dim(other)
        return TernaryVector(tuple((a + b) % 3 for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: TernaryVector) -> TernaryVector:
        self._same_dim(other)
        return TernaryVector(tuple((a - b) % 3 for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> TernaryVector:
        return TernaryVector(tuple((-a) % 3 for a in self.coords))

    def scale(self, c: int) -> TernaryVector:
        return TernaryVector(tuple((c * a) % 3 for a in self.coords))

    def __rmul__(self, c: int) -> TernaryVector:
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def rank_to_vec(rank: int, n: int) -> TernaryVector:
    if not 0 <= rank < 3**n:
        raise ValueError(f"rank {rank} out of range for n={n}")
    coords = []
    for _ in range(n):
        rank, d = divmod(rank, 3)
        coords.append(d)
    return TernaryVector(tuple(coords))


def vec_to_rank(v: TernaryVector | Sequence[int]) -> int:
    r = 0
    for c in reversed(tuple(v)):
        r = 3 * r + c
    return r


def dot(u: TernaryVector, v: TernaryVector) -> int:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v)) % 3


# Vectorised rank arithmetic. These operate on numpy arrays of ranks and are
# the workhorses of the spectral criteria.


def powers3(n: int) -> np.ndarray:
    return 3 ** np.arange(n, dtype=np.int64)


def digits(ranks: np.ndarray | int, n: int) -> np.ndarray:
    """Base-3 digits of ``ranks``; the last axis is the coordinate index."""
    r = np.asarray(ranks, dtype=np.int64)
    return (r[..., None] // powers3(n)) % 3


def from_digits(d: np.ndarray) -> np.ndarray:
    return (np.asarray(d, dtype=np.int64) % 3) @ powers3(d.shape[-1])


def all_digits(n: int) -> np.ndarray:
    """(3^n, n) int8 array of every vector in rank order."""
    return digits(np.arange(3**n), n).astype(np.int8)


def add_ranks(a: np.ndarray | int, b: np.ndarray | int, n: int) -> np.ndarray:
    return from_digits(digits(a, n) + digits(b, n))


def sub_ranks(a: np.ndarray | int, b: np.ndarray | int, n: int) -> np.ndarray:
    return from_digits(digits(a, n) + 2 * digits(b, n))


def neg_ranks(a: np.ndarray | int, n: int) -> np.ndarray:
    return from_digits(2 * digits(a, n))


def scale_ranks(c: int, a: np.ndarray | int, n: int) -> np.ndarray:
    return from_digits((c % 3) * digits(a, n))


def dot_table(n: int, vectors: np.ndarray | None = None) -> np.ndarray:
    """Matrix of inner products ``u.x mod 3`` for u in ``vectors`` (ranks) and all x."""
    X = all_digits(n).astype(np.int64)
    U = X if vectors is None else digits(vectors, n)
    return ((U @ X.T) % 3).astype(np.int8)


# ---------------------------------------------------------------------------
# Eisenstein integers
# ---------------------------------------------------------------------------


def _checked(v: int) -> int:
    if not INT64_MIN <= v <= INT64_MAX:
        raise OverflowError(f"Eisenstein component {v} exceeds signed 64-bit range")
    return v


@dataclass(frozen=True)
class EisensteinInt:
    """The algebraic integer ``re_unit + om_unit*w`` with ``w = exp(2*pi*i/3)``."""

    re_unit: int
    om_unit: int

    def __post_init__(self) -> None:
        _checked(self.re_unit)
        _checked(self.om_unit)

    @classmethod
    def coerce(cls, x: EisensteinInt | int) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, (int, np.integer)):
            return cls(int(x), 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to EisensteinInt")

    def __add__(self, other: EisensteinInt | int) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.re_unit + o.re_unit, self.om_unit + o.om_unit)

    __radd__ = __add__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.re_unit, -self.om_unit)

    def __sub__(self, other: EisensteinInt | int) -> EisensteinInt:
        return self + (-EisensteinInt.coerce(other))

    def __rsub__(self, other: int) -> EisensteinInt:
        return EisensteinInt.coerce(other) - self

    def __mul__(self, other: EisensteinInt | int) -> EisensteinInt:
        return eis_mul(self, EisensteinInt.coerce(other))

    __rmul__ = __mul__

    def conj(self) -> EisensteinInt:
        return EisensteinInt(self.re_unit - self.om_unit, -self.om_unit)

    def norm(self) -> int:
        a, b = self.re_unit, self.om_unit
        return _checked(a * a - a * b + b * b)

    def two_re(self) -> int:
        return 2 * self.re_unit - self.om_unit

    def is_zero(self) -> bool:
        return self.re_unit == 0 and self.om_unit == 0

    def divmod_int(self, d: int) -> tuple[EisensteinInt, bool]:
        """Quotient by a rational integer and whether the division was exact."""
        qa, ra = divmod(self.re_unit, d)
        qb, rb = divmod(self.om_unit, d)
        return EisensteinInt(qa, qb), ra == 0 and rb == 0

    def unit_exponent(self) -> int | None:
        """j with ``self == w**j``, or None when self is not a power of w."""
        for j in range(3):
            if self == zeta_pow(j):
                return j
        return None

    def __complex__(self) -> complex:
        w = complex(-0.5, 3**0.5 / 2)
        return self.re_unit + self.om_unit * w

    def __str__(self) -> str:
        return f"{self.re_unit}{self.om_unit:+d}w"


def eis_mul(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    a, b, c, d = x.re_unit, x.om_unit, y.re_unit, y.om_unit
    return EisensteinInt(_checked(a * c - b * d), _checked(a * d + b * c - b * d))


_ZETA = ((1, 0), (0, 1), (-1, -1))


def zeta_pow(j: int) -> EisensteinInt:
    return EisensteinInt(*_ZETA[j % 3])


ZETA_RE = np.array([1, 0, -1], dtype=np.int64)
ZETA_OM = np.array([0, 1, -1], dtype=np.int64)


# ---------------------------------------------------------------------------
# Subspaces of F_3^n
# ---------------------------------------------------------------------------


def _row_reduce(rows: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Reduced row echelon form over F_3 (rows of zeros dropped)."""
    M = [[c % 3 for c in r] for r in rows]
    col = 0
    r = 0
    while r < len(M) and col < n:
        p = next((i for i in range(r, len(M)) if M[i][col]), None)
        if p is None:
            col += 1
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][col]  # 1 and 2 are self-inverse mod 3
        M[r] = [(inv * c) % 3 for c in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [(a - f * b) % 3 for a, b in zip(M[i], M[r])]
        r += 1
        col += 1
    return [row for row in M[:r] if any(row)]


@dataclass(frozen=True)
class SubspaceSpec:
    ambient_n: int
    basis: tuple[TernaryVector, ...]

    def __post_init__(self) -> None:
        for v in self.basis:
            if v.n != self.ambient_n:
                raise ValueError("basis vector has wrong dimension")
        if len(_row_reduce([v.coords for v in self.basis], self.ambient_n)) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def span(cls, n: int, vectors: Iterable[TernaryVector]) -> SubspaceSpec:
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        rows = _row_reduce([v.coords for v in vectors], n)
        return cls(n, tuple(TernaryVector(tuple(r)) for r in rows))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> SubspaceSpec:
        return cls(n, tuple(TernaryVector.unit(i, n) for i in indices))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return 3**self.dim

    def __contains__(self, v: TernaryVector) -> bool:
        rows = [b.coords for b in self.basis] + [v.coords]
        return len(_row_reduce(rows, self.ambient_n)) == self.dim

    def element_ranks(self) -> np.ndarray:
        """Sorted ranks of all 3^dim elements."""
        if self.dim == 0:
            return np.zeros(1, dtype=np.int64)
        B = np.array([b.coords for b in self.basis], dtype=np.int64)
        coeffs = all_digits(self.dim).astype(np.int64)
        return np.sort(from_digits(coeffs @ B))

    def indicator(self) -> np.ndarray:
        out = np.zeros(3**self.ambient_n, dtype=np.int8)
        out[self.element_ranks()] = 1
        return out

    def same_as(self, other: SubspaceSpec) -> bool:
        return (
            self.ambient_n == other.ambient_n
            and self.dim == other.dim
            and all(v in self for v in other.basis)
        )


def dual_subspace(E: SubspaceSpec) -> SubspaceSpec:
    """Orthogonal complement under the standard inner product."""
    n = E.ambient_n
    rref = _row_reduce([b.coords for b in E.basis], n)
    pivot_cols = [next(j for j, c in enumerate(row) if c) for row in rref]
    free = [j for j in range(n) if j not in pivot_cols]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for row, pc in zip(rref, pivot_cols):
            v[pc] = (-row[fcol]) % 3
        basis.append(TernaryVector(tuple(v)))
    return SubspaceSpec(n, tuple(basis))


# ---------------------------------------------------------------------------
# GF(3^k)
# ---------------------------------------------------------------------------

# Conway polynomials for p = 3, low-degree coefficient first (monic term omitted).
CONWAY_POLYNOMIALS: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (2, 2),
    3: (1, 2, 0),
    4: (2, 0, 0, 2),
    5: (1, 2, 0, 0, 0),
    6: (2, 2, 1, 0, 2, 0),
    7: (1, 0, 2, 0, 0, 0, 0),
    8: (2, 2, 2, 0, 1, 2, 0, 0),
}


@dataclass(frozen=True)
class ExtFieldElem:
    """Element of GF(3^k) in the polynomial basis modulo the Conway polynomial."""

    k: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k not in CONWAY_POLYNOMIALS:
            raise ValueError(f"no modulus recorded for k={self.k}")
        if len(self.coeffs) != self.k or any(c not in (0, 1, 2) for c in self.coeffs):
            raise ValueError(f"bad coefficients {self.coeffs} for k={self.k}")

    @classmethod
    def from_rank(cls, k: int, rank: int) -> ExtFieldElem:
        return cls(k, rank_to_vec(rank, k).coords)

    @classmethod
    def one(cls, k: int) -> ExtFieldElem:
        return cls(k, (1,) + (0,) * (k - 1))

    @property
    def rank(self) -> int:
        return vec_to_rank(self.coeffs)

    def __add__(self, other: ExtFieldElem) -> ExtFieldElem:
        return ExtFieldElem(self.k, tuple((a + b) % 3 for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: ExtFieldElem) -> ExtFieldElem:
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        low = CONWAY_POLYNOMIALS[k]
        # X^k = -(low part)
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % 3
            if c:
                prod[d] = 0
                for i, lc in enumerate(low):
                    prod[d - k + i] -= c * lc
        return ExtFieldElem(k, tuple(c % 3 for c in prod[:k]))

    def __pow__(self, e: int) -> ExtFieldElem:
        result = ExtFieldElem.one(self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def field_trace(x: ExtFieldElem) -> int:
    """Absolute trace ``x + x^3 + ... + x^(3^(k-1))``."""
    acc = ExtFieldElem(x.k, (0,) * x.k)
    term = x
    for _ in range(x.k):
        acc = acc + term
        term = term**3
    if any(acc.coeffs[1:]):
        raise ArithmeticError("trace did not land in F_3; modulus is not irreducible")
    return acc.coeffs[0]


class ExtField:
    """Table-driven GF(3^k) for bulk (vectorised) products and traces."""

    def __init__(self, k: int) -> None:
        if k not in CONWAY_POLYNOMIALS:
            raise ValueError(f"no modulus recorded for k={k}")
        self.k = k
        self.q = 3**k
        gen = ExtFieldElem(k, (0, 1) + (0,) * (k - 2)) if k > 1 else ExtFieldElem(1, (2,))
        antilog = np.zeros(self.q - 1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = ExtFieldElem.one(k)
        for e in range(self.q - 1):
            r = x.rank
            if log[r] != -1:
                raise ArithmeticError(f"modulus for k={k} is not primitive")
            antilog[e] = r
            log[r] = e
            x = x * gen
        self.log = log
        self.antilog = antilog
        # trace is F_3-linear: tr(sum c_i X^i) = sum c_i tr(X^i)
        self.trace_basis = np.array(
            [field_trace(ExtFieldElem.from_rank(k, 3**i)) for i in range(k)], dtype=np.int64
        )

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        e = (self.log[np.where(nz, a, 1)] + self.log[np.where(nz, b, 1)]) % (self.q - 1)
        return np.where(nz, self.antilog[e], 0)

    def trace(self, a: np.ndarray) -> np.ndarray:
        return (digits(a, self.k) @ self.trace_basis) % 3
