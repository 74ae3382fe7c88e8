"""Exhaustive value tables of (n,m)-functions and the TFT/1 text format."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, TextIO

import numpy as np

from .gf3 import TernaryVector, check_dims, digits, from_digits, rank_to_vec


def log3(size: int) -> int:
    n = 0
    while 3**n < size:
        n += 1
    if 3**n != size:
        raise ValueError(f"{size} is not a power of 3")
    return n


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """F: F_3^n -> F_3^m stored as the rank of F(x) for every input rank x."""

    n: int
    m: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        check_dims(self.n, self.m)
        t = np.array(self.table, dtype=np.int64)
        if t.shape != (3**self.n,):
            raise ValueError(f"table must have exactly 3^{self.n} entries, got {t.shape}")
        if t.size and (t.min() < 0 or t.max() >= 3**self.m):
            raise ValueError(f"entries must be ranks below 3^{self.m}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_components(cls, comps: list[np.ndarray]) -> FunctionTable:
        """Assemble from m coordinate functions (coordinate 0 first)."""
        arr = np.stack([np.asarray(c, dtype=np.int64) % 3 for c in comps], axis=-1)
        return cls(log3(arr.shape[0]), len(comps), from_digits(arr))

    @classmethod
    def from_callable(cls, n: int, m: int, fn: Callable[[TernaryVector], int]) -> FunctionTable:
        return cls(n, m, np.array([fn(rank_to_vec(r, n)) for r in range(3**n)]))

    @property
    def size(self) -> int:
        return 3**self.n

    @property
    def digest(self) -> str:
        h = hashlib.sha1(f"{self.n},{self.m};".encode())
        h.update(self.table.tobytes())
        return h.hexdigest()

    def coordinates(self) -> np.ndarray:
        """(3^n, m) array of output coordinates."""
        return digits(self.table, self.m)

    def coordinate(self, i: int) -> np.ndarray:
        return (self.table // 3**i) % 3

    def component(self, mu: int | TernaryVector) -> np.ndarray:
        """Values of the component mu.F as an int8 array over input ranks."""
        mu_rank = mu.rank if isinstance(mu, TernaryVector) else int(mu)
        if not 0 <= mu_rank < 3**self.m:
            raise ValueError(f"mu rank {mu_rank} out of range for m={self.m}")
        mu_d = digits(mu_rank, self.m)
        return ((self.coordinates() @ mu_d) % 3).astype(np.int8)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.n == other.n and self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.digest)


def scalar_function(values: np.ndarray) -> FunctionTable:
    v = np.asarray(values, dtype=np.int64) % 3
    return FunctionTable(log3(v.size), 1, v)


def random_function(n: int, m: int, rng: np.random.Generator, zero_at_origin: bool = True) -> FunctionTable:
    t = rng.integers(0, 3**m, size=3**n)
    if zero_at_origin:
        t[0] = 0
    return FunctionTable(n, m, t)


# ---------------------------------------------------------------------------
# TFT/1
# ---------------------------------------------------------------------------


class TFTFormatError(ValueError):
    pass


def write_tft(F: FunctionTable, fh: TextIO) -> None:
    fh.write(f"tft 1 {F.n} {F.m}\n")
    coords = F.coordinates()[:, ::-1]  # most significant output coordinate first
    for row in coords:
        fh.write("".join(map(str, row)) + "\n")


def read_tft(fh: TextIO) -> FunctionTable:
    header = fh.readline().split()
    if len(header) != 4 or header[:2] != ["tft", "1"]:
        raise TFTFormatError(f"bad TFT header: {' '.join(header)!r}")
    try:
        n, m = int(header[2]), int(header[3])
    except ValueError as exc:
        raise TFTFormatError("non-integer dimensions in header") from exc
    lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) != 3**n:
        raise TFTFormatError(f"expected {3**n} value lines, found {len(lines)}")
    table = np.empty(3**n, dtype=np.int64)
    for i, ln in enumerate(lines):
        if len(ln) != m or any(c not in "012" for c in ln):
            raise TFTFormatError(f"line {i + 2}: expected {m} base-3 digits, got {ln!r}")
        table[i] = int(ln, 3)
    return FunctionTable(n, m, table)


def save_tft(F: FunctionTable, path: str | Path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        write_tft(F, fh)


def load_tft(path: str | Path) -> FunctionTable:
    with open(path, encoding="ascii") as fh:
        return read_tft(fh)
