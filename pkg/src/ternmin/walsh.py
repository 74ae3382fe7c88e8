"""Exact Walsh spectra of (n,m)-functions over Z[w].

An Eisenstein array is a pair of int64 arrays ``(re, om)`` holding the
coefficients of 1 and w. ``W_F(mu, nu) = sum_x w^(mu.F(x) - nu.x)``.
"""

from __future__ import annotations

import csv
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, TextIO

import numpy as np

from .gf3 import (
    ZETA_OM,
    ZETA_RE,
    EisensteinInt,
    TernaryVector,
    add_ranks,
    dot_table,
    neg_ranks,
    zeta_pow,
)
from .tables import FunctionTable, log3, scalar_function

EisArray = tuple[np.ndarray, np.ndarray]


def _mul_w(a: np.ndarray, b: np.ndarray) -> EisArray:
    # (a + b w) w = -b + (a - b) w
    return -b, a - b


def _mul_w2(a: np.ndarray, b: np.ndarray) -> EisArray:
    # (a + b w) w^2 = (b - a) - a w
    return b - a, -a


def walsh_transform_values(values: np.ndarray) -> EisArray:
    """Radix-3 fast transform of x -> w^values[x]; returns the row over nu."""
    values = np.asarray(values, dtype=np.int64) % 3
    N = values.size
    re = ZETA_RE[values].copy()
    om = ZETA_OM[values].copy()
    stride = 1
    while stride < N:  # coordinate 0 (stride 1) first
        shape = (N // (3 * stride), 3, stride)
        re = re.reshape(shape)
        om = om.reshape(shape)
        r0, r1, r2 = re[:, 0], re[:, 1], re[:, 2]
        o0, o1, o2 = om[:, 0], om[:, 1], om[:, 2]
        # nu_i = 1 weights x_i by w^-x_i = w^(2 x_i); nu_i = 2 by w^x_i
        a1r, a1o = _mul_w2(r1, o1)
        a2r, a2o = _mul_w(r2, o2)
        b1r, b1o = _mul_w(r1, o1)
        b2r, b2o = _mul_w2(r2, o2)
        new_re = np.stack([r0 + r1 + r2, r0 + a1r + a2r, r0 + b1r + b2r], axis=1)
        new_om = np.stack([o0 + o1 + o2, o0 + a1o + a2o, o0 + b1o + b2o], axis=1)
        re = new_re.reshape(N)
        om = new_om.reshape(N)
        stride *= 3
    bound = N
    assert np.abs(re).max() <= bound and np.abs(om).max() <= bound, "Walsh value exceeds 3^n"
    return re, om


def walsh_naive_values(values: np.ndarray, chunk: int = 243) -> EisArray:
    """Direct character sum, counting exponents residue by residue."""
    values = np.asarray(values, dtype=np.int64) % 3
    N = values.size
    n = log3(N)
    re = np.empty(N, dtype=np.int64)
    om = np.empty(N, dtype=np.int64)
    for start in range(0, N, chunk):
        nus = np.arange(start, min(N, start + chunk))
        expo = (values[None, :] - dot_table(n, nus)) % 3
        c0 = (expo == 0).sum(axis=1)
        c1 = (expo == 1).sum(axis=1)
        c2 = (expo == 2).sum(axis=1)
        # c0 + c1 w + c2 w^2 with w^2 = -1 - w
        re[nus] = c0 - c2
        om[nus] = c1 - c2
    return re, om


def two_re(re: np.ndarray, om: np.ndarray) -> np.ndarray:
    return 2 * re - om


def norms(re: np.ndarray, om: np.ndarray) -> np.ndarray:
    return re * re - re * om + om * om


def conj(re: np.ndarray, om: np.ndarray) -> EisArray:
    return re - om, -om


def eis_mul_arrays(x: EisArray, y: EisArray) -> EisArray:
    a, b = x
    c, d = y
    return a * c - b * d, a * d + b * c - b * d


def rotate(re: np.ndarray, om: np.ndarray, j: np.ndarray | int) -> EisArray:
    """Multiply elementwise by w^j."""
    j = np.asarray(j) % 3
    r1, o1 = _mul_w(re, om)
    r2, o2 = _mul_w2(re, om)
    return np.choose(j, [re, r1, r2]), np.choose(j, [om, o1, o2])


class WalshSpectrum:
    """Walsh rows of F, computed on first access and kept.

    Rows are indexed by the rank of mu; each row is an Eisenstein array over
    the ranks of nu.
    """

    def __init__(self, F: FunctionTable) -> None:
        self.F = F
        self.n = F.n
        self.m = F.m
        self._rows: dict[int, EisArray] = {}
        self._lock = threading.Lock()

    def _rank(self, mu: int | TernaryVector) -> int:
        return mu.rank if isinstance(mu, TernaryVector) else int(mu)

    def row(self, mu: int | TernaryVector) -> EisArray:
        r = self._rank(mu)
        got = self._rows.get(r)
        if got is not None:
            return got
        re, om = walsh_transform_values(self.F.component(r))
        re.setflags(write=False)
        om.setflags(write=False)
        with self._lock:
            return self._rows.setdefault(r, (re, om))

    def compute_all(self, threads: int = 1) -> WalshSpectrum:
        mus = [r for r in range(3**self.m) if r not in self._rows]
        if threads > 1 and len(mus) > 1:
            with ThreadPoolExecutor(threads) as pool:
                list(pool.map(self.row, mus))
        else:
            for r in mus:
                self.row(r)
        return self

    def two_re(self, mu: int | TernaryVector) -> np.ndarray:
        return two_re(*self.row(mu))

    def norm(self, mu: int | TernaryVector) -> np.ndarray:
        return norms(*self.row(mu))

    def value(self, mu: int | TernaryVector, nu: int | TernaryVector) -> EisensteinInt:
        re, om = self.row(mu)
        v = self._rank(nu)
        return EisensteinInt(int(re[v]), int(om[v]))

    def full(self) -> EisArray:
        """(3^m, 3^n) arrays of every value."""
        self.compute_all()
        rows = [self.row(r) for r in range(3**self.m)]
        return np.stack([r[0] for r in rows]), np.stack([r[1] for r in rows])

    def two_re_matrix(self) -> np.ndarray:
        re, om = self.full()
        return two_re(re, om)

    def support(self, mu: int | TernaryVector) -> np.ndarray:
        """Ranks nu with W(mu, nu) != 0."""
        return np.flatnonzero(self.norm(mu))


_cache: dict[str, WalshSpectrum] = {}
_cache_lock = threading.Lock()
_CACHE_LIMIT = 64


def spectrum_of(F: FunctionTable) -> WalshSpectrum:
    """Shared spectrum object for F, keyed by the table contents."""
    key = F.digest
    with _cache_lock:
        spec = _cache.get(key)
        if spec is None:
            if len(_cache) >= _CACHE_LIMIT:
                _cache.pop(next(iter(_cache)))
            spec = _cache[key] = WalshSpectrum(F)
    return spec


def walsh_naive(f: FunctionTable, mu: int | TernaryVector) -> EisArray:
    r = mu.rank if isinstance(mu, TernaryVector) else int(mu)
    if isinstance(mu, TernaryVector) and mu.n != f.m:
        raise ValueError(f"mu has dimension {mu.n}, function has m={f.m}")
    return walsh_naive_values(f.component(r))


def walsh_fast(f: FunctionTable) -> WalshSpectrum:
    return spectrum_of(f).compute_all()


def walsh_value(values: np.ndarray, nu: int, n: int) -> EisensteinInt:
    """One Walsh coefficient by scalar summation over EisensteinInt."""
    d = dot_table(n, np.array([nu]))[0]
    acc = EisensteinInt(0, 0)
    counts = np.bincount((np.asarray(values, dtype=np.int64) - d) % 3, minlength=3)
    for j in range(3):
        acc = acc + zeta_pow(j) * int(counts[j])
    return acc


def walsh_inverse(row: EisArray, nu: int | TernaryVector) -> EisensteinInt:
    """Recover w^f(nu) from a spectrum row via the inverse transform."""
    re, om = row
    N = re.size
    n = log3(N)
    v = nu.rank if isinstance(nu, TernaryVector) else int(nu)
    phase = dot_table(n, np.array([v]))[0]
    rr, ro = rotate(re, om, phase)
    total = EisensteinInt(int(rr.sum()), int(ro.sum()))
    q, exact = total.divmod_int(N)
    if not exact or q.unit_exponent() is None:
        raise ValueError(f"not a spectrum: inverse sum {total} is not 3^{n} times a power of w")
    return q


def recover_function(row: EisArray) -> FunctionTable:
    N = row[0].size
    return scalar_function(np.array([walsh_inverse(row, v).unit_exponent() for v in range(N)]))


def titsworth_sum(row: EisArray, tau: int | TernaryVector) -> EisensteinInt:
    """sum_nu W(nu) conj(W(nu + tau)), exactly."""
    re, om = row
    N = re.size
    n = log3(N)
    t = tau.rank if isinstance(tau, TernaryVector) else int(tau)
    shifted = add_ranks(np.arange(N), t, n)
    prod_re, prod_om = eis_mul_arrays((re, om), conj(re[shifted], om[shifted]))
    return EisensteinInt(int(prod_re.astype(object).sum()), int(prod_om.astype(object).sum()))


titsworth_check = titsworth_sum


def titsworth_all(row: EisArray) -> EisArray:
    """Titsworth sums for every shift tau, as an array indexed by rank(tau)."""
    re, om = row
    N = re.size
    n = log3(N)
    shifted_idx = add_ranks(np.arange(N)[:, None], np.arange(N)[None, :], n)  # [tau, nu]
    cr, co = conj(re[shifted_idx], om[shifted_idx])
    pr, po = eis_mul_arrays((re[None, :], om[None, :]), (cr, co))
    return pr.sum(axis=1), po.sum(axis=1)


def parseval_sum(row: EisArray) -> int:
    return int(norms(*row).astype(object).sum())


def row_sum(row: EisArray) -> EisensteinInt:
    return EisensteinInt(int(row[0].sum()), int(row[1].sum()))


def negate_index(row: EisArray) -> EisArray:
    """nu -> W(-nu)."""
    N = row[0].size
    n = log3(N)
    idx = neg_ranks(np.arange(N), n)
    return row[0][idx], row[1][idx]


def write_spectrum_csv(spec: WalshSpectrum, fh: TextIO, mus: Iterable[int] | None = None) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["mu_rank", "nu_rank", "re_unit", "om_unit"])
    for mu in range(3**spec.m) if mus is None else mus:
        re, om = spec.row(mu)
        for nu in range(re.size):
            w.writerow([mu, nu, int(re[nu]), int(om[nu])])


def read_spectrum_csv(fh: TextIO) -> dict[tuple[int, int], EisensteinInt]:
    r = csv.reader(fh)
    header = next(r)
    if header != ["mu_rank", "nu_rank", "re_unit", "om_unit"]:
        raise ValueError(f"unexpected spectrum CSV header {header}")
    return {(int(a), int(b)): EisensteinInt(int(c), int(d)) for a, b, c, d in r}
