"""The code C_F = {(mu.F(x) + nu.x)_{x != 0}} and its weights.

Codewords are indexed by (mu, nu) and never stored for the whole code;
weights come from the Walsh spectrum.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gf3 import TernaryVector, dot_table, neg_ranks
from .tables import FunctionTable
from .walsh import WalshSpectrum, spectrum_of


class DimensionError(ValueError):
    def __init__(self, mu: int, nu: int) -> None:
        super().__init__(f"component mu={mu} is affine: c(mu={mu}, nu={nu}) is the zero word")
        self.mu = mu
        self.nu = nu


def _rank(v: int | TernaryVector) -> int:
    return v.rank if isinstance(v, TernaryVector) else int(v)


@dataclass(frozen=True)
class CodeSpec:
    F: FunctionTable

    @property
    def length(self) -> int:
        return 3**self.F.n - 1

    @property
    def dimension_claimed(self) -> int:
        return self.F.n + self.F.m


@dataclass(frozen=True)
class CodewordSupport:
    length: int
    mask: int  # bit i-1 set iff coordinate at input rank i is nonzero

    @property
    def weight(self) -> int:
        return self.mask.bit_count()

    def covered_by(self, other: CodewordSupport) -> bool:
        return self.mask & ~other.mask == 0


def codeword_values(F: FunctionTable, mu: int | TernaryVector, nu: int | TernaryVector) -> np.ndarray:
    """Coordinates of c(mu, nu) at x = rank 1 .. 3^n - 1, in order."""
    comp = F.component(_rank(mu)).astype(np.int64)
    lin = dot_table(F.n, np.array([_rank(nu)]))[0].astype(np.int64)
    return ((comp + lin) % 3)[1:].astype(np.int8)


def codeword(F: FunctionTable, mu: int | TernaryVector, nu: int | TernaryVector) -> CodewordSupport:
    vals = codeword_values(F, mu, nu)
    bits = np.packbits(vals != 0, bitorder="little")
    return CodewordSupport(vals.size, int.from_bytes(bits.tobytes(), "little"))


def direct_weights(F: FunctionTable) -> np.ndarray:
    """Oracle: (3^m, 3^n) weights by counting nonzero coordinates."""
    L = dot_table(F.n).astype(np.int64)  # L[nu, x]
    out = np.empty((3**F.m, 3**F.n), dtype=np.int64)
    for mu in range(3**F.m):
        comp = F.component(mu).astype(np.int64)
        vals = (comp[None, :] + L) % 3
        out[mu] = (vals[:, 1:] != 0).sum(axis=1)
    return out


def weights_from_two_re(two_re_neg: np.ndarray, n: int) -> np.ndarray:
    """wt = 3^n - 3^(n-1) - 2Re(W(mu,-nu))/3, checked for divisibility."""
    q, r = np.divmod(two_re_neg, 3)
    if np.any(r):
        raise ArithmeticError("2Re(W) not divisible by 3: corrupt spectrum or F(0) != 0")
    return 3**n - 3 ** (n - 1) - q


def weight_row(spec: WalshSpectrum, mu: int) -> np.ndarray:
    """Weights of c(mu, nu) for every nu."""
    n = spec.n
    tr = spec.two_re(mu)
    return weights_from_two_re(tr[neg_ranks(np.arange(3**n), n)], n)


def weight_via_walsh(spec: WalshSpectrum, mu: int | TernaryVector, nu: int | TernaryVector) -> int:
    n = spec.n
    mu_r, nu_r = _rank(mu), _rank(nu)
    if mu_r == 0:
        return 0 if nu_r == 0 else 3**n - 3 ** (n - 1)
    w = spec.value(mu_r, int(neg_ranks(nu_r, n))).two_re()
    if w % 3:
        raise ArithmeticError("2Re(W) not divisible by 3: corrupt spectrum or F(0) != 0")
    return 3**n - 3 ** (n - 1) - w // 3


def _require_zero_origin(F: FunctionTable) -> None:
    if F.table[0] != 0:
        raise ValueError("F(0) must be 0")


def weight_matrix(F: FunctionTable, threads: int = 1) -> np.ndarray:
    _require_zero_origin(F)
    spec = spectrum_of(F)
    mus = range(3**F.m)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(lambda mu: weight_row(spec, mu), mus))
    else:
        rows = [weight_row(spec, mu) for mu in mus]
    return np.stack(rows)


@dataclass(frozen=True)
class WeightDistribution:
    freq: dict[int, int]

    @classmethod
    def from_weights(cls, weights: np.ndarray) -> WeightDistribution:
        w, c = np.unique(weights, return_counts=True)
        return cls({int(a): int(b) for a, b in zip(w, c)})

    @property
    def total(self) -> int:
        return sum(self.freq.values())

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w in self.freq if w)

    @property
    def w_min(self) -> int:
        return self.nonzero_weights[0]

    @property
    def w_max(self) -> int:
        return self.nonzero_weights[-1]

    def as_pairs(self) -> list[list[int]]:
        return [[w, self.freq[w]] for w in sorted(self.freq)]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeightDistribution):
            return self.freq == other.freq
        if isinstance(other, dict):
            return self.freq == other
        return NotImplemented


def weight_distribution(F: FunctionTable, threads: int = 1) -> WeightDistribution:
    return WeightDistribution.from_weights(weight_matrix(F, threads))


@dataclass(frozen=True)
class ABStatus:
    w_min: int
    w_max: int
    satisfied: bool
    spectral_max_two_re: int | None = None
    spectral_min_two_re: int | None = None
    spectral_violation: bool | None = None

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.w_min, self.w_max)


def ab_status(dist: WeightDistribution, spec: WalshSpectrum | None = None) -> ABStatus:
    """w_min / w_max > 2/3, compared as 3 w_min > 2 w_max."""
    if not dist.nonzero_weights:
        raise ValueError("distribution has no nonzero weight")
    lo, hi = dist.w_min, dist.w_max
    extra: dict = {}
    if spec is not None:
        tr = np.stack([spec.two_re(mu) for mu in range(1, 3**spec.m)])
        mx, mn = int(tr.max()), int(tr.min())
        # 3 max Re - 2 min Re >= 3^n, doubled
        extra = dict(
            spectral_max_two_re=mx,
            spectral_min_two_re=mn,
            spectral_violation=mx >= 0 and mn <= 0 and 3 * mx - 2 * mn >= 2 * 3**spec.n,
        )
    return ABStatus(lo, hi, 3 * lo > 2 * hi, **extra)


def three_weight_prediction(n: int, s: int, m: int) -> dict[int, int]:
    """Weight distribution of C_F for vectorial regular s-plateaued F with F(0) = 0."""
    if (n + s) % 2:
        raise ValueError("n + s must be even")
    h = (n + s) // 2
    q = 3**m - 1
    base = 3**n - 3 ** (n - 1)
    return {
        0: 1,
        base: 3**n - 1 + q * (3**n - 3 ** (n - s)),
        base - 3**h + 3 ** (h - 1): q * (3 ** (n - s - 1) + 3 ** ((n - s) // 2) - 3 ** ((n - s) // 2 - 1)),
        base + 3 ** (h - 1): 2 * q * (3 ** (n - s - 1) - 3 ** ((n - s) // 2 - 1)),
    }


def min_distance(dist: WeightDistribution) -> int:
    return dist.w_min


def check_dimension(F: FunctionTable, weights: np.ndarray | None = None) -> int:
    """n + m when (mu, nu) -> c(mu, nu) is injective; raises with the offending mu otherwise."""
    W = weight_matrix(F) if weights is None else weights
    zero = np.argwhere(W == 0)
    for mu, nu in zero:
        if mu or nu:
            raise DimensionError(int(mu), int(nu))
    return F.n + F.m


@dataclass
class CodeAnalysis:
    n: int
    m: int
    distribution: WeightDistribution
    dimension: int | None
    ab: ABStatus
    minimality: dict

    @property
    def length(self) -> int:
        return 3**self.n - 1

    @property
    def d(self) -> int:
        return self.distribution.w_min

    def to_json(self) -> dict:
        return {
            "schema": "cfa/1",
            "n": self.n,
            "m": self.m,
            "length": self.length,
            "dimension": self.dimension,
            "weight_distribution": self.distribution.as_pairs(),
            "w_min": self.ab.w_min,
            "w_max": self.ab.w_max,
            "ab_satisfied": self.ab.satisfied,
            "ab_spectral": {
                "max_two_re": self.ab.spectral_max_two_re,
                "min_two_re": self.ab.spectral_min_two_re,
                "violation_certified": self.ab.spectral_violation,
            },
            "minimality": self.minimality,
        }


def analyze_code(F: FunctionTable, threads: int = 1) -> CodeAnalysis:
    """Weights, dimension and AB status (minimality is filled in by callers)."""
    W = weight_matrix(F, threads)
    dist = WeightDistribution.from_weights(W)
    try:
        dim: int | None = check_dimension(F, W)
    except DimensionError:
        dim = None
    return CodeAnalysis(F.n, F.m, dist, dim, ab_status(dist, spectrum_of(F)), {})


