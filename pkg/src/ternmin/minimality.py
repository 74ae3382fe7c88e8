"""Minimality of C_F: covering oracle, Walsh criteria and sufficient bounds.

Every spectral condition is evaluated on integer arrays of 2*Re(W), so
"Re(...) != 3^n" becomes "twice the combination != 2 * 3^n".
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from .codes import CodeAnalysis, WeightDistribution, ab_status, analyze_code, codeword_values, direct_weights, weight_matrix
from .functions import ConstructionError, affine_components, classify, compose, plateaued_seed, standard_indicator_quadratic
from .gf3 import add_ranks, digits, dot_table, from_digits, neg_ranks, scale_ranks, sub_ranks
from .tables import FunctionTable
from .walsh import norms, spectrum_of, two_re, walsh_transform_values, walsh_value

THETAS = (1, -2)
# one -2 in each position, as in the case table of the composite criterion
LAMBDA_PATTERNS = ((-2, 1, 1, 1), (1, -2, 1, 1), (1, 1, -2, 1), (1, 1, 1, -2))

EXHAUSTIVE_CAP = 3**8


class PremiseError(ValueError):
    """A hypothesis of a criterion does not hold for the given input."""


@dataclass
class MinimalityVerdict:
    method: str
    minimal: bool | None  # None: inconclusive
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return {True: "minimal", False: "not minimal", None: "inconclusive"}[self.minimal]

    def to_json(self) -> dict:
        return {"method": self.method, "minimal": self.minimal, "witness": self.witness, **self.details}


# ---------------------------------------------------------------------------
# Rank-pair index helpers
# ---------------------------------------------------------------------------

_FULL_TABLE_MAX_N = 7


@lru_cache(maxsize=4)
def _full_pair_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    N = 3**n
    a = np.arange(N)
    add = np.empty((N, N), dtype=np.int32)
    sub = np.empty((N, N), dtype=np.int32)
    for start in range(0, N, 256):
        rows = a[start : start + 256]
        d = digits(rows, n)[:, None, :]
        e = digits(a, n)[None, :, :]
        add[rows] = from_digits(d + e)
        sub[rows] = from_digits(d + 2 * e)
    add.setflags(write=False)
    sub.setflags(write=False)
    return add, sub


def _chunk_rows(n: int) -> int:
    return max(1, (1 << 19) // 3**n)


def pair_chunks(n: int) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (nu ranks, rank(nu + nu'), rank(nu - nu')) blocks over all nu'."""
    N = 3**n
    step = _chunk_rows(n)
    if n <= _FULL_TABLE_MAX_N:
        add, sub = _full_pair_tables(n)
        for start in range(0, N, step):
            sl = slice(start, min(N, start + step))
            yield np.arange(sl.start, sl.stop), add[sl], sub[sl]
        return
    e = digits(np.arange(N), n)[None, :, :]
    for start in range(0, N, step):
        rows = np.arange(start, min(N, start + step))
        d = digits(rows, n)[:, None, :]
        yield rows, from_digits(d + e).astype(np.int32), from_digits(d + 2 * e).astype(np.int32)


def _as_int32(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int32)


# ---------------------------------------------------------------------------
# Search engines
# ---------------------------------------------------------------------------


def triple_violation(T: np.ndarray, n: int, prune: bool = True) -> dict | None:
    """First (nu, nu', theta) with T[nu] + T[nu'] + theta*T[nu''] == 2*3^n.

    nu'' = -(nu + nu'); the three are pairwise distinct iff nu != nu'.
    Returns None when no tuple hits.
    """
    target = 2 * 3**n
    if prune and all(_reach((T, T, T), (1, 1, th)) < target for th in THETAS):
        return None
    T = _as_int32(T)
    N = 3**n
    negp = neg_ranks(np.arange(N), n)
    for rows, add, _ in pair_chunks(n):
        third = negp[add]
        base = T[rows][:, None] + T[None, :]
        t3 = T[third]
        hits = np.stack([base + th * t3 == target for th in THETAS], axis=-1)
        hits[np.arange(rows.size), rows, :] = False
        if hits.any():
            i, j, k = np.unravel_index(int(np.argmax(hits)), hits.shape)
            return {
                "nu": int(rows[i]),
                "nu1": int(j),
                "nu2": int(third[i, j]),
                "theta": THETAS[k],
            }
    return None


Rows4 = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def _reach(rows: Sequence[np.ndarray], coeffs: Sequence[int]) -> int:
    """Largest value sum(c_i * R_i[.]) can take with free indices; a sound upper bound."""
    return sum(c * int(r.max()) if c > 0 else c * int(r.min()) for c, r in zip(coeffs, rows))


def _quad_first_hit(
    n: int,
    inner: Sequence[tuple[int, Rows4]],
    patterns: Sequence[tuple[int, int, int, int]],
    stop: Callable[[], bool] = lambda: False,
    prune: bool = True,
) -> dict | None:
    """First (nu, inner key, nu', pattern) with
    l1*R1[nu] + l2*R2[nu'] + l3*R3[nu+nu'] + l4*R4[nu-nu'] == 2*3^n.
    """
    target = 2 * 3**n
    live = []
    for key, rows4 in inner:
        pats = [p for p in patterns if not prune or _reach(rows4, p) >= target]
        if pats:
            live.append((key, tuple(_as_int32(r) for r in rows4), pats))
    if not live:
        return None
    for rows, add, sub in pair_chunks(n):
        if stop():
            return None
        best = None
        for key, (R1, R2, R3, R4), pats in live:
            t1 = R1[rows][:, None]
            t2 = R2[None, :]
            t3 = R3[add]
            t4 = R4[sub]
            terms = (t1, t2, t3, t4)
            hits = np.zeros((rows.size, t2.shape[1], len(patterns)), dtype=bool)
            for k, p in enumerate(patterns):
                if p in pats:
                    hits[..., k] = sum(lam * t for lam, t in zip(p, terms)) == target
            if hits.any():
                i, j, k = np.unravel_index(int(np.argmax(hits)), hits.shape)
                cand = (int(rows[i]), key, int(j), k)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            nu, key, nu1, k = best
            return {"nu": nu, "inner": key, "nu1": nu1, "pattern": list(patterns[k])}
    return None


def _outer_search(
    outer: Sequence[int],
    search: Callable[[int, Callable[[], bool]], dict | None],
    threads: int,
) -> tuple[int, dict] | None:
    """Run ``search`` per outer key; keep the hit with the smallest key."""
    if threads <= 1:
        for key in outer:
            hit = search(key, lambda: False)
            if hit is not None:
                return key, hit
        return None
    best: list[int | None] = [None]
    lock = threading.Lock()

    def work(key: int) -> tuple[int, dict] | None:
        def stop() -> bool:
            return best[0] is not None and best[0] < key

        if stop():
            return None
        hit = search(key, stop)
        if hit is not None:
            with lock:
                if best[0] is None or key < best[0]:
                    best[0] = key
            return key, hit
        return None

    with ThreadPoolExecutor(threads) as pool:
        found = [r for r in pool.map(work, outer) if r is not None]
    return min(found, key=lambda t: t[0]) if found else None


# ---------------------------------------------------------------------------
# Theorem-3 style criterion on C_F
# ---------------------------------------------------------------------------


def _check_hypotheses(F: FunctionTable) -> None:
    if F.table[0] != 0:
        raise PremiseError("F(0) must be 0")
    bad = affine_components(F)
    if bad:
        raise PremiseError(f"component mu={bad[0]} is affine")


def theorem3_check(F: FunctionTable, threads: int = 1, prune: bool = True) -> MinimalityVerdict:
    """Necessary and sufficient Walsh criterion for minimality of C_F."""
    _check_hypotheses(F)
    n, m = F.n, F.m
    spec = spectrum_of(F).compute_all(threads)
    T = {mu: spec.two_re(mu) for mu in range(3**m)}
    nonzero = list(range(1, 3**m))
    details = {"condition2_vacuous": m == 1}

    found = _outer_search(nonzero, lambda mu, stop: triple_violation(T[mu], n, prune), threads)
    if found is not None:
        mu, hit = found
        return MinimalityVerdict(
            "theorem3",
            False,
            {"condition": 1, "mu": mu, "nu": hit["nu"], "nu1": hit["nu1"], "nu2": hit["nu2"], "theta": hit["theta"]},
            details,
        )

    def inner_for(mu: int) -> list[tuple[int, Rows4]]:
        out = []
        for mu1 in nonzero:
            if mu1 == mu or mu1 == int(neg_ranks(mu, m)):
                continue
            s = int(add_ranks(mu, mu1, m))
            d = int(sub_ranks(mu, mu1, m))
            out.append((mu1, (T[mu], T[mu1], T[s], T[d])))
        return out

    found = _outer_search(
        nonzero if m > 1 else [],
        lambda mu, stop: _quad_first_hit(n, inner_for(mu), [(1, 1, 1, -2)], stop, prune),
        threads,
    )
    if found is not None:
        mu, hit = found
        return MinimalityVerdict(
            "theorem3",
            False,
            {"condition": 2, "mu": mu, "nu": hit["nu"], "mu1": hit["inner"], "nu1": hit["nu1"]},
            details,
        )
    return MinimalityVerdict("theorem3", True, details=details)


def theorem3_witness_value(F: FunctionTable, witness: dict) -> int:
    """Recompute the witnessed 2Re-combination from direct character sums."""
    n, m = F.n, F.m

    def tr(mu: int, nu: int) -> int:
        return walsh_value(F.component(mu), nu, n).two_re()

    if witness["condition"] == 1:
        mu = witness["mu"]
        return tr(mu, witness["nu"]) + tr(mu, witness["nu1"]) + witness["theta"] * tr(mu, witness["nu2"])
    mu, mu1, nu, nu1 = witness["mu"], witness["mu1"], witness["nu"], witness["nu1"]
    return (
        tr(mu, nu)
        + tr(mu1, nu1)
        + tr(int(add_ranks(mu, mu1, m)), int(add_ranks(nu, nu1, n)))
        - 2 * tr(int(sub_ranks(mu, mu1, m)), int(sub_ranks(nu, nu1, n)))
    )


def corollary1_bound(F: FunctionTable) -> MinimalityVerdict:
    """|W_F| < 3^n / 5 everywhere off mu = 0 implies minimal; otherwise inconclusive."""
    if F.table[0] != 0:
        raise PremiseError("F(0) must be 0")
    spec = spectrum_of(F)
    limit = 3 ** (2 * F.n)
    worst = max(int(spec.norm(mu).max()) for mu in range(1, 3**F.m))
    holds = 25 * worst < limit
    return MinimalityVerdict("corollary1_bound", True if holds else None, details={"max_norm": worst})


# ---------------------------------------------------------------------------
# Covering oracle and the weight-identity criterion
# ---------------------------------------------------------------------------


def _pack(mask: np.ndarray) -> np.ndarray:
    """Pack boolean rows into uint64 words."""
    bits = np.packbits(mask, axis=-1, bitorder="little")
    pad = (-bits.shape[-1]) % 8
    if pad:
        bits = np.concatenate([bits, np.zeros(bits.shape[:-1] + (pad,), dtype=np.uint8)], axis=-1)
    return bits.view(np.uint64)


def _split_index(idx: int, n: int) -> tuple[int, int]:
    """Codeword index i = nu + 3^n mu -> (mu, nu)."""
    return idx // 3**n, idx % 3**n


def all_codeword_values(F: FunctionTable) -> np.ndarray:
    """(3^(n+m), 3^n - 1) coordinates, row i = nu + 3^n mu."""
    L = dot_table(F.n).astype(np.int8)
    comps = np.stack([F.component(mu) for mu in range(3**F.m)])
    vals = (comps[:, None, :] + L[None, :, :]) % 3
    return vals.reshape(-1, 3**F.n)[:, 1:]


def covering_oracle(
    F: FunctionTable,
    mode: str = "exhaustive",
    samples: int = 10**6,
    seed: int = 0,
    batch: int = 4096,
) -> MinimalityVerdict:
    """Decide minimality straight from the definition (support inclusion)."""
    if mode == "exhaustive":
        return _covering_exhaustive(F)
    if mode == "sampled":
        return _covering_sampled(F, samples, seed, batch)
    raise ValueError(f"unknown mode {mode!r}")


def _covering_exhaustive(F: FunctionTable) -> MinimalityVerdict:
    n = F.n
    if 3 ** (n + F.m) > EXHAUSTIVE_CAP:
        raise ValueError(f"exhaustive covering capped at 3^(n+m) <= {EXHAUSTIVE_CAP}")
    vals = all_codeword_values(F)
    nz = vals != 0
    # one representative per line: leading nonzero coordinate scaled to 1
    lead = np.where(nz.any(axis=1), vals[np.arange(len(vals)), np.argmax(nz, axis=1)], 0)
    normed = np.where((lead == 2)[:, None], (2 * vals) % 3, vals)
    keep = nz.any(axis=1)
    idx = np.flatnonzero(keep)
    _, first = np.unique(normed[idx], axis=0, return_index=True)
    reps = np.sort(idx[first])  # smallest index generating each line
    S = _pack(nz[reps])
    for a, i in enumerate(reps):
        covered = ~np.any(S[a] & ~S, axis=1)
        covered[a] = False
        if covered.any():
            j = reps[int(np.argmax(covered))]
            mu1, nu1 = _split_index(int(i), n)
            mu2, nu2 = _split_index(int(j), n)
            return MinimalityVerdict(
                "covering_oracle",
                False,
                {"covered": {"mu": mu1, "nu": nu1}, "by": {"mu": mu2, "nu": nu2}},
                {"mode": "exhaustive", "lines": int(len(reps))},
            )
    return MinimalityVerdict("covering_oracle", True, details={"mode": "exhaustive", "lines": int(len(reps))})


def _covering_sampled(F: FunctionTable, samples: int, seed: int, batch: int) -> MinimalityVerdict:
    """Random ordered pairs of independent lines, both inclusion directions tested.

    Returns "not minimal" with a witness, or inconclusive.
    """
    n, m = F.n, F.m
    K = 3 ** (n + m)
    rng = np.random.default_rng(seed)
    L = dot_table(n)[:, 1:]
    comps = np.stack([F.component(mu)[1:] for mu in range(3**m)])
    tested = 0
    while tested < samples:
        b = min(batch, samples - tested)
        i = rng.integers(1, K, size=b)
        j = rng.integers(1, K, size=b)
        dependent = (j == i) | (j == scale_ranks(2, i, n + m))
        j = np.where(dependent, 0, j)
        ok = j != 0
        i, j = i[ok], j[ok]
        ci = comps[i // 3**n] + L[i % 3**n]
        cj = comps[j // 3**n] + L[j % 3**n]
        Si = _pack((ci != 0) & (ci != 3))
        Sj = _pack((cj != 0) & (cj != 3))
        fwd = ~np.any(Si & ~Sj, axis=1)
        bwd = ~np.any(Sj & ~Si, axis=1)
        tested += int(ok.sum())
        if fwd.any() or bwd.any():
            k = int(np.argmax(fwd | bwd))
            a, c = (i[k], j[k]) if fwd[k] else (j[k], i[k])
            mu1, nu1 = _split_index(int(a), n)
            mu2, nu2 = _split_index(int(c), n)
            return MinimalityVerdict(
                "covering_oracle",
                False,
                {"covered": {"mu": mu1, "nu": nu1}, "by": {"mu": mu2, "nu": nu2}},
                {"mode": "sampled", "seed": seed, "pairs_tested": tested},
            )
    # absence of a covering pair in a sample proves nothing
    return MinimalityVerdict(
        "covering_oracle", None, details={"mode": "sampled", "seed": seed, "pairs_tested": tested}
    )


def covering_witness_holds(F: FunctionTable, witness: dict) -> bool:
    """Re-check a covering witness coordinate by coordinate."""
    c1 = codeword_values(F, witness["covered"]["mu"], witness["covered"]["nu"])
    c2 = codeword_values(F, witness["by"]["mu"], witness["by"]["nu"])
    independent = not (np.array_equal(c1, c2) or np.array_equal(c1, (2 * c2) % 3))
    inclusion = all(b != 0 for a, b in zip(c1, c2) if a != 0)
    return independent and c1.any() and inclusion


def weight_identity_check(F: FunctionTable, weights: np.ndarray | None = None) -> MinimalityVerdict:
    """Pairwise criterion: wt(c1+c2) + wt(c2-c1) != 2 wt(c2) - wt(c1)
    for all c1, c2 with c1, c2, c1 +- c2 nonzero.

    Weights default to direct coordinate counts, independent of any spectrum.
    """
    n, m = F.n, F.m
    if 3 ** (n + m) > EXHAUSTIVE_CAP:
        raise ValueError(f"pairwise criterion capped at 3^(n+m) <= {EXHAUSTIVE_CAP}")
    W = (direct_weights(F) if weights is None else weights).reshape(-1)
    K = W.size
    k = n + m
    e = digits(np.arange(K), k)[None, :, :]
    for start in range(0, K, 256):
        rows = np.arange(start, min(K, start + 256))
        d = digits(rows, k)[:, None, :]
        s = from_digits(d + e)  # c1 + c2
        t = from_digits(2 * d + e)  # c2 - c1
        w1 = W[rows][:, None]
        w2 = W[None, :]
        valid = (w1 > 0) & (w2 > 0) & (W[s] > 0) & (W[t] > 0)
        bad = valid & (W[s] + W[t] == 2 * w2 - w1)
        if bad.any():
            i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
            mu1, nu1 = _split_index(int(rows[i]), n)
            mu2, nu2 = _split_index(int(j), n)
            return MinimalityVerdict(
                "weight_identity", False, {"c1": {"mu": mu1, "nu": nu1}, "c2": {"mu": mu2, "nu": nu2}}
            )
    return MinimalityVerdict("weight_identity", True)


# ---------------------------------------------------------------------------
# Composite functions F = (f, G)
# ---------------------------------------------------------------------------


def a_function(f: FunctionTable, G: FunctionTable, mu_t: int) -> np.ndarray:
    """Values of A_mu(x) = f(x) + mu.G(x)."""
    return (f.table + G.component(mu_t)) % 3


@dataclass
class CompositeSpectra:
    """2Re rows of f, of G's components and of every A_mu, each from its own table."""

    n: int
    m: int  # outputs of F = (f, G)
    f: np.ndarray
    G: dict[int, np.ndarray]
    A: dict[int, np.ndarray]

    @classmethod
    def build(cls, f: FunctionTable, G: FunctionTable) -> CompositeSpectra:
        mg = G.m
        f_row = two_re(*walsh_transform_values(f.table))
        G_rows = {mu: two_re(*walsh_transform_values(G.component(mu))) for mu in range(1, 3**mg)}
        A_rows = {mu: two_re(*walsh_transform_values(a_function(f, G, mu))) for mu in range(1, 3**mg)}
        return cls(f.n, mg + 1, f_row, G_rows, A_rows)


@dataclass
class Construction2Report:
    f_zero: bool
    G_zero: bool
    sign_ok: bool  # max Re(W_f) >= 0 and min Re(W_f) <= 0
    cond_a: bool
    cond_b: bool
    G_minimal: bool
    components_nonaffine: bool
    theorem5_conditions: list[bool | None] = field(default_factory=lambda: [None, None, None])
    ab_violated: bool | None = None
    details: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(
            (self.f_zero, self.G_zero, self.sign_ok, self.cond_a, self.cond_b, self.G_minimal, self.components_nonaffine)
        )

    def to_json(self) -> dict:
        return {
            "f_zero": self.f_zero,
            "G_zero": self.G_zero,
            "sign_ok": self.sign_ok,
            "cond_a": self.cond_a,
            "cond_b": self.cond_b,
            "G_minimal": self.G_minimal,
            "components_nonaffine": self.components_nonaffine,
            "theorem5_conditions": self.theorem5_conditions,
            "ab_violated": self.ab_violated,
            **self.details,
        }


def construction2_premises(f: FunctionTable, G: FunctionTable, threads: int = 1) -> Construction2Report:
    if f.m != 1:
        raise ValueError("f must be scalar")
    n = f.n
    Tf = two_re(*walsh_transform_values(f.table))
    mx, mn = int(Tf.max()), int(Tf.min())
    cond_a_hit = triple_violation(Tf, n)
    F = compose(f, G)
    nonaffine = not affine_components(F)
    G_ok = bool(G.table[0] == 0)
    ab_violated = None
    if F.table[0] == 0:
        ab_violated = not ab_status(WeightDistribution.from_weights(weight_matrix(F, threads))).satisfied
    try:
        G_min = bool(theorem3_check(G, threads).minimal) if G_ok else False
    except PremiseError:
        G_min = False
    return Construction2Report(
        f_zero=bool(f.table[0] == 0),
        G_zero=G_ok,
        sign_ok=mx >= 0 and mn <= 0,
        cond_a=cond_a_hit is None,
        cond_b=3 * mx - 2 * mn >= 2 * 3**n,
        G_minimal=G_min,
        components_nonaffine=nonaffine,
        ab_violated=ab_violated,
        details={"f_max_two_re": mx, "f_min_two_re": mn, "cond_a_witness": cond_a_hit},
    )


def theorem5_check(
    f: FunctionTable,
    G: FunctionTable,
    report: Construction2Report | None = None,
    threads: int = 1,
    prune: bool = True,
) -> MinimalityVerdict:
    """Minimality of C_(f,G) from the spectra of f, G and the A_mu.

    Conditions (2) and (3) use the four patterns with a single -2.
    """
    report = report or construction2_premises(f, G, threads)
    if not report.valid:
        failed = [k for k, v in report.to_json().items() if v is False]
        raise PremiseError(f"composite premises fail: {', '.join(failed)}")
    cs = CompositeSpectra.build(f, G)
    n, mg = f.n, G.m
    nonzero = list(range(1, 3**mg))
    details = {"lambda_patterns": [list(p) for p in LAMBDA_PATTERNS], "condition3_pairs": 0}

    def fail(cond: int, wit: dict) -> MinimalityVerdict:
        report.theorem5_conditions[cond - 1] = False
        return MinimalityVerdict("theorem5", False, {"condition": cond, **wit}, details)

    found = _outer_search(nonzero, lambda mu, stop: triple_violation(cs.A[mu], n, prune), threads)
    if found is not None:
        mu, hit = found
        return fail(1, {"mu_tilde": mu, **hit})
    report.theorem5_conditions[0] = True

    def cond2(mu: int, stop: Callable[[], bool]) -> dict | None:
        two_mu = int(scale_ranks(2, mu, mg))
        rows = (cs.f, cs.G[mu], cs.A[mu], cs.A[two_mu])
        return _quad_first_hit(n, [(0, rows)], LAMBDA_PATTERNS, stop, prune)

    found = _outer_search(nonzero, cond2, threads)
    if found is not None:
        mu, hit = found
        return fail(2, {"mu_tilde": mu, "nu": hit["nu"], "nu1": hit["nu1"], "lambda": hit["pattern"]})
    report.theorem5_conditions[1] = True

    def inner3(mu: int) -> list[tuple[int, Rows4]]:
        out = []
        for mu1 in nonzero:
            s = int(add_ranks(mu, mu1, mg))
            d = int(sub_ranks(mu, mu1, mg))
            if s and d:
                out.append((mu1, (cs.A[mu], cs.G[mu1], cs.A[s], cs.A[d])))
        return out

    details["condition3_pairs"] = sum(len(inner3(mu)) for mu in nonzero)
    details["condition3_vacuous"] = details["condition3_pairs"] == 0
    found = _outer_search(
        nonzero, lambda mu, stop: _quad_first_hit(n, inner3(mu), LAMBDA_PATTERNS, stop, prune), threads
    )
    if found is not None:
        mu, hit = found
        return fail(
            3,
            {"mu_tilde": mu, "nu": hit["nu"], "mu1_tilde": hit["inner"], "nu1": hit["nu1"], "lambda": hit["pattern"]},
        )
    report.theorem5_conditions[2] = True
    return MinimalityVerdict("theorem5", True, details=details)


def theorem5_witness_value(f: FunctionTable, G: FunctionTable, witness: dict) -> int:
    """Recompute a composite-criterion witness from direct character sums."""
    n, mg = f.n, G.m

    def trA(mu: int, nu: int) -> int:
        return walsh_value(a_function(f, G, mu), nu, n).two_re()

    def trG(mu: int, nu: int) -> int:
        return walsh_value(G.component(mu), nu, n).two_re()

    def trf(nu: int) -> int:
        return walsh_value(f.table, nu, n).two_re()

    c = witness["condition"]
    mu = witness["mu_tilde"]
    if c == 1:
        return trA(mu, witness["nu"]) + trA(mu, witness["nu1"]) + witness["theta"] * trA(mu, witness["nu2"])
    nu, nu1 = witness["nu"], witness["nu1"]
    l1, l2, l3, l4 = witness["lambda"]
    s, d = int(add_ranks(nu, nu1, n)), int(sub_ranks(nu, nu1, n))
    if c == 2:
        return l1 * trf(nu) + l2 * trG(mu, nu1) + l3 * trA(mu, s) + l4 * trA(int(scale_ranks(2, mu, mg)), d)
    mu1 = witness["mu1_tilde"]
    return (
        l1 * trA(mu, nu)
        + l2 * trG(mu1, nu1)
        + l3 * trA(int(add_ranks(mu, mu1, mg)), s)
        + l4 * trA(int(sub_ranks(mu, mu1, mg)), d)
    )


def corollary4_bound(f: FunctionTable, G: FunctionTable) -> MinimalityVerdict:
    """max(|W_f|, |W_G|, |W_A|) < 3^n / 5 implies minimal; otherwise inconclusive."""
    n = f.n
    worst = int(norms(*walsh_transform_values(f.table)).max())
    for mu in range(1, 3**G.m):
        worst = max(worst, int(norms(*walsh_transform_values(G.component(mu))).max()))
        worst = max(worst, int(norms(*walsh_transform_values(a_function(f, G, mu))).max()))
    holds = 25 * worst < 3 ** (2 * n)
    return MinimalityVerdict("corollary4_bound", True if holds else None, details={"max_norm": worst})


def prop3_blocks(f: FunctionTable, G: FunctionTable) -> tuple[bool, dict | None]:
    """Check every row of W_F for F = (f, G) against its block formula.

    Returns (True, None) or (False, first mismatch).
    """
    F = compose(f, G)
    n, mg = f.n, G.m
    spec = spectrum_of(F)
    neg = neg_ranks(np.arange(3**n), n)
    wf = walsh_transform_values(f.table)
    for mu in range(1, 3**F.m):
        mu1, mu_t = mu % 3, mu // 3
        if mu1 == 0:
            exp = walsh_transform_values(G.component(mu_t))
            case = "G"
        elif mu1 == 1 and mu_t == 0:
            exp = wf
            case = "f"
        elif mu1 == 1:
            exp = walsh_transform_values(a_function(f, G, mu_t))
            case = "A"
        else:
            src = wf if mu_t == 0 else walsh_transform_values(a_function(f, G, int(scale_ranks(2, mu_t, mg))))
            r, o = src[0][neg], src[1][neg]
            exp = (r - o, -o)  # conjugate of W(-nu)
            case = "conj f" if mu_t == 0 else "conj A_2mu"
        got = spec.row(mu)
        if not (np.array_equal(got[0], exp[0]) and np.array_equal(got[1], exp[1])):
            bad = int(np.argmax((got[0] != exp[0]) | (got[1] != exp[1])))
            return False, {"mu": mu, "nu": bad, "case": case}
    return True, None


@dataclass
class Theorem6Result:
    n: int
    r: int
    s: int
    m: int
    analysis: CodeAnalysis
    premises: Construction2Report
    seed_class: str
    checks: dict[str, tuple[object, object]]  # name -> (observed, expected)

    @property
    def passed(self) -> bool:
        return all(obs == exp for obs, exp in self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, (obs, exp) in self.checks.items() if obs != exp]


def theorem6_parameters_error(n: int, r: int, s: int, m: int) -> str | None:
    if n <= 6:
        return f"n > 6 required, got n={n}"
    if m < 2:
        return f"m >= 2 required, got m={m}"
    if r < 2:
        return f"r >= 2 required so a, b stay independent modulo the dual of E, got r={r}"
    if n - r <= 3:
        return f"n - r > 3 required, got n={n}, r={r}"
    if not 0 <= s <= n - 6:
        return f"0 <= s <= n - 6 required, got s={s}"
    if (n + s) % 2:
        return f"n + s must be even for the plateaued seed, got n={n}, s={s}"
    if m - 1 > (n - s) // 2:
        return f"seed has at most (n - s)/2 = {(n - s) // 2} outputs, need m - 1 = {m - 1}"
    return None


def theorem6_build_and_verify(
    n: int,
    r: int,
    s: int,
    m: int,
    threads: int = 1,
    run_theorem3: bool = True,
    sampled_pairs: int = 0,
    seed: int = 0,
) -> Theorem6Result:
    """Build F = (f, G) from the indicator-quadratic f and a plateaued seed G, then
    check length, dimension, minimum distance, AB violation and minimality.
    """
    err = theorem6_parameters_error(n, r, s, m)
    if err:
        raise ConstructionError(err)
    f, _, _, _ = standard_indicator_quadratic(n, r)
    G = plateaued_seed(n, s, m - 1)
    cls = classify(G)
    F = compose(f, G)
    analysis = analyze_code(F, threads)
    premises = construction2_premises(f, G, threads)
    v5 = theorem5_check(f, G, premises, threads)
    verdicts = {"theorem5": v5.to_json()}
    checks: dict[str, tuple[object, object]] = {
        "seed_plateau": ((cls.uniform_s, cls.vectorial_regular), (s, True)),
        "length": (analysis.length, 3**n - 1),
        "dimension": (analysis.dimension, n + m),
        "min_distance": (analysis.d, 3 ** (n - 1) + 3 ** (n - 2) + 3 ** (r - 1)),
        "ab_violated": (not analysis.ab.satisfied, True),
        "premises_valid": (premises.valid, True),
        "theorem5_minimal": (v5.minimal, True),
    }
    if run_theorem3:
        v3 = theorem3_check(F, threads)
        verdicts["theorem3"] = v3.to_json()
        checks["theorem3_minimal"] = (v3.minimal, True)
    if sampled_pairs:
        vs = covering_oracle(F, "sampled", samples=sampled_pairs, seed=seed)
        verdicts["covering_oracle"] = vs.to_json()
        checks["sampled_no_covering"] = (vs.witness, None)
    analysis.minimality = verdicts
    return Theorem6Result(n, r, s, m, analysis, premises, cls.summary(), checks)


__all__ = [
    "MinimalityVerdict",
    "PremiseError",
    "Construction2Report",
    "CompositeSpectra",
    "Theorem6Result",
    "theorem3_check",
    "theorem3_witness_value",
    "theorem5_check",
    "theorem5_witness_value",
    "theorem6_build_and_verify",
    "theorem6_parameters_error",
    "corollary1_bound",
    "corollary4_bound",
    "covering_oracle",
    "covering_witness_holds",
    "weight_identity_check",
    "construction2_premises",
    "prop3_blocks",
    "triple_violation",
    "all_codeword_values",
]
