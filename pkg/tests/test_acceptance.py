"""Acceptance criteria 1-8, exact equality throughout.

Each test prints one PASS/FAIL line (visible under ``pytest -v`` and when
run directly with ``python tests/test_acceptance.py``).
"""

from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from ternmin.codes import analyze_code
from ternmin.functions import (
    compose,
    expected_indicator_quadratic_two_re,
    indicator_plus_plateaued,
    indicator_plus_plateaued_bound,
    plateaued_seed,
    standard_indicator_quadratic,
    three_function_identity,
)
from ternmin.minimality import (
    corollary1_bound,
    covering_oracle,
    covering_witness_holds,
    prop3_blocks,
    theorem3_check,
    theorem3_witness_value,
    theorem6_build_and_verify,
    weight_identity_check,
)
from ternmin.tables import random_function
from ternmin.verify import nonaffine_corpus, random_subspace
from ternmin.walsh import norms, titsworth_all, two_re, walsh_naive_values, walsh_transform_values

_capsys = None


def report(number: int, ok: bool, detail: str, elapsed: float) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {detail}"
    if _capsys is not None:
        with _capsys.disabled():
            print("\n" + line)
    else:
        print(line)


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


# ---------------------------------------------------------------------------


def test_criterion_1_walsh_identities():
    t = time.perf_counter()
    rng = np.random.default_rng(20241)
    counts = {}
    for n in (3, 4, 5, 6):
        ok = 0
        for _ in range(100):
            values = rng.integers(0, 3, 3**n)
            row = walsh_transform_values(values)
            tr, to = titsworth_all(row)
            nr, no = walsh_naive_values(values)
            ok += (
                int(norms(*row).sum()) == 3 ** (2 * n)
                and int(tr[0]) == 3 ** (2 * n)
                and int(to[0]) == 0
                and not tr[1:].any()
                and not to[1:].any()
                and np.array_equal(row[0], nr)
                and np.array_equal(row[1], no)
            )
        counts[n] = ok
    elapsed = time.perf_counter() - t
    passed = counts == {3: 100, 4: 100, 5: 100, 6: 100} and elapsed < 30
    report(1, passed, f"per-n functions passing all identities: {counts}", elapsed)
    assert counts == {3: 100, 4: 100, 5: 100, 6: 100}
    assert elapsed < 30


def test_criterion_2_bent_table():
    t = time.perf_counter()
    expected = {
        2: {0: 1, 486: 728, 468: 8 * 261, 495: 8 * 468},
        3: {0: 1, 486: 728, 468: 26 * 261, 495: 26 * 468},
    }
    observed = {}
    for m in (2, 3):
        a = analyze_code(plateaued_seed(6, 0, m))
        observed[m] = (a.distribution.freq, a.dimension, a.ab.satisfied)
    elapsed = time.perf_counter() - t
    want = {m: (expected[m], 6 + m, True) for m in (2, 3)}
    report(2, observed == want and elapsed < 60, f"n=6 m=2,3 distributions/dimension/AB: {observed}", elapsed)
    assert observed == want
    assert elapsed < 60


def test_criterion_3_one_plateaued_table():
    t = time.perf_counter()
    a = analyze_code(plateaued_seed(7, 1, 2))
    expected = {
        0: 1,
        3**7 - 3**6: 3**7 - 1 + 8 * (3**7 - 3**6),
        3**7 - 3**6 - 3**4 + 3**3: 8 * (3**5 + 3**3 - 3**2),
        3**7 - 3**6 + 3**3: 2 * 8 * (3**5 - 3**2),
    }
    assert expected == {0: 1, 1458: 13850, 1404: 2088, 1485: 3744}
    observed = (a.distribution.freq, a.d, a.dimension)
    elapsed = time.perf_counter() - t
    want = (expected, 1404, 9)
    report(3, observed == want and elapsed < 120, f"n=7 m=2 s=1: {observed}", elapsed)
    assert observed == want
    assert elapsed < 120


def test_criterion_4_indicator_quadratic_spectrum():
    t = time.perf_counter()
    frozen = {
        (6, 2): {-234: 5, 477: 2, -243: 2, 9: 400, -9: 160, 0: 160},
        (7, 3): {-702: 5, 1431: 2, -729: 2, 27: 400, -27: 160, 0: 1618},
    }
    results = {}
    for (n, r), want in frozen.items():
        f, E, a, b = standard_indicator_quadratic(n, r)
        got = two_re(*walsh_transform_values(f.table))
        closed = expected_indicator_quadratic_two_re(E, a, b)
        v, c = np.unique(got, return_counts=True)
        results[(n, r)] = (dict(zip(v.tolist(), c.tolist())) == want, bool(np.array_equal(got, closed)))
    elapsed = time.perf_counter() - t
    ok = all(a and b for a, b in results.values())
    report(4, ok, f"(multiset match, pointwise closed-form match): {results}", elapsed)
    assert ok


def test_criterion_5_differential_minimality():
    t = time.perf_counter()
    dims = [(3, 1), (3, 2), (4, 1), (4, 2)]
    total = agree = not_minimal = witnesses = 0
    for F in nonaffine_corpus(60, dims, np.random.default_rng(5)):
        total += 1
        cov = covering_oracle(F)
        t3 = theorem3_check(F)
        wi = weight_identity_check(F)
        agree += cov.minimal == t3.minimal == wi.minimal
        if t3.minimal is False:
            not_minimal += 1
            witnesses += theorem3_witness_value(F, t3.witness) == 2 * 3**F.n and covering_witness_holds(F, cov.witness)
    elapsed = time.perf_counter() - t
    ok = agree == total and total >= 50 and witnesses == not_minimal and elapsed < 600
    report(
        5,
        ok,
        f"agreement {agree}/{total} ({not_minimal} not minimal, {witnesses} witnesses re-verified)",
        elapsed,
    )
    assert agree == total >= 50
    assert witnesses == not_minimal
    assert elapsed < 600


def test_criterion_6_theorem6_end_to_end():
    t = time.perf_counter()
    R = theorem6_build_and_verify(7, 3, 1, 2, sampled_pairs=10**6, seed=0)
    a = R.analysis
    observed = {
        "params": (a.length, a.dimension, a.d),
        "w_max": a.ab.w_max,
        "ab_violated": 3 * a.d < 2 * a.ab.w_max,
        "theorem5": a.minimality["theorem5"]["minimal"],
        "theorem3": a.minimality["theorem3"]["minimal"],
        "covering_pairs": a.minimality["covering_oracle"]["pairs_tested"] >= 10**6,
        "covering_witness": a.minimality["covering_oracle"]["witness"],
    }
    want = {
        "params": (2186, 9, 981),
        "w_max": 1701,
        "ab_violated": True,
        "theorem5": True,
        "theorem3": True,
        "covering_pairs": True,
        "covering_witness": None,
    }
    elapsed = time.perf_counter() - t
    report(6, observed == want and elapsed < 900, f"{observed}", elapsed)
    assert observed == want
    assert elapsed < 900


def test_criterion_7_identity_cross_checks():
    t = time.perf_counter()
    rng = np.random.default_rng(77)
    nine = 0
    for _ in range(20):
        (lr, lo), (rr, ro) = three_function_identity(*(rng.integers(0, 3, 81) for _ in range(3)))
        nine += np.array_equal(lr, rr) and np.array_equal(lo, ro)
    blocks = sum(prop3_blocks(random_function(5, 1, rng), random_function(5, 2, rng))[0] for _ in range(10))
    bound = 0
    for n, s in [(5, 1), (6, 0), (6, 2), (7, 1), (5, 1), (6, 0), (6, 2), (7, 1), (6, 0), (7, 1)]:
        E = random_subspace(n, int(rng.integers(1, n - 1)), rng)
        phi = indicator_plus_plateaued(plateaued_seed(n, s, 1).table, E)
        bound += int(norms(*walsh_transform_values(phi)).max()) <= indicator_plus_plateaued_bound(n, s, E.dim)
    observed = (int(nine), int(blocks), int(bound))
    elapsed = time.perf_counter() - t
    report(7, observed == (20, 10, 10), f"nine-term {nine}/20, block formulas {blocks}/10, norm bound {bound}/10", elapsed)
    assert observed == (20, 10, 10)


def test_criterion_8_bound_sufficiency():
    t = time.perf_counter()
    corpus = list(nonaffine_corpus(60, [(3, 1), (3, 2), (4, 1), (4, 2)], np.random.default_rng(5)))
    corpus += [plateaued_seed(n, s, m) for n, s, m in [(5, 1, 1), (5, 1, 2), (6, 0, 1), (6, 0, 2), (6, 0, 3), (6, 2, 2), (7, 1, 2)]]
    f, _, _, _ = standard_indicator_quadratic(7, 3)
    corpus.append(compose(f, plateaued_seed(7, 1, 1)))
    holds = counterexamples = 0
    for F in corpus:
        if corollary1_bound(F).minimal:
            holds += 1
            counterexamples += theorem3_check(F).minimal is not True
    elapsed = time.perf_counter() - t
    ok = counterexamples == 0 and holds > 0
    report(8, ok, f"bound held on {holds}/{len(corpus)} instances, counterexamples {counterexamples}", elapsed)
    assert counterexamples == 0
    assert holds > 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
