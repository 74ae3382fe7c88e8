"""Concrete (n,m)-functions and their spectral classification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf3 import (
    ExtField,
    SubspaceSpec,
    TernaryVector,
    all_digits,
    dual_subspace,
    from_digits,
)
from .tables import FunctionTable, scalar_function
from .walsh import EisArray, norms, rotate, spectrum_of, walsh_transform_values


class ConstructionError(ValueError):
    """A constructor's preconditions are not met."""


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _inner_with_all(v: TernaryVector) -> np.ndarray:
    X = all_digits(v.n).astype(np.int64)
    return (X @ np.array(v.coords, dtype=np.int64)) % 3


def indicator_quadratic_violations(E: SubspaceSpec, a: TernaryVector, b: TernaryVector) -> list[str]:
    """Names among a, b, a+b, a-b that lie in the dual of E."""
    Ed = dual_subspace(E)
    named = {"a": a, "b": b, "a+b": a + b, "a-b": a - b}
    return [name for name, v in named.items() if v in Ed]


def make_indicator_quadratic(E: SubspaceSpec, a: TernaryVector, b: TernaryVector) -> FunctionTable:
    """f(x) = 1_E(x) + (a.x)(b.x) + 2."""
    n = E.ambient_n
    if a.n != n or b.n != n:
        raise ConstructionError("a and b must live in the ambient space of E")
    if SubspaceSpec.span(n, [a, b]).dim != 2:
        raise ConstructionError("a and b must be linearly independent")
    bad = indicator_quadratic_violations(E, a, b)
    if bad:
        raise ConstructionError(f"{', '.join(bad)} lie(s) in the dual of E")
    if n - E.dim <= 2:
        raise ConstructionError(f"need n - dim(E) > 2, got n={n}, dim(E)={E.dim}")
    f = E.indicator().astype(np.int64) + _inner_with_all(a) * _inner_with_all(b) + 2
    return scalar_function(f)


def standard_indicator_quadratic(n: int, r: int) -> tuple[FunctionTable, SubspaceSpec, TernaryVector, TernaryVector]:
    """Deterministic instance: E spanned by e_0..e_{r-1}, a = e_0, b = e_1."""
    if r < 2:
        raise ConstructionError("r >= 2 is needed for a, b independent modulo the dual of E")
    E = SubspaceSpec.coordinate(n, range(r))
    a, b = TernaryVector.unit(0, n), TernaryVector.unit(1, n)
    return make_indicator_quadratic(E, a, b), E, a, b


def make_field_mult_bent(k: int, m: int) -> FunctionTable:
    """F(x, y) = (tr(X^i x y))_{i<m} on GF(3^k)^2 = F_3^(2k).

    Input coordinates 0..k-1 hold x, k..2k-1 hold y, both in the polynomial
    basis of the Conway modulus.
    """
    if not 1 <= m <= k:
        raise ConstructionError(f"need 1 <= m <= k, got m={m}, k={k}")
    K = ExtField(k)
    q = K.q
    ranks = np.arange(q * q)
    xy = K.mul(ranks % q, ranks // q)
    comps = [K.trace(K.mul(np.full_like(xy, 3**i), xy)) for i in range(m)]
    return FunctionTable.from_components(comps)


def extend_with_dummy(G: FunctionTable, extra: int) -> FunctionTable:
    """G'(x, z) = G(x) with ``extra`` new high-order input coordinates z."""
    if extra < 1:
        raise ConstructionError("extra must be at least 1")
    return FunctionTable(G.n + extra, G.m, np.tile(G.table, 3**extra))


def compose(f: FunctionTable, G: FunctionTable) -> FunctionTable:
    """F = (f, G): output coordinate 0 is f, coordinates 1.. are G."""
    if f.m != 1:
        raise ConstructionError("f must be scalar (m = 1)")
    if f.n != G.n:
        raise ConstructionError(f"dimension mismatch: f has n={f.n}, G has n={G.n}")
    return FunctionTable(f.n, 1 + G.m, f.table + 3 * G.table)


def project(F: FunctionTable, coords: list[int]) -> FunctionTable:
    return FunctionTable.from_components([F.coordinate(i) for i in coords])


def component_function(F: FunctionTable, mu: int | TernaryVector) -> FunctionTable:
    return scalar_function(F.component(mu))


def plateaued_seed(n: int, s: int, m: int) -> FunctionTable:
    """Vectorial s-plateaued (n, m)-function: field-mult bent on n - s inputs, dummy-extended."""
    if (n - s) % 2:
        raise ConstructionError(f"n - s must be even, got n={n}, s={s}")
    k = (n - s) // 2
    G = make_field_mult_bent(k, m)
    return extend_with_dummy(G, s) if s else G


@dataclass(frozen=True)
class CompositeSpec:
    """f = 1_E + (a.x)(b.x) + 2 paired with a seed G; F = (f, G)."""

    f: FunctionTable
    G: FunctionTable
    E: SubspaceSpec
    a: TernaryVector
    b: TernaryVector
    s: int

    @property
    def r(self) -> int:
        return self.E.dim

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def F(self) -> FunctionTable:
        return compose(self.f, self.G)

    @classmethod
    def standard(cls, n: int, r: int, s: int, m: int) -> CompositeSpec:
        f, E, a, b = standard_indicator_quadratic(n, r)
        return cls(f, plateaued_seed(n, s, m - 1), E, a, b, s)

    def problems(self) -> list[str]:
        out = []
        if self.F.table[0] != 0:
            out.append("F(0) != 0")
        if SubspaceSpec.span(self.n, [self.a, self.b]).dim != 2:
            out.append("a, b dependent")
        out += [f"{v} in dual of E" for v in indicator_quadratic_violations(self.E, self.a, self.b)]
        return out


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentClass:
    s: int | None  # None: not plateaued
    regular: bool
    parity_ok: bool = True  # False when n + s is odd

    @property
    def plateaued(self) -> bool:
        return self.s is not None


@dataclass(frozen=True)
class PlateauClassification:
    n: int
    m: int
    per_component: dict[int, ComponentClass] = field(repr=False)

    @property
    def uniform_s(self) -> int | None:
        ss = {c.s for c in self.per_component.values()}
        if len(ss) == 1:
            return ss.pop()
        return None

    @property
    def vectorial_regular(self) -> bool:
        return self.uniform_s is not None and all(c.regular for c in self.per_component.values())

    @property
    def bent(self) -> bool:
        return self.uniform_s == 0

    def summary(self) -> str:
        s = self.uniform_s
        if s is None:
            plateaued = sum(c.plateaued for c in self.per_component.values())
            return f"not uniformly plateaued ({plateaued}/{len(self.per_component)} components plateaued)"
        kind = "bent" if s == 0 else f"{s}-plateaued"
        return f"vectorial {'regular ' if self.vectorial_regular else ''}{kind}"


def classify_row(row: EisArray, n: int) -> ComponentClass:
    re, om = row
    nm = norms(re, om)
    nz = nm[nm != 0]
    vals = np.unique(nz)
    if vals.size != 1:
        return ComponentClass(None, False)
    v = int(vals[0])
    e = 0
    while 3**e < v:
        e += 1
    if 3**e != v or e < n:
        return ComponentClass(None, False)
    s = e - n
    if (n + s) % 2:
        return ComponentClass(s, False, parity_ok=False)
    c = 3 ** ((n + s) // 2)
    mask = nm != 0
    r, o = re[mask], om[mask]
    regular = bool(np.all(((r == c) & (o == 0)) | ((r == 0) & (o == c)) | ((r == -c) & (o == -c))))
    return ComponentClass(s, regular)


def classify(F: FunctionTable) -> PlateauClassification:
    spec = spectrum_of(F)
    per = {mu: classify_row(spec.row(mu), F.n) for mu in range(1, 3**F.m)}
    return PlateauClassification(F.n, F.m, per)


def is_component_affine(F: FunctionTable, mu: int | TernaryVector) -> bool:
    mu_rank = mu.rank if isinstance(mu, TernaryVector) else int(mu)
    if mu_rank == 0:
        raise ValueError("mu must be nonzero")
    nm = spectrum_of(F).norm(mu_rank)
    nz = nm[nm != 0]
    return nz.size == 1 and int(nz[0]) == 3 ** (2 * F.n)


def affine_components(F: FunctionTable) -> list[int]:
    return [mu for mu in range(1, 3**F.m) if is_component_affine(F, mu)]


# ---------------------------------------------------------------------------
# Identities used as cross-checks
# ---------------------------------------------------------------------------


def three_function_identity(phi1: np.ndarray, phi2: np.ndarray, phi3: np.ndarray) -> tuple[EisArray, EisArray]:
    """Both sides of the nine-term identity for f = phi1 + (phi2-phi1)(phi3-phi1).

    Returns ``(3 W_f, combination)``; they agree exactly for any inputs.
    """
    p1, p2, p3 = (np.asarray(p, dtype=np.int64) % 3 for p in (phi1, phi2, phi3))
    f = (p1 + (p2 - p1) * (p3 - p1)) % 3
    wr, wo = walsh_transform_values(f)
    lhs = (3 * wr, 3 * wo)

    def W(g: np.ndarray) -> EisArray:
        return walsh_transform_values(g % 3)

    plain = [W(p1), W(p2), W(2 * (p1 + p2)), W(p3), W(2 * (p1 + p3))]
    times_w = [W(p1 + 2 * p2 + p3), W(p1 + p2 + 2 * p3)]
    times_w2 = [W(2 * p1 + p2 + p3), W(2 * (p2 + p3))]
    re = np.zeros_like(wr)
    om = np.zeros_like(wo)
    for j, group in ((0, plain), (1, times_w), (2, times_w2)):
        for r, o in group:
            rr, ro = rotate(r, o, j)
            re = re + rr
            om = om + ro
    return lhs, (re, om)


def indicator_plus_plateaued(g: np.ndarray, E: SubspaceSpec) -> np.ndarray:
    """phi(x) = g(x) + 1_E(x) + 2."""
    return (np.asarray(g, dtype=np.int64) + E.indicator() + 2) % 3


def indicator_plus_plateaued_bound(n: int, s: int, r: int) -> int:
    """Square of 3^((n+s)/2) + 2*3^r, the bound on |W_phi|^2."""
    if (n + s) % 2:
        raise ValueError("n + s must be even")
    return (3 ** ((n + s) // 2) + 2 * 3**r) ** 2


def expected_indicator_quadratic_two_re(
    E: SubspaceSpec, a: TernaryVector, b: TernaryVector
) -> np.ndarray:
    """Closed-form 2*Re(W_f(nu)) for f = 1_E + (a.x)(b.x) + 2, from coset membership.

    nu and t are in the same coset of the dual of E iff they have the same
    inner products with a basis of E.
    """
    n = E.ambient_n
    r = E.dim
    X = all_digits(n).astype(np.int64)
    B = np.array([e.coords for e in E.basis], dtype=np.int64).reshape(r, n)
    syndrome = from_digits((X @ B.T) % 3) if r else np.zeros(3**n, dtype=np.int64)

    def vec(i: int, j: int) -> TernaryVector:
        return a.scale(i) + b.scale(j)

    def coset_mask(vs: list[TernaryVector]) -> np.ndarray:
        syn = {int(syndrome[v.rank]) for v in vs}
        return np.isin(syndrome, list(syn))

    plus = [vec(0, 0), vec(1, 0), vec(2, 0), vec(0, 1), vec(0, 2)]
    peak = [vec(1, 2), vec(2, 1)]
    trough = [vec(1, 1), vec(2, 2)]
    T = np.zeros(3**n, dtype=bool)
    T[[vec(i, j).rank for i in range(3) for j in range(3)]] = True

    out = np.zeros(3**n, dtype=np.int64)
    out[coset_mask(plus) & ~T] = 3**r
    out[coset_mask(peak) & ~T] = -(3**r)
    out[[v.rank for v in plus]] = -(3 ** (n - 1)) + 3**r
    out[[v.rank for v in peak]] = 2 * 3 ** (n - 1) - 3**r
    out[[v.rank for v in trough]] = -(3 ** (n - 1))
    return out
