"""Families attached to the generic univalent seed f(z) = z(1 + sum c_n z^n).

Everything here is built from generating functions over the exact
coefficient ring:

* Faber polynomials ``F_n(w)`` of the reflected function 1/f(1/z), from
  z f'(z) / (f(z) - w f(z)^2) = 1 + sum F_n(w) z^n;
* the companion family ``T_n(w)`` from z f'(z)^2 / (f(z) - w f(z)^2);
* diagonal coefficients ``a_p^p`` from z^2 f'(z)^2 / f(z)^2;
* Grunsky coefficients ``beta_{n,k}``, by the bivariate logarithm kernel and
  independently by expanding F_n(1/f(z));
* the eliminator Laurent polynomials ``Lambda_p(u)`` (exponents 1-p .. 1)
  that cancel every power z^m, m <= 1, of z^(1-p) f'(z) when u = f(z);
* the vector-field coefficient tables ``A_n^p`` (and intermediates
  ``B_k^p``), again by two independent routes.

Where two formulas exist for the same object, both are implemented and their
exact equality is a checked property; no family trusts another family's
route.  Builders compute the seed truncation order they need, and the series
layer raises OrderError on any overreach, so silently truncated tables
cannot occur.  All tables are immutable once built; builders are cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .polyring import CoeffPoly
from .reports import CheckReport, IdentityPair, cell
from .series import (
    BiSeries,
    LaurentSeries,
    LaurentWPoly,
    PowerSeries,
    WPoly,
    bi_log_in_u,
    const_series,
    divided_difference,
    laurent_pow,
    laurent_recip,
    seed_series,
    zero_series,
)


class EliminationError(ValueError):
    """A low-order power survived where the eliminator must cancel it."""

    def __init__(self, p: int, power: int, value: CoeffPoly):
        super().__init__(
            f"elimination failed for p={p}: coefficient of z^{power} is "
            f"{value.render()}, expected 0"
        )
        self.p = p
        self.power = power


# -- shared seed-derived series ------------------------------------------------


@lru_cache(maxsize=None)
def _seed(order: int) -> PowerSeries:
    return seed_series(order)


@lru_cache(maxsize=None)
def _r_series(order: int) -> PowerSeries:
    """r(z) = z / f(z) = 1 / (1 + c1 z + c2 z^2 + ...), through z^order."""
    return laurent_recip(_seed(order + 1).shift(-1))


@lru_cache(maxsize=None)
def _s_series(order: int) -> PowerSeries:
    """S(z) = z^2 f'(z)^2 / f(z)^2 = (f'(z) r(z))^2, through z^order."""
    fprime = _seed(order + 1).derivative()
    return laurent_pow(fprime * _r_series(order), 2)


def _f_powers(order: int, mmax: int) -> list[LaurentSeries]:
    """[f^0, f^1, ..., f^mmax] with f taken through z^order.

    Each power is truncated back to ``order``; precision beyond it is never
    consumed, and dropping it keeps the chain of products from ballooning.
    """
    f = _seed(order)
    powers = [const_series(1)]
    for _ in range(mmax):
        powers.append((powers[-1] * f).truncate(order))
    return powers


# -- family containers ------------------------------------------------------------


@dataclass(frozen=True)
class FaberFamily:
    max_index: int
    entries: tuple[WPoly, ...]  # F_1 .. F_max_index
    provenance: str = "generating-function"

    def poly(self, n: int) -> WPoly:
        if not 1 <= n <= self.max_index:
            raise IndexError(f"F_{n} not in family (have 1..{self.max_index})")
        return self.entries[n - 1]


@dataclass(frozen=True)
class TFamily:
    max_index: int
    entries: tuple[WPoly, ...]  # T_0 .. T_max_index
    provenance: str = "generating-function"

    def poly(self, n: int) -> WPoly:
        if not 0 <= n <= self.max_index:
            raise IndexError(f"T_{n} not in family (have 0..{self.max_index})")
        return self.entries[n]


@dataclass(frozen=True)
class DiagonalCoeffs:
    max_index: int
    entries: tuple[CoeffPoly, ...]  # a_1^1 .. a_P^P
    provenance: str = "generating-function"

    def a(self, p: int) -> CoeffPoly:
        if not 1 <= p <= self.max_index:
            raise IndexError(f"a_{p}^{p} not in table (have 1..{self.max_index})")
        return self.entries[p - 1]


@dataclass(frozen=True)
class GrunskyTable:
    n_max: int
    k_max: int
    entries: dict
    provenance: str = "log-kernel"

    def beta(self, n: int, k: int) -> CoeffPoly:
        if not (1 <= n <= self.n_max and 1 <= k <= self.k_max):
            raise IndexError(
                f"beta_{n},{k} not in table (have n<={self.n_max}, k<={self.k_max})"
            )
        return self.entries[(n, k)]


@dataclass(frozen=True)
class LambdaFamily:
    max_index: int
    entries: tuple[LaurentWPoly, ...]  # Lambda_0 .. Lambda_P
    provenance: str = "generating-function"

    def poly(self, p: int) -> LaurentWPoly:
        if not 0 <= p <= self.max_index:
            raise IndexError(f"Lambda_{p} not in family (have 0..{self.max_index})")
        return self.entries[p]


@dataclass(frozen=True)
class AFieldTable:
    p_max: int
    n_max: int
    a_entries: dict
    b_entries: dict
    provenance: str = "elimination"

    def A(self, p: int, n: int) -> CoeffPoly:
        if not (0 <= p <= self.p_max and 0 <= n <= self.n_max):
            raise IndexError(
                f"A_{n}^{p} not in table (have p<={self.p_max}, n<={self.n_max})"
            )
        return self.a_entries[(p, n)]

    def B(self, p: int, k: int) -> CoeffPoly:
        if not (1 <= p <= self.p_max and 0 <= k <= self.n_max):
            raise IndexError(
                f"B_{k}^{p} not in table (have 1<=p<={self.p_max}, k<={self.n_max})"
            )
        return self.b_entries[(p, k)]


# -- Faber and T families -----------------------------------------------------------


def _marker_family(front: PowerSeries, max_index: int, order: int) -> list[WPoly]:
    """Coefficients of z^n in front(z) * sum_m w^m f(z)^m, arranged by w powers."""
    powers = _f_powers(order + 1, max_index)
    gs = [front * fm for fm in powers]
    out = []
    for n in range(1, max_index + 1):
        out.append(WPoly([gs[m].coefficient(n) for m in range(n + 1)]))
    return out


@lru_cache(maxsize=None)
def faber_polys(N: int) -> FaberFamily:
    """Faber polynomials F_1..F_N of 1/f(1/z), read off the generating series."""
    if N < 1:
        raise ValueError("need N >= 1")
    front = _seed(N + 1).derivative() * _r_series(N)  # z f'/f
    return FaberFamily(N, tuple(_marker_family(front, N, N)))


@lru_cache(maxsize=None)
def t_polys(N: int) -> TFamily:
    """T_0..T_N from the squared-derivative generating series."""
    if N < 0:
        raise ValueError("need N >= 0")
    if N == 0:
        return TFamily(0, (WPoly([1]),))
    fprime = _seed(N + 1).derivative()
    front = fprime * fprime * _r_series(N)  # z f'^2 / f
    return TFamily(N, (WPoly([1]), *_marker_family(front, N, N)))


@lru_cache(maxsize=None)
def t_from_faber(N: int) -> TFamily:
    """Second route: T_n = F_n + 2 c1 F_{n-1} + ... + n c_{n-1} F_1 + (n+1) c_n."""
    if N < 0:
        raise ValueError("need N >= 0")
    entries = [WPoly([1])]
    if N >= 1:
        fab = faber_polys(N)
        for n in range(1, N + 1):
            t = fab.poly(n)
            for j in range(1, n):
                t = t + fab.poly(n - j) * (CoeffPoly.var(j) * (j + 1))
            t = t + WPoly([CoeffPoly.var(n) * (n + 1)])
            entries.append(t)
    return TFamily(N, tuple(entries), provenance="faber-combination")


# -- diagonal coefficients ------------------------------------------------------------


@lru_cache(maxsize=None)
def diag_a(P: int) -> DiagonalCoeffs:
    """a_p^p read off z^2 f'(z)^2 / f(z)^2 = 1 + sum a_p^p z^p."""
    if P < 1:
        raise ValueError("need P >= 1")
    s = _s_series(P)
    return DiagonalCoeffs(P, tuple(s.coefficient(p) for p in range(1, P + 1)))


@lru_cache(maxsize=None)
def diag_a_grunsky(P: int) -> DiagonalCoeffs:
    """Second route: a_1^1 = 2 c1 and, for p > 1,
    a_p^p = (p+1) c_p - [beta_{p-1,1} + 2 c1 beta_{p-2,1} + ... + (p-1) c_{p-2} beta_{1,1}].
    """
    if P < 1:
        raise ValueError("need P >= 1")
    entries = [CoeffPoly.var(1) * 2]
    if P >= 2:
        table = grunsky_log(P - 1, 1)
        for p in range(2, P + 1):
            acc = CoeffPoly.var(p) * (p + 1)
            for i in range(0, p - 1):
                ci = CoeffPoly.one() if i == 0 else CoeffPoly.var(i)
                acc = acc - ci * (i + 1) * table.beta(p - 1 - i, 1)
            entries.append(acc)
    return DiagonalCoeffs(P, tuple(entries), provenance="grunsky-combination")


# -- Grunsky coefficients ------------------------------------------------------------


@lru_cache(maxsize=None)
def grunsky_log(N: int, K: int) -> GrunskyTable:
    """Grunsky table from the logarithm kernel

        log[ (1/f(u) - 1/f(v)) / (1/u - 1/v) ] = - sum (1/n) beta_{n,k} u^n v^k.

    The kernel ratio is (v r(u) - u r(v)) / (v - u) with r = z/f, formed by
    the divided-difference operation; its diagonal vanishing is checked.
    """
    if N < 1 or K < 1:
        raise ValueError("need N, K >= 1")
    nv = N + K + 1
    r = _r_series(max(N, nv))
    zero = CoeffPoly.zero()
    rows = [[zero] * (nv + 1) for _ in range(N + 1)]
    for i in range(N + 1):
        rows[i][1] = rows[i][1] + r.coefficient(i)  # v * r(u)
    for j in range(nv + 1):
        rows[1][j] = rows[1][j] - r.coefficient(j)  # - u * r(v)
    P = BiSeries(rows, N, nv, 0, False)
    Q = divided_difference(P)  # rectangle (N, K)
    L = bi_log_in_u(Q)
    entries = {}
    for n in range(1, N + 1):
        for k in range(1, K + 1):
            entries[(n, k)] = L.coefficient(n, k) * (-n)
    return GrunskyTable(N, K, entries, provenance="log-kernel")


@lru_cache(maxsize=None)
def grunsky_compose(N: int, K: int) -> GrunskyTable:
    """Second route: beta_{n,k} is the z^k coefficient of F_n(1/f(z)).

    The expansion structure F_n(1/f(z)) = z^-n + sum_{k>=1} beta_{n,k} z^k is
    verified while reading the table off.
    """
    if N < 1 or K < 1:
        raise ValueError("need N, K >= 1")
    fab = faber_polys(N)
    h = laurent_recip(_seed(K + N + 2))  # 1/f(z), valuation -1
    entries = {}
    for n in range(1, N + 1):
        expansion = fab.poly(n).eval_at(h)
        if expansion.coefficient(-n) != CoeffPoly.one():
            raise EliminationError(n, -n, expansion.coefficient(-n) - 1)
        for m in range(-n + 1, 1):
            if expansion.coefficient(m):
                raise EliminationError(n, m, expansion.coefficient(m))
        for k in range(1, K + 1):
            entries[(n, k)] = expansion.coefficient(k)
    return GrunskyTable(N, K, entries, provenance="faber-composition")


# -- eliminator Laurent polynomials ---------------------------------------------------


@lru_cache(maxsize=None)
def lambda_direct(P: int) -> LambdaFamily:
    """Lambda_0..Lambda_P from

        xi^2 f'(xi)^2 / f(xi)^2 * u^2 / (f(xi) - u) = sum_p Lambda_p(u) xi^p,

    expanding 1/(f(xi) - u) = - sum_m f(xi)^m / u^{m+1}; only m <= p
    contributes to the xi^p coefficient because f(xi)^m has valuation m.
    """
    if P < 0:
        raise ValueError("need P >= 0")
    s = _s_series(P)
    powers = _f_powers(P + 1, P)
    prods = [s * fm for fm in powers]  # S * f^m, xi-order >= P
    entries = []
    for p in range(P + 1):
        lam = LaurentWPoly(
            {1 - m: -prods[m].coefficient(p) for m in range(p + 1)}
        )
        entries.append(lam)
    return LambdaFamily(P, tuple(entries))


@lru_cache(maxsize=None)
def lambda_from_t(P: int) -> LambdaFamily:
    """Second route: Lambda_p(u) = -T_{p-1}(1/u) - a_p^p u for p >= 1."""
    if P < 0:
        raise ValueError("need P >= 0")
    entries = [LaurentWPoly({1: -1})]  # Lambda_0 = -u
    if P >= 1:
        tfam = t_polys(P - 1)
        diag = diag_a(P)
        for p in range(1, P + 1):
            lam = -tfam.poly(p - 1).reciprocal_substitute()
            lam = lam + LaurentWPoly({1: -diag.a(p)})
            entries.append(lam)
    return LambdaFamily(P, tuple(entries), provenance="t-combination")


def phi_p(p: int, N: int) -> LaurentSeries:
    """phi_p(z) = Lambda_p(f(z)), a Laurent series with valuation 1-p, through z^N."""
    if p < 0:
        raise ValueError("need p >= 0")
    lam = lambda_direct(p).poly(p)
    f = _seed(N + p) if N + p >= 1 else _seed(1)
    return lam.eval_at(f).truncate(N)


# -- vector-field coefficient tables ----------------------------------------------------


@lru_cache(maxsize=None)
def _elimination_family(P: int, f_order: int) -> tuple:
    """E_p = z^(1-p) f'(z) + Lambda_p(f(z)) for p = 0..P, one power ladder.

    All negative powers of f are built incrementally from a single
    reciprocal, so the family costs barely more than its largest member.
    """
    f = _seed(f_order)
    fprime = f.derivative()
    lams = lambda_direct(P)
    pows = {0: const_series(1), 1: f}
    if P >= 2:
        finv = laurent_recip(f)
        cur = finv
        pows[-1] = cur
        for e in range(-2, -P, -1):
            cur = cur * finv
            pows[e] = cur
    out = []
    for p in range(P + 1):
        e_ser = fprime.shift(1 - p)
        for e, coeff in lams.poly(p).entries.items():
            e_ser = e_ser + pows[e].scale(coeff)
        out.append(e_ser)
    return tuple(out)


def elimination_series(p: int, f_order: int) -> LaurentSeries:
    """z^(1-p) f'(z) + Lambda_p(f(z)), determined through z^(f_order - p)."""
    return _elimination_family(p, f_order)[p]


@lru_cache(maxsize=None)
def a_field_direct(P: int, N: int) -> AFieldTable:
    """A_n^p read off z^(1-p) f'(z) + Lambda_p(f(z)) = sum_{n>=1} A_n^p z^{n+1}.

    Every surviving power z^m with m <= 1 is a hard error: the eliminator
    must cancel the principal part, the constant and the linear term.
    """
    if P < 0 or N < 1:
        raise ValueError("need P >= 0 and N >= 1")
    family = _elimination_family(P, N + 1 + P)
    a_entries = {}
    for p in range(P + 1):
        e = family[p]
        for m in range(e.valuation, 2):
            value = e.coefficient(m)
            if value:
                raise EliminationError(p, m, value)
        a_entries[(p, 0)] = CoeffPoly.zero()
        for n in range(1, N + 1):
            a_entries[(p, n)] = e.coefficient(n + 1)
    b_entries = {}
    diag = diag_a(P) if P >= 1 else None
    for p in range(1, P + 1):
        b_entries[(p, 0)] = diag.a(p)
        for k in range(1, N + 1):
            ck = CoeffPoly.var(k)
            b_entries[(p, k)] = a_entries[(p, k)] + diag.a(p) * ck
    return AFieldTable(P, N, a_entries, b_entries, provenance="elimination")


@lru_cache(maxsize=None)
def a_field_grunsky(P: int, N: int) -> AFieldTable:
    """Second route, via Grunsky coefficients:

        B_k^p = (p+k+1) c_{p+k} - [beta_{p-1,k+1} + 2 c1 beta_{p-2,k+1} + ...]
        A_k^p = B_k^p - a_p^p c_k,

    with the conventions c_0 = 1, B_0^p = a_p^p, A_0^p = 0, the explicit
    branch B_k^1 = (k+2) c_{k+1}, and A_k^0 = k c_k.
    """
    if P < 0 or N < 1:
        raise ValueError("need P >= 0 and N >= 1")
    table = grunsky_log(P - 1, N + 1) if P >= 2 else None
    diag = diag_a_grunsky(P) if P >= 1 else None
    a_entries = {}
    b_entries = {}
    for n in range(N + 1):
        a_entries[(0, n)] = CoeffPoly.var(n) * n if n else CoeffPoly.zero()
    for p in range(1, P + 1):
        ap = diag.a(p)
        b_entries[(p, 0)] = ap
        a_entries[(p, 0)] = CoeffPoly.zero()
        for k in range(1, N + 1):
            if p == 1:
                b = CoeffPoly.var(k + 1) * (k + 2)
            else:
                b = CoeffPoly.var(p + k) * (p + k + 1)
                for i in range(0, p - 1):
                    ci = CoeffPoly.one() if i == 0 else CoeffPoly.var(i)
                    b = b - ci * (i + 1) * table.beta(p - 1 - i, k + 1)
            b_entries[(p, k)] = b
            a_entries[(p, k)] = b - ap * CoeffPoly.var(k)
    return AFieldTable(P, N, a_entries, b_entries, provenance="grunsky-combination")


# -- identity checks ----------------------------------------------------------------


def faber_derivative_identity_check(N: int) -> CheckReport:
    """Check f(z)/(1 - w f(z)) = sum_n F'_n(w) z^n / n coefficientwise."""
    return CheckReport("faber-derivative", tuple(_faber_derivative_cells(N)))


def _faber_derivative_cells(N: int):
    fab = faber_polys(N)
    powers = _f_powers(N, N)
    f = _seed(N)
    fpow = [fm * f for fm in powers]  # f^{m+1}
    for n in range(1, N + 1):
        lhs = WPoly([fpow[m].coefficient(n) * n for m in range(n)])
        rhs = fab.poly(n).deriv_w()
        ok = lhs == rhs
        detail = "" if ok else (
            f"n*[z^{n}] f/(1-wf) = {lhs.render()} but F_{n}'(w) = {rhs.render()}")
        yield cell(ok, detail, n=n)


def faber_derivative_pairs(N: int) -> list[IdentityPair]:
    fab = faber_polys(N)
    powers = _f_powers(N, N)
    f = _seed(N)
    fpow = [fm * f for fm in powers]
    out = []
    for n in range(1, N + 1):
        lhs = WPoly([fpow[m].coefficient(n) * n for m in range(n)])
        rhs = fab.poly(n).deriv_w()
        for m in range(max(lhs.degree, rhs.degree) + 1):
            out.append(IdentityPair("faber-derivative", (("n", n), ("m", m)),
                                    lhs.coefficient(m), rhs.coefficient(m)))
    return out


def grunsky_symmetry_check(N: int) -> CheckReport:
    """k beta_{n,k} = n beta_{k,n} for 1 <= n, k <= N, exactly."""
    table = grunsky_log(N, N)
    cells = []
    for n in range(1, N + 1):
        for k in range(1, N + 1):
            lhs = table.beta(n, k) * k
            rhs = table.beta(k, n) * n
            ok = lhs == rhs
            detail = "" if ok else (
                f"k*beta = {lhs.render()} vs n*beta(swapped) = {rhs.render()}")
            cells.append(cell(ok, detail, n=n, k=k))
    return CheckReport("grunsky-symmetry", tuple(cells))


def grunsky_symmetry_pairs(N: int) -> list[IdentityPair]:
    table = grunsky_log(N, N)
    return [
        IdentityPair("grunsky-symmetry", (("n", n), ("k", k)),
                     table.beta(n, k) * k, table.beta(k, n) * n)
        for n in range(1, N + 1) for k in range(1, N + 1)
    ]


def route_equivalence_check(grunsky_n: int = 10, t_n: int = 10, diag_p: int = 10,
                            lambda_p: int = 10, afield_p: int = 8,
                            afield_n: int = 8) -> CheckReport:
    """Exact equality of every dual-route construction."""
    cells = []
    for pair in route_equivalence_pairs(grunsky_n, t_n, diag_p, lambda_p,
                                        afield_p, afield_n):
        ok = pair.lhs == pair.rhs
        detail = "" if ok else (
            f"{pair.label()}: {pair.lhs.render()} != {pair.rhs.render()}")
        cells.append(cell(ok, detail, **dict(pair.indices)))
    return CheckReport("routes", tuple(cells))


def route_equivalence_pairs(grunsky_n: int = 10, t_n: int = 10, diag_p: int = 10,
                            lambda_p: int = 10, afield_p: int = 8,
                            afield_n: int = 8) -> list[IdentityPair]:
    out = []
    g1 = grunsky_log(grunsky_n, grunsky_n)
    g2 = grunsky_compose(grunsky_n, grunsky_n)
    for n in range(1, grunsky_n + 1):
        for k in range(1, grunsky_n + 1):
            out.append(IdentityPair("routes-grunsky", (("n", n), ("k", k)),
                                    g1.beta(n, k), g2.beta(n, k)))
    t1 = t_polys(t_n)
    t2 = t_from_faber(t_n)
    for n in range(t_n + 1):
        for m in range(n + 1):
            out.append(IdentityPair("routes-t", (("n", n), ("m", m)),
                                    t1.poly(n).coefficient(m),
                                    t2.poly(n).coefficient(m)))
    d1 = diag_a(diag_p)
    d2 = diag_a_grunsky(diag_p)
    for p in range(1, diag_p + 1):
        out.append(IdentityPair("routes-diag", (("p", p),), d1.a(p), d2.a(p)))
    l1 = lambda_direct(lambda_p)
    l2 = lambda_from_t(lambda_p)
    for p in range(lambda_p + 1):
        for e in range(1 - p, 2):
            out.append(IdentityPair("routes-lambda", (("p", p), ("e", e)),
                                    l1.poly(p).coefficient(e),
                                    l2.poly(p).coefficient(e)))
    a1 = a_field_direct(afield_p, afield_n)
    a2 = a_field_grunsky(afield_p, afield_n)
    for p in range(afield_p + 1):
        for n in range(afield_n + 1):
            out.append(IdentityPair("routes-afield", (("p", p), ("n", n)),
                                    a1.A(p, n), a2.A(p, n)))
    for p in range(1, afield_p + 1):
        for k in range(afield_n + 1):
            out.append(IdentityPair("routes-bfield", (("p", p), ("k", k)),
                                    a1.B(p, k), a2.B(p, k)))
    return out


def elimination_check(pmax: int, seed_order=None) -> CheckReport:
    """For each p, z^(1-p) f'(z) + Lambda_p(f(z)) has no power z^m with m <= 1.

    Default seed order is 2p + 10 per index.
    """
    cells = []
    for p in range(pmax + 1):
        order = seed_order if seed_order is not None else 2 * p + 10
        order = max(order, p + 2)
        e = elimination_series(p, order)
        for m in range(min(e.valuation, 1 - p), 2):
            value = e.coefficient(m)
            ok = not value
            detail = "" if ok else f"z^{m} coefficient survives: {value.render()}"
            cells.append(cell(ok, detail, p=p, m=m))
    return CheckReport("elimination", tuple(cells))


def elimination_pairs(pmax: int) -> list[IdentityPair]:
    out = []
    for p in range(pmax + 1):
        e = elimination_series(p, 2 * p + 10)
        for m in range(min(e.valuation, 1 - p), 2):
            out.append(IdentityPair("elimination", (("p", p), ("m", m)),
                                    e.coefficient(m), CoeffPoly.zero()))
    return out


def _gen_identity_rows(P: int, K: int):
    """Rows of the generating function for A_k^p, expanded for |u| < |v|.

    Row p is the u^p coefficient: a Laurent series in v built from
    S(u) f(v)^2 / (v (f(u) - f(v))) + v f'(v)/(v - u).
    """
    s = _s_series(P)
    fu_pow = _f_powers(P + 1, P)
    u_parts = [s * fm for fm in fu_pow]  # S * f(u)^m
    nv_seed = K + P + 2
    fv = _seed(nv_seed)
    fv_prime = fv.derivative()
    fv_inv = laurent_recip(fv)
    v_parts = [fv]  # f(v)^{1-m}, built incrementally
    for _ in range(P):
        v_parts.append(v_parts[-1] * fv_inv)
    rows = []
    for p in range(P + 1):
        row = zero_series(K)
        for m in range(p + 1):
            coeff = u_parts[m].coefficient(p)
            if coeff:
                row = row - v_parts[m].shift(-1).scale(coeff)  # f(v)^{1-m} / v
        row = row + fv_prime.shift(-p)  # v f'(v) / (v - u) contributes f'(v) v^{-p}
        rows.append(row.truncate(K))
    return rows


def gen_identity_biseries(P: int, K: int) -> BiSeries:
    """The |u| < |v| expansion of the A-table generating function, as a
    rectangular bivariate series with a Laurent range in v."""
    rows = _gen_identity_rows(P, K)
    vmin = -P
    grid = [[row.coefficient(j) for j in range(vmin, K + 1)] for row in rows]
    return BiSeries(grid, P, K, vmin, False)


def gen_identity_check(P: int, K: int) -> CheckReport:
    """Bivariate generating identity for the A table:

        sum_{k>=1, p>=0} A_k^p u^p v^k
            = u^2 f'(u)^2 / f(u)^2 * f(v)^2 / (v [f(u) - f(v)]) + v f'(v)/(v - u),

    expanded with |u| < |v|.  All negative v powers (and the v^0 term) must
    cancel; the nonnegative part must match the A table on the rectangle.
    """
    bs = gen_identity_biseries(P, K)
    table = a_field_direct(P, K)
    cells = []
    for p in range(P + 1):
        for j in range(bs.vmin, K + 1):
            got = bs.coefficient(p, j)
            want = table.A(p, j) if j >= 1 else CoeffPoly.zero()
            ok = got == want
            detail = "" if ok else (
                f"rhs coefficient {got.render()} vs A_{j}^{p} = {want.render()}"
                if j >= 1 else f"power v^{j} fails to cancel: {got.render()}")
            cells.append(cell(ok, detail, p=p, k=j))
    return CheckReport("gen-identity", tuple(cells))


def gen_identity_pairs(P: int, K: int) -> list[IdentityPair]:
    rows = _gen_identity_rows(P, K)
    table = a_field_direct(P, K)
    out = []
    for p, row in enumerate(rows):
        for j in range(row.valuation, K + 1):
            want = table.A(p, j) if j >= 1 else CoeffPoly.zero()
            out.append(IdentityPair("gen-identity", (("p", p), ("k", j)),
                                    row.coefficient(j), want))
    return out


def _phi_generating_rows(xi_max: int, z_max: int):
    """xi^p coefficients of S(xi) f(z)^2 / (f(xi) - f(z)), Laurent in z."""
    s = _s_series(xi_max)
    fxi_pow = _f_powers(xi_max + 1, xi_max)
    u_parts = [s * fm for fm in fxi_pow]
    fz = _seed(z_max + xi_max + 2)
    fz_inv = laurent_recip(fz)
    z_parts = [fz]  # f(z)^{1-m}, built incrementally
    for _ in range(xi_max):
        z_parts.append(z_parts[-1] * fz_inv)
    rows = []
    for p in range(xi_max + 1):
        row = zero_series(z_max)
        for m in range(p + 1):
            coeff = u_parts[m].coefficient(p)
            if coeff:
                row = row - z_parts[m].scale(coeff)
        rows.append(row.truncate(z_max))
    return rows


def phi_generating_check(xi_max: int, z_max: int) -> CheckReport:
    """Generating form of the phi family:

        sum_p phi_p(z) xi^p = xi^2 f'(xi)^2 / f(xi)^2 * f(z)^2 / (f(xi) - f(z)).
    """
    rows = _phi_generating_rows(xi_max, z_max)
    cells = []
    for p, row in enumerate(rows):
        phi = phi_p(p, z_max)
        lo = min(row.valuation, phi.valuation)
        bad = None
        for m in range(lo, z_max + 1):
            if row.coefficient(m) != phi.coefficient(m):
                bad = m
                break
        ok = bad is None
        detail = "" if ok else (
            f"z^{bad}: generating side {row.coefficient(bad).render()} vs "
            f"phi_{p} {phi.coefficient(bad).render()}")
        cells.append(cell(ok, detail, p=p))
    return CheckReport("phi-generating", tuple(cells))


def phi_generating_pairs(xi_max: int, z_max: int) -> list[IdentityPair]:
    rows = _phi_generating_rows(xi_max, z_max)
    out = []
    for p, row in enumerate(rows):
        phi = phi_p(p, z_max)
        lo = min(row.valuation, phi.valuation)
        for m in range(lo, z_max + 1):
            out.append(IdentityPair("phi-generating", (("p", p), ("m", m)),
                                    row.coefficient(m), phi.coefficient(m)))
    return out
