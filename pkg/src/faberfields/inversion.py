"""Reverse series of the seed and the ladder identities it satisfies.

With g = f^{-1} (the compositional inverse of the seed), the integer powers
g^q = z^q (1 + sum delta_n^q z^n) are tabulated with their coefficient
polynomials delta_n^q, and the derivations of :mod:`faberfields.kirillov`
act on them coefficientwise.  The identities checked here:

    L_k  g      = -g^{k+1}                       (k >= 1)
    L_0  g      = -g + z g'
    L_{-1} g    = -1 + (1 + 2 c1 z) g'
    L_{-p} g    = -g^{1-p} - Lambda_p(z) g'      (p >= 2)
    L_k  g^{-k} = k                              (k >= 1)
    L_{-p} g^p  = -p - Lambda_p(z) (g^p)'        (p >= 1)

where Lambda_p(z) is the eliminator Laurent polynomial read at the series
variable.  Laurent products that mix a z^{1-p} principal part with power
series are carried with enough internal margin that conclusions at the
requested order are exact; the series layer errors out otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .faberkernel import a_field_direct, lambda_direct
from .kirillov import make_L
from .polyring import CoeffPoly
from .reports import CheckReport, IdentityPair, cell
from .series import (
    LaurentSeries,
    const_series,
    laurent_pow,
    laurent_recip,
    ps_reversion,
    seed_series,
    z_series,
    zero_series,
)


@dataclass(frozen=True)
class ReverseSeriesTable:
    qmin: int
    qmax: int
    order: int
    series: dict

    def power(self, q: int) -> LaurentSeries:
        if not self.qmin <= q <= self.qmax:
            raise IndexError(
                f"power {q} not tabulated (have {self.qmin}..{self.qmax})")
        return self.series[q]

    def delta(self, n: int, q: int) -> CoeffPoly:
        """delta_n^q, the z^{q+n} coefficient of g^q divided by the leading z^q."""
        if n < 0:
            raise IndexError("need n >= 0")
        if n == 0:
            return CoeffPoly.one()
        return self.power(q).coefficient(q + n)


@lru_cache(maxsize=None)
def _reversion(order: int) -> LaurentSeries:
    return ps_reversion(seed_series(order))


def _incremental_powers(g: LaurentSeries, qmin: int, qmax: int) -> dict:
    """{q: g^q} for q in [qmin, qmax], one product per step."""
    pows = {0: const_series(1)}
    if qmax >= 1:
        cur = g
        pows[1] = cur
        for q in range(2, qmax + 1):
            cur = cur * g
            pows[q] = cur
    if qmin < 0:
        ginv = laurent_recip(g)
        cur = ginv
        pows[-1] = cur
        for q in range(-2, qmin - 1, -1):
            cur = cur * ginv
            pows[q] = cur
    return {q: s for q, s in pows.items() if qmin <= q <= qmax}


def reverse_table(qmin: int, qmax: int, N: int) -> ReverseSeriesTable:
    """Tabulate g^q for q in [qmin, qmax], each exact through z^N."""
    if qmin > qmax:
        raise ValueError("need qmin <= qmax")
    if N < 1:
        raise ValueError("need N >= 1")
    margin = max(0, -qmin) + 1
    g = _reversion(N + margin)
    pows = _incremental_powers(g, qmin, qmax)
    return ReverseSeriesTable(qmin, qmax, N,
                              {q: s.truncate(N) for q, s in pows.items()})


def _first_disagreement(a: LaurentSeries, b: LaurentSeries, through: int):
    for m in range(min(a.valuation, b.valuation), through + 1):
        if a.coefficient(m) != b.coefficient(m):
            return m
    return None


def _mismatch_cell(group, lhs, rhs, through, **indices):
    bad = _first_disagreement(lhs, rhs, through)
    ok = bad is None
    detail = "" if ok else (
        f"z^{bad}: lhs {lhs.coefficient(bad).render()} vs "
        f"rhs {rhs.coefficient(bad).render()}")
    return cell(ok, detail, group=group, **indices)


def _series_pairs(suite, lhs, rhs, through, **indices):
    out = []
    for m in range(min(lhs.valuation, rhs.valuation), through + 1):
        out.append(IdentityPair(
            suite, tuple(indices.items()) + (("m", m),),
            lhs.coefficient(m), rhs.coefficient(m)))
    return out


def _positive_cases(kmax: int, N: int):
    g = _reversion(N + kmax + 1)
    pows = _incremental_powers(g, -kmax, kmax + 1)
    for k in range(1, kmax + 1):
        op = make_L(k)
        yield ("power", k, op.apply(g.truncate(N)),
               (-pows[k + 1]).truncate(N))
        lhs = op.apply(pows[-k].truncate(N))
        rhs = (zero_series(N) + k)
        yield ("inverse-power", k, lhs, rhs)


def check_thm51_positive(kmax: int, N: int) -> CheckReport:
    """L_k g = -g^{k+1} and L_k g^{-k} = k, exact through z^N."""
    cells = []
    for group, k, lhs, rhs in _positive_cases(kmax, N):
        cells.append(_mismatch_cell(group, lhs, rhs, N, k=k))
    return CheckReport("thm51-positive", tuple(cells))


def _zero_negative_cases(pmax: int, N: int):
    g = _reversion(N + pmax + 1)  # margin for Laurent products with Lambda_p(z)
    pows = _incremental_powers(g, min(1 - pmax, -1), max(pmax, 1))
    gprime = g.derivative()
    lams = lambda_direct(max(pmax, 1))

    op0 = make_L(0)
    lhs = op0.apply(g.truncate(N))
    rhs = ((-g) + z_series() * gprime).truncate(N)
    yield ("L0", 0, lhs, rhs)

    afield = a_field_direct(max(pmax, 1), N)
    op = make_L(-1, afield)
    lhs = op.apply(g.truncate(N))
    two_c1_z = z_series().scale(CoeffPoly.var(1) * 2)
    rhs = ((zero_series(N) - 1) + (two_c1_z + 1) * gprime).truncate(N)
    yield ("Lminus1", 1, lhs, rhs)

    for p in range(2, pmax + 1):
        opp = make_L(-p, afield)
        lhs = opp.apply(g.truncate(N))
        lam_z = lams.poly(p).at_variable()
        rhs = (-pows[1 - p] - lam_z * gprime).truncate(N)
        yield ("negative", p, lhs, rhs)

    for p in range(1, pmax + 1):
        opp = make_L(-p, afield)
        gp = pows[p]
        lhs = opp.apply(gp.truncate(N))
        lam_z = lams.poly(p).at_variable()
        rhs = ((zero_series(N) - p) - lam_z * gp.derivative()).truncate(N)
        yield ("power-negative", p, lhs, rhs)


def check_thm51_zero_and_negative(pmax: int, N: int) -> CheckReport:
    """The L_0, L_{-1}, L_{-p} and L_{-p} g^p identity groups, exact through z^N."""
    cells = []
    for group, p, lhs, rhs in _zero_negative_cases(pmax, N):
        cells.append(_mismatch_cell(group, lhs, rhs, N, p=p))
    return CheckReport("thm51-zero-negative", tuple(cells))


def thm51_pairs(kmax: int, pmax: int, N: int) -> list[IdentityPair]:
    out = []
    for group, k, lhs, rhs in _positive_cases(kmax, N):
        out.extend(_series_pairs(f"thm51-{group}", lhs, rhs, N, k=k))
    for group, p, lhs, rhs in _zero_negative_cases(pmax, N):
        out.extend(_series_pairs(f"thm51-{group}", lhs, rhs, N, p=p))
    return out


def unique_elimination_check(p: int, N: int) -> CheckReport:
    """g^{1-p} + Lambda_p(z) g' has no power z^m with m <= 1, through z^N.

    This is the uniqueness-style statement that pins the eliminator at the
    reverse series side.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    g = _reversion(N + p + 1)
    lam_z = lambda_direct(p).poly(p).at_variable()
    e = laurent_pow(g, 1 - p) + lam_z * g.derivative()
    cells = []
    for m in range(min(e.valuation, 1 - p), 2):
        value = e.coefficient(m)
        ok = not value
        detail = "" if ok else f"z^{m} coefficient survives: {value.render()}"
        cells.append(cell(ok, detail, p=p, m=m))
    return CheckReport("unique-elimination", tuple(cells))


def unique_elimination_pairs(ps, N: int) -> list[IdentityPair]:
    out = []
    for p in ps:
        g = _reversion(N + p + 1)
        lam_z = lambda_direct(p).poly(p).at_variable()
        e = laurent_pow(g, 1 - p) + lam_z * g.derivative()
        for m in range(min(e.valuation, 1 - p), 2):
            out.append(IdentityPair("unique-elimination", (("p", p), ("m", m)),
                                    e.coefficient(m), CoeffPoly.zero()))
    return out
