"""First-order derivations on the coefficient ring and their identities.

The operators act on polynomials in the seed coefficients:

    L_k   = d/dc_k + sum_{n>=1} (n+1) c_n d/dc_{n+k}      (k >= 1)
    L_0   = sum_{n>=1} n c_n d/dc_n
    L_{-p} = sum_{n>=1} A_n^p d/dc_n                       (p >= 1)

plus the plain partials d/dc_k.  A derivation stores a lazy entry rule;
entries of the negative-index operators are materialized from an A-field
table, whose range is validated before use.  Applying a derivation to a
series, marker polynomial or Laurent object acts coefficientwise (the formal
variables z, w, u are constants for the operator).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .faberkernel import (AFieldTable, _elimination_family, a_field_direct,
                          elimination_series, lambda_direct)
from .polyring import CoeffPoly
from .reports import CheckReport, IdentityPair, cell
from .series import (LaurentSeries, LaurentWPoly, WPoly, _make, laurent_recip,
                     seed_series)


class Derivation:
    """A formal derivation sum_n v_n d/dc_n with CoeffPoly entries v_n.

    Only entries up to the largest variable of the target are ever needed,
    which keeps the formally infinite sums finite per application.
    """

    __slots__ = ("descriptor", "_entry", "max_entry")

    def __init__(self, descriptor: str, entry: Callable[[int], CoeffPoly],
                 max_entry: int | None = None):
        self.descriptor = descriptor
        self._entry = entry
        self.max_entry = max_entry  # None means unbounded

    def coefficient(self, n: int) -> CoeffPoly:
        """The entry v_n multiplying d/dc_n."""
        if n < 1:
            raise ValueError("entries are indexed from 1")
        if self.max_entry is not None and n > self.max_entry:
            raise IndexError(
                f"{self.descriptor} has entries only up to c{self.max_entry}; "
                f"c{n} requested (insufficient A-table range)"
            )
        return self._entry(n)

    def apply_poly(self, target: CoeffPoly) -> CoeffPoly:
        out = CoeffPoly.zero()
        for j in target.variables():
            dj = target.partial(j)
            if dj:
                out = out + self.coefficient(j) * dj
        return out

    def apply(self, target):
        """Apply coefficientwise to any object over the coefficient ring."""
        if isinstance(target, CoeffPoly):
            return self.apply_poly(target)
        if isinstance(target, (int, Fraction)):
            return CoeffPoly.zero()
        if isinstance(target, LaurentSeries):
            data = {}
            v = target.valuation
            for i, c in enumerate(target.coeffs):
                if c:
                    data[v + i] = self.apply_poly(c)
            return _make(data, target.order)
        if isinstance(target, WPoly):
            return target.map_coeffs(self.apply_poly)
        if isinstance(target, LaurentWPoly):
            return target.map_coeffs(self.apply_poly)
        raise TypeError(f"cannot apply a derivation to {type(target).__name__}")

    def __repr__(self):
        return f"<Derivation {self.descriptor}>"


def partial_derivation(k: int) -> Derivation:
    """The plain partial d/dc_k."""
    if k < 1:
        raise ValueError("need k >= 1")

    def entry(n: int) -> CoeffPoly:
        return CoeffPoly.one() if n == k else CoeffPoly.zero()

    return Derivation(f"d_{k}", entry)


def make_L(k: int, afield: AFieldTable | None = None) -> Derivation:
    """The operator L_k; negative k needs an A-field table covering index -k."""
    if k >= 1:

        def entry(n: int, k=k) -> CoeffPoly:
            out = CoeffPoly.one() if n == k else CoeffPoly.zero()
            if n > k:
                out = out + CoeffPoly.var(n - k) * (n - k + 1)
            return out

        return Derivation(f"L_{k}", entry)
    if k == 0:

        def entry(n: int) -> CoeffPoly:
            return CoeffPoly.var(n) * n

        return Derivation("L_0", entry)
    p = -k
    if afield is None:
        raise ValueError("negative-index operators need an A-field table")
    if afield.p_max < p:
        raise IndexError(
            f"A-table covers p <= {afield.p_max}, cannot build L_{k}")
    entries = {n: afield.A(p, n) for n in range(1, afield.n_max + 1)}

    def entry(n: int) -> CoeffPoly:
        return entries[n]

    return Derivation(f"L_{k}", entry, max_entry=afield.n_max)


def apply(D: Derivation, target):
    return D.apply(target)


# -- check suites -----------------------------------------------------------------


def check_negative_action(p: int, N: int, table: AFieldTable | None = None) -> CheckReport:
    """The derivation built from the A table reproduces the elimination form:

        L_{-p} f(z) = z^(1-p) f'(z) + Lambda_p(f(z))   through z^N.

    A table covering (p, N-1) may be passed in to share one build across
    several indices.
    """
    if p < 1:
        raise ValueError("need p >= 1")
    if table is None:
        table = a_field_direct(p, max(N - 1, 1))
    op = make_L(-p, table)
    f = seed_series(N)
    lhs = op.apply(f)
    rhs = elimination_series(p, N + p).truncate(N)
    bad = None
    for m in range(min(lhs.valuation, rhs.valuation), N + 1):
        if lhs.coefficient(m) != rhs.coefficient(m):
            bad = m
            break
    ok = bad is None
    detail = "" if ok else (
        f"z^{bad}: derivation gives {lhs.coefficient(bad).render()}, "
        f"elimination gives {rhs.coefficient(bad).render()}")
    return CheckReport("negative-action", (cell(ok, detail, p=p, N=N),))


def negative_action_report(pmax: int, N: int | None = None) -> CheckReport:
    """check_negative_action over p = 1..pmax, sharing one eliminator family.

    The single comparison order N (default 2 pmax + 10, so at least 2p + 10
    for every p) lets all indices reuse one A table and one power ladder.
    """
    if N is None:
        N = 2 * pmax + 10
    table = a_field_direct(pmax, max(N - 1, 1))
    family = _elimination_family(pmax, N + pmax)
    f = seed_series(N)
    cells = []
    for p in range(1, pmax + 1):
        lhs = make_L(-p, table).apply(f)
        rhs = family[p].truncate(N)
        bad = None
        for m in range(min(lhs.valuation, rhs.valuation), N + 1):
            if lhs.coefficient(m) != rhs.coefficient(m):
                bad = m
                break
        ok = bad is None
        detail = "" if ok else (
            f"z^{bad}: derivation gives {lhs.coefficient(bad).render()}, "
            f"elimination gives {rhs.coefficient(bad).render()}")
        cells.append(cell(ok, detail, p=p, N=N))
    return CheckReport("negative-action", tuple(cells))


def negative_action_pairs(pmax: int, N: int) -> list[IdentityPair]:
    out = []
    table = a_field_direct(pmax, max(N - 1, 1))
    family = _elimination_family(pmax, N + pmax)
    f = seed_series(N)
    for p in range(1, pmax + 1):
        op = make_L(-p, table)
        lhs = op.apply(f)
        rhs = family[p].truncate(N)
        for m in range(min(lhs.valuation, rhs.valuation), N + 1):
            out.append(IdentityPair("negative-action", (("p", p), ("m", m)),
                                    lhs.coefficient(m), rhs.coefficient(m)))
    return out


def _thm42_cases(kmax: int, pmax: int):
    """(k, n, expected) triples for L_k Lambda_n over the full matrix."""
    lams = lambda_direct(kmax + pmax)
    for k in range(1, kmax + 1):
        op = make_L(k)
        for n in range(1, k):
            yield k, n, op.apply(lams.poly(n)), LaurentWPoly({})
        for p in range(0, pmax + 1):
            got = op.apply(lams.poly(p + k))
            want = lams.poly(p).scale(2 * k + p)
            yield k, p + k, got, want


def check_thm42(kmax: int, pmax: int) -> CheckReport:
    """Ladder action on the eliminator family:

        L_k Lambda_n = 0 for 1 <= n < k,
        L_k Lambda_k = -2k u,
        L_k Lambda_{p+k} = (2k + p) Lambda_p.
    """
    cells = []
    for k, n, got, want in _thm42_cases(kmax, pmax):
        ok = got == want
        detail = "" if ok else (
            f"L_{k} Lambda_{n} = {got.render()} but expected {want.render()}")
        cells.append(cell(ok, detail, k=k, n=n))
    return CheckReport("thm42", tuple(cells))


def thm42_pairs(kmax: int, pmax: int) -> list[IdentityPair]:
    out = []
    for k, n, got, want in _thm42_cases(kmax, pmax):
        exps = set(got.entries) | set(want.entries)
        if not exps:
            exps = {0}
        for e in sorted(exps):
            out.append(IdentityPair("thm42", (("k", k), ("n", n), ("e", e)),
                                    got.coefficient(e), want.coefficient(e)))
    return out


def check_recursion(pmax: int) -> CheckReport:
    """The k = 1 recursion on its own:

        [d/dc1 + 2 c1 d/dc2 + 3 c2 d/dc3 + ...] Lambda_{p+1} = (p+2) Lambda_p.
    """
    lams = lambda_direct(pmax + 1)
    op = make_L(1)
    cells = []
    for p in range(pmax + 1):
        got = op.apply(lams.poly(p + 1))
        want = lams.poly(p).scale(p + 2)
        ok = got == want
        detail = "" if ok else (
            f"L_1 Lambda_{p + 1} = {got.render()} but expected {want.render()}")
        cells.append(cell(ok, detail, p=p))
    return CheckReport("recursion", tuple(cells))


def recursion_pairs(pmax: int) -> list[IdentityPair]:
    lams = lambda_direct(pmax + 1)
    op = make_L(1)
    out = []
    for p in range(pmax + 1):
        got = op.apply(lams.poly(p + 1))
        want = lams.poly(p).scale(p + 2)
        for e in sorted(set(got.entries) | set(want.entries)):
            out.append(IdentityPair("recursion", (("p", p), ("e", e)),
                                    got.coefficient(e), want.coefficient(e)))
    return out


def inverse_deriv_coeffs(order: int) -> list[CoeffPoly]:
    """[B_0, B_1, ..., B_order] from 1/f'(z) = 1 + sum B_n z^n.

    Distinct from the A-table intermediates B_k^p: these are the expansion
    coefficients of the reciprocal derivative.
    """
    inv = laurent_recip(seed_series(order + 2).derivative())
    return [inv.coefficient(n) for n in range(order + 1)]


def partial_via_L(k: int, mmax: int) -> CheckReport:
    """Resolve the partial d/dc_k through the ladder:

        d/dc_k = L_k - 2 c1 L_{k+1} + (4 c1^2 - 3 c2) L_{k+2} + ... + B_n L_{k+n} + ...

    applied to every generator c_m, m <= mmax; application to c_m terminates
    at n = m - k, so only finitely many terms contribute.
    """
    cells = []
    for _, m, got, want in _partial_via_L_cases(k, k, mmax):
        ok = got == want
        detail = "" if ok else (
            f"sum B_n L_{k}+n c_{m} = {got.render()} vs d_k c_{m} = {want.render()}")
        cells.append(cell(ok, detail, k=k, m=m))
    return CheckReport("lemma41", tuple(cells))


def _partial_via_L_cases(kmin: int, kmax: int, mmax: int):
    bs = inverse_deriv_coeffs(max(mmax - kmin, 0))
    ops = {j: make_L(j) for j in range(kmin, mmax + 1)}
    for k in range(kmin, kmax + 1):
        for m in range(1, mmax + 1):
            cm = CoeffPoly.var(m)
            acc = CoeffPoly.zero()
            for n in range(0, max(m - k, 0) + 1):
                if k + n > m:
                    break
                acc = acc + bs[n] * ops[k + n].apply_poly(cm)
            want = CoeffPoly.one() if m == k else CoeffPoly.zero()
            yield k, m, acc, want


def lemma41_check(kmax: int, mmax: int) -> CheckReport:
    """partial_via_L over a rectangle of (k, m)."""
    cells = []
    for k, m, got, want in _partial_via_L_cases(1, kmax, mmax):
        ok = got == want
        detail = "" if ok else (
            f"sum B_n L_{k}+n c_{m} = {got.render()} vs d_{k} c_{m} = {want.render()}")
        cells.append(cell(ok, detail, k=k, m=m))
    return CheckReport("lemma41", tuple(cells))


def lemma41_pairs(kmax: int, mmax: int) -> list[IdentityPair]:
    return [IdentityPair("lemma41", (("k", k), ("m", m)), got, want)
            for k, m, got, want in _partial_via_L_cases(1, kmax, mmax)]


def sample_polynomials(count: int = 20) -> list[CoeffPoly]:
    """A fixed, deterministic corpus of targets for operator identities."""
    c = CoeffPoly.var
    base = [
        c(1), c(2), c(3), c(4), c(5), c(6), c(7), c(8),
        c(1) * c(2),
        c(2) * c(3),
        c(1) * c(2) * c(3),
        c(1) ** 2,
        c(2) ** 2 * c(1),
        c(4) * c(1) - c(5),
        c(3) ** 3,
        c(1) * c(7),
        c(2) * c(6) + c(4) ** 2,
        CoeffPoly.const(Fraction(3, 2)) * c(5) * c(2),
        c(1) ** 4 - 2 * c(2) ** 2,
        c(8) * c(1) ** 2 + CoeffPoly.const(Fraction(1, 3)) * c(6),
    ]
    return base[:count]


def _commutation_cases(n: int, j: int, samples):
    dn = partial_derivation(n)
    lj = make_L(j)
    dnj = partial_derivation(n + j)
    for idx, target in enumerate(samples):
        lhs = dn.apply_poly(lj.apply_poly(target))
        rhs = lj.apply_poly(dn.apply_poly(target)) + dnj.apply_poly(target) * (n + 1)
        yield idx, lhs, rhs


def commutation_check(n: int, j: int, samples=None) -> CheckReport:
    """The mixing rule d_n L_j = L_j d_n + (n+1) d_{n+j} on sample polynomials."""
    if n < 1 or j < 1:
        raise ValueError("need n, j >= 1")
    if samples is None:
        samples = sample_polynomials()
    cells = []
    for idx, lhs, rhs in _commutation_cases(n, j, samples):
        ok = lhs == rhs
        detail = "" if ok else (
            f"sample {idx}: {lhs.render()} != {rhs.render()}")
        cells.append(cell(ok, detail, n=n, j=j, sample=idx))
    return CheckReport("commutation", tuple(cells))


def commutation_pairs(nmax: int, jmax: int, samples=None) -> list[IdentityPair]:
    if samples is None:
        samples = sample_polynomials()
    out = []
    for n in range(1, nmax + 1):
        for j in range(1, jmax + 1):
            for idx, lhs, rhs in _commutation_cases(n, j, samples):
                out.append(IdentityPair(
                    "commutation", (("n", n), ("j", j), ("sample", idx)), lhs, rhs))
    return out
