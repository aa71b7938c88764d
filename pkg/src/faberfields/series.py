"""Truncated formal series over the coefficient ring, with order tracking.

The series layer supplies everything the generating-function constructions
need: univariate power and Laurent series in one formal variable ``z``,
polynomials and finite Laurent polynomials in a marker variable (``w`` or
``u``), and rectangularly truncated bivariate series.

Truncation discipline
---------------------
A coefficient beyond a series' ``order`` is *unknown*, never assumed zero.
Every operation returns the largest order at which its result is fully
determined by its inputs; asking for a coefficient past that raises
:class:`OrderError` instead of silently returning garbage.  Exact objects
(finite Laurent polynomials such as the identity series ``z``) carry order
``math.inf``.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .polyring import CoeffPoly, accumulate_product, poly_from_bucket

INF = math.inf


class SeriesError(ValueError):
    pass


class OrderError(SeriesError):
    """A coefficient beyond the determined truncation order was requested."""

    def __init__(self, exponent, order):
        super().__init__(
            f"coefficient of z^{exponent} is undetermined (known through order {order})"
        )
        self.exponent = exponent
        self.order = order


class LeadingCoefficientError(SeriesError):
    """Division by a series whose leading coefficient is zero or non-invertible."""

    def __init__(self, message, valuation):
        super().__init__(f"{message} (valuation {valuation})")
        self.valuation = valuation


class DiagonalError(SeriesError):
    """Divided-difference input does not vanish on the diagonal u = v."""

    def __init__(self, degree):
        super().__init__(
            f"input does not vanish on the diagonal at total degree {degree}"
        )
        self.degree = degree


def _coeff(x) -> CoeffPoly:
    if isinstance(x, CoeffPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a series coefficient")


class LaurentSeries:
    """Series with finitely many negative powers: coeffs for z^valuation..z^order.

    Coefficients below ``valuation`` are exactly zero; coefficients above
    ``order`` are unknown.  ``order`` may be ``math.inf`` for exact objects.
    If ``valuation >= 0`` the constructor machinery produces a
    :class:`PowerSeries` instead, so Laurent instances always mean "may have
    a principal part".
    """

    __slots__ = ("valuation", "order", "coeffs", "_recip")

    def __init__(self, valuation: int, coeffs: Sequence, order=None):
        cleaned = [_coeff(c) for c in coeffs]
        if order is None:
            order = valuation + len(cleaned) - 1
        if order is not INF and valuation + len(cleaned) - 1 > order:
            raise ValueError("more coefficients supplied than the stated order allows")
        data = {valuation + i: c for i, c in enumerate(cleaned)}
        v, o, tup = _canonical(valuation, data, order)
        self.valuation = v
        self.order = o
        self.coeffs = tup
        self._recip = None

    # -- access --------------------------------------------------------------

    def coefficient(self, k: int) -> CoeffPoly:
        """Coefficient of z^k; raises OrderError past the determined order."""
        if k > self.order:
            raise OrderError(k, self.order)
        i = k - self.valuation
        if i < 0 or i >= len(self.coeffs):
            return CoeffPoly.zero()
        return self.coeffs[i]

    def _stored(self):
        v = self.valuation
        for i, c in enumerate(self.coeffs):
            if c:
                yield v + i, c

    def effective_valuation(self):
        """Exponent of the first nonzero known coefficient (inf if none)."""
        for k, _ in self._stored():
            return k
        return INF if self.order is INF else self.order + 1

    def is_exact(self) -> bool:
        return self.order is INF

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def has_principal_part(self) -> bool:
        return any(k < 0 for k, _ in self._stored())

    def as_power_series(self) -> "PowerSeries":
        if self.has_principal_part():
            raise SeriesError("series has a nonzero principal part")
        return _make({k: c for k, c in self._stored()}, self.order)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            other = const_series(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        data: dict[int, CoeffPoly] = {}
        for k, c in self._stored():
            if k <= order:
                data[k] = c
        for k, c in other._stored():
            if k <= order:
                data[k] = data.get(k, CoeffPoly.zero()) + c
        return _make(data, order)

    __radd__ = __add__

    def __neg__(self):
        return _make({k: -c for k, c in self._stored()}, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            other = const_series(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        va, vb = self.effective_valuation(), other.effective_valuation()
        order = min(self.order + vb, other.order + va, self.order + other.order + 1)
        buckets: dict[int, dict] = {}
        for i, a in self._stored():
            for j, b in other._stored():
                k = i + j
                if k > order:
                    continue
                bucket = buckets.get(k)
                if bucket is None:
                    bucket = buckets[k] = {}
                accumulate_product(bucket, a, b)
        data = {k: poly_from_bucket(bucket) for k, bucket in buckets.items()}
        return _make(data, order)

    __rmul__ = __mul__

    def scale(self, s) -> "LaurentSeries":
        s = _coeff(s)
        if s.is_zero():
            return _make({}, INF)
        return _make({k: c * s for k, c in self._stored()}, self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, LaurentSeries):
            return self * laurent_recip(other)
        return NotImplemented

    def __pow__(self, k: int):
        return laurent_pow(self, k)

    def shift(self, s: int) -> "LaurentSeries":
        """Multiply by z^s."""
        return _make({k + s: c for k, c in self._stored()}, self.order + s)

    def truncate(self, order) -> "LaurentSeries":
        if order >= self.order:
            return self
        return _make({k: c for k, c in self._stored() if k <= order}, order)

    def derivative(self) -> "LaurentSeries":
        data = {k - 1: c * k for k, c in self._stored() if k != 0}
        return _make(data, self.order - 1)

    def integrate(self, const=0) -> "LaurentSeries":
        data: dict[int, CoeffPoly] = {}
        for k, c in self._stored():
            if k == -1:
                raise SeriesError("cannot integrate a z^-1 term inside the series ring")
            data[k + 1] = c * Fraction(1, k + 1)
        const = _coeff(const)
        if const:
            data[0] = data.get(0, CoeffPoly.zero()) + const
        return _make(data, self.order + 1)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.valuation == other.valuation
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    # -- rendering ---------------------------------------------------------------

    def render(self, var: str = "z") -> str:
        parts = []
        for k, c in self._stored():
            if k == 0:
                body = c.render()
            else:
                power = var if k == 1 else f"{var}^{k}"
                txt = c.render()
                if txt == "1":
                    body = power
                elif txt == "-1":
                    body = f"-{power}"
                elif " " in txt:
                    body = f"({txt})*{power}"
                else:
                    body = f"{txt}*{power}"
            parts.append(body)
        if not parts:
            return "0"
        out = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                out += f" - {body[1:]}"
            else:
                out += f" + {body}"
        return out

    def __repr__(self):
        tail = "" if self.order is INF else f" + O(z^{self.order + 1})"
        return f"<{type(self).__name__} {self.render()}{tail}>"

    def to_json_obj(self) -> dict:
        return {
            "valuation": self.valuation,
            "order": None if self.order is INF else self.order,
            "coeffs": [c.to_json_terms() for c in self.coeffs],
        }

    @classmethod
    def from_json_obj(cls, data: dict) -> "LaurentSeries":
        order = INF if data["order"] is None else data["order"]
        coeffs = [CoeffPoly.from_json_terms(t) for t in data["coeffs"]]
        return _make(
            {data["valuation"] + i: c for i, c in enumerate(coeffs)}, order
        )


class PowerSeries(LaurentSeries):
    """Series with no principal part; coefficients of z^0..z^order."""

    __slots__ = ()

    def __init__(self, coeffs: Sequence, order=None):
        super().__init__(0, coeffs, order)


def _canonical(valuation, data: dict[int, CoeffPoly], order):
    """Drop zeros and out-of-order entries, trim, and normalize the valuation."""
    keep = {k: c for k, c in data.items() if c and k <= order}
    if not keep:
        return 0, order, ()
    lo = min(keep)
    hi = max(keep)
    tup = tuple(keep.get(k, CoeffPoly.zero()) for k in range(lo, hi + 1))
    return lo, order, tup


def _make(data: dict[int, CoeffPoly], order) -> LaurentSeries:
    v, o, tup = _canonical(0, data, order)
    cls = PowerSeries if v >= 0 else LaurentSeries
    obj = object.__new__(cls)
    obj.valuation = v
    obj.order = o
    obj.coeffs = tup
    obj._recip = None
    return obj


# -- constructors --------------------------------------------------------------


def const_series(value) -> PowerSeries:
    """The exact constant series."""
    return _make({0: _coeff(value)}, INF)


def z_series() -> PowerSeries:
    """The exact identity series z."""
    return _make({1: CoeffPoly.one()}, INF)


def zero_series(order=INF) -> PowerSeries:
    """The zero series, known through the given order."""
    return _make({}, order)


def seed_series(N: int) -> PowerSeries:
    """The generic univalent seed f(z) = z + c1 z^2 + c2 z^3 + ... through z^N."""
    if N < 1:
        raise ValueError("seed order must be >= 1")
    data = {1: CoeffPoly.one()}
    for n in range(1, N):
        data[n + 1] = CoeffPoly.var(n)
    return _make(data, N)


# -- spec-level operations ------------------------------------------------------


def ps_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def ps_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def ps_scale(a: LaurentSeries, s) -> LaurentSeries:
    return a.scale(s)


def laurent_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def laurent_recip(a: LaurentSeries) -> LaurentSeries:
    """1/a for a series with invertible leading coefficient.

    Memoized per instance; series are immutable so this is safe, and it lets
    every caller walking negative powers share one inversion.
    """
    if a._recip is not None:
        return a._recip
    result = _laurent_recip_impl(a)
    a._recip = result
    return result


def _laurent_recip_impl(a: LaurentSeries) -> LaurentSeries:
    v = a.effective_valuation()
    if v is INF or v > a.order:
        raise LeadingCoefficientError("cannot invert a series with no known nonzero term",
                                      a.valuation)
    lead = a.coefficient(v)
    if not lead.is_constant():
        raise LeadingCoefficientError(
            "leading coefficient is not an invertible rational", v)
    inv = Fraction(1) / lead.constant_value()
    stored = {k - v: c for k, c in a._stored() if k != v}
    if not stored:
        # Monomial: exact reciprocal.
        return _make({-v: CoeffPoly.const(inv)}, INF if a.order is INF else a.order - 2 * v)
    if a.order is INF:
        raise SeriesError("reciprocal of an exact multi-term series is an "
                          "infinite object; truncate first")
    m = a.order - v  # relative order of the unit part
    out = [CoeffPoly.zero()] * (m + 1)
    out[0] = CoeffPoly.const(inv)
    for n in range(1, m + 1):
        s = CoeffPoly.zero()
        for i, c in stored.items():
            if 1 <= i <= n:
                prod = c * out[n - i]
                if prod:
                    s = s + prod
        out[n] = -s * inv if s else CoeffPoly.zero()
    return _make({-v + i: c for i, c in enumerate(out)}, a.order - 2 * v)


def laurent_pow(a: LaurentSeries, k: int) -> LaurentSeries:
    """a**k for any integer k (negative powers go through the reciprocal)."""
    if not isinstance(k, int):
        raise TypeError("series powers must be integers")
    if k == 0:
        return const_series(1)
    if k < 0:
        return laurent_pow(laurent_recip(a), -k)
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if k:
            base = base * base
    return result


def ps_div(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """a/b; b needs an invertible (nonzero rational) leading coefficient."""
    return a * laurent_recip(b)


def ps_log(a: LaurentSeries) -> LaurentSeries:
    """Formal logarithm of a series with constant term exactly 1.

    Computed by integrating a'/a term by term; exact rational arithmetic
    makes the divisions by n safe.
    """
    if a.coefficient(0) != CoeffPoly.one():
        raise SeriesError("logarithm requires constant term exactly 1")
    rest = any(k != 0 for k, _ in a._stored())
    if not rest:
        return zero_series(a.order)
    if a.order is INF:
        raise SeriesError("logarithm of an exact series is an infinite object; "
                          "truncate first")
    return ps_div(a.derivative(), a).integrate(0)


def ps_compose(outer: LaurentSeries, inner: LaurentSeries) -> LaurentSeries:
    """outer(inner) for inner with zero constant term, by Horner evaluation."""
    if outer.valuation < 0:
        raise SeriesError("composition target must have no principal part")
    if inner.valuation < 0 or inner.coefficient(0):
        raise SeriesError("inner series must have zero constant term")
    q = inner.effective_valuation()
    if q is INF:
        target = INF if outer.order is INF else inner.order
    else:
        target = min(inner.order, (outer.order + 1) * q - 1)
    top = outer.valuation + len(outer.coeffs) - 1 if outer.coeffs else 0
    acc: LaurentSeries = zero_series(INF)
    for k in range(top, -1, -1):
        acc = acc * inner + outer.coefficient(k)
    return acc.truncate(target)


def ps_reversion(a: LaurentSeries) -> LaurentSeries:
    """Compositional inverse g of a = z + ..., with a(g(z)) = g(a(z)) = z.

    Newton updates on truncated series; each step doubles the correct order.
    """
    if a.effective_valuation() != 1 or a.coefficient(1) != CoeffPoly.one() \
            or a.coefficient(0):
        raise SeriesError("reversion requires a series of the form z + higher order")
    n = a.order
    if n is INF:
        raise SeriesError("reversion of an exact series is an infinite object; "
                          "truncate first")
    ident = z_series()
    g = ident
    da = a.derivative()
    steps = max(1, math.ceil(math.log2(n)) + 1)
    for _ in range(steps):
        err = ps_compose(a, g.truncate(n)) - ident
        if err.is_zero():
            break
        g = g - ps_div(err, ps_compose(da, g.truncate(n)))
    g = g.truncate(n)
    if not (ps_compose(a, g) - ident).is_zero():
        raise SeriesError("reversion did not converge; input order too small")
    return g


def series_agree(a: LaurentSeries, b: LaurentSeries, through, start=None) -> int | None:
    """First exponent in [start, through] where a and b differ, else None.

    Raises OrderError if either side is undetermined somewhere in the range.
    """
    if start is None:
        start = min(a.valuation, b.valuation)
    for k in range(start, through + 1):
        if a.coefficient(k) != b.coefficient(k):
            return k
    return None


# -- marker-variable polynomials -------------------------------------------------


class WPoly:
    """Polynomial in a marker variable w with CoeffPoly coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cleaned = [_coeff(c) for c in coeffs]
        while cleaned and cleaned[-1].is_zero():
            cleaned.pop()
        self.coeffs = tuple(cleaned)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> CoeffPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CoeffPoly.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            other = WPoly([other])
        if not isinstance(other, WPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return WPoly([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return WPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            other = WPoly([other])
        if not isinstance(other, WPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            s = _coeff(other)
            return WPoly([c * s for c in self.coeffs])
        if not isinstance(other, WPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return WPoly([])
        out = [CoeffPoly.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return WPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def deriv_w(self) -> "WPoly":
        return WPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def eval_at(self, x: LaurentSeries) -> LaurentSeries:
        """Substitute a series for w (Horner in the series ring)."""
        acc: LaurentSeries = zero_series(INF)
        for k in range(self.degree, -1, -1):
            acc = acc * x + self.coefficient(k)
        return acc

    def reciprocal_substitute(self) -> "LaurentWPoly":
        """Substitute w -> 1/u: degree d maps to exponent range -d..0."""
        return LaurentWPoly({-k: c for k, c in enumerate(self.coeffs)})

    def map_coeffs(self, fn) -> "WPoly":
        return WPoly([fn(c) for c in self.coeffs])

    def render(self, var: str = "w") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if not c:
                continue
            if k == 0:
                txt = c.render()
                body = f"({txt})" if " " in txt else txt
            else:
                power = var if k == 1 else f"{var}^{k}"
                txt = c.render()
                if txt == "1":
                    body = power
                elif txt == "-1":
                    body = f"-{power}"
                elif " " in txt:
                    body = f"({txt})*{power}"
                else:
                    body = f"{txt}*{power}"
            parts.append(body)
        out = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                out += f" - {body[1:]}"
            elif body.startswith("(-") and body.endswith(")") and "+" not in body and " - " not in body:
                out += f" + {body}"
            else:
                out += f" + {body}"
        return out

    def __repr__(self):
        return f"<WPoly {self.render()}>"

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [c.to_json_terms() for c in self.coeffs],
        }

    @classmethod
    def from_json_obj(cls, data: dict) -> "WPoly":
        return cls([CoeffPoly.from_json_terms(t) for t in data["coeffs"]])


class LaurentWPoly:
    """Finite Laurent polynomial in a marker variable u with CoeffPoly entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict[int, object] | None = None):
        clean: dict[int, CoeffPoly] = {}
        if entries:
            for e, c in entries.items():
                c = _coeff(c)
                if c:
                    clean[e] = c
        self.entries = clean

    @property
    def min_exponent(self) -> int | None:
        return min(self.entries) if self.entries else None

    @property
    def max_exponent(self) -> int | None:
        return max(self.entries) if self.entries else None

    def coefficient(self, e: int) -> CoeffPoly:
        return self.entries.get(e, CoeffPoly.zero())

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other):
        if not isinstance(other, LaurentWPoly):
            return NotImplemented
        out = dict(self.entries)
        for e, c in other.entries.items():
            out[e] = out.get(e, CoeffPoly.zero()) + c
        return LaurentWPoly(out)

    def __neg__(self):
        return LaurentWPoly({e: -c for e, c in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentWPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "LaurentWPoly":
        s = _coeff(s)
        return LaurentWPoly({e: c * s for e, c in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentWPoly):
            return NotImplemented
        return self.entries == other.entries

    def eval_at(self, x: LaurentSeries) -> LaurentSeries:
        """Substitute a series for u; negative exponents go through 1/x.

        Powers of x are built incrementally (at most one reciprocal and one
        product per exponent step), which keeps wide Laurent ranges cheap.
        """
        if not self.entries:
            return zero_series(INF)
        emin, emax = min(self.entries), max(self.entries)
        total = None
        if emin >= 0:
            e, cur, step = emin, laurent_pow(x, emin), x
        else:
            e, cur, step = emax, laurent_pow(x, emax), laurent_recip(x)
        while True:
            coeff = self.entries.get(e)
            if coeff:
                term = cur.scale(coeff)
                total = term if total is None else total + term
            e += 1 if emin >= 0 else -1
            if not emin <= e <= emax:
                break
            cur = cur * step
        return total

    def at_variable(self) -> LaurentSeries:
        """Read the marker variable as the series variable: u^e -> z^e, exactly."""
        return _make(dict(self.entries), INF)

    def map_coeffs(self, fn) -> "LaurentWPoly":
        return LaurentWPoly({e: fn(c) for e, c in self.entries.items()})

    def render(self, var: str = "u") -> str:
        if not self.entries:
            return "0"
        parts = []
        for e in sorted(self.entries, reverse=True):
            c = self.entries[e]
            if e == 0:
                txt = c.render()
                body = f"({txt})" if " " in txt else txt
            else:
                power = var if e == 1 else f"{var}^{e}"
                txt = c.render()
                if txt == "1":
                    body = power
                elif txt == "-1":
                    body = f"-{power}"
                elif " " in txt:
                    body = f"({txt})*{power}"
                else:
                    body = f"{txt}*{power}"
            parts.append(body)
        out = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                out += f" - {body[1:]}"
            else:
                out += f" + {body}"
        return out

    def __repr__(self):
        return f"<LaurentWPoly {self.render()}>"

    def to_json_obj(self) -> dict:
        return {"exponents": {str(e): self.entries[e].to_json_terms()
                              for e in sorted(self.entries)}}

    @classmethod
    def from_json_obj(cls, data: dict) -> "LaurentWPoly":
        return cls({int(e): CoeffPoly.from_json_terms(t)
                    for e, t in data["exponents"].items()})


def wpoly_eval_laurent(P: WPoly, at: LaurentSeries) -> LaurentSeries:
    return P.eval_at(at)


def wpoly_reciprocal_substitute(P: WPoly) -> LaurentWPoly:
    return P.reciprocal_substitute()


# -- bivariate series -------------------------------------------------------------


class BiSeries:
    """Rectangularly truncated series in (u, v) with CoeffPoly entries.

    ``rows[i][j - vmin]`` is the coefficient of ``u^i v^j``.  The second
    variable may carry a finite Laurent range (``vmin < 0``).  ``exact``
    marks a finite polynomial whose entries outside the rectangle are zero
    rather than unknown.
    """

    __slots__ = ("nu", "nv", "vmin", "rows", "exact")

    def __init__(self, rows: Sequence[Sequence], nu: int, nv: int,
                 vmin: int = 0, exact: bool = False):
        if len(rows) != nu + 1:
            raise ValueError("expected one row per u power 0..nu")
        width = nv - vmin + 1
        frozen = []
        for r in rows:
            if len(r) != width:
                raise ValueError("row width must cover v^vmin..v^nv")
            frozen.append(tuple(_coeff(c) for c in r))
        self.rows = tuple(frozen)
        self.nu = nu
        self.nv = nv
        self.vmin = vmin
        self.exact = exact

    @classmethod
    def zeros(cls, nu: int, nv: int, vmin: int = 0, exact: bool = False) -> "BiSeries":
        z = CoeffPoly.zero()
        return cls([[z] * (nv - vmin + 1) for _ in range(nu + 1)], nu, nv, vmin, exact)

    def coefficient(self, i: int, j: int) -> CoeffPoly:
        if i < 0:
            return CoeffPoly.zero()
        if i > self.nu or j > self.nv:
            if self.exact:
                return CoeffPoly.zero()
            raise OrderError((i, j), (self.nu, self.nv))
        if j < self.vmin:
            return CoeffPoly.zero()
        return self.rows[i][j - self.vmin]

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.nu, self.nv, self.vmin, self.exact, self.rows) == \
               (other.nu, other.nv, other.vmin, other.exact, other.rows)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        nu = max(self.nu, other.nu) if (self.exact and other.exact) \
            else min(self.nu if not self.exact else INF,
                     other.nu if not other.exact else INF)
        nv = max(self.nv, other.nv) if (self.exact and other.exact) \
            else min(self.nv if not self.exact else INF,
                     other.nv if not other.exact else INF)
        nu = int(nu if nu is not INF else max(self.nu, other.nu))
        nv = int(nv if nv is not INF else max(self.nv, other.nv))
        vmin = min(self.vmin, other.vmin)
        exact = self.exact and other.exact
        rows = [[self._get0(i, j) + other._get0(i, j)
                 for j in range(vmin, nv + 1)] for i in range(nu + 1)]
        return BiSeries(rows, nu, nv, vmin, exact)

    def _get0(self, i, j):
        if i > self.nu or j > self.nv or j < self.vmin or i < 0:
            return CoeffPoly.zero()
        return self.rows[i][j - self.vmin]

    def __neg__(self):
        return BiSeries([[-c for c in r] for r in self.rows],
                        self.nu, self.nv, self.vmin, self.exact)

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self + (-other)

    def diagonal_sum(self, d: int) -> CoeffPoly:
        """Coefficient of t^d in the restriction to u = v = t."""
        s = CoeffPoly.zero()
        for i in range(0, d - self.vmin + 1):
            s = s + self.coefficient(i, d - i)
        return s

    def render(self) -> str:
        parts = []
        for i in range(self.nu + 1):
            for j in range(self.vmin, self.nv + 1):
                cpoly = self._get0(i, j)
                if cpoly:
                    parts.append(f"u^{i}*v^{j}: {cpoly.render()}")
        return "\n".join(parts) if parts else "0"


def divided_difference(P: BiSeries) -> BiSeries:
    """Q with (v - u) * Q = P, for P vanishing on the diagonal u = v.

    The diagonal condition is checked symbolically up to the truncation;
    a violation reports the first offending total degree.
    """
    if P.vmin != 0:
        raise SeriesError("divided difference requires a non-Laurent second variable")
    dmax = P.nu + P.nv if P.exact else min(P.nu, P.nv)
    for d in range(dmax + 1):
        if P.diagonal_sum(d):
            raise DiagonalError(d)
    if P.exact:
        nu, nv = P.nu, P.nv
    else:
        nu, nv = P.nu, P.nv - P.nu - 1
        if nv < 0:
            raise SeriesError("v-order too small to divide by (v - u)")
    rows = []
    for i in range(nu + 1):
        row = []
        for j in range(nv + 1):
            s = CoeffPoly.zero()
            for t in range(i + 1):
                s = s + P.coefficient(i - t, j + 1 + t)
            row.append(s)
        rows.append(row)
    return BiSeries(rows, nu, nv, 0, P.exact)


def bi_log_in_u(Q: BiSeries) -> BiSeries:
    """log Q for a bivariate series whose u^0 row is exactly 1.

    Differentiates in u, divides by Q (a triangular solve since the leading
    row is 1), and integrates back; the u^0 row of the result is 0.
    """
    if Q.vmin != 0:
        raise SeriesError("bivariate log requires a non-Laurent second variable")
    one_row = tuple([CoeffPoly.one()] + [CoeffPoly.zero()] * Q.nv)
    if Q.rows[0] != one_row:
        raise SeriesError("bivariate log requires the u^0 row to be exactly 1")
    nv = Q.nv

    def row_mul(r1, r2):
        buckets: list = [None] * (nv + 1)
        for a, ca in enumerate(r1):
            if not ca:
                continue
            for b in range(nv + 1 - a):
                cb = r2[b]
                if cb:
                    bucket = buckets[a + b]
                    if bucket is None:
                        bucket = buckets[a + b] = {}
                    accumulate_product(bucket, ca, cb)
        return [poly_from_bucket(b) if b else CoeffPoly.zero() for b in buckets]

    # W = (dQ/du) / Q, solved row by row in the u direction.
    W: list[list[CoeffPoly]] = []
    for i in range(Q.nu):
        target = [c * (i + 1) for c in Q.rows[i + 1]]
        for s in range(i):
            prod = row_mul(W[s], Q.rows[i - s])
            target = [t - p for t, p in zip(target, prod)]
        W.append(target)
    rows = [[CoeffPoly.zero()] * (nv + 1)]
    for i in range(1, Q.nu + 1):
        rows.append([c * Fraction(1, i) for c in W[i - 1]])
    return BiSeries(rows, Q.nu, Q.nv, 0, False)
