"""Floating-point cross-checks of the exact suites.

Two independent oracles:

* a trapezoidal contour quadrature of the residue representation

      f(z)^2/(2 i pi) * integral  xi^2 f'(xi)^2 / f(xi)^2
                                  * 1/(f(xi) - f(z)) * dxi / xi^{p+1}
          = phi_p(z) + z^{1-p} f'(z),

  run on a circle |xi| = r strictly inside the univalence domain of a
  numeric seed with closed-form f and f' (the integrand is holomorphic in an
  annulus once the poles at 0 and z are enclosed, so the trapezoid rule
  converges geometrically and boundary smoothness never enters);

* random specialization sweeps: every exact identity suite is polynomial in
  the seed coefficients, so it may be evaluated at arbitrary bounded complex
  coefficient vectors and must hold to floating accuracy.

Everything here is embarrassingly parallel over (suite, draw, p) and pure.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .faberkernel import lambda_direct
from .reports import CheckCell, CheckReport, IdentityPair


@dataclass(frozen=True)
class NumericSeed:
    """A concrete coefficient assignment with optional closed-form evaluators."""

    name: str
    coeff: Callable[[int], object]          # n -> value of c_n (exact or complex)
    f: Callable[[complex], complex] | None = None
    fprime: Callable[[complex], complex] | None = None
    univalence_radius: float = float("inf")

    def coeff_map(self, nmax: int) -> dict[int, object]:
        return {n: self.coeff(n) for n in range(1, nmax + 1)}


def zero_seed() -> NumericSeed:
    """The identity seed f(z) = z."""
    return NumericSeed(
        name="zero",
        coeff=lambda n: Fraction(0),
        f=lambda x: x,
        fprime=lambda x: 1.0 + 0j,
        univalence_radius=float("inf"),
    )


def koebe_seed(rho) -> NumericSeed:
    """Scaled Koebe seed: c_n = (n+1) rho^n, f(z) = z/(1 - rho z)^2.

    Exact rational rho keeps the coefficient values exact; univalent for
    |z| < 1/rho.
    """
    rho = Fraction(rho) if not isinstance(rho, Fraction) else rho
    rf = float(rho)

    def f(x):
        return x / (1 - rf * x) ** 2

    def fprime(x):
        return (1 + rf * x) / (1 - rf * x) ** 3

    return NumericSeed(
        name=f"koebe(rho={rho})",
        coeff=lambda n: (n + 1) * rho ** n,
        f=f,
        fprime=fprime,
        univalence_radius=float("inf") if rho == 0 else 1.0 / rf,
    )


def random_seed(seed: int, bound: float = 0.5, nmax: int = 64) -> NumericSeed:
    """Random complex coefficients with |c_n| <= (n+1) * bound.

    Suitable for polynomial-identity sweeps; carries no closed-form
    evaluator, so it cannot feed the contour oracle.
    """
    rng = random.Random(seed)
    values = {}
    for n in range(1, nmax + 1):
        radius = (n + 1) * bound * rng.random()
        angle = 2 * cmath.pi * rng.random()
        values[n] = radius * cmath.exp(1j * angle)

    def coeff(n: int):
        try:
            return values[n]
        except KeyError:
            raise IndexError(f"random seed tabulated only up to c{nmax}") from None

    return NumericSeed(name=f"random({seed})", coeff=coeff)


@dataclass(frozen=True)
class ContourReport:
    p: int
    z: complex
    r: float
    M: int
    lhs: complex          # quadrature value at M nodes
    rhs: complex          # symbolic residue form, specialized
    gap: float
    self_gap: float       # |quadrature(M) - quadrature(2M)|
    tolerance: float
    self_tolerance: float

    @property
    def converged(self) -> bool:
        return self.self_gap <= self.self_tolerance

    @property
    def ok(self) -> bool:
        return self.converged and self.gap <= self.tolerance

    @property
    def status(self) -> str:
        if not self.converged:
            return "non-converged"
        return "ok" if self.gap <= self.tolerance else "mismatch"

    def to_json_obj(self) -> dict:
        return {
            "check": "contour",
            "p": self.p,
            "z": [self.z.real, self.z.imag],
            "r": self.r,
            "M": self.M,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "gap": self.gap,
            "self_gap": self.self_gap,
            "status": self.status,
        }


def _quadrature(seed: NumericSeed, p: int, z: complex, r: float, M: int) -> complex:
    """Trapezoid rule for the contour integral on |xi| = r (mean of samples)."""
    fz = seed.f(z)
    total = 0j
    for j in range(M):
        xi = r * cmath.exp(2j * cmath.pi * j / M)
        fxi = seed.f(xi)
        s = (xi * seed.fprime(xi) / fxi) ** 2
        total += s / ((fxi - fz) * xi ** p)
    return fz * fz * total / M


def contour_check(seed: NumericSeed, p: int, z: complex, r: float, M: int,
                  tolerance: float = 1e-9,
                  self_tolerance: float = 1e-11) -> ContourReport:
    """Quadrature versus the specialized symbolic side phi_p(z) + z^(1-p) f'(z).

    The quadrature is accepted only if doubling the node count moves it by
    less than the self-consistency tolerance; otherwise the report carries
    status ``non-converged`` rather than ``mismatch``.
    """
    if seed.f is None or seed.fprime is None:
        raise ValueError(f"seed {seed.name} has no closed-form evaluators")
    if not (abs(z) < r < seed.univalence_radius):
        raise ValueError(
            f"need |z| < r < univalence radius, got |z|={abs(z)}, r={r}, "
            f"radius={seed.univalence_radius}")
    lhs = _quadrature(seed, p, z, r, M)
    lhs2 = _quadrature(seed, p, z, r, 2 * M)
    lam = lambda_direct(p).poly(p)
    values = seed.coeff_map(max((c.max_variable() for c in lam.entries.values()),
                                default=0))
    fz = seed.f(z)
    rhs = 0j
    for e, cpoly in lam.entries.items():
        rhs += complex(cpoly.specialize(values)) * fz ** e
    rhs += z ** (1 - p) * seed.fprime(z)
    return ContourReport(
        p=p, z=complex(z), r=float(r), M=M,
        lhs=lhs, rhs=rhs,
        gap=abs(lhs - rhs),
        self_gap=abs(lhs - lhs2),
        tolerance=tolerance,
        self_tolerance=self_tolerance,
    )


def _relative_ok(lhs: complex, rhs: complex, tol: float) -> tuple[bool, float]:
    gap = abs(lhs - rhs)
    scale = max(1.0, abs(lhs), abs(rhs))
    return gap <= tol * scale, gap / scale


def specialize_pair(pair: IdentityPair, values: Mapping[int, object],
                    tol: float) -> tuple[bool, float]:
    lhs = complex(pair.lhs.specialize(values))
    rhs = complex(pair.rhs.specialize(values))
    return _relative_ok(lhs, rhs, tol)


def numeric_identity_sweep(pairs: list[IdentityPair], draws: int = 25,
                           rng_seed: int = 2024, tol: float = 1e-12,
                           bound: float = 0.5) -> CheckReport:
    """Specialize identity pairs at random bounded coefficient vectors.

    Any specialization is valid because both sides are polynomials in the
    seed coefficients; each draw/suite cell passes when every pair of that
    suite holds within the relative tolerance.
    """
    nmax = 0
    for pair in pairs:
        for poly in (pair.lhs, pair.rhs):
            nmax = max(nmax, poly.max_variable())
    by_suite: dict[str, list[IdentityPair]] = {}
    for pair in pairs:
        by_suite.setdefault(pair.suite, []).append(pair)
    cells: list[CheckCell] = []
    for d in range(draws):
        seed = random_seed(rng_seed + d, bound=bound, nmax=max(nmax, 1))
        values = seed.coeff_map(max(nmax, 1))
        for suite_name in sorted(by_suite):
            worst = 0.0
            first_bad = None
            for pair in by_suite[suite_name]:
                ok, rel = specialize_pair(pair, values, tol)
                worst = max(worst, rel)
                if not ok and first_bad is None:
                    first_bad = pair
            ok = first_bad is None
            detail = "" if ok else (
                f"{first_bad.label()} off by relative {worst:.3e} at {seed.name}")
            cells.append(CheckCell(
                (("draw", d),) + (("suite", suite_name),), ok, detail))
    return CheckReport("numeric-sweep", tuple(cells))
