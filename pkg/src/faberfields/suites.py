"""Named check suites with default sizes, shared by the CLI and the sweep.

Default sizes match the package's own acceptance targets; ``--order N``
rescales the index bounds for quicker or deeper runs.
"""

from __future__ import annotations

from typing import Callable

from . import faberkernel, inversion, kirillov
from .reports import CheckReport, IdentityPair


def _run_grunsky_symmetry(N=12):
    return faberkernel.grunsky_symmetry_check(N)


def _run_routes(n=10, afield=8):
    return faberkernel.route_equivalence_check(n, n, n, n, afield, afield)


def _run_elimination(pmax=8):
    return faberkernel.elimination_check(pmax)


def _run_thm42(kmax=5, pmax=8):
    return kirillov.check_thm42(kmax, pmax)


def _run_recursion(pmax=8):
    return kirillov.check_recursion(pmax)


def _run_lemma41(kmax=4, mmax=12):
    return kirillov.lemma41_check(kmax, mmax)


def _run_commutation(nmax=4, jmax=4):
    cells = []
    for n in range(1, nmax + 1):
        for j in range(1, jmax + 1):
            cells.extend(kirillov.commutation_check(n, j).cells)
    return CheckReport("commutation", tuple(cells))


def _run_faber_derivative(N=8):
    return faberkernel.faber_derivative_identity_check(N)


def _run_gen_identity(pmax=8, kmax=8):
    return faberkernel.gen_identity_check(pmax, kmax)


def _run_phi_generating(xi_max=6, z_max=10):
    return faberkernel.phi_generating_check(xi_max, z_max)


def _run_thm51(kmax=5, pmax=5, order=10):
    cells = inversion.check_thm51_positive(kmax, order).cells
    cells += inversion.check_thm51_zero_and_negative(pmax, order).cells
    return CheckReport("thm51", tuple(cells))


def _run_unique_elimination(ps=(2, 3), order=6):
    cells = ()
    for p in ps:
        cells += inversion.unique_elimination_check(p, order).cells
    return CheckReport("unique-elimination", cells)


def _run_negative_action(pmax=8):
    return kirillov.negative_action_report(pmax)


_EXACT_SUITES: dict[str, tuple[Callable[..., CheckReport], Callable[[int], dict]]] = {
    "grunsky-symmetry": (_run_grunsky_symmetry, lambda o: {"N": o}),
    "routes": (_run_routes, lambda o: {"n": o, "afield": max(min(o, 8), 1)}),
    "elimination": (_run_elimination, lambda o: {"pmax": o}),
    "thm42": (_run_thm42, lambda o: {"kmax": min(5, o), "pmax": o}),
    "recursion": (_run_recursion, lambda o: {"pmax": o}),
    "lemma41": (_run_lemma41, lambda o: {"kmax": 4, "mmax": o + 4}),
    "commutation": (_run_commutation, lambda o: {"nmax": min(4, o), "jmax": min(4, o)}),
    "faber-derivative": (_run_faber_derivative, lambda o: {"N": o}),
    "gen-identity": (_run_gen_identity, lambda o: {"pmax": o, "kmax": o}),
    "phi-generating": (_run_phi_generating,
                       lambda o: {"xi_max": min(6, o), "z_max": o + 2}),
    "thm51": (_run_thm51, lambda o: {"kmax": min(5, o), "pmax": min(5, o),
                                     "order": o + 2}),
    "unique-elimination": (_run_unique_elimination, lambda o: {"order": max(o, 4)}),
    "negative-action": (_run_negative_action, lambda o: {"pmax": o}),
}


def suite_names() -> list[str]:
    return list(_EXACT_SUITES)


def run_suite(name: str, order: int | None = None, **overrides) -> CheckReport:
    """Run one exact suite; ``order`` rescales index bounds, overrides win."""
    if name not in _EXACT_SUITES:
        raise KeyError(f"unknown suite '{name}' (have {', '.join(_EXACT_SUITES)})")
    runner, order_map = _EXACT_SUITES[name]
    kwargs = order_map(order) if order is not None else {}
    kwargs.update(overrides)
    return runner(**kwargs)


def collect_pairs(order: int | None = None) -> list[IdentityPair]:
    """Identity pairs of every exact suite, for the numeric sweep.

    Without an order this uses the acceptance-scale defaults.
    """

    def sz(name, key, default):
        if order is None:
            return default
        return _EXACT_SUITES[name][1](order).get(key, default)

    pairs: list[IdentityPair] = []
    pairs += faberkernel.grunsky_symmetry_pairs(sz("grunsky-symmetry", "N", 12))
    n = sz("routes", "n", 10)
    af = sz("routes", "afield", 8)
    pairs += faberkernel.route_equivalence_pairs(n, n, n, n, af, af)
    pairs += faberkernel.elimination_pairs(sz("elimination", "pmax", 8))
    pairs += kirillov.thm42_pairs(sz("thm42", "kmax", 5), sz("thm42", "pmax", 8))
    pairs += kirillov.recursion_pairs(sz("recursion", "pmax", 8))
    pairs += kirillov.lemma41_pairs(sz("lemma41", "kmax", 4),
                                    sz("lemma41", "mmax", 12))
    pairs += kirillov.commutation_pairs(sz("commutation", "nmax", 4),
                                        sz("commutation", "jmax", 4))
    pairs += faberkernel.faber_derivative_pairs(sz("faber-derivative", "N", 8))
    pairs += faberkernel.gen_identity_pairs(sz("gen-identity", "pmax", 8),
                                            sz("gen-identity", "kmax", 8))
    pairs += faberkernel.phi_generating_pairs(sz("phi-generating", "xi_max", 6),
                                              sz("phi-generating", "z_max", 10))
    pairs += inversion.thm51_pairs(sz("thm51", "kmax", 5), sz("thm51", "pmax", 5),
                                   sz("thm51", "order", 10))
    pairs += inversion.unique_elimination_pairs((2, 3),
                                                sz("unique-elimination", "order", 6))
    pairs += kirillov.negative_action_pairs(sz("negative-action", "pmax", 8), 12)
    return pairs
