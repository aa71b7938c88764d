"""Structured pass/fail reports for the identity check suites.

Checks return cell-by-cell results rather than a bare boolean so the CLI can
print coverage matrices and CI can diff failures.  A cell is keyed by its
index tuple (for example ``k`` and ``p``); the optional detail string names
the first offending coefficient when a cell fails.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckCell:
    indices: tuple[tuple[str, int], ...]
    ok: bool
    detail: str = ""

    def to_json_obj(self) -> dict:
        obj: dict = {name: value for name, value in self.indices}
        obj["ok"] = self.ok
        if not self.ok and self.detail:
            obj["detail"] = self.detail
        return obj


@dataclass(frozen=True)
class CheckReport:
    suite: str
    cells: tuple[CheckCell, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def first_failure(self) -> CheckCell | None:
        for c in self.cells:
            if not c.ok:
                return c
        return None

    def to_json_obj(self) -> dict:
        return {"suite": self.suite,
                "cells": [c.to_json_obj() for c in self.cells]}

    def render_text(self) -> str:
        lines = [f"suite {self.suite}: "
                 f"{'PASS' if self.passed else 'FAIL'} "
                 f"({sum(c.ok for c in self.cells)}/{len(self.cells)} cells)"]
        names = self._grid_axes()
        if names:
            lines.extend(self._render_grid(*names))
        for c in self.cells:
            if not c.ok:
                keys = " ".join(f"{n}={v}" for n, v in c.indices)
                lines.append(f"  FAIL [{keys}] {c.detail}")
        return "\n".join(lines)

    def _grid_axes(self):
        if not self.cells:
            return None
        names = [n for n, _ in self.cells[0].indices]
        if len(names) != 2:
            return None
        if any([n for n, _ in c.indices] != names for c in self.cells):
            return None
        return names

    def _render_grid(self, row_name, col_name):
        rows = sorted({dict(c.indices)[row_name] for c in self.cells})
        cols = sorted({dict(c.indices)[col_name] for c in self.cells})
        status = {(dict(c.indices)[row_name], dict(c.indices)[col_name]):
                  ("ok" if c.ok else "XX") for c in self.cells}
        width = max(2, *(len(str(c)) for c in cols))
        label = f"{row_name}\\{col_name}"
        label_width = max(len(label), *(len(str(r)) for r in rows))
        header = f"  {label:>{label_width}} " + " ".join(f"{c:>{width}}" for c in cols)
        lines = [header]
        for r in rows:
            cells = " ".join(f"{status.get((r, c), '  '):>{width}}" for c in cols)
            lines.append(f"  {str(r):>{label_width}} {cells}")
        return lines


def cell(ok: bool, detail: str = "", **indices: int) -> CheckCell:
    return CheckCell(tuple(indices.items()), ok, detail)


@dataclass(frozen=True)
class IdentityPair:
    """One polynomial identity instance: lhs and rhs computed by separate routes.

    The exact suites assert structural equality; the numeric sweep
    specializes both sides at random coefficient vectors and compares floats.
    """

    suite: str
    indices: tuple[tuple[str, int], ...]
    lhs: object  # CoeffPoly
    rhs: object  # CoeffPoly

    def label(self) -> str:
        keys = " ".join(f"{n}={v}" for n, v in self.indices)
        return f"{self.suite}[{keys}]"
