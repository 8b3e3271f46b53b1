"""Exact two-phase simplex over the rationals.

Every variable is nonnegative.  Pivoting follows Bland's rule (smallest
eligible entering index, ties in the ratio test broken by smallest basic
index), so the method terminates and its certificates are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .game import as_rational

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPProblem:
    """``max (or min) objective·x`` s.t. ``rows[k]·x (sense) rhs[k]``, ``x ≥ 0``.

    ``senses`` holds ``"<="``, ``">="`` or ``"=="``.  ``upper`` optionally
    bounds individual variables from above (``None`` for no bound).
    """

    objective: Sequence
    rows: Sequence[Sequence] = ()
    senses: Sequence[str] = ()
    rhs: Sequence = ()
    upper: Sequence | None = None
    maximize: bool = True


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    pivots: int = 0
    phase1_value: Fraction | None = field(default=None, repr=False)


def _normalise(p: LPProblem):
    n = len(p.objective)
    if n == 0:
        raise InputError("LP has no variables")
    if not (len(p.rows) == len(p.senses) == len(p.rhs)):
        raise InputError("rows, senses and rhs must have equal length")
    c = [as_rational(v) for v in p.objective]
    rows, senses, rhs = [], [], []
    for row, sense, b in zip(p.rows, p.senses, p.rhs):
        if len(row) != n:
            raise InputError(f"constraint row has {len(row)} entries, expected {n}")
        if sense not in ("<=", ">=", "=="):
            raise InputError(f"unknown constraint sense {sense!r}")
        rows.append([as_rational(v) for v in row])
        senses.append(sense)
        rhs.append(as_rational(b))
    if p.upper is not None:
        if len(p.upper) != n:
            raise InputError("upper bounds must have one entry per variable")
        for k, u in enumerate(p.upper):
            if u is not None:
                row = [_ZERO] * n
                row[k] = _ONE
                rows.append(row)
                senses.append("<=")
                rhs.append(as_rational(u))
    if not p.maximize:
        c = [-v for v in c]
    return n, c, rows, senses, rhs


class _Tableau:
    """Dense tableau; column ``j`` of ``self.t[r]`` is variable ``j``, last is rhs."""

    def __init__(self, t, basis, ncols):
        self.t = t
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def set_objective(self, cost):
        obj = list(cost) + [_ZERO]
        for r, b in enumerate(self.basis):
            cb = obj[b]
            if cb:
                row = self.t[r]
                obj = [o - cb * v for o, v in zip(obj, row)]
        self.obj = obj

    def pivot(self, r, col):
        row = self.t[r]
        pv = row[col]
        if pv != _ONE:
            row = [v / pv for v in row]
            self.t[r] = row
        nz = [(j, v) for j, v in enumerate(row) if v]
        for k, other in enumerate(self.t):
            if k != r:
                f = other[col]
                if f:
                    for j, v in nz:
                        other[j] -= f * v
        f = self.obj[col]
        if f:
            obj = self.obj
            for j, v in nz:
                obj[j] -= f * v
        self.basis[r] = col
        self.pivots += 1

    def run(self, allowed):
        """Maximise the current objective.  Returns ``None`` or an unbounded column."""
        while True:
            enter = next((j for j in allowed if self.obj[j] > 0), None)
            if enter is None:
                return None
            best = None
            for r, row in enumerate(self.t):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (best is None or ratio < best[0]
                            or (ratio == best[0] and self.basis[r] < self.basis[best[1]])):
                        best = (ratio, r)
            if best is None:
                return enter
            self.pivot(best[1], enter)


def solve_lp_exact(p: LPProblem) -> LPResult:
    """Solve ``p`` exactly; see :class:`LPProblem` for the form."""
    n, c, rows, senses, rhs = _normalise(p)
    m = len(rows)

    # Column layout: originals, one slack/surplus per inequality, artificials.
    slack_of = {}
    col = n
    for k, s in enumerate(senses):
        if s != "==":
            slack_of[k] = col
            col += 1
    n_struct = col
    t, basis, artificials = [], [], []
    for k in range(m):
        row = rows[k] + [_ZERO] * (n_struct - n)
        if k in slack_of:
            row[slack_of[k]] = _ONE if senses[k] == "<=" else -_ONE
        b = rhs[k]
        if b < 0:
            row = [-v for v in row]
            b = -b
        t.append(row + [b])
    for k in range(m):
        sc = slack_of.get(k)
        if sc is not None and t[k][sc] == _ONE:
            basis.append(sc)
        else:
            basis.append(None)
            artificials.append(k)
    ncols = n_struct + len(artificials)
    for r in range(m):
        rhs_val = t[r].pop()
        t[r].extend([_ZERO] * len(artificials))
        t[r].append(rhs_val)
    for a, r in enumerate(artificials):
        t[r][n_struct + a] = _ONE
        basis[r] = n_struct + a

    tab = _Tableau(t, basis, ncols)
    phase1_value = _ZERO
    if artificials:
        tab.set_objective([_ZERO] * n_struct + [-_ONE] * len(artificials))
        tab.run(range(ncols))
        phase1_value = tab.obj[-1]
        if phase1_value != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots, phase1_value=phase1_value)
        # Drive zero-level artificials out of the basis; drop redundant rows.
        r = 0
        while r < len(tab.t):
            if tab.basis[r] >= n_struct:
                col = next((j for j in range(n_struct) if tab.t[r][j] != 0), None)
                if col is None:
                    del tab.t[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, col)
            r += 1
        for r in range(len(tab.t)):
            tab.t[r] = tab.t[r][:n_struct] + [tab.t[r][-1]]
        tab.ncols = n_struct

    tab.set_objective(c + [_ZERO] * (n_struct - n))
    unbounded_col = tab.run(range(n_struct))
    if unbounded_col is not None:
        ray = [_ZERO] * n_struct
        ray[unbounded_col] = _ONE
        for r, b in enumerate(tab.basis):
            ray[b] = -tab.t[r][unbounded_col]
        return LPResult(UNBOUNDED, ray=tuple(ray[:n]), pivots=tab.pivots)

    x = [_ZERO] * n_struct
    for r, b in enumerate(tab.basis):
        x[b] = tab.t[r][-1]
    x = tuple(x[:n])
    value = sum((as_rational(cv) * xv for cv, xv in zip(p.objective, x)), _ZERO)
    return LPResult(OPTIMAL, value=value, x=x, pivots=tab.pivots,
                    phase1_value=phase1_value)
