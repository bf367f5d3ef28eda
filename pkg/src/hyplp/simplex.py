"""Dense two-phase simplex for small linear programs.

Solves max c.x subject to A x <= b, x >= 0 (b of any sign) on a plain
tableau with Bland's rule breaking ties, so it cannot cycle.  Problems here
stay tiny (tens of rows, a few hundred columns), which keeps dense pivoting
cheap and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["SimplexResult", "Infeasible", "Unbounded", "solve_max"]

_PIVOT_TOL = 1e-11
_COST_TOL = 1e-9


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


@dataclass(frozen=True)
class SimplexResult:
    x: tuple[float, ...]
    value: float
    duals: tuple[float, ...]


def _pivot(tab: list[list[float]], basis: list[int], row: int, col: int) -> None:
    inv = 1.0 / tab[row][col]
    tab[row] = [v * inv for v in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0.0:
            f = r[col]
            tab[i] = [a - f * p for a, p in zip(r, prow)]
    basis[row] = col


def _iterate(tab: list[list[float]], basis: list[int], obj: list[float],
             ncols: int, max_iters: int) -> list[float]:
    """Pivot until the objective row (z_j - c_j entries, value in last slot)
    has no negative reduced cost.  Entering column: lowest eligible index."""
    for _ in range(max_iters):
        col = -1
        for j in range(ncols):
            if obj[j] < -_COST_TOL:
                col = j
                break
        if col < 0:
            return obj
        row, best, tie = -1, 0.0, -1
        for i, r in enumerate(tab):
            if r[col] > _PIVOT_TOL:
                ratio = r[-1] / r[col]
                if row < 0 or ratio < best - _PIVOT_TOL or (
                        abs(ratio - best) <= _PIVOT_TOL and basis[i] < tie):
                    row, best, tie = i, ratio, basis[i]
        if row < 0:
            raise Unbounded("objective unbounded above")
        _pivot(tab, basis, row, col)
        f = obj[col]
        if f != 0.0:
            prow = tab[row]
            for j in range(len(obj)):
                obj[j] -= f * prow[j]
    raise ArithmeticError("simplex iteration cap exceeded")


def solve_max(c: Sequence[float], a: Sequence[Sequence[float]], b: Sequence[float],
              max_iters: int = 50000) -> SimplexResult:
    """Maximize c.x over {x >= 0 : A x <= b}.  Returns the primal solution,
    the optimal value, and the dual vector read off the slack reduced costs."""
    m, n = len(b), len(c)
    if len(a) != m or any(len(row) != n for row in a):
        raise ValueError("constraint matrix shape mismatch")
    # rows with negative rhs get negated (their slack then carries -1) and an
    # artificial basic variable for phase 1
    flipped = [bi < 0.0 for bi in b]
    art_rows = [i for i in range(m) if flipped[i]]
    nart = len(art_rows)
    art_col = {i: n + m + t for t, i in enumerate(art_rows)}
    ncols = n + m + nart
    tab: list[list[float]] = []
    basis: list[int] = []
    for i in range(m):
        sgn = -1.0 if flipped[i] else 1.0
        row = [sgn * float(v) for v in a[i]]
        slack = [0.0] * m
        slack[i] = sgn
        row += slack
        art = [0.0] * nart
        if flipped[i]:
            art[art_col[i] - n - m] = 1.0
        row += art
        row.append(sgn * float(b[i]))
        tab.append(row)
        basis.append(art_col[i] if flipped[i] else n + i)

    if nart:
        # phase 1: maximize -(sum of artificials); with artificials basic the
        # reduced-cost row is minus the sum of their tableau rows, plus 1 on
        # each artificial column
        obj = [0.0] * (ncols + 1)
        for i, bi in enumerate(basis):
            if bi >= n + m:
                for j in range(ncols + 1):
                    obj[j] -= tab[i][j]
        for t in range(nart):
            obj[n + m + t] += 1.0
        obj = _iterate(tab, basis, obj, ncols, max_iters)
        if obj[-1] < -1e-7:
            raise Infeasible(f"phase 1 optimum {obj[-1]:.3g} < 0")
        for i in range(m):
            if basis[i] >= n + m:
                # artificial stuck basic at zero level; pivot it out when the
                # row has any usable entry, else the row is redundant
                for j in range(n + m):
                    if abs(tab[i][j]) > _PIVOT_TOL:
                        _pivot(tab, basis, i, j)
                        break

    cost = [float(v) for v in c] + [0.0] * (m + nart)
    obj = [-cost[j] for j in range(ncols)] + [0.0]
    for i, bi in enumerate(basis):
        if cost[bi] != 0.0:
            cb = cost[bi]
            for j in range(ncols + 1):
                obj[j] += cb * tab[i][j]
    inf = float("inf")
    for t in range(nart):
        obj[n + m + t] = inf  # artificials never re-enter
    obj = _iterate(tab, basis, obj, ncols, max_iters)

    x = [0.0] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    # for a flipped row the slack column is -e_i, so obj[n+i] already carries
    # the sign that makes it the dual of the original inequality
    duals = tuple(obj[n + i] for i in range(m))
    return SimplexResult(tuple(x), obj[-1], duals)
