"""Small dense two-phase simplex over exact rationals (Bland's rule).

Only what the matching bounds need: maximize ``c @ x`` subject to
``A_eq @ x == b_eq``, ``A_ub @ x <= b_ub``, ``x >= 0`` with nonnegative
right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "InfeasibleLP", "UnboundedLP", "maximize"]


class InfeasibleLP(ValueError):
    pass


class UnboundedLP(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def _pivot(rows: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = rows[r][c]
    rows[r] = [v / piv for v in rows[r]]
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            f = row[c]
            pr = rows[r]
            rows[i] = [a - f * b for a, b in zip(row, pr)]
    basis[r] = c


def _run(rows: list[list[Fraction]], obj: list[Fraction], basis: list[int],
         allowed: int) -> int:
    """Maximize ``obj`` on the tableau in place.

    ``obj`` holds reduced costs (entering candidates have positive cost);
    only columns ``< allowed`` may enter. Returns the pivot count.
    """
    pivots = 0
    while True:
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return pivots
        best = None
        leave = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                # Bland: smallest ratio, ties broken by smallest basic index
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedLP("objective unbounded")
        _pivot(rows, basis, leave, enter)
        f = obj[enter]
        obj[:] = [a - f * b for a, b in zip(obj, rows[leave])]
        pivots += 1


def maximize(c: Sequence, A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             A_ub: Sequence[Sequence] = (), b_ub: Sequence = ()) -> LPResult:
    n = len(c)
    eq = [[Fraction(v) for v in row] for row in A_eq]
    ub = [[Fraction(v) for v in row] for row in A_ub]
    beq = [Fraction(v) for v in b_eq]
    bub = [Fraction(v) for v in b_ub]
    if any(v < 0 for v in beq + bub):
        raise ValueError("right-hand sides must be nonnegative")
    m_eq, m_ub = len(eq), len(ub)
    # columns: x (n) | slacks (m_ub) | artificials (m_eq) | rhs
    width = n + m_ub + m_eq
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    for k, row in enumerate(ub):
        r = row + [Fraction(0)] * (m_ub + m_eq) + [bub[k]]
        r[n + k] = Fraction(1)
        rows.append(r)
        basis.append(n + k)
    for k, row in enumerate(eq):
        r = row + [Fraction(0)] * (m_ub + m_eq) + [beq[k]]
        r[n + m_ub + k] = Fraction(1)
        rows.append(r)
        basis.append(n + m_ub + k)

    pivots = 0
    if m_eq:
        # phase 1: maximize -(sum of artificials)
        obj = [Fraction(0)] * (width + 1)
        for i in range(m_ub, m_ub + m_eq):
            obj = [a + b for a, b in zip(obj, rows[i])]
        for j in range(n + m_ub, width):
            obj[j] = Fraction(0)
        pivots += _run(rows, obj, basis, n + m_ub)
        if obj[-1] != 0:
            raise InfeasibleLP("equality constraints cannot be met")
        # drive leftover (zero-valued) artificials out of the basis
        for i, bv in enumerate(basis):
            if bv >= n + m_ub:
                col = next((j for j in range(n + m_ub) if rows[i][j] != 0), None)
                if col is not None:
                    _pivot(rows, basis, i, col)
                    pivots += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * (width - n + 1)
    obj = cost[:]
    for i, bv in enumerate(basis):
        if cost[bv] != 0:
            f = cost[bv]
            obj = [a - f * b for a, b in zip(obj, rows[i])]
    pivots += _run(rows, obj, basis, n + m_ub)

    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(value=value, x=tuple(x), pivots=pivots)
