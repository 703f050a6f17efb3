"""Exact rational simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The origin is feasible, so one phase suffices.  Bland's rule rules out
cycling.  Dual values are read off the final objective row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

_ZERO = Fraction(0)


class UnboundedError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]
    pivots: int


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    m, n = len(A), len(c)
    rhs = [Fraction(v) for v in b]
    if any(v < 0 for v in rhs):
        raise ValueError("right-hand side must be nonnegative")
    width = n + m
    rows: list[list[Fraction]] = []
    for i, row in enumerate(A):
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        r = [Fraction(v) for v in row] + [_ZERO] * m
        r[n + i] = Fraction(1)
        rows.append(r)
    obj = [-Fraction(v) for v in c] + [_ZERO] * m
    value = _ZERO
    basis = list(range(n, n + m))
    pivots = 0

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), -1)
        if enter < 0:
            break
        leave, best = -1, None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave < 0:
            raise UnboundedError("objective is unbounded")

        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            rows[leave] = prow
            rhs[leave] /= piv
        nz = [j for j in range(width) if prow[j]]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                r = rows[i]
                for j in nz:
                    r[j] -= f * prow[j]
                rhs[i] -= f * rhs[leave]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * prow[j]
        value -= f * rhs[leave]
        basis[leave] = enter
        pivots += 1

    x = [_ZERO] * n
    for i, v in enumerate(basis):
        if v < n:
            x[v] = rhs[i]
    return LPResult(value, tuple(x), tuple(obj[n:]), pivots)
