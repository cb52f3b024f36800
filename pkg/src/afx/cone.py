"""Extreme rays of pointed polyhedral cones by the double description method.

All arithmetic is on Python integers.  A cone is given by integer
constraint rows ``a`` meaning ``a . x >= 0``.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from .linalg import inverse, rank


def _normalize(r: list[int]) -> tuple[int, ...]:
    g = 0
    for x in r:
        g = gcd(g, x)
    return tuple(x // g for x in r) if g > 1 else tuple(r)


def _independent_rows(A: Sequence[Sequence[int]], d: int) -> list[int]:
    chosen: list[int] = []
    basis: list[Sequence[int]] = []
    for i, row in enumerate(A):
        if rank(basis + [row]) > len(basis):
            chosen.append(i)
            basis.append(row)
            if len(chosen) == d:
                break
    return chosen


def extreme_rays(A: Sequence[Sequence[int]], d: int) -> list[tuple[int, ...]]:
    """Primitive integer extreme rays of ``{x in R^d : A x >= 0}``.

    The cone must be pointed (``rank A == d``); otherwise ValueError.
    """
    A = [tuple(int(x) for x in row) for row in A]
    start = _independent_rows(A, d)
    if len(start) < d:
        raise ValueError("cone is not pointed")
    B = [A[i] for i in start]
    Binv = inverse(B)
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []
    for k in range(d):
        col = [Binv[i][k] for i in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        rays.append(_normalize([int(x * den) for x in col]))
        tight.append(sum(1 << start[j] for j in range(d) if j != k))

    start_set = set(start)
    for ci, a in enumerate(A):
        if ci in start_set:
            continue
        bit = 1 << ci
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        neg = [i for i, s in enumerate(vals) if s < 0]
        if not neg:
            for i, s in enumerate(vals):
                if s == 0:
                    tight[i] |= bit
            continue
        pos = [i for i, s in enumerate(vals) if s > 0]
        zero = [i for i, s in enumerate(vals) if s == 0]
        new_rays = []
        new_tight = []
        for i in pos:
            for j in neg:
                common = tight[i] & tight[j]
                if bin(common).count("1") < d - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and (tight[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                si, sj = vals[i], vals[j]
                r = [si * y - sj * x for x, y in zip(rays[i], rays[j])]
                new_rays.append(_normalize(r))
                new_tight.append(common | bit)
        keep = pos + zero
        rays_next = [rays[i] for i in keep] + new_rays
        tight_next = [tight[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_tight
        rays, tight = rays_next, tight_next
    return rays
