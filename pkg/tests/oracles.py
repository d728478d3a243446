"""Slow, independent reference computations used to pin expected values.

Nothing here imports the engine's elimination code: ranks come from
determinants of minors, cohomology dimensions from those ranks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def det(rows: list[list]) -> Fraction:
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = Fraction(1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if term == 0:
                break
        total += -term if inversions % 2 else term
    return total


def minor_rank(rows: list[list]) -> int:
    """Largest k with a nonzero k x k minor.  Exponential; tiny matrices only."""
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    best = 0
    for k in range(1, min(m, n) + 1):
        found = any(det([[rows[i][j] for j in cs] for i in rs]) != 0
                    for rs in combinations(range(m), k) for cs in combinations(range(n), k))
        if not found:
            break
        best = k
    return best


def oracle_betti(dims: list[int], diffs: list[list[list]]) -> list[int]:
    """dim H^k = dim C^k - rank d^k - rank d^{k-1}, ranks by minors."""
    ranks = [minor_rank(d) for d in diffs]
    return [dims[k] - (ranks[k] if k < len(ranks) else 0) - (ranks[k - 1] if k > 0 else 0)
            for k in range(len(dims))]


def hexagon_coboundary() -> list[list[int]]:
    """d: C^0 -> C^1 of the hexagon, edges e_i = (i, i+1 mod 6) oriented low -> high."""
    rows = []
    for i in range(6):
        a, b = sorted((i, (i + 1) % 6))
        row = [0] * 6
        row[a], row[b] = -1, 1
        rows.append(row)
    return rows


def gauss_rank(rows: list[list]) -> int:
    """Textbook elimination over Fraction; independent of the engine's routine."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank_, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank_ < len(a) and col < ncols:
        pivot = next((i for i in range(rank_, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        a[rank_], a[pivot] = a[pivot], a[rank_]
        for i in range(len(a)):
            if i != rank_ and a[i][col] != 0:
                f = a[i][col] / a[rank_][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank_])]
        rank_ += 1
        col += 1
    return rank_


def hexagon_pullbacks(vertex_map: dict[int, int]) -> tuple[list[list[int]], list[list[int]]]:
    """The 6x6 matrices of an involution on C^0 and C^1 of the hexagon."""
    t0 = [[int(vertex_map.get(i, i) == j) for j in range(6)] for i in range(6)]
    edges = [tuple(sorted((i, (i + 1) % 6))) for i in range(6)]
    t1 = []
    for a, b in edges:
        fa, fb = vertex_map.get(a, a), vertex_map.get(b, b)
        image = tuple(sorted((fa, fb)))
        row = [0] * 6
        row[edges.index(image)] = 1 if fa < fb else -1
        t1.append(row)
    return t0, t1


def hexagon_eigen_dims(vertex_map: dict[int, int], sign: int) -> tuple[int, int]:
    """dims of the sign-eigenspace of the involution on H^0, H^1 of the hexagon."""
    t0, t1 = hexagon_pullbacks(vertex_map)
    d0 = hexagon_coboundary()
    shift0 = [[t0[i][j] - sign * (i == j) for j in range(6)] for i in range(6)]
    shift1 = [[t1[i][j] - sign * (i == j) for j in range(6)] for i in range(6)]
    eig0 = 6 - gauss_rank(shift0)
    eig1 = 6 - gauss_rank(shift1)
    h0 = 6 - gauss_rank(shift0 + d0)           # eigen-cocycles in degree 0
    boundaries = eig0 - h0                      # d maps the degree-0 eigenspace injectively mod cocycles
    return h0, eig1 - boundaries
