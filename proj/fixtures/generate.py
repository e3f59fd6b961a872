#!/usr/bin/env python3
"""Regenerates the bundled instance files in this directory."""

import json
import math
import os
from fractions import Fraction

HERE = os.path.dirname(os.path.abspath(__file__))


def write(name, doc):
    with open(os.path.join(HERE, name), "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def four_corners():
    # A, B, C, D; edges listed with their orientation, then the four triangles.
    verts = [[1, 1], [1, -1], [-1, -1], [-1, 1]]
    A, B, C, D = range(4)
    edges = [[A, B], [C, D], [A, D], [C, B], [A, C], [B, D]]
    tris = [[A, B, C], [A, C, D], [A, B, D], [B, C, D]]
    return {
        "dim": 2,
        "labels": ["A", "B", "C", "D"],
        "vertices": verts,
        "simplices": {"1": edges, "2": tris},
        "k": 1,
        "boundary": {"degree": 0, "coeffs": [[A, -1], [B, 1], [C, -1], [D, 1]]},
        "candidate": {"degree": 1, "coeffs": [[0, 1], [1, 1]]},
        "certificate": {"degree": 1, "values": [2, 2, 2, 2, 0, 0]},
    }


def cone_polygon(n, heights):
    # Disc cone from the origin plus one tent per height over the same n-gon.
    ring = [[math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n), 0.0] for i in range(n)]
    verts = [[0.0, 0.0, 0.0]] + ring + [[0.0, 0.0, h] for h in heights]
    tris = []
    for apex in [0] + [n + 1 + j for j in range(len(heights))]:
        for i in range(n):
            tris.append([apex, 1 + i, 1 + (i + 1) % n])
    rim = [[1 + i, 1 + (i + 1) % n] for i in range(n)]
    # Signed projected areas, i.e. the dx^dy cochain, for every triangle.
    values = []
    for t in tris:
        p, q, r = (verts[v] for v in t)
        values.append(0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])))
    return {
        "dim": 3,
        "vertices": verts,
        "simplices": {"1": rim, "2": tris},
        "k": 2,
        "boundary": {"degree": 1, "coeffs": [[i, 1] for i in range(n)]},
        "candidate": {"degree": 2, "coeffs": [[i, 1] for i in range(n)]},
        "certificate": {"degree": 2, "values": values},
    }


def segment():
    # P M Q on the x-axis with a detour through W; certified by dx.
    verts = [[0, 0], [1, 0], [2, 0], [1, 1]]
    P, M, Q, W = range(4)
    return {
        "dim": 2,
        "labels": ["P", "M", "Q", "W"],
        "vertices": verts,
        "simplices": {"1": [[P, M], [M, Q], [P, W], [W, Q], [M, W]], "2": [[P, M, W], [M, Q, W]]},
        "k": 1,
        "boundary": {"degree": 0, "coeffs": [[P, -1], [Q, 1]]},
        "candidate": {"degree": 1, "coeffs": [[0, 1], [1, 1]]},
        "certificate": {"degree": 1, "values": [1, 1, 1, 1, 0]},
    }


def disconnected():
    return {
        "dim": 2,
        "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]],
        "simplices": {"1": [[0, 1], [2, 3]]},
        "k": 1,
        "boundary": {"degree": 0, "coeffs": [[0, -1], [3, 1]]},
    }


def square_grid(m, side):
    # [0, side]^2 cut into m x m cells, two triangles each, counterclockwise.
    h = side / m
    verts = [[i * h, j * h] for j in range(m + 1) for i in range(m + 1)]
    idx = lambda i, j: j * (m + 1) + i
    tris = []
    for j in range(m):
        for i in range(m):
            a, b, c, d = idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)
            tris += [[a, b, c], [a, c, d]]
    return verts, tris, idx


def square_density(mult):
    verts, tris, _ = square_grid(8, 2.0)
    return {
        "dim": 2,
        "vertices": verts,
        "simplices": {"2": tris},
        "chain": {"degree": 2, "coeffs": [[i, mult] for i in range(len(tris))]},
    }


def square_cycle():
    m = 4
    verts, tris, idx = square_grid(m, 2.0)
    loop = [idx(i, 0) for i in range(m)] + [idx(m, j) for j in range(m)]
    loop += [idx(m - i, m) for i in range(m)] + [idx(0, m - j) for j in range(m)]
    edges = [[loop[i], loop[(i + 1) % len(loop)]] for i in range(len(loop))]
    return {
        "dim": 2,
        "vertices": verts,
        "simplices": {"1": edges, "2": tris},
        "cycle": {"degree": 1, "coeffs": [[i, 1] for i in range(len(edges))]},
    }


def hollow_triangle():
    return {
        "dim": 2,
        "vertices": [[0, 0], [1, 0], [0, 1]],
        "simplices": {"1": [[0, 1], [1, 2], [2, 0]]},
        "cycle": {"degree": 1, "coeffs": [[0, 1], [1, 1], [2, 1]]},
    }


def area(p, q, r):
    u = [q[i] - p[i] for i in range(3)]
    v = [r[i] - p[i] for i in range(3)]
    c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    return 0.5 * math.sqrt(sum(x * x for x in c))


def rational_solve(cols, rhs):
    # One solution of sum_j x_j cols[j] = rhs over Q, or None.
    n, m = len(cols), len(rhs)
    rows = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(m)]
    pivots, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def projective_plane():
    # Six-vertex projective plane plus a disc E on the loop 0-1-3. The loop
    # bounds half of the projective plane over Q but not over Z; E is placed
    # so that this half-integral chain is 5e-10 heavier than E, a tie for the
    # LP relaxation; proving E optimal takes branch-and-bound.
    verts = [[1.0, 0.2, 0.1], [0.1, 1.1, 0.3], [-0.9, 0.4, -0.2], [-0.6, -0.8, 0.4], [0.5, -0.9, -0.3], [0.2, 0.1, 1.2]]
    faces = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]]
    loop = [[0, 1], [1, 3], [3, 0]]
    edges = sorted({tuple(sorted(f[a:a + 2] if a < 2 else [f[2], f[0]])) for f in faces for a in range(3)})
    def face_col(f):
        col = [0] * len(edges)
        for a, b in [(f[1], f[2]), (f[0], f[2]), (f[0], f[1])]:
            sign = 1 if (a, b) == (f[1], f[2]) or (a, b) == (f[0], f[1]) else -1
            e = tuple(sorted((a, b)))
            col[edges.index(e)] += sign * (1 if e == (a, b) else -1)
        return col
    rhs = [0] * len(edges)
    for a, b in loop:
        e = tuple(sorted((a, b)))
        rhs[edges.index(e)] += 1 if e == (a, b) else -1
    half = rational_solve([face_col(f) for f in faces], rhs)
    assert half is not None and any(x.denominator != 1 for x in half)
    target = sum(abs(float(x)) * area(*(verts[v] for v in f)) for x, f in zip(half, faces)) - 5e-10
    centroid = [sum(verts[v][i] for v in (0, 1, 3)) / 3 for i in range(3)]
    def apex(h):
        return [centroid[0], centroid[1], centroid[2] - h]
    def disc(h):
        return sum(area(apex(h), verts[a], verts[b]) for a, b in loop)
    lo, hi = 0.0, 10.0
    assert disc(lo) < target < disc(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if disc(mid) < target else (lo, mid)
    verts.append(apex(0.5 * (lo + hi)))
    e = len(verts) - 1
    tris = faces + [[e, a, b] for a, b in loop]
    return {
        "dim": 3,
        "vertices": verts,
        "simplices": {"1": loop, "2": tris},
        "k": 2,
        "boundary": {"degree": 1, "coeffs": [[0, 1], [1, 1], [2, 1]]},
    }


if __name__ == "__main__":
    write("four-corners.json", four_corners())
    write("cone-16gon.json", cone_polygon(16, [0.5, -0.75]))
    write("segment.json", segment())
    write("disconnected.json", disconnected())
    write("square-density.json", square_density(1))
    write("square-density-2.json", square_density(2))
    write("square-cycle.json", square_cycle())
    write("hollow-triangle.json", hollow_triangle())
    write("projective-plane.json", projective_plane())
