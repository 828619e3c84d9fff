"""Integer row reduction: echelon form, left kernels and Smith normal form.

All matrices are lists of row lists of Python ints.  Ties in pivot choice are
broken by position so results are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def scale_to_int(row):
    """Multiply a rational row by the lcm of its denominators."""
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * den) for x in row]


def echelon(rows, ncols):
    """Row echelon form over Z of the row span; zero rows are dropped.

    Pivots are positive and strictly increase in column index.
    """
    work = [list(r) for r in rows if any(r)]
    out = []
    for c in range(ncols):
        while True:
            live = [r for r in work if r[c] != 0]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda r: abs(r[c]))
            pc = piv[c]
            for r in live:
                if r is piv:
                    continue
                q = r[c] // pc
                if q:
                    for k in range(c, ncols):
                        r[k] -= q * piv[k]
            work = [r for r in work if any(r)]
        live = [r for r in work if r[c] != 0]
        if live:
            piv = live[0]
            work.remove(piv)
            if piv[c] < 0:
                piv = [-x for x in piv]
            out.append(piv)
    return out


def left_kernel(rows, ncols):
    """Z-basis of {x : x @ rows = 0}; ``rows`` is k x ncols."""
    k = len(rows)
    aug = [list(r) + [1 if j == i else 0 for j in range(k)] for i, r in enumerate(rows)]
    ech = echelon(aug, ncols + k)
    return [r[ncols:] for r in ech if not any(r[:ncols])]


def _pick_pivot(a, t, nr, nc):
    best = None
    for i in range(t, nr):
        row = a[i]
        for j in range(t, nc):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return best


def smith(rows, ncols):
    """Smith normal form of the k x n integer matrix ``rows``.

    Returns ``(diag, V, Vinv)`` with ``U @ A @ V = D`` for some unimodular U,
    ``diag`` the non-zero diagonal entries (positive, each dividing the next)
    and V, Vinv inverse n x n integer matrices.
    """
    a = [list(r) for r in rows]
    nr, nc = len(a), ncols
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]
    vinv = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_cols(x, y):
        if x == y:
            return
        for row in a:
            row[x], row[y] = row[y], row[x]
        for row in v:
            row[x], row[y] = row[y], row[x]
        vinv[x], vinv[y] = vinv[y], vinv[x]

    def col_sub(j, t, q):
        # column j -= q * column t
        for row in a:
            row[j] -= q * row[t]
        for row in v:
            row[j] -= q * row[t]
        rj, rt = vinv[j], vinv[t]
        for k in range(nc):
            rt[k] += q * rj[k]

    diag = []
    t = 0
    while t < min(nr, nc):
        best = _pick_pivot(a, t, nr, nc)
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for k in range(t, nc):
                        ri[k] -= q * rt[k]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    col_sub(j, t, q)
                if a[t][j]:
                    dirty = True
            if dirty:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(a[i][t]), 0, i) for i in range(t + 1, nr) if a[i][t]]
                cands += [(abs(a[t][j]), 1, j) for j in range(t + 1, nc) if a[t][j]]
                _, kind, idx = min(cands)
                if kind == 0:
                    a[t], a[idx] = a[idx], a[t]
                else:
                    swap_cols(t, idx)
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for k in range(t, nc):
                rt[k] += rb[k]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        diag.append(a[t][t])
        t += 1
    return diag, v, vinv
