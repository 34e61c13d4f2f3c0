"""Sparse-row elimination for the structured systems behind Hom spaces."""

from __future__ import annotations


def _axpy(F, row: dict, coef, other: dict) -> None:
    # row -= coef * other
    for v, c in other.items():
        new = F.sub(row.get(v, F.zero), F.mul(coef, c))
        if F.is_zero(new):
            row.pop(v, None)
        else:
            row[v] = new


def echelon(F, equations):
    """Echelonize sparse rows (dicts var -> raw coefficient).

    Each stored row is normalized so its smallest variable (the pivot) has
    coefficient one.  Returns ``{pivot: row}``; ``None`` in place of a row
    signals the inconsistent equation 0 = 1 when a constant column is used.
    """
    pivots: dict[int, dict] = {}
    for eq in equations:
        row = {v: c for v, c in eq.items() if not F.is_zero(c)}
        while row:
            hits = [v for v in row if v in pivots]
            if not hits:
                break
            v = min(hits)
            _axpy(F, row, row[v], pivots[v])
        if not row:
            continue
        p = min(row)
        inv = F.inv(row[p])
        if row[p] != F.one:
            row = {v: F.mul(inv, c) for v, c in row.items()}
        pivots[p] = row
    return pivots


def nullspace_vectors(F, equations, nvars: int) -> list[list]:
    """Basis of the solution space of the homogeneous sparse system."""
    pivots = echelon(F, equations)
    free = [v for v in range(nvars) if v not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        x = {f: F.one}
        for p in order:
            acc = F.zero
            for v, c in pivots[p].items():
                if v != p and v in x:
                    acc = F.sub(acc, F.mul(c, x[v]))
            if not F.is_zero(acc):
                x[p] = acc
        vec = [F.zero] * nvars
        for v, c in x.items():
            vec[v] = c
        basis.append(vec)
    return basis


def solve_affine(F, equations, rhs, nvars: int):
    """Particular solution of A x = b for sparse rows and right-hand side, or None."""
    const = nvars
    rows = []
    for eq, b in zip(equations, rhs):
        row = dict(eq)
        if not F.is_zero(b):
            row[const] = F.neg(b)
        rows.append(row)
    pivots = echelon(F, rows)
    if const in pivots:
        return None
    x: dict[int, object] = {}
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        acc = F.neg(row.get(const, F.zero))
        for v, c in row.items():
            if v != p and v != const and v in x:
                acc = F.sub(acc, F.mul(c, x[v]))
        if not F.is_zero(acc):
            x[p] = acc
    vec = [F.zero] * nvars
    for v, c in x.items():
        vec[v] = c
    return vec
