"""Exact linear algebra over the integers.

Everything in this module works on plain Python ints (arbitrary precision;
intermediate Smith normal form entries can blow up even for small inputs)
and on matrices represented as lists/tuples of rows.  Rows index the target,
columns the source, everywhere in this package.

The two workhorses are `smith_normal_form` and `column_hnf`.  Smith normal
form drives every solvability / kernel / cokernel decision; the column
Hermite form provides canonical lattice bases so that sublattices of Z^n can
be compared and queried for membership.
"""

from __future__ import annotations

from typing import Iterable, Sequence

IntMatrix = Sequence[Sequence[int]]


def dims(m: IntMatrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def copy(m: IntMatrix) -> list[list[int]]:
    return [list(row) for row in m]


def freeze(m: IntMatrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in m)


def transpose(m: IntMatrix) -> list[list[int]]:
    r, c = dims(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def matmul(a: IntMatrix, b: IntMatrix) -> list[list[int]]:
    ra, ca = dims(a)
    rb, cb = dims(b)
    if ca != rb:
        raise ValueError(f"matmul shape mismatch: {ra}x{ca} times {rb}x{cb}")
    out = zeros(ra, cb)
    for i in range(ra):
        arow = a[i]
        orow = out[i]
        for k in range(ca):
            aik = arow[k]
            if aik:
                brow = b[k]
                for j in range(cb):
                    orow[j] += aik * brow[j]
    return out


def matadd(a: IntMatrix, b: IntMatrix) -> list[list[int]]:
    if dims(a) != dims(b):
        raise ValueError("matadd shape mismatch")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matneg(a: IntMatrix) -> list[list[int]]:
    return [[-x for x in row] for row in a]


def matvec(m: IntMatrix, v: Sequence[int]) -> list[int]:
    if m and len(v) != len(m[0]):
        raise ValueError("matvec shape mismatch")
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n, c = dims(m)
    if n != c:
        raise ValueError("det requires a square matrix")
    if n == 0:
        return 1
    a = copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(
    m: IntMatrix,
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*m*V = D in Smith normal form.

    U and V are unimodular, D is diagonal with non-negative entries
    satisfying d1 | d2 | ...  Pivots are chosen as the smallest non-zero
    absolute value (ties broken by position) so the output is deterministic.
    """
    nrows, ncols = dims(m)
    a = copy(m)
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst: int, src: int, q: int) -> None:
        arow, srow = a[dst], a[src]
        for c in range(ncols):
            arow[c] += q * srow[c]
        urow, usrow = u[dst], u[src]
        for c in range(nrows):
            urow[c] += q * usrow[c]

    def addmul_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for s in range(min(nrows, ncols)):
        while True:
            pivot = None
            best = 0
            for i in range(s, nrows):
                arow = a[i]
                for j in range(s, ncols):
                    val = arow[j]
                    if val and (pivot is None or abs(val) < best):
                        pivot = (i, j)
                        best = abs(val)
                        if best == 1:
                            break
                if best == 1 and pivot is not None:
                    break
            if pivot is None:
                return u, a, v
            if pivot[0] != s:
                swap_rows(s, pivot[0])
            if pivot[1] != s:
                swap_cols(s, pivot[1])
            if a[s][s] < 0:
                negate_row(s)
            p = a[s][s]
            clean = True
            for i in range(s + 1, nrows):
                if a[i][s]:
                    addmul_row(i, s, -(a[i][s] // p))
                    if a[i][s]:
                        clean = False
            for j in range(s + 1, ncols):
                if a[s][j]:
                    addmul_col(j, s, -(a[s][j] // p))
                    if a[s][j]:
                        clean = False
            if not clean:
                continue
            offender = None
            for i in range(s + 1, nrows):
                arow = a[i]
                for j in range(s + 1, ncols):
                    if arow[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(s, offender, 1)
    return u, a, v


def snf_diagonal(m: IntMatrix) -> list[int]:
    """Invariant factors of m (diagonal of its Smith form), zeros included."""
    _, d, _ = smith_normal_form(m)
    n = min(dims(m))
    return [d[i][i] for i in range(n)]


def rank_of_diagonal(d: IntMatrix) -> int:
    n = min(dims(d))
    return sum(1 for i in range(n) if d[i][i] != 0)


def kernel_basis(m: IntMatrix) -> list[list[int]]:
    """Basis vectors (as column vectors) of {x : m x = 0} over Z."""
    _, d, v = smith_normal_form(m)
    ncols = dims(m)[1]
    r = rank_of_diagonal(d)
    return [[v[i][j] for i in range(ncols)] for j in range(r, ncols)]


def solve_exact(m: IntMatrix, target: Sequence[int]) -> list[int] | None:
    """One integer solution of m x = target, or None.

    The solution is the deterministic minimal back-substitution: free
    coordinates of the Smith form are set to zero.
    """
    nrows, ncols = dims(m)
    if len(target) != nrows:
        raise ValueError("solve_exact shape mismatch")
    u, d, v = smith_normal_form(m)
    c = matvec(u, target)
    r = rank_of_diagonal(d)
    z = [0] * ncols
    for i in range(min(nrows, ncols)):
        di = d[i][i]
        if di:
            if c[i] % di:
                return None
            z[i] = c[i] // di
    for i in range(r, nrows):
        if c[i]:
            return None
    return matvec(v, z)


def solve_congruences(
    m: IntMatrix, target: Sequence[int], moduli: Sequence[int],
    ncols: int | None = None,
) -> list[int] | None:
    """Solve m x = target where row r is read modulo moduli[r].

    A modulus of 0 means exact equality over Z.  Returns one solution in the
    x variables or None.  ncols disambiguates the variable count when the
    system has no rows.
    """
    nrows = len(m)
    if ncols is None:
        ncols = dims(m)[1]
    if len(moduli) != nrows:
        raise ValueError("one modulus per row required")
    if nrows == 0:
        return [0] * ncols
    slack_cols = [r for r in range(nrows) if moduli[r] > 0]
    aug = [list(m[r]) + [moduli[r] if c == r else 0 for c in slack_cols]
           for r in range(nrows)]
    sol = solve_exact(aug, target)
    if sol is None:
        return None
    return sol[:ncols]


def congruence_kernel(
    m: IntMatrix, moduli: Sequence[int], ncols: int | None = None
) -> list[list[int]]:
    """Basis of the lattice {x : m x = 0 modulo row-wise moduli}.

    The result spans every solution of the homogeneous system, projected to
    the x variables.  ncols disambiguates the variable count when the system
    has no rows (in which case every x is a solution).
    """
    nrows = len(m)
    if ncols is None:
        ncols = dims(m)[1]
    if len(moduli) != nrows:
        raise ValueError("one modulus per row required")
    if nrows == 0:
        return identity(ncols)
    slack_cols = [r for r in range(nrows) if moduli[r] > 0]
    aug = [list(m[r]) + [moduli[r] if c == r else 0 for c in slack_cols]
           for r in range(nrows)]
    ker = kernel_basis(aug)
    return [vec[:ncols] for vec in ker]


def column_hnf(columns: Iterable[Sequence[int]], nrows: int) -> list[list[int]]:
    """Canonical column Hermite normal form of the lattice spanned by columns.

    Returns the list of pivot columns (each of length nrows) in pivot-row
    order.  Pivots are positive and entries to the right of a pivot, in the
    pivot row, are reduced into [0, pivot).  Two generating sets span the same
    lattice iff their HNFs are equal.
    """
    work = [list(c) for c in columns if any(c)]
    result: list[list[int]] = []
    for r in range(nrows):
        active = [c for c in work if c[r] != 0]
        if not active:
            continue
        rest = [c for c in work if c[r] == 0]
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[r]))
            base = active[0]
            new_active = [base]
            for c in active[1:]:
                q = c[r] // base[r]
                reduced = [x - q * y for x, y in zip(c, base)]
                if reduced[r]:
                    new_active.append(reduced)
                elif any(reduced):
                    rest.append(reduced)
            if len(new_active) == 1:
                active = new_active
                break
            active = new_active
        pivot = active[0]
        if pivot[r] < 0:
            pivot = [-x for x in pivot]
        for prev in result:
            if prev[r]:
                q = prev[r] // pivot[r]
                if q:
                    for k in range(nrows):
                        prev[k] -= q * pivot[k]
        result.append(pivot)
        work = rest
    return result


class Lattice:
    """A sublattice of Z^n held in canonical column HNF."""

    __slots__ = ("nrows", "basis", "_pivot_rows")

    def __init__(self, generators: Iterable[Sequence[int]], nrows: int):
        self.nrows = nrows
        self.basis = column_hnf(generators, nrows)
        self._pivot_rows = []
        for col in self.basis:
            for r in range(nrows):
                if col[r]:
                    self._pivot_rows.append(r)
                    break

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for col, r in zip(self.basis, self._pivot_rows):
            if v[r]:
                q, rem = divmod(v[r], col[r])
                if rem:
                    return False
                for k in range(r, self.nrows):
                    v[k] -= q * col[k]
        return not any(v)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return freeze(self.basis)

    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.nrows, self.key()))
