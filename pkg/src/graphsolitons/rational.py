"""Exact linear algebra over ``fractions.Fraction``.

Dense helpers (RREF, solve, inverse, leading-minor positivity, characteristic
polynomial) plus a sparse Gauss-Jordan nullspace solver used for the large,
very sparse Leibniz systems.  Everything here is pure stdlib and exact; no
floats enter or leave.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = "list[Fraction]"
Matrix = "list[list[Fraction]]"


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def fraction_str(x: Fraction) -> str:
    """Lowest-terms string: ``"5"`` or ``"-2/3"``."""
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def identity(n: int) -> list[list[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> list[list[Fraction]]:
    return [[ZERO] * cols for _ in range(rows)]


def mat_mul(a, b) -> list[list[Fraction]]:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j] != 0:
                    oi[j] += x * bt[j]
    return out


def mat_vec(a, v) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x != 0), ZERO) for row in a]


def transpose(a) -> list[list[Fraction]]:
    return [list(col) for col in zip(*a)] if a else []


def mat_eq_zero(a) -> bool:
    return all(x == 0 for row in a for x in row)


def rref(mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (new matrix, pivot column list)."""
    m = [[frac(x) for x in row] for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def solve_unique(a, b) -> list[Fraction]:
    """Solve the square system ``a x = b`` with a unique solution.

    Raises ValueError if the matrix is singular.
    """
    n = len(a)
    aug = [list(map(frac, row)) + [frac(bv)] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    if len(pivots) < n or pivots[-1] == n:
        raise ValueError("matrix is singular")
    return [red[i][n] for i in range(n)]


def inverse(a) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(map(frac, row)) + ident_row for row, ident_row in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def leading_minors_all_positive(a) -> bool:
    """True iff every leading principal minor of the *symmetric* matrix is > 0.

    Gaussian elimination without pivoting: the k-th leading minor is the
    product of the first k pivots, so a zero or negative pivot settles the
    question immediately.
    """
    n = len(a)
    m = [[frac(x) for x in row] for row in a]
    for k in range(n):
        piv = m[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / piv
                row_k = m[k]
                row_i = m[i]
                for j in range(k, n):
                    row_i[j] -= f * row_k[j]
    return True


def char_poly(a) -> list[Fraction]:
    """Characteristic polynomial of a square rational matrix.

    Faddeev-LeVerrier; returns coefficients highest degree first, so
    ``[1, c_{n-1}, ..., c_0]`` with ``p(t) = t^n + c_{n-1} t^{n-1} + ... + c_0``.
    """
    n = len(a)
    a = [[frac(x) for x in row] for row in a]
    coeffs = [ONE]
    m = identity(n)
    for k in range(1, n + 1):
        if k > 1:
            m = mat_mul(a, m)
            for i in range(n):
                m[i][i] += coeffs[-1]
        # trace of a @ m without forming the product
        tr = ZERO
        for i in range(n):
            tr += sum((a[i][j] * m[j][i] for j in range(n) if a[i][j] != 0), ZERO)
        coeffs.append(-tr / k)
    return coeffs


def sparse_nullspace(rows, ncols: int) -> list[dict[int, Fraction]]:
    """Nullspace basis of a sparse homogeneous system.

    ``rows`` is an iterable of ``{column: coefficient}`` dicts.  Returns one
    sparse vector per free column, ordered by free column index; each has a 1
    in its free column.  Deterministic: pivot rows are chosen by (size, id),
    pivot columns by (column fill, column).
    """
    work: dict[int, dict[int, Fraction]] = {}
    for idx, row in enumerate(rows):
        cleaned = {c: frac(v) for c, v in row.items() if v != 0}
        if cleaned:
            work[idx] = cleaned
    col_rows: dict[int, set[int]] = defaultdict(set)
    for rid, row in work.items():
        for c in row:
            col_rows[c].add(rid)

    pivots: dict[int, dict[int, Fraction]] = {}
    active = set(work)
    while active:
        rid = min(active, key=lambda i: (len(work[i]), i))
        active.discard(rid)
        row = work.pop(rid)
        for c in row:
            col_rows[c].discard(rid)
        pcol = min(row, key=lambda c: (len(col_rows[c]), c))
        pval = row[pcol]
        if pval != 1:
            row = {c: v / pval for c, v in row.items()}

        for other in list(col_rows.get(pcol, ())):
            orow = work[other]
            f = orow.pop(pcol)
            col_rows[pcol].discard(other)
            for c, v in row.items():
                if c == pcol:
                    continue
                nv = orow.get(c, ZERO) - f * v
                if nv == 0:
                    if c in orow:
                        del orow[c]
                        col_rows[c].discard(other)
                else:
                    if c not in orow:
                        col_rows[c].add(other)
                    orow[c] = nv
            if not orow:
                active.discard(other)
                del work[other]

        for prow in pivots.values():
            if pcol in prow:
                f = prow.pop(pcol)
                for c, v in row.items():
                    if c == pcol:
                        continue
                    nv = prow.get(c, ZERO) - f * v
                    if nv == 0:
                        prow.pop(c, None)
                    else:
                        prow[c] = nv
        pivots[pcol] = row

    basis = []
    for free_col in range(ncols):
        if free_col in pivots:
            continue
        vec = {free_col: ONE}
        for pcol, prow in pivots.items():
            coef = prow.get(free_col)
            if coef:
                vec[pcol] = -coef
        basis.append(vec)
    return basis


def sparse_dot(a: dict, b: dict) -> Fraction:
    if len(b) < len(a):
        a, b = b, a
    return sum((v * b[k] for k, v in a.items() if k in b), ZERO)


def lstsq_exact(columns, target: dict) -> tuple[list[Fraction], dict[int, Fraction]]:
    """Exact least squares: minimize ||target - sum x_i columns_i||_2.

    ``columns`` are sparse vectors (dicts); the normal equations are solved
    with free variables pinned to 0.  Returns (coefficients, residual vector).
    """
    d = len(columns)
    normal = [[sparse_dot(columns[i], columns[j]) for j in range(d)] for i in range(d)]
    rhs = [sparse_dot(col, target) for col in columns]
    aug = [normal[i] + [rhs[i]] for i in range(d)]
    red, pivots = rref(aug)
    coeffs = [ZERO] * d
    for row, pcol in zip(red, pivots):
        if pcol < d:
            coeffs[pcol] = row[d]
    residual = dict(target)
    for x, col in zip(coeffs, columns):
        if x == 0:
            continue
        for k, v in col.items():
            nv = residual.get(k, ZERO) - x * v
            if nv == 0:
                residual.pop(k, None)
            else:
                residual[k] = nv
    return coeffs, residual
