"""Polynomial maps and polynomial matrices.

Covers the symbolic machinery the condition checkers sit on: Jacobians,
composition and linear conjugation, Hadamard-power maps, exact determinant
and rank over the function field, nilpotency, homogenization and the
forward-substitution inverse for strictly triangular maps.
"""

from __future__ import annotations

from . import linalg
from .exactfield import Field
from .multipoly import MultiPoly, divide_exact

__all__ = [
    "PolyMap",
    "PolyMatrix",
    "jacobian",
    "hadamard_power_map",
    "map_compose",
    "conjugate",
    "matrix_det",
    "matrix_rank",
    "matrix_is_nilpotent",
    "homogenize",
    "invert_triangular",
]


class PolyMap:
    """A tuple of polynomials sharing one ring, viewed as a map K^n -> K^m."""

    __slots__ = ("field", "nvars", "components")

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise ValueError("a map needs at least one component")
        field = components[0].field
        nvars = components[0].nvars
        for comp in components:
            if comp.field != field or comp.nvars != nvars:
                raise ValueError("components live in different rings")
        self.field = field
        self.nvars = nvars
        self.components = components

    @classmethod
    def identity(cls, field: Field, n: int) -> "PolyMap":
        return cls([MultiPoly.variable(field, n, i) for i in range(n)])

    @classmethod
    def zero(cls, field: Field, n_out: int, nvars: int) -> "PolyMap":
        return cls([MultiPoly.zero(field, nvars)] * n_out)

    @property
    def n_out(self) -> int:
        return len(self.components)

    @property
    def is_square(self) -> bool:
        return self.n_out == self.nvars

    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def vanishes_at_origin(self) -> bool:
        return all(c.constant_term().is_zero() for c in self.components)

    def evaluate(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def __add__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        if other.n_out != self.n_out:
            raise ValueError("maps have different component counts")
        return PolyMap([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        if other.n_out != self.n_out:
            raise ValueError("maps have different component counts")
        return PolyMap([a - b for a, b in zip(self.components, other.components)])

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.components == other.components)

    def __repr__(self):
        return "PolyMap(" + ", ".join(repr(c) for c in self.components) + ")"


def nonlinear_part(map_: PolyMap) -> PolyMap:
    """H for a square map written as F = x + H."""
    if not map_.is_square:
        raise ValueError("F = x + H requires a square map")
    return map_ - PolyMap.identity(map_.field, map_.nvars)


def plus_identity(map_: PolyMap) -> PolyMap:
    """x + H for a square nonlinear part H."""
    if not map_.is_square:
        raise ValueError("x + H requires a square map")
    return PolyMap.identity(map_.field, map_.nvars) + map_


class PolyMatrix:
    """A rectangular grid of polynomials over one shared ring."""

    __slots__ = ("field", "nvars", "rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix needs at least one entry")
        field = entries[0][0].field
        nvars = entries[0][0].nvars
        cols = len(entries[0])
        for row in entries:
            if len(row) != cols:
                raise ValueError("matrix rows have uneven lengths")
            for e in row:
                if e.field != field or e.nvars != nvars:
                    raise ValueError("entries live in different rings")
        self.field = field
        self.nvars = nvars
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_scalars(cls, field: Field, nvars: int, grid) -> "PolyMatrix":
        return cls([[MultiPoly.constant(field, nvars, v) for v in row] for row in grid])

    @classmethod
    def identity(cls, field: Field, nvars: int, n: int) -> "PolyMatrix":
        return cls.from_scalars(field, nvars, linalg.identity_grid(field, n))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.entries for e in row)

    def constant_grid(self):
        if not self.is_constant():
            raise ValueError("matrix has non-constant entries")
        return [[e.constant_value() for e in row] for row in self.entries]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)])

    def submatrix(self, row_idx, col_idx) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def diagonal(self):
        if not self.is_square:
            raise ValueError("diagonal of a non-square matrix")
        return [self.entries[i][i] for i in range(self.rows)]

    def is_lower_triangular(self, strict: bool = False) -> bool:
        for i in range(self.rows):
            for j in range(i if strict else i + 1, self.cols):
                if not self.entries[i][j].is_zero():
                    return False
        return True

    def scale(self, factor) -> "PolyMatrix":
        return PolyMatrix([[e * factor for e in row] for row in self.entries])

    def __add__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")
        return PolyMatrix([[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self + other.scale(-1)

    def __matmul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("matrix shapes do not compose")
        zero = MultiPoly.zero(self.field, self.nvars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def power(self, k: int) -> "PolyMatrix":
        if not self.is_square:
            raise ValueError("powers of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = PolyMatrix.identity(self.field, self.nvars, self.rows)
        for _ in range(k):
            if result.is_zero():
                break
            result = result @ self
        return result

    def substitute(self, assignment, nvars: int | None = None) -> "PolyMatrix":
        return PolyMatrix([[e.substitute(assignment, nvars=nvars) for e in row]
                           for row in self.entries])

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries)
        return f"PolyMatrix[{body}]"


def jacobian(map_: PolyMap) -> PolyMatrix:
    """Row i holds the partial derivatives of component i."""
    return PolyMatrix([[comp.partial_derivative(j) for j in range(map_.nvars)]
                       for comp in map_.components])


def hadamard_power_map(matrix: PolyMatrix, d: int) -> PolyMap:
    """The map whose i-th component is (A_i x)^d for the rows A_i of A."""
    if not matrix.is_square:
        raise ValueError("Hadamard-power maps need a square matrix")
    if d < 1:
        raise ValueError("power must be at least 1")
    grid = matrix.constant_grid()
    n = matrix.rows
    field = matrix.field
    comps = []
    for row in grid:
        form = MultiPoly.zero(field, n)
        for j, a in enumerate(row):
            if not a.is_zero():
                form = form + MultiPoly.variable(field, n, j) * a
        comps.append(form ** d)
    return PolyMap(comps)


def map_compose(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """outer after inner, by exact substitution."""
    if inner.n_out != outer.nvars:
        raise ValueError("component count of the inner map must match")
    if inner.field != outer.field:
        raise ValueError("maps live over different fields")
    comps = [c.substitute(inner.components, nvars=inner.nvars) for c in outer.components]
    return PolyMap(comps)


def conjugate(map_: PolyMap, t_matrix: PolyMatrix) -> PolyMap:
    """T^{-1} F(Tx) for a constant invertible T."""
    if not t_matrix.is_square or t_matrix.rows != map_.nvars or map_.n_out != map_.nvars:
        raise ValueError("conjugation needs matching square shapes")
    grid = t_matrix.constant_grid()
    inv = linalg.invert(grid, map_.field)
    if inv is None:
        raise ValueError("conjugating matrix is singular")
    field, n = map_.field, map_.nvars
    linear = []
    for i in range(n):
        acc = MultiPoly.zero(field, n)
        for j in range(n):
            if not grid[i][j].is_zero():
                acc = acc + MultiPoly.variable(field, n, j) * grid[i][j]
        linear.append(acc)
    images = [c.substitute(linear) for c in map_.components]
    comps = []
    for i in range(n):
        acc = MultiPoly.zero(field, n)
        for j in range(n):
            if not inv[i][j].is_zero():
                acc = acc + images[j] * inv[i][j]
        comps.append(acc)
    return PolyMap(comps)


def _grid(matrix: PolyMatrix):
    return [list(row) for row in matrix.entries]


def _det_cofactor(grid, field, nvars):
    n = len(grid)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    # expand along the row or column with the most zeros
    best_row, best_row_zeros = 0, -1
    for i in range(n):
        z = sum(1 for e in grid[i] if e.is_zero())
        if z > best_row_zeros:
            best_row, best_row_zeros = i, z
    best_col, best_col_zeros = 0, -1
    for j in range(n):
        z = sum(1 for i in range(n) if grid[i][j].is_zero())
        if z > best_col_zeros:
            best_col, best_col_zeros = j, z
    total = MultiPoly.zero(field, nvars)
    if best_row_zeros >= best_col_zeros:
        i = best_row
        for j in range(n):
            e = grid[i][j]
            if e.is_zero():
                continue
            minor = [[grid[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            term = e * _det_cofactor(minor, field, nvars)
            total = total + term if (i + j) % 2 == 0 else total - term
    else:
        j = best_col
        for i in range(n):
            e = grid[i][j]
            if e.is_zero():
                continue
            minor = [[grid[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            term = e * _det_cofactor(minor, field, nvars)
            total = total + term if (i + j) % 2 == 0 else total - term
    return total


def _pick_pivot(grid, col, start):
    """Row index of a minimal-degree nonzero entry in the column; ties by row."""
    best = None
    best_deg = None
    for i in range(start, len(grid)):
        e = grid[i][col]
        if e.is_zero():
            continue
        deg = e.degree()
        if best is None or deg < best_deg:
            best, best_deg = i, deg
    return best


def _det_bareiss(grid, field, nvars):
    n = len(grid)
    sign = 1
    prev = None
    for k in range(n - 1):
        pivot_row = _pick_pivot(grid, k, k)
        if pivot_row is None:
            return MultiPoly.zero(field, nvars)
        if pivot_row != k:
            grid[k], grid[pivot_row] = grid[pivot_row], grid[k]
            sign = -sign
        pivot = grid[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * grid[i][j] - grid[i][k] * grid[k][j]
                if prev is not None:
                    num = divide_exact(num, prev)
                    if num is None:
                        raise ArithmeticError("fraction-free elimination lost exact divisibility")
                grid[i][j] = num
            grid[i][k] = MultiPoly.zero(field, nvars)
        prev = pivot
    det = grid[n - 1][n - 1]
    return det if sign == 1 else -det


def matrix_det(matrix: PolyMatrix) -> MultiPoly:
    """Exact determinant; cofactor expansion up to 4x4, Bareiss above."""
    if not matrix.is_square:
        raise ValueError("determinant of a non-square matrix")
    grid = _grid(matrix)
    if matrix.rows <= 4:
        return _det_cofactor(grid, matrix.field, matrix.nvars)
    return _det_bareiss(grid, matrix.field, matrix.nvars)


def matrix_rank(matrix: PolyMatrix) -> int:
    """Rank over the fraction field K(x), by fraction-free elimination.

    Row updates are cross-multiplications, which only rescale rows by
    nonzero polynomials; entries are reduced by the previous pivot whenever
    that division is exact, to keep the growth of intermediate entries down.
    """
    grid = _grid(matrix)
    nrows, ncols = matrix.rows, matrix.cols
    zero = MultiPoly.zero(matrix.field, matrix.nvars)
    r = 0
    prev = None
    for c in range(ncols):
        pivot_row = _pick_pivot(grid, c, r)
        if pivot_row is None:
            continue
        grid[r], grid[pivot_row] = grid[pivot_row], grid[r]
        pivot = grid[r][c]
        for i in range(r + 1, nrows):
            if grid[i][c].is_zero():
                continue
            factor = grid[i][c]
            new_row = [pivot * a - factor * b for a, b in zip(grid[i], grid[r])]
            if prev is not None:
                reduced = [divide_exact(e, prev) for e in new_row]
                if all(e is not None for e in reduced):
                    new_row = reduced
            new_row[c] = zero
            grid[i] = new_row
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r


def matrix_is_nilpotent(matrix: PolyMatrix) -> bool:
    """True iff M^k = 0 exactly for k = size (a sufficient bound)."""
    if not matrix.is_square:
        raise ValueError("nilpotency of a non-square matrix")
    power = matrix
    for _ in range(matrix.rows - 1):
        if power.is_zero():
            return True
        power = power @ matrix
    return power.is_zero()


def homogenize(map_: PolyMap, d: int) -> PolyMap:
    """Degree-d homogenization with one extra variable and a zero last component.

    Each term of total degree m picks up the factor x_{n+1}^(d-m), so the
    result is a square (n+1)-map, homogeneous of degree d.
    """
    if map_.degree() > d:
        raise ValueError("map degree exceeds the homogenization degree")
    field = map_.field
    n = map_.nvars
    comps = []
    for comp in map_.components:
        terms = {}
        for exps, coeff in comp.terms.items():
            terms[exps + (d - sum(exps),)] = coeff
        comps.append(MultiPoly(field, n + 1, terms))
    comps.append(MultiPoly.zero(field, n + 1))
    return PolyMap(comps)


def invert_triangular(map_: PolyMap) -> PolyMap:
    """Exact inverse of F = x + H with strictly lower triangular JH.

    Forward substitution: G_i = x_i - H_i(G_1, ..., G_{i-1}), which works
    because H_i only involves earlier variables.
    """
    h = nonlinear_part(map_)
    if not jacobian(h).is_lower_triangular(strict=True):
        raise ValueError("nonlinear part has no strictly lower triangular Jacobian")
    field, n = map_.field, map_.nvars
    xs = [MultiPoly.variable(field, n, i) for i in range(n)]
    out = []
    for i in range(n):
        assignment = out[:i] + xs[i:]
        out.append(xs[i] - h.components[i].substitute(assignment))
    return PolyMap(out)
