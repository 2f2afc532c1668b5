import logging
from dataclasses import dataclass, field

from algebra import (ONE, ZERO, Gf4Poly, LaurentPoly, RationalFn, content, gf4_content, parse_entry, poly_divmod,
                     poly_lcm, to_rational)
from errors import SingularMatrixError

logger = logging.getLogger('eaqcc-algebra')


def _coerce_entry(entry):
    if isinstance(entry, (LaurentPoly, RationalFn, Gf4Poly)):
        return entry
    return LaurentPoly.parse(entry) if isinstance(entry, str) else ONE * entry


class PolyMatrix:
    def __init__(self, rows, n_cols=None):
        self.rows = tuple(tuple(_coerce_entry(e) for e in row) for row in rows)
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise ValueError("PolyMatrix rows must have equal length")
        self.n_cols = widths.pop() if widths else (n_cols or 0)
        if any(isinstance(e, RationalFn) for row in self.rows for e in row):
            self.rows = tuple(tuple(to_rational(e) for e in row) for row in self.rows)
            self.ring = 'rational'
        else:
            self.ring = 'polynomial'

    @classmethod
    def zeros(cls, n_rows, n_cols):
        return cls([[ZERO] * n_cols for _ in range(n_rows)], n_cols)

    @classmethod
    def identity(cls, size):
        return cls([[ONE if i == j else ZERO for j in range(size)] for i in range(size)], size)

    @classmethod
    def diagonal(cls, entries, n_rows=None, n_cols=None):
        n_rows = n_rows if n_rows is not None else len(entries)
        n_cols = n_cols if n_cols is not None else len(entries)
        rows = [[ZERO] * n_cols for _ in range(n_rows)]
        for i, entry in enumerate(entries):
            rows[i][i] = entry
        return cls(rows, n_cols)

    @classmethod
    def from_strings(cls, rows):
        return cls([[parse_entry(text) for text in row] for row in rows])

    @property
    def n_rows(self):
        return len(self.rows)

    @property
    def shape(self):
        return self.n_rows, self.n_cols

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(row[j] for row in self.rows)

    def transpose(self):
        return PolyMatrix([self.col(j) for j in range(self.n_cols)], self.n_rows)

    def reverse(self):
        """Entrywise substitution D -> 1/D."""
        return PolyMatrix([[e.reverse() for e in row] for row in self.rows], self.n_cols)

    def adjoint(self):
        """M^T(1/D)."""
        return self.transpose().reverse()

    def __matmul__(self, other):
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        columns = [other.col(j) for j in range(other.n_cols)]
        rows = []
        for row in self.rows:
            out = []
            for column in columns:
                total = ZERO
                for a, b in zip(row, column):
                    if a and b:
                        total = total + a * b
                out.append(total)
            rows.append(out)
        return PolyMatrix(rows, other.n_cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.n_cols)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return not any(e for row in self.rows for e in row)

    def is_polynomial(self):
        return all(not isinstance(e, RationalFn) or e.is_polynomial() for row in self.rows for e in row)

    def to_polynomial(self):
        return PolyMatrix([[to_rational(e).as_poly() for e in row] for row in self.rows], self.n_cols)

    def simplified(self):
        if self.is_polynomial():
            return self.to_polynomial()
        return self

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def stack(self, other):
        if self.n_cols != other.n_cols and self.n_rows and other.n_rows:
            raise ValueError("stacked matrices need equal widths")
        return PolyMatrix(self.rows + other.rows, self.n_cols or other.n_cols)

    def rref(self):
        """Reduced row echelon form over GF(2)(D); returns the nonzero rows and pivot columns."""
        rows = [[to_rational(e) for e in row] for row in self.rows]
        pivots = []
        rank = 0
        for col in range(self.n_cols):
            pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            scale = rows[rank][col].inverse()
            rows[rank] = [e * scale if e else e for e in rows[rank]]
            for i in range(len(rows)):
                factor = rows[i][col]
                if i != rank and factor:
                    rows[i] = [a + factor * b if b else a for a, b in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
        return PolyMatrix(rows[:rank], self.n_cols), pivots

    def rank(self):
        return rank_rational(self)

    def inverse(self):
        """Gauss-Jordan inverse over GF(2)(D)."""
        if self.n_rows != self.n_cols:
            raise SingularMatrixError(f"cannot invert a {self.shape} matrix")
        size = self.n_rows
        augmented = PolyMatrix([list(row) + list(unit) for row, unit in
                                zip(self.rows, PolyMatrix.identity(size).rows)])
        reduced, pivots = augmented.rref()
        if pivots[:size] != list(range(size)):
            raise SingularMatrixError("matrix is singular over GF(2)(D)")
        return PolyMatrix([row[size:] for row in reduced.rows], size).simplified()

    def contains_rows_of(self, other):
        """Whether the row space of `other` lies in the row space of self over GF(2)(D)."""
        return rank_rational(self.stack(other)) == rank_rational(self)

    def __str__(self):
        return '\n'.join('[' + ', '.join(str(e) for e in row) + ']' for row in self.rows)

    def __repr__(self):
        return f"PolyMatrix({self.shape})"


def clear_denominators(row):
    """Multiply a rational row by the lcm of its denominators; the result has Laurent entries."""
    row = [to_rational(e) for e in row]
    multiple = ONE
    for entry in row:
        if entry:
            multiple = poly_lcm(multiple, entry.den)
    return [(entry.num * multiple.exact_div(entry.den)) if entry else ZERO for entry in row]


def _fraction_free_rank(rows, content_of):
    rows = [list(row) for row in rows if any(row)]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col]
            if factor:
                combined = [lead * a + factor * b for a, b in zip(rows[i], rows[rank])]
                divisor = content_of(combined)
                rows[i] = [e.exact_div(divisor) if e else e for e in combined]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_rational(matrix):
    """Rank over GF(2)(D) by fraction-free elimination on denominator-cleared rows."""
    rows = [clear_denominators(row) for row in matrix.rows]
    return _fraction_free_rank(rows, content)


def rank_gf4_rational(rows):
    """Rank over GF(4)(D) of a matrix of Gf4Poly entries."""
    return _fraction_free_rank([list(row) for row in rows], gf4_content)


@dataclass
class SmithDecomposition:
    A: PolyMatrix
    gamma: list
    B: PolyMatrix
    rank: int
    shape: tuple
    row_ops: list = field(default_factory=list)
    col_ops: list = field(default_factory=list)

    def gamma_matrix(self):
        return PolyMatrix.diagonal(self.gamma, *self.shape)

    def reconstruct(self):
        return self.A @ self.gamma_matrix() @ self.B

    def all_unit(self):
        """Every invariant factor is a monomial and the matrix has full row rank."""
        return self.rank == self.shape[0] and all(g.is_monomial() for g in self.gamma)

    def divisibility_chain(self):
        return all(not poly_divmod(b, a)[1] for a, b in zip(self.gamma, self.gamma[1:]))


def _span_key(entry, i, j):
    return entry.span, i, j


def smith_form(matrix):
    """Smith form over GF(2)[D, 1/D] with the elementary operation logs.

    Row operations are logged as ('swap', i, j), ('add', src, dst, f) meaning row_dst += f*row_src and
    ('scale', i, unit); column operations as ('swap', i, j) and ('add', src, dst, f) meaning
    col_dst += f*col_src. Applying the row log on the left and the column log on the right of the input
    gives the diagonal of invariant factors.
    """
    work = [list(row) for row in matrix.to_polynomial().rows] if matrix.ring == 'rational' else [
        list(row) for row in matrix.rows]
    m, n = matrix.shape
    row_ops, col_ops = [], []

    def row_swap(i, j):
        work[i], work[j] = work[j], work[i]
        row_ops.append(('swap', i, j))

    def col_swap(i, j):
        for row in work:
            row[i], row[j] = row[j], row[i]
        col_ops.append(('swap', i, j))

    def row_add(src, dst, f):
        work[dst] = [a + f * b for a, b in zip(work[dst], work[src])]
        row_ops.append(('add', src, dst, f))

    def col_add(src, dst, f):
        for row in work:
            row[dst] = row[dst] + f * row[src]
        col_ops.append(('add', src, dst, f))

    def row_scale(i, unit):
        work[i] = [unit * e for e in work[i]]
        row_ops.append(('scale', i, unit))

    rank = 0
    for t in range(min(m, n)):
        while True:
            candidates = [_span_key(work[i][j], i, j) for i in range(t, m) for j in range(t, n) if work[i][j]]
            if not candidates:
                break
            _, i, j = min(candidates)
            if i != t:
                row_swap(t, i)
            if j != t:
                col_swap(t, j)
            pivot_delay = work[t][t].delay
            if pivot_delay:
                row_scale(t, LaurentPoly.monomial(-pivot_delay))
            pivot = work[t][t]
            clean = True
            for i in range(t + 1, m):
                if work[i][t]:
                    quotient, remainder = poly_divmod(work[i][t], pivot)
                    row_add(t, i, quotient)
                    clean = clean and not remainder
            for j in range(t + 1, n):
                if work[t][j]:
                    quotient, remainder = poly_divmod(work[t][j], pivot)
                    col_add(t, j, quotient)
                    clean = clean and not remainder
            if not clean:
                continue
            offender = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                             if work[i][j] and poly_divmod(work[i][j], pivot)[1]), None)
            if offender is None:
                break
            row_add(offender, t, ONE)
        if not any(work[i][j] for i in range(t, m) for j in range(t, n)):
            break
        rank = t + 1
    gamma = [work[i][i] for i in range(rank)]

    a_rows = [list(row) for row in PolyMatrix.identity(m).rows]
    for op in row_ops:
        if op[0] == 'swap':
            _, i, j = op
            for row in a_rows:
                row[i], row[j] = row[j], row[i]
        elif op[0] == 'add':
            _, src, dst, f = op
            for row in a_rows:
                row[src] = row[src] + f * row[dst]
        else:
            _, i, unit = op
            inverse_unit = unit ** -1
            for row in a_rows:
                row[i] = row[i] * inverse_unit
    b_rows = [list(row) for row in PolyMatrix.identity(n).rows]
    for op in col_ops:
        if op[0] == 'swap':
            _, i, j = op
            b_rows[i], b_rows[j] = b_rows[j], b_rows[i]
        else:
            _, src, dst, f = op
            b_rows[src] = [a + f * b for a, b in zip(b_rows[src], b_rows[dst])]
    logger.debug(f"smith form {m}x{n}: rank {rank}, factors {[str(g) for g in gamma]}")
    return SmithDecomposition(PolyMatrix(a_rows, m), gamma, PolyMatrix(b_rows, n), rank, (m, n), row_ops, col_ops)


def apply_row_ops(rows, ops):
    """Replay a Smith row-operation log on a list of row vectors (any entry type)."""
    rows = [list(row) for row in rows]
    for op in ops:
        if op[0] == 'swap':
            _, i, j = op
            rows[i], rows[j] = rows[j], rows[i]
        elif op[0] == 'add':
            _, src, dst, f = op
            rows[dst] = [a + f * b for a, b in zip(rows[dst], rows[src])]
        else:
            _, i, unit = op
            rows[i] = [unit * e for e in rows[i]]
    return rows
