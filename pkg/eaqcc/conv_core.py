"""Convolutional check matrices: shifted products, Omega(D), expansion and the polynomial Gram-Schmidt procedure."""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction

from algebra import ONE, ZERO, Gf4Poly, LaurentPoly, simplify, to_rational
from config import DEFAULT_L_MAX
from errors import ExpansionLimitError, FrameMismatchError, ParseError, SingularMatrixError
from pauli import ConvGenerator, shifted_product
from polymatrix import PolyMatrix, clear_denominators, rank_gf4_rational, rank_rational

logger = logging.getLogger('eaqcc-gramschmidt')

_HEADER = re.compile(r'^frame\s+n\s*=\s*(\d+)$')


class ConvCheckMatrix:
    """H(D) = [Z(D) | X(D)], one ConvGenerator per row, all sharing the frame size n."""

    def __init__(self, gens, n=None):
        self.gens = [g if isinstance(g, ConvGenerator) else ConvGenerator.parse(g) for g in gens]
        sizes = {g.n for g in self.gens}
        if len(sizes) > 1 or (n is not None and sizes and sizes != {n}):
            raise FrameMismatchError(f"generators have frame sizes {sorted(sizes)}, expected {n}")
        self.n = sizes.pop() if sizes else (n or 0)

    @classmethod
    def from_matrices(cls, Z, X):
        if Z.shape != X.shape:
            raise FrameMismatchError(f"Z(D) is {Z.shape} but X(D) is {X.shape}")
        return cls([ConvGenerator(z, x) for z, x in zip(Z.rows, X.rows)], Z.n_cols)

    @classmethod
    def parse(cls, text):
        n, rows = None, []
        for line in text.splitlines():
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            header = _HEADER.match(line)
            if header:
                n = int(header.group(1))
                continue
            rows.append(ConvGenerator.parse(line))
        if n is None:
            raise ParseError("check matrix has no 'frame n=<n>' header")
        for row in rows:
            if row.n != n:
                raise ParseError(f"generator '{row}' does not have {n} entries per side")
        return cls(rows, n)

    def to_text(self):
        return '\n'.join([f"frame n={self.n}"] + [str(g) for g in self.gens]) + '\n'

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i):
        return self.gens[i]

    def __eq__(self, other):
        if not isinstance(other, ConvCheckMatrix):
            return NotImplemented
        return self.n == other.n and self.gens == other.gens

    @property
    def ring(self):
        return 'polynomial' if all(g.is_polynomial() for g in self.gens) else 'rational'

    @property
    def Z(self):
        return PolyMatrix([g.z for g in self.gens], self.n)

    @property
    def X(self):
        return PolyMatrix([g.x for g in self.gens], self.n)

    def as_matrix(self):
        return PolyMatrix([g.z + g.x for g in self.gens], 2 * self.n)

    def rank(self):
        return rank_rational(self.as_matrix())

    def restrict(self, columns):
        return ConvCheckMatrix([g.restrict(columns) for g in self.gens], len(columns))

    def row_transform(self, R):
        """R(D) H(D) for a rational row-operation matrix."""
        product = R @ self.as_matrix()
        return ConvCheckMatrix([ConvGenerator(row[:self.n], row[self.n:]) for row in product.rows], self.n)

    def finite(self):
        """Each row multiplied by the lcm of its denominators."""
        gens = []
        for g in self.gens:
            row = clear_denominators(g.entries())
            gens.append(ConvGenerator(row[:self.n], row[self.n:]))
        return ConvCheckMatrix(gens, self.n)

    def paulis(self):
        return [g.pauli_text() for g in self.gens]

    def __str__(self):
        return '\n'.join(str(g) for g in self.gens)


def shifted_omega(H):
    """[Omega(D)]_ij = (h_i . h_j)(D)."""
    return PolyMatrix([[simplify(shifted_product(u, v)) for v in H.gens] for u in H.gens], len(H))


def transform_omega(omega, R):
    """R(D) Omega(D) R^T(1/D)."""
    if R.n_rows != R.n_cols or rank_rational(R) < R.n_rows:
        raise SingularMatrixError("row-operation matrix must be square and invertible over GF(2)(D)")
    return (R @ omega @ R.adjoint()).simplified()


def _expand_entry(p, l, row_block, col_block):
    exponents = [(s + row_block - col_block) // l for s in p.terms if (s - (col_block - row_block)) % l == 0]
    return LaurentPoly(exponents)


def expand_check(H, l):
    """Regroup l consecutive frames into one: l * rows generators on frames of l * n qubits."""
    if l < 1:
        raise ValueError("expansion factor must be at least 1")
    rows_per_block, n = len(H), H.n
    gens = []
    for p in range(l):
        for r in range(rows_per_block):
            g = H.gens[r]
            z = [_expand_entry(g.z[c], l, p, q) for q in range(l) for c in range(n)]
            x = [_expand_entry(g.x[c], l, p, q) for q in range(l) for c in range(n)]
            gens.append(ConvGenerator(z, x))
    return ConvCheckMatrix(gens, l * n)


def expand_omega(omega, l, rows_per_block=None):
    if l < 1:
        raise ValueError("expansion factor must be at least 1")
    size = rows_per_block if rows_per_block is not None else omega.n_rows
    rows = []
    for p in range(l):
        for i in range(size):
            rows.append([_expand_entry(omega[i, j], l, p, q) for q in range(l) for j in range(size)])
    return PolyMatrix(rows, l * size)


@dataclass
class ConvDecomposition:
    c: int
    a: int
    l: int
    expanded: ConvCheckMatrix
    reordered: ConvCheckMatrix
    finite: ConvCheckMatrix
    R: PolyMatrix
    pairs: list = field(default_factory=list)
    isotropic: list = field(default_factory=list)
    log: list = field(default_factory=list)

    @property
    def n(self):
        return self.expanded.n


class _Row:
    __slots__ = ('gen', 'combo', 'label')

    def __init__(self, gen, combo, label):
        self.gen, self.combo, self.label = gen, combo, label

    def add(self, other, f):
        self.gen = self.gen + other.gen.scale(f)
        self.combo = [a + f * b for a, b in zip(self.combo, other.combo)]

    def scale(self, f):
        self.gen = self.gen.scale(f)
        self.combo = [f * a for a in self.combo]


def _product(u, v):
    return simplify(shifted_product(u.gen, v.gen))


def _gram_schmidt(H):
    m = len(H)
    rows = [_Row(g, [to_rational(ONE if i == j else ZERO) for j in range(m)], i) for i, g in enumerate(H.gens)]
    pairs, isotropic, log = [], [], []
    while rows:
        products = [[_product(u, v) for v in rows] for u in rows]
        step = next((i for i in range(len(rows)) if not any(products[i])), None)
        if step is not None:
            row = rows.pop(step)
            isotropic.append(row)
            log.append(('isotropic', row.label))
            continue
        chosen = None
        for i in range(len(rows)):
            if products[i][i]:
                continue
            j = next((j for j in range(len(rows)) if j != i and not products[j][j]
                      and products[i][j] and products[i][j].is_monomial()), None)
            if j is not None:
                chosen = (i, j, LaurentPoly.monomial(to_rational(products[i][j]).num.delay))
                break
        if chosen is None:
            for i in range(len(rows)):
                if products[i][i]:
                    continue
                j = next((j for j in range(len(rows)) if j != i and not products[j][j] and products[i][j]), None)
                if j is not None:
                    chosen = (i, j, to_rational(products[i][j]).reverse().inverse())
                    break
        if chosen is None:
            return None
        i, j, factor = chosen
        first, second = rows[i], rows[j]
        second.scale(factor)
        log.append(('scale', second.label, str(factor)))
        log.append(('pair', first.label, second.label))
        rows = [row for k, row in enumerate(rows) if k not in (i, j)]
        for row in rows:
            alpha, beta = _product(row, second), _product(row, first)
            if alpha:
                row.add(first, alpha)
            if beta:
                row.add(second, beta)
            if alpha or beta:
                log.append(('decouple', row.label, str(alpha), str(beta)))
        pairs.append((first, second))
    return pairs, isotropic, log


def poly_sgsop(H, l_max=DEFAULT_L_MAX):
    """Symplectic Gram-Schmidt over GF(2)(D), expanding the frame by l = 1, 2, ... until it succeeds."""
    for l in range(1, l_max + 1):
        expanded = expand_check(H, l)
        logger.info(f"Gram-Schmidt with expansion factor {l}: {len(expanded)} generators on {expanded.n} qubits")
        result = _gram_schmidt(expanded)
        if result is None:
            continue
        pairs, isotropic, log = result
        ordered = [row for pair in pairs for row in pair] + isotropic
        reordered = ConvCheckMatrix([row.gen for row in ordered], expanded.n)
        R = PolyMatrix([row.combo for row in ordered], len(expanded))
        finite = reordered.finite()
        for index, (before, after) in enumerate(zip(reordered.gens, finite.gens)):
            if before != after:
                log.append(('finitize', index))
        logger.info(f"standard form after expansion {l}: {len(pairs)} ebits, {len(isotropic)} ancillas per frame")
        return ConvDecomposition(
            c=len(pairs),
            a=len(isotropic),
            l=l,
            expanded=expanded,
            reordered=reordered,
            finite=finite,
            R=R,
            pairs=[(u.label, v.label) for u, v in pairs],
            isotropic=[row.label for row in isotropic],
            log=log,
        )
    raise ExpansionLimitError(f"Gram-Schmidt did not reach standard form with expansion factor up to {l_max}")


def standard_form_ok(decomposition):
    """Pair cross products are 1, every other product vanishes and R maps the expanded Omega onto it."""
    omega = shifted_omega(decomposition.reordered)
    if not omega_is_symmetric(omega):
        return False
    if transform_omega(shifted_omega(decomposition.expanded), decomposition.R) != omega:
        return False
    size = omega.n_rows
    for i in range(size):
        for j in range(size):
            paired = i < 2 * decomposition.c and j == (i ^ 1)
            if omega[i, j] != (ONE if paired else ZERO):
                return False
    return True


def conv_ebits(H):
    """Half the rank of Omega(D) over GF(2)(D); half-integer when the code needs frame expansion."""
    return Fraction(rank_rational(shifted_omega(H)), 2)


def conv_ebits_gf4(rows):
    """rank(H(D) H^dagger(1/D)) over GF(4)(D) for quaternary generators."""
    rows = [[e if isinstance(e, Gf4Poly) else Gf4Poly.parse(str(e)) for e in row] for row in rows]
    product = []
    for u in rows:
        out = []
        for v in rows:
            total = Gf4Poly()
            for a, b in zip(u, v):
                total = total + a * b.conjugate().reverse()
            out.append(total)
        product.append(out)
    return rank_gf4_rational(product)


def omega_is_symmetric(omega):
    return omega == omega.adjoint()
