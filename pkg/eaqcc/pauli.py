import numpy as np

from algebra import GF4, OMEGA, OMEGA_BAR, ZERO, Gf4Poly, LaurentPoly, gf2_rank, parse_entry, simplify
from errors import FrameMismatchError, ParseError

LETTER_BITS = {'I': (0, 0), 'X': (0, 1), 'Y': (1, 1), 'Z': (1, 0)}
BITS_LETTER = {bits: letter for letter, bits in LETTER_BITS.items()}


class SymplecticVector:
    __slots__ = ('z', 'x')

    def __init__(self, z, x):
        self.z = np.asarray(z, dtype=np.uint8) % 2
        self.x = np.asarray(x, dtype=np.uint8) % 2
        if self.z.shape != self.x.shape:
            raise ValueError("z and x parts must have the same length")

    @property
    def n(self):
        return len(self.z)

    def __add__(self, other):
        return SymplecticVector(self.z ^ other.z, self.x ^ other.x)

    def __bool__(self):
        return bool(self.z.any() or self.x.any())

    def __eq__(self, other):
        if not isinstance(other, SymplecticVector):
            return NotImplemented
        return np.array_equal(self.z, other.z) and np.array_equal(self.x, other.x)

    def __hash__(self):
        return hash((self.z.tobytes(), self.x.tobytes()))

    def as_array(self):
        return np.concatenate([self.z, self.x])

    def __repr__(self):
        return f"SymplecticVector({p2b_inverse(self)!r})"

    def __str__(self):
        return ''.join(str(b) for b in self.z) + '|' + ''.join(str(b) for b in self.x)


def p2b_forward(pauli):
    letters = pauli.strip().upper()
    try:
        bits = [LETTER_BITS[letter] for letter in letters]
    except KeyError as e:
        raise ParseError(f"bad Pauli letter {e} in '{pauli}'")
    return SymplecticVector([b[0] for b in bits], [b[1] for b in bits])


def p2b_inverse(vector):
    return ''.join(BITS_LETTER[(int(z), int(x))] for z, x in zip(vector.z, vector.x))


def symplectic_product(u, v):
    if u.n != v.n:
        raise FrameMismatchError(f"symplectic product of lengths {u.n} and {v.n}")
    return int((np.dot(u.z, v.x) + np.dot(u.x, v.z)) % 2)


class BlockCheckMatrix:
    def __init__(self, rows, n=None):
        self.rows = [row if isinstance(row, SymplecticVector) else p2b_forward(row) for row in rows]
        lengths = {row.n for row in self.rows}
        if len(lengths) > 1:
            raise FrameMismatchError(f"rows have different lengths {sorted(lengths)}")
        self.n = lengths.pop() if lengths else (n or 0)

    @classmethod
    def from_paulis(cls, paulis):
        return cls([p2b_forward(p) for p in paulis])

    @classmethod
    def from_arrays(cls, hz, hx):
        hz = np.atleast_2d(np.asarray(hz, dtype=np.uint8))
        hx = np.atleast_2d(np.asarray(hx, dtype=np.uint8))
        if hz.shape != hx.shape:
            raise FrameMismatchError(f"Z part {hz.shape} and X part {hx.shape} differ")
        return cls([SymplecticVector(z, x) for z, x in zip(hz, hx)], hz.shape[1])

    @classmethod
    def css(cls, h1, h2):
        """Stack [H1 | 0] over [0 | H2]."""
        h1 = np.atleast_2d(np.asarray(h1, dtype=np.uint8))
        h2 = np.atleast_2d(np.asarray(h2, dtype=np.uint8))
        zero1, zero2 = np.zeros_like(h1), np.zeros_like(h2)
        return cls.from_arrays(np.vstack([h1, zero2]), np.vstack([zero1, h2]))

    @property
    def hz(self):
        return np.array([row.z for row in self.rows], dtype=np.uint8).reshape(len(self.rows), self.n)

    @property
    def hx(self):
        return np.array([row.x for row in self.rows], dtype=np.uint8).reshape(len(self.rows), self.n)

    def as_array(self):
        return np.hstack([self.hz, self.hx])

    def rank(self):
        return gf2_rank(self.as_array())

    def paulis(self):
        return [p2b_inverse(row) for row in self.rows]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def __eq__(self, other):
        if not isinstance(other, BlockCheckMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __str__(self):
        return '\n'.join(self.paulis())


def symplectic_matrix(H):
    hz, hx = H.hz.astype(np.int64), H.hx.astype(np.int64)
    return ((hz @ hx.T + hx @ hz.T) % 2).astype(np.uint8)


def gf4_to_bits(element):
    """gamma(a + b w): z = a, x = a + b, so w -> X, 1 -> Y and w-bar -> Z."""
    element = int(element)
    a, b = element & 1, element >> 1
    return a, a ^ b


def gf4_import_block(H):
    """H_Q = gamma([w H; w-bar H]) for a GF(4) parity-check matrix."""
    H = GF4(np.atleast_2d(np.asarray(H, dtype=np.int64)))
    stacked = np.vstack([GF4(OMEGA) * H, GF4(OMEGA_BAR) * H])
    rows = []
    for row in stacked:
        bits = [gf4_to_bits(v) for v in row]
        rows.append(SymplecticVector([b[0] for b in bits], [b[1] for b in bits]))
    return BlockCheckMatrix(rows, H.shape[1])


class ConvGenerator:
    """u(D) = [z(D) | x(D)] with n entries on each side; entries may be rational mid-pipeline."""

    __slots__ = ('z', 'x')

    def __init__(self, z, x):
        self.z = tuple(_entry(e) for e in z)
        self.x = tuple(_entry(e) for e in x)
        if len(self.z) != len(self.x):
            raise FrameMismatchError(f"z part has {len(self.z)} entries, x part {len(self.x)}")

    @classmethod
    def zero(cls, n):
        return cls([ZERO] * n, [ZERO] * n)

    @classmethod
    def parse(cls, text):
        if '|' not in text:
            raise ParseError(f"generator '{text}' has no '|' separator")
        z_text, x_text = text.split('|', 1)
        z = [parse_entry(t) for t in z_text.split(',')]
        x = [parse_entry(t) for t in x_text.split(',')]
        if len(z) != len(x):
            raise ParseError(f"generator '{text}' has {len(z)} Z entries and {len(x)} X entries")
        return cls(z, x)

    @classmethod
    def from_frames(cls, frames):
        """Build from a list of Pauli strings, frame t contributing D^t."""
        n = len(frames[0])
        z, x = [set() for _ in range(n)], [set() for _ in range(n)]
        for t, frame in enumerate(frames):
            if len(frame) != n:
                raise FrameMismatchError(f"frame '{frame}' does not have {n} qubits")
            vector = p2b_forward(frame)
            for i in range(n):
                if vector.z[i]:
                    z[i].add(t)
                if vector.x[i]:
                    x[i].add(t)
        return cls([LaurentPoly(s) for s in z], [LaurentPoly(s) for s in x])

    @property
    def n(self):
        return len(self.z)

    def entries(self):
        return self.z + self.x

    def __bool__(self):
        return any(self.entries())

    def __add__(self, other):
        _check_frames(self, other)
        return ConvGenerator([a + b for a, b in zip(self.z, other.z)], [a + b for a, b in zip(self.x, other.x)])

    def scale(self, f):
        return ConvGenerator([f * e for e in self.z], [f * e for e in self.x])

    def shift(self, k):
        return self.scale(LaurentPoly.monomial(k))

    def extend(self, z_tail, x_tail):
        return ConvGenerator(self.z + tuple(z_tail), self.x + tuple(x_tail))

    def restrict(self, columns):
        return ConvGenerator([self.z[i] for i in columns], [self.x[i] for i in columns])

    def is_polynomial(self):
        return all(isinstance(e, LaurentPoly) for e in self.entries())

    def delay(self):
        return min(e.delay if isinstance(e, LaurentPoly) else e.num.delay for e in self.entries() if e)

    def degree(self):
        return max(e.degree for e in self.entries() if e)

    def frames(self):
        """Frame-by-frame Pauli strings from the delay to the degree of a polynomial generator."""
        if not self:
            return ['I' * self.n]
        low, high = self.delay(), self.degree()
        out = []
        for t in range(low, high + 1):
            z = [e.coeff(t) for e in self.z]
            x = [e.coeff(t) for e in self.x]
            out.append(p2b_inverse(SymplecticVector(z, x)))
        return out

    def pauli_text(self):
        return '|'.join(self.frames())

    def __eq__(self, other):
        if not isinstance(other, ConvGenerator):
            return NotImplemented
        return self.z == other.z and self.x == other.x

    def __hash__(self):
        return hash((self.z, self.x))

    def __repr__(self):
        return f"ConvGenerator({str(self)!r})"

    def __str__(self):
        return ', '.join(str(e) for e in self.z) + ' | ' + ', '.join(str(e) for e in self.x)


def _entry(value):
    if isinstance(value, str):
        return parse_entry(value)
    if isinstance(value, int):
        return LaurentPoly.monomial(0) if value % 2 else ZERO
    return simplify(value)


def _check_frames(u, v):
    if u.n != v.n:
        raise FrameMismatchError(f"generators have frame sizes {u.n} and {v.n}")


def shifted_product(u, v):
    """(u . v)(D) = sum z_i(D) x'_i(1/D) + x_i(D) z'_i(1/D)."""
    _check_frames(u, v)
    total = ZERO
    for z, x, z2, x2 in zip(u.z, u.x, v.z, v.x):
        if z and x2:
            total = total + z * x2.reverse()
        if x and z2:
            total = total + x * z2.reverse()
    return total


def gf4_poly_to_generator_part(h):
    """gamma applied entrywise to a GF(4) polynomial vector: z = a(D), x = a(D) + b(D)."""
    return [e.a for e in h], [e.a + e.b for e in h]


def gf4_import_conv(rows):
    """Quaternary convolutional generators h(D) to [w-bar h; w h] images, conjugate first for every row."""
    generators = []
    for h in rows:
        h = [e if isinstance(e, Gf4Poly) else Gf4Poly.parse(str(e)) for e in h]
        for scalar in (OMEGA_BAR, OMEGA):
            z, x = gf4_poly_to_generator_part([Gf4Poly.constant(scalar) * e for e in h])
            generators.append(ConvGenerator(z, x))
    return generators
