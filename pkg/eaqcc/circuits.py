"""Encoding and decoding circuits for entanglement-assisted convolutional codes.

Three constructions share one layout convention. Sender qubits of a frame are labelled 'ebit', 'ancilla' or
'info'; the receiver holds one extra qubit per ebit, placed before the sender's qubits whenever a gate list
acts on the full stream. Encoders act on sender qubits only, decoders on the full stream.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra import ONE, ZERO, LaurentPoly, RationalFn, poly_divmod, poly_lcm, simplify, to_rational
from conv_core import ConvCheckMatrix
from errors import (CatastrophicInputError, DependentRowsError, FrameMismatchError, ParameterError,
                    RankDeficiencyError, RelationError)
from gates import (ConvGate, apply_conv_gates, column_scale_gates, inverse_gates, is_finite_depth,
                   transform_generator)
from pauli import ConvGenerator
from polymatrix import PolyMatrix, apply_row_ops, rank_rational, smith_form

logger = logging.getLogger('eaqcc-circuits')

FINITE_DEPTH = 'finite_depth'
INFINITE_DEPTH_ENCODER = 'infinite_depth_encoder'


@dataclass
class EAQConvCode:
    n: int
    k: int
    c: int
    a: int
    encoder: list
    decoder: list
    target: ConvCheckMatrix
    klass: str
    layout: list
    surplus: int = 0
    construction: str = ''
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n != self.k + self.a + self.c:
            raise ParameterError(f"n={self.n} is not k+a+c = {self.k}+{self.a}+{self.c}")
        if len(self.layout) != self.n:
            raise ParameterError(f"layout names {len(self.layout)} qubits for a frame of {self.n}")
        if self.klass == FINITE_DEPTH and not is_finite_depth(self.encoder):
            raise ParameterError("finite-depth code with an infinite-depth encoder gate")

    @property
    def rate(self):
        """(information qubits, ebits) per channel use."""
        return Fraction(self.k, self.n), Fraction(self.c, self.n)

    def columns(self, role):
        return [i for i, name in enumerate(self.layout) if name == role]

    def params(self):
        return f"[[{self.n},{self.k};{self.c}]]"


@dataclass
class Verification:
    ok: bool
    messages: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _unit(n, column, side):
    z = [ONE if side == 'z' and i == column else ZERO for i in range(n)]
    x = [ONE if side == 'x' and i == column else ZERO for i in range(n)]
    return ConvGenerator(z, x)


def initial_stabilizer(code):
    """Ebit pairs Z_B Z_A and X_B X_A, then Z on every ancilla, receiver columns first."""
    width = code.c + code.n
    gens = []
    for b, column in enumerate(code.columns('ebit')):
        gens.append(_unit(width, b, 'z') + _unit(width, code.c + column, 'z'))
        gens.append(_unit(width, b, 'x') + _unit(width, code.c + column, 'x'))
    for column in code.columns('ancilla'):
        gens.append(_unit(width, code.c + column, 'z'))
    return ConvCheckMatrix(gens, width)


def encode_stabilizer(code):
    return apply_conv_gates(initial_stabilizer(code), code.encoder, offset=code.c)


def info_qubit_matrix(code):
    """Logical Z and X of every information qubit after encoding, full stream."""
    width = code.c + code.n
    gens = []
    for column in code.columns('info'):
        gens.append(_unit(width, code.c + column, 'z'))
        gens.append(_unit(width, code.c + column, 'x'))
    return apply_conv_gates(ConvCheckMatrix(gens, width), code.encoder, offset=code.c)


def normal_form(reduced, pivots, vector):
    vector = [to_rational(e) for e in vector]
    for row, pivot in zip(reduced.rows, pivots):
        factor = vector[pivot]
        if factor:
            vector = [a + factor * b if b else a for a, b in zip(vector, row)]
    return vector


def _proportional(u, v):
    """The monomial lambda with u = lambda v, or None."""
    lead = next((i for i, e in enumerate(v) if e), None)
    if lead is None:
        return None
    ratio = u[lead] / v[lead]
    if not ratio.is_monomial():
        return None
    if all(a == ratio * b for a, b in zip(u, v)):
        return ratio
    return None


def verify_encoding(code):
    """Encoded sender rows must contain the target row space, and the decoder must return every logical
    operator to its single-qubit form up to stabilizer rows and a frame delay."""
    messages = []
    encoded = encode_stabilizer(code)
    sender = encoded.restrict(list(range(code.c, code.c + code.n)))
    encoded_rank = sender.rank()
    joint_rank = rank_rational(sender.as_matrix().stack(code.target.as_matrix()))
    target_rank = code.target.rank()
    if joint_rank != encoded_rank:
        messages.append(f"target rows leave the encoded row space (rank {encoded_rank} -> {joint_rank})")
    if encoded_rank != target_rank + code.surplus:
        messages.append(f"encoded rank {encoded_rank} is not target rank {target_rank} + surplus {code.surplus}")

    decoded = apply_conv_gates(encoded, code.decoder)
    reduced, pivots = decoded.as_matrix().rref()
    logicals = info_qubit_matrix(code)
    width = code.c + code.n
    for index, column in enumerate(code.columns('info')):
        for side, logical in zip('zx', logicals.gens[2 * index:2 * index + 2]):
            after = apply_conv_gates(ConvCheckMatrix([logical], width), code.decoder).gens[0]
            expected = normal_form(reduced, pivots, _unit(width, code.c + column, side).entries())
            actual = normal_form(reduced, pivots, after.entries())
            if _proportional(actual, expected) is None:
                messages.append(f"logical {side.upper()} of qubit {column + 1} decodes to {after}")
    ok = not messages
    logger.info(f"verification of {code.params()} {code.construction}: {'ok' if ok else '; '.join(messages)}")
    return Verification(ok, messages)


def x_side_gates(col_ops, offset=0):
    """Smith column operations on an X block as gates: col_dst += f col_src is CNOT(src, dst, f)."""
    gates = []
    for op in col_ops:
        if op[0] == 'swap':
            gates.append(ConvGate('SWAP', op[1] + offset, op[2] + offset))
        else:
            _, src, dst, f = op
            gates.append(ConvGate('CNOT', src + offset, dst + offset, f))
    return gates


def z_side_gates(col_ops, offset=0):
    """Smith column operations on a Z block as gates: col_dst += f col_src is CNOT(dst, src, f(1/D))."""
    gates = []
    for op in col_ops:
        if op[0] == 'swap':
            gates.append(ConvGate('SWAP', op[1] + offset, op[2] + offset))
        else:
            _, src, dst, f = op
            gates.append(ConvGate('CNOT', dst + offset, src + offset, f.reverse()))
    return gates


def _row_entries(M):
    return [list(g.z) for g in M.gens]


def _check_noncatastrophic(name, H):
    decomposition = smith_form(H)
    if decomposition.rank < H.n_rows:
        raise RankDeficiencyError(f"{name} has rank {decomposition.rank} < {H.n_rows} rows")
    if not decomposition.all_unit():
        factors = ', '.join(str(g) for g in decomposition.gamma)
        raise CatastrophicInputError(f"{name} has invariant factors {factors}")
    return decomposition


def css_target(H1, H2):
    n = H1.n_cols
    zeros = [ZERO] * n
    return ConvCheckMatrix([ConvGenerator(row, zeros) for row in H1.rows]
                           + [ConvGenerator(zeros, row) for row in H2.rows], n)


def css_construct(H1, H2):
    """CSS entanglement-assisted code from classical check matrices H1 (Z rows) and H2 (X rows)."""
    n = H1.n_cols
    if H2.n_cols != n:
        raise FrameMismatchError(f"H1 has {n} columns but H2 has {H2.n_cols}")
    H1, H2 = H1.to_polynomial(), H2.to_polynomial()
    _check_noncatastrophic('H1', H1)
    smith2 = _check_noncatastrophic('H2', H2)
    m1, m2 = H1.n_rows, H2.n_rows
    c = rank_rational(H1 @ H2.adjoint())
    logger.info(f"CSS construction: n={n}, {m1} Z checks, {m2} X checks, {c} ebits")

    gates = x_side_gates(smith2.col_ops)
    z_block = ConvCheckMatrix([ConvGenerator(row, [ZERO] * n) for row in H1.rows], n)
    z_block = apply_conv_gates(z_block, gates)

    E = PolyMatrix([g.z[:m2] for g in z_block.gens], m2)
    smith_e = smith_form(E)
    if smith_e.rank != c:
        raise RelationError(f"Z block over the X pivots has rank {smith_e.rank}, expected {c}")
    e_gates = z_side_gates(smith_e.col_ops)
    gates += e_gates
    z_rows = apply_row_ops(_row_entries(apply_conv_gates(z_block, e_gates)), smith_e.row_ops)

    bottom = PolyMatrix([row[m2:] for row in z_rows[c:]], n - m2)
    smith_f = smith_form(bottom)
    if smith_f.rank < m1 - c or not smith_f.all_unit():
        raise CatastrophicInputError("Z checks outside the ebit block do not reduce to the identity")
    f_gates = z_side_gates(smith_f.col_ops, offset=m2)
    gates += f_gates
    z_block = apply_conv_gates(ConvCheckMatrix([ConvGenerator(row, [ZERO] * n) for row in z_rows], n), f_gates)
    z_rows = _row_entries(z_block)
    z_rows = z_rows[:c] + apply_row_ops(z_rows[c:], smith_f.row_ops)
    for t in range(c):
        for s in range(m1 - c):
            factor = z_rows[t][m2 + s]
            if factor:
                z_rows[t] = [a + factor * b for a, b in zip(z_rows[t], z_rows[c + s])]

    info_start = m2 + m1 - c
    k = n - info_start
    gammas = smith_e.gamma
    layout = ['ebit'] * c + ['ancilla'] * (m2 - c) + ['ancilla'] * (m1 - c) + ['info'] * k
    encoder = [ConvGate('H', j) for j in range(c, m2)]
    couplings = []
    for t in range(c):
        for j in range(info_start, n):
            entry = simplify(z_rows[t][j])
            if entry:
                couplings.append((t, j, entry))
                encoder.append(ConvGate('CNOT', j, t, entry.reverse()))
    finite = all(g.is_monomial() for g in gammas)
    for t, gamma in enumerate(gammas):
        if not gamma.is_one():
            rcnot = RationalFn(LaurentPoly.monomial(gamma.degree), gamma.reciprocal())
            encoder.append(ConvGate('RCNOT', t, poly=rcnot))
    encoder += inverse_gates(gates)

    if finite:
        decoder = inverse_gates([g.offset(c) for g in encoder])
    else:
        decoder = [g.offset(c) for g in gates]
        decoder += [ConvGate('CNOT', c + j, t, entry.reverse()) for t, j, entry in couplings]
    klass = FINITE_DEPTH if finite else INFINITE_DEPTH_ENCODER
    code = EAQConvCode(n=n, k=k, c=c, a=n - k - c, encoder=encoder, decoder=decoder, target=css_target(H1, H2),
                       klass=klass, layout=layout, construction='css',
                       details={'gammas': [str(g) for g in gammas], 'k1': n - m1, 'k2': n - m2})
    logger.info(f"CSS code {code.params()}: {klass}, {len(encoder)} encoder gates, {len(decoder)} decoder gates")
    return code


class _RowReducer:
    """Greedy finite-depth reduction of commuting polynomial rows to Z(D) on successive columns."""

    def __init__(self, n):
        self.n = n
        self.gates = []

    def _apply(self, state, gate):
        self.gates.append(gate)
        logger.debug(f"reduction gate {gate}")
        return transform_generator(state, gate)

    def reduce(self, row, t):
        row = self.replay(row)
        if any(row.x[j] for j in range(t)):
            raise RelationError(f"row {row} does not commute with the rows already reduced")
        while True:
            row = self._gather_x(row, t)
            rest = [j for j in range(t + 1, self.n) if row.z[j]]
            if not rest:
                break
            for j in rest:
                if row.x[t]:
                    quotient, _ = poly_divmod(row.z[j], row.x[t])
                    if quotient:
                        row = self._apply(row, ConvGate('CPHASE', t, j, quotient))
                if row.z[j]:
                    row = self._apply(row, ConvGate('H', j))
        while row.x[t] and row.z[t]:
            z, x = row.z[t], row.x[t]
            if z.span < x.span:
                row = self._apply(row, ConvGate('H', t))
                z, x = x, z
            if z.delay + z.degree != x.delay + x.degree:
                raise RelationError(f"row {row} is not self-orthogonal")
            k = z.degree - x.degree
            row = self._apply(row, ConvGate('P', t) if k == 0 else ConvGate('CPHASESELF', t, power=k))
        if row.x[t]:
            row = self._apply(row, ConvGate('H', t))
        if not row.z[t]:
            raise DependentRowsError(f"row reduced to the identity on qubit {t + 1}")
        return row.z[t]

    def _gather_x(self, row, t):
        while True:
            support = [j for j in range(t, self.n) if row.x[j]]
            if len(support) > 1:
                pivot = min(support, key=lambda j: (row.x[j].span, j != t, j))
                for j in support:
                    if j != pivot:
                        quotient, _ = poly_divmod(row.x[j], row.x[pivot])
                        row = self._apply(row, ConvGate('CNOT', pivot, j, quotient))
                continue
            if support and support[0] != t:
                row = self._apply(row, ConvGate('SWAP', t, support[0]))
            elif not support:
                first = next((j for j in range(t, self.n) if row.z[j]), None)
                if first is None:
                    raise DependentRowsError(f"row reduced to the identity on qubit {t + 1}")
                row = self._apply(row, ConvGate('H', first))
                continue
            return row

    def replay(self, row):
        for gate in self.gates:
            row = transform_generator(row, gate)
        return row


def _partner_couplings(reducer, seconds, a, info):
    """Information-qubit part of each encoded partner X_e, as rows [z | x] over GF(2)(D).

    Reduced ebit rows keep Z on earlier pivot columns, so a partner may carry X on several ebit columns.
    With M its X block on the ebit columns and V its information block, the partners are M (X_e + N) up to
    Z rows on the reduced columns, hence N = M^-1 V.
    """
    c = len(seconds)
    if not c:
        return []
    partners = [reducer.replay(row) for row in seconds]
    for i, row in enumerate(partners):
        for j in range(a):
            if row.x[j]:
                raise RelationError(f"partner row {i + 1} has X on ancilla qubit {j + 1}")
    M = PolyMatrix([[to_rational(row.x[a + e]) for e in range(c)] for row in partners], c)
    if M.rank() < c:
        raise RelationError(f"partner rows pair with only {M.rank()} of {c} ebit rows")
    if not info:
        return [[] for _ in range(c)]
    V = PolyMatrix([[to_rational(row.z[j]) for j in info] + [to_rational(row.x[j]) for j in info]
                    for row in partners], 2 * len(info))
    return [[to_rational(e) for e in row] for row in (M.inverse() @ V).rows]


def general_construct(decomposition):
    """Encoder and decoder for a standard-form decomposition.

    Layout per frame: ancillas, then one sender qubit per ebit, then information qubits. Ancilla rows and the
    first row of each ebit pair are reduced to Z(D) on their column (the reduced row is replaced by plain Z,
    a subcode); the partner rows, solved against their block on the ebit columns, fix the CNOT couplings from
    ebit to information qubits.
    """
    n, c, a = decomposition.n, decomposition.c, decomposition.a
    k = n - a - c
    if k < 0:
        raise ParameterError(f"{2 * c + a} generators do not fit a frame of {n}")
    finite_rows = decomposition.finite.gens
    firsts = [finite_rows[2 * i] for i in range(c)]
    seconds = [decomposition.reordered.gens[2 * i + 1] for i in range(c)]
    ancillas = finite_rows[2 * c:]

    reducer = _RowReducer(n)
    reduced = []
    for t, row in enumerate(ancillas):
        reduced.append(reducer.reduce(row, t))
    for i, row in enumerate(firsts):
        reduced.append(reducer.reduce(row, a + i))
    G = reducer.gates
    logger.info(f"reduced {a} ancilla and {c} ebit rows with {len(G)} gates")

    info = list(range(a + c, n))
    z_couplings, x_couplings, scales = [], [], []
    for i, row in enumerate(_partner_couplings(reducer, seconds, a, info)):
        z_info, x_info = row[:k], row[k:]
        gamma = ONE
        for entry in row:
            if entry:
                gamma = poly_lcm(gamma, entry.den)
        z_couplings.append([simplify(e * gamma) for e in z_info])
        x_couplings.append([simplify(e * gamma) for e in x_info])
        scales.append(gamma)

    ebit = lambda i: a + i
    encoder = []
    for i in range(c):
        encoder += [ConvGate('CNOT', ebit(i), j, f) for j, f in zip(info, z_couplings[i]) if f]
    encoder += [ConvGate('H', j) for j in info] if c else []
    for i in range(c):
        encoder += [ConvGate('CNOT', ebit(i), j, f) for j, f in zip(info, x_couplings[i]) if f]
    for i in range(c):
        encoder += column_scale_gates(ebit(i), scales[i])
    encoder += inverse_gates(G)

    decoder = [g.offset(c) for g in G]
    for i in range(c):
        decoder += [ConvGate('CNOT', i, c + j, f) for j, f in zip(info, x_couplings[i]) if f]
    decoder += [ConvGate('H', c + j) for j in info] if c else []
    for i in range(c):
        decoder += [ConvGate('CNOT', i, c + j, f) for j, f in zip(info, z_couplings[i]) if f]

    klass = FINITE_DEPTH if is_finite_depth(encoder) else INFINITE_DEPTH_ENCODER
    layout = ['ancilla'] * a + ['ebit'] * c + ['info'] * k
    code = EAQConvCode(n=n, k=k, c=c, a=a, encoder=encoder, decoder=decoder, target=decomposition.expanded,
                       klass=klass, layout=layout, construction='general',
                       details={'expansion': decomposition.l, 'reduced': [str(g) for g in reduced],
                                'scales': [str(g) for g in scales]})
    logger.info(f"general code {code.params()}: {klass}, {len(encoder)} encoder gates")
    return code


def free_ent_construct(S):
    """Code from an arbitrary full-rank check matrix without Gram-Schmidt or expansion."""
    n, m = S.n, len(S)
    if S.rank() < m:
        raise RankDeficiencyError(f"check matrix has rank {S.rank()} < {m} rows")
    smith_x = smith_form(S.X.to_polynomial())
    G1 = x_side_gates(smith_x.col_ops)
    state = apply_conv_gates(S, G1)
    rows = apply_row_ops([list(g.z) + list(g.x) for g in state.gens], smith_x.row_ops)
    state = ConvCheckMatrix([ConvGenerator(row[:n], row[n:]) for row in rows], n)
    c = smith_x.rank

    G2 = [ConvGate('RCNOT', r, poly=RationalFn(ONE, gamma)) for r, gamma in enumerate(smith_x.gamma)
          if not gamma.is_one()]
    state = apply_conv_gates(state, G2)

    G3 = []
    for r in range(c):
        for j in range(c, n):
            entry = simplify(state.gens[r].z[j])
            if entry:
                G3.append(ConvGate('CPHASE', r, j, entry))
    state = apply_conv_gates(state, G3)

    bottom = PolyMatrix([[simplify(e) for e in g.z[c:]] for g in state.gens[c:]], n - c).to_polynomial()
    smith_b = smith_form(bottom)
    G4 = z_side_gates(smith_b.col_ops, offset=c)
    rho = smith_b.rank
    k = n - c - rho

    encoder = inverse_gates(G1 + G2 + G3 + G4)
    decoder = [g.offset(c) for g in G1]
    decoder += [ConvGate('CPHASE', g.i, c + g.j, g.poly) for g in G3]
    decoder += [g.offset(c) for g in G4]
    klass = FINITE_DEPTH if is_finite_depth(encoder) else INFINITE_DEPTH_ENCODER
    layout = ['ebit'] * c + ['ancilla'] * rho + ['info'] * k
    code = EAQConvCode(n=n, k=k, c=c, a=rho, encoder=encoder, decoder=decoder, target=S, klass=klass,
                       layout=layout, surplus=2 * c + rho - m, construction='free',
                       details={'gammas': [str(g) for g in smith_x.gamma]})
    logger.info(f"free-entanglement code {code.params()}: {klass}, {len(encoder)} encoder gates")
    return code
