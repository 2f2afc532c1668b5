import logging
from dataclasses import dataclass, field

import numpy as np

from algebra import GF4, gf2_rank, gf4_rank
from errors import DependentRowsError, FrameMismatchError, GateError, ParseError
from pauli import BlockCheckMatrix, SymplecticVector, symplectic_matrix, symplectic_product

logger = logging.getLogger('eaqcc-gramschmidt')

BLOCK_GATE_KINDS = ('CNOT', 'H', 'P', 'SWAP')


@dataclass(frozen=True)
class BlockGate:
    kind: str
    i: int
    j: int = None

    def __post_init__(self):
        if self.kind not in BLOCK_GATE_KINDS:
            raise GateError(f"unknown block gate {self.kind}")
        if self.kind in ('CNOT', 'SWAP') and (self.j is None or self.i == self.j):
            raise GateError(f"{self.kind} needs two distinct qubits")

    def offset(self, k):
        return BlockGate(self.kind, self.i + k, None if self.j is None else self.j + k)

    def __str__(self):
        if self.j is None:
            return f"{self.kind} {self.i + 1}"
        return f"{self.kind} {self.i + 1} {self.j + 1}"


def parse_block_gate(line):
    parts = line.split()
    if not parts:
        raise ParseError("empty gate line")
    try:
        indices = [int(p) - 1 for p in parts[1:]]
        return BlockGate(parts[0].upper(), *indices)
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad gate line '{line}': {e}")


@dataclass
class EAStructure:
    c: int
    a: int
    reordered: BlockCheckMatrix
    row_ops: list = field(default_factory=list)
    transform: np.ndarray = None


def _check_independent(H):
    if H.rank() < len(H):
        raise DependentRowsError(f"{len(H)} rows span only rank {H.rank()}")


def block_sgsop(H):
    """Pair each row with its first anticommuting partner and decouple the remaining rows from the pair."""
    _check_independent(H)
    remaining = [(row, np.eye(len(H), dtype=np.uint8)[i]) for i, row in enumerate(H.rows)]
    pairs, isotropic, row_ops = [], [], []
    while remaining:
        h, h_combo = remaining.pop(0)
        partner = next((k for k, (p, _) in enumerate(remaining) if symplectic_product(h, p)), None)
        if partner is None:
            isotropic.append((h, h_combo))
            continue
        p, p_combo = remaining.pop(partner)
        updated = []
        for r, r_combo in remaining:
            with_p, with_h = symplectic_product(r, p), symplectic_product(r, h)
            if with_p:
                r, r_combo = r + h, r_combo ^ h_combo
                row_ops.append(('decouple', len(pairs), 'first'))
            if with_h:
                r, r_combo = r + p, r_combo ^ p_combo
                row_ops.append(('decouple', len(pairs), 'second'))
            updated.append((r, r_combo))
        remaining = updated
        pairs.append(((h, h_combo), (p, p_combo)))
        logger.debug(f"ebit pair {len(pairs)}: {h} / {p}")
    ordered = [entry for pair in pairs for entry in pair] + isotropic
    reordered = BlockCheckMatrix([row for row, _ in ordered], H.n)
    transform = np.array([combo for _, combo in ordered], dtype=np.uint8).reshape(len(H), len(H))
    logger.info(f"block Gram-Schmidt: {len(pairs)} ebits, {len(isotropic)} ancillas")
    return EAStructure(len(pairs), len(isotropic), reordered, row_ops, transform)


def ebits_general(H):
    rank = gf2_rank(symplectic_matrix(H))
    assert rank % 2 == 0, "symplectic product matrix has odd rank"
    return rank // 2


def ebits_css(h1, h2):
    h1 = np.atleast_2d(np.asarray(h1, dtype=np.int64))
    h2 = np.atleast_2d(np.asarray(h2, dtype=np.int64))
    if h1.shape[1] != h2.shape[1]:
        raise FrameMismatchError(f"classical codes have lengths {h1.shape[1]} and {h2.shape[1]}")
    return gf2_rank((h1 @ h2.T) % 2)


def ebits_gf4(H):
    """rank(H H^dagger) over GF(4)."""
    H = GF4(np.atleast_2d(np.asarray(H, dtype=np.int64)))
    return gf4_rank((H @ (H ** 2).T))


def _check_gate(gate, n):
    for index in (gate.i, gate.j):
        if index is not None and not 0 <= index < n:
            raise GateError(f"gate {gate} addresses qubit outside 1..{n}")


def _apply_arrays(z, x, gate):
    i, j = gate.i, gate.j
    if gate.kind == 'CNOT':
        x[:, j] ^= x[:, i]
        z[:, i] ^= z[:, j]
    elif gate.kind == 'H':
        z[:, i], x[:, i] = x[:, i].copy(), z[:, i].copy()
    elif gate.kind == 'P':
        z[:, i] ^= x[:, i]
    else:
        z[:, [i, j]] = z[:, [j, i]]
        x[:, [i, j]] = x[:, [j, i]]


def apply_block_gate(M, gate):
    _check_gate(gate, M.n)
    z, x = M.hz.copy(), M.hx.copy()
    _apply_arrays(z, x, gate)
    return BlockCheckMatrix.from_arrays(z, x) if len(M) else M


def apply_block_gates(M, gates, offset=0):
    for gate in gates:
        M = apply_block_gate(M, gate.offset(offset))
    return M


def replay_reversed(M, gates, offset=0):
    """Undo a gate list; every block gate is its own inverse."""
    return apply_block_gates(M, list(reversed(gates)), offset)


class _Synthesis:
    def __init__(self, H):
        self.z, self.x = H.hz.copy(), H.hx.copy()
        self.gates = []

    def gate(self, kind, i, j=None):
        gate = BlockGate(kind, i, j)
        _apply_arrays(self.z, self.x, gate)
        self.gates.append(gate)

    def swap_rows(self, r, s):
        self.z[[r, s]] = self.z[[s, r]]
        self.x[[r, s]] = self.x[[s, r]]

    def clear_row_to_x(self, t, q):
        """Gates on columns >= q leaving row t as a single X on q."""
        n = self.z.shape[1]
        if not self.x[t, q]:
            x_cols = [j for j in range(q, n) if self.x[t, j]]
            if x_cols:
                self.gate('SWAP', q, x_cols[0])
            else:
                z_cols = [j for j in range(q, n) if self.z[t, j]]
                if not z_cols:
                    raise DependentRowsError(f"row {t + 1} reduced to the identity")
                self.gate('H', z_cols[0])
                if z_cols[0] != q:
                    self.gate('SWAP', q, z_cols[0])
        for j in range(q + 1, n):
            if self.z[t, j] and self.x[t, j]:
                self.gate('P', j)
            elif self.z[t, j]:
                self.gate('H', j)
        for j in range(q + 1, n):
            if self.x[t, j]:
                self.gate('CNOT', q, j)
        if self.z[t, q]:
            self.gate('P', q)

    def clear_column(self, q, keep, z_row=None, x_row=None):
        for r in range(self.z.shape[0]):
            if r in keep:
                continue
            if z_row is not None and self.z[r, q]:
                self.z[r] ^= self.z[z_row]
                self.x[r] ^= self.x[z_row]
            if x_row is not None and self.x[r, q]:
                self.z[r] ^= self.z[x_row]
                self.x[r] ^= self.x[x_row]


def synth_block_encoder(H):
    """Clifford gates taking the check matrix to Z/X ebit pairs and single-qubit Z ancillas.

    Returns (gates, c, final). Row t is reduced to X on column q; if a later row anticommutes it is moved
    to t + 1, H(q) turns row t into Z_q and the partner is reduced to X_q; row operations then clear
    column q from every other row.
    """
    _check_independent(H)
    work = _Synthesis(H)
    m = len(H)
    t = q = c = 0
    while t < m:
        work.clear_row_to_x(t, q)
        partner = next((s for s in range(t + 1, m) if work.z[s, q]), None)
        if partner is None:
            work.gate('H', q)
            work.clear_column(q, keep={t}, z_row=t)
            logger.debug(f"row {t + 1}: ancilla on qubit {q + 1}")
            t += 1
        else:
            if partner != t + 1:
                work.swap_rows(partner, t + 1)
            work.gate('H', q)
            work.clear_row_to_x(t + 1, q)
            work.clear_column(q, keep={t, t + 1}, z_row=t, x_row=t + 1)
            logger.debug(f"rows {t + 1},{t + 2}: ebit pair on qubit {q + 1}")
            t += 2
            c += 1
        q += 1
    final = BlockCheckMatrix.from_arrays(work.z, work.x)
    logger.info(f"block encoder: {len(work.gates)} gates, {c} ebits")
    return work.gates, c, final


def canonical_stabilizer(final):
    """Prepend one receiver column per ebit: Z_B on the pair's Z row, X_B on its X row."""
    pair_rows = [r for r, row in enumerate(final.rows) if row.x.any()]
    c = len(pair_rows)
    rows = []
    for r, row in enumerate(final.rows):
        bob_z, bob_x = np.zeros(c, dtype=np.uint8), np.zeros(c, dtype=np.uint8)
        if r in pair_rows:
            bob_x[pair_rows.index(r)] = 1
        elif r + 1 in pair_rows:
            bob_z[pair_rows.index(r + 1)] = 1
        rows.append(SymplecticVector(np.concatenate([bob_z, row.z]), np.concatenate([bob_x, row.x])))
    return BlockCheckMatrix(rows, final.n + c), c


def same_row_space(A, B):
    a, b = A.as_array(), B.as_array()
    rank_a, rank_b = gf2_rank(a), gf2_rank(b)
    return rank_a == rank_b == gf2_rank(np.vstack([a, b]))
