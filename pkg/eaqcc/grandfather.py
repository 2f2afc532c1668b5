"""Grandfather codes: entanglement, isotropic, gauge and classical subgroups tracked through an encoder,
windowed syndrome tables and error classification."""
import itertools
import logging
from dataclasses import dataclass, field

from algebra import ONE, ZERO
from conv_core import ConvCheckMatrix, shifted_omega
from errors import GateError, ParameterError, RelationError
from gates import apply_conv_gates, is_finite_depth
from pauli import ConvGenerator, shifted_product
from polymatrix import rank_rational

logger = logging.getLogger('eaqcc-grandfather')

ACTIVE = 'ACTIVE'
PASSIVE = 'PASSIVE'
UNDETECTED_LOGICAL = 'UNDETECTED_LOGICAL'

SUBGROUPS = ('S_E', 'S_I', 'S_G', 'S_C')
PAULIS = ('X', 'Y', 'Z')
PAULI_BITS = {'X': (0, 1), 'Y': (1, 1), 'Z': (1, 0)}


def _unit(width, column, z=0, x=0):
    return ConvGenerator([ONE if z and i == column else ZERO for i in range(width)],
                         [ONE if x and i == column else ZERO for i in range(width)])


@dataclass
class GrandfatherCode:
    """Subgroups live on the full stream: one receiver column per ebit first, then the n sender columns."""

    n: int
    k: int
    l: int
    r: int
    c: int
    a: int
    subgroups: dict
    logical: ConvCheckMatrix
    noisy: list
    encoder: list = field(default_factory=list)

    @property
    def width(self):
        return self.c + self.n

    @property
    def measured(self):
        return ConvCheckMatrix(self.subgroups['S_E'].gens + self.subgroups['S_I'].gens, self.width)

    @property
    def passive(self):
        gens = self.subgroups['S_I'].gens + self.subgroups['S_G'].gens + self.subgroups['S_C'].gens
        return ConvCheckMatrix(gens, self.width)

    def window_range(self):
        """(lowest exponent, window) of the measured generators on the noisy columns."""
        entries = [g.restrict(self.noisy) for g in self.measured.gens]
        entries = [e for g in entries for e in g.entries() if e]
        if not entries:
            return 0, 1
        low = min(e.delay for e in entries)
        return low, max(e.degree for e in entries) - low + 1

    def embed(self, error):
        """Lift an error on the noisy qubits to the full stream."""
        if error.n == self.width:
            return error
        if error.n != len(self.noisy):
            raise ParameterError(f"error on {error.n} qubits, code has {len(self.noisy)} noisy qubits")
        z, x = [ZERO] * self.width, [ZERO] * self.width
        for position, column in enumerate(self.noisy):
            z[column], x[column] = error.z[position], error.x[position]
        return ConvGenerator(z, x)

    @classmethod
    def from_stabilizer(cls, H, noisy=None):
        """Treat a plain stabilizer as a code with only an isotropic subgroup; `noisy` lists the erred columns."""
        noisy = list(range(H.n)) if noisy is None else list(noisy)
        empty = ConvCheckMatrix([], H.n)
        subgroups = {'S_E': empty, 'S_I': H, 'S_G': empty, 'S_C': empty}
        return cls(n=H.n, k=max(H.n - len(H), 0), l=0, r=0, c=0, a=min(len(H), H.n), subgroups=subgroups,
                   logical=empty, noisy=noisy)


def _initial_subgroups(n, k, l, r, c, a):
    width = c + n
    # receiver halves of the ebits sit in columns 0..c-1
    ebit = lambda i: c + i
    ancilla = lambda i: c + c + i
    gauge = lambda i: c + c + a + i
    classical = lambda i: c + c + a + r + i
    info = lambda i: c + c + a + r + l + i
    s_e = []
    for i in range(c):
        s_e.append(_unit(width, i, z=1) + _unit(width, ebit(i), z=1))
        s_e.append(_unit(width, i, x=1) + _unit(width, ebit(i), x=1))
    s_g = []
    for i in range(r):
        s_g += [_unit(width, gauge(i), z=1), _unit(width, gauge(i), x=1)]
    logical = []
    for i in range(k):
        logical += [_unit(width, info(i), z=1), _unit(width, info(i), x=1)]
    subgroups = {
        'S_E': ConvCheckMatrix(s_e, width),
        'S_I': ConvCheckMatrix([_unit(width, ancilla(i), z=1) for i in range(a)], width),
        'S_G': ConvCheckMatrix(s_g, width),
        'S_C': ConvCheckMatrix([_unit(width, classical(i), z=1) for i in range(l)], width),
    }
    return subgroups, ConvCheckMatrix(logical, width)


def _all_rows(subgroups, logical, width):
    return ConvCheckMatrix([g for name in SUBGROUPS for g in subgroups[name].gens] + logical.gens, width)


def build_grandfather(n, k, l, r, c, a, encoder):
    """Encode the initial stream [ebits | ancillas | gauge | classical | information] with a finite-depth encoder."""
    if min(n, k, l, r, c, a) < 0 or a != n - k - l - c - r:
        raise ParameterError(f"a={a} is not n-k-l-c-r = {n}-{k}-{l}-{c}-{r}")
    if not is_finite_depth(encoder):
        raise GateError("grandfather encoders must be finite-depth")
    subgroups, logical = _initial_subgroups(n, k, l, r, c, a)
    width = c + n
    before = shifted_omega(_all_rows(subgroups, logical, width))
    encoded = {name: apply_conv_gates(matrix, encoder, offset=c) for name, matrix in subgroups.items()}
    logical = apply_conv_gates(logical, encoder, offset=c)
    after = shifted_omega(_all_rows(encoded, logical, width))
    if before != after:
        raise RelationError("encoder changed the commutation relations of the subgroups")
    logger.info(f"grandfather code n={n} k={k} l={l} r={r} c={c} a={a}: {len(encoder)} encoder gates")
    return GrandfatherCode(n=n, k=k, l=l, r=r, c=c, a=a, subgroups=encoded, logical=logical,
                           noisy=list(range(c, width)), encoder=list(encoder))


@dataclass
class SyndromeTable:
    low: int
    window: int
    labels: list = field(default_factory=list)
    syndromes: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    def lookup(self, bits):
        """Label of the first error with this syndrome, or None."""
        for label in self.labels:
            if self.syndromes[label] == bits:
                return label
        return None

    def is_unique(self):
        return len(set(self.syndromes.values())) == len(self.syndromes)

    def rows(self):
        return [(label, self.syndromes[label]) for label in self.labels]


def syndrome_bits(code, error, low, window):
    """Bit (g, t) is the D^t coefficient of the shifted product of measured generator g with the error."""
    error = code.embed(error)
    bits = []
    for g in code.measured.gens:
        product = shifted_product(g, error)
        bits += [str(product.coeff(t)) for t in range(low, low + window)]
    return ''.join(bits)


def single_frame_error(code, placement):
    """ConvGenerator for a list of (noisy position, Pauli letter) acting in frame 0."""
    z, x = [ZERO] * code.width, [ZERO] * code.width
    for position, letter in placement:
        column = code.noisy[position]
        bz, bx = PAULI_BITS[letter]
        z[column], x[column] = (ONE if bz else ZERO), (ONE if bx else ZERO)
    return ConvGenerator(z, x)


def syndrome_table(code, weight=1, window=None):
    if weight < 1:
        raise ParameterError("syndrome tables need weight >= 1")
    low, default_window = code.window_range()
    window = window or default_window
    table = SyndromeTable(low, window)
    for w in range(1, weight + 1):
        for positions in itertools.combinations(range(len(code.noisy)), w):
            for letters in itertools.product(PAULIS, repeat=w):
                placement = list(zip(positions, letters))
                label = ''.join(f"{letter}{position + 1}" for position, letter in placement)
                error = single_frame_error(code, placement)
                table.labels.append(label)
                table.errors[label] = error
                table.syndromes[label] = syndrome_bits(code, error, low, window)
    logger.info(f"syndrome table: {len(table.labels)} errors, window {window}, unique={table.is_unique()}")
    return table


def classify_error(code, error):
    error = code.embed(error)
    if any(shifted_product(error, g) for g in code.measured.gens):
        return ACTIVE
    if not error:
        return PASSIVE
    passive = code.passive.as_matrix()
    stacked = passive.stack(ConvCheckMatrix([error], code.width).as_matrix())
    if rank_rational(stacked) == rank_rational(passive):
        return PASSIVE
    return UNDETECTED_LOGICAL
