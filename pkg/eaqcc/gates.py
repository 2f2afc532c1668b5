import logging
from dataclasses import dataclass

from algebra import ONE, LaurentPoly, RationalFn, simplify, to_rational
from block_ea import BlockGate
from conv_core import ConvCheckMatrix
from errors import GateError, ParseError
from pauli import ConvGenerator

logger = logging.getLogger('eaqcc-circuits')

TWO_QUBIT = ('CNOT', 'CPHASE', 'SWAP')
SELF_INVERSE = ('CNOT', 'H', 'P', 'SWAP', 'CPHASE', 'CPHASESELF')
KINDS = ('CNOT', 'H', 'P', 'CPHASE', 'CPHASESELF', 'SWAP', 'DELAY', 'RCNOT')


@dataclass(frozen=True)
class ConvGate:
    """One gate applied in every frame; `poly` carries f(D) or the RCNOT rational, `power` the integer argument."""

    kind: str
    i: int
    j: int = None
    poly: object = None
    power: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GateError(f"unknown gate kind {self.kind}")
        if self.kind in TWO_QUBIT and (self.j is None or self.i == self.j):
            raise GateError(f"{self.kind} needs two distinct qubits")
        if self.kind in ('CNOT', 'CPHASE') and not self.poly:
            raise GateError(f"{self.kind} needs a nonzero polynomial")
        if self.kind == 'RCNOT':
            r = to_rational(self.poly) if self.poly is not None else None
            if not r or not r.num.is_monomial():
                raise GateError(f"RCNOT needs a rational with monomial numerator, got {self.poly}")
        if self.kind in ('CPHASESELF', 'DELAY') and self.power is None:
            raise GateError(f"{self.kind} needs an integer argument")

    def offset(self, k):
        j = None if self.j is None else self.j + k
        return ConvGate(self.kind, self.i + k, j, self.poly, self.power)

    def qubits(self):
        return (self.i,) if self.j is None else (self.i, self.j)

    def __str__(self):
        if self.kind in ('CNOT', 'CPHASE'):
            return f"{self.kind} {self.i + 1} {self.j + 1} {self.poly}"
        if self.kind == 'SWAP':
            return f"SWAP {self.i + 1} {self.j + 1}"
        if self.kind in ('CPHASESELF', 'DELAY'):
            return f"{self.kind} {self.i + 1} {self.power}"
        if self.kind == 'RCNOT':
            r = to_rational(self.poly)
            return f"RCNOT {self.i + 1} ({r.num})/({r.den})"
        return f"{self.kind} {self.i + 1}"


def parse_gate(line):
    parts = line.split()
    if not parts:
        raise ParseError("empty gate line")
    kind = parts[0].upper().replace('_', '')
    try:
        if kind in ('CNOT', 'CPHASE'):
            poly = LaurentPoly.parse(''.join(parts[3:])) if len(parts) > 3 else ONE
            return ConvGate(kind, int(parts[1]) - 1, int(parts[2]) - 1, poly)
        if kind == 'SWAP':
            return ConvGate(kind, int(parts[1]) - 1, int(parts[2]) - 1)
        if kind in ('CPHASESELF', 'DELAY'):
            return ConvGate(kind, int(parts[1]) - 1, power=int(parts[2]))
        if kind == 'RCNOT':
            return ConvGate(kind, int(parts[1]) - 1, poly=RationalFn.parse(''.join(parts[2:])))
        if kind in ('H', 'P'):
            return ConvGate(kind, int(parts[1]) - 1)
    except (IndexError, ValueError) as e:
        raise ParseError(f"bad gate line '{line}': {e}")
    raise ParseError(f"unknown gate '{parts[0]}'")


def parse_gates(text):
    return [parse_gate(line.split('#', 1)[0]) for line in text.splitlines() if line.split('#', 1)[0].strip()]


def format_gates(gates):
    return '\n'.join(str(g) for g in gates) + ('\n' if gates else '')


def _transform_columns(z, x, gate):
    i, j = gate.i, gate.j
    if gate.kind == 'CNOT':
        f = gate.poly
        x[j] = x[j] + f * x[i]
        z[i] = z[i] + f.reverse() * z[j]
    elif gate.kind == 'H':
        z[i], x[i] = x[i], z[i]
    elif gate.kind == 'P':
        z[i] = z[i] + x[i]
    elif gate.kind == 'CPHASE':
        f = gate.poly
        z_j = z[j] + f * x[i]
        z[i] = z[i] + f.reverse() * x[j]
        z[j] = z_j
    elif gate.kind == 'CPHASESELF':
        k = gate.power
        z[i] = z[i] + (LaurentPoly.monomial(k) + LaurentPoly.monomial(-k)) * x[i]
    elif gate.kind == 'SWAP':
        z[i], z[j] = z[j], z[i]
        x[i], x[j] = x[j], x[i]
    elif gate.kind == 'DELAY':
        shift = LaurentPoly.monomial(gate.power)
        z[i], x[i] = shift * z[i], shift * x[i]
    else:
        r = to_rational(gate.poly)
        x[i] = r * x[i]
        z[i] = r.reverse().inverse() * z[i]


def apply_conv_gate(M, gate):
    for q in gate.qubits():
        if not 0 <= q < M.n:
            raise GateError(f"gate '{gate}' addresses qubit outside 1..{M.n}")
    gens = []
    for g in M.gens:
        z, x = list(g.z), list(g.x)
        _transform_columns(z, x, gate)
        gens.append(ConvGenerator(z, x))
    return ConvCheckMatrix(gens, M.n)


def apply_conv_gates(M, gates, offset=0):
    for gate in gates:
        M = apply_conv_gate(M, gate.offset(offset) if offset else gate)
    return M


def column_scale_gates(i, gamma):
    """Gates multiplying X column i by gamma(D) and Z column i by 1/gamma(1/D)."""
    gamma = simplify(gamma)
    gates = []
    if gamma.delay:
        gates.append(ConvGate('DELAY', i, power=gamma.delay))
    base = gamma.normalized()
    if not base.is_one():
        rcnot = RationalFn(LaurentPoly.monomial(base.degree), base.reciprocal())
        gates += [ConvGate('H', i), ConvGate('RCNOT', i, poly=rcnot), ConvGate('H', i)]
    return gates


def inverse_gate(gate):
    if gate.kind in SELF_INVERSE:
        return [gate]
    if gate.kind == 'DELAY':
        return [ConvGate('DELAY', gate.i, power=-gate.power)]
    r = to_rational(gate.poly)
    gates = []
    if r.num.delay:
        gates.append(ConvGate('DELAY', gate.i, power=-r.num.delay))
    return gates + column_scale_gates(gate.i, r.den)


def inverse_gates(gates):
    return [g for gate in reversed(gates) for g in inverse_gate(gate)]


def is_finite_depth(gates):
    return not any(g.kind == 'RCNOT' for g in gates)


def realize_infinite_depth(r):
    """Per-frame CNOT pattern realizing 1/f(D) over a window of N = deg f - del f + 1 qubits.

    Returns (scratch_frames, gates) where the gates are BlockGates on the window, the newest qubit last.
    """
    r = to_rational(r)
    if not r.num.is_monomial():
        raise GateError(f"{r} is not of the form D^m/f(D)")
    f = r.den
    window = f.span + 1
    taps = sorted(e for e in f.terms if e > 0)
    gates = [BlockGate('CNOT', window - 1 - e, window - 1) for e in reversed(taps)]
    logger.debug(f"1/({f}) realized on a window of {window} qubits with {len(gates)} CNOTs")
    return window - 1, gates


def sliding_window_response(r, frames):
    """Impulse response of the window realization: the bit left on the newest qubit after each frame."""
    scratch, gates = realize_infinite_depth(r)
    register = [0] * (scratch + 1)
    response = []
    for t in range(frames):
        register = register[1:] + [1 if t == 0 else 0]
        for gate in gates:
            register[gate.j] ^= register[gate.i]
        response.append(register[-1])
    return response


def transform_generator(gen, gate):
    z, x = list(gen.z), list(gen.x)
    _transform_columns(z, x, gate)
    return ConvGenerator(z, x)
