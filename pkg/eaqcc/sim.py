import itertools
import logging
from dataclasses import asdict, dataclass

import numpy as np

from algebra import LaurentPoly, to_rational
from circuits import encode_stabilizer
from conv_core import ConvCheckMatrix
from errors import ChannelError
from grandfather import ACTIVE, PASSIVE, GrandfatherCode, classify_error
from pauli import ConvGenerator, shifted_product

logger = logging.getLogger('eaqcc-sim')


@dataclass(frozen=True)
class PauliChannel:
    p_x: float
    p_y: float
    p_z: float

    def __post_init__(self):
        probabilities = (self.p_x, self.p_y, self.p_z)
        if any(p < 0 for p in probabilities) or sum(probabilities) > 1 + 1e-12:
            raise ChannelError(f"invalid Pauli channel {probabilities}")

    @classmethod
    def depolarizing(cls, p):
        return cls(p / 3, p / 3, p / 3)

    @property
    def p_error(self):
        return self.p_x + self.p_y + self.p_z

    def distribution(self):
        return [max(0.0, 1 - self.p_error), self.p_x, self.p_y, self.p_z]


@dataclass
class TrialReport:
    trials: int
    frames: int
    raw_error_rate: float
    residual_logical_rate: float
    syndrome_miss_rate: float
    seed: int = None
    truncate_depth: int = None

    def to_dict(self):
        return asdict(self)


def sample_errors(channel, qubits_per_frame, frames, seed=None, noisy=None, rng=None):
    """i.i.d. Pauli errors on the noisy columns of every frame; other columns stay error-free."""
    rng = rng if rng is not None else np.random.default_rng(seed)
    noisy = list(range(qubits_per_frame)) if noisy is None else list(noisy)
    outcomes = rng.choice(4, size=(frames, len(noisy)), p=channel.distribution())
    z = [set() for _ in range(qubits_per_frame)]
    x = [set() for _ in range(qubits_per_frame)]
    for t, position in zip(*np.nonzero(outcomes)):
        column = noisy[position]
        outcome = outcomes[t, position]
        if outcome in (2, 3):
            z[column].add(int(t))
        if outcome in (1, 2):
            x[column].add(int(t))
    return ConvGenerator([LaurentPoly(s) for s in z], [LaurentPoly(s) for s in x])


def error_weight(error):
    """Number of (frame, qubit) positions with a non-identity Pauli."""
    return sum(len(z.terms | x.terms) for z, x in zip(error.z, error.x))


def syndromes_of(code, error):
    """sigma_g(D) = (e . g)(D) for each measured generator; the D^s coefficient is the outcome of D^s g."""
    error = code.embed(error)
    return [shifted_product(error, g) for g in code.measured.gens]


def window_bits(sigmas, frame, low, window):
    """Syndrome key for an error in `frame`: bit (g, t) comes from the measurement of g starting at frame - t."""
    return ''.join(str(sigma.coeff(frame - t)) for sigma in sigmas for t in range(low, low + window))


def table_decode(code, table, error, frames, stride=1):
    """Greedy frame-by-frame lookup; returns (correction, misses)."""
    correction = ConvGenerator.zero(code.width)
    misses = 0
    for frame in range(0, frames, stride):
        sigmas = syndromes_of(code, error + correction)
        bits = window_bits(sigmas, frame, table.low, table.window)
        if '1' not in bits:
            continue
        label = table.lookup(bits)
        if label is None:
            misses += 1
            logger.debug(f"frame {frame}: syndrome {bits} not in table")
            continue
        correction = correction + table.errors[label].shift(frame)
        logger.debug(f"frame {frame}: syndrome {bits} -> {label}")
    return correction, misses


def _outcome(code, residual, misses):
    verdict = classify_error(code, residual)
    if verdict == ACTIVE or misses:
        return 'miss'
    return 'ok' if verdict == PASSIVE else 'logical'


def _tally(code, table, errors, frames, stride, decoder):
    counts = {'ok': 0, 'miss': 0, 'logical': 0}
    raw = 0
    for error in errors:
        raw += error_weight(error)
        correction, misses = decoder(code, table, error, frames, stride)
        counts[_outcome(code, error + correction, misses)] += 1
    return counts, raw


def _report(counts, raw, trials, frames, code, seed=None, truncate_depth=None):
    uses = max(trials * frames * len(code.noisy), 1)
    trials = max(trials, 1)
    return TrialReport(trials=trials, frames=frames, raw_error_rate=raw / uses,
                       residual_logical_rate=counts['logical'] / trials,
                       syndrome_miss_rate=counts['miss'] / trials, seed=seed, truncate_depth=truncate_depth)


def default_stride(table):
    return table.window


def run_correction(code, table, channel, trials, frames, seed=0, stride=None, decoder=table_decode,
                   truncate_depth=None):
    """Monte-Carlo trials; each trial draws from its own child of SeedSequence(seed)."""
    stride = stride or default_stride(table)
    children = np.random.SeedSequence(seed).spawn(trials)
    errors = (sample_errors(channel, code.width, frames, noisy=code.noisy, rng=np.random.default_rng(child))
              for child in children)
    counts, raw = _tally(code, table, errors, frames, stride, decoder)
    report = _report(counts, raw, trials, frames, code, seed, truncate_depth)
    logger.info(f"{trials} trials over {frames} frames: logical {report.residual_logical_rate:.4f}, "
                f"miss {report.syndrome_miss_rate:.4f}")
    return report


def exhaustive_errors(code, table, frames, stride):
    """Every single-qubit error at each decoding frame, then every pair in two consecutive decoding frames."""
    singles = [table.errors[label] for label in table.labels if sum(ch in 'XYZ' for ch in label) == 1]
    for frame in range(0, frames, stride):
        for error in singles:
            yield error.shift(frame)
    if frames > stride:
        for first, second in itertools.product(singles, repeat=2):
            yield first + second.shift(stride)


def run_exhaustive(code, table, frames=None, stride=None, decoder=table_decode):
    stride = stride or default_stride(table)
    frames = frames or 2 * stride
    errors = list(exhaustive_errors(code, table, frames, stride))
    counts, raw = _tally(code, table, errors, frames, stride, decoder)
    report = _report(counts, raw, len(errors), frames, code)
    logger.info(f"exhaustive run: {len(errors)} patterns, stride {stride}, logical "
                f"{counts['logical']}, misses {counts['miss']}")
    return report


def _truncate_entry(entry, depth):
    entry = to_rational(entry)
    return entry.num if entry.is_polynomial() else entry.truncate(depth)


def truncated_stabilizer(code, depth):
    """Encoded full-stream stabilizer of an entanglement-assisted code with rational entries cut to `depth` terms."""
    encoded = encode_stabilizer(code)
    truncated = [ConvGenerator([_truncate_entry(e, depth) for e in g.z], [_truncate_entry(e, depth) for e in g.x])
                 for g in encoded.gens]
    return ConvCheckMatrix(truncated, encoded.n)


def simulation_code(code, truncate_depth):
    """Receiver-side view of an entanglement-assisted code: the receiver's ebit halves never see errors."""
    stabilizer = truncated_stabilizer(code, truncate_depth)
    return GrandfatherCode.from_stabilizer(stabilizer, noisy=range(code.c, code.c + code.n))
