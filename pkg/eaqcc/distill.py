import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra import ONE, ZERO, LaurentPoly, content
from conv_core import ConvCheckMatrix, shifted_omega
from errors import MalformedSplitError, RelationError
from grandfather import GrandfatherCode, syndrome_table
from pauli import ConvGenerator, shifted_product

logger = logging.getLogger('eaqcc-distill')


@dataclass
class DistillConstruction:
    """Commuting stabilizer on n noisy columns followed by m noiseless ones."""

    stabilizer: ConvCheckMatrix
    n: int
    m: int
    pairs: int = 0
    isotropic: int = 0
    details: dict = field(default_factory=dict)

    @property
    def protocol_yield(self):
        return Fraction(self.n - len(self.stabilizer), self.n)

    @property
    def memory(self):
        return max((e.degree for g in self.stabilizer.gens for e in g.entries() if e), default=0)

    @property
    def catalytic_ebits(self):
        return (self.n + self.m) * self.memory

    def noiseless_columns(self):
        return list(range(self.n, self.n + self.m))

    def summary(self):
        return {
            'n': self.n,
            'm': self.m,
            'yield': str(self.protocol_yield),
            'catalytic_ebits': self.catalytic_ebits,
            'noiseless_columns': [column + 1 for column in self.noiseless_columns()],
        }


def positive_part(p):
    """Terms with non-negative exponent."""
    return LaurentPoly(e for e in p.terms if e >= 0)


def _check_commuting(stabilizer):
    if not shifted_omega(stabilizer).is_zero():
        raise RelationError("augmented generators do not commute")


def augment_single(u):
    self_product = shifted_product(u, u)
    return u.extend([positive_part(self_product)], [ONE])


def augment_multi(U, lower=False):
    """Append one noiseless column per generator: identity X block, shifted products on one side of the
    diagonal and positive parts of the self-products on it."""
    m = len(U)
    gens = []
    for i, u in enumerate(U.gens):
        z_tail = []
        for j, v in enumerate(U.gens):
            if j == i:
                z_tail.append(positive_part(shifted_product(u, u)))
            elif (j > i) != lower:
                z_tail.append(shifted_product(u, v))
            else:
                z_tail.append(ZERO)
        x_tail = [ONE if j == i else ZERO for j in range(m)]
        gens.append(u.extend(z_tail, x_tail))
    stabilizer = ConvCheckMatrix(gens, U.n + m)
    _check_commuting(stabilizer)
    logger.info(f"augmented {m} generators on {U.n} qubits with {m} noiseless columns")
    return DistillConstruction(stabilizer, U.n, m, details={'form': 'lower' if lower else 'upper'})


def single_construction(u):
    stabilizer = ConvCheckMatrix([augment_single(u)], u.n + 1)
    _check_commuting(stabilizer)
    return DistillConstruction(stabilizer, u.n, 1)


def unassisted(H):
    """A commuting stabilizer used directly, with no noiseless columns."""
    _check_commuting(H)
    return DistillConstruction(H, H.n, 0)


def _pure_type(gen):
    has_z, has_x = any(gen.z), any(gen.x)
    if has_z and has_x:
        return None
    return 'x' if has_x else 'z'


def _divide_content(gen):
    divisor = content(gen.entries())
    if divisor.is_one():
        return gen
    return ConvGenerator([e.exact_div(divisor) if e else e for e in gen.z],
                         [e.exact_div(divisor) if e else e for e in gen.x])


def css_pairing(W, p):
    """Split pure-Z rows (first p) and pure-X rows into nonorthogonal pairs and leftover isotropic rows.

    Returns (pairs, isotropic) with pairs as (u, v) generator tuples.
    """
    rows = list(W.gens)
    for index, gen in enumerate(rows):
        expected = 'z' if index < p else 'x'
        if any(gen.entries()) and _pure_type(gen) != expected:
            raise MalformedSplitError(f"row {index + 1} is not a pure {expected.upper()} row")
    pairs, isotropic = [], []
    while rows:
        first = rows.pop(0)
        partner = next((j for j, w in enumerate(rows) if shifted_product(first, w)), None)
        if partner is None:
            isotropic.append(first)
            continue
        second = rows.pop(partner)
        updated = []
        for w in rows:
            same, other = (first, second) if _pure_type(w) == _pure_type(first) else (second, first)
            factor = shifted_product(w, other)
            if factor:
                w = w.scale(shifted_product(same, other)) + same.scale(factor)
                w = _divide_content(w)
            updated.append(w)
        rows = updated
        pairs.append((first, second))
        logger.debug(f"pair {len(pairs)}: f = {shifted_product(first, second)}")
    return pairs, isotropic


def css_distill_augment(W, p):
    """Pairs get one noiseless column each: f_i(D) on the first row's Z side and 1 on its partner's X side."""
    pairs, isotropic = css_pairing(W, p)
    c = len(pairs)
    gens = []
    for i, (u, v) in enumerate(pairs):
        f = shifted_product(u, v)
        gens.append(u.extend([f if j == i else ZERO for j in range(c)], [ZERO] * c))
    for i, (u, v) in enumerate(pairs):
        gens.append(v.extend([ZERO] * c, [ONE if j == i else ZERO for j in range(c)]))
    gens += [u.extend([ZERO] * c, [ZERO] * c) for u in isotropic]
    stabilizer = ConvCheckMatrix(gens, W.n + c)
    _check_commuting(stabilizer)
    logger.info(f"CSS-like distillation: {c} pairs, {len(isotropic)} isotropic rows, yield "
                f"{Fraction(W.n - len(gens), W.n)}")
    return DistillConstruction(stabilizer, W.n, c, pairs=c, isotropic=len(isotropic))


def protocol_yield(construction):
    return construction.protocol_yield


def distillation_code(construction):
    """The receiver-side correction code: the stabilizer with errors confined to the noisy columns."""
    return GrandfatherCode.from_stabilizer(construction.stabilizer, noisy=range(construction.n))


def distillation_table(construction, window=None):
    return syndrome_table(distillation_code(construction), 1, window)
