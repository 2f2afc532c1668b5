"""Exact arithmetic over GF(2), GF(4), Laurent polynomials in D and rational functions of D."""
import logging
import re

import galois
import numpy as np

from errors import ParseError

GF2 = galois.GF(2)
GF4 = galois.GF(4)

# GF(4) elements as integers a + 2b meaning a + b*w, matching the galois GF(4) encoding
OMEGA = 2
OMEGA_BAR = 3
GF4_SYMBOLS = {'0': 0, '1': 1, 'w': OMEGA, 'ω': OMEGA, 'wb': OMEGA_BAR, 'W': OMEGA_BAR, 'ω̄': OMEGA_BAR}
GF4_NAMES = {0: '0', 1: '1', OMEGA: 'w', OMEGA_BAR: 'wb'}

logger = logging.getLogger('eaqcc-algebra')

_TERM = re.compile(r'^D(?:\^\{?\(?(-?\d+)\)?\}?)?$')


def _parse_exponent(term):
    if term == '1':
        return 0
    match = _TERM.match(term)
    if not match:
        raise ParseError(f"bad polynomial term '{term}'")
    return int(match.group(1)) if match.group(1) is not None else 1


def _format_monomial(exponent):
    if exponent == 0:
        return '1'
    if exponent == 1:
        return 'D'
    return f"D^{exponent}"


class LaurentPoly:
    """Polynomial over GF(2) in D and 1/D, stored as the set of exponents whose coefficient is 1."""

    __slots__ = ('terms',)

    def __init__(self, terms=()):
        self.terms = frozenset(terms)

    @classmethod
    def from_exponents(cls, exponents):
        """Sum of D^e over the exponents, repeated exponents cancelling in pairs."""
        terms = set()
        for exponent in exponents:
            terms ^= {exponent}
        return cls(terms)

    @classmethod
    def monomial(cls, exponent=0):
        return cls((exponent,))

    @classmethod
    def parse(cls, text):
        text = text.replace(' ', '')
        if text in ('', '0'):
            return cls()
        if text.startswith('(') and text.endswith(')'):
            text = text[1:-1]
        return cls.from_exponents(_parse_exponent(term) for term in text.split('+'))

    def __bool__(self):
        return bool(self.terms)

    @property
    def delay(self):
        if not self.terms:
            raise ValueError("delay of the zero polynomial is undefined")
        return min(self.terms)

    @property
    def degree(self):
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(self.terms)

    @property
    def span(self):
        return self.degree - self.delay

    def is_monomial(self):
        return len(self.terms) == 1

    def is_one(self):
        return self.terms == frozenset((0,))

    def coeff(self, exponent):
        return 1 if exponent in self.terms else 0

    def shift(self, k):
        return LaurentPoly(e + k for e in self.terms)

    def reverse(self):
        """p(1/D)."""
        return LaurentPoly(-e for e in self.terms)

    def normalized(self):
        """The delay-free representative D^(-del p) p."""
        return self.shift(-self.delay) if self.terms else self

    def reciprocal(self):
        """D^deg(f) f(1/D) for the delay-free part f."""
        base = self.normalized()
        return base.reverse().shift(base.degree) if base.terms else base

    def truncate(self, low, high):
        return LaurentPoly(e for e in self.terms if low <= e < high)

    def coefficients(self, low, high):
        return [1 if e in self.terms else 0 for e in range(low, high)]

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return LaurentPoly(self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentPoly()
        product = set()
        for a in self.terms:
            for b in other.terms:
                product ^= {a + b}
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are units of GF(2)[D, 1/D]")
            return LaurentPoly.monomial(self.delay * exponent)
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __divmod__(self, other):
        return poly_divmod(self, _coerce_poly(other))

    def __floordiv__(self, other):
        return poly_divmod(self, _coerce_poly(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, _coerce_poly(other))[1]

    def exact_div(self, other):
        quotient, remainder = poly_divmod(self, other)
        if remainder:
            raise ValueError(f"{other} does not divide {self}")
        return quotient

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == _coerce_poly(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return '0'
        return '+'.join(_format_monomial(e) for e in sorted(self.terms))


ZERO = LaurentPoly()
ONE = LaurentPoly((0,))
D = LaurentPoly((1,))


def _coerce_poly(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return ONE if int(value) % 2 else ZERO
    return None


def _to_galois(p):
    """Delay-free LaurentPoly to a galois GF(2) polynomial."""
    if not p:
        return galois.Poly.Zero(field=GF2)
    return galois.Poly.Degrees(sorted(p.terms, reverse=True), field=GF2)


def _from_galois(poly, shift=0):
    return LaurentPoly(int(degree) + shift for degree in poly.nonzero_degrees)


def poly_divmod(a, b):
    """Division with remainder on the shifted representatives: a = q*b + r with span(r) < span(b)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO, ZERO
    alpha, beta = a.delay, b.delay
    q0, r0 = divmod(_to_galois(a.normalized()), _to_galois(b.normalized()))
    return _from_galois(q0, alpha - beta), _from_galois(r0, alpha)


def poly_gcd(a, b):
    """Delay-free greatest common divisor; monomial units are stripped from both inputs."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not a:
        return b.normalized()
    if not b:
        return a.normalized()
    return _from_galois(galois.gcd(_to_galois(a.normalized()), _to_galois(b.normalized())))


def poly_lcm(a, b):
    a, b = a.normalized(), b.normalized()
    return (a * b).exact_div(poly_gcd(a, b))


def content(entries):
    """Delay-free gcd of the nonzero entries of a polynomial vector, ONE for the zero vector."""
    result = None
    for entry in entries:
        if entry:
            result = entry.normalized() if result is None else poly_gcd(result, entry)
            if result.is_one():
                return result
    return result if result is not None else ONE


def series_inverse(f, depth):
    """First `depth` power-series coefficients of 1/f for a delay-free f."""
    if not f or f.delay != 0:
        raise ValueError("series_inverse needs a delay-free polynomial")
    taps = [e for e in f.terms if e > 0]
    coefficients = []
    for t in range(depth):
        bit = 1 if t == 0 else 0
        for e in taps:
            if t - e >= 0:
                bit ^= coefficients[t - e]
        coefficients.append(bit)
    return coefficients


class RationalFn:
    """num/den over GF(2)(D) in canonical form: den delay-free and coprime to num."""

    __slots__ = ('num', 'den')

    def __init__(self, num, den=ONE):
        if isinstance(num, RationalFn) or isinstance(den, RationalFn):
            ratio = _coerce_rational(num) * _coerce_rational(den).inverse()
            num, den = ratio.num, ratio.den
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if num is None or den is None:
            raise TypeError("rational functions are built from Laurent polynomials")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        num = num.shift(-den.delay)
        den = den.normalized()
        divisor = poly_gcd(num, den)
        if not divisor.is_one():
            num = num.exact_div(divisor)
            den = den.exact_div(divisor)
        self.num, self.den = num, den

    @classmethod
    def parse(cls, text):
        text = text.replace(' ', '')
        depth = 0
        for i, char in enumerate(text):
            if char == '(':
                depth += 1
            elif char == ')':
                depth -= 1
            elif char == '/' and depth == 0:
                return cls(LaurentPoly.parse(text[:i]), LaurentPoly.parse(text[i + 1:]))
        return cls(LaurentPoly.parse(text))

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_one()

    def is_monomial(self):
        return self.is_polynomial() and self.num.is_monomial()

    def as_poly(self):
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def reverse(self):
        return RationalFn(self.num.reverse(), self.den.reverse())

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFn(self.den, self.num)

    def truncate(self, depth):
        """The first `depth` series terms of num/den starting at the delay of num."""
        if not self.num:
            return ZERO
        series = series_inverse(self.den, depth)
        low = self.num.delay
        result = set()
        for e in self.num.terms:
            for t, bit in enumerate(series):
                if bit and e + t < low + depth:
                    result ^= {e + t}
        return LaurentPoly(result)

    def __add__(self, other):
        other = _coerce_rational(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = _coerce_rational(other)
        if other is None:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rational(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_rational(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        other = _coerce_rational(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num.terms, self.den.terms))

    def __repr__(self):
        return f"RationalFn({str(self)!r})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _coerce_rational(value):
    if isinstance(value, RationalFn):
        return value
    poly = _coerce_poly(value)
    return RationalFn(poly) if poly is not None else None


def rational_reduce(r):
    """Canonical form of num/den; equal rationals have identical canonical forms."""
    return RationalFn(r.num, r.den)


def to_rational(entry):
    return entry if isinstance(entry, RationalFn) else RationalFn(entry)


def simplify(entry):
    """A rational entry with unit denominator becomes a LaurentPoly."""
    if isinstance(entry, RationalFn) and entry.is_polynomial():
        return entry.num
    return entry


def parse_entry(text):
    text = text.strip()
    if '/' in text:
        return simplify(RationalFn.parse(text))
    return LaurentPoly.parse(text)


def gf2_rank(matrix):
    """Rank over GF(2) of a binary matrix."""
    array = np.asarray(matrix, dtype=np.int64) % 2
    if array.size == 0:
        return 0
    return int(np.linalg.matrix_rank(GF2(array)))


def gf4_rank(matrix):
    array = GF4(np.asarray(matrix, dtype=np.int64))
    if array.size == 0:
        return 0
    return int(np.linalg.matrix_rank(array))


def gf4_conjugate(matrix):
    """Entrywise Frobenius map x -> x^2, swapping w and its conjugate."""
    return GF4(matrix) ** 2


def parse_gf4_symbol(symbol):
    if symbol not in GF4_SYMBOLS:
        raise ParseError(f"bad GF(4) symbol '{symbol}'")
    return GF4_SYMBOLS[symbol]


def parse_gf4_matrix(lines):
    rows = [[parse_gf4_symbol(symbol) for symbol in line.split()] for line in lines if line.strip()]
    if len({len(row) for row in rows}) > 1:
        raise ParseError("GF(4) matrix rows have different lengths")
    return GF4(np.array(rows, dtype=np.int64).reshape(len(rows), -1))


class Gf4Poly:
    """Polynomial a(D) + w b(D) over GF(4), with a and b binary Laurent polynomials."""

    __slots__ = ('a', 'b')

    def __init__(self, a=ZERO, b=ZERO):
        self.a = _coerce_poly(a) if not isinstance(a, LaurentPoly) else a
        self.b = _coerce_poly(b) if not isinstance(b, LaurentPoly) else b

    @classmethod
    def constant(cls, element):
        element = int(element)
        return cls(ONE if element & 1 else ZERO, ONE if element & 2 else ZERO)

    @classmethod
    def parse(cls, text):
        text = text.replace(' ', '')
        if text in ('', '0'):
            return cls()
        result = cls()
        for term in text.split('+'):
            coefficient, _, monomial = term.partition('*')
            if not monomial:
                if coefficient in GF4_SYMBOLS:
                    coefficient, monomial = coefficient, '1'
                else:
                    coefficient, monomial = '1', coefficient
            exponent = _parse_exponent(monomial)
            element = parse_gf4_symbol(coefficient)
            result = result + cls.constant(element).shift(exponent)
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def terms(self):
        return self.a.terms | self.b.terms

    @property
    def delay(self):
        return min(self.terms)

    @property
    def degree(self):
        return max(self.terms)

    def coeff(self, exponent):
        return self.a.coeff(exponent) + 2 * self.b.coeff(exponent)

    def shift(self, k):
        return Gf4Poly(self.a.shift(k), self.b.shift(k))

    def reverse(self):
        return Gf4Poly(self.a.reverse(), self.b.reverse())

    def conjugate(self):
        return Gf4Poly(self.a + self.b, self.b)

    def normalized(self):
        return self.shift(-self.delay) if self else self

    def __add__(self, other):
        other = _coerce_gf4(other)
        if other is None:
            return NotImplemented
        return Gf4Poly(self.a + other.a, self.b + other.b)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        other = _coerce_gf4(other)
        if other is None:
            return NotImplemented
        bd = self.b * other.b
        return Gf4Poly(self.a * other.a + bd, self.a * other.b + self.b * other.a + bd)

    __rmul__ = __mul__

    def exact_div(self, other):
        quotient, remainder = divmod(_gf4_to_galois(self.normalized()), _gf4_to_galois(other.normalized()))
        if remainder.nonzero_degrees.size:
            raise ValueError(f"{other} does not divide {self}")
        return _gf4_from_galois(quotient, self.delay - other.delay)

    def __eq__(self, other):
        other = _coerce_gf4(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a.terms, self.b.terms))

    def __repr__(self):
        return f"Gf4Poly({str(self)!r})"

    def __str__(self):
        if not self:
            return '0'
        parts = []
        for e in sorted(self.terms):
            name = GF4_NAMES[self.coeff(e)]
            if name == '1':
                parts.append(_format_monomial(e))
            elif e == 0:
                parts.append(name)
            else:
                parts.append(f"{name}*{_format_monomial(e)}")
        return '+'.join(parts)


def _coerce_gf4(value):
    if isinstance(value, Gf4Poly):
        return value
    poly = _coerce_poly(value)
    if poly is not None:
        return Gf4Poly(poly, ZERO)
    return None


def _gf4_to_galois(p):
    if not p:
        return galois.Poly.Zero(field=GF4)
    return galois.Poly([p.coeff(e) for e in range(p.degree, -1, -1)], field=GF4)


def _gf4_from_galois(poly, shift=0):
    a, b = set(), set()
    for degree, coefficient in zip(poly.nonzero_degrees, poly.nonzero_coeffs):
        exponent = int(degree) + shift
        if int(coefficient) & 1:
            a.add(exponent)
        if int(coefficient) & 2:
            b.add(exponent)
    return Gf4Poly(LaurentPoly(a), LaurentPoly(b))


def gf4_poly_gcd(a, b):
    if not a:
        return b.normalized()
    if not b:
        return a.normalized()
    return _gf4_from_galois(galois.gcd(_gf4_to_galois(a.normalized()), _gf4_to_galois(b.normalized())))


def gf4_content(entries):
    result = None
    for entry in entries:
        if entry:
            result = entry.normalized() if result is None else gf4_poly_gcd(result, entry)
    return result if result is not None else Gf4Poly(ONE)
