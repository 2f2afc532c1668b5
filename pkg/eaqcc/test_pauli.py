import numpy as np
import pytest

from algebra import LaurentPoly
from errors import FrameMismatchError, ParseError
from pauli import (BlockCheckMatrix, ConvGenerator, gf4_import_block, gf4_import_conv, p2b_forward, p2b_inverse,
                   shifted_product, symplectic_matrix, symplectic_product)


def poly(text):
    return LaurentPoly.parse(text)


def test_pauli_to_binary():
    vector = p2b_forward("XZZXI")
    assert list(vector.z) == [0, 1, 1, 0, 0]
    assert list(vector.x) == [1, 0, 0, 1, 0]
    assert str(vector) == "01100|10010"
    assert p2b_inverse(p2b_forward("IXYZ")) == "IXYZ"
    with pytest.raises(ParseError):
        p2b_forward("XQ")


def test_symplectic_product():
    assert symplectic_product(p2b_forward("XI"), p2b_forward("ZI")) == 1
    assert symplectic_product(p2b_forward("XX"), p2b_forward("ZZ")) == 0
    assert symplectic_product(p2b_forward("Y"), p2b_forward("Y")) == 0
    with pytest.raises(FrameMismatchError):
        symplectic_product(p2b_forward("X"), p2b_forward("XX"))


def test_five_qubit_generators_commute(five_qubit):
    assert not symplectic_matrix(five_qubit).any()
    assert five_qubit.rank() == 4


def test_css_stack():
    H = BlockCheckMatrix.css([[1, 1, 0]], [[0, 1, 1]])
    assert H.paulis() == ["ZZI", "IXX"]


def test_gf4_block_import():
    H = gf4_import_block([[1, 2]])
    assert H.paulis() == ["XZ", "ZY"]
    assert not symplectic_matrix(H).any()


def test_generator_from_frames():
    u = ConvGenerator.from_frames(["ZXZI", "ZZIZ"])
    assert u == ConvGenerator.parse("1+D, D, 1, D | 0, 1, 0, 0")
    assert u.pauli_text() == "ZXZI|ZZIZ"
    assert u.shift(2).frames() == ["ZXZI", "ZZIZ"]
    assert u.shift(2).delay() == 2


def test_shifted_products_of_single_qubit_generators():
    u = ConvGenerator([poly("D")], [poly("1+D^3")])
    v = ConvGenerator([poly("1+D")], [poly("D^3")])
    assert shifted_product(u, u) == poly("D^-2+D^-1+D+D^2")
    assert shifted_product(v, v) == poly("D^-3+D^-2+D^2+D^3")
    assert shifted_product(v, u) == poly("D^-3+D^-2+1+D+D^2")
    assert shifted_product(u, v) == shifted_product(v, u).reverse()


def test_shifted_products_of_four_qubit_generators(gf4_pair):
    u, v = gf4_pair.gens
    assert shifted_product(u, u) == poly("D^-1+D")
    assert shifted_product(v, v) == poly("D^-1+D")
    assert shifted_product(u, v) == poly("D^-1")


def test_shifted_product_frame_mismatch():
    with pytest.raises(FrameMismatchError):
        shifted_product(ConvGenerator.zero(2), ConvGenerator.zero(3))


def test_gf4_conv_import_puts_the_conjugate_image_first():
    u, v = gf4_import_conv([["1+D", "wb+D", "1", "D"]])
    assert u == ConvGenerator.parse("1+D, D, 1, D | 0, 1, 0, 0")
    assert v == ConvGenerator.parse("0, 1, 0, 0 | 1+D, 1+D, 1, D")
    assert u.pauli_text() == "ZXZI|ZZIZ"
    assert v.pauli_text() == "XYXI|XXIX"


def test_generator_arithmetic():
    u = ConvGenerator.parse("1, 0 | 0, D")
    assert not (u + u)
    assert u.scale(poly("1+D")) == ConvGenerator.parse("1+D, 0 | 0, D+D^2")
    assert u.extend([poly("D")], [poly("1")]).n == 3
    assert u.restrict([1]) == ConvGenerator.parse("0 | D")
    assert np.array_equal(p2b_forward("Y").as_array(), [1, 1])


def anticommute_by_letters(p, q):
    clashes = sum(1 for a, b in zip(p, q) if a != 'I' and b != 'I' and a != b)
    return clashes % 2


def test_every_two_qubit_pauli_round_trips():
    letters = "IXYZ"
    paulis = [a + b for a in letters for b in letters]
    for p in paulis:
        assert p2b_inverse(p2b_forward(p)) == p
    for p in paulis:
        for q in paulis:
            assert symplectic_product(p2b_forward(p), p2b_forward(q)) == anticommute_by_letters(p, q)


def random_generator(rng, n):
    entries = [LaurentPoly(e for e in range(-2, 3) if rng.random() < 0.3) for _ in range(2 * n)]
    return ConvGenerator(entries[:n], entries[n:])


def test_shifted_product_scalar_identities():
    rng = np.random.default_rng(21)
    for _ in range(80):
        u, v, w = (random_generator(rng, 3) for _ in range(3))
        f = LaurentPoly(e for e in range(-2, 3) if rng.random() < 0.5)
        assert shifted_product(u.scale(f), v) == f * shifted_product(u, v)
        assert shifted_product(u, v.scale(f)) == f.reverse() * shifted_product(u, v)
        assert shifted_product(u, v) == shifted_product(v, u).reverse()
        assert shifted_product(u + w, v) == shifted_product(u, v) + shifted_product(w, v)
        assert shifted_product(u.shift(1), v.shift(1)) == shifted_product(u, v)
        assert 0 not in shifted_product(u, u).terms
