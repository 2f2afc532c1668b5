import pytest

from algebra import LaurentPoly, RationalFn
from conv_core import ConvCheckMatrix, shifted_omega
from errors import GateError, ParameterError
from gates import ConvGate
from grandfather import (ACTIVE, PASSIVE, UNDETECTED_LOGICAL, build_grandfather, classify_error, syndrome_bits,
                         syndrome_table)
from pauli import ConvGenerator

EXPECTED_TABLE = [
    ("X1", "001100"), ("Y1", "111100"), ("Z1", "110000"),
    ("X2", "000100"), ("Y2", "000110"), ("Z2", "000010"),
    ("X3", "000001"), ("Y3", "010001"), ("Z3", "010000"),
    ("X4", "001001"), ("Y4", "101011"), ("Z4", "100010"),
    ("X5", "001101"), ("Y5", "111111"), ("Z5", "110010"),
]


def sender_rows(matrix, c=1):
    return matrix.restrict(list(range(c, matrix.n)))


def test_encoded_subgroups(grandfather_code):
    code = grandfather_code
    assert (code.n, code.k, code.l, code.r, code.c, code.a) == (5, 1, 1, 1, 1, 1)
    expected = ConvCheckMatrix.parse(
        "frame n=5\n"
        "0, 0, 0, 0, 0 | 1+D, 0, D, 1, 1+D\n"
        "1+D, D, 0, 1, 1+D | 0, 0, 0, 0, 0\n"
        "0, 0, D, D, D | 0, 1, 0, 1, 1\n")
    assert sender_rows(code.measured) == expected
    gauge = ConvCheckMatrix.parse("frame n=5\n0, D^-1, 1, D^-1, 0 | 0, 0, 0, 0, 0\n0, D^-1, 0, 0, 0 | 0, 0, 1, 0, 0\n")
    assert sender_rows(code.subgroups['S_G']) == gauge
    classical = ConvCheckMatrix.parse("frame n=5\n1, 1+D^-1, 0, 1+D^-1, 0 | 0, 0, 0, 0, 0\n")
    assert sender_rows(code.subgroups['S_C']) == classical


def test_ebit_rows_carry_the_receiver_column(grandfather_code):
    z_row, x_row = grandfather_code.subgroups['S_E'].gens
    assert z_row.z[0] == LaurentPoly.parse("1") and not z_row.x[0]
    assert x_row.x[0] == LaurentPoly.parse("1") and not x_row.z[0]


def anticommuting_pairs(omega):
    return {frozenset((i, j)) for i in range(omega.n_rows) for j in range(omega.n_cols) if omega[i, j]}


def test_encoding_keeps_the_relations(grandfather_code):
    code = grandfather_code
    measured_and_passive = ConvCheckMatrix(code.measured.gens + code.passive.gens, code.width)
    ebit_pair, gauge_pair = frozenset((0, 1)), frozenset((4, 5))
    assert anticommuting_pairs(shifted_omega(measured_and_passive)) == {gauge_pair}
    assert anticommuting_pairs(shifted_omega(sender_rows(measured_and_passive))) == {ebit_pair, gauge_pair}


def test_syndrome_table(grandfather_code):
    table = syndrome_table(grandfather_code)
    assert (table.low, table.window) == (0, 2)
    assert table.rows() == EXPECTED_TABLE
    assert table.is_unique()
    assert table.lookup("000110") == "Y2"
    assert table.lookup("101010") is None


def test_two_qubit_table_has_every_pair(grandfather_code):
    table = syndrome_table(grandfather_code, weight=2)
    assert len(table.labels) == 15 + 10 * 9
    assert "X1Z5" in table.labels


def test_syndromes_add(grandfather_code):
    code = grandfather_code
    table = syndrome_table(code)
    combined = syndrome_bits(code, table.errors["X1"] + table.errors["Z3"], 0, 2)
    expected = ''.join(str(int(a) ^ int(b)) for a, b in zip(table.syndromes["X1"], table.syndromes["Z3"]))
    assert combined == expected


def test_error_classification(grandfather_code):
    code = grandfather_code
    table = syndrome_table(code)
    assert classify_error(code, table.errors["X1"]) == ACTIVE
    assert classify_error(code, ConvGenerator.zero(code.n)) == PASSIVE
    gauge_element = ConvGenerator.from_frames(["IZIZI", "IIZII"])
    assert classify_error(code, gauge_element) == PASSIVE
    assert classify_error(code, code.logical.gens[0]) == UNDETECTED_LOGICAL


def test_parameter_identity_is_enforced():
    with pytest.raises(ParameterError):
        build_grandfather(5, 1, 1, 1, 1, 2, [])


def test_infinite_depth_encoders_are_rejected():
    rcnot = ConvGate('RCNOT', 0, poly=RationalFn(LaurentPoly.parse("1"), LaurentPoly.parse("1+D")))
    with pytest.raises(GateError):
        build_grandfather(2, 1, 0, 0, 0, 1, [rcnot])


def test_identity_encoder_leaves_the_initial_layout():
    code = build_grandfather(3, 1, 0, 0, 1, 1, [])
    assert sender_rows(code.subgroups['S_E']).paulis() == ["ZII", "XII"]
    assert sender_rows(code.subgroups['S_I']).paulis() == ["IZI"]
    assert sender_rows(code.logical).paulis() == ["IIZ", "IIX"]


def test_plain_stabilizer_table(forney_code):
    table = syndrome_table(forney_code)
    assert table.window == 2
    assert len(table.labels) == 9
    assert table.is_unique()
    assert dict(table.rows())["X1"] == "0011"
