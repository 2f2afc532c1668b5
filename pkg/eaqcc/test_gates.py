import numpy as np
import pytest

from algebra import ONE, LaurentPoly, RationalFn, series_inverse
from conv_core import ConvCheckMatrix, shifted_omega
from errors import GateError, ParseError
from formats import parse_gate_list, read_text
from gates import (ConvGate, apply_conv_gate, apply_conv_gates, column_scale_gates, format_gates, inverse_gates,
                   is_finite_depth, parse_gate, realize_infinite_depth, sliding_window_response)
from pauli import ConvGenerator

FINITE_GATES = ["CNOT 1 2 D", "CNOT 3 1 1+D^2", "H 2", "P 3", "CPHASE 1 3 D^-1+D", "CPHASESELF 2 1", "SWAP 1 3",
                "DELAY 2 1"]


def check(text, n=3):
    return ConvCheckMatrix.parse(f"frame n={n}\n{text}")


def random_check(rng, rows, n):
    gens = []
    for _ in range(rows):
        entries = [LaurentPoly(e for e in range(0, 3) if rng.random() < 0.4) for _ in range(2 * n)]
        gens.append(ConvGenerator(entries[:n], entries[n:]))
    return ConvCheckMatrix(gens, n)


def test_gate_column_rules():
    M = check("0, 0, 0 | 1, 0, 0\n0, 1, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("CNOT 1 2 D")) == check("0, 0, 0 | 1, D, 0\nD^-1, 1, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("CNOT 2 1 D")) == M
    assert apply_conv_gate(M, parse_gate("H 1")) == check("1, 0, 0 | 0, 0, 0\n0, 1, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("P 1")) == check("1, 0, 0 | 1, 0, 0\n0, 1, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("CPHASE 1 3 D")) == check("0, 0, D | 1, 0, 0\n0, 1, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("CPHASESELF 1 2")) == check(
        "D^-2+D^2, 0, 0 | 1, 0, 0\n0, 1, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("SWAP 1 2")) == check("0, 0, 0 | 0, 1, 0\n1, 0, 0 | 0, 0, 0")
    assert apply_conv_gate(M, parse_gate("DELAY 2 3")) == check("0, 0, 0 | 1, 0, 0\n0, D^3, 0 | 0, 0, 0")


def test_rational_cnot_scales_the_x_and_z_columns():
    M = check("0, 0, 0 | 1, 1, 1\n1, 1, 0 | 0, 0, 0")
    r = RationalFn(ONE, LaurentPoly.parse("1+D"))
    after = apply_conv_gate(M, ConvGate('RCNOT', 2, poly=r))
    assert after.gens[0].x[2] == r
    assert after.gens[1] == M.gens[1]
    M = check("0, 0, 1 | 0, 0, 0")
    after = apply_conv_gate(M, ConvGate('RCNOT', 2, poly=r))
    assert after.gens[0].z[2] == LaurentPoly.parse("1+D^-1")


def test_gate_validation():
    with pytest.raises(GateError):
        ConvGate('CNOT', 0, 0, ONE)
    with pytest.raises(GateError):
        ConvGate('TOFFOLI', 0)
    with pytest.raises(GateError):
        ConvGate('RCNOT', 0, poly=RationalFn(LaurentPoly.parse("1+D"), LaurentPoly.parse("1+D+D^2")))
    with pytest.raises(GateError):
        apply_conv_gate(check("1, 0, 0 | 0, 0, 0"), parse_gate("H 4"))
    with pytest.raises(ParseError):
        parse_gate("CNOT 1")
    with pytest.raises(ParseError):
        parse_gate("MEASURE 1")


def test_gate_text_round_trip():
    gates = [parse_gate(line) for line in FINITE_GATES]
    gates.append(ConvGate('RCNOT', 0, poly=RationalFn(LaurentPoly.parse("D^2"), LaurentPoly.parse("1+D+D^2"))))
    assert [parse_gate(str(g)) for g in gates] == gates
    assert str(gates[-1]) == "RCNOT 1 (D^2)/(1+D+D^2)"
    assert format_gates(gates[:2]) == "CNOT 1 2 D\nCNOT 3 1 1+D^2\n"


def test_encoder_walks_through_the_expected_stabilizers(codes_dir):
    gates = parse_gate_list(read_text(f"{codes_dir}/finite_depth_encoder.txt"))
    states = [
        "1, 1, 0 | 0, 0, 0\n0, 0, 0 | 1, 1, 0",
        "1, 1, 0 | 0, 0, 0\n0, 0, 0 | 1, 1, D+D^2",
        "1, 0, 0 | 0, 1, 0\n0, 1, D+D^2 | 1, 0, 0",
        "1, 0, 0 | 0, 1, D\n0, D, D+D^2 | 1, 0, 0",
        "1, 0, 0 | 0, 1+D^2, D\n0, D, 1+D+D^2 | 1, 0, 0",
        "1, 0, 0 | 0, 1+D^2, 1+D+D^2\n0, 1+D^2, 1+D+D^2 | 1, 0, 0",
    ]
    steps = [gates[:1], gates[1:3], gates[3:4], gates[4:5], gates[5:6]]
    M = check(states[0])
    for step, expected in zip(steps, states[1:]):
        M = apply_conv_gates(M, step, offset=1)
        assert M == check(expected)


def test_gates_preserve_shifted_products():
    rng = np.random.default_rng(5)
    gates = [parse_gate(line) for line in FINITE_GATES]
    for _ in range(100):
        H = random_check(rng, 2, 3)
        chosen = [gates[i] for i in rng.integers(0, len(gates), size=4)]
        assert shifted_omega(apply_conv_gates(H, chosen)) == shifted_omega(H)


def test_rational_gates_preserve_shifted_products():
    H = check("1, D, 0 | 0, 1+D, 1\n0, 1, 1 | D, 0, 1+D")
    r = RationalFn(LaurentPoly.parse("D"), LaurentPoly.parse("1+D+D^2"))
    after = apply_conv_gates(H, [ConvGate('RCNOT', 1, poly=r), parse_gate("CNOT 2 3 D")])
    assert shifted_omega(after) == shifted_omega(H)


def test_inverse_gates_undo_the_circuit():
    H = check("1, D, 0 | 0, 1+D, 1\n0, 1, 1 | D, 0, 1+D")
    r = RationalFn(LaurentPoly.parse("D"), LaurentPoly.parse("1+D"))
    gates = [parse_gate(line) for line in FINITE_GATES] + [ConvGate('RCNOT', 2, poly=r)]
    assert apply_conv_gates(apply_conv_gates(H, gates), inverse_gates(gates)) == H


def test_column_scale_gates():
    M = check("0, 0, 1 | 0, 0, 1")
    gamma = LaurentPoly.parse("D+D^2")
    after = apply_conv_gates(M, column_scale_gates(2, gamma))
    assert after.gens[0].x[2] == gamma
    assert after.gens[0].z[2] == RationalFn(ONE, gamma.reverse())
    assert column_scale_gates(0, ONE) == []


def test_finite_depth_classification():
    assert is_finite_depth([parse_gate(line) for line in FINITE_GATES])
    assert not is_finite_depth([ConvGate('RCNOT', 0, poly=RationalFn(ONE, LaurentPoly.parse("1+D")))])


def test_infinite_depth_realization():
    r = RationalFn(ONE, LaurentPoly.parse("1+D+D^3"))
    scratch, gates = realize_infinite_depth(r)
    assert scratch == 3
    assert [str(g) for g in gates] == ["CNOT 1 4", "CNOT 3 4"]
    for f in ("1+D", "1+D+D^3", "1+D^2+D^5"):
        f = LaurentPoly.parse(f)
        assert sliding_window_response(RationalFn(ONE, f), 30) == series_inverse(f, 30)
    with pytest.raises(GateError):
        realize_infinite_depth(RationalFn(LaurentPoly.parse("1+D"), LaurentPoly.parse("1+D+D^2")))
