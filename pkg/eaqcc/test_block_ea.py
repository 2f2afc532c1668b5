import numpy as np
import pytest

from algebra import parse_gf4_matrix
from block_ea import (BlockGate, apply_block_gates, block_sgsop, canonical_stabilizer, ebits_css, ebits_general,
                      ebits_gf4, parse_block_gate, replay_reversed, same_row_space, synth_block_encoder)
from errors import DependentRowsError, GateError, ParseError
from formats import parse_binary_matrix, read_text
from pauli import BlockCheckMatrix, gf4_import_block, symplectic_matrix


def test_five_qubit_code_needs_no_ebits(five_qubit):
    assert ebits_general(five_qubit) == 0
    structure = block_sgsop(five_qubit)
    assert (structure.c, structure.a) == (0, 4)


def test_noncommuting_code_needs_one_ebit(four_qubit_ea):
    assert ebits_general(four_qubit_ea) == 1
    structure = block_sgsop(four_qubit_ea)
    assert (structure.c, structure.a) == (1, 2)
    assert structure.reordered.paulis()[:3] == ["ZXZI", "ZZIZ", "YXXZ"]
    omega = symplectic_matrix(structure.reordered)
    assert omega[0, 1] == omega[1, 0] == 1
    assert omega.sum() == 2


def test_gram_schmidt_transform_reproduces_the_rows(four_qubit_ea):
    structure = block_sgsop(four_qubit_ea)
    combined = (structure.transform.astype(np.int64) @ four_qubit_ea.as_array().astype(np.int64)) % 2
    assert np.array_equal(combined, structure.reordered.as_array())


def test_dependent_rows_are_rejected():
    with pytest.raises(DependentRowsError):
        block_sgsop(BlockCheckMatrix.from_paulis(["XX", "ZZ", "YY"]))


def test_css_ebits(codes_dir):
    hamming = parse_binary_matrix(read_text(f"{codes_dir}/hamming.txt"))
    assert ebits_css(hamming, hamming) == 0
    assert ebits_css([[1, 0]], [[1, 0]]) == 1
    assert ebits_css([[1, 0]], [[0, 1]]) == 0


def test_gf4_ebits():
    assert ebits_gf4(parse_gf4_matrix(["1 w"])) == 0
    assert ebits_gf4(parse_gf4_matrix(["1 1 w"])) == 1


def test_encoder_synthesis(four_qubit_ea):
    gates, c, final = synth_block_encoder(four_qubit_ea)
    assert c == 1
    assert str(gates[0]) == "SWAP 1 2"
    assert sum(1 for row in final.rows if row.x.any()) == 1
    assert all(int(row.z.sum() + row.x.sum()) == 1 for row in final.rows)
    canonical, bob = canonical_stabilizer(final)
    assert bob == 1
    assert not symplectic_matrix(canonical).any()
    encoded = replay_reversed(canonical, gates, offset=bob)
    alice = BlockCheckMatrix.from_arrays(encoded.hz[:, bob:], encoded.hx[:, bob:])
    assert same_row_space(alice, four_qubit_ea)
    assert not symplectic_matrix(encoded).any()


def test_synthesis_for_a_commuting_code(five_qubit):
    gates, c, final = synth_block_encoder(five_qubit)
    assert c == 0
    assert same_row_space(replay_reversed(final, gates), five_qubit)


def test_block_gates():
    M = BlockCheckMatrix.from_paulis(["XI", "IZ"])
    assert apply_block_gates(M, [BlockGate('CNOT', 0, 1)]).paulis() == ["XX", "ZZ"]
    assert apply_block_gates(M, [BlockGate('H', 0), BlockGate('P', 1)]).paulis() == ["ZI", "IZ"]
    assert apply_block_gates(M, [BlockGate('SWAP', 0, 1)]).paulis() == ["IX", "ZI"]
    with pytest.raises(GateError):
        apply_block_gates(M, [BlockGate('H', 2)])
    with pytest.raises(GateError):
        BlockGate('CNOT', 1, 1)


def test_block_gate_text():
    assert parse_block_gate("CNOT 1 3") == BlockGate('CNOT', 0, 2)
    assert str(BlockGate('H', 3)) == "H 4"
    with pytest.raises(ParseError):
        parse_block_gate("")


def random_independent_check(rng, m, n):
    while True:
        hz, hx = rng.integers(0, 2, size=(m, n)), rng.integers(0, 2, size=(m, n))
        H = BlockCheckMatrix.from_arrays(hz, hx)
        if H.rank() == m:
            return H


def random_block_gates(rng, n, count):
    gates = []
    for _ in range(count):
        kind = ['CNOT', 'H', 'P', 'SWAP'][int(rng.integers(0, 4))]
        if kind in ('CNOT', 'SWAP'):
            i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
            gates.append(BlockGate(kind, i, j))
        else:
            gates.append(BlockGate(kind, int(rng.integers(0, n))))
    return gates


def test_gram_schmidt_pairs_match_the_ebit_count():
    rng = np.random.default_rng(31)
    for _ in range(60):
        H = random_independent_check(rng, int(rng.integers(1, 5)), 4)
        structure = block_sgsop(H)
        assert structure.c == ebits_general(H)
        assert structure.c + structure.a == len(H)
        omega = symplectic_matrix(structure.reordered)
        expected = np.zeros_like(omega)
        for p in range(structure.c):
            expected[2 * p, 2 * p + 1] = expected[2 * p + 1, 2 * p] = 1
        assert np.array_equal(omega, expected)


def test_block_gates_keep_the_symplectic_products():
    rng = np.random.default_rng(32)
    for _ in range(60):
        H = random_independent_check(rng, 3, 4)
        moved = apply_block_gates(H, random_block_gates(rng, 4, 12))
        assert np.array_equal(symplectic_matrix(moved), symplectic_matrix(H))
        assert ebits_general(moved) == ebits_general(H)


def test_css_count_agrees_with_the_stacked_matrix():
    rng = np.random.default_rng(33)
    for _ in range(60):
        h1, h2 = rng.integers(0, 2, size=(2, 5)), rng.integers(0, 2, size=(3, 5))
        assert ebits_css(h1, h2) == ebits_general(BlockCheckMatrix.css(h1, h2))


def test_gf4_count_agrees_with_the_imported_matrix():
    rng = np.random.default_rng(34)
    for _ in range(60):
        H = rng.integers(0, 4, size=(int(rng.integers(1, 4)), 4))
        assert ebits_gf4(H) == ebits_general(gf4_import_block(H))


def test_synthesis_on_random_commuting_stabilizers():
    rng = np.random.default_rng(35)
    for _ in range(40):
        m, n = int(rng.integers(1, 4)), 4
        hz = np.zeros((m, n), dtype=np.uint8)
        hz[np.arange(m), np.arange(m)] = 1
        H = apply_block_gates(BlockCheckMatrix.from_arrays(hz, np.zeros_like(hz)), random_block_gates(rng, n, 15))
        gates, c, final = synth_block_encoder(H)
        assert c == 0
        assert not final.hx.any()
        assert same_row_space(replay_reversed(final, gates), H)


def test_synthesis_on_random_checks():
    rng = np.random.default_rng(36)
    for _ in range(40):
        H = random_independent_check(rng, int(rng.integers(1, 4)), 4)
        gates, c, final = synth_block_encoder(H)
        assert c == ebits_general(H)
        canonical, bob = canonical_stabilizer(final)
        assert not symplectic_matrix(canonical).any()
        encoded = replay_reversed(canonical, gates, offset=bob)
        alice = BlockCheckMatrix.from_arrays(encoded.hz[:, bob:], encoded.hx[:, bob:])
        assert same_row_space(alice, H)
