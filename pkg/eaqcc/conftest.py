import os

import pytest

from conv_core import ConvCheckMatrix
from formats import (load_grandfather_bundle, load_json, parse_block_check, parse_check_matrix,
                     parse_classical_matrix, parse_gf4_poly_rows, read_text)
from grandfather import GrandfatherCode
from pauli import ConvGenerator, gf4_import_conv

CODES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'codes')


def code_path(name):
    return os.path.join(CODES_DIR, name)


@pytest.fixture
def codes_dir():
    return CODES_DIR


@pytest.fixture
def five_qubit():
    return parse_block_check(read_text(code_path('five_qubit.txt')))


@pytest.fixture
def four_qubit_ea():
    return parse_block_check(read_text(code_path('four_qubit_ea.txt')))


@pytest.fixture
def simple_check():
    return parse_check_matrix(read_text(code_path('simple.txt')))


@pytest.fixture
def gf4_pair():
    return ConvCheckMatrix(gf4_import_conv(parse_gf4_poly_rows(read_text(code_path('gf4_pair.txt')))))


@pytest.fixture
def free_check():
    return parse_check_matrix(read_text(code_path('free_example.txt')))


@pytest.fixture
def finite_css_pair():
    H = parse_classical_matrix(read_text(code_path('finite_depth_h.txt')))
    return H, H


@pytest.fixture
def infinite_css_pair():
    H = parse_classical_matrix(read_text(code_path('infinite_depth_h.txt')))
    return H, H


@pytest.fixture
def grandfather_code():
    return load_grandfather_bundle(load_json(read_text(code_path('grandfather.json'))))


@pytest.fixture
def forney_check():
    return parse_check_matrix(read_text(code_path('forney.txt')))


@pytest.fixture
def forney_code(forney_check):
    return GrandfatherCode.from_stabilizer(forney_check)


@pytest.fixture
def single_generator():
    return ConvGenerator.parse("1+D^3, 1+D^2 | D^2, D")
