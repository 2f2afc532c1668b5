import csv
import io
import json

import numpy as np

from algebra import Gf4Poly, parse_entry, parse_gf4_matrix
from circuits import EAQConvCode
from conv_core import ConvCheckMatrix
from errors import ParseError
from gates import parse_gate
from grandfather import GrandfatherCode, build_grandfather
from pauli import BlockCheckMatrix
from polymatrix import PolyMatrix

FORMAT_VERSION = 1


def _content_lines(text):
    for line in text.splitlines():
        line = line.split('#', 1)[0].strip()
        if line:
            yield line


def read_text(path):
    try:
        with open(path, "r") as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")


def parse_classical_matrix(text):
    """Rows of comma-separated polynomials, e.g. '1+D^2, 1+D+D^2'."""
    rows = [[parse_entry(entry) for entry in line.split(',')] for line in _content_lines(text)]
    if not rows:
        raise ParseError("empty classical check matrix")
    if len({len(row) for row in rows}) > 1:
        raise ParseError("classical check matrix rows have different lengths")
    return PolyMatrix(rows)


def parse_binary_matrix(text):
    rows = []
    for line in _content_lines(text):
        digits = line.replace(' ', '').replace(',', '')
        if set(digits) - {'0', '1'}:
            raise ParseError(f"binary row '{line}' has characters other than 0 and 1")
        rows.append([int(d) for d in digits])
    if not rows or len({len(row) for row in rows}) > 1:
        raise ParseError("binary matrix is empty or ragged")
    return np.array(rows, dtype=np.uint8)


def parse_block_check(text):
    """One Pauli string per line."""
    paulis = list(_content_lines(text))
    if not paulis:
        raise ParseError("empty block check matrix")
    return BlockCheckMatrix.from_paulis(paulis)


def parse_gf4_block(text):
    return parse_gf4_matrix(list(_content_lines(text)))


def parse_gf4_poly_rows(text):
    """Rows of comma-separated GF(4) polynomials such as '1+D, wb+D, 1, D'."""
    rows = [[Gf4Poly.parse(entry) for entry in line.split(',')] for line in _content_lines(text)]
    if not rows or len({len(row) for row in rows}) > 1:
        raise ParseError("GF(4) polynomial matrix is empty or ragged")
    return rows


def parse_check_matrix(text):
    return ConvCheckMatrix.parse(text)


def parse_gate_list(lines):
    text = lines if isinstance(lines, str) else "\n".join(lines)
    return [parse_gate(line) for line in _content_lines(text)]


def code_bundle(code):
    return {
        'params': {
            'n': code.n, 'k': code.k, 'c': code.c, 'a': code.a,
            'klass': code.klass,
            'construction': code.construction,
            'layout': code.layout,
            'surplus': code.surplus,
            'rate': [str(r) for r in code.rate],
        },
        'encoder': [str(g) for g in code.encoder],
        'decoder': [str(g) for g in code.decoder],
        'target': code.target.to_text(),
        'details': code.details,
    }


def load_code_bundle(document):
    try:
        params = document['params']
        return EAQConvCode(n=params['n'], k=params['k'], c=params['c'], a=params['a'],
                           encoder=parse_gate_list(document['encoder']),
                           decoder=parse_gate_list(document['decoder']),
                           target=ConvCheckMatrix.parse(document['target']),
                           klass=params['klass'], layout=params['layout'], surplus=params.get('surplus', 0),
                           construction=params.get('construction', ''))
    except (KeyError, TypeError) as e:
        raise ParseError(f"code bundle is missing {e}")


def load_grandfather_bundle(document):
    """Either {params: {n,k,l,r,c,a}, encoder: [...]} or {stabilizer: text, noisy: [1-based columns]}."""
    try:
        if 'stabilizer' in document:
            H = ConvCheckMatrix.parse(document['stabilizer'])
            noisy = [column - 1 for column in document['noisy']] if 'noisy' in document else None
            return GrandfatherCode.from_stabilizer(H, noisy)
        params = document['params']
        return build_grandfather(params['n'], params['k'], params['l'], params['r'], params['c'], params['a'],
                                 parse_gate_list(document['encoder']))
    except (KeyError, TypeError) as e:
        raise ParseError(f"grandfather bundle is missing {e}")


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON: {e}")


def envelope(command, result):
    return json.dumps({'version': FORMAT_VERSION, 'command': command, 'result': result}, indent=2)


def table_csv(table):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(['error', 'syndrome_bits'])
    writer.writerows(table.rows())
    return out.getvalue()


def report_csv(report):
    out = io.StringIO()
    row = report.to_dict()
    writer = csv.DictWriter(out, fieldnames=list(row), lineterminator='\n')
    writer.writeheader()
    writer.writerow(row)
    return out.getvalue()
