#!/usr/bin/env python3
import argparse
import json
import logging
import sys
import traceback

from block_ea import block_sgsop, ebits_css, ebits_general, ebits_gf4
from circuits import css_construct, free_ent_construct, general_construct, verify_encoding
from config import Config, setup_logging
from conv_core import ConvCheckMatrix, conv_ebits, conv_ebits_gf4, expand_check, poly_sgsop
from distill import augment_multi, css_distill_augment, distillation_table, single_construction
from errors import EaqccError, ParseError
from formats import (code_bundle, envelope, load_code_bundle, load_grandfather_bundle, load_json,
                     parse_binary_matrix, parse_block_check, parse_check_matrix, parse_classical_matrix,
                     parse_gf4_block, parse_gf4_poly_rows, read_text, report_csv, table_csv)
from grandfather import syndrome_table
from pauli import gf4_import_conv
from sim import PauliChannel, run_correction, run_exhaustive, simulation_code

logger = logging.getLogger('eaqcc-cli')


def emit(args, command, text, result):
    if args.format == 'json':
        print(envelope(command, result))
    else:
        print(text.rstrip('\n'))


def read_conv(path, gf4=False):
    text = read_text(path)
    if gf4:
        return ConvCheckMatrix(gf4_import_conv(parse_gf4_poly_rows(text)))
    return parse_check_matrix(text)


def cmd_ebits(args, config):
    if args.css:
        if len(args.files) != 2:
            raise ParseError("--css needs two binary parity-check files")
        h1, h2 = (parse_binary_matrix(read_text(path)) for path in args.files)
        count = ebits_css(h1, h2)
    elif args.gf4 and args.conv:
        count = conv_ebits_gf4(parse_gf4_poly_rows(read_text(args.files[0])))
    elif args.gf4:
        count = ebits_gf4(parse_gf4_block(read_text(args.files[0])))
    elif args.conv:
        count = conv_ebits(parse_check_matrix(read_text(args.files[0])))
    else:
        count = ebits_general(parse_block_check(read_text(args.files[0])))
    emit(args, 'ebits', str(count), {'ebits': str(count)})


def cmd_gramschmidt(args, config):
    if args.block:
        structure = block_sgsop(parse_block_check(read_text(args.file)))
        text = f"c={structure.c} a={structure.a}\n" + str(structure.reordered)
        emit(args, 'gramschmidt', text, {'c': structure.c, 'a': structure.a,
                                         'reordered': structure.reordered.paulis()})
        return
    decomposition = poly_sgsop(read_conv(args.file, args.gf4), args.l_max or config['l_max'])
    text = f"c={decomposition.c} a={decomposition.a} l={decomposition.l}\n" + decomposition.reordered.to_text()
    emit(args, 'gramschmidt', text, {'c': decomposition.c, 'a': decomposition.a, 'l': decomposition.l,
                                     'reordered': decomposition.reordered.to_text(),
                                     'finite': decomposition.finite.to_text()})


def cmd_expand(args, config):
    expanded = expand_check(read_conv(args.file, args.gf4), args.factor)
    emit(args, 'expand', expanded.to_text(), {'factor': args.factor, 'matrix': expanded.to_text()})


def _emit_code(args, command, code):
    bundle = code_bundle(code)
    verification = verify_encoding(code) if args.verify else None
    if verification is not None:
        bundle['verified'] = verification.ok
        bundle['verification'] = verification.messages
    if args.format == 'json':
        print(envelope(command, bundle))
    else:
        print(f"{code.params()} {code.klass}, rates {code.rate[0]} / {code.rate[1]}")
        print('# encoder')
        print('\n'.join(bundle['encoder']))
        print('# decoder')
        print('\n'.join(bundle['decoder']))
        if verification is not None:
            print(f"# verified: {verification.ok}")
            for message in verification.messages:
                print(f"#   {message}")
    if args.output:
        with open(args.output, "w") as f:
            json.dump(bundle, f, indent=2)
        logger.info(f"code bundle written to {args.output}")


def cmd_css_construct(args, config):
    H1 = parse_classical_matrix(read_text(args.h1))
    H2 = parse_classical_matrix(read_text(args.h2))
    _emit_code(args, 'css-construct', css_construct(H1, H2))


def cmd_construct(args, config):
    decomposition = poly_sgsop(read_conv(args.file, args.gf4), args.l_max or config['l_max'])
    _emit_code(args, 'construct', general_construct(decomposition))


def cmd_free_construct(args, config):
    _emit_code(args, 'free-construct', free_ent_construct(read_conv(args.file, args.gf4)))


def cmd_distill(args, config):
    H = read_conv(args.file, args.gf4)
    if args.mode == 'single':
        if len(H) != 1:
            raise ParseError("single mode needs exactly one generator")
        construction = single_construction(H.gens[0])
    elif args.mode == 'multi':
        construction = augment_multi(H, lower=args.lower)
    else:
        split = args.split if args.split is not None else sum(1 for g in H.gens if not any(g.x))
        construction = css_distill_augment(H, split)
    result = construction.summary()
    result['stabilizer'] = construction.stabilizer.to_text()
    text = construction.stabilizer.to_text() + '\n'.join(construction.stabilizer.paulis())
    text += f"\nyield {construction.protocol_yield}, catalytic ebits {construction.catalytic_ebits}"
    if args.table:
        table = distillation_table(construction, args.window or None)
        result['table'] = table.rows()
        text += '\n' + table_csv(table)
    emit(args, 'distill', text, result)


def cmd_grandfather_table(args, config):
    code = load_grandfather_bundle(load_json(read_text(args.bundle)))
    table = syndrome_table(code, args.weight, args.window or config['window'] or None)
    if not table.is_unique():
        logger.warning("syndrome table has repeated syndromes")
    emit(args, 'grandfather-table', table_csv(table), {'window': table.window, 'rows': table.rows(),
                                                      'unique': table.is_unique()})


def _simulation_target(document, truncate_depth):
    if 'params' in document and 'klass' in document['params']:
        return simulation_code(load_code_bundle(document), truncate_depth)
    return load_grandfather_bundle(document)


def cmd_simulate(args, config):
    truncate_depth = args.truncate_depth or config['truncate_depth']
    code = _simulation_target(load_json(read_text(args.bundle)), truncate_depth)
    table = syndrome_table(code, 1, args.window or config['window'] or None)
    stride = args.stride or config['stride'] or None
    if args.exhaustive:
        report = run_exhaustive(code, table, args.frames, stride)
    else:
        if args.p is not None:
            channel = PauliChannel.depolarizing(args.p)
        else:
            channel = PauliChannel(args.px, args.py, args.pz)
        seed = args.seed if args.seed is not None else config['seed']
        report = run_correction(code, table, channel, args.trials or config['trials'],
                                args.frames or config['frames'], seed, stride, truncate_depth=truncate_depth)
    emit(args, 'simulate', report_csv(report), report.to_dict())


def cmd_verify(args, config):
    code = load_code_bundle(load_json(read_text(args.bundle)))
    verification = verify_encoding(code)
    text = 'ok' if verification.ok else '\n'.join(verification.messages)
    emit(args, 'verify', text, {'ok': verification.ok, 'messages': verification.messages})
    return 0 if verification.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog='eaqcc', description='Entanglement-assisted quantum code constructions')
    parser.add_argument('--format', choices=('text', 'json'), default=None)
    parser.add_argument('--log-level', default=None)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('ebits', help='ebit count of a block or convolutional code')
    p.add_argument('files', nargs='+')
    p.add_argument('--css', action='store_true', help='two binary classical parity-check files')
    p.add_argument('--gf4', action='store_true', help='GF(4) parity-check matrix')
    p.add_argument('--conv', action='store_true', help='convolutional check matrix')
    p.set_defaults(handler=cmd_ebits)

    p = sub.add_parser('gramschmidt', help='symplectic Gram-Schmidt decomposition')
    p.add_argument('file')
    p.add_argument('--block', action='store_true')
    p.add_argument('--gf4', action='store_true')
    p.add_argument('--l-max', type=int, default=None)
    p.set_defaults(handler=cmd_gramschmidt)

    p = sub.add_parser('expand', help='regroup frames of a convolutional check matrix')
    p.add_argument('file')
    p.add_argument('--factor', type=int, required=True)
    p.add_argument('--gf4', action='store_true')
    p.set_defaults(handler=cmd_expand)

    for name, handler, help_text in (('construct', cmd_construct, 'general construction'),
                                     ('free-construct', cmd_free_construct, 'free-entanglement construction')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('file')
        p.add_argument('--gf4', action='store_true')
        p.add_argument('--l-max', type=int, default=None)
        p.add_argument('--verify', action='store_true')
        p.add_argument('--output', default=None, help='write the JSON code bundle here')
        p.set_defaults(handler=handler)

    p = sub.add_parser('css-construct', help='CSS construction from two classical check matrices')
    p.add_argument('h1')
    p.add_argument('h2')
    p.add_argument('--verify', action='store_true')
    p.add_argument('--output', default=None)
    p.set_defaults(handler=cmd_css_construct)

    p = sub.add_parser('distill', help='entanglement distillation augmentation')
    p.add_argument('file')
    p.add_argument('--mode', choices=('single', 'multi', 'css'), default='multi')
    p.add_argument('--lower', action='store_true')
    p.add_argument('--split', type=int, default=None, help='number of leading pure-Z rows (css mode)')
    p.add_argument('--gf4', action='store_true')
    p.add_argument('--table', action='store_true')
    p.add_argument('--window', type=int, default=0)
    p.set_defaults(handler=cmd_distill)

    p = sub.add_parser('grandfather-table', help='syndrome table as CSV')
    p.add_argument('bundle')
    p.add_argument('--weight', type=int, default=1)
    p.add_argument('--window', type=int, default=0)
    p.set_defaults(handler=cmd_grandfather_table)

    p = sub.add_parser('simulate', help='table-decoding simulation')
    p.add_argument('bundle')
    p.add_argument('--p', type=float, default=None, help='depolarizing probability')
    p.add_argument('--px', type=float, default=0.0)
    p.add_argument('--py', type=float, default=0.0)
    p.add_argument('--pz', type=float, default=0.0)
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--frames', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--stride', type=int, default=None)
    p.add_argument('--window', type=int, default=0)
    p.add_argument('--truncate-depth', type=int, default=None)
    p.add_argument('--exhaustive', action='store_true')
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser('verify', help='check a JSON code bundle')
    p.add_argument('bundle')
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    config = Config()
    args.format = args.format or config['format']
    try:
        return args.handler(args, config) or 0
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return 2
    except EaqccError as e:
        print(str(e), file=sys.stderr)
        return 1
    except Exception:
        logger.error(f"unexpected failure in {args.command}: {traceback.format_exc()}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
