import json

from cli import build_parser, main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_parser_requires_a_command():
    parser = build_parser()
    args = parser.parse_args(['expand', 'x.txt', '--factor', '2'])
    assert args.command == 'expand'
    assert args.factor == 2


def test_ebits_commands(capsys, codes_dir):
    assert run(capsys, 'ebits', f"{codes_dir}/four_qubit_ea.txt")[:2] == (0, "1\n")
    assert run(capsys, 'ebits', f"{codes_dir}/five_qubit.txt")[:2] == (0, "0\n")
    assert run(capsys, 'ebits', '--css', f"{codes_dir}/hamming.txt", f"{codes_dir}/hamming.txt")[:2] == (0, "0\n")
    assert run(capsys, 'ebits', '--conv', f"{codes_dir}/two_ebit_conv.txt")[:2] == (0, "2\n")
    assert run(capsys, 'ebits', '--conv', '--gf4', f"{codes_dir}/gf4_pair.txt")[:2] == (0, "1\n")


def test_json_output(capsys, codes_dir):
    status, out, _ = run(capsys, '--format', 'json', 'ebits', f"{codes_dir}/four_qubit_ea.txt")
    assert status == 0
    assert json.loads(out)['result'] == {'ebits': '1'}


def test_expand(capsys, codes_dir):
    status, out, _ = run(capsys, 'expand', '--factor', '2', f"{codes_dir}/simple.txt")
    assert status == 0
    assert out.splitlines() == ["frame n=2", "0, 1 | 1, 0", "D, 0 | 0, 1"]


def test_gramschmidt(capsys, codes_dir):
    status, out, _ = run(capsys, 'gramschmidt', '--block', f"{codes_dir}/four_qubit_ea.txt")
    assert status == 0
    assert out.splitlines()[0] == "c=1 a=2"
    status, out, _ = run(capsys, 'gramschmidt', '--gf4', f"{codes_dir}/gf4_pair.txt")
    assert out.splitlines()[0] == "c=2 a=0 l=2"


def test_construct_verify_round_trip(capsys, codes_dir, tmp_path):
    bundle = tmp_path / "code.json"
    status, out, _ = run(capsys, 'css-construct', f"{codes_dir}/infinite_depth_h.txt", f"{codes_dir}/infinite_depth_h.txt",
                         '--verify', '--output', str(bundle))
    assert status == 0
    assert "# verified: True" in out
    assert run(capsys, 'verify', str(bundle))[:2] == (0, "ok\n")


def test_general_construct_of_the_quaternary_pair(capsys, codes_dir):
    status, out, _ = run(capsys, 'construct', '--gf4', f"{codes_dir}/gf4_pair.txt", '--verify')
    assert status == 0
    assert out.startswith("[[8,6;2]]")
    assert "# verified: True" in out


def test_free_construct(capsys, codes_dir):
    status, out, _ = run(capsys, 'free-construct', f"{codes_dir}/free_example.txt", '--verify')
    assert status == 0
    assert out.startswith("[[4,2;2]]")


def test_distill_table(capsys, codes_dir):
    status, out, _ = run(capsys, 'distill', '--mode', 'single', '--table', f"{codes_dir}/distill_single.txt")
    assert status == 0
    assert "X1,1001" in out.splitlines()
    assert "yield 1/2, catalytic ebits 9" in out


def test_grandfather_table(capsys, codes_dir):
    status, out, _ = run(capsys, 'grandfather-table', f"{codes_dir}/grandfather.json")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "error,syndrome_bits"
    assert lines[-1] == "Z5,110010"


def test_exhaustive_simulation(capsys, codes_dir):
    status, out, _ = run(capsys, '--format', 'json', 'simulate', '--exhaustive', f"{codes_dir}/forney.json")
    assert status == 0
    result = json.loads(out)['result']
    assert result['residual_logical_rate'] == 0
    assert result['syndrome_miss_rate'] == 0


def test_sampled_simulation(capsys, codes_dir):
    status, out, _ = run(capsys, 'simulate', '--p', '0.01', '--trials', '4', '--frames', '6', '--seed', '2',
                         f"{codes_dir}/grandfather.json")
    assert status == 0
    header, row = out.splitlines()
    assert header.startswith("trials,frames")
    assert row.startswith("4,6,")


def test_missing_input_exits_with_parse_status(capsys, tmp_path):
    status, _, err = run(capsys, 'ebits', str(tmp_path / "absent.txt"))
    assert status == 2
    assert err.startswith("PARSE_ERROR")


def test_construction_failure_exits_with_error_status(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1+D, 1+D^2\n")
    status, _, err = run(capsys, 'css-construct', str(bad), str(bad))
    assert status == 1
    assert err.startswith("CATASTROPHIC_INPUT")


def test_bad_channel_exits_with_error_status(capsys, codes_dir):
    status, _, err = run(capsys, 'simulate', '--px', '0.7', '--pz', '0.7', f"{codes_dir}/forney.json")
    assert status == 1
    assert err.startswith("BAD_CHANNEL")
