import json

import jsonschema
import pytest

from dirmax import cli
from dirmax.reporting import load_report_schema, report_checksum


def run_cli(args, capsys=None):
    code = cli.main(args)
    return code


def test_gen_lin_stdout_and_csv(tmp_path, capsys):
    csv = tmp_path / "lin.csv"
    code = cli.main(["gen", "--set", "lin", "--count", "4", "--csv", str(csv)])
    assert code == 0
    body = csv.read_text()
    assert body.startswith("index,value\n1,")
    out = capsys.readouterr().out
    assert "gen lin: 4 values" in out


def test_factor_lin4_prints_two(capsys):
    code = cli.main(["factor", "--set", "lin", "--count", "4"])
    assert code == 0
    assert "G = 2 " in capsys.readouterr().out


def test_factor_explicit_values(capsys):
    code = cli.main(["factor", "--values", "2,4,8,16"])
    assert code == 0
    assert "G = 2.5" in capsys.readouterr().out


def test_capacity_exact(tmp_path):
    out = tmp_path / "cap.json"
    code = cli.main(["capacity", "--values", "1,2,3,4,5,6,7,8", "--n", "2",
                     "--strategy", "exact", "--json", str(out)])
    assert code == 0
    body = json.loads(out.read_text())
    assert body["results"]["value"] == 2.0
    assert body["results"]["witness"] == [1.0, 2.0, 3.0, 4.0]
    assert body["results"]["exact"] is True


def test_witness_t1_json_golden_stable(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["witness", "t1", "--n", "2", "--seed", "42", "--a-max", "20000"]
    assert cli.main(args + ["--json", str(a)]) == 0
    assert cli.main(args + ["--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    body = json.loads(a.read_text())
    assert body["results"]["found"] is True
    assert body["results"]["g_value"] < 6.0


def test_witness_t2_svg(tmp_path):
    svg = tmp_path / "fill.svg"
    code = cli.main(["witness", "t2", "--n", "1", "--seed", "42",
                     "--d-max", "10000", "--svg", str(svg)])
    assert code == 0
    text = svg.read_text()
    assert text.startswith("<?xml") and "</svg>" in text


def test_witness_requires_bounds():
    assert cli.main(["witness", "t1", "--n", "2", "--seed", "1"]) == cli.EXIT_BAD_CONFIG
    assert cli.main(["witness", "t2", "--n", "2", "--seed", "1"]) == cli.EXIT_BAD_CONFIG


def test_verify_prob_small(tmp_path):
    out = tmp_path / "prob.json"
    code = cli.main(["verify", "prob", "--n", "1", "--trials", "50000",
                     "--seed", "7", "--json", str(out)])
    assert code == 0
    body = json.loads(out.read_text())
    names = {c["name"] for c in body["checks"]}
    assert f"inclusion_N1" in names
    assert any(n.startswith("p_N1_l1") for n in names)


def test_verify_p5_and_spacing():
    assert cli.main(["verify", "p5", "--trials", "2000", "--seed", "3",
                     "--n-list", "1,2,3"]) == 0
    assert cli.main(["verify", "spacing", "--n", "3", "--trials", "2000",
                     "--seed", "3"]) == 0


def test_blow_sweep_and_svg(tmp_path):
    svg = tmp_path / "tree.svg"
    code = cli.main(["blow", "--j-min", "1", "--j-max", "3", "--resolution",
                     "192", "--svg", str(svg)])
    assert code == 0
    assert svg.exists()


def test_maxop_small(tmp_path):
    pgm = tmp_path / "field.pgm"
    code = cli.main(["maxop", "--j", "2", "--resolution", "160",
                     "--pgm-field", str(pgm)])
    assert code == 0
    data = pgm.read_bytes()
    assert data.startswith(b"P5\n")


def test_certify_lacunary(tmp_path):
    payload = {
        "omega": [1.0 / 2**k for k in range(2, 9)],
        "order": 1,
        "certificate": {
            "limit": 0.0,
            "lambda": 0.5,
            "skeleton": [1.0 / 2**k for k in range(2, 9)],
            "children": [None] * 6,
        },
    }
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(payload))
    assert cli.main(["certify-lacunary", "--input", str(path)]) == 0

    payload["certificate"]["lambda"] = 0.1
    path.write_text(json.dumps(payload))
    assert cli.main(["certify-lacunary", "--input", str(path)]) == cli.EXIT_CHECK_FAILED


def test_event_a(tmp_path):
    out = tmp_path / "ea.json"
    code = cli.main(["event-a", "--n", "1", "--seed", "42",
                     "--d-range", "50,5000", "--json", str(out)])
    assert code == 0
    body = json.loads(out.read_text())
    assert body["results"]["frequency"]["frequency"] > 0.0


def test_bad_config_exit_codes(tmp_path):
    assert cli.main(["capacity", "--values", "1,2,3"]) == cli.EXIT_BAD_CONFIG  # no --n
    assert cli.main(["factor", "--values", "3,2,1"]) == cli.EXIT_BAD_CONFIG
    assert cli.main(["certify-lacunary"]) == cli.EXIT_BAD_CONFIG
    with pytest.raises(SystemExit) as exc:
        cli.main(["unknown-command"])
    assert exc.value.code == 2


def test_io_error_exit_code(tmp_path):
    missing_dir = tmp_path / "nope" / "out.json"
    code = cli.main(["factor", "--values", "1,2,3", "--json", str(missing_dir)])
    assert code == cli.EXIT_IO


def test_config_file_with_flag_override(tmp_path):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"set": "lin", "count": 4}))
    out1 = tmp_path / "r1.json"
    code = cli.main(["factor", "--config", str(cfgfile), "--json", str(out1)])
    assert code == 0
    assert json.loads(out1.read_text())["results"]["size"] == 4

    # flags win over the file
    out2 = tmp_path / "r2.json"
    code = cli.main(["factor", "--config", str(cfgfile), "--count", "6",
                     "--json", str(out2)])
    assert code == 0
    assert json.loads(out2.read_text())["results"]["size"] == 6


def test_checksum_covers_body(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["factor", "--values", "1,2,3,4", "--json", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["checksum"] == report_checksum(body)


def test_reports_validate_against_published_schema(tmp_path):
    schema = load_report_schema()
    runs = [
        ["factor", "--values", "1,2,3,4"],
        ["witness", "t1", "--n", "2", "--seed", "42", "--a-max", "2000"],
        ["verify", "prob", "--n", "1", "--trials", "5000", "--seed", "2"],
        ["blow", "--j-min", "1", "--j-max", "2", "--resolution", "96"],
    ]
    for i, args in enumerate(runs):
        out = tmp_path / f"s{i}.json"
        cli.main(args + ["--json", str(out)])
        jsonschema.validate(json.loads(out.read_text()), schema)


def test_workers_do_not_change_checksums(tmp_path):
    sums = set()
    for w in ("1", "4", "8"):
        out = tmp_path / f"w{w}.json"
        code = cli.main(["verify", "prob", "--n", "1", "--trials", "20000",
                         "--seed", "5", "--workers", w, "--json", str(out)])
        assert code == 0
        sums.add(json.loads(out.read_text())["checksum"])
    assert len(sums) == 1


def test_deterministic_svg_bytes(tmp_path):
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    for path in (a, b):
        assert cli.main(["gen", "--set", "lac", "--count", "8",
                         "--svg", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
