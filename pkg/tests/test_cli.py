"""CLI contract tests: flags, exit codes, formats, determinism."""

import json

import pytest

from delpezzo_lct.cli import main
from delpezzo_lct.configio import (
    certificate_to_json_obj,
    config_to_json_obj,
    parse_config_text,
)
from delpezzo_lct import lct_global, witness

CUSP_CONFIG = """
{
  "surface": {"degree": 1, "basis": "blowup"},
  "components": [
    {"id": "C", "class": [3, -1, -1, -1, -1, -1, -1, -1, -1], "coeff": "1"}
  ],
  "points": [
    {"id": "p", "germ": "cusp", "incident": [{"component": "C", "branch": 0}]}
  ]
}
"""

TRIPLE_CONFIG = """
{
  "surface": {"degree": 4, "basis": "blowup"},
  "components": [
    {"id": "E1", "class": [0, 1, 0, 0, 0, 0], "coeff": "1"},
    {"id": "L12", "class": [1, -1, -1, 0, 0, 0], "coeff": "1"},
    {"id": "A2", "class": [2, -1, 0, -1, -1, -1], "coeff": "1"}
  ],
  "points": [
    {"id": "p", "germ": "ordinary(3)", "incident": [
      {"component": "E1", "branch": 0},
      {"component": "L12", "branch": 1},
      {"component": "A2", "branch": 2}
    ]}
  ]
}
"""

INCONSISTENT_CONFIG = """
{
  "surface": {"degree": 4, "basis": "blowup"},
  "components": [
    {"id": "E1", "class": [0, 1, 0, 0, 0, 0], "coeff": "1"},
    {"id": "E2", "class": [0, 0, 1, 0, 0, 0], "coeff": "1"}
  ],
  "points": [
    {"id": "p", "germ": "smooth_transverse(2)", "incident": [
      {"component": "E1", "branch": 0}, {"component": "E2", "branch": 1}
    ]}
  ]
}
"""


@pytest.fixture
def cusp_file(tmp_path):
    path = tmp_path / "cusp.json"
    path.write_text(CUSP_CONFIG, encoding="utf-8")
    return str(path)


@pytest.fixture
def triple_file(tmp_path):
    path = tmp_path / "triple.json"
    path.write_text(TRIPLE_CONFIG, encoding="utf-8")
    return str(path)


class TestClasses:
    def test_deg4_lines_row_count(self, capsys):
        assert main(["classes", "--degree", "4", "--deg", "1", "--self", "-1"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 16

    def test_p2_has_no_lines(self, capsys):
        assert main(["classes", "--degree", "9", "--deg", "1", "--self", "-1"]) == 0
        assert capsys.readouterr().out.strip() == ""

    def test_cubic_surface_lines(self, capsys):
        assert main(["classes", "--degree", "3", "--deg", "1", "--self", "-1"]) == 0
        assert len(capsys.readouterr().out.strip().splitlines()) == 27

    def test_json_output(self, capsys):
        assert main(
            ["classes", "--degree", "4", "--deg", "2", "--self", "0", "--json"]
        ) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["count"] == 10
        assert obj["classes"] == sorted(obj["classes"])

    def test_invalid_degree_exits_2(self, capsys):
        assert main(["classes", "--degree", "12", "--deg", "1", "--self", "-1"]) == 2

    def test_missing_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["classes", "--degree", "4"])
        assert exc.value.code == 2


class TestLct:
    def test_cusp_certificate_text(self, cusp_file, capsys):
        assert main(["lct", cusp_file]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "lct = 5/6"
        assert "minimizer = node p.n2 (k+1 = 5, v = 6)" in out

    def test_point_scoped_query(self, cusp_file, capsys):
        assert main(["lct", cusp_file, "--point", "p"]) == 0
        assert "lct = 5/6" in capsys.readouterr().out

    def test_lambda_check_positive(self, triple_file, capsys):
        assert main(["lct", triple_file, "--lambda", "2/3"]) == 0
        assert "log_canonical = true" in capsys.readouterr().out

    def test_lambda_check_negative_exits_1(self, triple_file, capsys):
        assert main(["lct", triple_file, "--lambda", "1"]) == 1
        assert "log_canonical = false" in capsys.readouterr().out

    def test_empty_divisor_reports_inf(self, tmp_path, capsys):
        path = tmp_path / "empty.json"
        path.write_text(
            '{"surface": {"degree": 9, "basis": "blowup"}, "components": [], "points": []}',
            encoding="utf-8",
        )
        assert main(["lct", str(path)]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "lct = inf"

    def test_parse_error_exits_2_with_position(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{"surface": {\n', encoding="utf-8")
        assert main(["lct", str(path)]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err and "column" in err

    def test_inconsistent_exits_3_with_pair(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(INCONSISTENT_CONFIG, encoding="utf-8")
        assert main(["lct", str(path)]) == 3
        err = capsys.readouterr().err
        assert "E1" in err and "E2" in err

    def test_missing_file_exits_2(self, capsys):
        assert main(["lct", "/nonexistent/file.json"]) == 2

    def test_unknown_point_exits_2(self, cusp_file, capsys):
        assert main(["lct", cusp_file, "--point", "zzz"]) == 2

    def test_json_round_trip_is_byte_exact(self, cusp_file, capsys):
        assert main(["lct", cusp_file, "--json"]) == 0
        first = capsys.readouterr().out
        reparsed = json.loads(first)
        assert json.dumps(reparsed, indent=2, sort_keys=True) + "\n" == first

    def test_bad_lambda_exits_2(self, cusp_file, capsys):
        assert main(["lct", cusp_file, "--lambda", "0.5"]) == 2
        assert main(["lct", cusp_file, "--lambda", "1/0"]) == 2


class TestVerify:
    @pytest.mark.parametrize(
        "suite", ["table1", "lines", "lemmaG", "lemmaH", "corollary"]
    )
    def test_suites_pass(self, suite, capsys):
        assert main(["verify", "--suite", suite]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out

    def test_properties_with_seed(self, capsys):
        assert main(
            ["verify", "--suite", "properties", "--seed", "42", "--cases", "60"]
        ) == 0

    def test_determinism_bytes(self, capsys):
        args = ["verify", "--suite", "properties", "--seed", "9", "--cases", "40", "--json"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_unknown_suite_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2


class TestConfigRoundTrip:
    def test_config_serializer_round_trips(self):
        cfg = parse_config_text(TRIPLE_CONFIG)
        obj = config_to_json_obj(cfg)
        again = parse_config_text(json.dumps(obj))
        assert config_to_json_obj(again) == obj

    def test_witness_configs_serialize(self):
        for variant in ("deg4", "deg2_tacnodal", "deg8_quadric", "deg9"):
            rec = witness(variant)
            obj = config_to_json_obj(rec.config)
            again = parse_config_text(json.dumps(obj))
            assert lct_global(again).lct == rec.scenario.omega

    def test_certificate_json_shape(self):
        cfg = parse_config_text(CUSP_CONFIG)
        obj = certificate_to_json_obj(lct_global(cfg))
        assert obj["lct"] == "5/6"
        assert obj["minimizer"] == {"kind": "node", "id": "p.n2"}
        assert [r["v"] for r in obj["rows"]] == ["2", "3", "6"]
