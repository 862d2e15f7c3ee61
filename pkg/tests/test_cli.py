import json
import os
import subprocess
import sys

import pytest

jsonschema = pytest.importorskip("jsonschema")

from golodkit.cli import REPORT_SCHEMA, run
from golodkit.errors import ParseError
from golodkit.parser import format_ideal_file, parse_expression, parse_ideal_file
from golodkit.ring import GF, QQ


SECTION2 = "ring Q[x1,x2]\nx1*x2\nx2^2\n"
PRINCIPAL = "ring Q[x1,x2]\nx1*x2\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestParser:
    def test_section2_ideal(self):
        ring, ideal, meta = parse_ideal_file(SECTION2)
        assert ring.field == QQ and ring.names == ("x1", "x2")
        assert [str(f) for f in ideal.gens] == ["x1*x2", "x2^2"]
        assert meta == {}

    def test_prime_field_file(self):
        ring, ideal, _ = parse_ideal_file("ring F5[x,y]\nx^2+3*y^2\n")
        assert ring.field == GF(5)
        assert str(ideal.gens[0]) == "x^2 + 3*y^2"

    def test_constant_term_rejected_with_line(self):
        with pytest.raises(ParseError) as exc:
            parse_ideal_file("ring Q[x]\nx+1\n")
        assert exc.value.line == 2

    def test_unknown_identifier(self):
        with pytest.raises(ParseError) as exc:
            parse_ideal_file("ring Q[x]\nx*y\n")
        assert "unknown identifier 'y'" in str(exc.value)

    def test_syntax_error_position(self):
        from golodkit.ring import PolyRing

        with pytest.raises(ParseError) as exc:
            parse_expression("x1 + $", PolyRing(QQ, ["x1"]), 3)
        assert exc.value.line == 3

    def test_headers(self):
        text = "ring Q[x1,x2]\norder lex\nperm 2,1\nx1*x2\n"
        _, _, meta = parse_ideal_file(text)
        assert meta["order"].kind == "lex"
        assert meta["perm"].images == (2, 1)

    def test_round_trip_is_identity(self):
        ring, ideal, _ = parse_ideal_file(SECTION2)
        text = format_ideal_file(ideal)
        ring2, ideal2, _ = parse_ideal_file(text)
        assert ring2 == ring and ideal2.gens == ideal.gens
        assert format_ideal_file(ideal2) == text

    def test_explicit_multiplication_only(self):
        ring, _, _ = parse_ideal_file("ring Q[x1,x2]\nx1*x2\n")
        with pytest.raises(ParseError):
            parse_expression("x1 x2", ring, 1)

    def test_parentheses_and_unary_minus(self):
        ring, _, _ = parse_ideal_file("ring Q[x1,x2]\nx1\n")
        f = parse_expression("-(x1 - 2*x2)^2", ring, 1)
        x1, x2 = ring.var(1), ring.var(2)
        assert f == -((x1 - 2 * x2) ** 2)


def _validated(report):
    payload = report.to_dict()
    jsonschema.validate(payload, REPORT_SCHEMA)
    return payload


class TestCommands:
    def test_check_d_on_section2_passes(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        code, report = run(["check", f, "--mode", "d"])
        assert code == 0 and report.results["holds"]
        _validated(report)

    def test_check_d_sigma_swap_fails_with_witness(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        code, report = run(["check", f, "--mode", "d-sigma", "--perm", "2,1"])
        assert code == 1
        assert report.results["witness"] == "x1^2"
        _validated(report)

    def test_check_d_on_principal_fails(self, tmp_path):
        f = write(tmp_path, "i.txt", PRINCIPAL)
        code, report = run(["check", f, "--mode", "d"])
        assert code == 1 and report.results["witness"] == "x2^2"

    def test_check_strong(self, tmp_path):
        f = write(tmp_path, "i.txt", "ring Q[x1,x2]\nx1^2\nx1*x2\nx2^2\n")
        code, report = run(["check", f, "--mode", "strong"])
        assert code == 0
        _validated(report)

    def test_stretched_fixture_check(self, tmp_path):
        code, report = run(["fixtures", "--name", "stretched:3,3,art"])
        assert code == 0
        _validated(report)
        ideal_text = "\n".join(report.results["ideal_file"]) + "\n"
        f = write(tmp_path, "s.txt", ideal_text)
        code2, rep2 = run(["check", f, "--mode", "d-sigma", "--perm", "3,1,2"])
        assert code2 == 0

    def test_d_ideal_command(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        code, report = run(["d-ideal", f])
        assert code == 0 and report.results["d_ideal"] == ["x2"]
        code, report = run(["d-ideal", f, "--perm", "2,1"])
        assert sorted(report.results["d_ideal"]) == ["x1", "x2"]

    def test_betti_and_unsupported(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        code, report = run(["betti", f])
        assert code == 0 and report.results["betti"] == [1, 2, 1]
        g = write(tmp_path, "g.txt", "ring Q[x1,x2]\nx1^2-x2^2\n")
        code, report = run(["betti", g])
        assert code == 3
        _validated(report)

    def test_koszul_cycles(self, tmp_path):
        f = write(tmp_path, "i.txt", "ring Q[x1,x2,x3]\nx1*x2\nx2*x3\n")
        code, report = run(["koszul-cycles", f])
        assert code == 0
        assert "z[2][1] = x2 dx1dx3" in report.results["cycles"]

    def test_koszul_cycles_with_supplied_complex(self, tmp_path):
        # non-monomial generators for the same ideal, resolution supplied
        from golodkit.monomial import MonomialIdeal
        from golodkit.resolution import format_complex, minimalize, taylor_complex
        from golodkit.ring import PolyRing

        ring = PolyRing(QQ, ["x1", "x2"])
        C = minimalize(taylor_complex(MonomialIdeal.from_gens(ring, [(1, 1), (0, 2)])))
        cfile = write(tmp_path, "c.txt", format_complex(C))
        ifile = write(tmp_path, "i.txt", "ring Q[x1,x2]\nx1*x2+x2^2\nx2^2\n")
        code, report = run(["koszul-cycles", ifile, "--complex", cfile])
        assert code == 0 and len(report.results["cycles"]) == 3
        # without a complex the command is unsupported for this input
        code2, _ = run(["koszul-cycles", ifile])
        assert code2 == 3

    def test_verify_commands(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        for what in ("chain", "basis", "zero-map"):
            code, report = run(["verify", f, "--what", what])
            assert code == 0, what
            assert all(c["passed"] for c in report.checks)
            _validated(report)

    def test_poincare_with_equality(self, tmp_path):
        f = write(tmp_path, "i.txt", "ring Q[x1,x2]\nx1^2\nx1*x2\nx2^2\n")
        code, report = run(["poincare", f, "--trunc", "6", "--serre", "--golod-eq"])
        assert code == 0
        assert report.results["poincare"]["coeffs"] == [1, 2, 4, 8, 16, 32, 64]
        assert report.results["poincare"]["coeffs"] == report.results["serre"]["coeffs"]
        _validated(report)

    def test_ops_commands(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        g = write(tmp_path, "g.txt", "ring Q[x1,x2]\nx2\n")
        code, report = run(["ops", f, "--op", "saturate", "--with", g])
        assert code == 0 and report.results["t0"] == 2 and report.results["unit_ideal"]
        code, report = run(["ops", f, "--op", "power", "--k", "2"])
        assert code == 0 and "x2^4" in report.results["result"]
        code, report = run(["ops", f, "--op", "colon", "--with", g])
        assert code == 0
        code, report = run(["ops", f, "--op", "closure"])
        assert code == 0
        code, report = run(["ops", f, "--op", "intersect", "--with", g])
        assert code == 0
        tri = write(tmp_path, "t.txt", "ring Q[x1,x2,x3]\nx1*x2\nx1*x3\nx2*x3\n")
        code, report = run(["ops", tri, "--op", "symbolic", "--k", "2"])
        assert code == 0 and "x1*x2*x3" in report.results["result"]
        _validated(report)

    def test_ops_usage_errors(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        code, _ = run(["ops", f, "--op", "colon"])
        assert code == 2
        code, _ = run(["ops", f, "--op", "power"])
        assert code == 2

    def test_fixture_paper_d_example(self):
        code, report = run(["fixtures", "--name", "paper-d-example"])
        assert code == 0
        assert report.results["d_values"] == [
            "x2^3 + x1*x3", "x2*x3^3", "x3*x4", "0",
        ]
        _validated(report)

    def test_fixture_sum_family_seeded_reproducible(self):
        code1, rep1 = run(["fixtures", "--name", "sum-family:3,2,11"])
        code2, rep2 = run(["fixtures", "--name", "sum-family:3,2,11"])
        assert code1 == code2 == 0
        d1, d2 = rep1.to_dict(), rep2.to_dict()
        d1.pop("timings"), d2.pop("timings")
        assert d1 == d2
        code3, rep3 = run(["fixtures", "--name", "sum-family:3,2,12"])
        assert code3 == 0

    def test_parse_error_exit_code(self, tmp_path):
        f = write(tmp_path, "bad.txt", "ring Q[x]\nx+1\n")
        code, report = run(["check", f, "--mode", "d"])
        assert code == 2
        _validated(report)

    def test_missing_file(self):
        code, _ = run(["betti", "/nonexistent/path.txt"])
        assert code == 2

    def test_field_override(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        code, report = run(["poincare", f, "--trunc", "4", "--field", "F32003"])
        assert code == 0
        assert report.results["poincare"]["coeffs"] == [1, 2, 3, 5, 8]


class TestJsonOutput:
    def test_every_command_validates(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        g = write(tmp_path, "g.txt", "ring Q[x1,x2]\nx2\n")
        invocations = [
            ["d-ideal", f],
            ["check", f, "--mode", "d"],
            ["betti", f],
            ["koszul-cycles", f],
            ["verify", f, "--what", "basis"],
            ["poincare", f, "--trunc", "4"],
            ["ops", f, "--op", "saturate", "--with", g],
            ["fixtures", "--name", "paper-d-example"],
        ]
        for argv in invocations:
            _, report = run(argv + ["--json"])
            payload = _validated(report)
            json.dumps(payload)  # serializable

    def test_console_script_subprocess(self, tmp_path):
        f = write(tmp_path, "i.txt", SECTION2)
        proc = subprocess.run(
            [sys.executable, "-m", "golodkit.cli", "check", f, "--mode", "d", "--json"],
            capture_output=True,
            text=True,
            env={**os.environ, "GOLODKIT_THREADS": "2"},
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        jsonschema.validate(payload, REPORT_SCHEMA)
        assert payload["results"]["holds"] is True
