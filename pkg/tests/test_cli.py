"""Command-line interface: parsing, execution, exit codes, documents."""
import csv
import json

import pytest

from tailorder.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_REFUTED,
    EXIT_USAGE,
    build_parser,
    main,
    parse_exppoly,
)


class TestParsing:
    def test_compare_command(self):
        args = build_parser().parse_args(
            ["compare", "--x", "maxexp(1,1)", "--y", "maxexp(1,2)",
             "--s", "2", "--criterion", "newcrit"])
        assert args.command == "compare"
        assert args.s == 2
        assert args.criterion == "newcrit"

    def test_analyze_command(self):
        args = build_parser().parse_args(["analyze", "--dist", "polyexp(1)", "--s-max", "3"])
        assert args.command == "analyze"
        assert args.s_max == 3

    def test_unknown_flag_exits_with_usage_code(self):
        assert main(["compare", "--bogus", "1"]) == EXIT_USAGE

    def test_invalid_order_rejected(self):
        code = main(["compare", "--x", "exp(1)", "--y", "exp(1)", "--s", "0"])
        assert code == EXIT_USAGE

    def test_exppoly_literal(self):
        p = parse_exppoly("1*e(-1)+(-1)*e(-2)")
        assert p.terms == ((1.0, 1.0), (-1.0, 2.0))
        p2 = parse_exppoly("0.5*e(-0.3) + 2*e(-1.7)")
        assert p2.terms == ((0.5, 0.3), (2.0, 1.7))
        with pytest.raises(ValueError):
            parse_exppoly("garbage")


class TestExecution:
    def test_compare_supported_exit_zero(self, tmp_path):
        out = tmp_path / "verdict.json"
        code = main(["--json", str(out), "compare", "--x", "exp(1)", "--y", "exp(1)",
                     "--s", "1", "--criterion", "ifr", "--a-grid", "8", "--b-grid", "6"])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["schema"] == 1
        assert doc["outcome"] == "supported"
        assert doc["criterion"] == "pattern-ifr"
        assert "runtime_ms" in doc and "grid" in doc

    def test_compare_refuted_exit_one(self, tmp_path):
        out = tmp_path / "verdict.json"
        code = main(["--json", str(out), "compare", "--x", "bpareto(2,6)",
                     "--y", "bpareto(5,10)", "--s", "1", "--criterion", "ifra",
                     "--a-grid", "16"])
        doc = json.loads(out.read_text())
        assert doc["outcome"] in ("refuted", "supported", "inconclusive")
        assert code in (EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE)
        if doc["outcome"] == "refuted":
            assert code == EXIT_REFUTED
            assert "witness" in doc

    def test_analyze_document(self, tmp_path):
        out = tmp_path / "classes.json"
        code = main(["--json", str(out), "analyze", "--dist", "polyexp(1)", "--s-max", "2"])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        rows = doc["classes"]
        assert rows[0]["s"] == 1 and rows[0]["ifr"] == "non_monotone"
        assert rows[1]["s"] == 2 and rows[1]["ifr"] == "increasing"

    def test_roots_document(self, tmp_path):
        out = tmp_path / "roots.json"
        code = main(["--json", str(out), "roots", "--exppoly", "1*e(-1)+(-1)*e(-2)",
                     "--lo", "-5", "--hi", "5"])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["bound"] == 1
        assert len(doc["roots"]) == 1
        lo, hi = doc["roots"][0]
        assert lo <= 0.0 <= hi

    def test_scan_with_trace(self, tmp_path):
        out = tmp_path / "scan.json"
        trace = tmp_path / "trace.csv"
        code = main(["--json", str(out), "--csv", str(trace), "--trace",
                     "scan", "--exppoly", "1*e(-1)+(-1)*e(-2)", "--x-max", "20"])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["pattern"] in ("+", "-", "+,-", "-,+")
        with open(trace) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["x", "value", "sign"]
        assert len(rows) > 64

    def test_casebook_single_case(self, tmp_path):
        out = tmp_path / "cases.json"
        code = main(["--json", str(out), "casebook", "--id", "MAXEXP_DFR_ONSET"])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["passed"] == 1 and doc["failed"] == 0

    def test_casebook_unknown_id(self):
        assert main(["casebook", "--id", "NOPE"]) == EXIT_USAGE

    def test_unwritable_report_path_exits_io(self, tmp_path):
        from tailorder.cli import EXIT_IO
        target = tmp_path / "no" / "such" / "dir" / "out.json"
        code = main(["--json", str(target), "roots",
                     "--exppoly", "1*e(-1)+(-1)*e(-2)", "--lo", "-5", "--hi", "5"])
        assert code == EXIT_IO

    def test_threads_do_not_change_document(self, tmp_path):
        base_args = ["compare", "--x", "maxexp(1,1)", "--y", "maxexp(1,2)",
                     "--s", "1", "--criterion", "ifra", "--a-grid", "12"]
        out1, out4 = tmp_path / "t1.json", tmp_path / "t4.json"
        assert main(["--json", str(out1), "--threads", "1"] + base_args) == EXIT_OK
        assert main(["--json", str(out4), "--threads", "4"] + base_args) == EXIT_OK
        d1 = json.loads(out1.read_text())
        d4 = json.loads(out4.read_text())
        d1.pop("runtime_ms"), d4.pop("runtime_ms")
        assert d1 == d4

    def test_verdict_documents_rerun_identically(self, tmp_path):
        # re-running the embedded grid reproduces the outcome
        out = tmp_path / "verdict.json"
        main(["--json", str(out), "compare", "--x", "maxexp(1,1)",
              "--y", "maxexp(1,2)", "--s", "2", "--criterion", "ifra",
              "--a-grid", "12"])
        doc = json.loads(out.read_text())
        from tailorder import GridSpec, MaxExp, compare_ifra
        grid = GridSpec(tuple(doc["grid"]["a_values"]), tuple(doc["grid"]["b_values"]))
        verdict = compare_ifra(MaxExp(1.0, 1.0), MaxExp(1.0, 2.0), doc["s"], grid)
        assert verdict.outcome == doc["outcome"]
        assert verdict.cells_scanned == doc["cells_scanned"]

    def test_float_serialization_precision(self, tmp_path):
        out = tmp_path / "roots.json"
        main(["--json", str(out), "roots", "--exppoly", "1*e(-2)+(-0.9)*e(-1)"])
        doc = json.loads(out.read_text())
        lo, hi = doc["roots"][0]
        # 17 significant digits round-trip through JSON: the root at
        # -log(0.9) must sit inside the reported interval
        import math
        assert lo <= -math.log(0.9) <= hi
        assert hi - lo <= 1e-11
