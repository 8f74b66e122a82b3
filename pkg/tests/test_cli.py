import io
import json

import pytest

from sturmdual.cli import (
    AnalysisReport,
    build_parser,
    build_report,
    main,
    render_svg,
)
from sturmdual.subst import Mat2, Substitution, parse_substitution


def run_cli(*argv):
    import contextlib

    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_analyze_report_fields():
    code, out, _ = run_cli("analyze", "a->aba,b->ab", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["matrix"] == [[2, 1], [1, 1]]
    assert data["det"] == 1
    assert data["invertible"] is True
    assert data["decomposition"] == "L.E.L.E"
    assert data["selfdual_class"] == "mirror"
    assert data["witness"] == "a"
    assert data["cf_alpha"] == "[0; 2, (1)]"
    assert data["alpha"]["exact"] == "3/2-1/2*sqrt(5)"


def test_analyze_selfdual_direct_example():
    code, out, _ = run_cli("analyze", "a->abaab,b->ababaab", "--json")
    data = json.loads(out)
    assert data["selfdual_class"] == "direct"
    assert data["witness"] == "BAAB"


def test_analyze_krieger():
    code, out, _ = run_cli("analyze", "a->ab,b->baabbaabbaabba", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["invertible"] is False
    assert data["det"] == 0
    assert data["selfdual_class"] is None


def test_report_json_roundtrip():
    report = build_report(parse_substitution("a->aba,b->ab"))
    again = AnalysisReport.from_json_dict(json.loads(json.dumps(report.to_json_dict())))
    assert again == report


def test_dual_reciprocal_inverse_commands():
    assert run_cli("dual", "a->aba,b->ab") == (0, "a->baa,b->ba\n", "")
    assert run_cli("reciprocal", "a->aba,b->ab") == (0, "a->ab,b->abb\n", "")
    assert run_cli("inverse", "a->aba,b->ab") == (0, "a->Ba,b->Abb\n", "")
    assert run_cli("decompose", "a->aba,b->ab") == (0, "L.E.L.E\n", "")


def test_square_flag():
    code, out, _ = run_cli("reciprocal", "a->ab,b->a", "--square")
    assert code == 0 and out == "a->ab,b->abb\n"


def test_conjugate_command():
    code, out, _ = run_cli("conjugate", "a->aba,b->ab", "a->baa,b->ba")
    assert (code, out) == (0, "a\n")
    code, out, _ = run_cli("conjugate", "a->aba,b->ab", "a->ab,b->abb")
    assert (code, out) == (0, "none\n")


def test_exit_codes():
    code, _, err = run_cli("analyze", "a->xy,b->a")
    assert code == 2 and "parse error" in err
    code, _, err = run_cli("reciprocal", "a->ab,b->a")
    assert code == 1 and "determinant" in err
    code, _, err = run_cli("decompose", "a->ab,b->baabbaabbaabba")
    assert code == 1


def test_rauzy_and_tiling_commands():
    code, out, _ = run_cli("rauzy", "a->aba,b->ab", "--json")
    data = json.loads(out)
    assert data["R_a"] == {"lo": "-1", "hi": "-1/2+1/2*sqrt(5)"}
    assert data["R_b"] == {"lo": "-1/2+1/2*sqrt(5)", "hi": "1/2+1/2*sqrt(5)"}
    code, out, _ = run_cli("tiling", "a->aba,b->ab", "--depth", "1", "--json")
    tiles = json.loads(out)
    assert [t["type"] for t in tiles] == ["a", "b", "a"]
    assert tiles[0]["left"] == "0"


def test_stardual_command():
    code, out, _ = run_cli("stardual", "a->aba,b->ab", "--json")
    data = json.loads(out)
    assert data["digits"][0][0] == sorted(["0", "1/2-1/2*sqrt(5)"])
    assert data["digits"][1] == [["0"], ["1"]]


def test_cutproject_and_sturmian_and_cf():
    code, out, _ = run_cli("cutproject", "a->aba,b->ab", "--range", "0", "5", "--json")
    points = json.loads(out)
    assert points[0] == "0" and len(points) >= 3
    code, out, _ = run_cli("sturmian", "3/2-1/2*sqrt(5)", "-n", "5")
    assert out == "abaab\n"
    code, out, _ = run_cli("cf", "3/2-1/2*sqrt(5)")
    assert out == "[0; 2, (1)]\n"
    code, out, _ = run_cli("cf", "[0; 2, (2)]", "--dual")
    assert out == "[0; 1, 1, (2)]\n"
    code, out, _ = run_cli("cf", "3/2-1/2*sqrt(5)", "--test-selfdual")
    assert "selfdual_frequency True" in out


def test_enumerate_deterministic_and_counts():
    first = run_cli("enumerate", "--max-len", "3")
    second = run_cli("enumerate", "--max-len", "3")
    assert first == second
    assert first[0] == 0
    assert first[1].strip().endswith("# 26 substitutions")
    # single generators are not primitive; the four mixed words are
    code, out, _ = run_cli("enumerate", "--max-len", "2", "--primitive")
    listed = [line for line in out.splitlines() if not line.startswith("#")]
    assert len(listed) == 4
    assert "# 4 substitutions" in out
    code, _, err = run_cli("enumerate", "--max-len", "11")
    assert code == 1 and "cap" in err


def test_enumerate_selfdual_includes_rho():
    code, out, _ = run_cli("enumerate", "--max-len", "4", "--selfdual")
    assert code == 0
    assert "a->aba,b->ab" in out


def test_verify_suites_smoke():
    for suite, extra in [
        ("power-hull", ["--max-len", "3"]),
        ("dual-frequency", ["--max-len", "4"]),
        ("palindrome", ["--max-len", "4"]),
        ("star-relation", ["--max-len", "4"]),
        ("dual-contravariance", ["--count", "20"]),
    ]:
        code, out, _ = run_cli("verify", suite, *extra)
        assert code == 0
        assert "PASS" in out
    code, _, err = run_cli("verify", "no-such-suite")
    assert code == 1


def test_render_byte_stable_and_counts():
    doc1 = render_svg(parse_substitution("a->aba,b->ab"), "dual_strand", 2, 20.0)
    doc2 = render_svg(parse_substitution("a->aba,b->ab"), "dual_strand", 2, 20.0)
    assert doc1 == doc2
    # polyline point count = segment count + 1; segments = column sum of (M^T)^2
    m = Mat2(2, 1, 1, 1).transpose()
    m2 = m.mul(m)
    expected_segments = m2.m11 + m2.m21
    points = doc1.split('points="')[1].split('"')[0].split()
    assert len(points) == expected_segments + 1


def test_render_tiling_and_strand():
    doc = render_svg(parse_substitution("a->aba,b->ab"), "tiling", 3, 10.0)
    rows = doc.count("<rect")
    total = sum(len(parse_substitution("a->aba,b->ab").power(n).apply("a")) for n in (1, 2, 3)) + 1
    assert rows == total
    strand = render_svg(parse_substitution("a->ab,b->a"), "strand", 0, 10.0)
    assert strand.count("polyline") == 1
    rz = render_svg(parse_substitution("a->aba,b->ab"), "rauzy", 0, 10.0)
    assert rz.count("<rect") == 2


def test_render_to_file(tmp_path):
    target = tmp_path / "out.svg"
    code, out, _ = run_cli(
        "render", "a->aba,b->ab", "--target", "tiling", "--iterations", "1",
        "--svg", str(target),
    )
    assert code == 0
    assert target.read_text().startswith("<svg")


def test_parser_covers_all_subcommands():
    parser = build_parser()
    subcommands = {
        "analyze", "dual", "reciprocal", "inverse", "decompose", "conjugate",
        "selfdual", "rauzy", "tiling", "stardual", "cutproject", "sturmian",
        "cf", "enumerate", "verify", "render",
    }
    actions = [a for a in parser._actions if hasattr(a, "choices") and a.choices]
    assert subcommands <= set(actions[0].choices)
