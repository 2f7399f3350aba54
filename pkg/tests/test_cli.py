from __future__ import annotations

import json

import pytest

from cjtail import corpus
from cjtail.cli import EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_VERIFY, main
from cjtail.laurent import format_series

from helpers import oracle_jones_A, q_coeffs

TREFOIL = "X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cjp_10_154m(capsys):
    code, out, _ = run(capsys, "cjp", "--knot", "10_154m", "--N", "2")
    assert code == 0
    head, series = out.splitlines()
    assert head.startswith("10_154m  N=2")
    assert series.startswith("1 - 2q + 2q^2 - 3q^3 + 2q^4")


def test_cjp_unknot(capsys):
    code, out, _ = run(capsys, "cjp", "--knot", "unknot", "--N", "7")
    assert code == 0 and out.splitlines()[-1] == "1"


def test_cjp_pd_matches_oracle(capsys):
    code, out, _ = run(capsys, "cjp", "--pd", TREFOIL, "--N", "2", "--json")
    assert code == 0
    j = json.loads(out)
    from cjtail.diagram import parse_pd
    want = q_coeffs(oracle_jones_A(parse_pd(TREFOIL)))
    sign = 1 if want[0] > 0 else -1
    assert j["coefficients"] == [sign * c for c in want]


def test_json_and_text_agree(capsys):
    _, text, _ = run(capsys, "cjp", "--knot", "6_2", "--N", "3")
    _, js, _ = run(capsys, "cjp", "--knot", "6_2", "--N", "3", "--json")
    j = json.loads(js)
    assert text.splitlines()[1] == format_series(j["coefficients"], ellipsis=False)
    assert f"writhe={j['writhe']}" in text
    _, text, _ = run(capsys, "tail", "--knot", "ltrefoil", "--order", "4")
    _, js, _ = run(capsys, "tail", "--knot", "ltrefoil", "--order", "4", "--json")
    assert text.strip() == format_series(json.loads(js)["coefficients"])


@pytest.mark.parametrize("argv", [
    ("cjp", "--knot", "figure-eight", "--N", "3", "--json"),
    ("fibered", "--knot", "10_154m"),
    ("verify", "junkterms", "--amax", "2", "--bmax", "1"),
])
def test_deterministic(capsys, argv):
    assert run(capsys, *argv) == run(capsys, *argv)


def test_tail_and_head(capsys):
    code, out, _ = run(capsys, "tail", "--knot", "10_154m", "--order", "3")
    assert code == 0 and out.strip() == "1 - 2q - q^2 + ..."
    code, out, _ = run(capsys, "tail", "--knot", "rtrefoil", "--order", "4")
    assert code == 0 and out.strip() == "1 + 0q + 0q^2 + 0q^3 + ..."
    assert json.loads(run(capsys, "tail", "--knot", "rtrefoil", "--order", "4", "--json")[1])[
        "coefficients"] == [1, 0, 0, 0]
    h = run(capsys, "head", "--knot", "10_154m", "--order", "2")
    t = run(capsys, "tail", "--knot", "10_154", "--order", "2")
    assert h == t and h[0] == 0


def test_adequacy_and_fibered(capsys):
    kink = corpus.load_corpus()["kinked-unknot"].pd_text
    code, out, _ = run(capsys, "adequacy", "--pd", kink)
    assert code == 0 and "A-adequate: no" in out
    assert run(capsys, "fibered", "--knot", "rtrefoil")[1].strip() == "tree: yes, β_A = 0"
    assert run(capsys, "fibered", "--knot", "10_154m")[1].strip() == "tree: no, β_A = 2"
    code, _, err = run(capsys, "fibered", "--knot", "kinked-unknot")
    assert code == EXIT_PRECONDITION and "adequate" in err


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "move", "--knot", "10_154m", "--order", "3")
    assert code == 0 and out.startswith("move: PASS")
    code, out, _ = run(capsys, "verify", "junkterms", "--amax", "2", "--bmax", "2")
    assert code == 0 and out.startswith("junkterms: PASS")
    code, out, _ = run(capsys, "verify", "mainlemma", "--knot", "ltrefoil", "--n", "2")
    assert code == 0 and out.startswith("mainlemma: PASS")
    # the computed side stops at order 3 under this budget; the golden series covers order 8
    code, out, _ = run(capsys, "verify", "theta", "--knot", "10_154m", "--order", "8", "--budget", "20000")
    assert code == 0 and out.startswith("theta: PASS (tail = f(−q²,−q)²)")
    assert "computed_order: 3" in out and "golden_tail_match: True" in out


def test_verify_move_needs_chord(capsys):
    code, _, err = run(capsys, "verify", "move", "--knot", "6_2")
    assert code == EXIT_PRECONDITION and "--chord" in err


def test_verify_theta_other_knots(capsys):
    # 6_2 has a piece that is neither a tree nor a triangle
    code, _, err = run(capsys, "verify", "theta", "--knot", "6_2", "--order", "3")
    assert code == EXIT_PRECONDITION and "triangle" in err
    code, out, _ = run(capsys, "verify", "theta", "--knot", "ltrefoil", "--order", "3")
    assert code == 0 and "triangles: 1" in out
    # the figure-eight shares the left trefoil's tail
    code, out, _ = run(capsys, "verify", "theta", "--knot", "figure-eight", "--order", "3")
    assert code == 0 and "triangles: 1" in out


def test_exit_codes(capsys):
    assert run(capsys, "cjp", "--knot", "10_154m", "--N", "6")[0] == EXIT_RESOURCE
    assert run(capsys, "cjp", "--knot", "10_154m", "--N", "3", "--budget", "5")[0] == EXIT_RESOURCE
    assert run(capsys, "cjp", "--pd", "X[1,2,3]", "--N", "2")[0] == EXIT_PRECONDITION
    assert run(capsys, "cjp", "--knot", "no-such-knot", "--N", "2")[0] == EXIT_PRECONDITION
    assert run(capsys, "cjp", "--N", "2")[0] == EXIT_PRECONDITION
    assert EXIT_VERIFY == 4
    with pytest.raises(SystemExit):
        main(["cjp", "--knot", "unknot"])


def test_corpus_file(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("# a trefoil\nmine: PD[" + TREFOIL + "]\n")
    code, out, _ = run(capsys, "adequacy", "--knot", "mine", "--corpus", str(f))
    assert code == 0 and "A-adequate: yes" in out
