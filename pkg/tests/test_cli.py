"""End-to-end CLI behavior through main(argv): output bytes and exit codes."""

import json

import pytest

from f4diagrams.cli import main
from f4diagrams.diagram import MERGE, as_combo
from f4diagrams.functor import ExactTensor, apply_combo_to_basis

pytestmark = pytest.mark.usefixtures("warm_tensors")


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_eval_closed_bubble(capsys):
    rc, out, err = run(capsys, "eval", "cup ; cap", "--closed")
    assert (rc, out, err) == (0, "26\n", "")
    # the 2 -> 2 hourglass closes to the same scalar: tr(G * Ginv) = 26
    rc, out, err = run(capsys, "eval", "cap ; cup", "--closed")
    assert (rc, out, err) == (0, "26\n", "")


def test_eval_closed_trace_antisymmetrizer(capsys):
    rc, out, _ = run(capsys, "eval", "asym(3)", "--closed-trace")
    assert rc == 0
    assert out == "2600\n"


def test_eval_shape_summary(capsys):
    rc, out, _ = run(capsys, "eval", "merge ; split")
    assert rc == 0
    assert out == "2 -> 2 map, 1 term(s)\n"


def test_eval_closed_trace(capsys):
    rc, out, _ = run(capsys, "eval", "split ; merge", "--closed-trace")
    assert rc == 0
    assert out == "182/3\n"


def test_eval_basis_matches_library(capsys):
    rc, out, _ = run(capsys, "eval", "merge", "--basis", "0,0")
    assert rc == 0
    sparse = apply_combo_to_basis(as_combo(MERGE), (0, 0))
    expect = ExactTensor.from_sparse((26,), sparse).to_lines()
    assert out == expect + "\n"


def test_eval_rejects_bad_syntax(capsys):
    rc, out, err = run(capsys, "eval", "merge @@ split")
    assert rc == 2 and out == ""
    assert "position" in err


def test_eval_closed_needs_square_diagram(capsys):
    rc, _, err = run(capsys, "eval", "merge", "--closed")
    assert rc == 2
    assert "--closed" in err and "m -> m" in err


def test_verify_single_relation(capsys):
    rc, out, _ = run(capsys, "verify", "magic")
    assert rc == 0
    assert out == "magic: OK (676 inputs)\n"


def test_verify_expected_deviation(capsys):
    rc, out, _ = run(capsys, "verify", "bosnia_diff")
    assert rc == 0
    assert out == "bosnia_diff: OK (676 inputs, deviates as expected)\n"


def test_verify_skips_free_scalar_entry(capsys):
    rc, out, _ = run(capsys, "verify", "croatia")
    assert rc == 0
    assert out.startswith("croatia: SKIP")


def test_verify_family_and_suite(capsys):
    rc, out, _ = run(capsys, "verify", "venom", "sponge")
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[-1] == "sponge: OK (25 pairs)"
    assert all(l.endswith("inputs)") for l in lines[:-1])


def test_verify_unknown_target(capsys):
    rc, _, err = run(capsys, "verify", "definitely_not_a_relation")
    assert rc == 2
    assert "unknown verify target" in err


def test_verify_json_payload(capsys):
    rc, out, _ = run(capsys, "verify", "magic", "--format", "json")
    assert rc == 0
    payload = json.loads(out)
    assert payload["magic"]["holds"] is True
    assert payload["magic"]["basis_checked"] == 676


def test_alpha_only_for_coeffs(capsys):
    for argv in (("verify", "magic", "--alpha", "2"),
                 ("eval", "cup ; cap", "--delta", "10"),
                 ("--alpha", "1/2", "dims")):
        rc, _, err = run(capsys, *argv)
        assert rc == 2
        assert "coeffs" in err


def test_coeffs_kappa_plain(capsys):
    rc, out, _ = run(capsys, "coeffs", "kappa")
    assert rc == 0
    assert out.split("\n")[:4] == [
        "kappa1 = (-1/6*d^1)/(1)",
        "kappa1(7/3, 26) = -13/3",
        "kappa2 = (2/3*d^1)/(d^1 + 2)",
        "kappa2(7/3, 26) = 13/21",
    ]


def test_coeffs_specialization_at_pole_is_a_clean_error(capsys):
    # kappa2 has denominator d + 2, so delta = -2 must be refused, not crash.
    rc, out, err = run(capsys, "coeffs", "kappa", "--delta", "-2")
    assert rc == 2
    assert out == ""
    assert err.startswith("error:")
    assert "vanishes" in err


def test_coeffs_triangle_with_specialization(capsys):
    rc, out, _ = run(capsys, "coeffs", "triangle", "--alpha", "3", "--delta", "4")
    assert rc == 0
    assert "c(3, 4) = -1/2" in out
    rc, out, _ = run(capsys, "coeffs", "triangle", "--format", "json")
    payload = json.loads(out)
    assert payload["coefficients"]["c"]["value"] == "-1"


def test_homdim(capsys):
    rc, out, _ = run(capsys, "homdim", "2", "2")
    assert rc == 0
    assert out == "5\n"
    rc, _, err = run(capsys, "homdim", "4", "4")
    assert rc == 2
    assert "no catalogued spanning set" in err


def test_output_is_byte_stable(capsys):
    first = run(capsys, "coeffs", "sqburst", "--format", "json")
    second = run(capsys, "coeffs", "sqburst", "--format", "json")
    assert first == second
    a = run(capsys, "verify", "chess")
    b = run(capsys, "verify", "chess")
    assert a == b
