"""Relation catalog structure plus spot checks on the cheap identities.

The expensive sweeps (full family runs, idempotent dimension counts, the
bent/loop post checks) live in test_acceptance.py; here we exercise the
catalog plumbing and a handful of fast entries.
"""

from fractions import Fraction

import pytest

from f4diagrams.diagram import CUP, MERGE, DiagramArityError, as_combo
from f4diagrams.relations import (
    RelationSpec,
    catalog,
    check_relation,
    relation_families,
    relation_line,
    relation_names,
    run_relations,
)

pytestmark = pytest.mark.usefixtures("warm_tensors")


def test_catalog_shape():
    cat = catalog()
    assert len(cat) == 57
    for name, spec in cat.items():
        assert spec.name == name
        assert spec.source
        assert (spec.lhs.src, spec.lhs.tgt) == (spec.rhs.src, spec.rhs.tgt)
    assert relation_names() == list(cat)


def test_families():
    fams = relation_families()
    for f in ("vortex", "venom", "chess", "topsy", "turvy", "rotary",
              "flick", "pomegranate", "ladderslip", "pivotal",
              "magic", "jordan", "triangle", "coals", "croatia", "bosnia"):
        assert f in fams
    cat = catalog()
    assert cat["bosnia_diff"].family == "bosnia"
    assert cat["3spike"].family == "3spike"


def test_family_expansion_runs_chess():
    reports = run_relations(["chess"])
    assert len(reports) == 5
    assert all(r["holds"] for r in reports)
    assert all(r["name"].startswith("chess_") for r in reports)


def test_vortex_family_holds():
    for r in run_relations(["vortex"]):
        assert r["holds"], r


def test_magic_projector():
    r = check_relation("magic")
    assert r["holds"]
    assert r["basis_checked"] == 676
    assert relation_line(r) == "magic: OK (676 inputs)"


def test_bosnia_deviates_by_design():
    r = check_relation("bosnia_diff")
    assert not r["holds"]
    assert not r["expected_holds"]
    assert r["max_deviation_terms"] > 0
    assert relation_line(r) == "bosnia_diff: OK (676 inputs, deviates as expected)"


def test_croatia_is_not_checkable():
    with pytest.raises(ValueError):
        check_relation("croatia")
    reports = run_relations(["croatia"])
    assert reports == [
        {
            "name": "croatia",
            "skipped": True,
            "reason": "free scalar; recorded for reference only",
        }
    ]


def test_unknown_names_raise():
    with pytest.raises(KeyError):
        check_relation("does_not_exist")
    with pytest.raises(KeyError):
        run_relations(["does_not_exist"])


def test_relation_line_branches():
    base = {"name": "x", "basis_checked": 9, "max_deviation_terms": 0}
    ok = dict(base, holds=True, expected_holds=True)
    assert relation_line(ok) == "x: OK (9 inputs)"
    dev = dict(base, holds=False, expected_holds=False, max_deviation_terms=3)
    assert relation_line(dev) == "x: OK (9 inputs, deviates as expected)"
    bad = dict(base, holds=False, expected_holds=True, max_deviation_terms=3)
    assert relation_line(bad) == "x: FAIL max_deviation_terms=3 over 9 inputs"
    odd = dict(base, holds=True, expected_holds=False)
    assert relation_line(odd).startswith("x: FAIL expected a deviation")


def test_catalog_entry_rejects_mismatched_arities():
    with pytest.raises(DiagramArityError):
        RelationSpec(
            name="bogus",
            lhs=as_combo(MERGE),
            rhs=as_combo(CUP),
            source="arity mismatch on purpose",
        )


def test_pole_metadata():
    cat = catalog()
    assert cat["coals"].excluded_delta == (Fraction(0), Fraction(-10))
    assert cat["bosnia_diff"].excluded_delta == (Fraction(1),)
    assert cat["bosnia_dot"].excluded_delta == (Fraction(1),)
    # every excluded value avoids the evaluation point d = 26
    for spec in cat.values():
        assert Fraction(26) not in spec.excluded_delta
