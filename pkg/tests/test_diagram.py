"""Term language: parser round trips, arity checking, operators, builders."""

from fractions import Fraction

import pytest

from f4diagrams.diagram import (
    CAP,
    CROSS,
    CUP,
    MERGE,
    SPLIT,
    DiagramArityError,
    DiagramSyntaxError,
    Id,
    as_combo,
    bigfive_list,
    brutal_list,
    build_named,
    combo_to_str,
    mirror,
    named_registry,
    parse_diagram,
    rot,
    rot_inv,
    switch,
    symmetrizer,
)

ROUND_TRIP_FIXTURES = [
    "merge",
    "split",
    "cup",
    "cap",
    "cross",
    "id(1)",
    "id(2)",
    "id(3)",
    "sym(2)",
    "asym(2)",
    "sym(3)",
    "asym(3)",
    "named(jail)",
    "named(hourglass)",
    "named(H)",
    "named(I)",
    "named(dotcross)",
    "named(claw)",
    "named(crown)",
    "split @ split",
    "named(triangle)",
    "named(square)",
    "named(pentagon)",
    "named(bigfive3)",
    "named(brutal7)",
    "merge @ split",
    "cup @ cap",
    "id(1) @ merge",
    "merge ; split",
    "split ; merge",
    "cap ; cup",
    "cup ; cap",
    "cross ; cross",
    "merge ; split ; merge",
    "id(2) ; cross",
    "1/2 * merge",
    "-2/3 * cross",
    "3 * cup",
    "merge + merge",
    "id(2) - cross",
    "1/2 * id(2) + 1/2 * cross",
    "1/6 * (id(2) + (cap ; cup) + cross)",
    "(merge ; split) @ id(1)",
    "id(1) @ (split ; merge)",
    "(cup @ id(1)) ; (id(1) @ cap)",
    "(id(1) @ cup) ; (cap @ id(1))",
    "sym(2) ; merge",
    "asym(2) ; named(H)",
    "(cross @ id(1)) ; (id(1) @ cross)",
    "named(H) ; named(H)",
]

# Ten ill-typed expressions: every one must be rejected with a position.
ARITY_ERROR_FIXTURES = [
    "cap ; (id(1) @ merge)",
    "merge ; merge",
    "id(2) + merge",
    "cup ; cup",
    "cross ; split",
    "cap @ cup ; merge ; merge",
    "sym(3) ; asym(2)",
    "named(H) ; cap ; cap",
    "1/2 * (merge + split)",
    "id(1) ; cap",
]


def test_round_trip_fixture_count():
    assert len(ROUND_TRIP_FIXTURES) == 50
    assert len(set(ROUND_TRIP_FIXTURES)) == 50


@pytest.mark.parametrize("text", ROUND_TRIP_FIXTURES)
def test_parse_round_trip(text):
    first = parse_diagram(text)
    again = parse_diagram(combo_to_str(first))
    assert first.terms == again.terms
    assert (first.src, first.tgt) == (again.src, again.tgt)


@pytest.mark.parametrize("text", ARITY_ERROR_FIXTURES)
def test_arity_errors_carry_positions(text):
    with pytest.raises(DiagramArityError) as err:
        parse_diagram(text)
    assert "position" in str(err.value)


def test_syntax_errors_carry_positions():
    for text in ("merge @@ split", "id(", "named(nosuch)", "merge ;", "(cup"):
        with pytest.raises(DiagramSyntaxError) as err:
            parse_diagram(text)
        assert "position" in str(err.value)


def test_compose_order_is_left_first():
    h = parse_diagram("merge ; split")  # merge applied first: the bridge
    assert (h.src, h.tgt) == (2, 2)
    loop = parse_diagram("split ; merge")
    assert (loop.src, loop.tgt) == (1, 1)
    closed = parse_diagram("cup ; cap")
    assert (closed.src, closed.tgt) == (0, 0)


def test_tensor_binds_tighter_than_composition():
    c = parse_diagram("cup @ id(1) ; id(1) @ cap")
    assert (c.src, c.tgt) == (1, 1)


def _coeff_map(combo):
    return dict(combo.terms)


def test_symmetrizers():
    assert _coeff_map(symmetrizer(1, anti=False)) == _coeff_map(as_combo(Id(1)))
    sym2 = _coeff_map(symmetrizer(2, anti=False))
    asym2 = _coeff_map(symmetrizer(2, anti=True))
    half = Fraction(1, 2)
    assert sym2 == {Id(2): half, CROSS: half}
    assert asym2 == {Id(2): half, CROSS: -half}
    assert len(symmetrizer(3, anti=True).terms) == 6


def test_mirror_swaps_vertex_and_pairing():
    assert mirror(as_combo(MERGE)).terms == as_combo(SPLIT).terms
    assert mirror(as_combo(CUP)).terms == as_combo(CAP).terms
    for text in ("merge ; split", "named(e1)", "(cup @ id(1)) ; (id(1) @ cap)"):
        c = parse_diagram(text)
        assert mirror(mirror(c)).terms == c.terms


def test_rot_and_switch_shapes():
    h = parse_diagram("merge ; split")
    r = rot(h)
    assert (r.src, r.tgt) == (2, 2)
    assert rot_inv(rot(h)).src == 2
    s = switch(h)
    assert (s.src, s.tgt) == (2, 2)
    with pytest.raises(DiagramArityError):
        switch(parse_diagram("split"))  # needs two input strands


def test_named_builders():
    reg = named_registry()
    for name in ("jail", "hourglass", "cross", "H", "I", "dotcross",
                 "e0", "e1", "e3", "e4", "etilde", "triangle", "square", "pentagon"):
        assert name in reg
    assert len(bigfive_list()) == 5
    assert len(brutal_list()) == 15
    assert {(f.src, f.tgt) for f in bigfive_list()} == {(2, 2)}
    assert {(f.src, f.tgt) for f in brutal_list()} == {(2, 3)}
    with pytest.raises(KeyError):
        build_named("no-such-diagram")


def test_idempotent_builder_coefficients():
    from f4diagrams.ratfield import rf_to_str

    e0 = build_named("e0")
    assert len(e0.terms) == 1
    term, coeff = e0.terms[0]
    assert rf_to_str(coeff) == "(1)/(d^1)"
    # specializing the projector sum gives rational coefficients only
    total = build_named("e0") + build_named("e1") + build_named("e3") \
        + build_named("e4") + build_named("etilde")
    spec = total.specialize(Fraction(7, 3), Fraction(26))
    assert not spec.is_symbolic()


def test_scalar_folding():
    c = parse_diagram("2 * 1/2 * merge")
    assert _coeff_map(c) == {MERGE: Fraction(1)}
