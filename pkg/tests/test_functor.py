"""Evaluation of diagrams as exact multilinear maps on the 26-dim module."""

import random
from fractions import Fraction

import pytest

from f4diagrams.albert import alb_trace, bform, build_basis, jordan
from f4diagrams.diagram import (
    CUP,
    MERGE,
    DiagramArityError,
    Id,
    as_combo,
    build_named,
    parse_diagram,
)
from f4diagrams.functor import (
    ExactTensor,
    apply_combo_to_basis,
    basis_indices,
    closure,
    combo_is_zero_streamed,
    combos_equal_streamed,
    generator_tensors,
    phi_apply,
    phi_closed,
    set_cache_enabled,
    trace_pairing,
)

pytestmark = pytest.mark.usefixtures("warm_tensors")


def test_cap_is_the_trace_form():
    gens = generator_tensors()
    bas = build_basis().basis
    rng = random.Random(11)
    for _ in range(40):
        i, j = rng.randrange(26), rng.randrange(26)
        assert gens.cap_val.get((i, j), Fraction(0)) == bform(bas[i], bas[j])


def test_cup_inverts_cap():
    gens = generator_tensors()
    cap = gens.cap_tensor()
    cup = gens.cup_tensor()
    for i in range(26):
        for k in range(26):
            s = sum(cap[i, j] * cup[j, k] for j in range(26))
            assert s == (1 if i == k else 0)


def test_merge_is_symmetric():
    t = generator_tensors().merge_tensor()
    rng = random.Random(12)
    for _ in range(60):
        i, j, k = rng.randrange(26), rng.randrange(26), rng.randrange(26)
        assert t[k, i, j] == t[k, j, i]


def test_merge_against_raw_product_traces():
    # Pair the merge output against every basis vector using the trace
    # form directly on 27-dim elements: tr((b_i o b_j) o b_k) must match,
    # because the trace-part correction is orthogonal to traceless b_k.
    gens = generator_tensors()
    bas = build_basis().basis
    rng = random.Random(13)
    for _ in range(12):
        i, j = rng.randrange(26), rng.randrange(26)
        out = dict(gens.merge_out.get((i, j), ()))
        for k in range(26):
            lhs = sum(c * gens.cap_val.get((m, k), Fraction(0)) for m, c in out.items())
            assert lhs == alb_trace(jordan(jordan(bas[i], bas[j]), bas[k]))


def test_split_is_adjoint_to_merge():
    gens = generator_tensors()
    m, s = gens.merge_tensor(), gens.split_tensor()
    cap, cup = gens.cap_tensor(), gens.cup_tensor()
    rng = random.Random(14)
    for _ in range(20):
        i, j, k = rng.randrange(26), rng.randrange(26), rng.randrange(26)
        # split = (cup (x) cup) against merge through the pairing
        rhs = sum(
            cup[i, a] * cup[j, b] * m[c, a, b] * cap[c, k]
            for a in range(26)
            for b in range(26)
            for c in range(26)
            if cup[i, a] and cup[j, b] and m[c, a, b]
        )
        assert s[i, j, k] == rhs


def test_closed_bubble_is_the_dimension():
    assert phi_closed(parse_diagram("cup ; cap")) == 26


def test_closed_traces():
    jail = build_named("jail")
    assert trace_pairing(jail, jail) == 676
    loop = parse_diagram("split ; merge")
    assert phi_closed(closure(loop)) == Fraction(182, 3)  # 26 * 7/3
    tadpole = parse_diagram("cup ; merge")
    assert apply_combo_to_basis(tadpole, ()) == {}


def test_contraction_strategy_is_irrelevant():
    diagrams = [
        closure(build_named("square")),
        closure(parse_diagram("merge ; split")),
        closure(parse_diagram("(split @ id(1)) ; (id(1) @ merge)")),
    ]
    for d in diagrams:
        assert phi_closed(d, strategy="greedy") == phi_closed(d, strategy="serial")


def test_phi_apply_inputs():
    merge = as_combo(MERGE)
    e = ExactTensor.from_sparse((26, 26), {(0, 1): Fraction(1)})
    out_t = phi_apply(merge, e)
    out_d = phi_apply(merge, {(0, 1): Fraction(1)})
    assert out_t == out_d
    assert out_t.shape == (26,)
    with pytest.raises(DiagramArityError):
        phi_apply(merge, {(0, 1, 2): Fraction(1)})
    with pytest.raises(TypeError):
        phi_apply(merge, [1, 2, 3])


def test_phi_apply_matches_basis_table():
    gens = generator_tensors()
    key = min(gens.merge_out)
    out = phi_apply(as_combo(MERGE), {key: Fraction(1)})
    assert out.to_sparse() == {(k,): c for k, c in gens.merge_out[key]}
    dead = next(p for p in basis_indices(2) if p not in gens.merge_out)
    assert phi_apply(as_combo(MERGE), {dead: Fraction(1)}).is_zero()


def test_exact_tensor_views():
    t = ExactTensor.from_sparse((2, 3), {(0, 1): Fraction(5, 2), (1, 2): Fraction(-1)})
    assert t[0, 1] == Fraction(5, 2)
    assert t[1, 0] == 0
    assert t.to_lines() == "(0,1) -> 5/2\n(1,2) -> -1"
    assert not t.is_zero()
    scalar = ExactTensor((), [Fraction(7)])
    assert scalar.to_lines() == "7"
    assert t == ExactTensor.from_sparse((2, 3), t.to_sparse())


def test_basis_indices_shapes():
    assert list(basis_indices(0)) == [()]
    assert sum(1 for _ in basis_indices(2)) == 676


def test_streamed_equality():
    sym = parse_diagram("sym(2)")
    asym = parse_diagram("asym(2)")
    eq, n = combos_equal_streamed(sym + asym, as_combo(Id(2)))
    assert eq and n == 676
    zero, n = combo_is_zero_streamed(sym.then(asym))
    assert zero and n == 676
    ne, _ = combos_equal_streamed(as_combo(MERGE), 2 * as_combo(MERGE))
    assert not ne
    with pytest.raises(DiagramArityError):
        combos_equal_streamed(as_combo(MERGE), as_combo(CUP))


def test_cache_toggle_is_invisible():
    probe = parse_diagram("(split @ id(1)) ; (id(1) @ merge)")
    try:
        set_cache_enabled(False)
        cold = apply_combo_to_basis(probe, (2, 7))
    finally:
        set_cache_enabled(True)
    assert cold == apply_combo_to_basis(probe, (2, 7))


def test_closure_rejects_rectangular():
    with pytest.raises(DiagramArityError):
        closure(as_combo(MERGE))
