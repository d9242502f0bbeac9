"""Derivation Lie algebra: certified basis, span membership, cache behavior."""

import os
import random
from fractions import Fraction

import pytest

import f4diagrams.derivations as dv
from f4diagrams.albert import AlbertElement, alb_trace, coords_A, jordan
from f4diagrams.exactla import RatMatrix
from f4diagrams.octonion import Octonion

PRIME = 67108859


def _random_albert(rng):
    diag = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
    off = [
        Octonion([Fraction(rng.randint(-3, 3)) for _ in range(8)])
        for _ in range(3)
    ]
    return AlbertElement(diag, off)


def _reset_memo():
    dv._BASIS = None
    dv._FREE_COLS = None
    dv._RESTRICTED = None


def test_basis_size_and_shape():
    basis = dv.derivation_basis()
    assert len(basis) == dv.DIM_DER == 52
    for d in basis:
        assert (d.matrix.rows, d.matrix.cols) == (27, 27)


def test_derivations_kill_unit_and_trace():
    rng = random.Random(41)
    unit = AlbertElement.unit()
    for d in dv.derivation_basis()[::7]:
        assert d.apply(unit).is_zero()
        for _ in range(3):
            assert alb_trace(d.apply(_random_albert(rng))) == 0


def test_leibniz_on_random_elements():
    rng = random.Random(42)
    for d in (dv.derivation_basis()[i] for i in (0, 19, 51)):
        for _ in range(4):
            a, b = _random_albert(rng), _random_albert(rng)
            lhs = d.apply(jordan(a, b))
            rhs = jordan(d.apply(a), b) + jordan(a, d.apply(b))
            assert coords_A(lhs) == coords_A(rhs)


def test_bracket_stays_in_span():
    basis = dv.derivation_basis()
    assert dv.in_span(dv.bracket(basis[4], basis[31]))
    report = dv.check_bracket_closure(samples=((0, 1), (10, 44)))
    assert report["holds"]


def test_identity_is_not_a_derivation():
    assert not dv.in_span(RatMatrix.identity(27))


def test_restricted_basis_shape():
    restricted = dv.restricted_basis()
    assert len(restricted) == 52
    assert all((m.rows, m.cols) == (26, 26) for m in restricted)


def test_rational_reconstruction():
    assert dv._ratrec(5, PRIME) == Fraction(5)
    assert dv._ratrec(PRIME - 3, PRIME) == Fraction(-3)
    assert dv._ratrec(pow(2, PRIME - 2, PRIME), PRIME) == Fraction(1, 2)
    assert dv._ratrec(123456789 % PRIME, PRIME) is None


def test_cache_round_trip():
    first = dv.derivation_basis()
    path = dv._cache_path()
    assert os.path.exists(path)
    assert path.startswith(os.environ["F4DIAGRAMS_CACHE_DIR"])
    cached = dv._read_cache(path)
    assert cached is not None and len(cached) == 52
    assert all(m.data == d.matrix.data for m, d in zip(cached, first))
    _reset_memo()
    again = dv.derivation_basis()
    assert all(x.matrix.data == y.matrix.data for x, y in zip(first, again))


def test_corrupt_cache_triggers_recompute():
    basis = dv.derivation_basis()
    path = dv._cache_path()
    with open(path, "w") as fh:
        fh.write("not a derivation basis\n")
    assert dv._read_cache(path) is None
    _reset_memo()
    recomputed = dv.derivation_basis()
    assert len(recomputed) == 52
    assert all(
        x.matrix.data == y.matrix.data for x, y in zip(basis, recomputed)
    )
    # fresh solve rewrote the cache
    assert dv._read_cache(path) is not None
