"""Derivation Lie algebra of the Albert algebra, with exact certificates.

A derivation of the 27-dimensional algebra A is a linear map D satisfying
the Leibniz rule D(a o b) = D(a) o b + a o D(b).  Imposing the rule on all
378 unordered basis pairs yields a homogeneous linear system of 10,206
equations in the 729 matrix entries of D.  Its solution space is the Lie
algebra of type F4, of dimension 52.

Solving that system naively over the rationals is slow, so the nullspace is
*discovered* by Gaussian elimination modulo a word-sized prime and lifted
back to exact rationals by rational reconstruction — and then *certified*
entirely in exact arithmetic:

  * every lifted matrix is checked against all 378 pair equations (integer
    arithmetic, denominators cleared), must kill the unit, and must map
    every basis element to a traceless one;
  * the 52 lifted vectors carry a reduced-echelon sparsity pattern (each is
    1 at its own free column and 0 at the others), so their independence is
    immediate;
  * the modular echelon rank is a lower bound for the rank over the
    rationals, so reaching rank 677 modulo p proves the exact nullity is at
    most 729 - 677 = 52.

Together these facts pin the dimension to exactly 52 without trusting any
modular result.  The basis is cached as plain text (one 27x27 block of
rationals per derivation) under F4DIAGRAMS_CACHE_DIR, default
~/.cache/f4diagrams; a fingerprint of the structure constants guards the
cache against basis-convention drift.

check_equivariance() restricts each derivation to the traceless part V and
verifies, exactly, that the three generator tensors are infinitesimally
invariant: the product tensor satisfies the Leibniz rule, the pairing is
skew under (D x 1 + 1 x D), and the copairing is annihilated by it.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .albert import (
    AlbertElement,
    basis_A,
    basis_V,
    coords_A,
    coords_V,
    jordan,
)
from .exactla import RatMatrix
from .octonion import Octonion

N_A = 27
N_UNKNOWNS = N_A * N_A
DIM_DER = 52
RANK_TARGET = N_UNKNOWNS - DIM_DER

# Primes below 2**26, small enough that a 677-term dot product of residues
# fits in int64 during the numpy elimination.
_PRIMES = (67108859, 67108837, 67108819, 67108777)

CACHE_ENV = "F4DIAGRAMS_CACHE_DIR"
_CACHE_FILE = "derivation_basis.txt"

F0 = Fraction(0)


@dataclass(frozen=True)
class Derivation:
    """A derivation of A, stored as its 27x27 matrix on the fixed basis."""

    matrix: RatMatrix

    def apply_coords(self, coords: Sequence[Fraction]) -> List[Fraction]:
        return self.matrix.mul_vec(list(coords))

    def apply(self, a: AlbertElement) -> AlbertElement:
        return _element_from_coords(self.apply_coords(coords_A(a)))


def _element_from_coords(coords: Sequence[Fraction]) -> AlbertElement:
    if len(coords) != N_A:
        raise ValueError("need 27 coordinates")
    offs = [Octonion(coords[3 + 8 * s : 11 + 8 * s]) for s in range(3)]
    return AlbertElement(tuple(coords[:3]), offs)


# ---------------------------------------------------------------------------
# structure constants of the Jordan product on the fixed basis
# ---------------------------------------------------------------------------

_TABLES: Optional[Tuple[dict, dict]] = None


def _structure_tables() -> Tuple[dict, dict]:
    """Sparse product table P[(i,j)] (i <= j) and its slice index PT.

    P[(i,j)] lists (k, c) with (b_i o b_j) having coordinate c at b_k.
    PT[(j,k)] lists (r, c) with (b_r o b_j) having coordinate c at b_k,
    ranging over all r — the transpose view needed to assemble Leibniz
    rows without rescanning the table.
    """
    global _TABLES
    if _TABLES is not None:
        return _TABLES
    bas = basis_A()
    prod: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
    trans: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
    for i in range(N_A):
        for j in range(i, N_A):
            coords = coords_A(jordan(bas[i], bas[j]))
            entries = tuple((k, c) for k, c in enumerate(coords) if c)
            prod[(i, j)] = entries
            for k, c in entries:
                trans.setdefault((j, k), []).append((i, c))
                if i != j:
                    trans.setdefault((i, k), []).append((j, c))
    trans_frozen = {key: tuple(sorted(val)) for key, val in trans.items()}
    _TABLES = (prod, trans_frozen)
    return _TABLES


def _conventions_fingerprint() -> str:
    """Hash of the structure constants; changes iff basis conventions do."""
    prod, _ = _structure_tables()
    lines = []
    for (i, j) in sorted(prod):
        for k, c in prod[(i, j)]:
            lines.append(f"{i} {j} {k} {c}")
    blob = "jordan-structure-v1\n" + "\n".join(lines)
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def _equation_rows() -> Iterator[Tuple[List[int], List[int]]]:
    """Integer-cleared sparse rows of the Leibniz system, one at a time.

    Unknown (r, c) — entry D[r][c] — lives at column 27*r + c.  For each
    basis pair i <= j and each target coordinate k the row encodes
    (D(b_i o b_j))_k - (D(b_i) o b_j)_k - (b_i o D(b_j))_k = 0.
    """
    prod, trans = _structure_tables()
    for i in range(N_A):
        for j in range(i, N_A):
            pij = prod[(i, j)]
            for k in range(N_A):
                acc: Dict[int, Fraction] = {}
                for m, c in pij:
                    key = N_A * k + m
                    acc[key] = acc.get(key, F0) + c
                for r, c in trans.get((j, k), ()):
                    key = N_A * r + i
                    acc[key] = acc.get(key, F0) - c
                for r, c in trans.get((i, k), ()):
                    key = N_A * r + j
                    acc[key] = acc.get(key, F0) - c
                items = sorted((col, v) for col, v in acc.items() if v)
                if not items:
                    continue
                den = 1
                for _, v in items:
                    den = den * v.denominator // math.gcd(den, v.denominator)
                yield [col for col, _ in items], [int(v * den) for _, v in items]


# ---------------------------------------------------------------------------
# modular elimination and rational reconstruction
# ---------------------------------------------------------------------------


def _modular_nullspace(prime: int) -> Tuple[List[int], List[int], List[List[int]], int]:
    """Reduced echelon of the Leibniz system modulo `prime`.

    Rows are folded into a maintained reduced row-echelon form one at a
    time; insertion stops as soon as the rank reaches RANK_TARGET, since
    additional rows can only confirm it.  Returns (pivot columns, free
    columns, nullspace vectors as residue lists, rank).
    """
    import numpy as np

    ebuf = np.zeros((RANK_TARGET, N_UNKNOWNS), dtype=np.int64)
    pivs: List[int] = []
    rank = 0
    for cols, vals in _equation_rows():
        row = np.zeros(N_UNKNOWNS, dtype=np.int64)
        row[cols] = [v % prime for v in vals]
        if rank:
            coeffs = row[np.array(pivs, dtype=np.intp)]
            if coeffs.any():
                row = (row - coeffs @ ebuf[:rank]) % prime
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        c = int(nz[0])
        row = (row * pow(int(row[c]), prime - 2, prime)) % prime
        if rank:
            col = ebuf[:rank, c].copy()
            if col.any():
                ebuf[:rank] = (ebuf[:rank] - col[:, None] * row[None, :]) % prime
        ebuf[rank] = row
        pivs.append(c)
        rank += 1
        if rank == RANK_TARGET:
            break

    order = sorted(range(rank), key=lambda r: pivs[r])
    piv_sorted = [pivs[r] for r in order]
    piv_set = set(piv_sorted)
    free = [c for c in range(N_UNKNOWNS) if c not in piv_set]
    emat = ebuf[np.array(order, dtype=np.intp)]
    vecs: List[List[int]] = []
    for f in free:
        v = [0] * N_UNKNOWNS
        v[f] = 1
        for r, c in enumerate(piv_sorted):
            v[c] = int(-emat[r, f]) % prime
        vecs.append(v)
    return piv_sorted, free, vecs, rank


def _ratrec(t: int, m: int) -> Optional[Fraction]:
    """Balanced rational reconstruction of t modulo m (None if impossible)."""
    t %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, t
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    num, den = (r1, s1) if s1 > 0 else (-r1, -s1)
    if math.gcd(abs(num), den) != 1:
        return None
    return Fraction(num, den)


def _lift_vectors(vec_sets: List[List[List[int]]], moduli: List[int]) -> Optional[List[List[Fraction]]]:
    """Lift residue vectors (consistent across moduli) to rationals via CRT."""
    m = math.prod(moduli)
    lifted: List[List[Fraction]] = []
    for residues in zip(*vec_sets):
        vec: List[Fraction] = []
        for entries in zip(*residues):
            t = 0
            for res, p in zip(entries, moduli):
                q = m // p
                t += res * q * pow(q, -1, p)
            x = _ratrec(t % m, m)
            if x is None:
                return None
            vec.append(x)
        lifted.append(vec)
    return lifted


# ---------------------------------------------------------------------------
# exact certification
# ---------------------------------------------------------------------------


def _certify_leibniz(rows: List[List[Fraction]]) -> bool:
    """Exact check of all 378 pair equations, in cleared-integer arithmetic."""
    prod, trans = _structure_tables()
    den = 1
    for row in rows:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    di = [[int(v * den) for v in row] for row in rows]
    prod2 = {key: tuple((m, int(2 * c)) for m, c in val) for key, val in prod.items()}
    trans2 = {key: tuple((r, int(2 * c)) for r, c in val) for key, val in trans.items()}
    for i in range(N_A):
        for j in range(i, N_A):
            pij = prod2[(i, j)]
            for k in range(N_A):
                lhs = 0
                for m, c in pij:
                    lhs += di[k][m] * c
                rhs = 0
                for r, c in trans2.get((j, k), ()):
                    rhs += di[r][i] * c
                for r, c in trans2.get((i, k), ()):
                    rhs += di[r][j] * c
                if lhs != rhs:
                    return False
    return True


def _certify_unit_and_trace(rows: List[List[Fraction]]) -> bool:
    """D(1) = 0 (unit is the sum of the three diagonal idempotents) and
    tr(D(b_j)) = 0 for every j."""
    for r in range(N_A):
        if rows[r][0] + rows[r][1] + rows[r][2] != 0:
            return False
    for j in range(N_A):
        if rows[0][j] + rows[1][j] + rows[2][j] != 0:
            return False
    return True


def _free_columns(flat: List[List[Fraction]]) -> Optional[List[int]]:
    """Columns where one vector is 1 and all others are 0, one per vector.

    Present by construction for an echelon-derived basis; recomputed on
    cache load so membership tests never trust the file.
    """
    cols: List[int] = []
    n = len(flat)
    for f in range(n):
        found = -1
        for c in range(N_UNKNOWNS):
            if flat[f][c] != 1:
                continue
            if all(flat[g][c] == 0 for g in range(n) if g != f):
                found = c
                break
        if found < 0:
            return None
        cols.append(found)
    return cols


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------


def _cache_path() -> str:
    root = os.environ.get(CACHE_ENV) or os.path.join(
        os.path.expanduser("~"), ".cache", "f4diagrams"
    )
    return os.path.join(root, _CACHE_FILE)


def _write_cache(path: str, mats: List[RatMatrix]) -> None:
    os.makedirs(os.path.dirname(path), exist_ok=True)
    parts = [f"fingerprint {_conventions_fingerprint()}", f"count {len(mats)}", ""]
    for m in mats:
        parts.append(m.to_text())
        parts.append("")
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write("\n".join(parts))
    os.replace(tmp, path)


def _read_cache(path: str) -> Optional[List[RatMatrix]]:
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError:
        return None
    lines = text.splitlines()
    if len(lines) < 2:
        return None
    head, count_line = lines[0].split(), lines[1].split()
    if head[:1] != ["fingerprint"] or len(head) != 2:
        return None
    if head[1] != _conventions_fingerprint():
        return None
    if count_line[:1] != ["count"] or len(count_line) != 2:
        return None
    try:
        count = int(count_line[1])
        body = [ln for ln in lines[2:] if ln.strip()]
        if len(body) != count * N_A:
            return None
        mats = []
        for b in range(count):
            block = "\n".join(body[b * N_A : (b + 1) * N_A])
            m = RatMatrix.from_text(block)
            if m.rows != N_A or m.cols != N_A:
                return None
            mats.append(m)
        return mats
    except (ValueError, ZeroDivisionError):
        return None


# ---------------------------------------------------------------------------
# the basis
# ---------------------------------------------------------------------------

_BASIS: Optional[List[Derivation]] = None
_FREE_COLS: Optional[List[int]] = None
_RESTRICTED: Optional[List[RatMatrix]] = None


def _compute_basis_fresh() -> List[List[Fraction]]:
    """Discover the nullspace modulo a prime and lift it to rationals."""
    last: Optional[Tuple[List[int], List[List[int]]]] = None
    for take in (1, 2):
        for start in range(len(_PRIMES) - take + 1):
            moduli = list(_PRIMES[start : start + take])
            runs = [_modular_nullspace(p) for p in moduli]
            frees = [r[1] for r in runs]
            if any(len(f) != DIM_DER for f in frees):
                continue
            if any(f != frees[0] for f in frees[1:]):
                continue
            lifted = _lift_vectors([r[2] for r in runs], moduli)
            if lifted is not None:
                return lifted
            last = (frees[0], runs[0][2])
    raise RuntimeError(
        "rational reconstruction of the derivation basis failed"
        + ("" if last is None else " (modular nullspace had the right shape)")
    )


def derivation_basis() -> List[Derivation]:
    """The 52 basis derivations of A, exactly certified.

    Loads the cached basis when its fingerprint matches, otherwise solves
    the Leibniz system.  Either way every matrix is re-certified in exact
    arithmetic before being returned, so a stale or corrupt cache can only
    cause recomputation, never a wrong answer.
    """
    global _BASIS, _FREE_COLS
    if _BASIS is not None:
        return list(_BASIS)

    path = _cache_path()
    flat: Optional[List[List[Fraction]]] = None
    cached = _read_cache(path)
    if cached is not None and len(cached) == DIM_DER:
        flat = [[m.data[r][c] for r in range(N_A) for c in range(N_A)] for m in cached]
    if flat is not None and not _certified(flat):
        flat = None
    if flat is None:
        flat = _compute_basis_fresh()
        if not _certified(flat):
            raise AssertionError("lifted derivation basis failed exact certification")

    free = _free_columns(flat)
    if free is None:
        raise AssertionError("derivation basis lost its echelon marker columns")

    mats = [
        RatMatrix.from_rows([vec[N_A * r : N_A * (r + 1)] for r in range(N_A)])
        for vec in flat
    ]
    if cached is None or len(cached) != DIM_DER:
        _write_cache(path, mats)
    _FREE_COLS = free
    _BASIS = [Derivation(m) for m in mats]
    return list(_BASIS)


def _certified(flat: List[List[Fraction]]) -> bool:
    if len(flat) != DIM_DER:
        return False
    for vec in flat:
        rows = [vec[N_A * r : N_A * (r + 1)] for r in range(N_A)]
        if not _certify_unit_and_trace(rows):
            return False
        if not _certify_leibniz(rows):
            return False
    return True


def in_span(matrix: RatMatrix) -> bool:
    """Exact membership of a 27x27 matrix in the span of the basis.

    The basis is echelon-shaped, so the only possible coefficients are the
    candidate's values at the marker columns; membership holds iff that
    combination reproduces the candidate exactly.
    """
    basis = derivation_basis()
    assert _FREE_COLS is not None
    vec = [matrix.data[r][c] for r in range(N_A) for c in range(N_A)]
    coeffs = [vec[c] for c in _FREE_COLS]
    residual = list(vec)
    for coeff, d in zip(coeffs, basis):
        if not coeff:
            continue
        i = 0
        for r in range(N_A):
            row = d.matrix.data[r]
            for c in range(N_A):
                residual[i] -= coeff * row[c]
                i += 1
    return all(x == 0 for x in residual)


def bracket(d1: Derivation, d2: Derivation) -> RatMatrix:
    """The commutator [D1, D2] = D1 D2 - D2 D1 (again a derivation)."""
    a, b = d1.matrix, d2.matrix
    ab = a.matmul(b)
    ba = b.matmul(a)
    out = RatMatrix(N_A, N_A)
    for r in range(N_A):
        for c in range(N_A):
            out.data[r][c] = ab.data[r][c] - ba.data[r][c]
    return out


def check_bracket_closure(
    samples: Sequence[Tuple[int, int]] = ((0, 1), (3, 17), (10, 44), (25, 51), (2, 33)),
) -> Dict[str, object]:
    """Commutators of sampled basis pairs stay inside the span — exactly."""
    basis = derivation_basis()
    results = []
    for i, j in samples:
        ok = in_span(bracket(basis[i], basis[j]))
        results.append({"pair": (i, j), "in_span": ok})
    holds = all(r["in_span"] for r in results)
    return {"holds": holds, "samples": results}


# ---------------------------------------------------------------------------
# restriction to V and equivariance of the generator tensors
# ---------------------------------------------------------------------------


def restricted_basis() -> List[RatMatrix]:
    """The 52 derivations as 26x26 matrices on V (they preserve ker tr)."""
    global _RESTRICTED
    if _RESTRICTED is not None:
        return list(_RESTRICTED)
    basis = derivation_basis()
    bv = basis_V()
    cols_in = [coords_A(v) for v in bv]
    out: List[RatMatrix] = []
    for d in basis:
        m = RatMatrix(26, 26)
        for j, coords in enumerate(cols_in):
            w = d.matrix.mul_vec(coords)
            wcoords = coords_V(_element_from_coords(w))  # raises unless traceless
            for i, val in enumerate(wcoords):
                m.data[i][j] = val
        out.append(m)
    _RESTRICTED = out
    return list(out)


def check_equivariance() -> Dict[str, object]:
    """Exact infinitesimal invariance of the product, pairing and copairing.

    For each of the 52 restricted derivations D:
      * merge: D(v_i . v_j) = (D v_i) . v_j + v_i . (D v_j) on all 676 pairs;
      * cap:   B(D v_i, v_j) + B(v_i, D v_j) = 0, i.e. G D + (G D)^T = 0;
      * cup:   (D x 1 + 1 x D) applied to the copairing tensor vanishes.
    """
    from .functor import generator_tensors

    gens = generator_tensors()
    merge_out = gens.merge_out
    restricted = restricted_basis()

    cols: List[Dict[int, List[Tuple[int, Fraction]]]] = []
    for m in restricted:
        col: Dict[int, List[Tuple[int, Fraction]]] = {}
        for r in range(26):
            row = m.data[r]
            for c in range(26):
                if row[c]:
                    col.setdefault(c, []).append((r, row[c]))
        cols.append(col)

    merge_ok = True
    for col in cols:
        for i in range(26):
            for j in range(26):
                acc: Dict[int, Fraction] = {}
                for a, c in col.get(i, ()):
                    for k, w in merge_out.get((a, j), ()):
                        acc[k] = acc.get(k, F0) + c * w
                for b, c in col.get(j, ()):
                    for k, w in merge_out.get((i, b), ()):
                        acc[k] = acc.get(k, F0) + c * w
                for k, w in merge_out.get((i, j), ()):
                    for a, c in col.get(k, ()):
                        acc[a] = acc.get(a, F0) - w * c
                if any(acc.values()):
                    merge_ok = False
        if not merge_ok:
            break

    gram = gens.basisdata.gram
    cap_ok = True
    for m in restricted:
        gd = gram.matmul(m)
        for i in range(26):
            for j in range(26):
                if gd.data[i][j] + gd.data[j][i] != 0:
                    cap_ok = False
        if not cap_ok:
            break

    cup_ok = True
    for col in cols:
        acc = {}
        for i, j, c in gens.cup_out:
            for a, w in col.get(i, ()):
                key = (a, j)
                acc[key] = acc.get(key, F0) + w * c
            for b, w in col.get(j, ()):
                key = (i, b)
                acc[key] = acc.get(key, F0) + w * c
        if any(acc.values()):
            cup_ok = False
            break

    holds = merge_ok and cap_ok and cup_ok
    return {
        "holds": holds,
        "derivations": len(restricted),
        "merge_ok": merge_ok,
        "cap_ok": cap_ok,
        "cup_ok": cup_ok,
        "pairs_checked": 676,
    }


def derivations_report() -> Dict[str, object]:
    """Aggregate report: dimension, closure samples, equivariance."""
    basis = derivation_basis()
    closure = check_bracket_closure()
    equiv = check_equivariance()
    return {
        "dimension": len(basis),
        "bracket_closure": closure,
        "equivariance": equiv,
        "holds": len(basis) == DIM_DER and closure["holds"] and equiv["holds"],
    }
