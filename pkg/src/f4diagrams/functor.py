"""Evaluation of diagram terms as exact multilinear maps on powers of V.

The assignment (V = traceless part of the 27-dimensional Jordan algebra,
dim 26):

    merge -> (a, b) |-> projection of a o b onto V
    cross -> swap of tensor factors
    cup   -> sum_b b (x) b-dual  (inverse Gram coordinates)
    cap   -> (a, b) |-> tr(a o b)
    split -> a |-> sum_b b (x) projection of (b-dual o a)

is monoidal, so a term evaluates layer by layer: each stage applies one
generator at a strand offset.  States are sparse dictionaries
{index-tuple: Fraction}; dense tensors exist only as a public output
format.  Everything is exact — the whole module contains no floats.

Closed (0 -> 0) terms evaluate by tensor-network contraction with a
greedy smallest-intermediate pairing order; an alternative
creation-order strategy exists solely so tests can confirm the result is
order-independent.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .albert import ModuleVector, build_basis, coords_V, jordan, project_v
from .diagram import (
    CAP,
    CROSS,
    CUP,
    MERGE,
    SPLIT,
    DiagramArityError,
    DiagramCombo,
    DiagramTerm,
    Gen,
    Id,
    Compose,
    as_combo,
    mirror,
    tensor_all,
    to_layers,
)

ZERO = Fraction(0)
ONE = Fraction(1)
DIM = 26

Sparse = Dict[Tuple[int, ...], Fraction]


# ---------------------------------------------------------------------------
# dense output format
# ---------------------------------------------------------------------------


class ExactTensor:
    """Dense rational tensor; all index ranges are DIM = 26."""

    __slots__ = ("shape", "entries")

    def __init__(self, shape: Sequence[int], entries: Optional[List[Fraction]] = None):
        shape = tuple(int(s) for s in shape)
        size = 1
        for s in shape:
            size *= s
        if entries is None:
            entries = [ZERO] * size
        elif len(entries) != size:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("ExactTensor is immutable (build a new one)")

    @classmethod
    def from_sparse(cls, shape: Sequence[int], sparse: Sparse) -> "ExactTensor":
        t = cls(shape)
        for idx, c in sparse.items():
            t.entries[t._flat(idx)] = c
        return t

    def _flat(self, idx: Tuple[int, ...]) -> int:
        if len(idx) != len(self.shape):
            raise IndexError(f"rank-{len(self.shape)} tensor indexed with {len(idx)} indices")
        f = 0
        for i, s in zip(idx, self.shape):
            if not 0 <= i < s:
                raise IndexError(f"index {idx} out of range for shape {self.shape}")
            f = f * s + i
        return f

    def __getitem__(self, idx):
        if isinstance(idx, int):
            idx = (idx,)
        return self.entries[self._flat(tuple(idx))]

    def to_sparse(self) -> Sparse:
        out: Sparse = {}
        for idx in product(*(range(s) for s in self.shape)):
            c = self.entries[self._flat(idx)]
            if c:
                out[idx] = c
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, ExactTensor)
            and other.shape == self.shape
            and other.entries == self.entries
        )

    def __repr__(self):
        nnz = sum(1 for c in self.entries if c)
        return f"ExactTensor(shape={self.shape}, nonzeros={nnz})"

    def to_lines(self) -> str:
        """Nonzero entries, one per line: "(i1,...,ik) -> p/q", indices
        0-based, lexicographic; a rank-0 tensor prints as a bare "p/q"."""
        if not self.shape:
            return str(self.entries[0])
        lines = []
        for idx in product(*(range(s) for s in self.shape)):
            c = self.entries[self._flat(idx)]
            if c:
                lines.append(f"({','.join(map(str, idx))}) -> {c}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# generator tensors
# ---------------------------------------------------------------------------


class GeneratorTensors:
    """Sparse action tables for the five generators, plus dense views.

    merge_out[(i,j)]  -> ((k, c), ...):            pi(b_i o b_j) = sum c b_k
    split_out[k]      -> ((i, j, c), ...):         split(b_k) = sum c b_i (x) b_j
    cup_out           -> ((i, j, c), ...):         inverse Gram entries
    cap_val[(i,j)]    -> tr(b_i o b_j):            Gram entries
    """

    __slots__ = ("merge_out", "split_out", "cup_out", "cap_val", "basisdata")

    def __init__(self):
        bd = build_basis()
        bas, dual, gram, ginv = bd.basis, bd.dual, bd.gram, bd.gram_inv

        merge_out: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
        for i in range(DIM):
            for j in range(i, DIM):
                w = coords_V(project_v(jordan(bas[i], bas[j])))
                nz = tuple((k, c) for k, c in enumerate(w) if c)
                if nz:
                    merge_out[(i, j)] = nz
                    if i != j:
                        merge_out[(j, i)] = nz

        split_out: Dict[int, Tuple[Tuple[int, int, Fraction], ...]] = {}
        for k in range(DIM):
            acc: List[Tuple[int, int, Fraction]] = []
            for i in range(DIM):
                w = coords_V(project_v(jordan(dual[i], bas[k])))
                acc.extend((i, j, c) for j, c in enumerate(w) if c)
            if acc:
                split_out[k] = tuple(acc)

        cup_out = tuple(
            (i, j, ginv.data[i][j])
            for i in range(DIM)
            for j in range(DIM)
            if ginv.data[i][j]
        )
        cap_val = {
            (i, j): gram.data[i][j]
            for i in range(DIM)
            for j in range(DIM)
            if gram.data[i][j]
        }

        object.__setattr__(self, "merge_out", merge_out)
        object.__setattr__(self, "split_out", split_out)
        object.__setattr__(self, "cup_out", cup_out)
        object.__setattr__(self, "cap_val", cap_val)
        object.__setattr__(self, "basisdata", bd)

    def __setattr__(self, *a):
        raise AttributeError("GeneratorTensors is immutable")

    # -- dense views ---------------------------------------------------------

    def merge_tensor(self) -> ExactTensor:
        """Shape (26,26,26): [k][i][j] = coefficient of b_k in pi(b_i o b_j)."""
        sp: Sparse = {}
        for (i, j), hits in self.merge_out.items():
            for k, c in hits:
                sp[(k, i, j)] = c
        return ExactTensor.from_sparse((DIM, DIM, DIM), sp)

    def split_tensor(self) -> ExactTensor:
        """Shape (26,26,26): [i][j][k] = coefficient of b_i (x) b_j in split(b_k)."""
        sp: Sparse = {}
        for k, hits in self.split_out.items():
            for i, j, c in hits:
                sp[(i, j, k)] = c
        return ExactTensor.from_sparse((DIM, DIM, DIM), sp)

    def cup_tensor(self) -> ExactTensor:
        return ExactTensor.from_sparse((DIM, DIM), {(i, j): c for i, j, c in self.cup_out})

    def cap_tensor(self) -> ExactTensor:
        return ExactTensor.from_sparse((DIM, DIM), dict(self.cap_val))


_GENS: Optional[GeneratorTensors] = None


def generator_tensors() -> GeneratorTensors:
    global _GENS
    if _GENS is None:
        _GENS = GeneratorTensors()
    return _GENS


# ---------------------------------------------------------------------------
# sparse streaming evaluator
# ---------------------------------------------------------------------------

_CACHE_ENABLED = True
_TERM_BASIS_CACHE: Dict[Tuple[DiagramTerm, Tuple[int, ...]], Sparse] = {}


def set_cache_enabled(flag: bool) -> None:
    """Turn the per-(term, basis-input) memo on or off (results must be
    identical either way; the switch exists so tests can prove that)."""
    global _CACHE_ENABLED
    _CACHE_ENABLED = bool(flag)
    if not flag:
        _TERM_BASIS_CACHE.clear()


def _prune(d: Sparse) -> Sparse:
    return {k: v for k, v in d.items() if v}


def _apply_gen(state: Sparse, off: int, g: Gen, gens: GeneratorTensors) -> Sparse:
    out: Sparse = {}
    if g is CROSS:
        for idx, c in state.items():
            out[idx[:off] + (idx[off + 1], idx[off]) + idx[off + 2 :]] = c
        return out
    if g is MERGE:
        table = gens.merge_out
        for idx, c in state.items():
            hits = table.get((idx[off], idx[off + 1]))
            if not hits:
                continue
            head, tail = idx[:off], idx[off + 2 :]
            for k, mc in hits:
                key = head + (k,) + tail
                out[key] = out.get(key, ZERO) + c * mc
        return _prune(out)
    if g is SPLIT:
        table = gens.split_out
        for idx, c in state.items():
            hits = table.get(idx[off])
            if not hits:
                continue
            head, tail = idx[:off], idx[off + 1 :]
            for i, j, sc in hits:
                key = head + (i, j) + tail
                out[key] = out.get(key, ZERO) + c * sc
        return _prune(out)
    if g is CUP:
        pairs = gens.cup_out
        for idx, c in state.items():
            head, tail = idx[:off], idx[off:]
            for i, j, cc in pairs:
                key = head + (i, j) + tail
                out[key] = out.get(key, ZERO) + c * cc
        return _prune(out)
    if g is CAP:
        table = gens.cap_val
        for idx, c in state.items():
            v = table.get((idx[off], idx[off + 1]))
            if not v:
                continue
            key = idx[:off] + idx[off + 2 :]
            out[key] = out.get(key, ZERO) + c * v
        return _prune(out)
    raise TypeError(f"unknown generator {g!r}")


def apply_term_sparse(term: DiagramTerm, state: Sparse) -> Sparse:
    """Push a sparse state (over term.src strands) through every layer."""
    gens = generator_tensors()
    for off, g in to_layers(term):
        state = _apply_gen(state, off, g, gens)
        if not state:
            break
    return state


def apply_term_to_basis(term: DiagramTerm, idx: Tuple[int, ...]) -> Sparse:
    """Evaluate one term on one standard basis tensor; memoized."""
    if _CACHE_ENABLED:
        key = (term, idx)
        hit = _TERM_BASIS_CACHE.get(key)
        if hit is None:
            hit = apply_term_sparse(term, {idx: ONE})
            _TERM_BASIS_CACHE[key] = hit
        return hit
    return apply_term_sparse(term, {idx: ONE})


def _check_concrete(f: DiagramCombo) -> DiagramCombo:
    if f.is_symbolic():
        raise TypeError(
            "combo has symbolic coefficients; specialize(alpha, delta) first"
        )
    return f


def apply_combo_to_basis(f, idx: Tuple[int, ...]) -> Sparse:
    """Sparse output of a (non-symbolic) combo on one basis input."""
    f = _check_concrete(as_combo(f))
    if len(idx) != f.src:
        raise DiagramArityError(f"combo consumes {f.src} strands, input has {len(idx)}")
    out: Sparse = {}
    for term, coeff in f.terms:
        for k, v in apply_term_to_basis(term, idx).items():
            out[k] = out.get(k, ZERO) + coeff * v
    return _prune(out)


def basis_indices(m: int) -> Iterable[Tuple[int, ...]]:
    return product(range(DIM), repeat=m)


def _as_sparse_input(x, arity: int) -> Sparse:
    if isinstance(x, ExactTensor):
        if len(x.shape) != arity:
            raise DiagramArityError(
                f"combo consumes {arity} strands, tensor has rank {len(x.shape)}"
            )
        return x.to_sparse()
    if isinstance(x, ModuleVector):
        if arity != 1:
            raise DiagramArityError(f"combo consumes {arity} strands, got a single vector")
        return {(i,): c for i, c in enumerate(x.coords) if c}
    if isinstance(x, dict):
        for k in x:
            if len(k) != arity:
                raise DiagramArityError(
                    f"combo consumes {arity} strands, sparse key has {len(k)}"
                )
        return dict(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a tensor input")


def phi_apply(f, x) -> ExactTensor:
    """Evaluate a combo on an input tensor; returns a dense rank-target
    tensor.  Inputs may be ExactTensor, ModuleVector, or sparse dict."""
    f = _check_concrete(as_combo(f))
    state = _as_sparse_input(x, f.src)
    out: Sparse = {}
    for term, coeff in f.terms:
        for k, v in apply_term_sparse(term, dict(state)).items():
            out[k] = out.get(k, ZERO) + coeff * v
    return ExactTensor.from_sparse((DIM,) * f.tgt, _prune(out))


# ---------------------------------------------------------------------------
# closed diagrams: tensor-network contraction
# ---------------------------------------------------------------------------


class _Node:
    __slots__ = ("ports", "tensor")

    def __init__(self, ports: List[int], tensor: Dict[Tuple[int, ...], Fraction]):
        self.ports = ports  # wire ids, one per tensor index position
        self.tensor = tensor


_NODE_TENSORS: Optional[Tuple[dict, dict, dict, dict]] = None


def _node_tensors() -> Tuple[dict, dict, dict, dict]:
    global _NODE_TENSORS
    if _NODE_TENSORS is None:
        gens = generator_tensors()
        merge_nd = {}
        for (i, j), hits in gens.merge_out.items():
            for k, c in hits:
                merge_nd[(i, j, k)] = c
        split_nd = {}
        for k, hits in gens.split_out.items():
            for i, j, c in hits:
                split_nd[(k, i, j)] = c
        cup_nd = {(i, j): c for i, j, c in gens.cup_out}
        cap_nd = dict(gens.cap_val)
        _NODE_TENSORS = (merge_nd, split_nd, cup_nd, cap_nd)
    return _NODE_TENSORS


def _network_of(term: DiagramTerm) -> List[_Node]:
    """Turn a closed term into generator nodes joined by wires; crossings
    become wire permutations, identities disappear."""
    merge_nd, split_nd, cup_nd, cap_nd = _node_tensors()

    nodes: List[_Node] = []
    wires: List[int] = []
    fresh = iter(range(10**9)).__next__
    for off, g in to_layers(term):
        if g is CROSS:
            wires[off], wires[off + 1] = wires[off + 1], wires[off]
        elif g is CUP:
            w1, w2 = fresh(), fresh()
            nodes.append(_Node([w1, w2], cup_nd))
            wires[off:off] = [w1, w2]
        elif g is CAP:
            nodes.append(_Node([wires[off], wires[off + 1]], cap_nd))
            del wires[off : off + 2]
        elif g is MERGE:
            w = fresh()
            nodes.append(_Node([wires[off], wires[off + 1], w], merge_nd))
            wires[off : off + 2] = [w]
        elif g is SPLIT:
            w1, w2 = fresh(), fresh()
            nodes.append(_Node([wires[off], w1, w2], split_nd))
            wires[off : off + 1] = [w1, w2]
        else:
            raise TypeError(f"unknown generator {g!r}")
    if wires:
        raise DiagramArityError("term is not closed")
    return nodes


def _contract_pair(a: _Node, b: _Node) -> _Node:
    shared = [w for w in a.ports if w in b.ports]
    a_pos = [a.ports.index(w) for w in shared]
    b_pos = [b.ports.index(w) for w in shared]
    a_keep = [p for p in range(len(a.ports)) if p not in a_pos]
    b_keep = [p for p in range(len(b.ports)) if p not in b_pos]

    buckets: Dict[Tuple[int, ...], List[Tuple[Tuple[int, ...], Fraction]]] = {}
    for key, c in b.tensor.items():
        bk = tuple(key[p] for p in b_pos)
        buckets.setdefault(bk, []).append((tuple(key[p] for p in b_keep), c))

    out: Dict[Tuple[int, ...], Fraction] = {}
    for key, c in a.tensor.items():
        hit = buckets.get(tuple(key[p] for p in a_pos))
        if not hit:
            continue
        head = tuple(key[p] for p in a_keep)
        for tail, bc in hit:
            k = head + tail
            out[k] = out.get(k, ZERO) + c * bc
    ports = [a.ports[p] for p in a_keep] + [b.ports[p] for p in b_keep]
    return _Node(ports, _prune(out))


def _contract_network(nodes: List[_Node], strategy: str) -> Fraction:
    nodes = list(nodes)
    while len(nodes) > 1:
        best = None
        for x in range(len(nodes)):
            px = set(nodes[x].ports)
            for y in range(x + 1, len(nodes)):
                shared = px.intersection(nodes[y].ports)
                if not shared:
                    continue
                open_ports = len(nodes[x].ports) + len(nodes[y].ports) - 2 * len(shared)
                if strategy == "greedy":
                    cost = (open_ports, len(nodes[x].tensor) * len(nodes[y].tensor), x, y)
                else:  # first-created pair; exists for order-independence tests
                    cost = (x, y)
                if best is None or cost < best[0]:
                    best = (cost, x, y)
        if best is None:
            # all remaining nodes are disconnected scalars
            total = ONE
            for nd in nodes:
                total *= nd.tensor.get((), ZERO)
            return total
        _, x, y = best
        merged = _contract_pair(nodes[x], nodes[y])
        nodes = [nd for i, nd in enumerate(nodes) if i not in (x, y)]
        nodes.append(merged)
    return nodes[0].tensor.get((), ZERO) if nodes else ONE


def phi_closed(f, strategy: str = "greedy") -> Fraction:
    """Exact scalar value of a closed (0 -> 0) combo."""
    f = _check_concrete(as_combo(f))
    if f.src != 0 or f.tgt != 0:
        raise DiagramArityError(f"phi_closed needs a closed diagram, got {f.src}->{f.tgt}")
    total = ZERO
    for term, coeff in f.terms:
        total += coeff * _contract_network(_network_of(term), strategy)
    return total


# ---------------------------------------------------------------------------
# trace pairing and Gram ranks
# ---------------------------------------------------------------------------


def _cup_nest(m: int) -> DiagramTerm:
    t: DiagramTerm = CUP
    for _ in range(m - 1):
        t = Compose(tensor_all(Id(1), t, Id(1)), CUP)
    return t


def _cap_nest(m: int) -> DiagramTerm:
    t: DiagramTerm = CAP
    for _ in range(m - 1):
        t = Compose(CAP, tensor_all(Id(1), t, Id(1)))
    return t


def closure(f) -> DiagramCombo:
    """Close an m->m combo into a 0->0 combo by bending all strands around
    the right with nested cups and caps (the categorical trace)."""
    f = as_combo(f)
    if f.src != f.tgt:
        raise DiagramArityError(f"can only close an m->m combo, got {f.src}->{f.tgt}")
    m = f.src
    if m == 0:
        return f
    cup = as_combo(_cup_nest(m))
    cap = as_combo(_cap_nest(m))
    return cap.compose((f @ as_combo(Id(m)))).compose(cup)


def trace_pairing(f, g) -> Fraction:
    """<f, g> = closed evaluation of (mirror of f) after g: an exact,
    symmetric, positive-definite pairing on evaluated diagrams."""
    f, g = as_combo(f), as_combo(g)
    if (f.src, f.tgt) != (g.src, g.tgt):
        raise DiagramArityError(
            f"pairing needs equal arities, got {f.src}->{f.tgt} vs {g.src}->{g.tgt}"
        )
    return phi_closed(closure(mirror(f).compose(g)))


def gram_rank(fs: Sequence) -> int:
    """Rank of the pairwise trace-pairing matrix = dimension of the span
    of the evaluated diagrams."""
    from .exactla import RatMatrix

    fs = [as_combo(f) for f in fs]
    if not fs:
        return 0
    arity = (fs[0].src, fs[0].tgt)
    for f in fs[1:]:
        if (f.src, f.tgt) != arity:
            raise DiagramArityError("gram_rank needs combos of one common arity")
    n = len(fs)
    m = RatMatrix(n, n)
    for i in range(n):
        for j in range(i, n):
            v = trace_pairing(fs[i], fs[j])
            m.data[i][j] = v
            m.data[j][i] = v
    return m.rank()


# ---------------------------------------------------------------------------
# streaming equality of combos
# ---------------------------------------------------------------------------


def combos_equal_streamed(f, g) -> Tuple[bool, int]:
    """Compare two combos pointwise on every standard basis input.

    Returns (equal, number of basis inputs checked).  Never materializes a
    dense 26^(m+n) tensor; each basis input's outputs stay sparse.
    """
    f, g = _check_concrete(as_combo(f)), _check_concrete(as_combo(g))
    if (f.src, f.tgt) != (g.src, g.tgt):
        raise DiagramArityError(
            f"cannot compare {f.src}->{f.tgt} with {g.src}->{g.tgt}"
        )
    n = 0
    for idx in basis_indices(f.src):
        n += 1
        if apply_combo_to_basis(f, idx) != apply_combo_to_basis(g, idx):
            return False, n
    return True, n


def combo_is_zero_streamed(f) -> Tuple[bool, int]:
    f = _check_concrete(as_combo(f))
    n = 0
    for idx in basis_indices(f.src):
        n += 1
        if apply_combo_to_basis(f, idx):
            return False, n
    return True, n
