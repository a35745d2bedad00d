"""Joins of graph families over a host graph, driven by vertex labels.

A join spec consists of a host graph H on k vertices, factor graphs
G_1..G_k, and per-factor indexing maps into the label set {1..m}. Two
vertices u in G_i and v in G_j (i != j) are joined exactly when ij is a
host edge and u and v carry the same label. The indexing matrix E_i is
the n_i x m 0/1 matrix with (E_i)_{st} = 1 iff vertex s has label t, and
the cross block of the join's adjacency between factors i and j is
rho_{ij} E_i E_j^T with rho the host adjacency.

Indexing maps may be partial (label None): an unlabeled vertex matches
nothing, giving an all-zero row in E_i. Partial maps arise from label
reductions; loaded spec documents use null for them.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import InvalidParametersError, SizeMismatchError
from .exactlinalg import mat_mul, mat_transpose
from .graphs import Graph, disjoint_union

IndexingMatrix = List[List[int]]

REDUCTION_MODES = ("unused", "global-exclusive", "neighbor-exclusive")


class IndexingMap:
    """Labels in 1..m for the vertices of one factor; None = unlabeled."""

    __slots__ = ("values", "m")

    def __init__(self, values: Sequence[Optional[int]], m: int):
        if not isinstance(m, int) or m < 0:
            raise InvalidParametersError(f"label count m must be a non-negative integer, got {m!r}")
        vals = tuple(values)
        for pos, v in enumerate(vals):
            if v is None:
                continue
            if not isinstance(v, int) or not (1 <= v <= m):
                raise InvalidParametersError(f"label at position {pos} must be in 1..{m} or None, got {v!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("IndexingMap is immutable")

    def __len__(self):
        return len(self.values)

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.values)

    def used_labels(self) -> Set[int]:
        return {v for v in self.values if v is not None}

    def __eq__(self, other):
        if not isinstance(other, IndexingMap):
            return NotImplemented
        return self.values == other.values and self.m == other.m

    def __hash__(self):
        return hash(("IndexingMap", self.values, self.m))

    def __repr__(self):
        return f"IndexingMap({list(self.values)!r}, m={self.m})"


def indexing_matrix(g: Graph, im: IndexingMap) -> IndexingMatrix:
    """The n x m 0/1 matrix with row v carrying a single 1 in column
    label(v) (all zeros when v is unlabeled)."""
    if len(im) != g.n:
        raise SizeMismatchError(f"indexing map covers {len(im)} vertices but the graph has {g.n}")
    rows = []
    for v in im.values:
        row = [0] * im.m
        if v is not None:
            row[v - 1] = 1
        rows.append(row)
    return rows


class JoinSpec:
    """Host graph, factor graphs, label count, and per-factor indexing maps."""

    __slots__ = ("host", "factors", "m", "indexing")

    def __init__(self, host: Graph, factors: Sequence[Graph], m: int, indexing: Sequence[IndexingMap]):
        factors = tuple(factors)
        indexing = tuple(indexing)
        if len(factors) != host.n:
            raise SizeMismatchError(f"host has {host.n} vertices but {len(factors)} factors were given")
        if len(indexing) != host.n:
            raise SizeMismatchError(f"host has {host.n} vertices but {len(indexing)} indexing maps were given")
        for i, g in enumerate(factors):
            if g.n == 0:
                raise InvalidParametersError(f"factor {i} has no vertices")
            if indexing[i].m != m:
                raise SizeMismatchError(f"indexing map {i} uses m={indexing[i].m}, spec says m={m}")
            if len(indexing[i]) != g.n:
                raise SizeMismatchError(f"indexing map {i} covers {len(indexing[i])} vertices but factor {i} has {g.n}")
        if not isinstance(m, int) or m < 0:
            raise InvalidParametersError(f"label count m must be a non-negative integer, got {m!r}")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "indexing", indexing)

    def __setattr__(self, name, value):
        raise AttributeError("JoinSpec is immutable")

    @property
    def k(self) -> int:
        return self.host.n

    @property
    def total_vertices(self) -> int:
        return sum(g.n for g in self.factors)

    def offsets(self) -> List[int]:
        out = []
        acc = 0
        for g in self.factors:
            out.append(acc)
            acc += g.n
        return out

    def indexing_matrices(self) -> List[IndexingMatrix]:
        return [indexing_matrix(g, im) for g, im in zip(self.factors, self.indexing)]

    def __eq__(self, other):
        if not isinstance(other, JoinSpec):
            return NotImplemented
        return (self.host, self.factors, self.m, self.indexing) == (other.host, other.factors, other.m, other.indexing)

    def __hash__(self):
        return hash(("JoinSpec", self.host, self.factors, self.m, self.indexing))

    def __repr__(self):
        return f"JoinSpec(host={self.host!r}, factors={list(self.factors)!r}, m={self.m}, indexing={list(self.indexing)!r})"


def hm_join(spec: JoinSpec) -> Graph:
    """Assemble the join by the edge rule: factor edges, plus cross edges
    between equally labeled vertices of host-adjacent factors."""
    offsets = spec.offsets()
    union = disjoint_union(spec.factors)
    edges = list(union.edges)
    for i, j in spec.host.edges:
        vi, vj = spec.indexing[i].values, spec.indexing[j].values
        for s, ls in enumerate(vi):
            if ls is None:
                continue
            for t, lt in enumerate(vj):
                if lt == ls:
                    edges.append((offsets[i] + s, offsets[j] + t))
    return Graph(union.n, edges)


def blockwise_adjacency(spec: JoinSpec) -> List[List[int]]:
    """Assemble the join adjacency block by block: diagonal blocks A(G_i),
    off-diagonal blocks rho_{ij} E_i E_j^T."""
    n = spec.total_vertices
    offsets = spec.offsets()
    ems = spec.indexing_matrices()
    out = [[0] * n for _ in range(n)]
    for i, g in enumerate(spec.factors):
        block = g.adjacency_matrix()
        oi = offsets[i]
        for s in range(g.n):
            out[oi + s][oi: oi + g.n] = block[s]
    if spec.m == 0:
        return out
    for i, j in spec.host.edges:
        cross = mat_mul(ems[i], mat_transpose(ems[j]))
        oi, oj = offsets[i], offsets[j]
        for s in range(spec.factors[i].n):
            for t in range(spec.factors[j].n):
                out[oi + s][oj + t] = cross[s][t]
                out[oj + t][oi + s] = cross[s][t]
    return out


def generalized_to_hm(host: Graph, factors: Sequence[Graph], subsets: Sequence[Sequence[int]]) -> JoinSpec:
    """Realize a generalized join (cross edges S_i x S_j over host edges)
    as a join spec on m = k + 1 labels: vertices of S_i get label 1,
    the rest of factor i gets the factor-specific label i + 2."""
    factors = tuple(factors)
    if len(factors) != host.n:
        raise SizeMismatchError(f"host has {host.n} vertices but {len(factors)} factors were given")
    if len(subsets) != host.n:
        raise SizeMismatchError(f"host has {host.n} vertices but {len(subsets)} subsets were given")
    k = host.n
    maps = []
    for i, (g, subset) in enumerate(zip(factors, subsets)):
        chosen = set()
        for v in subset:
            if not isinstance(v, int) or not (0 <= v < g.n):
                raise InvalidParametersError(f"subset {i}: vertex {v!r} out of range for factor with {g.n} vertices")
            chosen.add(v)
        values = [1 if v in chosen else i + 2 for v in range(g.n)]
        maps.append(IndexingMap(values, k + 1))
    return JoinSpec(host, factors, k + 1, maps)


def degree_corrections(spec: JoinSpec) -> Tuple[List[List[List[int]]], List[int]]:
    """Per-factor diagonal cross-degree matrices and the label-1 weights.

    The diagonal entry for vertex s of factor i counts the vertices of
    host-neighbor factors sharing s's label; adding it to D(G_i) gives the
    join's degree matrix restricted to factor i. The weight w_i counts the
    label-1 vertices over host neighbors; for specs produced by
    generalized_to_hm the diagonal matrix is w_i on S_i and 0 elsewhere.
    """
    counts: List[Dict[int, int]] = []
    for im in spec.indexing:
        c: Dict[int, int] = {}
        for v in im.values:
            if v is not None:
                c[v] = c.get(v, 0) + 1
        counts.append(c)
    ds = []
    ws = []
    for i, (g, im) in enumerate(zip(spec.factors, spec.indexing)):
        nbrs = spec.host.neighbors(i)
        diag = [[0] * g.n for _ in range(g.n)]
        for s, label in enumerate(im.values):
            if label is None:
                continue
            diag[s][s] = sum(counts[j].get(label, 0) for j in nbrs)
        ds.append(diag)
        ws.append(sum(counts[j].get(1, 0) for j in nbrs))
    return ds, ws


def _deletable_labels(spec: JoinSpec, mode: str) -> List[int]:
    if mode not in REDUCTION_MODES:
        raise InvalidParametersError(f"unknown reduction mode {mode!r} (expected one of {REDUCTION_MODES})")
    usage: Dict[int, Set[int]] = {c: set() for c in range(1, spec.m + 1)}
    for i, im in enumerate(spec.indexing):
        for c in im.used_labels():
            usage[c].add(i)
    deletable = []
    for c in range(1, spec.m + 1):
        users = usage[c]
        if mode == "unused":
            ok = not users
        elif mode == "global-exclusive":
            ok = len(users) == 1
        else:  # neighbor-exclusive: no host edge joins two factors using c
            ok = all(not (i in users and j in users) for i, j in spec.host.edges)
        if ok:
            deletable.append(c)
    return deletable


def reduce_labels(spec: JoinSpec, mode: str) -> JoinSpec:
    """Delete the labels the chosen mode proves irrelevant and renumber the
    rest (order preserving). Vertices that lose their label become
    unlabeled; the blockwise adjacency is unchanged.

    Modes: "unused" drops labels no factor uses; "global-exclusive" drops
    labels used by exactly one factor (their vertices can never match
    across factors); "neighbor-exclusive" drops labels never shared by two
    host-adjacent factors (vacuously including unused ones).
    """
    deletable = set(_deletable_labels(spec, mode))
    kept = [c for c in range(1, spec.m + 1) if c not in deletable]
    renumber = {c: t + 1 for t, c in enumerate(kept)}
    new_maps = []
    for im in spec.indexing:
        values = [renumber.get(v) if v is not None else None for v in im.values]
        new_maps.append(IndexingMap(values, len(kept)))
    return JoinSpec(spec.host, spec.factors, len(kept), new_maps)


def reduction_report(spec: JoinSpec, mode: str) -> dict:
    """Counts for a reduction: deleted labels, how many, and the label
    counts before and after."""
    deletable = _deletable_labels(spec, mode)
    return {
        "mode": mode,
        "m_before": spec.m,
        "deleted_labels": list(deletable),
        "deleted_count": len(deletable),
        "m_after": spec.m - len(deletable),
    }
