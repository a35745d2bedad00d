"""Finite simple graphs, named families, and universal adjacency matrices.

Vertices are 0..n-1. Graphs are immutable; equality and hashing use the
vertex count and edge set only (display labels are annotations). The
universal adjacency matrix of a graph is

    U(G) = alpha*A(G) + beta*I + gamma*J + delta*D(G),    alpha != 0,

with exact rational parameters. The edge-list text format is: first line
the vertex count, then one "u v" line per edge in lexicographic order,
so writing is a bit-exact round trip of reading.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidParametersError, SizeMismatchError

Edge = Tuple[int, int]


class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "labels")

    def __init__(self, n: int, edges: Iterable[Edge] = (), labels: Optional[Sequence[str]] = None):
        if not isinstance(n, int) or n < 0:
            raise InvalidParametersError(f"vertex count must be a non-negative integer, got {n!r}")
        normalized = set()
        for e in edges:
            u, v = e
            if not (isinstance(u, int) and isinstance(v, int)):
                raise InvalidParametersError(f"edge endpoints must be integers, got {e!r}")
            if u == v:
                raise InvalidParametersError(f"loops are not allowed: {e!r}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParametersError(f"edge {e!r} out of range for {n} vertices")
            normalized.add((u, v) if u < v else (v, u))
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise SizeMismatchError(f"expected {n} labels, got {len(labels)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], labels: Optional[Sequence[str]] = None) -> "Graph":
        return cls(n, edges, labels)

    # ------------------------------------------------------------------
    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def neighbors(self, v: int) -> Tuple[int, ...]:
        if not (0 <= v < self.n):
            raise InvalidParametersError(f"vertex {v} out of range")
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return tuple(sorted(out))

    def degrees(self) -> List[int]:
        degs = [0] * self.n
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return degs

    def adjacency_matrix(self) -> List[List[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            m[u][v] = 1
            m[v][u] = 1
        return m

    def degree_matrix(self) -> List[List[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for v, d in enumerate(self.degrees()):
            m[v][v] = d
        return m

    def is_regular(self) -> Optional[int]:
        """The common degree when the graph is regular, else None.
        The 0-vertex graph counts as 0-regular."""
        degs = self.degrees()
        if not degs:
            return 0
        return degs[0] if all(d == degs[0] for d in degs) else None

    def relabeled(self, labels: Optional[Sequence[str]]) -> "Graph":
        return Graph(self.n, self.edges, labels)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash(("Graph", self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)!r})"


# ---------------------------------------------------------------------------
# named families


def _named_complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _named_path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _named_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParametersError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _named_complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _named_wheel(n: int) -> Graph:
    """Wheel on n+1 vertices: cycle 0..n-1 plus the hub as the last vertex."""
    if n < 3:
        raise InvalidParametersError(f"a wheel needs a cycle of at least 3 vertices, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return Graph(n + 1, edges)


def make_named(kind: str, params: Sequence[int]) -> Graph:
    """Construct a named graph.

    Kinds and parameters:
      complete [n], empty [n], path [n] (n >= 1), cycle [n] (n >= 3),
      complete_bipartite [a, b] (a-side first),
      star [n] (star on n vertices, K_{1,n-1}) or star [1, b] (K_{1,b}),
      wheel [n] (n >= 3; hub is the last vertex).
    The star's center comes first.
    """
    params = list(params)
    if any(not isinstance(p, int) for p in params):
        raise InvalidParametersError(f"family parameters must be integers, got {params!r}")

    def need(count: int):
        if len(params) != count:
            raise InvalidParametersError(f"family {kind!r} expects {count} parameter(s), got {len(params)}")

    if kind == "complete":
        need(1)
        if params[0] < 0:
            raise InvalidParametersError("complete graph size must be non-negative")
        return _named_complete(params[0])
    if kind == "empty":
        need(1)
        if params[0] < 0:
            raise InvalidParametersError("empty graph size must be non-negative")
        return Graph(params[0])
    if kind == "path":
        need(1)
        if params[0] < 1:
            raise InvalidParametersError("a path needs at least 1 vertex")
        return _named_path(params[0])
    if kind == "cycle":
        need(1)
        return _named_cycle(params[0])
    if kind == "complete_bipartite":
        need(2)
        if params[0] < 1 or params[1] < 1:
            raise InvalidParametersError("complete bipartite sides must be positive")
        return _named_complete_bipartite(params[0], params[1])
    if kind == "star":
        if len(params) == 1:
            if params[0] < 1:
                raise InvalidParametersError("a star needs at least 1 vertex")
            return _named_complete_bipartite(1, params[0] - 1) if params[0] > 1 else Graph(1)
        if len(params) == 2:
            if params[0] != 1:
                raise InvalidParametersError("two-parameter star must be [1, b]")
            if params[1] < 1:
                raise InvalidParametersError("star leaf count must be positive")
            return _named_complete_bipartite(1, params[1])
        raise InvalidParametersError(f"family 'star' expects 1 or 2 parameters, got {len(params)}")
    if kind == "wheel":
        need(1)
        return _named_wheel(params[0])
    raise InvalidParametersError(f"unknown named family {kind!r}")


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union, blocks in list order."""
    n = 0
    edges = []
    labels = []
    have_labels = all(g.labels is not None for g in graphs) and len(graphs) > 0
    for g in graphs:
        for u, v in sorted(g.edges):
            edges.append((u + n, v + n))
        if have_labels:
            labels.extend(g.labels)
        n += g.n
    return Graph(n, edges, labels if have_labels else None)


# ---------------------------------------------------------------------------
# universal adjacency


class UniversalParams:
    """Exact parameters (alpha, beta, gamma, delta) of the universal
    adjacency matrix alpha*A + beta*I + gamma*J + delta*D, alpha != 0."""

    __slots__ = ("alpha", "beta", "gamma", "delta")

    def __init__(self, alpha, beta, gamma, delta):
        values = []
        for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)):
            if isinstance(v, int):
                v = Fraction(v)
            if not isinstance(v, Fraction):
                raise InvalidParametersError(f"{name} must be rational, got {type(v).__name__}")
            values.append(v)
        if values[0] == 0:
            raise InvalidParametersError("alpha must be nonzero")
        object.__setattr__(self, "alpha", values[0])
        object.__setattr__(self, "beta", values[1])
        object.__setattr__(self, "gamma", values[2])
        object.__setattr__(self, "delta", values[3])

    def __setattr__(self, name, value):
        raise AttributeError("UniversalParams is immutable")

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __eq__(self, other):
        if not isinstance(other, UniversalParams):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(("UniversalParams", self.as_tuple()))

    def __repr__(self):
        return f"UniversalParams{self.as_tuple()!r}"

    @classmethod
    def preset(cls, name: str) -> "UniversalParams":
        """Presets: A (adjacency), L (Laplacian D - A), Q (signless Laplacian
        D + A), seidel (J - I - 2A), and Aalpha:<r> ((1-r)A + rD)."""
        if name == "A":
            return cls(1, 0, 0, 0)
        if name == "L":
            return cls(-1, 0, 0, 1)
        if name == "Q":
            return cls(1, 0, 0, 1)
        if name == "seidel":
            return cls(-2, -1, 1, 0)
        if name.startswith("Aalpha:"):
            try:
                r = Fraction(name.split(":", 1)[1])
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidParametersError(f"bad Aalpha parameter in {name!r}: {exc}")
            return cls(1 - r, 0, 0, r)
        raise InvalidParametersError(f"unknown universal preset {name!r} (expected A, L, Q, seidel, or Aalpha:<r>)")


ADJACENCY = "A"
LAPLACIAN = "L"
SIGNLESS_LAPLACIAN = "Q"
SEIDEL = "seidel"


def universal_matrix(g: Graph, params: UniversalParams) -> List[List[Fraction]]:
    """alpha*A(G) + beta*I + gamma*J + delta*D(G) as an exact matrix."""
    a, b, c, d = params.as_tuple()
    degs = g.degrees()
    adj = g.adjacency_matrix()
    out = []
    for i in range(g.n):
        row = []
        for j in range(g.n):
            val = c + a * adj[i][j]
            if i == j:
                val += b + d * degs[i]
            row.append(val)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# edge-list text format


def graph_to_edgelist(g: Graph) -> str:
    """First line the vertex count, then 'u v' per edge, lexicographic."""
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise InvalidParametersError("edge list is empty; expected a vertex count on line 1")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise InvalidParametersError(f"edge list line 1: expected a vertex count, got {lines[0]!r}")
    edges = []
    for idx, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise InvalidParametersError(f"edge list line {idx}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidParametersError(f"edge list line {idx}: endpoints must be integers, got {line!r}")
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except InvalidParametersError as exc:
        raise InvalidParametersError(f"edge list: {exc}")
