"""Problem instances: immutable simple graphs, random generators, edge-list I/O.

Vertex indexing is 0-based everywhere (file format, API, internal arrays).
Graphs may be disconnected; nothing here assumes connectivity.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence

import numpy as np

from .rng import RngStream

RR_ATTEMPT_BUDGET = 100


class GraphError(ValueError):
    """Invalid graph construction or generation parameters."""


class EdgeListError(GraphError):
    """Malformed edge-list input; `line` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GenerationError(GraphError):
    """A random generator could not produce a valid graph within its budget."""


class Graph:
    """Immutable undirected simple graph.

    Edges are unordered pairs of distinct vertices, stored min-index-first.
    `adjacency[v]` is the sorted tuple of v's neighbors, `degree[v]` its length.
    Instances are safe to share across concurrent solver runs.
    """

    __slots__ = ("n", "edges", "adjacency", "degree", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in normalized:
                raise GraphError(f"duplicate edge ({e[0]},{e[1]})")
            normalized.add(e)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "degree", tuple(len(a) for a in adj))
        object.__setattr__(self, "_csr", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges min-index-first in lexicographic order (the canonical order)."""
        return sorted(self.edges)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices), cached; int64 arrays."""
        cached = self._csr
        if cached is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + self.degree[v]
            indices = np.empty(indptr[-1], dtype=np.int64)
            for v in range(self.n):
                indices[indptr[v]:indptr[v + 1]] = self.adjacency[v]
            cached = (indptr, indices)
            object.__setattr__(self, "_csr", cached)
        return cached

    def max_degree(self) -> int:
        return max(self.degree) if self.n else 0

    def validate(self) -> None:
        """Audit pass over the structural invariants; raises on any breach."""
        seen = set()
        for u, v in self.edges:
            assert 0 <= u < v < self.n, f"edge ({u},{v}) malformed"
            assert (u, v) not in seen
            seen.add((u, v))
        for v in range(self.n):
            assert list(self.adjacency[v]) == sorted(set(self.adjacency[v])), \
                f"adjacency[{v}] not sorted/unique"
            assert self.degree[v] == len(self.adjacency[v])
            for u in self.adjacency[v]:
                assert self.has_edge(u, v), f"adjacency lists ({u},{v}) but edge missing"
        total = sum(self.degree)
        assert total == 2 * self.m, "degree sum != 2m"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def generate_er(n: int, c: float, rng: RngStream) -> Graph:
    """Erdos-Renyi ensemble with a fixed edge count M = floor(c*n/2).

    Samples M distinct vertex pairs uniformly without replacement (rejection
    against the set of already-chosen pairs), so the mean degree is ~c.
    """
    if n < 2:
        raise GraphError(f"ER generation needs n >= 2, got {n}")
    if not (0 <= c <= n - 1):
        raise GraphError(f"mean degree must satisfy 0 <= c <= n-1, got c={c}")
    m = int(c * n / 2)
    candidates = n * (n - 1) // 2
    if m > candidates:
        raise GraphError(f"M={m} exceeds the {candidates} candidate pairs")
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        e = (u, v) if u < v else (v, u)
        if e not in chosen:
            chosen.add(e)
    return Graph(n, chosen)


def generate_rr(n: int, c: int, rng: RngStream) -> Graph:
    """Random regular graph: every vertex gets exactly c neighbors.

    Configuration-model pairing: each vertex contributes c half-edges, the
    pool is paired after a shuffle, and pairs that would create a self-loop
    or multi-edge go back into the pool for a re-shuffle. A round that makes
    no progress abandons the whole attempt; after RR_ATTEMPT_BUDGET failed
    attempts the generator gives up.
    """
    if c != int(c):
        raise GraphError(f"regular degree must be an integer, got {c}")
    c = int(c)
    if not (0 <= c < n):
        raise GraphError(f"regular degree must satisfy 0 <= c < n, got c={c}, n={n}")
    if (c * n) % 2 != 0:
        raise GraphError(f"c*n must be even, got c={c}, n={n}")
    for _ in range(RR_ATTEMPT_BUDGET):
        edges = _try_pairing(n, c, rng)
        if edges is not None:
            return Graph(n, edges)
    raise GenerationError(
        f"no valid {c}-regular pairing on {n} vertices in {RR_ATTEMPT_BUDGET} attempts")


def _try_pairing(n: int, c: int, rng: RngStream) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(c)]
    while stubs:
        rng.shuffle(stubs)
        leftover = []
        progress = False
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (a, b) if a < b else (b, a)
            if a != b and e not in edges:
                edges.add(e)
                progress = True
            else:
                leftover.append(a)
                leftover.append(b)
        if not progress:
            return None
        stubs = leftover
    return edges


def read_edge_list(source) -> Graph:
    """Parse the edge-list text format.

    Optional `c `-prefixed comment lines, then a header `p <n> <m>`, then m
    lines `<u> <v>` of 0-based endpoints. `source` may be a path or a text
    stream. Self-loops, duplicate edges, out-of-range indices, and malformed
    lines are rejected with their line number.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="ascii") as f:
            return _parse_edge_list(f)
    return _parse_edge_list(source)


def _parse_edge_list(f) -> Graph:
    n = m = None
    lineno = 0
    for raw in f:
        lineno += 1
        if raw.startswith("c ") or raw.strip() == "c":
            if n is not None:
                raise EdgeListError("comment after header", lineno)
            continue
        parts = raw.split()
        if not parts:
            raise EdgeListError("blank line", lineno)
        if parts[0] != "p" or len(parts) != 3:
            raise EdgeListError(f"expected header 'p <n> <m>', got {raw.strip()!r}", lineno)
        try:
            n, m = int(parts[1]), int(parts[2])
        except ValueError:
            raise EdgeListError("non-integer header fields", lineno) from None
        if n < 0 or m < 0:
            raise EdgeListError("negative header fields", lineno)
        break
    if n is None:
        raise EdgeListError("missing header", lineno + 1)

    edges = []
    seen = set()
    for _ in range(m):
        raw = f.readline()
        lineno += 1
        if not raw:
            raise EdgeListError(f"expected {m} edges, file ended after {len(edges)}", lineno)
        parts = raw.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected '<u> <v>', got {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError("non-integer vertex index", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"vertex index out of range [0,{n})", lineno)
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", lineno)
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise EdgeListError(f"duplicate edge ({e[0]},{e[1]})", lineno)
        seen.add(e)
        edges.append(e)
    trailing = f.readline()
    if trailing.strip():
        raise EdgeListError("trailing content after last edge", lineno + 1)
    return Graph(n, edges)


def write_edge_list(g: Graph, dest) -> None:
    """Write the canonical form: header, then edges min-index-first in
    lexicographic order. read(write(g)) is the identity, byte for byte."""
    if isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__"):
        with open(dest, "w", encoding="ascii", newline="") as f:
            _emit_edge_list(g, f)
    else:
        _emit_edge_list(g, dest)


def _emit_edge_list(g: Graph, f) -> None:
    f.write(f"p {g.n} {g.m}\n")
    for u, v in g.sorted_edges():
        f.write(f"{u} {v}\n")


def edge_list_str(g: Graph) -> str:
    buf = io.StringIO()
    _emit_edge_list(g, buf)
    return buf.getvalue()


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by `vertices`, reindexed densely.

    Returns (subgraph, ids) where ids[k] is the original index of the
    subgraph's vertex k. ids are sorted ascending, so the mapping is
    deterministic.
    """
    ids = sorted(set(vertices))
    if ids and not (0 <= ids[0] and ids[-1] < g.n):
        raise GraphError("induced vertex set out of range")
    pos = {v: k for k, v in enumerate(ids)}
    edges = []
    for v in ids:
        for u in g.adjacency[v]:
            if v < u and u in pos:
                edges.append((pos[v], pos[u]))
    return Graph(len(ids), edges), ids
