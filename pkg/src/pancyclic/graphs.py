"""Simple-graph value type and the cycle labeling that pins a Hamilton cycle.

Vertices are the integers ``0..n-1``.  Edges are unordered pairs stored in
canonical ``(min, max)`` form.  A :class:`CycleLabeling` is a bijection from
vertices to cycle positions such that consecutive positions are adjacent in
the host graph; once a graph is relabeled into position coordinates, the
Hamilton cycle is exactly the edges ``{i, i+1 mod n}`` and every downstream
algorithm works in those coordinates.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    """Return the pair in (min, max) form; reject self-loops."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph with bitset adjacency rows.

    Adjacency rows are plain Python ints used as bitmasks, which keeps
    neighborhood intersections (triangle scans, codegrees, second
    neighborhoods) fast without any dependency beyond the standard library.
    """

    __slots__ = ("n", "_adj", "_m", "_earr")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 3:
            raise ValueError(f"graph needs at least 3 vertices, got n={n}")
        self.n = n
        adj = [0] * n
        m = 0
        for u, v in edges:
            u, v = canonical_edge(u, v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if not (adj[u] >> v) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                m += 1
        self._adj = adj
        self._m = m
        self._earr: np.ndarray | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edge_array(cls, n: int, arr: np.ndarray) -> "Graph":
        """Build from an (m, 2) integer array of canonical edges."""
        g = cls.__new__(cls)
        if n < 3:
            raise ValueError(f"graph needs at least 3 vertices, got n={n}")
        g.n = n
        adj = [0] * n
        m = 0
        for u, v in arr.tolist():
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (adj[u] >> v) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                m += 1
        g._adj = adj
        g._m = m
        g._earr = None
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        g = cls.__new__(cls)
        g.n = n
        g._adj = [full ^ (1 << v) for v in range(n)]
        g._m = n * (n - 1) // 2
        g._earr = None
        return g

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, (((i, (i + 1) % n)) for i in range(n)))

    # -- queries -----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return _bits(self._adj[v])

    @property
    def edge_count(self) -> int:
        return self._m

    def edges(self) -> Iterator[Edge]:
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1)
            while rest:
                low = rest & -rest
                yield (u, u + 1 + low.bit_length() - 1)
                rest ^= low

    def edge_array(self) -> np.ndarray:
        """Edges as a sorted (m, 2) int64 array; cached."""
        if self._earr is None:
            arr = np.fromiter(
                (x for e in self.edges() for x in e), dtype=np.int64, count=2 * self._m
            ).reshape(-1, 2)
            self._earr = arr
        return self._earr

    def support(self) -> list[int]:
        """Vertices of positive degree."""
        return [v for v in range(self.n) if self._adj[v]]

    def min_degree_on_support(self) -> int:
        degs = [a.bit_count() for a in self._adj if a]
        return min(degs) if degs else 0

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency, for vectorized scans."""
        mat = np.zeros((self.n, self.n), dtype=bool)
        arr = self.edge_array()
        if len(arr):
            mat[arr[:, 0], arr[:, 1]] = True
            mat[arr[:, 1], arr[:, 0]] = True
        return mat

    # -- functional updates -------------------------------------------------

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, list(self.edges()) + [canonical_edge(*e) for e in extra])

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        gone = {canonical_edge(*e) for e in removed}
        return Graph(self.n, (e for e in self.edges() if e not in gone))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph keeping only edges with both endpoints in ``vertices``.

        The vertex set stays 0..n-1; dropped vertices become isolated.
        """
        keep = 0
        for v in vertices:
            keep |= 1 << v
        g = Graph.__new__(Graph)
        g.n = self.n
        g._adj = [
            (self._adj[v] & keep) if (keep >> v) & 1 else 0 for v in range(self.n)
        ]
        g._m = sum(a.bit_count() for a in g._adj) // 2
        g._earr = None
        return g

    def relabel(self, position: Sequence[int]) -> "Graph":
        """Map each vertex v to position[v]."""
        return Graph(self.n, ((position[u], position[v]) for u, v in self.edges()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class CycleLabeling:
    """Bijection vertex -> cycle position witnessing a Hamilton cycle.

    ``position[v]`` is the spot of vertex ``v`` on the cycle; ``order[i]``
    is the vertex sitting at spot ``i``.
    """

    __slots__ = ("position", "order")

    def __init__(self, position: Sequence[int]):
        n = len(position)
        pos = tuple(int(x) for x in position)
        if sorted(pos) != list(range(n)):
            raise ValueError("labeling is not a permutation of 0..n-1")
        order = [0] * n
        for v, i in enumerate(pos):
            order[i] = v
        self.position = pos
        self.order = tuple(order)

    @classmethod
    def identity(cls, n: int) -> "CycleLabeling":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.position)

    def validate_against(self, graph: Graph) -> bool:
        """True iff consecutive cycle positions are adjacent in ``graph``."""
        if graph.n != self.n:
            return False
        n = self.n
        return all(
            graph.has_edge(self.order[i], self.order[(i + 1) % n]) for i in range(n)
        )

    def is_cycle_edge(self, u: int, v: int) -> bool:
        d = abs(self.position[u] - self.position[v])
        return d == 1 or d == self.n - 1

    def canonical_graph(self, graph: Graph) -> Graph:
        """Relabel ``graph`` so the witnessed Hamilton cycle becomes {i, i+1}."""
        return graph.relabel(self.position)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycleLabeling):
            return NotImplemented
        return self.position == other.position

    def __repr__(self) -> str:
        return f"CycleLabeling(n={self.n})"


# -- text formats -----------------------------------------------------------
#
# Edge list: first line "n m", then m lines "u v" with 0 <= u < v < n.
# Labeling: a single line of n space-separated positions (a permutation).


def write_edge_list(graph: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"{graph.n} {graph.edge_count}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


def read_edge_list(path: str) -> Graph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: expected header 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
    if len(edges) != m:
        raise ValueError(f"{path}: header claims {m} edges, found {len(edges)}")
    return Graph(n, edges)


def write_labeling(labeling: CycleLabeling, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(" ".join(str(x) for x in labeling.position) + "\n")


def read_labeling(path: str) -> CycleLabeling:
    with open(path) as fh:
        return CycleLabeling([int(x) for x in fh.read().split()])
