"""Simple undirected graphs with role labels."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


@dataclass
class Graph:
    n: int
    edges: set[tuple[int, int]] = field(default_factory=set)
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        normal = isinstance(self.edges, set)
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u > v:
                normal = False
        if not normal:
            # large edge sets from the geometric builders are already normalised; avoid copying those
            self.edges = {(u, v) if u < v else (v, u) for u, v in self.edges}
        if not self.labels:
            self.labels = [""] * self.n

    def add_vertex(self, label: str = "") -> int:
        self.n += 1
        self.labels.append(label)
        return self.n - 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("loop")
        self.edges.add((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph and the list mapping new indices to old ones."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        es = {(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos}
        return Graph(len(vs), es, [self.labels[v] for v in vs]), vs

    def find_triangle(self) -> Optional[tuple[int, int, int]]:
        adj = self.adjacency()
        for u, v in sorted(self.edges):
            common = adj[u] & adj[v]
            if common:
                return (u, v, min(common))
        return None

    def is_triangle_free(self) -> bool:
        return self.find_triangle() is None

    def min_degree(self) -> int:
        adj = self.adjacency()
        return min((len(a) for a in adj), default=0)

    def is_induced_cycle(self, cycle: Sequence[int]) -> bool:
        """Do the listed vertices, in order, induce exactly that cycle?"""
        k = len(cycle)
        if k < 3 or len(set(cycle)) != k:
            return False
        want = {tuple(sorted((cycle[i], cycle[(i + 1) % k]))) for i in range(k)}
        got = {(u, v) for u, v in itertools.combinations(sorted(cycle), 2) if self.has_edge(u, v)}
        return got == want

    def is_path(self, path: Sequence[int]) -> bool:
        """Consecutive vertices adjacent."""
        return all(self.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, d: dict) -> "Graph":
        return cls(int(d["n"]), {(int(u), int(v)) for u, v in d["edges"]}, list(d.get("labels") or []))

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.n} {len(self.edges)}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
