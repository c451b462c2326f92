"""Finite simple graphs stored as symmetric digraphs with arc-reversal pairing.

An undirected graph enters as an edge list and is kept as its arc double
cover: every edge {u, v} contributes the two opposite arcs u->v and v->u,
and a fixed-point-free involution maps each arc to its reverse.  Arc order
is canonical (edges sorted after vertex compaction, forward arc immediately
followed by its reverse) so every matrix built on top of a graph is
reproducible bit for bit across runs.

File formats
------------
Edge list: one edge per line, ``u v`` with nonnegative integer ids, ``#``
starts a comment line.  Optional third and fourth columns carry complex
arc weights for u->v and v->u as ``re`` or ``re,im`` (no spaces).

JSON (``.json``): ``{"edges": [[u, v], ...], "weights": {"<arc index>":
[re, im], ...}, "vertex_count": n}`` where ``weights`` and ``vertex_count``
are optional and arc indices refer to the canonical arc order.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateEdge,
    IsolatedVertex,
    ParseError,
    SelfLoopForbidden,
)

DEFAULT_NORM_TOL = 1e-10


@dataclass(frozen=True)
class Digraph:
    """Symmetric digraph over compacted vertex ids ``0 .. vertex_count-1``.

    ``origins[e]`` and ``termini[e]`` give the endpoints of arc ``e`` and
    ``involution[e]`` is the index of the reversed arc.  ``vertex_labels``
    records the original vertex ids in compaction order.
    """

    vertex_count: int
    origins: tuple[int, ...]
    termini: tuple[int, ...]
    involution: tuple[int, ...]
    vertex_labels: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.vertex_labels:
            object.__setattr__(self, "vertex_labels", tuple(range(self.vertex_count)))
        self._validate()

    def _validate(self) -> None:
        n, arcs = self.vertex_count, len(self.origins)
        if n < 1:
            raise ParseError("graph needs at least one vertex")
        if len(self.termini) != arcs or len(self.involution) != arcs:
            raise DimensionMismatch("arc arrays have inconsistent lengths")
        if arcs % 2 != 0:
            raise ParseError("arc count must be even (two arcs per edge)")
        if len(self.vertex_labels) != n:
            raise DimensionMismatch("vertex label list does not match vertex count")
        for e in range(arcs):
            o, t, b = self.origins[e], self.termini[e], self.involution[e]
            if not (0 <= o < n and 0 <= t < n):
                raise ParseError(f"arc {e} endpoint out of range")
            if o == t:
                raise SelfLoopForbidden(f"arc {e} is a self-loop at vertex {o}")
            if not 0 <= b < arcs:
                raise ParseError(f"arc {e} pairs with out-of-range arc {b}")
            if b == e:
                raise SelfLoopForbidden(f"arc {e} is its own reverse")
            if self.involution[b] != e:
                raise ParseError(f"arc pairing is not an involution at arc {e}")
            if self.origins[b] != t or self.termini[b] != o:
                raise ParseError(f"reverse of arc {e} does not swap its endpoints")
        seen: set[frozenset[int]] = set()
        for e in range(0, arcs):
            key = frozenset((self.origins[e], self.termini[e]))
            if self.involution[e] > e:
                if key in seen:
                    u, v = sorted(key)
                    raise DuplicateEdge(f"edge {u} {v} appears more than once")
                seen.add(key)
        degree = [0] * n
        for o in self.origins:
            degree[o] += 1
        for v, d in enumerate(degree):
            if d == 0:
                raise IsolatedVertex(f"vertex {self.vertex_labels[v]} has degree 0")

    # -- basic views ----------------------------------------------------

    @property
    def arc_count(self) -> int:
        return len(self.origins)

    @property
    def edge_count(self) -> int:
        return len(self.origins) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.bincount(np.asarray(self.origins), minlength=self.vertex_count)

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as sorted (u, v) pairs with u < v."""
        return sorted(
            (self.origins[e], self.termini[e])
            for e in range(self.arc_count)
            if self.origins[e] < self.termini[e]
        )

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count))
        for u, v in self.edges():
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def _adjacency_lists(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e in range(self.arc_count):
            nbrs[self.origins[e]].append(self.termini[e])
        return nbrs

    def connected_components(self) -> list[list[int]]:
        nbrs = self._adjacency_lists()
        seen = [False] * self.vertex_count
        comps: list[list[int]] = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in nbrs[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) == 1

    def is_bipartite(self) -> bool:
        nbrs = self._adjacency_lists()
        color = [-1] * self.vertex_count
        for start in range(self.vertex_count):
            if color[start] != -1:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v in nbrs[u]:
                    if color[v] == -1:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return False
        return True

    def content_hash(self) -> str:
        text = f"v={self.vertex_count};" + ";".join(f"{u},{v}" for u, v in self.edges())
        return hashlib.sha256(text.encode()).hexdigest()

    @classmethod
    def from_edges(
        cls, edges: list[tuple[int, int]], vertex_count: int | None = None
    ) -> "Digraph":
        """Build from raw (possibly sparse-id) undirected edges.

        Vertex ids are compacted to 0..n-1 in first-appearance order and
        edges are sorted into the canonical arc layout.  ``vertex_count``
        may declare more vertices than the edges touch, which is rejected
        because every vertex must have an incident edge.
        """
        records = [(u, v, None, None, None) for u, v in edges]
        g, _ = _assemble(records, declared_count=vertex_count)
        return g


# -- construction helpers ------------------------------------------------


def _assemble(
    records: list[tuple[int, int, complex | None, complex | None, int | None]],
    declared_count: int | None = None,
) -> tuple[Digraph, np.ndarray | None]:
    """Common canonicalization path for every construction route.

    ``records`` holds (u_raw, v_raw, weight u->v, weight v->u, source line).
    """
    if not records:
        raise ParseError("no edges found")
    compact: dict[int, int] = {}
    labels: list[int] = []

    def cid(raw: int) -> int:
        if raw not in compact:
            compact[raw] = len(labels)
            labels.append(raw)
        return compact[raw]

    canon: list[tuple[int, int, complex | None, complex | None]] = []
    seen: dict[frozenset[int], int | None] = {}
    for u_raw, v_raw, w_uv, w_vu, line in records:
        if u_raw < 0 or v_raw < 0:
            raise ParseError("vertex ids must be nonnegative", line=line)
        if u_raw == v_raw:
            raise SelfLoopForbidden(f"self-loop at vertex {u_raw}", line=line)
        cu, cv = cid(u_raw), cid(v_raw)
        key = frozenset((cu, cv))
        if key in seen:
            raise DuplicateEdge(f"edge {u_raw} {v_raw} appears more than once", line=line)
        seen[key] = line
        if cu < cv:
            canon.append((cu, cv, w_uv, w_vu))
        else:
            canon.append((cv, cu, w_vu, w_uv))
    canon.sort(key=lambda r: (r[0], r[1]))

    n = len(labels)
    if declared_count is not None:
        if declared_count < n:
            raise ParseError(
                f"declared vertex_count {declared_count} below the {n} vertices used"
            )
        if declared_count > n:
            raise IsolatedVertex(
                f"declared vertex_count {declared_count} leaves "
                f"{declared_count - n} vertices with degree 0"
            )

    origins: list[int] = []
    termini: list[int] = []
    weights: list[complex | None] = []
    for a, b, w_ab, w_ba in canon:
        origins.extend((a, b))
        termini.extend((b, a))
        weights.extend((w_ab, w_ba))
    arcs = len(origins)
    involution = tuple(e + 1 if e % 2 == 0 else e - 1 for e in range(arcs))

    g = Digraph(
        vertex_count=n,
        origins=tuple(origins),
        termini=tuple(termini),
        involution=involution,
        vertex_labels=tuple(labels),
    )
    has_w = [w is not None for w in weights]
    if any(has_w) and not all(has_w):
        raise ParseError("weights must be supplied for every arc or none")
    wvec = np.array(weights, dtype=complex) if all(has_w) else None
    return g, wvec


def _parse_complex_token(token: str, line: int) -> complex:
    parts = token.split(",")
    if len(parts) > 2:
        raise ParseError(f"bad complex value {token!r}", line=line)
    try:
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise ParseError(f"bad complex value {token!r}", line=line) from None
    return complex(re, im)


def parse_edge_list(text: str) -> tuple[Digraph, "WeightFunction | None"]:
    """Parse the edge-list format, returning the graph and any file weights."""
    records: list[tuple[int, int, complex | None, complex | None, int | None]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 4):
            raise ParseError(
                f"expected 'u v' or 'u v w(u->v) w(v->u)', got {len(tokens)} fields",
                line=line_no,
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"bad vertex ids {tokens[0]!r} {tokens[1]!r}", line=line_no) from None
        if len(tokens) == 4:
            w_uv = _parse_complex_token(tokens[2], line_no)
            w_vu = _parse_complex_token(tokens[3], line_no)
        else:
            w_uv = w_vu = None
        records.append((u, v, w_uv, w_vu, line_no))
    g, wvec = _assemble(records)
    return g, (WeightFunction(wvec) if wvec is not None else None)


def parse_graph_json(text: str) -> tuple[Digraph, "WeightFunction | None"]:
    """Parse the JSON graph format, returning the graph and any file weights."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "edges" not in data:
        raise ParseError("graph JSON must be an object with an 'edges' list")
    records = []
    for i, pair in enumerate(data["edges"]):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ParseError(f"edge entry {i} is not a [u, v] pair")
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ParseError(f"edge entry {i} has non-integer endpoints")
        records.append((u, v, None, None, None))
    declared = data.get("vertex_count")
    if declared is not None and not isinstance(declared, int):
        raise ParseError("vertex_count must be an integer")
    g, _ = _assemble(records, declared_count=declared)
    raw_weights = data.get("weights")
    if raw_weights is None:
        return g, None
    if not isinstance(raw_weights, dict):
        raise ParseError("weights must map arc indices to [re, im] pairs")
    wvec = np.zeros(g.arc_count, dtype=complex)
    filled = np.zeros(g.arc_count, dtype=bool)
    for key, val in raw_weights.items():
        try:
            idx = int(key)
        except ValueError:
            raise ParseError(f"bad arc index {key!r} in weights") from None
        if not 0 <= idx < g.arc_count:
            raise ParseError(f"arc index {idx} out of range (0..{g.arc_count - 1})")
        if not (isinstance(val, (list, tuple)) and len(val) == 2):
            raise ParseError(f"weight for arc {idx} is not a [re, im] pair")
        wvec[idx] = complex(float(val[0]), float(val[1]))
        filled[idx] = True
    if not filled.all():
        missing = int(np.flatnonzero(~filled)[0])
        raise ParseError(f"weights missing for arc {missing}")
    return g, WeightFunction(wvec)


def parse_graph(text: str, fmt: str = "edges") -> Digraph:
    """Parse a graph document; ``fmt`` is ``"edges"`` or ``"json"``."""
    if fmt == "edges":
        return parse_edge_list(text)[0]
    if fmt == "json":
        return parse_graph_json(text)[0]
    raise ParseError(f"unknown graph format {fmt!r}")


def load_graph(path) -> tuple[Digraph, "WeightFunction | None"]:
    """Load a graph file, dispatching on the ``.json`` extension."""
    text = open(path, "r", encoding="utf-8").read()
    if str(path).endswith(".json"):
        return parse_graph_json(text)
    return parse_edge_list(text)


# -- weights ---------------------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """One complex weight per arc, indexed like the arcs of a Digraph."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=complex)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    def content_hash(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.weights).tobytes()).hexdigest()


@dataclass(frozen=True)
class WeightValidation:
    """Outcome of a weight check: per-vertex normalization defects."""

    passed: bool
    vertex_defects: np.ndarray
    zero_arcs: tuple[int, ...]


def grover_weights(g: Digraph) -> WeightFunction:
    """Degree-uniform weights: each arc gets 1/sqrt(deg of its origin)."""
    deg = g.degrees
    w = np.array([1.0 / math.sqrt(deg[o]) for o in g.origins], dtype=complex)
    return WeightFunction(w)


def random_weights(g: Digraph, rng: np.random.Generator) -> WeightFunction:
    """Random complex weights, normalized per out-star to unit square sum."""
    w = np.zeros(g.arc_count, dtype=complex)
    origins = np.asarray(g.origins)
    for u in range(g.vertex_count):
        idx = np.flatnonzero(origins == u)
        while True:
            z = rng.standard_normal(len(idx)) + 1j * rng.standard_normal(len(idx))
            mags = np.abs(z)
            if mags.min() > 1e-6 * mags.max():
                break
        w[idx] = z / np.linalg.norm(z)
    return WeightFunction(w)


def validate_weights(
    g: Digraph, w: WeightFunction, tol_norm: float = DEFAULT_NORM_TOL
) -> WeightValidation:
    """Check the nonzero and per-vertex normalization requirements.

    Passes iff every vertex defect ``| sum_{o(e)=u} |w(e)|^2 - 1 |`` is at
    most ``tol_norm`` and no arc weight vanishes.
    """
    if len(w) != g.arc_count:
        raise DimensionMismatch(
            f"weight vector has {len(w)} entries for {g.arc_count} arcs"
        )
    sums = np.zeros(g.vertex_count)
    for e, o in enumerate(g.origins):
        sums[o] += abs(w.weights[e]) ** 2
    defects = np.abs(sums - 1.0)
    zero_arcs = tuple(int(e) for e in np.flatnonzero(np.abs(w.weights) == 0.0))
    passed = bool(defects.max(initial=0.0) <= tol_norm) and not zero_arcs
    return WeightValidation(passed=passed, vertex_defects=defects, zero_arcs=zero_arcs)


# -- named families and random graphs ---------------------------------------


def path_graph(n: int) -> Digraph:
    if n < 2:
        raise ParseError("path graph needs at least 2 vertices")
    return Digraph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Digraph:
    if n < 3:
        raise ParseError("cycle graph needs at least 3 vertices")
    return Digraph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Digraph:
    if n < 2:
        raise ParseError("complete graph needs at least 2 vertices")
    return Digraph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Digraph:
    if leaves < 1:
        raise ParseError("star graph needs at least 1 leaf")
    return Digraph.from_edges([(0, i) for i in range(1, leaves + 1)])


def random_connected_graph(
    n: int,
    rng: np.random.Generator,
    edge_prob: float | None = None,
    max_tries: int = 5000,
) -> Digraph:
    """Rejection-sample a connected simple graph on ``n`` vertices."""
    if n < 2:
        raise ParseError("random connected graph needs at least 2 vertices")
    p = edge_prob if edge_prob is not None else min(1.0, (math.log(n) + 1.5) / n)
    for _ in range(max_tries):
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < p
        ]
        if len(edges) < n - 1:
            continue
        g = Digraph.from_edges(edges) if _touches_all(edges, n) else None
        if g is not None and g.is_connected():
            return g
    raise ParseError(f"failed to sample a connected graph on {n} vertices")


def _touches_all(edges: list[tuple[int, int]], n: int) -> bool:
    touched = set()
    for u, v in edges:
        touched.add(u)
        touched.add(v)
    return len(touched) == n


def random_tree(n: int, rng: np.random.Generator) -> Digraph:
    """Uniform random labelled tree on ``n`` vertices (Pruefer decoding)."""
    if n < 2:
        raise ParseError("tree needs at least 2 vertices")
    if n == 2:
        return Digraph.from_edges([(0, 1)])
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        for leaf in range(n):
            if degree[leaf] == 1:
                edges.append((leaf, x))
                degree[leaf] -= 1
                degree[x] -= 1
                break
    last = [v for v in range(n) if degree[v] == 1]
    edges.append((last[0], last[1]))
    return Digraph.from_edges(edges)
