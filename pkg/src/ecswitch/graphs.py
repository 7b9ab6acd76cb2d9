"""m-edge-coloured graphs: data model, structural utilities, text format.

A graph has vertices 0..n-1 and a set of coloured edges (u, v, c) with
u < v and 1 <= c <= m.  The underlying graph is simple and loopless.
Values are immutable after construction.

The ``.ecg`` text format is line oriented::

    m 3
    vertices 2
    edge 0 1 2

``#`` begins a comment and blank lines are ignored.  Serialisation is
canonical (edges sorted), so equal graphs serialise byte-identically.
"""

from __future__ import annotations

from .errors import CapExceededError, ParseError

DEFAULT_ISO_VERTEX_CAP = 32


class EdgeColouredGraph:
    """A simple loopless graph with each edge coloured from {1..m}."""

    __slots__ = ("m", "n", "edges", "_colour", "_adj")

    def __init__(self, m, n, edges=()):
        m = int(m)
        n = int(n)
        if m < 1:
            raise ValueError(f"need at least one colour, got m={m}")
        if n < 0:
            raise ValueError(f"negative vertex count {n}")
        colour = {}
        for u, v, c in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in colour:
                raise ValueError(f"duplicate edge ({u},{v})")
            if not 1 <= c <= m:
                raise ValueError(f"colour {c} out of range 1..{m}")
            colour[(u, v)] = c
        self.m = m
        self.n = n
        self.edges = tuple(sorted((u, v, c) for (u, v), c in colour.items()))
        self._colour = colour
        adj = [[] for _ in range(n)]
        for u, v, c in self.edges:
            adj[u].append((v, c))
            adj[v].append((u, c))
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @classmethod
    def monochromatic(cls, m, n, pairs, colour):
        return cls(m, n, [(u, v, colour) for u, v in pairs])

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self):
        return range(self.n)

    def edge_pairs(self):
        return tuple((u, v) for u, v, _ in self.edges)

    def has_edge(self, u, v) -> bool:
        return (min(u, v), max(u, v)) in self._colour

    def colour_of(self, u, v) -> int:
        return self._colour[(min(u, v), max(u, v))]

    def neighbours(self, v):
        """Sorted (neighbour, colour) pairs at v."""
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def degree_sequence(self):
        return tuple(sorted(len(a) for a in self._adj))

    def signature(self):
        """Edge colours in canonical (sorted pair) order."""
        return tuple(c for _, _, c in self.edges)

    def colour_counts(self):
        counts = [0] * (self.m + 1)
        for _, _, c in self.edges:
            counts[c] += 1
        return tuple(counts[1:])

    # -- spec'd per-graph operations ---------------------------------------

    def edges_of_colour(self, i: int):
        if not 1 <= i <= self.m:
            raise ValueError(f"colour {i} out of range 1..{self.m}")
        return tuple(e for e in self.edges if e[2] == i)

    def is_monochromatic(self, j: int) -> bool:
        """All edges have colour j; edgeless graphs qualify for every j."""
        if not 1 <= j <= self.m:
            raise ValueError(f"colour {j} out of range 1..{self.m}")
        return all(c == j for _, _, c in self.edges)

    def collapse_blocks(self) -> "EdgeColouredGraph":
        """The 2-coloured graph with odd colours sent to 1 and even to 2."""
        if self.m % 2 != 0:
            raise ValueError(f"block collapse needs even m, got {self.m}")
        return EdgeColouredGraph(
            2, self.n,
            [(u, v, 1 if c % 2 else 2) for u, v, c in self.edges])

    def is_bipartite(self):
        """(True, side-per-vertex tuple) or (False, None), by BFS 2-colouring."""
        side = [-1] * self.n
        for start in range(self.n):
            if side[start] != -1:
                continue
            side[start] = 0
            queue = [start]
            while queue:
                u = queue.pop()
                for w, _ in self._adj[u]:
                    if side[w] == -1:
                        side[w] = side[u] ^ 1
                        queue.append(w)
                    elif side[w] == side[u]:
                        return False, None
        return True, tuple(side)

    def components(self):
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            queue = [start]
            while queue:
                u = queue.pop()
                for w, _ in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    # -- derived graphs ------------------------------------------------------

    def with_signature(self, colours) -> "EdgeColouredGraph":
        """Same underlying graph, new colours in canonical edge order."""
        colours = tuple(colours)
        if len(colours) != len(self.edges):
            raise ValueError("signature length mismatch")
        return EdgeColouredGraph(
            self.m, self.n,
            [(u, v, c) for (u, v, _), c in zip(self.edges, colours)])

    def relabel(self, mapping) -> "EdgeColouredGraph":
        """Apply a vertex bijection: vertex v becomes mapping[v]."""
        mapping = tuple(mapping)
        if sorted(mapping) != list(range(self.n)):
            raise ValueError("mapping is not a vertex bijection")
        return EdgeColouredGraph(
            self.m, self.n,
            [(mapping[u], mapping[v], c) for u, v, c in self.edges])

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgeColouredGraph)
                and self.m == other.m and self.n == other.n
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.edges))

    def __repr__(self) -> str:
        return f"EdgeColouredGraph(m={self.m}, n={self.n}, edges={len(self.edges)})"


def is_homomorphism(G: EdgeColouredGraph, H: EdgeColouredGraph, mapping) -> bool:
    """Whether the vertex map sends every colour-i edge onto a colour-i edge."""
    mapping = tuple(mapping)
    if len(mapping) != G.n or any(not 0 <= w < H.n for w in mapping):
        return False
    for u, v, c in G.edges:
        fu, fv = mapping[u], mapping[v]
        if fu == fv or not H.has_edge(fu, fv) or H.colour_of(fu, fv) != c:
            return False
    return True


# -- isomorphism ------------------------------------------------------------

def iter_underlying_isomorphisms(G, H, cap=DEFAULT_ISO_VERTEX_CAP):
    """All adjacency-preserving vertex bijections (colours ignored), by
    backtracking with degree pruning; deterministic smallest-index branching."""
    if max(G.n, H.n) > cap:
        raise CapExceededError(f"{max(G.n, H.n)} vertices exceeds cap {cap}")
    if G.n != H.n or len(G.edges) != len(H.edges):
        return
    if G.degree_sequence() != H.degree_sequence():
        return
    n = G.n
    gadj = [set(w for w, _ in G.neighbours(v)) for v in range(n)]
    hadj = [set(w for w, _ in H.neighbours(v)) for v in range(n)]
    gdeg = [G.degree(v) for v in range(n)]
    hdeg = [H.degree(v) for v in range(n)]
    mapping = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            yield tuple(mapping)
            return
        for w in range(n):
            if used[w] or gdeg[v] != hdeg[w]:
                continue
            if any((u in gadj[v]) != (mapping[u] in hadj[w]) for u in range(v)):
                continue
            mapping[v] = w
            used[w] = True
            yield from extend(v + 1)
            mapping[v] = -1
            used[w] = False

    yield from extend(0)


def underlying_isomorphism(G, H, cap=DEFAULT_ISO_VERTEX_CAP):
    """First underlying-graph isomorphism in deterministic order, or None."""
    return next(iter_underlying_isomorphisms(G, H, cap), None)


def coloured_isomorphism(G, H, cap=DEFAULT_ISO_VERTEX_CAP):
    """First colour-preserving isomorphism, or None."""
    if max(G.n, H.n) > cap:
        raise CapExceededError(f"{max(G.n, H.n)} vertices exceeds cap {cap}")
    if G.n != H.n or len(G.edges) != len(H.edges) or G.m != H.m:
        return None
    if G.colour_counts() != H.colour_counts():
        return None
    # per-vertex multiset of incident colours must match under the bijection
    gprof = [tuple(sorted(c for _, c in G.neighbours(v))) for v in range(G.n)]
    hprof = [tuple(sorted(c for _, c in H.neighbours(v))) for v in range(H.n)]
    if sorted(gprof) != sorted(hprof):
        return None
    n = G.n
    mapping = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return tuple(mapping)
        for w in range(n):
            if used[w] or gprof[v] != hprof[w]:
                continue
            ok = True
            for u in range(v):
                gc = G.colour_of(u, v) if G.has_edge(u, v) else None
                hc = H.colour_of(mapping[u], w) if H.has_edge(mapping[u], w) else None
                if gc != hc:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            found = extend(v + 1)
            if found is not None:
                return found
            mapping[v] = -1
            used[w] = False
        return None

    return extend(0)


# -- cycle space --------------------------------------------------------------

def cycle_basis(G: EdgeColouredGraph):
    """Fundamental cycles of a BFS spanning forest, one frozenset of vertex
    pairs per non-tree edge, in sorted non-tree-edge order."""
    parent = [-1] * G.n
    depth = [-1] * G.n
    order = []
    for start in range(G.n):
        if depth[start] != -1:
            continue
        depth[start] = 0
        queue = [start]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for w, _ in G.neighbours(u):
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
        order.extend(queue)
    tree = set()
    for v in range(G.n):
        if parent[v] != -1:
            tree.add((min(v, parent[v]), max(v, parent[v])))
    basis = []
    for u, v in G.edge_pairs():
        if (u, v) in tree:
            continue
        cycle = {(u, v)}
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            pa = parent[a]
            cycle.add((min(a, pa), max(a, pa)))
            a = pa
        basis.append(frozenset(cycle))
    return basis


# -- text format ---------------------------------------------------------------

def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _expect_int(token, what, lineno):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {token!r}", lineno) from None


def parse(text: str) -> EdgeColouredGraph:
    """Parse the ``.ecg`` format; every error names the offending line."""
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "m" or len(lines[0][1]) != 2:
        raise ParseError("expected 'm <int>' header",
                         lines[0][0] if lines else 1)
    lineno, toks = lines[0]
    m = _expect_int(toks[1], "colour count", lineno)
    if m < 1:
        raise ParseError(f"need at least one colour, got m={m}", lineno)
    if len(lines) < 2 or lines[1][1][0] != "vertices" or len(lines[1][1]) != 2:
        raise ParseError("expected 'vertices <int>' header",
                         lines[1][0] if len(lines) > 1 else lineno)
    lineno, toks = lines[1]
    n = _expect_int(toks[1], "vertex count", lineno)
    if n < 0:
        raise ParseError(f"negative vertex count {n}", lineno)
    edges = []
    seen = set()
    for lineno, toks in lines[2:]:
        if toks[0] != "edge":
            raise ParseError(f"unknown directive {toks[0]!r}", lineno)
        if len(toks) != 4:
            raise ParseError("expected 'edge <u> <v> <c>'", lineno)
        u = _expect_int(toks[1], "vertex", lineno)
        v = _expect_int(toks[2], "vertex", lineno)
        c = _expect_int(toks[3], "colour", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u},{v}) has a vertex outside 0..{n - 1}",
                             lineno)
        if u > v:
            raise ParseError(f"edge ({u},{v}) not in u < v order", lineno)
        if not 1 <= c <= m:
            raise ParseError(f"colour {c} out of range 1..{m}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u},{v})", lineno)
        seen.add((u, v))
        edges.append((u, v, c))
    return EdgeColouredGraph(m, n, edges)


def serialize(G: EdgeColouredGraph) -> str:
    out = [f"m {G.m}", f"vertices {G.n}"]
    out.extend(f"edge {u} {v} {c}" for u, v, c in G.edges)
    return "\n".join(out) + "\n"
