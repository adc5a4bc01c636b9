"""Clutching trees, dual graphs, p-rank labelings and boundary-stratum
dimension bookkeeping.

A clutching tree is a finite tree with a genus label g_v >= 1 at each vertex
and deg(v) <= 2 g_v + 2.  Gluing two adjacent components merges their genus
labels (coalesce); a labeling assigns each component its p-rank.  Everything
here is exact combinatorics on tiny structures.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .curves import HyperellipticCurve, curve_new
from .ffield import FieldDescriptor, FqPoly, enumerate_monic
from .prank import p_rank


@dataclass(frozen=True)
class ClutchingTree:
    """Vertex genus labels plus tree edges (vertex ids are list positions)."""

    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.genera)
        if n == 0:
            raise ValueError("a clutching tree needs at least one vertex")
        if any(g < 1 for g in self.genera):
            raise ValueError("vertex genera must be >= 1")
        if len(self.edges) != n - 1:
            raise ValueError("a tree on n vertices has exactly n-1 edges")
        seen = set()
        adj = self.adjacency()
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad edge ({a}, {b})")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError("duplicate edge")
            seen.add(key)
        if n > 1:
            stack, reach = [0], {0}
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in reach:
                        reach.add(w)
                        stack.append(w)
            if len(reach) != n:
                raise ValueError("tree must be connected")
        for v in range(n):
            if len(adj[v]) > 2 * self.genera[v] + 2:
                raise ValueError(f"degree of vertex {v} exceeds 2*g_v + 2")

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.genera]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def as_dict(self, labeling: Sequence[int] | None = None) -> dict:
        verts = []
        for i, g in enumerate(self.genera):
            v = {"id": i, "g": g}
            if labeling is not None:
                v["f"] = labeling[i]
            verts.append(v)
        return {"vertices": verts, "edges": [[a, b] for a, b in self.edges]}


def path_tree(genera: Sequence[int]) -> ClutchingTree:
    return ClutchingTree(tuple(genera), tuple((i, i + 1) for i in range(len(genera) - 1)))


def tree_genus(tree: ClutchingTree) -> int:
    return sum(tree.genera)


def tree_size(tree: ClutchingTree) -> int:
    return len(tree.genera)


def labelings(tree: ClutchingTree, f: int) -> list[tuple[int, ...]]:
    """All p-rank labelings: 0 <= f_v <= g_v with sum f_v = f, vertex order."""
    g = tree_genus(tree)
    if not 0 <= f <= g:
        raise ValueError(f"f = {f} outside [0, {g}]")
    out: list[tuple[int, ...]] = []
    genera = tree.genera

    def rec(i: int, remaining: int, acc: list[int]):
        if i == len(genera):
            if remaining == 0:
                out.append(tuple(acc))
            return
        tail = sum(genera[i:])
        if remaining > tail:
            return
        for fv in range(min(genera[i], remaining) + 1):
            rec(i + 1, remaining - fv, acc + [fv])

    rec(0, f, [])
    return out


def stratum_dim(tree: ClutchingTree, f: int) -> int:
    """Dimension of the p-rank-f stratum glued along the tree: g + f - |tree|."""
    g = tree_genus(tree)
    if not 0 <= f <= g:
        raise ValueError(f"f = {f} outside [0, {g}]")
    return g + f - tree_size(tree)


def coalesce(tree: ClutchingTree, edge: tuple[int, int]) -> ClutchingTree:
    """Merge the endpoints of an edge; the new vertex carries the genus sum."""
    a, b = edge
    if (a, b) not in tree.edges and (b, a) not in tree.edges:
        raise ValueError(f"({a}, {b}) is not an edge of the tree")
    keep, drop = min(a, b), max(a, b)

    def remap(v: int) -> int:
        if v == drop:
            return keep
        return v - 1 if v > drop else v

    genera = list(tree.genera)
    genera[keep] += genera[drop]
    del genera[drop]
    edges = []
    for u, v in tree.edges:
        if {u, v} == {a, b}:
            continue
        edges.append((remap(u), remap(v)))
    merged = ClutchingTree(tuple(genera), tuple(edges))
    # cannot fail when the input is valid: deg drops by 2 while 2g+2 grows
    assert len(merged.adjacency()[keep]) <= 2 * merged.genera[keep] + 2
    return merged


def canonical_form(tree: ClutchingTree):
    """Label-aware canonical form (rooted encodings at the centroid)."""
    n = tree_size(tree)
    adj = tree.adjacency()

    def centroids() -> list[int]:
        if n == 1:
            return [0]
        deg = [len(a) for a in adj]
        size = [1] * n
        order, parent = [], [-1] * n
        stack = [(0, -1)]
        while stack:
            v, par = stack.pop()
            order.append(v)
            parent[v] = par
            for w in adj[v]:
                if w != par:
                    stack.append((w, v))
        for v in reversed(order):
            if parent[v] >= 0:
                size[parent[v]] += size[v]
        best, cands = n + 1, []
        for v in range(n):
            heaviest = max([size[w] for w in adj[v] if parent[w] == v]
                           + ([n - size[v]] if parent[v] >= 0 else [0]))
            if heaviest < best:
                best, cands = heaviest, [v]
            elif heaviest == best:
                cands.append(v)
        return cands

    def encode(v: int, par: int):
        return (tree.genera[v], tuple(sorted(encode(w, v) for w in adj[v] if w != par)))

    return min(encode(c, -1) for c in centroids())


def refines(tree: ClutchingTree, target: ClutchingTree) -> bool:
    """True iff some sequence of coalesce steps turns ``tree`` into a tree
    isomorphic (with labels) to ``target``; reflexive."""
    goal = canonical_form(target)
    goal_size = tree_size(target)
    seen: set = set()

    def walk(t: ClutchingTree) -> bool:
        c = canonical_form(t)
        if tree_size(t) == goal_size:
            return c == goal
        if tree_size(t) < goal_size or c in seen:
            return False
        seen.add(c)
        return any(walk(coalesce(t, e)) for e in t.edges)

    return walk(tree)


def prank_compact(tree: ClutchingTree, labeling: Sequence[int]) -> int:
    """p-rank of a compact-type configuration: the label sum."""
    if len(labeling) != tree_size(tree):
        raise ValueError("labeling length mismatch")
    for fv, gv in zip(labeling, tree.genera):
        if not 0 <= fv <= gv:
            raise ValueError("labeling violates 0 <= f_v <= g_v")
    return sum(labeling)


# ---------------------------------------------------------------------------
# dual graphs (multi-edges and self-loops allowed)


@dataclass(frozen=True)
class DualGraph:
    """Vertices carry (genus, component p-rank); edges are nodes of the curve."""

    vertices: tuple[tuple[int, int], ...]  # (g_v, f_v)
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n == 0:
            raise ValueError("dual graph needs at least one vertex")
        for g, f in self.vertices:
            if not 0 <= f <= g:
                raise ValueError("component p-rank must satisfy 0 <= f_v <= g_v")
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("edge endpoint out of range")
        adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        stack, reach = [0], {0}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        if len(reach) != n:
            raise ValueError("dual graph must be connected")

    @property
    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


def prank_stable(graph: DualGraph) -> int:
    """p-rank of a stable configuration: sum of component p-ranks plus b_1.

    Each independent cycle contributes a one-dimensional torus, hence one
    unit of p-rank.
    """
    return sum(f for _, f in graph.vertices) + graph.betti


# ---------------------------------------------------------------------------
# boundary divisor catalog


@dataclass(frozen=True)
class BoundaryDivisor:
    """One irreducible boundary divisor, in canonical indexing.

    kind "delta": a chain of two components of genus i and g-i meeting at one
    point; component p-ranks sum to f.  kind "xi": one node gets smoothed to
    a torus factor; component p-ranks sum to f - 1 (xi_0 has a single
    component of genus g-1, xi_i a pair of genus i and g-1-i).
    """

    kind: str
    index: int
    genus: int
    component_genera: tuple[int, ...]
    prank_offset: int  # f_1 + ... = f - prank_offset

    @property
    def name(self) -> str:
        return f"{self.kind}_{self.index}"

    def stratum_dim(self, f: int) -> int:
        return self.genus - 2 + f

    def admissible_labelings(self, f: int) -> list[tuple[int, ...]]:
        target = f - self.prank_offset
        out = []
        for combo in itertools.product(*(range(g + 1) for g in self.component_genera)):
            if sum(combo) == target:
                out.append(combo)
        return out


def boundary_catalog(g: int) -> list[BoundaryDivisor]:
    """Canonical representatives of the boundary divisors for genus g."""
    if g < 2:
        raise ValueError("the boundary catalog needs genus >= 2")
    out = [BoundaryDivisor("delta", i, g, (i, g - i), 0) for i in range(1, g // 2 + 1)]
    out.append(BoundaryDivisor("xi", 0, g, (g - 1,), 1))
    out.extend(BoundaryDivisor("xi", i, g, (i, g - 1 - i), 1)
               for i in range(1, (g - 1) // 2 + 1))
    return out


# ---------------------------------------------------------------------------
# degeneration witnesses


@dataclass(frozen=True)
class DegenerationWitness:
    tree: ClutchingTree
    labeling: tuple[int, ...]
    curves: tuple[HyperellipticCurve, ...]

    def as_dict(self) -> dict:
        d = self.tree.as_dict(self.labeling)
        for v, c in zip(d["vertices"], self.curves):
            v["f_coeffs"] = list(c.f.coeffs)
        return d


def _elliptic_with_prank(field: FieldDescriptor, target: int) -> HyperellipticCurve:
    for f in enumerate_monic(field, 3, squarefree_only=True):
        c = curve_new(field, f)
        if p_rank(c) == target:
            return c
    kind = "ordinary" if target else "supersingular"
    raise ValueError(f"no {kind} elliptic curve over {field!r}; field too small")


def degeneration_witness(g: int, f: int, field: FieldDescriptor) -> DegenerationWitness:
    """A path of g elliptic curves over the field, f ordinary and g-f
    supersingular, realizing total p-rank f."""
    if g < 2:
        raise ValueError("witness trees need genus >= 2")
    tree = path_tree([1] * g)
    labeling = labelings(tree, f)[0]
    ordinary = _elliptic_with_prank(field, 1) if f else None
    supersingular = _elliptic_with_prank(field, 0) if f < g else None
    curves = tuple(ordinary if fv else supersingular for fv in labeling)
    assert prank_compact(tree, labeling) == f
    return DegenerationWitness(tree, labeling, curves)
