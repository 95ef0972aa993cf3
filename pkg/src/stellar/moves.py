"""Stellar moves: subdivision, welding (the inverse), relabeling, prisms,
greedy collapse, and bounded ball/sphere recognition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .complexes import (
    EMPTY,
    Complex,
    LabelAllocator,
    Simplex,
    all_faces,
    cone,
    simplex,
    simplex_boundary,
)
from .errors import BudgetExceeded, ComplexError, MoveError, WeldError
from .homology import complex_h1


def subdivide(k: Complex, a: Simplex, vertex: int) -> Complex:
    """Star the simplex `a` at the fresh vertex `vertex`.

    Replaces the open star of `a` with the cone from `vertex` over
    boundary(a) * link(a); the residual part of the complex is untouched.
    """
    a = simplex(a)
    if vertex in k.vertices():
        raise MoveError(f"subdivision vertex {vertex} already occurs in the complex")
    if vertex < 1:
        raise MoveError(f"subdivision vertex must be a positive label, got {vertex}")
    sa = set(a)
    if not any(sa <= set(g) for g in k.generators):
        raise MoveError(f"simplex {a} is not a face of any generator")
    bdy = Complex(simplex_boundary(a)) if len(a) > 1 else Complex([EMPTY])
    starred = cone(vertex).join(bdy).join(k.link(a))
    return starred + k.residual(a)


def weld_factor(k: Complex, a: Simplex, vertex: int) -> Complex:
    """Factor link(vertex) as boundary(a) * B and return B, or raise."""
    a = simplex(a)
    if vertex not in k.vertices():
        raise WeldError(f"vertex {vertex} does not occur in the complex")
    if any(set(a) <= set(g) for g in k.generators):
        raise WeldError(f"simplex {a} is already a face of the complex")
    lk = k.link((vertex,))
    if len(a) == 1:
        # boundary of a vertex is the join identity; B is the whole link
        if a[0] in lk.vertices():
            raise WeldError(f"target vertex {a[0]} occurs in the link of {vertex}")
        return lk
    bdy = simplex_boundary(a)
    sa = set(a)
    b_parts: Set[Simplex] = set()
    for h in lk.generators:
        f = tuple(v for v in h if v in sa)
        if f not in bdy:
            raise WeldError(
                f"link generator {h} does not extend a codimension-one face of {a}"
            )
        b_parts.add(tuple(v for v in h if v not in sa))
    b = Complex(b_parts)
    if len(lk) != len(bdy) * len(b):
        raise WeldError(
            f"link of {vertex} does not factor through boundary({a}): "
            f"{len(lk)} generators vs {len(bdy)} x {len(b)}"
        )
    for f in bdy:
        for h in b.generators:
            if tuple(sorted(f + h)) not in lk:
                raise WeldError(
                    f"link of {vertex} is missing {tuple(sorted(f + h))}; not a join"
                )
    return b


def weld(k: Complex, a: Simplex, vertex: int) -> Complex:
    """Inverse subdivision: erase `vertex`, restoring the simplex `a`.

    Defined only when link(vertex) = boundary(a) * B for some complex B.
    """
    a = simplex(a)
    b = weld_factor(k, a, vertex)
    if not b:
        raise WeldError(f"vertex {vertex} has an empty link")
    return Complex([a]).join(b) + k.residual((vertex,))


def relabel(k: Complex, mapping: Dict[int, int]) -> Complex:
    """Rename vertices; labels outside the mapping are unchanged."""
    verts = k.vertices()
    image = {mapping.get(v, v) for v in verts}
    if len(image) != len(verts):
        raise MoveError("relabeling map is not injective on the vertex set")
    return Complex(tuple(sorted(mapping.get(v, v) for v in g)) for g in k.generators)


def prism_offset(k: Complex) -> int:
    """Label offset for prism copies: the next power of ten above max label."""
    top = k.max_label()
    offset = 10
    while offset <= top:
        offset *= 10
    return offset


def prism(k: Complex) -> Complex:
    """Prism over a uniform complex.

    Each generator (i1 < ... < ir) yields the r generators
    {i1..ik, i_k', ..., i_r'} where primed labels live in a fresh copy of
    the vertex set at a power-of-ten offset.
    """
    if not k.is_uniform():
        raise MoveError("prism requires a uniform complex")
    if not k:
        return Complex()
    off = prism_offset(k)
    gens = []
    for g in k.generators:
        r = len(g)
        for cut in range(1, r + 1):
            gens.append(tuple(sorted(g[:cut] + tuple(v + off for v in g[cut - 1:]))))
    return Complex(gens)


# ---------------------------------------------------------------------------
# move records


@dataclass(frozen=True)
class Subdivide:
    simplex: Simplex
    vertex: int

    op = "subdivide"

    def apply(self, k: Complex) -> Complex:
        return subdivide(k, self.simplex, self.vertex)

    def inverse(self) -> "Weld":
        return Weld(self.simplex, self.vertex)

    def to_json(self) -> dict:
        return {"op": "subdivide", "simplex": list(self.simplex), "vertex": self.vertex}


@dataclass(frozen=True)
class Weld:
    simplex: Simplex
    vertex: int

    op = "weld"

    def apply(self, k: Complex) -> Complex:
        return weld(k, self.simplex, self.vertex)

    def inverse(self) -> Subdivide:
        return Subdivide(self.simplex, self.vertex)

    def to_json(self) -> dict:
        return {"op": "weld", "simplex": list(self.simplex), "vertex": self.vertex}


@dataclass(frozen=True)
class Relabel:
    mapping: Tuple[Tuple[int, int], ...]

    op = "relabel"

    def apply(self, k: Complex) -> Complex:
        return relabel(k, dict(self.mapping))

    def inverse(self) -> "Relabel":
        return Relabel(tuple(sorted((b, a) for a, b in self.mapping)))

    def to_json(self) -> dict:
        return {"op": "relabel", "mapping": {str(a): b for a, b in self.mapping}}


Move = Subdivide | Weld | Relabel


@dataclass
class MoveSequence:
    moves: List[Move] = field(default_factory=list)

    def apply(self, k: Complex) -> Complex:
        for m in self.moves:
            k = m.apply(k)
        return k

    def inverse(self) -> "MoveSequence":
        return MoveSequence([m.inverse() for m in reversed(self.moves)])

    def to_json(self) -> list:
        return [m.to_json() for m in self.moves]


# ---------------------------------------------------------------------------
# collapse


def collapse_greedy(k: Complex) -> Complex:
    """Greedy free-face collapse on the full face closure.

    A face is free when it has exactly one proper coface.  Ties are broken
    by (dimension, lexicographic) order.  Returns the residue as a complex
    of its maximal faces.
    """
    facesets: Set[Simplex] = set(k.closure())
    while True:
        free_pair: Optional[Tuple[Simplex, Simplex]] = None
        for f in sorted(facesets, key=lambda s: (len(s), s)):
            cofaces = [g for g in facesets if len(g) > len(f) and set(f) < set(g)]
            if len(cofaces) == 1:
                free_pair = (f, cofaces[0])
                break
        if free_pair is None:
            break
        facesets.discard(free_pair[0])
        facesets.discard(free_pair[1])
    maximal = [
        f for f in facesets if not any(g != f and set(f) < set(g) for g in facesets)
    ]
    return Complex(maximal)


# ---------------------------------------------------------------------------
# recognition


class Recognition(Enum):
    BALL = "ball"
    SPHERE = "sphere"
    NEITHER = "neither"
    UNKNOWN = "unknown"


def is_standard_ball(k: Complex) -> bool:
    return len(k) == 1 and bool(next(iter(k.generators)))


def is_standard_sphere(k: Complex) -> bool:
    """All n+1-subsets of an (n+2)-point vertex set, for some n >= 0."""
    gens = k.generators
    if not gens:
        return False
    verts = sorted(k.vertices())
    n1 = len(next(iter(gens)))
    if not k.is_uniform() or len(verts) != n1 + 1:
        return False
    expected = set(itertools.combinations(verts, n1))
    return set(gens) == expected


def _vertex_degrees(k: Complex) -> Dict[int, int]:
    deg: Dict[int, int] = {}
    for g in k.generators:
        for v in g:
            deg[v] = deg.get(v, 0) + 1
    return deg


def _recognize_dim1(k: Complex) -> Recognition:
    if not k.is_connected():
        return Recognition.NEITHER
    deg = _vertex_degrees(k)
    if any(d > 2 for d in deg.values()):
        return Recognition.NEITHER
    ends = sum(1 for d in deg.values() if d == 1)
    if ends == 0:
        return Recognition.SPHERE  # a circle
    if ends == 2:
        return Recognition.BALL  # an arc
    return Recognition.NEITHER


def _link_graph_shape(k: Complex, v: int) -> Optional[str]:
    """Shape of the link of a vertex in a 2-complex: 'circle', 'arc' or None."""
    lk = k.link((v,))
    if lk.dimension() != 1 or not lk.is_uniform():
        return None
    if not lk.is_connected():
        return None
    deg = _vertex_degrees(lk)
    if any(d > 2 for d in deg.values()):
        return None
    ends = sum(1 for d in deg.values() if d == 1)
    if ends == 0:
        return "circle"
    if ends == 2:
        return "arc"
    return None


def is_surface(k: Complex) -> bool:
    """Uniform 2-complex check: edge degrees <= 2, vertex links arcs/circles."""
    if k.dimension() != 2 or not k.is_uniform():
        return False
    edge_deg: Dict[Simplex, int] = {}
    for g in k.generators:
        for e in itertools.combinations(g, 2):
            edge_deg[e] = edge_deg.get(e, 0) + 1
    if any(d > 2 for d in edge_deg.values()):
        return False
    return all(_link_graph_shape(k, v) is not None for v in k.vertices())


def _boundary_circle_count(k: Complex) -> Optional[int]:
    """Number of circles in the boundary of a surface-like 2-complex."""
    bdy = k.boundary()
    if not bdy:
        return 0
    deg = _vertex_degrees(bdy)
    if any(d != 2 for d in deg.values()):
        return None
    # count connected components of the boundary graph
    parent = {v: v for v in bdy.vertices()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in bdy.generators:
        parent[find(u)] = find(v)
    return len({find(v) for v in parent})


def _recognize_dim2(k: Complex) -> Recognition:
    if not k.is_connected():
        return Recognition.NEITHER
    if not is_surface(k):
        return Recognition.NEITHER
    chi = k.euler_characteristic()
    if k.is_closed():
        return Recognition.SPHERE if chi == 2 else Recognition.NEITHER
    if chi == 1 and _boundary_circle_count(k) == 1:
        return Recognition.BALL
    return Recognition.NEITHER


def weld_candidates(k: Complex) -> Iterator[Tuple[Simplex, int]]:
    """Enumerate (simplex, vertex) pairs for which weld() is defined."""
    for vertex in sorted(k.vertices()):
        lk = k.link((vertex,))
        if not lk or EMPTY in lk.generators:
            continue
        g0 = min(lk.sorted_generators())
        seen: Set[Simplex] = set()
        link_vertices = sorted(lk.vertices())
        for r in range(1, len(g0) + 1):
            for f in itertools.combinations(g0, r):
                for v in link_vertices:
                    if v in f:
                        continue
                    a = tuple(sorted(f + (v,)))
                    if a in seen:
                        continue
                    seen.add(a)
                    try:
                        weld_factor(k, a, vertex)
                    except WeldError:
                        continue
                    yield a, vertex


def _canon_key(k: Complex) -> FrozenSet[Simplex]:
    """Cheap dedup key: densely relabel vertices in sorted order."""
    ren = {v: i + 1 for i, v in enumerate(sorted(k.vertices()))}
    return frozenset(tuple(ren[v] for v in g) for g in k.generators)


def recognize(k: Complex, budget: int = 2000) -> Recognition:
    """Decide ball/sphere: exact through dimension 2, bounded search above.

    For dimension >= 3 the answer Unknown means the weld-shrinking search
    ran out of budget, never that the complex was silently accepted.
    """
    if not k.is_uniform():
        raise ComplexError("recognition requires a uniform complex")
    if not k:
        return Recognition.NEITHER
    dim = k.dimension()
    if dim == 0:
        n = len(k)
        return (
            Recognition.BALL
            if n == 1
            else Recognition.SPHERE if n == 2 else Recognition.NEITHER
        )
    if not k.is_connected():
        return Recognition.NEITHER
    if dim == 1:
        return _recognize_dim1(k)
    if dim == 2:
        return _recognize_dim2(k)

    closed = k.is_closed()
    chi = k.euler_characteristic()
    if closed:
        if dim % 2 == 1 and chi != 0:
            return Recognition.NEITHER
        if dim % 2 == 0 and chi != 2:
            return Recognition.NEITHER
        if not complex_h1(k).is_trivial():
            return Recognition.NEITHER
    else:
        if chi != 1:
            return Recognition.NEITHER
        if not complex_h1(k).is_trivial():
            return Recognition.NEITHER

    target = Recognition.SPHERE if closed else Recognition.BALL

    if not closed:
        residue = collapse_greedy(k)
        if len(residue) == 1 and residue.dimension() == 0:
            return Recognition.BALL

    # bounded breadth-first shrink by welds
    spent = 0
    seen = {_canon_key(k)}
    frontier = [k]
    while frontier and spent < budget:
        nxt: List[Complex] = []
        for state in frontier:
            if is_standard_ball(state):
                return Recognition.BALL if target is Recognition.BALL else Recognition.NEITHER
            if is_standard_sphere(state):
                return target if closed else Recognition.NEITHER
            for a, vertex in weld_candidates(state):
                spent += 1
                if spent >= budget:
                    return Recognition.UNKNOWN
                child = weld(state, a, vertex)
                key = _canon_key(child)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(child)
        frontier = nxt
    for state in frontier:
        if (closed and is_standard_sphere(state)) or (
            not closed and is_standard_ball(state)
        ):
            return target
    return Recognition.UNKNOWN
