"""Simplicial complexes over Z2.

A complex is a finite set of generator simplexes; addition is symmetric
difference, so adding a simplex twice removes it.  A simplex is a sorted
tuple of distinct positive integer vertex labels.  The empty tuple is
permitted internally: it is the identity for the join and shows up as the
link of a generator inside itself.  Public parsers never accept it.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import ComplexError

Simplex = Tuple[int, ...]

EMPTY: Simplex = ()


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex labels into a simplex tuple."""
    vs = tuple(sorted(vertices))
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ComplexError(f"vertex labels must be positive integers, got {v!r}")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise ComplexError(f"repeated vertex {a} in simplex {vs}")
    return vs


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex, size: int) -> Iterator[Simplex]:
    """All faces of `s` with `size` vertices, in lexicographic order."""
    return itertools.combinations(s, size)


def all_faces(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of `s`, including `s` itself."""
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


def simplex_boundary(s: Simplex) -> FrozenSet[Simplex]:
    """Faces of codimension one.  For a single vertex this is {()}."""
    if not s:
        raise ComplexError("the empty simplex has no boundary")
    return frozenset(tuple(v for v in s if v != skip) for skip in s)


class Complex:
    """An immutable set of generator simplexes with Z2 addition."""

    __slots__ = ("_gens",)

    def __init__(self, generators: Iterable[Simplex] = ()):
        gens = set()
        for g in generators:
            g = tuple(g)
            if g != EMPTY:
                g = simplex(g)
            if g in gens:
                gens.discard(g)  # mod-2: a pair cancels
            else:
                gens.add(g)
        self._gens: FrozenSet[Simplex] = frozenset(gens)

    # -- basic protocol -------------------------------------------------

    @property
    def generators(self) -> FrozenSet[Simplex]:
        return self._gens

    def sorted_generators(self) -> List[Simplex]:
        return sorted(self._gens, key=lambda g: (len(g), g))

    def __len__(self) -> int:
        return len(self._gens)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted_generators())

    def __contains__(self, s) -> bool:
        return tuple(s) in self._gens

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._gens == other._gens

    def __hash__(self) -> int:
        return hash(self._gens)

    def __bool__(self) -> bool:
        return bool(self._gens)

    def __repr__(self) -> str:
        inner = " + ".join(str(g) for g in self.sorted_generators())
        return f"Complex({inner or '0'})"

    def __add__(self, other: "Complex") -> "Complex":
        if not isinstance(other, Complex):
            return NotImplemented
        return Complex(self._gens ^ other._gens)

    # -- vertex bookkeeping ---------------------------------------------

    def vertices(self) -> FrozenSet[int]:
        out: set = set()
        for g in self._gens:
            out.update(g)
        return frozenset(out)

    def max_label(self) -> int:
        vs = self.vertices()
        return max(vs) if vs else 0

    def dimension(self) -> int:
        """Largest generator dimension; -1 for the empty complex or {()}."""
        if not self._gens:
            return -1
        return max(len(g) for g in self._gens) - 1

    def is_uniform(self) -> bool:
        dims = {len(g) for g in self._gens}
        return len(dims) <= 1

    # -- the calculus ----------------------------------------------------

    def boundary(self) -> "Complex":
        """Mod-2 sum of the codimension-one faces of every generator."""
        total: set = set()
        for g in self._gens:
            if len(g) < 2:
                raise ComplexError(
                    f"cannot take the boundary of {g}: generators must have dimension >= 1"
                )
            for f in simplex_boundary(g):
                total.symmetric_difference_update({f})
        return Complex(total)

    def is_closed(self) -> bool:
        return not self.boundary()

    def join(self, other: "Complex") -> "Complex":
        """Join: generators are unions; vertex sets must be disjoint."""
        if not isinstance(other, Complex):
            raise ComplexError("join expects a Complex")
        shared = self.vertices() & other.vertices()
        if shared:
            raise ComplexError(
                f"join requires disjoint vertex sets; shared labels {sorted(shared)}"
            )
        gens = []
        for g in self._gens:
            for h in other._gens:
                gens.append(tuple(sorted(g + h)))
        return Complex(gens)

    def link(self, a: Simplex) -> "Complex":
        """Faces whose join with `a` is a generator: {g \\ a : a <= g}.

        Treated as a set: coincident complements collapse to one face.
        """
        a = tuple(sorted(a))
        sa = set(a)
        out = set()
        for g in self._gens:
            if sa <= set(g):
                out.add(tuple(v for v in g if v not in sa))
        return Complex(out)

    def residual(self, a: Simplex) -> "Complex":
        """Generators not containing `a`."""
        sa = set(a)
        return Complex(g for g in self._gens if not sa <= set(g))

    def star(self, a: Simplex) -> "Complex":
        """Generators containing `a` (equals join(a, link(a)))."""
        sa = set(tuple(sorted(a)))
        return Complex(g for g in self._gens if sa <= set(g))

    # -- face counting -----------------------------------------------------

    def faces_of_dim(self, d: int) -> FrozenSet[Simplex]:
        out = set()
        for g in self._gens:
            if len(g) >= d + 1:
                out.update(itertools.combinations(g, d + 1))
        return frozenset(out)

    def closure(self) -> FrozenSet[Simplex]:
        """Every nonempty face of every generator."""
        out = set()
        for g in self._gens:
            out.update(all_faces(g))
        return frozenset(out)

    def f_vector(self) -> List[int]:
        """Entry i counts distinct i-dimensional faces."""
        dim = self.dimension()
        if dim < 0:
            return []
        counts = [0] * (dim + 1)
        seen: set = set()
        for g in self._gens:
            for f in all_faces(g):
                if f not in seen:
                    seen.add(f)
                    counts[len(f) - 1] += 1
        return counts

    def euler_characteristic(self) -> int:
        chi = 0
        for i, q in enumerate(self.f_vector()):
            chi += q if i % 2 == 0 else -q
        return chi

    def is_connected(self) -> bool:
        """Connectivity of the union of generators (empty complex counts)."""
        gens = [g for g in self._gens if g]
        if len(gens) <= 1:
            return True
        parent: Dict[int, int] = {}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for v in g:
                parent.setdefault(v, v)
            for v in g[1:]:
                parent[find(g[0])] = find(v)
        roots = {find(v) for v in parent}
        return len(roots) == 1


def cone(a: int) -> Complex:
    """The complex consisting of the single vertex `a`."""
    return Complex([(a,)])


def standard_simplex(n: int, start: int = 1) -> Complex:
    """The n-simplex on labels start..start+n as a one-generator complex."""
    if n < 0:
        raise ComplexError("dimension must be >= 0")
    return Complex([tuple(range(start, start + n + 1))])


def standard_sphere(n: int, start: int = 1) -> Complex:
    """Boundary of the (n+1)-simplex: the standard n-sphere."""
    return standard_simplex(n + 1, start).boundary()


class LabelAllocator:
    """Deterministic fresh-label source: always max-seen + 1."""

    def __init__(self, *complexes: Complex, floor: int = 0):
        top = floor
        for k in complexes:
            top = max(top, k.max_label())
        self._next = top + 1

    def note(self, label: int) -> None:
        if label >= self._next:
            self._next = label + 1

    def fresh(self) -> int:
        v = self._next
        self._next += 1
        return v
