"""Lens shells: twisted bipyramid structures on the 2-sphere.

The shell for parameters (q, p) identifies the northern and southern
triangle fans of a bipyramid with a rotation by p steps.  The naive q-gon
version is not regular — every equatorial triangle has two equivalent
vertices — so it is repaired by subdividing the offending edges, which
doubles the equator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Set, Tuple

from .complexes import Complex, LabelAllocator, Simplex
from .errors import EquivalenceError, StructureError
from .moves import subdivide
from .quotient import RegularEquivalence, StellarStructure

Matching = Dict[int, int]
MatchingTable = Dict[Tuple[Simplex, Simplex], Matching]


def _tri(*vs: int) -> Simplex:
    return tuple(sorted(vs))


def coarse_lens(q: int, p: int) -> Tuple[StellarStructure, MatchingTable]:
    """The q-gon bipyramid with the shift-p fan pairing.

    Not regular for q >= 3: each triangle has two equatorial (hence
    equivalent) vertices.  The explicit per-pair vertex matchings are
    returned alongside, since the classes alone do not determine them.
    """
    north, south = 1, 2
    eq = [3 + k for k in range(q)]
    tris = []
    for k in range(q):
        tris.append(_tri(north, eq[k], eq[(k + 1) % q]))
        tris.append(_tri(south, eq[k], eq[(k + 1) % q]))
    sphere = Complex(tris)
    pairs: List[Tuple[Simplex, Simplex]] = []
    table: MatchingTable = {}
    for k in range(q):
        g = _tri(north, eq[k], eq[(k + 1) % q])
        h = _tri(south, eq[(k + p) % q], eq[(k + p + 1) % q])
        pairs.append((g, h))
        table[(g, h)] = {
            north: south,
            eq[k]: eq[(k + p) % q],
            eq[(k + 1) % q]: eq[(k + p + 1) % q],
        }
    classes = [[north, south], eq]
    equivalence = RegularEquivalence.build(classes, pairs)
    apex = LabelAllocator(sphere).fresh()
    return StellarStructure(apex, sphere, equivalence), table


def _violating_edges(structure: StellarStructure) -> List[Simplex]:
    cls = structure.equivalence.class_of(structure.sphere)
    out: Set[Simplex] = set()
    for e in structure.sphere.faces_of_dim(1):
        if cls[e[0]] == cls[e[1]]:
            out.add(e)
    return sorted(out)


def make_regular(
    structure: StellarStructure,
    matchings: Optional[MatchingTable] = None,
    max_rounds: int = 32,
) -> Tuple[StellarStructure, MatchingTable]:
    """Repair an equivalence whose pairs join vertices within a class.

    Each round picks the orbit, under the pair matchings, of the smallest
    edge with equivalent endpoints, subdivides every edge of the orbit at a
    fresh midpoint, and places the midpoints in one new vertex class.  Pairs
    and matchings are refined along the way.  Fails if some generator holds
    two orbit edges at once.
    """
    sphere = structure.sphere
    equivalence = structure.equivalence
    cls_list = [sorted(c) for c in equivalence.vertex_classes]
    pairs = list(equivalence.generator_pairs)
    if matchings is None:
        cls = equivalence.class_of(sphere)
        from .quotient import pair_matching

        matchings = {(g, h): pair_matching(g, h, cls) for g, h in pairs}
    table = dict(matchings)
    alloc = LabelAllocator(sphere)
    alloc.note(structure.apex)

    for _ in range(max_rounds):
        bad = _violating_edges(
            StellarStructure(
                structure.apex, sphere, RegularEquivalence.build(cls_list, pairs)
            )
        )
        if not bad:
            break
        # orbit of the smallest violating edge under all matchings
        orbit: Set[Simplex] = {bad[0]}
        grew = True
        while grew:
            grew = False
            for (g, h), phi in table.items():
                inv = {b: a for a, b in phi.items()}
                for e in list(orbit):
                    if set(e) <= set(g):
                        img = _tri(*(phi[v] for v in e))
                        if img not in orbit:
                            orbit.add(img)
                            grew = True
                    if set(e) <= set(h):
                        pre = _tri(*(inv[v] for v in e))
                        if pre not in orbit:
                            orbit.add(pre)
                            grew = True
        for g in sphere.generators:
            inside = [e for e in orbit if set(e) <= set(g)]
            if len(inside) > 1:
                raise StructureError(
                    f"generator {g} contains {len(inside)} edges of one repair orbit"
                )
        mid = {e: alloc.fresh() for e in sorted(orbit)}
        for e in sorted(orbit):
            sphere = subdivide(sphere, e, mid[e])
        new_pairs: List[Tuple[Simplex, Simplex]] = []
        new_table: MatchingTable = {}
        for (g, h), phi in table.items():
            inside = [e for e in orbit if set(e) <= set(g)]
            if not inside:
                new_pairs.append((g, h))
                new_table[(g, h)] = phi
                continue
            (e,) = inside
            img = _tri(*(phi[v] for v in e))
            if img not in orbit:
                raise StructureError(
                    f"matching of pair ({g}, {h}) carries the repair orbit outside itself"
                )
            (c,) = tuple(v for v in g if v not in e)
            for u in e:
                child = _tri(c, u, mid[e])
                child_img = _tri(phi[c], phi[u], mid[img])
                child_phi = {c: phi[c], u: phi[u], mid[e]: mid[img]}
                new_pairs.append((child, child_img))
                new_table[(child, child_img)] = child_phi
        pairs = new_pairs
        table = new_table
        cls_list.append(sorted(mid.values()))
    else:
        raise StructureError("edge repair did not terminate within the round limit")

    equivalence = RegularEquivalence.build(cls_list, pairs)
    out = StellarStructure(structure.apex, sphere, equivalence)
    problems = out.validate()
    if problems:
        raise EquivalenceError("; ".join(problems))
    # the repaired structure must agree with its class-derived matchings
    cls = equivalence.class_of(sphere)
    from .quotient import pair_matching

    for (g, h), phi in table.items():
        if pair_matching(g, h, cls) != phi:
            raise StructureError(
                f"repaired matching of ({g}, {h}) disagrees with the vertex classes"
            )
    return out, table


def fold_structure(q: int = 4) -> StellarStructure:
    """Bipyramid folded across its equator: each northern triangle is glued
    to its southern mirror image, poles identified, equator fixed.  The
    quotient is a disk (the northern fan), and the resulting cone is a
    3-sphere."""
    if q < 3:
        raise StructureError("fold needs a q-gon equator with q >= 3")
    north, south = 1, 2
    eq = [3 + k for k in range(q)]
    tris = []
    pairs = []
    for k in range(q):
        up = _tri(north, eq[k], eq[(k + 1) % q])
        down = _tri(south, eq[k], eq[(k + 1) % q])
        tris.append(up)
        tris.append(down)
        pairs.append((up, down))
    equivalence = RegularEquivalence.build([[north, south]], pairs)
    sphere = Complex(tris)
    return StellarStructure(LabelAllocator(sphere).fresh(), sphere, equivalence)


def lens_structure(q: int, p: int) -> StellarStructure:
    """The lens shell for coprime parameters, as a regular structure."""
    if q < 2 or not 1 <= p < q:
        raise StructureError("lens parameters need q >= 2 and 1 <= p < q")
    if gcd(q, p) != 1:
        raise StructureError(f"lens parameters must be coprime, got ({q}, {p})")
    if q == 2:
        # the coarse 2-gon is degenerate, so build the repaired form directly:
        # a square bipyramid with the antipodal pairing
        north, south = 1, 2
        eq = [3, 4, 5, 6]
        tris = []
        pairs = []
        for k in range(4):
            tris.append(_tri(north, eq[k], eq[(k + 1) % 4]))
            tris.append(_tri(south, eq[k], eq[(k + 1) % 4]))
        for k in range(4):
            pairs.append(
                (
                    _tri(north, eq[k], eq[(k + 1) % 4]),
                    _tri(south, eq[(k + 2) % 4], eq[(k + 3) % 4]),
                )
            )
        classes = [[north, south], [eq[0], eq[2]], [eq[1], eq[3]]]
        equivalence = RegularEquivalence.build(classes, pairs)
        sphere = Complex(tris)
        return StellarStructure(LabelAllocator(sphere).fresh(), sphere, equivalence)
    coarse, table = coarse_lens(q, p)
    repaired, _ = make_regular(coarse, table)
    return repaired
