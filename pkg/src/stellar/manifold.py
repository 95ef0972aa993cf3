"""Manifold checking via vertex-link recognition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .complexes import Complex
from .errors import ComplexError
from .moves import Recognition, recognize


@dataclass
class ManifoldReport:
    """Outcome of a per-vertex link inspection.

    `is_manifold` is None when at least one link came back Unknown and no
    link was outright rejected.
    """

    is_manifold: Optional[bool]
    closed: bool
    dimension: int
    link_results: Dict[int, Recognition] = field(default_factory=dict)
    bad_vertices: List[int] = field(default_factory=list)
    unknown_vertices: List[int] = field(default_factory=list)

    def describe(self) -> str:
        if self.is_manifold is None:
            return (
                f"undecided {self.dimension}-complex: links at "
                f"{self.unknown_vertices} exceeded the search budget"
            )
        if not self.is_manifold:
            return (
                f"not a manifold: bad links at vertices {self.bad_vertices}"
            )
        kind = "closed" if self.closed else "bounded"
        return f"{kind} {self.dimension}-manifold"


def check_manifold(k: Complex, budget: int = 2000) -> ManifoldReport:
    """Check whether every vertex link is a sphere or ball of the right dimension.

    A link that is a sphere puts the vertex in the interior; a ball puts it
    on the boundary.  Any other answer disqualifies the complex.
    """
    if not k:
        raise ComplexError("cannot check the empty complex")
    if not k.is_uniform():
        return ManifoldReport(False, False, k.dimension())
    dim = k.dimension()
    if dim == 0:
        return ManifoldReport(True, True, 0)
    results: Dict[int, Recognition] = {}
    bad: List[int] = []
    unknown: List[int] = []
    for v in sorted(k.vertices()):
        lk = k.link((v,))
        res = recognize(lk, budget=budget)
        results[v] = res
        if res is Recognition.NEITHER:
            bad.append(v)
        elif res is Recognition.UNKNOWN:
            unknown.append(v)
    verdict: Optional[bool]
    if bad:
        verdict = False
    elif unknown:
        verdict = None
    else:
        verdict = True
    return ManifoldReport(
        is_manifold=verdict,
        closed=k.is_closed(),
        dimension=dim,
        link_results=results,
        bad_vertices=bad,
        unknown_vertices=unknown,
    )


def residual_manifold_check(k: Complex, a, budget: int = 2000) -> ManifoldReport:
    """Manifold check on the residual part Q(a, k)."""
    q = k.residual(a)
    return check_manifold(q, budget=budget)
