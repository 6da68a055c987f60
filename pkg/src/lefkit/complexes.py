"""Simplicial complexes and their topological predicates.

A complex is stored by its inclusion-maximal facets over integer vertex
ids.  All operations are pure and complexes are immutable, so values can
be shared freely.  Homology is computed over the rationals throughout;
this pins characteristic zero for every downstream Lefschetz statement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from . import linalg
from .errors import (
    DimensionError,
    InvalidComplex,
    NotAFace,
    ParseError,
    PurityError,
)


class SimplicialComplex:
    """A simplicial complex given by its facets.

    Facets are stored sorted (lexicographically by sorted vertex ids) and
    duplicate-free; no facet contains another.  ``labels`` optionally maps
    vertex ids to payload objects (faces, lattice points) for derived
    complexes and is ignored by equality.
    """

    __slots__ = ("vertices", "facets", "labels", "name", "meta", "_hash")

    def __init__(self, facets, labels=None, name="", meta=None):
        fs = sorted({frozenset(f) for f in facets}, key=sorted)
        maximal = [f for f in fs if not any(f < g for g in fs)]
        self.facets = tuple(maximal)
        verts = set()
        for f in maximal:
            verts.update(f)
        for v in verts:
            if not isinstance(v, int) or v < 0:
                raise InvalidComplex(f"vertex ids must be non-negative integers, got {v!r}")
        self.vertices = tuple(sorted(verts))
        self.labels = dict(labels) if labels else None
        self.name = name
        self.meta = dict(meta) if meta else {}
        self._hash = hash((self.vertices, self.facets))

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def f_count(self, k: int) -> int:
        return len(faces(self, k)) if -1 <= k <= self.dim else 0

    def all_faces(self) -> tuple:
        return _all_faces(self)

    def has_face(self, sigma) -> bool:
        s = frozenset(sigma)
        return any(s <= f for f in self.facets)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self.facets == other.facets
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        tag = self.name or f"{len(self.facets)} facets"
        return f"SimplicialComplex({tag}, dim={self.dim})"

    # --- JSON interchange ----------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "vertices": list(self.vertices),
            "facets": [sorted(f) for f in self.facets],
            "meta": self.meta,
        }
        if self.labels is not None:
            out["labels"] = {str(v): _label_json(lab) for v, lab in sorted(self.labels.items())}
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SimplicialComplex":
        try:
            cx = from_facets(obj["facets"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad complex JSON: {exc}") from exc
        cx.name = obj.get("name", "")
        cx.meta = dict(obj.get("meta") or {})
        declared = set(obj.get("vertices", cx.vertices))
        if declared and not set(cx.vertices) <= declared:
            raise ParseError("facet vertices missing from declared vertex list")
        return cx


def _label_json(lab):
    if isinstance(lab, frozenset):
        return sorted(lab)
    if hasattr(lab, "coords"):
        return list(lab.coords)
    return lab


def load_complex(path) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return SimplicialComplex.from_json_dict(obj)


@dataclass(frozen=True)
class FHProfile:
    """Face counts and their h-transform."""

    f: tuple
    h: tuple
    h_degree: int


@dataclass(frozen=True)
class HomologyReport:
    """Reduced rational Betti numbers, indexed -1..dim.

    ``top_cycle`` is a generator of the top kernel (an orientation) when
    the top homology has rank one.
    """

    ranks: tuple
    top_cycle: Optional[tuple] = None

    def rank(self, i: int) -> int:
        return self.ranks[i + 1]


@dataclass(frozen=True)
class Coloring:
    """Proper coloring of the 1-skeleton with colors 1..k."""

    assignment: dict
    k: int

    def color_class(self, c: int):
        return frozenset(v for v, col in self.assignment.items() if col == c)

    def __hash__(self):
        return hash((frozenset(self.assignment.items()), self.k))


@dataclass(frozen=True)
class CMReport:
    holds: bool
    witness_face: Optional[frozenset] = None
    witness_index: Optional[int] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class PseudomanifoldStatus:
    pure: bool
    strongly_connected: bool
    max_ridge_degree: int
    boundary: Optional[SimplicialComplex]
    orientable: bool

    def is_pseudomanifold(self) -> bool:
        return self.pure and self.strongly_connected and self.max_ridge_degree <= 2


@dataclass(frozen=True)
class CollapseCertificate:
    """Replayable sequence of elementary collapses.

    Each step removes a free face together with the unique face strictly
    containing it; ``residual`` is the complex left after all steps.
    """

    steps: tuple
    residual: SimplicialComplex


def from_facets(facet_list) -> SimplicialComplex:
    """Canonical complex from a list of vertex sets.

    Facets contained in other facets are dropped; the empty complex is
    rejected.
    """
    facet_list = list(facet_list)
    if not facet_list:
        raise InvalidComplex("a complex needs at least one facet")
    for f in facet_list:
        fs = frozenset(f)
        if not fs:
            raise InvalidComplex("empty facet")
    return SimplicialComplex(facet_list)


@lru_cache(maxsize=None)
def _all_faces(cx: SimplicialComplex) -> tuple:
    seen = {frozenset()}
    for f in cx.facets:
        f = sorted(f)
        for k in range(1, len(f) + 1):
            seen.update(frozenset(c) for c in combinations(f, k))
    return tuple(sorted(seen, key=lambda s: (len(s), sorted(s))))


def faces(cx: SimplicialComplex, k: int):
    """All k-dimensional faces, sorted; ``faces(cx, -1) == [frozenset()]``."""
    if not -1 <= k <= cx.dim:
        raise DimensionError(f"no faces of dimension {k} in a {cx.dim}-complex")
    return [s for s in _all_faces(cx) if len(s) == k + 1]


def fh_profile(cx: SimplicialComplex) -> FHProfile:
    """f-vector (starting at f_{-1}=1) and h-vector via the exact transform."""
    d = cx.dim
    fvec = [len([s for s in _all_faces(cx) if len(s) == i]) for i in range(d + 2)]
    # expand sum_i f_{i-1} (x-1)^{d+1-i}; h_i is the coefficient of x^{d+1-i}
    coeffs = [0] * (d + 2)
    for i in range(d + 2):
        m = d + 1 - i
        for t in range(m + 1):
            coeffs[t] += fvec[i] * _binom(m, t) * (-1) ** (m - t)
    h = tuple(coeffs[d + 1 - i] for i in range(d + 2))
    h_degree = max((i for i, v in enumerate(h) if v != 0), default=0)
    return FHProfile(tuple(fvec), h, h_degree)


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def link(cx: SimplicialComplex, sigma) -> SimplicialComplex:
    """Link of a face, presented by its maximal elements."""
    s = frozenset(sigma)
    if not cx.has_face(s):
        raise NotAFace(f"{sorted(s)} is not a face")
    tops = {f - s for f in cx.facets if s <= f}
    maximal = [t for t in tops if not any(t < u for u in tops)]
    return SimplicialComplex(maximal)


def boundary_matrix(cx: SimplicialComplex, k: int) -> linalg.ExactMatrix:
    """Boundary map from k-chains to (k-1)-chains with the standard signs.

    Rows are (k-1)-faces and columns k-faces, both in the canonical sorted
    order; the reduced complex includes the empty face in degree -1.
    """
    lo = faces(cx, k - 1) if k - 1 >= -1 else []
    hi = faces(cx, k) if k <= cx.dim else []
    lo_index = {f: i for i, f in enumerate(lo)}
    entries = {}
    for j, f in enumerate(hi):
        vs = sorted(f)
        for pos, v in enumerate(vs):
            sub = frozenset(vs[:pos] + vs[pos + 1:])
            entries[(lo_index[sub], j)] = Fraction((-1) ** pos)
    return linalg.ExactMatrix(len(lo), len(hi), entries)


@lru_cache(maxsize=None)
def homology(cx: SimplicialComplex) -> HomologyReport:
    """Reduced rational homology from exact boundary matrices."""
    d = cx.dim
    counts = {k: len(faces(cx, k)) for k in range(-1, d + 1)}
    bnd_rank = {}
    for k in range(0, d + 1):
        bnd_rank[k] = linalg.rank(boundary_matrix(cx, k))
    bnd_rank[-1] = 0
    bnd_rank[d + 1] = 0
    ranks = []
    for i in range(-1, d + 1):
        kernel_dim = counts[i] - bnd_rank[i]
        ranks.append(kernel_dim - bnd_rank[i + 1])
    top_cycle = None
    if ranks[-1] == 1:
        kb = linalg.kernel_basis(boundary_matrix(cx, d))
        top_cycle = kb.vectors[0]
    return HomologyReport(tuple(ranks), top_cycle)


@lru_cache(maxsize=None)
def is_cohen_macaulay(cx: SimplicialComplex) -> CMReport:
    """Reisner's criterion: links have no reduced homology below top dimension."""
    for sigma in _all_faces(cx):
        lk = link(cx, sigma)
        rep = homology(lk)
        for i in range(-1, lk.dim):
            if rep.rank(i) != 0:
                return CMReport(False, sigma, i)
    return CMReport(True)


def _ridge_degrees(cx: SimplicialComplex):
    deg = {}
    for f in cx.facets:
        for r in combinations(sorted(f), len(f) - 1):
            deg[frozenset(r)] = deg.get(frozenset(r), 0) + 1
    return deg


def _facet_adjacency(cx: SimplicialComplex):
    n = len(cx.facets)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            cap = cx.facets[i] & cx.facets[j]
            if len(cap) == len(cx.facets[i]) - 1 == len(cx.facets[j]) - 1:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def pseudomanifold_status(cx: SimplicialComplex) -> PseudomanifoldStatus:
    """Purity, strong connectivity, ridge degrees, boundary and orientability."""
    pure = cx.is_pure()
    adj = _facet_adjacency(cx)
    seen = {0}
    queue = [0]
    while queue:
        i = queue.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    strongly_connected = len(seen) == len(cx.facets)
    deg = _ridge_degrees(cx)
    max_deg = max(deg.values()) if deg else 0
    boundary_ridges = [r for r, c in sorted(deg.items(), key=lambda kv: sorted(kv[0])) if c == 1]
    boundary = SimplicialComplex(boundary_ridges) if boundary_ridges else None
    orientable = False
    if pure and strongly_connected and max_deg <= 2 and boundary is None:
        orientable = homology(cx).rank(cx.dim) == 1
    return PseudomanifoldStatus(pure, strongly_connected, max_deg, boundary, orientable)


@lru_cache(maxsize=None)
def is_homology_sphere(cx: SimplicialComplex) -> bool:
    """True when every link has the rational homology of a sphere of its dimension."""
    for sigma in _all_faces(cx):
        lk = link(cx, sigma)
        rep = homology(lk)
        for i in range(-1, lk.dim + 1):
            expected = 1 if i == lk.dim else 0
            if rep.rank(i) != expected:
                return False
    return True


def one_skeleton_edges(cx: SimplicialComplex):
    return [e for e in _all_faces(cx) if len(e) == 2]


def balanced_coloring(cx: SimplicialComplex) -> Optional[Coloring]:
    """Proper (dim+1)-coloring of the 1-skeleton by exhaustive backtracking."""
    if not cx.is_pure():
        raise PurityError("balancedness presumes a pure complex")
    k = cx.dim + 1
    verts = list(cx.vertices)
    adj = {v: set() for v in verts}
    for e in one_skeleton_edges(cx):
        a, b = sorted(e)
        adj[a].add(b)
        adj[b].add(a)
    assignment = {}

    def backtrack(idx):
        if idx == len(verts):
            return True
        v = verts[idx]
        used = {assignment[u] for u in adj[v] if u in assignment}
        for c in range(1, k + 1):
            if c not in used:
                assignment[v] = c
                if backtrack(idx + 1):
                    return True
                del assignment[v]
        return False

    if not backtrack(0):
        return None
    return Coloring(dict(assignment), k)


def _face_poset(face_set):
    """Map each face to the faces strictly containing it (within face_set)."""
    by_size = {}
    for f in face_set:
        by_size.setdefault(len(f), []).append(f)
    cofaces = {f: set() for f in face_set}
    for f in face_set:
        for g in face_set:
            if len(g) > len(f) and f < g:
                cofaces[f].add(g)
    return cofaces


def _free_faces(face_set):
    cofaces = _face_poset(face_set)
    out = []
    for f, cs in cofaces.items():
        if len(cs) == 1:
            out.append((f, next(iter(cs))))
    # prefer high-dimensional free faces; deterministic tie-break
    out.sort(key=lambda pair: (-len(pair[0]), sorted(pair[0])))
    return out


def collapse_search(cx: SimplicialComplex, target_dim: int, budget: int = 10**6):
    """Greedy free-face collapsing with depth-first backtracking.

    Returns a certificate whose residual has dimension at most
    ``target_dim``, or None if the search exhausts its options or budget.
    A None result is not a proof of non-collapsibility.
    """
    if target_dim < 0:
        raise DimensionError("target dimension must be >= 0")
    start = set(_all_faces(cx)) - {frozenset()}
    steps_budget = [budget]

    def dim_of(face_set):
        return max(len(f) for f in face_set) - 1

    def search(face_set, trail):
        if dim_of(face_set) <= target_dim:
            return list(trail)
        if steps_budget[0] <= 0:
            return None
        for free, coface in _free_faces(face_set):
            steps_budget[0] -= 1
            nxt = face_set - {free, coface}
            trail.append((free, coface))
            found = search(nxt, trail)
            if found is not None:
                return found
            trail.pop()
            if steps_budget[0] <= 0:
                return None
        return None

    found = search(frozenset(start), [])
    if found is None:
        return None
    remaining = set(start)
    for free, coface in found:
        remaining -= {free, coface}
    maximal = [f for f in remaining if not any(f < g for g in remaining)]
    residual = SimplicialComplex(maximal)
    return CollapseCertificate(tuple(found), residual)


def replay_collapse(cx: SimplicialComplex, cert: CollapseCertificate) -> bool:
    """Machine-check a collapse certificate step by step.

    Raises ValueError on any invalid step; returns True when the replayed
    residual matches the certificate.
    """
    face_set = set(_all_faces(cx)) - {frozenset()}
    for free, coface in cert.steps:
        if free not in face_set or coface not in face_set:
            raise ValueError(f"step touches a missing face: {sorted(free)}")
        containing = [g for g in face_set if free < g]
        if containing != [coface]:
            raise ValueError(f"{sorted(free)} is not free (cofaces: {len(containing)})")
        face_set -= {free, coface}
    maximal = [f for f in face_set if not any(f < g for g in face_set)]
    if SimplicialComplex(maximal) != cert.residual:
        raise ValueError("residual mismatch after replay")
    return True
