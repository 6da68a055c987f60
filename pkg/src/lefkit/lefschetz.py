"""Weak/strong Lefschetz decisions, inverse systems, sop verification and
the unexpectedness verdict.

All decisions reduce to exact ranks.  Quotients by extra forms are
computed inside the face-monomial basis of the Stanley-Reisner quotient:
squarefree generators annihilate exactly the non-face-supported
monomials, so spans and inverse systems never leave face-supported
coordinates.  Pure variable powers among the extra generators are folded
into exponent caps instead of span rows, which keeps the matrices at the
size of the capped algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg, subdivision
from .complexes import Coloring, SimplicialComplex, fh_profile, is_homology_sphere
from .errors import (
    ArityError,
    ColoringError,
    FalsificationError,
    HomogeneityError,
    HypothesisError,
    InputError,
    NotArtinian,
    PreconditionError,
    RangeError,
)
from .monomials import (
    ArtinianFrame,
    Monomial,
    Polynomial,
    contract,
    face_monomials,
    hilbert_function,
    multiplication_matrix,
    standard_basis,
    sum_of_variables,
)


@dataclass(frozen=True)
class SopCandidate:
    """A sequence of homogeneous forms proposed as a system of parameters."""

    theta: tuple
    total_degree_t: Optional[int] = None

    def __post_init__(self):
        for th in self.theta:
            if th.is_zero() or not th.is_homogeneous():
                raise HomogeneityError(f"sop entries must be homogeneous and nonzero: {th}")

    @classmethod
    def make(cls, forms, total_degree_t=None) -> "SopCandidate":
        return cls(tuple(forms), total_degree_t)

    @property
    def degrees(self) -> tuple:
        return tuple(th.degree() for th in self.theta)


@dataclass(frozen=True)
class SopCheck:
    is_sop: bool
    vanishing_degree: Optional[int]
    hilbert_values: tuple

    def __bool__(self):
        return self.is_sop


@dataclass(frozen=True)
class PerDegree:
    k: int
    dim_from: int
    dim_to: int
    rank: int
    full_rank: bool
    failure_mode: str  # none | injectivity | surjectivity | both


@dataclass(frozen=True)
class WlpReport:
    holds: bool
    socle_degree: int
    per_degree: tuple

    def failures(self):
        return [p for p in self.per_degree if not p.full_rank]


@dataclass(frozen=True)
class SlpReport:
    holds: bool
    socle_degree: int
    per_pair: tuple  # (power j, degree i, dim_from, dim_to, rank, full_rank)


@dataclass(frozen=True)
class InverseSystemPiece:
    degree: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class UnexpectedReport:
    """Per-condition verdicts for a candidate unexpected sop."""

    u1: bool
    u2: bool
    u3: bool
    u4: bool
    u5: bool
    overall: bool
    witnesses: dict

    def __bool__(self):
        return self.overall


@dataclass(frozen=True)
class ClassifierResult:
    wlp: bool
    reason: str

    def __bool__(self):
        return self.wlp


def _validate_extra(cx, extra):
    vset = set(cx.vertices)
    for g in extra:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise HomogeneityError(f"non-homogeneous form {g}")
        foreign = set(g.variables()) - vset
        if foreign:
            raise PreconditionError(
                f"form {g} mentions variables outside the vertex set: {sorted(foreign)}"
            )


def _split_generators(cx, extra, degree_cap):
    """Fold pure powers into caps; other monomials stay divisibility
    filters; everything else contributes span rows."""
    caps = {v: degree_cap + 1 for v in cx.vertices}
    mono_filters = []
    others = []
    for g in extra:
        if g.is_zero():
            continue
        if g.is_monomial():
            m = next(iter(g.terms))
            if len(m.exps) == 1:
                v, e = m.exps[0]
                caps[v] = min(caps[v], e)
            else:
                mono_filters.append(m)
        else:
            others.append(g)
    return caps, mono_filters, others


def _survives(m, mono_filters):
    return not any(f.divides(m) for f in mono_filters)


def _span_rows(cx, extra, k):
    """Degree-k span of (extra) inside the face-monomial basis.

    Returns (basis, rows) where rows are sparse vectors over the basis.
    """
    _validate_extra(cx, extra)
    caps, mono_filters, others = _split_generators(cx, extra, k)
    basis = [m for m in face_monomials(cx, k, caps) if _survives(m, mono_filters)]
    col = {m: j for j, m in enumerate(basis)}
    rows = []
    for g in others:
        dg = g.degree()
        if dg > k:
            continue
        for m in face_monomials(cx, k - dg, caps):
            if not _survives(m, mono_filters):
                continue
            vec = {}
            for mg, cg in g.terms.items():
                j = col.get(m.times(mg))
                if j is not None:
                    vec[j] = vec.get(j, Fraction(0)) + cg
            vec = {j: c for j, c in vec.items() if c}
            if vec:
                rows.append(vec)
    return basis, rows


def _rows_rank(rows, ncols):
    if not rows:
        return 0
    entries = {}
    for i, vec in enumerate(rows):
        for j, c in vec.items():
            entries[(i, j)] = c
    return linalg.rank(linalg.ExactMatrix(len(rows), ncols, entries))


def quotient_hilbert(cx: SimplicialComplex, extra, k: int) -> int:
    """Dimension of the degree-k piece of the Stanley-Reisner quotient by
    additional homogeneous forms."""
    if k < 0:
        return 0
    basis, rows = _span_rows(cx, extra, k)
    return len(basis) - _rows_rank(rows, len(basis))


def _vanishing_bound(cx, extra):
    h_degree = fh_profile(cx).h_degree
    return 1 + h_degree + sum(max(g.degree() - 1, 0) for g in extra)


def _first_vanishing(cx, extra):
    """First degree where the quotient Hilbert function vanishes, scanning
    up to the sop bound; None if it stays positive that far."""
    values = []
    for k in range(_vanishing_bound(cx, extra) + 1):
        v = quotient_hilbert(cx, extra, k)
        values.append(v)
        if v == 0:
            return k, tuple(values)
    return None, tuple(values)


def is_sop(cx: SimplicialComplex, cand: SopCandidate) -> SopCheck:
    """Decide whether the candidate is a system of parameters.

    The quotient of a standard graded algebra is zero from the first
    degree where it vanishes, and for a sop that happens no later than
    1 + sum(deg theta_i - 1) + deg h; scanning up to that bound decides.
    """
    d = cx.dim
    if len(cand.theta) != d + 1:
        raise ArityError(f"a sop of a {d}-complex needs {d + 1} forms, got {len(cand.theta)}")
    k, values = _first_vanishing(cx, cand.theta)
    return SopCheck(k is not None, k, values)


def inverse_system_piece(cx: SimplicialComplex, extra, k: int) -> InverseSystemPiece:
    """Degree-k piece of the inverse system of the Stanley-Reisner ideal
    plus extra forms, as a kernel over face-supported monomials."""
    _validate_extra(cx, extra)
    vanish, _ = _first_vanishing(cx, extra)
    if vanish is None:
        raise NotArtinian("quotient Hilbert function does not vanish by the sop bound")
    caps, mono_filters, others = _split_generators(cx, extra, k)
    cols = [m for m in face_monomials(cx, k, caps) if _survives(m, mono_filters)]
    col = {m: j for j, m in enumerate(cols)}
    row_index = {}
    entries = {}
    for g in others:
        dg = g.degree()
        for j, b in enumerate(cols):
            for ma, ca in g.terms.items():
                if ma.divides(b):
                    key = (g, b.divide(ma))
                    i = row_index.setdefault(key, len(row_index))
                    entries[(i, j)] = entries.get((i, j), Fraction(0)) + ca
    mat = linalg.ExactMatrix(len(row_index), len(cols), {k_: v for k_, v in entries.items() if v})
    kb = linalg.kernel_basis(mat)
    basis = tuple(
        Polynomial({cols[j]: c for j, c in enumerate(vec) if c}) for vec in kb.vectors
    )
    return InverseSystemPiece(k, basis)


def _membership(cx, extra, g):
    """Span-rank membership of g in the Stanley-Reisner ideal plus extra."""
    if not g.is_homogeneous():
        raise HomogeneityError(f"membership needs a homogeneous form, got {g}")
    _validate_extra(cx, [g])
    k = g.degree()
    if k < 0:
        return True
    basis, rows = _span_rows(cx, extra, k)
    col = {m: j for j, m in enumerate(basis)}
    gvec = {}
    for m, c in g.terms.items():
        j = col.get(m)
        if j is not None:
            gvec[j] = gvec.get(j, Fraction(0)) + c
    gvec = {j: c for j, c in gvec.items() if c}
    if not gvec:
        return True
    base_rank = _rows_rank(rows, len(basis))
    return _rows_rank(rows + [gvec], len(basis)) == base_rank


def ideal_membership(cx: SimplicialComplex, extra, g: Polynomial) -> bool:
    """Exact membership test by span rank (the inverse-system annihilation
    test is available through inverse_system_piece as an independent
    oracle)."""
    vanish, _ = _first_vanishing(cx, extra)
    if vanish is None:
        raise NotArtinian("membership is supported for artinian quotients only")
    return _membership(cx, extra, g)


def _failure_mode(dim_from, dim_to, rank):
    if rank == min(dim_from, dim_to):
        return "none"
    if dim_from < dim_to:
        return "injectivity"
    if dim_from > dim_to:
        return "surjectivity"
    return "both"


def wlp_check(frame: ArtinianFrame) -> WlpReport:
    """Full-rank report for multiplication by the sum of the variables in
    every degree up to the socle degree.  For monomial algebras that
    single linear form decides the weak Lefschetz property."""
    L = frame.linear_form()
    socle = frame.socle_degree()
    per = []
    for k in range(socle):
        a = hilbert_function(frame, k)
        b = hilbert_function(frame, k + 1)
        r = linalg.rank(multiplication_matrix(frame, L, k))
        full = r == min(a, b)
        per.append(PerDegree(k, a, b, r, full, "none" if full else _failure_mode(a, b, r)))
    return WlpReport(all(p.full_rank for p in per), socle, tuple(per))


def slp_check(frame: ArtinianFrame) -> SlpReport:
    """Full-rank report for all powers of the linear form."""
    L = frame.linear_form()
    socle = frame.socle_degree()
    per = []
    power = Polynomial.constant(1)
    for j in range(1, socle + 1):
        power = power * L
        for i in range(0, socle - j + 1):
            a = hilbert_function(frame, i)
            b = hilbert_function(frame, i + j)
            r = linalg.rank(multiplication_matrix(frame, power, i))
            per.append((j, i, a, b, r, r == min(a, b)))
    return SlpReport(all(p[5] for p in per), socle, tuple(per))


def kernel_transpose_basis(frame: ArtinianFrame, k: int) -> InverseSystemPiece:
    """Kernel of the transposed multiplication map from degree k to k-1.

    The basis vectors, read as polynomials in the standard monomials, are
    exactly the cap-bounded witnesses of the surjectivity-failure
    criterion.
    """
    if k < 1:
        raise RangeError("transpose kernel needs degree >= 1")
    mat = multiplication_matrix(frame, frame.linear_form(), k - 1)
    kb = linalg.kernel_basis(mat.transpose())
    monos = standard_basis(frame, k)
    basis = tuple(
        Polynomial({monos[j]: c for j, c in enumerate(vec) if c}) for vec in kb.vectors
    )
    return InverseSystemPiece(k, basis)


def _check_coloring(cx, rho: Coloring):
    d = cx.dim
    if rho.k != d + 1:
        raise ColoringError(f"need {d + 1} colors, coloring uses {rho.k}")
    if set(rho.assignment) != set(cx.vertices):
        raise ColoringError("coloring must assign every vertex")
    if not all(1 <= c <= rho.k for c in rho.assignment.values()):
        raise ColoringError("colors must lie in 1..k")
    for e in (f for f in cx.all_faces() if len(f) == 2):
        a, b = sorted(e)
        if rho.assignment[a] == rho.assignment[b]:
            raise ColoringError(f"adjacent vertices {a},{b} share color {rho.assignment[a]}")


def colored_sop(cx: SimplicialComplex, rho: Coloring) -> SopCandidate:
    """One linear form per color class; total degree equals deg h."""
    _check_coloring(cx, rho)
    theta = []
    for c in range(1, rho.k + 1):
        vs = sorted(v for v, col in rho.assignment.items() if col == c)
        theta.append(sum_of_variables(vs))
    return SopCandidate(tuple(theta), fh_profile(cx).h_degree)


def colored_dual_generator(cx: SimplicialComplex, rho: Coloring) -> Polynomial:
    """Signed sum of facet monomials over a bipartition of the facet-ridge
    graph; the Macaulay dual generator of the colored-sop quotient."""
    if not is_homology_sphere(cx):
        raise HypothesisError("dual generator construction needs a homology sphere")
    try:
        _check_coloring(cx, rho)
    except ColoringError as exc:
        raise HypothesisError(str(exc)) from exc
    graph = subdivision.facet_ridge_graph(cx)
    if graph.bipartition is None:
        raise HypothesisError("facet-ridge graph is not bipartite")
    b1, b2 = graph.bipartition
    terms = {}
    for idx in b1:
        terms[Monomial({v: 1 for v in graph.nodes[idx]})] = Fraction(1)
    for idx in b2:
        terms[Monomial({v: 1 for v in graph.nodes[idx]})] = Fraction(-1)
    F = Polynomial(terms)
    # active verification of the annihilation identities
    from .monomials import stanley_reisner_generators

    cand = colored_sop(cx, rho)
    checks = list(stanley_reisner_generators(cx).generators)
    checks.extend(cand.theta)
    checks.extend(Polynomial.variable(v, 2) for v in cx.vertices)
    checks.append(sum_of_variables(cx.vertices))
    for g in checks:
        if not contract(g, F).is_zero():
            raise FalsificationError(f"{g} does not annihilate the bipartition polynomial")
    return F


def universal_sop(n: int, count: int) -> SopCandidate:
    """Elementary symmetric polynomials e_1..e_count in x1..xn."""
    from itertools import combinations

    if not 1 <= count <= n:
        raise RangeError(f"count must lie in 1..{n}")
    theta = []
    for i in range(1, count + 1):
        terms = {
            Monomial({v: 1 for v in combo}): Fraction(1)
            for combo in combinations(range(1, n + 1), i)
        }
        theta.append(Polynomial(terms))
    return SopCandidate(tuple(theta), count * (count + 1) // 2)


def verify_unexpected(
    cx: SimplicialComplex,
    cand: SopCandidate,
    f: Polynomial,
    caps,
    t: int,
) -> UnexpectedReport:
    """Evaluate conditions (U1)-(U5) for a candidate sop.

    U1: the candidate is a sop.  U2: degree arithmetic
    sum(deg theta) + deg h - (d+1) = t.  U3/U4: the form f and every
    capped variable power lie in the ideal plus the sop.  U5: the capped
    algebra has no larger dimension in degree t than in degree t - deg f.
    """
    profile = fh_profile(cx)
    if t < profile.h_degree:
        raise RangeError(f"t={t} below deg h = {profile.h_degree}")
    if not f.is_homogeneous() or f.is_zero():
        raise HomogeneityError("f must be homogeneous and nonzero")
    frame = ArtinianFrame(cx, caps)
    d = cx.dim

    check = is_sop(cx, cand)
    u1 = check.is_sop

    lhs = sum(cand.degrees) + profile.h_degree - (d + 1)
    u2 = lhs == t

    u3 = _membership(cx, cand.theta, f)

    failing = []
    for v, a in frame.caps:
        if not _membership(cx, cand.theta, Polynomial.variable(v, a)):
            failing.append(v)
    u4 = not failing

    hf_t = hilbert_function(frame, t)
    hf_prev = hilbert_function(frame, t - f.degree()) if t - f.degree() >= 0 else 0
    u5 = hf_t <= hf_prev

    overall = u1 and u2 and u3 and u4 and u5
    witnesses = {
        "u1": {"vanishing_degree": check.vanishing_degree,
               "quotient_hilbert": list(check.hilbert_values)},
        "u2": {"computed_total_degree": lhs, "t": t},
        "u3": {"form": str(f)},
        "u4": {"failing_powers": [f"x{v}^{dict(frame.caps)[v]}" for v in failing]},
        "u5": {"hf_t": hf_t, "hf_t_minus_deg_f": hf_prev},
    }
    return UnexpectedReport(u1, u2, u3, u4, u5, overall, witnesses)


def graph_wlp_classifier(graph: SimplicialComplex, a: int) -> ClassifierResult:
    """Combinatorial WLP prediction for connected graphs.

    True when there are more vertices than edges, or otherwise when the
    (a-1)-fold half-hollow subdivision is not bipartite; always agrees
    with the direct rank computation.
    """
    if graph.dim != 1 or not graph.is_pure():
        raise InputError("classifier input must be a graph (pure, dimension 1)")
    if a <= 1:
        raise RangeError("need a > 1")
    adj = {v: set() for v in graph.vertices}
    for e in graph.facets:
        x, y = sorted(e)
        adj[x].add(y)
        adj[y].add(x)
    seen = set()
    stack = [graph.vertices[0]]
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        stack.extend(adj[u] - seen)
    if len(seen) != len(graph.vertices):
        raise InputError("classifier input must be connected")
    v, e = len(graph.vertices), len(graph.facets)
    if v > e:
        return ClassifierResult(True, f"tree-like: {v} vertices > {e} edges")
    sub = subdivision.hesd(graph, a - 1)
    bip = subdivision.is_bipartite(sub)
    if bip:
        return ClassifierResult(False, f"subdivision hesd(G,{a - 1}) is bipartite and v <= e")
    return ClassifierResult(True, f"subdivision hesd(G,{a - 1}) contains an odd cycle")


def divergence_bound_check(F: Polynomial, a: int, n: Optional[int] = None) -> bool:
    """Degree bound for cap-bounded divergence-free polynomials.

    Preconditions: F has zero divergence and no exponent reaches a.  The
    verdict deg F <= n(a-1)/2 should always be true; a False return is a
    falsification event for the caller to report loudly.
    """
    if F.is_zero():
        raise HypothesisError("zero polynomial")
    variables = F.variables()
    L = sum_of_variables(variables)
    from .monomials import differentiate

    if not differentiate(L, F).is_zero():
        raise HypothesisError("F must have zero divergence")
    for m in F.terms:
        if any(e >= a for _, e in m.exps):
            raise HypothesisError(f"monomial {m} violates the exponent bound {a}")
    if n is None:
        n = len(variables)
    return 2 * F.degree() <= n * (a - 1)
