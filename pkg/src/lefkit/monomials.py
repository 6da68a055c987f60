"""Exact sparse polynomials, Stanley-Reisner machinery and artinian
monomial algebras.

Coefficients are exact rationals end to end.  Monomials of equal degree
are ordered lexicographically ascending on their exponent vectors (over
ascending variable ids); every basis and matrix in the library is emitted
in this graded-lex order so outputs are stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from . import linalg, subdivision
from .complexes import SimplicialComplex, faces
from .errors import (
    EquigenerationError,
    HomogeneityError,
    MonomialError,
    ParseError,
    PreconditionError,
    PurityError,
    RangeError,
)


class Monomial:
    """Monomial as a sparse map variable-id -> positive exponent."""

    __slots__ = ("exps", "degree", "_hash")

    def __init__(self, exps):
        if isinstance(exps, dict):
            items = tuple(sorted((v, e) for v, e in exps.items() if e))
        else:
            items = tuple(sorted(exps))
        for v, e in items:
            if e <= 0:
                raise ValueError("exponents must be positive")
        self.exps = items
        self.degree = sum(e for _, e in items)
        self._hash = hash(items)

    @classmethod
    def one(cls) -> "Monomial":
        return cls(())

    @classmethod
    def variable(cls, v: int, power: int = 1) -> "Monomial":
        return cls(((v, power),)) if power else cls(())

    def exponent(self, v: int) -> int:
        for w, e in self.exps:
            if w == v:
                return e
        return 0

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self.exps)

    def times(self, other: "Monomial") -> "Monomial":
        d = dict(self.exps)
        for v, e in other.exps:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def times_var(self, v: int) -> "Monomial":
        d = dict(self.exps)
        d[v] = d.get(v, 0) + 1
        return Monomial(d)

    def divides(self, other: "Monomial") -> bool:
        o = dict(other.exps)
        return all(o.get(v, 0) >= e for v, e in self.exps)

    def divide(self, other: "Monomial") -> "Monomial":
        """self / other; other must divide self."""
        d = dict(self.exps)
        for v, e in other.exps:
            if d.get(v, 0) < e:
                raise ValueError("not divisible")
            d[v] -= e
        return Monomial(d)

    def lex_key(self, var_order) -> tuple:
        d = dict(self.exps)
        return tuple(d.get(v, 0) for v in var_order)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({self})"

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(f"x{v}^{e}" if e > 1 else f"x{v}" for v, e in self.exps)


_ONE = Monomial(())


def _graded_key(mono: Monomial, var_order):
    return (mono.degree, mono.lex_key(var_order))


class Polynomial:
    """Sparse polynomial: map Monomial -> nonzero rational coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        cleaned = {}
        for m, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                cleaned[m] = c
        self.terms = cleaned
        self._hash = None

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({_ONE: Fraction(c)})

    @classmethod
    def variable(cls, v: int, power: int = 1) -> "Polynomial":
        return cls({Monomial.variable(v, power): Fraction(1)})

    @classmethod
    def from_monomial(cls, m: Monomial, c=1) -> "Polynomial":
        return cls({m: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def variables(self) -> tuple:
        out = set()
        for m in self.terms:
            out.update(m.support)
        return tuple(sorted(out))

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) - c
        return Polynomial(out)

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.times(m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        """Terms in graded-lex order: degree descending, then lex descending
        on exponent vectors, so sums of variables read x1 + x2 + ..."""
        var_order = self.variables()
        return sorted(
            self.terms.items(), key=lambda mc: _graded_key(mc[0], var_order), reverse=True
        )

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            if m == _ONE:
                body = str(abs(c))
            else:
                mag = abs(c)
                body = str(m) if mag == 1 else f"{mag} {m}"
            pieces.append(("- " if c < 0 else "+ ") + body)
        head = pieces[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + pieces[1:])

    def __repr__(self):
        return f"Polynomial({self})"


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<rat>\d+/\d+|\d+)|(?P<var>x\d+)(?:\^(?P<pow>\d+))?|(?P<mul>\*))")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the polynomial grammar: terms joined by + or -, each an
    optional rational coefficient followed by factors like ``x3^2``,
    with '*' optional between factors."""
    pos = 0
    terms = {}
    sign = 1
    coeff = None
    exps: dict = {}
    started = False

    def flush():
        nonlocal sign, coeff, exps, started
        if not started:
            raise ParseError(f"empty term in {text!r}")
        c = Fraction(sign) * (coeff if coeff is not None else 1)
        m = Monomial(exps)
        if c:
            terms[m] = terms.get(m, Fraction(0)) + c
        sign, coeff, exps, started = 1, None, {}, False

    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"bad token at position {pos} in {text!r}")
        pos = mt.end()
        if mt.group("sign"):
            if started:
                flush()
            sign *= -1 if mt.group("sign") == "-" else 1
        elif mt.group("rat"):
            try:
                c = Fraction(mt.group("rat"))
            except ZeroDivisionError as exc:
                raise ParseError(f"zero denominator in {text!r}") from exc
            coeff = c if coeff is None else coeff * c
            started = True
        elif mt.group("var"):
            v = int(mt.group("var")[1:])
            p = int(mt.group("pow") or 1)
            if p:
                exps[v] = exps.get(v, 0) + p
            started = True
    flush()
    return Polynomial(terms)


def format_polynomial(poly: Polynomial) -> str:
    return str(poly)


def contract(g: Polynomial, F: Polynomial) -> Polynomial:
    """Contraction action of g on F, extended bilinearly.

    On monomials, x^a acts on y^b by dropping to y^(b-a) when a <= b
    entrywise and by zero otherwise.
    """
    out = {}
    for ma, ca in g.terms.items():
        for mb, cb in F.terms.items():
            if ma.divides(mb):
                m = mb.divide(ma)
                out[m] = out.get(m, Fraction(0)) + ca * cb
    return Polynomial(out)


def differentiate(g: Polynomial, F: Polynomial) -> Polynomial:
    """Partial-derivative action of g on F (characteristic zero)."""
    out = {}
    for ma, ca in g.terms.items():
        for mb, cb in F.terms.items():
            if ma.divides(mb):
                scale = 1
                for v, e in ma.exps:
                    b = mb.exponent(v)
                    for t in range(e):
                        scale *= b - t
                m = mb.divide(ma)
                out[m] = out.get(m, Fraction(0)) + ca * cb * scale
    return Polynomial(out)


def sum_of_variables(var_ids) -> Polynomial:
    return Polynomial({Monomial.variable(v): Fraction(1) for v in var_ids})


def divided_power_rescale(F: Polynomial) -> Polynomial:
    """Divide each coefficient by the product of factorials of exponents.

    Converts contraction annihilation into differentiation annihilation:
    the rescaled polynomial has zero divergence exactly when the sum of
    variables contracts the original to zero.
    """
    out = {}
    for m, c in F.terms.items():
        den = 1
        for _, e in m.exps:
            for t in range(2, e + 1):
                den *= t
        out[m] = c / den
    return Polynomial(out)


@dataclass(frozen=True)
class IdealPresentation:
    """Homogeneous generators over an explicit variable set."""

    generators: tuple
    variables: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero():
                raise PreconditionError("zero generator")
            if not g.is_homogeneous():
                raise HomogeneityError(f"non-homogeneous generator {g}")

    @classmethod
    def make(cls, gens, variables=None) -> "IdealPresentation":
        gens = tuple(gens)
        if variables is None:
            vs = set()
            for g in gens:
                vs.update(g.variables())
            variables = tuple(sorted(vs))
        return cls(gens, tuple(variables))

    @property
    def ambient_vars(self) -> int:
        return len(self.variables)

    def degrees(self) -> tuple:
        return tuple(g.degree() for g in self.generators)


def stanley_reisner_generators(cx: SimplicialComplex) -> IdealPresentation:
    """Squarefree monomials of the minimal non-faces."""
    all_faces = set(cx.all_faces())
    minimal = []
    n = len(cx.vertices)
    for size in range(1, n + 1):
        for combo in combinations(cx.vertices, size):
            s = frozenset(combo)
            if s in all_faces:
                continue
            if any(frozenset(sub) not in all_faces for sub in combinations(combo, size - 1)):
                continue  # some proper subset is already a non-face
            minimal.append(s)
    gens = [
        Polynomial.from_monomial(Monomial({v: 1 for v in s}))
        for s in sorted(minimal, key=sorted)
    ]
    return IdealPresentation.make(gens, variables=cx.vertices)


def facet_ideal(cx: SimplicialComplex) -> IdealPresentation:
    """One squarefree monomial per facet."""
    gens = [Polynomial.from_monomial(Monomial({v: 1 for v in f})) for f in cx.facets]
    return IdealPresentation.make(gens, variables=cx.vertices)


class ArtinianFrame:
    """A complex together with exponent caps, presenting the artinian
    quotient whose standard monomials are the cap-bounded face-supported
    monomials."""

    __slots__ = ("complex", "caps", "_hash")

    def __init__(self, complex: SimplicialComplex, caps):
        self.complex = complex
        if isinstance(caps, int):
            caps = {v: caps for v in complex.vertices}
        elif not isinstance(caps, dict):
            caps = dict(zip(complex.vertices, caps))
        if set(caps) != set(complex.vertices):
            raise RangeError("caps must cover exactly the vertex set")
        for v, a in caps.items():
            if a < 2:
                raise RangeError(f"cap {a} at vertex {v}: caps below 2 kill the variable")
        self.caps = tuple(sorted(caps.items()))
        self._hash = hash((complex, self.caps))

    def cap(self, v: int) -> int:
        return dict(self.caps)[v]

    @property
    def cap_map(self) -> dict:
        return dict(self.caps)

    def socle_degree(self) -> int:
        return max(sum(self.cap(v) - 1 for v in f) for f in self.complex.facets)

    def linear_form(self) -> Polynomial:
        return sum_of_variables(self.complex.vertices)

    def power_generators(self):
        return [Polynomial.variable(v, a) for v, a in self.caps]

    def __eq__(self, other):
        return (
            isinstance(other, ArtinianFrame)
            and self.complex == other.complex
            and self.caps == other.caps
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        caps = {v: a for v, a in self.caps}
        return f"ArtinianFrame({self.complex!r}, caps={caps})"


def _compositions(total, bounds):
    """Tuples of positive parts within per-slot upper bounds, lex order."""
    if not bounds:
        if total == 0:
            yield ()
        return
    first = bounds[0]
    rest = bounds[1:]
    lo = max(1, total - sum(rest))
    hi = min(first, total - len(rest))
    for head in range(lo, hi + 1):
        for tail in _compositions(total - head, rest):
            yield (head,) + tail


def face_monomials(cx: SimplicialComplex, k: int, caps: Optional[dict] = None):
    """Monomials of degree k supported on faces, exponents below caps.

    With caps None the exponent bound is k itself (no cap).  Output is in
    graded-lex ascending order over the complex's vertex order.
    """
    if k == 0:
        return [_ONE]
    out = []
    for face in cx.all_faces():
        size = len(face)
        if size == 0 or size > k:
            continue
        vs = sorted(face)
        bounds = [min(k, (caps[v] - 1) if caps else k) for v in vs]
        if sum(bounds) < k:
            continue
        for combo in _compositions(k, bounds):
            out.append(Monomial(tuple(zip(vs, combo))))
    out.sort(key=lambda m: m.lex_key(cx.vertices))
    return out


@lru_cache(maxsize=None)
def _standard_basis_cached(frame: ArtinianFrame, k: int) -> tuple:
    return tuple(face_monomials(frame.complex, k, frame.cap_map))


def standard_basis(frame: ArtinianFrame, k: int):
    """Ordered monomial basis of the degree-k piece of the frame algebra."""
    if k < 0:
        raise RangeError("degree must be non-negative")
    return list(_standard_basis_cached(frame, k))


def hilbert_function(frame: ArtinianFrame, k: int) -> int:
    return len(_standard_basis_cached(frame, k)) if k >= 0 else 0


def is_standard(frame: ArtinianFrame, m: Monomial) -> bool:
    caps = frame.cap_map
    if any(e >= caps[v] for v, e in m.exps):
        return False
    return frame.complex.has_face(m.support)


def reduce_to_frame(frame: ArtinianFrame, poly: Polynomial) -> Polynomial:
    """Image in the frame algebra: drop non-face and over-cap monomials."""
    return Polynomial({m: c for m, c in poly.terms.items() if is_standard(frame, m)})


def multiplication_matrix(frame: ArtinianFrame, f: Polynomial, k: int) -> linalg.ExactMatrix:
    """Matrix of multiplication by f from degree k to degree k + deg f.

    Rows are the higher-degree standard monomials, columns the degree-k
    ones, both in graded-lex order.  The transpose represents the
    contraction action of f on the dual in the same bases.
    """
    if not f.is_homogeneous():
        raise HomogeneityError("multiplication needs a homogeneous form")
    d = f.degree()
    if d < 0:
        raise HomogeneityError("zero form")
    foreign = set(f.variables()) - set(frame.complex.vertices)
    if foreign:
        raise PreconditionError(f"form mentions unknown variables: {sorted(foreign)}")
    cols = _standard_basis_cached(frame, k)
    rows = _standard_basis_cached(frame, k + d)
    row_index = {m: i for i, m in enumerate(rows)}
    entries = {}
    for j, m in enumerate(cols):
        for mf, cf in f.terms.items():
            prod = m.times(mf)
            i = row_index.get(prod)
            if i is not None:
                key = (i, j)
                entries[key] = entries.get(key, Fraction(0)) + cf
    return linalg.ExactMatrix(len(rows), len(cols), entries)


@dataclass(frozen=True)
class LogMatrix:
    """Exponent matrix of a monomial ideal; rows follow the generators."""

    matrix: linalg.ExactMatrix
    row_labels: tuple
    variables: tuple


def log_matrix(ideal: IdealPresentation) -> LogMatrix:
    """Exponent matrix: entry (i, j) is the exponent of variable j in
    generator i; row sums equal generator degrees."""
    monos = []
    for g in ideal.generators:
        if not g.is_monomial():
            raise MonomialError(f"non-monomial generator {g}")
        monos.append(next(iter(g.terms)))
    col = {v: j for j, v in enumerate(ideal.variables)}
    entries = {}
    for i, m in enumerate(monos):
        for v, e in m.exps:
            entries[(i, col[v])] = Fraction(e)
    mat = linalg.ExactMatrix(len(monos), len(ideal.variables), entries)
    return LogMatrix(mat, tuple(monos), ideal.variables)


def analytic_spread(ideal: IdealPresentation) -> int:
    """Rank of the log matrix; valid for equigenerated monomial ideals."""
    if not ideal.generators:
        raise PreconditionError("empty ideal has no analytic spread here")
    degs = set(ideal.degrees())
    if len(degs) != 1:
        raise EquigenerationError(f"generators of mixed degrees {sorted(degs)}")
    return linalg.rank(log_matrix(ideal).matrix)


@dataclass(frozen=True)
class HesdLogComparison:
    equal: bool
    multiplication: linalg.ExactMatrix
    hesd_log: LogMatrix
    column_map: tuple
    row_map: tuple


def multiplication_equals_hesd_log(cx: SimplicialComplex, a: int) -> HesdLogComparison:
    """Compare the degree-d(a-1) multiplication matrix with the log matrix
    of the facet ideal of the (a-1)-fold half-hollow subdivision of the
    top incidence complex, under the canonical monomial/lattice-point
    bijection."""
    if not cx.is_pure():
        raise PurityError("the comparison needs a pure complex")
    if a <= 1:
        raise RangeError("need a > 1")
    d = cx.dim
    frame = ArtinianFrame(cx, a)
    t = d * (a - 1)
    L = frame.linear_form()
    mult = multiplication_matrix(frame, L, t)

    inc = subdivision.incidence_complex(cx, d)
    sub = subdivision.hesd(inc, a - 1)
    hlog = log_matrix(facet_ideal(sub))

    ridges = faces(cx, d - 1)
    ridge_pos = {r: p for p, r in enumerate(ridges)}
    label_to_vid = {lab.coords: v for v, lab in sub.labels.items()}
    vid_col = {v: j for j, v in enumerate(hlog.variables)}

    def to_point(m: Monomial):
        """Lattice point(s) of a degree-t standard monomial, one per
        facet presentation; well-definedness demands a single point."""
        points = set()
        for F in cx.facets:
            if not m.support <= F:
                continue
            coords = [0] * len(ridges)
            for i in sorted(F):
                coords[ridge_pos[F - {i}]] += (a - 1) - m.exponent(i)
            points.add(tuple(coords))
        return points

    cols = standard_basis(frame, t)
    rows = standard_basis(frame, t + 1)
    col_map = []
    ok = True
    seen_vids = set()
    for m in cols:
        pts = to_point(m)
        if len(pts) != 1:
            ok = False
            break
        vid = label_to_vid.get(next(iter(pts)))
        if vid is None or vid in seen_vids:
            ok = False
            break
        seen_vids.add(vid)
        col_map.append(vid)
    row_map = []
    if ok and len(seen_vids) == len(sub.vertices):
        hesd_facets = set(sub.facets)
        seen_facets = set()
        mult_rows = mult.row_dicts()
        for i, m in enumerate(rows):
            support = mult_rows[i]
            if any(v != 1 for v in support.values()):
                ok = False
                break
            facet = frozenset(col_map[j] for j in support)
            if facet not in hesd_facets or facet in seen_facets:
                ok = False
                break
            seen_facets.add(facet)
            row_map.append(facet)
        if ok and len(seen_facets) != len(sub.facets):
            ok = False
    else:
        ok = False
    return HesdLogComparison(ok, mult, hlog, tuple(col_map), tuple(row_map))
