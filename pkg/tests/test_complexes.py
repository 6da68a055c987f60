"""Complex construction, face machinery and topological predicates."""

import random
from itertools import combinations

import pytest
import sympy

from lefkit.complexes import (
    balanced_coloring,
    boundary_matrix,
    collapse_search,
    faces,
    fh_profile,
    from_facets,
    homology,
    is_cohen_macaulay,
    is_homology_sphere,
    link,
    pseudomanifold_status,
    replay_collapse,
)
from lefkit.errors import DimensionError, InvalidComplex, NotAFace, PurityError
from lefkit import fixtures

ALL_FIXTURES = fixtures.FIXTURE_NAMES


def brute_force_faces(cx, k):
    """Independent oracle: k-faces as subsets of facets, deduplicated."""
    out = set()
    for f in cx.facets:
        out.update(frozenset(c) for c in combinations(sorted(f), k + 1))
    return out


class TestFromFacets:
    def test_triangle_cycle(self):
        cx = from_facets([{1, 2}, {2, 3}, {1, 3}])
        assert cx.dim == 1 and len(cx.facets) == 3

    def test_subset_facet_dropped(self):
        cx = from_facets([{1, 2, 3}, {1, 2}])
        assert cx.facets == (frozenset({1, 2, 3}),)

    def test_oct_fixture(self, cx):
        oct_ = cx("OCT")
        assert oct_.dim == 2 and len(oct_.facets) == 8

    def test_empty_rejected(self):
        with pytest.raises(InvalidComplex):
            from_facets([])
        with pytest.raises(InvalidComplex):
            from_facets([set()])

    def test_bad_vertex_ids(self):
        with pytest.raises(InvalidComplex):
            from_facets([{-1, 2}])
        with pytest.raises(InvalidComplex):
            from_facets([{"a", "b"}])

    def test_facets_sorted_and_deduped(self):
        cx = from_facets([{2, 3}, {1, 2}, {2, 3}])
        assert cx.facets == (frozenset({1, 2}), frozenset({2, 3}))


class TestFaces:
    def test_oct_edges(self, cx):
        oct_ = cx("OCT")
        got = faces(oct_, 1)
        assert len(got) == 12
        assert set(got) == brute_force_faces(oct_, 1)

    def test_oct_vertices(self, cx):
        assert len(faces(cx("OCT"), 0)) == 6

    def test_c3_edges(self, cx):
        assert set(faces(cx("C3"), 1)) == {
            frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 3})
        }

    def test_empty_face(self, cx):
        assert faces(cx("C3"), -1) == [frozenset()]

    def test_out_of_range(self, cx):
        with pytest.raises(DimensionError):
            faces(cx("C3"), 2)
        with pytest.raises(DimensionError):
            faces(cx("C3"), -2)


class TestFHProfile:
    def test_oct(self, cx):
        p = fh_profile(cx("OCT"))
        assert p.f == (1, 6, 12, 8)
        assert p.h == (1, 3, 3, 1)
        assert p.h_degree == 3

    def test_single_vertex(self):
        p = fh_profile(from_facets([{1}]))
        assert p.f == (1, 1) and p.h == (1, 0)

    def test_c4(self, cx):
        p = fh_profile(cx("C4"))
        assert p.f == (1, 4, 4) and p.h == (1, 2, 1) and p.h_degree == 2

    @pytest.mark.parametrize("name", ALL_FIXTURES)
    def test_defining_relation_sympy_oracle(self, cx, name):
        complex_ = cx(name)
        p = fh_profile(complex_)
        x = sympy.Symbol("x")
        d = complex_.dim
        lhs = sum(p.f[i] * (x - 1) ** (d + 1 - i) for i in range(d + 2))
        rhs = sum(p.h[i] * x ** (d + 1 - i) for i in range(d + 2))
        assert sympy.expand(lhs - rhs) == 0

    @pytest.mark.parametrize("name", ALL_FIXTURES)
    def test_sum_h_and_h0(self, cx, name):
        p = fh_profile(cx(name))
        assert sum(p.h) == p.f[-1]
        assert p.h[0] == 1


class TestLink:
    def test_oct_vertex_link_is_square(self, cx):
        lk = link(cx("OCT"), {1})
        assert lk.vertices == (3, 4, 5, 6)
        assert set(lk.facets) == {
            frozenset({3, 5}), frozenset({3, 6}), frozenset({4, 5}), frozenset({4, 6})
        }

    def test_link_of_empty_is_identity(self, cx):
        oct_ = cx("OCT")
        assert link(oct_, set()) == oct_

    def test_c3_vertex(self, cx):
        lk = link(cx("C3"), {1})
        assert set(lk.facets) == {frozenset({2}), frozenset({3})}

    def test_link_of_facet(self, cx):
        lk = link(cx("OCT"), {1, 3, 5})
        assert lk.dim == -1

    def test_not_a_face(self, cx):
        with pytest.raises(NotAFace):
            link(cx("OCT"), {1, 2})

    def test_dimension_bound(self, cx):
        oct_ = cx("OCT")
        for sigma in oct_.all_faces():
            assert link(oct_, sigma).dim <= oct_.dim - len(sigma)


class TestHomology:
    def test_oct_is_2_sphere(self, cx):
        rep = homology(cx("OCT"))
        assert rep.ranks == (0, 0, 0, 1)
        assert rep.top_cycle is not None
        image = boundary_matrix(cx("OCT"), 2).apply(rep.top_cycle)
        assert all(v == 0 for v in image)

    def test_c4_is_circle(self, cx):
        assert homology(cx("C4")).ranks == (0, 0, 1)

    def test_dunce_contractible(self, cx):
        assert homology(cx("DUNCE")).ranks == (0, 0, 0, 0)

    def test_two_points(self):
        rep = homology(from_facets([{1}, {2}]))
        assert rep.ranks == (0, 1)

    @pytest.mark.parametrize("name", ["OCT", "FAN4", "DUNCE", "C4"])
    def test_relabel_invariance(self, cx, name):
        base = cx(name)
        rng = random.Random(hash(name) & 0xFFFF)
        verts = list(base.vertices)
        for _ in range(3):
            images = list(range(1, len(verts) + 1))
            rng.shuffle(images)
            perm = dict(zip(verts, images))
            relabeled = from_facets([{perm[v] for v in f} for f in base.facets])
            assert homology(relabeled).ranks == homology(base).ranks


class TestCohenMacaulay:
    def test_oct(self, cx):
        assert is_cohen_macaulay(cx("OCT")).holds

    def test_disconnected_graph(self):
        rep = is_cohen_macaulay(from_facets([{1, 2}, {3, 4}]))
        assert not rep.holds
        assert rep.witness_face == frozenset()
        assert rep.witness_index == 0

    def test_dunce(self, cx):
        assert is_cohen_macaulay(cx("DUNCE")).holds

    @pytest.mark.parametrize("name", ["CROSS4", "FAN4", "BALL10", "C3", "C4", "EDGE", "PATH3"])
    def test_fixtures_all_cm(self, cx, name):
        assert is_cohen_macaulay(cx(name)).holds


class TestPseudomanifold:
    def test_oct(self, cx):
        st = pseudomanifold_status(cx("OCT"))
        assert st.pure and st.strongly_connected
        assert st.max_ridge_degree == 2
        assert st.boundary is None
        assert st.orientable

    def test_fan4_has_boundary(self, cx):
        st = pseudomanifold_status(cx("FAN4"))
        assert st.pure and st.strongly_connected
        assert st.boundary is not None
        assert len(st.boundary.facets) == 6  # the rim of the fan
        assert not st.orientable

    def test_disjoint_triangles(self):
        st = pseudomanifold_status(from_facets([{1, 2, 3}, {4, 5, 6}]))
        assert not st.strongly_connected

    def test_dunce_overfull_ridges(self, cx):
        assert pseudomanifold_status(cx("DUNCE")).max_ridge_degree == 3


class TestHomologySphere:
    def test_oct(self, cx):
        assert is_homology_sphere(cx("OCT"))

    def test_cross4(self, cx):
        assert is_homology_sphere(cx("CROSS4"))

    def test_fan4_is_not(self, cx):
        assert not is_homology_sphere(cx("FAN4"))

    @pytest.mark.parametrize("name", fixtures.DECLARED_SPHERES)
    def test_declared_spheres(self, cx, name):
        complex_ = cx(name)
        assert complex_.meta.get("is_simplicial_sphere")
        assert is_homology_sphere(complex_)
        assert pseudomanifold_status(complex_).orientable


class TestBalancedColoring:
    def test_oct_color_classes(self, cx):
        rho = balanced_coloring(cx("OCT"))
        classes = {frozenset(rho.color_class(c)) for c in (1, 2, 3)}
        assert classes == {frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6})}

    def test_c3_needs_three(self, cx):
        assert balanced_coloring(cx("C3")) is None

    def test_c4_alternating(self, cx):
        rho = balanced_coloring(cx("C4"))
        assert rho.assignment[1] == rho.assignment[3]
        assert rho.assignment[2] == rho.assignment[4]
        assert rho.assignment[1] != rho.assignment[2]

    def test_purity_required(self):
        with pytest.raises(PurityError):
            balanced_coloring(from_facets([{1, 2, 3}, {4, 5}]))


class TestCollapse:
    def test_full_simplex_to_point(self):
        simplex = from_facets([{1, 2, 3}])
        cert = collapse_search(simplex, 0)
        assert cert is not None
        assert cert.residual.dim == 0
        assert len(cert.residual.facets) == 1
        assert replay_collapse(simplex, cert)

    def test_fan4_to_dim_1(self, cx):
        fan = cx("FAN4")
        cert = collapse_search(fan, 1)
        assert cert is not None and cert.residual.dim <= 1
        assert replay_collapse(fan, cert)

    def test_dunce_has_no_free_face(self, cx):
        assert collapse_search(cx("DUNCE"), 0) is None

    def test_budget_exhaustion(self):
        simplex = from_facets([{1, 2, 3}])
        assert collapse_search(simplex, 0, budget=0) is None

    def test_replay_rejects_tampering(self):
        simplex = from_facets([{1, 2, 3}])
        cert = collapse_search(simplex, 0)
        from lefkit.complexes import CollapseCertificate

        bad = CollapseCertificate(cert.steps[::-1], cert.residual)
        with pytest.raises(ValueError):
            replay_collapse(simplex, bad)

    def test_ball10_collapsible(self, cx):
        ball = cx("BALL10")
        assert ball.meta.get("declared_collapsible")
        cert = collapse_search(ball, 0)
        assert cert is not None
        assert cert.residual.dim == 0 and len(cert.residual.facets) == 1
        assert replay_collapse(ball, cert)
