import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_faces, closure, complexes, facet_complexes, minimal
from matchtree.errors import InvalidFace, InvalidParameter, TooLarge
from matchtree.simplicial import SimplicialComplex, face, facets, load_complex, members, minimalize
from matchtree.worked import fixture_doc, load_fixture


def L(doc, *labels):
    """Face from display labels of a fixture."""
    return face(doc["labels"].index(x) for x in labels)


TRIANGLE = SimplicialComplex.boundary_of_simplex(3)


class TestConstruction:
    def test_examples(self):
        assert TRIANGLE.min_nonfaces == (0b111,)
        C = SimplicialComplex.from_min_nonfaces(4, [[0, 1], [0, 1, 2]])
        assert C.min_nonfaces == (0b11,)
        C = SimplicialComplex.from_min_nonfaces(2, [[0]])
        assert C.ghosts == 1 and C.vertices == (1,) and C.faces() == [0, 2]

    def test_out_of_range(self):
        with pytest.raises(InvalidParameter):
            SimplicialComplex.from_min_nonfaces(2, [[0, 2]])
        with pytest.raises(InvalidParameter):
            SimplicialComplex(65)

    def test_from_facets(self):
        assert SimplicialComplex.from_facets(3, [0b111]).min_nonfaces == ()
        C = SimplicialComplex.from_facets(3, [[0], [1], [2]])
        assert set(C.min_nonfaces) == {0b011, 0b101, 0b110}
        with pytest.raises(TooLarge):
            SimplicialComplex.from_facets(25, [[0]])

    def test_fig3_fixture(self):
        doc = fixture_doc("fig3")
        C = load_fixture("fig3")
        nf = {tuple(doc["labels"][v] for v in members(m)) for m in C.min_nonfaces}
        assert nf == {("1", "4"), ("1", "5"), ("3", "4"), ("3", "5"), ("1", "2", "3"), ("2", "4", "5")}
        dm = {"".join(doc["labels"][v] for v in members(h)) for h in C.d_min(L(doc, "1"))}
        assert dm == {"23", "4", "5"}

    @settings(max_examples=100, deadline=None)
    @given(facet_complexes())
    def test_is_face_matches_closure(self, nf):
        n, fs = nf
        C = SimplicialComplex.from_facets(n, fs)
        faces = closure(n, fs)
        assert all(C.is_face(s) == (s in faces) for s in range(1 << n))
        assert set(C.faces()) == faces
        assert {f for f in facets(C)} == {f for f in faces if not any(g != f and g & f == f for g in faces)}

    @given(st.lists(st.integers(0, 255)))
    def test_minimalize_idempotent(self, xs):
        m = minimalize(xs)
        assert minimalize(m) == m
        assert set(m) == minimal(xs)

    def test_load_errors(self, tmp_path):
        with pytest.raises(InvalidParameter):
            load_complex({"n": 2})
        with pytest.raises(InvalidParameter):
            load_complex({"n": 2, "facets": [[0]], "min_nonfaces": []})
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"n": 3, "min_nonfaces": [[0, 1, 2]]}))
        assert load_complex(str(p))[0] == TRIANGLE


class TestQueries:
    def test_is_face_examples(self):
        assert TRIANGLE.is_face([0, 1])
        assert not TRIANGLE.is_face([0, 1, 2])
        assert TRIANGLE.is_face(0)

    def test_fig1_pair(self):
        doc = fixture_doc("fig1_delta")
        # the obstruction sets stated for this example force {3,4} to be an edge
        assert load_fixture("fig1_delta").is_face(L(doc, "3", "4"))

    def test_f_vector_and_euler(self):
        assert TRIANGLE.f_vector() == [1, 3, 3]
        assert len(SimplicialComplex.full_simplex(3).faces()) == 8
        assert TRIANGLE.euler_characteristic() == 0
        assert TRIANGLE.euler_characteristic(reduced=True) == -1
        assert SimplicialComplex(2, [0]).faces() == []

    def test_fig3_face_count(self):
        C = load_fixture("fig3")
        assert len(C.faces()) == len(brute_faces(C)) == 1 + 5 + 6

    def test_cone(self):
        assert SimplicialComplex.full_simplex(3).is_cone() is not None
        assert TRIANGLE.is_cone() is None

    def test_face_budget(self):
        with pytest.raises(TooLarge):
            SimplicialComplex.full_simplex(12).faces(limit=100)

    @settings(max_examples=100, deadline=None)
    @given(complexes())
    def test_enumeration_matches_brute_force(self, C):
        fs = C.faces()
        assert len(fs) == len(set(fs))
        assert set(fs) == brute_faces(C)
        assert [s.bit_count() for s in fs] == sorted(s.bit_count() for s in fs)


class TestDerived:
    def test_link_examples(self):
        full = SimplicialComplex.full_simplex(3)
        assert full.link([0]) == SimplicialComplex(3, [0b001])
        lk = TRIANGLE.link([0])
        assert lk.vertices == (1, 2) and not lk.is_face([1, 2])
        with pytest.raises(InvalidFace):
            TRIANGLE.link([0, 1, 2])

    def test_fig1_deletion(self):
        doc = fixture_doc("fig1_delta")
        assert load_fixture("fig1_delta").deletion(L(doc, "2")) == load_fixture("fig1_folded")

    @settings(max_examples=100, deadline=None)
    @given(complexes(), st.integers(0, 255))
    def test_link_deletion_induced_brute_force(self, C, s):
        s &= (1 << C.n) - 1
        faces = brute_faces(C)
        assert set(C.deletion(s).faces()) == {t for t in faces if not t & s}
        assert set(C.induced(s).faces()) == {t for t in faces if t & ~s == 0}
        if s in faces:
            assert set(C.link(s).faces()) == {t for t in faces if not t & s and (t | s) in faces}


class TestObstructions:
    def test_fig1_values(self):
        doc = fixture_doc("fig1_delta")
        C = load_fixture("fig1_delta")
        assert C.d_min(L(doc, "1")) == (L(doc, "3", "4"),)
        assert C.d_min(L(doc, "2")) == (L(doc, "4"),)
        assert C.d_subset(0, 1)
        assert not C.d_subset(1, 0)
        assert SimplicialComplex.full_simplex(4).d_min([1, 2]) == ()

    def test_fig1_full_d2(self):
        doc = fixture_doc("fig1_delta")
        C = load_fixture("fig1_delta")
        a = L(doc, "2")
        full = {h for h in C.faces() if not C.is_face(h | a)}
        assert full == {L(doc, "4"), L(doc, "1", "4"), L(doc, "3", "4")}

    @settings(max_examples=150, deadline=None)
    @given(complexes(), st.integers(0, 255))
    def test_d_min_brute_force(self, C, a):
        a &= (1 << C.n) - 1
        faces = brute_faces(C)
        D = {h for h in faces if (h | a) not in faces}
        assert set(C.d_min(a)) == minimal(D)

    @settings(max_examples=150, deadline=None)
    @given(complexes(max_n=7), st.data())
    def test_d_subset_brute_force(self, C, data):
        if C.n == 0:
            return
        u = data.draw(st.integers(0, C.n - 1))
        v = data.draw(st.integers(0, C.n - 1))
        faces = brute_faces(C)
        Du = {h for h in faces if (h | 1 << u) not in faces}
        Dv = {h for h in faces if (h | 1 << v) not in faces}
        assert C.d_subset(u, v) == (Du <= Dv)
        assert C.d_subset(u, u)
        # D[w] adds the singleton {w} to D(w)
        if C.is_face(1 << u) and C.is_face(1 << v):
            assert C.d_closed_subset(u, v) == (Du | {1 << u} <= Dv | {1 << v})
