import random
from math import comb

import pytest

from powres.corpus import default_corpus, nine_generator_ideal, random_squarefree_ideal, square_ideal, three_path_ideal
from powres.monomial import ExponentPoint, MonomialIdeal, divides, lcm, minimalize, power_product
from powres.power_complex import (
    base_layer,
    build_lri,
    build_lrq,
    enumerate_points,
    equivalence_classes,
    expected_facets,
    first_layer,
    label_lrq,
    second_layer,
    taylor_complex,
    verify_irredundant_vertices,
)
from powres.simplicial import is_leaf, is_quasi_tree, from_facets


def P(*c):
    return ExponentPoint(c)


def E(q, *terms):
    """Point from (coefficient, 1-based index) pairs."""
    out = [0] * q
    for c, i in terms:
        out[i - 1] += c
    return ExponentPoint(out)


def test_enumerate_points_examples():
    assert enumerate_points(3, 2) == [P(3, 0), P(2, 1), P(1, 2), P(0, 3)]
    assert enumerate_points(1, 3) == [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
    assert len(enumerate_points(2, 4)) == 10


def test_point_counts():
    for r in range(1, 9):
        for q in range(1, 9):
            pts = enumerate_points(r, q)
            assert len(pts) == comb(q + r - 1, r) == len(set(pts))
            assert all(p.r == r for p in pts)


def test_lrq_three_two_is_a_path():
    cx = build_lrq(3, 2).complex
    assert set(cx.facets) == {(P(2, 1), P(1, 2)), (P(3, 0), P(2, 1)), (P(1, 2), P(0, 3))}


def test_lrq_six_two_bow_tie():
    cx = build_lrq(6, 2).complex
    assert set(cx.facets) == {
        (P(5, 1), P(4, 2), P(3, 3)),
        (P(3, 3), P(2, 4), P(1, 5)),
        (P(6, 0), P(5, 1)),
        (P(1, 5), P(0, 6)),
    }


def test_lrq_r_one_is_a_simplex():
    for q in range(1, 6):
        cx = build_lrq(1, q).complex
        assert len(cx.facets) == 1 and len(cx.facets[0]) == q


def test_lrq_two_three_is_the_star():
    lrq = build_lrq(2, 3)
    assert lrq.complex.f_vector() == (6, 9, 4)
    assert len(lrq.complex.facets) == 4
    assert lrq.complex.induced_subcomplex(lrq.base).facets == (tuple(sorted(lrq.base)),)


def test_facets_follow_case_split():
    for r in range(1, 7):
        for q in range(1, 5):
            got = {frozenset(F) for F in build_lrq(r, q).complex.facets}
            assert got == set(expected_facets(r, q)), (r, q)
            assert len(got) == len(expected_facets(r, q))


def test_layer_identities_for_large_r():
    for r in range(4, 7):
        for q in range(2, 5):
            B, F, G = base_layer(r, q), first_layer(r, q), second_layer(r, q)
            for i in range(q):
                near = {E(q, (r - 1, i + 1), (1, h + 1)) for h in range(q) if h != i}
                assert F[i] & G[i] == near
                for j in range(q):
                    if i != j:
                        assert F[i] & F[j] == B
                        assert not G[i] & G[j]


def test_explicit_leaf_orders():
    for r in range(1, 7):
        for q in range(1, 5):
            lrq = build_lrq(r, q)
            order = list(lrq.leaf_order)
            assert {frozenset(F) for F in order} == {frozenset(F) for F in lrq.complex.facets}
            for k in range(len(order)):
                assert is_leaf(from_facets(order[: k + 1]), order[k]) is not None
            assert is_quasi_tree(lrq.complex)


def test_square_classes_r2():
    cl = equivalence_classes(square_ideal(), 2)
    nontrivial = cl.nontrivial()
    assert len(nontrivial) == 1
    assert set(nontrivial[0].members) == {E(4, (1, 1), (1, 3)), E(4, (1, 2), (1, 4))}
    assert nontrivial[0].representative == E(4, (1, 1), (1, 3))
    assert equivalence_classes(square_ideal(), 2, "lex").nontrivial()[0].representative == E(4, (1, 1), (1, 3))


def test_square_classes_r3():
    cl = equivalence_classes(square_ideal(), 3)
    groups = {frozenset(c.members) for c in cl.nontrivial()}
    assert len(groups) == 4
    assert frozenset({E(4, (2, 1), (1, 3)), E(4, (1, 1), (1, 2), (1, 4))}) in groups
    assert len(cl.survivors) == 16


def test_square_r3_default_picks_first_listed_vertex_set():
    survivors = set(equivalence_classes(square_ideal(), 3).survivors)
    squarefree = {E(4, (1, 1), (1, 2), (1, 3)), E(4, (1, 1), (1, 2), (1, 4)),
                  E(4, (1, 1), (1, 3), (1, 4)), E(4, (1, 2), (1, 3), (1, 4))}
    assert squarefree <= survivors
    assert build_lri(square_ideal(), 3).f_vector()[:3] == (16, 74, 224)
    assert build_lri(square_ideal(), 3).complex.dim == 11


def test_representative_choice_changes_face_counts():
    assert build_lri(square_ideal(), 3, "lex").f_vector()[:3] == (16, 76, 228)
    custom = build_lri(square_ideal(), 3, lambda members: max(members))
    assert custom.f_vector()[0] == 16
    with pytest.raises(ValueError):
        equivalence_classes(square_ideal(), 3, "nope")


def test_square_lri_r2():
    L = build_lri(square_ideal(), 2)
    assert len(L.vertices) == 9
    assert E(4, (1, 2), (1, 4)) not in L.vertices
    sizes = sorted(len(F) for F in L.complex.facets)
    assert sizes == [3, 3, 4, 4, 5]
    big = [F for F in L.complex.facets if len(F) == 5][0]
    assert set(big) == {E(4, (1, 1), (1, 2)), E(4, (1, 1), (1, 3)), E(4, (1, 1), (1, 4)),
                        E(4, (1, 2), (1, 3)), E(4, (1, 3), (1, 4))}


def test_nine_generator_vertex_dropped():
    survivors = set(equivalence_classes(nine_generator_ideal(), 6).survivors)
    assert E(9, (4, 1), (1, 2), (1, 3)) not in survivors
    assert E(9, *[(1, i) for i in range(4, 10)]) in survivors


def test_small_q_has_no_trimming():
    rng = random.Random(3)
    for _ in range(40):
        q = rng.randint(1, 3)
        I = random_squarefree_ideal(rng, q, rng.randint(max(2, q), 7))
        for r in range(1, 5):
            cl = equivalence_classes(I, r)
            assert not cl.nontrivial()
            assert len(cl.survivors) == comb(q + r - 1, r)
            assert build_lri(I, r).complex == build_lrq(r, q).complex


def test_irredundant_vertices():
    assert verify_irredundant_vertices(square_ideal(), 3)
    assert verify_irredundant_vertices(MonomialIdeal.from_names(["xy"]), 4)


def test_rejects_non_squarefree_or_non_minimal():
    with pytest.raises(ValueError):
        build_lri(MonomialIdeal.from_names([["x"], ["x", "y"]]), 2)
    bad = MonomialIdeal(square_ideal().vars, (square_ideal().vars.monomial({"x": 2}),))
    with pytest.raises(ValueError):
        equivalence_classes(bad, 2)


def test_taylor_complex():
    I = three_path_ideal()
    T = taylor_complex(I.generators)
    assert T.complex.facets == ((0, 1, 2),)
    assert T.labels[1] == I.generators[1]
    gens = [power_product(I, a) for a in enumerate_points(2, 3)]
    T2 = taylor_complex(gens)
    assert T2.complex.dim == 5 and len(T2.vertices) == 6
    assert taylor_complex(I.generators[:1]).complex.facets == ((0,),)
    with pytest.raises(ValueError):
        taylor_complex([])


def test_corpus_lri_properties():
    for e in default_corpus():
        for r in range(1, min(e.max_r, 2) + 1):
            L = build_lri(e.ideal, r)
            lrq = build_lrq(r, e.ideal.q).complex
            assert set(L.vertices) <= set(lrq.vertices)
            assert L.complex == lrq.induced_subcomplex(L.vertices)
            assert is_quasi_tree(L.complex)
            labels = set(L.labels.values())
            assert len(labels) == len(L.vertices)
            assert labels == set(minimalize(power_product(e.ideal, a) for a in enumerate_points(r, e.ideal.q)))
            assert labels == set(e.ideal.power_generators(r))
            assert verify_irredundant_vertices(e.ideal, r)


def test_non_divisibility():
    rng = random.Random(99)
    checked = 0
    while checked < 400:
        q = rng.randint(2, 5)
        r = rng.randint(1, 5)
        pts = enumerate_points(r, q)
        a, b = rng.choice(pts), rng.choice(pts)
        i, j = rng.sample(range(q), 2)
        low = max(0, r - b[j] + 1)
        if low > a[i]:
            continue
        alpha = rng.randint(low, a[i])
        assert a[i] >= alpha and b[j] > r - alpha
        I = random_squarefree_ideal(rng, q, rng.randint(max(3, q), 8))
        checked += 1
        ma, mb = power_product(I, a), power_product(I, b)
        mi, mj = I.generators[i], I.generators[j]
        assert not divides(mb, ma)
        w = mi ** alpha * mj ** (a[i] - alpha) * (ma / mi ** a[i])
        assert divides(w, lcm(ma, mb))
        assert (w.degree <= ma.degree) == (mi.degree >= mj.degree or a[i] == alpha)


def test_lrq_json_has_layers():
    data = build_lrq(3, 2).to_json()
    assert data["points"] == [[3, 0], [2, 1], [1, 2], [0, 3]]
    assert data["base"] == [[2, 1], [1, 2]]
    assert len(data["second_layer"]) == 2


def test_label_lrq_labels_every_point():
    L = label_lrq(square_ideal(), 2)
    assert len(L.vertices) == 10
    assert L.labels[E(4, (1, 1), (1, 3))] == L.labels[E(4, (1, 2), (1, 4))]
