import random
from itertools import combinations

import pytest

from powres.corpus import square_ideal, three_path_ideal
from powres.extremal import build_extremal
from powres.monomial import MonomialIdeal, VariableSet, lcm, power_product
from powres.power_complex import build_lri, build_lrq, enumerate_points, label_lrq, taylor_complex
from powres.resolution import (
    BettiTable,
    Entry,
    LabeledComplex,
    homogenize,
    is_minimal_support,
    is_minimal_support_bruteforce,
    lcm_lattice,
    minimize_resolution,
    multigraded_betti,
    restrict_to_divisors,
    supports_resolution_bps,
    supports_resolution_quasitree,
)
from powres.simplicial import from_facets, is_connected

V = VariableSet("xyzu")


def m(text):
    return V.monomial(text)


def labeled(facets, labels):
    return LabeledComplex(from_facets(facets), {v: m(s) for v, s in labels.items()}, V)


def test_labels_required():
    with pytest.raises(ValueError):
        LabeledComplex(from_facets([{1, 2}]), {1: m("x")}, V)


def test_face_labels():
    L = labeled([{1, 2, 3}], {1: "xy", 2: "yz", 3: "zu"})
    assert L.label((1, 2)) == m("xyz")
    assert L.label(()) == V.one()


def test_lcm_lattice_examples():
    assert set(lcm_lattice([m("x"), m("y")])) == {m("x"), m("y"), m("xy")}
    assert set(lcm_lattice([m("xy"), m("yz"), m("zu")])) == {m("xy"), m("yz"), m("zu"), m("xyz"), m("yzu"), m("xyzu")}
    assert list(lcm_lattice([m("xz")])) == [m("xz")]


def test_lcm_lattice_is_all_subset_lcms():
    rng = random.Random(4)
    for _ in range(50):
        gens = [V.monomial({v: rng.randint(0, 2) for v in "xyzu"}) for _ in range(rng.randint(1, 5))]
        gens = [g for g in gens if not g.is_one()] or [m("x")]
        subset_lcms = set()
        for k in range(1, len(gens) + 1):
            for S in combinations(gens, k):
                acc = S[0]
                for g in S[1:]:
                    acc = lcm(acc, g)
                subset_lcms.add(acc)
        assert set(lcm_lattice(gens)) == subset_lcms


def test_restrict_to_divisors():
    T = taylor_complex([m("x"), m("y"), m("z")])
    assert restrict_to_divisors(T, m("xy")).facets == ((0, 1),)
    assert restrict_to_divisors(T, V.one()).is_empty()


def test_restriction_of_squares_is_connected():
    I = three_path_ideal()
    L = label_lrq(I, 2)
    m1, m2 = I.generators[:2]
    sub = restrict_to_divisors(L, lcm(m1 ** 2, m2 ** 2))
    got = {L.labels[v] for v in sub.vertices}
    assert {m1 ** 2, m2 ** 2, m1 * m2} <= got
    assert is_connected(sub)


def test_bps_examples():
    for I in (three_path_ideal(), square_ideal()):
        for r in (1, 2):
            assert supports_resolution_bps(taylor_complex(I.power_generators(r)))
    assert supports_resolution_bps(build_lri(square_ideal(), 2))
    hollow = labeled([{1, 2}, {2, 3}, {1, 3}], {1: "x", 2: "y", 3: "z"})
    cert = supports_resolution_bps(hollow)
    assert not cert and cert.witness == m("xyz") and cert.degree == 1


def test_quasitree_examples():
    I = three_path_ideal()
    assert supports_resolution_quasitree(label_lrq(I, 2))
    J = MonomialIdeal.from_names(["xy", "yz"])
    assert supports_resolution_quasitree(label_lrq(J, 3))
    path = labeled([{1, 3}, {3, 2}], {1: "x", 3: "z", 2: "y"})
    cert = supports_resolution_quasitree(path)
    assert not cert and cert.witness == m("xy")
    with pytest.raises(ValueError):
        supports_resolution_quasitree(labeled([{1, 2}, {2, 3}, {1, 3}], {1: "x", 2: "y", 3: "z"}))


def test_bps_and_quasitree_agree_on_lrq():
    rng = random.Random(12)
    from powres.corpus import random_squarefree_ideal

    for _ in range(15):
        q = rng.randint(2, 4)
        I = random_squarefree_ideal(rng, q, rng.randint(4, 6))
        for r in (2, 3):
            L = label_lrq(I, r)
            a, b = supports_resolution_bps(L), supports_resolution_quasitree(L)
            assert bool(a) == bool(b) is True


def test_minimality_examples():
    I = three_path_ideal()
    T = taylor_complex(I.power_generators(2))
    cert = is_minimal_support(T)
    assert not cert and cert.face is not None
    assert is_minimal_support(label_lrq(build_extremal(3), 2))
    assert not is_minimal_support(label_lrq(build_extremal(2), 5))


def test_codimension_one_reduction_matches_full_check():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(2, 5)
        facets = [rng.sample(range(n), rng.randint(1, n)) for _ in range(rng.randint(1, 3))]
        cx = from_facets(facets)
        labels = {v: V.monomial({x: rng.randint(0, 2) for x in "xyz"}) for v in cx.vertices}
        L = LabeledComplex(cx, labels, V)
        assert bool(is_minimal_support(L)) == is_minimal_support_bruteforce(L)


def test_homogenize_path_matches_displayed_matrix():
    I = three_path_ideal()
    W = I.vars
    L = LabeledComplex(from_facets([{0, 1}, {1, 2}]), dict(enumerate(I.generators)), W)
    R = homogenize(L)
    assert R.ranks == [3, 2]
    got = R.matrix(1)
    displayed = [["z", "0"], ["-x", "u"], ["0", "-y"]]

    def negate(s):
        return s if s == "0" else (s[1:] if s.startswith("-") else "-" + s)

    for c in range(2):
        col = [row[c] for row in got]
        want = [row[c] for row in displayed]
        assert col == want or col == [negate(s) for s in want]
    assert R.check_complex()


def test_homogenize_small_cases():
    R = homogenize(taylor_complex([m("xz")]))
    assert R.ranks == [1] and R.multidegrees == [[m("xz")]] and not R.differentials
    R = homogenize(taylor_complex([m("x"), m("y")]))
    assert [(e.row, e.col, e.scalar, e.monomial) for e in R.differentials[1]] == [(1, 0, 1, m("x")), (0, 0, -1, m("y"))]


def test_homogenize_composes_to_zero():
    for I in (three_path_ideal(), square_ideal()):
        for r in (1, 2):
            assert homogenize(build_lri(I, r)).check_complex()
            assert homogenize(taylor_complex(I.power_generators(r))).check_complex()


def test_check_complex_detects_breakage():
    R = homogenize(taylor_complex([m("x"), m("y"), m("z")]))
    e = R.differentials[2][0]
    R.differentials[2][0] = Entry(e.row, e.col, -e.scalar, e.monomial)
    assert not R.check_complex()


def test_betti_examples():
    I = MonomialIdeal.from_names(["x", "y"])
    assert multigraded_betti(I).totals == (2, 1)
    assert multigraded_betti(three_path_ideal()).totals == (3, 2)
    assert multigraded_betti(square_ideal(), 1).totals == (4, 4, 1)
    b = multigraded_betti(square_ideal(), 2)
    assert b.totals[0] == 9
    fv = build_lri(square_ideal(), 2).f_vector()
    assert all(x <= y for x, y in zip(b.totals, fv))


def test_betti_general_exponents():
    J = MonomialIdeal(V, (m({"x": 2}), m("xy"), m({"y": 3})))
    assert multigraded_betti(J).totals == (3, 2)


def test_betti_depends_on_field():
    W = VariableSet(f"v{i}" for i in range(1, 7))
    faces = {(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
             (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)}
    nonfaces = [T for T in combinations(range(1, 7), 3) if T not in faces]
    I = MonomialIdeal(W, tuple(W.monomial([f"v{i}" for i in T]) for T in nonfaces))
    qq = multigraded_betti(I, 1, "QQ").totals
    f2 = multigraded_betti(I, 1, "GF(2)").totals
    assert qq != f2
    assert qq[0] == f2[0] == 10


def test_minimize_examples():
    assert minimize_resolution(homogenize(taylor_complex([m("x"), m("y"), m("z")]))).totals == (3, 3, 1)
    I = MonomialIdeal.from_names(["xy", "yz"])
    gens = [power_product(I, a) for a in enumerate_points(2, 2)]
    assert minimize_resolution(homogenize(taylor_complex(gens))).totals == multigraded_betti(I, 2).totals
    assert minimize_resolution(homogenize(label_lrq(build_extremal(3), 2))).totals == (6, 9, 4)


def test_minimize_order_independent():
    for I, r in ((three_path_ideal(), 2), (square_ideal(), 2), (square_ideal(), 1)):
        R = homogenize(taylor_complex(I.power_generators(r))) if r == 1 else homogenize(build_lri(I, r))
        base = minimize_resolution(R)
        for seed in range(5):
            again = minimize_resolution(R, "random", random.Random(seed))
            assert again.entries == base.entries
        assert base.entries == multigraded_betti(I, r).entries


def test_minimize_over_prime_field():
    R = homogenize(build_lri(square_ideal(), 2), "GF(3)")
    assert minimize_resolution(R).totals == multigraded_betti(square_ideal(), 2, "GF(3)").totals


def test_minimize_rejects_corrupt_entries():
    R = homogenize(taylor_complex([m("x"), m("y")]))
    e = R.differentials[1][0]
    R.differentials[1][0] = Entry(e.row, e.col, e.scalar, m("z"))
    with pytest.raises(ValueError):
        minimize_resolution(R)


def test_betti_table_output():
    b = multigraded_betti(square_ideal(), 1)
    text = b.to_text().splitlines()
    assert text[0].split() == ["2", "3", "4", "total"]
    assert text[1].split() == ["0:", "4", ".", ".", "4"]
    assert text[3].split() == ["2:", ".", ".", "1", "1"]
    data = b.to_json()
    assert data["totals"] == [4, 4, 1] and data["field"] == "QQ"
    assert BettiTable({}, b.field).totals == ()
