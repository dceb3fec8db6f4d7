import itertools

import pytest
from oracles import binom

from ccycle.classes import (ClassMatrix, TriangularityError, all_classes, csm_cell,
                            euler_obstructions, ih_multiplicities, identity_matrix, matmul,
                            mather, solve_unit_upper)
from ccycle.homology import SchubertClass
from ccycle.weyl import generate_WP


def all_reduced_words(W, w):
    l = W.length(w)
    out = []

    def go(u, suffix):
        if W.length(u) == 0:
            out.append(list(suffix))
            return
        for i in W.right_descents(u):
            go(W.right_mul_simple(u, i), [i] + suffix)

    go(w, [])
    assert all(len(x) == l for x in out)
    return out


@pytest.mark.parametrize("label,node", [("A3", 2), ("C2", 2)])
def test_csm_word_independence_all(label, node):
    pd = generate_WP(label, node)
    W = pd.group
    for w in pd.WP:
        ref = csm_cell(w, pd)
        for word in all_reduced_words(W, w):
            assert csm_cell(w, pd, word=word) == ref


def test_csm_word_independence_e6_random(rng):
    pd = generate_WP("E6", 6)
    W = pd.group
    for w in rng.sample(pd.WP, 10):
        ref = csm_cell(w, pd)
        words = all_reduced_words(W, w)
        for word in rng.sample(words, min(3, len(words))):
            assert csm_cell(w, pd, word=word) == ref


def test_csm_rejects_wrong_word():
    pd = generate_WP("A3", 2)
    W = pd.group
    w = W.from_word([1, 3, 2])
    with pytest.raises(ValueError):
        csm_cell(w, pd, word=[3, 2])
    with pytest.raises(ValueError):
        csm_cell(W.s(1), pd)


@pytest.mark.parametrize("label,node", [("A3", 2), ("C2", 2), ("C3", 3), ("B3", 1),
                                        ("D4", 4), ("D5", 5), ("E6", 6)])
def test_euler_characteristic_and_leading_terms(label, node):
    pd = generate_WP(label, node)
    W = pd.group
    csm, ma = all_classes(pd)
    for w, c, m in zip(pd.WP, csm, ma):
        assert c[W.identity] == 1  # a cell is an affine space
        assert c[w] == 1 and m[w] == 1
        assert all(W.length(v) <= W.length(w) for v in c.support() | m.support())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_space(n):
    # c_SM(P^n) = (1 + H)^{n+1} cap [P^n]: coefficient of [P^d] is C(n+1, n-d)
    pd = generate_WP(f"A{n}", 1)
    W = pd.group
    total = sum((csm_cell(w, pd) for w in pd.WP), SchubertClass())
    for w in pd.WP:
        d = W.length(w)
        assert total[w] == binom(n + 1, n - d)
    assert mather(pd.top, pd) == total


@pytest.mark.parametrize("label,node", [("A3", 2), ("D4", 4), ("E6", 6), ("C3", 3)])
def test_mather_of_smooth_space(label, node):
    pd = generate_WP(label, node)
    total = sum((csm_cell(w, pd) for w in pd.WP), SchubertClass())
    assert mather(pd.top, pd) == total
    assert total[pd.group.identity] == len(pd)  # Euler characteristic of G/P


@pytest.mark.parametrize("label,node", [("A3", 2), ("D4", 4)])
def test_mather_factor_order_exhaustive(label, node):
    pd = generate_WP(label, node)
    W = pd.group
    for w in pd.WP:
        ref = mather(w, pd)
        for order in itertools.permutations(W.inversion_indices(w)):
            assert mather(w, pd, order=order) == ref


def test_mather_factor_order_independent(rng):
    pd = generate_WP("D4", 4)
    W = pd.group
    for w in pd.WP:
        inv = W.inversion_indices(w)
        for _ in range(3):
            order = inv[:]
            rng.shuffle(order)
            assert mather(w, pd, order=order) == mather(w, pd)
    with pytest.raises(ValueError):
        mather(pd.top, pd, order=[0])


def test_gr24_quadric_cone():
    # the Schubert divisor of Gr(2,4) is a cone over a smooth quadric surface;
    # its Euler obstruction at the vertex is 2 (cone formula: 4 - 4 + 2)
    pd = generate_WP("A3", 2)
    W = pd.group
    csm, ma = all_classes(pd)
    E = euler_obstructions(ClassMatrix.from_classes(ma, pd), ClassMatrix.from_classes(csm, pd))
    i = pd.position[W.identity]
    j = pd.position[W.parse_word("1,3,2")]
    assert E.rows[i][j] == 2
    assert E.rows[pd.position[W.parse_word("2")]][j] == 1


def test_lg24_conic_cone():
    # LG(2,4) is a 3-dim quadric; its Schubert surface is a cone over a conic,
    # Euler obstruction 2d - d^2 = 0 at the vertex
    pd = generate_WP("C2", 2)
    W = pd.group
    csm, ma = all_classes(pd)
    E = euler_obstructions(ClassMatrix.from_classes(ma, pd), ClassMatrix.from_classes(csm, pd))
    assert E.rows[0][pd.position[W.parse_word("1,2")]] == 0


def test_gr24_matrices_unit_triangular():
    pd = generate_WP("A3", 2)
    csm, ma = all_classes(pd)
    C, M = ClassMatrix.from_classes(csm, pd), ClassMatrix.from_classes(ma, pd)
    assert C.size == M.size == 6
    assert C.is_unit_upper_triangular() and M.is_unit_upper_triangular()
    E = euler_obstructions(M, C)
    assert matmul(C.rows, E.rows) == M.rows


def test_solve_unit_upper():
    A = [[1, 2, -1], [0, 1, 3], [0, 0, 1]]
    X = [[1, 0, 4], [0, 1, -2], [0, 0, 1]]
    B = matmul(A, X)
    assert solve_unit_upper(A, B) == X
    with pytest.raises(TriangularityError):
        solve_unit_upper([[2, 0], [0, 1]], B)
    with pytest.raises(TriangularityError):
        solve_unit_upper([[1, 0], [1, 1]], [[1, 0], [0, 1]])


def test_multiplicities():
    E = ClassMatrix(["", "1"], [[1, 2], [0, 1]])
    K = ClassMatrix(["", "1"], [[1, 3], [0, 1]])
    m = ih_multiplicities(E, K)
    assert m.rows == [[1, 1], [0, 1]]
    assert matmul(E.rows, m.rows) == K.rows
    assert ih_multiplicities(E, E).rows == identity_matrix(2)
    with pytest.raises(ValueError):
        ih_multiplicities(E, ClassMatrix(["", "2"], K.rows))


def test_matrix_serialization():
    M = ClassMatrix(["", "2", "2,1"], [[1, 1, 2], [0, 1, 3], [0, 0, 1]])
    assert ClassMatrix.from_dict(M.to_dict()) == M
    lines = M.to_csv().splitlines()
    assert lines[0] == ",id,2,\"2,1\""
    assert lines[1] == "id,1,1,2"
    assert M.column(2) == [2, 3, 1]
    assert not ClassMatrix(["", "1"], [[1, 0], [1, 1]]).is_unit_upper_triangular()
