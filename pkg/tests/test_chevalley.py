from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liestrata.chevalley import (
    AmbiguousPower,
    NotNilpotentElement,
    build_algebra,
    invariance_violations,
    jacobi_violations,
    p_power,
    structure_constants,
)
from liestrata.exactlinalg import nilpotent_jordan_partition, rank
from liestrata.grading import grade
from liestrata.rootsys import build_root_system, neg
from structure_checks import chain_rule_violations, coroot_violations, random_jacobi_violations

EXCEPTIONAL = ["G2", "F4", "E6", "E7", "E8"]

# dual Coxeter numbers; the minimal orbit has dimension 2 h^vee - 2
DUAL_COXETER = {"G2": 4, "F4": 9, "E6": 12, "E7": 18, "E8": 30}
EXPONENTS = {
    "G2": [1, 5],
    "F4": [1, 5, 7, 11],
    "E6": [1, 4, 5, 7, 8, 11],
    "E7": [1, 5, 7, 9, 11, 13, 17],
    "E8": [1, 7, 11, 13, 17, 19, 23, 29],
}


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_dimensions(name):
    A = build_algebra(name, 0)
    assert A.dim == {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248}[name]


# -- structure constant identities ------------------------------------------------


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_chain_rule_magnitudes(name):
    assert chain_rule_violations(name) == 0


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_sign_symmetries(name):
    R = build_root_system(name)
    N = structure_constants(R)
    assert all(N[(b, a)] == -v for (a, b), v in N.items())
    assert all(N[(neg(a), neg(b))] == -v for (a, b), v in N.items())
    # N is defined exactly on pairs whose sum is a root
    for a in R.roots:
        for b in R.roots:
            s = tuple(x + y for x, y in zip(a, b))
            assert ((a, b) in N) == (s in R)


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_e_alpha_e_minus_alpha_is_coroot(name):
    assert coroot_violations(name) == 0


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_cartan_action(name):
    A = build_algebra(name, 0)
    R = A.rootsystem
    for i, s in enumerate(R.simple_roots, start=1):
        for a in R.roots:
            got = A.bracket(A.h(i), A.root_vector(a))
            assert got == A.root_vector(a, R.coroot_pairing(a, s))


@pytest.mark.parametrize("name", ["G2", "F4", "E6", "E7", "E8"])
def test_jacobi_full_scan_over_integers(name):
    assert jacobi_violations(build_algebra(name, 0)) == 0


@pytest.mark.parametrize("name", ["E7", "E8"])
def test_jacobi_full_scan_mod_2(name):
    assert jacobi_violations(build_algebra(name, 2), modulus=2) == 0


def test_jacobi_random_integer_triples():
    """10^5 random triples over Z, split between E7 and E8."""
    assert random_jacobi_violations("E7", 40_000, seed=1) == 0
    assert random_jacobi_violations("E8", 60_000, seed=2) == 0


def test_jacobi_scan_detects_corruption():
    A = build_algebra("G2", 0)
    I, J, K, V = A.integer_structure
    V_saved = V.copy()
    try:
        V[0] += 1
        assert jacobi_violations(A) > 0
    finally:
        V[:] = V_saved
    assert jacobi_violations(A) == 0


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_form_is_invariant_and_nondegenerate(name):
    A = build_algebra(name, 0)
    assert invariance_violations(A) == 0
    K = A.killing_gram()
    assert K == K.T
    assert rank(K) == A.dim


# -- centralizers and Jordan types ---------------------------------------------------


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_centralizer_of_highest_root_vector(name):
    A = build_algebra(name, 0)
    dim, basis = A.centralizer(A.root_vector(A.rootsystem.highest_root))
    assert dim == A.dim - (2 * DUAL_COXETER[name] - 2)
    for v in basis[:10]:
        assert A.bracket(A.root_vector(A.rootsystem.highest_root), v).is_zero()


@pytest.mark.parametrize(
    "name,p", [("G2", 0), ("F4", 0), ("E6", 0), ("E7", 101), ("E8", 101)]
)
def test_regular_nilpotent(name, p):
    # 101 exceeds every Coxeter number here, so the answer is the one over Q
    A = build_algebra(name, p)
    e = A.from_roots(A.rootsystem.simple_roots)
    assert A.centralizer(e)[0] == A.rank
    blocks = sorted(2 * m + 1 for m in EXPONENTS[name])
    assert nilpotent_jordan_partition(A.ad_matrix(e)) == tuple(reversed(blocks))


def test_centralizer_of_zero_and_of_cartan():
    A = build_algebra("F4", 3)
    assert A.centralizer(A.zero())[0] == A.dim
    # generic Cartan element over GF(101): centralizer is the Cartan subalgebra
    B = build_algebra("F4", 101)
    h = B.element({B.h_index(i): c for i, c in zip(range(1, 5), (3, 7, 11, 29))})
    assert B.centralizer(h)[0] == 4


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["G2", "F4"]), st.sampled_from([0, 2, 3]), st.data())
def test_bracket_is_antisymmetric_and_ad_matches(name, p, data):
    A = build_algebra(name, p)
    n = A.dim
    coeffs = st.dictionaries(st.integers(0, n - 1), st.integers(-3, 3), max_size=4)
    x = A.element(data.draw(coeffs))
    y = A.element(data.draw(coeffs))
    assert A.bracket(x, y) == A.scale(-1, A.bracket(y, x))
    assert A.ad_matrix(x).apply(A.to_vector(y)) == A.to_vector(A.bracket(x, y))


# -- restricted powers ------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_p_power_of_root_vector_and_torus(p):
    A = build_algebra("E8", p)
    assert p_power(A, A.root_vector(A.rootsystem.highest_root)).is_zero()
    h = A.h(1)
    assert A.power_map(h) == h  # ad h has eigenvalues in the prime field
    with pytest.raises(NotNilpotentElement):
        p_power(A, h)


def test_p_power_of_sum_in_sl2_directions():
    # over GF(2), (e_a + e_-a)^[2] = h_a for a simple root a
    A = build_algebra("E8", 2)
    a = A.rootsystem.simple_roots[0]
    x = A.add(A.root_vector(a), A.root_vector(neg(a)))
    assert A.power_map(x) == A.h(1)


def test_p_power_ambiguous_with_centre():
    A = build_algebra("E7", 2)  # the centre is one-dimensional in characteristic 2
    e = A.root_vector(A.rootsystem.highest_root)
    with pytest.raises(AmbiguousPower):
        p_power(A, e)
    G = grade(A, (1,) * 7)
    with pytest.raises(ArithmeticError):  # nothing lives in degree 34
        p_power(A, e, degree_hint=2 * G.degree(e), grading=G)


def test_p_power_with_degree_hint_is_checked():
    from liestrata.catalog import default_catalog

    A = build_algebra("E7", 2)
    rec = default_catalog().orbit("E7", "(A6)_2")
    e = rec.element(A)
    G = grade(A, rec.cocharacter)
    y = p_power(A, e, degree_hint=4, grading=G)
    assert not y.is_zero() and G.degree(y) == 4
    assert A.ad_matrix(y) == A.ad_matrix(e) @ A.ad_matrix(e)
