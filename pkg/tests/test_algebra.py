import numpy as np
import pytest

from monrep.algebra import (
    Algebra,
    Quiver,
    ValidationError,
    linear_quiver,
    monomial_quotient,
    nakayama_algebra,
    opposite,
    path_algebra,
    tensor_with_path_algebra,
    truncated_polynomial,
    validate_algebra,
)
from monrep.exactla import GF, QQ
from monrep.instances import TEST_QUIVERS, instance_rng, random_quiver


def test_truncated_polynomial_laws():
    A = truncated_polynomial(GF(2), 2)
    assert A.dim == 2
    validate_algebra(A)


def test_invertible_radical_rejected():
    A = truncated_polynomial(GF(2), 2)
    data = A.to_json()
    data["mul"][1][1] = [1, 0]  # x * x = 1
    with pytest.raises(ValidationError):
        validate_algebra(Algebra.from_json(data))


def test_path_algebra_of_a2():
    A = path_algebra(linear_quiver(2), GF(2))
    assert A.dim == 3
    validate_algebra(A)


@pytest.mark.parametrize("n,dim", [(2, 2), (3, 3)])
def test_monomial_loop_quotients(n, dim):
    A = monomial_quotient(Quiver(1, ((1, 1),)), [[0] * n], GF(3))
    assert A.dim == dim
    validate_algebra(A)


def test_opposite_of_a2_transposes_the_table():
    A = path_algebra(linear_quiver(2), GF(2))
    B = opposite(A)
    validate_algebra(B)
    for i in range(A.dim):
        for j in range(A.dim):
            assert np.array_equal(B.mul[i, j], A.mul[j, i])
    C = truncated_polynomial(GF(2), 2)
    assert np.array_equal(opposite(C).mul, C.mul)


def test_tensor_dimension():
    A = truncated_polynomial(GF(2), 2)
    lam = tensor_with_path_algebra(linear_quiver(2), A)
    assert lam.dim == 6
    validate_algebra(lam)


def test_nakayama():
    A = nakayama_algebra(GF(2), 2, 2)
    assert A.dim == 4
    assert len(A.idempotents) == 2
    validate_algebra(A)


def test_rational_algebra():
    A = truncated_polynomial(QQ, 3)
    validate_algebra(A)
    round_trip = Algebra.from_json(A.to_json())
    validate_algebra(round_trip)
    assert round_trip.dim == 3


def test_quiver_paths_and_descending():
    q = TEST_QUIVERS["2->1<-3"]
    assert q.is_descending()
    assert q.sources == [2, 3]
    assert q.longest_path_length() == 1
    assert q.path_counts[(2, 1)] == 1 and q.path_counts.get((2, 3), 0) == 0
    assert len(q.paths()) == 5
    cyc = Quiver(2, ((1, 2), (2, 1)))
    assert not cyc.is_acyclic()


def test_relabel_topological():
    q = Quiver(3, ((1, 2), (2, 3)))
    assert not q.is_descending()
    r, mapping = q.relabel_topological()
    assert r.is_descending()
    assert sorted(mapping) == [1, 2, 3]


@pytest.mark.parametrize("k", range(10))
def test_random_quivers_are_descending(k):
    q = random_quiver(instance_rng(0, 7, k))
    assert q.is_descending() and q.n == 5 and 1 <= len(q.arrows) <= 5
    A = path_algebra(q, GF(2))
    assert A.dim == len(q.paths())
