import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nuceft.errors import DimensionError, SizeError
from nuceft.pauli import (PauliString, PauliSum, commutator_sum, dense_matrix,
                          multiply, partition_commuting_layers)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
SINGLE = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_label(label):
    """Independent dense oracle: qubit 0 is the least significant factor."""
    mat = np.eye(1, dtype=complex)
    for ch in label:
        mat = np.kron(SINGLE[ch], mat)
    return mat


def test_from_label_matches_kron_oracle():
    for label in ("X", "IZ", "XY", "ZZX", "IYXI", "XXYZ"):
        p = PauliString.from_label(label)
        assert np.allclose(p.dense(), kron_label(label))


def test_label_roundtrip():
    p = PauliString.from_label("XIZY", phase=3)
    assert p.label() == "XIZY"
    assert PauliString.from_label(p.label(), p.phase) == p


def test_phase_is_mod_four():
    p = PauliString.from_label("X", phase=1)
    assert np.allclose(p.dense(), 1j * X)
    assert PauliString(1, 1, 0, 5).phase == 1


def test_multiply_small_cases():
    x = PauliString.from_label("X")
    z = PauliString.from_label("Z")
    xz = multiply(x, z)
    assert np.allclose(xz.dense(), X @ Z)
    assert np.allclose(multiply(z, x).dense(), Z @ X)
    # XZ = -iY
    assert xz.label() == "Y"
    assert xz.phase == 3


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63),
       st.integers(0, 63), st.integers(0, 3), st.integers(0, 3))
def test_multiply_matches_dense(xa, za, xb, zb, pa, pb):
    a = PauliString(6, xa, za, pa)
    b = PauliString(6, xb, zb, pb)
    assert np.allclose(multiply(a, b).dense(), a.dense() @ b.dense())


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63),
       st.integers(0, 63))
def test_commutes_with_matches_dense(xa, za, xb, zb):
    a = PauliString(6, xa, za)
    b = PauliString(6, xb, zb)
    comm = a.dense() @ b.dense() - b.dense() @ a.dense()
    assert a.commutes_with(b) == bool(np.allclose(comm, 0))


def test_weight_and_support():
    p = PauliString.from_label("XIZY")
    assert p.weight == 3
    assert p.support == 0b1101


def test_dimension_mismatch_rejected():
    with pytest.raises(DimensionError):
        multiply(PauliString.from_label("X"), PauliString.from_label("XX"))


def test_sum_canonicalization_merges_terms():
    x = PauliString.from_label("X")
    s = PauliSum(1, [(0.5, x), (0.25, x)])
    assert len(s) == 1
    ((c, _),) = list(s)
    assert c == 0.75


def test_sum_phase_folded_into_coefficient():
    minus_x = PauliString.from_label("X", phase=2)
    s = PauliSum.from_string(1.0, minus_x)
    ((c, string),) = list(s)
    assert string.phase == 0
    assert c == -1.0
    assert np.allclose(dense_matrix(s), -X)


def test_sum_product_matches_dense():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = PauliSum(3, [(complex(rng.normal(), rng.normal()),
                          PauliString(3, int(rng.integers(8)),
                                      int(rng.integers(8))))
                         for _ in range(3)])
        b = PauliSum(3, [(complex(rng.normal(), rng.normal()),
                          PauliString(3, int(rng.integers(8)),
                                      int(rng.integers(8))))
                         for _ in range(3)])
        assert np.allclose(dense_matrix(a * b),
                           dense_matrix(a) @ dense_matrix(b), atol=1e-12)
        lhs = dense_matrix(commutator_sum(a, b))
        rhs = dense_matrix(a) @ dense_matrix(b) \
            - dense_matrix(b) @ dense_matrix(a)
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_adjoint_of_hermitian_sum():
    h = PauliSum(2, [(1.5, PauliString.from_label("XZ")),
                     (-0.5, PauliString.from_label("YY"))])
    assert h.is_hermitian()
    assert np.allclose(dense_matrix(h.adjoint()),
                       dense_matrix(h).conj().T)


def test_dense_matrix_cap():
    big = PauliSum(15, [(1.0, PauliString.identity(15))])
    with pytest.raises(SizeError):
        dense_matrix(big)


def test_partition_layers_are_disjoint_and_commuting():
    rng = np.random.default_rng(11)
    terms = [PauliSum(6, [(1.0, PauliString(6, int(rng.integers(64)),
                                            int(rng.integers(64))))])
             for _ in range(30)]
    layers = partition_commuting_layers(terms)
    assert len(layers) == len(terms)
    grouped = {}
    for term, lay in zip(terms, layers):
        grouped.setdefault(lay, []).append(term)
    assert sorted(grouped) == list(range(len(grouped)))
    for members in grouped.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                assert not (a.support & b.support)
                assert a.commutes_with(b)


def test_partition_greedy_first_fit():
    # identical single-qubit terms collide pairwise -> one layer each
    x = PauliSum.from_string(1.0, PauliString.from_label("XI"))
    layers = partition_commuting_layers([x, x, x])
    assert layers == [0, 1, 2]
    # disjoint terms share the first layer
    y = PauliSum.from_string(1.0, PauliString.from_label("IY"))
    assert partition_commuting_layers([x, y]) == [0, 0]
