import numpy as np
import pytest

from nuceft.encodings import (LatticeSpec, QubitLayout, encode_fermion_sum,
                              encode_hopping, encode_ladder, encode_number,
                              vc_stabilizers)
from nuceft.errors import GeometryError, UnsupportedOperatorError
from nuceft.fock import ANNIHILATE, CREATE, FermionSum, FermionTerm, \
    full_matrix, hopping, number_op
from nuceft.pauli import PauliSum, dense_matrix
from nuceft.verify import verify_encodings


def test_raster_roundtrip_and_boustrophedon():
    lat = LatticeSpec(3, 2, 2, 2.2)
    for r in range(lat.n_sites):
        assert lat.raster_index(lat.site_at(r)) == r
    # consecutive raster sites within a z plane are nearest neighbors
    for r in range(lat.n_sites - 1):
        a, b = lat.site_at(r), lat.site_at(r + 1)
        if a[2] == b[2]:
            assert sum(abs(x - y) for x, y in zip(a, b)) == 1
        else:
            assert b[2] == a[2] + 1


def test_bond_axis_rejects_non_neighbors():
    lat = LatticeSpec(3, 3, 1, 2.2)
    with pytest.raises(GeometryError):
        lat.bond_axis((0, 0, 0), (2, 0, 0))


def test_qubit_budgets():
    lat = LatticeSpec(2, 2, 2, 2.2)
    assert QubitLayout("jw", lat).total_qubits == 4 * 8
    assert QubitLayout("vc", lat).total_qubits == 6 * 8
    assert QubitLayout("compact", lat).total_qubits == -(-5 * 4 * 8 // 2)


def test_jw_encoding_matches_fock_oracle():
    lat = LatticeSpec(2, 1, 1, 2.2)
    layout = QubitLayout("jw", lat)
    h = hopping(0, 4, 8, 0.7) + number_op(3, 8, -1.2) + FermionSum(
        8, [FermionTerm(0.3, ((1, CREATE), (5, ANNIHILATE)))])
    h = h + h.adjoint()
    encoded = encode_fermion_sum(layout, 0.5 * h)
    assert np.allclose(dense_matrix(encoded), 0.5 * full_matrix(h, 8),
                       atol=1e-12)


def test_jw_number_operator_is_projector():
    lat = LatticeSpec(2, 1, 1, 2.2)
    layout = QubitLayout("jw", lat)
    n = dense_matrix(encode_number(layout, (0, 0, 0), 2))
    assert np.allclose(n @ n, n)
    assert np.allclose(np.sort(np.linalg.eigvalsh(n))[[0, -1]], [0.0, 1.0])


def test_compact_has_no_single_ladder():
    lat = LatticeSpec(2, 2, 1, 2.2)
    layout = QubitLayout("compact", lat)
    with pytest.raises(UnsupportedOperatorError):
        encode_ladder(layout, (0, 0, 0), 0, CREATE)


def test_encoded_hopping_is_hermitian():
    lat = LatticeSpec(2, 2, 2, 2.2)
    for encoding in ("jw", "vc", "compact"):
        layout = QubitLayout(encoding, lat)
        for si, sj, _axis in lat.bonds():
            h = encode_hopping(layout, si, sj, 1)
            assert h.is_hermitian(), (encoding, si, sj)


def test_vc_stabilizers_are_independent_commuting():
    lat = LatticeSpec(2, 2, 1, 2.2)
    layout = QubitLayout("vc", lat)
    stabs = vc_stabilizers(layout)
    # one stabilizer per directed path edge
    assert len(stabs) == len(layout.mu_edges) + len(layout.nu_edges)
    for i, a in enumerate(stabs):
        for b in stabs[i + 1:]:
            assert a.commutes_with(b)
    for s in stabs:
        sq = PauliSum.from_string(1.0, s) * PauliSum.from_string(1.0, s)
        ((c, string),) = list(sq)
        assert string.is_identity() and c == 1.0  # hermitian involution


def test_full_encoding_suite():
    for name, ok, detail in verify_encodings():
        assert ok, f"{name}: {detail}"
