"""Symbolic Pauli-string algebra with exact integer phase tracking.

Pauli strings are stored in the symplectic (binary) representation: two bit
masks over the qubit index space plus a power of i.  Bit q of ``x_mask`` is
set when qubit q carries X or Y; bit q of ``z_mask`` when it carries Z or Y.
The operator represented is ``i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}``
with P_q read off the masks as I/X/Y/Z.  All phase arithmetic is done on the
Z4 exponent, so products and commutators are exact (no floating-point phases).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, SizeError

_PAULI_CHARS = "IXZY"  # index = x_bit + 2*z_bit


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class PauliString:
    """i**phase times a tensor product of single-qubit Paulis.

    Attributes:
        n_qubits: number of qubits the string acts on
        x_mask: bit q set when qubit q carries X or Y
        z_mask: bit q set when qubit q carries Z or Y
        phase: exponent of i, reduced mod 4
    """

    n_qubits: int
    x_mask: int
    z_mask: int
    phase: int = 0

    def __post_init__(self):
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise DimensionError(
                f"mask exceeds {self.n_qubits} qubits: "
                f"x={self.x_mask:#x} z={self.z_mask:#x}")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str, phase: int = 0) -> "PauliString":
        """Build from a string like 'IXYZ'; qubit 0 is the leftmost character."""
        x_mask = 0
        z_mask = 0
        for q, ch in enumerate(label):
            if ch in ("X", "Y"):
                x_mask |= 1 << q
            if ch in ("Z", "Y"):
                z_mask |= 1 << q
            if ch not in "IXYZ":
                raise ValueError(f"invalid Pauli character {ch!r}")
        return cls(len(label), x_mask, z_mask, phase)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, kind: str, phase: int = 0) -> "PauliString":
        """A single-qubit X, Y or Z embedded in an n-qubit identity."""
        if not 0 <= qubit < n_qubits:
            raise DimensionError(f"qubit {qubit} out of range for {n_qubits} qubits")
        bit = 1 << qubit
        x = bit if kind in ("X", "Y") else 0
        z = bit if kind in ("Z", "Y") else 0
        if kind not in "XYZ":
            raise ValueError(f"invalid Pauli kind {kind!r}")
        return cls(n_qubits, x, z, phase)

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    @property
    def support(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def phase_value(self) -> complex:
        return 1j ** self.phase

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n_qubits != other.n_qubits:
            raise DimensionError(
                f"qubit counts differ: {self.n_qubits} vs {other.n_qubits}")
        sym = (self.x_mask & other.z_mask) ^ (self.z_mask & other.x_mask)
        return _popcount(sym) % 2 == 0

    def label(self) -> str:
        chars = []
        for q in range(self.n_qubits):
            idx = ((self.x_mask >> q) & 1) + 2 * ((self.z_mask >> q) & 1)
            chars.append(_PAULI_CHARS[idx])
        return "".join(chars)

    def __repr__(self) -> str:
        prefix = {0: "", 1: "i*", 2: "-", 3: "-i*"}[self.phase]
        return f"{prefix}{self.label()}"

    def dense(self) -> np.ndarray:
        """Exact 2^n x 2^n complex matrix (no cap; callers enforce one)."""
        dim = 1 << self.n_qubits
        cols = np.arange(dim, dtype=np.int64)
        rows = cols ^ self.x_mask
        # in X^x Z^z order the Z factors act first: sign (-1)^{|j & z|}
        parity = np.zeros(dim, dtype=np.int64)
        for q in range(self.n_qubits):
            if (self.z_mask >> q) & 1:
                parity ^= (cols >> q) & 1
        # letter form differs from X^x Z^z by i per Y factor
        xz_phase = (self.phase + _popcount(self.x_mask & self.z_mask)) % 4
        vals = (1j ** xz_phase) * np.where(parity, -1.0, 1.0)
        mat = np.zeros((dim, dim), dtype=complex)
        mat[rows, cols] = vals
        return mat


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Group product a*b with the exact Z4 phase."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(
            f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}")
    # work in X^x Z^z canonical order, then convert back to letter phase
    ga = a.phase + _popcount(a.x_mask & a.z_mask)
    gb = b.phase + _popcount(b.x_mask & b.z_mask)
    g = ga + gb + 2 * _popcount(a.z_mask & b.x_mask)
    x = a.x_mask ^ b.x_mask
    z = a.z_mask ^ b.z_mask
    return PauliString(a.n_qubits, x, z, g - _popcount(x & z))


class PauliSum:
    """Weighted sum of Pauli strings in canonical form.

    Canonical form: every stored string has phase exponent 0 (phases are
    folded into the complex coefficients), no two terms share identical
    (x_mask, z_mask), and exact-zero coefficients are dropped.
    """

    __slots__ = ("n_qubits", "terms")

    def __init__(self, n_qubits: int, terms: Iterable[tuple[complex, PauliString]] = ()):
        self.n_qubits = n_qubits
        combined: dict[tuple[int, int], complex] = {}
        for coeff, string in terms:
            if string.n_qubits != n_qubits:
                raise DimensionError(
                    f"term acts on {string.n_qubits} qubits, sum on {n_qubits}")
            key = (string.x_mask, string.z_mask)
            combined[key] = combined.get(key, 0) + coeff * string.phase_value
        self.terms = tuple(
            (c, PauliString(n_qubits, x, z, 0))
            for (x, z), c in combined.items() if c != 0)

    @classmethod
    def from_string(cls, coeff: complex, string: PauliString) -> "PauliSum":
        return cls(string.n_qubits, [(coeff, string)])

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def support(self) -> int:
        mask = 0
        for _, s in self.terms:
            mask |= s.support
        return mask

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise DimensionError(
                f"qubit counts differ: {self.n_qubits} vs {other.n_qubits}")
        return PauliSum(self.n_qubits, list(self.terms) + list(other.terms))

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1) * other

    def __rmul__(self, scalar: complex) -> "PauliSum":
        return PauliSum(self.n_qubits, [(scalar * c, s) for c, s in self.terms])

    def __mul__(self, other: "PauliSum") -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise DimensionError(
                f"qubit counts differ: {self.n_qubits} vs {other.n_qubits}")
        prods = []
        for ca, sa in self.terms:
            for cb, sb in other.terms:
                prods.append((ca * cb, multiply(sa, sb)))
        return PauliSum(self.n_qubits, prods)

    def adjoint(self) -> "PauliSum":
        # stored strings are phase-free hence Hermitian
        return PauliSum(self.n_qubits, [(np.conj(c), s) for c, s in self.terms])

    def is_hermitian(self) -> bool:
        return all(abs(c.imag if isinstance(c, complex) else 0.0) == 0
                   for c, _ in self.terms)

    def commutes_with(self, other: "PauliSum") -> bool:
        return all(sa.commutes_with(sb)
                   for _, sa in self.terms for _, sb in other.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"PauliSum({self.n_qubits}, 0)"
        parts = [f"({c:g})*{s.label()}" for c, s in self.terms]
        return " + ".join(parts)

    def to_json_dict(self) -> dict:
        """Hex-mask serialization of the canonical term list."""
        return {
            "n_qubits": self.n_qubits,
            "terms": [
                {"coeff_re": float(np.real(c)), "coeff_im": float(np.imag(c)),
                 "x_mask": hex(s.x_mask), "z_mask": hex(s.z_mask)}
                for c, s in self.terms
            ],
        }


def commutator_sum(a: PauliSum, b: PauliSum) -> PauliSum:
    """ab - ba in canonical form; empty when every term pair commutes."""
    return a * b - b * a


def dense_matrix(p: PauliSum, max_qubits: int = 14) -> np.ndarray:
    """Exact dense matrix of a PauliSum, refusing oversized requests."""
    if p.n_qubits > max_qubits:
        raise SizeError(f"{p.n_qubits} qubits exceeds dense cap {max_qubits}")
    dim = 1 << p.n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    for coeff, string in p.terms:
        mat += coeff * string.dense()
    return mat


def partition_commuting_layers(terms: Sequence[PauliSum]) -> list[int]:
    """First-fit greedy assignment of terms to layers, in input order.

    A term joins the earliest layer whose members it commutes with and whose
    qubit support is disjoint from its own.  Deterministic given input order.
    """
    if not terms:
        raise ValueError("term list must be non-empty")
    assignment: list[int] = []
    layer_supports: list[int] = []
    layer_members: list[list[PauliSum]] = []
    for term in terms:
        placed = False
        for idx, sup in enumerate(layer_supports):
            if sup & term.support:
                continue
            if all(term.commutes_with(m) for m in layer_members[idx]):
                assignment.append(idx)
                layer_supports[idx] |= term.support
                layer_members[idx].append(term)
                placed = True
                break
        if not placed:
            assignment.append(len(layer_supports))
            layer_supports.append(term.support)
            layer_members.append([term])
    return assignment
