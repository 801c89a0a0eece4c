"""Lattice Hamiltonian builders for the three nucleon models.

All couplings and energies are in MeV internally (hbar = c = 1); lengths in
fm appear only at the API boundary and are converted via hbar*c.  Modes are
indexed 4*raster + species, species order (up-p, down-p, up-n, down-n); with
spin bit alpha (0 = up) and isospin bit beta (0 = proton) the species index
is 2*beta + alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .encodings import LatticeSpec
from .errors import DomainError
from .fock import (ANNIHILATE, CREATE, NUMBER, FermionSum, FermionTerm,
                   reorder_only)

HBAR_C = 197.3269804  # MeV fm


@dataclass(frozen=True)
class PhysicalConstants:
    M: float = 938.0      # nucleon mass, MeV
    m_pi: float = 135.0   # pion mass, MeV
    g_A: float = 1.26     # axial coupling
    f_pi: float = 93.0    # pion decay constant, MeV
    hbar_c: float = HBAR_C


CONSTANTS = PhysicalConstants()

# 2x2 spin/isospin matrices indexed 1..3
_PAULI2 = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def convert_length(a_fm: float) -> float:
    """fm -> 1/MeV."""
    if not a_fm > 0:
        raise DomainError(f"length must be positive, got {a_fm}")
    return a_fm / HBAR_C


def species_index(alpha: int, beta: int) -> int:
    """Species from spin bit alpha (0 = up) and isospin bit beta (0 = p)."""
    return 2 * beta + alpha


def mode_index(lattice: LatticeSpec, site, species: int) -> int:
    return 4 * lattice.raster_index(site) + species


def hopping_coefficient(a_L_fm: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """h = 1 / (2 M a^2)."""
    a = convert_length(a_L_fm)
    return 1.0 / (2.0 * constants.M * a * a)


@dataclass(frozen=True)
class PionlessParams:
    a_L: float       # fm
    h: float         # MeV
    C_slash: float   # MeV
    D_slash: float   # MeV


_PIONLESS_TABLE = {
    1.4: PionlessParams(1.4, 10.58, -98.23, 127.84),
    2.2: PionlessParams(2.2, 4.29, -40.19, 42.51),
}


def pionless_params_for(a_L_fm: float) -> PionlessParams:
    """Tabulated couplings for the supported lattice spacings."""
    try:
        return _PIONLESS_TABLE[a_L_fm]
    except KeyError:
        raise DomainError(
            f"no tabulated pionless couplings for a_L={a_L_fm} fm "
            f"(known: {sorted(_PIONLESS_TABLE)})") from None


@dataclass(frozen=True)
class OpeParams:
    a_L: float      # fm
    C: float        # MeV
    C_I2: float     # MeV
    ell: float      # interaction cutoff length, fm

    @classmethod
    def from_lecs(cls, a_L_fm: float, ell_fm: float,
                  c_tilde_1: float = -5.021e-5,
                  c_tilde_0: float = -5.714e-5) -> "OpeParams":
        """Couplings from the isospin-1/0 low-energy constants (MeV^-2)."""
        a3 = convert_length(a_L_fm) ** 3
        c = (3 * c_tilde_1 + c_tilde_0) / (4 * a3)
        c_i2 = (c_tilde_1 - c_tilde_0) / (4 * a3)
        return cls(a_L_fm, c, c_i2, ell_fm)


@dataclass(frozen=True)
class DigitizationSpec:
    pi_max: float     # field cutoff, MeV^2 units of the dimensionful field
    Pi_max: float
    delta_pi: float
    delta_Pi: float
    n_b: int

    def __post_init__(self):
        if self.n_b < 1:
            raise DomainError(f"register width n_b must be >= 1, got {self.n_b}")


def ab_coefficients(a_L_fm: float, constants: PhysicalConstants = CONSTANTS) -> tuple[float, float]:
    """The quadratic-form coefficients (A, B) controlling the field cutoffs."""
    a = convert_length(a_L_fm)
    A = constants.m_pi ** 2 * a ** 3 / 2 - 1 / (2 * constants.f_pi ** 2 * a)
    B = a ** 3 / 2 - a / (2 * constants.f_pi ** 2)
    return A, B


@dataclass(frozen=True)
class DynPiParams:
    a_L: float       # fm
    C: float         # MeV
    C_I2: float      # MeV
    digitization: DigitizationSpec | None = None

    def __post_init__(self):
        A, B = ab_coefficients(self.a_L)
        if A <= 0 or B <= 0:
            raise DomainError(
                f"lattice spacing a_L={self.a_L} fm gives A={A:g}, B={B:g}; "
                "the field-cutoff bound needs A, B > 0")

    @property
    def A(self) -> float:
        return ab_coefficients(self.a_L)[0]

    @property
    def B(self) -> float:
        return ab_coefficients(self.a_L)[1]


# ---------------------------------------------------------------------------
# pionless EFT


def _free_terms(lattice: LatticeSpec, h: float) -> list[FermionTerm]:
    """-h * hopping over all bonds/species + 6h * on-site number terms."""
    out = []
    for si, sj, _axis in lattice.bonds():
        for sp in range(4):
            mi = mode_index(lattice, si, sp)
            mj = mode_index(lattice, sj, sp)
            lo, hi = min(mi, mj), max(mi, mj)
            out.append(FermionTerm(-h, ((lo, CREATE), (hi, ANNIHILATE))))
            out.append(FermionTerm(-h, ((hi, CREATE), (lo, ANNIHILATE))))
    for site in lattice.sites():
        for sp in range(4):
            out.append(FermionTerm(6 * h, ((mode_index(lattice, site, sp), NUMBER),)))
    return out


def _contact_two_body(lattice: LatticeSpec, coeff_half: float) -> list[FermionTerm]:
    """coeff_half * sum over ordered distinct species pairs of N N'."""
    out = []
    for site in lattice.sites():
        for s1 in range(4):
            for s2 in range(4):
                if s1 == s2:
                    continue
                m1 = mode_index(lattice, site, s1)
                m2 = mode_index(lattice, site, s2)
                lo, hi = min(m1, m2), max(m1, m2)
                out.append(FermionTerm(coeff_half, ((lo, NUMBER), (hi, NUMBER))))
    return out


def build_pionless(lattice: LatticeSpec, params: PionlessParams) -> FermionSum:
    n = 4 * lattice.n_sites
    terms = _free_terms(lattice, params.h)
    terms += _contact_two_body(lattice, params.C_slash / 2)
    for site in lattice.sites():
        modes = [mode_index(lattice, site, sp) for sp in range(4)]
        for t in range(4):
            for u in range(4):
                for v in range(4):
                    if len({t, u, v}) != 3:
                        continue
                    ms = sorted((modes[t], modes[u], modes[v]))
                    terms.append(FermionTerm(
                        params.D_slash / 6,
                        tuple((m, NUMBER) for m in ms)))
    return FermionSum(n, terms)


def pionless_layers(lattice: LatticeSpec, params: PionlessParams) -> list[FermionSum]:
    """Kinetic bonds split by (axis, coordinate parity) plus one on-site layer.

    Up to six kinetic layers (bonds in one layer are vertex-disjoint) and a
    final diagonal layer holding the number and contact terms.
    """
    n = 4 * lattice.n_sites
    kinetic: dict[int, list[FermionTerm]] = {}
    for si, sj, axis in lattice.bonds():
        key = 2 * axis + si[axis] % 2
        for sp in range(4):
            mi = mode_index(lattice, si, sp)
            mj = mode_index(lattice, sj, sp)
            lo, hi = min(mi, mj), max(mi, mj)
            kinetic.setdefault(key, []).append(
                FermionTerm(-params.h, ((lo, CREATE), (hi, ANNIHILATE))))
            kinetic[key].append(
                FermionTerm(-params.h, ((hi, CREATE), (lo, ANNIHILATE))))
    layers = [FermionSum(n, ts) for _, ts in sorted(kinetic.items())]
    diag = build_pionless(lattice, params) - sum(
        layers, FermionSum(n)) if layers else build_pionless(lattice, params)
    layers.append(diag)
    return layers


# ---------------------------------------------------------------------------
# one-pion-exchange EFT


def yukawa_g1(r: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Radial strength (1/12pi)(g_A/2f_pi)^2 m^2 exp(-m r)/r; r in 1/MeV."""
    m = constants.m_pi
    pref = (constants.g_A / (2 * constants.f_pi)) ** 2 / (12 * math.pi)
    return pref * m * m * math.exp(-m * r) / r


def yukawa_g2(r: float, constants: PhysicalConstants = CONSTANTS) -> float:
    m = constants.m_pi
    return yukawa_g1(r, constants) * (1 + 3 / (m * r) + 3 / (m * r) ** 2)


def _bilinear_modes(lattice, site, alpha, beta, gamma, delta):
    """Mode pair for adag_{alpha beta} a_{gamma delta} at one site."""
    return (mode_index(lattice, site, species_index(alpha, beta)),
            mode_index(lattice, site, species_index(gamma, delta)))


def _pair_terms(lattice, site_x, site_y, spin_kernel, iso_kernel, weight):
    """Terms of weight * :adag a (x) adag a (y): contracted with the kernels.

    spin_kernel[a', g', a, g] and iso_kernel[b', d', b, d] are 2x2x2x2 arrays.
    """
    out = []
    for ap in range(2):
        for gp in range(2):
            for a in range(2):
                for g in range(2):
                    s = spin_kernel[ap, gp, a, g]
                    if s == 0:
                        continue
                    for bp in range(2):
                        for dp in range(2):
                            for b in range(2):
                                for d in range(2):
                                    w = s * iso_kernel[bp, dp, b, d]
                                    if w == 0:
                                        continue
                                    c1, a1 = _bilinear_modes(lattice, site_x, ap, bp, gp, dp)
                                    c2, a2 = _bilinear_modes(lattice, site_y, a, b, g, d)
                                    fs = ((c1, CREATE), (a1, ANNIHILATE),
                                          (c2, CREATE), (a2, ANNIHILATE))
                                    out.extend(reorder_only(fs, weight * w).terms)
    return out


def _sigma_dot_sigma() -> np.ndarray:
    k = np.zeros((2, 2, 2, 2), dtype=complex)
    for s in (1, 2, 3):
        k += np.einsum("ij,kl->ijkl", _PAULI2[s], _PAULI2[s])
    return k


def _tensor_kernel(unit: np.ndarray) -> np.ndarray:
    """3 (u.sigma)(u.sigma) - sigma.sigma, indexed [a', g', a, g]."""
    udots = sum(unit[s - 1] * _PAULI2[s] for s in (1, 2, 3))
    return 3 * np.einsum("ij,kl->ijkl", udots, udots) - _sigma_dot_sigma()


def _tau_dot_tau() -> np.ndarray:
    return _sigma_dot_sigma()  # same algebra on the isospin indices


def build_ope(lattice: LatticeSpec, params: OpeParams,
              constants: PhysicalConstants = CONSTANTS) -> FermionSum:
    n = 4 * lattice.n_sites
    h = hopping_coefficient(params.a_L, constants)
    terms = _free_terms(lattice, h)
    terms += _contact_two_body(lattice, params.C / 2)
    terms += _ci2_terms(lattice, params.C_I2)
    terms += _long_range_terms(lattice, params, constants)
    return FermionSum(n, terms)


def _ci2_terms(lattice: LatticeSpec, c_i2: float) -> list[FermionTerm]:
    """(C_I2/2) * sum_I :rho_I^2: per site via direct isospin contraction."""
    out = []
    iso = _tau_dot_tau()
    for site in lattice.sites():
        for ap in range(2):
            for a in range(2):
                for bp in range(2):
                    for dp in range(2):
                        for b in range(2):
                            for d in range(2):
                                w = iso[bp, dp, b, d]
                                if w == 0:
                                    continue
                                c1, a1 = _bilinear_modes(lattice, site, ap, bp, ap, dp)
                                c2, a2 = _bilinear_modes(lattice, site, a, b, a, d)
                                fs = ((c1, CREATE), (a1, ANNIHILATE),
                                      (c2, CREATE), (a2, ANNIHILATE))
                                out.extend(reorder_only(fs, (c_i2 / 2) * w).terms)
    return out


def _long_range_terms(lattice: LatticeSpec, params: OpeParams,
                      constants: PhysicalConstants) -> list[FermionTerm]:
    if params.ell < lattice.a_L:
        return []
    a = convert_length(lattice.a_L)
    ell = convert_length(params.ell)
    iso = _tau_dot_tau()
    sig = _sigma_dot_sigma()
    terms: list[FermionTerm] = []
    site_list = list(lattice.sites())
    # on-site delta piece of the interaction kernel
    onsite = -(constants.g_A / (2 * constants.f_pi)) ** 2 / (9 * a ** 3)
    for site in site_list:
        terms += _pair_terms(lattice, site, site, onsite * sig, iso, 1.0)
    for sx in site_list:
        for sy in site_list:
            if sx == sy:
                continue
            disp = np.array(sx, dtype=float) - np.array(sy, dtype=float)
            r = a * float(np.linalg.norm(disp))
            if r > ell + 1e-12:
                continue
            unit = disp / np.linalg.norm(disp)
            kernel = yukawa_g2(r, constants) * _tensor_kernel(unit) \
                + yukawa_g1(r, constants) * sig
            terms += _pair_terms(lattice, sx, sy, kernel, iso, 1.0)
    return terms


def explicit_ci2_site_terms(lattice: LatticeSpec, site, c_i2: float) -> list[FermionTerm]:
    """The written-out 11-term on-site isovector contact expansion.

    Used as an independent transcription check against _ci2_terms.
    """
    m = [mode_index(lattice, site, sp) for sp in range(4)]
    up_p, down_p, up_n, down_n = m
    half = c_i2 / 2
    quads = [(1.0, up_p, up_p), (1.0, down_p, down_p),
             (1.0, up_n, up_n), (1.0, down_n, down_n),
             (-6.0, up_p, up_n), (2.0, up_p, down_p), (-2.0, up_p, down_n),
             (-2.0, down_p, up_n), (2.0, up_n, down_n), (-6.0, down_p, down_n)]
    out: list[FermionTerm] = []
    for w, m1, m2 in quads:
        out.extend(reorder_only(((m1, NUMBER), (m2, NUMBER)), half * w).terms)
    exch = ((up_p, CREATE), (down_p, ANNIHILATE), (down_n, CREATE), (up_n, ANNIHILATE))
    out.extend(reorder_only(exch, -4.0 * half).terms)
    herm = ((up_n, CREATE), (down_n, ANNIHILATE), (down_p, CREATE), (up_p, ANNIHILATE))
    out.extend(reorder_only(herm, -4.0 * half).terms)
    return out


# ---------------------------------------------------------------------------
# dynamical-pion EFT


@dataclass(frozen=True)
class DynPiDescriptor:
    """Costing-grade description of the pion-coupled model.

    The fermionic part is an explicit operator; the bosonic and mixed parts
    are kept symbolic (coefficients plus per-site term inventories), which is
    what the depth and error formulas consume.
    """

    lattice: LatticeSpec
    params: DynPiParams
    eta: int
    E: float
    eps_cut: float
    digitization: DigitizationSpec
    fermionic: FermionSum

    # per-site coefficient slots in the derivative-coupling term: 3 spin
    # directions x 3 isospin components x 4 fermion bilinears
    av_slots_per_site: int = field(default=36, init=False)
    # nonzero antisymmetric isospin triples in the two-field coupling
    wt_triples: int = field(default=6, init=False)

    @property
    def av_coefficient(self) -> float:
        return CONSTANTS.g_A / (2 * CONSTANTS.f_pi)

    @property
    def wt_coefficient(self) -> float:
        return 1.0 / (4 * CONSTANTS.f_pi ** 2)

    @property
    def boson_site_coefficient(self) -> float:
        """a_L^3 / 2 multiplying the quadratic field terms."""
        return convert_length(self.params.a_L) ** 3 / 2

    @property
    def total_qubits(self) -> int:
        return 6 * self.lattice.n_sites + 3 * self.lattice.n_sites * self.digitization.n_b


def build_dynpi_descriptor(lattice: LatticeSpec, params: DynPiParams, eta: int,
                           E: float, eps_cut: float) -> DynPiDescriptor:
    digit = params.digitization
    if digit is None:
        from .truncation import boson_cutoffs
        digit = boson_cutoffs(eta, E, eps_cut, params.a_L, lattice.Lx,
                              params.C, params.C_I2)
    n = 4 * lattice.n_sites
    h = hopping_coefficient(params.a_L)
    terms = _free_terms(lattice, h)
    terms += _contact_two_body(lattice, params.C / 2)
    terms += _ci2_terms(lattice, params.C_I2)
    return DynPiDescriptor(lattice, params, eta, E, eps_cut, digit,
                           FermionSum(n, terms))
