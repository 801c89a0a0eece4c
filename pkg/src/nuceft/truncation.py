"""Range-cutoff and field-digitization error bounds.

Covers the interaction-range cutoff for the one-pion-exchange model, exact
lattice shell counting q(r), and the bosonic field/momentum cutoffs plus
register sizing for the dynamical-pion model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, UnreachableBudgetError
from .models import (CONSTANTS, DigitizationSpec, PhysicalConstants,
                     ab_coefficients, convert_length, yukawa_g1, yukawa_g2)


@lru_cache(maxsize=None)
def shell_count(r_sq: int) -> int:
    """Number of integer points (i, j, k) with i^2 + j^2 + k^2 = r_sq."""
    if r_sq < 0:
        raise DomainError(f"squared radius must be >= 0, got {r_sq}")
    if r_sq == 0:
        return 1
    count = 0
    top = math.isqrt(r_sq)
    for i in range(-top, top + 1):
        rem_i = r_sq - i * i
        jtop = math.isqrt(rem_i)
        for j in range(-jtop, jtop + 1):
            rem = rem_i - j * j
            k = math.isqrt(rem)
            if k * k == rem:
                count += 1 if k == 0 else 2
    return count


@dataclass(frozen=True)
class ShellTable:
    """Realized squared distances r^2 <= max_r_sq and their site counts."""

    max_r_sq: int

    def entries(self) -> list[tuple[int, int]]:
        out = []
        for r_sq in range(1, self.max_r_sq + 1):
            q = shell_count(r_sq)
            if q:
                out.append((r_sq, q))
        return out

    def cumulative(self) -> int:
        return 1 + sum(q for _, q in self.entries())


def realized_shells(ell_fm: float, a_L_fm: float) -> list[tuple[float, int]]:
    """(distance in fm, q) for every nonzero shell with r <= ell."""
    if ell_fm < a_L_fm:
        return []
    max_r_sq = int((ell_fm / a_L_fm) ** 2 + 1e-9)
    return [(a_L_fm * math.sqrt(r_sq), q)
            for r_sq, q in ShellTable(max_r_sq).entries()]


def ope_cutoff_error(ell_fm: float, eta: int, a_L_fm: float,
                     constants: PhysicalConstants = CONSTANTS) -> float:
    """Error *rate* (MeV) of dropping interactions beyond range ell.

    Multiply by evolution time for the norm error.  Minimum of the pairwise
    (eta^2) bound and the site-counting (eta) bound.
    """
    if eta < 0:
        raise DomainError(f"eta must be >= 0, got {eta}")
    if ell_fm < a_L_fm:
        raise DomainError(f"cutoff ell={ell_fm} fm below spacing {a_L_fm} fm")
    if eta == 0:
        return 0.0
    a = convert_length(a_L_fm)
    ell = convert_length(ell_fm)
    edge = ell + a
    m = constants.m_pi
    pairwise = eta * eta * (72 * yukawa_g1(edge, constants)
                            + 648 * yukawa_g2(edge, constants))
    counting = (4 * math.pi * eta / (m * m * a ** 3)) * edge \
        * yukawa_g1(edge, constants) * (720 * (m * ell + m * a + 1) + 3888)
    return min(pairwise, counting)


def choose_ope_cutoff(eps_trunc: float, t: float, eta: int, a_L_fm: float,
                      constants: PhysicalConstants = CONSTANTS,
                      max_multiple: int = 10 ** 4) -> int:
    """Smallest integer k with t * rate(k * a_L) <= eps_trunc."""
    if eps_trunc <= 0:
        raise DomainError(f"truncation budget must be positive, got {eps_trunc}")
    for k in range(1, max_multiple + 1):
        if t * ope_cutoff_error(k * a_L_fm, eta, a_L_fm, constants) <= eps_trunc:
            return k
    raise UnreachableBudgetError(
        f"no cutoff within {max_multiple} lattice units meets {eps_trunc} MeV")


def pi_max_bound(eta: int, E: float, eps_cut: float, a_L_fm: float, L: int,
                 C: float, C_I2: float,
                 constants: PhysicalConstants = CONSTANTS) -> tuple[float, float]:
    """Field and conjugate-momentum cutoffs guaranteeing state overlap
    1 - eps_cut at energy E with eta nucleons (lower bounds, pre-rounding)."""
    A, B = ab_coefficients(a_L_fm, constants)
    if A <= 0 or B <= 0:
        raise DomainError(f"a_L={a_L_fm} fm gives A={A:g}, B={B:g}; need both > 0")
    if eps_cut <= 0:
        raise DomainError(f"eps_cut must be positive, got {eps_cut}")
    a = convert_length(a_L_fm)
    g_A, f_pi, m = constants.g_A, constants.f_pi, constants.m_pi
    lead = math.sqrt(3 * L ** 3 / eps_cut) + 1
    drive = 3 * g_A / (f_pi * a * A)
    e_shift = E + 8 * eta * abs(C) + 4 * eta * abs(C_I2)
    mass_term = 9 * eta * m * m * a ** 3 * (6 * g_A / (m * m * f_pi * a ** 4)) ** 2
    pi_max = lead * (drive + math.sqrt(e_shift / A + 3 * eta * drive ** 2
                                       + mass_term / A))
    Pi_max = lead * math.sqrt(e_shift / B
                              + (3 * eta / (A * B)) * (3 * g_A / (f_pi * a)) ** 2
                              + mass_term / B)
    return pi_max, Pi_max


def boson_cutoffs(eta: int, E: float, eps_cut: float, a_L_fm: float, L: int,
                  C: float, C_I2: float,
                  constants: PhysicalConstants = CONSTANTS) -> DigitizationSpec:
    """Integer-width digitization meeting both cutoff lower bounds.

    n_b is the ceiling of log2(2 a^3 Pi_max pi_max / pi + 1); the field
    cutoff stays at its bound and the momentum cutoff absorbs the rounding
    (delta_pi = 2 pi_max / (2^n_b - 1), Pi_max = pi / (a^3 delta_pi)).
    """
    pi0, Pi0 = pi_max_bound(eta, E, eps_cut, a_L_fm, L, C, C_I2, constants)
    a = convert_length(a_L_fm)
    raw = 2 * a ** 3 * Pi0 * pi0 / math.pi + 1
    n_b = max(1, math.ceil(math.log2(raw)))
    delta_pi = 2 * pi0 / (2 ** n_b - 1)
    Pi_max = math.pi / (a ** 3 * delta_pi)
    delta_Pi = 2 * math.pi / (a ** 3 * delta_pi * 2 ** n_b)
    return DigitizationSpec(pi_max=pi0, Pi_max=Pi_max,
                            delta_pi=delta_pi, delta_Pi=delta_Pi, n_b=n_b)
