"""Analytic product-formula (Trotter) error bounds.

Closed-form p=1 and p=2 bounds for the contact-interaction model, p=1
commutator-class sums for the one-pion-exchange and dynamical-pion models,
a general nested-commutator bound for normal-ordered fermionic operators,
and the error-budget splits that tie everything to a target accuracy.

All coefficients are in MeV^(p+1); multiply by the appropriate power of the
time step (in MeV^-1) to get a dimensionless error.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .models import (CONSTANTS, DigitizationSpec, DynPiParams, OpeParams,
                     PhysicalConstants, PionlessParams, convert_length,
                     hopping_coefficient)


@dataclass(frozen=True)
class BoundReport:
    """Per-commutator-class breakdown of a product-formula error coefficient.

    For order=1 the total is the zeta (or Xi) coefficient and
    bound(t) = (t^2/2) * total.  Every contribution is nonnegative.
    """

    order: int
    classes: tuple[tuple[str, float], ...]

    def __post_init__(self):
        for label, value in self.classes:
            if value < 0:
                raise DomainError(f"class {label!r} has negative bound {value}")

    @property
    def total(self) -> float:
        return sum(v for _, v in self.classes)

    def bound(self, t: float) -> float:
        return product_formula_error(self.order, t, self.total)

    def __getitem__(self, label: str) -> float:
        for lab, value in self.classes:
            if lab == label:
                return value
        raise KeyError(label)

    def to_csv(self) -> str:
        lines = ["class,coefficient"]
        lines += [f"{label},{value!r}" for label, value in self.classes]
        lines.append(f"total,{self.total!r}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {"order": self.order,
                "classes": {label: value for label, value in self.classes},
                "total": self.total}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def pionless_p1_bound(t: float, eta: int, params: PionlessParams) -> float:
    """First-order error for the contact-interaction Hamiltonian."""
    _check_t_eta(t, eta)
    h, C, D = params.h, params.C_slash, params.D_slash
    a1 = 2 * abs(C)
    a2 = 2 * abs(3 * C + D) + abs(D)
    a3 = 2 * abs(6 * C + 4 * D) + 4 * abs(D)
    return t * t * (15 * h * h * eta
                    + 6 * h * (a1 * (eta // 2) + a2 * (eta // 3) + a3 * (eta // 4)))


def pionless_p2_bound(t: float, eta: int, params: PionlessParams) -> float:
    """Second-order error for the contact-interaction Hamiltonian."""
    _check_t_eta(t, eta)
    return t ** 3 * pionless_p2_coefficient(eta, params)


def pionless_p2_coefficient(eta: int, params: PionlessParams) -> float:
    """The t^3 coefficient of the second-order bound."""
    h, C, D = params.h, params.C_slash, params.D_slash
    f2, f3, f4 = eta // 2, eta // 3, eta // 4
    n2 = abs(C) * f2
    n3 = abs(3 * C + D) * f3
    n4 = abs(6 * C + 4 * D) * f4
    c3 = abs(D) * f3
    c4 = 4 * abs(D) * f4
    w2 = 2 * abs(C) * f2
    w3 = (abs(D) + 2 * abs(3 * C + D)) * f3
    w4 = (4 * abs(D) + 2 * abs(6 * C + 4 * D)) * f4
    u3 = abs(C / 2 + D / 6)
    u4 = abs(C / 2 + D / 3)
    q2 = 2 * C * C * f2
    q3 = 4 * u3 * (12 * u3 + abs(D)) * f3
    q4 = 24 * u4 * (6 * u4 + abs(D)) * f4
    q3p = (8 * abs(D) * u3 + (2 / 3) * D * D) * f3
    q4p = 8 * abs(D) * (6 * u4 + abs(D)) * f4
    return (1 / 12) * (125 * h ** 3 * eta
                       + 216 * h * h * (n2 + n3 + n4 + c3 + c4)
                       + 60 * h * h * (w2 + w3 + w4)
                       + 12 * h * (2 * (q2 + q3 + q4) + q3p + q4p))


def ope_p1_bound(t: float, eta: int, params: OpeParams,
                 shells: Sequence[tuple[float, int]],
                 constants: PhysicalConstants = CONSTANTS) -> BoundReport:
    """First-order commutator-class sum (zeta) for the pion-exchange model.

    ``shells`` lists the realized interaction distances as (r in fm, q(r))
    pairs with r <= the range cutoff; pass an empty sequence when the cutoff
    excludes all pairs.
    """
    _check_t_eta(t, eta)
    h = hopping_coefficient(params.a_L, constants)
    C, CI2 = abs(params.C), abs(params.C_I2)
    a = convert_length(params.a_L)
    g2 = (constants.g_A / (2 * constants.f_pi)) ** 2
    g4 = g2 * g2

    # bare radial kernel f(r)(g(r)+1); the coupling constants appear
    # explicitly in each class coefficient below
    m = constants.m_pi

    def bare_kernel(r: float) -> float:
        return (m * m * math.exp(-m * r) / r) * (2 + 3 / (m * r)
                                                 + 3 / (m * r) ** 2)

    shell_data = [(q, bare_kernel(convert_length(r_fm)))
                  for r_fm, q in shells]
    s_qu = sum(q * u for q, u in shell_data)
    s_cross = sum(qa * ua * qb * ub
                  for i, (qa, ua) in enumerate(shell_data)
                  for qb, ub in shell_data[i + 1:])
    s_same = sum((3670016 * q * (q - 1) + 524288 * q) * u * u
                 for q, u in shell_data)

    classes = (
        ("kinetic_kinetic", 30 * h * h * eta),
        ("kinetic_contact", 18 * h * C * eta),
        ("kinetic_exchange", 528 * h * CI2 * eta),
        ("contact_contact", 0.0),
        ("contact_exchange", 0.0),
        ("exchange_exchange", 60 * CI2 * CI2 * eta),
        ("kinetic_onsite_lr", (131072 / 3) * g2 * h * eta / a ** 3),
        ("contact_onsite_lr", (7168 / 3) * g2 * C * eta / a ** 3),
        ("exchange_onsite_lr", (50176 / 9) * g2 * CI2 * eta / a ** 3),
        ("onsite_lr_onsite_lr", (152320 / 27) * g4 * eta / a ** 6),
        ("kinetic_lr", (98304 / math.pi) * h * g2 * s_qu * eta),
        ("contact_lr", (1024 / math.pi) * C * g2 * s_qu * eta),
        ("exchange_lr", (43008 / (12 * math.pi)) * CI2 * g2 * s_qu * eta),
        ("onsite_lr_lr", (458752 / (27 * math.pi)) * g4 * s_qu * eta / a ** 3),
        ("lr_lr_cross", 3670016 * (1 / (12 * math.pi)) ** 2 * g4 * s_cross * eta),
        ("lr_lr_same", (1 / (12 * math.pi)) ** 2 * g4 * s_same * eta),
    )
    return BoundReport(order=1, classes=classes)


def dynpi_p1_bound(t: float, eta: int, params: DynPiParams,
                   digitization: DigitizationSpec, L: int,
                   constants: PhysicalConstants = CONSTANTS) -> BoundReport:
    """First-order commutator-class sum (Xi) for the dynamical-pion model."""
    _check_t_eta(t, eta)
    if L < 1:
        raise DomainError(f"lattice extent must be >= 1, got {L}")
    h = hopping_coefficient(params.a_L, constants)
    C, CI2 = abs(params.C), abs(params.C_I2)
    a = convert_length(params.a_L)
    g_A, f_pi, m = constants.g_A, constants.f_pi, constants.m_pi
    g = g_A / (2 * f_pi)
    pm, Pm = digitization.pi_max, digitization.Pi_max

    classes = (
        ("kinetic_kinetic", 30 * h * h * eta),
        ("kinetic_contact", 18 * h * C * eta),
        ("kinetic_exchange", 528 * h * CI2 * eta),
        ("contact_contact", 0.0),
        ("contact_exchange", 0.0),
        ("exchange_exchange", 60 * CI2 * CI2 * eta),
        ("boson_kinetic_potential",
         (36 / a ** 2 + 3 * m * m) * a ** 3 * pm * Pm * L),
        ("kinetic_axial", 2592 * g * h * pm * eta / a),
        ("axial_exchange", 6048 * g * CI2 * pm * eta / a),
        ("boson_kinetic_axial", 36 * g * Pm * eta / a),
        ("axial_axial", 20736 * g * g * pm * pm * eta / (a * a)),
        ("kinetic_weinberg", (432 * h / f_pi ** 2) * pm * Pm * eta),
        ("exchange_weinberg", (504 * CI2 / f_pi ** 2) * pm * Pm * eta),
        ("boson_potential_weinberg", (72 / f_pi ** 2) * pm * pm * eta / (a * a)),
        ("axial_weinberg",
         (g_A / (f_pi ** 3 * a)) * (72 / a ** 3 + 216 * pm * Pm) * pm * eta),
        ("weinberg_weinberg",
         384 * (1 / (4 * f_pi ** 2)) ** 2 * (3 * pm * Pm + 2 / a ** 3) * Pm * pm * eta),
    )
    return BoundReport(order=1, classes=classes)


def general_npfo_bound(p: int, localities: Sequence[int],
                       weights: Sequence[float], eta: int) -> float:
    """Nested-commutator coefficient for translation-invariant sums of
    normal-ordered fermionic operators of given localities and strengths.

    Requires p+1 locality/weight entries (one per layer entering the
    (p+1)-deep nested commutator).
    """
    if len(localities) != p + 1 or len(weights) != p + 1:
        raise DomainError(
            f"need {p + 1} locality/weight entries, got "
            f"{len(localities)}/{len(weights)}")
    if any(k < 1 for k in localities):
        raise DomainError("localities must be >= 1")
    if eta < 0:
        raise DomainError(f"eta must be >= 0, got {eta}")
    out = 1.0
    for w in weights:
        out *= abs(w)
    running = localities[0]
    for m in range(2, p + 2):
        k = localities[m - 1]
        out *= (2 * k * (k - 1)
                * (running - (m - 2)) * (running - (m - 1))
                * 2 ** (1 + min(k, running - (m - 2)) / 2))
        running += k
    k_min = min(localities)
    return out * math.ceil(eta / math.ceil(k_min / 2))


def upsilon(p: int) -> int:
    """Stage count entering the high-order recursive formula bound."""
    if p < 4 or p % 2:
        raise DomainError(f"recursive formulas need even order >= 4, got {p}")
    return 2 * 5 ** (p // 2 - 1)


def product_formula_error(p: int, t: float, coefficient: float) -> float:
    """Single-segment error for a pth-order formula with the given
    commutator coefficient.

    The coefficient convention matches the bound producers in this module:
    p=1 takes zeta (error (t^2/2) zeta), p=2 takes the full t^3 coefficient,
    and even p >= 4 takes the nested-commutator coefficient alpha.
    """
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if coefficient < 0:
        raise DomainError(f"coefficient must be >= 0, got {coefficient}")
    if p == 1:
        return t * t * coefficient / 2
    if p == 2:
        return t ** 3 * coefficient
    u = upsilon(p)
    return 2 * u ** (p + 1) * t ** (p + 1) * coefficient / (p + 1)


def steps_for_budget(p: int, t: float, coefficient: float, budget: float) -> int:
    """Fewest Trotter steps r with r * error(t/r) <= budget."""
    if budget <= 0:
        raise DomainError(f"error budget must be positive, got {budget}")
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    single = product_formula_error(p, t, coefficient)
    if single <= budget:
        return 1
    # r steps of length t/r scale the bound by r^{-p}
    return math.ceil((single / budget) ** (1 / p))


_CHANNELS = {
    ("pionless", "near-term"): ("prod",),
    ("pionless", "fault-tolerant"): ("prod", "syn"),
    ("ope", "near-term"): ("prod", "trunc"),
    ("ope", "fault-tolerant"): ("prod", "trunc", "syn"),
    ("dynpi", "near-term"): ("prod", "cut"),
    ("dynpi", "fault-tolerant"): ("prod", "cut", "syn"),
}


def compose_total_error(task: str, model: str, epsilon: float,
                        convention: str = "near-term") -> dict:
    """Split a total error budget evenly among the channels that apply.

    Channels: 'prod' (product formula, = r * per-step error), 'trunc'
    (interaction-range cutoff), 'cut' (boson Hilbert-space cutoff, budgeted
    on the 2 sqrt(2 eps_cut) trace-distance form), 'syn' (rotation
    synthesis).  For 'cut' the ledger also reports the implied eps_cut.
    """
    if task not in ("evolution", "qpe"):
        raise DomainError(f"unknown task {task!r}")
    if (model, convention) not in _CHANNELS:
        raise DomainError(f"unknown model/convention {model!r}/{convention!r}")
    if epsilon <= 0:
        raise DomainError(f"error budget must be positive, got {epsilon}")
    channels = _CHANNELS[(model, convention)]
    share = epsilon / len(channels)
    ledger = {name: share for name in channels}
    if "cut" in ledger:
        # invert 2*sqrt(2*eps_cut) = share
        ledger["eps_cut"] = (share / 2) ** 2 / 2
    return ledger


def _check_t_eta(t: float, eta: int) -> None:
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if eta < 0:
        raise DomainError(f"eta must be >= 0, got {eta}")
