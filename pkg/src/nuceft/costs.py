"""Per-Trotter-step circuit costs: 2-qubit depth, Rz counts, T-gate counts.

Closed-form transcriptions only; no circuits are constructed.  Depth means
2-qubit-gate depth assuming all-to-all connectivity, Rz counts feed the
repeat-until-success synthesis cost, and everything comes in controlled and
uncontrolled variants (controlled steps are what phase estimation applies).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DomainError

# Single-axis hopping-layer depths for the auxiliary-qubit encoding; the
# three axes differ because the stabilizer dressing differs per direction.
KINETIC_DEPTH = {
    ("x", False): 16, ("y", False): 22, ("z", False): 26,
    ("x", True): 20, ("y", True): 26, ("z", True): 30,
}

# All hopping axes look alike in the compact encoding.
COMPACT_KINETIC_DEPTH = {False: 10, True: 14}

# On-site density-density layer (same circuit in both encodings).
CONTACT_DEPTH = {False: 8, True: 22}

# One-pion-exchange model on-site pieces: plain contact and the
# isospin-exchange contact.
OPE_CONTACT_DEPTH = {False: 6, True: 26}
OPE_EXCHANGE_DEPTH = {False: 54, True: 98}

# One site-pair class of the finite-range potential.
LONG_RANGE_PAIR_DEPTH = {False: 14336, True: 16384}

_PIONLESS_DEPTH = {
    ("vc", 1, False): 520, ("vc", 1, True): 630,
    ("vc", 2, False): 1014, ("vc", 2, True): 1230,
    ("compact", 1, False): 68, ("compact", 1, True): 106,
    ("compact", 2, False): 126, ("compact", 2, True): 190,
}


@dataclass(frozen=True)
class StepCost:
    """Cost of one Trotter step: depth, rotation count, and provenance."""

    depth_2q: int
    rz_count: int
    controlled: bool
    encoding: str
    model: str
    order: int

    def __post_init__(self):
        if self.depth_2q < 0 or self.rz_count < 0:
            raise DomainError("circuit costs must be nonnegative")

    def to_json_dict(self) -> dict:
        return {"depth_2q": self.depth_2q, "rz_count": self.rz_count,
                "controlled": self.controlled, "encoding": self.encoding,
                "model": self.model, "order": self.order}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def pionless_step_cost(encoding: str, order: int, controlled: bool,
                       L: int = 1) -> StepCost:
    """Step cost for the contact-interaction model."""
    if order not in (1, 2):
        raise DomainError(f"product-formula order must be 1 or 2, got {order}")
    if encoding not in ("vc", "compact"):
        raise DomainError(f"unknown encoding {encoding!r}")
    if L < 1:
        raise DomainError(f"lattice extent must be >= 1, got {L}")
    depth = _PIONLESS_DEPTH[(encoding, order, controlled)]
    rz = (84 if controlled else 42) * L ** 3
    return StepCost(depth, rz, controlled, encoding, "pionless", order)


def interaction_ball_sites(ell_units: float) -> int:
    """Number of lattice sites within the interaction range, padded by one
    spacing: ceil(4 pi (ell/a + 1)^3 / 3)."""
    if ell_units < 1:
        raise DomainError(
            f"range cutoff must be >= 1 lattice unit, got {ell_units}")
    return math.ceil(4 * math.pi * (ell_units + 1) ** 3 / 3)


def ope_step_cost(ell_units: float, L: int, controlled: bool) -> StepCost:
    """Step cost for the one-pion-exchange model with range cutoff
    ell = ell_units * a_L (p=1 only)."""
    if L < 1:
        raise DomainError(f"lattice extent must be >= 1, got {L}")
    R = interaction_ball_sites(ell_units)
    if controlled:
        depth = 732 + 16384 * R
    else:
        depth = 572 + 14336 * R
    rz = (52 + 1024 * R) * L ** 3
    if controlled:
        rz *= 2
    return StepCost(depth, rz, controlled, "vc", "ope", 1)


def boson_mass_depth(n_b: int, controlled: bool) -> int:
    """Depth of the on-site field-squared layer."""
    half = -(-n_b // 2)
    if controlled:
        return n_b ** 2 + 2 * half + 3 * n_b - 4
    return 2 * half + 2 * n_b - 4


def boson_gradient_depth(n_b: int, controlled: bool) -> int:
    """Depth of the nearest-neighbor field-difference-squared layer."""
    half = -(-n_b // 2)
    if controlled:
        return 24 * n_b ** 2 + 12 * half + 36 * n_b - 24
    return 12 * half + 24 * n_b - 24


def boson_momentum_depth(n_b: int, controlled: bool) -> int:
    """Depth of the conjugate-momentum-squared layer (QFT sandwich)."""
    half = -(-n_b // 2)
    if controlled:
        return 3 * n_b ** 2 + 2 * half + n_b - 4
    return 2 * n_b ** 2 + 2 * half - 4


def axial_coupling_depth(n_b: int, controlled: bool) -> int:
    """Depth of the nucleon-field axial-coupling layer."""
    return 1296 + (1728 if controlled else 864) * n_b


def weinberg_term_depth(n_b: int, controlled: bool) -> int:
    """Depth of the two-field nucleon-bilinear layer."""
    if controlled:
        return 146 * n_b ** 2 + 190 * n_b + 144
    return 98 * n_b ** 2 + 94 * n_b + 96


def dynpi_step_cost(n_b: int, L: int, controlled: bool,
                    strict_statement: bool = False) -> StepCost:
    """Step cost for the dynamical-pion model (p=1 only).

    The rotation count defaults to the per-term tally (33 n_b^2 + 90 n_b
    + 64) L^3; strict_statement swaps in the looser published headline
    polynomial (45 n_b^2 + 114 n_b + 76) L^3.
    """
    if n_b < 1:
        raise DomainError(f"register width n_b must be >= 1, got {n_b}")
    if L < 1:
        raise DomainError(f"lattice extent must be >= 1, got {L}")
    half = -(-n_b // 2)
    if controlled:
        boson = 28 * n_b ** 2 + 16 * half + 40 * n_b - 32
        depth = max(732, boson) + 146 * n_b ** 2 + 1918 * n_b + 1440
    else:
        boson = 2 * n_b ** 2 + 16 * half + 26 * n_b - 32
        depth = max(572, boson) + 98 * n_b ** 2 + 958 * n_b + 1392
    if strict_statement:
        rz = (45 * n_b ** 2 + 114 * n_b + 76) * L ** 3
    else:
        rz = (33 * n_b ** 2 + 90 * n_b + 64) * L ** 3
    if controlled:
        rz *= 2
    return StepCost(depth, rz, controlled, "vc", "dynpi", 1)


def t_synthesis(total_rz: int, eps_syn_total: float) -> float:
    """Expected T count to synthesize total_rz rotations within a shared
    accuracy budget, split evenly per rotation."""
    if total_rz < 1:
        raise DomainError(f"need at least one rotation, got {total_rz}")
    if eps_syn_total <= 0:
        raise DomainError(
            f"synthesis budget must be positive, got {eps_syn_total}")
    per_gate = 1.15 * math.log2(2 * total_rz / eps_syn_total) + 9.2
    return total_rz * per_gate


def qubit_count(model: str, encoding: str, L: int, n_b: int = 0,
                task: str = "evolve") -> int:
    """Total qubits (data plus ancillas) for a task.

    Iterative phase estimation adds one control ancilla; for the
    dynamical-pion model its controlled step also needs one ancilla per
    fermionic register and per bosonic register at each site.
    """
    if L < 1:
        raise DomainError(f"lattice extent must be >= 1, got {L}")
    if task not in ("evolve", "qpe"):
        raise DomainError(f"unknown task {task!r}")
    if model in ("pionless", "ope"):
        if encoding == "vc":
            data = 6 * L ** 3
        elif encoding == "compact":
            if model == "ope":
                raise DomainError(
                    "the finite-range model is only costed in the "
                    "auxiliary-qubit encoding")
            data = 10 * L ** 3
        else:
            raise DomainError(f"unknown encoding {encoding!r}")
    elif model == "dynpi":
        if n_b < 1:
            raise DomainError(
                f"dynpi needs a register width n_b >= 1, got {n_b}")
        data = 6 * L ** 3 + 3 * L ** 3 * n_b
    else:
        raise DomainError(f"unknown model {model!r}")
    if task == "qpe":
        data += 1
        if model == "dynpi":
            data += 4 * L ** 3
    return data
