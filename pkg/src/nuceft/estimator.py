"""End-to-end resource estimates: crossing-time evolution and phase
estimation, plus parameter sweeps.

The pipeline splits the total error budget into channels, sizes the range
cutoff or the boson registers from their shares, turns the commutator
coefficient into a Trotter step count, and prices the resulting circuit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .costs import dynpi_step_cost, ope_step_cost, pionless_step_cost, \
    qubit_count, t_synthesis
from .errors import DomainError, PrecisionError
from .models import (CONSTANTS, DigitizationSpec, DynPiParams, OpeParams,
                     PhysicalConstants, convert_length, pionless_params_for)
from .trotter import (compose_total_error, dynpi_p1_bound, ope_p1_bound,
                      pionless_p1_bound, pionless_p2_coefficient,
                      steps_for_budget)
from .truncation import (boson_cutoffs, choose_ope_cutoff, pi_max_bound,
                         realized_shells)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TaskSpec:
    task: str = "evolve"            # evolve | qpe
    model: str = "pionless"         # pionless | ope | dynpi
    encoding: str = "vc"            # vc | compact
    order: int = 1
    L: int = 10
    a_L: float = 2.2                # fm
    eta: int = 40
    E_kin: float = 10.0             # MeV per nucleon (evolve task)
    delta_E: float = 1.0            # MeV (qpe task)
    E_max: float = 140.0            # MeV spectral range (qpe task)
    success: float = 0.3            # qpe success probability 1 - delta
    epsilon: float = 0.1
    convention: str = "fault-tolerant"   # or near-term
    ell_units: int | None = None    # force the range cutoff (lattice units)
    n_b: int | None = None          # force the boson register width

    def __post_init__(self):
        if self.task not in ("evolve", "qpe"):
            raise DomainError(f"unknown task {self.task!r}")
        if self.epsilon <= 0:
            raise DomainError(f"error budget must be positive, got {self.epsilon}")
        if not 0 < self.success < 1:
            raise DomainError(f"success probability must be in (0, 1), "
                              f"got {self.success}")
        if self.delta_E <= 0:
            raise DomainError(f"energy resolution must be positive, "
                              f"got {self.delta_E}")


@dataclass(frozen=True)
class CostReport:
    t: float                 # evolution time per application, MeV^-1
    r: int                   # Trotter steps (total, all applications)
    depth_total: int
    rz_total: int
    T_total: float
    qubits: int
    ancillas: int
    ledger: dict
    extras: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"schema-version": SCHEMA_VERSION, "t": self.t, "r": self.r,
                "depth_total": self.depth_total, "rz_total": self.rz_total,
                "T_total": self.T_total, "qubits": self.qubits,
                "ancillas": self.ancillas, "ledger": self.ledger,
                "extras": self.extras}


def crossing_time(a_L_fm: float, L: int, E_kin: float,
                  M: float = CONSTANTS.M) -> float:
    """Time for a nucleon of the given kinetic energy to cross the lattice."""
    if L < 1:
        raise DomainError(f"lattice extent must be >= 1, got {L}")
    if E_kin <= 0 or M <= 0:
        raise DomainError("kinetic energy and mass must be positive")
    return convert_length(a_L_fm) * L * math.sqrt(M / (2 * E_kin))


def qpe_ancilla_bits(m: int, delta: float) -> int:
    """Precision bits plus the padding that boosts the success probability
    to 1 - delta."""
    if not 0 < delta < 1:
        raise DomainError(f"delta must be in (0, 1), got {delta}")
    if m < 1:
        raise DomainError(f"need at least one precision bit, got {m}")
    return m + math.ceil(math.log2(1 / (2 * delta) + 0.5))


def _forced_digitization(spec: TaskSpec, eps_cut: float, E: float,
                         C: float, C_I2: float,
                         constants: PhysicalConstants) -> DigitizationSpec:
    """Digitization with the register width pinned by the caller."""
    pi0, _ = pi_max_bound(spec.eta, E, eps_cut, spec.a_L, spec.L, C, C_I2,
                          constants)
    a = convert_length(spec.a_L)
    n_b = spec.n_b
    delta_pi = 2 * pi0 / (2 ** n_b - 1)
    Pi_max = math.pi / (a ** 3 * delta_pi)
    delta_Pi = 2 * math.pi / (a ** 3 * delta_pi * 2 ** n_b)
    return DigitizationSpec(pi_max=pi0, Pi_max=Pi_max, delta_pi=delta_pi,
                            delta_Pi=delta_Pi, n_b=n_b)


def _coefficient(spec: TaskSpec, t: float, ledger: dict,
                 constants: PhysicalConstants) -> tuple[float, dict]:
    """Commutator coefficient for steps_for_budget plus the sized
    intermediates (range cutoff or digitization)."""
    extras: dict = {}
    if spec.model == "pionless":
        params = pionless_params_for(spec.a_L)
        if spec.order == 1:
            # budgeted as (t^2/2) * coefficient; the closed form at t = 1
            # is exactly that coefficient
            coeff = pionless_p1_bound(1.0, spec.eta, params)
        elif spec.order == 2:
            coeff = pionless_p2_coefficient(spec.eta, params)
        else:
            raise DomainError(
                f"no closed-form bound for order {spec.order}")
        return coeff, extras

    if spec.order != 1:
        raise DomainError(
            f"model {spec.model!r} is only bounded for order 1")

    if spec.model == "ope":
        if spec.ell_units is not None:
            ell = spec.ell_units
        else:
            ell = choose_ope_cutoff(ledger["trunc"], t, spec.eta, spec.a_L,
                                    constants)
        params = OpeParams.from_lecs(spec.a_L, ell * spec.a_L)
        shells = realized_shells(ell * spec.a_L, spec.a_L)
        report = ope_p1_bound(t, spec.eta, params, shells, constants)
        extras["ell_units"] = ell
        extras["zeta"] = report.total
        return report.total, extras

    if spec.model == "dynpi":
        eps_cut = ledger["eps_cut"]
        E = spec.E_max if spec.task == "qpe" else spec.eta * spec.E_kin
        lecs = OpeParams.from_lecs(spec.a_L, spec.a_L)
        if spec.n_b is not None:
            dig = _forced_digitization(spec, eps_cut, E, lecs.C, lecs.C_I2,
                                       constants)
        else:
            dig = boson_cutoffs(spec.eta, E, eps_cut, spec.a_L, spec.L,
                                lecs.C, lecs.C_I2, constants)
        params = DynPiParams(spec.a_L, lecs.C, lecs.C_I2, dig)
        report = dynpi_p1_bound(t, spec.eta, params, dig, spec.L, constants)
        extras["n_b"] = dig.n_b
        extras["pi_max"] = dig.pi_max
        extras["Pi_max"] = dig.Pi_max
        extras["xi"] = report.total
        return report.total, extras

    raise DomainError(f"unknown model {spec.model!r}")


def _step_cost(spec: TaskSpec, extras: dict, controlled: bool):
    if spec.model == "pionless":
        return pionless_step_cost(spec.encoding, spec.order, controlled,
                                  spec.L)
    if spec.model == "ope":
        return ope_step_cost(extras["ell_units"], spec.L, controlled)
    return dynpi_step_cost(extras["n_b"], spec.L, controlled)


def estimate_evolution(spec: TaskSpec,
                       constants: PhysicalConstants = CONSTANTS) -> CostReport:
    """Resource estimate for crossing-time evolution."""
    if spec.task != "evolve":
        raise DomainError(f"expected an evolve task, got {spec.task!r}")
    t = crossing_time(spec.a_L, spec.L, spec.E_kin, constants.M)
    ledger = compose_total_error("evolution", spec.model, spec.epsilon,
                                 spec.convention)
    coeff, extras = _coefficient(spec, t, ledger, constants)
    r = steps_for_budget(spec.order, t, coeff, ledger["prod"])
    step = _step_cost(spec, extras, controlled=False)
    rz_total = r * step.rz_count
    if "syn" in ledger:
        syn_budget = ledger["syn"]
    else:
        # near-term circuits apply rotations natively; the T count below
        # is informational, priced against the full budget
        syn_budget = spec.epsilon
        ledger = dict(ledger, syn_nominal=spec.epsilon)
    T_total = t_synthesis(rz_total, syn_budget)
    qubits = qubit_count(spec.model, spec.encoding, spec.L,
                         extras.get("n_b", 0), "evolve")
    extras["coefficient"] = coeff
    extras["step_depth"] = step.depth_2q
    return CostReport(t=t, r=r, depth_total=r * step.depth_2q,
                      rz_total=rz_total, T_total=T_total, qubits=qubits,
                      ancillas=0, ledger=ledger, extras=extras)


def estimate_qpe(spec: TaskSpec,
                 constants: PhysicalConstants = CONSTANTS) -> CostReport:
    """Resource estimate for iterative phase estimation to delta_E."""
    if spec.task != "qpe":
        raise DomainError(f"expected a qpe task, got {spec.task!r}")
    if spec.delta_E >= spec.E_max:
        raise PrecisionError(
            f"energy resolution {spec.delta_E} MeV must be finer than the "
            f"spectral range {spec.E_max} MeV")
    t = 2 * math.pi / spec.E_max
    m = math.ceil(math.log2(spec.E_max / spec.delta_E))
    delta = 1 - spec.success
    n = qpe_ancilla_bits(m, delta)
    applications = 2 ** n - 1

    channels = compose_total_error("qpe", spec.model, spec.epsilon,
                                   spec.convention)
    # the quadrature split leaves sqrt(3) pi / 2^m of operator error,
    # shared equally by the same channels as in the evolution task
    names = [k for k in channels if k != "eps_cut"]
    share = math.sqrt(3) * math.pi / (len(names) * 2 ** m)
    ledger = {name: share for name in names}
    if "cut" in ledger:
        ledger["eps_cut"] = (share / 2) ** 2 / 2

    # truncation-style channels accrue over the total evolved time
    total_time = t * applications
    coeff, extras = _coefficient(spec, total_time, ledger, constants)
    r_app = steps_for_budget(spec.order, t, coeff,
                             ledger["prod"] / applications)
    total_steps = r_app * applications
    step = _step_cost(spec, extras, controlled=True)
    rz_total = total_steps * step.rz_count
    if "syn" in ledger:
        syn_budget = ledger["syn"]
    else:
        syn_budget = spec.epsilon
        ledger = dict(ledger, syn_nominal=spec.epsilon)
    T_total = t_synthesis(rz_total, syn_budget)
    qubits = qubit_count(spec.model, spec.encoding, spec.L,
                         extras.get("n_b", 0), "qpe")
    data = qubit_count(spec.model, spec.encoding, spec.L,
                       extras.get("n_b", 0), "evolve")
    extras.update(m=m, n=n, applications=applications, r_per_application=r_app,
                  coefficient=coeff, step_depth=step.depth_2q)
    return CostReport(t=t, r=total_steps,
                      depth_total=total_steps * step.depth_2q,
                      rz_total=rz_total, T_total=T_total, qubits=qubits,
                      ancillas=qubits - data, ledger=ledger, extras=extras)


def estimate(spec: TaskSpec,
             constants: PhysicalConstants = CONSTANTS) -> CostReport:
    if spec.task == "qpe":
        return estimate_qpe(spec, constants)
    return estimate_evolution(spec, constants)


SWEEP_AXES = ("eta", "L", "epsilon", "ell", "n_b")

SWEEP_HEADER = ("axis", "value", "r", "depth", "rz", "T", "qubits",
                "ell_or_nb", "notes")


def _sweep_point(template: TaskSpec, axis: str, value) -> dict:
    if axis == "eta":
        spec = replace(template, eta=int(value))
    elif axis == "L":
        spec = replace(template, L=int(value))
    elif axis == "epsilon":
        spec = replace(template, epsilon=float(value))
    elif axis == "ell":
        spec = replace(template, ell_units=int(value))
    elif axis == "n_b":
        spec = replace(template, n_b=int(value))
    else:
        raise DomainError(f"unknown sweep axis {axis!r}")
    row = {"axis": axis, "value": value, "r": "", "depth": "", "rz": "",
           "T": "", "qubits": "", "ell_or_nb": "", "notes": ""}
    try:
        rep = estimate(spec)
    except DomainError as exc:
        row["notes"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(r=rep.r, depth=rep.depth_total, rz=rep.rz_total,
               T=repr(rep.T_total), qubits=rep.qubits,
               ell_or_nb=rep.extras.get("ell_units",
                                        rep.extras.get("n_b", "")))
    return row


def sweep(template: TaskSpec, axis: str, grid, jobs: int = 1) -> list[dict]:
    """One estimate per grid value; failures become row-level notes."""
    values = list(grid)
    if not values:
        raise DomainError("sweep grid is empty")
    if axis not in SWEEP_AXES:
        raise DomainError(f"unknown sweep axis {axis!r} "
                          f"(choose from {SWEEP_AXES})")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda v: _sweep_point(template, axis, v),
                                 values))
    else:
        rows = [_sweep_point(template, axis, v) for v in values]
    return rows
