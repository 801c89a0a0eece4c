"""Self-check suites behind the ``verify`` CLI command.

Each suite returns a list of (check name, passed, detail) triples so the
CLI and the test suite can share the exact same machinery.  All random
checks use fixed seeds; a verify run is deterministic.
"""

from __future__ import annotations

import math

import numpy as np

from .encodings import (LatticeSpec, QubitLayout, encode_hopping,
                        encode_ladder, encode_number, vc_stabilizers)
from .errors import DomainError
from .fock import (ANNIHILATE, CREATE, NUMBER, FermionSum, FermionTerm,
                   eta_seminorm, exact_evolution_error, fermion_commutator)
from .models import pionless_layers, pionless_params_for
from .pauli import (PauliString, PauliSum, commutator_sum, dense_matrix,
                    multiply, partition_commuting_layers)
from .trotter import (pionless_p1_bound, pionless_p2_coefficient)

Check = tuple[str, bool, str]


def _random_string(rng: np.random.Generator, n_qubits: int) -> PauliString:
    x = int(rng.integers(0, 1 << n_qubits))
    z = int(rng.integers(0, 1 << n_qubits))
    return PauliString(n_qubits, x, z, int(rng.integers(0, 4)))


def verify_pauli(trials: int = 100) -> list[Check]:
    rng = np.random.default_rng(20260823)
    n = 5
    bad_mult = 0
    bad_comm = 0
    for _ in range(trials):
        a = _random_string(rng, n)
        b = _random_string(rng, n)
        prod = multiply(a, b)
        if not np.allclose(prod.dense(), a.dense() @ b.dense(), atol=1e-12):
            bad_mult += 1
        brackets = a.dense() @ b.dense() - b.dense() @ a.dense()
        vanishes = bool(np.allclose(brackets, 0, atol=1e-12))
        if a.commutes_with(b) != vanishes:
            bad_comm += 1
    checks = [
        ("pauli multiply matches dense product",
         bad_mult == 0, f"{trials - bad_mult}/{trials} ok"),
        ("pauli commutes_with matches dense commutator",
         bad_comm == 0, f"{trials - bad_comm}/{trials} ok"),
    ]

    terms = []
    for _ in range(40):
        s = _random_string(rng, n)
        terms.append(PauliSum(n, [(1.0, PauliString(n, s.x_mask, s.z_mask))]))
    layers = partition_commuting_layers(terms)
    valid = True
    by_layer: dict[int, list[PauliSum]] = {}
    for term, lay in zip(terms, layers):
        by_layer.setdefault(lay, []).append(term)
    for members in by_layer.values():
        for i, ti in enumerate(members):
            for tj in members[i + 1:]:
                if ti.support & tj.support or not ti.commutes_with(tj):
                    valid = False
    checks.append(("greedy layers are disjoint and commuting", valid,
                   f"{len(by_layer)} layers over {len(terms)} terms"))

    rand_sums = []
    for _ in range(20):
        rand_sums.append(PauliSum(n, [
            (complex(rng.normal(), rng.normal()), _random_string(rng, n))
            for _ in range(3)]))
    bad_sum = 0
    for i in range(0, 20, 2):
        a, b = rand_sums[i], rand_sums[i + 1]
        lhs = dense_matrix(commutator_sum(a, b))
        rhs = dense_matrix(a) @ dense_matrix(b) - dense_matrix(b) @ dense_matrix(a)
        if not np.allclose(lhs, rhs, atol=1e-10):
            bad_sum += 1
    checks.append(("sum commutator matches dense commutator",
                   bad_sum == 0, f"{10 - bad_sum}/10 ok"))
    return checks


def _anticommutator(a: PauliSum, b: PauliSum) -> PauliSum:
    return a * b + b * a


def _is_zero(p: PauliSum, tol: float = 1e-12) -> bool:
    return all(abs(c) <= tol for c, _ in p)


def _is_identity(p: PauliSum, tol: float = 1e-12) -> bool:
    terms = [(c, s) for c, s in p if abs(c) > tol]
    if len(terms) != 1:
        return False
    c, s = terms[0]
    return s.is_identity() and abs(c - 1.0) <= tol


def verify_encodings() -> list[Check]:
    checks: list[Check] = []
    lat = LatticeSpec(2, 2, 1, 2.2)
    n_modes = 4 * lat.n_sites

    for encoding in ("jw", "vc"):
        layout = QubitLayout(encoding, lat)
        ladders = {}
        for r in range(lat.n_sites):
            site = lat.site_at(r)
            for sp in range(4):
                mode = 4 * r + sp
                ladders[mode] = (encode_ladder(layout, site, sp, ANNIHILATE),
                                 encode_ladder(layout, site, sp, CREATE))
        ok = True
        for i in range(n_modes):
            for j in range(n_modes):
                a_i, adag_i = ladders[i]
                a_j, adag_j = ladders[j]
                if not _is_zero(_anticommutator(a_i, a_j)):
                    ok = False
                mixed = _anticommutator(a_i, adag_j)
                if i == j:
                    if not _is_identity(mixed):
                        ok = False
                elif not _is_zero(mixed):
                    ok = False
        checks.append((f"{encoding} ladders satisfy the anticommutation "
                       f"relations", ok, f"{n_modes}x{n_modes} mode pairs"))

    layout = QubitLayout("vc", lat)
    stabs = vc_stabilizers(layout)
    encoded = []
    for si, sj, _axis in lat.bonds():
        for sp in range(4):
            encoded.append(encode_hopping(layout, si, sj, sp))
    for r in range(lat.n_sites):
        for sp in range(4):
            encoded.append(encode_number(layout, lat.site_at(r), sp))
    ok = True
    for stab in stabs:
        wrap = PauliSum.from_string(1.0, stab)
        for term in encoded:
            if not wrap.commutes_with(term):
                ok = False
    checks.append(("vc stabilizers commute with every encoded term", ok,
                   f"{len(stabs)} stabilizers x {len(encoded)} terms"))

    lat3 = LatticeSpec(2, 2, 2, 2.2)
    layout3 = QubitLayout("vc", lat3)
    want = {0: 7, 1: 10, 2: 12}
    seen = {0: 0, 1: 0, 2: 0}
    for si, sj, axis in lat3.bonds():
        h = encode_hopping(layout3, si, sj, 0)
        seen[axis] = max(seen[axis], max(s.weight for _, s in h))
    ok = seen == want
    checks.append(("vc hopping weights per axis are 7/10/12", ok,
                   f"observed {seen[0]}/{seen[1]}/{seen[2]}"))

    compact = QubitLayout("compact", lat3)
    w_max = 0
    for si, sj, _axis in lat3.bonds():
        h = encode_hopping(compact, si, sj, 0)
        w_max = max(w_max, max(s.weight for _, s in h))
    checks.append(("compact hopping weight at most 4", w_max <= 4,
                   f"observed {w_max}"))
    return checks


def _random_npfo_factors(rng: np.random.Generator,
                         modes: list[int]) -> tuple:
    """Canonical NPFO factors over exactly these modes."""
    k = len(modes)
    pairs = int(rng.integers(0, k // 2 + 1))
    shuffled = list(rng.permutation(modes))
    creates = sorted(shuffled[:pairs])
    annihs = sorted(shuffled[pairs:2 * pairs])
    numbers = sorted(shuffled[2 * pairs:])
    return tuple([(m, CREATE) for m in creates]
                 + [(m, ANNIHILATE) for m in annihs]
                 + [(m, NUMBER) for m in numbers])


def verify_seminorm(trials: int = 200) -> list[Check]:
    rng = np.random.default_rng(41)
    norm_bad = 0
    for _ in range(trials):
        n_modes = int(rng.integers(4, 13))
        order = list(rng.permutation(n_modes))
        tuples = []
        while order:
            size = int(rng.integers(1, min(4, len(order)) + 1))
            tuples.append(sorted(order[:size]))
            order = order[size:]
            if rng.random() < 0.3:
                break
        terms = []
        j_max = 0.0
        k_min = None
        for modes in tuples:
            w = float(rng.uniform(-2.0, 2.0))
            terms.append(FermionTerm(w, _random_npfo_factors(rng, modes)))
            j_max = max(j_max, abs(w))
            k_min = len(modes) if k_min is None else min(k_min, len(modes))
        x = FermionSum(n_modes, terms)
        eta = int(rng.integers(0, n_modes + 1))
        bound = j_max * min(math.ceil(eta / math.ceil(k_min / 2)),
                            len(tuples)) if eta else 0.0
        if eta_seminorm(x, eta) > bound + 1e-9:
            norm_bad += 1
    checks = [("disjoint NPFO sums respect the occupancy seminorm bound",
               norm_bad == 0, f"{trials - norm_bad}/{trials} ok")]

    comm_bad = 0
    tried = 0
    while tried < trials:
        n_modes = int(rng.integers(4, 11))
        k_a = int(rng.integers(2, min(5, n_modes) + 1))
        k_b = int(rng.integers(2, min(5, n_modes) + 1))
        modes_a = sorted(rng.choice(n_modes, size=k_a, replace=False).tolist())
        modes_b = sorted(rng.choice(n_modes, size=k_b, replace=False).tolist())
        if not set(modes_a) & set(modes_b):
            continue
        t_a = FermionTerm(1.0, _random_npfo_factors(rng, modes_a))
        t_b = FermionTerm(1.0, _random_npfo_factors(rng, modes_b))
        comm = fermion_commutator(FermionSum(n_modes, [t_a]),
                                  FermionSum(n_modes, [t_b]))
        live = [t for t in comm.terms if abs(t.weight) > 1e-12]
        if not live:
            continue
        tried += 1
        if len(live) > 2 ** (1 + min(k_a, k_b) / 2):
            comm_bad += 1
        if max(t.locality for t in live) > k_a + k_b - 1:
            comm_bad += 1
    checks.append(("NPFO commutators respect the term-count and locality "
                   "bounds", comm_bad == 0, f"{trials - comm_bad}/{trials} ok"))
    return checks


def verify_trotter() -> list[Check]:
    lat = LatticeSpec(2, 1, 1, 2.2)
    params = pionless_params_for(2.2)
    layers = pionless_layers(lat, params)
    grid_t = (0.05, 0.2, 0.5)
    grid_eta = (1, 2, 3)
    grid_r = (1, 2, 4)
    violations = 0
    total = 0
    for t in grid_t:
        for eta in grid_eta:
            for p in (1, 2):
                if p == 1:
                    coeff = pionless_p1_bound(1.0, eta, params)
                else:
                    coeff = pionless_p2_coefficient(eta, params)
                for r in grid_r:
                    exact = exact_evolution_error(layers, t, p, r, eta)
                    if p == 1:
                        bound = t * t * coeff / r
                    else:
                        bound = t ** 3 * coeff / r ** 2
                    total += 1
                    if exact > bound * (1 + 1e-9):
                        violations += 1
    return [("exact Trotter error never exceeds the analytic bound",
             violations == 0, f"{total - violations}/{total} grid points ok")]


SUITES = {
    "pauli": verify_pauli,
    "encodings": verify_encodings,
    "seminorm": verify_seminorm,
    "trotter": verify_trotter,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        out: list[Check] = []
        for key in ("pauli", "encodings", "seminorm", "trotter"):
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise DomainError(f"unknown verify suite {name!r} "
                          f"(choose from pauli, encodings, seminorm, "
                          f"trotter, all)")
    return SUITES[name]()
