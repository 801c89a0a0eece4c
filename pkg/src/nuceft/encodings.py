"""Fermion-to-qubit encodings on an open 3D cubic lattice.

Three encodings are provided:

* ``jw``: plain Jordan-Wigner with one qubit per fermionic mode, mode index
  4*raster + species.
* ``vc``: locality-preserving encoding with two auxiliary modes (mu, nu) per
  site, six qubits per site.  Hopping along y (z) is dressed with the product
  of auxiliary Majorana operators i*mu(i)*mubar(j) (i*nu(i)*nubar(j)) so the
  Z strings cancel and the image stays geometrically local.  The code space
  is fixed by one stabilizer per directed path edge; paths are chosen so that
  every y bond and every z bond is a path edge.
* ``compact``: per-species edge/vertex construction with face ancillas,
  stacked four times (one independent copy per species).  Only
  parity-preserving composites (hopping, number) are representable.

The raster order walks each x-y plane in an x-major boustrophedon and stacks
planes along z, so x-neighbors are always adjacent in the 1D mode order.
Species order within a site: up-proton, down-proton, up-neutron, down-neutron.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionError, GeometryError, UnsupportedOperatorError
from .fock import ANNIHILATE, CREATE, NUMBER, FermionSum
from .pauli import PauliString, PauliSum, multiply

N_SPECIES = 4
SPECIES_NAMES = ("up_p", "down_p", "up_n", "down_n")

# intra-site qubit offsets in the VC encoding
_VC_MU = 4
_VC_NU = 5


@dataclass(frozen=True)
class LatticeSpec:
    """Open cubic lattice: site extents per axis and spacing in fm."""

    Lx: int
    Ly: int
    Lz: int
    a_L: float

    def __post_init__(self):
        if min(self.Lx, self.Ly, self.Lz) < 1:
            raise GeometryError(f"extents must be >= 1, got "
                                f"({self.Lx}, {self.Ly}, {self.Lz})")
        if not self.a_L > 0:
            raise GeometryError(f"lattice spacing must be positive, got {self.a_L}")

    @classmethod
    def cubic(cls, L: int, a_L: float) -> "LatticeSpec":
        return cls(L, L, L, a_L)

    @property
    def n_sites(self) -> int:
        return self.Lx * self.Ly * self.Lz

    def contains(self, site: tuple[int, int, int]) -> bool:
        x, y, z = site
        return 0 <= x < self.Lx and 0 <= y < self.Ly and 0 <= z < self.Lz

    def raster_index(self, site: tuple[int, int, int]) -> int:
        """Position of a site along the snaking 1D ordering."""
        x, y, z = site
        if not self.contains(site):
            raise GeometryError(f"site {site} outside lattice")
        row_x = x if y % 2 == 0 else self.Lx - 1 - x
        return z * self.Lx * self.Ly + y * self.Lx + row_x

    def site_at(self, raster: int) -> tuple[int, int, int]:
        if not 0 <= raster < self.n_sites:
            raise GeometryError(f"raster index {raster} out of range")
        z, rem = divmod(raster, self.Lx * self.Ly)
        y, row_x = divmod(rem, self.Lx)
        x = row_x if y % 2 == 0 else self.Lx - 1 - row_x
        return (x, y, z)

    def sites(self):
        """All sites in raster order."""
        for r in range(self.n_sites):
            yield self.site_at(r)

    def bonds(self):
        """Nearest-neighbor bonds, site-major: per site in raster order,
        emit its +x, +y, +z neighbors (when present)."""
        for site in self.sites():
            x, y, z = site
            for axis, other in enumerate(((x + 1, y, z), (x, y + 1, z), (x, y, z + 1))):
                if self.contains(other):
                    yield site, other, axis

    def bond_axis(self, site_i, site_j) -> int:
        """Axis (0, 1, 2) of a nearest-neighbor pair; rejects non-neighbors."""
        if not (self.contains(site_i) and self.contains(site_j)):
            raise GeometryError(f"site outside lattice: {site_i}, {site_j}")
        diffs = [abs(a - b) for a, b in zip(site_i, site_j)]
        if sorted(diffs) != [0, 0, 1]:
            raise GeometryError(f"sites {site_i} and {site_j} are not nearest neighbors")
        return diffs.index(1)


def _snake(outer: int, inner: int):
    """Walk an outer x inner grid column by column, alternating direction."""
    for o in range(outer):
        rng = range(inner) if o % 2 == 0 else range(inner - 1, -1, -1)
        for i in rng:
            yield o, i


def _mu_path_edges(lat: LatticeSpec) -> list[tuple[int, int]]:
    """Directed path edges in each x-y plane covering every y bond."""
    edges = []
    for z in range(lat.Lz):
        walk = [lat.raster_index((x, y, z)) for x, y in _snake(lat.Lx, lat.Ly)]
        edges.extend(zip(walk, walk[1:]))
    return edges


def _nu_path_edges(lat: LatticeSpec) -> list[tuple[int, int]]:
    """Directed path edges in each y-z plane covering every z bond."""
    edges = []
    for x in range(lat.Lx):
        walk = [lat.raster_index((x, y, z)) for y, z in _snake(lat.Ly, lat.Lz)]
        edges.extend(zip(walk, walk[1:]))
    return edges


class QubitLayout:
    """Site/role -> qubit index map for one encoding on one lattice."""

    def __init__(self, encoding: str, lattice: LatticeSpec):
        if encoding not in ("jw", "vc", "compact"):
            raise ValueError(f"unknown encoding {encoding!r}")
        self.encoding = encoding
        self.lattice = lattice
        n = lattice.n_sites
        if encoding == "jw":
            self.qubits_per_site = 4
            self.total_qubits = 4 * n
        elif encoding == "vc":
            self.qubits_per_site = 6
            self.total_qubits = 6 * n
            mu = _mu_path_edges(lattice)
            nu = _nu_path_edges(lattice)
            self.mu_edges = {frozenset(e): e for e in mu}
            self.nu_edges = {frozenset(e): e for e in nu}
        else:
            # four stacked single-species codes, 2.5 qubits per mode budgeted
            self._block = math.ceil(2.5 * n)
            self.qubits_per_site = 10
            self.total_qubits = 4 * self._block
            self._faces = {f: k for k, f in enumerate(_colored_faces(lattice))}

    def qubit(self, site: tuple[int, int, int], species: int) -> int:
        """Qubit holding the occupation of (site, species)."""
        if not 0 <= species < N_SPECIES:
            raise DimensionError(f"species index {species} out of range")
        r = self.lattice.raster_index(site)
        if self.encoding == "jw":
            return 4 * r + species
        if self.encoding == "vc":
            return 6 * r + species
        return species * self._block + r

    def aux_qubit(self, site: tuple[int, int, int], which: str) -> int:
        if self.encoding != "vc":
            raise UnsupportedOperatorError("auxiliary modes exist only in the vc encoding")
        offset = {"mu": _VC_MU, "nu": _VC_NU}[which]
        return 6 * self.lattice.raster_index(site) + offset

    def face_qubit(self, species: int, face) -> int:
        if self.encoding != "compact":
            raise UnsupportedOperatorError("face ancillas exist only in the compact encoding")
        return species * self._block + self.lattice.n_sites + self._faces[face]


def _colored_faces(lat: LatticeSpec):
    """Faces carrying an ancilla: anchor parity (x+y+z) even, checkerboard.

    A face is (orientation, x, y, z) with (x, y, z) its minimum corner.
    """
    out = []
    for z in range(lat.Lz):
        for y in range(lat.Ly):
            for x in range(lat.Lx):
                if (x + y + z) % 2 != 0:
                    continue
                if x + 1 < lat.Lx and y + 1 < lat.Ly:
                    out.append(("xy", x, y, z))
                if x + 1 < lat.Lx and z + 1 < lat.Lz:
                    out.append(("xz", x, y, z))
                if y + 1 < lat.Ly and z + 1 < lat.Lz:
                    out.append(("yz", x, y, z))
    return out


def _edge_faces(lat: LatticeSpec, site, axis):
    """Faces containing a given bond (candidates; existing ones returned)."""
    x, y, z = site
    if axis == 0:
        cands = [("xy", x, y, z), ("xy", x, y - 1, z), ("xz", x, y, z), ("xz", x, y, z - 1)]
    elif axis == 1:
        cands = [("xy", x, y, z), ("xy", x - 1, y, z), ("yz", x, y, z), ("yz", x, y, z - 1)]
    else:
        cands = [("xz", x, y, z), ("xz", x - 1, y, z), ("yz", x, y, z), ("yz", x, y - 1, z)]
    out = []
    for o, fx, fy, fz in cands:
        if fx < 0 or fy < 0 or fz < 0:
            continue
        spans = {"xy": (1, 1, 0), "xz": (1, 0, 1), "yz": (0, 1, 1)}[o]
        if fx + spans[0] < lat.Lx and fy + spans[1] < lat.Ly and fz + spans[2] < lat.Lz:
            out.append((o, fx, fy, fz))
    return out


# ---------------------------------------------------------------------------
# ladder operators


def _jw_ladder(n_qubits: int, mode: int, kind: str) -> PauliSum:
    z_string = (1 << mode) - 1
    bit = 1 << mode
    x_part = PauliString(n_qubits, bit, z_string)
    y_part = PauliString(n_qubits, bit, z_string | bit)
    sign = 1j if kind == ANNIHILATE else -1j
    return PauliSum(n_qubits, [(0.5, x_part), (0.5 * sign, y_part)])


def _vc_masks(layout: QubitLayout, site) -> tuple[int, int]:
    """(qubit of species 0 at site, Z mask of all full sites before it)."""
    r = layout.lattice.raster_index(site)
    return 6 * r, (1 << (6 * r)) - 1


def _vc_ladder(layout: QubitLayout, site, species: int, kind: str) -> PauliSum:
    base, prefix = _vc_masks(layout, site)
    intra = 0
    for s in range(species):
        intra |= 1 << (base + s)
    bit = 1 << (base + species)
    n = layout.total_qubits
    x_part = PauliString(n, bit, prefix | intra)
    y_part = PauliString(n, bit, prefix | intra | bit)
    sign = 1j if kind == ANNIHILATE else -1j
    return PauliSum(n, [(0.5, x_part), (0.5 * sign, y_part)])


def _vc_majorana(layout: QubitLayout, site, which: str, barred: bool) -> PauliString:
    base, prefix = _vc_masks(layout, site)
    intra = 0b1111 << base  # Z on all four species qubits of the site
    if which == "nu":
        intra |= 1 << (base + _VC_MU)
        bit = 1 << (base + _VC_NU)
    else:
        bit = 1 << (base + _VC_MU)
    z = prefix | intra | (bit if barred else 0)
    return PauliString(layout.total_qubits, bit, z)


def encode_ladder(layout: QubitLayout, site, species: int, kind: str) -> PauliSum:
    """Image of a single creation/annihilation operator."""
    if kind not in (CREATE, ANNIHILATE):
        raise ValueError(f"kind must be {CREATE!r} or {ANNIHILATE!r}")
    if not 0 <= species < N_SPECIES:
        raise DimensionError(f"species index {species} out of range")
    if layout.encoding == "jw":
        mode = 4 * layout.lattice.raster_index(site) + species
        return _jw_ladder(layout.total_qubits, mode, kind)
    if layout.encoding == "vc":
        return _vc_ladder(layout, site, species, kind)
    raise UnsupportedOperatorError(
        "compact encoding represents only parity-preserving composites")


def encode_number(layout: QubitLayout, site, species: int) -> PauliSum:
    """(1 - Z)/2 on the occupation qubit, identical in all encodings."""
    q = layout.qubit(site, species)
    n = layout.total_qubits
    return PauliSum(n, [(0.5, PauliString.identity(n)),
                        (-0.5, PauliString(n, 0, 1 << q))])


def _aux_dressing(layout: QubitLayout, site_i, site_j, axis: int) -> PauliSum:
    """i * maj(i) * majbar(j) along the directed path edge for this bond."""
    which = "mu" if axis == 1 else "nu"
    edges = layout.mu_edges if axis == 1 else layout.nu_edges
    lat = layout.lattice
    key = frozenset((lat.raster_index(site_i), lat.raster_index(site_j)))
    if key not in edges:
        raise GeometryError(f"bond {site_i}-{site_j} is not a path edge")
    ra, rb = edges[key]
    first = _vc_majorana(layout, lat.site_at(ra), which, barred=False)
    second = _vc_majorana(layout, lat.site_at(rb), which, barred=True)
    prod = multiply(first, second)
    dressed = PauliString(prod.n_qubits, prod.x_mask, prod.z_mask, prod.phase + 1)
    return PauliSum(layout.total_qubits, [(1.0, dressed)])


def _compact_edge(layout: QubitLayout, site_i, site_j, species: int, axis: int) -> PauliSum:
    qi = layout.qubit(site_i, species)
    qj = layout.qubit(site_j, species)
    n = layout.total_qubits
    x_mask = (1 << qi) | (1 << qj)
    z_mask = 1 << qj  # X on the lower-raster end, Y on the other
    p_mask = 0
    for face in _edge_faces(layout.lattice, site_i, axis):
        if face in layout._faces:
            p_mask |= 1 << layout.face_qubit(species, face)
    return PauliSum(n, [(1.0, PauliString(n, x_mask, z_mask | p_mask))])


def encode_hopping(layout: QubitLayout, site_i, site_j, species: int) -> PauliSum:
    """Image of adag(i) a(j) + adag(j) a(i) for one species."""
    lat = layout.lattice
    axis = lat.bond_axis(site_i, site_j)
    if lat.raster_index(site_i) > lat.raster_index(site_j):
        site_i, site_j = site_j, site_i
    if layout.encoding == "compact":
        # -(i/2) E(i,j) (V(j) - V(i)) reduces to (XX + YY)/2 times the face factor
        edge = _compact_edge(layout, site_i, site_j, species, axis)
        n = layout.total_qubits
        v_i = PauliSum(n, [(1.0, PauliString(n, 0, 1 << layout.qubit(site_i, species)))])
        v_j = PauliSum(n, [(1.0, PauliString(n, 0, 1 << layout.qubit(site_j, species)))])
        return (-0.5j) * (edge * (v_j - v_i))
    create_i = encode_ladder(layout, site_i, species, CREATE)
    annih_i = encode_ladder(layout, site_i, species, ANNIHILATE)
    create_j = encode_ladder(layout, site_j, species, CREATE)
    annih_j = encode_ladder(layout, site_j, species, ANNIHILATE)
    bare = create_i * annih_j + create_j * annih_i
    if layout.encoding == "vc" and axis != 0:
        bare = bare * _aux_dressing(layout, site_i, site_j, axis)
    return bare


def vc_stabilizers(layout: QubitLayout) -> list[PauliString]:
    """One stabilizer i*maj(a)*majbar(b) per directed path edge."""
    if layout.encoding != "vc":
        raise UnsupportedOperatorError("stabilizers are defined for the vc encoding only")
    lat = layout.lattice
    out = []
    for which, edges in (("mu", layout.mu_edges), ("nu", layout.nu_edges)):
        for ra, rb in edges.values():
            first = _vc_majorana(layout, lat.site_at(ra), which, barred=False)
            second = _vc_majorana(layout, lat.site_at(rb), which, barred=True)
            prod = multiply(first, second)
            out.append(PauliString(prod.n_qubits, prod.x_mask, prod.z_mask,
                                   prod.phase + 1))
    return out


def encode_fermion_sum(layout: QubitLayout, h: FermionSum) -> PauliSum:
    """Encode a whole fermionic operator; modes are 4*raster + species.

    Only the jw layout is supported here (the oracle comparison path); vc
    needs the dressed bond-level builders and compact has no ladder images.
    """
    if layout.encoding != "jw":
        raise UnsupportedOperatorError("direct operator encoding is jw-only")
    n = layout.total_qubits
    if h.n_modes != n:
        raise DimensionError(f"operator has {h.n_modes} modes, layout {n} qubits")
    total = PauliSum(n, [])
    for term in h.terms:
        acc = PauliSum(n, [(term.weight, PauliString.identity(n))])
        for mode, kind in term.factors:
            if kind == NUMBER:
                factor = PauliSum(n, [(0.5, PauliString.identity(n)),
                                      (-0.5, PauliString(n, 0, 1 << mode))])
            else:
                factor = _jw_ladder(n, mode, kind)
            acc = acc * factor
        total = total + acc
    return total
