"""Permutation action of three identical particles on the oscillator basis.

Relabeling the particles sends the two mass-weighted Jacobi vectors into
linear combinations of each other: a fixed orthogonal 2x2 map applied
identically to all three spatial components.  Expanded over the coupled
two-oscillator basis this action becomes a finite matrix, block diagonal
in total quanta, because the map conserves oscillator energy and commutes
with overall rotations.  The matrices are computed exactly (to roundoff)
through a Cartesian factorization:

* each 3D oscillator shell is converted between spherical (n, l, m) and
  Cartesian (nx, ny, nz) labels with a boson-polynomial construction,
* a planar rotation of the Jacobi pair factorizes into three independent
  two-mode rotations, one per Cartesian axis, whose kernels follow in
  closed form from the Hermite-mode generating function,
* the reflection of the pair coordinate that odd permutations carry
  reduces to the diagonal phase (-1)**l_a.

Everything here is independent of the oscillator width: in mass-weighted
coordinates both Jacobi oscillators share one width, which cancels from
every overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angular import clebsch_gordan
from .labels import BasisLabel, enumerate_labels

#: All six relabelings (sigma(1), sigma(2), sigma(3)), identity first.
PERMUTATIONS: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3),
    (2, 3, 1),
    (3, 1, 2),
    (2, 1, 3),
    (1, 3, 2),
    (3, 2, 1),
)

# Single-particle positions in terms of the Jacobi pair (r, R):
# x_i = a_i r + b_i R with the pair coordinate r = x2 - x1 and the
# spectator coordinate R = x3 - (x1 + x2)/2.
_POSITION = {
    1: (-0.5, -1.0 / 3.0),
    2: (0.5, -1.0 / 3.0),
    3: (0.0, 2.0 / 3.0),
}

_MASS_SCALE = np.diag([math.sqrt(0.5), math.sqrt(2.0 / 3.0)])


def permutation_sign(perm: tuple[int, int, int]) -> int:
    """Parity of a relabeling: +1 for even, -1 for odd."""
    inversions = sum(
        1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class JacobiRotation:
    """Proper rotation mixing the two mass-weighted Jacobi vectors.

    The map is [[c, s], [-s, c]] acting on the (pair, spectator) doublet,
    the same 2x2 block repeated for the x, y and z components.
    """

    c: float
    s: float

    def __post_init__(self) -> None:
        if abs(self.c * self.c + self.s * self.s - 1.0) > 1e-12:
            raise ValueError(f"not a rotation: c={self.c}, s={self.s}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.c, self.s], [-self.s, self.c]])

    @classmethod
    def identity(cls) -> "JacobiRotation":
        return cls(1.0, 0.0)

    @classmethod
    def from_angle(cls, radians: float) -> "JacobiRotation":
        return cls(math.cos(radians), math.sin(radians))

    def inverse(self) -> "JacobiRotation":
        return JacobiRotation(self.c, -self.s)


def jacobi_map(perm: tuple[int, int, int]) -> np.ndarray:
    """2x2 map sending mass-weighted Jacobi vectors to relabeled ones."""
    if sorted(perm) != [1, 2, 3]:
        raise ValueError(f"not a permutation of (1, 2, 3): {perm}")
    a = {i: np.array(_POSITION[perm[i - 1]]) for i in (1, 2, 3)}
    row_pair = a[2] - a[1]
    row_spec = a[3] - 0.5 * (a[1] + a[2])
    plain = np.vstack([row_pair, row_spec])
    return _MASS_SCALE @ plain @ np.linalg.inv(_MASS_SCALE)


def permutation_action(perm: tuple[int, int, int]) -> tuple[JacobiRotation, bool]:
    """Factor a relabeling into a proper rotation and a pair reflection.

    Returns (rotation, reflects_pair) such that the Jacobi map equals
    rotation.matrix @ diag(-1, 1)**reflects_pair.
    """
    s_map = jacobi_map(perm)
    reflects = bool(np.linalg.det(s_map) < 0)
    rot = s_map @ np.diag([-1.0, 1.0]) if reflects else s_map
    rotation = JacobiRotation(float(rot[0, 0]), float(rot[0, 1]))
    if not np.allclose(rot, rotation.matrix, atol=1e-12):
        raise AssertionError(f"Jacobi map of {perm} did not factor as a rotation")
    return rotation, reflects


# --- single-shell conversion between Cartesian and spherical labels ----------

_Poly = dict[tuple[int, int, int], complex]

_VECTOR_COMPONENTS: dict[int, _Poly] = {
    1: {(1, 0, 0): -1.0 / math.sqrt(2.0), (0, 1, 0): -1j / math.sqrt(2.0)},
    0: {(0, 0, 1): 1.0},
    -1: {(1, 0, 0): 1.0 / math.sqrt(2.0), (0, 1, 0): -1j / math.sqrt(2.0)},
}


@lru_cache(maxsize=None)
def _solid_tensors(l: int) -> tuple[_Poly, ...]:
    """Boson polynomials proportional to solid harmonics, m = -l .. l."""
    if l == 0:
        return ({(0, 0, 0): 1.0 + 0.0j},)
    lower = _solid_tensors(l - 1)
    out = []
    for m in range(-l, l + 1):
        poly: _Poly = {}
        for mu in (-1, 0, 1):
            cg = clebsch_gordan(l - 1, m - mu, 1, mu, l, m)
            if cg == 0.0:
                continue
            for mono1, c1 in lower[m - mu + (l - 1)].items():
                for mono2, c2 in _VECTOR_COMPONENTS[mu].items():
                    key = tuple(k1 + k2 for k1, k2 in zip(mono1, mono2))
                    poly[key] = poly.get(key, 0.0) + cg * c1 * c2
        out.append(poly)
    return tuple(out)


def _times_metric(poly: _Poly) -> _Poly:
    """Multiply a boson polynomial by x^2 + y^2 + z^2."""
    out: _Poly = {}
    for (kx, ky, kz), c in poly.items():
        for shift in ((2, 0, 0), (0, 2, 0), (0, 0, 2)):
            key = (kx + shift[0], ky + shift[1], kz + shift[2])
            out[key] = out.get(key, 0.0) + c
    return out


@lru_cache(maxsize=None)
def _cart_states(n1: int) -> tuple[tuple[int, int, int], ...]:
    """Cartesian occupation triples of one oscillator shell, fixed order."""
    return tuple(
        (nx, ny, n1 - nx - ny)
        for nx in range(n1 + 1)
        for ny in range(n1 - nx + 1)
    )


@lru_cache(maxsize=None)
def _single_shell(n1: int) -> tuple[tuple[tuple[int, int, int], ...], np.ndarray]:
    """Spherical labels and Cartesian-to-spherical matrix of one shell.

    Returns (sph_labels, U) where U[cart_index, sph_index] expands the
    spherical eigenstate (n, l, m) over Cartesian occupations, with the
    radial sign convention matching ho_radial (positive at the origin).
    """
    carts = _cart_states(n1)
    cart_pos = {c: i for i, c in enumerate(carts)}
    sph_labels = []
    columns = []
    for l in range(n1 % 2, n1 + 1, 2):
        n = (n1 - l) // 2
        tensors = _solid_tensors(l)
        for m in range(-l, l + 1):
            poly = tensors[m + l]
            for _ in range(n):
                poly = _times_metric(poly)
            vec = np.zeros(len(carts), dtype=complex)
            for mono, coeff in poly.items():
                weight = math.sqrt(
                    math.factorial(mono[0]) * math.factorial(mono[1]) * math.factorial(mono[2])
                )
                vec[cart_pos[mono]] = coeff * weight
            vec *= (-1.0) ** n / np.linalg.norm(vec)
            sph_labels.append((n, l, m))
            columns.append(vec)
    u = np.column_stack(columns)
    gram = u.conj().T @ u
    if not np.allclose(gram, np.eye(u.shape[1]), atol=1e-10):
        raise AssertionError(f"shell {n1} conversion matrix is not unitary")
    return tuple(sph_labels), u


# --- two-mode rotation kernels and shell blocks ------------------------------


@lru_cache(maxsize=None)
def _axis_kernel(c: float, s: float, quanta: int) -> np.ndarray:
    """Rotation kernel of one Cartesian axis at fixed total quanta.

    T[m1, n1] expands h_{n1}(c u + s v) h_{K-n1}(-s u + c v) over
    h_{m1}(u) h_{K-m1}(v); it follows from the Hermite generating
    function and is orthogonal.
    """
    k = quanta
    out = np.zeros((k + 1, k + 1))
    log_fact = [math.lgamma(i + 1) for i in range(k + 1)]
    for m1 in range(k + 1):
        m2 = k - m1
        for n1 in range(k + 1):
            n2 = k - n1
            scale = math.exp(0.5 * (log_fact[n1] + log_fact[n2] - log_fact[m1] - log_fact[m2]))
            total = 0.0
            for j in range(max(0, n1 - m2), min(m1, n1) + 1):
                total += (
                    math.comb(m1, j)
                    * math.comb(m2, n1 - j)
                    * c**j
                    * (-s) ** (m1 - j)
                    * s ** (n1 - j)
                    * c ** (m2 - n1 + j)
                )
            out[m1, n1] = scale * total
    return out


def _compositions(total: int) -> list[tuple[int, int, int]]:
    return [
        (kx, ky, total - kx - ky)
        for kx in range(total + 1)
        for ky in range(total - kx + 1)
    ]


@lru_cache(maxsize=None)
def _pair_scatter(
    n_a: int, n_b: int
) -> dict[tuple[int, int, int], tuple[np.ndarray, ...]]:
    """Index lists mapping sector products into per-composition boxes.

    For each axis-quanta composition (Kx, Ky, Kz) of n_a + n_b, the entry
    holds (ia, ib, xs, ys, zs): positions of contributing Cartesian pairs
    in the two sector lists and the box coordinates of the first factor.
    """
    carts_a = _cart_states(n_a)
    carts_b = _cart_states(n_b)
    grouped: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    for ia, ca in enumerate(carts_a):
        for ib, cb in enumerate(carts_b):
            key = (ca[0] + cb[0], ca[1] + cb[1], ca[2] + cb[2])
            grouped.setdefault(key, []).append((ia, ib))
    out = {}
    for key, pairs in grouped.items():
        ia = np.array([p[0] for p in pairs])
        ib = np.array([p[1] for p in pairs])
        cart = np.array([carts_a[i] for i in ia])
        out[key] = (ia, ib, cart[:, 0], cart[:, 1], cart[:, 2])
    return out


def _shell_block(
    c: float,
    s: float,
    shell: int,
    L: int,
    labels: tuple[BasisLabel, ...],
    m_ref: int,
) -> np.ndarray:
    """Rotation matrix of one total-quanta shell over the given labels.

    Entry [k, j] is the coefficient of basis state j in the expansion of
    state k composed with the rotation, at total projection m_ref (the
    result is projection independent; m_ref only steers the evaluation).
    """
    n_states = len(labels)
    sectors: dict[int, list[int]] = {}
    for idx, lab in enumerate(labels):
        sectors.setdefault(2 * lab.n_a + lab.l_a, []).append(idx)

    # Dense pair tensors per sector: coefficients of each coupled state
    # over (cartesian_a x cartesian_b) products.
    sector_rows: dict[int, np.ndarray] = {}
    sector_tensors: dict[int, np.ndarray] = {}
    for n_a_quanta, rows in sectors.items():
        n_b_quanta = shell - n_a_quanta
        sph_a, u_a = _single_shell(n_a_quanta)
        sph_b, u_b = _single_shell(n_b_quanta)
        pos_a = {lab: i for i, lab in enumerate(sph_a)}
        pos_b = {lab: i for i, lab in enumerate(sph_b)}
        tensor = np.zeros((len(rows), u_a.shape[0], u_b.shape[0]), dtype=complex)
        for slot, idx in enumerate(rows):
            lab = labels[idx]
            for m_a in range(-lab.l_a, lab.l_a + 1):
                m_b = m_ref - m_a
                if abs(m_b) > lab.l_b:
                    continue
                cg = clebsch_gordan(lab.l_a, m_a, lab.l_b, m_b, L, m_ref)
                if cg == 0.0:
                    continue
                col_a = u_a[:, pos_a[(lab.n_a, lab.l_a, m_a)]]
                col_b = u_b[:, pos_b[(lab.n_b, lab.l_b, m_b)]]
                tensor[slot] += cg * np.outer(col_a, col_b)
        sector_rows[n_a_quanta] = np.array(rows)
        sector_tensors[n_a_quanta] = tensor

    block = np.zeros((n_states, n_states), dtype=complex)
    for comp in _compositions(shell):
        kx, ky, kz = comp
        box = np.zeros((n_states, kx + 1, ky + 1, kz + 1), dtype=complex)
        for n_a_quanta, rows in sector_rows.items():
            entry = _pair_scatter(n_a_quanta, shell - n_a_quanta).get(comp)
            if entry is None:
                continue
            ia, ib, xs, ys, zs = entry
            box[rows[:, None], xs, ys, zs] = sector_tensors[n_a_quanta][:, ia, ib]
        rotated = np.einsum(
            "sxyz,ax,by,cz->sabc",
            box,
            _axis_kernel(c, s, kx),
            _axis_kernel(c, s, ky),
            _axis_kernel(c, s, kz),
            optimize=True,
        )
        block += rotated.reshape(n_states, -1) @ box.reshape(n_states, -1).conj().T

    residual = float(np.max(np.abs(block.imag))) if n_states else 0.0
    if residual > 1e-9:
        raise AssertionError(f"shell {shell} rotation block has imaginary residue {residual}")
    return block.real


@dataclass(frozen=True)
class BracketTable:
    """Expansion matrix of rotated basis states over unrotated ones.

    matrix[k, j] is the coefficient of labels[j] in the expansion of
    labels[k] composed with the rotation.  Orthogonal, block diagonal in
    total quanta, and independent of projection and oscillator width.
    """

    rotation: JacobiRotation
    L: int
    parity: int
    n_max: int
    labels: tuple[BasisLabel, ...]
    matrix: np.ndarray

    def index(self, label: BasisLabel) -> int:
        return self.labels.index(label)

    def coefficient(self, source: BasisLabel, target: BasisLabel) -> float:
        return float(self.matrix[self.index(source), self.index(target)])


_TABLE_CACHE: dict[tuple, BracketTable] = {}


def bracket_table(
    rotation: JacobiRotation, L: int, parity: int, n_max: int, m_ref: int = 0
) -> BracketTable:
    """Full rotation matrix over the (L, parity, n_max) label block."""
    if abs(m_ref) > L:
        raise ValueError(f"m_ref={m_ref} exceeds L={L}")
    key = (round(rotation.c, 14), round(rotation.s, 14), L, parity, n_max, m_ref)
    hit = _TABLE_CACHE.get(key)
    if hit is not None:
        return hit

    labels = enumerate_labels(L, parity, n_max)
    inverse_key = (key[0], -key[1]) + key[2:]
    inverse_hit = _TABLE_CACHE.get(inverse_key)
    if inverse_hit is not None:
        matrix = inverse_hit.matrix.T.copy()
    elif rotation.c == 1.0 and rotation.s == 0.0:
        matrix = np.eye(len(labels))
    else:
        matrix = np.zeros((len(labels), len(labels)))
        shells: dict[int, list[int]] = {}
        for idx, lab in enumerate(labels):
            shells.setdefault(lab.shell, []).append(idx)
        for shell, rows in shells.items():
            shell_labels = tuple(labels[i] for i in rows)
            sub = _shell_block(rotation.c, rotation.s, shell, L, shell_labels, m_ref)
            matrix[np.ix_(rows, rows)] = sub

    table = BracketTable(rotation, L, parity, n_max, labels, matrix)
    _TABLE_CACHE[key] = table
    return table


def bracket(rotation: JacobiRotation, source: BasisLabel, target: BasisLabel, L: int) -> float:
    """Single expansion coefficient between two coupled labels."""
    if source.parity != target.parity or source.shell != target.shell:
        return 0.0
    table = bracket_table(rotation, L, source.parity, source.shell)
    return table.coefficient(source, target)


def expand_permutation(
    perm: tuple[int, int, int], L: int, parity: int, n_max: int, m_ref: int = 0
) -> np.ndarray:
    """Matrix of one particle relabeling over the coupled basis block.

    Row k holds the expansion of basis state k evaluated at relabeled
    coordinates.  Odd permutations append the pair-reflection phase
    (-1)**l_a on the expansion (column) side.
    """
    rotation, reflects = permutation_action(perm)
    table = bracket_table(rotation, L, parity, n_max, m_ref)
    matrix = table.matrix
    if reflects:
        phases = np.array([(-1.0) ** lab.l_a for lab in table.labels])
        matrix = matrix * phases[None, :]
    return matrix
