"""Named symmetric states, the two-qubit Werner family, and Werner states from radial coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import comb

import numpy as np

from .errors import NormalizationError
from .pauli import SIGMA, PauliDecomposition, check_dense_capacity, decompose, reconstruct, symmetrize
from .polynomial import fn_inverse, radial_poly

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class WernerCoefficients:
    """Radial coefficients ``b_0..b_{n//2}`` of a symmetric Werner operator on ``n`` qubits."""

    n: int
    b: tuple[float, ...]

    def __post_init__(self):
        b = tuple(float(x) for x in self.b)
        if self.n < 1:
            raise ValueError("qubit count must be >= 1")
        if len(b) != self.n // 2 + 1:
            raise ValueError(f"{self.n} qubits need {self.n // 2 + 1} radial coefficients, got {len(b)}")
        object.__setattr__(self, "b", b)


def ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits))
    v[int(bits, 2)] = 1.0
    return v


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def dicke_ket(n: int, k: int) -> np.ndarray:
    """Normalized equal superposition of all weight-``k`` computational kets."""
    if not 0 <= k <= n:
        raise ValueError(f"Dicke excitation {k} out of range for {n} qubits")
    v = np.zeros(2**n)
    for ones in combinations(range(n), k):
        v[sum(1 << (n - 1 - q) for q in ones)] = 1.0
    return v / np.sqrt(comb(n, k))


def _product(vec: np.ndarray, n: int) -> np.ndarray:
    return reduce(np.kron, [vec] * n)


_DEFAULT_N = {
    "basis0": 1, "basis1": 1, "plus": 1, "mixed": 1, "dicke": 1,
    "uniform_dicke": 2, "ghz": 3, "w": 3, "singlet": 2,
    "bell_phi_minus": 2, "bell_phi_plus": 2, "bell_psi_plus": 2,
}
_TWO_QUBIT = {
    "singlet": ("01", "10", -1),
    "bell_phi_minus": ("00", "11", -1),
    "bell_phi_plus": ("00", "11", 1),
    "bell_psi_plus": ("01", "10", 1),
}
STATE_NAMES = tuple(_DEFAULT_N)


def named_state(name: str, n: int | None = None, k: int | None = None) -> np.ndarray:
    """Density matrix of a named symmetric state.

    ``name`` is one of ``STATE_NAMES`` (hyphens accepted for underscores).
    ``dicke`` needs the excitation number ``k``.  Single-qubit names extend
    to ``n`` qubits as product states.
    """
    key = name.replace("-", "_")
    if key not in _DEFAULT_N:
        raise ValueError(f"unknown state {name!r}; choose from {', '.join(STATE_NAMES)}")
    n = _DEFAULT_N[key] if n is None else int(n)
    if n < 1:
        raise ValueError("qubit count must be >= 1")
    check_dense_capacity(n)
    if key in _TWO_QUBIT:
        if n != 2:
            raise ValueError(f"{name} is a 2-qubit state, got n={n}")
        a, b, sign = _TWO_QUBIT[key]
        return projector(ket(a) + sign * ket(b))
    if key in ("ghz", "w", "uniform_dicke") and n < 2:
        raise ValueError(f"{name} needs at least 2 qubits, got n={n}")
    if key == "basis0":
        return projector(_product(ket("0"), n))
    if key == "basis1":
        return projector(_product(ket("1"), n))
    if key == "plus":
        return projector(_product(ket("0") + ket("1"), n))
    if key == "mixed":
        return np.eye(2**n, dtype=complex) / 2**n
    if key == "ghz":
        return projector(ket("0" * n) + ket("1" * n))
    if key == "w":
        return projector(dicke_ket(n, 1))
    if key == "dicke":
        if k is None:
            raise ValueError("dicke needs an excitation number k")
        return projector(dicke_ket(n, k))
    # uniform_dicke
    return sum(projector(dicke_ket(n, j)) for j in range(n + 1)) / (n + 1)


def table_states() -> list[tuple[str, int, np.ndarray]]:
    """The example states of the polynomial table, in printed order."""
    zero = named_state("basis0")
    half_id = named_state("mixed")
    rows = [
        ("|0><0|", named_state("basis0")),
        ("|1><1|", named_state("basis1")),
        ("|+><+|", named_state("plus")),
        ("totally mixed", named_state("mixed", 1)),
        ("|00><00|", named_state("basis0", 2)),
        ("totally mixed", named_state("mixed", 2)),
        ("(|00><00| + |11><11|)/2", (named_state("basis0", 2) + named_state("basis1", 2)) / 2),
        ("(|0><0| x I/2 + I/2 x |0><0|)/2", (np.kron(zero, half_id) + np.kron(half_id, zero)) / 2),
        ("singlet", named_state("singlet")),
        ("(|00> - |11>)(<00| - <11|)/2", named_state("bell_phi_minus")),
        ("(|00> + |11>)(<00| + <11|)/2", named_state("bell_phi_plus")),
        ("(|01> + |10>)(<01| + <10|)/2", named_state("bell_psi_plus")),
        ("uniform Dicke mixture", named_state("uniform_dicke", 2)),
        ("|000><000|", named_state("basis0", 3)),
        ("GHZ", named_state("ghz", 3)),
        ("W", named_state("w", 3)),
        ("uniform Dicke mixture", named_state("uniform_dicke", 3)),
        ("uniform Dicke mixture", named_state("uniform_dicke", 4)),
    ]
    return [(label, int(np.log2(rho.shape[0])), rho) for label, rho in rows]


def werner_rho_a(a: float) -> np.ndarray:
    """``I/4 + (a/4)(XX + YY + ZZ)``."""
    heis = sum(np.kron(SIGMA[i], SIGMA[i]) for i in (1, 2, 3))
    return np.eye(4, dtype=complex) / 4 + a / 4 * heis


def werner_decomposition(b: WernerCoefficients) -> PauliDecomposition:
    """Pauli coefficients of the operator with polynomial ``sum_m b_m r^{2m}``.

    Raises:
        NormalizationError: ``b_0 != 1`` (trace would not be 1).
    """
    if abs(b.b[0] - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"b_0 must be 1 for a trace-one operator, got {b.b[0]}")
    return fn_inverse(radial_poly(b.b, b.n))


def werner_from_b(b: WernerCoefficients) -> np.ndarray:
    """Dense Werner operator; Hermitian with trace 1 but not necessarily positive."""
    check_dense_capacity(b.n)
    return reconstruct(werner_decomposition(b))


def collective_spin_squared(n: int) -> np.ndarray:
    """``S^2`` for ``S_a = (1/2) sum_k sigma_a`` acting on qubit k."""
    check_dense_capacity(n)
    dim = 2**n
    S2 = np.zeros((dim, dim), dtype=complex)
    for a in (1, 2, 3):
        Sa = np.zeros((dim, dim), dtype=complex)
        for k in range(n):
            Sa += reduce(np.kron, [SIGMA[a] if q == k else SIGMA[0] for q in range(n)]) / 2
        S2 += Sa @ Sa
    return S2


def spin_projectors(n: int) -> dict[float, np.ndarray]:
    """Projectors onto the total-spin sectors ``J = n/2, n/2 - 1, ...``."""
    vals, vecs = np.linalg.eigh(collective_spin_squared(n))
    out = {}
    for j2 in range(n % 2, n + 1, 2):
        J = j2 / 2
        cols = np.abs(vals - J * (J + 1)) < 1e-6
        out[J] = vecs[:, cols] @ vecs[:, cols].conj().T
    return out


def random_werner_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random mixture of normalized total-spin projectors; symmetric and Werner by construction."""
    projs = spin_projectors(n)
    weights = rng.dirichlet(np.ones(len(projs)))
    return sum(w * P / np.trace(P).real for w, P in zip(weights, projs.values()))


def random_density_matrix(n: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix."""
    dim = 2**n
    rank = dim if rank is None else rank
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_symmetric_state(n: int, rng: np.random.Generator) -> PauliDecomposition:
    """Symmetrized random density matrix, in Pauli coordinates."""
    return symmetrize(decompose(random_density_matrix(n, rng)))
