"""Pauli-tensor coordinates for n-qubit Hermitian operators.

An operator is stored as a sparse map from multi-indices (tuples over
{0, 1, 2, 3}) to real coefficients, ``rho = sum_I s_I sigma_I``.

Conventions:

* qubit 0 is the leftmost tensor factor and the most significant bit of a
  computational-basis index, so ``|q_0 q_1 ... q_{n-1}>``;
* library functions number qubits from 0; the CLI numbers them from 1;
* a permutation ``perm`` sends the content of qubit ``k`` to slot
  ``perm[k]``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import CapacityError, NotHermitianError

MultiIndex = tuple[int, ...]
IndexType = tuple[int, int, int, int]

PRUNE_TOL = 1e-14
HERMITIAN_TOL = 1e-8
MAX_DENSE_QUBITS = 10
MAX_PAULI_QUBITS = 12

SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _s in SIGMA:
    _s.setflags(write=False)

# Row q = 2*r + c of the (r, c) matrix entry; column i = Pauli label.
_ENTRY_OF_PAULI = np.stack([s.reshape(4) for s in SIGMA], axis=1)
# s_i = sum_{r,c} H[r, c] sigma_i[c, r] / 2
_PAULI_OF_ENTRY = np.stack([s.T.reshape(4) for s in SIGMA], axis=0) / 2


def _frozen(coeffs: Mapping[MultiIndex, float]) -> Mapping[MultiIndex, float]:
    return MappingProxyType(
        {tuple(k): float(v) for k, v in coeffs.items() if abs(v) >= PRUNE_TOL}
    )


@dataclass(frozen=True)
class PauliDecomposition:
    """Real coefficients ``s_I`` of an n-qubit operator in the Pauli basis.

    Missing indices have coefficient zero.  Entries below ``PRUNE_TOL`` are
    dropped on construction.
    """

    n: int
    coeffs: Mapping[MultiIndex, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        if self.n > MAX_PAULI_QUBITS:
            raise CapacityError(
                f"{self.n} qubits exceeds the Pauli-coordinate limit of {MAX_PAULI_QUBITS}"
            )
        for key in self.coeffs:
            check_multi_index(key, self.n)
        object.__setattr__(self, "coeffs", _frozen(self.coeffs))

    def __getitem__(self, index) -> float:
        return self.coeffs.get(tuple(index), 0.0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "PauliDecomposition") -> "PauliDecomposition":
        if not isinstance(other, PauliDecomposition):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0.0) + v
        return PauliDecomposition(self.n, out)

    def __sub__(self, other: "PauliDecomposition") -> "PauliDecomposition":
        return self + (-1.0) * other

    def __mul__(self, alpha: float) -> "PauliDecomposition":
        return PauliDecomposition(self.n, {k: alpha * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    @property
    def trace(self) -> float:
        return 2.0**self.n * self[(0,) * self.n]

    def max_abs_diff(self, other: "PauliDecomposition") -> float:
        """Largest coefficientwise difference from ``other``."""
        if other.n != self.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def to_array(self) -> np.ndarray:
        """Dense coefficient tensor of shape ``(4,) * n``."""
        arr = np.zeros((4,) * self.n)
        if self.coeffs:
            keys = np.array(list(self.coeffs.keys())).T
            arr[tuple(keys)] = list(self.coeffs.values())
        return arr

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "PauliDecomposition":
        arr = np.asarray(arr)
        n = arr.ndim
        idx = np.nonzero(np.abs(arr) >= PRUNE_TOL)
        coeffs = {tuple(int(i) for i in key): float(v)
                  for key, v in zip(zip(*idx), arr[idx])}
        return cls(n, coeffs)


def check_multi_index(index: Sequence[int], n: int) -> MultiIndex:
    index = tuple(int(i) for i in index)
    if len(index) != n:
        raise ValueError(f"multi-index {index} has length {len(index)}, expected {n}")
    if any(i not in (0, 1, 2, 3) for i in index):
        raise ValueError(f"multi-index {index} has entries outside 0..3")
    return index


def index_type(index: Sequence[int]) -> IndexType:
    """Counts ``(n0, n1, n2, n3)`` of each Pauli label in ``index``."""
    counts = [0, 0, 0, 0]
    for i in index:
        counts[i] += 1
    return tuple(counts)


def orbit_size(itype: Sequence[int]) -> int:
    """Multinomial ``n! / (n0! n1! n2! n3!)``."""
    size = factorial(sum(itype))
    for c in itype:
        size //= factorial(c)
    return size


def orbit(itype: Sequence[int]) -> Iterator[MultiIndex]:
    """All distinct multi-indices of the given type, in lexicographic order."""
    counts = list(itype)
    n = sum(counts)
    prefix: list[int] = []

    def rec():
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(4):
            if counts[label]:
                counts[label] -= 1
                prefix.append(label)
                yield from rec()
                prefix.pop()
                counts[label] += 1

    yield from rec()


def index_types(n: int) -> Iterator[IndexType]:
    """Every ``(n0, n1, n2, n3)`` with sum ``n``."""
    for n1 in range(n + 1):
        for n2 in range(n + 1 - n1):
            for n3 in range(n + 1 - n1 - n2):
                yield (n - n1 - n2 - n3, n1, n2, n3)


def sigma(i: int) -> np.ndarray:
    """Single-qubit Pauli matrix; ``sigma(0)`` is the identity."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in 0..3, got {i!r}")
    return SIGMA[i].copy()


def sigma_tensor(index: Sequence[int]) -> np.ndarray:
    index = check_multi_index(index, len(index))
    out = np.ones((1, 1), dtype=complex)
    for i in index:
        out = np.kron(out, SIGMA[i])
    return out


def num_qubits(H: np.ndarray) -> int:
    """Qubit count of a ``2^n x 2^n`` matrix."""
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    dim = H.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"matrix dimension {dim} is not a power of two >= 2")
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"{n} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}")
    return n


def check_dense_capacity(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"{n} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}")


def _apply_each_axis(mat: np.ndarray, tensor: np.ndarray) -> np.ndarray:
    for axis in range(tensor.ndim):
        tensor = np.moveaxis(np.tensordot(mat, tensor, axes=(1, axis)), 0, axis)
    return tensor


def decompose(H: np.ndarray) -> PauliDecomposition:
    """Pauli coefficients ``s_I = tr(H sigma_I) / 2^n``.

    Uses one 4x4 contraction per qubit rather than ``4^n`` traces.

    Raises:
        NotHermitianError: some coefficient has imaginary part above 1e-8.
    """
    H = np.asarray(H, dtype=complex)
    n = num_qubits(H)
    # (r_0..r_{n-1}, c_0..c_{n-1}) -> (r_0, c_0, r_1, c_1, ...) -> (4,)*n
    t = H.reshape((2,) * (2 * n))
    order = [ax for k in range(n) for ax in (k, n + k)]
    t = t.transpose(order).reshape((4,) * n)
    s = _apply_each_axis(_PAULI_OF_ENTRY, t)
    worst = float(np.max(np.abs(s.imag)))
    if worst > HERMITIAN_TOL:
        raise NotHermitianError(f"Pauli coefficient with imaginary part {worst:.3g}")
    return PauliDecomposition.from_array(s.real)


def reconstruct(d: PauliDecomposition) -> np.ndarray:
    """Dense matrix ``sum_I s_I sigma_I``."""
    n = d.n
    check_dense_capacity(n)
    t = _apply_each_axis(_ENTRY_OF_PAULI, d.to_array().astype(complex))
    t = t.reshape((2,) * (2 * n))
    order = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    return t.transpose(order).reshape(2**n, 2**n)


def _check_permutation(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    return perm


def permute_qubits(d: PauliDecomposition, perm: Sequence[int]) -> PauliDecomposition:
    """Coefficients of ``P rho P^{-1}`` where ``P`` moves qubit k to slot ``perm[k]``."""
    perm = _check_permutation(perm, d.n)
    out = {}
    for index, v in d.coeffs.items():
        new = [0] * d.n
        for k, i in enumerate(index):
            new[perm[k]] = i
        out[tuple(new)] = v
    return PauliDecomposition(d.n, out)


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Dense ``P`` acting on kets: ``P|b_0..b_{n-1}> = |b'>`` with ``b'[perm[k]] = b[k]``."""
    n = len(perm)
    perm = _check_permutation(perm, n)
    check_dense_capacity(n)
    dim = 2**n
    P = np.zeros((dim, dim))
    for col in range(dim):
        bits = [(col >> (n - 1 - k)) & 1 for k in range(n)]
        new = [0] * n
        for k, b in enumerate(bits):
            new[perm[k]] = b
        row = int("".join(map(str, new)), 2)
        P[row, col] = 1.0
    return P


def transposition(n: int, a: int, b: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[a], perm[b] = perm[b], perm[a]
    return tuple(perm)


def orbit_groups(d: PauliDecomposition) -> dict[IndexType, list[float]]:
    """Nonzero coefficients grouped by index type."""
    groups: dict[IndexType, list[float]] = defaultdict(list)
    for index, v in d.coeffs.items():
        groups[index_type(index)].append(v)
    return groups


def symmetrize(d: PauliDecomposition) -> PauliDecomposition:
    """Average over all qubit permutations, done orbit by orbit.

    Every index of type ``t`` receives ``(sum of coefficients of type t) / M_t``
    where ``M_t`` is the orbit size.  Permutations are never enumerated.
    """
    out = {}
    for itype, values in orbit_groups(d).items():
        mean = sum(values) / orbit_size(itype)
        if abs(mean) < PRUNE_TOL:
            continue
        for index in orbit(itype):
            out[index] = mean
    return PauliDecomposition(d.n, out)


def symmetry_defect(d: PauliDecomposition) -> float:
    """Largest spread (max - min) of coefficients within any orbit; 0 iff symmetric."""
    worst = 0.0
    for itype, values in orbit_groups(d).items():
        if len(values) < orbit_size(itype):
            values = values + [0.0]
        worst = max(worst, max(values) - min(values))
    return worst


def tensor(d1: PauliDecomposition, d2: PauliDecomposition) -> PauliDecomposition:
    """Pauli coefficients of ``rho1 (x) rho2``."""
    out = {}
    for i1, v1 in d1.coeffs.items():
        for i2, v2 in d2.coeffs.items():
            out[i1 + i2] = v1 * v2
    return PauliDecomposition(d1.n + d2.n, out)


def partial_trace(d: PauliDecomposition, k: int) -> PauliDecomposition:
    """Trace out qubit ``k`` (0-based).

    ``tr_k sigma_I`` is ``2 sigma_{I without k}`` when ``i_k = 0`` and zero
    otherwise, so no dense matrix is formed.
    """
    if d.n < 2:
        raise ValueError("cannot trace out the only qubit of a 1-qubit operator")
    if not 0 <= k < d.n:
        raise ValueError(f"qubit {k} out of range for {d.n} qubits")
    out = {}
    for index, v in d.coeffs.items():
        if index[k] == 0:
            out[index[:k] + index[k + 1:]] = 2.0 * v
    return PauliDecomposition(d.n - 1, out)


def format_number(x: float) -> str:
    """12 significant digits; ``-0`` printed as ``0``."""
    text = format(float(x), ".12g")
    if float(text) == 0.0:
        return "0"
    return text


def dumps(d: PauliDecomposition, comment: str | None = None) -> str:
    """Serialize to the ``.pauli`` text format."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"n {d.n}")
    for index in sorted(d.coeffs):
        text = format_number(d.coeffs[index])
        if text != "0":
            lines.append(f"{''.join(map(str, index))} {text}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> PauliDecomposition:
    """Parse the ``.pauli`` text format.

    Raises:
        ValueError: malformed header, index string or coefficient.
    """
    n = None
    coeffs: dict[MultiIndex, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected 'n <integer>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad qubit count {parts[1]!r}") from None
            if n < 1:
                raise ValueError(f"line {lineno}: qubit count must be >= 1")
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<index> <coefficient>'")
        label, value = parts
        if len(label) != n or any(ch not in "0123" for ch in label):
            raise ValueError(f"line {lineno}: index {label!r} is not {n} characters over 0-3")
        try:
            v = float(value)
        except ValueError:
            raise ValueError(f"line {lineno}: bad coefficient {value!r}") from None
        key = tuple(int(ch) for ch in label)
        if key in coeffs:
            raise ValueError(f"line {lineno}: duplicate index {label}")
        coeffs[key] = v
    if n is None:
        raise ValueError("missing 'n <integer>' header")
    return PauliDecomposition(n, coeffs)
