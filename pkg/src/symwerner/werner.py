"""Werner classification, radial invariants, spectra and positivity scans."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, NotHermitianError, NotSymmetricError, WernerDisagreementError
from .pauli import (
    HERMITIAN_TOL,
    MAX_DENSE_QUBITS,
    PauliDecomposition,
    decompose,
    format_number,
    num_qubits,
    symmetry_defect,
)
from .polynomial import SYMMETRY_TOL, fn_map, radial_extract
from .rotation import haar_random_su2, tg_action_array
from .states import WernerCoefficients, werner_from_b, werner_rho_a

DEFAULT_SEED = 12345
DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 50
POSITIVITY_TOL = -1e-10


@dataclass(frozen=True)
class WernerReport:
    is_werner: bool
    b: WernerCoefficients
    radial_residual: float
    max_invariance_residual: float
    samples: int
    seed: int
    tol: float

    @property
    def radial_ok(self) -> bool:
        return self.radial_residual < self.tol

    @property
    def invariant_ok(self) -> bool:
        return self.max_invariance_residual < self.tol

    def to_text(self) -> str:
        lines = [
            f"is_werner: {'true' if self.is_werner else 'false'}",
            f"b: {', '.join(format_number(x) for x in self.b.b)}",
            f"radial_residual: {format_number(self.radial_residual)}",
            f"invariance_residual: {format_number(self.max_invariance_residual)}",
            f"samples: {self.samples}",
            f"seed: {self.seed}",
        ]
        return "\n".join(lines) + "\n"


def _as_decomposition(state) -> PauliDecomposition:
    if isinstance(state, PauliDecomposition):
        return state
    return decompose(state)


def invariance_residual(d: PauliDecomposition, samples: int, seed: int) -> float:
    """Max over Haar-random ``g`` of the largest coefficient change under ``T_g``."""
    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(samples)]
    arr = d.to_array()
    worst = 0.0
    for rng in rngs:
        moved = tg_action_array(haar_random_su2(rng), arr)
        worst = max(worst, float(np.max(np.abs(moved - arr))))
    return worst


def is_werner(state, tol: float = DEFAULT_TOL, samples: int = DEFAULT_SAMPLES,
              seed: int = DEFAULT_SEED, strict: bool = True) -> WernerReport:
    """Decide whether a symmetric state commutes with every ``g^{(x)n}``.

    Two independent tests are run: the polynomial must be radial, and the
    state must be unchanged under ``samples`` Haar-random rotations.

    Raises:
        NotSymmetricError: the state is not permutation-symmetric.
        WernerDisagreementError: the two tests disagree and ``strict`` is set.
    """
    d = _as_decomposition(state)
    defect = symmetry_defect(d)
    if defect > SYMMETRY_TOL:
        raise NotSymmetricError(f"Werner test needs a symmetric state (orbit spread {defect:.3g})")
    b, radial_res = radial_extract(fn_map(d))
    inv_res = invariance_residual(d, samples, seed)
    radial_ok, inv_ok = radial_res < tol, inv_res < tol
    if strict and radial_ok != inv_ok:
        raise WernerDisagreementError(
            f"radial residual {radial_res:.3g} and invariance residual {inv_res:.3g} "
            f"disagree at tol {tol:g} (seed {seed})"
        )
    return WernerReport(
        is_werner=radial_ok and inv_ok,
        b=WernerCoefficients(d.n, tuple(b)),
        radial_residual=radial_res,
        max_invariance_residual=inv_res,
        samples=samples,
        seed=seed,
        tol=tol,
    )


def _check_hermitian(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    num_qubits(H)
    err = np.max(np.abs(H - H.conj().T))
    if err > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |H - H^dagger| = {err:.3g})")
    return H


def spectrum(H: np.ndarray) -> np.ndarray:
    """Eigenvalues in ascending order."""
    return np.linalg.eigvalsh(_check_hermitian(H))


def elementary_symmetric_invariants(H: np.ndarray) -> tuple[float, float]:
    """``(e2, e3)`` of the eigenvalues of a two-qubit operator.

    ``det(H - lam I) = lam^4 - e1 lam^3 + e2 lam^2 - e3 lam + e4``, so the
    ``lam`` coefficient is ``-e3``.  For ``werner_rho_a(a)``,
    ``e2 = (3 - 3a^2)/8`` and ``e3 = (1 - 3a^2 - 2a^3)/16``.
    """
    H = np.asarray(H)
    if H.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator, got shape {H.shape}")
    lam = spectrum(H)
    e2 = sum(lam[i] * lam[j] for i in range(4) for j in range(i + 1, 4))
    e3 = sum(lam[i] * lam[j] * lam[k]
             for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
    return float(e2), float(e3)


def lu_invariant_compare(rho1, rho2, tol: float = DEFAULT_TOL) -> bool:
    """True iff two symmetric Werner states have the same radial coefficients.

    For symmetric Werner states this decides local-unitary equivalence.
    Either argument may be a ``WernerReport`` computed earlier.

    Raises:
        ValueError: either input is not a symmetric Werner state.
    """
    reports = []
    for rho in (rho1, rho2):
        report = rho if isinstance(rho, WernerReport) else is_werner(rho)
        if not report.is_werner:
            raise ValueError("lu_invariant_compare needs symmetric Werner states")
        reports.append(report)
    b1, b2 = reports[0].b, reports[1].b
    if b1.n != b2.n:
        return False
    return bool(np.max(np.abs(np.subtract(b1.b, b2.b))) <= tol)


@dataclass(frozen=True)
class ScanResult:
    lo: float | None
    hi: float | None
    step: float
    grid: int

    @property
    def empty(self) -> bool:
        return self.lo is None


def positivity_scan_2q(grid: int, lo: float = -2.0, hi: float = 2.0) -> ScanResult:
    """Feasible ``a`` for ``werner_rho_a`` on a uniform grid over ``[lo, hi]``.

    Returns the longest contiguous run of grid points whose minimum
    eigenvalue is at least -1e-10.
    """
    if grid < 2:
        raise ValueError("grid needs at least 2 points")
    a_values = np.linspace(lo, hi, grid)
    ok = [spectrum(werner_rho_a(a))[0] >= POSITIVITY_TOL for a in a_values]
    best, start = (None, None), None
    for i, flag in enumerate(ok + [False]):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if best[0] is None or i - 1 - start > best[1] - best[0]:
                best = (start, i - 1)
            start = None
    step = (hi - lo) / (grid - 1)
    if best[0] is None:
        return ScanResult(None, None, step, grid)
    return ScanResult(float(a_values[best[0]]), float(a_values[best[1]]), step, grid)


def positivity_check(b: WernerCoefficients) -> tuple[bool, float]:
    """``(feasible, min_eigenvalue)`` for the Werner operator with radial coefficients ``b``."""
    if b.n > MAX_DENSE_QUBITS:
        raise CapacityError(f"{b.n} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}")
    lam_min = float(spectrum(werner_from_b(b))[0])
    return lam_min >= POSITIVITY_TOL, lam_min
