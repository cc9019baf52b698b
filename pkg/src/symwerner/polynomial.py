"""Real polynomials in x, y, z attached to symmetric n-qubit operators.

A symmetric operator with Pauli coefficients ``s_J`` corresponds to the
polynomial whose ``x^a y^b z^c`` coefficient is ``2^n M_t s_J`` where
``t = (n - a - b - c, a, b, c)`` is the index type of ``J`` and ``M_t`` its
orbit size.  Products of polynomials correspond to symmetrized tensor
products, and qubit-wise conjugation by ``g`` corresponds to the linear
substitution ``f(v) -> f(v @ phi(g))`` with ``v = (x, y, z)`` a row vector.

Monomials are ordered graded-lexicographically: by total degree, then by
exponent tuple in descending lexicographic order (``x^2, x y, x z, y^2, ...``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from .errors import NotSymmetricError, NumericalDegeneracyError
from .pauli import (
    PRUNE_TOL,
    PauliDecomposition,
    format_number,
    orbit,
    orbit_groups,
    orbit_size,
)

Exponent = tuple[int, int, int]

SYMMETRY_TOL = 1e-10
ORTHOGONAL_TOL = 1e-10
KERNEL_RTOL = 1e-9
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class TriPolynomial:
    """Sparse polynomial in x, y, z of total degree at most ``n``."""

    n: int
    coeffs: Mapping[Exponent, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"degree bound must be >= 0, got {self.n}")
        clean = {}
        for exps, v in self.coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or min(exps) < 0:
                raise ValueError(f"bad exponent triple {exps}")
            if sum(exps) > self.n:
                raise ValueError(f"monomial {exps} has degree above the bound {self.n}")
            if abs(v) >= PRUNE_TOL:
                clean[exps] = float(v)
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def __getitem__(self, exps) -> float:
        return self.coeffs.get(tuple(exps), 0.0)

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_add(self, poly_scale(other, -1.0))

    def __mul__(self, other):
        if isinstance(other, TriPolynomial):
            return poly_mul(self, other)
        return poly_scale(self, other)

    def __rmul__(self, alpha):
        return poly_scale(self, alpha)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def max_abs_diff(self, other: "TriPolynomial") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def vector(self) -> np.ndarray:
        """Coefficients on ``monomial_basis(n)``."""
        pos = monomial_positions(self.n)
        out = np.zeros(len(pos))
        for exps, v in self.coeffs.items():
            out[pos[exps]] = v
        return out

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[float]) -> "TriPolynomial":
        basis = monomial_basis(n)
        return cls(n, {m: float(v) for m, v in zip(basis, vec)})

    def __str__(self) -> str:
        return format_poly(self)


def monomial(n: int, a: int = 0, b: int = 0, c: int = 0, coeff: float = 1.0) -> TriPolynomial:
    return TriPolynomial(n, {(a, b, c): coeff})


def homogeneous_basis(p: int) -> list[Exponent]:
    """Degree-``p`` exponent triples in descending lex order."""
    return [(a, b, p - a - b) for a in range(p, -1, -1) for b in range(p - a, -1, -1)]


@lru_cache(maxsize=None)
def monomial_basis(n: int) -> tuple[Exponent, ...]:
    return tuple(m for p in range(n + 1) for m in homogeneous_basis(p))


@lru_cache(maxsize=None)
def monomial_positions(n: int) -> Mapping[Exponent, int]:
    return MappingProxyType({m: i for i, m in enumerate(monomial_basis(n))})


def _sort_key(exps: Exponent):
    return (sum(exps), tuple(-e for e in exps))


def format_poly(f: TriPolynomial) -> str:
    """Canonical text, e.g. ``1 - 1 x^2 - 1 y^2 - 1 z^2``."""
    parts = []
    for exps in sorted(f.coeffs, key=_sort_key):
        text = format_number(f.coeffs[exps])
        if text == "0":
            continue
        sign = "-" if text.startswith("-") else "+"
        text = text.lstrip("-")
        factors = [
            var if e == 1 else f"{var}^{e}"
            for var, e in zip("xyz", exps) if e
        ]
        term = " ".join([text] + factors)
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


def fn_map(d: PauliDecomposition, require_symmetric: bool = True) -> TriPolynomial:
    """Polynomial of a symmetric Pauli decomposition.

    Without ``require_symmetric`` the orbit average is used, which is the
    polynomial of ``symmetrize(d)``.

    Raises:
        NotSymmetricError: ``require_symmetric`` is set and some orbit has
            a coefficient spread above 1e-10.
    """
    n = d.n
    coeffs = {}
    worst, worst_type = 0.0, None
    for itype, values in orbit_groups(d).items():
        size = orbit_size(itype)
        if require_symmetric:
            spread_values = values if len(values) == size else values + [0.0]
            spread = max(spread_values) - min(spread_values)
            if spread > worst:
                worst, worst_type = spread, itype
        coeffs[itype[1:]] = 2.0**n * sum(values)
    if require_symmetric and worst > SYMMETRY_TOL:
        raise NotSymmetricError(
            f"decomposition is not permutation-symmetric: orbit of type {worst_type} "
            f"has coefficient spread {worst:.3g}"
        )
    return TriPolynomial(n, coeffs)


def fn_inverse(f: TriPolynomial) -> PauliDecomposition:
    """Symmetric Pauli decomposition whose polynomial is ``f``."""
    n = f.n
    if n < 1:
        raise ValueError("polynomials for states need a qubit count n >= 1")
    if f.degree > n:
        raise ValueError(f"degree {f.degree} exceeds qubit count {n}")
    out = {}
    for (a, b, c), v in f.coeffs.items():
        itype = (n - a - b - c, a, b, c)
        s = v / (2.0**n * orbit_size(itype))
        for index in orbit(itype):
            out[index] = s
    return PauliDecomposition(n, out)


def poly_add(f: TriPolynomial, g: TriPolynomial) -> TriPolynomial:
    if f.n != g.n:
        raise ValueError(f"degree bounds differ: {f.n} vs {g.n}")
    out = dict(f.coeffs)
    for k, v in g.coeffs.items():
        out[k] = out.get(k, 0.0) + v
    return TriPolynomial(f.n, out)


def poly_scale(f: TriPolynomial, alpha: float) -> TriPolynomial:
    return TriPolynomial(f.n, {k: alpha * v for k, v in f.coeffs.items()})


def _mul_dicts(f: Mapping[Exponent, float], g: Mapping[Exponent, float]) -> dict[Exponent, float]:
    out: dict[Exponent, float] = {}
    for (a1, b1, c1), v1 in f.items():
        for (a2, b2, c2), v2 in g.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            out[key] = out.get(key, 0.0) + v1 * v2
    return out


def poly_mul(f: TriPolynomial, g: TriPolynomial) -> TriPolynomial:
    """Product; the degree bound is ``f.n + g.n``."""
    return TriPolynomial(f.n + g.n, _mul_dicts(f.coeffs, g.coeffs))


def r_squared_power(m: int, n: int | None = None) -> TriPolynomial:
    """``(x^2 + y^2 + z^2)^m`` with degree bound ``n`` (default ``2m``)."""
    n = 2 * m if n is None else n
    coeffs = {}
    for i in range(m + 1):
        for j in range(m + 1 - i):
            k = m - i - j
            coeffs[(2 * i, 2 * j, 2 * k)] = factorial(m) / (factorial(i) * factorial(j) * factorial(k))
    return TriPolynomial(n, coeffs)


def check_rotation(R: np.ndarray, tol: float = ORTHOGONAL_TOL) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got shape {R.shape}")
    err = np.max(np.abs(R.T @ R - np.eye(3)))
    if err > tol:
        raise ValueError(f"matrix is not orthogonal (max |R^T R - I| = {err:.3g})")
    return R


def rotate_poly(f: TriPolynomial, R: np.ndarray) -> TriPolynomial:
    """Substitute ``(x, y, z) -> (x, y, z) @ R`` and expand.

    With ``R = phi(g)`` this is the polynomial image of ``g^{(x)n} rho g^{(x)n dagger}``.
    Composition reverses order: rotating by ``R1`` then ``R2`` equals
    rotating by ``R2 @ R1``.
    """
    R = check_rotation(R)
    # new variable j is the linear form sum_i v_i R[i, j]
    linear = [
        {(1, 0, 0): R[0, j], (0, 1, 0): R[1, j], (0, 0, 1): R[2, j]} for j in range(3)
    ]
    powers = [[{(0, 0, 0): 1.0}] for _ in range(3)]

    def power(j, e):
        while len(powers[j]) <= e:
            powers[j].append(_mul_dicts(powers[j][-1], linear[j]))
        return powers[j][e]

    out: dict[Exponent, float] = {}
    for (a, b, c), v in f.coeffs.items():
        term = _mul_dicts(_mul_dicts(power(0, a), power(1, b)), power(2, c))
        for k, w in term.items():
            out[k] = out.get(k, 0.0) + v * w
    return TriPolynomial(f.n, out)


def radial_extract(f: TriPolynomial) -> tuple[np.ndarray, float]:
    """Write ``f`` as ``sum_m b_m (x^2 + y^2 + z^2)^m`` plus a remainder.

    Works from the highest even degree down: the ``x^{2m}`` coefficient of
    ``r^{2m}`` is 1, so ``b_m`` is read off and subtracted.  Returns ``b``
    (length ``n // 2 + 1``) and the l2 norm of what is left, which is zero
    exactly when ``f`` is radial.
    """
    rest = dict(f.coeffs)
    b = np.zeros(f.n // 2 + 1)
    for m in range(f.n // 2, -1, -1):
        bm = rest.get((2 * m, 0, 0), 0.0)
        b[m] = bm
        if bm:
            for k, v in r_squared_power(m).coeffs.items():
                rest[k] = rest.get(k, 0.0) - bm * v
    residual = float(np.sqrt(sum(v * v for v in rest.values())))
    return b, residual


def radial_poly(b: Sequence[float], n: int) -> TriPolynomial:
    """``sum_m b[m] r^{2m}`` with degree bound ``n``."""
    if 2 * (len(b) - 1) > n:
        raise ValueError(f"{len(b)} radial coefficients need degree above {n}")
    out = TriPolynomial(n)
    for m, bm in enumerate(b):
        out = out + poly_scale(r_squared_power(m, n), bm)
    return out


_AXES = {"x": (1, 2), "y": (2, 0), "z": (0, 1)}


@lru_cache(maxsize=None)
def _generator(axis: str, n: int) -> np.ndarray:
    if axis not in _AXES:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}")
    u, w = _AXES[axis]
    basis = monomial_basis(n)
    pos = monomial_positions(n)
    L = np.zeros((len(basis), len(basis)))
    # L_axis = v_u d/dv_w - v_w d/dv_u
    for col, exps in enumerate(basis):
        if exps[w]:
            new = list(exps)
            new[w] -= 1
            new[u] += 1
            L[pos[tuple(new)], col] += exps[w]
        if exps[u]:
            new = list(exps)
            new[u] -= 1
            new[w] += 1
            L[pos[tuple(new)], col] -= exps[u]
    L.setflags(write=False)
    return L


def angular_generator(axis: str, n: int) -> np.ndarray:
    """Matrix of ``L_z = x d/dy - y d/dx`` (and cyclic) on ``monomial_basis(n)``.

    Orientation: ``expm(t * L_axis)`` acting on coefficient vectors equals
    ``rotate_poly`` with ``axis_rotation(axis, t).T``, i.e. it rotates the
    polynomial's argument by ``-t`` in the row-vector convention.
    """
    return _generator(axis, n).copy()


def fischer_weights(basis: Sequence[Exponent]) -> np.ndarray:
    """``sqrt(a! b! c!)``; in these units the generators are antisymmetric."""
    return np.sqrt([float(factorial(a) * factorial(b) * factorial(c)) for a, b, c in basis])


def axis_rotation(axis: str, angle: float) -> np.ndarray:
    """Right-handed rotation by ``angle`` about a coordinate axis."""
    c, s = np.cos(angle), np.sin(angle)
    u, w = _AXES[axis]
    R = np.eye(3)
    R[u, u] = R[w, w] = c
    R[w, u] = s
    R[u, w] = -s
    return R


def exp_generator(axis: str, n: int, t: float) -> np.ndarray:
    return expm(t * _generator(axis, n))


def invariant_dimension(n: int) -> int:
    """Dimension of the rotation-invariant subspace of polynomials of degree <= n.

    Null space of the three stacked generators, relative singular-value
    threshold 1e-9.
    """
    if n < 0:
        raise ValueError("degree bound must be >= 0")
    wts = fischer_weights(monomial_basis(n))
    stacked = np.vstack([wts[:, None] * _generator(a, n) / wts[None, :] for a in "xyz"])
    sv = np.linalg.svd(stacked, compute_uv=False)
    if sv[0] == 0.0:
        return stacked.shape[1]
    rank = int(np.sum(sv > KERNEL_RTOL * sv[0]))
    return stacked.shape[1] - rank


def casimir_matrix(p: int) -> np.ndarray:
    """``L_x^2 + L_y^2 + L_z^2`` on degree-``p`` forms, orthonormal (Fischer) units.

    Symmetric negative semidefinite, eigenvalues ``-l(l+1)``.
    """
    if p < 0:
        raise ValueError("degree must be >= 0")
    sel = slice((p * (p + 1) * (p + 2)) // 6, ((p + 1) * (p + 2) * (p + 3)) // 6)
    wts = fischer_weights(monomial_basis(p)[sel])
    C = np.zeros((len(wts), len(wts)))
    for a in "xyz":
        L = _generator(a, p)[sel, sel]
        A = wts[:, None] * L / wts[None, :]
        C += A @ A
    return (C + C.T) / 2


def casimir_spectrum(p: int, tol: float = CLUSTER_TOL) -> list[tuple[int, int]]:
    """Irreducible content ``[(l, multiplicity), ...]`` of degree-``p`` forms, ``l`` descending.

    Raises:
        NumericalDegeneracyError: an eigenvalue cluster is not within ``tol``
            of some ``l(l+1)``.
    """
    eig = np.sort(-np.linalg.eigvalsh(casimir_matrix(p)))
    clusters: list[list[float]] = []
    for lam in eig:
        if clusters and lam - clusters[-1][-1] < tol:
            clusters[-1].append(lam)
        else:
            clusters.append([lam])
    out = []
    for cl in clusters:
        lam = float(np.mean(cl))
        l = int(round((-1 + np.sqrt(1 + 4 * max(lam, 0.0))) / 2))
        if abs(lam - l * (l + 1)) > tol or cl[-1] - cl[0] > tol:
            raise NumericalDegeneracyError(
                f"eigenvalue cluster near {lam:.9g} does not resolve to l(l+1)"
            )
        out.append((l, len(cl)))
    return sorted(out, reverse=True)
