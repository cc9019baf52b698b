import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symwerner.errors import NotSymmetricError
from symwerner.pauli import PauliDecomposition, decompose, reconstruct, symmetrize, tensor
from symwerner.polynomial import (
    TriPolynomial,
    angular_generator,
    axis_rotation,
    casimir_spectrum,
    exp_generator,
    fischer_weights,
    fn_inverse,
    fn_map,
    format_poly,
    invariant_dimension,
    monomial_basis,
    poly_add,
    poly_mul,
    poly_scale,
    r_squared_power,
    radial_extract,
    radial_poly,
    rotate_poly,
)
from symwerner.rotation import haar_random_su2, phi
from symwerner.states import named_state, random_symmetric_state


def P(n, terms):
    return TriPolynomial(n, terms)


X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
ONE = (0, 0, 0)
R2 = {(2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0}


def random_poly(n, rng):
    return TriPolynomial.from_vector(n, rng.standard_normal(len(monomial_basis(n))))


def test_fn_map_table_examples():
    assert fn_map(decompose(named_state("basis0"))).max_abs_diff(P(1, {ONE: 1, Z: 1})) < 1e-12
    singlet = P(2, {ONE: 1, (2, 0, 0): -1, (0, 2, 0): -1, (0, 0, 2): -1})
    assert fn_map(decompose(named_state("singlet"))).max_abs_diff(singlet) < 1e-12
    ghz = P(3, {ONE: 1, (0, 0, 2): 3, (3, 0, 0): 1, (1, 2, 0): -3})
    assert fn_map(decompose(named_state("ghz", 3))).max_abs_diff(ghz) < 1e-12


def test_fn_map_rejects_non_symmetric():
    d = PauliDecomposition(2, {(0, 0): 0.25, (0, 3): 0.25})
    with pytest.raises(NotSymmetricError, match="spread"):
        fn_map(d)
    # without the check the orbit average is used
    assert fn_map(d, require_symmetric=False).max_abs_diff(fn_map(symmetrize(d))) < 1e-15


def test_fn_inverse_examples():
    np.testing.assert_allclose(fn_inverse(P(1, {ONE: 1})).to_array(), decompose(np.eye(2) / 2).to_array())
    d = fn_inverse(P(2, {ONE: 1, (0, 0, 2): 1}))
    expected = decompose((named_state("basis0", 2) + named_state("basis1", 2)) / 2)
    assert d.max_abs_diff(expected) < 1e-15


def test_fn_inverse_rejects_high_degree():
    # the constructor already forbids this, so force the bound down afterwards
    f = TriPolynomial(3, {(3, 0, 0): 1.0})
    object.__setattr__(f, "n", 2)
    with pytest.raises(ValueError, match="degree"):
        fn_inverse(f)
    with pytest.raises(ValueError):
        TriPolynomial(2, {(3, 0, 0): 1.0})


def test_round_trip_random(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        d = random_symmetric_state(n, rng)
        assert fn_inverse(fn_map(d)).max_abs_diff(d) < 1e-10
        f = random_poly(n, rng)
        assert fn_map(fn_inverse(f)).max_abs_diff(f) < 1e-10


def test_add_and_scale():
    mix = poly_add(poly_scale(P(1, {ONE: 1, Z: 1}), 0.5), poly_scale(P(1, {ONE: 1, Z: -1}), 0.5))
    assert mix.coeffs == {ONE: 1.0}
    f = P(2, {X: 2.0})
    assert poly_add(f, TriPolynomial(2)) == f
    with pytest.raises(ValueError):
        poly_add(f, TriPolynomial(3))


def test_linearity_against_fn_map(rng):
    for _ in range(10):
        n = int(rng.integers(1, 5))
        d1, d2 = random_symmetric_state(n, rng), random_symmetric_state(n, rng)
        p = rng.uniform()
        lhs = fn_map(p * d1 + (1 - p) * d2)
        rhs = poly_scale(fn_map(d1), p) + poly_scale(fn_map(d2), 1 - p)
        assert lhs.max_abs_diff(rhs) < 1e-12


def test_poly_mul_squares():
    one_z = P(1, {ONE: 1, Z: 1})
    sq = poly_mul(one_z, one_z)
    assert sq.n == 2
    assert sq.coeffs == {ONE: 1.0, Z: 2.0, (0, 0, 2): 1.0}
    assert fn_map(decompose(named_state("basis0", 2))).max_abs_diff(sq) < 1e-12


def test_w_state_factorization():
    factor = P(2, {ONE: 1, (2, 0, 0): 2, (0, 2, 0): 2, (0, 0, 2): -1})
    product = poly_mul(P(1, {ONE: 1, Z: 1}), factor)
    assert fn_map(decompose(named_state("w", 3))).max_abs_diff(product) < 1e-12
    # the second factor is not a state
    assert np.linalg.eigvalsh(reconstruct(fn_inverse(factor)))[0] < 0


def test_product_law(rng):
    for _ in range(20):
        d1, d2 = random_symmetric_state(2, rng), random_symmetric_state(1, rng)
        lhs = fn_map(symmetrize(tensor(d1, d2)))
        assert lhs.max_abs_diff(poly_mul(fn_map(d1), fn_map(d2))) < 1e-10


def test_rotate_identity_and_invariant(rng):
    f = random_poly(3, rng)
    assert rotate_poly(f, np.eye(3)).max_abs_diff(f) < 1e-15
    r2 = P(2, R2)
    for _ in range(20):
        R = phi(haar_random_su2(rng))
        assert rotate_poly(r2, R).max_abs_diff(r2) < 1e-10


def test_rotate_z_axis_to_x_axis():
    R = axis_rotation("y", np.pi / 2)
    out = rotate_poly(P(1, {ONE: 1, Z: 1}), R)
    assert out.max_abs_diff(P(1, {ONE: 1, X: 1})) < 1e-15
    assert out.max_abs_diff(fn_map(decompose(named_state("plus")))) < 1e-12


def test_rotate_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        rotate_poly(P(1, {X: 1}), np.diag([1.0, 1.0, 2.0]))


def test_rotate_composition(rng):
    # substitution is a right action: rotating by R1 then R2 is rotating by R2 @ R1
    for _ in range(10):
        f = random_poly(4, rng)
        R1, R2_ = phi(haar_random_su2(rng)), phi(haar_random_su2(rng))
        twice = rotate_poly(rotate_poly(f, R1), R2_)
        assert twice.max_abs_diff(rotate_poly(f, R2_ @ R1)) < 1e-9


def test_rotate_preserves_homogeneous_degree(rng):
    f = P(3, {(1, 2, 0): 1.0, (0, 0, 3): -2.0})
    out = rotate_poly(f, phi(haar_random_su2(rng)))
    assert all(sum(e) == 3 for e in out.coeffs)


def _least_squares_radial(f):
    basis = monomial_basis(f.n)
    cols = [r_squared_power(m, f.n).vector() for m in range(f.n // 2 + 1)]
    A = np.array(cols).T
    b, *_ = np.linalg.lstsq(A, f.vector(), rcond=None)
    return b, float(np.linalg.norm(A @ b - f.vector())), len(basis)


def test_radial_extract_examples():
    b, res = radial_extract(P(2, {ONE: 1, **{k: -1 for k in R2}}))
    np.testing.assert_allclose(b, [1, -1])
    assert res == 0
    f = radial_poly([1, 2, 0.2], 4)
    b, res = radial_extract(f)
    np.testing.assert_allclose(b, [1, 2, 0.2], atol=1e-15)
    assert res < 1e-15


def test_radial_extract_ghz_residual():
    ghz = P(3, {ONE: 1, (0, 0, 2): 3, (3, 0, 0): 1, (1, 2, 0): -3})
    _, res = radial_extract(ghz)
    _, lsq_res, _ = _least_squares_radial(ghz)
    assert lsq_res > 0.1
    assert res > 0.1
    # triangular elimination can only leave more behind than the best fit
    assert res >= lsq_res - 1e-12


def test_radial_extract_random_radial(rng):
    for _ in range(20):
        n = int(rng.integers(0, 9))
        b = rng.standard_normal(n // 2 + 1)
        got, res = radial_extract(radial_poly(b, n))
        assert res <= 1e-12
        assert np.max(np.abs(got - b)) <= 1e-10
        lsq_b, _, _ = _least_squares_radial(radial_poly(b, n))
        assert np.max(np.abs(lsq_b - b)) < 1e-10


def test_generator_action():
    pos = {m: i for i, m in enumerate(monomial_basis(2))}
    Lz = angular_generator("z", 2)
    assert not Lz[:, pos[Z]].any()
    vec = Lz[:, pos[X]]
    assert vec[pos[Y]] == -1 and np.count_nonzero(vec) == 1
    vec = Lz[:, pos[Y]]
    assert vec[pos[X]] == 1 and np.count_nonzero(vec) == 1
    r2 = P(2, R2).vector()
    for axis in "xyz":
        assert not np.any(angular_generator(axis, 2) @ r2)


def test_generator_antisymmetric_in_fischer_units():
    w = fischer_weights(monomial_basis(5))
    for axis in "xyz":
        A = w[:, None] * angular_generator(axis, 5) / w[None, :]
        np.testing.assert_allclose(A, -A.T, atol=1e-12)


def test_generator_commutation():
    Lx, Ly, Lz = (angular_generator(a, 4) for a in "xyz")
    # consistent orientation up to a common sign
    comm = Lx @ Ly - Ly @ Lx
    assert np.allclose(comm, -Lz) or np.allclose(comm, Lz)


@pytest.mark.parametrize("axis", "xyz")
@pytest.mark.parametrize("t", [0.1, 0.5, 1.0])
def test_exp_generator_matches_rotation(axis, t, rng):
    for n in (3, 8):
        f = random_poly(n, rng)
        via_exp = exp_generator(axis, n, t) @ f.vector()
        via_sub = rotate_poly(f, axis_rotation(axis, t).T).vector()
        assert np.max(np.abs(via_exp - via_sub)) < 1e-7


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (5, 3), (8, 5)])
def test_invariant_dimension_examples(n, expected):
    assert invariant_dimension(n) == expected


def test_invariant_dimension_formula():
    assert [invariant_dimension(n) for n in range(9)] == [n // 2 + 1 for n in range(9)]


def test_casimir_spectrum_examples():
    assert casimir_spectrum(0) == [(0, 1)]
    assert casimir_spectrum(2) == [(2, 5), (0, 1)]
    assert casimir_spectrum(3) == [(3, 7), (1, 3)]


@pytest.mark.parametrize("p", range(9))
def test_casimir_spectrum_blocks(p):
    blocks = casimir_spectrum(p)
    assert [l for l, _ in blocks] == list(range(p, -1, -2))
    assert all(mult == 2 * l + 1 for l, mult in blocks)
    assert sum(mult for _, mult in blocks) == (p + 1) * (p + 2) // 2


def test_format_poly():
    assert format_poly(P(2, {ONE: 1, **{k: -1 for k in R2}})) == "1 - 1 x^2 - 1 y^2 - 1 z^2"
    ghz = P(3, {ONE: 1, (0, 0, 2): 3, (3, 0, 0): 1, (1, 2, 0): -3})
    assert format_poly(ghz) == "1 + 3 z^2 + 1 x^3 - 3 x y^2"
    assert format_poly(TriPolynomial(2)) == "0"
    assert format_poly(P(2, {(1, 1, 0): -1 / 3})) == "-0.333333333333 x y"
    assert format_poly(P(1, {ONE: 2.9999999999999996})) == "3"


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(-2, 2, allow_nan=False), min_size=4, max_size=4),
    st.lists(st.floats(-2, 2, allow_nan=False), min_size=4, max_size=4),
)
def test_poly_mul_commutative_and_distributive(a, b):
    f = TriPolynomial.from_vector(1, a)
    g = TriPolynomial.from_vector(1, b)
    assert poly_mul(f, g).max_abs_diff(poly_mul(g, f)) < 1e-12
    h = poly_add(f, g)
    lhs = poly_mul(h, f)
    rhs = poly_add(poly_mul(f, f), poly_mul(g, f))
    assert lhs.max_abs_diff(rhs) < 1e-12
