import numpy as np
import pytest

from crystalwalk import (
    EigenSolverError,
    NumericalError,
    ParameterError,
    analytic_spectrum,
    build_named,
    cluster_eigenvalues,
    density_from_decomposition,
    eigendecompose_symmetric,
    from_edge_list,
    limiting_density,
    projection_kernels,
)


def random_graph_text(rng, max_nu=32):
    """Random connected-ish edge list; at least one edge, indices < max_nu."""
    nu = int(rng.integers(2, max_nu + 1))
    lines = []
    seen = set()
    for _ in range(int(rng.integers(1, 3 * nu))):
        u = int(rng.integers(0, nu))
        v = int(rng.integers(0, nu))
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in seen:
            continue
        seen.add(e)
        lines.append(f"{e[0]} {e[1]}")
    if not lines:
        lines = ["0 1"]
    return "\n".join(lines)


def test_cluster_eigenvalues_groups_degeneracies():
    vals = np.array([-1.0, -1.0 + 1e-12, 0.5, 2.0])
    groups = cluster_eigenvalues(vals, tol=1e-8)
    assert [list(g) for g in groups] == [[0, 1], [2], [3]]


def test_cluster_eigenvalues_scales_with_radius():
    # gap threshold is tol * max(1, spectral radius)
    vals = np.array([0.0, 5e-7, 100.0])
    groups = cluster_eigenvalues(vals, tol=1e-8)
    assert [list(g) for g in groups] == [[0, 1], [2]]
    vals = np.array([0.0, 5e-7, 1.0])
    groups = cluster_eigenvalues(vals, tol=1e-8)
    assert [list(g) for g in groups] == [[0], [1], [2]]


def test_cluster_eigenvalues_requires_ascending():
    with pytest.raises(ValueError, match="ascending"):
        cluster_eigenvalues(np.array([1.0, 0.0]))


def test_eigendecompose_p2():
    dec = eigendecompose_symmetric(build_named("path", [2]).adjacency)
    np.testing.assert_allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-12)
    assert dec.distinct_count == 2


def test_eigendecompose_c5_clusters():
    dec = eigendecompose_symmetric(build_named("cycle", [5]).adjacency)
    assert [dec.multiplicity(s) for s in range(dec.distinct_count)] == [2, 2, 1]
    golden = 2.0 * np.cos(2.0 * np.pi * np.array([2, 1, 0]) / 5)
    np.testing.assert_allclose(dec.cluster_values, golden, atol=1e-12)


def test_eigendecompose_star3():
    dec = eigendecompose_symmetric(build_named("star", [3]).adjacency)
    root = np.sqrt(3.0)
    np.testing.assert_allclose(dec.eigenvalues, [-root, 0.0, 0.0, root], atol=1e-12)
    assert [len(c) for c in dec.clusters] == [1, 2, 1]


def test_eigendecompose_rejects_bad_input():
    with pytest.raises(ValueError, match="symmetric"):
        eigendecompose_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError, match="square"):
        eigendecompose_symmetric(np.zeros((2, 3)))


def test_eigendecompose_reconstructs_random_matrices():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(1, 12))
        m = rng.normal(size=(n, n))
        m = m + m.T
        dec = eigendecompose_symmetric(m)
        recon = (dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.T
        assert np.abs(m - recon).max() <= 1e-9 * max(1.0, np.abs(m).max())
        assert np.all(np.diff(dec.eigenvalues) >= 0)


def test_projection_kernel_values():
    dec = eigendecompose_symmetric(build_named("cycle", [5]).adjacency)
    kernels = projection_kernels(dec)
    # top eigenvalue 2 has the constant eigenvector
    np.testing.assert_allclose(kernels[-1].matrix, np.full((5, 5), 0.2), atol=1e-12)
    dec = eigendecompose_symmetric(build_named("star", [3]).adjacency)
    zero = projection_kernels(dec)[1]
    assert zero.eigenvalue == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(np.diag(zero.matrix), [2 / 3, 2 / 3, 2 / 3, 0.0], atol=1e-12)


@pytest.mark.parametrize(
    "family,params",
    [("cycle", [6]), ("path", [5]), ("star", [4]), ("hypercube", [3]), ("petersen", [])],
)
def test_projection_invariants(family, params):
    dec = eigendecompose_symmetric(build_named(family, params).adjacency)
    kernels = projection_kernels(dec)
    nu = dec.nu
    total = np.zeros((nu, nu))
    for i, k in enumerate(kernels):
        assert np.abs(k.matrix @ k.matrix - k.matrix).max() <= 1e-10
        assert abs(np.trace(k.matrix) - k.multiplicity) <= 1e-8
        total += k.matrix
        for other in kernels[i + 1 :]:
            assert np.abs(k.matrix @ other.matrix).max() <= 1e-10
    assert np.abs(total - np.eye(nu)).max() <= 1e-10


def test_limiting_density_petersen_golden():
    g = build_named("petersen")
    d = limiting_density(g).values
    for p in range(10):
        assert d[p, p] == pytest.approx(21 / 50, abs=1e-9)
        for q in range(10):
            if q == p:
                continue
            want = 49 / 450 if g.has_edge(p, q) else 19 / 450
            assert d[p, q] == pytest.approx(want, abs=1e-9)


def test_limiting_density_complete_diagonals():
    for nu, want in [(4, 5 / 8), (5, 17 / 25), (100, 0.9802)]:
        d = limiting_density(build_named("complete", [nu])).values
        assert d[0, 0] == pytest.approx(want, abs=1e-9)


def test_limiting_density_complete_bipartite_diagonals():
    # diagonal = 2/(4n^2) + (1 - 1/n)^2 for balanced parts
    for n, want in [(4, 0.59375), (5, 0.66), (100, 0.98015)]:
        d = limiting_density(build_named("complete_bipartite", [n, n])).values
        assert d[0, 0] == pytest.approx(want, abs=1e-9)


def test_limiting_density_star_leaf_mass():
    d = limiting_density(build_named("star", [10])).values
    assert d[0, 0] == pytest.approx(0.815, abs=1e-9)


def test_cycle_density_translation_invariant():
    d = limiting_density(build_named("cycle", [7])).values
    for p in range(7):
        for q in range(7):
            assert d[p, q] == pytest.approx(d[0, (q - p) % 7], abs=1e-12)


def test_density_matrix_basic_properties():
    rng = np.random.default_rng(23)
    for _ in range(10):
        g = from_edge_list(random_graph_text(rng))
        d = limiting_density(g)
        v = d.values
        assert np.abs(v - v.T).max() <= 1e-10
        assert v.min() >= -1e-12 and v.max() <= 1.0 + 1e-12
        assert np.abs(v.sum(axis=1) - 1.0).max() <= 1e-10


def test_edgeless_graph_density_is_identity():
    from crystalwalk import FiniteGraph

    d = limiting_density(FiniteGraph(3, frozenset()))
    np.testing.assert_allclose(d.values, np.eye(3), atol=1e-12)


@pytest.mark.parametrize(
    "family,params",
    [
        ("cycle", [5]),
        ("cycle", [8]),
        ("path", [2]),
        ("path", [7]),
        ("star", [1]),
        ("star", [9]),
        ("hypercube", [4]),
    ],
)
def test_analytic_spectrum_matches_numeric(family, params):
    g = build_named(family, params)
    exact = analytic_spectrum(family, params)
    numeric = eigendecompose_symmetric(g.adjacency)
    np.testing.assert_allclose(exact.eigenvalues, numeric.eigenvalues, atol=1e-9)
    assert [len(c) for c in exact.clusters] == [len(c) for c in numeric.clusters]
    # exact eigenvectors diagonalize the adjacency matrix
    v = exact.eigenvectors
    recon = (v * exact.eigenvalues) @ v.T
    assert np.abs(g.adjacency - recon).max() <= 1e-9
    # independent route to the density agrees with the numeric one
    da = density_from_decomposition(exact).values
    dn = limiting_density(g).values
    assert np.abs(da - dn).max() <= 1e-9


def test_analytic_spectrum_path_values():
    dec = analytic_spectrum("path", [6])
    want = np.sort(2.0 * np.cos(np.pi * np.arange(1, 7) / 7))
    np.testing.assert_allclose(dec.eigenvalues, want, atol=1e-12)
    assert all(len(c) == 1 for c in dec.clusters)


def test_analytic_spectrum_hypercube_multiplicities():
    dec = analytic_spectrum("hypercube", [4])
    assert [len(c) for c in dec.clusters] == [1, 4, 6, 4, 1]
    np.testing.assert_allclose(dec.cluster_values, [-4.0, -2.0, 0.0, 2.0, 4.0], atol=0)


def test_analytic_spectrum_rejects_unknown():
    with pytest.raises(ParameterError):
        analytic_spectrum("petersen", [])
    with pytest.raises(ParameterError):
        analytic_spectrum("cycle", [])


def test_numerical_error_hierarchy():
    assert issubclass(EigenSolverError, NumericalError)
