import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bridge_spectra.eigensolver import (
    ConvergenceError,
    eig_symmetric,
    fiedler_vector,
    lambda2,
    laplacian_spectrum,
)
from bridge_spectra.families import complete, dumbbell, path, star
from bridge_spectra.graph_core import Graph, GraphError, build_laplacian, orthogonalize, rayleigh_quotient

from conftest import charpoly_exact, poly_from_roots, random_graph


def path_closed_form(n):
    return sorted(2 - 2 * math.cos(k * math.pi / n) for k in range(n))


def star_charpoly(n):
    # t (t - 1)^(n-2) (t - n), expanded exactly
    c = [Fraction(1), Fraction(0)]
    for _ in range(n - 2):
        c = [a - b for a, b in zip(c + [Fraction(0)], [Fraction(0)] + c)]
    return [a - n * b for a, b in zip(c + [Fraction(0)], [Fraction(0)] + c)]


class TestCharpolyOracle:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_path_closed_form(self, n):
        exact = charpoly_exact(build_laplacian(path(n)).entries)
        np.testing.assert_allclose([float(c) for c in exact], poly_from_roots(path_closed_form(n)),
                                   atol=1e-9)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_star_closed_form(self, n):
        assert charpoly_exact(build_laplacian(star(n)).entries) == star_charpoly(n)

    def test_oracle_on_k3(self):
        # det(tI - L(K3)) = t (t - 3)^2
        assert charpoly_exact(build_laplacian(complete(3)).entries) == [1, -6, 9, 0]


class TestSpectra:
    @pytest.mark.parametrize("n", range(2, 21))
    def test_path(self, n):
        got = laplacian_spectrum(path(n)).eigenvalues
        np.testing.assert_allclose(got, path_closed_form(n), atol=1e-9)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_star(self, n):
        got = laplacian_spectrum(star(n)).eigenvalues
        np.testing.assert_allclose(got, [0.0] + [1.0] * (n - 2) + [float(n)], atol=1e-9)

    def test_complete(self):
        for n in range(2, 15):
            assert lambda2(complete(n)) == pytest.approx(n, abs=1e-9)

    def test_disconnected_is_zero(self):
        g = Graph(6, ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)))
        assert lambda2(g) == pytest.approx(0.0, abs=1e-12)
        assert lambda2(Graph(1, ())) == 0.0

    def test_trace_and_psd(self, rng):
        for _ in range(20):
            g = random_graph(rng, int(rng.integers(2, 20)), weighted=True)
            L = build_laplacian(g).entries
            ev = laplacian_spectrum(g).eigenvalues
            assert ev.sum() == pytest.approx(np.trace(L), rel=1e-10, abs=1e-10)
            assert ev[0] >= -1e-10
            assert abs(ev[0]) <= 1e-9

    def test_matches_lapack(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 25))
            B = rng.normal(size=(n, n))
            A = B + B.T
            np.testing.assert_allclose(eig_symmetric(A).eigenvalues, np.linalg.eigvalsh(A),
                                       atol=1e-10 * max(1.0, np.abs(A).max()))

    def test_eigenvector_residuals(self, rng):
        for _ in range(10):
            g = random_graph(rng, 20, p=0.3, weighted=True)
            s = laplacian_spectrum(g)
            L = build_laplacian(g).entries
            assert s.residual < 1e-12
            np.testing.assert_allclose(s.eigenvectors.T @ s.eigenvectors, np.eye(20), atol=1e-10)
            np.testing.assert_allclose(L @ s.eigenvectors, s.eigenvectors * s.eigenvalues, atol=1e-9)


class TestProperties:
    def test_edge_addition_is_monotone(self, rng):
        done = 0
        while done < 50:
            n = int(rng.integers(3, 15))
            g = random_graph(rng, n, p=0.3)
            missing = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if not g.has_edge(a, b)]
            if not missing:
                continue
            a, b = missing[int(rng.integers(len(missing)))]
            assert lambda2(g.add_edge(a, b)) >= lambda2(g) - 1e-10
            done += 1

    def test_sampled_rayleigh_quotients_bound_lambda2(self, rng):
        g = dumbbell(5, 4)
        L = build_laplacian(g)
        lam = lambda2(g)
        samples = [rayleigh_quotient(L, orthogonalize(rng.normal(size=g.num_vertices)))
                   for _ in range(1000)]
        assert min(samples) >= lam - 1e-9

    def test_fiedler_vector(self):
        g = dumbbell(4, 2)
        f = fiedler_vector(g)
        L = build_laplacian(g)
        assert f.is_orthogonal()
        assert np.linalg.norm(f.values) == pytest.approx(1.0)
        assert rayleigh_quotient(L, f) == pytest.approx(lambda2(g), abs=1e-10)
        # the sign pattern separates the two cliques
        signs = np.sign(f.values)
        assert len(set(signs[:4])) == 1 and len(set(signs[4:])) == 1 and signs[0] != signs[4]
        ref = np.linalg.eigh(L.entries)[1][:, 1]
        assert abs(abs(ref @ f.values) - 1.0) < 1e-9

    def test_fiedler_rejects_disconnected(self):
        with pytest.raises(GraphError):
            fiedler_vector(Graph(4, ((1, 2), (3, 4))))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 2**32 - 1))
    def test_interlacing_under_edge_removal(self, n, seed):
        rng = np.random.default_rng(seed)
        g = random_graph(rng, n, p=0.6)
        if g.num_edges == 0:
            return
        u, v, _ = g.edges[int(rng.integers(g.num_edges))]
        full = laplacian_spectrum(g).eigenvalues
        cut = laplacian_spectrum(g.remove_edge(u, v)).eigenvalues
        # removing a unit edge lowers each eigenvalue by at most 2
        assert np.all(cut <= full + 1e-9)
        assert np.all(cut >= full - 2 - 1e-9)


class TestErrors:
    def test_asymmetric(self):
        with pytest.raises(ValueError):
            eig_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_non_square(self):
        with pytest.raises(ValueError):
            eig_symmetric(np.ones((2, 3)))

    def test_sweep_budget(self, rng):
        B = rng.normal(size=(12, 12))
        with pytest.raises(ConvergenceError) as info:
            eig_symmetric(B + B.T, max_sweeps=1)
        assert info.value.sweeps == 1
