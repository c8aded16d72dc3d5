from fractions import Fraction

import numpy as np
import pytest

from bridge_spectra.graph_core import Graph

ACCEPTANCE_LINES: list[str] = []


def charpoly_exact(A) -> list[Fraction]:
    """Coefficients of det(tI - A), highest degree first, by Faddeev-LeVerrier in exact arithmetic."""
    n = len(A)
    A = [[Fraction(int(round(v))) if float(v).is_integer() else Fraction(v) for v in row] for row in A]
    I = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def matmul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = matmul(A, M)
        M = [[AM[i][j] + coeffs[-1] * I[i][j] for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def poly_from_roots(roots) -> np.ndarray:
    c = np.array([1.0])
    for r in roots:
        c = np.convolve(c, [1.0, -r])
    return c


def random_graph(rng: np.random.Generator, n: int, p: float = 0.4, weighted: bool = False) -> Graph:
    edges = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < p:
                w = float(rng.uniform(0.1, 3.0)) if weighted else 1.0
                edges.append((a, b, w))
    return Graph(n, tuple(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
