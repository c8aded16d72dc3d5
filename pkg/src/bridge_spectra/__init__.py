"""Laplacian spectra, test-vector upper bounds and Loewner lower bounds for bridge graphs."""

from .eigensolver import Spectrum, eig_symmetric, fiedler_vector, lambda2
from .families import FamilySpec
from .graph_core import (Graph, LaplacianMatrix, TestVector, build_adjacency, build_degree,
                         build_laplacian, orthogonalize, quadratic_form, rayleigh_quotient)

__all__ = [
    "FamilySpec",
    "Graph",
    "LaplacianMatrix",
    "Spectrum",
    "TestVector",
    "build_adjacency",
    "build_degree",
    "build_laplacian",
    "eig_symmetric",
    "fiedler_vector",
    "lambda2",
    "orthogonalize",
    "quadratic_form",
    "rayleigh_quotient",
]
