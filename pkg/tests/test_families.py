import json

import numpy as np
import pytest

from bridge_spectra.bounds import full_grid
from bridge_spectra.eigensolver import lambda2
from bridge_spectra.families import (
    FamilyError,
    FamilySpec,
    bridge_chain,
    complete,
    dumbbell,
    dumbbell_multi,
    full_binary_tree,
    general_bridge2k,
    is_descendant,
    path,
    random_connected,
    star,
    star_bridge,
    subtree,
    to_json,
    from_json,
    tree_bridge,
    tree_chain,
    tree_height,
    tree_multi,
)
from bridge_spectra.graph_core import Graph


def spectrum(g):
    from bridge_spectra.graph_core import build_laplacian
    return np.linalg.eigvalsh(build_laplacian(g).entries)


class TestBasicGraphs:
    def test_counts(self):
        assert complete(6).num_edges == 15
        assert path(5).num_edges == 4
        assert star(7).degree_sequence() == [6] + [1] * 6
        assert full_binary_tree(3).num_vertices == 7

    def test_tree_height(self):
        assert [tree_height(n) for n in (1, 3, 7, 15)] == [1, 2, 3, 4]
        for bad in (2, 4, 6, 8):
            with pytest.raises(FamilyError):
                tree_height(bad)

    def test_heap_labels(self):
        assert subtree(2, 7) == [2, 4, 5]
        assert is_descendant(5, 2) and not is_descendant(2, 2) and not is_descendant(6, 2)


class TestBridgeFamilies:
    def test_dumbbell_example(self):
        g = dumbbell(8, 3)
        assert (g.num_vertices, g.num_edges) == (17, 58)
        assert g.has_edge(8, 9) and g.has_edge(9, 10)

    def test_dumbbell_single_vertex_path_redirects(self):
        with pytest.raises(FamilyError, match="dumbbell_multi"):
            dumbbell(5, 1)

    def test_dumbbell_m2_is_single_bridge(self):
        a, b = dumbbell(5, 2), dumbbell_multi(5, 1)
        assert sorted(a.degree_sequence()) == sorted(b.degree_sequence())
        np.testing.assert_allclose(spectrum(a), spectrum(b), atol=1e-10)

    def test_star_bridge_layout(self):
        g = star_bridge(5, 3)
        assert (g.num_vertices, g.num_edges) == (11, 10)
        assert g.has_edge(1, 6) and g.has_edge(6, 7)
        assert g.degree_sequence()[6] == 5

    def test_tree_bridge_layout(self):
        g = tree_bridge(7, 3)
        assert (g.num_vertices, g.num_edges) == (15, 14)
        assert g.has_edge(1, 8) and g.has_edge(8, 9)
        assert g.has_edge(9, 10) and g.has_edge(9, 11)

    def test_tree_chain_example(self):
        g = tree_chain(7, 3)
        assert (g.num_vertices, g.num_edges) == (21, 20)
        assert g.has_edge(1, 8) and g.has_edge(8, 15)

    def test_general_equals_dumbbell_multi_for_complete_base(self):
        for n in (3, 5):
            for k in range(1, n + 1):
                assert general_bridge2k(complete(n), k) == dumbbell_multi(n, k)

    def test_chain_of_single_vertices_is_p2(self):
        assert bridge_chain(Graph(1, ()), 2) == path(2)

    def test_bridge_chain_first_bridge(self):
        g = bridge_chain(path(3), 3)
        assert g.has_edge(3, 4) and g.has_edge(6, 7) and g.num_edges == 8

    def test_pairing_validation(self):
        with pytest.raises(FamilyError):
            dumbbell_multi(4, 2, pairing=[(1, 5), (1, 6)])
        with pytest.raises(FamilyError):
            dumbbell_multi(4, 5)
        with pytest.raises(FamilyError):
            general_bridge2k(Graph(3, ((1, 2),)), 1)

    def test_tree_multi_uses_identity_pairing(self):
        g = tree_multi(7, 2)
        assert g.has_edge(1, 8) and g.has_edge(2, 9)

    def test_attachment_validation(self):
        with pytest.raises(FamilyError):
            star_bridge(5, 3, attach1=6)
        with pytest.raises(FamilyError):
            tree_bridge(6, 3)

    def test_removing_a_bridge_disconnects(self):
        for g, e in ((dumbbell(5, 2), (5, 6)), (tree_chain(7, 3), (1, 8)),
                     (bridge_chain(complete(4), 3), (4, 5))):
            h = g.remove_edge(*e)
            assert not h.is_connected()
            assert lambda2(h) < 1e-9


class TestGrid:
    def test_every_grid_instance_is_connected(self):
        for spec in full_grid():
            g = spec.build()
            assert g.is_connected(), spec
            assert lambda2(g) > 1e-9, spec

    def test_edge_counts_match_formulae(self):
        for spec in full_grid():
            g = spec.build()
            n, m, k, l = spec.n, spec.m, spec.k, spec.l
            f = spec.family
            if f == "dumbbell":
                assert g.num_edges == n * (n - 1) + m - 1
            elif f in ("star_bridge", "tree_bridge"):
                assert g.num_edges == 2 * (n - 1) + m - 1
            elif f == "dumbbell_multi":
                assert g.num_edges == n * (n - 1) + k
            elif f == "tree_multi":
                assert g.num_edges == 2 * (n - 1) + k
            elif f == "tree_chain":
                assert g.num_edges == l * (n - 1) + l - 1
            elif f == "bridge_chain":
                assert g.num_edges == l * spec.base.num_edges + l - 1


class TestRandomAndJson:
    def test_random_connected(self):
        rng = np.random.default_rng(1)
        for n in range(1, 12):
            g = random_connected(n, rng)
            assert g.num_vertices == n and g.is_connected()

    def test_json_round_trip(self):
        spec = FamilySpec("star_bridge", n=5, m=3, attachments=(2, 8))
        g = spec.build()
        doc = json.loads(to_json(g, spec))
        assert doc["family"] == "star_bridge" and doc["n"] == g.num_vertices
        assert from_json(to_json(g, spec)) == g
