# tests/test_gadget.py
import pytest

from conftest import connected_after_removal, cycle
from services.errors import GadgetMalformed, NotTwoConnected
from services.gadget import degree2_to_k4, lift_and_project
from services.graph import Graph, check_min_degree, is_two_vertex_connected, spanning_subgraph
from services.io.generators import random_base_graph
from services.oracles import opt_2vcss_bruteforce

LIFTED_GUARD = 36


class TestConstruction:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_cycle_counts(self, n):
        lifted, gmap = degree2_to_k4(cycle(n))
        assert gmap.n_g == n
        assert lifted.n == n + 3 * n
        assert lifted.m == n + 6 * n
        assert check_min_degree(lifted, 3)
        assert is_two_vertex_connected(lifted)

    def test_no_degree_two_vertices(self, k4):
        lifted, gmap = degree2_to_k4(k4)
        assert lifted == k4
        assert gmap.n_g == 0

    def test_canonical_ids(self):
        lifted, gmap = degree2_to_k4(cycle(4))
        gadget = gmap.replaced[0]
        assert (gadget.attach0, gadget.attach1, gadget.inner2, gadget.inner3) == (0, 4, 5, 6)
        assert lifted.has_edge(0, gmap.port(1, 0))
        assert lifted.degree(gadget.attach0) == 4 and lifted.degree(gadget.inner2) == 3

    def test_rejects_non_2vc(self):
        with pytest.raises(NotTwoConnected):
            degree2_to_k4(Graph.from_edges(3, [(0, 1), (1, 2)]))

    @pytest.mark.parametrize("seed", range(5))
    def test_random_bases_stay_2vc(self, seed):
        base = random_base_graph(6, 2, seed)
        lifted, gmap = degree2_to_k4(base)
        assert connected_after_removal(lifted)
        assert lifted.m == base.m + 6 * gmap.n_g


class TestLiftAndProject:
    def test_lift_then_project_cycle(self):
        g = cycle(4)
        lifted, gmap = degree2_to_k4(g)
        h_prime = gmap.lift(g.sorted_edges())
        assert len(h_prime) == 16
        assert is_two_vertex_connected(spanning_subgraph(lifted, h_prime))
        h, consistent = lift_and_project(g, lifted, gmap, h_prime)
        assert h == g.sorted_edges()
        assert consistent

    def test_identity_without_gadgets(self, k4):
        lifted, gmap = degree2_to_k4(k4)
        h_prime = [(0, 1), (1, 3), (2, 3), (0, 2)]
        h, consistent = lift_and_project(k4, lifted, gmap, h_prime)
        assert h == sorted(h_prime)
        assert consistent

    def test_non_spanning_lift_rejected(self):
        g = cycle(3)
        lifted, gmap = degree2_to_k4(g)
        h_prime = gmap.lift(g.sorted_edges())[1:]
        with pytest.raises(GadgetMalformed):
            lift_and_project(g, lifted, gmap, h_prime)


class TestOptimumCorrespondence:
    @pytest.mark.parametrize("n, opt", [(3, 3), (4, 4)])
    def test_cycles(self, n, opt):
        g = cycle(n)
        lifted, gmap = degree2_to_k4(g)
        assert opt_2vcss_bruteforce(g).size == opt
        lifted_opt = opt_2vcss_bruteforce(lifted, guard=LIFTED_GUARD)
        assert lifted_opt.size == opt + 3 * gmap.n_g
        h, consistent = lift_and_project(g, lifted, gmap, lifted_opt.witness)
        assert consistent and len(h) == opt

    @pytest.mark.slow
    def test_five_cycle(self):
        g = cycle(5)
        lifted, gmap = degree2_to_k4(g)
        assert opt_2vcss_bruteforce(lifted, guard=LIFTED_GUARD).size == 5 + 3 * 5

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(10))
    def test_random_bases(self, seed):
        n, chords = [(4, 1), (5, 2)][seed % 2]
        g = random_base_graph(n, chords, seed)
        lifted, gmap = degree2_to_k4(g)
        assert lifted.m <= LIFTED_GUARD
        base = opt_2vcss_bruteforce(g)
        lifted_opt = opt_2vcss_bruteforce(lifted, guard=LIFTED_GUARD)
        assert lifted_opt.size == base.size + 3 * gmap.n_g
        witness = gmap.lift(base.witness)
        assert len(witness) == base.size + 3 * gmap.n_g
        assert is_two_vertex_connected(spanning_subgraph(lifted, witness))
