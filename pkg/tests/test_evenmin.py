# tests/test_evenmin.py
import pytest
from hypothesis import given, settings, strategies as st

from app.models import InstanceKind
from conftest import cycle, k4_seeded
from services.ears import EarDecomposition, build_open_decomposition, is_open, validate
from services.errors import InstanceTooLarge, NotTwoConnected, PreconditionViolated
from services.evenmin import EvenEarSearch, minimize_even_ears, parity_floor, phi_bruteforce
from services.graph import Graph
from services.io.generators import generate_instance, named_graph


class TestPhiBruteforce:
    @pytest.mark.parametrize("g, expected", [
        (cycle(3), 0),
        (cycle(4), 1),
        (named_graph("k4"), 1),
        (named_graph("k5"), 0),
        (named_graph("k33"), 1),
    ])
    def test_known_values(self, g, expected):
        assert phi_bruteforce(g) == expected

    def test_guard(self, petersen):
        with pytest.raises(InstanceTooLarge):
            phi_bruteforce(petersen, guard=10)

    def test_not_two_connected(self):
        with pytest.raises(NotTwoConnected):
            phi_bruteforce(Graph.from_edges(3, [(0, 1), (1, 2)]))

    def test_search_decomposition_attains_phi(self, prism):
        search = EvenEarSearch(prism)
        d = search.decomposition()
        assert validate(prism, d) == []
        assert is_open(d)
        assert d.even_count == search.phi()

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_invariant_under_relabeling(self, data):
        n = data.draw(st.sampled_from([4, 6, 8]))
        g = generate_instance(InstanceKind.REGULAR3, {"n": n}, data.draw(st.integers(min_value=0, max_value=10_000)))
        permutation = data.draw(st.permutations(list(range(n))))
        assert phi_bruteforce(g.relabel(permutation)) == phi_bruteforce(g)

    @given(st.permutations(list(range(6))))
    @settings(max_examples=20, deadline=None)
    def test_prism_relabeled(self, permutation):
        g = named_graph("prism")
        assert phi_bruteforce(g.relabel(permutation)) == phi_bruteforce(g) == 1

    @given(st.sampled_from([4, 6, 8]), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_parity_law(self, n, seed):
        g = generate_instance(InstanceKind.REGULAR3, {"n": n}, seed)
        phi = phi_bruteforce(g)
        assert phi >= parity_floor(g.n)
        assert phi % 2 == parity_floor(g.n)
        assert build_open_decomposition(g, seed=seed).even_count % 2 == parity_floor(g.n)


class TestMinimizeEvenEars:
    def test_k4_already_minimal(self, k4):
        d, certified = minimize_even_ears(k4, k4_seeded())
        assert d == k4_seeded()
        assert certified

    def test_cycle_unchanged(self):
        g = cycle(4)
        d0 = build_open_decomposition(g)
        d, certified = minimize_even_ears(g, d0)
        assert d == d0 and certified

    def test_invalid_input_rejected(self, k4):
        with pytest.raises(PreconditionViolated):
            minimize_even_ears(k4, EarDecomposition.from_lists(0, [[0, 1, 2, 0]]))

    def test_odd_vertex_count_reaches_zero(self):
        # K5 with an even first ear: 0-1-2-3-0, then 0-4-2 even, then trivials
        g = named_graph("k5")
        d0 = EarDecomposition.from_lists(
            0, [[0, 1, 2, 3, 0], [0, 4, 2], [0, 2], [1, 3], [1, 4], [3, 4]]
        )
        assert validate(g, d0) == [] and d0.even_count == 2
        d, certified = minimize_even_ears(g, d0)
        assert certified
        assert d.even_count == 0
        assert validate(g, d) == [] and is_open(d)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_random_n8_matches_bruteforce(self, seed):
        g = generate_instance(InstanceKind.REGULAR3, {"n": 8}, seed)
        d, certified = minimize_even_ears(g, build_open_decomposition(g, seed=seed))
        assert certified
        assert d.even_count == phi_bruteforce(g)
        assert validate(g, d) == []

    def test_beyond_guard_not_worse(self, petersen):
        d0 = build_open_decomposition(petersen)
        d, certified = minimize_even_ears(petersen, d0, guard=5)
        assert d.even_count <= d0.even_count
        assert certified == (d.even_count == parity_floor(petersen.n))
