# tests/test_generators.py
import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from app.models import InstanceKind
from services.errors import GenerationFailed
from services.graph import check_min_degree, is_two_vertex_connected
from services.io.generators import NAMED_GRAPHS, generate_instance, random_base_graph


class TestGenerateInstance:
    def test_wheel(self):
        g = generate_instance(InstanceKind.WHEEL, {"k": 5})
        assert (g.n, g.m) == (6, 10)
        assert check_min_degree(g, 3)

    def test_hypercube(self):
        g = generate_instance("hypercube", {"dim": "4"})
        assert (g.n, g.m) == (16, 32)

    @pytest.mark.parametrize("name", sorted(NAMED_GRAPHS))
    def test_named(self, name):
        g = generate_instance(InstanceKind.NAMED, {"name": name})
        assert is_two_vertex_connected(g) and check_min_degree(g, 3)

    def test_regular3_deterministic(self):
        a = generate_instance(InstanceKind.REGULAR3, {"n": 10}, seed=7)
        b = generate_instance(InstanceKind.REGULAR3, {"n": 10}, seed=7)
        assert a == b
        assert all(a.degree(v) == 3 for v in range(a.n))
        assert is_two_vertex_connected(a)

    def test_gadget_lift_of_four_cycle(self):
        g = generate_instance(InstanceKind.GADGET_LIFT, {"base": "cycle", "n": 4})
        assert (g.n, g.m) == (16, 28)

    def test_gadget_lift_of_named_graph_is_identity(self):
        g = generate_instance(InstanceKind.GADGET_LIFT, {"base": "named", "name": "petersen"})
        assert (g.n, g.m) == (10, 15)

    @pytest.mark.parametrize("kind, params", [
        (InstanceKind.REGULAR3, {"n": 7}),
        (InstanceKind.WHEEL, {"k": 2}),
        (InstanceKind.HYPERCUBE, {"dim": 2}),
        (InstanceKind.NAMED, {"name": "heawood"}),
        (InstanceKind.WHEEL, {"k": "five"}),
        (InstanceKind.GADGET_LIFT, {"base": "tree"}),
    ])
    def test_invalid_parameters(self, kind, params):
        with pytest.raises(GenerationFailed):
            generate_instance(kind, params)

    @given(st.integers(min_value=0, max_value=100_000), st.sampled_from([4, 5, 6]))
    @settings(max_examples=40, deadline=None)
    def test_gadget_lift_random_in_class(self, seed, n):
        g = generate_instance(InstanceKind.GADGET_LIFT, {"base": "random", "n": n, "chords": 1}, seed)
        assert check_min_degree(g, 3)
        assert nx.is_biconnected(g.to_networkx())


class TestRandomBase:
    @pytest.mark.parametrize("seed", range(10))
    def test_has_degree_two_vertex(self, seed):
        g = random_base_graph(5, 2, seed)
        assert any(g.degree(v) == 2 for v in range(g.n))
        assert is_two_vertex_connected(g)
