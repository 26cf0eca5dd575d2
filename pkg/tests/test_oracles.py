from squareperc import oracles
from squareperc.constructions import build_complete_bipartite
from squareperc.graph import new_graph


def test_oracle_suite_clean():
    for t in range(200):
        n, p, g = oracles.oracle_instance(2, t, 4, 25)
        assert 4 <= n <= 25 and p in oracles.ORACLE_PROBABILITIES
        assert oracles.check_graph(g) == [], (n, p, t)


def test_oracle_instances_reproducible():
    a = oracles.oracle_instance(9, 3, 4, 25)
    b = oracles.oracle_instance(9, 3, 4, 25)
    assert a == b


def test_enumeration_check_detects_missing_square(monkeypatch):
    g = build_complete_bipartite(2, 3)
    real = oracles.enumerate_squares
    monkeypatch.setattr(oracles, "enumerate_squares", lambda h: real(h)[1:])
    assert oracles.check_enumeration(g)


def test_component_check_detects_wrong_partition(monkeypatch):
    g = new_graph(8, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)])
    real = oracles.t1_components

    def merged(h):
        d = real(h)
        object.__setattr__(d, "labels", d.labels * 0)
        return d

    monkeypatch.setattr(oracles, "t1_components", merged)
    assert oracles.check_components(g)


def test_bonded_check_detects_wrong_characterisation(monkeypatch):
    g = build_complete_bipartite(2, 3)
    monkeypatch.setattr(oracles, "is_bonded_characterization", lambda h, sq: False)
    assert oracles.check_bonded(g)
