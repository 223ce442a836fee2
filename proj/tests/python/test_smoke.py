"""End-to-end smoke tests for the python surface."""

import pytest

import pathinsert as pi


@pytest.fixture(scope="module")
def instance():
    texts = pi.generate(seed=7, stations=5, trains=4, window_start=0,
                        window_end=14400, grid=60)
    net = pi.load_network(texts["network"])
    tt = pi.load_timetable(texts["timetable"], net)
    ps = pi.load_parameters(texts["params"], net)
    return net, tt, ps


def test_generation_is_deterministic():
    a = pi.generate(seed=3)
    b = pi.generate(seed=3)
    assert a == b
    assert a != pi.generate(seed=4)


def test_insert_returns_clean_non_dominated_paths(instance):
    net, tt, ps = instance
    req = pi.InsertionRequest("S01", "S05", 0, 14400)
    res = pi.insert(net, tt, ps, req)
    frontier = res["frontier"]
    assert frontier, "expected at least one path on a lightly used corridor"
    for violations in res["violations"]:
        assert violations == []
    for i, (dep_i, arr_i, _) in enumerate(frontier):
        for j, (dep_j, arr_j, _) in enumerate(frontier):
            if i == j:
                continue
            dominates = dep_j >= dep_i and arr_j <= arr_i and (dep_j > dep_i or arr_j < arr_i)
            assert not dominates
    assert res["report"]["dp_ms"] >= 0
    assert len(res["paths"]) == len(frontier)
    # paths re-verify through the standalone checker as well
    for path in res["paths"]:
        assert pi.verify_path(path, net, tt, ps) == []


def test_engine_matches_the_grid_oracle(instance):
    net, tt, ps = instance
    req = pi.InsertionRequest("S01", "S04", 0, 10800)
    res = pi.insert(net, tt, ps, req)
    oracle = pi.oracle_frontier(net, tt, ps, req, granularity=60)
    expanded = []
    for dep, arr, slack in res["frontier"]:
        first = (-arr) % 60
        for i in range(first, slack + 1, 60):
            expanded.append((dep + i, arr + i, 0))
    assert expanded == [tuple(p) for p in oracle]


def test_validate_is_quiet_on_generated_instances(instance):
    net, tt, ps = instance
    assert [d for d in pi.validate(net, tt, ps) if d.startswith("margin:")] == []


def test_round_trip_serialization(instance):
    net, tt, ps = instance
    net2 = pi.load_network(pi.serialize_network(net))
    assert net2.stations == net.stations
    assert net2.segments == net.segments
    tt2 = pi.load_timetable(pi.serialize_timetable(tt), net2)
    assert tt2.trains == tt.trains


def test_parse_errors_surface_as_value_error():
    with pytest.raises(ValueError, match="line"):
        pi.load_network("nonsense record\n")


def test_infeasible_window_gives_empty_frontier(instance):
    net, tt, ps = instance
    req = pi.InsertionRequest("S01", "S05", 0, 60)
    res = pi.insert(net, tt, ps, req)
    assert res["frontier"] == []
    assert res["paths"] == []


def test_diagram_renders_deterministic_svg(instance):
    net, tt, ps = instance
    svg = pi.render_diagram(net, tt, ps, [])
    assert svg.startswith("<svg")
    assert svg == pi.render_diagram(net, tt, ps, [])


def test_time_parsing_round_trip():
    assert pi.parse_time("07:30:00") == 27000
    assert pi.format_time(27000) == "07:30:00"
    assert pi.parse_time("1970-01-02T00:00:00") == 86400
