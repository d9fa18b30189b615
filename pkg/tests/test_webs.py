"""Web validation, 1-sets, cycles, Tait counts, JSON I/O, and generation."""

import itertools
import random

import networkx as nx
import pytest

from webfoam.errors import InputError, ValidationError
from webfoam import webs
from webfoam.webs import (
    Edge,
    EdgeSubset,
    NonPlanarPredictionWarning,
    Web,
    complement_cycles,
    corpus_names,
    corpus_web,
    count_tait_backtracking,
    count_tait_matching_formula,
    disjoint_union,
    generate_connected_cubic,
    is_abstract_planar,
    is_even,
    load_web,
    one_sets,
    predict_planar_rank,
    web_from_dict,
    web_to_dict,
)

UNKNOT = Web("unknot", (), (Edge("e", ()),), True)
THETA = Web(
    "theta",
    ("a", "b"),
    (Edge("e1", ("a", "b")), Edge("e2", ("a", "b")), Edge("e3", ("a", "b"))),
    True,
)
HANDCUFFS = Web(
    "handcuffs",
    ("a", "b"),
    (Edge("l1", ("a",)), Edge("c", ("a", "b")), Edge("l2", ("b",))),
    True,
)
EMPTY = Web("empty", (), (), True)


class TestValidation:
    def test_valid_webs(self):
        assert THETA.validate() is THETA
        assert UNKNOT.validate() is UNKNOT
        assert HANDCUFFS.validate() is HANDCUFFS

    def test_single_loop_vertex_reports_the_vertex(self):
        bad = Web("bad", ("v",), (Edge("l", ("v",)),))
        with pytest.raises(ValidationError, match="'v' has valence 2"):
            bad.validate()

    def test_all_offenders_reported(self):
        bad = Web("bad", ("v", "w"), (Edge("e", ("v", "w")),))
        with pytest.raises(ValidationError, match="'v'.*'w'"):
            bad.validate()

    def test_duplicate_edge_ids_rejected(self):
        with pytest.raises(ValidationError, match="duplicate edge ids"):
            Web("bad", ("a", "b"), (Edge("e", ("a", "b")), Edge("e", ("a", "b"))))

    def test_regular_edge_needs_distinct_ends(self):
        with pytest.raises(ValidationError, match="loop form"):
            Web("bad", ("a",), (Edge("e", ("a", "a")),))

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValidationError, match="unknown vertex"):
            Web("bad", ("a",), (Edge("e", ("a", "z")),))


def brute_force_one_sets(web: Web) -> set[frozenset]:
    """Oracle: filter all edge subsets by the multiplicity-1 condition."""
    ids = [e.id for e in web.edges]
    found = set()
    for k in range(len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            s = EdgeSubset(web, frozenset(combo))
            if s.is_one_set():
                found.add(s.edges)
    return found


class TestOneSets:
    def test_unknot_has_both(self):
        got = {s.edges for s in one_sets(UNKNOT)}
        assert got == {frozenset(), frozenset({"e"})}

    def test_theta_singletons(self):
        got = {s.edges for s in one_sets(THETA)}
        assert got == {frozenset({"e1"}), frozenset({"e2"}), frozenset({"e3"})}

    def test_handcuffs_unique(self):
        got = [s.edges for s in one_sets(HANDCUFFS)]
        assert got == [frozenset({"c"})]

    def test_matches_brute_force_on_corpus(self):
        for name in ("theta", "handcuffs", "k4", "two_theta", "unknot"):
            web = corpus_web(name)
            assert {s.edges for s in one_sets(web)} == brute_force_one_sets(web)

    def test_matches_brute_force_on_generated(self):
        for web in generate_connected_cubic(6):
            assert {s.edges for s in one_sets(web)} == brute_force_one_sets(web)

    def test_loops_never_in_one_sets(self):
        for n in (2, 4, 6):
            for web in generate_connected_cubic(n):
                loop_ids = {e.id for e in web.loops}
                for s in one_sets(web):
                    assert not (s.edges & loop_ids)

    def test_circles_double_the_count(self):
        doubled = disjoint_union(THETA, UNKNOT)
        assert len(one_sets(doubled)) == 2 * len(one_sets(THETA))

    def test_complement_is_two_set(self):
        for web in generate_connected_cubic(6):
            for s in one_sets(web):
                assert EdgeSubset(web, s.complement()).is_two_set()


class TestComplementCycles:
    def test_theta_single_two_cycle(self):
        dec = complement_cycles(THETA, frozenset({"e1"}))
        assert dec.n == 1
        (comp,) = dec.components
        assert sorted(comp.vertices) == ["a", "b"]
        assert sorted(comp.edge_ids) == ["e2", "e3"]
        assert not comp.is_circle

    def test_unknot_cases(self):
        dec = complement_cycles(UNKNOT, frozenset())
        assert dec.n == 1 and dec.components[0].is_circle
        dec = complement_cycles(UNKNOT, frozenset({"e"}))
        assert dec.n == 0

    def test_handcuffs_loop_cycles(self):
        dec = complement_cycles(HANDCUFFS, frozenset({"c"}))
        assert dec.n == 2
        assert all(len(c.vertices) == 1 for c in dec.components)

    def test_rejects_non_one_sets(self):
        with pytest.raises(ValidationError, match="not a 1-set"):
            complement_cycles(THETA, frozenset({"e1", "e2"}))

    def test_components_partition_complement(self):
        for web in generate_connected_cubic(8)[::7]:
            for s in one_sets(web):
                dec = complement_cycles(web, s)
                edge_ids = [eid for c in dec.components for eid in c.edge_ids]
                assert sorted(edge_ids) == sorted(s.complement())
                verts = [v for c in dec.components for v in c.vertices]
                assert sorted(verts) == sorted(web.vertices)


class TestEvenness:
    def test_theta_even(self):
        assert is_even(THETA, frozenset({"e1"}))

    def test_handcuffs_odd(self):
        assert not is_even(HANDCUFFS, frozenset({"c"}))

    def test_unknot_empty_even(self):
        assert is_even(UNKNOT, frozenset())
        assert is_even(UNKNOT, frozenset({"e"}))

    def test_matches_vertex_parity(self):
        for web in generate_connected_cubic(6):
            for s in one_sets(web):
                dec = complement_cycles(web, s)
                expected = all(len(c.vertices) % 2 == 0 for c in dec.components)
                assert is_even(web, s) == expected


CORPUS_COUNTS = {
    "unknot": 3,
    "theta": 6,
    "handcuffs": 0,
    "k4": 6,
    "cube": 24,
    "petersen": 0,
    "dodecahedron": 60,
    "two_theta": 36,
}


class TestTaitCounts:
    def test_corpus_values(self):
        assert set(corpus_names()) == set(CORPUS_COUNTS)
        for name, expected in CORPUS_COUNTS.items():
            web = corpus_web(name)
            assert count_tait_backtracking(web) == expected, name
            assert count_tait_matching_formula(web) == expected, name

    def test_identity_on_generated_graphs(self):
        for n in (2, 4, 6, 8):
            for web in generate_connected_cubic(n):
                assert count_tait_backtracking(web) == count_tait_matching_formula(
                    web
                ), web.name

    def test_identity_up_to_twelve_vertices(self):
        # the 10-vertex layer runs in the verification suite; this covers 12
        for web in generate_connected_cubic(12):
            assert count_tait_backtracking(web) == count_tait_matching_formula(
                web
            ), web.name

    def test_empty_web_counts_one(self):
        assert count_tait_backtracking(EMPTY) == 1
        assert count_tait_matching_formula(EMPTY) == 1

    def test_multiplicative_under_disjoint_union(self):
        pairs = [(UNKNOT, UNKNOT, 9), (THETA, UNKNOT, 18), (THETA, THETA, 36)]
        for a, b, expected in pairs:
            union = disjoint_union(a, b)
            assert count_tait_backtracking(union) == expected
            assert count_tait_matching_formula(union) == expected

    def test_union_with_empty_is_neutral(self):
        union = disjoint_union(THETA, EMPTY)
        assert count_tait_backtracking(union) == 6
        assert count_tait_matching_formula(union) == 6


class TestPlanarPrediction:
    def test_planar_webs_quiet(self):
        import warnings as _warnings

        with _warnings.catch_warnings():
            _warnings.simplefilter("error")
            assert predict_planar_rank(corpus_web("theta")) == 6
            assert predict_planar_rank(corpus_web("handcuffs")) == 0
            assert predict_planar_rank(corpus_web("dodecahedron")) == 60

    def test_nonplanar_warns(self):
        with pytest.warns(NonPlanarPredictionWarning, match="no planar backing"):
            assert predict_planar_rank(corpus_web("petersen")) == 0

    def test_false_declaration_warns(self):
        data = web_to_dict(corpus_web("petersen"))
        data["planar"] = True
        liar = web_from_dict(data)
        with pytest.warns(NonPlanarPredictionWarning, match="cannot be honored"):
            predict_planar_rank(liar)

    def test_undeclared_planarity_warns(self):
        data = web_to_dict(corpus_web("theta"))
        del data["planar"]
        modest = web_from_dict(data)
        with pytest.warns(NonPlanarPredictionWarning):
            assert predict_planar_rank(modest) == 6

    def test_abstract_planarity(self):
        assert is_abstract_planar(corpus_web("k4"))
        assert is_abstract_planar(corpus_web("dodecahedron"))
        assert not is_abstract_planar(corpus_web("petersen"))


class TestJson:
    def test_round_trip_corpus(self):
        for name in corpus_names():
            web = corpus_web(name)
            assert web_from_dict(web_to_dict(web)) == web

    @pytest.mark.parametrize(
        "mutate, path_fragment",
        [
            (lambda d: d.update(vertices=3), "vertices"),
            (lambda d: d["edges"].append({"id": "x"}), r"edges\[3\]"),
            (
                lambda d: d["edges"].append({"id": "x", "ends": ["a", "a"]}),
                "loop form",
            ),
            (
                lambda d: d["edges"].append({"id": "x", "ends": ["a"]}),
                "list of two",
            ),
            (lambda d: d["edges"].append({"id": "x", "circle": 1}), "circle"),
            (
                lambda d: d["edges"].append({"id": "e1", "ends": ["a", "b"]}),
                "duplicate edge ids",
            ),
            (lambda d: d.update(planar="yes"), "planar"),
        ],
    )
    def test_error_paths(self, mutate, path_fragment):
        data = web_to_dict(THETA)
        mutate(data)
        with pytest.raises(InputError, match=path_fragment):
            web_from_dict(data)

    def test_load_reports_json_position(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"name": "x", ')
        with pytest.raises(InputError, match="line 1"):
            load_web(bad)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_web(tmp_path / "nope.json")


def to_nx(web: Web) -> nx.Graph:
    g = nx.Graph()
    for i, v in enumerate(web.vertices):
        g.add_node(v, loops=sum(1 for e in web.loops if e.ends[0] == v))
    mult: dict[tuple[str, str], int] = {}
    for e in web.edges:
        if e.kind == "edge":
            key = tuple(sorted(e.ends))
            mult[key] = mult.get(key, 0) + 1
    for (a, b), m in mult.items():
        g.add_edge(a, b, m=m)
    return g


def web_isomorphic(w1: Web, w2: Web) -> bool:
    return nx.is_isomorphic(
        to_nx(w1),
        to_nx(w2),
        node_match=lambda a, b: a["loops"] == b["loops"],
        edge_match=lambda a, b: a["m"] == b["m"],
    )


class TestGeneration:
    def test_known_counts(self):
        # connected cubic multigraphs with loops on 2, 4, 6, 8 vertices
        assert [len(generate_connected_cubic(n)) for n in (2, 4, 6, 8)] == [
            2,
            5,
            17,
            71,
        ]

    def test_two_vertex_graphs_are_theta_and_handcuffs(self):
        pair = generate_connected_cubic(2)
        assert any(web_isomorphic(w, THETA) for w in pair)
        assert any(web_isomorphic(w, HANDCUFFS) for w in pair)

    def test_rejects_odd_or_nonpositive(self):
        with pytest.raises(ValueError):
            generate_connected_cubic(3)
        with pytest.raises(ValueError):
            generate_connected_cubic(0)

    def test_all_outputs_are_valid_connected_cubic(self):
        for web in generate_connected_cubic(6):
            web.validate()
            g = to_nx(web)
            assert nx.is_connected(g)

    def test_pairwise_non_isomorphic(self):
        graphs = generate_connected_cubic(6)
        for w1, w2 in itertools.combinations(graphs, 2):
            assert not web_isomorphic(w1, w2)

    def test_certificate_invariant_under_relabeling(self):
        # relabel generated graphs at random; the canonical certificate of
        # the permuted multiplicity structure must not change
        rng = random.Random(7)
        for web in generate_connected_cubic(8)[::5]:
            n = len(web.vertices)
            index = {v: i for i, v in enumerate(web.vertices)}
            loops = [0] * n
            mult = [[0] * n for _ in range(n)]
            for e in web.edges:
                if e.kind == "loop":
                    loops[index[e.ends[0]]] += 1
                else:
                    i, j = index[e.ends[0]], index[e.ends[1]]
                    mult[i][j] += 1
                    mult[j][i] += 1
            base = webs._State(
                n, tuple(loops), tuple(tuple(row) for row in mult)
            )
            reference = webs._canonical_certificate(base)
            for _ in range(5):
                perm = list(range(n))
                rng.shuffle(perm)
                ploop = [loops[perm[i]] for i in range(n)]
                pmult = [
                    [mult[perm[i]][perm[j]] for j in range(n)] for i in range(n)
                ]
                permuted = webs._State(
                    n, tuple(ploop), tuple(tuple(row) for row in pmult)
                )
                assert webs._canonical_certificate(permuted) == reference

    def test_includes_simple_cubic_graphs(self):
        # the 6-vertex layer must contain K4 minus... i.e. K_{3,3} and the
        # 3-prism, the only simple connected cubic graphs on 6 vertices
        simple = [
            w for w in generate_connected_cubic(6) if not w.loops and to_nx(w).size() == 9
            and all(d["m"] == 1 for _, _, d in to_nx(w).edges(data=True))
        ]
        assert len(simple) == 2
        k33 = nx.complete_bipartite_graph(3, 3)
        prism = nx.circular_ladder_graph(3)
        matched = {
            name: any(
                nx.is_isomorphic(to_nx(w), target) for w in simple
            )
            for name, target in (("k33", k33), ("prism", prism))
        }
        assert all(matched.values())
