import json

import pytest

from plugins.canon_base import CanonContext
from plugins.formats import FormatError, load, loads
from route import KindTableDef, routes


def test_syntax_errors_carry_line_and_column():
    with pytest.raises(FormatError) as e:
        loads('{\n  "vertices": [}', "graph")
    assert e.value.line == 2
    assert e.value.column is not None


@pytest.mark.parametrize("doc, path", [
    ([], "$"),
    ({"edges": []}, "$"),
    ({"vertices": ["a", "a"], "edges": []}, "$.vertices"),
    ({"vertices": ["a", 1], "edges": []}, "$.vertices[1]"),
    ({"vertices": ["a", "b"], "edges": [["a", "q"]]}, "$.edges[0][1]"),
    ({"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}, "$.edges[1]"),
    ({"vertices": ["a", "b", "c"], "edges": [["a", "b", "c"]]}, "$.edges[0]"),
    ({"vertices": ["a", "b"], "edges": [], "colors": [["a"]]}, "$.colors"),
    ({"kind": "hyper", "vertices": [], "edges": []}, "$.kind"),
])
def test_graph_errors_point_at_the_value(doc, path):
    with pytest.raises(FormatError) as e:
        loads(json.dumps(doc), "graph")
    assert e.value.path == path


def test_edge_parts_exclude_plain_edges():
    doc = {"vertices": ["a", "b"], "edges": [], "edge_parts": [[["a", "b"]]]}
    with pytest.raises(FormatError):
        loads(json.dumps(doc), "graph")


def test_unknown_kind():
    with pytest.raises(FormatError):
        loads("{}", "matrix")


def test_object_reader_builds_the_dag():
    doc = {"ground": ["a", "b"], "object": {"tuple": [{"vertex": "b"}, {"set": []}]}}
    instance = loads(json.dumps(doc), "object")
    assert instance.dag.to_python() == ("b", frozenset())
    with CanonContext() as ctx:
        assert instance.canonize(ctx).order() == 1


@pytest.mark.parametrize("obj", [
    {"vertex": "z"},
    {"set": [{"vertex": "a"}, {"vertex": "a"}]},
    {"vertex": "a", "set": []},
    {"list": []},
    {"coset": {"generators": [], "rep": {"a": 1, "b": 1}}},
    {"coset": {"generators": [{"a": "a", "b": "a"}], "rep": {"a": 1, "b": 2}}},
])
def test_object_errors(obj):
    with pytest.raises(FormatError):
        loads(json.dumps({"ground": ["a", "b"], "object": obj}), "object")


def test_coset_atoms_accept_both_generator_forms():
    by_map = {"generators": [{"a": "b", "b": "a"}], "rep": {"a": 2, "b": 1}}
    by_cycles = {"generators": [[["a", "b"]]], "rep": {"a": 2, "b": 1}}
    a = loads(json.dumps({"ground": ["a", "b"], "object": {"coset": by_map}}), "object")
    b = loads(json.dumps({"ground": ["a", "b"], "object": {"coset": by_cycles}}), "object")
    assert a.dag.root.value == b.dag.root.value


@pytest.mark.parametrize("doc", [
    {"positions": ["x"], "alphabet": [0, 1], "words": [[0, 1]]},
    {"positions": ["x"], "alphabet": [0, 1], "words": [[2]]},
    {"positions": ["x"], "alphabet": [0, 1], "words": [[0], [0]]},
    {"positions": ["x"], "alphabet": [[0]], "words": []},
    {"positions": ["x"], "alphabet": [0, 1], "words": ["0"]},
])
def test_code_errors(doc):
    with pytest.raises(FormatError):
        loads(json.dumps(doc), "code")


def test_group_errors():
    with pytest.raises(FormatError):
        loads(json.dumps({"points": ["1", "2"], "generators": [[["1", "2", "1"]]]}), "group")
    with pytest.raises(FormatError):
        loads(json.dumps({"points": ["1", "2"], "generators": [{"1": "3"}]}), "group")


def test_load_reads_files(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"vertices": ["a", "b"], "edges": [["a", "b"]]}), encoding="utf-8")
    instance = load(str(path), "graph")
    assert instance.kind == "graph"
    assert len(instance.dag.ground) == 2


def test_kind_table():
    assert routes.names() == ["code", "graph", "group", "hyper", "object"]
    table = KindTableDef()

    @table.kind("x")
    def read_x(doc):
        return doc

    assert table.reader("x") is read_x
    with pytest.raises(ValueError):
        table.kind("x")(read_x)
    with pytest.raises(ValueError):
        table.reader("y")
