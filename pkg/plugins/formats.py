"""
JSON input formats, one reader per input kind.

Every reader takes the decoded document and returns a route.Instance.
Problems are reported as FormatError with the JSON path of the offending
value, and with line and column when the text itself does not parse.
"""

import json
import logging

from helper.perm import GroundSet, Permutation, PermutationGroup, check_perm
from helper.coset import LabelingCoset, ColoringError, color_coset
from helper.objects import NodeStore, ObjectDag
from plugins.canon_base import CanonResult, InstanceError
from plugins.canon_hyper import cl_colored_hypergraph, cl_hypergraph
from plugins.canon_object import Code, cl_object, cl_partitioned_graph, code_object, permgroup_object
from route import Instance, routes


class FormatError(ValueError):
    def __init__(self, message, path="$", line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = f" at line {line} column {column}" if line is not None else ""
        super().__init__(f"{path}: {message}{where}")


# loading

def loads(text, kind):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, "$", e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    declared = doc.get("kind")
    if declared is not None and declared != kind:
        raise FormatError(f"file declares kind {declared!r}, not {kind!r}", "$.kind")
    try:
        reader = routes.reader(kind)
    except ValueError as e:
        raise FormatError(str(e)) from None
    instance = reader(doc)
    logging.debug(f"formats: read {kind} input over {len(instance.dag.ground)} points")
    return instance


def load(path, kind):
    with open(path, encoding="utf-8") as f:
        return loads(f.read(), kind)


# value checks

def _field(doc, name, path, default=None, required=True):
    if name not in doc:
        if required:
            raise FormatError(f"missing field {name!r}", path)
        return default
    return doc[name]


def _list(value, path):
    if not isinstance(value, list):
        raise FormatError("expected a list", path)
    return value


def _dict(value, path):
    if not isinstance(value, dict):
        raise FormatError("expected an object", path)
    return value


def _ground(value, path):
    names = _list(value, path)
    for i, v in enumerate(names):
        if not isinstance(v, str):
            raise FormatError("names must be strings", f"{path}[{i}]")
    if len(set(names)) != len(names):
        raise FormatError("repeated name", path)
    return GroundSet(names)


def _member(ground, v, path):
    if not isinstance(v, str) or v not in ground:
        raise FormatError(f"unknown vertex {v!r}", path)
    return v


def _vertex_set(ground, value, path):
    items = _list(value, path)
    out = [_member(ground, v, f"{path}[{i}]") for i, v in enumerate(items)]
    if len(set(out)) != len(out):
        raise FormatError("repeated vertex", path)
    return frozenset(out)


def _edges(ground, value, path, size=None):
    edges = []
    seen = set()
    for i, e in enumerate(_list(value, path)):
        edge = _vertex_set(ground, e, f"{path}[{i}]")
        if size is not None and len(edge) != size:
            raise FormatError(f"an edge must have {size} vertices", f"{path}[{i}]")
        if edge in seen:
            raise FormatError("repeated edge", f"{path}[{i}]")
        seen.add(edge)
        edges.append(edge)
    return edges


def _colors(ground, value, path):
    if value is None:
        return None
    classes = [list(_vertex_set(ground, c, f"{path}[{i}]")) for i, c in enumerate(_list(value, path))]
    try:
        color_coset(ground, classes)
    except ColoringError as e:
        raise FormatError(str(e), path) from None
    return classes


def _mapping_perm(ground, value, path):
    mapping = _dict(value, path)
    for v, w in mapping.items():
        _member(ground, v, f"{path}.{v}")
        _member(ground, w, f"{path}.{v}")
    images = list(range(len(ground)))
    for v, w in mapping.items():
        images[ground.position(v)] = ground.position(w)
    try:
        check_perm(images, len(ground))
    except ValueError:
        raise FormatError("generator is not a bijection", path) from None
    return Permutation(ground, images)


def _cycles_perm(ground, value, path):
    cycles = []
    used = set()
    for i, c in enumerate(_list(value, path)):
        cycle = [_member(ground, v, f"{path}[{i}][{j}]") for j, v in enumerate(_list(c, f"{path}[{i}]"))]
        if used & set(cycle) or len(set(cycle)) != len(cycle):
            raise FormatError("cycles are not disjoint", f"{path}[{i}]")
        used.update(cycle)
        cycles.append(cycle)
    return Permutation.from_cycles(ground, *cycles)


def _generators(ground, value, path):
    gens = []
    for i, g in enumerate(_list(value, path)):
        sub = f"{path}[{i}]"
        gens.append(_mapping_perm(ground, g, sub) if isinstance(g, dict) else _cycles_perm(ground, g, sub))
    return PermutationGroup.from_generators(ground, [g.images for g in gens])


def _labeling(ground, value, path):
    rep = _dict(value, path)
    if set(rep) != set(ground.elements):
        raise FormatError("the representative must label every vertex", path)
    images = []
    for v in ground.elements:
        label = rep[v]
        if not isinstance(label, int) or isinstance(label, bool):
            raise FormatError("labels must be integers", f"{path}.{v}")
        images.append(label - 1)
    if sorted(images) != list(range(len(ground))):
        raise FormatError(f"labels must be 1..{len(ground)}, each used once", path)
    return images


# readers

def _result_of(canonize):
    def run(ctx):
        out = canonize(ctx)
        return out if isinstance(out, CanonResult) else CanonResult(out)
    return run


def _object_node(store, value, path):
    value = _dict(value, path)
    if len(value) != 1:
        raise FormatError("an object has exactly one of vertex, coset, set, tuple", path)
    (tag, body), = value.items()
    ground = store.ground
    if tag == "vertex":
        return store.vertex(_member(ground, body, f"{path}.vertex"))
    if tag == "coset":
        body = _dict(body, f"{path}.coset")
        group = _generators(ground, _field(body, "generators", f"{path}.coset"), f"{path}.coset.generators")
        rep = _labeling(ground, _field(body, "rep", f"{path}.coset"), f"{path}.coset.rep")
        return store.coset(LabelingCoset.from_group(group, rep))
    if tag in ("set", "tuple"):
        items = _list(body, f"{path}.{tag}")
        children = [_object_node(store, x, f"{path}.{tag}[{i}]") for i, x in enumerate(items)]
        if tag == "tuple":
            return store.tuple(children)
        if len({c.uid for c in children}) != len(children):
            raise FormatError("repeated set member", f"{path}.set")
        return store.set(children)
    raise FormatError(f"unknown object tag {tag!r}", path)


@routes.kind("object")
def read_object(doc):
    ground = _ground(_field(doc, "ground", "$"), "$.ground")
    store = NodeStore(ground)
    dag = ObjectDag(store, _object_node(store, _field(doc, "object", "$"), "$.object"))
    return Instance("object", dag, _result_of(lambda ctx: cl_object(dag, ctx=ctx)))


def _hyper_instance(kind, doc, size=None):
    ground = _ground(_field(doc, "vertices", "$"), "$.vertices")
    edges = _edges(ground, _field(doc, "edges", "$"), "$.edges", size)
    colors = _colors(ground, doc.get("colors"), "$.colors")
    store = NodeStore(ground)
    edge_set = store.set([store.set([store.vertex(v) for v in e]) for e in edges])
    if colors is None:
        dag = ObjectDag(store, edge_set)
        return Instance(kind, dag, _result_of(lambda ctx: cl_hypergraph(ground, edges, ctx=ctx)))
    classes = store.tuple([store.set([store.vertex(v) for v in c]) for c in colors])
    dag = ObjectDag(store, store.tuple([edge_set, classes]))
    return Instance(kind, dag, _result_of(lambda ctx: cl_colored_hypergraph(edges, colors, ground, ctx)),
                    color_coset(ground, colors))


@routes.kind("hyper")
def read_hyper(doc):
    return _hyper_instance("hyper", doc)


@routes.kind("graph")
def read_graph(doc):
    if "edge_parts" not in doc:
        return _hyper_instance("graph", doc, size=2)
    if "colors" in doc or "edges" in doc:
        raise FormatError("edge_parts cannot be combined with edges or colors", "$")
    ground = _ground(_field(doc, "vertices", "$"), "$.vertices")
    parts = [_edges(ground, p, f"$.edge_parts[{i}]", size=2)
             for i, p in enumerate(_list(doc["edge_parts"], "$.edge_parts"))]
    ordered = doc.get("parts_ordered", True)
    if not isinstance(ordered, bool):
        raise FormatError("expected true or false", "$.parts_ordered")
    store = NodeStore(ground)
    nodes = [store.set([store.set([store.vertex(v) for v in e]) for e in p]) for p in parts]
    if ordered:
        root = store.tuple(nodes)
    else:
        if len({n.uid for n in nodes}) != len(nodes):
            raise FormatError("repeated edge part in an unordered partition", "$.edge_parts")
        root = store.set(nodes)
    dag = ObjectDag(store, root)
    return Instance("graph", dag, _result_of(lambda ctx: cl_partitioned_graph(ground, parts, ordered, ctx)))


@routes.kind("code")
def read_code(doc):
    positions = _ground(_field(doc, "positions", "$"), "$.positions")
    alphabet = _list(_field(doc, "alphabet", "$"), "$.alphabet")
    for i, s in enumerate(alphabet):
        if not isinstance(s, (str, int)) or isinstance(s, bool):
            raise FormatError("symbols must be strings or integers", f"$.alphabet[{i}]")
    words = []
    for i, w in enumerate(_list(_field(doc, "words", "$"), "$.words")):
        if isinstance(w, list) and len(w) != len(positions):
            raise FormatError("a word given as a list needs one symbol per position", f"$.words[{i}]")
        if not isinstance(w, (list, dict)):
            raise FormatError("a word is a list of symbols or an object position -> symbol", f"$.words[{i}]")
        symbols = w.values() if isinstance(w, dict) else w
        if any(not isinstance(s, (str, int)) or isinstance(s, bool) for s in symbols):
            raise FormatError("symbols must be strings or integers", f"$.words[{i}]")
        words.append(w)
    try:
        code = Code(positions, alphabet, words)
    except InstanceError as e:
        raise FormatError(str(e), "$.words") from None
    if len({tuple(w[p] for p in positions.elements) for w in code.words}) != len(words):
        raise FormatError("repeated code word", "$.words")
    dag = code_object(code)
    return Instance("code", dag, _result_of(lambda ctx: cl_object(dag, ctx=ctx)))


@routes.kind("group")
def read_group(doc):
    points = _ground(_field(doc, "points", "$"), "$.points")
    group = _generators(points, _field(doc, "generators", "$"), "$.generators")
    dag = permgroup_object(group)
    return Instance("group", dag, _result_of(lambda ctx: cl_object(dag, ctx=ctx)))


