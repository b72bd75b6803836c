"""
Injective byte encoding of ordered objects (ground set {1..n}).

Layout: magic b"HFS1", n as 4-byte big-endian, then the root node.

    0x01 vertex   4-byte label
    0x02 coset    4-byte count k, k canonical generators of n images each,
                  then the lex-min element (n images); images are 1-based
    0x03 tuple    4-byte length, children in order
    0x04 set      4-byte cardinality, children ascending by the object order

All integers are unsigned 4-byte big-endian.
"""

import logging
import struct

from config import Config
from helper.perm import PermutationGroup, ordered_ground, check_perm
from helper.coset import LabelingCoset, UnorderedGround
from helper.objects import NodeStore, ObjectDag, VERTEX, COSET, TUPLE

MAGIC = b"HFS1"
TAG_VERTEX, TAG_COSET, TAG_TUPLE, TAG_SET = 0x01, 0x02, 0x03, 0x04
_U32 = struct.Struct(">I")


class EncodingError(ValueError):
    def __init__(self, message, offset=None):
        self.offset = offset
        super().__init__(message if offset is None else f"{message} (at byte {offset})")


def _perm_bytes(images):
    return struct.pack(f">{len(images)}I", *(i + 1 for i in images))


def encode(dag):
    ground = dag.ground
    if not ground.ordered:
        raise UnorderedGround("only objects over {1..n} can be encoded; canonize first")
    n = len(ground)
    parts = {}
    for node in dag.tclosure():
        if node.kind == VERTEX:
            body = bytes([TAG_VERTEX]) + _U32.pack(node.value + 1)
        elif node.kind == COSET:
            sgs, rep = node.value.canonical_generators()
            body = b"".join([bytes([TAG_COSET]), _U32.pack(len(sgs)),
                             *(_perm_bytes(g) for g in sgs), _perm_bytes(rep)])
        else:
            tag = TAG_TUPLE if node.kind == TUPLE else TAG_SET
            body = b"".join([bytes([tag]), _U32.pack(len(node.children)),
                             *(parts[c.uid] for c in node.children)])
        parts[node.uid] = body
    return MAGIC + _U32.pack(n) + parts[dag.root.uid]


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, size):
        if self.pos + size > len(self.data):
            raise EncodingError("truncated input", self.pos)
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def u32(self):
        return _U32.unpack(self.take(4))[0]

    def perm(self, n):
        at = self.pos
        images = tuple(i - 1 for i in struct.unpack(f">{n}I", self.take(4 * n)))
        try:
            check_perm(images, n)
        except ValueError:
            raise EncodingError("malformed permutation", at) from None
        return images


def decode(data, max_degree=None):
    """Inverse of encode; rejects malformed and non-canonical input."""
    max_degree = Config.DECODE_MAX_DEGREE if max_degree is None else max_degree
    data = bytes(data)
    reader = _Reader(data)
    if reader.take(4) != MAGIC:
        raise EncodingError("bad magic", 0)
    n = reader.u32()
    if n > max_degree:
        raise EncodingError(f"ground set of {n} points is above the decode limit {max_degree}", 4)
    ground = ordered_ground(n)
    store = NodeStore(ground)
    # explicit stack of [tag, remaining, children] frames
    stack = []
    result = None
    while True:
        at = reader.pos
        tag = reader.take(1)[0]
        if tag == TAG_VERTEX:
            label = reader.u32()
            if not 1 <= label <= n:
                raise EncodingError(f"vertex label {label} outside 1..{n}", at)
            node = store.vertex_at(label - 1)
        elif tag == TAG_COSET:
            count = reader.u32()
            gens = [reader.perm(n) for _ in range(count)]
            rep = reader.perm(n)
            group = PermutationGroup.from_generators(ground, gens)
            node = store.coset(LabelingCoset.from_group(group, rep))
        elif tag in (TAG_TUPLE, TAG_SET):
            size = reader.u32()
            if size:
                stack.append([tag, size, []])
                continue
            node = store.tuple([]) if tag == TAG_TUPLE else store.set([])
        else:
            raise EncodingError(f"unknown tag 0x{tag:02x}", at)
        while stack:
            frame = stack[-1]
            frame[2].append(node)
            frame[1] -= 1
            if frame[1]:
                break
            stack.pop()
            if frame[0] == TAG_TUPLE:
                node = store.tuple(frame[2])
            else:
                if len({c.uid for c in frame[2]}) != len(frame[2]):
                    raise EncodingError("repeated set member", reader.pos)
                node = store.set(frame[2])
        else:
            result = node
            break
    if reader.pos != len(data):
        raise EncodingError("trailing bytes", reader.pos)
    dag = ObjectDag(store, result)
    if encode(dag) != data:
        logging.debug("decode: input decodes but is not in canonical form")
        raise EncodingError("non-canonical encoding")
    return dag


def to_hex(data):
    return data.hex()


def from_hex(text):
    try:
        return bytes.fromhex(text.strip())
    except ValueError as e:
        raise EncodingError(f"not a hex string: {e}") from None
