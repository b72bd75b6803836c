import json
import logging
import sys
from dataclasses import dataclass, asdict

from config import Txt
from helper.encoding import encode, to_hex
from helper.objects import relabel_to_ordered
from helper.oracle import brute_canonical_labeling
from helper.utils import Stopwatch, TimeFormatter, timestamp, wall_time
from plugins.canon_base import CanonContext, CanonResult
from plugins.formats import load

EMIT_FIELDS = ("encoding", "labeling", "aut", "order", "wall_time")


@dataclass
class RunReport:
    kind: str
    encoding: str
    labeling: dict
    aut: list
    order: int
    wall_time: str

    def as_dict(self, emit="all"):
        out = asdict(self)
        if emit == "all":
            return out
        wanted = {"aut": ("aut", "order")}.get(emit, (emit,))
        return {"kind": self.kind, **{k: out[k] for k in wanted}}


def canonize(instance, oracle=False, threads=None, debug=None):
    """CanonResult of an instance, from the canonizers or from brute force."""
    if oracle:
        return CanonResult(brute_canonical_labeling(instance.dag, instance.coset))
    settings = {}
    if threads is not None:
        settings["threads"] = threads
    if debug is not None:
        settings["debug"] = debug
    with CanonContext(**settings) as ctx:
        result = instance.canonize(ctx)
    logging.debug(f"{instance.kind}: recursive calls {dict(ctx.stats)}")
    return result


def run(kind, path, oracle=False, threads=None, debug=None):
    watch = Stopwatch()
    instance = load(path, kind)
    result = canonize(instance, oracle, threads, debug)
    form = relabel_to_ordered(instance.dag, result.coset.rep)
    elapsed = watch.elapsed
    order = result.order()
    logging.info(Txt.RUN_LOG.format(kind=kind, degree=len(instance.dag.ground), order=order,
                                    elapsed=wall_time(elapsed), stamp=timestamp()))
    return RunReport(
        kind=kind,
        encoding=to_hex(encode(form)),
        labeling=result.labeling().to_mapping(),
        aut=[g.to_mapping() for g in result.aut.generators],
        order=order,
        wall_time=TimeFormatter(elapsed * 1000),
    )


def cmd_canon(kind, path, emit="all", oracle=False, threads=None, debug=None, out=None):
    report = run(kind, path, oracle, threads, debug)
    json.dump(report.as_dict(emit), out or sys.stdout, indent=2)
    (out or sys.stdout).write("\n")
    return report


def cmd_iso(kind, path_a, path_b, oracle=False, threads=None, debug=None, out=None):
    """True when the two inputs are isomorphic, i.e. their canonical encodings agree."""
    a = run(kind, path_a, oracle, threads, debug)
    b = run(kind, path_b, oracle, threads, debug)
    same = a.encoding == b.encoding
    verdict = {
        "verdict": Txt.ISOMORPHIC if same else Txt.NON_ISOMORPHIC,
        "encodings": [a.encoding, b.encoding],
    }
    json.dump(verdict, out or sys.stdout, indent=2)
    (out or sys.stdout).write("\n")
    return same
