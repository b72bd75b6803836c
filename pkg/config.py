import os, time


def _flag(name, default="0"):
    return os.environ.get(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config(object):
    # logging config
    LOG_LEVEL = os.environ.get("CANON_LOG_LEVEL", "WARNING").upper()
    TIMEZONE  = os.environ.get("CANON_TIMEZONE", "UTC")

    # canonizer config
    THREADS      = int(os.environ.get("CANON_THREADS", "1"))
    DEBUG_CHECKS = _flag("CANON_DEBUG_CHECKS")
    MAX_DEPTH    = int(os.environ.get("CANON_MAX_DEPTH", "20000"))

    # brute force budgets
    ORACLE_MAX_DEGREE  = int(os.environ.get("CANON_ORACLE_MAX_DEGREE", "8"))
    ORACLE_MAX_GROUP   = int(os.environ.get("CANON_ORACLE_MAX_GROUP", "100000"))
    PERMGROUP_ENUM_CAP = int(os.environ.get("CANON_PERMGROUP_CAP", "1000000"))

    # decoder
    DECODE_MAX_DEGREE = int(os.environ.get("CANON_DECODE_MAX_DEGREE", "1048576"))

    # other configs
    START_TIME = time.time()


class Txt(object):
    # part of text configuration

    DESCRIPTION = """Canonical labelings, canonical forms and canonical encodings of
hypergraphs, graphs, codes, permutation groups and hereditarily finite objects."""

    EPILOG = """exit codes: 0 success or isomorphic, 1 non-isomorphic,
2 parse or input error, 3 budget exceeded"""

    CANON_HELP = "canonize one input file and print a JSON report"
    ISO_HELP = "decide isomorphism of two input files of the same kind"

    EMIT_HELP = "field to print: encoding, labeling, aut, order, wall_time or all"
    THREADS_HELP = "worker threads for branch evaluation (default: CANON_THREADS)"
    ORACLE_HELP = "canonize by brute force over all labelings (small inputs only)"
    DEBUG_HELP = "check the canonizer invariants at run time"

    ISOMORPHIC = "isomorphic"
    NON_ISOMORPHIC = "non-isomorphic"

    RUN_LOG = "{kind}: |V|={degree} |Aut|={order} in {elapsed} ({stamp})"
