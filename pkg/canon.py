import sys
import logging
import argparse

from config import Config, Txt
from helper.perm import DomainMismatch
from helper.coset import ColoringError, UnorderedGround
from helper.encoding import EncodingError
from helper.oracle import BudgetExceeded
from plugins.canon_base import InstanceError, RecursionLimitExceeded
from plugins.commands import EMIT_FIELDS, cmd_canon, cmd_iso
from plugins.formats import FormatError
from route import routes

EXIT_OK, EXIT_NON_ISO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def build_parser():
    parser = argparse.ArgumentParser(prog="canon", description=Txt.DESCRIPTION, epilog=Txt.EPILOG)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("kind", choices=routes.names())
        p.add_argument("--oracle", action="store_true", help=Txt.ORACLE_HELP)
        p.add_argument("--threads", type=int, default=None, help=Txt.THREADS_HELP)
        p.add_argument("--debug", action="store_true", default=None, help=Txt.DEBUG_HELP)

    canon = sub.add_parser("canon", help=Txt.CANON_HELP)
    common(canon)
    canon.add_argument("file")
    canon.add_argument("--emit", choices=("all",) + EMIT_FIELDS, default="all", help=Txt.EMIT_HELP)

    iso = sub.add_parser("iso", help=Txt.ISO_HELP)
    common(iso)
    iso.add_argument("file_a")
    iso.add_argument("file_b")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=Config.LOG_LEVEL,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "canon":
            cmd_canon(args.kind, args.file, args.emit, args.oracle, args.threads, args.debug)
            return EXIT_OK
        same = cmd_iso(args.kind, args.file_a, args.file_b, args.oracle, args.threads, args.debug)
        return EXIT_OK if same else EXIT_NON_ISO
    except (FormatError, InstanceError, EncodingError, DomainMismatch, ColoringError,
            UnorderedGround, OSError) as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT
    except (BudgetExceeded, RecursionLimitExceeded) as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
