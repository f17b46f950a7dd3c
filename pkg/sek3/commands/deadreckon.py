"""Dead reckoning from a JSON-lines velocity log.

Each record's velocity is held from its own ``t`` until the next record's
``t``; every interval is cut into equal substeps no longer than ``--dt`` and
one CSV row is written per substep. The last record only marks the end time.
"""
import csv
import logging
import math
from typing import Sequence

from sek3.commands.common import EXIT_OK, InputFileError, fmt, load_initial, open_output, read_jsonl
from sek3.core.errors import DimensionMismatchError
from sek3.kinematics import GeneralizedVelocity, propagate
from sek3.lie.group import GroupElement
from sek3.schemas.velocity import VelocityLogRecord

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("deadreckon", help="Integrate a velocity log into a trajectory CSV")
    parser.add_argument("input", help="Velocity log, one JSON record per line")
    parser.add_argument("--k", type=int, required=True, help="Number of translation slots")
    parser.add_argument("--dt", type=float, default=0.01, help="Maximum integration step in seconds")
    parser.add_argument("--initial", default=None, help="JSON file with the initial group element")
    parser.add_argument("--output", default=None, help="CSV output path (default: stdout)")
    parser.set_defaults(handler=run)


def read_velocity_log(path, k: int) -> list[VelocityLogRecord]:
    records = []
    previous_t = None
    for lineno, record in read_jsonl(path, VelocityLogRecord):
        if previous_t is not None and record.t <= previous_t:
            raise InputFileError(path, lineno, f"t must be strictly increasing ({record.t} after {previous_t})")
        if len(record.nu) != k:
            raise DimensionMismatchError(f"{path}:{lineno}: nu has {len(record.nu)} rows, --k is {k}")
        previous_t = record.t
        records.append(record)
    return records


def dead_reckon(
    records: Sequence[VelocityLogRecord],
    g0: GroupElement,
    dt: float,
) -> list[tuple[float, GroupElement]]:
    """Rows ``(t, state)`` starting with the initial state at the first record's time."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    t = records[0].t if records else 0.0
    g = g0
    rows = [(t, g)]
    for current, following in zip(records, records[1:]):
        v = GeneralizedVelocity(current.frame, current.omega, current.nu)
        span = following.t - current.t
        steps = max(1, math.ceil(span / dt - 1e-12))
        h = span / steps
        for i in range(1, steps + 1):
            g = propagate(g, v, h)
            rows.append((current.t + i * h if i < steps else following.t, g))
    return rows


def header(k: int) -> list[str]:
    names = ["t"] + [f"r{i}{j}" for i in range(3) for j in range(3)]
    for slot in range(1, k + 1):
        names += [f"p{slot}_x", f"p{slot}_y", f"p{slot}_z"]
    return names


def write_trajectory(rows, k: int, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header(k))
    for t, g in rows:
        writer.writerow([fmt(t)] + [fmt(x) for x in g.r.reshape(-1)] + [fmt(x) for x in g.p.reshape(-1)])


def run(args) -> int:
    records = read_velocity_log(args.input, args.k)
    g0 = load_initial(args.initial, args.k)
    rows = dead_reckon(records, g0, args.dt)
    logger.info("dead reckoning: %d records, %d trajectory rows", len(records), len(rows))
    with open_output(args.output) as out:
        write_trajectory(rows, args.k, out)
    return EXIT_OK
