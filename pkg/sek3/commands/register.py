"""Point registration: fit one group element to observed point positions."""
import logging

from sek3.commands.common import EXIT_OK, InputFileError, load_initial, open_output, read_jsonl
from sek3.core.errors import DimensionMismatchError
from sek3.optimization import Observation, PointBlock, gauss_newton_fit
from sek3.schemas.group import GroupElementRecord
from sek3.schemas.registration import ObservationRecord, PointBlockRecord, RegistrationResult

logger = logging.getLogger(__name__)


def add_parser(subparsers) -> None:
    parser = subparsers.add_parser("register", help="Gauss-Newton registration of point blocks")
    parser.add_argument("points", help="Point blocks, one JSON record per line")
    parser.add_argument("observations", help="Observations, one JSON record per line")
    parser.add_argument("--k", type=int, required=True, help="Number of translation slots")
    parser.add_argument("--max-iters", type=int, default=50, help="Maximum Gauss-Newton iterations")
    parser.add_argument("--tol", type=float, default=1e-10, help="Stop when the step norm falls below this")
    parser.add_argument("--initial", default=None, help="JSON file with the initial guess")
    parser.add_argument("--output", default=None, help="JSON output path (default: stdout)")
    parser.set_defaults(handler=run)


def read_blocks(path, k: int) -> list[PointBlock]:
    by_index = {}
    for lineno, record in read_jsonl(path, PointBlockRecord):
        if record.block in by_index:
            raise InputFileError(path, lineno, f"duplicate block index {record.block}")
        if len(record.points) != k:
            raise DimensionMismatchError(f"{path}:{lineno}: block has {len(record.points)} points, --k is {k}")
        by_index[record.block] = PointBlock(record.points)
    if sorted(by_index) != list(range(len(by_index))):
        raise InputFileError(path, None, f"block indices must be 0..n-1, got {sorted(by_index)}")
    return [by_index[i] for i in range(len(by_index))]


def read_observations(path) -> list[Observation]:
    return [
        Observation(m=record.m, y=record.y, w=record.w, block=record.block)
        for _, record in read_jsonl(path, ObservationRecord)
    ]


def run(args) -> int:
    blocks = read_blocks(args.points, args.k)
    observations = read_observations(args.observations)
    init = load_initial(args.initial, args.k)
    logger.info("registering %d observations against %d block(s)", len(observations), len(blocks))
    result = gauss_newton_fit(observations, blocks, init, max_iters=args.max_iters, tol=args.tol)
    payload = RegistrationResult(
        element=GroupElementRecord.from_element(result.element),
        cost=result.cost,
        iterations=result.iterations,
    )
    with open_output(args.output) as out:
        out.write(payload.model_dump_json() + "\n")
    return EXIT_OK
