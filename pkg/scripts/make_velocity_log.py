import argparse
import os
import sys

# Ensure project root is on sys.path so 'sek3' can be imported when running this script directly
CURRENT_DIR = os.path.dirname(__file__)
PROJECT_ROOT = os.path.abspath(os.path.join(CURRENT_DIR, ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

import numpy as np

from sek3.schemas.velocity import VelocityLogRecord


def write_log(k: int, seed: int, records: int, period: float, frame: str, path: str) -> None:
    """Random piecewise-constant velocities; omega ~ N(0, 0.1^2), nu ~ N(0, 1)."""
    rng = np.random.default_rng(seed)
    with open(path, "w", encoding="utf-8") as f:
        for i in range(records):
            record = VelocityLogRecord(
                t=i * period,
                omega=(0.1 * rng.normal(size=3)).tolist(),
                nu=rng.normal(size=(k, 3)).tolist(),
                frame=frame,
            )
            f.write(record.model_dump_json() + "\n")
    print(f"[VELOCITY] K={k} records={records} frame={frame} -> {path}")


def parse_args():
    parser = argparse.ArgumentParser(description="Write a synthetic velocity log (JSON lines)")
    parser.add_argument("--k", type=int, default=2, help="Number of translation slots")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    parser.add_argument("--records", type=int, default=100, help="Number of log records")
    parser.add_argument("--period", type=float, default=0.1, help="Seconds between records")
    parser.add_argument("--frame", choices=["left", "right"], default="right", help="Velocity frame")
    parser.add_argument("--output", default="velocity.jsonl", help="Output path")
    return parser.parse_args()


def main():
    args = parse_args()
    write_log(args.k, args.seed, args.records, args.period, args.frame, args.output)


if __name__ == "__main__":
    main()
