import argparse
import json
import os
import sys

# Ensure project root is on sys.path so 'sek3' can be imported when running this script directly
CURRENT_DIR = os.path.dirname(__file__)
PROJECT_ROOT = os.path.abspath(os.path.join(CURRENT_DIR, ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from sek3.optimization import synthesize_problem
from sek3.schemas.group import GroupElementRecord
from sek3.schemas.registration import ObservationRecord, PointBlockRecord


def write_problem(k: int, seed: int, blocks: int, noise: float, out_dir: str) -> None:
    g_star, point_blocks, observations = synthesize_problem(k, seed, n_blocks=blocks, noise=noise)
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "points.jsonl"), "w", encoding="utf-8") as f:
        for index, block in enumerate(point_blocks):
            f.write(PointBlockRecord(block=index, points=block.points.tolist()).model_dump_json() + "\n")
    with open(os.path.join(out_dir, "observations.jsonl"), "w", encoding="utf-8") as f:
        for obs in observations:
            record = ObservationRecord(m=obs.m, y=list(obs.y), w=obs.w, block=obs.block)
            f.write(record.model_dump_json() + "\n")
    with open(os.path.join(out_dir, "truth.json"), "w", encoding="utf-8") as f:
        f.write(GroupElementRecord.from_element(g_star).model_dump_json() + "\n")
    print(f"[PROBLEM] K={k} blocks={blocks} observations={len(observations)} -> {out_dir}")


def parse_args():
    parser = argparse.ArgumentParser(description="Write a synthetic point registration problem")
    parser.add_argument("--k", type=int, default=2, help="Number of translation slots")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    parser.add_argument("--blocks", type=int, default=3, help="Number of point blocks")
    parser.add_argument("--noise", type=float, default=0.0, help="Std-dev of the observation noise")
    parser.add_argument("--out-dir", default=".", help="Directory for points/observations/truth files")
    return parser.parse_args()


def main():
    args = parse_args()
    write_problem(args.k, args.seed, args.blocks, args.noise, args.out_dir)


if __name__ == "__main__":
    main()
