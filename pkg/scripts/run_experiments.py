#!/usr/bin/env python3
"""Run every bundled experiment config through the batch CLI.

Writes one subdirectory per config under the output root and prints a
runtime summary.  Equivalent to invoking `qwalk <command> --config ...`
once per file in scripts/configs/.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from qwalk.cli import run

CONFIG_DIR = Path(__file__).parent / "configs"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/experiments", help="output root")
    parser.add_argument(
        "--only", default=None, help="substring filter on config file names"
    )
    args = parser.parse_args()

    configs = sorted(CONFIG_DIR.glob("*.json"))
    if args.only:
        configs = [c for c in configs if args.only in c.name]
    if not configs:
        print("no configs matched", file=sys.stderr)
        return 1

    failures = 0
    for config in configs:
        experiment = json.loads(config.read_text())["experiment"]
        out_dir = Path(args.out) / config.stem
        start = time.perf_counter()
        code = run(
            [
                experiment.replace("_", "-"),
                "--config",
                str(config),
                "--out",
                str(out_dir),
            ]
        )
        elapsed = time.perf_counter() - start
        status = "ok" if code == 0 else f"exit {code}"
        print(f"{config.name:42s} {status:8s} {elapsed:6.1f}s")
        failures += code != 0
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
