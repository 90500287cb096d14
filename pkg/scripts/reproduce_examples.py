"""Write every demo and config report into one output directory, plus two SVG pictures."""

import argparse
import sys
from pathlib import Path

from valifs.cli import main

ROOT = Path(__file__).resolve().parent.parent


def run(argv):
    code = main([str(a) for a in argv])
    print(f"--> exit {code}: valifs {' '.join(map(str, argv))}\n")
    return code


def cli():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out", help="output directory")
    args = ap.parse_args()
    out = Path(args.out)
    expected = {"bad": 2, "baire": 1}
    bad = 0
    for ex in ("3", "4", "5", "18"):
        bad += run(["demo", ex, "--out", out / f"demo{ex}.txt"]) != 0
    for cfg in sorted((ROOT / "configs").glob("*.json")):
        code = run(["verify", "--config", cfg, "--oracle", "--out", out / f"{cfg.stem}.json"])
        bad += code != expected.get(cfg.stem, 0)
    for name in ("window", "ternary"):
        bad += run(["render", "--config", ROOT / "configs" / f"{name}.json", "--depth", "3",
                    "--out", out / f"{name}.svg"]) != 0
    print(f"{bad} unexpected exit codes")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(cli())
