"""Run every suite at default settings and write report.json next to this script."""
import sys
from pathlib import Path

from qtwistor.cli import main

if __name__ == "__main__":
    out = Path(__file__).with_name("report.json")
    sys.exit(main(["--suite", "all", "--out", str(out), *sys.argv[1:]]))
