#!/usr/bin/env python3
"""
TorsionLab - Workbench launcher

Runs the workbench CLI from a source checkout without installing the package.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

try:
    from torsionlab.workbench.cli import main as workbench
except ImportError as e:
    sys.stderr.write(f"torsionlab could not be imported ({e}); run setup.sh or pip install -r requirements.txt\n")
    sys.exit(2)


def main():
    """Start the workbench CLI"""
    workbench(prog_name="torsionlab")


if __name__ == "__main__":
    main()
