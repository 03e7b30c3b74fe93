#!/usr/bin/env python3
"""
Export bundled circuits

Regenerates circuits/<name>.qcaforge and circuits/<name>.table from the layout
generators. Run after changing a generator, then commit the files together.

Usage:
    python scripts/export_circuits.py [output_dir]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qcaforge.core.logging import setup_logger
from qcaforge.stdcells.catalog import export_circuits


def main():
    setup_logger("qcaforge")
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "circuits"
    written = export_circuits(target)
    for path in written:
        print(f"  wrote {path}")
    print(f"{len(written)} files in {target}")


if __name__ == "__main__":
    main()
