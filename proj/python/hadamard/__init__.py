"""Barycenters, horosphere selectors and Lipschitz scans in Hadamard spaces."""

import os
import subprocess
import sys
from pathlib import Path

from ._hadamard import (
    ConvergenceError,
    HadamardError,
    Space,
    center_of_mass,
    classify,
    limit_separation,
    mass_shift_scan,
    point_shift_scan,
    select,
    selector_scan,
    two_point_center,
)

__all__ = [
    "ConvergenceError",
    "HadamardError",
    "Space",
    "center_of_mass",
    "classify",
    "limit_separation",
    "mass_shift_scan",
    "point_shift_scan",
    "run_cli",
    "select",
    "selector_scan",
    "two_point_center",
]


def _cli_path():
    override = os.environ.get("HADAMARD_CLI")
    if override:
        return override
    return str(Path(__file__).parent / "bin" / "hadamard")


def run_cli(*args, check=False):
    """Run the bundled command-line tool and return the CompletedProcess."""
    return subprocess.run([_cli_path(), *map(str, args)], capture_output=True, text=True, check=check)


def main():
    sys.exit(subprocess.call([_cli_path(), *sys.argv[1:]]))
