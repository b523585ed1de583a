#!/usr/bin/env python3
"""
Test script to verify lazy loading is working correctly.
Importing the package and its configuration must not pull in pandas or galois.
"""
import subprocess
import sys

HEAVY_MODULES = ["pandas", "galois"]

PROBE = """
import sys
import decimcorr
from decimcorr.config import CliConfig
from decimcorr.__main__ import build_parser
build_parser()
CliConfig.from_args({"k": 5, "l": 3})
print(",".join(m for m in %r if m in sys.modules))
"""


def loaded_after_import():
    # fresh interpreter, so modules imported by other tests do not leak in
    result = subprocess.run(
        [sys.executable, "-c", PROBE % (HEAVY_MODULES,)],
        capture_output=True, text=True, check=True,
    )
    return [m for m in result.stdout.strip().split(",") if m]


def test_lazy_loading():
    """Test that importing decimcorr modules doesn't load heavy dependencies."""
    heavy_loaded = loaded_after_import()
    assert not heavy_loaded, f"Heavy modules loaded at import time: {', '.join(heavy_loaded)}"


def test_heavy_modules_load_on_demand():
    probe = (
        "import sys, decimcorr\n"
        "ctx = decimcorr.field_new(6)\n"
        "decimcorr.verify(ctx, decimcorr.seq_params(3, 1, ctx))\n"
        "print('pandas' in sys.modules)\n"
    )
    result = subprocess.run([sys.executable, "-c", probe], capture_output=True, text=True, check=True)
    assert result.stdout.strip() == "True"


if __name__ == "__main__":
    heavy = loaded_after_import()
    print("LAZY LOADING FAILED: " + ", ".join(heavy) if heavy else "LAZY LOADING WORKING")
    sys.exit(1 if heavy else 0)
