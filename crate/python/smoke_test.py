#!/usr/bin/env python3
"""Smoke test for the arcfit_py extension module.

Builds the cdylib if needed, stages it under an importable name, and
checks a few known-good values end to end:

    python3 python/smoke_test.py
"""
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    lib = None
    for profile in ("release", "debug"):
        cand = ROOT / "target" / profile / "libarcfit_py.so"
        if cand.exists():
            lib = cand
            break
    if lib is None:
        subprocess.run(["cargo", "build", "-p", "arcfit-py"], cwd=ROOT, check=True)
        lib = ROOT / "target" / "debug" / "libarcfit_py.so"
    stage = Path(tempfile.mkdtemp(prefix="arcfit_py_"))
    shutil.copy(lib, stage / "arcfit_py.so")
    return stage


sys.path.insert(0, str(stage_module()))
import arcfit_py  # noqa: E402

# Quartic solve at pi/3 against the reference table.
sol = arcfit_py.solve(4, math.pi / 3)
assert sol.degree == 4
assert sol.param_names == ["alpha", "beta", "gamma"]
for got, want in zip(sol.params, (0.97471, 0.59188, 1.20039)):
    assert abs(got - want) < 5e-6, (got, want)
assert abs(sol.simplified_error - 5.83570e-6) < 5e-6 * 5.83570e-6
assert abs(2 * sol.radial_error - sol.simplified_error) <= sol.simplified_error**2

# Structure: endpoints on the circle, psi vanishing there, symmetry.
assert len(sol.control_points) == 5
x0, y0 = sol.point(-1.0)
assert abs(math.hypot(x0, y0) - 1.0) < 1e-12
assert abs(sol.psi(1.0)) < 1e-12
assert abs(sol.psi(0.5) - sol.psi(-0.5)) < 1e-15

# Table reproduction for the parabolic case.
rows = arcfit_py.table(2)
assert [r[0] for r in rows] == ["pi/2", "pi/3", "pi/4", "pi/6", "pi/8", "pi/12"]
assert abs(rows[0][2][0] - 2.19737) < 5e-6
assert abs(rows[-1][3] - 2.00378e-4) < 5e-6 * 2.00378e-4

# Root census: six real roots at pi/6, exactly one marked optimal.
roots = arcfit_py.roots(math.pi / 6)
assert len(roots) == 6
assert sum(1 for r in roots if r[2]) == 1
(opt,) = [r for r in roots if r[2]]
assert abs(opt[1] - 2.34778e-8) < 5e-6 * 2.34778e-8

# Verification pipeline.
ok, spread, best = arcfit_py.verify(3, math.pi / 4, trials=10)
assert ok, (spread, best)

# Input validation surfaces as ValueError.
for bad in (lambda: arcfit_py.solve(5, 1.0), lambda: arcfit_py.solve(3, 9.0)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

print("smoke test passed")
