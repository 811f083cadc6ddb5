#!/usr/bin/env python3
"""Smoke test for the dce_lab_py extension module.

Builds nothing itself: run `cargo build -p dce-lab-py` first, then
`python3 python/smoke_test.py`. The script locates the compiled cdylib
under target/, imports it and spot-checks a few known values.
"""

import importlib.util
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libdce_lab_py.so", "dce_lab_py.so", "libdce_lab_py.dylib")
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("extension not found; run `cargo build -p dce-lab-py` first")
    tmp = Path(tempfile.mkdtemp(prefix="dce_lab_py_"))
    target = tmp / "dce_lab_py.so"
    shutil.copy2(lib, target)
    spec = importlib.util.spec_from_file_location("dce_lab_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def approx(a, b, rel=1e-9):
    assert math.isfinite(a) and math.isfinite(b), (a, b)
    assert abs(a - b) <= rel * max(abs(a), abs(b), 1e-300), (a, b)


def main():
    m = load_module()

    # units: 1 Hz of linear frequency is 2 pi / c inverse meters
    approx(m.to_natural(1.0, "Hz"), 2.0 * math.pi / 299792458.0)

    # vacuum susceptibility chi(Omega) = i Omega^3 / (6 pi)
    chi = m.susceptibility_1d(2.0)
    approx(chi.real, 0.0, rel=1.0)
    approx(chi.imag, 8.0 / (6.0 * math.pi))

    # dissipative force on q(t) = q0 sin(Omega t) at t = 0 is
    # q0 Omega^3 / (6 pi) in 1D
    q0, omega = 1e-3, 10.0
    approx(m.mirror_force_1d(q0, omega, 0.0), -q0 * omega**3 / (6.0 * math.pi))

    # photon rate of a plane mirror: (1/15)(A / lambda0^2)(v/c)^2 Omega
    area = (2.0 * math.pi / omega) ** 2
    _, rate = m.radiated_energy_and_rate(q0, omega, 1e4, area)
    approx(rate, (q0 * omega) ** 2 * omega / 15.0)

    # trapped mirror: Gamma = Omega^2 / (12 pi M)
    approx(m.mirror_damping_rate(2.0e5, 3.0), 9.0 / (12.0 * math.pi * 2.0e5))
    assert m.mirror_decoherence_time(2.0e5, 3.0, 50.0) > 0.0

    # Moore equation: static cavity before the drive ramps up
    sol = m.MooreSolution.rg(2, 0.005, 1.0)
    approx(sol.r(3.0), 3.0, rel=1e-12)
    num = m.MooreSolution.numeric(2, 0.005, 1.0, 12.0)
    assert abs(num.residual(10.3)) < 1e-10
    assert abs(sol.r(10.3) - num.r(10.3)) < 1e-2

    # cavity spectrum and closed-form photon growth in an uncoupled box
    cav = m.Cavity.rect(2.3, 2.7, 1.0)
    w = cav.omega("scalar", (1, 1, 1))
    approx(w, math.pi * math.sqrt(1 / 2.3**2 + 1 / 2.7**2 + 1.0))
    n = cav.photon_number("scalar", (1, 1, 1), 1e-3, 100.0, 2.0 * w)
    assert n > 0.0

    # resonantly coupled pair in a cube under the (1, 1, 0) TM drive
    cube = m.Cavity.rect(1.0, 1.0, 1.0)
    w110 = cube.omega("tm", (1, 1, 0))
    resonant, pairs = cube.find_resonances(2.0 * w110, "tm", 8)
    assert (1, 1, 0) in resonant and ((1, 1, 0), (1, 1, 4)) in pairs
    numbers = cube.msa_photon_numbers("tm", [(1, 1, 0), (1, 1, 4)], 1e-3, 2.0 * w110, 50.0)
    assert all(x >= 0.0 for x in numbers) and sum(numbers) > 0.0

    # Bessel roots: j_{0,1} = 2.404825...
    approx(m.bessel_root("j", 0, 1), 2.404825557695773)

    # quantum friction vanishes quadratically at small velocity
    metal = m.Dielectric.drude(1e9, 3e6)
    f_fast, _, _ = m.friction_force(metal, 1e-8, 1e-8)
    f_slow, _, _ = m.friction_force(metal, 1e-8, 1e-9)
    assert f_fast > 0.0 and f_slow < 0.05 * f_fast

    # plasma sheet wavenumbers interpolate between the V = 0 and
    # V -> infinity limits
    lx = 0.2
    k = m.sheet_wavenumbers(50.0, lx, 2)
    assert math.pi / lx < k[0] < 2.0 * math.pi / lx

    sheet = m.Sheet(1e4, 1e5, 1e-11, 2e-10, 2e-11)
    assert sheet.modulation_depth(lx, 1) > 0.0

    # feasibility estimate for a driven cavity
    out = m.estimate_max_photons(6e7, 1e-8, m.to_natural(3e9, "Hz"), 1.0)
    assert out["feasible"] and 1e-23 < out["p_max_si"] < 1e-21
    approx(m.opo_modulation_depth(1.5, 2e-12, 1e9), 0.5 * 2e-12 * 1e9 / 2.5)

    # scenario runner round trip on a built-in preset
    with tempfile.TemporaryDirectory() as out_dir:
        ok, failed, json_path = m.run_scenario("fbar", out_dir, 1)
        assert ok == 1 and failed == 0
        assert Path(json_path).exists()

    print("smoke test passed")


if __name__ == "__main__":
    main()
