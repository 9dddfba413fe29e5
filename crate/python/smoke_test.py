#!/usr/bin/env python3
"""Smoke test for the speckbench_py extension module.

Build the module first, then run this script:

    cargo build -p speckbench-py
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def locate_module():
    candidates = [
        ROOT / "target" / "debug" / "libspeckbench_py.so",
        ROOT / "target" / "release" / "libspeckbench_py.so",
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit("libspeckbench_py.so not found; run `cargo build -p speckbench-py` first")


STAGE = Path(tempfile.mkdtemp(prefix="speckbench-py-"))
shutil.copy(locate_module(), STAGE / "speckbench_py.so")
sys.path.insert(0, str(STAGE))

import speckbench_py as sb  # noqa: E402


def main():
    scene = sb.synthetic_scene(128, 128, 7)
    assert (scene.width, scene.height, scene.domain) == (128, 128, "byte")
    assert repr(scene) == "Image(128x128, byte)"

    hist = scene.histogram()
    assert len(hist) == 256
    assert sum(hist) == 128 * 128
    assert hist[255] > 0, "point targets present"

    # Noise injection is deterministic and value-preserving in shape.
    noisy = sb.add_speckle(scene.to_unit(), 0.2, 7).to_byte()
    again = sb.add_speckle(scene.to_unit(), 0.2, 7).to_byte()
    assert noisy == again
    assert noisy.to_bytes() != scene.to_bytes()

    # Filters: window 1 is the identity; window 3 changes a noisy image.
    assert sb.median_filter(scene, window=1).to_bytes() == scene.to_bytes()
    assert sb.mean_filter(scene, window=1).to_bytes() == scene.to_bytes()
    med = sb.median_filter(noisy)
    mean = sb.mean_filter(noisy, window=3, border="zero")
    assert med.to_bytes() != noisy.to_bytes()
    assert mean.to_bytes() != noisy.to_bytes()

    # Metrics: identical images have zero error and infinite PSNR.
    perfect = sb.metrics(scene, scene)
    assert perfect["mse"] == 0.0
    assert math.isinf(perfect["psnr"])
    degraded = sb.metrics(scene, med)
    assert degraded["mse"] > 0.0
    assert degraded["peak"] == 255.0

    # Filtering must improve on the raw noisy image at this noise level.
    raw = sb.metrics(scene, noisy)
    assert degraded["mse"] < raw["mse"]

    # File round-trip through both supported formats.
    for name in ("scene.pgm", "scene.png"):
        path = STAGE / name
        sb.save(scene, path)
        loaded = sb.load(path)
        assert loaded.to_bytes() == scene.to_bytes(), name

    # Sweep: cardinality, artifacts, determinism, crossover plumbing.
    result = sb.sweep(scene, levels=[0.05, 0.4], seeds=[1, 2])
    rows = result.rows()
    assert len(rows) == 2 * 2 * 2
    assert {r["filter"] for r in rows} == {"mean", "median"}
    assert result.csv().splitlines()[0] == "filter,variance,seed,mse,psnr"
    assert result.csv() == sb.sweep(scene, levels=[0.05, 0.4], seeds=[1, 2]).csv()
    assert result.table(metric="psnr", format="markdown").startswith("| filter |")
    assert result.plot(metric="mse").startswith("<svg")
    bracket = result.crossover("mse")
    assert bracket is None or (0.05, 0.4) == bracket
    assert len(sb.reference_levels()) == 18

    # Errors surface as Python exceptions.
    try:
        sb.add_speckle(scene.to_unit(), 0.0, 1)
    except ValueError as e:
        assert "variance" in str(e)
    else:
        raise AssertionError("variance 0 must raise ValueError")
    try:
        sb.load(STAGE / "missing.pgm")
    except OSError:
        pass
    else:
        raise AssertionError("missing file must raise OSError")

    print("smoke test OK")


if __name__ == "__main__":
    main()
