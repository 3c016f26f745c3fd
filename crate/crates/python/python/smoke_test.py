"""Smoke test for the compiled extension; run after `maturin develop`."""

import json
import math

import ellipsoid_measures as em


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def main():
    area, err = em.surface_area([1.0, 1.0, 1.0])
    assert close(area, 4 * math.pi, 1e-12) and err == 0.0

    area, _ = em.surface_area([3.0, 2.0, 1.0])
    assert close(area, 48.88214630258206, 1e-9)

    mc, se = em.surface_area([2.0, 1.0], method="mc", samples=200_000, seed=7)
    assert abs(mc - 9.688448220547676) <= 4 * se

    lo, hi = em.ratio_bounds(2)
    assert close(lo, 2 / math.pi, 1e-14) and close(hi, math.sqrt(0.5), 1e-14)

    assert close(em.fd(1.0, [1.0], 2.0, [0.5]), 2 * math.log(2), 1e-10)
    r = em.ratio_fd([1.0, 1.0])
    assert close(r["value"], 2.0, 1e-12)
    assert close(r["printed"] / r["oracle"], 4 / math.pi, 1e-9)

    v = em.projected_volume([3.0, 2.0, 1.0], [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], form="1")
    assert close(v, 6 * math.pi, 1e-12)

    m, _ = em.mean_curvature([1.0] * 4, 1, samples=1000, seed=1)
    assert close(m, 2 * math.pi**2, 1e-12)
    lo, hi = em.curvature_bounds([1.0, 2.0, 3.0, 1.5], 1)
    m, se = em.mean_curvature([1.0, 2.0, 3.0, 1.5], 1, samples=20_000, seed=3)
    assert lo - 3 * se <= m <= hi + 3 * se

    entries = json.loads(em.formula_ledger_json())
    ids = {e["id"] for e in entries}
    assert "fd_ratio_printed" in ids and "mean_curvature_ratio_published" in ids

    try:
        em.surface_area([1.0, -1.0])
    except ValueError:
        pass
    else:
        raise AssertionError("negative semi-axis accepted")

    print(f"ellipsoid_measures {em.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
