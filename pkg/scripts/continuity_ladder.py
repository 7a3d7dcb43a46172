"""Continuous dependence: D(t) for a ladder of perturbation sizes.

    python3 scripts/continuity_ladder.py --out runs/continuity [--t-end 2]

D = ||Lambda^s2 (u - u')||^2 + ||Lambda^s1 (theta - theta')||^2 is written
per rung as CSV (t, D) next to the report.
"""

import argparse
from pathlib import Path

import numpy as np

from fracbous import experiments as ex


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/continuity")
    ap.add_argument("--t-end", type=float, default=2.0)
    ap.add_argument("--deltas", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    args = ap.parse_args()

    cfg = ex.ScenarioConfig(kind="continuity", t_end=args.t_end, sample_every=20,
                            deltas=tuple(args.deltas), out_dir=args.out)
    rep = ex.run(cfg)
    rep.checks.append(ex.linear_difference_check(cfg))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for delta, (t, d) in zip(cfg.deltas, rep.data.get("series", [])):
        np.savetxt(out / f"D_delta{delta:g}.csv", np.column_stack([t, d]), delimiter=",",
                   header="t,D", comments="", fmt="%.17g")
    (out / "report.txt").write_text(rep.text())
    print(rep.text())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
