"""Temporal and spatial self-convergence of the solver.

    python3 scripts/convergence_study.py [--linear]

The nonlinear default should report p_obs close to 2; --linear switches to
the uncoupled unforced problem, where the integrating factor is exact.
"""

import argparse

from fracbous import experiments as ex


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--linear", action="store_true")
    ap.add_argument("--n", type=int, default=64)
    args = ap.parse_args()
    kw = dict(coupling_on=False, forcing_norm=0.0) if args.linear else {}
    cfg = ex.ScenarioConfig(kind="refinement", n=args.n, **kw)
    rep = ex.run(cfg)
    print(rep.text())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
