"""Command-line entry point.

Exit codes: 0 pass, 1 check failure, 2 configuration or usage error,
3 runtime blow-up.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import experiments as ex
from .config import RunConfig, format_config, load_config, revalidate
from .dynamics import integrate, random_state
from .errors import BlowUpError, FracBousError
from .io import read_snapshot, write_diagnostics_csv, write_snapshot

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_BLOWUP = 0, 1, 2, 3

SUBCOMMANDS = {
    "simulate": None,
    "decay": ex.Kind.FULL_DECAY,
    "absorb": ex.Kind.ABSORBING_BALL,
    "continuity": ex.Kind.CONTINUITY,
    "verify": ex.Kind.VERIFY_INEQUALITIES,
    "refine": ex.Kind.REFINEMENT,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageExit(f"{self.prog}: error: {message}\n{self.format_usage()}")


class _UsageExit(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fracbous", description="Fractional Boussinesq simulator and estimate checks.")
    ap.add_argument("command", choices=sorted(SUBCOMMANDS), metavar="command",
                    help="one of: " + ", ".join(SUBCOMMANDS))
    ap.add_argument("--config", metavar="PATH", help="key = value configuration file")
    ap.add_argument("--out", metavar="DIR", help="output directory (overrides out_dir)")
    ap.add_argument("--resume", metavar="PATH", help="FBQ1 snapshot to continue from (simulate)")
    ap.add_argument("--seed", type=int, metavar="U64", help="override the initial-data seed")
    ap.add_argument("--quiet", action="store_true", help="suppress the report on stdout")
    return ap


def _resolve(args) -> RunConfig:
    rc = load_config(args.config) if args.config else RunConfig()
    kw = {}
    if args.out is not None:
        kw["out_dir"] = args.out
    if args.seed is not None:
        if not 0 <= args.seed < 2 ** 64:
            raise _UsageExit(f"--seed must be an unsigned 64-bit integer, got {args.seed}")
        kw["seed"] = args.seed
    kind = SUBCOMMANDS[args.command]
    # decay runs the linear scenario only when the config asks for it
    if kind is not None and not (kind is ex.Kind.FULL_DECAY
                                 and rc.scenario.kind is ex.Kind.LINEAR_DECAY):
        kw["kind"] = kind
    return RunConfig(revalidate(dataclasses.replace(rc.scenario, **kw), rc.lines), rc.lines)


def _out_dir(sc) -> Optional[Path]:
    if sc.out_dir is None:
        return None
    d = Path(sc.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def simulate(rc: RunConfig, resume: Optional[str]) -> ex.Report:
    sc = rc.scenario
    p = sc.params()
    if resume:
        s0, sp = read_snapshot(resume, forcing=p.forcing, coupling_on=p.coupling_on)
        mismatched = [k for k in ("nu", "kappa", "alpha", "beta") if getattr(sp, k) != getattr(p, k)]
        if mismatched:
            raise _ConfigExit(f"snapshot {resume} disagrees with the config on {mismatched}")
    else:
        s0 = random_state(p.grid, sc.seed, sc.theta_norm, sc.omega_norm, kmax=sc.init_kmax)
    rows = []
    rep = ex.Report("simulate", sc, data={"series": rows})
    try:
        sT = integrate(s0, p, sc.t_end, sc.dt, sc.sample_every, rows.append, cfl=sc.cfl,
                       lp_orders=sc.lp_orders, s1=sc.s1, s2=sc.s2)
    except BlowUpError as e:
        rep.blowup = True
        rep.notes.append(str(e))
        sT = e.state
    rep.data["final"] = sT
    rep.notes.append(f"integrated t={s0.t!r} -> {sT.t if sT is not None else 'n/a'!r} "
                     f"in {len(rows)} samples")
    d = _out_dir(sc)
    if d is not None and sT is not None:
        write_snapshot(sT, p, d / "snapshot.bin")
    return rep


class _ConfigExit(Exception):
    pass


def _write_outputs(rep: ex.Report) -> None:
    d = _out_dir(rep.config)
    if d is None:
        return
    (d / "report.txt").write_text(rep.text(), encoding="utf-8")
    (d / "config.cfg").write_text(format_config(rep.config), encoding="utf-8")
    for m in rep.data.get("members", ()):
        write_diagnostics_csv(m.series, d / f"member_seed{m.seed}.csv")
    if "series" in rep.data and rep.name != "continuity":
        write_diagnostics_csv(rep.data["series"], d / "diagnostics.csv")


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        rc = _resolve(args)
        if args.resume and args.command != "simulate":
            raise _UsageExit("--resume applies to simulate only")
        if args.command == "simulate":
            rep = simulate(rc, args.resume)
        else:
            rep = ex.run(rc.scenario)
        _write_outputs(rep)
    except _UsageExit as e:
        print(str(e), file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (_ConfigExit, FracBousError, OSError) as e:
        if isinstance(e, BlowUpError):
            print(f"fracbous: blow-up: {e}", file=sys.stderr)
            return EXIT_BLOWUP
        print(f"fracbous: {e}", file=sys.stderr)
        return EXIT_CONFIG
    if not args.quiet:
        sys.stdout.write(rep.text())
    if rep.blowup:
        print("fracbous: run aborted by blow-up", file=sys.stderr)
        return EXIT_BLOWUP
    return EXIT_PASS if rep.passed else EXIT_FAIL


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
