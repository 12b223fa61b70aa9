"""Experiment driver: `tasep-wall run <preset> [options]`.

Each preset writes results.csv, report.json, plots/*.svg and manifest.json
into the output directory.  Outputs are bit-reproducible from the manifest:
seeds are explicit, artifacts carry no timestamps, and the manifest records
sha256 digests of everything written.  Exit code 0 iff every asserted
contract in the scenario passed.

Configuration precedence: command line > TOML config file > preset defaults.
"""

import argparse
import csv
import hashlib
import inspect
import json
import sys
from pathlib import Path

from . import __version__, svgplot
from .runners import PRESETS, tw_reference_cdf

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib


def _coerce(value, default):
    if isinstance(default, bool):
        return value.lower() in ("1", "true", "yes", "on")
    if isinstance(default, int) and not isinstance(default, bool):
        return int(value)
    if isinstance(default, float):
        return float(value)
    if isinstance(default, (tuple, list)):
        parts = [p for p in value.split(",") if p != ""]
        if default and isinstance(default[0], float):
            return tuple(float(p) for p in parts)
        if default and isinstance(default[0], int):
            return tuple(int(p) for p in parts)
        return tuple(parts)
    return value


def _preset_defaults(fn):
    out = {}
    for name, p in inspect.signature(fn).parameters.items():
        if p.default is not inspect.Parameter.empty:
            out[name] = p.default
    return out


def _emit_plots(plotdir, plots):
    written = []
    for name, spec in (plots or {}).items():
        kind = spec[0]
        path = plotdir / f"{name}.svg"
        if kind == "ecdf_ref":
            _, samples, law = spec
            svgplot.ecdf_overlay_svg(
                path, samples,
                refs=[(law, "#1f77b4", tw_reference_cdf(law))],
                title=name)
        elif kind == "ecdf_band":
            _, samples = spec
            svgplot.ecdf_overlay_svg(
                path, samples,
                refs=[("F1(2^{2/3}s)", "#1f77b4",
                       tw_reference_cdf("F1_scaled")),
                      ("F2(s)", "#2ca02c", tw_reference_cdf("F2"))],
                title=name)
        elif kind == "ecdf_pair":
            _, a, b = spec
            import numpy as np
            bs = np.sort(np.asarray(b, dtype=float))

            def other(x, _bs=bs):
                return float(np.searchsorted(_bs, x, side="right") / len(_bs))

            svgplot.ecdf_overlay_svg(path, a,
                                     refs=[("companion ECDF", "#1f77b4",
                                            other)],
                                     title=name)
        elif kind == "ecdf_poisson":
            import scipy.stats
            _, samples, lam = spec
            svgplot.ecdf_overlay_svg(
                path, samples,
                refs=[(f"Poisson({lam:g})", "#1f77b4",
                       lambda x, _l=lam: float(scipy.stats.poisson.cdf(x, _l))
                       )],
                title=name)
        elif kind == "hist_mixture":
            _, samples, law = spec
            svgplot.histogram_mixture_svg(path, samples, law=law, title=name)
        else:
            continue
        written.append(path)
    return written


def _digest(path):
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def _json_default(o):
    import numpy as np
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not JSON serializable: {type(o)}")


def run_preset(name, overrides, outdir):
    fn = PRESETS[name]
    defaults = _preset_defaults(fn)
    kwargs = {}
    for key, val in overrides.items():
        if key not in defaults:
            raise SystemExit(
                f"config error: {name} has no parameter {key!r} "
                f"(valid: {', '.join(sorted(defaults))})")
        kwargs[key] = (
            _coerce(val, defaults[key]) if isinstance(val, str) else val)
    report, artifacts = fn(**kwargs)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    results = artifacts.get("results")
    if results:
        rpath = outdir / "results.csv"
        with open(rpath, "w", newline="") as fh:
            csv.writer(fh).writerows(results)
        written.append(rpath)
    jpath = outdir / "report.json"
    # runtime stays off disk so reruns of a manifest are byte-identical
    stable = {k: v for k, v in report.items() if k != "runtime_s"}
    with open(jpath, "w") as fh:
        json.dump(stable, fh, indent=2, sort_keys=True,
                  default=_json_default)
        fh.write("\n")
    written.append(jpath)
    spath = outdir / "summary.txt"
    with open(spath, "w") as fh:
        fh.write(f"{name}: {'PASS' if report.get('pass') else 'FAIL'}\n")
        for k in sorted(stable):
            v = stable[k]
            if not isinstance(v, (dict, list)):
                fh.write(f"  {k} = {v}\n")
    written.append(spath)
    plotdir = outdir / "plots"
    if artifacts.get("plots"):
        plotdir.mkdir(exist_ok=True)
        written += _emit_plots(plotdir, artifacts["plots"])
    manifest = {
        "scenario": name,
        "parameters": {k: kwargs.get(k, defaults[k]) for k in defaults},
        "artifact_version": __version__,
        "seed_rule": "replica i uses split_seed(seed, i) (counter hash)",
        "outputs": {str(p.relative_to(outdir)): _digest(p) for p in written},
        "pass": bool(report.get("pass", False)),
    }
    mpath = outdir / "manifest.json"
    with open(mpath, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True,
                  default=_json_default)
        fh.write("\n")
    return report


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="tasep-wall",
        description="TASEP-with-moving-wall verification laboratory")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run a scenario preset")
    runp.add_argument("preset", choices=sorted(PRESETS))
    runp.add_argument("--config", help="TOML file with preset parameters")
    runp.add_argument("--out", default=None, help="output directory")
    runp.add_argument("--jobs", type=int, default=1,
                      help="numba threads for compiled kernels")
    runp.add_argument("--set", action="append", default=[], metavar="K=V",
                      help="override a preset parameter")
    listp = sub.add_parser("list", help="list presets and their defaults")
    args = parser.parse_args(argv)

    if args.command == "list":
        for name in sorted(PRESETS):
            d = _preset_defaults(PRESETS[name])
            opts = ", ".join(f"{k}={v}" for k, v in d.items())
            print(f"{name}: {opts}")
        return 0

    overrides = {}
    if args.config:
        with open(args.config, "rb") as fh:
            cfg = tomllib.load(fh)
        overrides.update(cfg.get(args.preset, cfg))
    for item in args.set:
        if "=" not in item:
            raise SystemExit(f"--set expects K=V, got {item!r}")
        k, v = item.split("=", 1)
        overrides[k.strip()] = v.strip()
    if args.jobs and args.jobs > 1:
        try:
            import numba
            numba.set_num_threads(args.jobs)
        except ImportError:
            pass
    outdir = args.out or f"out/{args.preset}"
    report = run_preset(args.preset, overrides, outdir)
    passed = bool(report.get("pass", False))
    summary = {k: v for k, v in report.items()
               if not isinstance(v, (dict, list))}
    print(json.dumps(summary, indent=2, sort_keys=True,
                     default=_json_default))
    print(f"[{'PASS' if passed else 'FAIL'}] {args.preset} -> {outdir}")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
