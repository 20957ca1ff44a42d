"""Command-line front end.

    pendulum-topology analyze      critical data, regimes, expected topology
    pendulum-topology verify       brute-force relative homology vs sequence pipeline
    pendulum-topology obstructions geodesic flow, cross section, integrability
    pendulum-topology simulate     RATTLE run with diagnostics and optional CSV

Exit codes: 0 ok, 1 verify mismatch, 2 invalid input, 3 degenerate slope,
4 empty energy level.
"""

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field, fields
from typing import List, Optional

from . import dynamics
from .complexes import pendulum_configuration_complex, superlevel_pair
from .errors import DegenerateSlope, DegenerateSlopeWarning, EmptyRegime, NonMorseLevel, PendulumTopologyError
from .homology import euler_characteristic
from .mechanics import (
    TABLE,
    S2xS2,
    PendulumParams,
    RegimeTag,
    band_levels,
    classify_energy,
    critical_points,
    expected_topology,
)
from .obstructions import cross_section_check, geodesic_flow_check, integrability_check
from .sequences import band_betti, unit_tangent_integer_homology

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_DEGENERATE, EXIT_EMPTY = 0, 1, 2, 3, 4

CSV_HELP = ("CSV columns: " + ", ".join(dynamics.CSV_COLUMNS)
            + " (g1, g2 = |q_i|^2 - 1; g3, g4 = q_i . qdot_i)")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    m1: float = 1.0
    m2: float = 1.0
    l1: float = 1.0
    l2: float = 1.0
    g: float = 1.0
    energy: List[float] = field(default_factory=list)
    subdivision: int = 1
    seed: int = 42
    dt: float = 1e-3
    steps: int = 10000
    format: str = "json"
    out: Optional[str] = None
    energy_offsets: List[float] = field(default_factory=lambda: [0.0])
    tol_crit: float = 1e-9

    def params(self):
        return PendulumParams(self.m1, self.m2, self.l1, self.l2, self.g)


_FLOATS = {"m1", "m2", "l1", "l2", "g", "dt", "tol_crit"}
_INTS = {"subdivision", "seed", "steps"}
_LISTS = {"energy", "energy_offsets"}


def _coerce(key, value):
    try:
        if key in _FLOATS:
            return float(value)
        if key in _INTS:
            return int(value)
        if key in _LISTS:
            if isinstance(value, list):
                return [float(v) for v in value]
            return [float(v) for v in str(value).replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad value for {key}: {value!r}")
    if key == "format" and value not in ("json", "text"):
        raise UsageError("format must be json or text")
    return value


def read_config_file(path):
    """``key = value`` lines; ``#`` starts a comment; lists comma separated."""
    known = {f.name for f in fields(RunConfig)}
    out = {}
    with open(path) as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            out[key] = _coerce(key, value)
    return out


def build_config(ns) -> RunConfig:
    values = {}
    if ns.config:
        try:
            values.update(read_config_file(ns.config))
        except OSError as e:
            raise UsageError(str(e))
    for f in fields(RunConfig):
        v = getattr(ns, f.name, None)
        if v is not None:
            values[f.name] = _coerce(f.name, v)
    return RunConfig(**values)


# --- report pieces -------------------------------------------------------------


def _homology_json(prof):
    return [{"rank": prof.rank(k), "torsion": list(prof.torsion_at(k))}
            for k in range(prof.top_degree + 1)]


def _critical_json(params):
    with warnings.catch_warnings():
        # degeneracy is reported in the "degenerate" field instead
        warnings.simplefilter("ignore", DegenerateSlopeWarning)
        cps = critical_points(params, verify=False)
    return [{"label": cp.label, "z1": int(cp.z[0]), "z2": int(cp.z[1]), "value": cp.potential_value,
             "index": cp.morse_index} for cp in cps]


def _base(params):
    return {"params": params.as_dict(), "slope": params.k, "degenerate": bool(params.degenerate)}


def cmd_analyze(cfg: RunConfig):
    params = cfg.params()
    rep = _base(params)
    rep["critical_points"] = _critical_json(params)
    if cfg.energy and params.degenerate:
        raise DegenerateSlope(f"slope k = {params.k}: the M2 and M3 bands coincide")
    regimes = []
    for h in cfg.energy:
        r = classify_energy(params, h, cfg.tol_crit)
        entry = {"energy": h, "tag": str(r.tag), "lower": r.lower, "upper": r.upper,
                 "betti": None, "integer_homology": None}
        if r.tag in TABLE:
            t = expected_topology(r)
            entry.update(name=t.name, betti=list(t.betti),
                         integer_homology=_homology_json(t.integer_homology))
        elif r.tag == RegimeTag.CRITICAL:
            entry["critical_label"] = r.critical_label
        regimes.append(entry)
    rep["regimes"] = regimes
    return rep, EXIT_OK


def _band_counts(Q, params):
    cuts = sorted(cp["value"] for cp in _critical_json(params))
    out = {}
    for tag, lo, hi in zip((RegimeTag.M1, RegimeTag.M2, RegimeTag.M3), cuts, cuts[1:]):
        out[str(tag)] = int(((Q.field > lo) & (Q.field < hi)).sum())
    return out


def cmd_verify(cfg: RunConfig):
    params = cfg.params()
    if cfg.subdivision < 0:
        raise UsageError("subdivision level must be >= 0")
    if params.degenerate:
        raise DegenerateSlope(f"slope k = {params.k}: no band split to verify")
    Q = pendulum_configuration_complex(params, cfg.subdivision)
    rep = _base(params)
    rep["subdivision"] = cfg.subdivision
    rep["f_vector"] = list(Q.f_vector())
    counts = _band_counts(Q, params)
    notes = [f"{tag}: {n} mesh vertices strictly inside the band" for tag, n in counts.items()]
    if cfg.subdivision == 0:
        notes.append("coarse mesh: level 0 is the bare icosahedron on each sphere factor")
    rep["notes"] = notes
    rows, ok = [], True
    for offset in cfg.energy_offsets:
        levels = band_levels(params, offset)
        for tag, c in levels.items():
            # above V(P4) the superlevel set is empty and this is just H(Q)
            oracle = superlevel_pair(Q, c, tol_crit=cfg.tol_crit).relative_homology()
            trace = []
            pipeline = band_betti(tag, oracle, trace=trace)
            table = expected_topology(tag).betti
            passed = tuple(pipeline.betti) == tuple(table)
            ok &= passed
            rows.append({"band": str(tag), "offset": offset, "level": c,
                         "oracle_pair_ranks": list(oracle.betti),
                         "pipeline_betti": list(pipeline.betti), "table_row": list(table),
                         "pass": passed, "trace": trace})
    rep["verify"] = rows
    rep["all_pass"] = bool(ok)
    return rep, EXIT_OK if ok else EXIT_MISMATCH


def obstruction_report():
    out = []
    for tag in (RegimeTag.M1, RegimeTag.M2, RegimeTag.M3, RegimeTag.M4):
        pZ = expected_topology(tag).integer_homology
        if tag == RegimeTag.M4:
            pZ = unit_tangent_integer_homology(S2xS2, euler_characteristic(S2xS2))
        for v in (geodesic_flow_check(pZ, n=4),
                  cross_section_check(pZ, euler_characteristic(pZ), has_equilibria=False)):
            out.append({"surface": str(tag), **v.to_dict()})
    v = integrability_check(S2xS2, 4)
    out.append({"surface": "Q", **v.to_dict()})
    return out


def cmd_obstructions(cfg: RunConfig):
    rep = {"obstructions": obstruction_report()}
    return rep, EXIT_OK


def cmd_simulate(cfg: RunConfig):
    params = cfg.params()
    h = cfg.energy[0] if cfg.energy else 0.0
    init = dynamics.sample_phase_point(params, h, cfg.seed)
    traj, diag = dynamics.simulate(params, init, cfg.dt, cfg.steps)
    rep = _base(params)
    rep.update(energy=h, seed=cfg.seed, dt=cfg.dt, steps=cfg.steps, diagnostics=diag.to_dict())
    if cfg.out:
        dynamics.write_csv(params, traj, cfg.out)
        rep["csv"] = cfg.out
    return rep, EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "obstructions": cmd_obstructions,
    "simulate": cmd_simulate,
}


# --- text rendering ------------------------------------------------------------


def _text(rep):
    lines = []
    if "params" in rep:
        p = rep["params"]
        lines.append("params " + " ".join(f"{k}={v}" for k, v in p.items()))
        lines.append(f"slope k = {rep['slope']:.6g}" + ("  (degenerate)" if rep["degenerate"] else ""))
    for cp in rep.get("critical_points", []):
        lines.append(f"{cp['label']}  z=({cp['z1']:+d},{cp['z2']:+d})  V={cp['value']:.6g}  index {cp['index']}")
    for r in rep.get("regimes", []):
        s = f"h={r['energy']:g}: {r['tag']}"
        if r["betti"] is not None:
            s += f"  {r['name']}  betti {tuple(r['betti'])}"
        elif "critical_label" in r:
            s += f" value of {r['critical_label']}"
        lines.append(s)
    for n in rep.get("notes", []):
        lines.append("note: " + n)
    for r in rep.get("verify", []):
        lines.append(f"{r['band']} offset {r['offset']:+g}: oracle {tuple(r['oracle_pair_ranks'])} "
                     f"-> {tuple(r['pipeline_betti'])}  table {tuple(r['table_row'])}  "
                     f"{'PASS' if r['pass'] else 'FAIL'}")
    for o in rep.get("obstructions", []):
        s = f"{o['surface']:>3} {o['criterion']:<14} {o['verdict']}"
        if o["lhs"] is not None:
            s += f"  lhs={o['lhs']} rhs={o['rhs']}"
        failed = [c["name"] for c in o["conditions"] if c["holds"] is False]
        if failed:
            s += "  failing: " + "; ".join(failed)
        lines.append(s)
    if "diagnostics" in rep:
        d = rep["diagnostics"]
        lines.append(f"regime {d['regime']}  drift {d['energy_drift']:.3e}  residual "
                     f"{d['max_residual']:.3e}  potential excess {d['potential_excess']:.3e}")
    if "csv" in rep:
        lines.append(f"trajectory written to {rep['csv']}")
    return "\n".join(lines)


def build_parser():
    p = argparse.ArgumentParser(prog="pendulum-topology", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    for name in ("m1", "m2", "l1", "l2", "g"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--energy", type=float, action="append",
                        help="energy level (repeatable)")
    common.add_argument("--subdivision", type=int, help="S^2 subdivision level (default 1)")
    common.add_argument("--seed", type=int, help="sampler seed (default 42)")
    common.add_argument("--dt", type=float, help="time step (default 1e-3)")
    common.add_argument("--steps", type=int, help="number of steps (default 10000)")
    common.add_argument("--format", choices=("json", "text"))
    common.add_argument("--config", help="file of 'key = value' lines; flags override it")
    common.add_argument("--out", help="simulate: CSV path; other commands: report path")
    common.add_argument("--energy-offsets", dest="energy_offsets", type=float, nargs="+",
                        help="verify: level offsets within each band, in (-1, 1)")
    helps = {"analyze": "critical points, regimes and expected topology",
             "verify": "brute-force oracle against the sequence pipeline",
             "obstructions": "dynamical obstruction verdicts",
             "simulate": "integrate one trajectory. " + CSV_HELP}
    for name, h in helps.items():
        sub.add_parser(name, parents=[common], help=h, description=h)
    return p


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        cfg = build_config(ns)
        rep, code = COMMANDS[ns.command](cfg)
    except (UsageError, ValueError, NonMorseLevel) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except DegenerateSlope as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except EmptyRegime as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except PendulumTopologyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    text = json.dumps(rep, indent=2) if cfg.format == "json" else _text(rep)
    if cfg.out and ns.command != "simulate":
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
