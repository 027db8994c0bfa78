"""Command-line front end.

Exit codes: 0 success, 1 domain failure (a check failed or the metric is not
valid at this b), 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DomainError, HomFinslerError, ModelError
from .fixtures import FIXTURES, fixture_dict
from .liealg import load_model, model_from_dict, orthonormalize, validate
from .metric import PhiSpec, shen_validity
from .phicalc import CurvContext, phiquant_derivative, quantities_closed, quantities_generic, volume_factor

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    phi: str | None = None
    n: int | None = None
    samples: int = 512
    seed: int = 0
    quad_n: int = 64
    tol: float = 1e-9
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.quad_n < 2:
            raise UsageError("--quad-n must be >= 2")


def _color_enabled(stream) -> bool:
    return not os.environ.get("FINSLER_NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, ok: bool, enabled: bool) -> str:
    if not enabled:
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _clean(x):
    """JSON-safe copy: numpy scalars/arrays to Python, Fractions to strings, non-finite floats to null."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def _dump_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def _load_model(spec: str | None):
    if spec is None:
        raise UsageError("--model is required")
    try:
        if spec.startswith("builtin:"):
            d = fixture_dict(spec.split(":", 1)[1])
            return model_from_dict(d), d.get("phi")
        return load_model(spec)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read model {spec}: {exc}") from exc
    except (ModelError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse model {spec}: {exc}") from exc


def _load_phi(spec: str | None, model_phi=None) -> PhiSpec:
    try:
        if spec is None:
            return PhiSpec.from_dict(model_phi) if model_phi else PhiSpec.named("square")
        if spec.startswith("@"):
            with open(spec[1:]) as fh:
                d = json.load(fh)
            if isinstance(d, dict) and "phi" in d and "family" not in d:
                d = d["phi"]
            return PhiSpec.from_dict(d)
        return PhiSpec.named(spec)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read phi {spec}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad phi spec {spec!r}: {exc}") from exc


def _parse_vec(text: str, length: int) -> np.ndarray:
    try:
        vals = [float(Fraction(t.strip())) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector {text!r}") from exc
    if len(vals) != length:
        raise UsageError(f"vector {text!r} has {len(vals)} entries, expected {length}")
    return np.array(vals)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def cmd_validate(cfg: RunConfig, args):
    m, model_phi = _load_model(cfg.model)
    phi = _load_phi(cfg.phi, model_phi)
    rep = validate(m)
    out = {"model": m.name, **rep.to_dict(), "phi": phi.to_dict()}
    ok = rep.ok
    if 0 <= m.b < 1:
        vr = shen_validity(phi, m.b)
        out["metric"] = vr.to_dict()
        ok = ok and vr.valid
    else:
        out["metric"] = None
    out["ok"] = ok
    return _dump_json(out), "", EXIT_OK if ok else EXIT_DOMAIN


def cmd_scurv(cfg: RunConfig, args):
    from .scurvature import isotropy_classify, scurv_samples, sphere_directions

    m, model_phi = _load_model(cfg.model)
    phi = _load_phi(cfg.phi, model_phi)
    if args.y:
        Y = np.array([_parse_vec(t, m.n) for t in args.y])
    else:
        Y = sphere_directions(m, cfg.samples, cfg.seed)
    rows = scurv_samples(m, phi, cfg.n, Y)
    verdict = isotropy_classify(m, phi, cfg.n, cfg.samples, cfg.tol, cfg.seed)
    summary = {"model": m.name, "phi": phi.to_dict(), "n": cfg.n or m.n, "b": m.b,
               "max_residual": max((r.residual for r in rows), default=0.0),
               "isotropy": verdict.to_dict()}
    if cfg.fmt == "csv":
        header = [f"y{i}" for i in range(m.n)] + ["s_general", "s_closed", "residual"]
        body = _csv(([*r.y, r.s_general, r.s_closed, r.residual] for r in rows), header)
        return body, _dump_json(summary), EXIT_OK
    summary["rows"] = [r.to_dict() for r in rows]
    return _dump_json(summary), "", EXIT_OK


def cmd_eij(cfg: RunConfig, args):
    from .meanberwald import eij_closed, eij_numeric

    m, model_phi = _load_model(cfg.model)
    phi = _load_phi(cfg.phi, model_phi)
    if not args.y:
        raise UsageError("eij needs at least one --y")
    mo, T = orthonormalize(m)
    kk = list(m.k)
    P = T[np.ix_(kk, kk)]
    reports, rows = [], []
    for text in args.y:
        y = _parse_vec(text, m.n)
        if not np.any(y):
            raise DomainError("y must be nonzero")
        yo = np.linalg.solve(P, y)
        ec = eij_closed(mo, phi, cfg.n, yo)
        en = eij_numeric(mo, phi, cfg.n, yo)
        res = float(np.abs(ec.entries - en.entries).max())
        rep = {"y": y, "y_orthonormal": yo, "E_closed": ec.entries, "E_numeric": en.entries,
               "max_residual": res, "numeric_flagged": en.flagged, "euler_residual": ec.euler_residual()}
        if phi.family in ("square", "randers_square"):
            rep["E_printed"] = eij_closed(mo, phi, cfg.n, yo, source="printed").entries
        reports.append(rep)
        for i in range(m.n):
            for j in range(m.n):
                rows.append([text, i, j, ec.entries[i, j], en.entries[i, j]])
    out = {"model": m.name, "phi": phi.to_dict(), "n": cfg.n or m.n, "basis": P, "results": reports}
    if cfg.fmt == "csv":
        return _csv(rows, ["y", "i", "j", "E_closed", "E_numeric"]), _dump_json(
            {"max_residual": max(r["max_residual"] for r in reports)}), EXIT_OK
    return _dump_json(out), "", EXIT_OK


def cmd_phiquant(cfg: RunConfig, args):
    phi = _load_phi(cfg.phi)
    n = cfg.n or 2
    b = args.b
    svals = [float(Fraction(t)) for t in args.s] if args.s else np.linspace(-b, b, 11).tolist()
    records = []
    for s in svals:
        ctx = CurvContext(n, b, s)
        rec = {"s": s, "generic": quantities_generic(phi, ctx).to_dict()}
        if phi.family in ("square", "randers_square"):
            rec["closed"] = quantities_closed(phi.family, ctx).to_dict()
        rec["d_ds"] = {f: phiquant_derivative(phi, ctx, f, 1) for f in ("Q", "Delta", "Phi")}
        rec["d2_ds2"] = {f: phiquant_derivative(phi, ctx, f, 2) for f in ("Q", "Delta", "Phi")}
        records.append(rec)
    if cfg.fmt == "csv":
        fields = list(records[0]["generic"])
        header = ["s"] + fields + ([f"{f}_closed" for f in fields] if "closed" in records[0] else [])
        rows = [[r["s"], *r["generic"].values(), *r.get("closed", {}).values()] for r in records]
        return _csv(rows, header), "", EXIT_OK
    return _dump_json({"phi": phi.to_dict(), "b": b, "n": n, "points": records}), "", EXIT_OK


def cmd_identity_check(cfg: RunConfig, args):
    from .ratcheck import check_all

    verdicts = check_all()
    ok = all(v.holds for v in verdicts)
    if cfg.fmt == "json":
        return _dump_json({"all_hold": ok, "claims": [v.to_dict() for v in verdicts]}), "", \
            EXIT_OK if ok else EXIT_DOMAIN
    color = cfg.out is None and _color_enabled(sys.stdout)
    lines = []
    for v in verdicts:
        word = _paint("true" if v.holds else "false", v.holds, color)
        line = f"{v.claim_id}\t{v.location}\t{word}"
        if not v.holds:
            line += f"\t{v.difference}"
        lines.append(line)
    return "\n".join(lines) + "\n", "", EXIT_OK if ok else EXIT_DOMAIN


def cmd_volume(cfg: RunConfig, args):
    phi = _load_phi(cfg.phi)
    n = cfg.n or 2
    forms = ["BH", "HT"] if args.form == "both" else [args.form.upper()]
    res = {f: volume_factor(phi, args.b, n, form=f, quad_n=cfg.quad_n).to_dict() for f in forms}
    code = EXIT_OK if all(r["converged"] for r in res.values()) else EXIT_DOMAIN
    if cfg.fmt == "csv":
        rows = [[f, r["value"], r["nodes"], r["delta"], r["converged"]] for f, r in res.items()]
        return _csv(rows, ["form", "value", "nodes", "delta", "converged"]), "", code
    return _dump_json({"phi": phi.to_dict(), "b": args.b, "n": n, "factors": res}), "", code


COMMANDS = {
    "validate": cmd_validate,
    "scurv": cmd_scurv,
    "eij": cmd_eij,
    "phiquant": cmd_phiquant,
    "identity-check": cmd_identity_check,
    "volume": cmd_volume,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model JSON file, or builtin:NAME (" + ", ".join(FIXTURES) + ")")
    common.add_argument("--phi", help="family name (riemannian, randers, square, randers_square) or @file.json")
    common.add_argument("--n", type=int, help="dimension used in the formulas (default dim k)")
    common.add_argument("--samples", type=int, default=512)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--quad-n", type=int, default=64)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--format", dest="fmt", default=None, choices=["json", "csv", "text"])
    common.add_argument("--out", help="write the main output here instead of stdout")

    p = argparse.ArgumentParser(prog="homfinsler", description="S-curvature and mean Berwald curvature "
                                "of homogeneous (alpha, beta)-spaces")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the Lie model and the metric")
    sp = sub.add_parser("scurv", parents=[common], help="S-curvature samples and isotropy verdict")
    sp.add_argument("--y", action="append", help="direction as comma-separated k-coordinates; repeatable")
    sp = sub.add_parser("eij", parents=[common], help="mean Berwald curvature at given directions")
    sp.add_argument("--y", action="append", help="direction as comma-separated k-coordinates; repeatable")
    sp = sub.add_parser("phiquant", parents=[common], help="Q, Delta, psi, Phi and s-derivatives")
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--s", action="append", help="s value; repeatable (default: 11 points in [-b, b])")
    sub.add_parser("identity-check", parents=[common], help="exact verification of the closed forms")
    sp = sub.add_parser("volume", parents=[common], help="volume factor f(b)")
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--form", default="both", choices=["BH", "HT", "bh", "ht", "both"])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.fmt or ("text" if args.command == "identity-check" else "json")
    if fmt == "text" and args.command != "identity-check":
        parser.error("--format text is only available for identity-check")
    try:
        cfg = RunConfig(args.command, args.model, args.phi, args.n, args.samples, args.seed,
                        args.quad_n, args.tol, fmt, args.out)
        body, side, code = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HomFinslerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.out:
        try:
            Path(cfg.out).write_text(body)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(body)
    if side:
        sys.stderr.write(side)
    return code
