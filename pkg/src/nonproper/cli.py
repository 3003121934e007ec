"""Command-line front-end: normalize, eliminate, expand, search, verify.

Input is a JSON document ``{"P": "...", "Q": "...", "vars": ["x", "y"]}``
(file or stdin); it may also carry any configuration field, which command
line flags override.  Exit status: 0 every executed check passed or was
vacuous, 1 some check failed, 2 bad input, 3 resource or precision limit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass

import mpmath

from .dicritical import build_tree, lemma2_consistency, lemma3_consistency
from .errors import InputError, NonproperError
from .poly import PolyMap, jacobian, leading_relation_check, normalize_monic
from .puiseux import factorization_check, roots_at_infinity
from .resultant import extract_R0, r0_shape_check, resultant_in_y
from .scalars import DEFAULT_PRECISION, MODES, arithmetic_mode, scalar_to_json
from .verify import (
    FAIL,
    NA,
    PASS,
    VACUOUS,
    VerifierReport,
    _jsonable,
    assertion_check,
    cross_substitution,
    cross_validate,
    geometric_degree_agreement,
    jacobian_constancy,
    random_shear,
    verify_cor2,
    verify_theorem1,
)

__all__ = ["RunConfig", "run", "main", "render_text", "parse_document", "STAGES", "SCHEMA"]

SCHEMA = 1
STAGES = ("normalize", "resultant", "puiseux", "dicritical", "verify")
_REQUIRES = {
    "normalize": (),
    "resultant": ("normalize",),
    "puiseux": ("normalize",),
    "dicritical": ("normalize",),
    "verify": ("normalize", "resultant", "dicritical"),
}
CONFIG_FIELDS = ("mode", "precision", "max_order", "depth_cap", "tol", "seed", "stages")


@dataclass
class RunConfig:
    mode: str = "exact"
    precision: int = DEFAULT_PRECISION
    max_order: int | None = None
    depth_cap: int | None = None
    tol: float | None = None
    seed: int = 0
    stages: tuple = STAGES

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not isinstance(self.precision, int) or self.precision < 64:
            raise InputError("precision must be an integer >= 64")
        if self.tol is not None and not self.tol > 0:
            raise InputError("tolerance must be positive")
        if self.depth_cap is not None and self.depth_cap < 1:
            raise InputError("depth cap must be >= 1")
        if self.max_order is not None and self.max_order < 0:
            raise InputError("max order must be >= 0")
        unknown = [s for s in self.stages if s not in STAGES]
        if unknown:
            raise InputError(f"unknown stage(s) {unknown}; choose from {list(STAGES)}")
        wanted = set(self.stages)
        for s in list(wanted):
            wanted.update(_REQUIRES[s])
        self.stages = tuple(s for s in STAGES if s in wanted)


# ------------------------------------------------------------------ stages


def _normalize_stage(f: PolyMap):
    nf = normalize_monic(f)
    J = jacobian(f)
    return nf, {
        "map": [str(nf.P), str(nf.Q)],
        "shear": scalar_to_json(nf.shear),
        "A": scalar_to_json(nf.A),
        "B": scalar_to_json(nf.B),
        "K": nf.K,
        "d": nf.d,
        "e": nf.e,
        "jacobian": str(J),
        "jacobian_constant": jacobian_constancy(f),
        "leading_relation": leading_relation_check(nf),
    }


def _resultant_stage(nf, jconst):
    rd = resultant_in_y(nf)
    info = extract_R0(rd)
    shape = r0_shape_check(rd.R0, nf) if jconst is not None else None
    return rd, {
        "N": rd.N,
        "coeffs": [str(c) for c in rd.coeffs],
        "R0": str(info["R0"]),
        "A_f_empty": info["A_f_empty"],
        "R0_shape": None if shape is None else shape.to_json(),
    }, shape


def _puiseux_stage(nf, cfg: RunConfig):
    order = 1 if cfg.max_order is None else cfg.max_order
    out = {"order": order}
    for name, F in (("P", nf.P), ("Q", nf.Q)):
        rts = roots_at_infinity(F, order, cfg.precision)
        ok, resid = factorization_check(F, rts, F.coeff(0, F.degree_in(1)),
                                        return_residual=True, precision=cfg.precision)
        out[name] = {
            "roots": [r.to_json() for r in rts],
            "factorization": {"passed": ok, "residual": resid},
        }
    return out


def _dicritical_stage(nf, cfg: RunConfig):
    tree = build_tree(nf, max_order=cfg.max_order, precision=cfg.precision, depth_cap=cfg.depth_cap)
    nodes = tree.nodes()
    return tree, {
        "nodes": len(nodes),
        "leaves": len(tree.leaves),
        "tree": [n.to_json() | {"depth": n.depth} for n in nodes],
        "components": [c.to_json() for c in tree.components],
    }


def _summarize(results, key="passed"):
    if not results:
        return {"status": VACUOUS, "count": 0, "failures": 0}
    fails = [r for r in results if not r[key]]
    return {"status": PASS if not fails else FAIL, "count": len(results), "failures": len(fails)}


def _verify_stage(f, nf, rd, shape, tree, jconst, cfg: RunConfig) -> VerifierReport:
    comps = tree.components
    applicable = jconst is not None
    if applicable:
        th1 = verify_theorem1(nf, comps)
    else:
        th1 = {"status": NA, "components": []}
    cor2 = verify_cor2(nf, comps)
    if not applicable and comps:
        cor2["status"] = NA
    cv = cross_validate(rd.R0, comps, seed=cfg.seed, precision=cfg.precision, tol=cfg.tol)
    fib = geometric_degree_agreement(f, rd.N, seed=cfg.seed, precision=cfg.precision)
    l2 = _summarize([lemma2_consistency(a, b) for a, b in tree.edges()])
    if applicable:
        l3_all = [lemma3_consistency(n, jconst) for n in tree.nodes()]
        l3 = _summarize([r for r in l3_all if r["applicable"]])
    else:
        l3 = {"status": NA}
    report = VerifierReport(
        jacobian_constant=jconst,
        theorem1=th1,
        cor1=shape,
        cor2=cor2,
        cross_validation=cv,
        fiber_count=fib,
        lemma2=l2,
        lemma3=l3,
        assertion=assertion_check(tree, jconst),
    )
    report.extra["coordinate_invariance"] = _invariance(f, rd, comps, cfg)
    return report


def _invariance(f, rd, comps, cfg):
    rng = random.Random(cfg.seed)
    g = f.compose_right(random_shear(rng))
    nf2 = normalize_monic(g)
    rd2 = resultant_in_y(nf2)
    tree2 = build_tree(nf2, max_order=cfg.max_order, precision=cfg.precision, depth_cap=cfg.depth_cap)
    return cross_substitution(rd.R0, comps, rd2.R0, tree2.components, cfg.precision, cfg.tol)


# --------------------------------------------------------------------- run


def parse_document(doc) -> tuple[PolyMap, dict]:
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    if "P" not in doc or "Q" not in doc:
        raise InputError('input document needs "P" and "Q"')
    if not isinstance(doc["P"], str) or not isinstance(doc["Q"], str):
        raise InputError('"P" and "Q" must be polynomial strings')
    names = doc.get("vars", ["x", "y"])
    if not (isinstance(names, list) and len(names) == 2 and all(isinstance(v, str) for v in names)
            and names[0] != names[1]):
        raise InputError('"vars" must be a list of two distinct names')
    f = PolyMap.parse(doc["P"], doc["Q"], tuple(names))
    return f, {"P": doc["P"], "Q": doc["Q"], "vars": list(names)}


def _error_json(err: NonproperError, stage: str):
    return {"stage": stage, "code": err.code, "message": str(err)}


def run(doc, config: RunConfig | None = None) -> tuple[dict, int]:
    """Execute the requested stages; returns the report and exit status.

    A failing stage stops the stages that depend on it; everything computed
    before it stays in the report.
    """
    cfg = config or RunConfig()
    report = {"schema": SCHEMA, "input": None, "config": _jsonable(asdict(cfg)), "stages": {},
              "checks": {}, "error": None}
    try:
        f, report["input"] = parse_document(doc)
    except NonproperError as err:
        report["error"] = _error_json(err, "input")
        report["exit_status"] = err.exit_status
        return report, err.exit_status
    stage = "normalize"
    checks = report["checks"]
    try:
        with mpmath.workprec(cfg.precision), arithmetic_mode(cfg.mode):
            nf, info = _normalize_stage(f)
            jconst = info["jacobian_constant"]
            report["stages"]["normalize"] = info
            rd = shape = tree = None
            if "resultant" in cfg.stages:
                stage = "resultant"
                rd, info, shape = _resultant_stage(nf, jconst)
                report["stages"]["resultant"] = info
            if "puiseux" in cfg.stages:
                stage = "puiseux"
                info = _puiseux_stage(nf, cfg)
                report["stages"]["puiseux"] = info
                checks["factorization"] = PASS if all(
                    info[k]["factorization"]["passed"] for k in ("P", "Q")) else FAIL
            if "dicritical" in cfg.stages:
                stage = "dicritical"
                tree, info = _dicritical_stage(nf, cfg)
                report["stages"]["dicritical"] = info
            if "verify" in cfg.stages:
                stage = "verify"
                vr = _verify_stage(f, nf, rd, shape, tree, jconst, cfg)
                body = vr.to_json()
                body["coordinate_invariance"] = _jsonable(vr.extra["coordinate_invariance"])
                report["stages"]["verify"] = body
                checks.update(vr.statuses())
                checks["coordinate_invariance"] = vr.extra["coordinate_invariance"]["status"]
    except NonproperError as err:
        report["error"] = _error_json(err, stage)
        report["exit_status"] = err.exit_status
        return _jsonable(report), err.exit_status
    status = 1 if FAIL in checks.values() else 0
    report["exit_status"] = status
    return _jsonable(report), status


# -------------------------------------------------------------------- text


def render_text(report: dict) -> str:
    lines = []
    inp = report.get("input")
    if inp:
        lines.append(f"map: P = {inp['P']}, Q = {inp['Q']}")
    st = report["stages"]
    if "normalize" in st:
        n = st["normalize"]
        lines.append(f"normal form (shear {n['shear']}): P = {n['map'][0]}, Q = {n['map'][1]}")
        jc = n["jacobian_constant"]
        lines.append(f"Jacobian: {n['jacobian']}" + ("  (nonzero constant)" if jc is not None else ""))
    if "resultant" in st:
        r = st["resultant"]
        lines.append(f"geometric degree N = {r['N']}; R0 = {r['R0']}"
                     + ("  (non-proper set empty)" if r["A_f_empty"] else ""))
    if "dicritical" in st:
        d = st["dicritical"]
        lines.append(f"associated tree: {d['nodes']} nodes, {d['leaves']} dicritical leaves, "
                     f"{len(d['components'])} components")
        for c in d["components"]:
            lines.append(f"  component: xi -> ({c['f_phi'][0]}, {c['f_phi'][1]})")
    if report["checks"]:
        lines.append("checks:")
        for name, status in report["checks"].items():
            lines.append(f"  [{status:7}] {name}")
    if report.get("error"):
        e = report["error"]
        lines.append(f"error in {e['stage']} [{e['code']}]: {e['message']}")
    lines.append(f"exit status {report['exit_status']}")
    return "\n".join(lines)


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nonproper",
        description="Compute and audit the non-proper value set of a plane polynomial map.",
    )
    ap.add_argument("input", nargs="?", default="-", help="JSON input file ('-' for stdin)")
    ap.add_argument("-P", dest="P", help="first component (overrides the document)")
    ap.add_argument("-Q", dest="Q", help="second component (overrides the document)")
    ap.add_argument("--mode", choices=MODES)
    ap.add_argument("--precision", type=int, help="working precision in bits (>= 64)")
    ap.add_argument("--max-order", type=int, dest="max_order",
                    help="deepest x-exponent, as -max_order, for roots and the search")
    ap.add_argument("--depth-cap", type=int, dest="depth_cap")
    ap.add_argument("--tol", type=float, help="residual tolerance for approximate values")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--stages", help=f"comma separated subset of {','.join(STAGES)}")
    out = ap.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json")
    out.add_argument("--text", dest="fmt", action="store_const", const="text")
    return ap


def _load(args) -> dict:
    if args.P is not None and args.Q is not None and args.input == "-":
        return {}
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    return doc


def config_from(doc: dict, args) -> RunConfig:
    values = {k: doc[k] for k in CONFIG_FIELDS if k in doc}
    for k in CONFIG_FIELDS:
        v = getattr(args, k, None)
        if v is not None:
            values[k] = v
    if isinstance(values.get("stages"), str):
        values["stages"] = [s.strip() for s in values["stages"].split(",") if s.strip()]
    if "stages" in values:
        values["stages"] = tuple(values["stages"])
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise InputError(f"bad configuration: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _load(args)
        if args.P is not None:
            doc["P"] = args.P
        if args.Q is not None:
            doc["Q"] = args.Q
        cfg = config_from(doc, args)
    except (InputError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    report, status = run(doc, cfg)
    if report.get("error"):
        e = report["error"]
        print(f"{e['code']}: {e['message']}", file=sys.stderr)
    fmt = args.fmt or doc.get("format", "json")
    if fmt == "text":
        print(render_text(report))
    else:
        print(json.dumps(report, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
