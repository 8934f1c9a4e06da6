"""Command-line front end.

Every subcommand writes one JSON document (or a short text summary) that
embeds the package version, the resolved configuration and per-stage
timings.  Settings come from built-in defaults, then an INI file given by
``--config`` (section ``[run]``, keys named like the long flags), then the
flags themselves.

Exit codes: 0 success, 1 a verdict failed, 2 invalid parameters or
configuration.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .dg import build_differential, check_differential, homology_dims
from .freealg import SCHEMES, WORD_RULES, OrderSpec, word_str
from .groebner import check_nonhomogeneous_consistency, complete, normal_words, orient
from .hilbert import (
    RationalForm,
    closed_form_B2_dims,
    dims_by_enumeration,
    dims_by_transfer_matrix,
    recursion_check,
    series_reciprocal,
)
from .oracle import Undefined, random_generic_matrix, verify_classical, verify_presentation_numerically
from .presentations import (
    InvalidParams,
    Presentation,
    build_B,
    build_C,
    build_F,
    build_F0,
    build_G,
    build_Q,
    build_Q0,
    build_Q_colimit,
    build_R,
    build_R0,
    build_R_colimit,
    quadratic_part,
)
from .quaddual import quadratic_dual, verify_dual_matches

FIXTURE_ENV = "QPLUCKER_FIXTURES"
FAMILIES = ("R", "R0", "B", "Q", "Q0", "C", "Rcolim", "Qcolim", "F", "F0", "G")
DUAL_SIDE = ("B", "C", "G")
CLOSED_FORM_DUAL = {"R": "B", "R0": "B", "Q": "C", "Q0": "C", "F": "G", "F0": "G"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    algebra: str = "R"
    n: int = 3
    k: int | None = None
    scheme: str | None = None
    word_rule: str | None = None
    max_degree: int = 4
    ring: str = "quaternion"
    trials: int = 10
    seed: int = 0
    format: str = "json"
    output: str | None = None
    min_size: int = 1
    variant: str = "relations"
    include_skew: bool = False
    homology: bool = False
    verify: bool = False
    consistency: bool = False
    matrices: bool = False
    compare: bool = False
    omit_timings: bool = False
    fixtures: str | None = None

    def validate(self) -> None:
        if self.algebra not in FAMILIES:
            raise ConfigError(f"unknown algebra {self.algebra!r}; choose from {', '.join(FAMILIES)}")
        if self.n < 2:
            raise ConfigError("n must be at least 2")
        if self.scheme is not None and self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        if self.word_rule is not None and self.word_rule not in WORD_RULES:
            raise ConfigError(f"unknown word rule {self.word_rule!r}")
        if self.ring not in ("rational", "quaternion"):
            raise ConfigError(f"unknown ring {self.ring!r}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.max_degree < 1 or self.trials < 1:
            raise ConfigError("max-degree and trials must be positive")
        if self.variant not in ("relations", "rule"):
            raise ConfigError(f"unknown G variant {self.variant!r}")

    def public(self) -> dict:
        d = asdict(self)
        for key in ("output", "format", "omit_timings", "fixtures"):
            d.pop(key)
        return d


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    kind = _TYPES[name]
    if "bool" in kind:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if "int" in kind:
        return int(raw)
    return raw


def load_config(path: str | None, overrides: dict) -> RunConfig:
    values: dict = {}
    if path:
        parser = configparser.ConfigParser()
        if not parser.read(path):
            raise ConfigError(f"cannot read config file {path}")
        if parser.has_section("run"):
            for key, raw in parser.items("run"):
                name = key.replace("-", "_")
                if name not in _TYPES:
                    raise ConfigError(f"unknown config key {key!r}")
                try:
                    values[name] = _coerce(name, raw)
                except ValueError as exc:
                    raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    values.update({k: v for k, v in overrides.items() if v is not None and k in _TYPES})
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------- helpers


class Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    def __call__(self, name: str):
        timer = self

        class _Stage:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                timer.stages[name] = round(time.perf_counter() - self.t, 4)

        return _Stage()


def build(cfg: RunConfig) -> Presentation:
    n, k, a = cfg.n, cfg.k, cfg.algebra
    if a in ("R", "R0", "B", "Q", "Q0", "C") and k is None:
        raise InvalidParams(f"algebra {a} needs --k")
    if a == "R":
        p = build_R(n, k)
    elif a == "R0":
        p = build_R0(n, k)
    elif a == "B":
        p = build_B(n, k)
    elif a == "Q":
        p = build_Q(n, k, include_skew=cfg.include_skew)
    elif a == "Q0":
        p = build_Q0(n, k, include_skew=cfg.include_skew)
    elif a == "C":
        p = build_C(n, k)
    elif a == "Rcolim":
        p = build_R_colimit(n, k if k is not None else n)
    elif a == "Qcolim":
        p = build_Q_colimit(n, k if k is not None else n)
    elif a == "F":
        p = build_F(n, min_size=cfg.min_size)
    elif a == "F0":
        p = build_F0(n, min_size=cfg.min_size)
    else:
        p = build_G(n, min_size=cfg.min_size, variant=cfg.variant)
    return p


def closed_form_dual(cfg: RunConfig) -> Presentation | None:
    target = CLOSED_FORM_DUAL.get(cfg.algebra)
    if target == "B":
        return build_B(cfg.n, cfg.k)
    if target == "C":
        return build_C(cfg.n, cfg.k)
    if target == "G":
        return build_G(cfg.n, min_size=cfg.min_size, variant=cfg.variant)
    return None


def order_for(cfg: RunConfig, p: Presentation) -> OrderSpec:
    return OrderSpec(cfg.scheme or p.order.scheme, cfg.word_rule or p.order.word_rule)


def dual_side(cfg: RunConfig, p: Presentation) -> Presentation:
    return p if cfg.algebra in DUAL_SIDE else quadratic_dual(quadratic_part(p))


def _report(cfg: RunConfig, command: str, body: dict, timer: Timer) -> dict:
    out = {"artifact_version": __version__, "schema_version": 1, "command": command, "config": cfg.public()}
    out.update(body)
    if not cfg.omit_timings:
        out["timings"] = timer.stages
    return out


def _emit(cfg: RunConfig, doc: dict) -> None:
    if cfg.format == "json":
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        lines = [f"{doc['command']} ({doc['config']['algebra']}, n={doc['config']['n']}, k={doc['config']['k']})"]
        for key, val in doc.items():
            if key in ("command", "config", "artifact_version", "schema_version"):
                continue
            if isinstance(val, (dict, list)) and len(json.dumps(val)) > 100:
                val = f"<{type(val).__name__} of {len(val)} entries>"
            lines.append(f"  {key}: {val}")
        text = "\n".join(lines) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_build(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("build"):
        p = build(cfg)
    body = {"presentation": p.to_json(), "generator_count": len(p.generators), "relation_count": len(p.relations)}
    if not p.generators:
        body["warning"] = "zero algebra: no generators"
        print(f"warning: {p.name} is the zero algebra", file=sys.stderr)
    return _report(cfg, "build", body, t), 0


def cmd_dual(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("build"):
        p = build(cfg)
    with t("dual"):
        d = quadratic_dual(quadratic_part(p))
    body = {"dual": d.to_json(), "relation_rank": len(d.relations)}
    code = 0
    if cfg.compare:
        expected = closed_form_dual(cfg)
        if expected is None:
            raise ConfigError(f"no closed-form dual known for {cfg.algebra}")
        with t("compare"):
            cmp = verify_dual_matches(d, expected)
        body["comparison"] = cmp.to_json()
        code = 0 if cmp.equal else 1
    return _report(cfg, "dual", body, t), code


def cmd_gbasis(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("build"):
        p = build(cfg)
    with t("orient"):
        S = orient(p, order_for(cfg, p))
    with t("complete"):
        rep = complete(S, max(cfg.max_degree, 3), record_steps=True)
    body = {"groebner": rep.to_json(), "rules": rep.rules.rules_json()}
    return _report(cfg, "gbasis", body, t), 0 if rep.quadratic_gb else 1


def _series(cfg: RunConfig, p: Presentation, t: Timer) -> tuple[dict, bool]:
    D = cfg.max_degree
    with t("dual"):
        d = dual_side(cfg, p)
    with t("complete"):
        rep = complete(orient(d, order_for(cfg, d)), max(D, 3))
    S = rep.rules
    with t("dims"):
        dual_dims = dims_by_enumeration(S, D)
        transfer = dims_by_transfer_matrix(S, D) if S.is_quadratic else None
    form = RationalForm.koszul(dual_dims)
    with t("reciprocal"):
        dims = series_reciprocal(dual_dims, D)
    rec = recursion_check(dims, form)
    body = {
        "dual_dims": list(dual_dims),
        "dims": list(dims),
        "rational_form": form.to_json(),
        "rational_form_text": str(form),
        "recursion": rec.to_json(),
        "quadratic_gb": rep.quadratic_gb,
        "obstructions": len(rep.obstructions),
        "transfer_matrix_agrees": transfer == dual_dims if transfer is not None else None,
    }
    ok = rep.quadratic_gb and rec.ok and transfer in (None, dual_dims)
    return body, ok


def cmd_hilbert(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("build"):
        p = build(cfg)
    body, ok = _series(cfg, p, t)
    if cfg.algebra in ("B", "R", "R0") and cfg.k == 2 and cfg.n >= 3:
        body["closed_form_dual_dims"] = list(closed_form_B2_dims(cfg.n))
    return _report(cfg, "hilbert", body, t), 0 if ok else 1


def cmd_homology(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("homology"):
        h = homology_dims(cfg.n, with_matrices=cfg.matrices)
    with t("check"):
        chk = check_differential_for(cfg.n)
    body = {"homology": h.to_json(), "differential_check": chk.to_json()}
    ok = chk.ok and h.euler_algebra == h.euler_homology
    return _report(cfg, "homology", body, t), 0 if ok else 1


def check_differential_for(n: int):
    return check_differential(build_differential(n))


def _verify(cfg: RunConfig, p: Presentation, t: Timer) -> dict:
    if cfg.algebra in DUAL_SIDE:
        raise ConfigError(f"{cfg.algebra} has no coordinate interpretation to verify")
    rows = max((len(g.sup) + 1 for g in p.generators), default=1)
    rng = random.Random(cfg.seed)
    reports = []
    with t("oracle"):
        for _ in range(cfg.trials):
            a = random_generic_matrix(rows, cfg.n, cfg.ring, rng)
            reports.append(verify_presentation_numerically(p, a))
    failures = [f for r in reports for f in r.to_json()["failures"]]
    return {
        "trials": cfg.trials,
        "rows": rows,
        "ring": cfg.ring,
        "checked": sum(r.checked for r in reports),
        "skipped": sum(r.skipped for r in reports),
        "failures": failures,
        "ok": not failures,
    }


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("build"):
        p = build(cfg)
    body = {"oracle": _verify(cfg, p, t)}
    return _report(cfg, "verify", body, t), 0 if body["oracle"]["ok"] else 1


def cmd_pipeline(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    with t("build"):
        p = build(cfg)
    body, ok = _series(cfg, p, t)
    verdicts = {"series": ok}
    expected = closed_form_dual(cfg) if cfg.algebra not in DUAL_SIDE else None
    if expected is not None:
        with t("compare"):
            cmp = verify_dual_matches(quadratic_dual(quadratic_part(p)), expected)
        body["dual_comparison"] = cmp.to_json()
        verdicts["dual_matches"] = cmp.equal
    if cfg.homology:
        if cfg.k != 2:
            raise ConfigError("homology is defined for k = 2 only")
        with t("homology"):
            h = homology_dims(cfg.n)
            chk = check_differential_for(cfg.n)
        body["homology"] = h.to_json()
        body["differential_check"] = chk.to_json()
        verdicts["differential"] = chk.ok
    if cfg.verify:
        body["oracle"] = _verify(cfg, p, t)
        verdicts["oracle"] = body["oracle"]["ok"]
    if cfg.consistency:
        with t("consistency"):
            rep = check_nonhomogeneous_consistency(p, max_degree=cfg.max_degree, raise_on_failure=False)
        body["consistency"] = rep.to_json()
        verdicts["consistency"] = rep.ok
    body["verdicts"] = verdicts
    return _report(cfg, "pipeline", body, t), 0 if all(verdicts.values()) else 1


# ---------------------------------------------------------------- goldens


def fixture_dir(cfg: RunConfig) -> Path:
    if cfg.fixtures:
        return Path(cfg.fixtures)
    if os.environ.get(FIXTURE_ENV):
        return Path(os.environ[FIXTURE_ENV])
    return Path(__file__).parent / "fixtures"


def derive_golden(kind: str, params: dict):
    """Recompute the value a golden fixture records."""
    if kind == "series_reciprocal":
        return list(series_reciprocal(params["dims"], params["degree"]))
    if kind == "dual_dims":
        cfg = RunConfig(algebra=params["algebra"], n=params["n"], k=params.get("k"))
        d = dual_side(cfg, build(cfg))
        S = complete(orient(d), max(params["degree"], 3)).rules
        return list(dims_by_enumeration(S, params["degree"]))
    if kind == "closed_form":
        return list(closed_form_B2_dims(params["n"]))
    if kind == "normal_words":
        cfg = RunConfig(algebra=params["algebra"], n=params["n"], k=params.get("k"))
        d = dual_side(cfg, build(cfg))
        S = complete(orient(d), 3).rules
        return [word_str(w) for w in normal_words(S, params["degree"])]
    if kind == "generator_count":
        cfg = RunConfig(algebra=params["algebra"], n=params["n"], k=params.get("k"))
        return len(build(cfg).generators)
    if kind == "homology":
        return homology_dims(params["n"]).homology
    if kind == "classical_plucker":
        rng = random.Random(params["seed"])
        out = []
        for _ in range(params["trials"]):
            a = random_generic_matrix(params["k"], params["n"], "rational", rng)
            out.append(str(verify_classical(a, params["I"], params["J"])))
        return out
    raise ConfigError(f"unknown golden kind {kind!r}")


def cmd_goldens(cfg: RunConfig) -> tuple[dict, int]:
    t = Timer()
    root = fixture_dir(cfg)
    files = sorted(root.glob("*.json")) if root.is_dir() else []
    if not files:
        raise ConfigError(f"no golden fixtures found in {root}")
    results = []
    with t("goldens"):
        for path in files:
            for case in json.loads(path.read_text()):
                try:
                    got = derive_golden(case["kind"], case["params"])
                except (InvalidParams, Undefined) as exc:
                    got = f"error: {exc}"
                same = json.dumps(got, sort_keys=True) == json.dumps(case["expected"], sort_keys=True)
                entry = {"file": path.name, "name": case["name"], "ok": same}
                if not same:
                    entry["expected"] = case["expected"]
                    entry["got"] = got
                results.append(entry)
    failed = [r for r in results if not r["ok"]]
    body = {"fixture_dir": str(root), "cases": len(results), "failed": failed, "ok": not failed}
    return _report(cfg, "goldens", body, t), 0 if not failed else 1


COMMANDS = {
    "build": cmd_build,
    "dual": cmd_dual,
    "gbasis": cmd_gbasis,
    "hilbert": cmd_hilbert,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "pipeline": cmd_pipeline,
    "goldens": cmd_goldens,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with a [run] section")
    common.add_argument("--format", choices=("json", "text"))
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--omit-timings", action="store_const", const=True,
                        help="leave timings out so reports are byte-identical across runs")

    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument("--algebra", choices=FAMILIES)
    algebra.add_argument("--n", type=int)
    algebra.add_argument("--k", "--k-max", dest="k", type=int)
    algebra.add_argument("--min-size", type=int, help="smallest |I| for flag generators")
    algebra.add_argument("--variant", choices=("relations", "rule"), help="G presentation variant")
    algebra.add_argument("--include-skew", action="store_const", const=True)
    algebra.add_argument("--scheme", choices=SCHEMES)
    algebra.add_argument("--word-rule", choices=WORD_RULES)
    algebra.add_argument("--max-degree", type=int)

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--ring", choices=("rational", "quaternion"))
    oracle.add_argument("--trials", type=int)
    oracle.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="qplucker", description="Quasi-Plücker algebras: presentations, duals, Gröbner bases, series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common, algebra], help="write a presentation as JSON")
    p = sub.add_parser("dual", parents=[common, algebra], help="quadratic dual of the quadratic part")
    p.add_argument("--compare", action="store_const", const=True, help="compare with the closed-form dual")
    sub.add_parser("gbasis", parents=[common, algebra], help="orient and complete the relations")
    sub.add_parser("hilbert", parents=[common, algebra], help="graded dimensions via the dual")
    p = sub.add_parser("homology", parents=[common], help="homology of the k=2 dual under its differential")
    p.add_argument("--n", type=int)
    p.add_argument("--matrices", action="store_const", const=True)
    sub.add_parser("verify", parents=[common, algebra, oracle], help="evaluate relations on random matrices")
    p = sub.add_parser("pipeline", parents=[common, algebra, oracle], help="build, dual, complete, series and checks")
    p.add_argument("--homology", action="store_const", const=True)
    p.add_argument("--verify", action="store_const", const=True)
    p.add_argument("--consistency", action="store_const", const=True)
    p = sub.add_parser("goldens", parents=[common], help="re-derive golden fixtures and diff them")
    p.add_argument("--fixtures", help=f"fixture directory (default ${FIXTURE_ENV} or the bundled set)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        cfg = load_config(args.config, overrides)
        if args.command == "homology" and cfg.n < 3:
            raise ConfigError("homology needs n >= 3")
        doc, code = COMMANDS[args.command](cfg)
    except (ConfigError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(cfg, doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
