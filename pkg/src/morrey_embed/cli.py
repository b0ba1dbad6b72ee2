"""Batch front-end: scenario configs in, reports out.

Config files are INI-style key/value sections, one scenario per section
(a [DEFAULT] section supplies shared keys).  Weights use the expression
grammar; normalized printing is the canonical serialization.  Commands:

  classify       print case tags
  evaluate       per-functional values with error estimates
  oracle         brute-force lower bounds
  verify         evaluate + oracle + two-sided equivalence verdict
  complementary  rewrite a complementary-ball scenario through the
                 inversion x -> x/|x|^2 and chain into verify
  audit          verify twice (printed vs corrected exponents) and report
                 which variant tracks the oracle
  golden         run the bundled corpus against stored baselines

Exit codes: 1 parse/config error, 2 admissibility failure, 3 verify FAIL,
0 otherwise.  Reports are one structured-text file per scenario plus a
flat comma-separated summary; identical config and seed give identical
summaries apart from the wall-time column.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from importlib import resources

from .functionals import (
    EmbeddingProblem,
    EvalSettings,
    SUPPORTED_TAGS,
    check_admissibility,
    classify,
    embedding_norm_estimate,
    make_variant_table,
)
from .oracle import SearchConfig, best_constant_search, divergence_probe, verify_equivalence
from .reduction import MorreySpace, complementary_space
from .weights import (
    AngularWeight,
    ExponentQuad,
    RnWeight,
    WeightParseError,
    format_weight,
    parse_weight,
)

__all__ = ["Scenario", "ScenarioResult", "load_scenarios", "run", "golden_suite",
           "run_audit", "main"]

COMMANDS = ("classify", "evaluate", "oracle", "verify", "complementary", "audit", "golden")

SUMMARY_COLUMNS = ("scenario", "tag", "I_total", "components", "oracle_L",
                   "ratio", "verdict", "seconds")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    name: str
    p1: float
    p2: float
    q1: float
    q2: float
    w1: str
    w2: str
    task: str = "verify"
    n: int = 1
    v1: str = "1"
    v2: str = "1"
    v1_angular: float = 1.0
    v2_angular: float = 1.0
    variants: str = "printed"
    slack: float = 10.0
    seed: int = 20240
    knots: int = 64
    support_min: float = 1e-4
    support_max: float = 1e4
    restarts: int = 4
    ascent_sweeps: int = 3
    rel_tol: float = 1e-8
    sup_per_decade: int = 24
    grid_min: float = 1e-6
    grid_max: float = 1e6
    divergence_threshold: float = 1e3
    widen_max: int = 4

    def spaces(self) -> tuple:
        src = MorreySpace(
            v=RnWeight(self.n, parse_weight(self.v1), AngularWeight.constant(self.v1_angular, self.n)),
            w=parse_weight(self.w1), p=self.p1, q=self.q1)
        tgt = MorreySpace(
            v=RnWeight(self.n, parse_weight(self.v2), AngularWeight.constant(self.v2_angular, self.n)),
            w=parse_weight(self.w2), p=self.p2, q=self.q2)
        return src, tgt

    def settings(self) -> EvalSettings:
        return EvalSettings(rel_tol=self.rel_tol, sup_per_decade=self.sup_per_decade,
                            grid_min=self.grid_min, grid_max=self.grid_max)

    def search_config(self, seed=None, slack=None) -> SearchConfig:
        return SearchConfig(knots=self.knots, support_min=self.support_min,
                            support_max=self.support_max, restarts=self.restarts,
                            ascent_sweeps=self.ascent_sweeps,
                            seed=self.seed if seed is None else seed,
                            slack=self.slack if slack is None else slack)


_FIELD_TYPES = {f.name: f.type for f in fields(Scenario)}
_FLOAT_KEYS = {n for n, t in _FIELD_TYPES.items() if t == "float"}
_INT_KEYS = {n for n, t in _FIELD_TYPES.items() if t == "int"}
_REQUIRED = ("p1", "p2", "q1", "q2", "w1", "w2")


def load_scenarios(path: str) -> list:
    """Parse a config file into scenarios; unknown keys are hard errors."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc
    scenarios = []
    for section in parser.sections():
        raw = dict(parser[section])
        kwargs = {"name": section}
        for key, value in raw.items():
            if key == "name" or key not in _FIELD_TYPES:
                raise ConfigError(f"[{section}] unknown key {key!r}")
            if key in _FLOAT_KEYS:
                try:
                    kwargs[key] = float(value)
                except ValueError as exc:
                    raise ConfigError(f"[{section}] {key}: not a number: {value!r}") from exc
            elif key in _INT_KEYS:
                try:
                    kwargs[key] = int(value)
                except ValueError as exc:
                    raise ConfigError(f"[{section}] {key}: not an integer: {value!r}") from exc
            else:
                kwargs[key] = value
        missing = [k for k in _REQUIRED if k not in kwargs]
        if missing:
            raise ConfigError(f"[{section}] missing required keys: {', '.join(missing)}")
        if kwargs.get("task", "verify") not in COMMANDS[:5]:
            raise ConfigError(f"[{section}] bad task {kwargs.get('task')!r}")
        for wkey in ("v1", "v2", "w1", "w2"):
            if wkey in kwargs:
                try:
                    parse_weight(kwargs[wkey])
                except WeightParseError as exc:
                    raise ConfigError(f"[{section}] {wkey}: {exc}") from exc
        try:
            make_variant_table(kwargs.get("variants", "printed"))
        except ValueError as exc:
            raise ConfigError(f"[{section}] variants: {exc}") from exc
        scenarios.append(Scenario(**kwargs))
    if not scenarios:
        raise ConfigError("config defines no scenarios")
    names = [s.name for s in scenarios]
    if len(set(names)) != len(names):
        raise ConfigError("duplicate scenario names")
    return scenarios


# ---------------------------------------------------------------------------
# Scenario execution

@dataclass
class ScenarioResult:
    scenario: Scenario
    command: str
    tag: str = ""
    admissible: bool | None = None
    admissibility_checks: list = field(default_factory=list)
    functional: object = None
    oracle: object = None
    verdict: object = None
    transformed: dict = field(default_factory=dict)
    seconds: float = 0.0
    error: str = ""

    @property
    def i_total(self) -> float:
        return self.functional.value if self.functional is not None else math.nan

    @property
    def oracle_l(self) -> float:
        return self.oracle.lower_bound if self.oracle is not None else math.nan

    def verdict_text(self) -> str:
        if self.error:
            return "ERROR"
        if self.verdict is None:
            return ""
        if not self.verdict.passed:
            return "FAIL"
        return "PASS-divergent" if self.verdict.mode == "divergent" else "PASS"


def _fmt(x: float) -> str:
    if x != x:
        return "nan"
    if x == math.inf:
        return "inf"
    return f"{x:.12g}"


def run_scenario(scenario: Scenario, command: str, seed=None, slack=None) -> ScenarioResult:
    start = time.perf_counter()
    out = ScenarioResult(scenario=scenario, command=command)
    try:
        if command == "complementary":
            src, tgt = scenario.spaces()
            src, tgt = complementary_space(src), complementary_space(tgt)
            out.transformed = {
                "v1": format_weight(src.v.radial), "w1": format_weight(src.w),
                "v2": format_weight(tgt.v.radial), "w2": format_weight(tgt.w),
            }
            command = "verify"
        else:
            src, tgt = scenario.spaces()
        params = ExponentQuad(p1=src.p, p2=tgt.p, q1=src.q, q2=tgt.q)
        case = classify(params)
        out.tag = str(case)
        if command == "classify":
            return out
        problem = EmbeddingProblem(src, tgt, scenario.settings())
        adm = check_admissibility(case, problem)
        out.admissible = adm.passed
        out.admissibility_checks = adm.checks
        if not case.supported or not adm.passed:
            return out
        variants = make_variant_table(scenario.variants)
        if command in ("evaluate", "verify"):
            out.functional = embedding_norm_estimate(case, problem, variants)
        if command in ("oracle", "verify"):
            hints = []
            if out.functional is not None:
                hints = [a for c in out.functional.components for a in c.argsup]
            cfg = scenario.search_config(seed=seed, slack=slack)
            out.oracle = best_constant_search(src, tgt, cfg, hints=hints)
        if command == "verify":
            witnessed = None
            if math.isinf(out.functional.value):
                witnessed, trail = divergence_probe(
                    src, tgt, scenario.search_config(seed=seed, slack=slack),
                    threshold=scenario.divergence_threshold, max_widen=scenario.widen_max)
                out.oracle.trace.append(("widening", trail))
                if witnessed and math.isfinite(out.oracle.lower_bound):
                    out.oracle.lower_bound = max(out.oracle.lower_bound, max(
                        t for t in trail if not math.isnan(t)))
            out.verdict = verify_equivalence(
                out.functional.value, out.oracle.lower_bound,
                slack if slack is not None else scenario.slack, witnessed)
    except Exception as exc:  # surfaced per scenario, not a crash of the batch
        out.error = f"{type(exc).__name__}: {exc}"
    finally:
        out.seconds = time.perf_counter() - start
    return out


# ---------------------------------------------------------------------------
# Reports

def _scenario_echo(s: Scenario) -> list:
    lines = [f"  {f.name} = {getattr(s, f.name)}" for f in fields(Scenario)]
    return lines


def render_report(res: ScenarioResult, seed=None, slack=None) -> str:
    s = res.scenario
    buf = io.StringIO()
    w = buf.write
    w(f"scenario: {s.name}\n")
    w(f"command: {res.command}\n")
    w(f"seed: {seed if seed is not None else s.seed}\n")
    w(f"slack: {slack if slack is not None else s.slack}\n")
    if res.error:
        w(f"error: {res.error}\n")
    if res.transformed:
        w("complementary rewrite (ball-space weights):\n")
        for key, val in res.transformed.items():
            w(f"  {key} = {val}\n")
    w(f"case: {res.tag}\n")
    if res.admissible is not None:
        w(f"admissible: {'pass' if res.admissible else 'fail'}\n")
        for name, ok, detail in res.admissibility_checks:
            w(f"  {name}: {'pass' if ok else 'fail'}{' - ' + detail if detail else ''}\n")
    if res.functional is not None:
        w(f"I_total: {_fmt(res.functional.value)} (err {_fmt(res.functional.error_estimate)})\n")
        for c in res.functional.components:
            w(f"  {c.name} [{c.variant}]: {_fmt(c.value)} (err {_fmt(c.error_estimate)})"
              f"{' note: ' + c.note if c.note else ''}\n")
    if res.oracle is not None:
        w(f"oracle_L: {_fmt(res.oracle.lower_bound)}\n")
        w(f"oracle_rng: {res.oracle.rng_name}(seed={res.oracle.seed})\n")
        w(f"oracle_evals: {res.oracle.n_evals}\n")
        if res.oracle.note:
            w(f"oracle_note: {res.oracle.note}\n")
        g = res.oracle.g
        w(f"oracle_g_knots: {','.join(_fmt(k) for k in g.knots)}\n")
        w(f"oracle_g_values: {','.join(_fmt(v) for v in g.values)}\n")
    if res.verdict is not None:
        w(f"ratio: {_fmt(res.verdict.ratio)}\n")
        w(f"verdict: {res.verdict_text()}"
          f"{' - ' + res.verdict.detail if res.verdict.detail else ''}\n")
    w(f"seconds: {res.seconds:.3f}\n")
    w("config echo (rerun determinism):\n")
    for line in _scenario_echo(s):
        w(line + "\n")
    return buf.getvalue()


def summary_row(res: ScenarioResult) -> dict:
    comps = ""
    if res.functional is not None:
        comps = ";".join(f"{c.name}={_fmt(c.value)}" for c in res.functional.components)
    return {
        "scenario": res.scenario.name,
        "tag": res.tag,
        "I_total": _fmt(res.i_total) if res.functional is not None else "",
        "components": comps,
        "oracle_L": _fmt(res.oracle_l) if res.oracle is not None else "",
        "ratio": _fmt(res.verdict.ratio) if res.verdict is not None else "",
        "verdict": res.verdict_text(),
        "seconds": f"{res.seconds:.3f}",
    }


def _atomic_write(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


def write_reports(results: list, out_dir: str, seed=None, slack=None) -> str:
    os.makedirs(out_dir, exist_ok=True)
    for res in results:
        _atomic_write(os.path.join(out_dir, f"{res.scenario.name}.report.txt"),
                      render_report(res, seed=seed, slack=slack))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for res in sorted(results, key=lambda r: r.scenario.name):
        writer.writerow(summary_row(res))
    summary_path = os.path.join(out_dir, "summary.csv")
    _atomic_write(summary_path, buf.getvalue())
    return summary_path


def _exit_code(results: list, command: str) -> int:
    if any(r.error for r in results):
        return 1
    if command == "classify":
        return 0
    if any(r.admissible is False for r in results):
        return 2
    if command in ("verify", "complementary") and any(
            r.verdict is not None and not r.verdict.passed for r in results):
        return 3
    return 0


def run(config_path: str, command: str, seed=None, slack=None,
        out_dir: str = "reports", jobs: int = 4) -> int:
    """Run every scenario in the config through the command pipeline."""
    try:
        scenarios = load_scenarios(config_path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    if jobs > 1 and len(scenarios) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                lambda s: run_scenario(s, command, seed=seed, slack=slack), scenarios))
    else:
        results = [run_scenario(s, command, seed=seed, slack=slack) for s in scenarios]
    summary = write_reports(results, out_dir, seed=seed, slack=slack)
    for res in sorted(results, key=lambda r: r.scenario.name):
        row = summary_row(res)
        print(f"{row['scenario']}: tag={row['tag']} I={row['I_total']} "
              f"L={row['oracle_L']} verdict={row['verdict'] or '-'}"
              + (f" error={res.error}" if res.error else ""))
    print(f"summary: {summary}")
    return _exit_code(results, command)


# ---------------------------------------------------------------------------
# Typo audit: printed vs corrected exponents against the oracle

def run_audit(config_path: str, seed=None, slack=None, out_dir: str = "reports",
              jobs: int = 4) -> int:
    """Verify every scenario under both exponent variants and report which
    variant stays two-sided against the oracle."""
    try:
        scenarios = load_scenarios(config_path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    for variant in ("printed", "corrected"):
        variant_scenarios = [replace(s, variants=variant, name=f"{s.name}__{variant}")
                             for s in scenarios]
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(
                    lambda s: run_scenario(s, "verify", seed=seed, slack=slack),
                    variant_scenarios))
        else:
            results = [run_scenario(s, "verify", seed=seed, slack=slack)
                       for s in variant_scenarios]
        for res in results:
            row = summary_row(res)
            row["variant"] = variant
            rows.append(row)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=("variant",) + SUMMARY_COLUMNS,
                            lineterminator="\n")
    writer.writeheader()
    for row in sorted(rows, key=lambda r: (r["variant"], r["scenario"])):
        writer.writerow(row)
    passes = {v: sum(1 for r in rows if r["variant"] == v and r["verdict"].startswith("PASS"))
              for v in ("printed", "corrected")}
    total = len(rows) // 2
    verdict = ("corrected" if passes["corrected"] > passes["printed"] else
               "printed" if passes["printed"] > passes["corrected"] else "tie")
    buf.write(f"# printed passes: {passes['printed']}/{total}; "
              f"corrected passes: {passes['corrected']}/{total}; "
              f"oracle-consistent variant: {verdict}\n")
    path = os.path.join(out_dir, "audit.csv")
    _atomic_write(path, buf.getvalue())
    print(f"audit: printed {passes['printed']}/{total} pass, "
          f"corrected {passes['corrected']}/{total} pass -> {verdict}")
    print(f"audit report: {path}")
    return 0


# ---------------------------------------------------------------------------
# Golden suite

def _data_path(name: str):
    return resources.files("morrey_embed").joinpath("data", name)


def golden_suite(out_dir: str = "reports", rel_tol: float = 1e-6) -> int:
    """Run the bundled corpus per scenario task and compare to baselines."""
    cfg_path = _data_path("golden.cfg")
    base_path = _data_path("golden_baselines.csv")
    with resources.as_file(cfg_path) as p:
        scenarios = load_scenarios(str(p))
    baselines = {}
    with base_path.open("r", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            baselines[row["scenario"]] = row
    tags_seen = set()
    failures = []
    results = []
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda s: run_scenario(s, s.task), scenarios))
    for res in results:
        name = res.scenario.name
        row = summary_row(res)
        base = baselines.get(name)
        if res.tag in SUPPORTED_TAGS:
            tags_seen.add(res.tag)
        if base is None:
            failures.append(f"{name}: no baseline recorded")
            continue
        if res.error:
            failures.append(f"{name}: error {res.error}")
            continue
        for key in ("tag", "verdict"):
            if row[key] != base[key]:
                failures.append(f"{name}: {key} {row[key]!r} != baseline {base[key]!r}")
        for key in ("I_total", "oracle_L"):
            got, want = row[key], base[key]
            if not want:
                continue
            if (got == "inf") != (want == "inf"):
                failures.append(f"{name}: {key} {got} vs baseline {want}")
            elif want not in ("inf", "", "nan"):
                g, b = float(got), float(want)
                if abs(g - b) > rel_tol * max(abs(b), 1e-300):
                    failures.append(f"{name}: {key} {got} deviates from baseline {want}")
    missing_tags = set(SUPPORTED_TAGS) - tags_seen
    if missing_tags:
        failures.append(f"corpus does not cover tags: {sorted(missing_tags)}")
    write_reports(results, out_dir)
    if failures:
        for f in failures:
            print(f"golden FAIL: {f}")
        return 1
    print(f"golden suite: all {len(results)} scenarios match baselines; "
          f"tags covered: {sorted(tags_seen)}")
    return 0


def regenerate_baselines(path: str) -> None:
    """Recompute the golden corpus and freeze the baseline table."""
    with resources.as_file(_data_path("golden.cfg")) as p:
        scenarios = load_scenarios(str(p))
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda s: run_scenario(s, s.task), scenarios))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for res in sorted(results, key=lambda r: r.scenario.name):
        if res.error:
            raise RuntimeError(f"{res.scenario.name}: {res.error}")
        writer.writerow(summary_row(res))
    _atomic_write(path, buf.getvalue())


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="morrey-embed",
        description="Decide and quantify embeddings between weighted local Morrey-type spaces")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="scenario config file")
    parser.add_argument("--seed", type=int, default=None, help="override the search seed")
    parser.add_argument("--slack", type=float, default=None,
                        help="override the equivalence slack factor")
    parser.add_argument("--out", default="reports", help="report directory")
    parser.add_argument("--jobs", type=int, default=4, help="scenario worker pool size")
    args = parser.parse_args(argv)
    if args.command == "golden":
        return golden_suite(out_dir=args.out)
    if not args.config:
        print("a --config file is required for this command", file=sys.stderr)
        return 1
    if args.command == "audit":
        return run_audit(args.config, seed=args.seed, slack=args.slack,
                         out_dir=args.out, jobs=args.jobs)
    return run(args.config, args.command, seed=args.seed, slack=args.slack,
               out_dir=args.out, jobs=args.jobs)


if __name__ == "__main__":
    sys.exit(main())
