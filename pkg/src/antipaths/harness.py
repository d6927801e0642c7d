"""Campaign orchestration: configs, trial workers, and record streams.

A run is a list of trials, each producing one JSON-serializable record dict.
Trials draw their own sub-seed from (master seed, trial index) via SHA-256,
so a run is bit-reproducible for a given config regardless of how trials are
distributed over worker processes; records are merged back in trial order.

Record streams deliberately contain no wall-clock data (timing goes to the
stderr summary instead) so that repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable

from . import constructions as cons
from . import oracle
from .graphs import OrientedGraph, graph_hash, read_edge_list, to_dot
from .rotation import DEFAULT_CLOSURE_CAP, audit_maximality, build_state, improve
from .witnesses import validate_antipath, witness_arcs

EXHAUSTIVE_VERTEX_CAP = 5


class ConfigError(ValueError):
    """Bad or incomplete run parameters; maps to exit code 2."""


_CONSTRUCTION_PARAMS = {
    "cycle-blowup": {"ell", "b"},
    "random": {"p"},
    "random-min-pd": {"d"},
}


def parse_construction(text: str) -> tuple[str, dict]:
    """Parse "name" or "name:key=value,key=value" into (name, params)."""
    name, _, rest = text.partition(":")
    if name not in _CONSTRUCTION_PARAMS:
        raise ConfigError(
            f"unknown construction {name!r}; known: {sorted(_CONSTRUCTION_PARAMS)}"
        )
    params: dict = {}
    if rest:
        for item in rest.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                raise ConfigError(f"construction parameter {item!r} is not key=value")
            try:
                params[key] = float(val) if "." in val else int(val)
            except ValueError:
                raise ConfigError(f"construction parameter {item!r} is not numeric") from None
    missing = _CONSTRUCTION_PARAMS[name] - params.keys()
    if missing:
        raise ConfigError(f"construction {name!r} missing parameters {sorted(missing)}")
    return name, params


def build_construction(name: str, params: dict, n: int, seed: int) -> OrientedGraph:
    if name == "cycle-blowup":
        return cons.cycle_blowup(int(params["ell"]), int(params["b"]))
    if name == "random":
        return cons.random_oriented_graph(n, float(params["p"]), seed)
    if name == "random-min-pd":
        return cons.random_with_min_pd(n, int(params["d"]), seed)
    raise ConfigError(f"unknown construction {name!r}")


@dataclass
class ExperimentConfig:
    mode: str
    k: int | None = None
    n: int | None = None
    samples: int | None = None
    seed: int = 0
    k_min: int = 4
    k_max: int = 10
    construction: str | None = None
    input_path: str | None = None
    output_format: str = "json"
    output_path: str | None = None
    dot_path: str | None = None
    jobs: int = 1
    closure_cap: int | None = None

    def validate(self) -> None:
        if self.closure_cap is None:
            # the audit never consumes the achievable-endpoint sets, so its
            # states default to a small closure budget; truncation is recorded
            self.closure_cap = 4096 if self.mode == "audit" else DEFAULT_CLOSURE_CAP
        if self.closure_cap < 1:
            raise ConfigError(f"closure cap must be >= 1, got {self.closure_cap}")
        if self.mode not in ("verify-theorem", "tightness", "exhaustive-lemmas", "audit", "search"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.output_format!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.mode in ("verify-theorem", "audit"):
            if self.k is None or self.k < 4:
                raise ConfigError(f"{self.mode} needs k >= 4, got {self.k}")
            if self.n is None:
                self.n = 2 * self.k + 2
            if self.n <= self.k:
                raise ConfigError(f"need n >= k+1, got n={self.n} k={self.k}")
            if self.samples is None:
                self.samples = 1000 if self.mode == "verify-theorem" else 500
            if self.samples < 1:
                raise ConfigError(f"samples must be >= 1, got {self.samples}")
            needs_floor = self.mode == "verify-theorem" or self.construction is None
            if needs_floor:
                d = cons.integer_threshold(self.k)
                if self.n < 2 * d + 1:
                    raise ConfigError(
                        f"degree floor {d} needs n >= {2 * d + 1}, got n={self.n}"
                    )
            if self.construction is not None:
                if self.mode == "verify-theorem":
                    raise ConfigError("verify-theorem always samples at the degree floor")
                parse_construction(self.construction)
        elif self.mode == "tightness":
            if self.k is None or self.k < 4 or self.k % 2 != 0:
                raise ConfigError(f"tightness needs even k >= 4, got {self.k}")
        elif self.mode == "exhaustive-lemmas":
            if self.n is None or self.n < 0:
                raise ConfigError(f"exhaustive-lemmas needs n >= 0, got {self.n}")
            if self.n > EXHAUSTIVE_VERTEX_CAP:
                raise ConfigError(
                    f"n={self.n} exceeds the exhaustive cap {EXHAUSTIVE_VERTEX_CAP}"
                )
            if not 1 <= self.k_min <= self.k_max:
                raise ConfigError(f"need 1 <= k_min <= k_max, got {self.k_min}..{self.k_max}")
        elif self.mode == "search":
            if self.input_path is None:
                raise ConfigError("search needs an edge-list input file")

    def echo(self) -> dict:
        """The science-relevant parameters, echoed into every record.

        Output routing and worker count are excluded on purpose: they must
        not change record bytes.
        """
        out = {"mode": self.mode, "seed": self.seed}
        if self.mode in ("verify-theorem", "audit"):
            out.update(k=self.k, n=self.n, samples=self.samples)
            if self.construction:
                out["construction"] = self.construction
        elif self.mode == "tightness":
            out.update(k=self.k)
        elif self.mode == "exhaustive-lemmas":
            out.update(n=self.n, k_min=self.k_min, k_max=self.k_max)
        elif self.mode == "search":
            out.update(input=self.input_path)
        return out


def derive_seed(master: int, index: int) -> int:
    """Per-trial sub-seed: first 8 bytes of SHA-256 over "master:index"."""
    digest = hashlib.sha256(f"{master}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _graph_fields(g: OrientedGraph) -> dict:
    return {
        "hash": graph_hash(g),
        "n": g.n,
        "arc_count": g.arc_count,
        "arcs": [[u, v] for u, v in g.arcs()],
    }


# ---------------------------------------------------------------------------
# trial workers (top level so they pickle for process pools)


def _verify_trial(params: dict, trial: int) -> dict:
    k, n = params["k"], params["n"]
    sub = derive_seed(params["seed"], trial)
    g = cons.random_with_min_pd(n, params["floor"], sub)
    prof = g.degree_profile()
    if k % 2 == 1:
        shapes = [("any", None)]
    else:
        shapes = [("+", True), ("-", False)]
    results = []
    ok = True
    for label, flag in shapes:
        wit = oracle.contains_antipath_of_length(g, k, flag)
        results.append(
            {
                "start": label,
                "found": wit is not None,
                "witness": wit.serialize() if wit else None,
            }
        )
        if wit is None:
            ok = False
    return {
        "config": params["echo"],
        "mode": "verify-theorem",
        "trial": trial,
        "sub_seed": sub,
        "graph": _graph_fields(g),
        "pd": prof.min_pseudo_semidegree,
        "delta": prof.min_semidegree,
        "k": k,
        "shapes": results,
        "ok": ok,
    }


def _tightness_record(cfg: ExperimentConfig) -> dict:
    k = cfg.k
    assert k is not None
    g = cons.cycle_blowup(3, k // 2)
    prof = g.degree_profile()
    longest = oracle.longest_antipath(g)
    assert longest is not None
    ok = prof.min_pseudo_semidegree == k // 2 and longest.length == k - 1
    return {
        "config": cfg.echo(),
        "mode": "tightness",
        "trial": 0,
        "sub_seed": None,
        "graph": _graph_fields(g),
        "pd": prof.min_pseudo_semidegree,
        "delta": prof.min_semidegree,
        "k": k,
        "longest_len": longest.length,
        "witness": longest.serialize(),
        "checks": {"expected_pd": k // 2, "expected_longest": k - 1},
        "ok": ok,
    }


def _exhaustive_trial(params: dict, code: int) -> dict:
    n = params["n"]
    g = oracle.graph_from_code(n, code)
    prof = g.degree_profile()
    pd = prof.min_pseudo_semidegree
    m, traversals = oracle.all_longest_antipaths(g)
    cycle_lengths = sorted(oracle.anticycle_lengths(g))

    # best off-path slack over forward-first longest traversals: the larger of
    # (in-neighbors of the second vertex outside the path) and (out-neighbors
    # of the penultimate vertex outside the path)
    slack = None
    for t in traversals:
        if not g.has_arc(t[0], t[1]):
            continue
        on_path = set(t)
        side = max(
            len(g.in_neighbors(t[1]) - on_path),
            len(g.out_neighbors(t[-2]) - on_path),
        )
        slack = side if slack is None else max(slack, side)

    violations = []
    for k in range(params["k_min"], params["k_max"] + 1):
        weak = 2 * pd >= k  # positive-degree floor at least k/2
        strong = 2 * pd > k
        if weak and m < k and m % 2 == 0:
            violations.append({"k": k, "check": "parity", "longest": m})
        if strong:
            for c in cycle_lengths:
                if c <= k and c > m:
                    violations.append(
                        {"k": k, "check": "cycle_promotion", "cycle_length": c}
                    )
        if weak and m < k:
            # some longest path must leave the required slack at an endpoint
            if slack is None or 2 * slack < 2 * pd - k:
                violations.append(
                    {"k": k, "check": "endpoint_slack", "slack": slack}
                )
    return {
        "config": params["echo"],
        "mode": "exhaustive-lemmas",
        "trial": code,
        "sub_seed": None,
        "graph": _graph_fields(g),
        "pd": pd,
        "delta": prof.min_semidegree,
        "longest_len": m,
        "anticycle_lengths": cycle_lengths,
        "violations": violations,
        "ok": not violations,
    }


def _audit_trial(params: dict, trial: int) -> dict:
    k, n = params["k"], params["n"]
    sub = derive_seed(params["seed"], trial)
    if params["construction"] is not None:
        name, cparams = params["construction"]
        g = build_construction(name, cparams, n, sub)
    else:
        g = cons.random_with_min_pd(n, params["floor"], sub)
    prof = g.degree_profile()
    pd = prof.min_pseudo_semidegree
    longest = oracle.longest_antipath(g)
    ok = True
    checks: dict = {}
    audit_dict = None
    m = None
    if longest is not None:
        m = longest.length
        if m % 2 == 1:
            st = build_state(g, longest, closure_cap=params["closure_cap"])
            report = audit_maximality(st, k)
            audit_dict = report.to_json_dict()
            audit_dict["closure_size"] = st.closure_size
            audit_dict["closure_truncated"] = st.closure_truncated
            if report.extension_openings:
                # an opening on an exact-search longest path is impossible
                ok = False
        else:
            checks["audit_skipped"] = "even-length longest path"
    short = pd >= params["floor"] and (m is None or m < k)
    checks["below_target_length"] = short
    if short:
        ok = False
    return {
        "config": params["echo"],
        "mode": "audit",
        "trial": trial,
        "sub_seed": sub,
        "graph": _graph_fields(g),
        "pd": pd,
        "delta": prof.min_semidegree,
        "k": k,
        "longest_len": m,
        "witness": longest.serialize() if longest else None,
        "audit": audit_dict,
        "checks": checks,
        "ok": ok,
    }


def _search_record(cfg: ExperimentConfig) -> dict:
    assert cfg.input_path is not None
    g = read_edge_list(cfg.input_path)
    prof = g.degree_profile()
    longest = oracle.longest_antipath(g)
    heuristic = None
    if longest is not None:
        arcs = g.arcs()
        seed_path = validate_antipath(g, arcs[0])
        heuristic = improve(g, seed_path, closure_cap=cfg.closure_cap)
    if cfg.dot_path:
        highlight = witness_arcs(g, longest) if longest else []
        with open(cfg.dot_path, "w", encoding="utf-8") as fh:
            fh.write(to_dot(g, highlight))
    return {
        "config": cfg.echo(),
        "mode": "search",
        "trial": 0,
        "sub_seed": None,
        "graph": _graph_fields(g),
        "pd": prof.min_pseudo_semidegree,
        "delta": prof.min_semidegree,
        "longest_len": longest.length if longest else None,
        "witness": longest.serialize() if longest else None,
        "heuristic_len": heuristic.length if heuristic else None,
        "heuristic_witness": heuristic.serialize() if heuristic else None,
        "agreement": (heuristic.length == longest.length) if longest else None,
        "ok": heuristic.length <= longest.length if longest else True,
    }


# ---------------------------------------------------------------------------
# runners


def _map_trials(
    worker: Callable[[dict, int], dict], params: dict, count: int, jobs: int
) -> list[dict]:
    """Run trials 0..count-1, merged back in trial order."""
    if jobs <= 1 or count <= 1:
        return [worker(params, t) for t in range(count)]
    chunk = max(1, count // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(partial(worker, params), range(count), chunksize=chunk))


def run_verify_theorem(cfg: ExperimentConfig) -> list[dict]:
    params = {
        "k": cfg.k,
        "n": cfg.n,
        "seed": cfg.seed,
        "floor": cons.integer_threshold(cfg.k),
        "echo": cfg.echo(),
    }
    return _map_trials(_verify_trial, params, cfg.samples, cfg.jobs)


def run_tightness(cfg: ExperimentConfig) -> list[dict]:
    return [_tightness_record(cfg)]


def run_exhaustive_lemmas(cfg: ExperimentConfig) -> list[dict]:
    params = {
        "n": cfg.n,
        "k_min": cfg.k_min,
        "k_max": cfg.k_max,
        "echo": cfg.echo(),
    }
    total = oracle.count_oriented_graphs(cfg.n)
    return _map_trials(_exhaustive_trial, params, total, cfg.jobs)


def run_audit(cfg: ExperimentConfig) -> list[dict]:
    params = {
        "k": cfg.k,
        "n": cfg.n,
        "seed": cfg.seed,
        "floor": cons.integer_threshold(cfg.k),
        "construction": parse_construction(cfg.construction) if cfg.construction else None,
        "closure_cap": cfg.closure_cap,
        "echo": cfg.echo(),
    }
    return _map_trials(_audit_trial, params, cfg.samples, cfg.jobs)


def run_search(cfg: ExperimentConfig) -> list[dict]:
    return [_search_record(cfg)]


_RUNNERS = {
    "verify-theorem": run_verify_theorem,
    "tightness": run_tightness,
    "exhaustive-lemmas": run_exhaustive_lemmas,
    "audit": run_audit,
    "search": run_search,
}


def run(cfg: ExperimentConfig) -> list[dict]:
    cfg.validate()
    return _RUNNERS[cfg.mode](cfg)


# ---------------------------------------------------------------------------
# record serialization


def records_to_json_lines(records: Iterable[dict]) -> str:
    return "".join(
        json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records
    )


def records_to_csv(records: list[dict]) -> str:
    """Same data as the JSON stream; every cell is compact JSON."""
    if not records:
        return ""
    columns = sorted({key for r in records for key in r})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow(
            [json.dumps(r.get(c), sort_keys=True, separators=(",", ":")) for c in columns]
        )
    return buf.getvalue()


def records_from_csv(text: str) -> list[dict]:
    """Inverse of records_to_csv, for the format-parity contract."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    header = rows[0]
    return [{c: json.loads(cell) for c, cell in zip(header, row)} for row in rows[1:]]


def serialize_records(records: list[dict], output_format: str) -> str:
    if output_format == "csv":
        return records_to_csv(records)
    return records_to_json_lines(records)


def execute(cfg: ExperimentConfig, stderr=None) -> int:
    """Run, write the stream, print a summary; exit-code semantics.

    Returns 0 when every record is ok, 1 otherwise. Config and parse
    problems raise (ConfigError, EdgeListParseError) for the CLI to map to
    exit code 2.
    """
    stderr = stderr if stderr is not None else sys.stderr
    started = time.monotonic()
    records = run(cfg)
    text = serialize_records(records, cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failures = sum(1 for r in records if not r["ok"])
    elapsed = time.monotonic() - started
    print(
        f"{cfg.mode}: {len(records)} records, {failures} failures, {elapsed:.1f}s",
        file=stderr,
    )
    return 0 if failures == 0 else 1
