"""Reference-file validation harness.

Each case names a dataset, an algorithm, parameters, a reference file, and a
comparison mode. References come from the brute-force oracle layer and are
serialized as "external_id value" lines sorted by external id, with the
literal string "infinity" marking unreachable vertices.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .. import algos
from ..algos import UNREACHABLE
from ..errors import MissingReferenceError
from .loader import LoadedGraph, load_dataset
from .oracles import INFINITY, generate_reference
from . import datasets

EPSILONS = {"pagerank": 1e-6, "lcc": 1e-9, "sssp": 1e-9}


@dataclass(frozen=True)
class ValidationCase:
    dataset: str
    algorithm: str
    params: dict
    reference_path: Path
    mode: str  # "exact" | "epsilon" | "equivalence-classes"
    epsilon: float = 0.0

    @property
    def name(self) -> str:
        return f"{self.dataset}/{self.algorithm}"


@dataclass
class CaseReport:
    case: ValidationCase
    passed: bool
    detail: str = ""
    elapsed_s: float = 0.0


@dataclass
class SuiteReport:
    reports: list[CaseReport] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.reports if r.passed)

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total": self.total,
            "cases": [
                {
                    "dataset": r.case.dataset,
                    "algorithm": r.case.algorithm,
                    "mode": r.case.mode,
                    "passed": r.passed,
                    "detail": r.detail,
                    "elapsed_s": round(r.elapsed_s, 4),
                }
                for r in self.reports
            ],
        }


def write_reference(path, mapping: dict[int, object]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        for ext in sorted(mapping):
            fh.write(f"{ext} {_serialize(mapping[ext])}\n")


def read_reference(path) -> dict[int, object]:
    path = Path(path)
    if not path.exists():
        raise MissingReferenceError(str(path))
    out: dict[int, object] = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            ext_str, value_str = line.split(maxsplit=1)
            out[int(ext_str)] = _parse(value_str)
    return out


def _serialize(value) -> str:
    if value == INFINITY:
        return INFINITY
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse(text: str):
    if text == INFINITY:
        return INFINITY
    try:
        return int(text)
    except ValueError:
        return float(text)


def run_algorithm(loaded: LoadedGraph, algorithm: str, params: dict) -> dict[int, object]:
    """Run a library algorithm and shape its output like a reference file."""
    view = loaded.view
    if algorithm == "pagerank":
        result = algos.page_rank(view, params.get("damping", 0.85),
                                 iterations=params.get("iterations", 20))
        values = [float(x) for x in result.values]
    elif algorithm == "bfs":
        result = algos.bfs(view, view.index_of(loaded.ext_to_internal[params["source"]]))
        values = [INFINITY if int(x) == UNREACHABLE else int(x) for x in result.values]
    elif algorithm == "sssp":
        result = algos.sssp_dijkstra(view, view.index_of(loaded.ext_to_internal[params["source"]]))
        values = [INFINITY if math.isinf(x) else float(x) for x in result.values]
    elif algorithm == "wcc":
        values = [int(x) for x in algos.wcc(view).values]
    elif algorithm == "scc":
        values = [int(x) for x in algos.scc(view).values]
    elif algorithm == "cdlp":
        values = [int(x) for x in algos.cdlp(view, params.get("iterations", 10)).values]
    elif algorithm == "lcc":
        values = [float(x) for x in algos.lcc(view).values]
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    # view indices -> store ids -> external ids
    return {loaded.external_id(int(view.id_map[v])): values[v] for v in range(view.vertex_count)}


def validate(case: ValidationCase, output: dict[int, object]) -> CaseReport:
    """Compare algorithm output against the case's reference file."""
    reference = read_reference(case.reference_path)
    if set(reference) != set(output):
        return CaseReport(case, False, "vertex sets differ")
    if case.mode == "exact":
        for ext in reference:
            if reference[ext] != output[ext]:
                return CaseReport(case, False, f"vertex {ext}: {output[ext]!r} != {reference[ext]!r}")
        return CaseReport(case, True)
    if case.mode == "epsilon":
        for ext in reference:
            want, got = reference[ext], output[ext]
            if want == INFINITY or got == INFINITY:
                if want != got:
                    return CaseReport(case, False, f"vertex {ext}: infinity mismatch")
                continue
            if abs(float(want) - float(got)) > case.epsilon:
                return CaseReport(case, False,
                                  f"vertex {ext}: |{got} - {want}| > {case.epsilon}")
        return CaseReport(case, True)
    if case.mode == "equivalence-classes":
        fwd: dict[object, object] = {}
        rev: dict[object, object] = {}
        for ext in reference:
            want, got = reference[ext], output[ext]
            if fwd.setdefault(want, got) != got or rev.setdefault(got, want) != want:
                return CaseReport(case, False, f"partition mismatch at vertex {ext}")
        return CaseReport(case, True)
    raise ValueError(f"unknown comparison mode {case.mode!r}")


# --- suite assembly -----------------------------------------------------------

_ALGO_MODES = {
    "bfs": "exact",
    "pagerank": "epsilon",
    "wcc": "equivalence-classes",
    "cdlp": "equivalence-classes",
    "lcc": "epsilon",
    "sssp": "epsilon",
}

_DATASETS = (
    # name, builder kwargs, weighted
    ("er-1k", {"n": 1000, "avg_degree": 8.0, "seed": 101}, False),
    ("er-10k", {"n": 10_000, "avg_degree": 8.0, "seed": 103}, False),
    ("er-1k-w", {"n": 1000, "avg_degree": 8.0, "seed": 107, "weighted": True}, True),
    ("pp-1k", {"n": 1000, "seed": 109}, False),
)


def materialize_datasets(workdir) -> dict[str, tuple[Path, Path, bool]]:
    """Write the four desk-scale datasets; returns name -> (v, e, weighted)."""
    workdir = Path(workdir)
    out = {}
    for name, kwargs, weighted in _DATASETS:
        if name == "pp-1k":
            v, e = datasets.write_planted_partition_dataset(workdir, name, **kwargs)
        else:
            v, e = datasets.write_er_dataset(workdir, name, **kwargs)
        out[name] = (v, e, weighted)
    return out


def default_cases(workdir) -> list[ValidationCase]:
    workdir = Path(workdir)
    cases = []
    for name, _, weighted in _DATASETS:
        for algorithm, mode in _ALGO_MODES.items():
            params: dict = {}
            if algorithm == "pagerank":
                params = {"damping": 0.85, "iterations": 20}
            elif algorithm in ("bfs", "sssp"):
                params = {"source": 1}  # external id of the first vertex
            elif algorithm == "cdlp":
                params = {"iterations": 10}
            cases.append(ValidationCase(
                dataset=name,
                algorithm=algorithm,
                params=params,
                reference_path=workdir / "refs" / f"{name}-{algorithm}.ref",
                mode=mode,
                epsilon=EPSILONS.get(algorithm, 0.0),
            ))
    return cases


def run_validation_suite(workdir, cases: Optional[list[ValidationCase]] = None) -> SuiteReport:
    """Build datasets and references as needed, then validate every case."""
    workdir = Path(workdir)
    files = materialize_datasets(workdir)
    cases = cases if cases is not None else default_cases(workdir)

    loaded_cache: dict[str, LoadedGraph] = {}
    report = SuiteReport()
    for case in cases:
        start = time.perf_counter()
        v, e, weighted = files[case.dataset]
        loaded = loaded_cache.get(case.dataset)
        if loaded is None:
            loaded = loaded_cache[case.dataset] = load_dataset(v, e, weighted=weighted)
        if not case.reference_path.exists():
            reference = generate_reference(loaded.view, case.algorithm, _oracle_params(loaded, case))
            write_reference(case.reference_path,
                            {loaded.external_id(k): val for k, val in reference.items()})
        output = run_algorithm(loaded, case.algorithm, case.params)
        result = validate(case, output)
        result.elapsed_s = time.perf_counter() - start
        report.reports.append(result)
    return report


def _oracle_params(loaded: LoadedGraph, case: ValidationCase) -> dict:
    params = dict(case.params)
    if "source" in params:
        params["source"] = loaded.ext_to_internal[params["source"]]
    return params
