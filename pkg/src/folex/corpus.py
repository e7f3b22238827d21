"""Replay of the shipped example corpus.

A case is a JSON file holding ``id``, ``anchor`` (the result it exercises),
``command``, ``args`` and ``expect``.  Expected values are compared exactly
after a JSON round trip; ``{"min": m}`` accepts any number >= m.
"""
from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import reports

SCHEMA = 1


@dataclass(frozen=True)
class CorpusCase:
    id: str
    anchor: str
    command: str
    args: Dict[str, Any]
    expect: Dict[str, Any]


def default_dir() -> Path:
    return Path(str(resources.files("folex") / "corpus_data"))


def load_cases(directory: Optional[Path] = None) -> List[CorpusCase]:
    directory = default_dir() if directory is None else Path(directory)
    cases = []
    for path in sorted(directory.glob("*.json")):
        data = json.loads(path.read_text())
        for raw in data if isinstance(data, list) else [data]:
            cases.append(CorpusCase(raw["id"], raw.get("anchor", ""), raw["command"], raw.get("args", {}), raw["expect"]))
    return cases


def _matches(expected: Any, actual: Any) -> bool:
    if isinstance(expected, dict) and set(expected) == {"min"}:
        return isinstance(actual, (int, float)) and not isinstance(actual, bool) and actual >= expected["min"]
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    return expected == actual


def run_case(case: CorpusCase) -> Tuple[Dict[str, Any], float]:
    start = time.perf_counter()
    mismatches: List[str] = []
    verdict: Any = None
    if not case.anchor:
        mismatches.append("missing anchor")
    try:
        report = json.loads(json.dumps(reports.run(case.command, case.args)))
        verdict = report.get("verdict")
        for key, want in case.expect.items():
            if key not in report:
                mismatches.append(f"{key}: missing")
            elif not _matches(want, report[key]):
                mismatches.append(f"{key}: expected {json.dumps(want)}, got {json.dumps(report[key])}")
    except Exception as exc:  # a crashing case is a failing case
        mismatches.append(f"error: {type(exc).__name__}: {exc}")
    result = {"id": case.id, "anchor": case.anchor, "verdict": verdict, "ok": not mismatches, "mismatches": mismatches}
    return result, time.perf_counter() - start


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("FOLEX_THREADS", "1")))
    except ValueError:
        return 1


def run_corpus(directory: Optional[Path] = None, threads: Optional[int] = None, log=None) -> Tuple[Dict[str, Any], int]:
    """Run every case; returns (summary, exit code).  Timings go to ``log`` only."""
    log = sys.stderr if log is None else log
    cases = load_cases(directory)
    if not cases:
        print("warning: corpus is empty", file=log)
    threads = thread_count() if threads is None else threads
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(run_case, cases))
    for (r, secs) in results:
        print(f"{r['id']}: {'ok' if r['ok'] else 'FAIL'} {secs:.3f}s", file=log)
    rows = [r for r, _ in results]
    failed = sum(not r["ok"] for r in rows)
    summary = {
        "schema": SCHEMA,
        "verdict": "pass" if not failed else "fail",
        "total": len(rows),
        "passed": len(rows) - failed,
        "failed": failed,
        "cases": rows,
    }
    return summary, 1 if failed else 0
