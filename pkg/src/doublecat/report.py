"""Check reporting: PASS/FAIL lines, machine records, CSV and summary figures."""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class CheckResult:
    name: str
    group: str
    passed: bool
    detail: str = ""
    duration: float = 0.0


@dataclass
class Reporter:
    """Collects per-law results and renders them as text, records, or files."""

    results: list = field(default_factory=list)

    def add(self, group, name, passed, detail=""):
        self.results.append(CheckResult(name, group, bool(passed), detail))
        return passed

    def timed(self, group, name, fn, detail_fn=None):
        start = time.perf_counter()
        value = fn()
        duration = time.perf_counter() - start
        passed = bool(value)
        detail = detail_fn(value) if detail_fn else ""
        self.results.append(CheckResult(name, group, passed, detail, duration))
        return value

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def counts(self):
        passed = sum(1 for r in self.results if r.passed)
        return passed, len(self.results) - passed

    def emit(self, fmt="text", stream=None):
        import sys
        stream = stream or sys.stdout
        if fmt == "machine":
            for r in self.results:
                record = {"check": r.name, "group": r.group,
                          "status": "PASS" if r.passed else "FAIL",
                          "detail": r.detail,
                          "duration_s": round(r.duration, 6)}
                stream.write(json.dumps(record, sort_keys=True) + "\n")
            return
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            detail = f" ({r.detail})" if r.detail else ""
            stream.write(f"{status} {r.group}: {r.name}{detail}\n")
        passed, failed = self.counts()
        stream.write(f"-- {passed} passed, {failed} failed\n")

    def write_report(self, directory):
        """Delimited results plus matplotlib summary figures."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        csv_path = directory / "results.csv"
        with open(csv_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["group", "check", "status", "detail",
                             "duration_s"])
            for r in self.results:
                writer.writerow([r.group, r.name,
                                 "PASS" if r.passed else "FAIL", r.detail,
                                 f"{r.duration:.6f}"])
        figures = [self._status_figure(directory), self._duration_figure(directory)]
        return [csv_path] + [f for f in figures if f is not None]

    def _groups(self):
        order = []
        for r in self.results:
            if r.group not in order:
                order.append(r.group)
        return order

    def _status_figure(self, directory):
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        groups = self._groups()
        if not groups:
            return None
        passed = [sum(1 for r in self.results if r.group == g and r.passed)
                  for g in groups]
        failed = [sum(1 for r in self.results if r.group == g and not r.passed)
                  for g in groups]
        fig, ax = plt.subplots(figsize=(8, max(2.5, 0.5 * len(groups))))
        ypos = range(len(groups))
        ax.barh(ypos, passed, color="#2a9d8f", label="pass")
        ax.barh(ypos, failed, left=passed, color="#e76f51", label="fail")
        ax.set_yticks(list(ypos))
        ax.set_yticklabels(groups)
        ax.invert_yaxis()
        ax.set_xlabel("checks")
        ax.set_title("verified laws by group")
        ax.legend(loc="lower right")
        fig.tight_layout()
        path = Path(directory) / "status.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        return path

    def _duration_figure(self, directory):
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        groups = self._groups()
        if not groups:
            return None
        totals = [sum(r.duration for r in self.results if r.group == g)
                  for g in groups]
        if not any(totals):
            return None
        fig, ax = plt.subplots(figsize=(8, max(2.5, 0.5 * len(groups))))
        ypos = range(len(groups))
        ax.barh(ypos, totals, color="#457b9d")
        ax.set_yticks(list(ypos))
        ax.set_yticklabels(groups)
        ax.invert_yaxis()
        ax.set_xlabel("seconds")
        ax.set_title("check runtime by group")
        fig.tight_layout()
        path = Path(directory) / "durations.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        return path
