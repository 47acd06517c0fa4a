# qadc/core/reports.py

"""
Run reports written by every subcommand.

A report carries the command, the SHA-256 digest of its canonical inputs, the seeds used, the
library version, the generator name and the results payload. It has no timestamps, so
identical inputs give identical bytes.
"""

import sys
from dataclasses import dataclass, field
from typing import Any

from qadc.quantum.sampling import GENERATOR_NAME
from qadc.quantum.serialization import canonical_json, digest, write_text
from qadc.utils.metadata import read_version


@dataclass(frozen=True)
class RunReport:
    command: str
    inputs_digest: str
    results: dict[str, Any]
    seeds: list[int] = field(default_factory=list)
    library_version: str = ""
    generator: str = GENERATOR_NAME

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "seeds": list(self.seeds),
            "library_version": self.library_version,
            "generator": self.generator,
            "results": self.results,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def make_report(
    command: str, inputs: dict[str, Any], results: dict[str, Any], seeds: list[int] | None = None
) -> RunReport:
    """Build a report, digesting `inputs` (documents and parameters) canonically."""
    return RunReport(
        command=command,
        inputs_digest=digest({"command": command, **inputs}),
        results=results,
        seeds=[int(s) for s in seeds or []],
        library_version=read_version(),
    )


def emit_report(report: RunReport, out: str | None) -> None:
    """
    Write the report to `out`, or to stdout when no path is given.

    Raises:
        ModelFileError: If the output file cannot be written.
    """
    text = report.to_json()
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
