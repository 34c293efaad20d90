"""Lossless persistent record files.

Format: JSON lines.  The first line is a header object; each following line
is one (eigenvalue, self-overlap) record.  All floating-point fields are
serialized as hex-float strings, so write -> read -> write round-trips
byte-identically at full double precision while staying human-inspectable.
"""

import json

import numpy as np

from .errors import DomainError
from .mc import RECORD_DTYPE, CampaignResult

__all__ = ["FORMAT_NAME", "FORMAT_VERSION", "write_records", "read_records"]

FORMAT_NAME = "ginibre-overlaps-records"
FORMAT_VERSION = 1
GENERATOR_ID = "philox128-keyed/eig-inv"


def _header_from_summary(summary):
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "ensemble": summary["kind"],
        "n": int(summary["n"]),
        "master_seed": int(summary["master_seed"]),
        "samples": int(summary["samples"]),
        "rejected": int(summary["rejected"]),
        "generator": GENERATOR_ID,
    }


def write_records(path, result_or_summary, records=None):
    """Write a campaign (or a (summary, records) pair) to a JSONL file."""
    if isinstance(result_or_summary, CampaignResult):
        summary = result_or_summary.summary
        records = result_or_summary.records
    else:
        summary = result_or_summary
        if records is None:
            raise DomainError("write_records needs records when given a bare summary")
    header = _header_from_summary(summary)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for rec in records:
            row = {
                "s": int(rec["sample_index"]),
                "e": int(rec["eigen_index"]),
                "re": float(rec["z"].real).hex(),
                "im": float(rec["z"].imag).hex(),
                "o": float(rec["overlap"]).hex(),
                "r": int(bool(rec["is_real"])),
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def read_records(path):
    """Read a JSONL record file; returns ``(header, records)``.

    Validates the format marker and the header sample accounting: the number
    of distinct sample indices present must equal samples - rejected.
    """
    with open(path, "r", encoding="ascii") as fh:
        first = fh.readline()
        if not first:
            raise DomainError(f"{path}: empty record file")
        header = json.loads(first)
        if header.get("format") != FORMAT_NAME:
            raise DomainError(f"{path}: not a {FORMAT_NAME} file")
        if header.get("version") != FORMAT_VERSION:
            raise DomainError(f"{path}: unsupported format version {header.get('version')}")
        rows = [json.loads(line) for line in fh if line.strip()]
    records = np.empty(len(rows), dtype=RECORD_DTYPE)
    for i, row in enumerate(rows):
        records[i] = (complex(float.fromhex(row["re"]), float.fromhex(row["im"])),
                      float.fromhex(row["o"]), bool(row["r"]), row["s"], row["e"])
    expected = header["samples"] - header["rejected"]
    present = len(np.unique(records["sample_index"])) if records.size else 0
    if present != expected:
        raise DomainError(
            f"{path}: header claims {expected} surviving samples, file has {present}")
    return header, records
