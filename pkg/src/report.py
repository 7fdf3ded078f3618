#!/usr/bin/env python3
"""
CSV Report Writer

One block per run: the resolved config echoed as ``# `` lines, ``# ;``
comment lines with the bracket and right-hand-side labels, a column header and
one row per grid point. Numbers are written with 17 significant digits in
scientific notation and nothing time-dependent is written, so identical
configs produce byte-identical files.
"""

import csv
from typing import IO, List, Optional, Sequence

import numpy as np

from .dynamics.validation import CrossValidationReport
from .errors import ConfigError
from .opcore import expectation
from .reps import FockRep
from .run_config import ECHO_PREFIX, RunConfig


def format_number(value: float, digits: int = 17) -> str:
    return f"{float(value):.{digits - 1}e}"


def initial_state(report: CrossValidationReport, config: RunConfig) -> Optional[np.ndarray]:
    """Basis vector or coherent-like seed for the expectation columns; None for value-vector scenarios"""
    rep = report.representation
    if rep is None or not hasattr(rep, "dim"):
        return None
    if config.observables.state == "coherent":
        if not isinstance(rep, FockRep):
            raise ConfigError("the coherent seed state only exists for q_oscillator")
        return rep.coherent_seed(config.observables.z)
    state = np.zeros(rep.dim, dtype=complex)
    state[config.observables.index] = 1.0
    return state


def _value(entry, state: Optional[np.ndarray]) -> complex:
    if state is None or np.ndim(entry) == 0:
        return complex(entry)
    return expectation(state, entry)


def _dynamics_table(report: CrossValidationReport, config: RunConfig, digits: int):
    state = initial_state(report, config)
    names = [name for name in config.observables.names if name in report.results]
    reference = report.reference_engine
    header: List[str] = ["t"]
    columns: List[List[str]] = []

    for name in names:
        for engine in report.engines:
            result = report.results[name].get(engine)
            if result is None:
                continue
            values = [_value(entry, state) for entry in result.values]
            header += [f"{name}_{engine}_re", f"{name}_{engine}_im"]
            columns.append([format_number(v.real, digits) for v in values])
            columns.append([format_number(v.imag, digits) for v in values])

    for name in names:
        for engine in report.engines:
            if engine == reference or engine not in report.results[name]:
                continue
            comparison = report.comparison(name, reference, engine)
            if comparison is None:
                continue
            header.append(f"dev_{name}_{engine}")
            columns.append([format_number(d, digits) for d in comparison.deviations])

    for key in sorted(report.constants):
        header.append(key)
        columns.append([format_number(report.constants[key], digits)] * len(report.times))
    return header, columns


def _poly_table(report: CrossValidationReport, digits: int):
    header: List[str] = ["t"]
    columns: List[List[str]] = []
    if not report.poly:
        return header, columns
    for n, m in sorted(report.poly[0].integrals):
        label = f"{n}{m}"
        header += [f"integral_{label}_re", f"integral_{label}_im"]
        columns.append([format_number(entry.integrals[(n, m)].real, digits) for entry in report.poly])
        columns.append([format_number(entry.integrals[(n, m)].imag, digits) for entry in report.poly])
    for n, m in sorted(report.poly[0].exponential):
        label = f"{n}{m}"
        for prefix, attribute in (("exp", "exponential"), ("first", "first_order")):
            header += [f"{prefix}_{label}_re", f"{prefix}_{label}_im"]
            columns.append([format_number(getattr(entry, attribute)[(n, m)].real, digits) for entry in report.poly])
            columns.append([format_number(getattr(entry, attribute)[(n, m)].imag, digits) for entry in report.poly])
        header.append(f"diff_{label}")
        columns.append([format_number(entry.difference[(n, m)], digits) for entry in report.poly])
        header.append(f"mismatch_{label}")
        columns.append([format_number(entry.coefficient_mismatch[(n, m)], digits) for entry in report.poly])
    return header, columns


def comment_lines(report: CrossValidationReport) -> List[str]:
    lines = [
        f"{ECHO_PREFIX}; bracket = {report.bracket}",
        f"{ECHO_PREFIX}; rhs_mode = {report.rhs_mode}",
        f"{ECHO_PREFIX}; engines = {', '.join(report.engines)}",
    ]
    lines += [f"{ECHO_PREFIX}; note = {note}" for note in report.notes]
    lines += [f"{ECHO_PREFIX}; defect {d.relation} = interior {d.interior:.3e}, full {d.full:.3e}"
              for d in report.defects]
    return lines


def write_block(stream: IO[str], report: CrossValidationReport, config: RunConfig, digits: int = 17):
    """Write one CSV block (echo, comments, header, rows)"""
    for line in config.echo_lines() + comment_lines(report):
        stream.write(line + "\n")
    if report.scenario.name == "poly_dynamics":
        header, columns = _poly_table(report, digits)
    else:
        header, columns = _dynamics_table(report, config, digits)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for i, t in enumerate(report.times):
        writer.writerow([format_number(t, digits)] + [column[i] for column in columns])


def write_warning_block(stream: IO[str], config: RunConfig, message: str):
    """Echo plus a warning row for a sweep point that was skipped"""
    for line in config.echo_lines():
        stream.write(line + "\n")
    stream.write(f"{ECHO_PREFIX}; warning = {message}\n")


def write_blocks(stream: IO[str], blocks: Sequence, digits: int = 17):
    """
    Write sweep blocks separated by a blank line.

    Each entry is (config, report) or (config, warning message).
    """
    for position, (config, outcome) in enumerate(blocks):
        if position:
            stream.write("\n")
        if isinstance(outcome, str):
            write_warning_block(stream, config, outcome)
        else:
            write_block(stream, outcome, config, digits)
