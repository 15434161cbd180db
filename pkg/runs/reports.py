"""Deterministic CSV and JSON emitters: fixed row order, shortest round-trip floats."""

import csv
import json
import math
from pathlib import Path

import numpy as np

DENOMINATOR_COLUMNS = ['k', 'expected_delta4', 'scaled_det_mantissa', 'log_scale', 'delta5_estimate', 'resonant_flag']
GRID_COLUMNS = ['x', 'y', 'u']
SCAN_COLUMNS = ['k', 'abs_delta4', 'weighted']
GROWTH_COLUMNS = ['k', 'log_magnitude', 'degenerate']


def format_number(value):
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return repr(value)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else format_number(value)
    return value


def write_csv(path, columns, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(value) for value in row])
    return path


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + '\n', encoding='utf-8')
    return path


def denominator_rows(report):
    for row in report.rows:
        yield (row.k, row.expected_delta4, row.mantissa, row.log_scale, row.delta5_estimate, row.resonant)


def grid_rows(xs, ys, values):
    """values has shape (len(ys), len(xs)); rows run over y, then x."""
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            yield (float(x), float(y), float(values[j, i]))


def scan_rows(table):
    for k, magnitude, weighted in table:
        yield (int(k), magnitude, weighted)


def growth_rows(rows):
    for row in rows:
        yield (row.k, row.log_magnitude, row.degenerate)
