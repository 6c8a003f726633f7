# export.py
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
import pandas as pd

FLOAT_FORMAT = '%.17g'


@dataclass
class Dataset:
    """A plot-ready table plus the metadata written above it"""
    name: str
    frame: pd.DataFrame
    metadata: Dict = field(default_factory=dict)


def to_plain(value):
    """Convert numpy scalars and arrays into JSON-compatible values"""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _metadata_value(value) -> str:
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    if isinstance(value, str):
        return value
    return json.dumps(to_plain(value), sort_keys=True)


def render_csv(dataset: Dataset) -> str:
    """'#'-prefixed metadata lines followed by the table with 17 significant digits"""
    buffer = io.StringIO()
    buffer.write(f"# dataset: {dataset.name}\n")
    for key in sorted(dataset.metadata):
        buffer.write(f"# {key}: {_metadata_value(dataset.metadata[key])}\n")
    dataset.frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return buffer.getvalue()


def render_json(payload: Dict) -> str:
    return json.dumps(to_plain(payload), indent=2, sort_keys=True) + '\n'


def dataset_payload(dataset: Dataset) -> Dict:
    return {
        'dataset': dataset.name,
        'metadata': dataset.metadata,
        'columns': {name: dataset.frame[name].tolist() for name in dataset.frame.columns}
    }


def write_text(text: str, path: Optional[str]) -> None:
    """Write to path, or to stdout when no path is given"""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    except OSError as e:
        raise OSError(e.errno, f"Cannot write {path}: {e.strerror}") from e


def write_dataset(dataset: Dataset, path: Optional[str], fmt: str = 'csv') -> None:
    if fmt == 'json':
        write_text(render_json(dataset_payload(dataset)), path)
    else:
        write_text(render_csv(dataset), path)


def write_report(report: Dict, path: Optional[str]) -> None:
    write_text(render_json(report), path)
