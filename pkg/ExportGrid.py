"""
ExportGrid.py
Write field grids, contour samples and reports as CSV / JSON
Last updated: 2026-10-19

OUTPUT:
    <name>.csv   one row per grid point, columns
                     x, t      grid coordinates
                     re_q, im_q, abs_q
                     re_s, im_s   (blank for RST-NLS, which has no s)
    <name>.json  sidecar with run metadata (parameters, grid, generation
                 time, package versions)

    Data files carry no timestamp, so identical inputs give identical CSV
    bytes.  Complex numbers are two real columns in CSV and [re, im] pairs
    in JSON.
"""

import json
import logging
import os
from datetime import datetime
from enum import Enum

import numpy as np
import pandas as pd
import scipy

import Config
from Parallel import parallel_map

logger = logging.getLogger(__name__)

GRID_COLUMNS = ['x', 't', 're_q', 'im_q', 'abs_q', 're_s', 'im_s']


# =============================================================================
# FRAMES
# =============================================================================

def field_frame(xs, ts, q, s=None):
    """Flatten q (and s) sampled on ts × xs into the grid table.

    Args:
        xs, ts: 1-D axes
        q: complex array of shape (len(ts), len(xs)); NaN at poles
        s: same shape, or None to leave the s columns blank
    """
    xs = np.asarray(xs, dtype=float)
    ts = np.asarray(ts, dtype=float)
    X, T = np.meshgrid(xs, ts)
    q = np.asarray(q, dtype=complex).reshape(X.shape)
    if s is None:
        re_s = im_s = np.full(X.size, np.nan)
    else:
        s = np.asarray(s, dtype=complex).reshape(X.shape)
        re_s, im_s = s.real.ravel(), s.imag.ravel()
    return pd.DataFrame({
        'x': X.ravel(),
        't': T.ravel(),
        're_q': q.real.ravel(),
        'im_q': q.imag.ravel(),
        'abs_q': np.abs(q).ravel(),
        're_s': re_s,
        'im_s': im_s,
    }, columns=GRID_COLUMNS)


def solution_frame(sol, grid, with_s=True):
    """Sample a FieldSolution onto a Verify.Grid.

    s comes from the closed form when the family has one, otherwise from
    row-wise quadrature of its definition.  RST-NLS rows leave s blank.
    """
    from Verify import s_row

    X, T = grid.mesh()
    q = sol.q(X, T)
    s = None
    if with_s and sol.is_gordon:
        if sol.eval_s is not None:
            s = sol.s(X, T)
        else:
            xs = grid.xs()
            s = np.array(parallel_map(lambda t: s_row(sol, xs, t), list(grid.ts())))
    return field_frame(grid.xs(), grid.ts(), q, s)


# =============================================================================
# METADATA
# =============================================================================

def _complex_pair(value):
    value = complex(value)
    return [value.real, value.imag]


def jsonable(value):
    """Recursively convert numpy scalars, arrays and complex values for json.dump."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return _complex_pair(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Enum):
        return value.value
    return value


def run_metadata(**fields):
    """Sidecar contents: caller fields plus generation time and versions."""
    meta = dict(fields)
    meta['generated'] = datetime.now().strftime('%Y-%m-%d %H:%M:%S')
    meta['versions'] = {
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
    }
    return jsonable(meta)


def sidecar_path(path):
    root, _ = os.path.splitext(path)
    return f"{root}.json"


# =============================================================================
# WRITERS
# =============================================================================

def write_grid_csv(frame, path, metadata=None):
    """CSV with a fixed float format plus a sidecar JSON.

    Returns:
        (csv_path, sidecar_path or None)
    """
    frame.to_csv(path, index=False, float_format=Config.CSV_FLOAT_FORMAT, na_rep='')
    side = None
    if metadata is not None:
        side = sidecar_path(path)
        if os.path.abspath(side) == os.path.abspath(path):
            side = f"{path}.meta.json"
        with open(side, 'w', encoding='utf-8') as fh:
            json.dump(jsonable(metadata), fh, indent=2)
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path, side


def frame_records(frame):
    """Rows as dicts with re/im column pairs folded into [re, im] and NaN → None."""
    records = []
    cols = list(frame.columns)
    pairs = {}
    for c in cols:
        if c.startswith('re_') and f"im_{c[3:]}" in cols:
            pairs[c[3:]] = (c, f"im_{c[3:]}")
    skip = {name for pair in pairs.values() for name in pair}
    for row in frame.itertuples(index=False):
        row = row._asdict()
        rec = {}
        for c in cols:
            if c in skip:
                continue
            v = row[c]
            rec[c] = None if isinstance(v, float) and np.isnan(v) else jsonable(v)
        for name, (re_c, im_c) in pairs.items():
            re, im = row[re_c], row[im_c]
            rec[name] = None if (np.isnan(re) or np.isnan(im)) else [float(re), float(im)]
        records.append(rec)
    return records


def write_grid_json(frame, path, metadata=None):
    """Single JSON document {metadata, rows} with complex values as [re, im]."""
    doc = {'metadata': jsonable(metadata or {}), 'rows': frame_records(frame)}
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(doc, fh, indent=1)
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path, None


def write_frame(frame, path, fmt='csv', metadata=None):
    """Dispatch on the output format ('csv' or 'json')."""
    fmt = (fmt or 'csv').lower()
    if fmt == 'csv':
        return write_grid_csv(frame, path, metadata)
    if fmt == 'json':
        return write_grid_json(frame, path, metadata)
    raise ValueError(f"Unknown output format {fmt!r}.  Use 'csv' or 'json'.")
