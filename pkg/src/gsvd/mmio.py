"""MatrixMarket file ingestion and result report writers.

Supported input: coordinate or array format, real field, general or
symmetric storage.  Symmetric storage is expanded.  Indices are 1-based on
disk and 0-based in memory.
"""

import csv
import io
import json

import numpy as np

from .core import SparseMatrix


def read_matrix_market(path):
    """Parse a MatrixMarket file into a canonical CSR matrix."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline()
        tokens = header.strip().split()
        if len(tokens) != 5 or tokens[0] != "%%MatrixMarket":
            raise ValueError(f"malformed MatrixMarket header: {header.strip()!r}")
        obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
        if obj != "matrix":
            raise ValueError(f"unsupported object type {obj!r}")
        if fmt not in ("coordinate", "array"):
            raise ValueError(f"unsupported format {fmt!r}")
        if field != "real":
            raise ValueError(f"unsupported field {field!r}: only 'real' is accepted")
        if symmetry not in ("general", "symmetric"):
            raise ValueError(f"unsupported symmetry {symmetry!r}")

        line = fh.readline()
        while line and line.lstrip().startswith("%"):
            line = fh.readline()
        size = line.split()
        if fmt == "coordinate":
            if len(size) != 3:
                raise ValueError("coordinate size line must be 'nrows ncols nnz'")
            nrows, ncols, nnz = (int(t) for t in size)
            rows = np.empty(nnz, dtype=np.int64)
            cols = np.empty(nnz, dtype=np.int64)
            vals = np.empty(nnz)
            got = 0
            for line in fh:
                parts = line.split()
                if not parts or parts[0].startswith("%"):
                    continue
                if len(parts) != 3:
                    raise ValueError(f"bad coordinate entry: {line.strip()!r}")
                if got >= nnz:
                    raise ValueError("more entries than declared")
                i, j = int(parts[0]) - 1, int(parts[1]) - 1
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise ValueError(f"index out of bounds: {line.strip()!r}")
                rows[got], cols[got], vals[got] = i, j, float(parts[2])
                got += 1
            if got != nnz:
                raise ValueError(f"expected {nnz} entries, found {got}")
            if symmetry == "symmetric":
                off = rows != cols
                rows, cols, vals = (np.concatenate([rows, cols[off]]),
                                    np.concatenate([cols, rows[off]]),
                                    np.concatenate([vals, vals[off]]))
            return SparseMatrix.from_coo(nrows, ncols, rows, cols, vals)

        if len(size) != 2:
            raise ValueError("array size line must be 'nrows ncols'")
        nrows, ncols = (int(t) for t in size)
        data = []
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("%"):
                continue
            data.extend(float(t) for t in parts)
        dense = np.zeros((nrows, ncols))
        if symmetry == "symmetric":
            if len(data) != nrows * (nrows + 1) // 2 or nrows != ncols:
                raise ValueError("bad symmetric array data size")
            pos = 0
            for j in range(ncols):
                for i in range(j, nrows):
                    dense[i, j] = data[pos]
                    dense[j, i] = data[pos]
                    pos += 1
        else:
            if len(data) != nrows * ncols:
                raise ValueError("bad array data size")
            dense = np.asarray(data).reshape((ncols, nrows)).T  # column major
        return SparseMatrix.from_dense(dense)


def write_matrix_market(path, m):
    """Write a CSR matrix in coordinate real general format."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        fh.write(f"{m.nrows} {m.ncols} {m.nnz}\n")
        for i in range(m.nrows):
            lo, hi = m.row_offsets[i], m.row_offsets[i + 1]
            for j, v in zip(m.col_indices[lo:hi], m.values[lo:hi]):
                fh.write(f"{i + 1} {j + 1} {v!r}\n")


VALUE_FIELDS = ("sigma", "c", "s", "residual_estimate", "relative_residual")
STAT_FIELDS = ("restarts", "ls_solves", "ls_iterations", "wall_time_s")


def write_report(values, stats, fmt="text"):
    """Render solver results as text, JSON or CSV.

    `values` is a list of dicts with the VALUE_FIELDS keys; `stats` is a
    dict with the STAT_FIELDS keys.  Returns the report as a string.
    """
    values = [{k: row[k] for k in VALUE_FIELDS} for row in values]
    stats = {k: stats.get(k, 0) for k in STAT_FIELDS}
    if fmt == "json":
        return json.dumps({"values": values, "stats": stats}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(VALUE_FIELDS)
        for row in values:
            writer.writerow([repr(float(row[k])) for k in VALUE_FIELDS])
        writer.writerow([])
        for k in STAT_FIELDS:
            writer.writerow([k, stats[k]])
        return buf.getvalue()
    if fmt == "text":
        lines = [f"{'sigma':>16} {'c':>12} {'s':>12} {'rest':>10} {'relres':>10}"]
        for row in values:
            lines.append(
                f"{row['sigma']:16.9e} {row['c']:12.6f} {row['s']:12.6f} "
                f"{row['residual_estimate']:10.2e} {row['relative_residual']:10.2e}")
        lines.append("")
        for k in STAT_FIELDS:
            lines.append(f"{k}: {stats[k]}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
