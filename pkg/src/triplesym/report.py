"""Row-report serialization (NDJSON, CSV, text) and optional figures.

Batch symbol evaluation and the reference-table verb produce lists of flat
dicts; this module writes them in the requested delimited format and can
render a small matplotlib chart next to the delimited output.  matplotlib
is imported lazily so plain runs never pay for it.
"""

from __future__ import annotations

import csv
import io
import json


def write_rows(rows, fmt: str, stream) -> None:
    if fmt == "json":
        for row in rows:
            stream.write(json.dumps(row, sort_keys=True) + "\n")
    elif fmt == "csv":
        stream.write(rows_to_csv(rows))
    elif fmt == "text":
        for row in rows:
            stream.write(row_to_text(row) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def rows_to_csv(rows) -> str:
    if not rows:
        return ""
    fields = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _flatten(v) for k, v in row.items()})
    return buf.getvalue()


def _flatten(value):
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    return value


def row_to_text(row) -> str:
    return "  ".join(f"{k}={_flatten(v)}" for k, v in row.items())


def _exponent_of(row):
    for key in ("exponent", "mu3_sigma_123", "mu2_123"):
        if key in row:
            return row[key]
    return None


def render_rows_figure(rows, path: str, title: str, l: int) -> None:
    """Bar chart of symbol exponents per input row; error rows are hatched."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels, values, colors = [], [], []
    for row in rows:
        labels.append(str(row.get("p3") or row.get("pi3") or "?"))
        e = _exponent_of(row)
        if row.get("status", "ok") != "ok" or e is None:
            values.append(0)
            colors.append("lightgray")
        else:
            values.append(e)
            colors.append("tab:blue")
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(rows) + 2), 3))
    ax.bar(range(len(rows)), values, color=colors)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(l))
    ax.set_ylabel("exponent mod %d" % l)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_table_figure(rows, path: str) -> None:
    """Computed vs expected invariants for the reference table, PASS/FAIL colored."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n = len(rows)
    fig, ax = plt.subplots(figsize=(max(4, 1.1 * n), 3.2))
    width = 0.35
    xs = range(n)
    sigma = [r["mu3_sigma_123"] for r in rows]
    mu = [r["mu3_123"] for r in rows]
    ok = [r["status"] == "PASS" for r in rows]
    ax.bar([x - width / 2 for x in xs], sigma, width,
           color=["tab:green" if o else "tab:red" for o in ok],
           label="mu3(sigma;123)")
    ax.bar([x + width / 2 for x in xs], mu, width,
           color=["tab:olive" if o else "tab:orange" for o in ok],
           label="mu3(123)")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([str(r["pi3"]) for r in rows])
    ax.set_yticks((0, 1, 2))
    ax.legend(fontsize=8)
    ax.set_title("triple cubic symbol invariants vs reference")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
