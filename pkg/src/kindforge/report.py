"""Delimited and graphical output for corpus runs.

`write_report` drops three files into the target directory: a per-category
summary (summary.csv), one row per annotation site (annotations.csv), and a
stacked bar chart of verdicts by category (annotations_by_category.png).
"""
from __future__ import annotations

import csv
from pathlib import Path

from .driver import CATEGORIES, VERDICTS, FileReport, RunSummary
from .syntax import pretty_kind

_VERDICT_COLORS = {
    "exact": "#4878cf",
    "more-general": "#ee854a",
    "inferred-fresh": "#6acc64",
}


def write_summary_csv(summary: RunSummary, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["category", *VERDICTS, "total"])
        for cat in CATEGORIES:
            row = [summary.counts.get((cat, v), 0) for v in VERDICTS]
            writer.writerow([cat, *row, sum(row)])
        writer.writerow(["total", *[summary.verdict_total(v) for v in VERDICTS], summary.total])


def write_annotations_csv(reports: list[FileReport], path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["file", "span", "category", "written", "inferred", "verdict"])
        for report in reports:
            for a in report.annotations:
                writer.writerow(
                    [
                        report.path,
                        str(a.span),
                        a.category,
                        pretty_kind(a.written) if a.written is not None else "",
                        pretty_kind(a.inferred),
                        a.verdict,
                    ]
                )


def render_summary_figure(summary: RunSummary, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    xs = range(len(CATEGORIES))
    bottoms = [0] * len(CATEGORIES)
    for verdict in VERDICTS:
        heights = [summary.counts.get((cat, verdict), 0) for cat in CATEGORIES]
        ax.bar(xs, heights, bottom=bottoms, label=verdict, color=_VERDICT_COLORS[verdict])
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_xticks(list(xs))
    ax.set_xticklabels(CATEGORIES, rotation=20, ha="right")
    ax.set_ylabel("annotation sites")
    ax.set_title("Kind annotations by category and verdict")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(summary: RunSummary, reports: list[FileReport], directory) -> list[str]:
    """Write CSVs and the figure; returns the created file names."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_summary_csv(summary, directory / "summary.csv")
    write_annotations_csv(reports, directory / "annotations.csv")
    render_summary_figure(summary, directory / "annotations_by_category.png")
    return ["summary.csv", "annotations.csv", "annotations_by_category.png"]
