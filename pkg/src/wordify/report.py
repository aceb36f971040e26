"""Rendering of the consistency report: terminal tables, CSV files and figures.

The CSV and figure outputs land side by side in one directory so a report run
leaves a self-contained bundle: three delimited tables plus two PNG charts.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .lexicon import ConsistencyReport

PRINCIPLE_LABELS = {
    "i": "i: one symbol, several sounds",
    "ii": "ii: one sound, several symbols",
    "iii": "iii: symbol spanning several sounds",
    "iv": "iv: sound spanning several letters",
}


def format_report_text(report: ConsistencyReport) -> str:
    """Human-oriented table for the terminal."""
    pv = report.principle_violations
    counts = pv.counts()
    lines = ["transparency principle violations", "=" * 34]
    for key in ("i", "ii", "iii", "iv"):
        lines.append(f"{PRINCIPLE_LABELS[key]:42s} {counts[key]:4d}")
    lines.append("")

    if pv.one_symbol_many_sounds:
        lines.append("principle i witnesses (grapheme -> realizations)")
        for g, seqs in sorted(pv.one_symbol_many_sounds.items()):
            rendered = ", ".join("[" + " ".join(seq) + "]" for seq in seqs)
            lines.append(f"  {g:8s} {rendered}")
    if pv.one_sound_many_symbols:
        lines.append("principle ii witnesses (phoneme -> graphemes)")
        for p, gs in sorted(pv.one_sound_many_symbols.items()):
            lines.append(f"  {p:8s} {', '.join(gs)}")
    if pv.multi_phoneme_units:
        lines.append("principle iii witnesses (one grapheme, several sounds)")
        for wid, ui, g, seq in pv.multi_phoneme_units:
            lines.append(f"  {g:8s} [{' '.join(seq)}]  ({wid} unit {ui})")
    if pv.multi_letter_units:
        lines.append("principle iv witnesses (one sound, several letters)")
        seen: dict[str, int] = {}
        for _, _, g, _ in pv.multi_letter_units:
            seen[g] = seen.get(g, 0) + 1
        for g, n in sorted(seen.items()):
            lines.append(f"  {g:8s} x{n}")
    return "\n".join(lines) + "\n"


def write_report_csv(report: ConsistencyReport, out_dir: str | Path) -> list[Path]:
    """Write the three delimited tables; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    path = out / "grapheme_realizations.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["grapheme", "phonemes"])
        for g, seqs in sorted(report.grapheme_to_phonemes.items()):
            for seq in sorted(seqs):
                writer.writerow([g, " ".join(seq)])
    written.append(path)

    path = out / "phoneme_spellings.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["phoneme", "grapheme"])
        for p, gs in sorted(report.phoneme_to_graphemes.items()):
            for g in sorted(gs):
                writer.writerow([p, g])
    written.append(path)

    pv = report.principle_violations
    path = out / "principle_violations.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["principle", "witness", "detail"])
        for g, seqs in sorted(pv.one_symbol_many_sounds.items()):
            writer.writerow(["i", g, "; ".join(" ".join(s) for s in seqs)])
        for p, gs in sorted(pv.one_sound_many_symbols.items()):
            writer.writerow(["ii", p, "; ".join(gs)])
        for wid, ui, g, seq in pv.multi_phoneme_units:
            writer.writerow(["iii", g, f"{' '.join(seq)} ({wid} unit {ui})"])
        for wid, ui, g, n in pv.multi_letter_units:
            writer.writerow(["iv", g, f"{n} letters ({wid} unit {ui})"])
    written.append(path)
    return written


def render_report_figures(report: ConsistencyReport, out_dir: str | Path) -> list[Path]:
    """Render the two PNG charts next to the CSV output."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    counts = report.principle_violations.counts()

    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    keys = ["i", "ii", "iii", "iv"]
    ax.bar(keys, [counts[k] for k in keys], color="#4878a8")
    ax.set_xlabel("transparency principle")
    ax.set_ylabel("violation witnesses")
    ax.set_title("Sound-spelling transparency violations")
    fig.tight_layout()
    path = out / "principle_violations.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fanout = sorted(
        ((g, len(seqs)) for g, seqs in report.grapheme_to_phonemes.items()),
        key=lambda item: (-item[1], item[0]),
    )[:15]
    fig, ax = plt.subplots(figsize=(6.5, 3.5))
    if fanout:
        labels = [g for g, _ in fanout]
        values = [n for _, n in fanout]
        ax.bar(labels, values, color="#a85c48")
    ax.set_xlabel("grapheme")
    ax.set_ylabel("distinct realizations")
    ax.set_title("Graphemes by pronunciation fan-out")
    fig.tight_layout()
    path = out / "grapheme_fanout.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written
