"""Figure rendering for the report path.

Reports can write, next to the JSON analysis and the CSV model summary, a
PNG per contact automaton (circular layout, edges annotated with
letter:gain) and an egg-box diagram per D-class model (the Lambda x I grid,
shaded where the sandwich is nonzero).  Everything is laid out
deterministically so repeated runs produce identical files.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.patches as mpatches
import matplotlib.pyplot as plt

from .biorder import BiorderedSet
from .gain import ContactAutomaton
from .rees import RegularDClassModel


def render_contact(auto: ContactAutomaton, path: str | Path) -> None:
    graph = auto.graph
    n = len(graph.vertices)
    pos = {}
    for k, v in enumerate(graph.vertices):
        angle = 2 * math.pi * k / max(n, 1)
        pos[v] = (math.cos(angle), math.sin(angle))
    fig, ax = plt.subplots(figsize=(5, 5))
    bends = {}
    for e in graph.edges:
        (x1, y1), (x2, y2) = pos[e.u], pos[e.v]
        key = tuple(sorted((str(e.u), str(e.v))))
        bends[key] = bends.get(key, -0.25) + 0.25  # spread parallel edges
        label = f"{e.letter}:{graph.gain_group.name(e.gain)}"
        if e.u == e.v:
            loop = mpatches.Arc((x1, y1 + 0.14), 0.22, 0.22, theta1=0, theta2=360)
            ax.add_patch(loop)
            ax.annotate(label, (x1, y1 + 0.3), fontsize=7, ha="center")
        else:
            ax.annotate(
                "", xy=(x2, y2), xytext=(x1, y1),
                arrowprops=dict(arrowstyle="-|>", connectionstyle=f"arc3,rad={bends[key]:.2f}",
                                lw=0.8, color="tab:blue"))
            ax.annotate(label, ((x1 + x2) / 2, (y1 + y2) / 2 + bends[key] / 3),
                        fontsize=7, ha="center", color="tab:blue")
    for v, (x, y) in pos.items():
        ax.plot([x], [y], "o", color="black", markersize=4)
        ax.annotate(f"({v[0]},{v[1]})", (x, y - 0.12), fontsize=8, ha="center")
    ax.set_title(f"contact automaton A(D{auto.d1}, D{auto.d2})")
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=140, bbox_inches="tight")
    plt.close(fig)


def render_eggbox(model: RegularDClassModel, bi: BiorderedSet | None, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(1.2 + 0.9 * model.n_i, 1.2 + 0.9 * model.n_lambda))
    for lam in range(model.n_lambda):
        for i in range(model.n_i):
            p = model.sandwich[lam][i]
            face = "#cfe8cf" if p is not None else "#f0f0f0"
            ax.add_patch(mpatches.Rectangle((i, model.n_lambda - 1 - lam), 1, 1,
                                            facecolor=face, edgecolor="black", lw=0.8))
            text = "0" if p is None else model.group.name(p)
            ax.annotate(text, (i + 0.5, model.n_lambda - 0.5 - lam), ha="center", va="center", fontsize=9)
    ax.annotate(f"|G| = {model.group.order}", (model.n_i / 2, -0.45), ha="center", fontsize=9)
    ax.set_title(f"D-class {model.dclass_id}: egg-box / sandwich")
    ax.set_xlim(-0.3, model.n_i + 0.3)
    ax.set_ylim(-0.8, model.n_lambda + 0.3)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=140, bbox_inches="tight")
    plt.close(fig)


def write_model_csv(models: dict, errors: dict, path: str | Path) -> None:
    """Delimited per-class summary next to the JSON report."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dclass_id", "n_r_classes", "n_l_classes", "group_order",
                         "n_idempotents", "finite", "error"])
        for d in sorted(set(models) | set(errors)):
            if d in models:
                m = models[d]
                idems = len(m.idempotent_coords) if m.idempotent_coords is not None else ""
                writer.writerow([d, m.n_i, m.n_lambda, m.group.order, idems, True, ""])
            else:
                writer.writerow([d, "", "", "", "", False, str(errors[d])])


def render_report_figures(ctx, out_dir: str | Path) -> list[str]:
    """PNG figures for every model and every buildable contact automaton."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    models, errors = ctx.all_models()
    for d, model in sorted(models.items()):
        p = out / f"dclass_{d}_eggbox.png"
        render_eggbox(model, ctx.biorder, p)
        written.append(str(p))
    if not errors:
        for d1 in sorted(models):
            for d2 in sorted(models):
                p = out / f"contact_{d1}_{d2}.png"
                render_contact(ctx.automaton(d1, d2), p)
                written.append(str(p))
    return written
