import os
from typing import Any, Dict, Optional

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.data.utils import format_point
from rainbow_poly.solver.solver import SolveResult
from rainbow_poly.utils.defaults import PALETTE
from rainbow_poly.verifier.verifier import SegmentStats


def emit_output(result: SolveResult, S: ColoredPointSet) -> str:
    """
    Structured text record of a solve: k, n, polygon (exact, counterclockwise),
    size, bound, per-color counts and, for the general pipeline, the tree
    """
    lines = [
        f'k: {S.k}',
        f'n: {S.n}',
        f'pipeline: {result.pipeline}',
        f'size: {result.size}',
        f'bound: {result.bound}',
        f'perfect: {result.certificate.perfect}',
        'polygon:',
    ]
    lines += [f'  {format_point(p)}' for p in result.polygon]
    lines.append('counts:')
    lines += [f'  {c}: {m}' for c, m in sorted(result.certificate.counts.items())]
    if result.partition is not None:
        lines += [
            'tree:',
            f'  s: {result.partition.s}',
            f'  t: {result.partition.t}',
            '  segments:',
        ]
        lines += [f'    {format_point(a)} {format_point(b)}' for a, b in result.partition.segments]
        lines.append('  forks:')
        lines += [f'    {format_point(p)} {m}' for p, m in result.partition.forks]
    return '\n'.join(lines) + '\n'


def emit_stats(stats: SegmentStats, charging: bool, tree_bound=None) -> str:
    lines = [
        f's: {stats.s}',
        f't: {stats.t}',
        f's0: {stats.s0}',
        f's1: {stats.s1}',
        f's2: {stats.s2}',
        f'2s+t: {stats.size}',
        f'charging inequality: {charging}',
    ]
    if tree_bound is not None:
        lines.append(f'tree lower bound: {tree_bound}')
    return '\n'.join(lines) + '\n'


def emit_svg(
        S: ColoredPointSet,
        result: SolveResult,
        path: str,
        show_tree: bool = False,
):
    """
    Figure of the point set (one palette color per class), the polygon outline,
    the representatives circled, and optionally the covering tree
    """
    plt.rcParams['svg.hashsalt'] = 'rainbow_poly'
    fig, ax = plt.subplots(figsize=(6, 6))

    poly = [(float(p.x), float(p.y)) for p in result.polygon]
    ax.fill(*zip(*poly), facecolor='#dddddd', edgecolor='black', linewidth=0.8)

    for i, c in enumerate(S.color_list):
        pts = S.points_of(c)
        ax.scatter([float(p.x) for p in pts], [float(p.y) for p in pts], s=9,
                   color=PALETTE[i % len(PALETTE)], zorder=3)
    reps = result.representatives
    ax.scatter([float(p.x) for p in reps], [float(p.y) for p in reps], s=60,
               facecolors='none', edgecolors='black', linewidths=0.8, zorder=4)

    if show_tree and result.partition is not None:
        for a, b in result.partition.segments:
            ax.plot([float(a.x), float(b.x)], [float(a.y), float(b.y)], color='#377eb8',
                    linewidth=0.6, zorder=2)

    ax.set_aspect('equal')
    ax.set_title(f'k = {S.k}, n = {S.n}, {result.size} vertices')
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)


def save_run_specs(
        logs_dir: str,
        specs: Dict[str, Any],
        running_time: Optional[float] = None,
):
    specs_file = os.path.join(logs_dir, 'specs.txt')
    with open(specs_file, 'w') as f:
        if running_time is not None:
            f.write(f"solver running time: {running_time} sec\n")
        for k, v in specs.items():
            f.write(f"{k}: {str(v)}\n")
