import argparse
import logging
import os
import shutil
import sys
import time
from datetime import datetime
from fractions import Fraction
from typing import List, Optional

from rainbow_poly import LOGS_DIR
from rainbow_poly.utils.defaults import DEFAULT_EPSILON, GRID_DENSITY, HARD_KINDS, INSTANCE_KINDS, RANDOM
from rainbow_poly.utils.errors import BadK, BadN, BadParams, BadSpec, CertificationFailed, CrossingViolation
from rainbow_poly.utils.errors import DegenerateInput, DuplicatePoint, InternalInvariant, InvalidPartition
from rainbow_poly.utils.errors import NotSimple, ParseError, TooFewColors, TooManyColors, UncoveredTarget

INVALID_INPUT = (ParseError, DegenerateInput, DuplicatePoint, BadSpec, BadParams, BadK, BadN, TooFewColors,
                 TooManyColors, CrossingViolation, InvalidPartition, UncoveredTarget, OSError, AssertionError)
CERTIFICATION_FAILURE = (CertificationFailed, NotSimple, InternalInvariant)


def run_solver(
        run_name: str,
        seed: int = 42,
        input_path: Optional[str] = None,
        kind: str = RANDOM,
        k: int = 7,
        n: int = 100,
        grid_density: Fraction = GRID_DENSITY,
        epsilon: Fraction = DEFAULT_EPSILON,
        save_svg: bool = True,
        show_tree: bool = False,
):
    """
    Solve one instance and store its artifacts under LOGS_DIR/<run_name>_<date>/

    Parameters
    ----------
    run_name: selected name (will be used for naming the folder)
    seed: seed of the instance generator and of the representative choice
    input_path: file in the '<x> <y> <color>' format. If None, an instance is generated
    kind: instance kind used when input_path is None. can be: s4, s5, s6, s7, twins, random, reduction
    k: number of colors of random instances / number of twins
    n: number of points of random instances
    grid_density: spacing of the dense color class of s5, s6 and s7
    epsilon: area budget of covering-tree polygons
    save_svg: if True, a figure polygon.svg is written next to the results
    show_tree: if True, the covering tree is drawn in the figure (general pipeline only)
    -------
    """
    from rainbow_poly.data.instances import InstanceSpec, gen_instance
    from rainbow_poly.data.utils import format_points, parse_input
    from rainbow_poly.experiments.results_and_stats_utils import emit_output, emit_svg, save_run_specs
    from rainbow_poly.solver.solver import RainbowSolver

    run_name = f'{run_name}_{str(datetime.today()).split()[0]}'
    now = datetime.now()
    date_and_time = now.strftime("%d/%m/%Y %H:%M:%S")
    print("date and time =", date_and_time)

    specs = {
        'experiment name': run_name,
        'seed': seed,
        'date and time': date_and_time,
        'epsilon': epsilon,
    }

    logs_dir = os.path.join(LOGS_DIR, run_name)
    if os.path.exists(logs_dir):
        shutil.rmtree(logs_dir)
    os.makedirs(logs_dir, exist_ok=True)

    start_time = time.time()
    if input_path is not None:
        with open(input_path) as f:
            S = parse_input(f.read())
        specs.update({'input': input_path})
    else:
        spec = InstanceSpec(kind, k=None if kind in HARD_KINDS else k, n=n, grid_density=grid_density, seed=seed)
        S = gen_instance(spec)
        specs.update({'----- Instance Parameters': '----- '})
        specs.update(spec.as_dict())
        with open(os.path.join(logs_dir, 'points.txt'), 'w') as f:
            f.write(format_points(S))
    print(f'instance: n = {S.n}, k = {S.k} ({time.time() - start_time:.3f} sec)\n')

    solver = RainbowSolver(epsilon, seed)
    result = solver.solve(S)
    print(f'{result.pipeline} pipeline: {result.size} vertices, bound {result.bound} '
          f'({result.timing:.3f} sec)\n')

    specs.update({'----- Result': '----- '})
    specs.update({'pipeline': result.pipeline, 'size': result.size, 'bound': result.bound})

    with open(os.path.join(logs_dir, 'result.txt'), 'w') as f:
        f.write(emit_output(result, S))
    if save_svg:
        emit_svg(S, result, os.path.join(logs_dir, 'polygon.svg'), show_tree=show_tree)

    save_run_specs(logs_dir, specs, result.timing)
    return result


def _read(path: str) -> str:
    with open(path) as f:
        return f.read()


def cmd_solve(args) -> int:
    from rainbow_poly.data.utils import parse_input
    from rainbow_poly.experiments.results_and_stats_utils import emit_output, emit_svg
    from rainbow_poly.solver.solver import solve

    S = parse_input(_read(args.points))
    result = solve(S, seed=args.seed)
    print(emit_output(result, S), end='')
    if args.svg:
        emit_svg(S, result, args.svg, show_tree=args.show_tree)
    return 0


def cmd_verify(args) -> int:
    from rainbow_poly.data.utils import parse_input, parse_polygon
    from rainbow_poly.verifier.verifier import certify, uncovered_colors

    S = parse_input(_read(args.points))
    cert = certify(parse_polygon(_read(args.polygon)), S)
    print(f'size: {cert.size}')
    print(f'perfect: {cert.perfect}')
    print(f'rainbow: {cert.rainbow}')
    for c, m in sorted(cert.counts.items()):
        print(f'  {c}: {m}')
    if not cert.perfect:
        print(f'missing colors: {uncovered_colors(cert)}')
        return 2
    return 0


def cmd_gen(args) -> int:
    from rainbow_poly.data.instances import InstanceSpec, gen_instance
    from rainbow_poly.data.utils import format_points

    spec = InstanceSpec(args.kind, k=args.k, n=args.n, seed=args.seed)
    text = format_points(gen_instance(spec))
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text)
    else:
        print(text, end='')
    return 0


def cmd_stats(args) -> int:
    from rainbow_poly.data.utils import parse_input, parse_tree
    from rainbow_poly.experiments.results_and_stats_utils import emit_stats
    from rainbow_poly.models.utils import CoveringTree, PlaneGraph, partition_tree
    from rainbow_poly.verifier.verifier import charging_inequality_holds, lower_bound_tree, segment_stats

    S = parse_input(_read(args.points))
    graph = PlaneGraph(parse_tree(_read(args.tree))).planarize()
    tree = CoveringTree(graph.edge_list(), targets=S.points).validate()
    stats = segment_stats(partition_tree(tree), S.points)
    bound = lower_bound_tree(S.n) if S.n >= 4 and S.n % 2 == 0 else None
    print(emit_stats(stats, charging_inequality_holds(stats), bound), end='')
    return 0


def cmd_bounds(args) -> int:
    from rainbow_poly.verifier.verifier import lower_bound_rainbow, rb_index_small, upper_bound_rainbow

    k = args.k
    if k < 1:
        raise BadK(f'k must be positive, got {k}')
    print(f'k: {k}')
    if k >= 5:
        print(f'lower bound: {lower_bound_rainbow(k)}')
    print(f'upper bound: {upper_bound_rainbow(k)}')
    if 3 <= k <= 7:
        print(f'rb-index: {rb_index_small(k)}')
    return 0


def cmd_run(args) -> int:
    run_solver(args.name, seed=args.seed, input_path=args.points, kind=args.kind, k=args.k, n=args.n,
               show_tree=args.show_tree)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='rainbow-poly', description='perfect rainbow polygons')
    parser.add_argument('--verbose', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('solve', help='perfect rainbow polygon of a point file')
    p.add_argument('points')
    p.add_argument('--svg', default=None)
    p.add_argument('--show-tree', action='store_true')
    p.add_argument('--seed', type=int, default=None, help='seed of the representative choice')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('verify', help='certify a polygon against a point file')
    p.add_argument('points')
    p.add_argument('polygon')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('gen', help='generate an instance')
    p.add_argument('--kind', choices=INSTANCE_KINDS, default=RANDOM)
    p.add_argument('--k', type=int, default=None)
    p.add_argument('--n', type=int, default=None)
    p.add_argument('--seed', type=int, default=42)
    p.add_argument('--out', default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser('stats', help='segment statistics of a covering tree')
    p.add_argument('points')
    p.add_argument('tree')
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser('bounds', help='size bounds for k colors')
    p.add_argument('--k', type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser('run', help='solve and store the run under the logs directory')
    p.add_argument('--name', default='rainbow')
    p.add_argument('--points', default=None)
    p.add_argument('--kind', choices=INSTANCE_KINDS, default=RANDOM)
    p.add_argument('--k', type=int, default=7)
    p.add_argument('--n', type=int, default=100)
    p.add_argument('--seed', type=int, default=42)
    p.add_argument('--show-tree', action='store_true')
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        return args.func(args)
    except CERTIFICATION_FAILURE as e:
        print(f'certification failure: {e}', file=sys.stderr)
        return 2
    except INVALID_INPUT as e:
        print(f'invalid input: {e}', file=sys.stderr)
        return 1


if __name__ == "__main__":
    if len(sys.argv) > 1:
        sys.exit(main())

    run_params = {
        'run_name': 'rainbow',
        'seed': 42,
        'input_path': None,
        'kind': RANDOM,
        'k': 14,
        'n': 500,
        'grid_density': GRID_DENSITY,
        'epsilon': DEFAULT_EPSILON,
        'save_svg': True,
        'show_tree': True,
    }

    run_solver(**run_params)
