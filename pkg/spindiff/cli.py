"""
Command-line front end.

Usage:
    spindiff verify [--suite all|spinors|eigen|commutators|s2|solver|numeric]
                    [--format text|json] [--seed N]
    spindiff solve <ansatz.json | bundled name> [--format text|json]
    spindiff apply --op Sz --spinor z+ [--style exponential|trig]
    spindiff commutator --ops Sx,Sy [--style exponential|trig]
    spindiff eval --expr "cos(theta/2)" --theta 0 --phi 0 [--theta-p X --phi-p Y]

All operator coefficients and eigenvalues are in units of hbar.

Exit codes: 0 when nothing failed, 1 when a verification item failed, 2 for
usage, parse, schema and unknown-identifier errors.
"""
from pathlib import Path
from typing import Any, Dict, Optional, Sequence
import argparse
import json
import logging
import sys

from . import __version__
from .base import SpinDiffError
from .diffop import commutator, eigen_factor
from .expr import Expr
from .factory import get_operator, get_spinor
from .oracle import SamplePlan
from .parser import STYLES, format_scalar, parse, print_expr
from .solver import Derivation, SolveStatus, bundled_ansatz_path, derive, load_ansatz
from .verify import SUITE_NAMES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='spindiff',
        description='Exact spin-1/2 differential operators (units of hbar): '
                    'verification, derivation and evaluation.',
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress to stderr (-v info, -vv debug)')
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help='run a verification suite')
    verify.add_argument('--suite', choices=SUITE_NAMES, default='all')
    verify.add_argument('--format', choices=('text', 'json'), default='text')
    verify.add_argument('--seed', type=int, default=0, help='seed of the numeric sample plan')

    solve = commands.add_parser('solve', help='solve an operator ansatz file')
    solve.add_argument('ansatz', help='path to an ansatz JSON file, or a bundled name such as z or y_no_phase')
    solve.add_argument('--format', choices=('text', 'json'), default='text')
    solve.add_argument('--style', choices=STYLES, default='trig')

    apply = commands.add_parser('apply', help='apply a named operator to a named spinor')
    apply.add_argument('--op', required=True)
    apply.add_argument('--spinor', required=True)
    apply.add_argument('--style', choices=STYLES, default='trig')

    comm = commands.add_parser('commutator', help='commutator of two named operators')
    comm.add_argument('--ops', required=True, help='two operator names separated by a comma')
    comm.add_argument('--style', choices=STYLES, default='trig')

    evaluate = commands.add_parser('eval', help='evaluate an expression at given angles')
    evaluate.add_argument('--expr', required=True)
    evaluate.add_argument('--theta', type=float, default=0.0)
    evaluate.add_argument('--phi', type=float, default=0.0)
    evaluate.add_argument('--theta-p', type=float, default=0.0)
    evaluate.add_argument('--phi-p', type=float, default=0.0)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        force=True,
    )


def format_complex(value: complex) -> str:
    if value.imag == 0:
        return repr(value.real)
    return f"{value.real!r}{value.imag:+}j"


# Commands

def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, plan=SamplePlan(seed=args.seed))
    print(report.to_json() if args.format == 'json' else report.to_text())
    return EXIT_FAIL if report.exit_code else EXIT_OK


def _resolve_ansatz(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    if path.suffix or path.parent != Path('.'):
        return path
    return bundled_ansatz_path(name)


def solve_to_dict(derivation: Derivation, style: str = 'trig') -> Dict[str, Any]:
    result = derivation.result
    doc: Dict[str, Any] = {
        'ansatz': derivation.spec.name,
        'status': result.status.value,
        'unknowns': len(result.unknowns),
        'rows': len(derivation.system.rows),
        'rank': result.rank,
    }
    if result.status is not SolveStatus.INFEASIBLE:
        doc['solution'] = {
            unknown.describe(): format_scalar(value)
            for unknown, value in result.solution.items() if value
        }
        doc['nullspace'] = [
            {unknown.describe(): format_scalar(value) for unknown, value in vector.items()}
            for vector in result.nullspace
        ]
        doc['operator'] = derivation.operator.to_text(style).splitlines()
    else:
        witness = result.witness
        doc['witness'] = {
            'rhs': format_scalar(witness.rhs),
            'rows': [
                {
                    'row': index,
                    'weight': format_scalar(weight),
                    'eigenpair': provenance.eigenpair,
                    'component': provenance.component,
                    'atom': print_expr(Expr.atom(provenance.freq)),
                }
                for (index, weight), provenance in zip(witness.combination, witness.provenance)
            ],
        }
    return doc


def _solve_text(doc: Dict[str, Any]) -> str:
    lines = [
        f"ansatz: {doc['ansatz'] or 'unnamed'}",
        f"status: {doc['status']}",
        f"unknowns: {doc['unknowns']}  rows: {doc['rows']}  rank: {doc['rank']}",
    ]
    if doc['status'] == SolveStatus.INFEASIBLE.value:
        witness = doc['witness']
        lines.append(f"witness: combination of {len(witness['rows'])} rows reduces to 0 = {witness['rhs']}")
        for row in witness['rows']:
            lines.append(
                f"  row {row['row']}: weight {row['weight']}  "
                f"(eigenpair {row['eigenpair']}, component {row['component']}, atom {row['atom']})"
            )
        return '\n'.join(lines)

    if doc['status'] == SolveStatus.PARAMETRIC.value:
        lines.append(f"free unknowns: {len(doc['nullspace'])} (particular solution sets them to 0)")
    lines.append('operator:')
    lines.extend(f"  {line}" for line in doc['operator'])
    if doc['nullspace']:
        lines.append('nullspace:')
        for k, vector in enumerate(doc['nullspace']):
            terms = ', '.join(f"{name} = {value}" for name, value in vector.items())
            lines.append(f"  [{k}] {terms}")
    return '\n'.join(lines)


def cmd_solve(args: argparse.Namespace) -> int:
    derivation = derive(load_ansatz(_resolve_ansatz(args.ansatz)))
    doc = solve_to_dict(derivation, args.style)
    print(json.dumps(doc, indent=2, sort_keys=True) if args.format == 'json' else _solve_text(doc))
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    op, s = get_operator(args.op), get_spinor(args.spinor)
    image = op.apply(s)
    top, bottom = image.to_text(args.style)
    factor = eigen_factor(op, s)
    print(f"top = {top}")
    print(f"bottom = {bottom}")
    print(f"eigenvalue = {format_scalar(factor)}" if factor is not None else 'not an eigenvector')
    return EXIT_OK


def cmd_commutator(args: argparse.Namespace) -> int:
    names = [name.strip() for name in args.ops.split(',')]
    if len(names) != 2 or not all(names):
        raise ValueError(f"--ops takes two operator names separated by a comma, got '{args.ops}'")
    result = commutator(get_operator(names[0]), get_operator(names[1]))
    print(result.to_text(args.style))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    e = parse(args.expr)
    logger.info(f"Canonical form: {print_expr(e)}")
    value = complex(e.evaluate(args.theta, args.phi, args.theta_p, args.phi_p))
    print(format_complex(value))
    return EXIT_OK


COMMANDS = {
    'verify': cmd_verify,
    'solve': cmd_solve,
    'apply': cmd_apply,
    'commutator': cmd_commutator,
    'eval': cmd_eval,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (SpinDiffError, ValueError) as e:
        logger.debug('Command failed', exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
