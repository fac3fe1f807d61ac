"""
Command line for the Seiberg-Witten families calculator.

    python cli.py invariants --manifold "2CP2 # 10CP2bar"
    python cli.py sw-kahler --surface "E1(2,3)" --L 0
    python cli.py torelli-rank --D 50 --out matrix.json
    python cli.py sw-oq --diffeo "(id # rho@1) * conj(I, id # rho@1, E1(2,5) # S2xS2)" --q 5 --bound 5

Results go to standard output (or --out) as JSON or CSV; logging goes to
standard error.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple
import argparse
import json
import logging
import shlex
import sys

import pandas as pd

# Add project root to Python path
project_root = Path(__file__).parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.config import (
    DEFAULT_BOUND,
    DEFAULT_JOBS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_SEED,
    DEFAULT_WORD_LENGTH,
    LOG_FORMAT,
)
from src.errors import CertificateError, ParseError, SWCalcError, UsageError
from src.families import ChamberTag, FamiliesEngine, FamilyQuery
from src.kahler import KahlerModel, basic_classes_zero, kahler_record
from src.lattice import enumerate_characteristics, random_automorphism
from src.manifolds import SpinCClass, chart_lattice, invariants, spinc_family
from src.parsing import load_automorphisms, parse_diffeo, parse_manifold, parse_vector
from src.reports import basic_classes_frame, generate_certificate_report, matrix_frame, to_json, write
from src.torelli import base_manifold, blowup_lift, build_td, rank_certificate, sw_OQ

logger = logging.getLogger('sw_family_calc')

SUBCOMMANDS = ('invariants', 'enumerate-spinc', 'sw-kahler', 'sw-family', 'torelli-rank', 'build-td', 'sw-oq')


class CalcArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> CalcArgumentParser:
    common = CalcArgumentParser(add_help=False)
    common.add_argument('--out', default=None, help='output file (default: standard output)')
    common.add_argument('--format', default='json', choices=['json', 'csv'])
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='seed of the random automorphism R')
    common.add_argument('--word-length', type=int, default=DEFAULT_WORD_LENGTH)
    common.add_argument('--bound', type=int, default=DEFAULT_BOUND, help='coordinate bound for enumerations')
    common.add_argument('--jobs', type=int, default=DEFAULT_JOBS, help='parallel workers')
    common.add_argument('--automorphisms', default=None, help='JSON file {name: matrix} for conj(...)')
    common.add_argument('--verbose', action='store_true')

    parser = CalcArgumentParser(prog='cli.py', description='Seiberg-Witten families calculator')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    p = subparsers.add_parser('invariants', parents=[common], help='lattice invariants of a connected sum')
    p.add_argument('--manifold', required=True)

    p = subparsers.add_parser('enumerate-spinc', parents=[common], help='characteristic vectors under a bound')
    p.add_argument('--manifold', required=True)
    p.add_argument('--square', type=int, default=None, help='default: the d(s) = -1 square 10 - b-')
    p.add_argument('--multiple', type=int, default=1)

    p = subparsers.add_parser('sw-kahler', parents=[common], help='chamber invariants of E1 and E1(m,n)')
    p.add_argument('--surface', required=True)
    p.add_argument('--L', default=None, help="integer a (meaning a t') or a chart vector")
    p.add_argument('--table', action='store_true', help='tabulate the zero-chamber basic classes')

    p = subparsers.add_parser('sw-family', parents=[common], help='families invariant of one diffeomorphism')
    p.add_argument('--manifold', required=True)
    p.add_argument('--spinc', required=True)
    p.add_argument('--diffeo', required=True)
    p.add_argument('--chamber', default='zero', choices=[tag.value for tag in ChamberTag])
    p.add_argument('--mod2', action='store_true', help='evaluate every node mod 2')
    p.add_argument('--derivation', action='store_true', help='include the derivation tree')
    p.add_argument('--certified', action='store_true', help='fail when the value is Unknown')

    p = subparsers.add_parser('torelli-rank', parents=[common], help='support matrix rank certificate')
    p.add_argument('--D', type=int, required=True)
    p.add_argument('--report', default=None, help='also save a text summary here')

    p = subparsers.add_parser('build-td', parents=[common], help='construct t_d and s_d')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--dump', action='store_true')
    p.add_argument('--lift', type=int, default=0, help='number of CP2bar blowups to lift through')

    p = subparsers.add_parser('sw-oq', parents=[common], help='sum over a divisibility class')
    p.add_argument('--diffeo', required=True)
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--manifold', default=None, help='default: E1 # S2xS2')

    return parser


@dataclass(frozen=True)
class Query:
    subcommand: str
    options: Tuple[Tuple[str, Any], ...]

    @classmethod
    def from_argv(cls, argv: Sequence[str]) -> 'Query':
        args = vars(build_parser().parse_args(list(argv)))
        subcommand = args.pop('subcommand')
        return cls(subcommand, tuple(sorted(args.items())))

    def to_argv(self) -> List[str]:
        argv = [self.subcommand]
        for name, value in self.options:
            flag = '--' + name.replace('_', '-')
            if value is None or value is False:
                continue
            argv.append(flag if value is True else f"{flag}={value}")
        return argv

    def get(self, name: str, default=None):
        return dict(self.options).get(name, default)

    def __str__(self):
        return shlex.join(self.to_argv())


class SWCalculator:
    """One method per subcommand; each returns (payload, frame or None, signed)."""

    def __init__(self, query: Query):
        self.query = query
        self.options = dict(query.options)

    def engine(self, mod2: bool = False) -> FamiliesEngine:
        return FamiliesEngine(mod2=mod2)

    def automorphisms(self, manifold, text: str):
        named = {}
        path = self.options['automorphisms']
        if path:
            try:
                with open(path) as f:
                    data = json.load(f)
            except json.JSONDecodeError as e:
                raise UsageError(f"--automorphisms: {path} is not valid JSON: {e}") from None
            except OSError as e:
                raise UsageError(f"--automorphisms: cannot read {path}: {e.strerror or e}") from None
            named.update(load_automorphisms(data, manifold.lattice))
        if 'R' not in named and 'conj(R,' in text.replace(' ', ''):
            seed, length = self.options['seed'], self.options['word_length']
            logger.info(f"Random automorphism R: seed {seed}, word length {length}")
            named['R'] = random_automorphism(manifold.lattice, seed, length)
        return named

    def diffeo(self, manifold):
        text = self.options['diffeo']
        return parse_diffeo(text, manifold, self.automorphisms(manifold, text))

    def cmd_invariants(self):
        manifold = parse_manifold(self.options['manifold'])
        inv = invariants(manifold)
        payload = {
            'manifold': str(manifold),
            'rank': manifold.lattice.rank,
            'invariants': inv.to_dict(),
            'homeomorphism_type': list(inv.homeomorphism_type),
            'lattice': manifold.lattice.to_dict(),
        }
        return payload, None, False

    def cmd_enumerate_spinc(self):
        manifold = parse_manifold(self.options['manifold'])
        bound, multiple, square = self.options['bound'], self.options['multiple'], self.options['square']
        if square is None:
            vectors = [s.c for s in spinc_family(manifold, bound, multiple=multiple)]
            square = 10 - invariants(manifold).b_minus
        else:
            vectors = enumerate_characteristics(manifold.lattice, square, bound, multiple=multiple)
        classes = [SpinCClass(manifold, c) for c in vectors]
        frame = pd.DataFrame(
            [{'c': str(s), 'square': s.square, 'divisibility': s.divisibility} for s in classes],
            columns=['c', 'square', 'divisibility'],
        )
        payload = {
            'manifold': str(manifold),
            'square': square,
            'bound': bound,
            'multiple': multiple,
            'count': len(classes),
            'classes': [s.c.to_list() for s in classes],
        }
        return payload, frame, False

    def cmd_sw_kahler(self):
        surface = parse_manifold(self.options['surface'])
        if len(surface) != 1:
            raise UsageError(f"--surface must be E1 or E1(m,n), got {surface}")
        model = KahlerModel.for_atom(surface.summands[0])

        if self.options['table']:
            table = basic_classes_zero(model, bound=self.options['bound'])
            payload = {
                'surface': str(surface),
                'K': model.K.to_list(),
                'basic_classes': [
                    {'a': bundle.fiber_multiple, 'L': bundle.L.to_list(), 'sw0': value}
                    for bundle, value in table
                ],
            }
            return payload, basic_classes_frame(table), True

        text = self.options['L']
        if text is None:
            raise UsageError("sw-kahler needs --L or --table")
        try:
            a = int(text)
        except ValueError:
            L = parse_vector(text, chart_lattice())
        else:
            L = model.line_bundle(a)
        record = kahler_record(model, L)
        return record, pd.DataFrame([record]), True

    def cmd_sw_family(self):
        manifold = parse_manifold(self.options['manifold'])
        s = SpinCClass(manifold, parse_vector(self.options['spinc'], manifold.lattice))
        f = self.diffeo(manifold)
        engine = self.engine(mod2=self.options['mod2'])
        query = FamilyQuery(manifold, s, f, ChamberTag(self.options['chamber']))
        value = engine.evaluate(query)
        if not value.is_certified:
            logger.warning(f"Unknown: no rule applies to {query.describe()}")
            if self.options['certified']:
                raise CertificateError(f"{query.describe()} is Unknown")
        payload = {'query': query.describe(), **value.to_dict(include_derivation=self.options['derivation'])}
        return payload, pd.DataFrame([{'kind': value.kind.value, 'value': value.value}]), True

    def cmd_torelli_rank(self):
        certificate = rank_certificate(
            self.options['D'],
            engine=self.engine(),
            n_jobs=self.options['jobs'],
            progress=self.options['verbose'],
        )
        if self.options['report']:
            generate_certificate_report(certificate, self.options['report'])
        return certificate.to_dict(), matrix_frame(certificate.witness), False

    def cmd_build_td(self):
        family = build_td(self.options['d'])
        engine = self.engine()
        value = engine.evaluate(FamilyQuery(family.X, family.sd, family.td, ChamberTag.ZERO))
        if self.options['dump']:
            payload = family.to_dict()
        else:
            payload = {
                'd': family.d,
                'td': str(family.td),
                'c_sd': family.sd.c.to_list(),
                'td_torelli': family.td.is_torelli,
            }
        payload['sw_zero'] = value.to_dict()
        if self.options['lift']:
            payload['lift'] = blowup_lift(family, self.options['lift'], engine=engine).to_dict()
        return payload, None, False

    def cmd_sw_oq(self):
        text = self.options['manifold']
        manifold = parse_manifold(text) if text else base_manifold()
        f = self.diffeo(manifold)
        result = sw_OQ(f, self.options['q'], self.options['bound'], engine=self.engine(),
                       progress=self.options['verbose'])
        frame = pd.DataFrame(
            [{'c': str(s), 'kind': value.kind.value, 'value': value.value if value.is_certified else 'unknown'}
             for s, value in result.contributions],
            columns=['c', 'kind', 'value'],
        )
        payload = {'manifold': str(manifold), 'diffeo': str(f), **result.to_dict()}
        return payload, frame, False

    def execute(self):
        handler = getattr(self, 'cmd_' + self.query.subcommand.replace('-', '_'))
        payload, frame, signed = handler()
        write(payload, frame, out=self.options['out'], fmt=self.options['format'], signed=signed)


def error_payload(error: Exception) -> dict:
    data = {'type': type(error).__name__, 'message': str(error)}
    if isinstance(error, ParseError) and error.offset is not None:
        data['offset'] = error.offset
    return {'error': data}


def run(query: Query) -> int:
    """Execute a query; 0 on success, 1 on computation and I/O errors, 2 on usage and parse errors."""
    try:
        SWCalculator(query).execute()
    except (UsageError, ParseError) as e:
        sys.stdout.write(to_json(error_payload(e)))
        return 2
    except (SWCalcError, OSError) as e:
        logger.error(f"{query.subcommand} failed: {e}")
        sys.stdout.write(to_json(error_payload(e)))
        return 1
    return 0


def configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.INFO if verbose else DEFAULT_LOG_LEVEL,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Start the application."""
    try:
        query = Query.from_argv(sys.argv[1:] if argv is None else argv)
    except UsageError as e:
        sys.stdout.write(to_json(error_payload(e)))
        return 2
    configure_logging(query.get('verbose', False))
    logger.info(f"========| {query} |========")
    return run(query)


if __name__ == "__main__":
    sys.exit(main())
