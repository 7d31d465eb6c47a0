import pandas as pd

from algorithm.construction.Coset import sweep_coset
from algorithm.construction.Families import davis_jedwab_family
from algorithm.errors import VerificationError
from algorithm.sequence.Correlation import star
from algorithm.sequence.Phi import psi
from algorithm.spectral.Envelope import EnvelopeConfig
from app.config import AppConfig
from app.io.Report import CommandReport


STAR_TOL = 1e-9
ENVELOPE_TOL = 1e-4


def register(subparsers) -> None:
    parser = subparsers.add_parser('golay', help="Golay cosets of the quadratic chain (m!/2 representatives)")
    parser.add_argument('-q', type=int, required=True, help="even alphabet size")
    parser.add_argument('-m', type=int, required=True, help="number of variables, 2 <= m <= 8")
    parser.add_argument('--verify-envelope', action='store_true', help="sweep every coset and check PMEPR <= 2")
    parser.add_argument('-L', '--oversampling', type=int, default=AppConfig.DEFAULT_OVERSAMPLING)
    parser.set_defaults(run=run)


def run(args) -> CommandReport:
    if not 2 <= args.m <= 8:
        raise ValueError(f"golay needs 2 <= m <= 8, got m={args.m}")
    report = CommandReport('golay', {'q': args.q, 'm': args.m, 'verify_envelope': args.verify_envelope,
                                     'oversampling': args.oversampling})
    cfg = EnvelopeConfig(oversampling=args.oversampling, refine_tol=AppConfig.REFINE_TOL)
    target = 1 << (args.m + 1)

    rows = []
    for rep in davis_jedwab_family(args.q, args.m):
        value = star(psi(rep.gbf), psi(rep.companion))
        if abs(value - target) > STAR_TOL:
            raise VerificationError(f"star(Psi(f), Psi(f')) = {value} for {rep.gbf}, expected {target}")
        row = {'pi': ' '.join(map(str, rep.pi)), 'f': str(rep.gbf), 'star': value}
        if args.verify_envelope:
            mode = 'exhaustive' if rep.coset_size <= AppConfig.EXHAUSTIVE_SWEEP_CAP else 'sample'
            summary = sweep_coset(rep, cfg, mode=mode, sample_size=AppConfig.SAMPLE_SIZE,
                                  seed=AppConfig.SAMPLE_SEED, cap=AppConfig.ENUMERATE_CAP)
            if summary.measured_max > 2 + ENVELOPE_TOL:
                raise VerificationError(f"Coset of {rep.gbf} reaches PMEPR {summary.measured_max} above 2")
            row['measured_max'] = summary.measured_max
        rows.append(row)

    report.table = pd.DataFrame(rows)
    report.payload = {'family': 'golay', 'count': len(rows), 'star_target': target, 'representatives': rows}
    if args.verify_envelope:
        report.payload['max_measured'] = max(row['measured_max'] for row in rows)
    return report
