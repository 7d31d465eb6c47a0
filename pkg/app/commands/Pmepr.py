from algorithm.sequence.CxSeq import CxSeq
from algorithm.spectral.Envelope import EnvelopeConfig, pmepr, pmepr_upper_bound_star
from app.config import AppConfig
from app.io.Formats import read_sequence
from app.io.Report import CommandReport


def register(subparsers) -> None:
    parser = subparsers.add_parser('pmepr', help="Oversampled PMEPR of a sequence")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('-f', '--file', help="sequence text file")
    source.add_argument('--all-ones', action='store_true', help="use the all-ones sequence of length n")
    parser.add_argument('-n', type=int, help="length of the all-ones sequence")
    parser.add_argument('-q', type=int, default=4, help="alphabet of integer entries in the file")
    parser.add_argument('--companion', help="second sequence file; reports star(A, B)/n as an upper bound")
    parser.add_argument('-L', '--oversampling', type=int, default=AppConfig.DEFAULT_OVERSAMPLING)
    parser.add_argument('--no-refine', action='store_true')
    parser.set_defaults(run=run)


def run(args) -> CommandReport:
    if args.all_ones:
        if args.n is None or args.n < 1:
            raise ValueError("--all-ones needs a positive -n")
        seq = CxSeq.ones(args.n)
    else:
        seq = read_sequence(args.file, args.q)
    report = CommandReport('pmepr', {'file': args.file, 'all_ones': args.all_ones, 'n': args.n, 'q': args.q,
                                     'companion': args.companion, 'oversampling': args.oversampling,
                                     'refine': not args.no_refine})
    estimate = pmepr(seq, EnvelopeConfig(oversampling=args.oversampling, refine=not args.no_refine,
                                          refine_tol=AppConfig.REFINE_TOL))
    bound = None
    if args.companion is not None:
        bound = pmepr_upper_bound_star(seq, read_sequence(args.companion, args.q))
        report.ok = estimate.grid_max <= bound + 1e-6
    report.payload = estimate.to_json(star_bound=bound)
    return report
