from algorithm.bounds.ClassTable import class_table_frame, class_tables, classify_alpha_beta
from app.io.Report import CommandReport


def register(subparsers) -> None:
    parser = subparsers.add_parser('classify', help="PMEPR classes of the alpha/beta cosets")
    parser.add_argument('-q', type=int, required=True)
    parser.add_argument('-p', type=int, required=True, help="phase resolution of alpha and beta (2, 4 or 8)")
    parser.add_argument('-m', type=int, help="length exponent for coset counts and lower bounds")
    parser.add_argument('--alpha', type=int, help="classify a single (alpha, beta) instead of the whole table")
    parser.add_argument('--beta', type=int)
    parser.add_argument('--csv', help="also write the table to this CSV file")
    parser.set_defaults(run=run)


def run(args) -> CommandReport:
    report = CommandReport('classify', {'q': args.q, 'p': args.p, 'm': args.m,
                                        'alpha': args.alpha, 'beta': args.beta})
    if (args.alpha is None) != (args.beta is None):
        raise ValueError("--alpha and --beta must be given together")
    if args.alpha is not None:
        rows = [classify_alpha_beta(args.q, args.p, args.alpha, args.beta)]
    else:
        rows = class_tables(args.q, args.p, args.m)

    frame = class_table_frame(rows, args.m)
    if args.csv:
        frame.to_csv(args.csv, index=False)
    report.table = frame
    report.payload = {'rows': frame.to_dict(orient='records'), 'classes': len(rows)}
    if args.m is not None:
        report.payload['total'] = int(sum(row.count(args.m) for row in rows))
    return report
