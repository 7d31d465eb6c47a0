import logging

import pandas as pd

from algorithm.search.KernelSearch import SearchConfig, run_search
from app.config import AppConfig
from app.io.Report import CommandReport


def register(subparsers) -> None:
    parser = subparsers.add_parser('search', help="Exhaustive search for low-merit kernel pairs")
    parser.add_argument('-q', type=int, required=True)
    parser.add_argument('-k', type=int, required=True)
    parser.add_argument('--degree-cap', type=int, help="restrict a and b to this ANF degree")
    parser.add_argument('--threshold', type=float, default=4.0, help="keep merit / 2^k below this value")
    parser.add_argument('--no-pruning', action='store_true', help="score every raw pair")
    parser.add_argument('--work-cap', type=int, default=AppConfig.SEARCH_WORK_CAP)
    parser.add_argument('--jsonl', help="write each found pair as one JSON line to this file")
    parser.add_argument('--resume', metavar='CHECKPOINT', help="checkpoint file to resume from and update")
    parser.set_defaults(run=run)


def run(args) -> CommandReport:
    cfg = SearchConfig(q=args.q, k=args.k, degree_cap=args.degree_cap, merit_threshold=args.threshold,
                       workers=args.workers, canonical_pruning=not args.no_pruning, work_cap=args.work_cap)
    report = CommandReport('search', cfg.identity())
    logging.info(f"Searching q={cfg.q}, k={cfg.k} with {cfg.workers} worker(s)")

    if args.jsonl:
        # A resumed run appends to the pairs already written
        with open(args.jsonl, 'a' if args.resume else 'w') as stream:
            result = run_search(cfg, checkpoint=args.resume, jsonl=stream, verbose=args.verbose > 0)
    else:
        result = run_search(cfg, checkpoint=args.resume, verbose=args.verbose > 0)

    report.table = pd.DataFrame([{'a': str(pair.kernel.a), 'b': str(pair.kernel.b), 'merit': pair.merit,
                                  'bound': pair.merit / (1 << cfg.k), 'orbit_size': pair.orbit_size}
                                 for pair in result.found])
    report.payload = {**result.payload(), 'payload_hash': result.payload_hash(),
                      'completed_blocks': result.completed_blocks}
    return report
