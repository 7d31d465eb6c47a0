from algorithm.bounds.Tightness import tightness_verdict, trivial_bound_holds
from algorithm.construction.Coset import construct_coset_rep
from algorithm.construction.KernelCatalog import kernel_catalog
from algorithm.errors import VerificationError
from algorithm.spectral.Envelope import EnvelopeConfig
from algorithm.spectral.Wht import coset_lower_bound, papr_p
from app.config import AppConfig
from app.io.Formats import read_kernel
from app.io.Report import CommandReport


def register(subparsers) -> None:
    parser = subparsers.add_parser('coset', help="Build a coset representative from a kernel pair")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('-k', '--kernel', help="kernel JSON file {\"a\": gbf, \"b\": gbf}")
    source.add_argument('--catalog', help="name of a catalogued kernel, e.g. trivial or holzmann-kharaghani")
    parser.add_argument('-q', type=int, default=4, help="alphabet of the catalogued kernel")
    parser.add_argument('-m', type=int, required=True)
    parser.add_argument('--pi', help="comma-separated permutation of range(m); identity by default")
    parser.add_argument('--sweep', action='store_true', help="measure the coset and give a tightness verdict")
    parser.add_argument('--budget', type=int, default=AppConfig.EXHAUSTIVE_SWEEP_CAP,
                        help="largest coset swept exhaustively; larger ones are sampled")
    parser.add_argument('--samples', type=int, default=AppConfig.SAMPLE_SIZE)
    parser.add_argument('--seed', type=int, default=AppConfig.SAMPLE_SEED)
    parser.add_argument('--tol', type=float, default=AppConfig.TIGHTNESS_TOL,
                        help="tight iff the measured maximum is within tol of the upper bound")
    parser.add_argument('-L', '--oversampling', type=int, default=AppConfig.DEFAULT_OVERSAMPLING)
    parser.set_defaults(run=run)


def _kernel(args):
    if args.kernel is not None:
        return read_kernel(args.kernel)
    catalog = kernel_catalog(args.q, include_gamma_delta=False)
    if args.catalog not in catalog:
        raise ValueError(f"Unknown kernel {args.catalog!r}; available: {', '.join(sorted(catalog))}")
    return catalog[args.catalog]


def run(args) -> CommandReport:
    kernel = _kernel(args)
    pi = tuple(range(args.m)) if args.pi is None else tuple(int(p) for p in args.pi.split(','))
    report = CommandReport('coset', {'kernel': args.kernel, 'catalog': args.catalog, 'q': args.q, 'm': args.m,
                                     'pi': list(pi), 'sweep': args.sweep, 'budget': args.budget,
                                     'samples': args.samples, 'seed': args.seed, 'tol': args.tol,
                                     'oversampling': args.oversampling})
    rep = construct_coset_rep(kernel, args.m, pi)
    if not trivial_bound_holds(rep):
        raise VerificationError(f"Bound {rep.upper_bound} exceeds 2^(k+1) for {kernel}")

    payload = rep.to_json()
    payload['f'] = str(rep.gbf)
    if rep.q ** rep.m <= AppConfig.WHT_CAP:
        lower = coset_lower_bound(rep.gbf)
        papr = papr_p(rep.gbf, rep.q)
        if papr > rep.upper_bound + 1e-6:
            raise VerificationError(f"WHT PAPR {papr} exceeds the coset bound {rep.upper_bound}")
        payload.update({'wht_lower_bound': lower, 'papr': papr})
    if args.sweep:
        verdict = tightness_verdict(rep, budget=args.budget, sample_size=args.samples, seed=args.seed,
                                    tol=args.tol, cfg=EnvelopeConfig(oversampling=args.oversampling,
                                                                     refine_tol=AppConfig.REFINE_TOL))
        payload.update(verdict.to_json())
    report.payload = payload
    return report
