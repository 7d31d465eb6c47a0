from algorithm.spectral.Wht import SCAN_CAP, conjecture_scan, wht
from app.config import AppConfig
from app.io.Formats import read_gbf
from app.io.Report import CommandReport


# Spectra above this many bits (m * log2 q) are summarized, never listed
LISTED_SPECTRUM_BITS = 20


def register(subparsers) -> None:
    parser = subparsers.add_parser('wht', help="Walsh-Hadamard spectrum and restricted PAPR of a function")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('-f', '--file', help="Gbf JSON file")
    source.add_argument('--conjecture-scan', action='store_true',
                        help="scan every function on m <= 3 variables for small restricted peaks")
    parser.add_argument('-p', type=int, help="restrict w to (q/p) Z_p^m; defaults to q")
    parser.add_argument('-q', type=int, default=4, help="alphabet of the conjecture scan")
    parser.add_argument('-m', type=int, default=2, help="variables of the conjecture scan")
    parser.add_argument('--spectrum', action='store_true', help="list |F(w)|^2 for every w")
    parser.set_defaults(run=run)


def run(args) -> CommandReport:
    if args.conjecture_scan:
        report = CommandReport('wht', {'conjecture_scan': True, 'q': args.q, 'm': args.m})
        report.payload = conjecture_scan(args.q, args.m, cap=SCAN_CAP).to_json()
        return report

    f = read_gbf(args.file)
    p = f.q if args.p is None else args.p
    report = CommandReport('wht', {'file': args.file, 'p': p, 'spectrum': args.spectrum})
    spectrum = wht(f, cap=AppConfig.WHT_CAP)
    power, argmax = spectrum.max_power()
    payload = {'q': f.q, 'm': f.m, 'p': p, 'papr': spectrum.papr(p), 'papr_full': spectrum.papr(),
               'max_power': power, 'argmax_w': list(argmax)}
    bits = f.m * (f.q.bit_length() - 1)
    if args.spectrum and bits <= LISTED_SPECTRUM_BITS:
        payload['power'] = spectrum.power().round(12).tolist()
    report.payload = payload
    return report
