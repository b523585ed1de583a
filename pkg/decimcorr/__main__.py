import argparse
import importlib.metadata
import logging
import platform
import sys
from typing import List, Optional

from decimcorr.config import FORMATS, MODES, CliConfig
from decimcorr.errors import DecimcorrError
from decimcorr.utils import get_writer, optional_int, str2bool

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _version() -> str:
    try:
        return importlib.metadata.version("decimcorr")
    except importlib.metadata.PackageNotFoundError:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    # fmt: off
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=3, help="odd k >= 3; the field is GF(2^2k)")
    common.add_argument("--l", type=int, default=1, help="odd l with 0 < l < k and gcd(k, l) = 1")
    common.add_argument("--modulus", type=str, default=None, help="primitive modulus polynomial as a hex bit-vector (e.g. 0x43); smallest primitive polynomial by default")
    common.add_argument("--format", "-f", type=str, default="json", choices=FORMATS, help="output format")
    common.add_argument("--output_path", "-o", type=str, default=None, help="file to write the report to; stdout by default")
    common.add_argument("--threads", type=optional_int, default=0, help="worker threads for the shift sweeps; 0 uses DECIMCORR_THREADS, then the physical core count")
    common.add_argument("--verbose", type=str2bool, default=False, help="whether to print out progress and debug messages to stderr")

    parser = argparse.ArgumentParser(prog="decimcorr", formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument("--version", "-V", action="version", version=f"%(prog)s {_version()}", help="Show decimcorr version information and exit")
    parser.add_argument("--python-version", "-P", action="version", version=f"Python {platform.python_version()} ({platform.python_implementation()})", help="Show python version information and exit")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    verify = subparsers.add_parser("verify", parents=[common], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="reconcile brute force against every closed-form claim")
    verify.add_argument("--mode", type=str, default="full", choices=MODES, help="full sweeps every shift (GF(2^14) at most); sampled evaluates a stratified random subset")
    verify.add_argument("--sample_size", type=int, default=10000, help="number of shifts evaluated in sampled mode")
    verify.add_argument("--seed", type=int, default=0, help="seed of the shift sampler")

    subparsers.add_parser("distribution", parents=[common], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="exact cross-correlation distribution over all shifts")
    subparsers.add_parser("sequence", parents=[common], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="dump one period of u and of the decimated v")
    subparsers.add_parser("sums", parents=[common], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="quadratic form table T(a, b) for b in {0, delta, delta^2}")
    subparsers.add_parser("field-info", parents=[common], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="summary of GF(2^2k) under the chosen modulus")
    # fmt: on
    return parser


def execute(config: CliConfig, threads: int) -> int:
    from decimcorr.fieldcore import field_info, field_new

    writer = get_writer(config.format, config.output_path)
    ctx = field_new(config.m, config.modulus)
    if config.subcommand == "field-info":
        writer(field_info(ctx), "field-info")
        return 0

    from decimcorr.seqgen import distribution, seq_params, sequence_payload

    params = seq_params(config.k, config.l, ctx)
    if config.subcommand == "distribution":
        writer(distribution(ctx, params, threads).to_payload(params), "distribution")
        return 0
    if config.subcommand == "sequence":
        writer(sequence_payload(ctx, params), "sequence")
        return 0
    if config.subcommand == "sums":
        from decimcorr.expsums import form_table

        writer([report.to_payload() for report in form_table(ctx, params)], "sums")
        return 0

    from decimcorr.verifier import verify

    report = verify(ctx, params, config.mode, config.sample_size, config.seed, threads)
    writer(report.to_payload(), "verify")
    if not report.match:
        for check in report.failed():
            print(f">>Check failed ({check.kind}): {check.id}: {check.detail}", file=sys.stderr)
        return 1
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv).__dict__
    except SystemExit as e:
        return 0 if e.code is None else int(e.code)

    logging.basicConfig(level=logging.INFO if args["verbose"] else logging.WARNING, format=LOG_FORMAT, stream=sys.stderr)

    try:
        config = CliConfig.from_args(args)
        from decimcorr.hardware import resolve_threads

        threads = resolve_threads(config.threads)
        if config.verbose:
            print(f">>Running {config.subcommand} for k={config.k}, l={config.l} with {threads} thread(s)", file=sys.stderr)
        return execute(config, threads)
    except DecimcorrError as e:
        print(f">>{type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


def cli():
    sys.exit(run())


if __name__ == "__main__":
    cli()
