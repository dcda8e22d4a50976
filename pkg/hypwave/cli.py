"""Command line surface: ``python -m hypwave <command> ...``.

Every command prints one JSON document (or writes it to ``--report``) and
returns an exit code: 0 success, 2 parameter error, 3 file error, 4 failed
admissibility under ``--strict``.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from hypwave import __version__
from hypwave.config import Config
from hypwave.exceptions import AdmissibilityError, HypwaveError, ParameterError
from hypwave.schemas.cli_schema import CliConfig, ExperimentConfig
from hypwave.schemas.norm_schema import make_params
from hypwave.schemas.synth_schema import RngSpec
from hypwave.schemas.wavelet_schema import BUILTIN_WAVELETS, WaveletSpec
from hypwave.services.estimate import detect_anisotropy
from hypwave.services.field_core import make_grid, read_field, write_field
from hypwave.services.harness import EXPERIMENTS, run_experiment
from hypwave.services.hyperwavelet import (
    admissibility_check,
    forward,
    inverse,
    read_coefficients,
    write_coefficients,
)
from hypwave.services.norm_service import FIELD_SPACES, SEQUENCE_SPACES, NormService, parse_exponent
from hypwave.services.synth import (
    random_bandlimited,
    synth_cascade,
    synth_lemma1,
    synth_lemma2,
    synth_lemma3,
)

logger = logging.getLogger(__name__)

CHARACTERIZATIONS = ("general", "sobolev", "haar-F", "haar-B", "haar-Sobolev")


def _emit(payload: dict, cfg: CliConfig) -> None:
    text = json.dumps(payload, indent=2)
    if cfg.report is not None:
        cfg.report.write_text(text + "\n")
        logger.info("report written to %s", cfg.report)
    else:
        print(text)


def _dimension(cfg: CliConfig) -> int:
    return cfg.d or (cfg.alpha.d if cfg.alpha is not None else 2)


def _require(value, flag: str):
    if value is None:
        raise ParameterError(f"{flag} is required for this command")
    return value


def cmd_synth(args, cfg: CliConfig) -> dict:
    rng = RngSpec(seed=cfg.seed)
    truth = None
    if args.family == "cascade":
        grid = make_grid(_dimension(cfg), _require(cfg.J, "--J"))
        f, truth = synth_cascade(grid, cfg.s, cfg.alpha, rng, args.mode, WaveletSpec.builtin(args.wavelet))
    elif args.family == "bandlimited":
        grid = make_grid(_dimension(cfg), _require(cfg.J, "--J"))
        f = random_bandlimited(grid, args.band_cap, args.profile, rng)
    else:
        grid = make_grid(1, _require(cfg.J, "--J"))
        N = _require(args.N, "--N")
        if args.family == "lemma1":
            f, truth = synth_lemma1(grid, N, rng, args.basis)
        elif args.family == "lemma2":
            f, truth = synth_lemma2(grid, N, cfg.p)
        else:
            f, truth = synth_lemma3(grid, N)
    write_field(f, _require(cfg.output, "--out"))
    return {
        "out": str(cfg.output),
        "d": grid.d,
        "J": grid.J,
        "truth": truth.model_dump() if truth is not None else None,
    }


def cmd_transform(args, cfg: CliConfig) -> dict:
    source, target = _require(cfg.input, "--in"), _require(cfg.output, "--out")
    if args.inverse:
        f = inverse(read_coefficients(source))
        write_field(f, target)
        return {"out": str(target), "d": f.grid.d, "J": f.grid.J}
    c = forward(read_field(source), WaveletSpec.builtin(args.wavelet))
    write_coefficients(c, target)
    return {"out": str(target), "d": c.grid.d, "J": c.grid.J, "wavelet": c.spec.name, "coefficients": c.count}


def cmd_norm(args, cfg: CliConfig) -> dict:
    f = read_field(_require(cfg.input, "--in"))
    return NormService.evaluate(f, args.space, s=cfg.s, p=cfg.p, q=cfg.q, alpha=cfg.alpha, r=cfg.r)


def cmd_seqnorm(args, cfg: CliConfig) -> dict:
    c = read_coefficients(_require(cfg.input, "--in"))
    result = NormService.sequence(c, args.space, s=cfg.s, p=cfg.p, q=cfg.q, alpha=cfg.alpha, r=cfg.r)
    if args.space.startswith("sr"):
        result["admissible"] = None
        return result
    scale = "B" if args.space == "bt" else "F"
    characterization = f"haar-{scale}" if c.spec.kind == "haar" else "general"
    params = make_params(s=cfg.s, p=cfg.p, q=cfg.q, alpha=cfg.alpha, d=c.grid.d)
    report = admissibility_check(c.spec, params, characterization, scale)
    result["admissible"] = report.valid
    if cfg.strict and not report.valid:
        raise AdmissibilityError(f"{c.spec.name} coefficients do not characterize {args.space} at these parameters")
    return result


def cmd_detect(args, cfg: CliConfig) -> dict:
    source = _require(cfg.input, "--in")
    if Path(source).suffix == ".hwc":
        c = read_coefficients(source)
    else:
        c = forward(read_field(source), WaveletSpec.builtin(args.wavelet))
    result = detect_anisotropy(c, p=cfg.p, alpha_step=args.alpha_step, j_min=args.j_min, j_max=args.j_max)
    return result.model_dump()


def cmd_experiment(args, cfg: CliConfig) -> dict:
    params = {}
    if args.config is not None:
        config = ExperimentConfig.load(args.config)
        if config.experiment not in (None, args.name):
            raise ParameterError(f"config is for experiment {config.experiment!r}, not {args.name!r}")
        params = config.parameters
    report = run_experiment(args.name, params)
    if cfg.strict and report.parameters.get("in_range") is False:
        raise AdmissibilityError(f"{args.name}: parameters outside characterization range")
    return report.model_dump(mode="json", by_alias=True)


def cmd_admissibility(args, cfg: CliConfig) -> dict:
    params = make_params(s=cfg.s, p=cfg.p, q=cfg.q, alpha=cfg.alpha, d=_dimension(cfg))
    report = admissibility_check(WaveletSpec.builtin(args.wavelet), params, args.characterization, args.scale)
    if cfg.strict and not report.valid:
        raise AdmissibilityError(f"{args.wavelet} is not admissible for {report.characterization}")
    return report.model_dump()


def cmd_serve(args, cfg: CliConfig) -> None:
    import uvicorn

    uvicorn.run("hypwave.main:app", host=args.host, port=args.port)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="FFT worker cap (default: HYPWAVE_THREADS)")
    common.add_argument("--log-level", dest="log_level", default=None)
    common.add_argument("--strict", action="store_true", help="exit 4 when admissibility fails")
    common.add_argument("--report", type=Path, default=None, help="write the JSON result here instead of stdout")
    return common


def _norm_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s", type=float, default=0.0)
    parser.add_argument("--p", type=parse_exponent, default=2.0)
    parser.add_argument("--q", type=parse_exponent, default=2.0)
    parser.add_argument("--r", type=float, default=0.0, help="mixed smoothness (Sr spaces)")
    parser.add_argument("--alpha", default=None, help="comma list summing to d, e.g. 0.5,1.5")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypwave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hypwave {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    wavelets = sorted(BUILTIN_WAVELETS)

    synth = sub.add_parser("synth", parents=[common], help="generate a test field")
    synth.add_argument("--family", required=True, choices=("cascade", "bandlimited", "lemma1", "lemma2", "lemma3"))
    synth.add_argument("--d", type=int, default=None)
    synth.add_argument("--J", type=int, required=True)
    synth.add_argument("--N", type=int, default=None)
    synth.add_argument("--s", type=float, default=0.0)
    synth.add_argument("--p", type=parse_exponent, default=2.0)
    synth.add_argument("--alpha", default=None)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--mode", choices=("deterministic", "rademacher"), default="deterministic")
    synth.add_argument("--basis", choices=("modulated-window", "haar"), default="modulated-window")
    synth.add_argument("--band-cap", dest="band_cap", type=int, default=8)
    synth.add_argument("--profile", default="flat")
    synth.add_argument("--wavelet", choices=wavelets, default="haar")
    synth.add_argument("--out", dest="output", type=Path, required=True)

    transform = sub.add_parser("transform", parents=[common], help="hyperbolic wavelet analysis or synthesis")
    transform.add_argument("--wavelet", choices=wavelets, default="haar")
    transform.add_argument("--inverse", action="store_true")
    transform.add_argument("--in", dest="input", type=Path, required=True)
    transform.add_argument("--out", dest="output", type=Path, required=True)

    norm = sub.add_parser("norm", parents=[common], help="norm of a field file")
    norm.add_argument("--space", required=True, help=f"{', '.join(FIELD_SPACES)}, Lp, L<p>, Linf")
    _norm_flags(norm)
    norm.add_argument("--in", dest="input", type=Path, required=True)

    seqnorm = sub.add_parser("seqnorm", parents=[common], help="sequence norm of a coefficient file")
    seqnorm.add_argument("--space", required=True, choices=sorted(SEQUENCE_SPACES))
    _norm_flags(seqnorm)
    seqnorm.add_argument("--in", dest="input", type=Path, required=True)

    detect = sub.add_parser("detect", parents=[common], help="estimate (s, alpha) from level norms")
    detect.add_argument("--in", dest="input", type=Path, required=True)
    detect.add_argument("--wavelet", choices=wavelets, default="haar")
    detect.add_argument("--p", type=parse_exponent, default=2.0)
    detect.add_argument("--alpha-step", dest="alpha_step", type=float, default=0.05)
    detect.add_argument("--j-min", dest="j_min", type=int, default=2)
    detect.add_argument("--j-max", dest="j_max", type=int, default=None)

    experiment = sub.add_parser("experiment", parents=[common], help="run a named experiment")
    experiment.add_argument("name", choices=sorted(EXPERIMENTS))
    experiment.add_argument("--config", type=Path, default=None, help="JSON file with experiment parameters")

    admissibility = sub.add_parser("admissibility", parents=[common], help="check wavelet admissibility")
    admissibility.add_argument("--wavelet", choices=wavelets, default="haar")
    admissibility.add_argument("--characterization", choices=CHARACTERIZATIONS, default="general")
    admissibility.add_argument("--scale", choices=("F", "B"), default="F")
    admissibility.add_argument("--d", type=int, default=None)
    _norm_flags(admissibility)

    serve = sub.add_parser("serve", parents=[common], help="start the HTTP API")
    serve.add_argument("--host", default=Config.HOST)
    serve.add_argument("--port", type=int, default=Config.PORT)
    return parser


COMMANDS = {
    "synth": cmd_synth,
    "transform": cmd_transform,
    "norm": cmd_norm,
    "seqnorm": cmd_seqnorm,
    "detect": cmd_detect,
    "experiment": cmd_experiment,
    "admissibility": cmd_admissibility,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    threads = Config.THREADS
    try:
        cfg = CliConfig.from_namespace(args)
        Config.setup_logging(cfg.log_level)
        if cfg.threads is not None:
            Config.THREADS = cfg.threads
        payload = COMMANDS[args.command](args, cfg)
        if payload is not None:
            _emit(payload, cfg)
        return 0
    except HypwaveError as exc:
        print(f"hypwave: {exc.code.lower()}: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"hypwave: io: {exc}", file=sys.stderr)
        return 3
    finally:
        Config.THREADS = threads
