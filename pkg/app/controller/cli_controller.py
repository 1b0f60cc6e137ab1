import argparse
import logging
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app.config import get_settings
from app.exceptions import ConfigError
from app.models import ScenarioConfig
from app.service.scenario_service import scenario_service
from app.utils.csv_io import format_float, write_json, write_trace_csv

settings = get_settings()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2


def load_config(path: str) -> ScenarioConfig:
    """
    시나리오 JSON 로드 + 검증

    Raises:
        ConfigError: unreadable file or one message line per invalid field
    """
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}", {"config": str(path)})

    try:
        return ScenarioConfig.model_validate_json(raw)
    except ValidationError as e:
        fields = {
            ".".join(str(part) for part in err["loc"]) or "config": err["msg"]
            for err in e.errors()
        }
        message = "\n".join(f"{field}: {reason}" for field, reason in fields.items())
        raise ConfigError(f"invalid config {path}\n{message}", fields)


def sweep_file_name(parameter: str, value: float) -> str:
    if parameter == "N":
        return f"N={int(value)}.csv"
    return f"{parameter}={format_float(value)}.csv"


# ============================================
# Commands
# ============================================

def trace(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    rows = scenario_service.run_trace(cfg)
    out = args.out or str(Path(settings.OUTPUT_DIR) / "trace.csv")
    path = write_trace_csv(rows, out)
    logger.info(f"✅ Wrote {len(rows)} rows to {path}")
    return EXIT_OK


def sweep(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    traces = scenario_service.run_sweep(cfg)
    out_dir = Path(args.out_dir or settings.OUTPUT_DIR)

    # written one after another, in ascending sweep value
    for value, rows in traces.items():
        path = write_trace_csv(rows, out_dir / sweep_file_name(cfg.sweep.parameter, value))
        logger.info(f"✅ Wrote {path}")
    summary = scenario_service.summarize(cfg, traces)
    write_json(summary, out_dir / "summary.json")
    logger.info(f"✅ Wrote {len(traces)} traces and summary.json to {out_dir}")
    return EXIT_OK


def verify(args: argparse.Namespace) -> int:
    report = scenario_service.run_verify(args.seed, args.cases, args.tolerance)
    out = args.out or str(Path(settings.OUTPUT_DIR) / f"verify-seed{args.seed}.json")
    path = write_json(report, out)
    if not report.passed:
        logger.error(f"❌ Verification failed: {report.failures}/{len(report.entries)} checks, report at {path}")
        return EXIT_VERIFY_FAILED
    logger.info(f"✅ Verification passed, report at {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.main",
        description="Entropic uncertainty of two qubits decohering in an XY spin chain with DM interaction",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_trace = commands.add_parser("trace", help="single trajectory to CSV")
    p_trace.add_argument("--config", required=True, help="scenario JSON")
    p_trace.add_argument("--out", help="CSV path (default: OUTPUT_DIR/trace.csv)")
    p_trace.set_defaults(handler=trace)

    p_sweep = commands.add_parser("sweep", help="one CSV per sweep value plus summary.json")
    p_sweep.add_argument("--config", required=True, help="scenario JSON with a 'sweep' section")
    p_sweep.add_argument("--out-dir", help="output directory (default: OUTPUT_DIR)")
    p_sweep.set_defaults(handler=sweep)

    p_verify = commands.add_parser("verify", help="closed forms vs the generic pipeline")
    p_verify.add_argument("--seed", type=int, default=settings.VERIFY_SEED)
    p_verify.add_argument("--cases", type=int, default=settings.VERIFY_CASES)
    p_verify.add_argument("--tolerance", type=float, help="override both tolerances (0 forces failures)")
    p_verify.add_argument("--out", help="JSON report path")
    p_verify.set_defaults(handler=verify)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, dispatch and map typed errors to exit codes."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as e:
        logger.error(f"❌ {e}")
        return EXIT_CONFIG_ERROR
