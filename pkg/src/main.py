"""Command-line entry point."""

import argparse
import csv
import io
import logging
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError as PydanticValidationError

from src.commands import bennett, brute, cfrac, fermatq, scan, threshold, verify_b, wieferich
from src.commands.base import Command, CommandOutcome
from src.core.config import Settings
from src.core.errors import EXIT_CLAIM_VIOLATION, EXIT_INVALID_INPUT, EXIT_OK, ToolkitError
from src.schemas.records import ErrorPayload, RecordStatus, RunRecord

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

COMMANDS: list[Command] = [
    scan.command,
    wieferich.command,
    fermatq.command,
    bennett.command,
    cfrac.command,
    verify_b.command,
    brute.command,
    threshold.command,
]

# Flags that shape the output rather than the computation
_OUTPUT_FLAGS = {"command", "format", "out", "log_level"}


def configure_logging(level: str) -> None:
    """Send logs to stderr in the toolkit format; stdout carries records only."""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, stream=sys.stderr, force=True)


def build_parser() -> argparse.ArgumentParser:
    """Create the top-level parser with one subparser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json", help="Output format")
    common.add_argument("--out", type=Path, help="Write records to this file instead of stdout")
    common.add_argument("--jobs", type=int, help="Worker processes")
    common.add_argument("--precision-cap", type=int, help="Interval precision cap in bits")
    common.add_argument("--valuation-cap", type=int, help="Largest valuation tried modulo prime powers")
    common.add_argument("--log-level", default="WARNING", help="Log level for stderr")

    parser = argparse.ArgumentParser(
        prog="diophantine-toolkit",
        description="Verification toolkit for (2^k - 1)(b^k - 1) = y^q and (X^q - 1)(Y^q - 1) = Z^q",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command.name, help=command.help, parents=[common])
        command.add_arguments(sub)
        sub.set_defaults(handler=command)
    return parser


def _parameter_echo(args: argparse.Namespace, outcome: CommandOutcome | None) -> dict[str, object]:
    echo: dict[str, object] = {}
    for key, value in sorted(vars(args).items()):
        if key in _OUTPUT_FLAGS or key == "handler":
            continue
        if isinstance(value, range):
            value = [value.start, value.stop - 1]
        elif isinstance(value, Path):
            value = str(value)
        elif isinstance(value, int) and abs(value) >= 2**63:
            value = str(value)
        echo[key] = value
    if outcome is not None:
        echo.update(outcome.extra_parameters)
    return echo


def _render(record: RunRecord, command: Command, fmt: str) -> str:
    if fmt == "json":
        return record.model_dump_json(by_alias=True) + "\n"

    if record.status in (RecordStatus.OK, RecordStatus.CLAIM_VIOLATION):
        header, body = command.rows(record.payload)
        lines = command.summary(record.payload)
    else:
        message = record.payload.message if isinstance(record.payload, ErrorPayload) else ""
        header, body = ["status", "message"], [[record.status.value, message]]
        lines = [f"{record.status.value}: {message}"]

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buffer.getvalue()

    lines.extend(f"claim violated: {v}" for v in record.violations)
    lines.append(f"[{record.command} {record.status.value} in {record.elapsed_ms:.0f} ms]")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)


def run_command(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run one subcommand and emit its run record.

    Returns:
        int: 0 ok, 1 a published claim was contradicted, 2 invalid input,
        3 precision exhausted.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INVALID_INPUT

    configure_logging(args.log_level)
    command: Command = args.handler
    started = time.perf_counter()
    outcome: CommandOutcome | None = None

    overrides = {
        "log_level": args.log_level,
        "jobs": args.jobs,
        "precision_cap_bits": args.precision_cap,
        "valuation_cap": args.valuation_cap,
    }
    settings: Settings | None = None
    error: ToolkitError | None = None
    try:
        settings = Settings(**{k: v for k, v in overrides.items() if v is not None})
    except PydanticValidationError as e:
        error = ToolkitError(
            f"Invalid settings: {e.error_count()} errors",
            details=[{"loc": list(map(str, err["loc"])), "msg": err["msg"]} for err in e.errors()],
        )

    if settings is not None:
        try:
            outcome = command.run(args, settings)
        except ToolkitError as e:
            error = e
        except Exception:
            logger.exception("Unexpected error in %s", command.name)
            raise

    elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    if error is not None:
        logger.warning(
            "%s failed: %s",
            command.name,
            error.message,
            extra={"error_type": error.error_type, "details": error.details},
        )
        record = RunRecord(
            command=command.name,
            parameters=_parameter_echo(args, None),
            version=Settings.model_fields["version"].default,
            payload=ErrorPayload(message=error.message, details=error.details),
            status=RecordStatus(error.error_type),
            elapsed_ms=elapsed_ms,
        )
        exit_code = error.exit_code
    else:
        assert outcome is not None and settings is not None
        for violation in outcome.violations:
            logger.error("claim violated: %s", violation)
        record = RunRecord(
            command=command.name,
            parameters=_parameter_echo(args, outcome),
            version=settings.version,
            payload=outcome.payload,
            violations=outcome.violations,
            status=RecordStatus.CLAIM_VIOLATION if outcome.violations else RecordStatus.OK,
            elapsed_ms=elapsed_ms,
        )
        exit_code = EXIT_CLAIM_VIOLATION if outcome.violations else EXIT_OK

    _emit(_render(record, command, args.format), args.out)
    return exit_code


def main() -> None:
    """Console-script entry point."""
    sys.exit(run_command())


if __name__ == "__main__":
    main()
