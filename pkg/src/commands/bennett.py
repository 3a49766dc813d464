"""`bennett`: irrationality-measure certificates over (X, q) cells."""

import argparse

from sympy import isprime

from src.commands.base import Command, CommandOutcome, Rows, int_list, int_range
from src.core import claims
from src.core.config import Settings
from src.core.errors import InvalidInputError
from src.core.intervals import PrecisionConfig
from src.core.sharding import ShardConfig
from src.schemas.bennett import BennettReport
from src.schemas.common import Verdict
from src.services.bennett_service import BennettService


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--x", type=int_range, required=True, help="X or an inclusive range A..B")
    parser.add_argument("--q", type=int_list, required=True, help="Comma-separated odd primes")


def published_violations(report: BennettReport) -> list[str]:
    violations = []
    for cell in report.conditions:
        expected = (cell.X, cell.q) not in claims.CONDITION_FAILURES
        if cell.condition_ok != expected:
            violations.append(f"condition at (X, q) = ({cell.X}, {cell.q}) is {cell.condition_ok}, expected {expected}")
    for cert in report.certificates:
        if cert.verdict is not Verdict.NO_SOLUTION:
            violations.append(f"(X, q) = ({cert.X}, {cert.q}): {cert.verdict.value}")
    if report.quintic is not None:
        if report.quintic.y_max > report.quintic.published_y_bound:
            violations.append(
                f"(2, 5): derived Y bound {report.quintic.y_max} exceeds {report.quintic.published_y_bound}"
            )
        if report.quintic.verdict is not Verdict.NO_SOLUTION:
            violations.append(f"(2, 5): {report.quintic.verdict.value}")
    return violations


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    service = BennettService(PrecisionConfig.from_settings(settings))
    xs: range = args.x
    qs = sorted(set(args.q))
    if xs.start < 2:
        raise InvalidInputError(f"X must be >= 2, got {xs.start}")
    bad = [q for q in qs if q < 3 or not isprime(q)]
    if bad:
        raise InvalidInputError(f"q must be odd primes, got {bad}")

    report = BennettReport(
        conditions=service.condition_grid(xs, qs),
        certificates=service.certificate_grid(xs, qs, ShardConfig.from_settings(settings).jobs),
    )
    if 2 in xs and 5 in qs:
        report.quintic = service.quintic_base_two_check()

    return CommandOutcome(
        payload=report,
        violations=published_violations(report),
        extra_parameters={"x": [xs.start, xs.stop - 1], "q": qs},
    )


def rows(report: BennettReport) -> Rows:
    header = ["X", "q", "condition_ok", "lambda_lower", "lambda_upper", "log_upper", "log_lower", "verdict", "shape_ok"]
    certificates = {(c.X, c.q): c for c in report.certificates}
    body = []
    for cell in report.conditions:
        cert = certificates.get((cell.X, cell.q))
        if cert is None or cert.lambda_ is None or cert.b_upper is None or cert.log_b_lower is None:
            body.append([cell.X, cell.q, cell.condition_ok, "", "", "", "", "", ""])
            continue
        body.append(
            [
                cell.X,
                cell.q,
                cell.condition_ok,
                cert.lambda_.lower,
                cert.lambda_.upper,
                cert.b_upper.log_bound.upper,
                cert.log_b_lower.lower,
                cert.verdict.value,
                cert.shape_ok,
            ]
        )
    return header, body


def summary(report: BennettReport) -> list[str]:
    failing = [(c.X, c.q) for c in report.conditions if not c.condition_ok]
    verdicts: dict[str, int] = {}
    for cert in report.certificates:
        verdicts[cert.verdict.value] = verdicts.get(cert.verdict.value, 0) + 1
    lines = [
        f"condition fails at: {failing}",
        f"certificates: {verdicts}",
    ]
    lines.extend(f"  discrepancy: {d}" for cert in report.certificates for d in cert.discrepancies)
    if report.quintic is not None:
        lines.append(
            f"(2, 5): Y < {report.quintic.threshold.upper}, Y_max = {report.quintic.y_max}, "
            f"{report.quintic.verdict.value}"
        )
    return lines


command = Command(
    name="bennett",
    help="Irrationality-measure certificates for (X^q - 1)(Y^q - 1) = Z^q",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
