#!/usr/bin/env python
"""Script to rerun every published computation at full scale.

Usage:
    python scripts/reproduce_all.py [OUT_DIR] [JOBS]

Each computation is run through the command-line front end and its run
record is written to OUT_DIR/<name>.json (default: ./records). The
Fermat-quotient scan checkpoints into OUT_DIR so an interrupted run resumes.
"""

import logging
import sys
from pathlib import Path

# Add the project root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from sympy import primerange

from src.core import claims
from src.main import run_command

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def reproductions(out_dir: Path) -> dict[str, list[str]]:
    """Argument vectors of the full-scale runs, keyed by record name."""
    q_set = ",".join(map(str, sorted(claims.EXCEPTIONAL_TABLE)))
    return {
        "exceptional_pairs": ["scan", "--b-max", str(claims.EXCEPTIONAL_TABLE_B_MAX), "--q", q_set],
        "wieferich": ["wieferich", "--p-max", str(claims.WIEFERICH_P_MAX)],
        "fermat_quotients": [
            "fermatq",
            "--b-max",
            str(claims.FERMAT_QUOTIENT_B_MAX),
            "--p-max",
            str(claims.FERMAT_QUOTIENT_P_MAX),
            "--checkpoint",
            str(out_dir / "fermatq.checkpoint.json"),
        ],
        "bennett_grid": [
            "bennett",
            "--x",
            f"2..{claims.CONDITION_GRID_X_MAX}",
            "--q",
            ",".join(map(str, primerange(3, claims.CONDITION_GRID_Q_MAX + 1))),
        ],
        "cubic_check": ["cfrac", "--x", "2..10", "--y-limit", str(5 * 10**6)],
        "resolved_bases": ["verify-b"],
        "brute_equation": ["brute", "--q", "2,3,5,7", "--b", ",".join(map(str, claims.RESOLVED_BASES))],
        "brute_xyz": ["brute", "--q", "3,5,7", "--x-max", "100", "--y-max", "1000"],
    }


def main() -> None:
    """Run every reproduction and write one record file each."""
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("records")
    jobs = sys.argv[2] if len(sys.argv) > 2 else "1"
    out_dir.mkdir(parents=True, exist_ok=True)

    failures = {}
    for name, argv in reproductions(out_dir).items():
        logger.info(f"Running {name}: {' '.join(argv)}")
        code = run_command([*argv, "--jobs", jobs, "--log-level", "INFO", "--out", str(out_dir / f"{name}.json")])
        if code != 0:
            logger.warning(f"{name} finished with exit code {code}")
            failures[name] = code

    logger.info(f"Records written to {out_dir}")
    if failures:
        logger.warning(f"Runs with a non-zero exit code: {failures}")
        sys.exit(1)


if __name__ == "__main__":
    main()
