"""CLI entrypoint for exact osp(1|2n) link and 3-manifold invariants."""
from typing import List, Optional
import argparse
import importlib
import logging
import os
import sys

from pydantic import ValidationError

from ospq.config import load_limits
from ospq.errors import OspqError, ParseError
from ospq.schemas import JobSpec

log = logging.getLogger("ospq")

TASKS = [
    "invariant",
    "tables",
    "verify",
    "tangle_eval",
]


def run_task(name: str, job: JobSpec) -> int:
    if name not in TASKS:
        raise ValueError(f"Unknown task: {name}")

    module_name = f"tasks.{name}"
    mod = importlib.import_module(module_name)
    # Each module exposes run(job) -> exit status
    return mod.run(job)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact invariants from quantum osp(1|2n) at roots of unity")
    parser.add_argument("task", choices=[t.replace("_", "-") for t in TASKS], help="Task to run")
    parser.add_argument("--n", type=int, default=None, help="Rank n of osp(1|2n) (default 1)")
    parser.add_argument("--N", type=int, default=None, help="Order N of the root of unity q (default 10)")
    parser.add_argument("-f", "--file", default=None, help="Input link (JSON) or diagram (text) file")
    parser.add_argument("--format", choices=["text", "json", "pdf"], default="text", help="Output format")
    parser.add_argument("--output", default=None, help="Output path (stdout when omitted; required location for pdf)")
    parser.add_argument("--parallel", type=int, default=None, help="Worker processes for coloring sums")
    parser.add_argument("--suite", default=None, help="Comma-separated verify suites (default all)")
    parser.add_argument("--log-level", default="WARNING", help="Logging level (DEBUG, INFO, WARNING, ...)")
    return parser


def report_error(exc: OspqError, fmt: str) -> None:
    if fmt == "json":
        print(exc.to_record().model_dump_json(indent=2, exclude_none=True))
    else:
        print("Failed to run task:", exc.message, file=sys.stderr)
        if exc.details:
            print(f"  {exc.details}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    task = args.task.replace("-", "_")

    try:
        parallel = args.parallel if args.parallel is not None else load_limits().default_parallel
        try:
            job = JobSpec(
                n=args.n, N=args.N, task=task, input_path=args.file, output_path=args.output,
                format=args.format, parallel=parallel, suite=args.suite,
            )
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(p) for p in first["loc"])
            raise ParseError(f"invalid argument {where}: {first['msg']}") from None

        if job.output_path:
            out_dir = os.path.dirname(os.path.abspath(job.output_path))
            if out_dir and not os.path.exists(out_dir):
                os.makedirs(out_dir, exist_ok=True)
        code = run_task(task, job)
        log.info("task %s finished with status %d", task, code)
        return code
    except OspqError as e:
        report_error(e, args.format)
        return e.exit_code
    except Exception as e:
        log.debug("unexpected failure", exc_info=True)
        print("Failed to run task:", e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
