"""Command-line front end for nonrep."""

import argparse
import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator
from rich.console import Console

from nonrep import __version__
from nonrep.models.sequence import Sequence
from nonrep.models.tree import EdgeColoring, TreeShape
from nonrep.services import formats
from nonrep.services.chromatic_search import chromatic_index_exact, thue_chromatic_index
from nonrep.services.fk_search import default_length_cap, search_fk
from nonrep.services.kspecial import (
    construct_3k_plus_1,
    construct_3k_plus_2,
    corollary_3k3_sequence,
    find_k_bad,
    palindrome_free_block_sequence,
    s_n_c,
)
from nonrep.services.sequences import (
    block_expand,
    find_factor,
    find_palindrome,
    find_square,
    palindrome_free_thue,
    thue_aba_bab_free,
    thue_squarefree,
)
from nonrep.services.table import format_table_tsv, pi_table
from nonrep.services.trees import (
    corollary_small_h,
    derived_coloring,
    extend_t24_example,
    figure_coloring,
    find_repetitive_path,
    palindrome_free_level_coloring,
    sv_coloring_h2,
)
from nonrep.utils.config import Config
from nonrep.utils.errors import UncoloredEdgeError
from nonrep.utils.logging import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3

SEQUENCE_VARIANTS = ("squarefree", "palfree", "ababab", "3k1", "3k2", "3k3", "4k", "snc", "expand")
FIGURES = ("type1", "type2", "figure2")


class RunConfig(BaseModel):
    """Options of one invocation, validated before any computation starts."""

    command: str = Field(..., description="Top-level subcommand")
    action: Optional[str] = Field(default=None, description="Second-level subcommand")
    output_format: Literal["text", "json"] = Field(default="text")
    out: Optional[Path] = Field(default=None, description="File receiving the output")
    tee: bool = Field(default=False, description="Print to stdout as well as to --out")
    budget: Optional[float] = Field(default=None, gt=0, description="Wall-clock seconds per search")
    checkpoint: Optional[Path] = Field(default=None)
    resume: bool = Field(default=False)
    palette: Optional[int] = Field(default=None, ge=1)
    count_classes: bool = Field(default=False)

    @model_validator(mode="after")
    def reject_conflicting_flags(self) -> "RunConfig":
        """Reject flag combinations that have no meaning together."""
        if self.tee and self.out is None:
            raise ValueError("--tee needs --out")
        if self.resume and self.checkpoint is None:
            raise ValueError("--resume needs --checkpoint")
        if self.count_classes and self.palette is None:
            raise ValueError("--count-classes needs --palette")
        if self.command == "tree" and self.checkpoint is not None and self.palette is None:
            raise ValueError("--checkpoint needs --palette")
        return self

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: Config) -> "RunConfig":
        """Build from parsed arguments, resolving the budget through the config."""
        budget = config.budget_seconds(args.budget) if hasattr(args, "budget") else None
        return cls(
            command=args.command,
            action=getattr(args, "action", None),
            output_format=args.format,
            out=args.out,
            tee=args.tee,
            budget=budget,
            checkpoint=getattr(args, "checkpoint", None),
            resume=getattr(args, "resume", False),
            palette=getattr(args, "palette", None),
            count_classes=getattr(args, "count_classes", False),
        )


class Output:
    """Collects what a command prints and delivers it to stdout, to --out, or both."""

    def __init__(self, run: RunConfig, console: Console):
        """
        Initialize the Output.

        Args:
            run: The validated options.
            console: Console for stdout.
        """
        self.run = run
        self.console = console
        self._chunks: list[str] = []
        self._coloring: Optional[EdgeColoring] = None

    @property
    def as_json(self) -> bool:
        """Whether results are rendered as JSON."""
        return self.run.output_format == "json"

    def emit(self, text: str, payload: Any) -> None:
        """Add one result, given both as text and as a JSON-serializable payload."""
        self._chunks.append(json.dumps(payload) if self.as_json else text.rstrip("\n"))

    def emit_coloring(self, coloring: EdgeColoring) -> None:
        """Add a coloring; written to --out in both formats."""
        self._coloring = coloring
        if self.as_json:
            self._chunks.append(formats.format_coloring_json(coloring))
        else:
            self._chunks.append(formats.format_coloring_text(coloring).rstrip("\n"))

    def flush(self) -> None:
        """Deliver everything emitted so far."""
        if self.run.out is not None:
            if self._coloring is not None:
                written = formats.write_coloring(self.run.out, self._coloring)
            else:
                self.run.out.parent.mkdir(parents=True, exist_ok=True)
                self.run.out.write_text("".join(chunk + "\n" for chunk in self._chunks))
                written = [self.run.out]
            logger.info("wrote %s", ", ".join(str(path) for path in written))
        if self.run.out is None or self.run.tee:
            stream = self.console.file
            for chunk in self._chunks:
                stream.write(chunk + "\n")
            stream.flush()
        self._chunks.clear()


Handler = Callable[[argparse.Namespace, RunConfig, Config, Output], int]


def _read_sequence_input(path: Optional[Path]) -> Sequence:
    if path is None or str(path) == "-":
        return formats.load_sequence(sys.stdin.read())
    return formats.read_sequence(path)


def _require(args: argparse.Namespace, variant: str, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise ValueError(f"--{name} is required for --variant {variant}")


def _generate(args: argparse.Namespace) -> Sequence:
    variant = args.variant
    if variant == "snc":
        _require(args, variant, "n", "c")
        return s_n_c(args.n, args.c)
    if variant == "expand":
        _require(args, variant, "w")
        return block_expand(_read_sequence_input(args.input), args.w)

    _require(args, variant, "length")
    if variant == "squarefree":
        return thue_squarefree(args.length)
    if variant == "palfree":
        return palindrome_free_thue(args.length)
    if variant == "ababab":
        return thue_aba_bab_free(args.length)

    _require(args, variant, "k")
    builders = {
        "3k1": construct_3k_plus_1,
        "3k2": construct_3k_plus_2,
        "3k3": corollary_3k3_sequence,
        "4k": palindrome_free_block_sequence,
    }
    return builders[variant](args.k, args.length)


def _check_sequence(args: argparse.Namespace, seq: Sequence) -> tuple[list[str], dict[str, Any]]:
    lines: list[str] = []
    findings: dict[str, Any] = {"length": len(seq), "violations": 0}
    external = seq.to_external()

    def word(start: int, end: int) -> str:
        return " ".join(str(symbol) for symbol in external[start:end])

    if args.squares:
        square = find_square(seq)
        if square is None:
            lines.append("squares: none")
            findings["square"] = None
        else:
            lines.append(
                f"square at {square.start + 1}, half length {square.half_length}: "
                f"{word(square.start, square.end)}"
            )
            findings["square"] = {"start": square.start + 1, "half_length": square.half_length}
            findings["violations"] += 1

    if args.palindromes:
        palindrome = find_palindrome(seq)
        if palindrome is None:
            lines.append("palindromes: none")
            findings["palindrome"] = None
        else:
            start, length = palindrome
            lines.append(f"palindrome at {start + 1}, length {length}: {word(start, start + length)}")
            findings["palindrome"] = {"start": start + 1, "length": length}
            findings["violations"] += 1

    if args.kspecial is not None:
        k = args.kspecial
        witness = find_k_bad(seq, k)
        if witness is None:
            lines.append(f"{k}-special: yes")
            findings["kspecial"] = {"k": k, "special": True, "indices": None, "valley": None}
        else:
            indices = " ".join(str(i) for i in witness.indices)
            lines.append(f"{k}-special: no; {k}-bad indices {indices} (valley {witness.valley})")
            findings["kspecial"] = {
                "k": k,
                "special": False,
                "indices": list(witness.indices),
                "valley": witness.valley,
            }
            findings["violations"] += 1

    if args.aba_bab:
        hits = {
            name: find_factor(seq, pattern)
            for name, pattern in (("aba", (0, 1, 0)), ("bab", (1, 0, 1)))
        }
        found = {name: start + 1 for name, start in hits.items() if start is not None}
        if found:
            lines.extend(f"{name} at {start}" for name, start in found.items())
            findings["violations"] += 1
        else:
            lines.append("aba/bab: none")
        findings["aba_bab"] = found
    return lines, findings


def cmd_seq(args: argparse.Namespace, run: RunConfig, config: Config, output: Output) -> int:
    """Generate a sequence or check one read from a file or stdin."""
    if args.action == "gen":
        seq = _generate(args)
        output.emit(
            formats.format_sequence(seq),
            {"variant": args.variant, "alphabet_size": seq.alphabet_size, "symbols": seq.to_external()},
        )
        return EXIT_OK

    if not (args.squares or args.palindromes or args.aba_bab or args.kspecial is not None):
        args.squares = True
    seq = _read_sequence_input(args.file)
    lines, findings = _check_sequence(args, seq)
    output.emit("\n".join(lines), findings)
    return EXIT_VIOLATION if findings["violations"] else EXIT_OK


def _verify(coloring: EdgeColoring, output: Output) -> int:
    try:
        witness = find_repetitive_path(coloring)
    except UncoloredEdgeError as e:
        output.emit(f"incomplete: {e}", {"nonrepetitive": False, "uncolored": e.vertex})
        return EXIT_VIOLATION
    if witness is None:
        output.emit(f"{coloring.shape}: nonrepetitive", {"nonrepetitive": True, "path": None})
        return EXIT_OK
    colors = " ".join(str(color) for color in witness.color_word)
    output.emit(
        f"{coloring.shape}: repetitive path {witness.u} -> {witness.v}: {colors}",
        {"nonrepetitive": False, "path": witness.model_dump(mode="json")},
    )
    return EXIT_VIOLATION


def _describe_chromatic(
    args: argparse.Namespace, run: RunConfig, config: Config
) -> tuple[str, Any, int]:
    shape = TreeShape(k=args.k, h=args.h)
    if run.palette is not None:
        mode = "count_classes" if run.count_classes else "exists"
        report = chromatic_index_exact(
            shape,
            run.palette,
            mode,
            budget=run.budget,
            workers=config.threads,
            checkpoint=run.checkpoint,
            resume=run.resume,
        )
        if report.found:
            verdict = "nonrepetitive coloring found"
        elif report.exhaustive:
            verdict = "no nonrepetitive coloring"
        else:
            verdict = "undecided, budget exhausted"
        lines = [f"{shape} on {run.palette} colors: {verdict}"]
        if report.class_count is not None:
            lines.append(f"classes: {report.class_count}")
    else:
        report = thue_chromatic_index(shape, budget=run.budget, workers=config.threads)
        if report.pi_prime is not None:
            lines = [f"pi'({shape}) = {report.pi_prime}"]
        elif report.upper_bound is not None:
            lines = [f"pi'({shape}) in {report.lower_bound}..{report.upper_bound}"]
        else:
            lines = [f"pi'({shape}) >= {report.lower_bound}"]
    lines.append(f"nodes: {report.nodes_explored}")

    if args.witness is not None and report.witness_coloring is not None:
        written = formats.write_coloring(args.witness, report.witness_coloring)
        lines.append(f"witness: {written[0]}")
    code = EXIT_OK if report.exhaustive else EXIT_INCOMPLETE
    return "\n".join(lines), report.model_dump(mode="json"), code


def cmd_tree(args: argparse.Namespace, run: RunConfig, config: Config, output: Output) -> int:
    """Emit, verify or search for colorings of complete k-ary trees."""
    action = args.action
    if action == "verify":
        if args.coloring is None or str(args.coloring) == "-":
            coloring = formats.parse_coloring(sys.stdin.read())
        else:
            coloring = formats.read_coloring(args.coloring)
        return _verify(coloring, output)
    if action == "pi":
        text, payload, code = _describe_chromatic(args, run, config)
        output.emit(text, payload)
        return code

    if action == "derive":
        coloring = derived_coloring(TreeShape(k=args.k, h=args.h), _read_sequence_input(args.seq))
    elif action == "sv":
        coloring = sv_coloring_h2(args.k)
    elif action == "t24":
        coloring = extend_t24_example()
    elif action == "level":
        coloring = palindrome_free_level_coloring(TreeShape(k=args.k, h=args.h))
    elif action == "corollary":
        coloring = corollary_small_h(args.k, args.h)
    else:
        coloring = figure_coloring(args.name)
    output.emit_coloring(coloring)
    return EXIT_OK


def cmd_table(args: argparse.Namespace, run: RunConfig, config: Config, output: Output) -> int:
    """Print bounds on pi'(T_{k,h}) as TSV."""
    budget = run.budget if run.budget is not None else config.default_budget
    cells = pi_table(
        args.max_k,
        args.max_h,
        budget,
        max_search_edges=config.table_max_search_edges,
        workers=config.threads,
    )
    payload = [{**cell.model_dump(), "cell": cell.cell, "exact": cell.exact} for cell in cells]
    output.emit(format_table_tsv(cells), payload)
    return EXIT_OK


def cmd_fk(args: argparse.Namespace, run: RunConfig, config: Config, output: Output) -> int:
    """Search for the longest k-special words on n symbols."""
    cap = args.cap if args.cap is not None else default_length_cap(args.k)
    report = search_fk(
        args.k,
        args.n,
        cap,
        budget=run.budget,
        workers=config.threads,
        checkpoint=run.checkpoint,
        resume=run.resume,
    )
    status = "exact" if report.exhaustive else "lower bound"
    lines = [f"f_{report.k}({report.n}) = {report.max_length} ({status})"]
    lines.append(f"witnesses: {len(report.witnesses)}")
    lines.extend(" ".join(str(symbol) for symbol in witness) for witness in report.witnesses)
    output.emit("\n".join(lines), report.model_dump(mode="json"))
    if not report.exhaustive and report.max_length < cap:
        return EXIT_INCOMPLETE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for all subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    common.add_argument("--tee", action="store_true", help="with --out, also print to stdout")
    common.add_argument("--log-level", help="log level (default from NONREP_LOG_LEVEL)")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--budget", help="seconds per search, or 'long'")
    search.add_argument("--checkpoint", type=Path, help="NDJSON file recording finished branches")
    search.add_argument("--resume", action="store_true", help="continue from --checkpoint")

    parser = argparse.ArgumentParser(
        prog="nonrep",
        description="Nonrepetitive sequences, k-special words and nonrepetitive tree colorings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    seq = commands.add_parser("seq", help="generate or check sequences")
    seq_actions = seq.add_subparsers(dest="action", required=True)
    gen = seq_actions.add_parser("gen", parents=[common], help="generate a sequence")
    gen.add_argument("--variant", required=True, choices=SEQUENCE_VARIANTS)
    gen.add_argument("--length", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--c", type=int)
    gen.add_argument("--w", type=int)
    gen.add_argument("--input", type=Path, help="sequence to expand (default stdin)")
    check = seq_actions.add_parser("check", parents=[common], help="check a sequence")
    check.add_argument("file", nargs="?", type=Path, help="sequence file (default stdin)")
    check.add_argument("--squares", action="store_true")
    check.add_argument("--palindromes", action="store_true")
    check.add_argument("--kspecial", type=int, metavar="K")
    check.add_argument("--aba-bab", action="store_true")
    seq.set_defaults(handler=cmd_seq)

    tree = commands.add_parser("tree", help="colorings of complete k-ary trees")
    tree_actions = tree.add_subparsers(dest="action", required=True)
    derive = tree_actions.add_parser("derive", parents=[common], help="coloring derived from a sequence")
    derive.add_argument("--k", type=int, required=True)
    derive.add_argument("--h", type=int, required=True)
    derive.add_argument("--seq", type=Path, required=True, help="sequence file, or - for stdin")
    verify = tree_actions.add_parser("verify", parents=[common], help="check a coloring")
    verify.add_argument("--coloring", type=Path, help="coloring file (default stdin)")
    pi = tree_actions.add_parser("pi", parents=[common, search], help="exact search")
    pi.add_argument("--k", type=int, required=True)
    pi.add_argument("--h", type=int, required=True)
    pi.add_argument("--palette", type=int)
    pi.add_argument("--count-classes", action="store_true")
    pi.add_argument("--witness", type=Path, help="write the witness coloring here")
    sv = tree_actions.add_parser("sv", parents=[common], help="height-2 coloring with floor(3k/2)+1 colors")
    sv.add_argument("--k", type=int, required=True)
    tree_actions.add_parser("t24", parents=[common], help="5-coloring of T_{2,4}")
    level = tree_actions.add_parser("level", parents=[common], help="level coloring with 4k colors")
    level.add_argument("--k", type=int, required=True)
    level.add_argument("--h", type=int, required=True)
    corollary = tree_actions.add_parser(
        "corollary", parents=[common], help="coloring with ceil((h+1)k/2) colors, h >= 3"
    )
    corollary.add_argument("--k", type=int, required=True)
    corollary.add_argument("--h", type=int, required=True)
    figure = tree_actions.add_parser("figure", parents=[common], help="reference colorings")
    figure.add_argument("name", choices=FIGURES)
    tree.set_defaults(handler=cmd_tree)

    table = commands.add_parser("table", parents=[common], help="table of pi'(T_{k,h})")
    table.add_argument("--max-k", type=int, required=True)
    table.add_argument("--max-h", type=int, required=True)
    table.add_argument("--budget", help="seconds per cell, or 'long'")
    table.set_defaults(handler=cmd_table)

    fk = commands.add_parser("fk", parents=[common, search], help="longest k-special words")
    fk.add_argument("--k", type=int, required=True)
    fk.add_argument("--n", type=int, required=True)
    fk.add_argument("--cap", type=int, help="length cap (default 8k + 8)")
    fk.set_defaults(handler=cmd_fk)
    return parser


def _describe_error(error: Exception) -> str:
    if isinstance(error, ValidationError):
        return "; ".join(str(detail["msg"]) for detail in error.errors())
    return str(error)


def main(argv: Optional[list[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 on success, 1 when a check finds a violation, 2 on usage or format
        errors, 3 when a search stops before finishing.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    errors = Console(stderr=True, highlight=False)
    try:
        config = Config()
    except ValidationError as e:
        errors.print(
            f"nonrep: invalid configuration: {_describe_error(e)}", markup=False, soft_wrap=True
        )
        return EXIT_USAGE
    try:
        configure_logging(args.log_level or config.effective_log_level)
        run = RunConfig.from_args(args, config)
    except ValueError as e:
        errors.print(f"nonrep: {_describe_error(e)}", markup=False, soft_wrap=True)
        return EXIT_USAGE
    logger.debug("configuration: %r", config)

    output = Output(run, Console(highlight=False))
    handler: Handler = args.handler
    try:
        code = handler(args, run, config, output)
    except KeyboardInterrupt:
        output.flush()
        errors.print("nonrep: interrupted", markup=False, soft_wrap=True)
        return EXIT_INCOMPLETE
    except (ValueError, OSError) as e:
        if config.debug:
            logger.exception("command failed")
        errors.print(f"nonrep: error: {_describe_error(e)}", markup=False, soft_wrap=True)
        return EXIT_USAGE
    output.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
