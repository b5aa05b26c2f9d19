# Copyright 2022 Ben Kehoe
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.

"""Command line entry point: macdonald-kl <command> [options].

Results go to stdout, diagnostics to stderr. Negative weights may be given
as --weight -1,2 or --weight=-1,2.
"""

__all__ = (
    "COMMANDS",
    "JobSpec",
    "parse_weight",
    "build_parser",
    "job_from_args",
    "run",
    "main",
)

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    EXIT_INTERNAL,
    InvalidJob,
    MacdonaldKLError,
)
from .heckeops import GroupAlgebraElement
from .klbases import canonical_basis, conjecture_report, standard_basis, support_observation
from .macdonald import (
    SPEC_TAGS,
    PairingConfig,
    cherednik_pairing,
    compute_E,
    compute_P,
    degenerate_pairing_t,
    element_document,
    specialize,
)
from .roots import RootSystemData, Weight, parse_system
from .serialization import JSONSerializationConfig, ResultCache, json_dump, terms_from_document
from .verification import DEFAULT_SYSTEMS, SUITES, SuiteResult, expand_suites, run_suite

LOGGER = logging.getLogger(__name__)

COMMANDS = ("info", "E", "P", "spec", "pair", "kl", "verify", "observe")

FORMATS = ("text", "json")

PAIRING_KINDS = ("degenerate", "q")


def parse_weight(text: str) -> Weight:
    """Parse "1,-2" into a weight."""
    try:
        return Weight(tuple(int(part) for part in text.split(",") if part.strip()))
    except ValueError:
        raise InvalidJob(field="weight", reason=f"{text!r} is not a comma-separated integer list")


@dataclass(frozen=True)
class JobSpec:
    """One command line invocation.

    Attributes:
        command: One of COMMANDS.
        system: Root system label, such as "A2".
        weight: The weight, for commands that take one.
        other: The second weight of a pairing.
        spec_tag: A key of SPEC_TAGS or t=<value>.
        format: text or json.
        truncation: Truncation order D of the q-pairing, or None for the default rule.
        pairing: degenerate or q.
        word: A reduced word of w_lambda to build E along, or None for the default.
        cache_dir: Directory for cached results, or None.
        suites: Suite names for verify.
        systems: Root system labels for verify.
        radius: Weight box radius for verify.
        jobs: Worker processes for verify.
    """

    command: str
    system: str = "A1"
    weight: Optional[Weight] = None
    other: Optional[Weight] = None
    spec_tag: str = "exact"
    format: str = "text"
    truncation: Optional[int] = None
    pairing: str = "degenerate"
    word: Optional[Tuple[int, ...]] = None
    cache_dir: Optional[str] = None
    suites: Tuple[str, ...] = ("all",)
    systems: Tuple[str, ...] = DEFAULT_SYSTEMS
    radius: int = 1
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidJob(field="command", reason=f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise InvalidJob(field="format", reason=f"unknown format {self.format!r}")
        if self.pairing not in PAIRING_KINDS:
            raise InvalidJob(field="pairing", reason=f"unknown pairing {self.pairing!r}")
        if self.truncation is not None and self.truncation < 1:
            raise InvalidJob(field="truncation", reason="must be at least 1")
        if self.radius < 0:
            raise InvalidJob(field="radius", reason="must be nonnegative")
        if self.jobs < 1:
            raise InvalidJob(field="jobs", reason="must be at least 1")

    def root_system(self) -> RootSystemData:
        return parse_system(self.system)

    def require_weight(self, system: RootSystemData, name: str = "weight") -> Weight:
        weight = self.weight if name == "weight" else self.other
        if weight is None:
            raise InvalidJob(field=name, reason=f"the {self.command} command needs --{name}")
        if weight.rank != system.rank:
            raise InvalidJob(
                field=name, reason=f"{weight} has {weight.rank} coordinates, {system.name} has rank {system.rank}"
            )
        return weight


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macdonald-kl",
        description="Exact nonsymmetric Macdonald polynomials and parabolic Kazhdan-Lusztig data.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser, weight: bool = True) -> None:
        sub.add_argument("--system", default="A1", help="Root system, such as A2 or G2.")
        if weight:
            sub.add_argument("--weight", help="Weight coordinates, such as 1,-2.")
        sub.add_argument("--format", choices=FORMATS, default="text")

    add_common(subparsers.add_parser("info", help="Root system data."), weight=False)

    e_parser = subparsers.add_parser("E", help="E_lambda(q, t) or one of its limits.")
    add_common(e_parser)
    e_parser.add_argument("--spec", default="exact", help="exact, a limit tag or t=<value>.")
    e_parser.add_argument("--word", help="Reduced word of w_lambda, such as 0,1.")
    e_parser.add_argument("--cache-dir", help="Directory of cached results.")

    p_parser = subparsers.add_parser("P", help="P_lambda(q, t) for anti-dominant lambda.")
    add_common(p_parser)
    p_parser.add_argument("--spec", default="exact")
    p_parser.add_argument("--cache-dir")

    add_common(subparsers.add_parser("spec", help="E_lambda under every limit tag."))

    pair_parser = subparsers.add_parser("pair", help="Pairing of two basis elements.")
    add_common(pair_parser)
    pair_parser.add_argument("--other", help="The second weight.")
    pair_parser.add_argument("--pairing", choices=PAIRING_KINDS, default="degenerate")
    pair_parser.add_argument("--truncation", type=int, help="Truncation order D of the q-pairing.")

    add_common(subparsers.add_parser("kl", help="P* and P for every mu below lambda."))

    observe_parser = subparsers.add_parser(
        "observe", help="Unasserted reports on positivity and the q = t support condition."
    )
    add_common(observe_parser)

    verify_parser = subparsers.add_parser("verify", help="Run check suites.")
    verify_parser.add_argument(
        "--system", action="append", help="Repeatable; defaults to " + ", ".join(DEFAULT_SYSTEMS)
    )
    verify_parser.add_argument("--suite", action="append", help="Repeatable; defaults to all.")
    verify_parser.add_argument("--radius", type=int, default=1)
    verify_parser.add_argument("--jobs", type=int, default=1)
    verify_parser.add_argument("--format", choices=FORMATS, default="text")
    return parser


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn "--weight -1,2" into "--weight=-1,2" so argparse does not read a flag."""
    result: List[str] = []
    options = {"--weight", "--other", "--word"}
    i = 0
    while i < len(argv):
        if argv[i] in options and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            result.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            result.append(argv[i])
            i += 1
    return result


def job_from_args(args: argparse.Namespace) -> JobSpec:
    if args.command == "verify":
        return JobSpec(
            command="verify",
            format=args.format,
            suites=tuple(args.suite or ["all"]),
            systems=tuple(args.system or DEFAULT_SYSTEMS),
            radius=args.radius,
            jobs=args.jobs,
        )
    weight = getattr(args, "weight", None)
    other = getattr(args, "other", None)
    word = getattr(args, "word", None)
    return JobSpec(
        command=args.command,
        system=args.system,
        weight=parse_weight(weight) if weight else None,
        other=parse_weight(other) if other else None,
        spec_tag=getattr(args, "spec", "exact"),
        format=args.format,
        truncation=getattr(args, "truncation", None),
        pairing=getattr(args, "pairing", "degenerate"),
        word=parse_weight(word).coords if word else None,
        cache_dir=getattr(args, "cache_dir", None),
    )


def _render(job: JobSpec, text: str, document: object) -> str:
    if job.format == "json":
        return json_dump(document, JSONSerializationConfig(indent=2))
    return text


def _cached_element(
    job: JobSpec, system: RootSystemData, lam: Weight, compute
) -> GroupAlgebraElement:
    cache = ResultCache(job.cache_dir) if job.cache_dir else None
    if cache is not None:
        document = cache.load(system.name, lam.coords, job.spec_tag)
        if document is not None:
            return GroupAlgebraElement(
                system, {Weight(w): c for w, c in terms_from_document(document)}
            )
    element = compute()
    if cache is not None:
        cache.store(element_document(system, lam, job.spec_tag, element))
    return element


def _run_info(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    data = system.to_json()
    text = "\n".join(f"{key}: {value}" for key, value in sorted(data.items()))
    return 0, _render(job, text, data)


def _run_E(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    lam = job.require_weight(system)
    element = _cached_element(
        job,
        system,
        lam,
        lambda: specialize(compute_E(system, lam, job.word).poly, job.spec_tag),
    )
    return 0, _render(job, element.render(), element_document(system, lam, job.spec_tag, element))


def _run_P(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    lam = job.require_weight(system)
    element = _cached_element(
        job, system, lam, lambda: specialize(compute_P(system, lam), job.spec_tag)
    )
    return 0, _render(job, element.render(), element_document(system, lam, job.spec_tag, element))


def _run_spec(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    lam = job.require_weight(system)
    E = compute_E(system, lam).poly
    lines = []
    documents = []
    for tag in SPEC_TAGS:
        element = specialize(E, tag)
        lines.append(f"{tag}: {element.render()}")
        documents.append(element_document(system, lam, tag, element))
    return 0, _render(job, "\n".join(lines), documents)


def _run_pair(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    lam = job.require_weight(system)
    mu = job.require_weight(system, "other")
    if job.pairing == "degenerate":
        value = degenerate_pairing_t(standard_basis(system, lam), standard_basis(system, mu))
        text = value.render(system.scale)
        return 0, _render(job, text, {"pairing": "degenerate", "value": value.to_json()})
    config = PairingConfig(truncation_order=job.truncation)
    series = cherednik_pairing(compute_E(system, lam).poly, compute_E(system, mu).poly, config)
    text = series.render(system.scale)
    return 0, _render(
        job,
        text,
        {"pairing": "q", "cutoff": series.cutoff, "value": series.poly.to_json()},
    )


def _run_kl(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    lam = job.require_weight(system)
    result = canonical_basis(system, lam)
    lines = [f"C'[{lam}] = {result.element.render()}"]
    rows = []
    for mu, kl in sorted(result.polynomials.items()):
        lines.append(
            f"{mu}\tP* = {kl.pstar.render(system.scale)}\tP = {kl.p.render(system.scale)}"
            f"\tP(1) = {kl.value_at_one()}"
        )
        rows.append(
            {
                "mu": mu.to_json(),
                "pstar": kl.pstar.to_json(),
                "p": kl.p.to_json(),
                "p_at_one": kl.value_at_one(),
            }
        )
    return 0, _render(job, "\n".join(lines), {"weight": lam.to_json(), "rows": rows})


def _run_observe(job: JobSpec) -> Tuple[int, str]:
    system = job.root_system()
    lam = job.require_weight(system)
    documents = {}
    lines = []
    if system.r == 1:
        report = conjecture_report(system, lam)
        documents["conjecture"] = report.to_json()
        lines.append(f"P(1) values ({report.marker}):")
        for mu, value, nonnegative in report.rows:
            lines.append(f"  {mu}\t{value}\t{'nonnegative' if nonnegative else 'mixed signs'}")
    observation = support_observation(system, lam)
    documents["support"] = observation.to_json()
    lines.append(f"C'[{lam}] at q = t ({observation.marker}):")
    for mu, text in sorted(observation.coefficients.items()):
        lines.append(f"  {mu}\t{text}")
    for mu in observation.poles:
        lines.append(f"  {mu}\tno value at q = t")
    return 0, _render(job, "\n".join(lines), documents)


def _run_verify(job: JobSpec) -> Tuple[int, str]:
    suites = expand_suites(job.suites)
    for suite in suites:
        if suite not in SUITES:
            raise InvalidJob(field="suite", reason=f"unknown suite {suite!r}")
    for system in job.systems:
        parse_system(system)
    tasks = [(suite, system, job.radius) for suite in suites for system in job.systems]
    results: List[SuiteResult] = []
    if job.jobs > 1:
        with ProcessPoolExecutor(max_workers=job.jobs) as executor:
            futures = [executor.submit(run_suite, *task) for task in tasks]
            results = [future.result() for future in futures]
    else:
        results = [run_suite(*task) for task in tasks]
    results.sort(key=lambda r: r.key)
    passed = sum(1 for r in results if r.passed)
    summary = f"{passed}/{len(results)} suites passed"
    text = "\n".join([r.render() for r in results] + [summary])
    document = {"results": [r.to_json() for r in results], "passed": passed, "total": len(results)}
    code = 0 if passed == len(results) else EXIT_INTERNAL
    return code, _render(job, text, document)


_RUNNERS = {
    "info": _run_info,
    "E": _run_E,
    "P": _run_P,
    "spec": _run_spec,
    "pair": _run_pair,
    "kl": _run_kl,
    "observe": _run_observe,
    "verify": _run_verify,
}


def run(job: JobSpec) -> Tuple[int, str]:
    """Execute a job; returns the exit code and the rendered output.

    Errors from the package become their exit codes; exit 4 output is the
    error report, meant to be filed as a bug.
    """
    try:
        return _RUNNERS[job.command](job)
    except MacdonaldKLError as e:
        e._log()
        if job.format == "json" or e.EXIT_CODE == EXIT_INTERNAL:
            return e.EXIT_CODE, json_dump(e.get_report(), JSONSerializationConfig(indent=2))
        return e.EXIT_CODE, f"{e.get_error_code()}: {e.get_error_message()}"


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
    )
    MacdonaldKLError.LOGGER = logging.getLogger("macdonald_kl")
    MacdonaldKLError.LOGGER_TRACEBACK = verbosity > 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    _configure_logging(args.verbose)
    try:
        job = job_from_args(args)
    except MacdonaldKLError as e:
        e._log()
        print(f"{e.get_error_code()}: {e.get_error_message()}", file=sys.stderr)
        return e.EXIT_CODE
    code, output = run(job)
    stream = sys.stdout if code == 0 or job.command == "verify" else sys.stderr
    print(output, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
