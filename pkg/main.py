"""
Steiner Engine - Command line for the block-transitive Steiner design eliminations
Admissibility reports, catalog queries, certificate sweeps and independent replay
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, ValidationError

from build.certificates import CertificateWriter
from build.replay import replay_file
from core.admissibility import DesignParams, admissible_report
from core.designs import block_transitive, point_transitive, verify_design
from core.elimination import (
    STEINER_T,
    EliminationCertificate,
    SweepResult,
    check_lemmas,
    eliminate_affine_small,
    eliminate_degree,
    eliminate_psl2,
)
from core.engine_config import EngineConfig, load_config
from core.errors import ExitCode, InvalidInputError, SteinerEngineError, SurvivorFound
from core.group_catalog import GroupSpec, candidates_for_degree, catalog_entries, describe, lookup
from core.permgroup import GeneratorSet, Permutation, enumerated_order, homogeneity_orbits, standard_generators
from core.sweep import SweepStats, iter_sweep
from utils.design_files import read_design

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """One parsed command line"""
    command: str
    action: Optional[str] = None
    t: Optional[int] = Field(default=None, ge=1)
    v: Optional[int] = Field(default=None, ge=1)
    v_max: Optional[int] = Field(default=None, ge=1)
    q: Optional[int] = Field(default=None, ge=2)
    k: Optional[int] = Field(default=None, ge=1)
    lam: int = Field(default=1, ge=1)
    jobs: int = Field(default=1, ge=1)
    out_path: Optional[str] = None
    family: Optional[str] = None
    degree: Optional[int] = Field(default=None, ge=1)
    a: Optional[int] = Field(default=None, ge=1)
    s: Optional[int] = Field(default=None, ge=0)
    design: Optional[str] = None
    generators: Optional[str] = None
    path: Optional[str] = None
    k_max: int = Field(default=10**4, ge=1)
    e_max: int = Field(default=60, ge=3)
    expect_none: bool = False
    details: bool = False
    enumerate: bool = False
    progress: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="YAML file with engine caps")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--progress", action="store_true", help="progress bar on stderr")

    parser = _Parser(prog="main.py", description="Block-transitive Steiner design elimination engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("admissible", parents=[common], help="admissibility report for t-(v,k,lambda)")
    p.add_argument("--t", type=int)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lam", type=int, default=1)
    p.add_argument("--details", action="store_true", help="print every lambda_s and bound")

    p = sub.add_parser("scan", parents=[common], help="sweep every candidate degree up to v_max")
    p.add_argument("--t", type=int)
    p.add_argument("--v-max", dest="v_max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", dest="out_path")
    p.add_argument("--expect-none", dest="expect_none", action="store_true")

    p = sub.add_parser("eliminate", parents=[common], help="eliminations for one degree or one q")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--v", type=int)
    target.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--details", action="store_true", help="print the stabilizer tables")

    p = sub.add_parser("group", parents=[common], help="catalog queries")
    group_sub = p.add_subparsers(dest="action", required=True)
    gl = group_sub.add_parser("list", parents=[common])
    which = gl.add_mutually_exclusive_group(required=True)
    which.add_argument("--v", type=int)
    which.add_argument("--v-max", dest="v_max", type=int)
    go = group_sub.add_parser("order", parents=[common])
    go.add_argument("--family", required=True)
    go.add_argument("--degree", type=int, required=True)
    go.add_argument("--a", type=int)
    go.add_argument("--enumerate", action="store_true", help="also compute the order from generators")

    p = sub.add_parser("verify", parents=[common], help="brute-force check of a STEINER design file")
    p.add_argument("--design", required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--family")
    p.add_argument("--a", type=int)
    p.add_argument("--generators", help="file of permutations, one image list per line")

    p = sub.add_parser("homogeneity", parents=[common], help="orbits of a group on s-subsets")
    p.add_argument("--family")
    p.add_argument("--degree", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--generators")
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("replay", parents=[common], help="recheck a certificate file")
    p.add_argument("path")

    p = sub.add_parser("lemmas", parents=[common], help="check the universal lemmas of the PSL(2,q) case")
    p.add_argument("--k-max", dest="k_max", type=int, default=10**4)
    p.add_argument("--e-max", dest="e_max", type=int, default=60)

    return parser


def _run_config(ns: argparse.Namespace, config: EngineConfig) -> RunConfig:
    values = {key: value for key, value in vars(ns).items() if value is not None}
    values.pop("config", None)
    values.pop("verbose", None)
    if ns.command == "scan" and "jobs" not in values:
        values["jobs"] = config.default_jobs
    if "t" not in values and ns.command in ("admissible", "scan", "eliminate"):
        values["t"] = config.default_t
    try:
        return RunConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        raise InvalidInputError(f"--{error['loc'][0]}: {error['msg']}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_admissible(cfg: RunConfig, config: EngineConfig) -> int:
    report = admissible_report(DesignParams(cfg.t, cfg.v, cfg.k, cfg.lam))
    if cfg.details:
        print(f"parameters: {report.params}")
        for s, value in report.lambdas:
            print(f"  lambda_{s} = {value}")
        print(f"  b = {report.b}, r = {report.r}")
        print(f"  failed divisibility: {report.failed_divisibility or 'none'}")
        print(f"  tits: {'ok' if report.tits_ok else 'fails'}, cameron: {report.cameron_verdict.value}, "
              f"ray-chaudhuri-wilson: {'ok' if report.rw_ok else 'fails'}")
    print(report.summary())
    return ExitCode.OK


def cmd_scan(cfg: RunConfig, config: EngineConfig) -> int:
    stats = SweepStats()
    target = cfg.out_path or os.devnull
    try:
        out = open(target, "w")
    except OSError as e:
        raise InvalidInputError(f"cannot write {target}: {e.strerror}")
    with out as f:
        writer = CertificateWriter(f, cfg.t, cfg.v_max)
        for result in iter_sweep(cfg.t, cfg.v_max, cfg.jobs, config, cfg.progress, stats):
            writer.write(result)
        writer.close()
        survivors = list(writer.survivors)

    if cfg.out_path:
        print(f"certificates: {stats.certificates} written to {cfg.out_path}")
    else:
        print(f"certificates: {stats.certificates}")
    print(f"externally cited: {stats.externally_cited}")
    for g, k in survivors:
        print(f"  survivor: {g.name} v={g.degree} k={k}")
    print(f"survivors: {len(survivors)}")
    if cfg.expect_none and survivors:
        raise SurvivorFound(f"{len(survivors)} case(s) not eliminated")
    return ExitCode.OK


def _print_certificate(cert: EliminationCertificate, details: bool) -> None:
    witnesses = " ".join(f"{name}={value}" for name, value in cert.witnesses.items())
    print(f"{cert} [{witnesses}]" if witnesses else str(cert))
    if details:
        for row in cert.table:
            print(f"    a={row.a}: {row.numerator}/{row.denominator} {row.verdict.value}")
    if details and cert.citation:
        print(f"    see: {cert.citation}")


def cmd_eliminate(cfg: RunConfig, config: EngineConfig) -> int:
    result = SweepResult()
    if cfg.q is not None:
        certificates, survivors = eliminate_psl2(cfg.q, cfg.t)
        result.certificates.extend(certificates)
        result.survivors.extend(survivors)
    elif cfg.v == 8 and cfg.t == STEINER_T:
        result.certificates.extend(eliminate_affine_small(8))
    else:
        result = eliminate_degree(cfg.v, cfg.t)

    for cert in result.certificates:
        _print_certificate(cert, cfg.details)
    for g in result.externally_cited:
        print(f"{g.name} v={g.degree}: EXTERNAL_CITATION")
    for g, k in result.survivors:
        print(f"survivor: {g.name} v={g.degree} k={k}")
    print(f"survivors: {len(result.survivors)}")
    return ExitCode.OK


def _group_for(cfg: RunConfig, degree: int) -> GroupSpec:
    if cfg.family is None:
        raise InvalidInputError("--family is required")
    return lookup(cfg.family, degree, cfg.a)


def cmd_group(cfg: RunConfig, config: EngineConfig) -> int:
    if cfg.action == "list":
        entries = candidates_for_degree(cfg.v) if cfg.v is not None else catalog_entries(cfg.v_max)
        for g in entries:
            print(describe(g))
        return ExitCode.OK

    g = _group_for(cfg, cfg.degree)
    print(f"{g.name} order {g.order}")
    if cfg.enumerate:
        enumerated = enumerated_order(standard_generators(g, config), config)
        print(f"enumerated order {enumerated}")
        if enumerated != g.order:
            logger.error(f"[Catalog] {g.name}: formula order {g.order} != enumerated {enumerated}")
            return ExitCode.USAGE
    return ExitCode.OK


def _read_generators(path: str) -> GeneratorSet:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InvalidInputError(f"cannot read generators {path}: {e.strerror}")
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidInputError(f"no generators in {path}")
    gens = tuple(Permutation.from_line(line) for line in lines)
    return GeneratorSet(gens[0].degree, gens)


def _generators(cfg: RunConfig, degree: int, config: EngineConfig) -> Optional[GeneratorSet]:
    if cfg.generators:
        return _read_generators(cfg.generators)
    if cfg.family:
        return standard_generators(_group_for(cfg, degree), config)
    return None


def cmd_verify(cfg: RunConfig, config: EngineConfig) -> int:
    s = read_design(cfg.design)
    candidates: List[int] = [cfg.t] if cfg.t is not None else list(range(s.k, 0, -1))
    verified = None
    for t in candidates:
        lam = verify_design(s, t, config)
        if lam is not None:
            verified = (t, lam)
            break
    if verified is None:
        print(f"not a design: {s.b} blocks of size {s.k} on {s.v} points")
        return ExitCode.USAGE
    t, lam = verified
    print(f"{t}-({s.v},{s.k},{lam}) verified")

    gs = _generators(cfg, s.v, config)
    if gs is not None:
        print(f"block-transitive: {'yes' if block_transitive(gs, s) else 'no'}")
        print(f"point-transitive: {'yes' if point_transitive(gs, s) else 'no'}")
    return ExitCode.OK


def cmd_homogeneity(cfg: RunConfig, config: EngineConfig) -> int:
    if cfg.generators is None and cfg.degree is None:
        raise InvalidInputError("--degree is required with --family")
    gs = _generators(cfg, cfg.degree, config)
    if gs is None:
        raise InvalidInputError("give --family or --generators")
    orbits = homogeneity_orbits(gs, cfg.s, config)
    print(f"orbits on {cfg.s}-subsets: {orbits}")
    return ExitCode.OK


def cmd_replay(cfg: RunConfig, config: EngineConfig) -> int:
    report = replay_file(cfg.path)
    print(report.summary())
    return ExitCode.OK


def cmd_lemmas(cfg: RunConfig, config: EngineConfig) -> int:
    failure = check_lemmas(cfg.k_max, cfg.e_max)
    if failure is not None:
        lemma, value = failure
        print(f"lemma {lemma} fails at {value}")
        return ExitCode.USAGE
    print(f"lemmas hold: magnitude for 27 <= k <= {cfg.k_max}, parity for 8 <= k <= {cfg.k_max} "
          f"and 3 <= e <= {cfg.e_max}")
    return ExitCode.OK


COMMANDS = {
    "admissible": cmd_admissible,
    "scan": cmd_scan,
    "eliminate": cmd_eliminate,
    "group": cmd_group,
    "verify": cmd_verify,
    "homogeneity": cmd_homogeneity,
    "replay": cmd_replay,
    "lemmas": cmd_lemmas,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse, dispatch, and map engine errors to exit statuses"""
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if ns.verbose else logging.WARNING,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        config = load_config(ns.config)
        cfg = _run_config(ns, config)
        return int(COMMANDS[cfg.command](cfg, config))
    except SteinerEngineError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(e.exit_code)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
