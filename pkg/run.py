#!/usr/bin/env python3
"""
Steiner Engine Runner - Reproduce the whole elimination end to end
Lemmas, the worked cases, catalog cross-checks, the bounded sweep and its replay
"""

import argparse
import logging
import random
import sys
import tempfile
import time
from pathlib import Path

from build.certificates import CertificateRecord, iter_certificate_file
from build.replay import CheckFailed, check_certificate, replay_file
from core.designs import block_transitive, boolean_sqs, point_transitive, verify_design
from core.elimination import check_lemmas, eliminate_a7_16, eliminate_affine_small, eliminate_psl2
from core.engine_config import load_config
from core.errors import SteinerEngineError
from core.group_catalog import affine_sl, lookup, psl2_group
from core.permgroup import enumerated_order, homogeneity_orbits, span_premise, standard_generators
from main import run as run_cli



def _step(title: str) -> float:
    print(f"\n-- {title}")
    return time.time()


def _done(start: float) -> None:
    print(f"   ({time.time() - start:.1f}s)")


def check_cases() -> None:
    start = _step("worked cases")
    for cert in eliminate_affine_small(8) + eliminate_affine_small(32) + eliminate_a7_16():
        print(f"   {cert}")
    certificates, survivors = eliminate_psl2(32)
    for cert in certificates:
        print(f"   {cert}")
    assert not survivors
    _done(start)


def check_catalog(config) -> None:
    start = _step("catalog orders against generators")
    groups = [
        lookup("AGL1_8", 8), lookup("AGammaL1_8", 8), lookup("AGammaL1_32", 32),
        psl2_group(7, 1), psl2_group(8, 1), affine_sl(4), lookup("Affine_A7", 16),
    ]
    for g in groups:
        enumerated = enumerated_order(standard_generators(g, config), config)
        status = "ok" if enumerated == g.order else "MISMATCH"
        print(f"   {g.name:<14} formula {g.order:>8} enumerated {enumerated:>8} {status}")
        assert enumerated == g.order
    for q, expected in ((5, 2), (7, 1)):
        orbits = homogeneity_orbits(standard_generators(psl2_group(q, 1), config), 3, config)
        print(f"   PSL2({q}) orbits on 3-subsets: {orbits}")
        assert orbits == expected
    _done(start)


def check_designs(config) -> None:
    start = _step("boolean quadruple systems")
    for n in (3, 4):
        s = boolean_sqs(n)
        gs = standard_generators(affine_sl(n), config)
        lam = verify_design(s, 3, config)
        print(f"   3-({s.v},4,{lam}) with {s.b} blocks, block-transitive {block_transitive(gs, s)}, "
              f"point-transitive {point_transitive(gs, s)}")
    for d in (4, 5):
        print(f"   SL({d},2) stabilizer of E: one orbit of {span_premise(d)} outside points")
    _done(start)


def _sample_records(path: Path, rng: random.Random, size: int):
    """Header t and a uniform reservoir sample of records carrying witnesses"""
    t, sample, seen = 0, [], 0
    for section, record in iter_certificate_file(path):
        if section == "header":
            t = int(record.t)
            continue
        if not isinstance(record, CertificateRecord) or not record.witnesses:
            continue
        seen += 1
        if len(sample) < size:
            sample.append(record)
        else:
            slot = rng.randrange(seen)
            if slot < size:
                sample[slot] = record
    return t, sample


def check_sweep(v_max: int, jobs: int, mutations: int) -> int:
    start = _step(f"sweep to v_max = {v_max}")
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "certs.json"
        status = run_cli(["scan", "--v-max", str(v_max), "--jobs", str(jobs), "--out", str(out), "--expect-none"])
        if status:
            return status
        print(f"   {replay_file(out).summary()}")

        rng = random.Random(v_max)
        t, records = _sample_records(out, rng, size=1000)
        rejected = 0
        for _ in range(mutations):
            record = rng.choice(records)
            name = rng.choice(sorted(record.witnesses))
            value = int(record.witnesses[name]) + rng.choice((-1, 1))
            if value < 0:
                value = 1
            mutated = record.model_copy(update={"witnesses": {**record.witnesses, name: str(value)}})
            try:
                check_certificate(mutated, t)
            except CheckFailed:
                rejected += 1
        print(f"   {rejected}/{mutations} single-witness mutations rejected")
        if rejected != mutations:
            return 3
    _done(start)
    return 0


def main():
    parser = argparse.ArgumentParser(description="Reproduce the Steiner 7-design elimination")
    parser.add_argument("--v-max", type=int, default=10**5)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--mutations", type=int, default=100)
    parser.add_argument("--config")
    args = parser.parse_args()

    logging.basicConfig(level=logging.WARNING, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    print("=" * 60)
    print("Block-transitive Steiner 7-designs: elimination run")
    print("=" * 60)

    try:
        config = load_config(args.config)
        start = _step("universal lemmas")
        failure = check_lemmas()
        print(f"   {'all hold' if failure is None else f'counterexample {failure}'}")
        _done(start)
        if failure is not None:
            sys.exit(1)
        check_cases()
        check_catalog(config)
        check_designs(config)
        status = check_sweep(args.v_max, args.jobs, args.mutations)
    except SteinerEngineError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(int(e.exit_code))

    print("=" * 60)
    print("done" if status == 0 else f"failed with status {status}")
    sys.exit(status)


if __name__ == "__main__":
    main()
