"""Command-line driver: run identity campaigns and write reports."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import bessel, wcf
from .lfactors import verify_modulus_identity
from .lgroup import INERT, SPLIT, CapacityExceeded, linear, unitary
from .report import SKIPPED, VerificationReport, skipped

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
MODES = ("symbolic", "specialized", "numeric")
WCF_RANK_LIMIT = 4


class ConfigError(ValueError):
    pass


@dataclass
class CampaignConfig:
    identities: list
    ranks: list
    places: tuple = (INERT, SPLIT)
    truncation_order: int = 4
    mode: str = "symbolic"
    numeric_trials: int = 10
    seed: int = 0
    output_path: str = "-"
    output_format: str = "text"
    jobs: int = 1
    timings: bool = True
    extra: dict = field(default_factory=dict)

    def validate(self):
        unknown = [i for i in self.identities if i not in IDENTITIES]
        if unknown:
            raise ConfigError(f"unknown identities: {', '.join(unknown)}")
        if self.truncation_order < 0:
            raise ConfigError("order must be non-negative")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}")
        if self.numeric_trials < 1:
            raise ConfigError("trials must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        for r, m in self.ranks:
            if r < 0 or m < 0:
                raise ConfigError(f"ranks must be non-negative, got ({r},{m})")


# ---------------------------------------------------------------------------
# the identity table: each entry maps (r, m, place, config) to one report


def _wcf_groups(r, m, place):
    n1 = m + 2 * r + 1
    if n1 > WCF_RANK_LIMIT:
        raise CapacityExceeded(f"Weyl character checks run up to rank {WCF_RANK_LIMIT}, U_{n1} requested")
    groups = [unitary(n1, place)]
    if r:
        groups.append(linear(r, place))
    return groups


def _combine(identity_id, reports, **params):
    """Fold several reports into one."""
    from .report import Recorder

    rec = Recorder(identity_id, **params)
    for rep in reports:
        rec.ok(rep.checked)
        if not rep.passed:
            rec.fail(f"{rep.params}: {rep.witness}")
    return rec.report()


def _singular(r, m, place, cfg):
    reps = [wcf.verify_singular_vanishing_all(g) for g in _wcf_groups(r, m, place)]
    return _combine("singular_vanishing", reps)


def _epsilon(r, m, place, cfg):
    reps = [wcf.verify_epsilon_orbits(g) for g in _wcf_groups(r, m, place)]
    return _combine("epsilon_orbit", reps)


def _parabolic(r, m, place, cfg):
    reps = [wcf.verify_parabolic_d_sums(g) for g in _wcf_groups(r, m, place)]
    return _combine("parabolic_d_sum", reps)


def _schur(r, m, place, cfg):
    if place != SPLIT:
        return skipped("schur_oracle", "the Schur oracle applies at split places")
    reps = [wcf.verify_schur_oracle(g, cfg.truncation_order) for g in _wcf_groups(r, m, place)]
    return _combine("schur_oracle", reps)


def _proposition(r, m, place, cfg):
    if cfg.truncation_order < 1:
        return skipped("unramified_proposition", "needs order >= 1")
    return bessel.verify_unramified_proposition(r, m, place, cfg.truncation_order)


def _key(r, m, place, cfg):
    return bessel.verify_key_identity(r, m, place, cfg.mode, cfg.numeric_trials, cfg.seed)


def _liu(r, m, place, cfg):
    return bessel.verify_liu_normalization(m, place)


def _cauchy(r, m, place, cfg):
    if r == 0:
        return skipped("cauchy", "rank 0 has nothing to sum")
    return bessel.verify_cauchy(r, place, cfg.truncation_order)


IDENTITIES = {
    "cauchy": _cauchy,
    "epsilon_orbit": _epsilon,
    "key_identity": _key,
    "lemma_vs_liu": lambda r, m, place, cfg: bessel.verify_lemma_equivalence(r, m, place, cfg.truncation_order),
    "liu_normalization": _liu,
    "lquotient_factorization": lambda r, m, place, cfg: bessel.verify_lquotient_factorization(r, m, place),
    "modulus_identity": lambda r, m, place, cfg: verify_modulus_identity(r, m),
    "parabolic_d_sum": _parabolic,
    "rhs_constancy": lambda r, m, place, cfg: bessel.verify_rhs_constancy(r, m, place),
    "schur_oracle": _schur,
    "singular_vanishing": _singular,
    "unramified_proposition": _proposition,
}


def run_task(task):
    """One (identity, r, m, place) check; capacity problems become skipped reports."""
    identity_id, r, m, place, cfg = task
    params = {"r": r, "m": m, "place": place}
    try:
        rep = IDENTITIES[identity_id](r, m, place, cfg)
    except CapacityExceeded as exc:
        rep = skipped(identity_id, f"capacity exceeded: {exc}")
    rep.identity_id = identity_id
    rep.params = {**params, **{k: v for k, v in rep.params.items() if k not in params}}
    if not cfg.timings:
        rep.elapsed_ms = 0
    return rep


def _order_key(rep):
    p = rep.params
    return (rep.identity_id, p.get("r", 0), p.get("m", 0), p.get("place", ""))


def run_campaign(config):
    config.validate()
    tasks = [(i, r, m, place, config) for i in config.identities for r, m in config.ranks for place in config.places]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(run_task, tasks))
    else:
        reports = [run_task(t) for t in tasks]
    return sorted(reports, key=_order_key)


# ---------------------------------------------------------------------------
# output


def emit_report(reports, fmt="json"):
    if fmt == "json":
        return json.dumps([r.to_json() for r in reports], indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ConfigError(f"unknown format {fmt!r}")
    lines = []
    for r in reports:
        p = r.params
        tag = f"{r.identity_id:<24} r={p.get('r', '-')} m={p.get('m', '-')} {p.get('place', '-'):<6}"
        line = f"{tag} {r.status.upper():<8} checked={r.checked:<5} {r.elapsed_ms}ms"
        if r.witness:
            line += f"  {r.witness}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")


def parse_reports(text):
    return [VerificationReport.from_json(obj) for obj in json.loads(text)]


def exit_status(reports):
    return EXIT_FAIL if any(r.status not in ("pass", SKIPPED) for r in reports) else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _parse_ranks(text):
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            r, m = (int(x) for x in chunk.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad rank pair {chunk!r}, expected r,m") from None
        pairs.append((r, m))
    if not pairs:
        raise argparse.ArgumentTypeError("no rank pairs given")
    return pairs


def build_parser():
    parser = argparse.ArgumentParser(prog="verify", description="Check the unramified identities for given ranks.")
    parser.add_argument("--identities", default=None, help="comma-separated identity ids or 'all'")
    parser.add_argument("--ranks", type=_parse_ranks, default=None, help="r,m[;r,m...]")
    parser.add_argument("--place", choices=("inert", "split", "both"), default="both")
    parser.add_argument("--order", type=int, default=4, help="truncation order N")
    parser.add_argument("--mode", choices=MODES, default="symbolic")
    parser.add_argument("--trials", type=int, default=10, help="numeric spot checks")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="-", help="output file, '-' for stdout")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--no-timings", action="store_true", help="write 0 for elapsed_ms (byte-stable output)")
    parser.add_argument("--list", action="store_true", help="list identity ids and exit")
    return parser


def config_from_args(args):
    if args.identities in (None, "all"):
        identities = sorted(IDENTITIES)
    else:
        identities = [x.strip() for x in args.identities.split(",") if x.strip()]
    places = (INERT, SPLIT) if args.place == "both" else (args.place,)
    return CampaignConfig(
        identities=identities,
        ranks=args.ranks or [(1, 0)],
        places=places,
        truncation_order=args.order,
        mode=args.mode,
        numeric_trials=args.trials,
        seed=args.seed,
        output_path=args.out,
        output_format=args.format,
        jobs=args.jobs,
        timings=not args.no_timings,
    )


def _acceptance_reports(timings):
    from .acceptance import run_acceptance

    reports = []
    for criterion, reps, _ in run_acceptance():
        for rep in reps:
            rep.params = {"criterion": criterion.number, **rep.params}
            if not timings:
                rep.elapsed_ms = 0
            reports.append(rep)
    return reports


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if args.list:
        print("\n".join(sorted(IDENTITIES)))
        return EXIT_OK
    try:
        if args.identities is None and args.ranks is None:
            reports = _acceptance_reports(not args.no_timings)
        else:
            reports = run_campaign(config_from_args(args))
    except ConfigError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = emit_report(reports, args.format)
    try:
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"verify: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return exit_status(reports)


if __name__ == "__main__":
    sys.exit(main())
