# app/cli.py
"""Ligne de commande : cycles, nombres attirés, témoins et vérification des tableaux.

Codes de sortie : 0 succès, 1 échec de vérification, 2 erreur d'utilisation.
"""
import argparse
import json
import logging
import sys

from pydantic import ValidationError

from app.config import DEFAULT_LOG_LEVEL, DEFAULT_NORMALIZE_CAP, DEFAULT_SCAN_CHUNK, default_workers
from app.logs import configure_logging
from app.models.digits import parse_number
from app.models.envelope import OutputEnvelope
from app.models.params import Params
from app.services import payloads
from app.services.cycle_goodness import consecutive_witness, cycle_good_witness, verify_cycle_good
from app.services.dynamics import attraction_target, find_cycles, is_attracted, scan_runs, trajectory
from app.services.errors import HappyError, TableMismatchError
from app.services.goodness import good_witness, normalize_witness, verify_normalized, verify_witness
from app.services.selfcheck import CHECKS, selfcheck
from app.services.tables import verify_table

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _number(args, text: str) -> int:
    if args.radix_b:
        return parse_number(text, args.b)
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"Entier décimal attendu, reçu {text!r}") from None


def _number_set(args, text: str) -> list[int]:
    return [_number(args, part) for part in text.split(",") if part.strip()]


def _params(args) -> Params:
    return Params(c=args.c, b=args.b)


def cmd_cycles(args):
    p = _params(args)
    cs = find_cycles(p)
    lines = [f"S_{p.label} : d={p.d} m={p.m} B={p.bound}, {len(cs.cycles)} cycle(s)"]
    for i, cycle in enumerate(cs.cycles, start=1):
        shown = " → ".join(payloads.show(a, p.b, args.render) for a in cycle.elements + cycle.elements[:1])
        lines.append(f"C_{i} (longueur {cycle.length}) : {shown}")
    return p, payloads.cycles_payload(cs), lines, EXIT_OK


def cmd_attract(args):
    p = _params(args)
    cs = find_cycles(p)
    value = _number(args, args.value)
    u = _number(args, args.u) if args.u is not None else None
    attraction = attraction_target(value, cs)
    path = trajectory(value, cs)
    attracted = is_attracted(value, u, cs) if u is not None else None
    lines = [
        "trajectoire : " + " → ".join(payloads.show(a, p.b, args.render) for a in path),
        f"cycle : C_{attraction.cycle_index + 1} après {attraction.steps} itération(s)",
    ]
    if u is not None:
        lines.append("true" if attracted else "false")
    return p, payloads.attraction_payload(attraction, path, p, u, attracted), lines, EXIT_OK


def cmd_search_run(args):
    p = _params(args)
    cs = find_cycles(p)
    u = _number(args, args.u)
    reports = scan_runs(
        u, args.len, args.limit, cs,
        first=args.first, stride=args.stride, workers=args.workers, chunk=args.chunk,
    )
    lines = [
        f"{report.start} : " + ", ".join(payloads.show(a, p.b, args.render) for a in report.values)
        for report in reports
    ] or ["aucune suite trouvée"]
    failed = any(not report.verified for report in reports)
    return p, payloads.runs_payload(reports), lines, EXIT_FAILED if failed else EXIT_OK


def cmd_good(args):
    p = _params(args)
    witness = good_witness(_number_set(args, args.set), _number(args, args.u), p)
    verified = verify_witness(witness)
    normalized_verified = None
    lines = [
        f"T = {list(witness.domain)} → u = {witness.target}",
        f"programme : {len(witness.program.steps)} étapes dont {witness.program.s_count} applications de S",
        f"vérifié : {'oui' if verified else 'non'}",
    ]
    if args.normalize:
        report = normalize_witness(witness, args.cap)
        witness = witness.model_copy(update={"normalized": report})
        if report.status == "ok":
            normalized_verified = verify_normalized(witness.domain, witness.target, report.n, report.k, p)
            lines.append(f"forme normale : k = {report.k}, n de {report.digit_count} chiffres"
                         f" ({'vérifiée' if normalized_verified else 'ÉCHEC'})")
        else:
            lines.append(f"forme normale : dépasse {report.cap} chiffres à l'étape {report.stage}"
                         f" (n' de {report.n_prime_digits} chiffres)")
    ok = verified and normalized_verified is not False
    return p, payloads.good_payload(witness, verified, normalized_verified), lines, EXIT_OK if ok else EXIT_FAILED


def _cycle_good_lines(witness, verified: bool) -> list[str]:
    lines = [f"T = {list(witness.domain)}, mode {witness.mode}"]
    if witness.mode == "pipeline":
        lines.append(f"k3 = {witness.k3}, image V_{witness.set_index}")
    for i, program in enumerate(witness.programs, start=1):
        lines.append(f"C_{i} : {len(program.steps)} étapes dont {program.s_count} applications de S")
    lines.append(f"vérifié : {'oui' if verified else 'non'}")
    return lines


def cmd_cycle_good(args):
    p = _params(args)
    witness = cycle_good_witness(_number_set(args, args.set), p)
    verified = verify_cycle_good(witness)
    return p, payloads.cycle_good_payload(witness, verified), _cycle_good_lines(witness, verified), \
        EXIT_OK if verified else EXIT_FAILED


def cmd_consec(args):
    p = _params(args)
    witness = consecutive_witness(_number(args, args.u), args.len, p)
    verified = verify_cycle_good(witness)
    lines = _cycle_good_lines(witness, verified)
    lines.insert(1, f"u = {witness.target} dans C_{witness.target_cycle + 1}")
    return p, payloads.cycle_good_payload(witness, verified), lines, EXIT_OK if verified else EXIT_FAILED


def cmd_verify_tables(args):
    tables = [1, 2, 3, 4, 5] if args.which == "all" else [int(args.which)]
    reports = [verify_table(table) for table in tables]
    lines = []
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        lines.append(f"Tableau {report.table} : {status}, {report.rows} lignes, {len(report.cells)} cases")
        for cell in report.failures:
            lines.append(f"  {cell.row} {cell.cell} : {cell.detail}")
    passed = all(report.passed for report in reports)
    if len(reports) > 1:
        lines.append("PASS" if passed else "FAIL")
    return None, payloads.tables_payload(reports), lines, EXIT_OK if passed else EXIT_FAILED


def cmd_check(args):
    results = selfcheck(args.seed, args.samples, args.only)
    lines = [
        f"{result.name} : {result.samples} tirages, {result.violations} violation(s)"
        + (f" ex. {result.examples}" if result.examples else "")
        for result in results
    ]
    passed = all(result.passed for result in results)
    payload = {"seed": args.seed, "passed": passed, "checks": [result.model_dump() for result in results]}
    return None, payload, lines, EXIT_OK if passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="happy",
        description="Fonctions heureuses généralisées augmentées S_[c,b]",
    )
    parser.add_argument("--log-level", default=DEFAULT_LOG_LEVEL)
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="<commande>")

    def add(name: str, func, help_text: str, with_params: bool = True):
        sub = subparsers.add_parser(name, help=help_text)
        if with_params:
            sub.add_argument("--c", type=int, required=True, help="constante c >= 0")
            sub.add_argument("--b", type=int, required=True, help="base b >= 2")
            sub.add_argument("--radix-b", action="store_true", help="valeurs d'entrée écrites en base b")
        sub.add_argument("--json", action="store_true", help="sortie JSON")
        sub.add_argument("--render", choices=["decimal", "base", "both"], default="both")
        sub.set_defaults(func=func)
        return sub

    add("cycles", cmd_cycles, "points fixes et cycles")

    sub = add("attract", cmd_attract, "trajectoire et cycle attracteur")
    sub.add_argument("--value", required=True)
    sub.add_argument("--u")

    sub = add("search-run", cmd_search_run, "suites d-consécutives de nombres u-attirés")
    sub.add_argument("--u", required=True)
    sub.add_argument("--len", type=int, required=True)
    sub.add_argument("--limit", type=int, required=True)
    sub.add_argument("--first", action="store_true")
    sub.add_argument("--stride", type=int, help="remplace le pas d = pgcd(2, b-1)")
    sub.add_argument("--workers", type=int, default=default_workers())
    sub.add_argument("--chunk", type=int, default=DEFAULT_SCAN_CHUNK)

    sub = add("good", cmd_good, "témoin [c,b]-bon")
    sub.add_argument("--set", required=True, help="t1,t2,...")
    sub.add_argument("--u", required=True)
    sub.add_argument("--normalize", action="store_true")
    sub.add_argument("--cap", type=int, default=DEFAULT_NORMALIZE_CAP)

    sub = add("cycle-good", cmd_cycle_good, "témoin [c,b]-cycle-bon")
    sub.add_argument("--set", required=True)

    sub = add("consec", cmd_consec, "N entiers consécutifs u-attirés")
    sub.add_argument("--u", required=True)
    sub.add_argument("--len", type=int, required=True)

    sub = add("verify-tables", cmd_verify_tables, "recalcule les tableaux 1 à 5", with_params=False)
    sub.add_argument("--which", choices=["1", "2", "3", "4", "5", "all"], default="all")

    sub = add("check", cmd_check, "propriétés vérifiées sur tirages aléatoires", with_params=False)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--samples", type=int, default=1000)
    sub.add_argument("--only", nargs="*", choices=sorted(CHECKS))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(args.log_level)
    try:
        p, payload, lines, code = args.func(args)
    except TableMismatchError as e:
        logger.error(f"Vérification en échec : {e}")
        print(f"échec : {e}", file=sys.stderr)
        return EXIT_FAILED
    except (HappyError, ValidationError, ValueError) as e:
        logger.error(f"Erreur : {e}")
        print(f"erreur : {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.json:
        envelope = OutputEnvelope.build(args.command, p, payload, args.render)
        print(json.dumps(envelope.model_dump(), ensure_ascii=False, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
