# app/services/tables.py
"""Comparaison des cycles calculés aux tableaux 1 et 2 embarqués."""
import re
from collections import defaultdict
from pathlib import Path

from app.models.cycles import Cycle
from app.models.digits import format_number, parse_number
from app.models.params import Params
from app.models.proof import CellCheck, TableReport
from app.services import cycle_goodness
from app.services.dynamics import find_cycles

DATA_DIR = Path(__file__).parent.parent / "data"
CYCLE_TABLES = {1: DATA_DIR / "table1_cycles.txt", 2: DATA_DIR / "table2_cycles.txt"}

_ROW = re.compile(r"^\[(\d+),(\d+)\]\s+(.+)$")


def load_cycle_table(table: int) -> dict[Params, list[Cycle]]:
    """Lit un tableau de cycles « [c,b] a -> b -> ... -> a » (écritures en base b)."""
    rows: dict[Params, list[Cycle]] = defaultdict(list)
    for line in CYCLE_TABLES[table].read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        match = _ROW.match(line)
        if match is None:
            raise ValueError(f"Ligne illisible dans le tableau {table} : {line!r}")
        p = Params(c=int(match.group(1)), b=int(match.group(2)))
        values = [parse_number(token, p.b) for token in match.group(3).split("->")]
        # la dernière valeur referme le cycle
        rows[p].append(Cycle.canonical(values[:-1]))
    return dict(rows)


def render_cycle(cycle: Cycle, b: int) -> str:
    return " -> ".join(format_number(a, b) for a in cycle.elements + cycle.elements[:1])


def verify_cycle_table(table: int) -> TableReport:
    expected = load_cycle_table(table)
    cells = []
    for p, cycles in expected.items():
        computed = list(find_cycles(p).cycles)
        wanted = sorted(cycles, key=lambda cycle: cycle.elements[0])
        missing = [render_cycle(c, p.b) for c in wanted if c not in computed]
        extra = [render_cycle(c, p.b) for c in computed if c not in wanted]
        detail = "" if computed == wanted else f"manquants : {missing} ; en trop : {extra}"
        cells.append(CellCheck(table=table, row=p.label, cell="cycles", passed=computed == wanted, detail=detail))
    if table == 2:
        # lignes à un seul cycle : tout entier est attiré, rien à tabuler ailleurs
        for p in expected:
            if (p.c, p.b) not in cycle_goodness.A:
                single = len(find_cycles(p).cycles) == 1
                cells.append(CellCheck(table=2, row=p.label, cell="cycle unique", passed=single))
    return TableReport(table=table, rows=len(expected), cells=cells)


def verify_proof_table(table: int) -> TableReport:
    checker = {
        3: cycle_goodness.verify_table3,
        4: cycle_goodness.verify_table4,
        5: cycle_goodness.verify_table5,
    }[table]
    cells = []
    for c, b in cycle_goodness.A:
        cells.extend(checker(Params(c=c, b=b)))
    return TableReport(table=table, rows=len(cycle_goodness.A), cells=cells)


def verify_table(table: int) -> TableReport:
    if table in CYCLE_TABLES:
        return verify_cycle_table(table)
    if table in (3, 4, 5):
        return verify_proof_table(table)
    raise ValueError(f"Tableau inconnu : {table}")
