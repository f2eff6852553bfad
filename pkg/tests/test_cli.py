import json

from app import cli
from app.cli import main
from app.models.programs import StepProgram
from app.services.errors import TableMismatchError
from app.services.goodness import replay


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cycles(capsys):
    code, out, _ = run(capsys, "cycles", "--c", "2", "--b", "10")
    assert code == 0
    assert "28 → 70 → 51 → 28" in out
    assert "29 → 87 → 115 → 29" in out


def test_cycles_base_rendering(capsys):
    code, out, _ = run(capsys, "cycles", "--c", "9", "--b", "9", "--render", "base")
    assert code == 0
    assert "12 → 15 → 38 → 101 → 12" in out
    assert "24 → 32 → 24" in out


def test_attract(capsys):
    """La dernière ligne répond à la question « a est-il u-attiré ? »."""
    code, out, _ = run(capsys, "attract", "--c", "4", "--b", "10", "--value", "2", "--u", "6")
    assert code == 0
    assert out.strip().splitlines()[-1] == "true"
    _, out, _ = run(capsys, "attract", "--c", "3", "--b", "10", "--value", "20", "--u", "7")
    assert out.strip().splitlines()[-1] == "true"
    _, out, _ = run(capsys, "attract", "--c", "0", "--b", "10", "--value", "4", "--u", "1")
    assert out.strip().splitlines()[-1] == "false"


def test_attract_base_b_input(capsys):
    code, out, _ = run(capsys, "attract", "--c", "5", "--b", "3", "--value", "20", "--radix-b")
    assert code == 0
    assert out.startswith("trajectoire : 20 (6)")


def test_search_run(capsys):
    code, out, _ = run(capsys, "search-run", "--c", "3", "--b", "10", "--u", "7", "--len", "2",
                       "--limit", "100", "--first", "--workers", "1")
    assert code == 0
    assert out.strip() == "1 : 1, 2"


def test_search_run_json(capsys):
    code, out, _ = run(capsys, "search-run", "--c", "0", "--b", "10", "--u", "1", "--len", "2",
                       "--limit", "2000", "--first", "--workers", "1", "--json")
    assert code == 0
    envelope = json.loads(out)
    assert envelope["command"] == "search-run"
    assert envelope["params"] == {"c": 0, "b": 10, "d": 1, "m": 2, "B": 162}
    assert envelope["payload"]["runs"][0]["start"] == 31


def test_search_run_nothing_found(capsys):
    code, out, _ = run(capsys, "search-run", "--c", "0", "--b", "9", "--u", "1", "--len", "2",
                       "--limit", "500", "--stride", "1", "--workers", "1")
    assert code == 0
    assert out.strip() == "aucune suite trouvée"


def test_good_json_program_replays(capsys):
    code, out, _ = run(capsys, "good", "--c", "0", "--b", "10", "--set", "2,5", "--u", "1", "--json")
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["verified"] is True
    program = StepProgram.from_payload(payload["program"])
    assert replay(program, payload["domain"]) == [1, 1]


def test_good_normalize(capsys):
    code, out, _ = run(capsys, "good", "--c", "0", "--b", "10", "--set", "16,61", "--u", "1", "--normalize")
    assert code == 0
    assert "forme normale : k = 2, n de 65 chiffres (vérifiée)" in out


def test_good_normalize_exceeds_cap(capsys):
    code, out, _ = run(capsys, "good", "--c", "0", "--b", "10", "--set", "2,5", "--u", "1", "--normalize", "--json")
    assert code == 0
    normalized = json.loads(out)["payload"]["normalized"]
    assert normalized["status"] == "exceeds_cap"
    assert normalized["n_prime_digits"] == 38


def test_good_non_congruent_set(capsys):
    """Ensemble non congru modulo d : erreur d'utilisation."""
    code, _, err = run(capsys, "good", "--c", "1", "--b", "9", "--set", "1,2", "--u", "1")
    assert code == 2
    assert "erreur" in err


def test_cycle_good(capsys):
    code, out, _ = run(capsys, "cycle-good", "--c", "5", "--b", "3", "--set", "1,2")
    assert code == 0
    assert "k3 = 0, image V_3" in out
    assert "vérifié : oui" in out


def test_consec(capsys):
    code, out, _ = run(capsys, "consec", "--c", "7", "--b", "9", "--u", "8", "--len", "3")
    assert code == 0
    assert "u = 8 dans C_1" in out
    assert "vérifié : oui" in out


def test_verify_tables(capsys):
    code, out, _ = run(capsys, "verify-tables", "--which", "1")
    assert code == 0
    assert out.startswith("Tableau 1 : PASS, 10 lignes")


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--seed", "1", "--samples", "50")
    assert code == 0
    assert "descent : 50 tirages, 0 violation(s)" in out


def test_usage_errors(capsys):
    assert run(capsys, "cycles", "--c", "0", "--b", "1")[0] == 2
    assert run(capsys, "cycles")[0] == 2
    assert run(capsys, "attract", "--c", "0", "--b", "10", "--value", "abc")[0] == 2
    assert run(capsys, "attract", "--c", "3", "--b", "10", "--value", "5", "--u", "2")[0] == 2


def test_good_target_with_long_preimage(capsys):
    """Base 2 : l'antécédent de 3000 a 3000 chiffres."""
    code, out, _ = run(capsys, "good", "--c", "0", "--b", "2", "--set", "1,2", "--u", "3000")
    assert code == 0
    assert "vérifié : oui" in out


def test_table_mismatch_is_a_failed_verification(capsys, monkeypatch):
    """Une case de tableau en défaut donne le code 1, pas une erreur d'utilisation."""
    def mismatch(values, p):
        raise TableMismatchError(f"Tableau 3 {p.label}", "image absente des V_j")

    monkeypatch.setattr(cli, "cycle_good_witness", mismatch)
    code, _, err = run(capsys, "cycle-good", "--c", "5", "--b", "3", "--set", "1,2")
    assert code == 1
    assert "Tableau 3 [5,3]" in err
