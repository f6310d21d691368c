from __future__ import annotations

import io
import json

import pytest

from quotcount.cli import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_VALIDATION,
    PRESETS,
    JobRequest,
    main,
    parse_insertions,
    run,
    run_batch,
    run_preset,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def last_json(out):
    lines = [line for line in out.strip().splitlines() if line.strip()]
    return json.loads(lines[-1])


def test_parse_insertions():
    assert parse_insertions("a1:3,a2:1") == (("chern", 1, 3), ("chern", 2, 1))
    assert parse_insertions("s2:4") == (("segre", 2, 4),)
    assert parse_insertions("a3") == (("chern", 3, 1),)
    assert parse_insertions("") == ()
    with pytest.raises(ValueError):
        parse_insertions("b1:2")
    with pytest.raises(ValueError):
        parse_insertions("a0:1")


def test_lagrangian_example(capsys):
    code, out = run_cli(
        capsys, "hypersurface", "--g", "1", "--d", "2", "--r", "2", "--n", "4",
        "--l", "1", "--ins", "a1:4,a2:1", "--format", "json", "--workers", "1",
        "--path", "both",
    )
    assert code == EXIT_OK
    record = last_json(out)
    assert record["value"]["exact"] == "24"
    assert record["is_integer"] is True
    assert record["paths"]["agree"] is True
    assert record["schema"] == "quotcount.result/1"


def test_closed_form_example(capsys):
    code, out = run_cli(
        capsys, "closed-form", "--g", "0", "--d", "2", "--r", "3", "--l", "2",
        "--format", "json",
    )
    assert code == EXIT_OK
    assert last_json(out)["value"]["exact"] == "32"


def test_dimension_mismatch_exit_code(capsys):
    # The degree-3 monomial a1*a2 does not fill the twisted dimension 6.
    code, out = run_cli(
        capsys, "hypersurface", "--g", "1", "--d", "2", "--r", "2", "--n", "4",
        "--l", "1", "--ins", "a1:1,a2:1", "--format", "json", "--workers", "1",
    )
    assert code == EXIT_VALIDATION
    record = last_json(out)
    assert record["ok"] is False
    assert record["error"]["type"] == "DimensionMismatchError"


def test_grassmannian_value_round_trip(capsys):
    code, out = run_cli(
        capsys, "grassmannian", "--g", "1", "--d", "1", "--r", "2", "--n", "3",
        "--ins", "a1:3", "--format", "json", "--workers", "1",
    )
    assert code == EXIT_OK
    record = last_json(out)
    assert record["value"] == {
        "exact": "3", "numerator": "3", "denominator": "1", "float_approx": 3.0,
    }
    assert record["stats"]["subsets"] == 3


def test_duality_mode(capsys):
    code, out = run_cli(
        capsys, "duality-check", "--g", "1", "--d", "1", "--r", "2", "--n", "3",
        "--ins", "a1:3", "--format", "json",
    )
    assert code == EXIT_OK
    assert last_json(out)["duality"]["equal"] is True


def test_oracle_mode(capsys):
    code, out = run_cli(
        capsys, "oracle-check", "--g", "0", "--d", "1", "--r", "2", "--n", "4",
        "--ins", "a1:8", "--format", "json", "--workers", "1",
    )
    assert code == EXIT_OK
    record = last_json(out)
    assert record["oracle"] == {"engine": "8", "oracle": "8", "equal": True}


def test_tevelev_mode(capsys):
    code, out = run_cli(
        capsys, "tevelev", "--g", "1", "--d", "2", "--r", "5", "--l", "2",
        "--format", "json",
    )
    assert code == EXIT_OK
    record = last_json(out)
    assert record["tevelev"]["point_count"] == "16"
    assert record["tevelev"]["implied_tevelev"] == "4"


def test_b_reduce_mode(capsys):
    code, out = run_cli(
        capsys, "b-reduce", "--g", "1", "--d", "1", "--r", "2", "--n", "3",
        "--pairs", "1", "--ins", "a1:2", "--format", "json", "--workers", "1",
    )
    assert code == EXIT_OK
    assert last_json(out)["value"]["exact"] == "1"


def test_workers_do_not_change_output(capsys):
    records = []
    for workers in ("1", "4"):
        code, out = run_cli(
            capsys, "grassmannian", "--g", "0", "--d", "1", "--r", "2", "--n", "4",
            "--ins", "a1:8", "--format", "json", "--workers", workers,
        )
        assert code == EXIT_OK
        record = last_json(out)
        del record["stats"]
        records.append(record)
    assert records[0] == records[1]


def test_text_format(capsys):
    code, out = run_cli(
        capsys, "grassmannian", "--g", "1", "--d", "1", "--r", "2", "--n", "3",
        "--ins", "a1:3", "--workers", "1",
    )
    assert code == EXIT_OK
    assert "value = 3" in out


def test_batch_runs_all_records_despite_errors(tmp_path):
    lines = [
        {"mode": "grassmannian", "g": 1, "d": 1, "r": 2, "n": 3, "ins": "a1:3"},
        {"mode": "hypersurface", "g": 1, "d": 2, "r": 2, "n": 4,
         "multidegree": [1], "ins": "a1:1,a2:1"},
        {"mode": "hypersurface", "g": 1, "d": 2, "r": 2, "n": 4,
         "multidegree": [1], "ins": "a1:4,a2:1", "path": "both"},
        {"mode": "closed-form", "variant": "lg24", "g": 0, "d": 1, "m1": 6, "m2": 0},
    ]
    path = tmp_path / "jobs.jsonl"
    path.write_text("\n".join(json.dumps(x) for x in lines) + "\n")
    buffer = io.StringIO()
    code = run_batch(str(path), out=buffer)
    rows = [json.loads(line) for line in buffer.getvalue().strip().splitlines()]
    summary = rows[-1]
    assert summary["summary"] is True
    assert summary["records"] == 4
    assert summary["ok"] == 3
    assert summary["validation_errors"] == 1
    assert summary["path_agreement"] == {"checked": 1, "agreed": 1, "pass": True}
    assert code == EXIT_VALIDATION  # one record failed validation
    values = [row.get("value", {}).get("exact") for row in rows[:-1]]
    assert values == ["3", None, "24", "8"]


def test_batch_tolerates_malformed_records(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(
        "not json at all\n"
        '{"mode": "grassmannian", "g": 1, "d": 1, "r": 2, "n": 3, "ins": "a1:3"}\n'
        '{"mode": "grassmannian", "unknown_field": 1}\n'
    )
    buffer = io.StringIO()
    code = run_batch(str(path), out=buffer)
    rows = [json.loads(line) for line in buffer.getvalue().strip().splitlines()]
    summary = rows[-1]
    assert summary["records"] == 3
    assert summary["ok"] == 1
    assert summary["validation_errors"] == 2
    assert code == EXIT_VALIDATION


def test_batch_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    buffer = io.StringIO()
    code = run_batch(str(path), out=buffer)
    assert code == EXIT_OK
    summary = json.loads(buffer.getvalue().strip().splitlines()[-1])
    assert summary["records"] == 0


def test_batch_duality_pairs(tmp_path):
    # insertion degrees fill e = d*n + r*(n-r)*(1-g) in each record
    lines = [
        {"mode": "duality-check", "g": 1, "d": 1, "r": 2, "n": 4, "ins": "a1:4"},
        {"mode": "duality-check", "g": 0, "d": 1, "r": 2, "n": 5, "ins": "a1:7,a2:2"},
        {"mode": "duality-check", "g": 2, "d": 2, "r": 3, "n": 6, "ins": "a3:1"},
    ]
    path = tmp_path / "duality.jsonl"
    path.write_text("\n".join(json.dumps(x) for x in lines) + "\n")
    buffer = io.StringIO()
    code = run_batch(str(path), out=buffer)
    assert code == EXIT_OK
    rows = [json.loads(line) for line in buffer.getvalue().strip().splitlines()]
    assert all(row["duality"]["equal"] for row in rows[:-1])


def test_batch_lagrangian_grid_matches_closed_form(tmp_path):
    from quotcount.twist import closed_form_lg24

    lines = []
    expected = []
    for d in range(1, 5):
        for g in range(0, 3):
            if d <= 2 * g - 2:
                continue
            total = 3 * (d - g + 1)
            for m2 in range(total // 2 + 1):
                m1 = total - 2 * m2
                lines.append({
                    "mode": "hypersurface", "g": g, "d": d, "r": 2, "n": 4,
                    "multidegree": [1], "ins": f"a1:{m1},a2:{m2}", "path": "both",
                })
                expected.append(str(closed_form_lg24(g, d, m1, m2).as_integer()))
    path = tmp_path / "grid.jsonl"
    path.write_text("\n".join(json.dumps(x) for x in lines) + "\n")
    buffer = io.StringIO()
    code = run_batch(str(path), out=buffer)
    assert code == EXIT_OK
    rows = [json.loads(line) for line in buffer.getvalue().strip().splitlines()]
    summary = rows.pop()
    assert summary["path_agreement"]["pass"] is True
    assert summary["ok"] == len(lines)
    assert [row["value"]["exact"] for row in rows] == expected


def test_console_entry_point_runs():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "quotcount", "grassmannian", "--g", "1", "--d", "1",
         "--r", "2", "--n", "3", "--ins", "a1:3", "--format", "json", "--workers", "1"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout.strip().splitlines()[-1])["value"]["exact"] == "3"


def test_presets_all_reproduce_expected_values():
    for name in PRESETS:
        result, expected, matched = run_preset(name)
        assert result.ok, (name, result.error)
        assert matched, (name, expected, result.value)


def test_preset_cli_list_and_run(capsys):
    code, out = run_cli(capsys, "preset")
    assert code == EXIT_OK
    assert "lg24-g1-d2" in out
    code, out = run_cli(capsys, "preset", "lg24-g1-d2", "--format", "json")
    assert code == EXIT_OK
    record = last_json(out)
    assert record["matched"] is True and record["expected"] == "24"


def test_unknown_preset(capsys):
    code = main(["preset", "no-such-thing"])
    assert code == EXIT_VALIDATION


def test_run_request_directly():
    result = run(JobRequest(mode="grassmannian", g=0, d=0, r=2, n=4,
                            insertions=(("chern", 1, 4),)))
    assert result.ok and result.value == 2
