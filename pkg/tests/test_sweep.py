import json
import math

import pytest

from simpleknots.errors import CheckpointCorrupt, ParameterMismatch, ResourceLimit
from simpleknots.floer import width
from simpleknots.families import classify
from simpleknots.sweep import (PResult, SweepReport, blocks, check_p, estimated_cost,
                               read_checkpoint, resume, verify_conjecture, write_checkpoint)


def run(max_p, **kw):
    kw.setdefault("progress_stream", None)
    return verify_conjecture(max_p, **kw)


def test_small_sweep_counts_every_primitive_k():
    r = run(7, dedup=False)
    assert r.clean and r.complete
    assert r.knots_checked == sum(sum(math.gcd(k, p) == 1 for k in range(1, p)) for p in range(2, 8))
    assert all(width(7, k * k % 7, k) < 14 for k in range(1, 7))
    assert check_p(7, dedup=False).lspace_count == 6


def test_check_p_against_classify():
    for p in range(2, 80):
        res = check_p(p, dedup=False)
        lspace = sum(classify(p, k).lspace_criterion for k in range(1, p) if math.gcd(k, p) == 1)
        assert res.lspace_count == lspace and res.exceptions == []


def test_dedup_counts_orbits():
    on, off = run(300), run(300, dedup=False)
    assert (on.knots_checked, on.lspace_count) == (7189, 1489)
    assert (off.knots_checked, off.lspace_count) == (27397, 5353)
    assert on.clean and off.clean


def test_dedup_preserves_exception_lists():
    on = run(60, tange_negative_j=False)
    off = run(60, dedup=False, tange_negative_j=False)
    assert on.conjecture_violations
    assert on.conjecture_violations == off.conjecture_violations
    assert on.realizability_anomalies == off.realizability_anomalies
    first = on.conjecture_violations[0]
    assert (first.p, first.k, first.kind) == (8, 3, "conjecture_violation")
    keys = [(e.p, e.k) for e in on.conjecture_violations]
    assert keys == sorted(keys)


def test_exception_stream(tmp_path):
    path = tmp_path / "exc.jsonl"
    r = run(30, tange_negative_j=False, exceptions_path=path)
    lines = [json.loads(x) for x in path.read_text().splitlines()]
    assert lines == [e.to_json() for e in r.conjecture_violations + r.realizability_anomalies]
    assert set(lines[0]) == {"p", "k", "q", "width", "kind", "families"}


def test_worker_count_does_not_change_results():
    one = run(250, workers=1)
    two = run(250, workers=2)
    assert one.result_dict() == two.result_dict()
    a = run(50, workers=1, tange_negative_j=False)
    b = run(50, workers=3, tange_negative_j=False)
    assert a.result_dict() == b.result_dict()


def test_interrupt_and_resume(tmp_path):
    ck = tmp_path / "ck.json"
    full = run(200, tange_negative_j=False)
    part = run(200, tange_negative_j=False, checkpoint_path=ck, stop_after=120)
    assert not part.complete and read_checkpoint(ck).last_completed_p == 120
    done = resume(ck, progress_stream=None)
    assert done.complete
    assert done.result_dict() == full.result_dict()
    assert read_checkpoint(ck).result_dict() == full.result_dict()


def test_resume_completed_run_is_unchanged(tmp_path):
    ck = tmp_path / "ck.json"
    first = run(40, checkpoint_path=ck)
    again = resume(ck)
    assert again.result_dict() == first.result_dict()


def test_resume_parameter_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    run(40, checkpoint_path=ck, stop_after=20)
    with pytest.raises(ParameterMismatch):
        resume(ck, dedup=False)
    with pytest.raises(ParameterMismatch):
        resume(ck, max_p=41)


@pytest.mark.parametrize("content", ["", "{not json", '{"format_version": 99, "report": {}}',
                                     '{"format_version": 1, "report": {"max_p": 5}}', "[1, 2]"])
def test_corrupt_checkpoint(tmp_path, content):
    ck = tmp_path / "ck.json"
    ck.write_text(content)
    with pytest.raises(CheckpointCorrupt):
        resume(ck)


def test_checkpoint_roundtrip_and_atomic_write(tmp_path):
    r = run(30, tange_negative_j=False)
    ck = tmp_path / "ck.json"
    write_checkpoint(ck, r)
    assert not (tmp_path / "ck.json.tmp").exists()
    back = read_checkpoint(ck)
    assert back.result_dict() == r.result_dict()


def test_merge_requires_order():
    r = SweepReport(10, True, True)
    r.merge(PResult(2, 1, 1, []))
    with pytest.raises(ValueError):
        r.merge(PResult(4, 1, 1, []))


def test_blocks_partition():
    bs = list(blocks(2, 5000))
    assert bs[0][0] == 2 and bs[-1][1] == 5000
    assert all(b[0] == a[1] + 1 for a, b in zip(bs, bs[1:]))


def test_arguments():
    with pytest.raises(ValueError):
        run(1)
    with pytest.raises(ValueError):
        run(10, workers=0)
    with pytest.raises(ResourceLimit):
        run(2**31)
    assert estimated_cost(10**5, False) == pytest.approx(2.026e14)
    assert estimated_cost(10**5, True) == pytest.approx(2.026e14 / 4)


def test_progress_goes_to_stream(capsys):
    import sys
    verify_conjecture(30, progress_stream=sys.stderr, progress_interval=0.0)
    err = capsys.readouterr().err
    assert "p=30/30" in err and "eta=" in err
