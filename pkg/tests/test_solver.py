import math

import pytest

import qbounds.solver as solver_module
from qbounds import (
    SamplingMethod,
    Unreachable,
    evaluate_confidence,
    min_sample_size,
    q_at_confidence,
)

WR = SamplingMethod.WITH_REPLACEMENT
WOR = SamplingMethod.WITHOUT_REPLACEMENT


def _conf_wr(p, k, q):
    return evaluate_confidence(WR, p, k, q).confidence


def test_min_sample_size_bracketed_by_published_cell():
    # confidence 0.39 is reached at k = 1000 for p = 0.005, q = 2
    answer = min_sample_size(WR, 0.005, 2.0, 0.39)
    assert isinstance(answer, int) and answer <= 1000
    assert _conf_wr(0.005, answer, 2.0) >= 0.39
    assert _conf_wr(0.005, answer - 1, 2.0) < 0.39


def test_min_sample_size_between_published_cells():
    # 0.39 at k=1000, above 0.995 at k=10000: the 0.95 answer sits between
    answer = min_sample_size(WR, 0.005, 2.0, 0.95)
    assert 1000 < answer < 10000


def test_min_sample_size_degenerate_tails():
    # even at p = 1 the bound charges both tails (only the exact oracle
    # knows the distribution is a point mass), so the answer obeys the
    # round-trip contract rather than collapsing to k = 1
    answer = min_sample_size(WR, 1.0, 2.0, 0.5)
    assert answer == 2
    assert _conf_wr(1.0, answer, 2.0) >= 0.5 > _conf_wr(1.0, answer - 1, 2.0)


def test_min_sample_size_unreachable_reports_cap():
    answer = min_sample_size(WR, 1e-6, 1.01, 0.999, k_max=100)
    assert isinstance(answer, Unreachable)
    assert answer.limit == 100.0
    assert answer.confidence_at_limit == _conf_wr(1e-6, 100, 1.01)


def test_min_sample_size_wor_caps_at_n_minus_one():
    answer = min_sample_size(WOR, 0.005, 2.0, 0.9, n=10**6)
    assert isinstance(answer, int) and answer < 10**6
    assert evaluate_confidence(WOR, 0.005, answer, 2.0, n=10**6).confidence >= 0.9
    assert evaluate_confidence(WOR, 0.005, answer - 1, 2.0, n=10**6).confidence < 0.9
    # tiny population: even k = n - 1 cannot reach a tight target
    hard = min_sample_size(WOR, 0.4, 1.0001, 0.999, n=50)
    assert isinstance(hard, Unreachable)
    assert hard.limit == 49.0


def test_min_sample_size_validation():
    with pytest.raises(ValueError):
        min_sample_size(WR, 0.1, 2.0, 1.0)
    with pytest.raises(ValueError):
        min_sample_size(WR, 0.1, 2.0, 0.0)
    with pytest.raises(ValueError):
        min_sample_size(WOR, 0.1, 2.0, 0.5)  # n missing


def test_q_at_confidence_round_trip():
    answer = q_at_confidence(WR, 0.005, 10000, 0.95)
    assert answer <= 2.0  # published cell shows > 0.995 already at q = 2
    assert _conf_wr(0.005, 10000, answer) >= 0.95
    assert _conf_wr(0.005, 10000, answer * (1 - 1e-6)) < 0.95


def test_q_at_confidence_hits_floor():
    # Chernoff under-term floor e^(-pk) = e^(-0.05) caps the confidence
    answer = q_at_confidence(WR, 0.005, 10, 0.999)
    assert isinstance(answer, Unreachable)
    assert answer.limit == 10**6
    assert answer.confidence_at_limit < 0.999
    assert answer.confidence_at_limit <= 1 - math.exp(-0.05) + 1e-9


def test_q_at_confidence_tiny_target():
    # as the target approaches 0 the answer approaches the q where the
    # clamped confidence first turns positive (at q = 1 both tails are
    # vacuous, so the confidence there is exactly 0, below any target)
    answer = q_at_confidence(WR, 0.5, 100, 1e-9)
    assert _conf_wr(0.5, 100, answer) >= 1e-9
    assert _conf_wr(0.5, 100, answer * (1 - 1e-6)) < 1e-9


def test_q_at_confidence_wor():
    answer = q_at_confidence(WOR, 0.01, 5000, 0.95, n=10**6)
    conf = evaluate_confidence(WOR, 0.01, 5000, answer, n=10**6).confidence
    assert conf >= 0.95
    backed = answer * (1 - 1e-6)
    if backed > 1.0:
        assert evaluate_confidence(WOR, 0.01, 5000, backed, n=10**6).confidence < 0.95


def test_solver_monotone_in_target():
    targets = [0.2, 0.5, 0.8, 0.95, 0.99]
    answers = [min_sample_size(WR, 0.01, 2.0, t) for t in targets]
    assert all(isinstance(a, int) for a in answers)
    assert answers == sorted(answers)


def test_solver_stays_inside_search_box(monkeypatch):
    seen_k, seen_q = [], []
    real = evaluate_confidence

    def recording(method, p, k, q, n=None, inequalities=None):
        seen_k.append(k)
        seen_q.append(q)
        return real(method, p, k, q, n=n, inequalities=inequalities)

    monkeypatch.setattr(solver_module, "evaluate_confidence", recording)
    min_sample_size(WR, 0.003, 2.0, 0.9, k_max=10**7)
    q_at_confidence(WR, 0.003, 2000, 0.9, q_max=10**4)
    assert all(1 <= k <= 10**7 for k in seen_k)
    assert all(1.0 <= q <= 10**4 for q in seen_q)


class _Fake:
    def __init__(self, confidence):
        self.confidence = confidence


def test_non_monotone_probe_falls_back_to_linear_scan(monkeypatch):
    # synthetic confidence with a dip at the k=4 probe forces the scan path
    table = {1: 0.3, 2: 0.5, 3: 0.5, 4: 0.4, 5: 0.4, 6: 0.95, 7: 0.95, 8: 0.95}
    calls = []

    def fake(method, p, k, q, n=None, inequalities=None):
        calls.append(k)
        return _Fake(table.get(k, 0.95))

    monkeypatch.setattr(solver_module, "evaluate_confidence", fake)
    answer = min_sample_size(WR, 0.1, 2.0, 0.9)
    assert answer == 6
    # probes 1,2,4,8 then a forward scan from the last probe below target
    assert calls == [1, 2, 4, 8, 5, 6]


def test_unreachable_is_a_result_not_an_error():
    answer = q_at_confidence(WR, 0.005, 10, 0.999)
    assert isinstance(answer, Unreachable)
    assert answer.target_confidence == 0.999
