import pytest

from ubern.errors import PreconditionError
from ubern.lemmas import SWEEPS, run_sweep


def test_registry_contents():
    assert set(SWEEPS) == {
        "2.1", "2.2", "2.4", "2.5", "2.6", "3.2",
        "4.1", "4.2", "4.3", "4.4", "4.5", "4.6", "4.7",
    }


def test_run_sweep_unknown_id():
    with pytest.raises(PreconditionError):
        run_sweep("9.9")


def test_run_sweep_rejects_foreign_parameters():
    with pytest.raises(PreconditionError):
        run_sweep("4.1", a_max=5)


def test_small_sweeps_hold():
    assert run_sweep("2.2", l_max=60).holds
    assert run_sweep("2.4", a_max=60).holds
    assert run_sweep("2.6", q_max=3).holds
    assert run_sweep("4.2", k_max=4, a_max=10, n_max=5).holds
    assert run_sweep("4.4", q_max=3, r_max=3, a_max=8, e_max=2).holds
    assert run_sweep("4.5", k_max=3, m_max=16).holds
    assert run_sweep("4.6", n_max=12).holds
    assert run_sweep("4.7", n_max=12).holds


def test_lemma_4_1_instance_counts():
    result = run_sweep("4.1", k_max=199)
    assert result.holds
    assert result.detail["i"] == 100
    assert result.detail["ii"] == 199


def test_lemma_4_3_ranges():
    result = run_sweep("4.3", a_max=20, i_max=8)
    assert result.holds
    assert result.detail["sum"] == 21 * 8


def test_lemma_3_2_small():
    result = run_sweep("3.2", s_max=2, i_max=2)
    assert result.holds
    assert result.checked > 0
