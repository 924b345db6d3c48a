"""Acceptance run: every criterion at its stated size, tolerance and time budget."""

import pytest

from lofs.experiments import CRITERIA, evaluate, summary_line


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}")
def test_criterion(criterion, capsys):
    row = evaluate(criterion)
    with capsys.disabled():
        print("\n" + summary_line(row))
    assert row["ok"], row
    assert row["in_time"], f"took {row['seconds']} s, budget {row['budget']} s"


def test_r_algebra_report_has_both_witnesses():
    row = evaluate(CRITERIA[6])
    lari = row["runs"][0]
    assert lari["positive_witness"]["R-algebra"]
    assert lari["negative_witness"]["map"]["table"] == [0]
    assert not lari["negative_witness"]["R-algebra"]
    assert lari["negative_witness"]["unfillable square"] is not None


def test_fault_witnesses_name_laws():
    faults = evaluate(CRITERIA[9])["faults"]
    assert "unit law" in faults["corrupted multiplication"]["law"]
    assert "counit law" in faults["broken comultiplication"]["law"]
    assert "not monotone" in faults["non-monotone table"]["law"]
