import logging

import numpy as np
import pytest

from eulerperiod.arnold import (
    _minima_snapshots,
    arnold_sequence,
    diagonal_minima,
    u_from_minima,
    valuation_row,
    valuation_rows,
)
from eulerperiod.core_arith import CappedValuation, DomainError
from eulerperiod.ftransform import f_transform

from .oracles import naive_rows, v2_exact

TABLE_1 = (2, 4, 4, 4, 8, 8, 8, 8, 10, 12, 12, 16, 16, 16, 16, 16, 18, 20)


def _strs(vals):
    return [str(v) for v in vals]


@pytest.mark.parametrize(
    "n, cap, expected",
    [
        (5, 8, ["0", "0", "2", "1", "inf"]),
        (4, 8, ["inf", "0", "1", "1"]),
        (1, 4, ["0"]),
    ],
)
def test_valuation_row_examples(n, cap, expected):
    assert _strs(valuation_row(n, cap)) == expected


def test_valuation_rows_match_exact_valuations():
    exact = naive_rows(90)
    for cap in (3, 20, 64, 80):
        for row, ref in zip(valuation_rows(90, cap), exact):
            want = [None if v2_exact(x) is None or v2_exact(x) >= cap else v2_exact(x) for x in ref]
            assert [v.value for v in row] == want


def test_diagonal_minima_examples():
    mins = diagonal_minima(5, 8)
    assert mins[0] == CappedValuation(8, 0)  # D_1 = 0, inf, 0, inf, 0
    assert mins[1] == CappedValuation(8, 0)  # D_2 = 0, 0, 0, 0
    assert mins[4].is_top


def _oracle_minima(n_rows):
    """Exact-integer minima per diagonal; None for an all-zero truncation."""
    rows = naive_rows(n_rows)
    mins = []
    for i in range(n_rows):
        vals = [v2_exact(r[i]) for r in rows[i:]]
        finite = [v for v in vals if v is not None]
        mins.append(min(finite) if finite else None)
    return mins


def test_minima_and_u_against_exact_oracle():
    n_rows = 120
    ref = _oracle_minima(n_rows)
    cap = 30
    got = [v.value for v in diagonal_minima(n_rows, cap)]
    assert got == [None if v is None or v >= cap else v for v in ref]
    u_ref = [max(i + 1 for i, v in enumerate(ref) if v is not None and v < k) for k in range(1, cap + 1)]
    as_ints = [cap if v is None else v for v in got]
    assert u_from_minima(as_ints, cap) == u_ref


def test_minima_never_increase_with_more_rows():
    snaps = list(_minima_snapshots(24, [32, 64, 128, 256]))
    for (n1, a), (_, b) in zip(snaps, snaps[1:]):
        assert np.all(b[:n1] <= a)


def test_table_one():
    table = arnold_sequence(18)
    assert table.u == TABLE_1
    assert table.stable and table.guarded and table.confirmed
    # Arnold's original list had four 4s; the corrected one has three.
    assert table.u.count(4) == 3


def test_first_value():
    assert arnold_sequence(1).u == (2,)


def test_u_nondecreasing():
    u = arnold_sequence(40).u
    assert all(a <= b for a, b in zip(u, u[1:]))


@pytest.mark.parametrize("k_max", [8, 18])
def test_larger_cap_does_not_change_u(k_max):
    base = arnold_sequence(k_max).u
    for cap in (k_max + 1, 64, 65, 130):
        assert arnold_sequence(k_max, cap=cap).u == base


def test_matches_f_transform_at_64():
    table = arnold_sequence(64)
    assert list(table.u) == f_transform((2, 4, 4, 4), 64)


def test_guard_band_holds():
    table = arnold_sequence(32, guard=16)
    top = table.u[-1]
    band = table.minima[top : top + table.guard]
    assert len(band) == table.guard
    assert all(not v.below(32) for v in band)


def test_inconclusive_when_rows_too_few():
    table = arnold_sequence(64, rows=16, max_rows=16)
    assert table.status == "inconclusive"
    assert table.u is None
    assert len(table.candidate_u) == 64


def test_domain_errors():
    with pytest.raises(DomainError):
        arnold_sequence(0)
    with pytest.raises(DomainError):
        arnold_sequence(10, cap=5)
    with pytest.raises(DomainError):
        valuation_row(0, 4)


def test_no_monotonicity_anomalies_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="eulerperiod.arnold"):
        table = arnold_sequence(64)
    assert table.anomalies == ()
    assert not caplog.records


def test_matches_f_transform_at_512():
    # Residues mod 2**512 take the Python-int path.
    table = arnold_sequence(512, rows=1024)
    assert table.confirmed
    assert list(table.u) == f_transform((2, 4, 4, 4), 512)
