from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

from wmub.bases import (
    DualityViolation,
    NotWeaklyUnbiased,
    OverlapCategory,
    WmubSet,
    classify_pair,
    duality_report,
    factor_structure_check,
    overlap_table,
    partition_bases,
    symplectic_label_defect,
    wmub_census,
)
from wmub.geometry import SharedComponent
from wmub.hilbert import OrthonormalBasis
from wmub.zring import dedekind_psi

# Symplectic labels of the d = 15 set in index order; same data as the
# second column of tests/golden/bases_3_5.txt.
LABELS_15 = [
    (1, 0, 0, 1),
    (10, 12, 12, 10), (10, 12, 12, 4), (10, 12, 12, 13), (10, 12, 12, 7), (10, 12, 12, 1),
    (6, 5, 10, 6), (6, 5, 10, 11), (6, 5, 10, 1),
    (0, 2, 7, 0), (0, 2, 7, 9), (0, 2, 7, 3), (0, 2, 7, 12), (0, 2, 7, 6),
    (0, 2, 7, 5), (0, 2, 7, 14), (0, 2, 7, 8), (0, 2, 7, 2), (0, 2, 7, 11),
    (0, 2, 7, 10), (0, 2, 7, 4), (0, 2, 7, 13), (0, 2, 7, 7), (0, 2, 7, 1),
]

FACTOR_LABELS_15 = [
    (None, None),
    (None, 0), (None, 1), (None, 2), (None, 3), (None, 4),
    (0, None), (1, None), (2, None),
    (0, 0), (0, 1), (0, 2), (0, 3), (0, 4),
    (1, 0), (1, 1), (1, 2), (1, 3), (1, 4),
    (2, 0), (2, 1), (2, 2), (2, 3), (2, 4),
]

PARTITION_15 = [
    (1, 10, 16, 22),
    (2, 11, 17, 23),
    (3, 12, 18, 24),
    (4, 9, 13, 19),
    (5, 8, 14, 20),
    (6, 7, 15, 21),
]


def test_build_reference_data(wmub15):
    assert len(wmub15) == 24
    assert list(wmub15.symplectic_labels) == LABELS_15
    assert list(wmub15.factor_labels) == FACTOR_LABELS_15
    assert wmub15.factor_label(4) == (None, 2)
    assert wmub15.symplectic_label(10) == (0, 2, 7, 0)
    assert np.array_equal(wmub15.basis(1).matrix, np.eye(15))


def test_build_other_dimensions(wmub_sets):
    for d, s in wmub_sets.items():
        assert len(s) == dedekind_psi(d)


def test_overlap_table_identity_pair(wmub15):
    table = overlap_table(wmub15, 1, 1)
    assert np.abs(table - np.eye(15)).max() < 1e-12


def test_overlap_table_symmetry(wmub15):
    for i, j in ((1, 2), (4, 17), (7, 24)):
        assert np.allclose(overlap_table(wmub15, i, j), overlap_table(wmub15, j, i).T)


def test_overlap_table_congruence_pattern(wmub15):
    table = overlap_table(wmub15, 1, 2)
    for n in range(15):
        for m in range(15):
            expected = 1 / math.sqrt(5) if n % 3 == m % 3 else 0.0
            assert table[n, m] == pytest.approx(expected, abs=1e-12)
    flat = overlap_table(wmub15, 1, 10)
    assert np.abs(flat - 1 / math.sqrt(15)).max() < 1e-12


def test_overlap_table_index_range(wmub15):
    with pytest.raises(IndexError):
        overlap_table(wmub15, 0, 5)
    with pytest.raises(IndexError):
        overlap_table(wmub15, 1, 25)


def test_classify_pair_examples(wmub15):
    got = classify_pair(wmub15, 1, 7)
    assert got.category is OverlapCategory.SUB_D1
    assert got.value == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert got.support_count == 45
    got = classify_pair(wmub15, 1, 2)
    assert got.category is OverlapCategory.SUB_D2
    assert got.value == pytest.approx(1 / math.sqrt(5), abs=1e-12)
    assert got.support_count == 75
    got = classify_pair(wmub15, 1, 10)
    assert got.category is OverlapCategory.FULL
    assert got.value == pytest.approx(1 / math.sqrt(15), abs=1e-12)
    assert got.support_count == 225
    with pytest.raises(ValueError):
        classify_pair(wmub15, 3, 3)


def test_classify_pair_rejects_impossible_tolerance(wmub15):
    with pytest.raises(NotWeaklyUnbiased):
        classify_pair(wmub15, 1, 2, tol=0.0)


def test_census(wmub_sets):
    expected = {
        15: (36, 60, 180),
        21: (48, 112, 336),
        33: (72, 264, 792),
    }
    for d, s in wmub_sets.items():
        census = wmub_census(s)
        got = (
            census[OverlapCategory.SUB_D1],
            census[OverlapCategory.SUB_D2],
            census[OverlapCategory.FULL],
        )
        assert got == expected[d]
        psi = dedekind_psi(d)
        assert sum(census.values()) == psi * (psi - 1) // 2


def test_row_normalization(wmub15):
    for i, j in ((1, 2), (1, 7), (1, 10), (5, 18), (9, 22)):
        sq = overlap_table(wmub15, i, j) ** 2
        assert np.abs(sq.sum(axis=1) - 1).max() < 1e-10
        assert np.abs(sq.sum(axis=0) - 1).max() < 1e-10


def test_factor_structure(wmub15):
    report = factor_structure_check(wmub15)
    assert report.all_ok
    by_pair = {(r.i, r.j): r for r in report.pairs}
    r17 = by_pair[(1, 7)]
    assert r17.category is OverlapCategory.SUB_D1
    assert r17.second_factors_equal and not r17.first_factors_equal
    assert r17.first_factors_unbiased
    r23 = by_pair[(2, 3)]
    assert r23.category is OverlapCategory.SUB_D2
    assert r23.first_factors_equal and r23.second_factors_unbiased
    r1016 = by_pair[(10, 16)]
    assert r1016.category is OverlapCategory.FULL
    assert r1016.first_factors_unbiased and r1016.second_factors_unbiased


def test_partition_reference_grid(wmub15):
    assert partition_bases(wmub15) == PARTITION_15


def test_partition_sets_are_mutually_unbiased(wmub_sets):
    for d, s in wmub_sets.items():
        sets = partition_bases(s)
        assert len(sets) == s.ctx.d2 + 1
        for group in sets:
            assert len(group) == s.ctx.d1 + 1
            for a_pos, i in enumerate(group):
                for j in group[a_pos + 1:]:
                    assert classify_pair(s, i, j).category is OverlapCategory.FULL


def test_flat_pairs_do_not_chain(wmub15):
    # Being unbiased with a common partner does not make two bases unbiased
    # with each other.
    assert classify_pair(wmub15, 1, 10).category is OverlapCategory.FULL
    assert classify_pair(wmub15, 1, 15).category is OverlapCategory.FULL
    assert classify_pair(wmub15, 10, 15).category is not OverlapCategory.FULL


def test_symplectic_label_conjugation(wmub_sets):
    for s in wmub_sets.values():
        worst = max(symplectic_label_defect(s, j) for j in range(1, len(s) + 1))
        assert worst < 1e-9


def test_duality_report(catalogs, wmub_sets):
    for d in (15, 21, 33):
        report = duality_report(catalogs[d], wmub_sets[d])
        psi = dedekind_psi(d)
        assert len(report.pairs) == psi * (psi - 1) // 2
        assert all(p.match for p in report.pairs)
        d1, d2 = report.ctx.d1, report.ctx.d2
        assert report.line_census == {d2: d1 * psi // 2, d1: d2 * psi // 2, 1: d * psi // 2}
        assert report.overlap_census[OverlapCategory.SUB_D1] == d1 * psi // 2
        assert report.overlap_census[OverlapCategory.SUB_D2] == d2 * psi // 2
        assert report.overlap_census[OverlapCategory.FULL] == d * psi // 2


def test_generic_basis_fits_no_template(wmub15):
    rng = np.random.default_rng(2024)
    random_unitary, _ = np.linalg.qr(
        rng.normal(size=(15, 15)) + 1j * rng.normal(size=(15, 15))
    )
    tampered_bases = (
        wmub15.bases[0],
        OrthonormalBasis(15, random_unitary, "generic"),
        *wmub15.bases[2:],
    )
    tampered = replace(wmub15, bases=tampered_bases)
    with pytest.raises(NotWeaklyUnbiased):
        classify_pair(tampered, 1, 2)


def test_duality_violation_on_index_drift(catalogs, wmub15):
    bases = list(wmub15.bases)
    bases[1], bases[6] = bases[6], bases[1]
    drifted = replace(wmub15, bases=tuple(bases))
    with pytest.raises(DualityViolation):
        duality_report(catalogs[15], drifted)


def test_duality_rejects_mismatched_context(catalogs, wmub_sets):
    with pytest.raises(ValueError):
        duality_report(catalogs[21], wmub_sets[15])


def test_duality_pairwise_dictionary(catalogs, wmub_sets):
    report = duality_report(catalogs[15], wmub_sets[15])
    by_pair = {(p.i, p.j): p for p in report.pairs}
    p17 = by_pair[(1, 7)]
    assert p17.intersection_size == 5
    assert p17.shared_component is SharedComponent.SECOND
    assert p17.category is OverlapCategory.SUB_D1
    for p in report.pairs:
        expected = {
            report.ctx.d2: OverlapCategory.SUB_D1,
            report.ctx.d1: OverlapCategory.SUB_D2,
            1: OverlapCategory.FULL,
        }[p.intersection_size]
        assert p.category is expected
