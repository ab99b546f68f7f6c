from fractions import Fraction

import pytest

import cellmonoid as cm
from cellmonoid.cellbasis import CellBasisError, NotABasis
from cellmonoid.exactalg import RATIONALS, prime_field

from conftest import assert_checks_clean


def node_by_label(d, label):
    for ni in range(len(d.nodes)):
        if d.node_label(ni) == label:
            return ni
    raise KeyError(label)


def test_build_t2(store):
    d = store.datum("tfull2")
    labels = sorted(d.node_label(ni) for ni in range(len(d.nodes)))
    assert labels == ["D0:(1,1)", "D0:(2)", "D1:*"]
    sizes = sorted(len(d.lsets[ni]) * len(d.rsets[ni]) for ni in range(len(d.nodes)))
    assert sizes == [1, 1, 2]
    assert sum(sizes) == 4


def test_build_trivial(store):
    d = store.datum("trivial")
    assert len(d.nodes) == 1 and d.dim == 1
    assert d.basis[(0, 0, 0)] == {0: Fraction(1)}


def test_build_syminv2(store):
    d = store.datum("syminv2")
    sizes = sorted(len(d.lsets[ni]) * len(d.rsets[ni]) for ni in range(len(d.nodes)))
    assert sizes == [1, 1, 1, 4]
    assert sum(sizes) == 7


def test_coordinates(store):
    d = store.datum("tfull2")
    for key, vec in d.basis.items():
        coords = cm.to_cell_coordinates(d, vec)
        assert coords == {key: Fraction(1)}
    assert cm.to_cell_coordinates(d, {}) == {}
    # gamma of the rank-1 class of T2 is the constant-to-1 map, a basis vector
    coords = cm.to_cell_coordinates(d, {1: Fraction(1)})
    assert list(coords.values()) == [Fraction(1)]


def test_gram_definition_examples(store):
    d = store.datum("tfull2")
    rank1 = node_by_label(d, "D1:*")
    g = cm.gram_definition(d, rank1)
    assert (g.rows, g.cols) == (2, 1)
    assert g.entries == [[Fraction(1)], [Fraction(1)]]
    top = node_by_label(d, "D0:(2)")
    assert cm.gram_definition(d, top).entries == [[Fraction(2)]]

    di = store.datum("syminv2")
    rank1 = next(ni for ni in range(len(di.nodes))
                 if len(di.lsets[ni]) == 2 and len(di.rsets[ni]) == 2)
    gi = cm.gram_definition(di, rank1)
    assert cm.mat_rank(gi) == 2
    nonzero = [(r, c) for r in range(2) for c in range(2)
               if gi.entries[r][c] != 0]
    assert len(nonzero) == 2  # one nonzero entry per matched pair


def test_gram_checked_reference_independence(store):
    for key in ("tfull2", "syminv2", "jones3", "null3"):
        d = store.datum(key)
        for ni in range(len(d.nodes)):
            a = cm.gram_definition(d, ni, check=True)
            b = cm.gram_definition(d, ni)
            assert a.entries == b.entries


def test_gram_fast_equals_definition(store):
    for key in ("tfull2", "tfull3", "tpartial2", "syminv2", "jones3", "null3"):
        for field in ("q", "fp:3"):
            d = store.datum(key, field)
            for ni in range(len(d.nodes)):
                assert cm.gram_fast(d, ni).entries == cm.gram_definition(d, ni).entries


def test_lambda0_t2_and_null(store):
    d = store.datum("tfull2")
    assert cm.lambda0(d) == {0, 1, 2}
    dn = store.datum("null3")
    l0 = cm.lambda0(dn)
    assert len(l0) == 2
    labels = {dn.node_label(ni) for ni in l0}
    assert "D1:*" not in labels  # the square-zero class drops out
    dt = store.datum("trivial")
    assert cm.lambda0(dt) == {0}


def test_irreducible_dims(store):
    d = store.datum("tfull2")
    dims = cm.irreducible_dims(d)
    assert sorted(dims.values()) == [1, 1, 1]
    di = store.datum("syminv2")
    assert sorted(cm.irreducible_dims(di).values()) == [1, 1, 1, 2]
    assert sum(v * v for v in cm.irreducible_dims(di).values()) == 7


def test_quasi_hereditary(store):
    assert cm.is_quasi_hereditary(store.datum("tfull3")).ok
    assert cm.is_quasi_hereditary(store.datum("trivial")).ok
    qh = cm.is_quasi_hereditary(store.datum("null3"))
    assert not qh.ok and qh.failing_nodes == ["D1:*"]


def test_semisimple(store):
    assert cm.is_semisimple(store.datum("syminv3")).ok
    res = cm.is_semisimple(store.datum("tfull2"))
    assert not res.ok and "not square" in res.certificate
    f3 = cm.is_semisimple(store.datum("syminv3", "fp:3"))
    assert not f3.ok
    assert cm.is_semisimple(store.datum("syminv3", "fp:5")).ok


def test_analyze_reports(store):
    rep = store.report("syminv3")
    assert rep.semisimple and rep.quasi_hereditary and rep.inverse and rep.regular
    assert rep.dim_sq_sum == 34
    assert_checks_clean(rep)
    rep = store.report("tfull3")
    assert not rep.semisimple and rep.quasi_hereditary
    assert_checks_clean(rep)
    rep = store.report("null3")
    assert not rep.regular and not rep.quasi_hereditary
    assert rep.qh_failing == ["D1:*"]
    assert_checks_clean(rep)


def test_analyze_positive_characteristic(store):
    rep3 = store.report("syminv3", "fp:3")
    assert not rep3.semisimple and not rep3.quasi_hereditary
    assert_checks_clean(rep3)
    rep5 = store.report("syminv3", "fp:5")
    assert rep5.semisimple and rep5.dim_sq_sum == 34
    assert_checks_clean(rep5)


def test_basis_count_identity(store):
    for key in ("tfull2", "tfull3", "tpartial2", "tpartial3", "syminv2", "syminv3", "jones4"):
        d = store.datum(key)
        total = sum(len(d.lsets[ni]) * len(d.rsets[ni]) for ni in range(len(d.nodes)))
        assert total == d.dim


def test_group_mismatch():
    M, _ = cm.family("tfull", 2)
    gs, boxes, schutzs = cm.green_data(M)
    gd = cm.standard_group_data(M, gs, boxes, schutzs, RATIONALS)
    d_units = gs.dclass[M.identity]
    good = gd[d_units]
    gd[d_units] = cm.GroupDatumAttachment(good.datum, good.group, list(reversed(good.iso)), good.kind)
    if gd[d_units].iso != good.iso:
        with pytest.raises(cm.GroupMismatch):
            cm.build_cell_datum(M, gs, boxes, schutzs, gd, RATIONALS)


def test_section_choice_does_not_change_results(store):
    M, _ = store.monoid("syminv2")
    base = cm.analyze(cm.standard_datum(M, RATIONALS, section="least"))
    other = cm.analyze(cm.standard_datum(M, RATIONALS, section="greatest"))
    assert base.to_dict() == other.to_dict()
    M3, _ = store.monoid("tfull3")
    b3 = cm.analyze(cm.standard_datum(M3, RATIONALS, section="least"))
    o3 = cm.analyze(cm.standard_datum(M3, RATIONALS, section="greatest"))
    assert b3.lambda0 == o3.lambda0
    assert [n["gram_rank"] for n in b3.nodes] == [n["gram_rank"] for n in o3.nodes]


def test_datum_rejects_dependent_vectors():
    M, _ = cm.family("tfull", 2)
    gs, boxes, schutzs = cm.green_data(M)
    gd = cm.standard_group_data(M, gs, boxes, schutzs, RATIONALS)
    datum = cm.build_cell_datum(M, gs, boxes, schutzs, gd, RATIONALS)
    broken = dict(datum.basis)
    k0 = sorted(broken)[0]
    broken[k0] = {}  # zero vector makes its block singular
    with pytest.raises(NotABasis):
        cm.CellDatum(datum.field, datum.dim, datum.mult, datum.nodes, datum.gt,
                     datum.lsets, datum.rsets, broken, datum.blocks)
