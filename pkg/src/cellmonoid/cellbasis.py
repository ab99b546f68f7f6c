"""Poset-indexed cell data: assembly on monoid algebras, bilinear brackets,
Gram matrices, and the rank-based quasi-heredity / semisimplicity verdicts.

A CellDatum is carrier-agnostic: the same machinery serves group algebras,
monoid algebras, and twisted monoid algebras.  Elements of the carrier algebra
are sparse dicts {basis element index: scalar}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield, replace
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from . import exactalg, green as green_mod
from .exactalg import DenseMatrix, FieldSpec, Scalar, mat_inverse, mat_rank
from .green import EggBox, GreenStructure, SchutzGroup
from .monoid import FiniteMonoid, is_inverse, is_regular

SparseVec = Dict[int, Scalar]
Key = Tuple[int, int, int]  # (node index, left position, right position)


class CellBasisError(Exception):
    pass


class NotABasis(CellBasisError):
    pass


class GroupMismatch(CellBasisError):
    pass


def _transitive_closure(n: int, pairs) -> FrozenSet[Tuple[int, int]]:
    gt = {tuple(p) for p in pairs}
    changed = True
    while changed:
        changed = False
        for a, b in list(gt):
            for c, d in list(gt):
                if b == c and (a, d) not in gt:
                    gt.add((a, d))
                    changed = True
    for a, b in gt:
        if a == b or (b, a) in gt:
            raise ValueError("node order is not a strict partial order")
    return frozenset(gt)


@dataclass
class GroupDatumAttachment:
    """A group-level cell datum together with its gluing onto one D-class:
    iso maps abstract carrier elements onto Schutzenberger group elements.
    group is the abstract carrier (an object with size/identity/table)."""

    datum: "CellDatum"
    group: Any
    iso: List[int]
    kind: str


@dataclass
class MonoidAttachment:
    """Everything the assembled datum remembers about its construction."""

    monoid: FiniteMonoid
    green: GreenStructure
    boxes: List[EggBox]
    schutzs: List[SchutzGroup]
    group_data: Dict[int, GroupDatumAttachment]
    node_dclass: List[int]
    node_gnode: List[int]
    matched_g: List[Dict[Tuple[int, int], int]]
    iso_inv: Dict[int, Dict[int, int]]
    twist: Any = None  # set by the twisting layer


class CellDatum:
    """Basis of an algebra labeled by (node, left index, right index) triples.

    blocks partition both the carrier and the label set; within each block the
    labeled vectors must form a basis of the span of the block's carrier
    elements (exact inverse matrices are precomputed for coordinate lookups).
    """

    def __init__(self, field: FieldSpec, dim: int,
                 mult: Callable[[SparseVec, SparseVec], SparseVec],
                 nodes: List, gt_pairs, lsets: List[List], rsets: List[List],
                 basis: Dict[Key, SparseVec],
                 blocks: List[Tuple[Tuple[int, ...], Tuple[Key, ...]]],
                 attach: Optional[MonoidAttachment] = None):
        self.field = field
        self.dim = dim
        self.mult = mult
        self.nodes = list(nodes)
        self.gt = _transitive_closure(len(self.nodes), gt_pairs)
        self.lsets = [list(s) for s in lsets]
        self.rsets = [list(s) for s in rsets]
        self.basis = dict(basis)
        self.blocks = [(tuple(e), tuple(k)) for e, k in blocks]
        self.attach = attach

        expected = {(ni, si, ti)
                    for ni in range(len(self.nodes))
                    for si in range(len(self.lsets[ni]))
                    for ti in range(len(self.rsets[ni]))}
        if set(self.basis) != expected:
            raise ValueError("basis keys do not match the declared index sets")
        if len(expected) != dim:
            raise NotABasis(f"{len(expected)} labeled vectors cannot span a dimension-{dim} algebra")

        self.higher: List[FrozenSet[int]] = [
            frozenset(a for a, b in self.gt if b == ni) for ni in range(len(self.nodes))
        ]

        self._block_of_elem: Dict[int, int] = {}
        self._inv: List[DenseMatrix] = []
        seen_keys: Set[Key] = set()
        for bi, (elems, keys) in enumerate(self.blocks):
            if len(elems) != len(keys):
                raise NotABasis(f"block {bi} is not square ({len(elems)} elements, {len(keys)} labels)")
            for e in elems:
                if e in self._block_of_elem:
                    raise ValueError("blocks overlap on the carrier")
                self._block_of_elem[e] = bi
            for k in keys:
                if k in seen_keys:
                    raise ValueError("blocks overlap on the labels")
                seen_keys.add(k)
                support = set(self.basis[k])
                if not support <= set(elems):
                    raise NotABasis(f"vector {k} is not supported inside its block")
            zero = field.zero()
            mat = DenseMatrix.from_rows(field, [
                [self.basis[k].get(e, zero) for k in keys] for e in elems
            ])
            inv = mat_inverse(mat)
            if inv is None:
                raise NotABasis(f"labeled vectors of block {bi} are linearly dependent")
            self._inv.append(inv)
        if len(self._block_of_elem) != dim or seen_keys != expected:
            raise ValueError("blocks do not partition the carrier and label set")

    # -- basic views -----------------------------------------------------

    def node_label(self, ni: int) -> str:
        d = self.nodes[ni]
        if isinstance(d, tuple) and len(d) == 2 and isinstance(d[0], int):
            return f"D{d[0]}:{_lam_str(d[1])}"
        return _lam_str(d)

    def unit(self, e: int) -> SparseVec:
        return {e: self.field.one()}

    def with_mult(self, mult, attach) -> "CellDatum":
        """Same labeled basis and solvers over a different carrier product."""
        clone = object.__new__(CellDatum)
        clone.__dict__.update(self.__dict__)
        clone.mult = mult
        clone.attach = attach
        return clone

    # -- coordinates -----------------------------------------------------

    def coordinates(self, vec: SparseVec) -> Dict[Key, Scalar]:
        """Exact coordinates of a carrier vector in the labeled basis."""
        f = self.field
        out: Dict[Key, Scalar] = {}
        touched: Dict[int, SparseVec] = {}
        for e, c in vec.items():
            touched.setdefault(self._block_of_elem[e], {})[e] = c
        for bi, sub in touched.items():
            elems, keys = self.blocks[bi]
            inv = self._inv[bi]
            col = [sub.get(e, f.zero()) for e in elems]
            for r, key in enumerate(keys):
                acc = f.zero()
                row = inv.entries[r]
                for c_idx, yv in enumerate(col):
                    if not f.is_zero(yv):
                        acc = f.add(acc, f.mul(row[c_idx], yv))
                if not f.is_zero(acc):
                    out[key] = acc
        return out


def _lam_str(lam) -> str:
    if isinstance(lam, tuple):
        return "(" + ",".join(str(v) for v in lam) + ")"
    return str(lam)


def to_cell_coordinates(d: CellDatum, x: SparseVec) -> Dict[Key, Scalar]:
    return d.coordinates(x)


def monoid_mult(M: FiniteMonoid, field: FieldSpec) -> Callable[[SparseVec, SparseVec], SparseVec]:
    T = M.table

    def mult(x: SparseVec, y: SparseVec) -> SparseVec:
        out: Dict[int, Scalar] = {}
        for ex, cx in x.items():
            row = T[ex]
            for ey, cy in y.items():
                k = row[ey]
                c = field.mul(cx, cy)
                if k in out:
                    out[k] = field.add(out[k], c)
                else:
                    out[k] = c
        return {k: v for k, v in out.items() if not field.is_zero(v)}

    return mult


# ---------------------------------------------------------------------------
# Assembly of the standard datum on a monoid algebra.
# ---------------------------------------------------------------------------

def _check_iso(gd: GroupDatumAttachment, sch: SchutzGroup, d: int) -> None:
    size = gd.datum.dim
    if sorted(gd.iso) != list(range(sch.order)) or size != sch.order:
        raise GroupMismatch(f"D-class {d}: iso is not a bijection onto the translation group")
    abs_table = gd.group.table
    for x in range(size):
        for y in range(size):
            if gd.iso[abs_table[x][y]] != sch.mult[gd.iso[x]][gd.iso[y]]:
                raise GroupMismatch(f"D-class {d}: iso is not a homomorphism at ({x}, {y})")


def build_cell_datum(M: FiniteMonoid, gs: GreenStructure, boxes: List[EggBox],
                     schutzs: List[SchutzGroup],
                     group_data: Dict[int, GroupDatumAttachment],
                     field: FieldSpec) -> CellDatum:
    """Assemble the standard labeled basis of the monoid algebra.

    Nodes are pairs (D-class, group node) ordered downward along the D-order:
    a node of a lower D-class sits strictly above every node of a higher one.
    Left labels pair rows (R-classes) with group left indices, right labels
    pair columns (L-classes) with group right indices, and the vector for
    (row i, column j) is the group vector pushed into cell (i, j) by the
    egg-box translations.
    """
    nd = len(gs.dclasses)
    if set(group_data) != set(range(nd)):
        raise ValueError("group data must cover every D-class")
    for d in range(nd):
        _check_iso(group_data[d], schutzs[d], d)

    T = M.table
    nodes: List[Tuple[int, Any]] = []
    node_dclass: List[int] = []
    node_gnode: List[int] = []
    node_at: Dict[Tuple[int, int], int] = {}
    for d in range(nd):
        gdat = group_data[d].datum
        for gn, lab in enumerate(gdat.nodes):
            node_at[(d, gn)] = len(nodes)
            nodes.append((d, lab))
            node_dclass.append(d)
            node_gnode.append(gn)

    gt_pairs = []
    for na in range(len(nodes)):
        for nb in range(len(nodes)):
            da, db = node_dclass[na], node_dclass[nb]
            if (da, db) in gs.dless:
                gt_pairs.append((na, nb))
            elif da == db and (node_gnode[na], node_gnode[nb]) in group_data[da].datum.gt:
                gt_pairs.append((na, nb))

    lsets: List[List] = []
    rsets: List[List] = []
    for ni in range(len(nodes)):
        d, gn = node_dclass[ni], node_gnode[ni]
        box = boxes[d]
        gdat = group_data[d].datum
        lsets.append([(i, s) for i in range(len(box.rows)) for s in gdat.lsets[gn]])
        rsets.append([(j, t) for j in range(len(box.cols)) for t in gdat.rsets[gn]])

    basis: Dict[Key, SparseVec] = {}
    blocks: List[Tuple[Tuple[int, ...], Tuple[Key, ...]]] = []
    for d in range(nd):
        box = boxes[d]
        sch = schutzs[d]
        gd = group_data[d]
        gdat = gd.datum
        rep = [sch.phiR[gd.iso[ga]] for ga in range(gdat.dim)]
        for i in range(len(box.rows)):
            for j in range(len(box.cols)):
                conj = {h: T[T[box.a[i]][h]][box.b[j]] for h in sch.hclass}
                keys: List[Key] = []
                for gn in range(len(gdat.nodes)):
                    ni = node_at[(d, gn)]
                    ls, rs = len(gdat.lsets[gn]), len(gdat.rsets[gn])
                    for sp in range(ls):
                        for tp in range(rs):
                            gvec = gdat.basis[(gn, sp, tp)]
                            vec = {conj[rep[ga]]: c for ga, c in gvec.items()}
                            if len(vec) != len(gvec):
                                raise CellBasisError("cell translation is not injective")
                            key = (ni, i * ls + sp, j * rs + tp)
                            basis[key] = vec
                            keys.append(key)
                blocks.append((tuple(box.grid[i][j]), tuple(keys)))

    matched_g: List[Dict[Tuple[int, int], int]] = []
    for d in range(nd):
        box, sch = boxes[d], schutzs[d]
        mm: Dict[Tuple[int, int], int] = {}
        for i in range(len(box.rows)):
            for j in range(len(box.cols)):
                g = green_mod.matched(box, sch, i, j)
                if g is not None:
                    mm[(i, j)] = g
        matched_g.append(mm)

    iso_inv = {d: {g: ga for ga, g in enumerate(group_data[d].iso)} for d in range(nd)}
    attach = MonoidAttachment(M, gs, boxes, schutzs, group_data,
                              node_dclass, node_gnode, matched_g, iso_inv)
    return CellDatum(field, M.size, monoid_mult(M, field),
                     nodes, gt_pairs, lsets, rsets, basis, blocks, attach)


# ---------------------------------------------------------------------------
# Brackets and Gram matrices.
# ---------------------------------------------------------------------------

def bracket_value(d: CellDatum, ni: int, rpos: int, cpos: int,
                  refs: Tuple[int, int] = (0, 0)) -> Scalar:
    """Pairing of right index rpos against left index cpos at node ni.

    The scalar is read off the product of the reference-labeled vectors: with
    r = refs it is the coefficient of the (ni, r_l, r_t) basis vector in
    X*Y where X carries labels (r_l, rpos) and Y carries (cpos, r_t).
    """
    rl, rt = refs
    X = d.basis[(ni, rl, rpos)]
    Y = d.basis[(ni, cpos, rt)]
    coords = d.coordinates(d.mult(X, Y))
    return coords.get((ni, rl, rt), d.field.zero())


def _bracket_checked(d: CellDatum, ni: int, rpos: int, cpos: int) -> Scalar:
    """Bracket recomputed for every reference choice, with purity asserted."""
    f = d.field
    value = None
    for rl in range(len(d.lsets[ni])):
        for rt in range(len(d.rsets[ni])):
            X = d.basis[(ni, rl, rpos)]
            Y = d.basis[(ni, cpos, rt)]
            coords = d.coordinates(d.mult(X, Y))
            v = coords.get((ni, rl, rt), f.zero())
            for (nj, sj, tj), c in coords.items():
                if nj in d.higher[ni]:
                    continue
                if nj != ni or (sj, tj) != (rl, rt):
                    raise CellBasisError(
                        f"product at node {d.node_label(ni)} has a stray coefficient at "
                        f"({d.node_label(nj)}, {sj}, {tj})")
            if value is None:
                value = v
            elif value != v:
                raise CellBasisError(
                    f"bracket at node {d.node_label(ni)} depends on the reference choice")
    return value


def gram_definition(d: CellDatum, ni: int, check: bool = False) -> DenseMatrix:
    """Gram matrix from the defining products; rows are right indices
    (column, t) and columns are left indices (row, s)."""
    nr, nc = len(d.rsets[ni]), len(d.lsets[ni])
    fn = _bracket_checked if check else bracket_value
    entries = [[fn(d, ni, r, c) for c in range(nc)] for r in range(nr)]
    return DenseMatrix(d.field, nr, nc, entries)


def _left_action_matrix(gdat: CellDatum, gn: int, ga: int) -> List[List[Scalar]]:
    """Coefficients of g acting on left indices of group node gn, truncated to
    the node itself: out[s][s'] multiplies the s' label."""
    f = gdat.field
    ls = len(gdat.lsets[gn])
    out = [[f.zero()] * ls for _ in range(ls)]
    unit = gdat.unit(ga)
    for s in range(ls):
        coords = gdat.coordinates(gdat.mult(unit, gdat.basis[(gn, s, 0)]))
        for (nj, sj, tj), c in coords.items():
            if nj == gn and tj == 0:
                out[s][sj] = c
    return out


def gram_fast(d: CellDatum, ni: int) -> DenseMatrix:
    """Gram matrix via group-level brackets: zero on unmatched (row, column)
    pairs, and on matched pairs the group bracket twisted by the matched group
    element.  For a strongly compatible twisting the untwisted fast matrix is
    rescaled blockwise by the matching scale."""
    at = d.attach
    if at is None:
        raise ValueError("gram_fast needs an assembled monoid datum")
    f = d.field
    if at.twist is not None:
        tw = at.twist
        if tw.compat.level != "strong":
            raise ValueError("the scaled fast path needs a strongly compatible twisting")
        base = gram_fast(tw.base, ni)
        return _scale_blocks(d, ni, base, tw.scales)

    dcl, gn = at.node_dclass[ni], at.node_gnode[ni]
    box = at.boxes[dcl]
    gd = at.group_data[dcl]
    gdat = gd.datum
    ls, rs = len(gdat.lsets[gn]), len(gdat.rsets[gn])
    ggram = gram_definition(gdat, gn)
    inv_map = at.iso_inv[dcl]
    act_cache: Dict[int, List[List[Scalar]]] = {}

    nrow, ncol = len(d.rsets[ni]), len(d.lsets[ni])
    entries = [[f.zero()] * ncol for _ in range(nrow)]
    for j in range(len(box.cols)):
        for i in range(len(box.rows)):
            g = at.matched_g[dcl].get((i, j))
            if g is None:
                continue
            ga = inv_map[g]
            if ga not in act_cache:
                act_cache[ga] = _left_action_matrix(gdat, gn, ga)
            L = act_cache[ga]
            for t in range(rs):
                grow = ggram.entries[t]
                for s in range(ls):
                    acc = f.zero()
                    for s2 in range(ls):
                        lv = L[s][s2]
                        if not f.is_zero(lv) and not f.is_zero(grow[s2]):
                            acc = f.add(acc, f.mul(lv, grow[s2]))
                    entries[j * rs + t][i * ls + s] = acc
    return DenseMatrix(f, nrow, ncol, entries)


def _scale_blocks(d: CellDatum, ni: int, base: DenseMatrix, scales) -> DenseMatrix:
    at = d.attach
    f = d.field
    dcl, gn = at.node_dclass[ni], at.node_gnode[ni]
    gdat = at.group_data[dcl].datum
    ls, rs = len(gdat.lsets[gn]), len(gdat.rsets[gn])
    entries = [[f.zero()] * base.cols for _ in range(base.rows)]
    for (dd, i, j), c in scales.items():
        if dd != dcl:
            continue
        for t in range(rs):
            for s in range(ls):
                entries[j * rs + t][i * ls + s] = f.mul(c, base.entries[j * rs + t][i * ls + s])
    return DenseMatrix(f, base.rows, base.cols, entries)


def all_grams(d: CellDatum, check: bool = False) -> Dict[int, DenseMatrix]:
    return {ni: gram_definition(d, ni, check=check) for ni in range(len(d.nodes))}


# ---------------------------------------------------------------------------
# Nonzero-bracket nodes, irreducible dimensions, verdicts.
# ---------------------------------------------------------------------------

def lambda0_direct(d: CellDatum, grams: Optional[Dict[int, DenseMatrix]] = None) -> Set[int]:
    grams = grams if grams is not None else all_grams(d)
    return {ni for ni, g in grams.items() if not g.is_zero()}


def _dual_path_applicable(d: CellDatum) -> bool:
    at = d.attach
    return at is not None and (at.twist is None or at.twist.compat.level == "strong")


def lambda0_via_matching(d: CellDatum) -> Set[int]:
    """Nodes with a matched pair in their D-class and a nonzero group bracket."""
    at = d.attach
    if at is None:
        raise ValueError("matching path needs an assembled monoid datum")
    out: Set[int] = set()
    group_l0: Dict[int, Set[int]] = {}
    for ni in range(len(d.nodes)):
        dcl, gn = at.node_dclass[ni], at.node_gnode[ni]
        if not at.matched_g[dcl]:
            continue
        if dcl not in group_l0:
            group_l0[dcl] = lambda0_direct(at.group_data[dcl].datum)
        if gn in group_l0[dcl]:
            out.add(ni)
    return out


def lambda0(d: CellDatum) -> Set[int]:
    """Nonzero-bracket nodes; when the matched-pair route applies it is
    computed as well and any disagreement raises."""
    direct = lambda0_direct(d)
    if _dual_path_applicable(d):
        other = lambda0_via_matching(d)
        if direct != other:
            raise CellBasisError("direct and matched-pair node sets disagree")
    return direct


def irreducible_dims(d: CellDatum, grams: Optional[Dict[int, DenseMatrix]] = None) -> Dict[int, int]:
    """Gram rank per nonzero node: the dimension of the irreducible quotient."""
    grams = grams if grams is not None else all_grams(d)
    return {ni: mat_rank(g) for ni, g in grams.items() if not g.is_zero()}


@dataclass
class QhResult:
    ok: bool
    failing_nodes: List[str]


@dataclass
class SsResult:
    ok: bool
    certificate: Optional[str]


def is_quasi_hereditary(d: CellDatum, grams: Optional[Dict[int, DenseMatrix]] = None) -> QhResult:
    grams = grams if grams is not None else all_grams(d)
    failing = [d.node_label(ni) for ni in range(len(d.nodes)) if grams[ni].is_zero()]
    return QhResult(not failing, failing)


def is_semisimple(d: CellDatum, grams: Optional[Dict[int, DenseMatrix]] = None) -> SsResult:
    grams = grams if grams is not None else all_grams(d)
    for ni in range(len(d.nodes)):
        g = grams[ni]
        if g.rows != g.cols:
            return SsResult(False, f"node {d.node_label(ni)}: Gram is {g.rows}x{g.cols}, not square")
        r = mat_rank(g)
        if r != g.rows:
            return SsResult(False, f"node {d.node_label(ni)}: Gram rank {r} < {g.rows}")
    return SsResult(True, None)


# ---------------------------------------------------------------------------
# Full analysis with internal cross-checks.
# ---------------------------------------------------------------------------

def _entry(name: str, status: str, detail: str = "") -> Dict[str, str]:
    return {"name": name, "status": status, "detail": detail}


def _check(name: str, ok: bool, detail: str = "") -> Dict[str, str]:
    return _entry(name, "pass" if ok else "fail", detail)


@dataclass
class AnalysisReport:
    field: str
    size: int
    regular: bool
    inverse: bool
    dclasses: List[Dict]
    nodes: List[Dict]
    lambda0: List[str]
    quasi_hereditary: bool
    qh_failing: List[str]
    semisimple: bool
    ss_certificate: Optional[str]
    dim_sq_sum: int
    checks: List[Dict]

    def to_dict(self) -> Dict:
        return {
            "field": self.field,
            "size": self.size,
            "regular": self.regular,
            "inverse": self.inverse,
            "dclasses": self.dclasses,
            "nodes": self.nodes,
            "lambda0": self.lambda0,
            "quasi_hereditary": self.quasi_hereditary,
            "qh_failing": self.qh_failing,
            "semisimple": self.semisimple,
            "ss_certificate": self.ss_certificate,
            "dim_sq_sum": self.dim_sq_sum,
            "checks": self.checks,
        }


def analyze(d: CellDatum) -> AnalysisReport:
    """Compute every verdict with its dual-path cross-checks.

    Cross-check failures are recorded in the report (status "fail"), never
    raised: a counterexample at this scale is a finding to surface.
    """
    at = d.attach
    if at is None:
        raise ValueError("analyze needs an assembled monoid datum")
    f = d.field
    M = at.monoid
    grams = all_grams(d)
    ranks = {ni: mat_rank(g) for ni, g in grams.items()}
    l0 = {ni for ni in ranks if ranks[ni] > 0}
    dims = {ni: ranks[ni] for ni in l0}
    checks: List[Dict] = []
    dual_ok = _dual_path_applicable(d)

    # dual-route node set
    if dual_ok:
        l0b = lambda0_via_matching(d)
        checks.append(_check("lambda0_dual_path", l0 == l0b,
                             "direct nonzero-bracket nodes vs matched-pair route"))
    else:
        checks.append(_entry("lambda0_dual_path", "skip", "twisting is not strongly compatible"))

    # fast Gram route
    if dual_ok:
        bad = [d.node_label(ni) for ni in range(len(d.nodes))
               if gram_fast(d, ni).entries != grams[ni].entries]
        checks.append(_check("gram_fast_vs_definition", not bad, ";".join(bad)))
    else:
        checks.append(_entry("gram_fast_vs_definition", "skip", "twisting is not strongly compatible"))

    # unmatched blocks vanish (holds for any twisting)
    bad_blocks = []
    for ni in range(len(d.nodes)):
        dcl, gn = at.node_dclass[ni], at.node_gnode[ni]
        gdat = at.group_data[dcl].datum
        ls, rs = len(gdat.lsets[gn]), len(gdat.rsets[gn])
        mm = at.matched_g[dcl]
        g = grams[ni]
        box = at.boxes[dcl]
        for j in range(len(box.cols)):
            for i in range(len(box.rows)):
                if (i, j) in mm:
                    continue
                for t in range(rs):
                    for s in range(ls):
                        if not f.is_zero(g.entries[j * rs + t][i * ls + s]):
                            bad_blocks.append(f"{d.node_label(ni)}@({i},{j})")
    checks.append(_check("unmatched_blocks_zero", not bad_blocks, ";".join(bad_blocks[:5])))

    # label count
    total = sum(len(d.lsets[ni]) * len(d.rsets[ni]) for ni in range(len(d.nodes)))
    checks.append(_check("basis_count", total == M.size, f"{total} labels for {M.size} elements"))

    # group-level summaries
    group_l0: Dict[int, Set[int]] = {}
    group_ss: Dict[int, bool] = {}
    group_grams: Dict[int, Dict[int, DenseMatrix]] = {}
    for dcl, gd in at.group_data.items():
        gg = all_grams(gd.datum)
        group_grams[dcl] = gg
        group_l0[dcl] = lambda0_direct(gd.datum, gg)
        group_ss[dcl] = is_semisimple(gd.datum, gg).ok

    # radical inheritance: a rank-deficient group Gram forces the same
    # deficiency on the assembled Gram (both column and row versions)
    if dual_ok:
        bad_rad = []
        for ni in range(len(d.nodes)):
            dcl, gn = at.node_dclass[ni], at.node_gnode[ni]
            gg = group_grams[dcl][gn]
            gr = mat_rank(gg)
            if gr < gg.cols and ranks[ni] >= grams[ni].cols:
                bad_rad.append(f"{d.node_label(ni)} (columns)")
            if gr < gg.rows and ranks[ni] >= grams[ni].rows:
                bad_rad.append(f"{d.node_label(ni)} (rows)")
        checks.append(_check("radical_inheritance", not bad_rad, ";".join(bad_rad)))
    else:
        checks.append(_entry("radical_inheritance", "skip", "twisting is not strongly compatible"))

    qh = is_quasi_hereditary(d, grams)
    ss = is_semisimple(d, grams)
    dim_sq = sum(v * v for v in dims.values())

    checks.append(_check("ss_dimension_identity", (dim_sq == M.size) == ss.ok,
                         f"sum of squared dims {dim_sq} vs size {M.size}, semisimple={ss.ok}"))

    regular = is_regular(M)
    inverse = is_inverse(M)
    bijections = {dcl: green_mod.bijection_condition(at.boxes[dcl], at.schutzs[dcl])
                  for dcl in range(len(at.boxes))}
    all_group_ss = all(group_ss.values())
    all_bijection = all(bij is not None for bij in bijections.values())
    all_group_l0_full = all(len(group_l0[dcl]) == len(at.group_data[dcl].datum.nodes)
                            for dcl in at.group_data)

    if dual_ok:
        checks.append(_check("ss_groups_necessary", all_group_ss or not ss.ok,
                             "a non-semisimple group algebra forbids a semisimple verdict"))
        if inverse:
            checks.append(_check("ss_inverse_iff_groups", ss.ok == all_group_ss,
                                 f"verdict {ss.ok} vs all groups semisimple {all_group_ss}"))
        else:
            checks.append(_entry("ss_inverse_iff_groups", "skip", "monoid is not inverse"))
        checks.append(_check("ss_bijection_sufficient",
                             ss.ok or not (all_group_ss and all_bijection),
                             "semisimple groups plus matched pairings force semisimplicity"))
        checks.append(_check("qh_regular_sufficient",
                             qh.ok or not (regular and all_group_l0_full),
                             "regular monoid with full group node sets forces quasi-heredity"))
    else:
        for name in ("ss_groups_necessary", "ss_inverse_iff_groups",
                     "ss_bijection_sufficient", "qh_regular_sufficient"):
            checks.append(_entry(name, "skip", "twisting is not strongly compatible"))

    dsummaries = []
    for dcl in range(len(at.boxes)):
        box = at.boxes[dcl]
        gd = at.group_data[dcl]
        mm = at.matched_g[dcl]
        bij = bijections[dcl]
        dsummaries.append({
            "id": dcl,
            "size": len(gs_members(at.green, dcl)),
            "rows": len(box.rows),
            "cols": len(box.cols),
            "hsize": len(at.schutzs[dcl].hclass),
            "group_order": at.schutzs[dcl].order,
            "group_kind": gd.kind,
            "group_lambda0": [_lam_str(gd.datum.nodes[gn]) for gn in sorted(group_l0[dcl])],
            "group_semisimple": group_ss[dcl],
            "bijection": sorted([j, i] for j, i in bij.items()) if bij is not None else None,
            "matched": [[(i, j) in mm for j in range(len(box.cols))] for i in range(len(box.rows))],
        })

    node_dicts = []
    for ni in range(len(d.nodes)):
        node_dicts.append({
            "d": at.node_dclass[ni],
            "label": d.node_label(ni),
            "l_size": len(d.lsets[ni]),
            "r_size": len(d.rsets[ni]),
            "in_lambda0": ni in l0,
            "gram_rank": ranks[ni],
        })

    return AnalysisReport(
        field=f.spec_string(),
        size=M.size,
        regular=regular,
        inverse=inverse,
        dclasses=dsummaries,
        nodes=node_dicts,
        lambda0=[d.node_label(ni) for ni in sorted(l0)],
        quasi_hereditary=qh.ok,
        qh_failing=qh.failing_nodes,
        semisimple=ss.ok,
        ss_certificate=ss.certificate,
        dim_sq_sum=dim_sq,
        checks=checks,
    )


def gs_members(gs: GreenStructure, dcl: int) -> List[int]:
    return gs.dclasses[dcl]
