"""One-call builders wiring a monoid through Green data and group data to an
assembled cell datum (optionally twisted)."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from . import green as green_mod, groupcell, twist as twist_mod
from .cellbasis import CellDatum, build_cell_datum
from .exactalg import FieldSpec, Scalar
from .green import EggBox, GreenStructure, SchutzGroup
from .monoid import FiniteMonoid, LoopTable


def green_data(M: FiniteMonoid, section: str = "least"
               ) -> Tuple[GreenStructure, List[EggBox], List[SchutzGroup]]:
    gs = green_mod.compute_green(M)
    boxes = [green_mod.build_eggbox(M, gs, d) for d in range(len(gs.dclasses))]
    schutzs = [green_mod.schutzenberger(M, box, section=section) for box in boxes]
    return gs, boxes, schutzs


def standard_datum(M: FiniteMonoid, field: FieldSpec,
                   custom: Optional[Dict[int, CellDatum]] = None,
                   section: str = "least") -> CellDatum:
    """The assembled cell datum of the monoid algebra over the given field."""
    gs, boxes, schutzs = green_data(M, section=section)
    group_data = groupcell.standard_group_data(M, gs, boxes, schutzs, field, custom=custom)
    return build_cell_datum(M, gs, boxes, schutzs, group_data, field)


def twisted_datum(M: FiniteMonoid, pi: twist_mod.Twisting, field: FieldSpec,
                  custom: Optional[Dict[int, CellDatum]] = None) -> CellDatum:
    base = standard_datum(M, field, custom=custom)
    return twist_mod.build_twisted_cell_datum(base, pi)


def loop_twisted_datum(M: FiniteMonoid, loops: LoopTable, delta: Scalar,
                       field: FieldSpec) -> CellDatum:
    pi = twist_mod.make_loop_twisting(loops, delta, field)
    return twisted_datum(M, pi, field)
