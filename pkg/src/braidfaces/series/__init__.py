"""Exact generating functions for faces of symmetric braid-type arrangements."""

from .faces import (
    ClosedFormReport,
    StabilizationError,
    face_series,
    face_series_parts,
    face_table,
    line_series,
    verify_closed_form,
)
from .shades import (
    PartitionState,
    SeriesConditionError,
    check_set,
    comp,
    end,
    is_shade,
    is_shadow,
    reach,
    shade_successors,
    start,
    state_successors,
)
from .transfer import BiRat, connection_poly, connection_set, shadow_rational, shadow_series
from .truncated import TruncSeries, UPoly
