"""Representations of finitely generated groups and their positivity certificates."""

from .collar import CollarRecord, CollarReport, collar_check, linkage_2d
from .framing import (
    EdgeRecord,
    FramedPositivityReport,
    FramingSpec,
    TriangulationSpec,
    framed_positivity_check,
    resolve_vertex,
)
from .nonframeable import LineData, NonFrameableReport, build_nonframeable, solve_fourth_point
from .rep import RepSpec, rep_eval
from .schottky import SchottkyCert, SchottkyReport, schottky_verify
from .translating import TranslatingReport, pos_translating_images_check
from .words import Word
