from .archive import (Archive, InsertOutcome, archive_insert, archive_truncate,
                      select_leader)
from .dominance import (DominanceRelation, dominates, non_dominated_filter,
                        non_dominated_mask)
from .grid import Grid, grid_build, grid_locate
from .solution import Solution

__all__ = [
    "Archive",
    "DominanceRelation",
    "Grid",
    "InsertOutcome",
    "Solution",
    "archive_insert",
    "archive_truncate",
    "dominates",
    "grid_build",
    "grid_locate",
    "non_dominated_filter",
    "non_dominated_mask",
    "select_leader",
]
