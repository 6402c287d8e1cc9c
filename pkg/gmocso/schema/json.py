"""JSON utilities for GMOCSO artifacts."""
from json import JSONEncoder
from pathlib import PurePath
from typing import Any

import numpy as np
from pydantic import BaseModel  # pylint: disable=no-name-in-module


class GmocsoEncoder(JSONEncoder):
    """
    Encoder for:
    -----------
    - numpy scalars and arrays
    - pathlib paths
    - pydantic models
    """

    def default(self, o: Any):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, PurePath):
            return str(o)
        if isinstance(o, BaseModel):
            return o.dict()
        return super().default(o)


def to_json(data: Any) -> str:
    """
    Convert data to JSON with stable key order, so equal inputs give equal bytes.
    """
    return GmocsoEncoder(indent=2, sort_keys=True).encode(data) + "\n"
