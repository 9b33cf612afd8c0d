"""Two-impurity spin-boson model toolkit (Python bindings)."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import ConvergenceError, Params, ParseError, UnsupportedQuery  # noqa: F401


def params(doc):
    """Build a Params object from a dict or a JSON string."""
    if isinstance(doc, dict):
        doc = _json.dumps(doc)
    return Params.from_json(doc)
