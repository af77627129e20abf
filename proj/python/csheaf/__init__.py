"""Python access to the csheaf core."""

import json as _json

from ._core import (
    CapExceeded,
    FixtureError,
    PacketError,
    character_degrees,
    character_table,
    inner_form_orders,
)
from ._core import run as _run

__all__ = [
    "CapExceeded",
    "FixtureError",
    "PacketError",
    "character_degrees",
    "character_table",
    "inner_form_orders",
    "run",
]


def run(command, fixture_text, suite="", jobs=1, nmax=0):
    """Run a command on fixture text and return the report as a dict."""
    return _json.loads(_run(command, fixture_text, suite, jobs, nmax))
