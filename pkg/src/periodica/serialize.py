"""Canonical JSON used by both the CLI and the HTTP service.

One encoder, sorted keys, no whitespace: identical inputs produce
byte-identical output on either surface.
"""

from __future__ import annotations

import json


def canon_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def canon_json_pretty(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)
