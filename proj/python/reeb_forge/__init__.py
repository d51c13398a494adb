"""Reeb-space homology under bubbling operations.

Homology is returned as a list of ``{"rank": r, "torsion": [d1, d2, ...]}``
dicts, one per degree. Scripts and profiles use the same JSON shapes as the
``reeb-forge`` command-line tool.
"""

import json

from . import _core
from ._core import InfeasibleError, ValidationError

__all__ = [
    "InfeasibleError",
    "ValidationError",
    "cli",
    "euler_characteristic",
    "homology_of_complex",
    "normalize_module",
    "oracle_check",
    "plan_bundle",
    "plan_euler",
    "plan_free",
    "plan_torsion",
    "plan_wedge",
    "run_script",
    "smith_normal_form",
    "torsion_gap",
    "verify",
]


def smith_normal_form(rows):
    return [int(d) for d in _core.smith_normal_form([[str(int(x)) for x in row] for row in rows])]


def homology_of_complex(boundaries, cell_counts=()):
    return json.loads(_core.homology_of_complex([[list(r) for r in b] for b in boundaries], list(cell_counts)))


def normalize_module(text):
    """Canonical text form, e.g. ``"Z/2 + Z/3"`` -> ``"Z/6"``."""
    return _core.normalize_module(text)


def plan_free(ambient, ranks):
    return json.loads(_core.plan_free(ambient, list(ranks)))


def plan_euler(ambient, target):
    return json.loads(_core.plan_euler(ambient, target))


def plan_wedge(ambient, ranks):
    return json.loads(_core.plan_wedge(ambient, list(ranks)))


def plan_torsion(ambient, gs, groups):
    return json.loads(_core.plan_torsion(ambient, list(gs), list(groups)))


def plan_bundle(ambient, k, l, base):
    if not isinstance(base, str):
        base = json.dumps(base)
    return json.loads(_core.plan_bundle(ambient, k, l, base))


def run_script(script):
    return json.loads(_core.run_script(json.dumps(script)))


def verify(profile):
    return json.loads(_core.verify(json.dumps(profile)))


def torsion_gap(profile, i0=1, direction="below"):
    if direction not in ("below", "above"):
        raise ValueError("direction must be 'below' or 'above'")
    return json.loads(_core.torsion_gap(json.dumps(profile), i0, direction == "above"))


def oracle_check(space):
    return json.loads(_core.oracle_check(space))


def euler_characteristic(homology):
    return _core.euler_characteristic(json.dumps(homology))


def cli(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
