"""Python interface to the solitonlab C++ core.

Reports come back as dictionaries with the same layout as the command line's
JSON output: ``passed``, ``checks`` and ``values``.
"""

import json

from . import _solitonlab
from ._solitonlab import Manifold, ParseError, SolitonlabError, cli, zoo_names

__all__ = [
    "Manifold",
    "ParseError",
    "SolitonlabError",
    "cli",
    "zoo_names",
    "check_structure",
    "check_soliton",
    "audit",
    "report",
    "zoo_run",
]


def _as_manifold(m):
    if isinstance(m, Manifold):
        return m
    if m in zoo_names() or str(m).startswith(("hyperbolic-", "example-3-6:")):
        return Manifold.zoo(m)
    return Manifold.load(str(m))


def check_structure(manifold, samples=100, seed=1):
    return json.loads(_solitonlab.run_structure(_as_manifold(manifold), samples, seed))


def check_soliton(manifold, lam=None, fit=False, potential="", potential_fn="", samples=100, seed=1):
    return json.loads(
        _solitonlab.run_soliton(_as_manifold(manifold), lam, fit, potential, potential_fn, samples, seed)
    )


def audit(manifold, theorem, lam=None, fit=False, potential="", potential_fn="", samples=100, seed=1):
    return json.loads(
        _solitonlab.run_audit(_as_manifold(manifold), theorem, lam, fit, potential, potential_fn, samples, seed)
    )


def report(manifold, samples=100, seed=1):
    return json.loads(_solitonlab.run_report(_as_manifold(manifold), samples, seed))


def zoo_run(name, samples=100, seed=1):
    return json.loads(_solitonlab.run_zoo(name, samples, seed))
