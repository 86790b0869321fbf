"""Exact mixed trTLEP / mixed Frobenius constructions.

Every function returns ``(report, ok)`` where ``report`` is the decoded JSON
report (rationals as "p/q" strings) and ``ok`` says whether its certificate
passed.  Text inputs use the same formats as the command-line tool.
"""

import json

from . import _core
from ._core import MixfrobError, ParseError

__all__ = [
    "MixfrobError",
    "ParseError",
    "polytope_check",
    "bmodel",
    "trtlep",
    "unfold_run",
    "unfold_universal",
    "limit_run",
    "amodel_pipeline",
    "verify_all",
]


def _decode(res):
    text, ok = res
    return json.loads(text), ok


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def polytope_check(text, kmax=5):
    return _decode(_core.polytope_check(text, kmax))


def bmodel(op, laurent, polytope="", directions=(), order=3, unfold_order=3):
    """op is one of ring, regular, h2, gm, pipeline."""
    dirs = [list(d) for d in directions]
    return _decode(_core.bmodel(op, laurent, polytope, dirs, order, unfold_order))


def trtlep(op, structure, ell="1"):
    """op is one of verify, rees, twist; structure is a dict or JSON text."""
    return _decode(_core.trtlep(op, _text(structure), str(ell)))


def unfold_run(structure):
    return _decode(_core.unfold_run(_text(structure)))


def unfold_universal(structure, order=4):
    return _decode(_core.unfold_universal(_text(structure), order))


def limit_run(structure):
    return _decode(_core.limit_run(_text(structure)))


def amodel_pipeline(fan, gw, z, order=3, unfold_order=3, cutoff=3):
    return _decode(_core.amodel_pipeline(fan, gw, [str(x) for x in z], order, unfold_order, cutoff))


def verify_all(seed=20261016, instances=50, criteria=()):
    return _decode(_core.verify_all(seed, instances, list(criteria)))
