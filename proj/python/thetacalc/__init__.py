"""Exact theta Euler characteristics on moduli of sheaves over abelian surfaces."""

import json
from fractions import Fraction

from . import _core
from ._core import binom, chi_tensor, d_v, enumerate_csv, fm_vector, identities, run_cli

__all__ = [
    "binom",
    "chi_tensor",
    "d_v",
    "enumerate_csv",
    "evaluate",
    "fm_vector",
    "identities",
    "kummer",
    "run_cli",
    "verify",
]


def evaluate(v, w, n, theorem="all"):
    """Euler characteristic values for the pair (v, w); values are Fractions."""
    doc = json.loads(_core.eval_json(tuple(v), tuple(w), n, theorem))
    doc["values"] = {k: Fraction(x) for k, x in doc["values"].items()}
    return doc


def kummer(n, chiD, r):
    return json.loads(_core.kummer_json(n, chiD, r))


def verify(seed=42, trials=200, only=None, corrupt_sign=False):
    """Runs the identity suite; returns (all_pass, reports)."""
    reports = json.loads(_core.verify_json(seed, trials, only, corrupt_sign))
    return all(r["pass"] for r in reports), reports
