"""Exact symbolic computation in free and Grassmann algebras over F_p.

Thin wrapper over the C++ extension: expressions parse with the same
grammar as the CLI, and the report-producing calls return plain dicts.
"""

import json as _json

from ._core import (  # noqa: F401
    BudgetError,
    ParseError,
    Poly,
    commutator,
    enumerate_W,
    kappa,
    parse,
    phi_prime,
    suite_ids,
    w,
)
from . import _core as _c


def nf(poly, modulus="t3"):
    """Canonical form of a polynomial modulo T3 or TG0, as a dict."""
    return _json.loads(_c.nf_json(poly, modulus))


def member(poly, space, **kwargs):
    """Membership report for ``poly`` against a space spec like "S2+TG0"."""
    return _json.loads(_c.member_json(poly, space, **kwargs))


def evaluate(poly, assignment, rank=10, algebra="G0"):
    """Evaluate in the rank-``rank`` Grassmann algebra.

    ``assignment`` maps variable index to an element expression such as
    "e1+e2*e3".
    """
    return _json.loads(_c.evaluate_json(poly, assignment, rank, algebra))


def check_identity(poly, **kwargs):
    return _json.loads(_c.check_identity_json(poly, **kwargs))


def check_central(poly, **kwargs):
    return _json.loads(_c.check_central_json(poly, **kwargs))


def verify(suite, p=3, **kwargs):
    """Run one scripted verification suite and return its report."""
    return _json.loads(_c.verify_json(suite, p, **kwargs))
