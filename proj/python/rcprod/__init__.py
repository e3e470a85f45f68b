"""Python front end for the rcprod toolkit."""

import json
from fractions import Fraction

from ._rcprod import ValidationError, ray_class_order, reciprocal_identity, run

__all__ = ["ValidationError", "call", "ray_class_order", "reciprocal_identity", "run", "w0_mellin_one"]


def call(*args):
    """Run a command and return (exit_status, parsed JSON report or None, stderr)."""
    code, out, err = run([str(a) for a in args])
    doc = json.loads(out) if out.strip() else None
    return code, doc, err


def w0_mellin_one(n):
    from ._rcprod import w0_mellin_one as _w

    num, den = _w(n)
    return Fraction(int(num), int(den))
