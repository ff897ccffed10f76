"""Exact rational formatting and the polytope JSON formats.

Rationals are written as ``"p/q"`` in lowest terms with ``q > 0``, always
including the denominator, so every value round-trips byte-identically.
"""

import json
import re
from fractions import Fraction

_RAT = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def fmt(x):
    """Format an int or Fraction as ``"p/q"``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse(s):
    """Parse ``"p/q"``, ``"p"``, or an int into a Fraction."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    m = _RAT.match(str(s))
    if not m:
        raise ValueError(f"not an exact rational: {s!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {s!r}")
    return Fraction(int(m.group(1)), den)


def dumps(obj):
    """Compact, key-order-preserving JSON used for every CLI output."""
    return json.dumps(obj, separators=(",", ":"))


def lattice_polytope_json(vertices):
    return dumps({"dim": len(vertices[0]),
                  "vertices": [[int(x) for x in v] for v in vertices]})


def rational_polytope_json(vertices):
    return dumps({"dim": len(vertices[0]),
                  "vertices": [[fmt(x) for x in v] for v in vertices]})


def polytope_json(vertices):
    """Lattice format when every coordinate is integral, rational otherwise."""
    if all(Fraction(x).denominator == 1 for v in vertices for x in v):
        return lattice_polytope_json(vertices)
    return rational_polytope_json(vertices)


def load_polytope(text):
    """Read either polytope format. Returns (dim, vertices, is_lattice)."""
    data = json.loads(text)
    dim = int(data["dim"])
    verts = data["vertices"]
    vertices = [tuple(x if isinstance(x, int) else parse(x) for x in v) for v in verts]
    # "3/1" in the rational format still names a lattice point
    is_lattice = all(Fraction(x).denominator == 1 for v in vertices for x in v)
    if is_lattice:
        vertices = [tuple(int(x) for x in v) for v in vertices]
    for v in vertices:
        if len(v) != dim:
            raise ValueError(f"vertex {list(v)} does not have dimension {dim}")
    return dim, vertices, is_lattice
