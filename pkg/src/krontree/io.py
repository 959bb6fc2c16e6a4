"""JSON, DOT, and TikZ serialization for quivers and representations.

The JSON schema is bit-exact and round-trip stable:

    quiver         {"vertices": [{"id": str, "dim": int}],
                    "arrows": [{"id": str, "source": str, "target": str,
                                "colour": int|null}],
                    "bipartition": {"I": [str], "J": [str]} | null}
    representation {"quiver": <quiver>,
                    "matrices": {arrowId: [[str rational]]},
                    "basis": {vertexId: [str]}}

Matrix entries are canonical rational strings: "3", "-1", "1/2" (never
"3/1").  Unknown fields are rejected with the offending field named,
including its path inside the document.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .core import Arrow, CoefficientQuiver, Quiver, Representation


def _check_fields(obj: dict, allowed: set, path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise ValueError(f"unknown field {key!r} at {path}")


def _get(obj: dict, key: str, path: str):
    if key not in obj:
        raise ValueError(f"missing field {key!r} at {path}")
    return obj[key]


def format_rational(x) -> str:
    return str(Fraction(x))


def parse_rational(s, path: str) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"matrix entry at {path} must be a string rational")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {s!r} at {path}: {exc}") from None


def quiver_to_dict(quiver: Quiver, dims: Mapping) -> dict:
    vertices = [{"id": v, "dim": int(dims[v])} for v in sorted(quiver.vertices)]
    arrows = [
        {"id": a.id, "source": a.source, "target": a.target, "colour": a.colour}
        for a in sorted(quiver.arrows, key=lambda a: a.id)
    ]
    bip = None
    if quiver.bipartition is not None:
        bip = {"I": sorted(quiver.bipartition[0]), "J": sorted(quiver.bipartition[1])}
    return {"vertices": vertices, "arrows": arrows, "bipartition": bip}


def quiver_from_dict(obj, path: str = "quiver"):
    """Parse the quiver schema; returns (Quiver, dims)."""
    if not isinstance(obj, dict):
        raise ValueError(f"{path} must be an object")
    _check_fields(obj, {"vertices", "arrows", "bipartition"}, path)
    raw_vertices = _get(obj, "vertices", path)
    raw_arrows = _get(obj, "arrows", path)
    vertices = []
    dims = {}
    for k, vobj in enumerate(raw_vertices):
        vpath = f"{path}.vertices[{k}]"
        if not isinstance(vobj, dict):
            raise ValueError(f"{vpath} must be an object")
        _check_fields(vobj, {"id", "dim"}, vpath)
        vid = _get(vobj, "id", vpath)
        dim = _get(vobj, "dim", vpath)
        if not isinstance(vid, str):
            raise ValueError(f"vertex id at {vpath} must be a string")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ValueError(f"vertex dim at {vpath} must be a nonnegative integer")
        vertices.append(vid)
        dims[vid] = dim
    arrows = []
    for k, aobj in enumerate(raw_arrows):
        apath = f"{path}.arrows[{k}]"
        if not isinstance(aobj, dict):
            raise ValueError(f"{apath} must be an object")
        _check_fields(aobj, {"id", "source", "target", "colour"}, apath)
        colour = aobj.get("colour")
        if colour is not None and (not isinstance(colour, int) or isinstance(colour, bool)):
            raise ValueError(f"colour at {apath} must be an integer or null")
        arrows.append(
            Arrow(
                _get(aobj, "id", apath),
                _get(aobj, "source", apath),
                _get(aobj, "target", apath),
                colour,
            )
        )
    bip = obj.get("bipartition")
    bipartition = None
    if bip is not None:
        bpath = f"{path}.bipartition"
        if not isinstance(bip, dict):
            raise ValueError(f"{bpath} must be an object or null")
        _check_fields(bip, {"I", "J"}, bpath)
        bipartition = (frozenset(_get(bip, "I", bpath)), frozenset(_get(bip, "J", bpath)))
    return Quiver(tuple(vertices), tuple(arrows), bipartition), dims


def representation_to_dict(rep: Representation) -> dict:
    matrices = {
        aid: [[format_rational(x) for x in row] for row in mat]
        for aid, mat in rep.matrices.items()
    }
    basis = {v: list(rep.basis[v]) for v in rep.quiver.vertices}
    return {
        "quiver": quiver_to_dict(rep.quiver, rep.dims),
        "matrices": matrices,
        "basis": basis,
    }


def representation_from_dict(obj, path: str = "representation") -> Representation:
    if not isinstance(obj, dict):
        raise ValueError(f"{path} must be an object")
    _check_fields(obj, {"quiver", "matrices", "basis"}, path)
    quiver, dims = quiver_from_dict(_get(obj, "quiver", path), f"{path}.quiver")
    raw_matrices = _get(obj, "matrices", path)
    if not isinstance(raw_matrices, dict):
        raise ValueError(f"{path}.matrices must be an object")
    matrices = {}
    for aid, rows in raw_matrices.items():
        mpath = f"{path}.matrices[{aid!r}]"
        matrices[aid] = [
            [parse_rational(x, f"{mpath}[{r}][{c}]") for c, x in enumerate(row)]
            for r, row in enumerate(rows)
        ]
    raw_basis = _get(obj, "basis", path)
    if not isinstance(raw_basis, dict):
        raise ValueError(f"{path}.basis must be an object")
    basis = {v: tuple(tokens) for v, tokens in raw_basis.items()}
    return Representation(quiver, dims, matrices, basis)


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def quiver_to_json(quiver: Quiver, dims: Mapping) -> str:
    return dumps(quiver_to_dict(quiver, dims))


def quiver_from_json(text: str):
    return quiver_from_dict(json.loads(text))


def representation_to_json(rep: Representation) -> str:
    return dumps(representation_to_dict(rep))


def representation_from_json(text: str) -> Representation:
    return representation_from_dict(json.loads(text))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def quiver_to_dot(quiver: Quiver, dims: Mapping) -> str:
    lines = ["digraph quiver {"]
    for v in sorted(quiver.vertices):
        lines.append(f"  {_dot_quote(v)} [label={_dot_quote(f'{v}:{dims[v]}')}];")
    for a in sorted(quiver.arrows, key=lambda a: a.id):
        label = f" [label={_dot_quote(str(a.colour))}]" if a.colour is not None else ""
        lines.append(f"  {_dot_quote(a.source)} -> {_dot_quote(a.target)}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def coefficient_quiver_to_dot(gamma: CoefficientQuiver) -> str:
    lines = ["digraph coefficient_quiver {"]
    for v in sorted(gamma.vertices):
        lines.append(f"  {_dot_quote(v)};")
    for a in sorted(gamma.arrows, key=lambda a: (a.arrow, a.source, a.target)):
        label = a.arrow if a.coefficient == 1 else f"{a.arrow}:{format_rational(a.coefficient)}"
        lines.append(f"  {_dot_quote(a.source)} -> {_dot_quote(a.target)} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_tikz(quiver: Quiver, dims: Mapping) -> str:
    """TikZ picture with sources in a left column and sinks in a right one.

    Purely cosmetic output for inclusion in notes; the layout follows the
    usual convention of drawing bipartite quivers with sources on the left.
    """
    if quiver.bipartition is None:
        raise ValueError("TikZ export needs a bipartite quiver")
    lines = ["\\begin{tikzpicture}[>=stealth]"]
    coords = {}
    for col, side in ((0, sorted(quiver.sources)), (4, sorted(quiver.sinks))):
        for row, v in enumerate(side):
            coords[v] = (col, -row)
            lines.append(
                f"  \\node[draw, circle, inner sep=1pt] ({_tikz_name(v)}) "
                f"at ({col}, {-row}) {{${dims[v]}$}};"
            )
    for a in sorted(quiver.arrows, key=lambda a: a.id):
        label = f" node[midway, above, font=\\tiny] {{{a.colour}}}" if a.colour is not None else ""
        lines.append(
            f"  \\draw[->] ({_tikz_name(a.source)}) -- ({_tikz_name(a.target)}){label};"
        )
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def _tikz_name(v: str) -> str:
    # TikZ node names reject most punctuation; keep alphanumerics only.
    return "".join(c if c.isalnum() else "-" for c in v)
