"""Chart and atlas files, and structured serialization of computed values.

Chart schema:  {"name": str, "params": [str, ...],
                "gens": [{"name": str, "degree": int, "rhs": expr}, ...],
                "denominator": expr}
The rhs of a generator may use the parameters and earlier generators; the
denominator may use everything.  Both are polynomial expressions (division
only by rational constants).

Atlas schema:  {"name": str, "charts": [chart, ...],
                "transitions": [{"from": str, "to": str, "overlap": str,
                                 "G": [expr, ...], "H": [expr, ...]}, ...]}
The overlap names a chart in the same file; G and H are parsed over it.

Schema violations raise SchemaError whose message carries the JSON path.
Value serialization (value_to_data / value_from_data) is loss-free and
deterministic: coefficients are exact rational strings and term lists are
sorted in the monomial order.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .charts import ChartSpec, GenSpec, RingElem
from .envalg import DiffOp, TensorElem
from .jets import Jet
from .jetfields import JetField
from .liealg import CurrentElem, LElem, SemiDirectElem, basis_key
from .multipoly import Poly, grlex_key
from .parser import parse_expression, parse_poly
from .atlas import AtlasSpec, TransitionPair
from .vfields import VectorField


class SchemaError(ValueError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _get(data, path, key, types, required=True, default=None):
    here = f"{path}.{key}" if path else key
    if key not in data:
        if required:
            raise SchemaError(here, "missing required field")
        return default
    val = data[key]
    if not isinstance(val, types):
        raise SchemaError(here, f"expected {types}, got {type(val).__name__}")
    return val


def loads_chart(data, path=""):
    if not isinstance(data, dict):
        raise SchemaError(path, "chart must be a JSON object")
    name = _get(data, path, "name", str)
    params = _get(data, path, "params", list)
    if not params or not all(isinstance(p, str) for p in params):
        raise SchemaError(f"{path}.params" if path else "params",
                          "must be a non-empty list of names")
    gens_data = _get(data, path, "gens", list, required=False, default=[])
    gens = []
    seen = list(params)
    for idx, g in enumerate(gens_data):
        gpath = f"{path}.gens[{idx}]" if path else f"gens[{idx}]"
        if not isinstance(g, dict):
            raise SchemaError(gpath, "generator must be a JSON object")
        gname = _get(g, gpath, "name", str)
        degree = _get(g, gpath, "degree", int)
        rhs_src = _get(g, gpath, "rhs", str)
        rhs = parse_poly(rhs_src, tuple(seen))
        gens.append(GenSpec(gname, degree, rhs))
        seen.append(gname)
    den_src = _get(data, path, "denominator", str)
    den = parse_poly(den_src, tuple(seen))
    chart = ChartSpec(name, params, gens, den)
    chart.validate()
    return chart


def load_chart(filename):
    with open(filename) as fh:
        return loads_chart(json.load(fh))


def loads_atlas(data):
    if not isinstance(data, dict):
        raise SchemaError("", "atlas must be a JSON object")
    name = _get(data, "", "name", str, required=False, default="atlas")
    charts_data = _get(data, "", "charts", list)
    charts = {}
    for idx, c in enumerate(charts_data):
        chart = loads_chart(c, path=f"charts[{idx}]")
        if chart.name in charts:
            raise SchemaError(f"charts[{idx}].name", f"duplicate chart {chart.name!r}")
        charts[chart.name] = chart
    transitions = []
    for idx, t in enumerate(_get(data, "", "transitions", list, required=False, default=[])):
        tpath = f"transitions[{idx}]"
        if not isinstance(t, dict):
            raise SchemaError(tpath, "transition must be a JSON object")
        frm = _get(t, tpath, "from", str)
        to = _get(t, tpath, "to", str)
        ov = _get(t, tpath, "overlap", str)
        for label, cname in (("from", frm), ("to", to), ("overlap", ov)):
            if cname not in charts:
                raise SchemaError(f"{tpath}.{label}", f"unknown chart {cname!r}")
        overlap = charts[ov]
        G = [parse_expression(s, overlap) for s in _get(t, tpath, "G", list)]
        H = [parse_expression(s, overlap) for s in _get(t, tpath, "H", list)]
        formulas = None
        have = [k for k in ("x_of_y", "y_of_x") if k in t]
        if len(have) == 1:
            raise SchemaError(
                f"{tpath}.{have[0]}", "x_of_y and y_of_x must be given together"
            )
        if len(have) == 2:
            formulas = tuple(
                _formula_tuple(t[k], f"{tpath}.{k}", charts)
                for k in ("x_of_y", "y_of_x")
            )
        transitions.append(TransitionPair(frm, to, overlap, G, H, formulas=formulas))
    return AtlasSpec(name, charts, transitions)


def _formula_tuple(data, path, charts):
    if not isinstance(data, dict):
        raise SchemaError(path, "formula entry must be a JSON object")
    cname = _get(data, path, "chart", str)
    if cname not in charts:
        raise SchemaError(f"{path}.chart", f"unknown chart {cname!r}")
    chart = charts[cname]
    return tuple(
        parse_expression(s, chart) for s in _get(data, path, "exprs", list)
    )


def load_atlas(filename):
    with open(filename) as fh:
        return loads_atlas(json.load(fh))


# ---------------------------------------------------------------------------
# value serialization

def _poly_data(p):
    return [[list(m), str(c)] for m, c in sorted(p.terms.items(), key=lambda t: grlex_key(t[0]))]


def _poly_from(data, vars):
    return Poly(vars, {tuple(m): Fraction(c) for m, c in data})


def _elem_data(e):
    return {"num": _poly_data(e.num), "s": e.s}


def _elem_from(data, chart):
    return RingElem(chart, _poly_from(data["num"], chart.allvars), data["s"])


def value_to_data(v):
    """Structured, order-stable representation of a computed value."""
    if isinstance(v, RingElem):
        return {"kind": "elem", "chart": v.chart.name, **_elem_data(v)}
    if isinstance(v, VectorField):
        return {
            "kind": "vfield", "chart": v.chart.name,
            "coeffs": [_elem_data(c) for c in v.coeffs],
        }
    if isinstance(v, Jet):
        return {
            "kind": "jet", "chart": v.chart.name, "order": v.order,
            "coeffs": [
                [list(m), _elem_data(c)]
                for m, c in sorted(v.coeffs.items(), key=lambda t: grlex_key(t[0]))
            ],
        }
    if isinstance(v, JetField):
        return {
            "kind": "jetfield", "chart": v.chart.name, "order": v.order,
            "comps": [value_to_data(c)["coeffs"] for c in v.comps],
        }
    if isinstance(v, LElem):
        return {
            "kind": "lelem", "nvars": v.nvars, "r": v.r,
            "terms": [
                [list(m), i, str(c)]
                for (m, i), c in sorted(v.terms.items(), key=lambda t: basis_key(t[0]))
            ],
        }
    if isinstance(v, CurrentElem):
        return {
            "kind": "current", "chart": v.chart.name, "r": v.r,
            "terms": [
                [list(m), i, _elem_data(c)]
                for (m, i), c in sorted(v.terms.items(), key=lambda t: basis_key(t[0]))
            ],
        }
    if isinstance(v, SemiDirectElem):
        return {
            "kind": "semidirect", "chart": v.chart.name, "r": v.r,
            "v": [_elem_data(c) for c in v.v.coeffs],
            "c": value_to_data(v.c)["terms"],
        }
    if isinstance(v, DiffOp):
        return {
            "kind": "diffop", "chart": v.chart.name,
            "terms": [
                [list(m), _elem_data(c)]
                for m, c in sorted(v.terms.items(), key=lambda t: grlex_key(t[0]))
            ],
        }
    if isinstance(v, TensorElem):
        return {
            "kind": "tensor", "chart": v.chart.name, "r": v.r,
            "terms": [
                [list(dm), [[list(m), i] for m, i in w], _elem_data(c)]
                for (dm, w), c in sorted(
                    v.terms.items(),
                    key=lambda t: (grlex_key(t[0][0]), t[0][1]),
                )
            ],
        }
    raise TypeError(f"cannot serialize {type(v).__name__}")


def value_from_data(data, chart=None):
    """Rebuild a value from value_to_data output.  Chart-valued kinds need
    the chart passed in (the name field is checked)."""
    kind = data["kind"]
    if kind == "lelem":
        return LElem(
            data["nvars"], data["r"],
            {(tuple(m), i): Fraction(c) for m, i, c in data["terms"]},
        )
    if chart is None:
        raise ValueError(f"kind {kind!r} needs a chart")
    if data.get("chart") != chart.name:
        raise ValueError(f"value was saved on chart {data.get('chart')!r}, not {chart.name!r}")
    if kind == "elem":
        return _elem_from(data, chart)
    if kind == "vfield":
        return VectorField(chart, [_elem_from(c, chart) for c in data["coeffs"]])
    if kind == "jet":
        return Jet(
            chart, data["order"],
            {tuple(m): _elem_from(c, chart) for m, c in data["coeffs"]},
        )
    if kind == "jetfield":
        comps = [
            Jet(chart, data["order"], {tuple(m): _elem_from(c, chart) for m, c in comp})
            for comp in data["comps"]
        ]
        return JetField(chart, data["order"], comps)
    if kind == "current":
        return CurrentElem(
            chart, data["r"],
            {(tuple(m), i): _elem_from(c, chart) for m, i, c in data["terms"]},
        )
    if kind == "semidirect":
        v = VectorField(chart, [_elem_from(c, chart) for c in data["v"]])
        c = CurrentElem(
            chart, data["r"],
            {(tuple(m), i): _elem_from(e, chart) for m, i, e in data["c"]},
        )
        return SemiDirectElem(v, c)
    if kind == "diffop":
        return DiffOp(chart, {tuple(m): _elem_from(c, chart) for m, c in data["terms"]})
    if kind == "tensor":
        return TensorElem(
            chart, data["r"],
            {
                (tuple(dm), tuple((tuple(m), i) for m, i in w)): _elem_from(c, chart)
                for dm, w, c in data["terms"]
            },
        )
    raise ValueError(f"unknown kind {kind!r}")
