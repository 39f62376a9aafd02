"""Built-in example charts and atlases.

Three charts exercise the three ring features: a plain affine plane, a
localized line, and a curve chart with one algebraic generator.  The
projective-line atlas comes in two flavours: `p1` keeps three charts with
all six directed transitions declared over the common triple-overlap ring
(so cocycle checks are possible), and `p1_pair` is the two-chart version
over the ordinary pair overlap.

The CLI accepts these by name wherever a chart/atlas file is expected.
"""

from __future__ import annotations

from . import fileio

STANDARD_CHARTS = {
    "affine2": {
        "name": "affine2",
        "params": ["x1", "x2"],
        "gens": [],
        "denominator": "1",
    },
    "loc_x": {
        "name": "loc_x",
        "params": ["x"],
        "gens": [],
        "denominator": "x",
    },
    "elliptic": {
        "name": "elliptic",
        "params": ["x"],
        "gens": [{"name": "y", "degree": 2, "rhs": "x^3 - x + 1"}],
        "denominator": "y",
    },
}

_P1_CHARTS = [
    {"name": "std", "params": ["x"], "gens": [], "denominator": "1"},
    {"name": "inf", "params": ["w"], "gens": [], "denominator": "1"},
    {"name": "shift", "params": ["v"], "gens": [], "denominator": "1"},
    # pair overlap of std and inf: x invertible
    {"name": "std_inf", "params": ["x"], "gens": [], "denominator": "x"},
    # triple overlap: both x and x - 1 invertible
    {"name": "triple", "params": ["x"], "gens": [], "denominator": "x^2 - x"},
    # one-parameter rings hosting the coordinate-change formulas
    {"name": "punctured_0", "params": ["t"], "gens": [], "denominator": "t"},
    {"name": "punctured_1", "params": ["t"], "gens": [], "denominator": "t - 1"},
    {"name": "punctured_neg1", "params": ["t"], "gens": [], "denominator": "t + 1"},
]

STANDARD_ATLASES = {
    # Projective line, three charts: w = 1/x, v = 1/(x - 1).  All six
    # directed transitions are declared over the triple overlap so that
    # any composite stays on one ring; each also carries the coordinate
    # change as closed formulas so mutual inverseness is checked by
    # substitution.
    "p1": {
        "name": "p1",
        "charts": _P1_CHARTS,
        "transitions": [
            {"from": "std", "to": "inf", "overlap": "triple",
             "G": ["x"], "H": ["1/x"],
             "x_of_y": {"chart": "punctured_0", "exprs": ["1/t"]},
             "y_of_x": {"chart": "punctured_0", "exprs": ["1/t"]}},
            {"from": "inf", "to": "std", "overlap": "triple",
             "G": ["1/x"], "H": ["x"],
             "x_of_y": {"chart": "punctured_0", "exprs": ["1/t"]},
             "y_of_x": {"chart": "punctured_0", "exprs": ["1/t"]}},
            {"from": "inf", "to": "shift", "overlap": "triple",
             "G": ["1/x"], "H": ["1/(x-1)"],
             "x_of_y": {"chart": "punctured_neg1", "exprs": ["t/(t + 1)"]},
             "y_of_x": {"chart": "punctured_1", "exprs": ["-t/(t - 1)"]}},
            {"from": "shift", "to": "inf", "overlap": "triple",
             "G": ["1/(x-1)"], "H": ["1/x"],
             "x_of_y": {"chart": "punctured_1", "exprs": ["-t/(t - 1)"]},
             "y_of_x": {"chart": "punctured_neg1", "exprs": ["t/(t + 1)"]}},
            {"from": "std", "to": "shift", "overlap": "triple",
             "G": ["x"], "H": ["1/(x-1)"],
             "x_of_y": {"chart": "punctured_0", "exprs": ["(t + 1)/t"]},
             "y_of_x": {"chart": "punctured_1", "exprs": ["1/(t - 1)"]}},
            {"from": "shift", "to": "std", "overlap": "triple",
             "G": ["1/(x-1)"], "H": ["x"],
             "x_of_y": {"chart": "punctured_1", "exprs": ["1/(t - 1)"]},
             "y_of_x": {"chart": "punctured_0", "exprs": ["(t + 1)/t"]}},
        ],
    },
    "p1_pair": {
        "name": "p1_pair",
        "charts": _P1_CHARTS[:2] + [_P1_CHARTS[3], _P1_CHARTS[5]],
        "transitions": [
            {"from": "std", "to": "inf", "overlap": "std_inf",
             "G": ["x"], "H": ["1/x"],
             "x_of_y": {"chart": "punctured_0", "exprs": ["1/t"]},
             "y_of_x": {"chart": "punctured_0", "exprs": ["1/t"]}},
            {"from": "inf", "to": "std", "overlap": "std_inf",
             "G": ["1/x"], "H": ["x"],
             "x_of_y": {"chart": "punctured_0", "exprs": ["1/t"]},
             "y_of_x": {"chart": "punctured_0", "exprs": ["1/t"]}},
        ],
    },
}

_chart_cache = {}
_atlas_cache = {}


def standard_chart(name):
    got = _chart_cache.get(name)
    if got is None:
        if name not in STANDARD_CHARTS:
            raise KeyError(f"no built-in chart {name!r}")
        got = fileio.loads_chart(STANDARD_CHARTS[name])
        _chart_cache[name] = got
    return got


def standard_atlas(name="p1"):
    got = _atlas_cache.get(name)
    if got is None:
        if name not in STANDARD_ATLASES:
            raise KeyError(f"no built-in atlas {name!r}")
        got = fileio.loads_atlas(STANDARD_ATLASES[name])
        _atlas_cache[name] = got
    return got
