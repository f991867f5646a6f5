"""JSON structure-constant files and sparse-table rendering.

Bialgebra file::

    {"dim": 4, "basis": ["1", "g", "x", "gx"],
     "mu":    [[i, j, k, "p/q"], ...],   # mu(e_i (x) e_j) has coefficient p/q on e_k
     "delta": [[i, j, k, "p/q"], ...],   # Delta(e_i) has coefficient p/q on e_j (x) e_k
     "eta": ["1", "0", ...], "eps": ["1", "1", ...],
     "alpha": [[i, j, "p/q"], ...]}      # alpha(e_i) has coefficient p/q on e_j

Omitted entries are zero, indices are 0-based and duplicates are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .linalg import LinMap, Matrix, scalar_str, to_scalar
from .structures import HomBialgebra, build_group_algebra, build_taft, from_tables


class InputError(ValueError):
    """Malformed input file; the message carries the location."""


def parse_scalar(x, where="") -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{where}: {x!r} is not an exact rational (use \"p/q\")")
    try:
        return to_scalar(x)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{where}: cannot parse rational {x!r} ({e})") from None


def _index(x, d, where):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < d:
        raise InputError(f"{where}: index {x!r} outside 0..{d - 1}")
    return x


def _entries(table, nidx, d, where):
    if not isinstance(table, list):
        raise InputError(f"{where}: expected a list of entries")
    seen = {}
    for n, ent in enumerate(table):
        loc = f"{where}[{n}]"
        if not isinstance(ent, list) or len(ent) != nidx + 1:
            raise InputError(f"{loc}: expected {nidx} indices followed by a value")
        idx = tuple(_index(x, d, loc) for x in ent[:nidx])
        if idx in seen:
            raise InputError(f"{loc}: duplicate entry for indices {list(idx)} (first at {where}[{seen[idx]}])")
        seen[idx] = n
        yield idx, parse_scalar(ent[nidx], loc)


def parse_mu_table(table, d, where="mu") -> LinMap:
    return LinMap(d, 1, 2, [((k, i * d + j), c) for (i, j, k), c in _entries(table, 3, d, where)])


def parse_delta_table(table, d, where="delta") -> LinMap:
    return LinMap(d, 2, 1, [((j * d + k, i), c) for (i, j, k), c in _entries(table, 3, d, where)])


def parse_endo_table(table, d, where="alpha") -> LinMap:
    return LinMap(d, 1, 1, [((j, i), c) for (i, j), c in _entries(table, 2, d, where)])


def _vector(v, d, where):
    if not isinstance(v, list) or len(v) != d:
        raise InputError(f"{where}: expected a list of {d} rationals")
    return [parse_scalar(x, f"{where}[{n}]") for n, x in enumerate(v)]


def bialgebra_from_json(doc, where="<input>") -> HomBialgebra:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    if "builder" in doc:
        return builder_from_json(doc, where)
    missing = [k for k in ("dim", "mu", "delta", "eta", "eps", "alpha") if k not in doc]
    if missing:
        raise InputError(f"{where}: missing field(s) {', '.join(missing)}")
    d = doc["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError(f"{where}: dim must be a positive integer")
    basis = doc.get("basis", [f"e{i + 1}" for i in range(d)])
    if not isinstance(basis, list) or len(basis) != d or not all(isinstance(b, str) for b in basis):
        raise InputError(f"{where}: basis must be a list of {d} strings")
    mu = parse_mu_table(doc["mu"], d, f"{where}: mu")
    delta = parse_delta_table(doc["delta"], d, f"{where}: delta")
    alpha = parse_endo_table(doc["alpha"], d, f"{where}: alpha")
    eta = _vector(doc["eta"], d, f"{where}: eta")
    eps = _vector(doc["eps"], d, f"{where}: eps")
    return HomBialgebra(d, tuple(basis), mu, delta,
                        LinMap(d, 1, 0, [((i, 0), c) for i, c in enumerate(eta) if c]),
                        LinMap(d, 0, 1, [((0, i), c) for i, c in enumerate(eps) if c]), alpha)


def builder_from_json(doc, where="<input>") -> HomBialgebra:
    kind = doc.get("builder")
    if kind == "taft":
        if "lambda" not in doc:
            raise InputError(f"{where}: taft builder needs \"lambda\"")
        return build_taft(parse_scalar(doc["lambda"], f"{where}: lambda"))
    if kind == "group":
        try:
            return build_group_algebra(int(doc["n"]), int(doc["k"]))
        except (KeyError, ValueError, TypeError) as e:
            raise InputError(f"{where}: group builder needs integers n >= 1, 0 <= k < n ({e})") from None
    raise InputError(f"{where}: unknown builder {kind!r}")


def mu_table(m: Matrix) -> list:
    d = m.rows
    return [[c // d, c % d, r, scalar_str(v)] for (r, c), v in sorted(m.items(), key=_col_major)]


def delta_table(m: Matrix) -> list:
    d = m.cols
    return [[c, r // d, r % d, scalar_str(v)] for (r, c), v in sorted(m.items(), key=_col_major)]


def endo_table(m: Matrix) -> list:
    return [[c, r, scalar_str(v)] for (r, c), v in sorted(m.items(), key=_col_major)]


def _col_major(item):
    (r, c), _ = item
    return (c, r)


def bialgebra_to_json(B: HomBialgebra) -> dict:
    return {
        "dim": B.dim,
        "basis": list(B.basis),
        "mu": mu_table(B.mu),
        "delta": delta_table(B.delta),
        "eta": [scalar_str(x) for x in B.unit],
        "eps": [scalar_str(x) for x in B.counit],
        "alpha": endo_table(B.alpha),
    }


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def load_bialgebra(path) -> HomBialgebra:
    return bialgebra_from_json(load_json(path), str(path))


def parse_source(source: str) -> HomBialgebra:
    """A file path, or a builder shorthand ``taft:LAMBDA`` / ``group:N:K``."""
    parts = source.split(":")
    if parts[0] == "taft" and len(parts) == 2:
        return build_taft(parse_scalar(parts[1], source))
    if parts[0] == "group" and len(parts) == 3:
        try:
            return build_group_algebra(int(parts[1]), int(parts[2]))
        except ValueError as e:
            raise InputError(f"{source}: {e}") from None
    return load_bialgebra(source)


# ---------------------------------------------------------------------------
# deformations and gauges

def deformation_from_json(doc, where="<input>"):
    from .deformations import DeformationError, TruncatedDeformation
    if not isinstance(doc, dict) or "base" not in doc:
        raise InputError(f"{where}: expected an object with a \"base\" field")
    B = bialgebra_from_json(doc["base"], f"{where}: base")
    order = doc.get("order")
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise InputError(f"{where}: order must be an integer >= 1")
    mus, des = doc.get("mu_terms", []), doc.get("delta_terms", [])
    if not isinstance(mus, list) or not isinstance(des, list) or len(mus) > order or len(des) > order:
        raise InputError(f"{where}: mu_terms/delta_terms must be lists of at most {order} tables")
    d = B.dim
    mu_maps = [parse_mu_table(t, d, f"{where}: mu_terms[{n}]") for n, t in enumerate(mus)]
    de_maps = [parse_delta_table(t, d, f"{where}: delta_terms[{n}]") for n, t in enumerate(des)]
    mu_maps += [LinMap.zero_map(d, 1, 2)] * (order - len(mu_maps))
    de_maps += [LinMap.zero_map(d, 2, 1)] * (order - len(de_maps))
    try:
        return TruncatedDeformation.from_terms(B, mu_maps, de_maps)
    except DeformationError as e:
        raise InputError(f"{where}: {e}") from None


def deformation_to_json(D) -> dict:
    return {
        "base": bialgebra_to_json(D.base),
        "order": D.order,
        "mu_terms": [mu_table(m) for m in D.mu_terms[1:]],
        "delta_terms": [delta_table(m) for m in D.delta_terms[1:]],
    }


def gauge_from_json(doc, d, where="<input>"):
    from .deformations import GaugeTransform
    if not isinstance(doc, dict) or "terms" not in doc:
        raise InputError(f"{where}: expected {{\"order\": N, \"terms\": [...]}}")
    terms = doc["terms"]
    order = doc.get("order", len(terms) if isinstance(terms, list) else 0)
    if not isinstance(terms, list) or isinstance(order, bool) or not isinstance(order, int) \
            or len(terms) > order:
        raise InputError(f"{where}: terms must be a list of at most order tables")
    phis = [parse_endo_table(t, d, f"{where}: terms[{n}]") for n, t in enumerate(terms)]
    phis += [LinMap.zero_map(d, 1, 1)] * (order - len(phis))
    return GaugeTransform.from_terms(d, phis)


def gauge_to_json(G) -> dict:
    return {"order": G.order, "terms": [endo_table(t) for t in G.terms[1:]]}


def endo_from_json(doc, d, where="<input>") -> LinMap:
    """A map file: either a bare entry list or ``{"map": [...]}``."""
    if isinstance(doc, dict):
        if "map" not in doc:
            raise InputError(f"{where}: expected {{\"map\": [[i, j, value], ...]}}")
        doc = doc["map"]
    return parse_endo_table(doc, d, where)


# ---------------------------------------------------------------------------
# human-readable sparse tables

def format_element(col: dict, labels, d=None, arity=1) -> str:
    """Render ``{flat index: coeff}`` as ``c*a(x)b + ...``."""
    if not col:
        return "0"
    d = d or len(labels)
    parts = []
    for idx, c in sorted(col.items()):
        slots = []
        for _ in range(arity):
            idx, r = divmod(idx, d)
            slots.append(labels[r])
        term = "(x)".join(reversed(slots)) if arity else "1"
        if c == 1:
            parts.append(term)
        elif c == -1:
            parts.append("-" + term)
        else:
            parts.append(f"{scalar_str(c)}*{term}")
    return " + ".join(parts).replace("+ -", "- ")


def format_map(m: LinMap, labels, name="f") -> list[str]:
    d = m.base_dim
    lines = []
    for c in range(m.cols):
        col = m.column(c)
        if not col:
            continue
        arg = format_element({c: 1}, labels, d, m.dom_arity) if m.dom_arity else "1"
        lines.append(f"{name}({arg}) = {format_element(col, labels, d, m.cod_arity)}")
    return lines or [f"{name} = 0"]


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
