"""Solve the antipode equations on every built-in example and report properties.

    python3 scripts/antipode_survey.py
"""

import warnings

from hombialg.convolution import (antipode_properties, antipode_solutions, involutive_check,
                                  is_antipode)
from hombialg.io import format_map
from hombialg.structures import builder_outputs, dual

warnings.simplefilter("ignore")

for name, B in builder_outputs().items():
    S, free = antipode_solutions(B)
    if S is None:
        print(f"{name}: no antipode")
        continue
    props = antipode_properties(B, S)
    Sd, _ = antipode_solutions(dual(B))
    tag = "unique" if not free else f"{free}-dim family, particular solution shown"
    print(f"{name}: {tag}")
    for line in format_map(S, B.basis, "S"):
        print("    " + line)
    failing = [c.name for c in props.failures()]
    print(f"    properties: {'all hold' if not failing else 'fail ' + ', '.join(failing)}")
    print(f"    S o S = id: {involutive_check(B, S).passed}")
    print(f"    transpose is an antipode of the dual: {is_antipode(dual(B), S.transpose())}"
          + ("" if free else f", equals the dual's own: {Sd == S.transpose()}"))
