"""Regenerate the bundled presentations and PD codes under src/kint/data."""

import json
from pathlib import Path

from kint.evaluator import add_hump, braid_closure, connected_sum, mirror, validate
from kint.skein import mirror_pd, pd_from_braid

ROOT = Path(__file__).resolve().parents[1] / "src" / "kint" / "data"

# name: (strands, braid word); negative generators are B- events
BRAIDS = {
    "unknot": (1, []),
    "trefoil": (2, [-1, -1, -1]),
    "trefoil_alt": (3, [-1, -1, -1, -2]),
    "figure_eight": (3, [1, -2, 1, -2]),
    "cinquefoil": (2, [-1] * 5),
    "three_twist": (3, [-1, -1, -1, -2, 1, -2]),
}


def main():
    pres, pds = {}, {}
    for name, (n, word) in BRAIDS.items():
        pres[name] = braid_closure(n, word, name)
        pds[name] = pd_from_braid(n, word)
    pres["hump"] = add_hump(pres["unknot"])
    pds["hump"] = pds["unknot"]
    pres["mirror_trefoil"] = mirror(pres["trefoil"])
    pds["mirror_trefoil"] = mirror_pd(pds["trefoil"])
    sums = {
        "trefoil_trefoil": (("trefoil", "trefoil"), (3, [-1, -1, -1, -2, -2, -2])),
        "square_knot": (("trefoil", "mirror_trefoil"), (3, [-1, -1, -1, 2, 2, 2])),
        "trefoil_figure_eight": (("trefoil", "figure_eight"), (4, [-1, -1, -1, 2, -3, 2, -3])),
        "figure_eight_figure_eight": (("figure_eight", "figure_eight"), (5, [1, -2, 1, -2, 3, -4, 3, -4])),
    }
    for name, ((a, b), (n, word)) in sums.items():
        pres[name] = connected_sum(pres[a], pres[b])
        pds[name] = pd_from_braid(n, word)
    for name, p in pres.items():
        p = type(p)(p.slices, validate(p).writhe, name, p.orientation)
        (ROOT / "presentations" / f"{name}.json").write_text(json.dumps(p.to_json(), indent=1) + "\n")
        (ROOT / "pd" / f"{name}.json").write_text(json.dumps(pds[name].to_json()) + "\n")


if __name__ == "__main__":
    main()
