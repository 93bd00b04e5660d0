"""Write the bundled Morse and braid models used by the analytic checks."""

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "kint" / "data" / "analytic"


def pts(*rows):
    return [[z.real, z.imag, t] for t, z in rows]


def strand(points, orientation, component=0, tag=""):
    d = {"component": component, "orientation": orientation, "points": points}
    if tag:
        d["tag"] = tag
    return d


def helix(t0, t1, turns, sign, phase, n=48):
    """Points of one strand of a two-strand twist about the origin."""
    rows = []
    for k in range(n + 1):
        t = t0 + (t1 - t0) * k / n
        th = sign * math.pi * turns * k / n
        rows.append((t, phase * complex(math.cos(th), math.sin(th))))
    return rows


def hump():
    # a small zigzag far to the right of the left leg
    L, a, b, c = -100.0, 1.0, 1.05, 1.1
    return {
        "critical_values": [0, 1, 2, 3],
        "intervals": [
            {"t0": 0, "t1": 1, "strands": [
                strand(pts((0, complex((L + a) / 2)), (0.5, complex(L)), (1, complex(L))), "up"),
                strand(pts((0, complex((L + a) / 2)), (0.5, complex(a)), (1, complex(a))), "down", tag="T"),
            ]},
            {"t0": 1, "t1": 2, "strands": [
                strand(pts((1, complex(L)), (2, complex(L))), "up"),
                strand(pts((1, complex(a)), (1.5, complex(a)), (2, complex((a + b) / 2 - 0.01))), "down", tag="T"),
                strand(pts((1, complex((b + c) / 2 + 0.01)), (1.25, complex(b)), (1.75, complex(b)), (2, complex((a + b) / 2 - 0.01))), "up", tag="T"),
                strand(pts((1, complex((b + c) / 2 + 0.01)), (1.25, complex(c)), (2, complex(c))), "down", tag="T"),
            ]},
            {"t0": 2, "t1": 3, "strands": [
                strand(pts((2, complex(L)), (2.5, complex(L)), (3, complex((L + c) / 2))), "up"),
                strand(pts((2, complex(c)), (2.5, complex(c)), (3, complex((L + c) / 2))), "down", tag="T"),
            ]},
        ],
    }


def trefoil(sign=-1):
    # closure of a three-half-twist braid on strands at -1 and +1
    ta = [(1, complex(-1)), (3, complex(-1))] + helix(3, 7, 3, sign, -1)[1:] + [(8, complex(1)), (9, complex(2.5))]
    tb = [(1, complex(2.5)), (2, complex(1)), (3, complex(1))] + helix(3, 7, 3, sign, 1)[1:] + [(9, complex(-1))]
    return {
        "critical_values": [0, 1, 9, 10],
        "intervals": [
            {"t0": 0, "t1": 1, "strands": [
                strand(pts((0, complex(2)), (0.5, complex(-1)), (1, complex(-1))), "up"),
                strand(pts((0, complex(2)), (0.5, complex(5)), (1, complex(5))), "down"),
            ]},
            {"t0": 1, "t1": 9, "strands": [
                strand(pts(*ta), "up"),
                strand(pts(*tb), "up"),
                strand(pts((1, complex(2.5)), (2, complex(4)), (8, complex(4)), (9, complex(2.5))), "down"),
                strand(pts((1, complex(5)), (9, complex(5))), "down"),
            ]},
            {"t0": 9, "t1": 10, "strands": [
                strand(pts((9, complex(-1)), (9.5, complex(-1)), (10, complex(2))), "up"),
                strand(pts((9, complex(5)), (9.5, complex(5)), (10, complex(2))), "down"),
            ]},
        ],
    }


def hopf():
    # component 0 in the plane Im z = 0, component 1 threading its disk once
    up, dn = 1 + 0.5j, 1 - 0.5j
    return {
        "critical_values": [0, 1, 3, 4],
        "intervals": [
            {"t0": 0, "t1": 1, "strands": [
                strand(pts((0, 0j), (0.5, complex(-1)), (1, complex(-1))), "up", 0),
                strand(pts((0, 0j), (0.5, complex(1)), (1, complex(1))), "down", 0),
            ]},
            {"t0": 1, "t1": 3, "strands": [
                strand(pts((1, complex(-1)), (2.5, complex(-1)), (3, 0j)), "up", 0),
                strand(pts((1, complex(1)), (2.5, complex(1)), (3, 0j)), "down", 0),
                strand(pts((1, 0.5 + 0j), (1.5, up), (3, up)), "up", 1),
                strand(pts((1, 0.5 + 0j), (1.5, dn), (3, dn)), "down", 1),
            ]},
            {"t0": 3, "t1": 4, "strands": [
                strand(pts((3, up), (3.5, up), (4, 1.5 + 0j)), "up", 1),
                strand(pts((3, dn), (3.5, dn), (4, 1.5 + 0j)), "down", 1),
            ]},
        ],
    }


def twists(k):
    n = 64 * k
    a = [(j / n, 0.5 * complex(math.cos(2 * math.pi * k * j / n), math.sin(2 * math.pi * k * j / n))) for j in range(n + 1)]
    b = [(t, -z) for t, z in a]
    return {
        "critical_values": [],
        "intervals": [{"t0": 0, "t1": 1, "strands": [strand(pts(*a), "up"), strand(pts(*b), "up")]}],
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    models = {"hump": hump(), "trefoil": trefoil(), "hopf": hopf()}
    for k in (1, 2, 3):
        models[f"twists{k}"] = twists(k)
    for name, data in models.items():
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=1) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
