#!/usr/bin/env python3
"""Derive data/connections.txt from data/cities.txt.

Each city is linked to its K nearest neighbours (great-circle distance),
links are symmetrised, and disconnected components are joined through their
closest pair of cities. Output is sorted so reruns are byte-identical.
"""
import math
import sys
from pathlib import Path

K = 4
root = Path(__file__).resolve().parent.parent


def load(path):
    cities = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, lat, lon = (t.strip() for t in line.split(";"))
        cities[name] = (float(lat), float(lon))
    return cities


def gc(p, q):
    la1, lo1, la2, lo2 = map(math.radians, (*p, *q))
    h = math.sin((la2 - la1) / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2
    return 2 * math.asin(min(1.0, math.sqrt(h)))


def main():
    cities = load(root / "data" / "cities.txt")
    names = sorted(cities)
    adj = {n: set() for n in names}
    for n in names:
        near = sorted((gc(cities[n], cities[m]), m) for m in names if m != n)[:K]
        for _, m in near:
            adj[n].add(m)
            adj[m].add(n)

    def components():
        seen, comps = set(), []
        for n in names:
            if n in seen:
                continue
            stack, comp = [n], []
            seen.add(n)
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            comps.append(comp)
        return comps

    comps = components()
    while len(comps) > 1:
        first = comps[0]
        rest = [m for c in comps[1:] for m in c]
        _, u, v = min((gc(cities[u], cities[v]), u, v) for u in first for v in rest)
        adj[u].add(v)
        adj[v].add(u)
        comps = components()

    out = ["# name;adjacent,adjacent,... (undirected, alphabetical)"]
    out += [f"{n};{','.join(sorted(adj[n]))}" for n in names]
    (root / "data" / "connections.txt").write_text("\n".join(out) + "\n")
    print(f"{len(names)} cities, {sum(len(a) for a in adj.values()) // 2} edges", file=sys.stderr)


if __name__ == "__main__":
    main()
