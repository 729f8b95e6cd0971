#!/usr/bin/env python3
"""Regenerates the algebra and variety-context fixtures in this directory."""
import json
import os
from itertools import product

HERE = os.path.dirname(os.path.abspath(__file__))


def table(n, arity, f):
    return [f(*args) for args in product(range(n), repeat=arity)]


def ring(name, n):
    return {
        "name": name,
        "size": n,
        "ops": {
            "+": {"arity": 2, "table": table(n, 2, lambda a, b: (a + b) % n)},
            "*": {"arity": 2, "table": table(n, 2, lambda a, b: (a * b) % n)},
            "0": {"arity": 0, "table": [0]},
            "1": {"arity": 0, "table": [1 % n]},
        },
    }


def ring_product(name, left, right):
    # Pair encoding a*|B| + b, coordinatewise operations.
    nb = right["size"]
    n = left["size"] * nb

    def op(sym):
        lt, rt = left["ops"][sym]["table"], right["ops"][sym]["table"]

        def f(p, q):
            a, b = divmod(p, nb)
            c, d = divmod(q, nb)
            return lt[a * left["size"] + c] * nb + rt[b * nb + d]
        return f

    return {
        "name": name,
        "size": n,
        "ops": {
            "+": {"arity": 2, "table": table(n, 2, op("+"))},
            "*": {"arity": 2, "table": table(n, 2, op("*"))},
            "0": {"arity": 0, "table": [0]},
            "1": {"arity": 0, "table": [left["ops"]["1"]["table"][0] * nb + right["ops"]["1"]["table"][0]]},
        },
    }


def lattice(name, n, leq, complement=None):
    def meet(a, b):
        lower = [c for c in range(n) if leq(c, a) and leq(c, b)]
        return next(c for c in lower if all(leq(d, c) for d in lower))

    def join(a, b):
        upper = [c for c in range(n) if leq(a, c) and leq(b, c)]
        return next(c for c in upper if all(leq(c, d) for d in upper))

    bottom = next(c for c in range(n) if all(leq(c, d) for d in range(n)))
    top = next(c for c in range(n) if all(leq(d, c) for d in range(n)))
    ops = {
        "/\\": {"arity": 2, "table": table(n, 2, meet)},
        "\\/": {"arity": 2, "table": table(n, 2, join)},
    }
    if complement is not None:
        ops["neg"] = {"arity": 1, "table": [complement[a] for a in range(n)]}
    ops["0"] = {"arity": 0, "table": [bottom]}
    ops["1"] = {"arity": 0, "table": [top]}
    return {"name": name, "size": n, "ops": ops}


def order_from(n, covers):
    up = {a: {a} for a in range(n)}
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            for c in range(n):
                if a in up[c] and not up[b] <= up[c]:
                    up[c] |= up[b]
                    changed = True
    return lambda a, b: b in up[a]


def write(name, obj):
    with open(os.path.join(HERE, name), "w") as f:
        f.write(json.dumps(obj, ensure_ascii=False) + "\n")


def context(generator, depth, max_size, zero="0", one="1"):
    return {
        "generator": generator,
        "l": 1,
        "zero": [zero],
        "one": [one],
        "pool": {"depth": depth, "max_size": max_size},
    }


def main():
    rings = {n: ring(f"Z{n}", n) for n in (2, 3, 4, 5, 6, 12)}
    for n, r in rings.items():
        write(f"z{n}.alg.json", r)
    write("z2xz2.alg.json", ring_product("Z2xZ2", rings[2], rings[2]))

    chain = lambda n: order_from(n, [(i, i + 1) for i in range(n - 1)])
    write("chain2.alg.json", lattice("2-chain", 2, chain(2)))
    # 0 < m < 1 as 0, 1, 2.
    write("chain3.alg.json", lattice("3-chain", 3, chain(3)))
    # bottom, a, b, top: the product 2x2 under the pair encoding.
    write("lattice2x2.alg.json", lattice("2x2", 4, order_from(4, [(0, 1), (0, 2), (1, 3), (2, 3)])))
    # N5: 0 < a < b < 1 and 0 < c < 1 as 0, 1, 2, 4 and 3.
    write("n5.alg.json", lattice("N5", 5, order_from(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])))
    # M3: three atoms 1, 2, 3.
    write("m3.alg.json", lattice("M3", 5, order_from(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])))
    write("bool2.alg.json", lattice("B2", 2, chain(2), complement=[1, 0]))

    for stem in ("z2", "z3", "z4", "z5", "z6", "z2xz2"):
        write(f"{stem}.ctx.json", context(f"{stem}.alg.json", 2, 8))
    write("z12.ctx.json", context("z12.alg.json", 1, 8))
    write("z12-reversed.ctx.json", context("z12.alg.json", 1, 8, zero="1", one="0"))
    for stem in ("chain2", "chain3", "lattice2x2", "n5", "m3", "bool2"):
        write(f"{stem}.ctx.json", context(f"{stem}.alg.json", 2, 8))


if __name__ == "__main__":
    main()
