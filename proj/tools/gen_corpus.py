#!/usr/bin/env python3
"""Writes the instance corpus under examples_corpus/ (deterministic)."""
import json
import os
import random
from math import gcd

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "examples_corpus")


def P(*terms):
    return {tuple(e): c for c, e in terms}


def padd(p, q, s=1):
    r = dict(p)
    for e, c in q.items():
        r[e] = r.get(e, 0) + s * c
        if r[e] == 0:
            del r[e]
    return r


def pshift(p, a):
    return {tuple(x + y for x, y in zip(e, a)): c for e, c in p.items()}


def mul(g, h):
    (y, a), (z, b) = g, h
    return ([padd(p, pshift(q, a)) for p, q in zip(y, z)], tuple(x + w for x, w in zip(a, b)))


def inv(g):
    y, a = g
    na = tuple(-x for x in a)
    return ([padd({}, pshift(p, na), -1) for p in y], na)


def pjson(p):
    return [{"c": c, "e": list(e)} for e, c in sorted(p.items())]


def instance(n, d, gens, rels=()):
    return {
        "module": {"n": n, "d": d, "rels_N": [[pjson(p) for p in r] for r in rels]},
        "generators": [{"y": [pjson(p) for p in y], "a": list(a)} for y, a in gens],
    }


def full_lattice(steps, n):
    if n == 1:
        g = 0
        for a in steps:
            g = gcd(g, abs(a[0]))
        return g == 1
    g = 0
    for i in range(len(steps)):
        for j in range(i + 1, len(steps)):
            g = gcd(g, abs(steps[i][0] * steps[j][1] - steps[i][1] * steps[j][0]))
    return g == 1


def rand_poly(rng, n, terms=2, span=1, coef=2):
    p = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(-span, span) for _ in range(n))
        c = rng.randint(-coef, coef)
        if c:
            p = padd(p, {e: c})
    return p


def rand_gen(rng, n, d, step=2):
    return ([rand_poly(rng, n) for _ in range(d)], tuple(rng.randint(-step, step) for _ in range(n)))


def write(name, inst):
    with open(os.path.join(OUT, name + ".json"), "w") as f:
        json.dump(inst, f, indent=1, sort_keys=True)
        f.write("\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    z1, z2 = (0,), (0, 0)
    one1, one2 = P((1, z1)), P((1, z2))
    # Named examples.
    write("inverse_pair", instance(1, 1, [([one1], (1,)), ([P((-1, (-1,)))], (-1,))]))
    write("fig2", instance(2, 1, [([{}], (-2, 3)), ([{}], (2, 0)), ([{}], (0, -2))]))
    write("one_way", instance(1, 1, [([{}], (1,))]))

    yes = {}
    yes["three_cycle"] = instance(1, 1, [([one1], (1,)), ([{}], (-1,)), ([P((-1, z1))], (0,))])
    yes["quotient_lamplighter"] = instance(1, 1, [([one1], (1,)), ([one1], (-1,))],
                                           rels=[[P((1, z1), (1, (1,)))]])
    rng = random.Random(2024)
    k = 0
    while k < 5:
        n = 2 if k < 4 else 1
        d = 1 if k < 4 else 2
        g, h = rand_gen(rng, n, d), rand_gen(rng, n, d)
        if not full_lattice([g[1], h[1]], n):
            continue
        yes["inverse_pairs_%d" % k] = instance(n, d, [g, inv(g), h, inv(h)])
        k += 1
    k = 0
    while k < 14:
        n = 1 if k < 8 else 2
        K = rng.randint(2, 3)
        gens = [rand_gen(rng, n, 1) for _ in range(K - 1)]
        w = list(range(K - 1)) + [rng.randrange(K - 1) for _ in range(rng.randint(0, 7 - K))]
        rng.shuffle(w)
        e = ([{}], (0,) * n)
        for l in w:
            e = mul(e, gens[l])
        last = inv(e)
        steps = [g[1] for g in gens] + [last[1]]
        if not full_lattice(steps, n):
            continue
        yes["closing_word_%02d" % k] = instance(n, 1, gens + [last])
        k += 1
    for name, inst in yes.items():
        write("yes_" + name, inst)

    no = {}
    X = lambda *e: P((1, e))
    no["one_way"] = instance(1, 1, [([{}], (1,))])
    no["sign_conflict"] = instance(1, 1, [([one1], (1,)), ([one1], (1,))])
    no["neutral_obstructed"] = instance(1, 1, [([one1], (1,)), ([one1], (-1,))])
    no["half_plane"] = instance(2, 1, [([{}], (1, 0)), ([{}], (0, 1)), ([one2], (1, 1))])
    no["positive_steps"] = instance(1, 1, [([one1], (1,)), ([X(1)], (2,))])
    no["stuck_lamp"] = instance(2, 1, [([one2], (1, 0)), ([{}], (0, 1)), ([{}], (0, -1))])
    no["two_lamps"] = instance(1, 2, [([one1, {}], (1,)), ([{}, one1], (-1,))])
    no["golden"] = instance(1, 1, [([one1], (2,)), ([P((-1, z1))], (-1,))])
    no["loop_debt"] = instance(1, 1, [([one1], (1,)), ([one1], (-1,)), ([one1], (0,))])
    no["upward"] = instance(2, 1, [([one2], (1, 0)), ([P((-1, z2))], (-1, 0)), ([{}], (0, 1))])
    no["doubling_module"] = instance(1, 1, [([one1], (1,)), ([P((-1, z1))], (-1,))],
                                     rels=[[P((1, (1,)), (-2, z1))]])
    no["right_half"] = instance(2, 1, [([{}], (1, 1)), ([{}], (1, -1)), ([one2], (2, 1))])
    for name, inst in no.items():
        write("no_" + name, inst)


if __name__ == "__main__":
    main()
