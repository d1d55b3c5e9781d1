"""Regenerates the JSON fixtures and their golden values.

Golden values come from direct sums written here in numpy, independent of
the C++ library. Run from this directory: python3 make_fixtures.py
"""
import itertools
import json
import math

import numpy as np

rng = np.random.default_rng(20240611)


def write(name, obj):
    with open(name, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def fn_records(values, offset):
    return [{"x": offset + i, "re": float(v.real), "im": float(v.imag)}
            for i, v in enumerate(values) if v != 0]


def as_dict(values, offset):
    return {offset + i: complex(v) for i, v in enumerate(values) if v != 0}


def gowers_raw(f, s):
    xs = sorted(f)
    lo, hi = xs[0], xs[-1]
    span = hi - lo
    total = 0j
    for h in itertools.product(range(-span, span + 1), repeat=s):
        for x in xs:
            prod = 1 + 0j
            for w in range(1 << s):
                pt = x + sum(h[i] for i in range(s) if (w >> i) & 1)
                v = f.get(pt, 0)
                if v == 0:
                    prod = 0
                    break
                prod *= v.conjugate() if bin(w).count("1") % 2 else v
            total += prod
    return total.real


def lam(q, N, f0, f1, f2):
    M = math.isqrt(N // q)
    total = 0j
    for x in range(1, N + 1):
        for y in range(1, M + 1):
            total += f0.get(x, 0) * f1.get(x + y, 0) * f2.get(x + q * y * y, 0)
    return total / (N * M)


# Point masses, zero, all-ones on [4] and the unique-term witness.
write("delta0.json", [{"x": 0, "re": 1.0, "im": 0.0}])
write("zero.json", [])
write("ones4.json", [{"x": x, "re": 1.0, "im": 0.0} for x in range(1, 5)])
for name, x in (("witness_f0.json", 1), ("witness_f1.json", 2), ("witness_f2.json", 3)):
    write(name, [{"x": x, "re": 1.0, "im": 0.0}])

# Random unimodular function on [1, 12] with its U^2 and U^3 powers.
rand12 = np.exp(2j * np.pi * rng.random(12))
write("rand12.json", fn_records(rand12, 1))
f12 = as_dict(rand12, 1)

# Random triple for the counting operator, q = 2, N = 30.
q, N = 2, 30
trip = [np.exp(2j * np.pi * rng.random(N)) for _ in range(3)]
for i, t in enumerate(trip):
    write(f"rand30_f{i}.json", fn_records(t, 1))
lam30 = lam(q, N, *(as_dict(t, 1) for t in trip))

# Planted local phase: modulus 2, resolution 10, anchor 0 on [1, 400].
N_pl, R_pl = 400, 10
table = {}
planted = []
for x in range(1, N_pl + 1):
    key = ((x - 0) // R_pl, x % 2)
    if key not in table:
        table[key] = np.exp(2j * np.pi * rng.random())
    planted.append(table[key])
write("planted400_f.json", fn_records(np.array(planted), 1))
write("ones400.json", [{"x": x, "re": 1.0, "im": 0.0} for x in range(1, N_pl + 1)])


def max_free_size(N, q):
    M = math.isqrt(N // q)
    best = 0
    for mask in range(1 << N):
        A = [i + 1 for i in range(N) if (mask >> i) & 1]
        if len(A) <= best:
            continue
        S = set(A)
        if any(x + y in S and x + q * y * y in S for x in A for y in range(1, M + 1)):
            continue
        best = len(A)
    return best


golden = {
    "rand12_u2_raw": gowers_raw(f12, 2),
    "rand12_u3_raw": gowers_raw(f12, 3),
    "rand30_lambda_q2": [lam30.real, lam30.imag],
    "ones4_lambda_q1": lam(1, 4, *([{x: 1 for x in range(1, 5)}] * 3)).real,
    "max_free_q1": {str(n): max_free_size(n, 1) for n in range(1, 13)},
}
write("golden.json", golden)
