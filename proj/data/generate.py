#!/usr/bin/env python3
"""Regenerate the bundled groups, irrep catalogs and weight tables.

Every group is built from a faithful concrete model (integers mod n,
permutations, or 2x2 complex matrices); the Cayley table is read off by
matching products. Irrep matrices are written as [re, im] pairs with 17
significant digits. The C++ loader re-validates everything, so this script
is a convenience, not a source of truth.

    python3 data/generate.py            # writes into data/
"""

import cmath
import json
import math
import os
import sys

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def close(a, b):
    return np.allclose(np.asarray(a), np.asarray(b), atol=1e-12)


def cayley_table(elements, mul, eq):
    n = len(elements)
    table = []
    for a in elements:
        row = []
        for b in elements:
            p = mul(a, b)
            idx = [k for k in range(n) if eq(elements[k], p)]
            assert len(idx) == 1, "product not found exactly once"
            row.append(idx[0])
        table.append(row)
    return table


def cplx(z):
    z = complex(z)
    re = float(f"{z.real:.17g}")
    im = float(f"{z.imag:.17g}")
    # Keep signed zeros out of the files.
    return [re + 0.0 if abs(re) > 1e-15 else 0.0, im + 0.0 if abs(im) > 1e-15 else 0.0]


def encode(mats):
    return [[[cplx(x) for x in row] for row in np.atleast_2d(m)] for m in mats]


class Bundle:
    def __init__(self, name, key, names, table, generators):
        self.name = name
        self.key = key
        self.names = names
        self.table = table
        self.generators = generators
        self.irreps = []  # (label, [matrix per element])

    def add(self, label, mats):
        mats = [np.atleast_2d(np.asarray(m, dtype=complex)) for m in mats]
        n = len(self.names)
        for a in range(n):
            for b in range(n):
                assert close(mats[a] @ mats[b], mats[self.table[a][b]]), label
        self.irreps.append((label, mats))

    def write(self):
        groups = os.path.join(HERE, "groups")
        irreps = os.path.join(HERE, "irreps", self.key)
        catalogs = os.path.join(HERE, "catalogs")
        for d in (groups, irreps, catalogs):
            os.makedirs(d, exist_ok=True)
        group_doc = {
            "name": self.name,
            "order": len(self.names),
            "element_names": self.names,
            "generators": self.generators,
            "table": self.table,
        }
        dump(os.path.join(groups, f"{self.key}.json"), group_doc)
        files = []
        for label, mats in self.irreps:
            fname = label.lower().replace(".", "_") + ".json"
            files.append(f"../irreps/{self.key}/{fname}")
            dump(
                os.path.join(irreps, fname),
                {
                    "label": label,
                    "group": self.name,
                    "degree": int(mats[0].shape[0]),
                    "matrices": encode(mats),
                },
            )
        dump(
            os.path.join(catalogs, f"{self.key}.json"),
            {"group": self.name, "group_file": f"../groups/{self.key}.json", "irreps": files},
        )
        deg2 = sum(m[0].shape[0] ** 2 for _, m in self.irreps)
        assert deg2 == len(self.names), (self.name, deg2)


def dump(path, doc):
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


def cyclic(n, key, name, letter):
    elems = list(range(n))
    names = ["e"] + [letter if k == 1 else f"{letter}{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in elems] for a in elems]
    b = Bundle(name, key, names, table, [1] if n > 1 else [])
    for j in range(n):
        z = cmath.exp(2j * math.pi * j / n)
        if n == 4 and j in (1, 3):
            z = 1j if j == 1 else -1j
        if n in (2, 4) and j == n // 2:
            z = -1
        b.add(f"{name}.1{chr(ord('a') + j)}", [z ** k for k in elems])
    return b


def perm_mul(p, q):
    # (p*q)(x) = p(q(x))
    return tuple(p[q[x]] for x in range(len(q)))


def s3():
    elems = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    table = cayley_table(elems, perm_mul, lambda a, b: a == b)
    b = Bundle("S3", "s3", names, table, [1, 4])

    def sign(p):
        s = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    s = -s
        return s

    def permmat(p):
        m = np.zeros((3, 3))
        for x in range(3):
            m[p[x], x] = 1
        return m

    # Orthonormal basis of the sum-zero plane.
    basis = np.array([[1, -1, 0], [1, 1, -2]], dtype=float).T
    basis[:, 0] /= math.sqrt(2)
    basis[:, 1] /= math.sqrt(6)
    b.add("S3.1a", [1] * 6)
    b.add("S3.1b", [sign(p) for p in elems])
    b.add("S3.2a", [basis.T @ permmat(p) @ basis for p in elems])
    return b


def d4():
    r = np.array([[0, -1], [1, 0]])
    s = np.array([[1, 0], [0, -1]])
    mp = np.linalg.matrix_power
    elems = [mp(r, k) for k in range(4)] + [mp(r, k) @ s for k in range(4)]
    names = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
    table = cayley_table(elems, lambda a, b: a @ b, close)
    b = Bundle("D4", "d4", names, table, [1, 4])
    for idx, (rv, sv) in enumerate([(1, 1), (1, -1), (-1, 1), (-1, -1)]):
        vals = [rv ** k for k in range(4)] + [rv ** k * sv for k in range(4)]
        b.add(f"D4.1{chr(ord('a') + idx)}", vals)
    b.add("D4.2a", elems)
    return b


def quaternion_units():
    one = np.eye(2, dtype=complex)
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    qk = qi @ qj
    return [one, -one, qi, -qi, qj, -qj, qk, -qk]


Q8_NAMES = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
# Linear characters of Q8, by kernel: everything, <i>, <j>, <k>.
Q8_CHARS = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, 1, -1, -1, -1, -1, 1, 1],
]


def q8():
    elems = quaternion_units()
    table = cayley_table(elems, lambda a, b: a @ b, close)
    b = Bundle("Q8", "q8", Q8_NAMES, table, [2, 4])
    for idx, ch in enumerate(Q8_CHARS):
        b.add(f"Q8.1{chr(ord('a') + idx)}", ch)
    b.add("Q8.2a", elems)
    return b


def q12():
    zeta = cmath.exp(2j * math.pi / 6)

    def model(k):
        z = zeta ** k
        a = np.diag([z, 1 / z])
        x = np.array([[0, (-1) ** k], [1, 0]], dtype=complex)
        mp = np.linalg.matrix_power
        return [mp(a, p) for p in range(6)] + [mp(a, p) @ x for p in range(6)]

    elems = model(1)
    names = ["e", "a", "a2", "a3", "a4", "a5", "x", "ax", "a2x", "a3x", "a4x", "a5x"]
    table = cayley_table(elems, lambda a, b: a @ b, close)
    b = Bundle("Q12", "q12", names, table, [1, 6])
    # Abelianization is cyclic of order 4 generated by x, with a -> x^2.
    for idx, xv in enumerate([1, -1, 1j, -1j]):
        av = xv * xv
        b.add(f"Q12.1{chr(ord('a') + idx)}", [av ** p for p in range(6)] + [av ** p * xv for p in range(6)])
    b.add("Q12.2a", model(1))
    b.add("Q12.2b", model(2))
    return b


def c2xq8():
    q = quaternion_units()
    elems = [(c, k) for c in range(2) for k in range(8)]
    qt = cayley_table(q, lambda a, b: a @ b, close)
    table = [[(a[0] ^ b[0]) * 8 + qt[a[1]][b[1]] for b in elems] for a in elems]
    def c_name(c, k):
        base = Q8_NAMES[k]
        if c == 0:
            return base
        sign = "-" if base.startswith("-") else ""
        letter = base.lstrip("-")
        return sign + "c" + ("" if letter == "1" else letter)

    names = [c_name(c, k) for c, k in elems]
    b = Bundle("C2xQ8", "c2xq8", names, table, [8, 2, 4])
    idx = 0
    for cs in (1, -1):
        for ch in Q8_CHARS:
            b.add(f"C2xQ8.1{chr(ord('a') + idx)}", [(cs if c else 1) * ch[k] for c, k in elems])
            idx += 1
    b.add("C2xQ8.2a", [q[k] for c, k in elems])
    b.add("C2xQ8.2b", [(-1 if c else 1) * q[k] for c, k in elems])
    return b


def weights():
    out = os.path.join(HERE, "weights")
    os.makedirs(out, exist_ok=True)
    dump(
        os.path.join(out, "q8.json"),
        {
            "group": "Q8",
            "Q8.2a": -1,
            "provenance": {"Q8.2a": {"source": "bundled", "field_hint": ""}},
        },
    )
    dump(
        os.path.join(out, "c2xq8.json"),
        {
            "group": "C2xQ8",
            "C2xQ8.2a": -1,
            "C2xQ8.2b": -1,
            "provenance": {
                "C2xQ8.2a": {"source": "user", "note": "structure test, not an arithmetic fact"},
                "C2xQ8.2b": {"source": "user", "note": "structure test, not an arithmetic fact"},
            },
        },
    )
    dump(
        os.path.join(out, "q12.json"),
        {
            "group": "Q12",
            "Q12.2a": -1,
            "provenance": {"Q12.2a": {"source": "user", "note": "structure test, not an arithmetic fact"}},
        },
    )
    for key, name in (("c2", "C2"), ("c4", "C4"), ("s3", "S3"), ("d4", "D4")):
        dump(os.path.join(out, f"{key}.json"), {"group": name})


def main():
    bundles = [cyclic(2, "c2", "C2", "x"), cyclic(4, "c4", "C4", "a"), s3(), d4(), q8(), q12(), c2xq8()]
    for b in bundles:
        b.write()
    weights()
    return 0


if __name__ == "__main__":
    sys.exit(main())
