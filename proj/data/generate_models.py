#!/usr/bin/env python3
"""Regenerate the bundled model files in this directory."""
import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent
NEG, POS = -math.inf, math.inf


def mat(n, fill):
    return [[fill] * n for _ in range(n)]


def enc(m):
    def e(v):
        if v == NEG:
            return "-inf"
        if v == POS:
            return "inf"
        return int(v) if float(v).is_integer() else v
    return [[e(v) for v in row] for row in m]


def mode(n, A0=None, A1=None, B0=None, B1=None):
    """Entries are given as {(row, col): value} with 1-based or named indices already resolved."""
    out = {}
    for key, entries, fill in (("A0", A0, NEG), ("A1", A1, NEG), ("B0", B0, POS), ("B1", B1, POS)):
        if entries is None:
            continue
        m = mat(n, fill)
        for (i, j), v in entries.items():
            m[i][j] = v
        out[key] = enc(m)
    return out


def write(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=1) + "\n")


def place(frm, to, marking, lo, hi=POS):
    p = {"from": frm, "to": to, "marking": marking, "lo": lo}
    if hi != POS:
        p["hi"] = hi
    return p


# ---- heat treatment line -------------------------------------------------

loose_places = [
    place(1, 2, 0, 2, 3),
    place(2, 1, 1, 0),
    place(2, 3, 0, 0.5),
    place(3, 2, 1, 0.5),
    place(3, 3, 1, 0, 4),
    place(1, 3, 0, 6),
]
write("heat_treatment.json", {"n": 3, "events": ["t1", "t2", "t3"], "pteg": {"mode": "A", "places": loose_places}})

strict_places = [
    place(1, 2, 0, 2, 3),
    place(2, 1, 1, 0),
    place(2, 3, 1, 0.5),
    place(3, 2, 0, 0.5),
    place(3, 3, 1, 0, 4),
    place(1, 3, 1, 6),
]
write("heat_treatment_strict.json", {
    "n": 3, "events": ["t1", "t2", "t3"],
    "pteg": {"mode": "A", "places": strict_places},
    "strict": {"rho": {"1,2": 0.5, "3,2": 0.5, "3,3": 1, "3,1": 3}},
})

ht_A1 = {(0, 1): 0, (1, 2): 0.5, (2, 2): 0}
write("heat_treatment_ab.json", {
    "n": 3, "events": ["t1", "t2", "t3"],
    "modes": {
        "A": mode(3, A0={(1, 0): 2, (2, 0): 6, (2, 1): 0.5}, A1=ht_A1, B0={(1, 0): 3}, B1={(2, 2): 4}),
        "B": mode(3, A0={(1, 0): 3, (2, 0): 6, (2, 1): 0.5}, A1=ht_A1, B0={(1, 0): 4}, B1={(2, 2): 5}),
    },
})

# ---- strict P-TEG admitting no 1-periodic trajectory -----------------------

write("strict_infeasible.json", {
    "n": 3,
    "pteg": {"mode": "A", "places": [
        place(1, 1, 1, 10, 10),
        place(1, 2, 1, 0),
        place(2, 1, 1, 0),
        place(2, 3, 1, 10, 10),
        place(3, 2, 1, 10, 10),
    ]},
    "strict": {"rho": {"1,1": 10, "2,1": 0, "1,2": 0, "3,2": 9, "2,3": 10}},
})

# ---- two-transition P-TEG with parameters alpha, beta ---------------------

ab = {"A": (2, 1), "B": (1, 2), "C": (1, 1)}
write("three_mode.json", {
    "n": 2,
    "modes": {z: mode(2, A0={(1, 0): 0}, A1={(0, 0): a, (1, 1): b}, B1={(0, 0): a, (1, 1): b})
              for z, (a, b) in ab.items()},
})

# ---- starving philosophers ------------------------------------------------

c = {(1, 1): 2, (1, 2): 3, (2, 2): 1, (2, 3): 1, (3, 3): 1, (3, 4): 1, (4, 4): 2, (4, 1): 3}
e = {1: 1, 2: 2, 3: 1, 4: 1}
s = {1: 10, 2: 10, 3: 15, 4: 12}
p = 4
nxt = lambda i: i % p + 1
prv = lambda i: (i - 2) % p + 1
x = lambda i: i - 1  # philosopher i -> 0-based event index; event 5 is index 4

phil = {}
phil["init"] = mode(
    5,
    A0={(i, j): 0 for i in range(5) for j in range(5)},
    B0={(i, j): 0 for i in range(5) for j in range(5)},
    A1={(0, 1): c[1, 2], (0, 3): c[1, 1], (1, 0): c[2, 2], (1, 2): c[2, 3],
        (2, 1): c[3, 3], (2, 3): c[3, 4], (3, 0): c[4, 1], (3, 2): c[4, 4]},
    B1={(x(i), 4): s[i] for i in range(1, 5)},
)
for i in range(1, 5):
    A1 = {(x(j), x(j)): 0 for j in range(1, 5)}
    A1[x(i), 4] = max(c[i, i], c[i, nxt(i)])
    A1[x(nxt(i)), 4] = c[nxt(i), nxt(i)]
    A1[x(prv(i)), 4] = c[prv(i), i]
    B1 = {(x(j), x(j)): 0 for j in range(1, 5) if j != i}
    B1[x(i), 4] = s[i]
    phil[f"P{i}"] = mode(5, A0={(4, x(i)): e[i]}, A1=A1, B0={}, B1=B1)
write("philosophers.json", {"n": 5, "events": ["x1", "x2", "x3", "x4", "finish"], "modes": phil})

# ---- robotic job shop -----------------------------------------------------

EV = ["0", "1in", "1out", "2in", "2out", "3in", "3out", "4in", "4out", "5in", "5out", "6"]
ix = {name: k for k, name in enumerate(EV)}
N = len(EV)


def js(A0=(), B0=(), A1=(), B1=(), carry=()):
    a0 = {(ix[i], ix[j]): v for i, j, v in A0}
    b0 = {(ix[i], ix[j]): v for i, j, v in B0}
    a1 = {(ix[i], ix[j]): v for i, j, v in A1}
    b1 = {(ix[i], ix[j]): v for i, j, v in B1}
    for ev in carry:
        a1[ix[ev], ix[ev]] = 0
        b1[ix[ev], ix[ev]] = 0
    return mode(N, A0=a0, A1=a1, B0=b0, B1=b1)


A_A0 = [("1in", "0", 2), ("1out", "1in", 10), ("3in", "1out", 3), ("5in", "3out", 3), ("5out", "5in", 20),
        ("6", "5out", 2), ("0", "5in", 5), ("5out", "1in", 4), ("1out", "6", 5)]
A_B0 = [("1out", "1in", 15), ("5out", "5in", 30)]
B_A0 = [("2in", "0", 4), ("1in", "2out", 3), ("1out", "1in", 10), ("4in", "1out", 5), ("5in", "4out", 3),
        ("5out", "5in", 20), ("6", "5out", 3), ("2out", "5in", 3), ("1out", "2in", 1), ("5out", "1in", 4), ("0", "6", 6)]
B_B0 = [("1out", "1in", 20), ("5out", "5in", 30)]

jobshop = {
    "A": js(A0=A_A0, B0=A_B0, A1=[("3out", "3in", 40), ("4out", "3in", 1)], B1=[("3out", "3in", 140)],
            carry=["2in", "2out", "4in", "4out"]),
    "B": js(A0=B_A0, B0=B_B0, A1=[("2out", "2in", 50), ("4out", "4in", 30), ("3out", "4in", 1)],
            B1=[("2out", "2in", 150), ("4out", "4in", 150)], carry=["3in", "3out"]),
    "iB1": js(A0=[("2in", "0", 4), ("2out", "2in", 50), ("1in", "2out", 3)], B0=[("2out", "2in", 150)],
              A1=[("1out", "1in", 10), ("0", "1in", 1)], B1=[("1out", "1in", 20)]),
    "iB2": js(A0=[("2in", "0", 4), ("1out", "2in", 1), ("4in", "1out", 5)],
              A1=[("2out", "2in", 50), ("4out", "4in", 30), ("0", "4in", 4)],
              B1=[("2out", "2in", 150), ("4out", "4in", 150)]),
    "iA": js(A0=[("1in", "0", 2), ("1out", "1in", 10), ("3in", "1out", 3)], B0=[("1out", "1in", 15)],
             A1=[("3out", "3in", 40), ("4out", "3in", 1)], B1=[("3out", "3in", 140)],
             carry=["2in", "2out", "4in", "4out"]),
    "fB1": js(A0=[("5in", "4out", 3), ("2out", "5in", 3), ("1in", "2out", 3), ("5out", "1in", 4), ("5out", "5in", 20),
                  ("6", "5out", 3), ("1out", "6", 5), ("1out", "1in", 10), ("4in", "1out", 5)],
              B0=[("5out", "5in", 30), ("1out", "1in", 20)],
              A1=[("4out", "4in", 30), ("3out", "4in", 1)], B1=[("4out", "4in", 150)], carry=["3in", "3out"]),
    "fA": js(A0=[("5in", "3out", 3), ("5out", "5in", 20), ("6", "5out", 2)], B0=[("5out", "5in", 30)],
             A1=[("4out", "6", 2)], carry=["4in", "4out"]),
    "fB2": js(A0=[("5in", "4out", 3), ("5out", "5in", 20), ("6", "5out", 3)], B0=[("5out", "5in", 30)]),
}
write("jobshop.json", {"n": N, "events": EV, "modes": jobshop})

# Single-product P-TEGs: the robot returns to the station it started from.
write("jobshop_a.json", {"n": N, "events": EV, "modes": {
    "A": js(A0=A_A0, B0=A_B0, A1=[("3out", "3in", 40)], B1=[("3out", "3in", 140)])}})
write("jobshop_b.json", {"n": N, "events": EV, "modes": {
    "B": js(A0=B_A0, B0=B_B0, A1=[("2out", "2in", 50), ("4out", "4in", 30)], B1=[("2out", "2in", 150), ("4out", "4in", 150)])}})
