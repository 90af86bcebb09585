#!/usr/bin/env python3
"""Writes data/golden/*.json from the published listings.

Entries are transcribed term by term (e_ik (x) e_jl -> R_ijkl) with no
reference to the C++ engine. Values are polynomials in h.
"""
import json
import sys
from collections import defaultdict
from fractions import Fraction
from pathlib import Path


def poly_str(p):
    terms = []
    for e in sorted(p, reverse=True):
        c = p[e]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if e == 0 else ("h" if e == 1 else f"h^{e}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, b in terms[1:]:
        out += f" {s} {b}"
    return out


class Listing:
    def __init__(self, n):
        self.n = n
        self.e = defaultdict(lambda: defaultdict(Fraction))

    def unit(self, i, k, j, l, c, hp=0):
        """c h^hp e_ik (x) e_jl"""
        self.e[(i, j, k, l)][hp] += Fraction(c)

    def diag(self):
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                self.unit(i, i, j, j, 1)

    def doc(self, ident, desc):
        entries = []
        for key in sorted(self.e):
            s = poly_str(self.e[key])
            if s != "0":
                entries.append({"row": [key[0], key[1]], "col": [key[2], key[3]], "value": s})
        return {"id": ident, "description": desc, "N": self.n, "entries": entries}


def set_entries(lst, table):
    """table: R_ijkl -> (coeff, hpow) written directly in R index form."""
    lst.diag()
    for (i, j, k, l), (c, hp) in table.items():
        lst.e[(i, j, k, l)][hp] += Fraction(c)


def gl3_alpha():
    L = Listing(3)
    set_entries(L, {(1, 1, 2, 1): (1, 1), (2, 1, 2, 2): (1, 1), (1, 1, 1, 2): (-1, 1),
                    (1, 2, 2, 2): (-1, 1), (1, 1, 2, 2): (1, 2)})
    return L.doc("gl3_alpha", "GL_h(3), singular entry in position (1,2), beta = 0")


def gl3_beta():
    L = Listing(3)
    set_entries(L, {(1, 1, 1, 3): (-1, 1), (1, 3, 3, 3): (-1, 1), (1, 1, 3, 1): (1, 1),
                    (3, 1, 3, 3): (1, 1), (2, 1, 3, 2): (2, 1), (1, 2, 2, 3): (-2, 1),
                    (1, 1, 3, 3): (1, 2)})
    return L.doc("gl3_beta", "GL_h(3), singular entry in position (1,3), alpha = gamma = 0, as printed")


def gln(N):
    L = Listing(N)
    L.diag()
    for i in range(2, N):
        L.unit(1, i, i, N, 2, 1)
        L.unit(i, N, 1, i, -2, 1)
    L.unit(1, N, N, N, -1, 1)
    L.unit(N, N, 1, N, 1, 1)
    L.unit(1, 1, 1, N, -1, 1)
    L.unit(1, N, 1, 1, 1, 1)
    L.unit(1, N, 1, N, 1, 2)
    return L.doc(f"gln_{N}", f"GL_h({N}) from the (1,N) singular map, as printed")


def sp2n(n):
    N = 2 * n
    eps = lambda i: 1 if i <= n else -1
    mirror = lambda i: N + 1 - i
    L = Listing(N)
    L.diag()
    L.unit(1, N, 1, N, 2 * N, 2)
    for i in range(2, N + 1):
        L.unit(1, i, i, N, -2, 1)
        L.unit(i, N, mirror(i), N, -2 * eps(i), 1)
    for i in range(1, N):
        L.unit(i, N, 1, i, 2, 1)
        L.unit(1, i, 1, mirror(i), -2 * eps(i), 1)
    return L.doc(f"sp2n_{n}", f"SP_h({N}) R-matrix")


def spform(n):
    N = 2 * n
    entries = defaultdict(lambda: defaultdict(Fraction))
    for i in range(1, N + 1):
        entries[(i, N + 1 - i)][0] += 1 if i <= n else -1
    entries[(N, N)][1] += -N
    out = [{"row": r, "col": c, "value": poly_str(entries[(r, c)])} for (r, c) in sorted(entries)]
    return {"id": f"spform_{n}", "description": f"invariant bilinear form of SP_h({N})", "N": N, "entries": out}


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "golden")
    out.mkdir(parents=True, exist_ok=True)
    docs = [gl3_alpha(), gl3_beta()] + [gln(N) for N in range(3, 7)] + [sp2n(n) for n in (1, 2, 3)] + \
        [spform(n) for n in (1, 2, 3)]
    for d in docs:
        head = {k: d[k] for k in ("id", "description", "N")}
        lines = [json.dumps(e) for e in d["entries"]]
        text = json.dumps(head, indent=1)[:-2] + ',\n "entries": [\n  ' + ",\n  ".join(lines) + "\n ]\n}\n"
        (out / f"{d['id']}.json").write_text(text)


if __name__ == "__main__":
    main()
