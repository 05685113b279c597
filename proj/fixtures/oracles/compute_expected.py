#!/usr/bin/env python3
"""Regenerates fixtures/expected/*.json from the bundled fixture models.

Shares no code with the C++ library. Verdicts come from brute force over
global assignments, fractions from scipy's HiGHS LP (snapped to small
denominators and re-checked exactly), and integer solvability plus
invariants from sympy's Smith normal form via determinantal divisors.

    python3 fixtures/oracles/compute_expected.py
"""

import hashlib
import itertools
import json
import pathlib
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

HERE = pathlib.Path(__file__).resolve().parent
FIXTURES = HERE.parent
NAMES = ["prbox", "bell_uniform", "triangle_anticorrelated", "deterministic", "signalling"]

PROPOSITIONS = {
    "triangle_anticorrelated": ["(x=0 & y=0) | (x=1 & y=1)", "x=0 | !x=0", "x=0 -> y=1"],
    "prbox": ["a1=0 & b1=0", "(a2=0 & b2=1) | (a2=1 & b2=0)"],
    "deterministic": ["a1=0 & b1=1", "a2=1 -> b2=0"],
    "bell_uniform": ["a1=0"],
}


def load(name):
    raw = (FIXTURES / f"{name}.json").read_bytes()
    doc = json.loads(raw)
    sc = doc["scenario"]
    ids = [o["id"] for o in sc["observables"]]
    arity = {o["id"]: o["arity"] for o in sc["observables"]}
    cover = [sorted(c, key=ids.index) for c in sc["cover"]]
    tables = []
    for ctx in cover:
        (t,) = [t for t in doc["tables"] if sorted(t["context"]) == sorted(ctx)]
        table = {}
        for sec in itertools.product(*[range(arity[o]) for o in ctx]):
            table[sec] = Fraction(0)
        for key, p in t["probs"].items():
            listed = dict(zip(t["context"], (int(ch) for ch in key)))
            table[tuple(listed[o] for o in ctx)] = Fraction(p)
        tables.append(table)
    return raw, ids, arity, cover, tables


def marginal(ctx, table, sub):
    out = {}
    for sec, p in table.items():
        key = tuple(sec[ctx.index(o)] for o in sub)
        out[key] = out.get(key, Fraction(0)) + p
    return out


def compatibility(ids, cover, tables):
    violations = []
    for i, j in itertools.combinations(range(len(cover)), 2):
        sub = [o for o in ids if o in cover[i] and o in cover[j]]
        if not sub:
            continue
        mi, mj = marginal(cover[i], tables[i], sub), marginal(cover[j], tables[j], sub)
        worst = max(abs(mi[k] - mj[k]) for k in mi)
        if worst != 0:
            violations.append({"contexts": [cover[i], cover[j]], "overlap": sub, "discrepancy": str(worst)})
    return violations


def globals_of(ids, arity):
    for values in itertools.product(*[range(arity[o]) for o in ids]):
        yield dict(zip(ids, values))


def restrict(g, ctx):
    return tuple(g[o] for o in ctx)


def gluing(ids, arity, cover, supports):
    glued = [g for g in globals_of(ids, arity) if all(restrict(g, c) in s for c, s in zip(cover, supports))]
    strongly = not glued
    extendable = {(i, restrict(g, c)) for g in glued for i, c in enumerate(cover)}
    logically = any((i, s) not in extendable for i, sup in enumerate(supports) for s in sup)
    return strongly, logically, len(glued) == 1


def snap(x):
    return Fraction(x).limit_denominator(10**6)


def lp_oracle(ids, arity, cover, tables):
    gl = list(globals_of(ids, arity))
    rows = [(i, sec) for i, t in enumerate(tables) for sec in sorted(t)]
    a = np.array([[1.0 if restrict(g, cover[i]) == sec else 0.0 for g in gl] for i, sec in rows])
    p = [tables[i][sec] for i, sec in rows]
    pf = np.array([float(v) for v in p])

    feas = linprog(np.zeros(len(gl)), A_eq=a, b_eq=pf, bounds=[(0, None)] * len(gl), method="highs")
    frac = linprog(-np.ones(len(gl)), A_ub=a, b_ub=pf, bounds=[(0, None)] * len(gl), method="highs")
    weights = [snap(v) for v in frac.x]
    # The snapped optimum must be exactly feasible.
    for r, (i, sec) in enumerate(rows):
        assert sum(w for w, g in zip(weights, gl) if restrict(g, cover[i]) == sec) <= p[r]
    value = sum(weights)
    if feas.status == 0:
        assert value == 1
    return feas.status == 0, 1 - value


def support_sets(tables):
    return [{sec for sec, p in t.items() if p > 0} for t in tables]


def restricted_support(cover, supports, sub):
    out = set()
    for ctx, sup in zip(cover, supports):
        if all(o in ctx for o in sub):
            out |= {tuple(s[ctx.index(o)] for o in sub) for s in sup}
    return sorted(out)


def coboundaries(ids, cover, supports):
    n = len(cover)
    edges = [(i, j, [o for o in ids if o in cover[i] and o in cover[j]]) for i, j in itertools.combinations(range(n), 2)]
    edges = [e for e in edges if e[2]]
    tris = [(i, j, k, [o for o in ids if o in cover[i] and o in cover[j] and o in cover[k]])
            for i, j, k in itertools.combinations(range(n), 3)]
    tris = [t for t in tris if t[3]]
    vbasis = [sorted(s) for s in supports]
    ebasis = [restricted_support(cover, supports, e[2]) for e in edges]
    tbasis = [restricted_support(cover, supports, t[3]) for t in tris]
    vcols = [(i, s) for i, b in enumerate(vbasis) for s in b]
    erows = [(e, s) for e, b in enumerate(ebasis) for s in b]
    trows = [(t, s) for t, b in enumerate(tbasis) for s in b]

    d0 = [[0] * len(vcols) for _ in erows]
    for c, (i, s) in enumerate(vcols):
        for r, (e, t) in enumerate(erows):
            a, b, sub = edges[e]
            if i in (a, b) and tuple(s[cover[i].index(o)] for o in sub) == t:
                d0[r][c] += 1 if i == b else -1

    d1 = [[0] * len(erows) for _ in trows]
    edge_of = {(a, b): e for e, (a, b, _) in enumerate(edges)}
    for c, (e, s) in enumerate(erows):
        for r, (t, u) in enumerate(trows):
            i, j, k, sub = tris[t]
            sign = {edge_of[(j, k)]: 1, edge_of[(i, k)]: -1, edge_of[(i, j)]: 1}.get(e)
            if sign is not None and tuple(s[edges[e][2].index(o)] for o in sub) == u:
                d1[r][c] += sign
    return vcols, Matrix(len(erows), len(vcols), lambda r, c: d0[r][c]), Matrix(len(trows), len(erows), lambda r, c: d1[r][c])


def invariant_factors(m):
    if m.rows == 0 or m.cols == 0:
        return []
    d = smith_normal_form(m, domain=ZZ)
    return [abs(d[k, k]) for k in range(min(d.rows, d.cols)) if d[k, k] != 0]


def integer_solvable(a, b):
    """A y = b over Z iff A and [A|b] share rank and the product of invariant factors."""
    aug = a.row_join(b)
    fa, fb = invariant_factors(a), invariant_factors(aug)
    prod = lambda xs: int(np.prod([int(x) for x in xs])) if xs else 1
    return len(fa) == len(fb) and prod(fa) == prod(fb)


def cohomology(ids, cover, supports):
    vcols, d0, d1 = coboundaries(ids, cover, supports)
    assert (d1 * d0).is_zero_matrix
    sections = []
    for c, (i, s) in enumerate(vcols):
        others = [k for k, (j, _) in enumerate(vcols) if j != i]
        if d0.rows == 0:
            vanishes = True
        else:
            a = d0.extract(list(range(d0.rows)), others) if others else Matrix.zeros(d0.rows, 0)
            b = -d0[:, c]
            vanishes = b.is_zero_matrix if a.cols == 0 else integer_solvable(a, b)
        sections.append({"context": cover[i], "section": "".join(map(str, s)), "vanishes": vanishes})
    r0 = d0.rank() if d0.rows and d0.cols else 0
    r1 = d1.rank() if d1.rows and d1.cols else 0
    n0, n1 = len(vcols), d0.rows
    # ker D1 is saturated in Z^n1, so the torsion of ker D1 / im D0 is that of Z^n1 / im D0.
    torsion = [int(f) for f in invariant_factors(d0) if f > 1]
    return {"sections": sections, "h0_rank": n0 - r0, "h1_rank": (n1 - r1) - r0, "h1_torsion": torsion}


def parse_prop(text, ids):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif text.startswith("->", i):
            tokens.append("->"); i += 2
        elif ch in "()&|!=":
            tokens.append(ch); i += 1
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_."):
                j += 1
            tokens.append(text[i:j]); i = j
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        pos[0] += 1
        return tokens[pos[0] - 1]

    def implies():
        left = disj()
        if peek() == "->":
            take()
            return ("->", left, implies())
        return left

    def disj():
        left = conj()
        while peek() == "|":
            take(); left = ("|", left, conj())
        return left

    def conj():
        left = unary()
        while peek() == "&":
            take(); left = ("&", left, unary())
        return left

    def unary():
        if peek() == "!":
            take(); return ("!", unary())
        if peek() == "(":
            take(); e = implies(); assert take() == ")"; return e
        name = take(); assert take() == "="; value = int(take())
        assert name in ids
        return ("atom", name, value)

    tree = implies()
    assert pos[0] == len(tokens)
    return tree


F, U, T = 0, 1, 2


def value(tree, assignment):
    op = tree[0]
    if op == "atom":
        return U if tree[1] not in assignment else (T if assignment[tree[1]] == tree[2] else F)
    if op == "!":
        a = value(tree[1], assignment)
        return T if a <= F else F
    a, b = value(tree[1], assignment), value(tree[2], assignment)
    if op == "&":
        return min(a, b)
    if op == "|":
        return max(a, b)
    return T if a <= b else b


MODES = {frozenset("T"): "i", frozenset("F"): "ii", frozenset("U"): "iii", frozenset("TF"): "iv",
         frozenset("TU"): "v", frozenset("FU"): "vi", frozenset("TFU"): "vii"}


def logic(ids, cover, supports, text):
    tree = parse_prop(text, ids)
    profile = []
    for ctx, sup in zip(cover, supports):
        vals = {value(tree, dict(zip(ctx, s))) for s in sup}
        profile.append("T" if vals == {T} else "F" if vals == {F} else "U")
    return {"proposition": text, "profile": profile, "mode": MODES[frozenset(profile)]}


def expected(name):
    raw, ids, arity, cover, tables = load(name)
    out = {"fixture": name, "sha256": hashlib.sha256(raw).hexdigest()}
    violations = compatibility(ids, cover, tables)
    out["compatible"] = not violations
    if violations:
        out["violations"] = violations
        out["exit_code"] = 2
        return out
    supports = support_sets(tables)
    strongly, logically, unique = gluing(ids, arity, cover, supports)
    noncontextual, cf = lp_oracle(ids, arity, cover, tables)
    assert noncontextual == (cf == 0)
    out.update({
        "noncontextual": noncontextual,
        "logically_contextual": logically,
        "strongly_contextual": strongly,
        "unique_global_section": unique,
        "contextual_fraction": f"{cf.numerator}/{cf.denominator}",
        "exit_code": 0 if noncontextual else 10,
        "cohomology": cohomology(ids, cover, supports),
        "logic": [logic(ids, cover, supports, p) for p in PROPOSITIONS.get(name, [])],
    })
    return out


def main():
    for name in NAMES:
        path = FIXTURES / "expected" / f"{name}.json"
        path.write_text(json.dumps(expected(name), indent=2) + "\n")
        print("wrote", path.relative_to(FIXTURES.parent))


if __name__ == "__main__":
    main()
