"""Regenerate the embedding fixture database.

Every fixture is rebuilt from scratch, verified (bracket preservation,
injectivity, Cartan containment), and written to src/realforms/data/ and
to the top-level fixtures/ directory.  Run from the repository root:

    PYTHONPATH=src python3 tools/gen_fixtures.py
"""

import json
import sys
from pathlib import Path

from realforms.algebra import LieAlgebra, scalar_vector
from realforms.forms import inner_involution, real_form_from_involution
from realforms.pipeline import Embedding, is_balanced
from realforms.scalars import C_ZERO, ComplexScalar, FieldScalar

ROOT = Path(__file__).resolve().parent.parent
OUT_DIRS = [ROOT / "src" / "realforms" / "data", ROOT / "fixtures"]


def write(name: str, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    for d in OUT_DIRS:
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(text)
    print(f"wrote {name}")


def vec(alg, entries: dict) -> list:
    v = [C_ZERO] * alg.dim
    for k, c in entries.items():
        v[k] = c if isinstance(c, ComplexScalar) else ComplexScalar(c)
    return v


def check(eps: Embedding, name: str) -> Embedding:
    eps.verify()
    bal, _ = is_balanced(eps)
    print(f"  {name}: verified, balanced={bal}")
    return eps


def regular_embedding(src_name, tgt, betas) -> Embedding:
    """Subalgebra generated by root vectors of pairwise-compatible roots."""
    src = LieAlgebra.build(src_name)
    xs, ys, gs = [], [], []
    for beta in betas:
        i = tgt.rs.root_index[beta]
        x = tgt.basis_vector(tgt.rank + i)
        y = tgt.basis_vector(tgt.rank + tgt.rs.npos + i)
        xs.append(x)
        ys.append(y)
        gs.append(tgt.bracket(x, y))
    return Embedding(src, tgt, gs, xs, ys)


def gen_a2_in_a3():
    tgt = LieAlgebra.build("A3")
    g, x, y = tgt.canonical_generators()
    eps = Embedding(LieAlgebra.build("A2"), tgt, g[:2], x[:2], y[:2])
    write("a2_in_a3.json", check(eps, "a2_in_a3").to_json_dict())


def gen_principal_sl2_in_a2():
    tgt = LieAlgebra.build("A2")
    r2 = ComplexScalar(FieldScalar.parse("sqrt(2)"))
    i1 = tgt.rank + tgt.rs.root_index[(1, 0)]
    i2 = tgt.rank + tgt.rs.root_index[(0, 1)]
    eps = Embedding(
        LieAlgebra.build("A1"),
        tgt,
        [vec(tgt, {0: ComplexScalar(2), 1: ComplexScalar(2)})],
        [vec(tgt, {i1: r2, i2: r2})],
        [vec(tgt, {i1 + tgt.rs.npos: r2, i2 + tgt.rs.npos: r2})],
    )
    write("principal_sl2_in_a2.json", check(eps, "principal_sl2_in_a2").to_json_dict())


def gen_principal_sl2_in_g2():
    tgt = LieAlgebra.build("G2")
    r6 = ComplexScalar(FieldScalar.parse("sqrt(6)"))
    r10 = ComplexScalar(FieldScalar.parse("sqrt(10)"))
    i1 = tgt.rank + tgt.rs.root_index[(1, 0)]
    i2 = tgt.rank + tgt.rs.root_index[(0, 1)]
    eps = Embedding(
        LieAlgebra.build("A1"),
        tgt,
        [vec(tgt, {0: ComplexScalar(6), 1: ComplexScalar(10)})],
        [vec(tgt, {i1: r6, i2: r10})],
        [vec(tgt, {i1 + tgt.rs.npos: r6, i2 + tgt.rs.npos: r10})],
    )
    write("principal_sl2_in_g2.json", check(eps, "principal_sl2_in_g2").to_json_dict())


def orthogonal_pair(rs):
    """First pair of positive roots whose sum and difference are not roots."""
    pos = rs.roots[: rs.npos]
    for i, a in enumerate(pos):
        for b in pos[i + 1 :]:
            s = rs.add(a, b)
            d = rs.add(a, rs._neg(b))
            if s not in rs.root_index and d not in rs.root_index:
                return a, b
    raise RuntimeError("no orthogonal pair")


def gen_a1a1_in_b2():
    tgt = LieAlgebra.build("B2")
    a, b = orthogonal_pair(tgt.rs)
    eps = regular_embedding("A1+A1", tgt, [a, b])
    print(f"  roots used: {a}, {b}")
    write("a1a1_in_b2.json", check(eps, "a1a1_in_b2").to_json_dict())


def gen_a1a1_in_a3():
    tgt = LieAlgebra.build("A3")
    a, b = orthogonal_pair(tgt.rs)
    eps = regular_embedding("A1+A1", tgt, [a, b])
    print(f"  roots used: {a}, {b}")
    write("a1a1_in_a3.json", check(eps, "a1a1_in_a3").to_json_dict())


def _branches(cartan):
    """Dynkin-diagram branches around the unique degree-3 node."""
    n = len(cartan)
    adj = {i: [j for j in range(n) if j != i and cartan[i][j]] for i in range(n)}
    center = next(i for i in range(n) if len(adj[i]) == 3)
    branches = []
    for first in sorted(adj[center]):
        path = [first]
        prev = center
        while True:
            nxt = [j for j in adj[path[-1]] if j != prev]
            if not nxt:
                break
            prev = path[-1]
            path.append(nxt[0])
        branches.append(path)
    return center, branches


def gen_b4_in_e6():
    tgt = LieAlgebra.build("E6")
    cart = [[tgt.rs.cartan[i][j] for j in range(6)] for i in range(6)]
    center, branches = _branches(cart)
    short = next(b for b in branches if len(b) == 1)
    longs = sorted(b for b in branches if len(b) == 2)
    # D5 inside E6: drop the far node of one length-2 branch; the kept
    # branch provides the chain, the fork is folded into the short B4 node.
    chain = [longs[0][1], longs[0][0], center]
    fork = [short[0], longs[1][0]]
    print(f"  chain nodes {chain}, folded pair {fork}")

    def simple(i):
        root = tuple(1 if j == i else 0 for j in range(tgt.rank))
        x = tgt.basis_vector(tgt.rank + tgt.rs.root_index[root])
        y = tgt.basis_vector(tgt.rank + tgt.rs.npos + tgt.rs.root_index[root])
        return x, y

    def addv(u, v):
        return [a + b for a, b in zip(u, v)]

    xs, ys, gs = [], [], []
    for i in chain:
        x, y = simple(i)
        xs.append(x)
        ys.append(y)
        gs.append(tgt.bracket(x, y))
    xa, ya = simple(fork[0])
    xb, yb = simple(fork[1])
    xs.append(addv(xa, xb))
    ys.append(addv(ya, yb))
    gs.append(tgt.bracket(addv(xa, xb), addv(ya, yb)))

    last_err = None
    for order in (list(range(4)), list(reversed(range(4)))):
        try:
            eps = Embedding(
                LieAlgebra.build("B4"),
                tgt,
                [gs[i] for i in order],
                [xs[i] for i in order],
                [ys[i] for i in order],
            )
            eps.verify()
        except Exception as e:  # try the other node order
            last_err = e
            continue
        print(f"  node order {order}")
        write("b4_in_e6.json", check(eps, "b4_in_e6").to_json_dict())
        return
    raise RuntimeError(f"no B4 node order verified: {last_err}")


def gen_thetas():
    write("theta_split.json", {"kind": "split"})
    b4 = LieAlgebra.build("B4")
    for idx in range(4):
        theta = inner_involution(b4, idx)
        report, _, _ = real_form_from_involution(b4, theta)
        print(f"  B4 inner:{idx} -> dim k = {report.dim_k} ({report.type_name})")
        if report.dim_k == 16:
            write("theta_b4_so45.json", {"kind": f"inner:{idx}"})
            return
    raise RuntimeError("no inner involution of B4 with dim k = 16")


def gen_published_gbs():
    write(
        "e6_b4_gb.json",
        {
            "variables": [f"x{i}" for i in range(1, 8)] + [f"y{i}" for i in range(1, 8)],
            "basis": [
                "x5^2-x7", "x5*x6", "x6^2+y6^2+x7-1", "x5*x7-x5", "x6*x7",
                "x7^2-x7", "x5*y6", "x7*y6", "x1+x5", "x2+x6", "x3+1",
                "x4+x7", "y1", "y2-y6", "y3", "y4", "y5", "y7",
            ],
        },
    )
    write(
        "e8_a1g2g2_gb.json",
        {
            "variables": [f"x{i}" for i in range(1, 7)] + [f"y{i}" for i in range(1, 7)],
            "basis": [
                "x1+1", "x2", "x3-1", "x4+1", "x5-1", "x6+1",
                "y1", "y2", "y3", "y4", "y5", "y6",
            ],
        },
    )


def main():
    gen_a2_in_a3()
    gen_principal_sl2_in_a2()
    gen_principal_sl2_in_g2()
    gen_a1a1_in_b2()
    gen_a1a1_in_a3()
    gen_b4_in_e6()
    gen_thetas()
    gen_published_gbs()
    print("done")


if __name__ == "__main__":
    sys.exit(main())
