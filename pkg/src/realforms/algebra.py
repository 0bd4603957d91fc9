"""Semisimple Lie algebras over exact scalars, in Chevalley bases.

Basis order: h_1..h_l (coroots of the simple roots), then one root vector
per root in canonical root order (positives by height-then-lex, then the
negatives in matching order).  All structure constants are integers:

    [h_i, h_j] = 0
    [h_i, x_b] = <b, alpha_i^vee> x_b
    [x_b, x_-b] = h_b              (an integer combination of the h_i)
    [x_a, x_b] = N_{a,b} x_{a+b}   when a+b is a root

Signs of the N are pinned by choosing N > 0 on extraspecial pairs: for
each positive non-simple gamma the special pair (a, b), a < b, a + b =
gamma with minimal a gets N_{a,b} = r + 1 where r is the length of the
descending a-string through b.  Every other constant follows from the
Jacobi identity, antisymmetry, N_{-a,-b} = -N_{a,b}, and the cyclic rule
N_{a,b} (b,b)^-1 = N_{c,a} (c,c)^-1 for a + b + c = 0.  The result is
integral and the construction verifies it (string lengths, antisymmetry,
Jacobi) before returning.
"""

from __future__ import annotations

import itertools
import random

from ._backend import Rational
from .errors import ContractViolation
from .linalg import SpMat, trace_product
from .roots import RootSystem, cartan_matrix, detect_type
from .scalars import ComplexScalar, FieldScalar


def _pos_constants(rs: RootSystem) -> dict:
    """N_{a,b} for ordered positive pairs (a < b, a+b a positive root)."""
    order = rs.positive_index
    table: dict[tuple, int] = {}

    def resolve(a, b) -> Rational:
        sa, sb = sum(a) > 0, sum(b) > 0
        if sa and sb:
            if (a, b) in table:
                return Rational(table[(a, b)])
            return Rational(-table[(b, a)])
        if not sa and not sb:
            return -resolve(rs._neg(a), rs._neg(b))
        if not sa:
            return -resolve(b, a)
        # a positive, b negative
        delta = rs.add(a, b)
        if sum(delta) > 0:
            return -(rs.length_sq(delta) / rs.length_sq(a)) * resolve(rs._neg(b), delta)
        return -(rs.length_sq(delta) / rs.length_sq(b)) * resolve(a, rs._neg(delta))

    for gamma in rs.positive:
        if sum(gamma) < 2:
            continue
        pairs = []
        for a in rs.positive:
            if order[a] >= order[gamma]:
                break
            b = rs.sub(gamma, a)
            if b in order and order[a] < order[b]:
                pairs.append((a, b))
        pairs.sort(key=lambda p: order[p[0]])
        a0, b0 = pairs[0]
        r, _ = rs.root_string(b0, a0)
        n0 = r + 1
        table[(a0, b0)] = n0
        glen = rs.length_sq(gamma)
        for xi, eta in pairs[1:]:
            acc = Rational(0)
            t = rs.sub(b0, xi)
            if t in rs.root_index:
                acc += resolve(b0, rs._neg(xi)) * resolve(t, a0)
            t = rs.sub(a0, xi)
            if t in rs.root_index:
                acc += resolve(rs._neg(xi), a0) * resolve(t, b0)
            val = (glen / rs.length_sq(eta)) * acc / n0
            if val.denominator != 1:
                raise ContractViolation(f"non-integral structure constant at {gamma}")
            table[(xi, eta)] = int(val.numerator)
    return table


class LieAlgebra:
    """A semisimple Lie algebra with integer structure constants."""

    def __init__(self, rs: RootSystem, table: dict, labels: list[str]):
        self.rs = rs
        self.rank = rs.rank
        self.dim = rs.rank + len(rs.roots)
        self.table = table  # {(i, j): {k: int}} for i < j
        self.labels = labels
        self._ad: list[dict[int, dict[int, int]]] | None = None
        self._ad_mats: list[SpMat] | None = None
        self._gram: list[list] | None = None

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, cartan_or_name, verify: str = "auto") -> "LieAlgebra":
        """Construct from a type name or Cartan matrix.

        verify: 'auto' checks every Jacobi triple up to rank 4 and a fixed
        pseudorandom sample above; 'full' always checks every triple;
        'none' skips the Jacobi sweep (string-length and antisymmetry
        checks still run).
        """
        if verify not in ("auto", "full", "none"):
            raise ValueError(f"unknown verify mode {verify!r}")
        if isinstance(cartan_or_name, str):
            rs = RootSystem(cartan_matrix(cartan_or_name))
        else:
            rs = RootSystem(cartan_or_name)
        npos = rs.npos
        rank = rs.rank
        pos_n = _pos_constants(rs)

        def nres(a, b) -> int:
            sa, sb = sum(a) > 0, sum(b) > 0
            if sa and sb:
                return pos_n[(a, b)] if (a, b) in pos_n else -pos_n[(b, a)]
            if not sa and not sb:
                return -nres(rs._neg(a), rs._neg(b))
            if not sa:
                return -nres(b, a)
            delta = rs.add(a, b)
            if sum(delta) > 0:
                v = -(rs.length_sq(delta) / rs.length_sq(a)) * nres(rs._neg(b), delta)
            else:
                v = -(rs.length_sq(delta) / rs.length_sq(b)) * nres(a, rs._neg(delta))
            if v.denominator != 1:
                raise ContractViolation("non-integral structure constant")
            return int(v.numerator)

        table: dict[tuple, dict[int, int]] = {}
        for i, beta in enumerate(rs.roots):
            bi = rank + i
            for t in range(rank):
                c = rs.pairing(beta, t)
                if c:
                    table.setdefault((t, bi), {})[bi] = c
        for i, a in enumerate(rs.roots):
            for j in range(i + 1, len(rs.roots)):
                b = rs.roots[j]
                s = rs.add(a, b)
                if not any(s):
                    blen = rs.length_sq(a)
                    entry = {}
                    for t in range(rank):
                        if not a[t]:
                            continue
                        coeff = Rational(a[t]) * rs.d[t] * 2 / blen
                        if coeff.denominator != 1:
                            raise ContractViolation("coroot is not integral")
                        entry[t] = int(coeff.numerator)
                    table[(rank + i, rank + j)] = entry
                elif s in rs.root_index:
                    table[(rank + i, rank + j)] = {rank + rs.root_index[s]: nres(a, b)}

        labels = [f"h{i + 1}" for i in range(rank)]
        labels += ["x[" + ",".join(map(str, r)) + "]" for r in rs.roots]
        alg = cls(rs, table, labels)
        alg._check_strings(pos_n)
        if verify == "full" or (verify == "auto" and rank <= 4):
            alg.verify_jacobi()
        elif verify == "auto":
            alg.verify_jacobi(sample=1000)
        return alg

    def _check_strings(self, pos_n: dict) -> None:
        rs = self.rs
        for (a, b), n in pos_n.items():
            r, _ = rs.root_string(b, a)
            if abs(n) != r + 1:
                raise ContractViolation(
                    f"|N| != r+1 at pair {a}, {b}: {n} vs {r + 1}"
                )

    # -- brackets ------------------------------------------------------------

    def _pair(self, i: int, j: int):
        """[e_i, e_j] as a {k: int} dict, any i != j."""
        if i < j:
            return self.table.get((i, j), {})
        entry = self.table.get((j, i))
        if not entry:
            return {}
        return {k: -c for k, c in entry.items()}

    def _adj(self):
        if self._ad is None:
            ad: list[dict[int, dict[int, int]]] = [dict() for _ in range(self.dim)]
            for (i, j), entry in self.table.items():
                ad[i][j] = dict(entry)
                ad[j][i] = {k: -c for k, c in entry.items()}
            self._ad = ad
        return self._ad

    def bracket(self, u, v):
        """[u, v] for dense vectors; entries may be int or scalar."""
        out = [0] * self.dim
        nz_u = [(i, a) for i, a in enumerate(u) if a]
        nz_v = [(j, b) for j, b in enumerate(v) if b]
        adj = self._adj()
        for i, a in nz_u:
            row = adj[i]
            for j, b in nz_v:
                entry = row.get(j)
                if not entry:
                    continue
                ab = a * b
                for k, c in entry.items():
                    out[k] = out[k] + ab * c
        return out

    def basis_vector(self, i: int):
        v = [0] * self.dim
        v[i] = 1
        return v

    def adjoint(self, v) -> SpMat:
        """Matrix of ad(v) in the algebra basis."""
        out = SpMat(self.dim, self.dim)
        adj = self._adj()
        for i, a in enumerate(v):
            if not a:
                continue
            for j, entry in adj[i].items():
                for k, c in entry.items():
                    cur = out.rows[k].get(j, 0)
                    cur = cur + a * c
                    if cur:
                        out.rows[k][j] = cur
                    else:
                        out.rows[k].pop(j, None)
        return out

    def ad_basis(self, i: int) -> SpMat:
        if self._ad_mats is None:
            self._ad_mats = [None] * self.dim  # type: ignore[list-item]
        m = self._ad_mats[i]
        if m is None:
            m = self.adjoint(self.basis_vector(i))
            self._ad_mats[i] = m
        return m

    # -- invariants ----------------------------------------------------------

    def killing_gram(self):
        if self._gram is None:
            g = [[0] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                mi = self.ad_basis(i)
                for j in range(i, self.dim):
                    v = trace_product(mi, self.ad_basis(j))
                    g[i][j] = v
                    g[j][i] = v
            self._gram = g
        return self._gram

    def killing(self, u, v):
        g = self.killing_gram()
        acc = 0
        for i, a in enumerate(u):
            if not a:
                continue
            row = g[i]
            for j, b in enumerate(v):
                if b and row[j]:
                    acc = acc + a * b * row[j]
        return acc

    def verify_jacobi(self, sample: int | None = None) -> int:
        """Check [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on basis triples.

        Checks all triples when sample is None, else a deterministic
        pseudorandom sample of that size.  Returns the number checked.
        """
        adj = self._adj()

        def jac(i, j, k) -> bool:
            acc: dict[int, int] = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = adj[a].get(b)
                if not inner:
                    continue
                for m, cm in inner.items():
                    outer = adj[m].get(c)
                    if not outer:
                        continue
                    for t, ct in outer.items():
                        acc[t] = acc.get(t, 0) + cm * ct
            return all(v == 0 for v in acc.values())

        if sample is None:
            triples = itertools.combinations(range(self.dim), 3)
            count = 0
            for i, j, k in triples:
                if not jac(i, j, k):
                    raise ContractViolation(f"Jacobi fails on basis triple {(i, j, k)}")
                count += 1
            return count
        rng = random.Random(0xC0F7)
        for n in range(sample):
            i, j, k = rng.sample(range(self.dim), 3)
            if not jac(i, j, k):
                raise ContractViolation(f"Jacobi fails on basis triple {(i, j, k)}")
        return sample

    # -- canonical generators -------------------------------------------------

    def canonical_generators(self):
        """(g, x, y): coroot and simple root vectors as basis vectors."""
        g = [self.basis_vector(i) for i in range(self.rank)]
        x = []
        y = []
        for i in range(self.rank):
            simple = tuple(1 if j == i else 0 for j in range(self.rank))
            xi = self.rank + self.rs.root_index[simple]
            yi = self.rank + self.rs.root_index[self.rs._neg(simple)]
            x.append(self.basis_vector(xi))
            y.append(self.basis_vector(yi))
        return g, x, y

    def verify_canonical(self, g, x, y, cartan) -> None:
        """Check the defining relations of a canonical generating set.

        cartan is the matrix of the generated (sub)algebra: the relations
        are [g_i, g_j] = 0, [g_i, x_j] = cartan[i][j] x_j, [g_i, y_j] =
        -cartan[i][j] y_j, [x_i, y_j] = delta_ij g_i.  Raises on the first
        failure.
        """
        m = len(g)
        if not (len(x) == len(y) == m):
            raise ContractViolation("generator lists have mismatched lengths")

        def eq(u, v, what):
            if any((a - b) for a, b in zip(u, v)):
                raise ContractViolation(f"canonical relation fails: {what}")

        zero = [0] * self.dim
        for i in range(m):
            for j in range(m):
                eq(self.bracket(g[i], g[j]), zero, f"[g{i + 1}, g{j + 1}] != 0")
                c = cartan[i][j]
                eq(
                    self.bracket(g[i], x[j]),
                    [c * t for t in x[j]],
                    f"[g{i + 1}, x{j + 1}] != <a_{j + 1}, a_{i + 1}^vee> x{j + 1}",
                )
                eq(
                    self.bracket(g[i], y[j]),
                    [-c * t for t in y[j]],
                    f"[g{i + 1}, y{j + 1}] != -<a_{j + 1}, a_{i + 1}^vee> y{j + 1}",
                )
                target = g[i] if i == j else zero
                eq(self.bracket(x[i], y[j]), target, f"[x{i + 1}, y{j + 1}]")

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        rows = []
        for (i, j) in sorted(self.table):
            entry = self.table[(i, j)]
            rows.append([i, j, [[k, str(c)] for k, c in sorted(entry.items())]])
        return {
            "type": self.type_name,
            "cartan": [list(row) for row in self.rs.cartan],
            "dim": self.dim,
            "labels": list(self.labels),
            "table": rows,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LieAlgebra":
        cartan = data.get("cartan")
        if cartan is None:
            raise ContractViolation("algebra JSON needs a cartan matrix")
        rs = RootSystem(cartan)
        table: dict[tuple, dict[int, int]] = {}
        for i, j, entry in data["table"]:
            table[(int(i), int(j))] = {int(k): int(c) for k, c in entry}
        labels = list(data["labels"])
        alg = cls(rs, table, labels)
        if alg.dim != data["dim"]:
            raise ContractViolation("algebra JSON dim mismatch")
        return alg

    @property
    def type_name(self) -> str:
        return detect_type(self.rs.cartan)


def scalar_vector(alg: LieAlgebra, entries) -> list:
    """Parse a list of scalar strings into a dense vector."""
    if len(entries) != alg.dim:
        raise ContractViolation("vector length does not match algebra dimension")
    return [ComplexScalar.parse(s) if isinstance(s, str) else ComplexScalar(s) for s in entries]


def vector_strings(v) -> list[str]:
    return [str(a) for a in v]


def real_part_vector(v):
    out = []
    for a in v:
        if isinstance(a, ComplexScalar):
            out.append(a.re)
        elif isinstance(a, FieldScalar):
            out.append(a)
        else:
            out.append(FieldScalar(a))
    return out
