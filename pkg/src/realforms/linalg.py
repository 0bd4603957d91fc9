"""Exact linear algebra over field scalars.

Vectors are plain lists; the integer 0 is allowed as an entry and mixes
with every scalar type through their reflected operators.  `SpMat` keeps
one dict per row and is the workhorse for adjoint representations, where
structure constants are sparse.  Everything here is deterministic: no
pivoting heuristics beyond "first nonzero".
"""

from __future__ import annotations

from ._backend import Rational


def _inv(x):
    if isinstance(x, int):
        return Rational(1, x)
    if isinstance(x, Rational):
        return 1 / x
    return x.inverse()


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, u):
    return [c * a for a in u]


def vec_is_zero(u) -> bool:
    return all(not a for a in u)


def dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


class SpMat:
    """Sparse matrix: one {col: value} dict per row, zero values dropped."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_dense(cls, dense) -> "SpMat":
        m = cls(len(dense), len(dense[0]) if dense else 0)
        for i, row in enumerate(dense):
            m.rows[i] = {j: v for j, v in enumerate(row) if v}
        return m

    @classmethod
    def identity(cls, n: int, one=1) -> "SpMat":
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = one
        return m

    def copy(self) -> "SpMat":
        return SpMat(self.nrows, self.ncols, [dict(r) for r in self.rows])

    def set(self, i: int, j: int, v):
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    def get(self, i: int, j: int):
        return self.rows[i].get(j, 0)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def items(self):
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                yield i, j, v

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SpMat":
        out = SpMat(self.ncols, self.nrows)
        for i, j, v in self.items():
            out.rows[j][i] = v
        return out

    def matvec(self, x):
        out = [0] * self.nrows
        for i, row in enumerate(self.rows):
            acc = 0
            for j, v in row.items():
                xj = x[j]
                if xj:
                    acc = acc + v * xj
            out[i] = acc
        return out

    def __add__(self, other: "SpMat") -> "SpMat":
        out = self.copy()
        for i, j, v in other.items():
            out.set(i, j, out.get(i, j) + v)
        return out

    def __sub__(self, other: "SpMat") -> "SpMat":
        out = self.copy()
        for i, j, v in other.items():
            out.set(i, j, out.get(i, j) - v)
        return out

    def __neg__(self) -> "SpMat":
        return self.scale(-1)

    def scale(self, c) -> "SpMat":
        out = SpMat(self.nrows, self.ncols)
        if not c:
            return out
        for i, j, v in self.items():
            out.rows[i][j] = c * v
        return out

    def __mul__(self, other: "SpMat") -> "SpMat":
        if not isinstance(other, SpMat):
            return NotImplemented
        out = SpMat(self.nrows, other.ncols)
        brows = other.rows
        for i, row in enumerate(self.rows):
            acc: dict = {}
            for k, a in row.items():
                for j, b in brows[k].items():
                    cur = acc.get(j)
                    cur = a * b if cur is None else cur + a * b
                    acc[j] = cur
            out.rows[i] = {j: v for j, v in acc.items() if v}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpMat):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(a == b for a, b in zip(self.rows, other.rows))

    def __hash__(self):
        return None  # type: ignore[return-value]

    def trace(self):
        acc = 0
        for i in range(self.nrows):
            v = self.rows[i].get(i)
            if v:
                acc = acc + v
        return acc

    def is_diagonal(self) -> bool:
        return all(j == i for i, j, _ in self.items())

    def __repr__(self):
        return f"SpMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def trace_product(a: SpMat, b: SpMat):
    """trace(a @ b) without forming the product."""
    acc = 0
    for i, row in enumerate(a.rows):
        for k, v in row.items():
            w = b.rows[k].get(i)
            if w:
                acc = acc + v * w
    return acc


class SpanTracker:
    """Incremental reduced row echelon over a field.

    Keeps the span of added vectors in fully reduced form.  When built
    with track=True each row also carries its expression in terms of the
    added generators, so membership queries return coordinates.
    """

    def __init__(self, ncols: int, track: bool = False):
        self.ncols = ncols
        self.track = track
        self.pivots: dict[int, int] = {}  # pivot col -> row index
        self.rows: list[list] = []
        self.coords: list[list] = []
        self.added = 0

    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec, coo):
        vec = list(vec)
        for col, ri in self.pivots.items():
            f = vec[col]
            if f:
                row = self.rows[ri]
                for j, rv in enumerate(row):
                    if rv:
                        vec[j] = vec[j] - f * rv
                if coo is not None:
                    crow = self.coords[ri]
                    for j, rv in enumerate(crow):
                        if rv:
                            coo[j] = coo[j] - f * rv
        return vec, coo

    def residual(self, vec):
        r, _ = self._reduce(vec, None)
        return r

    def contains(self, vec) -> bool:
        return vec_is_zero(self.residual(vec))

    def coordinates(self, vec):
        """Coordinates of vec over the added generators, or None."""
        if not self.track:
            raise ValueError("tracker built without coordinate tracking")
        coo = [0] * self.added
        r, coo = self._reduce(vec, coo)
        if not vec_is_zero(r):
            return None
        return [-c for c in coo]

    def add(self, vec):
        """Add a generator; returns its pivot column, or None if dependent."""
        coo = [0] * (self.added + 1) if self.track else None
        if coo is not None:
            coo[self.added] = 1  # invariant: stored row = sum(coords * generators)
            for crow in self.coords:
                crow.append(0)
        self.added += 1
        r, coo = self._reduce(vec, coo)
        pivot = None
        for j, v in enumerate(r):
            if v:
                pivot = j
                break
        if pivot is None:
            return None
        f = _inv(r[pivot])
        r = [f * v if v else 0 for v in r]
        if coo is not None:
            coo = [f * v if v else 0 for v in coo]
        # back-eliminate the new pivot from existing rows
        for ri, row in enumerate(self.rows):
            g = row[pivot]
            if g:
                for j, rv in enumerate(r):
                    if rv:
                        row[j] = row[j] - g * rv
                if self.track:
                    crow = self.coords[ri]
                    for j, rv in enumerate(coo):
                        if rv:
                            crow[j] = crow[j] - g * rv
        self.pivots[pivot] = len(self.rows)
        self.rows.append(r)
        if coo is not None:
            self.coords.append(coo)
        return pivot

    def basis(self):
        """Current reduced basis rows, ordered by pivot column."""
        return [self.rows[ri] for _, ri in sorted(self.pivots.items())]


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        f = _inv(rows[rank][col])
        rows[rank] = [f * v if v else 0 for v in rows[rank]]
        for i, row in enumerate(rows):
            if i != rank and row[col]:
                g = row[col]
                rows[i] = [a - g * b if b else a for a, b in zip(row, rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank] + rows[rank:], pivots


def kernel_basis(rows, ncols: int | None = None):
    """Basis of {x : A x = 0} for A given as dense rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, p in enumerate(pivots):
            v = red[r][f]
            if v:
                x[p] = -v
        out.append(x)
    return out


def solve_right(rows, rhs):
    """One solution x of A x = b, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    n = len(rows[0]) if rows else 0
    for r in range(len(red)):
        if all(not v for v in red[r][:n]) and red[r][n]:
            return None
    x = [0] * n
    for r, p in enumerate(pivots):
        if p < n:
            x[p] = red[r][n]
    return x


def dense_inverse(rows):
    """Exact inverse of a square dense matrix; raises on singular input."""
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in red[:n]]


def berkowitz_charpoly(dense, reduce=None):
    """Coefficients [c_0, ..., c_n] of det(T*I - A) with c_0 = 1.

    Division-free, so it works over any commutative ring; `reduce` is an
    optional normalisation hook applied after each ring operation batch.
    """
    n = len(dense)
    red = reduce or (lambda x: x)
    if n == 0:
        return [1]
    poly = [1, red(-dense[0][0])]
    for r in range(2, n + 1):
        top = r - 1
        col = [dense[i][top] for i in range(top)]
        row = [dense[top][j] for j in range(top)]
        q = [1, red(-dense[top][top])]
        w = col
        for k in range(top):
            if k > 0:
                w = [
                    red(
                        sum(
                            (dense[i][j] * w[j] for j in range(top) if w[j]),
                            start=0,
                        )
                    )
                    for i in range(top)
                ]
            q.append(red(-dot(row, w)))
        qlen = len(q)
        new = []
        for i in range(r + 1):
            acc = 0
            for j in range(max(0, i - qlen + 1), min(i, r - 1) + 1):
                acc = acc + q[i - j] * poly[j]
            new.append(red(acc))
        poly = new
    return poly


def congruence_diagonal(gram):
    """Diagonal of E G E^T for invertible E, given symmetric G.

    Returns the list of diagonal entries; the multiset of their signs is
    the congruence invariant (Sylvester).
    """
    m = [list(r) for r in gram]
    n = len(m)
    diag = []
    for k in range(n):
        if not m[k][k]:
            swap = None
            for i in range(k + 1, n):
                if m[i][i]:
                    swap = i
                    break
            if swap is not None:
                m[k], m[swap] = m[swap], m[k]
                for row in m:
                    row[k], row[swap] = row[swap], row[k]
            else:
                pair = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if m[i][j]:
                            pair = (i, j)
                            break
                    if pair:
                        break
                if pair is None:
                    diag.extend([0] * (n - k))
                    break
                i, j = pair
                # v_i += v_j makes the (i,i) entry 2*m[i][j] != 0
                for t in range(n):
                    m[i][t] = m[i][t] + m[j][t]
                for t in range(n):
                    m[t][i] = m[t][i] + m[t][j]
                if i != k:
                    m[k], m[i] = m[i], m[k]
                    for row in m:
                        row[k], row[i] = row[i], row[k]
        d = m[k][k]
        diag.append(d)
        if k == n - 1:
            break
        f = [m[i][k] * _inv(d) if m[i][k] else 0 for i in range(n)]
        rowk = list(m[k])
        colk = [m[i][k] for i in range(n)]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j]
                if f[i] and rowk[j]:
                    v = v - f[i] * rowk[j]
                if f[j] and colk[i]:
                    v = v - f[j] * colk[i]
                if f[i] and f[j]:
                    v = v + f[i] * f[j] * d
                m[i][j] = v
            m[i][k] = 0
            m[k][i] = 0
    return diag


def signature_counts(diag):
    """(negatives, positives) among diagonal entries, zeros rejected."""
    neg = pos = 0
    for d in diag:
        s = d.sign() if hasattr(d, "sign") else (0 if not d else (1 if d > 0 else -1))
        if s == 0:
            raise ValueError("degenerate form")
        if s < 0:
            neg += 1
        else:
            pos += 1
    return neg, pos
