"""Root systems of finite type, built from Cartan matrices.

Roots are integer coordinate tuples over the simple roots.  The pairing
convention is  cartan[i][j] = <alpha_j, alpha_i^vee>,  so row i of the
Cartan matrix lists the eigenvalues of ad(h_i) on the simple root vectors.

Positive roots are enumerated by height using root strings: gamma + alpha_i
is a root iff q = r - <gamma, alpha_i^vee> > 0 where r is the length of the
descending string through gamma.  The enumeration is deterministic and the
canonical root order is height, then lexicographic on coordinates.
"""

from __future__ import annotations

from ._backend import Rational
from .errors import ContractViolation

_SERIES = "ABCD"
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _series_cartan(letter: str, n: int) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i in range(n - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    if letter == "A":
        pass
    elif letter == "B":
        # alpha_n short: <alpha_n, alpha_{n-1}^vee> = -1, <alpha_{n-1}, alpha_n^vee> = -2
        m[n - 1][n - 2] = -2
    elif letter == "C":
        m[n - 2][n - 1] = -2
    elif letter == "D":
        m[n - 1][n - 2] = 0
        m[n - 2][n - 1] = 0
        m[n - 1][n - 3] = -1
        m[n - 3][n - 1] = -1
    else:
        raise ValueError(letter)
    return m


def _e_cartan(n: int) -> list[list[int]]:
    # chain 1-3-4-5-...-n with node 2 hanging off node 4
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    chain = [0] + list(range(2, n))
    for a, b in zip(chain, chain[1:]):
        m[a][b] = m[b][a] = -1
    m[1][3] = m[3][1] = -1
    return m


_F4 = [
    [2, -1, 0, 0],
    [-1, 2, -2, 0],
    [0, -1, 2, -1],
    [0, 0, -1, 2],
]

# alpha_1 short, highest root 3*alpha_1 + 2*alpha_2
_G2 = [
    [2, -3],
    [-1, 2],
]


def simple_type_cartan(letter: str, rank: int) -> list[list[int]]:
    if letter == "A" and rank >= 1:
        return _series_cartan("A", rank)
    if letter == "B" and rank >= 2:
        return _series_cartan("B", rank)
    if letter == "C" and rank >= 3:
        return _series_cartan("C", rank)
    if letter == "D" and rank >= 4:
        return _series_cartan("D", rank)
    if letter == "E" and rank in (6, 7, 8):
        return _e_cartan(rank)
    if letter == "F" and rank == 4:
        return [row[:] for row in _F4]
    if letter == "G" and rank == 2:
        return [row[:] for row in _G2]
    raise ValueError(f"no simple type {letter}{rank}")


def parse_type_name(name: str) -> list[tuple[str, int]]:
    """'A1+G2' -> [('A', 1), ('G', 2)]; raises ValueError on junk."""
    parts = []
    for chunk in name.replace(" ", "").split("+"):
        if len(chunk) < 2 or chunk[0].upper() not in "ABCDEFG":
            raise ValueError(f"bad type name {chunk!r}")
        letter = chunk[0].upper()
        try:
            rank = int(chunk[1:])
        except ValueError:
            raise ValueError(f"bad type name {chunk!r}") from None
        parts.append((letter, rank))
    if not parts:
        raise ValueError("empty type name")
    return parts


def cartan_matrix(name: str) -> list[list[int]]:
    """Cartan matrix for a (possibly composite) type name like 'A1+G2'."""
    blocks = [simple_type_cartan(l, r) for l, r in parse_type_name(name)]
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[at + i][at : at + len(b)] = row
        at += len(b)
    return out


def _validate_cartan(cartan) -> None:
    n = len(cartan)
    for i, row in enumerate(cartan):
        if len(row) != n:
            raise ContractViolation("Cartan matrix must be square")
        for j, v in enumerate(row):
            if not isinstance(v, int):
                raise ContractViolation("Cartan entries must be integers")
            if i == j and v != 2:
                raise ContractViolation("Cartan diagonal must be 2")
            if i != j and v > 0:
                raise ContractViolation("off-diagonal Cartan entries must be <= 0")
            if i != j and (v == 0) != (cartan[j][i] == 0):
                raise ContractViolation("Cartan zero pattern must be symmetric")


def _symmetrizer(cartan) -> list[Rational]:
    """d with d_i * c_ij symmetric, normalised to min 1 per component."""
    n = len(cartan)
    d: list = [None] * n
    comps = []
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Rational(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if i != j and cartan[i][j]:
                    val = d[i] * Rational(cartan[i][j], cartan[j][i])
                    if d[j] is None:
                        d[j] = val
                        comp.append(j)
                        queue.append(j)
                    elif d[j] != val:
                        raise ContractViolation("Cartan matrix is not symmetrizable")
        comps.append(comp)
    for comp in comps:
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    return d


def _check_finite_type(cartan, d) -> None:
    # Sylvester on the symmetrized matrix d_i * c_ij
    n = len(cartan)
    s = [[d[i] * cartan[i][j] for j in range(n)] for i in range(n)]
    m = [row[:] for row in s]
    for k in range(n):
        piv = m[k][k]
        if piv <= 0:
            raise ContractViolation("Cartan matrix is not of finite type")
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f:
                for j in range(k, n):
                    m[i][j] = m[i][j] - f * m[k][j]


class RootSystem:
    """Finite root system attached to a valid Cartan matrix."""

    def __init__(self, cartan):
        cartan = [list(map(int, row)) for row in cartan]
        _validate_cartan(cartan)
        self.cartan = cartan
        self.rank = len(cartan)
        self.d = _symmetrizer(cartan)
        _check_finite_type(cartan, self.d)
        self.positive = self._enumerate_positive()
        self.positive_index = {r: i for i, r in enumerate(self.positive)}
        self.npos = len(self.positive)
        self.roots = self.positive + [self._neg(r) for r in self.positive]
        self.root_index = {r: i for i, r in enumerate(self.roots)}

    @staticmethod
    def _neg(root):
        return tuple(-c for c in root)

    def is_root(self, v) -> bool:
        return v in self.root_index

    def pairing(self, beta, i: int) -> int:
        """<beta, alpha_i^vee> for beta in simple-root coordinates."""
        return sum(self.cartan[i][j] * beta[j] for j in range(self.rank))

    def _enumerate_positive(self):
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        known = set(simple)
        layers = [simple]
        while layers[-1]:
            nxt = set()
            for gamma in layers[-1]:
                for i in range(n):
                    # r = steps down the alpha_i string from gamma
                    r = 0
                    probe = list(gamma)
                    while True:
                        probe[i] -= 1
                        t = tuple(probe)
                        if t in known and any(c for c in t):
                            r += 1
                        else:
                            break
                    q = r - self.pairing(gamma, i)
                    if q > 0:
                        up = list(gamma)
                        up[i] += 1
                        nxt.add(tuple(up))
            known |= nxt
            layers.append(sorted(nxt))
        out = sorted(known, key=lambda v: (sum(v), v))
        return out

    def height(self, root) -> int:
        return sum(root)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def length_sq(self, root) -> Rational:
        """(root, root) in the symmetrized form, exact."""
        acc = Rational(0)
        for i in range(self.rank):
            if root[i]:
                acc += self.d[i] * root[i] * self.pairing(root, i)
        return acc

    def root_string(self, beta, alpha) -> tuple[int, int]:
        """(r, q): beta - r*alpha ... beta + q*alpha is the alpha-string."""
        r = 0
        probe = beta
        while True:
            probe = self.sub(probe, alpha)
            if probe in self.root_index:
                r += 1
            else:
                break
        q = 0
        probe = beta
        while True:
            probe = self.add(probe, alpha)
            if probe in self.root_index:
                q += 1
            else:
                break
        return r, q


# ---------------------------------------------------------------------------
# type detection (used to label classification results)


def _row_profile(cartan, i):
    return tuple(sorted(v for j, v in enumerate(cartan[i]) if j != i and v))


def _match_permuted(a, b) -> bool:
    """True when b equals a after simultaneous row/column permutation."""
    n = len(a)
    if n != len(b):
        return False
    prof_a = [_row_profile(a, i) for i in range(n)]
    prof_b = [_row_profile(b, i) for i in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return False
    used = [False] * n
    perm = [-1] * n

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or prof_a[i] != prof_b[j]:
                continue
            ok = True
            for k in range(i):
                if a[i][k] != b[j][perm[k]] or a[k][i] != b[perm[k]][j]:
                    ok = False
                    break
            if ok:
                used[j] = True
                perm[i] = j
                if extend(i + 1):
                    return True
                used[j] = False
                perm[i] = -1
        return False

    return extend(0)


def _connected_components(cartan):
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and i != j and cartan[i][j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _candidates(rank: int):
    if rank >= 1:
        yield "A", rank
    if rank >= 2:
        yield "B", rank
    if rank >= 3:
        yield "C", rank
    if rank >= 4:
        yield "D", rank
    for letter, ranks in _EXCEPTIONAL_RANKS.items():
        if rank in ranks:
            yield letter, rank


def detect_type(cartan) -> str:
    """Canonical type name ('A3', 'A1+G2', ...) of a valid Cartan matrix."""
    _validate_cartan(cartan)
    names = []
    for comp in _connected_components(cartan):
        sub = [[cartan[i][j] for j in comp] for i in comp]
        found = None
        for letter, rank in _candidates(len(comp)):
            if _match_permuted(sub, simple_type_cartan(letter, rank)):
                found = f"{letter}{rank}"
                break
        if found is None:
            raise ContractViolation("Cartan matrix is not of finite type")
        names.append(found)
    return "+".join(sorted(names))
