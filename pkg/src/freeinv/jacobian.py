"""Left Jacobian matrices, verified polynomial matrix inversion, auxiliary inverses.

The left Jacobian of a map p is the unique matrix J with
p(x) = p(0) + x*J(x); entry J[s][j] collects the words of p_j that start with
x_{s+1}, with that first letter removed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .freealg import (
    NEG_INF,
    FreePoly,
    check_alphabet,
    rename_letters,
)

REASON_SINGULAR_CONSTANT = "singular-constant-term"
REASON_NO_INVERSE_UP_TO_CAP = "no-polynomial-inverse-up-to-cap"
REASON_TERM_BUDGET = "term-budget-exceeded"


@dataclass(frozen=True)
class NotPolyInvertible:
    """Negative (or budget-cut) result of a polynomial matrix inversion attempt.

    With `reason == REASON_NO_INVERSE_UP_TO_CAP` the meaning depends on the cap:
    at the rigorous degree bound it proves no polynomial inverse exists, at a
    smaller cap it only says none was found up to that degree.
    """

    reason: str
    cap: int | None = None


class PolyMatrix:
    """Rectangular matrix of free polynomials."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(e for e in row) for row in entries)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n):
        one = FreePoly.one()
        zero = FreePoly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, scalars):
        return cls([[FreePoly.scalar(c) for c in row] for row in scalars])

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        self._dim_check(other, same=True)
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        self._dim_check(other, same=True)
        return PolyMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        cols = tuple(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append(
                [sum((a * b for a, b in zip(row, col)), FreePoly.zero()) for col in cols]
            )
        return PolyMatrix(out)

    def _dim_check(self, other, same=False):
        if same and (self.rows != other.rows or self.cols != other.cols):
            raise ValueError("dimension mismatch")

    def constant_part(self):
        return tuple(tuple(e.constant_term() for e in row) for row in self.entries)

    def degree(self):
        return max((e.degree() for row in self.entries for e in row), default=NEG_INF)

    def map_entries(self, fn):
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def term_count(self):
        return sum(len(e) for row in self.entries for e in row)

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def __repr__(self):
        from .parsing import format_poly

        rows = ", ".join(
            "[" + ", ".join(format_poly(e) for e in row) + "]" for row in self.entries
        )
        return f"PolyMatrix([{rows}])"


def jacobian_extract(p):
    """Decompose p(x) = p(0) + x*J(x); returns (constant tuple, J)."""
    h = len(p)
    g = 0
    for comp in p:
        for (kind, idx) in comp.letters():
            if kind != "x":
                raise ValueError(f"jacobian_extract expects x-letters only, found {kind}{idx}")
            g = max(g, idx)
    g = max(g, h)
    constants = tuple(comp.constant_term() for comp in p)
    grid = [[{} for _ in range(h)] for _ in range(g)]
    for j, comp in enumerate(p):
        for w, c in comp.terms():
            if not w:
                continue
            s = w[0][1]
            rest = w[1:]
            row = grid[s - 1][j]
            prev = row.get(rest)
            row[rest] = c if prev is None else prev + c
    entries = [
        [FreePoly({w: c for w, c in cell.items() if c}) for cell in row] for row in grid
    ]
    return constants, PolyMatrix(entries)


def reconstruct(constants, J):
    """Inverse of jacobian_extract: p(x) = p(0) + x*J(x)."""
    g, h = J.rows, J.cols
    out = []
    for j in range(h):
        comp = FreePoly.scalar(constants[j])
        for s in range(g):
            comp = comp + FreePoly.letter("x", s + 1) * J[s][j]
        out.append(comp)
    return tuple(out)


def _scalar_times_polymatrix(scalars, M):
    rows = len(scalars)
    inner = len(scalars[0])
    cols = M.cols
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = FreePoly.zero()
            for k in range(inner):
                c = scalars[i][k]
                if c:
                    acc = acc + M[k][j] * c
            row.append(acc)
        out.append(row)
    return PolyMatrix(out)


def poly_matrix_inverse(M: PolyMatrix, degree_cap: int, max_terms=None):
    """Two-sided polynomial inverse of a square matrix, or NotPolyInvertible.

    Accumulates the geometric-series inverse degree layer by degree layer up to
    `degree_cap`, then verifies M*R = I = R*M exactly, so a returned matrix is
    unconditionally correct.  At the rigorous cap a negative answer proves no
    polynomial inverse exists; at a smaller cap it means none up to the cap.
    """
    if M.rows != M.cols:
        raise ValueError("only square matrices can be inverted")
    if degree_cap < 0:
        raise ValueError("degree_cap must be >= 0")
    n = M.rows
    m0 = M.constant_part()
    m0_inv = linalg.inverse(m0)
    if m0_inv is None:
        return NotPolyInvertible(REASON_SINGULAR_CONSTANT, degree_cap)
    # N = M(0) - M has no constant term; R solves M0*R = I + N*R layerwise.
    N = PolyMatrix.from_scalars(m0) - M
    deg_n = N.degree()
    if deg_n == NEG_INF:
        return PolyMatrix.from_scalars(m0_inv)
    deg_n = int(deg_n)
    n_layers = {
        d: N.map_entries(lambda e, d=d: e.homogeneous_part(d)) for d in range(1, deg_n + 1)
    }
    n_layers = {d: L for d, L in n_layers.items() if not L.is_zero()}
    layers = [PolyMatrix.from_scalars(m0_inv)]
    total = layers[0]
    zero_run = 0
    terms = total.term_count()
    for m in range(1, degree_cap + 1):
        acc = None
        for d, Nd in n_layers.items():
            if d > m:
                continue
            part = Nd * layers[m - d]
            acc = part if acc is None else acc + part
        layer = (
            PolyMatrix([[FreePoly.zero()] * n for _ in range(n)])
            if acc is None
            else _scalar_times_polymatrix(m0_inv, acc)
        )
        layers.append(layer)
        if layer.is_zero():
            zero_run += 1
            if zero_run >= deg_n:
                break
        else:
            zero_run = 0
            total = total + layer
            terms += layer.term_count()
            if max_terms is not None and terms > max_terms:
                return NotPolyInvertible(REASON_TERM_BUDGET, degree_cap)
    ident = PolyMatrix.identity(n)
    if M * total == ident and total * M == ident:
        return total
    return NotPolyInvertible(REASON_NO_INVERSE_UP_TO_CAP, degree_cap)


def auxiliary_inverse(p, j_inv: PolyMatrix):
    """Build the proper algebraic system x * Jinv(z) from a verified inverse Jacobian."""
    from .sysolve import ProperAlgebraicSystem, check_proper

    g = len(p)
    check_alphabet(p, g, kinds=("x",))
    if any(comp.constant_term() for comp in p):
        raise ValueError("auxiliary inverse requires a map without constant term")
    to_z = {("x", i + 1): ("z", i + 1) for i in range(g)}
    jz = j_inv.map_entries(lambda e: rename_letters(e, to_z))
    components = []
    for i in range(g):
        acc = FreePoly.zero()
        for s in range(g):
            acc = acc + FreePoly.letter("x", s + 1) * jz[s][i]
        components.append(acc)
    system = ProperAlgebraicSystem(tuple(components))
    if not check_proper(system):
        raise ValueError("auxiliary inverse failed the proper-system invariants")
    return system
