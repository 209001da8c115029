"""Bipartite polynomials (two alphabets with cross-commuting sides) and the
matrix-valued injectivity test built on them.

A bipartite polynomial is a sum of split terms u (x) v; left factors commute
past right factors but not among themselves, so the pair-of-words indexing is
already a normal form.  The derivative of a polynomial map packs into a square
bipartite matrix whose invertibility over this ring decides injectivity; a
returned inverse is always verified by exact multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deriv import free_derivative
from .freealg import (
    NEG_INF,
    FreePoly,
    check_alphabet,
    swap_kinds,
)
from .jacobian import (
    REASON_NO_INVERSE_UP_TO_CAP,
    REASON_SINGULAR_CONSTANT,
    REASON_TERM_BUDGET,
    NotPolyInvertible,
)
from .inverter import pmid_scale
from .scalars import GaussianRational, as_gaussian
from . import linalg


class NotHyporealization(ValueError):
    """The system is not z-affine linear (or not proper)."""


class BipartitePoly:
    """Finite sum of (left word, right word) pairs with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (u, v), c in terms.items():
                g = as_gaussian(c)
                if g is None:
                    raise TypeError(f"bad coefficient {c!r}")
                if g:
                    clean[(tuple(u), tuple(v))] = g
        self._terms = clean

    @classmethod
    def _raw(cls, terms):
        b = object.__new__(cls)
        b._terms = terms
        return b

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({((), ()): GaussianRational(1)})

    @classmethod
    def scalar(cls, c):
        g = as_gaussian(c)
        return cls._raw({((), ()): g} if g else {})

    @classmethod
    def tensor(cls, left: FreePoly, right: FreePoly):
        """Bilinear split product of two free polynomials."""
        out = {}
        for lw, lc in left.terms():
            for rw, rc in right.terms():
                c = lc * rc
                key = (lw, rw)
                prev = out.get(key)
                out[key] = c if prev is None else prev + c
        return cls._raw({k: c for k, c in out.items() if c})

    def terms(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, BipartitePoly):
            return self._terms == other._terms
        g = as_gaussian(other)
        if g is None:
            return NotImplemented
        return self._terms == ({((), ()): g} if g else {})

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return BipartitePoly._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, BipartitePoly):
            g = as_gaussian(other)
            if g is None:
                return NotImplemented
            other = BipartitePoly.scalar(g)
        out = dict(self._terms)
        for k, c in other._terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return BipartitePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, BipartitePoly):
            return self + (-other)
        g = as_gaussian(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __mul__(self, other):
        if not isinstance(other, BipartitePoly):
            g = as_gaussian(other)
            if g is None:
                return NotImplemented
            if not g:
                return BipartitePoly.zero()
            return BipartitePoly._raw({k: c * g for k, c in self._terms.items()})
        out = {}
        for (u1, v1), c1 in self._terms.items():
            for (u2, v2), c2 in other._terms.items():
                key = (u1 + u2, v1 + v2)
                c = c1 * c2
                prev = out.get(key)
                if prev is None:
                    out[key] = c
                else:
                    s = prev + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return BipartitePoly._raw(out)

    def __rmul__(self, other):
        g = as_gaussian(other)
        if g is None:
            return NotImplemented
        return self * g

    def total_degree(self):
        if not self._terms:
            return NEG_INF
        return max(len(u) + len(v) for (u, v) in self._terms)

    def homogeneous_part(self, m):
        return BipartitePoly._raw(
            {k: c for k, c in self._terms.items() if len(k[0]) + len(k[1]) == m}
        )

    def substitute_sides(self, left_images, right_images):
        """Homomorphism acting independently on the two sides.

        Images are FreePoly values keyed by letter index; the letter kind of
        each side is preserved structurally by re-tensoring the results.
        """
        out = BipartitePoly.zero()
        for (u, v), c in self._terms.items():
            left = FreePoly.one()
            for (_, idx) in u:
                left = left * left_images[idx]
            right = FreePoly.one()
            for (_, idx) in v:
                right = right * right_images[idx]
            out = out + BipartitePoly.tensor(left, right) * c
        return out

    def __repr__(self):
        from .parsing import format_bipartite

        return f"BipartitePoly({format_bipartite(self)!r})"

    def __str__(self):
        from .parsing import format_bipartite

        return format_bipartite(self)


class BipartiteMatrix:
    """Square matrix of bipartite polynomials."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(e for e in row) for row in entries)

    @property
    def size(self):
        return len(self.entries)

    @classmethod
    def identity(cls, n):
        one = BipartitePoly.one()
        zero = BipartitePoly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_scalars(cls, scalars):
        return cls([[BipartitePoly.scalar(c) for c in row] for row in scalars])

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        return isinstance(other, BipartiteMatrix) and self.entries == other.entries

    def __add__(self, other):
        return BipartiteMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return BipartiteMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __mul__(self, other):
        if not isinstance(other, BipartiteMatrix):
            return NotImplemented
        cols = tuple(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append(
                [
                    sum((a * b for a, b in zip(row, col)), BipartitePoly.zero())
                    for col in cols
                ]
            )
        return BipartiteMatrix(out)

    def constant_part(self):
        return tuple(
            tuple(e._terms.get(((), ()), GaussianRational(0)) for e in row)
            for row in self.entries
        )

    def degree(self):
        return max((e.total_degree() for row in self.entries for e in row), default=NEG_INF)

    def map_entries(self, fn):
        return BipartiteMatrix([[fn(e) for e in row] for row in self.entries])

    def term_count(self):
        return sum(len(e) for row in self.entries for e in row)

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def __repr__(self):
        from .parsing import format_bipartite

        rows = ", ".join(
            "[" + ", ".join(format_bipartite(e) for e in row) + "]" for row in self.entries
        )
        return f"BipartiteMatrix([{rows}])"


def _split_one_x(word):
    """Split a word with exactly one x-letter as (prefix, index, suffix)."""
    found = None
    for pos, (kind, idx) in enumerate(word):
        if kind == "x":
            if found is not None:
                raise ValueError("word has more than one x-letter")
            found = (pos, idx)
    if found is None:
        raise ValueError("word has no x-letter")
    pos, idx = found
    return word[:pos], idx, word[pos + 1 :]


def hypo_jacobian(p) -> BipartiteMatrix:
    """Pack the derivative Dp_i(y)[x] = sum U(y) x_j V(y) into the matrix with
    entry (j, i) = sum U^T (x) V; unique by x-linearity of the derivative."""
    g = len(p)
    check_alphabet(p, g, kinds=("x",))
    grid = [[{} for _ in range(g)] for _ in range(g)]
    for i, comp in enumerate(p):
        d = swap_kinds(free_derivative(comp), "x", "y")
        for w, c in d.terms():
            prefix, j, suffix = _split_one_x(w)
            key = (prefix[::-1], suffix)
            cell = grid[j - 1][i]
            prev = cell.get(key)
            cell[key] = c if prev is None else prev + c
    return BipartiteMatrix(
        [[BipartitePoly({k: c for k, c in cell.items() if c}) for cell in row] for row in grid]
    )


def bipartite_matrix_inverse(M: BipartiteMatrix, degree_cap: int, max_terms=None):
    """Verified two-sided inverse over the bipartite ring, graded by total degree."""
    if degree_cap < 0:
        raise ValueError("degree_cap must be >= 0")
    n = M.size
    m0 = M.constant_part()
    m0_inv = linalg.inverse(m0)
    if m0_inv is None:
        return NotPolyInvertible(REASON_SINGULAR_CONSTANT, degree_cap)
    N = BipartiteMatrix.from_scalars(m0) - M
    deg_n = N.degree()
    if deg_n == NEG_INF:
        return BipartiteMatrix.from_scalars(m0_inv)
    deg_n = int(deg_n)
    n_layers = {}
    for d in range(1, deg_n + 1):
        layer = N.map_entries(lambda e, d=d: e.homogeneous_part(d))
        if not layer.is_zero():
            n_layers[d] = layer
    zero_row = [BipartitePoly.zero()] * n

    def scalar_times(scalars, B):
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = BipartitePoly.zero()
                for k in range(n):
                    c = scalars[i][k]
                    if c:
                        acc = acc + B[k][j] * c
                row.append(acc)
            out.append(row)
        return BipartiteMatrix(out)

    layers = [BipartiteMatrix.from_scalars(m0_inv)]
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
        layer = BipartiteMatrix([list(zero_row) for _ in range(n)]) if acc is None else scalar_times(m0_inv, acc)
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
    ident = BipartiteMatrix.identity(n)
    if M * total == ident and total * M == ident:
        return total
    return NotPolyInvertible(REASON_NO_INVERSE_UP_TO_CAP, degree_cap)


@dataclass(frozen=True)
class InjectivityOutcome:
    """Result of the matrix-form injectivity test.

    `certified` is False when a user-supplied cap or term budget cut the
    search short of the rigorous degree bound, in which case a negative
    status is only "no inverse found", not a proof.
    """

    status: str  # "injective" | "not-injective" | "indeterminate"
    inverse: BipartiteMatrix | None
    cap_used: int
    certified: bool

    @property
    def injective(self):
        return self.status == "injective"


def injectivity_test(p, cap=None, max_terms=None) -> InjectivityOutcome:
    """Decide injectivity by inverting the packed-derivative matrix.

    A positive answer always comes with an exactly verified inverse.  With the
    default rigorous cap a negative answer is a certificate; otherwise it is
    reported as certified=False.
    """
    g = len(p)
    hj = hypo_jacobian(p)
    deg = hj.degree()
    deg = 0 if deg == NEG_INF else int(deg)
    rigorous = pmid_scale(g) * deg
    used = rigorous if cap is None else min(cap, rigorous)
    clipped = used < rigorous
    result = bipartite_matrix_inverse(hj, used, max_terms=max_terms)
    if isinstance(result, BipartiteMatrix):
        return InjectivityOutcome("injective", result, used, True)
    if result.reason == REASON_TERM_BUDGET or clipped:
        return InjectivityOutcome("indeterminate", None, used, False)
    return InjectivityOutcome("not-injective", None, used, True)


@dataclass(frozen=True)
class Hyporealization:
    """A proper system that is z-affine linear: a_i = base_i + sum U z_j V.

    linear[i][j] is a tuple of (coeff, U_word, V_word) triples over the
    x-alphabet describing the words of component i that contain z_{j+1}.
    """

    base: tuple
    linear: tuple

    @property
    def h(self):
        return len(self.base)

    @classmethod
    def from_system(cls, system):
        from .sysolve import check_proper

        comps = system.components if hasattr(system, "components") else tuple(system)
        if not check_proper(comps):
            raise NotHyporealization("system is not proper")
        h = len(comps)
        base = []
        linear = [[[] for _ in range(h)] for _ in range(h)]
        for i, comp in enumerate(comps):
            b_terms = {}
            for w, c in comp.terms():
                zpos = [t for t, (k, _) in enumerate(w) if k == "z"]
                if not zpos:
                    b_terms[w] = c
                    continue
                if len(zpos) > 1:
                    raise NotHyporealization(
                        "a word carries more than one z-letter; the system is not z-affine linear"
                    )
                t = zpos[0]
                j = w[t][1]
                if j > h:
                    raise NotHyporealization(f"z-index {j} exceeds the component count {h}")
                linear[i][j - 1].append((c, w[:t], w[t + 1 :]))
            base.append(FreePoly(b_terms))
        return cls(
            tuple(base),
            tuple(tuple(tuple(cell) for cell in row) for row in linear),
        )

    def to_system(self):
        from .sysolve import ProperAlgebraicSystem

        comps = []
        for i in range(self.h):
            acc = self.base[i]
            for j in range(self.h):
                for c, u, v in self.linear[i][j]:
                    acc = acc + FreePoly.monomial(u + (("z", j + 1),) + v, c)
            comps.append(acc)
        return ProperAlgebraicSystem(tuple(comps))

    def linear_pairs(self, i, j):
        """The (U, V) polynomial pairs of component i around z_{j+1}."""
        return [
            (FreePoly.monomial(u, c), FreePoly.monomial(v)) for c, u, v in self.linear[i][j]
        ]


def hypomatrix_rep(real: Hyporealization):
    """Assemble (base, Phi) with Phi[j][i] = sum U^T (x) V over the z_{j+1} words
    of component i; the left side is re-tagged to the y-alphabet."""
    h = real.h
    x_to_y = lambda let: ("y", let[1])  # noqa: E731
    grid = [[{} for _ in range(h)] for _ in range(h)]
    for i in range(h):
        for j in range(h):
            cell = grid[j][i]
            for c, u, v in real.linear[i][j]:
                key = (tuple(x_to_y(let) for let in u[::-1]), v)
                prev = cell.get(key)
                cell[key] = c if prev is None else prev + c
    phi = BipartiteMatrix(
        [[BipartitePoly({k: c for k, c in cell.items() if c}) for cell in row] for row in grid]
    )
    return real.base, phi
