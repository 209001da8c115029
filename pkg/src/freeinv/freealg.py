"""Free (noncommutative) polynomials over tagged multi-alphabets.

A letter is a (kind, index) pair with kind in "xyzwhk" and index >= 1; a word
is a tuple of letters (the empty tuple is the multiplicative identity).  A
FreePoly is a finite word -> coefficient map over the exact Gaussian-rational
field; zero coefficients are never stored, so degree queries are O(#terms).

Canonical term order everywhere is graded lexicographic: by word length, then
letter by letter with kinds ranked x < y < z < w < h < k.
"""

from __future__ import annotations

from .scalars import GaussianRational, as_gaussian

KINDS = "xyzwhk"
_KIND_RANK = {k: r for r, k in enumerate(KINDS)}

NEG_INF = float("-inf")
POS_INF = float("inf")

EMPTY_WORD = ()


class UnboundLetter(KeyError):
    """A substitution image is missing for a letter that occurs in the input."""


class ArityMismatch(ValueError):
    """A letter falls outside the declared alphabet of an operation."""


def letter(kind: str, index: int):
    if kind not in _KIND_RANK:
        raise ValueError(f"unknown letter kind {kind!r}")
    if index < 1:
        raise ValueError("letter index must be >= 1")
    return (kind, index)


def word_key(w):
    """Graded-lexicographic sort key."""
    return (len(w), tuple((_KIND_RANK[k], i) for (k, i) in w))


def z_count(w, kind="z"):
    return sum(1 for (k, _) in w if k == kind)


def _letter_str(let):
    return f"{let[0]}{let[1]}"


def word_str(w) -> str:
    """Compressed display like 'x1*x2^2'; the empty word prints as '1'."""
    if not w:
        return "1"
    parts = []
    run_letter, run = w[0], 1
    for let in w[1:]:
        if let == run_letter:
            run += 1
        else:
            parts.append(_letter_str(run_letter) + (f"^{run}" if run > 1 else ""))
            run_letter, run = let, 1
    parts.append(_letter_str(run_letter) + (f"^{run}" if run > 1 else ""))
    return "*".join(parts)


class FreePoly:
    """A finite sum of words with nonzero exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                g = as_gaussian(c)
                if g is None:
                    raise TypeError(f"bad coefficient {c!r}")
                if g:
                    clean[tuple(w)] = g
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "FreePoly":
        # internal: terms must already be normalized (no zeros, tuple keys)
        p = object.__new__(cls)
        p._terms = terms
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({EMPTY_WORD: GaussianRational(1)})

    @classmethod
    def scalar(cls, c):
        g = as_gaussian(c)
        if g is None:
            raise TypeError(f"bad scalar {c!r}")
        return cls._raw({EMPTY_WORD: g} if g else {})

    @classmethod
    def letter(cls, kind: str, index: int):
        return cls._raw({(letter(kind, index),): GaussianRational(1)})

    @classmethod
    def monomial(cls, w, coeff=1):
        g = as_gaussian(coeff)
        if g is None:
            raise TypeError(f"bad coefficient {coeff!r}")
        return cls._raw({tuple(w): g} if g else {})

    # -- inspection --------------------------------------------------------

    def terms(self):
        return self._terms.items()

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]))

    def coefficient(self, w) -> GaussianRational:
        return self._terms.get(tuple(w), GaussianRational(0))

    def constant_term(self) -> GaussianRational:
        return self._terms.get(EMPTY_WORD, GaussianRational(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, FreePoly):
            return self._terms == other._terms
        g = as_gaussian(other)
        if g is None:
            return NotImplemented
        return self._terms == ({EMPTY_WORD: g} if g else {})

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def degree(self):
        """Max word length, or -inf for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(len(w) for w in self._terms)

    def dz_degree(self, kind="z"):
        """Min total length among words containing a letter of `kind`; +inf if none."""
        best = POS_INF
        for w in self._terms:
            if len(w) < best and any(k == kind for (k, _) in w):
                best = len(w)
        return best

    def letters(self):
        out = set()
        for w in self._terms:
            out.update(w)
        return out

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return FreePoly._raw({w: -c for w, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            g = as_gaussian(other)
            if g is None:
                return NotImplemented
            other = FreePoly.scalar(g)
        if len(self._terms) < len(other._terms):
            self, other = other, self
        out = dict(self._terms)
        for w, c in other._terms.items():
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                s = prev + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return FreePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, FreePoly):
            return self + (-other)
        g = as_gaussian(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FreePoly):
            g = as_gaussian(other)
            if g is None:
                return NotImplemented
            if not g:
                return FreePoly.zero()
            return FreePoly._raw({w: c * g for w, c in self._terms.items()})
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                prev = out.get(w)
                if prev is None:
                    out[w] = c
                else:
                    s = prev + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
        return FreePoly._raw(out)

    def __rmul__(self, other):
        g = as_gaussian(other)
        if g is None:
            return NotImplemented
        return self * g

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        out = FreePoly.one()
        for _ in range(n):
            out = out * self
        return out

    # -- structure ---------------------------------------------------------

    def transpose(self):
        """Reverse every word; an involutive anti-automorphism."""
        out = {}
        for w, c in self._terms.items():
            rw = w[::-1]
            prev = out.get(rw)
            out[rw] = c if prev is None else prev + c
        return FreePoly._raw({w: c for w, c in out.items() if c})

    def truncate(self, bound: int):
        """Drop all words of length > bound."""
        if bound < 0:
            raise ValueError("truncation bound must be >= 0")
        return FreePoly._raw({w: c for w, c in self._terms.items() if len(w) <= bound})

    def homogeneous_part(self, m: int):
        return FreePoly._raw({w: c for w, c in self._terms.items() if len(w) == m})

    def by_degree(self):
        out = {}
        for w, c in self._terms.items():
            out.setdefault(len(w), {})[w] = c
        return {m: FreePoly._raw(t) for m, t in out.items()}

    def __repr__(self):
        from .parsing import format_poly

        return f"FreePoly({format_poly(self)!r})"

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)


def substitute_tracked(f: FreePoly, images, *, default_identity=False, trunc=None):
    """Apply the algebra homomorphism letter -> images[letter].

    Returns (result, dropped) where dropped flags that some word of the true
    image exceeded `trunc` and was pruned.  Pruning partial products is sound
    because word lengths never shrink under concatenation.
    """
    out = {}
    dropped = False
    for w, coeff in f._terms.items():
        acc = {EMPTY_WORD: coeff}
        for let in w:
            img = images.get(let)
            nxt = {}
            if img is None:
                if not default_identity:
                    raise UnboundLetter(f"no substitution image for letter {_letter_str(let)}")
                for aw, ac in acc.items():
                    nw = aw + (let,)
                    if trunc is not None and len(nw) > trunc:
                        dropped = True
                        continue
                    nxt[nw] = ac
            else:
                for aw, ac in acc.items():
                    for iw, ic in img._terms.items():
                        nw = aw + iw
                        if trunc is not None and len(nw) > trunc:
                            dropped = True
                            continue
                        c = ac * ic
                        prev = nxt.get(nw)
                        if prev is None:
                            nxt[nw] = c
                        else:
                            s = prev + c
                            if s:
                                nxt[nw] = s
                            else:
                                del nxt[nw]
            acc = nxt
            if not acc:
                break
        for aw, ac in acc.items():
            prev = out.get(aw)
            if prev is None:
                out[aw] = ac
            else:
                s = prev + ac
                if s:
                    out[aw] = s
                else:
                    del out[aw]
    return FreePoly._raw(out), dropped


def substitute(f: FreePoly, images, *, default_identity=False, trunc=None) -> FreePoly:
    result, _ = substitute_tracked(f, images, default_identity=default_identity, trunc=trunc)
    return result


def rename_letters(f: FreePoly, mapper) -> FreePoly:
    """Apply a letter -> letter map (dict or callable) to every word."""
    if isinstance(mapper, dict):
        fn = lambda let: mapper.get(let, let)  # noqa: E731
    else:
        fn = mapper
    out = {}
    for w, c in f._terms.items():
        nw = tuple(fn(let) for let in w)
        prev = out.get(nw)
        out[nw] = c if prev is None else prev + c
    return FreePoly._raw({w: c for w, c in out.items() if c})


def swap_kinds(f: FreePoly, kind_a: str, kind_b: str) -> FreePoly:
    """Exchange two letter families index-by-index."""

    def fn(let):
        k, i = let
        if k == kind_a:
            return (kind_b, i)
        if k == kind_b:
            return (kind_a, i)
        return let

    return rename_letters(f, fn)


def identity_map(g: int):
    return tuple(FreePoly.letter("x", i + 1) for i in range(g))


def compose(p, q):
    """Componentwise composition p(q(x)); components of p must live over x1..len(q)."""
    images = {("x", i + 1): qi for i, qi in enumerate(q)}
    return tuple(substitute(pi, images) for pi in p)


def map_degree(p):
    """Max component degree of a polynomial tuple (-inf when all zero)."""
    return max((comp.degree() for comp in p), default=NEG_INF)


def check_alphabet(p, g: int, kinds=("x",)):
    """Verify every letter of the tuple p lies in the declared alphabet."""
    for comp in p:
        for (k, i) in comp.letters():
            if k not in kinds or i > g:
                raise ArityMismatch(
                    f"letter {k}{i} outside the declared alphabet "
                    f"({'/'.join(kinds)} with index <= {g})"
                )
