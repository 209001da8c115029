"""Seeded generator of tame automorphisms with known inverses.

A factor is either an elementary map x_i -> x_i + h(x_{j != i}) (inverse
x_i -> x_i - h) or an invertible integer linear map (inverse exact rational).
Compositions of a few factors give invertible maps of modest degree whose true
inverses are known by construction, so positive results can be cross-checked
coefficient-exactly.
"""

from freeinv import FreePoly, compose, identity_map
from freeinv import linalg
from freeinv.mateval import random_invertible


def _random_elementary(rng, g, max_deg=3):
    i = rng.randrange(g)
    others = [j for j in range(g) if j != i]
    if not others:
        others = [i]  # g = 1: fall back to a linear rescale-free shift, degree 0 unused
    terms = {}
    for _ in range(rng.randint(1, 2)):
        length = rng.randint(1, max_deg)
        word = tuple(("x", rng.choice(others) + 1) for _ in range(length))
        coeff = rng.choice([-2, -1, 1, 2])
        terms[word] = terms.get(word, 0) + coeff
    h = FreePoly({w: c for w, c in terms.items() if c})
    fwd = list(identity_map(g))
    bwd = list(identity_map(g))
    fwd[i] = fwd[i] + h
    bwd[i] = bwd[i] - h
    return tuple(fwd), tuple(bwd)


def _random_linear(rng, g):
    mat = random_invertible(rng, g, bound=2)
    inv = linalg.inverse(mat)
    fwd = tuple(
        sum(
            (FreePoly.letter("x", s + 1) * mat[s][i] for s in range(g)),
            FreePoly.zero(),
        )
        for i in range(g)
    )
    bwd = tuple(
        sum(
            (FreePoly.letter("x", s + 1) * inv[s][i] for s in range(g)),
            FreePoly.zero(),
        )
        for i in range(g)
    )
    return fwd, bwd


def random_tame_pair(rng, g=None, max_factors=4, max_deg=3, deg_cap=6, size_cap=60):
    """A (p, q_true) pair with q_true the composition of the factor inverses.

    Rejection-sampled so that both maps stay at desk scale.
    """
    while True:
        gg = g if g is not None else rng.randint(2, 3)
        n_factors = rng.randint(1, max_factors)
        factors = []
        for _ in range(n_factors):
            if rng.random() < 0.35:
                factors.append(_random_linear(rng, gg))
            else:
                factors.append(_random_elementary(rng, gg, max_deg))
        p = identity_map(gg)
        q = identity_map(gg)
        for fwd, bwd in factors:
            p = compose(p, fwd)
            q = compose(bwd, q)
        deg_p = max(int(c.degree()) for c in p)
        deg_q = max(int(c.degree()) for c in q)
        size = sum(len(c) for c in p) + sum(len(c) for c in q)
        if 1 <= deg_p and deg_p * deg_q <= deg_cap * deg_cap and size <= size_cap:
            return p, q
