"""Seeded constructive generators of random algebraic test objects.

Everything here is exact by construction: complexes are sums of elementary
pieces conjugated by unimodular matrices, short exact sequences come from a
random subcomplex and its quotient, double diagrams from two subcomplexes
that together span.
"""

from __future__ import annotations

import random

from .braid import DoubleSesDiagram, double_ses_from_subcomplexes
from .cochain import ChainMap, CochainComplex, closure, quotient, rebase, subcomplex
from .exactness import LongSequence, ShortExactSequence, exact_sequence_from_ranks
from .linalg import Matrix, Subspace, complete_basis, inverse


def random_unimodular(n: int, rng: random.Random, spread: int = 2) -> Matrix:
    """An integer matrix of determinant +-1: permutation * lower * upper."""
    lower = [[1 if i == j else (rng.randint(-spread, spread) if j < i else 0) for j in range(n)]
             for i in range(n)]
    upper = [[rng.choice((1, -1)) if i == j else (rng.randint(-spread, spread) if j > i else 0)
              for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix.from_rows([[int(perm[i] == j) for j in range(n)] for i in range(n)], n)
    return p @ Matrix.from_rows(lower, n) @ Matrix.from_rows(upper, n)


def random_complex(rng: random.Random, lo: int = 0, length: int = 4, max_dim: int = 4) -> CochainComplex:
    """A random valid complex on degrees lo .. lo+length-1 with dims <= max_dim.

    Built from pieces ``Q -1-> Q`` (acyclic) and ``Q`` (a cohomology class),
    then conjugated degreewise by random unimodular matrices.
    """
    # pairs[i] = number of acyclic pieces from degree i to i+1
    dims = [0] * length
    pairs = [0] * length
    for i in range(length - 1):
        pairs[i] = rng.randint(0, min(max_dim - dims[i], 2))
        dims[i] += pairs[i]
        dims[i + 1] += pairs[i]
    for i in range(length):
        room = max_dim - dims[i]
        if room > 0:
            dims[i] += rng.randint(0, min(room, 2))
    # standard form: in degree i, basis = [targets of pairs[i-1]] + [sources of pairs[i]] + [classes]
    diffs = {}
    for i in range(length - 1):
        src_targets = pairs[i - 1] if i > 0 else 0
        n_src, n_tgt = dims[i], dims[i + 1]
        rows = [[0] * n_src for _ in range(n_tgt)]
        for j in range(pairs[i]):
            rows[j][src_targets + j] = 1
        diffs[lo + i] = Matrix.from_rows(rows, n_src) if n_tgt else Matrix.zeros(0, n_src)
    c = CochainComplex.build(lo, dims, diffs)
    if not c.dims:
        return c
    g = {k: random_unimodular(c.dim(k), rng) for k in c.degrees()}
    return rebase(c, g)[0]


def random_vector(n: int, rng: random.Random, spread: int = 2) -> tuple[int, ...]:
    return tuple(rng.randint(-spread, spread) for _ in range(n))


def random_spans(c: CochainComplex, rng: random.Random, density: float = 0.5) -> dict[int, Subspace]:
    spans = {}
    for k in c.degrees():
        n = c.dim(k)
        count = sum(rng.random() < density for _ in range(n))
        spans[k] = Subspace.span(n, [random_vector(n, rng) for _ in range(count)])
    return closure(c, spans)


def random_ses(rng: random.Random, length: int = 4, max_dim: int = 6) -> ShortExactSequence:
    """A random SES ``A -> B -> C`` with B random and A a random subcomplex."""
    b = random_complex(rng, lo=rng.randint(-1, 1), length=length, max_dim=max_dim)
    spans = random_spans(b, rng)
    a, inj = subcomplex(b, spans)
    c, surj = quotient(b, spans)
    return ShortExactSequence(inj, surj)


def rebased_ses(s: ShortExactSequence, rng: random.Random) -> ShortExactSequence:
    """The same SES with the middle complex in a random new basis."""
    b = s.middle
    g = {k: random_unimodular(b.dim(k), rng) for k in b.degrees()}
    b2, iso = rebase(b, g)
    ginv = {k: inverse(g[k]) for k in b.degrees()}
    inj = ChainMap.build(s.sub, b2, {k: iso.block(k) @ s.inj.block(k) for k in s.sub.degrees()})
    surj = ChainMap.build(b2, s.quotient, {k: s.surj.block(k) @ ginv[k] for k in b2.degrees()})
    return ShortExactSequence(inj, surj)


def random_double_ses(rng: random.Random, length: int = 4, max_dim: int = 4) -> DoubleSesDiagram:
    t = random_complex(rng, lo=rng.randint(-1, 1), length=length, max_dim=max_dim)
    s_spans = random_spans(t, rng, density=0.4)
    # R = closure of a complement of S plus a few random vectors
    seeds = {}
    for k in t.degrees():
        n = t.dim(k)
        comp = complete_basis(n, s_spans[k].basis)
        extra = [random_vector(n, rng) for _ in range(rng.randint(0, 1))]
        mixed = [tuple(a + b for a, b in zip(v, random_vector(n, rng, 1))) for v in comp]
        cand = Subspace.span(n, mixed + extra)
        if (cand + s_spans[k]).dim != n:
            cand = Subspace.span(n, comp + extra)
        seeds[k] = cand
    r_spans = closure(t, seeds)
    return double_ses_from_subcomplexes(t, r_spans, s_spans)


def random_exact_sequence(rng: random.Random, length: int = 6, max_rank: int = 3) -> LongSequence:
    """An exact sequence from a random rank profile, in random bases."""
    ranks = [rng.randint(0, max_rank) for _ in range(length)]
    ranks[0] = 0
    ranks[-1] = 0
    ls = exact_sequence_from_ranks(ranks)
    g = [random_unimodular(n.dim, rng) for n in ls.nodes]
    arrows = [g[i + 1] @ m @ inverse(g[i]) for i, m in enumerate(ls.arrows)]
    return LongSequence(ls.nodes, tuple(arrows), ls.period)
