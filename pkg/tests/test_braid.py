from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smithgysin.braid import (
    ARROWS,
    FAMILIES,
    STRANDS,
    Braid,
    BraidNotExact,
    InvalidDiagram,
    braid_from_double_ses,
    double_ses_from_subcomplexes,
    splice,
    validate_braid,
    validate_double_ses,
    zero_braid,
)
from smithgysin.cochain import ChainMap, StructuralError
from smithgysin.exactness import check_exact, les_of_ses
from smithgysin.generators import random_complex, random_double_ses, random_spans
from smithgysin.linalg import Matrix, Subspace, rank

seeds = st.integers(0, 10**6)


def mutate(b: Braid, rng: random.Random) -> Braid:
    cands = [(key, k) for key in ARROWS for k in range(b.lo, b.hi + 1) if all(b.arrow(key, k).shape)]
    key, k = rng.choice(cands)
    r, c = b.arrow(key, k).shape
    while True:
        delta = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(c)] for _ in range(r)], c)
        if not delta.is_zero():
            return b.perturbed(key, k, delta)


def full(t):
    return {k: Subspace.full(t.dim(k)) for k in t.degrees()}


class TestZeroBraid:
    def test_commutative_exact(self):
        report = validate_braid(zero_braid(0, 3))
        assert report.ok and report.summary() == "commutative exact"

    @pytest.mark.parametrize("pivot", ["E", "F"])
    def test_splice_is_zero(self, pivot):
        ls = splice(zero_braid(), pivot)
        assert set(ls.dims) == {0} and check_exact(ls).exact

    def test_bad_pivot(self):
        with pytest.raises(ValueError):
            splice(zero_braid(), "A")


class TestStructure:
    def test_shapes_checked(self):
        b = zero_braid()
        arrows = dict(b.arrows)
        arrows["AB"] = (Matrix.zeros(1, 0),)
        with pytest.raises(StructuralError):
            Braid(0, 0, dict(b.dims), arrows)

    def test_every_arrow_in_a_strand(self):
        assert sorted(k for s in STRANDS.values() for k in s) == sorted(ARROWS)
        assert {f for src, dst, _ in ARROWS.values() for f in (src, dst)} == set(FAMILIES)


class TestDegenerate:
    def test_r_equals_t(self):
        # P = S, R = T, Q = 0: the two rows agree and the columns are isomorphisms
        rng = random.Random(3)
        t = random_complex(rng, max_dim=4)
        d = double_ses_from_subcomplexes(t, full(t), random_spans(t, rng))
        b = braid_from_double_ses(d)
        assert validate_braid(b).ok
        assert b.strand(1).dims == b.strand(3).dims
        for k in range(b.lo, b.hi + 1):
            assert b.dim("D", k) == 0
            for key in ("AE", "FC"):
                m = b.arrow(key, k)
                assert m.nrows == m.ncols == rank(m)

    def test_c_zero_splice_is_single_les(self):
        rng = random.Random(4)
        t = random_complex(rng, max_dim=4)
        d = double_ses_from_subcomplexes(t, random_spans(t, rng), full(t))
        b = braid_from_double_ses(d)
        assert all(b.dim("B", k) == 0 for k in range(b.lo, b.hi + 1))
        col = les_of_ses(d.rows_and_columns()["col1"])
        assert splice(b, "E").trimmed().dims == col.trimmed().dims

    def test_invalid_diagram_rejected(self):
        d = random_double_ses(random.Random(1))
        bad = ChainMap.zero(d.p_r.source, d.p_r.target)
        broken = type(d)(**{**d.__dict__, "p_r": bad})
        assert d.p_r.source.dims
        assert not validate_double_ses(broken).ok
        with pytest.raises(InvalidDiagram):
            braid_from_double_ses(broken)


def test_splice_refuses_broken_braid():
    b = braid_from_double_ses(random_double_ses(random.Random(7)))
    with pytest.raises(BraidNotExact):
        splice(mutate(b, random.Random(0)), "E")


@given(seeds)
def test_random_double_ses_gives_exact_braid(seed):
    d = random_double_ses(random.Random(seed))
    assert validate_double_ses(d).ok
    b = braid_from_double_ses(d)
    assert validate_braid(b).ok
    for pivot in "EF":
        assert check_exact(splice(b, pivot)).exact


@given(seeds)
def test_single_arrow_mutation_detected(seed):
    rng = random.Random(seed)
    b = braid_from_double_ses(random_double_ses(rng))
    if not any(all(b.arrow(key, k).shape) for key in ARROWS for k in range(b.lo, b.hi + 1)):
        return
    assert not validate_braid(mutate(b, rng)).ok


@given(seeds)
def test_strands_are_the_four_les(seed):
    d = random_double_ses(random.Random(seed))
    b = braid_from_double_ses(d)
    sequences = d.rows_and_columns()
    for strand, name in ((1, "row1"), (3, "row2"), (2, "col1"), (4, "col2")):
        got = [x for x in b.strand(strand).dims if x]
        want = [x for x in les_of_ses(sequences[name]).dims if x]
        assert got == want
