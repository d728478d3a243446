from __future__ import annotations

import pytest

from smithgysin.cochain import GradedSpace
from smithgysin.exactness import acyclicity_transfer, check_exact, segments
from smithgysin.braid import splice
from smithgysin.instances import (
    ActionInstance,
    InstanceError,
    KindMismatch,
    SequenceKind,
    as_general,
    build_sequence,
    catalog,
    corrupted_instance,
    find_instance,
    gysin_transfer,
    verify_instance,
    verify_kind,
)
from smithgysin.simplicial import path

K = SequenceKind

# Betti tables of the models, worked out by hand: spheres, an interval, two points
S2 = {"M": (0, (1, 0, 1)), "B,F": (1, (1,)), "F": (0, (2,))}
S4 = {"M": (0, (1, 0, 0, 0, 1)), "B,F": (1, (1,)), "F": (0, (2,))}


def table(spec):
    return {key: GradedSpace(lo, dims) for key, (lo, dims) in spec.items()}


def smith_gysin_dims(t, n):
    """Nodes H^k(M), H^{k-n}(B,F) + H^k(F), H^{k+1}(B,F) for k = -n-2 .. 8."""
    out = []
    for k in range(-n - 2, 9):
        out += [t["M"][k], t["B,F"][k - n] + t["F"][k], t["B,F"][k + 1]]
    return out


def strip(dims):
    dims = list(dims)
    while dims and dims[0] == 0:
        dims.pop(0)
    while dims and dims[-1] == 0:
        dims.pop()
    return dims


class TestCatalog:
    def test_size_and_names(self):
        names = [i.name for i in catalog()]
        assert len(names) >= 5 and len(set(names)) == len(names)
        assert set(names) >= {"s1-rotation-s2", "s1-hopf-s3", "s3-free-s7", "s3-semifree-s4", "s3-conjugation-s3"}

    @pytest.mark.parametrize("name", [i.name for i in catalog()])
    def test_every_supported_kind_passes(self, name):
        inst = find_instance(name)
        report = verify_instance(inst)
        assert report.ok, [(r.kind, r.message) for r in report.results if not r.ok]
        assert report.model_mismatches == ()
        assert {r.kind for r in report.results} == set(inst.supported_kinds())

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            find_instance("nope")


class TestSequences:
    def test_s4_smith_gysin_dims(self):
        ls = build_sequence(find_instance("s3-semifree-s4"), K.S3_SMITH_GYSIN)
        assert strip(ls.dims) == strip(smith_gysin_dims(table(S4), 3))
        assert [(s.stop - s.start, s.alternating_sum) for s in segments(ls.dims)] == [(3, 0), (2, 0)]
        assert check_exact(ls).exact

    def test_s2_smith_gysin_dims(self):
        ls = build_sequence(find_instance("s1-rotation-s2"), K.S1_SMITH_GYSIN)
        assert strip(ls.dims) == strip(smith_gysin_dims(table(S2), 1))

    def test_splice_pivots_match_kinds(self):
        inst = find_instance("s3-semifree-s4")
        e = splice(inst.braid, "E")
        assert strip(e.dims) == strip(build_sequence(inst, K.S3_SMITH_GYSIN).dims)
        f = splice(inst.braid, "F")
        assert strip(f.dims) == strip(build_sequence(inst, K.S3_SECOND).dims)

    def test_free_s7_gysin(self):
        ls = build_sequence(find_instance("s3-free-s7"), K.S3_FREE_GYSIN)
        # H^k(B) -> H^k(M) -> H^{k-3}(B): S4 vs S7, connecting rank 1 at degree 4
        assert [n.dim for n in ls.nodes if n.dim] == [1, 1, 1, 1, 1, 1]
        assert all(s.alternating_sum == 0 for s in segments(ls.dims))

    def test_conjugation_exotic_node(self):
        inst = find_instance("s3-conjugation-s3")
        assert inst.exotic_node() == GradedSpace(3, (1,))
        assert inst.term("B,Sigma") == GradedSpace(0, ())
        ls = build_sequence(inst, K.S3_SMITH_GYSIN)
        exotic_nodes = [n for n in ls.nodes if any("M^S1" in s.label and s.dim for s in n.summands)]
        assert [n.degree for n in exotic_nodes] == [3]

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatch):
            build_sequence(find_instance("s1-rotation-s2"), K.S3_SMITH_GYSIN)
        assert verify_kind(find_instance("s1-rotation-s2"), K.S3_SMITH_GYSIN).status == "structural-error"


class TestDegeneration:
    def test_general_builder_reproduces_semifree(self):
        inst = find_instance("s3-semifree-s4")
        general = as_general(inst)
        assert general.action_class == "general"
        for kind in (K.S3_SMITH_GYSIN, K.S3_SECOND):
            a, b = build_sequence(inst, kind), build_sequence(general, kind)
            assert a.dims == b.dims
        assert verify_instance(general).ok


class TestCorrupted:
    def test_three_fixed_points_fail(self):
        report = verify_instance(corrupted_instance(), [K.S3_SMITH_GYSIN])
        assert not report.ok
        result = report.results[-1]
        assert result.status == "fail" and result.feasible is False
        assert any(s.alternating_sum for s in result.segments)


class TestValidation:
    def test_s1_general_not_modeled(self):
        with pytest.raises(InstanceError):
            ActionInstance(name="x", group="S1", action_class="general")

    def test_bad_group(self):
        with pytest.raises(InstanceError):
            ActionInstance(name="x", group="SO3", action_class="free")

    def test_free_action_without_fixed_points(self):
        interval = path(2)
        with pytest.raises(InstanceError):
            ActionInstance(name="x", group="S3", action_class="free", orbit=interval, fixed=interval)


class TestTransfer:
    @pytest.mark.parametrize("name", ["s1-rotation-s2", "s3-semifree-s4"])
    def test_bottom_row_certified(self, name):
        t = gysin_transfer(find_instance(name))
        report = acyclicity_transfer(t)
        assert report.certified
        assert check_exact(t.bottom).exact
