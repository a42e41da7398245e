import pytest

import reference_counts as ref
from conftest import boolean_cube, fig1_lattice, fig2_sketch
from latgen import core
from latgen.canon import canonical_payload
from latgen.core import Lattice, new_initial
from latgen.generator import (
    DaughterStore,
    Family,
    FamilySpec,
    PairBudget,
    atoms_common_cover_ok,
    count_by_size,
    extend,
    generate,
    geometric_updegree_ok,
    lower_semimodular_level_ok,
    pair_budget_prune,
    run,
    semimodular_cover_ok,
    spec_for,
)


class TestGenerate:
    def test_modular_10(self):
        counts = count_by_size(generate(spec_for("modular"), 10))
        assert counts.get(10) == 28
        assert [counts.get(i, 0) for i in range(1, 11)] == ref.MODULAR_VI[:10]

    def test_geometric_12(self):
        counts = count_by_size(generate(spec_for("geometric"), 12))
        assert [counts.get(i, 0) for i in range(1, 13)] == ref.GEOMETRIC[:12]

    def test_graded_6(self):
        counts = count_by_size(generate(spec_for("graded"), 6))
        assert [counts.get(i, 0) for i in range(1, 7)] == [1, 1, 0, 1, 1, 3]

    def test_specials_come_first(self):
        stream = generate(spec_for("graded"), 5)
        first, second = next(stream)[0], next(stream)[0]
        assert (first.n, second.n) == (1, 2)

    def test_max_n_range_enforced(self):
        with pytest.raises(ValueError):
            list(generate(spec_for("graded"), 2))
        with pytest.raises(ValueError):
            list(generate(spec_for("graded"), 63))

    def test_every_output_passes_its_family_predicate(self):
        preds = {
            "graded": core.is_graded,
            "modular": core.is_modular,
            "semimodular": core.is_semimodular,
            "lsm": core.is_lower_semimodular,
            "geometric": core.is_geometric,
        }
        for fam, pred in preds.items():
            for lat, _ in generate(spec_for(fam), 9):
                assert core.is_lattice(lat)
                assert core.is_graded(lat)
                assert core.is_vertically_indecomposable(lat)
                assert pred(lat)


class TestExtend:
    def test_m2_daughters_at_6_match_oracle(self):
        from latgen.oracle import brute_force_family

        daughters, _ = extend(new_initial(2), spec_for("graded"), 6)
        got = {canonical_payload(lat) for lat, emit, _ in daughters
               if emit and lat.n == 6}
        oracle = {
            p for p, lat in brute_force_family(
                6, core.is_graded, vi_only=True).items()
            if lat.length == 3
        }
        assert got == oracle

    def test_fixed_mother_needs_no_canonical_forms(self):
        lat = Lattice([1, 2, 2, 1],
                      [0, 1, 1, (1 << 1) | (1 << 2), 1 << 1,
                       (1 << 3) | (1 << 4)])
        daughters, info = extend(lat, spec_for("graded"), 9)
        assert info["mother_class"] == "fixed"
        assert info["canon_calls"] == 0
        assert all(payload is None for _, _, payload in daughters)

    def test_simple_mother_prefix_rule(self):
        # first-element covers tried on the Fig-1 mother must be unions of
        # box prefixes: {5,6,8,11} qualifies, {5,7,9,11} does not
        from latgen._kernel_py import _Extension

        lat = fig1_lattice()
        cfg = (20, False, False, False, False, True, True)
        ext = _Extension(lat.n, lat.level_sizes, lat.cover_masks, cfg)
        assert ext.mother_class == "simple"
        good = [5, 6, 8, 11]
        bad = [5, 7, 9, 11]
        assert ext._is_prefix_union(good)
        assert not ext._is_prefix_union(bad)

    def test_duplicate_daughters_rejected_by_store(self):
        # M_2's coatoms are symmetric: one up-degree-one child under either
        # coatom gives isomorphic daughters, kept once
        daughters, info = extend(new_initial(2), spec_for("graded"), 7)
        assert info["mother_class"] == "simple"
        payloads = [p for _, _, p in daughters if p is not None]
        assert len(payloads) == len(set(payloads))


class TestFamilyChecks:
    def test_semimodular_cover_ok(self):
        fig2_cov = [0] + [1] * 10
        assert semimodular_cover_ok(fig2_cov, [4, 5])  # both covered by top
        fig1 = fig1_lattice()
        assert not semimodular_cover_ok(fig1, [5, 8])  # coatom 1 vs coatom 2
        assert semimodular_cover_ok(fig1, [10])  # singleton: no pairs

    def test_lower_semimodular_level_ok(self):
        assert not lower_semimodular_level_ok(fig2_sketch())
        # M_j extended by one universal child plus one single-cover child
        pl = core.PartialLattice.from_mother(new_initial(3), 8)
        pl.add_element({1, 2, 3})
        pl.add_element({1})
        lat = pl.complete_level()
        assert lower_semimodular_level_ok(lat)
        assert lower_semimodular_level_ok(boolean_cube())

    def test_atoms_common_cover(self):
        assert atoms_common_cover_ok(new_initial(3))
        assert atoms_common_cover_ok(Lattice.chain(4))  # single atom
        two_legs = Lattice([1, 2, 2, 1],
                           [0, 1, 1, 1 << 1, 1 << 2, (1 << 3) | (1 << 4)])
        assert not atoms_common_cover_ok(two_legs)

    def test_geometric_updegree(self):
        from latgen.core import dual

        assert geometric_updegree_ok(dual(boolean_cube()))
        assert geometric_updegree_ok(new_initial(5))
        bad = Lattice([1, 2, 2, 1],
                      [0, 1, 1, (1 << 1) | (1 << 2), 1 << 1,
                       (1 << 3) | (1 << 4)])
        assert not geometric_updegree_ok(bad)  # element 4 has up-degree 1

    def test_pair_budget_prune(self):
        assert pair_budget_prune(PairBudget(39, 11), 3)
        assert not pair_budget_prune(PairBudget(0, 0), 5)
        assert not pair_budget_prune(PairBudget(33, 11), 3)  # boundary


class TestUpdegreeOneBatch:
    def test_m2_batch_vectors_reachable(self):
        # count vectors (1,1), (2,1), (1,2) are reachable at N=7; the last
        # two are isomorphic and must collapse to one class
        daughters, _ = extend(new_initial(2), spec_for("graded"), 7)
        pure_batches = [lat for lat, emit, _ in daughters
                        if emit and all(
                            lat.cover_masks[v].bit_count() == 1
                            for v in lat.level_members(2))]
        sizes = sorted(lat.n for lat in pure_batches)
        assert sizes == [6, 7]

    def test_zero_extra_budget_forces_unique_completion(self):
        # at N=6 the diamond admits exactly one two-child completion
        daughters, _ = extend(new_initial(2), spec_for("graded"), 6)
        assert sorted(lat.n for lat, emit, _ in daughters if emit) == [6, 6]

    def test_against_brute_force_graded_7(self):
        from latgen.oracle import brute_force_family

        got = set()
        for lat, payload in generate(spec_for("graded"), 7):
            if lat.n == 7:
                got.add(payload or canonical_payload(lat))
        oracle = set(brute_force_family(7, core.is_graded, vi_only=True))
        assert got == oracle


class TestSearchOrder:
    def test_covers_added_in_decreasing_size_then_lex(self):
        from latgen import _kernel_py

        traces = []

        class Tracing(_kernel_py._Extension):
            def __init__(self, *a):
                self.trace = []
                super().__init__(*a)

            def _try_add(self, amask, a_ids):
                ok = super()._try_add(amask, a_ids)
                if ok:
                    self.trace.append(tuple(a_ids))
                    traces.append(list(self.trace))
                return ok

            def _undo_add(self):
                super()._undo_add()
                self.trace.pop()

        lat = fig1_lattice()
        cfg = (16, False, False, False, False, True, True)
        ext = Tracing(lat.n, lat.level_sizes, lat.cover_masks, cfg)
        ext.run()
        assert traces
        for seq in traces:
            sizes = [len(c) for c in seq]
            assert sizes == sorted(sizes, reverse=True)
            for a, b in zip(seq, seq[1:]):
                if len(a) == len(b):
                    assert b > a  # strictly lex increasing at equal size


class TestNeutralityAndDeterminism:
    @pytest.mark.parametrize("fam", ["modular", "lsm", "geometric"])
    def test_pair_budget_neutral(self, fam):
        base = run(spec_for(fam), 11, want_payloads=True)
        off = run(spec_for(fam), 11, want_payloads=True, use_pair_budget=False)
        assert base == off

    @pytest.mark.parametrize("fam", ["graded", "modular", "semimodular"])
    def test_shortcuts_neutral(self, fam):
        base = run(spec_for(fam), 10, want_payloads=True)
        off = run(spec_for(fam), 10, want_payloads=True, use_shortcuts=False)
        assert base == off

    def test_dual_route_equals_direct(self):
        base = run(spec_for("semimodular"), 11, want_payloads=True)
        direct = run(spec_for("semimodular", direct_semimodular=True), 11,
                     want_payloads=True)
        assert base == direct

    def test_threads_do_not_change_output(self):
        one = run(spec_for("modular"), 11, want_payloads=True, threads=1)
        two = run(spec_for("modular"), 11, want_payloads=True, threads=2)
        assert one == two


class TestDaughterStore:
    def test_accepts_once(self):
        store = DaughterStore()
        p = canonical_payload(new_initial(3))
        assert store.add(p)
        assert not store.add(p)
        assert len(store) == 1
