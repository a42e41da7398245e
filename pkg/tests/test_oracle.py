import pytest

import reference_counts as ref
from latgen import core
from latgen.oracle import ORACLE_MAX, brute_force_family, brute_force_lattices


class TestBruteForce:
    def test_total_lattice_counts(self, oracle_lattices):
        for n in range(1, 8):
            assert len(oracle_lattices[n]) == ref.ALL_LATTICES[n - 1]

    def test_n5_classes(self, oracle_lattices):
        # four graded classes plus the pentagon
        found = oracle_lattices[5]
        graded = [lat for lat in found.values() if core.is_graded(lat)]
        assert len(found) == 5 and len(graded) == 4

    def test_n1(self):
        assert len(brute_force_lattices(1)) == 1

    def test_size_limit(self):
        with pytest.raises(ValueError):
            brute_force_lattices(ORACLE_MAX + 1)

    def test_family_filters_n7(self, oracle_lattices):
        found = oracle_lattices[7]
        assert sum(core.is_modular(l) for l in found.values()) == 16
        assert sum(core.is_graded(l) for l in found.values()) == 22
        vi = brute_force_family(7, core.is_graded, vi_only=True)
        assert len(vi) == 7

    def test_oracle_representatives_are_lattices(self, oracle_lattices):
        for found in oracle_lattices.values():
            for lat in found.values():
                assert core.is_lattice(lat)


class TestGeneratorAgreement:
    @pytest.mark.parametrize("family,pred", [
        ("graded", core.is_graded),
        ("modular", core.is_modular),
        ("semimodular", core.is_semimodular),
        ("lsm", core.is_lower_semimodular),
        ("geometric", core.is_geometric),
    ])
    def test_sets_equal_to_oracle_n7(self, family, pred):
        from latgen.canon import canonical_payload
        from latgen.generator import generate, spec_for

        got = {}
        for lat, payload in generate(spec_for(family), 7):
            got.setdefault(lat.n, set()).add(
                payload or canonical_payload(lat))
        for n in range(1, 8):
            oracle = set(brute_force_family(n, pred, vi_only=True))
            assert got.get(n, set()) == oracle, f"{family} at n={n}"
