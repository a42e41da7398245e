import pytest

from conftest import boolean_cube, fig1_lattice
from latgen import d6
from latgen.canon import CanonicalForm, canonical_form, canonical_payload
from latgen.core import Lattice, new_initial


class TestEncode:
    def test_two_chain(self):
        form = canonical_form(Lattice.chain(2))
        assert d6.encode(form) == b"&AO"

    def test_single_vertex(self):
        # one matrix bit, padded to one six-bit group of zeros
        form = canonical_form(Lattice.chain(1))
        assert d6.encode(form) == b"&@?"

    def test_m3_roundtrip(self):
        form = canonical_form(new_initial(3))
        n, arcs = d6.decode(d6.encode(form))
        assert n == 5
        assert sorted(arcs) == sorted(form.edges)
        assert len(arcs) == 6

    @pytest.mark.parametrize("lat_fn", [boolean_cube, fig1_lattice,
                                        lambda: new_initial(7)])
    def test_roundtrip(self, lat_fn):
        form = canonical_form(lat_fn())
        n, arcs = d6.decode(d6.encode(form))
        assert (n, tuple(sorted(arcs))) == (form.n, form.edges)


class TestDecode:
    def test_bad_header(self):
        with pytest.raises(d6.CodecError):
            d6.decode(b"AO")

    def test_bad_length(self):
        with pytest.raises(d6.CodecError):
            d6.decode(b"&AOO")
        with pytest.raises(d6.CodecError):
            d6.decode(b"&A")

    def test_multibyte_size_rejected(self):
        with pytest.raises(d6.CodecError):
            d6.decode(b"&~??")

    def test_nonzero_padding_rejected(self):
        # n=2 uses 4 of 6 bits; setting padding bit 5 must fail
        with pytest.raises(d6.CodecError):
            d6.decode(bytes([0x26, 63 + 2, 63 + 1]))

    def test_zero_matrix_decodes(self):
        assert d6.decode(b"&A?") == (2, [])

    def test_decode_does_not_validate_lattices(self):
        # a directed two-cycle decodes fine; validation is the caller's job
        rec = bytes([0x26, 63 + 2, 63 + 0b011000])
        n, arcs = d6.decode(rec)
        assert n == 2 and sorted(arcs) == [(0, 1), (1, 0)]


class TestLists:
    def test_modular_10_list_has_28_distinct_lines(self, tmp_path):
        from latgen.generator import run, spec_for

        _counts, lines = run(spec_for("modular"), 10, want_payloads=True)
        ten = [p for p in lines if p[0] - 63 == 10]
        assert len(ten) == 28 and len(set(ten)) == 28
        path = tmp_path / "mod10.d6"
        d6.write_list(path, ten)
        back = d6.read_list(path, strict=True)
        assert len(back) == 28

    def test_write_sorts_lines(self, tmp_path):
        payloads = [canonical_payload(new_initial(j)) for j in (5, 2, 3)]
        path = tmp_path / "t.d6"
        d6.write_list(path, payloads)
        lines = d6.read_list(path)
        assert lines == sorted(lines)

    def test_strict_read_rejects_duplicates(self, tmp_path):
        path = tmp_path / "dup.d6"
        path.write_bytes(b"&AO\n&AO\n")
        with pytest.raises(d6.CodecError):
            d6.read_list(path, strict=True)

    def test_empty_digest_is_digest_of_empty_string(self):
        import hashlib

        assert d6.digest_lines([]) == hashlib.sha256(b"").hexdigest()

    def test_digest_is_order_independent(self):
        a = d6.digest_lines([b"&AO", b"&@?"])
        b = d6.digest_lines([b"&@?", b"&AO"])
        assert a == b

    def test_gzip_transparent(self, tmp_path):
        path = tmp_path / "z.d6.gz"
        d6.write_list(path, [canonical_payload(new_initial(2))])
        assert d6.read_list(path) == [d6.encode_payload(
            canonical_payload(new_initial(2)))]

    def test_md5_available(self):
        import hashlib

        assert d6.digest_lines([b"&AO"], algo="md5") == hashlib.md5(
            b"&AO\n").hexdigest()
