"""Bit-exact digraph6 encoding, list files, and digests.

A record is one text line: header '&', size byte n+63 (n <= 62 only),
then the n x n adjacency matrix in row-major bit order, zero-padded to
a multiple of six bits, each six-bit group emitted as its value + 63.
Arcs run from covering element to covered element.
"""

from __future__ import annotations

import gzip
import hashlib

from .core import MAX_ELEMENTS

HEADER = 0x26  # '&'


class CodecError(ValueError):
    pass


def encode_payload(payload: bytes) -> bytes:
    """Wrap a canonical payload (size byte + matrix bytes) into a record."""
    return b"&" + payload


def encode(form) -> bytes:
    """digraph6 record for a CanonicalForm (no trailing newline)."""
    return encode_payload(form.payload)


def decode(record: bytes | str):
    """Record -> (n, arcs).  The raw digraph is returned unvalidated:
    whether it is a lattice's cover digraph is the caller's business."""
    if isinstance(record, str):
        record = record.encode("ascii")
    record = record.rstrip(b"\r\n")
    if not record or record[0] != HEADER:
        raise CodecError("missing digraph6 header '&'")
    if len(record) < 2:
        raise CodecError("record too short")
    if record[1] == 126:
        raise CodecError(f"multi-byte sizes (n > {MAX_ELEMENTS}) unsupported")
    n = record[1] - 63
    if not 1 <= n <= MAX_ELEMENTS:
        raise CodecError(f"bad size byte {record[1]}")
    body = record[2:]
    expected = (n * n + 5) // 6
    if len(body) != expected:
        raise CodecError(f"expected {expected} matrix bytes, got {len(body)}")
    arcs = []
    for idx, byte in enumerate(body):
        group = byte - 63
        if not 0 <= group < 64:
            raise CodecError(f"matrix byte {byte} out of range")
        for k in range(6):
            if group >> (5 - k) & 1:
                pos = idx * 6 + k
                if pos >= n * n:
                    raise CodecError("nonzero padding bits")
                arcs.append((pos // n, pos % n))
    return n, arcs


def _open(path, mode):
    path = str(path)
    if path.endswith(".gz"):
        return gzip.open(path, mode)
    return open(path, mode)


def write_list(path, payloads):
    """Write one record per payload, lines sorted so runs are comparable."""
    lines = sorted(encode_payload(p) for p in payloads)
    with _open(path, "wb") as fh:
        for line in lines:
            fh.write(line)
            fh.write(b"\n")
    return len(lines)


def read_list(path, strict=False):
    """Record lines (without newline).  strict: duplicate lines are an error."""
    with _open(path, "rb") as fh:
        lines = [ln.rstrip(b"\r\n") for ln in fh if ln.strip()]
    if strict and len(set(lines)) != len(lines):
        raise CodecError("duplicate record lines")
    return lines


def digest_lines(lines, algo="sha256") -> str:
    """Hex digest over the sorted, newline-terminated record lines."""
    h = hashlib.new(algo)
    for line in sorted(lines):
        h.update(line)
        h.update(b"\n")
    return h.hexdigest()


def digest_list(path, algo="sha256") -> str:
    return digest_lines(read_list(path), algo)
