"""Canonical forms, automorphism analysis, mother classification, hash keys."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import backend
from .core import Lattice

_HASH_PERSONS = (b"latgen-key-1", b"latgen-key-2", b"latgen-key-3")


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical relabeling of a cover digraph; equal forms <=> isomorphic.

    `payload` is the digraph6 line body (size byte + packed matrix),
    `edges` the sorted canonical cover arcs derived from it.
    """

    n: int
    edges: tuple

    @classmethod
    def from_payload(cls, payload: bytes) -> "CanonicalForm":
        n = payload[0] - 63
        edges = []
        for idx, byte in enumerate(payload[1:]):
            group = byte - 63
            for k in range(6):
                if group >> (5 - k) & 1:
                    pos = idx * 6 + k
                    if pos < n * n:
                        edges.append((pos // n, pos % n))
        return cls(n, tuple(edges))

    @property
    def payload(self) -> bytes:
        nbytes = (self.n * self.n + 5) // 6
        arr = bytearray(nbytes)
        for u, v in self.edges:
            idx = u * self.n + v
            arr[idx // 6] |= 1 << (5 - idx % 6)
        return bytes([63 + self.n]) + bytes(63 + b for b in arr)


@dataclass(frozen=True)
class HashKeys:
    k1: int
    k2: int
    k3: int


@dataclass(frozen=True)
class MotherClass:
    """How much isomorph testing a mother's daughters need.

    kind 'fixed': every atom is a singleton automorphism orbit, daughters
    need no testing at all.  'simple': atoms split into symmetric boxes
    (stored ordered, members ascending).  'other': no shortcut.
    """

    kind: str
    boxes: tuple = ()


@dataclass(frozen=True)
class Automorphisms:
    orbits: tuple  # tuple of orbits, each a tuple of vertex ids
    generators: tuple  # tuple of permutations (image tuples)


def canonical_payload(lat: Lattice) -> bytes:
    return backend.get_impl().canon_payload(lat.n, lat.cover_masks, lat.level_of)


def canonical_form(lat: Lattice) -> CanonicalForm:
    return CanonicalForm.from_payload(canonical_payload(lat))


def canonical_lattice(lat: Lattice) -> Lattice:
    """The canonically relabeled copy of `lat`."""
    form = canonical_form(lat)
    return Lattice.from_arcs(form.n, list(form.edges))


def automorphisms(lat: Lattice) -> Automorphisms:
    roots, gens = backend.get_impl().automorphism_data(
        lat.n, lat.cover_masks, lat.level_of
    )
    grouped = {}
    for v, r in enumerate(roots):
        grouped.setdefault(r, []).append(v)
    orbits = tuple(tuple(grouped[r]) for r in sorted(grouped))
    return Automorphisms(orbits, tuple(gens))


def classify_mother(lat: Lattice) -> MotherClass:
    """Classify a finished lattice whose atom level is about to be extended."""
    kind, boxes = backend.get_impl().classify_mother_arrays(
        lat.n, lat.level_sizes, lat.cover_masks
    )
    return MotherClass(kind, boxes)


def hash_keys(form: CanonicalForm | bytes) -> HashKeys:
    """Three independent 64-bit digests of the canonical payload bytes."""
    payload = form if isinstance(form, bytes) else form.payload
    keys = [
        int.from_bytes(
            hashlib.blake2b(payload, digest_size=8, person=person).digest(), "big"
        )
        for person in _HASH_PERSONS
    ]
    return HashKeys(*keys)
