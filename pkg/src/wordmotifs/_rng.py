"""Deterministic seed derivation for independent random streams.

Every random stream in the package is derived from a user seed plus a
textual path (e.g. ``("replica", seed, index)``) through SHA-256, so runs
are reproducible across platforms and processes and independent streams
never overlap by construction of distinct paths.
"""
from __future__ import annotations

import hashlib
import random


def derive_seed(*parts) -> int:
    """64-bit seed from SHA-256 of the ':'-joined string form of parts."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(*parts) -> random.Random:
    return random.Random(derive_seed(*parts))
