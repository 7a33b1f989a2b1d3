"""Seeded random sampling.

Streams come from numpy's Philox-4x64 counter-based bit generator. A 64-bit seed is expanded
through ``SeedSequence``; each named check spawns its own child stream so results do not
depend on which other checks ran.
"""
import zlib

import numpy as np

ALGORITHM = "philox4x64"


def stream(seed, name):
    """Independent generator for the check called ``name``."""
    key = zlib.crc32(name.encode("utf-8"))
    sequence = np.random.SeedSequence(entropy=int(seed) & (2 ** 64 - 1), spawn_key=(key,))
    return np.random.Generator(np.random.Philox(sequence))


def unit_vectors(rng, n):
    angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return np.column_stack([np.cos(angles), np.sin(angles)])


def interior_points(domain, rng, n, depth=(0.0, 0.9)):
    """Points ``base + s*omega(phi)*d(phi)`` with ``s`` uniform in ``depth``."""
    phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    s = rng.uniform(depth[0], depth[1], size=n)
    omega = domain.radial(phi)[0]
    return domain.base_point + (s * omega)[:, None] * domain.direction(phi)


def interior_pairs(domain, rng, n, depth=(0.0, 0.9)):
    return interior_points(domain, rng, n, depth), interior_points(domain, rng, n, depth)
