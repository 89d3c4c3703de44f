"""Tokenizer and signed hashing primitives.

Everything here is pinned byte-for-byte: the same text must produce the
same vector on any platform, since trained models and stored vectors are
only comparable under an identical text pipeline.
"""

from __future__ import annotations

import re

import numpy as np

from patlytics.features.schema import FeatureSchema

NUM_SENTINEL = "<num>"

# ASCII-only on purpose: locale-independent and stable across platforms.
_TOKEN_RE = re.compile(r"[a-z0-9]+")

FNV_OFFSET_BASIS = 14695981039346656037
FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1

# n-gram parts are joined with a non-printing separator so ("ab","c") and
# ("a","bc") never collide.
NGRAM_SEP = "\x1f"


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on non-alphanumerics.

    Tokens shorter than two characters are dropped, then pure-digit tokens
    collapse to the "<num>" sentinel.
    """
    tokens = _TOKEN_RE.findall(text.lower())
    return [NUM_SENTINEL if t.isdigit() else t for t in tokens if len(t) >= 2]


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit: xor each byte into the hash, then multiply, mod 2^64."""
    h = FNV_OFFSET_BASIS
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & _MASK64
    return h


def hashed_text_features(tokens: list[str], schema: FeatureSchema) -> np.ndarray:
    """Signed hashed n-gram bag, L2-normalized.

    Each n-gram hashes to a bucket (hash mod dim); bit 63 of the hash picks
    the sign. The all-zero vector (no tokens) is left untouched, so the
    block's norm is always 0 or 1.
    """
    vec = np.zeros(schema.hash_dim, dtype=np.float64)
    for order in sorted(schema.ngram_orders):
        for i in range(len(tokens) - order + 1):
            gram = NGRAM_SEP.join(tokens[i : i + order])
            h = fnv1a64(gram.encode("utf-8"))
            sign = -1.0 if (h >> 63) & 1 else 1.0
            vec[h % schema.hash_dim] += sign
    norm = float(np.linalg.norm(vec))
    if norm > 0.0:
        vec /= norm
    return vec
