"""Shared fixtures: code families and brute-force oracles.

The oracle enumerates full codeword spans by a plain binary-reflected Gray
walk over generator rows; it shares no code with the census or congruence
paths it is used to check.
"""

from __future__ import annotations

import pytest

from qrweight import build_family


def exhaustive_distribution(rows, n) -> list[int]:
    """Full weight distribution of the span of ``rows``, counts indexed by weight."""
    counts = [0] * (n + 1)
    counts[0] = 1
    word = 0
    for i in range(1, 1 << len(rows)):
        word ^= rows[(i & -i).bit_length() - 1]
        counts[word.bit_count()] += 1
    return counts


def span_words(rows) -> set[int]:
    """All codewords of the span (use only for small dimensions)."""
    words = set()
    word = 0
    words.add(0)
    for i in range(1, 1 << len(rows)):
        word ^= rows[(i & -i).bit_length() - 1]
        words.add(word)
    return words


@pytest.fixture(scope="session")
def family7():
    return build_family(7)


@pytest.fixture(scope="session")
def family17():
    return build_family(17)


@pytest.fixture(scope="session")
def family41():
    return build_family(41)


@pytest.fixture(scope="session")
def family137():
    return build_family(137)


@pytest.fixture(scope="session")
def dist17(family17):
    return exhaustive_distribution(family17.extended.rows, family17.n_extended)


@pytest.fixture(scope="session")
def dist41(family41):
    return exhaustive_distribution(family41.extended.rows, family41.n_extended)
