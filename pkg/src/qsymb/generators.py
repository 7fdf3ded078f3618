"""
Generators of the q-deformed algebras and the total order defining normal form

Within the position-momentum family X < P < Lambda < LambdaInv; the
oscillator family orders ADag < A; hatted generators sort before the tilde
ones. Spin symbols are listed for completeness but never rewritten: the spin
sector is handled through structure constants.
"""

from enum import Enum
from typing import Dict, Tuple


class Generator(Enum):
    """Generator kinds with (order rank, parser symbol, family)"""

    X = (0, "x", "hat")
    P = (1, "p", "hat")
    Y = (2, "y", "hat")
    Lambda = (3, "L", "hat")
    LambdaInv = (4, "Linv", "hat")
    ADag = (5, "adag", "oscillator")
    A = (6, "a", "oscillator")
    Xt = (7, "xt", "tilde")
    Yt = (8, "yt", "tilde")
    LambdaT = (9, "Lt", "tilde")
    Sx = (10, "Sx", "spin")
    Sy = (11, "Sy", "spin")
    Sz = (12, "Sz", "spin")

    def __init__(self, rank: int, symbol: str, family: str):
        self.rank = rank
        self.symbol = symbol
        self.family = family

    def __lt__(self, other: "Generator") -> bool:
        if not isinstance(other, Generator):
            return NotImplemented
        return self.rank < other.rank

    def __str__(self) -> str:
        return self.symbol


Word = Tuple[Generator, ...]

SYMBOL_TABLE: Dict[str, Generator] = {generator.symbol: generator for generator in Generator}


def inversions(word: Word) -> int:
    """Number of out-of-order pairs in ``word``"""
    count = 0
    for i, left in enumerate(word):
        for right in word[i + 1:]:
            if right.rank < left.rank:
                count += 1
    return count


def is_sorted(word: Word) -> bool:
    return all(word[i].rank <= word[i + 1].rank for i in range(len(word) - 1))


def format_word(word: Word) -> str:
    """Compact text such as x*p^2*L"""
    if not word:
        return "1"
    pieces = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] is word[i]:
            j += 1
        run = j - i
        pieces.append(word[i].symbol if run == 1 else f"{word[i].symbol}^{run}")
        i = j
    return "*".join(pieces)
