"""
Hardy-type condition sets for n parties.

A word such as ``aa~b`` asks party 1 and 2 to measure ``a`` and party 3 to
measure ``b``; a ``~`` marks outcome 1, plain letters outcome 0. The n-party
test is P(a^n) > 0 together with P(w) = 0 for every w in H_n, where

    H_2 = {a~b, ~ba, bb}
    H_n = {a H_{n-1}, b a^{n-3} a b, ~b a^{n-3} ~b b}
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from tripartite_hardy.services.tensor_core import PureState, joint_probability
from tripartite_hardy.utils.errors import BadArityError, DimensionMismatchError

LETTERS = ("a", "~a", "b", "~b")


@dataclass(frozen=True)
class ConditionWord:
    letters: tuple

    def __post_init__(self):
        if any(letter not in LETTERS for letter in self.letters):
            raise DimensionMismatchError(f"Invalid condition letters {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> "ConditionWord":
        letters = []
        barred = False
        for char in text.replace(" ", ""):
            if char == "~":
                barred = True
                continue
            letters.append(("~" if barred else "") + char)
            barred = False
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(self.letters)

    @property
    def choice(self) -> tuple:
        return tuple(letter[-1] for letter in self.letters)

    @property
    def outcome(self) -> tuple:
        return tuple(1 if letter.startswith("~") else 0 for letter in self.letters)

    def prefixed(self, letter: str) -> "ConditionWord":
        return ConditionWord((letter,) + self.letters)


@dataclass(frozen=True)
class HardySetN:
    n: int
    positivity: ConditionWord
    zeros: tuple


@dataclass(frozen=True)
class ConditionReport:
    """Positivity probability plus the zero-condition probabilities, in word order."""
    positivity: ConditionWord
    p_pos: float
    zero_words: tuple
    zeros: tuple
    tol_zero: float
    tol_pos: float
    flags: tuple = field(default=())

    @property
    def max_zero(self) -> float:
        return max(self.zeros) if self.zeros else 0.0

    @property
    def passed(self) -> bool:
        return self.p_pos > self.tol_pos and self.max_zero < self.tol_zero


@lru_cache(maxsize=None)
def _zero_words(n: int) -> tuple:
    if n == 2:
        return tuple(ConditionWord.parse(w) for w in ("a~b", "~ba", "bb"))

    middle = ("a",) * (n - 3)
    extended = tuple(word.prefixed("a") for word in _zero_words(n - 1))
    return extended + (
        ConditionWord(("b",) + middle + ("a", "b")),
        ConditionWord(("~b",) + middle + ("~b", "b")),
    )


def hardy_set(n: int) -> HardySetN:
    if n < 2:
        raise BadArityError(verboseMessage=f"n={n}")
    return HardySetN(n=n, positivity=ConditionWord(("a",) * n), zeros=_zero_words(n))


def chenq_zero_words() -> tuple:
    """Three-party zero set with the last word of H_3 replaced by ~baa."""
    return hardy_set(3).zeros[:4] + (ConditionWord.parse("~baa"),)


def evaluate_word(state: PureState, settings, word: ConditionWord) -> float:
    if len(word) != state.n:
        raise DimensionMismatchError(f"Word {word} has length {len(word)} for a {state.n}-party state")
    return joint_probability(state, settings, word.choice, word.outcome)


def evaluate_hardy_n(
    state: PureState,
    settings,
    tol_zero: float = 1e-9,
    tol_pos: float = 1e-12,
    zero_words=None,
    flags=(),
) -> ConditionReport:
    """Evaluate P(a^n) and every zero word (H_n unless ``zero_words`` is given)."""
    hardy = hardy_set(state.n)
    words = tuple(zero_words) if zero_words is not None else hardy.zeros

    report = ConditionReport(
        positivity=hardy.positivity,
        p_pos=evaluate_word(state, settings, hardy.positivity),
        zero_words=words,
        zeros=tuple(evaluate_word(state, settings, word) for word in words),
        tol_zero=tol_zero,
        tol_pos=tol_pos,
        flags=tuple(flags),
    )

    logging.debug(f"P({report.positivity})={report.p_pos:.6g}, max zero {report.max_zero:.3e}")
    return report
