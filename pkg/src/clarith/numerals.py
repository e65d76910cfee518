"""Binary numerals.

Constants of the object language are the strings matching ``"" | 1(0|1)*``,
identified with the natural numbers they denote in binary.  The empty string
denotes zero and is conventionally *spelled* "0", but its length is 0: the
display spelling and the bit string differ for zero only.
"""

from __future__ import annotations

from dataclasses import dataclass

NUMERAL_ALPHABET = frozenset("01")


class NumeralError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Numeral:
    """A binary numeral, stored as its bit string ("" for zero)."""

    bits: str = ""

    def __post_init__(self):
        if self.bits and (self.bits[0] != "1" or set(self.bits) - NUMERAL_ALPHABET):
            raise NumeralError(f"not a binary numeral: {self.bits!r}")

    @staticmethod
    def from_int(value: int) -> "Numeral":
        if value < 0:
            raise NumeralError(f"numerals denote naturals, got {value}")
        return Numeral(format(value, "b") if value else "")

    @staticmethod
    def parse(text: str) -> "Numeral":
        """Parse the display spelling; "0" is the canonical spelling of ""."""
        if text == "0":
            return Numeral("")
        return Numeral(text)

    @staticmethod
    def is_valid(text: str) -> bool:
        try:
            Numeral.parse(text)
            return True
        except NumeralError:
            return False

    @property
    def value(self) -> int:
        return int(self.bits, 2) if self.bits else 0

    def __len__(self) -> int:
        """Size |n| of the numeral; note |"0"| = 0."""
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits or "0"


def size_of(value: int) -> int:
    """|value|: the length of the binary numeral for value (|0| = 0)."""
    return value.bit_length()
