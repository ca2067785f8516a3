"""Numeric tagging and digit-removal transforms on day-chat text.

Numbers are maximal digit runs optionally glued by decimal points, so
"76.5" is one number while "-", ":", and "/" split adjacent runs. A full
"YYYY-MM-DD HH:MM:SS" shape can be tagged as one [TIMESTAMP] before number
tagging. Replacements are space-padded, then runs of spaces collapse and
each line is trimmed; line structure is always preserved.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .consolidate import DayChat

NUM_TAG = "[NUM]"
TIMESTAMP_TAG = "[TIMESTAMP]"

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)*")
_TIMESTAMP_RE = re.compile(r"\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}")
_SPACE_RUN_RE = re.compile(r" +")


def _normalize_spaces(text: str) -> str:
    return "\n".join(
        _SPACE_RUN_RE.sub(" ", line).strip() for line in text.split("\n")
    )


def tag_numbers(text: str) -> str:
    """Replace every number with the universal [NUM] tag."""
    return _normalize_spaces(_NUMBER_RE.sub(f" {NUM_TAG} ", text))


def tag_timestamps_then_numbers(text: str) -> str:
    """Tag full date-time shapes as [TIMESTAMP], then remaining numbers as [NUM].

    Lone dates or times do not match the timestamp shape and fall through
    to [NUM] tagging.
    """
    tagged = _TIMESTAMP_RE.sub(f" {TIMESTAMP_TAG} ", text)
    return _normalize_spaces(_NUMBER_RE.sub(f" {NUM_TAG} ", tagged))


def strip_digits(text: str) -> str:
    """Delete every number outright; punctuation that separated them survives."""
    return _normalize_spaces(_NUMBER_RE.sub(" ", text))


class TextBase(enum.Enum):
    """Which rendering a variant starts from; values are the CLI names."""

    RAW = "raw"
    NORMALIZED = "norm"


class TextTransform(enum.Enum):
    """Which transform a variant applies; values are the CLI names."""

    UNTAGGED = "none"
    NUM_TAG = "num"
    NUM_AND_TIMESTAMP_TAGS = "num-ts"
    DIGITS_STRIPPED = "strip"


_TRANSFORM_FUNCS = {
    TextTransform.UNTAGGED: lambda text: text,
    TextTransform.NUM_TAG: tag_numbers,
    TextTransform.NUM_AND_TIMESTAMP_TAGS: tag_timestamps_then_numbers,
    TextTransform.DIGITS_STRIPPED: strip_digits,
}

_BASE_BY_NAME = {base.value: base for base in TextBase}
_TRANSFORM_BY_NAME = {tf.value: tf for tf in TextTransform}


@dataclass(frozen=True)
class TextVariant:
    """One cell of the text-treatment grid: a base rendering plus a transform."""

    base: TextBase
    transform: TextTransform

    @property
    def name(self) -> str:
        return f"{self.base.value}_{self.transform.value}"

    @classmethod
    def parse(cls, spec: str) -> "TextVariant":
        """Parse "base:transform", e.g. "raw:num" or "norm:none"."""
        base_name, sep, transform_name = spec.partition(":")
        if not sep:
            transform_name = TextTransform.UNTAGGED.value
        base = _BASE_BY_NAME.get(base_name.strip())
        transform = _TRANSFORM_BY_NAME.get(transform_name.strip())
        if base is None or transform is None:
            raise ValueError(
                f"bad variant {spec!r}: expected raw|norm : none|num|num-ts|strip"
            )
        return cls(base, transform)


def apply_transform(text: str, transform: TextTransform) -> str:
    return _TRANSFORM_FUNCS[transform](text)


def apply_variant(day_chat: DayChat, variant: TextVariant) -> str:
    """Select the variant's base rendering and apply its transform."""
    if variant.base is TextBase.RAW:
        text = day_chat.raw_text
    else:
        text = day_chat.normalized_text
    return apply_transform(text, variant.transform)
