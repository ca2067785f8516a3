"""Chat-log parsing: per-participant log files into validated event streams.

A log file is UTF-8 with LF line endings, one record per line, six fields
separated by single tabs:

    timestamp <TAB> room_id <TAB> participant <TAB> institution <TAB> kind <TAB> text

``timestamp`` is a naive local time in the exact form "YYYY-MM-DD HH:MM:SS".
``kind`` is one of "says", "joined", "left"; only "says" records carry text,
and text may contain any character except tab and LF. The same event may
appear in several participants' files; consolidation deduplicates later.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable

TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"

_TIMESTAMP_SHAPE = re.compile(r"\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}")
_RECORD_FIELDS = 6


class EventKind(enum.Enum):
    """What a chat-log line records; values are the on-disk kind tokens."""

    JOIN = "joined"
    MESSAGE = "says"
    LEAVE = "left"


# Tie-break order for events sharing a timestamp: joins sort before the
# messages they enable, leaves after.
KIND_SORT_ORDER = {EventKind.JOIN: 0, EventKind.MESSAGE: 1, EventKind.LEAVE: 2}

_KIND_BY_TOKEN = {kind.value: kind for kind in EventKind}


class LogParseError(ValueError):
    """A malformed chat-log line, carrying the 1-based line number and reason."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


@dataclass(frozen=True)
class ChatEvent:
    """One parsed chat-log line (message, join, or leave).

    Invariants: participant and institution are non-empty; text is empty
    unless kind is MESSAGE; the timestamp has second precision and no
    timezone.
    """

    timestamp: datetime
    room_id: str
    participant: str
    institution: str
    kind: EventKind
    text: str = ""

    def timestamp_str(self) -> str:
        return self.timestamp.strftime(TIMESTAMP_FORMAT)


def parse_line(line: str, line_no: int = 1) -> ChatEvent:
    """Parse a single record; raises LogParseError on any malformation."""
    fields = line.split("\t")
    if len(fields) != _RECORD_FIELDS:
        raise LogParseError(
            line_no, f"expected {_RECORD_FIELDS} tab-separated fields, got {len(fields)}"
        )
    ts_raw, room_id, participant, institution, kind_token, text = fields

    if not _TIMESTAMP_SHAPE.fullmatch(ts_raw):
        raise LogParseError(line_no, f"bad timestamp {ts_raw!r}")
    try:
        timestamp = datetime.strptime(ts_raw, TIMESTAMP_FORMAT)
    except ValueError:
        raise LogParseError(line_no, f"bad timestamp {ts_raw!r}") from None

    for name, value in (("room_id", room_id), ("participant", participant),
                        ("institution", institution)):
        if not value:
            raise LogParseError(line_no, f"missing field: {name}")

    kind = _KIND_BY_TOKEN.get(kind_token)
    if kind is None:
        raise LogParseError(line_no, f"unknown kind {kind_token!r}")
    if kind is not EventKind.MESSAGE and text:
        raise LogParseError(line_no, f"unexpected text on {kind_token!r} record")

    return ChatEvent(timestamp, room_id, participant, institution, kind, text)


def parse_log(lines: Iterable[str], *, strict: bool = True) -> list[ChatEvent]:
    """Parse chat-log lines into events, preserving file order.

    Strict mode raises LogParseError at the first malformed line; lenient
    mode (strict=False) skips malformed lines. Use parse_log_lenient when
    the caller needs the skipped-line errors themselves.
    """
    if not strict:
        return parse_log_lenient(lines)[0]
    return [parse_line(line, i) for i, line in enumerate(lines, 1)]


def parse_log_lenient(
    lines: Iterable[str],
) -> tuple[list[ChatEvent], list[LogParseError]]:
    """Parse leniently: malformed lines are skipped and returned as errors."""
    events: list[ChatEvent] = []
    errors: list[LogParseError] = []
    for i, line in enumerate(lines, 1):
        try:
            events.append(parse_line(line, i))
        except LogParseError as err:
            errors.append(err)
    return events, errors


def format_record(event: ChatEvent) -> str:
    """Render an event back to the record format parse_line accepts.

    Round trip: parse_line(format_record(e)) == e for every valid event.
    """
    if "\t" in event.text or "\n" in event.text:
        raise ValueError("event text may not contain tab or LF")
    return "\t".join(
        (
            event.timestamp_str(),
            event.room_id,
            event.participant,
            event.institution,
            event.kind.value,
            event.text,
        )
    )
