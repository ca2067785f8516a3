"""Day-chat consolidation: deduplicate events across participants' logs,
group them per room per calendar day, and render the raw and normalized
text variants.

The raw rendering keeps join/leave lines, "Says" attributions, and marks
long silences; the normalized rendering is just the message texts, one per
line, anonymized by construction.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterable, Mapping

from .chatlog import ChatEvent, EventKind, KIND_SORT_ORDER

DEFAULT_SILENCE_THRESHOLD_MINUTES = 60

RAW_DIRNAME = "raw"
NORMALIZED_DIRNAME = "normalized"
LABELS_FILENAME = "labels.csv"


class Label(enum.Enum):
    """Responsiveness coding of a day chat; values are the manifest tokens."""

    RESPONSIVE = "responsive"
    NOT_RESPONSIVE = "not_responsive"


_LABEL_BY_TOKEN = {label.value: label for label in Label}


@dataclass
class DayChat:
    """All events of one room on one calendar date, with both renderings.

    doc_id is "{room_id}_{ISO date}"; *_size_bytes are UTF-8 byte lengths
    of the corresponding rendering.
    """

    doc_id: str
    room_id: str
    date: date
    events: list[ChatEvent]
    raw_text: str
    normalized_text: str
    raw_size_bytes: int
    norm_size_bytes: int
    label: Label | None = None


def _identity(event: ChatEvent):
    return (
        event.timestamp,
        event.room_id,
        event.participant,
        event.institution,
        event.kind,
        event.text,
    )


def _sort_key(event: ChatEvent):
    # room_id and institution close the key into a total order so that the
    # result never depends on input order.
    return (
        event.timestamp,
        KIND_SORT_ORDER[event.kind],
        event.participant,
        event.text,
        event.room_id,
        event.institution,
    )


def deduplicate(events: Iterable[ChatEvent]) -> list[ChatEvent]:
    """Keep one copy of each distinct event, in canonical sorted order.

    Identity is the full event tuple, so the same message relayed through
    several participants' logs collapses to one event while distinct
    participants at the same second remain distinct.
    """
    unique = {_identity(event): event for event in events}
    return sorted(unique.values(), key=_sort_key)


def render_raw(
    events: list[ChatEvent],
    silence_threshold_minutes: int = DEFAULT_SILENCE_THRESHOLD_MINUTES,
) -> str:
    """Render sorted same-day events with attributions and silence markers.

    Gaps of at least the threshold insert a three-line block; hours and
    minutes are floored. Lines are LF-joined with no trailing newline.
    """
    lines: list[str] = []
    previous = None
    for event in events:
        if previous is not None:
            gap = int((event.timestamp - previous.timestamp).total_seconds())
            if gap >= silence_threshold_minutes * 60:
                hours = gap // 3600
                minutes = (gap % 3600) // 60
                lines.append("*****")
                lines.append(
                    f"**** {hours} hours and {minutes} minutes since previous line ****"
                )
                lines.append("*****")
        head = f"{event.timestamp_str()} {event.participant}, {event.institution}"
        if event.kind is EventKind.MESSAGE:
            lines.append(f"{head} Says {event.text}")
        elif event.kind is EventKind.JOIN:
            lines.append(f"{head} has joined the room")
        else:
            lines.append(f"{head} has left the room")
        previous = event
    return "\n".join(lines)


def render_normalized(events: list[ChatEvent]) -> str:
    """Message texts only, one per line; joins, leaves, attributions, and
    silence markers are all dropped."""
    return "\n".join(e.text for e in events if e.kind is EventKind.MESSAGE)


def group_day_chats(
    events: Iterable[ChatEvent],
    silence_threshold_minutes: int = DEFAULT_SILENCE_THRESHOLD_MINUTES,
) -> list[DayChat]:
    """Partition deduplicated events into per-room per-day documents.

    Documents are ordered by (room_id, date); events within a document are
    in canonical sorted order. Conversations are cut strictly at calendar
    date boundaries.
    """
    groups: dict[tuple[str, date], list[ChatEvent]] = {}
    for event in events:
        groups.setdefault((event.room_id, event.timestamp.date()), []).append(event)

    chats = []
    for (room_id, day), members in sorted(groups.items()):
        members.sort(key=_sort_key)
        raw_text = render_raw(members, silence_threshold_minutes)
        normalized_text = render_normalized(members)
        chats.append(
            DayChat(
                doc_id=f"{room_id}_{day.isoformat()}",
                room_id=room_id,
                date=day,
                events=members,
                raw_text=raw_text,
                normalized_text=normalized_text,
                raw_size_bytes=len(raw_text.encode("utf-8")),
                norm_size_bytes=len(normalized_text.encode("utf-8")),
            )
        )
    return chats


def consolidate_logs(
    logs: Iterable[Iterable[ChatEvent]] | Iterable[ChatEvent],
    silence_threshold_minutes: int = DEFAULT_SILENCE_THRESHOLD_MINUTES,
) -> list[DayChat]:
    """Deduplicate one flat event stream and group it into day chats."""
    flat: list[ChatEvent] = []
    for item in logs:
        if isinstance(item, ChatEvent):
            flat.append(item)
        else:
            flat.extend(item)
    return group_day_chats(deduplicate(flat), silence_threshold_minutes)


def filter_by_size(
    corpus: Iterable[DayChat],
    min_bytes: int,
    check_raw: bool = True,
    check_norm: bool = True,
) -> list[DayChat]:
    """Keep documents strictly over min_bytes in the checked renderings."""
    kept = []
    for chat in corpus:
        if check_raw and chat.raw_size_bytes <= min_bytes:
            continue
        if check_norm and chat.norm_size_bytes <= min_bytes:
            continue
        kept.append(chat)
    return kept


def attach_labels(
    chats: Iterable[DayChat],
    labels: Mapping[str, Label],
    *,
    require_all: bool = False,
) -> None:
    """Set chat labels from a doc_id -> Label mapping, in place."""
    missing = []
    for chat in chats:
        label = labels.get(chat.doc_id)
        if label is None:
            missing.append(chat.doc_id)
        else:
            chat.label = label
    if require_all and missing:
        preview = ", ".join(missing[:5])
        raise ValueError(f"{len(missing)} day chats have no label (e.g. {preview})")


def write_labels(path: Path | str, labels: Mapping[str, Label]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["doc_id", "label"])
        for doc_id in sorted(labels):
            writer.writerow([doc_id, labels[doc_id].value])


def read_labels(path: Path | str) -> dict[str, Label]:
    labels: dict[str, Label] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["doc_id", "label"]:
            raise ValueError(f"{path}: expected header 'doc_id,label', got {header}")
        for row in reader:
            if len(row) != 2:
                raise ValueError(f"{path}: malformed row {row}")
            doc_id, token = row
            label = _LABEL_BY_TOKEN.get(token)
            if label is None:
                raise ValueError(f"{path}: unknown label {token!r} for {doc_id}")
            labels[doc_id] = label
    return labels


def write_corpus(chats: Iterable[DayChat], out_dir: Path | str) -> None:
    """Write the corpus-on-disk layout: raw/, normalized/, labels.csv.

    One "{doc_id}.txt" per document and variant (a trailing LF is added on
    write and removed on read); labels.csv covers the labeled documents.
    """
    out = Path(out_dir)
    raw_dir = out / RAW_DIRNAME
    norm_dir = out / NORMALIZED_DIRNAME
    raw_dir.mkdir(parents=True, exist_ok=True)
    norm_dir.mkdir(parents=True, exist_ok=True)

    labels: dict[str, Label] = {}
    for chat in chats:
        (raw_dir / f"{chat.doc_id}.txt").write_bytes(
            (chat.raw_text + "\n").encode("utf-8")
        )
        (norm_dir / f"{chat.doc_id}.txt").write_bytes(
            (chat.normalized_text + "\n").encode("utf-8")
        )
        if chat.label is not None:
            labels[chat.doc_id] = chat.label
    write_labels(out / LABELS_FILENAME, labels)


def _read_rendering(path: Path) -> str:
    text = path.read_bytes().decode("utf-8")
    return text[:-1] if text.endswith("\n") else text


def read_corpus(corpus_dir: Path | str) -> list[DayChat]:
    """Load a written corpus back; events are not reconstructed."""
    root = Path(corpus_dir)
    raw_dir = root / RAW_DIRNAME
    norm_dir = root / NORMALIZED_DIRNAME
    if not raw_dir.is_dir() or not norm_dir.is_dir():
        raise ValueError(f"{root}: not a corpus directory (need raw/ and normalized/)")

    labels_path = root / LABELS_FILENAME
    labels = read_labels(labels_path) if labels_path.exists() else {}

    chats = []
    for raw_path in sorted(raw_dir.glob("*.txt")):
        doc_id = raw_path.stem
        norm_path = norm_dir / raw_path.name
        if not norm_path.exists():
            raise ValueError(f"{doc_id}: missing normalized rendering")
        room_id, _, day_str = doc_id.rpartition("_")
        if not room_id:
            raise ValueError(f"{doc_id}: doc_id is not of the form room_date")
        raw_text = _read_rendering(raw_path)
        normalized_text = _read_rendering(norm_path)
        chats.append(
            DayChat(
                doc_id=doc_id,
                room_id=room_id,
                date=date.fromisoformat(day_str),
                events=[],
                raw_text=raw_text,
                normalized_text=normalized_text,
                raw_size_bytes=len(raw_text.encode("utf-8")),
                norm_size_bytes=len(normalized_text.encode("utf-8")),
                label=labels.get(doc_id),
            )
        )
    return chats
