"""Raw text to directed word-adjacency network.

Each distinct normalized word is a vertex; every ordered pair of words
that appear next to each other inside one sentence contributes the arc
``first -> second``. Repeated pairs collapse to a single unweighted arc.

Tokenization is deliberately minimal and language-neutral: split on
whitespace, strip leading/trailing punctuation and symbols, keep internal
hyphens/apostrophes, lowercase by default. Sentence boundaries are the
final marks ``. ! ? …`` attached to (or standing after) a token; with
``sentence_break`` off the whole text is one sentence.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .graph import DirectedGraph

_SENTENCE_FINAL = {".", "!", "?", "…"}


class IngestError(ValueError):
    """Text cannot be turned into a simple graph under the given config."""


@dataclass(frozen=True)
class IngestConfig:
    lowercase: bool = True
    sentence_break: bool = True
    drop_self_loops: bool = True


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


@dataclass
class Vocabulary:
    """Bijection word <-> vertex id; ids follow first occurrence."""

    words: tuple[str, ...]

    def __post_init__(self):
        self.words = tuple(self.words)
        self._index = {w: i for i, w in enumerate(self.words)}
        if len(self._index) != len(self.words):
            raise ValueError("vocabulary words must be unique")

    def __len__(self) -> int:
        return len(self.words)

    def id_of(self, word: str) -> int:
        return self._index[word]

    def word_of(self, vertex: int) -> str:
        return self.words[vertex]

    @property
    def entries(self) -> list[tuple[int, str]]:
        return list(enumerate(self.words))

    def write_tsv(self, target: str | Path | IO[str]) -> None:
        fh, close = _open_for_write(target)
        try:
            for i, word in enumerate(self.words):
                fh.write(f"{i}\t{word}\n")
        finally:
            if close:
                fh.close()

    @classmethod
    def read_tsv(cls, source: str | Path | IO[str]) -> "Vocabulary":
        if hasattr(source, "read"):
            text = source.read()
        else:
            text = Path(source).read_text(encoding="utf-8")
        words = []
        for line in text.splitlines():
            if not line:
                continue
            i, word = line.split("\t", 1)
            if int(i) != len(words):
                raise ValueError("vocabulary ids must be contiguous from 0")
            words.append(word)
        return cls(tuple(words))


def _strippable(ch: str) -> bool:
    cat = unicodedata.category(ch)
    return cat.startswith("P") or cat.startswith("S")


def _clean(raw: str) -> tuple[str, bool]:
    """(core word, sentence-final mark present in stripped trailing chars)."""
    start = 0
    end = len(raw)
    while start < end and _strippable(raw[start]):
        start += 1
    while end > start and _strippable(raw[end - 1]):
        end -= 1
    trailing = raw[end:] if end < len(raw) else ""
    # a bare punctuation chunk is all trailing
    if start == end:
        trailing = raw
    ends_sentence = any(ch in _SENTENCE_FINAL for ch in trailing)
    return raw[start:end], ends_sentence


def tokenize(text: str, config: IngestConfig = IngestConfig()) -> list[list[Token]]:
    """Sentence-partitioned tokens; empty tokens are discarded."""
    sentences: list[list[Token]] = []
    current: list[Token] = []
    position = 0
    for raw in text.split():
        core, ends_sentence = _clean(raw)
        if core:
            surface = core.lower() if config.lowercase else core
            current.append(Token(surface=surface, position=position))
            position += 1
        if ends_sentence and config.sentence_break and current:
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return sentences


def build_network(
    sentences: Iterable[Iterable[Token]],
    config: IngestConfig = IngestConfig(),
) -> tuple[DirectedGraph, Vocabulary]:
    """Graph + vocabulary from sentence-partitioned tokens.

    With ``drop_self_loops`` off, a repeated adjacent word raises
    ``IngestError`` instead of being silently dropped: the downstream
    census and null model are defined on simple digraphs only.
    """
    index: dict[str, int] = {}
    arcs: set[tuple[int, int]] = set()
    for sentence in sentences:
        prev = -1
        for token in sentence:
            wid = index.setdefault(token.surface, len(index))
            if prev >= 0:
                if prev == wid:
                    if not config.drop_self_loops:
                        raise IngestError(
                            f"adjacent repeated word {token.surface!r} would "
                            f"create a self-loop; pass drop_self_loops=True "
                            f"to drop such pairs")
                else:
                    arcs.add((prev, wid))
            prev = wid
    vocab = Vocabulary(tuple(index))
    graph = DirectedGraph(len(vocab),
                          np.array(sorted(arcs), dtype=np.int64).reshape(-1, 2))
    return graph, vocab


def _open_for_write(target):
    if hasattr(target, "write"):
        return target, False
    return open(target, "w", encoding="utf-8"), True
