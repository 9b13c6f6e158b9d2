"""Data model for stack-up instances: FIFO queues of pallet-labeled bins.

Conventions used throughout the package:

* sequence indices are 0-based (``sequences[0]`` is the first queue),
* bin positions are 1-based, so a bin is addressed as ``(i, p)`` with
  ``sequences[i][p - 1]`` holding its pallet id,
* a configuration is the tuple of per-sequence removed-bin counts; the count
  for a queue equals the position of the bin removed last from it.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InstanceFormatError

SYMBOL_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_SEQ_LINE_RE = re.compile(r"seq\s+(\d+)\s*:(.*)\Z")

Configuration = tuple[int, ...]


@dataclass(frozen=True)
class Instance:
    """k sequences of bins; each bin carries an interned pallet id.

    ``symbols[t]`` is the pallet symbol interned to id ``t``; interning is a
    bijection between the distinct symbols and ``0..m-1``.
    """

    sequences: tuple[tuple[int, ...], ...]
    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.sequences:
            raise ValueError("an instance needs at least one sequence")
        if any(not seq for seq in self.sequences):
            raise ValueError("empty sequences are not allowed")
        m = len(self.symbols)
        if len(set(self.symbols)) != m:
            raise ValueError("pallet symbols must be distinct")
        used = set()
        for seq in self.sequences:
            for t in seq:
                if not 0 <= t < m:
                    raise ValueError(f"pallet id {t} out of range")
                used.add(t)
        if len(used) != m:
            raise ValueError("every pallet symbol must label at least one bin")

    @classmethod
    def from_pallet_lists(cls, lists: Iterable[Sequence[str]]) -> "Instance":
        """Build an instance from per-queue symbol lists, interning symbols in
        first-appearance order."""
        interned: dict[str, int] = {}
        sequences = []
        for row in lists:
            sequences.append(tuple(interned.setdefault(sym, len(interned)) for sym in row))
        return cls(tuple(sequences), tuple(interned))

    @property
    def k(self) -> int:
        return len(self.sequences)

    @property
    def m(self) -> int:
        return len(self.symbols)

    @property
    def n(self) -> int:
        return sum(len(seq) for seq in self.sequences)

    @property
    def N(self) -> int:
        return max(len(seq) for seq in self.sequences)

    def symbol_ids(self, symbols: Iterable[str]) -> tuple[int, ...]:
        lookup = {sym: t for t, sym in enumerate(self.symbols)}
        ids = []
        for sym in symbols:
            if sym not in lookup:
                raise ValueError(f"unknown pallet symbol {sym!r}")
            ids.append(lookup[sym])
        return tuple(ids)

    def bin_counts(self) -> tuple[int, ...]:
        """Total number of bins per pallet id."""
        counts = [0] * self.m
        for seq in self.sequences:
            for t in seq:
                counts[t] += 1
        return tuple(counts)

    def initial_configuration(self) -> Configuration:
        return (0,) * self.k

    def final_configuration(self) -> Configuration:
        return tuple(len(seq) for seq in self.sequences)


def check_configuration(inst: Instance, cfg: Configuration) -> None:
    if len(cfg) != inst.k:
        raise ValueError(f"configuration has {len(cfg)} entries, instance has {inst.k} sequences")
    for i, (count, seq) in enumerate(zip(cfg, inst.sequences)):
        if not 0 <= count <= len(seq):
            raise ValueError(f"removed count {count} out of range for sequence {i}")


def parse_instance(text: str) -> Instance:
    """Parse the instance text format.

    Comment lines start with ``#``; each sequence line reads
    ``seq <1-based-index>: <symbols separated by spaces>`` with indices
    appearing consecutively from 1.  Symbols are case-sensitive tokens over
    ``[A-Za-z0-9_]``, interned in first-appearance order.
    """
    sequences: list[tuple[int, ...]] = []
    interned: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _SEQ_LINE_RE.fullmatch(line)
        if match is None:
            raise InstanceFormatError(f"line {lineno}: expected 'seq <index>: <symbols>'")
        index = int(match.group(1))
        if index != len(sequences) + 1:
            raise InstanceFormatError(
                f"line {lineno}: sequence index {index} out of order (expected {len(sequences) + 1})")
        tokens = match.group(2).split()
        if not tokens:
            raise InstanceFormatError(f"line {lineno}: empty sequence token list")
        row = []
        for token in tokens:
            if SYMBOL_RE.fullmatch(token) is None:
                raise InstanceFormatError(f"line {lineno}: illegal pallet symbol {token!r}")
            row.append(interned.setdefault(token, len(interned)))
        sequences.append(tuple(row))
    if not sequences:
        raise InstanceFormatError("no sequences found")
    return Instance(tuple(sequences), tuple(interned))


def emit_instance(inst: Instance) -> str:
    """Serialize an instance in the text format accepted by parse_instance."""
    lines = []
    for i, seq in enumerate(inst.sequences, start=1):
        lines.append(f"seq {i}: " + " ".join(inst.symbols[t] for t in seq))
    return "\n".join(lines) + "\n"


def front(inst: Instance, cfg: Configuration) -> frozenset[int]:
    """Pallets of the first remaining bin of each nonempty sequence."""
    check_configuration(inst, cfg)
    return frozenset(
        seq[count] for seq, count in zip(inst.sequences, cfg) if count < len(seq))


def cut(inst: Instance, cfg: Configuration) -> frozenset[int]:
    """Pallets with a removed bin and a remaining bin: the open pallets.

    Computed directly from the definition (no incremental state) so it can
    serve as an oracle for the incremental update.
    """
    check_configuration(inst, cfg)
    removed: set[int] = set()
    remaining: set[int] = set()
    for seq, count in zip(inst.sequences, cfg):
        removed.update(seq[:count])
        remaining.update(seq[count:])
    return frozenset(removed & remaining)


@dataclass(frozen=True)
class PalletIndex:
    """First/last bin positions per pallet and sequence, 1-based.

    For a pallet ``t`` absent from sequence ``i``: ``first[t][i] == len + 1``
    and ``last[t][i] == 0``, which makes the open/close comparisons below work
    without membership tests.
    """

    first: tuple[tuple[int, ...], ...]
    last: tuple[tuple[int, ...], ...]


def build_pallet_index(inst: Instance) -> PalletIndex:
    first = [[len(seq) + 1 for seq in inst.sequences] for _ in range(inst.m)]
    last = [[0] * inst.k for _ in range(inst.m)]
    for i, seq in enumerate(inst.sequences):
        for pos, t in enumerate(seq, start=1):
            if first[t][i] > len(seq):
                first[t][i] = pos
            last[t][i] = pos
    return PalletIndex(tuple(map(tuple, first)), tuple(map(tuple, last)))


def is_open_pallet(index: PalletIndex, cfg: Configuration, t: int) -> bool:
    """True when pallet t has at least one removed and one remaining bin."""
    started = any(f <= c for f, c in zip(index.first[t], cfg))
    pending = any(last > c for last, c in zip(index.last[t], cfg))
    return started and pending


@dataclass(frozen=True)
class ValidationReport:
    k: int
    m: int
    n: int
    N: int
    single_bin_pallets: tuple[str, ...]
    warnings: tuple[str, ...]


def validate(inst: Instance) -> ValidationReport:
    """Report instance statistics and warn about pallets with a single bin.

    Single-bin pallets are legal but can never be open, so they are flagged
    rather than rejected.
    """
    counts = inst.bin_counts()
    singles = tuple(inst.symbols[t] for t in range(inst.m) if counts[t] == 1)
    warnings = tuple(
        f"pallet {sym} has only one bin and can never be open" for sym in singles)
    return ValidationReport(inst.k, inst.m, inst.n, inst.N, singles, warnings)
