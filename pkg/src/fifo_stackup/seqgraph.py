"""Sequence graphs, the queue-system reduction, and directed path-decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DigraphFormatError, InadmissibleDigraphError
from .instance import SYMBOL_RE, Instance
from .solutions import BinSolution, open_set_trace


@dataclass(frozen=True)
class Digraph:
    """Directed graph with named, densely indexed vertices.

    Arcs are ordered index pairs; self-loops and parallel duplicates are
    excluded by construction.
    """

    names: tuple[str, ...]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate vertex names")
        n = len(self.names)
        for u, v in self.arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) references an unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at vertex {self.names[u]!r}")

    @classmethod
    def from_named_arcs(
        cls,
        arcs: Iterable[tuple[str, str]],
        isolated: Iterable[str] = (),
        names: Sequence[str] | None = None,
    ) -> "Digraph":
        arcs = list(arcs)
        if names is None:
            interned: dict[str, int] = {}
            for u, v in arcs:
                interned.setdefault(u, len(interned))
                interned.setdefault(v, len(interned))
            for w in isolated:
                interned.setdefault(w, len(interned))
            names = tuple(interned)
        lookup = {name: i for i, name in enumerate(names)}
        return cls(tuple(names), frozenset((lookup[u], lookup[v]) for u, v in arcs))

    @property
    def vertex_count(self) -> int:
        return len(self.names)

    def arc_names(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.names[u], self.names[v]) for u, v in self.arcs)

    def degrees(self) -> tuple[list[int], list[int]]:
        """(in-degree, out-degree) arrays."""
        indeg = [0] * self.vertex_count
        outdeg = [0] * self.vertex_count
        for u, v in self.arcs:
            outdeg[u] += 1
            indeg[v] += 1
        return indeg, outdeg

    def same_graph(self, other: "Digraph") -> bool:
        """Structural equality by vertex names, ignoring index assignment."""
        return set(self.names) == set(other.names) and self.arc_names() == other.arc_names()


def parse_digraph(text: str) -> Digraph:
    """Parse the digraph text format: one ``<u> <v>`` arc per line, isolated
    vertices declared as ``vertex <u>``, comments starting with ``#``."""
    arcs: list[tuple[str, str]] = []
    isolated: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) == 2 and tokens[0] == "vertex":
            name = tokens[1]
            if SYMBOL_RE.fullmatch(name) is None:
                raise DigraphFormatError(f"line {lineno}: illegal vertex name {name!r}")
            isolated.append(name)
            continue
        if len(tokens) != 2:
            raise DigraphFormatError(f"line {lineno}: expected '<u> <v>' or 'vertex <u>'")
        u, v = tokens
        for name in (u, v):
            if SYMBOL_RE.fullmatch(name) is None:
                raise DigraphFormatError(f"line {lineno}: illegal vertex name {name!r}")
        if u == v:
            raise DigraphFormatError(f"line {lineno}: self-loop at {u!r}")
        arcs.append((u, v))
    return Digraph.from_named_arcs(arcs, isolated)


def emit_digraph(graph: Digraph) -> str:
    """Serialize a digraph in the format accepted by parse_digraph, sorted."""
    indeg, outdeg = graph.degrees()
    lines = [
        f"vertex {graph.names[v]}"
        for v in sorted(range(graph.vertex_count), key=lambda v: graph.names[v])
        if indeg[v] == 0 and outdeg[v] == 0
    ]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.arc_names()))
    return "\n".join(lines) + "\n" if lines else ""


def digraph_to_dot(graph: Digraph) -> str:
    """Deterministic DOT rendering: vertices and arcs sorted by name."""
    lines = ["digraph G {"]
    for name in sorted(graph.names):
        lines.append(f'  "{name}";')
    for u, v in sorted(graph.arc_names()):
        lines.append(f'  "{u}" -> "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DirectedPathDecomposition:
    """Ordered bags of vertex indices; width is the largest bag size minus one."""

    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    def intervals(self) -> tuple[dict[int, int], dict[int, int]]:
        """First and last 1-based bag index holding each vertex."""
        alpha: dict[int, int] = {}
        beta: dict[int, int] = {}
        for i, bag in enumerate(self.bags, start=1):
            for v in bag:
                alpha.setdefault(v, i)
                beta[v] = i
        return alpha, beta

    def normalized(self) -> "DirectedPathDecomposition":
        """Drop empty bags and merge equal adjacent bags; width is unchanged."""
        bags: list[frozenset[int]] = []
        for bag in self.bags:
            if not bag or (bags and bags[-1] == bag):
                continue
            bags.append(bag)
        return DirectedPathDecomposition(tuple(bags))


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    width: int | None = None
    violation: str | None = None
    witness: object | None = None


def validate_decomposition(graph: Digraph, decomposition: DirectedPathDecomposition) -> DecompositionCheck:
    """Check the three decomposition properties against a digraph.

    Returns the width on success, otherwise the first violated property with
    a witness: a missing vertex (dpw-1), an uncovered arc (dpw-2), or a
    vertex whose bag indices are not contiguous (dpw-3).
    """
    bags = decomposition.bags
    mentioned = set().union(*bags) if bags else set()
    vertices = set(range(graph.vertex_count))
    if not mentioned <= vertices:
        raise ValueError(f"bags reference unknown vertex ids {sorted(mentioned - vertices)}")
    missing = vertices - mentioned
    if missing:
        return DecompositionCheck(False, violation="dpw-1", witness=graph.names[min(missing)])
    occurrences: dict[int, int] = {}
    for bag in bags:
        for v in bag:
            occurrences[v] = occurrences.get(v, 0) + 1
    alpha, beta = decomposition.intervals()
    for v in sorted(occurrences):
        if occurrences[v] != beta[v] - alpha[v] + 1:
            return DecompositionCheck(False, violation="dpw-3", witness=graph.names[v])
    for u, v in sorted(graph.arcs):
        if alpha[u] > beta[v]:
            return DecompositionCheck(
                False, violation="dpw-2", witness=(graph.names[u], graph.names[v]))
    return DecompositionCheck(True, width=decomposition.width)


def build_sequence_graph(inst: Instance) -> Digraph:
    """Digraph on pallets with an arc u -> v when some queue has a u-bin
    strictly left of a v-bin.

    A single left-to-right sweep per queue keeps the set of pallets seen so
    far and emits arcs into a deduplicating set.
    """
    arcs: set[tuple[int, int]] = set()
    for seq in inst.sequences:
        seen: set[int] = set()
        for t in seq:
            for u in seen:
                if u != t:
                    arcs.add((u, t))
            seen.add(t)
    return Digraph(inst.symbols, frozenset(arcs))


def admissibility_violations(graph: Digraph) -> tuple[str, ...]:
    """Vertex names lacking an incoming or an outgoing arc (isolated included)."""
    indeg, outdeg = graph.degrees()
    return tuple(
        graph.names[v]
        for v in range(graph.vertex_count)
        if indeg[v] == 0 or outdeg[v] == 0
    )


def strip_endpoints(graph: Digraph) -> tuple[Digraph, tuple[tuple[str, str], ...]]:
    """Iteratively remove vertices lacking in- or out-arcs.

    Returns the remaining core and the removal log as (name, kind) pairs with
    kind one of ``source``, ``sink``, ``isolated``.  Each removal is
    width-neutral: a source fits in a singleton bag prepended to any
    decomposition of the rest, a sink in one appended.
    """
    names = list(graph.names)
    arcs = set(graph.arcs)
    alive = set(range(len(names)))
    removals: list[tuple[str, str]] = []
    while True:
        indeg = {v: 0 for v in alive}
        outdeg = {v: 0 for v in alive}
        for u, v in arcs:
            outdeg[u] += 1
            indeg[v] += 1
        bad = sorted(v for v in alive if indeg[v] == 0 or outdeg[v] == 0)
        if not bad:
            break
        v = bad[0]
        if indeg[v] == 0 and outdeg[v] == 0:
            kind = "isolated"
        elif indeg[v] == 0:
            kind = "source"
        else:
            kind = "sink"
        removals.append((names[v], kind))
        alive.discard(v)
        arcs = {(a, b) for a, b in arcs if a != v and b != v}
    remaining = sorted(alive)
    remap = {v: i for i, v in enumerate(remaining)}
    core = Digraph(
        tuple(names[v] for v in remaining),
        frozenset((remap[a], remap[b]) for a, b in arcs),
    )
    return core, tuple(removals)


def reduce_digraph_to_queues(graph: Digraph, *, strip: bool = False) -> Instance:
    """Queue system of a digraph: one two-bin queue [u, v] per arc (u, v).

    The sequence graph of the result equals the input graph.  Requires every
    vertex to have an incoming and an outgoing arc; pass ``strip=True`` to
    remove offending vertices first (width-neutral).
    """
    if strip:
        graph, _ = strip_endpoints(graph)
    else:
        bad = admissibility_violations(graph)
        if bad:
            raise InadmissibleDigraphError(
                "vertices without both incoming and outgoing arcs: "
                + ", ".join(sorted(bad)))
    if not graph.arcs:
        raise InadmissibleDigraphError("digraph has no arcs; nothing to reduce")
    queues = [[graph.names[u], graph.names[v]] for u, v in sorted(graph.arcs)]
    return Instance.from_pallet_lists(queues)


def processing_to_decomposition(inst: Instance, b_sol: BinSolution) -> DirectedPathDecomposition:
    """Decomposition read off a processing: the open-pallet sets after each
    step become the bags (empty bags retained).

    The result is validated against the sequence graph; its width equals the
    processing's peak open count minus one.  Fails for instances with
    single-bin pallets, which never open and therefore never enter a bag.
    """
    trace = open_set_trace(inst, b_sol)
    decomposition = DirectedPathDecomposition(tuple(trace))
    check = validate_decomposition(build_sequence_graph(inst), decomposition)
    if not check.ok:
        raise ValueError(
            f"processing does not induce a valid decomposition "
            f"({check.violation}, witness {check.witness!r})")
    return decomposition


def decomposition_to_processing(inst: Instance, decomposition: DirectedPathDecomposition) -> BinSolution:
    """Greedy processing guided by a decomposition.

    Front bins of open pallets are removed first (lowest sequence index); at
    decision configurations the front pallet whose first bag comes earliest
    is opened (ties by pallet id, then lowest sequence).  The replayed peak
    open count is at most the decomposition's width plus one.
    """
    graph = build_sequence_graph(inst)
    check = validate_decomposition(graph, decomposition)
    if not check.ok:
        raise ValueError(
            f"decomposition invalid for the sequence graph "
            f"({check.violation}, witness {check.witness!r})")
    alpha, _ = decomposition.intervals()
    counts = inst.bin_counts()
    positions = [0] * inst.k
    removed = [0] * inst.m
    moves: list[tuple[int, int]] = []
    while len(moves) < inst.n:
        chosen = None
        fronts: list[tuple[int, int, int]] = []
        for j, seq in enumerate(inst.sequences):
            p = positions[j]
            if p == len(seq):
                continue
            t = seq[p]
            if 0 < removed[t] < counts[t]:
                chosen = j
                break
            fronts.append((alpha[t], t, j))
        if chosen is None:
            _, _, chosen = min(fronts)
        p = positions[chosen]
        t = inst.sequences[chosen][p]
        positions[chosen] = p + 1
        removed[t] += 1
        moves.append((chosen, p + 1))
    return BinSolution(tuple(moves))


def decomposition_to_dot(graph: Digraph, decomposition: DirectedPathDecomposition) -> str:
    """Deterministic DOT rendering of a decomposition: bags as clusters,
    arcs drawn between the first bags holding their endpoints."""
    alpha, _ = decomposition.intervals()
    lines = ["digraph decomposition {"]
    for i, bag in enumerate(decomposition.bags, start=1):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="X{i}";')
        for name in sorted(graph.names[v] for v in bag):
            lines.append(f'    "b{i}_{name}" [label="{name}"];')
        lines.append("  }")
    for u, v in sorted(graph.arc_names()):
        iu = alpha[graph.names.index(u)]
        iv = alpha[graph.names.index(v)]
        lines.append(f'  "b{iu}_{u}" -> "b{iv}_{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
