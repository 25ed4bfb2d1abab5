"""Bipartite multigraphs linking a row path I to a column path T.

For paths I and T of common length k the graph has a down-edge (i_l, t_l)
and an up-edge (i_{l+1}, t_l) for every step l, with the wraparound
i_{k+1} = i_1; orientation is dropped and parallel edges are counted by an
integer degree.  Only pairs whose edge degrees are all even and whose
skeleton (parallel edges glued) is a tree contribute at leading order, and
the levels C_s(I) of such column paths with s distinct labels are generated
bottom-up through 1-refinements.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from heavymp.combinatorics import K_MAX, SetPartition
from heavymp.paths import (
    Path,
    canonicalize,
    enumerate_canonical_paths,
    is_canonical,
    partition_to_path,
    path_to_partition,
    shorten,
)


@dataclass(frozen=True)
class DeltaGraph:
    """Edge degrees of the bipartite multigraph for a path pair (I, T)."""

    edge_degrees: tuple[tuple[tuple[int, int], int], ...]  # ((i, t), degree)

    @property
    def degrees(self) -> dict[tuple[int, int], int]:
        return dict(self.edge_degrees)

    @property
    def i_vertices(self) -> frozenset[int]:
        return frozenset(i for (i, _t), _d in self.edge_degrees)

    @property
    def t_vertices(self) -> frozenset[int]:
        return frozenset(t for (_i, t), _d in self.edge_degrees)

    @property
    def n_edges(self) -> int:
        """Number of skeleton edges."""
        return len(self.edge_degrees)

    def i_degree(self, i: int) -> int:
        """Number of distinct T-neighbours of the I-vertex i."""
        return sum(1 for (a, _t), _d in self.edge_degrees if a == i)


def build_delta(i_path: Path, t_path: Path) -> DeltaGraph:
    if len(i_path) != len(t_path):
        raise ValueError(f"length mismatch: |I|={len(i_path)}, |T|={len(t_path)}")
    if not i_path:
        raise ValueError("paths must be non-empty")
    k = len(i_path)
    degrees: Counter[tuple[int, int]] = Counter()
    for l in range(k):
        degrees[(i_path[l], t_path[l])] += 1  # down-edge
        degrees[(i_path[(l + 1) % k], t_path[l])] += 1  # up-edge
    return DeltaGraph(tuple(sorted(degrees.items())))


def is_even(graph: DeltaGraph) -> bool:
    return all(d % 2 == 0 for _e, d in graph.edge_degrees)


def is_tree_skeleton(graph: DeltaGraph) -> bool:
    """Connected with exactly (#vertices - 1) skeleton edges."""
    n_vertices = len(graph.i_vertices) + len(graph.t_vertices)
    if graph.n_edges != n_vertices - 1:
        return False
    adjacency: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for (i, t), _d in graph.edge_degrees:
        adjacency.setdefault(("i", i), []).append(("t", t))
        adjacency.setdefault(("t", t), []).append(("i", i))
    start = next(iter(adjacency))
    seen = {start}
    stack = [start]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == n_vertices


def refine_candidates(t_path: Path, i_path: Path | None = None) -> Iterator[Path]:
    """Canonical paths whose partition is a 1-refinement of partition(T).

    Splits one block of partition(T) into two non-empty parts in every
    possible way; duplicates (after canonicalization) are suppressed.  The
    optional ``i_path`` is only checked for length compatibility, validation
    of the refined pairs is the caller's job.
    """
    if i_path is not None and len(i_path) != len(t_path):
        raise ValueError("i_path and t_path must have the same length")
    partition = path_to_partition(t_path)
    seen: set[Path] = set()
    for idx, block in enumerate(partition.blocks):
        elems = sorted(block)
        anchor, rest = elems[0], elems[1:]
        # enumerate splits by the subset that stays with the block's minimum
        for size in range(len(rest) + 1):
            for keep in combinations(rest, size):
                part_a = frozenset((anchor, *keep))
                part_b = block - part_a
                if not part_b:
                    continue
                blocks = list(partition.blocks[:idx]) + [part_a, part_b] + list(
                    partition.blocks[idx + 1 :]
                )
                blocks.sort(key=min)
                refined = canonicalize(
                    partition_to_path(SetPartition(partition.k, tuple(blocks)))
                )
                if refined not in seen:
                    seen.add(refined)
                    yield refined


@dataclass(frozen=True)
class ContributingSets:
    """Levels C_1(I), C_2(I), ... of contributing column paths, and t*."""

    i_path: Path
    levels: tuple[tuple[Path, ...], ...]  # levels[s-1] = sorted C_s(I)

    @property
    def t_star(self) -> int:
        return len(self.levels)

    def all_pairs(self) -> Iterator[tuple[int, Path]]:
        """(s, T) over all non-empty levels."""
        for s, level in enumerate(self.levels, start=1):
            for t_path in level:
                yield s, t_path


def _contributes(i_path: Path, t_path: Path) -> bool:
    graph = build_delta(i_path, t_path)
    return is_even(graph) and is_tree_skeleton(graph)


def contributing_sets(
    i_path: Path, mode: str = "refine", k_max: int = K_MAX
) -> ContributingSets:
    """Build the non-empty levels C_s(I) for an irreducible canonical path.

    ``mode="refine"`` grows level s+1 from 1-refinements of level s (the
    first empty level stops the construction, which is valid because
    emptiness is monotone for s >= 2); ``mode="brute"`` filters all
    canonical s-paths of length k and serves as the oracle.
    """
    if not is_canonical(i_path):
        raise ValueError(f"path {i_path} is not canonical")
    if not i_path:
        raise ValueError("empty path")
    if len(i_path) > k_max:
        raise ValueError(f"|I|={len(i_path)} exceeds k_max={k_max}")
    ps = shorten(i_path)
    if ps.shortened != i_path:
        raise ValueError(f"path {i_path} is reducible; shorten it first")
    if mode not in ("refine", "brute"):
        raise ValueError(f"unknown mode {mode!r}")

    k = len(i_path)
    r = max(i_path)
    levels: list[tuple[Path, ...]] = [((1,) * k,)]
    s = 2
    # an irreducible path never exhausts the bound s <= k - r + 1
    while s <= k - r + 1:
        if mode == "brute":
            candidates: Iterator[Path] = enumerate_canonical_paths(k, s, k_max)
        else:
            seen: set[Path] = set()
            candidates = (
                c
                for t_prev in levels[-1]
                for c in refine_candidates(t_prev, i_path)
                if not (c in seen or seen.add(c))
            )
        level = []
        for t_path in candidates:
            if _contributes(i_path, t_path):
                assert s <= k - r + 1  # distinct-label bound for contributing T
                level.append(t_path)
        if not level:
            break
        levels.append(tuple(sorted(level)))
        s += 1
    return ContributingSets(i_path, tuple(levels))
