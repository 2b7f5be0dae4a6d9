"""Exhaustive bracket state sum for mixed braid closures in the solid torus.

The fixed strand is never smoothed: loop letters are opaque axis passes and
only moving-moving crossings enter the state sum.  A positive crossing
resolves as A·(identity tile) + A^-1·(cap-cup tile); a negative crossing
swaps the weights.  Closure arcs join bottom endpoint i to top endpoint i
without encircling the axis.

After smoothing, the moving part is a crossingless planar curve system.
Each component collects signed axis passes along its traversal; adjacent
opposite passes cancel in cyclic order (the mixed Reidemeister II move), and
a component whose surviving passes share one sign winds |passes| times.  Any
survivor with mixed signs would leave the validated diagram class and is
rejected loudly — cyclic reduction makes that unreachable for braid closures,
and the assertion stays in as a tripwire.

Terminal states are multisets of windings plus contractible loops, converted
to the coil basis through the shared recursion in ``basis`` (a contractible
loop is a δ factor; an all-contractible diagram with c loops is δ^(c-1) t^0).

Scope note: the winding multiset forgets how wound components interleave
around the axis, and the split-product merge is exact only when they do not.
Coil powers, longitude powers, two-coil monomial words, braid-generator-only
words, and twist words with at most two loop letters all evaluate exactly
(the verify suite cross-checks them against the independent algebraic path);
outside those classes the value is a certified state sum of the stated model
but need not be an isotopy invariant — the reports flag the one affected
family.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import SkeinVector, merge_components
from .braid import T_GEN, MixedBraidWord
from .coeffs import LaurentPoly

DEFAULT_STATE_CAP = 24


class StateCapExceeded(RuntimeError):
    def __init__(self, crossings: int, cap: int):
        super().__init__(
            f"{crossings} crossings need 2^{crossings} = {2 ** crossings} states; "
            f"cap allows 2^{cap}"
        )
        self.crossings = crossings
        self.cap = cap


class MixedSignPassesError(RuntimeError):
    """A component kept axis passes of both signs after cancellation."""


@dataclass(frozen=True)
class SmoothingState:
    """One choice of smoothings: per-crossing bits, 1 = cap-cup tile."""

    word: MixedBraidWord
    choices: tuple[int, ...]

    def weight(self) -> LaurentPoly:
        return LaurentPoly.monomial("A", self.weight_exponent())

    def weight_exponent(self) -> int:
        exp = 0
        k = 0
        for g, sign in self.word.letters:
            if g == T_GEN:
                continue
            capcup = self.choices[k]
            k += 1
            exp += sign * (-1 if capcup else 1)
        return exp


@dataclass(frozen=True)
class TerminalState:
    contractible_loops: int
    windings: tuple[int, ...]  # sorted descending, entries >= 1


def smooth_states(w: MixedBraidWord, cap: int = DEFAULT_STATE_CAP) -> list[SmoothingState]:
    """All 2^c smoothing states in lexicographic order of crossing choices."""
    c = w.crossing_count()
    if c > cap:
        raise StateCapExceeded(c, cap)
    states = []
    for mask in range(2 ** c):
        choices = tuple((mask >> k) & 1 for k in range(c))
        states.append(SmoothingState(w, choices))
    return states


def _cyclic_cancel(passes: list[int]) -> list[int]:
    stack: list[int] = []
    for p in passes:
        if stack and stack[-1] == -p:
            stack.pop()
        else:
            stack.append(p)
    while len(stack) >= 2 and stack[0] == -stack[-1]:
        stack.pop()
        stack.pop(0)
    return stack


Node = tuple[int, int]  # (level, position)


def trace_components(state: SmoothingState) -> TerminalState:
    """Follow strand connectivity through tiles and closure arcs.

    Each loop tile traversed downward contributes its sign, upward the
    opposite; windings are the surviving pass counts after cyclic
    cancellation.
    """
    w = state.word
    n = w.strands
    levels = len(w.letters)
    # Arcs as (top node, bottom node, pass contribution when traversed
    # first-to-second).  Every node meets exactly two arc ends.
    edges: list[tuple[Node, Node, int]] = []

    def add(a: Node, b: Node, contrib: int = 0) -> None:
        edges.append((a, b, contrib))

    k = 0
    for lvl, (g, sign) in enumerate(w.letters):
        if g == T_GEN:
            add((lvl, 1), (lvl + 1, 1), sign)
            for j in range(2, n + 1):
                add((lvl, j), (lvl + 1, j))
        else:
            if state.choices[k]:
                add((lvl, g), (lvl, g + 1))
                add((lvl + 1, g), (lvl + 1, g + 1))
                for j in range(1, n + 1):
                    if j not in (g, g + 1):
                        add((lvl, j), (lvl + 1, j))
            else:
                for j in range(1, n + 1):
                    add((lvl, j), (lvl + 1, j))
            k += 1
    for j in range(1, n + 1):
        add((0, j), (levels, j))

    ends: dict[Node, list[tuple[int, int]]] = {}
    for ei, (a, b, _) in enumerate(edges):
        ends.setdefault(a, []).append((ei, 0))
        ends.setdefault(b, []).append((ei, 1))
    for node, es in ends.items():
        if len(es) != 2:
            raise AssertionError(f"node {node} has degree {len(es)}")

    visited = [False] * len(edges)
    loops = 0
    windings: list[int] = []
    for start in range(len(edges)):
        if visited[start]:
            continue
        passes: list[int] = []
        ei, side = start, 0  # traverse from side `side` toward the other end
        while not visited[ei]:
            visited[ei] = True
            a, b, contrib = edges[ei]
            if contrib:
                passes.append(contrib if side == 0 else -contrib)
            arrive = b if side == 0 else a
            arrive_end = (ei, 1 - side)
            e1, e2 = ends[arrive]
            ei, side = e2 if e1 == arrive_end else e1
        survivors = _cyclic_cancel(passes)
        if not survivors:
            loops += 1
        else:
            if any(p > 0 for p in survivors) and any(p < 0 for p in survivors):
                raise MixedSignPassesError(
                    f"component with passes {survivors} in {w.format()!r}"
                )
            windings.append(len(survivors))
    return TerminalState(loops, tuple(sorted(windings, reverse=True)))


def merge_windings(ts: TerminalState) -> SkeinVector:
    """Coil-basis class of a terminal state (shared merge recursion)."""
    return merge_components(ts.windings, ts.contractible_loops)


def evaluate_closure(w: MixedBraidWord, cap: int = DEFAULT_STATE_CAP) -> SkeinVector:
    """Bracket class of the braid closure in the coil basis {t^n}.

    Deterministic: states enumerate in lexicographic crossing order, and the
    accumulation is a commutative sum so any evaluation order agrees.
    """
    total = SkeinVector.zero()
    merged: dict[TerminalState, SkeinVector] = {}
    for state in smooth_states(w, cap):
        ts = trace_components(state)
        if ts not in merged:
            merged[ts] = merge_windings(ts)
        total = total + merged[ts].scale(state.weight())
    return total
