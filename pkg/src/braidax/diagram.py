"""Oriented planar link diagrams: braid closures, axis-addition links, and
crossing surgery.

Diagrams are values; every operation returns a new diagram.  The arrays
follow the port conventions of :mod:`braidax.kernels`.  Positive braid
letters put the strand entering from the smaller position on top, and the
crossing sign always equals the letter sign.  The braid axis is oriented so
that it links every strand positively.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .kernels import get_kernels
from .words import BraidWord, cycle_decomposition, permutation_of

PD_FORMAT = "braidax-pd"
PD_VERSION = 1

# port roles within a crossing
OVER_IN, OVER_OUT, UNDER_IN, UNDER_OUT = 0, 1, 2, 3


class DiagramError(ValueError):
    """Inconsistent diagram data or invalid surgery target."""


@dataclass(frozen=True)
class ComponentInfo:
    """One labeled component: which top strand positions it uses (for braid
    closures), or the axis, or an isolated crossing-free loop."""

    kind: str  # "strand", "axis", "loop", or "unknown"
    strands: frozenset[int] = frozenset()
    entry: int = -1


@dataclass(frozen=True)
class ComponentLabeling:
    count: int
    infos: tuple[ComponentInfo, ...]

    def label_containing_strand(self, k: int) -> int:
        for j, info in enumerate(self.infos):
            if k in info.strands:
                return j
        raise DiagramError(f"no component contains strand {k}")

    @property
    def axis_label(self) -> int | None:
        for j, info in enumerate(self.infos):
            if info.kind == "axis":
                return j
        return None


@dataclass(frozen=True)
class LinkingMatrix:
    """Pairwise component linking numbers: symmetric, zero diagonal."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, km: tuple[int, int]) -> int:
        return self.entries[km[0]][km[1]]


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    """A link diagram: crossing signs, the arc pairing of ports, and a count
    of crossing-free loop components."""

    conn: np.ndarray
    sign: np.ndarray
    free_loops: int = 0
    meta: tuple[ComponentInfo, ...] | None = None

    def __post_init__(self):
        if self.conn.shape[0] != 4 * self.sign.shape[0]:
            raise DiagramError("conn must hold four ports per crossing")

    @property
    def crossings(self) -> int:
        return int(self.sign.shape[0])

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Fresh mutable copies of the underlying arrays."""
        return self.conn.copy(), self.sign.copy()

    def validate(self) -> None:
        """Check the arc pairing is a perfect out/in matching."""
        conn = self.conn
        for x in range(conn.shape[0]):
            y = int(conn[x])
            if y < 0 or y >= conn.shape[0] or int(conn[y]) != x:
                raise DiagramError(f"port {x} is not consistently paired")
            if (x & 1) == (y & 1):
                raise DiagramError(f"arc {x}-{y} does not join an out-port to an in-port")
        for s in np.asarray(self.sign):
            if s not in (-1, 1):
                raise DiagramError("crossing signs must be +1 or -1")


def _empty_diagram(loops: int, meta=None) -> LinkDiagram:
    return LinkDiagram(
        np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int8), loops, meta
    )


# ---------------------------------------------------------------------------
# construction


def _braid_part(w: BraidWord, extra: int):
    """Lay out one crossing per letter; returns (conn, sign, cur, first_in).

    ``extra`` reserves space for additional crossings (the axis weave).
    ``cur[p]`` is the dangling out-port at position p after the word,
    ``first_in[p]`` the first in-port the strand from top position p meets.
    """
    n = w.strands
    ncross = len(w.letters) + extra
    conn = np.full(4 * ncross, -1, dtype=np.int32)
    sign = np.zeros(ncross, dtype=np.int8)
    cur = [-1] * n
    first_in = [-1] * n
    for c, k in enumerate(w.letters):
        i = abs(k) - 1
        sign[c] = 1 if k > 0 else -1
        if k > 0:
            in_left, in_right = 4 * c + OVER_IN, 4 * c + UNDER_IN
            out_left, out_right = 4 * c + UNDER_OUT, 4 * c + OVER_OUT
        else:
            in_left, in_right = 4 * c + UNDER_IN, 4 * c + OVER_IN
            out_left, out_right = 4 * c + OVER_OUT, 4 * c + UNDER_OUT
        for pos, inp in ((i, in_left), (i + 1, in_right)):
            if cur[pos] >= 0:
                conn[cur[pos]] = inp
                conn[inp] = cur[pos]
            else:
                first_in[pos] = inp
        cur[i], cur[i + 1] = out_left, out_right
    return conn, sign, cur, first_in


def _strand_meta(w: BraidWord, first_in: list[int]) -> list[ComponentInfo]:
    """Braid components ordered by smallest top-strand position."""
    cycles = cycle_decomposition(permutation_of(w)).cycles
    infos = []
    for cyc in sorted(cycles, key=min):
        k = min(cyc)
        if first_in[k - 1] >= 0:
            infos.append(ComponentInfo("strand", frozenset(cyc), first_in[k - 1]))
        else:
            infos.append(ComponentInfo("loop", frozenset(cyc)))
    return infos


def closure_diagram(w: BraidWord) -> LinkDiagram:
    """Closure of a braid word: one crossing per letter, bottom position k
    joined back to top position k."""
    conn, sign, cur, first_in = _braid_part(w, 0)
    loops = 0
    for p in range(w.strands):
        if cur[p] >= 0:
            conn[cur[p]] = first_in[p]
            conn[first_in[p]] = cur[p]
        else:
            loops += 1
    meta = tuple(_strand_meta(w, first_in))
    return LinkDiagram(conn, sign, loops, meta)


def axis_link_diagram(w: BraidWord) -> LinkDiagram:
    """Closure plus the braid axis: an unknotted circle passing over every
    strand once and back under every strand, linking each component by its
    strand count.  Adds 2n crossings, all positive."""
    n = w.strands
    base = len(w.letters)
    conn, sign, cur, first_in = _braid_part(w, 2 * n)
    over = [base + p for p in range(n)]          # axis over strand p
    under = [base + n + p for p in range(n)]     # strand p over the returning axis
    for p in range(n):
        co, cu = over[p], under[p]
        sign[co] = 1
        sign[cu] = 1
        # strand at position p: ..cur[p] -> co.under_in, co.under_out -> cu.over_in
        inp = 4 * co + UNDER_IN
        if cur[p] >= 0:
            conn[cur[p]] = inp
            conn[inp] = cur[p]
        else:
            first_in[p] = inp
        conn[4 * co + UNDER_OUT] = 4 * cu + OVER_IN
        conn[4 * cu + OVER_IN] = 4 * co + UNDER_OUT
        cur[p] = 4 * cu + OVER_OUT
    # the axis itself: rightward over positions 0..n-1, back leftward underneath
    for p in range(n - 1):
        conn[4 * over[p] + OVER_OUT] = 4 * over[p + 1] + OVER_IN
        conn[4 * over[p + 1] + OVER_IN] = 4 * over[p] + OVER_OUT
    conn[4 * over[n - 1] + OVER_OUT] = 4 * under[n - 1] + UNDER_IN
    conn[4 * under[n - 1] + UNDER_IN] = 4 * over[n - 1] + OVER_OUT
    for p in range(n - 1, 0, -1):
        conn[4 * under[p] + UNDER_OUT] = 4 * under[p - 1] + UNDER_IN
        conn[4 * under[p - 1] + UNDER_IN] = 4 * under[p] + UNDER_OUT
    conn[4 * under[0] + UNDER_OUT] = 4 * over[0] + OVER_IN
    conn[4 * over[0] + OVER_IN] = 4 * under[0] + UNDER_OUT
    for p in range(n):
        conn[cur[p]] = first_in[p]
        conn[first_in[p]] = cur[p]
    meta = tuple(_strand_meta(w, first_in)) + (
        ComponentInfo("axis", frozenset(), 4 * over[0] + OVER_IN),
    )
    return LinkDiagram(conn, sign, 0, meta)


# ---------------------------------------------------------------------------
# tracing and linking


def trace_components(d: LinkDiagram) -> ComponentLabeling:
    """Deterministic component labeling.

    Braid-built diagrams keep their construction labels (components by
    smallest top position, axis last); diagrams produced by surgery fall back
    to first-port discovery order.  Crossing-free loops come after the
    crossing components in the fallback order.
    """
    K = get_kernels()
    if d.crossings == 0:
        infos = d.meta if d.meta is not None else tuple(
            ComponentInfo("loop") for _ in range(d.free_loops)
        )
        return ComponentLabeling(d.free_loops, tuple(infos))
    labels, ncomp, starts = K.trace_inports(d.conn)
    if d.meta is not None:
        if len(d.meta) != ncomp + d.free_loops:
            raise DiagramError("stored labeling does not match traced components")
        return ComponentLabeling(ncomp + d.free_loops, d.meta)
    infos = [ComponentInfo("unknown", entry=int(starts[j])) for j in range(ncomp)]
    infos += [ComponentInfo("loop") for _ in range(d.free_loops)]
    return ComponentLabeling(ncomp + d.free_loops, tuple(infos))


def linking_matrix(d: LinkDiagram) -> LinkingMatrix:
    """Half the signed inter-component crossing counts, in label order."""
    K = get_kernels()
    labeling = trace_components(d)
    p = labeling.count
    out = [[0] * p for _ in range(p)]
    if d.crossings:
        labels, ncomp, starts = K.trace_inports(d.conn)
        counts = K.linking_counts(d.conn, d.sign, labels, ncomp)
        # map public labels to traced labels through their entry ports
        pub_to_traced = {}
        for j, info in enumerate(labeling.infos):
            if info.entry >= 0:
                pub_to_traced[j] = int(labels[info.entry])
        if len(pub_to_traced) != ncomp:
            raise DiagramError("component entries do not cover all traced components")
        for j, tj in pub_to_traced.items():
            for k, tk in pub_to_traced.items():
                if j == k:
                    continue
                c = int(counts[tj, tk])
                if c % 2:
                    raise DiagramError("odd inter-component crossing count")
                out[j][k] = c // 2
    return LinkingMatrix(tuple(tuple(row) for row in out))


# ---------------------------------------------------------------------------
# surgery


def _rebuild(conn, sign, loops, meta=None) -> LinkDiagram:
    K = get_kernels()
    conn2, sign2 = K.compact(conn, sign)
    return LinkDiagram(conn2, sign2, loops, meta)


def _check_crossing(d: LinkDiagram, c: int) -> None:
    if not (0 <= c < d.crossings):
        raise DiagramError(f"no crossing {c} in a {d.crossings}-crossing diagram")


def switch_crossing(d: LinkDiagram, c: int) -> LinkDiagram:
    """Flip crossing c: over and under strands trade places, sign negates."""
    _check_crossing(d, c)
    K = get_kernels()
    conn, sign = d.arrays()
    K.switch_inplace(conn, sign, c)
    return LinkDiagram(conn, sign, d.free_loops, d.meta)


def smooth_crossing(d: LinkDiagram, c: int) -> LinkDiagram:
    """Oriented smoothing at crossing c (the zero tangle of the skein triple)."""
    _check_crossing(d, c)
    K = get_kernels()
    conn, sign = d.arrays()
    loops = int(K.smooth_inplace(conn, sign, c))
    return _rebuild(conn, sign, d.free_loops + loops)


def mirror_diagram(d: LinkDiagram) -> LinkDiagram:
    """Mirror image: every crossing switched (roles swapped, signs flipped)."""
    if d.crossings == 0:
        return d
    K = get_kernels()
    conn, sign = d.arrays()
    K.mirror_inplace(conn, sign)
    meta = d.meta
    if meta is not None:
        # ports swap roles under the mirror, so entry ports move with them
        meta = tuple(
            ComponentInfo(i.kind, i.strands, i.entry ^ 2 if i.entry >= 0 else -1)
            for i in meta
        )
    return LinkDiagram(conn, sign, d.free_loops, meta)


def delete_component(d: LinkDiagram, j: int) -> LinkDiagram:
    """Remove component j (by public label); crossings it shares with
    survivors are retracted by pulling the surviving strand straight."""
    K = get_kernels()
    labeling = trace_components(d)
    if not (0 <= j < labeling.count):
        raise DiagramError(f"no component {j} among {labeling.count}")
    info = labeling.infos[j]
    if info.entry < 0:
        if d.free_loops < 1:
            raise DiagramError("loop component missing")
        return LinkDiagram(d.conn.copy(), d.sign.copy(), d.free_loops - 1, None)
    conn, sign = d.arrays()
    labels, ncomp, starts = K.trace_inports(conn)
    kill = np.zeros(ncomp, dtype=np.bool_)
    kill[int(labels[info.entry])] = True
    loops = int(K.delete_marked_components(conn, sign, labels, kill))
    return _rebuild(conn, sign, d.free_loops + loops)


def simplify(d: LinkDiagram) -> LinkDiagram:
    """Remove kinks and cancelling clasps and split off crossing-free loops;
    the link type is unchanged."""
    if d.crossings == 0:
        return d
    K = get_kernels()
    conn, sign = d.arrays()
    loops = int(K.reidemeister_simplify(conn, sign))
    return _rebuild(conn, sign, d.free_loops + loops)


def is_split(d: LinkDiagram) -> bool:
    """True when the components fall into two groups sharing no crossing."""
    K = get_kernels()
    total = d.free_loops
    if d.crossings:
        labels, ncomp, starts = K.trace_inports(d.conn)
        total += ncomp
        if d.free_loops > 0:
            return True
        return bool(K.split_components(d.conn, labels, ncomp))
    return total > 1


def component_count(d: LinkDiagram) -> int:
    if d.crossings == 0:
        return d.free_loops
    K = get_kernels()
    _, ncomp, _ = K.trace_inports(d.conn)
    return ncomp + d.free_loops


# ---------------------------------------------------------------------------
# serialization (debugging / cache keys)

_ROLE_NAMES = ("over_in", "over_out", "under_in", "under_out")


def to_pd_json(d: LinkDiagram) -> str:
    """Serialize as a planar-diagram code: numbered arcs, per-crossing port
    tuples, and the crossing signs."""
    arc_id = {}
    for x in range(1, d.conn.shape[0], 2):  # out-ports, ascending
        arc_id[x] = len(arc_id)
        arc_id[int(d.conn[x])] = arc_id[x]
    crossings = []
    for c in range(d.crossings):
        ports = {name: arc_id[4 * c + r] for r, name in enumerate(_ROLE_NAMES)}
        crossings.append({"sign": int(d.sign[c]), "ports": ports})
    doc = {
        "format": PD_FORMAT,
        "version": PD_VERSION,
        "free_loops": d.free_loops,
        "crossings": crossings,
    }
    return json.dumps(doc, sort_keys=True)


def from_pd_json(text: str) -> LinkDiagram:
    doc = json.loads(text)
    if doc.get("format") != PD_FORMAT or doc.get("version") != PD_VERSION:
        raise DiagramError("unrecognized diagram serialization")
    crossings = doc["crossings"]
    ncross = len(crossings)
    conn = np.full(4 * ncross, -1, dtype=np.int32)
    sign = np.zeros(ncross, dtype=np.int8)
    arc_out: dict[int, int] = {}
    arc_in: dict[int, int] = {}
    for c, entry in enumerate(crossings):
        sign[c] = int(entry["sign"])
        for r, name in enumerate(_ROLE_NAMES):
            a = int(entry["ports"][name])
            side = arc_out if r % 2 == 1 else arc_in
            if a in side:
                raise DiagramError(f"arc {a} used twice as an {'out' if r % 2 else 'in'} end")
            side[a] = 4 * c + r
    if set(arc_out) != set(arc_in):
        raise DiagramError("arcs do not form a perfect out/in matching")
    for a, x in arc_out.items():
        conn[x] = arc_in[a]
        conn[arc_in[a]] = x
    d = LinkDiagram(conn, sign, int(doc.get("free_loops", 0)), None)
    d.validate()
    return d
