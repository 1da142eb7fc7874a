"""Array-level primitives for oriented link diagrams.

A diagram with c crossings is stored as two arrays:

* ``sign``: int8[c], the crossing sign (+1 or -1); 0 marks a removed crossing
  awaiting compaction.
* ``conn``: int32[4c], a symmetric arc pairing between ports.  Crossing k owns
  ports 4k..4k+3 with roles over-in (0), over-out (1), under-in (2),
  under-out (3).  Even ports are in-ports, odd ports are out-ports, and a
  strand entering at in-port q leaves through out-port q+1.  For every arc,
  ``conn[out] == in`` and ``conn[in] == out``.

Crossing-free loop components are counted separately by the caller; the
surgery routines here return how many such loops they split off.

The hot functions are compiled with numba when available.  Set
``BRAIDAX_KERNELS=python`` to force the uncompiled path (the same source);
``get_kernels()`` returns the active namespace and both flavors stay
importable for benchmarks and cross-checks.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit as _njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    _njit = None
    NUMBA_AVAILABLE = False


def _build(jit: bool) -> SimpleNamespace:
    """Create the kernel namespace, optionally jit-compiling every function.

    All kernels are defined inside this factory so the compiled variants can
    call each other through closure references while the plain variants stay
    genuine Python functions.
    """

    if jit:
        dec = _njit(cache=False)
    else:
        dec = lambda f: f

    @dec
    def trace_inports(conn):
        """Label every in-port with its component id, discovery-ordered.

        Returns (labels, ncomp, starts) where labels is int32[4c] (-1 on
        out-ports) and starts[j] is the smallest in-port of component j.
        """
        nport = conn.shape[0]
        labels = np.full(nport, -1, dtype=np.int32)
        starts = np.full(nport // 4 + 1, -1, dtype=np.int32)
        ncomp = 0
        for q in range(0, nport, 2):
            if labels[q] >= 0:
                continue
            starts[ncomp] = q
            cur = q
            while True:
                labels[cur] = ncomp
                cur = conn[cur + 1]
                if cur == q:
                    break
            ncomp += 1
        return labels, ncomp, starts[:ncomp]

    @dec
    def split_components(conn, labels, ncomp):
        """True when the crossing-adjacency graph of components is disconnected."""
        if ncomp <= 1:
            return False
        parent = np.arange(ncomp, dtype=np.int32)
        for c in range(conn.shape[0] // 4):
            a = labels[4 * c]
            b = labels[4 * c + 2]
            # find roots
            ra = a
            while parent[ra] != ra:
                ra = parent[ra]
            rb = b
            while parent[rb] != rb:
                rb = parent[rb]
            if ra != rb:
                parent[rb] = ra
        roots = 0
        for j in range(ncomp):
            if parent[j] == j:
                roots += 1
        return roots > 1

    @dec
    def linking_counts(conn, sign, labels, ncomp):
        """Signed inter-component crossing counts (twice the linking numbers)."""
        m = np.zeros((ncomp, ncomp), dtype=np.int64)
        for c in range(sign.shape[0]):
            a = labels[4 * c]
            b = labels[4 * c + 2]
            if a != b:
                m[a, b] += sign[c]
                m[b, a] += sign[c]
        return m

    @dec
    def chain_scan(conn, sign, starts):
        """Walk all components in order and list the descending violations.

        A crossing first met on its under strand is 'bad'.  Switching the bad
        crossings in encounter order turns the diagram descending, and the
        strand path itself never changes, so a single read-only pass suffices.
        Returns (nbad, bad_ids, eps) with eps the sign before switching.
        """
        ncross = sign.shape[0]
        visited = np.zeros(ncross, dtype=np.bool_)
        bad_ids = np.empty(ncross, dtype=np.int32)
        eps = np.empty(ncross, dtype=np.int8)
        nbad = 0
        for j in range(starts.shape[0]):
            start = starts[j]
            cur = start
            while True:
                c = cur >> 2
                if not visited[c]:
                    visited[c] = True
                    if cur & 2:  # entered on the under strand
                        bad_ids[nbad] = c
                        eps[nbad] = sign[c]
                        nbad += 1
                cur = conn[cur + 1]
                if cur == start:
                    break
        return nbad, bad_ids[:nbad], eps[:nbad]

    @dec
    def switch_inplace(conn, sign, c):
        """Exchange the over and under strands of crossing c and flip its sign."""
        oi = 4 * c
        oo = oi + 1
        ui = oi + 2
        uo = oi + 3
        p_oi = conn[oi]
        p_ui = conn[ui]
        n_oo = conn[oo]
        n_uo = conn[uo]

        # remap the endpoints of the (up to four) incident arcs: for ports of
        # crossing c, over<->under means XOR with 2
        def f(p):
            if p >> 2 == c:
                return p ^ 2
            return p

        a1o, a1i = f(p_oi), ui
        a2o, a2i = f(p_ui), oi
        a3o, a3i = uo, f(n_oo)
        a4o, a4i = oo, f(n_uo)
        conn[a1o] = a1i
        conn[a1i] = a1o
        conn[a2o] = a2i
        conn[a2i] = a2o
        conn[a3o] = a3i
        conn[a3i] = a3o
        conn[a4o] = a4i
        conn[a4i] = a4o
        sign[c] = -sign[c]

    @dec
    def mirror_inplace(conn, sign):
        """Switch every crossing: reflect the diagram through the plane."""
        out = conn.copy()
        for x in range(conn.shape[0]):
            out[x ^ 2] = conn[x] ^ 2
        conn[:] = out
        for c in range(sign.shape[0]):
            sign[c] = -sign[c]

    @dec
    def remove_set(conn, sign, dead, wire):
        """Delete the crossings marked in ``dead``, splicing strands through.

        ``wire[q]`` gives, for an in-port q of a dead crossing, the out-port
        its strand continues through (-1 when that strand is being discarded
        entirely).  Surviving strands are reconnected; closed strands that no
        longer meet any live crossing are counted and returned as free loops.
        """
        nport = conn.shape[0]
        handled = np.zeros(nport, dtype=np.bool_)
        loops = 0
        # pass 1: strands entering the dead region from a live crossing
        for c in range(dead.shape[0]):
            if not dead[c]:
                continue
            for q in (4 * c, 4 * c + 2):
                if wire[q] < 0 or handled[q]:
                    continue
                feeder = conn[q]
                if dead[feeder >> 2]:
                    continue
                cur = q
                while cur >= 0 and dead[cur >> 2]:
                    handled[cur] = True
                    out = wire[cur]
                    if out < 0:
                        raise ValueError("surviving strand runs into an unwired port")
                    cur = conn[out]
                conn[feeder] = cur
                conn[cur] = feeder
        # pass 2: strands living entirely inside the dead region become loops
        for c in range(dead.shape[0]):
            if not dead[c]:
                continue
            for q in (4 * c, 4 * c + 2):
                if wire[q] < 0 or handled[q]:
                    continue
                loops += 1
                cur = q
                while not handled[cur]:
                    handled[cur] = True
                    cur = conn[wire[cur]]
        for c in range(dead.shape[0]):
            if dead[c]:
                sign[c] = 0
        return loops

    @dec
    def smooth_inplace(conn, sign, c):
        """Oriented smoothing: over-in continues to under-out, under-in to
        over-out, and the crossing disappears.  Returns split-off loops."""
        ncross = sign.shape[0]
        dead = np.zeros(ncross, dtype=np.bool_)
        wire = np.full(4 * ncross, -1, dtype=np.int32)
        dead[c] = True
        wire[4 * c] = 4 * c + 3
        wire[4 * c + 2] = 4 * c + 1
        return remove_set(conn, sign, dead, wire)

    @dec
    def reidemeister_simplify(conn, sign):
        """Remove kinks and cancelling clasps until none remain.

        Kink: one of the crossing's out-ports is arced straight back into the
        in-port of its other strand.  Cancelling clasp: two crossings of
        opposite sign joined by two direct arcs with the same strand on top
        at both.  Returns the number of free loops split off.
        """
        ncross = sign.shape[0]
        loops = 0
        changed = True
        while changed:
            changed = False
            for c in range(ncross):
                if sign[c] == 0:
                    continue
                oi = 4 * c
                oo = oi + 1
                ui = oi + 2
                uo = oi + 3
                if conn[oo] == ui or conn[uo] == oi:
                    dead = np.zeros(ncross, dtype=np.bool_)
                    wire = np.full(4 * ncross, -1, dtype=np.int32)
                    dead[c] = True
                    wire[oi] = oo
                    wire[ui] = uo
                    loops += remove_set(conn, sign, dead, wire)
                    changed = True
                    continue
                # clasp cancellation: our over strand runs straight into d's
                # over-in, and the under strands are joined directly too
                nxt = conn[oo]
                d = nxt >> 2
                if (nxt & 3) == 0 and d != c and sign[d] == -sign[c]:
                    parallel = conn[uo] == 4 * d + 2
                    antiparallel = conn[4 * d + 3] == ui
                    if parallel or antiparallel:
                        dead = np.zeros(ncross, dtype=np.bool_)
                        wire = np.full(4 * ncross, -1, dtype=np.int32)
                        dead[c] = True
                        dead[d] = True
                        wire[oi] = oo
                        wire[ui] = uo
                        wire[4 * d] = 4 * d + 1
                        wire[4 * d + 2] = 4 * d + 3
                        loops += remove_set(conn, sign, dead, wire)
                        changed = True
        return loops

    @dec
    def compact(conn, sign):
        """Drop removed crossings and renumber the rest, preserving order."""
        ncross = sign.shape[0]
        newidx = np.full(ncross, -1, dtype=np.int32)
        nalive = 0
        for c in range(ncross):
            if sign[c] != 0:
                newidx[c] = nalive
                nalive += 1
        new_conn = np.empty(4 * nalive, dtype=np.int32)
        new_sign = np.empty(nalive, dtype=np.int8)
        for c in range(ncross):
            k = newidx[c]
            if k < 0:
                continue
            new_sign[k] = sign[c]
            for r in range(4):
                p = conn[4 * c + r]
                new_conn[4 * k + r] = 4 * newidx[p >> 2] + (p & 3)
        return new_conn, new_sign

    @dec
    def delete_marked_components(conn, sign, labels, kill):
        """Remove every component whose label is marked in ``kill``.

        Crossings internal to killed components vanish; crossings they share
        with survivors are retracted by splicing the surviving strand through.
        Returns free loops split off among the survivors.
        """
        ncross = sign.shape[0]
        dead = np.zeros(ncross, dtype=np.bool_)
        wire = np.full(4 * ncross, -1, dtype=np.int32)
        for c in range(ncross):
            over_dies = kill[labels[4 * c]]
            under_dies = kill[labels[4 * c + 2]]
            if over_dies or under_dies:
                dead[c] = True
                if not over_dies:
                    wire[4 * c] = 4 * c + 1
                if not under_dies:
                    wire[4 * c + 2] = 4 * c + 3
        return remove_set(conn, sign, dead, wire)

    return SimpleNamespace(
        jitted=jit,
        trace_inports=trace_inports,
        split_components=split_components,
        linking_counts=linking_counts,
        chain_scan=chain_scan,
        switch_inplace=switch_inplace,
        mirror_inplace=mirror_inplace,
        remove_set=remove_set,
        smooth_inplace=smooth_inplace,
        reidemeister_simplify=reidemeister_simplify,
        compact=compact,
        delete_marked_components=delete_marked_components,
    )


PYTHON_KERNELS = _build(False)
NUMBA_KERNELS = _build(True) if NUMBA_AVAILABLE else None

_FLAVOR = os.environ.get("BRAIDAX_KERNELS", "numba").strip().lower()
if _FLAVOR not in ("numba", "python"):
    raise ValueError(f"BRAIDAX_KERNELS must be 'numba' or 'python', got {_FLAVOR!r}")
if _FLAVOR == "numba" and NUMBA_KERNELS is not None:
    ACTIVE_KERNELS = NUMBA_KERNELS
else:
    ACTIVE_KERNELS = PYTHON_KERNELS


def get_kernels(flavor: str | None = None) -> SimpleNamespace:
    """Return a kernel namespace: the active one, or an explicit flavor."""
    if flavor is None:
        return ACTIVE_KERNELS
    if flavor == "python":
        return PYTHON_KERNELS
    if flavor == "numba":
        if NUMBA_KERNELS is None:
            raise RuntimeError("numba kernels requested but numba is unavailable")
        return NUMBA_KERNELS
    raise ValueError(f"unknown kernel flavor {flavor!r}")
