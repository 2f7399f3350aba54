"""Pure-Python contraction step; the compiled ``_sweep`` module mirrors it exactly."""

from __future__ import annotations


def step(states, b, glue, newpos, nb_new, terms, mults, shifts, mfacs, B):
    """Absorb one piece into every boundary state.

    ``states`` maps a key to ``(packed_coefficient, majorant)``.  The key is
    the boundary matching (partner index per boundary point) followed by one
    byte holding the exponent residue mod 4; the packed integer has one
    ``B``-bit digit per power of ``A^4``.  Nodes ``0 .. b-1`` are the old
    boundary points and ``b ..`` the piece endpoints; ``glue[v]`` is the node
    joined to ``v`` by an edge closed in this step (or -1) and ``newpos[v]``
    the position of a surviving node on the new boundary (or -1).
    ``terms[t]`` is the local pairing for term ``t``; ``mults``, ``shifts``
    (in powers of ``A``) and ``mfacs`` are indexed ``[t][loops]``.

    Returns ``(new_states, max_majorant)``.
    """
    nn = len(glue)
    out = {}
    free = [v for v in range(nn) if newpos[v] >= 0]
    glued = [v for v in range(nn) if glue[v] >= 0]
    for key, (P, m) in states.items():
        rho = key[b]
        for t, tp in enumerate(terms):
            match = list(key[:b]) + [b + j for j in tp]
            seen = bytearray(nn)
            res = bytearray(nb_new + 1)
            for v in free:
                if seen[v]:
                    continue
                seen[v] = 1
                u = match[v]
                while newpos[u] < 0:
                    seen[u] = 1
                    g = glue[u]
                    seen[g] = 1
                    u = match[g]
                seen[u] = 1
                res[newpos[v]] = newpos[u]
                res[newpos[u]] = newpos[v]
            loops = 0
            for v in glued:
                if seen[v]:
                    continue
                loops += 1
                u = v
                while not seen[u]:
                    seen[u] = 1
                    g = glue[u]
                    seen[g] = 1
                    u = match[g]
            mult = mults[t][loops]
            val = P if mult == 1 else P * mult
            e = rho + shifts[t][loops]
            res[nb_new] = e & 3
            if e >= 4:
                val <<= (e >> 2) * B
            mm = m * mfacs[t][loops]
            k = bytes(res)
            old = out.get(k)
            if old is None:
                out[k] = (val, mm)
            else:
                out[k] = (old[0] + val, old[1] + mm)
    best = 0
    for _, mm in out.values():
        if mm > best:
            best = mm
    return out, best
