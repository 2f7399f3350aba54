# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled contraction step.  Same contract as ``_sweep_py.step``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


def step(dict states, int b, glue, newpos, int nb_new, terms, mults, shifts, mfacs, B):
    cdef int nn = len(glue)
    cdef int nt = len(terms)
    cdef int np_ = nn - b
    cdef int *cglue = <int *> malloc(nn * sizeof(int))
    cdef int *cnew = <int *> malloc(nn * sizeof(int))
    cdef int *match = <int *> malloc(nn * sizeof(int))
    cdef int *ctp = <int *> malloc((nt * np_ + 1) * sizeof(int))
    cdef int *freev = <int *> malloc(nn * sizeof(int))
    cdef int *gluedv = <int *> malloc(nn * sizeof(int))
    cdef unsigned char *seen = <unsigned char *> malloc(nn + 1)
    cdef unsigned char *res = <unsigned char *> malloc(nb_new + 1)
    cdef int rho, e
    cdef int i, t, v, u, g, loops, nfree = 0, nglued = 0
    cdef const unsigned char[:] kv
    cdef dict out = {}
    cdef bytes key, k
    try:
        for i in range(nn):
            cglue[i] = glue[i]
            cnew[i] = newpos[i]
            if cnew[i] >= 0:
                freev[nfree] = i
                nfree += 1
            if cglue[i] >= 0:
                gluedv[nglued] = i
                nglued += 1
        for t in range(nt):
            tp = terms[t]
            for i in range(np_):
                ctp[t * np_ + i] = b + <int> tp[i]
        for key, pm in states.items():
            P = pm[0]
            m = pm[1]
            kv = key
            for i in range(b):
                match[i] = kv[i]
            rho = kv[b]
            for t in range(nt):
                for i in range(np_):
                    match[b + i] = ctp[t * np_ + i]
                memset(seen, 0, nn)
                memset(res, 0, nb_new)
                for i in range(nfree):
                    v = freev[i]
                    if seen[v]:
                        continue
                    seen[v] = 1
                    u = match[v]
                    while cnew[u] < 0:
                        seen[u] = 1
                        g = cglue[u]
                        seen[g] = 1
                        u = match[g]
                    seen[u] = 1
                    res[cnew[v]] = cnew[u]
                    res[cnew[u]] = cnew[v]
                loops = 0
                for i in range(nglued):
                    v = gluedv[i]
                    if seen[v]:
                        continue
                    loops += 1
                    u = v
                    while not seen[u]:
                        seen[u] = 1
                        g = cglue[u]
                        seen[g] = 1
                        u = match[g]
                mult = mults[t][loops]
                val = P if mult == 1 else P * mult
                e = rho + <int> shifts[t][loops]
                res[nb_new] = e & 3
                if e >= 4:
                    val = val << ((e >> 2) * B)
                mm = m * mfacs[t][loops]
                k = res[:nb_new + 1]
                old = out.get(k)
                if old is None:
                    out[k] = (val, mm)
                else:
                    out[k] = (old[0] + val, old[1] + mm)
    finally:
        free(cglue)
        free(cnew)
        free(match)
        free(ctp)
        free(freev)
        free(gluedv)
        free(seen)
        free(res)
    best = 0
    for pm in out.values():
        if pm[1] > best:
            best = pm[1]
    return out, best
