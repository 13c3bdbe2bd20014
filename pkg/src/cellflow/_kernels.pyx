# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the hot inner loops behind block detection and the
smell detectors' digraph machinery.

Contracts (mirrored exactly by _kernels_py, the pure-Python fallback):

  grid_component_labels(keys, stride)
      8-connected component labels over occupied grid cells. `keys` is a
      sorted ascending sequence of row*stride+col encodings; labels are
      canonical (numbered by first occurrence in key order). Backward
      neighbours are located by binary search instead of a hash map.

  scc_labels(n, tails, heads)
      Strongly connected components (iterative Tarjan), relabelled by
      first occurrence over nodes 0..n-1.

  has_cycle(n, tails, heads)
      Kahn's algorithm; True when some directed cycle exists.

  removal_fix_mask(n, tails, heads)
      Per edge: 1 iff deleting that single edge leaves an acyclic graph.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "native"


cdef long long* _copy_int64(object seq, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> malloc(n * sizeof(long long) if n else sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef int* _copy_int32(object seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc(n * sizeof(int) if n else sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef Py_ssize_t _bsearch(long long* keys, Py_ssize_t hi, long long target) nogil:
    """Index of target in keys[0:hi] (sorted ascending), or -1."""
    cdef Py_ssize_t lo = 0, mid
    hi -= 1
    while lo <= hi:
        mid = (lo + hi) >> 1
        if keys[mid] < target:
            lo = mid + 1
        elif keys[mid] > target:
            hi = mid - 1
        else:
            return mid
    return -1


cdef Py_ssize_t _find(Py_ssize_t* parent, Py_ssize_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def grid_component_labels(keys, long long stride):
    cdef Py_ssize_t n = len(keys)
    if n == 0:
        return []
    cdef long long* kbuf = _copy_int64(keys, n)
    cdef Py_ssize_t* parent = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t* labels = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if parent == NULL or labels == NULL:
        free(kbuf); free(parent); free(labels)
        raise MemoryError()

    cdef Py_ssize_t i, j, ri, rj
    cdef long long offsets[4]
    offsets[0] = 1            # west
    offsets[1] = stride - 1   # north-east
    offsets[2] = stride       # north
    offsets[3] = stride + 1   # north-west
    cdef int k
    with nogil:
        for i in range(n):
            parent[i] = i
        for i in range(n):
            for k in range(4):
                j = _bsearch(kbuf, i, kbuf[i] - offsets[k])
                if j >= 0:
                    ri = _find(parent, i)
                    rj = _find(parent, j)
                    if ri != rj:
                        if ri < rj:
                            parent[rj] = ri
                        else:
                            parent[ri] = rj
        for i in range(n):
            labels[i] = -1
        j = 0  # next fresh label
        for i in range(n):
            ri = _find(parent, i)
            if labels[ri] == -1:
                labels[ri] = j
                j += 1

    try:
        return [labels[_find(parent, i)] for i in range(n)]
    finally:
        free(kbuf); free(parent); free(labels)


def scc_labels(int n, tails, heads):
    cdef Py_ssize_t m = len(tails)
    if n == 0:
        return []
    cdef int* tbuf = _copy_int32(tails, m)
    cdef int* hbuf = _copy_int32(heads, m)

    # CSR adjacency
    cdef int* start = <int*> malloc((n + 1) * sizeof(int))
    cdef int* adj = <int*> malloc((m if m else 1) * sizeof(int))
    # Tarjan state
    cdef int* index = <int*> malloc(n * sizeof(int))
    cdef int* low = <int*> malloc(n * sizeof(int))
    cdef char* on_stack = <char*> malloc(n)
    cdef int* comp = <int*> malloc(n * sizeof(int))
    cdef int* stack = <int*> malloc(n * sizeof(int))
    cdef int* work_v = <int*> malloc(n * sizeof(int))
    cdef int* work_e = <int*> malloc(n * sizeof(int))
    cdef int* fill = <int*> malloc((n + 1) * sizeof(int))
    cdef int* remap = <int*> malloc(n * sizeof(int))
    if (start == NULL or adj == NULL or index == NULL or low == NULL or on_stack == NULL
            or comp == NULL or stack == NULL or work_v == NULL or work_e == NULL
            or fill == NULL or remap == NULL):
        free(tbuf); free(hbuf); free(start); free(adj); free(index); free(low)
        free(on_stack); free(comp); free(stack); free(work_v); free(work_e)
        free(fill); free(remap)
        raise MemoryError()

    cdef Py_ssize_t e
    cdef int i, v, w, ei, sp, wp, counter, root, fresh
    cdef bint advanced
    with nogil:
        for i in range(n + 1):
            start[i] = 0
        for e in range(m):
            start[tbuf[e] + 1] += 1
        for i in range(n):
            start[i + 1] += start[i]
        for i in range(n + 1):
            fill[i] = start[i]
        for e in range(m):
            adj[fill[tbuf[e]]] = hbuf[e]
            fill[tbuf[e]] += 1

        for i in range(n):
            index[i] = -1
            on_stack[i] = 0
            comp[i] = -1
        counter = 0
        sp = 0   # stack pointer
        for root in range(n):
            if index[root] != -1:
                continue
            wp = 0
            work_v[0] = root
            work_e[0] = 0
            wp = 1
            while wp > 0:
                v = work_v[wp - 1]
                ei = work_e[wp - 1]
                if ei == 0:
                    index[v] = counter
                    low[v] = counter
                    counter += 1
                    stack[sp] = v
                    sp += 1
                    on_stack[v] = 1
                advanced = False
                while start[v] + ei < start[v + 1]:
                    w = adj[start[v] + ei]
                    ei += 1
                    if index[w] == -1:
                        work_e[wp - 1] = ei
                        work_v[wp] = w
                        work_e[wp] = 0
                        wp += 1
                        advanced = True
                        break
                    if on_stack[w] and index[w] < low[v]:
                        low[v] = index[w]
                if advanced:
                    continue
                wp -= 1
                if low[v] == index[v]:
                    while True:
                        w = stack[sp - 1]
                        sp -= 1
                        on_stack[w] = 0
                        comp[w] = v
                        if w == v:
                            break
                if wp > 0:
                    if low[v] < low[work_v[wp - 1]]:
                        low[work_v[wp - 1]] = low[v]

        for i in range(n):
            remap[i] = -1
        fresh = 0
        for i in range(n):
            if remap[comp[i]] == -1:
                remap[comp[i]] = fresh
                fresh += 1

    try:
        return [remap[comp[i]] for i in range(n)]
    finally:
        free(tbuf); free(hbuf); free(start); free(adj); free(index); free(low)
        free(on_stack); free(comp); free(stack); free(work_v); free(work_e)
        free(fill); free(remap)


cdef bint _kahn_cyclic(int n, Py_ssize_t m, int* tails, int* heads, Py_ssize_t skip,
                       int* indegree, int* queue) nogil:
    cdef Py_ssize_t e
    cdef int i, qn, seen, v
    for i in range(n):
        indegree[i] = 0
    for e in range(m):
        if e != skip:
            indegree[heads[e]] += 1
    qn = 0
    for i in range(n):
        if indegree[i] == 0:
            queue[qn] = i
            qn += 1
    seen = 0
    while qn > 0:
        qn -= 1
        v = queue[qn]
        seen += 1
        for e in range(m):
            if e != skip and tails[e] == v:
                indegree[heads[e]] -= 1
                if indegree[heads[e]] == 0:
                    queue[qn] = heads[e]
                    qn += 1
    return seen != n


def has_cycle(int n, tails, heads):
    cdef Py_ssize_t m = len(tails)
    if n == 0 or m == 0:
        return False
    cdef int* tbuf = _copy_int32(tails, m)
    cdef int* hbuf = _copy_int32(heads, m)
    cdef int* indegree = <int*> malloc(n * sizeof(int))
    cdef int* queue = <int*> malloc(n * sizeof(int))
    if indegree == NULL or queue == NULL:
        free(tbuf); free(hbuf); free(indegree); free(queue)
        raise MemoryError()
    cdef bint result
    with nogil:
        result = _kahn_cyclic(n, m, tbuf, hbuf, -1, indegree, queue)
    free(tbuf); free(hbuf); free(indegree); free(queue)
    return bool(result)


def removal_fix_mask(int n, tails, heads):
    cdef Py_ssize_t m = len(tails)
    if m == 0:
        return []
    cdef int* tbuf = _copy_int32(tails, m)
    cdef int* hbuf = _copy_int32(heads, m)
    cdef int* indegree = <int*> malloc(n * sizeof(int) if n else sizeof(int))
    cdef int* queue = <int*> malloc(n * sizeof(int) if n else sizeof(int))
    cdef char* mask = <char*> malloc(m)
    if indegree == NULL or queue == NULL or mask == NULL:
        free(tbuf); free(hbuf); free(indegree); free(queue); free(mask)
        raise MemoryError()
    cdef Py_ssize_t e
    with nogil:
        for e in range(m):
            mask[e] = 0 if _kahn_cyclic(n, m, tbuf, hbuf, e, indegree, queue) else 1
    try:
        return [mask[e] for e in range(m)]
    finally:
        free(tbuf); free(hbuf); free(indegree); free(queue); free(mask)
