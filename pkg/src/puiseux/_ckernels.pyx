# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled twin of ``_kernels_py``; see that module for the contracts."""

from math import gcd

from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

import numpy as np
cimport numpy as cnp

cnp.import_array()

FOUND = 1
EXHAUSTED = 0
BUDGET = -1


def suffix_reach(weights, long long target):
    cdef Py_ssize_t n = len(weights)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] table = np.zeros((n + 1, target + 1), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] tv = table
    cdef long long w, t
    cdef Py_ssize_t i
    tv[n, 0] = 1
    for i in range(n - 1, -1, -1):
        w = weights[i]
        for t in range(target + 1):
            tv[i, t] = tv[i + 1, t]
        if w > target:
            continue
        for t in range(w, target + 1):
            if not tv[i, t] and tv[i, t - w]:
                tv[i, t] = 1
    return table


cdef class _Search:
    cdef list weights
    cdef list suffix_gcd
    cdef list dominated
    cdef list coeffs
    cdef set failed
    cdef Py_ssize_t n
    cdef public long long nodes
    cdef long long budget

    def __init__(self, weights, suffix_gcd, dominated, long long budget):
        self.weights = list(weights)
        self.suffix_gcd = list(suffix_gcd)
        self.dominated = [bool(d) for d in dominated]
        self.n = len(self.weights)
        self.coeffs = [0] * self.n
        self.failed = set()
        self.nodes = 0
        self.budget = budget

    cdef int rec(self, Py_ssize_t i, object r):
        cdef Py_ssize_t k
        cdef int status
        cdef bint dom
        if r == 0:
            for k in range(i, self.n):
                self.coeffs[k] = 0
            return 1
        if i == self.n:
            return 0
        self.nodes += 1
        if self.nodes > self.budget:
            return -1
        key = (i, r)
        if key in self.failed:
            return 0
        w = self.weights[i]
        rest = self.suffix_gcd[i + 1]
        if rest == 0:
            if r % w == 0:
                self.coeffs[i] = r // w
                return 1
            return 0
        g = gcd(w, rest)
        if r % g:
            return 0
        mod = rest // g
        if mod > 1:
            c = (r // g) * pow(w // g, -1, mod) % mod
        else:
            c = 0
        dom = self.dominated[i]
        while c * w <= r:
            self.coeffs[i] = c
            status = self.rec(i + 1, r - c * w)
            if status != 0:
                return status
            if dom:
                break
            c += mod
        self.failed.add(key)
        return 0


cdef class _FastSearch:
    """Same search with machine integers; used when every intermediate value
    fits in 64 bits (weights < 2^31, (n + 1) * (target + 1) < 2^62)."""
    cdef vector[long long] w, rest, g, mod, inv, coeffs
    cdef vector[int] dom
    cdef unordered_set[long long] failed
    cdef long long n, stride
    cdef public long long nodes
    cdef long long budget

    def __init__(self, weights, suffix_gcd, dominated, long long target, long long budget):
        cdef Py_ssize_t i
        cdef int flag
        self.n = len(weights)
        self.stride = target + 1
        self.nodes = 0
        self.budget = budget
        for i in range(self.n):
            wi, ri = int(weights[i]), int(suffix_gcd[i + 1])
            gi = gcd(wi, ri) if ri else wi
            mi = ri // gi if ri else 0
            self.w.push_back(wi)
            self.rest.push_back(ri)
            self.g.push_back(gi)
            self.mod.push_back(mi)
            self.inv.push_back(pow(wi // gi, -1, mi) if mi > 1 else 0)
            flag = 1 if dominated[i] else 0
            self.dom.push_back(flag)
            self.coeffs.push_back(0)

    cdef int rec(self, long long i, long long r) nogil:
        cdef long long k, c, w, m
        cdef long long key
        cdef int status
        if r == 0:
            for k in range(i, self.n):
                self.coeffs[k] = 0
            return 1
        if i == self.n:
            return 0
        self.nodes += 1
        if self.nodes > self.budget:
            return -1
        key = i * self.stride + r
        if self.failed.count(key):
            return 0
        w = self.w[i]
        if self.rest[i] == 0:
            if r % w == 0:
                self.coeffs[i] = r // w
                return 1
            return 0
        if r % self.g[i]:
            return 0
        m = self.mod[i]
        c = ((r // self.g[i]) % m) * self.inv[i] % m if m > 1 else 0
        while c * w <= r:
            self.coeffs[i] = c
            status = self.rec(i + 1, r - c * w)
            if status != 0:
                return status
            if self.dom[i]:
                break
            c += m
        self.failed.insert(key)
        return 0


def dfs_search(weights, suffix_gcd, dominated, target, long long budget):
    if target < 0:
        return EXHAUSTED, None, 0
    n = len(weights)
    if weights and max(weights) < 2**31 and (n + 1) * (target + 1) < 2**62:
        f = _FastSearch(weights, suffix_gcd, dominated, target, budget)
        status = f.rec(0, target)
        coeffs = [f.coeffs[i] for i in range(n)] if status == 1 else None
        return status, coeffs, f.nodes
    s = _Search(weights, suffix_gcd, dominated, budget)
    status = s.rec(0, target)
    return status, (list(s.coeffs) if status == 1 else None), s.nodes
