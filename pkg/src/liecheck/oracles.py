"""Independent brute-force linkage oracles.

These never touch the alcove normal form: linkage is decided by explicit
orbit enumeration (exact, or reduced modulo p times the root lattice) or,
for the B series, by the signed-permutation congruence criterion in the
orthogonal basis.  They exist to cross-check the main path and are used
only from the test suite and never on the main CLI paths.
"""

from __future__ import annotations

from functools import lru_cache

from . import rootsys
from .errors import BudgetExceededError, DomainError
from .rootsys import RootSystem, Weight

ORBIT_CAP = 10_000_000  # |W|-sized enumerations are gated here


def linked_bruteforce(rs: RootSystem, lam: Weight, mu: Weight, p: int,
                      cap: int = ORBIT_CAP) -> bool:
    """Enumerate the full W-orbit of lam+rho and seek an exact translation.

    lam+rho is regular for dominant lam, so the orbit enumerates W itself.
    A hit is w(lam+rho) - (mu+rho) in p*ZPhi, tested by exact division.
    """
    target = tuple(c + 1 for c in mu)
    for x in rootsys.weyl_orbit(rs, tuple(c + 1 for c in lam), cap=cap):
        diff = tuple(a - b for a, b in zip(x, target))
        coeffs = rootsys.root_coefficients(rs, diff)
        if all(c.denominator == 1 and c % p == 0 for c in coeffs):
            return True
    return False


# ---------------------------------------------------------------------------
# orbit enumeration in the quotient X(T) / p*ZPhi


@lru_cache(maxsize=None)
def _root_lattice_hnf(rs: RootSystem) -> tuple:
    """Row-style Hermite normal form of ZPhi in weight coordinates."""
    rows = [list(r) for r in rs.simple_roots]
    n = rs.rank
    basis = []
    for col in range(n):
        rows = [r for r in rows if any(r[col:])]
        while True:
            nz = [r for r in rows if r[col]]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            rows.remove(piv)
            if piv[col] < 0:
                piv = [-x for x in piv]
            done = True
            for r in rows:
                if r[col]:
                    q = r[col] // piv[col]
                    for k in range(n):
                        r[k] -= q * piv[k]
                    if r[col]:
                        done = False
            if done:
                basis.append(piv)
                break
            rows.append(piv)
    # reduce above-pivot entries for a canonical form
    for i in reversed(range(len(basis))):
        piv_col = next(k for k, v in enumerate(basis[i]) if v)
        for j in range(i):
            q = basis[j][piv_col] // basis[i][piv_col]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return tuple(tuple(r) for r in basis)


def _reduce_mod(rs: RootSystem, x, p: int) -> tuple:
    """Canonical representative of x modulo p*ZPhi."""
    x = list(x)
    for row in _root_lattice_hnf(rs):
        col = next(k for k, v in enumerate(row) if v)
        step = p * row[col]
        q = x[col] // step
        if q:
            for k in range(rs.rank):
                x[k] -= q * p * row[k]
    return tuple(x)


def linked_bruteforce_modp(rs: RootSystem, lam: Weight, mu: Weight, p: int,
                           cap: int = 5_000_000) -> bool:
    """Orbit of lam+rho in X(T)/p*ZPhi versus the class of mu+rho.

    Equivalent to the exact enumeration (the reflections act on the
    quotient) but the state space collapses to at most p^rank classes.
    """
    start = _reduce_mod(rs, tuple(c + 1 for c in lam), p)
    goal = _reduce_mod(rs, tuple(c + 1 for c in mu), p)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                u = _reduce_mod(rs, rootsys.reflect(rs, i, v), p)
                if u not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceededError("mod-p orbit exceeds cap")
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return goal in seen


# ---------------------------------------------------------------------------
# B-series closed form


def b_series_congruence_linked(n: int, lam: Weight, mu: Weight, p: int) -> bool:
    """Signed-permutation congruence test for W ⋉ pZPhi linkage in B_n.

    In the orthogonal basis the Weyl group is every permutation and sign
    change and ZPhi is the full integer lattice, so after doubling to clear
    half-integers the orbits modulo p are classified by the multiset of
    +/- residue classes.
    """
    if p % 2 == 0:
        raise DomainError("doubling argument requires odd p")
    rs = rootsys.build_root_system("B", n)

    def classes(w):
        v = rootsys.weight_to_epsilon(rs, tuple(c + 1 for c in w))
        out = []
        for x in v:
            d = 2 * x
            assert d.denominator == 1
            r = int(d) % p
            out.append(min(r, p - r))
        return sorted(out)

    return classes(lam) == classes(mu)


def dominant_weights_leq_slow(rs: RootSystem, lam: Weight, cap: int = 2_000_000):
    """Reference enumeration of {dominant mu <= lam} by simple-root descent.

    Walks the full downward closure of lam (not only dominant points), so it
    is exponentially larger than the production routine; used to validate it
    on small types.
    """
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for v in frontier:
            for row in rs.simple_roots:
                cand = tuple(a - b for a, b in zip(v, row))
                # stay inside the weight polytope: conv(W lam) contains all
                # weights <= lam whose dominant conjugate is <= lam
                dom, _ = rootsys.dominant_conjugate(rs, cand)
                if not rootsys.dominance_leq(rs, dom, lam):
                    continue
                if cand not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceededError("downward closure exceeds cap")
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return tuple(sorted(v for v in seen if rootsys.is_dominant(v)))
