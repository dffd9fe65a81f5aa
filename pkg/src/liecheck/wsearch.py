"""Exhaustive weight-equation searches and inequality audits.

Every search asks when a structured weight expression lands in
(p^r - 1) X(T) with a nonzero quotient sigma.  Candidate ranges follow the
sound reductions that make the searches finite: summands nu are taken
dominant (any solution conjugates to one of this shape), and they range
over the dominant weights below the ambient highest weight, which is a
superset of the dominant weights that actually occur.  Empty result lists
are therefore nonexistence certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import rootsys
from .errors import DomainError
from .rootsys import RootSystem, Weight


@dataclass(frozen=True)
class SearchSpec:
    rs: RootSystem
    p: int
    r: int
    lam: Weight

    def __post_init__(self):
        if self.p < 2 or self.r < 1:
            raise DomainError("need p >= 2 and r >= 1")
        if not in_scope(self.rs, self.lam):
            raise DomainError(
                f"{self.lam} is not a dominant root and not below a "
                f"fundamental weight in {self.rs.name}")

    @property
    def modulus(self) -> int:
        return self.p ** self.r - 1


@dataclass(frozen=True)
class Solution:
    """A tuple of constituents whose sum is (p^r - 1) * sigma, sigma != 0."""

    form: str
    constituents: tuple
    total: Weight
    sigma: Weight

    def as_dict(self):
        return {
            "form": self.form,
            "constituents": [rootsys.format_weight(c) for c in self.constituents],
            "total": rootsys.format_weight(self.total),
            "sigma": rootsys.format_weight(self.sigma),
        }


@lru_cache(maxsize=None)
def scope_weights(rs: RootSystem) -> tuple:
    """All in-scope highest weights: the zero weight, the dominant roots,
    and every dominant weight below some fundamental weight."""
    out = {tuple(0 for _ in range(rs.rank))}
    out.update(rootsys.dominant_roots(rs))
    for i in range(rs.rank):
        omega = tuple(int(j == i) for j in range(rs.rank))
        out.update(rootsys.dominant_weights_leq(rs, omega))
    return tuple(sorted(out))


def in_scope(rs: RootSystem, lam: Weight) -> bool:
    if not rootsys.is_dominant(lam):
        return False
    if not any(lam) or lam in rootsys.dominant_roots(rs):
        return True
    for i in range(rs.rank):
        omega = tuple(int(j == i) for j in range(rs.rank))
        if rootsys.dominance_leq(rs, lam, omega):
            return True
    return False


def _divide(w: Weight, m: int):
    if any(c % m for c in w):
        return None
    return tuple(c // m for c in w)


def _nu_range(rs: RootSystem, lam: Weight) -> tuple:
    """Dominant candidates for a conjugated weight of the simple module:
    the dominant weights below lam."""
    return rootsys.dominant_weights_leq(rs, lam)


@lru_cache(maxsize=None)
def _root_pair_sums(rs: RootSystem) -> tuple:
    """Sums beta1 + beta2 over unordered root pairs with beta1 != +-beta2."""
    allr = rootsys.all_roots(rs)
    sums = []
    for i, b1 in enumerate(allr):
        neg = tuple(-c for c in b1)
        for b2 in allr[i + 1:]:
            if b2 == neg:
                continue
            sums.append((tuple(x + y for x, y in zip(b1, b2)), b1, b2))
    return tuple(sums)


@lru_cache(maxsize=None)
def _root_pair_buckets(rs: RootSystem, m: int):
    """Root-pair sums grouped by residue mod m (exact residues, no hashing
    tricks: membership of s + nu in m X(T) is equivalent to s = -nu mod m
    coordinate-wise, and every bucket hit is re-verified by exact division)."""
    buckets = {}
    for s, b1, b2 in _root_pair_sums(rs):
        buckets.setdefault(tuple(c % m for c in s), []).append((s, b1, b2))
    return buckets


def search_two_root_sum(spec: SearchSpec) -> list:
    """All beta1 + beta2 + nu in (p^r - 1) X(T) with nonzero quotient,
    over non-proportional root pairs and dominant nu below lam."""
    rs, m = spec.rs, spec.modulus
    buckets = _root_pair_buckets(rs, m)
    solutions = []
    for nu in _nu_range(rs, spec.lam):
        key = tuple((-c) % m for c in nu)
        for s, b1, b2 in buckets.get(key, ()):
            total = tuple(x + y for x, y in zip(s, nu))
            sigma = _divide(total, m)
            assert sigma is not None
            if any(sigma):
                solutions.append(Solution("two-root-sum", (b1, b2, nu), total, sigma))
    solutions.sort(key=lambda s: (s.sigma, s.constituents))
    return solutions


def candidates_two_root_sum(spec: SearchSpec) -> int:
    return len(_root_pair_sums(spec.rs)) * len(_nu_range(spec.rs, spec.lam))


def scan_root_twist_r1(rs: RootSystem, p: int, r: int, lam: Weight) -> list:
    """Members p*beta - lam* of (p^r - 1) X(T), beta positive, sigma != 0."""
    spec = SearchSpec(rs, p, r, lam)
    m = spec.modulus
    dual = rootsys.duality_star(rs, lam)
    out = []
    for beta in rs.positive_roots:
        w = tuple(p * b - d for b, d in zip(beta, dual))
        sigma = _divide(w, m)
        if sigma is not None and any(sigma):
            out.append(Solution("p*beta-dual", (beta,), w, sigma))
    return out


def scan_higher_twist_forms(rs: RootSystem, p: int, r: int, lam: Weight) -> dict:
    """The three positive-root families available when r >= 2:

    * p^a alpha + p^b beta - lam*, 1 <= a < b <= r-1;
    * p^e (alpha + beta) - lam*,   1 <= e <= r-1;
    * p^c alpha - lam*,            2 <= c <= r.

    Returns nonzero-sigma members per family.
    """
    if r < 2:
        raise DomainError("these weight families need r >= 2")
    spec = SearchSpec(rs, p, r, lam)
    m = spec.modulus
    dual = rootsys.duality_star(rs, lam)
    pos = rs.positive_roots
    fam1, fam2, fam3 = [], [], []
    for a in range(1, r - 1):
        for b in range(a + 1, r):
            pa, pb = p ** a, p ** b
            for al in pos:
                for be in pos:
                    w = tuple(pa * x + pb * y - d
                              for x, y, d in zip(al, be, dual))
                    sigma = _divide(w, m)
                    if sigma is not None and any(sigma):
                        fam1.append(Solution(
                            "p^a*alpha+p^b*beta-dual", (al, be), w, sigma))
    for e in range(1, r):
        pe = p ** e
        for al in pos:
            for be in pos:
                w = tuple(pe * (x + y) - d for x, y, d in zip(al, be, dual))
                sigma = _divide(w, m)
                if sigma is not None and any(sigma):
                    fam2.append(Solution(
                        "p^e*(alpha+beta)-dual", (al, be), w, sigma))
    for c in range(2, r + 1):
        pc = p ** c
        for al in pos:
            w = tuple(pc * x - d for x, d in zip(al, dual))
            sigma = _divide(w, m)
            if sigma is not None and any(sigma):
                fam3.append(Solution("p^c*alpha-dual", (al,), w, sigma))
    return {
        "p^a*alpha+p^b*beta-dual": fam1,
        "p^e*(alpha+beta)-dual": fam2,
        "p^c*alpha-dual": fam3,
    }


def scan_simple_shift_forms(rs: RootSystem, p: int, r: int, lam: Weight) -> dict:
    """The three simple-root shapes available when r >= 2:

    * p^i beta - s_alpha . lam*;
    * p^i beta - (lam* - p^n alpha);
    * p^i beta - sigma', sigma' dominant < lam*;

    with alpha, beta simple and 1 <= i, n < r.  Returns nonzero-sigma
    members per shape.
    """
    if r < 2:
        raise DomainError("these weight shapes need r >= 2")
    spec = SearchSpec(rs, p, r, lam)
    m = spec.modulus
    dual = rootsys.duality_star(rs, lam)
    shape1, shape2, shape3 = [], [], []
    simple = rs.simple_roots
    refl = [rootsys.dot_reflect(rs, i, dual) for i in range(rs.rank)]
    sigmas = [s for s in rootsys.dominant_weights_leq(rs, dual) if s != dual]
    for i_exp in range(1, r):
        pi = p ** i_exp
        for bi in range(rs.rank):
            pb = tuple(pi * c for c in simple[bi])
            for ai in range(rs.rank):
                w = tuple(x - y for x, y in zip(pb, refl[ai]))
                sigma = _divide(w, m)
                if sigma is not None and any(sigma):
                    shape1.append(Solution(
                        "p^i*beta-reflected-dual",
                        (simple[bi], simple[ai]), w, sigma))
                pn = p
                for n in range(1, r):
                    shifted = tuple(d - pn * a
                                    for d, a in zip(dual, simple[ai]))
                    w2 = tuple(x - y for x, y in zip(pb, shifted))
                    sigma = _divide(w2, m)
                    if sigma is not None and any(sigma):
                        shape2.append(Solution(
                            "p^i*beta-shifted-dual",
                            (simple[bi], simple[ai]), w2, sigma))
                    pn *= p
            for sg in sigmas:
                w3 = tuple(x - y for x, y in zip(pb, sg))
                sigma = _divide(w3, m)
                if sigma is not None and any(sigma):
                    shape3.append(Solution(
                        "p^i*beta-lower-dominant", (simple[bi], sg), w3, sigma))
    return {
        "p^i*beta-reflected-dual": shape1,
        "p^i*beta-shifted-dual": shape2,
        "p^i*beta-lower-dominant": shape3,
    }


# expected per-type maxima of (s_alpha . lam*, gamma^vee) over the scope
REFLECTED_PAIRING_BOUND = {
    "A": 3, "B": 4, "C": 4, "D": 2, "E6": 2, "E7": 3, "E8": 4, "F": 4, "G": 6,
}


def reflected_pairing_bound(rs: RootSystem) -> int:
    if rs.family == "E":
        return REFLECTED_PAIRING_BOUND[f"E{rs.rank}"]
    return REFLECTED_PAIRING_BOUND[rs.family]


def inequality_maxima(rs: RootSystem, scope=None) -> dict:
    """Maximum of (s_alpha . lam*, gamma^vee) over simple alpha, gamma and
    in-scope lam, with the per-type bound it must not exceed."""
    if scope is None:
        scope = scope_weights(rs)
    best = None
    argmax = None
    for lam in scope:
        dual = rootsys.duality_star(rs, lam)
        for i in range(rs.rank):
            refl = rootsys.dot_reflect(rs, i, dual)
            for j in range(rs.rank):
                v = refl[j]
                if best is None or v > best:
                    best, argmax = v, (lam, i, j)
    bound = reflected_pairing_bound(rs)
    return {
        "type": rs.name,
        "max": best,
        "bound": bound,
        "ok": best <= bound,
        "argmax": argmax,
    }


def socle_fixed_points(rs: RootSystem, p: int, r: int, lam: Weight) -> dict:
    """Nonzero multiset candidates for first-cohomology weights of the dual
    weight that land in (p^r - 1) X(T), plus the pairing bound report.

    The dual-Weyl family is included pessimistically for every dominant
    sigma < lam* (whatever its true multiplicity), so an empty list is a
    certificate independent of external multiplicity data.
    """
    spec = SearchSpec(rs, p, r, lam)
    m = spec.modulus
    dual = rootsys.duality_star(rs, lam)
    candidates = []
    for i in range(rs.rank):
        refl = rootsys.dot_reflect(rs, i, dual)
        candidates.append(("reflection", tuple(-c for c in refl)))
        pn = p
        for n in range(1, r):
            shift = tuple(d - pn * a for d, a in zip(dual, rs.simple_roots[i]))
            candidates.append(("shift", tuple(-c for c in shift)))
            pn *= p
    for sigma in rootsys.dominant_weights_leq(rs, dual):
        if sigma != dual:
            candidates.append(("lower-dominant", tuple(-c for c in sigma)))

    hits = []
    neg_pairing_max = 0
    for formname, nu in candidates:
        neg_pairing_max = max(neg_pairing_max, max((-c for c in nu), default=0))
        sigma = _divide(nu, m)
        if sigma is not None and any(sigma):
            hits.append(Solution(formname, (nu,), nu, sigma))
    return {
        "solutions": hits,
        "candidates": len(candidates),
        "max_negative_pairing": neg_pairing_max,
        "bound_ok": p ** r > neg_pairing_max,
    }


def _omega(rs: RootSystem, i: int) -> Weight:
    return tuple(int(j == i) for j in range(rs.rank))


def identity_catalog(rs: RootSystem, p: int = 5) -> list:
    """Dot-action sum identities whose totals are (p-1)-divisible at p = 5.

    Each entry evaluates a composite of dot reflections plus a shift and
    compares it with the stated closed form.
    """
    if p != 5:
        raise DomainError("the catalog is stated for p = 5")
    n = rs.rank
    entries = []

    def dot(i, lam):
        return rootsys.dot_reflect(rs, i, lam)

    zero = tuple(0 for _ in range(n))
    if rs.name == "A3":
        a1, a2, a3 = rs.simple_roots
        lhs = tuple(-c for c in dot(1, dot(0, zero)))
        lhs = tuple(x - y for x, y in zip(lhs, a3))
        entries.append(("-s2 s1 . 0 + (-a3)", lhs,
                        tuple(x - y for x, y in
                              zip(tuple(4 * c for c in _omega(rs, 1)),
                                  tuple(4 * c for c in _omega(rs, 2))))))
        lhs2 = tuple(-c for c in dot(1, dot(2, zero)))
        lhs2 = tuple(x - y for x, y in zip(lhs2, a1))
        entries.append(("-s2 s3 . 0 + (-a1)", lhs2,
                        tuple(x - y for x, y in
                              zip(tuple(4 * c for c in _omega(rs, 1)),
                                  tuple(4 * c for c in _omega(rs, 0))))))
    elif rs.name == "B2":
        a2 = rs.simple_roots[1]
        lhs = tuple(-c for c in dot(0, dot(1, zero)))
        lhs = tuple(x - y for x, y in zip(lhs, a2))
        entries.append(("-s1 s2 . 0 + (-a2)", lhs,
                        tuple(x - y for x, y in
                              zip(tuple(4 * c for c in _omega(rs, 0)),
                                  tuple(4 * c for c in _omega(rs, 1))))))
    elif rs.family == "C" and n >= 3:
        an1, an = rs.simple_roots[n - 2], rs.simple_roots[n - 1]
        lhs = tuple(-c for c in dot(n - 2, dot(n - 1, zero)))
        lhs = tuple(x + y + z for x, y, z in zip(lhs, an1, an))
        entries.append((f"-s{n-1} s{n} . 0 + (a{n-1}+a{n})", lhs,
                        tuple(x - y for x, y in
                              zip(tuple(4 * c for c in _omega(rs, n - 2)),
                                  tuple(4 * c for c in _omega(rs, n - 3))))))
    elif rs.name == "A2":
        w1, w2 = _omega(rs, 0), _omega(rs, 1)
        lhs = tuple(-c for c in dot(0, dot(1, zero)))
        lhs = tuple(x + y for x, y in zip(lhs, w1))
        entries.append(("-s1 s2 . 0 + w1", lhs, tuple(4 * c for c in w1)))
        lhs2 = tuple(-c for c in dot(1, dot(0, zero)))
        lhs2 = tuple(x + y for x, y in zip(lhs2, w2))
        entries.append(("-s2 s1 . 0 + w2", lhs2, tuple(4 * c for c in w2)))
    else:
        raise DomainError(f"no catalog entries for {rs.name}")

    return [
        {"identity": name, "computed": got, "stated": want, "ok": got == want}
        for name, got, want in entries
    ]
