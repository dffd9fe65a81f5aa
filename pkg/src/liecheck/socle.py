"""Closed-form weight multisets for the socle of first Frobenius-kernel
cohomology of a simple module, and their small-weight specialization.

The general multiset has three families indexed over simple roots:

* reflection terms  -s_alpha . lam   whenever (lam, alpha^vee) = a p^n - 1
  for some 0 <= n < r, 1 <= a <= p, excluding (lam, alpha^vee) = p^r - 1;
* shift terms  -(lam - a p^n alpha)  whenever (a-1) p^n <= (lam, alpha^vee)
  < a p^n - 1 with 0 < n < r, 1 <= a < p;
* dual-Weyl terms  (-sigma) with multiplicity m_sigma over dominant
  sigma < lam, where the m_sigma are external input.

Distinct index tuples (alpha, n, a) can name the same reflection term when
(lam, alpha^vee) + 1 is a power of p; the underlying extension group is
one-dimensional, so such coincidences contribute once, not twice.
"""

from __future__ import annotations

import json
import warnings

from . import rootsys
from .errors import DomainError
from .rootsys import RootSystem, Weight

WeightMultiset = tuple  # tuple[tuple[Weight, int], ...], sorted by weight


class MsigmaWarning(UserWarning):
    pass


def zero_msigma(rs, p, r, lam, sigma) -> int:
    return 0


def table_msigma(rs, p, r, lam, sigma) -> int:
    """Built-in m_sigma values for the worked cases.

    Ships only externally known instances: in type C with lam = omega_2 the
    trivial extension multiplicity m_0 is 1 exactly when p divides the rank.
    Everything else falls back to zero.
    """
    n = rs.rank
    omega2 = tuple(int(i == 1) for i in range(n))
    zero = tuple(0 for _ in range(n))
    if rs.family == "C" and lam == omega2 and sigma == zero:
        return 1 if n % p == 0 else 0
    return 0


def json_msigma(path):
    """Provider backed by a JSON list of {"lambda": ..., "sigma": ..., "m": ...}.

    Weights are comma-separated coordinate strings; missing pairs give zero.
    """
    with open(path, "r", encoding="utf-8") as fh:
        entries = json.load(fh)
    table = {}
    for e in entries:
        table[(str(e["lambda"]), str(e["sigma"]))] = int(e["m"])

    def provider(rs, p, r, lam, sigma):
        key = (rootsys.format_weight(lam), rootsys.format_weight(sigma))
        return table.get(key, 0)

    return provider


def _check_inputs(rs: RootSystem, p: int, r: int, lam: Weight) -> None:
    if p <= 2:
        raise DomainError("socle multiset requires p > 2")
    if r < 1:
        raise DomainError("r must be >= 1")
    if not rootsys.is_restricted(lam, p ** r):
        raise DomainError(
            f"{lam} is not p^r-restricted for p={p}, r={r}")


def _sigma_terms(rs, p, r, lam, m) -> list:
    out = []
    for sigma in rootsys.dominant_weights_leq(rs, lam):
        if sigma == lam:
            continue
        mult = m(rs, p, r, lam, sigma)
        if mult < 0:
            raise DomainError("m_sigma must be non-negative")
        if mult:
            out.append((tuple(-c for c in sigma), mult))
    return out


def _sorted_multiset(terms) -> WeightMultiset:
    acc = {}
    for w, mult in terms:
        acc[w] = acc.get(w, 0) + mult
    return tuple(sorted(acc.items()))


def socle_weights_general(rs: RootSystem, p: int, r: int, lam: Weight,
                          m=None) -> WeightMultiset:
    """Full condition-set evaluation of the socle weight multiset."""
    _check_inputs(rs, p, r, lam)
    if m is None:
        m = zero_msigma
        if any(sigma != lam for sigma in rootsys.dominant_weights_leq(rs, lam)):
            warnings.warn(
                "no m_sigma provider given; dual-Weyl terms default to zero",
                MsigmaWarning, stacklevel=2)
    terms = []
    q = p ** r
    for i in range(rs.rank):
        x = lam[i]
        # reflection family: x = a p^n - 1 with 0 <= n < r, 1 <= a <= p.
        # Several (n, a) can solve this when x+1 is a power of p; the term
        # still occurs exactly once.
        if x != q - 1:
            found = False
            pn = 1
            for n in range(r):
                a, rem = divmod(x + 1, pn)
                if rem == 0 and 1 <= a <= p:
                    found = True
                pn *= p
            if found:
                refl = rootsys.dot_reflect(rs, i, lam)
                terms.append((tuple(-c for c in refl), 1))
        # shift family: (a-1) p^n <= x < a p^n - 1, 0 < n < r, 1 <= a < p.
        pn = p
        for n in range(1, r):
            a = x // pn + 1
            if 1 <= a < p and (a - 1) * pn <= x < a * pn - 1:
                shift = tuple(
                    c - a * pn * rc for c, rc in zip(lam, rs.simple_roots[i]))
                terms.append((tuple(-c for c in shift), 1))
            pn *= p
    terms.extend(_sigma_terms(rs, p, r, lam, m))
    return _sorted_multiset(terms)


def small_weight_scope(rs: RootSystem, lam: Weight) -> bool:
    """Scope of the small-weight specialization: every coordinate <= 3."""
    return rootsys.is_dominant(lam) and all(c <= 3 for c in lam)


def socle_weights_small(rs: RootSystem, p: int, r: int, lam: Weight,
                        m=None) -> WeightMultiset:
    """Specialization for small dominant weights (all pairings <= 3, p > 3).

    Every simple root then contributes its reflection term unconditionally,
    and the shift family collapses to a = 1 for each 0 < n < r.
    """
    if p <= 3:
        raise DomainError("small-weight form requires p > 3")
    if not small_weight_scope(rs, lam):
        raise DomainError(f"{lam} is outside the small-weight scope")
    _check_inputs(rs, p, r, lam)
    if m is None:
        m = zero_msigma
        if any(sigma != lam for sigma in rootsys.dominant_weights_leq(rs, lam)):
            warnings.warn(
                "no m_sigma provider given; dual-Weyl terms default to zero",
                MsigmaWarning, stacklevel=2)
    terms = []
    for i in range(rs.rank):
        refl = rootsys.dot_reflect(rs, i, lam)
        terms.append((tuple(-c for c in refl), 1))
        pn = p
        for n in range(1, r):
            shift = tuple(c - pn * rc for c, rc in zip(lam, rs.simple_roots[i]))
            terms.append((tuple(-c for c in shift), 1))
            pn *= p
    terms.extend(_sigma_terms(rs, p, r, lam, m))
    return _sorted_multiset(terms)


def ext1_weights(rs: RootSystem, p: int, r: int, lam: Weight,
                 m=None) -> WeightMultiset:
    """Weight multiset of first Frobenius-kernel cohomology with values in
    the simple module of highest weight lam: the socle multiset evaluated at
    the dual weight."""
    dual = rootsys.duality_star(rs, lam)
    return socle_weights_small(rs, p, r, dual, m)


def multiset_elements(ms: WeightMultiset):
    """Flat iteration with multiplicity."""
    for w, mult in ms:
        for _ in range(mult):
            yield w


def multiset_size(ms: WeightMultiset) -> int:
    return sum(mult for _, mult in ms)
