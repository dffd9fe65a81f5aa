"""Exact root-system and weight-lattice arithmetic, Bourbaki-labeled.

Weights are integer tuples in the fundamental-weight basis (coordinate i is
the pairing with the i-th simple coroot).  The orthogonal realization uses
exact rationals, so half-integers (e.g. rho in type B) are represented
without loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetExceededError, DomainError, InvalidTypeError

Weight = tuple  # tuple[int, ...], fundamental-weight coordinates
EpsVector = tuple  # tuple[Fraction, ...], orthogonal coordinates

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# |Phi^+| per family as a function of the rank
_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def validate_type(family: str, rank: int) -> None:
    ok = (
        (family == "A" and rank >= 1)
        or (family == "B" and rank >= 2)
        or (family == "C" and rank >= 2)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
        or (family == "F" and rank == 4)
        or (family == "G" and rank == 2)
    )
    if not ok:
        raise InvalidTypeError(f"not a simple type: {family}{rank}")


def parse_type(name: str) -> tuple[str, int]:
    """Parse a label like "E8" or "B6" into (family, rank)."""
    name = name.strip()
    if len(name) < 2 or name[0].upper() not in FAMILIES:
        raise InvalidTypeError(f"cannot parse type label {name!r}")
    family = name[0].upper()
    try:
        rank = int(name[1:])
    except ValueError as exc:
        raise InvalidTypeError(f"cannot parse type label {name!r}") from exc
    validate_type(family, rank)
    return family, rank


def parse_weight(text: str, rank: int) -> Weight:
    """Parse the comma-separated coordinate form "c1,c2,...,cn"."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != rank:
        raise DomainError(f"expected {rank} coordinates, got {len(parts)}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"non-integer weight coordinate in {text!r}") from exc


def format_weight(w: Weight) -> str:
    return ",".join(str(c) for c in w)


def _epsilon_simple_roots(family: str, rank: int) -> list:
    """Simple roots in the Bourbaki orthogonal realization."""
    Q = Fraction

    def unit(dim, i, c=1):
        v = [Q(0)] * dim
        v[i] = Q(c)
        return v

    roots = []
    if family == "A":
        dim = rank + 1
        for i in range(rank):
            v = unit(dim, i)
            v[i + 1] = Q(-1)
            roots.append(v)
    elif family in ("B", "C", "D"):
        dim = rank
        for i in range(rank - 1):
            v = unit(dim, i)
            v[i + 1] = Q(-1)
            roots.append(v)
        if family == "B":
            roots.append(unit(dim, rank - 1))
        elif family == "C":
            roots.append(unit(dim, rank - 1, 2))
        else:
            v = unit(dim, rank - 2)
            v[rank - 1] = Q(1)
            roots.append(v)
    elif family == "E":
        dim = 8
        a1 = [Q(1, 2), *([Q(-1, 2)] * 6), Q(1, 2)]
        a2 = unit(dim, 0)
        a2[1] = Q(1)
        roots = [a1, a2]
        for i in range(1, 7):  # alpha_{k+2} = e_k - e_{k-1}, Bourbaki E8 labels
            v = unit(dim, i)
            v[i - 1] = Q(-1)
            roots.append(v)
        roots = roots[:rank]
    elif family == "F":
        dim = 4
        a1 = unit(dim, 1)
        a1[2] = Q(-1)
        a2 = unit(dim, 2)
        a2[3] = Q(-1)
        a3 = unit(dim, 3)
        a4 = [Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)]
        roots = [a1, a2, a3, a4]
    elif family == "G":
        dim = 3
        a1 = [Q(1), Q(-1), Q(0)]
        a2 = [Q(-2), Q(1), Q(1)]
        roots = [a1, a2]
    return [tuple(v) for v in roots]


def _dot(x, y) -> Fraction:
    return sum(a * b for a, b in zip(x, y))


def _pair(x, root_eps) -> Fraction:
    # (x, root^vee) = 2(x, root) / (root, root)
    return 2 * _dot(x, root_eps) / _dot(root_eps, root_eps)


def _invert_matrix(rows):
    """Exact inverse of a square matrix given as tuple rows of Fractions."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _det_int(rows) -> int:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    assert det.denominator == 1
    return int(det)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable Cartan/root/weight data for one simple type.

    ``cartan`` row i is the simple root alpha_i written in fundamental-weight
    coordinates, i.e. cartan[i][j] = (alpha_i, alpha_j^vee).
    """

    family: str
    rank: int
    cartan: tuple
    simple_roots: tuple
    positive_roots: tuple
    highest_long: Weight
    highest_short: Weight
    rho: Weight
    coxeter_number: int
    fundamental_group_order: int
    epsilon_dim: int
    eps_simple: tuple
    eps_fundamental: tuple
    _inv_cartan: tuple  # inverse of the cartan matrix, Fraction entries
    _root_index: dict
    _eps_norm2: dict  # root -> (root, root), for coroot pairings

    def __eq__(self, other):
        return (
            isinstance(other, RootSystem)
            and self.family == other.family
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.family, self.rank))

    def __repr__(self):
        return f"RootSystem({self.family}{self.rank})"

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def is_root(self, w: Weight) -> bool:
        return w in self._root_index or tuple(-c for c in w) in self._root_index


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Build the full root datum for a valid simple type."""
    validate_type(family, rank)
    eps_simple = _epsilon_simple_roots(family, rank)
    dim = len(eps_simple[0])

    cartan = tuple(
        tuple(int(_pair(eps_simple[i], eps_simple[j])) for j in range(rank))
        for i in range(rank)
    )

    # Positive roots by root-string closure from the simple roots.  Roots are
    # tracked in fundamental coordinates together with their expansion on the
    # simple roots; beta + alpha_i is a root iff the alpha_i-string through
    # beta descends further than (beta, alpha_i^vee).
    simple_w = [cartan[i] for i in range(rank)]
    roots = {simple_w[i]: tuple(int(i == j) for j in range(rank)) for i in range(rank)}
    frontier = list(roots)
    while frontier:
        new_frontier = []
        for beta in frontier:
            for i in range(rank):
                cand = tuple(b + a for b, a in zip(beta, simple_w[i]))
                if cand in roots:
                    continue
                down = 0
                cur = beta
                while True:
                    cur = tuple(b - a for b, a in zip(cur, simple_w[i]))
                    if cur in roots:
                        down += 1
                    else:
                        break
                if down - beta[i] > 0:  # the alpha_i-string extends past beta
                    coeffs = list(roots[beta])
                    coeffs[i] += 1
                    roots[cand] = tuple(coeffs)
                    new_frontier.append(cand)
        frontier = new_frontier

    expected = _POSITIVE_COUNT[family](rank)
    if len(roots) != expected:  # pragma: no cover
        raise InvalidTypeError(
            f"{family}{rank}: closure produced {len(roots)} positive roots, "
            f"expected {expected}")
    positive = sorted(roots, key=lambda r: (sum(roots[r]), r))

    inv_cartan = _invert_matrix(cartan)
    # fundamental weight omega_i = sum_j invcartan[j][i] * alpha_j  (so that
    # (omega_i, alpha_j^vee) = delta_ij); equivalently row i of inv applied
    # to the epsilon simple roots.
    eps_fundamental = []
    for i in range(rank):
        v = [Fraction(0)] * dim
        for j in range(rank):
            c = inv_cartan[i][j]
            for k in range(dim):
                v[k] += c * eps_simple[j][k]
        eps_fundamental.append(tuple(v))

    def to_eps(w):
        v = [Fraction(0)] * dim
        for i, c in enumerate(w):
            if c:
                for k in range(dim):
                    v[k] += c * eps_fundamental[i][k]
        return tuple(v)

    norm2 = {}
    for r in positive:
        norm2[r] = _dot(to_eps(r), to_eps(r))
    longest = max(norm2.values())
    shortest = min(norm2.values())
    by_height = sorted(positive, key=lambda r: sum(roots[r]))
    highest_long = next(r for r in reversed(by_height) if norm2[r] == longest)
    highest_short = next(r for r in reversed(by_height) if norm2[r] == shortest)

    rho = tuple(1 for _ in range(rank))
    rho_eps = to_eps(rho)
    hs_eps = to_eps(highest_short)
    coxeter = int(_pair(rho_eps, hs_eps)) + 1

    return RootSystem(
        family=family,
        rank=rank,
        cartan=cartan,
        simple_roots=tuple(simple_w),
        positive_roots=tuple(positive),
        highest_long=highest_long,
        highest_short=highest_short,
        rho=rho,
        coxeter_number=coxeter,
        fundamental_group_order=_det_int(cartan),
        epsilon_dim=dim,
        eps_simple=tuple(eps_simple),
        eps_fundamental=tuple(eps_fundamental),
        _inv_cartan=inv_cartan,
        _root_index={r: roots[r] for r in positive},
        _eps_norm2=norm2,
    )


def root_system(name: str) -> RootSystem:
    return build_root_system(*parse_type(name))


# ---------------------------------------------------------------------------
# coordinate conversions


def weight_to_epsilon(rs: RootSystem, w: Weight) -> EpsVector:
    v = [Fraction(0)] * rs.epsilon_dim
    for i, c in enumerate(w):
        if c:
            for k in range(rs.epsilon_dim):
                v[k] += c * rs.eps_fundamental[i][k]
    return tuple(v)


def epsilon_to_weight(rs: RootSystem, v: EpsVector) -> Weight:
    w = []
    for i in range(rs.rank):
        c = _pair(v, rs.eps_simple[i])
        if c.denominator != 1:
            raise DomainError("vector is not in the weight lattice image")
        w.append(int(c))
    return tuple(w)


# ---------------------------------------------------------------------------
# pairings and reflections


def _as_root(rs: RootSystem, alpha) -> Weight:
    if isinstance(alpha, int):
        return rs.simple_roots[alpha]
    alpha = tuple(alpha)
    neg = tuple(-c for c in alpha)
    if alpha not in rs._root_index and neg not in rs._root_index:
        raise DomainError(f"{alpha} is not a root of {rs.name}")
    return alpha


def _coroot_norm2(rs: RootSystem, alpha: Weight) -> Fraction:
    key = alpha if alpha in rs._eps_norm2 else tuple(-c for c in alpha)
    return rs._eps_norm2[key]


@lru_cache(maxsize=None)
def _coroot_form(rs: RootSystem, alpha: Weight) -> tuple:
    """The coroot of alpha as an integer functional on fundamental coords."""
    norm2 = _coroot_norm2(rs, alpha)
    eps_alpha = weight_to_epsilon(rs, alpha)
    form = []
    for i in range(rs.rank):
        val = 2 * _dot(rs.eps_fundamental[i], eps_alpha) / norm2
        assert val.denominator == 1
        form.append(int(val))
    return tuple(form)


@lru_cache(maxsize=None)
def _gram_scaled(rs: RootSystem) -> tuple:
    """Integer multiple of the Gram matrix of the fundamental weights."""
    gram = [[_dot(rs.eps_fundamental[i], rs.eps_fundamental[j])
             for j in range(rs.rank)] for i in range(rs.rank)]
    scale = 1
    for row in gram:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    return tuple(tuple(int(x * scale) for x in row) for row in gram)


def norm2_scaled(rs: RootSystem, w: Weight) -> int:
    """(w, w) up to one fixed positive scale per root system; exact."""
    gram = _gram_scaled(rs)
    total = 0
    for i, wi in enumerate(w):
        if wi:
            row = gram[i]
            total += wi * sum(wj * row[j] for j, wj in enumerate(w) if wj)
    return total


def pairing(rs: RootSystem, w: Weight, alpha) -> int:
    """Exact pairing (w, alpha^vee) of a weight with a coroot."""
    form = _coroot_form(rs, _as_root(rs, alpha))
    return sum(a * b for a, b in zip(w, form))


def reflect(rs: RootSystem, alpha, w: Weight) -> Weight:
    """Linear reflection s_alpha(w) = w - (w, alpha^vee) alpha."""
    if isinstance(alpha, int):
        c = w[alpha]
        root = rs.simple_roots[alpha]
    else:
        root = _as_root(rs, alpha)
        c = pairing(rs, w, root)
    return tuple(x - c * a for x, a in zip(w, root))


def dot_reflect(rs: RootSystem, alpha, lam: Weight) -> Weight:
    """Dot-action reflection s_alpha . lam = lam - (lam + rho, alpha^vee) alpha."""
    if isinstance(alpha, int):
        c = lam[alpha] + 1
        root = rs.simple_roots[alpha]
    else:
        root = _as_root(rs, alpha)
        c = pairing(rs, tuple(x + 1 for x in lam), root)
    return tuple(x - c * a for x, a in zip(lam, root))


def affine_dot_reflect(rs: RootSystem, alpha, m: int, p: int, lam: Weight) -> Weight:
    """s_{alpha, mp} . lam = s_alpha . lam + m p alpha."""
    root = _as_root(rs, alpha)
    base = dot_reflect(rs, root, lam)
    return tuple(x + m * p * a for x, a in zip(base, root))


def is_dominant(w: Weight) -> bool:
    return all(c >= 0 for c in w)


def is_restricted(w: Weight, bound: int) -> bool:
    """Membership in X_r(T): all coordinates in [0, bound)."""
    return all(0 <= c < bound for c in w)


def dominant_conjugate(rs: RootSystem, w: Weight) -> tuple:
    """The dominant weight in the linear W-orbit of w, with word-length parity.

    The parity is that of the particular reduction word; it equals det(w) for
    regular weights but is representative-dependent on walls.
    """
    cur = list(w)
    simple = rs.simple_roots
    count = 0
    while True:
        for i, c in enumerate(cur):
            if c < 0:
                row = simple[i]
                for j in range(rs.rank):
                    cur[j] -= c * row[j]
                count += 1
                break
        else:
            return tuple(cur), count % 2


_STAR_NONTRIVIAL = ("A", "Dodd", "E6")


def duality_star(rs: RootSystem, lam: Weight) -> Weight:
    """The duality involution lam* = -w0(lam) on dominant weights."""
    if not is_dominant(lam):
        raise DomainError("duality involution is defined on dominant weights")
    if rs.family == "A":
        return tuple(reversed(lam))
    if rs.family == "D" and rs.rank % 2 == 1:
        out = list(lam)
        out[-2], out[-1] = out[-1], out[-2]
        return tuple(out)
    if rs.family == "E" and rs.rank == 6:
        out = list(lam)
        out[0], out[5] = out[5], out[0]
        out[2], out[4] = out[4], out[2]
        return tuple(out)
    return lam


# ---------------------------------------------------------------------------
# dominance order


def root_coefficients(rs: RootSystem, w: Weight):
    """Expansion of w on the simple roots, or None if w is not in QPhi.

    Returns a tuple of Fractions c with w = sum c_i alpha_i.
    """
    inv = rs._inv_cartan
    # w = c . cartan  =>  c = w . inv(cartan)
    coeffs = []
    for j in range(rs.rank):
        coeffs.append(sum(Fraction(w[i]) * inv[i][j] for i in range(rs.rank)))
    return tuple(coeffs)


def in_root_lattice(rs: RootSystem, w: Weight) -> bool:
    return all(c.denominator == 1 for c in root_coefficients(rs, w))


def in_lattice_multiple(rs: RootSystem, w: Weight, m: int):
    """If w = m * sigma for a lattice weight sigma, return sigma, else None."""
    if m < 1:
        raise DomainError("multiplier must be >= 1")
    if any(c % m for c in w):
        return None
    return tuple(c // m for c in w)


def dominance_leq(rs: RootSystem, mu: Weight, lam: Weight) -> bool:
    """True iff lam - mu is a non-negative integer combination of simple roots."""
    diff = tuple(a - b for a, b in zip(lam, mu))
    coeffs = root_coefficients(rs, diff)
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


@lru_cache(maxsize=None)
def dominant_weights_leq(rs: RootSystem, lam: Weight) -> tuple:
    """All dominant mu <= lam, sorted.

    Walks downward cover candidates mu - beta for beta a positive root;
    covers in the dominance order on dominant weights are root differences,
    so the walk closes over the whole downward set.
    """
    if not is_dominant(lam):
        raise DomainError("expected a dominant weight")
    seen = {lam}
    queue = [lam]
    while queue:
        mu = queue.pop()
        for beta in rs.positive_roots:
            cand = tuple(a - b for a, b in zip(mu, beta))
            if cand not in seen and is_dominant(cand):
                seen.add(cand)
                queue.append(cand)
    return tuple(sorted(seen))


def weyl_orbit(rs: RootSystem, w: Weight, cap: int = 2_000_000) -> set:
    """Full W-orbit of a weight (exact), gated by a size cap."""
    orbit = {tuple(w)}
    frontier = [tuple(w)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                if v[i] == 0:
                    continue
                u = reflect(rs, i, v)
                if u not in orbit:
                    orbit.add(u)
                    nxt.append(u)
                    if len(orbit) > cap:
                        raise BudgetExceededError(
                            f"Weyl orbit exceeds cap {cap} in {rs.name}")
        frontier = nxt
    return orbit


def weight_superset(rs: RootSystem, lam: Weight, cap: int = 2_000_000) -> set:
    """The saturated weight set {nu : dominant_conjugate(nu) <= lam}.

    This is the weight set of the induced module of highest weight lam, a
    sound superset of the weights of the simple module; multiplicities are
    collapsed.
    """
    out = set()
    for mu in dominant_weights_leq(rs, lam):
        out |= weyl_orbit(rs, mu, cap=cap)
        if len(out) > cap:
            raise BudgetExceededError(f"weight superset exceeds cap {cap}")
    return out


def root_height(rs: RootSystem, root: Weight) -> int:
    key = root if root in rs._root_index else tuple(-c for c in root)
    sign = 1 if root in rs._root_index else -1
    return sign * sum(rs._root_index[key])


def all_roots(rs: RootSystem) -> tuple:
    return rs.positive_roots + tuple(
        tuple(-c for c in r) for r in rs.positive_roots
    )


def dominant_roots(rs: RootSystem) -> tuple:
    """The highest long and highest short roots (deduplicated)."""
    if rs.highest_long == rs.highest_short:
        return (rs.highest_long,)
    return (rs.highest_long, rs.highest_short)
