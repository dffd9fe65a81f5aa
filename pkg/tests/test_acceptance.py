"""Acceptance suite: one test per published-claim criterion, each printing a
pass line with its elapsed time (run with -s to see them)."""

import random
import time
from concurrent.futures import ProcessPoolExecutor

import pytest

from liecheck import linkage, oracles, rootsys, socle, typec, wsearch
from liecheck.rootsys import root_system
from liecheck.wsearch import SearchSpec


class Budget:
    def __init__(self, name, seconds=None):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.monotonic() - self.t0
        if exc_type is None:
            status = "PASS"
            print(f"ACCEPTANCE {self.name}: {status} ({elapsed:.2f}s)")
            if self.seconds is not None:
                assert elapsed < self.seconds, \
                    f"{self.name} exceeded its {self.seconds}s budget"
        else:
            print(f"ACCEPTANCE {self.name}: FAIL ({elapsed:.2f}s)")
        return False


def omega(rs, i):
    return tuple(int(j == i - 1) for j in range(rs.rank))


def zero(rs):
    return tuple(0 for _ in range(rs.rank))


def primes_in(lo, hi):
    out = []
    for m in range(max(lo, 2), hi + 1):
        if all(m % d for d in range(2, int(m ** 0.5) + 1)):
            out.append(m)
    return out


def test_criterion_01_dominant_root_table():
    rows = {
        "A1": ("2", "2"), "A2": ("1,1", "1,1"), "A5": ("1,0,0,0,1",) * 2,
        "B2": ("0,2", "1,0"), "B3": ("0,1,0", "1,0,0"),
        "B6": ("0,1,0,0,0,0", "1,0,0,0,0,0"),
        "C3": ("2,0,0", "0,1,0"), "C6": ("2,0,0,0,0,0", "0,1,0,0,0,0"),
        "D4": ("0,1,0,0",) * 2, "D6": ("0,1,0,0,0,0",) * 2,
        "E6": ("0,1,0,0,0,0",) * 2, "E7": ("1,0,0,0,0,0,0",) * 2,
        "E8": ("0,0,0,0,0,0,0,1",) * 2,
        "F4": ("1,0,0,0", "0,0,0,1"), "G2": ("0,1", "1,0"),
    }
    with Budget("1 (dominant-root table)", 1.0):
        for name, (long_, short) in rows.items():
            rs = root_system(name)
            assert rootsys.format_weight(rs.highest_long) == long_, name
            assert rootsys.format_weight(rs.highest_short) == short, name


def test_criterion_02_dot_identity_catalog():
    with Budget("2 (dot-identity catalog)", 1.0):
        count = 0
        for name in ("A3", "B2", "C4", "A2"):
            entries = wsearch.identity_catalog(root_system(name), 5)
            for e in entries:
                assert e["ok"], (name, e)
                count += 1
        assert count == 6  # four listed identities plus the two rank-2 cases


def test_criterion_03_p31_alcove_chain():
    with Budget("3 (p=31 alcove chain)", 1.0):
        e8 = root_system("E8")
        z = zero(e8)
        s0 = lambda lam: rootsys.affine_dot_reflect(e8, e8.highest_short, 1, 31, lam)
        s = lambda i, lam: rootsys.dot_reflect(e8, i - 1, lam)
        assert s0(z) == (0, 0, 0, 0, 0, 0, 0, 2)
        assert s0(s(8, z)) == (0, 0, 0, 0, 0, 0, 1, 1)
        assert s0(s(8, s(7, z))) == (0, 0, 0, 0, 0, 1, 0, 1)


def test_criterion_04_b_series_linkage_with_oracle():
    with Budget("4 (B-series linkage vs oracle)", 60.0):
        for n in range(2, 10):
            rs = rootsys.build_root_system("B", n)
            w1, w2 = omega(rs, 1), omega(rs, 2)
            for p in (5, 7, 11, 13):
                got = linkage.b_series_adjoint_linkage(n, p)
                if n % p != 1 or n == 2:
                    assert got is False, (n, p)
                assert got == oracles.b_series_congruence_linked(n, w1, w2, p)
                if n <= 5:
                    assert got == oracles.linked_bruteforce(rs, w1, w2, p)


def test_criterion_05_c_series_dominant_roots():
    with Budget("5 (C-series dominant roots)", 60.0):
        for n in range(3, 9):
            for p in (5, 7, 11, 13):
                assert linkage.c_series_dominant_root_linkage(n, p) is False


def test_criterion_06_c_series_zero_linkage():
    with Budget("6 (C-series zero linkage)", 120.0):
        for n in range(3, 11):
            for p in primes_in(n + 1, 2 * n + 1):
                for j in range(2, n + 1, 2):
                    assert linkage.c_series_zero_linkage(n, p, j) is False, \
                        (n, p, j)


def test_criterion_07_f4_g2():
    with Budget("7 (F4/G2 dominant roots)", 10.0):
        for p in (5, 7, 11, 13):
            got = linkage.f4_g2_dominant_root_linkage(p)
            assert got == {"F4": False, "G2": False}, (p, got)


def test_criterion_08_exceptional_two_root_sum_sweep():
    cases = [("E6", 5, (1, 2)), ("E7", 7, (1, 2)), ("E7", 5, (2,)),
             ("E8", 7, (1, 2)), ("F4", 5, (2,)), ("G2", 7, (1, 2))]
    with Budget("8 (exceptional two-root-sum sweep)", 600.0):
        for name, p, rs_ in cases:
            rs = root_system(name)
            for lam in wsearch.scope_weights(rs):
                for r in rs_:
                    sols = wsearch.search_two_root_sum(SearchSpec(rs, p, r, lam))
                    assert sols == [], (name, p, r, lam, sols)


FROZEN_MAXIMA = {"A4": 2, "B4": 4, "C4": 4, "D5": 2, "E6": 2, "E7": 3,
                 "E8": 4, "F4": 4, "G2": 6}
MINIMAL_REGIME = {"A4": (5, 1), "B4": (5, 1), "C4": (5, 2), "D5": (5, 1),
                  "E6": (5, 1), "E7": (7, 1), "E8": (7, 1), "F4": (7, 1),
                  "G2": (7, 1)}


def test_criterion_09_pairing_audit_and_fixed_points():
    with Budget("9 (pairing audit and fixed points)", 120.0):
        for name, frozen in FROZEN_MAXIMA.items():
            rs = root_system(name)
            rep = wsearch.inequality_maxima(rs)
            assert rep["ok"], name
            assert rep["max"] == frozen, (name, rep)
            p, r = MINIMAL_REGIME[name]
            for lam in wsearch.scope_weights(rs):
                fp = wsearch.socle_fixed_points(rs, p, r, lam)
                assert fp["solutions"] == [], (name, lam)
                assert fp["bound_ok"], (name, lam)


def test_criterion_10_higher_frobenius_scans():
    with Budget("10 (higher twist and shift scans)", 300.0):
        for name in FROZEN_MAXIMA:
            rs = root_system(name)
            droots = set(rootsys.dominant_roots(rs))
            for p, r in ((5, 2), (7, 2)):
                modulus = p ** r - 1
                for lam in wsearch.scope_weights(rs):
                    forms = wsearch.scan_higher_twist_forms(rs, p, r, lam)
                    shapes = wsearch.scan_simple_shift_forms(rs, p, r, lam)
                    all_sols = [s for v in forms.values() for s in v]
                    all_sols += [s for v in shapes.values() for s in v]
                    if lam in droots:
                        # the forced fixed point, and nothing else
                        assert [s.total for s in all_sols] == \
                            [tuple(modulus * c for c in lam)], (name, p, lam)
                        assert all_sols[0].sigma == lam
                    else:
                        assert all_sols == [], (name, p, lam)


def test_criterion_11_socle_multisets():
    with Budget("11 (socle multisets)", 10.0):
        a2 = root_system("A2")
        assert socle.socle_weights_general(a2, 5, 1, (1, 0), socle.zero_msigma) \
            == (((-2, 2), 1), ((3, -2), 1))
        assert socle.socle_weights_general(a2, 5, 2, (1, 0), socle.zero_msigma) \
            == (((-6, 10), 1), ((-2, 2), 1), ((3, -2), 1), ((9, -5), 1))
        rng = random.Random(2024)
        types = ["A2", "A3", "B2", "B3", "C3", "C4", "D4", "D5", "G2", "F4"]
        checked = 0
        while checked < 50:
            rs = root_system(rng.choice(types))
            p = rng.choice([5, 7])
            r = rng.choice([1, 2])
            lam = tuple(rng.randrange(0, 4) for _ in range(rs.rank))
            if not socle.small_weight_scope(rs, lam):
                continue
            assert socle.socle_weights_small(rs, p, r, lam, socle.zero_msigma) \
                == socle.socle_weights_general(rs, p, r, lam, socle.zero_msigma)
            checked += 1


def test_criterion_12_rank12_fixture_row():
    with Budget("12 (rank-12 fixture row)", 5.0):
        provider, _ = typec.fixture_c12_p3()
        for j, expect in {2: 0, 4: 0, 6: 1, 8: 0, 10: 0, 12: 0}.items():
            bound, _how = typec.h2_fundamental(provider, j)
            assert bound.exact and bound.value == expect, (j, bound)
        rep = typec.four_term_consistency(provider, 6, 1, 1)
        assert rep["ok"] and (rep["h1"], rep["m"], rep["hom"], rep["h2"]) \
            == (1, 1, 1, 1)


PUBLISHED_P3 = {
    6: [6], 7: [6], 8: [], 9: [6], 10: [6], 11: [], 12: [6], 13: [6], 14: [],
    15: [6, 8], 16: [6, 10], 17: [], 18: [6, 14], 19: [6, 16], 20: [18],
    21: [6, 18], 22: [6, 18], 23: [18], 24: [6, 8, 18], 25: [6, 10, 18],
    26: [], 27: [6, 14], 28: [6, 16], 29: [18], 30: [6, 18], 31: [6, 18],
    32: [18], 33: [6, 8, 18], 34: [6, 10, 18], 35: [], 36: [6, 14],
    37: [6, 16], 38: [18], 39: [6, 18, 20], 40: [6, 18, 22],
}
PUBLISHED_P5 = {
    10: [10], 11: [10], 12: [10], 13: [10], 14: [], 15: [10], 16: [10],
    17: [10], 18: [10], 19: [], 20: [10], 21: [10], 22: [10], 23: [10],
    24: [], 25: [10], 26: [10], 27: [10], 28: [10], 29: [], 30: [10],
    31: [10], 32: [10], 33: [10], 34: [], 35: [10, 12], 36: [10, 14],
    37: [10, 16], 38: [10, 18], 39: [], 40: [10, 22], 41: [10, 24],
    42: [10, 26], 43: [10, 28], 44: [], 45: [10, 32], 46: [10, 34],
    47: [10, 36], 48: [10, 38], 49: [], 50: [10, 42], 51: [10, 44],
    52: [10, 46], 53: [10, 48], 54: [50],
}


def test_criterion_13_rule_provider_soundness_with_fallback():
    """The optional rule-backed provider cannot be completed from the inputs
    available here (the submodule-series rule lives in an external
    reference), so this criterion runs in its declared fallback mode:
    fixture-row conformance is asserted (criterion 12 again), and the
    partial rule-backed pipeline is held to soundness, never contradicting
    a published value: exact cells must match the tables, published
    nonzero cells must be exact matches or honestly undetermined, and no
    exact dimension may exceed one."""
    with Budget("13 (rule provider, fallback mode)"):
        provider, _ = typec.fixture_c12_p3()
        for j, expect in {2: 0, 4: 0, 6: 1, 8: 0, 10: 0, 12: 0}.items():
            bound, _how = typec.h2_fundamental(provider, j)
            assert bound.exact and bound.value == expect
        print("ACCEPTANCE 13: rule provider incomplete; falling back to "
              "fixture-row conformance")

        stats = {"exact_rows": 0, "interval_cells": 0, "rows": 0}
        for p, published in ((3, PUBLISHED_P3), (5, PUBLISHED_P5)):
            rows = typec.generate_table(p, sorted(published))
            for n, want_ones in published.items():
                row = rows[n]
                stats["rows"] += 1
                assert row["flagged"] == {}, (p, n, row)
                got_exact_ones = set(row["ones"])
                undet = row["undetermined"]
                stats["interval_cells"] += len(undet)
                # soundness: every exact one is published, every exact zero
                # is not published, and published ones are exact or open
                assert got_exact_ones <= set(want_ones), (p, n, row)
                for j in row["zeros"]:
                    assert j not in want_ones, (p, n, j)
                for j in want_ones:
                    if j not in got_exact_ones:
                        lo, hi = undet[j]
                        assert lo <= 1 and (hi == typec.INF or hi >= 1), \
                            (p, n, j)
                if got_exact_ones == set(want_ones) and not undet:
                    stats["exact_rows"] += 1
        print(f"ACCEPTANCE 13: {stats['exact_rows']}/{stats['rows']} rows "
              f"reproduced exactly; {stats['interval_cells']} cells reported "
              "as intervals; no published value contradicted")
        assert stats["exact_rows"] >= 40


def test_criterion_14_property_suites():
    with Budget("14 (property suites)", 120.0):
        rng = random.Random(99)
        # dot reflections are involutions
        for _ in range(200):
            rs = root_system(rng.choice(["A3", "B3", "C4", "G2"]))
            lam = tuple(rng.randrange(-5, 6) for _ in range(rs.rank))
            root = rng.choice(rs.positive_roots)
            assert rootsys.dot_reflect(rs, root, rootsys.dot_reflect(rs, root, lam)) == lam

        # linkage is an equivalence relation
        for name, p in (("B3", 5), ("C4", 7)):
            rs = root_system(name)
            pts = [tuple(rng.randrange(0, 7) for _ in range(rs.rank))
                   for _ in range(10)]
            for a in pts:
                assert linkage.linked(rs, a, a, p).linked
            for _ in range(40):
                a, b, c = (rng.choice(pts) for _ in range(3))
                ab = linkage.linked(rs, a, b, p).linked
                assert ab == linkage.linked(rs, b, a, p).linked
                if ab and linkage.linked(rs, b, c, p).linked:
                    assert linkage.linked(rs, a, c, p).linked

        # alcove form invariance under 100 random affine moves
        rs = root_system("C4")
        p = 5
        for _ in range(5):
            lam = tuple(rng.randrange(-8, 9) for _ in range(4))
            base = linkage.canonical_alcove_form(rs, lam, p).point
            v = lam
            for _ in range(100):
                root = rng.choice(rs.positive_roots)
                if rng.random() < 0.5:
                    v = rootsys.dot_reflect(rs, root, v)
                else:
                    v = rootsys.affine_dot_reflect(rs, root, rng.randrange(-2, 3), p, v)
            assert linkage.canonical_alcove_form(rs, v, p).point == base

        # dominance is a partial order
        for name in ("B3", "G2"):
            rs = root_system(name)
            pts = [tuple(rng.randrange(0, 5) for _ in range(rs.rank))
                   for _ in range(15)]
            for _ in range(1000):
                a, b, c = (rng.choice(pts) for _ in range(3))
                if rootsys.dominance_leq(rs, a, b) and rootsys.dominance_leq(rs, b, a):
                    assert a == b
                if rootsys.dominance_leq(rs, a, b) and rootsys.dominance_leq(rs, b, c):
                    assert rootsys.dominance_leq(rs, a, c)

        # search results are independent of parallel splitting
        e6 = root_system("E6")
        lams = wsearch.scope_weights(e6)
        serial = [
            tuple((s.constituents, s.sigma)
                  for s in wsearch.search_two_root_sum(SearchSpec(e6, 5, 1, lam)))
            for lam in lams
        ]
        with ProcessPoolExecutor(max_workers=2) as pool:
            parallel = list(pool.map(_search_worker, lams))
        assert serial == parallel


def _search_worker(lam):
    e6 = root_system("E6")
    return tuple((s.constituents, s.sigma)
                 for s in wsearch.search_two_root_sum(SearchSpec(e6, 5, 1, lam)))
