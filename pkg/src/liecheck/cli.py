"""Batch front end: one subcommand per verification, JSON/CSV reports,
result caching, reproducible manifests.

Exit codes: 0 all asserted claims hold, 1 a claim failed (a published value
was not reproduced), 2 usage error.  Every run writes a JSON report (and
CSV for tables) under --out; repeated runs are served from the cache keyed
by the manifest minus timing, unless --no-cache is given.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__, figures, linkage, rootsys, socle, typec, wsearch
from .errors import DomainError, InvalidTypeError, LiecheckError

CACHE_ENV = "LIECHECK_CACHE_DIR"


# ---------------------------------------------------------------------------
# parameter plumbing


def resolve_type(args) -> rootsys.RootSystem:
    label = args.type
    if label is None:
        raise DomainError("--type is required")
    if len(label) == 1:
        if getattr(args, "rank", None) is None:
            raise DomainError("bare family letter needs --rank")
        return rootsys.build_root_system(label.upper(), args.rank)
    return rootsys.root_system(label)


def resolve_weight(text: str, rs: rootsys.RootSystem):
    """Weight argument: coordinates "1,0,2", "w<k>", "0", or the dominant
    root aliases table2:long / table2:short."""
    text = text.strip()
    if text == "table2:long":
        return rs.highest_long
    if text == "table2:short":
        return rs.highest_short
    if text.startswith("w") and text[1:].isdigit():
        k = int(text[1:])
        if not 1 <= k <= rs.rank:
            raise DomainError(f"w{k} is out of range for {rs.name}")
        return tuple(int(i == k - 1) for i in range(rs.rank))
    if text == "0":
        return tuple(0 for _ in range(rs.rank))
    return rootsys.parse_weight(text, rs.rank)


def regime_ok(rs: rootsys.RootSystem, p: int, r: int, lam=None) -> tuple:
    """Admissibility of (p, q) per type; the gate warns, it never refuses."""
    q = p ** r
    fam, n = rs.family, rs.rank
    notes = []
    ok = True
    if fam in ("A", "B", "C", "D") or (fam == "E" and n == 6):
        ok = p > 3
    elif fam == "E" and n == 7 or fam == "F":
        ok = p > 3 and q > 5
    else:  # E8, G2
        ok = p > 5
    if fam == "C" and lam is not None and rootsys.in_root_lattice(rs, lam):
        if q <= 5:
            ok = False
            notes.append("root-lattice weight in type C needs q > 5")
    if not ok:
        notes.insert(0, f"parameters p={p}, q={q} are outside the supported regime")
    return ok, notes


# ---------------------------------------------------------------------------
# reports, caching


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def _digest(obj) -> str:
    return hashlib.sha256(_canonical(obj).encode()).hexdigest()[:16]


class Reporter:
    def __init__(self, args, command: str, params: dict):
        self.command = command
        self.out_dir = args.out
        self.use_cache = not args.no_cache
        self.cache_dir = os.environ.get(
            CACHE_ENV, os.path.join(self.out_dir, ".cache"))
        self.manifest_core = {
            "schema": 1,
            "version": __version__,
            "command": command,
            "params": params,
        }
        self.t0 = time.monotonic()

    def cache_key(self) -> str:
        return _digest(self.manifest_core)

    def load_cached(self):
        if not self.use_cache:
            return None
        path = os.path.join(self.cache_dir, self.cache_key() + ".json")
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
            if payload["manifest"]["result_digest"] != _digest(payload["result"]):
                raise ValueError("digest mismatch")
            payload["manifest"]["cache_hit"] = True
            return payload
        except (ValueError, KeyError, json.JSONDecodeError):
            os.remove(path)  # corrupt entries are evicted and recomputed
            return None

    def finish(self, result, claims, warnings=()):
        manifest = dict(self.manifest_core)
        manifest["elapsed_ms"] = int((time.monotonic() - self.t0) * 1000)
        manifest["result_digest"] = _digest(result)
        manifest["cache_hit"] = False
        manifest["warnings"] = list(warnings)
        payload = {"manifest": manifest, "result": result,
                   "claims": [{"name": n, "ok": bool(ok), "detail": d}
                              for n, ok, d in claims]}
        if self.use_cache:
            os.makedirs(self.cache_dir, exist_ok=True)
            cache_path = os.path.join(self.cache_dir, self.cache_key() + ".json")
            with open(cache_path, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True, indent=1)
        return payload


def emit(args, payload, csv_rows=None, csv_header=None) -> int:
    os.makedirs(args.out, exist_ok=True)
    name = payload["manifest"]["command"].replace(" ", "-")
    stem = f"{name}-{_digest(payload['manifest']['params'])}"
    json_path = os.path.join(args.out, stem + ".json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
    paths = [json_path]
    if csv_rows is not None:
        csv_path = os.path.join(args.out, stem + ".csv")
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            if csv_header:
                writer.writerow(csv_header)
            writer.writerows(csv_rows)
        paths.append(csv_path)
    for w in payload["manifest"].get("warnings", ()):
        print(f"warning: {w}", file=sys.stderr)
    failures = [c for c in payload["claims"] if not c["ok"]]
    for c in payload["claims"]:
        status = "ok" if c["ok"] else "FAIL"
        print(f"[{status}] {c['name']}: {c['detail']}")
    print(f"report: {', '.join(paths)}")
    return 1 if failures else 0


def run_cached(args, command, params, compute, csv_fn=None) -> int:
    """Shared execute-or-replay wrapper: compute() -> (result, claims, warns)."""
    rep = Reporter(args, command, params)
    payload = rep.load_cached()
    if payload is None:
        result, claims, warns = compute()
        payload = rep.finish(result, claims, warns)
    csv_rows = csv_header = None
    if csv_fn is not None:
        csv_header, csv_rows = csv_fn(payload["result"])
    return emit(args, payload, csv_rows, csv_header)


def _pmap(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommand implementations


def cmd_rootsys_info(args) -> int:
    rs = resolve_type(args)
    params = {"type": rs.name}

    def compute():
        result = {
            "type": rs.name,
            "rank": rs.rank,
            "cartan": [list(r) for r in rs.cartan],
            "positive_root_count": len(rs.positive_roots),
            "coxeter_number": rs.coxeter_number,
            "fundamental_group_order": rs.fundamental_group_order,
            "highest_long": rootsys.format_weight(rs.highest_long),
            "highest_short": rootsys.format_weight(rs.highest_short),
        }
        return result, [], []

    return run_cached(args, "rootsys info", params, compute)


def cmd_linkage_check(args) -> int:
    rs = resolve_type(args)
    lhs = resolve_weight(args.lhs, rs)
    rhs = resolve_weight(args.rhs, rs)
    params = {"type": rs.name, "p": args.p, "lhs": rootsys.format_weight(lhs),
              "rhs": rootsys.format_weight(rhs), "extended": args.extended}

    def compute():
        fn = linkage.linked_extended if args.extended else linkage.linked
        verdict = fn(rs, lhs, rhs, args.p)
        result = {
            "type": rs.family, "rank": rs.rank, "p": args.p,
            "lhs": rootsys.format_weight(lhs),
            "rhs": rootsys.format_weight(rhs),
            "linked": verdict.linked,
        }
        if verdict.witness:
            word, nu = verdict.witness
            result["witness"] = {"word": ["".join(map(str, op)) for op in word],
                                 "nu": rootsys.format_weight(nu)}
        _, notes = regime_ok(rs, args.p, 1)
        return result, [], notes

    return run_cached(args, "linkage check", params, compute)


def cmd_linkage_lemma_b(args) -> int:
    params = {"n": args.n, "p": args.p}

    def compute():
        got = linkage.b_series_adjoint_linkage(args.n, args.p)
        expected = (args.n % args.p == 1) if args.n >= 3 else False
        claims = [("adjoint pair not linked unless n = 1 mod p",
                   got == expected, f"B{args.n}, p={args.p}: linked={got}")]
        return {"n": args.n, "p": args.p, "linked": got}, claims, []

    return run_cached(args, "linkage lemma-b", params, compute)


def cmd_linkage_lemma_c(args) -> int:
    params = {"n": args.n, "p": args.p}

    def compute():
        got = linkage.c_series_dominant_root_linkage(args.n, args.p)
        claims = [("dominant roots of C_n never linked (extended)",
                   got is False, f"C{args.n}, p={args.p}: linked={got}")]
        return {"n": args.n, "p": args.p, "linked": got}, claims, []

    return run_cached(args, "linkage lemma-c", params, compute)


def cmd_linkage_f4g2(args) -> int:
    params = {"p": args.p}

    def compute():
        got = linkage.f4_g2_dominant_root_linkage(args.p)
        claims = [(f"{name}: dominant roots not linked", not v,
                   f"p={args.p}: linked={v}") for name, v in sorted(got.items())]
        return {"p": args.p, "linked": got}, claims, []

    return run_cached(args, "linkage f4g2", params, compute)


def cmd_linkage_typec_zero(args) -> int:
    params = {"n": args.n, "p": args.p, "j": args.j}

    def compute():
        got = linkage.c_series_zero_linkage(args.n, args.p, args.j)
        claims = []
        if args.p > args.n:
            claims.append(("omega_j not linked to zero for p > n", not got,
                           f"C{args.n}, p={args.p}, j={args.j}: linked={got}"))
        return {"n": args.n, "p": args.p, "j": args.j, "linked": got}, claims, []

    return run_cached(args, "linkage typec-zero", params, compute)


def _search_lambdas(args, rs) -> list:
    if args.all_scope:
        return list(wsearch.scope_weights(rs))
    if args.lam is None:
        raise DomainError("give --lambda or --all-scope")
    return [resolve_weight(args.lam, rs)]


def _two_root_sum_worker(task):
    name, p, r, lam = task
    rs = rootsys.root_system(name)
    spec = wsearch.SearchSpec(rs, p, r, lam)
    sols = wsearch.search_two_root_sum(spec)
    return lam, sols, wsearch.candidates_two_root_sum(spec)


def cmd_search_two_root_sum(args) -> int:
    rs = resolve_type(args)
    lams = _search_lambdas(args, rs)
    params = {"type": rs.name, "p": args.p, "r": args.r,
              "lambda": [rootsys.format_weight(l) for l in lams]}

    def compute():
        warns = []
        tasks = [(rs.name, args.p, args.r, lam) for lam in lams]
        outcomes = _pmap(_two_root_sum_worker, tasks, args.jobs)
        per_lam = []
        candidates = 0
        for lam, sols, examined in outcomes:
            candidates += examined
            per_lam.append((lam, sols))
            ok, notes = regime_ok(rs, args.p, args.r, lam)
            warns.extend(f"{rootsys.format_weight(lam)}: {n}" for n in notes)
        result = {
            "type": rs.family, "rank": rs.rank, "p": args.p, "r": args.r,
            "form": "two-root-sum",
            "candidates_examined": candidates,
            "solutions": {
                rootsys.format_weight(lam): [s.as_dict() for s in sols]
                for lam, sols in per_lam
            },
        }
        claims = [(f"no nonzero fixed quotient for {rootsys.format_weight(lam)}",
                   not sols, f"{len(sols)} solutions")
                  for lam, sols in per_lam] if args.expect_empty else []
        return result, claims, warns

    return run_cached(args, "search two-root-sum", params, compute)


def cmd_search_e2_forms(args) -> int:
    rs = resolve_type(args)
    lam = resolve_weight(args.lam, rs)
    params = {"type": rs.name, "p": args.p, "r": args.r,
              "lambda": rootsys.format_weight(lam)}

    def compute():
        families = {}
        families["p*beta-dual"] = [
            s.as_dict() for s in wsearch.scan_root_twist_r1(rs, args.p, args.r, lam)]
        if args.r >= 2:
            for k, v in wsearch.scan_higher_twist_forms(rs, args.p, args.r, lam).items():
                families[k] = [s.as_dict() for s in v]
            for k, v in wsearch.scan_simple_shift_forms(rs, args.p, args.r, lam).items():
                families[k] = [s.as_dict() for s in v]
        _, notes = regime_ok(rs, args.p, args.r, lam)
        result = {"type": rs.family, "rank": rs.rank, "p": args.p, "r": args.r,
                  "lambda": rootsys.format_weight(lam), "solutions": families}
        return result, [], notes

    return run_cached(args, "search e2-forms", params, compute)


def cmd_search_fixed_points(args) -> int:
    rs = resolve_type(args)
    lam = resolve_weight(args.lam, rs)
    params = {"type": rs.name, "p": args.p, "r": args.r,
              "lambda": rootsys.format_weight(lam)}

    def compute():
        rep = wsearch.socle_fixed_points(rs, args.p, args.r, lam)
        ok, notes = regime_ok(rs, args.p, args.r, lam)
        result = {"type": rs.family, "rank": rs.rank, "p": args.p, "r": args.r,
                  "lambda": rootsys.format_weight(lam),
                  "candidates_examined": rep["candidates"],
                  "max_negative_pairing": rep["max_negative_pairing"],
                  "bound_ok": rep["bound_ok"],
                  "solutions": [s.as_dict() for s in rep["solutions"]]}
        claims = []
        if ok:
            claims = [("no nonzero invariant weight in the first-cohomology "
                       "multiset", not rep["solutions"],
                       f"{len(rep['solutions'])} hits"),
                      ("p^r exceeds the negative pairing bound",
                       rep["bound_ok"],
                       f"max={rep['max_negative_pairing']}, p^r={args.p**args.r}")]
        return result, claims, notes

    return run_cached(args, "search fixed-points", params, compute)


def cmd_search_remark44(args) -> int:
    rs = resolve_type(args)
    params = {"type": rs.name}

    def compute():
        entries = wsearch.identity_catalog(rs, 5)
        result = {"type": rs.name, "identities": [
            {"identity": e["identity"],
             "computed": rootsys.format_weight(e["computed"]),
             "stated": rootsys.format_weight(e["stated"]),
             "ok": e["ok"]} for e in entries]}
        claims = [(e["identity"], e["ok"],
                   rootsys.format_weight(e["computed"])) for e in entries]
        return result, claims, []

    return run_cached(args, "search remark44", params, compute)


def cmd_audit_inequalities(args) -> int:
    rs = resolve_type(args)
    params = {"type": rs.name}

    def compute():
        rep = wsearch.inequality_maxima(rs)
        result = {"type": rs.name, "max": rep["max"], "bound": rep["bound"]}
        claims = [("reflected pairings within the per-type bound", rep["ok"],
                   f"max={rep['max']}, bound={rep['bound']}")]
        return result, claims, []

    return run_cached(args, "audit inequalities", params, compute)


def cmd_socle_compute(args) -> int:
    rs = resolve_type(args)
    lam = resolve_weight(args.lam, rs)
    params = {"type": rs.name, "p": args.p, "r": args.r,
              "lambda": rootsys.format_weight(lam), "msigma": args.msigma}

    def compute():
        import warnings as _warnings
        if args.msigma == "zero":
            provider = socle.zero_msigma
        elif args.msigma == "table":
            provider = socle.table_msigma
        else:
            provider = socle.json_msigma(args.msigma)
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore", socle.MsigmaWarning)
            general = socle.socle_weights_general(rs, args.p, args.r, lam, provider)
            small = None
            if args.p > 3 and socle.small_weight_scope(rs, lam):
                small = socle.socle_weights_small(rs, args.p, args.r, lam, provider)
        result = {"type": rs.family, "rank": rs.rank, "p": args.p, "r": args.r,
                  "lambda": rootsys.format_weight(lam),
                  "multiset": [[rootsys.format_weight(w), m] for w, m in general],
                  "total_multiplicity": socle.multiset_size(general)}
        claims = []
        if small is not None:
            claims.append(("small-weight specialization agrees",
                           small == general, f"{len(general)} distinct weights"))
        _, notes = regime_ok(rs, args.p, args.r, lam)
        return result, claims, notes

    return run_cached(args, "socle compute", params, compute)


def _provider_for(args):
    if args.provider == "fixture":
        provider, _ = typec.fixture_c12_p3()
        if (args.n, args.p) != (12, 3):
            raise DomainError("the fixture provider covers rank 12 at p = 3")
        return provider
    return typec.RuleProvider(args.n, args.p)


def cmd_typec_h2(args) -> int:
    params = {"n": args.n, "p": args.p, "j": args.j, "provider": args.provider}

    def compute():
        provider = _provider_for(args)
        bound, how = typec.h2_fundamental(provider, args.j)
        result = {"n": args.n, "p": args.p, "j": args.j,
                  "provider": provider.kind,
                  "lower": bound.lower,
                  "upper": None if bound.upper == typec.INF else bound.upper,
                  "exact": bound.exact, "method": how}
        claims = [("dimension determined exactly", bound.exact, str(bound))]
        if bound.exact:
            claims.append(("dimension at most one", bound.value <= 1,
                           str(bound.value)))
        warns = [] if args.p > 3 else [
            f"p={args.p} is below the supported regime for type C"]
        return result, claims, warns

    return run_cached(args, "typec h2", params, compute)


def _table_row_worker(task):
    p, n = task
    rows = typec.generate_table(p, [n])
    return n, rows[n]


def cmd_typec_table(args) -> int:
    n_values = list(range(args.n_min, args.n_max + 1))
    params = {"p": args.p, "n_min": args.n_min, "n_max": args.n_max}

    def compute():
        results = _pmap(_table_row_worker, [(args.p, n) for n in n_values],
                        args.jobs)
        rows = {n: row for n, row in sorted(results)}
        result = {"p": args.p, "rows": {
            str(n): {"ones": row["ones"],
                     "undetermined": {str(j): list(b) if b[1] != typec.INF
                                      else [b[0], None]
                                      for j, b in row["undetermined"].items()},
                     "flagged": {str(j): v for j, v in row["flagged"].items()},
                     "methods": {str(j): m for j, m in row["methods"].items()},
                     "proof_trace": row["trace"]}
            for n, row in rows.items()}}
        claims = [("every exact dimension is at most one",
                   not any(row["flagged"] for row in rows.values()),
                   "flagged cells: " + str(sum(len(r["flagged"])
                                               for r in rows.values())))]
        warns = []
        und = sum(len(r["undetermined"]) for r in rows.values())
        if und:
            warns.append(f"{und} cells left as intervals (reported, not dropped)")
        if args.figures:
            os.makedirs(args.out, exist_ok=True)
            fig_path = os.path.join(args.out, f"typec-h2-p{args.p}.png")
            figures.render_h2_table(rows, args.p, fig_path)
            result["figure"] = fig_path
        return result, claims, warns

    def csv_fn(result):
        header = ["n", "j_list", "undetermined"]
        rows_csv = []
        for n_str in sorted(result["rows"], key=int):
            row = result["rows"][n_str]
            rows_csv.append([
                n_str,
                " ".join(str(j) for j in row["ones"]) or "none",
                " ".join(sorted(row["undetermined"])) or "",
            ])
        return header, rows_csv

    return run_cached(args, "typec table", params, compute, csv_fn)


def cmd_typec_figures(args) -> int:
    params = {"n": args.n, "p": args.p, "provider": args.provider}

    def compute():
        provider = _provider_for(args)
        os.makedirs(args.out, exist_ok=True)
        weyl_path = os.path.join(args.out, f"weyl-modules-c{args.n}-p{args.p}.png")
        figures.render_weyl_modules(provider, weyl_path)
        result = {"n": args.n, "p": args.p, "files": [weyl_path]}
        if (args.n, args.p) == (12, 3):
            _, p0 = typec.fixture_c12_p3()
            cover_path = os.path.join(args.out, f"projective-cover-c{args.n}-p{args.p}.png")
            figures.render_projective_cover(p0, cover_path)
            result["files"].append(cover_path)
        return result, [], []

    return run_cached(args, "typec figures", params, compute)


# ---------------------------------------------------------------------------
# verify-all


def _verify_checks(quick: bool):
    """Yield (name, callable -> (ok, detail)) pairs for the fixture battery."""

    def dominant_root_table():
        expected = {
            "A2": ("1,1", "1,1"), "B2": ("0,2", "1,0"), "B6": ("0,1,0,0,0,0", "1,0,0,0,0,0"),
            "C3": ("2,0,0", "0,1,0"), "D4": ("0,1,0,0", "0,1,0,0"),
            "E6": ("0,1,0,0,0,0", "0,1,0,0,0,0"),
            "E7": ("1,0,0,0,0,0,0", "1,0,0,0,0,0,0"),
            "E8": ("0,0,0,0,0,0,0,1", "0,0,0,0,0,0,0,1"),
            "F4": ("1,0,0,0", "0,0,0,1"), "G2": ("0,1", "1,0"),
        }
        for name, (long_, short) in expected.items():
            rs = rootsys.root_system(name)
            if rootsys.format_weight(rs.highest_long) != long_:
                return False, f"{name} highest long root mismatch"
            if rootsys.format_weight(rs.highest_short) != short:
                return False, f"{name} highest short root mismatch"
        return True, f"{len(expected)} types checked"

    def identity_catalog():
        count = 0
        for name in ("A3", "B2", "C4", "A2"):
            for e in wsearch.identity_catalog(rootsys.root_system(name), 5):
                count += 1
                if not e["ok"]:
                    return False, f"{name}: {e['identity']} failed"
        return True, f"{count} identities verified"

    def alcove_chain():
        rs = rootsys.build_root_system("E", 8)
        zero = tuple(0 for _ in range(8))
        s0 = lambda lam: rootsys.affine_dot_reflect(rs, rs.highest_short, 1, 31, lam)
        dot = lambda i, lam: rootsys.dot_reflect(rs, i - 1, lam)
        chain = [s0(zero), s0(dot(8, zero)), s0(dot(8, dot(7, zero)))]
        want = [(0, 0, 0, 0, 0, 0, 0, 2), (0, 0, 0, 0, 0, 0, 1, 1),
                (0, 0, 0, 0, 0, 1, 0, 1)]
        return chain == want, f"{chain}"

    def lemma_b():
        for n in range(2, 10):
            for p in (5, 7, 11, 13):
                got = linkage.b_series_adjoint_linkage(n, p)
                if got != ((n % p == 1) if n >= 3 else False):
                    return False, f"B{n}, p={p}"
        return True, "n = 2..9, p in {5,7,11,13}"

    def lemma_c():
        for n in range(3, 9):
            for p in (5, 7, 11, 13):
                if linkage.c_series_dominant_root_linkage(n, p):
                    return False, f"C{n}, p={p} linked"
        return True, "n = 3..8, p in {5,7,11,13}"

    def f4g2():
        for p in (5, 7, 11, 13):
            got = linkage.f4_g2_dominant_root_linkage(p)
            if any(got.values()):
                return False, f"p={p}: {got}"
        return True, "p in {5,7,11,13}"

    def typec_fixture():
        provider, _ = typec.fixture_c12_p3()
        want = {2: 0, 4: 0, 6: 1, 8: 0, 10: 0, 12: 0}
        for j, expect in want.items():
            bound, _how = typec.h2_fundamental(provider, j)
            if not bound.exact or bound.value != expect:
                return False, f"j={j}: {bound}"
        ft = typec.four_term_consistency(provider, 6, 1, 1)
        if not ft["ok"]:
            return False, f"four-term: {ft}"
        return True, "rank-12 row and four-term identity"

    def socle_examples():
        import warnings as _warnings
        rs = rootsys.build_root_system("A", 2)
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore", socle.MsigmaWarning)
            r1 = socle.socle_weights_general(rs, 5, 1, (1, 0))
            r2 = socle.socle_weights_general(rs, 5, 2, (1, 0))
        want1 = (((-2, 2), 1), ((3, -2), 1))
        want2 = (((-6, 10), 1), ((-2, 2), 1), ((3, -2), 1), ((9, -5), 1))
        return (r1, r2) == (want1, want2), "rank-2 multisets"

    def scan_examples():
        b2 = rootsys.build_root_system("B", 2)
        sols = wsearch.scan_root_twist_r1(b2, 5, 1, b2.highest_long)
        if [s.sigma for s in sols] != [b2.highest_long]:
            return False, "B2 twist scan"
        c3 = rootsys.build_root_system("C", 3)
        forms = wsearch.scan_higher_twist_forms(c3, 5, 2, c3.highest_long)
        forced = forms["p^c*alpha-dual"]
        if [s.sigma for s in forced] != [c3.highest_long]:
            return False, "C3 forced solution"
        if forms["p^a*alpha+p^b*beta-dual"] or forms["p^e*(alpha+beta)-dual"]:
            return False, "C3 spurious solutions"
        return True, "twist-scan fixtures"

    checks = [
        ("dominant-root table", dominant_root_table),
        ("dot-identity catalog", identity_catalog),
        ("p=31 alcove chain", alcove_chain),
        ("B-series adjoint linkage", lemma_b),
        ("C-series dominant-root linkage", lemma_c),
        ("F4/G2 dominant-root linkage", f4g2),
        ("rank-12 second-cohomology fixtures", typec_fixture),
        ("socle multiset fixtures", socle_examples),
        ("twist-scan fixtures", scan_examples),
    ]
    if not quick:
        def exceptional_sweep():
            cases = [("E", 6, 5), ("E", 7, 7), ("E", 8, 7), ("G", 2, 7)]
            for fam, rank, p in cases:
                rs = rootsys.build_root_system(fam, rank)
                for lam in wsearch.scope_weights(rs):
                    for r in (1, 2):
                        if wsearch.search_two_root_sum(
                                wsearch.SearchSpec(rs, p, r, lam)):
                            return False, f"{fam}{rank}, p={p}, lam={lam}"
            rs = rootsys.build_root_system("F", 4)
            for lam in wsearch.scope_weights(rs):
                if wsearch.search_two_root_sum(wsearch.SearchSpec(rs, 5, 2, lam)):
                    return False, f"F4, p=5, r=2, lam={lam}"
            return True, "exceptional-type sweeps empty"

        def inequality_audit():
            for name in ("A4", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"):
                rep = wsearch.inequality_maxima(rootsys.root_system(name))
                if not rep["ok"]:
                    return False, f"{name}: max {rep['max']}"
            return True, "nine types audited"

        checks += [
            ("exceptional two-root-sum sweep", exceptional_sweep),
            ("reflected-pairing audit", inequality_audit),
        ]
    return checks


def cmd_verify_all(args) -> int:
    params = {"quick": args.quick}

    def compute():
        claims = []
        for name, fn in _verify_checks(args.quick):
            try:
                ok, detail = fn()
            except LiecheckError as exc:
                ok, detail = False, f"error: {exc}"
            claims.append((name, ok, detail))
        result = {"checks": len(claims),
                  "failed": sum(1 for _, ok, _ in claims if not ok)}
        return result, claims, []

    return run_cached(args, "verify-all", params, compute)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liecheck",
        description="Exact verification toolkit for root-system linkage, "
                    "weight searches, and type-C cohomology chases.")
    parser.add_argument("--out", default="liecheck-out",
                        help="report directory (default: ./liecheck-out)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for batch commands")
    parser.add_argument("--no-cache", action="store_true",
                        help="recompute even if a cached result exists")
    sub = parser.add_subparsers(dest="group", required=True)

    def add_type(p, rank=False):
        p.add_argument("--type", required=True, help='e.g. "E8" or "B6"')
        p.add_argument("--rank", type=int,
                       help="rank when --type is a bare family letter")

    g = sub.add_parser("rootsys").add_subparsers(dest="verb", required=True)
    p = g.add_parser("info")
    add_type(p)
    p.set_defaults(fn=cmd_rootsys_info)

    g = sub.add_parser("linkage").add_subparsers(dest="verb", required=True)
    p = g.add_parser("check")
    add_type(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--extended", action="store_true")
    p.set_defaults(fn=cmd_linkage_check)
    p = g.add_parser("lemma-b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=cmd_linkage_lemma_b)
    p = g.add_parser("lemma-c")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=cmd_linkage_lemma_c)
    p = g.add_parser("f4g2")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=cmd_linkage_f4g2)
    p = g.add_parser("typec-zero")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(fn=cmd_linkage_typec_zero)

    g = sub.add_parser("search").add_subparsers(dest="verb", required=True)
    p = g.add_parser("two-root-sum")
    add_type(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--all-scope", action="store_true",
                   help="sweep every in-scope highest weight")
    p.add_argument("--expect-empty", action="store_true",
                   help="fail (exit 1) when any solution is found")
    p.set_defaults(fn=cmd_search_two_root_sum)
    p = g.add_parser("e2-forms")
    add_type(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(fn=cmd_search_e2_forms)
    p = g.add_parser("fixed-points")
    add_type(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(fn=cmd_search_fixed_points)
    p = g.add_parser("remark44")
    add_type(p)
    p.set_defaults(fn=cmd_search_remark44)

    g = sub.add_parser("audit").add_subparsers(dest="verb", required=True)
    p = g.add_parser("inequalities")
    add_type(p)
    p.set_defaults(fn=cmd_audit_inequalities)

    g = sub.add_parser("socle").add_subparsers(dest="verb", required=True)
    p = g.add_parser("compute")
    add_type(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--msigma", default="zero",
                   help='"zero", "table", or a JSON file path')
    p.set_defaults(fn=cmd_socle_compute)

    g = sub.add_parser("typec").add_subparsers(dest="verb", required=True)
    p = g.add_parser("h2")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--provider", choices=("rule", "fixture"), default="rule")
    p.set_defaults(fn=cmd_typec_h2)
    p = g.add_parser("table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--figures", action="store_true",
                   help="also render the nonvanishing chart")
    p.set_defaults(fn=cmd_typec_table)
    p = g.add_parser("figures")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--provider", choices=("rule", "fixture"), default="rule")
    p.set_defaults(fn=cmd_typec_figures)

    p = sub.add_parser("verify-all")
    p.add_argument("--quick", action="store_true",
                   help="only the fast fixture battery")
    p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "n_min", "missing") is None:
        args.n_min = 6 if args.p == 3 else 10
    try:
        return args.fn(args)
    except (DomainError, InvalidTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LiecheckError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
