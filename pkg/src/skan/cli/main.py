"""The ``skan`` command line.

Each invocation writes one JSON report: the operation, input hashes, flags,
outputs, certificates with their levels, named checks and timings. Only the
``timings`` field varies between identical runs. Exit status is 0 when every
check passes, 1 when a check fails and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from ..errors import CrossCheckMismatch, ParseError, SchemaError, SkanError
from . import formats
from .formats import CocycleSpec, digest, dumps, parse, serialize

POLICIES = ("iso", "retract", "invariants")
PATH_FLAGS = ("--input", "--left", "--right", "--map", "--group", "--base", "--bundle",
              "--action", "--cover", "--cocycle")


class UsageError(SkanError):
    pass


class Run:
    """Collects one report."""

    def __init__(self, op: str, args):
        self.op = op
        self.args = args
        self.inputs: dict = {}
        self.outputs: dict = {}
        self.checks: list[dict] = []
        self.certificates: list[dict] = []
        self.written = None

    def load(self, role: str, path, kind: str):
        if path is None:
            raise UsageError(f"--{role} is required")
        p = Path(path)
        if not p.exists():
            raise SchemaError(f"missing file {str(path)!r}", field=role)
        self.inputs[role] = {"file": p.name, "sha256": digest(p)}
        return parse(p, kind)

    def check(self, name: str, ok: bool, **detail):
        self.checks.append(dict(detail, name=name, ok=bool(ok)))

    def certify(self, claim: str, cert):
        if cert is None:
            self.certificates.append({"claim": claim, "level": None})
        else:
            self.certificates.append(dict(cert.summary(), claim=claim))

    def report(self) -> dict:
        flags = {k: getattr(self.args, k, None) for k in ("bound", "policy", "budget", "degree")}
        return {"operation": self.op, "inputs": self.inputs,
                "flags": {k: v for k, v in flags.items() if v is not None},
                "outputs": self.outputs, "checks": self.checks,
                "certificates": self.certificates,
                "ok": all(c["ok"] for c in self.checks)}


def _counts(X, bound):
    top = bound if X.bound is None else min(bound, X.top)
    return X.counts(top)


# -- simplicial sets ------------------------------------------------------------------------

def cmd_normalize(run: Run, a):
    p = Path(a.input)
    if not p.exists():
        raise SchemaError(f"missing file {a.input!r}", field="input")
    raw = json.loads(p.read_text(encoding="utf-8")) if p.suffix != ".ssx" else None
    if raw is not None and "format" not in raw:
        from ..core.constructions import normalize
        run.inputs["input"] = {"file": p.name, "sha256": digest(p)}
        X = normalize(raw)
    else:
        X = run.load("input", a.input, "sset")
    run.outputs["generators"] = X.generator_counts()
    run.outputs["counts"] = _counts(X, a.bound)
    run.written = X


def cmd_product(run: Run, a):
    from ..core.constructions import product
    X = run.load("left", a.left, "sset")
    Y = run.load("right", a.right, "sset")
    P, _, _ = product(X, Y)
    run.outputs["counts"] = _counts(P, a.bound)
    run.outputs["generators"] = P.generator_counts()
    want = [X.size(n) * Y.size(n) for n in range(len(run.outputs["counts"]))]
    run.check("levelwise_product", run.outputs["counts"] == want)
    run.written = P


def cmd_kan_check(run: Run, a):
    from ..core.kan import check_kan
    if a.map is not None:
        f = run.load("map", a.map, "map")
        rep = check_kan(f, a.bound)
    else:
        X = run.load("input", a.input, "sset")
        rep = check_kan(X, a.bound if X.bound is None else min(a.bound, X.top))
    run.outputs["lifting"] = rep.summary()
    run.check("horn_lifting", rep.ok)


def cmd_homology(run: Run, a):
    from ..invariants.homology import homology
    X = run.load("input", a.input, "sset")
    run.outputs["homology"] = homology(X, a.bound).strings()


def cmd_pi0(run: Run, a):
    from ..invariants.fundamental import pi0
    X = run.load("input", a.input, "sset")
    comps = pi0(X)
    run.outputs["components"] = len(comps)
    run.outputs["representatives"] = [X.names[0][c[0]] for c in comps]


def cmd_pi1(run: Run, a):
    from ..invariants.fundamental import pi1
    X = run.load("input", a.input, "sset")
    G = pi1(X)
    run.outputs["presentation"] = G.to_dict()
    run.outputs["abelianization"] = G.abelianization_str()


def cmd_dec0(run: Run, a):
    from ..bisimplicial import dec0
    from ..core.maps import identity
    from ..invariants.certify import _retract_ok
    from ..invariants.fundamental import pi0
    X = run.load("input", a.input, "sset")
    D, proj, ret = dec0(X)
    run.outputs["counts"] = _counts(D, a.bound)
    run.outputs["components"] = len(pi0(D))
    run.check("section_retraction", ret.retraction.after(ret.section) == identity(ret.section.source))
    run.check("homotopy", _retract_ok(ret.section, ret.retraction, ret.homotopy, "id_to_fr")
              or _retract_ok(ret.section, ret.retraction, ret.homotopy, "fr_to_id"))


def cmd_total(run: Run, a):
    from ..bisimplicial import const_iso
    from ..groups.wbar import wbar_routes
    if a.group is not None:
        G = run.load("group", a.group, "sgroup")
        W, T, iso = wbar_routes(G, a.bound)
        run.outputs["counts"] = T.counts(a.bound)
        run.check("explicit_formula_iso", iso.is_iso())
    else:
        X = run.load("input", a.input, "sset")
        f = const_iso(X, a.bound)
        run.outputs["counts"] = _counts(f.target, a.bound)
        run.check("const_iso", f.is_iso())


# -- groups ---------------------------------------------------------------------------------

def cmd_wbar(run: Run, a):
    from ..groups.wbar import wbar
    G = run.load("group", a.group, "sgroup")
    try:
        W = wbar(G, a.bound)
        ok = True
    except CrossCheckMismatch:
        from ..groups.wbar import wbar_explicit
        W, ok = wbar_explicit(G, a.bound), False
    run.outputs["counts"] = W.counts(a.bound)
    run.check("routes_agree", ok)
    run.written = W


def cmd_w_bundle(run: Run, a):
    from ..bundles.principality import strict_quotient_map
    from ..bundles.quotients import shear
    from ..core.constructions import fiber, truncate
    from ..core.homsets import find_isomorphism
    from ..groups.wbar import w_bundle
    from ..invariants.fundamental import pi0
    from ..invariants.homology import homology
    G = run.load("group", a.group, "sgroup")
    WG, fib, b = w_bundle(G, a.bound)
    run.outputs["counts"] = WG.counts(a.bound)
    run.check("shear_iso", shear(b, 1, a.bound).is_iso())
    run.check("quotient_iso", strict_quotient_map(b).is_iso())
    F, _ = fiber(fib, 0)
    U = G.underlying(a.bound)
    if F.bound is not None and U.bound is None:
        U = truncate(U, F.top)
    run.check("fiber_is_group", find_isomorphism(F, U) is not None)
    h = homology(WG, min(2, a.bound - 1)).strings()
    run.outputs["homology"] = h
    run.outputs["components"] = len(pi0(WG))
    run.check("contractible_evidence", run.outputs["components"] == 1
              and all(s == "0" for s in h[1:]))


def cmd_loop_group(run: Run, a):
    from ..groups.loop import kan_loop_group
    from ..invariants.fundamental import pi1
    X = run.load("input", a.input, "sset")
    GX = kan_loop_group(X, a.bound)
    ab = GX.pi0().abelianization_str()
    run.outputs["pi0_abelianization"] = ab
    run.outputs["pi1_abelianization"] = pi1(X).abelianization_str()
    run.check("matches_pi1", ab == run.outputs["pi1_abelianization"])


def cmd_em(run: Run, a):
    from ..core.homsets import find_isomorphism
    from ..groups.doldkan import dold_kan_em
    from ..groups.simplicial import const_sgroup
    from ..groups.wbar import wbar_iter
    from ..invariants.homology import homology
    G = run.load("group", a.group, "sgroup")
    H = G.group(0)
    K = dold_kan_em(H, a.degree, a.bound).underlying(a.bound)
    run.outputs["counts"] = K.counts(a.bound)
    run.outputs["homology"] = homology(K, a.bound - 1).strings()
    if a.compare:
        W = wbar_iter(const_sgroup(H), a.degree, a.bound)
        run.check("wbar_iterate_iso", find_isomorphism(K, W) is not None)
    run.written = K


def cmd_postnikov(run: Run, a):
    from ..groups.postnikov import postnikov_stage
    X = run.load("input", a.input, "sset")
    S, proj = postnikov_stage(X, a.degree)
    run.outputs["counts"] = _counts(S, a.bound)
    run.check("projection_surjective", proj.surjective(min(a.bound, S.top)))
    run.written = S


# -- actions and bundles --------------------------------------------------------------------

def _action(run: Run, a):
    if a.action is not None:
        return run.load("action", a.action, "action")
    return run.load("bundle", a.bundle, "bundle").action


def cmd_action_groupoid(run: Run, a):
    from ..bisimplicial import total
    from ..bundles.quotients import action_groupoid
    act = _action(run, a)
    B = action_groupoid(act, a.bound)
    run.outputs["bidegrees"] = [[len(B.elements(k, l)) for l in range(a.bound + 1)]
                                for k in range(a.bound + 1)]
    run.outputs["total_counts"] = total(B, a.bound).counts(a.bound)


def cmd_hquot(run: Run, a):
    from ..bundles.quotients import homotopy_quotient
    act = _action(run, a)
    T, iso = homotopy_quotient(act, a.bound)
    counts = T.counts(a.bound)
    want = []
    for n in range(a.bound + 1):
        w = act.P.size(n)
        for i in range(n):
            w *= len(act.G.group(i))
        want.append(w)
    run.outputs["counts"] = counts
    run.check("borel_iso", iso.is_iso())
    run.check("level_formula", counts == want)


def cmd_shear(run: Run, a):
    from ..bundles.quotients import shear
    from ..invariants.certify import we_certify
    b = run.load("bundle", a.bundle, "bundle")
    sh = shear(b, 1, a.bound)
    run.outputs["iso"] = sh.is_iso()
    try:
        cert = we_certify(sh, a.policy, max(a.bound - 1, 0), budget=a.budget)
    except SkanError:
        cert = None
    run.certify("shear weak equivalence", cert)
    run.check("shear_certified", cert is not None)


def _verdict(run: Run, name: str, v):
    run.outputs[name] = v.summary()
    if v.cert is not None:
        run.certify(f"{name}: shear weak equivalence", v.cert)
    run.check(name, v.at_least_weak(), kind=v.kind)


def cmd_classify(run: Run, a):
    from ..bundles.principality import classify_principality
    b = run.load("bundle", a.bundle, "bundle")
    _verdict(run, "principality", classify_principality(b, a.policy, budget=a.budget))


def cmd_pullback(run: Run, a):
    from ..bundles.principality import pullback_bundle
    b = run.load("bundle", a.bundle, "bundle")
    f = run.load("map", a.map, "map")
    pb = pullback_bundle(f, b, certify=True, policy=a.policy)
    run.outputs["counts"] = _counts(pb.P, a.bound)
    _verdict(run, "principality", pb.verdict)


def cmd_pushforward(run: Run, a):
    from ..bundles.principality import pushforward_bundle
    from ..core.kan import check_trivial_fibration
    b = run.load("bundle", a.bundle, "bundle")
    p = run.load("map", a.map, "map")
    rep = check_trivial_fibration(p, min(a.bound, p.source.top))
    run.outputs["lifting"] = rep.summary()
    run.check("acyclic_fibration", rep.ok)
    if rep.ok:
        out = pushforward_bundle(p, b, rep, certify=True, policy=a.policy)
        run.outputs["counts"] = _counts(out.P, a.bound)
        _verdict(run, "principality", out.verdict)


def cmd_twistings(run: Run, a):
    from ..bundles.twisting import enumerate_twistings, twisting_classes
    X = run.load("base", a.base, "sset")
    G = run.load("group", a.group, "sgroup")
    taus = enumerate_twistings(X, G, budget=a.budget)
    classes = twisting_classes(taus, budget=a.budget)
    run.outputs["twistings"] = len(taus)
    run.outputs["classes"] = len(classes)
    run.outputs["class_sizes"] = [len(c) for c in classes]


def cmd_cech(run: Run, a):
    from ..bundles.cech import cech_nerve
    from ..invariants.certify import we_certify
    f = run.load("cover", a.cover, "cover")
    _, proj = cech_nerve(f, a.bound)
    run.outputs["counts"] = proj.source.counts(a.bound)
    try:
        cert = we_certify(proj, a.policy, max(a.bound - 1, 0), budget=a.budget)
    except SkanError:
        cert = None
    run.certify("total Čech nerve -> space", cert)
    run.check("descent_certified", cert is not None)


def cmd_associated(run: Run, a):
    from ..bundles.actions import translation_action, trivial_action
    from ..bundles.principality import associated
    from ..core.standard import simplex
    from ..invariants.fundamental import pi0
    from ..invariants.homology import homology
    b = run.load("bundle", a.bundle, "bundle")
    if a.fibre == "group":
        V = translation_action(b.G, b.bound)
    else:
        V = trivial_action(simplex(0), b.G, b.bound)
    S, proj = associated(b, V, a.bound)
    run.outputs["counts"] = _counts(S, min(a.bound, b.bound))
    run.outputs["components"] = len(pi0(S))
    run.outputs["homology"] = homology(S, min(a.bound, S.top) - 1).strings()


def _cocycle(run: Run, a):
    from ..classification.cocycles import extr
    if a.cocycle is not None:
        spec = run.load("cocycle", a.cocycle, "cocycle")
        return extr(spec.bundle, policy=a.policy)
    return extr(run.load("bundle", a.bundle, "bundle"), policy=a.policy)


def cmd_extr(run: Run, a):
    c = _cocycle(run, a)
    run.outputs["cocycle"] = c.summary()
    run.certify("left leg acyclic fibration", c.cert)
    run.check("left_leg_lifting", c.lifting is not None and c.lifting.ok)
    if a.bundle is not None and a.out:
        run.written = CocycleSpec(parse(a.bundle, "bundle"))


def cmd_rec(run: Run, a):
    from ..bundles.principality import classify_principality
    from ..classification.cocycles import rec
    c = _cocycle(run, a)
    b = rec(c)
    run.outputs["counts"] = _counts(b.P, a.bound)
    _verdict(run, "principality", classify_principality(b, a.policy, budget=a.budget))


def cmd_strictify(run: Run, a):
    from ..classification.cocycles import strictify
    b = run.load("bundle", a.bundle, "bundle")
    s = strictify(b, policy=a.policy, budget=a.budget)
    run.outputs["counts"] = _counts(s.strict.P, a.bound)
    for name, cert in sorted(s.certs.items()):
        ok = not isinstance(cert, Exception)
        run.certify(name, cert if ok else None)
        run.check(f"{name}_certified", ok)
    # an equivariant map of strict bundles over the base is an isomorphism
    comp = s.to_bundle.after(s.to_free)
    top = comp.source.top if comp.target.bound is None else min(comp.source.top, comp.target.top)
    run.check("iso_class_preserved", comp.injective(top) and comp.surjective(top), levels=top)


# -- classification -------------------------------------------------------------------------

def cmd_h1(run: Run, a):
    from ..classification.cohomology import h1
    X = run.load("base", a.base, "sset")
    G = run.load("group", a.group, "sgroup")
    try:
        r = h1(X, G, budget=a.budget)
    except CrossCheckMismatch as e:
        run.outputs["error"] = str(e)
        run.check("routes_agree", False)
        return
    run.outputs["classes"] = r.count
    run.outputs["twistings"] = len(r.twistings)
    run.outputs["bijection"] = r.matching
    run.outputs["routes_agree"] = True
    run.check("routes_agree", True)


def cmd_hn(run: Run, a):
    from ..classification.cohomology import hn_cech
    f = run.load("cover", a.cover, "cover")
    A = run.load("group", a.group, "sgroup")
    linear = {"auto": None, "linear": True, "enumerate": False}[a.method]
    r = hn_cech(f, A, a.degree, budget=a.budget, linear=linear)
    run.outputs["classes"] = r.count
    run.outputs["method"] = r.method
    run.outputs["total_counts"] = r.total_counts


def cmd_nerve(run: Run, a):
    from ..classification.cohomology import nerve_complex
    from ..invariants.homology import homology
    f = run.load("cover", a.cover, "cover")
    N = nerve_complex(f, policy=a.policy)
    run.outputs["counts"] = N.counts(a.bound)
    run.outputs["homology"] = homology(N, a.bound - 1).strings()
    run.outputs["space_homology"] = homology(f.target, a.bound - 1).strings()
    run.check("nerve_matches_space", run.outputs["homology"] == run.outputs["space_homology"])
    run.written = N


# -- suites ---------------------------------------------------------------------------------

def _lookup(report: dict, dotted: str):
    cur = report
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        elif isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            return _MISSING
    return cur


_MISSING = object()


def _resolve(argv: list, base: Path) -> list:
    out = list(argv)
    for i, tok in enumerate(out[:-1]):
        if tok in PATH_FLAGS or (tok == "verify" and i == 0):
            p = base / out[i + 1]
            if not p.exists():
                raise SchemaError(f"missing file {str(p)!r}", field=out[i + 1])
            out[i + 1] = str(p)
    return out


def run_suite(path) -> tuple[int, dict]:
    """Run every check of a suite and compare against its expectations."""
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"missing file {str(path)!r}", field=str(path))
    suite = parse(p, "suite")
    resolved = [(c, _resolve(c["argv"], suite.base)) for c in suite.checks]
    results, timings = [], {}
    for check, argv in resolved:
        t0 = time.perf_counter()
        code, rep = run_command(argv)
        timings[check["name"]] = round(time.perf_counter() - t0, 3)
        rep.pop("timings", None)
        expect = check.get("expect", {})
        want_exit = expect.get("exit", 0)
        mismatches = []
        if code != want_exit:
            mismatches.append({"field": "exit", "expected": want_exit, "actual": code})
        for field, value in sorted(expect.get("outputs", {}).items()):
            got = _lookup(rep.get("outputs", {}), field)
            if got is _MISSING or got != value:
                mismatches.append({"field": field, "expected": value,
                                   "actual": None if got is _MISSING else got})
        results.append({"name": check["name"], "ok": not mismatches, "exit": code,
                        "mismatches": mismatches, "report": rep})
    report = {"operation": "verify", "inputs": {"suite": {"file": p.name, "sha256": digest(p)}},
              "checks": [{"name": r["name"], "ok": r["ok"]} for r in results],
              "results": results, "ok": all(r["ok"] for r in results),
              "timings": {"checks": timings}}
    return (0 if report["ok"] else 1), report


# -- driver ---------------------------------------------------------------------------------

COMMANDS = {
    "normalize": cmd_normalize, "product": cmd_product, "kan-check": cmd_kan_check,
    "homology": cmd_homology, "pi0": cmd_pi0, "pi1": cmd_pi1, "dec0": cmd_dec0,
    "total": cmd_total, "wbar": cmd_wbar, "w-bundle": cmd_w_bundle,
    "loop-group": cmd_loop_group, "em": cmd_em, "postnikov": cmd_postnikov,
    "action-groupoid": cmd_action_groupoid, "hquot": cmd_hquot, "shear": cmd_shear,
    "classify": cmd_classify, "pullback": cmd_pullback, "pushforward": cmd_pushforward,
    "twistings": cmd_twistings, "cech": cmd_cech, "associated": cmd_associated,
    "extr": cmd_extr, "rec": cmd_rec, "strictify": cmd_strictify, "h1": cmd_h1,
    "hn": cmd_hn, "nerve": cmd_nerve,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skan", description="Finite simplicial sets, groups and bundles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in list(COMMANDS) + ["verify"]:
        sp = sub.add_parser(name)
        if name == "verify":
            sp.add_argument("suite")
        sp.add_argument("--bound", type=int, default=3)
        sp.add_argument("--policy", choices=POLICIES, default="invariants")
        sp.add_argument("--budget", type=int, default=200_000)
        sp.add_argument("--out")
        sp.add_argument("--report")
        for flag in PATH_FLAGS:
            sp.add_argument(flag)
        sp.add_argument("--degree", type=int, default=None)
        sp.add_argument("--fibre", choices=("point", "group"), default="point")
        sp.add_argument("--method", choices=("auto", "linear", "enumerate"), default="auto")
        sp.add_argument("--compare", action="store_true")
    return parser


_DEGREE_DEFAULTS = {"em": 1, "postnikov": 1, "hn": 1}


def run_command(argv) -> tuple[int, dict]:
    """Execute one command; returns ``(exit code, report)`` without printing."""
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as e:
        return 2, {"operation": None, "ok": False, "error": {"type": "usage", "message": str(e)}}
    if args.command == "verify":
        try:
            code, report = run_suite(args.suite)
        except (ParseError, SchemaError) as e:
            return 2, {"operation": "verify", "ok": False,
                       "error": {"type": type(e).__name__, "message": str(e)}}
        report["timings"]["total_s"] = round(time.perf_counter() - t0, 3)
        return code, report
    if args.degree is None:
        args.degree = _DEGREE_DEFAULTS.get(args.command)
    run = Run(args.command, args)
    code = 0
    try:
        COMMANDS[args.command](run, args)
        report = run.report()
        code = 0 if report["ok"] else 1
        if args.out and run.written is not None:
            Path(args.out).write_text(serialize(run.written), encoding="utf-8")
            report["outputs"]["written"] = Path(args.out).name
    except (ParseError, SchemaError, UsageError) as e:
        report = dict(run.report(), ok=False,
                      error={"type": type(e).__name__, "message": str(e),
                             "field": getattr(e, "field", None)})
        code = 2
    except SkanError as e:
        report = dict(run.report(), ok=False, error={"type": type(e).__name__, "message": str(e)})
        code = 1
    report["timings"] = {"total_s": round(time.perf_counter() - t0, 3)}
    return code, report


def _summary_lines(report: dict):
    yield f"{report.get('operation')}: {'ok' if report.get('ok') else 'FAILED'}"
    for k, v in sorted(report.get("outputs", {}).items()):
        if isinstance(v, (int, str, bool)):
            yield f"{k}: {v}"
    for c in report.get("checks", []):
        yield f"  [{'pass' if c['ok'] else 'FAIL'}] {c['name']}"
    if "error" in report:
        yield f"error: {report['error']['message']}"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run_command(argv)
    text = dumps(report)
    dest = None
    if "--report" in argv:
        i = list(argv).index("--report")
        dest = argv[i + 1] if i + 1 < len(argv) else None
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
        for line in _summary_lines(report):
            print(line)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "run_command", "run_suite", "formats"]
