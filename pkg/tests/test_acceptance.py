"""Acceptance battery: one test per criterion, exact equality, with runtime limits.

A PASS/FAIL line per criterion is printed at the end of the session by
``conftest.py``.
"""
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from skan.bisimplicial import const_iso, dec0, diagonal, total
from skan.bundles.actions import translation_action, trivial_action
from skan.bundles.cech import cech_nerve, cover
from skan.bundles.principality import strict_quotient_map
from skan.bundles.quotients import action_groupoid, homotopy_quotient, shear
from skan.bundles.twisting import enumerate_twistings, twisted_product, twisting_classes
from skan.classification.cocycles import bundle_roundtrip, strictify
from skan.classification.cohomology import h1, hn_cech
from skan.cli.main import run_command
from skan.core.constructions import coproduct, fiber, truncate
from skan.core.homsets import find_isomorphism
from skan.core.kan import check_kan
from skan.core.maps import identity
from skan.core.standard import boundary, circle_min, simplex
from skan.groups.doldkan import dold_kan_em
from skan.groups.finite import cyclic, symmetric, trivial_group
from skan.groups.loop import kan_loop_group
from skan.groups.simplicial import const_sgroup
from skan.groups.wbar import w_bundle, wbar, wbar_iter, wbar_routes, wg_explicit
from skan.invariants.certify import _retract_ok, we_certify
from skan.invariants.fundamental import pi0, pi1
from skan.invariants.homology import homology

DATA = Path(__file__).resolve().parents[1] / "src" / "skan" / "cli" / "data"

Z2 = const_sgroup(cyclic(2))
Z3 = const_sgroup(cyclic(3))
S3 = const_sgroup(symmetric(3))
TRIV = const_sgroup(trivial_group())


@contextmanager
def within(seconds):
    t0 = time.perf_counter()
    yield
    took = time.perf_counter() - t0
    assert took < seconds, f"took {took:.1f}s, limit {seconds}s"


@pytest.mark.parametrize("G", [TRIV, Z2, Z3, S3], ids=lambda G: G.label)
def test_criterion_01_wbar_cross_construction(G):
    with within(5):
        W, T, iso = wbar_routes(G, 4)
        assert iso.is_iso()
        assert W.counts(4) == T.counts(4)
        assert W.counts(4) == [len(G.group(0)) ** n for n in range(5)]


def test_criterion_02_kan_instances():
    with within(30):
        for G in (Z2, Z3, S3):
            assert check_kan(wbar(G, 4), 4).ok
            _, fib, _ = w_bundle(G, 4)
            assert check_kan(fib, 4).ok
        rep = check_kan(simplex(1), 2)
        assert not rep.ok
        cx = rep.counterexample
        assert cx is not None and cx["dimension"] == 2 and len(cx["faces"]) == 2


def test_criterion_03_universal_bundle():
    with within(30):
        for G in (Z2, S3):
            WG, fib, b = w_bundle(G, 3)
            assert shear(b, 1, 3).is_iso()
            assert strict_quotient_map(b).is_iso()
            F, _ = fiber(fib, 0)
            assert find_isomorphism(F, truncate(G.underlying(3), F.top)) is not None
        WG, _, _ = w_bundle(Z2, 3)
        assert homology(WG, 2).strings() == ["Z", "0", "0"]
        assert len(pi0(WG)) == 1


def test_criterion_04_decalage():
    with within(5):
        D, _, _ = dec0(simplex(1))
        U, _ = coproduct([simplex(0), simplex(1)])
        assert find_isomorphism(D, U) is not None
        for X in (simplex(2), wbar(Z2, 3)):
            _, _, ret = dec0(X)
            assert ret.retraction.after(ret.section) == identity(ret.section.source)
            assert _retract_ok(ret.section, ret.retraction, ret.homotopy, "id_to_fr") or \
                _retract_ok(ret.section, ret.retraction, ret.homotopy, "fr_to_id")
        for G in (Z2, S3):
            DW, _, _ = dec0(wbar(G, 4), 3)
            assert find_isomorphism(DW, wg_explicit(G, 3)) is not None


def test_criterion_05_total_vs_diagonal():
    with within(60):
        for X in (simplex(2), circle_min(), boundary(2)):
            assert const_iso(X).is_iso()
        B = action_groupoid(trivial_action(simplex(0), Z2, 4), 4)
        want = ["Z", "Z/2", "0", "Z/2"]
        assert homology(diagonal(B, 4), 3).strings() == want
        assert homology(total(B, 4), 3).strings() == want


def _sample_actions():
    dbl = twisted_product(circle_min(), Z2, enumerate_twistings(circle_min(), Z2)[1])
    return [trivial_action(circle_min(), Z2, 3), trivial_action(simplex(0), S3, 3),
            translation_action(Z2, 3), translation_action(Z3, 3), dbl.action]


def test_criterion_06_borel_vs_homotopy_quotient():
    with within(30):
        for a in _sample_actions():
            T, iso = homotopy_quotient(a, 3)
            assert iso.is_iso()
            for n in range(4):
                want = a.P.size(n)
                for i in range(n):
                    want *= len(a.G.group(i))
                assert T.size(n) == want


def test_criterion_07_h1_on_circle():
    with within(300):
        for G, want in ((Z2, 2), (Z3, 3), (S3, 3)):
            r = h1(circle_min(), G)
            assert r.count == want
            assert sorted(r.matching) == list(range(want))
            assert r.homotopy.count == want


def test_criterion_08_round_trips():
    with within(120):
        X = circle_min()
        taus = enumerate_twistings(X, Z2)
        for tau in taus:
            b = twisted_product(X, Z2, tau)
            rt = bundle_roundtrip(b)
            assert rt.cert is not None and rt.cert.level in ("ISO", "RETRACT", "INVARIANTS")
            s = strictify(b)
            comp = s.to_bundle.after(s.to_free)
            top = s.strict.P.top
            assert comp.injective(top) and comp.surjective(top)
        assert len(twisting_classes(taus)) == 2


def test_criterion_09_cech_descent():
    with within(300):
        X = boundary(2)
        f = cover(X, [[n] for n in X.names[1]])
        _, proj = cech_nerve(f)
        cert = we_certify(proj, "invariants", 2)
        assert cert.level == "INVARIANTS"
        assert homology(proj.source, 1).strings() == ["Z", "Z"]
        assert hn_cech(f, Z2, 1).count == 2
        Y = boundary(3)
        g = cover(Y, [[n] for n in Y.names[2]])
        assert hn_cech(g, Z2, 2).count == 2


def test_criterion_10_eilenberg_maclane():
    with within(60):
        K = dold_kan_em(cyclic(2), 1, 3).underlying(3)
        assert find_isomorphism(K, wbar(Z2, 3)) is not None
        W2 = wbar_iter(Z2, 2, 3)
        h = homology(W2, 2).strings()
        assert h[1] == "0" and h[2] == "Z/2"


def test_criterion_11_loop_group():
    with within(5):
        GX = kan_loop_group(circle_min(), 2)
        assert GX.pi0().abelianization_str() == "Z"
        assert pi1(circle_min()).abelianization_str() == "Z"


def test_criterion_12_suite_determinism():
    suite = str(DATA / "acceptance.suite")
    c1, r1 = run_command(["verify", suite])
    c2, r2 = run_command(["verify", suite])
    r1.pop("timings")
    r2.pop("timings")
    assert c1 == 0 and c2 == 0
    assert r1 == r2
