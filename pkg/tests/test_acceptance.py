"""End-to-end acceptance checks.

Each test prints a single PASS line with its instance count and wall time.
The checks cover: the worked extension fixture, the two Condition (K)
deciders, Cuntz-Krieger family verification, descent of Condition (L) to
approximation graphs, the primitive-ideal classification, pure infiniteness
with exhaustive brute force, loop-isolating ideals, and the symbolic engine
against a matrix representation.
"""

import time

from conftest import (brute_downward_directed, brute_ge_universal,
                      brute_loop_connection, build_fix_line, build_fix_loop1,
                      build_fix_o2, build_fix_p, loop_violates_L,
                      random_acyclic_presentation, random_element,
                      random_pair, random_presentation, seeded)
from ultragraphs import (base_context, breaking_vertices, build_GF,
                         build_quotient, check_condition_K,
                         check_condition_K_via_quotients, check_condition_L,
                         ck_equal, classify_primitive_ideals, edge_gen,
                         enumerate_saturated_hereditary, extend, ge,
                         graph_condition_L, is_downward_directed,
                         is_purely_infinite, is_saturated_hereditary,
                         kill_loop_ideal, make_pair,
                         path_space_representation, projection,
                         singular_vertices, verify_ck_family)
from ultragraphs.analysis import _loop_bases_outside


def report(name, detail, t0):
    print(f"ACCEPTANCE {name}: PASS ({detail}, {time.perf_counter() - t0:.2f}s)")


def test_acceptance_1_extension_fixture():
    t0 = time.perf_counter()
    P = build_fix_p()
    W = frozenset({"v", "a"})
    assert breaking_vertices(P, W) == {"w"}
    ext = extend(P, make_pair(P, W, ()))
    assert ext.primes == frozenset({"w'"})
    assert {e for e, flag in ext.resourced.items() if flag} == {"f", "h"}
    assert ext.extended_ranges["e"] == frozenset({"v", "w", "w'"})
    assert time.perf_counter() - t0 < 1.0
    report(1, "extension fixture exact", t0)


def test_acceptance_2_condition_K_oracle():
    t0 = time.perf_counter()
    rng = seeded(2025)
    for _ in range(500):
        P = random_presentation(rng, max_v=6, max_e=8, max_omega=2)
        direct = check_condition_K(P) is None
        assert direct == check_condition_K_via_quotients(P)
    assert time.perf_counter() - t0 < 60.0
    report(2, "500 instances, two deciders agree", t0)


def test_acceptance_3_ck_family_verification():
    t0 = time.perf_counter()
    P = build_fix_p()
    Q = build_quotient(P, make_pair(P, {"v", "a"}, ()))
    r = verify_ck_family(Q, ["w'", "e", "g"])
    assert r.passed, r.failures()
    rng = seeded(303)
    done = 0
    while done < 100:
        P = random_presentation(rng, max_v=5, max_e=6)
        Q = build_quotient(P, random_pair(rng, P))
        pool = sorted(singular_vertices(Q)) + list(Q.edges)
        F = rng.sample(pool, min(len(pool), rng.randint(0, 4)))
        r = verify_ck_family(Q, F)
        assert r.passed, (P.to_dict(), F, r.failures())
        done += 1
    assert time.perf_counter() - t0 < 120.0
    report(3, "fixture + 100 random families, all identities hold", t0)


def test_acceptance_4_condition_L_descends():
    t0 = time.perf_counter()
    rng = seeded(404)
    done = 0
    while done < 200:
        P = random_presentation(rng, max_v=5, max_e=6)
        Q = build_quotient(P, random_pair(rng, P))
        if check_condition_L(Q) is not None:
            continue
        pool = sorted(singular_vertices(Q)) + list(Q.edges)
        F = rng.sample(pool, min(len(pool), rng.randint(0, 4)))
        assert graph_condition_L(build_GF(Q, F))
        done += 1
    report(4, "200 quotients, approximation graphs inherit the condition", t0)


def test_acceptance_5_primitive_classification():
    t0 = time.perf_counter()
    P = build_fix_p()
    got = {(tuple(sorted(r.pair.W)), tuple(sorted(r.pair.B))): r.primitive
           for r in classify_primitive_ideals(P)}
    assert got == {
        ((), ()): False,
        (("v",), ()): False,
        (("v",), ("w",)): True,
        (("a",), ()): True,
        (("a", "v"), ()): True,
        (("a", "v"), ("w",)): False,
    }
    # cross-check the full-B case against the alternative formulation:
    # downward directed plus Condition (L) on the quotient
    rng = seeded(505)
    checked = 0
    for _ in range(80):
        P = random_presentation(rng, max_v=5, max_e=6)
        for r in classify_primitive_ideals(P):
            if r.case != "FullB":
                continue
            alt = (is_downward_directed(P, r.pair.W).holds
                   and check_condition_L(build_quotient(P, r.pair)) is None)
            assert r.primitive == alt
            checked += 1
    assert checked >= 100
    report(5, f"fixture table exact, {checked} cross-checked verdicts", t0)


def test_acceptance_6_pure_infiniteness():
    t0 = time.perf_counter()
    assert is_purely_infinite(build_fix_o2()).purely_infinite
    assert is_purely_infinite(build_fix_loop1()).failing_clause == "ConditionK"
    r = is_purely_infinite(build_fix_line())
    assert r.failing_clause == "NoLoopConnection"
    assert is_purely_infinite(build_fix_p()).failing_clause == "ConditionK"
    # exhaustive full-powerset brute force on a corpus of <= 5 vertex
    # presentations: the singleton reductions for directedness, universal
    # lower bounds, and loop connection never disagree
    rng = seeded(606)
    corpus = [random_presentation(rng, max_v=5, max_e=6) for _ in range(40)]
    corpus += [build_fix_p(), build_fix_o2(), build_fix_loop1(),
               build_fix_line()]
    pairs = 0
    for P in corpus:
        for W in enumerate_saturated_hereditary(P):
            outside = sorted(P.vertices - W)
            for w in outside:
                fast = all(ge(P, {u}, {w}) for u in outside)
                assert fast == brute_ge_universal(P, W, w)
            if W == P.vertices:
                continue
            assert (is_downward_directed(P, W).holds
                    == brute_downward_directed(P, W))
            bases = _loop_bases_outside(P, W)
            fast = all(any(ge(P, {v}, {b}) for b in sorted(bases))
                       for v in outside)
            assert fast == brute_loop_connection(P, W)
            pairs += 1
    report(6, f"fixture verdicts + {pairs} exhaustive subset checks", t0)


def test_acceptance_7_loop_isolating_ideal():
    t0 = time.perf_counter()
    rng = seeded(707)
    done = 0
    while done < 200:
        P = random_presentation(rng, max_v=6, max_e=8)
        witness = check_condition_K(P)
        if witness is None:
            continue
        loop = witness.loop
        sources = {P.edge(e).source for e, _ in loop.edges}
        W = kill_loop_ideal(P, loop)
        ok, _ = is_saturated_hereditary(P, W)
        assert ok
        assert not (W & sources)
        Q = build_quotient(P, make_pair(P, W, breaking_vertices(P, W)))
        assert check_condition_L(Q) is not None
        assert loop_violates_L(Q, loop.edges)
        done += 1
    report(7, "200 loop-killing ideals, all postconditions hold", t0)


def test_acceptance_8_symbolic_vs_matrix():
    t0 = time.perf_counter()
    rng = seeded(808)
    pairs = 0
    while pairs < 1000:
        P = random_acyclic_presentation(rng)
        rep = path_space_representation(P)
        ctx = base_context(P)
        for _ in range(10):
            x = random_element(rng, ctx)
            y = random_element(rng, ctx)
            assert ck_equal(x, y) == (rep.evaluate(x) == rep.evaluate(y))
            pairs += 1
    # the defining relation at regular vertices, on a mixed corpus
    corpus = [build_fix_p(), build_fix_o2(), build_fix_loop1(),
              build_fix_line()]
    rng2 = seeded(809)
    corpus += [random_presentation(rng2, max_v=4, max_e=5)
               for _ in range(10)]
    relations = 0
    for P in corpus:
        ctx = base_context(P)
        for v in P.sorted_vertices:
            if not P.is_regular(v):
                continue
            total = None
            for c in P.out_classes(v):
                t = edge_gen(ctx, (c.id, 0))
                piece = t * t.adjoint()
                total = piece if total is None else total + piece
            assert ck_equal(projection(ctx, [v]), total)
            relations += 1
    report(8, f"{pairs} oracle pairs + {relations} vertex relations", t0)
