"""Acceptance criteria 1-14, one logged line per criterion.

Several criteria share one corpus of analyzed instances (built once and
cached): canonical families, degree sets with and without poles, monomial
spaces, random subspaces of L(D) over QQ and GF(101), and spaces that
contain a polynomial block followed by elements with poles.
"""

import random
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import pytest

from ratspace import GF, QQ, IntSet, RatFunc, analyze, monomial_space, span
from ratspace.analysis import good_reduction, max_divisor_gate
from ratspace.cli import main
from ratspace.errors import DegreeRealizationFailed, NonSplitPlace
from ratspace.filtration import (
    T_gate, check_T_inclusions, column_products, filtered_basis, genus_monotone, natural_filtration,
    needed_count, needed_count_bruteforce,
)
from ratspace.freiman import ap_hull, sumset
from ratspace.generators import canonical_gamma0, canonical_gamma1, degree_family, random_in_RR
from ratspace.parser import parse_ratfunc
from ratspace.places import Place, min_valuation, minimal_divisor, parse_divisor, valuation
from ratspace.subspace import poly_space, product
from ratspace.tower import pole_count

GOLDEN = Path(__file__).parent / "golden"


def _random_divisor(rng, n, field, extra_max=2, poles_max=2):
    finite = {a: rng.randint(1, 2) for a in rng.sample(range(-4, 5), rng.randint(0, poles_max))}
    deg = n - 1 + rng.randint(0, extra_max)
    inf = max(deg - sum(finite.values()), 0)
    text = "+".join([f"{inf}*inf"] + [f"{m}*{a}" for a, m in sorted(finite.items())])
    return parse_divisor(text, field)


def _spaces():
    """(label, space) pairs for the shared corpus."""
    for n in range(3, 11):
        yield f"gamma0 n={n}", canonical_gamma0(n)
    for shape in (1, 2):
        for n in range(4, 11):
            for a in (0, 1, 2, -1):
                yield f"gamma1 shape={shape} n={n} a={a}", canonical_gamma1(n, shape, QQ(a))
    rng = random.Random(20240101)
    for k in range(2, 6):
        for rest in combinations(range(1, 9), k):
            degs = [0, *rest]
            yield f"degset {degs}", degree_family(degs)
            plan = [(rng.randint(2, len(degs)), QQ(rng.randint(-3, 3)), rng.randint(1, 2))]
            try:
                yield f"degset {degs} poles {plan}", degree_family(degs, plan)
            except DegreeRealizationFailed:
                pass
    for s in range(150):
        A = rng.sample(range(21), rng.randint(3, 7))
        yield f"monomial {sorted(A)}", monomial_space(IntSet(A))
    for field, count in ((QQ, 700), (GF(101), 200)):
        for s in range(count):
            n = rng.randint(3, 8)
            D = _random_divisor(rng, n, field)
            if max(D.degree + 1, 0) < n:
                continue
            yield f"random-rr {field.spec()} D={D.to_str()} n={n} seed={s}", random_in_RR(D, n, s)
    # a polynomial block followed by elements with poles
    for s in range(150):
        k = rng.randint(1, 4)
        m = rng.randint(1, 3)
        alpha = rng.randint(-3, 3)
        D = parse_divisor(f"{k + m - 1}*inf+1*{alpha}", QQ)
        yield f"block k={k} m={m} a={alpha} seed={s}", random_in_RR(D, k + 1 + m, s, base=poly_space(k, QQ))


def _try_analyze(S, **kw):
    """None when normalizing by the lowest element creates a non-split place."""
    try:
        return analyze(S, **kw)
    except NonSplitPlace:
        return None


@lru_cache(maxsize=None)
def corpus():
    rows = [(label, _try_analyze(S, seed=i)) for i, (label, S) in enumerate(_spaces())]
    return [(label, r) for label, r in rows if r is not None]


# -- 1, 2: canonical families ------------------------------------------------


def test_c01_gamma0_family(accept):
    bad = []
    for n in range(3, 11):
        r = analyze(canonical_gamma0(n))
        if not (r.gamma == 0 and r.divisor.to_str() == f"{n - 1}*inf" and r.dim_LD == n + r.gamma):
            bad.append(n)
    accept("1", not bad, f"dims 3-10, gamma=0, D=(n-1)inf, equality; bad dims {bad}")


def test_c02_gamma1_families(accept):
    bad, count = [], 0
    for shape in (1, 2):
        for n in range(4, 11):
            for a in (0, 1, 2, -1):
                r = analyze(canonical_gamma1(n, shape, QQ(a)))
                count += 1
                if not (r.gamma == 1 and r.dim_LD <= n + 1):
                    bad.append((shape, n, a))
    accept("2", not bad, f"{count} instances, gamma=1 and dim L(D) <= n+1; bad {bad}")


# -- 3: gamma = 2 corollary ----------------------------------------------------


def test_c03_gamma2_degree_bound(accept):
    checked, bad = 0, []
    for label, r in corpus():
        if label.startswith("degset") and r.n >= 5 and r.gamma == 2:
            checked += 1
            if r.divisor.degree > r.n + 1:
                bad.append(label)
    families = checked
    rng = random.Random(7)
    random_hits = attempts = 0
    while random_hits < 500 and attempts < 3000:
        attempts += 1
        n = rng.randint(5, 8)
        D = _random_divisor(rng, n, QQ, extra_max=1)
        r = _try_analyze(random_in_RR(D, n, attempts), gap_trials=1)
        if r is None or r.gamma != 2:
            continue
        random_hits += 1
        if r.divisor.degree > n + 1:
            bad.append(f"random-rr D={D.to_str()} n={n} seed={attempts}")
    ok = not bad and random_hits >= 500 and families > 0
    accept("3", ok, f"{families} degree-family and {random_hits} random-rr instances with "
                    f"n>=5, gamma=2: deg D <= n+1; violations {bad[:3]}")


# -- 4: monomial bridge --------------------------------------------------------


def test_c04_monomial_bridge(accept):
    bad = []
    for seed in range(200):
        rng = random.Random(seed)
        A = IntSet(rng.sample(range(31), rng.randint(1, 8)))
        S = monomial_space(A)
        if product(S, S).dim != len(sumset(A)):
            bad.append(str(A))
    accept("4", not bad, f"200 seeded A in [0,30], |A| <= 8: dim S^2 = |A+A|; bad {bad}")


# -- 5, 6: genus monotonicity and divisor growth ------------------------------


def test_c05_genus_monotone(accept):
    rows = corpus()
    bad = [label for label, r in rows if not genus_monotone(r.profile.gamma_seq)]
    accept("5", len(rows) >= 1500 and not bad,
           f"{len(rows)} instances, gamma_1 = 0 and non-decreasing; bad {bad[:3]}")


def _divisor_growth_violations(r):
    """Both parts of the divisor-growth lemma, under its hypothesis gamma_{i+1} = gamma_i."""
    gam, D = r.profile.gamma_seq, r.growth.divisors
    part1 = part2 = checked = 0
    for i in range(2, r.n):  # 1-based i, needs D_{i+1}
        if gam[i] != gam[i - 1]:
            continue
        checked += 1
        if D[i] - D[i - 1] != D[i - 1] - D[i - 2]:
            part1 += 1
        if i >= 3:
            for P in D[i - 1].support():
                if D[i - 2][P] == 0 and D[i - 1][P] != 0:
                    part2 += 1
    return checked, part1, part2


def test_c06_divisor_growth(accept):
    total = bad1 = bad2 = 0
    witnesses = []
    for label, r in corpus():
        c, b1, b2 = _divisor_growth_violations(r)
        total += c
        bad1 += b1
        bad2 += b2
        if b1 or b2:
            witnesses.append(label)
    accept("6", total > 0 and not bad1 and not bad2,
           f"{total} indices with gamma_(i+1) = gamma_i: (i) {bad1} and (ii) {bad2} violations {witnesses[:3]}")


@pytest.mark.xfail(strict=True, reason="without gamma_(i+1) = gamma_i the support claim is false; see ledger")
def test_c06_literal_support_claim_without_hypothesis(accept, R):
    S = span([R("1"), R("x"), R("x^2"), R("x^3 + 1/(x-1)")], QQ)
    B = filtered_basis(S)
    D = [minimal_divisor(span(B.elements[:i], QQ)) for i in range(1, 5)]
    P1 = Place(QQ(1))
    accept("6-lit", D[2][P1] != 0 or D[3][P1] == 0,
           "literal reading: P_1 absent from D_3 = 2*inf yet D_4 = 3*inf + 1*1")


# -- 7: super-filtered basis ---------------------------------------------------


def test_c07_super_filter(accept):
    checked, bad = 0, []
    for label, r in corpus():
        sf = r.growth.basis
        if not sf.pole_floor:
            continue
        checked += 1
        S = span(sf.elements, r.field)
        if S != r.basis.space():
            bad.append(label)
            continue
        for a, m in sf.pole_floor.items():
            P = Place(a)
            vals = [valuation(e, P) for e in sf.elements]
            if m != min_valuation(S, P) or vals[-1] != m or any(b > c for c, b in zip(vals, vals[1:])):
                bad.append(label)
    accept("7", checked >= 100 and not bad,
           f"{checked} instances with finite poles: v_alpha non-increasing and ends at m_alpha; bad {bad[:3]}")


# -- 8: pole-growth lemma and the maximal-divisor theorem ---------------------


def test_c08a_max_divisor_theorem(accept):
    checked, bad = 0, []
    for label, r in corpus():
        if max_divisor_gate(r.profile, r.growth):
            checked += 1
            if r.dim_LD > r.n + r.gamma:
                bad.append(label)
    accept("8a", checked >= 50 and not bad,
           f"{checked} instances with gamma_3 = 0 and gamma_DeltaMax = 0: dim L(D) <= n + gamma; bad {bad[:3]}")


def test_c08b_T_inclusions_with_coordinate_premise(accept):
    checked, bad = 0, []
    for label, r in corpus():
        t = r.profile.first_jump
        if t is None or t < 2 or T_gate(r.growth, t):
            continue
        checked += 1
        if not all(check_T_inclusions(r.growth, t)):
            bad.append(label)
    accept("8b", checked >= 30 and not bad,
           f"{checked} gated instances (premise S_(t-1) = p_(t-2) included): every T_i in S_i^2; bad {bad[:3]}")


def _literal_gate(gp, t):
    return [x for x in T_gate(gp, t) if "polynomial space" not in x]


@pytest.mark.xfail(strict=True, reason="the literal gate admits {0,2,4,5,6}, where T_3 is not in S_3^2; see ledger")
def test_c08c_T_inclusions_literal_gate(accept):
    rows = list(corpus()) + [("degset [0,2,4,5,6]", analyze(degree_family([0, 2, 4, 5, 6])))]
    checked, bad = 0, []
    for label, r in rows:
        t = r.profile.first_jump
        if t is None or t < 2 or _literal_gate(r.growth, t):
            continue
        checked += 1
        if not all(check_T_inclusions(r.growth, t, probe=True)):
            bad.append(label)
    accept("8c", not bad, f"{checked} instances under the literal gate; {len(bad)} violate, e.g. {bad[:2]}")


# -- 9: pole count ---------------------------------------------------------------


def test_c09_pole_count(accept):
    x = RatFunc.x()
    one = RatFunc.constant(1)
    checked, bad = 0, []
    for seed in range(200):
        rng = random.Random(seed)
        num = RatFunc.constant(0)
        for k in range(rng.randint(1, 9)):
            num = num + RatFunc.constant(rng.randint(-10, 10)) * x ** k
        den = one
        budget = rng.randint(0, 8)
        while budget:
            m = rng.randint(1, budget)
            den = den * (x - RatFunc.constant(rng.randint(-10, 10))) ** m
            budget -= m
        f = num / den
        if f.is_constant():
            f = f + x
        checked += 1
        if pole_count(f) != minimal_divisor(span([one, f], QQ)).degree:
            bad.append(f.to_str())
    accept("9", checked == 200 and not bad, f"{checked} random f: pole count = deg D(span{{1,f}}); bad {bad[:2]}")


# -- 10: index one at delta + 2 ------------------------------------------------


def test_c10_index_at_delta_plus_two(accept):
    checked, bad = 0, []
    for label, r in corpus():
        i = r.profile.delta + 2
        if i > r.n:
            continue
        checked += 1
        if r.reduced_indices[i - 1] != 1:
            bad.append(label)
    accept("10", checked > 0 and not bad, f"{checked} instances: index 1 at i = delta + 2; bad {bad[:3]}")


# -- 11: needed counts --------------------------------------------------------


def test_c11_needed_count_vs_bruteforce(accept):
    B = filtered_basis(monomial_space(IntSet([0, 1, 2, 4, 5])))
    S = natural_filtration(B)
    base, target = product(S[3], S[3]), product(S[4], S[4])
    E = column_products(B, 5)
    table1 = ([needed_count(target, base, E, [i]) for i in range(5)]
              == [(0, 0), (0, 0), (1, 1), (1, 1), (1, 1)])
    rng = random.Random(11)
    checked, bad = 0, []
    for label, r in corpus():
        if checked >= 60 or r.n > 8 or r.n < 3:
            continue
        if rng.random() > 0.2:
            continue
        B, S = r.basis, natural_filtration(r.basis)
        c = rng.randint(2, r.n)
        base, target = product(S[c - 2], S[c - 2]), product(S[c - 1], S[c - 1])
        E = column_products(B, c)
        subsets = [[i] for i in range(c)] + [list(range(c)), rng.sample(range(c), rng.randint(1, c))]
        checked += 1
        for T in subsets:
            if needed_count(target, base, E, T) != needed_count_bruteforce(target, base, E, T):
                bad.append((label, c, T))
    accept("11", table1 and checked >= 50 and not bad,
           f"table-1 example {'reproduced' if table1 else 'WRONG'}; {checked} instances with |E| <= 8 "
           f"agree with subset search; bad {bad[:2]}")


# -- 12: 3k - 4 theorem -------------------------------------------------------


def test_c12_freiman_exhaustive(accept):
    checked, bad = 0, []
    U = range(13)
    for mask in range(1 << 13):
        A = [a for a in U if mask >> a & 1]
        if len(A) < 2:
            continue
        S = IntSet(A)
        AA = sumset(S)
        if len(AA) > 3 * len(S) - 4:
            continue
        checked += 1
        if ap_hull(S).length > len(AA) - len(S) + 1:
            bad.append(A)
    accept("12", checked > 0 and not bad, f"{checked} sets A in [0,12] meeting the hypothesis; bad {bad[:3]}")


# -- 13: cross-field oracle -------------------------------------------------------


PRIMES = (1009, 1013, 1019)


def _integer_instance(rng):
    """1 plus elements of distinct positive degrees, so the filtered basis keeps 1 as e_1."""
    x = RatFunc.x()
    n = rng.randint(3, 5)
    gens = [RatFunc.constant(1)]
    for d in rng.sample(range(1, 6), n - 1):
        den = RatFunc.constant(1)
        for a in rng.sample(range(-3, 4), rng.randint(0, 2)):
            den = den * (x - RatFunc.constant(a))
        top = d + den.degree
        num = RatFunc.constant(rng.choice([-3, -2, -1, 1, 2, 3])) * x ** top
        for k in range(top):
            num = num + RatFunc.constant(rng.randint(-5, 5)) * x ** k
        gens.append(num / den)
    return [g.to_str() for g in gens]


def _coefficient_bound(texts):
    bound = 0
    for t in texts:
        f = parse_ratfunc(t)
        for p in (f.num, f.den):
            bound = max([bound, p.degree] + [abs(int(c.numerator)) for c in p.coeffs])
    return bound


def test_c13_cross_field(accept):
    rng = random.Random(13)
    compared = skipped = 0
    bad = []
    for k in range(100):
        texts = _integer_instance(rng)
        assert _coefficient_bound(texts) < min(PRIMES)
        rq = _try_analyze(span([parse_ratfunc(t, QQ) for t in texts], QQ))
        if rq is None:
            skipped += len(PRIMES)
            continue
        sig_q = (rq.n, rq.profile.gamma_seq, rq.profile.degrees, rq.growth.divisor_degrees())
        for p in PRIMES:
            F = GF(p)
            gens = [parse_ratfunc(t, F) for t in texts]
            if span(gens, F).dim != rq.original.dim or not good_reduction(rq, p):
                skipped += 1
                continue
            rp = _try_analyze(span(gens, F))
            if rp is None:
                skipped += 1
                continue
            compared += 1
            if (rp.n, rp.profile.gamma_seq, rp.profile.degrees, rp.growth.divisor_degrees()) != sig_q:
                bad.append((k, p, texts))
    accept("13", compared >= 250 and not bad,
           f"100 integer instances x {len(PRIMES)} primes: {compared} compared, {skipped} skipped; "
           f"mismatches {bad[:1]}")


# -- 14: determinism ------------------------------------------------------------


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_c14_determinism(accept, capsys, tmp_path):
    path = str(GOLDEN / "table1.txt")
    a = _run(capsys, "analyze", path, "--json")
    b = _run(capsys, "analyze", path, "--json")
    text_a = _run(capsys, "analyze", path, "--table")
    text_b = _run(capsys, "analyze", path, "--table")
    golden = a[1] == (GOLDEN / "table1.json").read_text()
    fuzz = ["fuzz", "--count", "40", "--seed", "14", "--family", "mixed", "--witness-dir", str(tmp_path)]
    f1 = _run(capsys, *fuzz)
    f2 = _run(capsys, *fuzz)
    ok = a == b and text_a == text_b and f1 == f2 and golden
    accept("14", ok, f"analyze JSON/text and fuzz summary byte-identical; golden JSON {'stable' if golden else 'CHANGED'}")
