//! Acceptance gate: every criterion at its stated range and time limit.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use ellipta::elliptic::{
    bi_gamma_closure, check_gamma_t, compare_routes, gamma_from_p, gamma_triangle_recurrence,
    j_even_decomposition, j_sequence, p_poly, random_closure_instance, s_triangle_operator,
    s_triangle_recurrence, t_polys, t_row_poly,
    t_triangle_recurrence, EllipticSeries, JSequence, Route,
};
use ellipta::exactpoly::{FormalSeries, MultiPoly, UniPoly};
use ellipta::gammakit::{is_bi_gamma_positive, sym_decompose};
use ellipta::grammar::{parse_polynomial, Grammar};
use ellipta::treeoracle::{default_jobs, p_bruteforce, tree_census, DEFAULT_CAP};
use ellipta::verify::{run_suite, series_identities, Suite, VerifyOptions};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(limit: Duration, started: Instant, what: &str) -> Outcome {
    let took = started.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn poly_in(letters: &[&str], text: &str) -> MultiPoly {
    parse_polynomial(text, letters.iter().map(|s| s.to_string()).collect()).expect("literal")
}

const J_LIST: [&str; 8] = [
    "1",
    "1",
    "1 + x",
    "1 + 4x",
    "1 + 14x + x^2",
    "1 + 44x + 16x^2",
    "1 + 135x + 135x^2 + x^3",
    "1 + 408x + 912x^2 + 64x^3",
];

const FOUR_ROUTES: [Route; 4] = [Route::Operator, Route::Recurrence, Route::Viennot, Route::Series];

fn criterion_1() -> Outcome {
    for route in FOUR_ROUTES {
        let started = Instant::now();
        let seq = ok(j_sequence(route, 8))?;
        for (k, want) in J_LIST.iter().enumerate() {
            let got = seq.get(k + 1).map(|p| p.to_text("x")).unwrap_or_default();
            ensure(got == *want, || format!("{route}: J_{} = {got}, expected {want}", k + 1))?;
        }
        within(Duration::from_secs(1), started, &format!("route {route}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let started = Instant::now();
    let p_list = [
        "1",
        "1+q",
        "1+q+4p",
        "1+14q+q^2+4p(1+q)",
        "1+14q+q^2+44p(1+q)+16p^2",
        "1+135q+135q^2+q^3+p(44+328q+44q^2)+16p^2(1+q)",
    ];
    let op = ok(s_triangle_operator(6))?;
    let rec = ok(s_triangle_recurrence(6))?;
    for (k, text) in p_list.iter().enumerate() {
        let want = poly_in(&["p", "q"], text);
        for (name, tri) in [("operator", &op), ("recurrence", &rec)] {
            let got = ok(p_poly(tri, k + 1))?;
            ensure(got == want, || format!("{name}: P_{} = {}", k + 1, got.to_text()))?;
        }
    }
    let t_list = [
        "1",
        "1",
        "1+x",
        "1+x+3y",
        "1+11x+x^2+3y",
        "1+11x+x^2+33y+15xy",
        "1+102x+57x^2+x^3+33y+78xy",
    ];
    let polys = ok(t_polys(7))?;
    let tri = ok(t_triangle_recurrence(7))?;
    for (k, text) in t_list.iter().enumerate() {
        let want = poly_in(&["x", "y"], text);
        let n = k + 1;
        ensure(polys[n] == want, || format!("polynomial recurrence: t_{n} = {}", polys[n].to_text()))?;
        let row = t_row_poly(&tri, n);
        ensure(row == want, || format!("triangle recurrence: t_{n} = {}", row.to_text()))?;
    }
    within(Duration::from_secs(1), started, "P and t lists")
}

fn criterion_3() -> Outcome {
    let started = Instant::now();
    let gamma = ok(gamma_triangle_recurrence(7))?;
    let d = ok(j_even_decomposition(&gamma, 3))?;
    let one_x = UniPoly::from_i64s(&[1, 1]);
    let x = UniPoly::from_i64s(&[0, 1]);
    let c = UniPoly::constant;
    let cube = &(&one_x * &one_x) * &one_x;
    let want_a = &cube + &(&c(342) * &(&x * &one_x));
    let want_b = &(&c(63) * &(&one_x * &one_x)) + &(&c(441) * &x);
    let (a, b) = (d.a.reconstruct(), d.b.reconstruct());
    ensure(a == want_a, || format!("A = {a}"))?;
    ensure(b == want_b, || format!("B = {b}"))?;
    let j8 = ok(j_sequence(Route::Operator, 8))?.get(8).cloned().unwrap_or_default();
    let sd = ok(sym_decompose(&j8, 3))?;
    ensure(sd == d.to_sym_decomp(), || "certificate differs from sym_decompose(J_8, 3)".into())?;
    within(Duration::from_secs(1), started, "J_8 decomposition")
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    let seqs: Vec<JSequence> = std::thread::scope(|s| {
        let handles: Vec<_> = FOUR_ROUTES.map(|r| s.spawn(move || j_sequence(r, 24))).into();
        handles.into_iter().map(|h| h.join().expect("route thread")).collect::<Result<_, _>>()
    })
    .map_err(|e| e.to_string())?;
    ok(compare_routes(&seqs.iter().collect::<Vec<_>>()))?;
    ensure(seqs.iter().all(|s| s.max_n() == 24), || "a route stopped short of 24".into())?;
    within(Duration::from_secs(30), started, "four routes to 24")
}

fn criterion_5() -> Outcome {
    let started = Instant::now();
    let jobs = default_jobs();
    let s = ok(s_triangle_recurrence(9))?;
    for n in 1..=9 {
        let brute = ok(p_bruteforce(n, DEFAULT_CAP, jobs))?;
        let from_s = ok(p_poly(&s, n))?;
        ensure(brute == from_s, || format!("P_{n}: permutations {} vs s {}", brute.to_text(), from_s.to_text()))?;
    }
    for n in 1..=8 {
        let row = ok(ok(tree_census(n, DEFAULT_CAP, jobs))?.s_row())?;
        ensure(Some(&row) == s.row(n), || format!("s row {n} from trees: {row:?}"))?;
    }
    within(Duration::from_secs(60), started, "permutation and tree oracles")
}

fn criterion_6() -> Outcome {
    let started = Instant::now();
    let jobs = default_jobs();
    let g2 = Grammar::g2();
    let d2 = ok(g2.iterates(&ok(g2.letter("x"))?, 8))?;
    for (n, want) in d2.iter().enumerate() {
        let got = ok(ok(tree_census(n, DEFAULT_CAP, jobs))?.g2_distribution())?;
        ensure(&got == want, || format!("n = {n}: trees {} vs G2 {}", got.to_text(), want.to_text()))?;
    }
    let opts = VerifyOptions { max_n: Some(8), jobs, ..VerifyOptions::default() };
    let rep = ok(run_suite(Suite::ThetaGamma, &opts))?;
    ensure(rep.passed(), || rep.to_text())?;
    within(Duration::from_secs(60), started, "tree grammar identities")
}

fn criterion_7() -> Outcome {
    let started = Instant::now();
    let opts = VerifyOptions { max_n: Some(60), ..VerifyOptions::default() };
    for suite in [Suite::OddGamma, Suite::EvenBiGamma] {
        let rep = ok(run_suite(suite, &opts))?;
        ensure(rep.passed(), || rep.to_text())?;
    }
    within(Duration::from_secs(10), started, "certificates to 60")
}

fn criterion_8() -> Outcome {
    ok(check_gamma_t(&ok(gamma_triangle_recurrence(40))?, &ok(t_triangle_recurrence(40))?))?;
    let s = ok(s_triangle_recurrence(16))?;
    let g = ok(gamma_triangle_recurrence(16))?;
    for n in 1..=16 {
        let peeled = ok(gamma_from_p(&ok(p_poly(&s, n))?, n))?;
        ensure(Some(&peeled) == g.row(n), || format!("gamma row {n} peeled from P_n: {peeled:?}"))?;
    }
    for n in 1..=12 {
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let at_one: BigInt = ok(p_poly(&s, n))?.terms().map(|(_, c)| c.clone()).sum();
        ensure(s.row_sum(n) == fact && at_one == fact, || format!("n = {n}: sums differ from n!"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let started = Instant::now();
    let order = 26;
    let es = ok(EllipticSeries::integrate(order))?;
    let (a, b) = ok(es.pythagorean_sums())?;
    let one = FormalSeries::constant(order, UniPoly::one());
    ensure(a == one, || "sn^2 + cn^2 != 1".into())?;
    ensure(b == one, || "dn^2 + x sn^2 != 1".into())?;
    let j = ok(j_sequence(Route::Viennot, order))?;
    for n in 0..=order / 2 {
        let sign = BigInt::from(if n % 2 == 0 { 1 } else { -1 });
        let want = ok(j.get(2 * n).cloned().unwrap_or_default().reverse(n))?.scale(&sign);
        let got = ok(es.egf_coeff(ellipta::elliptic::EllipticFn::Dn, 2 * n))?;
        ensure(got == want, || format!("dn coefficient {}: {got} vs {want}", 2 * n))?;
    }
    if let Some(e) = ok(series_identities(order))? {
        return Err(e);
    }
    within(Duration::from_secs(5), started, "series identities")
}

fn criterion_10() -> Outcome {
    let started = Instant::now();
    let opts = VerifyOptions { max_n: Some(7), ..VerifyOptions::default() };
    let rep = ok(run_suite(Suite::PhiInvolutions, &opts))?;
    ensure(rep.passed(), || rep.to_text())?;
    within(Duration::from_secs(60), started, "phi sweep")
}

fn criterion_11() -> Outcome {
    use rand::{RngCore, SeedableRng};
    let started = Instant::now();
    let mut master = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for k in 0..100 {
        let seed = master.next_u64();
        let (g, w) = random_closure_instance(seed, 6);
        for t in ok(bi_gamma_closure(&g, &w, 6))? {
            ensure(t.alternatingly_increasing, || format!("instance {k}: f_{} = {}", t.n, t.poly))?;
            let (ga, gb) = (&t.gamma_a, &t.gamma_b);
            let rebuilt = &ga.reconstruct() + &gb.reconstruct().shift(1);
            ensure(rebuilt == t.poly && ga.is_nonnegative() && gb.is_nonnegative(), || {
                format!("instance {k}: certificate of f_{} is invalid", t.n)
            })?;
            let v = is_bi_gamma_positive(&t.poly, t.n.saturating_sub(1));
            ensure(t.degenerate || v.holds, || format!("instance {k}: f_{} fails the direct test", t.n))?;
        }
    }
    within(Duration::from_secs(10), started, "closure suite")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("J_1..J_8 list by each of four routes", criterion_1),
        ("P_1..P_6 and t_1..t_7 lists", criterion_2),
        ("J_8 worked decomposition", criterion_3),
        ("four-route agreement to 24", criterion_4),
        ("permutation and tree oracles", criterion_5),
        ("tree grammar and theta identities", criterion_6),
        ("gamma and bi-gamma certificates to 60", criterion_7),
        ("consistency triad", criterion_8),
        ("series identities through u^26", criterion_9),
        ("phi involution suite to 7", criterion_10),
        ("randomized closure suite", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = started.elapsed();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({took:.2?})", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {e}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
