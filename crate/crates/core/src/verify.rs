//! Named verification suites. Each suite runs a list of checks over a
//! stated range and reports the first counterexample of every failing check.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::elliptic::{
    bi_gamma_closure, check_gamma_t, compare_routes, gamma_from_p, gamma_triangle_recurrence,
    j_even_decompositions, j_odd_gamma, j_operator, j_recurrence, j_series, j_viennot, p_poly,
    random_closure_instance, s_poly, s_triangle_operator, s_triangle_recurrence,
    t_triangle_recurrence, EllipticSeries,
};
use crate::error::{Error, Result};
use crate::exactpoly::{factorial, FormalSeries, UniPoly};
use crate::gammakit::{is_alternatingly_increasing, is_bi_gamma_positive, is_gamma_positive, is_symmetric, sym_decompose};
use crate::grammar::Grammar;
use crate::treeoracle::{
    p_bruteforce, phi_sweep, theta_index_for_gamma, tree_census, DEFAULT_CAP,
};

/// Ranges of the fixed consistency checks bundled with the route suite.
pub const GAMMA_T_MAX: usize = 40;
pub const GAMMA_FROM_P_MAX: usize = 16;
pub const FACTORIAL_MAX: usize = 12;
pub const HOMOGENEITY_MAX: usize = 20;
pub const SERIES_ORDER: usize = 26;
pub const CLOSURE_INSTANCES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Routes,
    Dumont,
    ViennotSymmetry,
    OddGamma,
    EvenBiGamma,
    TreeGrammar,
    TreeS,
    ThetaGamma,
    PhiInvolutions,
    Closure,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Routes,
        Suite::Dumont,
        Suite::ViennotSymmetry,
        Suite::OddGamma,
        Suite::EvenBiGamma,
        Suite::TreeGrammar,
        Suite::TreeS,
        Suite::ThetaGamma,
        Suite::PhiInvolutions,
        Suite::Closure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Routes => "routes",
            Suite::Dumont => "dumont",
            Suite::ViennotSymmetry => "viennot-symmetry",
            Suite::OddGamma => "thm1",
            Suite::EvenBiGamma => "thm2",
            Suite::TreeGrammar => "lemma5",
            Suite::TreeS => "theorem13",
            Suite::ThetaGamma => "corollary15",
            Suite::PhiInvolutions => "lemma9",
            Suite::Closure => "closure",
        }
    }

    /// Range used when `--max-n` is not given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Routes => 24,
            Suite::Dumont => DEFAULT_CAP,
            Suite::ViennotSymmetry | Suite::OddGamma | Suite::EvenBiGamma => 60,
            Suite::TreeGrammar | Suite::TreeS | Suite::ThetaGamma => 8,
            Suite::PhiInvolutions => 7,
            Suite::Closure => 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_n: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
    /// Enumeration cap for the permutation and tree oracles.
    pub cap: usize,
    pub instances: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: None,
            seed: 0,
            jobs: crate::treeoracle::default_jobs(),
            cap: DEFAULT_CAP,
            instances: CLOSURE_INSTANCES,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub range: String,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{} {} [{}] {}: {} ms\n", verdict, self.suite, c.range, c.name, c.millis));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("  counterexample: {ce}\n"));
            }
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{overall} {}\n", self.suite));
        out
    }
}

/// A check body returns `Ok(None)` on success and `Ok(Some(ce))` with the
/// first counterexample otherwise. Identity failures surfacing as errors
/// count as counterexamples; argument errors abort the suite.
type CheckResult = Result<Option<String>>;

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::CapExceeded { .. } | Error::InvalidArgument(_))
}

struct Runner {
    suite: Suite,
    checks: Vec<CheckOutcome>,
}

impl Runner {
    fn new(suite: Suite) -> Self {
        Runner { suite, checks: Vec::new() }
    }

    fn check(&mut self, name: &str, range: String, body: impl FnOnce() -> CheckResult) -> Result<()> {
        let start = Instant::now();
        let counterexample = match body() {
            Ok(ce) => ce,
            Err(e) if is_usage_error(&e) => return Err(e),
            Err(e) => Some(e.to_string()),
        };
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            range,
            passed: counterexample.is_none(),
            counterexample,
            millis: start.elapsed().as_millis(),
        });
        Ok(())
    }

    fn finish(self) -> SuiteReport {
        SuiteReport { suite: self.suite.name().to_string(), checks: self.checks }
    }
}

fn fail(msg: String) -> CheckResult {
    Ok(Some(msg))
}

/// Runs one suite. `max_n` bounds the suite's main range; see
/// [`Suite::default_max_n`].
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let max_n = opts.max_n.unwrap_or(suite.default_max_n());
    let mut r = Runner::new(suite);
    match suite {
        Suite::Routes => routes(&mut r, max_n)?,
        Suite::Dumont => dumont(&mut r, max_n, opts)?,
        Suite::ViennotSymmetry => viennot_symmetry(&mut r, max_n)?,
        Suite::OddGamma => odd_gamma(&mut r, max_n)?,
        Suite::EvenBiGamma => even_bi_gamma(&mut r, max_n)?,
        Suite::TreeGrammar => tree_grammar(&mut r, max_n, opts)?,
        Suite::TreeS => tree_s(&mut r, max_n, opts)?,
        Suite::ThetaGamma => theta_gamma(&mut r, max_n, opts)?,
        Suite::PhiInvolutions => phi_involutions(&mut r, max_n, opts)?,
        Suite::Closure => closure(&mut r, max_n, opts)?,
    }
    Ok(r.finish())
}

/// Every suite at its default range.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    let opts = VerifyOptions { max_n: None, ..opts.clone() };
    Suite::ALL.into_iter().map(|s| run_suite(s, &opts)).collect()
}

fn routes(r: &mut Runner, max_n: usize) -> Result<()> {
    r.check("four J routes agree", format!("n <= {max_n}"), || {
        let seqs = [j_operator(max_n)?, j_recurrence(max_n)?, j_viennot(max_n)?, j_series(max_n)?.0];
        compare_routes(&seqs.iter().collect::<Vec<_>>())?;
        for (n, j) in seqs[0].polys.iter().enumerate().skip(1) {
            if j.degree() != Some((n - 1) / 2) || !j.has_nonnegative_coeffs() {
                return fail(format!("J_{n} = {j} has the wrong degree or a negative coefficient"));
            }
        }
        Ok(None)
    })?;
    r.check("s triangle: operator equals recurrence", format!("n <= {max_n}"), || {
        let a = s_triangle_operator(max_n.max(1))?;
        let b = s_triangle_recurrence(max_n.max(1))?;
        for n in 0..=max_n.max(1) {
            if a.row(n) != b.row(n) {
                return fail(format!("row {n}: {:?} vs {:?}", a.row(n), b.row(n)));
            }
        }
        Ok(None)
    })?;
    r.check("row sums and P_n(1,1) equal n!", format!("n <= {FACTORIAL_MAX}"), || {
        let s = s_triangle_recurrence(FACTORIAL_MAX)?;
        for n in 1..=FACTORIAL_MAX {
            let p = p_poly(&s, n)?;
            let at_one: BigInt = p.terms().map(|(_, c)| c.clone()).sum();
            if s.row_sum(n) != factorial(n) || at_one != factorial(n) {
                return fail(format!("n = {n}: row sum {}, P_n(1,1) = {at_one}", s.row_sum(n)));
            }
        }
        Ok(None)
    })?;
    r.check("S_n homogeneous of degree n/2", format!("n <= {HOMOGENEITY_MAX}"), || {
        let s = s_triangle_recurrence(HOMOGENEITY_MAX)?;
        for n in 1..=HOMOGENEITY_MAX {
            let d = s_poly(&s, n)?.homogeneous_degree();
            if d != Some((n / 2) as u64) {
                return fail(format!("S_{n} has degree {d:?}"));
            }
        }
        Ok(None)
    })?;
    r.check("gamma = 4^(i+j) t", format!("n <= {GAMMA_T_MAX}"), || {
        check_gamma_t(&gamma_triangle_recurrence(GAMMA_T_MAX)?, &t_triangle_recurrence(GAMMA_T_MAX)?)?;
        Ok(None)
    })?;
    r.check("gamma rows peeled from P_n", format!("n <= {GAMMA_FROM_P_MAX}"), || {
        let s = s_triangle_recurrence(GAMMA_FROM_P_MAX)?;
        let g = gamma_triangle_recurrence(GAMMA_FROM_P_MAX)?;
        for n in 1..=GAMMA_FROM_P_MAX {
            let peeled = gamma_from_p(&p_poly(&s, n)?, n)?;
            if Some(&peeled) != g.row(n) {
                return fail(format!("row {n}: peeled {peeled:?}, recurrence {:?}", g.row(n)));
            }
        }
        Ok(None)
    })?;
    r.check("series identities", format!("through u^{SERIES_ORDER}"), || series_identities(SERIES_ORDER))
}

/// `sn^2 + cn^2 = 1`, `dn^2 + x sn^2 = 1`, and the dn coefficients
/// against the reflected even `J`.
pub fn series_identities(order: usize) -> CheckResult {
    let es = EllipticSeries::integrate(order)?;
    let (a, b) = es.pythagorean_sums()?;
    let one = FormalSeries::constant(order, UniPoly::one());
    if a != one {
        return fail("sn^2 + cn^2 is not 1".into());
    }
    if b != one {
        return fail("dn^2 + x sn^2 is not 1".into());
    }
    // j_series checks the dn reflection for every even index.
    let (_, report) = j_series(order)?;
    if report.dn_checked != order / 2 + 1 {
        return fail(format!("only {} dn coefficients checked", report.dn_checked));
    }
    Ok(None)
}

fn dumont(r: &mut Runner, max_n: usize, opts: &VerifyOptions) -> Result<()> {
    crate::treeoracle::tree_enumerate(max_n, opts.cap)?;
    r.check("P_n by permutations equals P_n from s", format!("1 <= n <= {max_n}"), || {
        let s = s_triangle_recurrence(max_n.max(1))?;
        for n in 1..=max_n {
            let brute = p_bruteforce(n, opts.cap, opts.jobs)?;
            let p = p_poly(&s, n)?;
            if brute != p {
                return fail(format!("n = {n}: permutations give {}, s gives {}", brute.to_text(), p.to_text()));
            }
        }
        Ok(None)
    })
}

fn viennot_symmetry(r: &mut Runner, max_n: usize) -> Result<()> {
    r.check("J_(2n+1) symmetric about n", format!("n <= {max_n}"), || {
        let j = j_viennot(2 * max_n + 1)?;
        for n in 0..=max_n {
            if !is_symmetric(&j.polys[2 * n + 1], n)? {
                return fail(format!("J_{} = {}", 2 * n + 1, j.polys[2 * n + 1]));
            }
        }
        Ok(None)
    })
}

fn odd_gamma(r: &mut Runner, max_n: usize) -> Result<()> {
    r.check("J_(2n+1) gamma-positive with certificates", format!("n <= {max_n}"), || {
        let j = j_viennot(2 * max_n + 1)?;
        let g = gamma_triangle_recurrence(2 * max_n + 1)?;
        for n in 0..=max_n {
            let f = &j.polys[2 * n + 1];
            let cert = j_odd_gamma(&g, n)?;
            if !cert.is_nonnegative() || cert.reconstruct() != *f {
                return fail(format!("J_{}: certificate {:?} does not certify {f}", 2 * n + 1, cert.gammas()));
            }
            let verdict = is_gamma_positive(f, n);
            if !verdict.positive || verdict.certificate.as_ref() != Some(&cert) {
                return fail(format!("J_{}: direct expansion disagrees ({:?})", 2 * n + 1, verdict.reason));
            }
        }
        Ok(None)
    })
}

fn even_bi_gamma(r: &mut Runner, max_n: usize) -> Result<()> {
    r.check("J_(2n) bi-gamma-positive with certificates", format!("1 <= n <= {max_n}"), || {
        if max_n == 0 {
            return Ok(None);
        }
        let j = j_viennot(2 * max_n)?;
        let g = gamma_triangle_recurrence((2 * max_n - 1).max(1))?;
        for d in j_even_decompositions(&g, max_n - 1)? {
            let n2 = 2 * d.m + 2;
            let f = &j.polys[n2];
            if d.polynomial() != *f {
                return fail(format!("J_{n2}: certificate does not reconstruct {f}"));
            }
            if sym_decompose(f, d.m)? != d.to_sym_decomp() {
                return fail(format!("J_{n2}: certificate is not the symmetric decomposition"));
            }
            let verdict = is_bi_gamma_positive(f, d.m);
            if !verdict.holds || verdict.gamma_a.as_ref() != Some(&d.a) || verdict.gamma_b.as_ref() != Some(&d.b) {
                return fail(format!("J_{n2}: direct bi-gamma test disagrees ({:?})", verdict.reason));
            }
            if !is_alternatingly_increasing(f, d.m) {
                return fail(format!("J_{n2} is not alternatingly increasing"));
            }
        }
        Ok(None)
    })
}

fn tree_grammar(r: &mut Runner, max_n: usize, opts: &VerifyOptions) -> Result<()> {
    crate::treeoracle::tree_enumerate(max_n, opts.cap)?;
    r.check("tree distributions equal G2 and G1 derivatives", format!("n <= {max_n}"), || {
        let (g1, g2) = (Grammar::g1(), Grammar::g2());
        let d1 = g1.iterates(&g1.letter("x")?, max_n)?;
        let d2 = g2.iterates(&g2.letter("x")?, max_n)?;
        for n in 0..=max_n {
            let census = tree_census(n, opts.cap, opts.jobs)?;
            if census.total() != u64::try_from(factorial(n)).unwrap_or(u64::MAX) {
                return fail(format!("n = {n}: {} trees", census.total()));
            }
            if let Some(s) = census.inconsistent() {
                return fail(format!("n = {n}: statistics {s:?} break the pair-count identities"));
            }
            let t2 = census.g2_distribution()?;
            if t2 != d2[n] {
                return fail(format!("n = {n}: trees give {}, G2 gives {}", t2.to_text(), d2[n].to_text()));
            }
            let t1 = census.g1_distribution()?;
            if t1 != d1[n] {
                return fail(format!("n = {n}: trees give {}, G1 gives {}", t1.to_text(), d1[n].to_text()));
            }
        }
        Ok(None)
    })
}

fn tree_s(r: &mut Runner, max_n: usize, opts: &VerifyOptions) -> Result<()> {
    crate::treeoracle::tree_enumerate(max_n, opts.cap)?;
    r.check("s read off tree statistics", format!("1 <= n <= {max_n}"), || {
        let s = s_triangle_recurrence(max_n.max(1))?;
        for n in 1..=max_n {
            let from_trees = tree_census(n, opts.cap, opts.jobs)?.s_row()?;
            if Some(&from_trees) != s.row(n) {
                return fail(format!("row {n}: trees {from_trees:?}, triangle {:?}", s.row(n)));
            }
        }
        Ok(None)
    })
}

fn theta_gamma(r: &mut Runner, max_n: usize, opts: &VerifyOptions) -> Result<()> {
    crate::treeoracle::tree_enumerate(max_n, opts.cap)?;
    let censuses = (0..=max_n)
        .map(|n| tree_census(n, opts.cap, opts.jobs))
        .collect::<Result<Vec<_>>>()?;
    r.check("theta expansion equals the tree distribution", format!("n <= {max_n}"), || {
        for c in &censuses {
            let lhs = c.g1_distribution()?;
            let rhs = c.theta_expansion()?;
            if lhs != rhs {
                return fail(format!("n = {}: {} vs {}", c.n, lhs.to_text(), rhs.to_text()));
            }
        }
        Ok(None)
    })?;
    r.check("gamma entries equal theta entries", format!("1 <= n <= {max_n}"), || {
        let g = gamma_triangle_recurrence(max_n.max(1))?;
        for c in censuses.iter().skip(1) {
            let n = c.n;
            let theta = c.theta_row();
            let mut matched = 0;
            for ((i, j), v) in g.row(n).into_iter().flatten() {
                let key = theta_index_for_gamma(n, *i, *j)
                    .ok_or_else(|| Error::Defect(format!("gamma({n},{i},{j}) has no theta index")))?;
                if theta.get(&key) != Some(v) {
                    return fail(format!("gamma({n},{i},{j}) = {v}, theta({n},{},{}) = {:?}", key.0, key.1, theta.get(&key)));
                }
                matched += 1;
            }
            if matched != theta.len() {
                return fail(format!("n = {n}: theta has {} entries, gamma {matched}", theta.len()));
            }
        }
        Ok(None)
    })
}

fn phi_involutions(r: &mut Runner, max_n: usize, opts: &VerifyOptions) -> Result<()> {
    crate::treeoracle::tree_enumerate(max_n, opts.cap)?;
    r.check("phi involutions, orbits and statistic transport", format!("n <= {max_n}"), || {
        for n in 0..=max_n {
            phi_sweep(n, opts.cap)?;
        }
        Ok(None)
    })
}

fn closure(r: &mut Runner, max_n: usize, opts: &VerifyOptions) -> Result<()> {
    let range = format!("{} instances, n_max = {max_n}, seed {}", opts.instances, opts.seed);
    r.check("random closures are bi-gamma-positive", range, || {
        let mut master = ChaCha8Rng::seed_from_u64(opts.seed);
        for k in 0..opts.instances {
            let seed = master.next_u64();
            let (g, w) = random_closure_instance(seed, max_n);
            for t in bi_gamma_closure(&g, &w, max_n)? {
                if !t.alternatingly_increasing {
                    return fail(format!("instance {k} (seed {seed}): f_{} = {} is not alternatingly increasing", t.n, t.poly));
                }
                let center = t.n.saturating_sub(1);
                let v = is_bi_gamma_positive(&t.poly, center);
                if !t.degenerate && !v.holds {
                    return fail(format!("instance {k} (seed {seed}): f_{} fails the bi-gamma test", t.n));
                }
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm3".parse::<Suite>().is_err());
    }

    #[test]
    fn small_ranges_pass() {
        let opts = VerifyOptions { max_n: Some(5), jobs: 2, instances: 5, ..VerifyOptions::default() };
        for s in Suite::ALL {
            let rep = run_suite(s, &opts).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn cap_is_a_usage_error() {
        let opts = VerifyOptions { max_n: Some(12), ..VerifyOptions::default() };
        assert!(matches!(run_suite(Suite::Dumont, &opts), Err(Error::CapExceeded { .. })));
    }
}
