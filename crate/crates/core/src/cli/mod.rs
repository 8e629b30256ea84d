//! Command-line front end. Data goes to stdout, warnings and errors to
//! stderr. Exit codes: 0 success, 1 verification or I/O failure, 2 usage
//! error or exceeded cap.

mod args;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use num_bigint::BigInt;
use serde::Serialize;

pub use args::{CacheAction, CachedTriangle, Cli, Command, Format, Target};
use args::{CacheArgs, Common, ComputeArgs, VerifyArgs};
use output::{
    multi_csv, multi_json, triangle_csv, triangle_json, triangle_text, uni_csv, uni_json,
    GammaJson, UniJson,
};

use crate::cache;
use crate::elliptic::{
    bi_gamma_closure, compare_routes, gamma_from_p, gamma_triangle_recurrence, j_even_decomposition,
    j_sequence, p_poly, random_closure_instance, s_triangle_operator, s_triangle_recurrence,
    t_polys, t_triangle_recurrence, Route,
};
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, UniPoly};
use crate::gammakit::{analyze, gamma_expand, sym_decompose, GammaVector};
use crate::grammar::{parse_polynomial, Grammar};
use crate::treeoracle::{default_jobs, p_bruteforce, theta_triangle, WARN_ABOVE};
use crate::triangle::{Triangle, TriangleKind};
use crate::verify::{run_all, run_suite, Suite, SuiteReport, VerifyOptions};

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::InvalidArgument(_) | Error::Parse { .. } => 2,
        Error::UnknownVariable(_) | Error::ExponentOverflow => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { out, err };
    let result = match cli.command {
        Command::Compute(a) => ctx.compute(&a).map(|()| 0),
        Command::Verify(a) => ctx.verify(&a),
        Command::Cache(a) => ctx.cache(&a).map(|()| 0),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn jobs(c: &Common) -> usize {
    c.jobs.unwrap_or_else(default_jobs).max(1)
}

fn parse_routes(spec: Option<&str>, default: Route, allowed: &[Route]) -> Result<Vec<Route>> {
    let routes = match spec {
        None => vec![default],
        Some(s) => s.split(',').map(|r| r.trim().parse()).collect::<Result<Vec<Route>>>()?,
    };
    for r in &routes {
        if !allowed.contains(r) {
            return Err(usage(format!("route `{r}` does not apply here")));
        }
    }
    Ok(routes)
}

/// Rows to print: `--n` alone, or `first..=max_n`.
fn row_range(a: &ComputeArgs, first: usize) -> Result<(usize, usize)> {
    let (lo, hi) = match (a.n, a.max_n) {
        (Some(n), _) => (n, n),
        (None, Some(m)) => (first, m),
        (None, None) => return Err(usage("give --n or --max-n")),
    };
    if lo < first || hi < lo {
        return Err(usage(format!("rows start at {first}")));
    }
    Ok((lo, hi))
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<()> {
        self.out.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            self.out.write_all(b"\n")?;
        }
        Ok(())
    }

    fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    fn check_cap_warning(&mut self, c: &Common) {
        if c.cap > WARN_ABOVE {
            let cap = c.cap;
            self.warn(&format!("cap {cap} allows enumerations of more than {WARN_ABOVE}! objects"));
        }
    }

    /// The triangle through row `hi`, from the cache when it holds enough
    /// rows. A corrupted cache is rebuilt and rewritten.
    fn load_triangle(&mut self, kind: TriangleKind, hi: usize, c: &Common) -> Result<Triangle> {
        let build = |m: usize| match kind {
            TriangleKind::S => s_triangle_recurrence(m.max(1)),
            TriangleKind::Gamma => gamma_triangle_recurrence(m.max(1)),
            TriangleKind::T => t_triangle_recurrence(m.max(1)),
            TriangleKind::Theta => Err(usage("theta is not cached")),
        };
        let Some(dir) = cache::resolve_dir(c.cache_dir.as_deref()) else { return build(hi) };
        match cache::read_triangle(&dir, kind) {
            Ok(Some(t)) if t.max_row().is_some_and(|m| m >= hi) => Ok(t),
            Ok(_) => build(hi),
            Err(Error::CorruptedCache(msg)) => {
                self.warn(&format!("{msg}; rebuilding"));
                let rebuilt = build(hi)?;
                cache::write_triangle(&dir, &rebuilt)?;
                Ok(rebuilt)
            }
            Err(e) => Err(e),
        }
    }

    fn compute(&mut self, a: &ComputeArgs) -> Result<()> {
        match a.target {
            Target::J => self.compute_j(a),
            Target::P => self.compute_p(a),
            Target::S | Target::Gamma | Target::T | Target::Theta => self.compute_triangle(a),
            Target::Decompose => self.compute_decompose(a),
            Target::Closure => self.compute_closure(a),
            Target::Derive => self.compute_derive(a),
        }
    }

    fn compute_j(&mut self, a: &ComputeArgs) -> Result<()> {
        let routes = parse_routes(
            a.route.as_deref(),
            Route::Viennot,
            &[Route::Operator, Route::Recurrence, Route::Viennot, Route::Series],
        )?;
        let (lo, hi) = row_range(a, 0)?;
        let seqs = routes.iter().map(|&r| j_sequence(r, hi)).collect::<Result<Vec<_>>>()?;
        compare_routes(&seqs.iter().collect::<Vec<_>>())?;
        let polys = &seqs[0].polys;
        let text = match (a.n.is_some(), a.format) {
            (true, Format::Text) => polys[lo].to_text("x"),
            (true, Format::Json) => uni_json(&polys[lo]),
            (true, Format::Csv) => uni_csv(&polys[lo]),
            (false, Format::Text) => {
                (lo..=hi).map(|n| format!("J_{n} = {}\n", polys[n].to_text("x"))).collect()
            }
            (false, Format::Json) => {
                let items: Vec<UniJson> = (lo..=hi).map(|n| UniJson::new(Some(n), &polys[n])).collect();
                serde_json::to_string_pretty(&items).expect("serializable")
            }
            (false, Format::Csv) => {
                let mut s = String::from("n,exponent,value\n");
                for n in lo..=hi {
                    for (e, c) in polys[n].coeffs().iter().enumerate() {
                        s.push_str(&format!("{n},{e},{c}\n"));
                    }
                }
                s
            }
        };
        self.emit(&text)
    }

    fn compute_p(&mut self, a: &ComputeArgs) -> Result<()> {
        let routes = parse_routes(
            a.route.as_deref(),
            Route::Recurrence,
            &[Route::Operator, Route::Recurrence, Route::Permutations],
        )?;
        let n = a.n.ok_or_else(|| usage("give --n"))?;
        if routes.contains(&Route::Permutations) {
            self.check_cap_warning(&a.common);
        }
        let mut results: Vec<(Route, MultiPoly)> = Vec::new();
        for &r in &routes {
            let p = match r {
                Route::Operator => p_poly(&s_triangle_operator(n.max(1))?, n)?,
                Route::Recurrence => {
                    let s = self.load_triangle(TriangleKind::S, n, &a.common)?;
                    p_poly(&s, n)?
                }
                _ => p_bruteforce(n, a.common.cap, jobs(&a.common))?,
            };
            if let Some((r0, p0)) = results.first() {
                if *p0 != p {
                    return Err(Error::Defect(format!(
                        "P_{n}: route {r0} gives {}, route {r} gives {}",
                        p0.to_text(),
                        p.to_text()
                    )));
                }
            }
            results.push((r, p));
        }
        let p = &results[0].1;
        let text = match a.format {
            Format::Text => p.to_text(),
            Format::Json => multi_json(p),
            Format::Csv => multi_csv(p),
        };
        self.emit(&text)
    }

    fn compute_triangle(&mut self, a: &ComputeArgs) -> Result<()> {
        let c = &a.common;
        let (kind, first) = match a.target {
            Target::S => (TriangleKind::S, 0),
            Target::Gamma => (TriangleKind::Gamma, 1),
            Target::T => (TriangleKind::T, 1),
            _ => (TriangleKind::Theta, 0),
        };
        let (lo, hi) = row_range(a, first)?;
        let tri = match kind {
            TriangleKind::Theta => {
                parse_routes(a.route.as_deref(), Route::Trees, &[Route::Trees])?;
                self.check_cap_warning(c);
                theta_triangle(lo, hi, c.cap, jobs(c))?
            }
            _ => {
                let route = parse_routes(a.route.as_deref(), Route::Recurrence, &[Route::Recurrence, Route::Operator])?;
                if route.len() != 1 {
                    return Err(usage("give a single route"));
                }
                match (kind, route[0]) {
                    (_, Route::Recurrence) => self.load_triangle(kind, hi, c)?,
                    (TriangleKind::S, _) => s_triangle_operator(hi.max(1))?,
                    (TriangleKind::Gamma, _) => {
                        let s = s_triangle_operator(hi.max(1))?;
                        let mut g = Triangle::new(kind);
                        for n in 1..=hi {
                            g.insert_row(n, gamma_from_p(&p_poly(&s, n)?, n)?);
                        }
                        g
                    }
                    _ => {
                        let polys = t_polys(hi)?;
                        let mut t = Triangle::new(kind);
                        for (n, p) in polys.iter().enumerate().skip(1) {
                            let row = p
                                .terms()
                                .map(|(e, v)| ((e[0] as usize, e[1] as usize), v.clone()))
                                .collect();
                            t.insert_row(n, row);
                        }
                        t
                    }
                }
            }
        };
        let tri = tri.restricted(lo, hi);
        let text = match a.format {
            Format::Text => triangle_text(&tri)?,
            Format::Json => triangle_json(&tri),
            Format::Csv => triangle_csv(&tri),
        };
        self.emit(&text)
    }

    fn compute_decompose(&mut self, a: &ComputeArgs) -> Result<()> {
        if let Some(expr) = &a.poly {
            let alphabet = MultiPoly::zero(&["x"]).alphabet_arc();
            let x = UniPoly::monomial(1, 1);
            let f = parse_polynomial(expr, alphabet)?
                .substitute(&[("x".to_string(), x)].into_iter().collect())?;
            let center = a.center.or(f.degree()).unwrap_or(0);
            let report = analyze(&f, center);
            let text = match a.format {
                Format::Json => report.to_json(),
                _ => output::report_text(&report),
            };
            return self.emit(&text);
        }
        let n = a.n.ok_or_else(|| usage("give --n or --poly"))?;
        let j = j_sequence(Route::Viennot, n)?.polys.swap_remove(n);
        let center = n.saturating_sub(1) / 2;
        let (a_part, b_part, gamma_a, gamma_b) = if n >= 2 && n % 2 == 0 {
            let g = self.load_triangle(TriangleKind::Gamma, n - 1, &a.common)?;
            let d = j_even_decomposition(&g, center)?;
            if sym_decompose(&j, center)? != d.to_sym_decomp() {
                return Err(Error::Defect(format!("certificate for J_{n} is not its symmetric decomposition")));
            }
            (d.a.reconstruct(), d.b.reconstruct(), d.a, d.b)
        } else {
            let d = sym_decompose(&j, center)?;
            let ga = gamma_expand(&d.a, center)?;
            let gb = if d.b.is_zero() { GammaVector::zero(center.saturating_sub(1)) } else { gamma_expand(&d.b, center - 1)? };
            (d.a, d.b, ga, gb)
        };
        let text = match a.format {
            Format::Text => format!(
                "a = {}\nb = {}\ngamma(a) = {}\ngamma(b) = {}\n",
                a_part.to_text("x"),
                b_part.to_text("x"),
                output::gamma_text(&gamma_a),
                output::gamma_text(&gamma_b)
            ),
            Format::Json => {
                #[derive(Serialize)]
                struct Out {
                    n: usize,
                    center: usize,
                    polynomial: UniJson,
                    a: UniJson,
                    b: UniJson,
                    gamma_a: GammaJson,
                    gamma_b: GammaJson,
                }
                let o = Out {
                    n,
                    center,
                    polynomial: UniJson::new(None, &j),
                    a: UniJson::new(None, &a_part),
                    b: UniJson::new(None, &b_part),
                    gamma_a: GammaJson::new(&gamma_a),
                    gamma_b: GammaJson::new(&gamma_b),
                };
                serde_json::to_string_pretty(&o).expect("serializable")
            }
            Format::Csv => {
                let mut s = String::from("part,exponent,value\n");
                for (name, p) in [("a", &a_part), ("b", &b_part)] {
                    for (e, c) in p.coeffs().iter().enumerate() {
                        s.push_str(&format!("{name},{e},{c}\n"));
                    }
                }
                s
            }
        };
        self.emit(&text)
    }

    fn compute_closure(&mut self, a: &ComputeArgs) -> Result<()> {
        let n_max = a.max_n.or(a.n).unwrap_or(6);
        let (g, w) = random_closure_instance(a.common.seed, n_max);
        let terms = bi_gamma_closure(&g, &w, n_max)?;
        let text = match a.format {
            Format::Json => {
                #[derive(Serialize)]
                struct Term {
                    n: usize,
                    poly: UniJson,
                    a: UniJson,
                    b: UniJson,
                    gamma_a: GammaJson,
                    gamma_b: GammaJson,
                    degenerate: bool,
                    alternatingly_increasing: bool,
                }
                #[derive(Serialize)]
                struct Out {
                    seed: u64,
                    g: Vec<GammaJson>,
                    weights: Vec<Vec<String>>,
                    terms: Vec<Term>,
                }
                let o = Out {
                    seed: a.common.seed,
                    g: g.iter().map(GammaJson::new).collect(),
                    weights: w.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect(),
                    terms: terms
                        .iter()
                        .map(|t| Term {
                            n: t.n,
                            poly: UniJson::new(None, &t.poly),
                            a: UniJson::new(None, &t.decomposition.a),
                            b: UniJson::new(None, &t.decomposition.b),
                            gamma_a: GammaJson::new(&t.gamma_a),
                            gamma_b: GammaJson::new(&t.gamma_b),
                            degenerate: t.degenerate,
                            alternatingly_increasing: t.alternatingly_increasing,
                        })
                        .collect(),
                };
                serde_json::to_string_pretty(&o).expect("serializable")
            }
            Format::Text => terms
                .iter()
                .map(|t| {
                    format!(
                        "f_{} = {}  [a = {}; b = {}; alternatingly increasing: {}]\n",
                        t.n,
                        t.poly.to_text("x"),
                        t.decomposition.a.to_text("x"),
                        t.decomposition.b.to_text("x"),
                        t.alternatingly_increasing
                    )
                })
                .collect(),
            Format::Csv => {
                let mut s = String::from("n,exponent,value\n");
                for t in &terms {
                    for (e, c) in t.poly.coeffs().iter().enumerate() {
                        s.push_str(&format!("{},{e},{c}\n", t.n));
                    }
                }
                s
            }
        };
        self.emit(&text)
    }

    fn compute_derive(&mut self, a: &ComputeArgs) -> Result<()> {
        let path = a.grammar.as_deref().ok_or_else(|| usage("give --grammar FILE"))?;
        let g = Grammar::parse(&std::fs::read_to_string(path)?)?;
        let n = a.n.ok_or_else(|| usage("give --n"))?;
        let start = match &a.start {
            Some(e) => parse_polynomial(e, g.alphabet_arc())?,
            None => g.letter(&g.alphabet()[0])?,
        };
        let d = g.iterate(&start, n)?;
        let text = match a.format {
            Format::Text => d.to_text(),
            Format::Json => multi_json(&d),
            Format::Csv => multi_csv(&d),
        };
        self.emit(&text)
    }

    fn verify(&mut self, a: &VerifyArgs) -> Result<i32> {
        let opts = VerifyOptions {
            max_n: a.max_n,
            seed: a.common.seed,
            jobs: jobs(&a.common),
            cap: a.common.cap,
            instances: a.instances,
        };
        self.check_cap_warning(&a.common);
        let reports: Vec<SuiteReport> = if a.suite == "all" {
            if a.max_n.is_some() {
                self.warn("--max-n is ignored by `all`; every suite runs at its default range");
            }
            run_all(&opts)?
        } else {
            vec![run_suite(a.suite.parse::<Suite>()?, &opts)?]
        };
        let text = match a.format {
            Format::Json => serde_json::to_string_pretty(&reports).expect("serializable"),
            _ => reports.iter().map(SuiteReport::to_text).collect(),
        };
        self.emit(&text)?;
        Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { 1 })
    }

    fn cache(&mut self, a: &CacheArgs) -> Result<()> {
        let dir = cache::resolve_dir(a.common.cache_dir.as_deref())
            .ok_or_else(|| usage(format!("give --cache-dir or set {}", cache::CACHE_ENV)))?;
        let kinds: Vec<TriangleKind> = if a.target.is_empty() {
            vec![TriangleKind::S, TriangleKind::Gamma, TriangleKind::T]
        } else {
            a.target
                .iter()
                .map(|t| match t {
                    CachedTriangle::S => TriangleKind::S,
                    CachedTriangle::Gamma => TriangleKind::Gamma,
                    CachedTriangle::T => TriangleKind::T,
                })
                .collect()
        };
        match a.action {
            CacheAction::Write => {
                for kind in kinds {
                    let tri = build_kind(kind, a.max_n)?;
                    let path = cache::write_triangle(&dir, &tri)?;
                    self.emit(&format!("{kind}: rows {}..={} -> {}", first_row(kind), a.max_n.max(1), path.display()))?;
                }
            }
            CacheAction::Read => {
                for kind in kinds {
                    self.read_one(&dir, kind, a.max_n)?;
                }
            }
            CacheAction::Clear => {
                let removed = cache::clear(&dir)?;
                self.emit(&format!("removed {} file(s)", removed.len()))?;
            }
        }
        Ok(())
    }

    fn read_one(&mut self, dir: &Path, kind: TriangleKind, max_n: usize) -> Result<()> {
        match cache::read_triangle(dir, kind) {
            Ok(Some(t)) => {
                let hi = t.max_row().unwrap_or(0);
                self.emit(&format!("{kind}: rows {}..={hi} valid", first_row(kind)))
            }
            Ok(None) => self.emit(&format!("{kind}: not cached")),
            Err(Error::CorruptedCache(msg)) => {
                self.warn(&format!("{msg}; rebuilding rows through {max_n}"));
                let tri = build_kind(kind, max_n)?;
                cache::write_triangle(dir, &tri)?;
                self.emit(&format!("{kind}: rebuilt rows {}..={}", first_row(kind), max_n.max(1)))
            }
            Err(e) => Err(e),
        }
    }
}

fn first_row(kind: TriangleKind) -> usize {
    usize::from(kind != TriangleKind::S)
}

fn build_kind(kind: TriangleKind, max_n: usize) -> Result<Triangle> {
    match kind {
        TriangleKind::S => s_triangle_recurrence(max_n.max(1)),
        TriangleKind::Gamma => gamma_triangle_recurrence(max_n.max(1)),
        TriangleKind::T => t_triangle_recurrence(max_n.max(1)),
        TriangleKind::Theta => Err(usage("theta is not cached")),
    }
}
