use std::sync::Arc;

use serde::Serialize;

use crate::elliptic::s_poly;
use crate::error::Result;
use crate::exactpoly::{MultiPoly, UniPoly};
use crate::gammakit::{AnalysisReport, GammaVector};
use crate::triangle::{Triangle, TriangleKind};

#[derive(Serialize)]
pub struct UniJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    var: &'static str,
    coeffs: Vec<String>,
}

impl UniJson {
    pub fn new(n: Option<usize>, p: &UniPoly) -> Self {
        UniJson { n, var: "x", coeffs: p.coeffs().iter().map(ToString::to_string).collect() }
    }
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct GammaJson(GammaVector);

impl GammaJson {
    pub fn new(g: &GammaVector) -> Self {
        GammaJson(g.clone())
    }
}

pub fn uni_json(p: &UniPoly) -> String {
    p.to_json("x")
}

pub fn uni_csv(p: &UniPoly) -> String {
    let mut s = String::from("exponent,value\n");
    for (e, c) in p.coeffs().iter().enumerate() {
        s.push_str(&format!("{e},{c}\n"));
    }
    s
}

pub fn multi_json(p: &MultiPoly) -> String {
    p.to_json()
}

pub fn multi_csv(p: &MultiPoly) -> String {
    let mut s = p.alphabet().join(",");
    s.push_str(",value\n");
    for (e, c) in p.terms() {
        let exps: Vec<String> = e.iter().map(ToString::to_string).collect();
        s.push_str(&format!("{},{c}\n", exps.join(",")));
    }
    s
}

pub fn gamma_text(g: &GammaVector) -> String {
    let parts: Vec<String> = g.gammas().iter().map(ToString::to_string).collect();
    format!("[{}] (center {})", parts.join(", "), g.center())
}

/// One line per row: the row's generating polynomial.
pub fn triangle_text(tri: &Triangle) -> Result<String> {
    let letters: Arc<[String]> = match tri.kind() {
        TriangleKind::Gamma => ["p", "q"],
        TriangleKind::T => ["x", "y"],
        _ => ["c", "a"],
    }
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut out = String::new();
    for (n, row) in tri.rows() {
        let poly = if tri.kind() == TriangleKind::S {
            s_poly(tri, n)?
        } else {
            MultiPoly::from_terms(
                letters.clone(),
                row.iter().map(|((i, j), v)| (vec![*i as u32, *j as u32], v.clone())),
            )?
        };
        out.push_str(&format!("{n}: {}\n", poly.to_text()));
    }
    Ok(out)
}

pub fn triangle_csv(tri: &Triangle) -> String {
    tri.to_csv()
}

pub fn triangle_json(tri: &Triangle) -> String {
    #[derive(Serialize)]
    struct Entry {
        n: usize,
        i: usize,
        j: usize,
        value: String,
    }
    #[derive(Serialize)]
    struct Out {
        kind: &'static str,
        entries: Vec<Entry>,
    }
    let out = Out {
        kind: tri.kind().name(),
        entries: tri
            .entries()
            .map(|(n, i, j, v)| Entry { n, i, j, value: v.to_string() })
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("serializable")
}

pub fn report_text(r: &AnalysisReport) -> String {
    let poly = r.polynomial.to_poly().map(|p| p.to_text("x")).unwrap_or_default();
    let mut out = format!(
        "polynomial: {poly}\ncenter: {}\nsymmetric: {}\nunimodal: {}\nalternatingly increasing: {}\ngamma-positive: {}\nbi-gamma-positive: {}\n",
        r.center,
        r.symmetric,
        r.unimodal,
        r.alternatingly_increasing,
        serde_json::to_string(&r.gamma_positive).expect("serializable"),
        r.bi_gamma_positive,
    );
    let c = &r.certificates;
    if let Some(g) = &c.gamma {
        out.push_str(&format!("gamma: {}\n", gamma_text(g)));
    }
    for (name, p) in [("a", &c.a), ("b", &c.b)] {
        if let Some(p) = p.as_ref().and_then(|p| p.to_poly().ok()) {
            out.push_str(&format!("{name}: {}\n", p.to_text("x")));
        }
    }
    for (name, g) in [("gamma(a)", &c.gamma_a), ("gamma(b)", &c.gamma_b)] {
        if let Some(g) = g {
            out.push_str(&format!("{name}: {}\n", gamma_text(g)));
        }
    }
    for reason in &r.reasons {
        out.push_str(&format!("reason: {}\n", serde_json::to_string(reason).expect("serializable")));
    }
    out
}
