//! Plain-text rendering of [`AnalysisReport`]. Every function here reads the
//! report only.

use std::fmt::Write as _;

use crate::analysis::{AnalysisReport, KernelReport};

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn render_formality(r: &AnalysisReport) -> String {
    format!("{}\n", r.formality)
}

pub fn render_header(r: &AnalysisReport) -> String {
    let d = &r.diagram;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "diagram: G = {}, H = {}, K- = {}, K+ = {}",
        d.g, d.h, d.k_minus, d.k_plus
    );
    let _ = writeln!(out, "quotients: K-/H = {}, K+/H = {}", d.quotient_minus, d.quotient_plus);
    let _ = writeln!(
        out,
        "ranks: G {}, H {}, K- {}, K+ {}",
        r.ranks.g, r.ranks.h, r.ranks.k_minus, r.ranks.k_plus
    );
    if r.normalization.swapped {
        let _ = writeln!(out, "normalization: K- and K+ swapped, b = {}", r.normalization.b);
    } else {
        let _ = writeln!(out, "normalization: as given, b = {}", r.normalization.b);
    }
    let _ = writeln!(out, "case: {}", r.case.label());
    out.push_str(&render_formality(r));
    let _ = writeln!(out, "krull dimension: {}", r.krull_dimension);
    for p in &r.poincare_checks {
        let surj = match p.first_failure {
            None => format!("surjective up to degree {}", r.max_degree),
            Some(d) => format!("NOT surjective in degree {d}"),
        };
        let _ = writeln!(
            out,
            "poincare sphere {}: pair {}, rank drop {}, restriction {surj}",
            p.quotient,
            p.pair,
            if p.rank_drop { "yes" } else { "no" }
        );
    }
    out
}

pub fn render_kernel(r: &AnalysisReport) -> String {
    let Some(k) = &r.kernel else {
        return format!("kernel: {}\n", r.kernel_note.as_deref().unwrap_or("not computed"));
    };
    let mut out = String::new();
    let _ = writeln!(out, "kernel slices up to degree {}:", r.max_degree);
    let _ = writeln!(out, "  degree  left  right  bottom  kernel  surjective");
    for s in &k.splitting {
        let _ = writeln!(
            out,
            "  {:>6}  {:>4}  {:>5}  {:>6}  {:>6}  {}",
            s.degree,
            s.left,
            s.right,
            s.bottom,
            s.kernel,
            if s.surjective { "yes" } else { "no" }
        );
    }
    out.push_str(&render_splitting(r.max_degree, k));
    out
}

fn render_splitting(max_degree: u32, k: &KernelReport) -> String {
    let mut out = String::new();
    if k.all_surjective {
        let _ = writeln!(
            out,
            "splitting: difference map surjective in every even degree <= {max_degree}"
        );
    } else {
        let bad: Vec<u32> = k.splitting.iter().filter(|s| !s.surjective).map(|s| s.degree).collect();
        let _ = writeln!(out, "splitting: FAILS in degrees {}", join(&bad, " "));
    }
    let _ = writeln!(
        out,
        "dimension identity ker = left + right - bottom: {}",
        if k.split_dimensions_hold { "holds" } else { "FAILS" }
    );
    out
}

pub fn render_hilbert(r: &AnalysisReport) -> String {
    let Some(k) = &r.kernel else {
        return format!("hilbert: {}\n", r.kernel_note.as_deref().unwrap_or("not computed"));
    };
    let h = &k.hilbert;
    let mut out = String::new();
    match &h.closed_form {
        Some(cf) => {
            let _ = writeln!(out, "hilbert: {cf}");
        }
        None => {
            let _ = writeln!(out, "hilbert: no closed form (module not certified free)");
        }
    }
    let even: Vec<String> = h
        .truncated
        .iter()
        .enumerate()
        .filter(|(d, _)| d % 2 == 0)
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    let _ = writeln!(out, "hilbert coefficients (even degrees): {}", even.join(" "));
    if !h.consistent {
        let _ = writeln!(out, "hilbert: closed form DISAGREES with slice dimensions");
    }
    out
}

pub fn render_basis(r: &AnalysisReport) -> String {
    let Some(k) = &r.kernel else {
        return format!("basis: {}\n", r.kernel_note.as_deref().unwrap_or("not computed"));
    };
    let f = &k.freeness;
    let mut out = String::new();
    let gens: Vec<String> = k
        .generators
        .iter()
        .map(|g| format!("[{}] {}", g.degree, g.element))
        .collect();
    let _ = writeln!(out, "generators up to degree {}: {}", f.up_to_degree, gens.join(", "));
    match f.verdict.as_str() {
        "free" => {
            let _ = writeln!(out, "freeness: FREE up to degree {}", f.up_to_degree);
            let _ = writeln!(out, "basis degrees: {}", join(&f.basis_degrees, " "));
            let _ = writeln!(out, "basis: {}", f.basis.join(", "));
        }
        "not-free" => {
            let _ = writeln!(out, "freeness: NOT FREE");
            if let Some(w) = &f.witness {
                let _ = writeln!(
                    out,
                    "torsion witness: ({}) * {} = 0 in degree {} ({})",
                    w.annihilator,
                    w.element,
                    w.degree,
                    if w.verified { "verified by substitution" } else { "NOT verified" }
                );
            }
            if let Some(s) = &f.syzygy {
                let _ = writeln!(out, "relation in degree {}: {}", s.degree, s.relation);
            }
        }
        _ => {
            let _ = writeln!(
                out,
                "freeness: INCONCLUSIVE ({})",
                f.reason.as_deref().unwrap_or("no reason given")
            );
        }
    }
    let _ = writeln!(out, "freeness vs formality: {}", k.freeness_vs_formality);
    out
}

pub fn render_cm(r: &AnalysisReport) -> String {
    let c = &r.cohen_macaulay;
    let mut out = String::new();
    match c.status.as_str() {
        "asserted" => {
            let _ = writeln!(out, "cohen-macaulay: asserted, not independently checked");
        }
        "not-computed" => {
            let _ = writeln!(out, "cohen-macaulay: not computed");
        }
        status => {
            let _ = writeln!(
                out,
                "cohen-macaulay: {status}, sequence [{}] of degrees [{}], length {} (krull dimension {})",
                c.sequence.join(", "),
                join(&c.degrees, " "),
                c.length,
                c.krull_dimension
            );
            if let Some(h) = c.verified_up_to {
                let _ = writeln!(out, "regular sequence verified up to degree {h}");
            }
            if let Some(seed) = c.seed {
                let _ = writeln!(out, "sequence search: {} attempt(s), seed {seed}", c.attempts.len());
            }
            if c.status != "verified" {
                for a in &c.attempts {
                    let _ = writeln!(out, "  [{}]: {}", a.sequence.join(", "), a.outcome);
                }
            }
        }
    }
    if let Some(n) = &c.note {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn render_oracle(r: &AnalysisReport) -> String {
    let Some(o) = &r.oracle else {
        return String::new();
    };
    let bad: Vec<u32> = o
        .degrees
        .iter()
        .filter(|d| !d.same_span || d.primary_dim != d.oracle_dim)
        .map(|d| d.degree)
        .collect();
    if o.agree {
        format!(
            "oracle: brute-force slices agree in {} degrees\n",
            o.degrees.len()
        )
    } else {
        format!("oracle: DISAGREES in degrees {}\n", join(&bad, " "))
    }
}

fn render_status(r: &AnalysisReport) -> String {
    if r.inconsistencies.is_empty() {
        return "status: consistent\n".to_string();
    }
    let mut out = String::from("status: INCONSISTENT\n");
    for i in &r.inconsistencies {
        let _ = writeln!(out, "  - {i}");
    }
    out
}

/// Full report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = render_header(r);
    if let Some(k) = &r.kernel {
        let dims: Vec<String> = k
            .splitting
            .iter()
            .map(|s| format!("{}:{}", s.degree, s.kernel))
            .collect();
        let _ = writeln!(out, "slice dimensions: {}", dims.join(" "));
        out.push_str(&render_splitting(r.max_degree, k));
    } else {
        let _ = writeln!(out, "kernel: {}", r.kernel_note.as_deref().unwrap_or("not computed"));
    }
    if r.kernel.is_some() {
        out.push_str(&render_basis(r));
        out.push_str(&render_hilbert(r));
    }
    out.push_str(&render_cm(r));
    out.push_str(&render_oracle(r));
    out.push_str(&render_status(r));
    out
}

/// Report section selected by a subcommand, followed by the status line.
pub fn render_section(r: &AnalysisReport, section: Section) -> String {
    let mut out = match section {
        Section::Full => return render_text(r),
        Section::Hilbert => render_hilbert(r),
        Section::Kernel => render_kernel(r),
        Section::Formality => render_formality(r),
        Section::Basis => render_basis(r),
    };
    out.push_str(&render_oracle(r));
    out.push_str(&render_status(r));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    Full,
    Hilbert,
    Kernel,
    Formality,
    Basis,
}
