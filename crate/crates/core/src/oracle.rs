//! Brute-force recomputation of kernel slices.
//!
//! Shares nothing with the primary path beyond the raw generator images:
//! monomials are found by scanning an exponent box, images are expanded by
//! a local multiplication routine, and the nullspace comes from a plain
//! rational Gauss-Jordan elimination.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::graded::{GradedRing, RingMap};
use crate::linalg::Rational;
use crate::mvkernel::{KernelModule, ModuleSetup};

type Terms = HashMap<Vec<u32>, Rational>;

fn box_monomials(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    let bounds: Vec<u32> = weights.iter().map(|w| d / w).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    loop {
        let deg: u32 = cur.iter().zip(weights).map(|(e, w)| e * w).sum();
        if deg == d {
            out.push(cur.clone());
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            if cur[i] < bounds[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn multiply(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn substitute(map: &RingMap, exps: &[u32]) -> Terms {
    let n = map.target().nvars();
    let mut acc: Terms = [(vec![0; n], Rational::one())].into_iter().collect();
    for (img, &e) in map.images().iter().zip(exps) {
        let img: Terms = img.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        for _ in 0..e {
            acc = multiply(&acc, &img);
        }
    }
    acc
}

/// Gauss-Jordan over the rationals; returns the nullspace basis.
fn gauss_jordan_nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    ncols - gauss_jordan_nullspace(rows.to_vec(), ncols).len()
}

/// Kernel vectors as `(left terms, right terms)` pairs.
#[derive(Clone, Debug)]
pub struct OracleSlice {
    pub degree: u32,
    pub basis: Vec<(Terms, Terms)>,
}

pub fn brute_force_slice(setup: &ModuleSetup, d: u32) -> OracleSlice {
    let left = box_monomials(setup.left.weights(), d);
    let right = box_monomials(setup.right.weights(), d);
    let mut columns: Vec<Terms> = left.iter().map(|m| substitute(&setup.pi1, m)).collect();
    columns.extend(right.iter().map(|m| {
        let mut t = substitute(&setup.pi2, m);
        for c in t.values_mut() {
            *c = -c.clone();
        }
        t
    }));
    let row_keys: BTreeSet<Vec<u32>> = columns.iter().flat_map(|t| t.keys().cloned()).collect();
    let ncols = columns.len();
    let rows: Vec<Vec<Rational>> = row_keys
        .iter()
        .map(|k| {
            columns
                .iter()
                .map(|t| t.get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    let basis = gauss_jordan_nullspace(rows, ncols)
        .into_iter()
        .map(|v| {
            let mut l = Terms::new();
            let mut r = Terms::new();
            for (i, x) in v.into_iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if i < left.len() {
                    l.insert(left[i].clone(), x);
                } else {
                    r.insert(right[i - left.len()].clone(), x);
                }
            }
            (l, r)
        })
        .collect();
    OracleSlice { degree: d, basis }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleDegree {
    pub degree: u32,
    pub primary_dim: usize,
    pub oracle_dim: usize,
    pub same_span: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub degrees: Vec<OracleDegree>,
    pub agree: bool,
}

fn poly_terms(ring: &GradedRing, p: &crate::graded::Polynomial) -> Terms {
    debug_assert_eq!(ring.nvars(), p.nvars());
    p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect()
}

/// Compares dimensions and spans of the primary slices with the brute-force
/// ones in every even degree up to `max_degree`.
pub fn compare(km: &KernelModule, max_degree: u32) -> OracleComparison {
    let setup = km.setup();
    let top = max_degree.min(km.max_degree());
    let degrees: Vec<OracleDegree> = (0..=top)
        .step_by(2)
        .map(|d| {
            let oracle = brute_force_slice(setup, d);
            let primary: Vec<(Terms, Terms)> = km
                .slice_elements(d)
                .iter()
                .map(|e| (poly_terms(&setup.left, &e.left), poly_terms(&setup.right, &e.right)))
                .collect();
            let mut keys: BTreeSet<(u8, Vec<u32>)> = BTreeSet::new();
            for (l, r) in primary.iter().chain(&oracle.basis) {
                keys.extend(l.keys().map(|k| (0, k.clone())));
                keys.extend(r.keys().map(|k| (1, k.clone())));
            }
            let keys: Vec<(u8, Vec<u32>)> = keys.into_iter().collect();
            let vectorize = |(l, r): &(Terms, Terms)| -> Vec<Rational> {
                keys.iter()
                    .map(|(side, k)| {
                        let t = if *side == 0 { l } else { r };
                        t.get(k).cloned().unwrap_or_else(Rational::zero)
                    })
                    .collect()
            };
            let a: Vec<Vec<Rational>> = primary.iter().map(vectorize).collect();
            let b: Vec<Vec<Rational>> = oracle.basis.iter().map(vectorize).collect();
            let both: Vec<Vec<Rational>> = a.iter().chain(&b).cloned().collect();
            let (ra, rb, rab) = (rank(&a, keys.len()), rank(&b, keys.len()), rank(&both, keys.len()));
            OracleDegree {
                degree: d,
                primary_dim: a.len(),
                oracle_dim: b.len(),
                same_span: ra == a.len() && rb == b.len() && ra == rb && rab == ra,
            }
        })
        .collect();
    let agree = degrees
        .iter()
        .all(|x| x.same_span && x.primary_dim == x.oracle_dim);
    OracleComparison { degrees, agree }
}
