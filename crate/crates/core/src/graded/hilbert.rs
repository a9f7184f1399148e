use std::fmt;

use serde::Serialize;

use super::GradedRing;

/// Rational generating function `numerator / prod (1 - t^d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    /// Sparse numerator as `(degree, coefficient)`, ascending by degree.
    pub numerator: Vec<(u32, i64)>,
    /// Degrees `d` of the denominator factors `(1 - t^d)`, ascending.
    pub denominator: Vec<u32>,
}

impl ClosedForm {
    pub fn new(numerator: impl IntoIterator<Item = (u32, i64)>, mut denominator: Vec<u32>) -> Self {
        let mut num: Vec<(u32, i64)> = Vec::new();
        let mut raw: Vec<(u32, i64)> = numerator.into_iter().collect();
        raw.sort_by_key(|&(d, _)| d);
        for (d, c) in raw {
            match num.last_mut() {
                Some((e, acc)) if *e == d => *acc += c,
                _ => num.push((d, c)),
            }
        }
        num.retain(|&(_, c)| c != 0);
        denominator.sort_unstable();
        ClosedForm {
            numerator: num,
            denominator,
        }
    }

    /// Power-series coefficients `c_0..=c_max`.
    pub fn expand(&self, max_degree: u32) -> Vec<i64> {
        let n = max_degree as usize + 1;
        let mut c = vec![0i64; n];
        for &(d, a) in &self.numerator {
            if (d as usize) < n {
                c[d as usize] += a;
            }
        }
        // Multiply by 1/(1 - t^d) as a running sum with stride d.
        for &d in &self.denominator {
            let d = d as usize;
            for i in d..n {
                c[i] += c[i - d];
            }
        }
        c
    }
}

fn format_numerator(num: &[(u32, i64)]) -> String {
    if num.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, &(d, c)) in num.iter().enumerate() {
        if i > 0 {
            out.push_str(if c < 0 { " - " } else { " + " });
        } else if c < 0 {
            out.push('-');
        }
        let a = c.unsigned_abs();
        match (d, a) {
            (0, a) => out.push_str(&a.to_string()),
            (d, 1) => out.push_str(&format!("t^{d}")),
            (d, a) => out.push_str(&format!("{a}t^{d}")),
        }
    }
    out
}

impl fmt::Display for ClosedForm {
    /// `(1 + t^6) / (1-t^4)^2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_numerator(&self.numerator);
        if self.numerator.len() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        if self.denominator.is_empty() {
            return Ok(());
        }
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &d in &self.denominator {
            match groups.last_mut() {
                Some((e, k)) if *e == d => *k += 1,
                _ => groups.push((d, 1)),
            }
        }
        let factors: Vec<String> = groups
            .iter()
            .map(|&(d, k)| {
                if k == 1 {
                    format!("(1-t^{d})")
                } else {
                    format!("(1-t^{d})^{k}")
                }
            })
            .collect();
        if factors.len() == 1 {
            write!(f, " / {}", factors[0])
        } else {
            write!(f, " / ({})", factors.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// `c_0..=c_D`, one entry per degree including odd ones.
    pub truncated: Vec<u64>,
    pub closed_form: Option<ClosedForm>,
}

impl HilbertSeries {
    pub fn max_degree(&self) -> u32 {
        self.truncated.len().saturating_sub(1) as u32
    }

    /// Whether the closed form, when present, expands to the truncated
    /// coefficients.
    pub fn is_consistent(&self) -> bool {
        match &self.closed_form {
            None => true,
            Some(cf) => cf
                .expand(self.max_degree())
                .iter()
                .zip(&self.truncated)
                .all(|(&a, &b)| a == b as i64),
        }
    }
}

/// Hilbert series of the ring truncated at `max_degree`, counted by a
/// product expansion independent of slice enumeration.
pub fn hilbert_series_ring(ring: &GradedRing, max_degree: u32) -> HilbertSeries {
    let cf = ClosedForm::new([(0, 1)], ring.weights().to_vec());
    let truncated = cf
        .expand(max_degree)
        .into_iter()
        .map(|c| c as u64)
        .collect();
    HilbertSeries {
        truncated,
        closed_form: Some(cf),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    #[test]
    fn ring_series_examples() {
        let u = GradedRing::new(vec![Generator::new("u", 4)]).unwrap();
        let hs = hilbert_series_ring(&u, 12);
        let expected: Vec<u64> = (0..=12).map(|d| u64::from(d % 4 == 0)).collect();
        assert_eq!(hs.truncated, expected);

        let up = GradedRing::new(vec![Generator::new("u", 4), Generator::new("p1", 4)]).unwrap();
        let hs = hilbert_series_ring(&up, 8);
        assert_eq!((hs.truncated[0], hs.truncated[4], hs.truncated[8]), (1, 2, 3));

        let hs = hilbert_series_ring(&GradedRing::scalars(), 6);
        assert_eq!(hs.truncated, vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(hs.closed_form.unwrap().to_string(), "1");
    }

    #[test]
    fn closed_form_display() {
        let cf = ClosedForm::new([(0, 1), (6, 1)], vec![4, 4]);
        assert_eq!(cf.to_string(), "(1 + t^6) / (1-t^4)^2");
        let cf = ClosedForm::new([(0, 1), (8, 1)], vec![8, 4, 4]);
        assert_eq!(cf.to_string(), "(1 + t^8) / ((1-t^4)^2 (1-t^8))");
        let cf = ClosedForm::new([(4, 2)], vec![2]);
        assert_eq!(cf.to_string(), "2t^4 / (1-t^2)");
    }

    #[test]
    fn closed_form_expansion() {
        let cf = ClosedForm::new([(0, 1), (6, 1)], vec![4, 4]);
        assert_eq!(&cf.expand(10)[..], &[1, 0, 0, 0, 2, 0, 1, 0, 3, 0, 2]);
    }
}
