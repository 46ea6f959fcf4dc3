//! Parameters, residues, separateness and the separability polynomials.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_multipartitions, enumerate_standard_tableaux, Box, Flavor, Label, Multipartition, StandardTableau};
use crate::error::{Error, Result};
use crate::scalar::{approx_eq, parse_scalar, Precision, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "nondeg")]
    Nondegenerate,
    #[serde(rename = "deg")]
    Degenerate,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nondeg" | "nondegenerate" => Ok(Variant::Nondegenerate),
            "deg" | "degenerate" => Ok(Variant::Degenerate),
            _ => Err(Error::InvalidParameter(format!("unknown variant {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Nondegenerate => "nondeg",
            Variant::Degenerate => "deg",
        }
    }
}

/// Variant, flavor, `q`, `Q_1..Q_m` and the working precision.
///
/// The degenerate variant has no `q`; it is stored as 1 and `eps_hecke` as 0.
#[derive(Clone, Debug)]
pub struct ParameterSet {
    pub variant: Variant,
    pub flavor: Flavor,
    pub q: Scalar,
    pub qs: Vec<Scalar>,
    pub eps_hecke: Scalar,
    pub precision: Precision,
}

/// Residues of a tableau and their q-values.
#[derive(Clone, Debug)]
pub struct ResidueSequence {
    pub values: Vec<Scalar>,
    pub qvalues: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    variant: Variant,
    flavor: Flavor,
    q: String,
    #[serde(rename = "Q")]
    qs: Vec<String>,
    prec_bits: u32,
    epsilon: f64,
}

impl ParameterSet {
    pub fn new(variant: Variant, flavor: Flavor, q: Scalar, qs: Vec<Scalar>, precision: Precision) -> Result<Self> {
        let bits = precision.bits;
        let q = q.with_prec(bits);
        let qs: Vec<Scalar> = qs.iter().map(|x| x.with_prec(bits)).collect();
        let eps_hecke = match variant {
            Variant::Nondegenerate => {
                let one = Scalar::one(bits);
                if q.is_zero() || approx_eq(&q, &one, &precision) || approx_eq(&q, &-&one, &precision) {
                    return Err(Error::InvalidParameter("q must avoid 0 and ±1".into()));
                }
                if (&q + &q.recip()).abs_f64() <= precision.epsilon {
                    return Err(Error::InvalidParameter("q + 1/q must be nonzero".into()));
                }
                if qs.iter().any(Scalar::is_zero) {
                    return Err(Error::InvalidParameter("Q_i must be nonzero".into()));
                }
                &q - &q.recip()
            }
            Variant::Degenerate => {
                if flavor == Flavor::Ss {
                    return Err(Error::InvalidParameter("degenerate variant has flavors zero and s only".into()));
                }
                Scalar::zero(bits)
            }
        };
        let q = if variant == Variant::Degenerate { Scalar::one(bits) } else { q };
        Ok(Self { variant, flavor, q, qs, eps_hecke, precision })
    }

    /// Parses `q` and a list of `Q_i` given as strings.
    pub fn parse(variant: Variant, flavor: Flavor, q: &str, qs: &[&str], precision: Precision) -> Result<Self> {
        let bits = precision.bits;
        let q = parse_scalar(q, bits)?;
        let qs = qs.iter().map(|s| parse_scalar(s, bits)).collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(variant, flavor, q, qs, precision)
    }

    pub fn m(&self) -> usize {
        self.qs.len()
    }

    pub fn bits(&self) -> u32 {
        self.precision.bits
    }

    pub fn is_degenerate(&self) -> bool {
        self.variant == Variant::Degenerate
    }

    pub fn with_qs(&self, qs: Vec<Scalar>) -> Result<Self> {
        Self::new(self.variant, self.flavor, self.q.clone(), qs, self.precision)
    }

    pub fn eq(&self, a: &Scalar, b: &Scalar) -> bool {
        approx_eq(a, b, &self.precision)
    }

    /// Degree of the cyclotomic polynomial.
    pub fn degree(&self) -> usize {
        2 * self.m() + self.flavor.n_strict()
    }

    pub fn qval(&self, x: &Scalar) -> Result<Scalar> {
        match self.variant {
            Variant::Nondegenerate => {
                if x.is_zero() {
                    return Err(Error::DivisionByZero("qval"));
                }
                let qx = &self.q * x;
                let num = &qx + &qx.recip();
                let den = &self.q + &self.q.recip();
                Ok((num / den).scale_int(2))
            }
            Variant::Degenerate => Ok(x * &(x + &Scalar::one(self.bits()))),
        }
    }

    /// `b₊(x) = q(x)/2 + sqrt(q(x)²/4 − 1)`.
    pub fn b_plus(&self, x: &Scalar) -> Result<Scalar> {
        if self.is_degenerate() {
            return Err(Error::InvalidParameter("b_plus is defined for the nondegenerate variant".into()));
        }
        let half = self.qval(x)? / Scalar::from_int(2, self.bits());
        let disc = (&half.square() - &Scalar::one(self.bits())).sqrt_principal();
        Ok(half + disc)
    }

    pub fn label_value(&self, label: Label) -> Scalar {
        let bits = self.bits();
        match (self.variant, label) {
            (_, Label::Ordinary(l)) => self.qs[l - 1].clone(),
            (Variant::Nondegenerate, Label::ZeroPlus) => Scalar::one(bits),
            (Variant::Nondegenerate, Label::ZeroMinus) => Scalar::from_int(-1, bits),
            (Variant::Degenerate, _) => Scalar::zero(bits),
        }
    }

    pub fn residue(&self, shape: &Multipartition, b: Box) -> Scalar {
        let base = self.label_value(shape.label(b.comp));
        let d = b.col as i64 - b.row as i64;
        match self.variant {
            Variant::Nondegenerate => base * self.q.powi(2 * d),
            Variant::Degenerate => base + Scalar::from_int(d, self.bits()),
        }
    }

    pub fn residue_sequence(&self, t: &StandardTableau) -> Result<ResidueSequence> {
        let values: Vec<Scalar> = (1..=t.n()).map(|k| self.residue(t.shape(), t.box_of(k))).collect();
        let qvalues = values.iter().map(|v| self.qval(v)).collect::<Result<_>>()?;
        Ok(ResidueSequence { values, qvalues })
    }

    pub fn is_separate(&self, shape: &Multipartition) -> bool {
        enumerate_standard_tableaux(shape).iter().all(|t| match self.residue_sequence(t) {
            Ok(rs) => rs.qvalues.windows(2).all(|w| !self.eq(&w[0], &w[1])),
            Err(_) => false,
        })
    }

    /// Factors `(a, b)` of the separability polynomial, each contributing `a − b`.
    pub fn separability_factors(&self, n: usize) -> Vec<(Scalar, Scalar)> {
        let bits = self.bits();
        let one = Scalar::one(bits);
        let int = |v: i64| Scalar::from_int(v, bits);
        let n = n as i64;
        let mut f = Vec::new();
        match self.variant {
            Variant::Nondegenerate => {
                let qp = |e: i64| self.q.powi(e);
                for t in 1..=n {
                    f.push((qp(2 * t), one.clone()));
                    if self.flavor != Flavor::Zero {
                        f.push((qp(2 * t), -&one));
                    }
                }
                for qi in &self.qs {
                    let sq = qi.square();
                    for t in 3 - n..n {
                        f.push((sq.clone(), qp(-2 * t)));
                    }
                    for t in 1 - n..=n {
                        f.push((sq.clone(), qp(-4 * t)));
                    }
                }
                for (i, a) in self.qs.iter().enumerate() {
                    for b in &self.qs[i + 1..] {
                        for t in 1 - n..n {
                            f.push((a.clone(), b * &qp(-2 * t)));
                            f.push((a * b, qp(-2 * (t + 1))));
                        }
                    }
                }
            }
            Variant::Degenerate => {
                for t in 1..=n {
                    f.push((int(t), Scalar::zero(bits)));
                }
                for qi in &self.qs {
                    for t in 3 - n..n {
                        f.push((qi.scale_int(2), int(-t)));
                    }
                    for t in 1 - n..=n {
                        f.push((qi.clone(), int(-t)));
                    }
                }
                for (i, a) in self.qs.iter().enumerate() {
                    for b in &self.qs[i + 1..] {
                        for t in 1 - n..n {
                            f.push((a - b, int(-t)));
                            f.push((a + b, int(-t - 1)));
                        }
                    }
                }
            }
        }
        f
    }

    pub fn separability_polynomial(&self, n: usize) -> Scalar {
        self.separability_factors(n)
            .iter()
            .fold(Scalar::one(self.bits()), |acc, (a, b)| acc * (a - b))
    }

    /// Zero test on the product: zero iff some factor `a − b` is negligible
    /// against `|a| + |b|`.
    pub fn separability_vanishes(&self, n: usize) -> bool {
        let eps = self.precision.epsilon;
        self.separability_factors(n).iter().any(|(a, b)| (a - b).abs_f64() <= eps * (a.abs_f64() + b.abs_f64()))
    }

    /// `P_n ≠ 0` iff every shape of size `n + 1` is separate.
    pub fn verify_separate_equivalence(&self, n: usize) -> bool {
        let nonzero = !self.separability_vanishes(n);
        let all_sep = enumerate_multipartitions(self.flavor, self.m(), n + 1).iter().all(|l| self.is_separate(l));
        nonzero == all_sep
    }

    pub fn same_class(&self, x: &Scalar, y: &Scalar) -> bool {
        if self.eq(x, y) {
            return true;
        }
        match self.variant {
            Variant::Nondegenerate => self.eq(&(x * y), &self.q.powi(-2)),
            Variant::Degenerate => self.eq(&(x + y), &Scalar::from_int(-1, self.bits())),
        }
    }

    pub fn forbidden_pair(&self, u: &Scalar, v: &Scalar) -> bool {
        match self.variant {
            Variant::Nondegenerate => {
                let q2 = self.q.powi(2);
                let cands = [u * &q2, u / &q2, u.recip(), (u * &q2.square()).recip()];
                cands.iter().any(|c| self.eq(v, c))
            }
            Variant::Degenerate => {
                let one = Scalar::one(self.bits());
                let d = u - v;
                let s = u + v;
                self.eq(&d, &one)
                    || self.eq(&d, &-&one)
                    || self.eq(&s, &Scalar::zero(self.bits()))
                    || self.eq(&s, &Scalar::from_int(-2, self.bits()))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let full = |s: &Scalar| {
            let [re, im] = s.to_strings();
            if s.is_real() {
                re
            } else {
                format!("{re}+{im}i")
            }
        };
        serde_json::to_value(ParamsJson {
            variant: self.variant,
            flavor: self.flavor,
            q: full(&self.q),
            qs: self.qs.iter().map(full).collect(),
            prec_bits: self.precision.bits,
            epsilon: self.precision.epsilon,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: ParamsJson = serde_json::from_value(v.clone()).map_err(|e| Error::Dump(e.to_string()))?;
        let precision = Precision::new(p.prec_bits, p.epsilon)?;
        let qs: Vec<&str> = p.qs.iter().map(String::as_str).collect();
        Self::parse(p.variant, p.flavor, &p.q, &qs, precision)
    }
}
