//! Brute-force cyclotomic quotient from its PBW basis, its left-regular
//! representation, and the trace-form semisimplicity test.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::combinatorics::Flavor;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SparseMatrix};
use crate::params::{ParameterSet, Variant};
use crate::scalar::Scalar;

/// `X₁^a X₂^b C₁^{c&1} C₂^{c>>1} T^t`; the second exponent is zero when n = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PbwWord {
    pub x: [i32; 2],
    pub c: u8,
    pub t: bool,
}

impl PbwWord {
    pub const ONE: PbwWord = PbwWord { x: [0, 0], c: 0, t: false };

    pub fn x_exponents(&self, n: usize) -> Vec<i32> {
        self.x[..n].to_vec()
    }

    pub fn c_bits(&self, n: usize) -> Vec<u8> {
        (0..n).map(|k| (self.c >> k) & 1).collect()
    }

    pub fn perm(&self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (1..=n).collect();
        if self.t {
            p.swap(0, 1);
        }
        p
    }
}

/// Sparse combination of PBW words.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    pub terms: BTreeMap<PbwWord, Scalar>,
}

impl AlgebraElement {
    pub fn word(w: PbwWord, bits: u32) -> Self {
        Self::term(w, Scalar::one(bits))
    }

    pub fn term(w: PbwWord, s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(w, s);
        }
        Self { terms }
    }

    pub fn add_term(&mut self, w: PbwWord, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += s;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, s.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &AlgebraElement, s: &Scalar) {
        for (w, v) in &o.terms {
            self.add_term(*w, &(v * s));
        }
    }

    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, v| v.abs_f64() > tol);
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Scalar::abs_f64).fold(0.0, f64::max)
    }
}

/// Generators of the affine algebra, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    Xinv(usize),
    C(usize),
    T(usize),
}

/// Left multiplication by generators on PBW-ordered elements of the affine
/// algebra, straightening with the defining relations.
struct Affine<'a> {
    p: &'a ParameterSet,
    bits: u32,
}

impl<'a> Affine<'a> {
    fn new(p: &'a ParameterSet) -> Self {
        Self { p, bits: p.bits() }
    }

    fn map_terms(&self, e: &AlgebraElement, f: impl Fn(PbwWord) -> (PbwWord, i32)) -> AlgebraElement {
        let mut out = AlgebraElement::default();
        for (w, v) in &e.terms {
            let (w2, sign) = f(*w);
            if sign < 0 {
                out.add_term(w2, &-v);
            } else {
                out.add_term(w2, v);
            }
        }
        out
    }

    fn x(&self, k: usize, pow: i32, e: &AlgebraElement) -> AlgebraElement {
        self.map_terms(e, |mut w| {
            w.x[k - 1] += pow;
            (w, 1)
        })
    }

    fn c(&self, k: usize, e: &AlgebraElement) -> AlgebraElement {
        let degenerate = self.p.is_degenerate();
        self.map_terms(e, |mut w| {
            let mut sign = 1;
            if degenerate {
                if w.x[k - 1].rem_euclid(2) == 1 {
                    sign = -sign;
                }
            } else {
                w.x[k - 1] = -w.x[k - 1];
            }
            if k == 2 && w.c & 1 == 1 {
                sign = -sign;
            }
            w.c ^= 1 << (k - 1);
            (w, sign)
        })
    }

    fn t(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::default();
        for (w, v) in &e.terms {
            out.add_scaled(&self.t_word(*w), v);
        }
        out
    }

    fn cc(&self, e: &AlgebraElement) -> AlgebraElement {
        self.c(1, &self.c(2, e))
    }

    fn t_word(&self, w: PbwWord) -> AlgebraElement {
        let bits = self.bits;
        let eps = &self.p.eps_hecke;
        let one = Scalar::one(bits);
        let mut out = AlgebraElement::default();
        let step = |k: usize, d: i32| {
            let mut r = w;
            r.x[k - 1] -= d;
            AlgebraElement::word(r, bits)
        };
        let degenerate = self.p.is_degenerate();
        if w.x[0] != 0 || w.x[1] != 0 {
            let k = if w.x[0] != 0 { 1 } else { 2 };
            let d = w.x[k - 1].signum();
            let rest = step(k, d);
            let trest = self.t(&rest);
            let neg = -&one;
            if degenerate {
                // s x_1 = x_2 s − (1 + c_1c_2);  s x_2 = x_1 s + 1 − c_1c_2
                let other = 3 - k;
                out.add_scaled(&self.x(other, 1, &trest), &one);
                let sign = if k == 1 { &neg } else { &one };
                out.add_scaled(&rest, sign);
                out.add_scaled(&self.cc(&rest), &neg);
            } else {
                let me = -eps;
                match (k, d) {
                    (1, 1) => {
                        // T X_1 = X_2 T − ε(X_2 + C_1C_2X_1)
                        out.add_scaled(&self.x(2, 1, &trest), &one);
                        out.add_scaled(&self.x(2, 1, &rest), &me);
                        out.add_scaled(&self.cc(&self.x(1, 1, &rest)), &me);
                    }
                    (1, _) => {
                        // T X_1⁻¹ = X_2⁻¹T + εX_1⁻¹ + εX_2⁻¹C_1C_2
                        out.add_scaled(&self.x(2, -1, &trest), &one);
                        out.add_scaled(&self.x(1, -1, &rest), eps);
                        out.add_scaled(&self.x(2, -1, &self.cc(&rest)), eps);
                    }
                    (_, 1) => {
                        // T X_2 = X_1 T + ε(1 + C_2C_1)X_2
                        out.add_scaled(&self.x(1, 1, &trest), &one);
                        let x2 = self.x(2, 1, &rest);
                        out.add_scaled(&x2, eps);
                        out.add_scaled(&self.c(2, &self.c(1, &x2)), eps);
                    }
                    _ => {
                        // T X_2⁻¹ = X_1⁻¹T − εX_1⁻¹ + εX_1⁻¹C_1C_2
                        out.add_scaled(&self.x(1, -1, &trest), &one);
                        out.add_scaled(&self.x(1, -1, &rest), &me);
                        out.add_scaled(&self.x(1, -1, &self.cc(&rest)), eps);
                    }
                }
            }
            return out;
        }
        if w.c & 1 == 1 {
            // T C_1 = C_2 T
            let rest = PbwWord { c: w.c & 2, ..w };
            return self.c(2, &self.t_word(rest));
        }
        if w.c & 2 == 2 {
            // T C_2 = C_1 T − ε(C_1 − C_2)
            let rest = AlgebraElement::word(PbwWord { c: 0, ..w }, bits);
            out.add_scaled(&self.c(1, &self.t(&rest)), &one);
            if !degenerate {
                out.add_scaled(&self.c(1, &rest), &-eps);
                out.add_scaled(&self.c(2, &rest), eps);
            }
            return out;
        }
        if w.t {
            out.add_term(PbwWord::ONE, &one);
            if !degenerate {
                out.add_term(PbwWord { t: true, ..PbwWord::ONE }, eps);
            }
        } else {
            out.add_term(PbwWord { t: true, ..PbwWord::ONE }, &one);
        }
        out
    }

    fn gen(&self, g: Gen, e: &AlgebraElement) -> AlgebraElement {
        match g {
            Gen::X(k) => self.x(k, 1, e),
            Gen::Xinv(k) => self.x(k, -1, e),
            Gen::C(k) => self.c(k, e),
            Gen::T(_) => self.t(e),
        }
    }

    /// `w · e` for a PBW word `w`.
    fn word(&self, w: PbwWord, e: &AlgebraElement) -> AlgebraElement {
        let mut r = e.clone();
        if w.t {
            r = self.t(&r);
        }
        if w.c & 2 == 2 {
            r = self.c(2, &r);
        }
        if w.c & 1 == 1 {
            r = self.c(1, &r);
        }
        r = self.x(2, w.x[1], &r);
        self.x(1, w.x[0], &r)
    }
}

/// Normal form in the affine algebra of a word in the generators.
pub fn affine_normal_form(word: &[Gen], p: &ParameterSet, n: usize) -> Result<AlgebraElement> {
    check_word(word, p, n)?;
    let a = Affine::new(p);
    let mut e = AlgebraElement::word(PbwWord::ONE, p.bits());
    for g in word.iter().rev() {
        e = a.gen(*g, &e);
    }
    Ok(e)
}

fn check_word(word: &[Gen], p: &ParameterSet, n: usize) -> Result<()> {
    if n > 2 {
        return Err(Error::BudgetExceeded(format!("oracle supports n ≤ 2, got {n}")));
    }
    for g in word {
        let ok = match *g {
            Gen::X(k) | Gen::C(k) => (1..=n).contains(&k),
            Gen::Xinv(k) => (1..=n).contains(&k) && !p.is_degenerate(),
            Gen::T(i) => i == 1 && n == 2,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!("generator {g:?} not available for n = {n}")));
        }
    }
    Ok(())
}

/// Coefficients (constant term first) of the monic polynomial `F` with
/// `F(X₁) = 0` in the quotient: `Xᵐ f(X)` (degenerate: `g(x)`).
pub fn cyclotomic_coefficients(p: &ParameterSet) -> Result<Vec<Scalar>> {
    let bits = p.bits();
    let mul = |a: &[Scalar], b: &[Scalar]| {
        let mut out = vec![Scalar::zero(bits); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        out
    };
    let one = Scalar::one(bits);
    let zero = Scalar::zero(bits);
    let mut f = vec![one.clone()];
    match p.variant {
        Variant::Nondegenerate => {
            if p.flavor != Flavor::Zero {
                f = mul(&f, &[-&one, one.clone()]);
            }
            if p.flavor == Flavor::Ss {
                f = mul(&f, &[one.clone(), one.clone()]);
            }
            for q in &p.qs {
                f = mul(&f, &[one.clone(), -p.qval(q)?, one.clone()]);
            }
        }
        Variant::Degenerate => {
            if p.flavor == Flavor::S {
                f = mul(&f, &[zero.clone(), one.clone()]);
            }
            for q in &p.qs {
                f = mul(&f, &[-p.qval(q)?, zero.clone(), one.clone()]);
            }
        }
    }
    Ok(f)
}

/// The cyclotomic quotient with its PBW basis and reduction tables.
pub struct Quotient<'a> {
    p: &'a ParameterSet,
    n: usize,
    r: usize,
    pub basis: Vec<PbwWord>,
    index: HashMap<PbwWord, usize>,
    /// `X₁^a mod F` for a in `x1_lo..`.
    x1_rem: Vec<Vec<Scalar>>,
    x1_lo: i32,
    /// Reductions of words with X₂-exponent outside `[0, r)`.
    x2_table: HashMap<PbwWord, Vec<(usize, Scalar)>>,
}

const X1_SPAN: i32 = 40;

impl<'a> Quotient<'a> {
    pub fn new(p: &'a ParameterSet, n: usize) -> Result<Self> {
        if n == 0 || n > 2 {
            return Err(Error::BudgetExceeded(format!("oracle supports 1 ≤ n ≤ 2, got {n}")));
        }
        let r = p.degree();
        let bits = p.bits();
        let mut basis = Vec::new();
        let x2_range = if n == 2 { r as i32 } else { 1 };
        let cs: u8 = if n == 2 { 4 } else { 2 };
        let ts: &[bool] = if n == 2 { &[false, true] } else { &[false] };
        for a in 0..r as i32 {
            for b in 0..x2_range {
                for c in 0..cs {
                    for &t in ts {
                        basis.push(PbwWord { x: [a, b], c, t });
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let f = cyclotomic_coefficients(p)?;
        let zero = Scalar::zero(bits);
        let mut x1_rem = Vec::new();
        let x1_lo = if p.is_degenerate() { 0 } else { -X1_SPAN };
        if r > 0 {
            let times_x = |v: &[Scalar]| {
                let mut out = vec![zero.clone(); r];
                out[1..r].clone_from_slice(&v[..r - 1]);
                let top = &v[r - 1];
                for k in 0..r {
                    out[k] -= &(top * &f[k]);
                }
                out
            };
            let inv_x = |v: &[Scalar]| -> Result<Vec<Scalar>> {
                // X⁻¹ = −(F(X) − F(0)) / (X·F(0))
                if f[0].is_zero() {
                    return Err(Error::DivisionByZero("X₁ is not invertible in the quotient"));
                }
                let c = &v[0] / &f[0];
                let mut out = vec![zero.clone(); r];
                for k in 0..r {
                    let next = if k + 1 < r { v[k + 1].clone() } else { zero.clone() };
                    out[k] = &next - &(&c * &f[k + 1]);
                }
                Ok(out)
            };
            let mut unit = vec![zero.clone(); r];
            unit[0] = Scalar::one(bits);
            let mut neg = Vec::new();
            if !p.is_degenerate() {
                let mut v = unit.clone();
                for _ in 0..X1_SPAN {
                    v = inv_x(&v)?;
                    neg.push(v.clone());
                }
                neg.reverse();
            }
            x1_rem.extend(neg);
            let mut v = unit;
            for _ in 0..=X1_SPAN {
                x1_rem.push(v.clone());
                v = times_x(&v);
            }
        }
        let mut q = Quotient { p, n, r, basis, index, x1_rem, x1_lo, x2_table: HashMap::new() };
        if n == 2 && r > 0 {
            q.build_x2_table()?;
        }
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn x1_reduce(&self, e: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::default();
        for (w, v) in &e.terms {
            let k = w.x[0] - self.x1_lo;
            let rem = usize::try_from(k)
                .ok()
                .and_then(|k| self.x1_rem.get(k))
                .ok_or_else(|| Error::BudgetExceeded(format!("X₁ exponent {} outside the reduction table", w.x[0])))?;
            for (a, c) in rem.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(PbwWord { x: [a as i32, w.x[1]], ..*w }, &(c * v));
                }
            }
        }
        Ok(out)
    }

    /// Generators `Y·f(X₁)·T_v` of the defining ideal, as a left ideal.
    fn build_x2_table(&mut self) -> Result<()> {
        let p = self.p;
        let bits = p.bits();
        let r = self.r as i32;
        let a = Affine::new(p);
        let f = cyclotomic_coefficients(p)?;
        let shift = if p.is_degenerate() { 0 } else { p.m() as i32 };
        let mut fe = AlgebraElement::default();
        for (k, c) in f.iter().enumerate() {
            fe.add_term(PbwWord { x: [k as i32 - shift, 0], ..PbwWord::ONE }, c);
        }
        let mut fet = AlgebraElement::default();
        for (w, v) in &fe.terms {
            fet.add_term(PbwWord { t: true, ..*w }, v);
        }
        let (need_lo, need_hi) = if p.is_degenerate() { (0, r) } else { (-r, r) };
        let mut window = r + 1;
        loop {
            let lo = if p.is_degenerate() { 0 } else { -r - window };
            let hi = r - 1 + r + window;
            let mut cols: Vec<PbwWord> = Vec::new();
            for b in lo..=hi {
                for x in 0..r {
                    for c in 0..4u8 {
                        for t in [false, true] {
                            cols.push(PbwWord { x: [x, b], c, t });
                        }
                    }
                }
            }
            let dist = |w: &PbwWord| {
                if w.x[1] < 0 {
                    -w.x[1]
                } else {
                    (w.x[1] - (r - 1)).max(0)
                }
            };
            cols.sort_by_key(|w| (-dist(w), *w));
            let order: HashMap<PbwWord, usize> = cols.iter().enumerate().map(|(k, w)| (*w, k)).collect();
            let mut elim = OrderedEliminator::default();
            let y_lo = if p.is_degenerate() { 0 } else { lo - r };
            for b in y_lo..=hi + r {
                for x in 0..r {
                    for c in 0..4u8 {
                        for t in [false, true] {
                            let y = PbwWord { x: [x, b], c, t };
                            for base in [&fe, &fet] {
                                let g = self.x1_reduce(&a.word(y, base))?;
                                let row: Option<Vec<(usize, Scalar)>> =
                                    g.terms.iter().map(|(w, v)| order.get(w).map(|&k| (k, v.clone()))).collect();
                                if let Some(row) = row {
                                    elim.insert(row);
                                }
                            }
                        }
                    }
                }
            }
            let n_basis_start = cols.len() - self.basis.len();
            let mut table = HashMap::new();
            let mut complete = true;
            for (k, w) in cols.iter().enumerate().take(n_basis_start) {
                if w.x[1] < need_lo || w.x[1] > need_hi {
                    continue;
                }
                let Some(row) = elim.row_of(k) else {
                    complete = false;
                    break;
                };
                if row.iter().any(|(j, _)| *j != k && *j < n_basis_start) {
                    complete = false;
                    break;
                }
                let red: Vec<(usize, Scalar)> = row
                    .iter()
                    .filter(|(j, _)| *j != k)
                    .map(|(j, v)| (self.index[&cols[*j]], -v))
                    .collect();
                table.insert(*w, red);
            }
            if complete {
                let _ = bits;
                self.x2_table = table;
                return Ok(());
            }
            window += r;
            if window > 6 * r + 6 {
                return Err(Error::BudgetExceeded("X₂ reduction window did not close".into()));
            }
        }
    }

    /// Coordinates in the quotient basis.
    pub fn reduce(&self, e: &AlgebraElement) -> Result<Vec<Scalar>> {
        let bits = self.p.bits();
        let mut out = vec![Scalar::zero(bits); self.dim()];
        for (w, v) in &self.x1_reduce(e)?.terms {
            if let Some(&k) = self.index.get(w) {
                out[k] += v;
            } else if let Some(red) = self.x2_table.get(w) {
                for (k, c) in red {
                    out[*k] += &(c * v);
                }
            } else {
                return Err(Error::BudgetExceeded(format!("no reduction for {w:?}")));
            }
        }
        Ok(out)
    }

    pub fn to_element(&self, v: &[Scalar]) -> AlgebraElement {
        let mut e = AlgebraElement::default();
        for (k, s) in v.iter().enumerate() {
            e.add_term(self.basis[k], s);
        }
        e
    }

    /// Left-multiplication matrix of a generator on the PBW basis.
    pub fn left_matrix(&self, g: Gen) -> Result<SparseMatrix> {
        check_word(&[g], self.p, self.n)?;
        let a = Affine::new(self.p);
        let bits = self.p.bits();
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for (j, w) in self.basis.iter().enumerate() {
            let col = self.reduce(&a.gen(g, &AlgebraElement::word(*w, bits)))?;
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }
}

/// Pivot is always the lowest column index; rows stay fully reduced.
#[derive(Default)]
struct OrderedEliminator {
    rows: Vec<Vec<(usize, Scalar)>>,
    pivot_of: HashMap<usize, usize>,
}

impl OrderedEliminator {
    fn axpy(row: &[(usize, Scalar)], f: &Scalar, other: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
        let mut out = Vec::with_capacity(row.len() + other.len());
        let (mut a, mut b) = (0, 0);
        while a < row.len() || b < other.len() {
            let ca = row.get(a).map_or(usize::MAX, |e| e.0);
            let cb = other.get(b).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(row[a].clone());
                a += 1;
            } else if cb < ca {
                out.push((cb, -&(f * &other[b].1)));
                b += 1;
            } else {
                out.push((ca, &row[a].1 - &(f * &other[b].1)));
                a += 1;
                b += 1;
            }
        }
        out.retain(|(_, v)| v.abs_f64() > 1e-45);
        out
    }

    fn insert(&mut self, mut row: Vec<(usize, Scalar)>) {
        row.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
        for (k, v) in row {
            match merged.last_mut() {
                Some((lk, lv)) if *lk == k => *lv += &v,
                _ => merged.push((k, v)),
            }
        }
        let mut row = merged;
        row.retain(|(_, v)| v.abs_f64() > 1e-45);
        let hits: Vec<(usize, Scalar)> =
            row.iter().filter_map(|(k, v)| self.pivot_of.get(k).map(|&r| (r, v.clone()))).collect();
        for (r, f) in hits {
            row = Self::axpy(&row, &f, &self.rows[r]);
        }
        let Some((var, lead)) = row.first().cloned() else {
            return;
        };
        let inv = lead.recip();
        let row: Vec<(usize, Scalar)> = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
        for r in 0..self.rows.len() {
            if let Ok(pos) = self.rows[r].binary_search_by_key(&var, |e| e.0) {
                let f = self.rows[r][pos].1.clone();
                self.rows[r] = Self::axpy(&self.rows[r], &f, &row);
            }
        }
        self.pivot_of.insert(var, self.rows.len());
        self.rows.push(row);
    }

    fn row_of(&self, var: usize) -> Option<&[(usize, Scalar)]> {
        self.pivot_of.get(&var).map(|&r| self.rows[r].as_slice())
    }
}

/// Left-regular representation: the quotient and each generator's matrix.
pub struct RegularRepresentation<'a> {
    pub quotient: Quotient<'a>,
    pub gens: Vec<(Gen, SparseMatrix)>,
}

pub fn regular_representation(p: &ParameterSet, n: usize) -> Result<RegularRepresentation<'_>> {
    let quotient = Quotient::new(p, n)?;
    let mut list = vec![];
    for k in 1..=n {
        list.push(Gen::X(k));
        if !p.is_degenerate() {
            list.push(Gen::Xinv(k));
        }
        list.push(Gen::C(k));
    }
    if n == 2 {
        list.push(Gen::T(1));
    }
    let gens = list
        .into_iter()
        .map(|g| quotient.left_matrix(g).map(|m| (g, m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularRepresentation { quotient, gens })
}

impl RegularRepresentation<'_> {
    pub fn matrix(&self, g: Gen) -> &SparseMatrix {
        &self.gens.iter().find(|(h, _)| *h == g).expect("generator present").1
    }

    /// `L_w` for a basis word.
    pub fn word_matrix(&self, w: PbwWord) -> SparseMatrix {
        let bits = self.quotient.p.bits();
        let mut m = SparseMatrix::identity(self.quotient.dim(), bits);
        let mut left = |g: Gen, times: i32| {
            for _ in 0..times {
                m = self.matrix(g).mul(&m);
            }
        };
        left(Gen::T(1), i32::from(w.t));
        left(Gen::C(2), i32::from(w.c >> 1 & 1));
        left(Gen::C(1), i32::from(w.c & 1));
        left(Gen::X(2), w.x[1]);
        left(Gen::X(1), w.x[0]);
        m
    }

    /// Quotient normal form of a generator word.
    pub fn normal_form(&self, word: &[Gen]) -> Result<AlgebraElement> {
        let q = &self.quotient;
        check_word(word, q.p, q.n)?;
        let bits = q.p.bits();
        let mut v = vec![Scalar::zero(bits); q.dim()];
        v[q.index[&PbwWord::ONE]] = Scalar::one(bits);
        for g in word.iter().rev() {
            v = self.matrix(*g).apply(&v, bits);
        }
        let mut e = q.to_element(&v);
        e.prune(1e-45);
        Ok(e)
    }

    /// Largest residual of the defining relations on the regular matrices.
    pub fn relation_residual(&self) -> f64 {
        let q = &self.quotient;
        let p = q.p;
        let bits = p.bits();
        let id = SparseMatrix::identity(q.dim(), bits);
        let mut worst: f64 = 0.0;
        let mut note = |m: SparseMatrix| worst = worst.max(m.max_abs());
        for k in 1..=q.n {
            let (x, c) = (self.matrix(Gen::X(k)), self.matrix(Gen::C(k)));
            note(c.mul(c).sub(&id));
            if p.is_degenerate() {
                note(x.mul(c).add(&c.mul(x)));
            } else {
                let xi = self.matrix(Gen::Xinv(k));
                note(x.mul(xi).sub(&id));
                note(x.mul(c).sub(&c.mul(xi)));
            }
        }
        if q.n == 2 {
            let (x1, x2, c1, c2, t) = (
                self.matrix(Gen::X(1)),
                self.matrix(Gen::X(2)),
                self.matrix(Gen::C(1)),
                self.matrix(Gen::C(2)),
                self.matrix(Gen::T(1)),
            );
            let eps = &p.eps_hecke;
            let cc = c1.mul(c2);
            note(x1.mul(x2).sub(&x2.mul(x1)));
            note(c1.mul(c2).add(&c2.mul(c1)));
            note(c1.mul(x2).sub(&x2.mul(c1)));
            note(t.mul(c1).sub(&c2.mul(t)));
            if p.is_degenerate() {
                note(t.mul(t).sub(&id));
                note(t.mul(x1).sub(&x2.mul(t).sub(&id.add(&cc))));
                note(t.mul(c2).sub(&c1.mul(t)));
            } else {
                note(t.mul(t).sub(&t.scale(eps)).sub(&id));
                note(t.mul(x1).sub(&x2.mul(t).sub(&x2.add(&cc.mul(x1)).scale(eps))));
                note(t.mul(x2).sub(&x1.mul(t).add(&id.sub(&cc).mul(x2).scale(eps))));
                note(t.mul(c2).sub(&c1.mul(t).sub(&c1.sub(c2).scale(eps))));
            }
        }
        let f = cyclotomic_coefficients(p).unwrap_or_default();
        if !f.is_empty() {
            let x1 = self.matrix(Gen::X(1));
            let mut acc = SparseMatrix::zeros(q.dim(), q.dim());
            for c in f.iter().rev() {
                acc = x1.mul(&acc).add(&id.scale(c));
            }
            note(acc);
        }
        worst
    }

    /// `(ab)c − a(bc)` over the given basis index triples.
    pub fn associativity_residual(&self, triples: &[(usize, usize, usize)]) -> f64 {
        let q = &self.quotient;
        let bits = q.p.bits();
        let mut worst: f64 = 0.0;
        for &(a, b, c) in triples {
            let (la, lb) = (self.word_matrix(q.basis[a]), self.word_matrix(q.basis[b]));
            let mut ec = vec![Scalar::zero(bits); q.dim()];
            ec[c] = Scalar::one(bits);
            let right = la.apply(&lb.apply(&ec, bits), bits);
            let mut eb = vec![Scalar::zero(bits); q.dim()];
            eb[b] = Scalar::one(bits);
            let ab = la.apply(&eb, bits);
            let mut left = vec![Scalar::zero(bits); q.dim()];
            for (k, s) in ab.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let col = self.word_matrix(q.basis[k]).apply(&ec, bits);
                for (l, v) in left.iter_mut().zip(&col) {
                    *l += &(s * v);
                }
            }
            for (x, y) in left.iter().zip(&right) {
                worst = worst.max((x - y).abs_f64());
            }
        }
        worst
    }

    /// Dimension of the even center, i.e. even `z` with `gz = zg` for every
    /// generator. Each simple block of either type contributes one dimension.
    pub fn even_center_dim(&self) -> usize {
        let q = &self.quotient;
        let bits = q.p.bits();
        let d = q.dim();
        let even: Vec<usize> = (0..d).filter(|&j| q.basis[j].c.count_ones() % 2 == 0).collect();
        let words: Vec<SparseMatrix> = even.iter().map(|&j| self.word_matrix(q.basis[j])).collect();
        let mut one = vec![Scalar::zero(bits); d];
        one[q.index[&PbwWord::ONE]] = Scalar::one(bits);
        let mut elim = OrderedEliminator::default();
        for (_, lg) in &self.gens {
            let g = lg.apply(&one, bits);
            let mut by_col: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); d];
            for (i, k, v) in lg.entries() {
                by_col[k].push((i, v));
            }
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
            for (u, (&j, lw)) in even.iter().zip(&words).enumerate() {
                let mut col = vec![Scalar::zero(bits); d];
                for &(i, v) in &by_col[j] {
                    col[i] += v;
                }
                for (i, v) in lw.apply(&g, bits).iter().enumerate() {
                    col[i] -= v;
                }
                for (i, v) in col.into_iter().enumerate() {
                    if !v.is_zero() {
                        rows[i].push((u, v));
                    }
                }
            }
            for row in rows {
                elim.insert(row);
            }
        }
        even.len() - elim.rows.len()
    }

    /// Gram matrix `G[a,b] = trace(L_a L_b)` over the PBW basis, symmetrized
    /// against rounding since `τ(ab) = τ(ba)`.
    pub fn trace_gram(&self) -> DenseMatrix {
        let q = &self.quotient;
        let bits = q.p.bits();
        let d = q.dim();
        let mats: Vec<SparseMatrix> = q.basis.iter().map(|w| self.word_matrix(*w)).collect();
        let traces: Vec<Scalar> = mats
            .iter()
            .map(|m| {
                let mut s = Scalar::zero(bits);
                for i in 0..d {
                    if let Some(v) = m.get(i, i) {
                        s += v;
                    }
                }
                s
            })
            .collect();
        let rows = mats
            .iter()
            .map(|m| {
                let mut row = vec![Scalar::zero(bits); d];
                for (i, j, v) in m.entries() {
                    row[j] += &(&traces[i] * v);
                }
                row
            })
            .collect();
        let mut g = DenseMatrix::from_rows(rows);
        let half = Scalar::from_f64(0.5, bits);
        for a in 0..d {
            for b in a + 1..d {
                let v = &(g.get(a, b) + g.get(b, a)) * &half;
                g.set(a, b, v.clone());
                g.set(b, a, v);
            }
        }
        g
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub dim: usize,
    pub rank: usize,
    #[serde(rename = "P_value")]
    pub p_value: [String; 2],
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    pub relation_residual: f64,
    pub semisimple: bool,
}

/// Numerical rank of the trace form and the algebra dimension.
pub fn trace_form_rank(p: &ParameterSet, n: usize) -> Result<(usize, usize)> {
    let r = oracle_report(p, n)?;
    Ok((r.rank, r.dim))
}

pub fn oracle_report(p: &ParameterSet, n: usize) -> Result<OracleReport> {
    let rep = regular_representation(p, n)?;
    let dim = rep.quotient.dim();
    let p_value = p.separability_polynomial(n).to_strings();
    if dim == 0 {
        return Ok(OracleReport {
            dim,
            rank: 0,
            p_value,
            singular_values: vec![],
            threshold: 0.0,
            relation_residual: 0.0,
            semisimple: true,
        });
    }
    let gram = rep.trace_gram();
    let singular_values = gram.singular_values(0.0);
    let top = singular_values.first().copied().unwrap_or(0.0);
    let threshold = dim as f64 * p.precision.epsilon * top;
    let rank = singular_values.iter().filter(|&&s| s > threshold).count();
    Ok(OracleReport {
        dim,
        rank,
        p_value,
        singular_values,
        threshold,
        relation_residual: rep.relation_residual(),
        semisimple: rank == dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Precision;

    fn nd(flavor: Flavor, qs: &[&str]) -> ParameterSet {
        ParameterSet::parse(Variant::Nondegenerate, flavor, "3/2", qs, Precision::default()).unwrap()
    }

    fn w(a: i32, b: i32, c: u8, t: bool) -> PbwWord {
        PbwWord { x: [a, b], c, t }
    }

    #[test]
    fn straightening_examples() {
        let p = nd(Flavor::Zero, &["5"]);
        let eps = &p.eps_hecke;
        let e = affine_normal_form(&[Gen::T(1), Gen::X(1)], &p, 2).unwrap();
        let mut want = AlgebraElement::word(w(0, 1, 0, true), 256);
        want.add_term(w(0, 1, 0, false), &-eps);
        want.add_term(w(-1, 0, 3, false), &-eps);
        assert_eq!(e, want);
        let e = affine_normal_form(&[Gen::T(1), Gen::T(1)], &p, 2).unwrap();
        let mut want = AlgebraElement::word(PbwWord::ONE, 256);
        want.add_term(w(0, 0, 0, true), eps);
        assert_eq!(e, want);
        let e = affine_normal_form(&[Gen::C(1), Gen::X(1)], &p, 1).unwrap();
        assert_eq!(e, AlgebraElement::word(w(-1, 0, 1, false), 256));
    }

    #[test]
    fn inverse_rules_are_consistent() {
        let p = nd(Flavor::S, &["5"]);
        for k in 1..=2 {
            for word in [
                vec![Gen::T(1), Gen::X(k), Gen::Xinv(k), Gen::C(2)],
                vec![Gen::T(1), Gen::Xinv(k), Gen::X(k), Gen::C(1)],
            ] {
                let a = affine_normal_form(&word, &p, 2).unwrap();
                let b = affine_normal_form(&[Gen::T(1), word[3]], &p, 2).unwrap();
                let mut d = a.clone();
                d.add_scaled(&b, &Scalar::from_int(-1, 256));
                assert!(d.max_abs() < 1e-60, "{word:?}");
            }
        }
    }

    #[test]
    fn small_dimensions() {
        let p = nd(Flavor::S, &[]);
        let rep = regular_representation(&p, 1).unwrap();
        assert_eq!(rep.quotient.dim(), 2);
        let x = rep.matrix(Gen::X(1));
        assert!(x.sub(&SparseMatrix::identity(2, 256)).max_abs() < 1e-60);
        let p = nd(Flavor::Zero, &["5"]);
        let rep = regular_representation(&p, 1).unwrap();
        assert_eq!(rep.quotient.dim(), 4);
        let y = rep.matrix(Gen::X(1)).add(rep.matrix(Gen::Xinv(1)));
        let qv = p.qval(&p.qs[0]).unwrap();
        assert!(y.sub(&SparseMatrix::identity(4, 256).scale(&qv)).max_abs() < 1e-60);
    }

    #[test]
    fn regular_relations_hold() {
        for p in [
            nd(Flavor::Zero, &["5"]),
            nd(Flavor::S, &["5"]),
            nd(Flavor::Ss, &[]),
            ParameterSet::parse(Variant::Degenerate, Flavor::S, "1", &["5"], Precision::default()).unwrap(),
        ] {
            let rep = regular_representation(&p, 2).unwrap();
            assert_eq!(rep.quotient.dim(), 8 * p.degree() * p.degree());
            assert!(rep.relation_residual() < 1e-40, "{:?}", p.flavor);
            let d = rep.quotient.dim();
            let triples: Vec<_> = (0..6).map(|k| ((7 * k + 1) % d, (5 * k + 3) % d, (3 * k + 2) % d)).collect();
            assert!(rep.associativity_residual(&triples) < 1e-40);
            let nf = rep.normal_form(&[Gen::T(1), Gen::X(2)]).unwrap();
            let again = rep.normal_form(&[Gen::T(1), Gen::X(2)]).unwrap();
            assert_eq!(nf, again);
        }
    }

    #[test]
    fn trace_form_examples() {
        assert_eq!(trace_form_rank(&nd(Flavor::Zero, &["5"]), 1).unwrap(), (4, 4));
        let (rank, dim) = trace_form_rank(&nd(Flavor::Zero, &["1"]), 1).unwrap();
        assert!(rank < dim && dim == 4);
        assert_eq!(trace_form_rank(&nd(Flavor::S, &[]), 2).unwrap(), (8, 8));
    }

    #[test]
    fn even_center_counts_shapes() {
        for p in [
            nd(Flavor::Zero, &["5"]),
            nd(Flavor::S, &["5"]),
            nd(Flavor::Ss, &[]),
            ParameterSet::parse(Variant::Degenerate, Flavor::S, "1", &["5"], Precision::default()).unwrap(),
        ] {
            for n in 1..=2 {
                let shapes = crate::combinatorics::enumerate_multipartitions(p.flavor, p.m(), n).len();
                assert_eq!(regular_representation(&p, n).unwrap().even_center_dim(), shapes, "{:?} n={n}", p.flavor);
            }
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(Quotient::new(&nd(Flavor::S, &[]), 3), Err(Error::BudgetExceeded(_))));
    }
}
