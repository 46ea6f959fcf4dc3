//! The modules `D(λ)`: assembly, verification, irreducibility, census.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_multipartitions, enumerate_standard_tableaux, factorial, Flavor, Multipartition, ShapeInfo, StandardTableau};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SparseMatrix};
use crate::par::Exec;
use crate::params::{ParameterSet, Variant};
use crate::scalar::Scalar;
use crate::torus::{build_l, pattern_groups, ModuleType, TorusModule};

/// Generator matrices of a module; `X_k` is stored by its diagonal.
#[derive(Clone, Debug)]
pub struct Generators {
    pub x: Vec<Vec<Scalar>>,
    pub c: Vec<SparseMatrix>,
    pub t: Vec<SparseMatrix>,
    pub parity: Vec<u8>,
}

impl Generators {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Block-diagonal sum of two modules.
    pub fn direct_sum(&self, o: &Generators) -> Generators {
        let (a, b) = (self.dim(), o.dim());
        let join = |m: &SparseMatrix, k: &SparseMatrix| {
            let mut s = SparseMatrix::zeros(a + b, a + b);
            s.add_block(0, 0, m);
            s.add_block(a, a, k);
            s
        };
        Generators {
            x: self.x.iter().zip(&o.x).map(|(u, v)| u.iter().chain(v).cloned().collect()).collect(),
            c: self.c.iter().zip(&o.c).map(|(m, k)| join(m, k)).collect(),
            t: self.t.iter().zip(&o.t).map(|(m, k)| join(m, k)).collect(),
            parity: self.parity.iter().chain(&o.parity).copied().collect(),
        }
    }
}

/// The square-root branch chosen for one unordered pair of q-values.
#[derive(Clone, Debug)]
pub struct SqrtBranch {
    pub qa: Scalar,
    pub qb: Scalar,
    pub omega: Scalar,
}

#[derive(Clone, Debug)]
pub struct CycloModule {
    pub shape: Multipartition,
    pub params: ParameterSet,
    pub blocks: Vec<StandardTableau>,
    pub block_dim: usize,
    pub total_dim: usize,
    pub gens: Generators,
    pub module_type: ModuleType,
    pub sqrt_branches: Vec<SqrtBranch>,
    /// The underlying torus module, absent for loaded dumps.
    pub base: Option<TorusModule>,
}

fn zero(bits: u32) -> Scalar {
    Scalar::zero(bits)
}

/// `ω` for an unordered pair of q-values.
pub fn omega_scalar(qa: &Scalar, qb: &Scalar, p: &ParameterSet) -> Result<Scalar> {
    let bits = p.bits();
    let one = Scalar::one(bits);
    let (w2, scale) = match p.variant {
        Variant::Nondegenerate => {
            let rep = |qv: &Scalar| {
                let h = qv / &Scalar::from_int(2, bits);
                &h + &(&h.square() - &one).sqrt_principal()
            };
            let (a, b) = (rep(qa), rep(qb));
            let f = |x: Scalar| -> Result<Scalar> {
                let d = &x - &one;
                if d.abs_f64() <= p.precision.epsilon {
                    return Err(Error::DegenerateDenominator(0));
                }
                Ok(&x / &d.square())
            };
            let s = f(&a / &b)? + f((&a * &b).recip())?;
            let t = &p.eps_hecke.square() * &s;
            (&one - &t, 1.0 + t.abs_f64())
        }
        Variant::Degenerate => {
            let d = qa - qb;
            if d.abs_f64() <= p.precision.epsilon {
                return Err(Error::DegenerateDenominator(0));
            }
            let t = (qa + qb).scale_int(2) / d.square();
            (&one - &t, 1.0 + t.abs_f64())
        }
    };
    if w2.abs_f64() <= p.precision.epsilon * scale {
        return Ok(zero(bits));
    }
    Ok(w2.sqrt_principal())
}

/// The diagonal part `Ξ_i` on one block, from the eigenvalues of `X_i`,
/// `X_{i+1}` and the product `C_i C_{i+1}`.
fn xi_matrix(a: &[Scalar], b: &[Scalar], cc: &SparseMatrix, i: usize, p: &ParameterSet) -> Result<SparseMatrix> {
    let bits = p.bits();
    let d = a.len();
    let one = Scalar::one(bits);
    let eps = &p.eps_hecke;
    let tiny = p.precision.epsilon;
    let check = |x: &Scalar, scale: f64| {
        if x.abs_f64() <= tiny * scale {
            Err(Error::DegenerateDenominator(i))
        } else {
            Ok(())
        }
    };
    let mut m = SparseMatrix::zeros(d, d);
    match p.variant {
        Variant::Nondegenerate => {
            let mut d2 = Vec::with_capacity(d);
            for u in 0..d {
                let den1 = &(&a[u] / &b[u]) - &one;
                let den2 = &(&a[u] * &b[u]) - &one;
                check(&den1, 1.0)?;
                check(&den2, 1.0)?;
                m.add_at(u, u, &-(eps / &den1));
                d2.push(eps / &den2);
            }
            for (r, c, v) in cc.entries() {
                m.add_at(r, c, &(&d2[r] * v));
            }
        }
        Variant::Degenerate => {
            let mut d2 = Vec::with_capacity(d);
            for u in 0..d {
                let (a2, b2) = (a[u].square(), b[u].square());
                let den = &a2 - &b2;
                check(&den, 1.0 + a2.abs_f64() + b2.abs_f64())?;
                m.add_at(u, u, &-(&(&a[u] + &b[u]) / &den));
                d2.push(-(&(&a[u] - &b[u]) / &den));
            }
            for (r, c, v) in cc.entries() {
                m.add_at(r, c, &(v * &d2[c]));
            }
        }
    }
    m.prune(0.0);
    Ok(m)
}

impl CycloModule {
    pub fn build(shape: &Multipartition, p: &ParameterSet) -> Result<Self> {
        let n = shape.n();
        if shape.flavor != p.flavor || shape.m() != p.m() {
            return Err(Error::InvalidParameter("shape does not match the parameter set".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("empty shape".into()));
        }
        if p.separability_vanishes(n) {
            return Err(Error::NotSeparate(n));
        }
        let bits = p.bits();
        let blocks = enumerate_standard_tableaux(shape);
        let index: HashMap<Vec<usize>, usize> =
            blocks.iter().enumerate().map(|(b, t)| (t.entries().to_vec(), b)).collect();
        let base = build_l(&p.residue_sequence(&blocks[0])?, p)?;
        let d = base.dim;
        let total = d * blocks.len();
        let pos = |t: &StandardTableau, k: usize| t.position_of(k);

        let mut x = vec![Vec::with_capacity(total); n];
        let mut c = vec![SparseMatrix::zeros(total, total); n];
        for (b, t) in blocks.iter().enumerate() {
            for k in 1..=n {
                let src = pos(t, k);
                x[k - 1].extend(base.x[src].iter().cloned());
                c[k - 1].add_block(b * d, b * d, &base.c[src]);
            }
        }
        let mut branches: Vec<SqrtBranch> = Vec::new();
        let mut t_mats = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let mut ti = SparseMatrix::zeros(total, total);
            for (b, t) in blocks.iter().enumerate() {
                let (pi, pj) = (pos(t, i), pos(t, i + 1));
                let cc = base.c[pi].mul(&base.c[pj]);
                let xi = xi_matrix(&base.x[pi], &base.x[pj], &cc, i, p)?;
                ti.add_block(b * d, b * d, &xi);
                if t.is_admissible(i) {
                    let nb = index[t.apply_transposition(i)?.entries()];
                    let (qa, qb) = (&base.residues.qvalues[pi], &base.residues.qvalues[pj]);
                    let found = branches.iter().find(|s| {
                        (p.eq(&s.qa, qa) && p.eq(&s.qb, qb)) || (p.eq(&s.qa, qb) && p.eq(&s.qb, qa))
                    });
                    let omega = match found {
                        Some(s) => s.omega.clone(),
                        None => {
                            let w = omega_scalar(qa, qb, p)?;
                            branches.push(SqrtBranch { qa: qa.clone(), qb: qb.clone(), omega: w.clone() });
                            w
                        }
                    };
                    for u in 0..d {
                        ti.add_at(nb * d + u, b * d + u, &omega);
                    }
                }
            }
            t_mats.push(ti);
        }
        let parity = (0..blocks.len()).flat_map(|_| base.parity.iter().copied()).collect();
        let _ = bits;
        Ok(Self {
            shape: shape.clone(),
            params: p.clone(),
            block_dim: d,
            total_dim: total,
            gens: Generators { x, c, t: t_mats, parity },
            module_type: base.module_type,
            sqrt_branches: branches,
            blocks,
            base: Some(base),
        })
    }

    pub fn n(&self) -> usize {
        self.gens.x.len()
    }

    pub fn x_inv(&self, k: usize) -> Vec<Scalar> {
        self.gens.x[k].iter().map(Scalar::recip).collect()
    }

    fn block_index(&self) -> HashMap<Vec<usize>, usize> {
        self.blocks.iter().enumerate().map(|(b, t)| (t.entries().to_vec(), b)).collect()
    }

    /// Value of the cyclotomic polynomial at `x`.
    pub fn cyclotomic_value(&self, x: &Scalar) -> Scalar {
        let p = &self.params;
        let bits = p.bits();
        let one = Scalar::one(bits);
        let mut v = one.clone();
        match p.variant {
            Variant::Nondegenerate => {
                if p.flavor != Flavor::Zero {
                    v *= &(x - &one);
                }
                if p.flavor == Flavor::Ss {
                    v *= &(x + &one);
                }
                let y = x + &x.recip();
                for q in &p.qs {
                    v *= &(&y - &p.qval(q).expect("nonzero Q"));
                }
            }
            Variant::Degenerate => {
                if p.flavor == Flavor::S {
                    v *= x;
                }
                let y = x.square();
                for q in &p.qs {
                    v *= &(&y - &p.qval(q).expect("qval"));
                }
            }
        }
        v
    }

    /// Residuals of every defining relation, grouped by family.
    pub fn verify_relations(&self, tol: f64) -> RelationReport {
        let p = &self.params;
        let bits = p.bits();
        let g = &self.gens;
        let n = self.n();
        let id = SparseMatrix::identity(self.total_dim, bits);
        let mut res: BTreeMap<String, f64> = BTreeMap::new();
        let mut note = |name: &str, m: &SparseMatrix| {
            let e = res.entry(name.to_string()).or_insert(0.0);
            *e = e.max(m.max_abs());
        };
        let xm: Vec<SparseMatrix> = g.x.iter().map(|d| SparseMatrix::diag(d.clone())).collect();
        let xinv: Vec<Vec<Scalar>> = match p.variant {
            Variant::Nondegenerate => (0..n).map(|k| self.x_inv(k)).collect(),
            Variant::Degenerate => Vec::new(),
        };
        let eps = &p.eps_hecke;
        for k in 0..n {
            note("clifford", &g.c[k].mul(&g.c[k]).sub(&id));
            for j in 0..n {
                if j != k {
                    note("clifford", &g.c[j].mul(&g.c[k]).add(&g.c[k].mul(&g.c[j])));
                    note("xc", &g.c[j].left_diag(&g.x[k]).sub(&g.c[j].right_diag(&g.x[k])));
                }
                note("poly", &xm[k].mul(&xm[j]).sub(&xm[j].mul(&xm[k])));
            }
            match p.variant {
                Variant::Nondegenerate => {
                    note("poly", &xm[k].right_diag(&xinv[k]).sub(&id));
                    note("xc", &g.c[k].left_diag(&g.x[k]).sub(&g.c[k].right_diag(&xinv[k])));
                }
                Variant::Degenerate => {
                    note("xc", &g.c[k].left_diag(&g.x[k]).add(&g.c[k].right_diag(&g.x[k])));
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            let t = &g.t[i];
            let cc = g.c[i].mul(&g.c[i + 1]);
            let t2 = t.mul(t);
            match p.variant {
                Variant::Nondegenerate => {
                    note("quadratic", &t2.sub(&t.scale(eps)).sub(&id));
                    // T_i X_i = X_{i+1} T_i − ε(X_{i+1} + C_i C_{i+1} X_i)
                    let lhs = t.right_diag(&g.x[i]);
                    let rhs = t.left_diag(&g.x[i + 1])
                        .sub(&xm[i + 1].add(&cc.right_diag(&g.x[i])).scale(eps));
                    note("px1", &lhs.sub(&rhs));
                    // T_i X_{i+1} = X_i T_i + ε(1 + C_{i+1} C_i) X_{i+1}
                    let lhs = t.right_diag(&g.x[i + 1]);
                    let rhs = t.left_diag(&g.x[i]).add(&id.sub(&cc).right_diag(&g.x[i + 1]).scale(eps));
                    note("px2", &lhs.sub(&rhs));
                    note("pc", &t.mul(&g.c[i]).sub(&g.c[i + 1].mul(t)));
                    let rhs = g.c[i].mul(t).sub(&g.c[i].sub(&g.c[i + 1]).scale(eps));
                    note("pc", &t.mul(&g.c[i + 1]).sub(&rhs));
                }
                Variant::Degenerate => {
                    note("quadratic", &t2.sub(&id));
                    // s_i x_i = x_{i+1} s_i − (1 + c_i c_{i+1})
                    let lhs = t.right_diag(&g.x[i]);
                    let rhs = t.left_diag(&g.x[i + 1]).sub(&id.add(&cc));
                    note("px1", &lhs.sub(&rhs));
                    let lhs = t.right_diag(&g.x[i + 1]);
                    let rhs = t.left_diag(&g.x[i]).add(&id).sub(&cc);
                    note("px1", &lhs.sub(&rhs));
                    note("pc", &t.mul(&g.c[i]).sub(&g.c[i + 1].mul(t)));
                    note("pc", &t.mul(&g.c[i + 1]).sub(&g.c[i].mul(t)));
                }
            }
            for j in 0..n {
                if j != i && j != i + 1 {
                    note("px3", &t.right_diag(&g.x[j]).sub(&t.left_diag(&g.x[j])));
                    note("pc", &t.mul(&g.c[j]).sub(&g.c[j].mul(t)));
                }
            }
            for j in i + 1..n - 1 {
                let s = &g.t[j];
                if j == i + 1 {
                    note("braid", &t.mul(s).mul(t).sub(&s.mul(t).mul(s)));
                } else {
                    note("braid", &t.mul(s).sub(&s.mul(t)));
                }
            }
        }
        let cyc = g.x[0].iter().map(|x| self.cyclotomic_value(x).abs_f64()).fold(0.0, f64::max);
        res.insert("cyclotomic".into(), cyc);
        let max = res.values().copied().fold(0.0, f64::max);
        RelationReport { residuals: res, max_residual: max, tolerance: tol, pass: max <= tol }
    }

    /// Forms the intertwiner for `s_i` (1-based) from the generator matrices
    /// and checks bijectivity across blocks, its square, and the exchange rules.
    pub fn intertwiner_check(&self, i: usize, tol: f64) -> Result<IntertwinerReport> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(Error::InvalidParameter(format!("s_{i} out of range")));
        }
        let p = &self.params;
        let bits = p.bits();
        let g = &self.gens;
        let (a, b) = (&g.x[i - 1], &g.x[i]);
        let one = Scalar::one(bits);
        let cc = g.c[i - 1].mul(&g.c[i]);
        let t = &g.t[i - 1];
        let (phi, sq) = match p.variant {
            Variant::Nondegenerate => {
                let eps = &p.eps_hecke;
                let mut z2 = Vec::new();
                let mut da = Vec::new();
                let mut db = Vec::new();
                let mut s = Vec::new();
                for (x, y) in a.iter().zip(b) {
                    let ainv2 = x.recip().square();
                    let pr = &(x * y) - &one;
                    let qu = &(x / y) - &one;
                    let z = (x + &x.recip()) - (y + &y.recip());
                    let zz = z.square();
                    da.push(&(&ainv2 * &pr.square()) * &qu);
                    db.push(&(&ainv2 * &pr) * &qu.square());
                    let f = |w: Scalar| &w / &(&w - &one).square();
                    let inner = &one - &(&eps.square() * &(f(x / y) + f((x * y).recip())));
                    s.push(&zz.square() * &inner);
                    z2.push(zz);
                }
                let phi = t
                    .left_diag(&z2)
                    .add(&SparseMatrix::diag(da).scale(eps))
                    .sub(&cc.left_diag(&db).scale(eps));
                (phi, s)
            }
            Variant::Degenerate => {
                let mut d1 = Vec::new();
                let mut d2 = Vec::new();
                let mut d3 = Vec::new();
                let mut s = Vec::new();
                for (x, y) in a.iter().zip(b) {
                    let (x2, y2) = (x.square(), y.square());
                    let diff = &x2 - &y2;
                    s.push((&x2 + &y2).scale_int(2) - diff.square());
                    d1.push(diff);
                    d2.push(x + y);
                    d3.push(x - y);
                }
                let phi = t.right_diag(&d1).add(&SparseMatrix::diag(d2)).add(&cc.right_diag(&d3));
                (phi, s)
            }
        };
        let square_residual = phi.mul(&phi).sub(&SparseMatrix::diag(sq)).max_abs();
        let mut exchange: f64 = 0.0;
        let mut ex = |m: SparseMatrix| exchange = exchange.max(m.max_abs());
        let (xi, xj) = (&g.x[i - 1], &g.x[i]);
        ex(phi.right_diag(xi).sub(&phi.left_diag(xj)));
        ex(phi.right_diag(xj).sub(&phi.left_diag(xi)));
        if p.variant == Variant::Nondegenerate {
            let (ii, ij) = (self.x_inv(i - 1), self.x_inv(i));
            ex(phi.right_diag(&ii).sub(&phi.left_diag(&ij)));
            ex(phi.right_diag(&ij).sub(&phi.left_diag(&ii)));
        }
        ex(phi.mul(&g.c[i - 1]).sub(&g.c[i].mul(&phi)));
        ex(phi.mul(&g.c[i]).sub(&g.c[i - 1].mul(&phi)));
        for l in 0..n {
            if l != i - 1 && l != i {
                ex(phi.right_diag(&g.x[l]).sub(&phi.left_diag(&g.x[l])));
                ex(phi.mul(&g.c[l]).sub(&g.c[l].mul(&phi)));
            }
        }
        let d = self.block_dim;
        let index = self.block_index();
        let mut cross_ranks = Vec::new();
        let mut leak: f64 = 0.0;
        for (bi, tab) in self.blocks.iter().enumerate() {
            let cols = bi * d..(bi + 1) * d;
            if tab.is_admissible(i) {
                let nb = index[tab.apply_transposition(i)?.entries()];
                let blk = phi.submatrix(nb * d..(nb + 1) * d, cols.clone()).to_dense(bits);
                cross_ranks.push(blk.rank(1e-40));
                for (ob, _) in self.blocks.iter().enumerate().filter(|(ob, _)| *ob != nb) {
                    leak = leak.max(phi.submatrix(ob * d..(ob + 1) * d, cols.clone()).max_abs());
                }
            } else {
                for ob in 0..self.blocks.len() {
                    if ob != bi {
                        leak = leak.max(phi.submatrix(ob * d..(ob + 1) * d, cols.clone()).max_abs());
                    }
                }
            }
        }
        let ranks_full = cross_ranks.iter().all(|&r| r == d);
        Ok(IntertwinerReport {
            i,
            cross_ranks,
            block_dim: d,
            square_residual,
            exchange_residual: exchange,
            off_target_residual: leak,
            pass: ranks_full && square_residual <= tol && exchange <= tol && leak <= tol,
        })
    }

    /// Diagonal entries of `X_k + X_k⁻¹` (degenerate: `x_k²`) against the
    /// q-values of each block's tableau residues.
    pub fn eigenvalue_audit(&self, tol: f64) -> Result<AuditReport> {
        let p = &self.params;
        let d = self.block_dim;
        let mut worst: f64 = 0.0;
        for (b, t) in self.blocks.iter().enumerate() {
            let rs = p.residue_sequence(t)?;
            for k in 0..self.n() {
                for u in b * d..(b + 1) * d {
                    let x = &self.gens.x[k][u];
                    let v = match p.variant {
                        Variant::Nondegenerate => x + &x.recip(),
                        Variant::Degenerate => x.square(),
                    };
                    worst = worst.max((&v - &rs.qvalues[k]).abs_f64());
                }
            }
        }
        Ok(AuditReport { max_residual: worst, diagonal: true, pass: worst <= tol })
    }

    /// Scalars by which the elementary symmetric polynomials in
    /// `X_k + X_k⁻¹` (degenerate: `x_k²`) act, with the largest deviation.
    pub fn central_scalars(&self) -> (Vec<Scalar>, f64) {
        let p = &self.params;
        let bits = p.bits();
        let n = self.n();
        let mut first: Option<Vec<Scalar>> = None;
        let mut dev: f64 = 0.0;
        for u in 0..self.total_dim {
            let ys: Vec<Scalar> = (0..n)
                .map(|k| {
                    let x = &self.gens.x[k][u];
                    match p.variant {
                        Variant::Nondegenerate => x + &x.recip(),
                        Variant::Degenerate => x.square(),
                    }
                })
                .collect();
            let mut e = vec![Scalar::one(bits)];
            e.resize(n + 1, zero(bits));
            for y in &ys {
                for j in (1..=n).rev() {
                    let add = &e[j - 1] * y;
                    e[j] += &add;
                }
            }
            let e = e[1..].to_vec();
            match &first {
                None => first = Some(e),
                Some(f) => {
                    for (a, b) in f.iter().zip(&e) {
                        dev = dev.max((a - b).abs_f64());
                    }
                }
            }
        }
        (first.unwrap_or_default(), dev)
    }

    pub fn dump(&self) -> Value {
        let bits = self.params.bits();
        let mat = |m: &SparseMatrix| -> Value {
            let d = m.to_dense(bits);
            Value::Array(
                (0..d.n_rows())
                    .map(|r| Value::Array(d.row(r).iter().map(|s| json!(s.to_strings())).collect()))
                    .collect(),
            )
        };
        let diag = |v: &[Scalar]| mat(&SparseMatrix::diag(v.to_vec()));
        let n = self.n();
        let branches: Vec<Value> = self
            .sqrt_branches
            .iter()
            .map(|s| json!({"qa": s.qa.to_strings(), "qb": s.qb.to_strings(), "omega": s.omega.to_strings()}))
            .collect();
        let xinv: Vec<Value> = match self.params.variant {
            Variant::Nondegenerate => (0..n).map(|k| diag(&self.x_inv(k))).collect(),
            Variant::Degenerate => Vec::new(),
        };
        json!({
            "shape": self.shape,
            "params": self.params.to_json(),
            "blocks": self.blocks.iter().map(StandardTableau::to_rows).collect::<Vec<_>>(),
            "block_dim": self.block_dim,
            "total_dim": self.total_dim,
            "parity": self.gens.parity,
            "generators": {
                "T": self.gens.t.iter().map(mat).collect::<Vec<_>>(),
                "X": self.gens.x.iter().map(|x| diag(x)).collect::<Vec<_>>(),
                "Xinv": xinv,
                "C": self.gens.c.iter().map(mat).collect::<Vec<_>>(),
            },
            "type": self.module_type.name(),
            "j_eigenvalue": "+i",
            "sqrt_branches": branches,
        })
    }

    pub fn load(v: &Value) -> Result<Self> {
        let bad = |s: &str| Error::Dump(s.to_string());
        let params = ParameterSet::from_json(v.get("params").ok_or_else(|| bad("params"))?)?;
        let bits = params.bits();
        let shape: Multipartition =
            serde_json::from_value(v.get("shape").cloned().ok_or_else(|| bad("shape"))?).map_err(|e| Error::Dump(e.to_string()))?;
        let scalar = |e: &Value| -> Result<Scalar> {
            let a = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("scalar"))?;
            let s = |k: usize| a[k].as_str().ok_or_else(|| bad("scalar string"));
            Ok(Scalar::from_strings(s(0)?, s(1)?, bits)?)
        };
        let matrix = |m: &Value| -> Result<SparseMatrix> {
            let rows = m.as_array().ok_or_else(|| bad("matrix"))?;
            let mut out = SparseMatrix::zeros(rows.len(), rows.len());
            for (r, row) in rows.iter().enumerate() {
                for (c, e) in row.as_array().ok_or_else(|| bad("row"))?.iter().enumerate() {
                    let s = scalar(e)?;
                    if !s.is_zero() {
                        out.set(r, c, s);
                    }
                }
            }
            Ok(out)
        };
        let gens = v.get("generators").ok_or_else(|| bad("generators"))?;
        let list = |k: &str| -> Result<Vec<SparseMatrix>> {
            gens.get(k).and_then(Value::as_array).ok_or_else(|| bad(k))?.iter().map(matrix).collect()
        };
        let t = list("T")?;
        let c = list("C")?;
        let x = list("X")?.iter().map(|m| m.diagonal(bits)).collect();
        let parity: Vec<u8> =
            serde_json::from_value(v.get("parity").cloned().ok_or_else(|| bad("parity"))?).map_err(|e| Error::Dump(e.to_string()))?;
        let module_type = match v.get("type").and_then(Value::as_str) {
            Some("Q") => ModuleType::Q,
            _ => ModuleType::M,
        };
        let info = ShapeInfo::new(shape.clone());
        let blocks = v
            .get("blocks")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("blocks"))?
            .iter()
            .map(|b| {
                let rows: Vec<Vec<Vec<usize>>> = serde_json::from_value(b.clone()).map_err(|e| Error::Dump(e.to_string()))?;
                let entries: Vec<usize> = rows.into_iter().flatten().flatten().collect();
                StandardTableau::from_entries(info.clone(), entries)
            })
            .collect::<Result<Vec<_>>>()?;
        let sqrt_branches = v
            .get("sqrt_branches")
            .and_then(Value::as_array)
            .map(|a| {
                a.iter()
                    .map(|s| {
                        Ok(SqrtBranch {
                            qa: scalar(&s["qa"])?,
                            qb: scalar(&s["qb"])?,
                            omega: scalar(&s["omega"])?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?
            .unwrap_or_default();
        let total_dim = parity.len();
        let block_dim = v.get("block_dim").and_then(Value::as_u64).ok_or_else(|| bad("block_dim"))? as usize;
        Ok(Self {
            shape,
            params,
            blocks,
            block_dim,
            total_dim,
            gens: Generators { x, c, t, parity },
            module_type,
            sqrt_branches,
            base: None,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub residuals: BTreeMap<String, f64>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub i: usize,
    pub cross_ranks: Vec<usize>,
    pub block_dim: usize,
    pub square_residual: f64,
    pub exchange_residual: f64,
    pub off_target_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub max_residual: f64,
    pub diagonal: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityReport {
    pub spin_up_dims: Vec<usize>,
    pub total_dim: usize,
    pub even_commutant: usize,
    pub odd_commutant: usize,
    pub module_type: Option<ModuleType>,
    pub pass: bool,
}

/// Groups basis indices by joint `X` eigenvalue pattern.
fn x_classes(g: &Generators, p: &ParameterSet) -> (Vec<Vec<usize>>, Vec<usize>) {
    let flat = vec![0u8; g.dim()];
    let groups = pattern_groups(&g.x, &flat, p);
    let mut class_of = vec![0; g.dim()];
    for (k, grp) in groups.iter().enumerate() {
        for &u in grp {
            class_of[u] = k;
        }
    }
    (groups, class_of)
}

/// Dimension of the submodule generated by `v`, tracked per `X` eigenspace.
pub fn spin_up(g: &Generators, v: &[Scalar], p: &ParameterSet) -> usize {
    let bits = p.bits();
    let (classes, class_of) = x_classes(g, p);
    let local: HashMap<usize, usize> =
        classes.iter().flat_map(|c| c.iter().enumerate().map(|(k, &u)| (u, k))).collect();
    let cols: Vec<SparseMatrix> = g.t.iter().chain(&g.c).map(SparseMatrix::transpose).collect();
    let mut bases: Vec<Vec<(usize, Vec<Scalar>)>> = vec![Vec::new(); classes.len()];
    let mut queue: Vec<(usize, Vec<Scalar>)> = Vec::new();

    let absorb = |cls: usize, mut y: Vec<Scalar>, bases: &mut Vec<Vec<(usize, Vec<Scalar>)>>, queue: &mut Vec<(usize, Vec<Scalar>)>| {
        let scale = y.iter().map(Scalar::abs_f64).fold(0.0, f64::max);
        if scale == 0.0 {
            return;
        }
        for (piv, b) in &bases[cls] {
            let f = y[*piv].clone();
            if f.is_zero() {
                continue;
            }
            for (yk, bk) in y.iter_mut().zip(b) {
                if !bk.is_zero() {
                    *yk -= &(&f * bk);
                }
            }
        }
        let (piv, big) = y
            .iter()
            .enumerate()
            .map(|(k, s)| (k, s.abs_f64()))
            .fold((0, 0.0), |acc, e| if e.1 > acc.1 { e } else { acc });
        if big <= 1e-30 * scale {
            return;
        }
        let inv = y[piv].recip();
        let y: Vec<Scalar> = y.iter().map(|s| s * &inv).collect();
        bases[cls].push((piv, y.clone()));
        queue.push((cls, y));
    };

    let split = |full: &HashMap<usize, Scalar>| -> BTreeMap<usize, Vec<Scalar>> {
        let mut out: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (&u, s) in full {
            let cls = class_of[u];
            let e = out.entry(cls).or_insert_with(|| vec![zero(bits); classes[cls].len()]);
            e[local[&u]] = s.clone();
        }
        out
    };
    let start: HashMap<usize, Scalar> = v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(u, s)| (u, s.clone())).collect();
    for (cls, y) in split(&start) {
        absorb(cls, y, &mut bases, &mut queue);
    }
    while let Some((cls, w)) = queue.pop() {
        for gt in &cols {
            let mut out: HashMap<usize, Scalar> = HashMap::new();
            for (k, wk) in w.iter().enumerate() {
                if wk.is_zero() {
                    continue;
                }
                let u = classes[cls][k];
                for (r, gv) in gt.row(u) {
                    let add = gv * wk;
                    match out.get_mut(r) {
                        Some(s) => *s += &add,
                        None => {
                            out.insert(*r, add);
                        }
                    }
                }
            }
            for (c2, y) in split(&out) {
                absorb(c2, y, &mut bases, &mut queue);
            }
        }
    }
    bases.iter().map(Vec::len).sum()
}

/// Sparse elimination keeping every pivot row free of other pivot variables.
struct Eliminator {
    rows: Vec<Vec<(usize, Scalar)>>,
    pivot_of: HashMap<usize, usize>,
}

impl Eliminator {
    fn new() -> Self {
        Self { rows: Vec::new(), pivot_of: HashMap::new() }
    }

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
        out.retain(|(_, v)| v.abs_f64() > 1e-40);
        out
    }

    fn insert(&mut self, mut row: Vec<(usize, Scalar)>) {
        row.sort_by_key(|e| e.0);
        row.retain(|(_, v)| v.abs_f64() > 1e-40);
        let hits: Vec<(usize, Scalar)> = row
            .iter()
            .filter_map(|(var, v)| self.pivot_of.get(var).map(|&r| (r, v.clone())))
            .collect();
        for (r, f) in hits {
            row = Self::axpy(&row, &f, &self.rows[r]);
        }
        let Some((k, _)) = row
            .iter()
            .enumerate()
            .map(|(k, (_, v))| (k, v.abs_f64()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
        else {
            return;
        };
        let var = row[k].0;
        let inv = row[k].1.recip();
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

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Dimension of the even (`odd = false`) or odd supercommutant.
pub fn commutant_dim(g: &Generators, p: &ParameterSet, odd: bool) -> usize {
    let (classes, class_of) = x_classes(g, p);
    let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
    for cls in &classes {
        for &r in cls {
            for &c in cls {
                if (g.parity[r] != g.parity[c]) == odd {
                    let k = unknown.len();
                    unknown.insert((r, c), k);
                }
            }
        }
    }
    let mut elim = Eliminator::new();
    let gens: Vec<(&SparseMatrix, bool)> =
        g.t.iter().map(|t| (t, false)).chain(g.c.iter().map(|c| (c, true))).collect();
    for (m, is_odd) in gens {
        let sign = if odd && is_odd { -1 } else { 1 };
        let mut eqs: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
        for (k, c, v) in m.entries() {
            for &r in &classes[class_of[k]] {
                if let Some(&u) = unknown.get(&(r, k)) {
                    eqs.entry((r, c)).or_default().push((u, v.clone()));
                }
            }
        }
        for (r, k, v) in m.entries() {
            for &c in &classes[class_of[k]] {
                if let Some(&u) = unknown.get(&(k, c)) {
                    let w = if sign > 0 { -v } else { v.clone() };
                    eqs.entry((r, c)).or_default().push((u, w));
                }
            }
        }
        let mut keys: Vec<(usize, usize)> = eqs.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let mut terms = eqs.remove(&key).expect("key");
            terms.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(terms.len());
            for (u, v) in terms {
                match merged.last_mut() {
                    Some((lu, lv)) if *lu == u => *lv += &v,
                    _ => merged.push((u, v)),
                }
            }
            elim.insert(merged);
        }
    }
    unknown.len() - elim.rank()
}

pub fn random_vector(dim: usize, seed: u64, bits: u32) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim)
        .map(|_| Scalar::from_complex_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), bits))
        .collect()
}

/// Spin-up from seeded random vectors plus both commutant dimensions.
pub fn irreducibility_check(g: &Generators, p: &ParameterSet, trials: usize, seed: u64) -> IrreducibilityReport {
    let dim = g.dim();
    let spin_up_dims: Vec<usize> =
        (0..trials).map(|k| spin_up(g, &random_vector(dim, seed.wrapping_add(k as u64), p.bits()), p)).collect();
    let even = commutant_dim(g, p, false);
    let odd = commutant_dim(g, p, true);
    let module_type = match (even, odd) {
        (1, 0) => Some(ModuleType::M),
        (1, 1) => Some(ModuleType::Q),
        _ => None,
    };
    IrreducibilityReport {
        pass: spin_up_dims.iter().all(|&d| d == dim) && module_type.is_some(),
        spin_up_dims,
        total_dim: dim,
        even_commutant: even,
        odd_commutant: odd,
        module_type,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub shape: String,
    pub n_diagonal: usize,
    pub std_count: u128,
    pub dim: u128,
    pub module_type: ModuleType,
    pub built_dim: Option<usize>,
    pub built_type: Option<ModuleType>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub degree: usize,
    pub entries: Vec<CensusEntry>,
    /// `Σ_M d² + Σ_Q d²/2`.
    pub lhs: u128,
    /// `2ⁿ rⁿ n!`.
    pub rhs: u128,
    pub identity_holds: bool,
    pub numeric_holds: Option<bool>,
    pub pass: bool,
}

/// Combinatorial dimension `2^{n−⌊♯D/2⌋}·|Std(λ)|` and type of `D(λ)`.
pub fn predicted_dim(shape: &Multipartition) -> (u128, ModuleType) {
    let nd = shape.n_diagonal();
    let std = crate::combinatorics::count_standard_tableaux(shape);
    let d = (1u128 << (shape.n() - nd / 2)) * std;
    (d, if nd.is_multiple_of(2) { ModuleType::M } else { ModuleType::Q })
}

/// `(Σ_M d² + Σ_Q d²/2, 2ⁿrⁿn!)` from the combinatorial side alone.
pub fn census_identity(flavor: Flavor, m: usize, n: usize) -> (u128, u128) {
    let lhs = enumerate_multipartitions(flavor, m, n)
        .iter()
        .map(|s| match predicted_dim(s) {
            (d, ModuleType::M) => d * d,
            (d, ModuleType::Q) => d * d / 2,
        })
        .sum();
    let r = (2 * m + flavor.n_strict()) as u128;
    (lhs, (1u128 << n) * r.pow(n as u32) * factorial(n))
}

/// Sum-of-squares identity over all shapes; with `numeric`, every module is
/// also built and its dimension and commutant type compared.
pub fn semisimplicity_census(p: &ParameterSet, n: usize, numeric: bool, exec: Exec) -> Result<CensusReport> {
    if p.separability_vanishes(n) {
        return Err(Error::NotSeparate(n));
    }
    let shapes = enumerate_multipartitions(p.flavor, p.m(), n);
    let entries = exec.map(&shapes, |shape| -> Result<CensusEntry> {
        let (dim, module_type) = predicted_dim(shape);
        let (built_dim, built_type) = if numeric {
            let m = CycloModule::build(shape, p)?;
            let even = commutant_dim(&m.gens, p, false);
            let odd = commutant_dim(&m.gens, p, true);
            let ty = match (even, odd) {
                (1, 0) => Some(ModuleType::M),
                (1, 1) => Some(ModuleType::Q),
                _ => None,
            };
            (Some(m.total_dim), ty)
        } else {
            (None, None)
        };
        Ok(CensusEntry {
            shape: shape.to_string(),
            n_diagonal: shape.n_diagonal(),
            std_count: crate::combinatorics::count_standard_tableaux(shape),
            dim,
            module_type,
            built_dim,
            built_type,
        })
    });
    let entries = entries.into_iter().collect::<Result<Vec<_>>>()?;
    let lhs: u128 = entries
        .iter()
        .map(|e| match e.module_type {
            ModuleType::M => e.dim * e.dim,
            ModuleType::Q => e.dim * e.dim / 2,
        })
        .sum();
    let r = p.degree() as u128;
    let rhs = (1u128 << n) * r.pow(n as u32) * factorial(n);
    let identity_holds = lhs == rhs;
    let numeric_holds = numeric.then(|| {
        entries
            .iter()
            .all(|e| e.built_dim.map(|d| d as u128) == Some(e.dim) && e.built_type == Some(e.module_type))
    });
    Ok(CensusReport {
        n,
        degree: p.degree(),
        pass: identity_holds && numeric_holds.unwrap_or(true),
        entries,
        lhs,
        rhs,
        identity_holds,
        numeric_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub n: usize,
    pub shapes: Vec<String>,
    pub scalars: Vec<Vec<String>>,
    pub max_residual: f64,
    pub separates: bool,
    pub pass: bool,
}

/// Elementary symmetric polynomials in the `X_k + X_k⁻¹` act by scalars on
/// every `D(λ)`, and the scalar vectors tell the shapes apart.
pub fn center_check(p: &ParameterSet, n: usize, tol: f64, exec: Exec) -> Result<CenterReport> {
    if p.separability_vanishes(n) {
        return Err(Error::NotSeparate(n));
    }
    let shapes = enumerate_multipartitions(p.flavor, p.m(), n);
    let results = exec
        .map(&shapes, |s| CycloModule::build(s, p).map(|m| m.central_scalars()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let max_residual = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let separate = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).any(|(x, y)| !p.eq(x, y));
    let separates = (0..results.len())
        .all(|i| (i + 1..results.len()).all(|j| separate(&results[i].0, &results[j].0)));
    Ok(CenterReport {
        n,
        shapes: shapes.iter().map(ToString::to_string).collect(),
        scalars: results.iter().map(|r| r.0.iter().map(|s| s.display(20)).collect()).collect(),
        max_residual,
        separates,
        pass: separates && max_residual <= tol,
    })
}

/// Whether two matrices agree after converting `dense` to sparse form.
pub fn dense_close(a: &DenseMatrix, b: &SparseMatrix, tol: f64) -> bool {
    SparseMatrix::from_dense(a).sub(b).max_abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Precision;
    use crate::torus::{twisted_generator, GenKind};

    fn nd(flavor: Flavor, qs: &[&str]) -> ParameterSet {
        ParameterSet::parse(Variant::Nondegenerate, flavor, "3/2", qs, Precision::default()).unwrap()
    }

    fn dg(flavor: Flavor, qs: &[&str]) -> ParameterSet {
        ParameterSet::parse(Variant::Degenerate, flavor, "1", qs, Precision::default()).unwrap()
    }

    fn shape(f: Flavor, c: Vec<Vec<usize>>) -> Multipartition {
        Multipartition::from_nested(f, c).unwrap()
    }

    #[test]
    fn dimensions() {
        let p = nd(Flavor::S, &["5"]);
        let m = CycloModule::build(&shape(Flavor::S, vec![vec![2, 1], vec![1, 1]]), &p).unwrap();
        assert_eq!(m.total_dim, 160);
        let p = nd(Flavor::Zero, &["5"]);
        let m = CycloModule::build(&shape(Flavor::Zero, vec![vec![2]]), &p).unwrap();
        assert_eq!((m.total_dim, m.blocks.len()), (4, 1));
        let p = nd(Flavor::Zero, &["5", "7"]);
        let m = CycloModule::build(&shape(Flavor::Zero, vec![vec![1], vec![1]]), &p).unwrap();
        assert_eq!((m.total_dim, m.blocks.len()), (8, 2));
    }

    #[test]
    fn relations_small() {
        for (p, s) in [
            (nd(Flavor::Zero, &["5", "7"]), shape(Flavor::Zero, vec![vec![2], vec![1]])),
            (nd(Flavor::S, &["5"]), shape(Flavor::S, vec![vec![2, 1], vec![1]])),
            (nd(Flavor::Ss, &["5"]), shape(Flavor::Ss, vec![vec![1], vec![2], vec![1]])),
            (dg(Flavor::S, &["5"]), shape(Flavor::S, vec![vec![2, 1], vec![1]])),
            (dg(Flavor::Zero, &["5", "15/2"]), shape(Flavor::Zero, vec![vec![2], vec![1]])),
        ] {
            let m = CycloModule::build(&s, &p).unwrap();
            let r = m.verify_relations(1e-25);
            assert!(r.pass, "{s}: {:?}", r.residuals);
            for i in 1..m.n() {
                let ir = m.intertwiner_check(i, 1e-25).unwrap();
                assert!(ir.pass, "{s} s_{i}: {ir:?}");
            }
            assert!(m.eigenvalue_audit(1e-25).unwrap().pass);
            let irr = irreducibility_check(&m.gens, &p, 2, 0);
            assert!(irr.pass, "{s}: {irr:?}");
            assert_eq!(irr.module_type, Some(m.module_type));
        }
    }

    #[test]
    fn corrupted_omega_fails() {
        let p = nd(Flavor::Zero, &["5", "7"]);
        let mut m = CycloModule::build(&shape(Flavor::Zero, vec![vec![2], vec![1]]), &p).unwrap();
        let d = m.block_dim;
        let t = &mut m.gens.t[1];
        let (r, c) = t.entries().find(|(r, c, _)| r / d != c / d).map(|(r, c, _)| (r, c)).unwrap();
        let v = t.get(r, c).unwrap().clone();
        t.set(r, c, -v);
        assert!(!m.verify_relations(1e-25).pass);
    }

    #[test]
    fn direct_sum_is_reducible() {
        let p = nd(Flavor::Zero, &["5"]);
        let m = CycloModule::build(&shape(Flavor::Zero, vec![vec![2]]), &p).unwrap();
        let g = m.gens.direct_sum(&m.gens);
        assert!(commutant_dim(&g, &p, false) >= 4);
        assert!(!irreducibility_check(&g, &p, 1, 0).pass);
    }

    #[test]
    fn omega_examples() {
        let p = nd(Flavor::Zero, &["5"]);
        let u = Scalar::from_int(5, 256);
        let v = &u * &p.q.powi(2);
        let (qa, qb) = (p.qval(&u).unwrap(), p.qval(&v).unwrap());
        assert!(omega_scalar(&qa, &qb, &p).unwrap().is_zero());
        let w = Scalar::from_int(7, 256);
        let qw = p.qval(&w).unwrap();
        let a = omega_scalar(&qa, &qw, &p).unwrap();
        let b = omega_scalar(&qw, &qa, &p).unwrap();
        assert!(p.eq(&a, &b));
    }

    #[test]
    fn twist_coherence() {
        let p = nd(Flavor::Zero, &["5", "7"]);
        let m = CycloModule::build(&shape(Flavor::Zero, vec![vec![2], vec![1]]), &p).unwrap();
        let base = m.base.as_ref().unwrap();
        let d = m.block_dim;
        for (b, t) in m.blocks.iter().enumerate() {
            for k in 1..=m.n() {
                let tw = twisted_generator(base, &t.permutation(), GenKind::X, k);
                let blk = SparseMatrix::diag(m.gens.x[k - 1][b * d..(b + 1) * d].to_vec());
                assert_eq!(tw.sub(&blk).max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn census_examples() {
        let r = semisimplicity_census(&nd(Flavor::Zero, &["5"]), 2, true, Exec::Sequential).unwrap();
        assert_eq!((r.lhs, r.rhs), (32, 32));
        assert!(r.pass);
        let r = semisimplicity_census(&nd(Flavor::S, &[]), 2, true, Exec::Sequential).unwrap();
        assert_eq!((r.lhs, r.rhs), (8, 8));
        assert!(r.pass);
        let r = semisimplicity_census(&nd(Flavor::Ss, &[]), 1, true, Exec::Sequential).unwrap();
        assert_eq!((r.lhs, r.rhs), (4, 4));
        assert!(r.pass);
    }

    #[test]
    fn center_examples() {
        let r = center_check(&nd(Flavor::Zero, &["5"]), 2, 1e-25, Exec::Sequential).unwrap();
        assert!(r.pass && r.shapes.len() == 2);
    }

    #[test]
    fn dump_round_trip() {
        let p = nd(Flavor::S, &["5"]);
        let m = CycloModule::build(&shape(Flavor::S, vec![vec![2], vec![1]]), &p).unwrap();
        let back = CycloModule::load(&m.dump()).unwrap();
        let (a, b) = (m.verify_relations(1e-25), back.verify_relations(1e-25));
        assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits());
        assert_eq!(a.residuals, b.residuals);
    }
}
