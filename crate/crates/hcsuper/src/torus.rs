//! Irreducible modules over the torus-Clifford subalgebra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SparseMatrix};
use crate::params::{ParameterSet, ResidueSequence, Variant};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleType {
    M,
    Q,
}

impl ModuleType {
    pub fn name(self) -> &'static str {
        match self {
            ModuleType::M => "M",
            ModuleType::Q => "Q",
        }
    }
}

/// `X_k` diagonal (eigenvalues per basis vector), `C_k` sparse, with parity bits.
#[derive(Clone, Debug)]
pub struct TorusModule {
    pub dim: usize,
    pub parity: Vec<u8>,
    pub x: Vec<Vec<Scalar>>,
    pub c: Vec<SparseMatrix>,
    pub module_type: ModuleType,
    pub odd_involution: Option<SparseMatrix>,
    pub residues: ResidueSequence,
    pub variant: Variant,
    /// Number of type-Q rank-one factors.
    pub gamma0: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    X,
    Xinv,
    C,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl TorusModule {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_matrix(&self, k: usize) -> SparseMatrix {
        SparseMatrix::diag(self.x[k].clone())
    }

    pub fn x_inv_diag(&self, k: usize) -> Vec<Scalar> {
        self.x[k].iter().map(Scalar::recip).collect()
    }

    pub fn parity_matrix(&self, bits: u32) -> SparseMatrix {
        SparseMatrix::diag(
            self.parity.iter().map(|&p| Scalar::from_int(if p == 0 { 1 } else { -1 }, bits)).collect(),
        )
    }
}

/// The two-dimensional module on which `X_1` acts by the residue's eigenvalues.
pub fn rank_one_module(res: &Scalar, p: &ParameterSet) -> Result<TorusModule> {
    let bits = p.bits();
    let qv = p.qval(res)?;
    let (x, is_q) = match p.variant {
        Variant::Nondegenerate => {
            if res.is_zero() {
                return Err(Error::InvalidParameter("residue must be nonzero".into()));
            }
            let four = Scalar::from_int(4, bits);
            if p.eq(&qv.square(), &four) {
                let b = &qv / &Scalar::from_int(2, bits);
                (vec![b.clone(), b], true)
            } else {
                let b = p.b_plus(res)?;
                let inv = b.recip();
                (vec![b, inv], false)
            }
        }
        Variant::Degenerate => {
            if qv.abs_f64() <= p.precision.epsilon {
                (vec![Scalar::zero(bits), Scalar::zero(bits)], true)
            } else {
                let r = qv.sqrt_principal();
                (vec![r.clone(), -r], false)
            }
        }
    };
    let one = Scalar::one(bits);
    let c = SparseMatrix::from_entries(2, 2, vec![(0, 1, one.clone()), (1, 0, one)]);
    let odd_involution = is_q.then(|| {
        let i = Scalar::i(bits);
        SparseMatrix::from_entries(2, 2, vec![(1, 0, i.clone()), (0, 1, -i)])
    });
    Ok(TorusModule {
        dim: 2,
        parity: vec![0, 1],
        x: vec![x],
        c: vec![c],
        module_type: if is_q { ModuleType::Q } else { ModuleType::M },
        odd_involution,
        residues: ResidueSequence { values: vec![res.clone()], qvalues: vec![qv] },
        variant: p.variant,
        gamma0: usize::from(is_q),
    })
}

/// Graded tensor product, split in half when both factors are of type Q.
pub fn super_tensor(v: &TorusModule, w: &TorusModule, p: &ParameterSet) -> Result<TorusModule> {
    let bits = p.bits();
    let (dv, dw) = (v.dim, w.dim);
    let id_w = SparseMatrix::identity(dw, bits);
    let pv = v.parity_matrix(bits);
    let dim = dv * dw;
    let parity: Vec<u8> = (0..dim).map(|k| v.parity[k / dw] ^ w.parity[k % dw]).collect();
    let mut x: Vec<Vec<Scalar>> = v.x.iter().map(|xv| (0..dim).map(|k| xv[k / dw].clone()).collect()).collect();
    x.extend(w.x.iter().map(|xw| (0..dim).map(|k| xw[k % dw].clone()).collect::<Vec<_>>()));
    let mut c: Vec<SparseMatrix> = v.c.iter().map(|cv| SparseMatrix::kron(cv, &id_w)).collect();
    c.extend(w.c.iter().map(|cw| SparseMatrix::kron(&pv, cw)));
    let mut residues = v.residues.clone();
    residues.values.extend(w.residues.values.iter().cloned());
    residues.qvalues.extend(w.residues.qvalues.iter().cloned());
    let gamma0 = v.gamma0 + w.gamma0;
    let full = |module_type, odd_involution| TorusModule {
        dim,
        parity: parity.clone(),
        x: x.clone(),
        c: c.clone(),
        module_type,
        odd_involution,
        residues: residues.clone(),
        variant: p.variant,
        gamma0,
    };
    match (&v.odd_involution, &w.odd_involution) {
        (None, None) => Ok(full(ModuleType::M, None)),
        (Some(jv), None) => Ok(full(ModuleType::Q, Some(SparseMatrix::kron(jv, &id_w)))),
        (None, Some(jw)) => Ok(full(ModuleType::Q, Some(SparseMatrix::kron(&pv, jw)))),
        (Some(jv), Some(jw)) => {
            let j = SparseMatrix::kron(&jv.mul(&pv), jw);
            split_plus_i(&j, &parity, &x, &c, p).map(|(parity, x, c)| TorusModule {
                dim: parity.len(),
                parity,
                x,
                c,
                module_type: ModuleType::M,
                odd_involution: None,
                residues: residues.clone(),
                variant: p.variant,
                gamma0,
            })
        }
    }
}

type Split = (Vec<u8>, Vec<Vec<Scalar>>, Vec<SparseMatrix>);

/// Restricts to the `+i` eigenspace of the even operator `j`, group by group
/// over (joint `X` pattern, parity) so that `X` stays diagonal.
fn split_plus_i(j: &SparseMatrix, parity: &[u8], x: &[Vec<Scalar>], c: &[SparseMatrix], p: &ParameterSet) -> Result<Split> {
    let bits = p.bits();
    let dim = parity.len();
    let groups = pattern_groups(x, parity, p);
    let i = Scalar::i(bits);
    let mut basis: Vec<(usize, Vec<(usize, Scalar)>)> = Vec::new();
    for g in &groups {
        let mut n = DenseMatrix::zeros(g.len(), g.len(), bits);
        for (a, &r) in g.iter().enumerate() {
            for (b, &s) in g.iter().enumerate() {
                let mut v = j.get(r, s).cloned().unwrap_or_else(|| Scalar::zero(bits));
                if a == b {
                    v -= &i;
                }
                n.set(a, b, v);
            }
        }
        let (free, vecs) = n.nullspace(1e-40, bits);
        for (f, vec) in free.into_iter().zip(vecs) {
            let sparse = vec.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(a, s)| (g[a], s)).collect();
            basis.push((g[f], sparse));
        }
    }
    if 2 * basis.len() != dim {
        return Err(Error::SplitFailure(format!("eigenspace has dimension {} in {}", basis.len(), dim)));
    }
    let k = basis.len();
    let e = SparseMatrix::from_entries(
        dim,
        k,
        basis.iter().enumerate().flat_map(|(col, (_, v))| v.iter().map(move |(r, s)| (*r, col, s.clone()))),
    );
    let mut new_index = vec![usize::MAX; dim];
    for (col, (r, _)) in basis.iter().enumerate() {
        new_index[*r] = col;
    }
    let restrict = |a: &SparseMatrix| {
        let ae = a.mul(&e);
        let mut out = SparseMatrix::zeros(k, k);
        for (r, col, v) in ae.entries() {
            if new_index[r] != usize::MAX {
                out.set(new_index[r], col, v.clone());
            }
        }
        out.prune(1e-60);
        out
    };
    let new_parity = basis.iter().map(|(r, _)| parity[*r]).collect();
    let new_x = x.iter().map(|xk| basis.iter().map(|(r, _)| xk[*r].clone()).collect()).collect();
    let new_c = c.iter().map(restrict).collect();
    Ok((new_parity, new_x, new_c))
}

/// Groups basis indices by joint `X` eigenvalue pattern and parity.
pub fn pattern_groups(x: &[Vec<Scalar>], parity: &[u8], p: &ParameterSet) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for u in 0..parity.len() {
        let same = |v: usize| parity[v] == parity[u] && x.iter().all(|xk| p.eq(&xk[u], &xk[v]));
        match groups.iter_mut().find(|g| same(g[0])) {
            Some(g) => g.push(u),
            None => groups.push(vec![u]),
        }
    }
    groups
}

/// Left fold of [`super_tensor`] over rank-one modules.
pub fn build_l(rs: &ResidueSequence, p: &ParameterSet) -> Result<TorusModule> {
    let mut it = rs.values.iter();
    let first = it.next().ok_or_else(|| Error::InvalidParameter("empty residue sequence".into()))?;
    let mut acc = rank_one_module(first, p)?;
    for r in it {
        acc = super_tensor(&acc, &rank_one_module(r, p)?, p)?;
    }
    Ok(acc)
}

/// Matrix of the generator at position `k` (1-based) on the twist `L^τ`,
/// where `tau[k-1] = τ(k)`.
pub fn twisted_generator(v: &TorusModule, tau: &[usize], kind: GenKind, k: usize) -> SparseMatrix {
    let src = tau.iter().position(|&t| t == k).expect("tau is a permutation");
    match kind {
        GenKind::X => v.x_matrix(src),
        GenKind::Xinv => SparseMatrix::diag(v.x_inv_diag(src)),
        GenKind::C => v.c[src].clone(),
    }
}

/// Maximum residual over the torus and Clifford relations (and the odd
/// involution's properties for type Q).
pub fn verify_torus_relations(v: &TorusModule, p: &ParameterSet, tol: f64) -> TorusReport {
    let bits = p.bits();
    let n = v.n();
    let id = SparseMatrix::identity(v.dim, bits);
    let xs: Vec<SparseMatrix> = (0..n).map(|k| v.x_matrix(k)).collect();
    let mut worst: f64 = 0.0;
    let note = |w: &mut f64, m: SparseMatrix| *w = w.max(m.max_abs());
    for k in 0..n {
        note(&mut worst, v.c[k].mul(&v.c[k]).sub(&id));
        for j in 0..n {
            note(&mut worst, xs[k].mul(&xs[j]).sub(&xs[j].mul(&xs[k])));
            if j != k {
                note(&mut worst, v.c[j].mul(&v.c[k]).add(&v.c[k].mul(&v.c[j])));
                note(&mut worst, xs[k].mul(&v.c[j]).sub(&v.c[j].mul(&xs[k])));
            }
        }
        match v.variant {
            Variant::Nondegenerate => {
                let xinv = SparseMatrix::diag(v.x_inv_diag(k));
                note(&mut worst, xs[k].mul(&xinv).sub(&id));
                note(&mut worst, xs[k].mul(&v.c[k]).sub(&v.c[k].mul(&xinv)));
            }
            Variant::Degenerate => note(&mut worst, xs[k].mul(&v.c[k]).add(&v.c[k].mul(&xs[k]))),
        }
        worst = worst.max(parity_violation(&v.c[k], &v.parity, true));
    }
    if let Some(j) = &v.odd_involution {
        note(&mut worst, j.mul(j).sub(&id));
        for (x, c) in xs.iter().zip(&v.c).take(n) {
            note(&mut worst, j.mul(x).sub(&x.mul(j)));
            note(&mut worst, j.mul(c).add(&c.mul(j)));
        }
        worst = worst.max(parity_violation(j, &v.parity, true));
    }
    TorusReport { max_residual: worst, tolerance: tol, pass: worst <= tol }
}

/// Largest entry connecting basis vectors of equal (`odd`) or opposite parity.
pub fn parity_violation(m: &SparseMatrix, parity: &[u8], odd: bool) -> f64 {
    m.entries()
        .filter(|(r, c, _)| (parity[*r] == parity[*c]) == odd)
        .map(|(_, _, v)| v.abs_f64())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{Flavor, Multipartition, ShapeInfo, StandardTableau};
    use crate::scalar::Precision;

    fn nd(flavor: Flavor, qs: &[&str]) -> ParameterSet {
        ParameterSet::parse(Variant::Nondegenerate, flavor, "3/2", qs, Precision::default()).unwrap()
    }

    #[test]
    fn rank_one() {
        let p = nd(Flavor::S, &["5"]);
        let one = Scalar::one(256);
        let m = rank_one_module(&one, &p).unwrap();
        assert_eq!(m.module_type, ModuleType::Q);
        assert!(m.x[0].iter().all(|x| p.eq(x, &one)));
        let g = rank_one_module(&Scalar::from_int(5, 256), &p).unwrap();
        assert_eq!(g.module_type, ModuleType::M);
        assert!(verify_torus_relations(&g, &p, 1e-30).pass);
        assert!(verify_torus_relations(&m, &p, 1e-30).pass);
        assert!(rank_one_module(&Scalar::zero(256), &p).is_err());
        let d = ParameterSet::parse(Variant::Degenerate, Flavor::S, "1", &[], Precision::default()).unwrap();
        let z = rank_one_module(&Scalar::zero(256), &d).unwrap();
        assert_eq!(z.module_type, ModuleType::Q);
        assert!(z.x[0].iter().all(Scalar::is_zero));
    }

    #[test]
    fn tensor_types() {
        let p = nd(Flavor::Ss, &["5"]);
        let q1 = rank_one_module(&Scalar::one(256), &p).unwrap();
        let qm = rank_one_module(&Scalar::from_int(-1, 256), &p).unwrap();
        let m = rank_one_module(&Scalar::from_int(5, 256), &p).unwrap();
        let mm = super_tensor(&m, &m, &p).unwrap();
        assert_eq!((mm.dim, mm.module_type), (4, ModuleType::M));
        let qmx = super_tensor(&q1, &m, &p).unwrap();
        assert_eq!((qmx.dim, qmx.module_type), (4, ModuleType::Q));
        let mq = super_tensor(&m, &q1, &p).unwrap();
        assert_eq!((mq.dim, mq.module_type), (4, ModuleType::Q));
        let qq = super_tensor(&q1, &qm, &p).unwrap();
        assert_eq!((qq.dim, qq.module_type), (2, ModuleType::M));
        for t in [&mm, &qmx, &mq, &qq] {
            assert!(verify_torus_relations(t, &p, 1e-30).pass);
        }
    }

    #[test]
    fn build_dimensions() {
        let p = nd(Flavor::S, &["5"]);
        let shape = Multipartition::from_nested(Flavor::S, vec![vec![2, 1], vec![1, 1]]).unwrap();
        let t = StandardTableau::initial(ShapeInfo::new(shape));
        let l = build_l(&p.residue_sequence(&t).unwrap(), &p).unwrap();
        assert_eq!(l.dim, 16);
        assert_eq!(l.module_type, ModuleType::M);
        let r = verify_torus_relations(&l, &p, 1e-30);
        assert!(r.pass, "{}", r.max_residual);
    }

    #[test]
    fn corrupted_c_fails() {
        let p = nd(Flavor::Zero, &["5"]);
        let mut m = build_l(&p.residue_sequence(&StandardTableau::initial(ShapeInfo::new(
            Multipartition::from_nested(Flavor::Zero, vec![vec![2]]).unwrap(),
        ))).unwrap(), &p)
        .unwrap();
        m.c[1].set(0, 0, Scalar::one(256));
        assert!(!verify_torus_relations(&m, &p, 1e-30).pass);
    }

    #[test]
    fn twisting() {
        let p = nd(Flavor::Zero, &["5", "7"]);
        let shape = Multipartition::from_nested(Flavor::Zero, vec![vec![2], vec![1]]).unwrap();
        let l = build_l(&p.residue_sequence(&StandardTableau::initial(ShapeInfo::new(shape))).unwrap(), &p).unwrap();
        let id = [1, 2, 3];
        assert_eq!(twisted_generator(&l, &id, GenKind::X, 2).sub(&l.x_matrix(1)).max_abs(), 0.0);
        let s1 = [2, 1, 3];
        assert_eq!(twisted_generator(&l, &s1, GenKind::C, 1).sub(&l.c[1]).max_abs(), 0.0);
        // twist by σ then τ equals twist by τσ
        let sigma = [2, 3, 1];
        let tau = [3, 1, 2];
        let compose: Vec<usize> = (0..3).map(|k| tau[sigma[k] - 1]).collect();
        for k in 1..=3 {
            let inner = tau.iter().position(|&t| t == k).unwrap() + 1;
            let twice = twisted_generator(&l, &sigma, GenKind::X, inner);
            let once = twisted_generator(&l, &compose, GenKind::X, k);
            assert_eq!(twice.sub(&once).max_abs(), 0.0);
        }
    }
}
