//! Multipartitions, (shifted) standard tableaux and their counting identities.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Zero,
    S,
    Ss,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Zero, Flavor::S, Flavor::Ss];

    /// Number of strict components.
    pub fn n_strict(self) -> usize {
        match self {
            Flavor::Zero => 0,
            Flavor::S => 1,
            Flavor::Ss => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Zero => "zero",
            Flavor::S => "s",
            Flavor::Ss => "ss",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Flavor::Zero),
            "s" => Ok(Flavor::S),
            "ss" => Ok(Flavor::Ss),
            _ => Err(Error::InvalidParameter(format!("unknown flavor {s:?}"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Component label of a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// `0₋`, only for flavor ss.
    ZeroMinus,
    /// `0` for flavor s, `0₊` for flavor ss.
    ZeroPlus,
    /// Ordinary component `1..=m`.
    Ordinary(usize),
}

/// A partition; strictness is checked where required.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Partition {
    pub parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let p = Partition { parts };
        if p.parts.contains(&0) || p.parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!("not a partition: {:?}", p.parts)));
        }
        Ok(p)
    }

    pub fn new_strict(parts: Vec<usize>) -> Result<Self> {
        let p = Self::new(parts)?;
        if !p.is_strict() {
            return Err(Error::InvalidParameter(format!("not strict: {:?}", p.parts)));
        }
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

/// Partitions of `k` in reverse lexicographic order.
pub fn partitions(k: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, strict: bool, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, if strict { p - 1 } else { p }, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, false, &mut Vec::new(), &mut out);
    out
}

/// Strict partitions of `k` in reverse lexicographic order.
pub fn strict_partitions(k: usize) -> Vec<Partition> {
    partitions(k).into_iter().filter(Partition::is_strict).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multipartition {
    pub flavor: Flavor,
    pub strict: Vec<Partition>,
    pub ordinary: Vec<Partition>,
}

/// A box `(row, col, component)`; rows and columns are 1-based and shifted
/// rows of strict components start at column `row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Box {
    pub row: usize,
    pub col: usize,
    /// Index into strict components followed by ordinary ones.
    pub comp: usize,
}

impl Multipartition {
    pub fn new(flavor: Flavor, strict: Vec<Partition>, ordinary: Vec<Partition>) -> Result<Self> {
        if strict.len() != flavor.n_strict() {
            return Err(Error::InvalidParameter(format!(
                "flavor {flavor} needs {} strict components, got {}",
                flavor.n_strict(),
                strict.len()
            )));
        }
        if let Some(p) = strict.iter().find(|p| !p.is_strict()) {
            return Err(Error::InvalidParameter(format!("component {:?} is not strict", p.parts)));
        }
        for p in strict.iter().chain(&ordinary) {
            Partition::new(p.parts.clone())?;
        }
        Ok(Self { flavor, strict, ordinary })
    }

    pub fn n(&self) -> usize {
        self.strict.iter().chain(&self.ordinary).map(Partition::size).sum()
    }

    pub fn m(&self) -> usize {
        self.ordinary.len()
    }

    pub fn n_components(&self) -> usize {
        self.strict.len() + self.ordinary.len()
    }

    pub fn component(&self, c: usize) -> &Partition {
        if c < self.strict.len() {
            &self.strict[c]
        } else {
            &self.ordinary[c - self.strict.len()]
        }
    }

    pub fn is_strict_component(&self, c: usize) -> bool {
        c < self.strict.len()
    }

    pub fn label(&self, c: usize) -> Label {
        match (self.flavor, c) {
            (Flavor::Ss, 0) => Label::ZeroMinus,
            (Flavor::Ss, 1) | (Flavor::S, 0) => Label::ZeroPlus,
            _ => Label::Ordinary(c - self.strict.len() + 1),
        }
    }

    /// Boxes in row-reading order: component by component, rows top to bottom.
    pub fn boxes(&self) -> Vec<Box> {
        let mut out = Vec::with_capacity(self.n());
        for c in 0..self.n_components() {
            let shift = self.is_strict_component(c);
            for (r, &len) in self.component(c).parts.iter().enumerate() {
                let row = r + 1;
                let start = if shift { row } else { 1 };
                out.extend((start..start + len).map(|col| Box { row, col, comp: c }));
            }
        }
        out
    }

    pub fn contains(&self, b: Box) -> bool {
        if b.comp >= self.n_components() || b.row == 0 {
            return false;
        }
        let p = self.component(b.comp);
        let Some(&len) = p.parts.get(b.row - 1) else { return false };
        let start = if self.is_strict_component(b.comp) { b.row } else { 1 };
        b.col >= start && b.col < start + len
    }

    /// Diagonal boxes of the strict components.
    pub fn diagonal(&self) -> Vec<Box> {
        self.boxes().into_iter().filter(|b| self.is_strict_component(b.comp) && b.row == b.col).collect()
    }

    pub fn n_diagonal(&self) -> usize {
        self.strict.iter().map(Partition::len).sum()
    }

    /// Parses the nested-array form, e.g. `[[2,1],[1,1]]` for flavor s with
    /// the strict component first.
    pub fn from_nested(flavor: Flavor, comps: Vec<Vec<usize>>) -> Result<Self> {
        let k = flavor.n_strict();
        if comps.len() < k {
            return Err(Error::InvalidParameter("too few components".into()));
        }
        let strict = comps[..k].iter().map(|p| Partition::new(p.clone())).collect::<Result<_>>()?;
        let ordinary = comps[k..].iter().map(|p| Partition::new(p.clone())).collect::<Result<_>>()?;
        Self::new(flavor, strict, ordinary)
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .strict
            .iter()
            .chain(&self.ordinary)
            .map(|p| {
                let s: Vec<String> = p.parts.iter().map(usize::to_string).collect();
                format!("({})", s.join(","))
            })
            .collect();
        write!(f, "{}[{}]", self.flavor, comps.join(" "))
    }
}

/// All multipartitions of `n` for the given flavor with `m` ordinary components.
pub fn enumerate_multipartitions(flavor: Flavor, m: usize, n: usize) -> Vec<Multipartition> {
    let k = flavor.n_strict();
    let total = k + m;
    let mut out = Vec::new();
    if total == 0 {
        if n == 0 {
            out.push(Multipartition { flavor, strict: vec![], ordinary: vec![] });
        }
        return out;
    }
    let mut sizes = vec![0; total];
    fn compositions(i: usize, rem: usize, sizes: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == sizes.len() {
            sizes[i] = rem;
            out.push(sizes.clone());
            return;
        }
        for s in (0..=rem).rev() {
            sizes[i] = s;
            compositions(i + 1, rem - s, sizes, out);
        }
    }
    let mut comps = Vec::new();
    compositions(0, n, &mut sizes, &mut comps);
    for sz in comps {
        let choices: Vec<Vec<Partition>> = sz
            .iter()
            .enumerate()
            .map(|(c, &s)| if c < k { strict_partitions(s) } else { partitions(s) })
            .collect();
        let mut idx = vec![0; total];
        'outer: loop {
            let picked: Vec<Partition> = idx.iter().enumerate().map(|(c, &i)| choices[c][i].clone()).collect();
            out.push(Multipartition {
                flavor,
                strict: picked[..k].to_vec(),
                ordinary: picked[k..].to_vec(),
            });
            for c in (0..total).rev() {
                idx[c] += 1;
                if idx[c] < choices[c].len() {
                    continue 'outer;
                }
                idx[c] = 0;
            }
            break;
        }
    }
    out
}

/// Shape data shared by all tableaux of one multipartition.
#[derive(Debug)]
pub struct ShapeInfo {
    pub shape: Multipartition,
    pub boxes: Vec<Box>,
    index: HashMap<Box, usize>,
}

impl ShapeInfo {
    pub fn new(shape: Multipartition) -> Arc<Self> {
        let boxes = shape.boxes();
        let index = boxes.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Arc::new(Self { shape, boxes, index })
    }

    pub fn box_index(&self, b: Box) -> Option<usize> {
        self.index.get(&b).copied()
    }

    fn left(&self, b: usize) -> Option<usize> {
        let x = self.boxes[b];
        if x.col == 0 {
            return None;
        }
        self.box_index(Box { col: x.col - 1, ..x })
    }

    fn up(&self, b: usize) -> Option<usize> {
        let x = self.boxes[b];
        if x.row <= 1 {
            return None;
        }
        self.box_index(Box { row: x.row - 1, ..x })
    }
}

/// A standard filling; `entries[b]` is the entry (1-based) in box `b`.
#[derive(Clone, Debug)]
pub struct StandardTableau {
    info: Arc<ShapeInfo>,
    entries: Vec<usize>,
    positions: Vec<usize>,
}

impl PartialEq for StandardTableau {
    fn eq(&self, o: &Self) -> bool {
        self.info.shape == o.info.shape && self.entries == o.entries
    }
}

impl Eq for StandardTableau {}

impl std::hash::Hash for StandardTableau {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.entries.hash(h);
    }
}

impl StandardTableau {
    /// Builds a tableau from box entries, checking standardness.
    pub fn from_entries(info: Arc<ShapeInfo>, entries: Vec<usize>) -> Result<Self> {
        let n = info.boxes.len();
        let mut positions = vec![usize::MAX; n];
        for (b, &e) in entries.iter().enumerate() {
            if e == 0 || e > n || positions[e - 1] != usize::MAX {
                return Err(Error::InvalidParameter("filling is not a bijection".into()));
            }
            positions[e - 1] = b;
        }
        if entries.len() != n {
            return Err(Error::InvalidParameter("wrong number of entries".into()));
        }
        let t = Self { info, entries, positions };
        if !t.is_standard() {
            return Err(Error::InvalidParameter("filling is not standard".into()));
        }
        Ok(t)
    }

    /// The row-reading tableau `t^λ`.
    pub fn initial(info: Arc<ShapeInfo>) -> Self {
        let n = info.boxes.len();
        Self { info, entries: (1..=n).collect(), positions: (0..n).collect() }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.info.shape
    }

    pub fn info(&self) -> &Arc<ShapeInfo> {
        &self.info
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Box holding entry `k` (1-based).
    pub fn box_of(&self, k: usize) -> Box {
        self.info.boxes[self.positions[k - 1]]
    }

    /// Index in row-reading order of the box holding `k`.
    pub fn position_of(&self, k: usize) -> usize {
        self.positions[k - 1]
    }

    pub fn is_standard(&self) -> bool {
        (0..self.entries.len()).all(|b| {
            let e = self.entries[b];
            self.info.left(b).is_none_or(|l| self.entries[l] < e)
                && self.info.up(b).is_none_or(|u| self.entries[u] < e)
        })
    }

    /// Entries sitting on diagonal boxes of strict components.
    pub fn diagonal_positions(&self) -> BTreeSet<usize> {
        self.info
            .shape
            .diagonal()
            .into_iter()
            .map(|b| self.entries[self.info.box_index(b).expect("diagonal box")])
            .collect()
    }

    /// `s_i · t`, swapping entries `i` and `i+1`.
    pub fn apply_transposition(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n() {
            return Err(Error::NotAdmissible(i));
        }
        let mut t = self.clone();
        let (a, b) = (t.positions[i - 1], t.positions[i]);
        t.entries[a] = i + 1;
        t.entries[b] = i;
        t.positions.swap(i - 1, i);
        if !t.is_standard() {
            return Err(Error::NotAdmissible(i));
        }
        Ok(t)
    }

    pub fn is_admissible(&self, i: usize) -> bool {
        if i == 0 || i >= self.n() {
            return false;
        }
        let (a, b) = (self.box_of(i), self.box_of(i + 1));
        !(a.comp == b.comp && (a.row == b.row || a.col == b.col))
    }

    /// The permutation `τ` with `t = τ·t^λ`, as `τ(k)` for `k = 1..n` (0-based slot `k-1`).
    pub fn permutation(&self) -> Vec<usize> {
        self.entries.clone()
    }

    /// Number of pairs ordered differently from `t^λ`.
    pub fn inversions(&self) -> usize {
        let e = &self.entries;
        (0..e.len()).map(|a| (a + 1..e.len()).filter(|&b| e[a] > e[b]).count()).sum()
    }

    /// Admissible word `[k_1, …, k_p]` with `t = s_{k_p}⋯s_{k_1}·t^λ`, of minimal length.
    pub fn admissible_path(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut t = self.clone();
        // A descent k (k+1 read before k) always sits on non-adjacent boxes.
        while let Some(k) = (1..t.n()).find(|&k| t.positions[k] < t.positions[k - 1]) {
            t = t.apply_transposition(k).expect("descents are admissible");
            word.push(k);
        }
        word.reverse();
        word
    }

    /// Rows of entries per component, strict components first.
    pub fn to_rows(&self) -> Vec<Vec<Vec<usize>>> {
        let shape = &self.info.shape;
        let mut out: Vec<Vec<Vec<usize>>> =
            (0..shape.n_components()).map(|c| vec![Vec::new(); shape.component(c).len()]).collect();
        for (b, x) in self.info.boxes.iter().enumerate() {
            out[x.comp][x.row - 1].push(self.entries[b]);
        }
        out
    }
}

/// All standard tableaux of `shape`, with `t^λ` first.
pub fn enumerate_standard_tableaux(shape: &Multipartition) -> Vec<StandardTableau> {
    let info = ShapeInfo::new(shape.clone());
    let n = info.boxes.len();
    let mut out = Vec::new();
    let mut entries = vec![0usize; n];
    fn rec(k: usize, n: usize, info: &ShapeInfo, entries: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k > n {
            out.push(entries.clone());
            return;
        }
        for b in 0..n {
            if entries[b] != 0 {
                continue;
            }
            let ok = info.left(b).is_none_or(|l| entries[l] != 0) && info.up(b).is_none_or(|u| entries[u] != 0);
            if ok {
                entries[b] = k;
                rec(k + 1, n, info, entries, out);
                entries[b] = 0;
            }
        }
    }
    let mut fills = Vec::new();
    rec(1, n, &info, &mut entries, &mut fills);
    for e in fills {
        let mut positions = vec![0; n];
        for (b, &v) in e.iter().enumerate() {
            positions[v - 1] = b;
        }
        out.push(StandardTableau { info: info.clone(), entries: e, positions });
    }
    out
}

/// Counts standard tableaux by removing the largest entry recursively.
pub fn count_standard_tableaux(shape: &Multipartition) -> u128 {
    fn rec(comps: &mut Vec<(bool, Vec<usize>)>, memo: &mut HashMap<Vec<(bool, Vec<usize>)>, u128>) -> u128 {
        if comps.iter().all(|(_, p)| p.is_empty()) {
            return 1;
        }
        if let Some(&v) = memo.get(comps.as_slice()) {
            return v;
        }
        let mut total = 0;
        for c in 0..comps.len() {
            let len = comps[c].1.len();
            for r in 0..len {
                let parts = &comps[c].1;
                let strict = comps[c].0;
                let next = parts.get(r + 1).copied().unwrap_or(0);
                // The last box of row r is a corner when removing it keeps the shape valid.
                let corner = if strict { parts[r] > next + 1 || (parts[r] == 1 && next == 0) } else { parts[r] > next };
                if !corner {
                    continue;
                }
                let mut changed = comps.clone();
                changed[c].1[r] -= 1;
                if changed[c].1[r] == 0 {
                    changed[c].1.pop();
                }
                total += rec(&mut changed, memo);
            }
        }
        memo.insert(comps.clone(), total);
        total
    }
    let mut comps: Vec<(bool, Vec<usize>)> = (0..shape.n_components())
        .map(|c| (shape.is_strict_component(c), shape.component(c).parts.clone()))
        .collect();
    rec(&mut comps, &mut HashMap::new())
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Both counting identities: `Σ|Std(λ)|² = n!·mⁿ` over `m`-multipartitions, and
/// `Σ 2^{n−ℓ(ξ)}|Std(ξ)|² = n!` over strict partitions `ξ` of `n`.
pub fn check_rsk_identities(n: usize, m: usize) -> bool {
    let lhs: u128 = enumerate_multipartitions(Flavor::Zero, m, n)
        .iter()
        .map(|l| count_standard_tableaux(l).pow(2))
        .sum();
    let rhs = factorial(n) * (m as u128).pow(n as u32);
    let strict: u128 = strict_partitions(n)
        .into_iter()
        .map(|xi| {
            let shape = Multipartition { flavor: Flavor::S, strict: vec![xi.clone()], ordinary: vec![] };
            (1u128 << (n - xi.len())) * count_standard_tableaux(&shape).pow(2)
        })
        .sum();
    lhs == rhs && strict == factorial(n)
}

/// Factorization of `|Std(λ)|` over the strict and ordinary parts:
/// `binom(n, a+b)·binom(a+b, a)·|Std(λ^{(0₋)})|·|Std(λ^{(0₊)})|·|Std(μ)|`,
/// checked for every shape of the flavor with `m` ordinary components.
pub fn check_std_num(flavor: Flavor, m: usize, n: usize) -> bool {
    enumerate_multipartitions(flavor, m, n).iter().all(|shape| {
        let mut product = 1u128;
        let mut rest = n;
        for xi in &shape.strict {
            let single = Multipartition { flavor: Flavor::S, strict: vec![xi.clone()], ordinary: vec![] };
            product *= binomial(rest, xi.size()) * count_standard_tableaux(&single);
            rest -= xi.size();
        }
        let mu = Multipartition { flavor: Flavor::Zero, strict: vec![], ordinary: shape.ordinary.clone() };
        if m > 0 {
            product *= count_standard_tableaux(&mu);
        }
        product == count_standard_tableaux(shape)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn std_num_factorization() {
        for n in 0..=5 {
            for m in 0..=2 {
                assert!(check_std_num(Flavor::Ss, m, n), "ss m={m} n={n}");
                assert!(check_std_num(Flavor::S, m, n), "s m={m} n={n}");
            }
        }
    }

    fn mp(flavor: Flavor, comps: Vec<Vec<usize>>) -> Multipartition {
        Multipartition::from_nested(flavor, comps).unwrap()
    }

    #[test]
    fn multipartition_counts() {
        assert_eq!(enumerate_multipartitions(Flavor::Zero, 1, 4).len(), 5);
        let s = enumerate_multipartitions(Flavor::S, 0, 4);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].strict[0].parts, vec![4]);
        assert_eq!(s[1].strict[0].parts, vec![3, 1]);
        assert_eq!(enumerate_multipartitions(Flavor::Ss, 0, 2).len(), 3);
        assert_eq!(enumerate_multipartitions(Flavor::Zero, 0, 0).len(), 1);
        assert!(enumerate_multipartitions(Flavor::Zero, 0, 3).is_empty());
    }

    #[test]
    fn tableau_counts() {
        let l = mp(Flavor::S, vec![vec![2, 1], vec![1, 1]]);
        let ts = enumerate_standard_tableaux(&l);
        assert_eq!(ts.len(), 10);
        assert_eq!(ts[0], StandardTableau::initial(ShapeInfo::new(l.clone())));
        assert_eq!(enumerate_standard_tableaux(&mp(Flavor::Zero, vec![vec![5]])).len(), 1);
        assert_eq!(enumerate_standard_tableaux(&mp(Flavor::Zero, vec![vec![2, 1]])).len(), 2);
    }

    #[test]
    fn diagonal_sets() {
        let l = mp(Flavor::S, vec![vec![2, 1], vec![1, 1]]);
        let info = ShapeInfo::new(l);
        let t0 = StandardTableau::initial(info.clone());
        assert_eq!(t0.diagonal_positions().into_iter().collect::<Vec<_>>(), vec![1, 3]);
        // Rows (1,3 / 5) in the strict component and column (2,4).
        let t = StandardTableau::from_entries(info, vec![1, 3, 5, 2, 4]).unwrap();
        assert_eq!(t.diagonal_positions().into_iter().collect::<Vec<_>>(), vec![1, 5]);
        let z = mp(Flavor::Zero, vec![vec![2], vec![1]]);
        assert!(StandardTableau::initial(ShapeInfo::new(z)).diagonal_positions().is_empty());
    }

    #[test]
    fn transpositions() {
        let l = mp(Flavor::S, vec![vec![2, 1], vec![1, 1]]);
        let t0 = StandardTableau::initial(ShapeInfo::new(l));
        let t = t0.apply_transposition(3).unwrap();
        assert_eq!(t.entries(), &[1, 2, 4, 3, 5]);
        assert_eq!(t.apply_transposition(3).unwrap(), t0);
        assert!(matches!(t0.apply_transposition(1), Err(Error::NotAdmissible(1))));
    }

    #[test]
    fn paths() {
        let l = mp(Flavor::S, vec![vec![2, 1], vec![1, 1]]);
        let info = ShapeInfo::new(l);
        let t0 = StandardTableau::initial(info.clone());
        assert!(t0.admissible_path().is_empty());
        let t = StandardTableau::from_entries(info, vec![1, 3, 5, 2, 4]).unwrap();
        let w = t.admissible_path();
        assert_eq!(w.len(), 3);
        assert_eq!(w.len(), t.inversions());
        let mut cur = t0;
        for k in w {
            cur = cur.apply_transposition(k).unwrap();
        }
        assert_eq!(cur, t);
    }

    #[test]
    fn rsk() {
        assert!(check_rsk_identities(3, 2));
        assert!(check_rsk_identities(0, 3));
        assert!(check_rsk_identities(4, 1));
        let s: u128 = enumerate_multipartitions(Flavor::Zero, 1, 4)
            .iter()
            .map(|l| count_standard_tableaux(l).pow(2))
            .sum();
        assert_eq!(s, 24);
    }

    #[test]
    fn counting_recurrence_matches_enumeration() {
        for f in Flavor::ALL {
            for m in 0..=2 {
                for n in 0..=5 {
                    for l in enumerate_multipartitions(f, m, n) {
                        assert_eq!(enumerate_standard_tableaux(&l).len() as u128, count_standard_tableaux(&l), "{l}");
                    }
                }
            }
        }
    }
}
