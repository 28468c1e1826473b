//! Brute-force verification engine.
//!
//! Finite-dimensional simple sl(n)-modules are realized as explicit
//! matrices over the rationals: the module with highest weight λ (shift
//! normalized to a partition) is generated inside the tensor product of the
//! symmetric powers S^{λ_1}V ⊗ ... ⊗ S^{λ_m}V of the natural
//! representation, one factor per nonzero row. The highest weight vector is
//! the unique (up to scalar) vector of weight λ killed by every raising
//! operator; the basis is obtained by closing it under the lowering
//! operators with weight-graded exact row reduction. Everything downstream
//! (characters, highest-vector searches, Casimir matrices, truncated
//! annihilators) is an exact computation on these matrices and serves as
//! an independent check of the combinatorial modules of the crate.

pub mod linalg;

use num::Zero;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::finrep::{self, CharacterTable};
use crate::weights::FiniteWeight;

pub use linalg::{in_span, nullspace, rank, rat, same_span, Mat, Rat};

/// Default guard on `weyl_dim` for matrix constructions.
pub const DEFAULT_ORACLE_CAP: u64 = 200;

/// Guard on (#PBW monomials) x (total squared dimension) for the truncated
/// annihilator solver.
const PBW_SOLVER_CELL_CAP: usize = 2_000_000;

type SVec = BTreeMap<usize, Rat>;

fn svec_add_scaled(target: &mut SVec, src: &SVec, c: &Rat) {
    for (&k, v) in src {
        let entry = target.entry(k).or_insert_with(Rat::zero);
        *entry += v * c;
        if entry.is_zero() {
            target.remove(&k);
        }
    }
}

/// The ambient product of symmetric powers. Basis elements (tuples of
/// exponent vectors, one per factor) are interned on first use.
struct Ambient {
    n: usize,
    degrees: Vec<u32>,
    elems: Vec<Vec<Vec<u32>>>,
    index: HashMap<Vec<Vec<u32>>, usize>,
}

impl Ambient {
    fn new(n: usize, degrees: Vec<u32>) -> Self {
        Ambient {
            n,
            degrees,
            elems: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn intern(&mut self, e: Vec<Vec<u32>>) -> usize {
        if let Some(&i) = self.index.get(&e) {
            return i;
        }
        let i = self.elems.len();
        self.index.insert(e.clone(), i);
        self.elems.push(e);
        i
    }

    /// Action of the coordinate matrix E_{i,j} (0-based), i.e. the
    /// derivation x_i ∂_j on each symmetric factor.
    fn apply_eij(&mut self, i: usize, j: usize, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&idx, c) in v {
            let elem = self.elems[idx].clone();
            for t in 0..elem.len() {
                let d = elem[t][j];
                if d == 0 {
                    continue;
                }
                let mut new_elem = elem.clone();
                new_elem[t][j] -= 1;
                new_elem[t][i] += 1;
                let target = self.intern(new_elem);
                let coeff = c * rat(d as i64);
                let entry = out.entry(target).or_insert_with(Rat::zero);
                *entry += coeff;
                if entry.is_zero() {
                    out.remove(&target);
                }
            }
        }
        out
    }

    /// All basis elements of the given total weight.
    fn elems_of_weight(&mut self, target: &[i64]) -> Vec<usize> {
        let mut found = Vec::new();
        let degrees = self.degrees.clone();
        let n = self.n;
        let mut factors: Vec<Vec<u32>> = Vec::new();
        let mut remaining: Vec<i64> = target.to_vec();
        fn rec(
            ambient_n: usize,
            degrees: &[u32],
            t: usize,
            remaining: &mut Vec<i64>,
            factors: &mut Vec<Vec<u32>>,
            out: &mut Vec<Vec<Vec<u32>>>,
        ) {
            if t == degrees.len() {
                if remaining.iter().all(|&x| x == 0) {
                    out.push(factors.clone());
                }
                return;
            }
            // choose an exponent vector of total degree degrees[t]
            fn choose(
                ambient_n: usize,
                t: usize,
                degrees: &[u32],
                k: usize,
                left: u32,
                cur: &mut Vec<u32>,
                remaining: &mut Vec<i64>,
                factors: &mut Vec<Vec<u32>>,
                out: &mut Vec<Vec<Vec<u32>>>,
            ) {
                if k == ambient_n {
                    if left == 0 {
                        factors.push(cur.clone());
                        rec(ambient_n, degrees, t + 1, remaining, factors, out);
                        factors.pop();
                    }
                    return;
                }
                let hi = (remaining[k].max(0) as u32).min(left);
                for x in 0..=hi {
                    cur.push(x);
                    remaining[k] -= x as i64;
                    choose(
                        ambient_n, t, degrees, k + 1, left - x, cur, remaining, factors, out,
                    );
                    remaining[k] += x as i64;
                    cur.pop();
                }
            }
            let mut cur = Vec::with_capacity(ambient_n);
            choose(
                ambient_n,
                t,
                degrees,
                0,
                degrees[t],
                &mut cur,
                remaining,
                factors,
                out,
            );
        }
        let mut out = Vec::new();
        rec(n, &degrees, 0, &mut remaining, &mut factors, &mut out);
        for e in out {
            found.push(self.intern(e));
        }
        found
    }
}

/// Weight-graded echelon bookkeeping: member vectors plus echelon rows
/// expressing reduced vectors over the members.
#[derive(Default)]
struct WeightSpace {
    members: Vec<usize>,
    ech: Vec<(SVec, Vec<Rat>)>,
    pivots: BTreeMap<usize, usize>,
}

impl WeightSpace {
    fn reduce(&self, v: &SVec) -> (SVec, Vec<Rat>) {
        let mut r = v.clone();
        let mut acc = vec![Rat::zero(); self.members.len()];
        for (&pivot, &row_idx) in &self.pivots {
            let Some(coeff) = r.get(&pivot).cloned() else {
                continue;
            };
            let (rvec, expr) = &self.ech[row_idx];
            let f = &coeff / &rvec[&pivot];
            let neg = -f.clone();
            svec_add_scaled(&mut r, rvec, &neg);
            for (k, x) in expr.iter().enumerate() {
                acc[k] += x * &f;
            }
        }
        (r, acc)
    }

    fn try_express(&self, v: &SVec) -> Option<Vec<Rat>> {
        let (r, acc) = self.reduce(v);
        if r.is_empty() {
            Some(acc)
        } else {
            None
        }
    }

    /// Adds `v` as a new member if independent; returns its member slot.
    fn insert_if_new(&mut self, basis_idx: usize, v: &SVec) -> bool {
        let (r, acc) = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.members.push(basis_idx);
        // v = r + sum acc_k member_k, so r = v - sum acc_k member_k
        let mut expr: Vec<Rat> = acc.into_iter().map(|x| -x).collect();
        expr.push(rat(1));
        let pivot = *r.keys().next().unwrap();
        self.pivots.insert(pivot, self.ech.len());
        self.ech.push((r, expr));
        true
    }
}

/// Exact matrix realization of a finite-dimensional simple sl(n)-module.
pub struct MatrixModule {
    n: usize,
    dim: usize,
    hw: FiniteWeight,
    /// Basis weights in the coordinate frame of `hw`.
    weights: Vec<Vec<i64>>,
    e: Vec<Mat>,
    f: Vec<Mat>,
    h: Vec<Mat>,
}

impl MatrixModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn highest_weight(&self) -> &FiniteWeight {
        &self.hw
    }

    pub fn basis_weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn raising(&self, i: usize) -> &Mat {
        &self.e[i - 1]
    }

    pub fn lowering(&self, i: usize) -> &Mat {
        &self.f[i - 1]
    }

    pub fn cartan(&self, i: usize) -> &Mat {
        &self.h[i - 1]
    }

    /// Structural sanity: diagonal Cartan action matching the recorded
    /// weights, generator commutation relations, highest weight vector
    /// killed by raising operators.
    pub fn self_check(&self) -> Result<()> {
        let n = self.n;
        for i in 1..n {
            let hi = &self.h[i - 1];
            for (b, w) in self.weights.iter().enumerate() {
                let expect = rat(w[i - 1] - w[i]);
                for r in 0..self.dim {
                    let got = &hi[(r, b)];
                    let want = if r == b { expect.clone() } else { Rat::zero() };
                    if got != &want {
                        return Err(Error::Internal(format!(
                            "h_{i} not diagonal-with-weights at column {b}"
                        )));
                    }
                }
            }
        }
        for i in 1..n {
            for j in 1..n {
                let com = self.e[i - 1].commutator(&self.f[j - 1]);
                if i == j {
                    if com != self.h[i - 1] {
                        return Err(Error::Internal(format!("[e_{i}, f_{i}] != h_{i}")));
                    }
                } else if !com.is_zero() {
                    return Err(Error::Internal(format!("[e_{i}, f_{j}] != 0")));
                }
                // Cartan action on raising operators
                let com = self.h[i - 1].commutator(&self.e[j - 1]);
                let a = if i == j {
                    2
                } else if i.abs_diff(j) == 1 {
                    -1
                } else {
                    0
                };
                if com != self.e[j - 1].scale(&rat(a)) {
                    return Err(Error::Internal(format!("[h_{i}, e_{j}] != a e_{j}")));
                }
                if i.abs_diff(j) >= 2 {
                    if !self.e[i - 1].commutator(&self.e[j - 1]).is_zero() {
                        return Err(Error::Internal(format!("[e_{i}, e_{j}] != 0")));
                    }
                    if !self.f[i - 1].commutator(&self.f[j - 1]).is_zero() {
                        return Err(Error::Internal(format!("[f_{i}, f_{j}] != 0")));
                    }
                }
            }
        }
        for i in 1..n {
            let col: Vec<Rat> = (0..self.dim).map(|r| self.e[i - 1][(r, 0)].clone()).collect();
            if col.iter().any(|x| !x.is_zero()) {
                return Err(Error::Internal(format!(
                    "highest weight vector not killed by e_{i}"
                )));
            }
        }
        Ok(())
    }

    /// All coordinate matrices E_{a,b}, a != b (1-based), derived from the
    /// simple generators by commutators.
    fn coordinate_matrices(&self) -> Vec<Vec<Option<Mat>>> {
        let n = self.n;
        let mut m: Vec<Vec<Option<Mat>>> = vec![vec![None; n + 1]; n + 1];
        for i in 1..n {
            m[i][i + 1] = Some(self.e[i - 1].clone());
            m[i + 1][i] = Some(self.f[i - 1].clone());
        }
        for span in 2..n {
            for a in 1..=n - span {
                let b = a + span;
                let mid = a + 1;
                let upper = m[a][mid]
                    .as_ref()
                    .unwrap()
                    .commutator(m[mid][b].as_ref().unwrap());
                let lower = m[b][mid]
                    .as_ref()
                    .unwrap()
                    .commutator(m[mid][a].as_ref().unwrap());
                m[a][b] = Some(upper);
                m[b][a] = Some(lower);
            }
        }
        m
    }

    /// Generator matrices in the fixed PBW ordering: raising coordinate
    /// matrices (lex over pairs i < j), then the Cartan basis h_1..h_{n-1},
    /// then lowering coordinate matrices (lex over pairs i < j).
    pub fn generator_matrices(&self) -> Vec<Mat> {
        let n = self.n;
        let coords = self.coordinate_matrices();
        let mut gens = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                gens.push(coords[i][j].as_ref().unwrap().clone());
            }
        }
        for i in 1..n {
            gens.push(self.h[i - 1].clone());
        }
        for i in 1..=n {
            for j in i + 1..=n {
                gens.push(coords[j][i].as_ref().unwrap().clone());
            }
        }
        gens
    }
}

/// Builds the simple sl(n)-module with highest weight `hw` as explicit
/// rational matrices; `dim_cap` guards the dimension.
pub fn build_simple(hw: &FiniteWeight, dim_cap: u64) -> Result<MatrixModule> {
    if !hw.is_dominant() {
        return Err(Error::Domain(format!("{hw} is not dominant")));
    }
    let dim = finrep::weyl_dim(hw)?;
    if dim > dim_cap {
        return Err(Error::Resource(format!(
            "weyl_dim {dim} exceeds the oracle cap {dim_cap}"
        )));
    }
    let n = hw.len();
    let shift = hw.coords()[n - 1];
    let p: Vec<i64> = hw.shift_normalized().coords().to_vec();
    let degrees: Vec<u32> = p.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
    let mut ambient = Ambient::new(n, degrees);

    // highest weight vector: kernel of the raising operators on the
    // lambda-weight space of the ambient module
    let candidates = ambient.elems_of_weight(&p);
    if candidates.is_empty() {
        return Err(Error::Internal("empty highest-weight candidate set".into()));
    }
    let hwv: SVec = if candidates.len() == 1 {
        let mut v = SVec::new();
        v.insert(candidates[0], rat(1));
        v
    } else {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut row_index: HashMap<(usize, usize), usize> = HashMap::new();
        for (ci, &cand) in candidates.iter().enumerate() {
            let mut unit = SVec::new();
            unit.insert(cand, rat(1));
            for i in 0..n - 1 {
                let img = ambient.apply_eij(i, i + 1, &unit);
                for (t, c) in img {
                    let key = (i, t);
                    let next = row_index.len();
                    let r = *row_index.entry(key).or_insert(next);
                    if r == rows.len() {
                        rows.push(vec![Rat::zero(); candidates.len()]);
                    }
                    rows[r][ci] = c;
                }
            }
        }
        let kernel = nullspace(rows, candidates.len());
        if kernel.len() != 1 {
            return Err(Error::Internal(format!(
                "highest weight space has kernel dimension {} (expected 1)",
                kernel.len()
            )));
        }
        let mut v = SVec::new();
        for (ci, c) in kernel[0].iter().enumerate() {
            if !c.is_zero() {
                v.insert(candidates[ci], c.clone());
            }
        }
        v
    };

    // lowering closure with weight-graded row reduction
    let mut basis_vecs: Vec<SVec> = Vec::new();
    let mut basis_weights: Vec<Vec<i64>> = Vec::new();
    let mut spaces: HashMap<Vec<i64>, WeightSpace> = HashMap::new();

    let push = |v: SVec,
                w: Vec<i64>,
                basis_vecs: &mut Vec<SVec>,
                basis_weights: &mut Vec<Vec<i64>>,
                spaces: &mut HashMap<Vec<i64>, WeightSpace>|
     -> Option<usize> {
        let idx = basis_vecs.len();
        let space = spaces.entry(w.clone()).or_default();
        if space.insert_if_new(idx, &v) {
            basis_vecs.push(v);
            basis_weights.push(w);
            Some(idx)
        } else {
            None
        }
    };

    push(hwv, p.clone(), &mut basis_vecs, &mut basis_weights, &mut spaces);
    let mut queue = vec![0usize];
    while let Some(b) = queue.pop() {
        for i in 0..n.saturating_sub(1) {
            let img = ambient.apply_eij(i + 1, i, &basis_vecs[b]);
            if img.is_empty() {
                continue;
            }
            let mut w = basis_weights[b].clone();
            w[i] -= 1;
            w[i + 1] += 1;
            if let Some(idx) = push(img, w, &mut basis_vecs, &mut basis_weights, &mut spaces) {
                queue.push(idx);
            }
        }
    }

    if basis_vecs.len() as u64 != dim {
        return Err(Error::Internal(format!(
            "lowering closure produced {} vectors, weyl_dim is {dim}",
            basis_vecs.len()
        )));
    }
    let dim = basis_vecs.len();

    // express generator images in the closed basis
    let mut express_op = |i: usize, j: usize| -> Result<Mat> {
        let mut mat = Mat::zeros(dim, dim);
        for b in 0..dim {
            let img = ambient.apply_eij(i, j, &basis_vecs[b]);
            if img.is_empty() {
                continue;
            }
            let mut w = basis_weights[b].clone();
            w[i] += 1;
            w[j] -= 1;
            let Some(space) = spaces.get(&w) else {
                return Err(Error::Internal(
                    "generator image lands outside the module support".into(),
                ));
            };
            let Some(coords) = space.try_express(&img) else {
                return Err(Error::Internal(
                    "generator image not in the module span".into(),
                ));
            };
            for (slot, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    mat[(space.members[slot], b)] = c;
                }
            }
        }
        Ok(mat)
    };

    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 0..n.saturating_sub(1) {
        e.push(express_op(i, i + 1)?);
        f.push(express_op(i + 1, i)?);
    }
    let mut h = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut m = Mat::zeros(dim, dim);
        for (b, w) in basis_weights.iter().enumerate() {
            m[(b, b)] = rat(w[i] - w[i + 1]);
        }
        h.push(m);
    }

    let weights = basis_weights
        .into_iter()
        .map(|w| w.into_iter().map(|x| x + shift).collect())
        .collect();

    Ok(MatrixModule {
        n,
        dim,
        hw: hw.clone(),
        weights,
        e,
        f,
        h,
    })
}

/// Tallies the basis weights of a matrix module into a character table (in
/// the frame of the module's highest weight).
pub fn character_of(m: &MatrixModule) -> CharacterTable {
    let mut entries: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for w in &m.weights {
        *entries.entry(w.clone()).or_insert(0) += 1;
    }
    CharacterTable::from_entries(m.n, m.hw.clone(), entries)
}

/// Exact kernel of the stacked raising operators `e_i`, `i` ranging over
/// `sub` (1-based simple-root indices), organized by weight. An empty range
/// returns every basis vector.
pub fn highest_vectors_for_subrange(
    m: &MatrixModule,
    sub: &[usize],
) -> Result<Vec<(Vec<i64>, Vec<Rat>)>> {
    for &i in sub {
        if i == 0 || i >= m.n {
            return Err(Error::Domain(format!(
                "generator index {i} outside 1..{}",
                m.n - 1
            )));
        }
    }
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (b, w) in m.weights.iter().enumerate() {
        groups.entry(w.clone()).or_default().push(b);
    }
    let mut out = Vec::new();
    for (w, members) in groups {
        if sub.is_empty() {
            for &b in &members {
                let mut v = vec![Rat::zero(); m.dim];
                v[b] = rat(1);
                out.push((w.clone(), v));
            }
            continue;
        }
        // rows: stacked images of the unit vectors of this weight space
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for &i in sub {
            let mat = &m.e[i - 1];
            for r in 0..m.dim {
                let row: Vec<Rat> = members.iter().map(|&b| mat[(r, b)].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        for k in nullspace(rows, members.len()) {
            let mut v = vec![Rat::zero(); m.dim];
            for (slot, c) in k.into_iter().enumerate() {
                v[members[slot]] = c;
            }
            out.push((w.clone(), v));
        }
    }
    Ok(out)
}

fn cartan_gram_inverse(n: usize) -> Result<Mat> {
    let r = n - 1;
    let mut a = Mat::zeros(r, r);
    for i in 0..r {
        a[(i, i)] = rat(2);
        if i + 1 < r {
            a[(i, i + 1)] = rat(-1);
            a[(i + 1, i)] = rat(-1);
        }
    }
    a.inverse()
        .ok_or_else(|| Error::Internal("Cartan Gram matrix not invertible".into()))
}

/// The quadratic Casimir (dual bases for the trace form) as an explicit
/// matrix, together with its scalar. Errors if the matrix is not scalar or
/// the scalar disagrees with the combinatorial eigenvalue.
pub fn casimir_matrix(m: &MatrixModule) -> Result<(Mat, Rat)> {
    let n = m.n;
    let mut c = Mat::zeros(m.dim, m.dim);
    if n >= 2 {
        let coords = m.coordinate_matrices();
        for a in 1..=n {
            for b in 1..=n {
                if a == b {
                    continue;
                }
                let prod = coords[a][b]
                    .as_ref()
                    .unwrap()
                    .mul(coords[b][a].as_ref().unwrap());
                c = c.add(&prod);
            }
        }
        let g = cartan_gram_inverse(n)?;
        for k in 0..n - 1 {
            for l in 0..n - 1 {
                if g[(k, l)].is_zero() {
                    continue;
                }
                let prod = m.h[k].mul(&m.h[l]).scale(&g[(k, l)]);
                c = c.add(&prod);
            }
        }
    }
    let scalar = c
        .as_scalar()
        .ok_or_else(|| Error::Internal("Casimir matrix is not scalar".into()))?;
    let expected = finrep::casimir_eigenvalue(&m.hw)?;
    if scalar != expected {
        return Err(Error::Internal(format!(
            "Casimir scalar {scalar} disagrees with eigenvalue {expected}"
        )));
    }
    Ok((c, scalar))
}

/// A PBW monomial of degree <= 2 over the fixed generator ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbwMonomial {
    One,
    Gen(usize),
    Pair(usize, usize),
}

/// The ordered monomial list of degree <= `degree` for sl(n).
pub fn pbw_monomials(n: usize, degree: u8) -> Result<Vec<PbwMonomial>> {
    if degree > 2 {
        return Err(Error::Domain(format!(
            "PBW degree {degree} exceeds the supported bound 2"
        )));
    }
    let g = n * n - 1;
    let mut out = vec![PbwMonomial::One];
    if degree >= 1 {
        out.extend((0..g).map(PbwMonomial::Gen));
    }
    if degree >= 2 {
        for a in 0..g {
            for b in a..g {
                out.push(PbwMonomial::Pair(a, b));
            }
        }
    }
    Ok(out)
}

fn monomial_index(monomials: &[PbwMonomial], m: PbwMonomial) -> usize {
    monomials
        .iter()
        .position(|&x| x == m)
        .expect("monomial in list")
}

fn pair_index(i: usize, j: usize, n: usize) -> usize {
    // lex position of the pair (i, j), 1 <= i < j <= n
    let before: usize = (1..i).map(|a| n - a).sum();
    before + (j - i - 1)
}

/// Generator slot of the raising coordinate matrix E_{i,j}, i < j.
pub fn raising_slot(i: usize, j: usize, n: usize) -> usize {
    pair_index(i, j, n)
}

/// Generator slot of the Cartan element h_k, 1 <= k <= n-1.
pub fn cartan_slot(k: usize, n: usize) -> usize {
    n * (n - 1) / 2 + (k - 1)
}

/// Generator slot of the lowering coordinate matrix E_{j,i}, i < j.
pub fn lowering_slot(i: usize, j: usize, n: usize) -> usize {
    n * (n - 1) / 2 + (n - 1) + pair_index(i, j, n)
}

/// Coefficient vector of the quadratic Casimir in the degree-2 monomial
/// basis, using E_{ij}E_{ji} = E_{ji}E_{ij} + (E_{ii} - E_{jj}).
pub fn casimir_coefficients(n: usize) -> Result<Vec<Rat>> {
    let monomials = pbw_monomials(n, 2)?;
    let mut coeffs = vec![Rat::zero(); monomials.len()];
    for i in 1..=n {
        for j in i + 1..=n {
            let e = raising_slot(i, j, n);
            let f = lowering_slot(i, j, n);
            // E_ij E_ji + E_ji E_ij = 2 E_ij E_ji - (E_ii - E_jj)
            let idx = monomial_index(&monomials, PbwMonomial::Pair(e.min(f), e.max(f)));
            coeffs[idx] += rat(2);
            for k in i..j {
                let idx = monomial_index(&monomials, PbwMonomial::Gen(cartan_slot(k, n)));
                coeffs[idx] -= rat(1);
            }
        }
    }
    let g = cartan_gram_inverse(n)?;
    for k in 1..n {
        for l in k..n {
            let c = if k == l {
                g[(k - 1, l - 1)].clone()
            } else {
                &g[(k - 1, l - 1)] * &rat(2)
            };
            if c.is_zero() {
                continue;
            }
            let a = cartan_slot(k, n);
            let b = cartan_slot(l, n);
            let idx = monomial_index(&monomials, PbwMonomial::Pair(a.min(b), a.max(b)));
            coeffs[idx] += c;
        }
    }
    Ok(coeffs)
}

fn evaluate_monomial(gens: &[Mat], dim: usize, m: PbwMonomial) -> Mat {
    match m {
        PbwMonomial::One => Mat::identity(dim),
        PbwMonomial::Gen(a) => gens[a].clone(),
        PbwMonomial::Pair(a, b) => gens[a].mul(&gens[b]),
    }
}

/// Basis of the joint kernel of the degree <= `degree` PBW monomials acting
/// on every listed module (all over the same sl(n)), as coefficient vectors
/// over the monomial list.
pub struct PbwKernel {
    pub n: usize,
    pub degree: u8,
    pub monomial_count: usize,
    pub basis: Vec<Vec<Rat>>,
}

pub fn truncated_annihilator(modules: &[&MatrixModule], degree: u8) -> Result<PbwKernel> {
    let Some(first) = modules.first() else {
        return Err(Error::Domain("no modules given".into()));
    };
    let n = first.n;
    if modules.iter().any(|m| m.n != n) {
        return Err(Error::Domain("modules over different sl(n)".into()));
    }
    let monomials = pbw_monomials(n, degree)?;
    let total_cells: usize = modules.iter().map(|m| m.dim * m.dim).sum();
    if monomials.len().saturating_mul(total_cells) > PBW_SOLVER_CELL_CAP {
        return Err(Error::Resource(format!(
            "PBW solver size {} x {} exceeds the cap",
            monomials.len(),
            total_cells
        )));
    }
    // rows: one per (module, matrix entry); columns: monomials
    let mut rows = vec![vec![Rat::zero(); monomials.len()]; total_cells];
    let mut base = 0;
    for m in modules {
        let gens = m.generator_matrices();
        for (c, &mono) in monomials.iter().enumerate() {
            let eval = evaluate_monomial(&gens, m.dim, mono);
            for i in 0..m.dim {
                for j in 0..m.dim {
                    let v = &eval[(i, j)];
                    if !v.is_zero() {
                        rows[base + i * m.dim + j][c] = v.clone();
                    }
                }
            }
        }
        base += m.dim * m.dim;
    }
    let basis = nullspace(rows, monomials.len());
    Ok(PbwKernel {
        n,
        degree,
        monomial_count: monomials.len(),
        basis,
    })
}

/// Evaluates a coefficient vector over the monomial list as a matrix on the
/// module.
pub fn evaluate_element(m: &MatrixModule, coeffs: &[Rat], degree: u8) -> Result<Mat> {
    let monomials = pbw_monomials(m.n, degree)?;
    if coeffs.len() != monomials.len() {
        return Err(Error::Domain(format!(
            "coefficient vector length {} != monomial count {}",
            coeffs.len(),
            monomials.len()
        )));
    }
    let gens = m.generator_matrices();
    let mut out = Mat::zeros(m.dim, m.dim);
    for (c, &mono) in monomials.iter().enumerate() {
        if coeffs[c].is_zero() {
            continue;
        }
        out = out.add(&evaluate_monomial(&gens, m.dim, mono).scale(&coeffs[c]));
    }
    Ok(out)
}
