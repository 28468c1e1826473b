//! Finite-rank sl(n) engine.
//!
//! Weights are handled in ε-coordinates modulo a global shift; the
//! canonical representative subtracts the last coordinate, turning a
//! dominant weight into a partition padded with zeros. The Weyl group acts
//! by permuting coordinates, so orbit questions reduce to multiset
//! equality. Multiplicities come from the Freudenthal recursion evaluated
//! on the dominant chamber and extended by symmetry; the Weyl dimension
//! formula serves as an independent total.

use num::BigInt;
use num::BigRational;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::weights::FiniteWeight;

/// Default guard on `weyl_dim` for multiplicity computations.
pub const DEFAULT_DIM_CAP: u64 = 10_000;

/// Full weight-multiplicity table of a finite-dimensional simple module.
/// Entries are stored in the coordinate frame of the highest weight that
/// produced them (constant coordinate sum).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    n: usize,
    highest: FiniteWeight,
    entries: BTreeMap<Vec<i64>, u64>,
}

impl CharacterTable {
    /// Assembles a table from an explicit multiplicity map.
    pub fn from_entries(n: usize, highest: FiniteWeight, entries: BTreeMap<Vec<i64>, u64>) -> Self {
        CharacterTable {
            n,
            highest,
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn highest(&self) -> &FiniteWeight {
        &self.highest
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &[i64]) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.entries.keys()
    }

    /// Re-expresses the table after adding `c` to every coordinate.
    pub fn shifted(&self, c: i64) -> CharacterTable {
        CharacterTable {
            n: self.n,
            highest: self.highest.shifted(c),
            entries: self
                .entries
                .iter()
                .map(|(w, m)| (w.iter().map(|x| x + c).collect(), *m))
                .collect(),
        }
    }
}

/// Weyl-group orbit equivalence: the symmetric group permutes
/// ε-coordinates, so two weights are in the same orbit exactly when their
/// coordinate multisets agree.
pub fn orbit_equivalent(a: &FiniteWeight, b: &FiniteWeight) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "orbit comparison of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let mut x = a.coords().to_vec();
    let mut y = b.coords().to_vec();
    x.sort_unstable();
    y.sort_unstable();
    Ok(x == y)
}

pub fn dominant_representative(w: &FiniteWeight) -> FiniteWeight {
    let mut c = w.coords().to_vec();
    c.sort_unstable_by(|a, b| b.cmp(a));
    FiniteWeight::new(c).expect("nonempty")
}

fn require_dominant(w: &FiniteWeight) -> Result<()> {
    if w.is_dominant() {
        Ok(())
    } else {
        Err(Error::Domain(format!("weight {w} is not dominant")))
    }
}

/// Dimension of the simple sl(n)-module with highest weight `w`
/// (n = number of coordinates), by the Weyl dimension formula.
pub fn weyl_dim(w: &FiniteWeight) -> Result<u64> {
    require_dominant(w)?;
    let c = w.coords();
    let n = c.len();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(c[i] - c[j] + (j as i64 - i as i64));
            den *= BigInt::from(j as i64 - i as i64);
        }
    }
    let d = num / den;
    u64::try_from(&d).map_err(|_| Error::Resource(format!("dimension {d} exceeds u64")))
}

fn rho(n: usize) -> Vec<i64> {
    (0..n).map(|i| (n - 1 - i) as i64).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scalar by which the quadratic Casimir (dual bases for the trace form)
/// acts on the simple module with highest weight `w`. The weight is
/// shift-normalized and projected to the traceless Cartan before the
/// pairing, so the value matches the explicit Casimir matrix of the oracle.
pub fn casimir_eigenvalue(w: &FiniteWeight) -> Result<BigRational> {
    require_dominant(w)?;
    let p = w.shift_normalized();
    let c = p.coords();
    let n = c.len() as i64;
    let total: i64 = c.iter().sum();
    let r = rho(c.len());
    // <p', p' + 2 rho'> with p' = p - (|p|/n) * 1
    let pp = BigRational::new(BigInt::from(dot(c, c)), 1.into())
        - BigRational::new(BigInt::from(total * total), BigInt::from(n));
    let prho = BigRational::new(BigInt::from(dot(c, &r)), 1.into())
        - BigRational::new(BigInt::from(total * (n - 1)), 2.into());
    Ok(pp + BigRational::from(BigInt::from(2)) * prho)
}

/// Enumerates the dominant weights of the module: partitions of |p| into at
/// most n parts dominated by p.
fn dominant_support(p: &[i64]) -> Vec<Vec<i64>> {
    let n = p.len();
    let total: i64 = p.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        p: &[i64],
        n: usize,
        remaining: i64,
        max_part: i64,
        prefix_bound: &[i64],
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = cur.len();
        if k == n {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // partial sums must stay below those of p
        let hi = max_part.min(remaining);
        for v in (0..=hi).rev() {
            let used: i64 = cur.iter().sum::<i64>() + v;
            if used > prefix_bound[k] {
                continue;
            }
            // remaining entries are each <= v, so feasibility: remaining - v <= v*(n-k-1)
            if remaining - v > v * (n as i64 - k as i64 - 1) {
                break;
            }
            cur.push(v);
            rec(p, n, remaining - v, v, prefix_bound, cur, out);
            cur.pop();
        }
    }
    let prefix_bound: Vec<i64> = (0..n)
        .map(|k| p[..=k].iter().sum::<i64>())
        .collect();
    rec(p, n, total, p[0], &prefix_bound, &mut cur, &mut out);
    out
}

/// Distance of `mu` below `lam` measured in simple-root height; negative
/// when `mu` is not below `lam`.
fn height_below(lam: &[i64], mu: &[i64]) -> i64 {
    let mut h = 0;
    let mut acc = 0;
    for k in 0..lam.len() {
        acc += lam[k] - mu[k];
        h += acc;
    }
    h
}

type CacheKey = (usize, Vec<i64>);
static CHARACTER_CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<CharacterTable>>>> = OnceLock::new();

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<CharacterTable>>> {
    CHARACTER_CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Full multiplicity table of the simple module with highest weight `w`,
/// via the Freudenthal recursion on the dominant chamber extended by
/// permutation symmetry. Guarded by `dim_cap`.
pub fn freudenthal_character(w: &FiniteWeight, dim_cap: u64) -> Result<CharacterTable> {
    require_dominant(w)?;
    let dim = weyl_dim(w)?;
    if dim > dim_cap {
        return Err(Error::Resource(format!(
            "weyl_dim {dim} exceeds the configured cap {dim_cap}"
        )));
    }
    let p = w.shift_normalized();
    let key = (p.len(), p.coords().to_vec());
    if let Some(t) = cache().lock().unwrap().get(&key) {
        let shift = w.coords()[w.len() - 1];
        return Ok(t.shifted(shift).clone());
    }
    let table = Arc::new(freudenthal_on_partition(&p)?);
    debug_assert_eq!(table.dimension(), dim);
    cache().lock().unwrap().insert(key, table.clone());
    let shift = w.coords()[w.len() - 1];
    Ok(table.shifted(shift))
}

fn freudenthal_on_partition(p: &FiniteWeight) -> Result<CharacterTable> {
    let n = p.len();
    let lam = p.coords();
    let r = rho(n);
    let lam_rho: Vec<i64> = lam.iter().zip(&r).map(|(a, b)| a + b).collect();
    let norm_lam = dot(&lam_rho, &lam_rho);

    let mut dominant = dominant_support(lam);
    dominant.sort_by_key(|mu| height_below(lam, mu));

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let lookup = |mult: &HashMap<Vec<i64>, u64>, nu: &[i64]| -> u64 {
        let mut s = nu.to_vec();
        s.sort_unstable_by(|a, b| b.cmp(a));
        mult.get(&s).copied().unwrap_or(0)
    };

    let max_coord = lam[0];
    for mu in &dominant {
        if height_below(lam, mu) == 0 {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mu_rho: Vec<i64> = mu.iter().zip(&r).map(|(a, b)| a + b).collect();
        let denom = norm_lam - dot(&mu_rho, &mu_rho);
        if denom <= 0 {
            // only the highest weight has denominator zero
            return Err(Error::Internal(format!(
                "nonpositive Freudenthal denominator at {mu:?}"
            )));
        }
        let mut rhs: i64 = 0;
        for i in 0..n {
            for j in i + 1..n {
                // alpha = e_i - e_j
                for k in 1..=(max_coord + 1) {
                    let mut nu = mu.clone();
                    nu[i] += k;
                    nu[j] -= k;
                    if nu[i] > max_coord {
                        break;
                    }
                    let m = lookup(&mult, &nu);
                    if m == 0 {
                        continue;
                    }
                    // <nu, alpha>
                    rhs += m as i64 * (nu[i] - nu[j]);
                }
            }
        }
        let rhs = 2 * rhs;
        if rhs % denom != 0 {
            return Err(Error::Internal(format!(
                "Freudenthal division failure at {mu:?}: {rhs}/{denom}"
            )));
        }
        let m = rhs / denom;
        if m > 0 {
            mult.insert(mu.clone(), m as u64);
        }
    }

    // extend over orbits
    let mut entries: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (mu, m) in &mult {
        for perm in permutations_of(mu) {
            entries.insert(perm, *m);
        }
    }
    Ok(CharacterTable {
        n,
        highest: p.clone(),
        entries,
    })
}

/// All distinct permutations of a multiset of coordinates.
fn permutations_of(v: &[i64]) -> Vec<Vec<i64>> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(sorted.clone());
        // next_permutation
        let n = sorted.len();
        let mut i = n.wrapping_sub(1);
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
    }
    out
}

/// Whether the highest weight matches one of the shapes with all weight
/// multiplicities equal to one: anything over sl(2), multiples of the first
/// or last fundamental weight, or a single fundamental weight. Expects a
/// dominant weight with last coordinate zero.
pub fn multiplicity_free_shape(p: &[i64]) -> bool {
    let n = p.len();
    if n <= 2 {
        return true;
    }
    let nonzero: Vec<i64> = p.iter().copied().filter(|&x| x != 0).collect();
    if nonzero.is_empty() {
        return true; // trivial module
    }
    // a * omega_1
    if nonzero.len() == 1 {
        return true;
    }
    // a * omega_{n-1} = (a, ..., a, 0) and omega_i = (1, ..., 1, 0, ..., 0)
    let a = nonzero[0];
    if nonzero.iter().all(|&x| x == a) && (nonzero.len() == n - 1 || a == 1) {
        return true;
    }
    false
}

/// True when every weight space of the simple module is one-dimensional.
/// The shape fast path is exact; when it rejects, the Freudenthal table
/// confirms (and the two must agree; see the acceptance suite).
pub fn is_multiplicity_free(w: &FiniteWeight, dim_cap: u64) -> Result<bool> {
    require_dominant(w)?;
    let p = w.shift_normalized();
    if multiplicity_free_shape(p.coords()) {
        return Ok(true);
    }
    let table = freudenthal_character(w, dim_cap)?;
    Ok(table.entries().values().all(|&m| m == 1))
}
