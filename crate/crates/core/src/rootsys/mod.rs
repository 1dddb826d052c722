//! Crystallographic root systems and their Weyl groups.
//!
//! Roots are exact integer vectors in simple-root coordinates. Positive
//! roots are generated by closing the simple roots under simple reflections;
//! exponents come from the height distribution of the positive roots, so
//! `∏(eᵢ+1) = |W|` is a genuine cross-check against the enumerated group.

mod cartan;
mod parabolic;
mod weyl;

use std::collections::HashSet;

use serde::Serialize;

pub use cartan::{CartanType, Family};
pub use parabolic::{ParabolicSubset, MAX_RANK};
pub use weyl::{Interpretation, WeylElement, WeylGroup};

use crate::{Error, Execution, LPolynomial, Result};

/// Upper bound on `|Φ⁺|` while closing a Cartan matrix; trips on
/// non-finite-type input instead of looping forever.
const ROOT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    name: String,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    exponents: Vec<u32>,
    /// 0-based index of each simple root in the ambient system this one was
    /// cut out of (identity for a root system built from a Cartan type).
    simple_labels: Vec<usize>,
}

impl RootSystem {
    pub fn build(ty: CartanType) -> Result<Self> {
        let mut rs = Self::from_cartan_matrix(ty.cartan_matrix())?;
        rs.name = ty.to_string();
        Ok(rs)
    }

    /// The rank-0 root system (a torus has no roots).
    pub fn empty() -> Self {
        Self {
            name: "∅".into(),
            cartan: Vec::new(),
            positive_roots: Vec::new(),
            exponents: Vec::new(),
            simple_labels: Vec::new(),
        }
    }

    /// Builds from any finite-type Cartan matrix (possibly reducible).
    pub fn from_cartan_matrix(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        let bad = |why: String| Error::InvalidCartanType {
            input: format!("{cartan:?}"),
            reason: why,
        };
        if n > MAX_RANK {
            return Err(bad(format!("rank above {MAX_RANK}")));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(bad("matrix is not square".into()));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(bad(format!("diagonal entry ({i},{j}) is {a}, not 2")));
                }
                if i != j && (a > 0 || (a == 0) != (cartan[j][i] == 0)) {
                    return Err(bad(format!("off-diagonal entry ({i},{j}) is invalid")));
                }
            }
        }
        let positive_roots = close_positive_roots(&cartan)?;
        let exponents = exponents_from_heights(&positive_roots);
        let name = cartan::classify(&cartan, &positive_roots);
        Ok(Self {
            name,
            simple_labels: (0..n).collect(),
            cartan,
            positive_roots,
            exponents,
        })
    }

    /// Type label, e.g. `A2`, `A1×A1`, or `∅` for rank 0.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn simple_labels(&self) -> &[usize] {
        &self.simple_labels
    }

    pub fn full_subset(&self) -> ParabolicSubset {
        ParabolicSubset::full(self.rank())
    }

    /// `s_i(β) = β − <β, α_i^∨> α_i`.
    pub fn reflect(&self, i: usize, root: &[i64]) -> Result<Vec<i64>> {
        reflect(&self.cartan, i, root)
    }

    /// `∏(eᵢ+1)`, the Weyl group order predicted by the exponents.
    pub fn weyl_order_from_exponents(&self) -> Result<u128> {
        self.exponents.iter().try_fold(1u128, |acc, &e| {
            acc.checked_mul(e as u128 + 1)
                .ok_or(Error::Overflow("Weyl order from exponents"))
        })
    }

    /// `∏ᵢ (1 + t + … + t^{eᵢ})`.
    pub fn poincare_from_exponents(&self) -> Result<LPolynomial> {
        self.exponents.iter().try_fold(LPolynomial::one(), |acc, &e| {
            acc.checked_mul(&LPolynomial::geometric(e))
        })
    }

    /// The Levi subsystem `Φ_I`: simple roots indexed by `I` with the induced
    /// sub-Cartan matrix.
    pub fn levi_subsystem(&self, subset: ParabolicSubset) -> Result<Self> {
        subset.check_rank(self.rank())?;
        let idx: Vec<usize> = subset.indices().collect();
        let sub: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let mut rs = Self::from_cartan_matrix(sub)?;
        rs.simple_labels = idx.iter().map(|&i| self.simple_labels[i]).collect();
        Ok(rs)
    }

    /// Enumerates the Weyl group, refusing if it would exceed `cap` elements.
    pub fn weyl_group(&self, cap: usize) -> Result<WeylGroup> {
        WeylGroup::enumerate(self, cap, Execution::default())
    }

    pub fn weyl_group_with(&self, cap: usize, exec: Execution) -> Result<WeylGroup> {
        WeylGroup::enumerate(self, cap, exec)
    }
}

pub(crate) fn reflect(cartan: &[Vec<i64>], i: usize, root: &[i64]) -> Result<Vec<i64>> {
    let pairing = cartan[i]
        .iter()
        .zip(root)
        .try_fold(0i64, |acc, (&a, &b)| {
            a.checked_mul(b).and_then(|x| acc.checked_add(x))
        })
        .ok_or(Error::Overflow("root pairing"))?;
    let mut out = root.to_vec();
    out[i] = out[i]
        .checked_sub(pairing)
        .ok_or(Error::Overflow("reflection"))?;
    Ok(out)
}

fn close_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let image = reflect(cartan, i, &beta)?;
            if image.iter().all(|&c| c >= 0) && seen.insert(image.clone()) {
                roots.push(image);
                if roots.len() > ROOT_CAP {
                    return Err(Error::InvalidCartanType {
                        input: format!("{cartan:?}"),
                        reason: "root closure does not terminate; not of finite type".into(),
                    });
                }
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    Ok(roots)
}

/// The height partition is dual to the exponent partition: there are
/// `#(height k) − #(height k+1)` exponents equal to `k`.
fn exponents_from_heights(roots: &[Vec<i64>]) -> Vec<u32> {
    let max_h = roots.iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(0) as usize;
    let mut by_height = vec![0usize; max_h + 2];
    for r in roots {
        by_height[r.iter().sum::<i64>() as usize] += 1;
    }
    let mut out = Vec::new();
    for k in 1..=max_h {
        for _ in 0..by_height[k].saturating_sub(by_height[k + 1]) {
            out.push(k as u32);
        }
    }
    out
}
