use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ParabolicSubset, RootSystem};
use crate::{Error, Execution, LPolynomial, Result};

/// Square integer matrix acting on the root lattice; column `j` holds the
/// simple-root coordinates of `w(α_j)`.
type Action = Vec<i64>;

/// An element of a Weyl group.
///
/// `word` is the lexicographically smallest reduced word, with 0-based
/// simple-reflection indices (`Display` shows them 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    action: Action,
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Row-major action matrix; entry `(r, c)` is the `α_r` coordinate of `w(α_c)`.
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

/// Reading of the subset `I_u` attached to a Weyl group element `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    /// Right ascents `{α : l(u s_α) > l(u)}`.
    #[default]
    Ascent,
    /// Simple roots absent from a reduced word of `u`.
    Support,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::Ascent => "ascent",
            Interpretation::Support => "support",
        })
    }
}

impl FromStr for Interpretation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascent" => Ok(Interpretation::Ascent),
            "support" => Ok(Interpretation::Support),
            _ => Err(Error::Parse(format!(
                "unknown interpretation `{s}` (expected ascent or support)"
            ))),
        }
    }
}

/// A fully enumerated Weyl group, elements ordered by length then word.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    index: HashMap<Action, usize>,
}

impl WeylGroup {
    pub(super) fn enumerate(rs: &RootSystem, cap: usize, exec: Execution) -> Result<Self> {
        let n = rs.rank();
        if let Ok(order) = rs.weyl_order_from_exponents() {
            if order > cap as u128 {
                return Err(Error::CapExceeded {
                    what: "Weyl group",
                    size: order,
                    cap,
                });
            }
        }
        let identity = identity(n);
        // (word, action, inverse action)
        let mut level: Vec<(Vec<usize>, Action, Action)> =
            vec![(Vec::new(), identity.clone(), identity)];
        let mut elements = Vec::new();
        let mut index = HashMap::new();
        while !level.is_empty() {
            for (word, action, _) in &level {
                index.insert(action.clone(), elements.len());
                elements.push(WeylElement {
                    word: word.clone(),
                    action: action.clone(),
                });
            }
            if elements.len() > cap {
                return Err(Error::CapExceeded {
                    what: "Weyl group",
                    size: elements.len() as u128,
                    cap,
                });
            }
            let cartan = rs.cartan_matrix();
            // l(s_i u) = l(u) + 1 iff u⁻¹(α_i) > 0; the new word is i·word(u).
            let candidates = exec.flat_map(&level, |(word, action, inverse)| {
                (0..n)
                    .filter(|&i| column_is_positive(inverse, n, i))
                    .map(|i| {
                        let mut w = Vec::with_capacity(word.len() + 1);
                        w.push(i);
                        w.extend_from_slice(word);
                        (w, left_reflect(cartan, action, i), right_reflect(cartan, inverse, i))
                    })
                    .collect()
            });
            let mut best: HashMap<Action, (Vec<usize>, Action)> = HashMap::new();
            for (word, action, inverse) in candidates {
                match best.get_mut(&action) {
                    Some(slot) if slot.0 <= word => {}
                    Some(slot) => slot.0 = word,
                    None => {
                        best.insert(action, (word, inverse));
                    }
                }
            }
            let mut next: Vec<_> = best
                .into_iter()
                .map(|(action, (word, inverse))| (word, action, inverse))
                .collect();
            next.sort_by(|a, b| a.0.cmp(&b.0));
            level = next;
        }
        Ok(Self {
            rs: rs.clone(),
            elements,
            index,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// The unique element of maximal length `N`.
    pub fn longest_element(&self) -> &WeylElement {
        self.elements.last().expect("a Weyl group is never empty")
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.action).copied()
    }

    /// Looks up the element with the given action matrix.
    pub fn by_action(&self, action: &[i64]) -> Option<&WeylElement> {
        self.index.get(action).map(|&i| &self.elements[i])
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> &WeylElement {
        let n = self.rs.rank();
        let prod = mat_mul(&u.action, &v.action, n);
        self.by_action(&prod)
            .expect("Weyl group is closed under multiplication")
    }

    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        let n = self.rs.rank();
        let mut m = identity(n);
        for &i in w.word.iter().rev() {
            m = right_reflect(self.rs.cartan_matrix(), &m, i);
        }
        self.by_action(&m).expect("inverse lies in the group")
    }

    /// Image of a root (simple-root coordinates) under `w`.
    pub fn apply(&self, w: &WeylElement, root: &[i64]) -> Vec<i64> {
        let n = self.rs.rank();
        (0..n)
            .map(|r| (0..n).map(|c| w.action[r * n + c] * root[c]).sum())
            .collect()
    }

    /// Number of positive roots sent to negative roots; equals the length.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.rs
            .positive_roots()
            .iter()
            .filter(|beta| self.apply(w, beta).iter().any(|&c| c < 0))
            .count()
    }

    /// Right ascents `{α_i : l(w s_i) > l(w)}`, i.e. `w(α_i) > 0`.
    pub fn ascent_set(&self, w: &WeylElement) -> ParabolicSubset {
        let n = self.rs.rank();
        let mask = (0..n)
            .filter(|&i| column_is_positive(&w.action, n, i))
            .fold(0u64, |m, i| m | 1 << i);
        ParabolicSubset::from_mask(mask)
    }

    /// `Δ` minus the simple reflections occurring in the canonical word.
    pub fn support_complement(&self, w: &WeylElement) -> ParabolicSubset {
        w.word
            .iter()
            .fold(self.rs.full_subset(), |s, &i| s.without(i))
    }

    pub fn i_u(&self, w: &WeylElement, interpretation: Interpretation) -> ParabolicSubset {
        match interpretation {
            Interpretation::Ascent => self.ascent_set(w),
            Interpretation::Support => self.support_complement(w),
        }
    }

    /// Histogram of lengths: entry `k` counts elements of length `k`.
    pub fn length_histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.rs.num_positive() + 1];
        for w in &self.elements {
            h[w.length()] += 1;
        }
        h
    }

    /// `Σ_w t^{l(w)}`.
    pub fn poincare(&self) -> LPolynomial {
        LPolynomial::from_dense(
            &self
                .length_histogram()
                .iter()
                .map(|&c| c as i64)
                .collect::<Vec<_>>(),
        )
    }

    /// `W^I = {w : l(w s_α) > l(w) for all α ∈ I}`, in group order.
    pub fn minimal_coset_reps(&self, subset: ParabolicSubset) -> Result<Vec<&WeylElement>> {
        subset.check_rank(self.rs.rank())?;
        Ok(self
            .elements
            .iter()
            .filter(|w| subset.is_subset_of(self.ascent_set(w)))
            .collect())
    }

    /// `Σ_{w ∈ W^I} t^{l(w)}`.
    pub fn coset_length_gf(&self, subset: ParabolicSubset) -> Result<LPolynomial> {
        LPolynomial::from_pairs(
            self.minimal_coset_reps(subset)?
                .into_iter()
                .map(|w| (w.length() as u32, 1)),
        )
    }
}

fn identity(n: usize) -> Action {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn column_is_positive(m: &[i64], n: usize, col: usize) -> bool {
    (0..n).any(|r| m[r * n + col] > 0)
}

/// `s_i · M`: only row `i` changes, by `−Σ_r a[i][r] M[r][·]`.
fn left_reflect(cartan: &[Vec<i64>], m: &[i64], i: usize) -> Action {
    let n = cartan.len();
    let mut out = m.to_vec();
    for c in 0..n {
        let pairing: i64 = (0..n).map(|r| cartan[i][r] * m[r * n + c]).sum();
        out[i * n + c] -= pairing;
    }
    out
}

/// `M · s_i`: column `j` changes by `−a[i][j]·M[·][i]`.
fn right_reflect(cartan: &[Vec<i64>], m: &[i64], i: usize) -> Action {
    let n = cartan.len();
    let mut out = m.to_vec();
    for j in 0..n {
        let a = cartan[i][j];
        if a != 0 {
            for r in 0..n {
                out[r * n + j] -= a * m[r * n + i];
            }
        }
    }
    out
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Action {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x != 0 {
                for c in 0..n {
                    out[r * n + c] += x * b[k * n + c];
                }
            }
        }
    }
    out
}
