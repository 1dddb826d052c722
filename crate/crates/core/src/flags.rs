//! Flag varieties `G/P_I`, Leray–Hirsch products and tower motives.
//!
//! The Bruhat decomposition gives `G/P_I` one cell of dimension `l(w)` per
//! minimal coset representative `w ∈ W^I`. For a cellular fibration with
//! fiber `F` satisfying Poincaré duality the motive of the total space is
//! `⊕_p CH_p(F) ⊗ M(X)(p)[2p]`.

use serde::{Deserialize, Serialize};

use crate::rootsys::{ParabolicSubset, WeylGroup};
use crate::{Error, Result, TateSum};

/// Chow ranks of a fiber, `chow_ranks[p] = rank CH_p(F)`.
///
/// Invariants: `chow_ranks[0] = 1` and the vector is palindromic of length
/// `fiber_dim + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FiberRepr", into = "FiberRepr")]
pub struct FiberData {
    chow_ranks: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberRepr {
    chow_ranks: Vec<u64>,
    fiber_dim: usize,
}

impl TryFrom<FiberRepr> for FiberData {
    type Error = Error;
    fn try_from(r: FiberRepr) -> Result<Self> {
        let f = FiberData::new(r.chow_ranks)?;
        if f.fiber_dim() != r.fiber_dim {
            return Err(Error::InvalidFiber(format!(
                "declared dimension {} but ranks describe dimension {}",
                r.fiber_dim,
                f.fiber_dim()
            )));
        }
        Ok(f)
    }
}

impl From<FiberData> for FiberRepr {
    fn from(f: FiberData) -> Self {
        FiberRepr {
            fiber_dim: f.fiber_dim(),
            chow_ranks: f.chow_ranks,
        }
    }
}

impl FiberData {
    pub fn new(chow_ranks: Vec<u64>) -> Result<Self> {
        match chow_ranks.first() {
            None => return Err(Error::InvalidFiber("no Chow ranks given".into())),
            Some(&c0) if c0 != 1 => {
                return Err(Error::InvalidFiber(format!(
                    "rank of CH_0 is {c0}, expected 1"
                )))
            }
            _ => {}
        }
        let n = chow_ranks.len() - 1;
        for p in 0..=n / 2 {
            if chow_ranks[p] != chow_ranks[n - p] {
                return Err(Error::InvalidFiber(format!(
                    "Poincaré duality fails: rank CH_{p} = {} but rank CH_{} = {}",
                    chow_ranks[p],
                    n - p,
                    chow_ranks[n - p]
                )));
            }
        }
        Ok(Self { chow_ranks })
    }

    /// The fiber `G/P_I`.
    pub fn from_flag(group: &WeylGroup, subset: ParabolicSubset) -> Result<Self> {
        Self::new(flag_motive(group, subset)?.pure_coefficients()?)
    }

    pub fn chow_ranks(&self) -> &[u64] {
        &self.chow_ranks
    }

    pub fn fiber_dim(&self) -> usize {
        self.chow_ranks.len() - 1
    }

    /// `⊕_p CH_p(F) ⊗ Z(p)[2p]`.
    pub fn pure_sum(&self) -> Result<TateSum> {
        TateSum::pure_from_ranks(&self.chow_ranks)
    }
}

/// `M(G/P_I) = ⊕_{w ∈ W^I} Z(l(w))[2l(w)]`.
pub fn flag_motive(group: &WeylGroup, subset: ParabolicSubset) -> Result<TateSum> {
    let reps = group.minimal_coset_reps(subset)?;
    TateSum::from_terms(reps.into_iter().map(|w| {
        let l = w.length() as i64;
        (l, 2 * l, 1)
    }))
}

/// `⊕_p chow_ranks[p] · base(p)[2p]`.
pub fn leray_hirsch(fiber: &FiberData, base: &TateSum) -> Result<TateSum> {
    let mut out = TateSum::zero();
    for (p, &c) in fiber.chow_ranks.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let p = p as i64;
        let c = i64::try_from(c).map_err(|_| Error::Overflow("Chow rank"))?;
        out = out.direct_sum(&base.twist_shift(p, 2 * p)?.scale(c)?)?;
    }
    Ok(out)
}

/// Iterated Leray–Hirsch over a tower `X_n → … → X_1 → X_0`, applying the
/// rightmost fiber first.
///
/// This is the ambient object of the tower; the motive of a variety resolved
/// by the tower is a direct summand of it, not the object itself.
pub fn tower_motive(fibers: &[FiberData], base: &TateSum) -> Result<TateSum> {
    fibers
        .iter()
        .rev()
        .try_fold(base.clone(), |acc, f| leray_hirsch(f, &acc))
}
