//! Class-level G-bundle machinery.
//!
//! - `[G] = L^N (L−1)^{rank+z} P_W(L)` for a split reductive group with
//!   central torus of rank `z` (from `G → G/B` with fiber `B = T ⋉ U`).
//! - Zariski-locally trivial bundles multiply classes: `[X] = [Y]·[F]`.
//!   Étale-only trivial bundles are outside this model.
//! - Torus bundles: graded pieces `λ_p = M(X)(p)[p] ⊗ Λ^p(Ξ)`, `0 ≤ p ≤ r`,
//!   of the slice filtration (the filtration objects themselves are not
//!   materialized).
//! - The nested face-lattice filtration of `M^c(G)`, reported as a tree of
//!   class-level triangles `[∪ ∂D_F] + [O_F] = [D_F]`, each checked for
//!   additivity when built.

use serde::{Deserialize, Serialize};

use crate::configurations::union_class;
use crate::rootsys::{ParabolicSubset, RootSystem};
use crate::wonderful::{Face, Wonderful};
use crate::{Error, LPolynomial, Result, TateSum};

/// `C(n, k)`, overflow-checked.
pub fn binomial(n: u32, k: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).try_fold(1u64, |acc, i| {
        // acc·(n−i) is divisible by (i+1) after the multiplication
        acc.checked_mul(n - i)
            .map(|x| x / (i + 1))
            .ok_or(Error::Overflow("binomial coefficient"))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusPiece {
    pub p: u32,
    /// `rank Λ^p(Ξ) = C(r, p)`.
    pub rank: u64,
    pub piece: TateSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFiltration {
    pub torus_rank: u32,
    pub pieces: Vec<TorusPiece>,
}

impl TorusFiltration {
    /// `Σ_p rank(λ_p)` with the base's total multiplicity folded in.
    pub fn total_slice_rank(&self) -> Result<i64> {
        self.pieces.iter().try_fold(0i64, |acc, p| {
            acc.checked_add(p.piece.total_multiplicity()?)
                .ok_or(Error::Overflow("slice rank"))
        })
    }
}

/// `λ_p = C(r,p) · base(p)[p]` for `p = 0..=r`.
pub fn torus_filtration_pieces(r: u32, base: &TateSum) -> Result<TorusFiltration> {
    let pieces = (0..=r)
        .map(|p| {
            let rank = binomial(r, p)?;
            let k = i64::try_from(rank).map_err(|_| Error::Overflow("exterior power rank"))?;
            let piece = base.twist_shift(p as i64, p as i64)?.scale(k)?;
            Ok(TorusPiece { p, rank, piece })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TorusFiltration {
        torus_rank: r,
        pieces,
    })
}

/// `L^N · (L−1)^{rank+z} · P_W(L)`. An empty root system with `z = r`
/// gives the split torus `(L−1)^r`.
pub fn reductive_group_class(rs: &RootSystem, central_rank: u32, cap: usize) -> Result<LPolynomial> {
    class_from_parts(rs, central_rank, &rs.weyl_group(cap)?.poincare())
}

fn class_from_parts(rs: &RootSystem, central_rank: u32, poincare: &LPolynomial) -> Result<LPolynomial> {
    let rank = u32::try_from(rs.rank()).map_err(|_| Error::Overflow("rank"))? + central_rank;
    let n = u32::try_from(rs.num_positive()).map_err(|_| Error::Overflow("root count"))?;
    let torus = (LPolynomial::lefschetz() - LPolynomial::one()).checked_pow(rank)?;
    LPolynomial::monomial(n, 1)
        .checked_mul(&torus)?
        .checked_mul(poincare)
}

/// `[X] = [Y]·[F]` for a Zariski-locally trivial bundle with fiber `F` over `Y`.
pub fn g_bundle_class(base_class: &LPolynomial, group_class: &LPolynomial) -> Result<LPolynomial> {
    base_class.checked_mul(group_class)
}

/// One distinguished triangle `M^c(∪ ∂D_F) → M^c(D_F) → M^c(O_F)` at the
/// class level, scaled by the base class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationNode {
    pub face: Face,
    pub left: LPolynomial,
    pub middle: LPolynomial,
    pub right: LPolynomial,
    pub verdict: String,
    pub children: Vec<FiltrationNode>,
}

impl FiltrationNode {
    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&FiltrationNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    pub fn is_additive(&self) -> bool {
        self.left.checked_add(&self.right).ok().as_ref() == Some(&self.middle)
    }
}

/// The nested filtration of `M^c(G)` over the face lattice, with `D_Δ = Ḡ`
/// at the root. The root's right vertex is the group class
/// [`reductive_group_class`]; below it each face `F` carries its orbit
/// class, and its children are the codimension-one subfaces.
pub fn nested_filtration_report(w: &Wonderful<'_>, base_class: &LPolynomial) -> Result<FiltrationNode> {
    let rs = w.group().root_system();
    let group_class = class_from_parts(rs, 0, &w.group().poincare())?;
    build_node(w, rs.full_subset(), base_class, Some(&group_class))
}

fn build_node(
    w: &Wonderful<'_>,
    subset: ParabolicSubset,
    base: &LPolynomial,
    right_override: Option<&LPolynomial>,
) -> Result<FiltrationNode> {
    let rs = w.group().root_system();
    let middle = w.closure_class(subset)?.checked_mul(base)?;
    let left = union_class(&w.face_boundary_configuration(subset)?)?.checked_mul(base)?;
    let right = match right_override {
        Some(c) => c.clone(),
        None => w.orbit_class(subset)?,
    }
    .checked_mul(base)?;
    if left.checked_add(&right)? != middle {
        return Err(Error::InternalConsistency(format!(
            "triangle at face {subset} of {} is not additive: ({left}) + ({right}) != {middle}",
            rs.name()
        )));
    }
    let children = subset
        .indices()
        .map(|i| build_node(w, subset.without(i), base, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiltrationNode {
        face: Face::new(rs, subset)?,
        left,
        middle,
        right,
        verdict: "ok".into(),
        children,
    })
}
