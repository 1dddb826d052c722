//! Orbit closures of the wonderful compactification of an adjoint group.
//!
//! `G×G`-orbits of `Ḡ` correspond to subsets `I ⊆ Δ` (faces `F_I` of the
//! Weyl-chamber polytope), with `F_J ≤ F_I` iff `J ⊆ I`; `I = Δ` is the open
//! orbit `G` (closure `Ḡ`) and `I = ∅` the closed orbit `G/B × G/B`. Each
//! closure `D_I` is paved by cells `C_{I,(u,v)}`, `(u, v) ∈ W × W`, of
//! dimension
//!
//! ```text
//! n = l(w₀) − l(u) + |I ∩ I_u| + l(v)
//! ```
//!
//! Orbit classes follow by Möbius inversion over the Boolean lattice of
//! faces, and are checked against the independent fibration formula
//! `[G/P_I]² · [L_I^ad]` ([`Wonderful::orbit_class_oracle`]).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::configurations::{Component, Configuration, Intersection, IntersectionEntry};
use crate::flags::flag_motive;
use crate::gbundle::reductive_group_class;
use crate::rootsys::{Interpretation, ParabolicSubset, RootSystem, WeylGroup};
use crate::{Error, Execution, LPolynomial, Result, TateSum, DEFAULT_CELL_CAP, DEFAULT_WEYL_CAP};

/// A face `F_I` of the polytope, standing for the orbit closure `D_I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub subset: ParabolicSubset,
    /// `2N + |I|`, the dimension of the orbit.
    pub dim: usize,
    /// `|Δ ∖ I|`.
    pub codim: usize,
}

impl Face {
    pub fn new(rs: &RootSystem, subset: ParabolicSubset) -> Result<Self> {
        subset.check_rank(rs.rank())?;
        Ok(Self {
            subset,
            dim: 2 * rs.num_positive() + subset.len(),
            codim: rs.rank() - subset.len(),
        })
    }

    /// Incidence: `F_J ≤ F_I` iff `J ⊆ I`.
    pub fn le(&self, other: &Face) -> bool {
        self.subset.is_subset_of(other.subset)
    }
}

/// All `2^rank` faces, ordered by subset mask.
pub fn face_lattice(rs: &RootSystem) -> Vec<Face> {
    rs.full_subset()
        .subsets()
        .map(|s| Face::new(rs, s).expect("subset of Δ"))
        .collect()
}

/// Cell dimensions of one orbit closure, indexed by `(u, v)` positions in
/// the group's element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellTable {
    subset: ParabolicSubset,
    interpretation: Interpretation,
    order: usize,
    dims: Vec<u32>,
}

impl CellTable {
    pub fn subset(&self) -> ParabolicSubset {
        self.subset
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interpretation
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, u: usize, v: usize) -> u32 {
        self.dims[u * self.order + v]
    }

    /// `(u, v, n)` triples in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &n)| (k / self.order, k % self.order, n))
    }

    pub fn max_dim(&self) -> u32 {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.max_dim() as usize + 1];
        for &n in &self.dims {
            h[n as usize] += 1;
        }
        h
    }
}

/// Wonderful-compactification computations for one Weyl group.
///
/// Closure motives are memoized per face.
pub struct Wonderful<'g> {
    group: &'g WeylGroup,
    interpretation: Interpretation,
    cell_cap: usize,
    exec: Execution,
    closures: Vec<OnceLock<TateSum>>,
}

impl<'g> Wonderful<'g> {
    pub fn new(group: &'g WeylGroup) -> Self {
        let faces = 1usize << group.root_system().rank();
        Self {
            group,
            interpretation: Interpretation::default(),
            cell_cap: DEFAULT_CELL_CAP,
            exec: Execution::default(),
            closures: (0..faces).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn with_interpretation(mut self, interpretation: Interpretation) -> Self {
        self.interpretation = interpretation;
        self.closures.iter_mut().for_each(|c| *c = OnceLock::new());
        self
    }

    pub fn with_cell_cap(mut self, cap: usize) -> Self {
        self.cell_cap = cap;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn group(&self) -> &WeylGroup {
        self.group
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interpretation
    }

    fn rs(&self) -> &RootSystem {
        self.group.root_system()
    }

    fn check_cap(&self) -> Result<()> {
        let w = self.group.order() as u128;
        if w * w > self.cell_cap as u128 {
            return Err(Error::CapExceeded {
                what: "cell table",
                size: w * w,
                cap: self.cell_cap,
            });
        }
        Ok(())
    }

    /// Per-`u` part of the cell dimension, `N − l(u) + |I ∩ I_u|`.
    fn row_offsets(&self, subset: ParabolicSubset) -> Vec<u32> {
        let n = self.rs().num_positive();
        self.group
            .elements()
            .iter()
            .map(|u| {
                let iu = self.group.i_u(u, self.interpretation);
                (n - u.length() + subset.intersection(iu).len()) as u32
            })
            .collect()
    }

    /// The full cell table of `D_I`.
    pub fn cells(&self, subset: ParabolicSubset) -> Result<CellTable> {
        subset.check_rank(self.rs().rank())?;
        self.check_cap()?;
        let order = self.group.order();
        let rows = self.row_offsets(subset);
        let lengths: Vec<u32> = self.group.elements().iter().map(|v| v.length() as u32).collect();
        let mut dims = vec![0u32; order * order];
        self.exec.fill_chunks(&mut dims, order, |u, row| {
            for (slot, &lv) in row.iter_mut().zip(&lengths) {
                *slot = rows[u] + lv;
            }
        });
        Ok(CellTable {
            subset,
            interpretation: self.interpretation,
            order,
            dims,
        })
    }

    /// Histogram of cell dimensions of `D_I` without materializing the table.
    pub fn cell_histogram(&self, subset: ParabolicSubset) -> Result<Vec<u64>> {
        subset.check_rank(self.rs().rank())?;
        self.check_cap()?;
        let order = self.group.order();
        let rows = self.row_offsets(subset);
        let lengths: Vec<usize> = self.group.elements().iter().map(|v| v.length()).collect();
        let width = 2 * self.rs().num_positive() + subset.len() + 1;
        let mut h = self
            .exec
            .histogram(order * order, width, |k| rows[k / order] as usize + lengths[k % order]);
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        Ok(h)
    }

    /// `M(D_I) = ⊕_cells Z(n)[2n]`.
    pub fn closure_motive(&self, subset: ParabolicSubset) -> Result<TateSum> {
        subset.check_rank(self.rs().rank())?;
        let slot = &self.closures[subset.mask() as usize];
        if let Some(m) = slot.get() {
            return Ok(m.clone());
        }
        let m = TateSum::pure_from_ranks(&self.cell_histogram(subset)?)?;
        Ok(slot.get_or_init(|| m).clone())
    }

    pub fn closure_class(&self, subset: ParabolicSubset) -> Result<LPolynomial> {
        self.closure_motive(subset)?.euler_class()
    }

    /// `[O_I] = Σ_{J ⊆ I} (−1)^{|I∖J|} [D_J]`.
    pub fn orbit_class(&self, subset: ParabolicSubset) -> Result<LPolynomial> {
        subset.check_rank(self.rs().rank())?;
        let mut out = LPolynomial::zero();
        for j in subset.subsets() {
            let c = self.closure_class(j)?;
            out = if subset.difference(j).len().is_multiple_of(2) {
                out.checked_add(&c)?
            } else {
                out.checked_sub(&c)?
            };
        }
        Ok(out)
    }

    /// `[G/P_I]² · L^{N_I} (L−1)^{|I|} P_{W_I}(L)`, the orbit class computed
    /// from the fibration of `O_I` over `G/P_I × G/P_I` with fiber the
    /// adjoint Levi group.
    pub fn orbit_class_oracle(&self, subset: ParabolicSubset) -> Result<LPolynomial> {
        let flag = flag_motive(self.group, subset)?.euler_class()?;
        let levi = self.rs().levi_subsystem(subset)?;
        let levi_class = reductive_group_class(&levi, 0, DEFAULT_WEYL_CAP)?;
        flag.checked_mul(&flag)?.checked_mul(&levi_class)
    }

    /// The divisors `D_{I∖{i}}`, `i ∈ I`, bounding `D_I`, with all their
    /// intersections `D_{I∖S}`. For `I = Δ` this is the boundary `Ḡ ∖ G`.
    pub fn face_boundary_configuration(&self, subset: ParabolicSubset) -> Result<Configuration> {
        subset.check_rank(self.rs().rank())?;
        let members: Vec<usize> = subset.indices().collect();
        let components = members
            .iter()
            .map(|&i| {
                let face = subset.without(i);
                Ok(Component {
                    name: format!("D{face}"),
                    class: self.closure_class(face)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = members.len();
        let mut intersections = Vec::new();
        for positions in 1u32..(1 << m) {
            if positions.count_ones() < 2 {
                continue;
            }
            let chosen: Vec<usize> = (0..m).filter(|k| positions & (1 << k) != 0).collect();
            let face = chosen
                .iter()
                .fold(subset, |acc, &k| acc.without(members[k]));
            intersections.push(IntersectionEntry {
                subset: chosen,
                class: Intersection::Class(self.closure_class(face)?),
            });
        }
        Ok(Configuration {
            components,
            intersections,
        })
    }

    /// Irreducible components of `Ḡ ∖ G`, one per simple root.
    pub fn boundary_configuration(&self) -> Result<Configuration> {
        self.face_boundary_configuration(self.rs().full_subset())
    }
}
