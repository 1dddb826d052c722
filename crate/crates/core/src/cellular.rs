//! Cell decompositions and the motives of (relatively) cellular schemes.
//!
//! A variety filtered by closed subschemes whose successive differences are
//! affine spaces has a pure Tate motive with one `Z(d)[2d]` per `d`-cell. The
//! relative version replaces each cell by a flat fibration of relative
//! dimension `dᵢ` over a base `Yᵢ`, contributing `M^c(Yᵢ)(dᵢ)[2dᵢ]`.
//!
//! Outputs are `M^c`-decompositions. For smooth proper inputs `M` and `M^c`
//! agree; cellular and "motivic cellular" (bijective-morphism) decompositions
//! give the same sum and are not distinguished here.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, TateSum};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub dim: u32,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CellsRepr", into = "CellsRepr")]
pub struct CellDecomposition {
    cells: Vec<Cell>,
    total_dim: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellsRepr {
    cells: Vec<Cell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    total_dim: Option<u32>,
}

impl TryFrom<CellsRepr> for CellDecomposition {
    type Error = Error;
    fn try_from(r: CellsRepr) -> Result<Self> {
        Self::new(r.cells, r.total_dim)
    }
}

impl From<CellDecomposition> for CellsRepr {
    fn from(c: CellDecomposition) -> Self {
        CellsRepr {
            cells: c.cells,
            total_dim: c.total_dim,
        }
    }
}

impl CellDecomposition {
    pub fn new(cells: Vec<Cell>, total_dim: Option<u32>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidCells("a cell decomposition needs at least one cell".into()));
        }
        if let Some(n) = total_dim {
            if let Some(c) = cells.iter().find(|c| c.dim > n) {
                return Err(Error::InvalidCells(format!(
                    "cell `{}` of dimension {} exceeds the declared dimension {n}",
                    c.label, c.dim
                )));
            }
        }
        Ok(Self { cells, total_dim })
    }

    /// Unlabelled cells of the given dimensions.
    pub fn from_dims<I: IntoIterator<Item = u32>>(dims: I) -> Result<Self> {
        Self::new(
            dims.into_iter()
                .map(|dim| Cell { dim, label: String::new() })
                .collect(),
            None,
        )
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn total_dim(&self) -> Option<u32> {
        self.total_dim
    }
}

/// `⊕_cells Z(d)[2d]`.
pub fn motive_of_cells(c: &CellDecomposition) -> Result<TateSum> {
    TateSum::pure_from_ranks(&chow_ranks(c))
}

/// Number of cells in each dimension; the rank of `CH_p`.
pub fn chow_ranks(c: &CellDecomposition) -> Vec<u64> {
    let top = c.cells.iter().map(|c| c.dim).max().unwrap_or(0) as usize;
    let mut ranks = vec![0u64; top + 1];
    for cell in &c.cells {
        ranks[cell.dim as usize] += 1;
    }
    ranks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub base: TateSum,
    pub twist: u32,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelativeCellFiltration {
    pub strata: Vec<Stratum>,
}

/// `⊕ᵢ M^c(Yᵢ)(dᵢ)[2dᵢ]`; every base must be pure Tate.
pub fn relative_cellular_motive(f: &RelativeCellFiltration) -> Result<TateSum> {
    let mut out = TateSum::zero();
    for s in &f.strata {
        if !s.base.is_pure_tate() {
            let (twist, shift, mult) = s
                .base
                .terms()
                .find(|&(p, q, m)| q != 2 * p || m <= 0)
                .expect("impure sum has an offending term");
            return Err(Error::NotPure { twist, shift, mult });
        }
        let d = i64::from(s.twist);
        out = out.direct_sum(&s.base.twist_shift(d, 2 * d)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pure(r: &[u64]) -> TateSum {
        TateSum::pure_from_ranks(r).unwrap()
    }

    #[test]
    fn motive_examples() {
        let single = CellDecomposition::from_dims([4]).unwrap();
        assert_eq!(motive_of_cells(&single).unwrap(), TateSum::tate(4, 8));
        let p2 = CellDecomposition::from_dims([0, 1, 2]).unwrap();
        assert_eq!(motive_of_cells(&p2).unwrap(), pure(&[1, 1, 1]));
        let p1xp1 = CellDecomposition::from_dims([0, 1, 1, 2]).unwrap();
        assert_eq!(motive_of_cells(&p1xp1).unwrap(), pure(&[1, 2, 1]));
    }

    #[test]
    fn chow_rank_examples() {
        assert_eq!(chow_ranks(&CellDecomposition::from_dims([0, 1, 2, 3]).unwrap()), vec![1, 1, 1, 1]);
        assert_eq!(chow_ranks(&CellDecomposition::from_dims([0, 0]).unwrap()), vec![2]);
        // A2 flag variety: cells indexed by Weyl lengths 0,1,1,2,2,3
        assert_eq!(
            chow_ranks(&CellDecomposition::from_dims([0, 1, 1, 2, 2, 3]).unwrap()),
            vec![1, 2, 2, 1]
        );
    }

    #[test]
    fn validation() {
        assert!(CellDecomposition::from_dims([]).is_err());
        let cells = vec![Cell { dim: 3, label: "big".into() }];
        assert!(matches!(CellDecomposition::new(cells.clone(), Some(2)), Err(Error::InvalidCells(_))));
        assert!(CellDecomposition::new(cells, Some(3)).is_ok());
    }

    #[test]
    fn relative_examples() {
        let point_strata = RelativeCellFiltration {
            strata: [0u32, 1, 1, 2]
                .iter()
                .map(|&d| Stratum { base: TateSum::unit(), twist: d, label: String::new() })
                .collect(),
        };
        assert_eq!(
            relative_cellular_motive(&point_strata).unwrap(),
            motive_of_cells(&CellDecomposition::from_dims([0, 1, 1, 2]).unwrap()).unwrap()
        );
        let bundle = RelativeCellFiltration {
            strata: vec![
                Stratum { base: pure(&[1, 1]), twist: 0, label: "zero section".into() },
                Stratum { base: pure(&[1, 1]), twist: 1, label: "complement".into() },
            ],
        };
        assert_eq!(relative_cellular_motive(&bundle).unwrap(), pure(&[1, 2, 1]));
        let y = pure(&[1, 0, 3]);
        let single = RelativeCellFiltration {
            strata: vec![Stratum { base: y.clone(), twist: 0, label: String::new() }],
        };
        assert_eq!(relative_cellular_motive(&single).unwrap(), y);
    }

    #[test]
    fn impure_base_rejected() {
        let f = RelativeCellFiltration {
            strata: vec![Stratum { base: TateSum::tate(1, 1), twist: 0, label: String::new() }],
        };
        assert!(matches!(relative_cellular_motive(&f), Err(Error::NotPure { .. })));
    }

    #[test]
    fn json_shape() {
        let c: CellDecomposition =
            serde_json::from_str(r#"{"cells":[{"dim":0,"label":"pt"},{"dim":1,"label":"line"}]}"#).unwrap();
        assert_eq!(chow_ranks(&c), vec![1, 1]);
        assert!(serde_json::from_str::<CellDecomposition>(r#"{"cells":[]}"#).is_err());
        let f: RelativeCellFiltration = serde_json::from_str(
            r#"{"strata":[{"base":{"terms":[{"twist":0,"shift":0,"mult":1}]},"twist":2}]}"#,
        )
        .unwrap();
        assert_eq!(relative_cellular_motive(&f).unwrap(), TateSum::tate(2, 4));
    }
}
