use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::parabolic::MAX_RANK;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// Split Cartan type of a simple group, e.g. `A2`, `F4`.
///
/// `C2` is accepted and normalized to `B2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            let reason = match family {
                Family::A => "A needs rank >= 1",
                Family::B => "B needs rank >= 2",
                Family::C => "C needs rank >= 2",
                Family::D => "D needs rank >= 4",
                Family::E => "E exists only in ranks 6, 7, 8",
                Family::F => "F exists only in rank 4",
                Family::G => "G exists only in rank 2",
            };
            return Err(Error::InvalidCartanType {
                input: format!("{}{rank}", family.letter()),
                reason: reason.into(),
            });
        }
        if rank > MAX_RANK {
            return Err(Error::InvalidCartanType {
                input: format!("{}{rank}", family.letter()),
                reason: format!("rank above {MAX_RANK} is not supported"),
            });
        }
        let family = if family == Family::C && rank == 2 {
            Family::B
        } else {
            family
        };
        Ok(Self { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Cartan matrix `a[i][j] = <α_j, α_i^∨>` in Bourbaki numbering, so the
    /// simple reflection is `s_i(β) = β − (Σ_j a[i][j] β_j) α_i`.
    ///
    /// Rows of short simple roots carry the `-2` / `-3` entries.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
        }
        match self.family {
            Family::B => a[n - 1][n - 2] = -2,
            Family::C => a[n - 2][n - 1] = -2,
            Family::F => a[2][1] = -2,
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// `|Φ⁺|` from the classification table.
    pub fn known_num_positive(self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::B | Family::C, _) => n * n,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Accepts `^[ABCDEFG][1-9][0-9]*$`.
impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = || Error::InvalidCartanType {
            input: s.to_string(),
            reason: "expected a family letter A-G followed by a rank, e.g. A2, B3, G2".into(),
        };
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(syntax()),
        };
        let digits = chars.as_str();
        if digits.is_empty()
            || digits.starts_with('0')
            || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(syntax());
        }
        let rank = digits.parse::<usize>().map_err(|_| syntax())?;
        Self::new(family, rank).map_err(|e| match e {
            Error::InvalidCartanType { reason, .. } => Error::InvalidCartanType {
                input: s.to_string(),
                reason,
            },
            other => other,
        })
    }
}

impl From<CartanType> for String {
    fn from(t: CartanType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for CartanType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Names a (possibly reducible, possibly empty) root system from its Cartan
/// matrix and positive-root count per connected component, e.g. `A1×A1`.
pub(crate) fn classify(cartan: &[Vec<i64>], positive_roots: &[Vec<i64>]) -> String {
    let n = cartan.len();
    if n == 0 {
        return "∅".into();
    }
    let mut seen = vec![false; n];
    let mut names = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let r = comp.len();
        let count = positive_roots
            .iter()
            .filter(|root| root.iter().enumerate().any(|(i, &c)| c != 0 && comp.contains(&i)))
            .count();
        let max_bond = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| -cartan[i][j])
            .max()
            .unwrap_or(0);
        // Symmetrize: d_i a_ij = d_j a_ji with d_i proportional to |α_i|².
        let mut d = vec![0i64; n];
        d[comp[0]] = 6;
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            for &j in &comp {
                if d[j] == 0 && cartan[i][j] != 0 {
                    d[j] = d[i] * cartan[i][j] / cartan[j][i];
                    stack.push(j);
                }
            }
        }
        let min_len = comp.iter().map(|&i| d[i]).min().unwrap_or(0);
        let short = comp.iter().filter(|&&i| d[i] == min_len).count();
        let name = match max_bond {
            0 | 1 if count == r * (r + 1) / 2 => format!("A{r}"),
            1 if r >= 4 && count == r * (r - 1) => format!("D{r}"),
            1 if (6..=8).contains(&r) => format!("E{r}"),
            3 => "G2".into(),
            2 if r == 4 && count == 24 => "F4".into(),
            2 if r == 2 || short == 1 => format!("B{r}"),
            2 => format!("C{r}"),
            _ => format!("?{r}"),
        };
        names.push(name);
    }
    names.join("×")
}
