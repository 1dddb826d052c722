//! Configurations of mixed Tate varieties and the classes of their unions.
//!
//! A configuration is a finite family of components `X_1, …, X_m` together
//! with the classes of all iterated intersections `X_S = ∩_{i∈S} X_i`. In
//! `K₀(Var)` the class of the union is given by inclusion–exclusion,
//! `[∪ X_i] = Σ_{S≠∅} (−1)^{|S|+1} [X_S]`.
//!
//! Intersections are supplied by the caller; nothing here infers geometry.
//! Subsets are written 1-based in JSON and in diagnostics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, LPolynomial, Result};

/// Most components a configuration may have (subset walks are `2^m`).
pub const MAX_COMPONENTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub name: String,
    pub class: LPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Class(LPolynomial),
}

impl Serialize for Intersection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Intersection::Empty => s.serialize_str("empty"),
            Intersection::Class(p) => p.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Intersection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Marker(String),
            Class(LPolynomial),
        }
        match Raw::deserialize(d)? {
            Raw::Marker(m) if m == "empty" => Ok(Intersection::Empty),
            Raw::Marker(m) => Err(serde::de::Error::custom(format!(
                "expected a class or \"empty\", found \"{m}\""
            ))),
            Raw::Class(p) => Ok(Intersection::Class(p)),
        }
    }
}

/// One declared intersection; `subset` holds 0-based component indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionEntry {
    pub subset: Vec<usize>,
    pub class: Intersection,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    subset: Vec<usize>,
    class: Intersection,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "ConfigRepr", into = "ConfigRepr")]
pub struct Configuration {
    pub components: Vec<Component>,
    pub intersections: Vec<IntersectionEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigRepr {
    components: Vec<Component>,
    #[serde(default)]
    intersections: Vec<EntryRepr>,
}

impl TryFrom<ConfigRepr> for Configuration {
    type Error = String;
    fn try_from(r: ConfigRepr) -> std::result::Result<Self, String> {
        let intersections = r
            .intersections
            .into_iter()
            .map(|e| {
                if e.subset.contains(&0) {
                    return Err("component indices in `subset` are 1-based".to_string());
                }
                Ok(IntersectionEntry {
                    subset: e.subset.iter().map(|i| i - 1).collect(),
                    class: e.class,
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Configuration {
            components: r.components,
            intersections,
        })
    }
}

impl From<Configuration> for ConfigRepr {
    fn from(c: Configuration) -> Self {
        ConfigRepr {
            components: c.components,
            intersections: c
                .intersections
                .into_iter()
                .map(|e| EntryRepr {
                    subset: e.subset.iter().map(|i| i + 1).collect(),
                    class: e.class,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooManyComponents { count: usize, cap: usize },
    IndexOutOfRange { subset: Vec<usize> },
    RepeatedIndex { subset: Vec<usize> },
    SubsetTooSmall { subset: Vec<usize> },
    DuplicateSubset { subset: Vec<usize> },
    /// An intersection neither declared nor forced empty by a smaller one.
    Missing { subset: Vec<usize> },
    /// `nonempty` has a class although its subset `empty` is empty.
    MonotonicityBreak { empty: Vec<usize>, nonempty: Vec<usize> },
}

fn fmt_subset(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyComponents { count, cap } => {
                write!(f, "{count} components exceed the cap of {cap}")
            }
            Violation::IndexOutOfRange { subset } => {
                write!(f, "subset {} names a missing component", fmt_subset(subset))
            }
            Violation::RepeatedIndex { subset } => {
                write!(f, "subset {} repeats an index", fmt_subset(subset))
            }
            Violation::SubsetTooSmall { subset } => write!(
                f,
                "subset {} has fewer than two components",
                fmt_subset(subset)
            ),
            Violation::DuplicateSubset { subset } => {
                write!(f, "subset {} is declared twice", fmt_subset(subset))
            }
            Violation::Missing { subset } => {
                write!(f, "intersection {} is missing", fmt_subset(subset))
            }
            Violation::MonotonicityBreak { empty, nonempty } => write!(
                f,
                "{} is empty but its superset {} has a class",
                fmt_subset(empty),
                fmt_subset(nonempty)
            ),
        }
    }
}

/// Outcome of [`validate_configuration`]; subsets are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

fn mask_to_subset(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Checks intersection-completeness and monotone emptiness.
pub fn validate_configuration(c: &Configuration) -> ValidationReport {
    let m = c.components.len();
    let mut violations = Vec::new();
    if m > MAX_COMPONENTS {
        violations.push(Violation::TooManyComponents {
            count: m,
            cap: MAX_COMPONENTS,
        });
        return ValidationReport { valid: false, violations };
    }
    let mut declared: BTreeMap<u32, &Intersection> = BTreeMap::new();
    for e in &c.intersections {
        let one_based: Vec<usize> = e.subset.iter().map(|i| i + 1).collect();
        if e.subset.iter().any(|&i| i >= m) {
            violations.push(Violation::IndexOutOfRange { subset: one_based });
            continue;
        }
        let mask = e.subset.iter().fold(0u32, |acc, &i| acc | 1 << i);
        if mask.count_ones() as usize != e.subset.len() {
            violations.push(Violation::RepeatedIndex { subset: one_based });
            continue;
        }
        if e.subset.len() < 2 {
            violations.push(Violation::SubsetTooSmall { subset: one_based });
            continue;
        }
        if declared.insert(mask, &e.class).is_some() {
            violations.push(Violation::DuplicateSubset { subset: one_based });
        }
    }

    // empty_witness[mask]: a declared-empty subset of `mask`, if any.
    let full = if m == 0 { 0 } else { (1u32 << m) - 1 };
    let mut empty_witness: Vec<Option<u32>> = vec![None; full as usize + 1];
    let mut masks: Vec<u32> = (0..=full).filter(|s| s.count_ones() >= 2).collect();
    masks.sort_by_key(|s| s.count_ones());
    for s in masks {
        let inherited = (0..m)
            .filter(|&j| s & (1 << j) != 0)
            .map(|j| s & !(1 << j))
            .filter(|t| t.count_ones() >= 2)
            .find_map(|t| empty_witness[t as usize]);
        match declared.get(&s) {
            Some(Intersection::Empty) => empty_witness[s as usize] = Some(inherited.unwrap_or(s)),
            Some(Intersection::Class(_)) => {
                if let Some(w) = inherited {
                    violations.push(Violation::MonotonicityBreak {
                        empty: mask_to_subset(w),
                        nonempty: mask_to_subset(s),
                    });
                }
            }
            None => match inherited {
                Some(w) => empty_witness[s as usize] = Some(w),
                None => violations.push(Violation::Missing {
                    subset: mask_to_subset(s),
                }),
            },
        }
    }
    ValidationReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// `[∪ X_i] = Σ_{S≠∅} (−1)^{|S|+1} [X_S]`, empty intersections contributing 0.
pub fn union_class(c: &Configuration) -> Result<LPolynomial> {
    let report = validate_configuration(c);
    if !report.valid {
        return Err(Error::InvalidConfiguration(report));
    }
    let mut out = LPolynomial::zero();
    for comp in &c.components {
        out = out.checked_add(&comp.class)?;
    }
    for e in &c.intersections {
        if let Intersection::Class(p) = &e.class {
            out = if e.subset.len() % 2 == 0 {
                out.checked_sub(p)?
            } else {
                out.checked_add(p)?
            };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(name: &str, dense: &[i64]) -> Component {
        Component {
            name: name.into(),
            class: LPolynomial::from_dense(dense),
        }
    }

    fn entry(subset: &[usize], class: Option<&[i64]>) -> IntersectionEntry {
        IntersectionEntry {
            subset: subset.iter().map(|i| i - 1).collect(),
            class: class.map_or(Intersection::Empty, |d| Intersection::Class(LPolynomial::from_dense(d))),
        }
    }

    #[test]
    fn single_and_pair_are_valid() {
        let single = Configuration {
            components: vec![comp("X", &[1, 1])],
            intersections: vec![],
        };
        assert!(validate_configuration(&single).valid);
        assert_eq!(union_class(&single).unwrap(), LPolynomial::from_dense(&[1, 1]));

        let two_lines = Configuration {
            components: vec![comp("l1", &[1, 1]), comp("l2", &[1, 1])],
            intersections: vec![entry(&[1, 2], Some(&[1]))],
        };
        assert!(validate_configuration(&two_lines).valid);
        assert_eq!(union_class(&two_lines).unwrap(), LPolynomial::from_dense(&[1, 2]));
    }

    #[test]
    fn monotonicity_break_is_named() {
        let c = Configuration {
            components: vec![comp("a", &[1]), comp("b", &[1]), comp("c", &[1])],
            intersections: vec![
                entry(&[1, 2], None),
                entry(&[1, 3], Some(&[1])),
                entry(&[2, 3], Some(&[1])),
                entry(&[1, 2, 3], Some(&[1])),
            ],
        };
        let r = validate_configuration(&c);
        assert!(!r.valid);
        assert_eq!(
            r.violations,
            vec![Violation::MonotonicityBreak { empty: vec![1, 2], nonempty: vec![1, 2, 3] }]
        );
        assert!(r.to_string().contains("{1,2} is empty but its superset {1,2,3}"));
        assert!(matches!(union_class(&c), Err(Error::InvalidConfiguration(_))));
    }

    #[test]
    fn missing_and_malformed_subsets() {
        let c = Configuration {
            components: vec![comp("a", &[1]), comp("b", &[1]), comp("c", &[1])],
            intersections: vec![
                entry(&[1, 2], Some(&[1])),
                entry(&[1, 4], Some(&[1])),
                entry(&[2], Some(&[1])),
                entry(&[1, 1], Some(&[1])),
                entry(&[2, 1], None),
            ],
        };
        let r = validate_configuration(&c);
        let kinds: Vec<_> = r.violations.iter().map(|v| format!("{v}")).collect();
        assert!(kinds.iter().any(|k| k.contains("{1,4} names a missing")));
        assert!(kinds.iter().any(|k| k.contains("{2} has fewer")));
        assert!(kinds.iter().any(|k| k.contains("{1,1} repeats")));
        assert!(kinds.iter().any(|k| k.contains("{2,1} is declared twice")));
        assert!(kinds.iter().any(|k| k.contains("{1,3} is missing")));
        assert!(kinds.iter().any(|k| k.contains("{2,3} is missing")));
    }

    #[test]
    fn derived_emptiness_fills_supersets() {
        let c = Configuration {
            components: vec![comp("a", &[1, 1]), comp("b", &[1, 1]), comp("c", &[1, 1])],
            intersections: vec![
                entry(&[1, 2], None),
                entry(&[1, 3], Some(&[1])),
                entry(&[2, 3], Some(&[1])),
            ],
        };
        assert!(validate_configuration(&c).valid);
        assert_eq!(union_class(&c).unwrap(), LPolynomial::from_dense(&[1, 3]));
    }

    #[test]
    fn disjoint_duplicate_adds_its_class() {
        let base = Configuration {
            components: vec![comp("a", &[1, 2, 1]), comp("b", &[1, 1])],
            intersections: vec![entry(&[1, 2], Some(&[1, 1]))],
        };
        let mut dup = base.clone();
        dup.components.push(comp("a'", &[1, 2, 1]));
        dup.intersections.push(entry(&[1, 3], None));
        dup.intersections.push(entry(&[2, 3], None));
        assert_eq!(
            union_class(&dup).unwrap(),
            &union_class(&base).unwrap() + &LPolynomial::from_dense(&[1, 2, 1])
        );
    }

    #[test]
    fn empty_configuration_and_cap() {
        assert_eq!(union_class(&Configuration::default()).unwrap(), LPolynomial::zero());
        let big = Configuration {
            components: (0..21).map(|i| comp(&i.to_string(), &[1])).collect(),
            intersections: vec![],
        };
        assert_eq!(
            validate_configuration(&big).violations,
            vec![Violation::TooManyComponents { count: 21, cap: 20 }]
        );
    }

    #[test]
    fn json_shape() {
        let text = r#"{"components":[{"name":"l1","class":{"coeffs":[[0,1],[1,1]]}},{"name":"l2","class":{"coeffs":[[0,1],[1,1]]}}],"intersections":[{"subset":[1,2],"class":{"coeffs":[[0,1]]}}]}"#;
        let c: Configuration = serde_json::from_str(text).unwrap();
        assert_eq!(c.intersections[0].subset, vec![0, 1]);
        assert_eq!(serde_json::to_string(&c).unwrap(), text);
        let e: Configuration = serde_json::from_str(
            r#"{"components":[{"name":"a","class":{"coeffs":[]}}],"intersections":[{"subset":[1,2],"class":"empty"}]}"#,
        )
        .unwrap();
        assert_eq!(e.intersections[0].class, Intersection::Empty);
        assert!(serde_json::from_str::<Configuration>(
            r#"{"components":[],"intersections":[{"subset":[0,1],"class":"empty"}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<Configuration>(
            r#"{"components":[],"intersections":[{"subset":[1,2],"class":"nothing"}]}"#
        )
        .is_err());
    }
}
