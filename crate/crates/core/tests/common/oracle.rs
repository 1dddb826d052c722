//! Reference computations that share no code with the library.
//!
//! Root systems are realized as integer vectors in Euclidean space (with
//! coordinates doubled where the textbook realization has halves), the full
//! root set is generated by closing the simple roots under all reflections
//! `s_α(x) = x − 2(x,α)/(α,α)·α`, and the Weyl group is the group of
//! permutations of that set generated by the simple reflections. Lengths are
//! breadth-first distances in the Cayley graph.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

pub type Vector = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(n: usize, i: usize, scale: i64) -> Vector {
    let mut v = vec![0; n];
    v[i] = scale;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v[j] = -1;
    v
}

/// Simple roots in Bourbaki order.
pub fn simple_roots(ty: &str) -> Vec<Vector> {
    let family = &ty[..1];
    let n: usize = ty[1..].parse().expect("rank");
    match family {
        "A" => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        "B" => {
            let mut v: Vec<Vector> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            v.push(unit(n, n - 1, 1));
            v
        }
        "C" => {
            let mut v: Vec<Vector> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            v.push(unit(n, n - 1, 2));
            v
        }
        "D" => {
            let mut v: Vec<Vector> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            v.push(last);
            v
        }
        "G" => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        // e2−e3, e3−e4, e4, ½(e1−e2−e3−e4), all doubled
        "F" => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        _ => panic!("oracle has no realization of {ty}"),
    }
}

fn reflect(x: &[i64], alpha: &[i64]) -> Vector {
    let num = 2 * dot(x, alpha);
    let den = dot(alpha, alpha);
    assert_eq!(num % den, 0, "non-crystallographic pairing");
    let c = num / den;
    x.iter().zip(alpha).map(|(a, b)| a - c * b).collect()
}

/// A Weyl group as permutations of the root set.
pub struct OracleGroup {
    pub roots: Vec<Vector>,
    pub simple: Vec<usize>,
    /// `positive[k]`: root `k` is a non-negative combination of simple roots.
    pub positive: Vec<bool>,
    pub elements: Vec<Vec<usize>>,
    pub lengths: Vec<usize>,
    /// A reduced word (0-based letters) per element, found by the search.
    pub words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    gens: Vec<Vec<usize>>,
}

impl OracleGroup {
    pub fn new(ty: &str) -> Self {
        let simple_roots = simple_roots(ty);
        let chamber = chamber_vector(ty, simple_roots[0].len());
        let mut roots: Vec<Vector> = simple_roots.clone();
        let mut seen: HashMap<Vector, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut k = 0;
        while k < roots.len() {
            for a in &simple_roots {
                let r = reflect(&roots[k], a);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), roots.len());
                    roots.push(r);
                }
            }
            k += 1;
        }
        let simple: Vec<usize> = (0..simple_roots.len()).collect();
        assert!(simple_roots.iter().all(|a| dot(a, &chamber) > 0));
        let positive: Vec<bool> = roots.iter().map(|r| dot(r, &chamber) > 0).collect();
        let gens: Vec<Vec<usize>> = simple_roots
            .iter()
            .map(|a| roots.iter().map(|r| seen[&reflect(r, a)]).collect())
            .collect();

        let id: Vec<usize> = (0..roots.len()).collect();
        let mut elements = vec![id.clone()];
        let mut lengths = vec![0];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (i, s) in gens.iter().enumerate() {
                // right multiplication: (w s)(β) = w(s(β))
                let ws: Vec<usize> = s.iter().map(|&b| elements[e][b]).collect();
                if !index.contains_key(&ws) {
                    index.insert(ws.clone(), elements.len());
                    let mut word = words[e].clone();
                    word.push(i);
                    elements.push(ws);
                    lengths.push(lengths[e] + 1);
                    words.push(word);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Self {
            roots,
            simple,
            positive,
            elements,
            lengths,
            words,
            index,
            gens,
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.iter().filter(|&&p| p).count()
    }

    pub fn times_simple(&self, w: usize, i: usize) -> usize {
        let ws: Vec<usize> = self.gens[i].iter().map(|&b| self.elements[w][b]).collect();
        self.index[&ws]
    }

    /// `{i : l(w s_i) > l(w)}`, as a bitmask.
    pub fn right_ascents(&self, w: usize) -> u64 {
        (0..self.rank())
            .filter(|&i| self.lengths[self.times_simple(w, i)] > self.lengths[w])
            .fold(0, |m, i| m | 1 << i)
    }

    /// Letters occurring in a reduced word of `w` (independent of the word).
    pub fn support(&self, w: usize) -> u64 {
        self.words[w].iter().fold(0, |m, &i| m | 1 << i)
    }

    /// Image of the simple roots, as root vectors; identifies `w`.
    pub fn simple_images(&self, w: usize) -> Vec<Vector> {
        self.simple
            .iter()
            .map(|&s| self.roots[self.elements[w][s]].clone())
            .collect()
    }

    pub fn find_by_simple_images(&self, images: &[Vector]) -> Option<usize> {
        (0..self.order()).find(|&w| self.simple_images(w) == images)
    }

    /// Length histogram of the whole group.
    pub fn length_histogram(&self) -> Vec<u64> {
        histogram(self.lengths.iter().copied())
    }

    /// Elements whose right ascent set contains `mask`, i.e. `W^I`.
    pub fn minimal_coset_reps(&self, mask: u64) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| self.right_ascents(w) & mask == mask)
            .collect()
    }

    /// Length histogram of the parabolic subgroup generated by `mask`,
    /// computed by its own search.
    pub fn parabolic_histogram(&self, mask: u64) -> Vec<u64> {
        let gens: Vec<usize> = (0..self.rank()).filter(|i| mask & (1 << i) != 0).collect();
        let mut dist = HashMap::from([(0usize, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &i in &gens {
                let f = self.times_simple(e, i);
                if !dist.contains_key(&f) {
                    dist.insert(f, dist[&e] + 1);
                    queue.push_back(f);
                }
            }
        }
        histogram(dist.values().copied())
    }

    /// Renner cell histogram of the closure `D_I`, with `I_u` read as the
    /// right ascent set (`ascent = true`) or the support complement.
    pub fn cell_histogram(&self, mask: u64, ascent: bool) -> Vec<u64> {
        let full = (1u64 << self.rank()) - 1;
        let n = self.num_positive();
        let mut out = Vec::new();
        for u in 0..self.order() {
            let iu = if ascent {
                self.right_ascents(u)
            } else {
                full & !self.support(u)
            };
            for v in 0..self.order() {
                let d = n - self.lengths[u] + (mask & iu).count_ones() as usize + self.lengths[v];
                if out.len() <= d {
                    out.resize(d + 1, 0);
                }
                out[d] += 1;
            }
        }
        out
    }
}

/// A vector in the open fundamental chamber of the realization.
fn chamber_vector(ty: &str, dim: usize) -> Vector {
    match &ty[..1] {
        "G" => vec![0, -1, 2],
        "F" => vec![10, 3, 2, 1],
        _ => (0..dim).map(|i| (dim - i) as i64).collect(),
    }
}

pub fn histogram(values: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut h = Vec::new();
    for v in values {
        if h.len() <= v {
            h.resize(v + 1, 0);
        }
        h[v] += 1;
    }
    h
}

/// Dense polynomial product.
pub fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn as_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// `[GL_n](q)`, counted directly: ordered bases of `F_q^n` row by row.
pub fn gl_point_count(n: u32, q: i64) -> i64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

/// Brute-force Künneth product: every cell of the fiber (dimension `p`)
/// times every cell of the base, each a Tate term, collected into
/// `(twist, shift) ↦ multiplicity`.
pub fn cell_product(fiber_cells: &[u32], base: &[(i64, i64, i64)]) -> HashMap<(i64, i64), i64> {
    let mut out = HashMap::new();
    for &p in fiber_cells {
        for &(t, s, m) in base {
            *out.entry((t + p as i64, s + 2 * p as i64)).or_insert(0) += m;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}
