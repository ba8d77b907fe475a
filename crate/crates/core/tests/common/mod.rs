//! Naive reference implementations used as test oracles.
//!
//! Nothing here shares code with the library beyond the formula ASTs: frames
//! are adjacency matrices, sets are `Vec<bool>`, and lattices are explicit
//! order relations searched by brute force.

#![allow(dead_code)]

use std::collections::BTreeMap;

use qmodal::formula::{BqFormula, BqKind, QlFormula};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Relation as an adjacency matrix; pair `(i, j)` is bit `i·n + j` of `mask`.
#[derive(Clone, Debug)]
pub struct Rel {
    pub n: usize,
    pub r: Vec<Vec<bool>>,
}

impl Rel {
    pub fn from_mask(n: usize, mask: u64) -> Rel {
        let r = (0..n)
            .map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect())
            .collect();
        Rel { n, r }
    }

    pub fn succ(&self, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&t| self.r[s][t]).collect()
    }

    pub fn symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| !self.r[i][j] || self.r[j][i]))
    }

    pub fn serial(&self) -> bool {
        (0..self.n).all(|s| !self.succ(s).is_empty())
    }

    pub fn q_fol(&self) -> bool {
        (0..self.n).all(|s| self.succ(s).into_iter().any(|t| self.succ(t) == vec![s]))
    }
}

pub type Val = BTreeMap<String, Vec<bool>>;

/// Truth of `f` at `s` by direct recursion on the definitions.
pub fn holds(rel: &Rel, v: &Val, s: usize, f: &BqFormula) -> bool {
    match &f.kind {
        BqKind::Atom(a) => v[a][s],
        BqKind::Top => true,
        BqKind::Bot => false,
        BqKind::Neg(a) => !holds(rel, v, s, a),
        BqKind::Box(a) => rel.succ(s).into_iter().all(|t| holds(rel, v, t, a)),
        BqKind::Diamond(a) => rel.succ(s).into_iter().any(|t| holds(rel, v, t, a)),
        BqKind::And(a, b) => holds(rel, v, s, a) && holds(rel, v, s, b),
        BqKind::Or(a, b) => holds(rel, v, s, a) || holds(rel, v, s, b),
        BqKind::Imp(a, b) => !holds(rel, v, s, a) || holds(rel, v, s, b),
        BqKind::Iff(a, b) => holds(rel, v, s, a) == holds(rel, v, s, b),
    }
}

/// Every valuation of `atoms` over `n` states.
pub fn valuations(n: usize, atoms: &[String]) -> Vec<Val> {
    let per = 1usize << n;
    let total = per.pow(atoms.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut v = Val::new();
            for a in atoms.iter().rev() {
                let bits = code % per;
                code /= per;
                v.insert(a.clone(), (0..n).map(|s| bits >> s & 1 == 1).collect());
            }
            v
        })
        .collect()
}

/// Frame validity by brute force.
pub fn frame_valid(rel: &Rel, f: &BqFormula) -> bool {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    valuations(rel.n, &atoms)
        .iter()
        .all(|v| (0..rel.n).all(|s| holds(rel, v, s, f)))
}

/// Extension of `f` as a bit vector.
pub fn ext(rel: &Rel, v: &Val, f: &BqFormula) -> Vec<bool> {
    (0..rel.n).map(|s| holds(rel, v, s, f)).collect()
}

/// All subsets of `0..n` as bit vectors.
pub fn subsets(n: usize) -> Vec<Vec<bool>> {
    (0..1usize << n)
        .map(|m| (0..n).map(|s| m >> s & 1 == 1).collect())
        .collect()
}

pub fn pos(rel: &Rel, x: &[bool]) -> Vec<bool> {
    (0..rel.n)
        .map(|s| rel.succ(s).into_iter().any(|t| x[t]))
        .collect()
}

pub fn nec(rel: &Rel, x: &[bool]) -> Vec<bool> {
    (0..rel.n)
        .map(|s| rel.succ(s).into_iter().all(|t| x[t]))
        .collect()
}

pub fn not(x: &[bool]) -> Vec<bool> {
    x.iter().map(|b| !b).collect()
}

/// `∼X = ⟨R⟩(−X)`.
pub fn sim(rel: &Rel, x: &[bool]) -> Vec<bool> {
    pos(rel, &not(x))
}

/// Finite poset with brute-force bounds.
pub struct Poset {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&z| self.leq[z][x] && self.leq[z][y])
            .collect();
        lower
            .iter()
            .copied()
            .find(|&z| lower.iter().all(|&w| self.leq[w][z]))
    }

    pub fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n)
            .filter(|&z| self.leq[x][z] && self.leq[y][z])
            .collect();
        upper
            .iter()
            .copied()
            .find(|&z| upper.iter().all(|&w| self.leq[z][w]))
    }
}

/// Random kernel formula (`~`, `&`, atoms) with roughly `size` nodes.
pub fn random_kernel(rng: &mut ChaCha8Rng, size: usize) -> QlFormula {
    random_kernel_over(rng, size, &["a", "b", "c"])
}

pub fn random_kernel_over(rng: &mut ChaCha8Rng, size: usize, atoms: &[&str]) -> QlFormula {
    if size <= 1 {
        return QlFormula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    if rng.gen_bool(0.4) {
        QlFormula::neg(random_kernel_over(rng, size - 1, atoms))
    } else {
        let left = rng.gen_range(1..size);
        QlFormula::meet(
            random_kernel_over(rng, left, atoms),
            random_kernel_over(rng, size - left, atoms),
        )
    }
}
