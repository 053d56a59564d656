//! The Lie lattice `L(m,n)`.
//!
//! The basis consists of three layers:
//!
//! - `x_e` for multi-indices `e` of weight `m - 1` (the X-layer, `r1` vectors),
//! - `y_f` for multi-indices `f` of weight `m` (the Y-layer, `r2` vectors),
//! - `z_1, ..., z_n` (the Z-layer, spanning the centre).
//!
//! The only nonzero brackets are `[x_e, y_f] = z_i` whenever `f - e` is the
//! i-th standard unit vector. Basis vectors are laid out X, then Y, then Z,
//! each layer in the canonical multi-index order of [`multi_indices`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, Mul, Neg};

use num_traits::{FromPrimitive, Zero};

use crate::combinat::binom;
use crate::error::invalid;
use crate::Result;

/// An `n`-tuple of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise sum.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// If `other - self` is the standard unit vector `u_i`, returns `i` (0-based).
    pub fn unit_step_to(&self, other: &MultiIndex) -> Option<usize> {
        let mut step = None;
        for (i, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            match (*b as i64) - (*a as i64) {
                0 => {}
                1 if step.is_none() => step = Some(i),
                _ => return None,
            }
        }
        step
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All `n`-tuples of non-negative integers summing to `weight`, in
/// lexicographically descending order: `(w,0,..,0)` first, `(0,..,0,w)` last.
pub fn multi_indices(n: usize, weight: u32) -> Result<Vec<MultiIndex>> {
    if n == 0 {
        return Err(invalid("multi_indices requires n >= 1"));
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, weight, &mut out);
    Ok(out)
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[pos] = v;
        fill(current, pos + 1, remaining - v, out);
    }
    current[pos] = 0;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    X(MultiIndex),
    Y(MultiIndex),
    /// Central generator `z_j`, `j` is 1-based.
    Z(usize),
}

impl BasisLabel {
    pub fn layer(&self) -> Layer {
        match self {
            BasisLabel::X(_) => Layer::X,
            BasisLabel::Y(_) => Layer::Y,
            BasisLabel::Z(_) => Layer::Z,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::X(e) => write!(f, "x{e}"),
            BasisLabel::Y(e) => write!(f, "y{e}"),
            BasisLabel::Z(j) => write!(f, "z{j}"),
        }
    }
}

/// A sparse integer combination of the central generators, keyed by the
/// 0-based Z index.
pub type ZVector = BTreeMap<usize, i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieLattice {
    pub m: usize,
    pub n: usize,
    pub basis: Vec<BasisLabel>,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub d: usize,
    /// Nonzero structure constants on ordered pairs of basis positions.
    /// Both `(i, j)` and `(j, i)` are stored.
    brackets: BTreeMap<(usize, usize), ZVector>,
}

/// Builds `L(m,n)`.
pub fn build_lattice(m: usize, n: usize) -> Result<LieLattice> {
    if m < 1 {
        return Err(invalid(format!("m must be >= 1, got {m}")));
    }
    if n < 2 {
        return Err(invalid(format!("n must be >= 2, got {n}")));
    }
    let es = multi_indices(n, (m - 1) as u32)?;
    let fs = multi_indices(n, m as u32)?;
    let (r1, r2, r3) = (es.len(), fs.len(), n);
    let mut basis = Vec::with_capacity(r1 + r2 + r3);
    basis.extend(es.iter().cloned().map(BasisLabel::X));
    basis.extend(fs.iter().cloned().map(BasisLabel::Y));
    basis.extend((1..=n).map(BasisLabel::Z));

    let mut brackets = BTreeMap::new();
    for (i, e) in es.iter().enumerate() {
        for (j, f) in fs.iter().enumerate() {
            if let Some(k) = e.unit_step_to(f) {
                let (xi, yj) = (i, r1 + j);
                brackets.insert((xi, yj), ZVector::from([(k, 1)]));
                brackets.insert((yj, xi), ZVector::from([(k, -1)]));
            }
        }
    }
    Ok(LieLattice {
        m,
        n,
        basis,
        r1,
        r2,
        r3,
        d: r1 + r2 + r3,
        brackets,
    })
}

impl LieLattice {
    /// Position of a basis label in the canonical basis order.
    pub fn position(&self, label: &BasisLabel) -> Option<usize> {
        match label {
            BasisLabel::Z(j) if (1..=self.n).contains(j) => Some(self.r1 + self.r2 + j - 1),
            _ => self.basis.iter().position(|b| b == label),
        }
    }

    pub fn x_indices(&self) -> impl Iterator<Item = &MultiIndex> {
        self.basis.iter().filter_map(|b| match b {
            BasisLabel::X(e) => Some(e),
            _ => None,
        })
    }

    pub fn y_indices(&self) -> impl Iterator<Item = &MultiIndex> {
        self.basis.iter().filter_map(|b| match b {
            BasisLabel::Y(f) => Some(f),
            _ => None,
        })
    }

    /// Position of the central generator `z_{k+1}`.
    pub fn z_position(&self, k: usize) -> usize {
        self.r1 + self.r2 + k
    }

    /// Bracket of two basis vectors, by position.
    pub fn bracket_basis(&self, i: usize, j: usize) -> ZVector {
        self.brackets.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// The nonzero structure constants.
    pub fn structure_constants(&self) -> impl Iterator<Item = (&(usize, usize), &ZVector)> {
        self.brackets.iter()
    }

    /// Overwrites the structure constant on the ordered pair `(i, j)` only.
    /// Intended for constructing deliberately corrupted lattices.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, value: ZVector) {
        let value: ZVector = value.into_iter().filter(|(_, c)| *c != 0).collect();
        if value.is_empty() {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), value);
        }
    }

    /// Bilinear extension of the structure constants to coordinate vectors of
    /// length `d`. Returns the coefficients of `z_1, ..., z_n`.
    pub fn bracket<T>(&self, u: &[T], v: &[T]) -> Vec<T>
    where
        T: Clone + Zero + AddAssign + FromPrimitive + for<'a> Mul<&'a T, Output = T> + Neg<Output = T>,
    {
        assert_eq!(u.len(), self.d, "left operand has wrong length");
        assert_eq!(v.len(), self.d, "right operand has wrong length");
        let mut out = vec![T::zero(); self.n];
        for (&(i, j), value) in &self.brackets {
            if u[i].is_zero() || v[j].is_zero() {
                continue;
            }
            let prod = u[i].clone() * &v[j];
            for (&k, &c) in value {
                let term = match c {
                    1 => prod.clone(),
                    -1 => -prod.clone(),
                    c => prod.clone() * &T::from_i64(c).expect("structure constant fits the coefficient type"),
                };
                out[k] += term;
            }
        }
        out
    }

    /// Antisymmetry on basis pairs and vanishing of all triple brackets.
    pub fn check_lie_axioms(&self) -> bool {
        for (&(i, j), value) in &self.brackets {
            if i == j {
                return false;
            }
            let swapped = self.bracket_basis(j, i);
            let negated: ZVector = value.iter().map(|(&k, &c)| (k, -c)).collect();
            if swapped != negated {
                return false;
            }
        }
        // Every bracket lands in the Z-layer as a combination of z_k, so
        // [[u, v], w] vanishes on basis triples iff [z_k, w] = 0 for every
        // z_k occurring in some bracket and every basis vector w.
        let mut occurring = std::collections::BTreeSet::new();
        for value in self.brackets.values() {
            occurring.extend(value.keys().copied());
        }
        for k in occurring {
            let zk = self.z_position(k);
            for w in 0..self.d {
                if !self.bracket_basis(zk, w).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// `r1 = binom(m+n-2, n-1)`, `r2 = binom(m+n-1, n-1)`.
pub fn layer_ranks(m: usize, n: usize) -> (num_bigint::BigInt, num_bigint::BigInt) {
    let (m, n) = (m as i64, n as i64);
    (binom(m + n - 2, n - 1), binom(m + n - 1, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn unit(l: &LieLattice, label: BasisLabel) -> Vec<i64> {
        let mut v = vec![0; l.d];
        v[l.position(&label).unwrap()] = 1;
        v
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn multi_indices_examples() {
        assert_eq!(multi_indices(2, 1).unwrap(), vec![mi(&[1, 0]), mi(&[0, 1])]);
        assert_eq!(multi_indices(3, 2).unwrap().len(), 6);
        assert_eq!(multi_indices(4, 0).unwrap(), vec![mi(&[0, 0, 0, 0])]);
        assert!(multi_indices(0, 3).is_err());
    }

    #[test]
    fn multi_indices_are_lex_descending() {
        let v = multi_indices(3, 3).unwrap();
        assert!(v.windows(2).all(|w| w[0] > w[1]));
        assert!(v.iter().all(|e| e.weight() == 3));
    }

    #[test]
    fn multi_index_counts_match_binomials() {
        for n in 1..=6usize {
            for w in 0..=8u32 {
                let count = multi_indices(n, w).unwrap().len();
                assert_eq!(
                    BigInt::from(count),
                    binom(w as i64 + n as i64 - 1, n as i64 - 1),
                    "n={n} w={w}"
                );
            }
        }
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(build_lattice(0, 2).is_err());
        assert!(build_lattice(1, 1).is_err());
    }

    #[test]
    fn grenham_five() {
        let l = build_lattice(1, 2).unwrap();
        assert_eq!((l.r1, l.r2, l.r3, l.d), (1, 2, 2, 5));
        let x = unit(&l, BasisLabel::X(mi(&[0, 0])));
        assert_eq!(l.bracket(&x, &unit(&l, BasisLabel::Y(mi(&[1, 0])))), vec![1, 0]);
        assert_eq!(l.bracket(&x, &unit(&l, BasisLabel::Y(mi(&[0, 1])))), vec![0, 1]);
    }

    #[test]
    fn dimensions() {
        let l = build_lattice(2, 2).unwrap();
        assert_eq!(l.d, 7);
        let l = build_lattice(2, 3).unwrap();
        assert_eq!((l.r1, l.r2, l.r3, l.d), (3, 6, 3, 12));
        let (r1, r2) = layer_ranks(2, 3);
        assert_eq!((r1, r2), (BigInt::from(3), BigInt::from(6)));
    }

    #[test]
    fn bracket_examples() {
        let l = build_lattice(2, 2).unwrap();
        let x10 = unit(&l, BasisLabel::X(mi(&[1, 0])));
        let x01 = unit(&l, BasisLabel::X(mi(&[0, 1])));
        let y11 = unit(&l, BasisLabel::Y(mi(&[1, 1])));
        let y20 = unit(&l, BasisLabel::Y(mi(&[2, 0])));
        assert_eq!(l.bracket(&x10, &y11), vec![0, 1]);
        let sum: Vec<i64> = x10.iter().zip(&x01).map(|(a, b)| a + b).collect();
        assert_eq!(l.bracket(&sum, &y20), vec![1, 0]);
        // antisymmetry
        assert_eq!(l.bracket(&y11, &x10), vec![0, -1]);
        // Y-layer is abelian
        assert_eq!(l.bracket(&y11, &y20), vec![0, 0]);
    }

    #[test]
    fn lie_axioms_hold() {
        assert!(build_lattice(1, 2).unwrap().check_lie_axioms());
        assert!(build_lattice(3, 3).unwrap().check_lie_axioms());
    }

    #[test]
    fn corrupted_lattice_fails_axioms() {
        let mut l = build_lattice(2, 2).unwrap();
        let z1 = l.z_position(0);
        let x = 0;
        l.set_structure_constant(z1, x, ZVector::from([(0, 1)]));
        l.set_structure_constant(x, z1, ZVector::from([(0, -1)]));
        assert!(!l.check_lie_axioms());

        // breaking antisymmetry alone is also detected
        let mut l = build_lattice(2, 2).unwrap();
        l.set_structure_constant(l.r1, 0, ZVector::from([(0, 1)]));
        assert!(!l.check_lie_axioms());
    }

    #[test]
    fn y_and_z_span_an_abelian_ideal() {
        for m in 1..=5 {
            for n in 2..=5 {
                let l = build_lattice(m, n).unwrap();
                let ideal: Vec<usize> = (l.r1..l.d).collect();
                assert_eq!(ideal.len(), l.r2 + l.r3);
                for &i in &ideal {
                    for &j in &ideal {
                        assert!(l.bracket_basis(i, j).is_empty());
                    }
                    // ideal: brackets with anything stay inside Z, which lies in the ideal
                    for w in 0..l.d {
                        assert!(l.bracket_basis(i, w).keys().all(|&k| k < l.n));
                    }
                }
            }
        }
    }

    #[test]
    fn derived_algebra_is_the_centre() {
        for m in 1..=4 {
            for n in 2..=5 {
                let l = build_lattice(m, n).unwrap();
                let mut hit = vec![false; n];
                for (&(i, j), v) in l.structure_constants() {
                    assert_eq!(l.basis[i].layer() == Layer::X, l.basis[j].layer() == Layer::Y);
                    assert_eq!(v.len(), 1);
                    let (&k, &c) = v.iter().next().unwrap();
                    assert_eq!(c.abs(), 1);
                    hit[k] = true;
                }
                assert!(hit.iter().all(|&h| h), "m={m} n={n}");
            }
        }
    }
}
