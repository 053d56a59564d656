//! Elements of the algebraic automorphism group `G = N ⋊ H` of `L(m,n)`.
//!
//! The reductive part `H ≅ GL_n × GL_1` acts by
//! `diag(λ·ρ1(A), λ⁻¹·ρ2(A), A)`, where `ρ1` is the `(m-1)`-th symmetric
//! power of the contragredient of `A` and `ρ2` is the `m`-th symmetric power
//! of `A` written in the factorial-scaled dual basis
//! `(∏ f_i!)⁻¹ z_1^{f_1} ⋯ z_n^{f_n}`. In that basis the bracket
//! `[x_e, y_f]` is the trilinear form `Φ(ξ^e, ·, y_f)` and the structure
//! constants are exactly those of [`crate::lattice`].
//!
//! The unipotent radical `N` consists of block unitriangular matrices whose
//! `C` block satisfies `c_{e,f} = b_{e+f}` for parameters `b_g`, `|g| = 2m-1`.
//!
//! Everything here is exact; matrices act on row vectors from the right.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::factorial;
use crate::error::invalid;
use crate::lattice::{multi_indices, LieLattice, MultiIndex};
use crate::matrix::RationalMatrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductivePoint {
    pub a: RationalMatrix,
    pub lambda: BigRational,
}

impl ReductivePoint {
    pub fn new(a: RationalMatrix, lambda: BigRational) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("A must be square".into()));
        }
        if lambda.is_zero() {
            return Err(invalid("lambda must be nonzero"));
        }
        if a.determinant()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(ReductivePoint { a, lambda })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentPoint {
    /// Parameters `b_g` for `g` of weight `2m - 1`; absent keys are zero.
    pub b: BTreeMap<MultiIndex, BigRational>,
    pub d1: RationalMatrix,
    pub d2: RationalMatrix,
}

impl UnipotentPoint {
    pub fn new(
        m: usize,
        n: usize,
        b: BTreeMap<MultiIndex, BigRational>,
        d1: RationalMatrix,
        d2: RationalMatrix,
    ) -> Result<Self> {
        check_mn(m, n)?;
        let (r1, r2) = (x_indices(m, n)?.len(), y_indices(m, n)?.len());
        if (d1.rows(), d1.cols()) != (r1, n) || (d2.rows(), d2.cols()) != (r2, n) {
            return Err(Error::DimensionMismatch("D1 must be r1 x n and D2 r2 x n".into()));
        }
        let weight = (2 * m - 1) as u32;
        if b.keys().any(|g| g.len() != n || g.weight() != weight) {
            return Err(invalid(format!("b must be indexed by {n}-tuples of weight {weight}")));
        }
        Ok(UnipotentPoint { b, d1, d2 })
    }

    pub fn identity(m: usize, n: usize) -> Result<Self> {
        let (r1, r2) = (x_indices(m, n)?.len(), y_indices(m, n)?.len());
        Self::new(
            m,
            n,
            BTreeMap::new(),
            RationalMatrix::zeros(r1, n),
            RationalMatrix::zeros(r2, n),
        )
    }

    pub fn b_value(&self, g: &MultiIndex) -> BigRational {
        self.b.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The derived `C` block, `c_{e,f} = b_{e+f}`.
    pub fn c_block(&self, m: usize, n: usize) -> Result<RationalMatrix> {
        let es = x_indices(m, n)?;
        let fs = y_indices(m, n)?;
        let mut c = RationalMatrix::zeros(es.len(), fs.len());
        for (i, e) in es.iter().enumerate() {
            for (j, f) in fs.iter().enumerate() {
                c[(i, j)] = self.b_value(&e.add(f));
            }
        }
        Ok(c)
    }
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m < 1 || n < 2 {
        return Err(invalid(format!("need m >= 1 and n >= 2, got m={m}, n={n}")));
    }
    Ok(())
}

fn x_indices(m: usize, n: usize) -> Result<Vec<MultiIndex>> {
    multi_indices(n, (m - 1) as u32)
}

fn y_indices(m: usize, n: usize) -> Result<Vec<MultiIndex>> {
    multi_indices(n, m as u32)
}

/// Multi-indices of weight `2m - 1` labelling the unipotent parameters.
pub fn g_indices(m: usize, n: usize) -> Result<Vec<MultiIndex>> {
    multi_indices(n, (2 * m - 1) as u32)
}

type Monomials = BTreeMap<Vec<u32>, BigRational>;

fn poly_mul(a: &Monomials, b: &Monomials) -> Monomials {
    let mut out = Monomials::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(BigRational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Matrix of the `weight`-th symmetric power of `b` on the monomial basis
/// `ξ^e`, `|e| = weight`: row `e` holds the coefficients of
/// `∏_j (ξ_j b)^{e_j}`.
fn symmetric_power(b: &RationalMatrix, weight: u32) -> Result<(Vec<MultiIndex>, RationalMatrix)> {
    let n = b.rows();
    let basis = multi_indices(n, weight)?;
    let linear: Vec<Monomials> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| !b[(j, k)].is_zero())
                .map(|k| {
                    let mut e = vec![0u32; n];
                    e[k] = 1;
                    (e, b[(j, k)].clone())
                })
                .collect()
        })
        .collect();
    let position: BTreeMap<&[u32], usize> =
        basis.iter().enumerate().map(|(i, e)| (e.entries(), i)).collect();
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    for (row, e) in basis.iter().enumerate() {
        let mut acc = Monomials::from([(vec![0u32; n], BigRational::one())]);
        for (j, &ej) in e.entries().iter().enumerate() {
            for _ in 0..ej {
                acc = poly_mul(&acc, &linear[j]);
            }
        }
        for (mono, c) in acc {
            out[(row, position[mono.as_slice()])] = c;
        }
    }
    Ok((basis, out))
}

fn check_square(a: &RationalMatrix, n: usize) -> Result<()> {
    if !a.is_square() || a.rows() != n {
        return Err(Error::DimensionMismatch(format!("expected an {n}x{n} matrix")));
    }
    Ok(())
}

/// `(m-1)`-th symmetric power of the contragredient `A^{-T}` (size `r1`).
pub fn sym_power_rho1(a: &RationalMatrix, m: usize, n: usize) -> Result<RationalMatrix> {
    check_mn(m, n)?;
    check_square(a, n)?;
    let contragredient = a.inverse()?.transpose();
    Ok(symmetric_power(&contragredient, (m - 1) as u32)?.1)
}

fn multi_factorial(f: &MultiIndex) -> BigRational {
    let p = f
        .entries()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial(x as u64));
    BigRational::from_integer(p)
}

/// `m`-th symmetric power of `A` in the factorial-scaled dual basis (size `r2`).
pub fn sym_power_rho2(a: &RationalMatrix, m: usize, n: usize) -> Result<RationalMatrix> {
    check_mn(m, n)?;
    check_square(a, n)?;
    if a.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let (basis, raw) = symmetric_power(a, m as u32)?;
    let scale: Vec<BigRational> = basis.iter().map(multi_factorial).collect();
    let mut out = raw;
    for (i, si) in scale.iter().enumerate() {
        for (j, sj) in scale.iter().enumerate() {
            if !out[(i, j)].is_zero() {
                out[(i, j)] = &out[(i, j)] * sj / si;
            }
        }
    }
    Ok(out)
}

/// `diag(λ·ρ1(A), λ⁻¹·ρ2(A), A)`.
pub fn embed_reductive(h: &ReductivePoint, m: usize, n: usize) -> Result<RationalMatrix> {
    if h.lambda.is_zero() {
        return Err(invalid("lambda must be nonzero"));
    }
    let rho1 = sym_power_rho1(&h.a, m, n)?.scale(&h.lambda);
    let rho2 = sym_power_rho2(&h.a, m, n)?.scale(&h.lambda.recip());
    Ok(RationalMatrix::block_diagonal(&[&rho1, &rho2, &h.a]))
}

/// The block unitriangular matrix with blocks `C`, `D1`, `D2`.
pub fn embed_unipotent(u: &UnipotentPoint, m: usize, n: usize) -> Result<RationalMatrix> {
    check_mn(m, n)?;
    let c = u.c_block(m, n)?;
    let (r1, r2) = (c.rows(), c.cols());
    let mut out = RationalMatrix::identity(r1 + r2 + n);
    out.set_block(0, r1, &c);
    out.set_block(0, r1 + r2, &u.d1);
    out.set_block(r1, r1 + r2, &u.d2);
    Ok(out)
}

/// Whether `M` preserves the bracket on every pair of basis vectors:
/// `[e_i M, e_j M] = [e_i, e_j] M`. Singular `M` is reported as an error.
pub fn is_automorphism(lattice: &LieLattice, m: &RationalMatrix) -> Result<bool> {
    let d = lattice.d;
    if m.rows() != d || m.cols() != d {
        return Err(Error::DimensionMismatch(format!("expected a {d}x{d} matrix")));
    }
    if m.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let z0 = lattice.z_position(0);
    for i in 0..d {
        for j in (i + 1)..d {
            let lhs = lattice.bracket(m.row(i), m.row(j));
            // [e_i, e_j] M, a combination of the rows of M belonging to z_k
            let mut rhs = vec![BigRational::zero(); d];
            for (&k, &c) in &lattice.bracket_basis(i, j) {
                let c = BigRational::from_integer(c.into());
                for (col, r) in rhs.iter_mut().enumerate() {
                    let entry = &m[(z0 + k, col)];
                    if !entry.is_zero() {
                        *r += &c * entry;
                    }
                }
            }
            if rhs[..z0].iter().any(|x| !x.is_zero()) || rhs[z0..] != lhs[..] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The trilinear form `Φ : S^{m-1}V × V × S^m(V^∨) → K` in coordinates:
/// `Φ(ξ^e, ξ_k, y_f) = 1` iff `f = e + u_k`.
pub fn phi_form(
    m: usize,
    n: usize,
    x: &[BigRational],
    xi: &[BigRational],
    y: &[BigRational],
) -> Result<BigRational> {
    check_mn(m, n)?;
    let es = x_indices(m, n)?;
    let fs = y_indices(m, n)?;
    if x.len() != es.len() || xi.len() != n || y.len() != fs.len() {
        return Err(Error::DimensionMismatch("Φ arguments have wrong lengths".into()));
    }
    let position: BTreeMap<&MultiIndex, usize> = fs.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut acc = BigRational::zero();
    for (ie, e) in es.iter().enumerate() {
        if x[ie].is_zero() {
            continue;
        }
        for (k, xk) in xi.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            let mut f = e.clone();
            f.0[k] += 1;
            let yf = &y[position[&f]];
            if !yf.is_zero() {
                acc += &x[ie] * xk * yf;
            }
        }
    }
    Ok(acc)
}

/// Splits a block upper triangular `M` as `h · u` with `h` in the image of
/// [`embed_reductive`] and `u` in the image of [`embed_unipotent`]. Returns
/// `None` when `M` is not of that shape, including when the unipotent factor
/// violates `c_{e,f} = b_{e+f}`.
pub fn factor_semidirect(
    mat: &RationalMatrix,
    m: usize,
    n: usize,
) -> Result<Option<(ReductivePoint, UnipotentPoint)>> {
    check_mn(m, n)?;
    let es = x_indices(m, n)?;
    let fs = y_indices(m, n)?;
    let (r1, r2) = (es.len(), fs.len());
    let d = r1 + r2 + n;
    if mat.rows() != d || mat.cols() != d {
        return Err(Error::DimensionMismatch(format!("expected a {d}x{d} matrix")));
    }
    let below_diagonal_zero = mat.block(r1, 0, r2 + n, r1).is_zero()
        && mat.block(r1 + r2, r1, n, r2).is_zero();
    if !below_diagonal_zero {
        return Ok(None);
    }
    let a = mat.block(r1 + r2, r1 + r2, n, n);
    if a.determinant()?.is_zero() {
        return Ok(None);
    }
    let rho1 = sym_power_rho1(&a, m, n)?;
    let x_block = mat.block(0, 0, r1, r1);
    let Some(pos) = (0..r1 * r1).find(|&p| !rho1[(p / r1, p % r1)].is_zero()) else {
        return Ok(None);
    };
    let (pi, pj) = (pos / r1, pos % r1);
    let lambda = &x_block[(pi, pj)] / &rho1[(pi, pj)];
    if lambda.is_zero() {
        return Ok(None);
    }
    let h = ReductivePoint::new(a, lambda)?;
    let h_mat = embed_reductive(&h, m, n)?;
    if h_mat.block(0, 0, r1 + r2, r1 + r2) != mat.block(0, 0, r1 + r2, r1 + r2).clone_diagonal_blocks(r1) {
        return Ok(None);
    }
    let u_mat = &h_mat.inverse()? * mat;
    let c = u_mat.block(0, r1, r1, r2);
    let mut b: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
    for (i, e) in es.iter().enumerate() {
        for (j, f) in fs.iter().enumerate() {
            let g = e.add(f);
            match b.get(&g) {
                Some(existing) if *existing != c[(i, j)] => return Ok(None),
                Some(_) => {}
                None => {
                    b.insert(g, c[(i, j)].clone());
                }
            }
        }
    }
    b.retain(|_, v| !v.is_zero());
    let u = UnipotentPoint::new(
        m,
        n,
        b,
        u_mat.block(0, r1 + r2, r1, n),
        u_mat.block(r1, r1 + r2, r2, n),
    )?;
    if embed_unipotent(&u, m, n)? != u_mat {
        return Ok(None);
    }
    Ok(Some((h, u)))
}

trait DiagonalBlocks {
    fn clone_diagonal_blocks(&self, split: usize) -> RationalMatrix;
}

impl DiagonalBlocks for RationalMatrix {
    /// Keeps the two diagonal blocks `[0, split)` and `[split, rows)`,
    /// zeroing the off-diagonal ones.
    fn clone_diagonal_blocks(&self, split: usize) -> RationalMatrix {
        let n = self.rows();
        let top = self.block(0, 0, split, split);
        let bottom = self.block(split, split, n - split, n - split);
        RationalMatrix::block_diagonal(&[&top, &bottom])
    }
}
