//! Closed-form local pro-isomorphic zeta functions of `Δ_{m,n}` and the
//! rational identities they satisfy.
//!
//! With `X_i = q^{A_i} t^{B_i}` and `X̃_j = q^{Ã_j} t^{B̃_j}`,
//!
//! ```text
//! ζ = Σ_{w ∈ S_n} q^{-ℓ(w)} ∏_{i<n} X_i^{ν_i(w)} / (∏_{i<n} (1 - X_i) · (1 - X̃_0)(1 - X̃_n))
//! ```

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{binom, to_i64};
use crate::error::invalid;
use crate::polyring::{rational_equal, series_expand, LaurentPoly, RationalFnQT};
use crate::Result;

/// Largest `n` for which the Weyl group is enumerated.
pub const MAX_WEYL_RANK: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaParameters {
    pub m: usize,
    pub n: usize,
    /// `A_0, ..., A_n`.
    pub a: Vec<BigInt>,
    /// `B_0, ..., B_n`.
    pub b: Vec<BigInt>,
    pub atilde0: BigInt,
    pub atilden: BigInt,
    pub btilde0: BigInt,
    pub btilden: BigInt,
    pub fe_a: BigInt,
    pub fe_b: BigInt,
}

impl ZetaParameters {
    /// `(m-1)Ã_0 = A_0`, `(m-1)B̃_0 = B_0`, `mÃ_n = A_n`, `mB̃_n = B_n`.
    pub fn relations_hold(&self) -> bool {
        let (m1, m) = (BigInt::from(self.m - 1), BigInt::from(self.m));
        let n = self.n;
        &m1 * &self.atilde0 == self.a[0]
            && &m1 * &self.btilde0 == self.b[0]
            && &m * &self.atilden == self.a[n]
            && &m * &self.btilden == self.b[n]
    }

    /// `B_i ≥ 1` for `0 < i < n` and `B̃_0, B̃_n ≥ 3`.
    pub fn bounds_hold(&self) -> bool {
        let three = BigInt::from(3);
        (1..self.n).all(|i| self.b[i] >= BigInt::one())
            && self.btilde0 >= three
            && self.btilden >= three
    }

    /// Exponent pairs `(A_i, B_i)` for `1 ≤ i ≤ n-1`.
    pub fn x_exponents(&self) -> Result<Vec<(i64, i64)>> {
        (1..self.n)
            .map(|i| Ok((to_i64(&self.a[i], "A_i")?, to_i64(&self.b[i], "B_i")?)))
            .collect()
    }

    pub fn tilde_exponents(&self) -> Result<[(i64, i64); 2]> {
        Ok([
            (to_i64(&self.atilde0, "Ã_0")?, to_i64(&self.btilde0, "B̃_0")?),
            (to_i64(&self.atilden, "Ã_n")?, to_i64(&self.btilden, "B̃_n")?),
        ])
    }
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m < 1 || n < 2 {
        return Err(invalid(format!("need m >= 1 and n >= 2, got m={m}, n={n}")));
    }
    Ok(())
}

fn b(n: i64, k: i64) -> BigInt {
    binom(n, k)
}

/// `Σ_{j=1}^{i} (1 + (m-1)(i-j+1)/(n-j+1)) C(m+j-2, m-1) C(m+n-j-1, m-1)`.
pub fn weighted_binomial_sum(m: usize, n: usize, i: usize) -> BigRational {
    let (m, n, i) = (m as i64, n as i64, i as i64);
    let mut acc = BigRational::zero();
    for j in 1..=i {
        let w = BigRational::one()
            + BigRational::new(BigInt::from((m - 1) * (i - j + 1)), BigInt::from(n - j + 1));
        acc += w * BigRational::from_integer(b(m + j - 2, m - 1) * b(m + n - j - 1, m - 1));
    }
    acc
}

fn integral(x: BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(invalid(format!("{what} is not an integer: {x}")));
    }
    Ok(x.to_integer())
}

fn a_i(m: usize, n: usize, i: usize, s: &BigInt) -> Result<BigInt> {
    let (mi, ni, ii) = (m as i64, n as i64, i as i64);
    let base = BigInt::from(ii * (ni - ii)) + s * BigInt::from((mi - 1) * ni + ii);
    Ok(base + integral(weighted_binomial_sum(m, n, i), "A_i sum")?)
}

fn b_i(m: usize, n: usize, i: usize) -> BigInt {
    let (m, n, i) = (m as i64, n as i64, i as i64);
    -BigInt::from(m * (m - 1)) * b(m + n - 2, m)
        + (BigInt::one() + b(m + n - 2, m - 1)) * BigInt::from((m - 1) * n + i)
}

pub fn zeta_parameters(m: usize, n: usize) -> Result<ZetaParameters> {
    check_mn(m, n)?;
    let (mi, ni) = (m as i64, n as i64);
    let s = b(mi + ni - 2, mi - 1) + b(mi + ni - 1, mi);
    let a = (0..=n).map(|i| a_i(m, n, i, &s)).collect::<Result<Vec<_>>>()?;
    let bv: Vec<BigInt> = (0..=n).map(|i| b_i(m, n, i)).collect();
    let atilde0 = BigInt::from(ni) * &s;
    let atilden = &atilde0 + b(2 * mi + ni - 2, 2 * mi - 1);
    let btilde0 = b(mi + ni - 2, mi - 1) + BigInt::from(ni);
    let btilden = b(mi + ni - 1, mi) + BigInt::from(ni);
    let fe_a = b(ni, 2)
        + BigInt::from(2 * ni) * (b(mi + ni - 2, mi - 1) + b(mi + ni - 1, mi))
        + b(2 * mi + ni - 2, 2 * mi - 1);
    let fe_b = BigInt::from(2 * mi - 1) * b(mi + ni - 2, mi)
        - BigInt::from(2 * ni) * (BigInt::one() + b(mi + ni - 2, mi - 1));
    Ok(ZetaParameters {
        m,
        n,
        a,
        b: bv,
        atilde0,
        atilden,
        btilde0,
        btilden,
        fe_a,
        fe_b,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// One-line notation, `perm[i-1] = w(i)`.
    pub perm: Vec<usize>,
    pub length: usize,
    /// `ν_1, ..., ν_{n-1}`.
    pub descent: Vec<bool>,
}

impl WeylElement {
    pub fn from_perm(perm: Vec<usize>) -> Self {
        let n = perm.len();
        let length = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut inverse = vec![0; n + 1];
        for (i, &v) in perm.iter().enumerate() {
            inverse[v] = i + 1;
        }
        let descent = (1..n).map(|i| inverse[i] > inverse[i + 1]).collect();
        WeylElement { perm, length, descent }
    }
}

/// All `n!` elements of `S_n`.
pub fn weyl_elements(n: usize) -> Result<Vec<WeylElement>> {
    if !(2..=MAX_WEYL_RANK).contains(&n) {
        return Err(invalid(format!(
            "Weyl group enumeration supports 2 <= n <= {MAX_WEYL_RANK}, got {n}"
        )));
    }
    Ok((1..=n)
        .permutations(n)
        .map(WeylElement::from_perm)
        .collect())
}

/// `Σ_w q^{-ℓ(w)}` grouped by descent vector.
pub fn descent_classes(n: usize) -> Result<BTreeMap<Vec<bool>, LaurentPoly>> {
    let mut classes: BTreeMap<Vec<bool>, LaurentPoly> = BTreeMap::new();
    for w in weyl_elements(n)? {
        classes
            .entry(w.descent)
            .or_default()
            .add_term((-(w.length as i64), 0), BigInt::one());
    }
    Ok(classes)
}

/// The raw exponent pairs of `q^{-ℓ(w)} ∏ X_i^{ν_i(w)}`, one per `w`.
pub fn weyl_numerator_terms(m: usize, n: usize) -> Result<Vec<(i64, i64)>> {
    let params = zeta_parameters(m, n)?;
    let xs = params.x_exponents()?;
    Ok(weyl_elements(n)?
        .into_iter()
        .map(|w| {
            let mut e = (-(w.length as i64), 0);
            for (i, &on) in w.descent.iter().enumerate() {
                if on {
                    e.0 += xs[i].0;
                    e.1 += xs[i].1;
                }
            }
            e
        })
        .collect())
}

/// `Σ_w q^{-ℓ(w)} ∏ Y_i^{ν_i(w)}` for arbitrary monomials `Y_i`.
fn weyl_sum(n: usize, ys: &[(i64, i64)]) -> Result<LaurentPoly> {
    let mut num = LaurentPoly::zero();
    for (descent, lengths) in descent_classes(n)? {
        let (mut a, mut b) = (0, 0);
        for (i, &on) in descent.iter().enumerate() {
            if on {
                a += ys[i].0;
                b += ys[i].1;
            }
        }
        num = &num + &lengths.shift(a, b);
    }
    Ok(num)
}

pub fn local_zeta(m: usize, n: usize) -> Result<RationalFnQT> {
    let params = zeta_parameters(m, n)?;
    let xs = params.x_exponents()?;
    let num = weyl_sum(n, &xs)?;
    let mut den = xs;
    den.extend(params.tilde_exponents()?);
    RationalFnQT::from_pairs(num, &den)
}

/// The two-generator closed form valid for `n = 2`.
pub fn dstar_zeta(m: usize) -> Result<RationalFnQT> {
    if m < 1 {
        return Err(invalid("need m >= 1"));
    }
    let mi = m as i64;
    let tdeg = mi * mi + 2 * mi - 1;
    let num = &LaurentPoly::one() + &LaurentPoly::monomial((9 * mi * mi + mi - 2) / 2, tdeg, 1);
    RationalFnQT::from_pairs(
        num,
        &[
            (mi * (9 * mi + 1) / 2, tdeg),
            (4 * mi + 2, mi + 2),
            (6 * mi + 2, mi + 3),
        ],
    )
}

/// The Weyl-sum form for `m = 1` with `X_i = q^{i(2n+2-i)} t^{2i}`.
pub fn grenham_display_weyl(n: usize) -> Result<RationalFnQT> {
    let ni = n as i64;
    let x = |i: i64| (i * (2 * ni + 2 - i), 2 * i);
    let ys: Vec<(i64, i64)> = (1..ni).map(x).collect();
    let num = weyl_sum(n, &ys)?;
    let mut den = vec![(ni * (ni + 1), ni + 1)];
    den.extend((1..=ni).map(x));
    RationalFnQT::from_pairs(num, &den)
}

/// `1 / ((1 - q^{n(n+1)} t^{n+1}) ∏_{i=1}^{n} (1 - q^{n+1+i} t^2))`.
pub fn grenham_display_product(n: usize) -> Result<RationalFnQT> {
    let ni = n as i64;
    let mut den = vec![(ni * (ni + 1), ni + 1)];
    den.extend((1..=ni).map(|i| (ni + 1 + i, 2)));
    RationalFnQT::from_pairs(LaurentPoly::one(), &den)
}

/// Left side of the `GL_n` integral identity in variables `q` and
/// `u = q^{-t}`: `Σ_w q^{-ℓ(w)} ∏ (q^{i(n-i)} u^i)^{ν_i} / ∏_{i≤n} (1 - q^{i(n-i)} u^i)`.
pub fn gl_weyl_sum(n: usize) -> Result<RationalFnQT> {
    let ni = n as i64;
    let y = |i: i64| (i * (ni - i), i);
    let num = weyl_sum(n, &(1..ni).map(y).collect::<Vec<_>>())?;
    RationalFnQT::from_pairs(num, &(1..=ni).map(y).collect::<Vec<_>>())
}

/// Right side of the `GL_n` identity: `1 / ∏_{i=1}^{n} (1 - q^{i-1} u)`.
pub fn gl_product(n: usize) -> Result<RationalFnQT> {
    let ni = n as i64;
    RationalFnQT::from_pairs(
        LaurentPoly::one(),
        &(1..=ni).map(|i| (i - 1, 1)).collect::<Vec<_>>(),
    )
}

/// Both `m = 1` displays agree with [`local_zeta`], the `GL_n` identity
/// holds, and all three series agree up to `t^k`.
pub fn grenham_identity_check(n: usize, k: usize) -> Result<bool> {
    if !(2..=7).contains(&n) {
        return Err(invalid(format!("grenham check supports 2 <= n <= 7, got {n}")));
    }
    let z = local_zeta(1, n)?;
    let g1 = grenham_display_weyl(n)?;
    let g2 = grenham_display_product(n)?;
    let rational = rational_equal(&z, &g1)
        && rational_equal(&z, &g2)
        && rational_equal(&gl_weyl_sum(n)?, &gl_product(n)?);
    let sz = series_expand(&z, k)?;
    let series = sz == series_expand(&g1, k)? && sz == series_expand(&g2, k)?;
    Ok(rational && series)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquation {
    pub holds: bool,
    pub sign: i32,
    /// `ζ(q^{-1}, t^{-1}) = sign · q^a t^{-b} · ζ(q, t)`.
    pub a: i64,
    pub b: i64,
}

/// Finds the monomial `c q^a t^e` with `f.num = c q^a t^e · g.num`, if any.
fn monomial_ratio(f: &LaurentPoly, g: &LaurentPoly) -> Option<(BigInt, i64, i64)> {
    let (&(fa, fb), fc) = f.terms().iter().max_by_key(|(&(a, b), _)| (b, a))?;
    let (&(ga, gb), gc) = g.terms().iter().max_by_key(|(&(a, b), _)| (b, a))?;
    let (c, r) = fc.div_rem(gc);
    if !r.is_zero() {
        return None;
    }
    let (da, db) = (fa - ga, fb - gb);
    (g.shift(da, db).scale(&c) == *f).then_some((c, da, db))
}

pub fn functional_equation_check(m: usize, n: usize) -> Result<FunctionalEquation> {
    if !(2..=8).contains(&n) {
        return Err(invalid(format!("functional equation check supports 2 <= n <= 8, got {n}")));
    }
    let params = zeta_parameters(m, n)?;
    let z = local_zeta(m, n)?;
    let zi = z.substitute_inverse();
    let failed = FunctionalEquation { holds: false, sign: 0, a: 0, b: 0 };
    if zi.factors() != z.factors() {
        return Ok(failed);
    }
    let Some((c, a, e)) = monomial_ratio(zi.numerator(), z.numerator()) else {
        return Ok(failed);
    };
    let sign = if c == BigInt::one() {
        1
    } else if c == -BigInt::one() {
        -1
    } else {
        return Ok(failed);
    };
    let expected_sign = if n % 2 == 1 { 1 } else { -1 };
    let holds = sign == expected_sign
        && BigInt::from(a) == params.fe_a
        && BigInt::from(-e) == params.fe_b;
    Ok(FunctionalEquation { holds, sign, a, b: -e })
}
