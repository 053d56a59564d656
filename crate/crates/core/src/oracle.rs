//! Independent recomputation of the local zeta function as a sum over
//! cocharacter cone points.
//!
//! A point `e = (e_0, ..., e_n)` determines torus valuations `v(a_i)` and
//! `v(λ)`. From these we compute the determinant valuation, `log_q θ_1` by
//! direct enumeration over the unipotent parameters, and `log_q θ_2`, then
//! sum `q^{-ℓ(w)} q^{⟨β_0, e⟩ + θ_1 + θ_2} t^{det}` over every cone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::{binom, to_i64};
use crate::error::invalid;
use crate::lattice::{multi_indices, MultiIndex};
use crate::polyring::{series_expand, LaurentPoly, TruncatedSeries};
use crate::zeta::{descent_classes, local_zeta, weighted_binomial_sum, zeta_parameters};
use crate::{Error, Result};

/// Default cap on the number of enumerated cone points.
pub const DEFAULT_POINT_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConePoint {
    /// `e_0, e_1, ..., e_n`.
    pub e: Vec<i64>,
}

impl ConePoint {
    pub fn new(n: usize, e: Vec<i64>) -> Result<Self> {
        if e.len() != n + 1 {
            return Err(invalid(format!("cone point needs {} coordinates", n + 1)));
        }
        if e.iter().any(|&x| x < 0) {
            return Err(invalid("cone point coordinates must be non-negative"));
        }
        Ok(ConePoint { e })
    }

    pub fn zero(n: usize) -> Self {
        ConePoint { e: vec![0; n + 1] }
    }

    fn n(&self) -> usize {
        self.e.len() - 1
    }

    /// `e_i ≥ ν_i` for `1 ≤ i ≤ n-1`.
    pub fn in_cone(&self, descent: &[bool]) -> bool {
        descent
            .iter()
            .enumerate()
            .all(|(i, &d)| !d || self.e[i + 1] >= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusValuations {
    pub va: Vec<i64>,
    pub vlambda: i64,
}

impl TorusValuations {
    /// Absolute values `|a_1| ≤ ... ≤ |a_n|`, i.e. valuations non-increasing.
    pub fn is_ordered(&self) -> bool {
        self.va.windows(2).all(|w| w[0] >= w[1])
    }
}

fn check(m: usize, e: &ConePoint) -> Result<()> {
    if m < 1 || e.n() < 2 {
        return Err(invalid("need m >= 1 and n >= 2"));
    }
    Ok(())
}

pub fn torus_valuations(m: usize, e: &ConePoint) -> Result<TorusValuations> {
    check(m, e)?;
    let n = e.n();
    let m = m as i64;
    let ends = e.e[0] + e.e[n];
    let va = (1..=n)
        .map(|i| {
            let before: i64 = e.e[1..i].iter().sum();
            let after: i64 = e.e[i..n].iter().sum();
            (m - 1) * before + m * after + ends
        })
        .collect();
    let inner: i64 = e.e[1..n].iter().sum();
    let vlambda = m * (m - 1) * inner + m * e.e[0] + (m - 1) * e.e[n];
    Ok(TorusValuations { va, vlambda })
}

/// Precomputed data for one `(m, n)`.
#[derive(Clone, Debug)]
pub struct OracleContext {
    pub m: usize,
    pub n: usize,
    fs: Vec<MultiIndex>,
    /// For each `g` of weight `2m-1`, the indices of all `f ≤ g`.
    below: Vec<Vec<usize>>,
    /// Determinant coefficients of `e_0, ..., e_n`.
    det_coeffs: Vec<i64>,
    det_lambda: i64,
    det_a: i64,
    rank_sum: i64,
}

impl OracleContext {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 || n < 2 {
            return Err(invalid("need m >= 1 and n >= 2"));
        }
        let fs = multi_indices(n, m as u32)?;
        let gs = multi_indices(n, (2 * m - 1) as u32)?;
        let below = gs
            .iter()
            .map(|g| (0..fs.len()).filter(|&j| fs[j].le(g)).collect())
            .collect();
        let (mi, ni) = (m as i64, n as i64);
        let p = zeta_parameters(m, n)?;
        let mut det_coeffs = vec![to_i64(&p.btilde0, "B̃_0")?];
        for i in 1..n {
            det_coeffs.push(to_i64(&p.b[i], "B_i")?);
        }
        det_coeffs.push(to_i64(&p.btilden, "B̃_n")?);
        let rank_sum = binom(mi + ni - 2, ni - 1) + binom(mi + ni - 1, ni - 1);
        Ok(OracleContext {
            m,
            n,
            fs,
            below,
            det_coeffs,
            det_lambda: to_i64(&binom(mi + ni - 2, ni - 2), "binomial")?,
            det_a: to_i64(&(BigInt::one() + binom(mi + ni - 2, ni - 1)), "binomial")?,
            rank_sum: to_i64(&rank_sum, "r1 + r2")?,
        })
    }

    fn valuations(&self, e: &ConePoint) -> TorusValuations {
        torus_valuations(self.m, e).expect("context validated m and n")
    }

    /// `Σ_i coeff_i · e_i` with the determinant coefficients.
    pub fn det_valuation(&self, e: &ConePoint) -> i64 {
        let by_coeffs: i64 = self.det_coeffs.iter().zip(&e.e).map(|(c, x)| c * x).sum();
        debug_assert_eq!(by_coeffs, self.det_valuation_from_torus(e));
        by_coeffs
    }

    /// `-C(m+n-2, n-2) v(λ) + (1 + C(m+n-2, n-1)) Σ v(a_i)`.
    pub fn det_valuation_from_torus(&self, e: &ConePoint) -> i64 {
        let tv = self.valuations(e);
        -self.det_lambda * tv.vlambda + self.det_a * tv.va.iter().sum::<i64>()
    }

    /// `Σ_{g} min_{f ≤ g} v(λ^{-1} ∏ a_i^{f_i})` by enumeration.
    pub fn theta1_direct(&self, e: &ConePoint) -> i64 {
        let tv = self.valuations(e);
        let vf: Vec<i64> = self
            .fs
            .iter()
            .map(|f| {
                let s: i64 = f.entries().iter().zip(&tv.va).map(|(&k, v)| k as i64 * v).sum();
                s - tv.vlambda
            })
            .collect();
        self.below
            .iter()
            .map(|idx| idx.iter().map(|&j| vf[j]).min().expect("every g dominates some f"))
            .sum()
    }

    /// `(r1 + r2) Σ v(a_i)`.
    pub fn theta2(&self, e: &ConePoint) -> i64 {
        self.rank_sum * self.valuations(e).va.iter().sum::<i64>()
    }
}

/// Determinant valuation; both routes are evaluated and must agree.
pub fn det_valuation(m: usize, e: &ConePoint) -> Result<i64> {
    check(m, e)?;
    let ctx = OracleContext::new(m, e.n())?;
    let a = ctx.det_valuation(e);
    let b = ctx.det_valuation_from_torus(e);
    if a != b {
        return Err(invalid(format!("determinant valuations disagree: {a} vs {b}")));
    }
    Ok(a)
}

pub fn theta1_direct(m: usize, e: &ConePoint) -> Result<i64> {
    check(m, e)?;
    Ok(OracleContext::new(m, e.n())?.theta1_direct(e))
}

/// `C_i(m, n)` as the weighted single sum.
pub fn c_weighted(m: usize, n: usize, i: usize) -> BigRational {
    weighted_binomial_sum(m, n, i)
}

/// `C_i(m, n)` as the nested double sum.
pub fn c_nested(m: usize, n: usize, i: usize) -> BigInt {
    let (m, n, i) = (m as i64, n as i64, i as i64);
    let mut acc = BigInt::zero();
    for j in 1..=i {
        acc += binom(m + j - 2, j - 1) * binom(m + n - j - 1, n - j);
        for k in 1..=j {
            acc += binom(m + k - 2, k - 1) * binom(m + n - k - 1, n - k + 1);
        }
    }
    acc
}

/// `C_i(m, n)` with the inner sum collapsed.
pub fn c_collapsed(m: usize, n: usize, i: usize) -> BigInt {
    let (m, n, i) = (m as i64, n as i64, i as i64);
    let mut acc = BigInt::zero();
    for j in 1..=i {
        acc += binom(m + j - 2, m - 1) * binom(m + n - j - 1, m - 1);
    }
    for k in 1..=i {
        acc += BigInt::from(i - k + 1) * binom(m + k - 2, m - 1) * binom(m + n - k - 1, m - 2);
    }
    acc
}

/// `Σ_{i<n} C_i e_i + C(2m+n-2, n-1) e_n`.
pub fn theta1_closed(m: usize, e: &ConePoint) -> Result<BigInt> {
    check(m, e)?;
    let n = e.n();
    let mut acc = BigInt::zero();
    for i in 1..n {
        let c = c_weighted(m, n, i);
        if !c.is_integer() {
            return Err(invalid(format!("C_{i}({m},{n}) is not an integer")));
        }
        acc += c.to_integer() * e.e[i];
    }
    let (mi, ni) = (m as i64, n as i64);
    acc += binom(2 * mi + ni - 2, ni - 1) * e.e[n];
    Ok(acc)
}

/// `log_q θ_2`, from valuations and from the displayed `e`-coefficients.
pub fn theta2(m: usize, e: &ConePoint) -> Result<BigInt> {
    check(m, e)?;
    let n = e.n();
    let (mi, ni) = (m as i64, n as i64);
    let rank_sum = binom(mi + ni - 2, ni - 1) + binom(mi + ni - 1, ni - 1);
    let tv = torus_valuations(m, e)?;
    let from_torus = &rank_sum * tv.va.iter().sum::<i64>();
    let s = binom(mi + ni - 2, mi - 1) + binom(mi + ni - 1, mi);
    let inner: i64 = (1..n).map(|l| ((mi - 1) * ni + l as i64) * e.e[l]).sum();
    let displayed = s * (inner + ni * (e.e[0] + e.e[n]));
    if from_torus != displayed {
        return Err(invalid("theta2 forms disagree"));
    }
    Ok(from_torus)
}

/// The sum that the `θ_1` simplification shows to vanish.
pub fn r_sum(m: usize, n: usize) -> BigInt {
    let (m, n) = (m as i64, n as i64);
    let mut acc = BigInt::zero();
    for i in 1..=n {
        acc += binom(m + i - 2, i - 1) * binom(m + n - i - 1, n - i);
        for k in 1..=i {
            acc += binom(m + k - 2, k - 1) * binom(m + n - k - 1, n - k + 1);
        }
    }
    acc - BigInt::from(m) * binom(2 * m + n - 2, n - 1)
}

/// Enumerates every cone point for `descent` with determinant valuation
/// at most `k`, calling `visit` on each.
fn enumerate_cone(
    ctx: &OracleContext,
    descent: &[bool],
    k: i64,
    budget: usize,
    visit: &mut dyn FnMut(&ConePoint, i64),
) -> Result<usize> {
    let n = ctx.n;
    let lower: Vec<i64> = (0..=n)
        .map(|i| i64::from(i >= 1 && i < n && descent[i - 1]))
        .collect();
    let mut point = ConePoint { e: lower.clone() };
    let base: i64 = lower.iter().zip(&ctx.det_coeffs).map(|(x, c)| x * c).sum();
    if base > k {
        return Ok(0);
    }
    let mut count = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ctx: &OracleContext,
        lower: &[i64],
        pos: usize,
        used: i64,
        k: i64,
        point: &mut ConePoint,
        count: &mut usize,
        budget: usize,
        visit: &mut dyn FnMut(&ConePoint, i64),
    ) -> Result<()> {
        if pos == point.e.len() {
            *count += 1;
            if *count > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            visit(point, used);
            return Ok(());
        }
        let c = ctx.det_coeffs[pos];
        let mut x = lower[pos];
        let mut u = used;
        while u <= k {
            point.e[pos] = x;
            rec(ctx, lower, pos + 1, u, k, point, count, budget, visit)?;
            x += 1;
            u += c;
        }
        point.e[pos] = lower[pos];
        Ok(())
    }
    // `used` counts the coordinates fixed so far plus the lower bounds of
    // the ones still to come.
    rec(ctx, &lower, 0, base, k, &mut point, &mut count, budget, visit)?;
    Ok(count)
}

/// `θ_1` replacement hook for [`cone_series_with`].
pub type Theta1Fn<'a> = dyn Fn(&OracleContext, &ConePoint) -> i64 + Sync + 'a;

/// Cone-sum series using [`OracleContext::theta1_direct`].
pub fn cone_series(m: usize, n: usize, k: usize) -> Result<TruncatedSeries> {
    cone_series_with(m, n, k, DEFAULT_POINT_BUDGET, &|ctx, e| ctx.theta1_direct(e))
}

pub fn cone_series_with(
    m: usize,
    n: usize,
    k: usize,
    budget: usize,
    theta1: &Theta1Fn<'_>,
) -> Result<TruncatedSeries> {
    if !(2..=6).contains(&n) {
        return Err(invalid(format!("cone enumeration supports 2 <= n <= 6, got {n}")));
    }
    let ctx = OracleContext::new(m, n)?;
    let beta0: Vec<i64> = (0..=n as i64)
        .map(|i| if i == 0 || i == n as i64 { 0 } else { i * (n as i64 - i) })
        .collect();
    let classes: Vec<(Vec<bool>, LaurentPoly)> = descent_classes(n)?.into_iter().collect();
    let kmax = k as i64;
    let partial: Vec<Result<Vec<LaurentPoly>>> = classes
        .par_iter()
        .map(|(descent, lengths)| {
            let mut cone: Vec<BTreeMap<i64, BigInt>> = vec![BTreeMap::new(); k + 1];
            enumerate_cone(&ctx, descent, kmax, budget, &mut |e, det| {
                debug_assert!(e.in_cone(descent));
                let bracket: i64 = beta0.iter().zip(&e.e).map(|(b, x)| b * x).sum();
                let qexp = bracket + theta1(&ctx, e) + ctx.theta2(e);
                *cone[det as usize].entry(qexp).or_default() += 1;
            })?;
            Ok(cone
                .into_iter()
                .map(|row| &LaurentPoly::from_terms(row.into_iter().map(|(a, c)| ((a, 0), c))) * lengths)
                .collect())
        })
        .collect();
    let mut coeffs = vec![LaurentPoly::zero(); k + 1];
    for part in partial {
        for (acc, c) in coeffs.iter_mut().zip(part?) {
            *acc = &*acc + &c;
        }
    }
    Ok(TruncatedSeries { max_t_degree: k, coeffs })
}

/// Cone sum versus expansion of the closed form.
pub fn oracle_compare(m: usize, n: usize, k: usize) -> Result<bool> {
    Ok(cone_series(m, n, k)? == series_expand(&local_zeta(m, n)?, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(e: &[i64]) -> ConePoint {
        ConePoint::new(e.len() - 1, e.to_vec()).unwrap()
    }

    #[test]
    fn torus_examples() {
        assert_eq!(
            torus_valuations(1, &pt(&[0, 1, 0])).unwrap(),
            TorusValuations { va: vec![1, 0], vlambda: 0 }
        );
        assert_eq!(
            torus_valuations(3, &ConePoint::zero(4)).unwrap(),
            TorusValuations { va: vec![0; 4], vlambda: 0 }
        );
        assert_eq!(
            torus_valuations(2, &pt(&[1, 0, 0])).unwrap(),
            TorusValuations { va: vec![1, 1], vlambda: 2 }
        );
        assert!(ConePoint::new(2, vec![0, -1, 0]).is_err());
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_valuation(1, &pt(&[0, 1, 0])).unwrap(), 2);
        assert_eq!(det_valuation(2, &pt(&[0, 0, 1])).unwrap(), 5);
        assert_eq!(det_valuation(3, &ConePoint::zero(3)).unwrap(), 0);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta1_direct(1, &pt(&[0, 1, 0])).unwrap(), 1);
        assert_eq!(theta1_direct(2, &pt(&[0, 1, 0])).unwrap(), 3);
        assert_eq!(theta1_direct(3, &ConePoint::zero(3)).unwrap(), 0);
        assert_eq!(theta1_closed(1, &pt(&[0, 1, 0])).unwrap(), BigInt::from(1));
        assert_eq!(theta2(1, &pt(&[0, 1, 0])).unwrap(), BigInt::from(3));
        for m in 1..=5 {
            for n in 2..=5 {
                let mut e = vec![0; n + 1];
                e[n] = 1;
                let expected = binom((2 * m + n - 2) as i64, (n - 1) as i64);
                assert_eq!(theta1_closed(m, &pt(&e)).unwrap(), expected);
            }
        }
    }

    #[test]
    fn c_forms_agree() {
        for m in 1..=8 {
            for n in 2..=8 {
                for i in 1..n {
                    let w = c_weighted(m, n, i);
                    assert!(w.is_integer());
                    assert_eq!(w.to_integer(), c_nested(m, n, i), "m={m} n={n} i={i}");
                    assert_eq!(c_collapsed(m, n, i), c_nested(m, n, i));
                }
            }
        }
    }

    #[test]
    fn r_vanishes() {
        for m in 1..=30 {
            for n in 1..=30 {
                assert!(r_sum(m, n).is_zero(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn small_cone_series() {
        let s = cone_series(1, 2, 5).unwrap();
        let q = |xs: &[i64]| LaurentPoly::from_terms(xs.iter().map(|&a| ((a, 0), 1)));
        assert_eq!(
            s.coeffs,
            vec![q(&[0]), q(&[]), q(&[4, 5]), q(&[6]), q(&[8, 9, 10]), q(&[10, 11])]
        );
        let s = cone_series(2, 2, 4).unwrap();
        assert_eq!(s.coefficient(4), &q(&[10]));
        for (m, n) in [(1, 3), (3, 2), (2, 4)] {
            let s = cone_series(m, n, 0).unwrap();
            assert_eq!(s.coeffs, vec![LaurentPoly::one()]);
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        assert!(oracle_compare(1, 2, 10).unwrap());
        assert!(oracle_compare(2, 3, 8).unwrap());
    }

    #[test]
    fn oracle_matches_beyond_the_first_poles() {
        for (m, n, k) in [(2, 4, 24), (3, 3, 30), (2, 5, 20), (3, 2, 40), (1, 5, 14)] {
            assert!(oracle_compare(m, n, k).unwrap(), "m={m} n={n} k={k}");
        }
    }

    #[test]
    fn mutated_theta1_is_detected() {
        let (m, n, k) = (1, 2, 10);
        let mutated = cone_series_with(m, n, k, DEFAULT_POINT_BUDGET, &|ctx, e| {
            let only_en = e.e[..n].iter().all(|&x| x == 0) && e.e[n] > 0;
            ctx.theta1_direct(e) + i64::from(only_en)
        })
        .unwrap();
        assert_ne!(mutated, series_expand(&local_zeta(m, n).unwrap(), k).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let r = cone_series_with(1, 3, 12, 10, &|ctx, e| ctx.theta1_direct(e));
        assert_eq!(r, Err(Error::BudgetExceeded { budget: 10 }));
    }

    fn arb_point(n: usize) -> impl Strategy<Value = ConePoint> {
        proptest::collection::vec(0i64..3, n + 1).prop_map(|e| ConePoint { e })
    }

    proptest! {
        #[test]
        fn theta1_direct_equals_closed(
            (m, p) in (1usize..=4, 2usize..=4).prop_flat_map(|(m, n)| (Just(m), arb_point(n)))
        ) {
            prop_assume!(p.e.iter().sum::<i64>() <= 6);
            prop_assert_eq!(BigInt::from(theta1_direct(m, &p).unwrap()), theta1_closed(m, &p).unwrap());
        }

        #[test]
        fn valuations_are_ordered(m in 1usize..=6, p in arb_point(5)) {
            prop_assert!(torus_valuations(m, &p).unwrap().is_ordered());
            prop_assert!(det_valuation(m, &p).is_ok());
            prop_assert!(theta2(m, &p).is_ok());
        }
    }
}
