//! Abscissae of convergence and the polynomial inequalities deciding which
//! denominator factor carries the rightmost pole.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinat::{binom, factorial, rising_product};
use crate::error::invalid;
use crate::zeta::{local_zeta, zeta_parameters, ZetaParameters};
use crate::Result;

/// Which candidate pole gives the abscissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `m = 1`: `(A_1 + 1) / B_1`.
    M1,
    /// `(Ã_0 + 1) / B̃_0`.
    C0,
    /// `(Ã_n + 1) / B̃_n`.
    CN,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::M1 => "M1",
            Regime::C0 => "C0",
            Regime::CN => "CN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbscissaReport {
    pub m: usize,
    pub n: usize,
    pub alpha: BigRational,
    pub regime: Regime,
    pub beta: BigRational,
    /// Membership decided by comparing the two candidate poles.
    pub in_exceptional_set: bool,
    /// Whether the explicit description of the exceptional set agrees.
    pub explicit_set_agrees: bool,
}

fn ratio(num: &BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num.clone(), den.clone())
}

fn pole(a: &BigInt, b: &BigInt) -> BigRational {
    ratio(&(a + 1), b)
}

/// The explicit exceptional set:
/// `{2,3} × N≥3 ∪ {4} × {4..38} ∪ {5} × {5..9}`.
pub fn in_c_explicit(m: usize, n: usize) -> bool {
    match m {
        2 | 3 => n >= 3,
        4 => (4..=38).contains(&n),
        5 => (5..=9).contains(&n),
        _ => false,
    }
}

/// `(Ã_0 + 1)/B̃_0 > (Ã_n + 1)/B̃_n`, for `m ≥ 2`.
pub fn in_c_direct(p: &ZetaParameters) -> bool {
    p.m >= 2 && pole(&p.atilde0, &p.btilde0) > pole(&p.atilden, &p.btilden)
}

fn alpha_from(p: &ZetaParameters) -> (BigRational, Regime) {
    if p.m == 1 {
        (pole(&p.a[1], &p.b[1]), Regime::M1)
    } else if in_c_direct(p) {
        (pole(&p.atilde0, &p.btilde0), Regime::C0)
    } else {
        (pole(&p.atilden, &p.btilden), Regime::CN)
    }
}

fn beta_from(p: &ZetaParameters) -> BigRational {
    (1..p.n)
        .map(|i| ratio(&p.a[i], &p.b[i]))
        .max()
        .expect("n >= 2")
}

pub fn abscissa(m: usize, n: usize) -> Result<AbscissaReport> {
    let p = zeta_parameters(m, n)?;
    let (alpha, regime) = alpha_from(&p);
    let direct = in_c_direct(&p);
    Ok(AbscissaReport {
        m,
        n,
        alpha,
        regime,
        beta: beta_from(&p),
        in_exceptional_set: direct,
        explicit_set_agrees: m == 1 || direct == in_c_explicit(m, n),
    })
}

/// `max_{1 ≤ i < n} A_i / B_i`.
pub fn beta(m: usize, n: usize) -> Result<BigRational> {
    Ok(beta_from(&zeta_parameters(m, n)?))
}

/// The pieces of the convexity argument for `(A_i + 1)/B_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityReport {
    /// `x_i = A_i - A_{i-1}` for `1 ≤ i ≤ n`.
    pub x: Vec<BigInt>,
    /// Every `y_i = B_i - B_{i-1}` equals `1 + C(m+n-2, m-1)`.
    pub y_constant: bool,
    pub x1_positive: bool,
    /// `d_i = x_i - x_{i-1}` for `2 ≤ i ≤ n`.
    pub d: Vec<BigInt>,
    /// `max_{0<i<n} (A_i+1)/B_i < max((Ã_0+1)/B̃_0, (Ã_n+1)/B̃_n)`.
    pub max_inequality: bool,
}

impl ConvexityReport {
    pub fn holds(&self) -> bool {
        self.y_constant && self.x1_positive && self.d.iter().all(Signed::is_positive) && self.max_inequality
    }
}

pub fn convexity_report(m: usize, n: usize) -> Result<ConvexityReport> {
    if m < 2 {
        return Err(invalid("convexity check needs m >= 2"));
    }
    let p = zeta_parameters(m, n)?;
    let y = BigInt::one() + binom((m + n - 2) as i64, (m - 1) as i64);
    let x: Vec<BigInt> = (1..=n).map(|i| &p.a[i] - &p.a[i - 1]).collect();
    let d = x.windows(2).map(|w| &w[1] - &w[0]).collect();
    let inner = (1..n).map(|i| pole(&p.a[i], &p.b[i])).max().expect("n >= 2");
    let outer = pole(&p.atilde0, &p.btilde0).max(pole(&p.atilden, &p.btilden));
    Ok(ConvexityReport {
        y_constant: (1..=n).all(|i| &p.b[i] - &p.b[i - 1] == y),
        x1_positive: x[0].is_positive(),
        x,
        d,
        max_inequality: inner < outer,
    })
}

/// `y_i` constant, `x_1 > 0`, every `d_i > 0`, and the maximum inequality.
pub fn convexity_check(m: usize, n: usize) -> Result<bool> {
    Ok(convexity_report(m, n)?.holds())
}

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t + c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[c, 1])
    }

    /// `∏_{i=lo}^{hi} (t + i)`, empty product `1`.
    pub fn shifted_product(lo: i64, hi: i64) -> Self {
        (lo..=hi).fold(Self::constant(BigInt::one()), |acc, i| acc.mul(&Self::linear(i)))
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coefficient(k) + other.coefficient(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let body = if var.is_empty() || !mag.is_one() {
                format!("{mag}{var}")
            } else {
                var
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn check_m2(m: usize) -> Result<i64> {
    if m < 2 {
        return Err(invalid("need m >= 2"));
    }
    Ok(m as i64)
}

pub fn f_m_polynomial(m: usize) -> Result<IntPolynomial> {
    let mi = check_m2(m)?;
    let t = IntPolynomial::from_i64(&[0, 1]);
    let upper = IntPolynomial::shifted_product(mi - 1, 2 * mi - 2);
    let low = IntPolynomial::shifted_product(1, mi - 2);
    let first = t
        .scale(&BigInt::from(mi))
        .mul(&upper)
        .mul(&low.add(&IntPolynomial::constant(factorial(m as u64 - 1))));
    let inner = IntPolynomial::from_i64(&[0, 0, 1])
        .mul(&IntPolynomial::linear(2 * mi - 1))
        .mul(&low)
        .add(&IntPolynomial::constant(factorial(m as u64)));
    let second = IntPolynomial::linear(-1)
        .scale(&rising_product(mi + 1, 2 * mi - 1))
        .mul(&inner);
    Ok(first.sub(&second))
}

/// `m! t ∏_{i=m-1}^{2m-2} (t+i) - (2m-1)! (t-1)`.
pub fn g_m_polynomial(m: usize) -> Result<IntPolynomial> {
    let mi = check_m2(m)?;
    let upper = IntPolynomial::shifted_product(mi - 1, 2 * mi - 2);
    let lhs = IntPolynomial::from_i64(&[0, 1]).mul(&upper).scale(&factorial(m as u64));
    let rhs = IntPolynomial::linear(-1).scale(&factorial(2 * m as u64 - 1));
    Ok(lhs.sub(&rhs))
}

/// `m ∏_{i=m-1}^{2m-2} (t+i) - ((2m-1)!/m!) (t-1) t (t+2m-1)`.
pub fn h_m_polynomial(m: usize) -> Result<IntPolynomial> {
    let mi = check_m2(m)?;
    let upper = IntPolynomial::shifted_product(mi - 1, 2 * mi - 2).scale(&BigInt::from(mi));
    let cubic = IntPolynomial::linear(-1)
        .mul(&IntPolynomial::from_i64(&[0, 1]))
        .mul(&IntPolynomial::linear(2 * mi - 1))
        .scale(&rising_product(mi + 1, 2 * mi - 1));
    Ok(upper.sub(&cubic))
}

/// `f_m = g_m + ∏_{i=0}^{m-2}(t+i) · h_m`; for `m ≥ 7` also the
/// non-negativity of `f_m` and the linear coefficient of `g_m`.
pub fn gm_hm_check(m: usize) -> Result<bool> {
    let mi = check_m2(m)?;
    let f = f_m_polynomial(m)?;
    let g = g_m_polynomial(m)?;
    let h = h_m_polynomial(m)?;
    let identity = f == g.add(&IntPolynomial::shifted_product(0, mi - 2).mul(&h));
    if m < 7 {
        return Ok(identity);
    }
    let linear = BigInt::from(mi * mi - 3 * mi + 1) * factorial(2 * m as u64 - 2);
    Ok(identity && f.has_nonnegative_coefficients() && g.coefficient(1) == linear)
}

/// The rational function whose sign decides exceptional-set membership.
pub fn f_rational(m: usize, n: usize) -> Result<BigRational> {
    let (mi, ni) = (check_m2(m)?, n as i64);
    if n < 2 {
        return Err(invalid("need n >= 2"));
    }
    let c = BigRational::from_integer(binom(mi + ni - 2, mi - 1));
    let first = ratio(&binom(2 * mi + ni - 2, 2 * mi - 1), &binom(mi + ni - 2, mi));
    let inner = BigRational::new(BigInt::from(ni * (ni - 1)), BigInt::from(mi))
        + BigRational::from_integer(BigInt::from(2 * ni));
    let num = &c * inner + BigRational::one();
    let den = c + BigRational::from_integer(BigInt::from(ni));
    Ok(first - num / den)
}

/// For `2 ≤ n ≤ n_max`: `f_m(n) ≥ 0` iff `(m,n)` lies outside the directly
/// computed exceptional set, and `F(m,n)` has the sign of `f_m(n)`.
pub fn fm_consistency(m: usize, n_max: usize) -> Result<bool> {
    let f = f_m_polynomial(m)?;
    for n in 2..=n_max {
        let value = f.eval(&BigInt::from(n));
        let p = zeta_parameters(m, n)?;
        let outside = !in_c_direct(&p);
        let fr = f_rational(m, n)?;
        if (!value.is_negative()) != outside || value.signum() != fr.numer().signum() * fr.denom().signum() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `n` values in `2..=n_max` where `f_m(n) < 0`.
pub fn fm_negative_set(m: usize, n_max: usize) -> Result<Vec<usize>> {
    let f = f_m_polynomial(m)?;
    Ok((2..=n_max)
        .filter(|&n| f.eval(&BigInt::from(n)).is_negative())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub n: usize,
    pub limit: BigInt,
    pub m_max: usize,
    pub error_at_m_max: BigRational,
    /// The errors at `m = 8, 16, 32, ...` and at `m_max` strictly decrease.
    pub eventually_monotone: bool,
}

pub fn limit_check(n: usize, m_max: usize) -> Result<LimitReport> {
    if n < 2 || m_max < 10 {
        return Err(invalid("limit check needs n >= 2 and m_max >= 10"));
    }
    let limit = BigInt::from(2 * n) + num_traits::pow(BigInt::from(2), n - 1);
    let target = BigRational::from_integer(limit.clone());
    let error = |m: usize| -> Result<BigRational> {
        Ok((abscissa(m, n)?.alpha - &target).abs())
    };
    let mut samples: Vec<usize> = std::iter::successors(Some(8usize), |&m| Some(m * 2))
        .take_while(|&m| m < m_max)
        .collect();
    samples.push(m_max);
    let errors = samples.iter().map(|&m| error(m)).collect::<Result<Vec<_>>>()?;
    Ok(LimitReport {
        n,
        limit,
        m_max,
        error_at_m_max: errors.last().cloned().expect("m_max sampled"),
        eventually_monotone: errors.windows(2).all(|w| w[1] < w[0]),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub m: usize,
    pub n: usize,
    pub alpha: BigRational,
    pub regime: Regime,
}

impl ScanRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.m,
            self.n,
            self.alpha.numer(),
            self.alpha.denom(),
            decimal(&self.alpha, 12),
            self.regime
        )
    }
}

pub const CSV_HEADER: &str = "m,n,alpha_num,alpha_den,alpha_decimal,regime";

/// All `α(m,n)` with `2 ≤ m ≤ m_max`, `2 ≤ n ≤ n_max` inside `[lo, hi]`,
/// ordered by `m` then `n`.
pub fn scan_abscissae(
    m_max: usize,
    n_max: usize,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<Vec<ScanRow>> {
    if m_max < 2 || n_max < 2 {
        return Err(invalid("scan bounds must be at least 2"));
    }
    let grid: Vec<(usize, usize)> = (2..=m_max)
        .flat_map(|m| (2..=n_max).map(move |n| (m, n)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(m, n)| {
            let p = zeta_parameters(m, n)?;
            let (alpha, regime) = alpha_from(&p);
            Ok((alpha >= *lo && alpha <= *hi).then_some(ScanRow { m, n, alpha, regime }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Exact decimal rendering with `digits` significant digits, trailing zeros
/// trimmed.
pub fn decimal(x: &BigRational, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    // 10^e <= ax < 10^(e+1)
    let mut e: i32 = 0;
    let mut scaled = ax.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let shift = digits as i32 - 1 - e;
    let factor = num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize);
    let mut units = if shift >= 0 {
        (&ax * BigRational::from_integer(factor)).round().to_integer()
    } else {
        (&ax / BigRational::from_integer(factor)).round().to_integer()
    };
    let mut shift = shift;
    if units.to_string().len() > digits as usize {
        units /= 10;
        shift -= 1;
    }
    let s = units.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat(shift.unsigned_abs() as usize))
    } else {
        let shift = shift as usize;
        let padded = if s.len() <= shift {
            format!("{}{s}", "0".repeat(shift - s.len() + 1))
        } else {
            s
        };
        let (int, frac) = padded.split_at(padded.len() - shift);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Number of denominator factors `(1 - q^a t^b)` of the closed form with
/// `(a + 1)/b = α`.
pub fn pole_witness(m: usize, n: usize) -> Result<usize> {
    let alpha = abscissa(m, n)?.alpha;
    let z = local_zeta(m, n)?;
    Ok(z.factors()
        .iter()
        .filter(|f| f.b > 0 && BigRational::new(BigInt::from(f.a + 1), BigInt::from(f.b)) == alpha)
        .count())
}

/// Float view for logging and tests.
pub fn approx(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
