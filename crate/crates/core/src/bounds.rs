//! Exact and log-domain evaluation of the doubly exponential sequences and
//! the closed-form upper bounds on hat guessing numbers.
//!
//! Values stay exact (arbitrary-precision rationals) until they would exceed
//! [`DIGIT_GUARD`] decimal digits. Past that they are carried as enclosing
//! intervals for `log2(value)` or `log2(log2(value))`. Interval endpoints are
//! `f64` widened outward by a few ulps after every operation, so every
//! comparison that reports an ordering is sound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::BoundsError;

/// Largest exact value kept, in decimal digits.
pub const DIGIT_GUARD: u64 = 1_000_000;

/// Bits corresponding to [`DIGIT_GUARD`] decimal digits (rounded down).
const BIT_GUARD: u64 = DIGIT_GUARD * 3321 / 1000;

/// Largest index accepted by the sequence functions.
pub const MAX_INDEX: u32 = 64;

/// Closed real interval `[lo, hi]` in `f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

const WIDEN_ULPS: usize = 4;

fn down(mut x: f64) -> f64 {
    for _ in 0..WIDEN_ULPS {
        x = x.next_down();
    }
    x
}

fn up(mut x: f64) -> f64 {
    for _ in 0..WIDEN_ULPS {
        x = x.next_up();
    }
    x
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    /// An interval around the correctly rounded `f64` nearest `x`.
    fn around(x: f64) -> Self {
        Interval { lo: down(x), hi: up(x) }
    }

    pub fn mid(&self) -> f64 {
        self.lo / 2.0 + self.hi / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn add(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }

    /// Product with a non-negative interval.
    fn mul_nonneg(self, o: Interval) -> Interval {
        debug_assert!(o.lo >= 0.0);
        let cands = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = cands.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = cands.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: down(lo), hi: up(hi) }
    }

    /// `log2` of a positive interval.
    fn log2(self) -> Option<Interval> {
        (self.lo > 0.0).then(|| Interval { lo: down(self.lo.log2()), hi: up(self.hi.log2()) })
    }

    /// `2^x`, when finite.
    fn exp2(self) -> Option<Interval> {
        let hi = up(self.hi.exp2());
        hi.is_finite().then(|| Interval { lo: down(self.lo.exp2()).max(0.0), hi })
    }

    fn cmp(&self, o: &Interval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo, self.hi)
    }
}

/// Enclosure of `log2(n)` for a positive integer.
pub fn log2_biguint(n: &BigUint) -> Interval {
    assert!(!n.is_zero(), "log2 of zero");
    let bits = n.bits();
    if bits <= 53 {
        return Interval::around((n.to_u64().expect("fits") as f64).log2());
    }
    let shift = bits - 53;
    let top = (n >> shift).to_u64().expect("53 bits") as f64;
    let lo = down(top.log2()) + shift as f64;
    let hi = up((top + 1.0).log2()) + shift as f64;
    Interval { lo: down(lo), hi: up(hi) }
}

/// Enclosure of `log2(r)` for a positive rational.
pub fn log2_rational(r: &BigRational) -> Interval {
    assert!(r > &BigRational::zero(), "log2 of a non-positive value");
    let n = log2_biguint(r.numer().magnitude());
    let d = log2_biguint(r.denom().magnitude());
    Interval { lo: down(n.lo - d.hi), hi: up(n.hi - d.lo) }
}

/// A non-negative quantity: exact, or as an enclosure of its logarithm or
/// iterated logarithm.
#[derive(Clone, Debug, PartialEq)]
pub enum BigBound {
    Exact(BigRational),
    /// `value ∈ [2^lo, 2^hi]`.
    Log2(Interval),
    /// `value ∈ [2^2^lo, 2^2^hi]`.
    LogLog2(Interval),
}

impl BigBound {
    pub fn integer(n: BigUint) -> BigBound {
        BigBound::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            BigBound::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// The exact value when it is an integer.
    pub fn as_integer(&self) -> Option<BigUint> {
        self.as_exact().filter(|r| r.is_integer()).and_then(|r| r.numer().to_biguint())
    }

    /// Enclosure of `log2(value)`, if it fits an `f64` and the value is
    /// positive.
    pub fn log2(&self) -> Option<Interval> {
        match self {
            BigBound::Exact(r) => (r > &BigRational::zero()).then(|| log2_rational(r)),
            BigBound::Log2(i) => Some(*i),
            BigBound::LogLog2(i) => i.exp2(),
        }
    }

    /// Enclosure of `log2(log2(value))`, if the value exceeds 1.
    pub fn loglog2(&self) -> Option<Interval> {
        match self {
            BigBound::LogLog2(i) => Some(*i),
            other => other.log2()?.log2(),
        }
    }

    /// Sound ordering: `None` when the enclosures overlap.
    pub fn compare(&self, other: &BigBound) -> Option<Ordering> {
        if let (BigBound::Exact(a), BigBound::Exact(b)) = (self, other) {
            return Some(a.cmp(b));
        }
        let zero = |b: &BigBound| b.as_exact().is_some_and(Zero::is_zero);
        match (zero(self), zero(other)) {
            (true, true) => return Some(Ordering::Equal),
            (true, false) => return Some(Ordering::Less),
            (false, true) => return Some(Ordering::Greater),
            _ => {}
        }
        if let (Some(a), Some(b)) = (self.log2(), other.log2()) {
            if let Some(o) = a.cmp(&b) {
                return Some(o);
            }
        }
        match (self.loglog2(), other.loglog2()) {
            (Some(a), Some(b)) => a.cmp(&b),
            // One side too small for an iterated log: compare its log
            // against the other's lower end.
            (None, Some(b)) => match self.log2() {
                Some(a) if a.hi < down(b.lo.exp2()) => Some(Ordering::Less),
                _ => None,
            },
            (Some(a), None) => match other.log2() {
                Some(b) if b.hi < down(a.lo.exp2()) => Some(Ordering::Greater),
                _ => None,
            },
            _ => None,
        }
    }

    /// `self ≤ other`, proven.
    pub fn certainly_le(&self, other: &BigBound) -> bool {
        matches!(self.compare(other), Some(Ordering::Less | Ordering::Equal))
    }

    /// Approximate value as `f64` (infinite when out of range).
    pub fn approx(&self) -> f64 {
        match self {
            BigBound::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            other => other.log2().map_or(f64::INFINITY, |i| i.mid().exp2()),
        }
    }

    /// Decimal for exact values (with an approximation for non-integers),
    /// `2^x` and `2^2^x` for the log forms.
    pub fn render(&self) -> String {
        match self {
            BigBound::Exact(r) if r.is_integer() => r.numer().to_string(),
            BigBound::Exact(r) => format!("{}/{} ≈ {}", r.numer(), r.denom(), render_decimal(r, 10)),
            BigBound::Log2(i) => format!("2^{:.10}", i.mid()),
            BigBound::LogLog2(i) => format!("2^2^{:.10}", i.mid()),
        }
    }
}

impl fmt::Display for BigBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Decimal expansion of a non-negative rational, truncated to `places`.
pub fn render_decimal(r: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = (r * BigRational::from_integer(scale.clone())).floor().to_integer();
    let int = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    format!("{int}.{}{frac}", "0".repeat(places - frac.len()))
}

/// `u_{n+1} = 1 + m · ∏_{i ≤ n} u_i`, `u_0 = 1`: exact while small, then a
/// `log2` enclosure. For `n ≥ 1` both sequences satisfy
/// `u_{n+1} = u_n² − u_n + 1`, so `log2 u_n` at most doubles (plus a
/// vanishing term) per step.
fn product_sequence(multiplier: u32, n: u32) -> Result<BigBound, BoundsError> {
    if n > MAX_INDEX {
        return Err(BoundsError::Domain(format!("index {n} exceeds {MAX_INDEX}")));
    }
    let mut value = BigUint::one();
    let mut product = BigUint::one();
    for i in 0..n {
        let next = BigUint::one() + &product * multiplier;
        if next.bits() > BIT_GUARD {
            return Ok(BigBound::Log2(doubling_tail(&value, n - i)));
        }
        product *= &next;
        value = next;
    }
    Ok(BigBound::integer(value))
}

/// Enclosure of `log2 u_{k+steps}` from `u_k` (at least 2) under
/// `u_{j+1} = u_j² − u_j + 1`. Writing `x_j = u_j − 1/2` gives
/// `x_{j+1} = x_j² + 1/4`, so `log2 x` doubles up to a relative error
/// far below one ulp once `x` is large.
fn doubling_tail(u: &BigUint, steps: u32) -> Interval {
    let x_lo = log2_biguint(&(u - 1u32));
    let x_hi = log2_biguint(u);
    let scale = (steps as f64).exp2();
    // log2 x_{k+steps} ≥ 2^steps log2 x_k, and log2 u ≥ log2 x.
    let lo = down(x_lo.lo * scale);
    // The upper side adds the fourth-power corrections, each below 2^-1000
    // for the guard-sized values this is used on; one extra widening covers them.
    let hi = up(up(x_hi.hi * scale));
    Interval { lo, hi }
}

/// Sylvester's sequence `1, 2, 3, 7, 43, 1807, ...`.
pub fn sylvester(n: u32) -> Result<BigBound, BoundsError> {
    product_sequence(1, n)
}

/// `a_{n+1} = 1 + 2 ∏_{i ≤ n} a_i`, `a_0 = 1`: `1, 3, 7, 43, 1807, ...`,
/// the colour budget that defeats two guesses on a closure of height `n − 1`.
pub fn two_guess_seq(n: u32) -> Result<BigBound, BoundsError> {
    product_sequence(2, n)
}

/// Exact `two_guess_seq(n)`, or `None` past the digit guard.
pub fn two_guess_exact(n: u32) -> Option<BigUint> {
    two_guess_seq(n).ok()?.as_integer()
}

/// Dyadic `m · 2^e`.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigUint,
    e: i64,
}

impl Dyadic {
    /// Keeps the top `bits` bits of the mantissa, rounding down or up.
    fn round(mut self, bits: u64, round_up: bool) -> Dyadic {
        let len = self.m.bits();
        if len > bits {
            let drop = len - bits;
            let kept = &self.m >> drop;
            let exact = (&kept << drop) == self.m;
            self.m = if round_up && !exact { kept + 1u32 } else { kept };
            self.e += drop as i64;
        }
        self
    }

    /// Square root rounded in the requested direction, to `bits` bits.
    fn sqrt(mut self, bits: u64, round_up: bool) -> Dyadic {
        let want = 2 * bits + 2;
        if self.m.bits() < want {
            let pad = want - self.m.bits();
            self.m <<= pad;
            self.e -= pad as i64;
        }
        if self.e.rem_euclid(2) == 1 {
            self.m <<= 1;
            self.e -= 1;
        }
        let mut r = self.m.sqrt();
        if round_up && &r * &r != self.m {
            r += 1u32;
        }
        Dyadic { m: r, e: self.e / 2 }.round(bits, round_up)
    }

    fn to_rational(&self) -> BigRational {
        let m = BigRational::from_integer(BigInt::from(self.m.clone()));
        let p = BigRational::from_integer(BigInt::from(BigUint::one() << self.e.unsigned_abs()));
        if self.e >= 0 {
            m * p
        } else {
            m / p
        }
    }
}

/// Directed enclosure of `(a − 1/2)^(1 / 2^(n−1))`, with `bits` bits of
/// working precision.
fn root_chain(a: &BigUint, n: u32, bits: u64) -> (BigRational, BigRational) {
    let x = Dyadic { m: a * 2u32 - 1u32, e: -1 };
    let mut lo = x.clone().round(bits, false);
    let mut hi = x.round(bits, true);
    for _ in 1..n {
        lo = lo.sqrt(bits, false);
        hi = hi.sqrt(bits, true);
    }
    (lo.to_rational(), hi.to_rational())
}

/// Rational enclosure of a real constant.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64(&self) -> Interval {
        Interval { lo: down(self.lo.to_f64().unwrap_or(0.0)), hi: up(self.hi.to_f64().unwrap_or(f64::INFINITY)) }
    }

    pub fn render(&self, places: usize) -> String {
        format!("[{}, {}]", render_decimal(&self.lo, places), render_decimal(&self.hi, places))
    }
}

/// `b_n = (a_n − 1/2)^(1/2^(n−1))` as a directed rational enclosure.
pub fn growth_root(n: u32, bits: u64) -> Result<RationalInterval, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Domain("growth root is defined for n ≥ 1".into()));
    }
    let a = two_guess_exact(n).ok_or(BoundsError::Overflow)?;
    let (lo, hi) = root_chain(&a, n, bits);
    Ok(RationalInterval { lo, hi })
}

/// Enclosure of `θ = sup_{n ≥ 1} (a_n − 1/2)^(1/2^(n−1))`, the base with
/// `a_n ≤ θ^(2^(n−1)) + 1/2`.
///
/// `b_n` increases to `θ`. With `x_n = a_n − 1/2`, `x_{n+1} = x_n²(1 + 1/(4x_n²))`
/// gives `log θ − log b_N ≤ Σ_{n ≥ N} 1/(2^(n+1) x_n²) ≤ 1/(2^N x_N²) / 2`, so
/// `θ ≤ b_N (1 + 1/(2^N x_N²))`. `N` is the first index where that factor is
/// below `2^-precision_bits`; the width is then below `2^-(precision_bits − 2)`.
pub fn theta_estimate(precision_bits: u32) -> Result<RationalInterval, BoundsError> {
    if !(1..=256).contains(&precision_bits) {
        return Err(BoundsError::Domain(format!("precision {precision_bits} outside 1..=256")));
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << precision_bits);
    let mut n = 1;
    let (a, tail) = loop {
        let a = two_guess_exact(n).ok_or(BoundsError::Overflow)?;
        let x = BigRational::new(BigInt::from(&a * 2u32 - 1u32), BigInt::from(2));
        let tail = (&x * &x * BigRational::from_integer(BigInt::one() << n)).recip();
        if tail < target {
            break (a, tail);
        }
        n += 1;
    };
    // Rounding error of the chain must stay below the tail allowance.
    let bits = 2 * precision_bits as u64 + 64;
    let (lo, hi) = root_chain(&a, n, bits);
    Ok(RationalInterval { lo, hi: hi * (BigRational::one() + tail) })
}

/// Proves `a_n ≤ θ_hi^(2^(n−1)) + 1/2` by showing an upper enclosure of
/// `b_n` is at most `θ_hi`.
pub fn two_guess_within_theta(n: u32, theta_hi: &BigRational) -> Result<bool, BoundsError> {
    let b = growth_root(n, 2 * 256 + 64)?;
    Ok(&b.hi <= theta_hi)
}

/// `⌊c²/2⌋`: the depth bound for two-connected graphs of circumference `c`.
pub fn circumference_depth(c: u64) -> u64 {
    c * c / 2
}

/// `(64/25)^(2^(⌊c²/2⌋ − 1)) + 1/2`.
pub fn circ_bound(c: u64) -> Result<BigBound, BoundsError> {
    if !(3..=1 << 16).contains(&c) {
        return Err(BoundsError::Domain(format!("circumference {c} outside 3..=65536")));
    }
    let d = circumference_depth(c);
    let exponent_log2 = d - 1;
    let base = BigRational::new(BigInt::from(64), BigInt::from(25));
    let base_log2 = log2_rational(&base);
    // Exact while 2^(d−1) · log2(64) stays within the bit guard.
    if exponent_log2 < 32 && (6u64 << exponent_log2) <= BIT_GUARD {
        let power = 1u32 << exponent_log2;
        let num = BigInt::from(64u32).pow(power);
        let den = BigInt::from(25u32).pow(power);
        // 2·64^E + 25^E is odd and prime to 5, so the fraction is reduced.
        let value = BigRational::new_raw(num * 2 + &den, den * 2);
        return Ok(BigBound::Exact(value));
    }
    // log2 of (64/25)^(2^(d−1)); the +1/2 lies far below the interval width.
    let e = Interval::new(exponent_log2 as f64, exponent_log2 as f64);
    let loglog = e.add(base_log2.log2().expect("log2(2.56) > 0"));
    Ok(match loglog.exp2() {
        Some(log) if log.hi < 1e300 => BigBound::Log2(Interval { lo: log.lo, hi: up(log.hi) }),
        _ => BigBound::LogLog2(Interval { lo: loglog.lo, hi: up(loglog.hi) }),
    })
}

/// Rational bounds on `e` (20 decimals).
fn e_bounds() -> (BigRational, BigRational) {
    let den = BigInt::from(10u32).pow(20);
    (
        BigRational::new("271828182845904523536".parse().expect("literal"), den.clone()),
        BigRational::new("271828182845904523537".parse().expect("literal"), den),
    )
}

/// `e · t`, the local-lemma bound for maximum degree below `t`.
pub fn lll_degree_bound(t: u64) -> f64 {
    std::f64::consts::E * t as f64
}

/// `⌈e · t⌉` exactly.
pub fn lll_degree_bound_ceil(t: u64) -> Result<BigUint, BoundsError> {
    let (lo, hi) = e_bounds();
    let t = BigRational::from_integer(BigInt::from(t));
    let (a, b) = ((lo * &t).ceil(), (hi * &t).ceil());
    if a != b {
        return Err(BoundsError::Domain("t too large for the stored digits of e".into()));
    }
    a.to_integer().to_biguint().ok_or(BoundsError::Overflow)
}

fn check_h_t(h: u32, t: u64) -> Result<(), BoundsError> {
    if h == 0 || t < 2 {
        return Err(BoundsError::Domain(format!("need h ≥ 1 and t ≥ 2, got h={h}, t={t}")));
    }
    Ok(())
}

/// `k = 2t^h`, if it fits.
pub fn tree_degree_threshold(h: u32, t: u64) -> Option<u64> {
    t.checked_pow(h)?.checked_mul(2)
}

/// `N(h, t)`: `N(1, t) = ⌈e t⌉`, `N(h, t) = f^k(N(h − 1, t))` with
/// `f(x) = x^k` and `k = 2t^h`, so `log2 N(h) = k^k · log2 N(h − 1)`.
pub fn n_h_t_recursive(h: u32, t: u64) -> Result<BigBound, BoundsError> {
    check_h_t(h, t)?;
    let mut value = BigBound::integer(lll_degree_bound_ceil(t)?);
    for level in 2..=h {
        let k = tree_degree_threshold(level, t).ok_or(BoundsError::Overflow)?;
        value = power_tower_step(value, k)?;
    }
    Ok(value)
}

/// `x ↦ x^(k^k)` on a bound, exact while within the digit guard.
fn power_tower_step(x: BigBound, k: u64) -> Result<BigBound, BoundsError> {
    let kf = Interval::around(k as f64);
    // log2(k^k) = k log2 k.
    let log_kk = kf.mul_nonneg(kf.log2().ok_or(BoundsError::Overflow)?);
    if let Some(n) = x.as_integer() {
        let exact_bits = k.checked_pow(u32::try_from(k).map_err(|_| BoundsError::Overflow)?)
            .and_then(|kk| kk.checked_mul(n.bits()));
        if exact_bits.is_some_and(|b| b <= BIT_GUARD) {
            let kk = k.pow(k as u32);
            return Ok(BigBound::integer(n.pow(u32::try_from(kk).map_err(|_| BoundsError::Overflow)?)));
        }
    }
    let log = x.log2();
    match log.and_then(|l| log_kk.exp2().map(|kk| l.mul_nonneg(kk))) {
        Some(l) if l.lo > 0.0 && l.hi < 1e300 => Ok(BigBound::Log2(l)),
        _ => {
            let ll = x.loglog2().ok_or(BoundsError::Overflow)?;
            let r = ll.add(log_kk);
            if r.hi.is_finite() {
                Ok(BigBound::LogLog2(r))
            } else {
                Err(BoundsError::Overflow)
            }
        }
    }
}

/// `(et)^(2^(4t^h) · t^(4h t^h))`, as `log2 log2 = 4t^h + 4h t^h log2 t + log2 log2(et)`.
pub fn n_h_t_closed(h: u32, t: u64) -> Result<BigBound, BoundsError> {
    check_h_t(h, t)?;
    let th = Interval::around((t as f64).powi(h as i32));
    if !th.hi.is_finite() {
        return Err(BoundsError::Overflow);
    }
    let four_th = th.mul_nonneg(Interval::new(4.0, 4.0));
    let log_t = Interval::around(t as f64).log2().ok_or(BoundsError::Overflow)?;
    let second = four_th.mul_nonneg(Interval::new(h as f64, h as f64)).mul_nonneg(log_t);
    let (e_lo, e_hi) = e_bounds();
    let et = Interval {
        lo: down(e_lo.to_f64().expect("e") * t as f64),
        hi: up(e_hi.to_f64().expect("e") * t as f64),
    };
    let loglog_et = et.log2().and_then(Interval::log2).ok_or(BoundsError::Overflow)?;
    let ll = four_th.add(second).add(loglog_et);
    if !ll.hi.is_finite() {
        return Err(BoundsError::Overflow);
    }
    Ok(match ll.exp2() {
        Some(l) if l.hi < 1e300 => BigBound::Log2(l),
        _ => BigBound::LogLog2(ll),
    })
}
