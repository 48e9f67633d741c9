//! Exact integer arithmetic: primality, factorization, divisor sums, gcd.
//!
//! Everything here is deterministic and overflow-checked. The working domain
//! is `[1, 2^63 - 1]`; derived quantities such as `2n` or products of
//! deficiencies are computed in 128-bit intermediates, and an overflowing
//! result is an [`Error::Overflow`], never a silent wraparound.
//!
//! Factorization runs trial division over a cached table of primes below
//! 10^6, then falls back to Brent-cycle Pollard rho with a Miller-Rabin
//! witness set that is deterministic for every 64-bit input. Single-number
//! queries stay sub-millisecond across the whole domain.

use crate::error::Error;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// Largest value in the supported domain.
pub const NATURAL_MAX: u64 = (1 << 63) - 1;

/// Trial division covers primes below this bound before Pollard rho kicks in.
const TRIAL_LIMIT: u64 = 1_000_000;

/// A positive integer in `[1, 2^63 - 1]`.
///
/// Zero is rejected at construction; the cap leaves room to form `2n`
/// and signed deficiencies without leaving 128-bit intermediates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Natural(u64);

impl Natural {
    pub const MIN: Natural = Natural(1);
    pub const MAX: Natural = Natural(NATURAL_MAX);

    pub fn new(value: u64) -> Result<Self, Error> {
        if value == 0 || value > NATURAL_MAX {
            return Err(Error::Domain(value as u128));
        }
        Ok(Natural(value))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Natural {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self, Error> {
        Natural::new(value)
    }
}

impl From<Natural> for u64 {
    fn from(n: Natural) -> u64 {
        n.0
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Prime factorization as `(prime, exponent)` pairs, strictly increasing by
/// prime. The empty list represents 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// `Some((p, k))` when the value is `p^k` for a single prime `p`, `k >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, e)] => Some((*p, *e)),
            _ => None,
        }
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Greatest common divisor. Satisfies `gcd(a, b) = gcd(b, a)` and the
/// Bezout-combination identity `gcd(a, b) = gcd(a, a*x + b*y)`.
pub fn gcd(a: Natural, b: Natural) -> Natural {
    Natural(gcd_u64(a.0, b.0))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Sufficient for all n < 3.3 * 10^24, far beyond the 64-bit domain.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test: true iff `n` has exactly two divisors.
pub fn is_prime(n: Natural) -> bool {
    is_prime_u64(n.0)
}

/// Primes up to `limit` (inclusive) by a plain sieve of Eratosthenes.
pub(crate) fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Immutable after first initialization; safe to share across threads.
fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Brent-cycle Pollard rho. `n` must be odd, composite, and free of factors
/// below the trial division limit. Returns a nontrivial factor, or `None`
/// when this polynomial offset `c` fails.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let step = |x: u64| {
        let y = mulmod(x, x, n);
        if y + c >= n {
            y + c - n
        } else {
            y + c
        }
    };
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let batch = 128.min(r - k);
            for _ in 0..batch {
                y = step(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += batch;
        }
        r <<= 1;
    }
    if g == n {
        // The batched product collapsed; replay one step at a time.
        loop {
            ys = step(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn factor_hard(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = pollard_brent(n, c) {
            break d;
        }
        c += 1;
    };
    factor_hard(d, out);
    factor_hard(n / d, out);
}

pub(crate) fn factorize_u64(n: u64) -> Factorization {
    let mut n = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if n > 1 {
        if is_prime_u64(n) {
            factors.push((n, 1));
        } else {
            // No factor below 10^6 and composite: both prime factors exceed
            // the trial limit, so they sort after everything found so far.
            let mut hard = BTreeMap::new();
            factor_hard(n, &mut hard);
            factors.extend(hard);
        }
    }
    Factorization { factors }
}

/// Prime factorization of `n`. `factorize(1)` is the empty product.
pub fn factorize(n: Natural) -> Factorization {
    factorize_u64(n.0)
}

/// `1 + p + p^2 + ... + p^e` in 128 bits.
pub(crate) fn sigma_prime_power(p: u64, e: u32) -> Result<u128, Error> {
    let p = p as u128;
    let mut term = 1u128;
    let mut sum = 1u128;
    for _ in 0..e {
        term = term.checked_mul(p).ok_or(Error::Overflow("sigma(p^k)"))?;
        sum = sum.checked_add(term).ok_or(Error::Overflow("sigma(p^k)"))?;
    }
    Ok(sum)
}

pub(crate) fn sigma_of_factorization(f: &Factorization) -> Result<u64, Error> {
    let mut acc = 1u128;
    for &(p, e) in f.factors() {
        acc = acc
            .checked_mul(sigma_prime_power(p, e)?)
            .ok_or(Error::Overflow("sigma(n)"))?;
        if acc > NATURAL_MAX as u128 {
            return Err(Error::Overflow("sigma(n)"));
        }
    }
    Ok(acc as u64)
}

pub(crate) fn sigma_u64(n: u64) -> Result<u64, Error> {
    sigma_of_factorization(&factorize_u64(n))
}

/// Sum of all positive divisors of `n`, computed multiplicatively from the
/// factorization as the product of `(p^(e+1) - 1) / (p - 1)` terms.
///
/// Errors with [`Error::Overflow`] when the sum leaves the domain, which
/// signals the caller to shrink the range.
pub fn sigma(n: Natural) -> Result<Natural, Error> {
    Ok(Natural(sigma_u64(n.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::new(v).unwrap()
    }

    fn sigma_by_trial_division(n: u64) -> u64 {
        let mut sum = 0u64;
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                sum += d;
                if d != n / d {
                    sum += n / d;
                }
            }
            d += 1;
        }
        sum
    }

    #[test]
    fn natural_rejects_zero_and_overflow() {
        assert!(Natural::new(0).is_err());
        assert!(Natural::new(NATURAL_MAX).is_ok());
        assert!(Natural::new(NATURAL_MAX + 1).is_err());
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(nat(2)));
        assert!(!is_prime(nat(1)));
        assert!(!is_prime(nat(9_018_009)));
        assert!(is_prime(nat((1 << 61) - 1)));
        // Strong pseudoprime to bases 2,3,5,7 but composite.
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn primality_matches_trial_division_below_20000() {
        for n in 1u64..20_000 {
            let naive = n > 1 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), naive, "disagree at {n}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(nat(1)).is_empty());
        assert_eq!(factorize(nat(12)).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(
            factorize(nat(9_018_009)).factors(),
            &[(3, 2), (7, 2), (11, 2), (13, 2)]
        );
    }

    #[test]
    fn factorize_round_trips_and_matches_primality() {
        for n in 1u64..5_000 {
            let f = factorize_u64(n);
            assert_eq!(f.value(), n);
            assert_eq!(is_prime_u64(n), f.factors() == [(n, 1)]);
            for &(p, _) in f.factors() {
                assert!(is_prime_u64(p));
            }
            for w in f.factors().windows(2) {
                assert!(w[0].0 < w[1].0, "primes not strictly increasing for {n}");
            }
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        // Both factors above the trial division limit.
        let p = 2_147_483_629u64;
        let q = 2_147_483_647u64;
        let f = factorize(nat(p * q));
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
        let sq = factorize(nat(q * q));
        assert_eq!(sq.factors(), &[(q, 2)]);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(nat(1)).unwrap().get(), 1);
        assert_eq!(sigma(nat(6)).unwrap().get(), 12);
        assert_eq!(sigma(nat(9_018_009)).unwrap().get(), 18_035_199);
    }

    #[test]
    fn sigma_matches_trial_division_to_100000() {
        for n in 1u64..=100_000 {
            assert_eq!(sigma_u64(n).unwrap(), sigma_by_trial_division(n), "n={n}");
        }
    }

    #[test]
    fn sigma_is_multiplicative_on_coprime_pairs() {
        for a in 1u64..=1_000 {
            for b in (a + 1)..=1_000 {
                if gcd_u64(a, b) == 1 {
                    assert_eq!(
                        sigma_u64(a * b).unwrap(),
                        sigma_u64(a).unwrap() * sigma_u64(b).unwrap(),
                        "a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn sigma_overflow_is_reported() {
        // sigma(2^62) = 2^63 - 1 is exactly the cap; sigma(3 * 2^61) exceeds it.
        assert_eq!(sigma(nat(1 << 62)).unwrap().get(), NATURAL_MAX);
        assert!(matches!(
            sigma(nat(3 * (1 << 61))),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(nat(7), nat(6)).get(), 1);
        assert_eq!(gcd(nat(42), nat(42)).get(), 42);
        assert_eq!(gcd(nat(9_018_009), nat(819)).get(), 819);
        assert_eq!(gcd(nat(6), nat(4)), gcd(nat(4), nat(6)));
    }

    #[test]
    fn gcd_linear_combination_consistency() {
        // gcd(a, a*x + b*y) = gcd(a, (b*y) mod a), and the unimodular case
        // gcd(a, a*x + b) = gcd(a, b) that the Greening identity relies on.
        for a in 1u64..=60 {
            for b in 1u64..=60 {
                for (x, y) in [(1u64, 1u64), (2, 3), (5, 1), (0, 7)] {
                    assert_eq!(
                        gcd_u64(a, a * x + b * y),
                        gcd_u64(a, (b * y) % a),
                        "a={a} b={b} x={x} y={y}"
                    );
                }
                assert_eq!(gcd_u64(a, 2 * a + b), gcd_u64(a, b));
            }
        }
    }
}
