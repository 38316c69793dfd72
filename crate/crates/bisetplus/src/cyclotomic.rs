//! Exact arithmetic in cyclotomic fields `ℚ(ζ_n)` for `n ≤ 24`.
//!
//! An element is a rational polynomial in `ζ_n` of degree below `φ(n)`,
//! reduced modulo the `n`-th cyclotomic polynomial `Φ_n`; equality is
//! coefficient equality of the reduced form. The cyclotomic polynomials are
//! computed by recursive division of `xⁿ − 1` by the `Φ_d` for proper
//! divisors `d` and cached per conductor.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported conductor.
pub const CONDUCTOR_CAP: u64 = 24;

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Drop trailing zero coefficients (little-endian polynomial).
fn trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Exact division with remainder, little-endian, arbitrary nonzero divisor.
fn poly_divide(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = num.to_vec();
    trim(&mut rem);
    let deg_d = den.len() - 1;
    let lead = den.last().unwrap();
    if rem.len() <= deg_d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - deg_d];
    while rem.len() > deg_d {
        let shift = rem.len() - 1 - deg_d;
        let factor = rem.last().unwrap() / lead;
        quot[shift] = factor.clone();
        for (i, c) in den.iter().enumerate() {
            let v = &rem[shift + i] - &factor * c;
            rem[shift + i] = v;
        }
        // the leading coefficient cancels exactly
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// `Φ_n` as a little-endian coefficient vector, cached.
fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let poly = if n == 1 {
        vec![rat(-1), rat(1)]
    } else {
        // xⁿ − 1 divided by all Φ_d for proper divisors d of n
        let mut num = vec![BigRational::zero(); n as usize + 1];
        num[0] = rat(-1);
        num[n as usize] = rat(1);
        let mut acc = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                let (q, r) = poly_divide(&acc, &phi_d);
                debug_assert!(r.is_empty(), "Φ_{d} divides x^{n} − 1 exactly");
                acc = q;
            }
        }
        acc
    };
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}

fn check_conductor(n: u64) -> Result<()> {
    if n == 0 || n > CONDUCTOR_CAP {
        return Err(Error::UnsupportedConductor(n));
    }
    Ok(())
}

/// An element of `ℚ(ζ_n)`, stored as exactly `φ(n)` rational coefficients
/// of `1, ζ_n, …, ζ_n^{φ(n)−1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Cyclotomic(n={}, {})", self.conductor, self.render())
    }
}

impl Cyclotomic {
    fn reduced(conductor: u64, raw: Vec<BigRational>) -> Cyclotomic {
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        let (_, mut rem) = poly_divide(&raw, &phi);
        rem.resize(degree, BigRational::zero());
        Cyclotomic {
            conductor,
            coeffs: rem,
        }
    }

    pub fn zero(n: u64) -> Result<Cyclotomic> {
        check_conductor(n)?;
        Ok(Cyclotomic::reduced(n, Vec::new()))
    }

    pub fn one(n: u64) -> Result<Cyclotomic> {
        Cyclotomic::from_rational(n, BigRational::one())
    }

    pub fn from_integer(n: u64, value: i64) -> Result<Cyclotomic> {
        Cyclotomic::from_rational(n, rat(value))
    }

    pub fn from_rational(n: u64, value: BigRational) -> Result<Cyclotomic> {
        check_conductor(n)?;
        Ok(Cyclotomic::reduced(n, vec![value]))
    }

    /// The class of `x^k`, i.e. `ζ_n^k` (any integer `k`, reduced mod `n`).
    pub fn root_of_unity(k: i64, n: u64) -> Result<Cyclotomic> {
        check_conductor(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Ok(Cyclotomic::reduced(n, raw))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational number this element equals, if it lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reinterpret in `ℚ(ζ_n)` for a multiple `n` of the conductor, via
    /// `ζ_m = ζ_n^{n/m}`.
    pub fn embed(&self, n: u64) -> Result<Cyclotomic> {
        check_conductor(n)?;
        if n % self.conductor != 0 {
            return Err(Error::Incompatible(format!(
                "cannot embed ℚ(ζ_{}) into ℚ(ζ_{}): conductor does not divide",
                self.conductor, n
            )));
        }
        let step = (n / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); self.coeffs.len() * step];
        raw.push(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Ok(Cyclotomic::reduced(n, raw))
    }

    /// Bring two elements into a common field (one conductor must divide
    /// the other).
    fn unified(&self, other: &Cyclotomic) -> Result<(Cyclotomic, Cyclotomic)> {
        if self.conductor == other.conductor {
            Ok((self.clone(), other.clone()))
        } else if other.conductor % self.conductor == 0 {
            Ok((self.embed(other.conductor)?, other.clone()))
        } else if self.conductor % other.conductor == 0 {
            Ok((self.clone(), other.embed(self.conductor)?))
        } else {
            Err(Error::Incompatible(format!(
                "cyclotomic conductors {} and {} are not nested",
                self.conductor, other.conductor
            )))
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b) = self.unified(other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(Cyclotomic {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b) = self.unified(other)?;
        Ok(Cyclotomic::reduced(
            a.conductor,
            poly_mul(&a.coeffs, &b.coeffs),
        ))
    }

    pub fn scale(&self, c: &BigRational) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against
    /// `Φ_n` (which is irreducible, so every nonzero element is a unit).
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::CyclotomicDivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let mut r0 = self.coeffs.clone();
        trim(&mut r0);
        let mut r1 = (*phi).clone();
        // s tracks the coefficient of the original element: s·self ≡ r (mod Φ)
        let mut s0 = vec![BigRational::one()];
        let mut s1: Vec<BigRational> = Vec::new();
        while !r1.is_empty() {
            let (q, rem) = poly_divide(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s_next: Vec<BigRational> =
                vec![BigRational::zero(); s0.len().max(qs.len())];
            for (i, c) in s0.iter().enumerate() {
                s_next[i] += c;
            }
            for (i, c) in qs.iter().enumerate() {
                s_next[i] -= c;
            }
            trim(&mut s_next);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        // gcd with an irreducible modulus is a nonzero constant
        assert_eq!(r0.len(), 1, "gcd with Φ_n must be constant");
        let inv_gcd = BigRational::one() / &r0[0];
        let scaled: Vec<BigRational> = s0.iter().map(|c| c * &inv_gcd).collect();
        Ok(Cyclotomic::reduced(self.conductor, scaled))
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.mul(&other.inverse()?)
    }

    /// Render as a polynomial in `z` with descending powers, e.g.
    /// `z^3 - 2z + 1/2`.
    pub fn render(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let body = match k {
                0 => format!("{mag}"),
                _ => {
                    let var = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{mag}{var}")
                    }
                }
            };
            parts.push((negative, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (negative, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *negative {
                    out.push('-');
                }
            } else if *negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(body);
        }
        out
    }
}
