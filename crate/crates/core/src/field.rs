//! The field tower F_q ⊂ F_{q^n} ⊂ F_{q^{2n}}.
//!
//! All three fields live inside a single representation of F_{q^{2n}} as
//! F_p[X]/(P) with P primitive, so the residue of X is a fixed generator ω of
//! the multiplicative group. Subfields are membership predicates, not types.
//!
//! Elements are stored by their residue code: the integer whose base-p digits
//! are the residue coefficients, constant term least significant. Arithmetic
//! goes through exp/log/Zech tables, which is why the total field order is
//! capped at [`MAX_ORDER`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported |F_{q^{2n}}|.
pub const MAX_ORDER: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

/// An element of F_{q^{2n}}, identified by its residue code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// The residue code (the serialized form).
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// JSON shape of a tower: `{"p", "e", "n", "defining_poly"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub defining_poly: Vec<u32>,
}

/// F_q ⊂ F_{q^n} ⊂ F_{q^N}, N = 2n, q = p^e.
pub struct FieldTower {
    p: u32,
    e: u32,
    n: u32,
    /// eN, the degree of the defining polynomial over F_p.
    degree: u32,
    /// p^{eN}
    order: u32,
    q: u64,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    /// q^i mod (order - 1), i in 0..N
    q_pow: Vec<u64>,
    /// p^i mod (order - 1), i in 0..eN
    p_pow: Vec<u64>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("n", &self.n)
            .field("defining_poly", &self.poly)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.n == other.n && self.poly == other.poly
    }
}

impl Eq for FieldTower {}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Construct the tower for q = p^e and half-degree n.
///
/// When `defining_poly` is `None` the lexicographically smallest primitive
/// monic polynomial of degree e·2n is used (candidates are ordered by the
/// integer whose base-p digits are the non-leading coefficients, constant
/// term least significant).
pub fn build_tower(p: u32, e: u32, n: u32, defining_poly: Option<&[u32]>) -> Result<Arc<FieldTower>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || n == 0 {
        return Err(Error::Invalid("e and n must be positive".into()));
    }
    let degree = e
        .checked_mul(2 * n)
        .ok_or_else(|| Error::Invalid("degree overflow".into()))?;
    let order = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
    if order > MAX_ORDER as u128 {
        return Err(Error::FieldTooLarge {
            order: order.min(u64::MAX as u128) as u64,
            limit: MAX_ORDER,
        });
    }
    let order = order as u64;
    let poly = match defining_poly {
        Some(given) => {
            if given.len() != degree as usize + 1 {
                return Err(Error::DegreeMismatch {
                    expected: degree as usize,
                    found: given.len().saturating_sub(1),
                });
            }
            if let Some(&c) = given.iter().find(|&&c| c >= p) {
                return Err(Error::BadCoefficient(c));
            }
            if given[degree as usize] != 1 {
                return Err(Error::NotMonic);
            }
            if !fpoly::is_irreducible(given, p) {
                return Err(Error::ReduciblePolynomial);
            }
            if !fpoly::is_primitive(given, p, order) {
                return Err(Error::NotPrimitive);
            }
            given.to_vec()
        }
        None => fpoly::smallest_primitive(p, degree as usize, order),
    };
    Ok(Arc::new(FieldTower::from_primitive(p, e, n, poly)))
}

/// Rebuild a tower from its JSON description.
pub fn build_from_spec(spec: &TowerSpec) -> Result<Arc<FieldTower>> {
    build_tower(spec.p, spec.e, spec.n, Some(&spec.defining_poly))
}

impl FieldTower {
    fn from_primitive(p: u32, e: u32, n: u32, poly: Vec<u32>) -> Self {
        let degree = e * 2 * n;
        let d = degree as usize;
        let order = (p as u64).pow(degree) as u32;
        let m = order as usize - 1;
        let mut exp = vec![0u32; m];
        let mut log = vec![NO_LOG; order as usize];
        let mut digits = vec![0u32; d];
        digits[0] = 1;
        let pw: Vec<u32> = (0..d).map(|i| p.pow(i as u32)).collect();
        for i in 0..m {
            let code: u32 = digits.iter().zip(&pw).map(|(a, b)| a * b).sum();
            exp[i] = code;
            log[code as usize] = i as u32;
            // multiply by X modulo the defining polynomial
            let top = digits[d - 1];
            for j in (1..d).rev() {
                digits[j] = digits[j - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for j in 0..d {
                    digits[j] = (digits[j] + (p - top) * poly[j]) % p;
                }
            }
        }
        let mut zech = vec![NO_LOG; m];
        for i in 0..m {
            let c = exp[i];
            let c0 = c % p;
            let plus_one = c - c0 + (c0 + 1) % p;
            zech[i] = if plus_one == 0 { NO_LOG } else { log[plus_one as usize] };
        }
        let q = (p as u64).pow(e);
        let mm = m as u64;
        let mut q_pow = Vec::with_capacity(2 * n as usize);
        let mut acc = 1u64 % mm.max(1);
        for _ in 0..2 * n {
            q_pow.push(acc);
            acc = acc * (q % mm.max(1)) % mm.max(1);
        }
        let mut p_pow = Vec::with_capacity(d);
        let mut acc = 1u64 % mm.max(1);
        for _ in 0..d {
            p_pow.push(acc);
            acc = acc * (p as u64) % mm.max(1);
        }
        FieldTower {
            p,
            e,
            n,
            degree,
            order,
            q,
            poly,
            exp,
            log,
            zech,
            q_pow,
            p_pow,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// N = 2n, the degree of F_{q^N} over F_q.
    pub fn big_n(&self) -> u32 {
        2 * self.n
    }
    /// eN, the degree over the prime field.
    pub fn prime_degree(&self) -> u32 {
        self.degree
    }
    /// |F_q|
    pub fn q(&self) -> u64 {
        self.q
    }
    /// |F_{q^N}|
    pub fn order(&self) -> u64 {
        self.order as u64
    }
    /// |F_{q^m}| for m dividing N.
    pub fn subfield_order(&self, m: u32) -> u64 {
        self.q.pow(m)
    }
    pub fn defining_poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.p,
            e: self.e,
            n: self.n,
            defining_poly: self.poly.clone(),
        }
    }

    fn group_order(&self) -> u64 {
        self.order as u64 - 1
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The generator ω (residue of X).
    pub fn omega(&self) -> Fe {
        self.power_of_omega(1)
    }

    /// ω^t for any integer t.
    pub fn power_of_omega(&self, t: i64) -> Fe {
        let m = self.group_order() as i64;
        Fe(self.exp[t.rem_euclid(m) as usize])
    }

    /// Element with the given residue code.
    pub fn element(&self, code: u32) -> Result<Fe> {
        if code < self.order {
            Ok(Fe(code))
        } else {
            Err(Error::BadElement { code })
        }
    }

    /// Iterate all elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    /// Iterate nonzero elements as ω^0, ω^1, ....
    pub fn nonzero_by_power(&self) -> impl Iterator<Item = Fe> + '_ {
        self.exp.iter().map(|&c| Fe(c))
    }

    /// Discrete logarithm to base ω; `None` for zero.
    pub fn log(&self, x: Fe) -> Option<u64> {
        match self.log[x.0 as usize] {
            NO_LOG => None,
            l => Some(l as u64),
        }
    }

    /// Residue digits over F_p, constant term first.
    pub fn digits(&self, x: Fe) -> Vec<u32> {
        let mut out = vec![0; self.degree as usize];
        self.digits_into(x, &mut out);
        out
    }

    pub(crate) fn digits_into(&self, x: Fe, out: &mut [u32]) {
        let mut c = x.0;
        for slot in out.iter_mut() {
            *slot = c % self.p;
            c /= self.p;
        }
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        let mut c = 0u32;
        for &d in digits.iter().rev() {
            c = c * self.p + d % self.p;
        }
        Fe(c)
    }

    /// Embed an element of F_p.
    pub fn from_prime(&self, v: u32) -> Fe {
        Fe(v % self.p)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let m = self.order - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + m - la };
        let z = self.zech[diff as usize];
        if z == NO_LOG {
            return Fe::ZERO;
        }
        let s = la + z;
        Fe(self.exp[(if s >= m { s - m } else { s }) as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        let m = self.order - 1;
        let s = self.log[a.0 as usize] + m / 2;
        Fe(self.exp[(if s >= m { s - m } else { s }) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let m = self.order - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if s >= m { s - m } else { s }) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let m = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((m - l) % m) as usize]))
    }

    /// a / b; `None` when b = 0.
    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// x^k for a non-negative exponent.
    pub fn pow(&self, x: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if x.0 == 0 {
            return Fe::ZERO;
        }
        let m = self.group_order();
        let l = self.log[x.0 as usize] as u64;
        let e = ((l as u128 * (k % m) as u128) % m as u128) as usize;
        Fe(self.exp[e])
    }

    /// x^{q^i}, i taken modulo N.
    #[inline]
    pub fn frobenius(&self, x: Fe, i: i64) -> Fe {
        if x.0 == 0 {
            return x;
        }
        let idx = i.rem_euclid(2 * self.n as i64) as usize;
        let m = self.group_order();
        let l = self.log[x.0 as usize] as u64;
        Fe(self.exp[(l * self.q_pow[idx] % m) as usize])
    }

    /// x^{p^r}, the automorphism of F_{q^N} of index r modulo eN.
    pub fn prime_frobenius(&self, x: Fe, r: i64) -> Fe {
        if x.0 == 0 {
            return x;
        }
        let idx = r.rem_euclid(self.degree as i64) as usize;
        let m = self.group_order();
        let l = self.log[x.0 as usize] as u64;
        Fe(self.exp[(l * self.p_pow[idx] % m) as usize])
    }

    /// Membership in F_{q^m}: x^{q^m} = x.
    pub fn in_subfield(&self, x: Fe, m: u32) -> bool {
        self.frobenius(x, m as i64) == x
    }

    fn check_degrees(&self, a: u32, b: u32) -> Result<()> {
        let big = self.big_n();
        if a == 0 || b == 0 || big % a != 0 || a % b != 0 {
            return Err(Error::BadDegrees { a, b, ambient: big });
        }
        Ok(())
    }

    /// Relative norm N_{q^a/q^b}(x) = x^{(q^a - 1)/(q^b - 1)}.
    pub fn rel_norm(&self, x: Fe, a: u32, b: u32) -> Result<Fe> {
        self.check_degrees(a, b)?;
        if !self.in_subfield(x, a) {
            return Err(Error::NotInSubfield { degree: a });
        }
        if x.is_zero() {
            return Ok(x);
        }
        let m = self.group_order();
        let exponent = (0..a / b).fold(0u64, |acc, i| (acc + self.q_pow[(b * i) as usize]) % m);
        Ok(self.pow(x, exponent))
    }

    /// N_{q^N/q}, written N(x) throughout.
    pub fn norm(&self, x: Fe) -> Fe {
        self.rel_norm(x, self.big_n(), 1).expect("every element lies in F_{q^N}")
    }

    /// Tr_{q^N/q}(x).
    pub fn trace_to_base(&self, x: Fe) -> Fe {
        (0..self.big_n() as i64).fold(Fe::ZERO, |acc, i| self.add(acc, self.frobenius(x, i)))
    }

    /// Absolute trace Tr_{q^N/p}(x), returned as an F_p value.
    pub fn trace_to_prime(&self, x: Fe) -> u32 {
        let t = (0..self.degree as i64).fold(Fe::ZERO, |acc, r| self.add(acc, self.prime_frobenius(x, r)));
        debug_assert!(t.0 < self.p);
        t.0
    }

    /// Square test in F_q. Zero counts as a square.
    pub fn is_square_in_base(&self, x: Fe) -> Result<bool> {
        if !self.in_subfield(x, 1) {
            return Err(Error::NotInSubfield { degree: 1 });
        }
        if x.is_zero() || self.p == 2 {
            return Ok(true);
        }
        Ok(self.pow(x, (self.q - 1) / 2) == Fe::ONE)
    }

    /// True iff N(γ) is a non-square in F_q.
    pub fn has_nonsquare_norm(&self, gamma: Fe) -> bool {
        !gamma.is_zero() && !self.is_square_in_base(self.norm(gamma)).expect("norm lies in F_q")
    }

    /// First ω^t, t = 1, 2, ..., whose norm is a non-square in F_q.
    pub fn find_gamma(&self) -> Result<Fe> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        self.nonzero_by_power()
            .skip(1)
            .find(|&g| self.has_nonsquare_norm(g))
            .ok_or(Error::EvenCharacteristic)
    }

    /// Generator of F_{q^m}^*, namely ω^{(q^N - 1)/(q^m - 1)}.
    pub fn subfield_generator(&self, m: u32) -> Result<Fe> {
        self.check_degrees(self.big_n(), m)?;
        let step = self.group_order() / (self.subfield_order(m) - 1);
        Ok(self.power_of_omega(step as i64))
    }

    /// The F_q-basis 1, β, ..., β^{m-1} of F_{q^m}, β its generator.
    pub fn subfield_basis(&self, m: u32) -> Result<Vec<Fe>> {
        let beta = self.subfield_generator(m)?;
        Ok((0..m as u64).map(|i| self.pow(beta, i)).collect())
    }

    /// F_p-basis of F_q (powers of its generator).
    pub(crate) fn base_field_prime_basis(&self) -> Vec<Fe> {
        let zeta = self.subfield_generator(1).expect("1 divides N");
        (0..self.e as u64).map(|i| self.pow(zeta, i)).collect()
    }

    /// Decompose x = c + dγ with c, d ∈ F_{q^n}, γ ∉ F_{q^n}.
    pub fn split_over_half(&self, x: Fe, gamma: Fe) -> Result<(Fe, Fe)> {
        let n = self.n as i64;
        let gbar = self.frobenius(gamma, n);
        let denom = self.sub(gamma, gbar);
        let inv = self.inv(denom).ok_or(Error::BadGamma)?;
        let xbar = self.frobenius(x, n);
        let d = self.mul(self.sub(x, xbar), inv);
        let c = self.sub(x, self.mul(d, gamma));
        Ok((c, d))
    }
}

/// Small polynomial arithmetic over F_p used to validate and choose the
/// defining polynomial. Coefficients are stored constant term first.
pub(crate) mod fpoly {
    fn trim(v: &mut Vec<u32>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut k = p - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    /// Remainder of a modulo b (b nonzero).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db && !(r.len() == 1 && r[0] == 0) {
            let dr = r.len() - 1;
            let f = r[dr] as u64 * lead_inv as u64 % p as u64;
            if f != 0 {
                for i in 0..=db {
                    let idx = dr - db + i;
                    r[idx] = ((r[idx] as u64 + (p as u64 - f) * b[i] as u64) % p as u64) as u32;
                }
            }
            r.pop();
            trim(&mut r);
            if r.is_empty() {
                r.push(0);
            }
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        rem(&out, m, p)
    }

    pub fn pow_x_mod(k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut base = rem(&[0, 1], m, p);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = mul_mod(&result, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            k >>= 1;
        }
        result
    }

    /// Trial division by every monic polynomial of degree ≤ deg/2.
    pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
        let deg = poly.len() - 1;
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for m in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut c = m;
                for _ in 0..d {
                    div.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                div.push(1);
                let r = rem(poly, &div, p);
                if r.iter().all(|&x| x == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn prime_factors(mut m: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                out.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            out.push(m);
        }
        out
    }

    /// X has multiplicative order `order - 1` modulo an irreducible `poly`.
    pub fn is_primitive(poly: &[u32], p: u32, order: u64) -> bool {
        let group = order - 1;
        if pow_x_mod(group, poly, p) != vec![1] {
            return false;
        }
        prime_factors(group).into_iter().all(|r| pow_x_mod(group / r, poly, p) != vec![1])
    }

    pub fn smallest_primitive(p: u32, degree: usize, order: u64) -> Vec<u32> {
        let count = (p as u64).pow(degree as u32);
        for m in 0..count {
            let mut poly = Vec::with_capacity(degree + 1);
            let mut c = m;
            for _ in 0..degree {
                poly.push((c % p as u64) as u32);
                c /= p as u64;
            }
            poly.push(1);
            if poly[0] == 0 {
                continue;
            }
            if is_irreducible(&poly, p) && is_primitive(&poly, p, order) {
                return poly;
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f81() -> Arc<FieldTower> {
        build_tower(3, 1, 2, Some(&[2, 0, 0, 2, 1])).unwrap()
    }

    #[test]
    fn example_tower_orders() {
        let t = f81();
        assert_eq!(t.q(), 3);
        assert_eq!(t.subfield_order(t.n()), 9);
        assert_eq!(t.order(), 81);
    }

    #[test]
    fn default_tower_over_five() {
        let t = build_tower(5, 1, 2, None).unwrap();
        assert_eq!((t.q(), t.subfield_order(2), t.order()), (5, 25, 625));
        assert!(fpoly::is_primitive(t.defining_poly(), 5, 625));
    }

    #[test]
    fn tower_errors() {
        assert_eq!(build_tower(4, 1, 2, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            build_tower(3, 1, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::DegreeMismatch { expected: 4, found: 2 }
        );
        // (X^2+1)^2 = X^4 + 2X^2 + 1
        assert_eq!(
            build_tower(3, 1, 2, Some(&[1, 0, 2, 0, 1])).unwrap_err(),
            Error::ReduciblePolynomial
        );
        // X^4 + 1 is reducible over F_3 too; X^4 + X^3 + X^2 + X + 1 is irreducible but not primitive
        assert_eq!(
            build_tower(3, 1, 2, Some(&[1, 1, 1, 1, 1])).unwrap_err(),
            Error::NotPrimitive
        );
    }

    #[test]
    fn field_axioms_small() {
        let t = f81();
        for a in t.elements() {
            assert_eq!(t.add(a, t.neg(a)), Fe::ZERO);
            if !a.is_zero() {
                assert_eq!(t.mul(a, t.inv(a).unwrap()), Fe::ONE);
            }
            for b in t.elements().step_by(7) {
                assert_eq!(t.add(a, b), t.add(b, a));
                let da = t.digits(a);
                let db = t.digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(t.add(a, b), t.from_digits(&sum));
            }
        }
    }

    #[test]
    fn norm_of_generator_is_two() {
        let t = f81();
        let w = t.omega();
        assert_eq!(t.rel_norm(w, 4, 1).unwrap(), Fe(2));
        assert_eq!(t.rel_norm(Fe::ONE, 4, 2).unwrap(), Fe::ONE);
        assert!(matches!(t.rel_norm(w, 2, 1), Err(Error::NotInSubfield { degree: 2 })));
        assert!(matches!(t.rel_norm(w, 3, 1), Err(Error::BadDegrees { .. })));
    }

    #[test]
    fn squares_in_base() {
        let t = f81();
        assert!(t.is_square_in_base(Fe(1)).unwrap());
        assert!(!t.is_square_in_base(Fe(2)).unwrap());
        assert!(t.is_square_in_base(Fe(0)).unwrap());
        assert!(t.is_square_in_base(t.omega()).is_err());
        let t5 = build_tower(5, 1, 2, None).unwrap();
        assert!(t5.is_square_in_base(Fe(4)).unwrap());
        assert!(!t5.is_square_in_base(Fe(2)).unwrap());
    }

    #[test]
    fn gamma_selection() {
        let t = f81();
        let g = t.find_gamma().unwrap();
        assert_eq!(g, t.omega());
        assert!(!t.in_subfield(g, t.n()));
        let t2 = build_tower(2, 1, 2, None).unwrap();
        assert_eq!(t2.find_gamma().unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn split_recombines() {
        let t = f81();
        let g = t.omega();
        for x in t.elements() {
            let (c, d) = t.split_over_half(x, g).unwrap();
            assert!(t.in_subfield(c, 2) && t.in_subfield(d, 2));
            assert_eq!(t.add(c, t.mul(d, g)), x);
        }
    }

    #[test]
    fn extension_of_nonprime_base() {
        // q = 9, n = 1: F_81 viewed as F_{9^2}.
        let t = build_tower(3, 2, 1, None).unwrap();
        assert_eq!(t.q(), 9);
        assert_eq!(t.order(), 81);
        for x in t.elements() {
            let nx = t.norm(x);
            assert!(t.in_subfield(nx, 1));
            assert_eq!(t.frobenius(x, 2), x);
            assert!(t.in_subfield(t.trace_to_base(x), 1));
        }
        assert!(t.has_nonsquare_norm(t.find_gamma().unwrap()));
    }
}
