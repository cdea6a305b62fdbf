//! The Hughes-Kleinfeld presemifield on F_{q^n}^2 attached to the spread
//! set {aX + γbX^{q^s}}, with brute-force nucleus computation.

use std::sync::Arc;

use serde::Serialize;

use crate::codes::{make_spread_set, RankMetricCode};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldTower};
use crate::linpoly::gcd;

/// γ, s and the coordinates γ^{q^s+1} = u + vγ over F_{q^n}.
#[derive(Clone, Debug)]
pub struct HkParams {
    tower: Arc<FieldTower>,
    pub gamma: Fe,
    pub s: u32,
    pub u: Fe,
    pub v: Fe,
}

/// Semifield element (c, d) standing for c + dγ.
pub type Pair = (Fe, Fe);

impl HkParams {
    pub fn new(tower: &Arc<FieldTower>, gamma: Fe, s: u32) -> Result<Self> {
        let big = tower.big_n();
        if gcd(s % big, big) != 1 {
            return Err(Error::BadStep { s, modulus: big });
        }
        tower.element(gamma.code())?;
        if !tower.has_nonsquare_norm(gamma) {
            return Err(Error::BadGamma);
        }
        let w = tower.mul(tower.frobenius(gamma, s as i64), gamma);
        let (u, v) = tower.split_over_half(w, gamma)?;
        Ok(HkParams {
            tower: tower.clone(),
            gamma,
            s,
            u,
            v,
        })
    }

    /// Parameters taken as given, without validation. Used to build
    /// degenerate multiplications for testing the presemifield checks.
    pub fn unchecked(tower: &Arc<FieldTower>, gamma: Fe, s: u32, u: Fe, v: Fe) -> Self {
        HkParams {
            tower: tower.clone(),
            gamma,
            s,
            u,
            v,
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn to_pair(&self, x: Fe) -> Result<Pair> {
        self.tower.split_over_half(x, self.gamma)
    }

    pub fn from_pair(&self, (c, d): Pair) -> Fe {
        let t = &self.tower;
        t.add(c, t.mul(d, self.gamma))
    }

    /// (c,d)*(a,b) = (ac + b d^{q^s} u, ad + b c^{q^s} + b d^{q^s} v).
    pub fn mult(&self, (c, d): Pair, (a, b): Pair) -> Pair {
        let t = &self.tower;
        let s = self.s as i64;
        let cs = t.frobenius(c, s);
        let ds = t.frobenius(d, s);
        let bds = t.mul(b, ds);
        let first = t.add(t.mul(a, c), t.mul(bds, self.u));
        let second = t.add(t.add(t.mul(a, d), t.mul(b, cs)), t.mul(bds, self.v));
        (first, second)
    }

    pub fn spread_set(&self) -> RankMetricCode {
        make_spread_set(&self.tower, self.gamma, self.s, self.u, self.v)
    }

    /// Elements x + yγ (x, y ∈ F_{q^n}) satisfying the two-equation
    /// characterization of the left nucleus.
    pub fn left_nucleus_system(&self) -> Vec<Fe> {
        let t = &self.tower;
        let n = t.n();
        let s = self.s as i64;
        let (u, v) = (self.u, self.v);
        let half: Vec<Fe> = t.elements().filter(|&x| t.in_subfield(x, n)).collect();
        let f = |x: Fe, i: i64| t.frobenius(x, i);
        let mut out = Vec::new();
        for &x in &half {
            for &y in &half {
                let lhs1 = t.add(f(x, 2 * s), t.mul(f(y, 2 * s), f(v, s)));
                let rhs1 = t.add(x, t.mul(f(y, s), v));
                let lhs2 = t.add(t.add(t.mul(y, u), t.mul(f(x, s), v)), t.mul(f(y, s), t.mul(v, v)));
                let rhs2 = t.add(
                    t.add(t.mul(f(y, 2 * s), f(u, s)), t.mul(f(x, 2 * s), v)),
                    t.mul(f(y, 2 * s), t.mul(f(v, s), v)),
                );
                if lhs1 == rhs1 && lhs2 == rhs2 {
                    out.push(self.from_pair((x, y)));
                }
            }
        }
        out.sort();
        out
    }
}

/// A multiplication on F_{q^N} (with its field addition), tabulated.
#[derive(Clone)]
pub struct MulTable {
    tower: Arc<FieldTower>,
    size: usize,
    table: Vec<Fe>,
}

/// Brute-force nuclei, each sorted by element code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nuclei {
    pub left: Vec<Fe>,
    pub middle: Vec<Fe>,
    pub right: Vec<Fe>,
}

impl MulTable {
    pub fn from_fn<F: Fn(Fe, Fe) -> Fe>(tower: &Arc<FieldTower>, mult: F) -> Self {
        let size = tower.order() as usize;
        let elems: Vec<Fe> = tower.elements().collect();
        let mut table = Vec::with_capacity(size * size);
        for &x in &elems {
            for &y in &elems {
                table.push(mult(x, y));
            }
        }
        MulTable {
            tower: tower.clone(),
            size,
            table,
        }
    }

    /// Multiplication of the field itself.
    pub fn field(tower: &Arc<FieldTower>) -> Self {
        let t = tower.clone();
        Self::from_fn(tower, move |x, y| t.mul(x, y))
    }

    /// The multiplication of `params`, transported to field elements via
    /// x = c + dγ.
    pub fn hughes_kleinfeld(params: &HkParams) -> Result<Self> {
        let t = params.tower();
        let pairs: Vec<Pair> = t.elements().map(|x| params.to_pair(x)).collect::<Result<_>>()?;
        Ok(Self::from_fn(t, |x, y| {
            params.from_pair(params.mult(pairs[x.code() as usize], pairs[y.code() as usize]))
        }))
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        self.table[x.code() as usize * self.size + y.code() as usize]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Rows of element codes; row x, column y holds x*y.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.size).map(|r| r.iter().map(|x| x.code()).collect()).collect()
    }

    pub fn check_biadditive(&self) -> Result<()> {
        let t = &self.tower;
        let elems: Vec<Fe> = t.elements().collect();
        for &x in &elems {
            for &y in &elems {
                let xy = t.add(x, y);
                for &z in &elems {
                    let left = self.mul(xy, z) == t.add(self.mul(x, z), self.mul(y, z));
                    let right = self.mul(z, xy) == t.add(self.mul(z, x), self.mul(z, y));
                    if !left || !right {
                        return Err(Error::NotBiadditive);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn find_zero_divisor(&self) -> Option<(Fe, Fe)> {
        let t = &self.tower;
        t.elements()
            .filter(|x| !x.is_zero())
            .flat_map(|x| t.elements().filter(|y| !y.is_zero()).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y).is_zero())
    }

    /// Biadditive with no zero divisors.
    pub fn is_presemifield(&self) -> bool {
        self.check_biadditive().is_ok() && self.find_zero_divisor().is_none()
    }

    pub fn nuclei(&self) -> Result<Nuclei> {
        self.check_biadditive()?;
        if let Some((x, y)) = self.find_zero_divisor() {
            return Err(Error::ZeroDivisorFound { x: x.code(), y: y.code() });
        }
        let elems: Vec<Fe> = self.tower.elements().collect();
        let holds = |cond: &dyn Fn(Fe, Fe, Fe) -> bool, a: Fe| {
            elems.iter().all(|&x| elems.iter().all(|&y| cond(a, x, y)))
        };
        let collect = |cond: &dyn Fn(Fe, Fe, Fe) -> bool| -> Vec<Fe> {
            elems.iter().copied().filter(|&a| holds(cond, a)).collect()
        };
        let m = |x, y| self.mul(x, y);
        Ok(Nuclei {
            left: collect(&|a, x, y| m(a, m(x, y)) == m(m(a, x), y)),
            middle: collect(&|a, x, y| m(x, m(a, y)) == m(m(x, a), y)),
            right: collect(&|a, x, y| m(x, m(y, a)) == m(m(x, y), a)),
        })
    }
}

/// Brute-force left, middle and right nuclei.
pub fn semifield_nuclei(table: &MulTable) -> Result<Nuclei> {
    table.nuclei()
}
