//! Linearized polynomials Σ a_i X^{q^i} modulo X^{q^N} - X.
//!
//! A polynomial is stored as its N coefficients over F_{q^N}. The induced
//! map on F_{q^N} is F_q-linear; its matrix over F_p in the power basis
//! {1, X, ..., X^{eN-1}} of the residue ring gives rank and root counts
//! (the F_q-rank is the F_p-rank divided by e).

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldTower};
use crate::linalg::{self, small_rank, PrimeField};

#[derive(Clone)]
pub struct LinearizedPoly {
    tower: Arc<FieldTower>,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({})", self)
    }
}

impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = match self.tower.log(*c) {
                    Some(0) => String::new(),
                    Some(l) => format!("w^{l}*"),
                    None => unreachable!(),
                };
                match i {
                    0 => format!("{c}X"),
                    _ => format!("{c}X^[q^{i}]"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for LinearizedPoly {}

impl std::hash::Hash for LinearizedPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Serialized as the array of coefficient codes, index i = coefficient of X^{q^i}.
impl Serialize for LinearizedPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.code())?;
        }
        seq.end()
    }
}

pub(crate) fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Shape of a polynomial as used by equivalence maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Zero,
    /// c X^{q^l}
    Monomial { l: u32, c: Fe },
    /// c X^{q^l} + d X^{q^{l+n}}, both nonzero
    Binomial { l: u32, c: Fe, d: Fe },
    General,
}

/// Count of roots together with the norm identity of the root-count lemma.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct NormCheck {
    pub root_count: u64,
    pub max_roots: bool,
    /// N_{q^{sN}/q^s}(f_0) = (-1)^{kN} N_{q^{sN}/q^s}(f_k); `None` when k = 0.
    pub norms_equal: Option<bool>,
    /// The s-step norm agreed with N_{q^N/q} on both end coefficients.
    pub step_norm_matches: bool,
}

impl NormCheck {
    /// max_roots ⟹ norms_equal.
    pub fn implication_holds(&self) -> bool {
        !self.max_roots || self.norms_equal.unwrap_or(true)
    }
}

// Raw coefficient-slice kernels shared with the search loops.

pub(crate) fn compose_raw(t: &FieldTower, f: &[Fe], g: &[Fe], out: &mut [Fe]) {
    let n = f.len();
    out.iter_mut().for_each(|c| *c = Fe::ZERO);
    for (i, &fi) in f.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for (j, &gj) in g.iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            let m = (i + j) % n;
            out[m] = t.add(out[m], t.mul(fi, t.frobenius(gj, i as i64)));
        }
    }
}

pub(crate) fn evaluate_raw(t: &FieldTower, f: &[Fe], x: Fe) -> Fe {
    f.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Fe::ZERO, |acc, (i, &c)| t.add(acc, t.mul(c, t.frobenius(x, i as i64))))
}

/// Row-major F_p matrix: row u holds the digits of f(X^u).
pub(crate) fn fp_matrix_raw(t: &FieldTower, f: &[Fe]) -> Vec<u32> {
    let d = t.prime_degree() as usize;
    let mut m = vec![0u32; d * d];
    let mut unit = vec![0u32; d];
    for u in 0..d {
        unit.iter_mut().for_each(|x| *x = 0);
        unit[u] = 1;
        let x = t.from_digits(&unit);
        t.digits_into(evaluate_raw(t, f, x), &mut m[u * d..(u + 1) * d]);
    }
    m
}

pub(crate) fn fp_rank_raw(t: &FieldTower, fp: &PrimeField, f: &[Fe]) -> usize {
    let d = t.prime_degree() as usize;
    let m = fp_matrix_raw(t, f);
    let mut scratch = vec![0u32; d * d];
    small_rank(fp, &m, d, &mut scratch)
}

/// F_p coordinates: digits of a_0, then a_1, ...
pub(crate) fn coords_raw(t: &FieldTower, f: &[Fe]) -> Vec<u32> {
    let d = t.prime_degree() as usize;
    let mut v = vec![0u32; f.len() * d];
    for (i, &c) in f.iter().enumerate() {
        t.digits_into(c, &mut v[i * d..(i + 1) * d]);
    }
    v
}

pub(crate) fn from_coords_raw(t: &FieldTower, v: &[u32]) -> Vec<Fe> {
    let d = t.prime_degree() as usize;
    v.chunks(d).map(|ch| t.from_digits(ch)).collect()
}

impl LinearizedPoly {
    pub fn new(tower: &Arc<FieldTower>, coeffs: Vec<Fe>) -> Result<Self> {
        let n = tower.big_n() as usize;
        if coeffs.len() != n {
            return Err(Error::BadLength {
                expected: n,
                found: coeffs.len(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| c.code() as u64 >= tower.order()) {
            return Err(Error::BadElement { code: c.code() });
        }
        Ok(LinearizedPoly {
            tower: tower.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_raw(tower: &Arc<FieldTower>, coeffs: Vec<Fe>) -> Self {
        debug_assert_eq!(coeffs.len(), tower.big_n() as usize);
        LinearizedPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    /// Parse from serialized coefficient codes.
    pub fn from_codes(tower: &Arc<FieldTower>, codes: &[u32]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| tower.element(c)).collect::<Result<Vec<_>>>()?;
        Self::new(tower, coeffs)
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        Self::from_raw(tower, vec![Fe::ZERO; tower.big_n() as usize])
    }

    /// The identity map X.
    pub fn identity(tower: &Arc<FieldTower>) -> Self {
        Self::monomial(tower, Fe::ONE, 0)
    }

    /// c X^{q^i}, i taken modulo N.
    pub fn monomial(tower: &Arc<FieldTower>, c: Fe, i: i64) -> Self {
        let n = tower.big_n() as i64;
        let mut coeffs = vec![Fe::ZERO; n as usize];
        coeffs[i.rem_euclid(n) as usize] = c;
        Self::from_raw(tower, coeffs)
    }

    /// Sum of terms c X^{q^i}; repeated indices accumulate.
    pub fn from_terms(tower: &Arc<FieldTower>, terms: &[(i64, Fe)]) -> Self {
        let n = tower.big_n() as i64;
        let mut coeffs = vec![Fe::ZERO; n as usize];
        for &(i, c) in terms {
            let k = i.rem_euclid(n) as usize;
            coeffs[k] = tower.add(coeffs[k], c);
        }
        Self::from_raw(tower, coeffs)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: i64) -> Fe {
        let n = self.coeffs.len() as i64;
        self.coeffs[i.rem_euclid(n) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    fn check(&self, other: &LinearizedPoly) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn evaluate(&self, x: Fe) -> Fe {
        evaluate_raw(&self.tower, &self.coeffs, x)
    }

    /// self ∘ g, i.e. x ↦ self(g(x)).
    pub fn compose(&self, g: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.check(g)?;
        let mut out = vec![Fe::ZERO; self.coeffs.len()];
        compose_raw(&self.tower, &self.coeffs, &g.coeffs, &mut out);
        Ok(Self::from_raw(&self.tower, out))
    }

    pub fn add(&self, g: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.check(g)?;
        let t = &self.tower;
        let coeffs = self.coeffs.iter().zip(&g.coeffs).map(|(&a, &b)| t.add(a, b)).collect();
        Ok(Self::from_raw(t, coeffs))
    }

    pub fn sub(&self, g: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.check(g)?;
        let t = &self.tower;
        let coeffs = self.coeffs.iter().zip(&g.coeffs).map(|(&a, &b)| t.sub(a, b)).collect();
        Ok(Self::from_raw(t, coeffs))
    }

    /// c·f, the composition cX ∘ f.
    pub fn scale(&self, c: Fe) -> LinearizedPoly {
        let t = &self.tower;
        Self::from_raw(t, self.coeffs.iter().map(|&a| t.mul(c, a)).collect())
    }

    /// f^ρ for ρ: x ↦ x^{p^r} applied coefficientwise.
    pub fn apply_automorphism(&self, r: u32) -> LinearizedPoly {
        if r == 0 {
            return self.clone();
        }
        let t = &self.tower;
        Self::from_raw(t, self.coeffs.iter().map(|&a| t.prime_frobenius(a, r as i64)).collect())
    }

    /// f̂ = Σ a_i^{q^{N-i}} X^{q^{N-i}}.
    pub fn adjoint(&self) -> LinearizedPoly {
        let t = &self.tower;
        let n = self.coeffs.len();
        let mut out = vec![Fe::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let j = (n - i) % n;
            out[j] = t.frobenius(a, j as i64);
        }
        Self::from_raw(t, out)
    }

    /// F_q-rank of the induced map.
    pub fn rank(&self) -> u32 {
        let fp = PrimeField::new(self.tower.p());
        fp_rank_raw(&self.tower, &fp, &self.coeffs) as u32 / self.tower.e()
    }

    pub fn is_bijective(&self) -> bool {
        self.rank() == self.tower.big_n()
    }

    /// Number of roots in F_{q^N}, q^{N - rank}.
    pub fn root_count(&self) -> u64 {
        self.tower.q().pow(self.tower.big_n() - self.rank())
    }

    /// Root count by evaluating at every element.
    pub fn root_count_exhaustive(&self) -> u64 {
        self.tower.elements().filter(|&x| self.evaluate(x).is_zero()).count() as u64
    }

    pub fn shape(&self) -> Shape {
        let sup = self.support();
        let n = self.tower.n() as usize;
        match sup.as_slice() {
            [] => Shape::Zero,
            [l] => Shape::Monomial {
                l: *l as u32,
                c: self.coeffs[*l],
            },
            [a, b] if b - a == n => Shape::Binomial {
                l: *a as u32,
                c: self.coeffs[*a],
                d: self.coeffs[*b],
            },
            _ => Shape::General,
        }
    }

    /// Compositional inverse, if the map is bijective.
    pub fn inverse(&self) -> Option<LinearizedPoly> {
        let t = &self.tower;
        let n = self.coeffs.len();
        let d = t.prime_degree() as usize;
        let fp = PrimeField::new(t.p());
        let cols = n * d;
        // Column (i, u) is the coordinate vector of (X^u-residue · X^{q^i}) ∘ f.
        let mut columns = Vec::with_capacity(cols);
        let mut unit = vec![0u32; d];
        let mut basis = vec![Fe::ZERO; n];
        let mut out = vec![Fe::ZERO; n];
        for i in 0..n {
            for u in 0..d {
                unit.iter_mut().for_each(|x| *x = 0);
                unit[u] = 1;
                basis.iter_mut().for_each(|x| *x = Fe::ZERO);
                basis[i] = t.from_digits(&unit);
                compose_raw(t, &basis, &self.coeffs, &mut out);
                columns.push(coords_raw(t, &out));
            }
        }
        let rows: Vec<Vec<u32>> = (0..cols).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        let target = coords_raw(t, &Self::identity(t).coeffs);
        let x = linalg::solve(&fp, &rows, &target, cols)?;
        let inv = Self::from_raw(t, from_coords_raw(t, &x));
        if inv.compose(self).ok()? == Self::identity(t) {
            Some(inv)
        } else {
            None
        }
    }

    /// Matrix over F_q in the row-vector convention: row i holds the
    /// coordinates of f(basis_i) with respect to `basis`.
    pub fn matrix(&self, basis: &[Fe]) -> Result<FqMatrix> {
        let t = &self.tower;
        let coords = Coordinates::new(t, basis)?;
        let n = basis.len();
        let mut entries = Vec::with_capacity(n * n);
        for &b in basis {
            entries.extend(coords.of(self.evaluate(b)));
        }
        Ok(FqMatrix { dim: n, entries })
    }

    /// Inverse of [`LinearizedPoly::matrix`]: interpolate the unique
    /// polynomial whose matrix in `basis` is `m`.
    pub fn from_matrix(tower: &Arc<FieldTower>, basis: &[Fe], m: &FqMatrix) -> Result<LinearizedPoly> {
        let t = tower;
        let n = t.big_n() as usize;
        if basis.len() != n || m.dim != n {
            return Err(Error::BadLength {
                expected: n,
                found: basis.len(),
            });
        }
        Coordinates::new(t, basis)?;
        // Moore system: Σ_j a_j b_i^{q^j} = y_i
        let rows: Vec<Vec<Fe>> = basis
            .iter()
            .map(|&b| (0..n).map(|j| t.frobenius(b, j as i64)).collect())
            .collect();
        let rhs: Vec<Fe> = (0..n)
            .map(|i| (0..n).fold(Fe::ZERO, |acc, j| t.add(acc, t.mul(m.get(i, j), basis[j]))))
            .collect();
        let a = felin::solve(t, &rows, &rhs).ok_or(Error::DependentBasis)?;
        Ok(Self::from_raw(t, a))
    }

    /// F_p coordinates, length eN·N.
    pub fn fp_coords(&self) -> Vec<u32> {
        coords_raw(&self.tower, &self.coeffs)
    }

    pub fn from_fp_coords(tower: &Arc<FieldTower>, v: &[u32]) -> Result<LinearizedPoly> {
        let expect = (tower.big_n() * tower.prime_degree()) as usize;
        if v.len() != expect {
            return Err(Error::BadLength {
                expected: expect,
                found: v.len(),
            });
        }
        Ok(Self::from_raw(tower, from_coords_raw(tower, v)))
    }

    /// Root count of an s-step polynomial f_0X + f_1X^{q^s} + ... + f_kX^{q^{sk}}
    /// together with the norm identity that q^k roots force.
    pub fn norm_check(&self, s: u32, k: u32) -> Result<NormCheck> {
        let t = &self.tower;
        let big = t.big_n();
        if gcd(s, big) != 1 {
            return Err(Error::BadStep { s, modulus: big });
        }
        if k >= big {
            return Err(Error::BadK { k, min: 0, max: big - 1 });
        }
        let allowed: Vec<usize> = (0..=k).map(|i| ((s as u64 * i as u64) % big as u64) as usize).collect();
        if let Some(index) = self.support().into_iter().find(|i| !allowed.contains(i)) {
            return Err(Error::BadSupport { index });
        }
        let f0 = self.coeffs[0];
        let fk = self.coeffs[allowed[k as usize]];
        if k > 0 && fk.is_zero() {
            return Err(Error::Invalid("leading coefficient f_k must be nonzero".into()));
        }
        let root_count = self.root_count();
        let max_roots = root_count == t.q().pow(k);
        let step_norm = |x: Fe| {
            (0..big as i64).fold(Fe::ONE, |acc, i| t.mul(acc, t.frobenius(x, s as i64 * i)))
        };
        let step_norm_matches = step_norm(f0) == t.norm(f0) && step_norm(fk) == t.norm(fk);
        let norms_equal = (k > 0).then(|| {
            let sign = if (k as u64 * big as u64) % 2 == 0 { Fe::ONE } else { t.neg(Fe::ONE) };
            step_norm(f0) == t.mul(sign, step_norm(fk))
        });
        Ok(NormCheck {
            root_count,
            max_roots,
            norms_equal,
            step_norm_matches,
        })
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coordinates over F_q with respect to a basis, via its trace-dual basis.
pub(crate) struct Coordinates<'a> {
    tower: &'a FieldTower,
    dual: Vec<Fe>,
}

impl<'a> Coordinates<'a> {
    pub(crate) fn new(t: &'a FieldTower, basis: &[Fe]) -> Result<Self> {
        let n = t.big_n() as usize;
        if basis.len() != n {
            return Err(Error::DependentBasis);
        }
        let gram: Vec<Vec<Fe>> = basis
            .iter()
            .map(|&a| basis.iter().map(|&b| t.trace_to_base(t.mul(a, b))).collect())
            .collect();
        let inv = felin::invert(t, &gram).ok_or(Error::DependentBasis)?;
        let dual = (0..n)
            .map(|j| (0..n).fold(Fe::ZERO, |acc, k| t.add(acc, t.mul(inv[k][j], basis[k]))))
            .collect();
        Ok(Coordinates { tower: t, dual })
    }

    pub(crate) fn of(&self, y: Fe) -> Vec<Fe> {
        let t = self.tower;
        self.dual.iter().map(|&d| t.trace_to_base(t.mul(y, d))).collect()
    }
}

/// A square matrix with entries in F_q (stored as field elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    dim: usize,
    entries: Vec<Fe>,
}

impl FqMatrix {
    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let dim = rows.len();
        FqMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Fe::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Fe::ONE;
        }
        FqMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Fe>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn add(&self, other: &FqMatrix, t: &FieldTower) -> FqMatrix {
        FqMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| t.add(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &FqMatrix, t: &FieldTower) -> FqMatrix {
        let n = self.dim;
        let mut entries = vec![Fe::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(Fe::ZERO, |acc, k| t.add(acc, t.mul(self.get(i, k), other.get(k, j))));
            }
        }
        FqMatrix { dim: n, entries }
    }

    pub fn rank(&self, t: &FieldTower) -> usize {
        felin::rank(t, &self.rows())
    }
}

/// Gaussian elimination with entries in F_{q^N}.
pub(crate) mod felin {
    use crate::field::{Fe, FieldTower};

    fn eliminate(t: &FieldTower, m: &mut Vec<Vec<Fe>>, cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.len() {
                break;
            }
            let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, sel);
            let iv = t.inv(m[r][c]).unwrap();
            for v in m[r].iter_mut() {
                *v = t.mul(*v, iv);
            }
            let pr = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pr) {
                        *x = t.sub(*x, t.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(t: &FieldTower, rows: &[Vec<Fe>]) -> usize {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = rows.to_vec();
        eliminate(t, &mut m, cols).len()
    }

    pub fn solve(t: &FieldTower, rows: &[Vec<Fe>], rhs: &[Fe]) -> Option<Vec<Fe>> {
        let n = rows.len();
        let mut m: Vec<Vec<Fe>> = rows
            .iter()
            .zip(rhs)
            .map(|(r, &b)| {
                let mut v = r.clone();
                v.push(b);
                v
            })
            .collect();
        let pivots = eliminate(t, &mut m, n);
        if pivots.len() < n {
            return None;
        }
        Some(m.iter().map(|r| r[n]).collect())
    }

    pub fn invert(t: &FieldTower, rows: &[Vec<Fe>]) -> Option<Vec<Vec<Fe>>> {
        let n = rows.len();
        let mut m: Vec<Vec<Fe>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
                v
            })
            .collect();
        let pivots = eliminate(t, &mut m, n);
        if pivots.len() < n {
            return None;
        }
        Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}
