//! Finite-dimensional Lie algebras given by structure constants: brackets,
//! adjoint operators, centralizers, descending central series, ad-rank
//! strata over prime fields, and the intrinsic modality derived from them.

use crate::exact::{
    echelon_basis, kernel_basis, parse_rat, rat_to_string, ExactError, Field, Fp, Mat, RatFun,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("elements have different parent algebras")]
    ParentMismatch,
    #[error("algebra validation failed: {0}")]
    Validation(String),
    #[error("{0} is not nilpotent: central series does not reach zero")]
    NotNilpotent(String),
    #[error("enumeration budget exceeded: needs {needed} elements, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("ambiguous stratum dimension fit for n={0}: counts inconsistent across primes")]
    AmbiguousFit(usize),
    #[error("bad structure-constant file: {0}")]
    Format(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Coefficient-domain descriptor of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldKind {
    Q,
    Fp { p: u64 },
}

/// Context that embeds the rational structure constants into a concrete
/// coefficient field, so the same algebra can be worked with over Q, over
/// F_p, or over rational functions in certificate parameters.
pub trait FieldCtx {
    type El: Field;
    fn from_rat(&self, r: &BigRational) -> Self::El;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
}

pub struct QCtx;
impl FieldCtx for QCtx {
    type El = BigRational;
    fn from_rat(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
}

pub struct FpCtx(pub u64);
impl FieldCtx for FpCtx {
    type El = Fp;
    fn from_rat(&self, r: &BigRational) -> Fp {
        let num = Fp::reduce(self.0, i64::try_from(r.numer().clone()).expect("small constant"));
        let den = Fp::reduce(self.0, i64::try_from(r.denom().clone()).expect("small constant"));
        num.mul(&den.inv().expect("constant denominator invertible mod p"))
    }
    fn zero(&self) -> Fp {
        Fp::reduce(self.0, 0)
    }
    fn one(&self) -> Fp {
        Fp::reduce(self.0, 1)
    }
}

pub struct RatFunCtx;
impl FieldCtx for RatFunCtx {
    type El = RatFun;
    fn from_rat(&self, r: &BigRational) -> RatFun {
        RatFun::from_rat(r.clone())
    }
    fn zero(&self) -> RatFun {
        RatFun::from_rat(BigRational::zero())
    }
    fn one(&self) -> RatFun {
        RatFun::from_rat(BigRational::one())
    }
}

/// Finite-dimensional Lie algebra over Q or F_p, presented by structure
/// constants on a distinguished basis. Immutable after construction.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    basis: Vec<String>,
    field: FieldKind,
    /// Sparse brackets for i < j only; antisymmetry is synthesized.
    sc: BTreeMap<(usize, usize), Vec<(usize, BigRational)>>,
}

impl LieAlgebra {
    /// Build and validate (antisymmetry by construction, Jacobi by scan
    /// over the declared field).
    pub fn new(
        name: &str,
        basis: Vec<String>,
        field: FieldKind,
        brackets: Vec<(usize, usize, Vec<(usize, BigRational)>)>,
    ) -> Result<Arc<Self>, LieError> {
        let dim = basis.len();
        let mut sc = BTreeMap::new();
        for (i, j, coords) in brackets {
            if i >= j || j >= dim {
                return Err(LieError::Format(format!("bad bracket index pair ({i},{j})")));
            }
            let coords: Vec<(usize, BigRational)> = {
                let mut m: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, c) in coords {
                    if k >= dim {
                        return Err(LieError::Format(format!("bracket target {k} out of range")));
                    }
                    *m.entry(k).or_insert_with(BigRational::zero) += c;
                }
                m.into_iter().filter(|(_, c)| !num_traits::Zero::is_zero(c)).collect()
            };
            if !coords.is_empty() {
                sc.insert((i, j), coords);
            }
        }
        let alg = LieAlgebra { name: name.to_string(), dim, basis, field, sc };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }
    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// Structure constants of [b_i, b_j] including the synthesized i >= j
    /// cases.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, BigRational)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.sc.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.sc
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        }
    }

    fn validate(&self) -> Result<(), LieError> {
        match self.field {
            FieldKind::Q => self.validate_in(&QCtx),
            FieldKind::Fp { p } => self.validate_in(&FpCtx(p)),
        }
    }

    fn validate_in<C: FieldCtx>(&self, ctx: &C) -> Result<(), LieError> {
        // Antisymmetry: c(j,i) = -c(i,j) and c(i,i) = 0 by direct scan of
        // the synthesized table.
        for i in 0..self.dim {
            if !self.bracket_basis(i, i).is_empty() {
                return Err(LieError::Validation(format!("[b{i},b{i}] nonzero")));
            }
            for j in 0..self.dim {
                let ij = self.bracket_basis(i, j);
                let ji = self.bracket_basis(j, i);
                let neg: Vec<(usize, BigRational)> = ji.iter().map(|(k, c)| (*k, -c)).collect();
                if ij != neg {
                    return Err(LieError::Validation(format!("antisymmetry fails at ({i},{j})")));
                }
            }
        }
        // Jacobi over the declared field, exhaustive in the basis.
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut acc = vec![ctx.zero(); self.dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        // [b_a, [b_b, b_c]]
                        for (m, cm) in self.bracket_basis(b, c) {
                            for (t, ct) in self.bracket_basis(a, m) {
                                let term = ctx.from_rat(&cm).mul(&ctx.from_rat(&ct));
                                acc[t] = acc[t].add(&term);
                            }
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::Validation(format!(
                            "Jacobi fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants over any field the
    /// constants embed into.
    pub fn bracket_in<C: FieldCtx>(&self, ctx: &C, x: &[C::El], y: &[C::El]) -> Vec<C::El> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![ctx.zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j) {
                    let term = x[i].mul(&y[j]).mul(&ctx.from_rat(&c));
                    out[k] = out[k].add(&term);
                }
            }
        }
        out
    }

    /// Matrix of ad(x): column j holds [x, b_j] in basis coordinates.
    pub fn ad_matrix<C: FieldCtx>(&self, ctx: &C, x: &[C::El]) -> Mat<C::El> {
        let mut m = Mat::zero(self.dim, self.dim, &ctx.zero());
        for j in 0..self.dim {
            for i in 0..self.dim {
                if x[i].is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j) {
                    let v = m.at(k, j).add(&x[i].mul(&ctx.from_rat(&c)));
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    /// C_sub(x): kernel of ad(x) restricted to the span of `sub` (ambient
    /// coordinates; defaults to the whole algebra). Returned as a
    /// canonical echelonized basis of ambient coordinate vectors.
    pub fn centralizer_in<C: FieldCtx>(
        &self,
        ctx: &C,
        x: &[C::El],
        sub: Option<&[Vec<C::El>]>,
    ) -> Vec<Vec<C::El>> {
        let ad = self.ad_matrix(ctx, x);
        match sub {
            None => echelon_basis(&kernel_basis(&ad)),
            Some(basis) => {
                if basis.is_empty() {
                    return Vec::new();
                }
                // Columns = images of the sub-basis vectors under ad(x).
                let mut m = Mat::zero(self.dim, basis.len(), &ctx.zero());
                for (j, v) in basis.iter().enumerate() {
                    let img = ad.apply(v);
                    for (i, e) in img.into_iter().enumerate() {
                        m.set(i, j, e);
                    }
                }
                let ker = kernel_basis(&m);
                let ambient: Vec<Vec<C::El>> = ker
                    .iter()
                    .map(|coefs| {
                        let mut v = vec![ctx.zero(); self.dim];
                        for (j, c) in coefs.iter().enumerate() {
                            for (i, b) in basis[j].iter().enumerate() {
                                v[i] = v[i].add(&c.mul(b));
                            }
                        }
                        v
                    })
                    .collect();
                echelon_basis(&ambient)
            }
        }
    }

    /// Descending central series u^1 = g, u^(n+1) = [g, u^n], as
    /// echelonized bases over the declared field. Errors if the series
    /// fails to reach zero within dim steps.
    pub fn central_series(&self) -> Result<Vec<Vec<Vec<BigRational>>>, LieError> {
        match self.field {
            FieldKind::Q => self.central_series_in(&QCtx),
            FieldKind::Fp { p } => {
                // Compute over F_p, report as 0..p-1 rationals.
                let series = self.central_series_in(&FpCtx(p))?;
                Ok(series
                    .into_iter()
                    .map(|basis| {
                        basis
                            .into_iter()
                            .map(|v| {
                                v.into_iter()
                                    .map(|e| BigRational::from_integer(e.value().into()))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect())
            }
        }
    }

    pub fn central_series_in<C: FieldCtx>(
        &self,
        ctx: &C,
    ) -> Result<Vec<Vec<Vec<C::El>>>, LieError> {
        let full: Vec<Vec<C::El>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![ctx.zero(); self.dim];
                v[i] = ctx.one();
                v
            })
            .collect();
        let mut series = vec![full.clone()];
        for _ in 0..self.dim {
            let cur = series.last().unwrap();
            if cur.is_empty() {
                return Ok(series);
            }
            let mut span = Vec::new();
            for g in &full {
                for v in cur {
                    let b = self.bracket_in(ctx, g, v);
                    if b.iter().any(|x| !x.is_zero()) {
                        span.push(b);
                    }
                }
            }
            series.push(echelon_basis(&span));
        }
        if series.last().unwrap().is_empty() {
            Ok(series)
        } else {
            Err(LieError::NotNilpotent(self.name.clone()))
        }
    }
}

/// One ad-rank stratum of an F_p census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    /// ad-rank of the stratum.
    pub n: usize,
    /// Number of F_p points in the stratum.
    pub count: u128,
    /// Exact stratum dimension when externally known; -1 marks empty.
    pub dim: Option<i64>,
    /// One stratum member, as canonical 0..p-1 coordinates.
    pub witness: Option<Vec<u64>>,
}

/// Dense integer structure-constant cube for fast F_p enumeration.
pub struct ScCube {
    dim: usize,
    /// c[i][j][k] as flat i*dim*dim + j*dim + k.
    c: Vec<i64>,
}

impl ScCube {
    pub fn new(alg: &LieAlgebra) -> Self {
        let d = alg.dim();
        let mut c = vec![0i64; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for (k, r) in alg.bracket_basis(i, j) {
                    assert!(r.denom().is_one(), "integer structure constants required");
                    c[(i * d + j) * d + k] =
                        i64::try_from(r.numer().clone()).expect("small structure constant");
                }
            }
        }
        ScCube { dim: d, c }
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> i64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    /// ad(x) over F_p as a dense row-major u64 matrix (rows = output
    /// coordinate, cols = input basis vector).
    pub fn ad_mod_p(&self, x: &[u64], p: u64) -> Vec<u64> {
        let d = self.dim;
        let mut m = vec![0u64; d * d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                let base = (i * d + j) * d;
                for k in 0..d {
                    let c = self.c[base + k];
                    if c != 0 {
                        let cp = c.rem_euclid(p as i64) as u64;
                        m[k * d + j] = (m[k * d + j] + x[i] * cp) % p;
                    }
                }
            }
        }
        m
    }
}

/// Rank of a dense row-major matrix over F_p.
pub fn rank_mod_p(m: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| m[i * cols + c] % p != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(rank * cols + j, pr * cols + j);
        }
        let inv = mod_inv(m[rank * cols + c] % p, p);
        for j in 0..cols {
            m[rank * cols + j] = m[rank * cols + j] % p * inv % p;
        }
        for i in 0..rows {
            if i != rank {
                let f = m[i * cols + c] % p;
                if f != 0 {
                    for j in 0..cols {
                        m[i * cols + j] =
                            (m[i * cols + j] + (p - f) * m[rank * cols + j]) % p;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat inverse; p prime, a nonzero mod p.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Enumerate all of g(F_p) in odometer order (last coordinate fastest)
/// and bin by ad-rank.
pub fn strata_census(alg: &LieAlgebra, budget: u128) -> Result<Vec<StratumReport>, LieError> {
    let FieldKind::Fp { p } = alg.field() else {
        return Err(LieError::Validation("strata census requires an F_p algebra".into()));
    };
    let d = alg.dim();
    let total = (p as u128).pow(d as u32);
    if total > budget {
        return Err(LieError::BudgetExceeded { needed: total, budget });
    }
    let cube = ScCube::new(alg);
    let mut counts = vec![0u128; d + 1];
    let mut witness: Vec<Option<Vec<u64>>> = vec![None; d + 1];
    let mut x = vec![0u64; d];
    loop {
        let mut ad = cube.ad_mod_p(&x, p);
        let r = rank_mod_p(&mut ad, d, d, p);
        counts[r] += 1;
        if witness[r].is_none() {
            witness[r] = Some(x.clone());
        }
        // Odometer step on the last coordinate.
        let mut i = d;
        loop {
            if i == 0 {
                // Full wrap: done.
                let reports = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(n, &count)| StratumReport {
                        n,
                        count,
                        dim: None,
                        witness: witness[n].clone(),
                    })
                    .collect();
                return Ok(reports);
            }
            i -= 1;
            x[i] += 1;
            if x[i] < p {
                break;
            }
            x[i] = 0;
        }
    }
}

/// mod(g) from exact stratum dimensions: max over nonempty strata of
/// (dim stratum - n).
pub fn modality_from_exact_dims(strata: &[(usize, i64)]) -> i64 {
    strata
        .iter()
        .filter(|(_, d)| *d >= 0)
        .map(|(n, d)| d - *n as i64)
        .max()
        .unwrap_or(0)
}

/// mod(g) from point counts at two or more primes: each stratum dimension
/// is fitted as the least d with count <= p^d; the fit must agree at
/// every prime or the stratum is flagged as ambiguous.
pub fn modality_from_strata(per_prime: &[(u64, Vec<StratumReport>)]) -> Result<i64, LieError> {
    assert!(per_prime.len() >= 2, "need counts at two or more primes");
    let mut ns: Vec<usize> = per_prime
        .iter()
        .flat_map(|(_, reps)| reps.iter().map(|r| r.n))
        .collect();
    ns.sort_unstable();
    ns.dedup();
    let mut best = i64::MIN;
    for n in ns {
        let mut fit: Option<i64> = None;
        for (p, reps) in per_prime {
            let count = reps.iter().find(|r| r.n == n).map_or(0, |r| r.count);
            if count == 0 {
                return Err(LieError::AmbiguousFit(n));
            }
            let mut d = 0i64;
            let mut acc = 1u128;
            while acc < count {
                acc *= *p as u128;
                d += 1;
            }
            match fit {
                None => fit = Some(d),
                Some(f) if f != d => return Err(LieError::AmbiguousFit(n)),
                _ => {}
            }
        }
        best = best.max(fit.unwrap() - n as i64);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Structure-constant file format (JSON).

#[derive(Debug, Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    coords: Vec<(usize, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraJson {
    name: String,
    dim: usize,
    field: FieldKind,
    basis: Vec<String>,
    brackets: Vec<BracketJson>,
}

/// Parse the JSON structure-constant format; only pairs i < j are stored,
/// antisymmetry is synthesized and Jacobi validated on load.
pub fn load_algebra_json(text: &str) -> Result<Arc<LieAlgebra>, LieError> {
    let a: AlgebraJson =
        serde_json::from_str(text).map_err(|e| LieError::Format(e.to_string()))?;
    if a.basis.len() != a.dim {
        return Err(LieError::Format("dim does not match basis length".into()));
    }
    let mut brackets = Vec::new();
    for b in a.brackets {
        let coords = b
            .coords
            .iter()
            .map(|(k, s)| {
                parse_rat(s)
                    .map(|r| (*k, r))
                    .ok_or_else(|| LieError::Format(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        brackets.push((b.i, b.j, coords));
    }
    LieAlgebra::new(&a.name, a.basis, a.field, brackets)
}

/// Emit the canonical JSON form (brackets sorted by (i,j), coordinates by
/// target index).
pub fn save_algebra_json(alg: &LieAlgebra) -> String {
    let brackets = alg
        .sc
        .iter()
        .map(|((i, j), coords)| BracketJson {
            i: *i,
            j: *j,
            coords: coords.iter().map(|(k, c)| (*k, rat_to_string(c))).collect(),
        })
        .collect();
    let a = AlgebraJson {
        name: alg.name.clone(),
        dim: alg.dim,
        field: alg.field,
        basis: alg.basis.clone(),
        brackets,
    };
    serde_json::to_string_pretty(&a).expect("serializable")
}

// ---------------------------------------------------------------------------
// Bundled non-graded algebras.

/// Heisenberg algebra: [x, y] = z.
pub fn heisenberg(field: FieldKind) -> Arc<LieAlgebra> {
    LieAlgebra::new(
        "heisenberg",
        vec!["x".into(), "y".into(), "z".into()],
        field,
        vec![(0, 1, vec![(2, BigRational::one())])],
    )
    .expect("valid")
}

/// Abelian algebra of dimension n.
pub fn abelian(n: usize, field: FieldKind) -> Arc<LieAlgebra> {
    LieAlgebra::new(
        "abelian",
        (0..n).map(|i| format!("a{i}")).collect(),
        field,
        vec![],
    )
    .expect("valid")
}

/// Witt algebra W(1) over F_p: basis e_{-1},...,e_{p-2} with
/// [e_i, e_j] = (j-i) e_{i+j} (zero when i+j is out of range).
/// `start` selects the filtration subalgebra W(1)_start:
/// -1 = W(1) itself, 0 = its Borel, 1 = its nilpotent radical.
pub fn witt_from(p: u64, start: i64) -> Arc<LieAlgebra> {
    assert!(p >= 5, "Witt chain needs p >= 5");
    assert!((-1..=1).contains(&start));
    let top = p as i64 - 2;
    let idx: Vec<i64> = (start..=top).collect();
    let basis: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
    let name = match start {
        -1 => format!("witt:{p}"),
        0 => format!("witt-b:{p}"),
        _ => format!("witt-u:{p}"),
    };
    let mut brackets = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate().skip(a + 1) {
            let s = i + j;
            if s >= start && s <= top {
                let k = (s - start) as usize;
                brackets.push((a, b, vec![(k, BigRational::from_integer((j - i).into()))]));
            }
        }
    }
    LieAlgebra::new(&name, basis, FieldKind::Fp { p }, brackets).expect("valid Witt table")
}

/// Coordinates of an element over F_p lifted to balanced-symmetric
/// rationals, used when transporting F_p witnesses to Q.
pub fn balanced_lift(p: u64, coords: &[u64]) -> Vec<BigRational> {
    coords
        .iter()
        .map(|&v| BigRational::from_integer(Fp::reduce(p, v as i64).balanced_lift().into()))
        .collect()
}

/// Is (ad x)^k = 0 over F_p?
pub fn ad_power_zero(cube: &ScCube, x: &[u64], p: u64, k: u32) -> bool {
    let d = x.len();
    let ad = cube.ad_mod_p(x, p);
    let mut acc = ad.clone();
    for _ in 1..k {
        let mut next = vec![0u64; d * d];
        for i in 0..d {
            for l in 0..d {
                let a = acc[i * d + l];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    next[i * d + j] = (next[i * d + j] + a * ad[l * d + j]) % p;
                }
            }
        }
        acc = next;
        if acc.iter().all(|&v| v == 0) {
            return true;
        }
    }
    acc.iter().all(|&v| v == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    fn qv(alg: &LieAlgebra, pairs: &[(usize, i64)]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); alg.dim()];
        for &(i, c) in pairs {
            v[i] = qi(c);
        }
        v
    }

    #[test]
    fn heisenberg_bracket_and_centralizer() {
        let h = heisenberg(FieldKind::Q);
        let x = qv(&h, &[(0, 1)]);
        let y = qv(&h, &[(1, 1)]);
        assert_eq!(h.bracket_in(&QCtx, &x, &y), qv(&h, &[(2, 1)]));
        // C(x) = span{x, z}
        let c = h.centralizer_in(&QCtx, &x, None);
        assert_eq!(c.len(), 2);
        // C(0) = everything
        let c0 = h.centralizer_in(&QCtx, &qv(&h, &[]), None);
        assert_eq!(c0.len(), 3);
    }

    #[test]
    fn witt_bracket_convention() {
        let w = witt_from(5, -1);
        // [e1, e2] = (2-1) e3
        let i1 = w.basis_index("e1").unwrap();
        let i2 = w.basis_index("e2").unwrap();
        let i3 = w.basis_index("e3").unwrap();
        let ctx = FpCtx(5);
        let mut x = vec![ctx.zero(); w.dim()];
        x[i1] = ctx.one();
        let mut y = vec![ctx.zero(); w.dim()];
        y[i2] = ctx.one();
        let b = w.bracket_in(&ctx, &x, &y);
        assert!(b[i3].is_one());
        assert_eq!(b.iter().filter(|v| !v.is_zero()).count(), 1);
    }

    #[test]
    fn central_series_heisenberg_and_abelian() {
        let h = heisenberg(FieldKind::Q);
        let s = h.central_series().unwrap();
        let dims: Vec<usize> = s.iter().map(|b| b.len()).collect();
        assert_eq!(dims, vec![3, 1, 0]);
        let a = abelian(4, FieldKind::Q);
        let s = a.central_series().unwrap();
        assert_eq!(s.iter().map(|b| b.len()).collect::<Vec<_>>(), vec![4, 0]);
    }

    #[test]
    fn central_series_rejects_non_nilpotent() {
        // sl2-like: the Witt Borel over F_5 is solvable but not nilpotent.
        let b = witt_from(5, 0);
        assert!(matches!(b.central_series(), Err(LieError::NotNilpotent(_))));
    }

    #[test]
    fn heisenberg_f2_strata() {
        let h = heisenberg(FieldKind::Fp { p: 2 });
        let reps = strata_census(&h, 1 << 20).unwrap();
        let by_n: BTreeMap<usize, u128> = reps.iter().map(|r| (r.n, r.count)).collect();
        assert_eq!(by_n.get(&0), Some(&2));
        assert_eq!(by_n.get(&1), Some(&6));
    }

    #[test]
    fn abelian_strata_single() {
        let a = abelian(2, FieldKind::Fp { p: 3 });
        let reps = strata_census(&a, 1 << 20).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].n, 0);
        assert_eq!(reps[0].count, 9);
    }

    #[test]
    fn witt_stratum_top_count() {
        // W(1), p=5: the rank-4 stratum is W(1) minus W(1)_1, 5^5 - 5^3
        // points.
        let w = witt_from(5, -1);
        let reps = strata_census(&w, 1 << 24).unwrap();
        let top = reps.iter().find(|r| r.n == 4).expect("top stratum");
        assert_eq!(top.count, 3000);
        let total: u128 = reps.iter().map(|r| r.count).sum();
        assert_eq!(total, 5u128.pow(5));
    }

    #[test]
    fn budget_enforced() {
        let w = witt_from(7, -1);
        assert!(matches!(
            strata_census(&w, 100),
            Err(LieError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn modality_abelian() {
        assert_eq!(modality_from_exact_dims(&[(0, 4)]), 4);
    }

    #[test]
    fn centralizer_dim_complements_ad_rank() {
        let h = heisenberg(FieldKind::Q);
        for x in [qv(&h, &[(0, 1), (2, 1)]), qv(&h, &[(1, 2)]), qv(&h, &[(2, 1)])] {
            let ad = h.ad_matrix(&QCtx, &x);
            let c = h.centralizer_in(&QCtx, &x, None);
            assert_eq!(c.len() + ad.rank(), h.dim());
            for y in &c {
                assert!(h.bracket_in(&QCtx, &x, y).iter().all(|v| Field::is_zero(v)));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let h = heisenberg(FieldKind::Q);
        let s = save_algebra_json(&h);
        let back = load_algebra_json(&s).unwrap();
        assert_eq!(save_algebra_json(&back), s);
        let w = witt_from(5, -1);
        let s = save_algebra_json(&w);
        let back = load_algebra_json(&s).unwrap();
        assert_eq!(save_algebra_json(&back), s);
    }

    #[test]
    fn jacobi_violation_rejected() {
        // [a,b]=a, [b,c]=b, [a,c]=0: the (a,b,c) Jacobi sum is a, nonzero.
        let r = LieAlgebra::new(
            "bad",
            vec!["a".into(), "b".into(), "c".into()],
            FieldKind::Q,
            vec![(0, 1, vec![(0, qi(1))]), (1, 2, vec![(1, qi(1))])],
        );
        assert!(matches!(r, Err(LieError::Validation(_))));
    }
}
