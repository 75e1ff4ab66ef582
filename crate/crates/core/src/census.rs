//! Finite-field point counting: the numerical oracle.
//!
//! Counts |C2(g)(F_q)| as a centralizer sum over the fibration pr1, derives
//! |O2| (independent commuting pairs) and |A(2,u)| (abelian planes, via the
//! free GL2 action), estimates dimensions by exact interpolation or slope,
//! crosschecks the orbit census against the point count, and runs the Witt
//! chain checks (kernel table, strata dimensions, modality, nilpotent cone).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{rat_to_string, UPoly};
use crate::liecore::{
    ad_power_zero, rank_mod_p, FieldKind, LieAlgebra, LieError, ScCube,
};
use crate::orbits::{bfs_census, CensusPartition};
use crate::rootsys::RootDatum;

fn val(msg: impl Into<String>) -> LieError {
    LieError::Validation(msg.into())
}

/// q^e as an exact integer.
pub fn qpow(q: u64, e: usize) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

fn check_field(alg: &LieAlgebra, q: u64) -> Result<(), LieError> {
    crate::exact::Fp::new(q, 0)?;
    if let FieldKind::Fp { p } = alg.field() {
        if p != q {
            return Err(val(format!("algebra is defined over F_{p}, not F_{q}")));
        }
    }
    Ok(())
}

/// Odometer enumeration over F_q^dim; calls f on every coordinate vector.
fn enumerate_fq(dim: usize, q: u64, mut f: impl FnMut(&[u64])) {
    let mut x = vec![0u64; dim];
    loop {
        f(&x);
        let mut i = dim;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < q {
                break;
            }
            x[i] = 0;
        }
    }
}

/// |C2(g)(F_q)|: exact count of commuting pairs, as the centralizer sum
/// Sum_x q^(dim ker ad x).
pub fn count_c2(alg: &LieAlgebra, q: u64, budget: u128) -> Result<BigInt, LieError> {
    check_field(alg, q)?;
    let d = alg.dim();
    let total = (q as u128).pow(d as u32);
    if total > budget {
        return Err(LieError::BudgetExceeded { needed: total, budget });
    }
    let cube = ScCube::new(alg);
    let powers: Vec<BigInt> = (0..=d).map(|e| qpow(q, e)).collect();
    let mut acc = BigInt::from(0);
    enumerate_fq(d, q, |x| {
        let mut ad = cube.ad_mod_p(x, q);
        let r = rank_mod_p(&mut ad, d, d, q);
        acc += &powers[d - r];
    });
    Ok(acc)
}

/// |C2(g)(F_q)| by brute-force pair enumeration; the independent check of
/// the centralizer-sum formula for small algebras.
pub fn count_c2_pairs(alg: &LieAlgebra, q: u64, budget: u128) -> Result<BigInt, LieError> {
    check_field(alg, q)?;
    let d = alg.dim();
    let total = (q as u128).pow(2 * d as u32);
    if total > budget {
        return Err(LieError::BudgetExceeded { needed: total, budget });
    }
    let cube = ScCube::new(alg);
    let mut acc = BigInt::from(0);
    enumerate_fq(d, q, |x| {
        enumerate_fq(d, q, |y| {
            let mut commutes = true;
            'outer: for k in 0..d {
                let mut z = 0u64;
                for i in 0..d {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..d {
                        if y[j] == 0 {
                            continue;
                        }
                        let c = cube.c(i, j, k).rem_euclid(q as i64) as u64;
                        if c != 0 {
                            z = (z + x[i] * y[j] % q * c) % q;
                        }
                    }
                }
                if z != 0 {
                    commutes = false;
                    break 'outer;
                }
            }
            if commutes {
                acc += 1;
            }
        });
    });
    Ok(acc)
}

/// Number of commuting pairs (x, y) spanning at most one dimension:
/// q^n (x = 0, y free) plus q(q^n - 1) (x nonzero, y on the line kx).
pub fn dependent_pairs(dim: usize, q: u64) -> BigInt {
    let qn = qpow(q, dim);
    &qn + BigInt::from(q) * (&qn - 1)
}

/// |O2(g)(F_q)|: commuting pairs spanning a 2-plane.
pub fn count_o2(alg: &LieAlgebra, q: u64, budget: u128) -> Result<BigInt, LieError> {
    Ok(count_c2(alg, q, budget)? - dependent_pairs(alg.dim(), q))
}

/// |A(2,g)(F_q)|: abelian planes, as |O2| / |GL2(F_q)|. The GL2 action on
/// ordered bases of a fixed plane is simply transitive, so the quotient
/// must be integral; a remainder is a counting bug.
pub fn count_a2(alg: &LieAlgebra, q: u64, budget: u128) -> Result<BigInt, LieError> {
    let o2 = count_o2(alg, q, budget)?;
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let gl2 = (&q2 - 1) * (&q2 - &q);
    let (quot, rem) = num_integer::Integer::div_rem(&o2, &gl2);
    if !rem.is_zero() {
        return Err(val(format!(
            "|O2| = {o2} is not divisible by |GL2(F_q)| = {gl2}"
        )));
    }
    if quot.is_negative() {
        return Err(val("negative abelian-plane count"));
    }
    Ok(quot)
}

// ---------------------------------------------------------------------------
// Interpolation and dimension estimation.

/// The unique polynomial of degree < points.len() through the given
/// (q, count) points, coefficients low to high (Lagrange form).
pub fn interpolate(points: &[(u64, BigInt)]) -> Vec<BigRational> {
    let xs: Vec<BigRational> =
        points.iter().map(|(q, _)| BigRational::from_integer((*q).into())).collect();
    let mut acc = UPoly::zero();
    for (i, (_, c)) in points.iter().enumerate() {
        let mut term = UPoly::constant(BigRational::from_integer(c.clone()));
        for (j, xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            // term *= (X - x_j) / (x_i - x_j)
            let lin = UPoly::from_coeffs(vec![-xj.clone(), BigRational::from_integer(1.into())]);
            let denom = &xs[i] - xj;
            term = term.mul(&lin).scale(&denom.recip());
        }
        acc = acc.add(&term);
    }
    acc.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimEstimate {
    pub dim: i64,
    /// "interpolation" (exact) or "slope-only" (advisory, +/- 1).
    pub method: String,
    pub uncertainty: i64,
    /// Interpolated coefficients, low to high, when exact.
    pub poly: Option<Vec<String>>,
}

/// Estimate the dimension underlying exact counts at increasing primes.
/// With at least expected_degree + 1 points the unique interpolating
/// polynomial is computed and its degree reported; otherwise a log-ratio
/// slope through the last two points with declared uncertainty 1.
pub fn dim_estimate(
    points: &[(u64, BigInt)],
    expected_degree: Option<usize>,
) -> Result<DimEstimate, LieError> {
    if points.len() < 2 {
        return Err(val("dimension estimate needs counts at two or more primes"));
    }
    if points.iter().any(|(_, c)| c.is_zero() || c.is_negative()) {
        return Err(val("dimension estimate needs positive counts"));
    }
    let enough = expected_degree.map_or(true, |d| points.len() >= d + 1);
    if enough {
        let coeffs = interpolate(points);
        let deg = coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |d| d as i64);
        return Ok(DimEstimate {
            dim: deg,
            method: "interpolation".into(),
            uncertainty: 0,
            poly: Some(coeffs.iter().map(rat_to_string).collect()),
        });
    }
    let (q1, c1) = &points[points.len() - 2];
    let (q2, c2) = &points[points.len() - 1];
    let slope = (c2.to_f64().unwrap().ln() - c1.to_f64().unwrap().ln())
        / ((*q2 as f64).ln() - (*q1 as f64).ln());
    Ok(DimEstimate {
        dim: slope.round() as i64,
        method: "slope-only".into(),
        uncertainty: 1,
        poly: None,
    })
}

// ---------------------------------------------------------------------------
// Census reports.

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusReport {
    pub algebra: String,
    pub primes: Vec<u64>,
    /// Counts as decimal strings (arbitrary precision).
    pub c2: Vec<String>,
    pub dependent: Vec<String>,
    pub o2: Vec<String>,
    pub a2u: Vec<String>,
    pub poly: Option<Vec<String>>,
    pub dim: i64,
    pub method: String,
}

/// Full counting report for one algebra over a list of primes.
pub fn census_report(
    alg: &LieAlgebra,
    primes: &[u64],
    budget: u128,
    expected_degree: Option<usize>,
) -> Result<CensusReport, LieError> {
    if primes.is_empty() {
        return Err(val("census needs at least one prime"));
    }
    let mut c2 = Vec::new();
    let mut dependent = Vec::new();
    let mut o2 = Vec::new();
    let mut a2u = Vec::new();
    let mut points = Vec::new();
    for &q in primes {
        let c = count_c2(alg, q, budget)?;
        let dep = dependent_pairs(alg.dim(), q);
        let o = &c - &dep;
        let a = count_a2(alg, q, budget)?;
        points.push((q, c.clone()));
        c2.push(c.to_string());
        dependent.push(dep.to_string());
        o2.push(o.to_string());
        a2u.push(a.to_string());
    }
    let (dim, method, poly, uncertainty);
    if primes.len() >= 2 {
        let est = dim_estimate(&points, expected_degree)?;
        dim = est.dim;
        method = est.method;
        poly = est.poly;
        uncertainty = est.uncertainty;
    } else {
        dim = -1;
        method = "insufficient-primes".into();
        poly = None;
        uncertainty = 0;
    }
    let _ = uncertainty;
    Ok(CensusReport {
        algebra: alg.name().to_string(),
        primes: primes.to_vec(),
        c2,
        dependent,
        o2,
        a2u,
        poly,
        dim,
        method,
    })
}

/// Orbit-decomposition identity: the orbit census and the centralizer sum
/// must agree, Sum over F_q-orbits of (size * q^cent_u) = |C2(u)(F_q)|.
/// Returns the common count.
pub fn strata_oracle_crosscheck(
    datum: &RootDatum,
    part: &CensusPartition,
    budget: u128,
) -> Result<BigInt, LieError> {
    let q = part.q;
    let direct = count_c2(datum.u_algebra(), q, budget)?;
    let mut from_orbits = BigInt::from(0);
    for orbit in &part.orbits {
        from_orbits += BigInt::from(orbit.size) * qpow(q, orbit.cent_u_fq);
    }
    if from_orbits != direct {
        return Err(val(format!(
            "orbit census gives {from_orbits} commuting pairs, centralizer sum gives {direct}"
        )));
    }
    Ok(direct)
}

/// Convenience wrapper running its own orbit census.
pub fn strata_oracle_crosscheck_at(
    datum: &RootDatum,
    q: u64,
    budget: u128,
) -> Result<BigInt, LieError> {
    let part = bfs_census(datum, q, budget)?;
    strata_oracle_crosscheck(datum, &part, budget)
}

// ---------------------------------------------------------------------------
// Witt chain checks.

/// One ad-rank stratum of a filtered algebra, with its exact dimension
/// read off the filtration layers it contains.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WittStratum {
    pub rank: usize,
    pub count: u128,
    pub dim: i64,
    /// dim stratum + kernel dimension: the C2 contribution.
    pub fiber_dim: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WittAlgebraReport {
    pub name: String,
    /// Filtration start: -1 the full Witt algebra, 0 its Borel, 1 its
    /// nilpotent radical.
    pub start: i64,
    pub dim: usize,
    pub strata: Vec<WittStratum>,
    pub modality: i64,
    pub dim_c2: i64,
    /// Number of irreducible components of C2 (the verified rank range).
    pub component_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WittChainReport {
    pub p: u64,
    pub algebras: Vec<WittAlgebraReport>,
    /// Elements checked against the piecewise kernel-dimension table.
    pub kernel_table_checked: u128,
    /// Dimension of the commuting variety of the p-nilpotent cone.
    pub nilcone_dim: i64,
}

/// Expected dim ker(ad x) in W(1) for x with leading filtration index i
/// (basis position a corresponds to i = a - 1); None encodes x = 0.
fn witt_expected_ker(p: u64, leading: Option<usize>) -> usize {
    match leading {
        None => p as usize,
        Some(a) => {
            let i = a as i64 - 1;
            if i <= 0 {
                1
            } else if i <= (p as i64 - 3) / 2 {
                (i + 1) as usize
            } else {
                i as usize
            }
        }
    }
}

/// The rank range of the C2 components displayed by the classification,
/// per chain member.
pub fn witt_component_range(p: u64, start: i64) -> (usize, usize) {
    let p = p as usize;
    match start {
        -1 => ((p + 1) / 2, p - 1),
        0 => ((p - 1) / 2, p - 2),
        _ => ((p - 3) / 2, p - 4),
    }
}

/// Per-leading-layer enumeration statistics of a filtered F_p algebra.
/// Layer a = elements whose first nonzero coordinate sits at basis
/// position a; its closure is a coordinate subspace of dimension dim - a.
struct LayerStats {
    /// Per layer: (count, set of observed kernel dimensions).
    layers: Vec<(u128, Vec<usize>)>,
    zero_ker: usize,
}

fn layer_census(alg: &LieAlgebra, p: u64, budget: u128) -> Result<LayerStats, LieError> {
    let d = alg.dim();
    let total = (p as u128).pow(d as u32);
    if total > budget {
        return Err(LieError::BudgetExceeded { needed: total, budget });
    }
    let cube = ScCube::new(alg);
    let mut layers: Vec<(u128, Vec<usize>)> = vec![(0, Vec::new()); d];
    let mut zero_ker = 0usize;
    enumerate_fq(d, p, |x| {
        let mut ad = cube.ad_mod_p(x, p);
        let r = rank_mod_p(&mut ad, d, d, p);
        let ker = d - r;
        match x.iter().position(|&c| c != 0) {
            None => zero_ker = ker,
            Some(a) => {
                layers[a].0 += 1;
                if !layers[a].1.contains(&ker) {
                    layers[a].1.push(ker);
                }
            }
        }
    });
    Ok(LayerStats { layers, zero_ker })
}

fn strata_from_layers(alg: &LieAlgebra, stats: &LayerStats) -> Result<Vec<WittStratum>, LieError> {
    let d = alg.dim();
    // The kernel dimension must be constant on every layer for the
    // filtration to determine the strata.
    let mut per_rank: Vec<(u128, i64)> = vec![(0, -1); d + 1]; // (count, dim)
    for (a, (count, kers)) in stats.layers.iter().enumerate() {
        if *count == 0 {
            continue;
        }
        if kers.len() != 1 {
            return Err(val(format!(
                "kernel dimension is not constant on filtration layer {a}: {kers:?}"
            )));
        }
        let rank = d - kers[0];
        let layer_dim = (d - a) as i64;
        per_rank[rank].0 += count;
        per_rank[rank].1 = per_rank[rank].1.max(layer_dim);
    }
    if stats.zero_ker != d {
        return Err(val("ad(0) is nonzero"));
    }
    per_rank[0].0 += 1;
    per_rank[0].1 = per_rank[0].1.max(0);
    Ok(per_rank
        .iter()
        .enumerate()
        .filter(|(_, (c, _))| *c > 0)
        .map(|(rank, &(count, dim))| WittStratum {
            rank,
            count,
            dim,
            fiber_dim: dim + (d - rank) as i64,
        })
        .collect())
}

fn witt_algebra_report(
    p: u64,
    start: i64,
    budget: u128,
) -> Result<WittAlgebraReport, LieError> {
    let alg = crate::liecore::witt_from(p, start);
    let stats = layer_census(&alg, p, budget)?;
    let strata = strata_from_layers(&alg, &stats)?;
    let modality = crate::liecore::modality_from_exact_dims(
        &strata.iter().map(|s| (s.rank, s.dim)).collect::<Vec<_>>(),
    );
    let dim = alg.dim();
    let dim_c2 = dim as i64 + modality;
    // Verify the displayed component rank range against the strata: each
    // rank in the range is realized and its fiber dimension reaches at
    // least dim_c2 - 1 (the classification's component dimensions).
    let (lo, hi) = witt_component_range(p, start);
    for rank in lo..=hi {
        let s = strata
            .iter()
            .find(|s| s.rank == rank)
            .ok_or_else(|| val(format!("expected component stratum of rank {rank} is empty")))?;
        if s.fiber_dim < dim_c2 - 1 {
            return Err(val(format!(
                "stratum of rank {rank} has fiber dimension {} below the component range",
                s.fiber_dim
            )));
        }
    }
    Ok(WittAlgebraReport {
        name: alg.name().to_string(),
        start,
        dim,
        strata,
        modality,
        dim_c2,
        component_count: hi - lo + 1,
    })
}

/// Check dim ker(ad x) against the piecewise table for every element of
/// W(1)(F_p) and gather the p-nilpotent cone statistics in the same pass.
/// Returns (elements checked, nilcone dimension).
fn witt_kernel_and_nilcone(p: u64, budget: u128) -> Result<(u128, i64), LieError> {
    let alg = crate::liecore::witt_from(p, -1);
    let d = alg.dim();
    let total = (p as u128).pow(d as u32);
    if total > budget {
        return Err(LieError::BudgetExceeded { needed: total, budget });
    }
    let cube = ScCube::new(alg.as_ref());
    // Per leading layer: count of p-nilpotent elements and their kernel
    // dimensions; index d = the zero element's slot.
    let mut nil_layers: Vec<(u128, Vec<usize>)> = vec![(0, Vec::new()); d];
    let mut nil_total = 0u128;
    let mut checked = 0u128;
    let mut failure: Option<String> = None;
    enumerate_fq(d, p, |x| {
        if failure.is_some() {
            return;
        }
        let mut ad = cube.ad_mod_p(x, p);
        let r = rank_mod_p(&mut ad, d, d, p);
        let ker = d - r;
        let leading = x.iter().position(|&c| c != 0);
        let expected = witt_expected_ker(p, leading);
        if ker != expected {
            failure = Some(format!(
                "kernel table mismatch at {x:?}: dim ker = {ker}, table says {expected}"
            ));
            return;
        }
        checked += 1;
        if ad_power_zero(&cube, x, p, p as u32) {
            nil_total += 1;
            if let Some(a) = leading {
                nil_layers[a].0 += 1;
                if !nil_layers[a].1.contains(&ker) {
                    nil_layers[a].1.push(ker);
                }
            }
        }
    });
    if let Some(msg) = failure {
        return Err(val(msg));
    }
    // Nilcone dimension: max over x-strata of (stratum dim + fiber dim).
    // For nonzero x the fiber is C(x) (contained in the cone); over x = 0
    // the fiber is the cone itself. Stratum dimensions are read off the
    // point counts (the count of a d-dimensional stratum lies in
    // (p^d / 2, p^d] for p >= 5).
    let dim_of = |count: u128| -> Result<i64, LieError> {
        let mut dd = 0i64;
        let mut power = 1u128;
        while power < count {
            power *= p as u128;
            dd += 1;
        }
        if count * 2 <= power && count != power {
            return Err(val(format!("ambiguous stratum dimension for count {count}")));
        }
        Ok(dd)
    };
    let mut nilcone_dim = dim_of(nil_total)?; // the x = 0 fiber
    for (count, kers) in nil_layers.iter() {
        if *count == 0 {
            continue;
        }
        if kers.len() != 1 {
            return Err(val("kernel dimension not constant on a nilcone layer"));
        }
        nilcone_dim = nilcone_dim.max(dim_of(*count)? + kers[0] as i64);
    }
    Ok((checked, nilcone_dim))
}

/// Run the complete Witt chain verification at one prime: the kernel
/// table over all p^p elements, strata dimensions, modality and dim C2
/// for W(1), its Borel and its nilpotent radical, the component rank
/// ranges, and the p-nilpotent cone dimension.
pub fn witt_chain_report(p: u64, budget: u128) -> Result<WittChainReport, LieError> {
    let (checked, nilcone_dim) = witt_kernel_and_nilcone(p, budget)?;
    let algebras = [-1i64, 0, 1]
        .iter()
        .map(|&s| witt_algebra_report(p, s, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WittChainReport {
        p,
        algebras,
        kernel_table_checked: checked,
        nilcone_dim,
    })
}
