//! Irreducible-component analysis of the commuting variety C2(u).
//!
//! Every B-orbit signature class discovered by the orbit census is either
//! a component candidate (distinguished, candidate dimension dim b) or must
//! be excluded by one of four escalating mechanisms:
//!
//! 1. an invariant-subspace obstruction (a proper B-submodule v with
//!    B.x in v but C_u(x) not contained in v),
//! 2. a one-step linear degeneration x -> x + e_gamma whose commutator
//!    condition [e_gamma, C_u(x)] in k[e_gamma, x] makes the closure
//!    inclusion automatic,
//! 3. an automatically generated one-parameter curve certificate with a
//!    torus conjugation witness, or
//! 4. a bundled hand-written certificate (possibly using both parameters
//!    alpha and beta) shipped in `data/certs/`.
//!
//! A certificate is a checkable degeneration datum: curves x(alpha) and
//! y_j(alpha, beta) with [x, y_j] = 0 identically, a conjugation witness
//! word moving the constant target onto x(alpha), and an echelon/dominance
//! condition guaranteeing that the y_j sweep a dense subset of the
//! centralizer of the base point.

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact::{parse_rat, qi, rat_to_string, BPoly, Field, Mat, RatFun, UPoly};
use crate::liecore::{LieAlgebra, LieError, QCtx, RatFunCtx};
use crate::orbits::{signature, Discovery, Signature};
use crate::rootsys::{RootDatum, TypeLabel};

// ---------------------------------------------------------------------------
// Certificate file format.

/// On-disk certificate, all scalars as strings. Polynomial coordinates are
/// grids `grid[alpha_degree][beta_degree] = rational string`; an empty grid
/// is the zero polynomial.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateRaw {
    #[serde(rename = "type")]
    pub type_label: String,
    pub base: Vec<String>,
    pub target: Vec<String>,
    pub curve_x: Vec<Vec<Vec<String>>>,
    pub curves_y: Vec<Vec<Vec<Vec<String>>>>,
    pub witness: Vec<WitnessRaw>,
    pub dense_condition: String,
}

/// One step of a conjugation witness word, applied left to right.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessRaw {
    Torus { weights: Vec<String> },
    Rootgroup { root: usize, param: String },
}

/// Parsed certificate over exact arithmetic.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub type_label: TypeLabel,
    pub base: Vec<BigRational>,
    pub target: Vec<BigRational>,
    pub curve_x: Vec<BPoly>,
    pub curves_y: Vec<Vec<BPoly>>,
    pub witness: Vec<WitnessStep>,
    pub dense_condition: String,
}

#[derive(Debug, Clone)]
pub enum WitnessStep {
    Torus(Vec<RatFun>),
    RootGroup { root: usize, param: RatFun },
}

/// Degree budget for certificate polynomials in each parameter.
pub const DEGREE_BUDGET: i64 = 16;

fn val(msg: impl Into<String>) -> LieError {
    LieError::Validation(msg.into())
}

// ---------------------------------------------------------------------------
// Rational-function expression parser (witness scalars).

/// Parse an expression in the parameters `a` (alpha) and `b` (beta) built
/// from integers, `+ - * / ^` and parentheses, into a rational function.
pub fn parse_ratfun(s: &str) -> Result<RatFun, LieError> {
    let bytes: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    let mut p = ExprParser { s: &bytes, i: 0 };
    let e = p.expr()?;
    if p.i != p.s.len() {
        return Err(val(format!("trailing input in expression '{s}'")));
    }
    Ok(e)
}

struct ExprParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<RatFun, LieError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun, LieError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.i += 1;
                    acc = acc.mul(&self.factor()?);
                }
                b'/' => {
                    self.i += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d).map_err(|_| val("division by zero expression"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFun, LieError> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let mut digits = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    digits.push(c as char);
                    self.i += 1;
                } else {
                    break;
                }
            }
            let e: u32 = digits.parse().map_err(|_| val("malformed exponent"))?;
            return Ok(ratfun_pow(&base, e as i64));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun, LieError> {
        match self.peek() {
            Some(b'a') => {
                self.i += 1;
                Ok(RatFun::alpha())
            }
            Some(b'b') => {
                self.i += 1;
                Ok(RatFun::beta())
            }
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(val("unbalanced parenthesis"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c as char);
                        self.i += 1;
                    } else {
                        break;
                    }
                }
                let n = parse_rat(&digits).ok_or_else(|| val("malformed integer"))?;
                Ok(RatFun::from_rat(n))
            }
            other => Err(val(format!("unexpected token {other:?} in expression"))),
        }
    }
}

/// Integer power of a rational function (negative exponents invert).
pub fn ratfun_pow(base: &RatFun, e: i64) -> RatFun {
    let one = RatFun::from_rat(qi(1));
    let b = if e < 0 {
        base.inv().expect("inverting zero rational function")
    } else {
        base.clone()
    };
    let mut acc = one;
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&b);
    }
    acc
}

// ---------------------------------------------------------------------------
// Raw <-> parsed conversion.

fn parse_grid(grid: &[Vec<String>]) -> Result<BPoly, LieError> {
    let mut alpha = Vec::with_capacity(grid.len());
    for betas in grid {
        let mut coeffs = Vec::with_capacity(betas.len());
        for s in betas {
            coeffs.push(parse_rat(s).ok_or_else(|| val(format!("bad rational '{s}'")))?);
        }
        alpha.push(UPoly::from_coeffs(coeffs));
    }
    let p = BPoly::from_coeffs(alpha);
    if p.deg_alpha() > DEGREE_BUDGET || p.0.iter().any(|u| u.degree() > DEGREE_BUDGET) {
        return Err(val("certificate polynomial exceeds the degree budget"));
    }
    Ok(p)
}

fn rats(v: &[String]) -> Result<Vec<BigRational>, LieError> {
    v.iter()
        .map(|s| parse_rat(s).ok_or_else(|| val(format!("bad rational '{s}'"))))
        .collect()
}

/// Parse a raw certificate against the root datum of its declared type.
pub fn parse_certificate(raw: &CertificateRaw) -> Result<Certificate, LieError> {
    let type_label = TypeLabel::parse(&raw.type_label)
        .ok_or_else(|| val(format!("unknown type label '{}'", raw.type_label)))?;
    let datum = RootDatum::new(type_label);
    let dim = datum.dim_u();
    if raw.base.len() != dim || raw.target.len() != dim || raw.curve_x.len() != dim {
        return Err(val("coordinate count does not match dim u"));
    }
    let base = rats(&raw.base)?;
    let target = rats(&raw.target)?;
    let curve_x: Vec<BPoly> =
        raw.curve_x.iter().map(|g| parse_grid(g)).collect::<Result<_, _>>()?;
    if raw.curves_y.is_empty() {
        return Err(val("certificate has no centralizer curves"));
    }
    let mut curves_y = Vec::with_capacity(raw.curves_y.len());
    for curve in &raw.curves_y {
        if curve.len() != dim {
            return Err(val("curve coordinate count does not match dim u"));
        }
        let c: Vec<BPoly> = curve.iter().map(|g| parse_grid(g)).collect::<Result<_, _>>()?;
        curves_y.push(c);
    }
    let mut witness = Vec::with_capacity(raw.witness.len());
    for step in &raw.witness {
        witness.push(match step {
            WitnessRaw::Torus { weights } => {
                if weights.len() != datum.ssrk() {
                    return Err(val("torus witness weight count does not match rank"));
                }
                let ws: Vec<RatFun> =
                    weights.iter().map(|w| parse_ratfun(w)).collect::<Result<_, _>>()?;
                WitnessStep::Torus(ws)
            }
            WitnessRaw::Rootgroup { root, param } => {
                if *root >= dim {
                    return Err(val("root-group witness index out of range"));
                }
                WitnessStep::RootGroup { root: *root, param: parse_ratfun(param)? }
            }
        });
    }
    Ok(Certificate {
        type_label,
        base,
        target,
        curve_x,
        curves_y,
        witness,
        dense_condition: raw.dense_condition.clone(),
    })
}

// ---------------------------------------------------------------------------
// Polynomial linear algebra helpers.

/// Lie bracket of two polynomial-coordinate vectors.
pub fn bracket_bpoly(alg: &LieAlgebra, x: &[BPoly], y: &[BPoly]) -> Vec<BPoly> {
    let dim = alg.dim();
    let mut out = vec![BPoly::zero(); dim];
    for i in 0..dim {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if y[j].is_zero() {
                continue;
            }
            for (k, c) in alg.bracket_basis(i, j) {
                out[k] = out[k].add(&x[i].mul(&y[j]).scale_rat(&c));
            }
        }
    }
    out
}

fn upoly_derivative(u: &UPoly) -> UPoly {
    let mut v = Vec::new();
    for (i, c) in u.0.iter().enumerate().skip(1) {
        v.push(c * BigRational::from_integer(i.into()));
    }
    UPoly::from_coeffs(v)
}

/// Solve m z = rhs over Q; `None` if inconsistent. Free variables are 0.
fn solve_linear(m: &Mat<BigRational>, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut aug = Mat::zero(rows, cols + 1, &qi(0));
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, m.at(i, j).clone());
        }
        aug.set(i, cols, rhs[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&cols) {
        return None;
    }
    let mut z = vec![qi(0); cols];
    for (row_i, &pc) in pivots.iter().enumerate() {
        z[pc] = r.at(row_i, cols).clone();
    }
    Some(z)
}

/// Candidate component dimension dim B.x + dim C_u(x) = dim b - c_b + c_u.
pub fn component_dim(datum: &RootDatum, sig: &Signature) -> usize {
    datum.dim_b() - sig.cent_b + sig.cent_u
}

/// Render an exact vector as a signed sum of basis-label terms.
pub fn vector_label(datum: &RootDatum, v: &[BigRational]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let lbl = &datum.root_labels()[k];
        if out.is_empty() {
            if c.is_one() {
                out = lbl.clone();
            } else {
                out = format!("{}*{}", rat_to_string(c), lbl);
            }
        } else if c.is_one() {
            out = format!("{out} + {lbl}");
        } else if *c == qi(-1) {
            out = format!("{out} - {lbl}");
        } else if c.is_positive() {
            out = format!("{out} + {}*{}", rat_to_string(c), lbl);
        } else {
            out = format!("{out} - {}*{}", rat_to_string(&-c), lbl);
        }
    }
    if out.is_empty() {
        out = "0".into();
    }
    out
}

// ---------------------------------------------------------------------------
// Certificate verification.

/// Verify a degeneration certificate. Checks, in order:
///
/// 1. x(0) equals the declared base point;
/// 2. [x(alpha), y_j(alpha, beta)] = 0 identically for every curve;
/// 3. the rows y_j(0, beta) are in normalized echelon form (strictly
///    increasing pivot coordinates, lowest pivot coefficient 1, other rows
///    vanishing at each pivot) and the evaluation
///    map (lambda, beta) -> sum lambda_j y_j(0, beta) dominates C_u(base):
///    its Jacobian at a sample point has rank dim C_u(base);
/// 4. the witness word applied to the constant target equals x(alpha, beta)
///    identically as rational functions;
/// 5. signature(base) != signature(target) and the candidate dimension of
///    the base is at most that of the target.
pub fn verify_certificate(datum: &RootDatum, cert: &Certificate) -> Result<(), LieError> {
    if cert.type_label != datum.label() {
        return Err(val("certificate type does not match the root datum"));
    }
    let dim = datum.dim_u();
    let alg = datum.u_algebra();

    // (1) x(0) = base, as polynomials in beta.
    for k in 0..dim {
        let c0 = cert.curve_x[k].at_alpha_zero();
        if c0 != UPoly::constant(cert.base[k].clone()) {
            return Err(val(format!("curve_x coordinate {k} does not restrict to the base")));
        }
    }

    // (2) bracket identities.
    for (j, y) in cert.curves_y.iter().enumerate() {
        let br = bracket_bpoly(alg, &cert.curve_x, y);
        if let Some(k) = br.iter().position(|c| !c.is_zero()) {
            return Err(val(format!("bracket [x, y_{j}] has nonzero coordinate {k}")));
        }
    }

    // (3a) echelon structure of the rows y_j(0, beta).
    let rows: Vec<Vec<UPoly>> = cert
        .curves_y
        .iter()
        .map(|y| y.iter().map(|c| c.at_alpha_zero()).collect())
        .collect();
    let mut pivots = Vec::with_capacity(rows.len());
    for (j, row) in rows.iter().enumerate() {
        let p = row
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| val(format!("curve y_{j} vanishes at alpha = 0")))?;
        if let Some(&last) = pivots.last() {
            if p <= last {
                return Err(val("curve pivots are not strictly increasing"));
            }
        }
        // Normalization pins the scale of every row: the lowest-degree
        // coefficient of the pivot polynomial must be 1, so no stray
        // rescaling of a centralizer row passes as a distinct certificate.
        let lead = row[p].0.iter().find(|c| !c.is_zero()).expect("pivot is nonzero");
        if !lead.is_one() {
            return Err(val(format!(
                "curve y_{j} pivot is not normalized: lowest coefficient {lead}"
            )));
        }
        pivots.push(p);
    }
    for (j, row) in rows.iter().enumerate() {
        for (i, &p) in pivots.iter().enumerate() {
            if i != j && !row[p].is_zero() {
                return Err(val(format!("curve y_{j} is nonzero at the pivot of y_{i}")));
            }
        }
    }

    // (3b) dominance: the rows and their beta-derivatives, weighted by
    // distinct primes, must span the full centralizer of the base at some
    // sample value of beta.
    let cent = alg.centralizer_in(&QCtx, &cert.base, None);
    let cent_dim = cent.len();
    if cert.curves_y.len() > cent_dim {
        return Err(val("more curves than the centralizer dimension"));
    }
    let lambdas: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    if cert.curves_y.len() > lambdas.len() {
        return Err(val("too many curves for the dominance sample"));
    }
    let mut dominated = false;
    for beta in [2i64, 3, 5, 7, 11] {
        let b = BigRational::from_integer(beta.into());
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        let mut deriv = vec![qi(0); dim];
        for (j, row) in rows.iter().enumerate() {
            let col: Vec<BigRational> = row.iter().map(|u| u.eval(&b)).collect();
            for k in 0..dim {
                deriv[k] +=
                    upoly_derivative(&row[k]).eval(&b) * BigRational::from_integer(lambdas[j].into());
            }
            cols.push(col);
        }
        cols.push(deriv);
        let m = Mat::from_rows(cols).expect("rectangular");
        if m.rank() == cent_dim {
            dominated = true;
            break;
        }
    }
    if !dominated {
        return Err(val("curves do not dominate the centralizer of the base"));
    }

    // (4) witness word moves the constant target onto x(alpha, beta).
    let ctx = RatFunCtx;
    let mut cur: Vec<RatFun> = cert.target.iter().map(|c| RatFun::from_rat(c.clone())).collect();
    for step in &cert.witness {
        match step {
            WitnessStep::Torus(weights) => {
                if weights.iter().any(|w| w.is_zero()) {
                    return Err(val("torus witness weight is identically zero"));
                }
                cur = datum.torus_act(weights, &cur);
            }
            WitnessStep::RootGroup { root, param } => {
                cur = datum.root_group_act(&ctx, *root, param, &cur);
            }
        }
    }
    for k in 0..dim {
        if cur[k] != RatFun::from_poly(cert.curve_x[k].clone()) {
            return Err(val(format!(
                "witness image differs from curve_x at coordinate {k}"
            )));
        }
    }

    // (5) structural sanity of the degeneration direction.
    let sig_base = signature(datum, &cert.base);
    let sig_target = signature(datum, &cert.target);
    if sig_base == sig_target {
        return Err(val("base and target have equal signatures"));
    }
    if component_dim(datum, &sig_base) > component_dim(datum, &sig_target) {
        return Err(val("candidate dimension decreases along the certificate"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exclusion mechanism 1: invariant-subspace obstruction.

/// If C_u(x) is not contained in the B-submodule
/// v = span(msupp(x)) + u^(deg(x)+1), return a centralizer element outside
/// v. Such an element obstructs the candidate set of x from being a
/// component. For x = 0 the submodule is (0) and any basis vector works.
pub fn csc4_obstruction(
    datum: &RootDatum,
    x: &[BigRational],
) -> Result<Option<Vec<BigRational>>, LieError> {
    let dim = datum.dim_u();
    let alg = datum.u_algebra();
    let profile = datum.support_profile(x);
    let v_set: BTreeSet<usize> = match profile.deg {
        None => {
            // x = 0: v = (0), so e.g. the first basis vector obstructs.
            let mut w = vec![qi(0); dim];
            w[0] = qi(1);
            return Ok(Some(w));
        }
        Some(deg) => {
            let mut s: BTreeSet<usize> = profile.msupp.iter().copied().collect();
            for k in 0..dim {
                if datum.height(k) >= deg + 1 {
                    s.insert(k);
                }
            }
            s
        }
    };
    // v must be a B-submodule: stable under every root-group direction
    // (torus directions preserve any coordinate subspace).
    for gamma in 0..dim {
        for &k in &v_set {
            for (t, _) in alg.bracket_basis(gamma, k) {
                if !v_set.contains(&t) {
                    return Err(val("candidate obstruction subspace is not B-stable"));
                }
            }
        }
    }
    let cent = alg.centralizer_in(&QCtx, x, None);
    for y in cent {
        if (0..dim).any(|k| !y[k].is_zero() && !v_set.contains(&k)) {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Exclusion mechanism 2: one-step linear degeneration.

/// Search for a root gamma such that c = e_gamma satisfies
/// zrank(x + c) > zrank(x) and [c, C_u(x)] in k[c, x] (both sides may be
/// zero). The candidate set of x is then contained in that of x + c, and
/// the target must land in a different signature class. Returns
/// (gamma, target record index).
pub fn csc3_search(
    datum: &RootDatum,
    discovery: &Discovery,
    idx: usize,
) -> Option<(usize, usize)> {
    let alg = datum.u_algebra();
    let x = &discovery.records[idx].rep;
    let dim = datum.dim_u();
    let zr = datum.support_profile(x).zrank;
    let cent = alg.centralizer_in(&QCtx, x, None);
    'gamma: for gamma in 0..dim {
        let mut xc = x.clone();
        xc[gamma] += qi(1);
        if datum.support_profile(&xc).zrank <= zr {
            continue;
        }
        let mut c = vec![qi(0); dim];
        c[gamma] = qi(1);
        let v0 = alg.bracket_in(&QCtx, &c, x);
        let lead = v0.iter().position(|e| !e.is_zero());
        for y in &cent {
            let w = alg.bracket_in(&QCtx, &c, y);
            match lead {
                None => {
                    // [c, x] = 0 forces [c, C_u(x)] = 0.
                    if w.iter().any(|e| !e.is_zero()) {
                        continue 'gamma;
                    }
                }
                Some(l) => {
                    let ratio = &w[l] / &v0[l];
                    for k in 0..dim {
                        if w[k] != &ratio * &v0[k] {
                            continue 'gamma;
                        }
                    }
                }
            }
        }
        let tsig = signature(datum, &xc);
        if tsig == discovery.records[idx].sig {
            continue;
        }
        if let Some(t) = discovery.records.iter().position(|r| r.sig == tsig) {
            return Some((gamma, t));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Exclusion mechanism 3: automatic linear certificates.

/// Try to build a one-parameter certificate x(alpha) = x + alpha^d e_gamma
/// with torus witness weights alpha^(m_i), where m is an integer weight
/// vector orthogonal to the support roots of x and d = <gamma, m> > 0.
/// Each centralizer basis vector is extended to a curve by solving
/// ad(x) z_k = -[e_gamma, z_(k-1)] iteratively. Returns the verified
/// certificate and the target record index.
pub fn auto_certificate(
    datum: &RootDatum,
    discovery: &Discovery,
    idx: usize,
) -> Option<(Certificate, usize)> {
    let alg = datum.u_algebra();
    let x = &discovery.records[idx].rep;
    let dim = datum.dim_u();
    let profile = datum.support_profile(x);
    if profile.supp.is_empty() {
        return None;
    }
    let supp_rows: Vec<Vec<BigRational>> = profile
        .supp
        .iter()
        .map(|&k| datum.roots()[k].iter().map(|&c| BigRational::from_integer(c.into())).collect())
        .collect();
    let supp_mat = Mat::from_rows(supp_rows).expect("rectangular");
    let kernel = crate::exact::kernel_basis(&supp_mat);
    let ad = alg.ad_matrix(&QCtx, x);
    let cent = alg.centralizer_in(&QCtx, x, None);

    'gamma: for gamma in 0..dim {
        let mut xc = x.clone();
        xc[gamma] += qi(1);
        if datum.support_profile(&xc).zrank <= profile.zrank {
            continue;
        }
        let tsig = signature(datum, &xc);
        if tsig == discovery.records[idx].sig {
            continue;
        }
        let target_idx = match discovery.records.iter().position(|r| r.sig == tsig) {
            Some(t) => t,
            None => continue,
        };
        // Weight vector m with <supp, m> = 0 and d = <gamma, m> > 0.
        let pair = |m: &[BigRational]| -> BigRational {
            datum.roots()[gamma]
                .iter()
                .zip(m)
                .map(|(&c, w)| BigRational::from_integer(c.into()) * w)
                .sum()
        };
        let m = match kernel.iter().find(|m| !pair(m).is_zero()) {
            Some(m) => m,
            None => continue,
        };
        // Clear denominators and fix the sign of d.
        let lcm = m
            .iter()
            .map(|c| c.denom().clone())
            .fold(BigInt::from(1), |acc, d| acc.lcm(&d));
        let mut m_int: Vec<BigRational> =
            m.iter().map(|c| c * BigRational::from_integer(lcm.clone())).collect();
        let mut d = pair(&m_int);
        if d.is_negative() {
            for c in &mut m_int {
                *c = -c.clone();
            }
            d = -d;
        }
        let d: i64 = d.to_integer().try_into().ok()?;

        // Extend each centralizer basis vector to a commuting curve.
        let mut c_vec = vec![qi(0); dim];
        c_vec[gamma] = qi(1);
        let mut curves: Vec<Vec<Vec<BigRational>>> = Vec::new(); // per curve: z_0, z_1, ...
        for y0 in &cent {
            let mut zs = vec![y0.clone()];
            loop {
                let prev = zs.last().unwrap();
                let rhs: Vec<BigRational> = alg
                    .bracket_in(&QCtx, &c_vec, prev)
                    .into_iter()
                    .map(|e| -e)
                    .collect();
                if rhs.iter().all(|e| e.is_zero()) {
                    break;
                }
                if zs.len() > dim {
                    continue 'gamma;
                }
                match solve_linear(&ad, &rhs) {
                    Some(z) => zs.push(z),
                    None => continue 'gamma,
                }
            }
            curves.push(zs);
        }

        // Assemble the certificate.
        let mut curve_x = vec![BPoly::zero(); dim];
        for k in 0..dim {
            if !x[k].is_zero() {
                curve_x[k] = BPoly::constant(x[k].clone());
            }
        }
        let mut pow = vec![UPoly::zero(); d as usize + 1];
        pow[d as usize] = UPoly::constant(qi(1));
        curve_x[gamma] = curve_x[gamma].add(&BPoly::from_coeffs(pow));
        let curves_y: Vec<Vec<BPoly>> = curves
            .iter()
            .map(|zs| {
                (0..dim)
                    .map(|k| {
                        let mut alpha = vec![UPoly::zero(); (zs.len() - 1) * d as usize + 1];
                        for (step, z) in zs.iter().enumerate() {
                            if !z[k].is_zero() {
                                alpha[step * d as usize] = UPoly::constant(z[k].clone());
                            }
                        }
                        BPoly::from_coeffs(alpha)
                    })
                    .collect()
            })
            .collect();
        let weights: Vec<RatFun> = m_int
            .iter()
            .map(|mi| {
                let e: i64 = mi.to_integer().try_into().expect("small weight");
                ratfun_pow(&RatFun::alpha(), e)
            })
            .collect();
        let cert = Certificate {
            type_label: datum.label(),
            base: x.clone(),
            target: xc.clone(),
            curve_x,
            curves_y,
            witness: vec![WitnessStep::Torus(weights)],
            dense_condition: "a != 0".into(),
        };
        if verify_certificate(datum, &cert).is_ok() {
            return Some((cert, target_idx));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Bundled certificates.

/// Directory holding the bundled certificate JSON files.
pub fn bundled_cert_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/certs")
}

/// Load every bundled certificate, sorted by file name.
pub fn load_bundled_certificates() -> Result<Vec<(String, CertificateRaw)>, LieError> {
    let dir = bundled_cert_dir();
    let mut names: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| val(format!("reading {}: {e}", dir.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map_or(false, |x| x == "json"))
        .collect();
    names.sort();
    let mut out = Vec::new();
    for path in names {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| val(format!("reading {}: {e}", path.display())))?;
        let raw: CertificateRaw = serde_json::from_str(&text)
            .map_err(|e| val(format!("parsing {}: {e}", path.display())))?;
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        out.push((name, raw));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Component assembly.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub record: usize,
    pub names: Vec<String>,
    pub rep: String,
    pub comp_dim: usize,
    pub msupp: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Evidence {
    Csc4 { witness: String },
    Csc3 { root: String, target: usize },
    AutoCertificate { root: String, target: usize },
    BundledCertificate { file: String, target: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExcludedEntry {
    pub record: usize,
    pub names: Vec<String>,
    pub rep: String,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentReport {
    pub label: String,
    pub dim_b: usize,
    pub components: Vec<ComponentEntry>,
    pub excluded: Vec<ExcludedEntry>,
    pub unresolved: Vec<usize>,
}

fn msupp_labels(datum: &RootDatum, sig: &Signature) -> Vec<String> {
    sig.msupp.iter().map(|&k| datum.root_labels()[k].clone()).collect()
}

/// Classify every discovered record: distinguished full-dimension records
/// are components; the rest are excluded by the escalating mechanisms or
/// reported unresolved. The exclusion graph must be acyclic.
pub fn assemble_components(
    datum: &RootDatum,
    discovery: &Discovery,
    bundled: &[(String, CertificateRaw)],
) -> Result<ComponentReport, LieError> {
    let mut components = Vec::new();
    let mut excluded = Vec::new();
    let mut unresolved = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    // Parse and verify the bundled certificates for this type once.
    let mut certs: Vec<(String, Certificate, Signature, Signature)> = Vec::new();
    for (name, raw) in bundled {
        if raw.type_label != datum.label().to_string() {
            continue;
        }
        let cert = parse_certificate(raw)?;
        verify_certificate(datum, &cert)
            .map_err(|e| val(format!("bundled certificate {name}: {e}")))?;
        let sb = signature(datum, &cert.base);
        let st = signature(datum, &cert.target);
        certs.push((name.clone(), cert, sb, st));
    }

    for (idx, rec) in discovery.records.iter().enumerate() {
        let dim_ok = rec.comp_dim == datum.dim_b();
        if rec.distinguished && dim_ok {
            components.push(ComponentEntry {
                record: idx,
                names: rec.names.clone(),
                rep: vector_label(datum, &rec.rep),
                comp_dim: rec.comp_dim,
                msupp: msupp_labels(datum, &rec.sig),
            });
            continue;
        }
        let entry = |evidence: Evidence| ExcludedEntry {
            record: idx,
            names: rec.names.clone(),
            rep: vector_label(datum, &rec.rep),
            evidence,
        };
        if let Some(w) = csc4_obstruction(datum, &rec.rep)? {
            excluded.push(entry(Evidence::Csc4 { witness: vector_label(datum, &w) }));
            continue;
        }
        if let Some((gamma, target)) = csc3_search(datum, discovery, idx) {
            edges.push((idx, target));
            excluded.push(entry(Evidence::Csc3 {
                root: datum.root_labels()[gamma].clone(),
                target,
            }));
            continue;
        }
        if let Some((cert, target)) = auto_certificate(datum, discovery, idx) {
            let gamma = (0..datum.dim_u())
                .find(|&k| cert.target[k] != cert.base[k])
                .expect("auto certificate changes one coordinate");
            edges.push((idx, target));
            excluded.push(entry(Evidence::AutoCertificate {
                root: datum.root_labels()[gamma].clone(),
                target,
            }));
            continue;
        }
        if let Some((name, _, _, st)) = certs.iter().find(|(_, _, sb, _)| *sb == rec.sig) {
            if let Some(target) = discovery.records.iter().position(|r| r.sig == *st) {
                edges.push((idx, target));
                excluded.push(entry(Evidence::BundledCertificate {
                    file: name.clone(),
                    target,
                }));
                continue;
            }
        }
        unresolved.push(idx);
    }

    // The degeneration graph record -> target must be acyclic.
    let n = discovery.records.len();
    let mut indeg = vec![0usize; n];
    for &(_, t) in &edges {
        indeg[t] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = queue.pop() {
        seen += 1;
        for &(s, t) in &edges {
            if s == i {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
    }
    if seen != n {
        return Err(val("exclusion graph contains a cycle"));
    }

    Ok(ComponentReport {
        label: datum.label().to_string(),
        dim_b: datum.dim_b(),
        components,
        excluded,
        unresolved,
    })
}

/// Expected component count per type (the classification being verified).
pub fn golden_component_count(label: TypeLabel) -> usize {
    match label {
        TypeLabel::A1 | TypeLabel::A2 => 1,
        TypeLabel::A3 | TypeLabel::B2 => 2,
        TypeLabel::A4 => 5,
    }
}

/// Check the assembled report against the expected classification:
/// component count, equidimensionality at dim b, no unresolved records,
/// and for A4 the exact minimal-support structure of the five components.
pub fn check_golden(datum: &RootDatum, report: &ComponentReport) -> Result<(), LieError> {
    if !report.unresolved.is_empty() {
        return Err(val(format!("unresolved records: {:?}", report.unresolved)));
    }
    let want = golden_component_count(datum.label());
    if report.components.len() != want {
        return Err(val(format!(
            "{} components found, expected {want}",
            report.components.len()
        )));
    }
    for c in &report.components {
        if c.comp_dim != datum.dim_b() {
            return Err(val(format!(
                "component record {} has dimension {}, expected {}",
                c.record,
                c.comp_dim,
                datum.dim_b()
            )));
        }
    }
    if datum.label() == TypeLabel::A4 {
        let mut got: Vec<BTreeSet<String>> = report
            .components
            .iter()
            .map(|c| c.msupp.iter().cloned().collect())
            .collect();
        let mut want: Vec<BTreeSet<String>> = [
            vec!["E12", "E23", "E34", "E45"],
            vec!["E12", "E23", "E45"],
            vec!["E12", "E34", "E45"],
            vec!["E12", "E34"],
            vec!["E23", "E45"],
        ]
        .iter()
        .map(|v| v.iter().map(|s| s.to_string()).collect())
        .collect();
        got.sort();
        want.sort();
        if got != want {
            return Err(val(format!("A4 component msupp structure mismatch: {got:?}")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Abelian-plane components.

/// Component report for the variety of 2-dimensional abelian subalgebras:
/// its components correspond to those of C2(u) with dimension dropped by
/// dim GL2 = 4. Requires semisimple rank at least 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneReport {
    pub label: String,
    pub count: usize,
    pub dims: Vec<usize>,
}

pub fn abelian_plane_report(
    datum: &RootDatum,
    report: &ComponentReport,
) -> Result<PlaneReport, LieError> {
    if datum.ssrk() < 2 {
        return Err(val("abelian-plane components require semisimple rank >= 2"));
    }
    Ok(PlaneReport {
        label: report.label.clone(),
        count: report.components.len(),
        dims: report.components.iter().map(|c| c.comp_dim - 4).collect(),
    })
}
