//! Root-graded structure on the nilpotent radical for types A1..A4 and B2:
//! positive roots with heights, support/degree/minimal-support profiles,
//! lattice rank of supports, the diagram involution in type A, and the
//! exact adjoint actions of torus and root-group elements.

use crate::exact::{Field, IntMatrix};
use crate::liecore::{FieldCtx, FieldKind, LieAlgebra, LieError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A1,
    A2,
    A3,
    A4,
    B2,
}

impl TypeLabel {
    pub fn all() -> [TypeLabel; 5] {
        [TypeLabel::A1, TypeLabel::A2, TypeLabel::A3, TypeLabel::A4, TypeLabel::B2]
    }

    pub fn parse(s: &str) -> Option<TypeLabel> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Some(TypeLabel::A1),
            "A2" => Some(TypeLabel::A2),
            "A3" => Some(TypeLabel::A3),
            "A4" => Some(TypeLabel::A4),
            "B2" => Some(TypeLabel::B2),
            _ => None,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A1 => "A1",
            TypeLabel::A2 => "A2",
            TypeLabel::A3 => "A3",
            TypeLabel::A4 => "A4",
            TypeLabel::B2 => "B2",
        };
        f.write_str(s)
    }
}

/// Positive-root datum plus exact matrix realization of the nilpotent
/// radical (sl_{n+1} for type A, sp_4 with the antidiagonal form for B2).
///
/// Basis vectors of u are in bijection with the positive roots, ordered by
/// (height, ascending lexicographic simple coordinates).
pub struct RootDatum {
    label: TypeLabel,
    rank: usize,
    roots: Vec<Vec<i64>>,
    heights: Vec<i64>,
    labels: Vec<String>,
    /// Matrix realization of each u basis vector (nmat x nmat, integer).
    mats: Vec<Vec<Vec<i64>>>,
    nmat: usize,
    u: Arc<LieAlgebra>,
    borel: Arc<LieAlgebra>,
    /// Precomputed root-group action tables: y = x + t*L[g]x + t^2*Q[g]x,
    /// dense dim x dim integer matrices per positive root g.
    lin: Vec<Vec<Vec<i64>>>,
    quad: Vec<Vec<Vec<i64>>>,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn mat_sub(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn mat_is_zero(a: &[Vec<i64>]) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

impl RootDatum {
    pub fn new(label: TypeLabel) -> Arc<RootDatum> {
        let (rank, nmat, raw): (usize, usize, Vec<(Vec<i64>, String, Vec<(usize, usize, i64)>)>) =
            match label {
                TypeLabel::A1 | TypeLabel::A2 | TypeLabel::A3 | TypeLabel::A4 => {
                    let n = match label {
                        TypeLabel::A1 => 1,
                        TypeLabel::A2 => 2,
                        TypeLabel::A3 => 3,
                        _ => 4,
                    };
                    let mut v = Vec::new();
                    for i in 1..=n {
                        for j in i + 1..=n + 1 {
                            let mut coords = vec![0i64; n];
                            for k in i..j {
                                coords[k - 1] = 1;
                            }
                            v.push((coords, format!("E{i}{j}"), vec![(i - 1, j - 1, 1)]));
                        }
                    }
                    (n, n + 1, v)
                }
                TypeLabel::B2 => (
                    2,
                    4,
                    vec![
                        // coords over (alpha, beta), alpha long
                        (vec![0, 1], "x_b".into(), vec![(0, 1, 1), (2, 3, -1)]),
                        (vec![1, 0], "x_a".into(), vec![(1, 2, 1)]),
                        (vec![1, 1], "x_ab".into(), vec![(0, 2, 1), (1, 3, 1)]),
                        (vec![1, 2], "x_a2b".into(), vec![(0, 3, 1)]),
                    ],
                ),
            };
        let mut raw = raw;
        raw.sort_by_key(|(coords, _, _)| {
            (coords.iter().sum::<i64>(), coords.clone())
        });
        let roots: Vec<Vec<i64>> = raw.iter().map(|(c, _, _)| c.clone()).collect();
        let heights: Vec<i64> = roots.iter().map(|c| c.iter().sum()).collect();
        let labels: Vec<String> = raw.iter().map(|(_, l, _)| l.clone()).collect();
        let mats: Vec<Vec<Vec<i64>>> = raw
            .iter()
            .map(|(_, _, entries)| {
                let mut m = vec![vec![0i64; nmat]; nmat];
                for &(i, j, v) in entries {
                    m[i][j] = v;
                }
                m
            })
            .collect();
        for m in &mats {
            assert!(mat_is_zero(&mat_mul(m, m)), "root matrices must square to zero");
        }
        let dim = roots.len();

        // Structure constants of u from matrix commutators.
        let to_coords = |m: &Vec<Vec<i64>>| -> Option<Vec<i64>> {
            // Solve m = sum c_k mats[k]; each basis matrix has a lead
            // entry position unique to it.
            let mut c = vec![0i64; dim];
            let mut rem = m.clone();
            for (k, bm) in mats.iter().enumerate() {
                let (li, lj, lv) = (0..nmat)
                    .flat_map(|i| (0..nmat).map(move |j| (i, j)))
                    .find(|&(i, j)| bm[i][j] != 0)
                    .map(|(i, j)| (i, j, bm[i][j]))
                    .expect("nonzero basis matrix");
                if rem[li][lj] % lv != 0 {
                    return None;
                }
                c[k] = rem[li][lj] / lv;
                for i in 0..nmat {
                    for j in 0..nmat {
                        rem[i][j] -= c[k] * bm[i][j];
                    }
                }
            }
            mat_is_zero(&rem).then_some(c)
        };
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let comm = mat_sub(&mat_mul(&mats[i], &mats[j]), &mat_mul(&mats[j], &mats[i]));
                let c = to_coords(&comm).expect("commutator stays in u");
                let coords: Vec<(usize, BigRational)> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(k, &v)| (k, BigRational::from_integer(v.into())))
                    .collect();
                if !coords.is_empty() {
                    brackets.push((i, j, coords));
                }
            }
        }
        let u = LieAlgebra::new(
            &format!("{label}-radical"),
            labels.clone(),
            FieldKind::Q,
            brackets.clone(),
        )
        .expect("valid radical");

        // Borel: torus coweight basis h_1..h_rank acting by the simple
        // coordinates, then the root vectors.
        let mut blabels: Vec<String> = (1..=rank).map(|i| format!("h{i}")).collect();
        blabels.extend(labels.clone());
        let mut bbrackets: Vec<(usize, usize, Vec<(usize, BigRational)>)> = Vec::new();
        for i in 0..rank {
            for (k, root) in roots.iter().enumerate() {
                if root[i] != 0 {
                    bbrackets.push((
                        i,
                        rank + k,
                        vec![(rank + k, BigRational::from_integer(root[i].into()))],
                    ));
                }
            }
        }
        for (i, j, coords) in &brackets {
            bbrackets.push((
                rank + i,
                rank + j,
                coords.iter().map(|(k, c)| (rank + k, c.clone())).collect(),
            ));
        }
        let borel = LieAlgebra::new(
            &format!("{label}-borel"),
            blabels,
            FieldKind::Q,
            bbrackets,
        )
        .expect("valid borel");

        // Root-group action tables. With M = mats[g] and M^2 = 0:
        // Ad(1+tM)(X) = X + t[M, X] - t^2 M X M.
        let mut lin = Vec::with_capacity(dim);
        let mut quad = Vec::with_capacity(dim);
        for g in 0..dim {
            let mut lcols = vec![vec![0i64; dim]; dim];
            let mut qcols = vec![vec![0i64; dim]; dim];
            for j in 0..dim {
                let comm =
                    mat_sub(&mat_mul(&mats[g], &mats[j]), &mat_mul(&mats[j], &mats[g]));
                let lc = to_coords(&comm).expect("bracket stays in u");
                let mxm = mat_mul(&mat_mul(&mats[g], &mats[j]), &mats[g]);
                let neg: Vec<Vec<i64>> =
                    mxm.iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
                let qc = to_coords(&neg).expect("t^2 term stays in u");
                for k in 0..dim {
                    lcols[k][j] = lc[k];
                    qcols[k][j] = qc[k];
                }
            }
            lin.push(lcols);
            quad.push(qcols);
        }

        Arc::new(RootDatum {
            label,
            rank,
            roots,
            heights,
            labels,
            mats,
            nmat,
            u,
            borel,
            lin,
            quad,
        })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }
    /// Semisimple rank = |Delta| = torus rank of the bundled simply
    /// connected realization (dim Z(G) = 0).
    pub fn ssrk(&self) -> usize {
        self.rank
    }
    pub fn dim_u(&self) -> usize {
        self.roots.len()
    }
    pub fn dim_b(&self) -> usize {
        self.roots.len() + self.rank
    }
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }
    pub fn height(&self, root: usize) -> i64 {
        self.heights[root]
    }
    pub fn root_labels(&self) -> &[String] {
        &self.labels
    }
    pub fn u_algebra(&self) -> &Arc<LieAlgebra> {
        &self.u
    }
    pub fn borel_algebra(&self) -> &Arc<LieAlgebra> {
        &self.borel
    }
    pub fn basis_matrix(&self, k: usize) -> &Vec<Vec<i64>> {
        &self.mats[k]
    }
    pub fn nmat(&self) -> usize {
        self.nmat
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == coords)
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Indices of u basis vectors of height >= d.
    pub fn height_filter(&self, d: i64) -> Vec<usize> {
        (0..self.dim_u()).filter(|&k| self.heights[k] >= d).collect()
    }

    /// Embed a u element into borel coordinates (torus part zero).
    pub fn embed_in_borel<F: Field>(&self, zero: &F, x: &[F]) -> Vec<F> {
        let mut v = vec![zero.zero_like(); self.rank];
        v.extend_from_slice(x);
        v
    }

    /// supp/deg/msupp/zrank of a u element.
    pub fn support_profile<F: Field>(&self, x: &[F]) -> SupportProfile {
        assert_eq!(x.len(), self.dim_u());
        let supp: Vec<usize> = (0..x.len()).filter(|&k| !x[k].is_zero()).collect();
        if supp.is_empty() {
            return SupportProfile { supp, deg: None, msupp: Vec::new(), zrank: 0 };
        }
        let deg = supp.iter().map(|&k| self.heights[k]).min().unwrap();
        let msupp: Vec<usize> =
            supp.iter().copied().filter(|&k| self.heights[k] == deg).collect();
        let rows: Vec<Vec<BigInt>> = supp
            .iter()
            .map(|&k| self.roots[k].iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let zrank = IntMatrix::from_rows(rows).expect("rectangular").smith_rank();
        SupportProfile { supp, deg: Some(deg), msupp, zrank }
    }

    /// Adjoint action of the torus point with the given simple-coordinate
    /// character values: the x_gamma coordinate scales by
    /// prod_i weights[i]^gamma_i.
    pub fn torus_act<F: Field>(&self, weights: &[F], x: &[F]) -> Vec<F> {
        assert_eq!(weights.len(), self.rank);
        assert!(weights.iter().all(|w| !w.is_zero()), "torus weights must be nonzero");
        let mut out = Vec::with_capacity(x.len());
        for (k, v) in x.iter().enumerate() {
            let mut c = v.clone();
            for (i, w) in weights.iter().enumerate() {
                for _ in 0..self.roots[k][i] {
                    c = c.mul(w);
                }
            }
            out.push(c);
        }
        out
    }

    /// Exact adjoint action of the root-group element u_gamma(t), via the
    /// matrix identity Ad(1+tM)(X) = X + t[M,X] - t^2 MXM (M^2 = 0).
    pub fn root_group_act<C: FieldCtx>(
        &self,
        ctx: &C,
        gamma: usize,
        t: &C::El,
        x: &[C::El],
    ) -> Vec<C::El> {
        assert!(gamma < self.dim_u(), "not a root of the datum");
        let dim = self.dim_u();
        let t2 = t.mul(t);
        let mut out = x.to_vec();
        for k in 0..dim {
            let mut acc = ctx.zero();
            for j in 0..dim {
                if x[j].is_zero() {
                    continue;
                }
                let l = self.lin[gamma][k][j];
                if l != 0 {
                    let c = ctx.from_rat(&BigRational::from_integer(l.into()));
                    acc = acc.add(&t.mul(&c).mul(&x[j]));
                }
                let q = self.quad[gamma][k][j];
                if q != 0 {
                    let c = ctx.from_rat(&BigRational::from_integer(q.into()));
                    acc = acc.add(&t2.mul(&c).mul(&x[j]));
                }
            }
            out[k] = out[k].add(&acc);
        }
        out
    }

    /// Fast F_p root-group action on raw 0..p-1 coordinates.
    pub fn root_group_act_fp(&self, gamma: usize, t: u64, x: &[u64], p: u64) -> Vec<u64> {
        let dim = self.dim_u();
        let t2 = t * t % p;
        let mut out = x.to_vec();
        for k in 0..dim {
            let mut acc = 0u64;
            for j in 0..dim {
                if x[j] == 0 {
                    continue;
                }
                let l = self.lin[gamma][k][j].rem_euclid(p as i64) as u64;
                if l != 0 {
                    acc = (acc + t * l % p * x[j]) % p;
                }
                let q = self.quad[gamma][k][j].rem_euclid(p as i64) as u64;
                if q != 0 {
                    acc = (acc + t2 * q % p * x[j]) % p;
                }
            }
            out[k] = (out[k] + acc) % p;
        }
        out
    }

    /// Fast F_p torus action on raw coordinates; weights in 1..p-1.
    pub fn torus_act_fp(&self, weights: &[u64], x: &[u64], p: u64) -> Vec<u64> {
        let mut out = x.to_vec();
        for (k, v) in out.iter_mut().enumerate() {
            for (i, &w) in weights.iter().enumerate() {
                for _ in 0..self.roots[k][i] {
                    *v = *v * w % p;
                }
            }
        }
        out
    }

    /// The order-2 automorphism of u in type A_n: E_{i,j} maps to
    /// -E_{n+2-j,n+2-i}; on roots it induces the diagram flip.
    pub fn upsilon<F: Field>(&self, x: &[F]) -> Result<Vec<F>, LieError> {
        if self.label == TypeLabel::B2 {
            return Err(LieError::Validation("upsilon is defined only in type A".into()));
        }
        let mut out = vec![x[0].zero_like(); x.len()];
        for (k, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            // Root coords of k are ones on [i, j-1]; the flip reverses the
            // coordinate vector.
            let mut flipped = self.roots[k].clone();
            flipped.reverse();
            let target = self.root_index(&flipped).expect("flip permutes positive roots");
            out[target] = out[target].add(&v.neg());
        }
        Ok(out)
    }
}

/// Support data of an element of u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    /// Indices of roots with nonzero coefficient.
    pub supp: Vec<usize>,
    /// Minimal height over supp; `None` only for x = 0.
    pub deg: Option<i64>,
    /// Subset of supp at minimal height.
    pub msupp: Vec<usize>,
    /// Smith rank of the supp coordinate lattice.
    pub zrank: usize,
}

// ---------------------------------------------------------------------------
// Grading block (external interface).

#[derive(Debug, Serialize, Deserialize)]
pub struct GradingJson {
    pub roots: Vec<Vec<i64>>,
    pub basis_root: Vec<usize>,
}

impl RootDatum {
    pub fn grading_json(&self) -> GradingJson {
        GradingJson {
            roots: self.roots.clone(),
            basis_root: (0..self.dim_u()).collect(),
        }
    }

    /// Check a grading block against this datum (the loader-side
    /// validation for externally supplied files).
    pub fn matches_grading(&self, g: &GradingJson) -> bool {
        g.roots == self.roots && g.basis_root == (0..self.dim_u()).collect::<Vec<_>>()
    }
}

/// Element of u over Q with integer coordinates, convenience constructor.
pub fn qvec(datum: &RootDatum, entries: &[(usize, i64)]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); datum.dim_u()];
    for &(k, c) in entries {
        v[k] = BigRational::from_integer(c.into());
    }
    v
}

/// Element from basis labels, all coefficients 1.
pub fn from_labels(datum: &RootDatum, labels: &[&str]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); datum.dim_u()];
    for l in labels {
        let k = datum.basis_index(l).unwrap_or_else(|| panic!("no basis vector {l}"));
        v[k] = BigRational::one();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;
    use crate::liecore::QCtx as Q;

    #[test]
    fn a2_layout_and_bracket() {
        let d = RootDatum::new(TypeLabel::A2);
        assert_eq!(d.dim_u(), 3);
        assert_eq!(d.dim_b(), 5);
        // [E12, E23] = E13
        let x = from_labels(&d, &["E12"]);
        let y = from_labels(&d, &["E23"]);
        let b = d.u_algebra().bracket_in(&Q, &x, &y);
        assert_eq!(b, from_labels(&d, &["E13"]));
        // [E12, E13] = 0
        let z = from_labels(&d, &["E13"]);
        assert!(d.u_algebra().bracket_in(&Q, &x, &z).iter().all(|v| Field::is_zero(v)));
    }

    #[test]
    fn kernel_of_ad_e12_in_a2() {
        let d = RootDatum::new(TypeLabel::A2);
        let x = from_labels(&d, &["E12"]);
        let c = d.u_algebra().centralizer_in(&Q, &x, None);
        let expect: Vec<Vec<BigRational>> = vec![
            from_labels(&d, &["E12"]),
            from_labels(&d, &["E13"]),
        ];
        let got: std::collections::BTreeSet<String> =
            c.iter().map(|v| format!("{v:?}")).collect();
        let want: std::collections::BTreeSet<String> =
            expect.iter().map(|v| format!("{v:?}")).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn b2_layout() {
        let d = RootDatum::new(TypeLabel::B2);
        assert_eq!(d.root_labels(), &["x_b", "x_a", "x_ab", "x_a2b"]);
        assert_eq!(d.dim_b(), 6);
        // C_u(x_b) = span{x_b, x_a2b}
        let xb = from_labels(&d, &["x_b"]);
        let c = d.u_algebra().centralizer_in(&Q, &xb, None);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!(Field::is_zero(&v[d.basis_index("x_a").unwrap()]));
            assert!(Field::is_zero(&v[d.basis_index("x_ab").unwrap()]));
        }
    }

    #[test]
    fn support_profile_examples() {
        let d = RootDatum::new(TypeLabel::A2);
        let x = from_labels(&d, &["E13"]);
        let p = d.support_profile(&x);
        assert_eq!(p.deg, Some(2));
        assert_eq!(p.zrank, 1);
        let b2 = RootDatum::new(TypeLabel::B2);
        let y = from_labels(&b2, &["x_a", "x_a2b"]);
        assert_eq!(b2.support_profile(&y).zrank, 2);
        let zero = qvec(&b2, &[]);
        let pz = b2.support_profile(&zero);
        assert_eq!(pz.deg, None);
        assert!(pz.supp.is_empty());
    }

    #[test]
    fn torus_action_examples() {
        let d = RootDatum::new(TypeLabel::A4);
        let x = from_labels(&d, &["E12"]);
        let t = vec![qi(3), qi(1), qi(1), qi(1)];
        assert_eq!(d.torus_act(&t, &x), qvec(&d, &[(d.basis_index("E12").unwrap(), 3)]));
        let ones = vec![qi(1); 4];
        let y = from_labels(&d, &["E12", "E24", "E15"]);
        assert_eq!(d.torus_act(&ones, &y), y);
        let b2 = RootDatum::new(TypeLabel::B2);
        let z = from_labels(&b2, &["x_a2b"]);
        // weights (s,t) scale x_{a+2b} by s t^2
        let got = b2.torus_act(&[qi(2), qi(3)], &z);
        assert_eq!(got[b2.basis_index("x_a2b").unwrap()], qi(18));
    }

    #[test]
    fn root_group_action_examples() {
        let d = RootDatum::new(TypeLabel::A2);
        let x = from_labels(&d, &["E12"]);
        let g = d.basis_index("E23").unwrap();
        let acted = d.root_group_act(&Q, g, &qi(1), &x);
        // (1+tE23)E12(1-tE23) = E12 - tE13
        assert_eq!(acted, {
            let mut v = from_labels(&d, &["E12"]);
            v[d.basis_index("E13").unwrap()] = qi(-1);
            v
        });
        // t=0 is the identity
        let y = from_labels(&d, &["E12", "E23", "E13"]);
        assert_eq!(d.root_group_act(&Q, g, &qi(0), &y), y);
    }

    #[test]
    fn root_group_one_parameter_additivity() {
        for label in TypeLabel::all() {
            let d = RootDatum::new(label);
            for g in 0..d.dim_u() {
                for j in 0..d.dim_u() {
                    let mut x = qvec(&d, &[]);
                    x[j] = qi(1);
                    let st = d.root_group_act(&Q, g, &qi(5), &x);
                    let s_then_t =
                        d.root_group_act(&Q, g, &qi(2), &d.root_group_act(&Q, g, &qi(3), &x));
                    assert_eq!(st, s_then_t, "{label} gamma={g} j={j}");
                }
            }
        }
    }

    #[test]
    fn actions_are_automorphisms() {
        for label in TypeLabel::all() {
            let d = RootDatum::new(label);
            let alg = d.u_algebra();
            let weights: Vec<BigRational> = (0..d.ssrk()).map(|i| qi(i as i64 + 2)).collect();
            for i in 0..d.dim_u() {
                for j in 0..d.dim_u() {
                    let mut x = qvec(&d, &[]);
                    x[i] = qi(1);
                    let mut y = qvec(&d, &[]);
                    y[j] = qi(1);
                    let b = alg.bracket_in(&Q, &x, &y);
                    // torus
                    let lhs = d.torus_act(&weights, &b);
                    let rhs = alg.bracket_in(
                        &Q,
                        &d.torus_act(&weights, &x),
                        &d.torus_act(&weights, &y),
                    );
                    assert_eq!(lhs, rhs, "torus not automorphic on {label} ({i},{j})");
                    for g in 0..d.dim_u() {
                        let t = qi(2);
                        let lhs = d.root_group_act(&Q, g, &t, &b);
                        let rhs = alg.bracket_in(
                            &Q,
                            &d.root_group_act(&Q, g, &t, &x),
                            &d.root_group_act(&Q, g, &t, &y),
                        );
                        assert_eq!(lhs, rhs, "u_{g}(t) not automorphic on {label}");
                    }
                }
            }
        }
    }

    #[test]
    fn upsilon_examples() {
        let d = RootDatum::new(TypeLabel::A4);
        let x = from_labels(&d, &["E12"]);
        let u = d.upsilon(&x).unwrap();
        assert_eq!(u, qvec(&d, &[(d.basis_index("E45").unwrap(), -1)]));
        // involution on every basis vector
        for k in 0..d.dim_u() {
            let mut v = qvec(&d, &[]);
            v[k] = qi(1);
            let twice = d.upsilon(&d.upsilon(&v).unwrap()).unwrap();
            assert_eq!(twice, v);
        }
        assert!(RootDatum::new(TypeLabel::B2).upsilon(&qvec(&RootDatum::new(TypeLabel::B2), &[])).is_err());
    }

    #[test]
    fn upsilon_is_automorphism() {
        let d = RootDatum::new(TypeLabel::A4);
        let alg = d.u_algebra();
        for i in 0..d.dim_u() {
            for j in 0..d.dim_u() {
                let mut x = qvec(&d, &[]);
                x[i] = qi(2);
                let mut y = qvec(&d, &[]);
                y[j] = qi(3);
                let lhs = d.upsilon(&alg.bracket_in(&Q, &x, &y)).unwrap();
                let rhs = alg.bracket_in(
                    &Q,
                    &d.upsilon(&x).unwrap(),
                    &d.upsilon(&y).unwrap(),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn central_series_matches_height_filtration() {
        for label in TypeLabel::all() {
            let d = RootDatum::new(label);
            let series = d.u_algebra().central_series().unwrap();
            for (n, layer) in series.iter().enumerate() {
                let expect = d.height_filter(n as i64 + 1).len();
                assert_eq!(layer.len(), expect, "{label} layer {n}");
            }
        }
    }

    #[test]
    fn msupp_invariance_under_generators() {
        for label in TypeLabel::all() {
            let d = RootDatum::new(label);
            // A representative spread of elements: all single roots and a
            // few sums.
            let mut elems: Vec<Vec<BigRational>> = (0..d.dim_u())
                .map(|k| {
                    let mut v = qvec(&d, &[]);
                    v[k] = qi(1);
                    v
                })
                .collect();
            let mut s = qvec(&d, &[]);
            for k in 0..d.dim_u().min(3) {
                s[k] = qi(1);
            }
            elems.push(s);
            for x in &elems {
                let p0 = d.support_profile(x);
                for g in 0..d.dim_u() {
                    for t in [qi(1), qi(-1), qi(2)] {
                        let y = d.root_group_act(&Q, g, &t, x);
                        let p = d.support_profile(&y);
                        assert_eq!(p.deg, p0.deg);
                        assert_eq!(p.msupp, p0.msupp);
                    }
                }
                let weights: Vec<BigRational> =
                    (0..d.ssrk()).map(|i| qi(i as i64 + 2)).collect();
                let y = d.torus_act(&weights, x);
                let p = d.support_profile(&y);
                assert_eq!(p.deg, p0.deg);
                assert_eq!(p.msupp, p0.msupp);
            }
        }
    }

    #[test]
    fn regular_element_has_full_supp_rank() {
        for label in TypeLabel::all() {
            let d = RootDatum::new(label);
            let mut x = qvec(&d, &[]);
            for k in 0..d.dim_u() {
                if d.height(k) == 1 {
                    x[k] = qi(1);
                }
            }
            assert_eq!(d.support_profile(&x).zrank, d.ssrk());
        }
    }

    #[test]
    fn grading_round_trip() {
        let d = RootDatum::new(TypeLabel::A3);
        let g = d.grading_json();
        let s = serde_json::to_string(&g).unwrap();
        let back: GradingJson = serde_json::from_str(&s).unwrap();
        assert!(d.matches_grading(&back));
    }
}
