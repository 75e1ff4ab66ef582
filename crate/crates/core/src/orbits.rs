//! Borel-orbit analysis on the nilpotent radical: finite-field orbit
//! census by breadth-first closure, conjugation-invariant signatures over
//! Q, representative discovery and canonicalization, the distinguished
//! test, the modality report, and the exhaustiveness audit.

use crate::exact::Fp;
use crate::liecore::{rank_mod_p, LieError, QCtx, ScCube};
use crate::rootsys::{from_labels, RootDatum, TypeLabel};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

/// Cap on stored candidate lifts per finite-field orbit.
const LIFT_CAP: usize = 40;

/// One B(F_q)-orbit on u(F_q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FqOrbit {
    /// Numerically least orbit member, raw 0..q-1 coordinates.
    pub rep: Vec<u64>,
    pub size: u64,
    /// dim C_u(rep) over F_q.
    pub cent_u_fq: usize,
    /// Least orbit members whose digits lie in {0, 1, q-1}, lifted to
    /// {0, 1, -1} integer coordinates, in canonical order (0 < 1 < -1).
    pub lifts: Vec<Vec<i64>>,
}

/// The full orbit partition of u(F_q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusPartition {
    pub label: TypeLabel,
    pub q: u64,
    pub dim: usize,
    pub orbits: Vec<FqOrbit>,
    pub coverage: u64,
}

fn encode(x: &[u64], q: u64) -> u64 {
    x.iter().fold(0u64, |acc, &d| acc * q + d)
}

fn decode(mut idx: u64, q: u64, dim: usize) -> Vec<u64> {
    let mut x = vec![0u64; dim];
    for i in (0..dim).rev() {
        x[i] = idx % q;
        idx /= q;
    }
    x
}

/// Lift raw digits with values in {0, 1, q-1} to {0, 1, -1}; `None` when
/// some digit is outside that set.
fn try_lift(x: &[u64], q: u64) -> Option<Vec<i64>> {
    x.iter()
        .map(|&d| {
            if d == 0 {
                Some(0)
            } else if d == 1 {
                Some(1)
            } else if d == q - 1 {
                Some(-1)
            } else {
                None
            }
        })
        .collect()
}

/// Partition u(F_q) into orbits of the group generated by all root-group
/// elements u_gamma(t) and all one-coordinate torus weights.
pub fn bfs_census(datum: &RootDatum, q: u64, budget: u128) -> Result<CensusPartition, LieError> {
    Fp::new(q, 0)?;
    let dim = datum.dim_u();
    let total = (q as u128).pow(dim as u32);
    if total > budget {
        return Err(LieError::BudgetExceeded { needed: total, budget });
    }
    let cube = ScCube::new(datum.u_algebra());
    let mut visited = vec![false; total as usize];
    let mut orbits = Vec::new();
    let mut coverage = 0u64;
    for seed in 0..total as u64 {
        if visited[seed as usize] {
            continue;
        }
        visited[seed as usize] = true;
        let mut stack = vec![seed];
        let mut size = 0u64;
        let mut cands: BTreeSet<u64> = BTreeSet::new();
        while let Some(idx) = stack.pop() {
            size += 1;
            let x = decode(idx, q, dim);
            if try_lift(&x, q).is_some() {
                cands.insert(idx);
                while cands.len() > LIFT_CAP {
                    let last = *cands.iter().next_back().unwrap();
                    cands.remove(&last);
                }
            }
            for g in 0..dim {
                for t in 1..q {
                    let y = datum.root_group_act_fp(g, t, &x, q);
                    let j = encode(&y, q);
                    if !visited[j as usize] {
                        visited[j as usize] = true;
                        stack.push(j);
                    }
                }
            }
            for i in 0..datum.ssrk() {
                for w in 2..q {
                    let mut weights = vec![1u64; datum.ssrk()];
                    weights[i] = w;
                    let y = datum.torus_act_fp(&weights, &x, q);
                    let j = encode(&y, q);
                    if !visited[j as usize] {
                        visited[j as usize] = true;
                        stack.push(j);
                    }
                }
            }
        }
        coverage += size;
        let rep = decode(seed, q, dim);
        let mut ad = cube.ad_mod_p(&rep, q);
        let rank = rank_mod_p(&mut ad, dim, dim, q);
        orbits.push(FqOrbit {
            rep,
            size,
            cent_u_fq: dim - rank,
            lifts: cands
                .iter()
                .map(|&i| try_lift(&decode(i, q, dim), q).expect("filtered"))
                .collect(),
        });
    }
    Ok(CensusPartition { label: datum.label(), q, dim, orbits, coverage })
}

/// Conjugation-invariant data of an element of u, computed over Q. All
/// fields are invariant under the B-generators, so equal signatures are
/// the merge key for orbit records across primes (zrank is deliberately
/// omitted: it is not constant on orbits).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    /// Minimal height over the support; None only for x = 0.
    pub deg: Option<i64>,
    /// Root indices of the minimal-height part of the support.
    pub msupp: Vec<usize>,
    pub cent_u: usize,
    pub cent_b: usize,
    pub orbit_dim: usize,
}

/// Signature plus the zrank of this particular representative.
pub fn analyze(datum: &RootDatum, x: &[BigRational]) -> (Signature, usize) {
    let profile = datum.support_profile(x);
    let cent_u = datum.u_algebra().centralizer_in(&QCtx, x, None).len();
    let zero = BigRational::from_integer(0.into());
    let xb = datum.embed_in_borel(&zero, x);
    let cent_b = datum.borel_algebra().centralizer_in(&QCtx, &xb, None).len();
    let sig = Signature {
        deg: profile.deg,
        msupp: profile.msupp,
        cent_u,
        cent_b,
        orbit_dim: datum.dim_b() - cent_b,
    };
    (sig, profile.zrank)
}

pub fn signature(datum: &RootDatum, x: &[BigRational]) -> Signature {
    analyze(datum, x).0
}

/// One discovered B-orbit signature class, with a canonical representative.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub rep: Vec<BigRational>,
    pub rep_int: Vec<i64>,
    pub sig: Signature,
    /// zrank of the chosen representative.
    pub zrank: usize,
    /// dim C_T(rep) = ssrk - zrank.
    pub ct_dim: usize,
    /// dim b - cent_b + cent_u, the candidate component dimension.
    pub comp_dim: usize,
    pub distinguished: bool,
    /// Pinned representative names matching this class.
    pub names: Vec<String>,
    /// Orbit sizes merged into this class, per censused prime.
    pub fq_sizes: BTreeMap<u64, Vec<u64>>,
}

#[derive(Debug)]
pub struct Discovery {
    pub records: Vec<OrbitRecord>,
    /// Sorted, deduplicated signature list observed at each prime.
    pub per_prime_sigs: BTreeMap<u64, Vec<Signature>>,
}

pub fn qlift(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
}

/// Sort key realizing the candidate order 0 < 1 < -1 per coordinate.
fn lift_key(v: &[i64]) -> Vec<u8> {
    v.iter()
        .map(|&c| match c {
            0 => 0,
            1 => 1,
            _ => 2,
        })
        .collect()
}

/// Merge finite-field censuses into Q-signature classes and pick a
/// canonical representative per class. The representative is the least
/// candidate lift (order 0 < 1 < -1) whose Q-signature matches the class
/// and which satisfies the torus-complement identity
/// cent_b = cent_u + ssrk - zrank; that identity is then asserted.
pub fn discover_reps(
    datum: &RootDatum,
    partitions: &[CensusPartition],
) -> Result<Discovery, LieError> {
    struct Build {
        candidates: BTreeSet<(Vec<u8>, Vec<i64>)>,
        fq_sizes: BTreeMap<u64, Vec<u64>>,
    }
    let mut classes: BTreeMap<Signature, Build> = BTreeMap::new();
    let mut per_prime_sigs: BTreeMap<u64, Vec<Signature>> = BTreeMap::new();
    for part in partitions {
        if part.label != datum.label() || part.dim != datum.dim_u() {
            return Err(LieError::Validation("census partition does not match datum".into()));
        }
        let mut sigs_here = Vec::new();
        for orbit in &part.orbits {
            let canonical: Vec<i64> = orbit
                .lifts
                .first()
                .cloned()
                .unwrap_or_else(|| {
                    orbit
                        .rep
                        .iter()
                        .map(|&v| Fp::reduce(part.q, v as i64).balanced_lift())
                        .collect()
                });
            let sig = signature(datum, &qlift(&canonical));
            sigs_here.push(sig.clone());
            let build = classes.entry(sig).or_insert_with(|| Build {
                candidates: BTreeSet::new(),
                fq_sizes: BTreeMap::new(),
            });
            build.fq_sizes.entry(part.q).or_default().push(orbit.size);
            build.candidates.insert((lift_key(&canonical), canonical));
            for lift in &orbit.lifts {
                build.candidates.insert((lift_key(lift), lift.clone()));
            }
            while build.candidates.len() > 2 * LIFT_CAP {
                let last = build.candidates.iter().next_back().unwrap().clone();
                build.candidates.remove(&last);
            }
        }
        sigs_here.sort();
        sigs_here.dedup();
        per_prime_sigs.insert(part.q, sigs_here);
    }

    let mut records = Vec::new();
    for (sig, build) in classes {
        let mut chosen: Option<(Vec<i64>, usize)> = None;
        let mut fallback: Option<(Vec<i64>, usize)> = None;
        for (_, cand) in &build.candidates {
            let (csig, zrank) = analyze(datum, &qlift(cand));
            if csig != sig {
                continue;
            }
            if fallback.is_none() {
                fallback = Some((cand.clone(), zrank));
            }
            if sig.cent_b == sig.cent_u + datum.ssrk() - zrank {
                chosen = Some((cand.clone(), zrank));
                break;
            }
        }
        let (rep_int, zrank) = chosen.or(fallback).ok_or_else(|| {
            LieError::Validation(format!("no candidate lift realizes signature {sig:?}"))
        })?;
        if sig.cent_b != sig.cent_u + datum.ssrk() - zrank {
            return Err(LieError::Validation(format!(
                "torus-complement identity fails for representative {rep_int:?}: \
                 cent_b {} != cent_u {} + {} - zrank {}",
                sig.cent_b,
                sig.cent_u,
                datum.ssrk(),
                zrank
            )));
        }
        let distinguished = sig.cent_b == sig.cent_u;
        if distinguished && zrank != datum.ssrk() {
            return Err(LieError::Validation(format!(
                "distinguished representative {rep_int:?} has zrank {zrank} < ssrk"
            )));
        }
        records.push(OrbitRecord {
            rep: qlift(&rep_int),
            rep_int,
            comp_dim: datum.dim_b() - sig.cent_b + sig.cent_u,
            ct_dim: datum.ssrk() - zrank,
            zrank,
            distinguished,
            names: Vec::new(),
            fq_sizes: build.fq_sizes,
            sig,
        });
    }
    records.sort_by(|a, b| a.sig.cmp(&b.sig));

    // Pin the bundled named representatives to discovered classes.
    for (name, pin) in pinned_reps(datum) {
        let psig = signature(datum, &pin);
        let hits: Vec<usize> = records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.sig == psig)
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [i] => records[*i].names.push(name),
            [] => {
                return Err(LieError::Validation(format!(
                    "pinned representative {name} matches no discovered class"
                )))
            }
            _ => {
                return Err(LieError::Validation(format!(
                    "pinned representative {name} matches several classes"
                )))
            }
        }
    }
    Ok(Discovery { records, per_prime_sigs })
}

/// Bundled named representatives, with all coefficients 1.
pub fn pinned_reps(datum: &RootDatum) -> Vec<(String, Vec<BigRational>)> {
    let f = |name: &str, labels: &[&str]| (name.to_string(), from_labels(datum, labels));
    match datum.label() {
        TypeLabel::A1 => vec![f("e1", &["E12"])],
        TypeLabel::A2 => vec![f("e1", &["E12", "E23"])],
        TypeLabel::A3 => vec![
            f("e1", &["E12", "E23", "E34"]),
            f("e3", &["E12", "E34", "E24"]),
        ],
        TypeLabel::A4 => vec![
            f("e1", &["E12", "E23", "E34", "E45"]),
            f("e2", &["E12", "E23", "E34"]),
            f("e3", &["E12", "E23", "E45", "E24"]),
            f("e5", &["E12", "E23", "E35"]),
            f("e6", &["E12", "E23"]),
            f("e7", &["E12", "E34", "E45", "E24"]),
            f("e9", &["E12", "E34", "E24", "E25"]),
            f("e10", &["E12", "E34", "E24"]),
            f("e11", &["E12", "E34", "E25"]),
            f("e12", &["E12", "E34"]),
            f("e13", &["E12", "E45", "E24"]),
            f("e14", &["E12", "E45", "E25"]),
            f("e15", &["E12", "E45"]),
            f("e16", &["E12", "E24", "E35"]),
            f("e17", &["E12", "E24"]),
            f("e18", &["E12", "E35", "E25"]),
            f("e19", &["E12", "E35"]),
            f("e20", &["E12", "E25"]),
            f("e21", &["E12"]),
            f("e23", &["E23", "E34", "E15"]),
            f("e24", &["E23", "E34"]),
            f("e25", &["E23", "E45", "E24", "E14"]),
            f("e29", &["E23", "E35", "E14"]),
            f("e30", &["E23", "E35"]),
            f("e31", &["E23", "E14"]),
            f("e32", &["E23", "E15"]),
            f("e33", &["E23"]),
            f("e47", &["E13", "E24", "E35"]),
            f("e48", &["E13", "E24"]),
        ],
        TypeLabel::B2 => vec![
            f("x_b", &["x_b"]),
            f("x_a", &["x_a"]),
            f("reg", &["x_a", "x_b"]),
            f("x_a_a2b", &["x_a", "x_a2b"]),
        ],
    }
}

/// Modality of the B-action plus the two dimension identities derived
/// from the discovered records.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModalityReport {
    pub modality: i64,
    /// max over records of orbit_dim + cent_u; must equal dim b.
    pub max_orbit_plus_cent: usize,
    /// max over records of rk(ad_u rep); must equal dim u - ssrk.
    pub max_ad_rank: usize,
}

/// Certify modality 0 (finitely many orbits at every censused prime) and
/// verify the dimension identities. Refuses when discovery did not
/// stabilize (differing signature classes across primes).
pub fn modality_of_action(
    datum: &RootDatum,
    discovery: &Discovery,
) -> Result<ModalityReport, LieError> {
    let mut all: Vec<Signature> = discovery.records.iter().map(|r| r.sig.clone()).collect();
    all.sort();
    for (q, sigs) in &discovery.per_prime_sigs {
        if sigs != &all {
            return Err(LieError::Validation(format!(
                "signature classes at q={q} differ from the merged set; \
                 refusing to certify finiteness"
            )));
        }
    }
    let max_orbit_plus_cent = discovery
        .records
        .iter()
        .map(|r| r.sig.orbit_dim + r.sig.cent_u)
        .max()
        .unwrap_or(0);
    let max_ad_rank = discovery
        .records
        .iter()
        .map(|r| datum.dim_u() - r.sig.cent_u)
        .max()
        .unwrap_or(0);
    if max_orbit_plus_cent != datum.dim_b() {
        return Err(LieError::Validation(format!(
            "max(orbit_dim + cent_u) = {max_orbit_plus_cent} differs from dim b = {}",
            datum.dim_b()
        )));
    }
    if max_ad_rank != datum.dim_u() - datum.ssrk() {
        return Err(LieError::Validation(format!(
            "max rk(ad_u) = {max_ad_rank} differs from dim u - ssrk = {}",
            datum.dim_u() - datum.ssrk()
        )));
    }
    Ok(ModalityReport { modality: 0, max_orbit_plus_cent, max_ad_rank })
}

/// Exhaustiveness audit: coverage, orbit-size divisibility, and the
/// requirement that every finite-field orbit lands in exactly one
/// discovered signature class.
pub fn audit(
    datum: &RootDatum,
    discovery: &Discovery,
    partitions: &[CensusPartition],
) -> Result<(), LieError> {
    for part in partitions {
        let q = part.q;
        let total = (q as u128).pow(part.dim as u32);
        let sum: u128 = part.orbits.iter().map(|o| o.size as u128).sum();
        if sum != total || part.coverage as u128 != total {
            return Err(LieError::Validation(format!(
                "orbit sizes at q={q} sum to {sum}, expected {total}"
            )));
        }
        let borel_order =
            total * ((q - 1) as u128).pow(datum.ssrk() as u32);
        for orbit in &part.orbits {
            if borel_order % orbit.size as u128 != 0 {
                return Err(LieError::Validation(format!(
                    "orbit size {} at q={q} does not divide |B(F_q)| = {borel_order}",
                    orbit.size
                )));
            }
            let canonical: Vec<i64> = orbit
                .lifts
                .first()
                .cloned()
                .unwrap_or_else(|| {
                    orbit
                        .rep
                        .iter()
                        .map(|&v| Fp::reduce(q, v as i64).balanced_lift())
                        .collect()
                });
            let sig = signature(datum, &qlift(&canonical));
            let hits = discovery.records.iter().filter(|r| r.sig == sig).count();
            if hits != 1 {
                return Err(LieError::Validation(format!(
                    "orbit of {:?} at q={q} matches {hits} signature classes",
                    orbit.rep
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Census cache.

pub fn cache_file(dir: &Path, label: TypeLabel, q: u64) -> PathBuf {
    dir.join(format!("{label}_q{q}_v1.json"))
}

pub fn load_cached(dir: &Path, label: TypeLabel, q: u64) -> Option<CensusPartition> {
    let text = std::fs::read_to_string(cache_file(dir, label, q)).ok()?;
    let part: CensusPartition = serde_json::from_str(&text).ok()?;
    (part.label == label && part.q == q).then_some(part)
}

pub fn store_cached(dir: &Path, part: &CensusPartition) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let text = serde_json::to_string(part).expect("serializable");
    std::fs::write(cache_file(dir, part.label, part.q), text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::qvec;

    fn census(label: TypeLabel, qs: &[u64]) -> (std::sync::Arc<RootDatum>, Vec<CensusPartition>) {
        let d = RootDatum::new(label);
        let parts = qs.iter().map(|&q| bfs_census(&d, q, 1 << 30).unwrap()).collect();
        (d, parts)
    }

    #[test]
    fn a2_q2_orbit_sizes() {
        let (_, parts) = census(TypeLabel::A2, &[2]);
        let mut sizes: Vec<u64> = parts[0].orbits.iter().map(|o| o.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(parts[0].coverage, 8);
    }

    #[test]
    fn a1_two_orbits() {
        let (_, parts) = census(TypeLabel::A1, &[5]);
        let mut sizes: Vec<u64> = parts[0].orbits.iter().map(|o| o.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 4]);
    }

    #[test]
    fn a4_q2_coverage() {
        let (_, parts) = census(TypeLabel::A4, &[2]);
        assert_eq!(parts[0].coverage, 1024);
    }

    #[test]
    fn a2_discovery_five_records() {
        let (d, parts) = census(TypeLabel::A2, &[2, 3]);
        let disc = discover_reps(&d, &parts).unwrap();
        assert_eq!(disc.records.len(), 5);
        let regular = disc
            .records
            .iter()
            .find(|r| r.names.contains(&"e1".to_string()))
            .unwrap();
        assert!(regular.distinguished);
        assert_eq!(regular.comp_dim, 5);
        let report = modality_of_action(&d, &disc).unwrap();
        assert_eq!(report.modality, 0);
        assert_eq!(report.max_ad_rank, 1);
        audit(&d, &disc, &parts).unwrap();
    }

    #[test]
    fn b2_merge_is_stable() {
        let (d, parts) = census(TypeLabel::B2, &[2, 3, 5]);
        let disc = discover_reps(&d, &parts).unwrap();
        modality_of_action(&d, &disc).unwrap();
        audit(&d, &disc, &parts).unwrap();
        // The two distinguished classes of the type.
        let dist: Vec<_> = disc.records.iter().filter(|r| r.distinguished).collect();
        assert_eq!(dist.len(), 2);
        for r in dist {
            assert_eq!(r.comp_dim, 6);
            assert_eq!(r.zrank, 2);
        }
    }

    #[test]
    fn a3_discovery_and_audit() {
        let (d, parts) = census(TypeLabel::A3, &[2, 3]);
        let disc = discover_reps(&d, &parts).unwrap();
        modality_of_action(&d, &disc).unwrap();
        audit(&d, &disc, &parts).unwrap();
        let e3 = disc
            .records
            .iter()
            .find(|r| r.names.contains(&"e3".to_string()))
            .unwrap();
        assert!(e3.distinguished);
        assert_eq!(e3.sig.cent_u, 4);
        assert_eq!(e3.comp_dim, 9);
    }

    #[test]
    fn signature_is_generator_invariant() {
        let d = RootDatum::new(TypeLabel::B2);
        let x = from_labels(&d, &["x_b"]);
        let base = signature(&d, &x);
        for g in 0..d.dim_u() {
            let y = d.root_group_act(&QCtx, g, &crate::exact::qi(3), &x);
            assert_eq!(signature(&d, &y), base);
        }
        let y = d.torus_act(&[crate::exact::qi(2), crate::exact::qi(5)], &x);
        assert_eq!(signature(&d, &y), base);
    }

    #[test]
    fn zero_record_shape() {
        let d = RootDatum::new(TypeLabel::A2);
        let (sig, zrank) = analyze(&d, &qvec(&d, &[]));
        assert_eq!(sig.deg, None);
        assert_eq!(sig.cent_u, 3);
        assert_eq!(sig.cent_b, 5);
        assert_eq!(sig.orbit_dim, 0);
        assert_eq!(zrank, 0);
    }

    #[test]
    fn cache_round_trip() {
        let (d, parts) = census(TypeLabel::A2, &[2]);
        let dir = tempfile::tempdir().unwrap();
        store_cached(dir.path(), &parts[0]).unwrap();
        let back = load_cached(dir.path(), d.label(), 2).unwrap();
        assert_eq!(back.orbits.len(), parts[0].orbits.len());
        assert_eq!(back.coverage, parts[0].coverage);
        assert!(load_cached(dir.path(), d.label(), 3).is_none());
    }

    #[test]
    fn budget_refusal() {
        let d = RootDatum::new(TypeLabel::A4);
        assert!(matches!(
            bfs_census(&d, 3, 100),
            Err(LieError::BudgetExceeded { .. })
        ));
    }
}
