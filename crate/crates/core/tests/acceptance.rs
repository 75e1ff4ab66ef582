//! Acceptance suite: one test per release criterion, each printing a
//! single PASS line (cargo reports FAIL on assertion failure).

use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

use cvcore::census::{
    census_report, count_a2, strata_oracle_crosscheck_at, witt_chain_report,
};
use cvcore::components::{
    abelian_plane_report, assemble_components, check_golden, load_bundled_certificates,
    parse_certificate, verify_certificate, CertificateRaw, ComponentReport,
};
use cvcore::orbits::{audit, bfs_census, discover_reps, modality_of_action, CensusPartition, Discovery};
use cvcore::rootsys::{RootDatum, TypeLabel};

const BUDGET: u128 = 100_000_000;
const ALL_TYPES: [TypeLabel; 5] =
    [TypeLabel::A1, TypeLabel::A2, TypeLabel::A3, TypeLabel::A4, TypeLabel::B2];

fn setup(
    label: TypeLabel,
) -> (std::sync::Arc<RootDatum>, Vec<CensusPartition>, Discovery, ComponentReport) {
    let datum = RootDatum::new(label);
    let parts: Vec<CensusPartition> = [2u64, 3]
        .iter()
        .map(|&q| bfs_census(&datum, q, BUDGET).unwrap())
        .collect();
    let discovery = discover_reps(&datum, &parts).unwrap();
    let bundled = load_bundled_certificates().unwrap();
    let report = assemble_components(&datum, &discovery, &bundled).unwrap();
    (datum, parts, discovery, report)
}

/// Criterion 1: component counts 1/1/2/5/2 with equal dimensions per type
/// (A1: 2, A2: 5, A3: 9, A4: 14, B2: 6) and zero unresolved records.
#[test]
fn criterion_1_component_counts() {
    let expected = [
        (TypeLabel::A1, 1usize, 2usize),
        (TypeLabel::A2, 1, 5),
        (TypeLabel::A3, 2, 9),
        (TypeLabel::A4, 5, 14),
        (TypeLabel::B2, 2, 6),
    ];
    for (label, count, dim) in expected {
        let (datum, _, _, report) = setup(label);
        check_golden(&datum, &report).unwrap();
        assert_eq!(report.components.len(), count, "{label}");
        assert!(report.unresolved.is_empty(), "{label}");
        for c in &report.components {
            assert_eq!(c.comp_dim, dim, "{label}");
        }
    }
    println!("PASS criterion 1: component counts 1/1/2/5/2 with dims 2/5/9/14/6, none unresolved");
}

/// Criterion 2: A4 component structure. One regular class plus two
/// diagram-flip pairs, all distinguished (cent_b = cent_u).
#[test]
fn criterion_2_a4_structure() {
    let (_, _, discovery, report) = setup(TypeLabel::A4);
    let msupps: Vec<Vec<String>> = report
        .components
        .iter()
        .map(|c| {
            let mut m = c.msupp.clone();
            m.sort();
            m
        })
        .collect();
    let set = |labels: &[&str]| {
        let mut v: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    };
    // Simple roots: a1 = E12, a2 = E23, a3 = E34, a4 = E45.
    let regular = set(&["E12", "E23", "E34", "E45"]);
    let pair_a = [set(&["E12", "E23", "E45"]), set(&["E12", "E34", "E45"])];
    let pair_b = [set(&["E12", "E34"]), set(&["E23", "E45"])];
    assert_eq!(msupps.iter().filter(|m| **m == regular).count(), 1);
    for want in pair_a.iter().chain(pair_b.iter()) {
        assert_eq!(msupps.iter().filter(|m| *m == want).count(), 1, "{want:?}");
    }
    for c in &report.components {
        let rec = &discovery.records[c.record];
        assert!(rec.distinguished);
        assert_eq!(rec.sig.cent_b, rec.sig.cent_u, "rep {}", c.rep);
    }
    println!(
        "PASS criterion 2: A4 reps are one regular class plus the flip pairs \
         {{a1,a2,a4}}/{{a1,a3,a4}} and {{a1,a3}}/{{a2,a4}}, all distinguished"
    );
}

/// Criterion 3: dimension formula. max(orbit_dim + cent_u) = dim B and
/// max rk(ad_u x) = dim u - ssrk for every type.
#[test]
fn criterion_3_dimension_formula() {
    for label in ALL_TYPES {
        let (datum, _, discovery, _) = setup(label);
        let m = modality_of_action(&datum, &discovery).unwrap();
        assert_eq!(m.modality, 0, "{label}");
        assert_eq!(m.max_orbit_plus_cent, datum.dim_b(), "{label}");
        assert_eq!(m.max_ad_rank, datum.dim_u() - datum.ssrk(), "{label}");
    }
    println!(
        "PASS criterion 3: max(orbit_dim + cent_u) = dim B and \
         max rk(ad_u) = dim u - ssrk for all five types"
    );
}

/// Criterion 4: the A2 count interpolates to q^5 + q^4 - q^3 over six
/// primes, and the orbit census agrees with the centralizer sum for
/// A2/A3/B2 at q in {2,3} and A4 at q = 2.
#[test]
fn criterion_4_counting_oracle() {
    let datum = RootDatum::new(TypeLabel::A2);
    let report =
        census_report(datum.u_algebra(), &[2, 3, 5, 7, 11, 13], BUDGET, Some(5)).unwrap();
    assert_eq!(report.method, "interpolation");
    assert_eq!(report.dim, 5);
    assert_eq!(
        report.poly.as_deref().unwrap(),
        ["0", "0", "0", "-1", "1", "1"]
    );
    for (label, qs) in [
        (TypeLabel::A2, &[2u64, 3][..]),
        (TypeLabel::A3, &[2, 3]),
        (TypeLabel::B2, &[2, 3]),
        (TypeLabel::A4, &[2]),
    ] {
        let datum = RootDatum::new(label);
        for &q in qs {
            strata_oracle_crosscheck_at(&datum, q, BUDGET).unwrap();
        }
    }
    println!(
        "PASS criterion 4: A2 counts interpolate to q^5 + q^4 - q^3; orbit \
         census matches the centralizer sum (A2/A3/B2 at 2,3; A4 at 2)"
    );
}

/// Criterion 5: abelian planes. |A(2,u)| = q + 1 for A2 at q in {2,3,5},
/// GL2-quotient integrality everywhere, per-component plane dimension =
/// component dimension - 4.
#[test]
fn criterion_5_abelian_planes() {
    let a2 = RootDatum::new(TypeLabel::A2);
    for q in [2u64, 3, 5] {
        assert_eq!(count_a2(a2.u_algebra(), q, BUDGET).unwrap(), BigInt::from(q + 1));
    }
    for label in ALL_TYPES {
        let datum = RootDatum::new(label);
        for q in [2u64, 3] {
            // count_a2 errors on any non-integral GL2 quotient.
            count_a2(datum.u_algebra(), q, BUDGET).unwrap();
        }
    }
    for label in [TypeLabel::A2, TypeLabel::A3, TypeLabel::A4, TypeLabel::B2] {
        let (datum, _, _, report) = setup(label);
        let planes = abelian_plane_report(&datum, &report).unwrap();
        assert_eq!(planes.count, report.components.len(), "{label}");
        for (dim, c) in planes.dims.iter().zip(&report.components) {
            assert_eq!(*dim, c.comp_dim - 4, "{label}");
        }
    }
    println!(
        "PASS criterion 5: A2 planes count q + 1; GL2 integrality at all \
         censused points; plane dims = component dims - 4"
    );
}

/// Criterion 6: Witt chain at p in {5,7}. Kernel table on all p^p
/// elements, modalities 1/1/2, dim C2 = p+1/p/p, component counts
/// (p-1)/2, (p-1)/2, (p-3)/2.
#[test]
fn criterion_6_witt_chain() {
    for p in [5u64, 7] {
        let report = witt_chain_report(p, BUDGET).unwrap();
        assert_eq!(report.kernel_table_checked, (p as u128).pow(p as u32));
        let got: Vec<(i64, i64, usize)> = report
            .algebras
            .iter()
            .map(|a| (a.modality, a.dim_c2, a.component_count))
            .collect();
        let p_ = p as i64;
        let pu = p as usize;
        assert_eq!(
            got,
            vec![
                (1, p_ + 1, (pu - 1) / 2),
                (1, p_, (pu - 1) / 2),
                (2, p_, (pu - 3) / 2),
            ],
            "p = {p}"
        );
        assert_eq!(report.nilcone_dim, p_, "p = {p}");
    }
    println!(
        "PASS criterion 6: Witt chain at p = 5, 7 (kernel table, modalities \
         1/1/2, dim C2 = p+1/p/p, component counts)"
    );
}

/// Every rational coefficient slot of a raw certificate: base, target and
/// both curve grids. Returns mutated copies with that one slot changed.
fn coefficient_mutations(raw: &CertificateRaw) -> Vec<(String, CertificateRaw)> {
    let bump = |s: &str| -> String {
        let v = BigRational::from_str(s).expect("bundled coefficients are plain rationals");
        (v + BigRational::from_integer(1.into())).to_string()
    };
    let mut out = Vec::new();
    for (i, s) in raw.base.iter().enumerate() {
        let mut m = raw.clone();
        m.base[i] = bump(s);
        out.push((format!("base[{i}]"), m));
    }
    for (i, s) in raw.target.iter().enumerate() {
        let mut m = raw.clone();
        m.target[i] = bump(s);
        out.push((format!("target[{i}]"), m));
    }
    for (c, grid) in raw.curve_x.iter().enumerate() {
        for (a, row) in grid.iter().enumerate() {
            for (b, s) in row.iter().enumerate() {
                let mut m = raw.clone();
                m.curve_x[c][a][b] = bump(s);
                out.push((format!("curve_x[{c}][{a}][{b}]"), m));
            }
        }
    }
    for (j, curve) in raw.curves_y.iter().enumerate() {
        for (c, grid) in curve.iter().enumerate() {
            for (a, row) in grid.iter().enumerate() {
                for (b, s) in row.iter().enumerate() {
                    let mut m = raw.clone();
                    m.curves_y[j][c][a][b] = bump(s);
                    out.push((format!("curves_y[{j}][{c}][{a}][{b}]"), m));
                }
            }
        }
    }
    out
}

/// Criterion 7: every bundled certificate verifies, and every
/// single-coefficient mutation of every certificate is rejected.
#[test]
fn criterion_7_certificate_suite() {
    let bundled = load_bundled_certificates().unwrap();
    assert!(!bundled.is_empty());
    let mut mutations = 0usize;
    let mut survivors = Vec::new();
    for (name, raw) in &bundled {
        let cert = parse_certificate(raw).unwrap();
        let datum = RootDatum::new(cert.type_label);
        verify_certificate(&datum, &cert).unwrap_or_else(|e| panic!("{name}: {e}"));
        for (slot, mutated) in coefficient_mutations(raw) {
            mutations += 1;
            let accepted = parse_certificate(&mutated)
                .and_then(|c| verify_certificate(&datum, &c))
                .is_ok();
            if accepted {
                survivors.push(format!("{name} {slot}"));
            }
        }
    }
    assert!(
        survivors.is_empty(),
        "mutations accepted: {survivors:?}"
    );
    println!(
        "PASS criterion 7: {} bundled certificates verify; all {} \
         single-coefficient mutations rejected",
        bundled.len(),
        mutations
    );
}

/// Criterion 8: orbit audit. Sizes sum to q^dim, divide |B(F_q)|, and
/// every orbit matches exactly one discovered signature class.
#[test]
fn criterion_8_orbit_audit() {
    for label in ALL_TYPES {
        let (datum, parts, discovery, _) = setup(label);
        audit(&datum, &discovery, &parts).unwrap();
    }
    println!(
        "PASS criterion 8: orbit sizes sum to q^dim, divide |B(F_q)|, and \
         signatures match uniquely for all five types at q = 2, 3"
    );
}
