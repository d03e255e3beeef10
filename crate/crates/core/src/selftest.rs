//! Built-in verification battery: fifteen named checks that exercise the exact
//! numerical claims the library is built around — reference spectra, pairings,
//! region boundaries, structural identities, transport under embedding, and the
//! sampling-based probes. Each check reports pass/fail with a one-line detail;
//! [`run_all`] runs them in order. The battery is sized to finish in a few
//! seconds, so it can run interactively; the integration test suite repeats the
//! same claims with heavier sampling.

use crate::choi::{choi, choi_op, map_inner, pair};
use crate::detect::{
    atomicity_certificate, canonical_region_states, indecomposability_certificate,
    k_positivity_falsify, minimize_over_ppt, region_scan, verify_bh_robertson_equivalence,
    Conclusion, ATOMIC_BOUNDARY_SUM, INDEC_BOUNDARY_SUM,
};
use crate::error::Result;
use crate::linalg::{hs_inner, CMat};
use crate::maps::{
    breuer_hall, chi_map, coefficient_analysis, hall_map, pair_vector, random_antisym_unitary,
    reduction_map, robertson, trace_map, AntisymOp, CoeffMatrix, HallVariant,
};
use crate::rng;
use crate::states::{
    embed, gamma_conjugate, ha_schmidt_certificates, ppt_check, rho_ha, rho_new,
    schmidt_rank_pure, GammaSide, HaVariant, SCHMIDT_TOL,
};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn run(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match body() {
        Ok((pass, detail)) => CheckResult { name, pass, detail },
        Err(e) => CheckResult {
            name,
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

/// The block-map witness has eigenvalues −1 (×1), 0 (×10), +1 (×5) and trace 4.
pub fn robertson_witness_spectrum() -> CheckResult {
    run("robertson_witness_spectrum", || {
        let w = choi(&robertson())?;
        let near = |t: f64| w.spectrum.iter().filter(|&&l| (l - t).abs() <= 1e-9).count();
        let clusters = (near(-1.0), near(0.0), near(1.0));
        let pass = clusters == (1, 10, 5)
            && w.spectrum.len() == 16
            && (w.trace() - 4.0).abs() <= 1e-12;
        Ok((
            pass,
            format!(
                "eigenvalue clusters at (-1, 0, +1) = {:?}, trace = {:.12}",
                clusters,
                w.trace()
            ),
        ))
    })
}

/// Pairing of the first reference state with the block map is exactly −1/14.
pub fn ha_state_robertson_pairing() -> CheckResult {
    run("ha_state_robertson_pairing", || {
        let v = pair(&rho_ha(HaVariant::Dim4).op, &robertson())?;
        let dev = (v - (-1.0 / 14.0)).abs();
        Ok((dev <= 1e-12, format!("pairing = {v:.15} (target -1/14, dev {dev:.2e})")))
    })
}

/// Pairing of the second reference state with the block map is exactly −1/6.
pub fn new_state_robertson_pairing() -> CheckResult {
    run("new_state_robertson_pairing", || {
        let v = pair(&rho_new().op, &robertson())?;
        let dev = (v - (-1.0 / 6.0)).abs();
        Ok((dev <= 1e-12, format!("pairing = {v:.15} (target -1/6, dev {dev:.2e})")))
    })
}

/// All three reference states are Hermitian, normalized, positive, and PPT.
pub fn canonical_states_ppt() -> CheckResult {
    run("canonical_states_ppt", || {
        let states = [
            ("ha", rho_ha(HaVariant::Dim4)),
            ("new", rho_new()),
            ("ha3", rho_ha(HaVariant::Dim3)),
        ];
        let mut pass = true;
        let mut worst: f64 = 0.0;
        for (_, s) in &states {
            let herm = s.op.mat.hermitian_deviation();
            let tr = (s.op.mat.trace().re - 1.0).abs();
            let rep = ppt_check(s, 1e-12)?;
            pass &= herm <= 1e-14 && tr <= 1e-14 && rep.is_psd && rep.is_ppt;
            worst = worst.min(rep.min_eig).min(rep.min_eig_pt);
        }
        Ok((
            pass,
            format!("3 states checked; most negative (state, transpose) eigenvalue = {worst:.2e}"),
        ))
    })
}

/// Pairings of the conjugated reference states with the two-parameter family follow
/// the closed forms (7−4x−4y)/7 and (24−16x−16y)/24 on an 11×11 grid.
pub fn affine_pairing_grid() -> CheckResult {
    run("affine_pairing_grid", || {
        let u0 = AntisymOp::canonical(4)?;
        let ha = gamma_conjugate(&rho_ha(HaVariant::Dim4), GammaSide::SecondFactor)?;
        let new = gamma_conjugate(&rho_new(), GammaSide::SecondFactor)?;
        let mut max_dev: f64 = 0.0;
        for i in 0..11 {
            for j in 0..11 {
                let x = i as f64 / 10.0;
                let y = j as f64 / 10.0;
                let chi = chi_map(x, y, &u0)?;
                let pa = pair(&ha.op, &chi)?;
                let pb = pair(&new.op, &chi)?;
                max_dev = max_dev
                    .max((pa - (7.0 - 4.0 * x - 4.0 * y) / 7.0).abs())
                    .max((pb - (24.0 - 16.0 * x - 16.0 * y) / 24.0).abs());
            }
        }
        Ok((max_dev <= 1e-12, format!("121 grid points, max deviation {max_dev:.2e}")))
    })
}

/// Region-scan labels match the half-planes x+y > 7/4 (atomic) and x+y > 3/2
/// (indecomposable) exactly on a 16×16 grid.
pub fn region_scan_boundaries() -> CheckResult {
    run("region_scan_boundaries", || {
        let u0 = AntisymOp::canonical(4)?;
        let report = region_scan(&u0, 16, &canonical_region_states())?;
        let mut mislabeled = 0usize;
        for &(x, y, c) in &report.grid {
            let want = if x + y > ATOMIC_BOUNDARY_SUM {
                Conclusion::AtomicCertified
            } else if x + y > INDEC_BOUNDARY_SUM {
                Conclusion::IndecomposableCertified
            } else {
                Conclusion::Inconclusive
            };
            if c != want {
                mislabeled += 1;
            }
        }
        Ok((
            mislabeled == 0,
            format!("{} grid points, {} mislabeled", report.grid.len(), mislabeled),
        ))
    })
}

/// On pure inputs the unnormalized antisymmetric-conjugation map produces the exact
/// spectrum {0, 0, 1, …, 1}: the input vector and its conjugated partner are
/// orthogonal eigenvectors with eigenvalue zero.
pub fn breuer_hall_rank_structure() -> CheckResult {
    run("breuer_hall_rank_structure", || {
        let mut max_dev: f64 = 0.0;
        for d in [4usize, 6] {
            for s in 0..20u64 {
                let u = random_antisym_unitary(d, 100 * d as u64 + s)?;
                let phi = breuer_hall(&u, false)?;
                let mut r = rng::chacha(777 + s);
                let v = rng::random_unit_vec(d, &mut r);
                let mut proj = CMat::zeros(d, d);
                for i in 0..d {
                    for j in 0..d {
                        proj[(i, j)] = v[i] * v[j].conj();
                    }
                }
                let eig = crate::linalg::hermitian_eig(&phi.apply(&proj)?, 1e-10)?;
                for (k, &lam) in eig.values.iter().enumerate() {
                    let target = if k < 2 { 0.0 } else { 1.0 };
                    max_dev = max_dev.max((lam - target).abs());
                }
            }
        }
        Ok((max_dev <= 1e-9, format!("40 pure inputs, max spectral deviation {max_dev:.2e}")))
    })
}

/// The normalized d=4 antisymmetric-conjugation map at U = V·U₀·V^T is the block
/// map conjugated by VΓ, for random real orthogonal V.
pub fn bh_robertson_equivalence() -> CheckResult {
    run("bh_robertson_equivalence", || {
        let mut worst: f64 = 0.0;
        let id = verify_bh_robertson_equivalence(&CMat::identity(4), 10, 1)?;
        let mut pass = id.pass && id.sign_residual == Some(0.0);
        worst = worst.max(id.max_residual);
        for s in 0..5u64 {
            let v = crate::maps::random_orthogonal(4, 2000 + s);
            let rep = verify_bh_robertson_equivalence(&v, 10, 50 + s)?;
            pass &= rep.pass;
            worst = worst.max(rep.max_residual);
        }
        Ok((pass, format!("identity + 5 random conjugations, max residual {worst:.2e}")))
    })
}

/// The coefficient matrix y·I − x·uu† of the two-parameter family has smallest
/// eigenvalue exactly y − x·(rank/2).
pub fn coefficient_min_eigenvalue() -> CheckResult {
    run("coefficient_min_eigenvalue", || {
        let cases = [(4usize, 4usize), (6, 4), (6, 6)];
        let mut max_dev: f64 = 0.0;
        for &(d, rank) in &cases {
            let u = AntisymOp::embedded_canonical(d, rank)?;
            let k = (rank / 2) as f64;
            for &(x, y) in &[(1.0, 1.0), (0.5, 1.0), (1.0, 0.25), (0.3, 0.8)] {
                let (_, _, min_eig) = coefficient_analysis(x, y, &u)?;
                max_dev = max_dev.max((min_eig - (y - x * k)).abs());
            }
        }
        Ok((max_dev <= 1e-12, format!("12 cases, max deviation from y - xk: {max_dev:.2e}")))
    })
}

/// The pair-generator expansion reproduces known maps: identity coefficients give
/// the reduction map, and the rank-one coefficient from the pair vector gives
/// antisymmetric conjugation X ↦ U·X^T·U†.
pub fn hall_identity_maps() -> CheckResult {
    run("hall_identity_maps", || {
        let mut max_dev: f64 = 0.0;
        for d in [3usize, 4] {
            let h = hall_map(&CoeffMatrix::identity(d), HallVariant::Transposed);
            max_dev = max_dev.max(h.mat.max_abs_diff(&reduction_map(d)?.mat));
        }
        let u0 = AntisymOp::canonical(4)?;
        let u = pair_vector(&u0);
        let m = u.len();
        let mut outer = CMat::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                outer[(a, b)] = u[a] * u[b].conj();
            }
        }
        let conj = hall_map(&CoeffMatrix::new(4, outer)?, HallVariant::Transposed);
        let udag = u0.u.adjoint();
        let direct = crate::maps::LinMap::from_action(4, "conjugation", |i, j| {
            u0.u.mul(&CMat::unit(4, j, i)).mul(&udag)
        })?;
        max_dev = max_dev.max(conj.mat.max_abs_diff(&direct.mat));
        Ok((max_dev <= 1e-12, format!("max deviation {max_dev:.2e}")))
    })
}

/// The witness construction is an isomorphism: converting back recovers the map
/// bit-exactly, and it preserves inner products.
pub fn choi_isomorphism() -> CheckResult {
    run("choi_isomorphism", || {
        let u0 = AntisymOp::canonical(4)?;
        let maps = [robertson(), chi_map(0.3, 0.7, &u0)?, reduction_map(4)?];
        let mut exact = true;
        let mut max_dev: f64 = 0.0;
        for m in &maps {
            let back = crate::choi::map_from_choi(&choi_op(m))?;
            exact &= back.mat.entries == m.mat.entries;
        }
        for a in &maps {
            for b in &maps {
                let lhs = map_inner(a, b)?;
                let rhs = hs_inner(&choi_op(a).mat, &choi_op(b).mat)?;
                max_dev = max_dev.max((lhs - rhs).norm());
            }
        }
        Ok((
            exact && max_dev <= 1e-10,
            format!("round-trip exact: {exact}; inner-product deviation {max_dev:.2e}"),
        ))
    })
}

/// Embedding the 4⊗4 probes into 6⊗6 reproduces every pairing exactly, and the
/// transported certificates still certify atomicity.
pub fn embedding_transport() -> CheckResult {
    run("embedding_transport", || {
        let big = 6usize;
        let ha_g = gamma_conjugate(&rho_ha(HaVariant::Dim4), GammaSide::SecondFactor)?;
        let new_g = gamma_conjugate(&rho_new(), GammaSide::SecondFactor)?;
        let ha_e = embed(&ha_g, big)?;
        let new_e = embed(&new_g, big)?;
        let u = AntisymOp::embedded_canonical(big, 4)?;
        let bh = breuer_hall(&u, false)?;
        let chi11 = chi_map(1.0, 1.0, &u)?;

        let p1 = 0.5 * pair(&ha_e.op, &bh)?;
        let p2 = 0.5 * pair(&new_e.op, &bh)?;
        let p3 = pair(&ha_e.op, &chi11)?;
        let p4 = pair(&new_e.op, &chi11)?;
        let dev = (p1 + 1.0 / 14.0)
            .abs()
            .max((p2 + 1.0 / 6.0).abs())
            .max((p3 + 1.0 / 7.0).abs())
            .max((p4 + 1.0 / 3.0).abs());

        let gamma = CMat::diag_real(&[1.0, 1.0, -1.0, -1.0]);
        let (c, cpt) = ha_schmidt_certificates();
        let c = c.map_second_factor(4, 4, &gamma)?.embedded(4, big)?;
        let cpt = cpt.map_second_factor(4, 4, &gamma)?.embedded(4, big)?;
        let atomic = atomicity_certificate(&chi11, &ha_e, &c, &cpt, 1e-12)?;
        let indec = indecomposability_certificate(&chi11, &new_e, 1e-12)?;
        let pass = dev <= 1e-12
            && atomic.conclusion == Conclusion::AtomicCertified
            && indec.conclusion == Conclusion::IndecomposableCertified;
        Ok((
            pass,
            format!(
                "pairing deviation {dev:.2e}; conclusions: {} / {}",
                atomic.conclusion.label(),
                indec.conclusion.label()
            ),
        ))
    })
}

/// Projected search over states with positive partial transpose drives the block
/// witness down to −1/6 (and no further).
pub fn ppt_minimum_probe() -> CheckResult {
    run("ppt_minimum_probe", || {
        let w = choi(&robertson())?;
        let res = minimize_over_ppt(&w, 2000, 0.5, 5)?;
        let rep = ppt_check(&res.rho_star, 1e-9)?;
        let target = -1.0 / 6.0;
        let in_band = res.min_value >= target - 1e-3 && res.min_value <= target + 1e-3;
        let mut monotone = true;
        for w2 in res.history.windows(2) {
            monotone &= w2[1] <= w2[0] + 1e-12;
        }
        Ok((
            in_band && rep.is_psd && rep.is_ppt && monotone,
            format!(
                "minimum {:.9} (target -1/6 = {:.9}), state feasible: {}, monotone: {}",
                res.min_value,
                target,
                rep.is_psd && rep.is_ppt,
                monotone
            ),
        ))
    })
}

/// The full atomicity pipeline on the first reference state: negative pairing plus
/// verified Schmidt-number-2 certificates for the state and its partial transpose.
pub fn schmidt_atomicity_certificate() -> CheckResult {
    run("schmidt_atomicity_certificate", || {
        let rho = rho_ha(HaVariant::Dim4);
        let (c, cpt) = ha_schmidt_certificates();
        let res = atomicity_certificate(&robertson(), &rho, &c, &cpt, 1e-12)?;
        let pass = res.conclusion == Conclusion::AtomicCertified
            && (res.pairing_value + 1.0 / 14.0).abs() <= 1e-12;
        Ok((
            pass,
            format!(
                "conclusion {}, pairing {:.15}",
                res.conclusion.label(),
                res.pairing_value
            ),
        ))
    })
}

/// The sampling falsifier finds a Schmidt-rank-2 counterexample to 2-positivity of
/// the reduction map, and never falsifies the completely positive trace map.
pub fn falsifier_sanity() -> CheckResult {
    run("falsifier_sanity", || {
        let hit = k_positivity_falsify(&reduction_map(4)?, 2, 50, 9, 1e-9)?;
        let found = match &hit {
            Some(f) => {
                let rank = schmidt_rank_pure(&f.vector, 4, 4, SCHMIDT_TOL)?;
                f.min_eig < -1e-6 && rank <= 2
            }
            None => false,
        };
        let none = k_positivity_falsify(&trace_map(4)?, 4, 50, 9, 1e-9)?.is_none();
        let detail = match &hit {
            Some(f) => format!(
                "reduction-map counterexample at trial {} with eigenvalue {:.6}; trace map clean: {none}",
                f.trial, f.min_eig
            ),
            None => "no counterexample found for the reduction map".to_string(),
        };
        Ok((found && none, detail))
    })
}

/// Run all fifteen checks in order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        robertson_witness_spectrum(),
        ha_state_robertson_pairing(),
        new_state_robertson_pairing(),
        canonical_states_ppt(),
        affine_pairing_grid(),
        region_scan_boundaries(),
        breuer_hall_rank_structure(),
        bh_robertson_equivalence(),
        coefficient_min_eigenvalue(),
        hall_identity_maps(),
        choi_isomorphism(),
        embedding_transport(),
        ppt_minimum_probe(),
        schmidt_atomicity_certificate(),
        falsifier_sanity(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        let results = run_all();
        assert_eq!(results.len(), 15);
        for r in &results {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn check_names_are_unique_and_stable() {
        let results = run_all();
        let names: Vec<_> = results.iter().map(|r| r.name).collect();
        let expected = [
            "robertson_witness_spectrum",
            "ha_state_robertson_pairing",
            "new_state_robertson_pairing",
            "canonical_states_ppt",
            "affine_pairing_grid",
            "region_scan_boundaries",
            "breuer_hall_rank_structure",
            "bh_robertson_equivalence",
            "coefficient_min_eigenvalue",
            "hall_identity_maps",
            "choi_isomorphism",
            "embedding_transport",
            "ppt_minimum_probe",
            "schmidt_atomicity_certificate",
            "falsifier_sanity",
        ];
        assert_eq!(names, expected);
    }
}
