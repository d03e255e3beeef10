//! Reference bipartite states and the state-side toolkit: positivity and
//! partial-transposition checks, symmetry conjugations, dimension embeddings,
//! Schmidt ranks of pure vectors, and verifiable Schmidt-number certificates.
//!
//! The two 4⊗4 reference states and the 3⊗3 variant are entangled but have positive
//! partial transpose, which is what makes them useful probes: only witnesses outside
//! the decomposable cone can see them.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{cr, kron, partial_transpose, singular_values, BipOp, CMat, Side, ZERO};
use crate::rng;

/// A bipartite state: Hermitian block operator, optionally trace-normalized.
#[derive(Debug, Clone)]
pub struct BipState {
    pub op: BipOp,
    pub normalized: bool,
}

impl BipState {
    /// Wrap an operator as a state. Hermiticity is required; unit trace is required
    /// when `normalized` is set.
    pub fn new(op: BipOp, normalized: bool) -> Result<BipState> {
        let dev = op.mat.hermitian_deviation();
        if dev > 1e-12 {
            return Err(Error::NotHermitian(dev));
        }
        if normalized {
            let t = op.mat.trace();
            let err = (t.re - 1.0).abs().max(t.im.abs());
            if err > 1e-12 {
                return Err(Error::NotNormalized(err));
            }
        }
        Ok(BipState { op, normalized })
    }

    /// Partial transpose on the second factor, as a state (Hermiticity and trace
    /// are preserved exactly).
    pub fn partial_transposed(&self) -> BipState {
        BipState {
            op: partial_transpose(&self.op, Side::B),
            normalized: self.normalized,
        }
    }
}

/// Which reference-state dimension to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaVariant {
    Dim4,
    Dim3,
}

/// First reference state (trace-normalized). The 4⊗4 form is supported on a 3⊗3
/// corner; the 3⊗3 form is the same state written in the smaller space.
pub fn rho_ha(variant: HaVariant) -> BipState {
    let mat = match variant {
        HaVariant::Dim4 => {
            let mut m = CMat::zeros(16, 16);
            for i in [0usize, 2, 4, 7, 8, 10, 11] {
                m[(i, i)] = cr(1.0 / 7.0);
            }
            m[(0, 10)] = cr(-1.0 / 7.0);
            m[(10, 0)] = cr(-1.0 / 7.0);
            m[(7, 8)] = cr(1.0 / 7.0);
            m[(8, 7)] = cr(1.0 / 7.0);
            BipOp { da: 4, db: 4, mat: m }
        }
        HaVariant::Dim3 => {
            let mut m = CMat::zeros(9, 9);
            for (i, &v) in [1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0].iter().enumerate() {
                m[(i, i)] = cr(v / 7.0);
            }
            m[(0, 7)] = cr(-1.0 / 7.0);
            m[(7, 0)] = cr(-1.0 / 7.0);
            m[(5, 6)] = cr(1.0 / 7.0);
            m[(6, 5)] = cr(1.0 / 7.0);
            BipOp { da: 3, db: 3, mat: m }
        }
    };
    BipState::new(mat, true).expect("reference state table is Hermitian with unit trace")
}

/// Second reference state on 4⊗4 (trace-normalized), with denser couplings across
/// the diagonal corner block.
pub fn rho_new() -> BipState {
    let mut m = CMat::zeros(16, 16);
    let mut set = |i: usize, j: usize, n: f64| {
        m[(i, j)] = cr(n / 24.0);
        if i != j {
            m[(j, i)] = cr(n / 24.0);
        }
    };
    for i in [0usize, 1, 4, 5, 10, 11, 14, 15] {
        set(i, i, 2.0);
    }
    for i in [2usize, 3, 6, 7, 8, 9, 12, 13] {
        set(i, i, 1.0);
    }
    set(0, 10, -1.0);
    set(0, 15, -1.0);
    set(5, 10, -1.0);
    set(5, 15, -1.0);
    set(2, 13, 1.0);
    set(3, 9, -1.0);
    set(6, 12, -1.0);
    set(7, 8, 1.0);
    BipState::new(BipOp { da: 4, db: 4, mat: m }, true)
        .expect("reference state table is Hermitian with unit trace")
}

/// Which factors the diagonal sign operator Γ = diag(1,1,−1,−1) conjugates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSide {
    SecondFactor,
    BothFactors,
}

fn gamma4() -> CMat {
    CMat::diag_real(&[1.0, 1.0, -1.0, -1.0])
}

/// Conjugate a 4⊗4 state by Γ on the chosen factors. Γ is a diagonal sign unitary,
/// so the conjugation flips entry signs exactly and preserves spectrum and trace.
pub fn gamma_conjugate(rho: &BipState, side: GammaSide) -> Result<BipState> {
    if rho.op.da != 4 || rho.op.db != 4 {
        return Err(Error::BadDim(format!(
            "gamma conjugation is defined on 4⊗4, state is {}⊗{}",
            rho.op.da, rho.op.db
        )));
    }
    let g = match side {
        GammaSide::SecondFactor => kron(&CMat::identity(4), &gamma4()),
        GammaSide::BothFactors => kron(&gamma4(), &gamma4()),
    };
    let mat = g.mul(&rho.op.mat).mul(&g);
    BipState::new(BipOp { da: 4, db: 4, mat }, rho.normalized)
}

/// Embed a d₀⊗d₀ state into D⊗D by zero-padding both factors (basis vectors keep
/// their indices). Trace and spectrum are unchanged; entries are moved, not touched.
pub fn embed(rho: &BipState, big: usize) -> Result<BipState> {
    if rho.op.da != rho.op.db {
        return Err(Error::BadDim(format!(
            "embedding needs equal factors, state is {}⊗{}",
            rho.op.da, rho.op.db
        )));
    }
    let d0 = rho.op.da;
    if big < d0 {
        return Err(Error::BadDim(format!(
            "cannot embed a {d0}⊗{d0} state into {big}⊗{big}"
        )));
    }
    let mut mat = CMat::zeros(big * big, big * big);
    for i in 0..d0 {
        for j in 0..d0 {
            for k in 0..d0 {
                for l in 0..d0 {
                    mat[(i * big + j, k * big + l)] = rho.op.mat[(i * d0 + j, k * d0 + l)];
                }
            }
        }
    }
    BipState::new(
        BipOp {
            da: big,
            db: big,
            mat,
        },
        rho.normalized,
    )
}

/// Positivity facts about a state and its partial transpose.
#[derive(Debug, Clone, Copy)]
pub struct PptReport {
    pub is_psd: bool,
    pub is_ppt: bool,
    pub min_eig: f64,
    pub min_eig_pt: f64,
}

/// Diagonalize the state and its partial transpose; `is_psd`/`is_ppt` allow
/// eigenvalues down to −tol.
pub fn ppt_check(rho: &BipState, tol: f64) -> Result<PptReport> {
    let dev = rho.op.mat.hermitian_deviation();
    if dev > 1e-12 {
        return Err(Error::NotHermitian(dev));
    }
    let eig = crate::linalg::hermitian_eig(&rho.op.mat, 1e-12)?;
    let pt = partial_transpose(&rho.op, Side::B);
    let eig_pt = crate::linalg::hermitian_eig(&pt.mat, 1e-12)?;
    let min_eig = eig.values[0];
    let min_eig_pt = eig_pt.values[0];
    Ok(PptReport {
        is_psd: min_eig >= -tol,
        is_ppt: min_eig_pt >= -tol,
        min_eig,
        min_eig_pt,
    })
}

/// Schmidt rank of a pure vector on dA⊗dB: the number of singular values of its
/// dA×dB coefficient matrix above tol·σ_max.
pub fn schmidt_rank_pure(v: &[Complex64], da: usize, db: usize, tol: f64) -> Result<usize> {
    if v.len() != da * db {
        return Err(Error::DimMismatch(format!(
            "vector length {} does not match {da}⊗{db}",
            v.len()
        )));
    }
    if v.iter().all(|z| *z == ZERO) {
        return Err(Error::ZeroVector);
    }
    let m = CMat {
        rows: da,
        cols: db,
        entries: v.to_vec(),
    };
    let sv = singular_values(&m)?;
    let cutoff = tol * sv[0];
    Ok(sv.iter().filter(|&&s| s > cutoff).count())
}

/// Relative cutoff used when counting Schmidt coefficients.
pub const SCHMIDT_TOL: f64 = 1e-8;

/// Claimed convex decomposition ρ = Σ w_t |v_t⟩⟨v_t| with every |v_t⟩ of Schmidt
/// rank at most `claimed_k`. Verifying one bounds the state's Schmidt number.
#[derive(Debug, Clone)]
pub struct SchmidtCertificate {
    /// (weight, vector) terms; weights ≥ 0, vectors of length dA·dB (not necessarily
    /// unit — the weight absorbs normalization).
    pub terms: Vec<(f64, Vec<Complex64>)>,
    pub claimed_k: usize,
}

impl SchmidtCertificate {
    pub fn new(terms: Vec<(f64, Vec<Complex64>)>, claimed_k: usize) -> SchmidtCertificate {
        SchmidtCertificate { terms, claimed_k }
    }

    /// Transport the certificate through a local operator g on the second factor:
    /// each term vector v ↦ (𝟙⊗g)v. For unitary g Schmidt ranks are unchanged, so
    /// the transported certificate certifies (𝟙⊗g)ρ(𝟙⊗g)†.
    pub fn map_second_factor(&self, da: usize, db: usize, g: &CMat) -> Result<SchmidtCertificate> {
        if (g.rows, g.cols) != (db, db) {
            return Err(Error::DimMismatch(format!(
                "second-factor operator is {}x{}, expected {db}x{db}",
                g.rows, g.cols
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, v) in &self.terms {
            if v.len() != da * db {
                return Err(Error::DimMismatch(format!(
                    "certificate vector length {} does not match {da}⊗{db}",
                    v.len()
                )));
            }
            let mut out = vec![ZERO; da * db];
            for i in 0..da {
                for k in 0..db {
                    let mut acc = ZERO;
                    for l in 0..db {
                        acc += g[(k, l)] * v[i * db + l];
                    }
                    out[i * db + k] = acc;
                }
            }
            terms.push((*w, out));
        }
        Ok(SchmidtCertificate {
            terms,
            claimed_k: self.claimed_k,
        })
    }

    /// Transport the certificate through the zero-padding embedding d₀⊗d₀ → D⊗D.
    pub fn embedded(&self, d0: usize, big: usize) -> Result<SchmidtCertificate> {
        if big < d0 {
            return Err(Error::BadDim(format!(
                "cannot embed certificate from {d0} into {big}"
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, v) in &self.terms {
            if v.len() != d0 * d0 {
                return Err(Error::DimMismatch(format!(
                    "certificate vector length {} does not match {d0}⊗{d0}",
                    v.len()
                )));
            }
            let mut out = vec![ZERO; big * big];
            for i in 0..d0 {
                for j in 0..d0 {
                    out[i * big + j] = v[i * d0 + j];
                }
            }
            terms.push((*w, out));
        }
        Ok(SchmidtCertificate {
            terms,
            claimed_k: self.claimed_k,
        })
    }
}

/// Outcome of checking a Schmidt certificate against a state.
#[derive(Debug, Clone, PartialEq)]
pub enum CertVerdict {
    Verified,
    EmptyCertificate,
    NegativeWeight { term: usize, weight: f64 },
    WrongLength { term: usize, len: usize, expected: usize },
    RankExceeded { term: usize, rank: usize, claimed: usize },
    ReconstructionMismatch { residual: f64 },
}

impl CertVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, CertVerdict::Verified)
    }
}

/// Check a Schmidt certificate: nonnegative weights, every term within the claimed
/// rank (at the relative cutoff [`SCHMIDT_TOL`]), and the weighted sum of projectors
/// reproducing the state within `tol` entrywise.
pub fn verify_schmidt_certificate(
    rho: &BipState,
    cert: &SchmidtCertificate,
    tol: f64,
) -> Result<CertVerdict> {
    let (da, db) = (rho.op.da, rho.op.db);
    let n = da * db;
    if cert.terms.is_empty() {
        return Ok(CertVerdict::EmptyCertificate);
    }
    let mut sum = CMat::zeros(n, n);
    for (t, (w, v)) in cert.terms.iter().enumerate() {
        if v.len() != n {
            return Ok(CertVerdict::WrongLength {
                term: t,
                len: v.len(),
                expected: n,
            });
        }
        if *w < 0.0 {
            return Ok(CertVerdict::NegativeWeight { term: t, weight: *w });
        }
        let rank = schmidt_rank_pure(v, da, db, SCHMIDT_TOL)?;
        if rank > cert.claimed_k {
            return Ok(CertVerdict::RankExceeded {
                term: t,
                rank,
                claimed: cert.claimed_k,
            });
        }
        for i in 0..n {
            for j in 0..n {
                sum[(i, j)] += cr(*w) * v[i] * v[j].conj();
            }
        }
    }
    let residual = sum.max_abs_diff(&rho.op.mat);
    if residual > tol {
        return Ok(CertVerdict::ReconstructionMismatch { residual });
    }
    Ok(CertVerdict::Verified)
}

/// Exact rank-2 Schmidt certificates for the 4⊗4 reference state and its partial
/// transpose: (state certificate, partial-transpose certificate). Both reconstruct
/// their targets with zero residual, so the state and its partial transpose have
/// Schmidt number at most 2.
pub fn ha_schmidt_certificates() -> (SchmidtCertificate, SchmidtCertificate) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let basis = |idx: &[(usize, f64)]| -> Vec<Complex64> {
        let mut v = vec![ZERO; 16];
        for &(i, a) in idx {
            v[i] = cr(a);
        }
        v
    };
    // composite index of |ab⟩ is 4a + b
    let state = SchmidtCertificate::new(
        vec![
            (2.0 / 7.0, basis(&[(0, h), (10, -h)])),  // (|00⟩ − |22⟩)/√2
            (2.0 / 7.0, basis(&[(7, h), (8, h)])),    // (|13⟩ + |20⟩)/√2
            (1.0 / 7.0, basis(&[(2, 1.0)])),          // |02⟩
            (1.0 / 7.0, basis(&[(4, 1.0)])),          // |10⟩
            (1.0 / 7.0, basis(&[(11, 1.0)])),         // |23⟩
        ],
        2,
    );
    let transposed = SchmidtCertificate::new(
        vec![
            (2.0 / 7.0, basis(&[(2, h), (8, -h)])),   // (|02⟩ − |20⟩)/√2
            (2.0 / 7.0, basis(&[(4, h), (11, h)])),   // (|10⟩ + |23⟩)/√2
            (1.0 / 7.0, basis(&[(0, 1.0)])),          // |00⟩
            (1.0 / 7.0, basis(&[(7, 1.0)])),          // |13⟩
            (1.0 / 7.0, basis(&[(10, 1.0)])),         // |22⟩
        ],
        2,
    );
    (state, transposed)
}

/// Seeded random unit vector on C^d (complex Gaussian, normalized).
pub fn random_unit_vector(d: usize, seed: u64) -> Vec<Complex64> {
    let mut r = rng::chacha(seed);
    rng::random_unit_vec(d, &mut r)
}

/// Seeded unit vector on d⊗d with Schmidt rank exactly k: Σ c_t·a_t⊗b_t over
/// orthonormal sets {a_t}, {b_t} with coefficients bounded away from zero.
pub fn sample_schmidt_k(d: usize, k: usize, seed: u64) -> Result<Vec<Complex64>> {
    if k == 0 || k > d {
        return Err(Error::BadK { k, d });
    }
    let mut rng = rng::chacha(seed);
    let a_set = rng::random_orthonormal_cols(d, k, &mut rng);
    let b_set = rng::random_orthonormal_cols(d, k, &mut rng);
    let mut v = vec![ZERO; d * d];
    let mut norm2 = 0.0;
    for t in 0..k {
        let c_t = 0.5 + rng.random::<f64>();
        norm2 += c_t * c_t;
        for i in 0..d {
            for j in 0..d {
                v[i * d + j] += cr(c_t) * a_set[t][i] * b_set[t][j];
            }
        }
    }
    let norm = norm2.sqrt();
    Ok(v.into_iter().map(|z| z / norm).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    fn min_eig(m: &CMat) -> f64 {
        crate::linalg::hermitian_eig(m, 1e-10).unwrap().values[0]
    }

    #[test]
    fn reference_states_are_normalized_ppt() {
        for state in [rho_ha(HaVariant::Dim4), rho_ha(HaVariant::Dim3), rho_new()] {
            assert_eq!(state.op.mat.hermitian_deviation(), 0.0);
            let t = state.op.mat.trace();
            assert!((t.re - 1.0).abs() < 1e-14 && t.im == 0.0);
            let rep = ppt_check(&state, 1e-12).unwrap();
            assert!(rep.is_psd, "min eig {}", rep.min_eig);
            assert!(rep.is_ppt, "min PT eig {}", rep.min_eig_pt);
            assert!(rep.min_eig >= -1e-12);
            assert!(rep.min_eig_pt >= -1e-12);
        }
    }

    #[test]
    fn dim4_reference_state_is_the_embedded_dim3_one() {
        // The 4⊗4 table is the 3⊗3 table under the basis identification
        // A: 0→0, 1→1, 2→2 and B: 0→0, 1→2, 2→3.
        let small = rho_ha(HaVariant::Dim3);
        let big = rho_ha(HaVariant::Dim4);
        let sb = [0usize, 2, 3];
        let mut built = CMat::zeros(16, 16);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        built[(a * 4 + sb[b], c * 4 + sb[d])] =
                            small.op.mat[(a * 3 + b, c * 3 + d)];
                    }
                }
            }
        }
        assert_eq!(built, big.op.mat);
    }

    #[test]
    fn state_validation_errors() {
        let mut m = CMat::zeros(4, 4);
        m[(0, 1)] = ONE;
        assert!(matches!(
            BipState::new(BipOp { da: 2, db: 2, mat: m }, false),
            Err(Error::NotHermitian(_))
        ));
        let half = CMat::identity(4).scale(cr(0.5));
        assert!(matches!(
            BipState::new(BipOp { da: 2, db: 2, mat: half.clone() }, true),
            Err(Error::NotNormalized(_))
        ));
        assert!(BipState::new(BipOp { da: 2, db: 2, mat: half }, false).is_ok());
    }

    #[test]
    fn gamma_conjugation_preserves_spectrum_and_ppt() {
        let rho = rho_ha(HaVariant::Dim4);
        for side in [GammaSide::SecondFactor, GammaSide::BothFactors] {
            let conj = gamma_conjugate(&rho, side).unwrap();
            assert!((conj.op.mat.trace().re - 1.0).abs() < 1e-14);
            let e0 = crate::linalg::hermitian_eig(&rho.op.mat, 1e-12).unwrap().values;
            let e1 = crate::linalg::hermitian_eig(&conj.op.mat, 1e-12).unwrap().values;
            for (a, b) in e0.iter().zip(&e1) {
                assert!((a - b).abs() < 1e-12);
            }
            let r0 = ppt_check(&rho, 1e-12).unwrap();
            let r1 = ppt_check(&conj, 1e-12).unwrap();
            assert_eq!(r0.is_ppt, r1.is_ppt);
            assert!((r0.min_eig_pt - r1.min_eig_pt).abs() < 1e-12);
        }
        // sign flips only: entrywise magnitudes are unchanged
        let conj = gamma_conjugate(&rho, GammaSide::SecondFactor).unwrap();
        for (a, b) in rho.op.mat.entries.iter().zip(&conj.op.mat.entries) {
            assert!((a.norm() - b.norm()).abs() == 0.0);
        }
        let small = rho_ha(HaVariant::Dim3);
        assert!(matches!(
            gamma_conjugate(&small, GammaSide::SecondFactor),
            Err(Error::BadDim(_))
        ));
    }

    #[test]
    fn embedding_commutes_with_partial_transpose() {
        let rho = rho_ha(HaVariant::Dim3);
        for big in [3usize, 5, 6] {
            let emb = embed(&rho, big).unwrap();
            assert_eq!(emb.op.mat.trace().re, rho.op.mat.trace().re);
            let pt_then_embed = embed(&rho.partial_transposed(), big).unwrap();
            let embed_then_pt = emb.partial_transposed();
            assert_eq!(pt_then_embed.op.mat, embed_then_pt.op.mat);
            // spectrum gains only zeros
            assert!((min_eig(&emb.op.mat) - min_eig(&rho.op.mat).min(0.0)).abs() < 1e-12);
        }
        assert!(matches!(embed(&rho, 2), Err(Error::BadDim(_))));
    }

    #[test]
    fn schmidt_rank_of_structured_vectors() {
        // product vector: rank 1
        let mut v = vec![ZERO; 9];
        v[0 * 3 + 1] = ONE; // |0⟩⊗|1⟩
        assert_eq!(schmidt_rank_pure(&v, 3, 3, SCHMIDT_TOL).unwrap(), 1);
        // maximally entangled on 3⊗3: rank 3
        let mut v = vec![ZERO; 9];
        let w = cr(1.0 / 3.0f64.sqrt());
        for i in 0..3 {
            v[i * 3 + i] = w;
        }
        assert_eq!(schmidt_rank_pure(&v, 3, 3, SCHMIDT_TOL).unwrap(), 3);
        // errors
        assert!(matches!(
            schmidt_rank_pure(&vec![ZERO; 9], 3, 3, SCHMIDT_TOL),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            schmidt_rank_pure(&vec![ONE; 8], 3, 3, SCHMIDT_TOL),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn sampled_vectors_have_exact_rank() {
        for d in [2usize, 3, 4] {
            for k in 1..=d {
                let v = sample_schmidt_k(d, k, 1000 + (d * 10 + k) as u64).unwrap();
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                assert_eq!(schmidt_rank_pure(&v, d, d, SCHMIDT_TOL).unwrap(), k);
            }
        }
        // determinism
        let a = sample_schmidt_k(4, 2, 9).unwrap();
        let b = sample_schmidt_k(4, 2, 9).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            sample_schmidt_k(3, 4, 0),
            Err(Error::BadK { k: 4, d: 3 })
        ));
        assert!(matches!(sample_schmidt_k(3, 0, 0), Err(Error::BadK { .. })));
    }

    #[test]
    fn schmidt_rank_is_local_unitary_invariant() {
        let mut r = rng::chacha(71);
        for k in 1..=4usize {
            let v = sample_schmidt_k(4, k, 500 + k as u64).unwrap();
            let ua = rng::random_orthonormal_cols(4, 4, &mut r);
            let ub = rng::random_orthonormal_cols(4, 4, &mut r);
            // w = (U_A ⊗ U_B) v, built columnwise
            let mut w = vec![ZERO; 16];
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = ZERO;
                    for a in 0..4 {
                        for b in 0..4 {
                            acc += ua[a][i] * ub[b][j] * v[a * 4 + b];
                        }
                    }
                    w[i * 4 + j] = acc;
                }
            }
            assert_eq!(schmidt_rank_pure(&w, 4, 4, SCHMIDT_TOL).unwrap(), k);
        }
    }

    #[test]
    fn reference_certificates_verify_exactly() {
        let rho = rho_ha(HaVariant::Dim4);
        let (cert, cert_pt) = ha_schmidt_certificates();
        let v = verify_schmidt_certificate(&rho, &cert, 1e-14).unwrap();
        assert_eq!(v, CertVerdict::Verified);
        let v = verify_schmidt_certificate(&rho.partial_transposed(), &cert_pt, 1e-14).unwrap();
        assert_eq!(v, CertVerdict::Verified);
    }

    #[test]
    fn certificate_verification_failure_modes() {
        let rho = rho_ha(HaVariant::Dim4);
        let (cert, _) = ha_schmidt_certificates();

        let empty = SchmidtCertificate::new(vec![], 2);
        assert_eq!(
            verify_schmidt_certificate(&rho, &empty, 1e-10).unwrap(),
            CertVerdict::EmptyCertificate
        );

        let mut bad = cert.clone();
        bad.terms[0].0 = -bad.terms[0].0;
        assert!(matches!(
            verify_schmidt_certificate(&rho, &bad, 1e-10).unwrap(),
            CertVerdict::NegativeWeight { term: 0, .. }
        ));

        // claim rank 1 while a term has rank 2
        let mut bad = cert.clone();
        bad.claimed_k = 1;
        assert!(matches!(
            verify_schmidt_certificate(&rho, &bad, 1e-10).unwrap(),
            CertVerdict::RankExceeded { rank: 2, claimed: 1, .. }
        ));

        // wrong state: reconstruction must fail
        let other = rho_new();
        assert!(matches!(
            verify_schmidt_certificate(&other, &cert, 1e-10).unwrap(),
            CertVerdict::ReconstructionMismatch { .. }
        ));

        let mut bad = cert.clone();
        bad.terms[0].1.pop();
        assert!(matches!(
            verify_schmidt_certificate(&rho, &bad, 1e-10).unwrap(),
            CertVerdict::WrongLength { term: 0, .. }
        ));
    }

    #[test]
    fn certificate_transport_stays_valid() {
        let rho = rho_ha(HaVariant::Dim4);
        let (cert, _) = ha_schmidt_certificates();

        // through Γ on the second factor
        let conj = gamma_conjugate(&rho, GammaSide::SecondFactor).unwrap();
        let moved = cert.map_second_factor(4, 4, &gamma4()).unwrap();
        assert_eq!(
            verify_schmidt_certificate(&conj, &moved, 1e-14).unwrap(),
            CertVerdict::Verified
        );

        // through embedding into 6⊗6
        let emb = embed(&rho, 6).unwrap();
        let moved = cert.embedded(4, 6).unwrap();
        assert_eq!(
            verify_schmidt_certificate(&emb, &moved, 1e-14).unwrap(),
            CertVerdict::Verified
        );
    }
}
