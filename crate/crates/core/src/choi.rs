//! The correspondence between maps on the d×d algebra and block operators on d⊗d:
//!
//!   Ŵ(φ) = Σ_ij e_ij ⊗ φ(e_ij),
//!
//! an entrywise reshuffle of the superoperator (no arithmetic), so the round trip
//! with [`map_from_choi`] is bit-exact. A map that is positive but not completely
//! positive yields a block operator with a negative eigenvalue — an entanglement
//! witness candidate. [`pair`] evaluates Tr(Ŵ·ρ), the detection functional.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cr, hs_inner, kron, BipOp, CMat};
use crate::maps::{chi_map, AntisymOp, LinMap};

/// Block operator of a map, with its spectrum cached.
#[derive(Debug, Clone)]
pub struct Witness {
    pub op: BipOp,
    /// Label of the map the witness came from.
    pub source_label: String,
    /// Eigenvalues, ascending.
    pub spectrum: Vec<f64>,
}

impl Witness {
    /// Wrap a Hermitian block operator and cache its spectrum.
    pub fn new(op: BipOp, source_label: impl Into<String>) -> Result<Witness> {
        let dev = op.mat.hermitian_deviation();
        if dev > 1e-12 {
            return Err(Error::NotHermitian(dev));
        }
        let spectrum = crate::linalg::hermitian_eig(&op.mat, 1e-12)?.values;
        Ok(Witness {
            op,
            source_label: source_label.into(),
            spectrum,
        })
    }

    pub fn min_eig(&self) -> f64 {
        self.spectrum[0]
    }

    /// A witness candidate must actually have a negative direction.
    pub fn is_candidate(&self) -> bool {
        self.min_eig() < -1e-10
    }

    pub fn trace(&self) -> f64 {
        self.op.mat.trace().re
    }
}

/// Flat facts about a witness, for reports and the command-line surface.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub evals: Vec<f64>,
    pub min_eig: f64,
    pub is_candidate: bool,
    pub trace: f64,
}

pub fn witness_report(w: &Witness) -> WitnessReport {
    WitnessReport {
        evals: w.spectrum.clone(),
        min_eig: w.min_eig(),
        is_candidate: w.is_candidate(),
        trace: w.trace(),
    }
}

/// Raw block operator of a map: block (i,j) is φ(e_ij). Pure reshuffle.
pub fn choi_op(map: &LinMap) -> BipOp {
    let d = map.d;
    let mut mat = CMat::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    mat[(i * d + k, j * d + l)] = map.mat[(k * d + l, i * d + j)];
                }
            }
        }
    }
    BipOp { da: d, db: d, mat }
}

/// Block operator of a map as a [`Witness`] (validated Hermitian, spectrum cached).
pub fn choi(map: &LinMap) -> Result<Witness> {
    Witness::new(choi_op(map), map.label.clone())
}

/// Invert the reshuffle: recover the map whose block operator is `c`. Requires a
/// square factor split (da == db); bit-exact inverse of [`choi_op`].
pub fn map_from_choi(c: &BipOp) -> Result<LinMap> {
    if c.da != c.db {
        return Err(Error::DimMismatch(format!(
            "block operator has factors {}⊗{}, need equal dimensions",
            c.da, c.db
        )));
    }
    let d = c.da;
    let mut mat = CMat::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    mat[(k * d + l, i * d + j)] = c.mat[(i * d + k, j * d + l)];
                }
            }
        }
    }
    LinMap::new(d, mat, format!("from_choi(d={d})"))
}

/// Detection functional Tr(Ŵ(φ)·ρ). Real by construction for a Hermitian ρ and a
/// Hermiticity-preserving map; any imaginary residue beyond 1e-12 is an error.
pub fn pair(rho: &BipOp, map: &LinMap) -> Result<f64> {
    let dev = rho.mat.hermitian_deviation();
    if dev > 1e-12 {
        return Err(Error::NotHermitian(dev));
    }
    if rho.da != map.d || rho.db != map.d {
        return Err(Error::DimMismatch(format!(
            "state is {}⊗{}, map acts on d = {}",
            rho.da, rho.db, map.d
        )));
    }
    let w = choi_op(map);
    // Tr(Ŵ·ρ) = ⟨Ŵ†, ρ⟩ = ⟨Ŵ, ρ⟩ for Hermitian Ŵ.
    let val = hs_inner(&w.mat, &rho.mat)?;
    if val.im.abs() > 1e-12 {
        return Err(Error::ImaginaryResidue(val.im));
    }
    Ok(val.re)
}

/// Hilbert–Schmidt inner product of two maps, computed operationally as
/// Σ_ij Tr(φ(e_ij)†·ψ(e_ij)) over the matrix-unit basis. Equals the inner product
/// of the block operators; keeping the sum form makes the two routes independent.
pub fn map_inner(phi: &LinMap, psi: &LinMap) -> Result<Complex64> {
    if phi.d != psi.d {
        return Err(Error::DimMismatch(format!(
            "maps act on d = {} and d = {}",
            phi.d, psi.d
        )));
    }
    let d = phi.d;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            let unit = CMat::unit(d, i, j);
            let a = phi.apply(&unit)?;
            let b = psi.apply(&unit)?;
            acc += hs_inner(&a, &b)?;
        }
    }
    Ok(acc)
}

/// Apply a map to the second tensor factor: (𝟙⊗φ)(ρ), blockwise on the dB×dB blocks.
pub fn apply_second_factor(map: &LinMap, rho: &BipOp) -> Result<BipOp> {
    if rho.db != map.d {
        return Err(Error::DimMismatch(format!(
            "second factor is {}, map acts on d = {}",
            rho.db, map.d
        )));
    }
    let (da, db) = (rho.da, rho.db);
    let mut mat = CMat::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..da {
            let block = CMat::from_fn(db, db, |k, l| rho.mat[(i * db + k, j * db + l)]);
            let out = map.apply(&block)?;
            for k in 0..db {
                for l in 0..db {
                    mat[(i * db + k, j * db + l)] = out[(k, l)];
                }
            }
        }
    }
    Ok(BipOp { da, db, mat })
}

/// The tabulated 16×16 two-parameter witness on 4⊗4 (includes its global ½ factor).
/// Entries are polynomial in (x, y) with the sign/coupling pattern of the canonical
/// antisymmetric conjugation; see [`chi_witness_diagnostic`] for how it relates to
/// the directly materialized block operators.
pub fn chi_witness_tabulated(x: f64, y: f64) -> Result<BipOp> {
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::RangeError { x, y });
    }
    let mut m = CMat::zeros(16, 16);
    let mut set = |i: usize, j: usize, v: f64| {
        m[(i, j)] = cr(0.5 * v);
        if i != j {
            m[(j, i)] = cr(0.5 * v);
        }
    };
    // diagonal corner block on {0,5,10,15}
    set(0, 0, 1.0 - x);
    set(5, 5, 1.0 - x);
    set(10, 10, 1.0 - x);
    set(15, 15, 1.0 - x);
    set(0, 5, y - x);
    set(10, 15, y - x);
    set(0, 10, -x);
    set(0, 15, -x);
    set(5, 10, -x);
    set(5, 15, -x);
    // remaining diagonal
    for i in [1usize, 4, 11, 14] {
        set(i, i, 1.0 - y);
    }
    for i in [2usize, 3, 6, 7, 8, 9, 12, 13] {
        set(i, i, 1.0);
    }
    // off-diagonal couplings
    set(2, 13, y);
    set(3, 9, -y);
    set(6, 12, -y);
    set(7, 8, y);
    BipOp::new(4, 4, m)
}

/// How the tabulated witness relates to directly materialized block operators.
/// Each residual is a max-abs difference against a candidate identification; they
/// are reported, not judged, so callers can see which identification actually holds.
#[derive(Debug, Clone)]
pub struct ChiWitnessDiagnostic {
    pub x: f64,
    pub y: f64,
    /// vs Ŵ(χ_{x,y}) as printed (no scaling).
    pub residual_direct: f64,
    /// vs ½·Ŵ(χ_{x,y}).
    pub residual_half_direct: f64,
    /// vs ½·(𝟙⊗Γ)·Ŵ(χ_{x,y})·(𝟙⊗Γ), Γ = diag(1,1,−1,−1).
    pub residual_gamma: f64,
    /// vs ½·Ŵ(χ_{y,x}) — parameters exchanged.
    pub residual_half_swapped: f64,
}

/// Compare the tabulated witness against the block operators of χ built on the
/// canonical 4-dimensional antisymmetric unitary, under several identifications.
pub fn chi_witness_diagnostic(x: f64, y: f64) -> Result<ChiWitnessDiagnostic> {
    let tab = chi_witness_tabulated(x, y)?;
    let u0 = AntisymOp::canonical(4)?;
    let direct = choi_op(&chi_map(x, y, &u0)?);
    let swapped = choi_op(&chi_map(y, x, &u0)?);
    let gamma = CMat::diag_real(&[1.0, 1.0, -1.0, -1.0]);
    let conj = kron(&CMat::identity(4), &gamma);
    let gamma_side = conj.mul(&direct.mat).mul(&conj);
    Ok(ChiWitnessDiagnostic {
        x,
        y,
        residual_direct: tab.mat.max_abs_diff(&direct.mat),
        residual_half_direct: tab.mat.max_abs_diff(&direct.mat.scale(cr(0.5))),
        residual_gamma: tab.mat.max_abs_diff(&gamma_side.scale(cr(0.5))),
        residual_half_swapped: tab.mat.max_abs_diff(&swapped.mat.scale(cr(0.5))),
    })
}
