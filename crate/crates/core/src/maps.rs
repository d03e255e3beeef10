//! Linear map families on the d×d matrix algebra.
//!
//! A map is stored as its superoperator: the d²×d² matrix acting on vec(X), where
//! vec stacks rows, i.e. vec(X)[i·d+j] = X_ij. Every constructor in this module
//! produces a Hermiticity-preserving map (φ(X†) = φ(X)†), and `LinMap::new` enforces
//! that invariant so downstream pairings stay real.
//!
//! The families:
//!
//! - `reduction_map`: X ↦ Tr(X)·I − X.
//! - `trace_map`: X ↦ Tr(X)·I.
//! - `breuer_hall`: X ↦ Tr(X)·I − X − U·X^T·U† for an antisymmetric U (unitary or a
//!   partial isometry), optionally normalized to a unital map.
//! - `robertson`: the 4-dimensional block map built from the 2-dimensional reduction.
//! - `chi_map`: the two-parameter interpolation Tr(X)·I − y·X − x·U·X^T·U†.
//! - `hall_map`: quadratic-form presentation Σ c_{(kl),(mn)} A_kl X' A_mn† over the
//!   antisymmetric generator basis A_kl = e_kl − e_lk.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cr, CMat, ONE, ZERO};
use crate::rng;

/// Structure of the antisymmetric conjugation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntisymKind {
    /// U†U = I (requires even dimension).
    FullUnitary,
    /// U†U is an orthogonal projector of the given even rank 2k.
    PartialRank(usize),
}

/// Antisymmetric conjugation operator: U^T = −U, with U either unitary or a partial
/// isometry onto an even-dimensional subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymOp {
    pub d: usize,
    pub u: CMat,
    pub kind: AntisymKind,
}

/// Validation tolerance for antisymmetry / isometry checks.
const ANTISYM_TOL: f64 = 1e-12;

impl AntisymOp {
    /// Wrap an antisymmetric unitary. The dimension must be even (odd dimensions
    /// admit no antisymmetric unitary: det U = det(−U^T) = (−1)^d det U).
    pub fn full_unitary(u: CMat) -> Result<AntisymOp> {
        let d = check_antisymmetric(&u)?;
        if d % 2 != 0 {
            return Err(Error::InvalidAntisym(format!(
                "no antisymmetric unitary exists in odd dimension {d}"
            )));
        }
        let dev = u.adjoint().mul(&u).max_abs_diff(&CMat::identity(d));
        if dev > ANTISYM_TOL {
            return Err(Error::InvalidAntisym(format!(
                "U†U deviates from identity by {dev:.3e}"
            )));
        }
        Ok(AntisymOp {
            d,
            u,
            kind: AntisymKind::FullUnitary,
        })
    }

    /// Wrap an antisymmetric partial isometry: U†U must be an orthogonal projector
    /// of even rank 2k ≥ 2.
    pub fn partial_rank(u: CMat) -> Result<AntisymOp> {
        let d = check_antisymmetric(&u)?;
        let p = u.adjoint().mul(&u);
        let idem = p.mul(&p).max_abs_diff(&p);
        if idem > ANTISYM_TOL {
            return Err(Error::InvalidAntisym(format!(
                "U†U is not idempotent (deviation {idem:.3e})"
            )));
        }
        let tr = p.trace().re;
        let rank = tr.round() as usize;
        if (tr - rank as f64).abs() > 1e-9 {
            return Err(Error::InvalidAntisym(format!(
                "projector trace {tr} is not an integer"
            )));
        }
        if rank == 0 || rank % 2 != 0 || rank > d {
            return Err(Error::InvalidAntisym(format!(
                "projector rank {rank} must be even and in 2..={d}"
            )));
        }
        Ok(AntisymOp {
            d,
            u,
            kind: AntisymKind::PartialRank(rank),
        })
    }

    /// Canonical antisymmetric unitary: block-diagonal copies of [[0,1],[−1,0]],
    /// so U e_{2m} = −e_{2m+1} and U e_{2m+1} = e_{2m}.
    pub fn canonical(d: usize) -> Result<AntisymOp> {
        if d == 0 || d % 2 != 0 {
            return Err(Error::BadDim(format!(
                "canonical antisymmetric unitary needs even d ≥ 2, got {d}"
            )));
        }
        let mut u = CMat::zeros(d, d);
        for m in 0..d / 2 {
            u[(2 * m, 2 * m + 1)] = ONE;
            u[(2 * m + 1, 2 * m)] = -ONE;
        }
        AntisymOp::full_unitary(u)
    }

    /// Canonical operator of even rank embedded in dimension d: the rank×rank
    /// canonical unitary in the leading corner, zero elsewhere.
    pub fn embedded_canonical(d: usize, rank: usize) -> Result<AntisymOp> {
        if rank == 0 || rank % 2 != 0 || rank > d {
            return Err(Error::BadDim(format!(
                "embedded canonical operator needs even rank in 2..={d}, got {rank}"
            )));
        }
        if rank == d {
            return AntisymOp::canonical(d);
        }
        let corner = AntisymOp::canonical(rank)?;
        let mut u = CMat::zeros(d, d);
        for i in 0..rank {
            for j in 0..rank {
                u[(i, j)] = corner.u[(i, j)];
            }
        }
        AntisymOp::partial_rank(u)
    }

    /// Rank of U†U (d for the unitary case).
    pub fn rank(&self) -> usize {
        match self.kind {
            AntisymKind::FullUnitary => self.d,
            AntisymKind::PartialRank(r) => r,
        }
    }

    /// Re-run the construction-time validation (fields are public, so consumers that
    /// mutated them get an honest error instead of garbage).
    pub fn validate(&self) -> Result<()> {
        let fresh = match self.kind {
            AntisymKind::FullUnitary => AntisymOp::full_unitary(self.u.clone())?,
            AntisymKind::PartialRank(_) => AntisymOp::partial_rank(self.u.clone())?,
        };
        if fresh.rank() != self.rank() {
            return Err(Error::InvalidAntisym(format!(
                "declared rank {} but U†U has rank {}",
                self.rank(),
                fresh.rank()
            )));
        }
        Ok(())
    }
}

fn check_antisymmetric(u: &CMat) -> Result<usize> {
    if !u.is_square() {
        return Err(Error::InvalidAntisym(format!(
            "operator is {}x{}, expected square",
            u.rows, u.cols
        )));
    }
    let dev = u.transpose().max_abs_diff(&u.scale(cr(-1.0)));
    if dev > ANTISYM_TOL {
        return Err(Error::InvalidAntisym(format!(
            "U^T deviates from −U by {dev:.3e}"
        )));
    }
    Ok(u.rows)
}

/// Seeded random antisymmetric unitary: orthogonalize a real Gaussian matrix into V
/// and conjugate the canonical operator, U = V·U₀·V^T. Deterministic in the seed.
pub fn random_antisym_unitary(d: usize, seed: u64) -> Result<AntisymOp> {
    if d == 0 || d % 2 != 0 {
        return Err(Error::BadDim(format!(
            "random antisymmetric unitary needs even d ≥ 2, got {d}"
        )));
    }
    let mut r = rng::chacha(seed);
    let v = orthogonalize(rng::gaussian_real_cmat(d, d, &mut r));
    let u0 = AntisymOp::canonical(d)?;
    let u = v.mul(&u0.u).mul(&v.transpose());
    // Pin antisymmetry exactly; the product above is antisymmetric only to rounding.
    let u = u.sub(&u.transpose()).scale(cr(0.5));
    AntisymOp::full_unitary(u)
}

/// Seeded random real orthogonal matrix: modified Gram–Schmidt on a real Gaussian
/// draw. Used to sample conjugations in the equivalence checks.
pub fn random_orthogonal(d: usize, seed: u64) -> CMat {
    let mut r = rng::chacha(seed);
    orthogonalize(rng::gaussian_real_cmat(d, d, &mut r))
}

/// Seeded random Hermiticity-preserving map: the images of the diagonal generators
/// are independent random Hermitian matrices, and each off-diagonal pair of
/// generators gets adjoint-linked images φ(e_ij) = φ(e_ji)†.
pub fn random_hermiticity_preserving(d: usize, seed: u64) -> LinMap {
    let mut r = rng::chacha(seed);
    let mut images = vec![CMat::zeros(d, d); d * d];
    for i in 0..d {
        for j in i..d {
            let g = rng::gaussian_cmat(d, d, &mut r);
            if i == j {
                images[i * d + i] = g.add(&g.adjoint()).scale(cr(0.5));
            } else {
                images[j * d + i] = g.adjoint();
                images[i * d + j] = g;
            }
        }
    }
    LinMap::from_action(d, format!("random(d={d}, seed={seed})"), |i, j| {
        images[i * d + j].clone()
    })
    .expect("adjoint-linked images preserve Hermiticity by construction")
}

/// Modified Gram–Schmidt with positive diagonal; falls back to fresh unit directions
/// for (measure-zero) degenerate columns.
fn orthogonalize(g: CMat) -> CMat {
    // Two passes: a single sweep of modified Gram–Schmidt loses orthogonality in
    // proportion to the conditioning of the draw (occasionally past 1e-12); the
    // second sweep acts on nearly-orthogonal columns and pins the deviation at
    // machine precision for every seed.
    gram_schmidt_pass(gram_schmidt_pass(g))
}

fn gram_schmidt_pass(g: CMat) -> CMat {
    let n = g.rows;
    let mut q = g;
    for j in 0..n {
        for k in 0..j {
            let mut dot = ZERO;
            for r in 0..n {
                dot += q[(r, k)].conj() * q[(r, j)];
            }
            for r in 0..n {
                let qrk = q[(r, k)];
                q[(r, j)] -= dot * qrk;
            }
        }
        let norm = (0..n).map(|r| q[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            q[(j, j)] += ONE;
            continue;
        }
        for r in 0..n {
            q[(r, j)] = q[(r, j)] / cr(norm);
        }
    }
    q
}

/// A linear map on d×d matrices, stored as its d²×d² superoperator.
#[derive(Debug, Clone, PartialEq)]
pub struct LinMap {
    pub d: usize,
    /// Superoperator acting on row-major vec(X).
    pub mat: CMat,
    pub label: String,
}

impl LinMap {
    /// Wrap a superoperator, verifying it preserves Hermiticity: φ(e_ij)† = φ(e_ji)
    /// for every matrix unit, within 1e-12.
    pub fn new(d: usize, mat: CMat, label: impl Into<String>) -> Result<LinMap> {
        let n = d * d;
        if mat.rows != n || mat.cols != n {
            return Err(Error::DimMismatch(format!(
                "superoperator is {}x{}, expected {n}x{n} for d = {d}",
                mat.rows, mat.cols
            )));
        }
        let map = LinMap {
            d,
            mat,
            label: label.into(),
        };
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                let fij = map.column_image(i, j);
                let fji = map.column_image(j, i);
                dev = dev.max(fij.adjoint().max_abs_diff(&fji));
            }
        }
        if dev > 1e-12 {
            return Err(Error::NotHermitian(dev));
        }
        Ok(map)
    }

    /// Build the superoperator from the map's action on matrix units.
    pub fn from_action(
        d: usize,
        label: impl Into<String>,
        mut action: impl FnMut(usize, usize) -> CMat,
    ) -> Result<LinMap> {
        let n = d * d;
        let mut mat = CMat::zeros(n, n);
        for i in 0..d {
            for j in 0..d {
                let out = action(i, j);
                assert_eq!(
                    (out.rows, out.cols),
                    (d, d),
                    "map action returned wrong shape"
                );
                for k in 0..d {
                    for l in 0..d {
                        mat[(k * d + l, i * d + j)] = out[(k, l)];
                    }
                }
            }
        }
        LinMap::new(d, mat, label)
    }

    /// φ(e_ij), read back out of the superoperator column.
    pub fn column_image(&self, i: usize, j: usize) -> CMat {
        let d = self.d;
        CMat::from_fn(d, d, |k, l| self.mat[(k * d + l, i * d + j)])
    }

    /// Apply the map to a d×d matrix.
    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if (x.rows, x.cols) != (self.d, self.d) {
            return Err(Error::DimMismatch(format!(
                "map acts on {0}x{0}, argument is {1}x{2}",
                self.d, x.rows, x.cols
            )));
        }
        let entries = self.mat.matvec(&x.entries);
        Ok(CMat {
            rows: self.d,
            cols: self.d,
            entries,
        })
    }

    /// Relabel in place (builder style).
    pub fn with_label(mut self, label: impl Into<String>) -> LinMap {
        self.label = label.into();
        self
    }
}

/// Identity map X ↦ X.
pub fn identity_map(d: usize) -> LinMap {
    LinMap {
        d,
        mat: CMat::identity(d * d),
        label: format!("identity(d={d})"),
    }
}

/// Reduction map X ↦ Tr(X)·I − X. Positive, not 2-positive for d ≥ 2.
pub fn reduction_map(d: usize) -> Result<LinMap> {
    if d < 2 {
        return Err(Error::BadDim(format!("reduction map needs d ≥ 2, got {d}")));
    }
    LinMap::from_action(d, format!("reduction(d={d})"), |i, j| {
        let mut out = CMat::zeros(d, d);
        if i == j {
            out = CMat::identity(d);
        }
        out[(i, j)] -= ONE;
        out
    })
}

/// Trace map X ↦ Tr(X)·I. Completely positive.
pub fn trace_map(d: usize) -> Result<LinMap> {
    if d < 1 {
        return Err(Error::BadDim("trace map needs d ≥ 1".into()));
    }
    LinMap::from_action(d, format!("trace(d={d})"), |i, j| {
        if i == j {
            CMat::identity(d)
        } else {
            CMat::zeros(d, d)
        }
    })
}

/// Map X ↦ Tr(X)·I − X − U·X^T·U† for an antisymmetric U. With `normalized`, the
/// unitary case is scaled by 1/(d−2) and the partial-rank case is conjugated by
/// ((d−2)·I + P^⊥)^{−1/2}, P^⊥ = I − U†U; both make the map unital for real U.
pub fn breuer_hall(u: &AntisymOp, normalized: bool) -> Result<LinMap> {
    u.validate()?;
    let d = u.d;
    if normalized && d == 2 {
        return Err(Error::TrivialMap);
    }
    let udag = u.u.adjoint();
    let raw = |i: usize, j: usize| -> CMat {
        let mut out = if i == j {
            CMat::identity(d)
        } else {
            CMat::zeros(d, d)
        };
        out[(i, j)] -= ONE;
        // e_ij^T = e_ji, so the conjugation term is (col j of U)(col i of U)†.
        let term = u.u.mul(&CMat::unit(d, j, i)).mul(&udag);
        out.sub(&term)
    };
    let tag = match u.kind {
        AntisymKind::FullUnitary => format!("d={d}"),
        AntisymKind::PartialRank(r) => format!("d={d}, rank={r}"),
    };
    if !normalized {
        return LinMap::from_action(d, format!("bh({tag})"), raw);
    }
    match u.kind {
        AntisymKind::FullUnitary => {
            let scale = cr(1.0 / (d as f64 - 2.0));
            LinMap::from_action(d, format!("bh({tag}, normalized)"), |i, j| {
                raw(i, j).scale(scale)
            })
        }
        AntisymKind::PartialRank(_) => {
            let p = udag.mul(&u.u);
            let p_perp = CMat::identity(d).sub(&p);
            let h = CMat::identity(d).scale(cr(d as f64 - 2.0)).add(&p_perp);
            let r = crate::linalg::psd_inv_sqrt(&h, 1e-10)?;
            LinMap::from_action(d, format!("bh({tag}, normalized)"), |i, j| {
                r.mul(&raw(i, j)).mul(&r)
            })
        }
    }
}

/// The 4-dimensional block map: with X split into 2×2 blocks X = [[X11, X12], [X21, X22]],
///
///   φ(X) = ½ · [[I₂·Tr X22,  X12 + R₂(X21)], [X21 + R₂(X12),  I₂·Tr X11]]
///
/// where R₂(Y) = Tr(Y)·I₂ − Y. Unital and trace-preserving.
pub fn robertson() -> LinMap {
    let d = 4;
    LinMap::from_action(d, "robertson", |i, j| {
        let x = CMat::unit(d, i, j);
        let block = |bi: usize, bj: usize| CMat::from_fn(2, 2, |r, c| x[(2 * bi + r, 2 * bj + c)]);
        let r2 = |y: &CMat| CMat::identity(2).scale(y.trace()).sub(y);
        let x11 = block(0, 0);
        let x12 = block(0, 1);
        let x21 = block(1, 0);
        let x22 = block(1, 1);
        let top_left = CMat::identity(2).scale(x22.trace());
        let top_right = x12.add(&r2(&x21));
        let bot_left = x21.add(&r2(&x12));
        let bot_right = CMat::identity(2).scale(x11.trace());
        let mut out = CMat::zeros(d, d);
        for r in 0..2 {
            for c in 0..2 {
                out[(r, c)] = top_left[(r, c)];
                out[(r, c + 2)] = top_right[(r, c)];
                out[(r + 2, c)] = bot_left[(r, c)];
                out[(r + 2, c + 2)] = bot_right[(r, c)];
            }
        }
        out.scale(cr(0.5))
    })
    .expect("block map is Hermiticity-preserving by construction")
}

/// Two-parameter family χ_{x,y}(X) = Tr(X)·I − y·X − x·U·X^T·U†, defined on the unit
/// square 0 ≤ x, y ≤ 1 (the region where the map is positive). χ_{0,0} is the trace
/// map, χ_{0,1} the reduction map, χ_{1,1} the unnormalized antisymmetric-conjugation
/// map.
pub fn chi_map(x: f64, y: f64, u: &AntisymOp) -> Result<LinMap> {
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::RangeError { x, y });
    }
    u.validate()?;
    let d = u.d;
    let udag = u.u.adjoint();
    LinMap::from_action(d, format!("chi(x={x}, y={y}, d={d})"), |i, j| {
        let mut out = if i == j {
            CMat::identity(d)
        } else {
            CMat::zeros(d, d)
        };
        out[(i, j)] -= cr(y);
        let term = u.u.mul(&CMat::unit(d, j, i)).mul(&udag);
        out.sub(&term.scale(cr(x)))
    })
}

/// Antisymmetric generator A_kl = e_kl − e_lk for 0 ≤ k < l < d.
pub fn pair_generator(d: usize, k: usize, l: usize) -> Result<CMat> {
    if k >= l || l >= d {
        return Err(Error::BadPair(k, l));
    }
    let mut a = CMat::zeros(d, d);
    a[(k, l)] = ONE;
    a[(l, k)] = -ONE;
    Ok(a)
}

/// Lexicographic list of index pairs (k,l), k < l, for dimension d.
pub fn pair_index(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(d * (d - 1) / 2);
    for k in 0..d {
        for l in (k + 1)..d {
            out.push((k, l));
        }
    }
    out
}

/// Hermitian coefficient matrix over the pair basis, dimension m = d(d−1)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    pub d: usize,
    pub m: usize,
    pub c: CMat,
}

impl CoeffMatrix {
    pub fn new(d: usize, c: CMat) -> Result<CoeffMatrix> {
        let m = d * (d - 1) / 2;
        if c.rows != m || c.cols != m {
            return Err(Error::DimMismatch(format!(
                "coefficient matrix is {}x{}, expected {m}x{m} for d = {d}",
                c.rows, c.cols
            )));
        }
        let dev = c.hermitian_deviation();
        if dev > 1e-12 {
            return Err(Error::NotHermitian(dev));
        }
        Ok(CoeffMatrix { d, m, c })
    }

    pub fn identity(d: usize) -> CoeffMatrix {
        let m = d * (d - 1) / 2;
        CoeffMatrix {
            d,
            m,
            c: CMat::identity(m),
        }
    }
}

/// Whether the quadratic form acts on X^T or on X.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallVariant {
    Transposed,
    Plain,
}

/// Quadratic-form map φ(X) = Σ_{(kl),(mn)} c_{(kl),(mn)} · A_kl · X' · A_mn†, with
/// X' = X^T (`Transposed`) or X (`Plain`). With c = I_m and the transposed variant
/// this is exactly the reduction map; c = u·u† gives X ↦ U·X^T·U† for U = Σ u_kl A_kl.
pub fn hall_map(coeff: &CoeffMatrix, variant: HallVariant) -> LinMap {
    let d = coeff.d;
    let pairs = pair_index(d);
    let gens: Vec<CMat> = pairs
        .iter()
        .map(|&(k, l)| pair_generator(d, k, l).expect("pair_index yields valid pairs"))
        .collect();
    let tag = match variant {
        HallVariant::Transposed => "transposed",
        HallVariant::Plain => "plain",
    };
    LinMap::from_action(d, format!("hall(d={d}, {tag})"), |i, j| {
        let xp = match variant {
            // e_ij^T = e_ji
            HallVariant::Transposed => CMat::unit(d, j, i),
            HallVariant::Plain => CMat::unit(d, i, j),
        };
        let mut out = CMat::zeros(d, d);
        for (a, ga) in gens.iter().enumerate() {
            let gxp = ga.mul(&xp);
            for (b, gb) in gens.iter().enumerate() {
                let w = coeff.c[(a, b)];
                if w == ZERO {
                    continue;
                }
                out = out.add(&gxp.mul(&gb.adjoint()).scale(w));
            }
        }
        out
    })
    .expect("Hermitian coefficients give a Hermiticity-preserving map")
}

/// Expansion coefficients of an antisymmetric operator over the pair basis:
/// U = Σ_{k<l} u_{(kl)} A_kl, so u_{(kl)} = U[k][l] and ‖u‖² = ½·‖U‖²_F.
pub fn pair_vector(u: &AntisymOp) -> Vec<Complex64> {
    pair_index(u.d).iter().map(|&(k, l)| u.u[(k, l)]).collect()
}

/// Decompose χ_{x,y} through the quadratic form: χ = (1−y)·trace_map + hall(c) with
/// c = y·I_m − x·u·u†. Returns (c, cp_weight = 1−y, min eigenvalue of c). The map is
/// decomposable through a completely positive part iff the pieces are positive; the
/// smallest eigenvalue of c is y − x·k for an operator of rank 2k.
pub fn coefficient_analysis(x: f64, y: f64, u: &AntisymOp) -> Result<(CoeffMatrix, f64, f64)> {
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::RangeError { x, y });
    }
    u.validate()?;
    let uvec = pair_vector(u);
    let m = uvec.len();
    let mut c = CMat::identity(m).scale(cr(y));
    for a in 0..m {
        for b in 0..m {
            c[(a, b)] -= cr(x) * uvec[a] * uvec[b].conj();
        }
    }
    let coeff = CoeffMatrix::new(u.d, c)?;
    let eig = crate::linalg::hermitian_eig(&coeff.c, 1e-10)?;
    Ok((coeff, 1.0 - y, eig.values[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eig, IM};
    use crate::rng;

    fn apply_formula_reduction(x: &CMat) -> CMat {
        CMat::identity(x.rows).scale(x.trace()).sub(x)
    }

    #[test]
    fn reduction_and_trace_act_correctly() {
        let mut r = rng::chacha(31);
        for d in [2usize, 3, 5] {
            let red = reduction_map(d).unwrap();
            let tr = trace_map(d).unwrap();
            let x = rng::gaussian_cmat(d, d, &mut r);
            let got = red.apply(&x).unwrap();
            assert!(got.max_abs_diff(&apply_formula_reduction(&x)) < 1e-13);
            let got = tr.apply(&x).unwrap();
            assert!(got.max_abs_diff(&CMat::identity(d).scale(x.trace())) < 1e-13);
        }
        assert!(matches!(reduction_map(1), Err(Error::BadDim(_))));
        assert!(matches!(trace_map(0), Err(Error::BadDim(_))));
    }

    #[test]
    fn canonical_antisym_is_exact() {
        let u0 = AntisymOp::canonical(4).unwrap();
        assert_eq!(u0.u.transpose(), u0.u.scale(cr(-1.0)));
        assert_eq!(u0.u.adjoint().mul(&u0.u), CMat::identity(4));
        // U e_0 = −e_1, U e_1 = e_0
        assert_eq!(u0.u[(1, 0)], -ONE);
        assert_eq!(u0.u[(0, 1)], ONE);
        assert_eq!(u0.rank(), 4);
        assert!(AntisymOp::canonical(3).is_err());

        let part = AntisymOp::embedded_canonical(6, 4).unwrap();
        assert_eq!(part.kind, AntisymKind::PartialRank(4));
        assert_eq!(part.rank(), 4);
        // embedded corner matches the 4-dim canonical operator, rest is zero
        for i in 0..6 {
            for j in 0..6 {
                let want = if i < 4 && j < 4 { u0.u[(i, j)] } else { ZERO };
                assert_eq!(part.u[(i, j)], want);
            }
        }
        assert!(AntisymOp::embedded_canonical(5, 6).is_err());
        assert!(AntisymOp::embedded_canonical(6, 3).is_err());
    }

    #[test]
    fn random_antisym_unitary_properties() {
        for d in [2usize, 4, 6, 8] {
            for seed in [0u64, 1, 17] {
                let op = random_antisym_unitary(d, seed).unwrap();
                let anti = op.u.transpose().max_abs_diff(&op.u.scale(cr(-1.0)));
                assert!(anti <= 1e-12, "d={d} seed={seed}: antisymmetry {anti}");
                let unit = op.u.adjoint().mul(&op.u).max_abs_diff(&CMat::identity(d));
                assert!(unit <= 1e-12, "d={d} seed={seed}: unitarity {unit}");
                // determinism
                let again = random_antisym_unitary(d, seed).unwrap();
                assert_eq!(op.u, again.u);
            }
        }
        // d = 2: the only antisymmetric unitaries are ±[[0,1],[−1,0]] up to phase;
        // a real construction lands exactly on ± the canonical operator.
        let u0 = AntisymOp::canonical(2).unwrap().u;
        for seed in 0..8u64 {
            let op = random_antisym_unitary(2, seed).unwrap();
            let plus = op.u.max_abs_diff(&u0);
            let minus = op.u.max_abs_diff(&u0.scale(cr(-1.0)));
            assert!(plus.min(minus) < 1e-14, "seed {seed}: {plus} / {minus}");
        }
        assert!(matches!(random_antisym_unitary(3, 0), Err(Error::BadDim(_))));
    }

    #[test]
    fn antisym_validation_rejects_bad_operators() {
        assert!(matches!(
            AntisymOp::full_unitary(CMat::identity(4)),
            Err(Error::InvalidAntisym(_))
        ));
        // antisymmetric but not unitary
        let a = pair_generator(4, 0, 1).unwrap().scale(cr(0.5));
        assert!(matches!(
            AntisymOp::full_unitary(a.clone()),
            Err(Error::InvalidAntisym(_))
        ));
        // not an isometry onto its range either (P² ≠ P)
        assert!(matches!(
            AntisymOp::partial_rank(a),
            Err(Error::InvalidAntisym(_))
        ));
        // odd rank is impossible for antisymmetric isometries, but a rank-0 operator
        // must be rejected explicitly
        assert!(matches!(
            AntisymOp::partial_rank(CMat::zeros(4, 4)),
            Err(Error::InvalidAntisym(_))
        ));
    }

    #[test]
    fn breuer_hall_matches_formula_and_handles_d2() {
        let mut r = rng::chacha(8);
        let u = random_antisym_unitary(4, 5).unwrap();
        let map = breuer_hall(&u, false).unwrap();
        let x = rng::gaussian_cmat(4, 4, &mut r);
        let want = apply_formula_reduction(&x).sub(&u.u.mul(&x.transpose()).mul(&u.u.adjoint()));
        assert!(map.apply(&x).unwrap().max_abs_diff(&want) < 1e-12);

        let norm = breuer_hall(&u, true).unwrap();
        assert!(norm
            .apply(&x)
            .unwrap()
            .max_abs_diff(&want.scale(cr(0.5)))
            < 1e-12);
        // unital
        assert!(norm
            .apply(&CMat::identity(4))
            .unwrap()
            .max_abs_diff(&CMat::identity(4))
            < 1e-12);

        // d = 2: the map is identically zero, so the normalized form does not exist
        let u2 = AntisymOp::canonical(2).unwrap();
        let zero = breuer_hall(&u2, false).unwrap();
        assert!(zero.mat.max_abs() < 1e-15);
        assert!(matches!(breuer_hall(&u2, true), Err(Error::TrivialMap)));
    }

    #[test]
    fn breuer_hall_partial_rank_is_unital_when_normalized() {
        let u = AntisymOp::embedded_canonical(6, 4).unwrap();
        let map = breuer_hall(&u, true).unwrap();
        assert!(map
            .apply(&CMat::identity(6))
            .unwrap()
            .max_abs_diff(&CMat::identity(6))
            < 1e-11);
        // and positive on sampled projectors
        let mut r = rng::chacha(40);
        for _ in 0..50 {
            let v = rng::random_unit_vec(6, &mut r);
            let p = CMat::from_fn(6, 6, |i, j| v[i] * v[j].conj());
            let out = map.apply(&p).unwrap();
            let eig = hermitian_eig(&out, 1e-10).unwrap();
            assert!(eig.values[0] >= -1e-10);
        }
    }

    #[test]
    fn breuer_hall_projector_spectrum_structure() {
        // φ(vv†) = I − vv† − ww† with w ⊥ v, so the spectrum is {0, 0, 1, …, 1}.
        let mut r = rng::chacha(77);
        for d in [4usize, 6] {
            let u = random_antisym_unitary(d, 100 + d as u64).unwrap();
            let map = breuer_hall(&u, false).unwrap();
            for _ in 0..10 {
                let v = rng::random_unit_vec(d, &mut r);
                let p = CMat::from_fn(d, d, |i, j| v[i] * v[j].conj());
                let eig = hermitian_eig(&map.apply(&p).unwrap(), 1e-10).unwrap();
                assert!(eig.values[0].abs() < 1e-9);
                assert!(eig.values[1].abs() < 1e-9);
                for &l in &eig.values[2..] {
                    assert!((l - 1.0).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn robertson_action_table() {
        // Full oracle for the block map on matrix units.
        let map = robertson();
        let half = cr(0.5);
        let want = |i: usize, j: usize| -> CMat {
            let mut m = CMat::zeros(4, 4);
            match (i, j) {
                (0, 0) | (1, 1) => {
                    m[(2, 2)] = half;
                    m[(3, 3)] = half;
                }
                (2, 2) | (3, 3) => {
                    m[(0, 0)] = half;
                    m[(1, 1)] = half;
                }
                (0, 2) => {
                    m[(0, 2)] = half;
                    m[(3, 1)] = half;
                }
                (0, 3) => {
                    m[(0, 3)] = half;
                    m[(2, 1)] = -half;
                }
                (1, 2) => {
                    m[(1, 2)] = half;
                    m[(3, 0)] = -half;
                }
                (1, 3) => {
                    m[(1, 3)] = half;
                    m[(2, 0)] = half;
                }
                (0, 1) | (2, 3) => {}
                _ => unreachable!(),
            }
            m
        };
        for i in 0..4 {
            for j in 0..4 {
                let got = map.column_image(i, j);
                let expect = if i <= j || (i, j) == (1, 0) || (i, j) == (3, 2) {
                    // rows (1,0) and (3,2) are also zero via the (0,1)/(2,3) entries
                    match (i, j) {
                        (1, 0) => want(0, 1).adjoint(),
                        (3, 2) => want(2, 3).adjoint(),
                        _ => want(i, j),
                    }
                } else {
                    want(j, i).adjoint()
                };
                assert!(
                    got.max_abs_diff(&expect) == 0.0,
                    "action on e_{i}{j} differs from table"
                );
            }
        }
    }

    #[test]
    fn robertson_is_unital_and_trace_preserving() {
        let map = robertson();
        let id = CMat::identity(4);
        assert!(map.apply(&id).unwrap().max_abs_diff(&id) == 0.0);
        let mut r = rng::chacha(3);
        for _ in 0..5 {
            let x = rng::gaussian_cmat(4, 4, &mut r);
            let out = map.apply(&x).unwrap();
            assert!((out.trace() - x.trace()).norm() < 1e-13);
        }
    }

    #[test]
    fn chi_interpolates_named_maps() {
        let u = AntisymOp::canonical(4).unwrap();
        let chi01 = chi_map(0.0, 1.0, &u).unwrap();
        assert!(chi01.mat.max_abs_diff(&reduction_map(4).unwrap().mat) < 1e-12);
        let chi00 = chi_map(0.0, 0.0, &u).unwrap();
        assert!(chi00.mat.max_abs_diff(&trace_map(4).unwrap().mat) < 1e-12);
        let chi11 = chi_map(1.0, 1.0, &u).unwrap();
        assert!(chi11.mat.max_abs_diff(&breuer_hall(&u, false).unwrap().mat) < 1e-12);

        assert!(matches!(
            chi_map(1.5, 0.3, &u),
            Err(Error::RangeError { .. })
        ));
        assert!(matches!(
            chi_map(0.5, -0.01, &u),
            Err(Error::RangeError { .. })
        ));
    }

    #[test]
    fn chi_is_positive_on_sampled_projectors() {
        let u = AntisymOp::canonical(4).unwrap();
        let mut r = rng::chacha(55);
        for &(x, y) in &[(0.0, 0.0), (1.0, 1.0), (0.3, 0.9), (1.0, 0.0), (0.6, 0.6)] {
            let map = chi_map(x, y, &u).unwrap();
            for _ in 0..100 {
                let v = rng::random_unit_vec(4, &mut r);
                let p = CMat::from_fn(4, 4, |i, j| v[i] * v[j].conj());
                let eig = hermitian_eig(&map.apply(&p).unwrap(), 1e-10).unwrap();
                assert!(
                    eig.values[0] >= -1e-10,
                    "chi({x},{y}) negative on projector: {}",
                    eig.values[0]
                );
            }
        }
    }

    #[test]
    fn pair_generators_and_vector() {
        let a01 = pair_generator(3, 0, 1).unwrap();
        assert_eq!(a01[(0, 1)], ONE);
        assert_eq!(a01[(1, 0)], -ONE);
        assert!(matches!(pair_generator(3, 1, 1), Err(Error::BadPair(1, 1))));
        assert!(matches!(pair_generator(3, 2, 1), Err(Error::BadPair(2, 1))));
        assert!(matches!(pair_generator(3, 0, 3), Err(Error::BadPair(0, 3))));

        assert_eq!(pair_index(4).len(), 6);
        assert_eq!(pair_index(4)[0], (0, 1));
        assert_eq!(pair_index(4)[5], (2, 3));

        // reconstruction: Σ u_(kl) A_kl == U, and ‖u‖² = ½ ‖U‖²_F
        for op in [
            AntisymOp::canonical(4).unwrap(),
            random_antisym_unitary(6, 9).unwrap(),
            AntisymOp::embedded_canonical(8, 4).unwrap(),
        ] {
            let uvec = pair_vector(&op);
            let mut rec = CMat::zeros(op.d, op.d);
            for (&(k, l), &w) in pair_index(op.d).iter().zip(&uvec) {
                rec = rec.add(&pair_generator(op.d, k, l).unwrap().scale(w));
            }
            assert!(rec.max_abs_diff(&op.u) == 0.0);
            let norm2: f64 = uvec.iter().map(|z| z.norm_sqr()).sum();
            let fro2 = op.u.fro_norm().powi(2);
            assert!((norm2 - 0.5 * fro2).abs() < 1e-12);
        }
    }

    #[test]
    fn hall_identity_coefficients_give_reduction() {
        for d in [3usize, 4] {
            let map = hall_map(&CoeffMatrix::identity(d), HallVariant::Transposed);
            assert!(map.mat.max_abs_diff(&reduction_map(d).unwrap().mat) < 1e-12);
        }
    }

    #[test]
    fn hall_rank_one_coefficients_give_conjugation() {
        let u = random_antisym_unitary(4, 13).unwrap();
        let uvec = pair_vector(&u);
        let m = uvec.len();
        let c = CMat::from_fn(m, m, |a, b| uvec[a] * uvec[b].conj());
        let map = hall_map(&CoeffMatrix::new(4, c).unwrap(), HallVariant::Transposed);
        let mut r = rng::chacha(2);
        for _ in 0..5 {
            let x = rng::gaussian_cmat(4, 4, &mut r);
            let want = u.u.mul(&x.transpose()).mul(&u.u.adjoint());
            assert!(map.apply(&x).unwrap().max_abs_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn hall_plain_variant_transposes_the_argument() {
        // Plain with identity coefficients is X ↦ Tr(X)·I − X^T.
        let map = hall_map(&CoeffMatrix::identity(3), HallVariant::Plain);
        let mut r = rng::chacha(6);
        let x = rng::gaussian_cmat(3, 3, &mut r);
        let want = apply_formula_reduction(&x.transpose());
        assert!(map.apply(&x).unwrap().max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn coefficient_analysis_decomposes_chi() {
        let u = AntisymOp::canonical(4).unwrap();
        for &(x, y) in &[(0.5, 0.5), (1.0, 1.0), (0.0, 0.7), (0.9, 0.2)] {
            let (c, cp, min_eig) = coefficient_analysis(x, y, &u).unwrap();
            assert_eq!(cp, 1.0 - y);
            // smallest eigenvalue is y − x·k, k = rank/2
            assert!((min_eig - (y - 2.0 * x)).abs() < 1e-12);
            let rebuilt = hall_map(&c, HallVariant::Transposed)
                .mat
                .add(&trace_map(4).unwrap().mat.scale(cr(cp)));
            let chi = chi_map(x, y, &u).unwrap();
            assert!(rebuilt.max_abs_diff(&chi.mat) < 1e-12);
        }
        assert!(coefficient_analysis(2.0, 0.0, &u).is_err());
    }

    #[test]
    fn linmap_validation_and_apply_errors() {
        // X ↦ i·Tr(X)·I is linear but not Hermiticity-preserving.
        let bad = CMat::identity(4).scale(IM);
        let mut mat = CMat::zeros(4, 4);
        for k in 0..2 {
            mat[(k * 2 + k, 0)] = bad[(0, 0)];
            mat[(k * 2 + k, 3)] = bad[(0, 0)];
        }
        assert!(matches!(LinMap::new(2, mat, "bad"), Err(Error::NotHermitian(_))));
        assert!(matches!(
            LinMap::new(2, CMat::zeros(3, 3), "bad"),
            Err(Error::DimMismatch(_))
        ));

        let map = identity_map(3);
        assert!(map.apply(&CMat::identity(3)).is_ok());
        assert!(matches!(
            map.apply(&CMat::identity(4)),
            Err(Error::DimMismatch(_))
        ));
    }
}
