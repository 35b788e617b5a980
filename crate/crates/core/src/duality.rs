//! Cartier duality.
//!
//! The dual of `H` is `Hom(H, Z(1))`. Functionals on `T_Z = Z^n` are
//! written as column vectors in the dual basis, so the evaluation pairing
//! is the identity matrix.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::hodge::{MixedHodgeStructure, Polarization};
use crate::iso::{iso_test, IsoOutcome};
use crate::motives::{AbelianVariety, ExtClassPoint, MotiveMorphism, OneMotive};
use crate::numeric::CMat;
use crate::realizations::{motivic, t_hodge};
use crate::report::{Report, Status};
use crate::zlinalg::{det, inverse_unimodular, kernel_basis, IntMatrix};

/// `Hom(H, Z(1))` with the induced filtrations and polarization.
pub fn internal_dual(h: &MixedHodgeStructure, cfg: &Config) -> Result<MixedHodgeStructure> {
    h.validate_type(cfg)?;
    let ty = h.hodge_type()?;
    let (t, g) = (ty.t, ty.g);
    let n = h.rank();
    let w2 = kernel_basis(&h.w1().transpose());
    let w1 = kernel_basis(&h.w2().transpose());
    let f0 = h.f0().transpose().nullspace(cfg.tol);
    let polarization = match h.polarization() {
        Some(p) if g > 0 => {
            let b = h.adapted_basis()?;
            let dual_basis = inverse_unimodular(&b).ok_or(Error::Numerical("basis inversion".into()))?.transpose();
            let einv = inverse_unimodular(&p.form).ok_or_else(|| Error::Riemann("polarization is not principal".into()))?;
            Some(Polarization { lifts: dual_basis.block(0, t, n, 2 * g), form: einv.transpose() })
        }
        _ => None,
    };
    MixedHodgeStructure::new(n, w2, w1, f0, polarization)
}

/// The Cartier dual `M^v`, with the pairing matrix `psi` of `T_Z(M) x T_Z(M^v) -> Z`.
pub fn cartier_dual(m: &OneMotive, cfg: &Config) -> Result<(OneMotive, IntMatrix)> {
    let hd = internal_dual(&t_hodge(m), cfg)?;
    motivic(&hd, cfg)
}

/// The symmetric data `(L, L^v, A, A^v, u, v, psi)` of a 1-motive.
#[derive(Clone, Debug)]
pub struct SymmetricAvatar {
    pub lattice_rank: usize,
    pub dual_lattice_rank: usize,
    pub abelian: AbelianVariety,
    pub dual_abelian: AbelianVariety,
    /// `u: L -> A` on Lie algebras, `g x r`.
    pub u: CMat,
    /// `v: L^v -> A^v`, one point per torus character.
    pub v: Vec<ExtClassPoint>,
    /// Pairing on Hodge lattices, `T_Z(M) x T_Z(M^v) -> Z`.
    pub psi: IntMatrix,
}

pub fn symmetric_avatar(m: &OneMotive, cfg: &Config) -> Result<SymmetricAvatar> {
    let (dual, psi) = cartier_dual(m, cfg)?;
    let (r, t, g) = m.ranks();
    Ok(SymmetricAvatar {
        lattice_rank: r,
        dual_lattice_rank: t,
        abelian: m.abelian().clone(),
        dual_abelian: dual.abelian().clone(),
        u: m.u_lift().block(t, 0, g, r),
        v: (0..t).map(|j| m.ext_class(j)).collect(),
        psi,
    })
}

/// The pairing at level `m`, with its perfectness.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelPairing {
    pub level: u64,
    pub gram: IntMatrix,
    pub perfect: bool,
}

pub fn pairing_mod_m(m: &OneMotive, level: u64, cfg: &Config) -> Result<LevelPairing> {
    if level < 2 {
        return Err(Error::Level(level));
    }
    let (_, psi) = cartier_dual(m, cfg)?;
    let lb = BigInt::from(level);
    let perfect = det(&psi).abs().gcd(&lb) == BigInt::from(1);
    Ok(LevelPairing { level, gram: psi.reduce_mod(&lb), perfect })
}

/// Compares `M` with `M^vv`: via the isomorphism search and via the
/// canonical evaluation map `x -> <x, ->`.
pub fn double_dual_compare(m: &OneMotive, cfg: &Config) -> Report {
    let mut rep = Report::new("double_dual");
    let h = t_hodge(m);
    match internal_dual(&h, cfg).and_then(|d| internal_dual(&d, cfg)) {
        Ok(hh) => rep.check("hodge_involution", hh.approx_eq(&h, cfg.tol), "internal dual is an involution on H"),
        Err(e) => rep.check("hodge_involution", false, format!("{e}")),
    }
    let (dual, q1) = match cartier_dual(m, cfg) {
        Ok(x) => x,
        Err(e) => {
            rep.check("dual", false, format!("{e}"));
            return rep;
        }
    };
    let (dd, q2) = match cartier_dual(&dual, cfg) {
        Ok(x) => x,
        Err(e) => {
            rep.check("double_dual", false, format!("{e}"));
            return rep;
        }
    };
    let (r, t, g) = m.ranks();
    rep.check(
        "dual_ranks",
        dual.ranks() == (t, r, g) && dd.ranks() == (r, t, g),
        format!("dual {:?}, double dual {:?}", dual.ranks(), dd.ranks()),
    );
    let Some(q2inv) = inverse_unimodular(&q2) else {
        rep.check("pairing_perfect", false, "dual pairing is not unimodular");
        return rep;
    };
    rep.check("pairing_perfect", true, "pairing matrices are unimodular");
    let canonical = &q2inv * &q1.transpose();
    match MotiveMorphism::from_hodge_map(m, &dd, &canonical, cfg) {
        Ok(_) => rep.check("canonical_map", true, "evaluation map is a verified isomorphism"),
        Err(e) => rep.check("canonical_map", false, format!("{e}")),
    }
    let transposed = &q2 * &canonical == q1.transpose();
    rep.check("avatar_transpose", transposed, "psi of the dual is the transpose of psi under the evaluation map");
    match iso_test(m, &dd, cfg) {
        IsoOutcome::VerifiedIso(_) => rep.check("iso_search", true, "verified isomorphism"),
        IsoOutcome::VerifiedDistinct(why) => rep.check("iso_search", false, why),
        IsoOutcome::Unknown(why) => rep.push("iso_search", Status::Unknown, why),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::C64;

    #[test]
    fn kummer_dual_is_lattice_to_torus_swap() {
        let cfg = Config::default();
        let m = OneMotive::kummer(C64::new(2.0, 0.0)).unwrap();
        let (d, psi) = cartier_dual(&m, &cfg).unwrap();
        assert_eq!(d.ranks(), (1, 1, 0));
        assert!(crate::zlinalg::is_unimodular(&psi));
        assert!(double_dual_compare(&m, &cfg).passed());
    }

    #[test]
    fn elliptic_dual_validates() {
        let cfg = Config::default();
        let m = OneMotive::elliptic(C64::new(0.2, 1.4), &cfg).unwrap();
        let hd = internal_dual(&t_hodge(&m), &cfg).unwrap();
        hd.validate_type(&cfg).unwrap();
        let rep = double_dual_compare(&m, &cfg);
        assert!(rep.passed(), "{rep:?}");
    }
}
