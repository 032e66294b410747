//! Cohomology of the toric variety and the middle cohomology of a big and
//! nef regular hypersurface.
//!
//! `H*(P_Σ)` is computed from the presentation `Q[D_1, …, D_n] / (P(Σ) +
//! SR(Σ))`: in every degree the monomials not divisible by a Stanley–Reisner
//! monomial span, and the linear relations `Σ ⟨m, e_i⟩ D_i` times such
//! monomials are divided out. The toric part of a hypersurface `X` is
//! `H*(P_Σ) / Ann([X])`, whose graded dimensions are ranks of
//! multiplication by `[X]`.
//!
//! The middle cohomology `H^{p,q}(X)`, `p + q = d − 1`, decomposes into a
//! polynomial summand `R₁(f)_{(q+1)β−β₀}`, `n(σ)` copies of
//! `R^σ₁(f)_{qβ−β₀+β₁^σ}` for each two-dimensional cone `σ` of `Σ_X`
//! containing rays of `Σ` in its interior, the toric part (when `p = q`),
//! and a stratum term `C` built from codimension-two orbit closures. `C`
//! vanishes for `q ∈ {0, 1, d−2, d−1}`, hence always for `d ≤ 4`; in the
//! remaining cases no closed dimension formula is available and the summand
//! is reported as unknown.

use std::collections::HashMap;

use crate::divisors::{is_semiample, semiample_quotient, SemiampleAnalysis};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, SigmaOrdering};
use crate::jacobian::JacobianRing;
use crate::linalg::{Echelon, QuotientSpace, SparseVec};
use crate::scalar::{rat, Rational};

/// One degree of `Q[D_1, …, D_n] / (P(Σ) + SR(Σ))`.
#[derive(Clone, Debug)]
struct CohomPiece {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    quotient: QuotientSpace<Rational>,
}

/// The rational cohomology ring of a complete simplicial toric variety, in
/// degrees `H^0, H^2, …, H^{2d}`.
#[derive(Clone, Debug)]
pub struct ToricCohomology {
    pieces: Vec<CohomPiece>,
}

fn exponent_vectors(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: usize, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == n {
            cur[i] = k as u32;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in (0..=k).rev() {
            cur[i] = e as u32;
            rec(n, k - e, i + 1, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, 0, &mut vec![0; n], &mut out);
    out
}

fn support(m: &[u32]) -> Vec<usize> {
    m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
}

impl ToricCohomology {
    /// # Errors
    /// [`Error::NotComplete`] / [`Error::NotSimplicial`].
    pub fn new(fan: &Fan) -> Result<Self> {
        fan.require_complete_simplicial()?;
        let n = fan.num_rays();
        let d = fan.dim();
        let free = |m: &Vec<u32>| {
            let s = support(m);
            s.is_empty() || fan.is_cone(&s)
        };
        let mut pieces: Vec<CohomPiece> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let monomials: Vec<Vec<u32>> = exponent_vectors(n, k).into_iter().filter(free).collect();
            let index: HashMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let mut ech = Echelon::new(monomials.len());
            if k > 0 {
                for mu in &pieces[k - 1].monomials {
                    for j in 0..d {
                        let mut v: SparseVec<Rational> = Vec::new();
                        for i in 0..n {
                            let c = fan.ray(i)[j];
                            if c == 0 {
                                continue;
                            }
                            let mut t = mu.clone();
                            t[i] += 1;
                            if let Some(&col) = index.get(&t) {
                                v.push((col, rat(c)));
                            }
                        }
                        v.sort_by_key(|(c, _)| *c);
                        ech.insert(&v);
                    }
                }
            }
            pieces.push(CohomPiece {
                monomials,
                index,
                quotient: QuotientSpace::new(ech),
            });
        }
        Ok(ToricCohomology { pieces })
    }

    /// `dim H^{2k}(P_Σ)` for `k = 0, …, d`.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.quotient.dim()).collect()
    }

    /// Rank of multiplication by the class `Σ b_i D_i` from `H^{2k}` to
    /// `H^{2k+2}` (zero when `k` is the top degree).
    pub fn multiplication_rank(&self, k: usize, b: &[i64]) -> usize {
        if k + 1 >= self.pieces.len() {
            return 0;
        }
        let (src, dst) = (&self.pieces[k], &self.pieces[k + 1]);
        let mut ech: Echelon<Rational> = Echelon::new(dst.quotient.dim());
        for &col in src.quotient.basis_columns() {
            let mu = &src.monomials[col];
            let mut v: SparseVec<Rational> = Vec::new();
            for (i, &bi) in b.iter().enumerate() {
                if bi == 0 {
                    continue;
                }
                let mut t = mu.clone();
                t[i] += 1;
                if let Some(&c) = dst.index.get(&t) {
                    v.push((c, rat(bi)));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            ech.insert(&dst.quotient.coordinates(&v));
        }
        ech.rank()
    }
}

/// `dim H^{2k}(P_Σ)` for `k = 0, …, min(max_degree, d)`.
///
/// # Errors
/// [`Error::NotComplete`] / [`Error::NotSimplicial`].
pub fn toric_cohomology_dims(fan: &Fan, max_degree: usize) -> Result<Vec<usize>> {
    let mut dims = ToricCohomology::new(fan)?.dims();
    dims.truncate(max_degree + 1);
    Ok(dims)
}

/// `dim H^{2k}_toric(X)` for `k = 0, …, d − 1`, where `X` is a hypersurface
/// of class `Σ b_i D_i`; this is the rank of `∪[X] : H^{2k}(P_Σ) →
/// H^{2k+2}(P_Σ)`.
///
/// # Errors
/// [`Error::NotSemiample`] if the class is not semiample;
/// [`Error::NotCartier`] if it is not Cartier.
pub fn toric_part_of_hypersurface(fan: &Fan, b: &[i64]) -> Result<Vec<usize>> {
    if !is_semiample(fan, b)? {
        return Err(Error::NotSemiample);
    }
    let tc = ToricCohomology::new(fan)?;
    Ok((0..fan.dim()).map(|k| tc.multiplication_rank(k, b)).collect())
}

/// A two-dimensional cone of `Σ_X`, described by the rays of `Σ` it contains.
#[derive(Clone, Debug)]
pub struct SigmaCone {
    pub ordering: SigmaOrdering,
}

impl SigmaCone {
    /// All rays of `Σ` in the cone, sorted by index (the variables `x_k`,
    /// `ρ_k ⊂ σ`).
    pub fn rays(&self) -> Cone {
        let mut r = self.ordering.rays.clone();
        r.sort_unstable();
        r
    }

    /// Rays of `Σ` strictly inside the cone (not rays of `Σ_X`).
    pub fn interior(&self) -> &[usize] {
        self.ordering.interior()
    }

    /// `n(σ)`.
    pub fn n(&self) -> usize {
        self.interior().len()
    }
}

/// The quotient fan `Σ_X` of a big semiample class and its two-dimensional
/// cones.
#[derive(Clone, Debug)]
pub struct SigmaXData {
    pub analysis: SemiampleAnalysis,
    /// Every two-dimensional cone of `Σ_X`, in the order of the quotient
    /// fan's cone enumeration.
    pub cones: Vec<SigmaCone>,
}

impl SigmaXData {
    /// Cones with `n(σ) > 0`.
    pub fn nontrivial(&self) -> impl Iterator<Item = &SigmaCone> {
        self.cones.iter().filter(|c| c.n() > 0)
    }

    /// The cone of `Σ_X` containing ray `i` of `Σ` in its interior.
    pub fn cone_of_interior_ray(&self, i: usize) -> Option<&SigmaCone> {
        self.cones.iter().find(|c| c.interior().contains(&i))
    }
}

/// Enumerates the two-dimensional cones of `Σ_X` for a big semiample class
/// with representative `b`, together with the ordered rays of `Σ` inside.
///
/// # Errors
/// [`Error::NotSemiample`], [`Error::NotCartier`], or [`Error::NotBig`]
/// (the cones of `Σ_X` live in a quotient lattice otherwise).
pub fn sigma_x_data(fan: &Fan, b: &[i64]) -> Result<SigmaXData> {
    let analysis = semiample_quotient(fan, b)?;
    if !analysis.is_big() {
        return Err(Error::NotBig {
            kappa: analysis.kappa,
            dim: fan.dim(),
        });
    }
    let preimage = |j: usize| {
        analysis
            .ray_image
            .iter()
            .position(|&r| r == Some(j))
            .expect("big class: rays correspond")
    };
    let mut cones = Vec::new();
    for c in analysis.quotient_fan.cones_of_dim(2) {
        let (a, b) = (preimage(c[0]), preimage(c[1]));
        cones.push(SigmaCone {
            ordering: fan.order_rays_in_2cone(a, b)?,
        });
    }
    Ok(SigmaXData { analysis, cones })
}

/// What a summand of the middle cohomology is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SummandLabel {
    /// `R₁(f)_{(q+1)β−β₀}`.
    Polynomial,
    /// One copy of `R^σ₁(f)_{qβ−β₀+β₁^σ}`, indexed by an interior ray.
    SigmaPart { sigma: Cone, ray: usize },
    /// `H^{p,q}_toric(X)`.
    Toric,
    /// Gysin images from codimension-two strata.
    Stratum,
}

impl SummandLabel {
    pub fn name(&self) -> String {
        match self {
            SummandLabel::Polynomial => "polynomial".into(),
            SummandLabel::SigmaPart { sigma, ray } => format!("sigma{sigma:?}/ray{ray}"),
            SummandLabel::Toric => "toric".into(),
            SummandLabel::Stratum => "stratum".into(),
        }
    }
}

/// A labelled summand; `dim` is `None` when it could not be determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSummand {
    pub label: SummandLabel,
    pub dim: Option<usize>,
}

/// The decomposition of one `H^{p,q}(X)`, `p + q = d − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeEntry {
    pub p: usize,
    pub q: usize,
    pub summands: Vec<HodgeSummand>,
}

impl HodgeEntry {
    /// `h^{p,q}`, if every summand is known.
    pub fn total(&self) -> Option<usize> {
        self.summands.iter().map(|s| s.dim).sum()
    }

    /// Sum of the known summands (a lower bound for `h^{p,q}`).
    pub fn known_part(&self) -> usize {
        self.summands.iter().filter_map(|s| s.dim).sum()
    }

    /// Dimension of the summands with a given label kind.
    pub fn dim_of(&self, pred: impl Fn(&SummandLabel) -> bool) -> usize {
        self.summands
            .iter()
            .filter(|s| pred(&s.label))
            .filter_map(|s| s.dim)
            .sum()
    }
}

/// The middle cohomology of a big and nef regular hypersurface.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    /// Dimension of the toric variety.
    pub d: usize,
    /// Entries for `q = 0, …, d − 1`.
    pub entries: Vec<HodgeEntry>,
    /// `dim H^{2k}_toric(X)` for `k = 0, …, d − 1`.
    pub toric: Vec<usize>,
    /// The cones of `Σ_X` with interior rays.
    pub sigma_cones: Vec<SigmaCone>,
}

impl HodgeDecomposition {
    /// `h^{d−1−q, q}`.
    pub fn h(&self, q: usize) -> Option<usize> {
        self.entries.get(q).and_then(HodgeEntry::total)
    }

    /// Whether every summand is known.
    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(|e| e.total().is_some())
    }

    /// `h^{p,q} = h^{q,p}` for every determined pair.
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|q| match (self.h(q), self.h(n - 1 - q)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        })
    }
}

/// Assembles the middle cohomology of the hypersurface `f = 0`.
///
/// Regularity of `f` is assumed, not checked (see
/// [`JacobianRing::quasismooth_witness`]).
///
/// # Errors
/// [`Error::InvalidInput`] for the zero polynomial; [`Error::NotSemiample`],
/// [`Error::NotCartier`], [`Error::NotBig`].
pub fn middle_cohomology(jr: &JacobianRing) -> Result<HodgeDecomposition> {
    if jr.polynomial().is_zero() {
        return Err(Error::InvalidInput(
            "the zero polynomial defines no hypersurface".into(),
        ));
    }
    let ring = jr.ring();
    let fan = ring.fan();
    let chow = ring.chow();
    let d = fan.dim();
    let beta = jr.beta().clone();
    let b0 = chow.anticanonical();
    let sx = sigma_x_data(fan, &beta.representative)?;
    let toric = toric_part_of_hypersurface(fan, &beta.representative)?;
    let sigma_cones: Vec<SigmaCone> = sx.nontrivial().cloned().collect();
    let mut entries = Vec::with_capacity(d);
    for q in 0..d {
        let p = d - 1 - q;
        let mut summands = Vec::new();
        let gamma = chow.combine(&[(q as i64 + 1, &beta), (-1, &b0)]);
        summands.push(HodgeSummand {
            label: SummandLabel::Polynomial,
            dim: Some(jr.r1(&gamma).dim()),
        });
        for sc in &sigma_cones {
            let rays = sc.rays();
            let b1 = ring.sum_of_ray_classes(&rays);
            let g = chow.combine(&[(q as i64, &beta), (-1, &b0), (1, &b1)]);
            let dim = jr.r1_sigma(&rays, &g).dim();
            for &i in sc.interior() {
                summands.push(HodgeSummand {
                    label: SummandLabel::SigmaPart {
                        sigma: rays.clone(),
                        ray: i,
                    },
                    dim: Some(dim),
                });
            }
        }
        if p == q {
            summands.push(HodgeSummand {
                label: SummandLabel::Toric,
                dim: Some(toric[q]),
            });
        }
        let stratum = if q < 2 || q + 2 >= d { Some(0) } else { None };
        summands.push(HodgeSummand {
            label: SummandLabel::Stratum,
            dim: stratum,
        });
        entries.push(HodgeEntry { p, q, summands });
    }
    Ok(HodgeDecomposition {
        d,
        entries,
        toric,
        sigma_cones,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxring::{CoxRing, Polynomial};
    use crate::fan::examples::*;
    use std::sync::Arc;

    fn fermat(fan: Fan) -> JacobianRing {
        let ring = Arc::new(CoxRing::new(fan).unwrap());
        let f = Polynomial::fermat(&ring, &ring.chow().anticanonical());
        JacobianRing::new(ring, f)
    }

    #[test]
    fn betti_numbers_of_small_toric_varieties() {
        assert_eq!(toric_cohomology_dims(&projective_space(2), 5).unwrap(), vec![1, 1, 1]);
        assert_eq!(toric_cohomology_dims(&p1_times_p1(), 5).unwrap(), vec![1, 2, 1]);
        assert_eq!(
            toric_cohomology_dims(&projective_space(4), 5).unwrap(),
            vec![1, 1, 1, 1, 1]
        );
        assert_eq!(toric_cohomology_dims(&p1_cubed(), 5).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(
            toric_cohomology_dims(&resolved_octic(), 5).unwrap(),
            vec![1, 2, 2, 2, 1]
        );
    }

    #[test]
    fn toric_parts() {
        assert_eq!(
            toric_part_of_hypersurface(&projective_space(3), &[4, 0, 0, 0]).unwrap(),
            vec![1, 1, 1]
        );
        assert_eq!(
            toric_part_of_hypersurface(&projective_space(4), &[5, 0, 0, 0, 0]).unwrap(),
            vec![1, 1, 1, 1]
        );
        // [X] = 0 annihilates everything, so the quotient vanishes.
        assert_eq!(
            toric_part_of_hypersurface(&projective_space(2), &[0, 0, 0]).unwrap(),
            vec![0, 0]
        );
        assert!(matches!(
            toric_part_of_hypersurface(&hirzebruch(1), &[0, 1, 0, 0]),
            Err(Error::NotSemiample)
        ));
    }

    #[test]
    fn sigma_census() {
        let ample = sigma_x_data(&projective_space(3), &[1, 1, 1, 1]).unwrap();
        assert!(ample.cones.iter().all(|c| c.n() == 0));
        assert_eq!(ample.cones.len(), 6);
        let fan = resolved_octic();
        let octic = sigma_x_data(&fan, &[1; 6]).unwrap();
        let nt: Vec<&SigmaCone> = octic.nontrivial().collect();
        assert_eq!(nt.len(), 1);
        assert_eq!(nt[0].rays(), vec![0, 4, 5]);
        assert_eq!(nt[0].interior(), &[5]);
        assert!(octic.cones.iter().all(|c| c.ordering.relation_holds(&fan)));
        let plane = sigma_x_data(&projective_space(2), &[1, 1, 1]).unwrap();
        assert_eq!(plane.cones.len(), 3);
    }

    #[test]
    fn hodge_numbers_of_classical_examples() {
        let quintic = middle_cohomology(&fermat(projective_space(4))).unwrap();
        assert_eq!(
            (0..4).map(|q| quintic.h(q).unwrap()).collect::<Vec<_>>(),
            vec![1, 101, 101, 1]
        );

        let k3 = middle_cohomology(&fermat(projective_space(3))).unwrap();
        assert_eq!(k3.h(1), Some(20));
        assert_eq!(k3.entries[1].dim_of(|l| *l == SummandLabel::Polynomial), 19);
        assert_eq!(k3.entries[1].dim_of(|l| *l == SummandLabel::Toric), 1);
        assert_eq!((k3.h(0), k3.h(2)), (Some(1), Some(1)));

        let cubic = middle_cohomology(&fermat(projective_space(2))).unwrap();
        assert_eq!((cubic.h(0), cubic.h(1)), (Some(1), Some(1)));
        assert!(quintic.is_symmetric() && k3.is_symmetric() && cubic.is_symmetric());
    }

    #[test]
    fn non_big_classes_are_rejected() {
        let ring = Arc::new(CoxRing::new(p1_times_p1()).unwrap());
        let beta = ring.class(&[0, 2, 0, 0]).unwrap();
        let f = Polynomial::fermat(&ring, &beta);
        assert!(matches!(
            middle_cohomology(&JacobianRing::new(ring, f)),
            Err(Error::NotBig { .. })
        ));
    }
}
