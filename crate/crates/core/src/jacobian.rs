//! Jacobian-type ideals and their graded quotient rings, degree by degree.
//!
//! For `f ∈ S_β` the ideals are
//!
//! * `J(f)  = ⟨∂f/∂x_1, …, ∂f/∂x_n⟩`,
//! * `J₀(f) = ⟨x_1 ∂f/∂x_1, …, x_n ∂f/∂x_n⟩`,
//! * `J₁(f) = J₀(f) : x_1⋯x_n`,
//! * `J^σ(f) = ⟨J(f), x_k : ρ_k ⊂ σ⟩`, `J^σ₀(f) = ⟨J₀(f), x_k : ρ_k ⊂ σ⟩`,
//! * `J^σ₁(f) = J^σ₀(f) : ∏_{ρ_k ⊄ σ} x_k`.
//!
//! Everything is computed one graded piece at a time with exact sparse
//! elimination over `Q(i)`. The quotient basis of each piece consists of
//! the monomials that are not pivots when lex-largest monomials are pivoted
//! first, which makes bases and structure constants deterministic.
//!
//! An ideal quotient `(I : u)_γ` is computed in one elimination: the span
//! of `I_{γ + deg u}` is echelonized with the monomials not divisible by
//! `u` pivoted first, so the rows whose pivots are divisible by `u` span
//! `I_{γ+deg u} ∩ u·S_γ`; dividing those rows by `u` gives `(I : u)_γ`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::coxring::{CoxRing, GradedBasis, Monomial, Polynomial};
use crate::divisors::DivisorClass;
use crate::error::{Error, Result};
use crate::fan::Cone;
use crate::linalg::{Echelon, QuotientSpace, SparseVec};
use crate::scalar::{GaussianRational, Scalar};

use num_traits::{One, Zero};

/// Which Jacobian-type ideal to use.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKind {
    /// Partial derivatives.
    J,
    /// `x_i ∂f/∂x_i`.
    J0,
    /// Partial derivatives and the variables of a two-dimensional cone.
    JSigma(Cone),
    /// `x_i ∂f/∂x_i` and the variables of a two-dimensional cone.
    JSigma0(Cone),
}

impl IdealKind {
    /// Variables added as generators.
    pub fn cone_variables(&self) -> &[usize] {
        match self {
            IdealKind::J | IdealKind::J0 => &[],
            IdealKind::JSigma(c) | IdealKind::JSigma0(c) => c,
        }
    }

    /// Whether the derivative generators carry the factor `x_i`.
    pub fn uses_euler_generators(&self) -> bool {
        matches!(self, IdealKind::J0 | IdealKind::JSigma0(_))
    }

    /// The monomial used for saturation: `∏ x_i` over all variables not
    /// among [`cone_variables`](Self::cone_variables).
    pub fn saturating_monomial(&self, nvars: usize) -> Monomial {
        let cone = self.cone_variables();
        Monomial::product_of(nvars, (0..nvars).filter(|k| !cone.contains(k)))
    }

    /// Short human-readable name.
    pub fn label(&self) -> String {
        match self {
            IdealKind::J => "J".into(),
            IdealKind::J0 => "J0".into(),
            IdealKind::JSigma(c) => format!("Jsigma{c:?}"),
            IdealKind::JSigma0(c) => format!("Jsigma0{c:?}"),
        }
    }
}

/// One graded piece `(S / I)_γ` of a Jacobian-type quotient ring.
#[derive(Clone, Debug)]
pub struct QuotientPiece {
    pub degree: DivisorClass,
    pub kind: IdealKind,
    /// Whether the ideal was saturated by the kind's saturating monomial.
    pub saturated: bool,
    /// The monomial basis of `S_γ` (columns).
    pub ambient: Arc<GradedBasis>,
    quotient: QuotientSpace<GaussianRational>,
    /// For saturated pieces: the echelon form of the unsaturated ideal in
    /// degree `γ + deg u`, pivoting monomials not divisible by `u` first.
    lift: Option<Echelon<GaussianRational>>,
}

impl QuotientPiece {
    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Dimension of the ideal in this degree.
    pub fn ideal_rank(&self) -> usize {
        self.quotient.subspace().rank()
    }

    /// Dimension of `S_γ`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    /// Monomials whose classes form the quotient basis.
    pub fn basis_monomials(&self) -> Vec<&Monomial> {
        self.quotient
            .basis_columns()
            .iter()
            .map(|&c| &self.ambient.monomials[c])
            .collect()
    }

    /// Dense coordinates of the class of `p` in the quotient basis.
    ///
    /// # Errors
    /// [`Error::DegreeMismatch`] if `deg p ≠ γ`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Vec<GaussianRational>> {
        Ok(self.quotient.dense_coordinates(&self.sparse(p)?))
    }

    /// Sparse coordinates of the class of `p`.
    ///
    /// # Errors
    /// [`Error::DegreeMismatch`] if `deg p ≠ γ`.
    pub fn coordinates(&self, p: &Polynomial) -> Result<SparseVec<GaussianRational>> {
        Ok(self.quotient.coordinates(&self.sparse(p)?))
    }

    /// Whether `p` lies in the ideal.
    ///
    /// # Errors
    /// [`Error::DegreeMismatch`] if `deg p ≠ γ`.
    pub fn in_ideal(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.quotient.subspace().contains(&self.sparse(p)?))
    }

    /// The polynomial `Σ c_j · (basis monomial j)` representing a class.
    pub fn representative(&self, ring: &CoxRing, coords: &[GaussianRational]) -> Polynomial {
        let v: SparseVec<GaussianRational> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (self.quotient.basis_columns()[j], c.clone()))
            .collect();
        Polynomial::from_sparse(ring, &self.ambient, &v)
    }

    fn sparse(&self, p: &Polynomial) -> Result<SparseVec<GaussianRational>> {
        if *p.degree() != self.degree {
            return Err(Error::DegreeMismatch(
                "polynomial degree differs from the graded piece".into(),
            ));
        }
        p.to_sparse(&self.ambient)
    }
}

/// Outcome of the quasismoothness / regularity certificate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Whether a certificate was found.
    pub certified: bool,
    /// The smallest `k` such that `g^k` lies in the ideal for every
    /// irrelevant-ideal generator `g` (when certified).
    pub k: Option<usize>,
}

type PieceKey = (IdealKind, bool, Vec<i64>);

/// The Jacobian-type ideals of a fixed polynomial, with cached pieces.
#[derive(Debug)]
pub struct JacobianRing {
    ring: Arc<CoxRing>,
    f: Polynomial,
    partials: Vec<Polynomial>,
    euler: Vec<Polynomial>,
    cache: Mutex<HashMap<PieceKey, Arc<QuotientPiece>>>,
}

impl JacobianRing {
    pub fn new(ring: Arc<CoxRing>, f: Polynomial) -> Self {
        let n = ring.nvars();
        let partials = (0..n).map(|i| f.partial_derivative(&ring, i)).collect();
        let euler = (0..n).map(|i| f.euler_component(i)).collect();
        JacobianRing {
            ring,
            f,
            partials,
            euler,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<CoxRing> {
        &self.ring
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    /// `β = deg f`.
    pub fn beta(&self) -> &DivisorClass {
        self.f.degree()
    }

    /// Spanning vectors of `I_γ` in the monomial basis of `S_γ`.
    ///
    /// Monomials divisible by a cone variable come first (as unit vectors),
    /// then the multiples of the derivative generators with those monomials
    /// removed. Degrees with `S_{γ − deg g}` empty contribute nothing.
    pub fn ideal_span(
        &self,
        kind: &IdealKind,
        gamma: &DivisorClass,
    ) -> (Arc<GradedBasis>, Vec<SparseVec<GaussianRational>>) {
        let ring = &*self.ring;
        let basis = ring.monomials_of_degree(gamma);
        let cone = kind.cone_variables();
        let killed = |m: &Monomial| cone.iter().any(|&k| m.0[k] > 0);
        let mut vecs: Vec<SparseVec<GaussianRational>> = Vec::new();
        for (c, m) in basis.monomials.iter().enumerate() {
            if killed(m) {
                vecs.push(vec![(c, GaussianRational::one())]);
            }
        }
        let gens = if kind.uses_euler_generators() {
            &self.euler
        } else {
            &self.partials
        };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let mult_deg = ring.chow().sub(gamma, g.degree());
            let multipliers = ring.monomials_of_degree(&mult_deg);
            for m in multipliers.monomials.iter().filter(|m| !killed(m)) {
                let mut v: SparseVec<GaussianRational> = g
                    .terms()
                    .iter()
                    .map(|(t, c)| (t.mul(m), c))
                    .filter(|(t, _)| !killed(t))
                    .map(|(t, c)| (basis.index_of(&t).expect("product has degree γ"), c.clone()))
                    .collect();
                if !v.is_empty() {
                    v.sort_by_key(|(i, _)| *i);
                    vecs.push(v);
                }
            }
        }
        (basis, vecs)
    }

    /// The graded piece `(S / I)_γ`, or `(S / (I : u))_γ` when `saturate`.
    pub fn piece(&self, kind: &IdealKind, saturate: bool, gamma: &DivisorClass) -> Arc<QuotientPiece> {
        let key = (kind.clone(), saturate, gamma.canonical.clone());
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return p.clone();
        }
        let piece = Arc::new(if saturate {
            self.build_saturated(kind, gamma)
        } else {
            self.build_plain(kind, gamma)
        });
        self.cache.lock().expect("cache lock").insert(key, piece.clone());
        piece
    }

    fn build_plain(&self, kind: &IdealKind, gamma: &DivisorClass) -> QuotientPiece {
        let (ambient, vecs) = self.ideal_span(kind, gamma);
        let mut ech = Echelon::new(ambient.len());
        for v in &vecs {
            ech.insert(v);
        }
        QuotientPiece {
            degree: gamma.clone(),
            kind: kind.clone(),
            saturated: false,
            ambient,
            quotient: QuotientSpace::new(ech),
            lift: None,
        }
    }

    fn build_saturated(&self, kind: &IdealKind, gamma: &DivisorClass) -> QuotientPiece {
        let ring = &*self.ring;
        let u = kind.saturating_monomial(ring.nvars());
        let lifted_degree = ring.chow().add(gamma, &ring.degree_of(&u));
        let (big, vecs) = self.ideal_span(kind, &lifted_degree);
        let divisible: Vec<bool> = big.monomials.iter().map(|m| m.divisible_by(&u)).collect();
        let order: Vec<usize> = (0..big.len())
            .filter(|&c| !divisible[c])
            .chain((0..big.len()).filter(|&c| divisible[c]))
            .collect();
        let threshold = divisible.iter().filter(|&&d| !d).count();
        let mut lift = Echelon::with_priority(order);
        for v in &vecs {
            lift.insert(v);
        }
        let ambient = ring.monomials_of_degree(gamma);
        let mut ech = Echelon::new(ambient.len());
        for row in lift.rows_with_pivot_from(threshold) {
            let v: SparseVec<GaussianRational> = row
                .into_iter()
                .map(|(c, x)| {
                    let q = big.monomials[c].div(&u).expect("row lies in the divisible block");
                    (ambient.index_of(&q).expect("quotient has degree γ"), x)
                })
                .collect();
            let mut v = v;
            v.sort_by_key(|(i, _)| *i);
            ech.insert(&v);
        }
        QuotientPiece {
            degree: gamma.clone(),
            kind: kind.clone(),
            saturated: true,
            ambient,
            quotient: QuotientSpace::new(ech),
            lift: Some(lift),
        }
    }

    /// `R(f)_γ = (S / J(f))_γ`.
    pub fn r(&self, gamma: &DivisorClass) -> Arc<QuotientPiece> {
        self.piece(&IdealKind::J, false, gamma)
    }

    /// `R₀(f)_γ`.
    pub fn r0(&self, gamma: &DivisorClass) -> Arc<QuotientPiece> {
        self.piece(&IdealKind::J0, false, gamma)
    }

    /// `R₁(f)_γ`.
    pub fn r1(&self, gamma: &DivisorClass) -> Arc<QuotientPiece> {
        self.piece(&IdealKind::J0, true, gamma)
    }

    /// `R^σ₁(f)_γ` for a two-dimensional cone `σ` (sorted ray indices).
    pub fn r1_sigma(&self, sigma: &[usize], gamma: &DivisorClass) -> Arc<QuotientPiece> {
        let mut c = sigma.to_vec();
        c.sort_unstable();
        self.piece(&IdealKind::JSigma0(c), true, gamma)
    }

    /// Inverse of the isomorphism `μ : R₁(f)_{γ−β₀} → R₀(f)_γ` induced by
    /// multiplication with `x_1⋯x_n`. It is an isomorphism for `γ = dβ`
    /// (both sides count the interior lattice points of `Δ`); other degrees
    /// are accepted when the dimensions happen to agree.
    ///
    /// Returns the class of `Q ∈ S_{γ−β₀}` with `x_1⋯x_n · Q ≡ P` modulo
    /// `J₀(f)_γ`, as coordinates in the quotient basis of `R₁(f)_{γ−β₀}`.
    ///
    /// # Errors
    /// [`Error::DimensionMismatch`] if the two pieces have different
    /// dimensions, [`Error::NoSolution`] if `P` is not in the image.
    pub fn mu_inverse(&self, p: &Polynomial) -> Result<Vec<GaussianRational>> {
        let ring = &*self.ring;
        let target = ring.chow().sub(p.degree(), &ring.chow().anticanonical());
        let r1 = self.r1(&target);
        let lift = r1.lift.as_ref().expect("saturated pieces keep their lift");
        let u = IdealKind::J0.saturating_monomial(ring.nvars());
        let big = ring.monomials_of_degree(p.degree());
        let r0_dim = big.len() - lift.rank();
        if r0_dim != r1.dim() {
            return Err(Error::DimensionMismatch {
                expected: r1.dim(),
                found: r0_dim,
            });
        }
        let rem = lift.reduce(&p.to_sparse(&big)?);
        let mut q = Polynomial::zero(ring.nvars(), target);
        let mut terms = Vec::with_capacity(rem.len());
        for (c, x) in rem {
            let m = big.monomials[c].div(&u).ok_or(Error::NoSolution)?;
            terms.push((m, x));
        }
        if !terms.is_empty() {
            q = Polynomial::from_terms(ring, q.degree().clone(), terms)?;
        }
        r1.normal_form(&q)
    }

    /// Searches for a certificate that the derivative generators (or, with
    /// `regular`, the generators `x_i ∂f/∂x_i`) have no common zero on the
    /// toric variety: every generator `g = ∏_{ρ_i ⊄ σ} x_i` of the
    /// irrelevant ideal must satisfy `g^k ∈ I` for some `k ≤ k_max`.
    ///
    /// Failure is inconclusive, not a proof of singularity.
    pub fn quasismooth_witness(&self, k_max: usize, regular: bool) -> Witness {
        let ring = &*self.ring;
        let n = ring.nvars();
        let kind = if regular { IdealKind::J0 } else { IdealKind::J };
        let mut gens: Vec<Monomial> = ring
            .fan()
            .max_cones()
            .iter()
            .map(|c| Monomial::product_of(n, (0..n).filter(|i| !c.contains(i))))
            .collect();
        gens.sort();
        gens.dedup();
        let mut worst = 0;
        for g in &gens {
            let mut found = None;
            for k in 1..=k_max {
                let gk = Monomial(g.0.iter().map(|e| e * k as u32).collect());
                let piece = self.piece(&kind, false, &ring.degree_of(&gk));
                let p = Polynomial::monomial(ring, gk);
                if piece.in_ideal(&p).expect("degree matches") {
                    found = Some(k);
                    break;
                }
            }
            match found {
                Some(k) => worst = worst.max(k),
                None => {
                    return Witness {
                        certified: false,
                        k: None,
                    }
                }
            }
        }
        Witness {
            certified: true,
            k: Some(worst),
        }
    }
}

/// Rank of a list of sparse vectors (convenience for checks and reports).
pub fn span_rank(ncols: usize, vecs: &[SparseVec<GaussianRational>]) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

/// Scales a coordinate vector.
pub fn scale_coords(v: &[GaussianRational], c: &GaussianRational) -> Vec<GaussianRational> {
    v.iter().map(|x| x.times(c)).collect()
}
