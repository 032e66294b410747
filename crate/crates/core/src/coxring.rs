//! The homogeneous coordinate (Cox) ring `S = C[x_ρ : ρ ∈ Σ(1)]`.
//!
//! `S` is graded by the class group: `deg x_i = [D_i]`. The graded piece of
//! degree `α = [Σ a_i D_i]` has the monomial basis `∏ x_i^{a_i + ⟨m, e_i⟩}`
//! indexed by the lattice points `m` of `{⟨m, e_i⟩ ≥ −a_i}`.
//!
//! Polynomials are sparse maps from monomials to Gaussian rationals with a
//! declared homogeneous degree. This module also builds the restriction of
//! a polynomial to an orbit closure `V(σ')` and the two Laurent-type
//! polynomials `G^σ(f)` and `H^σ(f)` attached to a two-dimensional cone.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

use crate::divisors::{restrict_divisor_to_star, ChowGroup, DivisorClass};
use crate::error::{Error, Result};
use crate::fan::{Fan, SigmaOrdering, StarFan};
use crate::lattice::{lattice_points_of_polyhedron, Inequality};
use crate::linalg::SparseVec;
use crate::scalar::{rat, GaussianRational, Scalar};

/// Exponent vector of a monomial in the Cox variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Product of monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Quotient `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    /// Whether `other` divides `self`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Exponents as signed integers.
    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// Builds a monomial from signed exponents, failing on negatives.
    pub fn from_i64(v: &[i64]) -> Option<Monomial> {
        v.iter()
            .map(|&x| u32::try_from(x).ok())
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    /// Product of the variables with indices in `vars`.
    pub fn product_of(n: usize, vars: impl IntoIterator<Item = usize>) -> Monomial {
        let mut v = vec![0; n];
        for i in vars {
            v[i] += 1;
        }
        Monomial(v)
    }
}

/// The monomial basis of one graded piece `S_α`.
///
/// Monomials are sorted in decreasing lexicographic order, so column `0`
/// is the lex-largest monomial; eliminations pivot on lex-largest
/// monomials first.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree: DivisorClass,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Column of a monomial, if it belongs to this degree.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A complete simplicial fan together with its class group and a cache of
/// graded monomial bases.
#[derive(Debug)]
pub struct CoxRing {
    fan: Fan,
    chow: ChowGroup,
    cache: Mutex<HashMap<Vec<i64>, Arc<GradedBasis>>>,
}

impl CoxRing {
    /// # Errors
    /// Fan validation errors; [`Error::NotComplete`] / [`Error::NotSimplicial`].
    pub fn new(fan: Fan) -> Result<CoxRing> {
        fan.require_complete_simplicial()?;
        let chow = ChowGroup::new(&fan);
        Ok(CoxRing {
            fan,
            chow,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn chow(&self) -> &ChowGroup {
        &self.chow
    }

    /// Number of Cox variables.
    pub fn nvars(&self) -> usize {
        self.fan.num_rays()
    }

    /// Class of a coefficient vector.
    pub fn class(&self, rep: &[i64]) -> Result<DivisorClass> {
        self.chow.class_of(rep)
    }

    /// Degree of a monomial.
    pub fn degree_of(&self, m: &Monomial) -> DivisorClass {
        self.chow.class_of(&m.as_i64()).expect("length matches")
    }

    /// The monomial basis of `S_α`.
    pub fn monomials_of_degree(&self, alpha: &DivisorClass) -> Arc<GradedBasis> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(&alpha.canonical) {
            return b.clone();
        }
        let a = &alpha.representative;
        let system: Vec<Inequality> = self
            .fan
            .rays()
            .iter()
            .zip(a)
            .map(|(e, &ai)| Inequality::from_ints(e, rat(-ai)))
            .collect();
        let pts = lattice_points_of_polyhedron(&system, self.fan.dim()).expect("complete fan gives bounded polytopes");
        let mut monomials: Vec<Monomial> = pts
            .iter()
            .map(|m| {
                let e: Vec<i64> = self
                    .fan
                    .rays()
                    .iter()
                    .zip(a)
                    .map(|(r, &ai)| ai + r.iter().zip(m).map(|(x, y)| x * y).sum::<i64>())
                    .collect();
                Monomial::from_i64(&e).expect("lattice point gives nonnegative exponents")
            })
            .collect();
        monomials.sort_unstable_by(|x, y| y.cmp(x));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let basis = Arc::new(GradedBasis {
            degree: alpha.clone(),
            monomials,
            index,
        });
        self.cache
            .lock()
            .expect("cache lock")
            .insert(alpha.canonical.clone(), basis.clone());
        basis
    }

    /// `Σ_{ρ_k ⊂ σ} deg x_k` for the rays in `rays`.
    pub fn sum_of_ray_classes(&self, rays: &[usize]) -> DivisorClass {
        let mut v = vec![0; self.nvars()];
        for &k in rays {
            v[k] += 1;
        }
        self.class(&v).expect("length matches")
    }
}

/// A homogeneous polynomial in the Cox ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    degree: DivisorClass,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    /// The zero polynomial of a given degree.
    pub fn zero(nvars: usize, degree: DivisorClass) -> Self {
        Polynomial {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial, checking that every term has the declared degree.
    ///
    /// # Errors
    /// [`Error::DegreeMismatch`] for an inhomogeneous term,
    /// [`Error::InvalidInput`] for a wrong exponent length.
    pub fn from_terms(
        ring: &CoxRing,
        degree: DivisorClass,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(ring.nvars(), degree);
        for (m, c) in terms {
            if m.0.len() != ring.nvars() {
                return Err(Error::InvalidInput(format!(
                    "monomial has {} exponents, ring has {}",
                    m.0.len(),
                    ring.nvars()
                )));
            }
            if ring.degree_of(&m) != p.degree {
                return Err(Error::DegreeMismatch(format!(
                    "term {:?} is not of the declared degree",
                    m.0
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// A single monomial with coefficient one.
    pub fn monomial(ring: &CoxRing, m: Monomial) -> Self {
        let degree = ring.degree_of(&m);
        let mut p = Polynomial::zero(ring.nvars(), degree);
        p.add_term(m, GaussianRational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.plus(&c);
                x.is_zero()
            }
            None => {
                self.terms.insert(m, c);
                false
            }
        };
        if remove {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> &DivisorClass {
        &self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Sum of two polynomials of the same degree.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(
                "cannot add polynomials of different degrees".into(),
            ));
        }
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars, self.degree.clone());
        if !c.is_zero() {
            for (m, x) in &self.terms {
                p.terms.insert(m.clone(), x.times(c));
            }
        }
        p
    }

    /// Product of polynomials.
    pub fn mul(&self, ring: &CoxRing, other: &Polynomial) -> Polynomial {
        let degree = ring.chow().add(&self.degree, &other.degree);
        let mut p = Polynomial::zero(self.nvars, degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.mul(b), x.times(y));
            }
        }
        p
    }

    /// Product with a monomial.
    pub fn mul_monomial(&self, ring: &CoxRing, m: &Monomial) -> Polynomial {
        let degree = ring.chow().add(&self.degree, &ring.degree_of(m));
        Polynomial {
            nvars: self.nvars,
            degree,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial.
    ///
    /// # Errors
    /// [`Error::NotDivisible`] if some term is not divisible.
    pub fn div_monomial(&self, ring: &CoxRing, m: &Monomial) -> Result<Polynomial> {
        let degree = ring.chow().sub(&self.degree, &ring.degree_of(m));
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            let q = a
                .div(m)
                .ok_or_else(|| Error::NotDivisible(format!("{:?} by {:?}", a.0, m.0)))?;
            terms.insert(q, c.clone());
        }
        Ok(Polynomial {
            nvars: self.nvars,
            degree,
            terms,
        })
    }

    /// The partial derivative `∂/∂x_i`.
    pub fn partial_derivative(&self, ring: &CoxRing, i: usize) -> Polynomial {
        let degree = ring.chow().sub(&self.degree, &ring.chow().ray_class(i));
        let mut p = Polynomial::zero(self.nvars, degree);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut q = m.clone();
            q.0[i] -= 1;
            p.add_term(q, c.times(&GaussianRational::from_int(e as i64)));
        }
        p
    }

    /// `x_i · ∂f/∂x_i` (same degree as `f`).
    pub fn euler_component(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars, self.degree.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                p.terms
                    .insert(m.clone(), c.times(&GaussianRational::from_int(e as i64)));
            }
        }
        p
    }

    /// Sparse coordinate vector in a graded basis of the same degree.
    ///
    /// # Errors
    /// [`Error::DegreeMismatch`] if a monomial is not in the basis.
    pub fn to_sparse(&self, basis: &GradedBasis) -> Result<SparseVec<GaussianRational>> {
        let mut v: SparseVec<GaussianRational> = self
            .terms
            .iter()
            .map(|(m, c)| {
                basis
                    .index_of(m)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::DegreeMismatch(format!("monomial {:?} not in the graded piece", m.0)))
            })
            .collect::<Result<_>>()?;
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    /// Rebuilds a polynomial from coordinates in a graded basis.
    pub fn from_sparse(ring: &CoxRing, basis: &GradedBasis, v: &[(usize, GaussianRational)]) -> Polynomial {
        let mut p = Polynomial::zero(ring.nvars(), basis.degree.clone());
        for (i, c) in v {
            p.add_term(basis.monomials[*i].clone(), c.clone());
        }
        p
    }

    /// The sum `Σ_i x_i^{k_i}`-type polynomial of a degree: for every
    /// variable, the monomial of that degree maximising the exponent of the
    /// variable is included when it is unique.
    pub fn fermat(ring: &CoxRing, degree: &DivisorClass) -> Polynomial {
        let basis = ring.monomials_of_degree(degree);
        let mut p = Polynomial::zero(ring.nvars(), degree.clone());
        for i in 0..ring.nvars() {
            let Some(best) = basis.monomials.iter().map(|m| m.0[i]).max() else {
                continue;
            };
            if best == 0 {
                continue;
            }
            let winners: Vec<&Monomial> = basis.monomials.iter().filter(|m| m.0[i] == best).collect();
            if winners.len() == 1 && !p.terms.contains_key(winners[0]) {
                p.terms.insert(winners[0].clone(), GaussianRational::one());
            }
        }
        p
    }

    /// A polynomial with independent uniformly random integer coefficients
    /// in `[-range, range]` on every monomial of the degree.
    pub fn random(ring: &CoxRing, degree: &DivisorClass, seed: u64, range: i64) -> Polynomial {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let basis = ring.monomials_of_degree(degree);
        let mut p = Polynomial::zero(ring.nvars(), degree.clone());
        for m in &basis.monomials {
            p.add_term(m.clone(), GaussianRational::from_int(rng.gen_range(-range..=range)));
        }
        p
    }
}

/// The restriction of `p` to the orbit closure `V(σ')`, as a polynomial in
/// the Cox ring of `Star(σ')`.
///
/// Terms containing a variable of `σ'` vanish. A surviving monomial `x^u`
/// becomes `∏_{γ'} x_{γ'}^{u_{k(γ')} · mult(σ')/mult(γ')}`; variables of
/// rays not adjacent to `σ'` are dropped.
///
/// # Errors
/// [`Error::NonIntegralExponent`] if a scaled exponent or the degree
/// representative is fractional.
pub fn restrict_to_star(ring: &CoxRing, star: &StarFan, star_ring: &CoxRing, p: &Polynomial) -> Result<Polynomial> {
    let deg_rep = restrict_divisor_to_star(ring.fan(), star, &p.degree().representative)?;
    let scaled = |j: usize, base: i64| -> Result<i64> {
        let (num, den) = star.scale[j];
        if (base * num) % den != 0 {
            Err(Error::NonIntegralExponent)
        } else {
            Ok(base * num / den)
        }
    };
    let degree = star_ring.class(&deg_rep)?;
    let mut out = Polynomial::zero(star_ring.nvars(), degree);
    for (mono, c) in p.terms() {
        if star.cone.iter().any(|&k| mono.0[k] != 0) {
            continue;
        }
        let exps: Vec<i64> = star
            .ray_map
            .iter()
            .enumerate()
            .map(|(j, &k)| scaled(j, mono.0[k] as i64))
            .collect::<Result<_>>()?;
        out.add_term(Monomial::from_i64(&exps).ok_or(Error::NonIntegralExponent)?, c.clone());
    }
    debug_assert!(out.terms.keys().all(|t| star_ring.degree_of(t) == out.degree));
    Ok(out)
}

/// `G^σ(f) = x_s f_s · x_t f_t · ∏_{ρ_k ⊄ σ} x_k / (mult(σ) ∏_{ρ_k ⊂ σ} x_k)`,
/// where `s, t` are the boundary rays of the two-dimensional cone `σ` and
/// `f_i = ∂f/∂x_i`. Its degree is `2β + β₀ − 2β₁^σ`.
///
/// # Errors
/// [`Error::NotDivisible`] if the quotient is not a polynomial.
pub fn special_polynomial_g(ring: &CoxRing, f: &Polynomial, sigma: &SigmaOrdering) -> Result<Polynomial> {
    let n = ring.nvars();
    let (s, t) = sigma.boundary();
    let xs_fs = f.euler_component(s);
    let xt_ft = f.euler_component(t);
    let outside = Monomial::product_of(n, (0..n).filter(|k| !sigma.rays.contains(k)));
    let inside = Monomial::product_of(n, sigma.rays.iter().copied());
    let num = xs_fs.mul(ring, &xt_ft).mul_monomial(ring, &outside);
    let q = num.div_monomial(ring, &inside)?;
    Ok(q.scale(&GaussianRational::real(rat(sigma.cone_mult)).inv()))
}

/// `H^σ(f) = √−1 Σ_{m ∈ σ^⊥ ∩ Δ ∩ M} a_m x^{D(m)} / ∏_{ρ_k ⊂ σ} x_k` for an
/// anticanonical `f = Σ a_m x^{D(m)}`. The selected terms are exactly those
/// whose exponents on the boundary rays of `σ` are one. Degree `β₀ − β₁^σ`.
///
/// # Errors
/// [`Error::NotAnticanonical`] unless `deg f = β₀`; [`Error::NotDivisible`]
/// if a selected term fails to be divisible.
pub fn special_polynomial_h(ring: &CoxRing, f: &Polynomial, sigma: &SigmaOrdering) -> Result<Polynomial> {
    let n = ring.nvars();
    if *f.degree() != ring.chow().anticanonical() {
        return Err(Error::NotAnticanonical);
    }
    let (s, t) = sigma.boundary();
    let mut sel = Polynomial::zero(n, f.degree().clone());
    for (m, c) in f.terms() {
        if m.0[s] == 1 && m.0[t] == 1 {
            sel.add_term(m.clone(), c.times(&GaussianRational::i()));
        }
    }
    let inside = Monomial::product_of(n, sigma.rays.iter().copied());
    sel.div_monomial(ring, &inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::*;

    #[test]
    fn monomials_of_anticanonical_plane_cubics() {
        let r = CoxRing::new(projective_space(2)).unwrap();
        let b = r.monomials_of_degree(&r.chow().anticanonical());
        assert_eq!(b.len(), 10);
        // Decreasing lex: x0^3 first.
        assert_eq!(b.monomials[0], Monomial(vec![3, 0, 0]));
    }

    #[test]
    fn quintic_degree_has_126_monomials() {
        let r = CoxRing::new(projective_space(4)).unwrap();
        assert_eq!(r.monomials_of_degree(&r.chow().anticanonical()).len(), 126);
    }

    #[test]
    fn fermat_generator_on_projective_space() {
        let r = CoxRing::new(projective_space(3)).unwrap();
        let f = Polynomial::fermat(&r, &r.chow().anticanonical());
        assert_eq!(f.num_terms(), 4);
        assert!(f.terms().keys().all(|m| m.0.iter().filter(|&&e| e == 4).count() == 1));
    }

    #[test]
    fn fermat_generator_on_resolved_octic() {
        let r = CoxRing::new(resolved_octic()).unwrap();
        let f = Polynomial::fermat(&r, &r.chow().anticanonical());
        let mut t: Vec<Vec<u32>> = f.terms().keys().map(|m| m.0.clone()).collect();
        t.sort();
        assert_eq!(
            t,
            vec![
                vec![0, 0, 0, 0, 8, 4],
                vec![0, 0, 0, 4, 0, 0],
                vec![0, 0, 4, 0, 0, 0],
                vec![0, 4, 0, 0, 0, 0],
                vec![8, 0, 0, 0, 0, 4],
            ]
        );
    }

    #[test]
    fn derivative_lowers_degree() {
        let r = CoxRing::new(projective_space(2)).unwrap();
        let f = Polynomial::fermat(&r, &r.chow().anticanonical());
        let d = f.partial_derivative(&r, 0);
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.coeff(&Monomial(vec![2, 0, 0])), GaussianRational::from_int(3));
        assert_eq!(*d.degree(), r.chow().scale(2, &r.chow().ray_class(0)));
    }

    #[test]
    fn inhomogeneous_terms_are_rejected() {
        let r = CoxRing::new(projective_space(2)).unwrap();
        let res = Polynomial::from_terms(
            &r,
            r.chow().anticanonical(),
            [(Monomial(vec![1, 0, 0]), GaussianRational::one())],
        );
        assert!(matches!(res, Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn restriction_to_coordinate_plane() {
        let r = CoxRing::new(projective_space(3)).unwrap();
        let f = Polynomial::fermat(&r, &r.chow().anticanonical());
        let star = r.fan().star_fan(&[0]).unwrap();
        let sr = CoxRing::new(star.fan.clone()).unwrap();
        let g = restrict_to_star(&r, &star, &sr, &f).unwrap();
        assert_eq!(g.num_terms(), 3);
        assert_eq!(*g.degree(), sr.chow().scale(4, &sr.chow().ray_class(0)));
    }

    #[test]
    fn g_and_h_on_resolved_octic() {
        let r = CoxRing::new(resolved_octic()).unwrap();
        let f = Polynomial::fermat(&r, &r.chow().anticanonical());
        let o = r.fan().order_rays_in_2cone(0, 4).unwrap();
        let g = special_polynomial_g(&r, &f, &o).unwrap();
        assert_eq!(g.num_terms(), 1);
        let (m, c) = g.terms().iter().next().unwrap();
        assert_eq!(m.0, vec![7, 1, 1, 1, 7, 7]);
        assert_eq!(*c, GaussianRational::from_int(32));
        let beta = r.chow().anticanonical();
        let b1 = r.sum_of_ray_classes(&o.rays);
        let expect = r.chow().combine(&[(3, &beta), (-2, &b1)]);
        assert_eq!(*g.degree(), expect);
        // Fermat terms never have exponent one on both boundary variables.
        assert!(special_polynomial_h(&r, &f, &o).unwrap().is_zero());
    }
}
