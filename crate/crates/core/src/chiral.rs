//! The polynomial and σ-sectors of the chiral ring `⊕_p H^p(X, ∧^p T_X)` of
//! a semiample anticanonical regular hypersurface, with explicit structure
//! constants.
//!
//! Grade `p` has the basis
//!
//! * `γ_A` for the quotient-basis monomials `A` of `R₁(f)_{pβ}`, and
//! * `γ^i_A` for every two-dimensional cone `σ` of `Σ_X`, every ray `ρ_i`
//!   of `Σ` in the interior of `σ`, and every quotient-basis monomial `A` of
//!   `R^σ₁(f)_{(p−1)β+β₁^σ}`.
//!
//! Products follow the product theorem for these classes:
//!
//! * (i) `γ_A γ_B = γ_{AB}`, (ii) `γ_A γ^i_B = γ^i_{AB}`;
//! * (iii) `γ^i_A γ^j_B = 0` for `i ≠ j` unless `ρ_i, ρ_j` span a cone of `Σ`
//!   inside one cone of `Σ_X`; classes from different cones of `Σ_X`
//!   multiply to zero;
//! * (iv) `γ^i_A γ^i_B = mult(σ_k+σ_{k+1}) / (mult σ_k · mult σ_{k+1}) ·
//!   γ_{μ⁻¹(AB G^σ(f))}` and (v) `γ^i_A γ^j_B = −γ_{μ⁻¹(AB G^σ(f))} / mult(σ')`
//!   when the product lands in the top grade `d − 1`;
//! * (vi), (vii): closed forms for same-cone triple products involving
//!   `H^σ(f) G^σ(f)`.
//!
//! Here `ρ_i = ρ_{l_k}` in the ordering `l_0, …, l_{n+1}` of the rays of `σ`,
//! `σ_k = cone(l_{k−1}, l_k)`, `σ_{k+1} = cone(l_k, l_{k+1})`. σ-products
//! whose result is not in the top grade are not given by a formula; they
//! are reported as undetermined, and can be recovered from triple products
//! through the nondegenerate pairing.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::cohomology::{sigma_x_data, SigmaCone};
use crate::coxring::{special_polynomial_g, special_polynomial_h, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::jacobian::{JacobianRing, QuotientPiece};
use crate::lattice::rref;
use crate::linalg::SparseVec;
use crate::scalar::{ratio, GaussianRational, Scalar};

/// An element of the chiral ring: sparse coordinates in the global basis.
pub type Element = SparseVec<GaussianRational>;

/// Which sector a basis vector belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// `γ_A`, `A ∈ R₁(f)_{pβ}`.
    Gamma,
    /// `γ^i_A`, `A ∈ R^σ₁(f)_{(p−1)β+β₁^σ}`; `sigma` indexes
    /// [`ChiralRing::sigma_cones`], `ray` is `i`.
    GammaSigma { sigma: usize, ray: usize },
}

/// A basis vector of the chiral ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub grade: usize,
    pub tag: BasisTag,
    /// Quotient-basis monomial representing the class.
    pub monomial: Monomial,
}

/// The value of a product of two basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub enum Product {
    Determined(Element),
    /// Not given by the product rules (a σ-product below the top grade).
    Undetermined,
}

/// One structure constant record: `u · v = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductEntry {
    pub u: usize,
    pub v: usize,
    pub value: Element,
    /// Whether the value was recovered through the pairing rather than given
    /// by a product rule.
    pub inferred: bool,
}

/// All products `u · v`, `u ≤ v`, with `grade(u) + grade(v) ≤ d − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub entries: Vec<ProductEntry>,
    /// Pairs left undetermined.
    pub undetermined: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
struct Block {
    grade: usize,
    tag: BasisTag,
    start: usize,
    piece: Arc<QuotientPiece>,
}

/// The chiral ring of `f = 0` for anticanonical `f`.
#[derive(Debug)]
pub struct ChiralRing {
    jr: Arc<JacobianRing>,
    d: usize,
    sigma_cones: Vec<SigmaCone>,
    g_sigma: Vec<Polynomial>,
    h_sigma: Vec<Polynomial>,
    blocks: Vec<Block>,
    basis: Vec<BasisVector>,
    block_of: Vec<usize>,
    local_index: Vec<usize>,
    grade_start: Vec<usize>,
    cache: Mutex<HashMap<(usize, usize), Product>>,
}

impl ChiralRing {
    /// Builds the basis.
    ///
    /// # Errors
    /// [`Error::InvalidInput`] for `f = 0`; [`Error::NotAnticanonical`]
    /// unless `deg f = β₀`; [`Error::NotBig`],
    /// [`Error::NotSemiample`], [`Error::NotCartier`] from the census of
    /// `Σ_X`; [`Error::NotDivisible`] if `G^σ(f)` fails to be a polynomial;
    /// [`Error::DimensionMismatch`] if the top grade is not one-dimensional.
    pub fn new(jr: Arc<JacobianRing>) -> Result<Self> {
        if jr.polynomial().is_zero() {
            return Err(Error::InvalidInput(
                "the zero polynomial defines no hypersurface".into(),
            ));
        }
        let ring = jr.ring().clone();
        let chow = ring.chow();
        let beta = jr.beta().clone();
        if beta != chow.anticanonical() {
            return Err(Error::NotAnticanonical);
        }
        let fan = ring.fan();
        let d = fan.dim();
        let sx = sigma_x_data(fan, &beta.representative)?;
        let sigma_cones: Vec<SigmaCone> = sx.nontrivial().cloned().collect();
        let mut g_sigma = Vec::new();
        let mut h_sigma = Vec::new();
        for sc in &sigma_cones {
            g_sigma.push(special_polynomial_g(&ring, jr.polynomial(), &sc.ordering)?);
            h_sigma.push(special_polynomial_h(&ring, jr.polynomial(), &sc.ordering)?);
        }
        let mut blocks = Vec::new();
        let mut basis = Vec::new();
        let mut block_of = Vec::new();
        let mut local_index = Vec::new();
        let mut grade_start = Vec::with_capacity(d + 1);
        let mut push = |grade: usize, tag: BasisTag, piece: Arc<QuotientPiece>, basis: &mut Vec<BasisVector>| {
            let b = blocks.len();
            for (j, m) in piece.basis_monomials().into_iter().enumerate() {
                basis.push(BasisVector {
                    grade,
                    tag: tag.clone(),
                    monomial: m.clone(),
                });
                block_of.push(b);
                local_index.push(j);
            }
            blocks.push(Block {
                grade,
                tag,
                start: basis.len() - piece.dim(),
                piece,
            });
        };
        for p in 0..d {
            grade_start.push(basis.len());
            let gamma = chow.scale(p as i64, &beta);
            push(p, BasisTag::Gamma, jr.r1(&gamma), &mut basis);
            for (s, sc) in sigma_cones.iter().enumerate() {
                let rays = sc.rays();
                let b1 = ring.sum_of_ray_classes(&rays);
                let deg = chow.combine(&[(p as i64 - 1, &beta), (1, &b1)]);
                let piece = jr.r1_sigma(&rays, &deg);
                for &i in sc.interior() {
                    push(p, BasisTag::GammaSigma { sigma: s, ray: i }, piece.clone(), &mut basis);
                }
            }
        }
        grade_start.push(basis.len());
        let cr = ChiralRing {
            jr,
            d,
            sigma_cones,
            g_sigma,
            h_sigma,
            blocks,
            basis,
            block_of,
            local_index,
            grade_start,
            cache: Mutex::new(HashMap::new()),
        };
        let top = cr.top_block().piece.dim();
        if top != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: top,
            });
        }
        Ok(cr)
    }

    pub fn jacobian(&self) -> &Arc<JacobianRing> {
        &self.jr
    }

    /// Dimension `d` of the toric variety; grades run over `0..d`.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// The cones of `Σ_X` with interior rays, in census order.
    pub fn sigma_cones(&self) -> &[SigmaCone] {
        &self.sigma_cones
    }

    /// `G^σ(f)` for each σ-cone.
    pub fn g_polynomials(&self) -> &[Polynomial] {
        &self.g_sigma
    }

    /// `H^σ(f)` for each σ-cone.
    pub fn h_polynomials(&self) -> &[Polynomial] {
        &self.h_sigma
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// Global indices of grade `p`.
    pub fn grade_range(&self, p: usize) -> std::ops::Range<usize> {
        self.grade_start[p]..self.grade_start[p + 1]
    }

    /// Dimension of each grade.
    pub fn grade_dims(&self) -> Vec<usize> {
        (0..self.d).map(|p| self.grade_range(p).len()).collect()
    }

    /// Dimension of the polynomial (`γ`) and σ (`γ^i`) parts of grade `p`.
    pub fn grade_split(&self, p: usize) -> (usize, usize) {
        let poly = self
            .grade_range(p)
            .filter(|&u| self.basis[u].tag == BasisTag::Gamma)
            .count();
        (poly, self.grade_range(p).len() - poly)
    }

    /// The unit `γ_1`.
    pub fn unit(&self) -> usize {
        self.grade_start[0]
    }

    /// A readable label for a basis vector.
    pub fn label(&self, u: usize) -> String {
        let b = &self.basis[u];
        match &b.tag {
            BasisTag::Gamma => format!("g{}:gamma:{:?}", b.grade, b.monomial.0),
            BasisTag::GammaSigma { sigma, ray } => {
                format!(
                    "g{}:sigma{:?}/ray{}:{:?}",
                    b.grade,
                    self.sigma_cones[*sigma].rays(),
                    ray,
                    b.monomial.0
                )
            }
        }
    }

    fn top_block(&self) -> &Block {
        self.find_block(self.d - 1, &BasisTag::Gamma)
            .expect("every grade has a polynomial block")
    }

    fn find_block(&self, grade: usize, tag: &BasisTag) -> Option<&Block> {
        self.blocks.iter().find(|b| b.grade == grade && b.tag == *tag)
    }

    fn to_global(block: &Block, coords: &[GaussianRational]) -> Element {
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (block.start + j, c.clone()))
            .collect()
    }

    /// Whether two interior rays of the same σ-cone span a cone of `Σ`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let fan = self.jr.ring().fan();
        let mut c = vec![i, j];
        c.sort_unstable();
        fan.is_cone(&c)
    }

    /// Position `k` of ray `i` in the ordering of its σ-cone.
    fn position(&self, sigma: usize, i: usize) -> usize {
        self.sigma_cones[sigma]
            .ordering
            .position(i)
            .expect("interior ray of the cone")
    }

    fn mu_inverse_top(&self, p: &Polynomial) -> Result<GaussianRational> {
        let c = self.jr.mu_inverse(p)?;
        Ok(c.into_iter().next().unwrap_or_else(GaussianRational::zero))
    }

    /// `u · v` for basis vectors `u`, `v`. Products beyond the top grade are
    /// zero.
    ///
    /// # Errors
    /// Propagates failures of `μ⁻¹` (non-regular input).
    pub fn product(&self, u: usize, v: usize) -> Result<Product> {
        let key = (u.min(v), u.max(v));
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let value = self.compute_product(key.0, key.1)?;
        self.cache.lock().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }

    fn compute_product(&self, u: usize, v: usize) -> Result<Product> {
        let ring = self.jr.ring();
        let (bu, bv) = (&self.basis[u], &self.basis[v]);
        let g = bu.grade + bv.grade;
        if g >= self.d {
            return Ok(Product::Determined(Vec::new()));
        }
        let ab = Polynomial::monomial(ring, bu.monomial.mul(&bv.monomial));
        match (&bu.tag, &bv.tag) {
            (BasisTag::Gamma, BasisTag::Gamma) => {
                let block = self.find_block(g, &BasisTag::Gamma).expect("polynomial block");
                Ok(Product::Determined(Self::to_global(
                    block,
                    &block.piece.normal_form(&ab)?,
                )))
            }
            (BasisTag::Gamma, t @ BasisTag::GammaSigma { .. }) | (t @ BasisTag::GammaSigma { .. }, BasisTag::Gamma) => {
                let block = self.find_block(g, t).expect("σ block exists in every grade");
                Ok(Product::Determined(Self::to_global(
                    block,
                    &block.piece.normal_form(&ab)?,
                )))
            }
            (BasisTag::GammaSigma { sigma: s, ray: i }, BasisTag::GammaSigma { sigma: t, ray: j }) => {
                if s != t || (i != j && !self.adjacent(*i, *j)) {
                    return Ok(Product::Determined(Vec::new()));
                }
                if g != self.d - 1 {
                    return Ok(Product::Undetermined);
                }
                let coef = self.pair_coefficient(*s, *i, *j);
                let val = self.mu_inverse_top(&ab.mul(ring, &self.g_sigma[*s]))?.times(&coef);
                let top = self.top_block();
                Ok(Product::Determined(Self::to_global(top, &[val])))
            }
        }
    }

    /// Rule (iv) (`i = j`) or (v) (`i ≠ j` adjacent) coefficient.
    fn pair_coefficient(&self, sigma: usize, i: usize, j: usize) -> GaussianRational {
        let o = &self.sigma_cones[sigma].ordering;
        if i == j {
            let k = self.position(sigma, i);
            let (a, b) = (o.mults[k - 1], o.mults[k]);
            GaussianRational::real(ratio(o.skip_mults[k - 1], a * b))
        } else {
            let fan = self.jr.ring().fan();
            GaussianRational::real(ratio(-1, fan.mult(&[i, j])))
        }
    }

    /// The trace of an element: its coordinate on the one-dimensional top
    /// piece `R₁(f)_{(d−1)β}`.
    pub fn trace(&self, e: &Element) -> GaussianRational {
        let start = self.top_block().start;
        e.iter()
            .find(|(i, _)| *i == start)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussianRational::zero)
    }

    /// `trace(u · v)`; always determined.
    ///
    /// # Errors
    /// Propagates failures of `μ⁻¹`.
    pub fn pairing(&self, u: usize, v: usize) -> Result<GaussianRational> {
        match self.product(u, v)? {
            Product::Determined(e) => Ok(self.trace(&e)),
            Product::Undetermined => unreachable!("products into the top grade are always determined"),
        }
    }

    /// The matrix `trace(u · v)`, `u` in grade `p`, `v` in grade `d − 1 − p`.
    ///
    /// # Errors
    /// [`Error::InvalidInput`] if `p ≥ d`; propagates failures of `μ⁻¹`.
    pub fn pairing_matrix(&self, p: usize) -> Result<Vec<Vec<GaussianRational>>> {
        if p >= self.d {
            return Err(Error::InvalidInput(format!("grade {p} out of range")));
        }
        self.grade_range(p)
            .map(|u| self.grade_range(self.d - 1 - p).map(|v| self.pairing(u, v)).collect())
            .collect()
    }

    fn trace_of_product(&self, e: &Element, w: usize) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (x, c) in e {
            acc = acc.plus(&c.times(&self.pairing(*x, w)?));
        }
        Ok(acc)
    }

    /// The triple product `trace(u · v · w)` for grades summing to `d − 1`.
    ///
    /// Evaluated through whichever pairwise product is determined; for
    /// same-ray σ-triples the closed forms (vi)/(vii) are used.
    ///
    /// # Errors
    /// [`Error::DegreeMismatch`] if the grades do not sum to `d − 1`;
    /// [`Error::InvalidInput`] for a triple outside the theorem's cases.
    pub fn triple(&self, u: usize, v: usize, w: usize) -> Result<GaussianRational> {
        let grades = self.basis[u].grade + self.basis[v].grade + self.basis[w].grade;
        if grades != self.d - 1 {
            return Err(Error::DegreeMismatch(format!(
                "triple product of total grade {grades}, expected {}",
                self.d - 1
            )));
        }
        for (a, b, c) in [(u, v, w), (u, w, v), (v, w, u)] {
            if let Product::Determined(e) = self.product(a, b)? {
                return self.trace_of_product(&e, c);
            }
        }
        self.closed_form_triple(u, v, w)
    }

    fn closed_form_triple(&self, u: usize, v: usize, w: usize) -> Result<GaussianRational> {
        let tags: Vec<(usize, usize)> = [u, v, w]
            .iter()
            .map(|&x| match self.basis[x].tag {
                BasisTag::GammaSigma { sigma, ray } => Ok((sigma, ray)),
                BasisTag::Gamma => Err(Error::InvalidInput(
                    "polynomial factor in an undetermined triple".into(),
                )),
            })
            .collect::<Result<_>>()?;
        let s = tags[0].0;
        let rays: Vec<usize> = tags.iter().map(|t| t.1).collect();
        // The repeated ray ρ_i and the remaining one.
        let (i, other) = if rays[0] == rays[1] {
            (rays[0], rays[2])
        } else if rays[0] == rays[2] {
            (rays[0], rays[1])
        } else if rays[1] == rays[2] {
            (rays[1], rays[0])
        } else {
            return Err(Error::InvalidInput("triple of three distinct σ-rays".into()));
        };
        let o = &self.sigma_cones[s].ordering;
        let k = self.position(s, i);
        let coef = if other == i {
            let (a, b) = (o.mults[k - 1], o.mults[k]);
            GaussianRational::real(ratio((a - b) * o.skip_mults[k - 1], (a * b) * (a * b)))
        } else if o.rays.get(k + 1) == Some(&other) {
            let m = o.mults[k];
            GaussianRational::real(ratio(-1, m * m))
        } else if o.rays[k - 1] == other {
            let m = o.mults[k - 1];
            GaussianRational::real(ratio(1, m * m))
        } else {
            return Err(Error::InvalidInput("σ-rays of the triple are not adjacent".into()));
        };
        if coef.is_zero() {
            return Ok(coef);
        }
        let ring = self.jr.ring();
        let abc = self.basis[u]
            .monomial
            .mul(&self.basis[v].monomial)
            .mul(&self.basis[w].monomial);
        let p = Polynomial::monomial(ring, abc)
            .mul(ring, &self.h_sigma[s])
            .mul(ring, &self.g_sigma[s]);
        Ok(self.mu_inverse_top(&p)?.times(&coef))
    }

    /// All structure constants. With `complete`, undetermined products are
    /// recovered by solving `Σ_w c_w trace(w · z) = trace(u · v · z)` with
    /// the nondegenerate pairing.
    ///
    /// # Errors
    /// [`Error::NoSolution`] if a needed pairing matrix is singular;
    /// propagates failures of `μ⁻¹`.
    pub fn structure_constants(&self, complete: bool) -> Result<StructureConstants> {
        let mut entries = Vec::new();
        let mut undetermined = Vec::new();
        let mut inverses: HashMap<usize, Vec<Vec<GaussianRational>>> = HashMap::new();
        for u in 0..self.basis.len() {
            for v in u..self.basis.len() {
                let g = self.basis[u].grade + self.basis[v].grade;
                if g >= self.d {
                    continue;
                }
                match self.product(u, v)? {
                    Product::Determined(value) => entries.push(ProductEntry {
                        u,
                        v,
                        value,
                        inferred: false,
                    }),
                    Product::Undetermined if complete => {
                        if let std::collections::hash_map::Entry::Vacant(e) = inverses.entry(g) {
                            e.insert(self.transposed_pairing_inverse(g)?);
                        }
                        let value = self.solve_from_pairing(u, v, &inverses[&g])?;
                        entries.push(ProductEntry {
                            u,
                            v,
                            value,
                            inferred: true,
                        });
                    }
                    Product::Undetermined => undetermined.push((u, v)),
                }
            }
        }
        Ok(StructureConstants { entries, undetermined })
    }

    /// The product `u · v`, recovering it from triple products when no rule
    /// gives it directly.
    ///
    /// # Errors
    /// As for [`structure_constants`](Self::structure_constants).
    pub fn product_completed(&self, u: usize, v: usize) -> Result<Element> {
        match self.product(u, v)? {
            Product::Determined(e) => Ok(e),
            Product::Undetermined => {
                let g = self.basis[u].grade + self.basis[v].grade;
                let inv = self.transposed_pairing_inverse(g)?;
                self.solve_from_pairing(u, v, &inv)
            }
        }
    }

    fn transposed_pairing_inverse(&self, g: usize) -> Result<Vec<Vec<GaussianRational>>> {
        let p = self.pairing_matrix(g)?;
        let n = p.len();
        if p.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.first().map_or(0, Vec::len),
            });
        }
        // Rows of [Pᵀ | I].
        let aug: Vec<Vec<GaussianRational>> = (0..n)
            .map(|z| {
                let mut row: Vec<GaussianRational> = (0..n).map(|w| p[w][z].clone()).collect();
                row.extend((0..n).map(|j| {
                    if j == z {
                        GaussianRational::one()
                    } else {
                        GaussianRational::zero()
                    }
                }));
                row
            })
            .collect();
        let (red, pivots) = rref(&aug, 2 * n);
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::NoSolution);
        }
        Ok(red.into_iter().take(n).map(|r| r[n..].to_vec()).collect())
    }

    fn solve_from_pairing(&self, u: usize, v: usize, inv: &[Vec<GaussianRational>]) -> Result<Element> {
        let g = self.basis[u].grade + self.basis[v].grade;
        let partner = self.grade_range(self.d - 1 - g);
        let t: Vec<GaussianRational> = partner.map(|z| self.triple(u, v, z)).collect::<Result<_>>()?;
        let start = self.grade_start[g];
        let mut out = Vec::new();
        for (w, row) in inv.iter().enumerate() {
            let c = row
                .iter()
                .zip(&t)
                .fold(GaussianRational::zero(), |acc, (a, b)| acc.plus(&a.times(b)));
            if !c.is_zero() {
                out.push((start + w, c));
            }
        }
        Ok(out)
    }

    /// Local index of a basis vector inside its quotient piece.
    pub fn local_index(&self, u: usize) -> usize {
        self.local_index[u]
    }

    /// Index of the block a basis vector lies in (blocks are the polynomial
    /// part and the per-ray σ parts of each grade).
    pub fn block_index(&self, u: usize) -> usize {
        self.block_of[u]
    }
}

/// Multiplies two elements bilinearly, returning `None` when some needed
/// basis product is undetermined.
///
/// # Errors
/// Propagates failures of `μ⁻¹`.
pub fn multiply(cr: &ChiralRing, a: &Element, b: &Element) -> Result<Option<Element>> {
    let mut acc: HashMap<usize, GaussianRational> = HashMap::new();
    for (u, x) in a {
        for (v, y) in b {
            match cr.product(*u, *v)? {
                Product::Determined(e) => {
                    let xy = x.times(y);
                    for (w, c) in e {
                        let entry = acc.entry(w).or_insert_with(GaussianRational::zero);
                        *entry = entry.plus(&c.times(&xy));
                    }
                }
                Product::Undetermined => return Ok(None),
            }
        }
    }
    let mut out: Element = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|(i, _)| *i);
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxring::CoxRing;
    use crate::fan::examples::*;
    use crate::fan::Fan;

    fn chiral(fan: Fan) -> ChiralRing {
        let ring = Arc::new(CoxRing::new(fan).unwrap());
        let f = Polynomial::fermat(&ring, &ring.chow().anticanonical());
        ChiralRing::new(Arc::new(JacobianRing::new(ring, f))).unwrap()
    }

    #[test]
    fn quintic_grades_and_unit() {
        let cr = chiral(projective_space(4));
        assert_eq!(cr.grade_dims(), vec![1, 101, 101, 1]);
        let one = cr.unit();
        assert_eq!(cr.basis()[one].monomial, Monomial::one(5));
        for u in [1, 50, 101, 150, 202] {
            assert_eq!(
                cr.product(one, u).unwrap(),
                Product::Determined(vec![(u, GaussianRational::one())])
            );
        }
    }

    #[test]
    fn quintic_yukawa_of_the_product_class() {
        let cr = chiral(projective_space(4));
        let ring = cr.jacobian().ring().clone();
        let g1 = cr.grade_range(1);
        let prod = Monomial(vec![1; 5]);
        let u = g1
            .clone()
            .find(|&u| cr.basis()[u].monomial == prod)
            .expect("x1⋯x5 is a basis monomial");
        let y = cr.triple(u, u, u).unwrap();
        assert!(!y.is_zero());
        // Oracle: (x1⋯x5)^3 is the socle monomial of R₁_{15} itself.
        let top = cr.jacobian().r1(&ring.chow().scale(3, cr.jacobian().beta()));
        let direct = top
            .normal_form(&Polynomial::monomial(&ring, Monomial(vec![3; 5])))
            .unwrap();
        assert_eq!(direct[0], y);
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let ring = Arc::new(CoxRing::new(projective_space(2)).unwrap());
        let f = Polynomial::fermat(&ring, &ring.chow().scale(2, &ring.chow().anticanonical()));
        assert!(matches!(
            ChiralRing::new(Arc::new(JacobianRing::new(ring, f))),
            Err(Error::NotAnticanonical)
        ));
    }

    #[test]
    fn resolved_k3_has_sigma_classes() {
        let cr = chiral(resolved_p1122());
        assert_eq!(cr.grade_dims(), vec![1, 18, 1]);
        assert_eq!(cr.grade_split(1), (16, 2));
        let sc = cr.structure_constants(false).unwrap();
        assert!(sc.undetermined.is_empty());
        let p = cr.pairing_matrix(1).unwrap();
        let (_, piv) = rref(&p, p.len());
        assert_eq!(piv.len(), 18);
    }

    #[test]
    fn octic_sigma_products() {
        let cr = chiral(resolved_octic());
        assert_eq!(cr.grade_dims()[0], 1);
        assert_eq!(cr.grade_split(1).1, 3);
        let sig: Vec<usize> = cr
            .grade_range(1)
            .filter(|&u| cr.basis()[u].tag != BasisTag::Gamma)
            .collect();
        assert_eq!(cr.product(sig[0], sig[1]).unwrap(), Product::Undetermined);
        // Same-ray triples vanish: every multiplicity inside σ is one.
        for &a in &sig {
            for &b in &sig {
                for &c in &sig {
                    assert!(cr.triple(a, b, c).unwrap().is_zero());
                }
            }
        }
    }
}
