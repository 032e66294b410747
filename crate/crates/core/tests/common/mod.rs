//! Shared oracles and invariant checks for the integration tests.
//!
//! The oracles here deliberately avoid the library's own elimination and
//! graded-piece machinery: they enumerate monomials directly and reduce
//! dense rational matrices with a textbook Gaussian elimination.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_chiral::chiral::{multiply, BasisTag, ChiralRing, Product};
use toric_chiral::coxring::{CoxRing, Monomial, Polynomial};
use toric_chiral::divisors::{is_semiample, semiample_quotient};
use toric_chiral::fan::{examples, Fan};
use toric_chiral::jacobian::JacobianRing;
use toric_chiral::lattice::rref;
use toric_chiral::scalar::GaussianRational;

/// Outcome of an invariant check: number of individual assertions made.
pub type Check = Result<usize, String>;

// ---------------------------------------------------------------------------
// Independent dense-rank oracle
// ---------------------------------------------------------------------------

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][col].clone();
        let pivot: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for (c, pv) in pivot.iter().enumerate().skip(col) {
                    if !pv.is_zero() {
                        rows[r][c] = &rows[r][c] - &factor * pv;
                    }
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// All exponent vectors of `n` variables with total degree `deg`, in
/// lexicographic order.
pub fn homogeneous_monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in homogeneous_monomials(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A homogeneous polynomial on projective space as `(exponents, integer
/// coefficient)` pairs.
pub type PlainPoly = Vec<(Vec<u32>, i64)>;

/// The Fermat polynomial `Σ x_i^deg` in `n` variables.
pub fn plain_fermat(n: usize, deg: u32) -> PlainPoly {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = deg;
            (e, 1)
        })
        .collect()
}

/// Random integer coefficients in `[-range, range]` on every monomial.
pub fn plain_random(n: usize, deg: u32, seed: u64, range: i64) -> PlainPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    homogeneous_monomials(n, deg)
        .into_iter()
        .map(|m| (m, rng.gen_range(-range..=range)))
        .collect()
}

/// `dim (C[x_1..x_n] / (∂f/∂x_i))_k`, computed from the dense matrix whose
/// rows are `x^a · ∂f/∂x_i` in the monomial basis of degree `k`.
pub fn jacobian_quotient_dim(n: usize, deg: u32, f: &PlainPoly, k: u32) -> usize {
    let cols = homogeneous_monomials(n, k);
    let index: std::collections::HashMap<Vec<u32>, usize> =
        cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    if k + 1 < deg {
        return cols.len();
    }
    let shifts = homogeneous_monomials(n, k + 1 - deg);
    let mut rows = Vec::new();
    for i in 0..n {
        for a in &shifts {
            let mut row = vec![BigRational::zero(); cols.len()];
            for (e, c) in f {
                if e[i] == 0 || *c == 0 {
                    continue;
                }
                let mut m: Vec<u32> = e.iter().zip(a).map(|(x, y)| x + y).collect();
                m[i] -= 1;
                row[index[&m]] += BigRational::from_integer(BigInt::from(c * e[i] as i64));
            }
            rows.push(row);
        }
    }
    cols.len() - dense_rank(rows)
}

/// Converts a plain polynomial to the library's type.
pub fn to_polynomial(ring: &CoxRing, f: &PlainPoly) -> Polynomial {
    let deg: u32 = f[0].0.iter().sum();
    let degree = ring.chow().scale(deg as i64, &ring.chow().ray_class(0));
    Polynomial::from_terms(
        ring,
        degree,
        f.iter()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (Monomial(e.clone()), GaussianRational::from_int(*c))),
    )
    .expect("homogeneous")
}

// ---------------------------------------------------------------------------
// Example constructors
// ---------------------------------------------------------------------------

/// Jacobian ring of the anticanonical Fermat-type polynomial on `fan`.
pub fn fermat_jacobian(fan: Fan) -> Arc<JacobianRing> {
    let ring = Arc::new(CoxRing::new(fan).expect("complete simplicial"));
    let f = Polynomial::fermat(&ring, &ring.chow().anticanonical());
    Arc::new(JacobianRing::new(ring, f))
}

pub fn fermat_chiral(fan: Fan) -> ChiralRing {
    ChiralRing::new(fermat_jacobian(fan)).expect("chiral ring")
}

/// Anticanonical polynomial on a product of projective lines whose
/// variable pairs are `pairs`: the `2^n` "corner" monomials
/// `∏ x_{i,ε_i}^2` with distinct prime coefficients, plus the product of
/// all variables. Sparse, so exact elimination stays cheap; regularity is
/// certified in the property tests.
pub fn corner_jacobian(fan: Fan, pairs: &[(usize, usize)]) -> Arc<JacobianRing> {
    let ring = Arc::new(CoxRing::new(fan).expect("complete simplicial"));
    let n = ring.nvars();
    let coeffs = [1, 2, 3, 5, 7, 11, 13, 17];
    let mut terms = Vec::new();
    for eps in 0..(1usize << pairs.len()) {
        let mut e = vec![0u32; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if eps >> i & 1 == 0 {
                e[a] = 2;
            } else {
                e[b] = 2;
            }
        }
        terms.push((Monomial(e), GaussianRational::from_int(coeffs[eps])));
    }
    terms.push((Monomial(vec![1; n]), GaussianRational::one()));
    let f = Polynomial::from_terms(&ring, ring.chow().anticanonical(), terms).expect("anticanonical");
    Arc::new(JacobianRing::new(ring, f))
}

/// Curve in `P^1 × P^1` (rays `(1,0), (0,1), (−1,0), (0,−1)`).
pub fn curve_in_p1xp1() -> Arc<JacobianRing> {
    corner_jacobian(examples::p1_times_p1(), &[(0, 2), (1, 3)])
}

/// K3 surface in `(P^1)^3`.
pub fn k3_in_p1_cubed() -> Arc<JacobianRing> {
    corner_jacobian(examples::p1_cubed(), &[(0, 1), (2, 3), (4, 5)])
}

/// Anticanonical hypersurfaces used by the invariant suite. Fermat-type
/// polynomials where the fan has pure-power monomials, corner polynomials
/// on products of projective lines.
pub fn anticanonical_examples() -> Vec<(&'static str, Arc<JacobianRing>)> {
    vec![
        ("cubic curve", fermat_jacobian(examples::projective_space(2))),
        ("quartic K3", fermat_jacobian(examples::projective_space(3))),
        ("quintic", fermat_jacobian(examples::projective_space(4))),
        ("curve in P1xP1", curve_in_p1xp1()),
        ("curve in F2", fermat_jacobian(examples::hirzebruch(2))),
        ("K3 in P1^3", k3_in_p1_cubed()),
        ("resolved P(1,1,2,2) K3", fermat_jacobian(examples::resolved_p1122())),
        ("resolved octic", fermat_jacobian(examples::resolved_octic())),
    ]
}

/// The five fans used for the semiample-divisor sweep.
pub fn sweep_fans() -> Vec<(&'static str, Fan)> {
    vec![
        ("P2", examples::projective_space(2)),
        ("F2", examples::hirzebruch(2)),
        ("P1^3", examples::p1_cubed()),
        ("resolved P(1,1,2,2)", examples::resolved_p1122()),
        ("resolved octic", examples::resolved_octic()),
    ]
}

/// `⟨m, e_i⟩` for every ray: the principal divisor of `χ^m`.
pub fn principal_divisor(fan: &Fan, m: &[i64]) -> Vec<i64> {
    fan.rays()
        .iter()
        .map(|e| e.iter().zip(m).map(|(a, b)| a * b).sum())
        .collect()
}

/// Draws `count` semiample divisors with coefficients in `[-1, 3]` using a
/// seeded generator.
pub fn random_semiample_divisors(fan: &Fan, count: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100_000, "could not find enough semiample divisors");
        let a: Vec<i64> = (0..fan.num_rays()).map(|_| rng.gen_range(-1..=3)).collect();
        if is_semiample(fan, &a).unwrap_or(false) {
            out.push(a);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Invariant checks
// ---------------------------------------------------------------------------

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The quotient fan of a semiample divisor is the normal fan of its
/// polytope: every `m_σ` is a vertex of `Δ_D` on which the support
/// function is attained along the rays of `σ`, the vertices of `Δ_D` are
/// exactly the `m_σ`, and shifting the representative by a principal
/// divisor translates the polytope.
pub fn check_normal_fan(fan: &Fan, a: &[i64], shift: &[i64]) -> Check {
    let an = semiample_quotient(fan, a).map_err(|e| format!("{a:?}: {e}"))?;
    let mut n = 0;
    if !an.gluing_matches_normal_fan {
        return Err(format!("{a:?}: glued fan differs from normal fan"));
    }
    n += 1;
    for (cone, m) in fan.max_cones().iter().zip(&an.m_sigma) {
        for (i, e) in fan.rays().iter().enumerate() {
            let v = dot(m, e);
            if v < -a[i] || (cone.contains(&i) && v != -a[i]) {
                return Err(format!("{a:?}: m_σ {m:?} violates facet {i}"));
            }
            n += 1;
        }
    }
    let mut from_cones: Vec<Vec<i64>> = an.m_sigma.clone();
    from_cones.sort();
    from_cones.dedup();
    let mut verts = an.vertices.clone();
    verts.sort();
    if verts != from_cones {
        return Err(format!("{a:?}: vertices {verts:?} are not the m_σ {from_cones:?}"));
    }
    if an.quotient_fan.validate().map(|v| !v.complete).unwrap_or(true) {
        return Err(format!("{a:?}: quotient fan is not complete"));
    }
    if an.quotient_fan.max_cones().len() != verts.len() {
        return Err(format!(
            "{a:?}: {} quotient cones for {} vertices",
            an.quotient_fan.max_cones().len(),
            verts.len()
        ));
    }
    n += 3;
    let shifted: Vec<i64> = a
        .iter()
        .zip(principal_divisor(fan, shift))
        .map(|(x, y)| x + y)
        .collect();
    let bn = semiample_quotient(fan, &shifted).map_err(|e| format!("{shifted:?}: {e}"))?;
    let mut moved: Vec<Vec<i64>> = bn
        .vertices
        .iter()
        .map(|v| v.iter().zip(shift).map(|(x, y)| x + y).collect())
        .collect();
    moved.sort();
    if moved != verts || bn.kappa != an.kappa {
        return Err(format!("{a:?}: shifting by div({shift:?}) does not translate Δ_D"));
    }
    Ok(n + 1)
}

/// `mult(σ_{j+1}) e_{l_{j−1}} + mult(σ_j) e_{l_{j+1}} = mult(σ_j + σ_{j+1}) e_{l_j}`
/// together with multiplicities recomputed from 2×2 (or Gram) determinants.
pub fn check_ordering_relation(fan: &Fan, a: usize, b: usize) -> Check {
    let o = fan.order_rays_in_2cone(a, b).map_err(|e| e.to_string())?;
    if !o.relation_holds(fan) {
        return Err(format!("relation fails on cone({a}, {b})"));
    }
    if fan.dim() == 2 {
        let det = |i: usize, j: usize| {
            let (u, v) = (fan.ray(i), fan.ray(j));
            (u[0] * v[1] - u[1] * v[0]).abs()
        };
        for (k, w) in o.rays.windows(2).enumerate() {
            if o.mults[k] != det(w[0], w[1]) {
                return Err(format!(
                    "mult of cone({}, {}) is {}, determinant {}",
                    w[0],
                    w[1],
                    o.mults[k],
                    det(w[0], w[1])
                ));
            }
        }
        for j in 1..o.rays.len() - 1 {
            let (p, c, nx) = (fan.ray(o.rays[j - 1]), fan.ray(o.rays[j]), fan.ray(o.rays[j + 1]));
            let (dl, dr, db) = (
                det(o.rays[j - 1], o.rays[j]),
                det(o.rays[j], o.rays[j + 1]),
                det(o.rays[j - 1], o.rays[j + 1]),
            );
            if (0..2).any(|t| dr * p[t] + dl * nx[t] != db * c[t]) {
                return Err(format!("determinant identity fails at {:?}", o.rays));
            }
        }
    }
    Ok(1)
}

/// Every ordered two-dimensional cone of `Σ` and of `Σ_X` for the
/// anticanonical class.
pub fn check_all_orderings(fan: &Fan) -> Check {
    let mut n = 0;
    for c in fan.cones_of_dim(2) {
        n += check_ordering_relation(fan, c[0], c[1])?;
    }
    let b = vec![1; fan.num_rays()];
    if let Ok(data) = toric_chiral::cohomology::sigma_x_data(fan, &b) {
        for c in &data.cones {
            let (s, t) = c.ordering.boundary();
            n += check_ordering_relation(fan, s, t)?;
        }
    }
    Ok(n)
}

/// `h^{p,q} = h^{q,p}` for every determined entry.
pub fn check_hodge_symmetry(jr: &JacobianRing) -> Check {
    let h = toric_chiral::cohomology::middle_cohomology(jr).map_err(|e| e.to_string())?;
    if !h.is_symmetric() {
        return Err("Hodge numbers are not symmetric".into());
    }
    Ok(h.entries.len())
}

/// `R^σ₁(f)_{qβ−β₀+β₁^σ}` vanishes for `q = 0` and `q = d − 1`.
pub fn check_sigma_vanishing(jr: &JacobianRing) -> Check {
    let ring = jr.ring();
    let ch = ring.chow();
    let b = jr.beta();
    let data = toric_chiral::cohomology::sigma_x_data(ring.fan(), &b.representative).map_err(|e| e.to_string())?;
    let d = ring.fan().dim();
    let b0 = ch.anticanonical();
    let mut n = 0;
    for c in data.nontrivial() {
        let b1 = ring.sum_of_ray_classes(&c.rays());
        for q in [0, d - 1] {
            let deg = ch.combine(&[(q as i64, b), (-1, &b0), (1, &b1)]);
            let dim = jr.r1_sigma(&c.rays(), &deg).dim();
            if dim != 0 {
                return Err(format!("R^σ₁ at q = {q} has dimension {dim} for σ = {:?}", c.rays()));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Unit law, grading, adjacency vanishing and commutativity of every
/// determined structure constant.
pub fn check_chiral_laws(cr: &ChiralRing) -> Check {
    let n = cr.basis().len();
    let d = cr.dim();
    let one = cr.unit();
    let mut count = 0;
    for u in 0..n {
        let expect = Product::Determined(vec![(u, GaussianRational::one())]);
        if cr.product(one, u).map_err(|e| e.to_string())? != expect
            || cr.product(u, one).map_err(|e| e.to_string())? != expect
        {
            return Err(format!("unit law fails on {}", cr.label(u)));
        }
        count += 1;
    }
    for u in 0..n {
        for v in u..n {
            let (bu, bv) = (&cr.basis()[u], &cr.basis()[v]);
            let g = bu.grade + bv.grade;
            let p = cr.product(u, v).map_err(|e| e.to_string())?;
            if p != cr.product(v, u).map_err(|e| e.to_string())? {
                return Err(format!("product of {u}, {v} is not commutative"));
            }
            let Product::Determined(e) = p else { continue };
            if g >= d && !e.is_empty() {
                return Err(format!("{u}·{v} is nonzero beyond the top grade"));
            }
            if e.iter().any(|(w, _)| cr.basis()[*w].grade != g) {
                return Err(format!("{u}·{v} leaves grade {g}"));
            }
            if let (BasisTag::GammaSigma { sigma: s, ray: i }, BasisTag::GammaSigma { sigma: t, ray: j }) =
                (&bu.tag, &bv.tag)
            {
                let related = s == t && (i == j || cr.adjacent(*i, *j));
                if !related && !e.is_empty() {
                    return Err(format!("{u}·{v}: non-adjacent σ-classes multiply to a nonzero class"));
                }
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `(u·v)·w = u·(v·w)` for all basis triples whose products are determined.
pub fn check_associativity(cr: &ChiralRing) -> Check {
    let n = cr.basis().len();
    let d = cr.dim();
    let mut count = 0;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let g = cr.basis()[u].grade + cr.basis()[v].grade + cr.basis()[w].grade;
                if g >= d {
                    continue;
                }
                let single = |x: usize| vec![(x, GaussianRational::one())];
                let uv = multiply(cr, &single(u), &single(v)).map_err(|e| e.to_string())?;
                let vw = multiply(cr, &single(v), &single(w)).map_err(|e| e.to_string())?;
                let (Some(uv), Some(vw)) = (uv, vw) else { continue };
                let left = multiply(cr, &uv, &single(w)).map_err(|e| e.to_string())?;
                let right = multiply(cr, &single(u), &vw).map_err(|e| e.to_string())?;
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        return Err(format!("({u}·{v})·{w} ≠ {u}·({v}·{w})"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// The pairing `H^p × H^{d−1−p} → C` has full rank in every grade.
pub fn check_pairing(cr: &ChiralRing) -> Check {
    let d = cr.dim();
    let mut n = 0;
    for p in 0..d {
        let m = cr.pairing_matrix(p).map_err(|e| e.to_string())?;
        let (rows, cols) = (m.len(), cr.grade_dims()[d - 1 - p]);
        if rows != cols {
            return Err(format!(
                "grades {p} and {} have dimensions {rows} and {cols}",
                d - 1 - p
            ));
        }
        let (_, piv) = rref(&m, cols);
        if piv.len() != rows {
            return Err(format!("pairing in grade {p} has rank {} < {rows}", piv.len()));
        }
        n += 1;
    }
    Ok(n)
}

/// Same-ray triple products `γ^i_A γ^i_B γ^i_C` (all in one σ-cone and one
/// ray) when all sub-cone multiplicities of that σ-cone are one.
pub fn same_ray_triples_vanish(cr: &ChiralRing) -> Check {
    let d = cr.dim();
    let mut n = 0;
    for (s, cone) in cr.sigma_cones().iter().enumerate() {
        if cone.ordering.mults.iter().any(|&m| m != 1) {
            continue;
        }
        for &i in cone.interior() {
            let class: Vec<usize> = (0..cr.basis().len())
                .filter(|&u| cr.basis()[u].tag == BasisTag::GammaSigma { sigma: s, ray: i })
                .collect();
            for &a in &class {
                for &b in &class {
                    for &c in &class {
                        if cr.basis()[a].grade + cr.basis()[b].grade + cr.basis()[c].grade != d - 1 {
                            continue;
                        }
                        let t = cr.triple(a, b, c).map_err(|e| e.to_string())?;
                        if !t.is_zero() {
                            return Err(format!("triple ({a}, {b}, {c}) = {t:?}"));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// For every σ-cone with interior rays and every two-dimensional cone
/// `σ' ⊂ σ` of the fan: `(dim R^σ₁(f)_{β₁^σ}, dim R₁(f_{σ'})_{β^{σ'} − β₀^{σ'}})`,
/// the second computed in the Cox ring of `Star(σ')` from the restriction
/// of `f` to the orbit closure `V(σ')`. Only meaningful for `d ≥ 3`, where
/// `V(σ')` has positive dimension; empty otherwise.
pub fn restriction_bridge(jr: &JacobianRing) -> Result<Vec<(usize, usize)>, String> {
    let ring = jr.ring();
    let fan = ring.fan();
    if fan.dim() < 3 {
        return Ok(Vec::new());
    }
    let data = toric_chiral::cohomology::sigma_x_data(fan, &jr.beta().representative).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for c in data.nontrivial() {
        let b1 = ring.sum_of_ray_classes(&c.rays());
        let sig = jr.r1_sigma(&c.rays(), &b1).dim();
        for w in c.ordering.rays.windows(2) {
            let mut cone = vec![w[0], w[1]];
            cone.sort_unstable();
            let star = fan.star_fan(&cone).map_err(|e| e.to_string())?;
            let star_ring = Arc::new(CoxRing::new(star.fan.clone()).map_err(|e| e.to_string())?);
            let f_star = toric_chiral::coxring::restrict_to_star(ring, &star, &star_ring, jr.polynomial())
                .map_err(|e| e.to_string())?;
            let deg = star_ring.chow().sub(f_star.degree(), &star_ring.chow().anticanonical());
            let jr_star = JacobianRing::new(star_ring, f_star);
            out.push((sig, jr_star.r1(&deg).dim()));
        }
    }
    Ok(out)
}
