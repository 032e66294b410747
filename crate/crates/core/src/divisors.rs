//! Torus-invariant divisors, the class group and semiample quotients.
//!
//! Divisors are written `D = Σ a_i D_i` over the rays of a complete fan.
//! The class group is `Z^n / {(⟨m, e_i⟩)_i : m ∈ M}`; [`ChowGroup`] reduces
//! representatives against a Hermite basis of the relation lattice so that
//! equal classes have identical canonical forms.
//!
//! For a semiample Cartier divisor, [`semiample_quotient`] computes the
//! polytope `Δ_D = {m : ⟨m, e_i⟩ ≥ −a_i}`, its Iitaka dimension `κ`, the
//! lattice `N' = {v : ⟨m_σ − m_τ, v⟩ = 0}` and the quotient fan `Σ_D` in
//! `N / N'`, which is the normal fan of `Δ_D`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{content, Cone, Fan, StarFan};
use crate::lattice::{
    hermite_row_basis, int_rank, integer_kernel, smith_normal_form, solve_integer, solve_linear, to_i64, IntMatrix,
};
use crate::scalar::{rat, Rational};

/// A divisor class: a representative coefficient vector and the canonical
/// form of its class. Equality compares canonical forms only.
#[derive(Clone, Debug)]
pub struct DivisorClass {
    pub representative: Vec<i64>,
    pub canonical: Vec<i64>,
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for DivisorClass {}

impl std::hash::Hash for DivisorClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

/// The class group `A_{d−1}` of a complete toric variety.
#[derive(Clone, Debug)]
pub struct ChowGroup {
    num_rays: usize,
    /// Hermite basis (rows) of the relation lattice in `Z^n`.
    relations: IntMatrix,
    /// Free rank of the class group.
    pub rank: usize,
    /// Invariant factors `> 1` (torsion part).
    pub torsion: Vec<i64>,
}

impl ChowGroup {
    /// Builds the class group of a fan.
    pub fn new(fan: &Fan) -> ChowGroup {
        let n = fan.num_rays();
        let d = fan.dim();
        let rows: Vec<Vec<i64>> = (0..d).map(|j| (0..n).map(|i| fan.ray(i)[j]).collect()).collect();
        let rel = IntMatrix::from_rows(&rows, n);
        let snf = smith_normal_form(&rel);
        let torsion = snf.diagonal.iter().map(to_i64).filter(|&x| x > 1).collect();
        ChowGroup {
            num_rays: n,
            relations: hermite_row_basis(&rel),
            rank: n - snf.rank(),
            torsion,
        }
    }

    /// Number of rays (length of representatives).
    pub fn num_rays(&self) -> usize {
        self.num_rays
    }

    fn canonical(&self, rep: &[i64]) -> Vec<i64> {
        let mut a: Vec<BigInt> = rep.iter().map(|&x| BigInt::from(x)).collect();
        for r in 0..self.relations.rows() {
            let row = self.relations.row(r);
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero Hermite row");
            let q = num_integer::Integer::div_floor(&a[p], &row[p]);
            if !q.is_zero() {
                for (x, y) in a.iter_mut().zip(&row) {
                    *x -= &q * y;
                }
            }
        }
        a.iter().map(to_i64).collect()
    }

    /// The class of a coefficient vector.
    ///
    /// # Errors
    /// [`Error::InvalidInput`] if the length differs from the number of rays.
    pub fn class_of(&self, rep: &[i64]) -> Result<DivisorClass> {
        if rep.len() != self.num_rays {
            return Err(Error::InvalidInput(format!(
                "divisor has {} coefficients, fan has {} rays",
                rep.len(),
                self.num_rays
            )));
        }
        Ok(DivisorClass {
            representative: rep.to_vec(),
            canonical: self.canonical(rep),
        })
    }

    /// The class of `D_i` (the `i`-th coordinate variable).
    pub fn ray_class(&self, i: usize) -> DivisorClass {
        let mut v = vec![0; self.num_rays];
        v[i] = 1;
        self.class_of(&v).expect("length matches")
    }

    /// The anticanonical class `β₀ = [Σ D_i]`.
    pub fn anticanonical(&self) -> DivisorClass {
        self.class_of(&vec![1; self.num_rays]).expect("length matches")
    }

    /// The zero class.
    pub fn zero(&self) -> DivisorClass {
        self.class_of(&vec![0; self.num_rays]).expect("length matches")
    }

    /// `Σ c_k · class_k`, computed on representatives.
    pub fn combine(&self, terms: &[(i64, &DivisorClass)]) -> DivisorClass {
        let mut v = vec![0i64; self.num_rays];
        for (c, cls) in terms {
            for (x, y) in v.iter_mut().zip(&cls.representative) {
                *x += c * y;
            }
        }
        self.class_of(&v).expect("length matches")
    }

    pub fn add(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        self.combine(&[(1, a), (1, b)])
    }

    pub fn sub(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        self.combine(&[(1, a), (-1, b)])
    }

    pub fn scale(&self, k: i64, a: &DivisorClass) -> DivisorClass {
        self.combine(&[(k, a)])
    }
}

/// Linear forms `m_σ ∈ M` with `⟨m_σ, e_i⟩ = −a_i` for the rays of each
/// maximal cone `σ`.
///
/// # Errors
/// [`Error::NotCartier`] if some maximal cone admits no integral `m_σ`.
pub fn cartier_data(fan: &Fan, rep: &[i64]) -> Result<Vec<Vec<i64>>> {
    if rep.len() != fan.num_rays() {
        return Err(Error::InvalidInput(
            "divisor length does not match the number of rays".into(),
        ));
    }
    fan.max_cones()
        .iter()
        .enumerate()
        .map(|(idx, cone)| local_form(fan, rep, cone).ok_or(Error::NotCartier { cone: idx }))
        .collect()
}

/// An integral `m` with `⟨m, e_k⟩ = −a_k` for every `k` in `cone`.
pub fn local_form(fan: &Fan, rep: &[i64], cone: &[usize]) -> Option<Vec<i64>> {
    let g = IntMatrix::from_rows(&fan.generators(cone), fan.dim());
    let y: Vec<BigInt> = cone.iter().map(|&k| BigInt::from(-rep[k])).collect();
    solve_integer(&g, &y).map(|m| m.iter().map(to_i64).collect())
}

fn pair(m: &[i64], v: &[i64]) -> i64 {
    m.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Whether a Cartier divisor is semiample: `⟨m_σ, e_j⟩ ≥ −a_j` for all
/// maximal cones `σ` and rays `j`.
///
/// # Errors
/// [`Error::NotCartier`] if the divisor is not Cartier.
pub fn is_semiample(fan: &Fan, rep: &[i64]) -> Result<bool> {
    let ms = cartier_data(fan, rep)?;
    Ok(ms
        .iter()
        .all(|m| fan.rays().iter().zip(rep).all(|(e, &a)| pair(m, e) >= -a)))
}

/// Everything known about a semiample divisor and its quotient fan.
#[derive(Clone, Debug)]
pub struct SemiampleAnalysis {
    pub representative: Vec<i64>,
    /// `m_σ` for each maximal cone of `Σ`.
    pub m_sigma: Vec<Vec<i64>>,
    /// Distinct `m_σ` (the vertices of `Δ_D`), sorted.
    pub vertices: Vec<Vec<i64>>,
    /// Index into `vertices` for each maximal cone.
    pub vertex_of_cone: Vec<usize>,
    /// Iitaka dimension `κ = dim Δ_D`.
    pub kappa: usize,
    /// Basis (rows) of `N' ⊂ N`.
    pub n_prime: IntMatrix,
    /// Basis (rows) `μ_1, …, μ_κ` of `M_D = M ∩ N'^⊥`; the quotient map is
    /// `v ↦ (⟨μ_j, v⟩)_j`.
    pub m_d_basis: IntMatrix,
    /// The quotient fan `Σ_D` (normal fan of `Δ_D`) in `N / N'`.
    pub quotient_fan: Fan,
    /// Ample divisor on `Σ_D` whose polytope is `Δ_D − vertices[0]`.
    pub quotient_divisor: Vec<i64>,
    /// For each ray of `Σ`: true when its image spans a ray of `Σ_D`.
    pub ray_status: Vec<bool>,
    /// For each ray of `Σ`: the `Σ_D` ray it maps onto, if any.
    pub ray_image: Vec<Option<usize>>,
    /// For every cone of `Σ`: the smallest cone of `Σ_D` containing its image.
    pub cone_map: BTreeMap<Cone, Cone>,
    /// Whether gluing the maximal cones with equal `m_σ` reproduces the
    /// normal fan cone by cone.
    pub gluing_matches_normal_fan: bool,
}

impl SemiampleAnalysis {
    /// Image of a vector of `N` in `N_D`.
    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        (0..self.m_d_basis.rows())
            .map(|j| pair(&self.m_d_basis.row_i64(j), v))
            .collect()
    }

    /// Whether the class is big (`κ = d`).
    pub fn is_big(&self) -> bool {
        self.kappa == self.m_sigma.first().map_or(0, |m| m.len())
    }

    /// Re-expresses a monomial `x^a` of degree `p[D]` on `Σ` as the monomial
    /// of degree `p[D_{Σ_D}]` on `Σ_D` with the same lattice point of `pΔ_D`.
    ///
    /// # Errors
    /// [`Error::DegreeNotMultipleOfD`] if the degree of `x^a` is not a
    /// nonnegative multiple of `[D]`.
    pub fn pushforward_monomial(&self, fan: &Fan, exps: &[i64]) -> Result<Vec<i64>> {
        let d = fan.dim();
        let n = fan.num_rays();
        if exps.len() != n {
            return Err(Error::InvalidInput("exponent vector has the wrong length".into()));
        }
        // Solve Σ_j m_j e_i[j] + p a_i = exps_i for (m, p).
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r: Vec<Rational> = fan.ray(i).iter().map(|&x| rat(x)).collect();
                r.push(rat(self.representative[i]));
                r
            })
            .collect();
        let rhs: Vec<Rational> = exps.iter().map(|&x| rat(x)).collect();
        let int_rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                fan.ray(i)
                    .iter()
                    .copied()
                    .chain(std::iter::once(self.representative[i]))
                    .collect()
            })
            .collect();
        if int_rank(&int_rows, d + 1) < d + 1 {
            // [D] is rationally trivial: only the constant monomial has degree p[D].
            return if exps.iter().all(|&x| x == 0) {
                Ok(vec![0; self.quotient_fan.num_rays()])
            } else {
                Err(Error::DegreeNotMultipleOfD)
            };
        }
        let sol = solve_linear(&rows, &rhs, d + 1).ok_or(Error::DegreeNotMultipleOfD)?;
        if sol.iter().any(|x| !x.is_integer()) || sol[d].is_negative() {
            return Err(Error::DegreeNotMultipleOfD);
        }
        let p = to_i64(&sol[d].to_integer());
        let m: Vec<i64> = sol[..d].iter().map(|x| to_i64(&x.to_integer())).collect();
        let shifted: Vec<i64> = m.iter().zip(&self.vertices[0]).map(|(a, b)| a - p * b).collect();
        let c = self.m_d_coordinates(&shifted).ok_or(Error::DegreeNotMultipleOfD)?;
        Ok((0..self.quotient_fan.num_rays())
            .map(|r| p * self.quotient_divisor[r] + pair(&c, self.quotient_fan.ray(r)))
            .collect())
    }

    /// Coordinates of `m ∈ M_D` in the basis `μ`.
    fn m_d_coordinates(&self, m: &[i64]) -> Option<Vec<i64>> {
        let k = self.m_d_basis.rows();
        let d = self.m_d_basis.cols();
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                (0..k)
                    .map(|i| Rational::from_integer(self.m_d_basis.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = m.iter().map(|&x| rat(x)).collect();
        let c = solve_linear(&rows, &rhs, k)?;
        if c.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(c.iter().map(|x| to_i64(&x.to_integer())).collect())
    }
}

fn affine_rank(points: &[&Vec<i64>], dim: usize) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    int_rank(&diffs, dim)
}

/// Analyses a semiample divisor on a complete simplicial fan.
///
/// # Errors
/// [`Error::NotCartier`] or [`Error::NotSemiample`] if the divisor fails
/// those conditions; fan errors from validation.
pub fn semiample_quotient(fan: &Fan, rep: &[i64]) -> Result<SemiampleAnalysis> {
    fan.require_complete_simplicial()?;
    let d = fan.dim();
    let n = fan.num_rays();
    let m_sigma = cartier_data(fan, rep)?;
    if !m_sigma
        .iter()
        .all(|m| fan.rays().iter().zip(rep).all(|(e, &a)| pair(m, e) >= -a))
    {
        return Err(Error::NotSemiample);
    }
    let vertex_set: BTreeSet<Vec<i64>> = m_sigma.iter().cloned().collect();
    let vertices: Vec<Vec<i64>> = vertex_set.into_iter().collect();
    let vertex_of_cone: Vec<usize> = m_sigma
        .iter()
        .map(|m| vertices.iter().position(|v| v == m).expect("vertex"))
        .collect();
    let diffs: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    let kappa = int_rank(&diffs, d);
    let n_prime = integer_kernel(&IntMatrix::from_rows(&diffs, d));
    let m_d_basis = if n_prime.rows() == 0 {
        IntMatrix::identity(d)
    } else {
        integer_kernel(&n_prime)
    };
    let project = |v: &[i64]| -> Vec<i64> { (0..m_d_basis.rows()).map(|j| pair(&m_d_basis.row_i64(j), v)).collect() };

    // Faces F_i = {vertices on the hyperplane of ray i}; facets have dim κ−1.
    let face_of_ray: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..vertices.len())
                .filter(|&v| pair(&vertices[v], fan.ray(i)) == -rep[i])
                .collect()
        })
        .collect();
    let ray_status: Vec<bool> = (0..n)
        .map(|i| {
            let pts: Vec<&Vec<i64>> = face_of_ray[i].iter().map(|&v| &vertices[v]).collect();
            kappa >= 1 && !pts.is_empty() && affine_rank(&pts, d) == kappa - 1
        })
        .collect();

    let mut qrays: Vec<Vec<i64>> = Vec::new();
    let mut qfacet: Vec<Vec<usize>> = Vec::new();
    let mut qdivisor: Vec<i64> = Vec::new();
    let mut ray_image = vec![None; n];
    for i in 0..n {
        if !ray_status[i] {
            continue;
        }
        let img = project(fan.ray(i));
        let g = content(&img);
        let prim: Vec<i64> = img.iter().map(|x| x / g).collect();
        let idx = match qrays.iter().position(|r| *r == prim) {
            Some(idx) => idx,
            None => {
                qrays.push(prim);
                qfacet.push(face_of_ray[i].clone());
                let b = rep[i] + pair(&vertices[0], fan.ray(i));
                debug_assert_eq!(b % g, 0);
                qdivisor.push(b / g);
                qrays.len() - 1
            }
        };
        ray_image[i] = Some(idx);
    }
    let qcones: Vec<Cone> = (0..vertices.len())
        .map(|v| (0..qrays.len()).filter(|&r| qfacet[r].contains(&v)).collect())
        .collect();
    let quotient_fan = Fan::new(kappa, qrays, qcones)?;

    // Gluing check: images of the rays of the cones with vertex v lie in the
    // normal cone of v, and every ray of that normal cone is such an image.
    let mut gluing_matches_normal_fan = true;
    for (v, normal_cone) in quotient_fan.max_cones().iter().enumerate() {
        let group: BTreeSet<usize> = (0..m_sigma.len())
            .filter(|&s| vertex_of_cone[s] == v)
            .flat_map(|s| fan.max_cones()[s].iter().copied())
            .collect();
        for &k in &group {
            let val = pair(&vertices[v], fan.ray(k));
            if vertices.iter().any(|w| pair(w, fan.ray(k)) < val) {
                gluing_matches_normal_fan = false;
            }
        }
        for &r in normal_cone {
            if !group.iter().any(|&k| ray_image[k] == Some(r)) {
                gluing_matches_normal_fan = false;
            }
        }
    }

    let mut cone_map = BTreeMap::new();
    for cone in fan.all_cones() {
        let x: Vec<i64> = (0..d).map(|j| cone.iter().map(|&k| fan.ray(k)[j]).sum()).collect();
        let vals: Vec<i64> = vertices.iter().map(|v| pair(v, &x)).collect();
        let min = *vals.iter().min().expect("nonempty");
        let face: Vec<usize> = (0..vertices.len()).filter(|&v| vals[v] == min).collect();
        let target: Cone = (0..quotient_fan.num_rays())
            .filter(|&r| face.iter().all(|v| qfacet[r].contains(v)))
            .collect();
        cone_map.insert(cone.clone(), target);
    }

    Ok(SemiampleAnalysis {
        representative: rep.to_vec(),
        m_sigma,
        vertices,
        vertex_of_cone,
        kappa,
        n_prime,
        m_d_basis,
        quotient_fan,
        quotient_divisor: qdivisor,
        ray_status,
        ray_image,
        cone_map,
        gluing_matches_normal_fan,
    })
}

/// Coefficients on the rays of `Star(c)` of the restriction of a divisor
/// that is Cartier along `c`: first make the coefficients on `c` vanish by
/// adding `div(χ^m)`, then scale each coefficient by `mult(c)/mult(γ')`.
///
/// # Errors
/// [`Error::NonIntegralExponent`] if no integral normalisation exists or the
/// scaled coefficients are fractional.
pub fn restrict_divisor_to_star(fan: &Fan, star: &StarFan, rep: &[i64]) -> Result<Vec<i64>> {
    let m = local_form(fan, rep, &star.cone).ok_or(Error::NonIntegralExponent)?;
    star.ray_map
        .iter()
        .zip(&star.scale)
        .map(|(&k, &(num, den))| {
            let a = rep[k] + pair(&m, fan.ray(k));
            if (a * num) % den != 0 {
                Err(Error::NonIntegralExponent)
            } else {
                Ok(a * num / den)
            }
        })
        .collect()
}

/// Counts, for tests and reporting, how many maximal cones share each
/// vertex of `Δ_D`.
pub fn cones_per_vertex(a: &SemiampleAnalysis) -> HashMap<usize, usize> {
    let mut out = HashMap::new();
    for &v in &a.vertex_of_cone {
        *out.entry(v).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::examples::*;

    #[test]
    fn p1_times_p1_class_group() {
        let f = p1_times_p1();
        let ch = ChowGroup::new(&f);
        assert_eq!(ch.rank, 2);
        assert!(ch.torsion.is_empty());
        // x1 and x3 (opposite rays) have the same class.
        assert_eq!(ch.ray_class(0), ch.ray_class(2));
        assert_ne!(ch.ray_class(0), ch.ray_class(1));
    }

    #[test]
    fn weighted_projective_plane_has_no_torsion_but_rank_one() {
        let f = weighted_projective(&[1, 1, 2]);
        let ch = ChowGroup::new(&f);
        assert_eq!(ch.rank, 1);
        assert_eq!(ch.scale(2, &ch.ray_class(0)), ch.ray_class(2));
    }

    #[test]
    fn anticanonical_on_projective_plane() {
        let f = projective_space(2);
        let ms = cartier_data(&f, &[1, 1, 1]).unwrap();
        assert_eq!(ms, vec![vec![2, -1], vec![-1, 2], vec![-1, -1]]);
        assert!(is_semiample(&f, &[1, 1, 1]).unwrap());
        let a = semiample_quotient(&f, &[1, 1, 1]).unwrap();
        assert_eq!(a.kappa, 2);
        assert!(a.gluing_matches_normal_fan);
        assert_eq!(a.quotient_fan.num_rays(), 3);
    }

    #[test]
    fn non_cartier_divisor_on_weighted_plane() {
        let f = weighted_projective(&[1, 1, 2]);
        assert!(matches!(cartier_data(&f, &[1, 0, 0]), Err(Error::NotCartier { .. })));
    }

    #[test]
    fn fibre_class_of_product_of_lines() {
        let f = p1_times_p1();
        let a = semiample_quotient(&f, &[0, 1, 0, 0]).unwrap();
        assert_eq!(a.kappa, 1);
        assert_eq!(a.n_prime.row_i64(0), vec![1, 0]);
        assert_eq!(a.quotient_fan.num_rays(), 2);
        assert_eq!(a.ray_status, vec![false, true, false, true]);
        assert!(a.gluing_matches_normal_fan);
    }

    #[test]
    fn pushforward_preserves_lattice_points() {
        let f = p1_times_p1();
        let a = semiample_quotient(&f, &[0, 1, 0, 0]).unwrap();
        // x2^2 has degree 2[D]; on the quotient line it is y^2.
        let img = a.pushforward_monomial(&f, &[0, 2, 0, 0]).unwrap();
        assert_eq!(img.iter().sum::<i64>(), 2);
        assert_eq!(
            a.pushforward_monomial(&f, &[1, 0, 0, 0]),
            Err(Error::DegreeNotMultipleOfD)
        );
    }

    #[test]
    fn not_semiample_divisor() {
        let f = hirzebruch(1);
        // The exceptional curve has negative self-intersection.
        assert_eq!(semiample_quotient(&f, &[0, 1, 0, 0]).unwrap_err(), Error::NotSemiample);
    }
}
