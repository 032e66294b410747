//! Rational polyhedral fans in `N = Z^d`.
//!
//! A [`Fan`] is a list of primitive rays and a list of maximal cones given
//! by ray indices. Construction performs cheap structural checks;
//! [`Fan::validate`] additionally checks that cones meet along common faces
//! and classifies the fan as simplicial and/or complete.
//!
//! The module also provides cone multiplicities, the ordering of fan rays
//! inside a two-dimensional cone ([`SigmaOrdering`]) and the quotient
//! (star) fan of a cone ([`StarFan`]).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    integer_kernel, is_feasible, rational_rank_and_kernel, smith_normal_form, solve_linear, to_i64, Inequality,
    IntMatrix,
};
use crate::scalar::{rat, Rational};

/// A cone, as a sorted list of ray indices.
pub type Cone = Vec<usize>;

/// Result of [`Fan::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanValidation {
    /// Every maximal cone has exactly `d` linearly independent generators.
    pub simplicial: bool,
    /// The support of the fan is all of `N_R`.
    pub complete: bool,
}

/// A fan given by primitive rays and maximal cones.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Cone>,
    validation: OnceLock<std::result::Result<FanValidation, Error>>,
    faces: OnceLock<Vec<Cone>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

/// Greatest common divisor of the entries (0 for the zero vector).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Multiplicity of the cone generated by `gens`: the index of the lattice
/// they span inside its saturation (product of the nonzero Smith invariants).
pub fn multiplicity(gens: &[Vec<i64>], dim: usize) -> i64 {
    if gens.is_empty() {
        return 1;
    }
    to_i64(&smith_normal_form(&IntMatrix::from_rows(gens, dim)).index())
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Fan {
    /// Builds a fan, checking dimensions, indices, primitivity and
    /// distinctness of rays. Cone index lists are sorted and deduplicated.
    ///
    /// # Errors
    /// [`Error::MalformedFan`] on any structural defect.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let mut seen = HashSet::new();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::MalformedFan(format!(
                    "ray {i} has length {}, expected {dim}",
                    r.len()
                )));
            }
            if content(r) != 1 {
                return Err(Error::MalformedFan(format!("ray {i} = {r:?} is not primitive")));
            }
            if !seen.insert(r.clone()) {
                return Err(Error::MalformedFan(format!("ray {i} = {r:?} is duplicated")));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut seen_cones = HashSet::new();
        for (i, c) in max_cones.into_iter().enumerate() {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if set.len() != c.len() {
                return Err(Error::MalformedFan(format!("cone {i} repeats a ray")));
            }
            if let Some(&bad) = set.iter().find(|&&k| k >= rays.len()) {
                return Err(Error::MalformedFan(format!("cone {i} refers to missing ray {bad}")));
            }
            let cone: Cone = set.into_iter().collect();
            if !seen_cones.insert(cone.clone()) {
                return Err(Error::MalformedFan(format!("cone {i} is duplicated")));
            }
            cones.push(cone);
        }
        if cones.is_empty() {
            return Err(Error::MalformedFan("no maximal cones".into()));
        }
        let fan = Fan {
            dim,
            rays,
            max_cones: cones,
            validation: OnceLock::new(),
            faces: OnceLock::new(),
        };
        for (i, c) in fan.max_cones.iter().enumerate() {
            if !fan.is_strongly_convex(c) {
                return Err(Error::MalformedFan(format!("cone {i} is not strongly convex")));
            }
        }
        for (i, a) in fan.max_cones.iter().enumerate() {
            for (j, b) in fan.max_cones.iter().enumerate() {
                if i != j && a.iter().all(|k| b.contains(k)) {
                    return Err(Error::MalformedFan(format!("cone {i} is contained in cone {j}")));
                }
            }
        }
        Ok(fan)
    }

    /// Lattice rank `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Index of a ray given by its primitive generator.
    pub fn ray_index(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// Generators of a cone as vectors.
    pub fn generators(&self, cone: &[usize]) -> Vec<Vec<i64>> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Multiplicity of a cone of the fan (1 for the zero cone).
    pub fn mult(&self, cone: &[usize]) -> i64 {
        multiplicity(&self.generators(cone), self.dim)
    }

    /// Linear dimension of the span of a cone.
    pub fn cone_dim(&self, cone: &[usize]) -> usize {
        crate::lattice::int_rank(&self.generators(cone), self.dim)
    }

    fn is_strongly_convex(&self, cone: &[usize]) -> bool {
        // Strongly convex iff no nonzero nonnegative combination is zero,
        // i.e. {λ ≥ 0, Σλ = 1, Σ λ_i e_i = 0} is infeasible.
        let k = cone.len();
        if k == 0 {
            return true;
        }
        let mut sys = Vec::new();
        for i in 0..k {
            let mut c = vec![rat(0); k];
            c[i] = rat(1);
            sys.push(Inequality::new(c, rat(0)));
        }
        sys.push(Inequality::new(vec![rat(1); k], rat(1)));
        sys.push(Inequality::new(vec![rat(-1); k], rat(-1)));
        for j in 0..self.dim {
            let c: Vec<Rational> = cone.iter().map(|&i| rat(self.rays[i][j])).collect();
            sys.push(Inequality::new(c.clone(), rat(0)));
            sys.push(Inequality::new(c.into_iter().map(|x| -x).collect(), rat(0)));
        }
        !is_feasible(&sys)
    }

    /// Basis (rows) of `M ∩ span(cone)^⊥`.
    pub fn orthogonal_lattice(&self, cone: &[usize]) -> IntMatrix {
        integer_kernel(&IntMatrix::from_rows(&self.generators(cone), self.dim))
    }

    /// Facets of a cone, as sorted ray-index lists, with an inner normal
    /// for each (a linear form that is ≥ 0 on the cone and vanishes exactly
    /// on the facet).
    pub fn facets(&self, cone: &[usize]) -> Vec<(Cone, Vec<Rational>)> {
        let gens = self.generators(cone);
        let r = crate::lattice::int_rank(&gens, self.dim);
        if r == 0 {
            return Vec::new();
        }
        // A basis of span(cone) chosen among the generators.
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for g in &gens {
            let mut trial = basis.clone();
            trial.push(g.clone());
            if crate::lattice::int_rank(&trial, self.dim) > basis.len() {
                basis = trial;
            }
        }
        let mut out: BTreeMap<Cone, Vec<Rational>> = BTreeMap::new();
        let idx: Vec<usize> = (0..cone.len()).collect();
        for subset in subsets_of_size(&idx, r - 1) {
            let sub: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
            if crate::lattice::int_rank(&sub, self.dim) != r - 1 {
                continue;
            }
            // Normal n = Σ c_j basis_j with ⟨n, s⟩ = 0 for s in the subset.
            let rows: Vec<Vec<Rational>> = sub
                .iter()
                .map(|s| basis.iter().map(|b| rat(dot(s, b))).collect())
                .collect();
            let (_, ker) = rational_rank_and_kernel(&rows, basis.len());
            let c = &ker[0];
            let mut n = vec![rat(0); self.dim];
            for (cj, b) in c.iter().zip(&basis) {
                for (x, &bj) in n.iter_mut().zip(b) {
                    *x += cj * rat(bj);
                }
            }
            let vals: Vec<Rational> = gens
                .iter()
                .map(|g| g.iter().zip(&n).map(|(&x, y)| rat(x) * y).sum())
                .collect();
            let all_nonneg = vals.iter().all(|v| !v.is_negative());
            let all_nonpos = vals.iter().all(|v| !v.is_positive());
            if !all_nonneg && !all_nonpos {
                continue;
            }
            if all_nonpos {
                n = n.into_iter().map(|x| -x).collect();
            }
            let facet: Cone = cone
                .iter()
                .zip(&vals)
                .filter(|(_, v)| v.is_zero())
                .map(|(&k, _)| k)
                .collect();
            out.entry(facet).or_insert(n);
        }
        out.into_iter().collect()
    }

    /// All faces of a cone (including the cone and the zero cone).
    pub fn faces_of(&self, cone: &[usize]) -> Vec<Cone> {
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![cone.to_vec()];
        while let Some(c) = stack.pop() {
            if !out.insert(c.clone()) {
                continue;
            }
            if self.is_simplicial_cone(&c) {
                for s in 0..c.len() {
                    let mut f = c.clone();
                    f.remove(s);
                    stack.push(f);
                }
            } else {
                for (f, _) in self.facets(&c) {
                    stack.push(f);
                }
            }
        }
        out.into_iter().collect()
    }

    fn is_simplicial_cone(&self, cone: &[usize]) -> bool {
        self.cone_dim(cone) == cone.len()
    }

    /// Every cone of the fan (all faces of maximal cones), sorted.
    pub fn all_cones(&self) -> &[Cone] {
        self.faces.get_or_init(|| {
            let mut set = BTreeSet::new();
            for c in &self.max_cones {
                set.extend(self.faces_of(c));
            }
            set.into_iter().collect()
        })
    }

    /// Cones of the fan of linear dimension `k`.
    pub fn cones_of_dim(&self, k: usize) -> Vec<Cone> {
        self.all_cones()
            .iter()
            .filter(|c| self.cone_dim(c) == k)
            .cloned()
            .collect()
    }

    /// Whether a sorted ray-index list is a cone of the fan.
    pub fn is_cone(&self, cone: &[usize]) -> bool {
        self.all_cones().binary_search_by(|c| c.as_slice().cmp(cone)).is_ok()
    }

    /// Indices of the maximal cones containing `cone`.
    pub fn max_cones_containing(&self, cone: &[usize]) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| cone.iter().all(|k| self.max_cones[i].contains(k)))
            .collect()
    }

    /// Inequalities (homogeneous) cutting out a cone inside `N_R`.
    fn cone_inequalities(&self, cone: &[usize]) -> Vec<Inequality> {
        let mut sys: Vec<Inequality> = self
            .facets(cone)
            .into_iter()
            .map(|(_, n)| Inequality::new(n, rat(0)))
            .collect();
        let perp = self.orthogonal_lattice(cone);
        for i in 0..perp.rows() {
            let m = perp.row_i64(i);
            sys.push(Inequality::from_ints(&m, rat(0)));
            sys.push(Inequality::from_ints(&m.iter().map(|x| -x).collect::<Vec<_>>(), rat(0)));
        }
        if cone.is_empty() {
            // The zero cone: x = 0.
            for j in 0..self.dim {
                let mut e = vec![0; self.dim];
                e[j] = 1;
                sys.push(Inequality::from_ints(&e, rat(0)));
                e[j] = -1;
                sys.push(Inequality::from_ints(&e, rat(0)));
            }
        }
        sys
    }

    /// Checks that the cones `a` and `b` intersect in their common face.
    fn meet_in_common_face(&self, a: &[usize], b: &[usize]) -> bool {
        let common: Cone = a.iter().copied().filter(|k| b.contains(k)).collect();
        for (own, other) in [(a, b), (b, a)] {
            if !self.faces_of(own).contains(&common) {
                return false;
            }
            let mut base = self.cone_inequalities(own);
            base.extend(self.cone_inequalities(other));
            // Facets of `own` containing the common face cut it out; the
            // intersection must lie on each of them.
            for (facet, n) in self.facets(own) {
                if !common.iter().all(|k| facet.contains(k)) {
                    continue;
                }
                let mut sys = base.clone();
                sys.push(Inequality::new(n, rat(1)));
                if is_feasible(&sys) {
                    return false;
                }
            }
        }
        true
    }

    /// Validates the fan and classifies it. The result is cached.
    ///
    /// # Errors
    /// [`Error::MalformedFan`] when two maximal cones do not meet along a
    /// common face.
    pub fn validate(&self) -> Result<FanValidation> {
        self.validation.get_or_init(|| self.compute_validation()).clone()
    }

    fn compute_validation(&self) -> Result<FanValidation> {
        let n = self.max_cones.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.meet_in_common_face(&self.max_cones[i], &self.max_cones[j]) {
                    return Err(Error::MalformedFan(format!(
                        "cones {i} and {j} do not meet in a common face"
                    )));
                }
            }
        }
        let simplicial = self
            .max_cones
            .iter()
            .all(|c| c.len() == self.dim && self.cone_dim(c) == self.dim);
        let pure = self.max_cones.iter().all(|c| self.cone_dim(c) == self.dim);
        let complete = pure && self.facets_pair_up();
        Ok(FanValidation { simplicial, complete })
    }

    fn facets_pair_up(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let mut owners: HashMap<Cone, Vec<usize>> = HashMap::new();
        for (i, c) in self.max_cones.iter().enumerate() {
            for (f, _) in self.facets(c) {
                owners.entry(f).or_default().push(i);
            }
        }
        if owners.values().any(|v| v.len() != 2) {
            return false;
        }
        // Connectivity of the adjacency graph through facets.
        let mut adj = vec![Vec::new(); self.max_cones.len()];
        for v in owners.values() {
            adj[v[0]].push(v[1]);
            adj[v[1]].push(v[0]);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Validates and requires a complete simplicial fan.
    pub fn require_complete_simplicial(&self) -> Result<()> {
        let v = self.validate()?;
        if !v.complete {
            return Err(Error::NotComplete);
        }
        if !v.simplicial {
            return Err(Error::NotSimplicial);
        }
        Ok(())
    }

    /// Coefficients `(λ, μ)` with `v = λ a + μ b`, if `v` lies in the plane.
    fn plane_coordinates(&self, a: &[i64], b: &[i64], v: &[i64]) -> Option<(Rational, Rational)> {
        let rows: Vec<Vec<Rational>> = (0..self.dim).map(|j| vec![rat(a[j]), rat(b[j])]).collect();
        let rhs = to_q(v);
        solve_linear(&rows, &rhs, 2).map(|x| (x[0].clone(), x[1].clone()))
    }

    /// Orders the rays of the fan lying in the two-dimensional cone spanned
    /// by rays `a` and `b` (which need not itself be a cone of the fan).
    ///
    /// The sequence `l_0, …, l_{n+1}` runs from one boundary ray to the
    /// other, `l_0` being chosen so that `det(K; e_{l_0}; e_{l_{n+1}}) > 0`
    /// where the rows of `K` are the Hermite basis of `M ∩ σ^⊥`.
    ///
    /// # Errors
    /// [`Error::InvalidInput`] if `a` and `b` are not independent.
    pub fn order_rays_in_2cone(&self, a: usize, b: usize) -> Result<SigmaOrdering> {
        let (ea, eb) = (self.rays[a].clone(), self.rays[b].clone());
        if crate::lattice::int_rank(&[ea.clone(), eb.clone()], self.dim) != 2 {
            return Err(Error::InvalidInput(format!(
                "rays {a} and {b} do not span a 2-dimensional cone"
            )));
        }
        let mut inside: Vec<(Rational, usize)> = Vec::new();
        for (k, v) in self.rays.iter().enumerate() {
            if let Some((l, m)) = self.plane_coordinates(&ea, &eb, v) {
                if !l.is_negative() && !m.is_negative() {
                    let t = &m / (&l + &m);
                    inside.push((t, k));
                }
            }
        }
        inside.sort();
        let mut seq: Vec<usize> = inside.into_iter().map(|(_, k)| k).collect();
        let perp = self.orthogonal_lattice(&[a, b]);
        let mut rows: Vec<Vec<i64>> = (0..perp.rows()).map(|i| perp.row_i64(i)).collect();
        rows.push(ea);
        rows.push(eb);
        let det = IntMatrix::from_rows(&rows, self.dim).det();
        let reversed = det.is_negative();
        if reversed {
            seq.reverse();
        }
        let mults = seq.windows(2).map(|w| self.mult(&[w[0], w[1]])).collect();
        let skip_mults = seq.windows(3).map(|w| self.mult(&[w[0], w[2]])).collect();
        Ok(SigmaOrdering {
            rays: seq,
            mults,
            skip_mults,
            reversed,
            cone_mult: self.mult(&[a, b]),
        })
    }

    /// The quotient fan `Star(c)` in `N / (N ∩ span c)`.
    ///
    /// # Errors
    /// [`Error::InvalidInput`] if `c` is not a cone of the fan.
    pub fn star_fan(&self, c: &[usize]) -> Result<StarFan> {
        let mut cone = c.to_vec();
        cone.sort_unstable();
        cone.dedup();
        if !self.is_cone(&cone) {
            return Err(Error::InvalidInput(format!("{cone:?} is not a cone of the fan")));
        }
        let projection = self.orthogonal_lattice(&cone);
        let qdim = projection.rows();
        let mult_c = self.mult(&cone);
        let containing = self.max_cones_containing(&cone);
        let mut star_rays: BTreeMap<usize, (Vec<i64>, i64)> = BTreeMap::new();
        for &t in &containing {
            for &k in &self.max_cones[t] {
                if cone.contains(&k) || star_rays.contains_key(&k) {
                    continue;
                }
                let img: Vec<i64> = (0..qdim).map(|j| dot(&projection.row_i64(j), &self.rays[k])).collect();
                let g = content(&img);
                if g == 0 {
                    return Err(Error::MalformedFan(format!("ray {k} lies in the span of {cone:?}")));
                }
                let prim: Vec<i64> = img.iter().map(|x| x / g).collect();
                star_rays.insert(k, (prim, g));
            }
        }
        let ray_map: Vec<usize> = star_rays.keys().copied().collect();
        let index_of: HashMap<usize, usize> = ray_map.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut scale = Vec::new();
        for &k in &ray_map {
            let mut gamma = cone.clone();
            gamma.push(k);
            gamma.sort_unstable();
            let mult_gamma = self.mult(&gamma);
            debug_assert_eq!(star_rays[&k].1 * mult_c, mult_gamma);
            scale.push((mult_c, mult_gamma));
        }
        let rays: Vec<Vec<i64>> = ray_map.iter().map(|k| star_rays[k].0.clone()).collect();
        let mut cones = Vec::new();
        let mut cone_map = Vec::new();
        for &t in &containing {
            let sc: Vec<usize> = self.max_cones[t]
                .iter()
                .filter(|k| !cone.contains(k))
                .map(|k| index_of[k])
                .collect();
            cones.push(sc);
            cone_map.push(t);
        }
        let fan = Fan::new(qdim, rays, cones)?;
        Ok(StarFan {
            cone,
            fan,
            ray_map,
            scale,
            projection,
            cone_map,
        })
    }
}

/// Ordered rays `l_0, …, l_{n+1}` of a fan inside a two-dimensional cone
/// `σ`, with the multiplicities of the consecutive two-cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaOrdering {
    /// Ray indices `l_0, …, l_{n+1}`; `l_0` and `l_{n+1}` are the boundary.
    pub rays: Vec<usize>,
    /// `mults[j] = mult(cone(l_j, l_{j+1}))`, for `j = 0..=n`.
    pub mults: Vec<i64>,
    /// `skip_mults[j] = mult(cone(l_j, l_{j+2}))`, for `j = 0..n`.
    pub skip_mults: Vec<i64>,
    /// True when the orientation rule put the second input ray first.
    pub reversed: bool,
    /// Multiplicity of `σ` itself.
    pub cone_mult: i64,
}

impl SigmaOrdering {
    /// Interior rays `l_1, …, l_n`.
    pub fn interior(&self) -> &[usize] {
        let n = self.rays.len();
        &self.rays[1..n - 1]
    }

    /// Boundary rays `(l_0, l_{n+1})`.
    pub fn boundary(&self) -> (usize, usize) {
        (self.rays[0], *self.rays.last().unwrap())
    }

    /// Position `k` of a ray in the sequence.
    pub fn position(&self, ray: usize) -> Option<usize> {
        self.rays.iter().position(|&r| r == ray)
    }

    /// Checks `mult(σ_{j+1}) e_{l_{j−1}} + mult(σ_j) e_{l_{j+1}} =
    /// mult(σ_j + σ_{j+1}) e_{l_j}` for every interior position `j`, where
    /// `σ_j = cone(l_{j−1}, l_j)`.
    pub fn relation_holds(&self, fan: &Fan) -> bool {
        (1..self.rays.len() - 1).all(|j| {
            let (prev, cur, next) = (
                fan.ray(self.rays[j - 1]),
                fan.ray(self.rays[j]),
                fan.ray(self.rays[j + 1]),
            );
            let (m_left, m_right, m_both) = (self.mults[j - 1], self.mults[j], self.skip_mults[j - 1]);
            (0..fan.dim()).all(|t| m_right * prev[t] + m_left * next[t] == m_both * cur[t])
        })
    }
}

/// The quotient fan of a cone `c`, with its correspondence to the original
/// fan.
#[derive(Clone, Debug)]
pub struct StarFan {
    /// The cone `c` (sorted ray indices of the original fan).
    pub cone: Cone,
    /// The quotient fan in `N(c) = N / (N ∩ span c)`.
    pub fan: Fan,
    /// `ray_map[j]`: original ray `k(γ')` whose image spans star ray `j`.
    pub ray_map: Vec<usize>,
    /// `scale[j] = (mult(c), mult(γ'))`: the primitive star ray equals the
    /// image of `e_{k(γ')}` times `mult(c)/mult(γ')`.
    pub scale: Vec<(i64, i64)>,
    /// Rows: basis of `M ∩ c^⊥`; the quotient map is `v ↦ projection · v`.
    pub projection: IntMatrix,
    /// `cone_map[i]`: original maximal cone giving star maximal cone `i`.
    pub cone_map: Vec<usize>,
}

impl StarFan {
    /// Image of an original lattice vector in the quotient lattice.
    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        (0..self.projection.rows())
            .map(|j| dot(&self.projection.row_i64(j), v))
            .collect()
    }
}

/// All subsets of `items` of a given size, in lexicographic order.
pub fn subsets_of_size<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Standard example fans used throughout tests and documentation.
pub mod examples {
    use super::Fan;

    /// Fan of projective space `P^n`: rays `e_1, …, e_n, −Σ e_i`.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(n, rays, cones).expect("valid fan")
    }

    /// Fan of `P^1 × P^1`.
    pub fn p1_times_p1() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .expect("valid fan")
    }

    /// Hirzebruch surface `F_a`: rays `(1,0), (0,1), (−1,a), (0,−1)`.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .expect("valid fan")
    }

    /// Fan of `(P^1)^3`.
    pub fn p1_cubed() -> Fan {
        let mut rays = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = vec![0; 3];
                v[i] = s;
                rays.push(v);
            }
        }
        let mut cones = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    cones.push(vec![a, 2 + b, 4 + c]);
                }
            }
        }
        Fan::new(3, rays, cones).expect("valid fan")
    }

    /// Fan of the weighted projective space with weights `w` (with `w[0] = 1`):
    /// rays `e_1, …, e_n` and `−Σ w_i e_i` for `i ≥ 1`, maximal cones all
    /// `n`-subsets. The last ray is listed first so that ray `i` carries
    /// weight `w[i]`.
    pub fn weighted_projective(w: &[i64]) -> Fan {
        assert_eq!(w[0], 1, "first weight must be 1");
        let n = w.len() - 1;
        let mut rays = vec![w[1..].iter().map(|x| -x).collect::<Vec<i64>>()];
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            rays.push(v);
        }
        let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(n, rays, cones).expect("valid fan")
    }

    /// Smooth toric resolution of the octic weighted projective 4-space:
    /// rays `(1,0,0,0), (0,1,0,0), (0,0,1,0), (0,0,0,1), (−1,−2,−2,−2)` and the
    /// exceptional ray `(0,−1,−1,−1)`, which bisects the cone spanned by the
    /// first and fifth rays.
    pub fn resolved_octic() -> Fan {
        let rays = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![-1, -2, -2, -2],
            vec![0, -1, -1, -1],
        ];
        let mut cones = vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]];
        for pair in [[1, 2], [1, 3], [2, 3]] {
            cones.push(vec![0, 5, pair[0], pair[1]]);
            cones.push(vec![4, 5, pair[0], pair[1]]);
        }
        Fan::new(4, rays, cones).expect("valid fan")
    }

    /// A resolution of the weighted projective 3-space with weights
    /// `(1, 1, 2, 2)`: the exceptional ray bisects the singular 2-cone.
    pub fn resolved_p1122() -> Fan {
        // Ray 0 = −(e1 + 2 e2 + 2 e3) has weight 1, ray 1 = e1 weight 1,
        // rays 2, 3 weight 2; cone(0, 1) carries the A1 curve.
        let rays = vec![
            vec![-1, -2, -2],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![0, -1, -1],
        ];
        let cones = vec![
            vec![1, 2, 3],
            vec![0, 2, 3],
            vec![0, 4, 2],
            vec![0, 4, 3],
            vec![1, 4, 2],
            vec![1, 4, 3],
        ];
        Fan::new(3, rays, cones).expect("valid fan")
    }
}
