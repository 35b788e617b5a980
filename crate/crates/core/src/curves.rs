//! Picard and Albanese 1-motives of seminormal curves whose components are
//! lines and elliptic curves, and the Abel-Jacobi map.
//!
//! Everything is assembled from one construction: given degree-zero
//! divisors `l_i` (the lattice) and degree-zero divisors `x_j` (torus
//! characters) with disjoint supports, the motive `[Z^r -> G]` where `G` is
//! the extension of the product of the elliptic components by the torus
//! with characters `x_j`, and `u(l_i)` has torus coordinate
//! `sum l_p x_q log k(q, p)`, with `k` the sigma function on elliptic
//! components and the bracket of homogeneous coordinates on lines.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Float, ToPrimitive};

use crate::config::Config;
use crate::duality::cartier_dual;
use crate::error::{Error, Result};
use crate::iso::{iso_test, IsoOutcome};
use crate::motives::{AbelianVariety, MotiveMorphism, OneMotive, SemiAbelianVariety};
use crate::numeric::{CMat, RMat, C64, TWO_PI_I};
use crate::report::{Report, Status};
use crate::zlinalg::{kernel_basis, IntMatrix};

/// A point of a component: `Finite(z)` or the point at infinity of a line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coord {
    Finite(C64),
    Infinity,
}

impl Coord {
    fn homogeneous(self) -> (C64, C64) {
        match self {
            Coord::Finite(z) => (z, C64::new(1.0, 0.0)),
            Coord::Infinity => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub label: String,
    pub genus: u32,
    pub tau: Option<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkedPoint {
    pub label: String,
    pub component: String,
    pub coord: Coord,
}

/// Smooth components, marked points on them, identification classes of
/// points (the singularities) and deleted points (the boundary).
#[derive(Clone, Debug)]
pub struct CurveConfiguration {
    components: Vec<Component>,
    points: Vec<MarkedPoint>,
    gluings: Vec<Vec<String>>,
    deleted: Vec<String>,
    /// Component index of every point.
    comp_of: Vec<usize>,
    index: BTreeMap<String, usize>,
    sigmas: Vec<Option<EllipticSigma>>,
    /// Index of the elliptic factor of each component.
    factor_of: Vec<Option<usize>>,
}

impl CurveConfiguration {
    pub fn new(
        components: Vec<Component>,
        points: Vec<MarkedPoint>,
        gluings: Vec<Vec<String>>,
        deleted: Vec<String>,
        cfg: &Config,
    ) -> Result<Self> {
        let mut comp_index = BTreeMap::new();
        let mut sigmas = Vec::with_capacity(components.len());
        let mut factor_of = Vec::with_capacity(components.len());
        let mut g = 0;
        for (i, c) in components.iter().enumerate() {
            if comp_index.insert(c.label.clone(), i).is_some() {
                return Err(Error::Curve(format!("duplicate component label {}", c.label)));
            }
            match (c.genus, c.tau) {
                (0, None) => {
                    sigmas.push(None);
                    factor_of.push(None);
                }
                (1, Some(tau)) => {
                    if !(tau.im > 0.0) || !tau.re.is_finite() {
                        return Err(Error::Curve(format!("tau of {} must lie in the upper half plane", c.label)));
                    }
                    sigmas.push(Some(EllipticSigma::new(tau, cfg)?));
                    factor_of.push(Some(g));
                    g += 1;
                }
                (0, Some(_)) => return Err(Error::Curve(format!("component {} has genus 0 and a tau", c.label))),
                (1, None) => return Err(Error::Curve(format!("component {} has genus 1 but no tau", c.label))),
                (k, _) => return Err(Error::Curve(format!("component {} has genus {k}; only 0 and 1 are supported", c.label))),
            }
        }
        let mut index = BTreeMap::new();
        let mut comp_of = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.label.clone(), i).is_some() || comp_index.contains_key(&p.label) {
                return Err(Error::Curve(format!("duplicate label {}", p.label)));
            }
            let c = *comp_index
                .get(&p.component)
                .ok_or_else(|| Error::Curve(format!("point {} lies on unknown component {}", p.label, p.component)))?;
            if components[c].genus == 1 && p.coord == Coord::Infinity {
                return Err(Error::Curve(format!("point {} on an elliptic component needs a finite coordinate", p.label)));
            }
            if let Coord::Finite(z) = p.coord {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::Curve(format!("point {} has a non-finite coordinate", p.label)));
                }
            }
            comp_of.push(c);
        }
        let curve = CurveConfiguration {
            components,
            points,
            gluings: Vec::new(),
            deleted: Vec::new(),
            comp_of,
            index,
            sigmas,
            factor_of,
        };
        for i in 0..curve.points.len() {
            for j in 0..i {
                if curve.comp_of[i] == curve.comp_of[j] && curve.coincide(i, j, cfg.tol) {
                    return Err(Error::Curve(format!(
                        "points {} and {} coincide",
                        curve.points[j].label, curve.points[i].label
                    )));
                }
            }
        }
        let mut curve = curve;
        let mut glued = BTreeMap::new();
        for class in &gluings {
            if class.len() < 2 {
                return Err(Error::Curve("identification classes need at least two points".into()));
            }
            for l in class {
                curve.point_index(l)?;
                glued.insert(l.clone(), ());
            }
        }
        for l in &deleted {
            curve.point_index(l)?;
            if glued.contains_key(l) {
                return Err(Error::Curve(format!("point {l} is both glued and deleted")));
            }
        }
        let mut deleted = deleted;
        deleted.sort();
        deleted.dedup();
        curve.gluings = merge_classes(&gluings);
        curve.deleted = deleted;
        Ok(curve)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    /// Identification classes after merging classes that share a point, each sorted.
    pub fn gluings(&self) -> &[Vec<String>] {
        &self.gluings
    }

    pub fn deleted(&self) -> &[String] {
        &self.deleted
    }

    pub fn is_proper(&self) -> bool {
        self.deleted.is_empty()
    }

    /// Number of elliptic components.
    pub fn genus_sum(&self) -> usize {
        self.factor_of.iter().flatten().count()
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::Curve(format!("unknown point label {label}")))
    }

    fn coincide(&self, i: usize, j: usize, tol: f64) -> bool {
        let c = self.comp_of[i];
        match &self.sigmas[c] {
            None => {
                let (a, b) = (self.points[i].coord.homogeneous(), self.points[j].coord.homogeneous());
                let scale = (a.0.norm() + a.1.norm()) * (b.0.norm() + b.1.norm());
                bracket(a, b).norm() <= tol * scale
            }
            Some(s) => {
                let (Coord::Finite(a), Coord::Finite(b)) = (self.points[i].coord, self.points[j].coord) else {
                    return false;
                };
                s.distance_to_lattice(a - b) <= tol.max(1e-12)
            }
        }
    }

    /// Same configuration with the boundary replaced.
    pub fn with_deleted(&self, deleted: Vec<String>, cfg: &Config) -> Result<Self> {
        CurveConfiguration::new(self.components.clone(), self.points.clone(), self.gluings.clone(), deleted, cfg)
    }

    /// The normalization with boundary `F`: same components and points, no gluings.
    pub fn normalization(&self, cfg: &Config) -> Result<Self> {
        CurveConfiguration::new(self.components.clone(), self.points.clone(), Vec::new(), self.deleted.clone(), cfg)
    }
}

fn merge_classes(classes: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut labels: Vec<String> = classes.iter().flatten().cloned().collect();
    labels.sort();
    labels.dedup();
    let pos = |l: &String| labels.binary_search(l).unwrap_or(0);
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for class in classes {
        let a = pos(&class[0]);
        for l in &class[1..] {
            let (x, y) = (find(&mut parent, a), find(&mut parent, pos(l)));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(l.clone());
    }
    groups.into_values().collect()
}

/// `q_x p_w - q_w p_x`.
fn bracket(q: (C64, C64), p: (C64, C64)) -> C64 {
    q.0 * p.1 - q.1 * p.0
}

/// Dual graph: one vertex per component, and for each identification class
/// an edge from its smallest label to each other label.
#[derive(Clone, Debug, PartialEq)]
pub struct DualGraph {
    pub vertices: usize,
    /// Edges as `(p, q)` point indices, oriented from `p` to `q`.
    pub edges: Vec<(usize, usize)>,
    /// Number of connected components of the graph.
    pub connected: usize,
    /// Columns form a basis of the cycle space `ker(Z^E -> Z^V)`.
    pub cycles: IntMatrix,
    pub b1: usize,
}

pub fn dual_graph(c: &CurveConfiguration) -> DualGraph {
    let v = c.components.len();
    let mut edges = Vec::new();
    for class in &c.gluings {
        let p = c.index[&class[0]];
        for l in &class[1..] {
            edges.push((p, c.index[l]));
        }
    }
    let mut boundary = IntMatrix::zeros(v, edges.len());
    for (e, &(p, q)) in edges.iter().enumerate() {
        let (a, b) = (c.comp_of[p], c.comp_of[q]);
        boundary[(b, e)] += BigInt::from(1);
        boundary[(a, e)] -= BigInt::from(1);
    }
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut connected = v;
    for &(p, q) in &edges {
        let (x, y) = (find(&mut parent, c.comp_of[p]), find(&mut parent, c.comp_of[q]));
        if x != y {
            parent[x] = y;
            connected -= 1;
        }
    }
    let cycles = kernel_basis(&boundary);
    let b1 = cycles.cols();
    debug_assert_eq!(b1 + v, edges.len() + connected);
    DualGraph { vertices: v, edges, connected, cycles, b1 }
}

/// Topological first Betti number of a proper configuration, `E - V + c + 2 sum g`.
pub fn first_betti_number(c: &CurveConfiguration) -> usize {
    let gr = dual_graph(c);
    gr.edges.len() + gr.connected - gr.vertices + 2 * c.genus_sum()
}

/// Weierstrass sigma function of the lattice `Z + tau Z`, through Jacobi's `theta_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticSigma {
    pub tau: C64,
    /// Quasi-periods for the periods `1` and `tau`.
    pub eta1: C64,
    pub eta2: C64,
    terms: usize,
    tol: f64,
    theta1_prime: C64,
}

impl EllipticSigma {
    pub fn new(tau: C64, cfg: &Config) -> Result<Self> {
        let terms = cfg.sigma_terms.max(1);
        let nome = (C64::new(0.0, PI) * tau).exp();
        if nome.norm() >= 1.0 {
            return Err(Error::Curve("tau must lie in the upper half plane".into()));
        }
        let derivs = |n: usize| {
            let (mut d1, mut d3) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            for k in 0..n {
                let h = k as f64 + 0.5;
                let w = (C64::new(0.0, PI * h * h) * tau).exp();
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                let m = (2 * k + 1) as f64;
                d1 += w * (2.0 * s * m);
                d3 -= w * (2.0 * s * m * m * m);
            }
            (d1, d3)
        };
        let (d1, d3) = derivs(terms);
        let (e1, e3) = derivs(2 * terms);
        let tol = cfg.tol;
        if (d1 - e1).norm() > tol * e1.norm() || (d3 - e3).norm() > tol * e3.norm() {
            return Err(Error::Numerical(format!("theta series for tau = {tau} not stable at {terms} terms")));
        }
        let eta1 = -(d3 * (PI * PI)) / (d1 * 3.0);
        let eta2 = eta1 * tau - TWO_PI_I;
        Ok(EllipticSigma { tau, eta1, eta2, terms, tol, theta1_prime: d1 })
    }

    fn theta1(&self, v: C64, n: usize) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for k in 0..n {
            let h = k as f64 + 0.5;
            let w = (C64::new(0.0, PI * h * h) * self.tau).exp();
            let sign = if k % 2 == 0 { 2.0 } else { -2.0 };
            s += w * (v * (2 * k + 1) as f64).sin() * sign;
        }
        s
    }

    /// `z = z0 + m + n tau` with `z0` in the fundamental parallelogram around 0.
    fn reduce(&self, z: C64) -> (C64, i64, i64) {
        let n = Float::round(z.im / self.tau.im);
        let w = z - self.tau * n;
        let m = Float::round(w.re);
        (w - m, m as i64, n as i64)
    }

    pub fn distance_to_lattice(&self, z: C64) -> f64 {
        let (z0, _, _) = self.reduce(z);
        let mut best = z0.norm();
        for a in -1..=1 {
            for b in -1..=1 {
                best = best.min((z0 - self.tau * b as f64 - a as f64).norm());
            }
        }
        best
    }

    /// A logarithm of `sigma(z)`; defined modulo `2 pi i`.
    pub fn log_sigma(&self, z: C64) -> Result<C64> {
        let (z0, m, n) = self.reduce(z);
        let v = z0 * PI;
        let t1 = self.theta1(v, self.terms);
        let t2 = self.theta1(v, 2 * self.terms);
        if t2.norm() == 0.0 || (t1 - t2).norm() > self.tol * t2.norm() {
            return Err(Error::Numerical(format!("sigma({z}) not stable under doubling the series length")));
        }
        let base = t2.ln() - (self.theta1_prime * PI).ln() + self.eta1 * z0 * z0 * 0.5;
        let (mf, nf) = (m as f64, n as f64);
        let omega = self.tau * nf + mf;
        let eta = self.eta1 * mf + self.eta2 * nf;
        let sign = C64::new(0.0, PI * ((m + n + m * n).rem_euclid(2)) as f64);
        Ok(base + eta * (z0 + omega * 0.5) + sign)
    }

    pub fn sigma(&self, z: C64) -> Result<C64> {
        if self.distance_to_lattice(z) == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        Ok(self.log_sigma(z)?.exp())
    }
}

/// Integer vectors indexed by the points of a configuration.
pub type Divisor = Vec<i64>;

/// Formal point used by divisors that are not among the marked points.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Site {
    comp: usize,
    coord: Coord,
}

impl CurveConfiguration {
    fn site(&self, p: usize) -> Site {
        Site { comp: self.comp_of[p], coord: self.points[p].coord }
    }

    /// `log k(q, p)` for two sites on one component.
    fn log_kernel(&self, q: Site, p: Site) -> Result<C64> {
        match &self.sigmas[q.comp] {
            None => {
                let b = bracket(q.coord.homogeneous(), p.coord.homogeneous());
                if b.norm() == 0.0 {
                    return Err(Error::Divisor("supports of divisor and character meet".into()));
                }
                Ok(b.ln())
            }
            Some(s) => {
                let (Coord::Finite(a), Coord::Finite(b)) = (q.coord, p.coord) else {
                    return Err(Error::Curve("elliptic points need finite coordinates".into()));
                };
                s.log_sigma(a - b)
            }
        }
    }

    /// `sum l_p x_q log k(q, p)` over pairs on a common component.
    fn pairing(&self, l: &[(Site, i64)], x: &[(Site, i64)]) -> Result<C64> {
        let mut s = C64::new(0.0, 0.0);
        for &(p, a) in l {
            for &(q, b) in x {
                if a != 0 && b != 0 && p.comp == q.comp {
                    s += self.log_kernel(q, p)? * (a * b) as f64;
                }
            }
        }
        Ok(s)
    }

    fn sites(&self, d: &[i64]) -> Vec<(Site, i64)> {
        d.iter().enumerate().filter(|(_, &a)| a != 0).map(|(p, &a)| (self.site(p), a)).collect()
    }

    /// Abelian coordinates `sum n_p z_p` per elliptic factor.
    fn abelian_coords(&self, d: &[(Site, i64)]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.genus_sum()];
        for &(s, a) in d {
            if let (Some(f), Coord::Finite(z)) = (self.factor_of[s.comp], s.coord) {
                out[f] += z * a as f64;
            }
        }
        out
    }

    fn multidegree(&self, d: &[(Site, i64)]) -> Vec<i64> {
        let mut deg = vec![0; self.components.len()];
        for &(s, a) in d {
            deg[s.comp] += a;
        }
        deg
    }

    fn omega(&self) -> CMat {
        let taus: Vec<C64> = self.sigmas.iter().flatten().map(|s| s.tau).collect();
        let mut o = CMat::zeros(taus.len(), taus.len());
        for (i, t) in taus.iter().enumerate() {
            o[(i, i)] = *t;
        }
        o
    }

    /// Extension data of the torus with characters `chars` over the product of the elliptic factors.
    fn semiabelian(&self, chars: &[Divisor], cfg: &Config) -> Result<SemiAbelianVariety> {
        let g = self.genus_sum();
        let mut eta = CMat::zeros(chars.len(), 2 * g);
        for (j, x) in chars.iter().enumerate() {
            let sx = self.sites(x);
            if self.multidegree(&sx).iter().any(|&d| d != 0) {
                return Err(Error::Divisor("torus characters must have degree zero on every component".into()));
            }
            let z = self.abelian_coords(&sx);
            for (c, s) in self.sigmas.iter().enumerate() {
                if let (Some(s), Some(f)) = (s, self.factor_of[c]) {
                    eta[(j, f)] = -(s.eta1 * z[f]);
                    eta[(j, g + f)] = -(s.eta2 * z[f]);
                }
            }
        }
        SemiAbelianVariety::new(chars.len(), AbelianVariety::new(self.omega(), cfg)?, eta)
    }

    /// `[Z^r -> G]` with `l_i -> class of l_i`, for torus characters `chars`.
    pub fn divisor_motive(&self, lattice: &[Divisor], chars: &[Divisor], cfg: &Config) -> Result<OneMotive> {
        let n = self.points.len();
        if lattice.iter().chain(chars).any(|d| d.len() != n) {
            return Err(Error::Dimension(format!("divisors must have {n} coefficients")));
        }
        for l in lattice {
            for x in chars {
                if l.iter().zip(x).any(|(a, b)| *a != 0 && *b != 0) {
                    return Err(Error::Divisor("lattice divisors and characters must have disjoint supports".into()));
                }
            }
        }
        let g_var = self.semiabelian(chars, cfg)?;
        let (t, g) = (chars.len(), self.genus_sum());
        let mut u = CMat::zeros(t + g, lattice.len());
        for (i, l) in lattice.iter().enumerate() {
            let sl = self.sites(l);
            if self.multidegree(&sl).iter().any(|&d| d != 0) {
                return Err(Error::Divisor("lattice divisors must have degree zero on every component".into()));
            }
            for (j, x) in chars.iter().enumerate() {
                u[(j, i)] = self.pairing(&sl, &self.sites(x))?;
            }
            for (f, z) in self.abelian_coords(&sl).into_iter().enumerate() {
                u[(t + f, i)] = z;
            }
        }
        OneMotive::new(lattice.len(), g_var, u)
    }

    /// Basis of the divisors on `labels` of degree zero on every component.
    pub fn degree_zero_lattice(&self, labels: &[String]) -> Result<Vec<Divisor>> {
        let idx: Vec<usize> = labels.iter().map(|l| self.point_index(l)).collect::<Result<_>>()?;
        let mut inc = IntMatrix::zeros(self.components.len(), idx.len());
        for (k, &p) in idx.iter().enumerate() {
            inc[(self.comp_of[p], k)] = BigInt::from(1);
        }
        let ker = kernel_basis(&inc);
        Ok((0..ker.cols())
            .map(|j| {
                let mut d = vec![0; self.points.len()];
                for (k, &p) in idx.iter().enumerate() {
                    d[p] = ker[(k, j)].to_i64().unwrap_or(0);
                }
                d
            })
            .collect())
    }

    /// Divisors `sum n_e ([p_e] - [q_e])` of a basis of graph cycles.
    pub fn cycle_divisors(&self) -> Vec<Divisor> {
        let gr = dual_graph(self);
        (0..gr.b1)
            .map(|j| {
                let mut d = vec![0; self.points.len()];
                for (e, &(p, q)) in gr.edges.iter().enumerate() {
                    let n = gr.cycles[(e, j)].to_i64().unwrap_or(0);
                    d[p] += n;
                    d[q] -= n;
                }
                d
            })
            .collect()
    }
}

/// `Pic^0` of the normalization relative to the boundary.
pub fn relative_pic0(c: &CurveConfiguration, cfg: &Config) -> Result<SemiAbelianVariety> {
    if !c.gluings.is_empty() {
        return Err(Error::Curve("relative Pic^0 is built on a configuration without gluings".into()));
    }
    c.semiabelian(&c.degree_zero_lattice(&c.deleted)?, cfg)
}

/// `[Z^{cycles} -> Pic^0(normalization, F)]`.
pub fn pic_minus(c: &CurveConfiguration, cfg: &Config) -> Result<OneMotive> {
    c.divisor_motive(&c.cycle_divisors(), &c.degree_zero_lattice(&c.deleted)?, cfg)
}

/// `[Div^0_F -> Pic^0]` of the compactified curve; the generalized Jacobian when proper.
pub fn pic_plus(c: &CurveConfiguration, cfg: &Config) -> Result<OneMotive> {
    c.divisor_motive(&c.degree_zero_lattice(&c.deleted)?, &c.cycle_divisors(), cfg)
}

pub fn alb_plus(c: &CurveConfiguration, cfg: &Config) -> Result<OneMotive> {
    Ok(cartier_dual(&pic_minus(c, cfg)?, cfg)?.0)
}

pub fn alb_minus(c: &CurveConfiguration, cfg: &Config) -> Result<OneMotive> {
    Ok(cartier_dual(&pic_plus(c, cfg)?, cfg)?.0)
}

/// All four motives of a configuration.
#[derive(Clone, Debug)]
pub struct CurveMotives {
    pub pic_minus: OneMotive,
    pub pic_plus: OneMotive,
    pub alb_plus: OneMotive,
    pub alb_minus: OneMotive,
}

pub fn curve_motives(c: &CurveConfiguration, cfg: &Config) -> Result<CurveMotives> {
    let pm = pic_minus(c, cfg)?;
    let pp = pic_plus(c, cfg)?;
    Ok(CurveMotives {
        alb_plus: cartier_dual(&pm, cfg)?.0,
        alb_minus: cartier_dual(&pp, cfg)?.0,
        pic_minus: pm,
        pic_plus: pp,
    })
}

/// One term `n [point]` of a divisor on the regular locus.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorTerm {
    pub component: String,
    pub coord: Coord,
    pub multiplicity: i64,
}

/// The image of a divisor, as a point of `Lie G / Lambda_G` for `G` the
/// semi-abelian part of `pic_plus`.
#[derive(Clone, Debug)]
pub struct AbelJacobiPoint {
    pub model: OneMotive,
    pub lie: Vec<C64>,
}

impl AbelJacobiPoint {
    /// `exp` of the torus coordinates.
    pub fn torus_values(&self) -> Vec<C64> {
        self.lie[..self.model.t()].iter().map(|w| w.exp()).collect()
    }

    /// Integer coordinates of `lie` in the period lattice, if it is a lattice vector.
    pub fn lattice_coordinates(&self, tol: f64) -> Option<Vec<i64>> {
        let p = self.model.period_matrix();
        if p.cols() == 0 {
            return self.lie.iter().all(|z| z.norm() <= tol).then(Vec::new);
        }
        let real = p.re().vstack(&p.im());
        let rhs: Vec<f64> = self.lie.iter().map(|z| z.re).chain(self.lie.iter().map(|z| z.im)).collect();
        let x = real.lstsq(&RMat::column(&rhs))?;
        let z: Vec<i64> = x.entries().iter().map(|&v| Float::round(v) as i64).collect();
        let back = p.mul(&CMat::from_vec(z.len(), 1, z.iter().map(|&v| C64::new(v as f64, 0.0)).collect()));
        let d = (0..self.lie.len()).map(|i| (back[(i, 0)] - self.lie[i]).norm()).fold(0.0, f64::max);
        (d <= tol * (1.0 + p.max_abs())).then_some(z)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.lattice_coordinates(tol).is_some()
    }

    /// Difference of two points, reduced to the identity test.
    pub fn same_as(&self, other: &AbelJacobiPoint, tol: f64) -> bool {
        let lie = self.lie.iter().zip(&other.lie).map(|(a, b)| a - b).collect();
        AbelJacobiPoint { model: self.model.clone(), lie }.is_identity(tol)
    }

    /// The point carried along a morphism out of the model, on Lie algebras.
    pub fn push(&self, m: &MotiveMorphism) -> Result<AbelJacobiPoint> {
        if m.source != self.model {
            return Err(Error::Morphism("morphism does not start at the Abel-Jacobi model".into()));
        }
        let v = m.phi.mul_vec(&self.lie);
        Ok(AbelJacobiPoint { model: OneMotive::from_semiabelian(m.target.semiabelian().clone()), lie: v })
    }
}

/// `a^+(D)` for a divisor of degree zero on every component, supported away
/// from the glued and deleted points.
pub fn abel_jacobi_plus(c: &CurveConfiguration, divisor: &[DivisorTerm], cfg: &Config) -> Result<AbelJacobiPoint> {
    let comp_index: BTreeMap<&str, usize> =
        c.components.iter().enumerate().map(|(i, k)| (k.label.as_str(), i)).collect();
    let mut sites = Vec::with_capacity(divisor.len());
    for term in divisor {
        let comp = *comp_index
            .get(term.component.as_str())
            .ok_or_else(|| Error::Divisor(format!("unknown component {}", term.component)))?;
        if c.components[comp].genus == 1 && term.coord == Coord::Infinity {
            return Err(Error::Divisor("points on elliptic components need finite coordinates".into()));
        }
        sites.push((Site { comp, coord: term.coord }, term.multiplicity));
    }
    let special: Vec<usize> = c
        .gluings
        .iter()
        .flatten()
        .chain(&c.deleted)
        .map(|l| c.index[l])
        .collect();
    for &(s, a) in &sites {
        if a == 0 {
            continue;
        }
        for &p in &special {
            let other = c.site(p);
            if other.comp == s.comp && sites_coincide(c, s, other, cfg.tol) {
                return Err(Error::Divisor(format!("divisor meets the special point {}", c.points[p].label)));
            }
        }
    }
    if c.multidegree(&sites).iter().any(|&d| d != 0) {
        return Err(Error::Divisor("divisor must have degree zero on every component".into()));
    }
    let model = OneMotive::from_semiabelian(c.semiabelian(&c.cycle_divisors(), cfg)?);
    let mut lie = Vec::with_capacity(model.t() + model.g());
    for x in c.cycle_divisors() {
        lie.push(c.pairing(&sites, &c.sites(&x))?);
    }
    lie.extend(c.abelian_coords(&sites));
    Ok(AbelJacobiPoint { model, lie })
}

fn sites_coincide(c: &CurveConfiguration, a: Site, b: Site, tol: f64) -> bool {
    match &c.sigmas[a.comp] {
        None => {
            let (x, y) = (a.coord.homogeneous(), b.coord.homogeneous());
            bracket(x, y).norm() <= tol * (x.0.norm() + x.1.norm()) * (y.0.norm() + y.1.norm())
        }
        Some(s) => match (a.coord, b.coord) {
            (Coord::Finite(x), Coord::Finite(y)) => s.distance_to_lattice(x - y) <= tol.max(1e-12),
            _ => false,
        },
    }
}

fn iso_finding(rep: &mut Report, name: &str, a: &OneMotive, b: &OneMotive, cfg: &Config) {
    match iso_test(a, b, cfg) {
        IsoOutcome::VerifiedIso(_) => rep.check(name, true, "verified isomorphism"),
        IsoOutcome::VerifiedDistinct(why) => rep.check(name, false, why),
        IsoOutcome::Unknown(why) => rep.push(name, Status::Unknown, why),
    }
}

/// `[Div^0_S -> Pic^0(C, T)]^v` against `[Div^0_T -> Pic^0(C, S)]` on a smooth proper configuration.
pub fn check_lemma_dual(c: &CurveConfiguration, s: &[String], t: &[String], cfg: &Config) -> Result<Report> {
    if !c.gluings.is_empty() || !c.deleted.is_empty() {
        return Err(Error::Curve("the duality check runs on smooth proper components".into()));
    }
    if let Some(l) = s.iter().find(|l| t.contains(l)) {
        return Err(Error::Curve(format!("point {l} lies in both S and T")));
    }
    let (ls, lt) = (c.degree_zero_lattice(s)?, c.degree_zero_lattice(t)?);
    let lhs = c.divisor_motive(&ls, &lt, cfg)?;
    let rhs = c.divisor_motive(&lt, &ls, cfg)?;
    let dual = cartier_dual(&lhs, cfg)?.0;
    let mut rep = Report::new("lemma_dual");
    rep.check(
        "ranks",
        dual.ranks() == rhs.ranks(),
        format!("dual of the left side {:?}, right side {:?}", dual.ranks(), rhs.ranks()),
    );
    iso_finding(&mut rep, "iso", &dual, &rhs, cfg);
    Ok(rep)
}

/// `Pic^0(C, F)^v` against `[ker(Z^F -> Z^comps) -> prod Jac]` with `u` the Abel-Jacobi differences.
pub fn picdual_check(c: &CurveConfiguration, cfg: &Config) -> Result<Report> {
    let g = OneMotive::from_semiabelian(relative_pic0(c, cfg)?);
    let lattice = c.degree_zero_lattice(&c.deleted)?;
    let expected = c.divisor_motive(&lattice, &[], cfg)?;
    let dual = cartier_dual(&g, cfg)?.0;
    let mut rep = Report::new("picdual");
    rep.check("ranks", dual.ranks() == expected.ranks(), format!("{:?} vs {:?}", dual.ranks(), expected.ranks()));
    iso_finding(&mut rep, "iso", &dual, &expected, cfg);
    Ok(rep)
}

/// Structural and isomorphism checks for one configuration.
pub fn curve_report(c: &CurveConfiguration, cfg: &Config) -> Result<Report> {
    let ms = curve_motives(c, cfg)?;
    let gr = dual_graph(c);
    let mut rep = Report::new("curve");
    if c.is_proper() {
        rep.check(
            "torus_rank_is_b1",
            ms.pic_plus.t() == gr.b1,
            format!("t(Pic+) = {}, b1 = {}", ms.pic_plus.t(), gr.b1),
        );
        let n = ms.pic_minus.total_rank();
        let b = first_betti_number(c);
        rep.check("betti", n == b, format!("rank of the Hodge lattice {n}, first Betti number {b}"));
    }
    iso_finding(&mut rep, "alb_plus_pic_plus", &ms.alb_plus, &ms.pic_plus, cfg);
    iso_finding(&mut rep, "alb_minus_pic_minus", &ms.alb_minus, &ms.pic_minus, cfg);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> C64 {
        C64::new(x, y)
    }

    fn line(l: &str) -> Component {
        Component { label: l.into(), genus: 0, tau: None }
    }

    fn elliptic(l: &str, tau: C64) -> Component {
        Component { label: l.into(), genus: 1, tau: Some(tau) }
    }

    fn pt(l: &str, comp: &str, coord: Coord) -> MarkedPoint {
        MarkedPoint { label: l.into(), component: comp.into(), coord }
    }

    fn fin(x: f64, y: f64) -> Coord {
        Coord::Finite(c(x, y))
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| String::from(*s)).collect()
    }

    fn nodal_cubic(cfg: &Config) -> CurveConfiguration {
        CurveConfiguration::new(
            vec![line("X")],
            vec![pt("n0", "X", fin(0.0, 0.0)), pt("ninf", "X", Coord::Infinity)],
            vec![labels(&["n0", "ninf"])],
            vec![],
            cfg,
        )
        .unwrap()
    }

    #[test]
    fn sigma_is_odd_and_normalized() {
        let cfg = Config::default();
        let s = EllipticSigma::new(c(0.17, 1.3), &cfg).unwrap();
        let z = c(0.21, -0.33);
        assert!((s.sigma(z).unwrap() + s.sigma(-z).unwrap()).norm() < 1e-12);
        let h = c(1e-5, 2e-5);
        assert!((s.sigma(h).unwrap() / h - 1.0).norm() < 1e-8);
    }

    #[test]
    fn quasi_period_matches_eisenstein_series() {
        let cfg = Config::default();
        let tau = c(-0.23, 0.94);
        let s = EllipticSigma::new(tau, &cfg).unwrap();
        let q2 = (TWO_PI_I * tau).exp();
        let mut e2 = c(1.0, 0.0);
        let mut qn = q2;
        for n in 1..200 {
            e2 -= qn * (24.0 * n as f64) / (c(1.0, 0.0) - qn);
            qn *= q2;
        }
        let expected = e2 * (PI * PI / 3.0);
        assert!((s.eta1 - expected).norm() < 1e-10, "{} vs {expected}", s.eta1);
    }

    #[test]
    fn graph_examples() {
        let cfg = Config::default();
        assert_eq!(dual_graph(&nodal_cubic(&cfg)).b1, 1);
        let tree = CurveConfiguration::new(
            vec![line("A"), line("B")],
            vec![pt("a", "A", fin(0.0, 0.0)), pt("b", "B", fin(1.0, 0.0))],
            vec![labels(&["a", "b"])],
            vec![],
            &cfg,
        )
        .unwrap();
        assert_eq!(dual_graph(&tree).b1, 0);
        let tri = CurveConfiguration::new(
            vec![line("A"), line("B"), line("C")],
            vec![
                pt("a0", "A", fin(0.0, 0.0)),
                pt("a1", "A", Coord::Infinity),
                pt("b0", "B", fin(0.0, 0.0)),
                pt("b1", "B", Coord::Infinity),
                pt("c0", "C", fin(0.0, 0.0)),
                pt("c1", "C", Coord::Infinity),
            ],
            vec![labels(&["a1", "b0"]), labels(&["b1", "c0"]), labels(&["c1", "a0"])],
            vec![],
            &cfg,
        )
        .unwrap();
        let gr = dual_graph(&tri);
        assert_eq!((gr.vertices, gr.edges.len(), gr.b1), (3, 3, 1));
        assert_eq!(alb_plus(&tri, &cfg).unwrap().ranks(), (0, 1, 0));
    }

    #[test]
    fn nodal_cubic_motives_and_abel_jacobi() {
        let cfg = Config::default();
        let x = nodal_cubic(&cfg);
        let ms = curve_motives(&x, &cfg).unwrap();
        assert_eq!(ms.pic_minus.ranks(), (1, 0, 0));
        assert_eq!(ms.pic_plus.ranks(), (0, 1, 0));
        assert_eq!(ms.alb_plus.ranks(), (0, 1, 0));
        assert_eq!(ms.alb_minus.ranks(), (1, 0, 0));
        let d = [
            DivisorTerm { component: "X".into(), coord: fin(4.0, 0.0), multiplicity: 1 },
            DivisorTerm { component: "X".into(), coord: fin(2.0, 0.0), multiplicity: -1 },
        ];
        let p = abel_jacobi_plus(&x, &d, &cfg).unwrap();
        assert!((p.torus_values()[0] - 2.0).norm() < 1e-12);
        assert!(abel_jacobi_plus(&x, &[], &cfg).unwrap().is_identity(cfg.tol));
        let node = [
            DivisorTerm { component: "X".into(), coord: fin(0.0, 0.0), multiplicity: 1 },
            DivisorTerm { component: "X".into(), coord: fin(3.0, 0.0), multiplicity: -1 },
        ];
        assert!(matches!(abel_jacobi_plus(&x, &node, &cfg), Err(Error::Divisor(_))));
        let odd = [DivisorTerm { component: "X".into(), coord: fin(3.0, 0.0), multiplicity: 1 }];
        assert!(matches!(abel_jacobi_plus(&x, &odd, &cfg), Err(Error::Divisor(_))));
    }

    #[test]
    fn glued_elliptic_curve() {
        let cfg = Config::default();
        let z0 = c(0.3, 0.4);
        let e = CurveConfiguration::new(
            vec![elliptic("E", c(0.0, 1.0))],
            vec![pt("p", "E", fin(0.0, 0.0)), pt("q", "E", Coord::Finite(z0))],
            vec![labels(&["p", "q"])],
            vec![],
            &cfg,
        )
        .unwrap();
        let m = pic_minus(&e, &cfg).unwrap();
        assert_eq!(m.ranks(), (1, 0, 1));
        assert!((m.u_lift()[(0, 0)] + z0).norm() < 1e-15);
        assert_eq!(alb_plus(&e, &cfg).unwrap().ranks(), (0, 1, 1));
    }

    #[test]
    fn relative_pic0_ranks() {
        let cfg = Config::default();
        let p1 = CurveConfiguration::new(
            vec![line("P")],
            vec![pt("a", "P", fin(0.0, 0.0)), pt("b", "P", fin(1.0, 0.0)), pt("c", "P", Coord::Infinity)],
            vec![],
            labels(&["a", "b", "c"]),
            &cfg,
        )
        .unwrap();
        let g = relative_pic0(&p1, &cfg).unwrap();
        assert_eq!((g.t(), g.g()), (2, 0));
        let e = CurveConfiguration::new(vec![elliptic("E", c(0.2, 1.1))], vec![pt("p", "E", fin(0.1, 0.1))], vec![], labels(&["p"]), &cfg)
            .unwrap();
        let g = relative_pic0(&e, &cfg).unwrap();
        assert_eq!((g.t(), g.g()), (0, 1));
    }

    #[test]
    fn representatives_of_points_do_not_matter() {
        let cfg = Config::default().with_tol(1e-6);
        let tau = c(0.1, 1.2);
        let make = |dz: C64| {
            CurveConfiguration::new(
                vec![elliptic("E", tau)],
                vec![
                    pt("p", "E", fin(0.0, 0.0)),
                    pt("q", "E", Coord::Finite(c(0.3, 0.4) + dz)),
                    pt("s", "E", fin(0.45, -0.3)),
                    pt("u", "E", fin(0.1, 0.7)),
                ],
                vec![],
                vec![],
                &cfg,
            )
            .unwrap()
        };
        let (a, b) = (make(c(0.0, 0.0)), make(tau - 2.0));
        let (l, x) = (labels(&["p", "q"]), labels(&["s", "u"]));
        let build = |k: &CurveConfiguration, l: &[String], x: &[String]| {
            k.divisor_motive(&k.degree_zero_lattice(l).unwrap(), &k.degree_zero_lattice(x).unwrap(), &cfg).unwrap()
        };
        let (ma, mb) = (build(&a, &l, &x), build(&b, &l, &x));
        assert_eq!(ma.eta(), mb.eta());
        let (n, d) = (ma.r(), ma.semiabelian().lie_dim());
        let k = ma.semiabelian().lattice_rank();
        let id = MotiveMorphism::new(ma, mb, IntMatrix::identity(n), CMat::identity(d), IntMatrix::identity(k)).unwrap();
        assert!(id.verify(&cfg).passed());
        assert!(iso_test(&build(&a, &x, &l), &build(&b, &x, &l), &cfg).is_iso());
    }

    #[test]
    fn invalid_configurations() {
        let cfg = Config::default();
        let pts = || vec![pt("a", "P", fin(0.0, 0.0)), pt("b", "P", fin(1.0, 0.0))];
        let both = CurveConfiguration::new(vec![line("P")], pts(), vec![labels(&["a", "b"])], labels(&["a"]), &cfg);
        assert!(matches!(both, Err(Error::Curve(_))));
        let same = CurveConfiguration::new(
            vec![line("P")],
            vec![pt("a", "P", fin(2.0, 0.0)), pt("b", "P", fin(2.0, 0.0))],
            vec![],
            vec![],
            &cfg,
        );
        assert!(matches!(same, Err(Error::Curve(_))));
        let g2 = CurveConfiguration::new(vec![Component { label: "C".into(), genus: 2, tau: None }], vec![], vec![], vec![], &cfg);
        assert!(matches!(g2, Err(Error::Curve(_))));
        let lattice_twin = CurveConfiguration::new(
            vec![elliptic("E", c(0.0, 1.0))],
            vec![pt("a", "E", fin(0.1, 0.0)), pt("b", "E", fin(1.1, 1.0))],
            vec![],
            vec![],
            &cfg,
        );
        assert!(matches!(lattice_twin, Err(Error::Curve(_))));
    }

    #[test]
    fn overlapping_classes_merge() {
        let merged = merge_classes(&[labels(&["c", "a"]), labels(&["b", "c"]), labels(&["x", "y"])]);
        assert_eq!(merged, vec![labels(&["a", "b", "c"]), labels(&["x", "y"])]);
    }
}
