//! Binary forms, the pullback action of `GL(2)`, and orbits on `P¹`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matgroup::{FiniteMatrixGroup, GL2Element, ProjectiveGroup};
use crate::{CycNum, Error, Result};

/// A homogeneous form `β(x₀, x₁) = Σ c_k x₀^k x₁^{d−k}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryForm {
    degree: usize,
    coefficients: Vec<CycNum>,
}

impl BinaryForm {
    pub fn new(coefficients: Vec<CycNum>) -> BinaryForm {
        assert!(!coefficients.is_empty(), "a form needs at least one coefficient");
        BinaryForm { degree: coefficients.len() - 1, coefficients }
    }

    pub fn from_ints(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&v| CycNum::from_int(v)).collect())
    }

    pub fn x0() -> BinaryForm {
        BinaryForm::from_ints(&[0, 1])
    }

    pub fn x1() -> BinaryForm {
        BinaryForm::from_ints(&[1, 0])
    }

    /// `a·x₀ + b·x₁`.
    pub fn linear(a: CycNum, b: CycNum) -> BinaryForm {
        BinaryForm::new(vec![b, a])
    }

    /// The linear form vanishing at `p`.
    pub fn vanishing_at(p: &ProjPoint) -> BinaryForm {
        BinaryForm::linear(p.x1.clone(), -&p.x0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[CycNum] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut out = vec![CycNum::zero(); self.degree + o.degree + 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coefficients.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm::new(out)
    }

    pub fn add(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, o.degree, "adding forms of different degrees");
        BinaryForm::new(self.coefficients.iter().zip(&o.coefficients).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, t: &CycNum) -> BinaryForm {
        BinaryForm::new(self.coefficients.iter().map(|c| c * t).collect())
    }

    pub fn pow(&self, k: usize) -> BinaryForm {
        (0..k).fold(BinaryForm::from_ints(&[1]), |acc, _| acc.mul(self))
    }

    pub fn product(forms: &[BinaryForm]) -> BinaryForm {
        forms.iter().fold(BinaryForm::from_ints(&[1]), |acc, f| acc.mul(f))
    }

    pub fn evaluate(&self, x0: &CycNum, x1: &CycNum) -> CycNum {
        let mut acc = CycNum::zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = &x0.pow(k as i64).expect("nonnegative power") * &x1.pow((self.degree - k) as i64).expect("nonnegative power");
            acc = &acc + &(c * &t);
        }
        acc
    }

    pub fn evaluate_at(&self, p: &ProjPoint) -> CycNum {
        self.evaluate(&p.x0, &p.x1)
    }

    /// `t` with `self = t·other`, if the forms are proportional.
    pub fn ratio_to(&self, other: &BinaryForm) -> Option<CycNum> {
        if self.degree != other.degree {
            return None;
        }
        let k = other.coefficients.iter().position(|c| !c.is_zero())?;
        let t = (&self.coefficients[k] / &other.coefficients[k]).ok()?;
        (*self == other.scale(&t)).then_some(t)
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn monic(&self) -> BinaryForm {
        match self.coefficients.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Coefficients as integers, when they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        self.coefficients.iter().map(|c| c.to_i64()).collect()
    }

    /// Squarefree as a homogeneous form, i.e. no repeated root on `P¹`.
    ///
    /// Each dehomogenization (`x₀ = 1` and `x₁ = 1`) must have a nonzero
    /// discriminant-style resultant `Res(f, f')`; every root of `β` lies on at
    /// least one of the two affine patches.
    pub fn is_reduced(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        // patch x0 = 1, variable x1: coefficient of x1^j is c_{d-j}
        let patch_a: Vec<CycNum> = self.coefficients.iter().rev().cloned().collect();
        let patch_b: Vec<CycNum> = self.coefficients.clone();
        affine_squarefree(&patch_a) && affine_squarefree(&patch_b)
    }
}

fn trim(p: &[CycNum]) -> Vec<CycNum> {
    let mut v = p.to_vec();
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// `p` given by ascending coefficients.
fn affine_squarefree(p: &[CycNum]) -> bool {
    let f = trim(p);
    if f.len() <= 2 {
        return true;
    }
    let df: Vec<CycNum> =
        f.iter().enumerate().skip(1).map(|(i, c)| c.scale(&num_rational::BigRational::from_integer((i as i64).into()))).collect();
    !resultant(&f, &df).is_zero()
}

/// Resultant via the Sylvester determinant; `f`, `g` ascending coefficients.
pub fn resultant(f: &[CycNum], g: &[CycNum]) -> CycNum {
    let f = trim(f);
    let g = trim(g);
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return CycNum::one();
    }
    let mut mat = vec![vec![CycNum::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    determinant(mat)
}

fn determinant(mut a: Vec<Vec<CycNum>>) -> CycNum {
    let n = a.len();
    let mut det = CycNum::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return CycNum::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let pinv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &pinv;
            for c in col..n {
                let v = &a[r][c] - &(&factor * &a[col][c]);
                a[r][c] = v;
            }
        }
    }
    det
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = |name: &str, e: usize| match e {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{e}"),
            };
            let mono = [var("x0", k), var("x1", self.degree - k)].into_iter().filter(|v| !v.is_empty()).collect::<Vec<_>>().join("*");
            let coef = c.to_string();
            let coef = if coef.chars().skip(1).any(|ch| ch == '+' || ch == '-') { format!("({coef})") } else { coef };
            parts.push(match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono,
                ("-1", false) => format!("-{mono}"),
                _ => format!("{coef}*{mono}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

/// `β ∘ g`, i.e. `x₀ ↦ a x₀ + b x₁`, `x₁ ↦ c x₀ + d x₁`.
pub fn pullback(g: &GL2Element, beta: &BinaryForm) -> BinaryForm {
    let l0 = BinaryForm::linear(g.a().clone(), g.b().clone());
    let l1 = BinaryForm::linear(g.c().clone(), g.d().clone());
    let d = beta.degree();
    let mut acc = BinaryForm::new(vec![CycNum::zero(); d + 1]);
    for (k, c) in beta.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = l0.pow(k).mul(&l1.pow(d - k)).scale(c);
        acc = acc.add(&term);
    }
    acc
}

/// `λ(h)` with `pullback(h, β) = λ(h)·β`, listed in the element order of `h_group`.
pub fn invariance_character(h_group: &FiniteMatrixGroup, beta: &BinaryForm) -> Result<Vec<CycNum>> {
    if beta.is_zero() {
        return Err(Error::Domain("zero form".into()));
    }
    let lambda: Vec<CycNum> = h_group
        .elements()
        .iter()
        .map(|h| pullback(h, beta).ratio_to(beta).ok_or_else(|| Error::NotInvariant(format!("{beta} under {h}"))))
        .collect::<Result<_>>()?;
    let g = h_group.cayley();
    for i in 0..g.order() {
        for j in 0..g.order() {
            if lambda[g.mul(i, j)] != &lambda[i] * &lambda[j] {
                return Err(Error::ConstructionInconsistent("invariance character is not multiplicative".into()));
            }
        }
    }
    Ok(lambda)
}

/// A point of `P¹`, normalized to `(x : 1)` or `(1 : 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    x0: CycNum,
    x1: CycNum,
}

impl ProjPoint {
    pub fn new(x0: CycNum, x1: CycNum) -> Result<ProjPoint> {
        if x1.is_zero() {
            if x0.is_zero() {
                return Err(Error::Domain("(0 : 0) is not a point".into()));
            }
            return Ok(ProjPoint { x0: CycNum::one(), x1: CycNum::zero() });
        }
        Ok(ProjPoint { x0: (&x0 / &x1)?, x1: CycNum::one() })
    }

    pub fn infinity() -> ProjPoint {
        ProjPoint { x0: CycNum::one(), x1: CycNum::zero() }
    }

    pub fn finite(x: CycNum) -> ProjPoint {
        ProjPoint { x0: x, x1: CycNum::one() }
    }

    pub fn x0(&self) -> &CycNum {
        &self.x0
    }

    pub fn x1(&self) -> &CycNum {
        &self.x1
    }

    pub fn is_infinity(&self) -> bool {
        self.x1.is_zero()
    }

    /// Image under the column-vector action `x ↦ g·x`.
    pub fn apply(&self, g: &GL2Element) -> ProjPoint {
        let y0 = &(g.a() * &self.x0) + &(g.b() * &self.x1);
        let y1 = &(g.c() * &self.x0) + &(g.d() * &self.x1);
        ProjPoint::new(y0, y1).expect("invertible matrix")
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.is_infinity(), &self.x0).cmp(&(other.is_infinity(), &other.x0))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "(1 : 0)")
        } else {
            write!(f, "({} : 1)", self.x0)
        }
    }
}

/// Eigenpairs `(t, p)` of a non-scalar matrix of finite order.
pub fn eigenpoints(g: &GL2Element) -> Vec<(CycNum, ProjPoint)> {
    if g.is_scalar() {
        return Vec::new();
    }
    let mut order = 1;
    let mut acc = g.clone();
    while !acc.is_scalar() || !acc.a().is_one() {
        acc = acc.mul(g);
        order += 1;
        assert!(order <= 1000, "matrix of infinite order");
    }
    let (tr, det) = (g.trace(), g.det());
    let mut out = Vec::new();
    for j in 0..order {
        let t = CycNum::root_of_unity(order as u32, j);
        if (&(&(&t * &t) - &(&tr * &t)) + &det).is_zero() {
            let (u, v) = (g.b().clone(), &t - g.a());
            let p = if !u.is_zero() || !v.is_zero() { ProjPoint::new(u, v) } else { ProjPoint::new(&t - g.d(), g.c().clone()) };
            out.push((t, p.expect("eigenvector")));
        }
    }
    out
}

/// Orbit of `p` under a projective group, sorted.
pub fn orbit(k: &ProjectiveGroup, p: &ProjPoint) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = k.lifts().iter().map(|g| p.apply(g)).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Orbits of points with nontrivial stabilizer, sorted by their smallest point.
pub fn special_orbits(k: &ProjectiveGroup) -> Vec<Vec<ProjPoint>> {
    let mut fixed: Vec<ProjPoint> = Vec::new();
    for g in k.lifts() {
        for (_, p) in eigenpoints(g) {
            fixed.push(p);
        }
    }
    fixed.sort();
    fixed.dedup();
    let mut orbits: Vec<Vec<ProjPoint>> = Vec::new();
    for p in fixed {
        if orbits.iter().any(|o| o.binary_search(&p).is_ok()) {
            continue;
        }
        orbits.push(orbit(k, &p));
    }
    orbits.sort();
    orbits
}

/// Product of the linear forms vanishing at the given points, made monic.
pub fn orbit_form(points: &[ProjPoint]) -> BinaryForm {
    BinaryForm::product(&points.iter().map(BinaryForm::vanishing_at).collect::<Vec<_>>()).monic()
}

/// A union of `K`-orbits of total size 6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitUnion {
    /// Orbit sizes, descending.
    pub sizes: Vec<usize>,
    /// Every choice of special orbits (indices into `special_orbits`) realizing `sizes`.
    pub choices: Vec<Vec<usize>>,
    pub generic_count: usize,
    pub generic_size: usize,
}

impl OrbitUnion {
    pub fn needs_generic_parameters(&self) -> bool {
        self.generic_count > 0
    }
}

/// All multisets of distinct `K`-orbits whose sizes sum to 6.
pub fn degree6_orbit_unions(k: &ProjectiveGroup) -> Vec<OrbitUnion> {
    let special = special_orbits(k);
    let generic_size = k.order();
    let mut out: Vec<OrbitUnion> = Vec::new();
    for mask in 0u32..(1 << special.len()) {
        let chosen: Vec<usize> = (0..special.len()).filter(|i| mask & (1 << i) != 0).collect();
        let s: usize = chosen.iter().map(|&i| special[i].len()).sum();
        if s > 6 || !(6 - s).is_multiple_of(generic_size) {
            continue;
        }
        let generic_count = (6 - s) / generic_size;
        let mut sizes: Vec<usize> = chosen.iter().map(|&i| special[i].len()).collect();
        sizes.extend(std::iter::repeat_n(generic_size, generic_count));
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        match out.iter_mut().find(|u| u.sizes == sizes && u.generic_count == generic_count) {
            Some(u) => u.choices.push(chosen),
            None => out.push(OrbitUnion { sizes, choices: vec![chosen], generic_count, generic_size }),
        }
    }
    for u in &mut out {
        u.choices.sort();
    }
    out.sort_by(|a, b| b.sizes.cmp(&a.sizes));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{project_to_pgl, DEFAULT_BOUND};
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn pullback_basics() {
        let beta = BinaryForm::from_ints(&[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(pullback(&GL2Element::identity(), &beta), beta);
        assert_eq!(pullback(&GL2Element::scalar(CycNum::from_int(-1)), &beta), beta);
        // x0 ↦ x1, x1 ↦ x0
        let swap = GL2Element::from_ints([0, 1, 1, 0]);
        assert_eq!(pullback(&swap, &beta), beta.scale(&CycNum::from_int(-1)));
    }

    #[test]
    fn reducedness() {
        assert!(BinaryForm::from_ints(&[-1, 0, 0, 0, 0, 0, 1]).is_reduced());
        assert!(!BinaryForm::from_ints(&[0, 0, 1, 0, 0, 0, 0]).is_reduced());
        // x0 x1 (x0^4 - x1^4)
        assert!(BinaryForm::from_ints(&[0, -1, 0, 0, 0, 1, 0]).is_reduced());
        // x0^2 (x1^4 - x0^4) has a double root at (0 : 1)
        assert!(!BinaryForm::from_ints(&[0, 0, 1, 0, 0, 0, -1]).is_reduced());
        // x1^2 (...) has a double root at (1 : 0)
        assert!(!BinaryForm::from_ints(&[-1, 0, 0, 0, 1, 0, 0]).is_reduced());
    }

    #[test]
    fn invariance_character_of_reflection() {
        let h = FiniteMatrixGroup::closure(&[GL2Element::diag(CycNum::one(), CycNum::from_int(-1))], DEFAULT_BOUND).unwrap();
        let f = |a: i64| BinaryForm::from_ints(&[1, 0, -a]);
        let beta = BinaryForm::product(&[f(1), f(4), f(9)]);
        assert!(invariance_character(&h, &beta).unwrap().iter().all(|l| l.is_one()));
        let bad = BinaryForm::from_ints(&[1, 1, 0, 0, 0, 0, 1]);
        assert!(matches!(invariance_character(&h, &bad), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn cyclic_and_dihedral_orbits() {
        let c3 = FiniteMatrixGroup::closure(&[GL2Element::diag(z(6, 1), z(6, -1))], DEFAULT_BOUND).unwrap();
        let k = project_to_pgl(&c3);
        let sizes: Vec<usize> = special_orbits(&k).iter().map(|o| o.len()).collect();
        assert_eq!(sizes, vec![1, 1]);
        let d3 = FiniteMatrixGroup::closure(
            &[GL2Element::diag(z(6, 1), z(6, -1)), GL2Element::antidiag(CycNum::i(), CycNum::i())],
            DEFAULT_BOUND,
        )
        .unwrap();
        let k = project_to_pgl(&d3);
        let mut sizes: Vec<usize> = special_orbits(&k).iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3, 3]);
        let unions = degree6_orbit_unions(&k);
        let shapes: Vec<Vec<usize>> = unions.iter().map(|u| u.sizes.clone()).collect();
        assert_eq!(shapes, vec![vec![6], vec![3, 3]]);
    }

    #[test]
    fn unions_for_involution() {
        let c2 = FiniteMatrixGroup::closure(&[GL2Element::diag(CycNum::i(), -CycNum::i())], DEFAULT_BOUND).unwrap();
        let k = project_to_pgl(&c2);
        let shapes: Vec<Vec<usize>> = degree6_orbit_unions(&k).iter().map(|u| u.sizes.clone()).collect();
        assert_eq!(shapes, vec![vec![2, 2, 2], vec![2, 2, 1, 1]]);
    }

    fn arb_matrix() -> impl Strategy<Value = GL2Element> {
        let entry = (prop::sample::select(vec![1u32, 3, 4, 8]), 0i64..8, -3i64..4)
            .prop_map(|(n, k, c)| CycNum::root_of_unity(n, k).scale(&num_rational::BigRational::from_integer(c.into())));
        [entry.clone(), entry.clone(), entry.clone(), entry].prop_map(GL2Element)
    }

    fn arb_sextic() -> impl Strategy<Value = BinaryForm> {
        prop::collection::vec(-3i64..4, 7).prop_map(|c| BinaryForm::from_ints(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn anti_action_law(g in arb_matrix(), h in arb_matrix(), beta in arb_sextic()) {
            prop_assert_eq!(pullback(&g, &pullback(&h, &beta)), pullback(&h.mul(&g), &beta));
        }
    }
}
