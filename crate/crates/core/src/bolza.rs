//! Finite groups of automorphisms of genus-2 curves `z² = β(x₀, x₁)` with
//! rational quotient, built from the finite subgroups of `PGL(2)`.

use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binform::{
    degree6_orbit_unions, eigenpoints, invariance_character, orbit, orbit_form, pullback, special_orbits, BinaryForm, ProjPoint,
};
use crate::covers::{chevalley_weil_oriented, CharDecomp, CoverDatum};
use crate::matgroup::ident::binary_octahedral;
use crate::matgroup::{project_to_pgl, CharacterTable, FiniteMatrixGroup, GL2Element, ProjectiveGroup, Relation, DEFAULT_BOUND};
use crate::{CycNum, Error, Result};

/// A finite subgroup of `PGL(2)` in standard position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KleinType {
    Trivial,
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

fn z(n: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(n, k)
}

fn q(s: &str) -> CycNum {
    s.parse().expect("valid cyclotomic literal")
}

impl KleinType {
    /// Candidates whose orbits can have total size 6, in output order.
    pub fn candidates() -> Vec<KleinType> {
        let mut out: Vec<KleinType> = (2..=6).rev().map(KleinType::Cyclic).collect();
        out.push(KleinType::Trivial);
        out.extend((2..=6).rev().map(KleinType::Dihedral));
        out.extend([KleinType::Tetrahedral, KleinType::Octahedral, KleinType::Icosahedral]);
        out
    }

    pub fn order(&self) -> usize {
        match *self {
            KleinType::Trivial => 1,
            KleinType::Cyclic(n) => n as usize,
            KleinType::Dihedral(n) => 2 * n as usize,
            KleinType::Tetrahedral => 12,
            KleinType::Octahedral => 24,
            KleinType::Icosahedral => 60,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            KleinType::Trivial => "id".into(),
            KleinType::Cyclic(n) => format!("Z{n}"),
            KleinType::Dihedral(n) => format!("D{n}"),
            KleinType::Tetrahedral => "A4".into(),
            KleinType::Octahedral => "S4".into(),
            KleinType::Icosahedral => "A5".into(),
        }
    }

    pub fn from_label(s: &str) -> Option<KleinType> {
        match s {
            "id" => Some(KleinType::Trivial),
            "A4" => Some(KleinType::Tetrahedral),
            "S4" => Some(KleinType::Octahedral),
            "A5" => Some(KleinType::Icosahedral),
            _ => {
                let n = |p: &str| s.strip_prefix(p).and_then(|t| t.parse::<u32>().ok());
                n("Z").filter(|&n| n >= 2).map(KleinType::Cyclic).or(n("D").filter(|&n| n >= 2).map(KleinType::Dihedral))
            }
        }
    }

    /// Generators of the preimage `K̂ ⊂ SL(2)` of `K`.
    pub fn binary_generators(&self) -> Vec<GL2Element> {
        let rotation = |n: u32| GL2Element::diag(z(2 * n, 1), z(2 * n, -1));
        let tetra_zeta = GL2Element::new(q("-1/2+1/2*E(4)"), q("1/2+1/2*E(4)"), q("-1/2+1/2*E(4)"), q("-1/2-1/2*E(4)"));
        match *self {
            KleinType::Trivial => vec![GL2Element::scalar(CycNum::from_int(-1))],
            KleinType::Cyclic(n) => vec![rotation(n)],
            KleinType::Dihedral(n) => vec![rotation(n), GL2Element::antidiag(CycNum::i(), CycNum::i())],
            KleinType::Tetrahedral => {
                let eta = GL2Element::new(q("-1/2+1/2*E(4)"), q("1/2-1/2*E(4)"), q("-1/2-1/2*E(4)"), q("-1/2-1/2*E(4)"));
                vec![tetra_zeta, eta]
            }
            KleinType::Octahedral => vec![tetra_zeta, GL2Element::diag(z(8, 1), z(8, -1))],
            KleinType::Icosahedral => {
                let e = |k: i64| z(5, k);
                let sqrt5 = &(&(&e(1) - &e(2)) - &e(3)) + &e(4);
                let r = sqrt5.inv().expect("nonzero");
                let u = &e(1) - &e(4);
                let v = &e(2) - &e(3);
                let t = GL2Element::new(-&u, v.clone(), v, u).scale(&r);
                vec![GL2Element::diag(e(3), e(2)), t]
            }
        }
    }

    pub fn binary_group(&self) -> Result<FiniteMatrixGroup> {
        FiniteMatrixGroup::closure(&self.binary_generators(), DEFAULT_BOUND)
    }

    /// Forms of the generic orbits used to complete a union of special orbits.
    pub fn generic_orbit_forms(&self) -> Vec<BinaryForm> {
        // coefficients of x0^k x1^(d-k), k ascending
        let f = BinaryForm::from_ints;
        match *self {
            KleinType::Trivial => [1, 2, 3, 5, 7, 11].iter().map(|&a| f(&[1, -a])).collect(),
            KleinType::Cyclic(2) => [1, 4, 9].iter().map(|&a| f(&[1, 0, -a])).collect(),
            KleinType::Cyclic(3) => vec![f(&[1, 0, 0, -1]), f(&[1, 0, 0, 1])],
            KleinType::Cyclic(4) => vec![f(&[1, 0, 0, 0, -1])],
            KleinType::Cyclic(5) => vec![f(&[1, 0, 0, 0, 0, -1])],
            KleinType::Cyclic(6) => vec![f(&[1, 0, 0, 0, 0, 0, -1])],
            KleinType::Dihedral(2) => vec![f(&[1, 0, -4]).mul(&f(&[-4, 0, 1]))],
            KleinType::Dihedral(3) => vec![f(&[-2, 0, 0, 1]).mul(&f(&[1, 0, 0, -2]))],
            _ => Vec::new(),
        }
    }

    fn is_dihedral(&self) -> bool {
        matches!(self, KleinType::Dihedral(_))
    }
}

impl fmt::Display for KleinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A group `G ⊂ GL(2)` acting on `z² = β` by `(x, z) ↦ (g·x, det(g)·z)`.
#[derive(Clone, Debug)]
pub struct CurveAction {
    pub klein: KleinType,
    pub beta: BinaryForm,
    pub group: FiniteMatrixGroup,
    pub k: ProjectiveGroup,
    pub extendable: bool,
    /// Generators reported for the couple.
    pub generators: Vec<GL2Element>,
    pub table: CharacterTable,
    pub quotient_genus: i64,
    pub char_decomp: CharDecomp,
    /// For a lifting, the label of the extendable group it was split from.
    pub split_from: Option<String>,
}

impl CurveAction {
    /// Builds and checks the action of `group` on `z² = β`.
    pub fn new(klein: KleinType, beta: BinaryForm, group: FiniteMatrixGroup, generators: Vec<GL2Element>) -> Result<CurveAction> {
        if beta.degree() != 6 || !beta.is_reduced() {
            return Err(Error::Domain(format!("{beta} is not a reduced sextic")));
        }
        for g in group.elements() {
            let det = g.det();
            if pullback(g, &beta) != beta.scale(&(&det * &det)) {
                return Err(Error::NotInvariant(format!("{beta} under {g:?}")));
            }
        }
        let k = project_to_pgl(&group);
        let table = group.character_table()?;
        let extendable = group.contains_minus_identity();
        let label = group.identify().to_string();
        let char_decomp = CharDecomp::of_character(&label, group.cayley(), &table, &differential_character(&group, &table))?;
        let mut action =
            CurveAction { klein, beta, group, k, extendable, generators, table, quotient_genus: 0, char_decomp, split_from: None };
        let by_char = quotient_genus_char(&action);
        let by_rh = quotient_genus_rh(&action)?;
        if by_char != by_rh || !(0..=2).contains(&by_char) {
            return Err(Error::ConstructionInconsistent(format!("quotient genus {by_char} by characters, {by_rh} by fixed points")));
        }
        action.quotient_genus = by_char;
        Ok(action)
    }

    pub fn group_label(&self) -> String {
        self.group.identify().to_string()
    }

    pub fn record(&self) -> CoupleRecord {
        CoupleRecord {
            k_label: self.klein.label(),
            g_label: self.group_label(),
            extendable: self.extendable,
            beta: self.beta.monic().coefficients().iter().map(|c| c.to_string()).collect(),
            beta_text: self.beta.monic().to_string(),
            generators: self.generators.iter().map(|g| g.to_strings()).collect(),
            quotient_genus: self.quotient_genus,
            char_decomp: self.char_decomp.clone(),
            g_s: self.split_from.clone(),
        }
    }
}

/// Serializable summary of a couple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoupleRecord {
    #[serde(rename = "K_label")]
    pub k_label: String,
    #[serde(rename = "G_label")]
    pub g_label: String,
    pub extendable: bool,
    /// Coefficients of `x₀^k x₁^{6−k}`, `k = 0..6`, scaled so the first nonzero one is 1.
    pub beta: Vec<String>,
    pub beta_text: String,
    pub generators: Vec<Vec<Vec<String>>>,
    pub quotient_genus: i64,
    pub char_decomp: CharDecomp,
    /// Extendable group a lifting comes from.
    #[serde(rename = "G_s", default, skip_serializing_if = "Option::is_none")]
    pub g_s: Option<String>,
}

/// Trace of `g` on `H⁰(Ω¹)`, identified with linear forms `P₁` through `(ω/z)·P₁`.
pub fn differential_character(group: &FiniteMatrixGroup, table: &CharacterTable) -> Vec<CycNum> {
    table.class_function(|i| group.element(i).trace())
}

pub fn differential_rep(action: &CurveAction) -> CharDecomp {
    action.char_decomp.clone()
}

/// `(1/|G|) Σ tr(g)`, the dimension of the invariant differentials.
pub fn quotient_genus_char(action: &CurveAction) -> i64 {
    let sum = action.group.elements().iter().fold(CycNum::zero(), |acc, g| &acc + &g.trace());
    let r = sum.to_rational().expect("real trace sum") / BigRational::from_integer((action.group.order() as i64).into());
    assert!(r.is_integer(), "fractional invariant dimension");
    r.to_integer().try_into().expect("small genus")
}

/// Eigenvalue of `g` at the eigenvector `p`.
fn eigenvalue_at(g: &GL2Element, p: &ProjPoint) -> CycNum {
    if p.x0().is_zero() {
        (&(&(g.c() * p.x0()) + &(g.d() * p.x1())) / p.x1()).expect("nonzero coordinate")
    } else {
        (&(&(g.a() * p.x0()) + &(g.b() * p.x1())) / p.x0()).expect("nonzero coordinate")
    }
}

/// Number of points of `z² = β` fixed by `g ≠ 1`.
pub fn fixed_point_count(g: &GL2Element, beta: &BinaryForm) -> usize {
    if g.is_identity() {
        return 0;
    }
    if g.is_scalar() {
        return 6;
    }
    let det = g.det();
    eigenpoints(g)
        .into_iter()
        .map(|(t, p)| {
            if beta.evaluate_at(&p).is_zero() {
                1
            } else if t.pow(3).expect("power") == det {
                2
            } else {
                0
            }
        })
        .sum()
}

/// Genus of `C/G` from Riemann–Hurwitz, `2 = |G|(2g′ − 2) + Σ_{g≠1} |Fix(g)|`.
pub fn quotient_genus_rh(action: &CurveAction) -> Result<i64> {
    let n = action.group.order() as i64;
    let fixed: i64 = action.group.elements().iter().map(|g| fixed_point_count(g, &action.beta) as i64).sum();
    let rhs = 2 - fixed;
    if rhs % n != 0 || (rhs / n + 2) % 2 != 0 {
        return Err(Error::ConstructionInconsistent(format!("Riemann–Hurwitz has no integral solution ({fixed} fixed points)")));
    }
    Ok((rhs / n + 2) / 2)
}

/// A branch point of `C → C/G`: its local monodromy, the stabilizer element acting on
/// the tangent space by `e^{2πi/m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub order: usize,
    pub generator: usize,
    pub weierstrass: bool,
}

/// Tangent multiplier of `g` at a fixed point over `p` with eigenvalue `t`.
fn multiplier(g: &GL2Element, t: &CycNum, weierstrass: bool) -> CycNum {
    let det = g.det();
    let denom = if weierstrass { t.pow(3) } else { t.pow(2) }.expect("nonzero eigenvalue");
    (&det / &denom).expect("nonzero eigenvalue")
}

/// Branch points of the quotient map, sorted by order and generator.
pub fn branch_data(action: &CurveAction) -> Result<Vec<BranchPoint>> {
    let group = &action.group;
    let beta = &action.beta;
    let mut points: Vec<ProjPoint> = group.elements().iter().flat_map(|g| eigenpoints(g).into_iter().map(|(_, p)| p)).collect();
    points.sort();
    points.dedup();
    let mut seen: Vec<ProjPoint> = Vec::new();
    let mut out = Vec::new();
    let mut weierstrass_seen = 0;
    let pick = |stab: &[(usize, CycNum)]| -> Result<BranchPoint> {
        let m = stab.len();
        let generator = stab
            .iter()
            .find(|(_, mu)| *mu == z(m as u32, 1))
            .map(|(i, _)| *i)
            .ok_or_else(|| Error::ConstructionInconsistent("stabilizer is not cyclic on the tangent space".into()))?;
        Ok(BranchPoint { order: m, generator, weierstrass: false })
    };
    for p in points {
        if seen.binary_search(&p).is_ok() {
            continue;
        }
        let orb = orbit(&action.k, &p);
        seen.extend(orb.iter().cloned());
        seen.sort();
        let on_branch_locus = beta.evaluate_at(&p).is_zero();
        let mut stab = Vec::new();
        let mut swapped = false;
        for (i, g) in group.elements().iter().enumerate() {
            if p.apply(g) != p {
                continue;
            }
            let t = eigenvalue_at(g, &p);
            let fixes = on_branch_locus || t.pow(3)? == g.det();
            if fixes {
                stab.push((i, multiplier(g, &t, on_branch_locus)));
            } else {
                swapped = true;
            }
        }
        if on_branch_locus {
            weierstrass_seen += orb.len();
        }
        if stab.len() > 1 {
            let bp = BranchPoint { weierstrass: on_branch_locus, ..pick(&stab)? };
            let copies = if on_branch_locus || swapped { 1 } else { 2 };
            for _ in 0..copies {
                out.push(bp.clone());
            }
        }
    }
    let scalars = group.scalar_subgroup();
    if scalars.len() > 1 && weierstrass_seen < 6 {
        let stab: Vec<(usize, CycNum)> = scalars
            .iter()
            .map(|&i| {
                let c = group.element(i).a().clone();
                (i, c.inv().expect("nonzero scalar"))
            })
            .collect();
        let bp = BranchPoint { weierstrass: true, ..pick(&stab)? };
        let count = (6 - weierstrass_seen) * scalars.len() / group.order();
        for _ in 0..count {
            out.push(bp.clone());
        }
    }
    out.sort_by_key(|b| (b.order, b.generator, b.weierstrass));
    let fixed: usize = group.elements().iter().map(|g| fixed_point_count(g, beta)).sum();
    let from_branch: usize = out.iter().map(|b| group.order() / b.order * (b.order - 1)).sum();
    if fixed != from_branch {
        return Err(Error::ConstructionInconsistent(format!("{fixed} fixed points but branch data accounts for {from_branch}")));
    }
    Ok(out)
}

/// A generating vector for `C → C/G` realizing the branch data, found by backtracking over conjugates.
pub fn cover_datum(action: &CurveAction) -> Result<CoverDatum> {
    let g = action.group.cayley();
    let h = action.quotient_genus;
    if !(0..=1).contains(&h) {
        return Err(Error::Domain("quotient of genus > 1".into()));
    }
    let data = branch_data(action)?;
    let classes: Vec<Vec<usize>> = data
        .iter()
        .map(|b| {
            let mut c: Vec<usize> = (0..g.order()).map(|y| g.conj(y, b.generator)).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let hyperbolic: Vec<Vec<usize>> =
        if h == 0 { vec![Vec::new()] } else { (0..g.order()).flat_map(|a| (0..g.order()).map(move |b| vec![a, b])).collect() };
    for hyp in hyperbolic {
        let mut acc = g.identity();
        for pair in hyp.chunks(2) {
            acc = g.mul(acc, g.commutator(pair[0], pair[1]));
        }
        let target = g.inv(acc);
        let mut chosen = Vec::new();
        if let Some(xs) = search(g, &classes, target, g.identity(), &mut chosen, &hyp) {
            let datum = CoverDatum { base_genus: h as u32, hyperbolic: hyp, elliptic: xs };
            datum.validate(g)?;
            return Ok(datum);
        }
    }
    Err(Error::ConstructionInconsistent("no generating vector realizes the branch data".into()))
}

fn search(
    g: &crate::matgroup::CayleyGroup,
    classes: &[Vec<usize>],
    target: usize,
    prefix: usize,
    chosen: &mut Vec<usize>,
    hyp: &[usize],
) -> Option<Vec<usize>> {
    let i = chosen.len();
    if i == classes.len() {
        let all: Vec<usize> = hyp.iter().chain(chosen.iter()).copied().collect();
        return (prefix == target && g.generates(&all)).then(|| chosen.clone());
    }
    for &x in &classes[i] {
        chosen.push(x);
        if let Some(found) = search(g, classes, target, g.mul(prefix, x), chosen, hyp) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Chevalley–Weil multiplicities of the action, with the given orientation.
pub fn chevalley_weil_of(action: &CurveAction, sigma: i64) -> Result<Vec<i64>> {
    let datum = cover_datum(action)?;
    chevalley_weil_oriented(action.group.cayley(), &action.table, &datum, sigma)
}

/// `G = {±√(λ(k̂))⁻¹·k̂ : k̂ ∈ K̂}` for the invariance character `λ` of `β`.
pub fn construct_extendable(klein: KleinType, khat: &FiniteMatrixGroup, beta: &BinaryForm) -> Result<CurveAction> {
    if beta.degree() != 6 || !beta.is_reduced() {
        return Err(Error::Domain(format!("{beta} is not a reduced sextic")));
    }
    let minus = GL2Element::scalar(CycNum::from_int(-1));
    if !khat.contains(&minus) {
        return Err(Error::Domain("K̂ must contain -Id".into()));
    }
    let lambda = invariance_character(khat, beta)?;
    if !lambda[khat.index_of(&minus).expect("-Id")].is_one() {
        return Err(Error::ConstructionInconsistent("λ(-Id) ≠ 1".into()));
    }
    let rescale = |k: &GL2Element| -> Result<GL2Element> {
        let l = &lambda[khat.index_of(k).expect("element of K̂")];
        Ok(k.scale(&l.sqrt_of_root_of_unity()?.inv()?))
    };
    let mut elements: Vec<GL2Element> = Vec::new();
    for k in khat.elements() {
        let g = rescale(k)?;
        elements.push(g.neg());
        elements.push(g);
    }
    elements.sort();
    elements.dedup();
    let mut gens: Vec<GL2Element> = khat.generators().iter().map(rescale).collect::<Result<_>>()?;
    gens.push(minus);
    let group = FiniteMatrixGroup::closure(&gens, 2 * khat.order())
        .map_err(|_| Error::ConstructionInconsistent("rescaled elements are not closed".into()))?;
    if group.elements() != elements.as_slice() {
        return Err(Error::ConstructionInconsistent("rescaled set is not a group".into()));
    }
    let k = project_to_pgl(&group);
    if group.order() != 2 * k.order() || !k.same_elements(&project_to_pgl(khat)) {
        return Err(Error::ConstructionInconsistent("projective image changed".into()));
    }
    let generators: Vec<GL2Element> = khat.generators().iter().map(rescale).collect::<Result<_>>()?;
    CurveAction::new(klein, beta.clone(), group, generators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Splitting {
    /// Generators of a subgroup mapping isomorphically onto `K`.
    Splitting(Vec<GL2Element>),
    NonSplitting,
}

/// Lifts `±g` in `G` of the distinguished generators of `K`.
fn generator_lifts(action: &CurveAction) -> Vec<GL2Element> {
    action.generators.iter().filter(|g| !g.is_scalar()).cloned().collect()
}

/// Images of all sections `K → G`, as `(generators, subgroup)` pairs, sorted by generators.
pub fn sections(action: &CurveAction) -> Vec<(Vec<GL2Element>, FiniteMatrixGroup)> {
    let lifts = generator_lifts(action);
    let k_order = action.k.order();
    let mut out: Vec<(Vec<GL2Element>, FiniteMatrixGroup)> = Vec::new();
    for mask in 0u32..(1 << lifts.len()) {
        let gens: Vec<GL2Element> = lifts.iter().enumerate().map(|(i, g)| if mask & (1 << i) != 0 { g.neg() } else { g.clone() }).collect();
        let Ok(h) = FiniteMatrixGroup::closure(&gens, k_order) else { continue };
        if h.order() == k_order && !h.contains_minus_identity() {
            out.push((gens, h));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Whether `G → K` has a section; the search covers all sign choices on generator lifts.
pub fn splitting_type(action: &CurveAction) -> Splitting {
    if action.k.order() == 1 {
        return Splitting::Splitting(Vec::new());
    }
    match sections(action).into_iter().next() {
        Some((gens, _)) => Splitting::Splitting(gens),
        None => Splitting::NonSplitting,
    }
}

/// The non-extendable couples obtained from the sections of a splitting action,
/// one per distinct image subgroup.
pub fn enumerate_liftings(action: &CurveAction) -> Result<Vec<CurveAction>> {
    let mut out: Vec<CurveAction> = Vec::new();
    for (gens, h) in sections(action) {
        if h.order() == 1 || out.iter().any(|a| a.group.same_elements(&h)) {
            continue;
        }
        let mut lifted = CurveAction::new(action.klein, action.beta.clone(), h, gens)?;
        lifted.split_from = Some(action.group_label());
        out.push(lifted);
    }
    Ok(out)
}

/// A matrix normalizing `K` and carrying the special orbits in `from` onto those in `to`.
pub fn equivalence_witness(k: &ProjectiveGroup, from: &[ProjPoint], to: &[ProjPoint]) -> Option<GL2Element> {
    let mut target = to.to_vec();
    target.sort();
    let octa = binary_octahedral();
    let mut twists = Vec::new();
    for j in 0..24 {
        twists.push(GL2Element::diag(CycNum::one(), z(24, j)));
        twists.push(GL2Element::antidiag(CycNum::one(), z(24, j)));
    }
    for o in octa.elements() {
        for t in &twists {
            let m = o.mul(t);
            let Ok(minv) = m.inv() else { continue };
            let mut image: Vec<ProjPoint> = from.iter().map(|p| p.apply(&m)).collect();
            image.sort();
            if image != target {
                continue;
            }
            if k.lifts().iter().all(|x| k.index_of(&m.mul(x).mul(&minv)).is_some()) {
                return Some(m);
            }
        }
    }
    None
}

/// Output of [`classify_all`].
#[derive(Clone, Debug)]
pub struct Classification {
    pub extendable: Vec<CurveAction>,
    pub non_extendable: Vec<CurveAction>,
    /// Liftings whose quotient is an elliptic curve; kept apart from the couples.
    pub elliptic_liftings: Vec<CurveAction>,
}

impl Classification {
    pub fn couples(&self) -> Vec<&CurveAction> {
        self.extendable.iter().chain(&self.non_extendable).collect()
    }
}

struct Candidate {
    klein: KleinType,
    beta: BinaryForm,
}

fn candidates_for(klein: KleinType) -> Result<Vec<Candidate>> {
    let khat = klein.binary_group()?;
    let k = project_to_pgl(&khat);
    let special = special_orbits(&k);
    let generic = klein.generic_orbit_forms();
    let mut out = Vec::new();
    for union in degree6_orbit_unions(&k) {
        let choice = &union.choices[0];
        let points = |c: &[usize]| -> Vec<ProjPoint> { c.iter().flat_map(|&i| special[i].iter().cloned()).collect() };
        for other in &union.choices[1..] {
            if equivalence_witness(&k, &points(choice), &points(other)).is_none() {
                return Err(Error::ConstructionInconsistent(format!("inequivalent orbit choices for {klein}")));
            }
        }
        if generic.len() < union.generic_count {
            return Err(Error::UnsupportedGroup(format!("{klein} needs {} generic orbits", union.generic_count)));
        }
        let mut factors: Vec<BinaryForm> = choice.iter().map(|&i| orbit_form(&special[i])).collect();
        factors.extend(generic.iter().take(union.generic_count).cloned());
        out.push(Candidate { klein, beta: BinaryForm::product(&factors).monic() });
    }
    Ok(out)
}

/// All couples `(C, G)` with `g(C) = 2` and `C/G ≅ P¹`, extendable ones first.
pub fn classify_all() -> Result<Classification> {
    let per_type: Vec<Vec<Candidate>> = KleinType::candidates().into_par_iter().map(candidates_for).collect::<Result<_>>()?;
    let candidates: Vec<Candidate> = per_type.into_iter().flatten().collect();
    let results: Vec<(CurveAction, Vec<CurveAction>)> = candidates
        .par_iter()
        .map(|c| {
            let khat = c.klein.binary_group()?;
            let action = construct_extendable(c.klein, &khat, &c.beta)?;
            let lifts = match splitting_type(&action) {
                Splitting::Splitting(_) => enumerate_liftings(&action)?,
                Splitting::NonSplitting => Vec::new(),
            };
            Ok((action, lifts))
        })
        .collect::<Result<_>>()?;
    let mut out = Classification { extendable: Vec::new(), non_extendable: Vec::new(), elliptic_liftings: Vec::new() };
    for (action, lifts) in results {
        for l in lifts {
            match l.quotient_genus {
                0 => out.non_extendable.push(l),
                _ => out.elliptic_liftings.push(l),
            }
        }
        if action.quotient_genus == 0 {
            out.extendable.push(action);
        }
    }
    let key = |a: &CurveAction| (a.klein.is_dihedral(), a.klein.order(), a.generators.clone());
    out.non_extendable.sort_by_key(key);
    out.elliptic_liftings.sort_by_key(key);
    Ok(out)
}

/// Whether `group` has generators `T`, `U` satisfying every relation (symbols `T`, `U`).
pub fn satisfies_presentation(group: &FiniteMatrixGroup, relations: &[&str]) -> Result<Option<(GL2Element, GL2Element)>> {
    let rels: Vec<Relation> = relations.iter().map(|r| Relation::parse(r)).collect::<Result<_>>()?;
    let g = group.cayley();
    for t in 0..g.order() {
        for u in 0..g.order() {
            let lookup = |s: &str| match s {
                "T" => Some(t),
                "U" => Some(u),
                _ => None,
            };
            let mul = |a: &usize, b: &usize| g.mul(*a, *b);
            let inv = |a: &usize| g.inv(*a);
            let mut ok = true;
            for r in &rels {
                if !r.holds_in(&lookup, &mul, &inv, &g.identity())? {
                    ok = false;
                    break;
                }
            }
            if ok && g.generates(&[t, u]) {
                return Ok(Some((group.element(t).clone(), group.element(u).clone())));
            }
        }
    }
    Ok(None)
}
