//! Finite subgroups of `GL(2)` over cyclotomic fields, their images in
//! `PGL(2)`, character tables and identification.

pub mod cayley;
pub mod chars;
pub mod ident;
pub mod words;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use cayley::CayleyGroup;
pub use chars::{CharacterTable, ClassFunction};
pub use ident::{identify_cayley, Fingerprint, GroupId};
pub use words::{check_relations, Relation};

use crate::{CycNum, Error, Result};

/// Default element bound for closures.
pub const DEFAULT_BOUND: usize = 1000;

/// A 2×2 matrix `[[a, b], [c, d]]` with cyclotomic entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GL2Element(pub [CycNum; 4]);

impl GL2Element {
    pub fn new(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> GL2Element {
        GL2Element([a, b, c, d])
    }

    pub fn identity() -> GL2Element {
        GL2Element::scalar(CycNum::one())
    }

    pub fn scalar(t: CycNum) -> GL2Element {
        GL2Element::diag(t.clone(), t)
    }

    pub fn diag(a: CycNum, d: CycNum) -> GL2Element {
        GL2Element::new(a, CycNum::zero(), CycNum::zero(), d)
    }

    pub fn antidiag(b: CycNum, c: CycNum) -> GL2Element {
        GL2Element::new(CycNum::zero(), b, c, CycNum::zero())
    }

    pub fn from_ints(e: [i64; 4]) -> GL2Element {
        GL2Element(e.map(CycNum::from_int))
    }

    pub fn a(&self) -> &CycNum {
        &self.0[0]
    }
    pub fn b(&self) -> &CycNum {
        &self.0[1]
    }
    pub fn c(&self) -> &CycNum {
        &self.0[2]
    }
    pub fn d(&self) -> &CycNum {
        &self.0[3]
    }

    pub fn mul(&self, o: &GL2Element) -> GL2Element {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        GL2Element([&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)])
    }

    pub fn det(&self) -> CycNum {
        &(self.a() * self.d()) - &(self.b() * self.c())
    }

    pub fn trace(&self) -> CycNum {
        self.a() + self.d()
    }

    pub fn scale(&self, t: &CycNum) -> GL2Element {
        GL2Element(self.0.clone().map(|x| &x * t))
    }

    pub fn neg(&self) -> GL2Element {
        self.scale(&CycNum::from_int(-1))
    }

    pub fn inv(&self) -> Result<GL2Element> {
        let di = self.det().inv()?;
        Ok(GL2Element([self.d().clone(), -self.b(), -self.c(), self.a().clone()]).scale(&di))
    }

    pub fn pow(&self, k: i64) -> Result<GL2Element> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok((0..k.unsigned_abs()).fold(GL2Element::identity(), |acc, _| acc.mul(&base)))
    }

    pub fn is_identity(&self) -> bool {
        *self == GL2Element::identity()
    }

    pub fn is_scalar(&self) -> bool {
        self.b().is_zero() && self.c().is_zero() && self.a() == self.d()
    }

    /// Representative of the class modulo scalars: first nonzero entry scaled to 1.
    pub fn projective_normal(&self) -> GL2Element {
        let lead = self.0.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
        self.scale(&lead.inv().expect("nonzero lead"))
    }

    pub fn conjugate_by(&self, h: &GL2Element) -> Result<GL2Element> {
        Ok(h.mul(self).mul(&h.inv()?))
    }

    /// Parses `[[a, b], [c, d]]` with GAP-style entries.
    pub fn parse_rows(rows: &[Vec<String>]) -> Result<GL2Element> {
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err(Error::Parse("matrix must be 2x2".into()));
        }
        let e = |i: usize, j: usize| rows[i][j].parse::<CycNum>();
        Ok(GL2Element::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        vec![vec![self.0[0].to_string(), self.0[1].to_string()], vec![self.0[2].to_string(), self.0[3].to_string()]]
    }
}

impl fmt::Debug for GL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Display for GL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for GL2Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[&self.0[0], &self.0[1]], [&self.0[2], &self.0[3]]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for GL2Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<GL2Element, D::Error> {
        let [[a, b], [c, e]] = <[[CycNum; 2]; 2]>::deserialize(d)?;
        Ok(GL2Element::new(a, b, c, e))
    }
}

/// A finite matrix group with its elements in sorted order and a multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    generators: Vec<GL2Element>,
    elements: Vec<GL2Element>,
    index: HashMap<GL2Element, usize>,
    cayley: CayleyGroup,
}

impl FiniteMatrixGroup {
    /// Breadth-first closure; fails with `InfiniteOrSuspicious` past `bound` elements.
    pub fn closure(gens: &[GL2Element], bound: usize) -> Result<FiniteMatrixGroup> {
        let gens: Vec<GL2Element> = gens.to_vec();
        let (elements, cayley) = cayley::generate(&gens, GL2Element::identity(), |a, b| a.mul(b), bound)?;
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(FiniteMatrixGroup { generators: gens, elements, index, cayley })
    }

    pub fn generators(&self) -> &[GL2Element] {
        &self.generators
    }

    pub fn elements(&self) -> &[GL2Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cayley(&self) -> &CayleyGroup {
        &self.cayley
    }

    pub fn index_of(&self, g: &GL2Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GL2Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn element(&self, i: usize) -> &GL2Element {
        &self.elements[i]
    }

    pub fn identity_index(&self) -> usize {
        self.cayley.identity()
    }

    pub fn elem_order(&self, i: usize) -> usize {
        self.cayley.elem_order(i)
    }

    /// Indices of the scalar matrices in the group.
    pub fn scalar_subgroup(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.elements[i].is_scalar()).collect()
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains(&GL2Element::scalar(CycNum::from_int(-1)))
    }

    pub fn determinants(&self) -> Vec<CycNum> {
        self.elements.iter().map(|g| g.det()).collect()
    }

    /// Character of the natural two-dimensional representation.
    pub fn natural_character(&self, table: &CharacterTable) -> ClassFunction {
        table.class_function(|i| self.elements[i].trace())
    }

    pub fn character_table(&self) -> Result<CharacterTable> {
        let classes = self.cayley.conjugacy_classes();
        let natural: ClassFunction = classes.iter().map(|c| self.elements[c[0]].trace()).collect();
        CharacterTable::compute(&self.cayley, &[natural])
    }

    pub fn identify(&self) -> GroupId {
        identify_cayley(&self.cayley)
    }

    /// The subgroup generated by some elements of this group.
    pub fn subgroup(&self, gens: &[GL2Element]) -> Result<FiniteMatrixGroup> {
        FiniteMatrixGroup::closure(gens, self.order().max(1))
    }

    pub fn conjugate_by(&self, h: &GL2Element) -> Result<FiniteMatrixGroup> {
        let gens: Vec<GL2Element> = self.generators.iter().map(|g| g.conjugate_by(h)).collect::<Result<_>>()?;
        FiniteMatrixGroup::closure(&gens, self.order())
    }

    /// Same set of matrices, regardless of generators.
    pub fn same_elements(&self, other: &FiniteMatrixGroup) -> bool {
        self.elements == other.elements
    }

    /// Verifies the full multiplication table and inverses against matrix arithmetic.
    pub fn verify_closure(&self) -> Result<()> {
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if self.index_of(&a.mul(b)) != Some(self.cayley.mul(i, j)) {
                    return Err(Error::ConstructionInconsistent("product table mismatch".into()));
                }
            }
            if self.index_of(&a.inv()?) != Some(self.cayley.inv(i)) {
                return Err(Error::ConstructionInconsistent("inverse missing".into()));
            }
        }
        Ok(())
    }
}

/// The image of a matrix group in `PGL(2)`, with normalized representatives.
#[derive(Clone, Debug)]
pub struct ProjectiveGroup {
    elements: Vec<GL2Element>,
    index: HashMap<GL2Element, usize>,
    cayley: CayleyGroup,
    lifts: Vec<GL2Element>,
}

impl ProjectiveGroup {
    /// For each element, its smallest preimage in the matrix group (of finite order).
    pub fn lifts(&self) -> &[GL2Element] {
        &self.lifts
    }

    pub fn elements(&self) -> &[GL2Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cayley(&self) -> &CayleyGroup {
        &self.cayley
    }

    pub fn index_of(&self, g: &GL2Element) -> Option<usize> {
        self.index.get(&g.projective_normal()).copied()
    }

    pub fn identify(&self) -> GroupId {
        identify_cayley(&self.cayley)
    }

    pub fn same_elements(&self, other: &ProjectiveGroup) -> bool {
        self.elements == other.elements
    }
}

/// Quotient of `g` by its scalar subgroup.
pub fn project_to_pgl(g: &FiniteMatrixGroup) -> ProjectiveGroup {
    let mut gens: Vec<GL2Element> = g.generators.iter().map(|x| x.projective_normal()).collect();
    gens.sort();
    gens.dedup();
    let (elements, cayley) = cayley::generate(&gens, GL2Element::identity(), |a, b| a.mul(b).projective_normal(), g.order().max(1))
        .expect("projective image is no larger than the group");
    let index: HashMap<GL2Element, usize> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut lifts: Vec<Option<GL2Element>> = vec![None; elements.len()];
    for x in &g.elements {
        let slot = &mut lifts[index[&x.projective_normal()]];
        if slot.is_none() {
            *slot = Some(x.clone());
        }
    }
    let lifts = lifts.into_iter().map(|x| x.expect("every element has a preimage")).collect();
    ProjectiveGroup { elements, index, cayley, lifts }
}

/// The projection `π: G → K` on element indices.
pub fn projection_map(g: &FiniteMatrixGroup, k: &ProjectiveGroup) -> Vec<usize> {
    g.elements.iter().map(|x| k.index_of(x).expect("image lies in K")).collect()
}
