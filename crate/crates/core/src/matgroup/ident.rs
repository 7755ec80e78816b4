//! Isomorphism-type labels from invariant fingerprints.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cayley::{build, CayleyGroup};
use super::{FiniteMatrixGroup, GL2Element};
use crate::CycNum;

/// Isomorphism invariants used to tell small groups apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, count)` pairs, ascending.
    pub element_orders: Vec<(usize, usize)>,
    /// Invariant factors of the abelianization.
    pub abelian_invariants: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

impl Fingerprint {
    pub fn of(g: &CayleyGroup) -> Fingerprint {
        Fingerprint {
            order: g.order(),
            element_orders: g.order_statistics(),
            abelian_invariants: g.abelian_invariants(),
            center_order: g.center().len(),
            derived_order: g.derived_subgroup().len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Dicyclic group of order `4n`.
    BinaryDihedral(usize),
    Quaternion,
    Klein4,
    Z2xZ4,
    Z2cube,
    Z4xZ2,
    Z6xZ2,
    A4,
    S4,
    A5,
    BinA4,
    BinS4,
    /// Semidihedral group of the given order.
    SemiDihedral(usize),
    /// `Z3 ⋊ D4` with kernel of the action a Klein four-group.
    Z3RtimesD4,
    Gl2F3,
    DirectProductWithZ2(Box<GroupId>),
    /// Reference groups outside the main list, named in GAP-like notation.
    Named(String),
    Unknown(Fingerprint),
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Cyclic(n) => write!(f, "Z{n}"),
            GroupId::Dihedral(n) => write!(f, "D{n}"),
            GroupId::BinaryDihedral(n) => write!(f, "Dic{n}"),
            GroupId::Quaternion => write!(f, "Q8"),
            GroupId::Klein4 => write!(f, "Z2xZ2"),
            GroupId::Z2xZ4 => write!(f, "Z2xZ4"),
            GroupId::Z2cube => write!(f, "Z2^3"),
            GroupId::Z4xZ2 => write!(f, "Z4xZ2"),
            GroupId::Z6xZ2 => write!(f, "Z6xZ2"),
            GroupId::A4 => write!(f, "A4"),
            GroupId::S4 => write!(f, "S4"),
            GroupId::A5 => write!(f, "A5"),
            GroupId::BinA4 => write!(f, "BinA4"),
            GroupId::BinS4 => write!(f, "BinS4"),
            GroupId::SemiDihedral(n) => write!(f, "SD{n}"),
            GroupId::Z3RtimesD4 => write!(f, "Z3:D4"),
            GroupId::Gl2F3 => write!(f, "GL(2,3)"),
            GroupId::DirectProductWithZ2(inner) => write!(f, "{inner}xZ2"),
            GroupId::Named(s) => write!(f, "{s}"),
            GroupId::Unknown(fp) => write!(f, "Unknown(order={}, orders={:?})", fp.order, fp.element_orders),
        }
    }
}

fn abelian_label(inv: &[usize]) -> GroupId {
    match inv {
        [] => GroupId::Cyclic(1),
        [n] => GroupId::Cyclic(*n),
        [2, 2] => GroupId::Klein4,
        [2, 4] => GroupId::Z2xZ4,
        [2, 2, 2] => GroupId::Z2cube,
        [2, 6] => GroupId::Z6xZ2,
        [2, m] => GroupId::DirectProductWithZ2(Box::new(GroupId::Cyclic(*m))),
        _ => GroupId::Named(inv.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x")),
    }
}

fn named(s: &str) -> GroupId {
    GroupId::Named(s.to_string())
}

fn x2(g: GroupId) -> GroupId {
    GroupId::DirectProductWithZ2(Box::new(g))
}

fn perms(gens: &[&[usize]]) -> CayleyGroup {
    build::permutations(&gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>())
}

fn sym(n: usize) -> CayleyGroup {
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    perms(&[&t, &c])
}

fn alt4() -> CayleyGroup {
    perms(&[&[1, 2, 0, 3], &[1, 0, 3, 2]])
}

fn alt5() -> CayleyGroup {
    perms(&[&[1, 2, 0, 3, 4], &[0, 1, 3, 4, 2], &[1, 0, 3, 2, 4]])
}

fn sl23() -> CayleyGroup {
    build::matrices_mod_p(3, &[[1, 1, 0, 1], [1, 0, 1, 1]])
}

fn gl23() -> CayleyGroup {
    build::matrices_mod_p(3, &[[1, 1, 0, 1], [1, 0, 1, 1], [2, 0, 0, 1]])
}

/// Binary octahedral group inside `SL(2, Q(ζ_8))`.
pub fn binary_octahedral() -> FiniteMatrixGroup {
    let z8 = CycNum::root_of_unity(8, 1);
    let half = CycNum::from_ratio(1, 2);
    let i = CycNum::i();
    let one = CycNum::one();
    let a = GL2Element::diag(z8.clone(), z8.inv().expect("unit"));
    let b = GL2Element::new(&one + &i, &one + &i, &i - &one, &one - &i).scale(&half);
    FiniteMatrixGroup::closure(&[a, b], 100).expect("binary octahedral group is finite")
}

fn z2_by(n: usize, h: &CayleyGroup, unit: impl Fn(usize) -> usize) -> CayleyGroup {
    let units: Vec<usize> = (0..h.order()).map(unit).collect();
    build::semidirect_cyclic(n, h, &units).expect("valid action")
}

/// `(Z4 × Z2) ⋊ Z2` with the involution acting by `(x, y) ↦ (x, y + s·x)` or `(x, y) ↦ (x + 2y, y)`.
fn z4z2_by_z2(kind: u8) -> CayleyGroup {
    let n = build::abelian(&[4, 2]);
    // element (x, y) has index 2x + y in abelian(&[4,2]) (built as ((1 x Z4) x Z2))
    let act = |e: usize| -> usize {
        let (x, y) = (e / 2, e % 2);
        match kind {
            0 => 2 * x + (y + x) % 2,
            _ => 2 * ((x + 2 * y) % 4) + y,
        }
    };
    let total = 16;
    let mut table = vec![0u32; total * total];
    for p in 0..total {
        for q in 0..total {
            let (a, g) = (p / 2, p % 2);
            let (b, k) = (q / 2, q % 2);
            let b2 = if g == 1 { act(b) } else { b };
            table[p * total + q] = (n.mul(a, b2) * 2 + (g + k) % 2) as u32;
        }
    }
    CayleyGroup::from_table(total, table).expect("semidirect product")
}

/// Non-abelian reference groups of a given order.
pub fn catalogue(order: usize) -> Vec<(GroupId, CayleyGroup)> {
    let c = build::cyclic;
    let dp = build::direct_product;
    let mut out: Vec<(GroupId, CayleyGroup)> = Vec::new();
    if order.is_multiple_of(2) && order >= 6 {
        out.push((GroupId::Dihedral(order / 2), build::dihedral(order / 2)));
    }
    if order.is_multiple_of(4) && order >= 12 {
        out.push((GroupId::BinaryDihedral(order / 4), build::dicyclic(order / 4)));
    }
    match order {
        8 => out.push((GroupId::Quaternion, build::dicyclic(2))),
        12 => out.push((GroupId::A4, alt4())),
        16 => {
            let d4 = build::dihedral(4);
            out.push((GroupId::SemiDihedral(16), z2_by(8, &c(2), |h| if h == 0 { 1 } else { 3 })));
            out.push((named("M16"), z2_by(8, &c(2), |h| if h == 0 { 1 } else { 5 })));
            out.push((named("Z4:Z4"), z2_by(4, &c(4), |h| if h % 2 == 0 { 1 } else { 3 })));
            out.push((x2(GroupId::Dihedral(4)), dp(&d4, &c(2))));
            out.push((x2(GroupId::Quaternion), dp(&build::dicyclic(2), &c(2))));
            out.push((named("Z2^2:Z4"), z4z2_by_z2(0)));
            out.push((named("Z4oD4"), z4z2_by_z2(1)));
        }
        18 => out.push((named("Z3xS3"), dp(&c(3), &build::dihedral(3)))),
        20 => out.push((named("Z5:Z4"), z2_by(5, &c(4), |h| [1, 2, 4, 3][h]))),
        24 => {
            let d4 = build::dihedral(4);
            out.push((GroupId::BinA4, sl23()));
            out.push((GroupId::S4, sym(4)));
            // D4 = Z4 ⋊ Z2 with index 2a + h; the action on Z3 is by (-1)^a
            out.push((GroupId::Z3RtimesD4, z2_by(3, &d4, |e| if (e / 2) % 2 == 0 { 1 } else { 2 })));
            out.push((named("Z3:Z8"), z2_by(3, &c(8), |h| if h % 2 == 0 { 1 } else { 2 })));
            out.push((named("Z4xS3"), dp(&c(4), &build::dihedral(3))));
            out.push((x2(GroupId::BinaryDihedral(3)), dp(&build::dicyclic(3), &c(2))));
            out.push((named("Z3xD4"), dp(&c(3), &d4)));
            out.push((named("Z3xQ8"), dp(&c(3), &build::dicyclic(2))));
            out.push((x2(GroupId::A4), dp(&alt4(), &c(2))));
            out.push((named("Z2^2xS3"), dp(&build::abelian(&[2, 2]), &build::dihedral(3))));
        }
        48 => {
            out.push((GroupId::Gl2F3, gl23()));
            out.push((GroupId::BinS4, binary_octahedral().cayley().clone()));
            out.push((x2(GroupId::S4), dp(&sym(4), &c(2))));
            out.push((x2(GroupId::BinA4), dp(&sl23(), &c(2))));
            out.push((named("Z4xA4"), dp(&c(4), &alt4())));
        }
        60 => out.push((GroupId::A5, alt5())),
        _ => {}
    }
    out
}

/// Label of an abstract group: exact for abelian groups, by catalogue fingerprint otherwise.
pub fn identify_cayley(g: &CayleyGroup) -> GroupId {
    if g.is_abelian() {
        return abelian_label(&g.abelian_invariants_of_abelian());
    }
    let fp = Fingerprint::of(g);
    let matches: Vec<GroupId> = catalogue(g.order()).into_iter().filter(|(_, h)| Fingerprint::of(h) == fp).map(|(id, _)| id).collect();
    match matches.as_slice() {
        [one] => one.clone(),
        _ => GroupId::Unknown(fp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_fingerprints_are_distinct() {
        for order in [6, 8, 10, 12, 16, 18, 20, 24, 48, 60] {
            let cat = catalogue(order);
            for (i, (a, ga)) in cat.iter().enumerate() {
                assert_eq!(ga.order(), order, "{a}");
                assert!(!ga.is_abelian(), "{a}");
                for (b, gb) in cat.iter().skip(i + 1) {
                    assert_ne!(Fingerprint::of(ga), Fingerprint::of(gb), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn order_eight_is_separated() {
        let labels: Vec<GroupId> =
            [build::dihedral(4), build::dicyclic(2), build::cyclic(8), build::abelian(&[2, 4]), build::abelian(&[2, 2, 2])]
                .iter()
                .map(identify_cayley)
                .collect();
        assert_eq!(labels, vec![GroupId::Dihedral(4), GroupId::Quaternion, GroupId::Cyclic(8), GroupId::Z2xZ4, GroupId::Z2cube]);
    }

    #[test]
    fn binary_octahedral_is_not_gl23() {
        let b = binary_octahedral();
        assert_eq!(b.order(), 48);
        assert_eq!(b.identify(), GroupId::BinS4);
        assert_eq!(identify_cayley(&gl23()), GroupId::Gl2F3);
    }
}
