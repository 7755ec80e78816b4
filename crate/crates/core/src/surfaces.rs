//! Invariants of diagonal quotients `(C₁ × C₂)/G` and the searches built on them.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bolza::{classify_all, CurveAction};
use crate::covers::{automorphism_action, group_by_label, permute_multiplicities, realized_covers, CharDecomp, AZIONI_GROUPS};
use crate::matgroup::{CayleyGroup, CharacterTable};
use crate::{CycNum, Error, Result};

/// Two curves with actions of the same group, through their representations on differentials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePair {
    pub group: String,
    pub left_genus: u32,
    pub right_genus: u32,
    pub left: CharDecomp,
    pub right: CharDecomp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    pub p_g: i64,
    pub q: i64,
    pub chi: i64,
    /// Irreducibles `ρ` with `mult_left(ρ)·mult_right(ρ*) > 0`.
    pub pairing_characters: Vec<String>,
}

impl QuotientInvariants {
    /// The nontrivial pairing characters.
    pub fn nontrivial_pairing(&self, trivial_label: &str) -> Vec<&str> {
        self.pairing_characters.iter().map(|s| s.as_str()).filter(|s| *s != trivial_label).collect()
    }
}

fn character_values(g: &CayleyGroup, table: &CharacterTable, mult: &[i64]) -> Vec<CycNum> {
    (0..g.order())
        .map(|x| {
            let mut s = CycNum::zero();
            for (i, &m) in mult.iter().enumerate() {
                if m != 0 {
                    s = &s + &(table.value(i, x) * &CycNum::from_int(m));
                }
            }
            s
        })
        .collect()
}

/// `p_g` as the dimension of invariants in the tensor product, by a character sum over elements.
pub fn invariant_tensor_dimension(g: &CayleyGroup, table: &CharacterTable, left: &[i64], right: &[i64]) -> Result<i64> {
    let a = character_values(g, table, left);
    let b = character_values(g, table, right);
    let mut s = CycNum::zero();
    for (x, y) in a.iter().zip(&b) {
        s = &s + &(x * y);
    }
    let s = s.scale(&BigRational::new(1.into(), (g.order() as i64).into()));
    s.to_i64().ok_or_else(|| Error::ConstructionInconsistent(format!("non-integral invariant dimension {s}")))
}

/// `p_g` by pairing each irreducible with its dual.
pub fn dual_pairing_dimension(table: &CharacterTable, left: &[i64], right: &[i64]) -> i64 {
    (0..left.len()).map(|i| left[i] * right[table.dual(i)]).sum()
}

/// Invariants of the quotient from the two multiplicity vectors over one character table.
pub fn quotient_invariants(
    g: &CayleyGroup,
    table: &CharacterTable,
    labels: &[String],
    left: &[i64],
    right: &[i64],
) -> Result<QuotientInvariants> {
    let p_g = invariant_tensor_dimension(g, table, left, right)?;
    let paired = dual_pairing_dimension(table, left, right);
    if p_g != paired {
        return Err(Error::ConstructionInconsistent(format!("character sum gives p_g = {p_g}, dual pairing gives {paired}")));
    }
    let t = table.trivial_index();
    let q = left[t] + right[t];
    let pairing_characters = (0..left.len()).filter(|&i| left[i] * right[table.dual(i)] > 0).map(|i| labels[i].clone()).collect();
    Ok(QuotientInvariants { p_g, q, chi: 1 - q + p_g, pairing_characters })
}

/// Invariants of a pair whose group is one of the labelled abstract groups.
pub fn product_quotient_invariants(pair: &SurfacePair) -> Result<QuotientInvariants> {
    if pair.left.group != pair.group || pair.right.group != pair.group || pair.left.labels != pair.right.labels {
        return Err(Error::Usage(format!("pair mixes groups {} and {}", pair.left.group, pair.right.group)));
    }
    let g = group_by_label(&pair.group)?;
    let table = CharacterTable::compute(&g, &[])?;
    if table.irreducibles().len() != pair.left.multiplicities.len() {
        return Err(Error::Usage(format!("decomposition does not match the character table of {}", pair.group)));
    }
    quotient_invariants(&g, &table, &pair.left.labels, &pair.left.multiplicities, &pair.right.multiplicities)
}

/// Whether a unique nontrivial character pairs, once on each side, with both trivial multiplicities 1.
pub fn unique_pairing_condition(pair: &SurfacePair, inv: &QuotientInvariants) -> bool {
    let trivial = &pair.left.labels[0];
    let nontrivial = inv.nontrivial_pairing(trivial);
    if nontrivial.len() != 1 || pair.left.trivial_multiplicity() != 1 || pair.right.trivial_multiplicity() != 1 {
        return false;
    }
    let i = pair.left.labels.iter().position(|l| l == nontrivial[0]).expect("label from this table");
    pair.left.multiplicities[i] == 1 && pair.left.degrees[i] == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub pair: SurfacePair,
    pub invariants: QuotientInvariants,
    pub unique_pairing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub p_g: i64,
    pub q: i64,
    pub groups: Vec<String>,
    pub accepted: Vec<PairOutcome>,
    pub rejected: Vec<PairOutcome>,
}

fn group_outcomes(label: &str, p_g: i64, q: i64) -> Result<Vec<(bool, PairOutcome)>> {
    let g = group_by_label(label)?;
    let table = CharacterTable::compute(&g, &[])?;
    let action = automorphism_action(&g, &table);
    let mut decomps: Vec<(u32, CharDecomp)> = realized_covers(label, 1, 2, 5)?.into_iter().map(|c| (c.genus, c.decomposition)).collect();
    decomps.sort_by(|a, b| (a.0, &a.1.multiplicities).cmp(&(b.0, &b.1.multiplicities)));
    decomps.dedup_by(|a, b| a.1.multiplicities == b.1.multiplicities);

    let mut seen: BTreeSet<Vec<(u32, Vec<i64>)>> = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..decomps.len() {
        for j in i..decomps.len() {
            let (gl, l) = &decomps[i];
            let (gr, r) = &decomps[j];
            let key = action
                .iter()
                .map(|p| {
                    let mut k =
                        vec![(*gl, permute_multiplicities(p, &l.multiplicities)), (*gr, permute_multiplicities(p, &r.multiplicities))];
                    k.sort();
                    k
                })
                .min()
                .expect("identity automorphism");
            if !seen.insert(key) {
                continue;
            }
            let pair = SurfacePair { group: label.to_string(), left_genus: *gl, right_genus: *gr, left: l.clone(), right: r.clone() };
            let invariants = quotient_invariants(&g, &table, &l.labels, &l.multiplicities, &r.multiplicities)?;
            let unique_pairing = unique_pairing_condition(&pair, &invariants);
            let hit = invariants.p_g == p_g && invariants.q == q;
            out.push((hit, PairOutcome { pair, invariants, unique_pairing }));
        }
    }
    Ok(out)
}

/// Pairs of covers of elliptic curves with genus in `[2, 5]` and the same group, modulo
/// simultaneous automorphisms and swapping, split by whether the quotient has the given `p_g`, `q`.
pub fn search_isotrivial(p_g: i64, q: i64) -> Result<SearchReport> {
    let per_group: Vec<Vec<(bool, PairOutcome)>> = AZIONI_GROUPS.par_iter().map(|l| group_outcomes(l, p_g, q)).collect::<Result<_>>()?;
    let mut report =
        SearchReport { p_g, q, groups: AZIONI_GROUPS.iter().map(|s| s.to_string()).collect(), accepted: Vec::new(), rejected: Vec::new() };
    for (hit, o) in per_group.into_iter().flatten() {
        if hit {
            report.accepted.push(o);
        } else {
            report.rejected.push(o);
        }
    }
    Ok(report)
}

pub fn search_isotrivial_pg2q2() -> Result<SearchReport> {
    search_isotrivial(2, 2)
}

/// The étale side: an unramified `G`-cover of a genus-2 curve, so `mult(ρ) = dim ρ + [ρ = 1]`.
pub fn etale_multiplicities(table: &CharacterTable) -> Vec<i64> {
    let t = table.trivial_index();
    (0..table.irreducibles().len()).map(|i| table.degree(i) as i64 + i64::from(i == t)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhInvariants {
    pub order: usize,
    #[serde(rename = "K_label")]
    pub k_label: String,
    #[serde(rename = "G_label")]
    pub g_label: String,
    pub invariants: QuotientInvariants,
    /// Genus of the étale cover.
    pub g_c1: i64,
    /// Invariants of the product `Y = C₁ × C₂`.
    pub q_y: i64,
    pub p_g_y: i64,
    pub chi_y: i64,
}

/// Invariants for an étale cover of a genus-2 curve paired with a genus-2 couple with rational quotient.
pub fn gh_invariants(action: &CurveAction) -> Result<GhInvariants> {
    let right = &action.char_decomp;
    if right.dimension() != 2 || right.trivial_multiplicity() != 0 {
        return Err(Error::Usage(format!(
            "right side must be a genus-2 action with rational quotient, got dimension {} and quotient genus {}",
            right.dimension(),
            right.trivial_multiplicity()
        )));
    }
    let g = action.group.cayley();
    let left = etale_multiplicities(&action.table);
    let invariants = quotient_invariants(g, &action.table, &right.labels, &left, &right.multiplicities)?;
    let n = g.order() as i64;
    let g_c1 = left.iter().enumerate().map(|(i, m)| m * action.table.degree(i) as i64).sum::<i64>();
    let q_y = g_c1 + 2;
    let p_g_y = 2 * g_c1;
    Ok(GhInvariants {
        order: n as usize,
        k_label: action.klein.label(),
        g_label: action.group_label(),
        invariants,
        g_c1,
        q_y,
        p_g_y,
        chi_y: 1 - q_y + p_g_y,
    })
}

/// `gh_invariants` for every classified couple whose group has order `n`.
pub fn gh_for_order(n: usize) -> Result<Vec<GhInvariants>> {
    let c = classify_all()?;
    let out: Vec<GhInvariants> = c.couples().into_iter().filter(|a| a.group.order() == n).map(gh_invariants).collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::Usage(format!("no classified couple has a group of order {n}")));
    }
    Ok(out)
}

/// Arithmetic genus of two curves of genera `g1`, `g2` meeting transversally in `delta` nodes.
pub fn nodal_union_genus(g1: i64, g2: i64, delta: i64) -> Result<i64> {
    if g1 < 0 || g2 < 0 || delta < 0 {
        return Err(Error::Domain(format!("negative input ({g1}, {g2}, {delta})")));
    }
    Ok(g1 + g2 + delta - 1)
}
