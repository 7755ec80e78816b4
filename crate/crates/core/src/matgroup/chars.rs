//! Character tables of small groups, computed from induced characters of
//! cyclic subgroups, tensor products and Galois conjugation.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::cayley::{build, CayleyGroup};
use crate::{CycNum, Error, Result};

/// A class function, stored as one value per conjugacy class.
pub type ClassFunction = Vec<CycNum>;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    /// `power_class[c][k]` = class of `x^k` for `x` in class `c`, `k < exponent`.
    power_class: Vec<Vec<usize>>,
    exponent: usize,
    irreducibles: Vec<ClassFunction>,
}

/// The linear characters of `g`, computed through its abelianization, as
/// element-indexed exponents `v` with `χ(x) = ζ_e^{v(x)}`, `e` the exponent of `G/G'`.
pub fn linear_character_exponents(g: &CayleyGroup) -> (usize, Vec<Vec<usize>>) {
    let derived = g.derived_subgroup();
    let (ab, proj) = g.quotient(&derived);
    let e = ab.exponent();
    let target = build::cyclic(e);
    let gens = ab.small_generating_set();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(map) = ab.extend_hom(&gens, &choice, &target) {
            out.push(proj.iter().map(|&q| map[q]).collect());
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                debug_assert_eq!(out.len(), ab.order());
                out.sort();
                return (e, out);
            }
            choice[i] += 1;
            if choice[i] < e {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Linear characters as class functions over the conjugacy classes of `g`.
pub fn linear_characters(g: &CayleyGroup) -> Vec<ClassFunction> {
    let classes = g.conjugacy_classes();
    let (e, homs) = linear_character_exponents(g);
    homs.iter().map(|v| classes.iter().map(|c| CycNum::root_of_unity(e as u32, v[c[0]] as i64)).collect()).collect()
}

impl CharacterTable {
    /// Computes the table; `seeds` are optional extra characters (e.g. a natural representation).
    pub fn compute(g: &CayleyGroup, seeds: &[ClassFunction]) -> Result<CharacterTable> {
        let classes = g.conjugacy_classes();
        let mut class_of = vec![0usize; g.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let exponent = g.exponent();
        let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
        let power_class = classes
            .iter()
            .map(|c| {
                let mut acc = g.identity();
                (0..exponent)
                    .map(|_| {
                        let k = class_of[acc];
                        acc = g.mul(acc, c[0]);
                        k
                    })
                    .collect()
            })
            .collect();
        let mut table =
            CharacterTable { order: g.order(), classes, class_of, inverse_class, power_class, exponent, irreducibles: Vec::new() };
        table.fill(g, seeds)?;
        Ok(table)
    }

    fn fill(&mut self, g: &CayleyGroup, seeds: &[ClassFunction]) -> Result<()> {
        let k = self.classes.len();
        let mut pending: Vec<ClassFunction> = linear_characters(g);
        pending.extend(seeds.iter().cloned());
        for c in &self.classes {
            let x = c[0];
            let m = g.elem_order(x);
            for j in 0..m {
                pending.push(self.induced_from_cyclic(g, x, j));
            }
        }
        let mut residues: Vec<ClassFunction> = Vec::new();
        let mut cursor = 0;
        while self.irreducibles.len() < k {
            if cursor < pending.len() {
                let cand = pending[cursor].clone();
                cursor += 1;
                if let Some(found) = self.absorb(cand, &mut residues) {
                    let known = self.irreducibles.len();
                    for chi in self.galois_orbit(&found) {
                        if !self.irreducibles.contains(&chi) {
                            self.irreducibles.push(chi);
                        }
                    }
                    // tensor new irreducibles with everything known so far
                    for a in known..self.irreducibles.len() {
                        pending.extend(self.squares(&self.irreducibles[a]));
                        for b in 0..self.irreducibles.len() {
                            pending.push(self.product(&self.irreducibles[a], &self.irreducibles[b]));
                        }
                    }
                    pending.append(&mut residues);
                }
                continue;
            }
            // Exhausted: try differences of residues, then the regular character.
            if let Some(found) = self.combine_residue_pairs(&residues) {
                pending.push(found);
                pending.append(&mut residues);
                continue;
            }
            if self.irreducibles.len() + 1 == k {
                let reg = self.regular_residue();
                let norm = self.inner(&reg, &reg);
                let d = norm.to_rational().and_then(|r| r.to_integer().to_i64()).map(|n| (n as f64).sqrt().round() as i64);
                if let Some(d) = d.filter(|&d| d > 0) {
                    let chi: ClassFunction = reg.iter().map(|v| v.scale(&BigRational::new(1.into(), d.into()))).collect();
                    if self.is_irreducible(&chi) {
                        self.irreducibles.push(chi);
                        continue;
                    }
                }
            }
            return Err(Error::UnsupportedGroup(format!(
                "found {} of {} irreducible characters for a group of order {}",
                self.irreducibles.len(),
                k,
                self.order
            )));
        }
        self.irreducibles.sort_by(|a, b| {
            let da = a[0].to_rational().unwrap_or_default();
            let db = b[0].to_rational().unwrap_or_default();
            let ta = a.iter().all(|v| v.is_one());
            let tb = b.iter().all(|v| v.is_one());
            tb.cmp(&ta).then(da.cmp(&db)).then(a.cmp(b))
        });
        self.verify()
    }

    fn induced_from_cyclic(&self, g: &CayleyGroup, x: usize, j: usize) -> ClassFunction {
        let m = g.elem_order(x);
        let mut power_index = vec![usize::MAX; g.order()];
        let mut acc = g.identity();
        for a in 0..m {
            power_index[acc] = a;
            acc = g.mul(acc, x);
        }
        self.classes
            .iter()
            .map(|c| {
                let y = c[0];
                let mut counts = vec![0i64; m];
                for t in 0..g.order() {
                    let a = power_index[g.conj(t, y)];
                    if a != usize::MAX {
                        counts[a] += 1;
                    }
                }
                let mut v = CycNum::zero();
                for (a, &cnt) in counts.iter().enumerate() {
                    if cnt != 0 {
                        v = &v + &CycNum::root_of_unity(m as u32, (a * j) as i64).scale(&BigRational::new(cnt.into(), (m as i64).into()));
                    }
                }
                v
            })
            .collect()
    }

    /// Projects out known irreducibles; returns an irreducible if the remainder is one.
    fn absorb(&self, cand: ClassFunction, residues: &mut Vec<ClassFunction>) -> Option<ClassFunction> {
        let r = self.project_out(cand);
        if r.iter().all(|v| v.is_zero()) {
            return None;
        }
        if self.is_irreducible(&r) {
            return Some(r);
        }
        let neg: ClassFunction = r.iter().map(|v| -v).collect();
        if self.is_irreducible(&neg) {
            return Some(neg);
        }
        if !residues.contains(&r) {
            residues.push(r);
        }
        None
    }

    fn project_out(&self, mut f: ClassFunction) -> ClassFunction {
        for chi in &self.irreducibles {
            let c = self.inner(&f, chi);
            if !c.is_zero() {
                f = f.iter().zip(chi).map(|(a, b)| a - &(&c * b)).collect();
            }
        }
        f
    }

    fn is_irreducible(&self, f: &ClassFunction) -> bool {
        let deg_ok = f[0].to_rational().is_some_and(|d| d.is_integer() && d.is_positive());
        deg_ok && self.inner(f, f).is_one()
    }

    /// Pairwise reduction of the residue lattice; returns an irreducible if one surfaces.
    fn combine_residue_pairs(&self, residues: &[ClassFunction]) -> Option<ClassFunction> {
        let norm = |f: &ClassFunction| self.inner(f, f).to_i64().unwrap_or(i64::MAX);
        let mut basis: Vec<(ClassFunction, i64)> = Vec::new();
        for r in residues {
            let r = self.project_out(r.clone());
            if r.iter().any(|v| !v.is_zero()) && !basis.iter().any(|(b, _)| *b == r) {
                let n = norm(&r);
                basis.push((r, n));
            }
        }
        loop {
            let mut improved = false;
            let mut i = 0;
            while i < basis.len() {
                let mut removed = false;
                for j in 0..basis.len() {
                    if i == j {
                        continue;
                    }
                    for sign in [-1i64, 1] {
                        let s = CycNum::from_int(sign);
                        let comb: ClassFunction = basis[i].0.iter().zip(&basis[j].0).map(|(x, y)| x + &(&s * y)).collect();
                        if comb.iter().all(|v| v.is_zero()) {
                            removed = true;
                            break;
                        }
                        let n = norm(&comb);
                        if n < basis[i].1 {
                            basis[i] = (comb, n);
                            improved = true;
                        }
                    }
                    if removed {
                        break;
                    }
                }
                if removed {
                    basis.remove(i);
                    improved = true;
                } else {
                    i += 1;
                }
            }
            for (b, n) in &basis {
                if *n == 1 {
                    let neg: ClassFunction = b.iter().map(|v| -v).collect();
                    if self.is_irreducible(b) {
                        return Some(b.clone());
                    }
                    if self.is_irreducible(&neg) {
                        return Some(neg);
                    }
                }
            }
            if !improved {
                return None;
            }
        }
    }

    /// Symmetric and alternating squares of a character.
    fn squares(&self, chi: &ClassFunction) -> [ClassFunction; 2] {
        let half = BigRational::new(1.into(), 2.into());
        let sq: Vec<CycNum> = chi.iter().map(|v| v * v).collect();
        let at_square: Vec<CycNum> = (0..chi.len()).map(|c| chi[self.power_class[c][2 % self.exponent.max(1)]].clone()).collect();
        let sym = sq.iter().zip(&at_square).map(|(a, b)| (a + b).scale(&half)).collect();
        let alt = sq.iter().zip(&at_square).map(|(a, b)| (a - b).scale(&half)).collect();
        [sym, alt]
    }

    fn regular_residue(&self) -> ClassFunction {
        let mut reg: ClassFunction = vec![CycNum::zero(); self.classes.len()];
        reg[0] = CycNum::from_int(self.order as i64);
        for chi in &self.irreducibles {
            reg = reg.iter().zip(chi).map(|(r, c)| r - &(&chi[0] * c)).collect();
        }
        reg
    }

    fn galois_orbit(&self, chi: &ClassFunction) -> Vec<ClassFunction> {
        let mut out: Vec<ClassFunction> = Vec::new();
        for a in 1..=self.exponent.max(1) {
            if a.gcd(&self.exponent) != 1 && self.exponent > 1 {
                continue;
            }
            let img: ClassFunction = (0..self.classes.len()).map(|c| chi[self.power_class[c][a % self.exponent]].clone()).collect();
            if !out.contains(&img) {
                out.push(img);
            }
        }
        out
    }

    fn product(&self, a: &ClassFunction, b: &ClassFunction) -> ClassFunction {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_x a(x) conj(b(x))`.
    pub fn inner(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero();
        for (c, cls) in self.classes.iter().enumerate() {
            let term = &a[c] * &b[self.inverse_class[c]];
            acc = &acc + &term.scale(&BigRational::from_integer((cls.len() as i64).into()));
        }
        acc.scale(&BigRational::new(1.into(), (self.order as i64).into()))
    }

    fn verify(&self) -> Result<()> {
        let k = self.classes.len();
        let mut sum_sq = 0i64;
        for (i, a) in self.irreducibles.iter().enumerate() {
            let d = a[0].to_i64().ok_or_else(|| Error::UnsupportedGroup("non-integral degree".into()))?;
            sum_sq += d * d;
            for (j, b) in self.irreducibles.iter().enumerate() {
                let want = if i == j { CycNum::one() } else { CycNum::zero() };
                if self.inner(a, b) != want {
                    return Err(Error::UnsupportedGroup("row orthogonality fails".into()));
                }
            }
        }
        if sum_sq != self.order as i64 || self.irreducibles.len() != k {
            return Err(Error::UnsupportedGroup("degree sum mismatch".into()));
        }
        self.verify_columns()
    }

    /// Column orthogonality: `Σ_χ χ(x) conj(χ(y)) = |C_G(x)| δ_{xy}`.
    pub fn verify_columns(&self) -> Result<()> {
        for c in 0..self.classes.len() {
            for d in 0..self.classes.len() {
                let mut acc = CycNum::zero();
                for chi in &self.irreducibles {
                    acc = &acc + &(&chi[c] * &chi[self.inverse_class[d]]);
                }
                let want = if c == d { CycNum::from_int((self.order / self.classes[c].len()) as i64) } else { CycNum::zero() };
                if acc != want {
                    return Err(Error::UnsupportedGroup("column orthogonality fails".into()));
                }
            }
        }
        Ok(())
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degree(&self, i: usize) -> usize {
        self.irreducibles[i][0].to_i64().expect("integral degree") as usize
    }

    pub fn value(&self, i: usize, x: usize) -> &CycNum {
        &self.irreducibles[i][self.class_of[x]]
    }

    /// Index of the complex-conjugate character.
    pub fn dual(&self, i: usize) -> usize {
        let chi = &self.irreducibles[i];
        let conj: ClassFunction = (0..chi.len()).map(|c| chi[self.inverse_class[c]].clone()).collect();
        self.irreducibles.iter().position(|x| *x == conj).expect("dual character present")
    }

    /// Class function from an element-indexed function.
    pub fn class_function(&self, f: impl Fn(usize) -> CycNum) -> ClassFunction {
        self.classes.iter().map(|c| f(c[0])).collect()
    }

    /// Multiplicities of the irreducibles in a character.
    pub fn decompose(&self, f: &[CycNum]) -> Result<Vec<i64>> {
        let mults: Vec<i64> = self
            .irreducibles
            .iter()
            .map(|chi| self.inner(f, chi).to_i64().ok_or_else(|| Error::Domain("class function is not a virtual character".into())))
            .collect::<Result<_>>()?;
        let mut back = vec![CycNum::zero(); f.len()];
        for (m, chi) in mults.iter().zip(&self.irreducibles) {
            if *m != 0 {
                back = back.iter().zip(chi).map(|(b, c)| b + &c.scale(&BigRational::from_integer((*m).into()))).collect();
            }
        }
        if back != f {
            return Err(Error::Domain("class function outside the span of the character table".into()));
        }
        Ok(mults)
    }

    /// Multiplicity of the eigenvalue `ζ_m^β` of `ρ(x)` for the irreducible `i`, where `m` is the order of `x`.
    pub fn eigenvalue_multiplicity(&self, g: &CayleyGroup, i: usize, x: usize, beta: i64) -> i64 {
        let m = g.elem_order(x);
        let mut acc = CycNum::zero();
        let mut y = g.identity();
        for k in 0..m {
            let v = self.value(i, y);
            acc = &acc + &(v * &CycNum::root_of_unity(m as u32, -beta * k as i64));
            y = g.mul(y, x);
        }
        let r = acc.scale(&BigRational::new(1.into(), (m as i64).into()));
        r.to_i64().expect("integral eigenvalue multiplicity")
    }

    pub fn trivial_index(&self) -> usize {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::cayley::build::*;

    fn degrees(g: &CayleyGroup) -> Vec<usize> {
        let t = CharacterTable::compute(g, &[]).unwrap();
        (0..t.irreducibles().len()).map(|i| t.degree(i)).collect()
    }

    #[test]
    fn textbook_degrees() {
        assert_eq!(degrees(&abelian(&[2, 2])), vec![1, 1, 1, 1]);
        assert_eq!(degrees(&dihedral(3)), vec![1, 1, 2]);
        assert_eq!(degrees(&dihedral(4)), vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees(&dicyclic(2)), vec![1, 1, 1, 1, 2]);
        let s4 = permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        assert_eq!(degrees(&s4), vec![1, 1, 2, 3, 3]);
        let a5 = permutations(&[vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2], vec![1, 0, 3, 2, 4]]);
        assert_eq!(a5.order(), 60);
        assert_eq!(degrees(&a5), vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn linear_character_counts() {
        assert_eq!(linear_characters(&dihedral(3)).len(), 2);
        assert_eq!(linear_characters(&cyclic(6)).len(), 6);
        assert_eq!(linear_characters(&dicyclic(2)).len(), 4);
    }

    #[test]
    fn sl23_and_gl23() {
        let sl23 = matrices_mod_p(3, &[[1, 1, 0, 1], [1, 0, 1, 1]]);
        assert_eq!(sl23.order(), 24);
        assert_eq!(degrees(&sl23), vec![1, 1, 1, 2, 2, 2, 3]);
        let gl23 = matrices_mod_p(3, &[[1, 1, 0, 1], [1, 0, 1, 1], [2, 0, 0, 1]]);
        assert_eq!(gl23.order(), 48);
        assert_eq!(degrees(&gl23), vec![1, 1, 2, 2, 2, 3, 3, 4]);
    }
}
