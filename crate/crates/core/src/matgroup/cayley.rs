//! Finite groups given by multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_integer::Integer;

use crate::{Error, Result};

/// A finite group on `0..n` with an explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    orders: Vec<usize>,
}

/// Builds a group from generators of a concrete group, returning the elements in
/// sorted order together with the table on their indices.
pub fn generate<T, F>(gens: &[T], identity: T, mul: F, bound: usize) -> Result<(Vec<T>, CayleyGroup)>
where
    T: Clone + Ord + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    seen.insert(identity, 0);
    // parent[i] = (p, s) with elems[i] = elems[p] * gens[s]
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut rmul: Vec<Vec<usize>> = Vec::new();
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        let mut row = Vec::with_capacity(gens.len());
        for (s, g) in gens.iter().enumerate() {
            let y = mul(&x, g);
            let idx = match seen.get(&y) {
                Some(&i) => i,
                None => {
                    if elems.len() >= bound {
                        return Err(Error::InfiniteOrSuspicious(bound));
                    }
                    let i = elems.len();
                    seen.insert(y.clone(), i);
                    elems.push(y);
                    parent.push((head, s));
                    i
                }
            };
            row.push(idx);
        }
        rmul.push(row);
        head += 1;
    }
    let n = elems.len();
    // Left-multiplication by a is recovered along the BFS tree: a*(p*s) = (a*p)*s.
    let mut raw = vec![0u32; n * n];
    for a in 0..n {
        raw[a * n] = a as u32;
        for b in 1..n {
            let (p, s) = parent[b];
            raw[a * n + b] = rmul[raw[a * n + p] as usize][s] as u32;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| elems[i].cmp(&elems[j]));
    let mut pos = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[pos[a] * n + pos[b]] = pos[raw[a * n + b] as usize] as u32;
        }
    }
    let sorted: Vec<T> = order.iter().map(|&i| elems[i].clone()).collect();
    Ok((sorted, CayleyGroup::from_table_unchecked(n, table)))
}

impl CayleyGroup {
    fn from_table_unchecked(n: usize, table: Vec<u32>) -> CayleyGroup {
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e * n + x] as usize == x)).expect("identity");
        let inverse: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| table[x * n + y] as usize == identity).expect("inverse")).collect();
        let mut g = CayleyGroup { n, table, identity, inverse, orders: Vec::new() };
        g.orders = (0..n)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != identity {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        g
    }

    /// Validates a full multiplication table (closure, identity, inverses, associativity).
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<CayleyGroup> {
        if table.len() != n * n || table.iter().any(|&v| v as usize >= n) || n == 0 {
            return Err(Error::ConstructionInconsistent("malformed table".into()));
        }
        let ident = (0..n).find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x));
        let Some(e) = ident else {
            return Err(Error::ConstructionInconsistent("no identity".into()));
        };
        for x in 0..n {
            if !(0..n).any(|y| table[x * n + y] as usize == e) {
                return Err(Error::ConstructionInconsistent("missing inverse".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c] as usize] {
                        return Err(Error::ConstructionInconsistent("not associative".into()));
                    }
                }
            }
        }
        Ok(CayleyGroup::from_table_unchecked(n, table))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let m = self.orders[a] as i64;
        let k = k.rem_euclid(m);
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inverse[a], self.inverse[b]))
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted multiset of element orders.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &o in &self.orders {
            *counts.entry(o).or_default() += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort();
        v
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&x| inside[x]).collect()
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated(gens).len() == self.n
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| (0..self.n).all(|x| self.mul(z, x) == self.mul(x, z))).collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                comms.push(self.commutator(a, b));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated(&comms)
    }

    /// Conjugacy classes; identity class first, then by element order, size and smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if assigned[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|g| self.conj(g, x)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                assigned[y] = true;
            }
            classes.push(cls);
        }
        classes.sort_by_key(|c| (self.orders[c[0]], c.len(), c[0]));
        classes
    }

    /// Quotient by a normal subgroup, with the projection map.
    pub fn quotient(&self, normal: &[usize]) -> (CayleyGroup, Vec<usize>) {
        let mut rep_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if rep_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &h in normal {
                rep_of[self.mul(x, h)] = idx;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = rep_of[self.mul(a, b)] as u32;
            }
        }
        (CayleyGroup::from_table_unchecked(m, table), rep_of)
    }

    /// Invariant factors of an abelian group, ascending (e.g. `[2, 4]`); empty for the trivial group.
    pub fn abelian_invariants_of_abelian(&self) -> Vec<usize> {
        let mut prime_powers: Vec<Vec<usize>> = Vec::new();
        let mut n = self.n;
        let mut p = 2;
        let mut primes = Vec::new();
        while n > 1 {
            if n.is_multiple_of(p) {
                primes.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        for &p in &primes {
            // s[k] = log_p |{x : x^{p^k} = 1}|
            let mut s = vec![0usize];
            let mut pk = 1;
            loop {
                pk *= p;
                let cnt = self.orders.iter().filter(|&&o| pk % o == 0).count();
                let mut lg = 0;
                let mut c = cnt;
                while c > 1 {
                    c /= p;
                    lg += 1;
                }
                s.push(lg);
                if s[s.len() - 1] == s[s.len() - 2] {
                    break;
                }
            }
            let r: Vec<usize> = s.windows(2).map(|w| w[1] - w[0]).collect();
            let mut factors = Vec::new();
            for k in 1..r.len() + 1 {
                let here = r[k - 1] - r.get(k).copied().unwrap_or(0);
                for _ in 0..here {
                    factors.push(p.pow(k as u32));
                }
            }
            factors.sort_unstable_by(|a, b| b.cmp(a));
            prime_powers.push(factors);
        }
        let len = prime_powers.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut inv: Vec<usize> = (0..len).map(|i| prime_powers.iter().map(|v| v.get(i).copied().unwrap_or(1)).product()).collect();
        inv.sort_unstable();
        inv
    }

    /// Invariant factors of the abelianization.
    pub fn abelian_invariants(&self) -> Vec<usize> {
        let derived = self.derived_subgroup();
        let (ab, _) = self.quotient(&derived);
        ab.abelian_invariants_of_abelian()
    }

    /// A small generating set, chosen greedily by subgroup growth.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.generated(&gens);
        while current.len() < self.n {
            let mut best: Option<(usize, usize)> = None;
            for x in 0..self.n {
                if current.binary_search(&x).is_ok() {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(x);
                let size = self.generated(&trial).len();
                if best.is_none_or(|(s, _)| size > s) {
                    best = Some((size, x));
                }
            }
            let (_, x) = best.expect("proper subgroup has an outside element");
            gens.push(x);
            current = self.generated(&gens);
        }
        gens
    }

    /// Extends `gens[i] ↦ images[i]` to a homomorphism into `dst`, if consistent.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize], dst: &CayleyGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[self.identity] = dst.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let val = dst.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = val;
                    queue.push_back(y);
                } else if map[y] != val {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        Some(map)
    }

    fn bijective_homs(&self, dst: &CayleyGroup, first_only: bool) -> Vec<Vec<usize>> {
        if self.n != dst.n || self.order_statistics() != dst.order_statistics() {
            return Vec::new();
        }
        let gens = self.small_generating_set();
        let candidates: Vec<Vec<usize>> = gens.iter().map(|&g| (0..dst.n).filter(|&y| dst.orders[y] == self.orders[g]).collect()).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
            if let Some(map) = self.extend_hom(&gens, &images, dst) {
                let mut seen = vec![false; dst.n];
                if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                    out.push(map);
                    if first_only {
                        return out;
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// All automorphisms, as element maps; the identity map comes first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut auts = self.bijective_homs(self, false);
        auts.sort();
        let id: Vec<usize> = (0..self.n).collect();
        if let Some(pos) = auts.iter().position(|a| *a == id) {
            let a = auts.remove(pos);
            auts.insert(0, a);
        }
        auts
    }

    /// An isomorphism onto `other`, if the groups are isomorphic.
    pub fn isomorphism_to(&self, other: &CayleyGroup) -> Option<Vec<usize>> {
        self.bijective_homs(other, true).into_iter().next()
    }

    /// Subgroup on the given sorted elements, with the embedding of its indices.
    pub fn subgroup(&self, elems: &[usize]) -> (CayleyGroup, Vec<usize>) {
        let m = elems.len();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = vec![0u32; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = pos[&self.mul(a, b)] as u32;
            }
        }
        (CayleyGroup::from_table_unchecked(m, table), elems.to_vec())
    }
}

/// Standard constructions used for reference groups.
pub mod build {
    use super::*;

    pub fn cyclic(n: usize) -> CayleyGroup {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        CayleyGroup::from_table_unchecked(n, table)
    }

    /// Direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &CayleyGroup, b: &CayleyGroup) -> CayleyGroup {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        CayleyGroup::from_table_unchecked(n, table)
    }

    pub fn abelian(factors: &[usize]) -> CayleyGroup {
        factors.iter().fold(cyclic(1), |acc, &m| direct_product(&acc, &cyclic(m)))
    }

    /// `Z_n ⋊ H` where `h` acts on `Z_n` by multiplication with `units[h]`.
    /// Element `(a, h)` has index `a * |H| + h`.
    pub fn semidirect_cyclic(n: usize, h: &CayleyGroup, units: &[usize]) -> Result<CayleyGroup> {
        let nh = h.order();
        for x in 0..nh {
            for y in 0..nh {
                if units[h.mul(x, y)] % n != (units[x] * units[y]) % n {
                    return Err(Error::ConstructionInconsistent("action is not a homomorphism".into()));
                }
            }
        }
        let total = n * nh;
        let mut table = vec![0u32; total * total];
        for x in 0..total {
            for y in 0..total {
                let (a, g) = (x / nh, x % nh);
                let (b, k) = (y / nh, y % nh);
                let c = (a + units[g] * b) % n;
                table[x * total + y] = (c * nh + h.mul(g, k)) as u32;
            }
        }
        Ok(CayleyGroup::from_table_unchecked(total, table))
    }

    pub fn dihedral(n: usize) -> CayleyGroup {
        let units = [1, n - 1];
        semidirect_cyclic(n, &cyclic(2), &units).expect("dihedral action")
    }

    /// Dicyclic group of order `4n`: `⟨a, x | a^{2n} = 1, x² = aⁿ, x a x⁻¹ = a⁻¹⟩`.
    pub fn dicyclic(n: usize) -> CayleyGroup {
        let m = 2 * n;
        let total = 2 * m;
        // element a^k x^j has index 2k + j
        let mul = |(k1, j1): (usize, usize), (k2, j2): (usize, usize)| -> (usize, usize) {
            match (j1, j2) {
                (0, _) => ((k1 + k2) % m, j2),
                (1, 0) => ((k1 + m - k2) % m, 1),
                _ => ((k1 + m - k2 + n) % m, 0),
            }
        };
        let mut table = vec![0u32; total * total];
        for x in 0..total {
            for y in 0..total {
                let (k, j) = mul((x / 2, x % 2), (y / 2, y % 2));
                table[x * total + y] = (2 * k + j) as u32;
            }
        }
        CayleyGroup::from_table_unchecked(total, table)
    }

    pub fn permutations(gens: &[Vec<usize>]) -> CayleyGroup {
        let deg = gens[0].len();
        let id: Vec<usize> = (0..deg).collect();
        // (p*q)(i) = p(q(i))
        let (_, g) = generate(gens, id, |p, q| q.iter().map(|&i| p[i]).collect(), 100_000).expect("finite");
        g
    }

    /// Group generated by 2×2 matrices over `F_p`.
    pub fn matrices_mod_p(p: u32, gens: &[[u32; 4]]) -> CayleyGroup {
        let mul = |a: &[u32; 4], b: &[u32; 4]| -> [u32; 4] {
            [
                (a[0] * b[0] + a[1] * b[2]) % p,
                (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p,
                (a[2] * b[1] + a[3] * b[3]) % p,
            ]
        };
        let (_, g) = generate(gens, [1, 0, 0, 1], mul, 100_000).expect("finite");
        g
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn small_constructions() {
        assert_eq!(dihedral(4).order(), 8);
        assert!(!dihedral(3).is_abelian());
        assert_eq!(dicyclic(2).order_statistics(), vec![(1, 1), (2, 1), (4, 6)]);
        assert_eq!(abelian(&[2, 4]).abelian_invariants_of_abelian(), vec![2, 4]);
        assert_eq!(abelian(&[2, 3]).abelian_invariants_of_abelian(), vec![6]);
        assert_eq!(abelian(&[2, 2, 2]).abelian_invariants_of_abelian(), vec![2, 2, 2]);
        assert_eq!(cyclic(1).abelian_invariants_of_abelian(), Vec::<usize>::new());
    }

    #[test]
    fn derived_and_center() {
        let s3 = permutations(&[vec![1, 0, 2], vec![1, 2, 0]]);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.derived_subgroup().len(), 3);
        assert_eq!(s3.center().len(), 1);
        assert_eq!(s3.abelian_invariants(), vec![2]);
        assert_eq!(dicyclic(2).abelian_invariants(), vec![2, 2]);
        assert_eq!(s3.conjugacy_classes().len(), 3);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(abelian(&[2, 2]).automorphisms().len(), 6);
        assert_eq!(dihedral(4).automorphisms().len(), 8);
        assert_eq!(dicyclic(2).automorphisms().len(), 24);
        assert_eq!(cyclic(8).automorphisms().len(), 4);
        assert_eq!(abelian(&[2, 4]).automorphisms().len(), 8);
    }

    #[test]
    fn table_validation_rejects_garbage() {
        assert!(CayleyGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(CayleyGroup::from_table(2, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn isomorphism_search() {
        let d3 = dihedral(3);
        let s3 = permutations(&[vec![1, 0, 2], vec![1, 2, 0]]);
        let iso = d3.isomorphism_to(&s3).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(iso[d3.mul(a, b)], s3.mul(iso[a], iso[b]));
            }
        }
        assert!(cyclic(6).isomorphism_to(&s3).is_none());
    }
}
