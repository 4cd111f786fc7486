//! Finite groups stored as explicit multiplication tables, their subgroups
//! and quotient maps.
//!
//! Element orderings are fixed by each constructor so that every table is
//! reproducible:
//!
//! * `C_n`: `a^i` has index `i`.
//! * `D_n`: `r^i s^j` has index `j * n/2 + i`.
//! * `Dic_n`: `a^i b^j` has index `j * n/2 + i`, with `a` of order `n/2`.
//! * `S_n`, `A_n`, permutation groups: permutations in lexicographic order of
//!   their image tuples.
//! * `SL(2,p)`: matrices `[[a,b],[c,d]]` in lexicographic order of `(a,b,c,d)`.
//! * `A x B`: `(a, b)` has index `a * |B| + b`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Group {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    label: String,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label, self.order)
    }
}

impl Group {
    /// Builds a group from a row-major multiplication table, checking every
    /// group axiom exhaustively.
    pub fn from_table(label: impl Into<String>, order: usize, mul: Vec<usize>) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e * order + g] == g && mul[g * order + e] == g))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            let h = (0..order)
                .find(|&h| mul[g * order + h] == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {g} has no inverse")))?;
            if mul[h * order + g] != identity {
                return Err(Error::InvalidTable(format!("element {g} has no two-sided inverse")));
            }
            inv[g] = h;
        }
        let group = Group {
            order,
            mul,
            inv,
            identity,
            label: label.into(),
        };
        group.verify()?;
        Ok(group)
    }

    fn from_table_unchecked(label: String, order: usize, mul: Vec<usize>, identity: usize) -> Group {
        let mut inv = vec![0; order];
        for g in 0..order {
            for h in 0..order {
                if mul[g * order + h] == identity {
                    inv[g] = h;
                    break;
                }
            }
        }
        Group {
            order,
            mul,
            inv,
            identity,
            label,
        }
    }

    /// Exhaustive check of the Latin-square property, identity, inverses and
    /// associativity.
    pub fn verify(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            let mut row = ElemSet::new(n);
            let mut col = ElemSet::new(n);
            for h in 0..n {
                row.insert(self.mul(g, h));
                col.insert(self.mul(h, g));
            }
            if row.len() != n || col.len() != n {
                return Err(Error::InvalidTable(format!("row or column {g} is not a permutation")));
            }
            if self.mul(g, self.identity) != g || self.mul(self.identity, g) != g {
                return Err(Error::InvalidTable("identity is not neutral".into()));
            }
            if self.mul(g, self.inv[g]) != self.identity || self.mul(self.inv[g], g) != self.identity {
                return Err(Error::InvalidTable(format!("bad inverse for {g}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, g: usize, exp: usize) -> usize {
        (0..exp).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    /// `a g a^{-1}`
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(a, g), self.inv(a))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, |acc, o| acc / num_integer::gcd(acc, o) * o)
    }

    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1);
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Group::from_table_unchecked(format!("C{n}"), n, mul, 0)
    }

    /// Dihedral group of order `n` (the symmetries of an `n/2`-gon).
    pub fn dihedral(n: usize) -> Result<Group> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "D{n}: order must be even and at least 4"
            )));
        }
        let m = n / 2;
        let idx = |i: usize, j: usize| j * m + i;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (i, j) = (x % m, x / m);
            for y in 0..n {
                let (k, l) = (y % m, y / m);
                let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                mul[x * n + y] = idx(rot, (j + l) % 2);
            }
        }
        Ok(Group::from_table_unchecked(format!("D{n}"), n, mul, 0))
    }

    /// Dicyclic group `<a, b | a^{2m} = 1, b^2 = a^m, b a b^{-1} = a^{-1}>` of order `n = 4m`.
    pub fn dicyclic(n: usize) -> Result<Group> {
        if n < 4 || !n.is_multiple_of(4) {
            return Err(Error::InvalidParameter(format!(
                "Dic{n}: order must be a positive multiple of 4"
            )));
        }
        let two_m = n / 2;
        let m = n / 4;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (i, j) = (x % two_m, x / two_m);
            for y in 0..n {
                let (k, l) = (y % two_m, y / two_m);
                // b a^k = a^{-k} b
                let (rot, b_exp) = if j == 0 {
                    ((i + k) % two_m, l)
                } else {
                    ((i + two_m - k) % two_m, 1 + l)
                };
                mul[x * n + y] = if b_exp == 2 {
                    (rot + m) % two_m
                } else {
                    b_exp * two_m + rot
                };
            }
        }
        Ok(Group::from_table_unchecked(format!("Dic{n}"), n, mul, 0))
    }

    /// Generalized quaternion group of order `2^k >= 8`.
    pub fn quaternion(n: usize) -> Result<Group> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "Q{n}: order must be a power of two, at least 8"
            )));
        }
        Ok(Group::dicyclic(n)?.with_label(format!("Q{n}")))
    }

    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidParameter(format!("S{n}: degree must be between 1 and 6")));
        }
        let perms = all_permutations(n);
        Ok(Group::from_permutation_list(format!("S{n}"), perms))
    }

    pub fn alternating(n: usize) -> Result<Group> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidParameter(format!("A{n}: degree must be between 1 and 6")));
        }
        let perms = all_permutations(n).into_iter().filter(|p| is_even(p)).collect();
        Ok(Group::from_permutation_list(format!("A{n}"), perms))
    }

    /// `SL(2, p)` over the prime field.
    pub fn special_linear(p: usize) -> Result<Group> {
        if !crate::arith::is_prime(p) || p > 7 {
            return Err(Error::InvalidParameter(format!(
                "SL(2,{p}): p must be a prime at most 7"
            )));
        }
        let mut mats = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - (b * c) % p) % p == 1 {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let index: HashMap<[usize; 4], usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let n = mats.len();
        let mut mul = vec![0; n * n];
        for (x, l) in mats.iter().enumerate() {
            for (y, r) in mats.iter().enumerate() {
                let prod = [
                    (l[0] * r[0] + l[1] * r[2]) % p,
                    (l[0] * r[1] + l[1] * r[3]) % p,
                    (l[2] * r[0] + l[3] * r[2]) % p,
                    (l[2] * r[1] + l[3] * r[3]) % p,
                ];
                mul[x * n + y] = index[&prod];
            }
        }
        let identity = index[&[1, 0, 0, 1]];
        Ok(Group::from_table_unchecked(format!("SL(2,{p})"), n, mul, identity))
    }

    pub fn direct_product(a: &Group, b: &Group) -> Group {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[x * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
            }
        }
        let identity = a.identity * nb + b.identity;
        Group::from_table_unchecked(format!("{}x{}", a.label, b.label), n, mul, identity)
    }

    /// The permutation group generated by `generators`, each given as an image
    /// list on `0..degree`. Fails if the group grows beyond `cap` elements.
    pub fn from_permutations(
        label: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Group> {
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|x| g[p[x]]).collect();
                if !seen.contains_key(&q) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            order: seen.len() + 1,
                            cap,
                        });
                    }
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = seen.into_keys().collect();
        Ok(Group::from_permutation_list(label.into(), perms))
    }

    /// Elements sorted lexicographically; product `(pq)(x) = p(q(x))`.
    fn from_permutation_list(label: String, mut perms: Vec<Vec<usize>>) -> Group {
        perms.sort();
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let n = perms.len();
        let mut mul = vec![0; n * n];
        let mut buf = Vec::new();
        for (x, p) in perms.iter().enumerate() {
            for (y, q) in perms.iter().enumerate() {
                buf.clear();
                buf.extend(q.iter().map(|&i| p[i]));
                mul[x * n + y] = index[buf.as_slice()];
            }
        }
        let identity = perms
            .iter()
            .position(|p| p.iter().enumerate().all(|(i, &x)| i == x))
            .expect("identity permutation present");
        Group::from_table_unchecked(label, n, mul, identity)
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// A subgroup of a parent group, stored as a member bitset.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: ElemSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {}: {:?})",
            self.order(),
            self.parent.label,
            self.members
        )
    }
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(parent: &Arc<Group>, gens: &[usize]) -> Subgroup {
        let g = parent.as_ref();
        let mut members = ElemSet::new(g.order);
        members.insert(g.identity);
        let mut queue = VecDeque::from([g.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    /// Validates closure before wrapping `members`.
    pub fn from_members(parent: &Arc<Group>, members: ElemSet) -> Result<Subgroup> {
        let g = parent.as_ref();
        if members.capacity() != g.order {
            return Err(Error::NotSubgroup("member set has the wrong capacity".into()));
        }
        if !members.contains(g.identity) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in members.iter() {
            if !members.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in members.iter() {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        assert_eq!(g.order % members.len(), 0, "Lagrange violated");
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members,
        })
    }

    pub(crate) fn from_members_unchecked(parent: &Arc<Group>, members: ElemSet) -> Subgroup {
        debug_assert_eq!(parent.order % members.len(), 0);
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn trivial(parent: &Arc<Group>) -> Subgroup {
        Subgroup::generated(parent, &[])
    }

    pub fn whole(parent: &Arc<Group>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            members: ElemSet::full(parent.order),
        }
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent: Arc::clone(&self.parent),
            members: self.members.intersection(&other.members),
        }
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.members.union(&other.members).iter().collect();
        Subgroup::generated(&self.parent, &gens)
    }

    /// `|HK| = |H||K| / |H ∩ K|`
    pub fn product_order(&self, other: &Subgroup) -> usize {
        self.order() * other.order() / self.intersection(other).order()
    }

    /// `^aH = a H a^{-1}`
    pub fn conjugate(&self, a: usize) -> Subgroup {
        let g = self.parent.as_ref();
        let members = ElemSet::from_indices(g.order, self.members.iter().map(|h| g.conj(a, h)));
        Subgroup {
            parent: Arc::clone(&self.parent),
            members,
        }
    }

    pub fn is_normal(&self) -> bool {
        let g = self.parent.as_ref();
        g.elements()
            .all(|a| self.members.iter().all(|h| self.members.contains(g.conj(a, h))))
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        let g = self.parent.as_ref();
        self.is_subgroup_of(other)
            && other
                .members
                .iter()
                .all(|a| self.members.iter().all(|h| self.members.contains(g.conj(a, h))))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.members.iter().any(|h| self.parent.element_order(h) == n)
    }

    pub fn is_central(&self) -> bool {
        let g = self.parent.as_ref();
        self.members
            .iter()
            .all(|z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
    }

    /// Brute-force normalizer `{g : gHg^{-1} = H}`.
    pub fn normalizer(&self) -> Subgroup {
        let g = self.parent.as_ref();
        let members = ElemSet::from_indices(
            g.order,
            g.elements().filter(|&a| self.conjugate(a).members == self.members),
        );
        Subgroup {
            parent: Arc::clone(&self.parent),
            members,
        }
    }

    /// This subgroup as a group in its own right, together with the embedding
    /// (subgroup index -> parent index). Subgroup elements keep the parent's order.
    pub fn as_group(&self) -> (Group, Vec<usize>) {
        let g = self.parent.as_ref();
        let embedding: Vec<usize> = self.members.iter().collect();
        let mut back = vec![usize::MAX; g.order];
        for (i, &x) in embedding.iter().enumerate() {
            back[x] = i;
        }
        let n = embedding.len();
        let mut mul = vec![0; n * n];
        for (i, &x) in embedding.iter().enumerate() {
            for (j, &y) in embedding.iter().enumerate() {
                mul[i * n + j] = back[g.mul(x, y)];
            }
        }
        let identity = back[g.identity];
        let label = format!("{}<{}>", g.label, n);
        (Group::from_table_unchecked(label, n, mul, identity), embedding)
    }
}

/// `Z(G)`
pub fn center(group: &Arc<Group>) -> Subgroup {
    let g = group.as_ref();
    let members = ElemSet::from_indices(
        g.order,
        g.elements()
            .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z))),
    );
    Subgroup::from_members_unchecked(group, members)
}

/// The canonical projection `G -> G/N`.
///
/// Cosets are ordered by their minimal element index, and the coset of the
/// `k`-th smallest representative becomes element `k` of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Arc<Group>,
    target: Arc<Group>,
    projection: Vec<usize>,
    representatives: Vec<usize>,
    kernel: Subgroup,
}

impl QuotientMap {
    pub fn new(kernel: &Subgroup) -> Result<QuotientMap> {
        if !kernel.is_normal() {
            return Err(Error::NotNormal);
        }
        let g = kernel.parent.as_ref();
        let mut projection = vec![usize::MAX; g.order];
        let mut representatives = Vec::new();
        for x in g.elements() {
            if projection[x] != usize::MAX {
                continue;
            }
            let k = representatives.len();
            representatives.push(x);
            for n in kernel.elements() {
                projection[g.mul(x, n)] = k;
            }
        }
        let m = representatives.len();
        let mut mul = vec![0; m * m];
        for (i, &x) in representatives.iter().enumerate() {
            for (j, &y) in representatives.iter().enumerate() {
                mul[i * m + j] = projection[g.mul(x, y)];
            }
        }
        let identity = projection[g.identity];
        let label = format!("{}/{}", g.label, kernel.order());
        let target = Group::from_table_unchecked(label, m, mul, identity);
        Ok(QuotientMap {
            source: Arc::clone(&kernel.parent),
            target: Arc::new(target),
            projection,
            representatives,
            kernel: kernel.clone(),
        })
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    /// Minimal-index representative of a quotient element.
    pub fn lift(&self, q: usize) -> usize {
        self.representatives[q]
    }

    /// `HN/N`
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let members = ElemSet::from_indices(self.target.order, h.elements().map(|x| self.projection[x]));
        Subgroup::from_members_unchecked(&self.target, members)
    }

    /// The full preimage of a subgroup of the quotient.
    pub fn preimage(&self, k: &Subgroup) -> Subgroup {
        let members = ElemSet::from_indices(
            self.source.order,
            self.source.elements().filter(|&x| k.contains(self.projection[x])),
        );
        Subgroup::from_members_unchecked(&self.source, members)
    }
}
