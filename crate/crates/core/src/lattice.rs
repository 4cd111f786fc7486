//! The full subgroup lattice of a finite group: conjugacy classes of
//! subgroups, normalizers, the Möbius function of the subgroup poset, Bouc's
//! `m`-constants and the gcd property.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith::{self, gcd, p_part, Rational};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

pub struct SubgroupLattice {
    group: Arc<Group>,
    /// Canonical order: by order, then lexicographically on sorted members.
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    /// `above[i]` holds every `j` with `subgroups[i] <= subgroups[j]`.
    above: Vec<ElemSet>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    normalizer: Vec<usize>,
    /// Dense `mu(i, j)`, zero where `i` is not below `j`.
    moebius: Vec<i64>,
}

impl fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group)
            .field("subgroups", &self.subgroups.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

/// Enumerates every subgroup of `group`, refusing groups larger than `cap`.
pub fn enumerate_subgroups(group: &Arc<Group>, cap: usize) -> Result<SubgroupLattice> {
    if group.order() > cap {
        return Err(Error::CapExceeded {
            order: group.order(),
            cap,
        });
    }
    Ok(SubgroupLattice::new(group))
}

impl SubgroupLattice {
    pub fn new(group: &Arc<Group>) -> SubgroupLattice {
        let mut sets = join_closure(group);
        sets.sort_by(|a, b| a.canonical_cmp(b));
        let subgroups: Vec<Subgroup> = sets
            .into_iter()
            .map(|m| Subgroup::from_members_unchecked(group, m))
            .collect();
        let index: HashMap<ElemSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members().clone(), i))
            .collect();
        let count = subgroups.len();

        let above: Vec<ElemSet> = subgroups
            .iter()
            .map(|h| {
                ElemSet::from_indices(
                    count,
                    (0..count).filter(|&j| h.members().is_subset(subgroups[j].members())),
                )
            })
            .collect();

        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        for i in 0..count {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = ElemSet::new(count);
            for a in group.elements() {
                let j = index[subgroups[i].conjugate(a).members()];
                class_of[j] = c;
                members.insert(j);
            }
            classes.push(members.iter().collect::<Vec<_>>());
        }
        let normalizer = subgroups.iter().map(|h| index[h.normalizer().members()]).collect();

        let mut moebius = vec![0i64; count * count];
        for k in 0..count {
            moebius[k * count + k] = 1;
            for j in above[k].iter().filter(|&j| j != k) {
                let sum: i64 = above[k]
                    .iter()
                    .take_while(|&x| x < j)
                    .filter(|&x| above[x].contains(j))
                    .map(|x| moebius[k * count + x])
                    .sum();
                moebius[k * count + j] = -sum;
            }
        }

        SubgroupLattice {
            group: Arc::clone(group),
            subgroups,
            index,
            above,
            class_of,
            classes,
            normalizer,
            moebius,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Position of `h` in the canonical order.
    pub fn locate(&self, h: &Subgroup) -> Result<usize> {
        if !Arc::ptr_eq(h.parent(), &self.group) && h.parent().as_ref() != self.group.as_ref() {
            return Err(Error::GroupMismatch);
        }
        self.index_of_members(h.members())
            .ok_or_else(|| Error::NotSubgroup(format!("{h:?} not in lattice")))
    }

    pub fn index_of_members(&self, members: &ElemSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// `subgroups[i] <= subgroups[j]`
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Subgroup indices of a conjugacy class; the first is the representative.
    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_representatives(&self) -> impl Iterator<Item = &Subgroup> + '_ {
        self.classes.iter().map(|c| &self.subgroups[c[0]])
    }

    pub fn class_order(&self, c: usize) -> usize {
        self.subgroups[self.class_rep(c)].order()
    }

    /// Classes of subgroups of order `k`, in canonical order.
    pub fn classes_of_order(&self, k: usize) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.class_order(c) == k).collect()
    }

    pub fn has_subgroup_of_order(&self, k: usize) -> bool {
        self.subgroups.iter().any(|h| h.order() == k)
    }

    pub fn normalizer_index(&self, i: usize) -> usize {
        self.normalizer[i]
    }

    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        Ok(self.subgroups[self.normalizer[self.locate(h)?]].clone())
    }

    pub fn is_normal_index(&self, i: usize) -> bool {
        self.classes[self.class_of[i]].len() == 1
    }

    pub fn moebius_index(&self, k: usize, h: usize) -> i64 {
        self.moebius[k * self.subgroups.len() + h]
    }

    /// `mu(K, H)` in the poset of subgroups.
    pub fn moebius(&self, k: &Subgroup, h: &Subgroup) -> Result<i64> {
        let (ki, hi) = (self.locate(k)?, self.locate(h)?);
        if !self.is_below(ki, hi) {
            return Err(Error::NotContained {
                inner: k.order(),
                outer: h.order(),
            });
        }
        Ok(self.moebius_index(ki, hi))
    }

    /// `m_{L,K} = (1/|L|) * sum over X <= L with XK = L of |X| mu(X, L)`.
    pub fn m_constant(&self, l: &Subgroup, k: &Subgroup) -> Result<Rational> {
        let (li, ki) = (self.locate(l)?, self.locate(k)?);
        self.m_constant_index(li, ki)
    }

    pub fn m_constant_index(&self, li: usize, ki: usize) -> Result<Rational> {
        let (l, k) = (&self.subgroups[li], &self.subgroups[ki]);
        if !k.is_normal_in(l) {
            return Err(Error::NotNormal);
        }
        let sum: i64 = (0..=li)
            .filter(|&x| self.is_below(x, li))
            .filter(|&x| self.subgroups[x].product_order(k) == l.order())
            .map(|x| self.subgroups[x].order() as i64 * self.moebius_index(x, li))
            .sum();
        Ok(arith::rational(sum, l.order() as i64))
    }

    /// Intersection of the maximal proper subgroups.
    pub fn frattini(&self) -> Subgroup {
        let top = self.whole_index();
        let maximal = (0..top).filter(|&i| self.above[i].len() == 2);
        self.intersect_all(maximal)
    }

    /// Intersection of the cyclic subgroups not properly contained in another
    /// cyclic subgroup.
    pub fn max_cyclic_intersection(&self) -> Subgroup {
        let cyclic: Vec<usize> = (0..self.len()).filter(|&i| self.subgroups[i].is_cyclic()).collect();
        let maximal = cyclic
            .iter()
            .copied()
            .filter(|&i| !cyclic.iter().any(|&j| j != i && self.is_below(i, j)));
        self.intersect_all(maximal)
    }

    fn intersect_all(&self, indices: impl Iterator<Item = usize>) -> Subgroup {
        indices.fold(Subgroup::whole(&self.group), |acc, i| {
            acc.intersection(&self.subgroups[i])
        })
    }

    /// First Sylow `p`-subgroup in canonical order.
    pub fn sylow(&self, p: usize) -> Subgroup {
        let target = p_part(self.group.order(), p);
        self.subgroups
            .iter()
            .find(|h| h.order() == target)
            .expect("Sylow subgroups exist")
            .clone()
    }

    pub fn check_gcd_property(&self, n: &Subgroup, method: GcdMethod) -> bool {
        let nn = n.order();
        let divides_n = |h: &Subgroup| nn.is_multiple_of(h.order());
        let meets_in_gcd = |h: &Subgroup| h.intersection(n).order() == gcd(h.order(), nn);
        match method {
            GcdMethod::Intersection => self.subgroups.iter().all(meets_in_gcd),
            GcdMethod::Divisor => self
                .subgroups
                .iter()
                .filter(|h| divides_n(h))
                .all(|h| h.is_subgroup_of(n)),
            GcdMethod::CyclicDivisor => self
                .subgroups
                .iter()
                .filter(|h| h.is_cyclic() && divides_n(h))
                .all(|h| h.is_subgroup_of(n)),
            GcdMethod::CyclicIntersection => self.subgroups.iter().filter(|h| h.is_cyclic()).all(meets_in_gcd),
            GcdMethod::Sylow => {
                // The characterization presumes normality; a non-normal N never
                // has the gcd property.
                if !n.is_normal() {
                    return false;
                }
                let g = self.group.order();
                arith::prime_divisors(g).into_iter().all(|p| {
                    let (np, gp) = (p_part(nn, p), p_part(g, p));
                    if np == 1 || np == gp {
                        return true;
                    }
                    let sylow = self.sylow(p);
                    sylow.is_cyclic() || (is_generalized_quaternion(&sylow) && np == 2)
                })
            }
        }
    }
}

/// Every subgroup as a member set: cyclic subgroups first, then closure
/// under joins with cyclic subgroups until nothing new appears.
fn join_closure(group: &Arc<Group>) -> Vec<ElemSet> {
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let mut found: Vec<(ElemSet, Vec<usize>)> = Vec::new();
    let mut cyclic_gens = Vec::new();
    for g in group.elements() {
        let h = Subgroup::generated(group, &[g]);
        if seen.insert(h.members().clone(), ()).is_none() {
            found.push((h.members().clone(), vec![g]));
            cyclic_gens.push(g);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for &g in &cyclic_gens {
            if found[i].0.contains(g) {
                continue;
            }
            let mut gens = found[i].1.clone();
            gens.push(g);
            let joined = Subgroup::generated(group, &gens);
            if seen.insert(joined.members().clone(), ()).is_none() {
                found.push((joined.members().clone(), gens));
            }
        }
        i += 1;
    }
    found.into_iter().map(|(set, _)| set).collect()
}

/// The four equivalent formulations of the gcd property plus the Sylow
/// characterization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GcdMethod {
    /// `|H ∩ N| = (|H|, |N|)` for every subgroup `H`.
    Intersection,
    /// Every subgroup of order dividing `|N|` lies in `N`.
    Divisor,
    /// Every cyclic subgroup of order dividing `|N|` lies in `N`.
    CyclicDivisor,
    /// `|H ∩ N| = (|H|, |N|)` for every cyclic subgroup `H`.
    CyclicIntersection,
    /// Per prime: `|N|_p = 1`, `|N|_p = |G|_p`, or a cyclic Sylow subgroup,
    /// or a generalized quaternion Sylow 2-subgroup with `|N|_2 = 2`.
    Sylow,
}

impl GcdMethod {
    pub const ALL: [GcdMethod; 5] = [
        GcdMethod::Intersection,
        GcdMethod::Divisor,
        GcdMethod::CyclicDivisor,
        GcdMethod::CyclicIntersection,
        GcdMethod::Sylow,
    ];
}

impl FromStr for GcdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<GcdMethod> {
        match s {
            "i" => Ok(GcdMethod::Intersection),
            "ii" => Ok(GcdMethod::Divisor),
            "iii" => Ok(GcdMethod::CyclicDivisor),
            "iv" => Ok(GcdMethod::CyclicIntersection),
            "sylow" => Ok(GcdMethod::Sylow),
            other => Err(Error::InvalidParameter(format!("unknown gcd method {other:?}"))),
        }
    }
}

/// `m_{C_t, C_n} = phi(t) / (n * phi(t/n))`
pub fn m_cyclic(t: usize, n: usize) -> Result<Rational> {
    if t == 0 || n == 0 || !t.is_multiple_of(n) {
        return Err(Error::InvalidParameter(format!("{n} does not divide {t}")));
    }
    Ok(arith::rational(
        arith::euler_phi(t) as i64,
        (n * arith::euler_phi(t / n)) as i64,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Minimal element index of the double coset.
    pub representative: usize,
    pub size: usize,
}

/// Representatives of `K\G/H`, in increasing order; the cosets partition `G`.
pub fn double_cosets(k: &Subgroup, h: &Subgroup) -> Vec<DoubleCoset> {
    let g = k.parent();
    let mut covered = ElemSet::new(g.order());
    let mut out = Vec::new();
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        let mut size = 0;
        for a in k.elements() {
            let ax = g.mul(a, x);
            for b in h.elements() {
                if covered.insert(g.mul(ax, b)) {
                    size += 1;
                }
            }
        }
        out.push(DoubleCoset {
            representative: x,
            size,
        });
    }
    out
}

/// Whether `p` is isomorphic to the dicyclic group of order `2^k >= 8`.
///
/// Searches for `a` of order `2^{k-1}` and `b` with `b^2 = a^{2^{k-2}}` and
/// `b a b^{-1} = a^{-1}`, then checks that the induced map from the
/// constructed dicyclic table is an isomorphism.
pub fn is_generalized_quaternion(p: &Subgroup) -> bool {
    let n = p.order();
    if n < 8 || !n.is_power_of_two() {
        return false;
    }
    let g = p.parent().as_ref();
    let half = n / 2;
    let dic = Group::dicyclic(n).expect("order is a multiple of 4");
    for a in p.elements().filter(|&a| g.element_order(a) == half) {
        let a_powers: Vec<usize> = (0..half).map(|i| g.pow(a, i)).collect();
        let center = a_powers[half / 2];
        for b in p.elements() {
            if a_powers.contains(&b) || g.mul(b, b) != center || g.conj(b, a) != g.inv(a) {
                continue;
            }
            // dicyclic index j * half + i  <->  a^i b^j
            let image: Vec<usize> = (0..n)
                .map(|x| {
                    let (i, j) = (x % half, x / half);
                    if j == 0 {
                        a_powers[i]
                    } else {
                        g.mul(a_powers[i], b)
                    }
                })
                .collect();
            let bijective = ElemSet::from_indices(g.order(), image.iter().copied()) == *p.members();
            let homomorphism = (0..n).all(|x| (0..n).all(|y| image[dic.mul(x, y)] == g.mul(image[x], image[y])));
            if bijective && homomorphism {
                return true;
            }
        }
    }
    false
}
