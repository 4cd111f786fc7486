//! The rational Burnside ring `QB(G)`.
//!
//! Elements are stored in the transitive basis `[G/H]`, `H` running over the
//! class representatives of the subgroup lattice. Marks (fixed-point counts)
//! do the heavy lifting: the table of marks is lower triangular in the
//! canonical class order, so converting between marks and coefficients is an
//! exact back-substitution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{self, Rational};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{Group, QuotientMap, Subgroup};
use crate::lattice::{double_cosets, SubgroupLattice};

pub struct BurnsideRing {
    lattice: SubgroupLattice,
    /// `marks[h][k] = |(G/H)^K|` over class indices.
    marks: Vec<Vec<u64>>,
    idempotents: OnceLock<Vec<Vec<Rational>>>,
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BurnsideRing({})", self.group().label())
    }
}

impl BurnsideRing {
    pub fn new(group: &Arc<Group>) -> Arc<BurnsideRing> {
        Self::from_lattice(SubgroupLattice::new(group))
    }

    pub fn from_lattice(lattice: SubgroupLattice) -> Arc<BurnsideRing> {
        let r = lattice.class_count();
        // |(G/H)^K| = |N_G(K)| * #{K' ~ K : K' <= H} / |H|
        let marks = (0..r)
            .map(|hc| {
                let h = lattice.class_rep(hc);
                (0..r)
                    .map(|kc| {
                        let k = lattice.class_rep(kc);
                        let below = lattice
                            .class_members(kc)
                            .iter()
                            .filter(|&&kk| lattice.is_below(kk, h))
                            .count();
                        let nk = lattice.subgroup(lattice.normalizer_index(k)).order();
                        (nk * below / lattice.subgroup(h).order()) as u64
                    })
                    .collect()
            })
            .collect();
        Arc::new(BurnsideRing {
            lattice,
            marks,
            idempotents: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        self.lattice.group()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// Number of conjugacy classes of subgroups, the rank of `B(G)`.
    pub fn rank(&self) -> usize {
        self.lattice.class_count()
    }

    pub fn mark(&self, h_class: usize, k_class: usize) -> u64 {
        self.marks[h_class][k_class]
    }

    pub fn table_of_marks(&self) -> Vec<Vec<Rational>> {
        self.marks
            .iter()
            .map(|row| row.iter().map(|&m| arith::int(m as i64)).collect())
            .collect()
    }

    /// Class of an arbitrary subgroup given by its members.
    pub fn class_of_members(&self, members: &ElemSet) -> Result<usize> {
        self.lattice
            .index_of_members(members)
            .map(|i| self.lattice.class_of(i))
            .ok_or_else(|| Error::NotSubgroup(format!("{members:?}")))
    }

    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        Ok(self.lattice.class_of(self.lattice.locate(h)?))
    }

    pub fn class_rep(&self, c: usize) -> &Subgroup {
        self.lattice.subgroup(self.lattice.class_rep(c))
    }

    /// `"<order>:<i>"`, the `i`-th class (from 0) of subgroups of that order.
    pub fn class_label(&self, c: usize) -> String {
        let order = self.lattice.class_order(c);
        let pos = self
            .lattice
            .classes_of_order(order)
            .iter()
            .position(|&x| x == c)
            .expect("class has its own order");
        format!("{order}:{pos}")
    }

    pub fn class_by_label(&self, label: &str) -> Result<usize> {
        let unknown = || Error::UnknownLabel(label.to_string());
        let (order, pos) = label.split_once(':').ok_or_else(unknown)?;
        let order: usize = order.trim().parse().map_err(|_| unknown())?;
        let pos: usize = pos.trim().parse().map_err(|_| unknown())?;
        self.lattice
            .classes_of_order(order)
            .get(pos)
            .copied()
            .ok_or_else(unknown)
    }

    fn same_as(self: &Arc<Self>, other: &Arc<BurnsideRing>) -> bool {
        Arc::ptr_eq(self, other) || self.group().as_ref() == other.group().as_ref()
    }

    fn idempotent_coeffs(&self) -> &Vec<Vec<Rational>> {
        self.idempotents.get_or_init(|| {
            let lat = &self.lattice;
            (0..self.rank())
                .map(|c| {
                    let h = lat.class_rep(c);
                    let mut coeffs = vec![Rational::zero(); self.rank()];
                    for k in (0..=h).filter(|&k| lat.is_below(k, h)) {
                        let mu = lat.moebius_index(k, h);
                        if mu != 0 {
                            coeffs[lat.class_of(k)] += arith::int(lat.subgroup(k).order() as i64 * mu);
                        }
                    }
                    let nh = lat.subgroup(lat.normalizer_index(h)).order() as i64;
                    let scale = arith::rational(1, nh);
                    coeffs.into_iter().map(|x| x * &scale).collect()
                })
                .collect()
        })
    }
}

/// An element of `QB(G)` in the transitive basis.
#[derive(Clone)]
pub struct BurnsideElement {
    ring: Arc<BurnsideRing>,
    coeffs: Vec<Rational>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}[{}]", self.ring.class_label(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl BurnsideElement {
    pub fn zero(ring: &Arc<BurnsideRing>) -> Self {
        BurnsideElement {
            ring: Arc::clone(ring),
            coeffs: vec![Rational::zero(); ring.rank()],
        }
    }

    /// `[G/H]` for the class `c` of `H`.
    pub fn basis(ring: &Arc<BurnsideRing>, c: usize) -> Self {
        let mut x = Self::zero(ring);
        x.coeffs[c] = Rational::one();
        x
    }

    /// `[G/G]`, the ring identity.
    pub fn one(ring: &Arc<BurnsideRing>) -> Self {
        Self::basis(ring, ring.rank() - 1)
    }

    pub fn from_coeffs(ring: &Arc<BurnsideRing>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != ring.rank() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                ring.rank(),
                coeffs.len()
            )));
        }
        Ok(BurnsideElement {
            ring: Arc::clone(ring),
            coeffs,
        })
    }

    pub fn ring(&self) -> &Arc<BurnsideRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, c: usize) -> &Rational {
        &self.coeffs[c]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// All transitive-basis coefficients are integers, i.e. the element lies in `B(G)`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// If this is `[G/H]` for a single class, that class.
    pub fn as_transitive(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect();
        match nonzero[..] {
            [c] if self.coeffs[c].is_one() => Some(c),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        BurnsideElement {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn marks(&self) -> MarkVector {
        marks_of(self)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(BurnsideElement {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }
}

impl Add for &BurnsideElement {
    type Output = BurnsideElement;

    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.try_add(rhs).expect("adding elements of different Burnside rings")
    }
}

impl Sub for &BurnsideElement {
    type Output = BurnsideElement;

    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.try_sub(rhs)
            .expect("subtracting elements of different Burnside rings")
    }
}

impl Neg for &BurnsideElement {
    type Output = BurnsideElement;

    fn neg(self) -> BurnsideElement {
        BurnsideElement {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BurnsideElement {
    type Output = BurnsideElement;

    fn mul(self, rhs: &BurnsideElement) -> BurnsideElement {
        multiply(self, rhs).expect("multiplying elements of different Burnside rings")
    }
}

/// Fixed-point counts of a (virtual) `G`-set, indexed by subgroup class.
#[derive(Clone)]
pub struct MarkVector {
    ring: Arc<BurnsideRing>,
    marks: Vec<Rational>,
}

impl PartialEq for MarkVector {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.marks == other.marks
    }
}

impl fmt::Debug for MarkVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let marks: Vec<String> = self.marks.iter().map(|m| m.to_string()).collect();
        write!(f, "MarkVector({})", marks.join(", "))
    }
}

impl MarkVector {
    pub fn new(ring: &Arc<BurnsideRing>, marks: Vec<Rational>) -> Result<Self> {
        if marks.len() != ring.rank() {
            return Err(Error::InvalidParameter(format!(
                "expected {} marks, got {}",
                ring.rank(),
                marks.len()
            )));
        }
        Ok(MarkVector {
            ring: Arc::clone(ring),
            marks,
        })
    }

    pub fn from_integers(ring: &Arc<BurnsideRing>, marks: &[i64]) -> Result<Self> {
        Self::new(ring, marks.iter().map(|&m| arith::int(m)).collect())
    }

    pub fn ring(&self) -> &Arc<BurnsideRing> {
        &self.ring
    }

    pub fn marks(&self) -> &[Rational] {
        &self.marks
    }

    pub fn mark(&self, c: usize) -> &Rational {
        &self.marks[c]
    }

    pub fn pointwise_product(&self, other: &MarkVector) -> Result<MarkVector> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::GroupMismatch);
        }
        Ok(MarkVector {
            ring: Arc::clone(&self.ring),
            marks: self.marks.iter().zip(&other.marks).map(|(a, b)| a * b).collect(),
        })
    }
}

pub fn table_of_marks(ring: &BurnsideRing) -> Vec<Vec<Rational>> {
    ring.table_of_marks()
}

pub fn marks_of(x: &BurnsideElement) -> MarkVector {
    let ring = &x.ring;
    let r = ring.rank();
    let mut marks = vec![Rational::zero(); r];
    for (h, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, m) in marks.iter_mut().enumerate().take(h + 1) {
            let entry = ring.marks[h][k];
            if entry != 0 {
                *m += c * arith::int(entry as i64);
            }
        }
    }
    MarkVector {
        ring: Arc::clone(ring),
        marks,
    }
}

/// Inverts the table of marks by back-substitution from the largest class down.
pub fn element_from_marks(m: &MarkVector) -> BurnsideElement {
    let ring = &m.ring;
    let r = ring.rank();
    let mut coeffs = vec![Rational::zero(); r];
    for k in (0..r).rev() {
        let mut rest = m.marks[k].clone();
        for (h, c) in coeffs.iter().enumerate().skip(k + 1) {
            let entry = ring.marks[h][k];
            if entry != 0 && !c.is_zero() {
                rest -= c * arith::int(entry as i64);
            }
        }
        coeffs[k] = rest / arith::int(ring.marks[k][k] as i64);
    }
    BurnsideElement {
        ring: Arc::clone(ring),
        coeffs,
    }
}

/// Ring product via pointwise product of marks.
pub fn multiply(a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
    a.check_same(b)?;
    Ok(element_from_marks(&marks_of(a).pointwise_product(&marks_of(b))?))
}

pub fn is_integral(x: &BurnsideElement) -> bool {
    x.is_integral()
}

/// The primitive idempotent `e_H^G = (1/|N_G(H)|) sum_{K <= H} |K| mu(K, H) [G/K]`
/// for the class `c` of `H`.
pub fn idempotent(ring: &Arc<BurnsideRing>, c: usize) -> BurnsideElement {
    BurnsideElement {
        ring: Arc::clone(ring),
        coeffs: ring.idempotent_coeffs()[c].clone(),
    }
}

pub fn idempotent_of(ring: &Arc<BurnsideRing>, h: &Subgroup) -> Result<BurnsideElement> {
    Ok(idempotent(ring, ring.class_of(h)?))
}

/// A finite left `G`-set given by its action table.
#[derive(Clone)]
pub struct GSet {
    group: Arc<Group>,
    size: usize,
    /// `action[g * size + x] = g . x`
    action: Vec<usize>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} points over {})", self.size, self.group.label())
    }
}

impl GSet {
    /// Checks the identity and compatibility laws exhaustively.
    pub fn new(group: &Arc<Group>, size: usize, action: Vec<usize>) -> Result<GSet> {
        if action.len() != group.order() * size {
            return Err(Error::InvalidAction("action table has the wrong size".into()));
        }
        if action.iter().any(|&y| y >= size) {
            return Err(Error::InvalidAction("point out of range".into()));
        }
        let set = GSet {
            group: Arc::clone(group),
            size,
            action,
        };
        for x in 0..size {
            if set.act(group.identity(), x) != x {
                return Err(Error::InvalidAction(format!("identity moves point {x}")));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..size).any(|x| set.act(gh, x) != set.act(g, set.act(h, x))) {
                    return Err(Error::InvalidAction(format!("(gh)x != g(hx) for g={g}, h={h}")));
                }
            }
        }
        Ok(set)
    }

    fn from_table_unchecked(group: &Arc<Group>, size: usize, action: Vec<usize>) -> GSet {
        GSet {
            group: Arc::clone(group),
            size,
            action,
        }
    }

    /// Left cosets `G/H`, ordered by minimal element.
    pub fn cosets(h: &Subgroup) -> GSet {
        let group = h.parent();
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for x in group.elements() {
            if coset_of[x] == usize::MAX {
                for y in h.elements() {
                    coset_of[group.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        let size = reps.len();
        let mut action = vec![0; group.order() * size];
        for g in group.elements() {
            for (k, &x) in reps.iter().enumerate() {
                action[g * size + k] = coset_of[group.mul(g, x)];
            }
        }
        GSet::from_table_unchecked(group, size, action)
    }

    pub fn point(group: &Arc<Group>) -> GSet {
        GSet::from_table_unchecked(group, 1, vec![0; group.order()])
    }

    pub fn regular(group: &Arc<Group>) -> GSet {
        GSet::cosets(&Subgroup::trivial(group))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members = ElemSet::from_indices(
            self.group.order(),
            self.group.elements().filter(|&g| self.act(g, x) == x),
        );
        Subgroup::from_members_unchecked(&self.group, members)
    }

    /// Restriction along an injective homomorphism `sub -> G` given by `embedding`.
    pub fn restrict(&self, sub: &Arc<Group>, embedding: &[usize]) -> GSet {
        let mut action = Vec::with_capacity(sub.order() * self.size);
        for h in sub.elements() {
            action.extend((0..self.size).map(|x| self.act(embedding[h], x)));
        }
        GSet::from_table_unchecked(sub, self.size, action)
    }

    /// The `N`-fixed points with the residual `G/N` action.
    pub fn fixed_points(&self, quotient: &QuotientMap) -> GSet {
        let n = quotient.kernel();
        let fixed: Vec<usize> = (0..self.size)
            .filter(|&x| n.elements().all(|k| self.act(k, x) == x))
            .collect();
        let mut position = vec![usize::MAX; self.size];
        for (i, &x) in fixed.iter().enumerate() {
            position[x] = i;
        }
        let target = quotient.target();
        let mut action = Vec::with_capacity(target.order() * fixed.len());
        for q in target.elements() {
            let g = quotient.lift(q);
            action.extend(fixed.iter().map(|&x| position[self.act(g, x)]));
        }
        GSet::from_table_unchecked(target, fixed.len(), action)
    }

    /// The set of `N`-orbits `X/~` with the induced `G/N` action.
    pub fn orbit_quotient(&self, quotient: &QuotientMap) -> GSet {
        let n = quotient.kernel();
        let mut class = vec![usize::MAX; self.size];
        let mut count = 0;
        for x in 0..self.size {
            if class[x] == usize::MAX {
                for k in n.elements() {
                    class[self.act(k, x)] = count;
                }
                count += 1;
            }
        }
        let mut first = vec![usize::MAX; count];
        for x in (0..self.size).rev() {
            first[class[x]] = x;
        }
        let target = quotient.target();
        let mut action = Vec::with_capacity(target.order() * count);
        for q in target.elements() {
            let g = quotient.lift(q);
            action.extend(first.iter().map(|&x| class[self.act(g, x)]));
        }
        GSet::from_table_unchecked(target, count, action)
    }

    /// `G x_H X` for an `H`-set `X`, `H` embedded in `G` via `embedding`.
    pub fn induce(&self, target: &Arc<Group>, embedding: &[usize]) -> GSet {
        let image =
            Subgroup::from_members_unchecked(target, ElemSet::from_indices(target.order(), embedding.iter().copied()));
        let mut back = vec![usize::MAX; target.order()];
        for (h, &g) in embedding.iter().enumerate() {
            back[g] = h;
        }
        let reps: Vec<usize> = {
            let mut covered = ElemSet::new(target.order());
            let mut reps = Vec::new();
            for x in target.elements() {
                if !covered.contains(x) {
                    for h in image.elements() {
                        covered.insert(target.mul(x, h));
                    }
                    reps.push(x);
                }
            }
            reps
        };
        let mut coset_of = vec![usize::MAX; target.order()];
        for (i, &r) in reps.iter().enumerate() {
            for h in image.elements() {
                coset_of[target.mul(r, h)] = i;
            }
        }
        // point (i, x) = [r_i, x]; g r_i = r_j h  =>  g.(i, x) = (j, h.x)
        let size = reps.len() * self.size;
        let mut action = vec![0; target.order() * size];
        for g in target.elements() {
            for (i, &r) in reps.iter().enumerate() {
                let gr = target.mul(g, r);
                let j = coset_of[gr];
                let h = back[target.mul(target.inv(reps[j]), gr)];
                for x in 0..self.size {
                    action[g * size + i * self.size + x] = j * self.size + self.act(h, x);
                }
            }
        }
        GSet::from_table_unchecked(target, size, action)
    }
}

/// Splits `X` into orbits and sums `[G/Stab]` over them.
pub fn decompose_gset(ring: &Arc<BurnsideRing>, x: &GSet) -> Result<BurnsideElement> {
    if ring.group().as_ref() != x.group.as_ref() {
        return Err(Error::GroupMismatch);
    }
    let mut element = BurnsideElement::zero(ring);
    for orbit in x.orbits() {
        let stab = x.stabilizer(orbit[0]);
        if stab.index() != orbit.len() {
            return Err(Error::InvalidAction("orbit-stabilizer mismatch".into()));
        }
        let c = ring.class_of_members(stab.members())?;
        element.coeffs[c] += Rational::one();
    }
    Ok(element)
}

/// An injective homomorphism `H -> G` between groups with Burnside rings.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<BurnsideRing>,
    target: Arc<BurnsideRing>,
    map: Vec<usize>,
    image: Subgroup,
}

impl Embedding {
    /// Validates that `map` is an injective homomorphism.
    pub fn new(source: &Arc<BurnsideRing>, target: &Arc<BurnsideRing>, map: Vec<usize>) -> Result<Embedding> {
        let (h, g) = (source.group(), target.group());
        if map.len() != h.order() || map.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidParameter("embedding map has the wrong shape".into()));
        }
        let members = ElemSet::from_indices(g.order(), map.iter().copied());
        if members.len() != h.order() {
            return Err(Error::InvalidParameter("embedding map is not injective".into()));
        }
        for x in h.elements() {
            for y in h.elements() {
                if map[h.mul(x, y)] != g.mul(map[x], map[y]) {
                    return Err(Error::InvalidParameter("embedding map is not a homomorphism".into()));
                }
            }
        }
        Ok(Embedding {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map,
            image: Subgroup::from_members_unchecked(g, members),
        })
    }

    /// `H` as a group in its own right, embedded into `G`.
    pub fn of_subgroup(target: &Arc<BurnsideRing>, h: &Subgroup) -> Result<Embedding> {
        target.lattice().locate(h)?;
        let (group, map) = h.as_group();
        let source = BurnsideRing::new(&Arc::new(group));
        Ok(Embedding {
            source,
            target: Arc::clone(target),
            map,
            image: h.clone(),
        })
    }

    pub fn source(&self) -> &Arc<BurnsideRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BurnsideRing> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self) -> &Subgroup {
        &self.image
    }

    fn push_members(&self, members: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.target.group().order(), members.iter().map(|x| self.map[x]))
    }

    fn pull_members(&self, members: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.source.group().order(),
            (0..self.map.len()).filter(|&h| members.contains(self.map[h])),
        )
    }
}

/// A quotient map `G -> G/N` between groups with Burnside rings.
#[derive(Clone, Debug)]
pub struct Projection {
    source: Arc<BurnsideRing>,
    target: Arc<BurnsideRing>,
    map: QuotientMap,
}

impl Projection {
    pub fn new(source: &Arc<BurnsideRing>, n: &Subgroup) -> Result<Projection> {
        source.lattice().locate(n)?;
        let map = QuotientMap::new(n)?;
        let target = BurnsideRing::new(map.target());
        Ok(Projection {
            source: Arc::clone(source),
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<BurnsideRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BurnsideRing> {
        &self.target
    }

    pub fn quotient_map(&self) -> &QuotientMap {
        &self.map
    }

    pub fn kernel(&self) -> &Subgroup {
        self.map.kernel()
    }

    /// Class of `HN/N` in `G/N`.
    pub fn image_class(&self, h: &Subgroup) -> usize {
        self.target
            .class_of_members(self.map.image(h).members())
            .expect("images of subgroups are subgroups")
    }
}

fn expect_ring(x: &BurnsideElement, ring: &Arc<BurnsideRing>) -> Result<()> {
    if x.ring.same_as(ring) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// Applies a linear map given on the transitive basis.
fn linear(
    x: &BurnsideElement,
    target: &Arc<BurnsideRing>,
    mut on_basis: impl FnMut(usize) -> Result<BurnsideElement>,
) -> Result<BurnsideElement> {
    let mut out = BurnsideElement::zero(target);
    for (c, coeff) in x.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let image = on_basis(c)?;
        for (o, v) in out.coeffs.iter_mut().zip(image.coeffs) {
            if !v.is_zero() {
                *o += v * coeff;
            }
        }
    }
    Ok(out)
}

/// `Res^G_H`, computed on explicit coset sets.
pub fn restrict(x: &BurnsideElement, emb: &Embedding) -> Result<BurnsideElement> {
    expect_ring(x, &emb.target)?;
    let sub = emb.source.group();
    linear(x, &emb.source, |c| {
        let set = GSet::cosets(emb.target.class_rep(c)).restrict(sub, &emb.map);
        decompose_gset(&emb.source, &set)
    })
}

/// `Ind^G_H`: `[H/L] -> [G/L]`.
pub fn induce(x: &BurnsideElement, emb: &Embedding) -> Result<BurnsideElement> {
    expect_ring(x, &emb.source)?;
    linear(x, &emb.target, |c| {
        let pushed = emb.push_members(emb.source.class_rep(c).members());
        Ok(BurnsideElement::basis(
            &emb.target,
            emb.target.class_of_members(&pushed)?,
        ))
    })
}

/// Moves an element along an isomorphism.
pub fn transport(x: &BurnsideElement, iso: &Embedding) -> Result<BurnsideElement> {
    if iso.source.group().order() != iso.target.group().order() {
        return Err(Error::InvalidParameter("transport needs an isomorphism".into()));
    }
    induce(x, iso)
}

/// `Ten^G_H`, multiplicative: the mark at `K` is the product over
/// `g in [K\G/H]` of the mark of `a` at `K^g ∩ H`.
pub fn tensor_induce(a: &BurnsideElement, emb: &Embedding) -> Result<BurnsideElement> {
    expect_ring(a, &emb.source)?;
    let g = emb.target.group();
    let source_marks = marks_of(a);
    let ring = &emb.target;
    let marks = (0..ring.rank())
        .map(|kc| {
            let k = ring.class_rep(kc);
            let mut product = Rational::one();
            for dc in double_cosets(k, &emb.image) {
                let kg = k.conjugate(g.inv(dc.representative));
                let meet = kg.intersection(&emb.image);
                let class = emb.source.class_of_members(&emb.pull_members(meet.members()))?;
                product *= source_marks.mark(class);
                if product.is_zero() {
                    break;
                }
            }
            Ok(product)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(element_from_marks(&MarkVector::new(ring, marks)?))
}

/// `Inf^G_{G/N}`: `[(G/N)/(K/N)] -> [G/K]`.
pub fn inflate(x: &BurnsideElement, proj: &Projection) -> Result<BurnsideElement> {
    expect_ring(x, &proj.target)?;
    linear(x, &proj.source, |c| {
        let pre = proj.map.preimage(proj.target.class_rep(c));
        Ok(BurnsideElement::basis(&proj.source, proj.source.class_of(&pre)?))
    })
}

/// `Def^G_{G/N}`: `[G/H] -> [(G/N)/(HN/N)]`.
pub fn deflate(x: &BurnsideElement, proj: &Projection) -> Result<BurnsideElement> {
    expect_ring(x, &proj.source)?;
    linear(x, &proj.target, |c| {
        Ok(BurnsideElement::basis(
            &proj.target,
            proj.image_class(proj.source.class_rep(c)),
        ))
    })
}

/// Deflation through explicit `N`-orbit sets, used to cross-check [`deflate`].
pub fn deflate_by_orbits(x: &BurnsideElement, proj: &Projection) -> Result<BurnsideElement> {
    expect_ring(x, &proj.source)?;
    linear(x, &proj.target, |c| {
        let set = GSet::cosets(proj.source.class_rep(c)).orbit_quotient(&proj.map);
        decompose_gset(&proj.target, &set)
    })
}

/// `Fix^G_{G/N}`: `X -> X^N`, computed on explicit coset sets.
pub fn fixed_points(x: &BurnsideElement, proj: &Projection) -> Result<BurnsideElement> {
    expect_ring(x, &proj.source)?;
    linear(x, &proj.target, |c| {
        let set = GSet::cosets(proj.source.class_rep(c)).fixed_points(&proj.map);
        decompose_gset(&proj.target, &set)
    })
}

/// Closed form for `Def^G_{G/N} e_H^G`:
/// `|N_G(HN)/HN| / |N_G(H)/H| * m_{H, H∩N} * e_{HN/N}^{G/N}`.
pub fn deflate_idempotent(proj: &Projection, h: &Subgroup) -> Result<BurnsideElement> {
    let lat = proj.source.lattice();
    let hi = lat.locate(h)?;
    let n = proj.kernel();
    let hn = h.join(n);
    let hni = lat.locate(&hn)?;
    let meet = lat.locate(&h.intersection(n))?;
    let ratio = arith::rational(
        (lat.subgroup(lat.normalizer_index(hni)).order() / hn.order()) as i64,
        (lat.subgroup(lat.normalizer_index(hi)).order() / h.order()) as i64,
    );
    let m = lat.m_constant_index(hi, meet)?;
    Ok(idempotent(&proj.target, proj.image_class(h)).scale(&(ratio * m)))
}
