//! Finite semigroups given by Cayley tables, their inverse/Clifford structure,
//! subsemigroups ("carriers"), ideals and isomorphisms between them.
//!
//! Elements are dense indices `0..order`. Subsets of a semigroup are always
//! tied to their parent; mixing parents is an error rather than a silent
//! reindexing.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Marker for "outside the carrier" in parent-indexed maps.
pub const NONE: usize = usize::MAX;

#[derive(Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("order", &self.order)
            .field("table", &self.rows())
            .finish()
    }
}

/// Checks a square table for range and associativity.
///
/// On failure the lexicographically first offending triple is reported.
pub fn validate_semigroup(rows: &[Vec<usize>]) -> Result<FiniteSemigroup> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Malformed("empty table".into()));
    }
    let mut table = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "row {r} has length {} but the table has {n} rows",
                row.len()
            )));
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                    order: n,
                });
            }
            table.push(v);
        }
    }
    let s = FiniteSemigroup {
        order: n,
        table,
        labels: None,
    };
    for a in 0..n {
        for b in 0..n {
            let ab = s.mul(a, b);
            for c in 0..n {
                if s.mul(ab, c) != s.mul(a, s.mul(b, c)) {
                    return Err(Error::NonAssociative { s: a, t: b, u: c });
                }
            }
        }
    }
    Ok(s)
}

impl FiniteSemigroup {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        validate_semigroup(rows)
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|a| (0..order).map(|b| f(a, b)).collect())
            .collect();
        validate_semigroup(&rows)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Malformed(format!(
                "{} labels for {} elements",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Row-major flattened table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// Direct product table, elements ordered as `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.order;
        let n = self.order * m;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (x / m, x % m);
                let (c, d) = (y / m, y % m);
                table.push(self.mul(a, c) * m + other.mul(b, d));
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            labels: None,
        }
    }

    /// Adjoins a new zero element, which receives index 0.
    pub fn with_zero(&self) -> FiniteSemigroup {
        let n = self.order + 1;
        let mut table = vec![0; n * n];
        for a in 1..n {
            for b in 1..n {
                table[a * n + b] = self.mul(a - 1, b - 1) + 1;
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            labels: None,
        }
    }

    /// Adjoins a new identity element, which receives the last index.
    pub fn with_identity(&self) -> FiniteSemigroup {
        let n = self.order + 1;
        let one = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = if a == one {
                    b
                } else if b == one {
                    a
                } else {
                    self.mul(a, b)
                };
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            labels: None,
        }
    }
}

/// Inverse-semigroup data computed by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseStructure {
    pub inverse: Vec<usize>,
    pub idempotents: Vec<usize>,
    pub center: Vec<usize>,
    pub is_clifford: bool,
}

pub fn analyze_inverse(s: &FiniteSemigroup) -> Result<InverseStructure> {
    let n = s.order();
    let mut inverse = vec![NONE; n];
    for a in 0..n {
        let mut found = None;
        for b in 0..n {
            if s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b {
                if found.is_some() {
                    return Err(Error::NotInverse { element: a });
                }
                found = Some(b);
            }
        }
        inverse[a] = found.ok_or(Error::NotRegular { element: a })?;
    }
    let idempotents: Vec<usize> = (0..n).filter(|&a| s.is_idempotent(a)).collect();
    let center: Vec<usize> = (0..n)
        .filter(|&a| (0..n).all(|b| s.mul(a, b) == s.mul(b, a)))
        .collect();
    let is_clifford = idempotents.iter().all(|e| center.binary_search(e).is_ok());
    Ok(InverseStructure {
        inverse,
        idempotents,
        center,
        is_clifford,
    })
}

/// A multiplicatively closed subset of a parent semigroup.
#[derive(Clone)]
pub struct Carrier {
    parent: Arc<FiniteSemigroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Carrier{:?}", self.members)
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.members == other.members
    }
}

impl Eq for Carrier {}

impl Carrier {
    pub fn full(parent: &Arc<FiniteSemigroup>) -> Self {
        let n = parent.order();
        Carrier {
            parent: parent.clone(),
            members: (0..n).collect(),
            mask: vec![true; n],
        }
    }

    pub fn new(parent: &Arc<FiniteSemigroup>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let c = Self::new_unchecked(parent, members)?;
        for &a in &c.members {
            for &b in &c.members {
                if !c.mask[parent.mul(a, b)] {
                    return Err(Error::NotSubsemigroup);
                }
            }
        }
        Ok(c)
    }

    fn new_unchecked(parent: &Arc<FiniteSemigroup>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = parent.order();
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange {
                row: bad,
                col: 0,
                value: bad,
                order: n,
            });
        }
        let mut mask = vec![false; n];
        for &x in &set {
            mask[x] = true;
        }
        Ok(Carrier {
            parent: parent.clone(),
            members: set.into_iter().collect(),
            mask,
        })
    }

    #[inline]
    pub fn parent(&self) -> &Arc<FiniteSemigroup> {
        &self.parent
    }

    #[inline]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.mask.len() && self.mask[x]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.parent.mul(a, b)
    }

    pub fn same_parent(&self, other: &Carrier) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || *self.parent == *other.parent
    }

    pub fn is_subset_of(&self, other: &Carrier) -> bool {
        self.same_parent(other) && self.members.iter().all(|&x| other.contains(x))
    }

    /// Elements of the carrier commuting with every element of the carrier.
    pub fn center(&self) -> Carrier {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&a| self.members.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        // the center of a subsemigroup is closed under multiplication
        Self::new_unchecked(&self.parent, members).expect("center members are in range")
    }

    pub fn intersection(&self, other: &Carrier) -> Result<Carrier> {
        if !self.same_parent(other) {
            return Err(Error::ParentMismatch);
        }
        let members = self.members.iter().copied().filter(|&x| other.contains(x));
        Self::new_unchecked(&self.parent, members)
    }

    /// `self` is a two-sided ideal of `ambient`.
    pub fn is_ideal_of(&self, ambient: &Carrier) -> bool {
        self.is_subset_of(ambient)
            && self.members.iter().all(|&x| {
                ambient
                    .members
                    .iter()
                    .all(|&s| self.contains(self.mul(s, x)) && self.contains(self.mul(x, s)))
            })
    }

    pub fn is_commutative(&self) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// S*S = S for the carrier.
    pub fn is_globally_idempotent(&self) -> bool {
        let mut hit = vec![false; self.parent.order()];
        for &a in &self.members {
            for &b in &self.members {
                hit[self.mul(a, b)] = true;
            }
        }
        self.members.iter().all(|&x| hit[x])
    }

    /// Position of a member inside `members()`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }
}

/// A two-sided ideal of its parent semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal(Carrier);

impl Ideal {
    pub fn new(parent: &Arc<FiniteSemigroup>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let c = Carrier::new_unchecked(parent, members)?;
        for &x in &c.members {
            for s in 0..parent.order() {
                if !c.contains(parent.mul(s, x)) || !c.contains(parent.mul(x, s)) {
                    return Err(Error::NotIdeal(format!("{s} and {x} multiply outside the set")));
                }
            }
        }
        Ok(Ideal(c))
    }

    pub fn whole(parent: &Arc<FiniteSemigroup>) -> Self {
        Ideal(Carrier::full(parent))
    }

    #[inline]
    pub fn carrier(&self) -> &Carrier {
        &self.0
    }

    pub fn into_carrier(self) -> Carrier {
        self.0
    }

    pub fn members(&self) -> &[usize] {
        self.0.members()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parent(&self) -> &Arc<FiniteSemigroup> {
        self.0.parent()
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        Ok(Ideal(self.0.intersection(&other.0)?))
    }
}

/// Least ideal containing `xs`: fixed point of `X -> X ∪ SX ∪ XS`.
pub fn ideal_closure(s: &Arc<FiniteSemigroup>, xs: &[usize]) -> Result<Ideal> {
    let n = s.order();
    let mut mask = vec![false; n];
    let mut stack = Vec::new();
    for &x in xs {
        if x >= n {
            return Err(Error::IndexOutOfRange {
                row: x,
                col: 0,
                value: x,
                order: n,
            });
        }
        if !mask[x] {
            mask[x] = true;
            stack.push(x);
        }
    }
    while let Some(x) = stack.pop() {
        for t in 0..n {
            for y in [s.mul(t, x), s.mul(x, t)] {
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    Ok(Ideal(Carrier::new_unchecked(s, (0..n).filter(|&x| mask[x]))?))
}

/// The set product `{xy : x ∈ I, y ∈ J}`, which is again an ideal.
pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !i.0.same_parent(&j.0) {
        return Err(Error::ParentMismatch);
    }
    let s = i.parent();
    let mut set = BTreeSet::new();
    for &x in i.members() {
        for &y in j.members() {
            set.insert(s.mul(x, y));
        }
    }
    Ok(Ideal(Carrier::new_unchecked(s, set)?))
}

/// Every ideal of `s` (including the empty one), sorted by size then members.
pub fn all_ideals(s: &Arc<FiniteSemigroup>) -> Vec<Ideal> {
    let n = s.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(Vec::new());
    // every ideal is a union of principal ideals
    let principal: Vec<Vec<usize>> = (0..n)
        .map(|x| ideal_closure(s, &[x]).unwrap().members().to_vec())
        .collect();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(cur) = frontier.pop() {
        for p in &principal {
            let mut u: BTreeSet<usize> = cur.iter().copied().collect();
            u.extend(p.iter().copied());
            let v: Vec<usize> = u.into_iter().collect();
            if found.insert(v.clone()) {
                frontier.push(v);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out.into_iter()
        .map(|m| Ideal(Carrier::new_unchecked(s, m).unwrap()))
        .collect()
}

/// A carrier re-indexed as a standalone semigroup.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub semigroup: FiniteSemigroup,
    pub to_parent: Vec<usize>,
    pub from_parent: Vec<Option<usize>>,
}

pub fn restrict(c: &Carrier) -> Result<Restriction> {
    if c.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let k = c.len();
    let mut from_parent = vec![None; c.parent().order()];
    for (i, &x) in c.members().iter().enumerate() {
        from_parent[x] = Some(i);
    }
    let mut table = Vec::with_capacity(k * k);
    for &a in c.members() {
        for &b in c.members() {
            table.push(from_parent[c.mul(a, b)].ok_or(Error::NotSubsemigroup)?);
        }
    }
    Ok(Restriction {
        semigroup: FiniteSemigroup {
            order: k,
            table,
            labels: None,
        },
        to_parent: c.members().to_vec(),
        from_parent,
    })
}

/// A finite group presented by its Cayley table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Arc<FiniteSemigroup>,
    identity: usize,
    inverse: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl FiniteGroup {
    pub fn new(s: Arc<FiniteSemigroup>) -> Result<Self> {
        let identity = s
            .identity()
            .ok_or_else(|| Error::NotGroup("no identity element".into()))?;
        let n = s.order();
        let mut inverse = vec![NONE; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| s.mul(a, b) == identity && s.mul(b, a) == identity)
                .ok_or_else(|| Error::NotGroup(format!("element {a} has no inverse")))?;
        }
        Ok(FiniteGroup {
            table: s,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let s = FiniteSemigroup::from_fn(n, |a, b| (a + b) % n).expect("cyclic table");
        FiniteGroup::new(Arc::new(s)).expect("cyclic group")
    }

    pub fn semigroup(&self) -> &Arc<FiniteSemigroup> {
        &self.table
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Product of a word `g1 g2 ... gk`.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &g| self.mul(acc, g))
    }
}

/// A semilattice of groups: an inverse semigroup whose idempotents are central.
#[derive(Clone, Debug)]
pub struct Clifford {
    semigroup: Arc<FiniteSemigroup>,
    structure: InverseStructure,
}

impl Clifford {
    pub fn new(s: Arc<FiniteSemigroup>) -> Result<Self> {
        let structure = analyze_inverse(&s)?;
        if !structure.is_clifford {
            return Err(Error::NotClifford);
        }
        Ok(Clifford { semigroup: s, structure })
    }

    pub fn semigroup(&self) -> &Arc<FiniteSemigroup> {
        &self.semigroup
    }

    pub fn structure(&self) -> &InverseStructure {
        &self.structure
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.structure.inverse[a]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.semigroup.mul(a, b)
    }

    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    pub fn whole(&self) -> Ideal {
        Ideal::whole(&self.semigroup)
    }

    pub fn center(&self) -> Carrier {
        Carrier::full(&self.semigroup).center()
    }
}

/// An isomorphism between two carriers, possibly in different parents.
pub trait CarrierMap {
    fn dom(&self) -> &Carrier;
    fn ran(&self) -> &Carrier;
    fn apply(&self, x: usize) -> usize;
    fn apply_inverse(&self, y: usize) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    dom: Carrier,
    ran: Carrier,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
}

impl Isomorphism {
    /// `map` is indexed by elements of the domain's parent; entries outside
    /// the domain are ignored.
    pub fn new(dom: Carrier, ran: Carrier, map: &[usize]) -> Result<Self> {
        if map.len() != dom.parent().order() {
            return Err(Error::NotIsomorphism("map length differs from parent order".into()));
        }
        if dom.len() != ran.len() {
            return Err(Error::NotIsomorphism("domain and range sizes differ".into()));
        }
        let mut fwd = vec![NONE; dom.parent().order()];
        let mut bwd = vec![NONE; ran.parent().order()];
        for &x in dom.members() {
            let y = map[x];
            if !ran.contains(y) {
                return Err(Error::NotIsomorphism(format!("{x} maps to {y}, outside the range")));
            }
            if bwd[y] != NONE {
                return Err(Error::NotIsomorphism(format!("{y} is hit twice")));
            }
            fwd[x] = y;
            bwd[y] = x;
        }
        for &a in dom.members() {
            for &b in dom.members() {
                if fwd[dom.mul(a, b)] != ran.mul(fwd[a], fwd[b]) {
                    return Err(Error::NotIsomorphism(format!("not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(Isomorphism { dom, ran, fwd, bwd })
    }

    pub fn identity(c: &Carrier) -> Self {
        let mut fwd = vec![NONE; c.parent().order()];
        for &x in c.members() {
            fwd[x] = x;
        }
        Isomorphism {
            dom: c.clone(),
            ran: c.clone(),
            bwd: fwd.clone(),
            fwd,
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.fwd
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            dom: self.ran.clone(),
            ran: self.dom.clone(),
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
        }
    }

    /// `self ∘ other`; requires `other.ran == self.dom`.
    pub fn compose(&self, other: &Isomorphism) -> Result<Isomorphism> {
        if other.ran != self.dom {
            return Err(Error::DomainMismatch("composite of non-matching isomorphisms".into()));
        }
        let mut fwd = vec![NONE; other.dom.parent().order()];
        let mut bwd = vec![NONE; self.ran.parent().order()];
        for &x in other.dom.members() {
            let y = self.fwd[other.fwd[x]];
            fwd[x] = y;
            bwd[y] = x;
        }
        Ok(Isomorphism {
            dom: other.dom.clone(),
            ran: self.ran.clone(),
            fwd,
            bwd,
        })
    }

    /// Restriction to a subcarrier of the domain, with the image as range.
    pub fn restrict(&self, sub: &Carrier) -> Result<Isomorphism> {
        if !sub.is_subset_of(&self.dom) {
            return Err(Error::DomainMismatch("restriction to a non-subset".into()));
        }
        let image = Carrier::new_unchecked(self.ran.parent(), sub.members().iter().map(|&x| self.fwd[x]))?;
        let mut fwd = vec![NONE; self.fwd.len()];
        let mut bwd = vec![NONE; self.bwd.len()];
        for &x in sub.members() {
            fwd[x] = self.fwd[x];
            bwd[self.fwd[x]] = x;
        }
        Ok(Isomorphism {
            dom: sub.clone(),
            ran: image,
            fwd,
            bwd,
        })
    }

    /// Image of a subset of the domain.
    pub fn image(&self, sub: &Carrier) -> Result<Carrier> {
        if !sub.is_subset_of(&self.dom) {
            return Err(Error::DomainMismatch("image of a non-subset".into()));
        }
        Carrier::new_unchecked(self.ran.parent(), sub.members().iter().map(|&x| self.fwd[x]))
    }
}

impl CarrierMap for Isomorphism {
    fn dom(&self) -> &Carrier {
        &self.dom
    }
    fn ran(&self) -> &Carrier {
        &self.ran
    }
    #[inline]
    fn apply(&self, x: usize) -> usize {
        self.fwd[x]
    }
    #[inline]
    fn apply_inverse(&self, y: usize) -> usize {
        self.bwd[y]
    }
}

fn power_signature(s: &FiniteSemigroup, x: usize) -> (usize, usize) {
    // (index, period) of the monogenic subsemigroup generated by x
    let mut seen = vec![NONE; s.order()];
    let mut cur = x;
    let mut k = 0;
    loop {
        if seen[cur] != NONE {
            return (seen[cur], k - seen[cur]);
        }
        seen[cur] = k;
        cur = s.mul(cur, x);
        k += 1;
    }
}

/// Enumerates isomorphisms `dom -> ran` by backtracking, keeping only those
/// accepted by `allowed(x, y)` pointwise. Results are parent-indexed maps in
/// lexicographic order. Stops after `limit` results when given.
pub fn isomorphisms_filtered(
    dom: &Carrier,
    ran: &Carrier,
    allowed: impl Fn(usize, usize) -> bool,
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if dom.len() != ran.len() {
        return out;
    }
    let sd = dom.parent();
    let sr = ran.parent();
    let sig_d: Vec<(usize, usize)> = (0..sd.order()).map(|x| power_signature(sd, x)).collect();
    let sig_r: Vec<(usize, usize)> = (0..sr.order()).map(|x| power_signature(sr, x)).collect();
    let candidates: Vec<Vec<usize>> = dom
        .members()
        .iter()
        .map(|&x| {
            ran.members()
                .iter()
                .copied()
                .filter(|&y| sig_d[x] == sig_r[y] && allowed(x, y))
                .collect()
        })
        .collect();
    let mut map = vec![NONE; sd.order()];
    let mut used = vec![false; sr.order()];
    fn go(
        i: usize,
        dom: &Carrier,
        ran: &Carrier,
        cands: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if i == dom.len() {
            out.push(map.clone());
            return;
        }
        let x = dom.members()[i];
        for &y in &cands[i] {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let ok = dom.members()[..=i].iter().all(|&a| {
                let (ab, ba) = (dom.mul(a, x), dom.mul(x, a));
                (map[ab] == NONE || map[ab] == ran.mul(map[a], y))
                    && (map[ba] == NONE || map[ba] == ran.mul(y, map[a]))
            }) && dom.members()[..=i].iter().all(|&a| {
                // products landing on the newly mapped element
                dom.members()[..=i].iter().all(|&b| dom.mul(a, b) != x || ran.mul(map[a], map[b]) == y)
            });
            if ok {
                go(i + 1, dom, ran, cands, map, used, out, limit);
            }
            used[y] = false;
            map[x] = NONE;
        }
    }
    go(0, dom, ran, &candidates, &mut map, &mut used, &mut out, limit);
    out
}

pub fn isomorphisms(dom: &Carrier, ran: &Carrier) -> Vec<Vec<usize>> {
    isomorphisms_filtered(dom, ran, |_, _| true, None)
}

pub fn are_isomorphic(s: &Arc<FiniteSemigroup>, t: &Arc<FiniteSemigroup>) -> bool {
    !isomorphisms_filtered(&Carrier::full(s), &Carrier::full(t), |_, _| true, Some(1)).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn meet_semilattice_and_z2_are_valid() {
        // meet on {1, 0}: index 0 is the top
        assert!(validate_semigroup(&[vec![0, 1], vec![1, 1]]).is_ok());
        assert!(validate_semigroup(&[vec![0, 1], vec![1, 0]]).is_ok());
    }

    fn first_failure(n: usize, t: &dyn Fn(usize, usize) -> usize) -> Option<(usize, usize, usize)> {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t(t(a, b), c) != t(a, t(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn first_failing_triple_matches_exhaustive_search() {
        // every two-element magma
        for code in 0..16u32 {
            let t = |a: usize, b: usize| ((code >> (a * 2 + b)) & 1) as usize;
            let rows = vec![vec![t(0, 0), t(0, 1)], vec![t(1, 0), t(1, 1)]];
            match (first_failure(2, &t), validate_semigroup(&rows)) {
                (None, Ok(_)) => {}
                (Some(f), Err(Error::NonAssociative { s, t, u })) => assert_eq!(f, (s, t, u)),
                (f, r) => panic!("code {code}: oracle {f:?} vs {r:?}"),
            }
        }
    }

    #[test]
    fn failure_at_0_1_1_is_reported() {
        // no two-element magma fails first at (0,1,1); take the first
        // three-element one that does
        let found = (0..3usize.pow(9)).find_map(|code| {
            let t = move |a: usize, b: usize| code / 3usize.pow((3 * a + b) as u32) % 3;
            (first_failure(3, &t) == Some((0, 1, 1)))
                .then(|| (0..3).map(|a| (0..3).map(|b| t(a, b)).collect::<Vec<_>>()).collect::<Vec<_>>())
        });
        let rows = found.expect("a three-element witness exists");
        assert_eq!(validate_semigroup(&rows), Err(Error::NonAssociative { s: 0, t: 1, u: 1 }));
        assert!((0..16u32).all(|code| {
            let t = |a: usize, b: usize| ((code >> (a * 2 + b)) & 1) as usize;
            first_failure(2, &t) != Some((0, 1, 1))
        }));
    }

    #[test]
    fn out_of_range_and_ragged_tables_are_rejected() {
        assert!(matches!(
            validate_semigroup(&[vec![0, 2], vec![1, 0]]),
            Err(Error::IndexOutOfRange { row: 0, col: 1, .. })
        ));
        assert!(matches!(validate_semigroup(&[vec![0], vec![0, 0]]), Err(Error::Malformed(_))));
    }

    #[test]
    fn inverse_structure_of_standard_examples() {
        let z2 = catalog::cyclic(2);
        let st = analyze_inverse(&z2).unwrap();
        assert_eq!(st.inverse, vec![0, 1]);
        assert_eq!(st.idempotents, vec![0]);
        assert_eq!(st.center, vec![0, 1]);
        assert!(st.is_clifford);

        let k3 = catalog::k3();
        let st = analyze_inverse(&k3).unwrap();
        assert_eq!(st.idempotents, vec![0, 1]);
        assert!(st.is_clifford);
        assert_eq!(st.center, vec![0, 1, 2]);

        let s3z = catalog::s3_with_zero();
        let st = analyze_inverse(&s3z).unwrap();
        assert!(st.is_clifford);
        // brute-force center on the 7-element table: zero and the identity
        let brute: Vec<usize> = (0..7)
            .filter(|&a| (0..7).all(|b| s3z.mul(a, b) == s3z.mul(b, a)))
            .collect();
        assert_eq!(st.center, brute);
        assert_eq!(st.center, vec![0, 1]);
    }

    #[test]
    fn non_inverse_semigroups_are_reported() {
        // left-zero band: every element is an inverse of every other
        let lz = FiniteSemigroup::from_fn(2, |a, _| a).unwrap();
        assert!(matches!(analyze_inverse(&lz), Err(Error::NotInverse { .. })));
        // null semigroup: nonzero elements are not regular
        let null = FiniteSemigroup::from_fn(2, |_, _| 0).unwrap();
        assert!(matches!(analyze_inverse(&null), Err(Error::NotRegular { element: 1 })));
    }

    #[test]
    fn ideal_closure_examples() {
        let k3 = Arc::new(catalog::k3());
        assert_eq!(ideal_closure(&k3, &[0]).unwrap().members(), &[0]);
        assert_eq!(ideal_closure(&k3, &[2]).unwrap().members(), &[0, 1, 2]);
        assert_eq!(ideal_closure(&k3, &[]).unwrap().members(), &[] as &[usize]);
        assert_eq!(ideal_closure(&k3, &[0, 1, 2]).unwrap().members(), &[0, 1, 2]);
    }

    #[test]
    fn ideal_products_in_k3() {
        let k3 = Arc::new(catalog::k3());
        let zero = Ideal::new(&k3, [0]).unwrap();
        let all = Ideal::whole(&k3);
        assert_eq!(ideal_product(&zero, &all).unwrap(), zero);
        assert_eq!(ideal_product(&all, &all).unwrap(), all);
        let other = Arc::new(catalog::k3());
        let foreign = Ideal::whole(&Arc::new(catalog::cyclic(2)));
        assert!(ideal_product(&Ideal::whole(&other), &zero).is_ok());
        assert_eq!(ideal_product(&foreign, &zero), Err(Error::ParentMismatch));
    }

    #[test]
    fn restriction_examples() {
        let k3 = Arc::new(catalog::k3());
        let r = restrict(Ideal::new(&k3, [0]).unwrap().carrier()).unwrap();
        assert_eq!(r.semigroup.order(), 1);
        let r = restrict(&Carrier::full(&k3)).unwrap();
        assert_eq!(r.semigroup, *k3);
        let s3z = Arc::new(catalog::s3_with_zero());
        let r = restrict(Ideal::new(&s3z, [0]).unwrap().carrier()).unwrap();
        assert_eq!(r.semigroup.rows(), vec![vec![0]]);
        let empty = Carrier::new(&k3, []).unwrap();
        assert!(matches!(restrict(&empty), Err(Error::EmptyIdeal)));
    }

    #[test]
    fn all_ideals_of_s3_with_zero() {
        let s = Arc::new(catalog::s3_with_zero());
        let ids: Vec<Vec<usize>> = all_ideals(&s).iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(ids, vec![vec![], vec![0], (0..7).collect()]);
    }

    #[test]
    fn group_validation() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 3);
        assert!(FiniteGroup::new(Arc::new(catalog::k3())).is_err());
    }

    #[test]
    fn z4_and_klein_are_not_isomorphic() {
        let z4 = Arc::new(catalog::cyclic(4));
        let v4 = Arc::new(catalog::klein());
        assert!(!are_isomorphic(&z4, &v4));
        assert!(are_isomorphic(&z4, &Arc::new(catalog::cyclic(4))));
        let s3 = Carrier::full(&Arc::new(catalog::s3()));
        assert_eq!(isomorphisms(&s3, &s3).len(), 6);
    }
}
