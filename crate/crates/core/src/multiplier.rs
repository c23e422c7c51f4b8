//! Multipliers: pairs of compatible left/right translations of a carrier.
//!
//! Maps are stored parent-indexed with [`NONE`] outside the carrier, so a
//! multiplier of an ideal and its restriction to a smaller ideal share one
//! indexing scheme. Composition follows `(mn)s = m(ns)` and `s(mn) = (sm)n`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::{Carrier, CarrierMap, Clifford, Isomorphism, NONE};

#[derive(Clone, PartialEq, Eq)]
pub struct Multiplier {
    carrier: Carrier,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<usize> = self.carrier.members().iter().map(|&x| self.left[x]).collect();
        let r: Vec<usize> = self.carrier.members().iter().map(|&x| self.right[x]).collect();
        write!(f, "Multiplier{{on {:?}, left {l:?}, right {r:?}}}", self.carrier.members())
    }
}

/// The three multiplier axioms on a carrier; maps are parent-indexed.
pub fn is_multiplier(c: &Carrier, left: &[usize], right: &[usize]) -> bool {
    let n = c.parent().order();
    if left.len() != n || right.len() != n {
        return false;
    }
    let m = c.members();
    if m.iter().any(|&x| !c.contains(left[x]) || !c.contains(right[x])) {
        return false;
    }
    m.iter().all(|&s| {
        m.iter().all(|&t| {
            let st = c.mul(s, t);
            left[st] == c.mul(left[s], t)
                && right[st] == c.mul(s, right[t])
                && c.mul(s, left[t]) == c.mul(right[s], t)
        })
    })
}

fn restrict_to(c: &Carrier, map: &[usize]) -> Vec<usize> {
    let mut out = vec![NONE; c.parent().order()];
    for &x in c.members() {
        out[x] = map[x];
    }
    out
}

impl Multiplier {
    pub fn new(carrier: Carrier, left: &[usize], right: &[usize]) -> Result<Self> {
        if !is_multiplier(&carrier, left, right) {
            return Err(Error::NotMultiplier("axioms fail".into()));
        }
        Ok(Multiplier {
            left: restrict_to(&carrier, left),
            right: restrict_to(&carrier, right),
            carrier,
        })
    }

    pub(crate) fn new_unchecked(carrier: Carrier, left: Vec<usize>, right: Vec<usize>) -> Self {
        Multiplier { carrier, left, right }
    }

    pub fn identity(c: &Carrier) -> Self {
        let id = restrict_to(c, &(0..c.parent().order()).collect::<Vec<_>>());
        Multiplier {
            carrier: c.clone(),
            left: id.clone(),
            right: id,
        }
    }

    #[inline]
    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// `s ↦ ms`
    #[inline]
    pub fn left(&self, s: usize) -> usize {
        self.left[s]
    }

    /// `s ↦ sm`
    #[inline]
    pub fn right(&self, s: usize) -> usize {
        self.right[s]
    }

    pub fn left_map(&self) -> &[usize] {
        &self.left
    }

    pub fn right_map(&self) -> &[usize] {
        &self.right
    }

    /// Both maps restricted to members, in member order.
    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        let m = self.carrier.members();
        (
            m.iter().map(|&x| self.left[x]).collect(),
            m.iter().map(|&x| self.right[x]).collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.carrier.members().iter().all(|&x| self.left[x] == x && self.right[x] == x)
    }

    /// `self ∘ n`: `(mn)s = m(ns)`, `s(mn) = (sm)n`.
    pub fn compose(&self, n: &Multiplier) -> Result<Multiplier> {
        if self.carrier != n.carrier {
            return Err(Error::CarrierMismatch);
        }
        let mut left = vec![NONE; self.left.len()];
        let mut right = vec![NONE; self.left.len()];
        for &x in self.carrier.members() {
            left[x] = self.left[n.left[x]];
            right[x] = n.right[self.right[x]];
        }
        Ok(Multiplier {
            carrier: self.carrier.clone(),
            left,
            right,
        })
    }

    pub fn is_invertible(&self) -> bool {
        let mut hl = vec![false; self.left.len()];
        let mut hr = vec![false; self.left.len()];
        for &x in self.carrier.members() {
            hl[self.left[x]] = true;
            hr[self.right[x]] = true;
        }
        self.carrier.members().iter().all(|&x| hl[x] && hr[x])
    }

    pub fn invert(&self) -> Option<Multiplier> {
        if !self.is_invertible() {
            return None;
        }
        let mut left = vec![NONE; self.left.len()];
        let mut right = vec![NONE; self.left.len()];
        for &x in self.carrier.members() {
            left[self.left[x]] = x;
            right[self.right[x]] = x;
        }
        Some(Multiplier {
            carrier: self.carrier.clone(),
            left,
            right,
        })
    }

    /// `ms = sm` for every member; equivalent to centrality in `M(S)` when `S² = S`.
    pub fn is_central(&self) -> bool {
        self.carrier.members().iter().all(|&x| self.left[x] == self.right[x])
    }

    /// `m^α`, a multiplier of `α.ran()`.
    pub fn transport(&self, alpha: &impl CarrierMap) -> Result<Multiplier> {
        if *alpha.dom() != self.carrier {
            return Err(Error::NotIsomorphism("transport along a map with the wrong domain".into()));
        }
        let ran = alpha.ran().clone();
        let mut left = vec![NONE; ran.parent().order()];
        let mut right = vec![NONE; ran.parent().order()];
        for &t in ran.members() {
            let s = alpha.apply_inverse(t);
            left[t] = alpha.apply(self.left[s]);
            right[t] = alpha.apply(self.right[s]);
        }
        Ok(Multiplier {
            carrier: ran,
            left,
            right,
        })
    }

    /// `μ(m): s ↦ m s m⁻¹`.
    pub fn conjugation(&self) -> Result<Isomorphism> {
        let inv = self.invert().ok_or(Error::NotInvertible)?;
        if !self.carrier.is_globally_idempotent() {
            return Err(Error::SNotIdempotentSquare);
        }
        let mut map = vec![NONE; self.left.len()];
        for &x in self.carrier.members() {
            map[x] = inv.right[self.left[x]];
        }
        Isomorphism::new(self.carrier.clone(), self.carrier.clone(), &map)
    }

    /// Set-theoretic restriction to a subcarrier preserved by both maps.
    pub fn restrict(&self, sub: &Carrier) -> Result<Multiplier> {
        if !sub.is_subset_of(&self.carrier) {
            return Err(Error::DomainMismatch("restriction to a non-subset".into()));
        }
        if sub
            .members()
            .iter()
            .any(|&x| !sub.contains(self.left[x]) || !sub.contains(self.right[x]))
        {
            return Err(Error::NotMultiplier("subset is not preserved".into()));
        }
        Ok(Multiplier {
            carrier: sub.clone(),
            left: restrict_to(sub, &self.left),
            right: restrict_to(sub, &self.right),
        })
    }
}

/// `φ_s`: `t φ_s = ts`, `φ_s t = st`. `s` may lie outside the carrier as long
/// as both translations stay inside (e.g. any `s` when the carrier is an ideal).
pub fn inner_multiplier(c: &Carrier, s: usize) -> Result<Multiplier> {
    let n = c.parent().order();
    if s >= n {
        return Err(Error::IndexOutOfRange {
            row: s,
            col: 0,
            value: s,
            order: n,
        });
    }
    let mut left = vec![NONE; n];
    let mut right = vec![NONE; n];
    for &t in c.members() {
        left[t] = c.mul(s, t);
        right[t] = c.mul(t, s);
        if !c.contains(left[t]) || !c.contains(right[t]) {
            return Err(Error::NotMultiplier(format!("translation by {s} leaves the carrier")));
        }
    }
    Ok(Multiplier {
        carrier: c.clone(),
        left,
        right,
    })
}

/// `m ↦ m′` with `m′a = m(aa⁻¹)·a` and `am′ = a·(a⁻¹a)m`, from `M(C(D))` to
/// `C(M(D))`, for `D` a carrier of a Clifford semigroup closed under inverses.
pub fn extend_central(a: &Clifford, d: &Carrier, m: &Multiplier) -> Result<Multiplier> {
    if **d.parent() != **a.semigroup() || d.members().iter().any(|&x| !d.contains(a.inv(x))) {
        return Err(Error::NotClifford);
    }
    if *m.carrier() != d.center() {
        return Err(Error::NotMultiplierOfCenter);
    }
    let mut left = vec![NONE; d.parent().order()];
    let mut right = vec![NONE; d.parent().order()];
    for &x in d.members() {
        let xi = a.inv(x);
        left[x] = a.mul(m.left(a.mul(x, xi)), x);
        right[x] = a.mul(x, m.right(a.mul(xi, x)));
    }
    Ok(Multiplier {
        carrier: d.clone(),
        left,
        right,
    })
}

/// All multipliers of a carrier, in lexicographic order of (left, right).
pub struct MultiplierMonoid {
    carrier: Carrier,
    all: Vec<Multiplier>,
    units: Vec<usize>,
    central_units: Vec<usize>,
    index: HashMap<(Vec<usize>, Vec<usize>), usize>,
}

impl fmt::Debug for MultiplierMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MultiplierMonoid{{on {:?}, {} multipliers, {} units}}",
            self.carrier.members(),
            self.all.len(),
            self.units.len()
        )
    }
}

impl MultiplierMonoid {
    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn all(&self) -> &[Multiplier] {
        &self.all
    }

    /// Indices into `all()` of the invertible multipliers, identity first and
    /// the rest in lexicographic order. Every "least witness" search walks
    /// units in this order.
    pub fn units(&self) -> &[usize] {
        &self.units
    }

    /// Units commuting with every multiplier, same ordering as `units()`.
    pub fn central_units(&self) -> &[usize] {
        &self.central_units
    }

    pub fn unit(&self, i: usize) -> &Multiplier {
        &self.all[self.units[i]]
    }

    pub fn position(&self, m: &Multiplier) -> Option<usize> {
        if m.carrier != self.carrier {
            return None;
        }
        self.index.get(&m.key()).copied()
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }
}

/// Backtracking over one-sided translations: `f(st) = f(s)t` when
/// `left_side`, else `f(st) = s f(t)`.
fn translations(c: &Carrier, left_side: bool) -> Vec<Vec<usize>> {
    let m = c.members();
    let k = m.len();
    let mut out = Vec::new();
    let mut f = vec![NONE; c.parent().order()];
    fn ok(c: &Carrier, f: &[usize], left_side: bool) -> bool {
        for &s in c.members() {
            for &t in c.members() {
                let st = c.mul(s, t);
                if f[st] == NONE {
                    continue;
                }
                if left_side {
                    if f[s] != NONE && f[st] != c.mul(f[s], t) {
                        return false;
                    }
                } else if f[t] != NONE && f[st] != c.mul(s, f[t]) {
                    return false;
                }
            }
        }
        true
    }
    fn go(i: usize, k: usize, c: &Carrier, f: &mut Vec<usize>, left_side: bool, out: &mut Vec<Vec<usize>>) {
        if i == k {
            out.push(f.clone());
            return;
        }
        let x = c.members()[i];
        for &y in c.members() {
            f[x] = y;
            if ok(c, f, left_side) {
                go(i + 1, k, c, f, left_side, out);
            }
        }
        f[x] = NONE;
    }
    go(0, k, c, &mut f, left_side, &mut out);
    out
}

/// Complete multiplier monoid of a carrier with at most `cap` elements.
pub fn enumerate_multipliers(c: &Carrier, cap: usize) -> Result<MultiplierMonoid> {
    if c.len() > cap {
        return Err(Error::CapExceeded {
            what: "multiplier carrier order".into(),
            count: c.len() as u64,
            cap: cap as u64,
        });
    }
    let lefts = translations(c, true);
    let rights = translations(c, false);
    let members = c.members();
    let mut all = Vec::new();
    for l in &lefts {
        // admissible values of s·m given m·t for all t
        let allowed: Vec<Vec<bool>> = members
            .iter()
            .map(|&s| {
                members
                    .iter()
                    .map(|&r| members.iter().all(|&t| c.mul(r, t) == c.mul(s, l[t])))
                    .collect()
            })
            .collect();
        for r in &rights {
            let fits = members.iter().enumerate().all(|(i, &s)| {
                let pos = c.position(r[s]).expect("right translation stays in the carrier");
                allowed[i][pos]
            });
            if fits {
                all.push(Multiplier::new_unchecked(c.clone(), l.clone(), r.clone()));
            }
        }
    }
    let index: HashMap<_, _> = all.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
    let id = index[&Multiplier::identity(c).key()];
    let mut units: Vec<usize> = vec![id];
    units.extend((0..all.len()).filter(|&i| i != id && all[i].is_invertible()));
    let central_units = units
        .iter()
        .copied()
        .filter(|&u| {
            all.iter().all(|n| {
                all[u].compose(n).unwrap().key() == n.compose(&all[u]).unwrap().key()
            })
        })
        .collect();
    Ok(MultiplierMonoid {
        carrier: c.clone(),
        all,
        units,
        central_units,
        index,
    })
}

/// Least unit `w` of `M(ran)` (in `units()` order) with `ψ(s) = wφ(s)w⁻¹`.
pub fn solve_conjugator(
    monoid: &MultiplierMonoid,
    phi: &impl CarrierMap,
    psi: &impl CarrierMap,
) -> Result<Option<Multiplier>> {
    if phi.dom() != psi.dom() || phi.ran() != psi.ran() {
        return Err(Error::DomainMismatch("conjugator between maps with different domains".into()));
    }
    if *monoid.carrier() != *phi.ran() {
        return Err(Error::CarrierMismatch);
    }
    if !phi.ran().is_globally_idempotent() {
        return Err(Error::SNotIdempotentSquare);
    }
    for &u in monoid.units() {
        let w = &monoid.all[u];
        let wi = w.invert().expect("unit");
        if phi
            .dom()
            .members()
            .iter()
            .all(|&s| psi.apply(s) == wi.right(w.left(phi.apply(s))))
        {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}
