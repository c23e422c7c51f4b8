//! Partial G-module structure on `C(A)`, multiplicative cochains with values
//! in central units of multiplier monoids, the coboundaries δ¹, δ², δ³ and
//! brute-force cohomology groups.
//!
//! A degree-`n` cochain assigns to each `(x1, …, xn)` a unit of
//! `M(C(D_{x1} D_{x1x2} ⋯ D_{x1⋯xn}))`. Slots are ordered lexicographically
//! over `Gⁿ` and values are stored as indices into per-slot unit groups whose
//! element 0 is the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rand::Rng;

use crate::action::PartialAction;
use crate::error::{Error, Result};
use crate::multiplier::Multiplier;
use crate::semigroup::{Carrier, CarrierMap, FiniteGroup};
use crate::Session;

/// The unit group of `M(K)` for a commutative carrier `K`, identity first.
#[derive(Debug)]
pub struct UnitGroup {
    carrier: Carrier,
    elements: Vec<Multiplier>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl UnitGroup {
    fn build(session: &Session, carrier: &Carrier) -> Result<Self> {
        let monoid = session.monoid(carrier)?;
        let elements: Vec<Multiplier> = (0..monoid.units().len()).map(|i| monoid.unit(i).clone()).collect();
        if let Some(m) = elements.iter().find(|m| !m.is_central()) {
            return Err(Error::Inconsistent(format!("non-central unit {m:?} on a commutative carrier")));
        }
        let index: HashMap<Vec<usize>, usize> = elements.iter().enumerate().map(|(i, m)| (m.key().0, i)).collect();
        let k = elements.len();
        let mut mul = vec![0; k * k];
        let mut inv = vec![0; k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = index[&elements[i].compose(&elements[j])?.key().0];
            }
            inv[i] = index[&elements[i].invert().expect("unit").key().0];
        }
        Ok(UnitGroup {
            carrier: carrier.clone(),
            elements,
            mul,
            inv,
            index,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Multiplier {
        &self.elements[i]
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elements.len() + j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Index of the unit acting by `map` (given on members, in member order).
    pub fn lookup(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn position(&self, m: &Multiplier) -> Option<usize> {
        if *m.carrier() != self.carrier {
            return None;
        }
        let (l, r) = m.key();
        if l != r {
            return None;
        }
        self.lookup(&l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    degree: usize,
    values: Vec<usize>,
}

impl Cochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Unit-group indices per slot, slots in lexicographic order of `Gⁿ`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

const MAX_DEGREE: usize = 4;

/// `C(A)` with the partial action `θ̃` and precomputed unit groups for every
/// slot of degree 1 to 4.
#[derive(Debug)]
pub struct PartialGModule {
    action: PartialAction,
    slots: Vec<Vec<Arc<UnitGroup>>>,
}

pub fn build_module(session: &Session, action: PartialAction) -> Result<PartialGModule> {
    if !action.algebra().is_commutative() {
        return Err(Error::ShapeMismatch("module carrier is not commutative".into()));
    }
    let g = action.group().clone();
    let n = g.order();
    let mut cache: HashMap<Vec<usize>, Arc<UnitGroup>> = HashMap::new();
    let mut slots = vec![Vec::new()];
    for deg in 1..=MAX_DEGREE {
        let count = n.pow(deg as u32);
        let mut row = Vec::with_capacity(count);
        for idx in 0..count {
            let t = tuple_of(n, deg, idx);
            let mut c = action.domain(t[0]).clone();
            let mut prefix = t[0];
            for &x in &t[1..] {
                prefix = g.mul(prefix, x);
                c = c.intersection(action.domain(prefix))?;
            }
            if !c.is_globally_idempotent() {
                return Err(Error::Inconsistent(format!("slot {t:?} carrier is not idempotent")));
            }
            let ug = match cache.get(c.members()) {
                Some(u) => u.clone(),
                None => {
                    let u = Arc::new(UnitGroup::build(session, &c)?);
                    cache.insert(c.members().to_vec(), u.clone());
                    u
                }
            };
            row.push(ug);
        }
        slots.push(row);
    }
    Ok(PartialGModule { action, slots })
}

fn tuple_of(n: usize, deg: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; deg];
    for i in (0..deg).rev() {
        t[i] = idx % n;
        idx /= n;
    }
    t
}

fn index_of(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

fn cap_error(what: &str, count: u64, cap: u64) -> Error {
    Error::CapExceeded {
        what: what.into(),
        count,
        cap,
    }
}

/// The image `Bⁿ` of the coboundary map with one preimage per element.
#[derive(Debug)]
pub struct CoboundaryImage {
    degree: usize,
    preimage: HashMap<Vec<usize>, Cochain>,
}

impl CoboundaryImage {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.preimage.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preimage.is_empty()
    }

    pub fn contains(&self, c: &Cochain) -> bool {
        c.degree == self.degree && self.preimage.contains_key(&c.values)
    }

    /// Some `b` with `δb = c`.
    pub fn preimage(&self, c: &Cochain) -> Option<&Cochain> {
        if c.degree != self.degree {
            return None;
        }
        self.preimage.get(&c.values)
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> Vec<Cochain> {
        let mut v: Vec<Cochain> = self
            .preimage
            .keys()
            .map(|k| Cochain {
                degree: self.degree,
                values: k.clone(),
            })
            .collect();
        v.sort();
        v
    }
}

/// `Hⁿ = Zⁿ/Bⁿ`. Classes are numbered by first appearance while scanning
/// `Zⁿ` in lexicographic order, so class 0 is the trivial class.
#[derive(Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub cocycles: Vec<Cochain>,
    pub coboundaries: Vec<Cochain>,
    pub representatives: Vec<Cochain>,
    pub table: Vec<Vec<usize>>,
    pub orders: Vec<usize>,
    class_of: HashMap<Vec<usize>, usize>,
}

impl CohomologyGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, c: &Cochain) -> Option<usize> {
        if c.degree != self.degree {
            return None;
        }
        self.class_of.get(&c.values).copied()
    }
}

impl PartialGModule {
    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn algebra(&self) -> &Carrier {
        self.action.algebra()
    }

    pub fn domain(&self, g: usize) -> &Carrier {
        self.action.domain(g)
    }

    pub fn slot_count(&self, degree: usize) -> usize {
        self.group().order().pow(degree as u32)
    }

    pub fn tuple(&self, degree: usize, slot: usize) -> Vec<usize> {
        tuple_of(self.group().order(), degree, slot)
    }

    pub fn slot_index(&self, args: &[usize]) -> usize {
        index_of(self.group().order(), args)
    }

    pub fn slot_group(&self, degree: usize, slot: usize) -> &Arc<UnitGroup> {
        &self.slots[degree][slot]
    }

    /// The carrier `C(D_{x1} D_{x1x2} ⋯)` of a slot.
    pub fn slot_carrier(&self, args: &[usize]) -> &Carrier {
        self.slots[args.len()][self.slot_index(args)].carrier()
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::ShapeMismatch(format!("degree {degree} is outside 1..={MAX_DEGREE}")));
        }
        Ok(())
    }

    pub fn identity(&self, degree: usize) -> Cochain {
        Cochain {
            degree,
            values: vec![0; self.slot_count(degree)],
        }
    }

    pub fn is_identity(&self, c: &Cochain) -> bool {
        c.values.iter().all(|&v| v == 0)
    }

    pub fn from_values(&self, degree: usize, values: Vec<usize>) -> Result<Cochain> {
        self.check_degree(degree)?;
        if values.len() != self.slot_count(degree) {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} slots",
                values.len(),
                self.slot_count(degree)
            )));
        }
        for (s, &v) in values.iter().enumerate() {
            if v >= self.slots[degree][s].order() {
                return Err(Error::ShapeMismatch(format!("value {v} out of range in slot {s}")));
            }
        }
        Ok(Cochain { degree, values })
    }

    /// Builds a cochain from multipliers of the slot carriers.
    pub fn cochain_from_fn(&self, degree: usize, f: impl Fn(&[usize]) -> Result<Multiplier>) -> Result<Cochain> {
        self.check_degree(degree)?;
        let mut values = Vec::with_capacity(self.slot_count(degree));
        for s in 0..self.slot_count(degree) {
            let t = self.tuple(degree, s);
            let m = f(&t)?;
            let ug = &self.slots[degree][s];
            values.push(
                ug.position(&m)
                    .ok_or_else(|| Error::ShapeMismatch(format!("value at {t:?} is not a central unit of its slot")))?,
            );
        }
        Ok(Cochain { degree, values })
    }

    pub fn value(&self, c: &Cochain, args: &[usize]) -> &Multiplier {
        let s = self.slot_index(args);
        self.slots[c.degree][s].element(c.values[s])
    }

    pub fn random(&self, degree: usize, rng: &mut impl Rng) -> Cochain {
        let values = (0..self.slot_count(degree))
            .map(|s| rng.gen_range(0..self.slots[degree][s].order()))
            .collect();
        Cochain { degree, values }
    }

    pub fn mul(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        if a.degree != b.degree {
            return Err(Error::DegreeMismatch {
                left: a.degree,
                right: b.degree,
            });
        }
        let values = (0..a.values.len())
            .map(|s| self.slots[a.degree][s].mul(a.values[s], b.values[s]))
            .collect();
        Ok(Cochain {
            degree: a.degree,
            values,
        })
    }

    pub fn inv(&self, a: &Cochain) -> Cochain {
        let values = (0..a.values.len()).map(|s| self.slots[a.degree][s].inv(a.values[s])).collect();
        Cochain {
            degree: a.degree,
            values,
        }
    }

    /// Source slots read by `δⁿ` at the target `x`, in formula order.
    fn sources(&self, degree: usize, x: &[usize]) -> Vec<usize> {
        let g = self.group();
        let mut out = vec![self.slot_index(&x[1..])];
        for i in 1..=degree {
            let mut merged: Vec<usize> = x[..i - 1].to_vec();
            merged.push(g.mul(x[i - 1], x[i]));
            merged.extend_from_slice(&x[i + 1..]);
            out.push(self.slot_index(&merged));
        }
        out.push(self.slot_index(&x[..degree]));
        out
    }

    /// `(δⁿc)(x)` as images of the target carrier's members.
    ///
    /// `a ↦ θ_{x1}(θ_{x1⁻¹}(a)·c(x2,…)) · ∏ c(…, x_i x_{i+1}, …)^{(-1)^i} · c(x1,…,xn)^{(-1)^{n+1}}`
    fn coboundary_map(&self, c: &Cochain, x: &[usize]) -> Vec<usize> {
        let deg = c.degree;
        let g = self.group();
        let src = self.sources(deg, x);
        let target = self.slot_carrier(x);
        let t_out = self.action.theta(x[0]);
        let t_in = self.action.theta(g.inv(x[0]));
        let factor = |pos: usize, inverse: bool| -> &Multiplier {
            let ug = &self.slots[deg][src[pos]];
            let v = c.values[src[pos]];
            ug.element(if inverse { ug.inv(v) } else { v })
        };
        target
            .members()
            .iter()
            .map(|&a| {
                let mut b = t_in.apply(a);
                b = factor(0, false).right(b);
                b = t_out.apply(b);
                for i in 1..=deg {
                    b = factor(i, i % 2 == 1).right(b);
                }
                factor(deg + 1, (deg + 1) % 2 == 1).right(b)
            })
            .collect()
    }

    pub fn coboundary(&self, c: &Cochain) -> Result<Cochain> {
        if c.degree == 0 || c.degree >= MAX_DEGREE {
            return Err(Error::ShapeMismatch(format!("no coboundary from degree {}", c.degree)));
        }
        let deg = c.degree + 1;
        let mut values = Vec::with_capacity(self.slot_count(deg));
        for s in 0..self.slot_count(deg) {
            let x = self.tuple(deg, s);
            let map = self.coboundary_map(c, &x);
            let v = self.slots[deg][s].lookup(&map).ok_or_else(|| Error::NotCentral { args: x.clone() })?;
            values.push(v);
        }
        Ok(Cochain { degree: deg, values })
    }

    /// `Zⁿ` in lexicographic order, by backtracking over slots and checking
    /// each target of `δⁿ` as soon as all of its sources are assigned.
    pub fn cocycles(&self, session: &Session, degree: usize) -> Result<Vec<Cochain>> {
        if degree == 0 || degree >= MAX_DEGREE {
            return Err(Error::ShapeMismatch(format!("no cocycle condition in degree {degree}")));
        }
        let slots = self.slot_count(degree);
        let mut due: Vec<Vec<Vec<usize>>> = vec![Vec::new(); slots];
        for t in 0..self.slot_count(degree + 1) {
            let x = self.tuple(degree + 1, t);
            let last = *self.sources(degree, &x).iter().max().unwrap();
            due[last].push(x);
        }
        let cap = session.caps().cochain_nodes;
        let mut nodes: u64 = 0;
        let mut out = Vec::new();
        let mut cur = self.identity(degree);
        let mut stack: Vec<usize> = vec![0];
        // iterative DFS: stack[s] is the next value to try in slot s
        while let Some(&next) = stack.last() {
            let s = stack.len() - 1;
            if next >= self.slots[degree][s].order() {
                stack.pop();
                if let Some(top) = stack.last_mut() {
                    *top += 1;
                }
                continue;
            }
            nodes += 1;
            if nodes > cap {
                session.note(|u| u.cochain_nodes = u.cochain_nodes.max(nodes));
                return Err(cap_error("cocycle search nodes", nodes, cap));
            }
            cur.values[s] = next;
            let ok = due[s].iter().all(|x| {
                let target = self.slot_carrier(x);
                self.coboundary_map(&cur, x)
                    .iter()
                    .zip(target.members())
                    .all(|(b, a)| b == a)
            });
            if !ok {
                *stack.last_mut().unwrap() += 1;
            } else if s + 1 == slots {
                out.push(cur.clone());
                *stack.last_mut().unwrap() += 1;
            } else {
                stack.push(0);
            }
        }
        session.note(|u| u.cochain_nodes = u.cochain_nodes.max(nodes));
        Ok(out)
    }

    /// `Bⁿ` as the subgroup generated by coboundaries of elementary
    /// cochains. Degree 1 has only the identity.
    pub fn coboundaries(&self, session: &Session, degree: usize) -> Result<CoboundaryImage> {
        self.check_degree(degree)?;
        let mut preimage = HashMap::new();
        if degree == 1 {
            preimage.insert(self.identity(1).values, Cochain { degree: 0, values: Vec::new() });
            return Ok(CoboundaryImage { degree, preimage });
        }
        let src_deg = degree - 1;
        let mut gens: Vec<(Cochain, Cochain)> = Vec::new();
        let mut seen_gen = HashSet::new();
        for s in 0..self.slot_count(src_deg) {
            for k in 1..self.slots[src_deg][s].order() {
                let mut e = self.identity(src_deg);
                e.values[s] = k;
                let img = self.coboundary(&e)?;
                if !self.is_identity(&img) && seen_gen.insert(img.values.clone()) {
                    gens.push((img, e));
                }
            }
        }
        let cap = session.caps().cochain_nodes;
        let mut nodes: u64 = 0;
        let id = self.identity(degree);
        preimage.insert(id.values.clone(), self.identity(src_deg));
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            let px = preimage[&x.values].clone();
            for (img, pre) in &gens {
                nodes += 1;
                if nodes > cap {
                    session.note(|u| u.cochain_nodes = u.cochain_nodes.max(nodes));
                    return Err(cap_error("coboundary closure nodes", nodes, cap));
                }
                let y = self.mul(&x, img)?;
                if !preimage.contains_key(&y.values) {
                    preimage.insert(y.values.clone(), self.mul(&px, pre)?);
                    queue.push_back(y);
                }
            }
        }
        session.note(|u| u.cochain_nodes = u.cochain_nodes.max(nodes));
        Ok(CoboundaryImage { degree, preimage })
    }

    /// `Hⁿ` with its class table. `H¹` is `Z¹` since there is no `δ⁰`.
    pub fn cohomology(&self, session: &Session, degree: usize) -> Result<CohomologyGroup> {
        let cocycles = self.cocycles(session, degree)?;
        let b = self.coboundaries(session, degree)?;
        let coboundaries = b.elements();
        let mut class_of: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut representatives = Vec::new();
        for z in &cocycles {
            if class_of.contains_key(&z.values) {
                continue;
            }
            let k = representatives.len();
            representatives.push(z.clone());
            for c in &coboundaries {
                let y = self.mul(z, c)?;
                if class_of.insert(y.values.clone(), k).is_some() {
                    return Err(Error::Inconsistent("cosets overlap".into()));
                }
            }
        }
        if class_of.len() != cocycles.len() {
            return Err(Error::Inconsistent("coboundaries are not all cocycles".into()));
        }
        let h = representatives.len();
        let mut table = vec![vec![0; h]; h];
        for i in 0..h {
            for j in 0..h {
                let p = self.mul(&representatives[i], &representatives[j])?;
                table[i][j] = class_of[&p.values];
            }
        }
        let orders = (0..h)
            .map(|i| {
                let mut k = 1;
                let mut cur = i;
                while cur != 0 {
                    cur = table[cur][i];
                    k += 1;
                }
                k
            })
            .collect();
        Ok(CohomologyGroup {
            degree,
            cocycles,
            coboundaries,
            representatives,
            table,
            orders,
            class_of,
        })
    }

    /// `v′ = v·δ¹u` with `u_x = v_{1,1}⁻¹` restricted to `C(D_x)`; then
    /// `v′_{1,1} = id` and `δ²v′ = δ²v`.
    pub fn normalize_2cochain(&self, v: &Cochain) -> Result<Cochain> {
        if v.degree != 2 {
            return Err(Error::DegreeMismatch { left: v.degree, right: 2 });
        }
        let e = self.group().identity();
        let v11 = self
            .value(v, &[e, e])
            .invert()
            .ok_or_else(|| Error::Inconsistent("cochain value is not a unit".into()))?;
        let u = self.cochain_from_fn(1, |t| v11.restrict(self.slot_carrier(t)))?;
        self.mul(v, &self.coboundary(&u)?)
    }

    /// The least `b` (lexicographically) with `c′ = c·δb`, or `None`.
    pub fn cohomologous(&self, session: &Session, c: &Cochain, c2: &Cochain) -> Result<Option<Cochain>> {
        if c.degree != c2.degree {
            return Err(Error::DegreeMismatch {
                left: c.degree,
                right: c2.degree,
            });
        }
        if c.degree < 2 || c.degree > 3 {
            return Err(Error::ShapeMismatch(format!("no coboundaries into degree {}", c.degree)));
        }
        let d = self.mul(&self.inv(c), c2)?;
        let image = self.coboundaries(session, c.degree)?;
        let Some(b0) = image.preimage(&d) else {
            return Ok(None);
        };
        let kernel = if c.degree == 2 {
            self.cocycles(session, 1)?
        } else {
            self.cocycles(session, 2)?
        };
        let mut best: Option<Cochain> = None;
        for z in &kernel {
            let b = self.mul(b0, z)?;
            if best.as_ref().is_none_or(|x| b < *x) {
                best = Some(b);
            }
        }
        Ok(best)
    }
}
