//! Isomorphisms between ideals, the conjugation congruence `~` on them, the
//! quotient monoid and partial homomorphisms from groups into it.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multiplier::{solve_conjugator, Multiplier};
use crate::semigroup::{
    all_ideals, analyze_inverse, ideal_closure, isomorphisms, validate_semigroup, Carrier, CarrierMap, Clifford,
    FiniteGroup, FiniteSemigroup, Ideal, Isomorphism, NONE,
};
use crate::Session;

/// An isomorphism between two ideals of one parent semigroup.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialIso {
    dom: Ideal,
    ran: Ideal,
    iso: Isomorphism,
}

impl fmt::Debug for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = self.dom.members().iter().map(|&x| (x, self.iso.apply(x))).collect();
        write!(f, "PartialIso{pairs:?}")
    }
}

impl PartialIso {
    /// `map` is parent-indexed; entries outside `dom` are ignored.
    pub fn new(dom: Ideal, ran: Ideal, map: &[usize]) -> Result<Self> {
        if !dom.carrier().same_parent(ran.carrier()) {
            return Err(Error::ParentMismatch);
        }
        let iso = Isomorphism::new(dom.carrier().clone(), ran.carrier().clone(), map)?;
        Ok(PartialIso { dom, ran, iso })
    }

    /// Builds the iso from `(x, φ(x))` pairs; domain and range are read off.
    pub fn from_pairs(parent: &Arc<FiniteSemigroup>, pairs: &[(usize, usize)]) -> Result<Self> {
        let dom = Ideal::new(parent, pairs.iter().map(|p| p.0))?;
        let ran = Ideal::new(parent, pairs.iter().map(|p| p.1))?;
        if dom.len() != pairs.len() {
            return Err(Error::NotIsomorphism("repeated domain element".into()));
        }
        let mut map = vec![NONE; parent.order()];
        for &(x, y) in pairs {
            map[x] = y;
        }
        Self::new(dom, ran, &map)
    }

    pub fn identity(i: &Ideal) -> Self {
        PartialIso {
            dom: i.clone(),
            ran: i.clone(),
            iso: Isomorphism::identity(i.carrier()),
        }
    }

    pub(crate) fn from_iso(iso: Isomorphism) -> Result<Self> {
        let parent = iso.dom().parent().clone();
        let dom = Ideal::new(&parent, iso.dom().members().iter().copied())?;
        let ran = Ideal::new(&parent, iso.ran().members().iter().copied())?;
        Ok(PartialIso { dom, ran, iso })
    }

    pub fn dom(&self) -> &Ideal {
        &self.dom
    }

    pub fn ran(&self) -> &Ideal {
        &self.ran
    }

    pub fn iso(&self) -> &Isomorphism {
        &self.iso
    }

    pub fn parent(&self) -> &Arc<FiniteSemigroup> {
        self.dom.parent()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.iso.apply(x)
    }

    #[inline]
    pub fn apply_inverse(&self, y: usize) -> usize {
        self.iso.apply_inverse(y)
    }

    pub fn inverse(&self) -> PartialIso {
        PartialIso {
            dom: self.ran.clone(),
            ran: self.dom.clone(),
            iso: self.iso.inverse(),
        }
    }

    /// Images of the domain members, in member order.
    pub fn key(&self) -> Vec<usize> {
        self.dom.members().iter().map(|&x| self.iso.apply(x)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.ran && self.dom.members().iter().all(|&x| self.apply(x) == x)
    }

    /// Restriction to an ideal contained in the domain.
    pub fn restrict(&self, sub: &Ideal) -> Result<PartialIso> {
        PartialIso::from_iso(self.iso.restrict(sub.carrier())?)
    }

    /// Image of an ideal contained in the domain.
    pub fn image(&self, sub: &Ideal) -> Result<Ideal> {
        let c = self.iso.image(sub.carrier())?;
        Ideal::new(self.parent(), c.members().iter().copied())
    }

    /// Preimage of an ideal contained in the range.
    pub fn preimage(&self, sub: &Ideal) -> Result<Ideal> {
        self.inverse().image(sub)
    }

    /// `μ(m)∘φ` for a unit `m` of `M(ran φ)`.
    pub fn conjugate_by(&self, m: &Multiplier) -> Result<PartialIso> {
        if m.carrier() != self.ran.carrier() {
            return Err(Error::CarrierMismatch);
        }
        let mu = m.conjugation()?;
        Ok(PartialIso {
            dom: self.dom.clone(),
            ran: self.ran.clone(),
            iso: mu.compose(&self.iso)?,
        })
    }
}

impl CarrierMap for PartialIso {
    fn dom(&self) -> &Carrier {
        self.dom.carrier()
    }
    fn ran(&self) -> &Carrier {
        self.ran.carrier()
    }
    fn apply(&self, x: usize) -> usize {
        self.iso.apply(x)
    }
    fn apply_inverse(&self, y: usize) -> usize {
        self.iso.apply_inverse(y)
    }
}

/// `φ∘ψ` with domain `ψ⁻¹(ran ψ ∩ dom φ)` and range `φ(ran ψ ∩ dom φ)`.
pub fn compose_partial(phi: &PartialIso, psi: &PartialIso) -> Result<PartialIso> {
    if !phi.dom.carrier().same_parent(psi.dom.carrier()) {
        return Err(Error::ParentMismatch);
    }
    let mid = psi.ran.intersection(&phi.dom)?;
    let dom = psi.preimage(&mid)?;
    let ran = phi.image(&mid)?;
    let mut map = vec![NONE; phi.parent().order()];
    for &x in dom.members() {
        map[x] = phi.apply(psi.apply(x));
    }
    PartialIso::new(dom, ran, &map)
}

/// The least unit `m` of `M(ran φ)` with `ψ = μ(m)∘φ`, or `None` when the two
/// are not `~`-related.
pub fn similar(session: &Session, phi: &PartialIso, psi: &PartialIso) -> Result<Option<Multiplier>> {
    if !phi.dom.carrier().same_parent(psi.dom.carrier()) {
        return Err(Error::ParentMismatch);
    }
    if phi.dom != psi.dom || phi.ran != psi.ran {
        return Ok(None);
    }
    if phi.iso == psi.iso {
        return Ok(Some(Multiplier::identity(phi.ran.carrier())));
    }
    let monoid = session.monoid(phi.ran.carrier())?;
    solve_conjugator(&monoid, phi, psi)
}

/// A `~`-class. When the unit group of `M(ran)` fits the orbit cap the full
/// orbit is kept and the representative is its least member; otherwise the
/// given iso represents the class and membership is decided by
/// [`similar`].
#[derive(Clone, Debug)]
pub struct SigmaClass {
    representative: PartialIso,
    orbit: Option<Vec<PartialIso>>,
}

impl SigmaClass {
    pub fn representative(&self) -> &PartialIso {
        &self.representative
    }

    pub fn orbit(&self) -> Option<&[PartialIso]> {
        self.orbit.as_deref()
    }

    pub fn dom(&self) -> &Ideal {
        self.representative.dom()
    }

    pub fn ran(&self) -> &Ideal {
        self.representative.ran()
    }

    pub fn contains(&self, session: &Session, psi: &PartialIso) -> Result<bool> {
        match &self.orbit {
            Some(o) => Ok(o.iter().any(|x| x == psi)),
            None => Ok(similar(session, &self.representative, psi)?.is_some()),
        }
    }

    pub fn same_class(&self, session: &Session, other: &SigmaClass) -> Result<bool> {
        self.contains(session, &other.representative)
    }
}

pub fn sigma_class(session: &Session, phi: &PartialIso) -> Result<SigmaClass> {
    let monoid = session.monoid(phi.ran.carrier())?;
    let units = monoid.units();
    session.note(|u| u.orbit = u.orbit.max(units.len()));
    if units.len() > session.caps().orbit {
        return Ok(SigmaClass {
            representative: phi.clone(),
            orbit: None,
        });
    }
    let mut orbit: Vec<PartialIso> = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..units.len() {
        let psi = phi.conjugate_by(monoid.unit(i))?;
        if seen.insert(psi.key()) {
            orbit.push(psi);
        }
    }
    orbit.sort_by_key(|p| p.key());
    Ok(SigmaClass {
        representative: orbit[0].clone(),
        orbit: Some(orbit),
    })
}

/// Every isomorphism between non-empty ideals of `s`.
pub fn sigma_elements(s: &Arc<FiniteSemigroup>) -> Result<Vec<PartialIso>> {
    let ideals: Vec<Ideal> = all_ideals(s).into_iter().filter(|i| !i.is_empty()).collect();
    let mut out = Vec::new();
    for i in &ideals {
        for j in &ideals {
            for map in isomorphisms(i.carrier(), j.carrier()) {
                out.push(PartialIso::new(i.clone(), j.clone(), &map)?);
            }
        }
    }
    Ok(out)
}

/// `Σ(A)` together with its quotient by `~`.
#[derive(Debug)]
pub struct SigmaQuotient {
    pub elements: Vec<PartialIso>,
    pub classes: Vec<SigmaClass>,
    pub class_of: Vec<usize>,
    /// Multiplication table of the quotient on class indices.
    pub table: FiniteSemigroup,
    pub identity: usize,
}

impl SigmaQuotient {
    pub fn class_index(&self, session: &Session, phi: &PartialIso) -> Result<Option<usize>> {
        for (k, c) in self.classes.iter().enumerate() {
            if c.dom() == phi.dom() && c.ran() == phi.ran() && c.contains(session, phi)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// Enumerates `Σ(A)`, groups it into `~`-classes and tabulates class-level
/// composition. The table is checked to be an inverse monoid.
pub fn sigma_quotient(session: &Session, a: &Clifford) -> Result<SigmaQuotient> {
    let elements = sigma_elements(a.semigroup())?;
    let mut classes: Vec<SigmaClass> = Vec::new();
    let mut class_of = Vec::with_capacity(elements.len());
    for phi in &elements {
        let mut found = None;
        for (k, c) in classes.iter().enumerate() {
            if c.dom() == phi.dom() && c.ran() == phi.ran() && c.contains(session, phi)? {
                found = Some(k);
                break;
            }
        }
        let k = match found {
            Some(k) => k,
            None => {
                classes.push(sigma_class(session, phi)?);
                classes.len() - 1
            }
        };
        class_of.push(k);
    }
    let mut q = SigmaQuotient {
        elements,
        classes,
        class_of,
        table: crate::catalog::trivial(),
        identity: 0,
    };
    let n = q.classes.len();
    let mut rows = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let c = compose_partial(q.classes[x].representative(), q.classes[y].representative())?;
            rows[x][y] = q
                .class_index(session, &c)?
                .ok_or_else(|| Error::Inconsistent("composite outside the enumerated set".into()))?;
        }
    }
    q.table = validate_semigroup(&rows)?;
    analyze_inverse(&q.table)?;
    let whole = PartialIso::identity(&a.whole());
    q.identity = q
        .class_index(session, &whole)?
        .ok_or_else(|| Error::Inconsistent("identity missing".into()))?;
    Ok(q)
}

/// A unital partial homomorphism `G → ς(A)` with chosen representatives.
#[derive(Clone, Debug)]
pub struct PartialHom {
    group: FiniteGroup,
    reps: Vec<PartialIso>,
    assignment: Vec<SigmaClass>,
}

impl PartialHom {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `θ_g`, with `θ_1 = id_A`.
    pub fn rep(&self, g: usize) -> &PartialIso {
        &self.reps[g]
    }

    pub fn reps(&self) -> &[PartialIso] {
        &self.reps
    }

    pub fn class(&self, g: usize) -> &SigmaClass {
        &self.assignment[g]
    }

    /// `D_g = ran θ_g`.
    pub fn domain(&self, g: usize) -> &Ideal {
        self.reps[g].ran()
    }
}

fn ph(which: &str, g: usize, h: usize) -> Error {
    Error::PhViolation {
        which: which.into(),
        g,
        h,
    }
}

/// Checks PH1–PH3 at class level, unitality and the domain lemmas that
/// follow from them. A representative of the identity that is merely `~` to
/// `id_A` is replaced by `id_A`.
pub fn verify_partial_hom(session: &Session, a: &Clifford, g: &FiniteGroup, reps: Vec<PartialIso>) -> Result<PartialHom> {
    let n = g.order();
    if reps.len() != n {
        return Err(Error::ShapeMismatch(format!("{} representatives for a group of order {n}", reps.len())));
    }
    if reps.iter().any(|r| **r.parent() != **a.semigroup()) {
        return Err(Error::ParentMismatch);
    }
    let eq = |x: &PartialIso, y: &PartialIso| -> Result<bool> { Ok(similar(session, x, y)?.is_some()) };
    for x in 0..n {
        let xi = g.inv(x);
        for y in 0..n {
            let lhs = compose_partial(&compose_partial(&reps[xi], &reps[x])?, &reps[y])?;
            let rhs = compose_partial(&reps[xi], &reps[g.mul(x, y)])?;
            if !eq(&lhs, &rhs)? {
                return Err(ph("PH1", x, y));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let yi = g.inv(y);
            let lhs = compose_partial(&compose_partial(&reps[x], &reps[y])?, &reps[yi])?;
            let rhs = compose_partial(&reps[g.mul(x, y)], &reps[yi])?;
            if !eq(&lhs, &rhs)? {
                return Err(ph("PH2", x, y));
            }
        }
    }
    let e = g.identity();
    for x in 0..n {
        if !eq(&compose_partial(&reps[x], &reps[e])?, &reps[x])? {
            return Err(ph("PH3", x, e));
        }
    }
    let id = PartialIso::identity(&a.whole());
    if !eq(&reps[e], &id)? {
        return Err(Error::NotUnital);
    }
    let mut reps = reps;
    reps[e] = id;
    let dom = |x: usize| reps[x].ran();
    for x in 0..n {
        if reps[x].dom() != dom(g.inv(x)) {
            return Err(ph("domain", x, g.inv(x)));
        }
    }
    for x in 0..n {
        let xi = g.inv(x);
        for y in 0..n {
            let lhs = reps[x].image(&dom(xi).intersection(dom(y))?)?;
            if lhs != dom(x).intersection(dom(g.mul(x, y)))? {
                return Err(ph("image of D_{g^-1}D_h", x, y));
            }
            for z in 0..n {
                let src = dom(xi).intersection(dom(y))?.intersection(dom(g.mul(y, z)))?;
                let xy = g.mul(x, y);
                let tgt = dom(x).intersection(dom(xy))?.intersection(dom(g.mul(xy, z)))?;
                if reps[x].image(&src)? != tgt {
                    return Err(ph(&format!("image of D_{{g^-1}}D_hD_hk with k={z}"), x, y));
                }
            }
        }
    }
    let assignment = reps
        .iter()
        .map(|r| sigma_class(session, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(PartialHom {
        group: g.clone(),
        reps,
        assignment,
    })
}

/// Least ideal containing the given elements; re-exported for callers that
/// assemble domains by hand.
pub fn principal_ideal(s: &Arc<FiniteSemigroup>, xs: &[usize]) -> Result<Ideal> {
    ideal_closure(s, xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn clifford(s: FiniteSemigroup) -> Clifford {
        Clifford::new(Arc::new(s)).unwrap()
    }

    #[test]
    fn composition_with_identity_and_inverse() {
        let a = clifford(catalog::s3_with_zero());
        let s = a.semigroup().clone();
        let sigma = sigma_elements(&s).unwrap();
        let id = PartialIso::identity(&a.whole());
        for phi in &sigma {
            assert_eq!(&compose_partial(phi, &id).unwrap(), phi);
            assert_eq!(&compose_partial(&id, phi).unwrap(), phi);
            let back = compose_partial(phi, &phi.inverse()).unwrap();
            assert!(back.is_identity());
            assert_eq!(back.dom(), phi.ran());
        }
    }

    #[test]
    fn sigma_of_k3_and_s3_zero() {
        let k3 = Arc::new(catalog::k3());
        assert_eq!(sigma_elements(&k3).unwrap().len(), 2);
        let s = Arc::new(catalog::s3_with_zero());
        // {0} → {0} and the six automorphisms of S3 extended by 0 ↦ 0
        assert_eq!(sigma_elements(&s).unwrap().len(), 7);
    }

    #[test]
    fn similar_is_reflexive_with_identity_witness() {
        let session = Session::default();
        let s = Arc::new(catalog::s3_with_zero());
        for phi in sigma_elements(&s).unwrap() {
            assert!(similar(&session, &phi, &phi).unwrap().unwrap().is_identity());
        }
    }

    #[test]
    fn distinct_automorphisms_of_z3_are_not_similar() {
        let session = Session::default();
        let s = Arc::new(catalog::cyclic(3));
        let whole = Ideal::whole(&s);
        let id = PartialIso::identity(&whole);
        let sq = PartialIso::new(whole.clone(), whole, &[0, 2, 1]).unwrap();
        assert_eq!(similar(&session, &id, &sq).unwrap(), None);
        assert_eq!(sigma_class(&session, &sq).unwrap().orbit().unwrap().len(), 1);
    }

    #[test]
    fn inner_automorphisms_of_s3_form_one_class() {
        let session = Session::default();
        let s = Arc::new(catalog::s3());
        let autos = sigma_elements(&s).unwrap();
        assert_eq!(autos.len(), 6);
        let id = PartialIso::identity(&Ideal::whole(&s));
        // Aut(S3) = Inn(S3), so every automorphism is similar to the identity
        for phi in &autos {
            let m = similar(&session, &id, phi).unwrap().expect("inner");
            assert_eq!(&id.conjugate_by(&m).unwrap(), phi);
        }
        // orbit oracle: distinct conjugations by the six elements
        let mut distinct = BTreeSet::new();
        for u in 0..6 {
            let mu = crate::multiplier::inner_multiplier(&Carrier::full(&s), u).unwrap().conjugation().unwrap();
            distinct.insert(mu.map().to_vec());
        }
        let class = sigma_class(&session, &id).unwrap();
        assert_eq!(class.orbit().unwrap().len(), distinct.len());
        assert!(class.representative().is_identity());
    }

    #[test]
    fn quotient_of_s3_zero() {
        let session = Session::default();
        let a = clifford(catalog::s3_with_zero());
        let q = sigma_quotient(&session, &a).unwrap();
        // [id_{0}] and [id_A]: all automorphisms of S3⁰ are inner on the nonzero part
        assert_eq!(q.classes.len(), 2);
        let st = analyze_inverse(&q.table).unwrap();
        assert_eq!(st.idempotents.len(), 2);
    }

    #[test]
    fn idempotent_classes_are_separated() {
        let session = Session::default();
        let a = clifford(catalog::diamond());
        let q = sigma_quotient(&session, &a).unwrap();
        let ideals: Vec<Ideal> = all_ideals(a.semigroup()).into_iter().filter(|i| !i.is_empty()).collect();
        let idx: Vec<usize> = ideals
            .iter()
            .map(|i| q.class_index(&session, &PartialIso::identity(i)).unwrap().unwrap())
            .collect();
        let distinct: BTreeSet<usize> = idx.iter().copied().collect();
        assert_eq!(distinct.len(), ideals.len());
    }

    #[test]
    fn trivial_assignment_is_a_partial_hom() {
        let session = Session::default();
        let a = clifford(catalog::k3());
        let g = catalog::group(catalog::cyclic(2));
        let id = PartialIso::identity(&a.whole());
        let h = verify_partial_hom(&session, &a, &g, vec![id.clone(), id]).unwrap();
        assert_eq!(h.domain(1), &a.whole());
    }

    #[test]
    fn inversion_on_z3_is_a_partial_hom() {
        let session = Session::default();
        let a = clifford(catalog::cyclic(3));
        let g = catalog::group(catalog::cyclic(2));
        let whole = a.whole();
        let inv = PartialIso::new(whole.clone(), whole.clone(), &[0, 2, 1]).unwrap();
        assert!(verify_partial_hom(&session, &a, &g, vec![PartialIso::identity(&whole), inv]).is_ok());
    }

    #[test]
    fn mismatched_domains_violate_ph1() {
        let session = Session::default();
        let a = clifford(catalog::chain(2));
        let s = a.semigroup().clone();
        let g = catalog::group(catalog::cyclic(3));
        let zero = Ideal::new(&s, [0]).unwrap();
        let whole = a.whole();
        // D_1 = {0} but D_2 = A, inconsistent with D_{g^-1}
        let reps = vec![
            PartialIso::identity(&whole),
            PartialIso::identity(&zero),
            PartialIso::identity(&whole),
        ];
        assert!(matches!(
            verify_partial_hom(&session, &a, &g, reps),
            Err(Error::PhViolation { .. })
        ));
    }

    #[test]
    fn non_unital_assignment_is_rejected() {
        let session = Session::default();
        let a = clifford(catalog::chain(2));
        let s = a.semigroup().clone();
        let g = catalog::group(catalog::cyclic(2));
        let zero = PartialIso::identity(&Ideal::new(&s, [0]).unwrap());
        assert_eq!(
            verify_partial_hom(&session, &a, &g, vec![zero.clone(), zero]).unwrap_err(),
            Error::NotUnital
        );
    }
}
